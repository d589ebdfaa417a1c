//! Partition functions by three independent routes, and constrained sums.
//!
//! * [`z_product`]: the closed hook-type product over sign pairs.
//! * [`z_transfer`]: vacuum-to-vacuum product of vertex operators.
//! * [`z_brute`]: direct enumeration of pure coverings on a window.
//!
//! All three agree coefficient-for-coefficient up to the degree cap; the
//! first two are exact in all retained degrees, the third is exact because
//! a covering of degree `<= D` deviates from the fundamental one only
//! within `|y| <= D + 1/2`, so the window `H = D + 1` captures it.

use num::BigRational;

use crate::fock;
use crate::graph::{enumerate_coverings, Edge, EnumerationQuery, GraphError, RygSpec, Sign};
use crate::combinatorics::MayaDiagram;
use crate::series::TruncatedSeries;
use std::sync::Arc;

/// A sign pair `i < j`, `b_i = +`, `b_j = -`; its factor is geometric when
/// the letters agree and binomial when they differ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HookBox {
    pub i: i32,
    pub j: i32,
    pub same_letter: bool,
}

impl HookBox {
    pub fn hook_length(&self) -> u32 {
        (self.j - self.i) as u32
    }
}

/// Every box of the spec: pairs `i < j` with `b_i = +`, `b_j = -`.
pub fn hook_boxes(spec: &RygSpec) -> Vec<HookBox> {
    let mut out = Vec::new();
    for i in spec.column_indices() {
        if spec.column(i).sign != Sign::Plus {
            continue;
        }
        for j in (i + 1)..=spec.r() {
            if spec.column(j).sign != Sign::Minus {
                continue;
            }
            out.push(HookBox {
                i,
                j,
                same_letter: spec.column(i).letter == spec.column(j).letter,
            });
        }
    }
    out
}

/// Closed-form partition function `prod z_ij` truncated at `degree_cap`.
pub fn z_product(spec: &RygSpec, degree_cap: u32) -> TruncatedSeries {
    let mut z = TruncatedSeries::one(degree_cap);
    for b in hook_boxes(spec) {
        let factor = if b.same_letter {
            TruncatedSeries::expand_factor(-1, b.i, b.j, true, degree_cap)
        } else {
            TruncatedSeries::expand_factor(1, b.i, b.j, false, degree_cap)
        };
        z = z.mul(&factor);
    }
    z
}

/// The flip-parameter specialization: `z_ij` becomes `1 + q^{j-i}` or
/// `(1 - q^{j-i})^{-1}`; equals `z_product` specialized to
/// `x_i = q^i` (minus columns) and `x_i = q^{-i}` (plus columns).
pub fn z_hook_q(spec: &RygSpec, degree_cap: u32) -> TruncatedSeries {
    let mut z = TruncatedSeries::one(degree_cap);
    for b in hook_boxes(spec) {
        let factor = if b.same_letter {
            TruncatedSeries::expand_factor_q(-1, b.hook_length(), true, degree_cap)
        } else {
            TruncatedSeries::expand_factor_q(1, b.hook_length(), false, degree_cap)
        };
        z = z.mul(&factor);
    }
    z
}

/// The exponent map of the flip specialization.
pub fn flip_exponent(spec: &RygSpec) -> impl Fn(i32) -> i64 + '_ {
    move |i: i32| match spec.column(i).sign {
        Sign::Minus => i as i64,
        Sign::Plus => -(i as i64),
    }
}

/// Vacuum-to-vacuum transfer-matrix evaluation of the partition function.
pub fn z_transfer(spec: &RygSpec, degree_cap: u32) -> TruncatedSeries {
    fock::transfer_product(
        spec,
        &MayaDiagram::vacuum(),
        &MayaDiagram::vacuum(),
        degree_cap,
    )
}

/// Direct enumeration of pure coverings with at most `degree_cap` diagonal
/// dimers, on the window `H = degree_cap + 1`.
pub fn z_brute(spec: &Arc<RygSpec>, degree_cap: u32) -> Result<TruncatedSeries, GraphError> {
    let h = degree_cap as i32 + 1;
    let coverings = enumerate_coverings(&EnumerationQuery::pure(spec, h, degree_cap))?;
    let mut z = TruncatedSeries::zero(degree_cap);
    for c in coverings {
        z = z.add(&c.weight_series(degree_cap));
    }
    Ok(z)
}

/// Brute-force restricted sum: pure coverings containing every edge of `E`.
pub fn w_brute(
    spec: &Arc<RygSpec>,
    edges: &[Edge],
    degree_cap: u32,
) -> Result<TruncatedSeries, GraphError> {
    let h = degree_cap as i32 + 1;
    let q = EnumerationQuery {
        required: edges.to_vec(),
        ..EnumerationQuery::pure(spec, h, degree_cap)
    };
    let coverings = enumerate_coverings(&q)?;
    let mut w = TruncatedSeries::zero(degree_cap);
    for c in coverings {
        w = w.add(&c.weight_series(degree_cap));
    }
    Ok(w)
}

/// Constrained-transfer-matrix evaluation of the same restricted sum.
pub fn w_constrained(
    spec: &RygSpec,
    edges: &[Edge],
    degree_cap: u32,
) -> Result<TruncatedSeries, fock::FockError> {
    fock::constrained_transfer_product(
        spec,
        edges,
        &MayaDiagram::vacuum(),
        &MayaDiagram::vacuum(),
        degree_cap,
    )
}

/// Exact numeric value of the full partition function for a convergent
/// numeric spec (the closed product evaluated as a rational).
pub fn z_exact_rational(spec: &RygSpec) -> Result<BigRational, GraphError> {
    let one = BigRational::from_integer(1.into());
    let mut z = one.clone();
    for b in hook_boxes(spec) {
        let (xi, xj) = (spec.weight(b.i), spec.weight(b.j));
        let (xi, xj) = match (xi, xj) {
            (crate::graph::Weight::Rational(a), crate::graph::Weight::Rational(b)) => (a, b),
            _ => return Err(GraphError::SymbolicWeight),
        };
        let prod = xi * xj;
        if b.same_letter {
            if prod >= one {
                return Err(GraphError::NonPositiveWeight(b.i));
            }
            z *= (&one - &prod).recip();
        } else {
            z *= &one + &prod;
        }
    }
    Ok(z)
}
