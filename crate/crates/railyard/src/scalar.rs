//! Coefficient rings shared by the Fock-space and linear-algebra code.
//!
//! Everything downstream is generic over [`Scalar`]: exact rationals for
//! enumerative identities, truncated series for formal computations, `f64`
//! for quadrature and sampling.

use num::{BigRational, Zero};

use crate::series::TruncatedSeries;

/// A commutative ring with equality, enough for transfer-matrix vectors,
/// Pfaffians and small determinants.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Largest `d` such that `coeff * weight^d` can still be nonzero, when
    /// the ring is graded and truncated (`None` = unbounded). Lets vertex
    /// operators stop enumerating growth that truncation would erase.
    fn degree_budget(coeff: &Self, weight: &Self) -> Option<u32> {
        let _ = (coeff, weight);
        None
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num::One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Scalar for TruncatedSeries {
    fn degree_budget(coeff: &Self, weight: &Self) -> Option<u32> {
        if coeff.is_zero() || weight.is_zero() {
            return Some(0);
        }
        let cap = crate::series::TruncatedSeries::join_cap_public(coeff.cap(), weight.cap());
        if cap == crate::series::CAP_UNSET {
            return None;
        }
        let wdeg = weight.min_total_degree();
        if wdeg == 0 {
            return None;
        }
        let head = cap.saturating_sub(coeff.min_total_degree());
        Some(head / wdeg)
    }

    fn zero() -> Self {
        TruncatedSeries::zero_unbounded()
    }
    fn one() -> Self {
        TruncatedSeries::one_unbounded()
    }
    fn is_zero(&self) -> bool {
        TruncatedSeries::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        TruncatedSeries::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        TruncatedSeries::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        TruncatedSeries::mul(self, other)
    }
    fn neg(&self) -> Self {
        TruncatedSeries::neg(self)
    }
}
