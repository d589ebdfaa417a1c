//! Truncated Fock space: half vertex operators, fermionic operators,
//! constrained transfer matrices, Pfaffians and Wick's formula.
//!
//! States are finitely supported linear combinations of charged partitions.
//! The four vertex operators act by summing over interlacing partitions
//! with weight `x^{size change}`; the fermionic operators flip one marble
//! of the Maya diagram with the sign `(-1)^{#blacks above}`.

mod commutation;

pub use commutation::{commutation_suite, CommutationReport};

use std::collections::BTreeMap;

use num::BigRational;
use thiserror::Error;

use crate::combinatorics::{
    charged_from_maya, enumerate_interlacing, maya_from_charged, ChargedPartition,
    InterlaceDirection, InterlaceKind, Marble, MayaDiagram,
};
use crate::graph::{ColumnType, Edge, EdgeKind, Letter, RygSpec, Sign};
use crate::scalar::Scalar;
use crate::series::{Monomial, TruncatedSeries, Var, CAP_UNSET};

#[derive(Error, Debug)]
pub enum FockError {
    #[error("edge {0} is not an edge of column {1}")]
    EdgeOutsideColumn(String, i32),
    #[error("pfaffian needs an even-sized antisymmetric matrix, got {0}")]
    OddSize(usize),
    #[error("matrix is not antisymmetric at ({0},{1})")]
    NotAntisymmetric(usize, usize),
}

/// Finitely supported vector over charged partitions. `size_cap` bounds the
/// partition sizes kept when operators act; `u32::MAX` disables the bound
/// (graded coefficients then bound growth through their degree cap).
#[derive(Clone, PartialEq, Debug)]
pub struct FockVector<C: Scalar> {
    entries: BTreeMap<ChargedPartition, C>,
    size_cap: u32,
}

impl<C: Scalar> FockVector<C> {
    pub fn zero(size_cap: u32) -> Self {
        FockVector {
            entries: BTreeMap::new(),
            size_cap,
        }
    }

    pub fn unit(cp: ChargedPartition, coeff: C, size_cap: u32) -> Self {
        let mut v = Self::zero(size_cap);
        v.add_entry(cp, coeff);
        v
    }

    pub fn vacuum(coeff: C, size_cap: u32) -> Self {
        Self::unit(ChargedPartition::vacuum(), coeff, size_cap)
    }

    pub fn size_cap(&self) -> u32 {
        self.size_cap
    }

    pub fn entries(&self) -> impl Iterator<Item = (&ChargedPartition, &C)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn coefficient(&self, cp: &ChargedPartition) -> C {
        self.entries.get(cp).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_entry(&mut self, cp: ChargedPartition, coeff: C) {
        if coeff.is_zero() || cp.parts.size() > self.size_cap {
            return;
        }
        match self.entries.entry(cp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (cp, c) in &other.entries {
            out.add_entry(cp.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &C) -> Self {
        let mut out = Self::zero(self.size_cap);
        for (cp, c) in &self.entries {
            out.add_entry(cp.clone(), c.mul(factor));
        }
        out
    }
}

/// Apply the vertex operator of the given column type with the given
/// weight. Charge is preserved; the coefficient picks up
/// `weight^{|size change|}`.
pub fn apply_gamma<C: Scalar>(t: ColumnType, weight: &C, v: &FockVector<C>) -> FockVector<C> {
    let (kind, direction) = gamma_action(t);
    let mut out = FockVector::zero(v.size_cap);
    for (cp, coeff) in &v.entries {
        let size = cp.parts.size();
        let cap_budget = match direction {
            InterlaceDirection::Shrink => size,
            InterlaceDirection::Grow => v.size_cap.saturating_sub(size),
        };
        let budget = match C::degree_budget(coeff, weight) {
            Some(d) => d.min(cap_budget),
            None => cap_budget,
        };
        assert!(
            budget < u32::MAX,
            "unbounded growth: set a size cap or use graded coefficients"
        );
        // Precompute weight powers up to the budget.
        let mut powers = Vec::with_capacity(budget as usize + 1);
        let mut p = C::one();
        for _ in 0..=budget {
            powers.push(p.clone());
            p = p.mul(weight);
        }
        for mu in enumerate_interlacing(&cp.parts, kind, direction, budget) {
            let delta = (mu.size() as i64 - size as i64).unsigned_abs() as u32;
            let c = coeff.mul(&powers[delta as usize]);
            out.add_entry(ChargedPartition::new(mu, cp.charge), c);
        }
    }
    out
}

/// A column's vertex operator sums over interlacings of this kind and
/// direction (direction refers to the partition as the operator maps
/// ket states: `L+` shrinks, `L-` grows, `R` versions act on conjugates).
fn gamma_action(t: ColumnType) -> (InterlaceKind, InterlaceDirection) {
    let kind = match t.letter {
        Letter::L => InterlaceKind::Horizontal,
        Letter::R => InterlaceKind::Vertical,
    };
    let direction = match t.sign {
        Sign::Plus => InterlaceDirection::Shrink,
        Sign::Minus => InterlaceDirection::Grow,
    };
    (kind, direction)
}

/// Fermionic operator `psi_k` (white to black at `k`, charge +1), with the
/// sign `(-1)^{#blacks above k}`. `k2` is the doubled position.
pub fn apply_psi<C: Scalar>(k2: i32, v: &FockVector<C>) -> FockVector<C> {
    apply_fermion(k2, Marble::White, 1, v)
}

/// Adjoint operator `psi*_k` (black to white at `k`, charge -1).
pub fn apply_psi_star<C: Scalar>(k2: i32, v: &FockVector<C>) -> FockVector<C> {
    apply_fermion(k2, Marble::Black, -1, v)
}

fn apply_fermion<C: Scalar>(
    k2: i32,
    expect: Marble,
    charge_shift: i32,
    v: &FockVector<C>,
) -> FockVector<C> {
    let mut out = FockVector::zero(v.size_cap);
    for (cp, coeff) in &v.entries {
        if cp.marble_at(k2) != expect {
            continue;
        }
        let sign_exp = cp.blacks_above(k2);
        let maya = maya_from_charged(cp).flipped_at(k2);
        let flipped = charged_from_maya(&maya);
        debug_assert_eq!(flipped.charge, cp.charge + charge_shift);
        let c = if sign_exp % 2 == 0 {
            coeff.clone()
        } else {
            coeff.neg()
        };
        out.add_entry(flipped, c);
    }
    out
}

/// `<l| Gamma_{a_l b_l}(x_l) ... Gamma_{a_r b_r}(x_r) |r>` as a truncated
/// series in the column variables: the weighted sum of admissible coverings
/// with the given boundary states. Exact in all degrees up to the cap.
pub fn transfer_product(
    spec: &RygSpec,
    boundary_l: &MayaDiagram,
    boundary_r: &MayaDiagram,
    degree_cap: u32,
) -> TruncatedSeries {
    let left = charged_from_maya(boundary_l);
    let right = charged_from_maya(boundary_r);
    if left.charge != right.charge {
        return TruncatedSeries::zero(degree_cap);
    }
    let mut v = FockVector::unit(right, TruncatedSeries::one(degree_cap), CAP_UNSET);
    for i in spec.column_indices().rev() {
        let weight = TruncatedSeries::var(Var::X(i), degree_cap);
        v = apply_gamma(spec.column(i), &weight, &v);
    }
    v.coefficient(&left)
}

/// One multiplicative factor of a constrained transfer matrix, listed in
/// operator order (leftmost factor first).
#[derive(Clone, Debug)]
pub enum PrimOp {
    Psi(i32),
    PsiStar(i32),
    Gamma(ColumnType, i32),
    /// `(-1)^sign_exp * x_column^power`
    Scale { sign_neg: bool, column: i32, power: u32 },
}

/// Build the constrained transfer matrix of column `i` for the edges of a
/// constraint set that live in that column, as a left-to-right operator
/// word. The two fermion groups attached to matched edge lists share one
/// ordering (by ordinate), which fixes the overall sign.
pub fn constrained_column(
    spec: &RygSpec,
    i: i32,
    edges: &[Edge],
) -> Result<Vec<PrimOp>, FockError> {
    let t = spec.column(i);
    let mut left_group: Vec<Edge> = Vec::new(); // between 2i-1 and 2i
    let mut right_group: Vec<Edge> = Vec::new(); // between 2i and 2i+1
    let mut n_diag = 0u32;
    for e in edges {
        if e.column() != i {
            return Err(FockError::EdgeOutsideColumn(e.to_string(), i));
        }
        if e.kind() == EdgeKind::Diagonal {
            n_diag += 1;
        }
        if e.odd.x == 2 * i - 1 {
            left_group.push(*e);
        } else {
            right_group.push(*e);
        }
    }
    left_group.sort_by_key(|e| e.odd.y2);
    right_group.sort_by_key(|e| e.even.y2);
    let m = left_group.len() as u32;
    let mp = right_group.len() as u32;
    let mut k = m * (m.saturating_sub(1)) / 2 + mp * (mp.saturating_sub(1)) / 2;
    if t.letter == Letter::L {
        k += n_diag;
    }
    let mut ops = Vec::new();
    ops.push(PrimOp::Scale {
        sign_neg: k % 2 == 1,
        column: i,
        power: n_diag,
    });
    match t.letter {
        Letter::R => {
            for e in &left_group {
                ops.push(PrimOp::PsiStar(e.odd.y2));
            }
            for e in &left_group {
                ops.push(PrimOp::Psi(e.even.y2));
            }
            for e in &right_group {
                ops.push(PrimOp::Psi(e.even.y2));
            }
            ops.push(PrimOp::Gamma(t, i));
            for e in &right_group {
                ops.push(PrimOp::PsiStar(e.odd.y2));
            }
        }
        Letter::L => {
            for e in &left_group {
                ops.push(PrimOp::PsiStar(e.odd.y2));
            }
            ops.push(PrimOp::Gamma(t, i));
            for e in &left_group {
                ops.push(PrimOp::Psi(e.even.y2));
            }
            for e in &right_group {
                ops.push(PrimOp::Psi(e.even.y2));
            }
            for e in &right_group {
                ops.push(PrimOp::PsiStar(e.odd.y2));
            }
        }
    }
    Ok(ops)
}

/// Apply a word of primitive operators (leftmost first) to a ket.
pub fn apply_word(
    word: &[PrimOp],
    v: &FockVector<TruncatedSeries>,
    degree_cap: u32,
) -> FockVector<TruncatedSeries> {
    let mut v = v.clone();
    for op in word.iter().rev() {
        v = match op {
            PrimOp::Psi(k2) => apply_psi(*k2, &v),
            PrimOp::PsiStar(k2) => apply_psi_star(*k2, &v),
            PrimOp::Gamma(t, i) => {
                let w = TruncatedSeries::var(Var::X(*i), degree_cap);
                apply_gamma(*t, &w, &v)
            }
            PrimOp::Scale {
                sign_neg,
                column,
                power,
            } => {
                let mono = Monomial::var(Var::X(*column), *power);
                let c = if *sign_neg {
                    -BigRational::from_integer(1.into())
                } else {
                    BigRational::from_integer(1.into())
                };
                let factor = TruncatedSeries::monomial(mono, c, degree_cap);
                v.scale(&factor)
            }
        };
    }
    v
}

/// `<l| T_l ... T_r |r>` for the constrained transfer matrices forcing the
/// edge set `E`: the weighted sum of admissible coverings with the given
/// boundary states that contain every edge of `E`.
pub fn constrained_transfer_product(
    spec: &RygSpec,
    edges: &[Edge],
    boundary_l: &MayaDiagram,
    boundary_r: &MayaDiagram,
    degree_cap: u32,
) -> Result<TruncatedSeries, FockError> {
    let left = charged_from_maya(boundary_l);
    let right = charged_from_maya(boundary_r);
    // Fermion insertions can wander far from the axis; allow the partition
    // sizes to grow accordingly before coming back.
    let mut slack: u32 = degree_cap
        + left.parts.size()
        + right.parts.size()
        + 2;
    for e in edges {
        slack += (e.even.y2.unsigned_abs() + e.odd.y2.unsigned_abs()) / 2 + 2;
    }
    let mut v = FockVector::unit(right.clone(), TruncatedSeries::one(degree_cap), slack);
    for i in spec.column_indices().rev() {
        let col_edges: Vec<Edge> = edges.iter().filter(|e| e.column() == i).copied().collect();
        let word = constrained_column(spec, i, &col_edges)?;
        v = apply_word(&word, &v, degree_cap);
    }
    Ok(v.coefficient(&left))
}

/// Pfaffian of an antisymmetric matrix by expansion along the first row.
pub fn pfaffian<C: Scalar>(a: &[Vec<C>]) -> Result<C, FockError> {
    let n = a.len();
    if n % 2 != 0 {
        return Err(FockError::OddSize(n));
    }
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i == j && !v.is_zero() {
                return Err(FockError::NotAntisymmetric(i, j));
            }
            if *v != a[j][i].neg() {
                return Err(FockError::NotAntisymmetric(i, j));
            }
        }
    }
    Ok(pfaffian_rec(a, &(0..n).collect::<Vec<_>>()))
}

fn pfaffian_rec<C: Scalar>(a: &[Vec<C>], rows: &[usize]) -> C {
    if rows.is_empty() {
        return C::one();
    }
    let first = rows[0];
    let mut total = C::zero();
    for (pos, &j) in rows.iter().enumerate().skip(1) {
        let entry = &a[first][j];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = rows
            .iter()
            .copied()
            .filter(|&r| r != first && r != j)
            .collect();
        let sub = pfaffian_rec(a, &rest);
        let term = entry.mul(&sub);
        // sign (-1)^pos for eliminating the pos-th remaining column
        total = if pos % 2 == 1 {
            total.add(&term)
        } else {
            total.sub(&term)
        };
    }
    total
}

/// Determinant by Laplace-free fraction arithmetic (Gaussian elimination
/// happens in the caller's ring via clones; sizes here are tiny).
pub fn determinant<C: Scalar>(a: &[Vec<C>]) -> C {
    let n = a.len();
    if n == 0 {
        return C::one();
    }
    // Expansion along the first row; fine for the sizes used in tests.
    if n == 1 {
        return a[0][0].clone();
    }
    let mut total = C::zero();
    for j in 0..n {
        if a[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<C>> = a[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = a[0][j].mul(&determinant(&minor));
        total = if j % 2 == 0 {
            total.add(&term)
        } else {
            total.sub(&term)
        };
    }
    total
}

/// A finite linear combination of fermionic operators.
#[derive(Clone, Debug, Default)]
pub struct FermionWord {
    /// (doubled position, is_creation `psi` vs annihilation-adjoint
    /// `psi*`, coefficient)
    pub terms: Vec<(i32, bool, BigRational)>,
}

impl FermionWord {
    pub fn psi(k2: i32) -> Self {
        FermionWord {
            terms: vec![(k2, true, num::One::one())],
        }
    }

    pub fn psi_star(k2: i32) -> Self {
        FermionWord {
            terms: vec![(k2, false, num::One::one())],
        }
    }

    pub fn apply(&self, v: &FockVector<BigRational>) -> FockVector<BigRational> {
        let mut out = FockVector::zero(v.size_cap());
        for (k2, is_psi, c) in &self.terms {
            let applied = if *is_psi {
                apply_psi(*k2, v)
            } else {
                apply_psi_star(*k2, v)
            };
            out = out.add(&applied.scale(c));
        }
        out
    }
}

/// `<vac| X_1 ... X_{2s} |vac>` by direct operator application.
pub fn vacuum_expectation(words: &[FermionWord]) -> BigRational {
    let mut v = FockVector::vacuum(num::One::one(), CAP_UNSET);
    for w in words.iter().rev() {
        v = w.apply(&v);
    }
    v.coefficient(&ChargedPartition::vacuum())
}

/// Wick's formula: the direct vacuum expectation of `X_1 .. X_{2s}` equals
/// the Pfaffian of the pairwise expectations. Returns both sides.
pub fn wick_check(words: &[FermionWord]) -> Result<(BigRational, BigRational), FockError> {
    let n = words.len();
    if n % 2 != 0 {
        return Err(FockError::OddSize(n));
    }
    let direct = vacuum_expectation(words);
    let mut a = vec![vec![BigRational::from_integer(0.into()); n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = vacuum_expectation(&[words[i].clone(), words[j].clone()]);
            a[i][j] = v.clone();
            a[j][i] = -v;
        }
    }
    let pf = pfaffian(&a)?;
    Ok((direct, pf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Partition;
    use crate::graph::symbolic_weights;
        use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn rat_one() -> BigRational {
        BigRational::from_integer(1.into())
    }

    fn rat_zero() -> BigRational {
        BigRational::from_integer(0.into())
    }

    fn ts(s: &TruncatedSeries) -> String {
        s.to_string()
    }

    fn vac() -> MayaDiagram {
        MayaDiagram::vacuum()
    }

    fn column(letter: Letter, sign: Sign) -> ColumnType {
        ColumnType { letter, sign }
    }

    #[test]
    fn gamma_plus_fixes_vacuum() {
        let d = 6;
        let x = TruncatedSeries::var(Var::X(1), d);
        let v = FockVector::vacuum(TruncatedSeries::one(d), CAP_UNSET);
        for letter in [Letter::L, Letter::R] {
            let out = apply_gamma(column(letter, Sign::Plus), &x, &v);
            assert_eq!(out.len(), 1);
            assert_eq!(ts(&out.coefficient(&ChargedPartition::vacuum())), "1");
        }
    }

    #[test]
    fn gamma_minus_generates_rows_or_columns() {
        let d = 3;
        let x = TruncatedSeries::var(Var::X(1), d);
        let v = FockVector::vacuum(TruncatedSeries::one(d), CAP_UNSET);
        let out = apply_gamma(column(Letter::L, Sign::Minus), &x, &v);
        // vacuum, (1), (2), (3) with weights x^k
        assert_eq!(out.len(), 4);
        for k in 0..=3u32 {
            let cp = ChargedPartition::new(Partition::new(vec![k]), 0);
            let expect = TruncatedSeries::monomial(
                Monomial::var(Var::X(1), k),
                rat_one(),
                d,
            );
            assert_eq!(out.coefficient(&cp), expect);
        }
        let out = apply_gamma(column(Letter::R, Sign::Minus), &x, &v);
        for k in 1..=3u32 {
            let cp = ChargedPartition::new(Partition::new(vec![1; k as usize]), 0);
            assert!(!out.coefficient(&cp).is_zero());
        }
    }

    #[test]
    fn vacuum_to_vacuum_geometric() {
        // <vac| G_{L+}(x1) G_{L-}(x2) |vac> = 1/(1 - x1 x2)
        let d = 8;
        let spec = RygSpec::build_from_strings(1, 2, "LL", "+-", symbolic_weights(2)).unwrap();
        let z = transfer_product(&spec, &vac(), &vac(), d);
        let geom = TruncatedSeries::expand_factor(-1, 1, 2, true, d);
        assert_eq!(z, geom);
    }

    #[test]
    fn aztec_one_transfer() {
        let spec = RygSpec::build_from_strings(0, 1, "LR", "+-", symbolic_weights(2)).unwrap();
        let z = transfer_product(&spec, &vac(), &vac(), 6);
        assert_eq!(ts(&z), "1 + x0*x1");
    }

    #[test]
    fn mismatched_charges_vanish() {
        let spec = RygSpec::build_from_strings(0, 1, "LR", "+-", symbolic_weights(2)).unwrap();
        let charged = maya_from_charged(&ChargedPartition::new(Partition::empty(), 1));
        let z = transfer_product(&spec, &charged, &vac(), 6);
        assert!(z.is_zero());
    }

    #[test]
    fn psi_on_vacuum() {
        let v: FockVector<BigRational> = FockVector::vacuum(rat_one(), CAP_UNSET);
        // psi_{1/2} |vac> = |vacuum of charge 1>
        let out = apply_psi(1, &v);
        assert_eq!(out.len(), 1);
        assert_eq!(
            out.coefficient(&ChargedPartition::new(Partition::empty(), 1)),
            rat_one()
        );
        // psi*_{1/2} |vac> = 0 (site already white)
        let out = apply_psi_star(1, &v);
        assert!(out.is_empty());
    }

    #[test]
    fn anticommutators_on_basis() {
        let window: Vec<i32> = (-7..=7).step_by(2).collect();
        let mut states = Vec::new();
        for c in -2..=2 {
            for lam in [vec![], vec![1], vec![2, 1], vec![3, 1, 1]] {
                states.push(ChargedPartition::new(Partition::new(lam), c));
            }
        }
        for cp in &states {
            let v = FockVector::unit(cp.clone(), rat_one(), CAP_UNSET);
            for &k2 in &window {
                for &l2 in &window {
                    // {psi_k, psi_l} = 0
                    let a = apply_psi(k2, &apply_psi(l2, &v));
                    let b = apply_psi(l2, &apply_psi(k2, &v));
                    assert!(a.add(&b).is_empty());
                    // {psi*_k, psi*_l} = 0
                    let a = apply_psi_star(k2, &apply_psi_star(l2, &v));
                    let b = apply_psi_star(l2, &apply_psi_star(k2, &v));
                    assert!(a.add(&b).is_empty());
                    // {psi_k, psi*_l} = delta
                    let a = apply_psi(k2, &apply_psi_star(l2, &v));
                    let b = apply_psi_star(l2, &apply_psi(k2, &v));
                    let sum = a.add(&b);
                    if k2 == l2 {
                        assert_eq!(sum, v);
                    } else {
                        assert!(sum.is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn duality_of_gamma_plus_minus() {
        // <mu| G_{L+}(x) |lam> = <lam| G_{L-}(x) |mu>
        let d = 6;
        let x = TruncatedSeries::var(Var::X(1), d);
        let parts: Vec<Partition> = vec![
            Partition::empty(),
            Partition::new(vec![1]),
            Partition::new(vec![2, 1]),
            Partition::new(vec![3, 2]),
            Partition::new(vec![2, 2, 1]),
        ];
        for lam in &parts {
            for mu in &parts {
                let vl = FockVector::unit(
                    ChargedPartition::new(lam.clone(), 0),
                    TruncatedSeries::one(d),
                    CAP_UNSET,
                );
                let vm = FockVector::unit(
                    ChargedPartition::new(mu.clone(), 0),
                    TruncatedSeries::one(d),
                    CAP_UNSET,
                );
                let lhs = apply_gamma(column(Letter::L, Sign::Plus), &x, &vl)
                    .coefficient(&ChargedPartition::new(mu.clone(), 0));
                let rhs = apply_gamma(column(Letter::L, Sign::Minus), &x, &vm)
                    .coefficient(&ChargedPartition::new(lam.clone(), 0));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn pfaffian_basics() {
        let a = vec![
            vec![rat_zero(), BigRational::from_integer(5.into())],
            vec![BigRational::from_integer((-5).into()), rat_zero()],
        ];
        assert_eq!(pfaffian(&a).unwrap(), BigRational::from_integer(5.into()));
        // Block diagonal of 2x2 blocks multiplies the entries.
        let z = rat_zero;
        let b = |n: i64| BigRational::from_integer(n.into());
        let m = vec![
            vec![z(), b(2), z(), z()],
            vec![b(-2), z(), z(), z()],
            vec![z(), z(), z(), b(3)],
            vec![z(), z(), b(-3), z()],
        ];
        assert_eq!(pfaffian(&m).unwrap(), b(6));
    }

    #[test]
    fn pfaffian_squared_is_determinant() {
        let mut rng = StdRng::seed_from_u64(42);
        for n in [2usize, 4, 6, 8] {
            for _ in 0..4 {
                let mut a = vec![vec![rat_zero(); n]; n];
                for i in 0..n {
                    for j in (i + 1)..n {
                        let v = BigRational::from_integer(rng.gen_range(-4..5).into());
                        a[i][j] = v.clone();
                        a[j][i] = -v;
                    }
                }
                let pf = pfaffian(&a).unwrap();
                let det = determinant(&a);
                assert_eq!(pf.clone() * pf, det);
            }
        }
    }

    #[test]
    fn wick_small_cases() {
        // s=1 pairs: <psi_k psi*_k'> = delta over negative positions
        for k2 in (-5..=5).step_by(2) {
            for l2 in (-5..=5).step_by(2) {
                let v = vacuum_expectation(&[FermionWord::psi(k2), FermionWord::psi_star(l2)]);
                let expect = if k2 == l2 && k2 < 0 {
                    rat_one()
                } else {
                    rat_zero()
                };
                assert_eq!(v, expect, "k2={} l2={}", k2, l2);
            }
        }
        // creation-only span kills the left vacuum
        let w = FermionWord {
            terms: vec![(1, true, rat_one()), (3, true, rat_one())],
        };
        let (direct, pf) = wick_check(&[w.clone(), w]).unwrap();
        assert!(direct.is_zero() && pf.is_zero());
    }

    #[test]
    fn wick_randomized() {
        let mut rng = StdRng::seed_from_u64(7);
        let window: Vec<i32> = (-7..=7).step_by(2).collect();
        for s in [2usize, 3] {
            for _ in 0..8 {
                let words: Vec<FermionWord> = (0..2 * s)
                    .map(|_| {
                        let terms = (0..rng.gen_range(1..4))
                            .map(|_| {
                                (
                                    window[rng.gen_range(0..window.len())],
                                    rng.gen_bool(0.5),
                                    BigRational::from_integer(rng.gen_range(-3..4).into()),
                                )
                            })
                            .collect();
                        FermionWord { terms }
                    })
                    .collect();
                let (direct, pf) = wick_check(&words).unwrap();
                assert_eq!(direct, pf);
            }
        }
    }

    #[test]
    fn constrained_empty_reduces_to_transfer() {
        let spec =
            RygSpec::build_from_strings(0, 2, "LRL", "+-+", symbolic_weights(3)).unwrap();
        let d = 5;
        let w = constrained_transfer_product(&spec, &[], &vac(), &vac(), d).unwrap();
        let z = transfer_product(&spec, &vac(), &vac(), d);
        assert_eq!(w, z);
    }

    #[test]
    fn constrained_single_diagonal_aztec_one() {
        let spec = RygSpec::build_from_strings(0, 1, "LR", "+-", symbolic_weights(2)).unwrap();
        let e = spec.diagonal_edge(0, -1);
        let w = constrained_transfer_product(&spec, &[e], &vac(), &vac(), 6).unwrap();
        assert_eq!(ts(&w), "x0*x1");
    }
}
