//! Exact truncated multivariate series and windowed Laurent series.
//!
//! [`TruncatedSeries`] is a sparse polynomial in the column variables
//! `x_l..x_r` (plus the auxiliary symbol `q`) with `BigRational`
//! coefficients, truncated at a total degree cap. All enumerative
//! identities in this crate are compared coefficient-for-coefficient in
//! this ring; no floating point enters here.
//!
//! [`LaurentSeries`] is a single-variable numeric Laurent expansion on a
//! bounded exponent window, used by the coefficient-extraction form of the
//! correlation kernel.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

/// Sentinel degree cap meaning "no truncation requested yet"; constants
/// produced by generic code carry it and adopt the partner's cap on the
/// first binary operation.
pub const CAP_UNSET: u32 = u32::MAX;

/// A formal variable: a column weight `x_i` or the flip parameter `q`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    X(i32),
    Q,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "x{}", i),
            Var::Q => write!(f, "q"),
        }
    }
}

/// A monomial: sorted sparse exponent vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, exp: u32) -> Self {
        if exp == 0 {
            Monomial::unit()
        } else {
            Monomial(vec![(v, exp)])
        }
    }

    /// Build from unsorted (variable, exponent) pairs.
    pub fn from_pairs(pairs: &[(Var, u32)]) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for &(v, e) in pairs {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponents(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(v, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}

/// Multivariate polynomial truncated at a total-degree cap, with exact
/// rational coefficients. Zero coefficients are never stored.
///
/// Equality compares the stored terms; the cap is an operational attribute
/// and does not distinguish values.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    terms: BTreeMap<Monomial, BigRational>,
    cap: u32,
}

impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for TruncatedSeries {}

impl TruncatedSeries {
    pub fn zero(cap: u32) -> Self {
        TruncatedSeries {
            terms: BTreeMap::new(),
            cap,
        }
    }

    pub fn zero_unbounded() -> Self {
        Self::zero(CAP_UNSET)
    }

    pub fn one(cap: u32) -> Self {
        Self::constant(BigRational::one(), cap)
    }

    pub fn one_unbounded() -> Self {
        Self::one(CAP_UNSET)
    }

    pub fn constant(c: BigRational, cap: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(), c);
        }
        TruncatedSeries { terms, cap }
    }

    pub fn from_int(n: i64, cap: u32) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)), cap)
    }

    pub fn var(v: Var, cap: u32) -> Self {
        Self::monomial(Monomial::var(v, 1), BigRational::one(), cap)
    }

    pub fn monomial(m: Monomial, c: BigRational, cap: u32) -> Self {
        let mut s = Self::zero(cap);
        if !c.is_zero() && m.total_degree() <= cap {
            s.terms.insert(m, c);
        }
        s
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() == 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&Monomial::unit())
    }

    pub fn min_total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .min()
            .unwrap_or(0)
    }

    pub fn join_cap_public(a: u32, b: u32) -> u32 {
        Self::join_cap(a, b)
    }

    /// Caps must agree unless one side is still the sentinel.
    fn join_cap(a: u32, b: u32) -> u32 {
        match (a == CAP_UNSET, b == CAP_UNSET) {
            (true, _) => b,
            (_, true) => a,
            _ => {
                assert_eq!(a, b, "degree cap mismatch: {} vs {}", a, b);
                a
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let cap = Self::join_cap(self.cap, other.cap);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            if m.total_degree() > cap {
                continue;
            }
            let entry = terms.entry(m.clone()).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(m);
            }
        }
        terms.retain(|m, _| m.total_degree() <= cap);
        TruncatedSeries { terms, cap }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            cap: self.cap,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.cap);
        }
        TruncatedSeries {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
            cap: self.cap,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cap = Self::join_cap(self.cap, other.cap);
        let mut terms: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            let da = ma.total_degree();
            if da > cap {
                continue;
            }
            for (mb, cb) in &other.terms {
                if da + mb.total_degree() > cap {
                    continue;
                }
                let m = ma.mul(mb);
                let entry = terms.entry(m).or_insert_with(BigRational::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        TruncatedSeries { terms, cap }
    }

    /// Multiply by a single monomial times a rational, dropping overflow.
    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if c.is_zero() {
            return Self::zero(self.cap);
        }
        for (ma, ca) in &self.terms {
            let prod = ma.mul(m);
            if self.cap != CAP_UNSET && prod.total_degree() > self.cap {
                continue;
            }
            terms.insert(prod, ca * c);
        }
        TruncatedSeries { terms, cap: self.cap }
    }

    /// `(1 + sign * x_i * x_j)^(+1 or -1)` expanded up to the cap.
    ///
    /// The inverse branch is the geometric series in `sign * x_i * x_j`.
    pub fn expand_factor(sign: i8, i: i32, j: i32, invert: bool, cap: u32) -> Self {
        assert!(sign == 1 || sign == -1);
        let step = Monomial::from_pairs(&[(Var::X(i), 1), (Var::X(j), 1)]);
        let step_deg = step.total_degree();
        let mut s = Self::zero(cap);
        if !invert {
            s.terms.insert(Monomial::unit(), BigRational::one());
            if step_deg <= cap {
                s.terms.insert(step, BigRational::from_integer(sign.into()));
            }
            return s;
        }
        // (1 + s*m)^{-1} = sum_k (-s)^k m^k
        let mut m = Monomial::unit();
        let mut coeff = BigRational::one();
        let ratio = BigRational::from_integer((-sign).into());
        loop {
            if m.total_degree() > cap {
                break;
            }
            s.terms.insert(m.clone(), coeff.clone());
            m = m.mul(&step);
            coeff *= &ratio;
            if step_deg == 0 {
                break;
            }
        }
        s
    }

    /// Geometric expansion of `(1 + sign * q^h)^(+/-1)` in the variable `q`.
    pub fn expand_factor_q(sign: i8, h: u32, invert: bool, cap: u32) -> Self {
        assert!(sign == 1 || sign == -1);
        assert!(h > 0, "hook length must be positive");
        let step = Monomial::var(Var::Q, h);
        let mut s = Self::zero(cap);
        if !invert {
            s.terms.insert(Monomial::unit(), BigRational::one());
            if h <= cap {
                s.terms.insert(step, BigRational::from_integer(sign.into()));
            }
            return s;
        }
        let mut m = Monomial::unit();
        let mut coeff = BigRational::one();
        let ratio = BigRational::from_integer((-sign).into());
        while m.total_degree() <= cap {
            s.terms.insert(m.clone(), coeff.clone());
            m = m.mul(&step);
            coeff *= &ratio;
        }
        s
    }

    /// Substitute rational values for every variable, yielding a number.
    pub fn specialize_full(&self, assign: &dyn Fn(Var) -> BigRational) -> BigRational {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for &(var, e) in m.exponents() {
                let base = assign(var);
                for _ in 0..e {
                    v *= &base;
                }
            }
            total += v;
        }
        total
    }

    /// Substitute `x_i -> q^(e_i)` for the given exponent map, collecting a
    /// univariate series in `q` under the same cap semantics. Exponents may
    /// be negative as long as every monomial lands on a nonnegative power.
    pub fn specialize_q(&self, exponent: &dyn Fn(i32) -> i64, cap: u32) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(cap);
        for (m, c) in &self.terms {
            let mut qe: i64 = 0;
            for &(var, e) in m.exponents() {
                match var {
                    Var::X(i) => qe += exponent(i) * e as i64,
                    Var::Q => qe += e as i64,
                }
            }
            assert!(qe >= 0, "q-specialization produced negative exponent {}", qe);
            if qe as u32 > cap {
                continue;
            }
            let mono = Monomial::var(Var::Q, qe as u32);
            let entry = out.terms.entry(mono).or_insert_with(BigRational::zero);
            *entry += c;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    /// Evaluate in `f64` at the given assignment.
    pub fn eval_f64(&self, assign: &dyn Fn(Var) -> f64) -> f64 {
        let mut total = 0.0;
        for (m, c) in &self.terms {
            let mut v = rat_to_f64(c);
            for &(var, e) in m.exponents() {
                v *= assign(var).powi(e as i32);
            }
            total += v;
        }
        total
    }

    /// Drop every monomial of total degree above `d`.
    pub fn truncate(&self, d: u32) -> Self {
        TruncatedSeries {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() <= d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            cap: d,
        }
    }

    /// Sum of coefficients of each total degree, useful for tail bounds.
    pub fn mass_by_degree(&self) -> BTreeMap<u32, BigRational> {
        let mut out: BTreeMap<u32, BigRational> = BTreeMap::new();
        for (m, c) in &self.terms {
            *out.entry(m.total_degree()).or_insert_with(BigRational::zero) += c;
        }
        out
    }
}

impl fmt::Display for TruncatedSeries {
    /// Canonical sorted-monomial text form, e.g. `1 + x0*x1 + 2*q^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut sorted: Vec<(&Monomial, &BigRational)> = self.terms.iter().collect();
        sorted.sort_by_key(|(m, _)| (m.total_degree(), (*m).clone()));
        let mut first = true;
        for (m, c) in sorted {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_unit_mono = m.total_degree() == 0;
            if abs.is_one() && !is_unit_mono {
                write!(f, "{}", m)?;
            } else if is_unit_mono {
                write!(f, "{}", abs)?;
            } else {
                write!(f, "{}*{}", abs, m)?;
            }
        }
        Ok(())
    }
}

pub fn rat_to_f64(r: &BigRational) -> f64 {
    let numer = bigint_to_f64(r.numer());
    let denom = bigint_to_f64(r.denom());
    numer / denom
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    // Good to f64 precision for the magnitudes arising here.
    let s = n.to_string();
    s.parse::<f64>().unwrap_or(f64::NAN)
}

/// Numeric Laurent series in one variable on a fixed exponent window
/// `[lo, hi]`; products silently drop exponents falling outside.
#[derive(Clone, Debug)]
pub struct LaurentSeries {
    lo: i64,
    coeffs: Vec<f64>,
}

impl LaurentSeries {
    pub fn zero(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi);
        LaurentSeries {
            lo,
            coeffs: vec![0.0; (hi - lo + 1) as usize],
        }
    }

    pub fn one(lo: i64, hi: i64) -> Self {
        let mut s = Self::zero(lo, hi);
        s.set(0, 1.0);
        s
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn coefficient(&self, e: i64) -> f64 {
        if e < self.lo || e > self.hi() {
            0.0
        } else {
            self.coeffs[(e - self.lo) as usize]
        }
    }

    pub fn set(&mut self, e: i64, v: f64) {
        if e >= self.lo && e <= self.hi() {
            self.coeffs[(e - self.lo) as usize] = v;
        }
    }

    /// Multiply by a two-term factor `1 + c*t^e` in place of allocation.
    pub fn mul_binomial(&self, c: f64, e: i64) -> Self {
        let mut out = self.clone();
        for idx in 0..self.coeffs.len() {
            let src = self.coeffs[idx];
            if src == 0.0 {
                continue;
            }
            let target = self.lo + idx as i64 + e;
            if target >= out.lo && target <= out.hi() {
                out.coeffs[(target - out.lo) as usize] += c * src;
            }
        }
        out
    }

    /// Multiply by the geometric series `sum_{n>=0} c^n t^(e*n)`,
    /// i.e. by `(1 - c*t^e)^{-1}`, truncated to the window.
    pub fn mul_geometric(&self, c: f64, e: i64) -> Self {
        assert!(e != 0);
        let mut out = self.clone();
        // Propagate in the direction of increasing |exponent| so each source
        // coefficient is fully accumulated before it feeds forward.
        if e > 0 {
            for idx in 0..out.coeffs.len() {
                let src = out.coeffs[idx];
                if src == 0.0 {
                    continue;
                }
                let target = idx as i64 + e;
                if target < out.coeffs.len() as i64 {
                    out.coeffs[target as usize] += c * src;
                }
            }
        } else {
            for idx in (0..out.coeffs.len()).rev() {
                let src = out.coeffs[idx];
                if src == 0.0 {
                    continue;
                }
                let target = idx as i64 + e;
                if target >= 0 {
                    out.coeffs[target as usize] += c * src;
                }
            }
        }
        out
    }
}
