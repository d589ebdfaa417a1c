//! Rail yard graphs and their dimer coverings.
//!
//! A rail yard graph is determined by a column range `l..=r`, an LR
//! sequence, a sign sequence and per-column weights. Columns sit at even
//! abscissas `2i`; odd abscissas `2i-1`, `2i+1` carry the shared boundary
//! vertices. Each even vertex has two horizontal neighbors and one diagonal
//! neighbor whose direction is fixed by the column type.
//!
//! Coverings are stored on a finite window `|y| < H` and implicitly
//! continue by the fundamental covering outside.

mod covering;
mod enumerate;
mod flips;

pub use covering::{covering_to_sequence, sequence_to_covering, Covering};
pub use enumerate::{enumerate_coverings, EnumerationQuery};
pub use flips::{faces_in_window, flippable_faces, apply_flip, positive_flip_distances, reachable_coverings, Face, FlipSign};

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num::{BigInt, BigRational, One};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::rat_to_f64;

#[derive(Error, Debug)]
pub enum GraphError {
    #[error("column range is empty: l={0} > r={1}")]
    EmptyRange(i32, i32),
    #[error("sequence length {found} does not match column count {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("weights must be positive, column {0}")]
    NonPositiveWeight(i32),
    #[error("vertex {0} is not an even inner vertex of the graph")]
    NotEvenInner(Vertex),
    #[error("column index {0} outside [{1}..{2}]")]
    ColumnOutOfRange(i32, i32, i32),
    #[error("spec has symbolic weights where numeric values are required")]
    SymbolicWeight,
    #[error("malformed covering: {0}")]
    MalformedCovering(String),
    #[error("window half-height {0} too small: {1}")]
    WindowTooSmall(i32, String),
    #[error("cannot parse '{0}' as a rational weight")]
    BadWeight(String),
    #[error("cannot parse '{0}' as an LR or sign sequence")]
    BadSequence(String),
}

/// `L` columns carry their diagonal edge to the left of the even column,
/// `R` columns to the right.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Letter {
    L,
    R,
}

/// `+` columns point their diagonal edge upward, `-` columns downward.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ColumnType {
    pub letter: Letter,
    pub sign: Sign,
}

impl fmt::Display for ColumnType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = match self.letter {
            Letter::L => 'L',
            Letter::R => 'R',
        };
        let s = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        write!(f, "{}{}", l, s)
    }
}

/// A column weight: the formal variable `x_i` or an exact positive
/// rational.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Weight {
    Symbolic,
    Rational(BigRational),
}

impl Weight {
    pub fn parse(s: &str) -> Result<Weight, GraphError> {
        let t = s.trim();
        if t == "x" || t.starts_with("x_") || t.starts_with('x') && t[1..].parse::<i64>().is_ok() {
            return Ok(Weight::Symbolic);
        }
        let parse_int = |u: &str| BigInt::from_str(u).map_err(|_| GraphError::BadWeight(s.into()));
        if let Some((n, d)) = t.split_once('/') {
            Ok(Weight::Rational(BigRational::new(
                parse_int(n)?,
                parse_int(d)?,
            )))
        } else {
            Ok(Weight::Rational(BigRational::from_integer(parse_int(t)?)))
        }
    }

    pub fn as_string(&self) -> String {
        match self {
            Weight::Symbolic => "x".into(),
            Weight::Rational(r) => r.to_string(),
        }
    }
}

/// A vertex of the graph. `y2` stores the doubled half-integer ordinate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Vertex {
    pub x: i32,
    pub y2: i32,
}

impl Vertex {
    pub fn new(x: i32, y2: i32) -> Self {
        debug_assert!(y2 % 2 != 0, "ordinates are half-integers (doubled odd)");
        Vertex { x, y2 }
    }

    pub fn is_even(&self) -> bool {
        self.x.rem_euclid(2) == 0
    }

    pub fn y(&self) -> f64 {
        self.y2 as f64 / 2.0
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}/2)", self.x, self.y2)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EdgeKind {
    Horizontal,
    Diagonal,
}

/// An edge, stored as its even and odd endpoints.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    pub even: Vertex,
    pub odd: Vertex,
}

impl Edge {
    pub fn new(even: Vertex, odd: Vertex) -> Self {
        debug_assert!(even.is_even() && !odd.is_even());
        debug_assert!((even.x - odd.x).abs() == 1);
        debug_assert!(even.y2 == odd.y2 || (even.y2 - odd.y2).abs() == 2);
        Edge { even, odd }
    }

    pub fn kind(&self) -> EdgeKind {
        if self.even.y2 == self.odd.y2 {
            EdgeKind::Horizontal
        } else {
            EdgeKind::Diagonal
        }
    }

    /// Index of the column owning this edge (the even endpoint's column).
    pub fn column(&self) -> i32 {
        self.even.x.div_euclid(2)
    }

    /// Is the right endpoint the even one? Such horizontal edges carry the
    /// negative Kasteleyn sign.
    pub fn right_end_even(&self) -> bool {
        self.even.x > self.odd.x
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} - {}]", self.even, self.odd)
    }
}

/// The rail yard graph data: column range, LR and sign sequences, weights.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RygSpec {
    l: i32,
    r: i32,
    columns: Vec<ColumnType>,
    weights: Vec<Weight>,
}

impl RygSpec {
    pub fn build(
        l: i32,
        r: i32,
        letters: Vec<Letter>,
        signs: Vec<Sign>,
        weights: Vec<Weight>,
    ) -> Result<Arc<RygSpec>, GraphError> {
        if l > r {
            return Err(GraphError::EmptyRange(l, r));
        }
        let n = (r - l + 1) as usize;
        for (name, len) in [("lr", letters.len()), ("signs", signs.len()), ("weights", weights.len())]
        {
            let _ = name;
            if len != n {
                return Err(GraphError::LengthMismatch {
                    expected: n,
                    found: len,
                });
            }
        }
        for (k, w) in weights.iter().enumerate() {
            if let Weight::Rational(v) = w {
                if *v <= BigRational::from_integer(0.into()) {
                    return Err(GraphError::NonPositiveWeight(l + k as i32));
                }
            }
        }
        let columns = letters
            .into_iter()
            .zip(signs)
            .map(|(letter, sign)| ColumnType { letter, sign })
            .collect();
        Ok(Arc::new(RygSpec {
            l,
            r,
            columns,
            weights,
        }))
    }

    /// Parse compact sequences like `"LRLR"`, `"+-+-"`.
    pub fn build_from_strings(
        l: i32,
        r: i32,
        lr: &str,
        signs: &str,
        weights: Vec<Weight>,
    ) -> Result<Arc<RygSpec>, GraphError> {
        let letters = lr
            .chars()
            .map(|c| match c {
                'L' => Ok(Letter::L),
                'R' => Ok(Letter::R),
                _ => Err(GraphError::BadSequence(lr.into())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let sgn = signs
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                _ => Err(GraphError::BadSequence(signs.into())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::build(l, r, letters, sgn, weights)
    }

    pub fn l(&self) -> i32 {
        self.l
    }

    pub fn r(&self) -> i32 {
        self.r
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    pub fn column_indices(&self) -> std::ops::RangeInclusive<i32> {
        self.l..=self.r
    }

    pub fn column(&self, i: i32) -> ColumnType {
        assert!(i >= self.l && i <= self.r, "column {} out of range", i);
        self.columns[(i - self.l) as usize]
    }

    pub fn weight(&self, i: i32) -> &Weight {
        &self.weights[(i - self.l) as usize]
    }

    pub fn lr_string(&self) -> String {
        self.columns
            .iter()
            .map(|c| match c.letter {
                Letter::L => 'L',
                Letter::R => 'R',
            })
            .collect()
    }

    pub fn sign_string(&self) -> String {
        self.columns
            .iter()
            .map(|c| match c.sign {
                Sign::Plus => '+',
                Sign::Minus => '-',
            })
            .collect()
    }

    /// All weights as exact rationals; errors out on symbolic entries.
    pub fn rational_weights(&self) -> Result<Vec<BigRational>, GraphError> {
        self.weights
            .iter()
            .map(|w| match w {
                Weight::Rational(r) => Ok(r.clone()),
                Weight::Symbolic => Err(GraphError::SymbolicWeight),
            })
            .collect()
    }

    pub fn numeric_weight(&self, i: i32) -> Result<f64, GraphError> {
        match self.weight(i) {
            Weight::Rational(r) => Ok(rat_to_f64(r)),
            Weight::Symbolic => Err(GraphError::SymbolicWeight),
        }
    }

    pub fn numeric_weights(&self) -> Result<Vec<f64>, GraphError> {
        self.column_indices()
            .map(|i| self.numeric_weight(i))
            .collect()
    }

    /// Unique odd diagonal neighbor of an even vertex, by column type.
    pub fn diagonal_neighbor(&self, v: Vertex) -> Result<Vertex, GraphError> {
        if !v.is_even() {
            return Err(GraphError::NotEvenInner(v));
        }
        let m = v.x.div_euclid(2);
        if m < self.l || m > self.r {
            return Err(GraphError::ColumnOutOfRange(m, self.l, self.r));
        }
        let t = self.column(m);
        let dx = match t.letter {
            Letter::L => -1,
            Letter::R => 1,
        };
        let dy2 = match t.sign {
            Sign::Plus => 2,
            Sign::Minus => -2,
        };
        Ok(Vertex::new(v.x + dx, v.y2 + dy2))
    }

    /// The diagonal edge of column `i` whose even endpoint sits at `y2`.
    pub fn diagonal_edge(&self, i: i32, y2: i32) -> Edge {
        let even = Vertex::new(2 * i, y2);
        let odd = self.diagonal_neighbor(even).expect("column in range");
        Edge::new(even, odd)
    }

    /// Horizontal edge of column `i` at height `y2` on the given side
    /// (-1 = left odd column, +1 = right odd column).
    pub fn horizontal_edge(&self, i: i32, y2: i32, side: i32) -> Edge {
        assert!(side == -1 || side == 1);
        Edge::new(Vertex::new(2 * i, y2), Vertex::new(2 * i + side, y2))
    }

    /// Drop an initial run of `-` columns and a final run of `+` columns;
    /// such columns admit only their fundamental configuration in pure
    /// coverings and do not affect the partition function.
    pub fn normalized(&self) -> Result<Arc<RygSpec>, GraphError> {
        let mut lo = self.l;
        let mut hi = self.r;
        while lo <= hi && self.column(lo).sign == Sign::Minus {
            lo += 1;
        }
        while hi >= lo && self.column(hi).sign == Sign::Plus {
            hi -= 1;
        }
        if lo > hi {
            // Everything trivial; keep a single elementary column so the
            // spec stays well-formed. Z = 1 either way.
            return RygSpec::build(
                self.l,
                self.l,
                vec![self.column(self.l).letter],
                vec![self.column(self.l).sign],
                vec![self.weight(self.l).clone()],
            );
        }
        let a = (lo - self.l) as usize;
        let b = (hi - self.l + 1) as usize;
        RygSpec::build(
            lo,
            hi,
            self.columns[a..b].iter().map(|c| c.letter).collect(),
            self.columns[a..b].iter().map(|c| c.sign).collect(),
            self.weights[a..b].to_vec(),
        )
    }
}

impl fmt::Display for RygSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RYG({},{},{},{})",
            self.l,
            self.r,
            self.lr_string(),
            self.sign_string()
        )
    }
}

/// JSON form: `{"l":0,"r":3,"lr":"LRLR","signs":"+-+-","weights":["1",...]}`.
#[derive(Serialize, Deserialize)]
struct SpecJson {
    l: i32,
    r: i32,
    lr: String,
    signs: String,
    weights: Vec<String>,
}

impl RygSpec {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&SpecJson {
            l: self.l,
            r: self.r,
            lr: self.lr_string(),
            signs: self.sign_string(),
            weights: self.weights.iter().map(|w| w.as_string()).collect(),
        })
        .expect("spec serialization")
    }

    pub fn from_json(s: &str) -> Result<Arc<RygSpec>, GraphError> {
        let raw: SpecJson =
            serde_json::from_str(s).map_err(|e| GraphError::MalformedCovering(e.to_string()))?;
        let weights = raw
            .weights
            .iter()
            .map(|w| Weight::parse(w))
            .collect::<Result<Vec<_>, _>>()?;
        RygSpec::build_from_strings(raw.l, raw.r, &raw.lr, &raw.signs, weights)
    }
}

/// Helpers shared by tests and the CLI.
pub fn uniform_weights(n: usize) -> Vec<Weight> {
    vec![Weight::Rational(BigRational::one()); n]
}

pub fn symbolic_weights(n: usize) -> Vec<Weight> {
    vec![Weight::Symbolic; n]
}

pub fn half_int_string(y2: i32) -> String {
    if y2 % 2 == 0 {
        format!("{}", y2 / 2)
    } else {
        format!("{}/2", y2)
    }
}

pub fn parse_half_int(s: &str) -> Option<i32> {
    if let Some((n, d)) = s.split_once('/') {
        if d.trim() != "2" {
            return None;
        }
        n.trim().parse::<i32>().ok()
    } else {
        s.trim().parse::<i32>().ok().map(|v| 2 * v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_validates_lengths() {
        let err = RygSpec::build_from_strings(1, 6, "RLR", "++-+--", uniform_weights(3));
        assert!(err.is_err());
        let spec =
            RygSpec::build_from_strings(1, 6, "RLRRLR", "++-+--", symbolic_weights(6)).unwrap();
        assert_eq!(spec.column_count(), 6);
        assert_eq!(spec.column(1).letter, Letter::R);
        assert_eq!(spec.column(2).letter, Letter::L);
        assert_eq!(spec.column(3).sign, Sign::Minus);
    }

    #[test]
    fn elementary_and_aztec_specs() {
        let spec = RygSpec::build_from_strings(1, 1, "L", "+", symbolic_weights(1)).unwrap();
        assert_eq!(spec.column_count(), 1);
        let n = 3;
        let lr: String = "LR".repeat(n);
        let signs: String = "+-".repeat(n);
        let spec =
            RygSpec::build_from_strings(0, 2 * n as i32 - 1, &lr, &signs, uniform_weights(2 * n))
                .unwrap();
        assert_eq!(spec.column(0).letter, Letter::L);
        assert_eq!(spec.column(0).sign, Sign::Plus);
        assert_eq!(spec.column(5).letter, Letter::R);
        assert_eq!(spec.column(5).sign, Sign::Minus);
    }

    #[test]
    fn diagonal_neighbor_four_cases() {
        let spec =
            RygSpec::build_from_strings(0, 3, "LLRR", "+-+-", symbolic_weights(4)).unwrap();
        // L+ at column 0, L- at 1, R+ at 2, R- at 3
        assert_eq!(
            spec.diagonal_neighbor(Vertex::new(0, 1)).unwrap(),
            Vertex::new(-1, 3)
        );
        assert_eq!(
            spec.diagonal_neighbor(Vertex::new(2, 1)).unwrap(),
            Vertex::new(1, -1)
        );
        assert_eq!(
            spec.diagonal_neighbor(Vertex::new(4, 1)).unwrap(),
            Vertex::new(5, 3)
        );
        assert_eq!(
            spec.diagonal_neighbor(Vertex::new(6, 1)).unwrap(),
            Vertex::new(7, -1)
        );
        assert!(spec.diagonal_neighbor(Vertex::new(1, 1)).is_err());
        assert!(spec.diagonal_neighbor(Vertex::new(10, 1)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let spec = RygSpec::build_from_strings(
            0,
            3,
            "LRLR",
            "+-+-",
            vec![
                Weight::Rational(BigRational::new(1.into(), 2.into())),
                Weight::Symbolic,
                Weight::Rational(BigRational::one()),
                Weight::Rational(BigRational::new(3.into(), 10.into())),
            ],
        )
        .unwrap();
        let json = spec.to_json();
        let back = RygSpec::from_json(&json).unwrap();
        assert_eq!(*spec, *back);
        assert!(json.contains("\"lr\":\"LRLR\""));
    }

    #[test]
    fn normalization_trims_trivial_runs() {
        let spec =
            RygSpec::build_from_strings(0, 4, "LLRLR", "-++-+", symbolic_weights(5)).unwrap();
        let norm = spec.normalized().unwrap();
        assert_eq!(norm.l(), 1);
        assert_eq!(norm.r(), 3);
        assert_eq!(norm.lr_string(), "LRL");
        assert_eq!(norm.sign_string(), "++-");
    }

    #[test]
    fn half_int_strings() {
        assert_eq!(half_int_string(3), "3/2");
        assert_eq!(half_int_string(-5), "-5/2");
        assert_eq!(parse_half_int("3/2"), Some(3));
        assert_eq!(parse_half_int("-7/2"), Some(-7));
    }
}
