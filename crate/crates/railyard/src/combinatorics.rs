//! Integer partitions, Maya diagrams and charged partitions.
//!
//! Partitions encode boundary states of dimer coverings; a Maya diagram is
//! the marble picture of a charged partition (black marbles far to the
//! left, white far to the right, finitely many deviations from the charge-0
//! vacuum). The bijection is `k_i = lambda_i + c - i + 1/2` for the black
//! marble positions enumerated in decreasing order.
//!
//! Half-integer positions are stored doubled throughout the crate: a field
//! named `k2` or `y2` holds `2k` for the true position `k` in Z + 1/2.

use std::fmt;

use serde::{Deserialize, Serialize};

/// An integer partition: weakly decreasing positive parts, trailing zeros
/// dropped at construction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "parts must be weakly decreasing: {:?}",
            parts
        );
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `lambda_i` with 1-based indexing and implicit zeros.
    pub fn part(&self, i: usize) -> u32 {
        assert!(i >= 1);
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Conjugate partition: `lambda'_i = #{j : lambda_j >= i}`.
    pub fn conjugate(&self) -> Partition {
        let rows = self.part(1) as usize;
        let mut cols = Vec::with_capacity(rows);
        for i in 1..=rows {
            cols.push(self.parts.iter().filter(|&&p| p >= i as u32).count() as u32);
        }
        Partition { parts: cols }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

/// Which interlacing chain relates two partitions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InterlaceKind {
    /// `lambda/mu` is a horizontal strip.
    Horizontal,
    /// `lambda'/mu'` is a horizontal strip, i.e. each part drops by 0 or 1.
    Vertical,
}

/// Does `lambda` interlace `mu` from above (`lambda >= mu` termwise chain)?
///
/// Horizontal: `lambda_1 >= mu_1 >= lambda_2 >= mu_2 >= ...`.
/// Vertical: the same chain for the conjugates, equivalently
/// `lambda_i - mu_i` in `{0,1}` for all `i`.
pub fn interlaces(lambda: &Partition, mu: &Partition, kind: InterlaceKind) -> bool {
    match kind {
        InterlaceKind::Horizontal => {
            let n = lambda.len().max(mu.len()) + 1;
            for i in 1..=n {
                if lambda.part(i) < mu.part(i) {
                    return false;
                }
                if i >= 1 && mu.part(i) < lambda.part(i + 1) {
                    return false;
                }
            }
            true
        }
        InterlaceKind::Vertical => {
            let n = lambda.len().max(mu.len()) + 1;
            (1..=n).all(|i| {
                let d = lambda.part(i) as i64 - mu.part(i) as i64;
                d == 0 || d == 1
            })
        }
    }
}

/// Grow or shrink when enumerating interlacing partners.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InterlaceDirection {
    /// Enumerate `mu` with `mu` above `lambda` (`mu >= lambda`).
    Grow,
    /// Enumerate `mu` with `mu` below `lambda` (`mu <= lambda`).
    Shrink,
}

/// All partitions `mu` interlacing `lambda` in the requested direction and
/// kind, with `| |mu| - |lambda| | <= max_size_delta`.
pub fn enumerate_interlacing(
    lambda: &Partition,
    kind: InterlaceKind,
    direction: InterlaceDirection,
    max_size_delta: u32,
) -> Vec<Partition> {
    match (kind, direction) {
        (InterlaceKind::Horizontal, InterlaceDirection::Shrink) => {
            horizontal_shrink(lambda, max_size_delta)
        }
        (InterlaceKind::Horizontal, InterlaceDirection::Grow) => {
            horizontal_grow(lambda, max_size_delta)
        }
        (InterlaceKind::Vertical, InterlaceDirection::Shrink) => {
            vertical_strip(lambda, max_size_delta, false)
        }
        (InterlaceKind::Vertical, InterlaceDirection::Grow) => {
            vertical_strip(lambda, max_size_delta, true)
        }
    }
}

/// mu <= lambda horizontally: mu_i in [lambda_{i+1}, lambda_i].
fn horizontal_shrink(lambda: &Partition, budget: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let n = lambda.len();
    let mut current: Vec<u32> = Vec::with_capacity(n);
    fn rec(lambda: &Partition, i: usize, left: i64, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i > lambda.len() {
            out.push(Partition::new(current.clone()));
            return;
        }
        let hi = lambda.part(i);
        let lo = lambda.part(i + 1);
        for v in (lo..=hi).rev() {
            let cost = (hi - v) as i64;
            if cost > left {
                continue;
            }
            current.push(v);
            rec(lambda, i + 1, left - cost, current, out);
            current.pop();
        }
    }
    rec(lambda, 1, budget as i64, &mut current, &mut out);
    out
}

/// mu >= lambda horizontally: mu_1 free above lambda_1, mu_i in
/// [lambda_i, lambda_{i-1}] afterwards, budget caps the growth.
fn horizontal_grow(lambda: &Partition, budget: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current: Vec<u32> = Vec::new();
    fn rec(lambda: &Partition, i: usize, left: i64, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        // mu has at most len(lambda)+1 nonzero parts.
        if i > lambda.len() + 1 {
            out.push(Partition::new(current.clone()));
            return;
        }
        let lo = lambda.part(i);
        let hi = if i == 1 {
            lambda.part(1) as i64 + left
        } else {
            (lambda.part(i - 1) as i64).min(lambda.part(i) as i64 + left)
        };
        for v in (lo as i64..=hi).rev() {
            let cost = v - lambda.part(i) as i64;
            if cost > left {
                continue;
            }
            current.push(v as u32);
            rec(lambda, i + 1, left - cost, current, out);
            current.pop();
        }
    }
    rec(lambda, 1, budget as i64, &mut current, &mut out);
    out
}

/// Add (grow) or remove (shrink) a vertical strip: each part changes by 0
/// or 1, keeping a valid partition; growth may add one part at the end.
fn vertical_strip(lambda: &Partition, budget: u32, grow: bool) -> Vec<Partition> {
    // Growth may append new rows, each costing one box.
    let rows = lambda.len() + if grow { budget as usize } else { 0 };
    let mut out = Vec::new();
    let mut current: Vec<u32> = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn rec(
        lambda: &Partition,
        grow: bool,
        rows: usize,
        i: usize,
        left: i64,
        current: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if i > rows {
            out.push(Partition::new(current.clone()));
            return;
        }
        let base = lambda.part(i) as i64;
        for delta in [0i64, 1] {
            if delta > left {
                continue;
            }
            let v = if grow { base + delta } else { base - delta };
            if v < 0 {
                continue;
            }
            if let Some(&prev) = current.last() {
                if v > prev as i64 {
                    continue;
                }
            }
            // When shrinking, removing from a zero row is meaningless.
            if !grow && base == 0 && delta == 1 {
                continue;
            }
            current.push(v as u32);
            rec(lambda, grow, rows, i + 1, left - delta, current, out);
            current.pop();
        }
    }
    rec(lambda, grow, rows, 1, budget as i64, &mut current, &mut out);
    out.sort();
    out.dedup();
    out
}

/// Marble colors of a Maya diagram.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Marble {
    Black,
    White,
}

impl Marble {
    pub fn flipped(self) -> Marble {
        match self {
            Marble::Black => Marble::White,
            Marble::White => Marble::Black,
        }
    }
}

/// The charge-0 vacuum color at doubled position `k2`: black below zero,
/// white above.
pub fn vacuum_marble(k2: i32) -> Marble {
    if k2 < 0 {
        Marble::Black
    } else {
        Marble::White
    }
}

/// A Maya diagram stored as its finite set of deviations from the charge-0
/// vacuum, sorted by position. Positions are doubled half-integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct MayaDiagram {
    deviations: Vec<(i32, Marble)>,
}

impl MayaDiagram {
    pub fn vacuum() -> Self {
        MayaDiagram::default()
    }

    pub fn from_deviations(mut deviations: Vec<(i32, Marble)>) -> Self {
        deviations.sort();
        deviations.dedup();
        for w in deviations.windows(2) {
            assert!(w[0].0 != w[1].0, "conflicting marbles at position {}", w[0].0);
        }
        for &(k2, m) in &deviations {
            assert!(k2 % 2 != 0, "positions must be half-integers (doubled odd)");
            assert!(m != vacuum_marble(k2), "deviation equal to vacuum at {}", k2);
        }
        MayaDiagram { deviations }
    }

    pub fn deviations(&self) -> &[(i32, Marble)] {
        &self.deviations
    }

    pub fn marble_at(&self, k2: i32) -> Marble {
        debug_assert!(k2 % 2 != 0);
        match self.deviations.binary_search_by_key(&k2, |&(p, _)| p) {
            Ok(idx) => self.deviations[idx].1,
            Err(_) => vacuum_marble(k2),
        }
    }

    /// Flip the marble at `k2`, returning the new diagram.
    pub fn flipped_at(&self, k2: i32) -> MayaDiagram {
        let mut deviations = self.deviations.clone();
        match deviations.binary_search_by_key(&k2, |&(p, _)| p) {
            Ok(idx) => {
                let m = deviations[idx].1.flipped();
                if m == vacuum_marble(k2) {
                    deviations.remove(idx);
                } else {
                    deviations[idx].1 = m;
                }
            }
            Err(idx) => {
                deviations.insert(idx, (k2, vacuum_marble(k2).flipped()));
            }
        }
        MayaDiagram { deviations }
    }

    /// Charge: black marbles above zero minus white marbles below zero.
    pub fn charge(&self) -> i32 {
        let mut c = 0;
        for &(k2, m) in &self.deviations {
            match (k2 > 0, m) {
                (true, Marble::Black) => c += 1,
                (false, Marble::White) => c -= 1,
                _ => {}
            }
        }
        c
    }

    /// Reflection across 0 with colors exchanged; this realizes the
    /// involution `(lambda, c) -> (lambda', -c)` on charged partitions.
    pub fn reflected(&self) -> MayaDiagram {
        let mut deviations: Vec<(i32, Marble)> = self
            .deviations
            .iter()
            .map(|&(k2, m)| (-k2, m.flipped()))
            .collect();
        deviations.sort();
        MayaDiagram { deviations }
    }
}

/// A partition together with an integer charge; bijective with Maya
/// diagrams.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct ChargedPartition {
    pub parts: Partition,
    pub charge: i32,
}

impl ChargedPartition {
    pub fn new(parts: Partition, charge: i32) -> Self {
        ChargedPartition { parts, charge }
    }

    pub fn vacuum() -> Self {
        ChargedPartition::new(Partition::empty(), 0)
    }

    /// Doubled position of the `i`-th black marble (1-based):
    /// `2*(lambda_i + c - i) + 1`.
    pub fn black_position2(&self, i: usize) -> i32 {
        2 * (self.parts.part(i) as i64 + self.charge as i64 - i as i64) as i32 + 1
    }

    /// The involution `omega`: conjugate the partition, negate the charge.
    pub fn omega(&self) -> ChargedPartition {
        ChargedPartition::new(self.parts.conjugate(), -self.charge)
    }

    /// Number of black marbles strictly above doubled position `k2`;
    /// the exponent of the fermionic sign.
    pub fn blacks_above(&self, k2: i32) -> u32 {
        let len = self.parts.len();
        let mut count = 0;
        for i in 1..=len {
            if self.black_position2(i) > k2 {
                count += 1;
            }
        }
        // Tail i > len: positions 2(c - i) + 1 > k2  <=>  i < c + (1 - k2)/2.
        // Count integers i in (len, c + (1-k2)/2).
        let bound = self.charge as i64 + (1 - k2 as i64) / 2; // k2 odd: exact
        let tail = bound - 1 - len as i64;
        if tail > 0 {
            count += tail as u32;
        }
        count
    }

    /// Marble color at doubled position `k2`.
    pub fn marble_at(&self, k2: i32) -> Marble {
        // Black iff k2 is one of the black positions; solve for the index.
        // lambda_i = (k2 - 1)/2 - c + i must hold with a valid part.
        let len = self.parts.len();
        for i in 1..=len {
            if self.black_position2(i) == k2 {
                return Marble::Black;
            }
        }
        let i = self.charge as i64 + (1 - k2 as i64) / 2;
        if i > len as i64 && i >= 1 {
            Marble::Black
        } else {
            Marble::White
        }
    }
}

impl fmt::Display for ChargedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.parts, self.charge)
    }
}

/// Maya diagram of a charged partition: black marbles at
/// `k_i = lambda_i + c - i + 1/2`.
pub fn maya_from_charged(cp: &ChargedPartition) -> MayaDiagram {
    let mut deviations = Vec::new();
    // Enumerate enough black positions that the remainder is a consecutive
    // run below every deviation: past index len + |c| + 2 the partition
    // part is zero and positions decrease by one marble at a time.
    let len = cp.parts.len();
    let n_blacks = len + cp.charge.unsigned_abs() as usize + 2;
    let mut black_positions = Vec::with_capacity(n_blacks);
    for i in 1..=n_blacks {
        black_positions.push(cp.black_position2(i));
    }
    let black_set: std::collections::BTreeSet<i32> = black_positions.iter().copied().collect();
    for &k2 in &black_set {
        if k2 > 0 {
            deviations.push((k2, Marble::Black));
        }
    }
    // Below the last enumerated black everything is black, matching the
    // vacuum; white deviations are the uncovered negative positions above.
    let floor = *black_positions.last().unwrap();
    let mut k2 = floor + 2;
    while k2 < 0 {
        if !black_set.contains(&k2) {
            deviations.push((k2, Marble::White));
        }
        k2 += 2;
    }
    MayaDiagram::from_deviations(deviations)
}

/// Inverse of [`maya_from_charged`].
pub fn charged_from_maya(m: &MayaDiagram) -> ChargedPartition {
    let c = m.charge();
    // Black positions in decreasing order, down to where the diagram
    // agrees with the charge-c vacuum.
    let lowest_dev = m.deviations.first().map(|&(k2, _)| k2).unwrap_or(0);
    let mut blacks: Vec<i32> = Vec::new();
    let mut k2 = m
        .deviations
        .last()
        .map(|&(p, _)| p)
        .unwrap_or(-1)
        .max(2 * c.abs() + 1);
    while k2 >= lowest_dev.min(-1) - 2 * (c.abs() + 1) {
        if m.marble_at(k2) == Marble::Black {
            blacks.push(k2);
        }
        k2 -= 2;
    }
    let mut parts = Vec::new();
    for (idx, &b2) in blacks.iter().enumerate() {
        let i = idx as i64 + 1;
        let lam = (b2 as i64 - 1) / 2 - c as i64 + i;
        assert!(lam >= 0, "malformed Maya diagram");
        parts.push(lam as u32);
    }
    ChargedPartition::new(Partition::new(parts), c)
}
