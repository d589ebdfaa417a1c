//! Dimer coverings on a finite window and the encoding as interlaced
//! partition sequences.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num::BigRational;

use super::{Edge, GraphError, Letter, RygSpec, Sign, Vertex};
use crate::combinatorics::{charged_from_maya, ChargedPartition, Marble, MayaDiagram};
use crate::series::{Monomial, TruncatedSeries, Var};

/// An admissible dimer covering restricted to the window `|y| < H`,
/// continued by the fundamental covering outside.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Covering {
    spec: Arc<RygSpec>,
    half_height: i32,
    covered: BTreeSet<Edge>,
}

impl Covering {
    /// The unique pure covering without diagonal dimers: every even vertex
    /// matches leftward above the axis and rightward below.
    pub fn fundamental(spec: &Arc<RygSpec>, half_height: i32) -> Covering {
        assert!(half_height >= 1);
        let mut covered = BTreeSet::new();
        for i in spec.column_indices() {
            let mut y2 = -2 * half_height + 1;
            while y2 <= 2 * half_height - 1 {
                let side = if y2 > 0 { -1 } else { 1 };
                covered.insert(spec.horizontal_edge(i, y2, side));
                y2 += 2;
            }
        }
        Covering {
            spec: spec.clone(),
            half_height,
            covered,
        }
    }

    pub fn from_edges(
        spec: &Arc<RygSpec>,
        half_height: i32,
        covered: BTreeSet<Edge>,
    ) -> Result<Covering, GraphError> {
        let c = Covering {
            spec: spec.clone(),
            half_height,
            covered,
        };
        c.validate()?;
        Ok(c)
    }

    /// Construct without validation; used by enumeration which builds only
    /// consistent configurations.
    pub(crate) fn from_edges_unchecked(
        spec: Arc<RygSpec>,
        half_height: i32,
        covered: BTreeSet<Edge>,
    ) -> Covering {
        Covering {
            spec,
            half_height,
            covered,
        }
    }

    pub fn spec(&self) -> &Arc<RygSpec> {
        &self.spec
    }

    pub fn half_height(&self) -> i32 {
        self.half_height
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.covered.iter()
    }

    pub fn covered_set(&self) -> &BTreeSet<Edge> {
        &self.covered
    }

    pub fn is_covered(&self, e: &Edge) -> bool {
        self.covered.contains(e)
    }

    pub fn in_window(&self, v: Vertex) -> bool {
        v.y2.abs() <= 2 * self.half_height - 1
    }

    fn window_rows(&self) -> impl Iterator<Item = i32> {
        let h = self.half_height;
        (-(2 * h - 1)..=2 * h - 1).step_by(2)
    }

    /// Check the covering is admissible on its window: every inner vertex
    /// covered exactly once, edges inside the window, finitely many
    /// deviations (automatic), and the boundary coverage patterns form
    /// Maya diagrams that agree with the vacuum at the window edge.
    pub fn validate(&self) -> Result<(), GraphError> {
        let spec = &self.spec;
        let mut count: BTreeMap<Vertex, u32> = BTreeMap::new();
        for e in &self.covered {
            let m = e.column();
            if m < spec.l() || m > spec.r() {
                return Err(GraphError::MalformedCovering(format!(
                    "edge {} outside column range",
                    e
                )));
            }
            if !self.in_window(e.even) || !self.in_window(e.odd) {
                return Err(GraphError::MalformedCovering(format!(
                    "edge {} leaves the window",
                    e
                )));
            }
            // Edge must be one of the three incident to its even vertex.
            let valid = e.odd == Vertex::new(e.even.x - 1, e.even.y2)
                || e.odd == Vertex::new(e.even.x + 1, e.even.y2)
                || spec
                    .diagonal_neighbor(e.even)
                    .map(|v| v == e.odd)
                    .unwrap_or(false);
            if !valid {
                return Err(GraphError::MalformedCovering(format!(
                    "edge {} is not in the graph",
                    e
                )));
            }
            *count.entry(e.even).or_insert(0) += 1;
            *count.entry(e.odd).or_insert(0) += 1;
        }
        for (&v, &c) in &count {
            if c > 1 {
                return Err(GraphError::MalformedCovering(format!(
                    "vertex {} covered {} times",
                    v, c
                )));
            }
        }
        for y2 in self.window_rows() {
            // Even vertices: always exactly once.
            for i in spec.column_indices() {
                let v = Vertex::new(2 * i, y2);
                if count.get(&v).copied().unwrap_or(0) != 1 {
                    return Err(GraphError::MalformedCovering(format!(
                        "even vertex {} not covered exactly once",
                        v
                    )));
                }
            }
            // Inner odd vertices: exactly once.
            for x in (2 * spec.l() + 1..=2 * spec.r() - 1).step_by(2) {
                let v = Vertex::new(x, y2);
                if count.get(&v).copied().unwrap_or(0) != 1 {
                    return Err(GraphError::MalformedCovering(format!(
                        "inner odd vertex {} not covered exactly once",
                        v
                    )));
                }
            }
        }
        // Window-edge consistency: the top and bottom rows must match the
        // fundamental pattern so the implicit continuation glues.
        let top = 2 * self.half_height - 1;
        for i in spec.column_indices() {
            for (y2, side) in [(top, -1), (-top, 1)] {
                let e = spec.horizontal_edge(i, y2, side);
                if !self.covered.contains(&e) {
                    return Err(GraphError::WindowTooSmall(
                        self.half_height,
                        format!("row {} of column {} deviates from fundamental", y2, i),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Left and right boundary states: a left boundary vertex shows white
    /// when covered, a right boundary vertex shows black when covered.
    pub fn boundary_states(&self) -> (MayaDiagram, MayaDiagram) {
        let spec = &self.spec;
        let lx = 2 * spec.l() - 1;
        let rx = 2 * spec.r() + 1;
        let mut covered_left = BTreeSet::new();
        let mut covered_right = BTreeSet::new();
        for e in &self.covered {
            if e.odd.x == lx {
                covered_left.insert(e.odd.y2);
            }
            if e.odd.x == rx {
                covered_right.insert(e.odd.y2);
            }
        }
        let mut ldev = Vec::new();
        let mut rdev = Vec::new();
        for y2 in self.window_rows() {
            let lm = if covered_left.contains(&y2) {
                Marble::White
            } else {
                Marble::Black
            };
            if lm != crate::combinatorics::vacuum_marble(y2) {
                ldev.push((y2, lm));
            }
            let rm = if covered_right.contains(&y2) {
                Marble::Black
            } else {
                Marble::White
            };
            if rm != crate::combinatorics::vacuum_marble(y2) {
                rdev.push((y2, rm));
            }
        }
        (
            MayaDiagram::from_deviations(ldev),
            MayaDiagram::from_deviations(rdev),
        )
    }

    pub fn is_pure(&self) -> bool {
        let (l, r) = self.boundary_states();
        l == MayaDiagram::vacuum() && r == MayaDiagram::vacuum()
    }

    /// Number of diagonal dimers per column, as (column, count) pairs.
    pub fn diagonal_counts(&self) -> BTreeMap<i32, u32> {
        let mut counts = BTreeMap::new();
        for e in &self.covered {
            if e.kind() == super::EdgeKind::Diagonal {
                *counts.entry(e.column()).or_insert(0) += 1;
            }
        }
        counts
    }

    pub fn total_degree(&self) -> u32 {
        self.diagonal_counts().values().sum()
    }

    /// The weight monomial `prod x_i^{d_i}`.
    pub fn weight_monomial(&self) -> Monomial {
        let pairs: Vec<(Var, u32)> = self
            .diagonal_counts()
            .into_iter()
            .map(|(i, d)| (Var::X(i), d))
            .collect();
        Monomial::from_pairs(&pairs)
    }

    pub fn weight_series(&self, cap: u32) -> TruncatedSeries {
        TruncatedSeries::monomial(self.weight_monomial(), num::One::one(), cap)
    }

    /// Exact rational weight for numeric specs.
    pub fn weight_rational(&self) -> Result<BigRational, GraphError> {
        let mut w = BigRational::from_integer(1.into());
        for (i, d) in self.diagonal_counts() {
            let x = match self.spec.weight(i) {
                super::Weight::Rational(r) => r.clone(),
                super::Weight::Symbolic => return Err(GraphError::SymbolicWeight),
            };
            for _ in 0..d {
                w *= &x;
            }
        }
        Ok(w)
    }

    /// Exponent of `q` under the flip specialization `x_i = q^i` for `-`
    /// columns and `x_i = q^{-i}` for `+` columns.
    pub fn q_exponent(&self) -> i64 {
        let mut e: i64 = 0;
        for (i, d) in self.diagonal_counts() {
            let per = match self.spec.column(i).sign {
                Sign::Minus => i as i64,
                Sign::Plus => -(i as i64),
            };
            e += per * d as i64;
        }
        e
    }

    /// Serialize covered edges as sorted quadruples
    /// `[x_even, y_even, x_odd, y_odd]` with half-integer strings.
    pub fn to_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .covered
            .iter()
            .map(|e| {
                serde_json::json!([
                    e.even.x,
                    super::half_int_string(e.even.y2),
                    e.odd.x,
                    super::half_int_string(e.odd.y2)
                ])
            })
            .collect();
        serde_json::to_string(&rows).expect("covering serialization")
    }

    pub fn from_json(
        spec: &Arc<RygSpec>,
        half_height: i32,
        s: &str,
    ) -> Result<Covering, GraphError> {
        let rows: Vec<(i32, String, i32, String)> =
            serde_json::from_str(s).map_err(|e| GraphError::MalformedCovering(e.to_string()))?;
        let mut covered = BTreeSet::new();
        for (xe, ye, xo, yo) in rows {
            let ye2 = super::parse_half_int(&ye)
                .ok_or_else(|| GraphError::MalformedCovering(format!("bad ordinate {}", ye)))?;
            let yo2 = super::parse_half_int(&yo)
                .ok_or_else(|| GraphError::MalformedCovering(format!("bad ordinate {}", yo)))?;
            covered.insert(Edge::new(Vertex::new(xe, ye2), Vertex::new(xo, yo2)));
        }
        Covering::from_edges(spec, half_height, covered)
    }
}

/// Boundary Maya diagrams between consecutive columns, indexed `l..=r+1`;
/// entry `i - l` is the state on the odd column at abscissa `2i - 1`.
pub fn covering_to_sequence(c: &Covering) -> Result<Vec<MayaDiagram>, GraphError> {
    let spec = c.spec();
    // covered_by[x][y2] = abscissa of the even endpoint covering (x, y2)
    let mut covered_by: BTreeMap<(i32, i32), i32> = BTreeMap::new();
    for e in c.edges() {
        covered_by.insert((e.odd.x, e.odd.y2), e.even.x);
    }
    let mut out = Vec::new();
    for i in spec.l()..=spec.r() + 1 {
        let x = 2 * i - 1;
        let mut deviations = Vec::new();
        let top = 2 * c.half_height() - 1;
        let mut y2 = -top;
        while y2 <= top {
            let cov = covered_by.get(&(x, y2)).copied();
            let marble = if i == spec.l() {
                match cov {
                    Some(_) => Marble::White,
                    None => Marble::Black,
                }
            } else if i == spec.r() + 1 {
                match cov {
                    Some(_) => Marble::Black,
                    None => Marble::White,
                }
            } else {
                match cov {
                    Some(ex) if ex == 2 * i => Marble::White,
                    Some(ex) if ex == 2 * i - 2 => Marble::Black,
                    _ => {
                        return Err(GraphError::MalformedCovering(format!(
                            "inner odd vertex ({},{}/2) uncovered",
                            x, y2
                        )))
                    }
                }
            };
            if marble != crate::combinatorics::vacuum_marble(y2) {
                deviations.push((y2, marble));
            }
            y2 += 2;
        }
        out.push(MayaDiagram::from_deviations(deviations));
    }
    // Interlacing sanity: consecutive charged partitions must interlace
    // with the type dictated by the column.
    let cps: Vec<ChargedPartition> = out.iter().map(charged_from_maya).collect();
    for i in spec.l()..=spec.r() {
        let idx = (i - spec.l()) as usize;
        let (a, b) = (&cps[idx], &cps[idx + 1]);
        if a.charge != b.charge {
            return Err(GraphError::MalformedCovering(format!(
                "charge jump across column {}",
                i
            )));
        }
        let t = spec.column(i);
        use crate::combinatorics::{interlaces, InterlaceKind};
        let ok = match (t.letter, t.sign) {
            (Letter::L, Sign::Plus) => interlaces(&b.parts, &a.parts, InterlaceKind::Horizontal),
            (Letter::L, Sign::Minus) => interlaces(&a.parts, &b.parts, InterlaceKind::Horizontal),
            (Letter::R, Sign::Plus) => interlaces(&b.parts, &a.parts, InterlaceKind::Vertical),
            (Letter::R, Sign::Minus) => interlaces(&a.parts, &b.parts, InterlaceKind::Vertical),
        };
        if !ok {
            return Err(GraphError::MalformedCovering(format!(
                "interlacing violated across column {} ({} vs {})",
                i, a, b
            )));
        }
    }
    Ok(out)
}

/// Rebuild the covering from its boundary-state sequence. Inverse of
/// [`covering_to_sequence`] on admissible coverings.
pub fn sequence_to_covering(
    spec: &Arc<RygSpec>,
    states: &[MayaDiagram],
    half_height: i32,
) -> Result<Covering, GraphError> {
    let n = spec.column_count();
    if states.len() != n + 1 {
        return Err(GraphError::LengthMismatch {
            expected: n + 1,
            found: states.len(),
        });
    }
    let top = 2 * half_height - 1;
    let window = |m: &MayaDiagram| -> Result<(), GraphError> {
        for &(k2, _) in m.deviations() {
            if k2.abs() > top {
                return Err(GraphError::WindowTooSmall(
                    half_height,
                    format!("boundary deviation at {}/2", k2),
                ));
            }
        }
        Ok(())
    };
    let mut covered = BTreeSet::new();
    for i in spec.column_indices() {
        let idx = (i - spec.l()) as usize;
        let left = &states[idx];
        let right = &states[idx + 1];
        window(left)?;
        window(right)?;
        column_edges(spec, i, left, right, half_height, &mut covered)?;
    }
    Covering::from_edges(spec, half_height, covered)
}

/// Reconstruct the unique elementary covering of column `i` compatible
/// with the two boundary states, pushing its edges into `covered`.
fn column_edges(
    spec: &Arc<RygSpec>,
    i: i32,
    left: &MayaDiagram,
    right: &MayaDiagram,
    half_height: i32,
    covered: &mut BTreeSet<Edge>,
) -> Result<(), GraphError> {
    let t = spec.column(i);
    let top = 2 * half_height - 1;
    let rows = || ((-top..=top).step_by(2)).collect::<Vec<_>>();
    let fail = |msg: String| Err(GraphError::MalformedCovering(msg));

    match t.letter {
        Letter::L => {
            // Right-horizontal dimers are forced by black marbles on the
            // right state; whites of the two states pair up from the
            // bottom, moving by 0 or 1 in the direction of the sign.
            for y2 in rows() {
                if right.marble_at(y2) == Marble::Black {
                    covered.insert(spec.horizontal_edge(i, y2, 1));
                }
            }
            let lw: Vec<i32> = rows()
                .into_iter()
                .filter(|&y2| left.marble_at(y2) == Marble::White)
                .collect();
            let rw: Vec<i32> = rows()
                .into_iter()
                .filter(|&y2| right.marble_at(y2) == Marble::White)
                .collect();
            if lw.len() != rw.len() {
                return fail(format!(
                    "white marble count mismatch in column {} ({} vs {})",
                    i,
                    lw.len(),
                    rw.len()
                ));
            }
            for (&s, &tpos) in lw.iter().zip(rw.iter()) {
                let delta = s - tpos;
                match (t.sign, delta) {
                    (Sign::Plus, 0) | (Sign::Minus, 0) => {
                        covered.insert(spec.horizontal_edge(i, s, -1));
                    }
                    // L+: whites drop going right; the diagonal from even
                    // height t reaches the left odd vertex at s = t + 1.
                    (Sign::Plus, 2) => {
                        covered.insert(spec.diagonal_edge(i, tpos));
                    }
                    // L-: whites rise going right; diagonal from height t
                    // reaches s = t - 1.
                    (Sign::Minus, -2) => {
                        covered.insert(spec.diagonal_edge(i, tpos));
                    }
                    _ => {
                        return fail(format!(
                            "white marble jump {} invalid for column {} ({})",
                            delta, i, t
                        ))
                    }
                }
            }
        }
        Letter::R => {
            for y2 in rows() {
                if left.marble_at(y2) == Marble::White {
                    covered.insert(spec.horizontal_edge(i, y2, -1));
                }
            }
            let lb: Vec<i32> = rows()
                .into_iter()
                .rev()
                .filter(|&y2| left.marble_at(y2) == Marble::Black)
                .collect();
            let rb: Vec<i32> = rows()
                .into_iter()
                .rev()
                .filter(|&y2| right.marble_at(y2) == Marble::Black)
                .collect();
            if lb.len() != rb.len() {
                return fail(format!(
                    "black marble count mismatch in column {} ({} vs {})",
                    i,
                    lb.len(),
                    rb.len()
                ));
            }
            for (&s, &tpos) in lb.iter().zip(rb.iter()) {
                let delta = tpos - s;
                match (t.sign, delta) {
                    (Sign::Plus, 0) | (Sign::Minus, 0) => {
                        covered.insert(spec.horizontal_edge(i, s, 1));
                    }
                    // R+: blacks rise going right; diagonal from height s
                    // reaches the right odd vertex at t = s + 1.
                    (Sign::Plus, 2) => {
                        covered.insert(spec.diagonal_edge(i, s));
                    }
                    // R-: blacks drop; diagonal reaches t = s - 1.
                    (Sign::Minus, -2) => {
                        covered.insert(spec.diagonal_edge(i, s));
                    }
                    _ => {
                        return fail(format!(
                            "black marble jump {} invalid for column {} ({})",
                            delta, i, t
                        ))
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{symbolic_weights, uniform_weights};

    fn aztec(n: usize) -> Arc<RygSpec> {
        RygSpec::build_from_strings(
            0,
            2 * n as i32 - 1,
            &"LR".repeat(n),
            &"+-".repeat(n),
            uniform_weights(2 * n),
        )
        .unwrap()
    }

    #[test]
    fn fundamental_is_pure_and_weightless() {
        for spec in [
            aztec(2),
            RygSpec::build_from_strings(1, 6, "RLRRLR", "++-+--", symbolic_weights(6)).unwrap(),
            RygSpec::build_from_strings(1, 1, "L", "+", symbolic_weights(1)).unwrap(),
        ] {
            let f = Covering::fundamental(&spec, 4);
            f.validate().unwrap();
            assert!(f.is_pure());
            assert_eq!(f.total_degree(), 0);
            assert_eq!(f.weight_monomial(), Monomial::unit());
            let seq = covering_to_sequence(&f).unwrap();
            assert!(seq.iter().all(|m| *m == MayaDiagram::vacuum()));
        }
    }

    #[test]
    fn aztec_one_vertical_tiling() {
        let spec = aztec(1);
        let h = 3;
        // one diagonal dimer per column: L+ at y=-1/2, R- at y=+1/2
        let mut covered = BTreeSet::new();
        covered.insert(spec.diagonal_edge(0, -1));
        covered.insert(spec.diagonal_edge(1, 1));
        // fill the rest with the forced horizontals
        covered.insert(spec.horizontal_edge(0, 1, 1));
        covered.insert(spec.horizontal_edge(1, -1, -1));
        for y2 in [3, 5] {
            covered.insert(spec.horizontal_edge(0, y2, -1));
            covered.insert(spec.horizontal_edge(1, y2, -1));
        }
        for y2 in [-3, -5] {
            covered.insert(spec.horizontal_edge(0, y2, 1));
            covered.insert(spec.horizontal_edge(1, y2, 1));
        }
        let c = Covering::from_edges(&spec, h, covered).unwrap();
        assert!(c.is_pure());
        assert_eq!(c.total_degree(), 2);
        assert_eq!(
            c.weight_monomial(),
            Monomial::from_pairs(&[(Var::X(0), 1), (Var::X(1), 1)])
        );
        let seq = covering_to_sequence(&c).unwrap();
        assert_eq!(seq.len(), 3);
        let mids: Vec<ChargedPartition> = seq.iter().map(charged_from_maya).collect();
        assert_eq!(mids[0], ChargedPartition::vacuum());
        assert_eq!(
            mids[1],
            ChargedPartition::new(crate::combinatorics::Partition::new(vec![1]), 0)
        );
        assert_eq!(mids[2], ChargedPartition::vacuum());
        // round trip
        let back = sequence_to_covering(&spec, &seq, h).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn sequence_round_trip_fundamental() {
        let spec =
            RygSpec::build_from_strings(-1, 3, "RLLRR", "+-++-", symbolic_weights(5)).unwrap();
        let f = Covering::fundamental(&spec, 3);
        let seq = covering_to_sequence(&f).unwrap();
        let back = sequence_to_covering(&spec, &seq, 3).unwrap();
        assert_eq!(back, f);
    }
}
