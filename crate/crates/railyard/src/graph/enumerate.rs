//! Exhaustive enumeration of admissible coverings on a window.
//!
//! This is a direct backtracking search over the dimer choices of each
//! even vertex, independent of the transfer-matrix machinery; it serves as
//! the combinatorial oracle for partition functions and correlations.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::{Covering, Edge, GraphError, RygSpec, Vertex};
use crate::combinatorics::{Marble, MayaDiagram};

/// What to enumerate: coverings of `spec` on window `half_height`, with
/// at most `max_degree` diagonal dimers, the given boundary states
/// (vacuum for pure coverings), and containing all `required` edges.
pub struct EnumerationQuery {
    pub spec: Arc<RygSpec>,
    pub half_height: i32,
    pub max_degree: u32,
    pub left_state: MayaDiagram,
    pub right_state: MayaDiagram,
    pub required: Vec<Edge>,
}

impl EnumerationQuery {
    pub fn pure(spec: &Arc<RygSpec>, half_height: i32, max_degree: u32) -> Self {
        EnumerationQuery {
            spec: spec.clone(),
            half_height,
            max_degree,
            left_state: MayaDiagram::vacuum(),
            right_state: MayaDiagram::vacuum(),
            required: Vec::new(),
        }
    }
}

struct Search<'a> {
    q: &'a EnumerationQuery,
    rows: Vec<i32>,
    /// odd vertex -> covered flag during the search
    odd_covered: HashMap<Vertex, bool>,
    chosen: Vec<Edge>,
    diagonals: u32,
    required_by_even: HashMap<Vertex, Edge>,
    out: Vec<Covering>,
}

/// Enumerate every admissible covering matching the query.
pub fn enumerate_coverings(q: &EnumerationQuery) -> Result<Vec<Covering>, GraphError> {
    let top = 2 * q.half_height - 1;
    for m in [&q.left_state, &q.right_state] {
        for &(k2, _) in m.deviations() {
            if k2.abs() > top {
                return Err(GraphError::WindowTooSmall(
                    q.half_height,
                    format!("boundary deviation at {}/2", k2),
                ));
            }
        }
    }
    let mut required_by_even = HashMap::new();
    for e in &q.required {
        if required_by_even.insert(e.even, *e).is_some() {
            // two required edges share an even vertex: no covering
            return Ok(Vec::new());
        }
    }
    let rows: Vec<i32> = (-top..=top).step_by(2).collect();
    let mut s = Search {
        q,
        rows,
        odd_covered: HashMap::new(),
        chosen: Vec::new(),
        diagonals: 0,
        required_by_even,
        out: Vec::new(),
    };
    s.column(q.spec.l());
    Ok(s.out)
}

impl<'a> Search<'a> {
    fn spec(&self) -> &RygSpec {
        &self.q.spec
    }

    fn covered(&self, v: Vertex) -> bool {
        self.odd_covered.get(&v).copied().unwrap_or(false)
    }

    /// Required final coverage of the odd vertex at `(x, y2)`.
    fn odd_target(&self, x: i32, y2: i32) -> bool {
        let spec = self.spec();
        if x == 2 * spec.l() - 1 {
            self.q.left_state.marble_at(y2) == Marble::White
        } else if x == 2 * spec.r() + 1 {
            self.q.right_state.marble_at(y2) == Marble::Black
        } else {
            true
        }
    }

    /// Is the odd column at abscissa `x` finished and consistent?
    fn check_odd_column(&self, x: i32) -> bool {
        self.rows
            .iter()
            .all(|&y2| self.covered(Vertex::new(x, y2)) == self.odd_target(x, y2))
    }

    fn column(&mut self, i: i32) {
        let spec = self.q.spec.clone();
        if i > spec.r() {
            if self.check_odd_column(2 * spec.r() + 1) {
                let covering = Covering::from_edges_unchecked(
                    self.q.spec.clone(),
                    self.q.half_height,
                    BTreeSet::from_iter(self.chosen.iter().copied()),
                );
                debug_assert!(covering.validate().is_ok());
                self.out.push(covering);
            }
            return;
        }
        self.row(i, 0);
    }

    fn row(&mut self, i: i32, row_idx: usize) {
        if row_idx == self.rows.len() {
            // Column finished: the odd column to its left is final.
            if self.check_odd_column(2 * i - 1) {
                self.column(i + 1);
            }
            return;
        }
        let spec = self.q.spec.clone();
        let y2 = self.rows[row_idx];
        let even = Vertex::new(2 * i, y2);
        let top = 2 * self.q.half_height - 1;

        let mut candidates: Vec<Edge> = Vec::with_capacity(3);
        if let Some(req) = self.required_by_even.get(&even) {
            candidates.push(*req);
        } else {
            candidates.push(spec.horizontal_edge(i, y2, -1));
            candidates.push(spec.horizontal_edge(i, y2, 1));
            let diag = spec.diagonal_edge(i, y2);
            if diag.odd.y2.abs() <= top {
                candidates.push(diag);
            }
        }
        for e in candidates {
            let is_diag = e.kind() == super::EdgeKind::Diagonal;
            if is_diag && self.diagonals >= self.q.max_degree {
                continue;
            }
            if self.covered(e.odd) {
                continue;
            }
            // A required edge whose odd endpoint this horizontal would
            // steal will fail later anyway; no special casing needed.
            self.odd_covered.insert(e.odd, true);
            self.chosen.push(e);
            if is_diag {
                self.diagonals += 1;
            }
            // Once this row is decided, the left-odd vertex one row below
            // can no longer change: every edge reaching it comes from
            // column i-1 or from column i at rows <= y2. Pruning here
            // keeps the search from branching across whole columns.
            let settled = Vertex::new(2 * i - 1, y2 - 2);
            if self.covered(settled) == self.odd_target(settled.x, settled.y2)
                || settled.y2 < -(2 * self.q.half_height - 1)
            {
                self.row(i, row_idx + 1);
            }
            if is_diag {
                self.diagonals -= 1;
            }
            self.chosen.pop();
            self.odd_covered.insert(e.odd, false);
        }
    }
}
