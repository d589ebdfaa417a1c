//! Inner faces, flips, and flip reachability.
//!
//! Every inner face of a rail yard graph sits between two consecutive
//! columns `i` and `i+1` and spans one unit of the odd column they share;
//! it is the union of a half-face of each column, giving degree 4, 6 or 8.

use std::collections::{HashMap, HashSet, VecDeque};

use super::{Covering, Edge, GraphError, Letter, RygSpec, Sign, Vertex};

/// An inner face, identified by the left column of its pair and the doubled
/// ordinate of the bottom vertex of the shared odd column.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Face {
    pub left_column: i32,
    pub y2_bottom: i32,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FlipSign {
    Positive,
    Negative,
}

impl Face {
    /// Boundary cycle in counterclockwise order.
    pub fn boundary(&self, spec: &RygSpec) -> Vec<Vertex> {
        let i = self.left_column;
        let j = i + 1;
        assert!(i >= spec.l() && j <= spec.r(), "face outside graph");
        let y0 = self.y2_bottom;
        let y1 = y0 + 2;
        // Path from (2i+1, y0) to (2i+1, y1) through column i's vertices.
        let t = spec.column(i);
        let mut left_path = vec![Vertex::new(2 * i + 1, y0)];
        match (t.letter, t.sign) {
            (Letter::R, Sign::Plus) => {
                left_path.push(Vertex::new(2 * i, y0));
            }
            (Letter::R, Sign::Minus) => {
                left_path.push(Vertex::new(2 * i, y1));
            }
            (Letter::L, Sign::Plus) => {
                left_path.push(Vertex::new(2 * i, y0));
                left_path.push(Vertex::new(2 * i - 1, y1));
                left_path.push(Vertex::new(2 * i, y1));
            }
            (Letter::L, Sign::Minus) => {
                left_path.push(Vertex::new(2 * i, y0));
                left_path.push(Vertex::new(2 * i - 1, y0));
                left_path.push(Vertex::new(2 * i, y1));
            }
        }
        left_path.push(Vertex::new(2 * i + 1, y1));
        // Path from (2j-1, y0) to (2j-1, y1) through column j's vertices.
        let u = spec.column(j);
        let mut right_path = vec![Vertex::new(2 * j - 1, y0)];
        match (u.letter, u.sign) {
            (Letter::L, Sign::Plus) => {
                right_path.push(Vertex::new(2 * j, y0));
            }
            (Letter::L, Sign::Minus) => {
                right_path.push(Vertex::new(2 * j, y1));
            }
            (Letter::R, Sign::Plus) => {
                right_path.push(Vertex::new(2 * j, y0));
                right_path.push(Vertex::new(2 * j + 1, y1));
                right_path.push(Vertex::new(2 * j, y1));
            }
            (Letter::R, Sign::Minus) => {
                right_path.push(Vertex::new(2 * j, y0));
                right_path.push(Vertex::new(2 * j + 1, y0));
                right_path.push(Vertex::new(2 * j, y1));
            }
        }
        right_path.push(Vertex::new(2 * j - 1, y1));
        // Close the cycle: up one side, down the other.
        let mut cycle = left_path;
        right_path.reverse();
        cycle.extend_from_slice(&right_path[1..right_path.len() - 1]);
        if signed_area(&cycle) < 0.0 {
            cycle.reverse();
        }
        cycle
    }

    /// Edges around the face, as (edge, ccw traversal starts at odd end).
    pub fn boundary_edges(&self, spec: &RygSpec) -> Vec<(Edge, bool)> {
        let cycle = self.boundary(spec);
        let n = cycle.len();
        let mut out = Vec::with_capacity(n);
        for idx in 0..n {
            let u = cycle[idx];
            let v = cycle[(idx + 1) % n];
            let (even, odd, odd_first) = if u.is_even() { (u, v, false) } else { (v, u, true) };
            out.push((Edge::new(even, odd), odd_first));
        }
        out
    }

    pub fn degree(&self, spec: &RygSpec) -> usize {
        self.boundary(spec).len()
    }
}

fn signed_area(cycle: &[Vertex]) -> f64 {
    let mut s = 0.0;
    for idx in 0..cycle.len() {
        let a = cycle[idx];
        let b = cycle[(idx + 1) % cycle.len()];
        s += (a.x as f64) * b.y() - (b.x as f64) * a.y();
    }
    s / 2.0
}

/// All faces whose boundary lies inside the covering's window.
pub fn faces_in_window(spec: &RygSpec, half_height: i32) -> Vec<Face> {
    let mut out = Vec::new();
    let top = 2 * half_height - 1;
    for i in spec.l()..spec.r() {
        let mut y0 = -top;
        while y0 + 2 <= top {
            out.push(Face {
                left_column: i,
                y2_bottom: y0,
            });
            y0 += 2;
        }
    }
    out
}

/// All flippable faces of the covering, with the sign the flip would have.
pub fn flippable_faces(c: &Covering) -> Vec<(Face, FlipSign)> {
    let spec = c.spec().clone();
    let mut out = Vec::new();
    for face in faces_in_window(&spec, c.half_height()) {
        let edges = face.boundary_edges(&spec);
        let covered: usize = edges.iter().filter(|(e, _)| c.is_covered(e)).count();
        if covered * 2 != edges.len() {
            continue;
        }
        // A flippable face alternates covered and uncovered edges.
        let alternating = edges
            .iter()
            .zip(edges.iter().cycle().skip(1))
            .all(|((e1, _), (e2, _))| c.is_covered(e1) != c.is_covered(e2));
        if !alternating {
            continue;
        }
        // Sign: after the flip the covered edges are the currently
        // uncovered ones; the flip is positive when those run from odd to
        // even vertices counterclockwise.
        let (_, odd_first) = edges.iter().find(|(e, _)| !c.is_covered(e)).unwrap();
        let sign = if *odd_first {
            FlipSign::Positive
        } else {
            FlipSign::Negative
        };
        out.push((face, sign));
    }
    out
}

/// Apply the flip of `face`, exchanging covered and uncovered boundary
/// edges.
pub fn apply_flip(c: &Covering, face: &Face) -> Result<Covering, GraphError> {
    let spec = c.spec().clone();
    let edges = face.boundary_edges(&spec);
    let covered: usize = edges.iter().filter(|(e, _)| c.is_covered(e)).count();
    if covered * 2 != edges.len() {
        return Err(GraphError::MalformedCovering(format!(
            "face at column {} height {}/2 is not flippable",
            face.left_column, face.y2_bottom
        )));
    }
    let mut set = c.covered_set().clone();
    for (e, _) in &edges {
        if set.contains(e) {
            set.remove(e);
        } else {
            set.insert(*e);
        }
    }
    Covering::from_edges(&spec, c.half_height(), set)
}

/// Breadth-first exploration of the flip graph (both signs) from a start
/// covering; returns every covering reached.
pub fn reachable_coverings(start: &Covering) -> Vec<Covering> {
    let mut seen: HashSet<Covering> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start.clone());
    while let Some(c) = queue.pop_front() {
        for (face, _) in flippable_faces(&c) {
            let next = apply_flip(&c, &face).expect("flippable face");
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen.into_iter().collect()
}

/// BFS over positive flips only, recording the flip distance from the
/// start; on the distributive lattice of pure coverings every positive
/// step raises the rank by one, so BFS depth is the flip distance.
pub fn positive_flip_distances(start: &Covering) -> HashMap<Covering, u32> {
    let mut dist: HashMap<Covering, u32> = HashMap::new();
    let mut queue = VecDeque::new();
    dist.insert(start.clone(), 0);
    queue.push_back(start.clone());
    while let Some(c) = queue.pop_front() {
        let d = dist[&c];
        for (face, sign) in flippable_faces(&c) {
            if sign != FlipSign::Positive {
                continue;
            }
            let next = apply_flip(&c, &face).expect("flippable face");
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    dist
}
