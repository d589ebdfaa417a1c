//! Kasteleyn orientation, windowed Kasteleyn matrices, and verification
//! that the correlation kernel inverts them.
//!
//! The orientation puts `-1` on horizontal edges whose right endpoint is
//! even and `+1` everywhere else; face products then satisfy the mod-4
//! rule on the degree 4, 6 and 8 inner faces. Diagonal edges weigh `x_i`,
//! horizontal edges weigh 1.

use std::collections::HashMap;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Covering, Edge, EdgeKind, Face, GraphError, RygSpec, Vertex};
use crate::kernel::{kernel_entry, KernelContext, KernelError, KernelMethod};

#[derive(Error, Debug)]
pub enum KasteleynError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("Kasteleyn matrix is singular or badly conditioned")]
    Singular,
    #[error("active region is not balanced: {0} odd vs {1} even vertices")]
    Unbalanced(usize, usize),
    #[error("edge {0} lies outside the active region")]
    OutsideRegion(String),
}

/// Orientation sign of an edge.
pub fn eta(e: &Edge) -> f64 {
    if e.kind() == EdgeKind::Horizontal && e.right_end_even() {
        -1.0
    } else {
        1.0
    }
}

/// Kasteleyn entry `eta(e) * weight(e)` for an edge of a numeric spec.
pub fn kasteleyn_entry(ctx: &KernelContext, e: &Edge) -> f64 {
    let w = match e.kind() {
        EdgeKind::Horizontal => 1.0,
        EdgeKind::Diagonal => ctx.weight(e.column()),
    };
    eta(e) * w
}

/// Face product rule: `+1` for degree 2 mod 4, `-1` for degree 0 mod 4.
pub fn verify_orientation(spec: &RygSpec, face: &Face) -> bool {
    let edges = face.boundary_edges(spec);
    let product: f64 = edges.iter().map(|(e, _)| eta(e)).product();
    let expected = if edges.len() % 4 == 2 { 1.0 } else { -1.0 };
    product == expected
}

/// Is the odd vertex matched in pure coverings (the set `M`)?
pub fn in_matched_set(spec: &RygSpec, v: Vertex) -> bool {
    debug_assert!(!v.is_even());
    if v.x == 2 * spec.l() - 1 && v.y2 < 0 {
        return false;
    }
    if v.x == 2 * spec.r() + 1 && v.y2 > 0 {
        return false;
    }
    true
}

/// All graph edges incident to an odd vertex.
pub fn edges_at_odd(spec: &RygSpec, beta: Vertex) -> Vec<Edge> {
    let mut out = Vec::new();
    for ex in [beta.x - 1, beta.x + 1] {
        let col = ex.div_euclid(2);
        if col < spec.l() || col > spec.r() {
            continue;
        }
        out.push(Edge::new(Vertex::new(ex, beta.y2), beta));
        for dy in [-2, 2] {
            let even = Vertex::new(ex, beta.y2 + dy);
            if spec
                .diagonal_neighbor(even)
                .map(|v| v == beta)
                .unwrap_or(false)
            {
                out.push(Edge::new(even, beta));
            }
        }
    }
    out
}

/// The three edges incident to an even vertex.
pub fn edges_at_even(spec: &RygSpec, alpha: Vertex) -> Vec<Edge> {
    let mut out = vec![
        Edge::new(alpha, Vertex::new(alpha.x - 1, alpha.y2)),
        Edge::new(alpha, Vertex::new(alpha.x + 1, alpha.y2)),
    ];
    if let Ok(odd) = spec.diagonal_neighbor(alpha) {
        out.push(Edge::new(alpha, odd));
    }
    out
}

#[derive(Serialize, Debug)]
pub struct RowError {
    pub row: String,
    pub max_abs_error: f64,
}

#[derive(Serialize, Debug)]
pub struct InverseReport {
    pub half_height: i32,
    pub ck_rows: Vec<RowError>,
    pub kc_rows: Vec<RowError>,
    pub max_error: f64,
}

impl InverseReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

/// Verify `(C K)_{alpha', alpha} = delta` over even pairs in the window
/// and `(K C)_{beta, beta'} = delta` over matched odd pairs, using the
/// numeric kernel. Returns per-row maximal errors.
pub fn verify_inverse(
    ctx: &KernelContext,
    half_height: i32,
) -> Result<InverseReport, KasteleynError> {
    let spec = ctx.spec().clone();
    let top = 2 * half_height - 1;
    let rows: Vec<i32> = (-top..=top).step_by(2).collect();
    let evens: Vec<Vertex> = spec
        .column_indices()
        .flat_map(|i| rows.iter().map(move |&y2| Vertex::new(2 * i, y2)))
        .collect();
    let odds: Vec<Vertex> = (spec.l()..=spec.r() + 1)
        .flat_map(|i| rows.iter().map(move |&y2| Vertex::new(2 * i - 1, y2)))
        .filter(|v| in_matched_set(&spec, *v))
        .collect();

    let entry = |alpha: Vertex, beta: Vertex| -> Result<f64, KasteleynError> {
        let v = kernel_entry(ctx, alpha, beta)?;
        Ok(v.re)
    };

    let mut ck_rows = Vec::new();
    let mut max_error: f64 = 0.0;
    for &alpha_p in &evens {
        let mut row_max: f64 = 0.0;
        for &alpha in &evens {
            let mut sum = 0.0;
            for e in edges_at_even(&spec, alpha) {
                sum += entry(alpha_p, e.odd)? * kasteleyn_entry(ctx, &e);
            }
            let want = if alpha_p == alpha { 1.0 } else { 0.0 };
            row_max = row_max.max((sum - want).abs());
        }
        max_error = max_error.max(row_max);
        ck_rows.push(RowError {
            row: alpha_p.to_string(),
            max_abs_error: row_max,
        });
    }

    let mut kc_rows = Vec::new();
    for &beta in &odds {
        let mut row_max: f64 = 0.0;
        for &beta_p in &odds {
            let mut sum = 0.0;
            for e in edges_at_odd(&spec, beta) {
                sum += kasteleyn_entry(ctx, &e) * entry(e.even, beta_p)?;
            }
            let want = if beta == beta_p { 1.0 } else { 0.0 };
            row_max = row_max.max((sum - want).abs());
        }
        max_error = max_error.max(row_max);
        kc_rows.push(RowError {
            row: beta.to_string(),
            max_abs_error: row_max,
        });
    }

    Ok(InverseReport {
        half_height,
        ck_rows,
        kc_rows,
        max_error,
    })
}

/// The finite subgraph on which coverings vary: vertices touched by an
/// edge that is covered in some pure covering and uncovered in another.
pub struct ActiveRegion {
    pub evens: Vec<Vertex>,
    pub odds: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub coverings: Vec<Covering>,
}

/// Compute the active region of a spec with finitely many pure coverings
/// (flip-reachable from the fundamental one within the window).
pub fn active_region(
    spec: &std::sync::Arc<RygSpec>,
    half_height: i32,
) -> Result<ActiveRegion, KasteleynError> {
    let fundamental = Covering::fundamental(spec, half_height);
    let coverings = crate::graph::reachable_coverings(&fundamental);
    let mut counts: HashMap<Edge, usize> = HashMap::new();
    for c in &coverings {
        for e in c.edges() {
            *counts.entry(*e).or_insert(0) += 1;
        }
    }
    let varying: Vec<Edge> = counts
        .iter()
        .filter(|(_, &n)| n < coverings.len())
        .map(|(e, _)| *e)
        .collect();
    let mut evens: Vec<Vertex> = varying.iter().map(|e| e.even).collect();
    let mut odds: Vec<Vertex> = varying.iter().map(|e| e.odd).collect();
    evens.sort();
    evens.dedup();
    odds.sort();
    odds.dedup();
    if evens.len() != odds.len() {
        return Err(KasteleynError::Unbalanced(odds.len(), evens.len()));
    }
    // All graph edges with both ends active, covered or not.
    let mut edges = Vec::new();
    for &alpha in &evens {
        for e in edges_at_even(spec, alpha) {
            if odds.binary_search(&e.odd).is_ok() {
                edges.push(e);
            }
        }
    }
    Ok(ActiveRegion {
        evens,
        odds,
        edges,
        coverings,
    })
}

#[derive(Serialize, Debug)]
pub struct KenyonReport {
    pub edges: usize,
    pub kenyon_probability: f64,
    pub kernel_probability: f64,
    pub exhaustive_probability: f64,
    pub condition_estimate: f64,
}

/// Kenyon's local-statistics formula on the finite active subgraph:
/// `P(E) = prod K(w_i, b_i) * det K^{-1}(b_i, w_j)`, compared against the
/// contour kernel and the exhaustive ratio.
pub fn kenyon_check(
    ctx: &KernelContext,
    region: &ActiveRegion,
    edges: &[Edge],
) -> Result<KenyonReport, KasteleynError> {
    let n = region.odds.len();
    let odd_index: HashMap<Vertex, usize> = region
        .odds
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let even_index: HashMap<Vertex, usize> = region
        .evens
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    // K rows odd (white), columns even (black)
    let mut k = vec![vec![0.0f64; n]; n];
    for e in &region.edges {
        k[odd_index[&e.odd]][even_index[&e.even]] = kasteleyn_entry(ctx, e);
    }
    let (k_inv, condition_estimate) = invert(&k).ok_or(KasteleynError::Singular)?;

    let mut product = 1.0;
    let mut minor = vec![vec![Complex64::new(0.0, 0.0); edges.len()]; edges.len()];
    for e in edges {
        if !odd_index.contains_key(&e.odd) || !even_index.contains_key(&e.even) {
            return Err(KasteleynError::OutsideRegion(e.to_string()));
        }
    }
    for (i, ei) in edges.iter().enumerate() {
        product *= k[odd_index[&ei.odd]][even_index[&ei.even]];
        for (j, ej) in edges.iter().enumerate() {
            // K^{-1} rows even (black), columns odd (white)
            minor[i][j] = Complex64::new(k_inv[even_index[&ei.even]][odd_index[&ej.odd]], 0.0);
        }
    }
    let kenyon_probability = product * crate::kernel::det_complex(&mut minor).re;

    let kernel_probability = crate::kernel::edge_probability(ctx, edges, KernelMethod::Numeric)?;

    let mut num = 0.0;
    let mut den = 0.0;
    for c in &region.coverings {
        let w = crate::series::rat_to_f64(&c.weight_rational()?);
        den += w;
        if edges.iter().all(|e| c.is_covered(e)) {
            num += w;
        }
    }
    Ok(KenyonReport {
        edges: edges.len(),
        kenyon_probability,
        kernel_probability,
        exhaustive_probability: num / den,
        condition_estimate,
    })
}

/// Gauss-Jordan inverse with partial pivoting; returns the inverse and a
/// crude condition estimate `||K||_inf * ||K^{-1}||_inf`.
fn invert(a: &[Vec<f64>]) -> Option<(Vec<Vec<f64>>, f64)> {
    let n = a.len();
    let mut aug: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            aug[i][col]
                .abs()
                .partial_cmp(&aug[j][col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if aug[pivot][col].abs() < 1e-12 {
            return None;
        }
        aug.swap(pivot, col);
        let p = aug[col][col];
        for v in aug[col].iter_mut() {
            *v /= p;
        }
        for row in 0..n {
            if row == col {
                continue;
            }
            let f = aug[row][col];
            if f == 0.0 {
                continue;
            }
            for k in 0..2 * n {
                aug[row][k] -= f * aug[col][k];
            }
        }
    }
    let inv: Vec<Vec<f64>> = aug.iter().map(|r| r[n..].to_vec()).collect();
    let norm = |m: &[Vec<f64>]| -> f64 {
        m.iter()
            .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    };
    let cond = norm(a) * norm(&inv);
    Some((inv, cond))
}
