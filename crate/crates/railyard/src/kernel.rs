//! The determinantal correlation kernel: double contour quadrature and
//! series-coefficient extraction, plus the edge-probability determinant.
//!
//! Entries are integrals of `F_a(z)/F_b(w) * sqrt(zw)/(z-w)` against
//! half-integer powers of `z` and `w`. All half powers combine into
//! integer exponents, so the integrand is single-valued and the circles can
//! be swept with plain trapezoid sums, which converge exponentially.

use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::graph::{Edge, EdgeKind, GraphError, Letter, RygSpec, Sign, Vertex};
use crate::series::LaurentSeries;

#[derive(Error, Debug)]
pub enum KernelError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("convergence condition violated: x_{0} * x_{1} >= 1 with equal letters")]
    NotConvergent(i32, i32),
    #[error("contour window empty between abscissas {0} and {1}")]
    EmptyWindow(i32, i32),
    #[error("quadrature did not stabilize below {0} (last delta {1})")]
    QuadratureUnstable(f64, f64),
    #[error("series tails not summable under cutoff {0} (residual {1})")]
    TailNotSummable(i64, f64),
}

/// A spec with positive numeric weights satisfying the convergence
/// condition `x_i x_j < 1` for equal-letter (+,-) pairs.
pub struct KernelContext {
    spec: Arc<RygSpec>,
    weights: Vec<f64>,
    cache: RefCell<HashMap<(Vertex, Vertex), Complex64>>,
}

impl KernelContext {
    pub fn new(spec: &Arc<RygSpec>) -> Result<KernelContext, KernelError> {
        let weights = spec.numeric_weights()?;
        for b in crate::partition_fn::hook_boxes(spec) {
            if b.same_letter {
                let prod = weights[(b.i - spec.l()) as usize] * weights[(b.j - spec.l()) as usize];
                if prod >= 1.0 {
                    return Err(KernelError::NotConvergent(b.i, b.j));
                }
            }
        }
        Ok(KernelContext {
            spec: spec.clone(),
            weights,
            cache: RefCell::new(HashMap::new()),
        })
    }

    pub fn spec(&self) -> &Arc<RygSpec> {
        &self.spec
    }

    pub fn weight(&self, i: i32) -> f64 {
        self.weights[(i - self.spec.l()) as usize]
    }

    fn columns(&self) -> impl Iterator<Item = (i32, Letter, Sign, f64)> + '_ {
        self.spec
            .column_indices()
            .map(move |i| {
                let t = self.spec.column(i);
                (i, t.letter, t.sign, self.weight(i))
            })
    }
}

/// The meromorphic function `F_k(z)`: products of `(1 + x_i z)` for R+
/// columns left of `k` and `(1 - x_j / z)` for L- columns right of `k`,
/// divided by `(1 - x_i z)` for L+ columns up to `k` and `(1 + x_j / z)`
/// for R- columns from `k` on. All zeros and poles are real.
pub fn f_k(ctx: &KernelContext, k: i32, z: Complex64) -> Complex64 {
    let mut v = Complex64::new(1.0, 0.0);
    for (i, letter, sign, x) in ctx.columns() {
        match (letter, sign) {
            (Letter::R, Sign::Plus) if 2 * i < k => v *= 1.0 + x * z,
            (Letter::L, Sign::Minus) if 2 * i > k => v *= 1.0 - x / z,
            (Letter::L, Sign::Plus) if 2 * i <= k => v /= 1.0 - x * z,
            (Letter::R, Sign::Minus) if 2 * i >= k => v /= 1.0 + x / z,
            _ => {}
        }
    }
    v
}

/// Radius bounds for the contours at abscissa `k`. Infima over empty sets
/// are `+inf`, suprema are `0`.
pub fn rho_bounds(ctx: &KernelContext, k: i32) -> RhoBounds {
    let mut b = RhoBounds {
        r_plus: f64::INFINITY,
        l_minus: 0.0,
        l_plus: f64::INFINITY,
        r_minus: 0.0,
    };
    for (i, letter, sign, x) in ctx.columns() {
        match (letter, sign) {
            (Letter::R, Sign::Plus) if 2 * i < k => b.r_plus = b.r_plus.min(1.0 / x),
            (Letter::L, Sign::Minus) if 2 * i > k => b.l_minus = b.l_minus.max(x),
            (Letter::L, Sign::Plus) if 2 * i <= k => b.l_plus = b.l_plus.min(1.0 / x),
            (Letter::R, Sign::Minus) if 2 * i >= k => b.r_minus = b.r_minus.max(x),
            _ => {}
        }
    }
    b
}

#[derive(Clone, Copy, Debug)]
pub struct RhoBounds {
    /// negative zeros of F sit in `(-inf, -r_plus]`
    pub r_plus: f64,
    /// positive zeros sit in `(0, l_minus]`
    pub l_minus: f64,
    /// positive poles sit in `[l_plus, inf)`
    pub l_plus: f64,
    /// negative poles sit in `[-r_minus, 0)`
    pub r_minus: f64,
}

/// A circle centered on the real axis, described by its real crossings.
#[derive(Clone, Copy, Debug)]
pub struct Circle {
    pub left: f64,
    pub right: f64,
}

impl Circle {
    pub fn center(&self) -> f64 {
        0.5 * (self.left + self.right)
    }

    pub fn radius(&self) -> f64 {
        0.5 * (self.right - self.left)
    }

    pub fn point(&self, theta: f64) -> Complex64 {
        Complex64::new(self.center(), 0.0) + self.radius() * Complex64::from_polar(1.0, theta)
    }

    fn contains(&self, other: &Circle) -> bool {
        self.left < other.left && self.right > other.right
    }
}

/// The two integration contours for a kernel entry.
#[derive(Clone, Copy, Debug)]
pub struct ContourPair {
    pub z_circle: Circle,
    pub w_circle: Circle,
    /// true when `C_z` surrounds `C_w` (the case `alpha_x < beta_x`)
    pub z_outside: bool,
}

/// Build contours for the entry at even abscissa `alpha_x`, odd `beta_x`:
/// `C_z` encircles 0 and the negative poles of `F_{alpha_x}` but no
/// positive pole; `C_w` encircles 0 and the positive zeros of
/// `F_{beta_x}` but no negative zero; they nest according to the
/// abscissa order.
pub fn contour_radii(
    ctx: &KernelContext,
    alpha_x: i32,
    beta_x: i32,
) -> Result<ContourPair, KernelError> {
    let ba = rho_bounds(ctx, alpha_x);
    let bb = rho_bounds(ctx, beta_x);
    let a = ba.r_minus; // C_z must contain [-a, 0]
    let p = ba.l_plus; // C_z must avoid [p, inf)
    let b = bb.l_minus; // C_w must contain [0, b]
    let q = bb.r_plus; // C_w must avoid (-inf, -q]
    let (z_circle, w_circle, z_outside);
    if alpha_x < beta_x {
        // both right crossings in (b, p)
        if b >= p {
            return Err(KernelError::EmptyWindow(alpha_x, beta_x));
        }
        let hi = if p.is_finite() { p.min(b + 2.0) } else { b + 2.0 };
        let w_right = b + (hi - b) / 3.0;
        let z_right = b + 2.0 * (hi - b) / 3.0;
        let w_left = -0.5 * q.min(1.0);
        let z_left = (-a).min(w_left) - (0.5 + 0.5 * a);
        z_circle = Circle {
            left: z_left,
            right: z_right,
        };
        w_circle = Circle {
            left: w_left,
            right: w_right,
        };
        z_outside = true;
        if !z_circle.contains(&w_circle) {
            return Err(KernelError::EmptyWindow(alpha_x, beta_x));
        }
    } else {
        // both left crossings in (-q, -a)
        if a >= q {
            return Err(KernelError::EmptyWindow(alpha_x, beta_x));
        }
        let lo = -if q.is_finite() { q.min(a + 2.0) } else { a + 2.0 };
        let w_left = lo + (-a - lo) / 3.0;
        let z_left = lo + 2.0 * (-a - lo) / 3.0;
        let z_right = 0.5 * p.min(1.0);
        let w_right = b.max(z_right) + 0.5;
        z_circle = Circle {
            left: z_left,
            right: z_right,
        };
        w_circle = Circle {
            left: w_left,
            right: w_right,
        };
        z_outside = false;
        if !w_circle.contains(&z_circle) {
            return Err(KernelError::EmptyWindow(alpha_x, beta_x));
        }
    }
    Ok(ContourPair {
        z_circle,
        w_circle,
        z_outside,
    })
}

fn powi_c(z: Complex64, e: i64) -> Complex64 {
    if e >= 0 {
        z.powu(e as u32)
    } else {
        z.powu((-e) as u32).inv()
    }
}

/// One trapezoid pass of the double contour integral at `m` nodes per
/// circle. The integrand splits as `A(z) B(w) / (z - w)`.
pub fn kernel_entry_numeric(
    ctx: &KernelContext,
    alpha: Vertex,
    beta: Vertex,
    m: usize,
) -> Result<Complex64, KernelError> {
    assert!(alpha.is_even() && !beta.is_even());
    let contours = contour_radii(ctx, alpha.x, beta.x)?;
    // integrand: F_a(z) z^{-alpha_y - 1/2} * w^{beta_y - 1/2} / F_b(w) / (z-w)
    let ae = (-alpha.y2 - 1) / 2;
    let be = (beta.y2 - 1) / 2;
    let mut a_vals = Vec::with_capacity(m);
    let mut b_vals = Vec::with_capacity(m);
    let step = 2.0 * PI / m as f64;
    for j in 0..m {
        let theta = step * (j as f64 + 0.5);
        let z = contours.z_circle.point(theta);
        let dz = Complex64::new(0.0, 1.0) * contours.z_circle.radius()
            * Complex64::from_polar(1.0, theta)
            * step;
        a_vals.push(f_k(ctx, alpha.x, z) * powi_c(z, ae as i64) * dz);
        let w = contours.w_circle.point(theta);
        let dw = Complex64::new(0.0, 1.0) * contours.w_circle.radius()
            * Complex64::from_polar(1.0, theta)
            * step;
        b_vals.push(powi_c(w, be as i64) / f_k(ctx, beta.x, w) * dw);
    }
    let mut total = Complex64::new(0.0, 0.0);
    for j in 0..m {
        let z = contours.z_circle.point(step * (j as f64 + 0.5));
        for k in 0..m {
            let w = contours.w_circle.point(step * (k as f64 + 0.5));
            total += a_vals[j] * b_vals[k] / (z - w);
        }
    }
    // (1/(2 i pi))^2 = -1/(4 pi^2)
    Ok(total * (-1.0 / (4.0 * PI * PI)))
}

/// Adaptive kernel entry: node count doubles until two successive
/// trapezoid estimates agree to `1e-11`, starting at 64 and capped at
/// `2^14`. Entries are memoized per context.
pub fn kernel_entry(ctx: &KernelContext, alpha: Vertex, beta: Vertex) -> Result<Complex64, KernelError> {
    if let Some(v) = ctx.cache.borrow().get(&(alpha, beta)) {
        return Ok(*v);
    }
    let tol = 1e-11;
    let mut m = 64;
    let mut prev = kernel_entry_numeric(ctx, alpha, beta, m)?;
    loop {
        m *= 2;
        let next = kernel_entry_numeric(ctx, alpha, beta, m)?;
        let delta = (next - prev).norm();
        if delta < tol {
            ctx.cache.borrow_mut().insert((alpha, beta), next);
            return Ok(next);
        }
        if m >= 1 << 14 {
            return Err(KernelError::QuadratureUnstable(tol, delta));
        }
        prev = next;
    }
}

/// Laurent expansion of `F_k` (or its reciprocal) on a window, following
/// the prescribed directions: `(1 - x z)^{-1}` in powers of `z`,
/// `(1 + x / z)^{-1}` in powers of `1/z`.
fn laurent_f(ctx: &KernelContext, k: i32, window: i64, reciprocal: bool) -> LaurentSeries {
    let mut s = LaurentSeries::one(-window, window);
    for (i, letter, sign, x) in ctx.columns() {
        match (letter, sign) {
            (Letter::R, Sign::Plus) if 2 * i < k => {
                s = if reciprocal {
                    s.mul_geometric(-x, 1)
                } else {
                    s.mul_binomial(x, 1)
                };
            }
            (Letter::L, Sign::Minus) if 2 * i > k => {
                s = if reciprocal {
                    s.mul_geometric(x, -1)
                } else {
                    s.mul_binomial(-x, -1)
                };
            }
            (Letter::L, Sign::Plus) if 2 * i <= k => {
                s = if reciprocal {
                    s.mul_binomial(-x, 1)
                } else {
                    s.mul_geometric(x, 1)
                };
            }
            (Letter::R, Sign::Minus) if 2 * i >= k => {
                s = if reciprocal {
                    s.mul_binomial(x, -1)
                } else {
                    s.mul_geometric(-x, -1)
                };
            }
            _ => {}
        }
    }
    s
}

/// Kernel entry by coefficient extraction: expand every factor in the
/// prescribed direction and pair the coefficient sequences through the
/// expansion of `sqrt(zw)/(z-w)`. `cutoff` bounds the summation index.
pub fn kernel_entry_series(
    ctx: &KernelContext,
    alpha: Vertex,
    beta: Vertex,
    cutoff: i64,
) -> Result<f64, KernelError> {
    assert!(alpha.is_even() && !beta.is_even());
    // The z-expansions of F_a live on the annulus between the R- suprema
    // and the L+ infima at alpha's abscissa; the w-expansions of 1/F_b on
    // the annulus between the L- suprema and the R+ infima at beta's. If
    // either annulus degenerates the prescription diverges term by term.
    let ba = rho_bounds(ctx, alpha.x);
    let bb = rho_bounds(ctx, beta.x);
    if ba.r_minus >= ba.l_plus || bb.l_minus >= bb.r_plus {
        return Err(KernelError::TailNotSummable(cutoff, f64::INFINITY));
    }
    let window = cutoff + (alpha.y2.unsigned_abs() as i64 + beta.y2.unsigned_abs() as i64) / 2 + 2;
    let fa = laurent_f(ctx, alpha.x, window, false);
    let fb_inv = laurent_f(ctx, beta.x, window, true);
    let mut total = 0.0;
    let mut partial_half = 0.0;
    let mut k2: i64 = 1;
    while k2 <= 2 * cutoff + 1 {
        let term = if alpha.x < beta.x {
            // sum over k of [z^{alpha_y + k}] F_a * [w^{-beta_y - k}] (1/F_b)
            fa.coefficient((alpha.y2 as i64 + k2) / 2) * fb_inv.coefficient((-(beta.y2 as i64) - k2) / 2)
        } else {
            -fa.coefficient((alpha.y2 as i64 - k2) / 2) * fb_inv.coefficient((k2 - beta.y2 as i64) / 2)
        };
        total += term;
        if k2 == cutoff | 1 {
            partial_half = total;
        }
        k2 += 2;
    }
    let residual = (total - partial_half).abs();
    if residual > 1e-10 {
        return Err(KernelError::TailNotSummable(cutoff, residual));
    }
    Ok(total)
}

pub enum KernelMethod {
    Numeric,
    /// coefficient extraction with the given summation cutoff
    Series(i64),
}

/// Probability that every edge of `E` is covered:
/// `(-1)^{H(E)} x^n det(C_{alpha_i, beta_j})`, where `H(E)` counts
/// horizontal edges whose right endpoint is even and `n` counts diagonal
/// edges per column.
pub fn edge_probability(
    ctx: &KernelContext,
    edges: &[Edge],
    method: KernelMethod,
) -> Result<f64, KernelError> {
    // duplicate edges impose one constraint; distinct edges sharing a
    // vertex exclude each other
    let mut edges: Vec<Edge> = edges.to_vec();
    edges.sort();
    edges.dedup();
    if edges.is_empty() {
        return Ok(1.0);
    }
    for (i, a) in edges.iter().enumerate() {
        for b in edges.iter().skip(i + 1) {
            if a.even == b.even || a.odd == b.odd {
                return Ok(0.0);
            }
        }
    }
    let edges = &edges[..];
    let mut sign = 1.0;
    let mut prefactor = 1.0;
    for e in edges {
        match e.kind() {
            EdgeKind::Horizontal => {
                if e.right_end_even() {
                    sign = -sign;
                }
            }
            EdgeKind::Diagonal => {
                prefactor *= ctx.weight(e.column());
            }
        }
    }
    let s = edges.len();
    let mut matrix = vec![vec![Complex64::new(0.0, 0.0); s]; s];
    for (i, ei) in edges.iter().enumerate() {
        for (j, ej) in edges.iter().enumerate() {
            matrix[i][j] = match method {
                KernelMethod::Numeric => kernel_entry(ctx, ei.even, ej.odd)?,
                KernelMethod::Series(cutoff) => {
                    Complex64::new(kernel_entry_series(ctx, ei.even, ej.odd, cutoff)?, 0.0)
                }
            };
        }
    }
    let det = det_complex(&mut matrix);
    debug_assert!(det.im.abs() < 1e-9, "kernel determinant has imaginary part");
    Ok(sign * prefactor * det.re)
}

/// LU determinant with partial pivoting; sizes are tiny.
pub fn det_complex(a: &mut [Vec<Complex64>]) -> Complex64 {
    let n = a.len();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                a[i][col]
                    .norm()
                    .partial_cmp(&a[j][col].norm())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap();
        if a[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            for k in col..n {
                let sub = factor * a[col][k];
                a[row][k] -= sub;
            }
        }
    }
    det
}
