//! Dense symmetric eigensolvers.
//!
//! The production path reduces the matrix to tridiagonal form with Householder
//! reflections and runs implicit-shift QL iterations on the tridiagonal.
//! Eigenvalues alone cost one reduction; a few eigenpairs are then rebuilt by
//! inverse iteration on the tridiagonal and mapped back through the stored
//! reflectors, and their residuals against the original matrix are checked.
//!
//! Cyclic Jacobi is kept as an independent second route for small matrices.

use crate::error::{Error, Result};

use super::{Spectrum, SymMatrix};

/// Relative residual tolerance used when none is given.
pub const DEFAULT_TOL: f64 = 1e-10;

const QL_MAX_SWEEPS: usize = 60;
const JACOBI_MAX_SWEEPS: usize = 100;

struct Reflector {
    beta: f64,
    v: Vec<f64>,
}

struct Tridiagonal {
    diag: Vec<f64>,
    /// `off[i]` couples `i` and `i + 1`.
    off: Vec<f64>,
    /// Reflector `k` acts on coordinates `k + 1..n`.
    reflectors: Vec<Reflector>,
}

/// `(v, beta, alpha)` with `(I − beta v vᵀ) x = alpha e₁` and `v[0] = 1`.
fn householder(x: &[f64]) -> (Vec<f64>, f64, f64) {
    let x0 = x[0];
    let sigma: f64 = x[1..].iter().map(|t| t * t).sum();
    let mut v = x.to_vec();
    v[0] = 1.0;
    if sigma == 0.0 {
        v[1..].iter_mut().for_each(|t| *t = 0.0);
        return (v, 0.0, x0);
    }
    let mu = (x0 * x0 + sigma).sqrt();
    let v0 = if x0 <= 0.0 { x0 - mu } else { -sigma / (x0 + mu) };
    let beta = 2.0 * v0 * v0 / (sigma + v0 * v0);
    v[1..].iter_mut().for_each(|t| *t /= v0);
    (v, beta, mu)
}

fn tridiagonalize(m: &SymMatrix) -> Tridiagonal {
    let n = m.n();
    let mut a = m.data().to_vec();
    let mut off = vec![0.0; n.saturating_sub(1)];
    let mut reflectors = Vec::with_capacity(n.saturating_sub(2));
    let mut p = vec![0.0; n];
    let mut w = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        let size = n - k - 1;
        let (v, beta, alpha) = householder(&a[k * n + k + 1..k * n + n]);
        off[k] = alpha;
        if beta != 0.0 {
            // p = beta · A₂₂ v
            for i in 0..size {
                let row = &a[(k + 1 + i) * n + k + 1..(k + 2 + i) * n];
                p[i] = beta * dot(row, &v);
            }
            let kappa = 0.5 * beta * dot(&p[..size], &v);
            for i in 0..size {
                w[i] = p[i] - kappa * v[i];
            }
            // A₂₂ −= v wᵀ + w vᵀ
            for i in 0..size {
                let (vi, wi) = (v[i], w[i]);
                let row = &mut a[(k + 1 + i) * n + k + 1..(k + 2 + i) * n];
                for ((r, &vj), &wj) in row.iter_mut().zip(&v).zip(&w[..size]) {
                    *r -= vi * wj + wi * vj;
                }
            }
        }
        reflectors.push(Reflector { beta, v });
    }
    if n >= 2 {
        off[n - 2] = a[(n - 2) * n + n - 1];
    }
    let diag = (0..n).map(|i| a[i * n + i]).collect();
    Tridiagonal {
        diag,
        off,
        reflectors,
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    // four accumulators let the loop vectorize without reassociation
    let mut acc = [0.0f64; 4];
    let chunks = a.len() / 4;
    for c in 0..chunks {
        for l in 0..4 {
            acc[l] += a[4 * c + l] * b[4 * c + l];
        }
    }
    let mut s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for i in 4 * chunks..a.len() {
        s += a[i] * b[i];
    }
    s
}

impl Tridiagonal {
    /// `Q z` for `Q = H₀ H₁ ⋯`.
    fn back_transform(&self, z: &mut [f64]) {
        for (k, r) in self.reflectors.iter().enumerate().rev() {
            if r.beta == 0.0 {
                continue;
            }
            let tail = &mut z[k + 1..];
            let s = r.beta * dot(tail, &r.v);
            for (t, &vi) in tail.iter_mut().zip(&r.v) {
                *t -= s * vi;
            }
        }
    }

    fn explicit_q(&self) -> Vec<f64> {
        let n = self.diag.len();
        let mut q = vec![0.0; n * n];
        let mut col = vec![0.0; n];
        for c in 0..n {
            col.iter_mut().for_each(|t| *t = 0.0);
            col[c] = 1.0;
            self.back_transform(&mut col);
            for r in 0..n {
                q[r * n + c] = col[r];
            }
        }
        q
    }

    /// Eigenvector of the tridiagonal for the eigenvalue `lambda` by inverse
    /// iteration with a pivoted LU factorization of `T − λI`.
    fn inverse_iteration(&self, lambda: f64, scale: f64) -> Vec<f64> {
        let n = self.diag.len();
        if n == 1 {
            return vec![1.0];
        }
        let tiny = f64::EPSILON * scale.max(f64::MIN_POSITIVE);
        let mut dl = self.off.clone();
        let mut d: Vec<f64> = self.diag.iter().map(|x| x - lambda).collect();
        let mut du = self.off.clone();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n - 1];
        for i in 0..n - 1 {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                swapped[i] = true;
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
            }
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        // deterministic start with no special alignment to the basis
        let mut b: Vec<f64> = (0..n).map(|i| 1.0 + ((i * 7919) % 101) as f64 / 101.0).collect();
        for _ in 0..3 {
            for i in 0..n - 1 {
                if swapped[i] {
                    let temp = b[i];
                    b[i] = b[i + 1];
                    b[i + 1] = temp - dl[i] * b[i];
                } else {
                    b[i + 1] -= dl[i] * b[i];
                }
            }
            b[n - 1] /= d[n - 1];
            b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
            for i in (0..n.saturating_sub(2)).rev() {
                b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
            }
            let norm = dot(&b, &b).sqrt();
            if norm == 0.0 || !norm.is_finite() {
                break;
            }
            b.iter_mut().for_each(|t| *t /= norm);
        }
        b
    }
}

/// Implicit-shift QL on a symmetric tridiagonal. `z`, when given, is an
/// `n × n` row-major matrix whose columns are rotated along.
fn tridiagonal_ql(d: &mut [f64], off: &[f64], mut z: Option<&mut [f64]>) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    let mut e = off.to_vec();
    e.push(0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > QL_MAX_SWEEPS {
                return Err(Error::NoConvergence(n));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..n {
                        let f = z[k * n + i + 1];
                        z[k * n + i + 1] = s * z[k * n + i] + c * f;
                        z[k * n + i] = c * z[k * n + i] - s * f;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Full sorted spectrum with residual spot checks on the smallest, middle and
/// largest eigenpairs: `‖Mv − λv‖ ≤ tol · ‖M‖_∞` for unit `v`.
pub fn eigenvalues(m: &SymMatrix, tol: f64) -> Result<Spectrum> {
    let n = m.n();
    let norm = m.norm_inf();
    let bound = tol * norm.max(f64::MIN_POSITIVE);
    if n == 0 || norm == 0.0 {
        return Ok(Spectrum::new(vec![0.0; n], bound));
    }
    let t = tridiagonalize(m);
    let mut values = t.diag.clone();
    tridiagonal_ql(&mut values, &t.off, None)?;
    values.sort_by(f64::total_cmp);

    let mut checks = vec![0, n / 2, n - 1];
    checks.dedup();
    for &i in &checks {
        let lambda = values[i];
        let mut v = t.inverse_iteration(lambda, norm);
        t.back_transform(&mut v);
        let residual = residual(m, lambda, &v);
        if residual.is_nan() || residual > bound {
            return Err(Error::Residual { n, residual, bound });
        }
    }
    Ok(Spectrum::new(values, bound))
}

/// `‖Mv − λv‖₂ / ‖v‖₂`.
pub fn residual(m: &SymMatrix, lambda: f64, v: &[f64]) -> f64 {
    let n = m.n();
    let norm = dot(v, v).sqrt();
    let mut sum = 0.0;
    for i in 0..n {
        let r = dot(m.row(i), v) - lambda * v[i];
        sum += r * r;
    }
    sum.sqrt() / norm
}

/// Eigenvalues ascending with unit eigenvectors (`vectors[i]` belongs to
/// `values[i]`), by tridiagonal reduction and QL with accumulated rotations.
pub fn eigen_decomposition(m: &SymMatrix) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = m.n();
    let t = tridiagonalize(m);
    let mut z = t.explicit_q();
    let mut values = t.diag.clone();
    tridiagonal_ql(&mut values, &t.off, Some(&mut z))?;
    Ok(sorted_pairs(n, values, &z))
}

fn sorted_pairs(n: usize, values: Vec<f64>, z: &[f64]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let vals = order.iter().map(|&i| values[i]).collect();
    let vecs = order
        .iter()
        .map(|&c| (0..n).map(|r| z[r * n + c]).collect())
        .collect();
    (vals, vecs)
}

/// Cyclic Jacobi rotations until the off-diagonal mass vanishes; eigenvalues
/// ascending with unit eigenvectors.
pub fn jacobi(m: &SymMatrix) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = m.n();
    let mut a = m.data().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let total: f64 = a.iter().map(|x| x * x).sum();
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum();
        if off == 0.0 || off <= 1e-36 * total {
            let values = (0..n).map(|i| a[i * n + i]).collect();
            return Ok(sorted_pairs(n, values, &v));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let (app, aqq) = (a[p * n + p].abs(), a[q * n + q].abs());
                let g = 100.0 * apq.abs();
                if app + g == app && aqq + g == aqq {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    Err(Error::NoConvergence(n))
}
