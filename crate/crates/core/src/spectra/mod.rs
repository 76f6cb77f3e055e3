//! Laplacian-type operators, their spectra and spectral step functions.

mod chain;
pub mod eigen;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use chain::{chain_complex, dirac, hodge_block, ChainComplex, IntMatrix};
pub use eigen::{eigen_decomposition, eigenvalues, jacobi, DEFAULT_TOL};

/// Dense symmetric matrix, row-major with both triangles stored.
#[derive(Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Rejects data that is not exactly symmetric.
    pub fn from_data(n: usize, data: Vec<f64>) -> Result<Self> {
        assert_eq!(data.len(), n * n, "data length must be n²");
        for i in 0..n {
            for j in 0..i {
                if data[i * n + j] != data[j * n + i] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        Ok(SymMatrix { n, data })
    }

    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Σ|M_ij − N_ij| over all entries.
    pub fn entrywise_l1(&self, other: &SymMatrix) -> f64 {
        assert_eq!(self.n, other.n, "order mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).abs()).sum()
    }
}

impl std::fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "SymMatrix {}", self.n)?;
        for i in 0..self.n {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

pub fn kirchhoff_int(g: &Graph) -> IntMatrix {
    let n = g.n();
    let mut m = IntMatrix::zeros(n, n);
    for v in 0..n {
        m.set(v, v, g.degree(v) as i64);
        for &w in g.neighbors(v) {
            m.set(v, w, -1);
        }
    }
    m
}

/// `L = B − A`.
pub fn kirchhoff(g: &Graph) -> SymMatrix {
    kirchhoff_int(g).to_sym()
}

pub fn adjacency(g: &Graph) -> SymMatrix {
    let n = g.n();
    let mut m = SymMatrix::zeros(n);
    for v in 0..n {
        for &w in g.neighbors(v) {
            m.data[v * n + w] = 1.0;
        }
    }
    m
}

/// `B^{-1/2} A B^{-1/2}`, isospectral to the random walk operator `A B^{-1}`.
pub fn normalized_laplacian(g: &Graph) -> Result<SymMatrix> {
    let n = g.n();
    let scale: Vec<f64> = (0..n)
        .map(|v| match g.degree(v) {
            0 => Err(Error::IsolatedVertex(v)),
            d => Ok(1.0 / (d as f64).sqrt()),
        })
        .collect::<Result<_>>()?;
    let mut m = SymMatrix::zeros(n);
    for v in 0..n {
        for &w in g.neighbors(v) {
            // both triangles from the same product keeps the matrix exactly symmetric
            let (a, b) = (v.min(w), v.max(w));
            m.data[v * n + w] = scale[a] * scale[b];
        }
    }
    Ok(m)
}

/// Sorted eigenvalues together with the absolute residual bound they were
/// checked against.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    tol: f64,
}

impl Spectrum {
    /// Sorts `values` ascending.
    pub fn new(mut values: Vec<f64>, tol: f64) -> Self {
        values.sort_by(f64::total_cmp);
        Spectrum { values, tol }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Eigenvalues within `eps` of zero.
    pub fn zero_multiplicity(&self, eps: f64) -> usize {
        self.values.iter().filter(|x| x.abs() <= eps).count()
    }

    pub fn positive(&self, eps: f64) -> Vec<f64> {
        self.values.iter().copied().filter(|&x| x > eps).collect()
    }
}

/// Sorted Kirchhoff spectrum at the default tolerance.
pub fn kirchhoff_spectrum(g: &Graph) -> Result<Spectrum> {
    kirchhoff_spectrum_tol(g, DEFAULT_TOL)
}

pub fn kirchhoff_spectrum_tol(g: &Graph, tol: f64) -> Result<Spectrum> {
    eigenvalues(&kirchhoff(g), tol)
}

/// The step function `x ↦ λ_{⌈nx⌉}` (1-based, clamped so `F(0) = λ₁`).
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralFunction {
    values: Vec<f64>,
}

pub fn spectral_function(s: &Spectrum) -> SpectralFunction {
    SpectralFunction {
        values: s.values.clone(),
    }
}

impl SpectralFunction {
    /// Sorts `values` ascending.
    pub fn from_values(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        SpectralFunction { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index of the step covering `x`; grid points within rounding snap to
    /// the exact grid.
    fn step(&self, x: f64) -> usize {
        let n = self.values.len();
        let t = n as f64 * x;
        let r = t.round();
        let k = if (t - r).abs() <= 1e-9 * n as f64 { r } else { t.ceil() };
        (k.max(1.0) as usize).min(n) - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.values[self.step(x)]
    }

    /// `∫₀¹ F = Σλ / n`.
    pub fn norm_l1(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// `∫₀^{k/n} F`.
    pub fn partial_integral(&self, k: usize) -> f64 {
        self.values[..k].iter().sum::<f64>() / self.values.len() as f64
    }

    /// Exact L¹ distance between two step functions on the merged grid.
    pub fn l1_distance(&self, other: &SpectralFunction) -> f64 {
        let (n, m) = (self.values.len() as u128, other.values.len() as u128);
        let scale = (n * m) as f64;
        let (mut i, mut j, mut pos, mut acc) = (0u128, 0u128, 0u128, 0.0);
        while i < n && j < m {
            let (next_f, next_g) = ((i + 1) * m, (j + 1) * n);
            let next = next_f.min(next_g);
            let diff = (self.values[i as usize] - other.values[j as usize]).abs();
            acc += diff * (next - pos) as f64;
            pos = next;
            if next_f == next {
                i += 1;
            }
            if next_g == next {
                j += 1;
            }
        }
        acc / scale
    }

    /// Lebesgue measure of `{x : F(x) ≤ G(x) + eps}` on [0, 1].
    pub fn measure_le(&self, other: &SpectralFunction, eps: f64) -> f64 {
        let (n, m) = (self.values.len() as u128, other.values.len() as u128);
        let (mut i, mut j, mut pos, mut acc) = (0u128, 0u128, 0u128, 0u128);
        while i < n && j < m {
            let (next_f, next_g) = ((i + 1) * m, (j + 1) * n);
            let next = next_f.min(next_g);
            if self.values[i as usize] <= other.values[j as usize] + eps {
                acc += next - pos;
            }
            pos = next;
            if next_f == next {
                i += 1;
            }
            if next_g == next {
                j += 1;
            }
        }
        acc as f64 / (n * m) as f64
    }

    /// L¹ distance to a continuous function on [0, 1] by adaptive quadrature
    /// on each step, split at sign changes.
    pub fn l1_distance_to(&self, f: impl Fn(f64) -> f64) -> f64 {
        let n = self.values.len();
        let mut total = 0.0;
        for (i, &c) in self.values.iter().enumerate() {
            let (a, b) = (i as f64 / n as f64, (i + 1) as f64 / n as f64);
            let h = |x: f64| c - f(x);
            let mut cuts = vec![a];
            const SAMPLES: usize = 16;
            let mut prev = (a, h(a));
            for s in 1..=SAMPLES {
                let x = a + (b - a) * s as f64 / SAMPLES as f64;
                let y = h(x);
                if prev.1 != 0.0 && y != 0.0 && (prev.1 < 0.0) != (y < 0.0) {
                    cuts.push(bisect(&h, prev.0, x));
                }
                prev = (x, y);
            }
            cuts.push(b);
            let scale = c.abs().max(1.0) * (b - a);
            for w in cuts.windows(2) {
                total += adaptive_simpson(&|x| h(x).abs(), w[0], w[1], 1e-11 * scale, 40);
            }
        }
        total
    }

    /// `sup |F − f|` over `[a, b]`, using monotonicity of `f` on each step.
    pub fn sup_distance_on(&self, f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let n = self.values.len();
        let mut best: f64 = 0.0;
        for (i, &c) in self.values.iter().enumerate() {
            let lo = (i as f64 / n as f64).max(a);
            let hi = ((i + 1) as f64 / n as f64).min(b);
            if lo > hi {
                continue;
            }
            best = best.max((c - f(lo)).abs()).max((c - f(hi)).abs());
        }
        best
    }

    /// `(x, F(x))` on `points` equally spaced samples of [0, 1].
    pub fn sample(&self, points: usize) -> Vec<(f64, f64)> {
        let last = points.saturating_sub(1).max(1) as f64;
        (0..points)
            .map(|i| {
                let x = i as f64 / last;
                (x, self.eval(x))
            })
            .collect()
    }
}

pub fn l1_distance(f: &SpectralFunction, g: &SpectralFunction) -> f64 {
    f.l1_distance(g)
}

fn bisect(h: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let neg = h(lo) < 0.0;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if (h(mid) < 0.0) == neg {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, depth)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// `F₁(x) = 4 sin²(πx/2)`, the limit for one-dimensional graphs.
pub fn limit_d1(x: f64) -> f64 {
    let s = (std::f64::consts::FRAC_PI_2 * x).sin();
    4.0 * s * s
}

/// Density of states `1 / (π √(x(4−x)))` on (0, 4), zero outside.
pub fn dos_d1(x: f64) -> f64 {
    if x <= 0.0 || x >= 4.0 {
        return 0.0;
    }
    1.0 / (std::f64::consts::PI * (x * (4.0 - x)).sqrt())
}

/// Integrated density `(2/π) arcsin(√x / 2)`, clamped to [0, 1].
pub fn ids_d1(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 4.0 {
        return 1.0;
    }
    std::f64::consts::FRAC_2_PI * (x.sqrt() / 2.0).asin()
}

/// The quadratic map `z(4 − z)` conjugating `F₁(x)` to `F₁(2x)`.
pub fn doubling_map(z: f64) -> f64 {
    z * (4.0 - z)
}

/// Kirchhoff spectrum of the cycle `C_n`: `4 sin²(πk/n)` sorted.
pub fn cycle_spectrum(n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n)
        .map(|k| {
            let s = (std::f64::consts::PI * k as f64 / n as f64).sin();
            4.0 * s * s
        })
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Empirical distribution function of a spectrum.
#[derive(Clone, Debug)]
pub struct IntegratedDensity {
    values: Vec<f64>,
}

pub fn integrated_density(s: &Spectrum) -> IntegratedDensity {
    IntegratedDensity {
        values: s.values.clone(),
    }
}

impl IntegratedDensity {
    /// Fraction of eigenvalues `≤ e`.
    pub fn eval(&self, e: f64) -> f64 {
        let below = self.values.partition_point(|&x| x <= e);
        below as f64 / self.values.len() as f64
    }
}

/// A jump of the spectral function between consecutive eigenvalues.
#[derive(Clone, Debug, PartialEq)]
pub struct Gap {
    /// Eigenvalues at or below the gap.
    pub below: usize,
    /// `below / n`.
    pub position: f64,
    pub lower: f64,
    pub upper: f64,
    pub jump: f64,
}

/// The `top` largest jumps, by size descending and then by position.
pub fn gaps(s: &Spectrum, top: usize) -> Vec<Gap> {
    let v = &s.values;
    let n = v.len();
    let mut all: Vec<Gap> = (1..n)
        .map(|k| Gap {
            below: k,
            position: k as f64 / n as f64,
            lower: v[k - 1],
            upper: v[k],
            jump: v[k] - v[k - 1],
        })
        .collect();
    all.sort_by(|a, b| b.jump.total_cmp(&a.jump).then(a.below.cmp(&b.below)));
    all.truncate(top);
    all
}

/// Partial integrals of the sorted degree function against those of the
/// spectral function at each grid point `k/n`.
#[derive(Clone, Debug)]
pub struct SchurReport {
    pub degrees: Vec<f64>,
    pub spectrum: Vec<f64>,
    /// `∫₀^{k/n}` of the degree function, `k = 1..n`.
    pub degree_partials: Vec<f64>,
    pub spectral_partials: Vec<f64>,
    /// Largest violation `F̃ − H̃` (≤ 0 when the inequality holds).
    pub worst: f64,
    /// `|H̃(1) − F̃(1)|`.
    pub endpoint_gap: f64,
    pub holds: bool,
}

pub fn schur_from(degrees: &[f64], spectrum: &[f64], tol: f64) -> SchurReport {
    let n = degrees.len();
    assert_eq!(n, spectrum.len(), "length mismatch");
    let mut d = degrees.to_vec();
    d.sort_by(f64::total_cmp);
    let mut s = spectrum.to_vec();
    s.sort_by(f64::total_cmp);
    let partial = |v: &[f64]| {
        v.iter()
            .scan(0.0, |acc, x| {
                *acc += x;
                Some(*acc / n as f64)
            })
            .collect::<Vec<f64>>()
    };
    let (hp, fp) = (partial(&d), partial(&s));
    let worst = hp.iter().zip(&fp).map(|(h, f)| f - h).fold(f64::NEG_INFINITY, f64::max);
    let endpoint_gap = match (hp.last(), fp.last()) {
        (Some(h), Some(f)) => (h - f).abs(),
        _ => 0.0,
    };
    SchurReport {
        degrees: d,
        spectrum: s,
        degree_partials: hp,
        spectral_partials: fp,
        worst,
        endpoint_gap,
        holds: worst <= tol && endpoint_gap <= tol,
    }
}

/// Majorization of the Kirchhoff diagonal by the Kirchhoff spectrum.
pub fn schur_check(g: &Graph, tol: f64) -> Result<SchurReport> {
    let s = kirchhoff_spectrum(g)?;
    let degrees: Vec<f64> = g.degrees().into_iter().map(|d| d as f64).collect();
    Ok(schur_from(&degrees, s.values(), tol))
}

/// `Σ λ^{-s}` over the eigenvalues above the spectrum's tolerance.
pub fn dirac_zeta(spectrum: &Spectrum, s: Complex64) -> Complex64 {
    spectrum
        .values
        .iter()
        .filter(|&&x| x > spectrum.tol)
        .map(|&x| (-s * x.ln()).exp())
        .sum()
}

/// Spectra of the Hodge blocks `L_0, L_1, …`.
pub fn hodge_spectra(g: &Graph, tol: f64) -> Result<Vec<Spectrum>> {
    let c = chain_complex(g);
    (0..c.levels().len())
        .map(|k| eigenvalues(&c.hodge_int(k).to_sym(), tol))
        .collect()
}

/// `Σ_k (−1)^k tr exp(−t L_k)`.
pub fn supertrace(blocks: &[Spectrum], t: f64) -> f64 {
    blocks
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let tr: f64 = s.values.iter().map(|l| (-t * l).exp()).sum();
            if k % 2 == 0 { tr } else { -tr }
        })
        .sum()
}

/// Largest mismatch between the sorted nonzero eigenvalues of the even and
/// odd Hodge blocks; infinite when the counts differ.
pub fn supersymmetry_defect(blocks: &[Spectrum], eps: f64) -> f64 {
    let collect = |parity: usize| {
        let mut v: Vec<f64> = blocks
            .iter()
            .enumerate()
            .filter(|(k, _)| k % 2 == parity)
            .flat_map(|(_, s)| s.positive(eps))
            .collect();
        v.sort_by(f64::total_cmp);
        v
    };
    let (even, odd) = (collect(0), collect(1));
    if even.len() != odd.len() {
        return f64::INFINITY;
    }
    even.iter().zip(&odd).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::euler_characteristic;
    use crate::generators::Generator;
    use crate::graph::edge_distance;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn gen(s: &str) -> Graph {
        s.parse::<Generator>().unwrap().build().unwrap()
    }

    fn close(a: &[f64], b: &[f64], eps: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < eps)
    }

    #[test]
    fn operator_entries() {
        assert_eq!(kirchhoff(&gen("K2")).data(), &[1.0, -1.0, -1.0, 1.0]);
        let c4 = kirchhoff(&gen("C4"));
        assert!((0..4).all(|i| c4.get(i, i) == 2.0));
        let a = eigenvalues(&adjacency(&gen("K3")), DEFAULT_TOL).unwrap();
        assert!(close(a.values(), &[-1.0, -1.0, 2.0], 1e-12));
    }

    #[test]
    fn normalized_form() {
        assert!(normalized_laplacian(&gen("S3")).is_ok());
        let mut g = gen("K3");
        g = g.disjoint_union(1);
        let isolated = Graph::new(3, &[(0, 1)]).unwrap();
        assert!(matches!(normalized_laplacian(&isolated), Err(Error::IsolatedVertex(2))));
        // random walk spectrum of K3 is {1, −1/2, −1/2}
        let s = eigenvalues(&normalized_laplacian(&g).unwrap(), DEFAULT_TOL).unwrap();
        assert!(close(s.values(), &[-0.5, -0.5, 1.0], 1e-12));
        // isospectral to A B^{-1} on a non-regular graph
        let star = gen("S3");
        let s = eigenvalues(&normalized_laplacian(&star).unwrap(), DEFAULT_TOL).unwrap();
        let r = 1.0f64;
        assert!(close(s.values(), &[-r, 0.0, 0.0, r], 1e-12));
    }

    #[test]
    fn not_symmetric() {
        assert!(matches!(
            SymMatrix::from_data(2, vec![0.0, 1.0, 2.0, 0.0]),
            Err(Error::NotSymmetric(1, 0))
        ));
    }

    #[test]
    fn kirchhoff_examples() {
        let c4 = kirchhoff_spectrum(&gen("C4")).unwrap();
        assert!(close(c4.values(), &[0.0, 2.0, 2.0, 4.0], 1e-12));
        let k4 = kirchhoff_spectrum(&gen("K4")).unwrap();
        assert!(close(k4.values(), &[0.0, 4.0, 4.0, 4.0], 1e-12));
        for n in [3, 5, 12, 31] {
            let s = kirchhoff_spectrum(&gen(&format!("C{n}"))).unwrap();
            assert!(close(s.values(), &cycle_spectrum(n), 1e-11));
        }
    }

    #[test]
    fn corpus_spectral_invariants() {
        for spec in ["K5", "C7", "W6", "octahedron", "icosahedron", "ER:n=10,p=0.3,seed=1", "ER:n=9,p=0.2,seed=4"] {
            let g = gen(spec);
            let m = kirchhoff(&g);
            let s = eigenvalues(&m, DEFAULT_TOL).unwrap();
            let n = g.n() as f64;
            assert!((s.sum() - m.trace()).abs() <= n * s.tol(), "{spec}");
            assert!(s.values()[0].abs() <= s.tol() && s.values()[0] >= -s.tol());
            assert_eq!(s.zero_multiplicity(1e-8), g.component_count(), "{spec}");
            let f = spectral_function(&s);
            assert!((f.norm_l1() - 2.0 * g.edge_count() as f64 / n).abs() < 1e-12);
        }
    }

    #[test]
    fn step_function_evaluation() {
        let f = SpectralFunction::from_values(vec![4.0, 0.0, 2.0, 2.0]);
        assert_eq!(f.eval(1.0), 4.0);
        assert_eq!(f.eval(0.0), 0.0);
        assert_eq!(f.eval(0.25), 0.0);
        assert_eq!(f.eval(0.26), 2.0);
        assert_eq!(f.eval(0.75), 2.0);
        assert_eq!(f.eval(0.7500001), 4.0);
        assert_eq!(f.norm_l1(), 2.0);
        let third = SpectralFunction::from_values(vec![0.0, 1.0, 2.0]);
        assert_eq!(third.eval(1.0 / 3.0), 0.0);
        assert_eq!(third.eval(2.0 / 3.0), 1.0);
    }

    #[test]
    fn disjoint_copies_share_spectral_function() {
        let h = gen("W6");
        let f = spectral_function(&kirchhoff_spectrum(&h).unwrap());
        let g = spectral_function(&kirchhoff_spectrum(&h.disjoint_union(3)).unwrap());
        assert!(f.l1_distance(&g) < 1e-12);
    }

    #[test]
    fn l1_between_steps() {
        let f = SpectralFunction::from_values(vec![0.0, 2.0]);
        let g = SpectralFunction::from_values(vec![1.0, 1.0, 1.0]);
        // |0−1|·1/2 + |2−1|·1/2
        assert!((f.l1_distance(&g) - 1.0).abs() < 1e-15);
        assert_eq!(f.l1_distance(&f), 0.0);
        let h = SpectralFunction::from_values(vec![0.0, 3.0, 3.0]);
        // pieces [0,1/3):0, [1/3,1/2):2−... f=0,h=3 → 3/6, [1/2,1): |2−3|/2
        assert!((f.l1_distance(&h) - (0.5 + 0.5)).abs() < 1e-15);
        assert!((f.l1_distance(&h) - h.l1_distance(&f)).abs() < 1e-15);
    }

    #[test]
    fn measure_of_comparison() {
        let f = SpectralFunction::from_values(vec![0.0, 2.0]);
        let g = SpectralFunction::from_values(vec![1.0, 1.0, 3.0]);
        // f ≤ g on [0, 1/2) and [2/3, 1]
        assert!((f.measure_le(&g, 0.0) - (0.5 + 1.0 / 3.0)).abs() < 1e-15);
        assert_eq!(f.measure_le(&f, 0.0), 1.0);
    }

    #[test]
    fn l1_to_closed_form() {
        let one = SpectralFunction::from_values(vec![1.0]);
        assert!((one.l1_distance_to(|x| x) - 0.5).abs() < 1e-10);
        let zero = SpectralFunction::from_values(vec![0.0]);
        assert!((zero.l1_distance_to(limit_d1) - 2.0).abs() < 1e-10);
        let f = spectral_function(&kirchhoff_spectrum(&gen("C128")).unwrap());
        let d = f.l1_distance_to(limit_d1);
        assert!(d < 0.1 && d > 0.0, "{d}");
    }

    #[test]
    fn lidskii_last() {
        for seed in 0..6 {
            let g = gen(&format!("ER:n=12,p=0.4,seed={seed}"));
            let h = gen(&format!("ER:n=12,p=0.5,seed={}", seed + 100));
            let (lg, lh) = (kirchhoff(&g), kirchhoff(&h));
            let (sg, sh) = (
                eigenvalues(&lg, DEFAULT_TOL).unwrap(),
                eigenvalues(&lh, DEFAULT_TOL).unwrap(),
            );
            let dist: f64 = sg.values().iter().zip(sh.values()).map(|(a, b)| (a - b).abs()).sum();
            let entry = lg.entrywise_l1(&lh);
            assert!(dist <= entry + 1e-9);
            assert!(entry <= 4.0 * edge_distance(&g, &h).unwrap() as f64);
        }
    }

    #[test]
    fn d1_closed_forms() {
        assert!((limit_d1(0.5) - 2.0).abs() < 1e-15);
        assert_eq!(ids_d1(4.0), 1.0);
        assert_eq!(ids_d1(0.0), 0.0);
        for i in 1..200 {
            let x = i as f64 / 200.0;
            assert!((ids_d1(limit_d1(x)) - x).abs() < 1e-12);
            if x <= 0.5 {
                assert!((doubling_map(limit_d1(x)) - limit_d1(2.0 * x)).abs() < 1e-12);
            }
        }
        // density integrates to the distribution function
        let e = 1.3;
        let num = adaptive_simpson(&dos_d1, 1e-12, e, 1e-13, 50);
        assert!((num - ids_d1(e)).abs() < 1e-4);
    }

    #[test]
    fn cycle_gaps_close() {
        let mut last = f64::INFINITY;
        for n in [8, 16, 32, 64] {
            let s = kirchhoff_spectrum(&gen(&format!("C{n}"))).unwrap();
            let top = gaps(&s, 1)[0].jump;
            assert!(top < last);
            last = top;
        }
        assert!(last < 0.5);
    }

    #[test]
    fn gap_ordering() {
        let s = Spectrum::new(vec![0.0, 1.0, 2.0, 5.0, 6.0, 9.0], 0.0);
        let g = gaps(&s, 10);
        assert_eq!(g.len(), 5);
        assert_eq!((g[0].below, g[0].jump), (3, 3.0));
        assert_eq!((g[1].below, g[1].jump), (5, 3.0));
        assert_eq!(g[2].below, 1);
        assert_eq!(gaps(&s, 2).len(), 2);
    }

    #[test]
    fn integrated_density_steps() {
        let d = integrated_density(&Spectrum::new(vec![0.0, 2.0, 2.0, 4.0], 0.0));
        assert_eq!(d.eval(-1.0), 0.0);
        assert_eq!(d.eval(0.0), 0.25);
        assert_eq!(d.eval(2.0), 0.75);
        assert_eq!(d.eval(4.0), 1.0);
    }

    #[test]
    fn schur_examples() {
        let r = schur_check(&gen("C4"), 1e-8).unwrap();
        assert!(r.holds);
        let expect = [0.0, 0.5, 1.0, 2.0];
        assert!(close(&r.spectral_partials, &expect, 1e-12));
        assert!(close(&r.degree_partials, &[0.5, 1.0, 1.5, 2.0], 1e-12));
        let k2 = schur_check(&gen("K2"), 1e-8).unwrap();
        assert!((k2.degree_partials[1] - 1.0).abs() < 1e-12 && k2.endpoint_gap < 1e-12);
        let s3 = schur_check(&gen("S3"), 1e-8).unwrap();
        assert!(s3.holds && s3.degree_partials.len() == 4);
        let bad = schur_from(&[1.0, 1.0], &[0.0, 3.0], 1e-8);
        assert!(!bad.holds);
    }

    #[test]
    fn zeta_values() {
        let two = Spectrum::new(vec![2.0], 1e-12);
        assert!((dirac_zeta(&two, Complex64::new(1.0, 0.0)).re - 0.5).abs() < 1e-15);
        let s = eigenvalues(&dirac(&gen("K2")), DEFAULT_TOL).unwrap();
        assert!((dirac_zeta(&s, Complex64::new(0.0, 0.0)).re - 1.0).abs() < 1e-15);
        let z = dirac_zeta(&s, Complex64::new(2.0, 0.0));
        assert!((z.re - 0.5).abs() < 1e-12 && z.im.abs() < 1e-15);
    }

    #[test]
    fn mckean_singer_and_supersymmetry() {
        for spec in ["K3", "C4", "C5", "octahedron"] {
            let g = gen(spec);
            let blocks = hodge_spectra(&g, DEFAULT_TOL).unwrap();
            let chi = euler_characteristic(&g).to_f64().unwrap();
            for t in [0.5, 1.0, 2.0] {
                assert!((supertrace(&blocks, t) - chi).abs() < 1e-6, "{spec} t={t}");
            }
            assert!(supersymmetry_defect(&blocks, 1e-8) < 1e-8, "{spec}");
        }
    }

    #[test]
    fn uniform_convergence_on_compacts() {
        let mut g = gen("C4");
        let mut last = f64::INFINITY;
        for _ in 0..4 {
            g = crate::refine::barycentric(&g).unwrap().graph;
            let f = spectral_function(&kirchhoff_spectrum(&g).unwrap());
            let d = f.sup_distance_on(limit_d1, 0.1, 0.9);
            assert!(d < last);
            last = d;
        }
    }

    proptest! {
        #[test]
        fn l1_is_a_metric(
            a in prop::collection::vec(-5.0f64..5.0, 1..8),
            b in prop::collection::vec(-5.0f64..5.0, 1..8),
            c in prop::collection::vec(-5.0f64..5.0, 1..8),
        ) {
            let (f, g, h) = (
                SpectralFunction::from_values(a),
                SpectralFunction::from_values(b),
                SpectralFunction::from_values(c),
            );
            prop_assert!((f.l1_distance(&g) - g.l1_distance(&f)).abs() < 1e-12);
            prop_assert!(f.l1_distance(&h) <= f.l1_distance(&g) + g.l1_distance(&h) + 1e-12);
            // a constant as closed form and as a one-step function agree
            let k = h.values()[0];
            let exact = f.l1_distance(&SpectralFunction::from_values(vec![k]));
            prop_assert!((f.l1_distance_to(move |_| k) - exact).abs() < 1e-9);
        }
    }
}
