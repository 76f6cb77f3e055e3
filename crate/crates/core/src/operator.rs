//! The Barycentric operator: the upper triangular integer matrix taking the
//! clique vector of a graph to the clique vector of its refinement, and the
//! left eigenvectors that turn it into refinement invariants.
//!
//! The matrix is bootstrapped column by column. With the leading `k × k`
//! block known, applying it to the binomial row `C(k+1, 1), …, C(k+1, k)`
//! (the clique vector of the boundary of `K_{k+1}`) gives the clique vector of
//! the refined boundary. Shifting that down by one, with a 1 on top and
//! `(k+1)!` on the diagonal, is the next column.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::complex::CliqueVector;

/// Leading `N × N` block of the Barycentric operator, entries exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaryMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl BaryMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Zero-based entry.
    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.rows[row][col]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn truncate(&self, n: usize) -> BaryMatrix {
        BaryMatrix {
            rows: self.rows[..n].iter().map(|r| r[..n].to_vec()).collect(),
        }
    }

    /// `A · v` for `v` of length `size()`.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.size());
        self.rows
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }

    /// `Aᵀ · f`.
    pub fn apply_transpose(&self, f: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(f.len(), self.size());
        (0..self.size())
            .map(|c| (0..self.size()).map(|r| &self.rows[r][c] * &f[r]).sum())
            .collect()
    }

    /// Right-aligned decimal columns, one row per line.
    pub fn to_text(&self) -> String {
        let width = self
            .rows
            .iter()
            .flatten()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(out, "{}", line.join(" ")).unwrap();
        }
        out
    }

    /// JSON array of rows; entries are JSON integers.
    pub fn to_json(&self) -> String {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let entries: Vec<String> = r.iter().map(BigInt::to_string).collect();
                format!("[{}]", entries.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    b
}

/// The `n × n` truncation of the operator, `n ≥ 1`.
pub fn barycentric_operator(n: usize) -> BaryMatrix {
    assert!(n >= 1, "truncation order must be positive");
    let mut rows = vec![vec![BigInt::one()]];
    for k in 1..n {
        let boundary: Vec<BigInt> = (1..=k).map(|j| binomial(k + 1, j)).collect();
        let refined = BaryMatrix { rows: rows.clone() }.apply(&boundary);
        let mut column = Vec::with_capacity(k + 1);
        column.push(BigInt::one());
        column.extend_from_slice(&refined[..k - 1]);
        for (row, entry) in rows.iter_mut().zip(column) {
            row.push(entry);
        }
        let mut last = vec![BigInt::zero(); k];
        last.push(factorial(k + 1));
        rows.push(last);
    }
    BaryMatrix { rows }
}

/// An eigenvector of `Aᵀ` in primitive integer form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenvector {
    /// `k!` for the `k`-th diagonal entry.
    pub eigenvalue: BigInt,
    pub vector: Vec<BigInt>,
}

impl Eigenvector {
    pub fn as_i64(&self) -> Vec<i64> {
        self.vector.iter().map(|x| x.to_i64().expect("entry fits i64")).collect()
    }
}

/// One eigenvector of `Aᵀ` per diagonal entry, in diagonal order.
///
/// `Aᵀ` is lower triangular with distinct diagonal `1!, 2!, …`, so each
/// eigenvector follows by forward substitution from a 1 at its own index.
/// Scaling: primitive integers; the Euler vector (eigenvalue 1) starts
/// positive, every other vector ends positive.
pub fn left_eigenvectors(a: &BaryMatrix) -> Vec<Eigenvector> {
    let n = a.size();
    (0..n)
        .map(|j| {
            let lambda = a.get(j, j).clone();
            let mut f = vec![BigRational::zero(); n];
            f[j] = BigRational::one();
            for i in j + 1..n {
                let sum: BigRational = (j..i)
                    .map(|l| BigRational::from_integer(a.get(l, i).clone()) * &f[l])
                    .sum();
                f[i] = sum / BigRational::from_integer(&lambda - a.get(i, i));
            }
            let vector = primitive(&f, j == 0);
            Eigenvector { eigenvalue: lambda, vector }
        })
        .collect()
}

fn primitive(f: &[BigRational], first_positive: bool) -> Vec<BigInt> {
    let lcm = f.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = f.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !gcd.is_zero() {
        for x in &mut ints {
            *x /= &gcd;
        }
    }
    let anchor = if first_positive {
        ints.iter().find(|x| !x.is_zero())
    } else {
        ints.iter().rev().find(|x| !x.is_zero())
    };
    if anchor.is_some_and(Signed::is_negative) {
        for x in &mut ints {
            *x = -&*x;
        }
    }
    ints
}

/// `⟨f, v⟩`, with `v` zero-padded to the length of `f`.
pub fn invariant(f: &[BigInt], v: &CliqueVector) -> BigInt {
    assert!(f.len() >= v.len(), "eigenvector shorter than clique vector");
    f.iter()
        .zip(v.counts())
        .map(|(a, c)| a * BigInt::from(c.clone()))
        .sum()
}

/// `A^m · v` with the truncation sized to `v`.
pub fn predict_clique_vector(v: &CliqueVector, m: usize) -> CliqueVector {
    if v.is_empty() {
        return v.clone();
    }
    let a = barycentric_operator(v.len());
    let mut x: Vec<BigInt> = v.counts().iter().cloned().map(BigInt::from).collect();
    for _ in 0..m {
        x = a.apply(&x);
    }
    CliqueVector::new(
        x.into_iter()
            .map(|c| c.to_biguint().expect("counts stay nonnegative"))
            .collect(),
    )
}

/// Growth of the clique counts under repeated refinement.
#[derive(Clone, Debug)]
pub struct GrowthReport {
    /// `v(G_0), …, v(G_m)`.
    pub sequence: Vec<CliqueVector>,
    /// `(d+1)!` for clique number `d+1`.
    pub top_eigenvalue: BigInt,
    /// `ratios[j][k] = v_k(G_{j+1}) / v_k(G_j)`, `None` while `v_k(G_j) = 0`.
    pub ratios: Vec<Vec<Option<f64>>>,
    /// `|ratio / (d+1)! − 1|` for the same entries.
    pub deviations: Vec<Vec<Option<f64>>>,
    /// Whether, for every `k`, the last step shrank the deviation by a factor
    /// of at most `1/(d+1) + 0.1` (or the deviation is already zero). The
    /// subleading eigenvalue `d!` makes `1/(d+1)` the asymptotic factor.
    pub within_schedule: bool,
}

pub fn growth_rate_check(v: &CliqueVector, m: usize) -> GrowthReport {
    let d1 = v.len();
    let top = factorial(d1);
    let top_f = top.to_f64().unwrap_or(f64::INFINITY);
    let mut sequence = vec![v.clone()];
    for _ in 0..m {
        let next = predict_clique_vector(sequence.last().unwrap(), 1);
        sequence.push(next);
    }
    let ratio = |a: &BigUint, b: &BigUint| -> Option<f64> {
        (!a.is_zero()).then(|| BigRational::new(BigInt::from(b.clone()), BigInt::from(a.clone())).to_f64().unwrap())
    };
    let ratios: Vec<Vec<Option<f64>>> = sequence
        .windows(2)
        .map(|w| (0..d1).map(|k| ratio(&w[0].get(k), &w[1].get(k))).collect())
        .collect();
    let deviations: Vec<Vec<Option<f64>>> = ratios
        .iter()
        .map(|row| row.iter().map(|r| r.map(|r| (r / top_f - 1.0).abs())).collect())
        .collect();
    let bound = 1.0 / d1 as f64 + 0.1;
    let within_schedule = deviations.len() < 2
        || (0..d1).all(|k| {
            let last = deviations[deviations.len() - 1][k];
            let prev = deviations[deviations.len() - 2][k];
            match (prev, last) {
                (_, Some(l)) if l < 1e-12 => true,
                (Some(p), Some(l)) => l <= bound * p,
                _ => true,
            }
        });
    GrowthReport {
        sequence,
        top_eigenvalue: top,
        ratios,
        deviations,
        within_schedule,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    const PRINTED: [[i64; 8]; 8] = [
        [1, 1, 1, 1, 1, 1, 1, 1],
        [0, 2, 6, 14, 30, 62, 126, 254],
        [0, 0, 6, 36, 150, 540, 1806, 5796],
        [0, 0, 0, 24, 240, 1560, 8400, 40824],
        [0, 0, 0, 0, 120, 1800, 16800, 126000],
        [0, 0, 0, 0, 0, 720, 15120, 191520],
        [0, 0, 0, 0, 0, 0, 5040, 141120],
        [0, 0, 0, 0, 0, 0, 0, 40320],
    ];

    #[test]
    fn small_and_printed_matrices() {
        let a3 = barycentric_operator(3);
        let expect: Vec<Vec<BigInt>> = [[1, 1, 1], [0, 2, 6], [0, 0, 6]].iter().map(|r| ints(r)).collect();
        assert_eq!(a3.rows(), expect.as_slice());
        let a8 = barycentric_operator(8);
        for (r, row) in PRINTED.iter().enumerate() {
            assert_eq!(a8.rows()[r], ints(row), "row {r}");
        }
        assert_eq!(a8.get(1, 7), &BigInt::from(254));
        assert_eq!(a8.get(2, 6), &BigInt::from(1806));
        assert_eq!(a8.get(5, 7), &BigInt::from(191520));
        assert_eq!(a3.apply(&ints(&[4, 6, 4])), ints(&[14, 36, 24]));
    }

    #[test]
    fn structure_and_prefix_consistency() {
        let a = barycentric_operator(12);
        for k in 0..12 {
            assert_eq!(a.get(k, k), &factorial(k + 1));
            assert_eq!(a.get(0, k), &BigInt::one());
            for r in k + 1..12 {
                assert!(a.get(r, k).is_zero());
            }
        }
        for n in 1..12 {
            assert_eq!(a.truncate(n), barycentric_operator(n));
        }
    }

    #[test]
    fn printed_eigenvectors() {
        let e3 = left_eigenvectors(&barycentric_operator(3));
        assert_eq!(e3[0].as_i64(), vec![1, -1, 1]);
        assert_eq!(e3[1].as_i64(), vec![0, -2, 3]);
        assert_eq!(e3[2].as_i64(), vec![0, 0, 1]);
        let e4 = left_eigenvectors(&barycentric_operator(4));
        assert_eq!(e4[0].as_i64(), vec![1, -1, 1, -1]);
        assert_eq!(e4[1].as_i64(), vec![0, 22, -33, 40]);
        assert_eq!(e4[1].eigenvalue, BigInt::from(2));
        assert_eq!(e4[2].as_i64(), vec![0, 0, -1, 2]);
        assert_eq!(e4[3].as_i64(), vec![0, 0, 0, 1]);
        let e5 = left_eigenvectors(&barycentric_operator(5));
        assert_eq!(e5[1].as_i64(), vec![0, -22, 33, -40, 45]);
    }

    #[test]
    fn eigen_equation_holds_exactly() {
        for n in 1..=10 {
            let a = barycentric_operator(n);
            for e in left_eigenvectors(&a) {
                let scaled: Vec<BigInt> = e.vector.iter().map(|x| x * &e.eigenvalue).collect();
                assert_eq!(a.apply_transpose(&e.vector), scaled);
            }
        }
    }

    #[test]
    fn invariants() {
        let euler = ints(&[1, -1, 1, -1, 1]);
        assert_eq!(invariant(&euler, &CliqueVector::from_counts(&[3, 3, 1])), BigInt::one());
        assert_eq!(invariant(&ints(&[0, -2, 3]), &CliqueVector::from_counts(&[6, 12, 8])), BigInt::zero());
        let p2s2 = CliqueVector::from_counts(&[1908, 26520, 87020, 104010, 41604]);
        assert_eq!(invariant(&ints(&[0, -22, 33, -40, 45]), &p2s2), BigInt::zero());
    }

    #[test]
    fn predictions() {
        let k3 = CliqueVector::from_counts(&[3, 3, 1]);
        assert_eq!(predict_clique_vector(&k3, 1), CliqueVector::from_counts(&[7, 12, 6]));
        assert_eq!(predict_clique_vector(&k3, 2), CliqueVector::from_counts(&[25, 60, 36]));
        assert_eq!(predict_clique_vector(&k3, 0), k3);
    }

    #[test]
    fn growth_rates() {
        let r = growth_rate_check(&CliqueVector::from_counts(&[3, 3, 1]), 6);
        assert!(r.ratios.iter().all(|row| row[2] == Some(6.0)));
        assert!(r.within_schedule);
        let r = growth_rate_check(&CliqueVector::from_counts(&[2, 1]), 10);
        let last = r.ratios.last().unwrap();
        assert!((last[0].unwrap() - 2.0).abs() < 1e-2);
        assert!(r.within_schedule);
        let r = growth_rate_check(&CliqueVector::from_counts(&[4, 6, 4, 1]), 5);
        assert!(r.ratios.iter().all(|row| row[3] == Some(24.0)));
        assert!(r.within_schedule);
        assert_eq!(r.top_eigenvalue, BigInt::from(24));
    }
}
