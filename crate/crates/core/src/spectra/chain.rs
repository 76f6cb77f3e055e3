//! Signed incidence matrices of the Whitney complex, the Dirac operator and
//! its Hodge blocks.

use std::fmt;

use crate::complex::{clique_levels, CliqueLevel};
use crate::graph::Graph;

use super::SymMatrix;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: i64) {
        self.data[r * self.cols + c] = x;
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Panics on a shape mismatch.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    out.data[r * other.cols + c] += a * other.get(k, c);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Square symmetric integer matrices convert exactly.
    pub fn to_sym(&self) -> SymMatrix {
        assert_eq!(self.rows, self.cols, "not square");
        SymMatrix::from_data(self.rows, self.data.iter().map(|&x| x as f64).collect())
            .expect("integer matrix is symmetric")
    }

    /// The square block `[start, start + len)` on both axes.
    pub fn block(&self, start: usize, len: usize) -> IntMatrix {
        let mut out = IntMatrix::zeros(len, len);
        for r in 0..len {
            for c in 0..len {
                out.set(r, c, self.get(start + r, start + c));
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        Ok(())
    }
}

/// `d[k]` maps k-chains to (k+1)-chains, shape `v_{k+1} × v_k`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    levels: Vec<CliqueLevel>,
    d: Vec<IntMatrix>,
}

fn index_in(level: &CliqueLevel, face: &[usize]) -> usize {
    let (mut lo, mut hi) = (0, level.len());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if level.get(mid) < face {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    debug_assert_eq!(level.get(lo), face);
    lo
}

pub fn chain_complex(g: &Graph) -> ChainComplex {
    let levels = clique_levels(g, None);
    let mut d = Vec::new();
    let mut face = Vec::new();
    for k in 0..levels.len().saturating_sub(1) {
        let (lower, upper) = (&levels[k], &levels[k + 1]);
        let mut m = IntMatrix::zeros(upper.len(), lower.len());
        for (r, simplex) in upper.iter().enumerate() {
            for i in 0..simplex.len() {
                face.clear();
                face.extend(simplex.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v));
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m.set(r, index_in(lower, &face), sign);
            }
        }
        d.push(m);
    }
    ChainComplex { levels, d }
}

impl ChainComplex {
    /// `v_k` for each k.
    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(CliqueLevel::len).collect()
    }

    pub fn levels(&self) -> &[CliqueLevel] {
        &self.levels
    }

    pub fn total(&self) -> usize {
        self.dims().iter().sum()
    }

    pub fn d(&self, k: usize) -> Option<&IntMatrix> {
        self.d.get(k)
    }

    /// Offset of the k-simplices in the full simplex space.
    pub fn offset(&self, k: usize) -> usize {
        self.levels[..k].iter().map(CliqueLevel::len).sum()
    }

    /// `D = d + dᵀ` on the direct sum of all chain spaces.
    pub fn dirac_int(&self) -> IntMatrix {
        let n = self.total();
        let mut out = IntMatrix::zeros(n, n);
        for (k, m) in self.d.iter().enumerate() {
            let (ro, co) = (self.offset(k + 1), self.offset(k));
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let x = m.get(r, c);
                    if x != 0 {
                        out.set(ro + r, co + c, x);
                        out.set(co + c, ro + r, x);
                    }
                }
            }
        }
        out
    }

    /// `L_k = d_{k−1} d_{k−1}ᵀ + d_kᵀ d_k`.
    pub fn hodge_int(&self, k: usize) -> IntMatrix {
        let vk = self.levels.get(k).map_or(0, CliqueLevel::len);
        let mut out = IntMatrix::zeros(vk, vk);
        if k >= 1 {
            if let Some(down) = self.d.get(k - 1) {
                out = out.add(&down.mul(&down.transpose()));
            }
        }
        if let Some(up) = self.d.get(k) {
            out = out.add(&up.transpose().mul(up));
        }
        out
    }
}

pub fn dirac(g: &Graph) -> SymMatrix {
    chain_complex(g).dirac_int().to_sym()
}

pub fn hodge_block(g: &Graph, k: usize) -> SymMatrix {
    chain_complex(g).hodge_int(k).to_sym()
}
