//! The Whitney complex of a graph: its complete subgraphs and the counting
//! data built from them.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::canon::{self, CanonKey};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::spectra::SpectralFunction;

/// A complete subgraph, identified by its vertex support.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(VertexSet);

impl Simplex {
    pub fn support(&self) -> &VertexSet {
        &self.0
    }

    pub fn vertices(&self) -> &[usize] {
        self.0.as_slice()
    }

    /// Number of vertices minus one.
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn into_support(self) -> VertexSet {
        self.0
    }
}

impl From<VertexSet> for Simplex {
    fn from(set: VertexSet) -> Self {
        Simplex(set)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// All `k`-cliques of a graph stored flat, `k` vertices per clique,
/// cliques in lexicographic order.
#[derive(Clone, Debug)]
pub struct CliqueLevel {
    pub size: usize,
    data: Vec<usize>,
}

impl CliqueLevel {
    pub fn vertices(g: &Graph) -> Self {
        CliqueLevel {
            size: 1,
            data: (0..g.n()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.size
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, usize> {
        self.data.chunks_exact(self.size)
    }

    pub fn get(&self, i: usize) -> &[usize] {
        &self.data[i * self.size..(i + 1) * self.size]
    }

    /// Extends every clique by each larger vertex adjacent to all members.
    pub fn extend(&self, g: &Graph) -> CliqueLevel {
        let mut data = Vec::new();
        for c in self.iter() {
            let (&last, rest) = c.split_last().expect("cliques are non-empty");
            for &w in g.neighbors(last).iter().filter(|&&w| w > last) {
                if rest.iter().all(|&u| g.has_edge(u, w)) {
                    data.extend_from_slice(c);
                    data.push(w);
                }
            }
        }
        CliqueLevel {
            size: self.size + 1,
            data,
        }
    }

    pub fn simplices(&self) -> Vec<Simplex> {
        self.iter()
            .map(|c| Simplex(VertexSet::from_sorted_unchecked(c.to_vec())))
            .collect()
    }
}

/// Clique levels `1, 2, …` up to the clique number, or up to `max_size`.
pub fn clique_levels(g: &Graph, max_size: Option<usize>) -> Vec<CliqueLevel> {
    let mut levels = Vec::new();
    let mut level = CliqueLevel::vertices(g);
    while !level.is_empty() && max_size.is_none_or(|m| level.size <= m) {
        let next = level.extend(g);
        levels.push(level);
        level = next;
    }
    levels
}

/// All complete subgraphs with `k` vertices in lexicographic order.
pub fn enumerate_cliques(g: &Graph, k: usize) -> Vec<Simplex> {
    assert!(k >= 1, "clique size must be positive");
    let mut level = CliqueLevel::vertices(g);
    while level.size < k && !level.is_empty() {
        level = level.extend(g);
    }
    level.simplices()
}

/// Every simplex ordered by dimension, then lexicographically.
pub fn all_simplices(g: &Graph) -> Vec<Simplex> {
    clique_levels(g, None).iter().flat_map(CliqueLevel::simplices).collect()
}

/// Counts `(v_0, …, v_d)` of complete subgraphs by dimension; `v_d > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CliqueVector(Vec<BigUint>);

impl CliqueVector {
    /// Trailing zeros are trimmed.
    pub fn new(mut counts: Vec<BigUint>) -> Self {
        while counts.last().is_some_and(Zero::is_zero) {
            counts.pop();
        }
        CliqueVector(counts)
    }

    pub fn from_counts(counts: &[u64]) -> Self {
        Self::new(counts.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.0
    }

    /// Counts as `u64`, or `None` if one does not fit.
    pub fn to_u64(&self) -> Option<Vec<u64>> {
        self.0.iter().map(|c| u64::try_from(c).ok()).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, k: usize) -> BigUint {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.0.iter().sum()
    }

    pub fn euler_characteristic(&self) -> BigInt {
        self.0
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let v = BigInt::from(v.clone());
                if k % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .sum()
    }

    /// `Σ v_k x^k`.
    pub fn euler_polynomial(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, v| {
            acc * x + BigRational::from_integer(BigInt::from(v.clone()))
        })
    }
}

impl fmt::Display for CliqueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for CliqueVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(CliqueVector::default());
        }
        s.split(',')
            .map(|t| {
                t.trim().parse::<BigUint>().map_err(|e| Error::Parse {
                    line: 1,
                    msg: format!("bad clique count `{t}`: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(CliqueVector::new)
    }
}

pub fn clique_vector(g: &Graph) -> CliqueVector {
    CliqueVector::new(
        clique_levels(g, None)
            .iter()
            .map(|l| BigUint::from(l.len()))
            .collect(),
    )
}

pub fn euler_characteristic(g: &Graph) -> BigInt {
    clique_vector(g).euler_characteristic()
}

pub fn euler_polynomial(g: &Graph, x: &BigRational) -> BigRational {
    clique_vector(g).euler_polynomial(x)
}

/// Size of the largest complete subgraph.
pub fn clique_number(g: &Graph) -> usize {
    clique_levels(g, None).len()
}

/// `|E| / C(n, 2)`; zero for graphs with fewer than two vertices.
pub fn graph_density(g: &Graph) -> BigRational {
    let n = g.n() as u64;
    if n < 2 {
        return BigRational::zero();
    }
    BigRational::new(BigInt::from(g.edge_count()), BigInt::from(n * (n - 1) / 2))
}

/// Inductive dimension, memoized on canonical keys of the unit spheres.
#[derive(Default)]
pub struct DimensionCache {
    memo: HashMap<CanonKey, BigRational>,
}

impl DimensionCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dimension(&mut self, g: &Graph) -> BigRational {
        if g.is_empty() {
            return -BigRational::one();
        }
        let key = canon::canonical(g).key;
        if let Some(d) = self.memo.get(&key) {
            return d.clone();
        }
        let mut sum = BigRational::zero();
        for x in 0..g.n() {
            sum += self.dimension(&g.unit_sphere(x).graph);
        }
        let d = BigRational::one() + sum / BigRational::from_integer(BigInt::from(g.n()));
        self.memo.insert(key, d.clone());
        d
    }
}

pub fn dimension(g: &Graph) -> BigRational {
    DimensionCache::new().dimension(g)
}

/// Sorted degree sequence as a step function on `[0, 1]`.
pub fn degree_function(g: &Graph) -> SpectralFunction {
    SpectralFunction::from_values(g.degrees().into_iter().map(|d| d as f64).collect())
}

/// `1 + Σ_k (-1)^(k+1) V_k / (k+2)` over the clique vector `V` of the unit sphere.
pub fn curvature(g: &Graph, x: usize) -> BigRational {
    let sphere = clique_vector(&g.unit_sphere(x).graph);
    let mut k = BigRational::one();
    for (i, v) in sphere.counts().iter().enumerate() {
        let term = BigRational::new(BigInt::from(v.clone()), BigInt::from(i + 2));
        if i % 2 == 0 {
            k -= term;
        } else {
            k += term;
        }
    }
    k
}

pub fn total_curvature(g: &Graph) -> BigRational {
    (0..g.n()).map(|x| curvature(g, x)).sum()
}

/// Colors each vertex of a refinement by the dimension of its source simplex.
pub fn dimension_coloring(g: &Graph) -> Result<Vec<usize>> {
    let labels = g.labels().ok_or(Error::MissingLabels)?;
    Ok(labels.iter().map(|s| s.len() - 1).collect())
}

pub fn is_proper_coloring(g: &Graph, colors: &[usize]) -> bool {
    g.edges().all(|(i, j)| colors[i] != colors[j])
}
