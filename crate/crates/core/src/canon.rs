//! Memoization keys for recursive searches over small graphs.
//!
//! Graphs with at most [`CANONICAL_MAX`] vertices get a true canonical form:
//! equitable partition refinement by neighbor counts, then individualization
//! of every vertex in the first non-singleton cell, keeping the smallest
//! adjacency encoding over all leaves. Twins (vertices whose neighborhoods
//! agree apart from each other) are interchangeable, so only one per cell is
//! individualized. Larger graphs, or searches that exceed the leaf budget,
//! fall back to the exact labeled adjacency, which is still a sound key but
//! only identifies equal, not isomorphic, graphs.

use crate::graph::Graph;

pub const CANONICAL_MAX: usize = 12;
const LEAF_BUDGET: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CanonKey {
    Canonical { n: u8, bits: u128 },
    Exact { n: u32, edges: Vec<(u32, u32)> },
}

/// `order[i]` is the vertex of the input placed at position `i` of the key.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub key: CanonKey,
    pub order: Vec<usize>,
}

pub fn canonical(g: &Graph) -> Canonical {
    if g.n() <= CANONICAL_MAX {
        let mut search = Search {
            g,
            best: None,
            leaves: 0,
        };
        search.descend(vec![(0..g.n()).collect()]);
        if search.leaves <= LEAF_BUDGET {
            if let Some((bits, order)) = search.best {
                return Canonical {
                    key: CanonKey::Canonical { n: g.n() as u8, bits },
                    order,
                };
            }
        }
    }
    exact(g)
}

pub fn exact(g: &Graph) -> Canonical {
    Canonical {
        key: CanonKey::Exact {
            n: g.n() as u32,
            edges: g.edges().map(|(i, j)| (i as u32, j as u32)).collect(),
        },
        order: (0..g.n()).collect(),
    }
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(u128, Vec<usize>)>,
    leaves: usize,
}

impl Search<'_> {
    fn descend(&mut self, partition: Vec<Vec<usize>>) {
        if self.leaves > LEAF_BUDGET {
            return;
        }
        let partition = refine(self.g, partition);
        let Some(target) = partition.iter().position(|c| c.len() > 1) else {
            self.leaves += 1;
            let order: Vec<usize> = partition.into_iter().map(|c| c[0]).collect();
            let bits = encode(self.g, &order);
            if self.best.as_ref().is_none_or(|(b, _)| bits < *b) {
                self.best = Some((bits, order));
            }
            return;
        };
        let cell = &partition[target];
        let mut tried: Vec<usize> = Vec::new();
        for &v in cell {
            if tried.iter().any(|&u| twins(self.g, u, v)) {
                continue;
            }
            tried.push(v);
            let mut next = Vec::with_capacity(partition.len() + 1);
            next.extend_from_slice(&partition[..target]);
            next.push(vec![v]);
            next.push(cell.iter().copied().filter(|&w| w != v).collect());
            next.extend_from_slice(&partition[target + 1..]);
            self.descend(next);
        }
    }
}

fn twins(g: &Graph, u: usize, v: usize) -> bool {
    let a = g.neighbors(u).iter().filter(|&&w| w != v);
    let b = g.neighbors(v).iter().filter(|&&w| w != u);
    a.eq(b)
}

/// Splits cells by the vector of neighbor counts into every cell until stable.
fn refine(g: &Graph, mut partition: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut cell_of = vec![0usize; n];
    loop {
        for (c, cell) in partition.iter().enumerate() {
            for &v in cell {
                cell_of[v] = c;
            }
        }
        let k = partition.len();
        let mut next = Vec::with_capacity(k);
        for cell in &partition {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<usize>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut counts = vec![0usize; k];
                    for &w in g.neighbors(v) {
                        counts[cell_of[w]] += 1;
                    }
                    (counts, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        if next.len() == k {
            return next;
        }
        partition = next;
    }
}

fn encode(g: &Graph, order: &[usize]) -> u128 {
    let n = order.len();
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut bits = 0u128;
    for (u, v) in g.edges() {
        let (a, b) = if pos[u] < pos[v] { (pos[u], pos[v]) } else { (pos[v], pos[u]) };
        let index = a * (2 * n - a - 1) / 2 + (b - a - 1);
        bits |= 1u128 << index;
    }
    bits
}
