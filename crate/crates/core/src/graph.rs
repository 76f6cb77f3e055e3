//! Finite simple graphs on dense vertex indices `0..n`.
//!
//! A [`Graph`] is immutable once built. Edges are stored as sorted adjacency
//! lists so that adjacency tests are a binary search and neighbor scans are
//! contiguous. Refinements attach a per-vertex label (the simplex of the
//! parent graph the vertex stands for); labels never take part in identity.

use std::fmt;

use crate::error::{Error, Result};

/// Strictly increasing list of vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(vertices: Vec<usize>) -> Result<Self> {
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::UnsortedVertexSet(vertices));
        }
        Ok(Self(vertices))
    }

    /// Sorts and deduplicates.
    pub fn from_unsorted(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Self(vertices)
    }

    pub(crate) fn from_sorted_unchecked(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Self(vertices)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// `self ⊆ other`, both sorted.
    pub fn is_subset(&self, other: &VertexSet) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for &a in &self.0 {
            for &b in it.by_ref() {
                if b == a {
                    continue 'outer;
                }
                if b > a {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn is_proper_subset(&self, other: &VertexSet) -> bool {
        self.len() < other.len() && self.is_subset(other)
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    labels: Option<Vec<VertexSet>>,
}

/// An induced subgraph together with the map from its vertices back to the host.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Graph,
    /// `host[i]` is the host vertex that became vertex `i`.
    pub host: Vec<usize>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Duplicate and reversed pairs collapse
    /// into one edge.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in edges {
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            if i >= n || j >= n {
                return Err(Error::VertexOutOfRange(i, j, n));
            }
            adj[i].push(j);
            adj[j].push(i);
        }
        Ok(Self::from_adjacency(adj))
    }

    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            edge_count: 0,
            labels: None,
        }
    }

    /// Adjacency lists need not be sorted or deduplicated, but must be
    /// symmetric, in range and loop-free.
    pub(crate) fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Self {
        let mut twice = 0;
        for (v, nb) in adj.iter_mut().enumerate() {
            nb.sort_unstable();
            nb.dedup();
            debug_assert!(!nb.contains(&v));
            twice += nb.len();
        }
        Self {
            adj,
            edge_count: twice / 2,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<VertexSet>) -> Self {
        assert_eq!(labels.len(), self.n(), "one label per vertex");
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[VertexSet]> {
        self.labels.as_deref()
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let (a, b) = if self.adj[i].len() <= self.adj[j].len() {
            (i, j)
        } else {
            (j, i)
        };
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, nb)| nb.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Induced subgraph on `set`, re-indexed in the order of `set`.
    pub fn induced(&self, set: &VertexSet) -> Result<Subgraph> {
        if let Some(&v) = set.as_slice().iter().find(|&&v| v >= self.n()) {
            return Err(Error::VertexOutOfRange(v, v, self.n()));
        }
        Ok(self.induced_unchecked(set.as_slice()))
    }

    pub(crate) fn induced_unchecked(&self, host: &[usize]) -> Subgraph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in host.iter().enumerate() {
            index[v] = i;
        }
        let adj = host
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect()
            })
            .collect();
        Subgraph {
            graph: Self::from_adjacency(adj),
            host: host.to_vec(),
        }
    }

    /// Graph generated by the neighbors of `x`.
    pub fn unit_sphere(&self, x: usize) -> Subgraph {
        self.induced_unchecked(&self.adj[x])
    }

    /// Graph generated by all vertices except `x`.
    pub fn without_vertex(&self, x: usize) -> Subgraph {
        let rest: Vec<usize> = (0..self.n()).filter(|&v| v != x).collect();
        self.induced_unchecked(&rest)
    }

    /// `k` disjoint copies, copy `c` occupying vertices `c*n..(c+1)*n`.
    pub fn disjoint_union(&self, k: usize) -> Graph {
        let n = self.n();
        let adj = (0..k)
            .flat_map(|c| self.adj.iter().map(move |nb| nb.iter().map(|&w| w + c * n).collect()))
            .collect();
        Self::from_adjacency(adj)
    }

    /// Component index of every vertex, components numbered by smallest vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |c| c + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }
}

/// Edge-edit distance between two graphs on an identified vertex set: the size
/// of the symmetric difference of the edge sets.
pub fn edge_distance(g: &Graph, h: &Graph) -> Result<usize> {
    if g.n() != h.n() {
        return Err(Error::VertexCountMismatch(g.n(), h.n()));
    }
    let mut distance = 0;
    for v in 0..g.n() {
        let (a, b) = (g.neighbors(v), h.neighbors(v));
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) if x == y => {
                    i += 1;
                    j += 1;
                    continue;
                }
                (Some(x), Some(y)) if x < y => {
                    distance += usize::from(*x > v);
                    i += 1;
                }
                (Some(_), Some(y)) => {
                    distance += usize::from(*y > v);
                    j += 1;
                }
                (Some(x), None) => {
                    distance += usize::from(*x > v);
                    i += 1;
                }
                (None, Some(y)) => {
                    distance += usize::from(*y > v);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
    }
    Ok(distance)
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::Generator;

    #[test]
    fn make_graph_examples() {
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.edge_count(), 3);
        let k1 = Graph::new(1, &[]).unwrap();
        assert_eq!((k1.n(), k1.edge_count()), (1, 0));
        let dedup = Graph::new(4, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(dedup.edge_count(), 1);
        assert_eq!(dedup.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn make_graph_rejects_bad_pairs() {
        assert!(matches!(Graph::new(3, &[(1, 1)]), Err(Error::SelfLoop(1))));
        assert!(matches!(
            Graph::new(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange(0, 3, 3))
        ));
    }

    #[test]
    fn unit_spheres() {
        let octa = Generator::CrossPolytope(2).build().unwrap();
        for x in 0..6 {
            let s = octa.unit_sphere(x).graph;
            assert_eq!(s.n(), 4);
            assert_eq!(s.degrees(), vec![2; 4]);
            assert!(s.is_connected());
        }
        let k4 = Generator::Complete(4).build().unwrap();
        for x in 0..4 {
            assert_eq!(k4.unit_sphere(x).graph, Generator::Complete(3).build().unwrap());
        }
        let star = Generator::Star(5).build().unwrap();
        let s = star.unit_sphere(0);
        assert_eq!((s.graph.n(), s.graph.edge_count()), (5, 0));
        assert_eq!(s.host, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn induced_examples() {
        let k3 = Generator::Complete(3).build().unwrap();
        let sub = k3.induced(&VertexSet::new(vec![0, 1]).unwrap()).unwrap();
        assert_eq!(sub.graph, Generator::Complete(2).build().unwrap());
        let c5 = Generator::Cycle(5).build().unwrap();
        let sub = c5.induced(&VertexSet::new(vec![0, 2]).unwrap()).unwrap();
        assert_eq!((sub.graph.n(), sub.graph.edge_count()), (2, 0));
        let all = VertexSet::new((0..5).collect()).unwrap();
        assert_eq!(c5.induced(&all).unwrap().graph, c5);
        assert!(c5.induced(&VertexSet::new(vec![7]).unwrap()).is_err());
    }

    #[test]
    fn edge_distance_examples() {
        let c4 = Generator::Cycle(4).build().unwrap();
        assert_eq!(edge_distance(&c4, &c4).unwrap(), 0);
        let k3 = Generator::Complete(3).build().unwrap();
        let p3 = Generator::Path(3).build().unwrap();
        assert_eq!(edge_distance(&k3, &p3).unwrap(), 1);
        let k4 = Generator::Complete(4).build().unwrap();
        assert_eq!(edge_distance(&k4, &Graph::empty(4)).unwrap(), 6);
        assert!(edge_distance(&k4, &k3).is_err());
    }

    #[test]
    fn disjoint_union_examples() {
        let k1 = Generator::Complete(1).build().unwrap();
        let u = k1.disjoint_union(3);
        assert_eq!((u.n(), u.edge_count()), (3, 0));
        let c3 = Generator::Cycle(3).build().unwrap();
        let u = c3.disjoint_union(2);
        assert_eq!((u.n(), u.edge_count()), (6, 6));
        assert_eq!(u.component_count(), 2);
    }

    #[test]
    fn vertex_set_subsets() {
        let a = VertexSet::new(vec![1, 3]).unwrap();
        let b = VertexSet::new(vec![0, 1, 2, 3]).unwrap();
        assert!(a.is_proper_subset(&b));
        assert!(!b.is_subset(&a));
        assert!(a.is_subset(&a) && !a.is_proper_subset(&a));
        assert!(VertexSet::new(vec![2, 1]).is_err());
        assert!(VertexSet::default().is_subset(&a));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_graph(n: usize) -> impl Strategy<Value = Graph> {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let pairs: Vec<(usize, usize)> = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .zip(bits)
                    .filter_map(|(p, b)| b.then_some(p))
                    .collect();
                Graph::new(n, &pairs).unwrap()
            })
        }

        proptest! {
            #[test]
            fn edge_distance_is_a_metric(g in arb_graph(7), h in arb_graph(7), k in arb_graph(7)) {
                let d = |a: &Graph, b: &Graph| edge_distance(a, b).unwrap();
                prop_assert_eq!(d(&g, &g), 0);
                prop_assert_eq!(d(&g, &h), d(&h, &g));
                prop_assert!(d(&g, &k) <= d(&g, &h) + d(&h, &k));
                prop_assert_eq!(d(&g, &h) == 0, g == h);
            }

            #[test]
            fn unit_sphere_of_complete_is_complete(n in 2usize..9, x in 0usize..9) {
                let x = x % n;
                let k = Generator::Complete(n).build().unwrap();
                prop_assert_eq!(k.unit_sphere(x).graph, Generator::Complete(n - 1).build().unwrap());
            }
        }
    }
}
