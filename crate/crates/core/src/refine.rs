//! Barycentric refinement, the simplex product, and boundary extraction.

use std::path::Path;

use num_bigint::BigUint;

use crate::complex::{self, clique_levels, euler_characteristic, CliqueLevel, Simplex};
use crate::error::{Error, Result};
use crate::graph::{Graph, Subgraph, VertexSet};
use crate::io;
use crate::operator;
use crate::topology::Searcher;

/// Default cap on the vertex count of a requested refinement.
pub const DEFAULT_SIZE_LIMIT: u64 = 200_000;

/// A refinement together with the parent simplex behind every vertex.
#[derive(Clone, Debug)]
pub struct RefinedGraph {
    pub graph: Graph,
    pub depth: usize,
}

impl RefinedGraph {
    /// Parent simplex of every vertex; `None` at depth 0.
    pub fn source(&self) -> Option<Vec<Simplex>> {
        self.graph
            .labels()
            .map(|l| l.iter().cloned().map(Simplex::from).collect())
    }
}

/// Simplices of all clique levels with global indices: level offsets plus a
/// binary search inside each lexicographically sorted level.
struct SimplexIndex {
    levels: Vec<CliqueLevel>,
    offsets: Vec<usize>,
}

impl SimplexIndex {
    fn new(g: &Graph) -> Self {
        let levels = clique_levels(g, None);
        let mut offsets = Vec::with_capacity(levels.len() + 1);
        let mut total = 0;
        for l in &levels {
            offsets.push(total);
            total += l.len();
        }
        offsets.push(total);
        SimplexIndex { levels, offsets }
    }

    fn len(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    fn simplex(&self, index: usize) -> &[usize] {
        let k = self.offsets.partition_point(|&o| o <= index) - 1;
        self.levels[k].get(index - self.offsets[k])
    }

    fn index_of(&self, clique: &[usize]) -> usize {
        let k = clique.len() - 1;
        let level = &self.levels[k];
        let (mut lo, mut hi) = (0, level.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            if level.get(mid) < clique {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        debug_assert_eq!(level.get(lo), clique);
        self.offsets[k] + lo
    }

    /// Global indices of the non-empty faces of `clique`, itself included.
    fn faces(&self, clique: &[usize], out: &mut Vec<usize>) {
        out.clear();
        let k = clique.len();
        let mut face = Vec::with_capacity(k);
        for mask in 1u64..(1u64 << k) {
            face.clear();
            face.extend((0..k).filter(|&i| mask & (1 << i) != 0).map(|i| clique[i]));
            out.push(self.index_of(&face));
        }
    }

    fn labels(&self) -> Vec<VertexSet> {
        self.levels
            .iter()
            .flat_map(|l| l.iter().map(|c| VertexSet::from_sorted_unchecked(c.to_vec())))
            .collect()
    }
}

/// One Barycentric refinement: a vertex per simplex, ordered by dimension and
/// then lexicographically, joined when one simplex strictly contains the other.
pub fn barycentric(g: &Graph) -> Result<RefinedGraph> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let index = SimplexIndex::new(g);
    let mut adj = vec![Vec::new(); index.len()];
    let mut faces = Vec::new();
    for (k, level) in index.levels.iter().enumerate().skip(1) {
        for (i, clique) in level.iter().enumerate() {
            let top = index.offsets[k] + i;
            index.faces(clique, &mut faces);
            for &f in faces.iter().filter(|&&f| f != top) {
                adj[top].push(f);
                adj[f].push(top);
            }
        }
    }
    Ok(RefinedGraph {
        graph: Graph::from_adjacency(adj).with_labels(index.labels()),
        depth: 1,
    })
}

/// Exact clique vector of the `m`-th refinement, predicted by the operator.
pub fn predicted_vertices(g: &Graph, m: usize) -> BigUint {
    let v = complex::clique_vector(g);
    operator::predict_clique_vector(&v, m).get(0)
}

/// Options for [`refine_iter`].
#[derive(Clone, Debug)]
pub struct RefineOptions<'a> {
    pub cache_dir: Option<&'a Path>,
    pub size_limit: u64,
}

impl Default for RefineOptions<'_> {
    fn default() -> Self {
        RefineOptions {
            cache_dir: None,
            size_limit: DEFAULT_SIZE_LIMIT,
        }
    }
}

/// The `m`-th Barycentric refinement.
///
/// Refuses before building anything when the predicted vertex count exceeds
/// the size limit. With a cache directory, every level `1..=m` is stored as
/// `<sha256 of the input graph file>.<level>.graph` and the deepest cached
/// level is used as the starting point.
pub fn refine_iter(g: &Graph, m: usize, opts: &RefineOptions<'_>) -> Result<RefinedGraph> {
    if m == 0 {
        return Ok(RefinedGraph {
            graph: g.clone(),
            depth: 0,
        });
    }
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let predicted = predicted_vertices(g, m);
    if predicted > BigUint::from(opts.size_limit) {
        return Err(Error::SizeLimit {
            depth: m,
            predicted: predicted.to_string(),
            limit: opts.size_limit,
        });
    }
    let Some(dir) = opts.cache_dir else {
        let mut current = barycentric(g)?;
        for depth in 2..=m {
            current = barycentric(&current.graph)?;
            current.depth = depth;
        }
        return Ok(current);
    };

    let parent = io::content_hash(g);
    let path_for = |depth: usize| dir.join(format!("{parent}.{depth}.graph"));
    let mut start = None;
    for depth in (1..=m).rev() {
        let path = path_for(depth);
        if path.exists() {
            // unreadable entries are rebuilt
            if let Ok(graph) = io::read_graph_file(&path) {
                start = Some(RefinedGraph { graph, depth });
                break;
            }
        }
    }
    let mut current = match start {
        Some(r) => r,
        None => {
            let r = barycentric(g)?;
            io::write_graph_atomic(&r.graph, &path_for(1))?;
            r
        }
    };
    while current.depth < m {
        let depth = current.depth + 1;
        let graph = barycentric(&current.graph)?.graph;
        io::write_graph_atomic(&graph, &path_for(depth))?;
        current = RefinedGraph { graph, depth };
    }
    Ok(current)
}

/// Simplex product: a vertex per pair `(x, y)` of simplices, `(x, y)` and
/// `(u, v)` joined when `x ⊆ u` and `y ⊆ v` (or the reverse) and the pairs
/// differ. Pair `(i, j)` of the simplex orderings is vertex `i * |S(H)| + j`.
pub fn graph_product(g: &Graph, h: &Graph) -> Result<Graph> {
    if g.is_empty() || h.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let (sg, sh) = (SimplexIndex::new(g), SimplexIndex::new(h));
    let width = sh.len();
    let mut adj = vec![Vec::new(); sg.len() * width];
    let (mut fg, mut fh) = (Vec::new(), Vec::new());
    for i in 0..sg.len() {
        sg.faces(sg.simplex(i), &mut fg);
        for j in 0..width {
            sh.faces(sh.simplex(j), &mut fh);
            let top = i * width + j;
            for &a in &fg {
                for &b in &fh {
                    let low = a * width + b;
                    if low != top {
                        adj[top].push(low);
                        adj[low].push(top);
                    }
                }
            }
        }
    }
    Ok(Graph::from_adjacency(adj))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryMode {
    /// Vertices whose unit sphere is not recognized as a sphere.
    Exact { budget: u64 },
    /// Vertices whose unit sphere has Euler characteristic 1.
    Euler,
}

#[derive(Clone, Debug)]
pub struct Boundary {
    pub graph: Subgraph,
    /// False when the exact search ran out of budget; `graph` then holds the
    /// vertices already confirmed as boundary.
    pub conclusive: bool,
}

pub fn boundary(g: &Graph, mode: BoundaryMode) -> Boundary {
    match mode {
        BoundaryMode::Euler => {
            let set: Vec<usize> = (0..g.n())
                .filter(|&x| euler_characteristic(&g.unit_sphere(x).graph) == 1.into())
                .collect();
            Boundary {
                graph: g.induced_unchecked(&set),
                conclusive: true,
            }
        }
        BoundaryMode::Exact { budget } => {
            let mut searcher = Searcher::new(budget);
            let (set, conclusive) = searcher.boundary_vertices(g);
            Boundary {
                graph: g.induced_unchecked(&set),
                conclusive,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{clique_vector, CliqueVector};
    use crate::generators::Generator;

    fn gen(spec: &str) -> Graph {
        spec.parse::<Generator>().unwrap().build().unwrap()
    }

    fn is_cycle(g: &Graph, n: usize) -> bool {
        g.n() == n && g.degrees().iter().all(|&d| d == 2) && g.is_connected()
    }

    #[test]
    fn barycentric_examples() {
        let p = barycentric(&gen("K2")).unwrap().graph;
        assert_eq!(p.edges().collect::<Vec<_>>(), vec![(0, 2), (1, 2)]);
        let k3 = barycentric(&gen("K3")).unwrap();
        assert_eq!((k3.graph.n(), k3.graph.edge_count()), (7, 12));
        assert_eq!(complex::enumerate_cliques(&k3.graph, 3).len(), 6);
        let src = k3.source().unwrap();
        assert_eq!(src[6].vertices(), &[0, 1, 2]);
        for (i, j) in k3.graph.edges() {
            let (a, b) = (src[i].support(), src[j].support());
            assert!(a.is_proper_subset(b) || b.is_proper_subset(a));
        }
        assert!(is_cycle(&barycentric(&gen("C4")).unwrap().graph, 8));
        assert!(matches!(barycentric(&Graph::empty(0)), Err(Error::EmptyGraph)));
    }

    #[test]
    fn adjacency_is_strict_containment() {
        for seed in 0..6 {
            let g = Generator::ErdosRenyi { n: 7, p: 0.6, seed }.build().unwrap();
            let r = barycentric(&g).unwrap();
            let src = r.source().unwrap();
            assert_eq!(r.graph.n() as u64, u64::try_from(clique_vector(&g).total()).unwrap());
            for i in 0..src.len() {
                for j in i + 1..src.len() {
                    let (a, b) = (src[i].support(), src[j].support());
                    let related = a.is_proper_subset(b) || b.is_proper_subset(a);
                    assert_eq!(r.graph.has_edge(i, j), related);
                }
            }
        }
    }

    #[test]
    fn iterated_refinement() {
        let opts = RefineOptions::default();
        for m in 0..5 {
            let g = refine_iter(&gen("C4"), m, &opts).unwrap();
            assert!(is_cycle(&g.graph, 4 << m));
        }
        assert_eq!(refine_iter(&gen("K3"), 2, &opts).unwrap().graph.n(), 25);
        assert_eq!(predicted_vertices(&gen("K3"), 5), BigUint::from(3937u32));
        let err = refine_iter(&gen("K3"), 9, &opts).unwrap_err();
        assert!(matches!(err, Error::SizeLimit { depth: 9, .. }), "{err}");
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let opts = RefineOptions {
            cache_dir: Some(dir.path()),
            ..Default::default()
        };
        let k3 = gen("K3");
        let fresh = refine_iter(&k3, 2, &opts).unwrap();
        let hash = io::content_hash(&k3);
        assert!(dir.path().join(format!("{hash}.1.graph")).exists());
        assert!(dir.path().join(format!("{hash}.2.graph")).exists());
        let cached = refine_iter(&k3, 3, &opts).unwrap();
        let direct = refine_iter(&k3, 3, &RefineOptions::default()).unwrap();
        assert_eq!(cached.graph, direct.graph);
        assert_eq!(cached.graph.labels(), direct.graph.labels());
        let again = refine_iter(&k3, 2, &opts).unwrap();
        assert_eq!(again.graph, fresh.graph);
        assert_eq!(again.source(), fresh.source());
    }

    #[test]
    fn product_examples() {
        let k3 = gen("K3");
        let k1 = gen("K1");
        assert_eq!(graph_product(&k3, &k1).unwrap(), barycentric(&k3).unwrap().graph);
        assert_eq!(graph_product(&k1, &k1).unwrap(), k1);
        let k2k2 = graph_product(&gen("K2"), &gen("K2")).unwrap();
        assert_eq!(k2k2.n(), 9);
        // (edge, edge) sees all 8 other pairs; (vertex, vertex) sees the
        // pairs (vertex', edge'), (edge, vertex'), (edge, edge) above it
        assert_eq!(k2k2.degree(8), 8);
        assert_eq!(k2k2.degree(0), 3);
        assert!(graph_product(&Graph::empty(0), &k1).is_err());
    }

    #[test]
    fn boundaries() {
        let r = barycentric(&gen("K3")).unwrap().graph;
        let b = boundary(&r, BoundaryMode::Euler);
        assert!(is_cycle(&b.graph.graph, 6));
        assert_eq!(clique_vector(&b.graph.graph), CliqueVector::from_counts(&[6, 6]));
        let exact = boundary(&r, BoundaryMode::Exact { budget: 100_000 });
        assert!(exact.conclusive);
        assert_eq!(exact.graph.host, b.graph.host);

        let octa = gen("octahedron");
        assert!(boundary(&octa, BoundaryMode::Euler).graph.graph.is_empty());
        assert!(boundary(&octa, BoundaryMode::Exact { budget: 100_000 }).graph.graph.is_empty());

        let k4 = barycentric(&gen("K4")).unwrap().graph;
        let b = boundary(&k4, BoundaryMode::Euler).graph.graph;
        assert_eq!(clique_vector(&b), CliqueVector::from_counts(&[14, 36, 24]));
        let e = boundary(&k4, BoundaryMode::Exact { budget: 1_000_000 });
        assert!(e.conclusive);
        assert_eq!(clique_vector(&e.graph.graph), CliqueVector::from_counts(&[14, 36, 24]));
    }

    #[test]
    fn exact_boundary_budget_exhaustion_is_flagged() {
        let k4 = barycentric(&gen("K4")).unwrap().graph;
        let b = boundary(&k4, BoundaryMode::Exact { budget: 3 });
        assert!(!b.conclusive);
    }
}
