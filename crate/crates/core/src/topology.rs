//! Recognition of contractible graphs, spheres, d-graphs and balls by
//! exhaustive search.
//!
//! Every search shares one node budget. Results that finished inside the
//! budget are exact and memoized on canonical keys; running out of budget
//! yields an inconclusive verdict instead of a guess.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;

use crate::canon::{self, CanonKey};
use crate::complex::{clique_number, euler_characteristic};
use crate::error::{Error, Result};
use crate::graph::{Graph, Subgraph};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
    Inconclusive,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Inconclusive => "inconclusive",
        })
    }
}

/// Outcome of a single query. For contractibility the witness of a yes is a
/// collapse order: vertices removed one at a time, ending with the last one.
/// For spheres it is the punctured vertex followed by such an order, and for
/// a no it is the vertex whose unit sphere failed, when there is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub answer: Answer,
    pub witness: Option<Vec<usize>>,
    pub budget_spent: u64,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }
}

#[derive(Debug)]
struct Exhausted;

type Step<T> = std::result::Result<T, Exhausted>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Sphere,
    Ball,
    DGraph,
    WithBoundary,
}

/// Budgeted search state with memo tables shared across queries.
pub struct Searcher {
    budget: u64,
    spent: u64,
    contractible: HashMap<CanonKey, Option<Vec<usize>>>,
    shapes: HashMap<(CanonKey, Kind, i64), bool>,
}

impl Searcher {
    pub fn new(budget: u64) -> Self {
        Searcher {
            budget,
            spent: 0,
            contractible: HashMap::new(),
            shapes: HashMap::new(),
        }
    }

    pub fn spent(&self) -> u64 {
        self.spent
    }

    fn tick(&mut self) -> Step<()> {
        if self.spent >= self.budget {
            return Err(Exhausted);
        }
        self.spent += 1;
        Ok(())
    }

    /// A collapse order when `g` is contractible.
    fn contract(&mut self, g: &Graph) -> Step<Option<Vec<usize>>> {
        self.tick()?;
        let n = g.n();
        match n {
            0 => return Ok(None),
            1 => return Ok(Some(vec![0])),
            _ => {}
        }
        if g.edge_count() == n * (n - 1) / 2 {
            return Ok(Some((0..n).collect()));
        }
        if !g.is_connected() {
            return Ok(None);
        }
        let c = canon::canonical(g);
        if let Some(stored) = self.contractible.get(&c.key) {
            return Ok(stored.as_ref().map(|w| w.iter().map(|&p| c.order[p]).collect()));
        }
        let mut position = vec![0; n];
        for (p, &v) in c.order.iter().enumerate() {
            position[v] = p;
        }
        let mut candidates: Vec<usize> = (0..n).collect();
        candidates.sort_by_key(|&x| (g.degree(x), x));
        let mut found = None;
        for x in candidates {
            if self.contract(&g.unit_sphere(x).graph)?.is_none() {
                continue;
            }
            let rest = g.without_vertex(x);
            if let Some(w) = self.contract(&rest.graph)? {
                let mut order = vec![x];
                order.extend(w.into_iter().map(|v| rest.host[v]));
                found = Some(order);
                break;
            }
        }
        let stored = found.as_ref().map(|w| w.iter().map(|&v| position[v]).collect());
        self.contractible.insert(c.key, stored);
        Ok(found)
    }

    fn memo(&mut self, g: &Graph, kind: Kind, d: i64, f: impl FnOnce(&mut Self) -> Step<bool>) -> Step<bool> {
        let key = (canon::canonical(g).key, kind, d);
        if let Some(&b) = self.shapes.get(&key) {
            return Ok(b);
        }
        let b = f(self)?;
        self.shapes.insert(key, b);
        Ok(b)
    }

    /// First vertex whose unit sphere is not a `(d−1)`-sphere.
    fn non_sphere_vertex(&mut self, g: &Graph, d: i64) -> Step<Option<usize>> {
        for x in 0..g.n() {
            if !self.sphere(&g.unit_sphere(x).graph, d - 1)? {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }

    fn puncture(&mut self, g: &Graph) -> Step<Option<Vec<usize>>> {
        for x in 0..g.n() {
            let rest = g.without_vertex(x);
            if let Some(w) = self.contract(&rest.graph)? {
                let mut order = vec![x];
                order.extend(w.into_iter().map(|v| rest.host[v]));
                return Ok(Some(order));
            }
        }
        Ok(None)
    }

    fn sphere(&mut self, g: &Graph, d: i64) -> Step<bool> {
        self.tick()?;
        if d < 0 || g.is_empty() {
            return Ok(d == -1 && g.is_empty());
        }
        self.memo(g, Kind::Sphere, d, |s| {
            Ok(s.non_sphere_vertex(g, d)?.is_none() && s.puncture(g)?.is_some())
        })
    }

    fn d_graph(&mut self, g: &Graph, d: i64) -> Step<bool> {
        self.tick()?;
        if d < 0 || g.is_empty() {
            return Ok(false);
        }
        self.memo(g, Kind::DGraph, d, |s| Ok(s.non_sphere_vertex(g, d)?.is_none()))
    }

    /// Every unit sphere is a `(d−1)`-sphere or a `(d−1)`-ball, and at least
    /// one is not a sphere.
    fn with_boundary(&mut self, g: &Graph, d: i64) -> Step<bool> {
        self.tick()?;
        if d < 1 || g.is_empty() {
            return Ok(false);
        }
        self.memo(g, Kind::WithBoundary, d, |s| {
            let mut boundary = false;
            for x in 0..g.n() {
                let sx = g.unit_sphere(x).graph;
                if s.sphere(&sx, d - 1)? {
                    continue;
                }
                if !s.ball(&sx, d - 1)? {
                    return Ok(false);
                }
                boundary = true;
            }
            Ok(boundary)
        })
    }

    fn ball(&mut self, g: &Graph, d: i64) -> Step<bool> {
        self.tick()?;
        if d < 0 {
            return Ok(false);
        }
        if d == 0 {
            return Ok(g.n() == 1);
        }
        self.memo(g, Kind::Ball, d, |s| {
            if !s.with_boundary(g, d)? {
                return Ok(false);
            }
            let b = s.boundary_of(g, d)?;
            s.sphere(&b.graph, d - 1)
        })
    }

    /// Vertices whose unit sphere is not a `(d−1)`-sphere.
    fn boundary_of(&mut self, g: &Graph, d: i64) -> Step<Subgraph> {
        let mut set = Vec::new();
        for x in 0..g.n() {
            if !self.sphere(&g.unit_sphere(x).graph, d - 1)? {
                set.push(x);
            }
        }
        Ok(g.induced_unchecked(&set))
    }

    /// Boundary vertices of `g` taken in dimension `clique_number − 1`, and
    /// whether the search finished. On exhaustion the list holds the vertices
    /// confirmed so far.
    pub fn boundary_vertices(&mut self, g: &Graph) -> (Vec<usize>, bool) {
        let d = clique_number(g) as i64 - 1;
        let mut set = Vec::new();
        for x in 0..g.n() {
            match self.sphere(&g.unit_sphere(x).graph, d - 1) {
                Ok(true) => {}
                Ok(false) => set.push(x),
                Err(Exhausted) => return (set, false),
            }
        }
        (set, true)
    }

    pub fn is_contractible(&mut self, g: &Graph) -> Result<Verdict> {
        let start = self.spent;
        let verdict = match self.contract(g) {
            Ok(Some(w)) => {
                check_euler(g, 1, "contractible graph")?;
                (Answer::Yes, Some(w))
            }
            Ok(None) => (Answer::No, None),
            Err(Exhausted) => (Answer::Inconclusive, None),
        };
        Ok(Verdict {
            answer: verdict.0,
            witness: verdict.1,
            budget_spent: self.spent - start,
        })
    }

    pub fn is_sphere(&mut self, g: &Graph, d: i64) -> Result<Verdict> {
        let start = self.spent;
        let outcome = (|| -> Step<(Answer, Option<Vec<usize>>)> {
            if !self.sphere(g, d)? {
                let failing = if d >= 0 { self.non_sphere_vertex(g, d)? } else { None };
                return Ok((Answer::No, failing.map(|x| vec![x])));
            }
            let witness = if g.is_empty() { None } else { self.puncture(g)? };
            Ok((Answer::Yes, witness))
        })();
        let (answer, witness) = outcome.unwrap_or((Answer::Inconclusive, None));
        if answer == Answer::Yes {
            check_euler(g, 1 + if d % 2 == 0 { 1 } else { -1 }, "sphere")?;
        }
        Ok(Verdict {
            answer,
            witness,
            budget_spent: self.spent - start,
        })
    }

    pub fn classify(&mut self, g: &Graph) -> Result<Classification> {
        let start = self.spent;
        let euler = euler_characteristic(g);
        let d = clique_number(g) as i64 - 1;
        let outcome = (|| -> Step<(Class, Option<Subgraph>)> {
            if d < 0 {
                return Ok((Class::None, None));
            }
            let du = d as usize;
            if self.d_graph(g, d)? {
                return Ok((Class::DGraph(du), None));
            }
            if self.with_boundary(g, d)? {
                let b = self.boundary_of(g, d)?;
                if self.sphere(&b.graph, d - 1)? {
                    return Ok((Class::Ball(du), Some(b)));
                }
                return Ok((Class::WithBoundary(du), Some(b)));
            }
            Ok((Class::None, None))
        })();
        let (class, boundary, conclusive) = match outcome {
            Ok((c, b)) => (c, b, true),
            Err(Exhausted) => (Class::None, None, false),
        };
        if let Class::Ball(_) = class {
            check_euler(g, 1, "ball")?;
        }
        Ok(Classification {
            class,
            conclusive,
            boundary,
            euler,
            budget_spent: self.spent - start,
        })
    }
}

fn check_euler(g: &Graph, expected: i64, what: &str) -> Result<()> {
    let chi = euler_characteristic(g);
    if chi != BigInt::from(expected) {
        return Err(Error::CrossCheck(format!(
            "{what} on {} vertices has Euler characteristic {chi}, expected {expected}",
            g.n()
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    DGraph(usize),
    WithBoundary(usize),
    Ball(usize),
    None,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Class::DGraph(d) => write!(f, "{d}-graph"),
            Class::WithBoundary(d) => write!(f, "{d}-graph with boundary"),
            Class::Ball(d) => write!(f, "{d}-ball"),
            Class::None => f.write_str("none"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub class: Class,
    /// False when the budget ran out; `class` is then `None`.
    pub conclusive: bool,
    /// Boundary subgraph for balls and graphs with boundary.
    pub boundary: Option<Subgraph>,
    pub euler: BigInt,
    pub budget_spent: u64,
}

pub fn is_contractible(g: &Graph, budget: u64) -> Result<Verdict> {
    Searcher::new(budget).is_contractible(g)
}

/// `d = −1` asks for the empty graph.
pub fn is_sphere(g: &Graph, d: i64, budget: u64) -> Result<Verdict> {
    Searcher::new(budget).is_sphere(g, d)
}

pub fn classify(g: &Graph, budget: u64) -> Result<Classification> {
    Searcher::new(budget).classify(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::Generator;
    use crate::refine::barycentric;

    fn gen(s: &str) -> Graph {
        s.parse::<Generator>().unwrap().build().unwrap()
    }

    /// Replays a collapse order: each removed vertex must have a contractible
    /// unit sphere in the remaining graph.
    fn replay(g: &Graph, order: &[usize]) -> bool {
        let mut alive: Vec<usize> = (0..g.n()).collect();
        for (i, &x) in order.iter().enumerate() {
            if i + 1 == order.len() {
                return alive == vec![x];
            }
            let current = g.induced_unchecked(&alive);
            let local = alive.iter().position(|&v| v == x).unwrap();
            if !is_contractible(&current.graph.unit_sphere(local).graph, 10_000).unwrap().is_yes() {
                return false;
            }
            alive.retain(|&v| v != x);
        }
        false
    }

    #[test]
    fn complete_graphs_contract() {
        for n in 1..=6 {
            let v = is_contractible(&gen(&format!("K{n}")), 100).unwrap();
            assert!(v.is_yes());
            assert_eq!(v.witness.unwrap().len(), n);
        }
        assert_eq!(is_contractible(&Graph::empty(0), 10).unwrap().answer, Answer::No);
    }

    #[test]
    fn cycles_do_not_contract() {
        for n in 4..=8 {
            assert_eq!(is_contractible(&gen(&format!("C{n}")), 10_000).unwrap().answer, Answer::No);
        }
        // a triangle is a 2-simplex, hence contractible
        assert!(is_contractible(&gen("C3"), 100).unwrap().is_yes());
    }

    #[test]
    fn refined_triangle_contracts_with_valid_order() {
        let g = barycentric(&gen("K3")).unwrap().graph;
        let v = is_contractible(&g, DEFAULT_BUDGET).unwrap();
        assert!(v.is_yes());
        assert!(replay(&g, v.witness.as_ref().unwrap()));
        let w = is_contractible(&gen("W6"), DEFAULT_BUDGET).unwrap();
        assert!(replay(&gen("W6"), w.witness.as_ref().unwrap()));
    }

    #[test]
    fn memoized_witness_maps_back() {
        // two isomorphic but differently labelled paths share a memo entry
        let mut s = Searcher::new(DEFAULT_BUDGET);
        let p = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let q = Graph::new(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        let a = s.is_contractible(&p).unwrap();
        let b = s.is_contractible(&q).unwrap();
        assert!(replay(&p, a.witness.as_ref().unwrap()));
        assert!(replay(&q, b.witness.as_ref().unwrap()));
    }

    #[test]
    fn sphere_examples() {
        assert!(is_sphere(&Graph::empty(0), -1, 10).unwrap().is_yes());
        assert_eq!(is_sphere(&Graph::empty(1), -1, 10).unwrap().answer, Answer::No);
        assert!(is_sphere(&Graph::empty(2), 0, 10).unwrap().is_yes());
        for n in 4..=8 {
            let v = is_sphere(&gen(&format!("C{n}")), 1, DEFAULT_BUDGET).unwrap();
            assert!(v.is_yes(), "C{n}");
        }
        assert_eq!(is_sphere(&gen("C3"), 1, 1000).unwrap().answer, Answer::No);
        assert!(is_sphere(&gen("octahedron"), 2, DEFAULT_BUDGET).unwrap().is_yes());
        assert!(is_sphere(&gen("icosahedron"), 2, DEFAULT_BUDGET).unwrap().is_yes());
        assert!(is_sphere(&gen("cross:d=3"), 3, DEFAULT_BUDGET).unwrap().is_yes());
        let no = is_sphere(&gen("K4"), 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(no.answer, Answer::No);
        assert_eq!(no.witness, Some(vec![0]));
    }

    #[test]
    fn classifications() {
        let c = |s: &str| classify(&gen(s), DEFAULT_BUDGET).unwrap();
        assert_eq!(c("icosahedron").class, Class::DGraph(2));
        assert_eq!(c("octahedron").class, Class::DGraph(2));
        assert_eq!(c("C6").class, Class::DGraph(1));
        assert_eq!(c("K3").class, Class::None);
        assert_eq!(c("P5").class, Class::Ball(1));
        assert_eq!(c("K2").class, Class::WithBoundary(1));
        assert_eq!(c("K1").class, Class::DGraph(0));
        let b = classify(&barycentric(&gen("K3")).unwrap().graph, DEFAULT_BUDGET).unwrap();
        assert_eq!(b.class, Class::Ball(2));
        let boundary = b.boundary.unwrap().graph;
        assert_eq!((boundary.n(), boundary.edge_count()), (6, 6));
        assert!(boundary.degrees().iter().all(|&d| d == 2) && boundary.is_connected());
        assert_eq!(b.euler, BigInt::from(1));
    }

    #[test]
    fn refinement_keeps_class() {
        for s in ["octahedron", "C5"] {
            let g = gen(s);
            let before = classify(&g, DEFAULT_BUDGET).unwrap().class;
            let after = classify(&barycentric(&g).unwrap().graph, DEFAULT_BUDGET).unwrap().class;
            assert_eq!(before, after, "{s}");
        }
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let g = gen("icosahedron");
        let v = is_sphere(&g, 2, 5).unwrap();
        assert_eq!(v.answer, Answer::Inconclusive);
        assert!(v.budget_spent <= 5);
        let c = classify(&g, 5).unwrap();
        assert!(!c.conclusive);
        assert_eq!(c.class, Class::None);
    }

    #[test]
    fn verdicts_deterministic() {
        let g = barycentric(&gen("K3")).unwrap().graph;
        let a = is_contractible(&g, DEFAULT_BUDGET).unwrap();
        let b = is_contractible(&g, DEFAULT_BUDGET).unwrap();
        assert_eq!(a, b);
    }
}
