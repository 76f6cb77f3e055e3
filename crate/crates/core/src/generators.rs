//! Named graph families and the generator spec mini-language.
//!
//! Specs are short strings: `K4`, `C12`, `P5` (path), `W6` (wheel with a
//! six-cycle rim), `S3` (star with three leaves), `cross:d=2`, `octahedron`,
//! `icosahedron`, `ER:n=10,p=0.4,seed=7`.
//!
//! Erdős–Rényi graphs draw from PCG64 (`rand_pcg::Pcg64`, the 128-bit state
//! XSL-RR generator with 64-bit output) seeded through `seed_from_u64`. Pairs
//! `(i, j)`, `i < j`, are visited in lexicographic order and each consumes one
//! `u64`; the top 53 bits become a uniform `u` in `[0, 1)` and the edge is kept
//! when `u < p`.

use std::fmt;
use std::str::FromStr;

use rand_core::{Rng, SeedableRng};
use rand_pcg::Pcg64;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    Complete(usize),
    Cycle(usize),
    Path(usize),
    /// Hub joined to every vertex of a rim cycle with this many vertices.
    Wheel(usize),
    /// The `d`-dimensional cross-polytope boundary: `2(d+1)` vertices, all
    /// pairs joined except antipodes `i`, `i+d+1`.
    CrossPolytope(usize),
    /// Center vertex 0 joined to this many leaves.
    Star(usize),
    Icosahedron,
    ErdosRenyi { n: usize, p: f64, seed: u64 },
}

impl Generator {
    pub fn build(&self) -> Result<Graph> {
        let invalid = |msg: &str| Err(Error::InvalidGenerator(format!("{self}: {msg}")));
        let mut edges = Vec::new();
        let n = match *self {
            Generator::Complete(n) => {
                if n == 0 {
                    return invalid("needs at least one vertex");
                }
                edges.extend((0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))));
                n
            }
            Generator::Cycle(n) => {
                if n < 3 {
                    return invalid("a cycle needs at least 3 vertices");
                }
                edges.extend((0..n).map(|i| (i, (i + 1) % n)));
                n
            }
            Generator::Path(n) => {
                if n == 0 {
                    return invalid("needs at least one vertex");
                }
                edges.extend((1..n).map(|i| (i - 1, i)));
                n
            }
            Generator::Wheel(rim) => {
                if rim < 3 {
                    return invalid("the rim needs at least 3 vertices");
                }
                edges.extend((1..=rim).map(|i| (0, i)));
                edges.extend((0..rim).map(|i| (1 + i, 1 + (i + 1) % rim)));
                rim + 1
            }
            Generator::CrossPolytope(d) => {
                let n = 2 * (d + 1);
                edges.extend(
                    (0..n)
                        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                        .filter(|&(i, j)| j != i + d + 1),
                );
                n
            }
            Generator::Star(leaves) => {
                edges.extend((1..=leaves).map(|i| (0, i)));
                leaves + 1
            }
            Generator::Icosahedron => {
                // 0 top, 1..=5 upper ring, 6..=10 lower ring, 11 bottom
                for i in 0..5 {
                    let (u, u_next) = (1 + i, 1 + (i + 1) % 5);
                    let (l, l_next) = (6 + i, 6 + (i + 1) % 5);
                    edges.extend([(0, u), (u, u_next), (u, l), (u, l_next), (l, l_next), (l, 11)]);
                }
                12
            }
            Generator::ErdosRenyi { n, p, seed } => {
                if !(0.0..=1.0).contains(&p) {
                    return invalid("p must lie in [0, 1]");
                }
                let mut rng = Pcg64::seed_from_u64(seed);
                for i in 0..n {
                    for j in i + 1..n {
                        if unit_f64(rng.next_u64()) < p {
                            edges.push((i, j));
                        }
                    }
                }
                n
            }
        };
        Graph::new(n, &edges)
    }
}

fn unit_f64(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Complete(n) => write!(f, "K{n}"),
            Generator::Cycle(n) => write!(f, "C{n}"),
            Generator::Path(n) => write!(f, "P{n}"),
            Generator::Wheel(n) => write!(f, "W{n}"),
            Generator::CrossPolytope(d) => write!(f, "cross:d={d}"),
            Generator::Star(n) => write!(f, "S{n}"),
            Generator::Icosahedron => write!(f, "icosahedron"),
            Generator::ErdosRenyi { n, p, seed } => write!(f, "ER:n={n},p={p},seed={seed}"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::GeneratorSpec(s.to_string());
        let spec = s.trim();
        match spec.to_ascii_lowercase().as_str() {
            "octahedron" => return Ok(Generator::CrossPolytope(2)),
            "icosahedron" => return Ok(Generator::Icosahedron),
            _ => {}
        }
        if let Some((kind, params)) = spec.split_once(':') {
            let mut n = None;
            let mut p = None;
            let mut seed = None;
            let mut d = None;
            for kv in params.split(',') {
                let (key, value) = kv.split_once('=').ok_or_else(bad)?;
                let value = value.trim();
                match key.trim() {
                    "n" => n = Some(value.parse().map_err(|_| bad())?),
                    "p" => p = Some(value.parse().map_err(|_| bad())?),
                    "seed" => seed = Some(value.parse().map_err(|_| bad())?),
                    "d" => d = Some(value.parse().map_err(|_| bad())?),
                    _ => return Err(bad()),
                }
            }
            return match kind.trim().to_ascii_lowercase().as_str() {
                "er" => Ok(Generator::ErdosRenyi {
                    n: n.ok_or_else(bad)?,
                    p: p.ok_or_else(bad)?,
                    seed: seed.unwrap_or(0),
                }),
                "cross" => Ok(Generator::CrossPolytope(d.ok_or_else(bad)?)),
                _ => Err(bad()),
            };
        }
        let (head, digits) = spec.split_at(spec.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
        let k: usize = digits.parse().map_err(|_| bad())?;
        match head {
            "K" => Ok(Generator::Complete(k)),
            "C" => Ok(Generator::Cycle(k)),
            "P" => Ok(Generator::Path(k)),
            "W" => Ok(Generator::Wheel(k)),
            "S" => Ok(Generator::Star(k)),
            _ => Err(bad()),
        }
    }
}
