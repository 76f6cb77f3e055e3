#![allow(dead_code)]

use barycentric::{Generator, Graph};

pub fn gen(spec: &str) -> Graph {
    spec.parse::<Generator>()
        .unwrap_or_else(|e| panic!("{spec}: {e}"))
        .build()
        .unwrap_or_else(|e| panic!("{spec}: {e}"))
}

/// 25 seeded random graphs with 6 to 10 vertices and density 0.3, 0.5 or 0.7.
pub fn random_specs() -> Vec<String> {
    let ps = ["0.3", "0.5", "0.7"];
    (0..25)
        .map(|i| format!("ER:n={},p={},seed={}", 6 + i % 5, ps[i % 3], 1000 + i))
        .collect()
}

pub fn fixture_specs() -> Vec<String> {
    ["K2", "K3", "K4", "K5", "C4", "C5", "C6", "C7", "C8", "octahedron", "icosahedron", "W6"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

/// Random graphs followed by the named fixtures.
pub fn corpus() -> Vec<(String, Graph)> {
    random_specs()
        .into_iter()
        .chain(fixture_specs())
        .map(|s| {
            let g = gen(&s);
            (s, g)
        })
        .collect()
}
