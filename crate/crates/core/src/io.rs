//! File formats: graph text and JSON, spectrum and sample CSV, SVG plots.
//!
//! Graph text format: the first non-comment line is the vertex count, every
//! further line is an edge `i j`, and lines starting with `#` are comments.
//! Refinement labels travel in `#@ <vertex> <parent vertices…>` comment lines,
//! which other readers skip as ordinary comments.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::spectra::{Spectrum, SpectralFunction};

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::with_capacity(16 * (g.edge_count() + 1));
    writeln!(out, "{}", g.n()).unwrap();
    for (i, j) in g.edges() {
        writeln!(out, "{i} {j}").unwrap();
    }
    if let Some(labels) = g.labels() {
        for (v, label) in labels.iter().enumerate() {
            write!(out, "#@ {v}").unwrap();
            for p in label.as_slice() {
                write!(out, " {p}").unwrap();
            }
            out.push('\n');
        }
    }
    out
}

pub fn read_graph(text: &str) -> Result<Graph> {
    let parse_err = |line: usize, msg: String| Error::Parse { line: line + 1, msg };
    let mut n = None;
    let mut edges = Vec::new();
    let mut labels: Vec<(usize, VertexSet)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix("#@") {
            let mut nums = rest.split_whitespace().map(|t| {
                t.parse::<usize>()
                    .map_err(|e| parse_err(lineno, format!("bad label entry `{t}`: {e}")))
            });
            let v = nums
                .next()
                .ok_or_else(|| parse_err(lineno, "empty label line".into()))??;
            let set = nums.collect::<Result<Vec<_>>>()?;
            let set = VertexSet::new(set).map_err(|e| parse_err(lineno, e.to_string()))?;
            labels.push((v, set));
            continue;
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let num = |t: &str| {
            t.parse::<usize>()
                .map_err(|e| parse_err(lineno, format!("bad integer `{t}`: {e}")))
        };
        match (n, fields.as_slice()) {
            (None, [count]) => n = Some(num(count)?),
            (None, _) => return Err(parse_err(lineno, "expected the vertex count".into())),
            (Some(_), [i, j]) => edges.push((num(i)?, num(j)?)),
            (Some(_), _) => return Err(parse_err(lineno, "expected an edge `i j`".into())),
        }
    }
    let n = n.ok_or_else(|| parse_err(0, "missing vertex count".into()))?;
    let g = Graph::new(n, &edges)?;
    if labels.is_empty() {
        return Ok(g);
    }
    if labels.len() != n || labels.iter().enumerate().any(|(i, (v, _))| *v != i) {
        return Err(parse_err(0, "labels must cover every vertex in order".into()));
    }
    Ok(g.with_labels(labels.into_iter().map(|(_, s)| s).collect()))
}

pub fn read_graph_file(path: &Path) -> Result<Graph> {
    read_graph(&fs::read_to_string(path)?)
}

/// Writes through a temporary file in the same directory and renames it into
/// place, so readers only ever see complete files.
pub fn write_graph_atomic(g: &Graph, path: &Path) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(write_graph(g).as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// SHA-256 of the graph's text serialization, lowercase hex.
pub fn content_hash(g: &Graph) -> String {
    hex::encode(Sha256::digest(write_graph(g).as_bytes()))
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    n: usize,
    edges: Vec<[usize; 2]>,
}

pub fn write_graph_json(g: &Graph) -> String {
    serde_json::to_string(&JsonGraph {
        n: g.n(),
        edges: g.edges().map(|(i, j)| [i, j]).collect(),
    })
    .expect("plain data serializes")
}

pub fn read_graph_json(text: &str) -> Result<Graph> {
    let j: JsonGraph = serde_json::from_str(text)?;
    let edges: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
    Graph::new(j.n, &edges)
}

/// Picks the reader by the first non-blank character.
pub fn read_graph_any(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        read_graph_json(text)
    } else {
        read_graph(text)
    }
}

/// `index,eigenvalue` rows with 17 significant digits, which round-trip every
/// `f64` exactly.
pub fn write_spectrum_csv(values: &[f64]) -> String {
    let mut out = String::from("index,eigenvalue\n");
    for (i, v) in values.iter().enumerate() {
        writeln!(out, "{i},{v:.16e}").unwrap();
    }
    out
}

pub fn read_spectrum_csv(text: &str) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with("index") {
            continue;
        }
        let (_, v) = line.split_once(',').ok_or_else(|| Error::Parse {
            line: lineno + 1,
            msg: "expected `index,eigenvalue`".into(),
        })?;
        values.push(v.trim().parse().map_err(|e| Error::Parse {
            line: lineno + 1,
            msg: format!("bad eigenvalue `{v}`: {e}"),
        })?);
    }
    Ok(values)
}

pub fn spectrum_csv(s: &Spectrum) -> String {
    write_spectrum_csv(s.values())
}

/// `x,F(x)` at `points` evenly spaced grid points on `[0, 1]`.
pub fn write_samples_csv(f: &SpectralFunction, points: usize) -> String {
    let mut out = String::from("x,F(x)\n");
    for i in 0..points {
        let x = if points == 1 { 1.0 } else { i as f64 / (points - 1) as f64 };
        writeln!(out, "{x:.16e},{:.16e}", f.eval(x)).unwrap();
    }
    out
}

/// One curve of an SVG plot.
pub struct PlotSeries<'a> {
    pub label: String,
    pub kind: SeriesKind<'a>,
}

pub enum SeriesKind<'a> {
    Steps(&'a SpectralFunction),
    Curve(&'a dyn Fn(f64) -> f64),
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
];

/// Plots functions on `[0, 1]` with a shared y range starting at the smallest
/// value; step functions are drawn as horizontal runs joined by risers.
pub fn write_svg(title: &str, series: &[PlotSeries<'_>]) -> String {
    let (w, h, margin) = (640.0, 420.0, 50.0);
    let curve_points = 400;
    let sampled: Vec<Vec<(f64, f64)>> = series
        .iter()
        .map(|s| match &s.kind {
            SeriesKind::Steps(f) => {
                let n = f.len();
                let mut pts = Vec::with_capacity(2 * n);
                for (i, &v) in f.values().iter().enumerate() {
                    pts.push((i as f64 / n as f64, v));
                    pts.push(((i + 1) as f64 / n as f64, v));
                }
                pts
            }
            SeriesKind::Curve(c) => (0..=curve_points)
                .map(|i| {
                    let x = i as f64 / curve_points as f64;
                    (x, c(x))
                })
                .collect(),
        })
        .collect();
    let finite = sampled.iter().flatten().map(|p| p.1).filter(|v| v.is_finite());
    let (mut ymin, mut ymax) = finite.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
        (a.min(v), b.max(v))
    });
    if !ymin.is_finite() {
        (ymin, ymax) = (0.0, 1.0);
    }
    if ymax <= ymin {
        ymax = ymin + 1.0;
    }
    let sx = |x: f64| margin + x * (w - 2.0 * margin);
    let sy = |y: f64| h - margin - (y - ymin) / (ymax - ymin) * (h - 2.0 * margin);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
        w / 2.0,
        escape(title)
    )
    .unwrap();
    let (x0, x1, y0, y1) = (sx(0.0), sx(1.0), sy(ymin), sy(ymax));
    writeln!(out, r#"<path d="M{x0:.1},{y1:.1} L{x0:.1},{y0:.1} L{x1:.1},{y0:.1}" stroke="black" fill="none"/>"#).unwrap();
    for i in 0..=5 {
        let t = i as f64 / 5.0;
        let (px, py) = (sx(t), sy(ymin + t * (ymax - ymin)));
        writeln!(out, r#"<line x1="{px:.1}" y1="{y0:.1}" x2="{px:.1}" y2="{:.1}" stroke="black"/>"#, y0 + 5.0).unwrap();
        writeln!(
            out,
            r#"<text x="{px:.1}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="middle">{t:.1}</text>"#,
            y0 + 18.0
        )
        .unwrap();
        writeln!(out, r#"<line x1="{:.1}" y1="{py:.1}" x2="{x0:.1}" y2="{py:.1}" stroke="black"/>"#, x0 - 5.0).unwrap();
        writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="end">{:.3}</text>"#,
            x0 - 8.0,
            py + 4.0,
            ymin + t * (ymax - ymin)
        )
        .unwrap();
    }
    for (k, (s, pts)) in series.iter().zip(&sampled).enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let mut points = String::with_capacity(pts.len() * 16);
        for &(x, y) in pts.iter().filter(|p| p.1.is_finite()) {
            write!(points, "{:.2},{:.2} ", sx(x), sy(y)).unwrap();
        }
        writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.2"/>"#,
            points.trim_end()
        )
        .unwrap();
        let ly = margin + 16.0 * k as f64;
        writeln!(
            out,
            r#"<text x="{:.1}" y="{ly:.1}" font-family="sans-serif" font-size="11" fill="{color}">{}</text>"#,
            x0 + 10.0,
            escape(&s.label)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
