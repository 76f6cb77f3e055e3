use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use barycentric::complex::{clique_number, clique_vector, euler_characteristic, DimensionCache};
use barycentric::io::{self, PlotSeries, SeriesKind};
use barycentric::operator::{self, barycentric_operator, left_eigenvectors};
use barycentric::refine::{self, RefineOptions, DEFAULT_SIZE_LIMIT};
use barycentric::spectra::{self, SpectralFunction, Spectrum, DEFAULT_TOL};
use barycentric::topology::{Answer, Searcher, DEFAULT_BUDGET};
use barycentric::{Error, Generator, Graph};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;

#[derive(Parser)]
#[command(name = "bary", version, about = "Barycentric refinement, clique data and Laplacian spectra")]
struct Cli {
    /// Directory for cached refinements.
    #[arg(long, env = "BARY_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,

    /// Largest vertex count a refinement may reach.
    #[arg(long, default_value_t = DEFAULT_SIZE_LIMIT, global = true)]
    limit: u64,

    /// Relative residual tolerance of the eigensolver.
    #[arg(long, default_value_t = DEFAULT_TOL, global = true)]
    tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Input {
    /// Generator spec such as K3, C12, W6, octahedron, cross:d=4 or ER:n=10,p=0.4,seed=7.
    #[arg(long = "gen", value_name = "SPEC")]
    generator: Option<Generator>,

    /// Graph file (text edge list or JSON).
    #[arg(long = "graph", value_name = "FILE")]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum OperatorKind {
    Kirchhoff,
    Adjacency,
    Normalized,
    Dirac,
}

#[derive(Subcommand)]
enum Command {
    /// Refine a graph m times and report its clique data.
    Refine {
        #[command(flatten)]
        input: Input,
        #[arg(short, default_value_t = 1)]
        m: usize,
        /// Write the refined graph here.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Eigenvalues of the m-th refinement as CSV, with an optional plot.
    Spectrum {
        #[command(flatten)]
        input: Input,
        #[arg(short, default_value_t = 0)]
        m: usize,
        #[arg(long, value_enum, default_value = "kirchhoff")]
        operator: OperatorKind,
        /// Write the CSV here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Sample F on this many grid points instead of dumping eigenvalues.
        #[arg(long)]
        samples: Option<usize>,
        /// Plot F for refinements 1..=M (default m) into this SVG file.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(short = 'M')]
        max_depth: Option<usize>,
    },
    /// Print the truncated Barycentric operator.
    Operator {
        #[arg(short = 'N', default_value_t = 8)]
        n: usize,
        /// Also list the integer left eigenvectors.
        #[arg(long)]
        eigenvectors: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Check v(G₁) = A v(G) on this graph file.
        #[arg(long, value_name = "FILE", conflicts_with = "verify_gen")]
        verify: Option<PathBuf>,
        /// Check v(G₁) = A v(G) on a generated graph.
        #[arg(long, value_name = "SPEC")]
        verify_gen: Option<Generator>,
    },
    /// Largest jumps of the spectral function.
    Gaps {
        #[command(flatten)]
        input: Input,
        #[arg(short, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value_t = 5)]
        top: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// L¹ distances between consecutive refinements.
    Converge {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'M', default_value_t = 4)]
        max_depth: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Sphere, ball and d-graph recognition.
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(short, default_value_t = 0)]
        m: usize,
        /// Search-node budget.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Refinement invariants from the left eigenvectors of the operator.
    Invariants {
        #[command(flatten)]
        input: Input,
        #[arg(short, default_value_t = 0)]
        m: usize,
        /// Operator truncation; defaults to the clique number.
        #[arg(short = 'N')]
        n: Option<usize>,
    },
}

/// Exit status of a command that ran to completion.
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SizeLimit { .. } => 3,
        Error::NoConvergence(_) | Error::Residual { .. } | Error::CrossCheck(_) => 1,
        _ => 2,
    }
}

fn run(cli: &Cli) -> barycentric::Result<Outcome> {
    match &cli.command {
        Command::Refine {
            input,
            m,
            output,
            format,
        } => cmd_refine(cli, input, *m, output.as_deref(), *format),
        Command::Spectrum {
            input,
            m,
            operator,
            output,
            samples,
            svg,
            max_depth,
        } => cmd_spectrum(cli, input, *m, *operator, output.as_deref(), *samples, svg.as_deref(), *max_depth),
        Command::Operator {
            n,
            eigenvectors,
            format,
            verify,
            verify_gen,
        } => cmd_operator(*n, *eigenvectors, *format, verify.as_deref(), verify_gen.as_ref()),
        Command::Gaps { input, m, top, format } => cmd_gaps(cli, input, *m, *top, *format),
        Command::Converge {
            input,
            max_depth,
            format,
        } => cmd_converge(cli, input, *max_depth, *format),
        Command::Classify { input, m, budget } => cmd_classify(cli, input, *m, *budget),
        Command::Invariants { input, m, n } => cmd_invariants(cli, input, *m, *n),
    }
}

fn load(input: &Input) -> barycentric::Result<Graph> {
    match (&input.generator, &input.file) {
        (Some(g), _) => g.build(),
        (None, Some(path)) => io::read_graph_any(&fs::read_to_string(path)?),
        (None, None) => unreachable!("clap requires one input"),
    }
}

fn refined(cli: &Cli, input: &Input, m: usize) -> barycentric::Result<Graph> {
    let g = load(input)?;
    let opts = RefineOptions {
        cache_dir: cli.cache_dir.as_deref(),
        size_limit: cli.limit,
    };
    Ok(refine::refine_iter(&g, m, &opts)?.graph)
}

fn emit(output: Option<&Path>, text: &str) -> barycentric::Result<()> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_refine(cli: &Cli, input: &Input, m: usize, output: Option<&Path>, format: Format) -> barycentric::Result<Outcome> {
    let g = refined(cli, input, m)?;
    if let Some(path) = output {
        io::write_graph_atomic(&g, path)?;
    }
    let v = clique_vector(&g);
    let chi = euler_characteristic(&g);
    let dim = DimensionCache::new().dimension(&g);
    let dim_f = dim.to_f64().unwrap_or(f64::NAN);
    match format {
        Format::Json => {
            let value = serde_json::json!({
                "depth": m,
                "vertices": g.n(),
                "edges": g.edge_count(),
                "clique_vector": v.counts().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "euler_characteristic": chi.to_string(),
                "dimension": dim.to_string(),
            });
            println!("{value}");
        }
        _ => {
            println!("depth {m}");
            println!("vertices {}", g.n());
            println!("edges {}", g.edge_count());
            println!("clique vector ({v})");
            println!("euler characteristic {chi}");
            println!("dimension {dim} ({dim_f:.6})");
        }
    }
    Ok(Outcome::Pass)
}

fn operator_matrix(g: &Graph, kind: OperatorKind) -> barycentric::Result<spectra::SymMatrix> {
    Ok(match kind {
        OperatorKind::Kirchhoff => spectra::kirchhoff(g),
        OperatorKind::Adjacency => spectra::adjacency(g),
        OperatorKind::Normalized => spectra::normalized_laplacian(g)?,
        OperatorKind::Dirac => spectra::dirac(g),
    })
}

fn is_cycle(g: &Graph) -> bool {
    g.n() >= 3 && g.is_connected() && g.degrees().iter().all(|&d| d == 2)
}

#[allow(clippy::too_many_arguments)]
fn cmd_spectrum(
    cli: &Cli,
    input: &Input,
    m: usize,
    kind: OperatorKind,
    output: Option<&Path>,
    samples: Option<usize>,
    svg: Option<&Path>,
    max_depth: Option<usize>,
) -> barycentric::Result<Outcome> {
    let g = refined(cli, input, m)?;
    let s = spectra::eigenvalues(&operator_matrix(&g, kind)?, cli.tol)?;
    let f = spectra::spectral_function(&s);
    match samples {
        Some(points) => emit(output, &io::write_samples_csv(&f, points))?,
        None => emit(output, &io::spectrum_csv(&s))?,
    }
    let mut outcome = Outcome::Pass;
    if matches!(kind, OperatorKind::Kirchhoff) && is_cycle(&g) {
        let closed = spectra::cycle_spectrum(g.n());
        let dev = s.values().iter().zip(&closed).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        eprintln!("cycle C{}: max deviation from closed form {dev:.3e}", g.n());
        if dev > 1e-8 {
            outcome = Outcome::Fail;
        }
    }
    if let Some(path) = svg {
        let base = load(input)?;
        let top = max_depth.unwrap_or(m).max(1);
        let opts = RefineOptions {
            cache_dir: cli.cache_dir.as_deref(),
            size_limit: cli.limit,
        };
        let mut functions = Vec::new();
        for depth in 1..=top {
            let gm = refine::refine_iter(&base, depth, &opts)?.graph;
            let sm = spectra::eigenvalues(&operator_matrix(&gm, kind)?, cli.tol)?;
            functions.push((depth, spectra::spectral_function(&sm)));
        }
        let limit = spectra::limit_d1;
        let mut series: Vec<PlotSeries<'_>> = functions
            .iter()
            .map(|(depth, f)| PlotSeries {
                label: format!("m={depth}"),
                kind: SeriesKind::Steps(f),
            })
            .collect();
        if clique_number(&base) == 2 && matches!(kind, OperatorKind::Kirchhoff) {
            series.push(PlotSeries {
                label: "4 sin²(πx/2)".into(),
                kind: SeriesKind::Curve(&limit),
            });
        }
        let title = match &input.generator {
            Some(spec) => format!("spectral functions of {spec}"),
            None => "spectral functions".to_string(),
        };
        fs::write(path, io::write_svg(&title, &series))?;
    }
    Ok(outcome)
}

fn cmd_operator(
    n: usize,
    eigenvectors: bool,
    format: Format,
    verify: Option<&Path>,
    verify_gen: Option<&Generator>,
) -> barycentric::Result<Outcome> {
    let a = barycentric_operator(n);
    let vectors = if eigenvectors { left_eigenvectors(&a) } else { Vec::new() };
    match format {
        Format::Json => {
            let value = serde_json::json!({
                "matrix": serde_json::from_str::<serde_json::Value>(&a.to_json())?,
                "eigenvectors": vectors.iter().map(|e| serde_json::json!({
                    "eigenvalue": e.eigenvalue.to_string(),
                    "vector": e.vector.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            });
            println!("{value}");
        }
        _ => {
            print!("{}", a.to_text());
            for e in &vectors {
                let parts: Vec<String> = e.vector.iter().map(|x| x.to_string()).collect();
                println!("eigenvalue {}: ({})", e.eigenvalue, parts.join(","));
            }
        }
    }
    let target = match (verify, verify_gen) {
        (Some(path), _) => Some(io::read_graph_any(&fs::read_to_string(path)?)?),
        (None, Some(spec)) => Some(spec.build()?),
        (None, None) => None,
    };
    if let Some(g) = target {
        let v = clique_vector(&g);
        let predicted = operator::predict_clique_vector(&v, 1);
        let actual = clique_vector(&refine::barycentric(&g)?.graph);
        let pass = predicted == actual;
        println!("verify: v(G) = ({v}), A v(G) = ({predicted}), v(G1) = ({actual}): {}", if pass { "PASS" } else { "FAIL" });
        if !pass {
            return Ok(Outcome::Fail);
        }
    }
    Ok(Outcome::Pass)
}

fn cmd_gaps(cli: &Cli, input: &Input, m: usize, top: usize, format: Format) -> barycentric::Result<Outcome> {
    let g = refined(cli, input, m)?;
    let s = spectra::kirchhoff_spectrum_tol(&g, cli.tol)?;
    let gaps = spectra::gaps(&s, top);
    let n = s.len();
    match format {
        Format::Csv => {
            println!("rank,below,position,lower,upper,jump");
            for (i, gap) in gaps.iter().enumerate() {
                println!(
                    "{},{},{:.6},{:.10},{:.10},{:.10}",
                    i + 1,
                    gap.below,
                    gap.position,
                    gap.lower,
                    gap.upper,
                    gap.jump
                );
            }
        }
        Format::Json => {
            let rows: Vec<_> = gaps
                .iter()
                .map(|gap| {
                    serde_json::json!({
                        "below": gap.below, "position": gap.position,
                        "lower": gap.lower, "upper": gap.upper, "jump": gap.jump,
                    })
                })
                .collect();
            println!("{}", serde_json::json!({ "n": n, "gaps": rows }));
        }
        Format::Text => {
            println!("{n} eigenvalues");
            println!("{:>4} {:>7} {:>10} {:>10} {:>12}", "rank", "below", "k/n", "k/(n-1)", "jump");
            for (i, gap) in gaps.iter().enumerate() {
                let alt = if n > 1 { gap.below as f64 / (n - 1) as f64 } else { 0.0 };
                println!(
                    "{:>4} {:>7} {:>10.6} {:>10.6} {:>12.6}",
                    i + 1,
                    gap.below,
                    gap.position,
                    alt,
                    gap.jump
                );
            }
        }
    }
    Ok(Outcome::Pass)
}

fn cmd_converge(cli: &Cli, input: &Input, max_depth: usize, format: Format) -> barycentric::Result<Outcome> {
    let base = load(input)?;
    let opts = RefineOptions {
        cache_dir: cli.cache_dir.as_deref(),
        size_limit: cli.limit,
    };
    let one_dim = clique_number(&base) == 2;
    let mut functions: Vec<SpectralFunction> = Vec::new();
    for depth in 0..=max_depth {
        let g = refine::refine_iter(&base, depth, &opts)?.graph;
        let s: Spectrum = spectra::kirchhoff_spectrum_tol(&g, cli.tol)?;
        functions.push(spectra::spectral_function(&s));
    }
    let steps: Vec<f64> = functions.windows(2).map(|w| w[1].l1_distance(&w[0])).collect();
    let csv = matches!(format, Format::Csv);
    if csv {
        println!("m,n,step_distance,ratio,limit_distance,monotone_fraction");
    } else {
        println!(
            "{:>3} {:>8} {:>14} {:>8} {:>14} {:>9}",
            "m", "n", "|F(m+1)-F(m)|", "ratio", "|F(m)-F1|", "F(m)<=F(m+1)"
        );
    }
    for (m, f) in functions.iter().enumerate() {
        let step = steps.get(m).copied();
        let ratio = match (m.checked_sub(1).and_then(|p| steps.get(p)), step) {
            (Some(&prev), Some(cur)) if prev > 0.0 => Some(cur / prev),
            _ => None,
        };
        let limit = one_dim.then(|| f.l1_distance_to(spectra::limit_d1));
        let monotone = functions.get(m + 1).map(|next| f.measure_le(next, 1e-9));
        let show = |x: Option<f64>| x.map_or_else(|| "-".to_string(), |x| format!("{x:.6e}"));
        if csv {
            println!("{m},{},{},{},{},{}", f.len(), show(step), show(ratio), show(limit), show(monotone));
        } else {
            println!(
                "{m:>3} {:>8} {:>14} {:>8} {:>14} {:>9}",
                f.len(),
                show(step),
                ratio.map_or("-".into(), |r| format!("{r:.4}")),
                show(limit),
                monotone.map_or("-".into(), |r| format!("{r:.4}"))
            );
        }
    }
    // least squares slope of log distance against m
    let logs: Vec<(f64, f64)> = steps
        .iter()
        .enumerate()
        .filter(|(_, &d)| d > 0.0)
        .map(|(m, &d)| (m as f64, d.ln()))
        .collect();
    if logs.len() >= 2 {
        let k = logs.len() as f64;
        let (sx, sy) = logs.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
        let (mx, my) = (sx / k, sy / k);
        let (num, den) = logs
            .iter()
            .fold((0.0, 0.0), |(n, d), (x, y)| (n + (x - mx) * (y - my), d + (x - mx) * (x - mx)));
        let rate = (num / den).exp();
        let dim = clique_number(&base).saturating_sub(1).max(1);
        eprintln!("fitted rate {rate:.4} (1/(d+1) = {:.4})", 1.0 / (dim + 1) as f64);
    }
    Ok(Outcome::Pass)
}

fn cmd_classify(cli: &Cli, input: &Input, m: usize, budget: u64) -> barycentric::Result<Outcome> {
    let g = refined(cli, input, m)?;
    let mut searcher = Searcher::new(budget);
    let c = searcher.classify(&g)?;
    if c.conclusive {
        println!("class {}", c.class);
    } else {
        println!("class inconclusive (budget {budget} exhausted)");
    }
    println!("euler characteristic {}", c.euler);
    if let Some(b) = &c.boundary {
        let mut vertices = b.host.clone();
        vertices.sort_unstable();
        println!(
            "boundary {} vertices, {} edges: {:?}",
            b.graph.n(),
            b.graph.edge_count(),
            vertices
        );
    }
    let d = clique_number(&g) as i64 - 1;
    let sphere = searcher.is_sphere(&g, d)?;
    print!("{d}-sphere {}", sphere.answer);
    match &sphere.witness {
        Some(w) if sphere.answer == Answer::Yes => println!(", puncture and collapse order {w:?}"),
        Some(w) => println!(", failing vertex {}", w[0]),
        None => println!(),
    }
    let contractible = searcher.is_contractible(&g)?;
    print!("contractible {}", contractible.answer);
    match &contractible.witness {
        Some(w) => println!(", collapse order {w:?}"),
        None => println!(),
    }
    println!("search nodes {}", searcher.spent());
    Ok(if c.conclusive { Outcome::Pass } else { Outcome::Fail })
}

fn cmd_invariants(cli: &Cli, input: &Input, m: usize, n: Option<usize>) -> barycentric::Result<Outcome> {
    let g = refined(cli, input, m)?;
    let v = clique_vector(&g);
    let next = clique_vector(&refine::barycentric(&g)?.graph);
    let size = n.unwrap_or(v.len()).max(v.len()).max(1);
    let a = barycentric_operator(size);
    println!("clique vector ({v})");
    println!("{:>12} {:>24} {:>24}  vector", "eigenvalue", "X(G)", "X(G1)");
    let mut pass = true;
    for e in left_eigenvectors(&a) {
        let x = operator::invariant(&e.vector, &v);
        let x1 = operator::invariant(&e.vector, &next);
        let ok = x1 == &e.eigenvalue * &x;
        pass &= ok;
        let parts: Vec<String> = e.vector.iter().map(|c| c.to_string()).collect();
        println!(
            "{:>12} {:>24} {:>24}  ({}){}",
            e.eigenvalue,
            x,
            x1,
            parts.join(","),
            if ok { "" } else { "  FAIL" }
        );
    }
    println!("scaling X(G1) = lambda X(G): {}", if pass { "PASS" } else { "FAIL" });
    Ok(if pass { Outcome::Pass } else { Outcome::Fail })
}
