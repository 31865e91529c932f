use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use graphdepth::decomp::{construct_cover, construct_cover_power, verify_decomposition, ModuleKind};
use graphdepth::graph::{
    matching_number, max_ordered_matching, min_maximal_matching, Graph,
};
use graphdepth::graph_ideals::{cover_ideal, edge_ideal, symbolic_power_cover};
use graphdepth::harness::report::{EXIT_USAGE, EXIT_VIOLATION};
use graphdepth::harness::{
    enumerate_graphs, parse_graph, run_suite, to_graph6, GraphFilter, ResultCache, Suite, SuiteConfig,
};
use graphdepth::homology::{homological_invariants, hochster_reg_edge_ideal};
use graphdepth::sdepth::{sdepth_exact, DEFAULT_BUDGET};
use graphdepth::{Error, MonomialIdeal};
use serde_json::json;

#[derive(Parser)]
#[command(name = "graphdepth", version, about = "Depth, Stanley depth and regularity of graph ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Edge,
    Cover,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Ideal,
    Quotient,
}

impl From<Kind> for ModuleKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Ideal => ModuleKind::Ideal,
            Kind::Quotient => ModuleKind::Quotient,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Compact,
    Graph6,
}

#[derive(Subcommand)]
enum Command {
    /// Matching numbers and homological invariants of I(G) and J(G).
    Invariants {
        /// Graph file, or inline edge list / compact form / graph6.
        #[arg(long)]
        graph: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the edge or cover ideal, or one of its powers.
    Ideal {
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, default_value_t = 1)]
        power: u32,
        /// Symbolic instead of ordinary power (cover ideal only).
        #[arg(long)]
        symbolic: bool,
    },
    /// Construct a Stanley decomposition of J(G)^k or S/J(G)^k.
    Decompose {
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum)]
        module: Kind,
        #[arg(long, default_value_t = 1)]
        power: u32,
        /// Run the exact checker on the result.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Exact Stanley depth of J(G)^k or S/J(G)^k, or bounds if over budget.
    Sdepth {
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum)]
        module: Kind,
        #[arg(long, default_value_t = 1)]
        power: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run a verification suite over small graphs.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[arg(long, default_value_t = 3)]
        kmax: u32,
        #[arg(long)]
        bipartite_only: bool,
        /// Exit with status 3 when some instance is indeterminate.
        #[arg(long)]
        strict: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// List all labeled graphs on n vertices.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        bipartite: bool,
        #[arg(long)]
        connected: bool,
        #[arg(long, default_value_t = 0)]
        min_edges: usize,
        #[arg(long, value_enum, default_value_t = Format::Compact)]
        format: Format,
    },
}

fn load_graph(spec: &str) -> Result<Graph> {
    let path = Path::new(spec);
    let text = if path.is_file() {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    } else {
        spec.to_string()
    };
    Ok(parse_graph(&text)?)
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn power_of(g: &Graph, which: Which, k: u32, symbolic: bool) -> Result<MonomialIdeal> {
    Ok(match which {
        Which::Edge if symbolic => anyhow::bail!(Error::Input("--symbolic applies to the cover ideal".into())),
        Which::Edge => edge_ideal(g).power(k)?,
        Which::Cover if symbolic => symbolic_power_cover(g, k)?,
        Which::Cover => cover_ideal(g).power(k)?,
    })
}

fn invariants(graph: &str, json_out: Option<&Path>) -> Result<i32> {
    let g = load_graph(graph)?;
    let m = max_ordered_matching(&g);
    let nu = m.len();
    let mut out = json!({
        "graph": g.canonical_string(),
        "n": g.n(),
        "edges": g.edge_count(),
        "bipartite": g.is_bipartite(),
        "nu_o": nu,
        "ordered_matching": m.pairs,
        "matching_number": matching_number(&g),
        "min_maximal_matching": min_maximal_matching(&g),
    });
    println!("graph                 {}", g.canonical_string());
    println!("ν_o                   {nu}  {:?}", m.pairs);
    println!("matching number       {}", out["matching_number"]);
    println!("min maximal matching  {}", out["min_maximal_matching"]);
    if g.is_bipartite() && g.edge_count() > 0 {
        out["ell"] = json!(nu + 1);
        println!("ℓ(J(G)) = ν_o + 1     {}", nu + 1);
    }
    if g.edge_count() > 0 {
        let ie = homological_invariants(&edge_ideal(&g))?;
        let jc = homological_invariants(&cover_ideal(&g))?;
        out["edge_ideal"] = serde_json::to_value(ie)?;
        out["cover_ideal"] = serde_json::to_value(jc)?;
        out["reg_quotient_hochster"] = json!(hochster_reg_edge_ideal(&g)?);
        println!("reg(S/I(G))           {}", ie.reg_quotient);
        println!("pd(S/I(G))            {}", ie.pd_quotient);
        println!("depth(S/I(G))         {}", ie.depth_quotient);
        println!("depth(S/J(G))         {}", jc.depth_quotient);
        println!("pd(S/J(G))            {}", jc.pd_quotient);
    }
    if let Some(p) = json_out {
        write_json(p, &out)?;
    }
    Ok(0)
}

fn decompose(graph: &str, module: Kind, power: u32, verify: bool, json_out: Option<&Path>) -> Result<i32> {
    let g = load_graph(graph)?;
    let kind = ModuleKind::from(module);
    let d = if power == 1 {
        construct_cover(&g, kind)?
    } else {
        construct_cover_power(&g, power, kind)?
    };
    println!("{kind} of {} on {}", d.module.ideal, g.canonical_string());
    for s in &d.spaces {
        println!("  {s}");
    }
    println!("spaces {}  min dimension {}", d.spaces.len(), d.sdepth().map_or("-".into(), |v| v.to_string()));
    let mut code = 0;
    let mut verdict = serde_json::Value::Null;
    if verify {
        match verify_decomposition(&d)? {
            Ok(()) => {
                println!("verified");
                verdict = json!("ok");
            }
            Err(v) => {
                println!("REJECTED: {v:?}");
                verdict = serde_json::to_value(&v)?;
                code = EXIT_VIOLATION;
            }
        }
    }
    if let Some(p) = json_out {
        write_json(p, &json!({ "decomposition": d, "verification": verdict }))?;
    }
    Ok(code)
}

fn sdepth(graph: &str, module: Kind, power: u32, budget: u64, json_out: Option<&Path>) -> Result<i32> {
    let g = load_graph(graph)?;
    let kind = ModuleKind::from(module);
    let ideal = cover_ideal(&g).power(power)?;
    let out = sdepth_exact(&ideal, kind, budget, None)?;
    match out.exact() {
        Some(v) => println!("sdepth = {v}"),
        None => println!("{} ≤ sdepth ≤ {} (budget exceeded)", out.lower, out.upper),
    }
    println!("nodes {}", out.nodes);
    if let Some(w) = &out.witness {
        if let Err(why) = w.verify(&ideal)? {
            println!("witness REJECTED: {why}");
            return Ok(EXIT_VIOLATION);
        }
        println!("witness: {} intervals, verified", w.intervals.len());
    }
    if let Some(p) = json_out {
        write_json(p, &serde_json::to_value(&out)?)?;
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn verify(
    suite: &str,
    nmax: usize,
    kmax: u32,
    bipartite_only: bool,
    strict: bool,
    seed: u64,
    budget: u64,
    json_out: Option<&Path>,
    csv_out: Option<&Path>,
) -> Result<i32> {
    let suite: Suite = suite.parse()?;
    let cfg = SuiteConfig {
        n_max: nmax,
        k_max: kmax,
        budget,
        seed,
        bipartite_only,
        ..SuiteConfig::default()
    };
    let cache = ResultCache::from_env(seed)?;
    let report = run_suite(suite, &cfg, &cache)?;
    let stats = cache.stats();
    eprintln!(
        "cache: {} hits, {} misses, {} spot checks",
        stats.hits, stats.misses, stats.spot_checks
    );
    print!("{}", report.render_table());
    if let Some(p) = json_out {
        report.write_json(p)?;
    }
    if let Some(p) = csv_out {
        report.write_csv(p)?;
    }
    Ok(report.exit_code(strict))
}

fn enumerate(n: usize, filter: GraphFilter, format: Format) -> Result<i32> {
    let graphs = enumerate_graphs(n, filter)?;
    for g in &graphs {
        match format {
            Format::Compact => println!("{}", g.canonical_string()),
            Format::Graph6 => println!("{}", to_graph6(g)?),
        }
    }
    eprintln!("{} graphs", graphs.len());
    Ok(0)
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Invariants { graph, json } => invariants(&graph, json.as_deref()),
        Command::Ideal {
            graph,
            which,
            power,
            symbolic,
        } => {
            let g = load_graph(&graph)?;
            println!("{}", power_of(&g, which, power, symbolic)?);
            Ok(0)
        }
        Command::Decompose {
            graph,
            module,
            power,
            verify,
            json,
        } => decompose(&graph, module, power, verify, json.as_deref()),
        Command::Sdepth {
            graph,
            module,
            power,
            budget,
            json,
        } => sdepth(&graph, module, power, budget, json.as_deref()),
        Command::Verify {
            suite,
            nmax,
            kmax,
            bipartite_only,
            strict,
            seed,
            budget,
            json,
            csv,
        } => verify(
            &suite,
            nmax,
            kmax,
            bipartite_only,
            strict,
            seed,
            budget,
            json.as_deref(),
            csv.as_deref(),
        ),
        Command::Enumerate {
            n,
            bipartite,
            connected,
            min_edges,
            format,
        } => enumerate(
            n,
            GraphFilter {
                bipartite,
                connected,
                min_edges,
            },
            format,
        ),
    }
}

/// Bad input of any kind is a usage error; anything else is reported as a
/// failure.
fn exit_code_for(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<Error>() {
        Some(
            Error::Input(_)
            | Error::Parse { .. }
            | Error::Domain(_)
            | Error::SelfLoop(_)
            | Error::VertexOutOfRange { .. }
            | Error::TooManyVariables { .. },
        ) => EXIT_USAGE,
        _ if err.downcast_ref::<std::io::Error>().is_some() => EXIT_USAGE,
        _ => EXIT_VIOLATION,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e) as u8)
        }
    }
}
