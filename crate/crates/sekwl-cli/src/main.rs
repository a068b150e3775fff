//! `sekwl` — generate graphs, export substructure encodings, run color
//! refinement, and drive discrimination experiments from the shell.
//!
//! Exit codes: 0 success, 1 domain/load errors, 2 usage errors.
//! Every command is deterministic given its full flag set; all
//! randomness flows from explicit seeds.

use clap::{Args, Parser, Subcommand, ValueEnum};
use sekwl::graph::{
    from_edge_list, from_graph6, generate, to_edge_list, to_graph6, GeneratorSpec, Graph, GraphId,
};
use sekwl::harness::{
    count_substructures, discriminate, walk_separation_experiment, AlgorithmSpec, CountMethod,
    SeparationConfig,
};
use sekwl::refine::{khop_wl, sek_wl, subgraph_wl, trace, wl1, FeatureParams, SubgraphVariant};
use sekwl::walk::{encode_graph, features_sidecar, write_features_csv, Agg, EncodeParams, WalkScope};
use sekwl::Error;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "sekwl", version, about = "Graph refinement and discrimination toolkit")]
struct Cli {
    /// Worker threads (default: all cores). Output content never
    /// depends on this.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Default seed for generator specs that omit seed=...
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph as an edge list or graph6
    Generate(GenerateArgs),
    /// Export per-node substructure encodings as CSV (+ JSON sidecar)
    Encode(EncodeArgs),
    /// Run one color-refinement algorithm and emit its trace as JSON
    Refine(RefineArgs),
    /// Compare two graphs under a suite of refinement algorithms
    Discriminate(DiscriminateArgs),
    /// Count triangles, tailed triangles, 3-stars, and 4-cycles
    Count(CountArgs),
    /// Sample random regular graph pairs and measure how often 2K-step
    /// self-return vectors separate roots with differing layer edge
    /// configurations
    WalkSeparation(WalkSeparationArgs),
    /// Check distance-regularity and print the intersection array
    IntersectionArray(IntersectionArrayArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FileFormat {
    /// Edge list (.el)
    El,
    /// graph6 (.g6)
    G6,
}

#[derive(Args)]
struct GenerateArgs {
    /// Generator spec, e.g. rook4x4 or random_regular:n=100,r=3,seed=7
    /// (join specs with '+' for a disjoint union)
    spec: String,
    /// Output path; format inferred from the extension
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Format override (default: by extension, else edge list)
    #[arg(long, value_enum)]
    format: Option<FileFormat>,
}

#[derive(Args)]
struct EncodeArgs {
    /// Input graph (.el or .g6)
    graph: PathBuf,
    /// Hop radius K
    #[arg(short = 'K', long, default_value_t = 2)]
    hops: usize,
    /// Walk length l
    #[arg(short = 'l', long, default_value_t = 4)]
    steps: usize,
    #[arg(long, value_enum, default_value_t = AggArg::Mean)]
    agg: AggArg,
    /// Walk scope: whole graph, or confined to each node's ego-network
    #[arg(long, value_enum, default_value_t = ScopeArg::Graph)]
    scope: ScopeArg,
    /// Output CSV path; the JSON sidecar lands next to it as
    /// <out>.json. Without it the CSV goes to stdout.
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Input format override
    #[arg(long, value_enum)]
    format: Option<FileFormat>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AggArg {
    Mean,
    Sum,
}

impl From<AggArg> for Agg {
    fn from(a: AggArg) -> Agg {
        match a {
            AggArg::Mean => Agg::Mean,
            AggArg::Sum => Agg::Sum,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    Graph,
    Ego,
}

impl From<ScopeArg> for WalkScope {
    fn from(s: ScopeArg) -> WalkScope {
        match s {
            ScopeArg::Graph => WalkScope::Graph,
            ScopeArg::Ego => WalkScope::Ego,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Wl1,
    Khop,
    Subgraph,
    Sek,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Encoded,
    Nested,
}

#[derive(Args)]
struct RefineArgs {
    /// Input graph (.el or .g6)
    graph: PathBuf,
    #[arg(long, value_enum)]
    algorithm: AlgorithmArg,
    /// Hop radius K (khop, subgraph, sek)
    #[arg(short = 'K', long, default_value_t = 2)]
    hops: usize,
    /// Walk length l for the substructure encoding (subgraph encoded, sek)
    #[arg(short = 'l', long, default_value_t = 4)]
    steps: usize,
    /// Ego radius for the substructure encoding
    #[arg(long, default_value_t = 1)]
    feature_radius: usize,
    #[arg(long, value_enum, default_value_t = AggArg::Mean)]
    agg: AggArg,
    /// Subgraph realization
    #[arg(long, value_enum, default_value_t = VariantArg::Nested)]
    variant: VariantArg,
    /// Maximum refinement rounds T
    #[arg(short = 'T', long, default_value_t = 10)]
    rounds: usize,
    #[arg(short, long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FileFormat>,
}

#[derive(Args)]
struct DiscriminateArgs {
    graph1: PathBuf,
    graph2: PathBuf,
    /// Comma-separated algorithm suite, e.g.
    /// wl1,khop:K=2,sek:K=2,l=6
    #[arg(long)]
    suite: String,
    #[arg(short = 'T', long, default_value_t = 10)]
    rounds: usize,
    #[arg(short, long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FileFormat>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    ClosedForm,
    Enumerate,
    Both,
}

#[derive(Args)]
struct CountArgs {
    graph: PathBuf,
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    method: MethodArg,
    #[arg(short, long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FileFormat>,
}

#[derive(Args)]
struct WalkSeparationArgs {
    #[arg(short, long)]
    n: usize,
    #[arg(short, long)]
    r: usize,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Per-trial JSONL output path (one trial per line)
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct IntersectionArrayArgs {
    graph: PathBuf,
    #[arg(long, value_enum)]
    format: Option<FileFormat>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Generate(args) => cmd_generate(args, cli.seed),
        Command::Encode(args) => cmd_encode(args),
        Command::Refine(args) => cmd_refine(args),
        Command::Discriminate(args) => cmd_discriminate(args),
        Command::Count(args) => cmd_count(args),
        Command::WalkSeparation(args) => cmd_walk_separation(args, cli.seed),
        Command::IntersectionArray(args) => cmd_intersection_array(args),
    }
}

fn format_for(path: Option<&Path>, flag: Option<FileFormat>) -> FileFormat {
    if let Some(f) = flag {
        return f;
    }
    match path.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
        Some("g6") => FileFormat::G6,
        _ => FileFormat::El,
    }
}

fn load_graph(path: &Path, flag: Option<FileFormat>) -> Result<(GraphId, Graph), Error> {
    let bytes = fs::read(path)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
    let label = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("graph")
        .to_string();
    let graph = match format_for(Some(path), flag) {
        FileFormat::G6 => {
            let mut graphs = from_graph6(&bytes)?;
            if graphs.len() != 1 {
                return Err(Error::Domain(format!(
                    "{} holds {} graphs, expected exactly one",
                    path.display(),
                    graphs.len()
                )));
            }
            graphs.pop().unwrap()
        }
        FileFormat::El => {
            let load = from_edge_list(bytes.as_slice())?;
            if load.duplicate_edges > 0 || load.self_loops > 0 {
                eprintln!(
                    "warning: dropped {} duplicate edge(s) and {} self-loop(s) from {}",
                    load.duplicate_edges,
                    load.self_loops,
                    path.display()
                );
            }
            load.graph
        }
    };
    Ok((GraphId::new(label, path.display().to_string()), graph))
}

fn emit(out: Option<&Path>, payload: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, payload).map_err(Error::Io),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(payload.as_bytes()).map_err(Error::Io)
        }
    }
}

fn cmd_generate(args: GenerateArgs, default_seed: u64) -> Result<(), Error> {
    let spec = GeneratorSpec::parse(&args.spec, default_seed)?;
    let graph = generate(&spec)?;
    let payload = match format_for(args.out.as_deref(), args.format) {
        FileFormat::G6 => {
            let mut s = to_graph6(&graph)?;
            s.push('\n');
            s
        }
        FileFormat::El => {
            let mut buf = Vec::new();
            to_edge_list(&graph, &mut buf)?;
            String::from_utf8(buf).expect("edge lists are ASCII")
        }
    };
    emit(args.out.as_deref(), &payload)
}

fn cmd_encode(args: EncodeArgs) -> Result<(), Error> {
    let (id, graph) = load_graph(&args.graph, args.format)?;
    let params = EncodeParams::new(args.hops, args.steps)
        .with_agg(args.agg.into())
        .with_scope(args.scope.into());
    let features = encode_graph(&graph, &params);
    let mut csv = Vec::new();
    write_features_csv(&features, params.hops, params.steps, &mut csv)?;
    let csv = String::from_utf8(csv).expect("CSV is ASCII");
    match &args.out {
        Some(path) => {
            fs::write(path, &csv)?;
            let sidecar_path = path.with_extension(match path.extension().and_then(|e| e.to_str())
            {
                Some(ext) => format!("{ext}.json"),
                None => "json".to_string(),
            });
            let sidecar = features_sidecar(&id.label, &params);
            fs::write(&sidecar_path, format!("{}\n", serde_json::to_string_pretty(&sidecar)?))?;
            Ok(())
        }
        None => emit(None, &csv),
    }
}

fn cmd_refine(args: RefineArgs) -> Result<(), Error> {
    let (id, graph) = load_graph(&args.graph, args.format)?;
    let feat = FeatureParams {
        radius: args.feature_radius,
        steps: args.steps,
        agg: args.agg.into(),
        scope: WalkScope::Ego,
        quant_digits: 9,
    };
    let (label, params, result) = match args.algorithm {
        AlgorithmArg::Wl1 => (
            "wl1".to_string(),
            serde_json::json!({ "rounds": args.rounds }),
            wl1(&graph, args.rounds),
        ),
        AlgorithmArg::Khop => (
            "khop".to_string(),
            serde_json::json!({ "K": args.hops, "rounds": args.rounds }),
            khop_wl(&graph, args.hops, args.rounds),
        ),
        AlgorithmArg::Subgraph => {
            let (variant, variant_name) = match args.variant {
                VariantArg::Encoded => (SubgraphVariant::Encoded(feat), "encoded"),
                VariantArg::Nested => (SubgraphVariant::Nested, "nested"),
            };
            (
                "subgraph".to_string(),
                serde_json::json!({
                    "K": args.hops,
                    "variant": variant_name,
                    "steps": args.steps,
                    "feature_radius": args.feature_radius,
                    "rounds": args.rounds,
                }),
                subgraph_wl(&graph, args.hops, &variant, args.rounds),
            )
        }
        AlgorithmArg::Sek => (
            "sek".to_string(),
            serde_json::json!({
                "K": args.hops,
                "steps": args.steps,
                "feature_radius": args.feature_radius,
                "agg": feat.agg.to_string(),
                "rounds": args.rounds,
            }),
            sek_wl(&graph, args.hops, &feat, args.rounds),
        ),
    };
    let mut t = trace(&result, &label, params);
    t.params["graph"] = serde_json::json!(id.label);
    let payload = format!("{}\n", serde_json::to_string_pretty(&t)?);
    emit(args.out.as_deref(), &payload)
}

fn cmd_discriminate(args: DiscriminateArgs) -> Result<(), Error> {
    let (id1, g1) = load_graph(&args.graph1, args.format)?;
    let (id2, g2) = load_graph(&args.graph2, args.format)?;
    let suite = AlgorithmSpec::parse_suite(&args.suite)?;
    let report = discriminate((&id1, &g1), (&id2, &g2), &suite, args.rounds)?;
    let payload = format!("{}\n", serde_json::to_string_pretty(&report)?);
    emit(args.out.as_deref(), &payload)
}

fn cmd_count(args: CountArgs) -> Result<(), Error> {
    let (id, graph) = load_graph(&args.graph, args.format)?;
    let payload = match args.method {
        MethodArg::ClosedForm => {
            let counts = count_substructures(&graph, CountMethod::ClosedForm)?;
            serde_json::json!({ "graph": id.label, "method": "closed_form", "counts": counts })
        }
        MethodArg::Enumerate => {
            let counts = count_substructures(&graph, CountMethod::Enumerate)?;
            serde_json::json!({ "graph": id.label, "method": "enumerate", "counts": counts })
        }
        MethodArg::Both => {
            let closed = count_substructures(&graph, CountMethod::ClosedForm)?;
            let brute = count_substructures(&graph, CountMethod::Enumerate)?;
            serde_json::json!({
                "graph": id.label,
                "closed_form": closed,
                "enumerate": brute,
                "agree": closed == brute,
            })
        }
    };
    let payload = format!("{}\n", serde_json::to_string_pretty(&payload)?);
    emit(args.out.as_deref(), &payload)
}

fn cmd_walk_separation(args: WalkSeparationArgs, seed: u64) -> Result<(), Error> {
    let cfg = SeparationConfig {
        n: args.n,
        r: args.r,
        epsilon: args.epsilon,
        trials: args.trials,
        seed,
    };
    let (trials, summary) = walk_separation_experiment(&cfg)?;
    if let Some(path) = &args.out {
        let mut lines = String::new();
        for t in &trials {
            lines.push_str(&serde_json::to_string(t)?);
            lines.push('\n');
        }
        fs::write(path, lines)?;
    }
    println!(
        "n={} r={} epsilon={} trials={} seed={}",
        summary.n, summary.r, summary.epsilon, summary.trials, summary.seed
    );
    println!(
        "hop bound K={}  walk steps 2K={}",
        summary.k_bound, summary.walk_steps
    );
    println!(
        "configuration-differing trials: {:>4}    separated: {:>4}    rate: {:.4}",
        summary.config_differing, summary.separated, summary.separation_rate
    );
    println!(
        "edge-count collisions:          {:>4}    collision rate: {:.4}",
        summary.collisions, summary.collision_rate
    );
    Ok(())
}

fn cmd_intersection_array(args: IntersectionArrayArgs) -> Result<(), Error> {
    let (_, graph) = load_graph(&args.graph, args.format)?;
    match sekwl::ego::intersection_array(&graph)? {
        Some(ia) => println!("{ia}"),
        None => println!("not distance-regular"),
    }
    Ok(())
}
