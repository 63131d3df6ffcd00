use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use upoly_core::constructions::{self as cons, ConstructionError};
use upoly_core::graph::GraphJson;
use upoly_core::invariants::{self as inv, InvariantError, WOptions};
use upoly_core::reconstruction::{self as rec, ReconstructionError};
use upoly_core::search::{self, Level, SearchError};
use upoly_core::{GraphError, Limits, RootedTree, UPolynomial};

/// Exact U-, W- and rooted U-polynomials of graphs and trees.
#[derive(Debug, Parser)]
#[command(name = "upoly", version)]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(flatten)]
    caps: Caps,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
struct Caps {
    /// Edge cap for subset expansion
    #[arg(long, env = "UPOLY_CAP_EDGES", value_parser = positive, global = true)]
    cap_edges: Option<usize>,
    /// Edge cap for deletion–contraction
    #[arg(long, value_parser = positive, global = true)]
    cap_recursion: Option<usize>,
    /// Largest k for A_k/B_k
    #[arg(long, value_parser = positive, global = true)]
    cap_family: Option<usize>,
    /// Largest k or l for Y/Z pairs
    #[arg(long, value_parser = positive, global = true)]
    cap_pair: Option<usize>,
    /// Vertex cap for rooted-tree enumeration
    #[arg(long, value_parser = positive, global = true)]
    cap_rooted: Option<usize>,
    /// Vertex cap for free-tree enumeration
    #[arg(long, value_parser = positive, global = true)]
    cap_free: Option<usize>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("caps must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

impl Caps {
    fn limits(&self) -> Limits {
        let d = Limits::default();
        Limits {
            subset_edges: self.cap_edges.unwrap_or(d.subset_edges),
            recursion_edges: self.cap_recursion.unwrap_or(d.recursion_edges),
            family_index: self.cap_family.unwrap_or(d.family_index),
            pair_index: self.cap_pair.unwrap_or(d.pair_index),
            rooted_vertices: self.cap_rooted.unwrap_or(d.rooted_vertices),
            free_vertices: self.cap_free.unwrap_or(d.free_vertices),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute an invariant of a tree or graph
    Compute(ComputeArgs),
    /// Emit A_k, B_k, Y_{k,l} or Z_{k,l}
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        k: usize,
        /// Second index, required for y and z
        #[arg(long)]
        l: Option<usize>,
    },
    /// Compare U(Y_{k,l}) with U(Z_{k,l})
    VerifyPair {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// Check the A/B difference, D-transform and pair difference identities
    VerifyIdentities {
        /// Largest k for the A_k/B_k difference
        #[arg(long, default_value_t = 4)]
        max_k: usize,
        /// Largest k and l for the pair difference
        #[arg(long, default_value_t = 2)]
        max_pair: usize,
        /// Random trees per index for the D-transform identity
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rebuild a rooted tree from its rooted U-polynomial
    Reconstruct {
        /// Polynomial file (JSON or text), or - for stdin
        #[arg(long)]
        poly: PathBuf,
    },
    /// Find free trees sharing a (truncated) U-polynomial
    Scan {
        #[arg(long)]
        n_max: usize,
        /// Truncation level m, or "full"
        #[arg(long, default_value = "full")]
        level: Level,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Smallest collision size at level m next to the constructive bound
    Phi {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Debug, Args)]
struct ComputeArgs {
    /// Rooted tree file (JSON or level text), or - for stdin
    #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
    tree: Option<PathBuf>,
    /// Graph file (JSON with optional root and weights), or - for stdin
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Invariant::U)]
    invariant: Invariant,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    strategy: Method,
    /// Keep partitions of length at most m + 1
    #[arg(long)]
    truncate: Option<usize>,
    /// Keep partitions whose parts are at most k
    #[arg(long)]
    restrict: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Invariant {
    U,
    URooted,
    W,
    Chromatic,
    ChromaticRooted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Fast for trees, subset otherwise
    Auto,
    Fast,
    Subset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    A,
    B,
    Y,
    Z,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl Failure {
    fn named(name: &str, e: impl std::fmt::Display) -> Self {
        Failure::Usage(format!("{name}: {e}"))
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        let name = match &e {
            GraphError::EndpointOutOfRange { .. } => "EndpointOutOfRange",
            GraphError::EdgeOutOfRange { .. } => "EdgeOutOfRange",
            GraphError::VertexOutOfRange { .. } => "VertexOutOfRange",
            GraphError::InvalidWeights => "InvalidWeights",
            GraphError::LoopContraction(_) => "LoopContraction",
            GraphError::NotATree(_) => "NotATree",
            GraphError::Parse { .. } => "ParseError",
        };
        Failure::named(name, e)
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::CapExceeded { .. } => Failure::named("CapExceeded", e),
            InvariantError::Graph(g) => g.into(),
        }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::CapExceeded { .. } => Failure::named("CapExceeded", e),
            ConstructionError::InvalidArgument(_) => Failure::named("InvalidArgument", e),
            ConstructionError::ReportedFailure(_) => Failure::Verification(format!("ReportedFailure: {e}")),
        }
    }
}

impl From<ReconstructionError> for Failure {
    fn from(e: ReconstructionError) -> Self {
        match e {
            ReconstructionError::Malformed(_) => Failure::named("Malformed", e),
            ReconstructionError::CapExceeded { .. } => Failure::named("CapExceeded", e),
            ReconstructionError::ReconstructionFailed(_) => {
                Failure::Verification(format!("ReconstructionFailed: {e}"))
            }
        }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::CapExceeded { .. } => Failure::named("CapExceeded", e),
            SearchError::ThreadPool(_) => Failure::named("ThreadPool", e),
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::named("Io", e))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::named("Io", format!("{}: {e}", path.display())))
}

fn read_poly(path: &Path) -> Result<UPolynomial, Failure> {
    let s = read_input(path)?;
    let parsed = if s.trim_start().starts_with('{') {
        UPolynomial::from_json(&s)
    } else {
        s.trim().parse()
    };
    parsed.map_err(|e| Failure::named("ParseError", e))
}

/// Output of one run: whole text, plus whether a verification check failed.
struct Output {
    text: String,
    verified: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, verified: true }
    }
}

fn poly_out(p: &UPolynomial, format: Format) -> String {
    match format {
        Format::Json => p.to_json(),
        Format::Text => p.to_string(),
    }
}

fn tree_out(t: &RootedTree, format: Format) -> String {
    match format {
        Format::Json => t.to_json(),
        Format::Text => t.to_level_text(),
    }
}

fn compute(args: &ComputeArgs, format: Format, limits: &Limits) -> Result<Output, Failure> {
    let source = args.tree.as_ref().or(args.graph.as_ref()).expect("clap requires one");
    let input = GraphJson::parse(&read_input(source)?)?;
    if args.tree.is_some() {
        input.tree()?;
    }
    let graph = input.graph()?;
    let fast = match args.strategy {
        Method::Auto => graph.is_tree(),
        Method::Fast => true,
        Method::Subset => false,
    };
    let rooted = matches!(args.invariant, Invariant::URooted | Invariant::ChromaticRooted);
    if (args.truncate.is_some() || args.restrict.is_some()) && rooted {
        return Err(Failure::Usage("--truncate and --restrict apply to unrooted invariants only".into()));
    }
    let p = match args.invariant {
        Invariant::U if fast => inv::u_tree(&input.tree()?),
        Invariant::U => inv::u_polynomial_with(&graph, limits.subset_edges)?,
        Invariant::URooted => {
            let strategy = if fast { inv::Strategy::Fast } else { inv::Strategy::Subset };
            inv::u_rooted_with(&input.rooted()?, strategy, limits.subset_edges)?
        }
        Invariant::W => {
            let options = WOptions {
                max_edges: limits.recursion_edges,
                memoize: true,
            };
            inv::w_polynomial_with(&input.weighted()?, &options)?
        }
        Invariant::Chromatic | Invariant::ChromaticRooted => {
            let root = rooted.then(|| input.root.unwrap_or(0));
            let x = inv::chromatic_symmetric_with(&graph, root, limits.subset_edges)?;
            let text = match format {
                Format::Json => x.to_json(),
                Format::Text => x.to_string(),
            };
            return Ok(Output::ok(text));
        }
    };
    let mut p = p;
    if let Some(m) = args.truncate {
        p = p.truncate_length(m).map_err(|e| Failure::named("PolyError", e))?;
    }
    if let Some(k) = args.restrict {
        p = p.restrict_part_size(k).map_err(|e| Failure::named("PolyError", e))?;
    }
    Ok(Output::ok(poly_out(&p, format)))
}

fn construct(family: Family, k: usize, l: Option<usize>, format: Format, limits: &Limits) -> Result<Output, Failure> {
    let t = match family {
        Family::A => cons::build_ab_with(k, limits)?.0,
        Family::B => cons::build_ab_with(k, limits)?.1,
        Family::Y | Family::Z => {
            let l = l.ok_or_else(|| Failure::Usage("--l is required for families y and z".into()))?;
            let (y, z) = cons::build_yz_with(k, l, limits)?;
            if family == Family::Y {
                y
            } else {
                z
            }
        }
    };
    Ok(Output::ok(tree_out(&t, format)))
}

fn verify_pair(k: usize, l: usize, format: Format, limits: &Limits) -> Result<Output, Failure> {
    let r = cons::verify_pair_with(k, l, limits)?;
    let text = match format {
        Format::Json => r.to_json(),
        Format::Text => format!(
            "k={} l={} n={} agree_upto={} iso_free={} iso_rooted={} identities_ok={}\nfirst_diff: {}",
            r.k, r.l, r.n, r.agree_upto, r.iso_free, r.iso_rooted, r.identities_ok, r.first_diff
        ),
    };
    Ok(Output {
        text,
        verified: r.matches_prediction(),
    })
}

fn random_tree(rng: &mut ChaCha8Rng, max_n: usize) -> RootedTree {
    let n = rng.gen_range(1..=max_n);
    let parent = (0..n).map(|i| (i > 0).then(|| rng.gen_range(0..i))).collect();
    let t = RootedTree::from_parents(parent).expect("parents precede children");
    let root = rng.gen_range(0..n);
    t.reroot(root).expect("root in range")
}

fn verify_identities(
    max_k: usize,
    max_pair: usize,
    samples: usize,
    seed: u64,
    format: Format,
    limits: &Limits,
) -> Result<Output, Failure> {
    if max_k > limits.family_index {
        return Err(ConstructionError::CapExceeded {
            index: max_k,
            cap: limits.family_index,
        }
        .into());
    }
    if max_pair > limits.pair_index {
        return Err(ConstructionError::CapExceeded {
            index: max_pair,
            cap: limits.pair_index,
        }
        .into());
    }
    let mut rows = Vec::new();
    for k in 0..=max_k {
        rows.push(json!({"identity": "ab_difference", "k": k, "ok": cons::ab_difference_holds(k)?}));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..=max_k.min(2) {
        for _ in 0..samples {
            let t = random_tree(&mut rng, 7);
            let ok = cons::d_identity_holds(i, &t)?;
            rows.push(json!({"identity": "d_transform", "i": i, "tree": t.to_level_text(), "ok": ok}));
        }
    }
    for k in 0..=max_pair {
        for l in 0..=max_pair {
            rows.push(json!({"identity": "pair_difference", "k": k, "l": l, "ok": cons::pair_difference_holds(k, l)?}));
        }
    }
    let verified = rows.iter().all(|r| r["ok"] == true);
    let lines: Vec<String> = rows
        .iter()
        .map(|r| match format {
            Format::Json => r.to_string(),
            Format::Text => {
                let status = if r["ok"] == true { "ok" } else { "FAILED" };
                let detail: Vec<String> = r
                    .as_object()
                    .expect("row is an object")
                    .iter()
                    .filter(|(key, _)| *key != "identity" && *key != "ok")
                    .map(|(key, v)| format!("{key}={}", v.as_str().map_or_else(|| v.to_string(), str::to_string)))
                    .collect();
                format!("{} {} {status}", r["identity"].as_str().unwrap_or(""), detail.join(" "))
            }
        })
        .collect();
    Ok(Output {
        text: lines.join("\n"),
        verified,
    })
}

fn scan(n_max: usize, level: Level, threads: Option<usize>, format: Format, limits: &Limits) -> Result<Output, Failure> {
    let records = search::collision_scan_with(n_max, level, threads, limits)?;
    let lines: Vec<String> = records
        .iter()
        .map(|r| match format {
            Format::Json => r.to_json(),
            Format::Text => format!("n={} m={} {} : {}", r.n, r.m, r.members.join(" "), r.shared),
        })
        .collect();
    Ok(Output::ok(lines.join("\n")))
}

fn phi(m: usize, n_max: usize, threads: Option<usize>, format: Format, limits: &Limits) -> Result<Output, Failure> {
    let found = search::phi_restricted_with(m, n_max, threads, limits)?;
    let bound = cons::phi_upper_bound(m).ok();
    let text = match format {
        Format::Json => json!({"m": m, "n_max": n_max, "phi_restricted": found, "upper_bound": bound}).to_string(),
        Format::Text => {
            let show = |v: Option<String>| v.unwrap_or_else(|| "none".into());
            format!(
                "m={m} n_max={n_max} phi_restricted={} upper_bound={}",
                show(found.map(|v| v.to_string())),
                show(bound.map(|v| v.to_string()))
            )
        }
    };
    Ok(Output::ok(text))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let limits = cli.caps.limits();
    let f = cli.format;
    match &cli.command {
        Command::Compute(args) => compute(args, f, &limits),
        Command::Construct { family, k, l } => construct(*family, *k, *l, f, &limits),
        Command::VerifyPair { k, l } => verify_pair(*k, *l, f, &limits),
        Command::VerifyIdentities {
            max_k,
            max_pair,
            samples,
            seed,
        } => verify_identities(*max_k, *max_pair, *samples, *seed, f, &limits),
        Command::Reconstruct { poly } => {
            let p = read_poly(poly)?;
            Ok(Output::ok(tree_out(&rec::reconstruct_with(&p, &limits)?, f)))
        }
        Command::Scan { n_max, level, threads } => scan(*n_max, *level, *threads, f, &limits),
        Command::Phi { m, n_max, threads } => phi(*m, *n_max, *threads, f, &limits),
    }
}

fn emit(out: Option<&Path>, text: &str) -> io::Result<()> {
    let mut body = text.to_string();
    if !body.is_empty() {
        body.push('\n');
    }
    match out {
        Some(path) => fs::write(path, body),
        None => io::stdout().lock().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            if let Err(e) = emit(cli.out.as_deref(), &output.text) {
                eprintln!("error: Io: {e}");
                return ExitCode::from(2);
            }
            if output.verified {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
