//! `lpa` — batch analysis of the vertex-set structure behind Leavitt path
//! algebra graphs.
//!
//! Output is JSON by default (canonically ordered, byte-stable across runs);
//! `--pretty` switches to a human-readable form. Exit codes: 0 on success, 1
//! on usage or parse errors, 2 on domain errors such as a non-hereditary
//! input set or an exceeded enumeration cap.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use lpa_core::functors::FunctorExpr;
use lpa_core::graph::Graph;
use lpa_core::hsets::{self, HSet};
use lpa_core::moves::{self, ShiftSpec};
use lpa_core::series::{self, SeriesKind};
use lpa_core::set::VertexSet;
use lpa_core::topology::{self, VertexMap};
use lpa_core::Error;

/// Hard upper bound for `--cap` and `LPA_CAP`.
const MAX_CAP: usize = 24;

const EMITTER_WARNING: &str = "infinite-emitters: ideal correspondence not guaranteed";

#[derive(Parser)]
#[command(
    name = "lpa",
    version,
    about = "Vertex-set calculus for Leavitt path algebra graphs",
    after_help = "Graph files use one directive per line: `vertex <name>`, \
                  `edge <name> <src> <dst>`, `infedge <src> <dst>`; `#` starts a comment.\n\
                  The env var LPA_CAP overrides the default enumeration caps (hard bound 24).\n\
                  Conventions: the empty graph is reported not connected; on finite graphs the\n\
                  infinitely-many-bifurcations branch of Pbinf is unsatisfiable, so Pbinf is\n\
                  empty unless the graph has infinite emitters."
)]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    /// Enumeration cap for closed-set and lattice sweeps (hard bound 24).
    #[arg(long, global = true)]
    cap: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize a graph: counts, sinks, sources, boundary classes,
    /// condition (L).
    Show {
        file: PathBuf,
        /// Write Graphviz DOT to this path (`-` prints DOT instead of the
        /// summary).
        #[arg(long)]
        dot: Option<String>,
    },
    /// Evaluate a functor expression on a graph.
    Functor {
        expr: String,
        file: PathBuf,
        /// Report the result as an hset record with its hereditary and
        /// saturated flags.
        #[arg(long)]
        certify: bool,
    },
    /// Connection-topology queries.
    Topology {
        file: PathBuf,
        #[command(flatten)]
        op: TopologyOp,
        /// Comma-separated vertex map `a:b,...` for --continuity.
        #[arg(long)]
        map: Option<String>,
    },
    /// Enumerate every hereditary and saturated subset.
    Lattice { file: PathBuf },
    /// Quotient the graph by a hereditary and saturated set.
    Quotient {
        file: PathBuf,
        /// Comma-separated vertex names.
        #[arg(long)]
        set: String,
        /// Emit the quotient in the graph text format instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Iterated quotient chain of a base functor.
    Series {
        file: PathBuf,
        /// Base functor expression (closed automatically).
        #[arg(long)]
        base: String,
        /// Number of stages.
        #[arg(long)]
        n: usize,
        /// Also compute the direct graph characterization (base pl or pc).
        #[arg(long)]
        direct: bool,
        /// Compare the quotient and direct routes stage by stage.
        #[arg(long)]
        cross_check: bool,
    },
    /// Apply a shift move.
    Shift {
        file: PathBuf,
        /// The two vertices: the one whose out-edges are re-routed, then the
        /// one that re-emits them.
        #[arg(long = "shift", num_args = 2, value_names = ["U", "V"])]
        vertices: Vec<String>,
        /// Comma-separated edge map `f:g,...` pairing each out-edge of U
        /// with an out-edge of V.
        #[arg(long, default_value = "")]
        map: String,
        /// Verify the continuity guarantees of the move.
        #[arg(long)]
        check: bool,
        /// Emit the shifted graph in the graph text format instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Annihilator calculus of a hereditary and saturated set.
    Ann {
        file: PathBuf,
        /// Comma-separated vertex names.
        #[arg(long)]
        set: String,
    },
    /// Cross-check the series routes over every `.graph` file in a
    /// directory.
    Oracle {
        dir: PathBuf,
        /// Stages to compare; defaults to vertex count + 1 per graph.
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TopologyOp {
    /// Enumerate all closed sets.
    #[arg(long)]
    closed_sets: bool,
    /// Closure of a comma-separated vertex set.
    #[arg(long)]
    closure: Option<String>,
    /// Interior of a set.
    #[arg(long)]
    interior: Option<String>,
    /// Exterior of a set.
    #[arg(long)]
    exterior: Option<String>,
    /// Boundary of a set.
    #[arg(long)]
    boundary: Option<String>,
    /// Is the set closed?
    #[arg(long)]
    is_closed: Option<String>,
    /// Is the set open?
    #[arg(long)]
    is_open: Option<String>,
    /// Is the set clopen?
    #[arg(long)]
    is_clopen: Option<String>,
    /// Is the whole space connected?
    #[arg(long)]
    connected: bool,
    /// Is the (hereditary) set dense?
    #[arg(long)]
    dense: Option<String>,
    /// Check continuity of --map into the graph in this file.
    #[arg(long, value_name = "DST_FILE")]
    continuity: Option<PathBuf>,
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::Parse { .. }
            | Error::ExprParse { .. }
            | Error::UnknownVertex(_)
            | Error::UnknownEdge(_)
            | Error::DuplicateVertex(_)
            | Error::DuplicateEdge(_)
            | Error::VertexOutOfRange { .. }
            | Error::MapNotTotal { .. }
            | Error::SeriesIndexZero => CliError::Usage(e.to_string()),
            Error::NotHereditary { .. }
            | Error::NotSaturated { .. }
            | Error::CapExceeded { .. }
            | Error::InfiniteEmitter { .. }
            | Error::InvalidShift(_) => CliError::Domain(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Show { file, dot } => cmd_show(cli, file, dot.as_deref()),
        Command::Functor { expr, file, certify } => cmd_functor(cli, expr, file, *certify),
        Command::Topology { file, op, map } => cmd_topology(cli, file, op, map.as_deref()),
        Command::Lattice { file } => cmd_lattice(cli, file),
        Command::Quotient { file, set, text } => cmd_quotient(cli, file, set, *text),
        Command::Series { file, base, n, direct, cross_check } => {
            cmd_series(cli, file, base, *n, *direct, *cross_check)
        }
        Command::Shift { file, vertices, map, check, text } => {
            cmd_shift(cli, file, vertices, map, *check, *text)
        }
        Command::Ann { file, set } => cmd_ann(cli, file, set),
        Command::Oracle { dir, n } => cmd_oracle(cli, dir, *n),
    }
}

// ---------------------------------------------------------------------------
// Helpers
// ---------------------------------------------------------------------------

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    Ok(Graph::parse(&text)?)
}

/// Resolves the effective cap: `--cap`, then `LPA_CAP`, then the default.
fn effective_cap(cli: &Cli, default: usize) -> Result<usize, CliError> {
    let cap = match cli.cap {
        Some(c) => c,
        None => match std::env::var("LPA_CAP") {
            Ok(v) => v
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("LPA_CAP is not a number: `{v}`")))?,
            Err(_) => default,
        },
    };
    if cap > MAX_CAP {
        return Err(CliError::Usage(format!("cap {cap} exceeds the hard bound {MAX_CAP}")));
    }
    Ok(cap)
}

fn names(g: &Graph, s: &VertexSet) -> Value {
    Value::Array(s.names(g).into_iter().map(|n| Value::String(n.to_string())).collect())
}

fn set_list(g: &Graph, sets: &[VertexSet]) -> Value {
    Value::Array(sets.iter().map(|s| names(g, s)).collect())
}

fn hset_list(g: &Graph, sets: &[HSet]) -> Value {
    Value::Array(sets.iter().map(|s| names(g, s.members())).collect())
}

fn warnings(g: &Graph) -> Value {
    if g.has_infinite_emitters() {
        json!([EMITTER_WARNING])
    } else {
        json!([])
    }
}

fn graph_json(g: &Graph) -> Value {
    json!({
        "vertices": g.vertices().map(|v| g.vertex_name(v)).collect::<Vec<_>>(),
        "edges": g
            .edge_ids()
            .map(|e| json!([
                g.edge_name(e),
                g.vertex_name(g.edge_src(e)),
                g.vertex_name(g.edge_dst(e)),
            ]))
            .collect::<Vec<_>>(),
        "infedges": g
            .inf_edges()
            .iter()
            .map(|&(s, d)| json!([g.vertex_name(s), g.vertex_name(d)]))
            .collect::<Vec<_>>(),
    })
}

fn parse_set(g: &Graph, text: &str) -> Result<VertexSet, CliError> {
    Ok(VertexSet::parse(g, text)?)
}

fn certified(g: &Graph, text: &str) -> Result<HSet, CliError> {
    Ok(HSet::certify(g, parse_set(g, text)?)?)
}

fn parse_pair_list(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut pairs = Vec::new();
    for chunk in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let Some((a, b)) = chunk.split_once(':') else {
            return Err(CliError::Usage(format!("expected `a:b` pair, got `{chunk}`")));
        };
        pairs.push((a.trim().to_string(), b.trim().to_string()));
    }
    Ok(pairs)
}

fn emit(value: &Value) {
    println!("{value}");
}

fn joined(g: &Graph, s: &VertexSet) -> String {
    s.names(g).join(" ")
}

fn braced(g: &Graph, s: &VertexSet) -> String {
    format!("{{{}}}", s.names(g).join(","))
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn cmd_show(cli: &Cli, file: &Path, dot: Option<&str>) -> Result<(), CliError> {
    let g = load_graph(file)?;

    if let Some(target) = dot {
        if target == "-" {
            print!("{}", g.to_dot());
            return Ok(());
        }
        std::fs::write(target, g.to_dot())
            .map_err(|e| CliError::Usage(format!("{target}: {e}")))?;
    }

    let profiles: Vec<_> = g.vertices().map(|v| (v, g.profile(v).expect("in range"))).collect();
    let pick = |f: &dyn Fn(&lpa_core::VertexProfile) -> bool| -> Vec<&str> {
        profiles.iter().filter(|(_, p)| f(p)).map(|(v, _)| g.vertex_name(*v)).collect()
    };
    let sinks = pick(&|p| p.is_sink);
    let sources = pick(&|p| p.is_source);
    let regular = pick(&|p| p.is_regular);
    let emitters = pick(&|p| p.is_infinite_emitter);

    let boundary = g.boundary_classification();
    let mut initial: std::collections::BTreeMap<String, Vec<&str>> = Default::default();
    let mut terminal: std::collections::BTreeMap<String, Vec<&str>> = Default::default();
    for class in &boundary.per_vertex {
        let name = g.vertex_name(class.vertex);
        if let Some(n) = class.initial {
            initial.entry(n.to_string()).or_default().push(name);
        }
        if let Some(n) = class.terminal {
            terminal.entry(n.to_string()).or_default().push(name);
        }
    }

    if cli.pretty {
        println!("{} vertices, {} edges", g.vertex_count(), g.edge_count());
        println!("sinks: {}", sinks.join(" "));
        println!("sources: {}", sources.join(" "));
        println!("regular: {}", regular.join(" "));
        println!("infinite emitters: {}", emitters.join(" "));
        for (n, vs) in &initial {
            println!("initial({n}): {}", vs.join(" "));
        }
        for (n, vs) in &terminal {
            println!("terminal({n}): {}", vs.join(" "));
        }
        println!("condition_L: {}", g.condition_l());
    } else {
        emit(&json!({
            "vertex_count": g.vertex_count(),
            "edge_count": g.edge_count(),
            "sinks": sinks,
            "sources": sources,
            "regular": regular,
            "infinite_emitters": emitters,
            "initial": initial,
            "terminal": terminal,
            "condition_l": g.condition_l(),
        }));
    }
    Ok(())
}

fn cmd_functor(cli: &Cli, expr: &str, file: &Path, certify: bool) -> Result<(), CliError> {
    let g = load_graph(file)?;
    let expr = FunctorExpr::parse(expr)?;
    let result = expr.eval(&g)?;
    if certify {
        let hereditary = hsets::is_hereditary(&g, &result)?;
        let saturated = hsets::is_saturated(&g, &result)?;
        if cli.pretty {
            println!("hset: {}", braced(&g, &result));
            println!("hereditary: {hereditary}");
            println!("saturated: {saturated}");
        } else {
            emit(&json!({
                "hset": names(&g, &result),
                "hereditary": hereditary,
                "saturated": saturated,
                "warnings": warnings(&g),
            }));
        }
    } else if cli.pretty {
        println!("{}", braced(&g, &result));
    } else {
        emit(&json!({ "set": names(&g, &result) }));
    }
    Ok(())
}

fn cmd_topology(cli: &Cli, file: &Path, op: &TopologyOp, map: Option<&str>) -> Result<(), CliError> {
    let g = load_graph(file)?;
    let cap = effective_cap(cli, topology::DEFAULT_CLOSED_SETS_CAP)?;

    if op.closed_sets {
        let sets = topology::closed_sets(&g, cap)?;
        if cli.pretty {
            for s in &sets {
                println!("{}", braced(&g, s));
            }
        } else {
            emit(&json!({ "closed_sets": set_list(&g, &sets) }));
        }
        return Ok(());
    }
    if op.connected {
        let connected = topology::is_connected(&g);
        if cli.pretty {
            println!("connected: {connected}");
        } else {
            emit(&json!({ "connected": connected }));
        }
        return Ok(());
    }
    if let Some(dst_file) = &op.continuity {
        let dst = load_graph(dst_file)?;
        let pairs = parse_pair_list(
            map.ok_or_else(|| CliError::Usage("--continuity requires --map".into()))?,
        )?;
        let vmap = VertexMap::from_pairs(&g, &dst, &pairs)?;
        let report = topology::continuity_check(&g, &dst, &vmap, cap)?;
        if cli.pretty {
            match &report.witness {
                None => println!("continuous: true"),
                Some(w) => println!("continuous: false, witness: {}", braced(&dst, w)),
            }
        } else {
            emit(&json!({
                "continuous": report.continuous,
                "witness": report.witness.as_ref().map(|w| names(&dst, w)),
            }));
        }
        return Ok(());
    }

    let set_ops: [(&Option<String>, &str); 7] = [
        (&op.closure, "closure"),
        (&op.interior, "interior"),
        (&op.exterior, "exterior"),
        (&op.boundary, "boundary"),
        (&op.is_closed, "is_closed"),
        (&op.is_open, "is_open"),
        (&op.is_clopen, "is_clopen"),
    ];
    for (arg, kind) in set_ops {
        let Some(text) = arg else { continue };
        let a = parse_set(&g, text)?;
        return match kind {
            "closure" | "interior" | "exterior" | "boundary" => {
                let result = match kind {
                    "closure" => topology::closure(&g, &a)?,
                    "interior" => topology::interior(&g, &a)?,
                    "exterior" => topology::exterior(&g, &a)?,
                    _ => topology::boundary(&g, &a)?,
                };
                if cli.pretty {
                    println!("{}", braced(&g, &result));
                } else {
                    emit(&json!({ "set": names(&g, &result) }));
                }
                Ok(())
            }
            _ => {
                let answer = match kind {
                    "is_closed" => topology::is_closed(&g, &a)?,
                    "is_open" => topology::is_open(&g, &a)?,
                    _ => topology::is_clopen(&g, &a)?,
                };
                if cli.pretty {
                    println!("{kind}: {answer}");
                } else {
                    emit(&json!({ kind: answer }));
                }
                Ok(())
            }
        };
    }

    let text = op.dense.as_ref().expect("clap group guarantees one operation");
    let h = parse_set(&g, text)?;
    let dense = topology::is_dense(&g, &h)?;
    if cli.pretty {
        println!("dense: {dense}");
    } else {
        emit(&json!({ "dense": dense }));
    }
    Ok(())
}

fn cmd_lattice(cli: &Cli, file: &Path) -> Result<(), CliError> {
    let g = load_graph(file)?;
    let cap = effective_cap(cli, hsets::DEFAULT_LATTICE_CAP)?;
    let sets = hsets::lattice(&g, cap)?;
    if cli.pretty {
        for s in &sets {
            println!("{}", braced(&g, s.members()));
        }
    } else {
        emit(&json!({
            "count": sets.len(),
            "hsets": hset_list(&g, &sets),
            "warnings": warnings(&g),
        }));
    }
    Ok(())
}

fn cmd_quotient(cli: &Cli, file: &Path, set: &str, text: bool) -> Result<(), CliError> {
    let g = load_graph(file)?;
    let h = certified(&g, set)?;
    let q = hsets::quotient(&g, &h)?;
    if text {
        print!("{}", q.graph.to_text());
        return Ok(());
    }
    if cli.pretty {
        print!("{}", q.graph.to_text());
        println!("# removed: {}", joined(&g, h.members()));
        return Ok(());
    }
    emit(&json!({
        "quotient": graph_json(&q.graph),
        "kept": q.kept.iter().map(|&v| g.vertex_name(v)).collect::<Vec<_>>(),
        "removed": names(&g, h.members()),
        "warnings": warnings(&g),
    }));
    Ok(())
}

/// Maps a base expression onto the chain that has a direct characterization.
fn direct_kind(base: &FunctorExpr) -> Result<SeriesKind, CliError> {
    match base {
        FunctorExpr::Pl => Ok(SeriesKind::LinePoints),
        FunctorExpr::Pc => Ok(SeriesKind::NoExitCycles),
        FunctorExpr::Closure(inner) => direct_kind(inner),
        other => Err(CliError::Usage(format!(
            "direct characterizations exist for pl and pc only, not `{other}`"
        ))),
    }
}

fn cmd_series(
    cli: &Cli,
    file: &Path,
    base: &str,
    n: usize,
    direct: bool,
    cross_check: bool,
) -> Result<(), CliError> {
    let g = load_graph(file)?;
    let base = FunctorExpr::parse(base)?;

    if cross_check {
        let report = series::cross_check_series(&g, direct_kind(&base)?, n)?;
        if cli.pretty {
            for k in 0..n {
                println!(
                    "n={} direct={} quotient={} agree={}",
                    k + 1,
                    braced(&g, report.direct_chain[k].members()),
                    braced(&g, report.quotient_chain[k].members()),
                    if report.direct_chain[k] == report.quotient_chain[k] { "yes" } else { "no" }
                );
            }
            println!("agree: {}", report.agree);
        } else {
            emit(&json!({
                "agree": report.agree,
                "first_divergence": report.first_divergence,
                "quotient_chain": hset_list(&g, &report.quotient_chain),
                "direct_chain": hset_list(&g, &report.direct_chain),
                "warnings": warnings(&g),
            }));
        }
        return Ok(());
    }

    let chain = series::series(&g, &base, n)?;
    let direct_stages = if direct {
        let kind = direct_kind(&base)?;
        Some(match kind {
            SeriesKind::LinePoints => series::pl_series_direct_stages(&g, n)?,
            SeriesKind::NoExitCycles => series::pc_series_direct_stages(&g, n)?,
        })
    } else {
        None
    };

    if cli.pretty {
        for (k, h) in chain.chain.iter().enumerate() {
            println!("n={} {}", k + 1, braced(&g, h.members()));
        }
        if let Some(stages) = &direct_stages {
            for (k, s) in stages.iter().enumerate() {
                println!(
                    "direct n={} stage={} closed={}",
                    k + 1,
                    braced(&g, &s.pre_closure),
                    braced(&g, s.closed.members())
                );
            }
        }
        if let Some(k) = chain.stabilized_at {
            println!("stabilized at n={k}");
        }
    } else {
        let mut out = json!({
            "chain": hset_list(&g, &chain.chain),
            "stabilized_at": chain.stabilized_at,
            "warnings": warnings(&g),
        });
        if let Some(stages) = direct_stages {
            let closed: Vec<HSet> = stages.iter().map(|s| s.closed.clone()).collect();
            out["direct"] = hset_list(&g, &closed);
            out["direct_stage_sets"] = Value::Array(
                stages.iter().map(|s| names(&g, &s.pre_closure)).collect(),
            );
        }
        emit(&out);
    }
    Ok(())
}

fn cmd_shift(
    cli: &Cli,
    file: &Path,
    vertices: &[String],
    map: &str,
    check: bool,
    text: bool,
) -> Result<(), CliError> {
    let g = load_graph(file)?;
    let [u, v] = vertices else {
        return Err(CliError::Usage("--shift takes exactly two vertices".into()));
    };
    let spec = ShiftSpec::from_names(&g, u, v, &parse_pair_list(map)?)?;
    let shifted = moves::shift_graph(&g, &spec)?;

    if text {
        print!("{}", shifted.to_text());
        return Ok(());
    }

    let report = if check {
        let cap = effective_cap(cli, topology::DEFAULT_CLOSED_SETS_CAP)?;
        Some(moves::shift_continuity_report(&g, &spec, cap)?)
    } else {
        None
    };

    if cli.pretty {
        print!("{}", shifted.to_text());
        if let Some(r) = report {
            println!("# pairwise_ok: {}", r.pairwise_ok);
            match r.closed_sets_ok {
                Some(ok) => println!("# closed_sets_ok: {ok}"),
                None => println!("# closed_sets_ok: skipped"),
            }
        }
    } else {
        let mut out = json!({ "graph": graph_json(&shifted) });
        if let Some(r) = report {
            out["continuity"] = json!({
                "pairwise_ok": r.pairwise_ok,
                "closed_sets_ok": r.closed_sets_ok,
            });
        }
        emit(&out);
    }
    Ok(())
}

fn cmd_ann(cli: &Cli, file: &Path, set: &str) -> Result<(), CliError> {
    let g = load_graph(file)?;
    let h = certified(&g, set)?;
    let h_prime = hsets::annihilator(&g, &h)?;
    let h_second = hsets::annihilator(&g, &h_prime)?;
    let regular = h_second.members().is_subset(h.members());
    if cli.pretty {
        println!("hprime: {}", braced(&g, h_prime.members()));
        println!("hdoubleprime: {}", braced(&g, h_second.members()));
        println!("regular: {regular}");
    } else {
        emit(&json!({
            "hprime": names(&g, h_prime.members()),
            "hdoubleprime": names(&g, h_second.members()),
            "regular": regular,
            "warnings": warnings(&g),
        }));
    }
    Ok(())
}

fn cmd_oracle(cli: &Cli, dir: &Path, n: Option<usize>) -> Result<(), CliError> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| CliError::Usage(format!("{}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "graph"))
        .collect();
    paths.sort();

    let mut files = Vec::new();
    let mut all_agree = true;
    for path in &paths {
        let g = load_graph(path)?;
        let file = path.file_name().expect("listed file").to_string_lossy().to_string();
        if g.has_infinite_emitters() {
            files.push(json!({ "file": file, "skipped": "infinite emitters" }));
            continue;
        }
        let stages = n.unwrap_or(g.vertex_count() + 1).max(1);
        let mut agree = true;
        let mut divergence = Value::Null;
        for kind in [SeriesKind::LinePoints, SeriesKind::NoExitCycles] {
            let report = series::cross_check_series(&g, kind, stages)?;
            if !report.agree {
                agree = false;
                divergence = json!({
                    "kind": match kind {
                        SeriesKind::LinePoints => "pl",
                        SeriesKind::NoExitCycles => "pc",
                    },
                    "stage": report.first_divergence,
                });
            }
        }
        all_agree &= agree;
        files.push(json!({ "file": file, "agree": agree, "divergence": divergence }));
    }

    if cli.pretty {
        for f in &files {
            println!("{f}");
        }
        println!("all_agree: {all_agree}");
    } else {
        emit(&json!({ "all_agree": all_agree, "files": files }));
    }
    if all_agree {
        Ok(())
    } else {
        Err(CliError::Domain("series routes diverged".into()))
    }
}
