mod config;
mod graphs;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use qsym::certify::{verify_certificate, Certificate, CertifyConfig, CertifyOutcome, Checkpoint, Phase, Session, VerifyOutcome};
use qsym::diagram::{coeff_vector, enumerate_diagrams, gamma0_reduction_check, EnumerationBudget};
use qsym::graph::cayley::cayley_recursion_check;
use qsym::graph::graph6::emit_graph6_string;
use qsym::graph::srg::{three_point_parameters, verify_srg};
use qsym::graph::Sign;
use qsym::qgraph;
use qsym::symmetry::dimension_bound_check;
use serde_json::json;

use config::JobFile;
use graphs::{load_graph, multiplicity_table, orbit_index, GraphArgs};

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_NOT_IN_SPAN: u8 = 2;
const EXIT_BUDGET: u8 = 3;

const DEFAULT_MAX_INTERNAL: usize = 2;
const DEFAULT_MAX_EDGES: usize = 7;
const DEFAULT_MAX_PRODUCTS: usize = 1_000_000;

/// Exact certification that a graph has no quantum symmetry.
#[derive(Parser)]
#[command(name = "qsym", version)]
struct Cli {
    /// Flat key = value job file; flags on the command line win.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Worker threads (also QSYM_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory for orbit and multiplicity caches (also QSYM_CACHE_DIR).
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct BudgetArgs {
    /// Largest number of internal vertices in enumerated diagrams.
    #[arg(long)]
    max_internal: Option<usize>,
    /// Largest number of edges in enumerated diagrams.
    #[arg(long)]
    max_edges: Option<usize>,
}

impl BudgetArgs {
    fn resolve(&self, cfg: &JobFile) -> Result<EnumerationBudget> {
        Ok(EnumerationBudget {
            max_internal: cfg.pick(self.max_internal, "max-internal")?.unwrap_or(DEFAULT_MAX_INTERNAL),
            max_edges: cfg.pick(self.max_edges, "max-edges")?.unwrap_or(DEFAULT_MAX_EDGES),
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Construct or describe a graph.
    Graph {
        #[command(subcommand)]
        action: GraphAction,
    },
    /// Strongly regular parameters (v, k, lambda, mu).
    Srg(GraphArgs),
    /// Common-neighbour counts of vertex triples by number of edges among them.
    Qparams(GraphArgs),
    /// Number of automorphism orbits on k-tuples.
    Orbits {
        #[command(flatten)]
        graph: GraphArgs,
        /// Tuple length.
        #[arg(long, default_value_t = 4)]
        k: usize,
        /// Print representatives and orbit sizes as JSON.
        #[arg(long)]
        json: bool,
    },
    /// List the diagram catalog, or evaluate it on a graph when one is given.
    Diagrams {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Number of boundary points.
        #[arg(long, default_value_t = 4)]
        k: usize,
        /// Print only the catalog size.
        #[arg(long)]
        count: bool,
    },
    /// Build the orbit-pair multiplicity table for 4-tuples.
    Table {
        #[command(flatten)]
        graph: GraphArgs,
        /// Write the binary table here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for an exact expression of the flip in the span of diagram elements.
    Certify {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        max_products: Option<usize>,
        /// Wall-clock limit in seconds; on expiry a checkpoint is written.
        #[arg(long)]
        time_limit: Option<f64>,
        /// Certificate path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write a checkpoint when the run stops early.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Continue from a checkpoint.
        #[arg(long, value_name = "FILE")]
        resume: Option<PathBuf>,
    },
    /// Recompute a certificate from scratch.
    Verify {
        /// Certificate file.
        #[arg(long)]
        cert: PathBuf,
        /// Optional graph the certificate must belong to.
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Set identities behind the affine-polar Cayley graphs, for levels 1..=k.
    Recursion {
        #[arg(long, default_value_t = 5)]
        k: usize,
    },
    /// Checks of the quantum-graph model for levels 1..=k (k at most 4).
    QgraphCheck {
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Whether the one-internal-vertex 3-diagram reduces to internal-free ones.
    Gamma0(GraphArgs),
    /// Orbit counts on pairs and triples against 3-transitive bounds.
    Bounds(GraphArgs),
}

#[derive(Subcommand)]
enum GraphAction {
    /// Print the graph in graph6.
    Build {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print size, degree, hash and provenance as JSON.
    Info(GraphArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let cfg = match &cli.config {
        Some(p) => JobFile::load(p)?,
        None => JobFile::default(),
    };
    if let Some(t) = cfg.threads(cli.threads)? {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().context("starting worker pool")?;
    }
    let cache = cfg.cache_dir(cli.cache_dir.clone())?;
    if let Some(dir) = &cache {
        std::fs::create_dir_all(dir).with_context(|| format!("creating cache dir {}", dir.display()))?;
    }
    let cache = cache.as_deref();

    match cli.command {
        Command::Graph { action: GraphAction::Build { graph, out } } => {
            let g = load_graph(&graph, &cfg)?;
            write_output(out.as_deref(), &format!("{}\n", emit_graph6_string(&g)?))?;
        }
        Command::Graph { action: GraphAction::Info(graph) } => {
            let g = load_graph(&graph, &cfg)?;
            print_json(&json!({
                "n": g.n(),
                "edges": g.edge_count(),
                "regular_degree": g.regular_degree(),
                "connected": g.is_connected(),
                "hash": g.adjacency_hash().to_hex(),
                "provenance": g.provenance(),
                "graph6": emit_graph6_string(&g)?,
            }));
        }
        Command::Srg(graph) => {
            let g = load_graph(&graph, &cfg)?;
            let p = verify_srg(&g)?;
            println!("{p}");
        }
        Command::Qparams(graph) => {
            let g = load_graph(&graph, &cfg)?;
            println!("{}", three_point_parameters(&g)?);
        }
        Command::Orbits { graph, k, json } => {
            let g = load_graph(&graph, &cfg)?;
            let index = orbit_index(&g, k, cache)?;
            if json {
                print_json(&json!({
                    "k": k,
                    "count": index.len(),
                    "strategy": index.strategy(),
                    "representatives": index.representatives(),
                    "sizes": index.orbit_sizes(),
                }));
            } else {
                println!("{}", index.len());
            }
        }
        Command::Diagrams { graph, budget, k, count } => {
            let catalog = enumerate_diagrams(k, budget.resolve(&cfg)?);
            if count {
                println!("{}", catalog.len());
            } else if graph.is_given(&cfg) {
                let g = load_graph(&graph, &cfg)?;
                let index = orbit_index(&g, k, cache)?;
                for d in &catalog {
                    let v = coeff_vector(&g, &index, d)?;
                    let values: Vec<String> = v.values.iter().map(|x| x.to_string()).collect();
                    println!("{}", json!({ "diagram": d.encode(), "values": values }));
                }
            } else {
                for d in &catalog {
                    println!("{d}");
                }
            }
        }
        Command::Table { graph, out } => {
            let g = load_graph(&graph, &cfg)?;
            let index = orbit_index(&g, 4, cache)?;
            let table = multiplicity_table(&index, cache)?;
            if let Some(p) = &out {
                table.save(p).with_context(|| format!("writing {}", p.display()))?;
            }
            print_json(&json!({
                "omega": table.len(),
                "n": table.n,
                "entries": table.rows.iter().map(Vec::len).sum::<usize>(),
                "rows_sum_to_n_squared": table.rows_sum_to_n_squared(),
            }));
        }
        Command::Certify { graph, budget, max_products, time_limit, out, checkpoint, resume } => {
            let out = cfg.pick(out, "out")?.unwrap_or_else(|| PathBuf::from("certificate.json"));
            let cp_path = cfg.pick(checkpoint, "checkpoint")?.unwrap_or_else(|| out.with_extension("checkpoint.json"));
            let mut config = CertifyConfig {
                enumeration: budget.resolve(&cfg)?,
                max_products: cfg.pick(max_products, "max-products")?.unwrap_or(DEFAULT_MAX_PRODUCTS),
                deadline: None,
                cancel: None,
            };
            if let Some(secs) = cfg.pick(time_limit, "time-limit")? {
                if !(secs >= 0.0 && secs.is_finite()) {
                    bail!("time limit must be a nonnegative number of seconds");
                }
                config.deadline = Some(Instant::now() + Duration::from_secs_f64(secs));
            }
            let cancel = Arc::new(AtomicBool::new(false));
            let flag = cancel.clone();
            ctrlc::set_handler(move || flag.store(true, Ordering::SeqCst)).context("installing Ctrl-C handler")?;
            config.cancel = Some(cancel);
            return certify(&graph, &cfg, cache, config, &out, &cp_path, resume.as_deref());
        }
        Command::Verify { cert, graph } => {
            let text = std::fs::read_to_string(&cert).with_context(|| format!("reading {}", cert.display()))?;
            let c = Certificate::from_json_str(&text)?;
            if graph.is_given(&cfg) {
                let g = load_graph(&graph, &cfg)?;
                if g.adjacency_hash() != c.graph.hash {
                    bail!("certificate is for another graph (hash {})", c.graph.hash.to_hex());
                }
            }
            let outcome = verify_certificate(&c)?;
            print_json(&outcome);
            if let VerifyOutcome::Invalid(w) = outcome {
                eprintln!("invalid: {}", w.reason);
                if let Some(o) = w.orbit {
                    eprintln!("witness orbit {o} representative {:?}", w.representative.unwrap_or_default());
                }
                return Ok(EXIT_ERROR);
            }
        }
        Command::Recursion { k } => {
            let mut ok = true;
            for level in 1..=k {
                let r = cayley_recursion_check(level);
                ok &= r.passed();
                println!("{}", serde_json::to_string(&r)?);
            }
            return Ok(if ok { EXIT_OK } else { EXIT_ERROR });
        }
        Command::QgraphCheck { k } => return qgraph_check(k),
        Command::Gamma0(graph) => {
            let g = load_graph(&graph, &cfg)?;
            let index = orbit_index(&g, 3, cache)?;
            print_json(&gamma0_reduction_check(&g, &index)?);
        }
        Command::Bounds(graph) => {
            let g = load_graph(&graph, &cfg)?;
            print_json(&dimension_bound_check(&g)?);
        }
    }
    Ok(EXIT_OK)
}

fn certify(
    graph: &GraphArgs,
    cfg: &JobFile,
    cache: Option<&Path>,
    config: CertifyConfig,
    out: &Path,
    cp_path: &Path,
    resume: Option<&Path>,
) -> Result<u8> {
    let g = load_graph(graph, cfg)?;
    let index = orbit_index(&g, 4, cache)?;
    let table = multiplicity_table(&index, cache)?;
    let mut session = match resume {
        Some(p) => Session::resume(&g, &index, &table, config, &Checkpoint::load(p)?)?,
        None => Session::new(&g, &index, &table, config)?,
    };
    eprintln!("omega4 {} diagrams {} rank {}", session.omega(), session.catalog_len(), session.rank());
    let outcome = session.run(&mut |p| {
        let phase = match p.phase {
            Phase::Diagrams => "diagrams",
            Phase::Rotations => "rotations",
            Phase::Products => "products",
        };
        eprintln!("rank {}/{} tried {} {phase}", p.rank, p.omega, p.tried);
    })?;
    match outcome {
        CertifyOutcome::Certificate(c) => {
            write_output(Some(out), &c.to_json_string())?;
            eprintln!("certificate with {} elements written to {}", c.elements.len(), out.display());
            Ok(EXIT_OK)
        }
        CertifyOutcome::NotInSpanAtBudget(report) => {
            print_json(&report);
            eprintln!("flip not in span: rank {}/{} after {} elements", report.rank, report.omega, report.tried);
            Ok(EXIT_NOT_IN_SPAN)
        }
        CertifyOutcome::ResourceBudgetExceeded(cp) => {
            cp.save(cp_path).with_context(|| format!("writing {}", cp_path.display()))?;
            eprintln!("stopped at rank {}/{}; checkpoint written to {}", cp.rank(), cp.omega, cp_path.display());
            Ok(EXIT_BUDGET)
        }
    }
}

fn qgraph_check(k: usize) -> Result<u8> {
    if !(1..=4).contains(&k) {
        bail!("qgraph-check supports 1 <= k <= 4");
    }
    let mut ok = true;
    let mut emit = |check: &str, passed: bool, report: serde_json::Value| {
        ok &= passed;
        println!("{}", json!({ "check": check, "passed": passed, "report": report }));
    };
    for level in 1..=k {
        let w = qgraph::weyl_check(level, 64, 1);
        let passed = w.relations_hold
            && w.unitary
            && w.identity_at_zero
            && w.squares_scalar
            && w.orthogonal_basis != Some(false)
            && w.cocycle_identity;
        emit("weyl", passed, serde_json::to_value(&w)?);
        let d = qgraph::dimension_check(level);
        emit("dimensions", d.holds(), serde_json::to_value(&d)?);
        if level <= 2 {
            let r = qgraph::adjacency_recursion_check(level);
            emit("adjacency-recursion", r.plus_holds && r.minus_holds, serde_json::to_value(&r)?);
        }
        if level <= 3 {
            for sign in [Sign::Plus, Sign::Minus] {
                let s = qgraph::idempotent_schur_check(level, sign);
                emit("schur", s.idempotent_schur && s.self_adjoint && s.unit_degree, serde_json::to_value(&s)?);
                let c = qgraph::cross_model_check(level, sign);
                emit("cross-model", c.classical_recursion_holds && c.walk_counts_match, serde_json::to_value(&c)?);
            }
            let r = qgraph::symmetric_space_recursion_check(level);
            emit("space-recursion", r.symmetric_holds && r.antisymmetric_holds, serde_json::to_value(&r)?);
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_ERROR })
}

fn print_json<T: serde::Serialize>(v: &T) {
    // a closed pipe downstream is not an error of ours
    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => {
            let tmp = p.with_extension("tmp");
            std::fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
            std::fs::rename(&tmp, p).with_context(|| format!("writing {}", p.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
