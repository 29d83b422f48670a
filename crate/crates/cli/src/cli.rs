//! Command-line surface.

use std::fmt::Write as _;
use std::io::Write as _;
use std::net::SocketAddr;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use qgrass_core::combinatorics::{classify_noncrossing, IndexSubset, Split};
use qgrass_core::grassmannian::{explore_exchange_graph, initial_seed_with};
use qgrass_core::invariants::{kappa, lambda_pair};
use qgrass_core::qmatrix::verify_lz;
use qgrass_core::verify::{initial_compatibility, laurent_involution, mutation_consistency, plucker_exchanges};
use qgrass_core::QuantumSeed;
use serde::Serialize;
use serde_json::json;

use crate::service::router;
use crate::session::SessionStore;

#[derive(Debug, Parser)]
#[command(name = "qgrass", version, about = "Quantum cluster algebra workbench for Grassmannians")]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Shape {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Clone, Args)]
pub struct Pair {
    #[arg(long)]
    pub n: usize,
    #[arg(long = "I", value_delimiter = ',', required = true)]
    pub i: Vec<usize>,
    #[arg(long = "J", value_delimiter = ',', required = true)]
    pub j: Vec<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the rectangle seed of Gr(m, n).
    Seed(Shape),
    /// Mutate the rectangle seed along 1-based positions.
    Mutate {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, value_delimiter = ',', required = true)]
        path: Vec<usize>,
    },
    /// Module invariants kappa(I, J), kappa(J, I) and their difference.
    Kappa(Pair),
    /// Weak-separation classification and quasi-commutation exponent.
    C(Pair),
    /// Run a verification suite; exits 1 on any violation.
    #[command(subcommand)]
    Verify(Verify),
    /// Breadth-first search of the exchange graph.
    Explore {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, default_value_t = 10_000)]
        max_seeds: usize,
        #[arg(long, default_value_t = 64)]
        max_depth: usize,
        #[arg(long)]
        geometric_only: bool,
    },
    /// Start the HTTP service. Set QGRASS_SNAPSHOT_DIR to persist sessions.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        address: String,
        #[arg(long, default_value_t = 256)]
        undo_cap: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum Verify {
    /// Minor quasi-commutation against weak separation and module invariants.
    Lz(Shape),
    /// Compatibility of the rectangle seed and along random exchange paths.
    Compat {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// Number of random paths.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Short Plücker relations and classical evaluation at every exchange.
    Plucker {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Random matrices per exchange.
        #[arg(long, default_value_t = 3)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Integer Laurent coefficients and involutivity along random paths.
    Laurent {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// What a command produced: text for humans, JSON for `--json`, and
/// whether a verification found violations.
struct Report {
    text: String,
    json: serde_json::Value,
    violations: bool,
}

impl Report {
    fn clean(text: String, json: serde_json::Value) -> Self {
        Report { text, json, violations: false }
    }
}

/// Bad input; reported on stderr with exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

pub fn run(cli: Cli) -> ExitCode {
    let result = match cli.command {
        Command::Serve { port, address, undo_cap } => return serve(&address, port, undo_cap),
        cmd => execute(cmd),
    };
    match result {
        Ok(r) => {
            let mut out = std::io::stdout().lock();
            if cli.json || r.violations {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&r.json).expect("plain data"));
            } else {
                let _ = write!(out, "{}", r.text);
            }
            if r.violations {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn execute(cmd: Command) -> Result<Report, UsageError> {
    match cmd {
        Command::Seed(Shape { m, n }) => {
            let seed = initial_seed_with(m, n, false)?;
            Ok(Report::clean(seed_text(&seed), serde_json::to_value(seed.to_json())?))
        }
        Command::Mutate { shape, path } => mutate(shape, &path),
        Command::Kappa(pair) => {
            let (i, j) = subsets(&pair)?;
            let (ij, ji, l) = (kappa(&i, &j)?, kappa(&j, &i)?, lambda_pair(&i, &j)?);
            let text = format!("kappa(I,J) = {ij}\nkappa(J,I) = {ji}\nlambda = {l}\n");
            Ok(Report::clean(text, json!({ "kappa": ij, "reverseKappa": ji, "lambda": l })))
        }
        Command::C(pair) => {
            let (i, j) = subsets(&pair)?;
            let cl = classify_noncrossing(&i, &j);
            let text = match cl.c {
                None => "crossing\n".to_string(),
                Some(c) => {
                    let mut t = String::from("non-crossing\n");
                    if let Some(s) = &cl.case_i {
                        let _ = writeln!(t, "case (i): J\\I splits as {}", split_text(s));
                    }
                    if let Some(s) = &cl.case_ii {
                        let _ = writeln!(t, "case (ii): I\\J splits as {}", split_text(s));
                    }
                    let _ = writeln!(t, "c = {c}");
                    t
                }
            };
            Ok(Report::clean(text, serde_json::to_value(&cl)?))
        }
        Command::Verify(v) => verify(v),
        Command::Explore { shape, max_seeds, max_depth, geometric_only } => {
            let s = explore_exchange_graph(shape.m, shape.n, max_seeds, max_depth, geometric_only)?;
            let value = serde_json::to_value(&s)?;
            let text = format!("{}\n", serde_json::to_string(&value)?);
            Ok(Report::clean(text, value))
        }
        Command::Serve { .. } => unreachable!("handled by run"),
    }
}

fn subsets(pair: &Pair) -> Result<(IndexSubset, IndexSubset), UsageError> {
    let i = IndexSubset::from_unsorted(pair.n, &pair.i)?;
    let j = IndexSubset::from_unsorted(pair.n, &pair.j)?;
    if i.len() != j.len() {
        return Err(UsageError(format!("|I| = {} but |J| = {}", i.len(), j.len())));
    }
    if i.is_empty() || i.len() >= pair.n {
        return Err(UsageError(format!("need 1 <= |I| < n, got |I| = {}", i.len())));
    }
    Ok((i, j))
}

fn split_text(s: &Split) -> String {
    format!("{:?} < . < {:?}", s.before, s.after)
}

fn seed_text(seed: &QuantumSeed) -> String {
    let mut t = String::new();
    if let Some(p) = seed.params() {
        let _ = write!(t, "Gr({},{}): ", p.m, p.n);
    }
    let _ = writeln!(
        t,
        "{} positions, {} mutable, history {:?}",
        seed.total(),
        seed.mutable(),
        seed.history().iter().map(|k| k + 1).collect::<Vec<_>>()
    );
    for (i, p) in seed.positions().iter().enumerate() {
        let label = p.label.map_or_else(|| "-".to_string(), |l| l.to_string());
        let _ = writeln!(t, "  {:>3}  {:<16} {}", i + 1, label, if p.frozen { "frozen" } else { "mutable" });
    }
    for (name, rows) in [("B", seed.b().matrix().to_rows()), ("L", seed.l().matrix().to_rows())] {
        let _ = writeln!(t, "{name}:");
        for row in rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
            let _ = writeln!(t, "  {}", cells.join(""));
        }
    }
    t
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Step {
    position: usize,
    geometric_exchange: bool,
    old_label: Option<Vec<usize>>,
    new_label: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    abcd: Option<[usize; 4]>,
}

fn mutate(shape: Shape, path: &[usize]) -> Result<Report, UsageError> {
    let mut seed = initial_seed_with(shape.m, shape.n, false)?;
    let mut steps = Vec::new();
    let mut text = String::new();
    for &p in path {
        if p == 0 || p > seed.mutable() {
            return Err(UsageError(format!(
                "position {p} is not mutable (mutable positions are 1..={})",
                seed.mutable()
            )));
        }
        let k = p - 1;
        let old = seed.label(k);
        let mu = seed.mutate(k)?;
        seed = mu.seed;
        let new = seed.label(k);
        let show = |l: Option<IndexSubset>| l.map_or_else(|| "unlabeled".to_string(), |l| l.to_string());
        let kind = match &mu.exchange {
            Some(x) => format!("geometric, common {} a,b,c,d = {},{},{},{}", x.common, x.a, x.b, x.c, x.d),
            None => "non-geometric".to_string(),
        };
        let _ = writeln!(text, "step {}: position {p}: {} -> {} ({kind})", steps.len() + 1, show(old), show(new));
        steps.push(Step {
            position: p,
            geometric_exchange: mu.exchange.is_some(),
            old_label: old.map(|l| l.elements()),
            new_label: new.map(|l| l.elements()),
            abcd: mu.exchange.map(|x| [x.a, x.b, x.c, x.d]),
        });
    }
    text.push_str(&seed_text(&seed));
    Ok(Report::clean(text, json!({ "steps": steps, "seed": seed.to_json() })))
}

fn verify(v: Verify) -> Result<Report, UsageError> {
    let (summary, json, violations) = match v {
        Verify::Lz(Shape { m, n }) => {
            let r = verify_lz(m, n)?;
            let s = format!("{} pairs, {} violations", r.pairs, r.violations.len());
            (s, serde_json::to_value(&r)?, r.violations.len())
        }
        Verify::Compat { shape: Shape { m, n }, depth, samples, seed } => {
            let init = initial_compatibility(m, n)?;
            let paths = mutation_consistency(m, n, samples, depth, seed)?;
            let bad = init.violations.len() + paths.violations.len();
            let s = format!(
                "degrees {:?}, {} paths, {} steps, {bad} violations",
                init.degrees, paths.paths, paths.steps
            );
            (s, json!({ "initial": init, "paths": paths }), bad)
        }
        Verify::Plucker { shape: Shape { m, n }, depth, samples, seed } => {
            let r = plucker_exchanges(m, n, depth, samples, seed)?;
            let s = format!(
                "{} exchanges, {} relations, {} evaluations, {} violations",
                r.exchanges,
                r.relations,
                r.evaluations,
                r.violations.len()
            );
            (s, serde_json::to_value(&r)?, r.violations.len())
        }
        Verify::Laurent { shape: Shape { m, n }, depth, samples, seed } => {
            let r = laurent_involution(m, n, samples, depth, seed)?;
            let s = format!("{} paths, {} steps, {} violations", r.paths, r.steps, r.violations.len());
            (s, serde_json::to_value(&r)?, r.violations.len())
        }
    };
    Ok(Report { text: format!("{summary}\n"), json, violations: violations > 0 })
}

fn serve(address: &str, port: u16, undo_cap: usize) -> ExitCode {
    let _ = tracing_subscriber::fmt()
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()),
        )
        .with_writer(std::io::stderr)
        .try_init();
    let addr: SocketAddr = match format!("{address}:{port}").parse() {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: bad address {address}:{port}: {e}");
            return ExitCode::from(2);
        }
    };
    let store = match std::env::var_os("QGRASS_SNAPSHOT_DIR") {
        Some(dir) => match SessionStore::with_snapshots(undo_cap, dir) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: snapshot directory: {e}");
                return ExitCode::from(2);
            }
        },
        None => SessionStore::new(undo_cap),
    };
    let runtime = tokio::runtime::Runtime::new().expect("tokio runtime");
    let result = runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind(addr).await?;
        let local = listener.local_addr()?;
        tracing::info!("{} sessions restored", store.len());
        println!("listening on http://{local}");
        std::io::stdout().flush()?;
        axum::serve(listener, router(Arc::new(store)))
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
