//! `mckay-lab`: runs the verifiers and writes manifest-stamped reports.
//!
//! Exit codes: 0 when every assertion passes, 1 on an assertion failure
//! (counterexamples are written to the output directory), 2 on invalid
//! input, 3 on I/O errors.

mod commands;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mckay::harness::{with_workers, Envelope, RunManifest, TableCache};
use mckay::Error;
use serde::Serialize;
use serde_json::{json, Value};

use commands::{Artifact, Context};
use report::Report;

#[derive(Parser, Debug)]
#[command(name = "mckay-lab", version, about = "Exact McKay-graph and classical-group character verifiers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Character table cache; falls back to $MCKAY_CACHE_DIR, no cache if neither is set.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Directory for the JSON report and counterexample artifacts.
    #[arg(long, global = true, default_value = "mckay-out")]
    out_dir: PathBuf,
    /// Re-validate cached tables on load.
    #[arg(long, global = true)]
    paranoid: bool,
    /// Re-run a verifier on the elements stored in a counterexample artifact.
    #[arg(long, global = true)]
    replay: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
    Markdown,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Character table of S_n.
    SnTable(commands::TableArgs),
    /// Character table of A_n.
    AnTable(commands::TableArgs),
    /// McKay graph diameters and covering exponents.
    Mckay(commands::GraphArgs),
    /// Covering exponents against distances from the trivial character.
    Covering(commands::GraphArgs),
    /// Fit the diameter constant on small A_n and assert it on larger ones.
    #[command(name = "theorem2-sweep")]
    DiameterSweep(commands::SweepArgs),
    /// Products of many characters cover Irr(G).
    #[command(name = "prop54")]
    ProductCovers(commands::ProductArgs),
    /// Staircase degree bound dim^11 >= (n!)^5.
    Staircase(commands::StaircaseArgs),
    /// Induction-step inequality for the staircase bound.
    St1(commands::St1Args),
    /// One-box extensions of the near-staircase partition are never self-conjugate.
    MuCheck(commands::MuArgs),
    /// Degree lower bound for split characters of A_n.
    KstCheck(commands::KstArgs),
    /// Exhaustive Weil-character checks on Sp_2n(q), q even.
    SpExhaustive(commands::SpArgs),
    /// Sampled decomposition identities on orthogonal groups.
    OmegaIdentities(commands::OmegaArgs),
    /// Sampled character ratio bounds.
    RatioCheck(commands::RatioArgs),
    /// Steinberg-sum bounds over a grid of n and q.
    SigmaBounds(commands::SigmaArgs),
    /// Centralizer exponent brute force.
    SestCheck(commands::SestArgs),
    /// Constant bookkeeping behind the diameter bounds.
    Constants(commands::NoArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::SnTable(_) => "sn-table",
            Command::AnTable(_) => "an-table",
            Command::Mckay(_) => "mckay",
            Command::Covering(_) => "covering",
            Command::DiameterSweep(_) => "theorem2-sweep",
            Command::ProductCovers(_) => "prop54",
            Command::Staircase(_) => "staircase",
            Command::St1(_) => "st1",
            Command::MuCheck(_) => "mu-check",
            Command::KstCheck(_) => "kst-check",
            Command::SpExhaustive(_) => "sp-exhaustive",
            Command::OmegaIdentities(_) => "omega-identities",
            Command::RatioCheck(_) => "ratio-check",
            Command::SigmaBounds(_) => "sigma-bounds",
            Command::SestCheck(_) => "sest-check",
            Command::Constants(_) => "constants",
        }
    }

    fn parameters(&self) -> Value {
        fn v<T: Serialize>(a: &T) -> Value {
            serde_json::to_value(a).unwrap_or(Value::Null)
        }
        match self {
            Command::SnTable(a) | Command::AnTable(a) => v(a),
            Command::Mckay(a) | Command::Covering(a) => v(a),
            Command::DiameterSweep(a) => v(a),
            Command::ProductCovers(a) => v(a),
            Command::Staircase(a) => v(a),
            Command::St1(a) => v(a),
            Command::MuCheck(a) => v(a),
            Command::KstCheck(a) => v(a),
            Command::SpExhaustive(a) => v(a),
            Command::OmegaIdentities(a) => v(a),
            Command::RatioCheck(a) => v(a),
            Command::SigmaBounds(a) => v(a),
            Command::SestCheck(a) => v(a),
            Command::Constants(a) => v(a),
        }
    }

    fn run(&self, ctx: &Context) -> mckay::Result<Report> {
        match self {
            Command::SnTable(a) => commands::sn_table(ctx, a),
            Command::AnTable(a) => commands::an_table(ctx, a),
            Command::Mckay(a) => commands::mckay(ctx, a),
            Command::Covering(a) => commands::covering(ctx, a),
            Command::DiameterSweep(a) => commands::diameter_sweep(ctx, a),
            Command::ProductCovers(a) => commands::product_covers(ctx, a),
            Command::Staircase(a) => commands::staircase(ctx, a),
            Command::St1(a) => commands::st1(ctx, a),
            Command::MuCheck(a) => commands::mu_check(ctx, a),
            Command::KstCheck(a) => commands::kst_check(ctx, a),
            Command::SpExhaustive(a) => commands::sp_exhaustive_cmd(ctx, a),
            Command::OmegaIdentities(a) => commands::omega_identities_cmd(ctx, a),
            Command::RatioCheck(a) => commands::ratio_check_cmd(ctx, a),
            Command::SigmaBounds(a) => commands::sigma_bounds(ctx, a),
            Command::SestCheck(a) => commands::sest_check(ctx, a),
            Command::Constants(a) => commands::constants(ctx, a),
        }
    }
}

fn write_json(path: &Path, v: &impl Serialize) -> mckay::Result<()> {
    let mut bytes = serde_json::to_vec_pretty(v)?;
    bytes.push(b'\n');
    std::fs::write(path, bytes)?;
    Ok(())
}

fn execute(cli: &Cli) -> mckay::Result<bool> {
    let name = cli.command.name();
    let cache = cli.cache_dir.clone().map(TableCache::new).or_else(TableCache::from_env).map(|c| c.paranoid(cli.paranoid));
    let ctx = Context { seed: cli.seed, cache, replay: cli.replay.clone() };
    let mut parameters = cli.command.parameters();
    if let (Some(path), Value::Object(map)) = (&cli.replay, &mut parameters) {
        map.insert("replay".into(), json!(path.display().to_string()));
    }
    let mut rendered: Option<Report> = None;
    let envelope: Envelope<Value> = with_workers(cli.workers, || {
        RunManifest::run(name, parameters.clone(), cli.seed, cli.workers, || {
            let report = cli.command.run(&ctx)?;
            let result = json!({"command": name, "pass": report.pass, "data": report.data});
            rendered = Some(report);
            Ok(result)
        })
    })??;
    let report = rendered.expect("report is set when the run succeeds");

    std::fs::create_dir_all(&cli.out_dir)?;
    write_json(&cli.out_dir.join(format!("{name}.json")), &envelope)?;
    let artifact_path = cli.out_dir.join(format!("{name}-counterexamples.json"));
    if let (false, Some(cx)) = (report.pass, &report.counterexamples) {
        let artifact = Artifact { command: name.into(), parameters, seed: cli.seed, counterexamples: cx.clone() };
        write_json(&artifact_path, &artifact)?;
    }

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &envelope)?;
            writeln!(out)?;
        }
        Format::Text => report.write_text(name, &mut out)?,
        Format::Markdown => report.write_markdown(name, &mut out)?,
        Format::Csv => report.write_csv(&mut out).map_err(|e| Error::Io(e.into()))?,
    }
    if !report.pass {
        let where_ = if report.counterexamples.is_some() { format!(", counterexamples in {}", artifact_path.display()) } else { String::new() };
        eprintln!("{name}: assertion failed{where_}");
    }
    Ok(report.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                e if e.is_validation() => 2,
                Error::Io(_) | Error::Json(_) | Error::Cache(_) => 3,
                _ => 1,
            })
        }
    }
}
