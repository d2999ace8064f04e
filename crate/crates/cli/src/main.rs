//! Batch command-line front end for the 2-PASEP computation kit.
//!
//! Exit codes: 0 on success, 1 on a computational disagreement or failed
//! verification, 2 on invalid input. Errors are emitted to stderr as a
//! JSON object.

mod checks;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use pasep2::ansatz::{z_sector_ansatz, z_word_ansatz};
use pasep2::bijections::{
    francon_viennot, francon_viennot_inverse, history_to_large, induced_particle_hole,
    large_to_history, marked_francon_viennot, marked_francon_viennot_inverse,
    particle_hole_involution,
};
use pasep2::chain::ChainModel;
use pasep2::histories::{z_sector_paths, z_word_paths, MarkedLaguerreHistory, MarkedLargeLaguerreHistory};
use pasep2::permutations::PartiallySignedPermutation;
use pasep2::states::{AdeWord, SegComposition, StateWord};
use pasep2::{QPoly, QRat};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Parser)]
#[command(name = "pasep2", version, about = "Exact 2-PASEP stationary distributions, partition functions, and bijections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format (csv only for distribution tables)
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output to this file instead of stdout; relative paths
    /// are resolved against $PASEP2_OUT_DIR when it is set
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Stationary probability of one state, from all three backends
    Prob(ProbArgs),
    /// Weight polynomial of one state or word
    Zpoly(ZpolyArgs),
    /// Sector partition function
    Ztotal(ZtotalArgs),
    /// Apply a bijection or encoding map to a serialized object
    Map(MapArgs),
    /// Run a named invariant suite
    Verify(VerifyArgs),
    /// Recompute the worked examples and compare with pinned values
    ReproducePaper,
    /// Markov chain oracle
    #[command(subcommand)]
    Chain(ChainCommand),
}

#[derive(Args)]
struct ProbArgs {
    /// State string over o/b/g, e.g. `bgo`
    #[arg(long)]
    state: Option<String>,
    /// ADE word, e.g. `DAE`
    #[arg(long)]
    word: Option<String>,
    /// Exact rational in [0, 1], e.g. `1`, `1/2`
    #[arg(long, default_value = "1")]
    q: String,
}

#[derive(Args)]
struct ZpolyArgs {
    #[arg(long)]
    state: Option<String>,
    #[arg(long)]
    word: Option<String>,
}

#[derive(Args)]
struct ZtotalArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
}

#[derive(Args)]
struct MapArgs {
    /// One of: iota, ade-of-state, state-of-ade, seg-to-ade, ade-to-seg,
    /// particle-hole-state, fv, fv-inverse, marked-fv, marked-fv-inverse,
    /// psi, psi-marked, psi-inverse, psi-marked-inverse, iota-llh, induced
    #[arg(long)]
    op: String,
    #[arg(long)]
    word: Option<String>,
    #[arg(long)]
    state: Option<String>,
    /// Segmented composition, e.g. `1|2|1,2,2`
    #[arg(long)]
    comp: Option<String>,
    /// Permutation, e.g. `2~ 5 7 8 3 6 4~ 1`
    #[arg(long)]
    perm: Option<String>,
    /// Path as JSON: `[{"kind":"R","w":0,"marked":false}, ...]`
    #[arg(long)]
    path: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: ansatz-relations, recurrences, factorization, lumping,
    /// particle-hole, mnk, backends, bijections, all
    #[arg(long)]
    suite: String,
    /// Size bound for the recurrence suite
    #[arg(long, default_value_t = 5)]
    max_size: usize,
}

#[derive(Subcommand)]
enum ChainCommand {
    /// Exact stationary distribution of the (n, r) sector
    Solve(ChainArgs),
    /// Seed-deterministic trajectory occupancy counts
    Simulate(SimArgs),
}

#[derive(Args)]
struct ChainArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    #[arg(long, default_value = "1")]
    q: String,
}

#[derive(Args)]
struct SimArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    #[arg(long, default_value = "1")]
    q: String,
    #[arg(long)]
    steps: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Failure modes mapped to exit codes.
enum CliError {
    /// Exit 1: backends disagree or a verification suite failed.
    Disagreement(String),
    /// Exit 2: the input cannot be interpreted.
    InvalidInput(String),
}

impl CliError {
    fn invalid(e: impl std::fmt::Display) -> Self {
        CliError::InvalidInput(e.to_string())
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Disagreement(_) => 1,
            CliError::InvalidInput(_) => 2,
        }
    }

    fn to_json(&self) -> Value {
        let (kind, message) = match self {
            CliError::Disagreement(m) => ("disagreement", m),
            CliError::InvalidInput(m) => ("invalid-input", m),
        };
        json!({"error": {"kind": kind, "message": message}})
    }
}

fn main() {
    let cli = Cli::parse();
    let format = cli.format;
    let out = cli.out.clone();
    let result = run(cli);
    match result {
        Ok(rendered) => {
            if let Err(e) = emit(&rendered, out.as_deref()) {
                eprintln!("{}", CliError::invalid(e).to_json());
                std::process::exit(2);
            }
        }
        Err(err) => {
            // machine-readable error object, regardless of --format
            let _ = format;
            eprintln!("{}", err.to_json());
            std::process::exit(err.exit_code());
        }
    }
}

fn emit(rendered: &str, out: Option<&std::path::Path>) -> std::io::Result<()> {
    match out {
        None => {
            println!("{rendered}");
            Ok(())
        }
        Some(path) => {
            let resolved = match (path.is_relative(), std::env::var_os("PASEP2_OUT_DIR")) {
                (true, Some(dir)) => PathBuf::from(dir).join(path),
                _ => path.to_path_buf(),
            };
            std::fs::write(resolved, format!("{rendered}\n"))
        }
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Prob(args) => prob(args, cli.format),
        Command::Zpoly(args) => zpoly(args, cli.format),
        Command::Ztotal(args) => ztotal(args, cli.format),
        Command::Map(args) => map(args, cli.format),
        Command::Verify(args) => verify(args),
        Command::ReproducePaper => reproduce_paper(),
        Command::Chain(ChainCommand::Solve(args)) => chain_solve(args, cli.format),
        Command::Chain(ChainCommand::Simulate(args)) => chain_simulate(args, cli.format),
    }
}

fn parse_q(s: &str) -> Result<QRat, CliError> {
    QRat::from_str(s).map_err(|e| CliError::invalid(format!("cannot parse q = {s:?}: {e}")))
}

fn parse_state_or_word(
    state: Option<&str>,
    word: Option<&str>,
) -> Result<(StateWord, AdeWord), CliError> {
    match (state, word) {
        (Some(s), None) => {
            let state: StateWord = s.parse().map_err(CliError::invalid)?;
            let word = state.to_ade();
            Ok((state, word))
        }
        (None, Some(w)) => {
            let word: AdeWord = w.parse().map_err(CliError::invalid)?;
            let state = word.to_state().map_err(CliError::invalid)?;
            Ok((state, word))
        }
        _ => Err(CliError::InvalidInput("give exactly one of --state or --word".into())),
    }
}

fn rat_string(x: &QRat) -> String {
    x.to_string()
}

fn rat_decimal(x: &QRat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn poly_json(p: &QPoly) -> Value {
    serde_json::to_value(p).expect("polynomial serializes")
}

fn no_csv(format: Format) -> Result<(), CliError> {
    if format == Format::Csv {
        Err(CliError::InvalidInput("csv output is only available for distribution tables".into()))
    } else {
        Ok(())
    }
}

fn prob(args: ProbArgs, format: Format) -> Result<String, CliError> {
    no_csv(format)?;
    let (state, word) = parse_state_or_word(args.state.as_deref(), args.word.as_deref())?;
    let q = parse_q(&args.q)?;
    let (n, r) = (state.len(), state.gray_count());
    let chain = ChainModel::build(n, r, q.clone()).map_err(CliError::invalid)?;
    let pi = chain.stationary().map_err(|e| CliError::Disagreement(e.to_string()))?;
    let by_chain = pi.probabilities()[chain.state_index(&state).expect("state in sector")].clone();
    let denom_ansatz = z_sector_ansatz(n, r).eval(&q);
    let by_ansatz = z_word_ansatz(&word).eval(&q) / denom_ansatz;
    let denom_paths = z_sector_paths(n, r).eval(&q);
    let by_paths = z_word_paths(&word, false).eval(&q) / denom_paths;
    let agree = by_chain == by_ansatz && by_chain == by_paths;
    let payload = json!({
        "state": state.to_string(),
        "word": word.to_string(),
        "n": n,
        "r": r,
        "q": rat_string(&q),
        "backends": {
            "chain": rat_string(&by_chain),
            "ansatz": rat_string(&by_ansatz),
            "paths": rat_string(&by_paths),
        },
        "agree": agree,
        "probability": rat_string(&by_chain),
        "decimal": rat_decimal(&by_chain),
    });
    if !agree {
        return Err(CliError::Disagreement(format!(
            "backends disagree for state {state} at q = {q}: chain {by_chain}, ansatz {by_ansatz}, paths {by_paths}"
        )));
    }
    Ok(match format {
        Format::Json => payload.to_string(),
        _ => format!(
            "P({state}) = {} = {:.10}  [n = {n}, r = {r}, q = {}; chain = ansatz = paths]",
            rat_string(&by_chain),
            rat_decimal(&by_chain),
            rat_string(&q),
        ),
    })
}

fn zpoly(args: ZpolyArgs, format: Format) -> Result<String, CliError> {
    no_csv(format)?;
    let (state, word) = parse_state_or_word(args.state.as_deref(), args.word.as_deref())?;
    let by_ansatz = z_word_ansatz(&word);
    let by_paths = z_word_paths(&word, false);
    if by_ansatz != by_paths {
        return Err(CliError::Disagreement(format!(
            "backends disagree for word {word}: ansatz {by_ansatz}, paths {by_paths}"
        )));
    }
    Ok(match format {
        Format::Json => json!({
            "state": state.to_string(),
            "word": word.to_string(),
            "coeffs": poly_json(&by_ansatz),
            "pretty": by_ansatz.to_string(),
        })
        .to_string(),
        _ => by_ansatz.to_string(),
    })
}

fn ztotal(args: ZtotalArgs, format: Format) -> Result<String, CliError> {
    no_csv(format)?;
    if args.r > args.n {
        return Err(CliError::InvalidInput(format!("r = {} exceeds n = {}", args.r, args.n)));
    }
    let by_ansatz = z_sector_ansatz(args.n, args.r);
    let by_paths = z_sector_paths(args.n, args.r);
    if by_ansatz != by_paths {
        return Err(CliError::Disagreement(format!(
            "backends disagree for sector ({}, {}): ansatz {by_ansatz}, paths {by_paths}",
            args.n, args.r
        )));
    }
    Ok(match format {
        Format::Json => json!({
            "n": args.n,
            "r": args.r,
            "coeffs": poly_json(&by_ansatz),
            "pretty": by_ansatz.to_string(),
        })
        .to_string(),
        _ => by_ansatz.to_string(),
    })
}

fn map(args: MapArgs, format: Format) -> Result<String, CliError> {
    no_csv(format)?;
    let need = |opt: &Option<String>, what: &str| -> Result<String, CliError> {
        opt.clone().ok_or_else(|| CliError::InvalidInput(format!("--op {} needs --{what}", args.op)))
    };
    let parse_word = |s: &str| s.parse::<AdeWord>().map_err(CliError::invalid);
    let parse_state = |s: &str| s.parse::<StateWord>().map_err(CliError::invalid);
    let parse_small = |s: &str| {
        serde_json::from_str::<MarkedLaguerreHistory>(s).map_err(CliError::invalid)
    };
    let parse_large = |s: &str| {
        serde_json::from_str::<MarkedLargeLaguerreHistory>(s).map_err(CliError::invalid)
    };
    let parse_perm = |s: &str| s.parse::<PartiallySignedPermutation>().map_err(CliError::invalid);
    let parse_plain = |s: &str| -> Result<Vec<usize>, CliError> {
        let p = parse_perm(s)?;
        if p.overline_count() > 0 {
            return Err(CliError::InvalidInput("this map expects an unsigned permutation".into()));
        }
        Ok(p.values().to_vec())
    };
    // output as (json value, text rendering)
    let (input, output): (Value, (Value, String)) = match args.op.as_str() {
        "iota" => {
            let w = parse_word(&need(&args.word, "word")?)?;
            let out = w.iota();
            (json!(w.to_string()), (json!(out.to_string()), out.to_string()))
        }
        "ade-of-state" => {
            let s = parse_state(&need(&args.state, "state")?)?;
            let out = s.to_ade();
            (json!(s.to_string()), (json!(out.to_string()), out.to_string()))
        }
        "state-of-ade" => {
            let w = parse_word(&need(&args.word, "word")?)?;
            let out = w.to_state().map_err(CliError::invalid)?;
            (json!(w.to_string()), (json!(out.to_string()), out.to_string()))
        }
        "particle-hole-state" => {
            let s = parse_state(&need(&args.state, "state")?)?;
            let out = s.particle_hole();
            (json!(s.to_string()), (json!(out.to_string()), out.to_string()))
        }
        "seg-to-ade" => {
            let c: SegComposition =
                need(&args.comp, "comp")?.parse().map_err(CliError::invalid)?;
            let out = c.to_ade();
            (json!(c.to_string()), (json!(out.to_string()), out.to_string()))
        }
        "ade-to-seg" => {
            let w = parse_word(&need(&args.word, "word")?)?;
            let out = w.to_seg_composition();
            (json!(w.to_string()), (json!(out.to_string()), out.to_string()))
        }
        "gc" => {
            let p = parse_perm(&need(&args.perm, "perm")?)?;
            let out = p.genocchi_composition();
            (json!(p.to_string()), (json!(out.to_string()), out.to_string()))
        }
        "fv" => {
            let values = parse_plain(&need(&args.perm, "perm")?)?;
            let h = francon_viennot(&values);
            (json!(PartiallySignedPermutation::unsigned(values).unwrap().to_string()),
             (serde_json::to_value(&h).unwrap(), serde_json::to_string(&h).unwrap()))
        }
        "fv-inverse" => {
            let h = parse_small(&need(&args.path, "path")?)?;
            if !h.marked_positions().is_empty() {
                return Err(CliError::InvalidInput("fv-inverse expects an unmarked path".into()));
            }
            let values = francon_viennot_inverse(&h);
            let p = PartiallySignedPermutation::unsigned(values).unwrap();
            (serde_json::to_value(&h).unwrap(), (json!(p.to_string()), p.to_string()))
        }
        "marked-fv" => {
            let p = parse_perm(&need(&args.perm, "perm")?)?;
            let h = marked_francon_viennot(&p);
            (json!(p.to_string()), (serde_json::to_value(&h).unwrap(), serde_json::to_string(&h).unwrap()))
        }
        "marked-fv-inverse" => {
            let h = parse_small(&need(&args.path, "path")?)?;
            let p = marked_francon_viennot_inverse(&h);
            (serde_json::to_value(&h).unwrap(), (json!(p.to_string()), p.to_string()))
        }
        "psi" | "psi-marked" => {
            let h = parse_small(&need(&args.path, "path")?)?;
            if args.op == "psi" && !h.marked_positions().is_empty() {
                return Err(CliError::InvalidInput(
                    "psi expects an unmarked path; use psi-marked".into(),
                ));
            }
            let out = history_to_large(&h);
            (serde_json::to_value(&h).unwrap(), (serde_json::to_value(&out).unwrap(), serde_json::to_string(&out).unwrap()))
        }
        "psi-inverse" | "psi-marked-inverse" => {
            let h = parse_large(&need(&args.path, "path")?)?;
            if args.op == "psi-inverse" && !h.marked_positions().is_empty() {
                return Err(CliError::InvalidInput(
                    "psi-inverse expects an unmarked path; use psi-marked-inverse".into(),
                ));
            }
            let out = large_to_history(&h);
            (serde_json::to_value(&h).unwrap(), (serde_json::to_value(&out).unwrap(), serde_json::to_string(&out).unwrap()))
        }
        "iota-llh" => {
            let h = parse_large(&need(&args.path, "path")?)?;
            let out = particle_hole_involution(&h);
            (serde_json::to_value(&h).unwrap(), (serde_json::to_value(&out).unwrap(), serde_json::to_string(&out).unwrap()))
        }
        "induced" => {
            let h = parse_small(&need(&args.path, "path")?)?;
            let out = induced_particle_hole(&h);
            (serde_json::to_value(&h).unwrap(), (serde_json::to_value(&out).unwrap(), serde_json::to_string(&out).unwrap()))
        }
        other => {
            return Err(CliError::InvalidInput(format!("unknown map operation {other:?}")));
        }
    };
    Ok(match format {
        Format::Json => json!({"op": args.op, "input": input, "output": output.0}).to_string(),
        _ => output.1,
    })
}

fn verify(args: VerifyArgs) -> Result<String, CliError> {
    if args.max_size > 7 {
        return Err(CliError::InvalidInput("--max-size must be at most 7".into()));
    }
    let suites = checks::verify_suites(&args.suite, args.max_size)
        .ok_or_else(|| CliError::InvalidInput(format!("unknown suite {:?}", args.suite)))?;
    let mut lines = Vec::new();
    let mut failures = 0usize;
    for (name, run) in suites {
        match run() {
            Ok(summary) => lines.push(format!("ok   {name}: {summary}")),
            Err(detail) => {
                failures += 1;
                lines.push(format!("FAIL {name}: {detail}"));
            }
        }
    }
    let rendered = lines.join("\n");
    if failures > 0 {
        Err(CliError::Disagreement(format!("{failures} suite(s) failed:\n{rendered}")))
    } else {
        Ok(rendered)
    }
}

fn reproduce_paper() -> Result<String, CliError> {
    let mut lines = Vec::new();
    let mut failures = 0usize;
    for (name, run) in checks::paper_examples() {
        match run() {
            Ok(detail) => lines.push(format!("ok   {name}: {detail}")),
            Err(detail) => {
                failures += 1;
                lines.push(format!("FAIL {name}: {detail}"));
            }
        }
    }
    let rendered = lines.join("\n");
    if failures > 0 {
        Err(CliError::Disagreement(format!("{failures} example(s) diverged:\n{rendered}")))
    } else {
        Ok(rendered)
    }
}

fn chain_solve(args: ChainArgs, format: Format) -> Result<String, CliError> {
    let q = parse_q(&args.q)?;
    let chain = ChainModel::build(args.n, args.r, q.clone()).map_err(CliError::invalid)?;
    let pi = chain.stationary().map_err(|e| CliError::Disagreement(e.to_string()))?;
    let rows: Vec<(String, &QRat)> = chain
        .states()
        .iter()
        .zip(pi.probabilities())
        .map(|(s, p)| (s.to_string(), p))
        .collect();
    Ok(match format {
        Format::Json => json!({
            "n": args.n,
            "r": args.r,
            "q": rat_string(&q),
            "states": rows.iter().map(|(s, p)| json!({
                "state": s,
                "probability": rat_string(p),
                "decimal": rat_decimal(p),
            })).collect::<Vec<_>>(),
        })
        .to_string(),
        Format::Csv => {
            let mut out = String::from("state,probability,decimal\n");
            for (s, p) in &rows {
                out.push_str(&format!("{s},{},{}\n", rat_string(p), rat_decimal(p)));
            }
            out.trim_end().to_string()
        }
        Format::Text => rows
            .iter()
            .map(|(s, p)| format!("{s}  {}  {:.10}", rat_string(p), rat_decimal(p)))
            .collect::<Vec<_>>()
            .join("\n"),
    })
}

fn chain_simulate(args: SimArgs, format: Format) -> Result<String, CliError> {
    let q = parse_q(&args.q)?;
    let chain = ChainModel::build(args.n, args.r, q.clone()).map_err(CliError::invalid)?;
    let sim = chain.simulate(args.steps, args.seed).map_err(CliError::invalid)?;
    let empirical = sim.empirical();
    let tv = chain
        .stationary()
        .ok()
        .map(|pi| sim.total_variation(pi.probabilities()));
    let rows: Vec<(String, u64, &QRat)> = chain
        .states()
        .iter()
        .zip(&sim.counts)
        .zip(&empirical)
        .map(|((s, &c), e)| (s.to_string(), c, e))
        .collect();
    Ok(match format {
        Format::Json => json!({
            "n": args.n,
            "r": args.r,
            "q": rat_string(&q),
            "steps": args.steps,
            "seed": args.seed,
            "states": rows.iter().map(|(s, c, e)| json!({
                "state": s,
                "count": c,
                "empirical": rat_decimal(e),
            })).collect::<Vec<_>>(),
            "tv_vs_exact": tv.as_ref().map(rat_string),
        })
        .to_string(),
        Format::Csv => {
            let mut out = String::from("state,count,empirical\n");
            for (s, c, e) in &rows {
                out.push_str(&format!("{s},{c},{}\n", rat_decimal(e)));
            }
            out.trim_end().to_string()
        }
        Format::Text => {
            let mut lines: Vec<String> = rows
                .iter()
                .map(|(s, c, e)| format!("{s}  {c}  {:.6}", rat_decimal(e)))
                .collect();
            if let Some(tv) = &tv {
                lines.push(format!("tv_vs_exact  {}  {:.6}", rat_string(tv), rat_decimal(tv)));
            }
            lines.join("\n")
        }
    })
}
