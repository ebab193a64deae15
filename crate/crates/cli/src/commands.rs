//! Argument definitions and command implementations.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use dccodes::algebra::{find_wozencraft_k, Symbol};
use dccodes::code::{
    brute_force_balanced_profile, brute_force_distance, hamming_distance, Bound, CodeError,
    DecodeOutcome, OracleBudget,
};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::criteria::{self, Config, Status};
use crate::descriptor::{format_bound, Descriptor, Family, Instance, Parameters};
use crate::words::{format_word, parse_words};
use crate::{CliError, Exit};

#[derive(Debug, Parser)]
#[command(
    name = "dccodes",
    version,
    about = "Double-circulant and Wozencraft codes: construct, encode, decode, analyze"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a code and write its descriptor.
    Construct(ConstructArgs),
    /// Encode messages (one per line) into codewords.
    Encode(CodingArgs),
    /// Decode received words; exits 2 if any word is uncorrectable.
    Decode(CodingArgs),
    /// Report certified bounds and, on request, exact oracle values.
    Analyze(AnalyzeArgs),
    /// Parameter search helpers.
    #[command(subcommand)]
    Params(ParamsCommand),
    /// Run the acceptance criteria.
    Selftest(SelftestArgs),
    /// Time encoding and decoding on random corrupted codewords.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// sidon-dc, rm-dc or wozencraft.
    pub family: String,
    /// Parameters as key=value (q, k, m, r, sidon=0,7,13).
    pub params: Vec<String>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub r: Option<u32>,
    /// Comma-separated Sidon set; defaults to the Erdos-Turan set for `k`.
    #[arg(long, value_delimiter = ',')]
    pub sidon: Option<Vec<usize>>,
    /// Output file; stdout when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CodingArgs {
    pub descriptor: PathBuf,
    /// Word file, or `-` for stdin.
    pub input: PathBuf,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub descriptor: PathBuf,
    /// Enumerate all messages for the exact minimum distance.
    #[arg(long)]
    pub exact_distance: bool,
    /// Enumerate all messages for the exact (2, d)-balanced parameter.
    #[arg(long)]
    pub balanced: bool,
    /// Words used for the decoder timings.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum ParamsCommand {
    /// Smallest prime k >= min with q primitive modulo k.
    FindK {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 2)]
        min: u64,
        #[arg(long, default_value_t = 1 << 20)]
        limit: u64,
    },
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Run only these criteria.
    #[arg(long, value_delimiter = ',')]
    pub only: Option<Vec<u32>>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    pub descriptor: PathBuf,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<Exit, CliError> {
    let budget = OracleBudget::from_env();
    match cli.command {
        Command::Construct(a) => construct(a, budget, out, err),
        Command::Encode(a) => encode(a, budget, out),
        Command::Decode(a) => decode(a, budget, out, err),
        Command::Analyze(a) => analyze(a, budget, out),
        Command::Params(ParamsCommand::FindK { q, min, limit }) => {
            let k = find_wozencraft_k(q, min, limit)?;
            writeln!(out, "{k}").map_err(stdout_err)?;
            Ok(Exit::Success)
        }
        Command::Selftest(a) => selftest(a, out),
        Command::Bench(a) => bench(a, budget, out),
    }
}

fn stdout_err(e: std::io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source: e,
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let io = |e| CliError::Io {
        path: path.display().to_string(),
        source: e,
    };
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn write_output(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io {
            path: p.display().to_string(),
            source: e,
        }),
        None => out.write_all(text.as_bytes()).map_err(stdout_err),
    }
}

fn load(path: &Path, budget: OracleBudget) -> Result<(Descriptor, Instance), CliError> {
    Descriptor::load(&read_input(path)?, budget)
}

/// Merges `key=value` pairs into the flag values; a key given twice is an
/// error.
pub fn parse_parameters(a: &ConstructArgs) -> Result<Parameters, CliError> {
    let mut p = Parameters {
        q: a.q,
        k: a.k,
        r: a.r,
        m: a.m,
        sidon: a.sidon.clone(),
    };
    for kv in &a.params {
        let (key, value) = kv
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected key=value, got {kv:?}")))?;
        let bad = || CliError::Usage(format!("bad value for {key}: {value:?}"));
        let dup = || CliError::Usage(format!("parameter {key} given twice"));
        match key {
            "q" => set_once(&mut p.q, value.parse().map_err(|_| bad())?, dup)?,
            "k" => set_once(&mut p.k, value.parse().map_err(|_| bad())?, dup)?,
            "m" => set_once(&mut p.m, value.parse().map_err(|_| bad())?, dup)?,
            "r" => set_once(&mut p.r, value.parse().map_err(|_| bad())?, dup)?,
            "sidon" => {
                let s = value
                    .split(',')
                    .map(|t| t.trim().parse())
                    .collect::<Result<Vec<usize>, _>>()
                    .map_err(|_| bad())?;
                set_once(&mut p.sidon, s, dup)?
            }
            _ => return Err(CliError::Usage(format!("unknown parameter {key:?}"))),
        }
    }
    Ok(p)
}

fn set_once<T>(slot: &mut Option<T>, v: T, dup: impl FnOnce() -> CliError) -> Result<(), CliError> {
    if slot.is_some() {
        return Err(dup());
    }
    *slot = Some(v);
    Ok(())
}

pub fn describe(inst: &Instance) -> Descriptor {
    Descriptor {
        family: inst.family(),
        parameters: inst.parameters(),
        derived: inst.derived(),
    }
}

fn construct<'a>(
    a: ConstructArgs,
    budget: OracleBudget,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
) -> Result<Exit, CliError> {
    let family: Family = a.family.parse()?;
    let params = parse_parameters(&a)?;
    let inst = Instance::build(family, &params, budget)?;
    let desc = describe(&inst);
    write_output(a.output.as_deref(), &desc.to_text(), out)?;
    let report = if a.output.is_some() { out } else { err };
    let d = &desc.derived;
    let mut lines = vec![
        format!("{family}: length {}, dimension {}", d.length, d.dimension),
        format!("distance >= {} ({})", d.distance_bound, d.distance_basis),
    ];
    if let Some(b) = &d.balanced_bound {
        lines.push(format!("(2, d)-balanced with d >= {b}"));
    }
    lines.push(format!("decodes errors < {} ({})", d.radius, d.decoder));
    if let Some(r) = &d.design_radius {
        lines.push(format!(
            "exact design profile (d={}, b={}) accepts errors < {r}",
            d.d.unwrap_or(0),
            d.b.unwrap_or(0)
        ));
    }
    for l in lines {
        writeln!(report, "{l}").map_err(stdout_err)?;
    }
    Ok(Exit::Success)
}

fn encode(a: CodingArgs, budget: OracleBudget, out: &mut dyn Write) -> Result<Exit, CliError> {
    let (_, inst) = load(&a.descriptor, budget)?;
    let msgs = parse_words(
        &read_input(&a.input)?,
        inst.field().order(),
        inst.message_len(),
    )?;
    let mut text = String::new();
    for m in &msgs {
        text.push_str(&format_word(&inst.encode(m)?));
        text.push('\n');
    }
    write_output(a.output.as_deref(), &text, out)?;
    Ok(Exit::Success)
}

fn decode(
    a: CodingArgs,
    budget: OracleBudget,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Exit, CliError> {
    let (_, inst) = load(&a.descriptor, budget)?;
    let words = parse_words(
        &read_input(&a.input)?,
        inst.field().order(),
        inst.word_len(),
    )?;
    let mut text = String::new();
    let mut failed = 0;
    for (i, w) in words.iter().enumerate() {
        match inst.decode(w)? {
            DecodeOutcome::Decoded { codeword, message } => {
                let wt = hamming_distance(&codeword, w)?;
                text.push_str(&format_word(&message));
                text.push('\n');
                writeln!(err, "word {}: corrected {wt} error(s)", i + 1).map_err(stdout_err)?;
            }
            DecodeOutcome::Fail => {
                failed += 1;
                text.push_str("FAIL\n");
                writeln!(err, "word {}: FAIL", i + 1).map_err(stdout_err)?;
            }
        }
    }
    write_output(a.output.as_deref(), &text, out)?;
    Ok(if failed > 0 {
        Exit::DecodeFail
    } else {
        Exit::Success
    })
}

/// Largest integer weight strictly below `radius`.
fn max_weight(radius: Bound) -> usize {
    (radius.ceil().to_integer() as usize).saturating_sub(1)
}

fn corrupt(rng: &mut ChaCha8Rng, q: u32, w: &[Symbol], weight: usize) -> Vec<Symbol> {
    let mut out = w.to_vec();
    for p in sample(rng, w.len(), weight.min(w.len())) {
        out[p] = (out[p] + rng.gen_range(1..q)) % q;
    }
    out
}

fn random_message(rng: &mut ChaCha8Rng, q: u32, len: usize) -> Vec<Symbol> {
    (0..len).map(|_| rng.gen_range(0..q)).collect()
}

fn mean_micros(total: Duration, n: usize) -> f64 {
    total.as_secs_f64() * 1e6 / n.max(1) as f64
}

fn analyze(a: AnalyzeArgs, budget: OracleBudget, out: &mut dyn Write) -> Result<Exit, CliError> {
    let (desc, inst) = load(&a.descriptor, budget)?;
    let d = &desc.derived;
    let mut lines = vec![
        format!("family: {}", desc.family),
        format!(
            "parameters: {}",
            serde_json::to_string(&desc.parameters).expect("plain data")
        ),
        format!("length: {}", d.length),
        format!("dimension: {}", d.dimension),
        format!(
            "certified distance: >= {} ({})",
            d.distance_bound, d.distance_basis
        ),
    ];
    if let Some(b) = &d.balanced_bound {
        lines.push(format!("certified balanced: >= {b}"));
    }
    lines.push(format!("decoding radius: errors < {}", d.radius));
    if let Some(r) = &d.design_radius {
        lines.push(format!("design radius: errors < {r}"));
    }

    let needs_oracle = a.exact_distance || a.balanced;
    let g = needs_oracle.then(|| inst.generator_code());
    if let Some(g) = &g {
        let space = format!("{}^{} messages", g.field().order(), g.dimension());
        if a.exact_distance {
            let start = Instant::now();
            lines.push(match brute_force_distance(g, budget) {
                Ok(Some(x)) => format!(
                    "exact distance: {x} (margin {} over the bound; {space}, {:.3}s)",
                    format_margin(x, inst.distance_bound()),
                    start.elapsed().as_secs_f64()
                ),
                Ok(None) => "exact distance: zero code".into(),
                Err(e) => budget_notice("exact distance", e)?,
            });
        }
        if a.balanced {
            let start = Instant::now();
            lines.push(match brute_force_balanced_profile(g, 2, budget) {
                Ok(Some(x)) => {
                    let margin = inst
                        .balanced_bound()
                        .map(|b| format!(" (margin {} over the bound)", format_margin(x, b)))
                        .unwrap_or_default();
                    format!(
                        "exact balanced: {x}{margin}; {space}, {:.3}s",
                        start.elapsed().as_secs_f64()
                    )
                }
                Ok(None) => "exact balanced: zero code".into(),
                Err(e) => budget_notice("exact balanced", e)?,
            });
        }
    }
    lines.extend(timings(&inst, a.samples, a.seed)?);
    for l in lines {
        writeln!(out, "{l}").map_err(stdout_err)?;
    }
    Ok(Exit::Success)
}

fn format_margin(exact: usize, bound: Bound) -> String {
    let x = Bound::from_integer(exact as u64);
    if x >= bound {
        format_bound(x - bound)
    } else {
        format!("-{}", format_bound(bound - x))
    }
}

fn budget_notice(what: &str, e: CodeError) -> Result<String, CliError> {
    match e {
        CodeError::BudgetExceeded { needed, budget } => Ok(format!(
            "notice: {what} not computed; needs {needed} messages, budget is {budget} (set {})",
            OracleBudget::ENV_VAR
        )),
        e => Err(e.into()),
    }
}

/// Mean decode times on words with the largest correctable error weight;
/// for rm-dc also the component decoders `T` and `T_perp`.
fn timings(inst: &Instance, samples: usize, seed: u64) -> Result<Vec<String>, CliError> {
    let samples = samples.max(1);
    let q = inst.field().order();
    let wt = max_weight(inst.radius());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = Duration::ZERO;
    for _ in 0..samples {
        let c = inst.encode(&random_message(&mut rng, q, inst.message_len()))?;
        let w = corrupt(&mut rng, q, &c, wt);
        let start = Instant::now();
        let _ = inst.decode(&w)?;
        total += start.elapsed();
    }
    let mut lines = vec![format!(
        "decode time: {:.1} us mean over {samples} words with {wt} error(s)",
        mean_micros(total, samples)
    )];
    if let Instance::RmDc { code, .. } = inst {
        for (label, c, dist) in [
            ("T", code.base(), code.d()),
            ("T_perp", code.dual(), code.d_perp()),
        ] {
            let radius = Bound::new(dist as u64, 2);
            let e = max_weight(radius);
            let mut total = Duration::ZERO;
            for _ in 0..samples {
                let cw = c
                    .encode(&random_message(&mut rng, 2, c.dimension()))
                    .map_err(|e| CliError::Parse(e.to_string()))?;
                let w = corrupt(&mut rng, 2, &cw, e);
                let start = Instant::now();
                let _ = c.decode(&w, radius);
                total += start.elapsed();
            }
            lines.push(format!(
                "{label}: {:.1} us mean component decode with {e} error(s)",
                mean_micros(total, samples)
            ));
        }
    }
    Ok(lines)
}

fn selftest(a: SelftestArgs, out: &mut dyn Write) -> Result<Exit, CliError> {
    let config = Config::from_env().map_err(CliError::Usage)?;
    let mut counts = [0usize; 3];
    for c in criteria::all() {
        if a.only.as_ref().is_some_and(|only| !only.contains(&c.id)) {
            continue;
        }
        let r = c.run(&config);
        writeln!(out, "{r}").map_err(stdout_err)?;
        out.flush().map_err(stdout_err)?;
        counts[r.status as usize] += 1;
    }
    writeln!(
        out,
        "SUMMARY\tpass={}\tfail={}\tskip={}",
        counts[0], counts[1], counts[2]
    )
    .map_err(stdout_err)?;
    Ok(
        if counts[Status::Pass as usize] == counts.iter().sum::<usize>() {
            Exit::Success
        } else {
            Exit::Error
        },
    )
}

fn bench(a: BenchArgs, budget: OracleBudget, out: &mut dyn Write) -> Result<Exit, CliError> {
    let (desc, inst) = load(&a.descriptor, budget)?;
    let trials = a.trials.max(1);
    let q = inst.field().order();
    let wt = max_weight(inst.radius());
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let msgs: Vec<Vec<Symbol>> = (0..trials)
        .map(|_| random_message(&mut rng, q, inst.message_len()))
        .collect();

    let start = Instant::now();
    let codewords = msgs
        .iter()
        .map(|m| inst.encode(m))
        .collect::<Result<Vec<_>, _>>()?;
    let enc = start.elapsed();

    let received: Vec<Vec<Symbol>> = codewords
        .iter()
        .map(|c| corrupt(&mut rng, q, c, wt))
        .collect();
    let start = Instant::now();
    let decoded = received
        .iter()
        .map(|w| inst.decode(w))
        .collect::<Result<Vec<_>, _>>()?;
    let dec = start.elapsed();
    let wrong = decoded
        .iter()
        .zip(&msgs)
        .filter(|(o, m)| o.message() != Some(&m[..]))
        .count();

    let rate = |d: Duration| trials as f64 / d.as_secs_f64().max(1e-9);
    writeln!(
        out,
        "{} length {}: {trials} words, {wt} error(s) each",
        desc.family,
        inst.word_len()
    )
    .map_err(stdout_err)?;
    writeln!(
        out,
        "encode: {:.3}s ({:.0} words/s)",
        enc.as_secs_f64(),
        rate(enc)
    )
    .map_err(stdout_err)?;
    writeln!(
        out,
        "decode: {:.3}s ({:.0} words/s)",
        dec.as_secs_f64(),
        rate(dec)
    )
    .map_err(stdout_err)?;
    writeln!(out, "miscorrected: {wrong}").map_err(stdout_err)?;
    Ok(if wrong == 0 {
        Exit::Success
    } else {
        Exit::Error
    })
}
