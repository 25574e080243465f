//! Command-line front end. Every subcommand writes CSV (header row, one sweep
//! point per row) to stdout or `--out`, and a `key=value` manifest to
//! `--manifest` (stderr by default) echoing every setting.

use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::analysis::{total_error_estimate, AnalysisError};
use crate::channel::{channel_apply, ChannelError, ChannelParams, EditMix};
use crate::code::GcCode;
use crate::parity::sld::{default_cache_dir, SldCodebook};
use crate::parity::SldError;
use crate::pipeline::{
    self, grid_search_outer_rate, GridSearch, InnerCode, PipelineConfig, PipelineError,
};
use crate::presets::{self, PresetError};
use crate::sim::simulate;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Clap(#[from] clap::Error),
    #[error(transparent)]
    Preset(#[from] PresetError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Sld(#[from] SldError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("config file line {0}: expected `key = value`")]
    ConfigLine(usize),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Parser)]
#[command(name = "gcplus", version, about = "Guess-and-check codes for edit errors", args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monte Carlo frame error rate over a sweep of edit probabilities or windows
    Simulate(SimulateArgs),
    /// Analytic error estimate over a sweep of edit probabilities
    Theory(TheoryArgs),
    /// Build, verify and cache a suffix-distance codebook
    SldBuild(SldBuildArgs),
    /// Outer-rate grid search for DNA storage
    Pipeline(PipelineArgs),
    /// Dataset blob to oligo file
    Encode(StoreArgs),
    /// Oligo file to dataset blob
    Decode(StoreArgs),
    /// Pass an oligo file through the edit channel
    Channel(ChannelArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Mix {
    Sym,
    Asym,
}

impl Mix {
    fn edit_mix(self) -> EditMix {
        match self {
            Mix::Sym => EditMix::Symmetric,
            Mix::Asym => EditMix::Asymmetric,
        }
    }
}

#[derive(Debug, Args)]
pub struct Common {
    /// CSV destination (stdout if absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// manifest destination (stderr if absent)
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// `key = value` lines applied as flags before the command line
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// code preset (see `presets::NAMES`)
    #[arg(long, default_value = "rep3")]
    pub code: String,
    /// edit probabilities, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = [0.005, 0.01, 0.015])]
    pub p: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Mix::Sym)]
    pub mix: Mix,
    /// edit windows, comma separated (whole codeword if absent)
    #[arg(long, value_delimiter = ',')]
    pub w: Vec<usize>,
    #[arg(long)]
    pub trials: Option<u64>,
    /// 10^6 trials unless --trials is given
    #[arg(long)]
    pub paper_scale: bool,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    /// add a wall-clock column (rows are then not reproducible byte for byte)
    #[arg(long)]
    pub timing: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct TheoryArgs {
    #[arg(long, default_value = "rep3")]
    pub code: String,
    /// edit probabilities, comma separated (0.001..0.015 if absent)
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Mix::Sym)]
    pub mix: Mix,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SldBuildArgs {
    #[arg(long, default_value_t = 20)]
    pub n: usize,
    #[arg(long, default_value_t = 7)]
    pub k: usize,
    #[arg(long, default_value_t = 5)]
    pub d: usize,
    #[arg(long, default_value_t = 2)]
    pub alphabet: usize,
    /// cache directory (default `$GCPLUS_CACHE_DIR` or the temp dir)
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct PipelineArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [0.005, 0.006, 0.007, 0.008, 0.009, 0.01, 0.011, 0.012, 0.013, 0.014, 0.015])]
    pub p: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Mix::Asym)]
    pub mix: Mix,
    /// inner codes: `uncoded` or a letter A..F, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = ["uncoded".to_string(), "A".into(), "B".into(), "C".into(), "D".into(), "E".into(), "F".into()])]
    pub inner: Vec<String>,
    /// 10^4 fragments and 10 datasets
    #[arg(long)]
    pub full_scale: bool,
    #[arg(long)]
    pub fragments: Option<usize>,
    #[arg(long)]
    pub datasets: Option<u64>,
    /// outer parity count increment between grid points
    #[arg(long)]
    pub step: Option<usize>,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct StoreArgs {
    /// input file (blob for encode, oligos for decode)
    #[arg(long)]
    pub input: PathBuf,
    /// output file (oligos for encode, blob for decode)
    #[arg(long)]
    pub output: PathBuf,
    /// `uncoded` or a letter A..F
    #[arg(long, default_value = "C")]
    pub inner: String,
    /// number of 168-bit data fragments (encode: from the blob size if absent)
    #[arg(long)]
    pub fragments: Option<usize>,
    /// number of oligos, data plus outer parity
    #[arg(long)]
    pub outer_len: Option<usize>,
    /// outer rate, used when --outer-len is absent
    #[arg(long, default_value_t = 0.9)]
    pub outer_rate: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct ChannelArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
    #[arg(long, default_value_t = 0.01)]
    pub p: f64,
    #[arg(long, value_enum, default_value_t = Mix::Asym)]
    pub mix: Mix,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub dataset: u64,
    #[command(flatten)]
    pub common: Common,
}

/// Ordered `key=value` record of a run.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct RunManifest {
    pub entries: Vec<(String, String)>,
}

impl RunManifest {
    fn new(command: &str) -> Self {
        let mut m = RunManifest::default();
        m.push("tool", concat!("gcplus ", env!("CARGO_PKG_VERSION")));
        m.push("command", command);
        m
    }

    pub fn push(&mut self, k: &str, v: impl ToString) {
        self.entries.push((k.to_string(), v.to_string()));
    }

    pub fn render(&self) -> String {
        self.entries.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn sink(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout()),
    })
}

fn emit_manifest(common: &Common, m: &RunManifest) -> io::Result<()> {
    match &common.manifest {
        Some(p) => std::fs::write(p, m.render()),
        None => io::stderr().write_all(m.render().as_bytes()),
    }
}

/// Reads `key = value` lines (`#` starts a comment) into `--key value` flags.
pub fn config_flags(path: &Path) -> Result<Vec<String>, CliError> {
    let text = std::fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or(CliError::ConfigLine(i + 1))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            return Err(CliError::ConfigLine(i + 1));
        }
        out.push(format!("--{}", k.replace('_', "-")));
        if !v.is_empty() && v != "true" {
            out.push(v.to_string());
        }
    }
    Ok(out)
}

/// Parses `args` (program name first), splicing in any `--config` file
/// right after the subcommand so explicit flags win.
pub fn parse<I: IntoIterator<Item = String>>(args: I) -> Result<Cli, CliError> {
    let args: Vec<String> = args.into_iter().collect();
    let cfg = args.iter().position(|a| a == "--config").and_then(|i| args.get(i + 1)).cloned();
    let cfg = cfg.or_else(|| args.iter().find_map(|a| a.strip_prefix("--config=").map(String::from)));
    match cfg {
        Some(path) if args.len() >= 2 => {
            let mut full = args[..2].to_vec();
            full.extend(config_flags(Path::new(&path))?);
            full.extend(args[2..].iter().cloned());
            Ok(Cli::try_parse_from(full)?)
        }
        _ => Ok(Cli::try_parse_from(args)?),
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate(a) => cmd_simulate(&a),
        Command::Theory(a) => cmd_theory(&a),
        Command::SldBuild(a) => cmd_sld_build(&a),
        Command::Pipeline(a) => cmd_pipeline(&a),
        Command::Encode(a) => cmd_encode(&a),
        Command::Decode(a) => cmd_decode(&a),
        Command::Channel(a) => cmd_channel(&a),
    }
}

fn code_alphabet(code: &GcCode) -> usize {
    code.params().alphabet
}

fn check_probability(p: f64) -> Result<(), CliError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(CliError::Invalid(format!("edit probability {p} outside [0, 1]")));
    }
    Ok(())
}

pub fn cmd_simulate(a: &SimulateArgs) -> Result<(), CliError> {
    let code = presets::by_name(&a.code)?;
    let trials = a.trials.unwrap_or(if a.paper_scale { 1_000_000 } else { 100_000 });
    let mut m = RunManifest::new("simulate");
    m.push("code", &a.code);
    m.push("n", code.len());
    m.push("rate", code.rate());
    m.push("mix", a.mix.edit_mix().name());
    m.push("p", join(&a.p));
    m.push("w", join(&a.w));
    m.push("trials", trials);
    m.push("seed", a.seed);
    let mut wtr = csv::Writer::from_writer(sink(&a.common.out)?);
    let mut header = vec!["code", "mix", "p_edit", "w", "trials", "seed", "fer", "failures", "miscorrections", "mean_guesses"];
    if a.timing {
        header.push("us_per_decode");
    }
    wtr.write_record(&header)?;
    let windows: Vec<Option<usize>> = if a.w.is_empty() { vec![None] } else { a.w.iter().map(|&w| Some(w)).collect() };
    for &p in &a.p {
        check_probability(p)?;
        for &w in &windows {
            if trials == 0 {
                continue;
            }
            let mut ch = ChannelParams::new(p, a.mix.edit_mix(), code_alphabet(&code));
            if let Some(w) = w {
                if w == 0 || w > code.len() {
                    return Err(CliError::Invalid(format!("window {w} must lie in 1..={}", code.len())));
                }
                ch = ch.with_window(w);
            }
            let s = simulate(&code, &ch, trials, a.seed);
            let mut row = vec![
                a.code.clone(),
                a.mix.edit_mix().name().to_string(),
                p.to_string(),
                w.map_or(String::new(), |w| w.to_string()),
                trials.to_string(),
                a.seed.to_string(),
                format!("{:.6e}", s.fer()),
                s.failures.to_string(),
                s.miscorrections.to_string(),
                format!("{:.3}", s.mean_guesses()),
            ];
            if a.timing {
                row.push(format!("{:.1}", 1e6 * s.seconds / trials as f64));
            }
            wtr.write_record(&row)?;
            wtr.flush()?;
        }
    }
    wtr.flush()?;
    emit_manifest(&a.common, &m)?;
    Ok(())
}

pub fn cmd_theory(a: &TheoryArgs) -> Result<(), CliError> {
    let code = presets::by_name(&a.code)?;
    let ps: Vec<f64> = if a.p.is_empty() { (1..=15).map(|i| i as f64 * 1e-3).collect() } else { a.p.clone() };
    let mut m = RunManifest::new("theory");
    m.push("code", &a.code);
    m.push("mix", a.mix.edit_mix().name());
    m.push("p", join(&ps));
    let mut wtr = csv::Writer::from_writer(sink(&a.common.out)?);
    wtr.write_record(["code", "mix", "p_edit", "ell_eff", "n_prime", "c1", "scheme", "p_e1", "p_e2", "p_e3", "total"])?;
    for &p in &ps {
        check_probability(p)?;
        let ch = ChannelParams::new(p, a.mix.edit_mix(), code_alphabet(&code));
        let r = total_error_estimate(&code, &ch)?;
        wtr.write_record([
            a.code.clone(),
            a.mix.edit_mix().name().to_string(),
            p.to_string(),
            r.ell_eff.to_string(),
            r.n_prime.to_string(),
            r.c1.to_string(),
            r.scheme.clone(),
            format!("{:.6e}", r.p_e1),
            format!("{:.6e}", r.p_e2),
            format!("{:.6e}", r.p_e3),
            format!("{:.6e}", r.total),
        ])?;
    }
    wtr.flush()?;
    emit_manifest(&a.common, &m)?;
    Ok(())
}

pub fn cmd_sld_build(a: &SldBuildArgs) -> Result<(), CliError> {
    let dir = a.cache_dir.clone().unwrap_or_else(default_cache_dir);
    std::fs::create_dir_all(&dir)?;
    let t0 = Instant::now();
    let cb = SldCodebook::load_or_build(&dir, a.n, a.k, a.d, a.alphabet)?;
    cb.verify()?;
    let path = dir.join(crate::parity::sld::cache_name(a.n, a.k, a.d, a.alphabet));
    let mut m = RunManifest::new("sld-build");
    m.push("n", a.n);
    m.push("k", a.k);
    m.push("d", a.d);
    m.push("alphabet", a.alphabet);
    m.push("path", path.display());
    let mut wtr = csv::Writer::from_writer(sink(&a.common.out)?);
    wtr.write_record(["n", "k", "d_min", "alphabet", "words", "verified", "path"])?;
    wtr.write_record([
        a.n.to_string(),
        a.k.to_string(),
        a.d.to_string(),
        a.alphabet.to_string(),
        cb.words.len().to_string(),
        "true".to_string(),
        path.display().to_string(),
    ])?;
    wtr.flush()?;
    m.push("seconds", format!("{:.2}", t0.elapsed().as_secs_f64()));
    emit_manifest(&a.common, &m)?;
    Ok(())
}

fn inner_code(name: &str) -> Result<InnerCode, CliError> {
    if name.eq_ignore_ascii_case("uncoded") {
        return Ok(InnerCode::Uncoded);
    }
    let mut chars = name.chars();
    match (chars.next(), chars.next()) {
        (Some(l), None) => Ok(InnerCode::Gc(Arc::new(presets::dna_inner(l)?))),
        _ => Err(CliError::Invalid(format!("unknown inner code {name:?}"))),
    }
}

pub fn cmd_pipeline(a: &PipelineArgs) -> Result<(), CliError> {
    let mut g = if a.full_scale { GridSearch::full() } else { GridSearch::desk() };
    if let Some(f) = a.fragments {
        g.num_fragments = f;
        g.max_outer_len = (2 * f).min(pipeline::OUTER_MAX_LEN);
    }
    if let Some(d) = a.datasets {
        g.datasets = d;
    }
    if let Some(s) = a.step {
        g.step = s;
    }
    g.seed = a.seed;
    let mut m = RunManifest::new("pipeline");
    m.push("p", join(&a.p));
    m.push("mix", a.mix.edit_mix().name());
    m.push("inner", join(&a.inner));
    m.push("fragments", g.num_fragments);
    m.push("fragment_bits", g.fragment_bits);
    m.push("datasets", g.datasets);
    m.push("step", g.step);
    m.push("max_outer_len", g.max_outer_len);
    m.push("seed", g.seed);
    let inners: Vec<(String, InnerCode)> =
        a.inner.iter().map(|n| inner_code(n).map(|c| (n.clone(), c))).collect::<Result<_, _>>()?;
    let mut wtr = csv::Writer::from_writer(sink(&a.common.out)?);
    wtr.write_record(["p_edit", "inner", "r_in", "outer_len", "r_out", "density"])?;
    for &p in &a.p {
        check_probability(p)?;
        let ch = ChannelParams::new(p, a.mix.edit_mix(), 4);
        for (name, inner) in &inners {
            let row = match grid_search_outer_rate(inner, &ch, &g) {
                Ok(pt) => [
                    p.to_string(),
                    name.clone(),
                    format!("{:.4}", pt.inner_rate),
                    pt.outer_len.to_string(),
                    format!("{:.4}", pt.outer_rate),
                    format!("{:.4}", pt.density),
                ],
                Err(PipelineError::NoFeasibleRate(_)) => {
                    [p.to_string(), name.clone(), format!("{:.4}", inner.rate(g.fragment_bits)), String::new(), String::new(), String::new()]
                }
                Err(e) => return Err(e.into()),
            };
            wtr.write_record(&row)?;
            wtr.flush()?;
        }
    }
    wtr.flush()?;
    emit_manifest(&a.common, &m)?;
    Ok(())
}

fn store_config(a: &StoreArgs, fragments: usize, outer_len: usize) -> Result<PipelineConfig, CliError> {
    let cfg = PipelineConfig {
        num_fragments: fragments,
        fragment_bits: 168,
        inner: inner_code(&a.inner)?,
        outer_len,
        channel: ChannelParams::new(0.0, EditMix::Symmetric, 4),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn store_manifest(name: &str, a: &StoreArgs, cfg: &PipelineConfig) -> RunManifest {
    let mut m = RunManifest::new(name);
    m.push("input", a.input.display());
    m.push("output", a.output.display());
    m.push("inner", &a.inner);
    m.push("fragments", cfg.num_fragments);
    m.push("outer_len", cfg.outer_len);
    m
}

pub fn cmd_encode(a: &StoreArgs) -> Result<(), CliError> {
    let mut bits = pipeline::read_dataset(&a.input, None)?;
    let fragments = a.fragments.unwrap_or_else(|| bits.len().div_ceil(168).max(1));
    bits.resize(fragments * 168, 0);
    let outer_len = a.outer_len.unwrap_or_else(|| (fragments as f64 / a.outer_rate).ceil() as usize);
    let cfg = store_config(a, fragments, outer_len)?;
    let oligos = pipeline::pipeline_encode(&cfg, &bits)?;
    pipeline::write_oligos(io::BufWriter::new(File::create(&a.output)?), &oligos)?;
    let mut wtr = csv::Writer::from_writer(sink(&a.common.out)?);
    wtr.write_record(["fragments", "oligos", "oligo_len", "density"])?;
    wtr.write_record([
        fragments.to_string(),
        oligos.len().to_string(),
        cfg.inner.oligo_len(168).to_string(),
        format!("{:.4}", cfg.density()),
    ])?;
    wtr.flush()?;
    emit_manifest(&a.common, &store_manifest("encode", a, &cfg))?;
    Ok(())
}

pub fn cmd_decode(a: &StoreArgs) -> Result<(), CliError> {
    let reads = pipeline::read_oligos(BufReader::new(File::open(&a.input)?))?;
    let fragments = a
        .fragments
        .ok_or_else(|| CliError::Invalid("decode needs --fragments".into()))?;
    let cfg = store_config(a, fragments, a.outer_len.unwrap_or(reads.len()))?;
    let (res, data) = pipeline::pipeline_decode(&cfg, &reads)?;
    if let Some(d) = &data {
        pipeline::write_dataset(&a.output, d)?;
    }
    let mut wtr = csv::Writer::from_writer(sink(&a.common.out)?);
    wtr.write_record(["decoded", "erased_oligos", "miscorrected_oligos", "residual_symbol_errors"])?;
    wtr.write_record([
        res.success.to_string(),
        res.erased_oligos.to_string(),
        res.miscorrected_oligos.to_string(),
        res.residual_symbol_errors.to_string(),
    ])?;
    wtr.flush()?;
    emit_manifest(&a.common, &store_manifest("decode", a, &cfg))?;
    if data.is_none() {
        return Err(CliError::Invalid("outer decoding failed".into()));
    }
    Ok(())
}

pub fn cmd_channel(a: &ChannelArgs) -> Result<(), CliError> {
    check_probability(a.p)?;
    let ch = ChannelParams::new(a.p, a.mix.edit_mix(), 4);
    ch.validate()?;
    let oligos = pipeline::read_oligos(BufReader::new(File::open(&a.input)?))?;
    let mut edits = 0usize;
    let reads: Vec<Vec<u8>> = oligos
        .iter()
        .enumerate()
        .map(|(i, o)| {
            let mut rng = pipeline::oligo_rng(a.seed, a.dataset, i as u64);
            let r = channel_apply(&ch, o, &mut rng).expect("no window");
            edits += (r != *o) as usize;
            r
        })
        .collect();
    pipeline::write_oligos(io::BufWriter::new(File::create(&a.output)?), &reads)?;
    let mut m = RunManifest::new("channel");
    m.push("input", a.input.display());
    m.push("output", a.output.display());
    m.push("p", a.p);
    m.push("mix", a.mix.edit_mix().name());
    m.push("seed", a.seed);
    m.push("dataset", a.dataset);
    let mut wtr = csv::Writer::from_writer(sink(&a.common.out)?);
    wtr.write_record(["oligos", "changed"])?;
    wtr.write_record([reads.len().to_string(), edits.to_string()])?;
    wtr.flush()?;
    emit_manifest(&a.common, &m)?;
    Ok(())
}
