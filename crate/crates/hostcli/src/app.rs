//! Command-line front end.

use std::path::PathBuf;

use clap::Parser;
use dphls_core::engine::NoProbe;
use dphls_core::verify::VerifyError;
use thiserror::Error;

use crate::batch::{load_records, run_batch, SeqRecord, HEADER};
use crate::config::{parse_param, ConfigError, Mode, RunConfig};
use crate::input::InputError;
use crate::report::{perf_report, run_verify, VerifyRunError};
use crate::tiling::{run_tiled_alignment, TileError, TilingPlan};

#[derive(Debug, Parser)]
#[command(name = "dphls", version, about = "Run dynamic-programming alignment kernels")]
pub struct Cli {
    /// align | batch | verify | perf | tile
    pub mode: Mode,
    /// Kernel number (1-15) or name.
    #[arg(long)]
    pub kernel: Option<String>,
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub query: Option<PathBuf>,
    #[arg(long)]
    pub reference: Option<PathBuf>,
    /// Scoring parameter override, e.g. `--params match=2 gap_open=-5`.
    #[arg(long = "params", value_parser = parse_param, num_args = 1..)]
    pub params: Vec<(String, String)>,
    #[arg(long)]
    pub npe: Option<usize>,
    #[arg(long)]
    pub nb: Option<usize>,
    #[arg(long)]
    pub nk: Option<usize>,
    #[arg(long)]
    pub ii: Option<usize>,
    #[arg(long)]
    pub band: Option<usize>,
    #[arg(long)]
    pub clock: Option<f64>,
    #[arg(long)]
    pub tile: Option<usize>,
    #[arg(long)]
    pub overlap: Option<usize>,
    /// perf: sweep n_pe and n_b up to the configured values.
    #[arg(long)]
    pub sweep: bool,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Cli {
    fn flags(&self) -> RunConfig {
        let mut cfg = RunConfig {
            mode: Some(self.mode),
            kernel: self.kernel.clone(),
            query: self.query.clone(),
            reference: self.reference.clone(),
            out: self.out.clone(),
            tile: self.tile,
            overlap: self.overlap,
            ..RunConfig::default()
        };
        cfg.params.extend(self.params.iter().cloned());
        cfg.engine.n_pe = self.npe;
        cfg.engine.n_b = self.nb;
        cfg.engine.n_k = self.nk;
        cfg.engine.ii = self.ii;
        cfg.engine.band = self.band;
        cfg.engine.clock_mhz = self.clock;
        cfg
    }

    /// The configuration file, if any, with the flags laid over it.
    pub fn run_config(&self) -> Result<RunConfig, ConfigError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        cfg.overlay(&self.flags());
        Ok(cfg)
    }
}

#[derive(Debug, Error)]
pub enum AppError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("verification found {0} mismatching pair(s)")]
    Mismatch(usize),
    #[error("{0}")]
    Io(String),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Usage(_) | AppError::Io(_) => 1,
            AppError::Input(_) => 2,
            AppError::Mismatch(_) => 3,
        }
    }
}

impl From<ConfigError> for AppError {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Input(i) => AppError::Input(i),
            ConfigError::Invalid(m) => AppError::Usage(m),
        }
    }
}

fn inputs(cfg: &RunConfig, kind: dphls_core::SymbolKind) -> Result<(Vec<SeqRecord>, Vec<SeqRecord>), AppError> {
    let need = |p: &Option<PathBuf>, what: &str| {
        p.clone().ok_or_else(|| AppError::Usage(format!("--{what} is required")))
    };
    let q = load_records(&need(&cfg.query, "query")?, kind)?;
    let r = load_records(&need(&cfg.reference, "reference")?, kind)?;
    Ok((q, r))
}

fn first(records: Vec<SeqRecord>) -> SeqRecord {
    records.into_iter().next().expect("parsers never return zero records")
}

/// Runs `cfg` and returns the output text. A verification mismatch is an
/// error carrying the report. `sweep` only affects perf mode.
pub fn execute(cfg: &RunConfig, sweep: bool) -> Result<String, (AppError, Option<String>)> {
    let plain = |e: AppError| (e, None);
    let mode = cfg.mode.ok_or_else(|| plain(AppError::Usage("no mode given".into())))?;
    let engine = cfg.engine_config();
    let violations = engine.violations();
    if !violations.is_empty() {
        return Err(plain(AppError::Usage(format!("engine config: {}", violations.join("; ")))));
    }

    if mode == Mode::Perf {
        let (q, r) = match (&cfg.query, &cfg.reference, &cfg.kernel) {
            (Some(_), Some(_), Some(_)) => {
                let spec = cfg.kernel_spec().map_err(|e| plain(e.into()))?;
                let (q, r) = inputs(cfg, spec.symbol_kind).map_err(plain)?;
                (first(q).symbols.len(), first(r).symbols.len())
            }
            _ => (256, 256),
        };
        return perf_report(&engine, q, r, sweep)
            .map_err(|e| plain(AppError::Usage(e.to_string())));
    }

    let spec = cfg.kernel_spec().map_err(|e| plain(e.into()))?;
    let (queries, references) = inputs(cfg, spec.symbol_kind).map_err(plain)?;
    match mode {
        Mode::Batch => run_batch(&spec, &engine, &queries, &references).map_err(|e| plain(e.into())),
        Mode::Align => {
            let (q, r) = (first(queries), first(references));
            run_batch(&spec, &engine, &[q], &[r]).map_err(|e| plain(e.into()))
        }
        Mode::Verify => match run_verify(&spec, &engine, &queries, &references, &mut NoProbe) {
            Ok(rep) if rep.all_match() => Ok(rep.text),
            Ok(rep) => Err((AppError::Mismatch(rep.mismatches), Some(rep.text))),
            Err(VerifyRunError::Input(e)) => Err(plain(e.into())),
            Err(VerifyRunError::Verify(VerifyError::Engine(e))) => {
                Err(plain(AppError::Usage(e.to_string())))
            }
            Err(VerifyRunError::Verify(e)) => Err(plain(AppError::Usage(e.to_string()))),
        },
        Mode::Tile => {
            let plan = TilingPlan {
                tile_size: cfg.tile.unwrap_or(TilingPlan::default().tile_size),
                overlap: cfg.overlap.unwrap_or(TilingPlan::default().overlap),
            };
            let (q, r) = (first(queries), first(references));
            let tiled = run_tiled_alignment(&spec, &engine, &q.symbols, &r.symbols, plan);
            match tiled {
                Ok(t) => Ok(format!(
                    "{HEADER}\n{}\n",
                    crate::batch::format_row(&q.id, &r.id, &Ok(t.result))
                )),
                Err(TileError::Engine(e)) => Ok(format!(
                    "{HEADER}\n{}\n",
                    crate::batch::format_row(&q.id, &r.id, &Err(e))
                )),
                Err(e) => Err(plain(AppError::Usage(e.to_string()))),
            }
        }
        Mode::Perf => unreachable!("handled above"),
    }
}

/// Parses arguments, runs, writes the output and returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match cli.run_config() {
        Ok(c) => c,
        Err(e) => {
            let e = AppError::from(e);
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let (text, err) = match execute(&cfg, cli.sweep) {
        Ok(t) => (Some(t), None),
        Err((e, t)) => (t, Some(e)),
    };
    if let Some(text) = text {
        let written = match &cfg.out {
            Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        };
        if let Err(m) = written {
            eprintln!("error: {m}");
            return AppError::Io(m).exit_code();
        }
    }
    match err {
        Some(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
        None => 0,
    }
}
