//! Cycle and throughput model of the systolic execution.
//!
//! The analytic model counts, per alignment,
//!
//! ```text
//! fill      = ceil(Q / n_pe) * (R + min(n_pe, Q) - 1) * ii + pipeline_depth
//! traceback = path_len + 1
//! reduction = ceil(log2 n_pe) + 1
//! overhead  = fixed_overhead_cycles
//! ```
//!
//! and a device running `n_b` blocks on each of `n_k` channels completes
//! `clock * n_b * n_k / total` alignments per second. [`simulate_schedule`]
//! replays the wavefront issue sequence event by event as a cross-check.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::types::EngineConfig;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PerfError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("trace for {q}x{r} exceeds the {limit} limit")]
    TraceSizeExceeded { q: usize, r: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleReport {
    pub fill_cycles: u64,
    pub traceback_cycles: u64,
    pub reduction_cycles: u64,
    pub overhead_cycles: u64,
    pub total_cycles: u64,
    pub alignments_per_second: f64,
}

fn ceil_log2(n: usize) -> u64 {
    u64::from(usize::BITS - (n.max(1) - 1).leading_zeros())
}

fn check(config: &EngineConfig, q: usize, r: usize) -> Result<(), PerfError> {
    let mut v = config.violations();
    if q == 0 || r == 0 {
        v.push(format!("matrix {q}x{r} must be non-empty"));
    }
    if v.is_empty() {
        Ok(())
    } else {
        Err(PerfError::InvalidConfig(v.join("; ")))
    }
}

/// Fill cycles alone.
pub fn fill_cycles(config: &EngineConfig, q: usize, r: usize) -> u64 {
    let chunks = q.div_ceil(config.n_pe) as u64;
    let wavefronts = (r + config.n_pe.min(q) - 1) as u64;
    chunks * wavefronts * config.ii as u64 + config.pipeline_depth
}

pub fn model_alignment_cycles(
    config: &EngineConfig,
    q: usize,
    r: usize,
    path_len: usize,
) -> Result<CycleReport, PerfError> {
    check(config, q, r)?;
    if path_len > q + r {
        return Err(PerfError::InvalidConfig(format!(
            "path length {path_len} exceeds Q + R = {}",
            q + r
        )));
    }
    let fill = fill_cycles(config, q, r);
    let tb = path_len as u64 + 1;
    let reduction = ceil_log2(config.n_pe) + 1;
    let overhead = config.fixed_overhead_cycles;
    let total = fill + tb + reduction + overhead;
    let parallel = (config.n_b * config.n_k) as f64;
    Ok(CycleReport {
        fill_cycles: fill,
        traceback_cycles: tb,
        reduction_cycles: reduction,
        overhead_cycles: overhead,
        total_cycles: total,
        alignments_per_second: config.clock_mhz * 1e6 * parallel / total as f64,
    })
}

/// One issued wavefront.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WavefrontEvent {
    pub cycle: u64,
    pub chunk: usize,
    pub wavefront: usize,
    pub active_pe_count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleTrace {
    pub n_pe: usize,
    pub ii: usize,
    pub events: Vec<WavefrontEvent>,
    pub fill_cycles: u64,
}

impl ScheduleTrace {
    /// Busy PE-cycles over available PE-cycles.
    pub fn utilization(&self) -> f64 {
        let busy: u64 = self
            .events
            .iter()
            .map(|e| (e.active_pe_count * self.ii) as u64)
            .sum();
        busy as f64 / (self.n_pe as u64 * self.fill_cycles).max(1) as f64
    }

    pub fn active_counts(&self) -> Vec<usize> {
        self.events.iter().map(|e| e.active_pe_count).collect()
    }
}

pub const TRACE_LIMIT: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Event {
    /// The controller issues wavefront `w` of chunk `c`.
    Issue { chunk: usize, wavefront: usize },
    /// A PE retires its cell of the given wavefront.
    Retire { chunk: usize, wavefront: usize },
    /// The pipeline drains after the last wavefront.
    Drained,
}

/// Discrete-event replay of the wavefront schedule.
///
/// Each chunk sweeps `R + min(n_pe, Q) - 1` wavefronts (the array is sized
/// for full chunks, so a short last chunk idles through the tail). A
/// wavefront is issued `ii` cycles after its predecessor, once every PE
/// holding a cell of the predecessor has retired it.
pub fn simulate_schedule(config: &EngineConfig, q: usize, r: usize) -> Result<ScheduleTrace, PerfError> {
    check(config, q, r)?;
    if q > TRACE_LIMIT || r > TRACE_LIMIT {
        return Err(PerfError::TraceSizeExceeded { q, r, limit: TRACE_LIMIT });
    }
    let (n_pe, ii) = (config.n_pe, config.ii as u64);
    let per_chunk = r + n_pe.min(q) - 1;
    let chunks = q.div_ceil(n_pe);

    let active = |chunk: usize, w: usize| {
        let rows = n_pe.min(q - chunk * n_pe);
        (0..rows).filter(|&p| w >= p && w - p < r).count()
    };

    let mut queue = BinaryHeap::new();
    queue.push(Reverse((0u64, Event::Issue { chunk: 0, wavefront: 0 })));
    let mut events = Vec::with_capacity(chunks * per_chunk);
    let mut outstanding = 0usize;
    let mut fill = 0;

    while let Some(Reverse((now, ev))) = queue.pop() {
        match ev {
            Event::Issue { chunk, wavefront } => {
                let n = active(chunk, wavefront);
                events.push(WavefrontEvent {
                    cycle: now,
                    chunk,
                    wavefront,
                    active_pe_count: n,
                });
                // idle wavefronts still occupy their issue slot
                outstanding = n.max(1);
                for _ in 0..outstanding {
                    queue.push(Reverse((now + ii, Event::Retire { chunk, wavefront })));
                }
            }
            Event::Retire { chunk, wavefront } => {
                outstanding -= 1;
                if outstanding > 0 {
                    continue;
                }
                let next = if wavefront + 1 < per_chunk {
                    Some((chunk, wavefront + 1))
                } else if chunk + 1 < chunks {
                    Some((chunk + 1, 0))
                } else {
                    None
                };
                match next {
                    Some((chunk, wavefront)) => {
                        queue.push(Reverse((now, Event::Issue { chunk, wavefront })))
                    }
                    None => queue.push(Reverse((now + config.pipeline_depth, Event::Drained))),
                }
            }
            Event::Drained => fill = now,
        }
    }
    Ok(ScheduleTrace {
        n_pe,
        ii: config.ii,
        events,
        fill_cycles: fill,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub config: EngineConfig,
    pub report: CycleReport,
}

/// Models every `(n_pe, n_b)` combination on a `q × r` alignment whose path
/// length is taken as `max(q, r)`.
pub fn scaling_sweep(
    base: &EngineConfig,
    n_pe: &[usize],
    n_b: &[usize],
    q: usize,
    r: usize,
) -> Result<Vec<SweepPoint>, PerfError> {
    let mut out = Vec::with_capacity(n_pe.len() * n_b.len());
    for &pe in n_pe {
        for &b in n_b {
            let config = EngineConfig {
                n_pe: pe,
                n_b: b,
                ..base.clone()
            };
            let report = model_alignment_cycles(&config, q, r, q.max(r))?;
            out.push(SweepPoint { config, report });
        }
    }
    Ok(out)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = logs.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Slopes of successive segments in log-log space.
pub fn segment_slopes(points: &[(f64, f64)]) -> Vec<f64> {
    points
        .windows(2)
        .map(|w| (w[1].1.ln() - w[0].1.ln()) / (w[1].0.ln() - w[0].0.ln()))
        .collect()
}

/// Successive log-log slopes strictly decrease.
pub fn strictly_concave(points: &[(f64, f64)]) -> bool {
    segment_slopes(points).windows(2).all(|s| s[1] < s[0])
}

/// A published device configuration with its measured throughput.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DevicePoint {
    pub kernel: u8,
    pub n_pe: usize,
    pub n_b: usize,
    pub n_k: usize,
    pub clock_mhz: f64,
    pub alignments_per_second: f64,
}

/// Optimal configurations and throughputs of the four short-read kernels,
/// 256-base alignments.
pub const REFERENCE_POINTS: [DevicePoint; 4] = [
    DevicePoint { kernel: 1, n_pe: 64, n_b: 16, n_k: 4, clock_mhz: 250.0, alignments_per_second: 3.51e6 },
    DevicePoint { kernel: 2, n_pe: 32, n_b: 16, n_k: 4, clock_mhz: 250.0, alignments_per_second: 2.85e6 },
    DevicePoint { kernel: 3, n_pe: 32, n_b: 16, n_k: 5, clock_mhz: 250.0, alignments_per_second: 3.43e6 },
    DevicePoint { kernel: 4, n_pe: 32, n_b: 16, n_k: 4, clock_mhz: 250.0, alignments_per_second: 2.71e6 },
];

impl DevicePoint {
    pub fn config(&self, overhead: u64) -> EngineConfig {
        EngineConfig {
            n_pe: self.n_pe,
            n_b: self.n_b,
            n_k: self.n_k,
            clock_mhz: self.clock_mhz,
            fixed_overhead_cycles: overhead,
            ..EngineConfig::default()
        }
    }

    /// Modeled over measured throughput for a `len × len` alignment.
    pub fn ratio(&self, overhead: u64, len: usize) -> f64 {
        let rep = model_alignment_cycles(&self.config(overhead), len, len, len)
            .expect("reference configurations are valid");
        rep.alignments_per_second / self.alignments_per_second
    }
}

/// The single overhead minimizing the worst `|ln(model / measured)|` over
/// `points`. The objective is unimodal in the overhead, so an integer
/// ternary search suffices.
pub fn calibrate_overhead(points: &[DevicePoint], len: usize) -> u64 {
    let worst = |o: u64| {
        points
            .iter()
            .map(|p| p.ratio(o, len).ln().abs())
            .fold(0.0, f64::max)
    };
    let (mut lo, mut hi) = (0u64, 10_000_000u64);
    while hi - lo > 2 {
        let m1 = lo + (hi - lo) / 3;
        let m2 = hi - (hi - lo) / 3;
        if worst(m1) <= worst(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    (lo..=hi)
        .min_by(|a, b| worst(*a).total_cmp(&worst(*b)))
        .expect("non-empty range")
}

pub const CSV_HEADER: &str = "n_pe,n_b,n_k,ii,clock_mhz,fill,tb,total,throughput";

pub fn csv_row(config: &EngineConfig, report: &CycleReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{:.6e}",
        config.n_pe,
        config.n_b,
        config.n_k,
        config.ii,
        config.clock_mhz,
        report.fill_cycles,
        report.traceback_cycles,
        report.total_cycles,
        report.alignments_per_second
    )
}

pub fn sweep_csv(points: &[SweepPoint]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for p in points {
        let _ = writeln!(out, "{}", csv_row(&p.config, &p.report));
    }
    out
}
