use crate::spec::{KernelSpec, PeInput};
use crate::symbol::Symbol;
use crate::types::{CellScores, EngineConfig, TracebackPointer};

use super::schedule::ChunkSchedule;
use super::tb_memory::TbMemory;
use super::tracker::{reduce, Candidate, LocalMaxTracker};
use super::{check_inputs, in_band, EngineError};

/// Instrumentation hooks called during matrix fill. Every method defaults
/// to a no-op.
pub trait FillProbe {
    /// Called with the exact arguments handed to the kernel's cell function.
    fn on_pe(&mut self, _input: &PeInput<'_>) {}
    fn on_cell(&mut self, _cell: (usize, usize), _scores: &CellScores, _ptr: TracebackPointer) {}
    fn on_tb_write(&mut self, _chunk: usize, _wavefront: usize, _bank: usize, _addr: usize) {}
    fn on_wavefront_end(&mut self, _chunk: usize, _wavefront: usize) {}
    /// Lets a test replace the pointer stored for `cell`.
    fn mutate_pointer(&mut self, _cell: (usize, usize), ptr: TracebackPointer) -> TracebackPointer {
        ptr
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct NoProbe;

impl FillProbe for NoProbe {}

/// Everything matrix fill leaves behind for traceback.
#[derive(Debug, Clone)]
pub struct Fill {
    pub schedule: ChunkSchedule,
    /// `None` for score-only kernels.
    pub tb: Option<TbMemory>,
    /// Reduced best cell of the policy's start region.
    pub start: Option<Candidate>,
    pub band: Option<usize>,
}

pub fn fill_matrix(
    spec: &KernelSpec,
    config: &EngineConfig,
    query: &[Symbol],
    reference: &[Symbol],
) -> Result<Fill, EngineError> {
    fill_matrix_probed(spec, config, query, reference, &mut NoProbe)
}

/// Wavefront matrix fill.
///
/// Rows are processed in chunks of `n_pe`. Inside a chunk PE `p` owns row
/// `start + p` and on wavefront `w` computes column `w - p`; its `up` and
/// `diag` inputs are PE `p - 1`'s outputs from the previous two wavefronts,
/// and PE 0 reads them from the preserved row buffer written by the last PE
/// of the previous chunk.
pub fn fill_matrix_probed<P: FillProbe>(
    spec: &KernelSpec,
    config: &EngineConfig,
    query: &[Symbol],
    reference: &[Symbol],
    probe: &mut P,
) -> Result<Fill, EngineError> {
    check_inputs(spec, config, query, reference)?;
    let (q_len, r_len) = (query.len(), reference.len());
    let band = spec.effective_band(config);
    let init = spec.banded_init(r_len, q_len, band);
    let schedule = ChunkSchedule::new(q_len, r_len, config.n_pe);
    let mut tb = spec.policy.emits_traceback().then(|| TbMemory::new(&schedule));

    let worst = spec.worst_cell();
    let region = spec.policy.start_region();
    let objective = spec.objective();
    let lanes = config.n_pe.min(q_len);

    // Index k is boundary-inclusive column k. Reads and writes go to separate
    // buffers so a single-row chunk never reads its own output as `diag`.
    let mut row_in: Vec<CellScores> = std::iter::once(init.origin)
        .chain(init.row.iter().copied())
        .collect();
    let mut row_out = row_in.clone();

    let mut prev2 = vec![worst; lanes];
    let mut prev1 = vec![worst; lanes];
    let mut cur = vec![worst; lanes];
    let mut trackers = vec![LocalMaxTracker::default(); lanes];

    for chunk in &schedule.chunks {
        let last = chunk.len() - 1;
        for w in 0..chunk.wavefronts {
            for pe in 0..chunk.len() {
                let Some((i, j)) = chunk.cell(pe, w, r_len) else {
                    continue;
                };
                if !in_band(band, i, j) {
                    cur[pe] = worst;
                    if pe == last {
                        row_out[j + 1] = worst;
                    }
                    continue;
                }
                let left = if j == 0 { &init.col[i] } else { &prev1[pe] };
                let (up, diag) = if pe == 0 {
                    (&row_in[j + 1], &row_in[j])
                } else if j == 0 {
                    (&prev1[pe - 1], &init.col[i - 1])
                } else {
                    (&prev1[pe - 1], &prev2[pe - 1])
                };
                let input = PeInput {
                    up,
                    diag,
                    left,
                    query: &query[i],
                    reference: &reference[j],
                    params: &spec.params,
                    cell: (i, j),
                };
                probe.on_pe(&input);
                let (scores, ptr) = (spec.pe)(&input);
                probe.on_cell((i, j), &scores, ptr);

                if let Some(tb) = tb.as_mut() {
                    let ptr = probe.mutate_pointer((i, j), ptr);
                    let addr = tb.addr(chunk.index, w);
                    probe.on_tb_write(chunk.index, w, pe, addr);
                    tb.write(pe, addr, ptr);
                }
                if region.contains(i, j, q_len, r_len) {
                    trackers[pe].offer(
                        Candidate {
                            score: spec.result_score(&scores),
                            cell: (i, j),
                            scores,
                        },
                        objective,
                    );
                }
                cur[pe] = scores;
                if pe == last {
                    row_out[j + 1] = scores;
                }
            }
            probe.on_wavefront_end(chunk.index, w);
            std::mem::swap(&mut prev2, &mut prev1);
            std::mem::swap(&mut prev1, &mut cur);
        }
        row_out[0] = init.col[chunk.rows.end - 1];
        std::mem::swap(&mut row_in, &mut row_out);
    }

    Ok(Fill {
        start: reduce(&trackers, objective),
        schedule,
        tb,
        band,
    })
}
