use crate::types::TracebackPointer;

use super::schedule::ChunkSchedule;

/// Never a valid pointer: pointers are at most 7 bits wide.
const UNWRITTEN: u8 = 0xFF;

/// Banked traceback pointer storage.
///
/// PE `p` owns bank `p` (so bank = row mod n_pe), and within a chunk the
/// pointer written on wavefront `w` lands at `chunk_base + w`: consecutive
/// wavefronts occupy consecutive addresses and one wavefront touches each
/// bank at most once.
#[derive(Debug, Clone)]
pub struct TbMemory {
    n_pe: usize,
    chunk_base: Vec<usize>,
    banks: Vec<Vec<u8>>,
}

impl TbMemory {
    pub fn new(schedule: &ChunkSchedule) -> Self {
        let mut chunk_base = Vec::with_capacity(schedule.chunk_count());
        let mut depth = 0;
        for c in &schedule.chunks {
            chunk_base.push(depth);
            depth += c.wavefronts;
        }
        let n_banks = schedule.n_pe.min(schedule.q_len);
        TbMemory {
            n_pe: schedule.n_pe,
            chunk_base,
            banks: vec![vec![UNWRITTEN; depth]; n_banks],
        }
    }

    pub fn n_banks(&self) -> usize {
        self.banks.len()
    }

    pub fn depth(&self) -> usize {
        self.banks.first().map_or(0, Vec::len)
    }

    #[inline]
    pub fn addr(&self, chunk: usize, wavefront: usize) -> usize {
        self.chunk_base[chunk] + wavefront
    }

    /// `(bank, address)` holding the pointer of 0-based cell `(i, j)`.
    #[inline]
    pub fn locate(&self, i: usize, j: usize) -> (usize, usize) {
        let pe = i % self.n_pe;
        (pe, self.addr(i / self.n_pe, pe + j))
    }

    #[inline]
    pub(crate) fn write(&mut self, bank: usize, addr: usize, ptr: TracebackPointer) {
        debug_assert!(ptr.0 < 0x80);
        self.banks[bank][addr] = ptr.0;
    }

    /// Pointer of cell `(i, j)`, or `None` if it was never written (pruned
    /// by the band or outside the matrix).
    pub fn read(&self, i: usize, j: usize) -> Option<TracebackPointer> {
        let pe = i % self.n_pe;
        let addr = self.chunk_base.get(i / self.n_pe)? + pe + j;
        let code = *self.banks.get(pe)?.get(addr)?;
        (code != UNWRITTEN).then_some(TracebackPointer(code))
    }

    #[cfg(test)]
    fn overwrite(&mut self, i: usize, j: usize, ptr: TracebackPointer) {
        let (bank, addr) = self.locate(i, j);
        self.write(bank, addr, ptr);
    }
}
