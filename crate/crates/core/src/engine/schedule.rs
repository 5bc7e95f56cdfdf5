use std::ops::Range;

/// One chunk of `n_pe` consecutive query rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chunk {
    pub index: usize,
    pub rows: Range<usize>,
    /// Anti-diagonals needed to sweep the chunk: `R + rows - 1`.
    pub wavefronts: usize,
}

impl Chunk {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// The cell PE `pe` computes on `wavefront`, if it is inside the matrix.
    #[inline]
    pub fn cell(&self, pe: usize, wavefront: usize, r_len: usize) -> Option<(usize, usize)> {
        let i = self.rows.start + pe;
        if i >= self.rows.end || wavefront < pe || wavefront - pe >= r_len {
            return None;
        }
        Some((i, wavefront - pe))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChunkSchedule {
    pub q_len: usize,
    pub r_len: usize,
    pub n_pe: usize,
    pub chunks: Vec<Chunk>,
}

impl ChunkSchedule {
    pub fn new(q_len: usize, r_len: usize, n_pe: usize) -> Self {
        assert!(n_pe > 0, "n_pe must be positive");
        let chunks = (0..q_len.div_ceil(n_pe))
            .map(|c| {
                let rows = c * n_pe..((c + 1) * n_pe).min(q_len);
                let wavefronts = r_len + rows.len() - 1;
                Chunk {
                    index: c,
                    rows,
                    wavefronts,
                }
            })
            .collect();
        ChunkSchedule {
            q_len,
            r_len,
            n_pe,
            chunks,
        }
    }

    pub fn chunk_count(&self) -> usize {
        self.chunks.len()
    }

    pub fn total_wavefronts(&self) -> usize {
        self.chunks.iter().map(|c| c.wavefronts).sum()
    }
}
