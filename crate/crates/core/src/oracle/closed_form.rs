//! Textbook recurrences over plain integers and floats, independent of the
//! kernel code.

use crate::params::DistanceMetric;

fn sub(a: u8, b: u8, m: i32, x: i32) -> i32 {
    if a == b {
        m
    } else {
        x
    }
}

/// Needleman-Wunsch score with linear gaps.
pub fn needleman_wunsch(q: &[u8], r: &[u8], m: i32, x: i32, gap: i32) -> i32 {
    let mut prev: Vec<i32> = (0..=r.len() as i32).map(|j| j * gap).collect();
    for (i, &a) in q.iter().enumerate() {
        let mut cur = vec![(i as i32 + 1) * gap; r.len() + 1];
        for (j, &b) in r.iter().enumerate() {
            cur[j + 1] = (prev[j] + sub(a, b, m, x))
                .max(prev[j + 1] + gap)
                .max(cur[j] + gap);
        }
        prev = cur;
    }
    prev[r.len()]
}

/// Smith-Waterman best local score with linear gaps.
pub fn smith_waterman(q: &[u8], r: &[u8], m: i32, x: i32, gap: i32) -> i32 {
    let mut prev = vec![0i32; r.len() + 1];
    let mut best = 0;
    for &a in q {
        let mut cur = vec![0i32; r.len() + 1];
        for (j, &b) in r.iter().enumerate() {
            cur[j + 1] = 0
                .max(prev[j] + sub(a, b, m, x))
                .max(prev[j + 1] + gap)
                .max(cur[j] + gap);
            best = best.max(cur[j + 1]);
        }
        prev = cur;
    }
    best
}

/// Gotoh global score with affine gaps `open + k * extend`, linear memory.
pub fn gotoh(q: &[u8], r: &[u8], m: i32, x: i32, open: i32, extend: i32) -> i64 {
    let neg = i64::MIN / 4;
    let (m, x, open, extend) = (m as i64, x as i64, open as i64, extend as i64);
    let n = r.len();
    let mut h: Vec<i64> = (0..=n as i64).map(|j| if j == 0 { 0 } else { open + j * extend }).collect();
    let mut vert = vec![neg; n + 1];
    for (i, &a) in q.iter().enumerate() {
        let mut diag = h[0];
        h[0] = open + (i as i64 + 1) * extend;
        let mut horiz = neg;
        for j in 1..=n {
            vert[j] = (h[j] + open).max(vert[j]) + extend;
            horiz = (h[j - 1] + open).max(horiz) + extend;
            let s = if a == r[j - 1] { m } else { x };
            let best = (diag + s).max(vert[j]).max(horiz);
            diag = h[j];
            h[j] = best;
        }
    }
    h[n]
}

/// Classic DTW distance over complex samples.
pub fn dtw(q: &[(f64, f64)], r: &[(f64, f64)], metric: DistanceMetric) -> f64 {
    let d = |a: (f64, f64), b: (f64, f64)| {
        let (x, y) = (a.0 - b.0, a.1 - b.1);
        match metric {
            DistanceMetric::Euclidean => (x * x + y * y).sqrt(),
            _ => x.abs() + y.abs(),
        }
    };
    let inf = f64::INFINITY;
    let mut prev = vec![inf; r.len() + 1];
    prev[0] = 0.0;
    for &a in q {
        let mut cur = vec![inf; r.len() + 1];
        for (j, &b) in r.iter().enumerate() {
            cur[j + 1] = d(a, b) + prev[j].min(prev[j + 1]).min(cur[j]);
        }
        prev = cur;
    }
    prev[r.len()]
}
