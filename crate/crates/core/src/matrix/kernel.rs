//! Allocation-free rank routines used in the enumeration hot loops.
//!
//! Two paths exist: fraction-free elimination on dense residues for any
//! prime, and a bit-packed path for `GF(2)` with one `u64` per row. Both
//! must agree; `Ranker` dispatches between them.

use crate::field::FieldSpec;

/// Rank of a dense `rows x cols` matrix, destroying `buf`.
///
/// Pivots are the first nonzero entry scanning rows from the top.
pub fn rank_dense_in_place(f: FieldSpec, buf: &mut [u8], rows: usize, cols: usize) -> usize {
    let q = f.q() as u32;
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pr) = (rank..rows).find(|&r| buf[r * cols + col] != 0) else {
            continue;
        };
        if pr != rank {
            for c in col..cols {
                buf.swap(pr * cols + c, rank * cols + c);
            }
        }
        let p = buf[rank * cols + col] as u32;
        for r in rank + 1..rows {
            let x = buf[r * cols + col] as u32;
            if x == 0 {
                continue;
            }
            // row_r <- p * row_r - x * row_pivot
            for c in col..cols {
                let a = buf[r * cols + c] as u32;
                let b = buf[rank * cols + c] as u32;
                let v = (p * a + (q - x) * b) % q;
                buf[r * cols + c] = v as u8;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of a bit-packed `GF(2)` matrix (bit `j` of word `i` is entry
/// `(i, j)`), destroying `rows`.
pub fn rank_gf2_in_place(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    let n = rows.len();
    for i in 0..n {
        let r = rows[i];
        if r == 0 {
            continue;
        }
        let low = r & r.wrapping_neg();
        for row in rows[i + 1..n].iter_mut() {
            if *row & low != 0 {
                *row ^= r;
            }
        }
        rank += 1;
    }
    rank
}

/// Packs a dense `GF(2)` matrix into one word per row.
#[inline]
pub fn pack_gf2(entries: &[u8], rows: usize, cols: usize, out: &mut [u64]) {
    for i in 0..rows {
        let mut w = 0u64;
        for (j, &x) in entries[i * cols..(i + 1) * cols].iter().enumerate() {
            w |= (x as u64 & 1) << j;
        }
        out[i] = w;
    }
}

/// Reusable scratch space for repeated rank evaluations of same-shape
/// matrices.
#[derive(Debug, Clone)]
pub struct Ranker {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    dense: Vec<u8>,
    bits: Vec<u64>,
    packed: bool,
}

impl Ranker {
    pub fn new(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Ranker::with_path(field, rows, cols, field.is_char2() && cols <= 64)
    }

    /// Forces the dense path even over `GF(2)` (used for cross-checks).
    pub fn with_path(field: FieldSpec, rows: usize, cols: usize, packed: bool) -> Self {
        let packed = packed && field.is_char2() && cols <= 64;
        Ranker {
            field,
            rows,
            cols,
            dense: vec![0; rows * cols],
            bits: vec![0; rows],
            packed,
        }
    }

    #[inline]
    pub fn rank(&mut self, entries: &[u8]) -> usize {
        debug_assert_eq!(entries.len(), self.rows * self.cols);
        if self.packed {
            pack_gf2(entries, self.rows, self.cols, &mut self.bits);
            rank_gf2_in_place(&mut self.bits)
        } else {
            self.dense.copy_from_slice(entries);
            rank_dense_in_place(self.field, &mut self.dense, self.rows, self.cols)
        }
    }
}
