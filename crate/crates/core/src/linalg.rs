//! Row-vector echelon routines over `GF(q)` shared by matrices, spaces and
//! the solvers. Vectors are plain `Vec<u8>` residues.

use crate::field::FieldSpec;

/// In-place reduced row echelon form of `rows` (each of equal length).
/// Zero rows are dropped; pivots are the first nonzero position of each
/// row, equal to 1, strictly increasing, and cleared in every other row.
/// Returns the pivot columns.
pub fn rref(f: FieldSpec, rows: &mut Vec<Vec<u8>>) -> Vec<usize> {
    let width = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..width {
        if top == rows.len() {
            break;
        }
        let Some(found) = (top..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(top, found);
        let inv = f.inv(rows[top][col]).expect("nonzero pivot");
        if inv != 1 {
            for x in rows[top][col..].iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        let pivot_row = rows[top].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == top || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (x, &p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = f.sub(*x, f.mul(factor, p));
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    pivots
}

/// Subtracts multiples of an RREF `basis` (with its `pivots`) from `v` so
/// that `v` vanishes on every pivot coordinate. The result is the
/// lexicographically smallest element of `v + span(basis)`.
pub fn reduce(f: FieldSpec, basis: &[Vec<u8>], pivots: &[usize], v: &mut [u8]) {
    for (row, &p) in basis.iter().zip(pivots) {
        let c = v[p];
        if c != 0 {
            for (x, &b) in v.iter_mut().zip(row) {
                *x = f.sub(*x, f.mul(c, b));
            }
        }
    }
}

/// Rank of a list of vectors.
pub fn rank_of(f: FieldSpec, vecs: &[Vec<u8>]) -> usize {
    let mut rows = vecs.to_vec();
    rref(f, &mut rows).len()
}

/// Solution set of `A x = b` for a dense `rows x cols` matrix `a`: the
/// lexicographically smallest solution together with an RREF basis of the
/// kernel, or `None` when the system is inconsistent.
pub fn solve(
    f: FieldSpec,
    a: &[u8],
    rows: usize,
    cols: usize,
    b: &[u8],
) -> Option<(Vec<u8>, Vec<Vec<u8>>)> {
    let mut aug: Vec<Vec<u8>> = (0..rows)
        .map(|i| {
            let mut r = a[i * cols..(i + 1) * cols].to_vec();
            r.push(b[i]);
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![0u8; cols];
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[cols];
    }
    let mut kernel = kernel_from_rref(f, &aug, &pivots, cols);
    let kp = rref(f, &mut kernel);
    reduce(f, &kernel, &kp, &mut x);
    Some((x, kernel))
}

/// Basis of the right kernel of a dense matrix, in RREF.
pub fn kernel(f: FieldSpec, a: &[u8], rows: usize, cols: usize) -> Vec<Vec<u8>> {
    let mut m: Vec<Vec<u8>> = (0..rows).map(|i| a[i * cols..(i + 1) * cols].to_vec()).collect();
    let pivots = rref(f, &mut m);
    let mut k = kernel_from_rref(f, &m, &pivots, cols);
    rref(f, &mut k);
    k
}

fn kernel_from_rref(f: FieldSpec, m: &[Vec<u8>], pivots: &[usize], cols: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u8; cols];
        v[free] = 1;
        for (row, &p) in m.iter().zip(pivots) {
            v[p] = f.neg(row[free]);
        }
        out.push(v);
    }
    out
}

/// Iterates over all vectors of `GF(q)^len` in lexicographic order.
pub fn all_vectors(f: FieldSpec, len: usize) -> impl Iterator<Item = Vec<u8>> {
    let q = f.q();
    let mut next = Some(vec![0u8; len]);
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        let mut i = len;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < q {
                next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(cur)
    })
}

/// `coeffs` combined with `vecs`: `sum_i coeffs[i] * vecs[i]`.
pub fn combine(f: FieldSpec, coeffs: &[u8], vecs: &[Vec<u8>], len: usize) -> Vec<u8> {
    let mut out = vec![0u8; len];
    for (&c, v) in coeffs.iter().zip(vecs) {
        if c != 0 {
            for (o, &x) in out.iter_mut().zip(v) {
                *o = f.add(*o, f.mul(c, x));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_drops_dependent_rows() {
        let f = FieldSpec::gf(3);
        let mut rows = vec![vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 2]];
        let piv = rref(f, &mut rows);
        assert_eq!(piv, vec![0, 2]);
        assert_eq!(rows, vec![vec![1, 2, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn reduce_gives_lexicographic_minimum() {
        let f = FieldSpec::gf(3);
        let mut basis = vec![vec![0, 1, 1, 2], vec![1, 0, 2, 0]];
        let piv = rref(f, &mut basis);
        let start = vec![2, 2, 1, 1];
        let mut v = start.clone();
        reduce(f, &basis, &piv, &mut v);
        let coset_min = all_vectors(f, 2)
            .map(|c| {
                let d = combine(f, &c, &basis, 4);
                start.iter().zip(&d).map(|(&a, &b)| f.add(a, b)).collect::<Vec<u8>>()
            })
            .min()
            .unwrap();
        assert_eq!(v, coset_min);
    }

    #[test]
    fn solve_small_system() {
        let f = FieldSpec::gf(5);
        // x + 2y = 3 and 2x + 4y = 0 contradict each other
        assert!(solve(f, &[1, 2, 2, 4], 2, 2, &[3, 0]).is_none());
        // with 2x + 4y = 1 the second row is twice the first
        let (x, k) = solve(f, &[1, 2, 2, 4], 2, 2, &[3, 1]).unwrap();
        assert_eq!(x, vec![0, 4]);
        assert_eq!(k, vec![vec![1, 2]]);
    }

    #[test]
    fn all_vectors_counts() {
        assert_eq!(all_vectors(FieldSpec::gf(3), 3).count(), 27);
        assert_eq!(all_vectors(FieldSpec::gf(2), 0).count(), 1);
        let v: Vec<_> = all_vectors(FieldSpec::gf(2), 2).collect();
        assert_eq!(v, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
