//! Affine subspaces of a coordinate space `K^N` by pivot pattern: choose
//! the pivot columns of the reduced echelon basis, then its free entries,
//! then the coset representative (zero on every pivot coordinate).

use crate::budget::{self, pow_sat, Budget};
use crate::error::Result;
use crate::field::FieldSpec;
use crate::linalg;
use crate::space::{AffineMatrixSpace, AmbientKind};

/// Gaussian binomial `[n, k]_q`, saturating at `u128::MAX`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        let (Some(num), Some(den)) = (q.checked_pow((n - i) as u32), q.checked_pow(i as u32 + 1)) else {
            return u128::MAX;
        };
        match acc.checked_mul(num - 1) {
            Some(x) => acc = x / (den - 1),
            None => return u128::MAX,
        }
    }
    acc
}

/// Number of `d`-dimensional affine subspaces of `K^n`.
pub fn affine_subspace_count(n: usize, d: usize, q: u64) -> u128 {
    if d > n {
        return 0;
    }
    gaussian_binomial(n, d, q).saturating_mul(pow_sat(q, n - d))
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn pivot_patterns(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Free coordinates of echelon row `k` under `pattern`.
pub(crate) fn free_positions(pattern: &[usize], k: usize, n: usize) -> Vec<usize> {
    (pattern[k] + 1..n).filter(|j| !pattern.contains(j)).collect()
}

pub(crate) fn non_pivots(pattern: &[usize], n: usize) -> Vec<usize> {
    (0..n).filter(|j| !pattern.contains(j)).collect()
}

/// Every `dim`-dimensional affine subspace of the ambient exactly once, by
/// pivot pattern, then echelon entries, then coset.
pub fn enumerate_affine_subspaces(
    ambient: AmbientKind,
    field: FieldSpec,
    dim: usize,
    budget: &Budget,
) -> Result<impl Iterator<Item = AffineMatrixSpace>> {
    let n = ambient.dim();
    budget::check(
        &format!("{dim}-dimensional affine subspaces of {ambient}"),
        affine_subspace_count(n, dim, field.order()),
        budget.spaces,
    )?;
    Ok(pivot_patterns(n, dim).into_iter().flat_map(move |pattern| {
        let frees: Vec<Vec<usize>> = (0..pattern.len()).map(|k| free_positions(&pattern, k, n)).collect();
        let cosets = non_pivots(&pattern, n);
        let digits = frees.iter().map(Vec::len).sum::<usize>() + cosets.len();
        linalg::all_vectors(field, digits).map(move |d| {
            let mut it = d.into_iter();
            let rows: Vec<Vec<u8>> = pattern
                .iter()
                .zip(&frees)
                .map(|(&p, free)| {
                    let mut row = vec![0; n];
                    row[p] = 1;
                    for &j in free {
                        row[j] = it.next().expect("digit");
                    }
                    row
                })
                .collect();
            let mut base = vec![0; n];
            for &j in &cosets {
                base[j] = it.next().expect("digit");
            }
            AffineMatrixSpace::from_canonical_parts(ambient, field, base, rows, pattern.clone())
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `[n, k]_q` by the Pascal-type recursion.
    fn q_binomial_recursive(n: usize, k: usize, q: u128) -> u128 {
        if k == 0 || k == n {
            return 1;
        }
        if k > n {
            return 0;
        }
        q_binomial_recursive(n - 1, k - 1, q) + q.pow(k as u32) * q_binomial_recursive(n - 1, k, q)
    }

    #[test]
    fn gaussian_binomial_matches_recursion() {
        assert_eq!(gaussian_binomial(6, 3, 2), 1395);
        for q in [2u64, 3, 5] {
            for n in 0..10 {
                for k in 0..=n {
                    assert_eq!(gaussian_binomial(n, k, q), q_binomial_recursive(n, k, q as u128));
                }
            }
        }
    }

    #[test]
    fn patterns() {
        assert_eq!(pivot_patterns(4, 2).len(), 6);
        assert_eq!(pivot_patterns(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(pivot_patterns(3, 3), vec![vec![0, 1, 2]]);
        assert!(pivot_patterns(2, 3).is_empty());
        assert_eq!(pivot_patterns(4, 2)[1], vec![0, 2]);
    }

    #[test]
    fn sym3_dim3_count_and_uniqueness() {
        let f = FieldSpec::gf(2);
        let all: Vec<AffineMatrixSpace> =
            enumerate_affine_subspaces(AmbientKind::Symmetric(3), f, 3, &Budget::default()).unwrap().collect();
        assert_eq!(all.len(), 11160);
        assert_eq!(all.len() as u128, 1395 * 8);
        let mut keys: Vec<Vec<u8>> = all.iter().map(|s| s.canonical_bytes()).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 11160);
        // Each enumerated representation is already canonical.
        for s in all.iter().step_by(97) {
            let again = AffineMatrixSpace::from_vectors(s.ambient(), f, s.base_vector().to_vec(), s.basis_vectors().to_vec());
            assert_eq!(&again, s);
        }
    }

    #[test]
    fn extreme_dimensions() {
        let f = FieldSpec::gf(3);
        let amb = AmbientKind::Symmetric(2);
        let zero_dim: Vec<_> = enumerate_affine_subspaces(amb, f, 0, &Budget::default()).unwrap().collect();
        assert_eq!(zero_dim.len(), 27);
        let full: Vec<_> = enumerate_affine_subspaces(amb, f, 3, &Budget::default()).unwrap().collect();
        assert_eq!(full, vec![AffineMatrixSpace::full(amb, f)]);
        assert_eq!(enumerate_affine_subspaces(amb, f, 4, &Budget::default()).unwrap().count(), 0);
    }

    #[test]
    fn budget_reports_count() {
        let tight = Budget { spaces: 1000, ..Budget::default() };
        match enumerate_affine_subspaces(AmbientKind::Symmetric(3), FieldSpec::gf(2), 3, &tight) {
            Err(crate::Error::Capacity { needed, .. }) => assert_eq!(needed, 11160),
            _ => panic!("expected a capacity error"),
        }
    }
}
