//! Exhaustive searches over affine subspaces, affine-generation checks and
//! random generation of bounded-rank spaces.

mod bounded;
mod enumerate;
mod flanders;

use rand::Rng;

pub use bounded::{
    bounded_rank_search, bounded_rank_survivors, classify_spaces, count_bounded_rank, model_candidates,
    SearchClass, SearchReport,
};
pub(crate) use bounded::RankBound;
pub use enumerate::{affine_subspace_count, enumerate_affine_subspaces, gaussian_binomial, pivot_patterns};
pub use flanders::{column_relation_space, flanders_recover_y, flanders_scan, Bullets, FlandersReport};

use crate::budget::Budget;
use crate::error::Result;
use crate::field::FieldSpec;
use crate::linalg;
use crate::space::{AffineMatrixSpace, AmbientKind};

/// Whether the affine span of the members of rank greater than `r` is the
/// whole space.
pub fn generation_check(space: &AffineMatrixSpace, r: usize, budget: &Budget) -> Result<bool> {
    let f = space.field();
    let d = space.dim();
    let mut first: Option<Vec<u8>> = None;
    let mut diffs: Vec<Vec<u8>> = Vec::new();
    let mut rank = 0;
    space.for_each_rank(budget, |c, rk| {
        if rk <= r {
            return true;
        }
        // Work with coefficient vectors: the affine span of members
        // corresponds to the affine span of their coefficients.
        match &first {
            None => first = Some(c.to_vec()),
            Some(c0) => {
                diffs.push(c.iter().zip(c0).map(|(&a, &b)| f.sub(a, b)).collect());
                let new_rank = linalg::rank_of(f, &diffs);
                if new_rank == rank {
                    diffs.pop();
                } else {
                    rank = new_rank;
                }
            }
        }
        rank < d
    })?;
    Ok(first.is_some() && rank == d)
}

/// A random affine space with upper-rank at most `r`, grown greedily by
/// random directions until `target_dim` or `attempts` failures.
pub fn random_bounded_space<R: Rng>(
    ambient: AmbientKind,
    field: FieldSpec,
    r: usize,
    target_dim: usize,
    attempts: usize,
    rng: &mut R,
) -> Result<AffineMatrixSpace> {
    let bound = RankBound::new(ambient, field, r)?;
    let mut checker = bound.checker();
    let coords = &bound.coords;
    let n = ambient.dim();
    let q = field.q();
    let random_vec = |rng: &mut R| -> Vec<u8> { (0..n).map(|_| rng.gen_range(0..q)).collect() };
    let mut base = vec![0u8; n];
    for _ in 0..attempts {
        let v = random_vec(rng);
        if checker.ok(coords.index(&v)) {
            base = v;
            break;
        }
    }
    let mut members = vec![coords.index(&base)];
    let mut gens: Vec<Vec<u8>> = Vec::new();
    let mut failures = 0;
    while gens.len() < target_dim && failures < attempts {
        let g = random_vec(rng);
        let mut trial = gens.clone();
        trial.push(g.clone());
        if linalg::rank_of(field, &trial) <= gens.len() {
            failures += 1;
            continue;
        }
        let before = members.len();
        let mut ok = true;
        'check: for c in 1..q {
            let scaled: Vec<u8> = g.iter().map(|&x| field.mul(c, x)).collect();
            let idx = coords.index(&scaled);
            for i in 0..before {
                let m = coords.add(members[i], idx);
                if !checker.ok(m) {
                    ok = false;
                    break 'check;
                }
                members.push(m);
            }
        }
        if ok {
            gens.push(g);
        } else {
            members.truncate(before);
            failures += 1;
        }
    }
    Ok(AffineMatrixSpace::from_vectors(ambient, field, base, gens))
}
