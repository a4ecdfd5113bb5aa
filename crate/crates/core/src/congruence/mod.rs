//! Congruence `S -> P S P^T` on spaces: invariant fingerprints, exhaustive
//! equivalence tests over `GL_n(F_q)`, and canonical keys.

use std::fmt;

use crate::budget::{self, Budget};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg;
use crate::matrix::{self, Matrix};
use crate::space::{AffineMatrixSpace, AmbientKind};

/// Congruence-invariant fingerprint computed by full enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvariantProfile {
    pub dim: usize,
    /// Entry `k` counts the members of rank `k`.
    pub rank_distribution: Vec<u128>,
    pub alternating_count: u128,
    pub contains_zero: bool,
    pub common_kernel_dim: usize,
    pub left_kernel_dim: usize,
    pub is_linear: bool,
}

impl InvariantProfile {
    /// Name and values of the first field (in declaration order) that
    /// differs from `other`.
    pub fn first_difference(&self, other: &InvariantProfile) -> Option<(&'static str, String, String)> {
        macro_rules! cmp {
            ($field:ident) => {
                if self.$field != other.$field {
                    return Some((
                        stringify!($field),
                        format!("{:?}", self.$field),
                        format!("{:?}", other.$field),
                    ));
                }
            };
        }
        cmp!(dim);
        cmp!(rank_distribution);
        cmp!(alternating_count);
        cmp!(contains_zero);
        cmp!(common_kernel_dim);
        cmp!(left_kernel_dim);
        cmp!(is_linear);
        None
    }

    /// Key/value lines, one field per line.
    pub fn to_lines(&self) -> String {
        let ranks: Vec<String> = self
            .rank_distribution
            .iter()
            .enumerate()
            .map(|(k, c)| format!("{k}:{c}"))
            .collect();
        format!(
            "dim {}\nrank_distribution {}\nalternating_count {}\ncontains_zero {}\ncommon_kernel_dim {}\nleft_kernel_dim {}\nis_linear {}\n",
            self.dim,
            ranks.join(","),
            self.alternating_count,
            self.contains_zero,
            self.common_kernel_dim,
            self.left_kernel_dim,
            self.is_linear
        )
    }
}

impl fmt::Display for InvariantProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_lines())
    }
}

pub fn invariant_profile(space: &AffineMatrixSpace, budget: &Budget) -> Result<InvariantProfile> {
    let amb = space.ambient();
    let (rows, cols) = (amb.rows(), amb.cols());
    let f = space.field();
    let mut ranks = vec![0u128; rows.min(cols) + 1];
    let mut alternating = 0u128;
    let mut ranker = matrix::Ranker::new(f, rows, cols);
    budget::check("members of the space", space.size(), budget.members)?;
    space.walk_dense(|_, m| {
        ranks[ranker.rank(m)] += 1;
        if rows == cols && is_alternating_dense(f, m, rows) {
            alternating += 1;
        }
        true
    });
    Ok(InvariantProfile {
        dim: space.dim(),
        contains_zero: ranks[0] > 0,
        rank_distribution: ranks,
        alternating_count: alternating,
        common_kernel_dim: space.common_kernel_dim(),
        left_kernel_dim: space.left_kernel_dim(),
        is_linear: space.is_linear(),
    })
}

fn is_alternating_dense(f: FieldSpec, m: &[u8], n: usize) -> bool {
    (0..n).all(|i| m[i * n + i] == 0 && (i + 1..n).all(|j| m[i * n + j] == f.neg(m[j * n + i])))
}

/// `|GL_n(F_q)| = prod_{i<n} (q^n - q^i)`, saturating.
pub fn gl_order(field: FieldSpec, n: usize) -> u128 {
    let q = field.order() as u128;
    let qn = q.checked_pow(n as u32);
    (0..n).fold(1u128, |acc, i| match qn {
        Some(qn) => acc.saturating_mul(qn - q.pow(i as u32)),
        None => u128::MAX,
    })
}

/// All invertible `n x n` matrices in ascending row-major order.
pub fn enumerate_gl(field: FieldSpec, n: usize, budget: &Budget) -> Result<Vec<Matrix>> {
    budget::check("elements of GL_n", gl_order(field, n), budget.group)?;
    let rows: Vec<Vec<u8>> = linalg::all_vectors(field, n).collect();
    let mut out = Vec::with_capacity(gl_order(field, n) as usize);
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    // Row-major order on matrices is lexicographic order on the row
    // sequence, so a depth-first walk over rows in ascending order yields
    // the group sorted; rank checks prune dependent prefixes.
    fn extend(field: FieldSpec, n: usize, rows: &[Vec<u8>], chosen: &mut Vec<usize>, out: &mut Vec<Matrix>) {
        if chosen.len() == n {
            let data: Vec<u8> = chosen.iter().flat_map(|&k| rows[k].iter().copied()).collect();
            out.push(Matrix::from_residues(field, n, n, data).expect("reduced"));
            return;
        }
        for k in 0..rows.len() {
            let mut prefix: Vec<Vec<u8>> = chosen.iter().map(|&c| rows[c].clone()).collect();
            prefix.push(rows[k].clone());
            if linalg::rank_of(field, &prefix) == prefix.len() {
                chosen.push(k);
                extend(field, n, rows, chosen, out);
                chosen.pop();
            }
        }
    }
    extend(field, n, &rows, &mut chosen, &mut out);
    Ok(out)
}

/// The coordinate-level action of a fixed `P` on an ambient: the matrix
/// `T` with `vec(P M P^T) = T vec(M)`, stored column by column.
#[derive(Debug, Clone)]
pub(crate) struct CoordinateAction {
    columns: Vec<Vec<u8>>,
}

impl CoordinateAction {
    pub(crate) fn new(amb: AmbientKind, field: FieldSpec, p: &Matrix) -> Self {
        let dim = amb.dim();
        let coords = amb.coords();
        let columns = (0..dim)
            .map(|k| {
                let mut unit = vec![0; dim];
                unit[k] = 1;
                let image = matrix::congruence_unchecked(p, &amb.matrix_of(field, &unit));
                coords.iter().map(|&(i, j)| image.get(i, j)).collect()
            })
            .collect();
        CoordinateAction { columns }
    }

    fn apply(&self, f: FieldSpec, v: &[u8]) -> Vec<u8> {
        let len = self.columns.first().map_or(0, |c| c.len());
        linalg::combine(f, v, &self.columns, len)
    }

    pub(crate) fn image(&self, s: &AffineMatrixSpace) -> AffineMatrixSpace {
        let f = s.field();
        let base = self.apply(f, s.base_vector());
        let gens = s.basis_vectors().iter().map(|g| self.apply(f, g)).collect();
        AffineMatrixSpace::from_vectors(s.ambient(), f, base, gens)
    }
}

/// Precomputed actions of every element of `GL_n(F_q)` on one ambient.
#[derive(Debug, Clone)]
pub struct GroupAction {
    ambient: AmbientKind,
    field: FieldSpec,
    elements: Vec<Matrix>,
    actions: Vec<CoordinateAction>,
}

impl GroupAction {
    pub fn new(ambient: AmbientKind, field: FieldSpec, budget: &Budget) -> Result<Self> {
        if !ambient.is_square() {
            return Err(Error::usage("congruence needs a symmetric or alternating ambient"));
        }
        let elements = enumerate_gl(field, ambient.rows(), budget)?;
        let actions = elements.iter().map(|p| CoordinateAction::new(ambient, field, p)).collect();
        Ok(GroupAction {
            ambient,
            field,
            elements,
            actions,
        })
    }

    pub fn ambient(&self) -> AmbientKind {
        self.ambient
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    fn require(&self, s: &AffineMatrixSpace) -> Result<()> {
        if s.ambient() != self.ambient || s.field() != self.field {
            return Err(Error::usage(format!(
                "space lives in {} over GF({}), the group acts on {} over GF({})",
                s.ambient(),
                s.field().q(),
                self.ambient,
                self.field.q()
            )));
        }
        Ok(())
    }

    /// Images of `s` under every group element, in group order.
    pub fn orbit_images<'a>(&'a self, s: &'a AffineMatrixSpace) -> impl Iterator<Item = (usize, AffineMatrixSpace)> + 'a {
        self.actions.iter().enumerate().map(move |(k, a)| (k, a.image(s)))
    }

    /// First `P` in group order with `P a P^T = b`.
    pub fn find_witness(&self, a: &AffineMatrixSpace, b: &AffineMatrixSpace) -> Result<Option<Matrix>> {
        self.require(a)?;
        self.require(b)?;
        if a.dim() != b.dim() {
            return Ok(None);
        }
        Ok(self.orbit_images(a).find(|(_, img)| img == b).map(|(k, _)| self.elements[k].clone()))
    }

    /// Smallest canonical serialization over the orbit, with the index of
    /// the first element attaining it.
    pub fn canonical_key(&self, s: &AffineMatrixSpace) -> Result<(Vec<u8>, usize)> {
        self.require(s)?;
        let mut best: Option<(Vec<u8>, usize)> = None;
        for (k, img) in self.orbit_images(s) {
            let key = img.canonical_bytes();
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                best = Some((key, k));
            }
        }
        Ok(best.expect("group is nonempty"))
    }
}

/// Outcome of a congruence test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Congruence {
    Congruent(Matrix),
    /// Profiles differ in the named field.
    DifferentInvariant {
        field: &'static str,
        left: String,
        right: String,
    },
    /// Profiles agree but no group element maps one space onto the other.
    NoWitness,
}

impl Congruence {
    pub fn witness(&self) -> Option<&Matrix> {
        match self {
            Congruence::Congruent(p) => Some(p),
            _ => None,
        }
    }
}

/// Decides whether `P a P^T = b` for some invertible `P`, comparing
/// invariant profiles before scanning the group.
pub fn congruence_test(a: &AffineMatrixSpace, b: &AffineMatrixSpace, budget: &Budget) -> Result<Congruence> {
    if a.ambient() != b.ambient() || a.field() != b.field() {
        return Err(Error::usage("congruence compares spaces in the same ambient over the same field"));
    }
    if !a.ambient().is_square() {
        return Err(Error::usage("congruence needs a symmetric or alternating ambient"));
    }
    let pa = invariant_profile(a, budget)?;
    let pb = invariant_profile(b, budget)?;
    if let Some((field, left, right)) = pa.first_difference(&pb) {
        return Ok(Congruence::DifferentInvariant { field, left, right });
    }
    let group = enumerate_gl(a.field(), a.ambient().rows(), budget)?;
    Ok(match group.into_iter().find(|p| a.congruent_image_unchecked(p) == *b) {
        Some(p) => Congruence::Congruent(p),
        None => Congruence::NoWitness,
    })
}

/// Some `P` with `P a P^T = b`, or `None`.
pub fn are_congruent(a: &AffineMatrixSpace, b: &AffineMatrixSpace, budget: &Budget) -> Result<Option<Matrix>> {
    Ok(congruence_test(a, b, budget)?.witness().cloned())
}

/// Lexicographically smallest canonical serialization over the orbit.
pub fn canonical_key(space: &AffineMatrixSpace, budget: &Budget) -> Result<Vec<u8>> {
    let group = GroupAction::new(space.ambient(), space.field(), budget)?;
    Ok(group.canonical_key(space)?.0)
}

#[cfg(test)]
mod tests;
