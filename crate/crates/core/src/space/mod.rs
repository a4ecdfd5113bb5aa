//! Affine subspaces of `Mat_{n,p}`, `Sym_n` or `Alt_n` over `GF(q)` in a
//! canonical representation: an RREF basis of the translation space plus
//! the base point with zeros on every pivot coordinate. Two descriptions
//! of the same affine set therefore compare equal.

mod ambient;
pub mod format;
mod hyperplane;
pub(crate) mod walk;

use std::fmt;

pub use ambient::AmbientKind;
pub use hyperplane::Hyperplane;

use crate::budget::{self, pow_sat, Budget};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg;
use crate::matrix::{Matrix, Ranker};
use walk::DenseAffine;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineMatrixSpace {
    ambient: AmbientKind,
    field: FieldSpec,
    base: Vec<u8>,
    basis: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl AffineMatrixSpace {
    /// Canonical space `base + span(gens)` from matrices.
    pub fn from_generators(ambient: AmbientKind, base: &Matrix, gens: &[Matrix]) -> Result<Self> {
        let field = base.field();
        let b = ambient.vectorize(base)?;
        let mut g = Vec::with_capacity(gens.len());
        for m in gens {
            if m.field() != field {
                return Err(Error::usage("generators over different fields"));
            }
            g.push(ambient.vectorize(m)?);
        }
        Ok(Self::from_vectors(ambient, field, b, g))
    }

    /// Canonical space from coordinate vectors (assumed reduced and of the
    /// ambient's length).
    pub fn from_vectors(ambient: AmbientKind, field: FieldSpec, mut base: Vec<u8>, mut gens: Vec<Vec<u8>>) -> Self {
        let n = ambient.dim();
        debug_assert_eq!(base.len(), n);
        debug_assert!(gens.iter().all(|g| g.len() == n));
        let pivots = linalg::rref(field, &mut gens);
        linalg::reduce(field, &gens, &pivots, &mut base);
        AffineMatrixSpace {
            ambient,
            field,
            base,
            basis: gens,
            pivots,
        }
    }

    /// Builds from an RREF basis and a base already reduced against it.
    pub(crate) fn from_canonical_parts(
        ambient: AmbientKind,
        field: FieldSpec,
        base: Vec<u8>,
        basis: Vec<Vec<u8>>,
        pivots: Vec<usize>,
    ) -> Self {
        AffineMatrixSpace {
            ambient,
            field,
            base,
            basis,
            pivots,
        }
    }

    /// The linear span of `gens`.
    pub fn linear_span(ambient: AmbientKind, field: FieldSpec, gens: &[Matrix]) -> Result<Self> {
        let zero = Matrix::zeros(field, ambient.rows(), ambient.cols());
        Self::from_generators(ambient, &zero, gens)
    }

    /// `{0}` in the ambient.
    pub fn zero(ambient: AmbientKind, field: FieldSpec) -> Self {
        Self::from_vectors(ambient, field, vec![0; ambient.dim()], Vec::new())
    }

    /// The whole ambient space.
    pub fn full(ambient: AmbientKind, field: FieldSpec) -> Self {
        let n = ambient.dim();
        let gens = (0..n)
            .map(|k| {
                let mut v = vec![0; n];
                v[k] = 1;
                v
            })
            .collect();
        Self::from_vectors(ambient, field, vec![0; n], gens)
    }

    pub fn ambient(&self) -> AmbientKind {
        self.ambient
    }
    pub fn field(&self) -> FieldSpec {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn base_vector(&self) -> &[u8] {
        &self.base
    }
    pub fn basis_vectors(&self) -> &[Vec<u8>] {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn base(&self) -> Matrix {
        self.ambient.matrix_of(self.field, &self.base)
    }
    pub fn basis(&self) -> Vec<Matrix> {
        self.basis.iter().map(|v| self.ambient.matrix_of(self.field, v)).collect()
    }
    /// `q^dim`, saturating.
    pub fn size(&self) -> u128 {
        pow_sat(self.field.order(), self.dim())
    }

    pub fn is_linear(&self) -> bool {
        self.base.iter().all(|&x| x == 0)
    }

    fn require_field(&self, m: &Matrix) -> Result<()> {
        if m.field() == self.field {
            Ok(())
        } else {
            Err(Error::usage("matrix and space over different fields"))
        }
    }

    /// Membership by reduction against the echelon basis.
    pub fn contains(&self, m: &Matrix) -> Result<bool> {
        self.require_field(m)?;
        let v = self.ambient.vectorize(m)?;
        Ok(self.contains_vector(&v))
    }

    pub fn contains_vector(&self, v: &[u8]) -> bool {
        let f = self.field;
        let mut d: Vec<u8> = v.iter().zip(&self.base).map(|(&a, &b)| f.sub(a, b)).collect();
        linalg::reduce(f, &self.basis, &self.pivots, &mut d);
        d.iter().all(|&x| x == 0)
    }

    /// Whether `other` is a subset of `self`.
    pub fn includes(&self, other: &AffineMatrixSpace) -> bool {
        self.ambient == other.ambient
            && self.field == other.field
            && self.contains_vector(&other.base)
            && {
                let lin = self.translation_space();
                other.basis.iter().all(|v| lin.contains_vector(v))
            }
    }

    /// Members in lexicographic coefficient order.
    pub fn enumerate_members(&self, budget: &Budget) -> Result<Vec<Matrix>> {
        budget::check("members of the space", self.size(), budget.members)?;
        let mut out = Vec::with_capacity(self.size() as usize);
        let (rows, cols) = (self.ambient.rows(), self.ambient.cols());
        self.walk_dense(|_, m| {
            out.push(Matrix::from_residues(self.field, rows, cols, m.to_vec()).expect("reduced"));
            true
        });
        Ok(out)
    }

    /// Dense generators for the member walker.
    pub(crate) fn dense_parts(&self) -> (Vec<u8>, Vec<Vec<u8>>) {
        let size = self.ambient.rows() * self.ambient.cols();
        let mut base = vec![0; size];
        self.ambient.densify(self.field, &self.base, &mut base);
        let gens = self
            .basis
            .iter()
            .map(|v| {
                let mut g = vec![0; size];
                self.ambient.densify(self.field, v, &mut g);
                g
            })
            .collect();
        (base, gens)
    }

    /// Visits `(coefficients, dense member)` without a budget check.
    pub(crate) fn walk_dense(&self, visit: impl FnMut(&[u8], &[u8]) -> bool) -> bool {
        let (base, gens) = self.dense_parts();
        DenseAffine {
            field: self.field,
            base: &base,
            gens: &gens,
        }
        .walk(visit)
    }

    /// Visits `(coefficients, rank)` for each member; stops when `visit`
    /// returns `false`.
    pub fn for_each_rank(&self, budget: &Budget, mut visit: impl FnMut(&[u8], usize) -> bool) -> Result<bool> {
        budget::check("members of the space", self.size(), budget.members)?;
        let mut ranker = Ranker::new(self.field, self.ambient.rows(), self.ambient.cols());
        Ok(self.walk_dense(|c, m| visit(c, ranker.rank(m))))
    }

    /// `max rank` over all members; stops early at full rank.
    pub fn upper_rank(&self, budget: &Budget) -> Result<usize> {
        let cap = self.ambient.rows().min(self.ambient.cols());
        let mut best = 0;
        self.for_each_rank(budget, |_, r| {
            best = best.max(r);
            best < cap
        })?;
        Ok(best)
    }

    /// Whether every member has rank at most `r` (early exit).
    pub fn rank_bounded_by(&self, r: usize, budget: &Budget) -> Result<bool> {
        self.for_each_rank(budget, |_, rk| rk <= r)
    }

    /// The linear space with the same basis.
    pub fn translation_space(&self) -> AffineMatrixSpace {
        AffineMatrixSpace {
            base: vec![0; self.base.len()],
            ..self.clone()
        }
    }

    fn require_linear_square(&self, op: &str) -> Result<()> {
        if !self.ambient.is_square() {
            return Err(Error::usage(format!("{op} needs a symmetric or alternating ambient")));
        }
        if !self.is_linear() {
            return Err(Error::usage(format!(
                "{op} is defined on linear spaces; pass the translation space"
            )));
        }
        Ok(())
    }

    /// `S_H`: the members of the linear space for which `H` is totally
    /// singular, i.e. `x^T M y = 0` for all `x, y` in `H`.
    pub fn restrict_sh(&self, h: &Hyperplane) -> Result<AffineMatrixSpace> {
        self.require_linear_square("restrict_SH")?;
        let n = self.ambient.rows();
        if h.ambient_dim() != n || h.field() != self.field {
            return Err(Error::usage("hyperplane does not live in K^n of this space"));
        }
        Ok(self.restrict_sh_unchecked(h))
    }

    pub(crate) fn restrict_sh_unchecked(&self, h: &Hyperplane) -> AffineMatrixSpace {
        let f = self.field;
        let hb = h.basis();
        let mats = self.basis();
        let d = mats.len();
        let mut eqs: Vec<u8> = Vec::new();
        let mut rows = 0;
        for a in 0..hb.len() {
            for b in a..hb.len() {
                for m in &mats {
                    eqs.push(m.bilinear(&hb[a], &hb[b]));
                }
                rows += 1;
            }
        }
        let coeffs = if d == 0 { Vec::new() } else { linalg::kernel(f, &eqs, rows, d) };
        let gens = coeffs
            .iter()
            .map(|c| linalg::combine(f, c, &self.basis, self.ambient.dim()))
            .collect();
        AffineMatrixSpace::from_vectors(self.ambient, f, vec![0; self.ambient.dim()], gens)
    }

    /// Minimum of `dim S_H` over all hyperplanes, with the first hyperplane
    /// (by normalized normal) attaining it.
    pub fn hyperplane_scan(&self, budget: &Budget) -> Result<(usize, Hyperplane)> {
        self.require_linear_square("hyperplane_scan")?;
        let n = self.ambient.rows();
        if n == 0 {
            return Err(Error::usage("K^0 has no hyperplanes"));
        }
        budget::check("hyperplanes", Hyperplane::count(self.field, n), budget.members)?;
        let mut best: Option<(usize, Hyperplane)> = None;
        for h in Hyperplane::all(self.field, n) {
            let d = self.restrict_sh_unchecked(&h).dim();
            if best.as_ref().is_none_or(|(b, _)| d < *b) {
                let done = d == 0;
                best = Some((d, h));
                if done {
                    break;
                }
            }
        }
        Ok(best.expect("at least one hyperplane"))
    }

    /// In characteristic 2: whether `(Alt_n)_H` is not included in `S_H`.
    pub fn is_adapted(&self, h: &Hyperplane) -> Result<bool> {
        if !self.field.is_char2() || !matches!(self.ambient, AmbientKind::Symmetric(_)) {
            return Err(Error::usage(
                "adapted hyperplanes are defined for symmetric spaces in characteristic 2",
            ));
        }
        self.require_linear_square("is_adapted")?;
        let n = self.ambient.rows();
        let alt = AffineMatrixSpace::full(AmbientKind::Alternating(n), self.field).restrict_sh(h)?;
        for m in alt.basis() {
            let v = self.ambient.vectorize(&m)?;
            if !self.contains_vector(&v) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Embeds every member in the top-left corner of an `n x n` zero matrix.
    pub fn pad(&self, n: usize) -> Result<AffineMatrixSpace> {
        let r = self.ambient.rows();
        let target = self.ambient.resized(n)?;
        if n < r {
            return Err(Error::usage(format!("cannot pad a size-{r} space down to {n}")));
        }
        let f = self.field;
        let embed = |m: &Matrix| -> Vec<u8> {
            let big = Matrix::from_fn(f, n, n, |i, j| if i < r && j < r { m.get(i, j) as i64 } else { 0 });
            target.vectorize(&big).expect("padding preserves shape")
        };
        let base = embed(&self.base());
        let gens = self.basis().iter().map(embed).collect();
        Ok(AffineMatrixSpace::from_vectors(target, f, base, gens))
    }

    /// `dim {X : M X = 0 for every member M}`.
    pub fn common_kernel_dim(&self) -> usize {
        let mats: Vec<Matrix> = std::iter::once(self.base()).chain(self.basis()).collect();
        stacked_kernel_dim(self.field, &mats, self.ambient.rows(), self.ambient.cols())
    }

    /// `dim {Y : Y^T M = 0 for every member M}`.
    pub fn left_kernel_dim(&self) -> usize {
        let mats: Vec<Matrix> = std::iter::once(self.base()).chain(self.basis()).map(|m| m.transpose()).collect();
        stacked_kernel_dim(self.field, &mats, self.ambient.cols(), self.ambient.rows())
    }

    /// `P S P^T` for invertible `P`.
    pub fn congruent_image(&self, p: &Matrix) -> Result<AffineMatrixSpace> {
        if !self.ambient.is_square() {
            return Err(Error::usage("congruence needs a square ambient"));
        }
        if p.rows() != self.ambient.rows() || !p.is_invertible() || p.field() != self.field {
            return Err(Error::usage("congruence factor must be invertible of matching size"));
        }
        Ok(self.congruent_image_unchecked(p))
    }

    pub(crate) fn congruent_image_unchecked(&self, p: &Matrix) -> AffineMatrixSpace {
        let f = self.field;
        let coords = self.ambient.coords();
        let transform = |v: &[u8]| -> Vec<u8> {
            let image = crate::matrix::congruence_unchecked(p, &self.ambient.matrix_of(f, v));
            coords.iter().map(|&(i, j)| image.get(i, j)).collect()
        };
        let base = transform(&self.base);
        let gens = self.basis.iter().map(|v| transform(v)).collect();
        AffineMatrixSpace::from_vectors(self.ambient, f, base, gens)
    }

    /// Bytes of the canonical form: ambient tag and shape, modulus,
    /// dimension, then base and basis coordinates as base-`q` digits.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(5 + self.base.len() * (1 + self.dim()));
        out.push(self.ambient.tag_byte());
        out.push(self.ambient.rows() as u8);
        out.push(self.ambient.cols() as u8);
        out.push(self.field.q());
        out.push(self.dim() as u8);
        out.extend_from_slice(&self.base);
        for v in &self.basis {
            out.extend_from_slice(v);
        }
        out
    }

    /// Same matrices viewed in another ambient of equal size (e.g. an
    /// alternating space as a symmetric one in characteristic 2).
    pub fn reinterpret(&self, ambient: AmbientKind) -> Result<AffineMatrixSpace> {
        if ambient.rows() != self.ambient.rows() || ambient.cols() != self.ambient.cols() {
            return Err(Error::usage("ambients differ in size"));
        }
        let base = ambient.vectorize(&self.base())?;
        let gens = self.basis().iter().map(|m| ambient.vectorize(m)).collect::<Result<Vec<_>>>()?;
        Ok(AffineMatrixSpace::from_vectors(ambient, self.field, base, gens))
    }

    /// Affine span of this space and one more direction.
    pub fn extended(&self, direction: &[u8]) -> AffineMatrixSpace {
        let mut gens = self.basis.clone();
        gens.push(direction.to_vec());
        AffineMatrixSpace::from_vectors(self.ambient, self.field, self.base.clone(), gens)
    }
}

fn stacked_kernel_dim(f: FieldSpec, mats: &[Matrix], rows: usize, cols: usize) -> usize {
    let data: Vec<u8> = mats.iter().flat_map(|m| m.entries().iter().copied()).collect();
    let stacked = Matrix::from_residues(f, rows * mats.len(), cols, data).expect("consistent shapes");
    cols - stacked.rank()
}

impl fmt::Display for AffineMatrixSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format::to_text(self))
    }
}
