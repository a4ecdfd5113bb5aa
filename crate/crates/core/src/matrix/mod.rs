//! Dense matrices over `GF(q)`.
//!
//! Storage is row-major with fully reduced residues. Rank and determinant
//! use Gaussian elimination with first-nonzero pivoting; the classical
//! adjoint is available both from cofactors and from an elimination route,
//! and [`Matrix::adjugate`] picks one by size.

pub mod kernel;

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg;

pub use kernel::Ranker;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

/// Symmetry flags of a square matrix. In characteristic 2 every
/// alternating matrix is also symmetric, so both flags may be set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub symmetric: bool,
    pub alternating: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeKind {
    Symmetric,
    Alternating,
    Neither,
}

impl Shape {
    /// Alternating wins over symmetric when both hold.
    pub fn kind(self) -> ShapeKind {
        if self.alternating {
            ShapeKind::Alternating
        } else if self.symmetric {
            ShapeKind::Symmetric
        } else {
            ShapeKind::Neither
        }
    }
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// `E_{i,j}` in `Mat_n`, zero-based indices.
    pub fn elementary(field: FieldSpec, n: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        m.data[i * n + j] = 1;
        m
    }

    /// Builds a matrix from already-reduced residues.
    pub fn from_residues(field: FieldSpec, rows: usize, cols: usize, data: Vec<u8>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::usage(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&x| x >= field.q()) {
            return Err(Error::usage(format!("entry {bad} is not reduced modulo {}", field.q())));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from integer rows, reducing every entry modulo `q`.
    pub fn from_rows<R: AsRef<[i64]>>(field: FieldSpec, rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.as_ref().len(), c, "ragged rows");
            data.extend(row.as_ref().iter().map(|&x| field.reduce(x)));
        }
        Matrix {
            field,
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_fn(field: FieldSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(field.reduce(f(i, j)));
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Column vector from residues.
    pub fn column(field: FieldSpec, entries: &[u8]) -> Self {
        Matrix {
            field,
            rows: entries.len(),
            cols: 1,
            data: entries.iter().map(|&x| x % field.q()).collect(),
        }
    }

    #[inline]
    pub fn field(&self) -> FieldSpec {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    #[inline]
    pub fn entries(&self) -> &[u8] {
        &self.data
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v % self.field.q();
    }
    pub fn scalar_at(&self, i: usize, j: usize) -> Scalar {
        Scalar::new(self.get(i, j) as i64, self.field)
    }
    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn require_square(&self, op: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::usage(format!(
                "{op} needs a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    fn require_same_field(&self, other: &Matrix) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::usage(format!(
                "matrices over different fields ({} and {})",
                self.field, other.field
            )))
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i) as i64)
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix> {
        self.require_same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::usage("matrix sum of different shapes"));
        }
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Matrix { data, ..*self })
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.require_same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::usage(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let q = f.q() as u32;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0u32;
                for k in 0..self.cols {
                    acc = (acc + self.get(i, k) as u32 * other.get(k, j) as u32) % q;
                }
                out.data[i * other.cols + j] = acc as u8;
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Matrix {
        let f = self.field;
        Matrix {
            data: self.data.iter().map(|&a| f.neg(a)).collect(),
            ..*self
        }
    }

    pub fn scale(&self, c: u8) -> Matrix {
        let f = self.field;
        Matrix {
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
            ..*self
        }
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        Ranker::new(self.field, self.rows, self.cols).rank(&self.data)
    }

    /// Rank through the dense elimination path only.
    pub fn rank_dense(&self) -> usize {
        Ranker::with_path(self.field, self.rows, self.cols, false).rank(&self.data)
    }

    /// Exact determinant; the empty matrix has determinant 1.
    pub fn det(&self) -> Result<Scalar> {
        self.require_square("det")?;
        Ok(Scalar::new(det_residue(self.field, &self.data, self.rows) as i64, self.field))
    }

    /// Inverse, or a usage error for singular input.
    pub fn inverse(&self) -> Result<Matrix> {
        self.require_square("inverse")?;
        let n = self.rows;
        let f = self.field;
        let mut aug: Vec<Vec<u8>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| u8::from(i == j)));
                r
            })
            .collect();
        let pivots = linalg::rref(f, &mut aug);
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::usage("matrix is singular"));
        }
        let data = aug.iter().flat_map(|r| r[n..].iter().copied()).collect();
        Ok(Matrix { data, ..*self })
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Submatrix keeping the given rows and columns in order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]) as i64)
    }

    /// Deletes one row and one column.
    pub fn minor(&self, row: usize, col: usize) -> Matrix {
        let rs: Vec<usize> = (0..self.rows).filter(|&i| i != row).collect();
        let cs: Vec<usize> = (0..self.cols).filter(|&j| j != col).collect();
        self.select(&rs, &cs)
    }

    /// Classical adjoint `M^ad` with `M * M^ad = det(M) I`.
    ///
    /// Cofactors for size at most 4, the elimination route above that.
    pub fn adjugate(&self) -> Result<Matrix> {
        self.require_square("adjugate")?;
        if self.rows == 0 {
            return Err(Error::usage("adjugate is undefined for the empty matrix"));
        }
        if self.rows <= 4 {
            Ok(self.adjugate_cofactor())
        } else {
            Ok(self.adjugate_elimination())
        }
    }

    /// Adjugate straight from cofactors: `(M^ad)_{ij} = C_{ji}`.
    pub fn adjugate_cofactor(&self) -> Matrix {
        let n = self.rows;
        let f = self.field;
        if n == 1 {
            return Matrix::identity(f, 1);
        }
        Matrix::from_fn(f, n, n, |i, j| {
            let d = det_residue(f, &self.minor(j, i).data, n - 1) as i64;
            if (i + j) % 2 == 0 {
                d
            } else {
                -d
            }
        })
    }

    /// Adjugate via elimination: `det * M^{-1}` for invertible `M`, the
    /// rank-one form `lambda x y^T` (right and left kernel vectors) at
    /// corank one, and zero below that.
    pub fn adjugate_elimination(&self) -> Matrix {
        let n = self.rows;
        let f = self.field;
        if n == 1 {
            return Matrix::identity(f, 1);
        }
        let rank = self.rank();
        if rank == n {
            let d = det_residue(f, &self.data, n);
            return self.inverse().expect("invertible").scale(d);
        }
        if rank + 1 < n {
            return Matrix::zeros(f, n, n);
        }
        let x = linalg::kernel(f, &self.data, n, n).remove(0);
        let t = self.transpose();
        let y = linalg::kernel(f, &t.data, n, n).remove(0);
        let i = x.iter().position(|&v| v != 0).expect("nonzero kernel vector");
        let j = y.iter().position(|&v| v != 0).expect("nonzero kernel vector");
        // (M^ad)_{ij} is the (j, i) cofactor
        let mut c = det_residue(f, &self.minor(j, i).data, n - 1);
        if (i + j) % 2 == 1 {
            c = f.neg(c);
        }
        let lambda = f.div(c, f.mul(x[i], y[j])).expect("nonzero");
        Matrix::from_fn(f, n, n, |a, b| f.mul(lambda, f.mul(x[a], y[b])) as i64)
    }

    /// `Delta(M)`, the column of diagonal entries.
    pub fn diagonal_vector(&self) -> Result<Matrix> {
        self.require_square("diagonal_vector")?;
        let d: Vec<u8> = (0..self.rows).map(|i| self.get(i, i)).collect();
        Ok(Matrix::column(self.field, &d))
    }

    /// `P M P^T` for invertible `P`.
    pub fn congruence_apply(p: &Matrix, m: &Matrix) -> Result<Matrix> {
        p.require_same_field(m)?;
        p.require_square("congruence")?;
        m.require_square("congruence")?;
        if p.rows != m.rows {
            return Err(Error::usage("congruence factor and matrix differ in size"));
        }
        if !p.is_invertible() {
            return Err(Error::usage("congruence factor is singular"));
        }
        Ok(congruence_unchecked(p, m))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_alternating(&self) -> bool {
        let f = self.field;
        self.is_square()
            && (0..self.rows).all(|i| {
                self.get(i, i) == 0 && (0..i).all(|j| self.get(i, j) == f.neg(self.get(j, i)))
            })
    }

    pub fn classify_shape(&self) -> Result<Shape> {
        self.require_square("classify_shape")?;
        Ok(Shape {
            symmetric: self.is_symmetric(),
            alternating: self.is_alternating(),
        })
    }

    /// `x^T M y` for vectors given as residue slices.
    pub fn bilinear(&self, x: &[u8], y: &[u8]) -> u8 {
        let f = self.field;
        let q = f.q() as u32;
        let mut acc = 0u32;
        for i in 0..self.rows {
            if x[i] == 0 {
                continue;
            }
            let mut row = 0u32;
            for j in 0..self.cols {
                row = (row + self.get(i, j) as u32 * y[j] as u32) % q;
            }
            acc = (acc + x[i] as u32 * row) % q;
        }
        acc as u8
    }

    /// `M x` for a residue vector.
    pub fn apply(&self, x: &[u8]) -> Vec<u8> {
        let q = self.field.q() as u32;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u32;
                for j in 0..self.cols {
                    acc = (acc + self.get(i, j) as u32 * x[j] as u32) % q;
                }
                acc as u8
            })
            .collect()
    }

    /// Block matrix `[[a, c], [b, d]]`.
    pub fn block(a: &Matrix, c: &Matrix, b: &Matrix, d: &Matrix) -> Result<Matrix> {
        for m in [b, c, d] {
            a.require_same_field(m)?;
        }
        if a.rows != c.rows || b.rows != d.rows || a.cols != b.cols || c.cols != d.cols {
            return Err(Error::usage("block dimensions do not line up"));
        }
        let rows = a.rows + b.rows;
        let cols = a.cols + c.cols;
        Ok(Matrix::from_fn(a.field, rows, cols, |i, j| {
            (match (i < a.rows, j < a.cols) {
                (true, true) => a.get(i, j),
                (true, false) => c.get(i, j - a.cols),
                (false, true) => b.get(i - a.rows, j),
                (false, false) => d.get(i - a.rows, j - a.cols),
            }) as i64
        }))
    }

    /// Right kernel basis (RREF).
    pub fn kernel_basis(&self) -> Vec<Vec<u8>> {
        linalg::kernel(self.field, &self.data, self.rows, self.cols)
    }

    /// Parses the text form `[[0,1],[1,1]]`, rejecting entries outside
    /// `[0, q)` and ragged rows.
    pub fn parse(field: FieldSpec, text: &str) -> Result<Matrix> {
        let rows: Vec<Vec<i64>> =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix text: {e}")))?;
        Matrix::from_int_rows(field, &rows)
    }

    pub(crate) fn from_int_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Parse("ragged matrix rows".into()));
            }
            for &x in row {
                if x < 0 || x >= field.q() as i64 {
                    return Err(Error::Parse(format!(
                        "entry {x} is not a reduced residue modulo {}",
                        field.q()
                    )));
                }
                data.push(x as u8);
            }
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

}

/// `P M P^T` without validation.
pub(crate) fn congruence_unchecked(p: &Matrix, m: &Matrix) -> Matrix {
    let pm = p.try_mul(m).expect("shapes checked");
    pm.try_mul(&p.transpose()).expect("shapes checked")
}

/// Determinant of a dense `n x n` residue matrix by elimination.
pub(crate) fn det_residue(f: FieldSpec, data: &[u8], n: usize) -> u8 {
    let mut a = data.to_vec();
    let mut det = 1u8;
    for col in 0..n {
        let Some(pr) = (col..n).find(|&r| a[r * n + col] != 0) else {
            return 0;
        };
        if pr != col {
            for c in 0..n {
                a.swap(pr * n + c, col * n + c);
            }
            det = f.neg(det);
        }
        let p = a[col * n + col];
        det = f.mul(det, p);
        let inv = f.inv(p).expect("nonzero pivot");
        for r in col + 1..n {
            let x = a[r * n + col];
            if x == 0 {
                continue;
            }
            let factor = f.mul(x, inv);
            for c in col..n {
                let v = f.sub(a[r * n + c], f.mul(factor, a[col * n + c]));
                a[r * n + c] = v;
            }
        }
    }
    det
}

/// `r + rank(B A^{-1} C - D)` for invertible `A`; equals the rank of
/// `[[A, C], [B, D]]`.
pub fn schur_rank(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Result<usize> {
    let ainv = a.inverse().map_err(|_| Error::usage("schur_rank needs an invertible leading block"))?;
    let bac = b.try_mul(&ainv)?.try_mul(c)?;
    Ok(a.rows() + bac.try_sub(d)?.rank())
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
