use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::Matrix;

/// The ambient vector space of matrices together with its frozen
/// coordinate list: row-major for `Full`, `i <= j` for `Symmetric`,
/// `i < j` for `Alternating`, both lexicographic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AmbientKind {
    Full { n: usize, p: usize },
    Symmetric(usize),
    Alternating(usize),
}

impl AmbientKind {
    pub fn rows(self) -> usize {
        match self {
            AmbientKind::Full { n, .. } | AmbientKind::Symmetric(n) | AmbientKind::Alternating(n) => n,
        }
    }

    pub fn cols(self) -> usize {
        match self {
            AmbientKind::Full { p, .. } => p,
            AmbientKind::Symmetric(n) | AmbientKind::Alternating(n) => n,
        }
    }

    pub fn is_square(self) -> bool {
        !matches!(self, AmbientKind::Full { .. })
    }

    /// Number of coordinates.
    pub fn dim(self) -> usize {
        match self {
            AmbientKind::Full { n, p } => n * p,
            AmbientKind::Symmetric(n) => n * (n + 1) / 2,
            AmbientKind::Alternating(n) => n * n.saturating_sub(1) / 2,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            AmbientKind::Full { .. } => "full",
            AmbientKind::Symmetric(_) => "symmetric",
            AmbientKind::Alternating(_) => "alternating",
        }
    }

    pub(crate) fn tag_byte(self) -> u8 {
        match self {
            AmbientKind::Full { .. } => b'F',
            AmbientKind::Symmetric(_) => b'S',
            AmbientKind::Alternating(_) => b'A',
        }
    }

    /// Same shape class at another size (square ambients only).
    pub fn resized(self, n: usize) -> Result<AmbientKind> {
        match self {
            AmbientKind::Symmetric(_) => Ok(AmbientKind::Symmetric(n)),
            AmbientKind::Alternating(_) => Ok(AmbientKind::Alternating(n)),
            AmbientKind::Full { .. } => Err(Error::usage("operation needs a square ambient")),
        }
    }

    pub fn coords(self) -> Vec<(usize, usize)> {
        match self {
            AmbientKind::Full { n, p } => (0..n).flat_map(|i| (0..p).map(move |j| (i, j))).collect(),
            AmbientKind::Symmetric(n) => (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect(),
            AmbientKind::Alternating(n) => (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect(),
        }
    }

    /// Whether `m` has this ambient's size and symmetry.
    pub fn admits(self, m: &Matrix) -> bool {
        if m.rows() != self.rows() || m.cols() != self.cols() {
            return false;
        }
        match self {
            AmbientKind::Full { .. } => true,
            AmbientKind::Symmetric(_) => m.is_symmetric(),
            AmbientKind::Alternating(_) => m.is_alternating(),
        }
    }

    pub fn vectorize(self, m: &Matrix) -> Result<Vec<u8>> {
        if !self.admits(m) {
            return Err(Error::usage(format!(
                "{}x{} matrix {m} does not lie in the {self} ambient",
                m.rows(),
                m.cols()
            )));
        }
        Ok(self.coords().into_iter().map(|(i, j)| m.get(i, j)).collect())
    }

    /// Writes the dense row-major matrix of coordinate vector `v` to `out`.
    pub(crate) fn densify(self, f: FieldSpec, v: &[u8], out: &mut [u8]) {
        out.fill(0);
        let cols = self.cols();
        match self {
            AmbientKind::Full { .. } => out.copy_from_slice(v),
            AmbientKind::Symmetric(n) => {
                let mut k = 0;
                for i in 0..n {
                    for j in i..n {
                        out[i * cols + j] = v[k];
                        out[j * cols + i] = v[k];
                        k += 1;
                    }
                }
            }
            AmbientKind::Alternating(n) => {
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        out[i * cols + j] = v[k];
                        out[j * cols + i] = f.neg(v[k]);
                        k += 1;
                    }
                }
            }
        }
    }

    pub fn matrix_of(self, f: FieldSpec, v: &[u8]) -> Matrix {
        let mut out = vec![0u8; self.rows() * self.cols()];
        self.densify(f, v, &mut out);
        Matrix::from_residues(f, self.rows(), self.cols(), out).expect("reduced")
    }
}

impl fmt::Display for AmbientKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmbientKind::Full { n, p } => write!(f, "Mat_{{{n},{p}}}"),
            AmbientKind::Symmetric(n) => write!(f, "Sym_{n}"),
            AmbientKind::Alternating(n) => write!(f, "Alt_{n}"),
        }
    }
}
