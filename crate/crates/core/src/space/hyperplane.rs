use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg;

/// A linear hyperplane `{x : normal^T x = 0}` of `K^n`, with the normal
/// scaled so that its first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    field: FieldSpec,
    normal: Vec<u8>,
}

impl Hyperplane {
    pub fn new(field: FieldSpec, normal: &[u8]) -> Result<Self> {
        let mut normal: Vec<u8> = normal.iter().map(|&x| x % field.q()).collect();
        let lead = normal
            .iter()
            .copied()
            .find(|&x| x != 0)
            .ok_or_else(|| Error::usage("hyperplane normal must be nonzero"))?;
        let inv = field.inv(lead).expect("nonzero");
        for x in normal.iter_mut() {
            *x = field.mul(*x, inv);
        }
        Ok(Hyperplane { field, normal })
    }

    /// `{x_i = 0}`, zero-based.
    pub fn coordinate(field: FieldSpec, n: usize, i: usize) -> Self {
        let mut normal = vec![0; n];
        normal[i] = 1;
        Hyperplane { field, normal }
    }

    pub fn normal(&self) -> &[u8] {
        &self.normal
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.normal.len()
    }

    /// Basis of the hyperplane itself (RREF, `n - 1` vectors).
    pub fn basis(&self) -> Vec<Vec<u8>> {
        linalg::kernel(self.field, &self.normal, 1, self.normal.len())
    }

    pub fn contains(&self, x: &[u8]) -> bool {
        let f = self.field;
        self.normal.iter().zip(x).fold(0u8, |acc, (&a, &b)| f.add(acc, f.mul(a, b))) == 0
    }

    /// Count of hyperplanes of `K^n`: `(q^n - 1) / (q - 1)`.
    pub fn count(field: FieldSpec, n: usize) -> u128 {
        let q = field.order() as u128;
        (0..n).map(|i| q.pow(i as u32)).sum()
    }

    /// All hyperplanes of `K^n`, ordered by normalized normal ascending.
    pub fn all(field: FieldSpec, n: usize) -> impl Iterator<Item = Hyperplane> {
        linalg::all_vectors(field, n)
            .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
            .map(move |normal| Hyperplane { field, normal })
    }

    /// Image under `x -> P x` for invertible `P` given as the matrix
    /// `inverse_transpose = P^{-T}`: the normal transforms contravariantly.
    pub fn transformed(&self, inverse_transpose: &crate::matrix::Matrix) -> Hyperplane {
        let image = inverse_transpose.apply(&self.normal);
        Hyperplane::new(self.field, &image).expect("invertible image of a nonzero normal")
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.normal.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}
