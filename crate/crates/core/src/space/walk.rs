//! Member enumeration for affine spaces given by dense generators.

use crate::field::FieldSpec;

/// `base + sum c_i gens[i]` over all coefficient vectors `c`, visited in
/// lexicographic order (first coefficient most significant).
pub(crate) struct DenseAffine<'a> {
    pub field: FieldSpec,
    pub base: &'a [u8],
    pub gens: &'a [Vec<u8>],
}

impl DenseAffine<'_> {
    /// Calls `visit(coeffs, member)` for each member until it returns
    /// `false`. Returns whether the walk completed.
    pub fn walk(&self, mut visit: impl FnMut(&[u8], &[u8]) -> bool) -> bool {
        let f = self.field;
        let q = f.q();
        let d = self.gens.len();
        let mut coeffs = vec![0u8; d];
        let mut member = self.base.to_vec();
        loop {
            if !visit(&coeffs, &member) {
                return false;
            }
            // odometer; wrapping a digit from q-1 to 0 also adds its
            // generator once since q * g = 0
            let mut i = d;
            loop {
                if i == 0 {
                    return true;
                }
                i -= 1;
                for (m, &g) in member.iter_mut().zip(&self.gens[i]) {
                    *m = f.add(*m, g);
                }
                coeffs[i] += 1;
                if coeffs[i] < q {
                    break;
                }
                coeffs[i] = 0;
            }
        }
    }
}
