//! Spaces of rectangular matrices with bounded rank: the equality-case
//! conditions at dimension `n r` and recovery of the column relation
//! `V = {[N, N Y]}`.

use super::bounded::bounded_rank_survivors;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg;
use crate::matrix::Matrix;
use crate::space::{AffineMatrixSpace, AmbientKind};

/// Which equality conditions a space satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bullets {
    /// The common right kernel has dimension at least `p - r`.
    pub common_kernel: bool,
    /// `n = p` and the members' column spaces together span at most `r`
    /// dimensions.
    pub common_image: bool,
    /// `q = 2`, `n = p = 2` and the space misses the zero matrix.
    pub zero_free_exception: bool,
}

impl Bullets {
    pub fn any(&self) -> bool {
        self.common_kernel || self.common_image || self.zero_free_exception
    }

    pub fn of(space: &AffineMatrixSpace, r: usize) -> Bullets {
        let amb = space.ambient();
        let (n, p) = (amb.rows(), amb.cols());
        let zero = Matrix::zeros(space.field(), n, p);
        Bullets {
            common_kernel: space.common_kernel_dim() + r >= p,
            common_image: n == p && space.left_kernel_dim() + r >= n,
            zero_free_exception: space.field().q() == 2
                && n == 2
                && p == 2
                && !space.contains(&zero).expect("same ambient"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FlandersReport {
    pub n: usize,
    pub p: usize,
    pub r: usize,
    pub field: FieldSpec,
    pub dim: usize,
    pub spaces_scanned: u128,
    pub survivors: Vec<(AffineMatrixSpace, Bullets)>,
}

impl FlandersReport {
    pub fn all_satisfy_a_bullet(&self) -> bool {
        self.survivors.iter().all(|(_, b)| b.any())
    }

    /// Survivors explained only by the zero-free exception.
    pub fn exception_only(&self) -> usize {
        self.survivors
            .iter()
            .filter(|(_, b)| b.zero_free_exception && !b.common_kernel && !b.common_image)
            .count()
    }

    pub fn zero_free(&self) -> usize {
        self.survivors
            .iter()
            .filter(|(s, _)| !s.contains(&Matrix::zeros(s.field(), self.n, self.p)).expect("same ambient"))
            .count()
    }

    pub fn to_text(&self) -> String {
        let count = |f: fn(&Bullets) -> bool| self.survivors.iter().filter(|(_, b)| f(b)).count();
        format!(
            "ambient Mat_{{{},{}}}\nq {}\nr {}\ndim {}\nspaces_scanned {}\nspaces_satisfying {}\ncommon_kernel {}\ncommon_image {}\nzero_free_exception {}\nzero_free {}\nexception_only {}\nall_satisfy_a_bullet {}\n",
            self.n,
            self.p,
            self.field.q(),
            self.r,
            self.dim,
            self.spaces_scanned,
            self.survivors.len(),
            count(|b| b.common_kernel),
            count(|b| b.common_image),
            count(|b| b.zero_free_exception),
            self.zero_free(),
            self.exception_only(),
            self.all_satisfy_a_bullet()
        )
    }
}

/// Bounded-rank search on `Mat_{n,p}` with the equality conditions
/// evaluated on every survivor.
pub fn flanders_scan(n: usize, p: usize, r: usize, field: FieldSpec, dim: usize, budget: &Budget) -> Result<FlandersReport> {
    let amb = AmbientKind::Full { n, p };
    let (scanned, spaces) = bounded_rank_survivors(amb, field, r, dim, budget)?;
    let survivors = spaces
        .into_iter()
        .map(|s| {
            let b = Bullets::of(&s, r);
            (s, b)
        })
        .collect();
    Ok(FlandersReport {
        n,
        p,
        r,
        field,
        dim,
        spaces_scanned: scanned,
        survivors,
    })
}

/// The vector `Y` in `K^{p-1}` with `V = {[N, N Y] : N in Mat_{n,p-1}}`.
pub fn flanders_recover_y(v: &AffineMatrixSpace, budget: &Budget) -> Result<Vec<u8>> {
    let AmbientKind::Full { n, p } = v.ambient() else {
        return Err(Error::usage("column relations are recovered on Mat_{n,p}"));
    };
    if p == 0 {
        return Err(Error::usage("need at least one column"));
    }
    let f = v.field();
    let urk = v.upper_rank(budget)?;
    if urk >= p {
        return Err(Error::Precondition(format!("urk V < p fails: urk V = {urk}, p = {p}")));
    }
    let projected: Vec<Vec<u8>> = v
        .basis()
        .iter()
        .map(|m| (0..n).flat_map(|i| m.row(i)[..p - 1].to_vec()).collect())
        .collect();
    if linalg::rank_of(f, &projected) != n * (p - 1) {
        return Err(Error::Precondition(
            "the first p-1 columns of the members do not cover Mat_{n,p-1}".into(),
        ));
    }
    let zero = Matrix::zeros(f, n, p);
    if !(n > p || p > 2 || f.q() > 2 || v.contains(&zero)?) {
        return Err(Error::Precondition("need n > p, p > 2, q > 2 or 0 in V".into()));
    }
    let mats: Vec<Matrix> = std::iter::once(v.base()).chain(v.basis()).collect();
    let stacked: Vec<u8> = mats.iter().flat_map(|m| m.entries().to_vec()).collect();
    let kernel = linalg::kernel(f, &stacked, mats.len() * n, p);
    let x = kernel
        .iter()
        .find(|x| x[p - 1] != 0)
        .ok_or_else(|| Error::Precondition("no common kernel vector with nonzero last entry".into()))?;
    // Scale so that the last entry is -1; then (Y, -1) is in the kernel.
    let scale = f.neg(f.inv(x[p - 1]).expect("nonzero"));
    let y: Vec<u8> = x[..p - 1].iter().map(|&c| f.mul(c, scale)).collect();
    if v.dim() != n * (p - 1) {
        return Err(Error::Precondition("V is larger than {[N, N Y]}".into()));
    }
    Ok(y)
}

/// `{[N, N Y] : N in Mat_{n,p-1}}`.
pub fn column_relation_space(n: usize, y: &[u8], field: FieldSpec) -> Result<AffineMatrixSpace> {
    let p = y.len() + 1;
    let amb = AmbientKind::Full { n, p };
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..p - 1 {
            let mut m = Matrix::zeros(field, n, p);
            m.set(i, j, 1);
            m.set(i, p - 1, y[j] % field.q());
            gens.push(m);
        }
    }
    AffineMatrixSpace::from_generators(amb, &Matrix::zeros(field, n, p), &gens)
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn gf(q: u32) -> FieldSpec {
        FieldSpec::gf(q)
    }

    #[test]
    fn scan_above_bound_is_empty() {
        let rep = flanders_scan(2, 2, 1, gf(2), 3, &Budget::default()).unwrap();
        assert!(rep.survivors.is_empty());
        assert_eq!(rep.spaces_scanned, 15 * 2);
    }

    #[test]
    fn equality_case_over_gf2() {
        let rep = flanders_scan(2, 2, 1, gf(2), 2, &Budget::default()).unwrap();
        assert!(!rep.survivors.is_empty());
        assert!(rep.all_satisfy_a_bullet());
        assert!(rep.zero_free() >= 1);
        assert!(rep.exception_only() >= 1);
    }

    #[test]
    fn equality_case_over_gf3() {
        let rep = flanders_scan(2, 2, 1, gf(3), 2, &Budget::default()).unwrap();
        assert!(!rep.survivors.is_empty());
        assert!(rep.survivors.iter().all(|(_, b)| (b.common_kernel || b.common_image) && !b.zero_free_exception));
    }

    #[test]
    fn recover_examples() {
        let b = Budget::default();
        let f = gf(2);
        let v = column_relation_space(3, &[0], f).unwrap();
        assert_eq!(flanders_recover_y(&v, &b).unwrap(), vec![0]);
        let v = column_relation_space(3, &[1], f).unwrap();
        assert_eq!(flanders_recover_y(&v, &b).unwrap(), vec![1]);
    }

    #[test]
    fn plant_and_recover() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let b = Budget::default();
        for (n, p, q) in [(3usize, 2usize, 2u32), (3, 3, 3)] {
            let f = gf(q);
            for _ in 0..20 {
                let y: Vec<u8> = (0..p - 1).map(|_| rng.gen_range(0..q) as u8).collect();
                let v = column_relation_space(n, &y, f).unwrap();
                assert_eq!(flanders_recover_y(&v, &b).unwrap(), y);
            }
        }
    }

    #[test]
    fn recover_rejects_failed_hypotheses() {
        let b = Budget::default();
        let f = gf(2);
        let full = AffineMatrixSpace::full(AmbientKind::Full { n: 2, p: 2 }, f);
        assert!(matches!(flanders_recover_y(&full, &b), Err(Error::Precondition(m)) if m.contains("urk")));
        let small = AffineMatrixSpace::zero(AmbientKind::Full { n: 2, p: 2 }, f);
        assert!(matches!(flanders_recover_y(&small, &b), Err(Error::Precondition(m)) if m.contains("cover")));
        // n = p = 2 over GF(2) without 0: the exceptional case.
        let rep = flanders_scan(2, 2, 1, f, 2, &b).unwrap();
        let (exceptional, _) = rep
            .survivors
            .iter()
            .find(|(s, bl)| bl.zero_free_exception && Bullets::of(s, 1).common_kernel == false)
            .unwrap();
        let first_cols: Vec<Vec<u8>> = exceptional.basis().iter().map(|m| vec![m.get(0, 0), m.get(1, 0)]).collect();
        if linalg::rank_of(f, &first_cols) == 2 {
            assert!(matches!(flanders_recover_y(exceptional, &b), Err(Error::Precondition(m)) if m.contains("0 in V")));
        }
    }
}
