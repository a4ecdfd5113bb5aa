//! Matrix-level lemma checks: exhaustive over `GF(2)` at small sizes and
//! randomized over odd prime fields up to size 5.
//!
//! Hypotheses of the form "`rk(A + tN) <= r` for every `t`" are met by
//! computing `m = max_t rk(A + tN)` and applying the conclusion for the
//! smallest admissible `r >= m`, which implies it for every larger `r`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{CheckOutcome, Tally, VerifyConfig};
use crate::error::Result;
use crate::field::FieldSpec;
use crate::linalg::all_vectors;
use crate::matrix::Matrix;
use crate::space::AmbientKind;

const RANDOM_FIELDS: [u32; 2] = [3, 5];
const MAX_RANDOM_SIZE: usize = 5;

fn random_vec(f: FieldSpec, len: usize, rng: &mut ChaCha8Rng) -> Vec<u8> {
    (0..len).map(|_| rng.gen_range(0..f.q())).collect()
}

fn random_general(f: FieldSpec, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    Matrix::from_residues(f, rows, cols, random_vec(f, rows * cols, rng)).expect("reduced entries")
}

/// Uniform member of `ambient`, or with even odds a congruent image
/// `X^T S X` of a random `k x k` matrix of the same kind, so that low ranks
/// are well represented.
pub fn random_member(ambient: AmbientKind, f: FieldSpec, rng: &mut ChaCha8Rng) -> Matrix {
    let n = ambient.rows();
    if rng.gen_bool(0.5) || n == 0 {
        return ambient.matrix_of(f, &random_vec(f, ambient.dim(), rng));
    }
    let k = rng.gen_range(0..n);
    let small = ambient.resized(k).expect("square ambient");
    let s = small.matrix_of(f, &random_vec(f, small.dim(), rng));
    let x = random_general(f, k, n, rng);
    x.transpose().try_mul(&s).and_then(|m| m.try_mul(&x)).expect("shapes agree")
}

fn line_max_rank(a: &Matrix, dir: &Matrix) -> usize {
    let f = a.field();
    (0..f.q()).map(|t| a.try_add(&dir.scale(t)).expect("same shape").rank()).max().unwrap_or(0)
}

/// `x^T M y`.
fn form(m: &Matrix, x: &[u8], y: &[u8]) -> u8 {
    m.bilinear(x, y)
}

fn leading(a: &Matrix, k: usize) -> Matrix {
    let idx: Vec<usize> = (0..k).collect();
    a.select(&idx, &idx)
}

/// `[[0, C], [s C^T, a]]` of size `len(C) + 1`, with `s = -1` when `negate`.
fn bordered(f: FieldSpec, c: &[u8], corner: u8, negate: bool) -> Matrix {
    let n = c.len() + 1;
    Matrix::from_fn(f, n, n, |i, j| {
        if i == n - 1 && j == n - 1 {
            corner as i64
        } else if j == n - 1 {
            c[i] as i64
        } else if i == n - 1 {
            let v = c[j] as i64;
            if negate {
                -v
            } else {
                v
            }
        } else {
            0
        }
    })
}

fn outcome(id: &'static str, anchor: &'static str, t: Tally) -> Result<CheckOutcome> {
    Ok(CheckOutcome::from_tally(id, anchor, &t))
}

// ---------------------------------------------------------------------------
// Adjugate identity and rank-one update.

pub fn adjugate_instance(m: &Matrix, t: &mut Tally) {
    t.case();
    let f = m.field();
    let n = m.rows();
    let adj = m.adjugate().expect("nonempty square");
    let det = m.det().expect("square").value();
    let scalar = Matrix::identity(f, n).scale(det);
    let ok = m.try_mul(&adj).unwrap() == scalar
        && adj.try_mul(m).unwrap() == scalar
        && (n > 4 || adj == m.adjugate_elimination())
        && (n <= 4 || adj == m.adjugate_cofactor());
    t.hit(ok, || format!("M={m}"));
}

pub fn adjugate_check(config: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let mut t = Tally::default();
    let f2 = FieldSpec::gf(2);
    for n in 1..=3 {
        for v in all_vectors(f2, n * n) {
            adjugate_instance(&Matrix::from_residues(f2, n, n, v)?, &mut t);
        }
    }
    for q in RANDOM_FIELDS {
        let f = FieldSpec::gf(q);
        for _ in 0..config.random_cases {
            let n = rng.gen_range(1..=MAX_RANDOM_SIZE);
            adjugate_instance(&random_general(f, n, n, rng), &mut t);
        }
    }
    outcome("lemmas.adjugate", "adjugate-identity", t)
}

/// `det(P + C C^T) = det P + C^T P^ad C`.
pub fn rank_one_update_instance(p: &Matrix, c: &[u8], t: &mut Tally) {
    t.case();
    let f = p.field();
    let col = Matrix::column(f, c);
    let lhs = p.try_add(&col.try_mul(&col.transpose()).unwrap()).unwrap().det().unwrap().value();
    let rhs = f.add(p.det().unwrap().value(), form(&p.adjugate().unwrap(), c, c));
    t.hit(lhs == rhs, || format!("P={p} C={c:?}"));
}

pub fn rank_one_update_check(config: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let mut t = Tally::default();
    let f2 = FieldSpec::gf(2);
    for n in 2..=3 {
        for v in all_vectors(f2, n * n) {
            let p = Matrix::from_residues(f2, n, n, v)?;
            for c in all_vectors(f2, n) {
                rank_one_update_instance(&p, &c, &mut t);
            }
        }
    }
    for q in RANDOM_FIELDS {
        let f = FieldSpec::gf(q);
        for _ in 0..config.random_cases {
            let n = rng.gen_range(1..=MAX_RANDOM_SIZE);
            let p = random_general(f, n, n, rng);
            let c = random_vec(f, n, rng);
            rank_one_update_instance(&p, &c, &mut t);
        }
    }
    outcome("lemmas.rank-one-update", "rank-one-determinant-update", t)
}

// ---------------------------------------------------------------------------
// Schur complement.

/// Compares the rank of `[[A, C], [B, D]]` with `r + rk(B A^{-1} C - D)`;
/// singular `A` is not a hit.
pub fn schur_instance(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix, t: &mut Tally) {
    t.case();
    let Ok(ainv) = a.inverse() else { return };
    let whole = Matrix::block(a, c, b, d).unwrap().rank();
    let complement = b.try_mul(&ainv).unwrap().try_mul(c).unwrap().try_sub(d).unwrap();
    t.hit(whole == a.rows() + complement.rank(), || format!("A={a} B={b} C={c} D={d}"));
}

pub fn schur_check(config: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let mut t = Tally::default();
    let f2 = FieldSpec::gf(2);
    for n in 2..=3 {
        for r in 1..n {
            let k = n - r;
            for v in all_vectors(f2, n * n) {
                let m = Matrix::from_residues(f2, n, n, v)?;
                let head: Vec<usize> = (0..r).collect();
                let tail: Vec<usize> = (r..n).collect();
                let (a, c) = (m.select(&head, &head), m.select(&head, &tail));
                let (b, d) = (m.select(&tail, &head), m.select(&tail, &tail));
                debug_assert_eq!(d.rows(), k);
                schur_instance(&a, &b, &c, &d, &mut t);
            }
        }
    }
    for q in RANDOM_FIELDS {
        let f = FieldSpec::gf(q);
        for _ in 0..config.random_cases {
            let n = rng.gen_range(2..=MAX_RANDOM_SIZE);
            let r = rng.gen_range(1..n);
            let a = random_general(f, r, r, rng);
            let b = random_general(f, n - r, r, rng);
            let c = random_general(f, r, n - r, rng);
            // Half of the instances get a Schur complement of reduced rank.
            let d = if rng.gen_bool(0.5) {
                match a.inverse() {
                    Ok(ainv) => {
                        let low = random_general(f, n - r, 1, rng);
                        let low = low.try_mul(&random_general(f, 1, n - r, rng))?;
                        b.try_mul(&ainv)?.try_mul(&c)?.try_sub(&low)?
                    }
                    Err(_) => random_general(f, n - r, n - r, rng),
                }
            } else {
                random_general(f, n - r, n - r, rng)
            };
            schur_instance(&a, &b, &c, &d, &mut t);
        }
    }
    outcome("lemmas.schur", "schur-complement", t)
}

// ---------------------------------------------------------------------------
// Determinant lemmas.

/// Alternating `A` of size `n`, `N = [[0, C], [-C^T, 0]]`. If every
/// `A + tN` is singular then `C^T P^ad C = 0`.
pub fn alternating_determinant_instance(a: &Matrix, c: &[u8], t: &mut Tally) {
    t.case();
    let f = a.field();
    let n = a.rows();
    let dir = bordered(f, c, 0, true);
    if line_max_rank(a, &dir) == n {
        return;
    }
    let p = leading(a, n - 1);
    let value = form(&p.adjugate().unwrap(), c, c);
    t.hit(value == 0, || format!("A={a} C={c:?}"));
}

pub fn alternating_determinant_check(config: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let mut t = Tally::default();
    let f2 = FieldSpec::gf(2);
    for n in 2..=3 {
        let amb = AmbientKind::Alternating(n);
        for v in all_vectors(f2, amb.dim()) {
            let a = amb.matrix_of(f2, &v);
            for c in all_vectors(f2, n - 1) {
                alternating_determinant_instance(&a, &c, &mut t);
            }
        }
    }
    for q in RANDOM_FIELDS {
        let f = FieldSpec::gf(q);
        for _ in 0..config.random_cases {
            let n = rng.gen_range(2..=MAX_RANDOM_SIZE);
            let a = random_member(AmbientKind::Alternating(n), f, rng);
            let c = random_vec(f, n - 1, rng);
            alternating_determinant_instance(&a, &c, &mut t);
        }
    }
    outcome("lemmas.alternating-determinant", "alternating-determinant", t)
}

/// Symmetric `A`, `N = [[0, C], [C^T, a]]`, every `A + tN` singular:
/// for `q > 2`, `C^T P^ad C = 0`; in characteristic 2,
/// `C^T P^ad C = a det P`; if `C = 0` and `a != 0`, `det P = 0`.
pub fn symmetric_determinant_instance(m: &Matrix, c: &[u8], corner: u8, t: &mut Tally) {
    t.case();
    let f = m.field();
    let n = m.rows();
    let dir = bordered(f, c, corner, false);
    if line_max_rank(m, &dir) == n {
        return;
    }
    let p = leading(m, n - 1);
    let quad = form(&p.adjugate().unwrap(), c, c);
    let det_p = p.det().unwrap().value();
    let mut ok = true;
    if f.q() > 2 {
        ok &= quad == 0;
    }
    if f.is_char2() {
        ok &= quad == f.mul(corner, det_p);
    }
    if c.iter().all(|&x| x == 0) && corner != 0 {
        ok &= det_p == 0;
    }
    t.hit(ok, || format!("A={m} C={c:?} a={corner}"));
}

pub fn symmetric_determinant_check(config: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let mut t = Tally::default();
    let f2 = FieldSpec::gf(2);
    for n in 2..=3 {
        let amb = AmbientKind::Symmetric(n);
        for v in all_vectors(f2, amb.dim()) {
            let m = amb.matrix_of(f2, &v);
            for c in all_vectors(f2, n - 1) {
                for corner in 0..2 {
                    symmetric_determinant_instance(&m, &c, corner, &mut t);
                }
            }
        }
    }
    for q in [2, 3, 5] {
        let f = FieldSpec::gf(q);
        for _ in 0..config.random_cases {
            let n = rng.gen_range(2..=MAX_RANDOM_SIZE);
            let m = random_member(AmbientKind::Symmetric(n), f, rng);
            let c = if rng.gen_bool(0.25) { vec![0; n - 1] } else { random_vec(f, n - 1, rng) };
            let corner = rng.gen_range(0..f.q());
            symmetric_determinant_instance(&m, &c, corner, &mut t);
        }
    }
    outcome("lemmas.symmetric-determinant", "symmetric-determinant", t)
}

// ---------------------------------------------------------------------------
// Corner lemmas.

fn middle(a: &Matrix) -> Matrix {
    let idx: Vec<usize> = (1..a.rows() - 1).collect();
    a.select(&idx, &idx)
}

/// Alternating `A` (`n >= 3`), `N = E_{1,n} - E_{n,1}`: with `r` even,
/// `0 < r < n`, the central block has rank at most `r - 2`.
pub fn alternating_corner_instance(a: &Matrix, t: &mut Tally) {
    t.case();
    let f = a.field();
    let n = a.rows();
    let mut dir = Matrix::zeros(f, n, n);
    dir.set(0, n - 1, 1);
    dir.set(n - 1, 0, f.neg(1));
    let m = line_max_rank(a, &dir).max(2);
    let r = m + m % 2;
    if r >= n {
        return;
    }
    t.hit(middle(a).rank() + 2 <= r, || format!("A={a} r={r}"));
}

pub fn alternating_corner_check(config: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let mut t = Tally::default();
    let f2 = FieldSpec::gf(2);
    let amb = AmbientKind::Alternating(3);
    for v in all_vectors(f2, amb.dim()) {
        alternating_corner_instance(&amb.matrix_of(f2, &v), &mut t);
    }
    for q in RANDOM_FIELDS {
        let f = FieldSpec::gf(q);
        for _ in 0..config.random_cases {
            let n = rng.gen_range(3..=MAX_RANDOM_SIZE);
            alternating_corner_instance(&random_member(AmbientKind::Alternating(n), f, rng), &mut t);
        }
    }
    outcome("lemmas.alternating-corner", "alternating-corner", t)
}

/// Symmetric `A` (`n >= 3`), `N = E_{1,n} + E_{n,1} + d E_{n,n}` with
/// `q > 2` or `d = 0`: with `0 < r < n`, the central block has rank at
/// most `r - 2`.
pub fn symmetric_corner_instance(a: &Matrix, d: u8, t: &mut Tally) {
    t.case();
    let f = a.field();
    let n = a.rows();
    if f.q() == 2 && d != 0 {
        return;
    }
    let mut dir = Matrix::zeros(f, n, n);
    dir.set(0, n - 1, 1);
    dir.set(n - 1, 0, 1);
    dir.set(n - 1, n - 1, d);
    let r = line_max_rank(a, &dir).max(1);
    if r >= n {
        return;
    }
    t.hit(middle(a).rank() + 2 <= r, || format!("A={a} d={d} r={r}"));
}

pub fn symmetric_corner_check(config: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let mut t = Tally::default();
    let f2 = FieldSpec::gf(2);
    let amb = AmbientKind::Symmetric(3);
    for v in all_vectors(f2, amb.dim()) {
        let a = amb.matrix_of(f2, &v);
        for d in 0..2 {
            symmetric_corner_instance(&a, d, &mut t);
        }
    }
    for q in RANDOM_FIELDS {
        let f = FieldSpec::gf(q);
        for _ in 0..config.random_cases {
            let n = rng.gen_range(3..=MAX_RANDOM_SIZE);
            let a = random_member(AmbientKind::Symmetric(n), f, rng);
            let d = rng.gen_range(0..f.q());
            symmetric_corner_instance(&a, d, &mut t);
        }
    }
    outcome("lemmas.symmetric-corner", "symmetric-corner", t)
}

/// Symmetric `A` (`n >= 2`), `N = E_{n,n}`: with `0 < r < n`, the leading
/// `(n-1) x (n-1)` block has rank at most `r - 1`.
pub fn diagonal_corner_instance(a: &Matrix, t: &mut Tally) {
    t.case();
    let f = a.field();
    let n = a.rows();
    let r = line_max_rank(a, &Matrix::elementary(f, n, n - 1, n - 1)).max(1);
    if r >= n {
        return;
    }
    t.hit(leading(a, n - 1).rank() < r, || format!("A={a} r={r}"));
}

pub fn diagonal_corner_check(config: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let mut t = Tally::default();
    let f2 = FieldSpec::gf(2);
    for n in 2..=3 {
        let amb = AmbientKind::Symmetric(n);
        for v in all_vectors(f2, amb.dim()) {
            diagonal_corner_instance(&amb.matrix_of(f2, &v), &mut t);
        }
    }
    for q in RANDOM_FIELDS {
        let f = FieldSpec::gf(q);
        for _ in 0..config.random_cases {
            let n = rng.gen_range(2..=MAX_RANDOM_SIZE);
            diagonal_corner_instance(&random_member(AmbientKind::Symmetric(n), f, rng), &mut t);
        }
    }
    outcome("lemmas.diagonal-corner", "diagonal-corner", t)
}

/// Symmetric `M`, `i != j`, `N = E_{i,j} + E_{j,i}`, `r >= 2`: deleting
/// rows and columns `i` and `j` leaves rank at most `r - 2`. Only
/// instances with `r < n` count as hits; the rest hold by size.
pub fn extraction_instance(m: &Matrix, i: usize, j: usize, t: &mut Tally) {
    t.case();
    let f = m.field();
    let n = m.rows();
    let mut dir = Matrix::zeros(f, n, n);
    dir.set(i, j, 1);
    dir.set(j, i, 1);
    let r = line_max_rank(m, &dir).max(2);
    if r >= n {
        return;
    }
    let keep: Vec<usize> = (0..n).filter(|&k| k != i && k != j).collect();
    t.hit(m.select(&keep, &keep).rank() + 2 <= r, || format!("M={m} i={i} j={j} r={r}"));
}

pub fn extraction_check(config: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let mut t = Tally::default();
    let f2 = FieldSpec::gf(2);
    for n in 2..=3 {
        let amb = AmbientKind::Symmetric(n);
        for v in all_vectors(f2, amb.dim()) {
            let m = amb.matrix_of(f2, &v);
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        extraction_instance(&m, i, j, &mut t);
                    }
                }
            }
        }
    }
    for q in RANDOM_FIELDS {
        let f = FieldSpec::gf(q);
        for _ in 0..config.random_cases {
            let n = rng.gen_range(3..=MAX_RANDOM_SIZE);
            let m = random_member(AmbientKind::Symmetric(n), f, rng);
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            extraction_instance(&m, i, j, &mut t);
        }
    }
    outcome("lemmas.extraction", "extraction", t)
}

/// Characteristic 2: symmetric `A`, `N = [[0, C], [C^T, 1]]`, `0 < r < n`
/// gives `rk(P + C C^T) <= r - 1`.
pub fn char2_corner_instance(a: &Matrix, c: &[u8], t: &mut Tally) {
    t.case();
    let f = a.field();
    let n = a.rows();
    let r = line_max_rank(a, &bordered(f, c, 1, false)).max(1);
    if r >= n {
        return;
    }
    let col = Matrix::column(f, c);
    let shifted = leading(a, n - 1).try_add(&col.try_mul(&col.transpose()).unwrap()).unwrap();
    t.hit(shifted.rank() < r, || format!("A={a} C={c:?} r={r}"));
}

pub fn char2_corner_check(config: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let mut t = Tally::default();
    let f2 = FieldSpec::gf(2);
    for n in 2..=3 {
        let amb = AmbientKind::Symmetric(n);
        for v in all_vectors(f2, amb.dim()) {
            let a = amb.matrix_of(f2, &v);
            for c in all_vectors(f2, n - 1) {
                char2_corner_instance(&a, &c, &mut t);
            }
        }
    }
    for _ in 0..config.random_cases {
        let n = rng.gen_range(4..=MAX_RANDOM_SIZE);
        let a = random_member(AmbientKind::Symmetric(n), f2, rng);
        let c = random_vec(f2, n - 1, rng);
        char2_corner_instance(&a, &c, &mut t);
    }
    outcome("lemmas.char2-corner", "char2-corner", t)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;

    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig { random_cases: 300, ..VerifyConfig::default() }
    }

    #[test]
    fn every_lemma_check_passes_on_a_small_run() {
        let checks: [fn(&VerifyConfig, &mut ChaCha8Rng) -> Result<CheckOutcome>; 10] = [
            adjugate_check,
            rank_one_update_check,
            schur_check,
            alternating_determinant_check,
            symmetric_determinant_check,
            alternating_corner_check,
            symmetric_corner_check,
            diagonal_corner_check,
            extraction_check,
            char2_corner_check,
        ];
        for check in checks {
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let out = check(&small(), &mut rng).unwrap();
            assert!(out.passed, "{out}");
        }
    }

    #[test]
    fn random_members_stay_in_their_ambient() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = FieldSpec::gf(3);
        for _ in 0..200 {
            let s = random_member(AmbientKind::Symmetric(4), f, &mut rng);
            assert!(s.is_symmetric());
            let a = random_member(AmbientKind::Alternating(4), f, &mut rng);
            assert!(a.is_alternating());
        }
    }

    #[test]
    fn symmetric_determinant_flags_a_broken_conclusion() {
        // A nonsingular line is not a hit; a singular line with the
        // conclusion violated must be reported. Over GF(3), A = diag(1, 0)
        // with C = (1), a = 0 gives A + tN = [[1, t], [t, 0]], which is
        // invertible for t != 0, so no hit.
        let f = FieldSpec::gf(3);
        let mut t = Tally::default();
        symmetric_determinant_instance(&Matrix::from_rows(f, &[[1, 0], [0, 0]]), &[1], 0, &mut t);
        assert_eq!((t.cases, t.hits), (1, 0));
    }

    #[test]
    fn bordered_layout() {
        let f = FieldSpec::gf(5);
        assert_eq!(bordered(f, &[1, 2], 3, true), Matrix::from_rows(f, &[[0, 0, 1], [0, 0, 2], [-1, -2, 3]]));
    }
}
