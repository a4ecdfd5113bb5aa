use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::models::{build_in, build_model, buildable, ModelName};

fn gf(q: u32) -> FieldSpec {
    FieldSpec::gf(q)
}

fn b() -> Budget {
    Budget::default()
}

fn random_invertible(rng: &mut ChaCha8Rng, f: FieldSpec, n: usize) -> Matrix {
    loop {
        let p = Matrix::from_fn(f, n, n, |_, _| rng.gen_range(0..f.q()) as i64);
        if p.is_invertible() {
            return p;
        }
    }
}

#[test]
fn group_orders() {
    for (q, n, expect) in [(2u32, 2usize, 6usize), (2, 3, 168), (2, 4, 20160), (3, 3, 11232), (3, 2, 48), (5, 2, 480)] {
        let qq = q as usize;
        let oracle: usize = (0..n).map(|i| qq.pow(n as u32) - qq.pow(i as u32)).product();
        assert_eq!(oracle, expect);
        let g = enumerate_gl(gf(q), n, &b()).unwrap();
        assert_eq!(g.len(), expect);
        assert_eq!(gl_order(gf(q), n), expect as u128);
    }
}

#[test]
fn group_is_sorted_and_invertible() {
    let g = enumerate_gl(gf(3), 2, &b()).unwrap();
    assert!(g.windows(2).all(|w| w[0].entries() < w[1].entries()));
    assert!(g.iter().all(|p| p.is_invertible()));
    assert_eq!(g[0], Matrix::from_rows(gf(3), &[[0, 1], [1, 0]]));
}

#[test]
fn group_budget_enforced() {
    let tight = Budget { group: 100, ..Budget::default() };
    assert!(matches!(enumerate_gl(gf(2), 3, &tight), Err(Error::Capacity { needed: 168, .. })));
}

#[test]
fn profile_examples() {
    let f = gf(2);
    let y1 = invariant_profile(&build_model(ModelName::Y1, 3, f).unwrap(), &b()).unwrap();
    assert_eq!(y1.rank_distribution[1], 2);
    let y2 = invariant_profile(&build_model(ModelName::Y2, 3, f).unwrap(), &b()).unwrap();
    let y3 = invariant_profile(&build_model(ModelName::Y3, 3, f).unwrap(), &b()).unwrap();
    assert_eq!(y2.alternating_count, 2);
    assert_eq!(y3.alternating_count, 4);
    let ws = invariant_profile(&build_model(ModelName::WS(2), 3, f).unwrap(), &b()).unwrap();
    let z3 = invariant_profile(&build_model(ModelName::Z(3), 3, f).unwrap(), &b()).unwrap();
    assert_eq!(ws.alternating_count, 4);
    assert_eq!(z3.alternating_count, 2);
    for p in [&y1, &y2, &y3, &ws, &z3] {
        assert_eq!(p.rank_distribution.iter().sum::<u128>(), 8);
        assert_eq!(p.contains_zero, p.rank_distribution[0] > 0);
    }
    assert!(!y1.contains_zero && ws.contains_zero);
    let text = z3.to_lines();
    assert!(text.contains("alternating_count 2\n"));
}

#[test]
fn non_congruent_pairs() {
    let f = gf(2);
    let z3 = build_model(ModelName::Z(3), 3, f).unwrap();
    let ws = build_model(ModelName::WS(2), 3, f).unwrap();
    assert_eq!(are_congruent(&z3, &ws, &b()).unwrap(), None);
    let y2 = build_model(ModelName::Y2, 3, f).unwrap();
    let y3 = build_model(ModelName::Y3, 3, f).unwrap();
    match congruence_test(&y2, &y3, &b()).unwrap() {
        Congruence::DifferentInvariant { field, .. } => assert_eq!(field, "alternating_count"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn random_images_are_congruent() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (q, n) in [(2u32, 3usize), (2, 4), (3, 3)] {
        let f = gf(q);
        for name in buildable(n, f) {
            let s = build_model(name, n, f).unwrap();
            let p = random_invertible(&mut rng, f, n);
            let img = s.congruent_image(&p).unwrap();
            let w = are_congruent(&s, &img, &b()).unwrap().expect("congruent");
            assert_eq!(s.congruent_image(&w).unwrap(), img);
            // The inverse witnesses the reverse direction.
            let back = are_congruent(&img, &s, &b()).unwrap().expect("symmetric");
            assert_eq!(img.congruent_image(&back).unwrap(), s);
            assert_eq!(img.congruent_image(&w.inverse().unwrap()).unwrap(), s);
            assert!(are_congruent(&s, &s, &b()).unwrap().is_some());
        }
    }
}

#[test]
fn profiles_are_congruence_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for &q in &[2u32, 3, 5] {
        let f = gf(q);
        for n in 1..=4 {
            for name in buildable(n, f) {
                let s = build_model(name, n, f).unwrap();
                if s.size() > 1 << 16 {
                    continue;
                }
                let p = random_invertible(&mut rng, f, n);
                let img = s.congruent_image(&p).unwrap();
                assert_eq!(invariant_profile(&s, &b()).unwrap(), invariant_profile(&img, &b()).unwrap(), "{name}");
            }
        }
    }
}

#[test]
fn canonical_keys() {
    let f = gf(2);
    let amb = AmbientKind::Symmetric(3);
    let g = GroupAction::new(amb, f, &b()).unwrap();
    let ys: Vec<Vec<u8>> = [ModelName::Y1, ModelName::Y2, ModelName::Y3]
        .iter()
        .map(|&m| g.canonical_key(&build_model(m, 3, f).unwrap()).unwrap().0)
        .collect();
    assert!(ys[0] != ys[1] && ys[1] != ys[2] && ys[0] != ys[2]);

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for name in buildable(3, f) {
        let s = build_in(name, amb, f).unwrap();
        let p = random_invertible(&mut rng, f, 3);
        let img = s.congruent_image(&p).unwrap();
        assert_eq!(g.canonical_key(&s).unwrap().0, g.canonical_key(&img).unwrap().0);
        assert_eq!(canonical_key(&s, &b()).unwrap(), g.canonical_key(&s).unwrap().0);
    }
}

#[test]
fn keys_agree_with_congruence_tests() {
    let f = gf(2);
    let amb = AmbientKind::Symmetric(3);
    let spaces: Vec<AffineMatrixSpace> = buildable(3, f)
        .into_iter()
        .filter_map(|m| build_in(m, amb, f).ok())
        .collect();
    let g = GroupAction::new(amb, f, &b()).unwrap();
    for a in &spaces {
        for c in &spaces {
            let same_key = g.canonical_key(a).unwrap().0 == g.canonical_key(c).unwrap().0;
            assert_eq!(same_key, are_congruent(a, c, &b()).unwrap().is_some());
        }
    }
}

#[test]
fn coordinate_action_matches_matrix_action() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (amb, q) in [(AmbientKind::Symmetric(3), 3u32), (AmbientKind::Alternating(4), 5), (AmbientKind::Alternating(3), 2)] {
        let f = gf(q);
        for _ in 0..20 {
            let p = random_invertible(&mut rng, f, amb.rows());
            let gens: Vec<Vec<u8>> = (0..2).map(|_| (0..amb.dim()).map(|_| rng.gen_range(0..q) as u8).collect()).collect();
            let base: Vec<u8> = (0..amb.dim()).map(|_| rng.gen_range(0..q) as u8).collect();
            let s = AffineMatrixSpace::from_vectors(amb, f, base, gens);
            assert_eq!(CoordinateAction::new(amb, f, &p).image(&s), s.congruent_image(&p).unwrap());
        }
    }
}
