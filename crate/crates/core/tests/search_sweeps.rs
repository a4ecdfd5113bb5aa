use std::time::Instant;

use boundrank::models::{dim_formula, FormulaKind};
use boundrank::search::{bounded_rank_search, count_bounded_rank};
use boundrank::{AmbientKind, Budget, FieldSpec};

/// The pruned search covers far more raw subspaces than the default budget
/// allows; these sweeps raise the space budget explicitly.
fn sweep_budget() -> Budget {
    Budget { spaces: 10_000_000_000, ..Budget::default() }
}

fn max_formula(symmetric: bool, n: usize, r: usize) -> usize {
    let (a, b) = if symmetric { (FormulaKind::S1, FormulaKind::S2) } else { (FormulaKind::A1, FormulaKind::A2) };
    dim_formula(a, n, r).unwrap().max(dim_formula(b, n, r).unwrap())
}

#[test]
fn inequality_sweeps() {
    let sym = [(2usize, 1usize, 2u32), (2, 1, 3), (3, 1, 2), (3, 2, 2), (3, 2, 3), (4, 3, 2)];
    let alt = [(3usize, 2usize, 2u32), (3, 2, 3), (4, 2, 2), (4, 2, 3), (5, 2, 2)];
    let cases = sym.iter().map(|&c| (true, c)).chain(alt.iter().map(|&c| (false, c)));
    for (symmetric, (n, r, q)) in cases {
        let start = Instant::now();
        let amb = if symmetric { AmbientKind::Symmetric(n) } else { AmbientKind::Alternating(n) };
        let f = FieldSpec::gf(q);
        let m = max_formula(symmetric, n, r);
        let (_, above) = count_bounded_rank(amb, f, r, m + 1, &sweep_budget()).unwrap();
        let (scanned, at) = count_bounded_rank(amb, f, r, m, &sweep_budget()).unwrap();
        eprintln!("{amb} r={r} q={q}: dim {m} -> {at} of {scanned}, dim {} -> {above} ({:?})", m + 1, start.elapsed());
        assert_eq!(above, 0, "{amb} r={r} q={q}");
        assert!(at > 0, "{amb} r={r} q={q}");
    }
}

#[test]
fn symmetric_gf3_equality_classes() {
    let f = FieldSpec::gf(3);
    let start = Instant::now();
    let above = bounded_rank_search(AmbientKind::Symmetric(3), f, 2, 4, false, &Budget::default()).unwrap();
    assert_eq!(above.spaces_satisfying, 0);
    let rep = bounded_rank_search(AmbientKind::Symmetric(3), f, 2, 3, true, &Budget::default()).unwrap();
    eprintln!("{:?}", start.elapsed());
    assert_eq!(rep.spaces_scanned, 914_760);
    assert_eq!(rep.class_count(), Some(2));
}
