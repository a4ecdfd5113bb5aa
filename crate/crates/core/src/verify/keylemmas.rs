//! Hyperplane key lemmas on affine spaces: lower bounds on the upper-rank
//! from `m0 = min_H dim S_H`, and the adapted-hyperplane dichotomy for
//! singular symmetric spaces in characteristic 2.
//!
//! For a space with `m0` as above the bounds hold for every `s <= m0` with
//! `2s <= n`; the checks use the strongest one, `s = min(m0, n / 2)`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{CheckOutcome, Tally, VerifyConfig};
use crate::budget::Budget;
use crate::error::Result;
use crate::field::FieldSpec;
use crate::linalg;
use crate::matrix::Matrix;
use crate::models::{build_model, buildable, ModelName};
use crate::search::{enumerate_affine_subspaces, random_bounded_space};
use crate::space::{AffineMatrixSpace, AmbientKind, Hyperplane};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KeyLemmaTallies {
    pub alternating: Tally,
    pub symmetric_odd: Tally,
    pub symmetric_char2: Tally,
    pub adapted: Tally,
}

impl KeyLemmaTallies {
    fn parts(&self) -> [(&'static str, &Tally); 4] {
        [
            ("alternating", &self.alternating),
            ("symmetric-odd", &self.symmetric_odd),
            ("symmetric-char2", &self.symmetric_char2),
            ("adapted", &self.adapted),
        ]
    }

    pub fn failures(&self) -> u64 {
        self.parts().iter().map(|(_, t)| t.failures).sum()
    }

    /// No failures, and every part that saw instances had a hit.
    pub fn passed(&self) -> bool {
        self.failures() == 0 && self.parts().iter().all(|(_, t)| t.cases == 0 || t.hits > 0)
    }

    pub fn summary(&self) -> String {
        let mut s: Vec<String> =
            self.parts().iter().map(|(name, t)| format!("{name}={}/{}", t.hits, t.cases)).collect();
        s.push(format!("failures={}", self.failures()));
        if let Some(first) = self.parts().iter().find_map(|(_, t)| t.first_failure.clone()) {
            s.push(format!("first={first}"));
        }
        s.join(" ")
    }
}

/// Facts that depend only on the translation space.
#[derive(Debug, Clone)]
pub struct TranslationFacts {
    pub min_sh_dim: usize,
    /// Characteristic-2 symmetric ambients only.
    pub has_adapted: Option<bool>,
}

pub fn translation_facts(space: &AffineMatrixSpace, budget: &Budget) -> Result<TranslationFacts> {
    let t = space.translation_space();
    let (min_sh_dim, _) = t.hyperplane_scan(budget)?;
    let n = space.ambient().rows();
    let has_adapted = if matches!(space.ambient(), AmbientKind::Symmetric(_)) && space.field().is_char2() {
        let mut found = false;
        for h in Hyperplane::all(space.field(), n) {
            if t.is_adapted(&h)? {
                found = true;
                break;
            }
        }
        Some(found)
    } else {
        None
    };
    Ok(TranslationFacts { min_sh_dim, has_adapted })
}

/// Applies every key lemma whose hypotheses `space` meets.
pub fn key_lemma_instance(
    space: &AffineMatrixSpace,
    facts: &TranslationFacts,
    budget: &Budget,
    tallies: &mut KeyLemmaTallies,
) -> Result<()> {
    let f = space.field();
    let n = space.ambient().rows();
    let urk = space.upper_rank(budget)?;
    let s = facts.min_sh_dim.min(n / 2);
    let describe = || format!("urk={urk} m0={} space={}", facts.min_sh_dim, compact(space));
    match space.ambient() {
        AmbientKind::Alternating(_) => {
            tallies.alternating.case();
            if s > 0 {
                tallies.alternating.hit(urk >= 2 * s, describe);
            }
        }
        AmbientKind::Symmetric(_) if !f.is_char2() => {
            tallies.symmetric_odd.case();
            if s > 0 {
                tallies.symmetric_odd.hit(urk >= 2 * s, describe);
            }
        }
        AmbientKind::Symmetric(_) => {
            tallies.symmetric_char2.case();
            if s > 0 {
                let bound = if n > 2 * s { 2 * s } else { n - 1 };
                tallies.symmetric_char2.hit(urk >= bound, describe);
            }
            tallies.adapted.case();
            if n >= 2 && urk < n {
                let is_alt = n % 2 == 1 && *space == alternating_as_symmetric(n, f)?;
                let ok = is_alt || facts.has_adapted == Some(true);
                tallies.adapted.hit(ok, describe);
            }
        }
        AmbientKind::Full { .. } => {}
    }
    Ok(())
}

fn alternating_as_symmetric(n: usize, f: FieldSpec) -> Result<AffineMatrixSpace> {
    AffineMatrixSpace::full(AmbientKind::Alternating(n), f).reinterpret(AmbientKind::Symmetric(n))
}

fn compact(space: &AffineMatrixSpace) -> String {
    crate::space::format::to_text(space).split_whitespace().collect()
}

/// Every affine subspace of `ambient` over `field`, all dimensions. Cosets
/// of one translation space come out consecutively, so its facts are
/// computed once.
pub fn exhaustive_key_lemmas(
    ambient: AmbientKind,
    field: FieldSpec,
    budget: &Budget,
    tallies: &mut KeyLemmaTallies,
) -> Result<()> {
    for dim in 0..=ambient.dim() {
        let mut cached: Option<(Vec<Vec<u8>>, TranslationFacts)> = None;
        for space in enumerate_affine_subspaces(ambient, field, dim, budget)? {
            let fresh = match &cached {
                Some((basis, _)) => basis.as_slice() != space.basis_vectors(),
                None => true,
            };
            if fresh {
                cached = Some((space.basis_vectors().to_vec(), translation_facts(&space, budget)?));
            }
            let facts = &cached.as_ref().expect("filled above").1;
            key_lemma_instance(&space, facts, budget, tallies)?;
        }
    }
    Ok(())
}

/// Symmetric and alternating ambients for `n <= 3` over `GF(2)` and `GF(3)`.
pub fn exhaustive_check(config: &VerifyConfig, _rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let mut tallies = KeyLemmaTallies::default();
    for q in [2, 3] {
        let f = FieldSpec::gf(q);
        for n in 1..=3 {
            for amb in [AmbientKind::Symmetric(n), AmbientKind::Alternating(n)] {
                exhaustive_key_lemmas(amb, f, &config.budget, &mut tallies)?;
            }
        }
    }
    Ok(CheckOutcome::new("keylemmas.exhaustive", "hyperplane-key-lemmas", tallies.passed(), tallies.summary()))
}

/// A random affine subspace of a random congruent image of a singular
/// model in `ambient`.
pub fn random_model_subspace(ambient: AmbientKind, field: FieldSpec, rng: &mut ChaCha8Rng) -> Result<AffineMatrixSpace> {
    let n = ambient.rows();
    let models: Vec<ModelName> = buildable(n, field)
        .into_iter()
        .filter(|m| m.ambient(n) == ambient && (1..n).contains(&m.stated_upper_rank()))
        .collect();
    let model = build_model(models[rng.gen_range(0..models.len())], n, field)?;
    let p = loop {
        let entries: Vec<u8> = (0..n * n).map(|_| rng.gen_range(0..field.q())).collect();
        let p = Matrix::from_residues(field, n, n, entries)?;
        if p.is_invertible() {
            break p;
        }
    };
    let image = model.congruent_image(&p)?;
    let coeffs = |rng: &mut ChaCha8Rng| -> Vec<u8> { (0..image.dim()).map(|_| rng.gen_range(0..field.q())).collect() };
    let len = image.base_vector().len();
    let base_dir = linalg::combine(field, &coeffs(rng), image.basis_vectors(), len);
    let base: Vec<u8> = base_dir.iter().zip(image.base_vector()).map(|(&a, &b)| field.add(a, b)).collect();
    // Full-dimensional images carry the hyperplane structure; keep them
    // frequent.
    let k = if rng.gen_bool(0.5) { image.dim() } else { rng.gen_range(0..=image.dim()) };
    let gens: Vec<Vec<u8>> = (0..k).map(|_| linalg::combine(field, &coeffs(rng), image.basis_vectors(), len)).collect();
    Ok(AffineMatrixSpace::from_vectors(ambient, field, base, gens))
}

/// Random singular spaces in `Sym_4(GF(2))` and `Alt_4(GF(2))`: half grown
/// greedily under a rank bound, half cut from congruent images of models.
pub fn random_key_lemmas(
    count: usize,
    budget: &Budget,
    rng: &mut ChaCha8Rng,
    tallies: &mut KeyLemmaTallies,
) -> Result<()> {
    let f = FieldSpec::gf(2);
    for amb in [AmbientKind::Symmetric(4), AmbientKind::Alternating(4)] {
        for _ in 0..count {
            let r = match amb {
                AmbientKind::Alternating(_) => 2,
                _ => rng.gen_range(1..=3),
            };
            let space = if rng.gen_bool(0.5) {
                random_bounded_space(amb, f, r, rng.gen_range(2..=7), 256, rng)?
            } else {
                random_model_subspace(amb, f, rng)?
            };
            let facts = translation_facts(&space, budget)?;
            key_lemma_instance(&space, &facts, budget, tallies)?;
        }
    }
    Ok(())
}

pub fn random_check(config: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let mut tallies = KeyLemmaTallies::default();
    random_key_lemmas(config.random_spaces, &config.budget, rng, &mut tallies)?;
    Ok(CheckOutcome::new("keylemmas.random", "hyperplane-key-lemmas", tallies.passed(), tallies.summary()))
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;

    use super::*;

    #[test]
    fn alternating_three_is_the_exception() {
        // Alt_3 inside Sym_3(GF(2)) has no adapted hyperplane, yet the
        // dichotomy holds through its first branch.
        let f = FieldSpec::gf(2);
        let s = alternating_as_symmetric(3, f).unwrap();
        let facts = translation_facts(&s, &Budget::default()).unwrap();
        assert_eq!(facts.has_adapted, Some(false));
        assert_eq!(facts.min_sh_dim, 2);
        let mut t = KeyLemmaTallies::default();
        key_lemma_instance(&s, &facts, &Budget::default(), &mut t).unwrap();
        assert_eq!((t.adapted.hits, t.adapted.failures), (1, 0));
    }

    #[test]
    fn sym2_over_gf2_meets_the_even_size_variant() {
        let f = FieldSpec::gf(2);
        let mut t = KeyLemmaTallies::default();
        exhaustive_key_lemmas(AmbientKind::Symmetric(2), f, &Budget::default(), &mut t).unwrap();
        assert!(t.passed(), "{}", t.summary());
        assert!(t.symmetric_char2.hits > 0);
        assert!(t.adapted.hits > 0);
    }

    #[test]
    fn small_exhaustive_runs_pass() {
        for q in [2, 3] {
            let f = FieldSpec::gf(q);
            let mut t = KeyLemmaTallies::default();
            for amb in [AmbientKind::Alternating(3), AmbientKind::Symmetric(2)] {
                exhaustive_key_lemmas(amb, f, &Budget::default(), &mut t).unwrap();
            }
            assert!(t.passed(), "{}", t.summary());
        }
    }

    #[test]
    fn random_run_passes() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut t = KeyLemmaTallies::default();
        random_key_lemmas(150, &Budget::default(), &mut rng, &mut t).unwrap();
        assert!(t.passed(), "{}", t.summary());
        assert!(t.adapted.hits > 0 && t.alternating.hits > 0);
    }

    #[test]
    fn models_meet_the_bounds() {
        let f = FieldSpec::gf(2);
        let mut t = KeyLemmaTallies::default();
        for name in [ModelName::WS(2), ModelName::Z(3), ModelName::Y1, ModelName::Y2, ModelName::Y3] {
            let s = build_model(name, 3, f).unwrap();
            let facts = translation_facts(&s, &Budget::default()).unwrap();
            key_lemma_instance(&s, &facts, &Budget::default(), &mut t).unwrap();
        }
        assert_eq!(t.failures(), 0, "{}", t.summary());
    }
}
