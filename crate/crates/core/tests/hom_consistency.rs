//! Randomized cross-checks of the morphism-space engine: the
//! component-based fast path must agree with the full morphism complex,
//! and both must respect shifting, the Euler form, and cone triangles.

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gentle_core::complex::cone;
use gentle_core::derived::euler_pairing;
use gentle_core::field::Rationals;
use gentle_core::hom::{closed_degree_zero_maps, euler_of_profile, hom_profile};
use gentle_core::path::Algebra;
use gentle_core::quiver::GentlePresentation;
use gentle_core::scenario::{
    three_vertex_mixed_presentation, three_vertex_presentation, two_vertex_allzero_presentation,
    two_vertex_presentation,
};
use gentle_core::word::{string_hom_fast, Letter, StringWord};

fn graded_presentations() -> Vec<GentlePresentation> {
    vec![
        three_vertex_presentation(),
        three_vertex_mixed_presentation(),
        two_vertex_presentation(),
        two_vertex_allzero_presentation(),
    ]
}

/// Grows a word letter by letter, keeping only extensions that stay
/// valid. Stalls fall back to whatever has been built so far, so every
/// call returns a valid word (possibly a bare stalk).
fn random_word(alg: &Algebra, rng: &mut ChaCha8Rng, max_letters: usize) -> StringWord {
    let nontrivial: Vec<usize> = alg
        .path_ids()
        .filter(|&p| !alg.path(p).is_trivial())
        .collect();
    let mut w = StringWord::stalk(rng.gen_range(0..alg.num_vertices()), rng.gen_range(-2..=2));
    if nontrivial.is_empty() {
        return w;
    }
    let target = rng.gen_range(0..=max_letters);
    let mut stalls = 0;
    while w.letters.len() < target && stalls < 40 {
        let mut candidate = w.clone();
        candidate.letters.push(Letter {
            path: nontrivial[rng.gen_range(0..nontrivial.len())],
            forward: rng.gen_bool(0.5),
        });
        if candidate.validate(alg).is_ok() {
            w = candidate;
            stalls = 0;
        } else {
            stalls += 1;
        }
    }
    w
}

#[test]
fn fast_profiles_match_the_full_morphism_complex() {
    let mut checked = 0usize;
    for (salt, pres) in graded_presentations().into_iter().enumerate() {
        let alg = Algebra::new(pres).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE + salt as u64);
        for _ in 0..60 {
            let x = random_word(&alg, &mut rng, 8);
            let y = random_word(&alg, &mut rng, 8);
            let fast = string_hom_fast(&alg, &x, &y).unwrap();
            let full = hom_profile(&Rationals, &alg, &x.to_complex(&alg), &y.to_complex(&alg));
            assert_eq!(fast, full, "disagreement on x = {x:?}, y = {y:?}");
            checked += 1;
        }
    }
    assert!(checked >= 200, "only {checked} pairs were exercised");
}

#[test]
fn euler_pairing_matches_cohomology_alternating_sums() {
    for (salt, pres) in graded_presentations().into_iter().enumerate() {
        let alg = Algebra::new(pres).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0xBEEF + salt as u64);
        for _ in 0..25 {
            let x = random_word(&alg, &mut rng, 6);
            let y = random_word(&alg, &mut rng, 6);
            let profile = string_hom_fast(&alg, &x, &y).unwrap();
            let xc = x.to_complex(&alg);
            let yc = y.to_complex(&alg);
            assert_eq!(
                euler_of_profile(&profile),
                euler_pairing(&alg, &xc, &yc),
                "pairing disagreement on x = {x:?}, y = {y:?}"
            );
        }
    }
}

#[test]
fn cones_split_euler_characteristics_additively() {
    let mut cones_probed = 0usize;
    for (salt, pres) in graded_presentations().into_iter().enumerate() {
        let alg = Algebra::new(pres).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0xD1CE + salt as u64);
        for _ in 0..20 {
            let x = random_word(&alg, &mut rng, 4).to_complex(&alg);
            let y = random_word(&alg, &mut rng, 4).to_complex(&alg);
            let Some(f) = closed_degree_zero_maps(&alg, &x, &y).into_iter().next() else {
                continue;
            };
            let c = cone(&alg, &x, &y, &f).unwrap();
            let z = random_word(&alg, &mut rng, 4).to_complex(&alg);
            let chi = |a, b| euler_of_profile(&hom_profile(&Rationals, &alg, a, b));
            assert_eq!(chi(&z, &c), chi(&z, &y) - chi(&z, &x));
            assert_eq!(chi(&c, &z), chi(&y, &z) - chi(&x, &z));
            cones_probed += 1;
        }
    }
    assert!(cones_probed >= 8, "only {cones_probed} cones were probed");
}

#[test]
fn degreewise_support_stays_within_the_shift_spreads_for_zero_gradings() {
    // Only gradings with every arrow in degree zero confine morphism
    // degrees to the window spanned by the node shifts.
    for (salt, pres) in [
        three_vertex_presentation(),
        two_vertex_allzero_presentation(),
    ]
    .into_iter()
    .enumerate()
    {
        let alg = Algebra::new(pres).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0xF00D + salt as u64);
        for _ in 0..40 {
            let x = random_word(&alg, &mut rng, 8);
            let y = random_word(&alg, &mut rng, 8);
            let profile = string_hom_fast(&alg, &x, &y).unwrap();
            if profile.is_empty() {
                continue;
            }
            let spread = |w: &StringWord| {
                let shifts = w.node_shifts(&alg);
                shifts.iter().max().unwrap() - shifts.iter().min().unwrap()
            };
            let lo = *profile.keys().next().unwrap();
            let hi = *profile.keys().next_back().unwrap();
            assert!(
                hi - lo <= spread(&x) + spread(&y),
                "support {lo}..{hi} too wide for x = {x:?}, y = {y:?}"
            );
        }
    }
}

#[test]
fn cone_of_a_doubled_arrow_realizes_the_arrow_word() {
    use gentle_core::complex::TwistedComplex;
    use gentle_core::word::parse_word;

    let alg = Algebra::new(three_vertex_presentation()).unwrap();
    let a1 = alg.arrow_path(alg.presentation().quiver.arrow_id("a1").unwrap());

    // Gluing P1[-1] -> P2[-1] along the arrow plants the word complex
    // exactly, summands and signs included.
    let x = TwistedComplex::stalk(0, -1);
    let y = TwistedComplex::stalk(1, -1);
    let f = BTreeMap::from([((0, 0), vec![(a1, 1)])]);
    let c = cone(&alg, &x, &y, &f).unwrap();
    let gamma = parse_word(&alg, "a1+ @0").unwrap().to_complex(&alg);
    assert_eq!(c, gamma);
    assert_eq!(c.k0_class(&alg), vec![1, -1, 0]);

    // At other base shifts the cone is only isomorphic, not identical;
    // endomorphism profiles agree.
    for k in [-2i64, 0, 1] {
        let x = TwistedComplex::stalk(0, k);
        let y = TwistedComplex::stalk(1, k);
        let f = BTreeMap::from([((0, 0), vec![(a1, 1)])]);
        let c = cone(&alg, &x, &y, &f).unwrap();
        assert_eq!(
            hom_profile(&Rationals, &alg, &c, &c),
            hom_profile(&Rationals, &alg, &gamma, &gamma)
        );
    }
}

/// Builds a random gentle presentation by sprinkling arrows under the
/// two-in/two-out cap and then choosing, at every vertex, which of the
/// possible compositions are forbidden — locally and independently, the
/// only freedom gentleness leaves.
fn random_gentle(rng: &mut ChaCha8Rng) -> Option<GentlePresentation> {
    let n = rng.gen_range(2..=4usize);
    let vertex_names: Vec<String> = (1..=n).map(|v| v.to_string()).collect();
    let mut arrows: Vec<(String, usize, usize, i64)> = Vec::new();
    let mut out_count = vec![0usize; n];
    let mut in_count = vec![0usize; n];
    for i in 0..rng.gen_range(1..=5usize) {
        let s = rng.gen_range(0..n);
        let t = rng.gen_range(0..n);
        if out_count[s] >= 2 || in_count[t] >= 2 {
            continue;
        }
        out_count[s] += 1;
        in_count[t] += 1;
        arrows.push((format!("f{i}"), s, t, rng.gen_range(-1..=2)));
    }
    if arrows.is_empty() {
        return None;
    }

    let mut relations: Vec<(String, String)> = Vec::new();
    for v in 0..n {
        let ins: Vec<usize> = (0..arrows.len()).filter(|&i| arrows[i].2 == v).collect();
        let outs: Vec<usize> = (0..arrows.len()).filter(|&i| arrows[i].1 == v).collect();
        match (ins.len(), outs.len()) {
            (0, _) | (_, 0) => {}
            (1, 1) => {
                if rng.gen_bool(0.5) {
                    relations.push((arrows[ins[0]].0.clone(), arrows[outs[0]].0.clone()));
                }
            }
            (1, 2) => {
                // One forbidden continuation, one allowed.
                let g = outs[rng.gen_range(0..2)];
                relations.push((arrows[ins[0]].0.clone(), arrows[g].0.clone()));
            }
            (2, 1) => {
                let f = ins[rng.gen_range(0..2)];
                relations.push((arrows[f].0.clone(), arrows[outs[0]].0.clone()));
            }
            (2, 2) => {
                // Forbid a perfect matching; its complement stays allowed.
                let flip = rng.gen_bool(0.5) as usize;
                relations.push((arrows[ins[0]].0.clone(), arrows[outs[flip]].0.clone()));
                relations.push((arrows[ins[1]].0.clone(), arrows[outs[1 - flip]].0.clone()));
            }
            _ => unreachable!("in/out counts are capped at two"),
        }
    }

    let vertex_refs: Vec<&str> = vertex_names.iter().map(|s| s.as_str()).collect();
    let arrow_decls: Vec<(&str, &str, &str, i64)> = arrows
        .iter()
        .map(|(name, s, t, d)| (name.as_str(), vertex_refs[*s], vertex_refs[*t], *d))
        .collect();
    let relation_decls: Vec<(&str, &str)> = relations
        .iter()
        .map(|(f, g)| (f.as_str(), g.as_str()))
        .collect();
    GentlePresentation::from_names(&vertex_refs, &arrow_decls, &relation_decls).ok()
}

#[test]
fn fast_profiles_match_the_oracle_on_random_presentations() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    let mut sampled = 0usize;
    let mut attempts = 0usize;
    while sampled < 12 && attempts < 400 {
        attempts += 1;
        let Some(pres) = random_gentle(&mut rng) else {
            continue;
        };
        let Ok(alg) = Algebra::new(pres) else {
            // Arrow cycles that never meet a relation make the path
            // algebra infinite-dimensional; skip those draws.
            continue;
        };
        sampled += 1;
        for _ in 0..4 {
            let x = random_word(&alg, &mut rng, 6);
            let y = random_word(&alg, &mut rng, 6);
            let fast = string_hom_fast(&alg, &x, &y).unwrap();
            let full = hom_profile(&Rationals, &alg, &x.to_complex(&alg), &y.to_complex(&alg));
            assert_eq!(fast, full, "disagreement on x = {x:?}, y = {y:?}");
        }
    }
    assert!(sampled >= 12, "only {sampled} presentations sampled");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Shifting source and target slides every morphism degree by the
    /// difference of the two shifts, and nothing else changes.
    #[test]
    fn shifting_slides_profiles(seed in any::<u64>(), m in -3i64..=3, n in -3i64..=3) {
        for pres in graded_presentations() {
            let alg = Algebra::new(pres).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_word(&alg, &mut rng, 5);
            let y = random_word(&alg, &mut rng, 5);
            let base = string_hom_fast(&alg, &x, &y).unwrap();
            let slid: BTreeMap<i64, usize> =
                base.iter().map(|(&d, &c)| (d + m - n, c)).collect();
            let shifted = string_hom_fast(&alg, &x.shifted(m), &y.shifted(n)).unwrap();
            prop_assert_eq!(shifted, slid);
        }
    }
}
