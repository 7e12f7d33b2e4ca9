//! Acceptance gate for the toolkit: nine checks, one test each, every
//! one printing a single PASS line on success. Each check carries a
//! wall-clock budget asserted in debug mode, so regressions in the
//! algorithms fail loudly here rather than slowing callers quietly.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gentle_core::complex::cone;
use gentle_core::derived::{
    check_exceptional_collection, euler_pairing, exceptional_search, generates, is_exceptional,
    silting_search, GeneratesOutcome,
};
use gentle_core::field::Rationals;
use gentle_core::hom::{closed_degree_zero_maps, euler_of_profile, hom_profile};
use gentle_core::path::Algebra;
use gentle_core::quiver::GentlePresentation;
use gentle_core::scenario::{
    naive_dimension, scenarios, three_vertex_mixed_presentation, three_vertex_presentation,
    two_vertex_allzero_presentation, two_vertex_presentation,
};
use gentle_core::surface::{algebra_to_surface_invariants, arc_system_to_algebra, genus_family};
use gentle_core::twist::{grading_invariant, CyclicWalk};
use gentle_core::word::{parse_word, string_hom_fast, Letter, StringWord};

fn pass(what: &str, started: Instant, budget: Duration) {
    let took = started.elapsed();
    assert!(
        took <= budget,
        "budget exceeded: {what} took {took:?}, allowed {budget:?}"
    );
    println!("PASS {what} ({took:?})");
}

fn algebra(pres: GentlePresentation) -> Algebra {
    Algebra::new(pres).expect("built-in presentation is finite dimensional")
}

fn both_three_vertex() -> Vec<Algebra> {
    vec![
        algebra(three_vertex_presentation()),
        algebra(three_vertex_mixed_presentation()),
    ]
}

#[test]
fn acceptance_01_dimensions_match_the_counting_oracle() {
    let t = Instant::now();
    assert_eq!(algebra(three_vertex_presentation()).dimension(), 9);
    assert_eq!(algebra(three_vertex_mixed_presentation()).dimension(), 9);
    assert_eq!(algebra(two_vertex_presentation()).dimension(), 8);
    assert_eq!(algebra(two_vertex_allzero_presentation()).dimension(), 8);
    for s in scenarios() {
        let alg = algebra(s.presentation.clone());
        assert_eq!(
            naive_dimension(&s.presentation, 64),
            Some(alg.dimension()),
            "oracle disagrees on {}",
            s.name
        );
    }
    pass(
        "algebra dimensions are 9 and 8 and agree with brute-force path counting",
        t,
        Duration::from_secs(5),
    );
}

#[test]
fn acceptance_02_projectives_form_a_generating_exceptional_collection() {
    let t = Instant::now();
    for alg in both_three_vertex() {
        let stalks: Vec<StringWord> = (0..3).map(|v| StringWord::stalk(v, 0)).collect();
        assert_eq!(check_exceptional_collection(&alg, &stalks), Ok(()));
        let objs: Vec<_> = stalks.iter().map(|w| w.to_complex(&alg)).collect();
        match generates(&alg, &objs, 0).unwrap() {
            GeneratesOutcome::Yes { log } => assert_eq!(log.len(), 3),
            other => panic!("projectives must generate at depth 0, got {other:?}"),
        }
    }
    pass(
        "the three projectives are an exceptional collection and generate at depth 0 in both gradings",
        t,
        Duration::from_secs(5),
    );
}

#[test]
fn acceptance_03_staircase_word_is_exceptional_in_both_gradings() {
    let t = Instant::now();
    for alg in both_three_vertex() {
        let xp = parse_word(&alg, "b1+ a2+ @0").unwrap();
        assert!(is_exceptional(&alg, &xp).unwrap());
        let end = string_hom_fast(&alg, &xp, &xp).unwrap();
        assert_eq!(end, BTreeMap::from([(0, 1)]));
    }
    pass(
        "the staircase word has scalar endomorphisms and no self-extensions in both gradings",
        t,
        Duration::from_secs(5),
    );
}

#[test]
fn acceptance_04_arrow_word_ext_algebra_matches_the_regraded_two_vertex_quiver() {
    let t = Instant::now();
    for alg in both_three_vertex() {
        let xp = parse_word(&alg, "b1+ a2+ @0").unwrap();
        let gammas = [
            parse_word(&alg, "a1+ @0").unwrap(),
            parse_word(&alg, "a2+ @0").unwrap(),
        ];

        // Nothing maps out of the staircase into the arrow words.
        for g in &gammas {
            assert!(string_hom_fast(&alg, &xp, g).unwrap().is_empty());
        }

        // The four hom corners between the arrow words...
        let mut corners = BTreeMap::new();
        let mut total = 0usize;
        for (i, gi) in gammas.iter().enumerate() {
            for (j, gj) in gammas.iter().enumerate() {
                let p = string_hom_fast(&alg, gi, gj).unwrap();
                total += p.values().sum::<usize>();
                corners.insert((i, j), p);
            }
        }
        assert_eq!(total, 8, "ext algebra of the arrow words has dimension 8");

        // ...equal path spaces of the two-vertex quiver regraded through
        // the degree dictionary, composed with the vertex swap.
        let q = &alg.presentation().quiver;
        let deg = |n: &str| q.arrows[q.arrow_id(n).unwrap()].degree;
        let mut pres = two_vertex_presentation();
        assert!(pres.quiver.set_degree("a", deg("b2") + deg("a1") - deg("a2")));
        assert!(pres.quiver.set_degree("b", 1 - deg("a1")));
        assert!(pres.quiver.set_degree("c", deg("b1")));
        let alg2 = algebra(pres);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(
                    corners[&(i, j)],
                    alg2.hom_projective_profile(1 - j, 1 - i),
                    "corner ({i}, {j}) disagrees with the dictionary"
                );
            }
        }
    }
    pass(
        "staircase-to-arrow homs vanish and the arrow-word ext algebra matches the regraded two-vertex quiver",
        t,
        Duration::from_secs(10),
    );
}

#[test]
fn acceptance_05_bounded_searches_find_no_forbidden_exceptional_words() {
    let t = Instant::now();
    for pres in [two_vertex_presentation(), two_vertex_allzero_presentation()] {
        let alg = algebra(pres);
        let report = exceptional_search(&alg, 8, 3, None).unwrap();
        assert!(report.words_enumerated > 10_000);
        assert!(
            report.witnesses.is_empty(),
            "unexpected exceptional word: {:?}",
            report.witnesses
        );
    }
    let alg = algebra(three_vertex_presentation());
    let xp = parse_word(&alg, "b1+ a2+ @0").unwrap();
    let report = exceptional_search(&alg, 8, 3, Some(&xp)).unwrap();
    assert!(report.words_enumerated > 1_000);
    assert!(
        report.witnesses.is_empty(),
        "unexpected exceptional word orthogonal to the staircase: {:?}",
        report.witnesses
    );
    pass(
        "no exceptional words on the two-vertex quiver, none right-orthogonal to the staircase, within 8 letters and offset 3",
        t,
        Duration::from_secs(300),
    );
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn acceptance_06_boundary_twists_separate_gradings_by_their_gcd() {
    let t = Instant::now();
    let boundary_walks = |alg: &Algebra| {
        vec![
            CyclicWalk::from_names(alg, &[("a", true), ("b", true)]).unwrap(),
            CyclicWalk::from_names(alg, &[("c", true), ("b", true)]).unwrap(),
        ]
    };

    let std_alg = algebra(two_vertex_presentation());
    assert_eq!(grading_invariant(&std_alg, &boundary_walks(&std_alg)), Ok(0));
    let zero_alg = algebra(two_vertex_allzero_presentation());
    assert_eq!(grading_invariant(&zero_alg, &boundary_walks(&zero_alg)), Ok(1));

    // Whole grid of gradings: the two boundary twists are 1-|a|-|b| and
    // 1-|b|-|c|, and the invariant is the gcd of their absolute values.
    for da in -2..=2i64 {
        for db in -2..=2i64 {
            for dc in -2..=2i64 {
                let mut pres = two_vertex_presentation();
                assert!(pres.quiver.set_degree("a", da));
                assert!(pres.quiver.set_degree("b", db));
                assert!(pres.quiver.set_degree("c", dc));
                let alg = algebra(pres);
                let expected = gcd((1 - da - db).unsigned_abs(), (1 - db - dc).unsigned_abs());
                assert_eq!(
                    grading_invariant(&alg, &boundary_walks(&alg)),
                    Ok(expected),
                    "grid point ({da}, {db}, {dc})"
                );
            }
        }
    }
    pass(
        "boundary twist gcd is 0 for the standard grading, 1 for the zero grading, and follows the formula on a 125-point grid",
        t,
        Duration::from_secs(10),
    );
}

#[test]
fn acceptance_07_silting_dichotomy_on_the_two_vertex_quiver() {
    let t = Instant::now();
    let std_report = silting_search(&algebra(two_vertex_presentation()), 6, 3, 4).unwrap();
    assert!(
        std_report.witnesses.is_empty(),
        "standard grading admits no two-term silting pair here: {:?}",
        std_report.witnesses
    );
    assert_eq!(
        std_report.candidates_examined, 0,
        "every word already fails the presilting prefilter"
    );

    let zero_report = silting_search(&algebra(two_vertex_allzero_presentation()), 6, 3, 4).unwrap();
    assert!(
        zero_report
            .witnesses
            .iter()
            .any(|w| w == "e(1) @0 \u{2295} e(2) @0"),
        "zero grading must recover the projective generator pair, got {:?}",
        zero_report.witnesses
    );
    pass(
        "silting search is empty under the standard grading and recovers the projectives under the zero grading",
        t,
        Duration::from_secs(600),
    );
}

#[test]
fn acceptance_08_surface_invariants_of_the_three_models() {
    let t = Instant::now();
    let summarize = |alg: &Algebra| {
        let s = algebra_to_surface_invariants(alg).unwrap();
        (
            s.genus,
            s.boundary_components,
            s.marked_per_boundary,
            s.euler_characteristic,
        )
    };
    assert_eq!(
        summarize(&algebra(three_vertex_presentation())),
        (1, 1, vec![2], -1)
    );
    assert_eq!(
        summarize(&algebra(two_vertex_presentation())),
        (1, 1, vec![1], -1)
    );

    let sys = genus_family(2, 2).unwrap();
    let declared = sys.invariants().unwrap();
    assert_eq!(
        (
            declared.genus,
            declared.boundary_components,
            declared.marked_per_boundary.clone(),
            declared.euler_characteristic
        ),
        (2, 1, vec![2], -3)
    );
    let reconstructed = summarize(&algebra(arc_system_to_algebra(&sys).unwrap()));
    assert_eq!(reconstructed, (2, 1, vec![2], -3));
    pass(
        "surface invariants: genus-1 disks with 2 and 1 marked points, and the genus-2 model round-trips",
        t,
        Duration::from_secs(5),
    );
}

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
fn acceptance_09_randomized_cross_checks_and_reproducible_reports() {
    let t = Instant::now();
    let presentations = [
        three_vertex_presentation(),
        three_vertex_mixed_presentation(),
        two_vertex_presentation(),
        two_vertex_allzero_presentation(),
    ];

    // Fast word homs against the full morphism complex, Euler pairings,
    // and the shift rule, over every built-in grading.
    let mut profile_checks = 0usize;
    for (salt, pres) in presentations.iter().enumerate() {
        let alg = algebra(pres.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE97 + salt as u64);
        for _ in 0..60 {
            let x = random_word(&alg, &mut rng, 8);
            let y = random_word(&alg, &mut rng, 8);
            let fast = string_hom_fast(&alg, &x, &y).unwrap();
            let xc = x.to_complex(&alg);
            let yc = y.to_complex(&alg);
            assert_eq!(fast, hom_profile(&Rationals, &alg, &xc, &yc));
            assert_eq!(euler_of_profile(&fast), euler_pairing(&alg, &xc, &yc));

            let (m, n) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
            let slid = string_hom_fast(&alg, &x.shifted(m), &y.shifted(n)).unwrap();
            let expected: BTreeMap<i64, usize> =
                fast.iter().map(|(&d, &c)| (d + m - n, c)).collect();
            assert_eq!(slid, expected, "shift rule failed for m={m}, n={n}");
            profile_checks += 1;
        }
    }
    assert!(profile_checks >= 200);

    // Cones split Euler characteristics on both sides.
    let mut cones_built = 0usize;
    for (salt, pres) in presentations.iter().enumerate() {
        let alg = algebra(pres.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED + salt as u64);
        for _ in 0..15 {
            let x = random_word(&alg, &mut rng, 5).to_complex(&alg);
            let y = random_word(&alg, &mut rng, 5).to_complex(&alg);
            let Some(f) = closed_degree_zero_maps(&alg, &x, &y).into_iter().next() else {
                continue;
            };
            let c = cone(&alg, &x, &y, &f).unwrap();
            let z = random_word(&alg, &mut rng, 4).to_complex(&alg);
            let chi = |a, b| euler_of_profile(&hom_profile(&Rationals, &alg, a, b));
            assert_eq!(chi(&z, &c), chi(&z, &y) - chi(&z, &x));
            assert_eq!(chi(&c, &z), chi(&y, &z) - chi(&x, &z));
            cones_built += 1;
        }
    }
    assert!(cones_built >= 8, "only built {cones_built} cones");

    // Search reports are deterministic in-process and byte-identical
    // through the CLI.
    let alg = algebra(three_vertex_presentation());
    let first = exceptional_search(&alg, 3, 2, None).unwrap();
    let second = exceptional_search(&alg, 3, 2, None).unwrap();
    assert_eq!(first, second);

    let run = || {
        Command::new(env!("CARGO_BIN_EXE_gentle"))
            .args([
                "search",
                "--scenario",
                "three-vertex-standard",
                "--kind",
                "exceptional",
                "--max-letters",
                "3",
                "--max-offset",
                "2",
                "--format",
                "machine",
            ])
            .output()
            .expect("spawn gentle")
    };
    let (a, b) = (run(), run());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "machine reports must be byte-identical");

    pass(
        "240 random hom profiles match the full morphism complex, Euler and shift rules hold, cones split Euler characteristics, and search reports are byte-stable",
        t,
        Duration::from_secs(300),
    );
}
