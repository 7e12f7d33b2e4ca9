//! The interned path basis must agree with the deliberately naive
//! brute-force enumerator on the built-in presentations and on a spread of
//! small hand-made ones.

use std::collections::BTreeMap;

use gentle_core::path::{Algebra, AlgebraError};
use gentle_core::quiver::GentlePresentation;
use gentle_core::scenario::{naive_dimension, three_vertex_presentation, two_vertex_presentation};

#[test]
fn builtin_dimensions_match_brute_force() {
    for (pres, expected) in [
        (three_vertex_presentation(), 9),
        (two_vertex_presentation(), 8),
    ] {
        assert_eq!(naive_dimension(&pres, 64), Some(expected));
        let alg = Algebra::new(pres).unwrap();
        assert_eq!(alg.dimension(), expected);
    }
}

#[test]
fn projective_hom_spaces_of_three_vertex_example() {
    let alg = Algebra::new(three_vertex_presentation()).unwrap();
    let v1 = alg.presentation().quiver.vertex_id("1").unwrap();
    let v3 = alg.presentation().quiver.vertex_id("3").unwrap();
    // Exactly the two surviving length-two paths, both in degree zero.
    assert_eq!(
        alg.hom_projective_profile(v1, v3),
        BTreeMap::from([(0, 2)])
    );
    let names: Vec<String> = alg
        .paths_between(v1, v3)
        .iter()
        .map(|&p| alg.path_name(p))
        .collect();
    assert_eq!(names, vec!["a1*a2".to_string(), "b1*b2".to_string()]);
}

#[test]
fn two_vertex_example_basis_names() {
    let alg = Algebra::new(two_vertex_presentation()).unwrap();
    let mut names: Vec<String> = alg.path_ids().map(|p| alg.path_name(p)).collect();
    names.sort();
    assert_eq!(
        names,
        ["a", "a*b", "a*b*c", "b", "b*c", "c", "e(1)", "e(2)"]
    );
}

#[test]
fn assorted_small_presentations_match_brute_force() {
    // (vertices, arrows, relations) triples chosen to hit different shapes:
    // linear, branching, cyclic-with-relations.
    let cases: Vec<GentlePresentation> = vec![
        GentlePresentation::from_names(
            &["1", "2", "3", "4"],
            &[("p", "1", "2", 0), ("q", "2", "3", 1), ("r", "3", "4", -1)],
            &[("p", "q")],
        )
        .unwrap(),
        GentlePresentation::from_names(
            &["1", "2"],
            &[("u", "1", "2", 0), ("v", "2", "1", 0)],
            &[("u", "v"), ("v", "u")],
        )
        .unwrap(),
        GentlePresentation::from_names(
            &["1", "2"],
            &[("a", "1", "2", 0), ("b", "2", "1", 1), ("c", "1", "2", 2)],
            &[("b", "a"), ("c", "b")],
        )
        .unwrap(),
        GentlePresentation::from_names(&["1"], &[], &[]).unwrap(),
    ];
    for pres in cases {
        let naive = naive_dimension(&pres, 256).expect("finite by construction");
        let alg = Algebra::new(pres).unwrap();
        assert_eq!(alg.dimension(), naive);
    }
}

#[test]
fn unbounded_paths_reported_with_cycle_witness() {
    let pres = GentlePresentation::from_names(
        &["1", "2"],
        &[("u", "1", "2", 0), ("v", "2", "1", 0)],
        &[],
    )
    .unwrap();
    assert_eq!(naive_dimension(&pres, 256), None);
    match Algebra::new(pres) {
        Err(AlgebraError::InfiniteDimensional { cycle }) => {
            assert_eq!(cycle.len(), 2); // v -> u -> v survives forever
        }
        other => panic!("expected infinite-dimensional error, got {other:?}"),
    }
}
