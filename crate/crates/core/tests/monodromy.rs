use lemnis_core::corpus::reducibility_corpus;
use lemnis_core::monodromy::{branch_points, component_count, escaping_branch_count};
use lemnis_core::separated::{build_separated, germ_branch_count, infinity_incidence, Axis};
use lemnis_core::{decide_reducibility, UniPoly};

fn z(c: &[i64]) -> UniPoly {
    UniPoly::from_ints("z", c)
}

fn w(c: &[i64]) -> UniPoly {
    UniPoly::from_ints("w", c)
}

#[test]
fn orbit_count_matches_decision_on_small_corpus() {
    for inst in reducibility_corpus(7, 24, 4) {
        let expected = decide_reducibility(&inst.p, &inst.q).unwrap().d;
        let cert = component_count(&inst.p, &inst.q, 42).unwrap();
        assert_eq!(cert.orbit_count, expected, "P = {}, Q = {}", inst.p, inst.q);
        if let Some(d) = inst.planted {
            assert_eq!(expected, d);
        }
    }
}

#[test]
fn orbit_count_is_seed_robust() {
    let cases = [
        (z(&[-1, 0, 1]).pow(2), w(&[2, 1]).pow(2)),
        (z(&[1, 1, 1]), w(&[0, 1, 1])),
        (z(&[0, 1]).pow(3), w(&[1, 0, 1]).pow(3)),
    ];
    for (p, q) in cases {
        let counts: Vec<usize> =
            [1u64, 2, 3].iter().map(|&s| component_count(&p, &q, s).unwrap().orbit_count).collect();
        assert!(counts.windows(2).all(|c| c[0] == c[1]), "{counts:?}");
    }
}

#[test]
fn conjugate_curve_has_the_same_count() {
    for inst in reducibility_corpus(11, 12, 4) {
        let a = component_count(&inst.p, &inst.q, 5).unwrap().orbit_count;
        let b = component_count(&inst.p.conj(), &inst.q.conj(), 5).unwrap().orbit_count;
        assert_eq!(a, b);
    }
}

#[test]
fn deterministic_certificate() {
    let (p, q) = (z(&[1, 0, 2, 1]), w(&[-1, 0, 1]));
    assert_eq!(component_count(&p, &q, 9).unwrap(), component_count(&p, &q, 9).unwrap());
}

#[test]
fn permutations_act_on_the_fiber() {
    let (p, q) = (z(&[0, 1, 1]).pow(2), w(&[3, 1]).pow(2));
    let cert = component_count(&p, &q, 3).unwrap();
    let n = q.degree().unwrap();
    assert_eq!(cert.fiber.roots_w.len(), n);
    assert_eq!(cert.permutations.len(), cert.branch_points.len());
    assert_eq!(cert.branch_points, branch_points(&p, &q).unwrap());
    let covered: usize = cert.orbits.iter().map(Vec::len).sum();
    assert_eq!(covered, n);
}

#[test]
fn germ_counts_agree_with_local_loops() {
    for inst in reducibility_corpus(3, 10, 4) {
        let f = build_separated(&inst.p, &inst.q).unwrap();
        let inc = infinity_incidence(&f, Axis::L1).unwrap();
        for (j, pt) in inc.points.iter().enumerate() {
            let formula = germ_branch_count(&inst.p, &inst.q, j).unwrap();
            let numeric = escaping_branch_count(&inst.p, &inst.q, pt.location).unwrap();
            assert_eq!(formula, numeric, "P = {}, Q = {}, point {j}", inst.p, inst.q);
        }
    }
}

#[test]
fn tails_grazing_other_branch_points() {
    // With seed 42 the straight tail to one branch point passes within
    // 2e-5 of another; a tracker that steps over it merges the components.
    for (corpus_seed, index) in [(3u64, 13usize), (2, 199)] {
        let inst = &reducibility_corpus(corpus_seed, 200, 6)[index];
        assert_eq!(inst.planted, Some(2));
        for seed in [42u64, 1, 2] {
            assert_eq!(component_count(&inst.p, &inst.q, seed).unwrap().orbit_count, 2);
        }
    }
}

#[test]
fn basepoint_fiber_near_multiple_roots_of_q() {
    // Q is a cube, so far from the branch points its fiber hugs triple
    // roots where Q' is tiny and Newton works at the rounding floor.
    let inst = &reducibility_corpus(2024, 200, 6)[135];
    assert_eq!(inst.planted, Some(3));
    assert_eq!(component_count(&inst.p, &inst.q, 42).unwrap().orbit_count, 3);
}
