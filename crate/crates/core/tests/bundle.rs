use num_integer::Roots;
use proptest::prelude::*;

use milnor_geom::bundle::{
    canonical_solution, classify_pair, cohomology_report, euler_class, mv_matrix, s7_bundle_class,
    s7_orientation_partner, solve_euler, ActionParams, BundleParams, CohomologyKind, S7_ACHIEVABLE,
};

fn bp(p_minus: i64, p_plus: i64) -> BundleParams {
    BundleParams::new(p_minus, p_plus).unwrap()
}

fn pairs(v: &[BundleParams]) -> Vec<(i64, i64)> {
    v.iter().map(|p| (p.p_minus, p.p_plus)).collect()
}

/// Every `p_- ≡ 1 (mod 4)` in the window with `p_-^2 - 8k` an odd square,
/// paired with the root that is `≡ 1 (mod 4)`.
fn brute_force(k: i64, window: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let start = -window + (1 + window).rem_euclid(4);
    for pm in (start..=window).step_by(4) {
        let sq = pm * pm - 8 * k;
        if sq < 0 {
            continue;
        }
        let root = sq.sqrt();
        if root * root != sq {
            continue;
        }
        for pp in [root, -root] {
            if pp.rem_euclid(4) == 1 && !out.contains(&(pm, pp)) {
                out.push((pm, pp));
            }
        }
    }
    out.sort_by_key(|&(pm, _)| (pm.unsigned_abs(), pm));
    out
}

#[test]
fn euler_class_examples() {
    assert_eq!(euler_class(&bp(-3, 1)).unwrap(), 1);
    assert_eq!(euler_class(&bp(29, 1)).unwrap(), 105);
    assert_eq!(euler_class(&bp(5, 5)).unwrap(), 0);
    assert!(euler_class(&BundleParams {
        p_minus: 3,
        p_plus: 1
    })
    .is_err());
    assert!(BundleParams::new(1, -1).is_err());
}

#[test]
fn eight_solutions_for_105() {
    let expected = vec![
        (29, 1),
        (-31, -11),
        (37, -23),
        (41, 29),
        (-47, 37),
        (73, -67),
        (-107, -103),
        (-211, 209),
    ];
    let found = solve_euler(105, None).unwrap();
    assert_eq!(pairs(&found), expected);
    for p in &found {
        assert_eq!(euler_class(p).unwrap(), 105);
    }
}

#[test]
fn powers_of_two_have_one_solution() {
    // the single pair is (-3, 1) for k = 1: (3, -1) has the wrong residues
    assert_eq!(pairs(&solve_euler(1, None).unwrap()), vec![(-3, 1)]);
    for t in 1..=8 {
        let k = 1i64 << t;
        assert_eq!(
            pairs(&solve_euler(k, None).unwrap()),
            vec![(2 * k + 1, -2 * k + 1)],
            "k = {k}"
        );
    }
}

#[test]
fn other_classes_have_several_solutions() {
    for k in -500i64..=500 {
        if k == 0 {
            continue;
        }
        let count = solve_euler(k, None).unwrap().len();
        if k.unsigned_abs().is_power_of_two() {
            assert_eq!(count, 1, "k = {k}");
        } else {
            assert!(count >= 2, "k = {k}");
        }
    }
}

#[test]
fn zero_needs_a_bound() {
    assert!(solve_euler(0, None).is_err());
    let family = solve_euler(0, Some(9)).unwrap();
    assert_eq!(
        pairs(&family),
        vec![(1, 1), (-3, -3), (5, 5), (-7, -7), (9, 9)]
    );
}

#[test]
fn solutions_match_brute_force() {
    for k in -500i64..=500 {
        if k == 0 {
            continue;
        }
        let window = 4 * k.abs() + 3;
        assert_eq!(
            pairs(&solve_euler(k, None).unwrap()),
            brute_force(k, window),
            "k = {k}"
        );
    }
}

#[test]
fn canonical_examples() {
    assert_eq!(canonical_solution(2).unwrap(), bp(5, -3));
    assert_eq!(canonical_solution(1).unwrap(), bp(-3, 1));
    assert_eq!(canonical_solution(3).unwrap(), bp(5, 1));
    for k in -500..=500 {
        let c = canonical_solution(k).unwrap();
        assert_eq!(euler_class(&c).unwrap(), k);
        if k != 0 {
            assert!(solve_euler(k, None).unwrap().contains(&c), "k = {k}");
        }
    }
}

#[test]
fn orientation_reversal_swaps_slopes() {
    for k in 1..=500 {
        let plus = solve_euler(k, None).unwrap();
        let mut swapped: Vec<_> = plus.iter().map(|p| (p.p_plus, p.p_minus)).collect();
        swapped.sort();
        let mut minus = pairs(&solve_euler(-k, None).unwrap());
        minus.sort();
        assert_eq!(minus, swapped, "k = {k}");
    }
}

#[test]
fn classify_examples() {
    assert_eq!(
        classify_pair(&ActionParams::new(-3, 1, 1, 1).unwrap()).unwrap(),
        (1, 0)
    );
    for n in -20..=20 {
        let q = 4 * n + 1;
        let (_, l) = classify_pair(&ActionParams::new(5, q, 1, q).unwrap()).unwrap();
        assert_eq!(l, 0);
    }
    assert!(ActionParams::new(5, -3, 1, 3).is_err());
    for k in [-7, 2, 3, 12] {
        for l in [-5, 1, 6] {
            for p in solve_euler(k, None).unwrap() {
                for q in solve_euler(-l, None).unwrap() {
                    let params = ActionParams::from_pairs(p, q);
                    assert_eq!(classify_pair(&params).unwrap(), (k, l));
                }
            }
        }
    }
}

#[test]
fn mayer_vietoris_examples() {
    let m = mv_matrix(&bp(5, 1)).unwrap();
    assert_eq!(m.entries, [[-1, 1], [25, -1]]);
    assert_eq!((m.determinant, m.k_abs), (-24, 3));
    let m = mv_matrix(&bp(-3, 1)).unwrap();
    assert_eq!((m.determinant, m.k_abs), (-8, 1));
    let m = mv_matrix(&bp(-7, -7)).unwrap();
    assert_eq!((m.determinant, m.k_abs), (0, 0));
}

#[test]
fn s7_classes() {
    let image: std::collections::BTreeSet<i64> = (0..24).map(s7_bundle_class).collect();
    assert_eq!(
        image.into_iter().collect::<Vec<_>>(),
        S7_ACHIEVABLE.to_vec()
    );
    assert_eq!(s7_bundle_class(1), 1);
    let partners: Vec<i64> = [2, 5, 8, 11]
        .into_iter()
        .map(s7_orientation_partner)
        .collect();
    assert_eq!(partners, vec![10, 7, 4, 1]);
    for k in -100..100 {
        assert_eq!(s7_bundle_class(k), s7_bundle_class(k + 24));
    }
}

#[test]
fn cohomology_examples() {
    let p3 = cohomology_report(CohomologyKind::PrincipalS3, 3, None).unwrap();
    let h4 = p3.group(4).unwrap();
    assert_eq!((h4.free_rank, h4.torsion.clone()), (0, vec![3]));
    assert_eq!(p3.group(7).unwrap().free_rank, 1);

    let m0 = cohomology_report(CohomologyKind::S2Bundle, 0, None).unwrap();
    assert_eq!(m0.ring_relation, Some(0));
    assert!(m0.notes.iter().any(|n| n.contains("S^2 × S^4")));

    let p24 = cohomology_report(CohomologyKind::PrincipalS3xS3, 2, Some(4)).unwrap();
    assert_eq!(p24.group(4).unwrap().torsion, vec![2]);

    let m21 = cohomology_report(CohomologyKind::S3Bundle, 2, Some(-1)).unwrap();
    assert!(m21.group(4).is_none());
    assert!(cohomology_report(CohomologyKind::S3Bundle, 2, None).is_err());
    assert!("Q_k".parse::<CohomologyKind>().is_err());
}

fn valid_slope() -> impl Strategy<Value = i64> {
    (-250_000i64..250_000).prop_map(|n| 4 * n + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn mv_determinant_matches_euler_class(pm in valid_slope(), pp in valid_slope()) {
        let p = bp(pm, pp);
        let m = mv_matrix(&p).unwrap();
        prop_assert_eq!(m.k_abs, i128::from(euler_class(&p).unwrap()).abs());
    }

    #[test]
    fn solutions_round_trip(k in -100_000i64..100_000) {
        prop_assume!(k != 0);
        let solutions = solve_euler(k, None).unwrap();
        prop_assert!(!solutions.is_empty());
        for p in solutions {
            prop_assert_eq!(euler_class(&p).unwrap(), k);
        }
    }
}
