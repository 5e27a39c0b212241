use proptest::prelude::*;

use carc::cliques::{clique_segments, ones_property, phca_via_matrix, Axis, CliqueMatrix, Mode};
use carc::generators::{named_graph, named_model, random_model, Constraint, Family};
use carc::io::{parse_model, write_model};
use carc::model::{duplicate_arc, equal_models, intersection_graph, reverse_model, universal_arcs, CircularArcModel};
use carc::nhca::{authenticate_nhca, check_local_interval, recognize_nhca, Authentication};
use carc::oracle::{classify, maximal_cliques, ones_by_search, unit_realizable};
use carc::orientation::{model_from_enumeration, orient_from_model, verify_enumeration, Flavor};
use carc::phca::{phca_from_pca, sort_extreme_sequences};

fn any_model(max: usize) -> impl Strategy<Value = CircularArcModel> {
    (1..=max, any::<u64>()).prop_map(|(n, seed)| random_model(n, seed, Constraint::Any))
}

fn proper_model(max: usize) -> impl Strategy<Value = CircularArcModel> {
    (1..=max, any::<u64>()).prop_map(|(n, seed)| random_model(n, seed, Constraint::Proper))
}

fn short_model(max: usize) -> impl Strategy<Value = CircularArcModel> {
    (1..=max, any::<u64>()).prop_map(|(n, seed)| random_model(n, seed, Constraint::Short))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn authentication_matches_covers(m in any_model(30)) {
        let r = classify(&m);
        let ok = authenticate_nhca(&m) == Authentication::Ok;
        prop_assert_eq!(ok, r.two_cover.is_none() && r.three_cover.is_none());
        prop_assert_eq!(ok, check_local_interval(&m));
    }

    #[test]
    fn interval_point_implies_normal_helly(m in any_model(12)) {
        let r = classify(&m);
        prop_assert!(!r.interval_point || (r.normal && r.helly));
    }

    #[test]
    fn twins_keep_the_classes(m in any_model(10), pick in any::<usize>()) {
        let a = pick % m.n();
        let twin = duplicate_arc(&m, a).unwrap();
        let (r1, r2) = (classify(&m), classify(&twin));
        prop_assert_eq!((r1.proper, r1.normal, r1.helly, r1.interval_point), (r2.proper, r2.normal, r2.helly, r2.interval_point));
    }

    #[test]
    fn reversal_keeps_the_graph(m in any_model(20)) {
        prop_assert_eq!(intersection_graph(&reverse_model(&m)), intersection_graph(&m));
    }

    #[test]
    fn text_round_trip(m in any_model(20), r in any::<usize>()) {
        let back = parse_model(&write_model(&m)).unwrap();
        prop_assert!(equal_models(&m, &back));
        let rotated = m.rotated(r % m.len());
        prop_assert!(equal_models(&m, &rotated) && equal_models(&rotated, &m));
    }

    #[test]
    fn proper_models_have_no_containment(m in proper_model(40)) {
        prop_assert!(classify(&m).proper);
        let g = intersection_graph(&m);
        let universal: Vec<usize> = (0..m.n()).filter(|&v| g.is_universal(v)).collect();
        prop_assert_eq!(universal_arcs(&m), universal.clone());
        if let Some((a, b)) = classify(&m).two_cover {
            prop_assert!(universal.contains(&a) && universal.contains(&b));
        }
    }

    #[test]
    fn unit_models_are_proper(m in any_model(6)) {
        if unit_realizable(&m).is_some() {
            prop_assert!(classify(&m).proper);
        }
    }

    #[test]
    fn nhca_verdicts_hold(m in any_model(9)) {
        let cert = recognize_nhca(&m);
        match cert.model() {
            Some(out) => {
                let r = classify(out);
                prop_assert!(r.normal && r.helly);
                prop_assert_eq!(intersection_graph(out), intersection_graph(&m));
            }
            None => prop_assert!(cert.verify_negative(&m)),
        }
    }

    #[test]
    fn sorting_keeps_the_graph(m in any_model(14)) {
        if authenticate_nhca(&m) == Authentication::Ok {
            let sorted = sort_extreme_sequences(&m).unwrap();
            prop_assert_eq!(intersection_graph(&sorted), intersection_graph(&m));
            let segments = clique_segments(&m).unwrap();
            prop_assert_eq!(segments.len(), maximal_cliques(&intersection_graph(&m)).len());
        }
    }

    #[test]
    fn accepted_pca_graphs_pass_the_matrix_test(m in proper_model(9)) {
        let cert = phca_from_pca(&m).unwrap();
        let g = intersection_graph(&m);
        prop_assert_eq!(cert.is_positive(), phca_via_matrix(&g));
    }

    #[test]
    fn circular_ones_agree_with_search(columns in 1usize..=9, rows in prop::collection::vec(any::<u16>(), 1..6)) {
        let sets: Vec<Vec<usize>> = rows.iter().map(|b| (0..columns).filter(|&c| b >> c & 1 == 1).collect()).collect();
        let m = CliqueMatrix::from_rows(columns, sets.clone());
        prop_assert_eq!(ones_property(&m, Axis::Rows, Mode::Circular).is_some(), ones_by_search(columns, &sets, true).is_some());
        prop_assert_eq!(ones_property(&m, Axis::Rows, Mode::Consecutive).is_some(), ones_by_search(columns, &sets, false).is_some());
    }

    #[test]
    fn orientation_round_trip(m in short_model(25)) {
        let (d, e) = orient_from_model(&m, Flavor::OutRound).unwrap();
        prop_assert!(verify_enumeration(&d, &e));
        let back = model_from_enumeration(&d, &e).unwrap();
        prop_assert_eq!(intersection_graph(&back), intersection_graph(&m));
        prop_assert!(classify(&back).normal);
    }
}

#[test]
fn fixtures_realize_their_graphs() {
    let families = [
        Family::Sun3,
        Family::Umbrella,
        Family::Tent,
        Family::K13,
        Family::Wheel(5),
        Family::RisingSun(5),
        Family::Hole(7),
        Family::Path(4),
        Family::Ci { n: 5, k: 2 },
    ];
    for f in families {
        let g = named_graph(f).unwrap();
        let m = named_model(f).unwrap();
        assert!(carc::oracle::isomorphism(&g, &intersection_graph(&m)).is_some(), "{f}");
    }
}
