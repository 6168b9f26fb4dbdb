//! Invariants checked on seeded random inputs.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rainbow::bounds::{main_theorem_n, threshold_table};
use rainbow::budget::SearchBudget;
use rainbow::connectivity::{
    build_dm, inverse_radius, lift_path_through_dm, low_expansion_ball, rainbow_path_through,
    ConnectivityError,
};
use rainbow::digraph::{ColourMode, Visit};
use rainbow::generate::{generate_instance, random_proper_digraph, InstanceSpec};
use rainbow::golden::{golden_solve, GoldenConfig, LevelOutcome};
use rainbow::menger::fractional_menger;
use rainbow::oracle::{exact_max_rainbow_matching, Constraints};
use rainbow::switching::{
    apply_switching, build_switch_digraph, path_to_switching, solve_switching_engine, validate_switching,
    EngineConfig,
};
use rainbow::{
    greedy_rainbow_matching, verify_rainbow_matching, ColouredBipartiteMultigraph, MatchingContext,
    RainbowMatching,
};

fn oracle_max(g: &ColouredBipartiteMultigraph) -> RainbowMatching {
    exact_max_rainbow_matching(g, &Constraints::default(), &SearchBudget::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn greedy_fills_classes_of_twice_the_colour_count(n in 1usize..30, seed in any::<u64>()) {
        let g = generate_instance(&InstanceSpec::random(n, 2 * n, false, seed)).unwrap();
        let m = greedy_rainbow_matching(&g);
        prop_assert!(verify_rainbow_matching(&g, &m).is_ok());
        prop_assert_eq!(m.len(), n);
    }

    #[test]
    fn engine_output_is_valid_and_never_beats_the_oracle(
        n in 2usize..7,
        extra in 0usize..3,
        disjoint in any::<bool>(),
        seed in any::<u64>(),
    ) {
        let g = generate_instance(&InstanceSpec::random(n, n + extra, disjoint, seed)).unwrap();
        let r = solve_switching_engine(&g, &EngineConfig::default());
        prop_assert!(verify_rainbow_matching(&g, &r.matching).is_ok());
        prop_assert!(r.matching.len() >= r.initial_size);
        prop_assert!(r.matching.len() <= oracle_max(&g).len());
    }

    #[test]
    fn every_switch_digraph_path_is_a_sound_exchange(n in 2usize..7, seed in any::<u64>()) {
        let g = generate_instance(&InstanceSpec::random(n, n + 1, true, seed)).unwrap();
        let best = oracle_max(&g);
        prop_assume!(best.len() + 1 >= n && best.len() >= 2);
        let m = if best.len() == n {
            let drop = (seed as usize) % n;
            RainbowMatching::new(best.edges().iter().copied().filter(|e| e.c != drop).collect())
        } else {
            best
        };
        let ctx = MatchingContext::new(&g, m.clone()).unwrap();
        let x0: BTreeSet<usize> = ctx.uncovered_left().into_iter().collect();
        let d = build_switch_digraph(&ctx, &x0).unwrap();
        let mut paths = Vec::new();
        let mut meter = SearchBudget::default().meter();
        d.digraph
            .for_each_rainbow_path(d.c_star, n, ColourMode::Total, &BTreeSet::new(), &mut meter, |p| {
                paths.push(p.clone());
                Visit::Extend
            })
            .unwrap();
        for p in paths {
            let s = path_to_switching(&ctx, &d, &p).unwrap();
            prop_assert!(validate_switching(&ctx, &x0, &s).is_ok());
            let out = apply_switching(&g, &s, &[], &BTreeSet::new(), &m).unwrap();
            prop_assert!(verify_rainbow_matching(&g, &out).is_ok());
            prop_assert_eq!(out.len(), m.len());
            prop_assert!(!out.colours().contains(&s.end()));
        }
    }

    #[test]
    fn golden_output_and_trace_are_consistent(n in 2usize..8, extra in 0usize..4, seed in any::<u64>()) {
        let g = generate_instance(&InstanceSpec::random(n, n + extra, false, seed)).unwrap();
        let config = GoldenConfig { force_split: seed % 2 == 0, ..GoldenConfig::default() };
        let (m, trace) = golden_solve(&g, &config).unwrap();
        prop_assert!(verify_rainbow_matching(&g, &m).is_ok());
        prop_assert_eq!(&trace.matching, &m);
        prop_assert!(trace.level_identity_holds());
        prop_assert_eq!(m.len(), oracle_max(&g).len());
        for level in &trace.levels {
            if level.outcome == LevelOutcome::Assembled {
                prop_assert_eq!(level.size, level.n);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dm_certificates_revalidate(n in 8usize..20, degree in 2usize..5, m in 1usize..3, seed in any::<u64>()) {
        let d = random_proper_digraph(n, degree, 3 * degree + 4, seed);
        let dm = build_dm(&d, m, &SearchBudget::default()).unwrap();
        prop_assert_eq!(dm.certificates.len(), dm.digraph.edges().len());
        for (&(a, b), cert) in &dm.certificates {
            prop_assert!(dm.digraph.has_edge(a, b));
            prop_assert!(cert.validate(&d, m));
        }
    }

    #[test]
    fn ball_growth_inequality(n in 6usize..30, degree in 2usize..5, seed in any::<u64>(), e in 1usize..5) {
        let epsilon = 1.0 / e as f64;
        let d = random_proper_digraph(n, degree, 3 * degree + 4, seed);
        let v = (seed as usize) % n;
        let ball = low_expansion_ball(&d, v, epsilon, &SearchBudget::default()).unwrap();
        prop_assert!(ball.t0 <= inverse_radius(epsilon));
        prop_assert!(ball.growth_holds(n));
        prop_assert!(ball.vertices.contains(&v));
    }

    #[test]
    fn anchored_paths_are_rainbow_and_visit_anchors(
        n in 6usize..16,
        degree in 3usize..6,
        seed in any::<u64>(),
        picks in proptest::collection::vec(any::<usize>(), 2..4),
        avoid in proptest::collection::btree_set(0usize..40, 0..3),
    ) {
        let d = random_proper_digraph(n, degree, 3 * degree + 4, seed);
        let mut anchors: Vec<usize> = Vec::new();
        for p in picks {
            let a = p % n;
            if !anchors.contains(&a) {
                anchors.push(a);
            }
        }
        let len = 4;
        match rainbow_path_through(&d, &anchors, &avoid, len, &SearchBudget::default()) {
            Ok(path) => {
                prop_assert!(d.is_rainbow_path(&path, ColourMode::Total, &avoid));
                prop_assert_eq!(path.start(), anchors[0]);
                prop_assert_eq!(path.end(), *anchors.last().unwrap());
                let positions: Vec<usize> =
                    anchors.iter().map(|a| path.vertices.iter().position(|v| v == a).unwrap()).collect();
                prop_assert!(positions.windows(2).all(|w| w[0] < w[1] && w[1] - w[0] <= len));
            }
            Err(ConnectivityError::SegmentNotFound { .. } | ConnectivityError::PreconditionViolated(_)) => {}
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn lifted_paths_double_in_length(q in 8usize..13, steps in 1usize..4, seed in any::<u64>()) {
        let d = rainbow::generate::rainbow_complete_digraph(q);
        let dm = build_dm(&d, 2, &SearchBudget::default()).unwrap();
        // a short simple walk through D_m picked by the seed
        let mut path = vec![(seed as usize) % q];
        let mut s = seed;
        for _ in 0..steps {
            let here = *path.last().unwrap();
            let next: Vec<usize> = dm.digraph.out_neighbours(here).into_iter().filter(|v| !path.contains(v)).collect();
            if next.is_empty() {
                break;
            }
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            path.push(next[(s >> 33) as usize % next.len()]);
        }
        match lift_path_through_dm(&d, &dm, &path, &BTreeSet::new()) {
            Ok(lifted) => {
                prop_assert_eq!(lifted.len(), 2 * (path.len() - 1));
                prop_assert!(d.is_walk(&lifted));
                for (i, v) in path.iter().enumerate() {
                    prop_assert_eq!(lifted.vertices[2 * i], *v);
                }
            }
            Err(ConnectivityError::CertificateExhausted { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn path_programs_are_feasible_with_no_gap(n in 4usize..9, degree in 2usize..4, seed in any::<u64>()) {
        let d = random_proper_digraph(n, degree, 3 * degree + 4, seed);
        let lp = fractional_menger(&d, 0, n - 1, 1e-9, 5_000, &SearchBudget::default()).unwrap();
        prop_assert!(lp.feasibility_residual() <= 1e-9);
        prop_assert!(lp.gap() <= 1e-9);
        prop_assert!(lp.packing <= lp.paths.len() as f64 + 1e-9);
    }

    #[test]
    fn thresholds_shrink_as_epsilon_grows(a in 1i64..50, b in 1i64..50) {
        prop_assume!(a != b);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let small = BigRational::new(lo.into(), 50.into());
        let large = BigRational::new(hi.into(), 50.into());
        prop_assert!(main_theorem_n(&small).unwrap().log10() > main_theorem_n(&large).unwrap().log10());
        let k1 = BigInt::from(10u64.pow(10));
        let t_small = threshold_table(&small, 1, 1, &k1).unwrap();
        let t_large = threshold_table(&large, 1, 1, &k1).unwrap();
        for name in ["dm_min_order", "close_subgraph_min_order", "kd_length", "rainbow_kd_length", "kd_min_order"] {
            let get = |t: &[rainbow::bounds::ThresholdReport]| {
                t.iter().find(|r| r.name == name).unwrap().value.log10()
            };
            prop_assert!(get(&t_small) > get(&t_large), "{}", name);
        }
    }
}
