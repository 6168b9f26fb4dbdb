//! Acceptance run: one `[PASS]`/`[FAIL]` line per criterion, each with its own time limit.
//! Exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rainbow::bounds::{main_theorem_n, parse_epsilon, threshold_table};
use rainbow::budget::SearchBudget;
use rainbow::connectivity::{build_dm, inverse_radius, low_expansion_ball};
use rainbow::digraph::{ColourMode, DiPath, LabelledDigraph, Visit};
use rainbow::generate::{generate_instance, random_proper_digraph, InstanceSpec};
use rainbow::golden::{check_x0y0_bounds, golden_solve, BoundVerdict, GoldenConfig, PHI};
use rainbow::instances::latin_2x2;
use rainbow::latin::{max_partial_transversal, parse_latin};
use rainbow::menger::{
    build_counterexample, fractional_menger, verify_property_one, verify_property_two, Arithmetic,
};
use rainbow::oracle::{enumerate_rainbow_paths, exact_max_rainbow_matching, Constraints};
use rainbow::simplex::{solve, LinearProgram, LpOutcome, Relation};
use rainbow::switching::{
    apply_switching, build_switch_digraph, path_to_switching, solve_switching_engine, validate_switching,
    EngineConfig,
};
use rainbow::{
    greedy_rainbow_matching, verify_rainbow_matching, ColouredBipartiteMultigraph, MatchingContext,
    RainbowMatching,
};

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn oracle_max(g: &ColouredBipartiteMultigraph) -> RainbowMatching {
    exact_max_rainbow_matching(g, &Constraints::default(), &SearchBudget::default())
        .expect("oracle within budget")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn latin_two() -> Check {
    let g = latin_2x2();
    let by_oracle = oracle_max(&g).len();
    let grid = parse_latin("0 1\n1 0\n").map_err(|e| e.to_string())?;
    let by_cells = max_partial_transversal(&grid).len();
    ensure(by_oracle == 1 && by_cells == 1, || {
        format!("oracle {by_oracle}, cell search {by_cells}")
    })?;
    Ok("maximum 1 by both searches".into())
}

fn greedy_guarantee() -> Check {
    for seed in 0..500u64 {
        let n = 1 + (seed % 50) as usize;
        let g = generate_instance(&InstanceSpec::random(n, 2 * n, false, seed)).map_err(|e| e.to_string())?;
        let m = greedy_rainbow_matching(&g);
        verify_rainbow_matching(&g, &m).map_err(|v| format!("seed {seed}: {v}"))?;
        ensure(m.len() == n, || format!("seed {seed}: size {} < {n}", m.len()))?;
    }
    Ok("500 of 500 full".into())
}

/// Seeded edge-disjoint instances with `n` colours of `n + 1` edges, `n` in `2..=7`.
fn switching_suite() -> Vec<(u64, ColouredBipartiteMultigraph)> {
    (0..200u64)
        .map(|seed| {
            let n = 2 + (seed % 6) as usize;
            let g = generate_instance(&InstanceSpec::random(n, n + 1, true, 1000 + seed)).expect("instance");
            (seed, g)
        })
        .collect()
}

/// A rainbow matching of the largest size below `n`, missing exactly one colour.
fn near_perfect(g: &ColouredBipartiteMultigraph, seed: u64) -> Option<RainbowMatching> {
    let best = oracle_max(g);
    let n = g.colour_count();
    match best.len() {
        k if k == n => {
            let drop = (seed as usize) % n;
            Some(RainbowMatching::new(
                best.edges().iter().copied().filter(|e| e.c != drop).collect(),
            ))
        }
        k if k + 1 == n => Some(best),
        _ => None,
    }
}

fn switching_soundness() -> Check {
    let (mut paths, mut contexts) = (0usize, 0usize);
    for (seed, g) in switching_suite() {
        let Some(m) = near_perfect(&g, seed) else { continue };
        let ctx = MatchingContext::new(&g, m.clone()).map_err(|e| e.to_string())?;
        let x0: BTreeSet<usize> = ctx.uncovered_left().into_iter().collect();
        let d = build_switch_digraph(&ctx, &x0).map_err(|e| e.to_string())?;
        contexts += 1;
        let mut found: Vec<DiPath> = Vec::new();
        let mut meter = SearchBudget::default().meter();
        d.digraph
            .for_each_rainbow_path(
                d.c_star,
                g.colour_count(),
                ColourMode::Total,
                &BTreeSet::new(),
                &mut meter,
                |p| {
                    found.push(p.clone());
                    Visit::Extend
                },
            )
            .map_err(|_| format!("seed {seed}: path enumeration over budget"))?;
        for p in &found {
            paths += 1;
            let s = path_to_switching(&ctx, &d, p).map_err(|e| format!("seed {seed}: {e}"))?;
            validate_switching(&ctx, &x0, &s).map_err(|e| format!("seed {seed}: {e}"))?;
            let out = apply_switching(&g, &s, &[], &BTreeSet::new(), &m)
                .map_err(|e| format!("seed {seed}: {e}"))?;
            verify_rainbow_matching(&g, &out).map_err(|v| format!("seed {seed}: {v}"))?;
            let missing: Vec<usize> = (0..g.colour_count())
                .filter(|c| !out.colours().contains(c))
                .collect();
            ensure(out.len() == m.len() && missing == vec![s.end()], || {
                format!(
                    "seed {seed}: exchange gave size {} missing {missing:?}",
                    out.len()
                )
            })?;
        }
    }
    Ok(format!(
        "{paths} paths over {contexts} matchings, zero violations"
    ))
}

fn engine_vs_oracle() -> Check {
    let (mut full, mut agree) = (0usize, 0usize);
    let mut shortfalls = Vec::new();
    for (seed, g) in switching_suite() {
        let r = solve_switching_engine(&g, &EngineConfig::default());
        verify_rainbow_matching(&g, &r.matching).map_err(|v| format!("seed {seed}: {v}"))?;
        let best = oracle_max(&g).len();
        ensure(r.matching.len() <= best, || {
            format!("seed {seed}: engine beats the oracle")
        })?;
        if best == g.colour_count() {
            full += 1;
            if r.matching.len() == best {
                agree += 1;
            } else {
                shortfalls.push(seed);
            }
        }
    }
    ensure(shortfalls.is_empty(), || {
        format!("engine short on seeds {shortfalls:?}")
    })?;
    Ok(format!(
        "{agree} of {full} full instances matched, all outputs valid"
    ))
}

fn dm_degree_law() -> Check {
    let (m, epsilon) = (1, 0.3);
    let mut worst = f64::INFINITY;
    for seed in 0..20u64 {
        let d = random_proper_digraph(100, 60, 190, seed);
        let dm = build_dm(&d, m, &SearchBudget::default()).map_err(|e| format!("seed {seed}: {e}"))?;
        let slack = dm.digraph.min_out_degree() as f64 - (d.min_out_degree() as f64 - epsilon * 100.0);
        ensure(slack >= 0.0, || {
            format!("seed {seed}: degree law fails by {}", -slack)
        })?;
        worst = worst.min(slack);
        for (&(a, b), cert) in &dm.certificates {
            ensure(cert.validate(&d, m) && dm.digraph.has_edge(a, b), || {
                format!("seed {seed}: certificate {a}->{b} does not re-validate")
            })?;
        }
        ensure(dm.certificates.len() == dm.digraph.edges().len(), || {
            format!("seed {seed}: uncertified edge")
        })?;
    }
    Ok(format!("20 of 20 hold, smallest slack {worst}"))
}

/// Rainbow distances from `v` up to `cap` by plain enumeration of every rainbow path.
fn distances_by_enumeration(d: &LabelledDigraph, v: usize, cap: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; d.vertex_count()];
    let mut meter = SearchBudget::with_nodes(u64::MAX).meter();
    d.for_each_rainbow_path(v, cap, ColourMode::Total, &BTreeSet::new(), &mut meter, |p| {
        let e = dist[p.end()].get_or_insert(p.len());
        *e = (*e).min(p.len());
        Visit::Extend
    })
    .expect("unlimited");
    dist
}

fn ball_growth() -> Check {
    let mut checked = 0;
    for seed in 0..100u64 {
        let n = 20 + (seed % 11) as usize;
        let degree = 3 + (seed % 3) as usize;
        let d = random_proper_digraph(n, degree, 3 * degree + 4, seed);
        let v = (seed as usize * 7) % n;
        for epsilon in [1.0, 0.5, 0.25] {
            let ball = low_expansion_ball(&d, v, epsilon, &SearchBudget::default())
                .map_err(|e| format!("seed {seed}, ε {epsilon}: {e}"))?;
            let r = inverse_radius(epsilon);
            ensure(ball.t0 <= r && ball.growth_holds(n), || {
                format!("seed {seed}, ε {epsilon}: t0 {}", ball.t0)
            })?;
            let dist = distances_by_enumeration(&d, v, ball.t0 + 1);
            let layer = |t: usize| dist.iter().filter(|x| x.is_some_and(|x| x <= t)).count();
            let (inner, outer) = (layer(ball.t0), layer(ball.t0 + 1));
            ensure(
                inner == ball.vertices.len() && outer as f64 <= inner as f64 + epsilon * n as f64,
                || format!("seed {seed}, ε {epsilon}: layers {inner}, {outer} disagree with the ball"),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} balls re-verified"))
}

fn golden_claims() -> Check {
    // the claim needs a certified maximum missing exactly one colour; seeds without one are skipped
    let (mut checks, mut instances, mut seed) = (0, 0, 0u64);
    while instances < 60 {
        ensure(seed < 10_000, || {
            format!("only {instances} instances with maximum n - 1")
        })?;
        let g = if seed % 3 == 0 {
            let order = 2 * (1 + (seed / 3 % 3) as usize);
            generate_instance(&InstanceSpec::latin(order, seed)).map_err(|e| e.to_string())?
        } else {
            let n = 3 + (seed % 6) as usize;
            generate_instance(&InstanceSpec::random(n, n - 1, false, seed)).map_err(|e| e.to_string())?
        };
        seed += 1;
        let best = oracle_max(&g);
        if best.len() + 1 != g.colour_count() {
            continue;
        }
        instances += 1;
        let ctx = MatchingContext::new(&g, best).map_err(|e| e.to_string())?;
        for c in check_x0y0_bounds(&ctx, &SearchBudget::default()).map_err(|e| e.to_string())? {
            ensure(c.verdict == BoundVerdict::Holds, || {
                format!("seed {seed}: colour {} gives {c:?}", c.colour)
            })?;
            checks += 1;
        }
    }
    let (mut solved, mut confirmed) = (0, 0);
    for n in 2..=10usize {
        let class = (PHI * n as f64).ceil() as usize + 3;
        for seed in 0..5u64 {
            let g = generate_instance(&InstanceSpec::random(n, class, false, 100 * n as u64 + seed))
                .map_err(|e| e.to_string())?;
            if oracle_max(&g).len() < n {
                continue;
            }
            confirmed += 1;
            let (m, _) =
                golden_solve(&g, &GoldenConfig::default()).map_err(|e| format!("n {n}, seed {seed}: {e}"))?;
            verify_rainbow_matching(&g, &m).map_err(|v| format!("n {n}, seed {seed}: {v}"))?;
            ensure(m.len() == n, || {
                format!("n {n}, seed {seed}: golden size {}", m.len())
            })?;
            solved += 1;
        }
    }
    Ok(format!(
        "{checks} colour bounds hold on 60 instances; golden full on {solved} of {confirmed}"
    ))
}

fn menger_family() -> Check {
    let budget = SearchBudget::default();
    let mut families = 0;
    for k in 1..=3usize {
        for m in 2 * k + 2..=9 {
            let d = build_counterexample(k, m).map_err(|e| e.to_string())?;
            let one = verify_property_one(&d, 0, m, k, &budget).map_err(|e| e.to_string())?;
            let two = verify_property_two(&d, 0, m, &budget).map_err(|e| e.to_string())?;
            ensure(one && two, || format!("k {k}, m {m}: properties {one}, {two}"))?;
            families += 1;
        }
    }
    let d = build_counterexample(1, 4).map_err(|e| e.to_string())?;
    let count = enumerate_rainbow_paths(&d, 0, 4, 4, ColourMode::Edge, &BTreeSet::new(), &budget)
        .map_err(|e| e.to_string())?
        .len();
    ensure(count == 5, || format!("k 1, m 4: {count} paths"))?;
    Ok(format!("{families} families pass, 5 paths at k = 1, m = 4"))
}

/// The packing value in floating point, solved afresh from the path colour sets.
fn float_packing(path_colours: &[Vec<usize>], colours: &[usize]) -> f64 {
    let constraints = colours
        .iter()
        .map(|c| {
            let row = path_colours
                .iter()
                .map(|p| if p.contains(c) { 1.0 } else { 0.0 })
                .collect();
            (row, Relation::Le, 1.0)
        })
        .collect();
    let lp = LinearProgram {
        objective: vec![1.0; path_colours.len()],
        constraints,
    };
    match solve(&lp) {
        Ok(LpOutcome::Optimal { value, .. }) => value,
        other => panic!("packing program did not solve: {other:?}"),
    }
}

fn fractional_menger_gap() -> Check {
    let budget = SearchBudget::default();
    let mut instances: Vec<(String, LabelledDigraph, usize, usize)> = Vec::new();
    for k in 1..=3usize {
        for m in 2 * k + 2..=9 {
            instances.push((format!("k {k}, m {m}"), build_counterexample(k, m).unwrap(), 0, m));
        }
    }
    for seed in 0..20u64 {
        instances.push((
            format!("random {seed}"),
            random_proper_digraph(8, 3, 10, seed),
            0,
            7,
        ));
    }
    let (mut exact, mut worst) = (0, 0.0f64);
    for (name, d, u, v) in &instances {
        let lp = fractional_menger(d, *u, *v, 1e-9, 10_000, &budget).map_err(|e| format!("{name}: {e}"))?;
        ensure(lp.gap() <= 1e-9, || format!("{name}: gap {}", lp.gap()))?;
        worst = worst.max(lp.gap());
        if lp.paths.len() <= 64 {
            ensure(lp.arithmetic == Arithmetic::Exact, || {
                format!("{name}: not solved exactly")
            })?;
            let q: BigRational = lp
                .exact_value
                .as_deref()
                .ok_or_else(|| format!("{name}: no exact value"))?
                .parse()
                .map_err(|_| format!("{name}: bad exact value"))?;
            let float = float_packing(&lp.path_colours, &lp.colours);
            let q = num_traits::ToPrimitive::to_f64(&q).unwrap();
            ensure((float - q).abs() <= 1e-9, || {
                format!("{name}: float {float} vs exact {q}")
            })?;
            exact += 1;
        }
    }
    Ok(format!(
        "{} programs, worst gap {worst:e}, {exact} cross-checked exactly",
        instances.len()
    ))
}

fn bounds_table() -> Check {
    let e = parse_epsilon("0.1").map_err(|e| e.to_string())?;
    let n = main_theorem_n(&e).map_err(|e| e.to_string())?;
    let expected = BigRational::from_integer(BigInt::from(10).pow(180));
    ensure(n.exact() == Some(&expected), || format!("main threshold {n}"))?;
    let table = threshold_table(&e, 1, 1, &BigInt::from(10u64.pow(10))).map_err(|e| e.to_string())?;
    let frozen = [
        ("main_theorem_n", "1e180"),
        ("dm_min_order", "900"),
        ("close_subgraph_min_order", "200"),
        ("kd_length", "4000"),
        ("kd_min_order", "3200"),
        ("rainbow_kd_length", "128000"),
        ("rainbow_kd_min_order", "18000000"),
        ("lift_multiplicity", "1152003"),
        ("increment_k2", "100"),
        ("increment_tail_growth", "300"),
        ("increment_min_k1", "200"),
        ("increment_min_order", "1e38"),
        ("k0", "1e-80"),
    ];
    for (name, value) in frozen {
        let row = table
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| format!("{name} missing"))?;
        ensure(row.value.to_string() == value, || {
            format!("{name} = {}, expected {value}", row.value)
        })?;
    }
    Ok(format!("10^180 exactly, {} thresholds match", frozen.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1 order-2 Latin square", Duration::from_millis(1), latin_two),
        ("AC2 greedy guarantee", Duration::from_secs(5), greedy_guarantee),
        (
            "AC3 switching soundness",
            Duration::from_secs(60),
            switching_soundness,
        ),
        ("AC4 engine vs oracle", Duration::from_secs(300), engine_vs_oracle),
        (
            "AC5 derived digraph degree law",
            Duration::from_secs(120),
            dm_degree_law,
        ),
        ("AC6 low-expansion ball", Duration::from_secs(60), ball_growth),
        (
            "AC7 colour bound and golden solver",
            Duration::from_secs(300),
            golden_claims,
        ),
        (
            "AC8 Menger counterexample",
            Duration::from_secs(30),
            menger_family,
        ),
        (
            "AC9 fractional Menger duality",
            Duration::from_secs(30),
            fractional_menger_gap,
        ),
        ("AC10 bounds table", Duration::from_secs(1), bounds_table),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "[{}] {name}: {detail} ({elapsed:.2?}, limit {limit:?})",
            if ok { "PASS" } else { "FAIL" }
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
