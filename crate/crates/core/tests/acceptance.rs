//! Acceptance suite: one test per release criterion, each printing a
//! `criterion N` line. Run with `cargo test -p graph-games --test acceptance`.

mod common;

use std::time::{Duration, Instant};

use common::{alive_before, genbuchi_corpus, gr1_corpus, GbMutation, Gr1Mutation};
use graph_games::reductions::{
    gen_peeling_game, gen_random_ov, gen_random_triangle, ov_to_game, solve_ov_instance,
    solve_triangle_instance, triangle_to_game, ReductionSolver,
};
use graph_games::strategy::{
    check_p1_genbuchi, check_p1_gr1, check_p2_genbuchi, check_p2_gr1,
    extract_genbuchi_strategies, extract_gr1_strategies,
};
use graph_games::{
    brute_force_ov, brute_force_small_dominions, brute_force_triangle, is_closed, lift_dominion,
    parse_game, solve_basic, solve_fast, solve_gr1_basic, solve_gr1_fast,
    solve_via_buchi_reduction, DominionSource, GameGraph, GenBuchiObjective, Objective, Player,
    ProgressMeasure, VertexSet,
};

fn load(name: &str) -> (GameGraph, GenBuchiObjective) {
    let path = format!("{}/../../games/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("read {path}: {e}"));
    let (g, obj) = parse_game(&text).expect("shipped game file parses");
    match obj {
        Objective::GenBuchi(o) => (g, o),
        Objective::Gr1(_) => panic!("expected a generalized Büchi game"),
    }
}

fn ceil_sqrt(n: usize) -> usize {
    let r = n.isqrt();
    if r * r < n {
        r + 1
    } else {
        r
    }
}

#[test]
fn criterion_01_figure1_golden() {
    let (g, obj) = load("figure1.gbg");
    let started = Instant::now();
    let basic = solve_basic(&g, &obj).unwrap();
    let fast = solve_fast(&g, &obj).unwrap();
    let elapsed = started.elapsed();

    let w1: Vec<u32> = vec![0, 1, 2, 5, 6, 7, 8];
    let w2: Vec<u32> = vec![3, 4, 9];
    assert_eq!(basic.w1.to_vec(), w1);
    assert_eq!(basic.w2.to_vec(), w2);
    assert_eq!(fast.w1.to_vec(), w1);
    assert_eq!(fast.w2.to_vec(), w2);

    assert_eq!(fast.trace.len(), 1);
    let rec = &fast.trace[0];
    assert_eq!(rec.s_set.to_vec(), vec![4, 9], "trap {{e, j}}");
    assert_eq!(rec.level, Some(1), "trap found in the sparsest level");
    assert_eq!(rec.d_set.to_vec(), vec![3, 4, 9], "first removal");

    assert!(elapsed < Duration::from_millis(2), "two solves took {elapsed:?}");
    println!("criterion 1: pass (both partitions exact, level-1 discovery, {elapsed:?})");
}

#[test]
fn criterion_02_figure2_golden() {
    let started = Instant::now();
    let (g, obj) = load("figure2-triangle.gbg");
    let res = solve_fast(&g, &obj).unwrap();
    assert!(res.w1.is_empty(), "triangle present: player 1 wins nowhere");

    // Dropping the closing edge (c, a) leaves no triangle.
    let inst = graph_games::TriangleInstance::new(
        4,
        vec![(0, 1), (1, 0), (1, 2), (2, 3), (3, 0)],
    )
    .unwrap();
    let (g2, obj2, s) = triangle_to_game(&inst).unwrap();
    let res2 = solve_fast(&g2, &obj2).unwrap();
    assert!(res2.w1.contains(s), "hub is winning without a triangle");
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_millis(10), "took {elapsed:?}");
    println!("criterion 2: pass ({elapsed:?})");
}

#[test]
fn criterion_03_figure3_golden() {
    let started = Instant::now();
    let (g, obj) = load("figure3-ov.gbg");
    let res = solve_fast(&g, &obj).unwrap();
    assert!(res.w1.is_empty(), "orthogonal pair present");

    // Second set reduced to the all-ones vector: nothing is orthogonal.
    let inst = graph_games::OvInstance::new(
        3,
        vec![
            graph_games::OvInstance::vector(&[1, 0, 0]),
            graph_games::OvInstance::vector(&[1, 1, 1]),
            graph_games::OvInstance::vector(&[0, 1, 1]),
        ],
        vec![graph_games::OvInstance::vector(&[1, 1, 1])],
    )
    .unwrap();
    let (g2, obj2, s) = ov_to_game(&inst).unwrap();
    let res2 = solve_fast(&g2, &obj2).unwrap();
    assert!(res2.w1.contains(s), "hub is winning without an orthogonal pair");
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_millis(10), "took {elapsed:?}");
    println!("criterion 3: pass ({elapsed:?})");
}

#[test]
fn criterion_04_three_way_equivalence() {
    let started = Instant::now();
    let corpus = genbuchi_corpus(1000, 50, 250, 4, 0x0401);
    let mut mismatches = 0;
    for (i, (g, obj)) in corpus.iter().enumerate() {
        let basic = solve_basic(g, obj).unwrap();
        let fast = solve_fast(g, obj).unwrap();
        let oracle = solve_via_buchi_reduction(g, obj).unwrap();
        if basic.w1 != fast.w1 || basic.w1 != oracle.w1 || basic.w2 != fast.w2 {
            eprintln!("instance {i}: partitions diverge");
            mismatches += 1;
        }
    }
    let elapsed = started.elapsed();
    assert_eq!(mismatches, 0);
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!("criterion 4: pass (1000 instances, 3 solvers agree, {elapsed:?})");
}

#[test]
fn criterion_05_gr1_equivalence_and_inclusions() {
    let started = Instant::now();
    let corpus = gr1_corpus(500, 40, 3, 0x0502);
    for (i, (g, obj)) in corpus.iter().enumerate() {
        let basic = solve_gr1_basic(g, obj).unwrap();
        let fast = solve_gr1_fast(g, obj).unwrap();
        assert_eq!(basic.w1, fast.w1, "instance {i}: partitions diverge");

        // Determinacy.
        assert!(basic.w1.is_disjoint(&basic.w2), "instance {i}");
        assert_eq!(basic.w1.len() + basic.w2.len(), g.n(), "instance {i}");

        // Winning the guarantees outright wins the implication.
        let guarantees =
            GenBuchiObjective::from_sets(obj.guarantees().to_vec()).unwrap();
        let only = solve_basic(g, &guarantees).unwrap();
        assert!(only.w1.is_subset(&basic.w1), "instance {i}: guarantee-only inclusion");

        // Forcing some assumption to fail also wins: the assumption player's
        // losing region on the swapped arena is player-1 GR(1) territory.
        let swapped = g.swap_players();
        let assumptions =
            GenBuchiObjective::from_sets(obj.assumptions().to_vec()).unwrap();
        let swap_res = solve_basic(&swapped, &assumptions).unwrap();
        assert!(swap_res.w2.is_subset(&basic.w1), "instance {i}: assumption-violation inclusion");
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!("criterion 5: pass (500 instances, {elapsed:?})");
}

#[test]
fn criterion_06_reduction_soundness() {
    let started = Instant::now();
    for seed in 0..200u64 {
        let n = 3 + (seed as usize % 28);
        let p = [0.05, 0.1, 0.2, 0.4][seed as usize % 4];
        let inst = gen_random_triangle(n, p, 0x0601 ^ seed);
        let expect = brute_force_triangle(&inst);
        let got = solve_triangle_instance(&inst, ReductionSolver::Fast).unwrap();
        assert_eq!(expect, got, "triangle seed {seed}");
    }
    for seed in 0..200u64 {
        let nvec = 1 + (seed as usize % 20);
        let dim = 1 + (seed as usize % 6);
        let density = [0.2, 0.4, 0.6, 0.8][seed as usize % 4];
        let inst = gen_random_ov(nvec, dim, density, 0x0602 ^ seed);
        let expect = brute_force_ov(&inst);
        let got = solve_ov_instance(&inst, ReductionSolver::Fast).unwrap();
        assert_eq!(expect, got, "ov seed {seed}");
    }
    let elapsed = started.elapsed();
    println!("criterion 6: pass (200 + 200 round trips, {elapsed:?})");
}

#[test]
fn criterion_07_progress_measure_properties() {
    let started = Instant::now();

    // Dominion containment against exhaustive enumeration on tiny games,
    // plus the fixed-point scan through the public primitives.
    let small = genbuchi_corpus(300, 8, 30, 3, 0x0701);
    for (i, (g, obj)) in small.iter().enumerate() {
        let alive = VertexSet::full(g.n());
        for h in [1u32, 2, 4, g.n() as u32] {
            let h = h.min(g.n() as u32);
            let dom = lift_dominion(g, obj, h, &alive).unwrap();
            for d in brute_force_small_dominions(g, obj, h as usize).unwrap() {
                assert!(
                    d.is_subset(&dom.set),
                    "instance {i}, h={h}: enumerated dominion {d:?} not contained"
                );
            }
            let mut pm = ProgressMeasure::new(g, obj, h, &alive).unwrap();
            pm.run(graph_games::LiftOrder::Fifo);
            let rho = pm.rho_table();
            for v in alive.iter() {
                for ell in 0..obj.k() {
                    assert_eq!(
                        rho.rho(v, ell),
                        pm.incr(v, ell, pm.best(v, ell)),
                        "instance {i}, h={h}: fixed point fails at ({v},{ell})"
                    );
                }
            }
        }
    }

    // With h = n the finite region is the full winning set.
    let larger = genbuchi_corpus(300, 50, 250, 4, 0x0702);
    for (i, (g, obj)) in larger.iter().enumerate() {
        let alive = VertexSet::full(g.n());
        let dom = lift_dominion(g, obj, g.n() as u32, &alive).unwrap();
        let basic = solve_basic(g, obj).unwrap();
        assert_eq!(dom.set, basic.w1, "instance {i}: lift(n) vs direct solve");
    }
    let elapsed = started.elapsed();
    println!("criterion 7: pass (300 + 300 instances, {elapsed:?})");
}

#[test]
fn criterion_08_trace_laws() {
    let started = Instant::now();
    let corpus = genbuchi_corpus(400, 50, 250, 4, 0x0801);
    for (i, (g, obj)) in corpus.iter().enumerate() {
        let fast = solve_fast(g, obj).unwrap();
        for rec in &fast.trace {
            if let Some(level) = rec.level {
                if level > 1 {
                    assert!(
                        rec.d_set.len() > 1 << (level - 1),
                        "instance {i}: removal of {} vertices found at level {level}",
                        rec.d_set.len()
                    );
                }
            }
        }
        let basic = solve_basic(g, obj).unwrap();
        let b1 = obj.target(0).len();
        assert!(
            basic.iterations <= 2 * b1 + 2,
            "instance {i}: {} iterations for b1={b1}",
            basic.iterations
        );
    }

    let gr1s = gr1_corpus(300, 40, 3, 0x0802);
    for (i, (g, obj)) in gr1s.iter().enumerate() {
        let fast = solve_gr1_fast(g, obj).unwrap();
        let kmax = ceil_sqrt(g.n());
        for rec in &fast.trace {
            match rec.source {
                DominionSource::Large => assert!(
                    rec.d_set.len() > kmax,
                    "instance {i}: large-path removal of {} vertices with kmax={kmax}",
                    rec.d_set.len()
                ),
                DominionSource::Small { level } => {
                    if level > 1 {
                        assert!(
                            rec.d_set.len() > 1 << (level - 1),
                            "instance {i}: small removal of {} at level {level}",
                            rec.d_set.len()
                        );
                    }
                }
            }
        }
    }
    let elapsed = started.elapsed();
    println!("criterion 8: pass (size and iteration laws hold, {elapsed:?})");
}

#[test]
fn criterion_09_certification() {
    let started = Instant::now();

    let corpus = genbuchi_corpus(250, 40, 160, 3, 0x0901);
    let mut mutants = 0usize;
    let mut gb_pairs = Vec::new();
    for (i, (g, obj)) in corpus.iter().enumerate() {
        let res = solve_fast(g, obj).unwrap();
        let (strategy, cert) = extract_genbuchi_strategies(&res, g, obj).unwrap();
        check_p1_genbuchi(&strategy, g, obj, &res.w1)
            .unwrap_or_else(|ce| panic!("instance {i}: strategy rejected: {ce}"));
        check_p2_genbuchi(&cert, g, obj)
            .unwrap_or_else(|ce| panic!("instance {i}: certificate rejected: {ce}"));
        gb_pairs.push((i, strategy, cert));
    }
    for (i, strategy, cert) in &gb_pairs {
        let (g, obj) = &corpus[*i];
        for mutation in common::genbuchi_mutations(g, obj, strategy, cert) {
            match mutation {
                GbMutation::Strategy(bad, label) => {
                    assert!(
                        check_p1_genbuchi(&bad, g, obj, &strategy.region).is_err(),
                        "instance {i}: accepted mutant strategy ({label})"
                    );
                }
                GbMutation::Certificate(bad, label) => {
                    assert!(
                        check_p2_genbuchi(&bad, g, obj).is_err(),
                        "instance {i}: accepted mutant certificate ({label})"
                    );
                }
            }
            mutants += 1;
        }
    }

    let gr1s = gr1_corpus(120, 30, 3, 0x0902);
    for (i, (g, obj)) in gr1s.iter().enumerate() {
        let res = solve_gr1_fast(g, obj).unwrap();
        let (strategy, cert) = extract_gr1_strategies(&res, g, obj).unwrap();
        check_p1_gr1(&strategy, g, obj, &res.w1)
            .unwrap_or_else(|ce| panic!("instance {i}: GR(1) strategy rejected: {ce}"));
        check_p2_gr1(&cert, g, obj)
            .unwrap_or_else(|ce| panic!("instance {i}: GR(1) certificate rejected: {ce}"));
        for mutation in common::gr1_mutations(g, obj, &strategy, &cert) {
            match mutation {
                Gr1Mutation::Strategy(bad, label) => {
                    assert!(
                        check_p1_gr1(&bad, g, obj, &res.w1).is_err(),
                        "instance {i}: accepted mutant GR(1) strategy ({label})"
                    );
                }
                Gr1Mutation::Certificate(bad, label) => {
                    assert!(
                        check_p2_gr1(&bad, g, obj).is_err(),
                        "instance {i}: accepted mutant GR(1) certificate ({label})"
                    );
                }
            }
            mutants += 1;
        }
    }
    assert!(mutants >= 500, "only {mutants} mutations were applicable");
    let elapsed = started.elapsed();
    println!("criterion 9: pass (all witnesses accepted, {mutants} mutants rejected, {elapsed:?})");
}

#[test]
fn criterion_10_performance_smoke() {
    // Dense instance: a random all-player-1 core of ~1e6 edges plus a
    // 200-trap peeling tail, 2000 vertices and 10 target sets in total.
    let tail = 200;
    let core_n = 2000 - 1 - 2 * tail;
    let (g, obj) = gen_peeling_game(core_n, 1_000_000, 10, tail, 0x0a01);
    assert_eq!(g.n(), 2000);
    assert!(g.m() >= 1_000_000);

    // Best of two runs apiece, to keep scheduler noise out of the check.
    let time_of = |solve: &dyn Fn() -> graph_games::SolveResult| {
        let mut best = Duration::MAX;
        let mut result = None;
        for _ in 0..2 {
            let started = Instant::now();
            let res = solve();
            best = best.min(started.elapsed());
            result = Some(res);
        }
        (result.unwrap(), best)
    };
    let (fast, fast_time) = time_of(&|| solve_fast(&g, &obj).unwrap());
    let (basic, basic_time) = time_of(&|| solve_basic(&g, &obj).unwrap());

    assert_eq!(fast.w1, basic.w1);
    assert_eq!(fast.iterations, basic.iterations);
    assert!(
        fast_time < Duration::from_secs(60),
        "level-graph solve took {fast_time:?}"
    );
    assert!(
        fast_time <= basic_time,
        "direction check failed: fast {fast_time:?} vs basic {basic_time:?}"
    );
    println!(
        "criterion 10: pass (n=2000, m={}, fast {fast_time:?} <= basic {basic_time:?}, {} iterations)",
        g.m(),
        basic.iterations
    );
}

/// Level-graph soundness across the corpus: every recorded closed set passes
/// the closure check on the arena it was found in and avoids its witness.
#[test]
fn trace_soundness_supplement() {
    let corpus = genbuchi_corpus(200, 40, 160, 3, 0x0803);
    for (i, (g, obj)) in corpus.iter().enumerate() {
        let fast = solve_fast(g, obj).unwrap();
        for (idx, rec) in fast.trace.iter().enumerate() {
            let alive = alive_before(g.n(), fast.trace.iter().map(|r| &r.d_set), idx);
            assert!(
                is_closed(g, Player::P1, &rec.s_set, &alive),
                "instance {i}, record {idx}: set not closed"
            );
            assert!(
                rec.s_set.is_disjoint(obj.target(rec.witness)),
                "instance {i}, record {idx}: witness intersected"
            );
        }
    }
    let gr1s = gr1_corpus(150, 30, 3, 0x0804);
    for (i, (g, obj)) in gr1s.iter().enumerate() {
        for res in [solve_gr1_basic(g, obj).unwrap(), solve_gr1_fast(g, obj).unwrap()] {
            for (idx, rec) in res.trace.iter().enumerate() {
                let alive = alive_before(g.n(), res.trace.iter().map(|r| &r.d_set), idx);
                assert!(
                    is_closed(g, Player::P1, &rec.s_set, &alive),
                    "instance {i}, record {idx}: set not closed"
                );
                assert!(
                    rec.s_set.is_disjoint(obj.guarantee(rec.witness_guarantee)),
                    "instance {i}, record {idx}: witness guarantee intersected"
                );
            }
        }
    }
}
