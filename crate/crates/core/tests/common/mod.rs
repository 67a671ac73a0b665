//! Shared helpers for the integration suites: seeded corpora, an
//! independent fixed-point oracle for the lifter, trace replay, and
//! guaranteed-invalid mutations of strategies and certificates.
//!
//! Each test binary compiles this module separately, so not every helper is
//! used everywhere.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use graph_games::reductions::{gen_random_gr1, RandomGameSpec};
use graph_games::strategy::{Gr1Certificate, P1GenBuchiStrategy, P1Gr1Strategy, P2GenBuchiCertificate};
use graph_games::{
    gen_random_game, GameGraph, GenBuchiObjective, Gr1Objective, Player, VertexSet, INFINITE_RHO,
    NO_VERTEX,
};

/// Deterministic stream of generalized Büchi instances with `n <= max_n`,
/// `m <= max_m`, `k <= max_k`.
pub fn genbuchi_corpus(
    count: usize,
    max_n: usize,
    max_m: usize,
    max_k: usize,
    seed0: u64,
) -> Vec<(GameGraph, GenBuchiObjective)> {
    (0..count)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed0 ^ (i as u64).wrapping_mul(0x9e37_79b9));
            let n = rng.random_range(1..=max_n);
            let m_cap = max_m.min(n * n);
            let m = rng.random_range(n.min(m_cap)..=m_cap);
            let k = rng.random_range(1..=max_k);
            let owner_bias = [0.2, 0.5, 0.8][rng.random_range(0..3)];
            let spec = RandomGameSpec {
                n,
                m,
                k,
                owner_bias,
                target_size: (1, (n / 3).max(1)),
                seed: rng.random(),
            };
            gen_random_game(&spec)
        })
        .collect()
}

/// Deterministic stream of GR(1) instances.
pub fn gr1_corpus(
    count: usize,
    max_n: usize,
    max_k: usize,
    seed0: u64,
) -> Vec<(GameGraph, Gr1Objective)> {
    (0..count)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed0 ^ (i as u64).wrapping_mul(0x51_7cc1));
            let n = rng.random_range(1..=max_n);
            let m_cap = (5 * n).min(n * n);
            let m = rng.random_range(n.min(m_cap)..=m_cap);
            let k1 = rng.random_range(1..=max_k);
            let k2 = rng.random_range(1..=max_k);
            gen_random_gr1(n, m, k1, k2, rng.random())
        })
        .collect()
}

/// Reference implementation of the capped progress measure: plain Kleene
/// iteration of the monotone update until stabilization. Deliberately
/// independent of the worklist engine.
pub fn naive_lift(
    g: &GameGraph,
    obj: &GenBuchiObjective,
    h: u32,
    alive: &VertexSet,
) -> Vec<Vec<u32>> {
    let n = g.n();
    let k = obj.k();
    let n_alive = alive.len();
    let tsets: Vec<VertexSet> = obj
        .targets()
        .iter()
        .map(|t| {
            let mut s = t.clone();
            s.intersect_with(alive);
            s
        })
        .collect();
    let caps: Vec<u32> = tsets
        .iter()
        .map(|t| (h - 1).min((n_alive - t.len()) as u32))
        .collect();
    let mut rho = vec![vec![0u32; k]; n];
    loop {
        let mut changed = false;
        for v in alive.iter() {
            for ell in 0..k {
                let row = if tsets[ell].contains(v) { (ell + 1) % k } else { ell };
                let mut acc: Option<u32> = None;
                for &w in g.successors(v) {
                    if !alive.contains(w) {
                        continue;
                    }
                    let val = rho[w as usize][row];
                    acc = Some(match acc {
                        None => val,
                        Some(a) => {
                            if g.owner(v) == Player::P1 {
                                a.min(val)
                            } else {
                                a.max(val)
                            }
                        }
                    });
                }
                let best = acc.expect("legal sub-arena");
                let lifted = if tsets[ell].contains(v) {
                    if best != INFINITE_RHO {
                        0
                    } else {
                        INFINITE_RHO
                    }
                } else if best == INFINITE_RHO || best >= caps[ell] {
                    INFINITE_RHO
                } else {
                    best + 1
                };
                if lifted > rho[v as usize][ell] {
                    rho[v as usize][ell] = lifted;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    rho
}

/// Alive mask right before trace entry `idx` (entries are `d_set`s).
pub fn alive_before<'a, I: Iterator<Item = &'a VertexSet>>(n: usize, removals: I, idx: usize) -> VertexSet {
    let mut alive = VertexSet::full(n);
    for (i, d) in removals.enumerate() {
        if i >= idx {
            break;
        }
        alive.difference_with(d);
    }
    alive
}

/// A single-field corruption together with a label for diagnostics.
pub enum GbMutation {
    Strategy(P1GenBuchiStrategy, &'static str),
    Certificate(P2GenBuchiCertificate, &'static str),
}

/// Enumerates mutations of a valid (strategy, certificate) pair that a sound
/// checker must reject. Every emitted mutant violates a checked property by
/// construction.
pub fn genbuchi_mutations(
    g: &GameGraph,
    obj: &GenBuchiObjective,
    strategy: &P1GenBuchiStrategy,
    cert: &P2GenBuchiCertificate,
) -> Vec<GbMutation> {
    let mut out = Vec::new();
    let w1 = &strategy.region;
    let n = g.n();

    // Strategy: redirect the move at a vertex's initial (hence reachable)
    // counter state to a losing successor.
    for v in w1.iter() {
        if g.owner(v) != Player::P1 {
            continue;
        }
        let mut mem = strategy.init_memory[v as usize] as usize;
        let mut steps = 0;
        while steps < strategy.k && strategy.advance[mem].contains(v) {
            mem = (mem + 1) % strategy.k;
            steps += 1;
        }
        if strategy.moves[mem][v as usize] == NO_VERTEX {
            continue;
        }
        if let Some(&bad) = g.successors(v).iter().find(|&&u| !w1.contains(u)) {
            let mut s = strategy.clone();
            s.moves[mem][v as usize] = bad;
            out.push(GbMutation::Strategy(s, "move into losing region"));
            break;
        }
    }
    // Strategy: replace a move at a guaranteed-reachable state by a non-edge.
    'nonedge: for v in w1.iter() {
        if g.owner(v) != Player::P1 {
            continue;
        }
        let mut mem = 0usize;
        let mut steps = 0;
        while steps < strategy.k && strategy.advance[mem].contains(v) {
            mem = (mem + 1) % strategy.k;
            steps += 1;
        }
        if strategy.moves[mem][v as usize] == NO_VERTEX {
            continue;
        }
        for cand in 0..n as u32 {
            if !g.has_edge(v, cand) {
                let mut s = strategy.clone();
                s.moves[mem][v as usize] = cand;
                out.push(GbMutation::Strategy(s, "move along a non-edge"));
                break 'nonedge;
            }
        }
    }
    // Strategy: advance set outside its target.
    for m in 0..strategy.k {
        if let Some(vtx) = w1.iter().find(|&v| !obj.target(m).contains(v)) {
            let mut s = strategy.clone();
            s.advance[m].insert(vtx);
            out.push(GbMutation::Strategy(s, "advance set escapes its target"));
            break;
        }
    }
    // Strategy: claimed region mismatch.
    if w1.len() < n {
        let mut s = strategy.clone();
        let extra = (0..n as u32).find(|&v| !w1.contains(v)).unwrap();
        s.region.insert(extra);
        out.push(GbMutation::Strategy(s, "region differs from claim"));
    }

    // Certificate mutations need at least one record.
    if !cert.records.is_empty() {
        // Grow a removal set by a winning vertex: the recomputed attractor
        // cannot match.
        if let Some(extra) = w1.iter().next() {
            let mut c = cert.clone();
            c.records[0].d_set.insert(extra);
            out.push(GbMutation::Certificate(c, "removal set grown"));
        }
        // Shrink a removal set.
        {
            let mut c = cert.clone();
            let v = c.records[0].d_set.iter().next().unwrap();
            c.records[0].d_set.remove(v);
            out.push(GbMutation::Certificate(c, "removal set shrunk"));
        }
        // Witness pointed at an intersecting target.
        'witness: for (idx, rec) in cert.records.iter().enumerate() {
            for ell in 0..obj.k() {
                if !rec.s_set.is_disjoint(obj.target(ell)) {
                    let mut c = cert.clone();
                    c.records[idx].witness = ell;
                    out.push(GbMutation::Certificate(c, "witness intersects its set"));
                    break 'witness;
                }
            }
        }
        // Stay move redirected outside the closed set.
        'stay: for (idx, rec) in cert.records.iter().enumerate() {
            for (pos, &(v, _)) in rec.stay.iter().enumerate() {
                if let Some(&bad) = g.successors(v).iter().find(|&&u| !rec.s_set.contains(u)) {
                    let mut c = cert.clone();
                    c.records[idx].stay[pos].1 = bad;
                    out.push(GbMutation::Certificate(c, "stay move leaves the set"));
                    break 'stay;
                }
            }
        }
        // Attractor move redirected to a non-decreasing target (the source
        // vertex itself never decreases its own rank).
        'attr: for (idx, rec) in cert.records.iter().enumerate() {
            for (pos, &(v, _)) in rec.attr.iter().enumerate() {
                if g.has_edge(v, v) {
                    let mut c = cert.clone();
                    c.records[idx].attr[pos].1 = v;
                    out.push(GbMutation::Certificate(c, "attractor move without progress"));
                    break 'attr;
                }
            }
        }
        // Drop the final record: the union no longer matches.
        {
            let mut c = cert.clone();
            c.records.pop();
            out.push(GbMutation::Certificate(c, "record deleted"));
        }
    }
    // Claimed losing region toggled.
    {
        let mut c = cert.clone();
        if let Some(v) = (0..n as u32).next() {
            if c.claimed_w2.contains(v) {
                c.claimed_w2.remove(v);
            } else {
                c.claimed_w2.insert(v);
            }
            out.push(GbMutation::Certificate(c, "claimed region toggled"));
        }
    }
    out
}

pub enum Gr1Mutation {
    Strategy(P1Gr1Strategy, &'static str),
    Certificate(Gr1Certificate, &'static str),
}

pub fn gr1_mutations(
    g: &GameGraph,
    obj: &Gr1Objective,
    strategy: &P1Gr1Strategy,
    cert: &Gr1Certificate,
) -> Vec<Gr1Mutation> {
    let mut out = Vec::new();
    let w1 = &strategy.region;
    let n = g.n();

    for v in w1.iter() {
        if g.owner(v) != Player::P1 {
            continue;
        }
        let mut mem = 0usize;
        let mut steps = 0;
        while steps < strategy.k2 && strategy.advance[mem].contains(v) {
            mem = (mem + 1) % strategy.k2;
            steps += 1;
        }
        if strategy.moves[mem][v as usize] == NO_VERTEX {
            continue;
        }
        if let Some(&bad) = g.successors(v).iter().find(|&&u| !w1.contains(u)) {
            let mut s = strategy.clone();
            s.moves[mem][v as usize] = bad;
            out.push(Gr1Mutation::Strategy(s, "move into losing region"));
            break;
        }
    }
    'nonedge: for v in w1.iter() {
        if g.owner(v) != Player::P1 {
            continue;
        }
        let mut mem = 0usize;
        let mut steps = 0;
        while steps < strategy.k2 && strategy.advance[mem].contains(v) {
            mem = (mem + 1) % strategy.k2;
            steps += 1;
        }
        if strategy.moves[mem][v as usize] == NO_VERTEX {
            continue;
        }
        for cand in 0..n as u32 {
            if !g.has_edge(v, cand) {
                let mut s = strategy.clone();
                s.moves[mem][v as usize] = cand;
                out.push(Gr1Mutation::Strategy(s, "move along a non-edge"));
                break 'nonedge;
            }
        }
    }
    for c in 0..strategy.k2 {
        if let Some(vtx) = w1.iter().find(|&v| !obj.guarantee(c).contains(v)) {
            let mut s = strategy.clone();
            s.advance[c].insert(vtx);
            out.push(Gr1Mutation::Strategy(s, "advance set escapes its guarantee"));
            break;
        }
    }

    if !cert.records.is_empty() {
        if let Some(extra) = w1.iter().next() {
            let mut c = cert.clone();
            c.records[0].d_set.insert(extra);
            out.push(Gr1Mutation::Certificate(c, "removal set grown"));
        }
        {
            let mut c = cert.clone();
            let v = c.records[0].d_set.iter().next().unwrap();
            c.records[0].d_set.remove(v);
            out.push(Gr1Mutation::Certificate(c, "removal set shrunk"));
        }
        'witness: for (idx, rec) in cert.records.iter().enumerate() {
            for ell in 0..obj.k2() {
                if !rec.s_set.is_disjoint(obj.guarantee(ell)) {
                    let mut c = cert.clone();
                    c.records[idx].witness_guarantee = ell;
                    out.push(Gr1Mutation::Certificate(c, "witness intersects its set"));
                    break 'witness;
                }
            }
        }
        // Corrupt an inner witness move at a guaranteed-reachable state.
        'inner: for (idx, rec) in cert.records.iter().enumerate() {
            let inner = &rec.inner;
            for v in rec.s_set.iter() {
                if g.owner(v) != Player::P2 {
                    continue;
                }
                let mut mem = inner.init_memory[v as usize] as usize;
                let mut steps = 0;
                while steps < inner.k && inner.advance[mem].contains(v) {
                    mem = (mem + 1) % inner.k;
                    steps += 1;
                }
                if inner.moves[mem][v as usize] == NO_VERTEX {
                    continue;
                }
                for cand in 0..n as u32 {
                    if !g.has_edge(v, cand) {
                        let mut c = cert.clone();
                        c.records[idx].inner.moves[mem][v as usize] = cand;
                        out.push(Gr1Mutation::Certificate(c, "inner move along a non-edge"));
                        break 'inner;
                    }
                }
            }
        }
        {
            let mut c = cert.clone();
            c.records.pop();
            out.push(Gr1Mutation::Certificate(c, "record deleted"));
        }
    }
    {
        let mut c = cert.clone();
        if c.claimed_w2.contains(0) {
            c.claimed_w2.remove(0);
        } else {
            c.claimed_w2.insert(0);
        }
        out.push(Gr1Mutation::Certificate(c, "claimed region toggled"));
    }
    out
}
