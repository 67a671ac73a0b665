//! Winning-strategy extraction and structural certificate checking. The
//! checkers validate solver output without trusting solver internals: they
//! only build on the game model and the attractor kernel, replaying the
//! claimed structures and searching the strategy-restricted product for
//! violations.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::arena::{Arena, View};
use crate::attractor::attractor_on;
use crate::error::Error;
use crate::game::{
    DominionSource, GameGraph, GenBuchiObjective, Gr1Objective, Gr1SolveResult, Player,
    SolveResult, VertexSet, NO_VERTEX,
};
use crate::genbuchi::{solve_on, Algo};
use crate::progress::{lift_on_lists, RhoTable, INFINITE_RHO};

/// Memoryful winning strategy for the conjunction player: a cyclic counter
/// over the target sets, one move table per counter state, and per-counter
/// advance sets (subsets of the corresponding targets) whose visit bumps the
/// counter.
#[derive(Debug, Clone)]
pub struct P1GenBuchiStrategy {
    /// The player this strategy wins for (player 1 in the public solvers;
    /// the assumption player in GR(1) sub-certificates).
    pub player: Player,
    /// Claimed winning region the strategy is confined to.
    pub region: VertexSet,
    pub k: usize,
    /// Starting counter state per vertex (0-based).
    pub init_memory: Vec<u16>,
    /// `advance[m]` is a subset of target `m`; arriving on it advances the
    /// counter cyclically.
    pub advance: Vec<VertexSet>,
    /// `moves[m][v]` is the prescribed successor for strategy-player
    /// vertices, [`NO_VERTEX`] where unconstrained.
    pub moves: Vec<Vec<u32>>,
}

/// One replayable iteration of the opponent's certificate: the closed set
/// found, the target it avoids, its attractor, and the memoryless moves that
/// realize confinement and attraction.
#[derive(Debug, Clone)]
pub struct P2CertRecord {
    pub witness: usize,
    pub level: Option<u32>,
    pub s_set: VertexSet,
    pub d_set: VertexSet,
    /// Confinement moves for opponent vertices inside `s_set`.
    pub stay: Vec<(u32, u32)>,
    /// Rank-decreasing moves for opponent vertices on `d_set \ s_set`.
    pub attr: Vec<(u32, u32)>,
}

/// Certificate that the opponent of the conjunction player wins exactly
/// `claimed_w2`: an ordered list of replayable dominion removals.
#[derive(Debug, Clone)]
pub struct P2GenBuchiCertificate {
    /// The conjunction player the certificate refutes.
    pub player: Player,
    pub claimed_w2: VertexSet,
    pub records: Vec<P2CertRecord>,
}

/// Player-1 GR(1) strategy: a cyclic counter over the guarantee sets; per
/// counter state the moves combine a coBüchi-phase strategy outside the
/// guarantee attractor with the attractor strategy inside it.
#[derive(Debug, Clone)]
pub struct P1Gr1Strategy {
    pub region: VertexSet,
    pub k2: usize,
    /// `advance[c]` is a subset of guarantee `c`.
    pub advance: Vec<VertexSet>,
    pub moves: Vec<Vec<u32>>,
}

/// One replayable iteration of the GR(1) player-2 certificate.
#[derive(Debug, Clone)]
pub struct Gr1CertRecord {
    pub witness_guarantee: usize,
    pub source: DominionSource,
    pub s_set: VertexSet,
    pub d_set: VertexSet,
    /// Witness that the assumption player wins the conjunction of the
    /// assumption sets inside `s_set`.
    pub inner: P1GenBuchiStrategy,
    /// Rank-decreasing moves for player-2 vertices on `d_set \ s_set`.
    pub attr: Vec<(u32, u32)>,
}

#[derive(Debug, Clone)]
pub struct Gr1Certificate {
    pub claimed_w2: VertexSet,
    pub records: Vec<Gr1CertRecord>,
}

/// Lasso-shaped rejection witness: a stem (vertex path) and, for liveness
/// violations, the offending cycle. Structural violations leave the cycle
/// empty.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub reason: String,
    pub stem: Vec<u32>,
    pub cycle: Vec<u32>,
}

impl Counterexample {
    fn structural(reason: impl Into<String>) -> Counterexample {
        Counterexample {
            reason: reason.into(),
            stem: Vec::new(),
            cycle: Vec::new(),
        }
    }
}

impl std::fmt::Display for Counterexample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.reason)?;
        if !self.stem.is_empty() {
            write!(f, "; stem {:?}", self.stem)?;
        }
        if !self.cycle.is_empty() {
            write!(f, "; cycle {:?}", self.cycle)?;
        }
        Ok(())
    }
}

fn full_view<'a>(g: &'a GameGraph, alive: &'a VertexSet) -> View<'a> {
    View {
        owner: g.owners(),
        out: g.out_lists(),
        inn: g.in_lists(),
        alive,
        outdeg: None,
    }
}

/// Advances a counter over the advance sets while the current vertex keeps
/// membership, at most one full cycle. Returns the new counter and the
/// number of steps taken (`k` steps means the vertex is in every set).
fn advance_memory(advance: &[VertexSet], start: usize, v: u32) -> (usize, usize) {
    let k = advance.len();
    let mut m = start;
    let mut steps = 0;
    while steps < k && advance[m].contains(v) {
        m = (m + 1) % k;
        steps += 1;
    }
    (m, steps)
}

fn lookup(map: &[(u32, u32)], v: u32) -> Option<u32> {
    map.iter().find(|&&(a, _)| a == v).map(|&(_, b)| b)
}

/// Core product check: does `strategy` confine plays to `claimed` on the
/// sub-arena `alive`, and does every adversarial cycle advance the counter
/// through all `k` states (thereby visiting every target set)?
pub(crate) fn check_witness(
    g: &GameGraph,
    alive: &VertexSet,
    targets: &[VertexSet],
    strategy: &P1GenBuchiStrategy,
    claimed: &VertexSet,
) -> Result<(), Counterexample> {
    let n = g.n();
    let k = targets.len();
    if strategy.k != k || strategy.advance.len() != k || strategy.moves.len() != k {
        return Err(Counterexample::structural(format!(
            "strategy has {} counter states, objective has {k}",
            strategy.k
        )));
    }
    if strategy.init_memory.len() != n {
        return Err(Counterexample::structural("initial-memory table has wrong length"));
    }
    if &strategy.region != claimed {
        return Err(Counterexample::structural(
            "strategy region differs from the claimed winning set",
        ));
    }
    if !claimed.is_subset(alive) {
        return Err(Counterexample::structural("claimed region leaves the arena"));
    }
    for m in 0..k {
        if !strategy.advance[m].is_subset(&targets[m]) {
            return Err(Counterexample::structural(format!(
                "advance set {m} is not a subset of its target set"
            )));
        }
    }

    let states = n * k;
    let mut visited = FixedBitSet::with_capacity(states);
    let mut parent: Vec<usize> = vec![usize::MAX; states];
    let mut queue: VecDeque<usize> = VecDeque::new();
    let stem_to = |state: usize, parent: &[usize]| -> Vec<u32> {
        let mut path = Vec::new();
        let mut cur = state;
        loop {
            path.push((cur / k) as u32);
            if parent[cur] == usize::MAX || parent[cur] == cur {
                break;
            }
            cur = parent[cur];
        }
        path.reverse();
        path
    };

    for v in claimed.iter() {
        let m0 = strategy.init_memory[v as usize] as usize;
        if m0 >= k {
            return Err(Counterexample::structural(format!(
                "initial memory {m0} out of range at vertex {v}"
            )));
        }
        let (m, _) = advance_memory(&strategy.advance, m0, v);
        let s = v as usize * k + m;
        if !visited.contains(s) {
            visited.insert(s);
            parent[s] = s;
            queue.push_back(s);
        }
    }

    // Product edges; the flag marks edges whose arrival bumped the counter.
    let mut edges: Vec<Vec<(usize, bool)>> = vec![Vec::new(); states];
    while let Some(state) = queue.pop_front() {
        let v = (state / k) as u32;
        let m = state % k;
        let succ: Vec<u32> = if g.owner(v) == strategy.player {
            let mv = strategy.moves[m][v as usize];
            if mv == NO_VERTEX {
                return Err(Counterexample {
                    reason: format!("no move prescribed at vertex {v} in counter state {m}"),
                    stem: stem_to(state, &parent),
                    cycle: Vec::new(),
                });
            }
            if !g.has_edge(v, mv) {
                return Err(Counterexample {
                    reason: format!("prescribed move {v} -> {mv} is not an edge"),
                    stem: stem_to(state, &parent),
                    cycle: Vec::new(),
                });
            }
            if !alive.contains(mv) {
                return Err(Counterexample {
                    reason: format!("prescribed move {v} -> {mv} leaves the arena"),
                    stem: stem_to(state, &parent),
                    cycle: Vec::new(),
                });
            }
            vec![mv]
        } else {
            g.successors(v)
                .iter()
                .copied()
                .filter(|&u| alive.contains(u))
                .collect()
        };
        for u in succ {
            if !claimed.contains(u) {
                let mut stem = stem_to(state, &parent);
                stem.push(u);
                return Err(Counterexample {
                    reason: format!("play escapes the claimed region via {v} -> {u}"),
                    stem,
                    cycle: Vec::new(),
                });
            }
            let (m2, steps) = advance_memory(&strategy.advance, m, u);
            let next = u as usize * k + m2;
            edges[state].push((next, steps > 0));
            if !visited.contains(next) {
                visited.insert(next);
                parent[next] = state;
                queue.push_back(next);
            }
        }
    }

    // Any cycle through non-advancing edges starves the counter.
    if let Some((entry, cycle)) = find_cycle(states, &visited, |s| {
        edges[s].iter().filter(|&&(_, adv)| !adv).map(|&(t, _)| t)
    }) {
        return Err(Counterexample {
            reason: format!("cycle never advances the counter past state {}", entry % k),
            stem: stem_to(entry, &parent),
            cycle: cycle.iter().map(|&s| (s / k) as u32).collect(),
        });
    }
    Ok(())
}

/// Iterative DFS cycle detection over the visited states; returns the cycle
/// entry state and the cycle itself.
fn find_cycle<I, F>(states: usize, visited: &FixedBitSet, succ: F) -> Option<(usize, Vec<usize>)>
where
    I: Iterator<Item = usize>,
    F: Fn(usize) -> I,
{
    // 0 = unseen, 1 = on stack, 2 = done.
    let mut color = vec![0u8; states];
    for start in visited.ones() {
        if color[start] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, Vec<usize>, usize)> = Vec::new();
        let start_succ: Vec<usize> = succ(start).collect();
        color[start] = 1;
        stack.push((start, start_succ, 0));
        let mut path = vec![start];
        loop {
            let Some(top) = stack.last() else {
                break;
            };
            let (state, ref succs, idx) = *top;
            let succs_len = succs.len();
            if idx < succs_len {
                let next = stack.last().unwrap().1[idx];
                stack.last_mut().unwrap().2 += 1;
                match color[next] {
                    0 => {
                        color[next] = 1;
                        let next_succ: Vec<usize> = succ(next).collect();
                        stack.push((next, next_succ, 0));
                        path.push(next);
                    }
                    1 => {
                        let pos = path.iter().position(|&s| s == next).unwrap();
                        return Some((next, path[pos..].to_vec()));
                    }
                    _ => {}
                }
            } else {
                color[state] = 2;
                stack.pop();
                path.pop();
            }
        }
    }
    None
}

/// Verifies a player-1 strategy against the full arena.
pub fn check_p1_genbuchi(
    strategy: &P1GenBuchiStrategy,
    g: &GameGraph,
    obj: &GenBuchiObjective,
    claimed_w1: &VertexSet,
) -> Result<(), Counterexample> {
    if strategy.player != Player::P1 {
        return Err(Counterexample::structural(
            "a winning-set witness must belong to player 1",
        ));
    }
    let alive = VertexSet::full(g.n());
    check_witness(g, &alive, obj.targets(), strategy, claimed_w1)
}

/// Internal uniform shape for certificate replay.
struct ReplayRecord<'a> {
    witness: usize,
    s_set: &'a VertexSet,
    d_set: &'a VertexSet,
    stay: &'a [(u32, u32)],
    attr: &'a [(u32, u32)],
    inner: Option<&'a P1GenBuchiStrategy>,
}

/// Shared replay for generalized Büchi and GR(1) certificates. Each record's
/// set must be closed for `buchi_player` on the current arena, avoid its
/// witness target, and equal the recomputed attractor; the recorded moves
/// (or the inner witness, when `gr1_assumptions` is given) must realize the
/// opponent's win. Accepts iff the removals add up to `claimed_w2`.
fn check_opponent_records(
    g: &GameGraph,
    avoid_targets: &[VertexSet],
    buchi_player: Player,
    records: &[ReplayRecord<'_>],
    claimed_w2: &VertexSet,
    gr1_assumptions: Option<&[VertexSet]>,
) -> Result<(), Counterexample> {
    let n = g.n();
    let opp = buchi_player.opponent();
    let mut alive = VertexSet::full(n);
    let mut union = VertexSet::empty(n);
    for (idx, rec) in records.iter().enumerate() {
        let fail =
            |reason: String| Err(Counterexample::structural(format!("record {idx}: {reason}")));
        if rec.witness >= avoid_targets.len() {
            return fail(format!("witness index {} out of range", rec.witness));
        }
        if rec.s_set.is_empty() {
            return fail("empty dominion".into());
        }
        if !rec.s_set.is_subset(&alive) {
            return fail("dominion contains already-removed vertices".into());
        }
        if !rec.s_set.is_disjoint(&avoid_targets[rec.witness]) {
            return fail(format!("dominion intersects avoided set {}", rec.witness));
        }
        let view = full_view(g, &alive);
        if !crate::attractor::is_closed_on(&view, buchi_player, rec.s_set) {
            return fail(format!("set is not closed for {buchi_player}"));
        }
        if let Some(assumptions) = gr1_assumptions {
            let Some(inner) = rec.inner else {
                return fail("missing inner witness".into());
            };
            if inner.player != opp {
                return fail("inner witness belongs to the wrong player".into());
            }
            check_witness(g, &alive, assumptions, inner, rec.s_set).map_err(|ce| Counterexample {
                reason: format!("record {idx}: inner witness rejected: {}", ce.reason),
                stem: ce.stem,
                cycle: ce.cycle,
            })?;
        } else {
            // Confinement moves for the opponent inside the closed set.
            for v in rec.s_set.iter() {
                if g.owner(v) != opp {
                    continue;
                }
                let Some(mv) = lookup(rec.stay, v) else {
                    return fail(format!("no stay move for vertex {v}"));
                };
                if !g.has_edge(v, mv) || !alive.contains(mv) || !rec.s_set.contains(mv) {
                    return fail(format!("stay move {v} -> {mv} leaves the set"));
                }
            }
            for &(v, _) in rec.stay {
                if !rec.s_set.contains(v) || g.owner(v) != opp {
                    return fail(format!("stray stay entry at vertex {v}"));
                }
            }
        }
        let att = attractor_on(&view, opp, rec.s_set, false);
        if &att.members != rec.d_set {
            return fail("recorded attractor does not match the recomputed one".into());
        }
        for v in rec.d_set.iter() {
            if g.owner(v) != opp || rec.s_set.contains(v) {
                continue;
            }
            let Some(mv) = lookup(rec.attr, v) else {
                return fail(format!("no attractor move for vertex {v}"));
            };
            if !g.has_edge(v, mv) || !alive.contains(mv) {
                return fail(format!("attractor move {v} -> {mv} is not playable"));
            }
            if att.rank_of(mv) >= att.rank_of(v) {
                return fail(format!("attractor move {v} -> {mv} does not decrease rank"));
            }
        }
        for &(v, _) in rec.attr {
            if !rec.d_set.contains(v) || rec.s_set.contains(v) || g.owner(v) != opp {
                return fail(format!("stray attractor entry at vertex {v}"));
            }
        }
        alive.difference_with(rec.d_set);
        union.union_with(rec.d_set);
    }
    if &union != claimed_w2 {
        return Err(Counterexample::structural(
            "removed dominions do not add up to the claimed losing region",
        ));
    }
    Ok(())
}

/// Replays an opponent certificate for a conjunction objective.
pub fn check_p2_genbuchi(
    cert: &P2GenBuchiCertificate,
    g: &GameGraph,
    obj: &GenBuchiObjective,
) -> Result<(), Counterexample> {
    if cert.player != Player::P1 {
        return Err(Counterexample::structural(
            "a losing-set certificate must refute player 1",
        ));
    }
    let records: Vec<ReplayRecord<'_>> = cert
        .records
        .iter()
        .map(|rec| ReplayRecord {
            witness: rec.witness,
            s_set: &rec.s_set,
            d_set: &rec.d_set,
            stay: &rec.stay,
            attr: &rec.attr,
            inner: None,
        })
        .collect();
    check_opponent_records(g, obj.targets(), cert.player, &records, &cert.claimed_w2, None)
}

/// Replays a GR(1) opponent certificate: each record must avoid its witness
/// guarantee, be player-1 closed, match its recomputed attractor, and carry
/// an accepted inner witness for the assumption player.
pub fn check_p2_gr1(
    cert: &Gr1Certificate,
    g: &GameGraph,
    obj: &Gr1Objective,
) -> Result<(), Counterexample> {
    let records: Vec<ReplayRecord<'_>> = cert
        .records
        .iter()
        .map(|rec| ReplayRecord {
            witness: rec.witness_guarantee,
            s_set: &rec.s_set,
            d_set: &rec.d_set,
            stay: &[],
            attr: &rec.attr,
            inner: Some(&rec.inner),
        })
        .collect();
    check_opponent_records(
        g,
        obj.guarantees(),
        Player::P1,
        &records,
        &cert.claimed_w2,
        Some(obj.assumptions()),
    )
}

/// Extracts both players' witnesses from a generalized Büchi solve result.
pub fn extract_genbuchi_strategies(
    result: &SolveResult,
    g: &GameGraph,
    obj: &GenBuchiObjective,
) -> Result<(P1GenBuchiStrategy, P2GenBuchiCertificate), Error> {
    let strategy = conjunction_strategy(g, obj.targets(), Player::P1, &result.w1)?;
    let cert = opponent_certificate(g, Player::P1, result)?;
    Ok((strategy, cert))
}

/// Builds the conjunction player's counter strategy on `region` from the
/// per-target attractor strategies of the final arena.
fn conjunction_strategy(
    g: &GameGraph,
    targets: &[VertexSet],
    player: Player,
    region: &VertexSet,
) -> Result<P1GenBuchiStrategy, Error> {
    let n = g.n();
    let k = targets.len();
    let mut moves = vec![vec![NO_VERTEX; n]; k];
    let mut advance = Vec::with_capacity(k);
    for (m, target) in targets.iter().enumerate() {
        let mut seed = target.clone();
        seed.intersect_with(region);
        if !region.is_empty() {
            let view = full_view(g, region);
            let att = attractor_on(&view, player, &seed, true);
            if &att.members != region {
                return Err(Error::Inconsistent(format!(
                    "target {m} does not attract the whole claimed region"
                )));
            }
            for v in region.iter() {
                if g.owner(v) != player {
                    continue;
                }
                moves[m][v as usize] = if target.contains(v) {
                    // Queried only when the vertex sits in every advance
                    // set; any move inside the region keeps the play winning.
                    view.out_alive(v).next().ok_or_else(|| {
                        Error::Inconsistent(format!("vertex {v} is stuck in the region"))
                    })?
                } else {
                    att.strategy[v as usize]
                };
            }
        }
        advance.push(seed);
    }
    Ok(P1GenBuchiStrategy {
        player,
        region: region.clone(),
        k,
        init_memory: vec![0; n],
        advance,
        moves,
    })
}

/// Rebuilds the opponent's certificate by replaying the solve trace,
/// recomputing each attractor to harvest ranks and moves.
fn opponent_certificate(
    g: &GameGraph,
    buchi_player: Player,
    result: &SolveResult,
) -> Result<P2GenBuchiCertificate, Error> {
    let n = g.n();
    let opp = buchi_player.opponent();
    let mut alive = VertexSet::full(n);
    let mut records = Vec::with_capacity(result.trace.len());
    for rec in &result.trace {
        let view = full_view(g, &alive);
        let mut stay = Vec::new();
        for v in rec.s_set.iter() {
            if g.owner(v) != opp {
                continue;
            }
            let mv = view
                .out_alive(v)
                .find(|&u| rec.s_set.contains(u))
                .ok_or_else(|| {
                    Error::Inconsistent(format!("vertex {v} has no stay move inside its dominion"))
                })?;
            stay.push((v, mv));
        }
        let att = attractor_on(&view, opp, &rec.s_set, true);
        if att.members != rec.d_set {
            return Err(Error::Inconsistent(
                "trace attractor does not match the recorded removal".into(),
            ));
        }
        let mut attr = Vec::new();
        for v in rec.d_set.iter() {
            if g.owner(v) == opp && !rec.s_set.contains(v) {
                attr.push((v, att.strategy[v as usize]));
            }
        }
        records.push(P2CertRecord {
            witness: rec.witness,
            level: rec.level,
            s_set: rec.s_set.clone(),
            d_set: rec.d_set.clone(),
            stay,
            attr,
        });
        alive.difference_with(&rec.d_set);
    }
    if alive != result.w1 {
        return Err(Error::Inconsistent(
            "trace removals do not reproduce the winning partition".into(),
        ));
    }
    Ok(P2GenBuchiCertificate {
        player: buchi_player,
        claimed_w2: result.w2.clone(),
        records,
    })
}

/// Extracts the measure-backed witness for a dominion found by the lifter:
/// per-row decreasing moves, rank-zero advance sets, and per-vertex initial
/// rows (the finite region need not be finite in every row).
pub(crate) fn measure_witness(
    owner: &[Player],
    out: &[Vec<u32>],
    alive: &VertexSet,
    buchi_player: Player,
    targets_masked: &[VertexSet],
    rho: &RhoTable,
    region: &VertexSet,
) -> P1GenBuchiStrategy {
    let n = owner.len();
    let k = targets_masked.len();
    let mut init_memory = vec![0u16; n];
    let mut advance = vec![VertexSet::empty(n); k];
    let mut moves = vec![vec![NO_VERTEX; n]; k];
    for v in region.iter() {
        for ell in 0..k {
            if rho.rho(v, ell) != INFINITE_RHO {
                init_memory[v as usize] = ell as u16;
                break;
            }
        }
        for ell in 0..k {
            if rho.rho(v, ell) == 0 {
                advance[ell].insert(v);
            }
            if owner[v as usize] != buchi_player {
                continue;
            }
            // Head for the successor with the lowest finite rank in this
            // row. At the fixed point that descends strictly from finite
            // ranks, and at counter states entered through a rank-0 visit
            // of the previous row a finite-rank successor always exists.
            let mut best: Option<(u32, u32)> = None;
            for &w in &out[v as usize] {
                if !alive.contains(w) {
                    continue;
                }
                let rw = rho.rho(w, ell);
                if rw != INFINITE_RHO && best.map_or(true, |b| (rw, w) < b) {
                    best = Some((rw, w));
                }
            }
            if let Some((_, w)) = best {
                moves[ell][v as usize] = w;
            }
        }
    }
    P1GenBuchiStrategy {
        player: buchi_player,
        region: region.clone(),
        k,
        init_memory,
        advance,
        moves,
    }
}

/// Extracts both players' witnesses from a GR(1) solve result. The trace is
/// replayed; small-dominion records re-run the bounded lifter to recover
/// their rank tables.
pub fn extract_gr1_strategies(
    result: &Gr1SolveResult,
    g: &GameGraph,
    obj: &Gr1Objective,
) -> Result<(P1Gr1Strategy, Gr1Certificate), Error> {
    let strategy = gr1_p1_strategy(result, g, obj)?;
    let cert = gr1_certificate(result, g, obj)?;
    Ok((strategy, cert))
}

fn gr1_p1_strategy(
    result: &Gr1SolveResult,
    g: &GameGraph,
    obj: &Gr1Objective,
) -> Result<P1Gr1Strategy, Error> {
    let n = g.n();
    let k2 = obj.k2();
    let region = &result.w1;
    let mut moves = vec![vec![NO_VERTEX; n]; k2];
    let mut advance = Vec::with_capacity(k2);
    for c in 0..k2 {
        let mut seed = obj.guarantee(c).clone();
        seed.intersect_with(region);
        advance.push(seed.clone());
        if region.is_empty() {
            continue;
        }
        let view = full_view(g, region);
        let att = attractor_on(&view, Player::P1, &seed, true);
        for v in att.members.iter() {
            if g.owner(v) != Player::P1 {
                continue;
            }
            moves[c][v as usize] = if att.rank_of(v) > 0 {
                att.strategy[v as usize]
            } else {
                view.out_alive(v).next().ok_or_else(|| {
                    Error::Inconsistent(format!("vertex {v} is stuck in the region"))
                })?
            };
        }
        let mut phase_alive = region.clone();
        phase_alive.difference_with(&att.members);
        if phase_alive.is_empty() {
            continue;
        }
        // The assumption player must win nowhere in the remaining phase
        // arena; its removal layers give player 1's coBüchi moves.
        let inner = solve_on(g, Player::P2, obj.assumptions(), &phase_alive, Algo::Fast);
        if !inner.w_buchi.is_empty() {
            return Err(Error::Inconsistent(format!(
                "assumption player still wins inside phase {c} of the claimed region"
            )));
        }
        let mut layer_alive = phase_alive;
        for rec in &inner.trace {
            let layer_view = full_view(g, &layer_alive);
            for v in rec.s_set.iter() {
                if g.owner(v) != Player::P1 {
                    continue;
                }
                let mv = layer_view
                    .out_alive(v)
                    .find(|&u| rec.s_set.contains(u))
                    .ok_or_else(|| {
                        Error::Inconsistent(format!("vertex {v} has no confinement move"))
                    })?;
                moves[c][v as usize] = mv;
            }
            let att2 = attractor_on(&layer_view, Player::P1, &rec.s_set, true);
            if att2.members != rec.d_set {
                return Err(Error::Inconsistent("inner trace replay diverged".into()));
            }
            for v in rec.d_set.iter() {
                if g.owner(v) == Player::P1 && !rec.s_set.contains(v) {
                    moves[c][v as usize] = att2.strategy[v as usize];
                }
            }
            layer_alive.difference_with(&rec.d_set);
        }
        if !layer_alive.is_empty() {
            return Err(Error::Inconsistent(
                "inner trace does not cover the coBüchi phase".into(),
            ));
        }
    }
    Ok(P1Gr1Strategy {
        region: region.clone(),
        k2,
        advance,
        moves,
    })
}

fn gr1_certificate(
    result: &Gr1SolveResult,
    g: &GameGraph,
    obj: &Gr1Objective,
) -> Result<Gr1Certificate, Error> {
    let n = g.n();
    let mut arena = Arena::new(g, &VertexSet::full(n));
    let mut records = Vec::with_capacity(result.trace.len());
    for rec in &result.trace {
        let inner = match rec.source {
            DominionSource::Large => {
                // The dominion is the assumption player's winning set on the
                // masked sub-arena; rebuild its counter strategy there.
                let masked_targets: Vec<VertexSet> = obj
                    .assumptions()
                    .iter()
                    .map(|t| {
                        let mut s = t.clone();
                        s.intersect_with(&rec.s_set);
                        s
                    })
                    .collect();
                conjunction_strategy(g, &masked_targets, Player::P2, &rec.s_set)?
            }
            DominionSource::Small { level } => {
                let lvl = arena.build_level(level, Player::P1);
                let mut mask = arena.alive.clone();
                mask.difference_with(&rec.y_set);
                let targets: Vec<VertexSet> = obj
                    .assumptions()
                    .iter()
                    .map(|t| {
                        let mut s = t.clone();
                        s.intersect_with(&mask);
                        s
                    })
                    .collect();
                let h = (1u32 << level).min(mask.len() as u32);
                let (x_set, rho) = lift_on_lists(
                    &arena.owner,
                    &lvl.out,
                    &lvl.inn,
                    mask.clone(),
                    Player::P2,
                    &targets,
                    h,
                );
                if x_set != rec.s_set {
                    return Err(Error::Inconsistent(
                        "replayed lifter does not reproduce the traced dominion".into(),
                    ));
                }
                measure_witness(&arena.owner, &lvl.out, &mask, Player::P2, &targets, &rho, &x_set)
            }
        };
        let view = arena.view();
        let att = attractor_on(&view, Player::P2, &rec.s_set, true);
        if att.members != rec.d_set {
            return Err(Error::Inconsistent(
                "trace attractor does not match the recorded removal".into(),
            ));
        }
        let mut attr = Vec::new();
        for v in rec.d_set.iter() {
            if g.owner(v) == Player::P2 && !rec.s_set.contains(v) {
                attr.push((v, att.strategy[v as usize]));
            }
        }
        records.push(Gr1CertRecord {
            witness_guarantee: rec.witness_guarantee,
            source: rec.source,
            s_set: rec.s_set.clone(),
            d_set: rec.d_set.clone(),
            inner,
            attr,
        });
        arena.remove_set(&rec.d_set);
    }
    if arena.alive != result.w1 {
        return Err(Error::Inconsistent(
            "trace removals do not reproduce the winning partition".into(),
        ));
    }
    Ok(Gr1Certificate {
        claimed_w2: result.w2.clone(),
        records,
    })
}

/// Verifies a GR(1) player-1 strategy by exhausting the strategy-restricted
/// product: rejects if any play escapes the claimed region or if, for some
/// guarantee index, a reachable cycle avoids that guarantee while meeting
/// every assumption set.
pub fn check_p1_gr1(
    strategy: &P1Gr1Strategy,
    g: &GameGraph,
    obj: &Gr1Objective,
    claimed_w1: &VertexSet,
) -> Result<(), Counterexample> {
    let n = g.n();
    let k2 = obj.k2();
    if strategy.k2 != k2 || strategy.advance.len() != k2 || strategy.moves.len() != k2 {
        return Err(Counterexample::structural("strategy phase count mismatch"));
    }
    if &strategy.region != claimed_w1 {
        return Err(Counterexample::structural(
            "strategy region differs from the claimed winning set",
        ));
    }
    for c in 0..k2 {
        if !strategy.advance[c].is_subset(obj.guarantee(c)) {
            return Err(Counterexample::structural(format!(
                "advance set {c} is not a subset of its guarantee set"
            )));
        }
    }

    let states = n * k2;
    let mut visited = FixedBitSet::with_capacity(states);
    let mut parent = vec![usize::MAX; states];
    let mut queue = VecDeque::new();
    for v in claimed_w1.iter() {
        let (c, _) = advance_memory(&strategy.advance, 0, v);
        let s = v as usize * k2 + c;
        if !visited.contains(s) {
            visited.insert(s);
            parent[s] = s;
            queue.push_back(s);
        }
    }
    let stem_to = |state: usize, parent: &[usize]| -> Vec<u32> {
        let mut path = Vec::new();
        let mut cur = state;
        loop {
            path.push((cur / k2) as u32);
            if parent[cur] == usize::MAX || parent[cur] == cur {
                break;
            }
            cur = parent[cur];
        }
        path.reverse();
        path
    };

    let mut edges: Vec<Vec<usize>> = vec![Vec::new(); states];
    while let Some(state) = queue.pop_front() {
        let v = (state / k2) as u32;
        let c = state % k2;
        let succ: Vec<u32> = if g.owner(v) == Player::P1 {
            let mv = strategy.moves[c][v as usize];
            if mv == NO_VERTEX {
                return Err(Counterexample {
                    reason: format!("no move prescribed at vertex {v} in phase {c}"),
                    stem: stem_to(state, &parent),
                    cycle: Vec::new(),
                });
            }
            if !g.has_edge(v, mv) {
                return Err(Counterexample {
                    reason: format!("prescribed move {v} -> {mv} is not an edge"),
                    stem: stem_to(state, &parent),
                    cycle: Vec::new(),
                });
            }
            vec![mv]
        } else {
            g.successors(v).to_vec()
        };
        for u in succ {
            if !claimed_w1.contains(u) {
                let mut stem = stem_to(state, &parent);
                stem.push(u);
                return Err(Counterexample {
                    reason: format!("play escapes the claimed region via {v} -> {u}"),
                    stem,
                    cycle: Vec::new(),
                });
            }
            let (c2, _) = advance_memory(&strategy.advance, c, u);
            let next = u as usize * k2 + c2;
            edges[state].push(next);
            if !visited.contains(next) {
                visited.insert(next);
                parent[next] = state;
                queue.push_back(next);
            }
        }
    }

    // For each guarantee: delete its states and look for a reachable
    // strongly connected behavior hitting every assumption set.
    for ell in 0..k2 {
        let keep = |state: usize| {
            visited.contains(state) && !obj.guarantee(ell).contains((state / k2) as u32)
        };
        if let Some(scc) = find_violating_scc(states, &edges, &keep, |vertices| {
            obj.assumptions()
                .iter()
                .all(|l| vertices.iter().any(|&s| l.contains((s / k2) as u32)))
        }) {
            let entry = scc[0];
            let cycle = build_cycle_through(&edges, &scc, obj.assumptions(), k2);
            return Err(Counterexample {
                reason: format!(
                    "reachable play satisfies every assumption while avoiding guarantee {ell}"
                ),
                stem: stem_to(entry, &parent),
                cycle,
            });
        }
    }
    Ok(())
}

/// Tarjan SCC over the kept states; returns the first component that has an
/// internal edge and satisfies `bad`.
fn find_violating_scc(
    states: usize,
    edges: &[Vec<usize>],
    keep: &dyn Fn(usize) -> bool,
    bad: impl Fn(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    const UNSET: u32 = u32::MAX;
    let mut index = vec![UNSET; states];
    let mut low = vec![0u32; states];
    let mut on_stack = vec![false; states];
    let mut counter = 0u32;
    let mut stack: Vec<usize> = Vec::new();

    for root in 0..states {
        if !keep(root) || index[root] != UNSET {
            continue;
        }
        let mut call: Vec<(usize, usize)> = Vec::new();
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        call.push((root, 0));
        while let Some(&(v, i)) = call.last() {
            if i < edges[v].len() {
                call.last_mut().unwrap().1 += 1;
                let w = edges[v][i];
                if !keep(w) {
                    continue;
                }
                if index[w] == UNSET {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut scc = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        scc.push(w);
                        if w == v {
                            break;
                        }
                    }
                    let has_edge = scc.len() > 1
                        || edges[scc[0]].iter().any(|&w| w == scc[0]);
                    if has_edge && bad(&scc) {
                        return Some(scc);
                    }
                }
            }
        }
    }
    None
}

/// Builds a cycle inside a strongly connected component that visits a
/// representative of every assumption set, for counterexample display.
fn build_cycle_through(
    edges: &[Vec<usize>],
    scc: &[usize],
    assumptions: &[VertexSet],
    k2: usize,
) -> Vec<u32> {
    use std::collections::{HashMap, HashSet};
    let inside: HashSet<usize> = scc.iter().copied().collect();
    let bfs_path = |from: usize, goal: &dyn Fn(usize) -> bool| -> Vec<usize> {
        let mut parent: HashMap<usize, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        queue.push_back(from);
        parent.insert(from, from);
        while let Some(s) = queue.pop_front() {
            if goal(s) && s != from {
                let mut path = vec![s];
                let mut cur = s;
                while parent[&cur] != cur {
                    cur = parent[&cur];
                    path.push(cur);
                }
                path.reverse();
                return path;
            }
            for &w in &edges[s] {
                if inside.contains(&w) && !parent.contains_key(&w) {
                    parent.insert(w, s);
                    queue.push_back(w);
                }
            }
        }
        vec![from]
    };
    let start = scc[0];
    let mut walk = vec![start];
    let mut cur = start;
    for l in assumptions {
        if l.contains((cur / k2) as u32) {
            continue;
        }
        let seg = bfs_path(cur, &|s| l.contains((s / k2) as u32));
        walk.extend_from_slice(&seg[1..]);
        cur = *walk.last().unwrap();
    }
    if cur != start {
        let seg = bfs_path(cur, &|s| s == start);
        walk.extend_from_slice(&seg[1..]);
    }
    walk.iter().map(|&s| (s / k2) as u32).collect()
}
