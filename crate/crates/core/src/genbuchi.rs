//! Winning-set algorithms for generalized Büchi games: the basic
//! iterate-and-remove algorithm and the level-graph variant that finds small
//! dominions cheaply by searching sparse subgraphs first.

use crate::arena::{ceil_log2, Arena, Level};
use crate::attractor::attractor_on;
use crate::error::Error;
use crate::game::{
    GameGraph, GenBuchiObjective, IterationRecord, Player, SolveResult, VertexSet,
};

/// One level of the edge decomposition together with its exclusion set.
///
/// Level `i` keeps the first `2^i` alive in-edges of every vertex and all
/// out-edges of vertices whose alive out-degree is at most `2^i`. The
/// exclusion set `Z_i` holds the opponent vertices left without an out-edge
/// and the attracting-player vertices whose true out-degree exceeds `2^i`.
pub struct LevelGraph {
    inner: Level,
    n: usize,
}

impl LevelGraph {
    pub fn level(&self) -> u32 {
        self.inner.level
    }

    pub fn z_set(&self) -> &VertexSet {
        &self.inner.z
    }

    pub fn successors(&self, v: u32) -> &[u32] {
        &self.inner.out[v as usize]
    }

    pub fn edge_count(&self) -> usize {
        self.inner.out.iter().map(|l| l.len()).sum()
    }

    /// All level edges, sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut edges: Vec<(u32, u32)> = (0..self.n as u32)
            .flat_map(|u| self.inner.out[u as usize].iter().map(move |&v| (u, v)))
            .collect();
        edges.sort_unstable();
        edges
    }
}

/// Builds the level-`i` graph for player 1 searches on the sub-arena `alive`.
pub fn build_level(g: &GameGraph, alive: &VertexSet, level: u32) -> LevelGraph {
    let mut arena = Arena::new(g, alive);
    LevelGraph {
        inner: arena.build_level(level, Player::P1),
        n: g.n(),
    }
}

pub(crate) enum Algo {
    Basic,
    Fast,
}

pub(crate) struct GbOutcome {
    pub w_buchi: VertexSet,
    pub trace: Vec<IterationRecord>,
    pub iterations: usize,
}

/// Core loop shared by both algorithms, parameterized by the player that
/// owns the conjunction objective. Iteratively finds a set closed for the
/// Büchi player that avoids one target set, removes its opponent attractor,
/// and stops when no such set remains.
pub(crate) fn solve_on(
    g: &GameGraph,
    buchi: Player,
    targets: &[VertexSet],
    alive0: &VertexSet,
    algo: Algo,
) -> GbOutcome {
    let mut arena = Arena::new(g, alive0);
    let mut trace = Vec::new();
    let mut iterations = 0usize;
    loop {
        iterations += 1;
        let found = match algo {
            Algo::Basic => find_dominion_basic(&arena, buchi, targets),
            Algo::Fast => find_dominion_fast(&mut arena, buchi, targets),
        };
        let Some((witness, level, s_set)) = found else {
            break;
        };
        let d_set = attractor_on(&arena.view(), buchi.opponent(), &s_set, false).members;
        arena.remove_set(&d_set);
        trace.push(IterationRecord {
            witness,
            s_set,
            d_set,
            level,
        });
    }
    GbOutcome {
        w_buchi: arena.alive,
        trace,
        iterations,
    }
}

fn masked_seed(target: &VertexSet, alive: &VertexSet, extra: Option<&VertexSet>) -> VertexSet {
    let mut seed = match extra {
        Some(z) => z.clone(),
        None => VertexSet::empty(alive.capacity()),
    };
    for v in target.iter() {
        if alive.contains(v) {
            seed.insert(v);
        }
    }
    seed
}

fn find_dominion_basic(
    arena: &Arena,
    buchi: Player,
    targets: &[VertexSet],
) -> Option<(usize, Option<u32>, VertexSet)> {
    let view = arena.view();
    for (ell, target) in targets.iter().enumerate() {
        let seed = masked_seed(target, &arena.alive, None);
        let att = attractor_on(&view, buchi, &seed, false);
        if att.members.len() < arena.n_alive {
            let mut s = arena.alive.clone();
            s.difference_with(&att.members);
            return Some((ell, None, s));
        }
    }
    None
}

fn find_dominion_fast(
    arena: &mut Arena,
    buchi: Player,
    targets: &[VertexSet],
) -> Option<(usize, Option<u32>, VertexSet)> {
    if arena.n_alive == 0 {
        return None;
    }
    let top = ceil_log2(arena.n_alive).max(1);
    for level in 1..=top {
        let lvl = arena.build_level(level, buchi);
        let view = lvl.view(&arena.owner, &arena.alive);
        for (ell, target) in targets.iter().enumerate() {
            let seed = masked_seed(target, &arena.alive, Some(&lvl.z));
            let att = attractor_on(&view, buchi, &seed, false);
            if att.members.len() < arena.n_alive {
                let mut s = arena.alive.clone();
                s.difference_with(&att.members);
                return Some((ell, Some(level), s));
            }
        }
    }
    None
}

fn check_instance(g: &GameGraph, obj: &GenBuchiObjective) -> Result<(), Error> {
    let violations = g.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidGame(violations));
    }
    if obj.target(0).capacity() != g.n() {
        return Err(Error::Argument(format!(
            "objective is sized for {} vertices, game has {}",
            obj.target(0).capacity(),
            g.n()
        )));
    }
    Ok(())
}

fn outcome_to_result(n: usize, out: GbOutcome) -> SolveResult {
    let mut w2 = VertexSet::full(n);
    w2.difference_with(&out.w_buchi);
    SolveResult {
        w1: out.w_buchi,
        w2,
        trace: out.trace,
        iterations: out.iterations,
    }
}

/// The basic algorithm: per iteration, for each target set in order, compute
/// the player-1 attractor and stop at the first non-empty complement; remove
/// its player-2 attractor. Takes at most `2*b_1 + 2` iterations where `b_1`
/// is the size of the first target set.
pub fn solve_basic(g: &GameGraph, obj: &GenBuchiObjective) -> Result<SolveResult, Error> {
    check_instance(g, obj)?;
    let alive = VertexSet::full(g.n());
    let out = solve_on(g, Player::P1, obj.targets(), &alive, Algo::Basic);
    Ok(outcome_to_result(g.n(), out))
}

/// The level-graph algorithm: identical partition as [`solve_basic`], but
/// each iteration scans decomposition levels bottom-up so that a dominion
/// whose attractor has at most `2^i` vertices is found at level `i` for a
/// cost proportional to `2^i * n` per target.
pub fn solve_fast(g: &GameGraph, obj: &GenBuchiObjective) -> Result<SolveResult, Error> {
    check_instance(g, obj)?;
    let alive = VertexSet::full(g.n());
    let out = solve_on(g, Player::P1, obj.targets(), &alive, Algo::Fast);
    Ok(outcome_to_result(g.n(), out))
}
