//! Winning-set algorithms for GR(1) objectives. Both variants repeatedly
//! carve out player-2 dominions; the fast variant first looks for small
//! dominions with the bounded progress measure on level graphs and falls
//! back to full generalized Büchi solves only when none exist, which caps
//! how often the expensive path can run.

use crate::arena::{ceil_log2, Arena};
use crate::attractor::attractor_on;
use crate::error::Error;
use crate::game::{
    DominionSource, GameGraph, Gr1IterationRecord, Gr1Objective, Gr1SolveResult, Player,
    VertexSet,
};
use crate::genbuchi::{solve_on, Algo};
use crate::progress::lift_on_lists;

/// `ceil(sqrt(n))`.
pub(crate) fn ceil_sqrt(n: usize) -> u32 {
    let r = n.isqrt();
    if r * r < n {
        r as u32 + 1
    } else {
        r as u32
    }
}

fn check_instance(g: &GameGraph, obj: &Gr1Objective) -> Result<(), Error> {
    let violations = g.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidGame(violations));
    }
    if obj.assumption(0).capacity() != g.n() {
        return Err(Error::Argument(format!(
            "objective is sized for {} vertices, game has {}",
            obj.assumption(0).capacity(),
            g.n()
        )));
    }
    Ok(())
}

fn masked(set: &VertexSet, alive: &VertexSet) -> VertexSet {
    let mut s = set.clone();
    s.intersect_with(alive);
    s
}

struct FoundDominion {
    source: DominionSource,
    witness: usize,
    y_set: VertexSet,
    s_set: VertexSet,
}

/// One pass of the bounded search: for each level `i` up to
/// `ceil(log2(2*kmax))` and each guarantee index, mask out the player-1
/// attractor of `U_l` (plus the level's exclusion set) and run the lifter
/// for the assumption player with bound `2^i`.
fn small_dominion_pass(arena: &mut Arena, obj: &Gr1Objective, kmax: u32) -> Option<FoundDominion> {
    if arena.n_alive == 0 {
        return None;
    }
    let top = ceil_log2(2 * kmax as usize).max(1);
    for level in 1..=top {
        let lvl = arena.build_level(level, Player::P1);
        let view = lvl.view(&arena.owner, &arena.alive);
        for ell in 0..obj.k2() {
            let mut seed = lvl.z.clone();
            for v in obj.guarantee(ell).iter() {
                if arena.alive.contains(v) {
                    seed.insert(v);
                }
            }
            let y_set = attractor_on(&view, Player::P1, &seed, false).members;
            let mut mask = arena.alive.clone();
            mask.difference_with(&y_set);
            if mask.is_empty() {
                continue;
            }
            let targets: Vec<VertexSet> = obj
                .assumptions()
                .iter()
                .map(|t| masked(t, &mask))
                .collect();
            let h = (1u32 << level).min(mask.len() as u32);
            let (x_set, _rho) = lift_on_lists(
                &arena.owner,
                &lvl.out,
                &lvl.inn,
                mask,
                Player::P2,
                &targets,
                h,
            );
            if !x_set.is_empty() {
                return Some(FoundDominion {
                    source: DominionSource::Small { level },
                    witness: ell,
                    y_set,
                    s_set: x_set,
                });
            }
        }
    }
    None
}

/// The basic algorithm's dominion search: for each guarantee index, remove
/// the player-1 attractor of `U_l` and hand the rest to the generalized
/// Büchi solver with the assumption player as the conjunction player.
fn large_dominion_pass(g: &GameGraph, arena: &Arena, obj: &Gr1Objective) -> Option<FoundDominion> {
    for ell in 0..obj.k2() {
        let seed = masked(obj.guarantee(ell), &arena.alive);
        let y_set = attractor_on(&arena.view(), Player::P1, &seed, false).members;
        let mut sub_alive = arena.alive.clone();
        sub_alive.difference_with(&y_set);
        if sub_alive.is_empty() {
            continue;
        }
        let out = solve_on(g, Player::P2, obj.assumptions(), &sub_alive, Algo::Fast);
        if !out.w_buchi.is_empty() {
            return Some(FoundDominion {
                source: DominionSource::Large,
                witness: ell,
                y_set,
                s_set: out.w_buchi,
            });
        }
    }
    None
}

fn solve_gr1(g: &GameGraph, obj: &Gr1Objective, fast: bool) -> Gr1SolveResult {
    let n = g.n();
    let kmax = ceil_sqrt(n);
    let mut arena = Arena::new(g, &VertexSet::full(n));
    let mut trace = Vec::new();
    let mut iterations = 0usize;
    loop {
        iterations += 1;
        let mut found = None;
        if fast {
            found = small_dominion_pass(&mut arena, obj, kmax);
        }
        if found.is_none() {
            found = large_dominion_pass(g, &arena, obj);
        }
        let Some(dom) = found else {
            break;
        };
        let d_set = attractor_on(&arena.view(), Player::P2, &dom.s_set, false).members;
        arena.remove_set(&d_set);
        trace.push(Gr1IterationRecord {
            source: dom.source,
            witness_guarantee: dom.witness,
            y_set: dom.y_set,
            s_set: dom.s_set,
            d_set,
        });
    }
    let w1 = arena.alive;
    let mut w2 = VertexSet::full(n);
    w2.difference_with(&w1);
    Gr1SolveResult {
        w1,
        w2,
        trace,
        iterations,
    }
}

/// The direct algorithm: every iteration searches for a dominion with full
/// generalized Büchi solves, one per guarantee set.
pub fn solve_gr1_basic(g: &GameGraph, obj: &Gr1Objective) -> Result<Gr1SolveResult, Error> {
    check_instance(g, obj)?;
    Ok(solve_gr1(g, obj, false))
}

/// The two-tier algorithm: bounded progress-measure search first (with
/// `kmax = ceil(sqrt(n))` fixed from the original vertex count), full
/// solves only when no small dominion exists. Returns the same partition
/// as [`solve_gr1_basic`].
pub fn solve_gr1_fast(g: &GameGraph, obj: &Gr1Objective) -> Result<Gr1SolveResult, Error> {
    check_instance(g, obj)?;
    Ok(solve_gr1(g, obj, true))
}

/// Bounded dominion search on the sub-arena `alive`: returns a player-2
/// dominion of the GR(1) game, or the empty set only if every player-2
/// dominion has an attractor larger than `kmax`.
pub fn find_small_dominion(
    g: &GameGraph,
    obj: &Gr1Objective,
    alive: &VertexSet,
    kmax: u32,
) -> Result<VertexSet, Error> {
    check_instance(g, obj)?;
    if kmax == 0 {
        return Err(Error::Argument("kmax must be at least 1".into()));
    }
    let mut arena = Arena::new(g, alive);
    match small_dominion_pass(&mut arena, obj, kmax) {
        Some(dom) => Ok(dom.s_set),
        None => Ok(VertexSet::empty(g.n())),
    }
}
