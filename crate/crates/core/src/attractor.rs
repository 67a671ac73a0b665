//! Attractor computation with ranks and memoryless strategy extraction,
//! plus closed-set checks. This is the kernel every solver builds on.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::arena::View;
use crate::game::{GameGraph, Player, VertexSet, NO_VERTEX};

/// Rank value of vertices outside the attractor.
pub const NO_RANK: u32 = u32::MAX;

/// Result of an attractor computation.
///
/// `rank[v]` is the backward-induction layer in which `v` joined (0 for the
/// seed, [`NO_RANK`] outside the attractor). `strategy[v]` is a chosen
/// rank-decreasing successor for every attracting-player vertex with
/// positive rank, [`crate::NO_VERTEX`] elsewhere (only populated on request).
#[derive(Debug, Clone)]
pub struct AttractorResult {
    pub members: VertexSet,
    pub rank: Vec<u32>,
    pub strategy: Vec<u32>,
}

impl AttractorResult {
    pub fn rank_of(&self, v: u32) -> u32 {
        self.rank[v as usize]
    }
}

/// Attractor of `seed` for `player` within the sub-arena `alive`.
///
/// Seed vertices outside `alive` are ignored. Runs a counter-based backward
/// search, so the time is proportional to the in-degrees of the members.
pub fn attractor(
    g: &GameGraph,
    player: Player,
    seed: &VertexSet,
    alive: &VertexSet,
) -> AttractorResult {
    let view = View {
        owner: g.owners(),
        out: g.out_lists(),
        inn: g.in_lists(),
        alive,
        outdeg: None,
    };
    attractor_on(&view, player, seed, true)
}

pub(crate) fn attractor_on(
    view: &View<'_>,
    player: Player,
    seed: &VertexSet,
    want_strategy: bool,
) -> AttractorResult {
    let n = view.n();
    let mut rank = vec![NO_RANK; n];
    let mut members = VertexSet::empty(n);
    let mut queue: VecDeque<u32> = VecDeque::new();

    for v in seed.iter() {
        if view.is_alive(v) && !members.contains(v) {
            rank[v as usize] = 0;
            members.insert(v);
            queue.push_back(v);
        }
    }

    // Escape counters for opponent vertices, initialized on first contact.
    let mut counter = vec![0u32; n];
    let mut touched = FixedBitSet::with_capacity(n);

    while let Some(v) = queue.pop_front() {
        let next_rank = rank[v as usize] + 1;
        for u in view.in_alive(v) {
            if members.contains(u) {
                continue;
            }
            if view.owner_of(u) == player {
                rank[u as usize] = next_rank;
                members.insert(u);
                queue.push_back(u);
            } else {
                if !touched.contains(u as usize) {
                    touched.insert(u as usize);
                    counter[u as usize] = view.alive_out_degree(u);
                }
                counter[u as usize] -= 1;
                if counter[u as usize] == 0 {
                    rank[u as usize] = next_rank;
                    members.insert(u);
                    queue.push_back(u);
                }
            }
        }
    }

    let mut strategy = vec![NO_VERTEX; if want_strategy { n } else { 0 }];
    if want_strategy {
        for v in members.iter() {
            if view.owner_of(v) != player || rank[v as usize] == 0 {
                continue;
            }
            // Lowest successor rank wins, ties by lowest id.
            let mut best: Option<(u32, u32)> = None;
            for w in view.out_alive(v) {
                let rw = rank[w as usize];
                if rw < rank[v as usize] && best.map_or(true, |b| (rw, w) < b) {
                    best = Some((rw, w));
                }
            }
            strategy[v as usize] = best.expect("attractor member must have a lower-rank successor").1;
        }
    }

    AttractorResult {
        members,
        rank,
        strategy,
    }
}

/// True iff `set` is closed for `player` on the sub-arena `alive`: every
/// `player`-owned member keeps all of its alive successors inside the set
/// and every opponent-owned member has at least one successor inside.
pub fn is_closed(g: &GameGraph, player: Player, set: &VertexSet, alive: &VertexSet) -> bool {
    let view = View {
        owner: g.owners(),
        out: g.out_lists(),
        inn: g.in_lists(),
        alive,
        outdeg: None,
    };
    is_closed_on(&view, player, set)
}

pub(crate) fn is_closed_on(view: &View<'_>, player: Player, set: &VertexSet) -> bool {
    for v in set.iter() {
        if view.owner_of(v) == player {
            if view.out_alive(v).any(|w| !set.contains(w)) {
                return false;
            }
        } else if !view.out_alive(v).any(|w| set.contains(w)) {
            return false;
        }
    }
    true
}
