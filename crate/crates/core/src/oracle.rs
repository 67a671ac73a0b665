//! Independent reference paths for cross-validation: the layered reduction
//! from generalized Büchi to plain Büchi games, a single-target solver, and
//! exhaustive brute-force oracles for small instances.

use crate::error::Error;
use crate::game::{GameGraph, GenBuchiObjective, Player, SolveResult, VertexSet};
use crate::genbuchi::{solve_basic, solve_on, Algo};
use crate::reductions::{OvInstance, TriangleInstance};

/// The layered Büchi game produced by [`genbuchi_to_buchi`] together with
/// the id scheme mapping original vertices to their per-layer copies.
pub struct BuchiReduction {
    pub game: GameGraph,
    /// Single Büchi target: the copy of a minimal-size target set inside its
    /// own layer.
    pub target: VertexSet,
    pub base_n: usize,
    pub layers: usize,
}

impl BuchiReduction {
    pub fn copy_id(&self, layer: usize, v: u32) -> u32 {
        (layer * self.base_n) as u32 + v
    }

    pub fn original(&self, id: u32) -> (usize, u32) {
        (
            id as usize / self.base_n,
            (id as usize % self.base_n) as u32,
        )
    }
}

/// Makes one copy of the arena per target set; edges stay within their
/// layer except at layer-`j` target vertices, which step to the next layer
/// cyclically. The Büchi target is the minimal-size set's own layer copy
/// (lowest index on ties).
pub fn genbuchi_to_buchi(g: &GameGraph, obj: &GenBuchiObjective) -> BuchiReduction {
    let n = g.n();
    let k = obj.k();
    let mut owner = Vec::with_capacity(n * k);
    for _ in 0..k {
        owner.extend_from_slice(g.owners());
    }
    let mut edges = Vec::with_capacity(g.m() * k);
    for layer in 0..k {
        let base = (layer * n) as u32;
        let next = (((layer + 1) % k) * n) as u32;
        for v in 0..n as u32 {
            let dst = if obj.target(layer).contains(v) { next } else { base };
            for &u in g.successors(v) {
                edges.push((base + v, dst + u));
            }
        }
    }
    let game = GameGraph::new(owner, &edges).expect("layered copy preserves validity");

    let min_layer = (0..k)
        .min_by_key(|&ell| (obj.target(ell).len(), ell))
        .expect("objective has at least one target");
    let mut target = VertexSet::empty(n * k);
    for v in obj.target(min_layer).iter() {
        target.insert((min_layer * n) as u32 + v);
    }
    BuchiReduction {
        game,
        target,
        base_n: n,
        layers: k,
    }
}

/// Single-target Büchi solve: the basic algorithm with `k = 1`.
pub fn solve_buchi(g: &GameGraph, target: &VertexSet) -> Result<SolveResult, Error> {
    let obj = GenBuchiObjective::from_sets(vec![target.clone()])?;
    solve_basic(g, &obj)
}

/// Reference solver: reduce to a plain Büchi game, solve it, and project
/// layer-0 membership back. Kept deliberately independent of the level-graph
/// machinery so the three solver paths can cross-check each other.
pub fn solve_via_buchi_reduction(
    g: &GameGraph,
    obj: &GenBuchiObjective,
) -> Result<SolveResult, Error> {
    let violations = g.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidGame(violations));
    }
    if obj.target(0).capacity() != g.n() {
        return Err(Error::Argument("objective sized for a different game".into()));
    }
    let red = genbuchi_to_buchi(g, obj);
    let inner = solve_buchi(&red.game, &red.target)?;
    let n = g.n();
    let mut w1 = VertexSet::empty(n);
    for v in 0..n as u32 {
        if inner.w1.contains(red.copy_id(0, v)) {
            w1.insert(v);
        }
    }
    #[cfg(debug_assertions)]
    for v in 0..n as u32 {
        for layer in 1..red.layers {
            debug_assert_eq!(
                inner.w1.contains(red.copy_id(layer, v)),
                w1.contains(v),
                "winning membership must be layer-independent"
            );
        }
    }
    let mut w2 = VertexSet::full(n);
    w2.difference_with(&w1);
    Ok(SolveResult {
        w1,
        w2,
        trace: Vec::new(),
        iterations: inner.iterations,
    })
}

/// Exhaustive triangle scan.
pub fn brute_force_triangle(inst: &TriangleInstance) -> bool {
    let n = inst.n;
    let mut adj = vec![false; n * n];
    for &(u, v) in &inst.edges {
        adj[u as usize * n + v as usize] = true;
    }
    for x in 0..n {
        for y in 0..n {
            if x != y && adj[x * n + y] {
                for z in 0..n {
                    if z != x && z != y && adj[y * n + z] && adj[z * n + x] {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Exhaustive pairwise dot-product scan.
pub fn brute_force_ov(inst: &OvInstance) -> bool {
    inst.s1
        .iter()
        .any(|&x| inst.s2.iter().any(|&y| x & y == 0))
}

/// Enumerates every player-1 dominion of size at most `h` by subset
/// enumeration, closure check, and sub-solve. Refuses games with more than
/// 12 vertices.
pub fn brute_force_small_dominions(
    g: &GameGraph,
    obj: &GenBuchiObjective,
    h: usize,
) -> Result<Vec<VertexSet>, Error> {
    let n = g.n();
    if n > 12 {
        return Err(Error::Argument(format!(
            "dominion enumeration refuses n = {n} > 12"
        )));
    }
    let violations = g.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidGame(violations));
    }
    let mut dominions = Vec::new();
    for mask in 1u32..(1 << n) {
        if (mask.count_ones() as usize) > h {
            continue;
        }
        let set = VertexSet::from_ids(n, (0..n as u32).filter(|&v| mask >> v & 1 == 1));
        // A player-1 dominion is player-2 closed.
        if !crate::attractor::is_closed(g, Player::P2, &set, &VertexSet::full(n)) {
            continue;
        }
        let out = solve_on(g, Player::P1, obj.targets(), &set, Algo::Basic);
        if out.w_buchi == set {
            dominions.push(set);
        }
    }
    Ok(dominions)
}
