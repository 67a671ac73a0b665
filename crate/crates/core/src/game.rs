//! Core game-graph representation: vertices owned by two players, ordered
//! adjacency, objectives, and the structural transforms shared by all solvers.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Violation};

/// Sentinel for "no vertex" in strategy and rank tables.
pub const NO_VERTEX: u32 = u32::MAX;

/// The two players. Player 1 owns the conjunction (Büchi) side of every
/// objective in this crate; player 2 is the adversary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    P1,
    P2,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::P1 => Player::P2,
            Player::P2 => Player::P1,
        }
    }

    /// Numeric tag used by the file format (`1` / `2`).
    pub fn tag(self) -> u8 {
        match self {
            Player::P1 => 1,
            Player::P2 => 2,
        }
    }

    pub fn from_tag(tag: u8) -> Option<Player> {
        match tag {
            1 => Some(Player::P1),
            2 => Some(Player::P2),
            _ => None,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "player {}", self.tag())
    }
}

/// Set of vertex identifiers backed by a bitset. Iteration is always in
/// ascending id order, which keeps every tie-break in the crate deterministic.
#[derive(Clone, PartialEq, Eq)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn empty(n: usize) -> VertexSet {
        VertexSet {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn full(n: usize) -> VertexSet {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        VertexSet { bits }
    }

    pub fn from_ids<I: IntoIterator<Item = u32>>(n: usize, ids: I) -> VertexSet {
        let mut set = VertexSet::empty(n);
        for v in ids {
            set.insert(v);
        }
        set
    }

    /// Size of the id space (not the number of members).
    pub fn capacity(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.bits.contains(v as usize)
    }

    pub fn insert(&mut self, v: u32) {
        self.bits.insert(v as usize);
    }

    pub fn remove(&mut self, v: u32) {
        self.bits.set(v as usize, false);
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits.ones().map(|v| v as u32)
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.bits.difference_with(&other.bits);
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<u32> for VertexSet {
    /// Collects ids into a set sized to fit the largest one.
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> VertexSet {
        let ids: Vec<u32> = iter.into_iter().collect();
        let n = ids.iter().map(|&v| v as usize + 1).max().unwrap_or(0);
        VertexSet::from_ids(n, ids)
    }
}

/// A two-player game graph. Vertices are dense ids `0..n`. Successor lists
/// are sorted ascending. Predecessor lists keep all player-2 sources before
/// any player-1 source (each group in descending id order); the solvers rely
/// on that prefix structure and it is frozen at construction time.
#[derive(Clone, PartialEq, Eq)]
pub struct GameGraph {
    owner: Vec<Player>,
    out: Vec<Vec<u32>>,
    inn: Vec<Vec<u32>>,
    m: usize,
}

impl GameGraph {
    /// Builds a graph from an owner vector and an edge list. Rejects edges
    /// with out-of-range endpoints and duplicate edges; vertices without
    /// successors are representable (see [`GameGraph::validate`]).
    pub fn new(owner: Vec<Player>, edges: &[(u32, u32)]) -> Result<GameGraph, Error> {
        let n = owner.len();
        let mut violations = Vec::new();
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                violations.push(Violation::EdgeOutOfRange { from: u, to: v });
            }
        }
        if !violations.is_empty() {
            return Err(Error::Build(violations));
        }

        let mut sorted: Vec<(u32, u32)> = edges.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                violations.push(Violation::DuplicateEdge {
                    from: w[0].0,
                    to: w[0].1,
                });
            }
        }
        if !violations.is_empty() {
            violations.dedup();
            return Err(Error::Build(violations));
        }

        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(u, v) in &sorted {
            out[u as usize].push(v);
            inn[v as usize].push(u);
        }
        for list in &mut inn {
            Self::canonicalize_in_list(&owner, list);
        }
        Ok(GameGraph {
            owner,
            out,
            inn,
            m: sorted.len(),
        })
    }

    /// Predecessor order invariant: player-2 sources first, then player-1
    /// sources, each group in descending id order.
    fn canonicalize_in_list(owner: &[Player], list: &mut [u32]) {
        list.sort_unstable_by_key(|&u| (owner[u as usize] == Player::P1, std::cmp::Reverse(u)));
    }

    pub fn n(&self) -> usize {
        self.owner.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn owner(&self, v: u32) -> Player {
        self.owner[v as usize]
    }

    pub fn owners(&self) -> &[Player] {
        &self.owner
    }

    pub fn successors(&self, v: u32) -> &[u32] {
        &self.out[v as usize]
    }

    pub fn predecessors(&self, v: u32) -> &[u32] {
        &self.inn[v as usize]
    }

    pub fn out_degree(&self, v: u32) -> usize {
        self.out[v as usize].len()
    }

    pub fn in_degree(&self, v: u32) -> usize {
        self.inn[v as usize].len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.out[u as usize].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u as u32, v)))
    }

    pub(crate) fn out_lists(&self) -> &[Vec<u32>] {
        &self.out
    }

    pub(crate) fn in_lists(&self) -> &[Vec<u32>] {
        &self.inn
    }

    /// Scans every structural invariant and returns all violations found.
    /// An empty result means the graph is a legal arena for the solvers.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.n();
        let mut violations = Vec::new();
        for v in 0..n as u32 {
            if self.out[v as usize].is_empty() {
                violations.push(Violation::OutDegreeZero { vertex: v });
            }
        }
        // Out/in round-trip consistency.
        for u in 0..n as u32 {
            for &v in &self.out[u as usize] {
                if !self.inn[v as usize].contains(&u) {
                    violations.push(Violation::AdjacencyMismatch { from: u, to: v });
                }
            }
        }
        for v in 0..n as u32 {
            for &u in &self.inn[v as usize] {
                if !self.has_edge(u, v) {
                    violations.push(Violation::AdjacencyMismatch { from: u, to: v });
                }
            }
        }
        // Predecessor ordering: no player-1 source before a player-2 source.
        for v in 0..n as u32 {
            let mut seen_p1 = false;
            for (pos, &u) in self.inn[v as usize].iter().enumerate() {
                match self.owner(u) {
                    Player::P1 => seen_p1 = true,
                    Player::P2 => {
                        if seen_p1 {
                            violations.push(Violation::InEdgeOrder { vertex: v, position: pos });
                            break;
                        }
                    }
                }
            }
        }
        violations
    }

    /// Same edges, every owner flipped; predecessor lists are re-ordered to
    /// restore the player-2-first invariant. An involution.
    pub fn swap_players(&self) -> GameGraph {
        let owner: Vec<Player> = self.owner.iter().map(|o| o.opponent()).collect();
        let out = self.out.clone();
        let mut inn = self.inn.clone();
        for list in &mut inn {
            Self::canonicalize_in_list(&owner, list);
        }
        GameGraph {
            owner,
            out,
            inn,
            m: self.m,
        }
    }

    /// Subgraph induced by `keep`, with vertices renumbered densely.
    /// Fails if any kept vertex loses all of its successors, which signals
    /// that the caller passed a set that is not closed for the relevant
    /// player.
    pub fn induced_subgame(&self, keep: &VertexSet) -> Result<(GameGraph, SubgameMap), Error> {
        let kept: Vec<u32> = keep.iter().collect();
        let mut old_to_new = vec![NO_VERTEX; self.n()];
        for (new, &old) in kept.iter().enumerate() {
            old_to_new[old as usize] = new as u32;
        }
        let mut stuck = Vec::new();
        let mut owner = Vec::with_capacity(kept.len());
        let mut edges = Vec::new();
        for (new, &old) in kept.iter().enumerate() {
            owner.push(self.owner(old));
            let mut deg = 0usize;
            for &succ in self.successors(old) {
                let mapped = old_to_new[succ as usize];
                if mapped != NO_VERTEX {
                    edges.push((new as u32, mapped));
                    deg += 1;
                }
            }
            if deg == 0 {
                stuck.push(old);
            }
        }
        if !stuck.is_empty() {
            return Err(Error::NotClosed { stuck });
        }
        let graph = GameGraph::new(owner, &edges)?;
        Ok((
            graph,
            SubgameMap {
                new_to_old: kept,
                old_to_new,
            },
        ))
    }
}

impl fmt::Debug for GameGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GameGraph(n={}, m={})", self.n(), self.m())
    }
}

/// Identifier remapping produced by [`GameGraph::induced_subgame`].
#[derive(Debug, Clone)]
pub struct SubgameMap {
    /// `new_to_old[new] = old`
    pub new_to_old: Vec<u32>,
    /// `old_to_new[old] = new`, [`NO_VERTEX`] for dropped vertices.
    pub old_to_new: Vec<u32>,
}

impl SubgameMap {
    pub fn to_old(&self, new: u32) -> u32 {
        self.new_to_old[new as usize]
    }

    pub fn to_new(&self, old: u32) -> u32 {
        self.old_to_new[old as usize]
    }
}

/// Conjunction of `k >= 1` Büchi target sets. Empty member sets are legal
/// (they simply make the objective unsatisfiable).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenBuchiObjective {
    targets: Vec<VertexSet>,
}

impl GenBuchiObjective {
    pub fn new(n: usize, target_lists: &[Vec<u32>]) -> Result<GenBuchiObjective, Error> {
        if target_lists.is_empty() {
            return Err(Error::Argument("objective needs at least one target set".into()));
        }
        let mut targets = Vec::with_capacity(target_lists.len());
        for (idx, list) in target_lists.iter().enumerate() {
            for &v in list {
                if v as usize >= n {
                    return Err(Error::Argument(format!(
                        "target set {} contains out-of-range vertex {v}",
                        idx + 1
                    )));
                }
            }
            targets.push(VertexSet::from_ids(n, list.iter().copied()));
        }
        Ok(GenBuchiObjective { targets })
    }

    pub fn from_sets(targets: Vec<VertexSet>) -> Result<GenBuchiObjective, Error> {
        if targets.is_empty() {
            return Err(Error::Argument("objective needs at least one target set".into()));
        }
        Ok(GenBuchiObjective { targets })
    }

    pub fn k(&self) -> usize {
        self.targets.len()
    }

    pub fn target(&self, ell: usize) -> &VertexSet {
        &self.targets[ell]
    }

    pub fn targets(&self) -> &[VertexSet] {
        &self.targets
    }

    /// Target set sizes `b_1..b_k`.
    pub fn sizes(&self) -> Vec<usize> {
        self.targets.iter().map(|t| t.len()).collect()
    }

    /// Reorders the target sets ascending by size (stable), so the first set
    /// is a smallest one. Exposed to the CLI as `--sort-targets`.
    pub fn sorted_by_size(&self) -> GenBuchiObjective {
        let mut targets = self.targets.clone();
        targets.sort_by_key(|t| t.len());
        GenBuchiObjective { targets }
    }
}

/// GR(1) objective: assumptions `L_1..L_k1` imply guarantees `U_1..U_k2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gr1Objective {
    assumptions: Vec<VertexSet>,
    guarantees: Vec<VertexSet>,
}

impl Gr1Objective {
    pub fn new(
        n: usize,
        assumption_lists: &[Vec<u32>],
        guarantee_lists: &[Vec<u32>],
    ) -> Result<Gr1Objective, Error> {
        let assumptions = GenBuchiObjective::new(n, assumption_lists)
            .map_err(|_| Error::Argument("objective needs at least one assumption set".into()))?;
        let guarantees = GenBuchiObjective::new(n, guarantee_lists)
            .map_err(|_| Error::Argument("objective needs at least one guarantee set".into()))?;
        Ok(Gr1Objective {
            assumptions: assumptions.targets,
            guarantees: guarantees.targets,
        })
    }

    pub fn k1(&self) -> usize {
        self.assumptions.len()
    }

    pub fn k2(&self) -> usize {
        self.guarantees.len()
    }

    pub fn assumption(&self, t: usize) -> &VertexSet {
        &self.assumptions[t]
    }

    pub fn guarantee(&self, ell: usize) -> &VertexSet {
        &self.guarantees[ell]
    }

    pub fn assumptions(&self) -> &[VertexSet] {
        &self.assumptions
    }

    pub fn guarantees(&self) -> &[VertexSet] {
        &self.guarantees
    }
}

/// Objective parsed from a game file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Objective {
    GenBuchi(GenBuchiObjective),
    Gr1(Gr1Objective),
}

/// One dominion-removal iteration of a generalized Büchi solve.
#[derive(Debug, Clone)]
pub struct IterationRecord {
    /// Index of the target set the dominion avoids (0-based).
    pub witness: usize,
    /// The player-1-closed set found.
    pub s_set: VertexSet,
    /// Its player-2 attractor, removed from the arena.
    pub d_set: VertexSet,
    /// Decomposition level at which `s_set` was discovered (fast path only).
    pub level: Option<u32>,
}

/// Winning partition plus the per-iteration trace of the solve.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub w1: VertexSet,
    pub w2: VertexSet,
    /// One record per dominion removal; the terminal all-empty sweep is not
    /// recorded, so a solve took `trace.len() + 1` iterations.
    pub trace: Vec<IterationRecord>,
    /// Outer-loop iterations performed by the producing algorithm.
    pub iterations: usize,
}

/// Where a GR(1) iteration's dominion came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominionSource {
    /// Found by the bounded progress-measure search at the given level.
    Small { level: u32 },
    /// Found by a full generalized Büchi solve.
    Large,
}

/// One dominion-removal iteration of a GR(1) solve.
#[derive(Debug, Clone)]
pub struct Gr1IterationRecord {
    pub source: DominionSource,
    /// Index of the guarantee set the dominion avoids (0-based).
    pub witness_guarantee: usize,
    /// The player-1 attractor of that guarantee set that was masked out
    /// during the search.
    pub y_set: VertexSet,
    pub s_set: VertexSet,
    pub d_set: VertexSet,
}

/// Winning partition and trace of a GR(1) solve.
#[derive(Debug, Clone)]
pub struct Gr1SolveResult {
    pub w1: VertexSet,
    pub w2: VertexSet,
    pub trace: Vec<Gr1IterationRecord>,
    pub iterations: usize,
}
