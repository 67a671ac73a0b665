//! Worklist computation of the size-bounded progress measure: the least
//! fixed point of the per-pair lift `rho_l(v) <- incr(best(v))`, with each
//! rank capped at `min(h-1, |V \ T_l|)`. The finite region of the fixed
//! point is a dominion for the conjunction player that contains every one of
//! its dominions with at most `h` vertices.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::error::Error;
use crate::game::{GameGraph, GenBuchiObjective, Player, VertexSet};

/// Rank value standing for "cannot stay winning": strictly above every
/// finite rank, absorbing under increment.
pub const INFINITE_RHO: u32 = u32::MAX;

/// Processing order of the pending-pair list. Both orders reach the same
/// least fixed point; FIFO is the deterministic default.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftOrder {
    Fifo,
    Lifo,
}

/// The final rank table: one value per (vertex, target index) pair.
#[derive(Debug, Clone)]
pub struct RhoTable {
    k: usize,
    caps: Vec<u32>,
    values: Vec<u32>,
}

impl RhoTable {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.values.len() / self.k
    }

    /// Cap `min(h-1, |V \ T_l|)` of row `ell`.
    pub fn cap(&self, ell: usize) -> u32 {
        self.caps[ell]
    }

    pub fn rho(&self, v: u32, ell: usize) -> u32 {
        self.values[v as usize * self.k + ell]
    }

    pub fn is_finite(&self, v: u32, ell: usize) -> bool {
        self.rho(v, ell) != INFINITE_RHO
    }
}

/// A dominion returned by the lifting algorithm, with the rank table that
/// certifies it.
#[derive(Debug, Clone)]
pub struct Dominion {
    pub set: VertexSet,
    pub rho: RhoTable,
}

/// The lifting engine. The public wrapper [`ProgressMeasure`] runs it for
/// player 1 on a full game graph; the GR(1) dominion search runs it for
/// player 2 on level graphs.
pub(crate) struct LiftEngine<'a> {
    owner: &'a [Player],
    out: &'a [Vec<u32>],
    inn: &'a [Vec<u32>],
    alive: VertexSet,
    buchi: Player,
    k: usize,
    caps: Vec<u32>,
    tsets: Vec<VertexSet>,
    rho: Vec<u32>,
    best_cache: Vec<u32>,
    count_cache: Vec<u32>,
    pending: VecDeque<usize>,
    in_pending: FixedBitSet,
}

impl<'a> LiftEngine<'a> {
    /// `targets` are intersected with `alive` here; `h` must satisfy
    /// `1 <= h <= |alive|` and every alive vertex needs an alive successor.
    pub fn new(
        owner: &'a [Player],
        out: &'a [Vec<u32>],
        inn: &'a [Vec<u32>],
        alive: VertexSet,
        buchi: Player,
        targets: &[VertexSet],
        h: u32,
    ) -> LiftEngine<'a> {
        let n = owner.len();
        let k = targets.len();
        let n_alive = alive.len();
        debug_assert!(h >= 1 && h as usize <= n_alive);

        let mut tsets = Vec::with_capacity(k);
        let mut caps = Vec::with_capacity(k);
        for t in targets {
            let mut masked = t.clone();
            masked.intersect_with(&alive);
            caps.push((h - 1).min((n_alive - masked.len()) as u32));
            tsets.push(masked);
        }

        let mut rho = vec![INFINITE_RHO; n * k];
        let best_cache = vec![0u32; n * k];
        let mut count_cache = vec![0u32; n * k];
        let mut pending = VecDeque::new();
        let mut in_pending = FixedBitSet::with_capacity(n * k);
        for v in alive.iter() {
            let outdeg = out[v as usize]
                .iter()
                .filter(|&&w| alive.contains(w))
                .count() as u32;
            debug_assert!(outdeg >= 1, "vertex {v} has no alive successor");
            for ell in 0..k {
                let p = v as usize * k + ell;
                rho[p] = 0;
                if owner[v as usize] == buchi {
                    count_cache[p] = outdeg;
                }
                if !tsets[ell].contains(v) {
                    pending.push_back(p);
                    in_pending.insert(p);
                }
            }
        }

        LiftEngine {
            owner,
            out,
            inn,
            alive,
            buchi,
            k,
            caps,
            tsets,
            rho,
            best_cache,
            count_cache,
            pending,
            in_pending,
        }
    }

    fn is_buchi_owned(&self, v: u32) -> bool {
        self.owner[v as usize] == self.buchi
    }

    /// Value of the best successor for the player owning `v`: the minimum
    /// over alive successors for the conjunction player, the maximum for the
    /// opponent. Reads row `ell + 1` (cyclically) when `v` is in `T_ell`.
    pub fn best(&self, v: u32, ell: usize) -> u32 {
        let row = if self.tsets[ell].contains(v) {
            (ell + 1) % self.k
        } else {
            ell
        };
        let mut acc: Option<u32> = None;
        for &w in &self.out[v as usize] {
            if !self.alive.contains(w) {
                continue;
            }
            let val = self.rho[w as usize * self.k + row];
            acc = Some(match acc {
                None => val,
                Some(a) => {
                    if self.is_buchi_owned(v) {
                        a.min(val)
                    } else {
                        a.max(val)
                    }
                }
            });
        }
        acc.expect("best() requires at least one alive successor")
    }

    /// The incremental step: reaching `T_ell` resets the rank to 0 unless
    /// the continuation is already lost; elsewhere the rank increments and
    /// saturates to infinity beyond the row cap.
    pub fn incr(&self, v: u32, ell: usize, x: u32) -> u32 {
        if self.tsets[ell].contains(v) {
            if x != INFINITE_RHO {
                0
            } else {
                INFINITE_RHO
            }
        } else if x == INFINITE_RHO || x >= self.caps[ell] {
            INFINITE_RHO
        } else {
            x + 1
        }
    }

    /// Number of successors currently achieving the cached best (finite-rho
    /// count for target members).
    fn count(&self, v: u32, ell: usize, best: u32) -> u32 {
        let in_target = self.tsets[ell].contains(v);
        let row = if in_target { (ell + 1) % self.k } else { ell };
        let mut c = 0u32;
        for &w in &self.out[v as usize] {
            if !self.alive.contains(w) {
                continue;
            }
            let val = self.rho[w as usize * self.k + row];
            if (in_target && val != INFINITE_RHO) || (!in_target && val == best) {
                c += 1;
            }
        }
        c
    }

    /// The count cache is only trusted for pairs outside the pending list;
    /// this cross-checks it right after a decrement, against the current
    /// table.
    #[cfg(debug_assertions)]
    fn check_count_cache(&self, v: u32, ell: usize) {
        let p = v as usize * self.k + ell;
        debug_assert!(!self.in_pending.contains(p));
        if !self.is_buchi_owned(v) || self.rho[p] == INFINITE_RHO {
            return;
        }
        let expect = self.count(v, ell, self.best_cache[p]);
        debug_assert_eq!(self.count_cache[p], expect, "count drift at ({v},{ell})");
    }

    fn push(&mut self, p: usize) {
        if !self.in_pending.contains(p) {
            self.in_pending.insert(p);
            self.pending.push_back(p);
        }
    }

    pub fn run(&mut self, order: LiftOrder) {
        while let Some(p) = match order {
            LiftOrder::Fifo => self.pending.pop_front(),
            LiftOrder::Lifo => self.pending.pop_back(),
        } {
            self.in_pending.set(p, false);
            self.process(p);
        }
        #[cfg(debug_assertions)]
        self.assert_fixed_point();
    }

    fn process(&mut self, p: usize) {
        let v = (p / self.k) as u32;
        let ell = p % self.k;
        let old = self.rho[p];
        let b = self.best(v, ell);
        self.best_cache[p] = b;
        if self.is_buchi_owned(v) {
            self.count_cache[p] = self.count(v, ell, b);
        }
        let new = self.incr(v, ell, b);
        debug_assert!(new > old, "processed pair must strictly increase");
        self.rho[p] = new;

        // Predecessors whose row-`ell` value depends on rho_ell(v).
        let k = self.k;
        for idx in 0..self.inn[v as usize].len() {
            let w = self.inn[v as usize][idx];
            if !self.alive.contains(w) || self.tsets[ell].contains(w) {
                continue;
            }
            let q = w as usize * k + ell;
            if self.in_pending.contains(q) || self.rho[q] == INFINITE_RHO {
                continue;
            }
            if self.is_buchi_owned(w) {
                if old == self.best_cache[q] {
                    self.count_cache[q] -= 1;
                    #[cfg(debug_assertions)]
                    self.check_count_cache(w, ell);
                    if self.count_cache[q] == 0 {
                        self.push(q);
                    }
                }
            } else if new > self.best_cache[q] {
                self.push(q);
            }
        }

        // Predecessors inside the previous target set read this row through
        // their reset case; they only care about finiteness.
        if new == INFINITE_RHO {
            let prev = (ell + k - 1) % k;
            for idx in 0..self.inn[v as usize].len() {
                let w = self.inn[v as usize][idx];
                if !self.alive.contains(w) || !self.tsets[prev].contains(w) {
                    continue;
                }
                let q = w as usize * k + prev;
                if self.in_pending.contains(q) || self.rho[q] == INFINITE_RHO {
                    continue;
                }
                if self.is_buchi_owned(w) {
                    self.count_cache[q] -= 1;
                    #[cfg(debug_assertions)]
                    self.check_count_cache(w, prev);
                    if self.count_cache[q] == 0 {
                        self.push(q);
                    }
                } else {
                    self.push(q);
                }
            }
        }
    }

    #[cfg(debug_assertions)]
    fn assert_fixed_point(&self) {
        for v in self.alive.iter() {
            for ell in 0..self.k {
                let p = v as usize * self.k + ell;
                debug_assert_eq!(
                    self.rho[p],
                    self.incr(v, ell, self.best(v, ell)),
                    "fixed point violated at ({v},{ell})"
                );
            }
        }
    }

    /// Vertices with a finite rank in some row.
    pub fn dominion_set(&self) -> VertexSet {
        let mut set = VertexSet::empty(self.owner.len());
        for v in self.alive.iter() {
            if (0..self.k).any(|ell| self.rho[v as usize * self.k + ell] != INFINITE_RHO) {
                set.insert(v);
            }
        }
        set
    }

    pub fn rho_table(&self) -> RhoTable {
        RhoTable {
            k: self.k,
            caps: self.caps.clone(),
            values: self.rho.clone(),
        }
    }
}

/// Runs the lifter on level-graph adjacency for the GR(1) dominion search.
pub(crate) fn lift_on_lists(
    owner: &[Player],
    out: &[Vec<u32>],
    inn: &[Vec<u32>],
    alive: VertexSet,
    buchi: Player,
    targets: &[VertexSet],
    h: u32,
) -> (VertexSet, RhoTable) {
    let mut engine = LiftEngine::new(owner, out, inn, alive, buchi, targets, h);
    engine.run(LiftOrder::Fifo);
    (engine.dominion_set(), engine.rho_table())
}

/// Public handle exposing the measure's primitive steps alongside the run.
pub struct ProgressMeasure<'a> {
    engine: LiftEngine<'a>,
}

impl<'a> ProgressMeasure<'a> {
    pub fn new(
        g: &'a GameGraph,
        obj: &GenBuchiObjective,
        h: u32,
        alive: &VertexSet,
    ) -> Result<ProgressMeasure<'a>, Error> {
        let n_alive = alive.len();
        if h == 0 || h as usize > n_alive {
            return Err(Error::Argument(format!(
                "size bound h={h} out of range 1..={n_alive}"
            )));
        }
        if obj.target(0).capacity() != g.n() {
            return Err(Error::Argument("objective sized for a different game".into()));
        }
        for v in alive.iter() {
            if !g.successors(v).iter().any(|&w| alive.contains(w)) {
                return Err(Error::Argument(format!(
                    "alive mask is not a legal sub-arena: vertex {v} has no alive successor"
                )));
            }
        }
        Ok(ProgressMeasure {
            engine: LiftEngine::new(
                g.owners(),
                g.out_lists(),
                g.in_lists(),
                alive.clone(),
                Player::P1,
                obj.targets(),
                h,
            ),
        })
    }

    /// Best-successor value as seen by the current table.
    pub fn best(&self, v: u32, ell: usize) -> u32 {
        self.engine.best(v, ell)
    }

    /// The incremental step applied at `(v, ell)` to a best value `x`.
    pub fn incr(&self, v: u32, ell: usize, x: u32) -> u32 {
        self.engine.incr(v, ell, x)
    }

    pub fn run(&mut self, order: LiftOrder) {
        self.engine.run(order);
    }

    pub fn dominion_set(&self) -> VertexSet {
        self.engine.dominion_set()
    }

    pub fn rho_table(&self) -> RhoTable {
        self.engine.rho_table()
    }
}

/// Computes the player-1 dominion that contains every player-1 dominion of
/// size at most `h` within the sub-arena `alive` (possibly empty).
pub fn lift_dominion(
    g: &GameGraph,
    obj: &GenBuchiObjective,
    h: u32,
    alive: &VertexSet,
) -> Result<Dominion, Error> {
    lift_dominion_ordered(g, obj, h, alive, LiftOrder::Fifo)
}

pub fn lift_dominion_ordered(
    g: &GameGraph,
    obj: &GenBuchiObjective,
    h: u32,
    alive: &VertexSet,
    order: LiftOrder,
) -> Result<Dominion, Error> {
    let mut pm = ProgressMeasure::new(g, obj, h, alive)?;
    pm.run(order);
    Ok(Dominion {
        set: pm.dominion_set(),
        rho: pm.rho_table(),
    })
}
