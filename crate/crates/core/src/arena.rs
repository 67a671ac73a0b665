//! Internal working state for the solvers: a masked copy of the adjacency
//! lists with lazily cleaned entries, maintained alive out-degrees, and the
//! level-graph construction of the edge decomposition.

use crate::game::{GameGraph, Player, VertexSet};

/// Borrowed read-only picture of a (sub-)arena. Adjacency lists may contain
/// entries for removed vertices; consumers filter through `alive`.
#[derive(Clone, Copy)]
pub(crate) struct View<'a> {
    pub owner: &'a [Player],
    pub out: &'a [Vec<u32>],
    pub inn: &'a [Vec<u32>],
    pub alive: &'a VertexSet,
    /// Alive out-degree per vertex when the owner of the lists maintains it.
    pub outdeg: Option<&'a [u32]>,
}

impl<'a> View<'a> {
    pub fn n(&self) -> usize {
        self.owner.len()
    }

    pub fn is_alive(&self, v: u32) -> bool {
        self.alive.contains(v)
    }

    pub fn owner_of(&self, v: u32) -> Player {
        self.owner[v as usize]
    }

    pub fn out_alive(&self, v: u32) -> impl Iterator<Item = u32> + 'a {
        let alive = self.alive;
        self.out[v as usize].iter().copied().filter(move |&w| alive.contains(w))
    }

    pub fn in_alive(&self, v: u32) -> impl Iterator<Item = u32> + 'a {
        let alive = self.alive;
        self.inn[v as usize].iter().copied().filter(move |&w| alive.contains(w))
    }

    pub fn alive_out_degree(&self, v: u32) -> u32 {
        match self.outdeg {
            Some(deg) => deg[v as usize],
            None => self.out_alive(v).count() as u32,
        }
    }

}

/// Owned solver arena. Vertex removal is O(degree) bookkeeping; adjacency
/// entries of removed vertices are dropped whenever a scan encounters them.
pub(crate) struct Arena {
    pub owner: Vec<Player>,
    pub out: Vec<Vec<u32>>,
    pub inn: Vec<Vec<u32>>,
    pub outdeg: Vec<u32>,
    pub alive: VertexSet,
    pub n_alive: usize,
}

impl Arena {
    pub fn new(g: &GameGraph, alive0: &VertexSet) -> Arena {
        let n = g.n();
        let mut outdeg = vec![0u32; n];
        for v in 0..n as u32 {
            if alive0.contains(v) {
                outdeg[v as usize] =
                    g.successors(v).iter().filter(|&&w| alive0.contains(w)).count() as u32;
            }
        }
        Arena {
            owner: g.owners().to_vec(),
            out: g.out_lists().to_vec(),
            inn: g.in_lists().to_vec(),
            outdeg,
            alive: alive0.clone(),
            n_alive: alive0.len(),
        }
    }

    pub fn view(&self) -> View<'_> {
        View {
            owner: &self.owner,
            out: &self.out,
            inn: &self.inn,
            alive: &self.alive,
            outdeg: Some(&self.outdeg),
        }
    }

    /// Removes `d` (a subset of the alive vertices) and updates the alive
    /// out-degrees of the surviving predecessors.
    pub fn remove_set(&mut self, d: &VertexSet) {
        for v in d.iter() {
            debug_assert!(self.alive.contains(v));
            self.alive.remove(v);
            self.n_alive -= 1;
        }
        for v in d.iter() {
            for &u in &self.inn[v as usize] {
                if self.alive.contains(u) {
                    self.outdeg[u as usize] -= 1;
                }
            }
        }
    }

    /// Compacts the first `cap` alive predecessors of `v` to the front of
    /// its list, cleaning dead entries from the scanned region in place
    /// (relative order of live entries is preserved, which the
    /// decomposition's prefix argument depends on). Returns the prefix size.
    fn compact_in_prefix(&mut self, v: u32, cap: usize) -> usize {
        let alive = &self.alive;
        let list = &mut self.inn[v as usize];
        let mut write = 0usize;
        let mut read = 0usize;
        let mut found = 0usize;
        while read < list.len() && found < cap {
            let u = list[read];
            if alive.contains(u) {
                list[write] = u;
                write += 1;
                found += 1;
            }
            read += 1;
        }
        if write < read {
            list.copy_within(read.., write);
            let dropped = read - write;
            let len = list.len();
            list.truncate(len - dropped);
        }
        found
    }

    /// Builds the level-`i` graph of the decomposition and its exclusion
    /// set, relative to the current alive sub-arena. `attr_player` is the
    /// player whose attractor the level graph will be searched with.
    pub fn build_level(&mut self, level: u32, attr_player: Player) -> Level {
        let n = self.owner.len();
        let cap = 1u64 << level.min(32);
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        let mut outdeg = vec![0u32; n];

        // Edges from high-out-degree sources enter through in-edge prefixes.
        let members: Vec<u32> = self.alive.iter().collect();
        for &v in &members {
            let found = self.compact_in_prefix(v, cap as usize);
            for idx in 0..found {
                let u = self.inn[v as usize][idx];
                if self.outdeg[u as usize] as u64 > cap {
                    out[u as usize].push(v);
                    inn[v as usize].push(u);
                    outdeg[u as usize] += 1;
                }
            }
        }
        // Low-out-degree sources contribute all of their edges.
        for &u in &members {
            if self.outdeg[u as usize] as u64 <= cap {
                let alive = &self.alive;
                self.out[u as usize].retain(|&w| alive.contains(w));
                for &v in &self.out[u as usize] {
                    out[u as usize].push(v);
                    inn[v as usize].push(u);
                    outdeg[u as usize] += 1;
                }
            }
        }

        let mut z = VertexSet::empty(n);
        for &v in &members {
            let o = self.owner[v as usize];
            if o == attr_player {
                if self.outdeg[v as usize] as u64 > cap {
                    z.insert(v);
                }
            } else if outdeg[v as usize] == 0 {
                z.insert(v);
            }
        }

        Level {
            level,
            out,
            inn,
            outdeg,
            z,
        }
    }
}

/// The level-`i` graph `G_i` of the decomposition: the first `2^i` alive
/// in-edges of every vertex plus all out-edges of vertices with alive
/// out-degree at most `2^i`, together with the excluded set `Z_i`.
pub(crate) struct Level {
    pub level: u32,
    pub out: Vec<Vec<u32>>,
    pub inn: Vec<Vec<u32>>,
    pub outdeg: Vec<u32>,
    pub z: VertexSet,
}

impl Level {
    pub fn view<'a>(&'a self, owner: &'a [Player], alive: &'a VertexSet) -> View<'a> {
        View {
            owner,
            out: &self.out,
            inn: &self.inn,
            alive,
            outdeg: Some(&self.outdeg),
        }
    }
}

/// `ceil(log2(x))` for `x >= 1`.
pub(crate) fn ceil_log2(x: usize) -> u32 {
    debug_assert!(x >= 1);
    usize::BITS - (x - 1).leading_zeros()
}
