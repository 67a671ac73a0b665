//! The two hardness reductions as deterministic instance generators, their
//! answer decoders, and seeded random-instance generators for the test and
//! benchmark corpora.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::game::{GameGraph, GenBuchiObjective, Gr1Objective, Player, SolveResult, VertexSet};
use crate::genbuchi::{solve_basic, solve_fast};

/// Plain directed graph for triangle detection. No self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleInstance {
    pub n: usize,
    pub edges: Vec<(u32, u32)>,
}

impl TriangleInstance {
    pub fn new(n: usize, edges: Vec<(u32, u32)>) -> Result<TriangleInstance, Error> {
        for &(u, v) in &edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::Argument(format!("edge {u} -> {v} out of range")));
            }
            if u == v {
                return Err(Error::Argument(format!("self-loop {u} -> {u} not allowed")));
            }
        }
        let mut sorted = edges.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != edges.len() {
            return Err(Error::Argument("duplicate edges not allowed".into()));
        }
        Ok(TriangleInstance { n, edges })
    }
}

/// Orthogonal-vectors instance: two sets of `dim`-bit vectors, stored as bit
/// masks (`dim <= 64`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OvInstance {
    pub dim: usize,
    pub s1: Vec<u64>,
    pub s2: Vec<u64>,
}

impl OvInstance {
    pub fn new(dim: usize, s1: Vec<u64>, s2: Vec<u64>) -> Result<OvInstance, Error> {
        if dim == 0 || dim > 64 {
            return Err(Error::Argument("dimension must be in 1..=64".into()));
        }
        let limit = if dim == 64 { u64::MAX } else { (1u64 << dim) - 1 };
        for &v in s1.iter().chain(s2.iter()) {
            if v & !limit != 0 {
                return Err(Error::Argument(format!(
                    "vector {v:#b} has bits outside dimension {dim}"
                )));
            }
        }
        Ok(OvInstance { dim, s1, s2 })
    }

    /// Builds a vector mask from 0/1 coordinates, most significant first.
    pub fn vector(coords: &[u8]) -> u64 {
        coords.iter().fold(0u64, |acc, &c| (acc << 1) | u64::from(c != 0))
    }

    pub fn all_ones(&self) -> u64 {
        if self.dim == 64 {
            u64::MAX
        } else {
            (1u64 << self.dim) - 1
        }
    }

    /// Inserts the all-ones vector into the second set if it is absent.
    /// This never changes the answer as long as the first set has no zero
    /// vector, and it gives every coordinate vertex of the reduced game an
    /// out-edge.
    pub fn with_all_ones(&self) -> OvInstance {
        let ones = self.all_ones();
        if self.s2.contains(&ones) {
            self.clone()
        } else {
            let mut s2 = self.s2.clone();
            s2.push(ones);
            OvInstance {
                dim: self.dim,
                s1: self.s1.clone(),
                s2,
            }
        }
    }
}

/// Game encoding of triangle detection: four copies of the vertex set in a
/// layered cycle through a hub `s` (the last vertex id), all vertices owned
/// by player 2, one target set per original vertex. The graph has a
/// triangle iff the hub is losing for player 1 (equivalently, on sink-free
/// instances, iff the whole winning set is empty).
pub fn triangle_to_game(
    inst: &TriangleInstance,
) -> Result<(GameGraph, GenBuchiObjective, u32), Error> {
    let n = inst.n;
    if n == 0 {
        return Err(Error::Argument("triangle instance needs at least one vertex".into()));
    }
    let total = 4 * n + 1;
    let s = (4 * n) as u32;
    let mut edges = Vec::with_capacity(3 * inst.edges.len() + 2 * n);
    for &(v, u) in &inst.edges {
        for layer in 0..3u32 {
            edges.push((layer * n as u32 + v, (layer + 1) * n as u32 + u));
        }
    }
    for v in 0..n as u32 {
        edges.push((s, v));
        edges.push((3 * n as u32 + v, s));
    }
    let g = GameGraph::new(vec![Player::P2; total], &edges)?;
    let mut targets = Vec::with_capacity(n);
    for v in 0..n as u32 {
        let mut t = Vec::with_capacity(2 * (n - 1));
        for u in 0..n as u32 {
            if u != v {
                t.push(u);
                t.push(3 * n as u32 + u);
            }
        }
        targets.push(t);
    }
    let obj = GenBuchiObjective::new(total, &targets)?;
    Ok((g, obj, s))
}

/// True iff the triangle instance behind `result` has a triangle: the hub
/// (always the last vertex) is not player-1 winning.
pub fn decode_triangle(result: &SolveResult) -> bool {
    let s = (result.w1.capacity() - 1) as u32;
    !result.w1.contains(s)
}

/// Game encoding of orthogonal-vector search: hub `s` (vertex 0, player 2),
/// then the first vector set, the second vector set, and one vertex per
/// coordinate, all player 1. One singleton target per second-set vector.
pub fn ov_to_game(inst: &OvInstance) -> Result<(GameGraph, GenBuchiObjective, u32), Error> {
    if inst.s2.is_empty() {
        return Err(Error::Argument("second vector set must not be empty".into()));
    }
    let n1 = inst.s1.len();
    let n2 = inst.s2.len();
    let d = inst.dim;
    let total = 1 + n1 + n2 + d;
    let s1_base = 1u32;
    let s2_base = (1 + n1) as u32;
    let c_base = (1 + n1 + n2) as u32;
    let mut owner = vec![Player::P1; total];
    owner[0] = Player::P2;

    let mut edges = Vec::new();
    for (i, &x) in inst.s1.iter().enumerate() {
        edges.push((0, s1_base + i as u32));
        for c in 0..d {
            if x >> (d - 1 - c) & 1 == 1 {
                edges.push((s1_base + i as u32, c_base + c as u32));
            }
        }
    }
    for (j, &y) in inst.s2.iter().enumerate() {
        edges.push((s2_base + j as u32, 0));
        for c in 0..d {
            if y >> (d - 1 - c) & 1 == 1 {
                edges.push((c_base + c as u32, s2_base + j as u32));
            }
        }
    }
    let g = GameGraph::new(owner, &edges)?;
    let targets: Vec<Vec<u32>> = (0..n2).map(|j| vec![s2_base + j as u32]).collect();
    let obj = GenBuchiObjective::new(total, &targets)?;
    Ok((g, obj, 0))
}

/// True iff the instance behind `result` has an orthogonal pair: the hub
/// (always vertex 0) is not player-1 winning.
pub fn decode_ov(result: &SolveResult) -> bool {
    !result.w1.contains(0)
}

/// Which solver backs a reduction solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionSolver {
    Basic,
    Fast,
}

/// Solves a game that may contain vertices without successors by completing
/// it first: each such vertex gets one edge to an absorbing vertex that is
/// losing for the stuck vertex's owner. The returned partition is projected
/// back to the original vertex ids. Reduction instances built from
/// degenerate inputs are the one place this is needed; the solvers proper
/// keep rejecting sink vertices.
pub fn solve_reduced(
    g: &GameGraph,
    obj: &GenBuchiObjective,
    algo: ReductionSolver,
) -> Result<SolveResult, Error> {
    let n = g.n();
    let sinks: Vec<u32> = (0..n as u32).filter(|&v| g.out_degree(v) == 0).collect();
    if sinks.is_empty() {
        return match algo {
            ReductionSolver::Basic => solve_basic(g, obj),
            ReductionSolver::Fast => solve_fast(g, obj),
        };
    }

    // lose1 traps player 1 (member of no target set), lose2 traps player 2
    // (member of every target set).
    let lose1 = n as u32;
    let lose2 = (n + 1) as u32;
    let mut owner = g.owners().to_vec();
    owner.push(Player::P2);
    owner.push(Player::P1);
    let mut edges: Vec<(u32, u32)> = g.edges().collect();
    edges.push((lose1, lose1));
    edges.push((lose2, lose2));
    for &v in &sinks {
        edges.push((
            v,
            match g.owner(v) {
                Player::P1 => lose1,
                Player::P2 => lose2,
            },
        ));
    }
    let completed = GameGraph::new(owner, &edges)?;
    let mut targets: Vec<Vec<u32>> = obj.targets().iter().map(|t| t.to_vec()).collect();
    for t in &mut targets {
        t.push(lose2);
    }
    let cobj = GenBuchiObjective::new(n + 2, &targets)?;
    let res = match algo {
        ReductionSolver::Basic => solve_basic(&completed, &cobj)?,
        ReductionSolver::Fast => solve_fast(&completed, &cobj)?,
    };

    let project = |set: &VertexSet| {
        let mut out = VertexSet::empty(n);
        for v in set.iter() {
            if (v as usize) < n {
                out.insert(v);
            }
        }
        out
    };
    let trace = res
        .trace
        .iter()
        .map(|rec| crate::game::IterationRecord {
            witness: rec.witness,
            s_set: project(&rec.s_set),
            d_set: project(&rec.d_set),
            level: rec.level,
        })
        .collect();
    Ok(SolveResult {
        w1: project(&res.w1),
        w2: project(&res.w2),
        trace,
        iterations: res.iterations,
    })
}

/// Full pipeline: reduce a triangle instance, solve, decode.
pub fn solve_triangle_instance(
    inst: &TriangleInstance,
    algo: ReductionSolver,
) -> Result<bool, Error> {
    if inst.n == 0 {
        return Ok(false);
    }
    let (g, obj, _s) = triangle_to_game(inst)?;
    let res = solve_reduced(&g, &obj, algo)?;
    Ok(decode_triangle(&res))
}

/// Full pipeline: normalize an orthogonal-vectors instance, reduce, solve,
/// decode. Zero vectors in the first set are answered directly since the
/// all-ones completion would otherwise manufacture an orthogonal pair.
pub fn solve_ov_instance(inst: &OvInstance, algo: ReductionSolver) -> Result<bool, Error> {
    if inst.s1.iter().any(|&x| x == 0) {
        return Ok(!inst.s2.is_empty());
    }
    if inst.s1.is_empty() {
        return Ok(false);
    }
    let norm = inst.with_all_ones();
    let (g, obj, _s) = ov_to_game(&norm)?;
    let res = solve_reduced(&g, &obj, algo)?;
    Ok(decode_ov(&res))
}

/// Seeded random digraph without self-loops; each ordered pair is an edge
/// with probability `edge_prob`.
pub fn gen_random_triangle(n: usize, edge_prob: f64, seed: u64) -> TriangleInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in 0..n as u32 {
            if u != v && rng.random_bool(edge_prob) {
                edges.push((u, v));
            }
        }
    }
    TriangleInstance { n, edges }
}

/// Seeded random vector sets with the given per-coordinate density. The
/// all-ones vector is forced into the second set (replacing its last vector
/// when absent), and zero vectors in the first set are re-bitted: their
/// instances are trivially solvable and their game encoding would leave a
/// vertex without successors.
pub fn gen_random_ov(nvec: usize, dim: usize, density: f64, seed: u64) -> OvInstance {
    assert!(nvec >= 1 && dim >= 1 && dim <= 64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        let mut mask = 0u64;
        for c in 0..dim {
            if rng.random_bool(density) {
                mask |= 1 << c;
            }
        }
        mask
    };
    let s1: Vec<u64> = (0..nvec)
        .map(|_| {
            let mask = draw(&mut rng);
            if mask == 0 {
                1 << rng.random_range(0..dim)
            } else {
                mask
            }
        })
        .collect();
    let mut s2: Vec<u64> = (0..nvec).map(|_| draw(&mut rng)).collect();
    let ones = if dim == 64 { u64::MAX } else { (1u64 << dim) - 1 };
    if !s2.contains(&ones) {
        *s2.last_mut().unwrap() = ones;
    }
    OvInstance { dim, s1, s2 }
}

/// Parameters for [`gen_random_game`].
#[derive(Debug, Clone)]
pub struct RandomGameSpec {
    pub n: usize,
    /// Requested edge count; the final count may be slightly higher because
    /// vertices left without successors each get one extra random edge.
    pub m: usize,
    pub k: usize,
    /// Probability that a vertex belongs to player 1.
    pub owner_bias: f64,
    /// Inclusive bounds for each target set's size.
    pub target_size: (usize, usize),
    pub seed: u64,
}

fn random_arena(
    rng: &mut ChaCha8Rng,
    n: usize,
    m: usize,
    owner_bias: f64,
) -> (Vec<Player>, Vec<(u32, u32)>) {
    assert!(n >= 1, "need at least one vertex");
    assert!(m <= n * n, "cannot place {m} distinct edges on {n} vertices");
    let owner: Vec<Player> = (0..n)
        .map(|_| {
            if rng.random_bool(owner_bias) {
                Player::P1
            } else {
                Player::P2
            }
        })
        .collect();
    let mut present = vec![false; n * n];
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(m + n);
    let mut outdeg = vec![0usize; n];
    while edges.len() < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if !present[u * n + v] {
            present[u * n + v] = true;
            edges.push((u as u32, v as u32));
            outdeg[u] += 1;
        }
    }
    for u in 0..n {
        if outdeg[u] == 0 {
            loop {
                let v = rng.random_range(0..n);
                if !present[u * n + v] {
                    present[u * n + v] = true;
                    edges.push((u as u32, v as u32));
                    break;
                }
            }
        }
    }
    (owner, edges)
}

fn random_sets(
    rng: &mut ChaCha8Rng,
    n: usize,
    count: usize,
    size_range: (usize, usize),
) -> Vec<Vec<u32>> {
    let (lo, hi) = size_range;
    let hi = hi.min(n).max(1);
    let lo = lo.min(hi).max(1);
    (0..count)
        .map(|_| {
            let size = rng.random_range(lo..=hi);
            let mut picked = VertexSet::empty(n);
            while picked.len() < size {
                picked.insert(rng.random_range(0..n) as u32);
            }
            picked.to_vec()
        })
        .collect()
}

/// Seeded random generalized Büchi instance. Reproducible: the same spec
/// yields the same instance bytes.
pub fn gen_random_game(spec: &RandomGameSpec) -> (GameGraph, GenBuchiObjective) {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (owner, edges) = random_arena(&mut rng, spec.n, spec.m, spec.owner_bias);
    let targets = random_sets(&mut rng, spec.n, spec.k, spec.target_size);
    let g = GameGraph::new(owner, &edges).expect("random arena is structurally valid");
    let obj = GenBuchiObjective::new(spec.n, &targets).expect("random targets are in range");
    (g, obj)
}

/// Stress instance for the solver benchmarks: a dense random all-player-1
/// core that wins everywhere, plus a planted tail of `tail` two-vertex
/// adversary traps that peel off one per iteration. Only the first target
/// set has members in the tail, so the direct algorithm re-scans the dense
/// core once per peeled trap while the level-graph algorithm finds each
/// trap in the sparsest level. Uniformly random dense games resolve in a
/// handful of iterations, which makes them useless for exercising the
/// iteration-bound behavior; this instance restores it reproducibly.
pub fn gen_peeling_game(
    core_n: usize,
    core_m: usize,
    k: usize,
    tail: usize,
    seed: u64,
) -> (GameGraph, GenBuchiObjective) {
    assert!(core_n >= 1 && k >= 1 && tail >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = core_n + 1 + 2 * tail;
    let z = core_n as u32;
    let chain_c = |j: usize| (core_n + 1 + 2 * j) as u32;
    let chain_t = |j: usize| (core_n + 2 + 2 * j) as u32;

    let mut owner = vec![Player::P1; n];
    owner[z as usize] = Player::P2;
    for j in 0..tail {
        owner[chain_t(j) as usize] = Player::P2;
    }

    // Dense random core on ids 0..core_n.
    let (_, mut edges) = random_arena(&mut rng, core_n, core_m, 1.0);
    edges.push((z, z));
    for j in 0..tail {
        let c = chain_c(j);
        edges.push((c, c));
        edges.push((c, if j == 0 { z } else { chain_t(j - 1) }));
        edges.push((chain_t(j), c));
    }

    let core_sets = random_sets(&mut rng, core_n, k, (4, 12));
    let mut targets: Vec<Vec<u32>> = Vec::with_capacity(k);
    for (ell, mut set) in core_sets.into_iter().enumerate() {
        if ell == 0 {
            set.extend((0..tail).map(chain_t));
        }
        targets.push(set);
    }

    let g = GameGraph::new(owner, &edges).expect("construction is structurally valid");
    let obj = GenBuchiObjective::new(n, &targets).expect("targets are in range");
    (g, obj)
}

/// Seeded random GR(1) instance.
pub fn gen_random_gr1(
    n: usize,
    m: usize,
    k1: usize,
    k2: usize,
    seed: u64,
) -> (GameGraph, Gr1Objective) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (owner, edges) = random_arena(&mut rng, n, m, 0.5);
    let target_range = (1, (n / 3).max(1));
    let assumptions = random_sets(&mut rng, n, k1, target_range);
    let guarantees = random_sets(&mut rng, n, k2, target_range);
    let g = GameGraph::new(owner, &edges).expect("random arena is structurally valid");
    let obj = Gr1Objective::new(n, &assumptions, &guarantees).expect("random sets are in range");
    (g, obj)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure2_instance() -> TriangleInstance {
        // a=0, b=1, c=2, d=3.
        TriangleInstance::new(4, vec![(0, 1), (1, 0), (1, 2), (2, 0), (2, 3), (3, 0)]).unwrap()
    }

    fn figure3_instance() -> OvInstance {
        OvInstance::new(
            3,
            vec![
                OvInstance::vector(&[1, 0, 0]),
                OvInstance::vector(&[1, 1, 1]),
                OvInstance::vector(&[0, 1, 1]),
            ],
            vec![
                OvInstance::vector(&[1, 1, 0]),
                OvInstance::vector(&[1, 1, 1]),
                OvInstance::vector(&[0, 1, 0]),
                OvInstance::vector(&[0, 0, 1]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn triangle_game_shape() {
        let inst = figure2_instance();
        let (g, obj, s) = triangle_to_game(&inst).unwrap();
        assert_eq!(g.n(), 17);
        assert_eq!(s, 16);
        assert_eq!(obj.k(), 4);
        // T_a = {b1, c1, d1, b4, c4, d4} = {1, 2, 3, 13, 14, 15}.
        assert_eq!(obj.target(0).to_vec(), vec![1, 2, 3, 13, 14, 15]);
        assert!(g.validate().is_empty(), "this instance has no sinks");
        assert!(g.owners().iter().all(|&o| o == Player::P2));
    }

    #[test]
    fn figure2_has_triangle_and_removal_breaks_it() {
        let inst = figure2_instance();
        assert!(solve_triangle_instance(&inst, ReductionSolver::Fast).unwrap());
        let (g, obj, s) = triangle_to_game(&inst).unwrap();
        let res = solve_reduced(&g, &obj, ReductionSolver::Basic).unwrap();
        assert!(res.w1.is_empty());
        let _ = s;

        // Dropping (c, a) leaves no triangle and makes the hub winning.
        let without = TriangleInstance::new(4, vec![(0, 1), (1, 0), (1, 2), (2, 3), (3, 0)]).unwrap();
        let (g2, obj2, s2) = triangle_to_game(&without).unwrap();
        let res2 = solve_reduced(&g2, &obj2, ReductionSolver::Fast).unwrap();
        assert!(res2.w1.contains(s2));
        assert!(!decode_triangle(&res2));
    }

    #[test]
    fn single_directed_three_cycle_loses_everywhere() {
        let inst = TriangleInstance::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let (g, obj, _) = triangle_to_game(&inst).unwrap();
        let res = solve_reduced(&g, &obj, ReductionSolver::Fast).unwrap();
        assert!(res.w1.is_empty());
        assert!(decode_triangle(&res));
    }

    #[test]
    fn empty_graph_decodes_false() {
        let inst = TriangleInstance::new(0, vec![]).unwrap();
        assert!(!solve_triangle_instance(&inst, ReductionSolver::Fast).unwrap());
    }

    #[test]
    fn empty_edge_set_has_sinks_but_decodes_false() {
        let inst = TriangleInstance::new(3, vec![]).unwrap();
        let (g, _, _) = triangle_to_game(&inst).unwrap();
        assert!(!g.validate().is_empty(), "layer vertices are sinks");
        assert!(!solve_triangle_instance(&inst, ReductionSolver::Fast).unwrap());
        assert!(!solve_triangle_instance(&inst, ReductionSolver::Basic).unwrap());
    }

    #[test]
    fn ov_game_shape() {
        let inst = figure3_instance();
        let (g, obj, s) = ov_to_game(&inst).unwrap();
        assert_eq!(g.n(), 11);
        assert_eq!(s, 0);
        assert_eq!(obj.k(), 4);
        for j in 0..4 {
            assert_eq!(obj.target(j).to_vec(), vec![4 + j as u32]);
        }
        assert!(g.validate().is_empty());
        // (1,0,0) connects exactly to c_1 (vertex 8).
        assert_eq!(g.successors(1), &[8]);
        // c_2 (vertex 9) feeds the vectors with a 1 in coordinate 2.
        assert_eq!(g.successors(9), &[4, 5, 6]);
    }

    #[test]
    fn figure3_has_orthogonal_pair() {
        let inst = figure3_instance();
        assert!(solve_ov_instance(&inst, ReductionSolver::Fast).unwrap());
        let (g, obj, _) = ov_to_game(&inst).unwrap();
        let res = solve_reduced(&g, &obj, ReductionSolver::Basic).unwrap();
        assert!(res.w1.is_empty());
    }

    #[test]
    fn all_ones_only_second_set_without_zero_vector_wins() {
        let inst = OvInstance::new(
            3,
            vec![OvInstance::vector(&[1, 0, 0]), OvInstance::vector(&[0, 1, 1])],
            vec![OvInstance::vector(&[1, 1, 1])],
        )
        .unwrap();
        assert!(!solve_ov_instance(&inst, ReductionSolver::Fast).unwrap());
        let (g, obj, s) = ov_to_game(&inst).unwrap();
        let res = solve_reduced(&g, &obj, ReductionSolver::Fast).unwrap();
        assert!(res.w1.contains(s));
    }

    #[test]
    fn deleting_hub_leaves_acyclic_graphs() {
        for (g, hub) in [
            {
                let (g, _, s) = triangle_to_game(&figure2_instance()).unwrap();
                (g, s)
            },
            {
                let (g, _, s) = ov_to_game(&figure3_instance()).unwrap();
                (g, s)
            },
        ] {
            // Kahn-style peeling must consume every vertex except the hub.
            let n = g.n();
            let mut indeg = vec![0usize; n];
            for (u, v) in g.edges() {
                if u != hub && v != hub {
                    indeg[v as usize] += 1;
                }
            }
            let mut queue: Vec<u32> = (0..n as u32)
                .filter(|&v| v != hub && indeg[v as usize] == 0)
                .collect();
            let mut seen = 0;
            while let Some(u) = queue.pop() {
                seen += 1;
                for &v in g.successors(u) {
                    if v != hub {
                        indeg[v as usize] -= 1;
                        if indeg[v as usize] == 0 {
                            queue.push(v);
                        }
                    }
                }
            }
            assert_eq!(seen, n - 1, "cycle remains after deleting the hub");
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let a = gen_random_triangle(12, 0.3, 7);
        let b = gen_random_triangle(12, 0.3, 7);
        assert_eq!(a, b);
        let a = gen_random_ov(6, 4, 0.5, 7);
        let b = gen_random_ov(6, 4, 0.5, 7);
        assert_eq!(a, b);
        let spec = RandomGameSpec {
            n: 9,
            m: 20,
            k: 2,
            owner_bias: 0.5,
            target_size: (1, 3),
            seed: 42,
        };
        let (g1, o1) = gen_random_game(&spec);
        let (g2, o2) = gen_random_game(&spec);
        assert_eq!(g1, g2);
        assert_eq!(o1, o2);
        assert!(g1.validate().is_empty());
    }

    #[test]
    fn random_ov_contains_all_ones_and_no_zero_sources() {
        for seed in 0..20 {
            let inst = gen_random_ov(5, 4, 0.4, seed);
            assert!(inst.s2.contains(&inst.all_ones()));
            assert!(inst.s1.iter().all(|&x| x != 0));
            let (g, _, _) = ov_to_game(&inst.with_all_ones()).unwrap();
            assert!(g.validate().is_empty(), "seed {seed} produced a sink");
        }
    }

    #[test]
    fn zero_vector_in_first_set_decodes_true_both_ways() {
        // A zero vector is orthogonal to everything; the pipeline answers
        // directly, and the completed game agrees: its source vertex is
        // stuck, so the hub is losing for player 1.
        let inst = OvInstance::new(3, vec![0b000, 0b101], vec![0b111]).unwrap();
        assert!(solve_ov_instance(&inst, ReductionSolver::Fast).unwrap());
        let (g, obj, s) = ov_to_game(&inst).unwrap();
        assert!(!g.validate().is_empty(), "zero vector leaves a sink");
        let res = solve_reduced(&g, &obj, ReductionSolver::Fast).unwrap();
        assert!(!res.w1.contains(s));
        assert!(decode_ov(&res));
    }

    #[test]
    fn single_vertex_random_game_is_self_loop() {
        let spec = RandomGameSpec {
            n: 1,
            m: 1,
            k: 1,
            owner_bias: 0.5,
            target_size: (1, 1),
            seed: 3,
        };
        let (g, obj) = gen_random_game(&spec);
        assert_eq!(g.n(), 1);
        assert_eq!(g.successors(0), &[0]);
        assert_eq!(obj.target(0).to_vec(), vec![0]);
    }
}
