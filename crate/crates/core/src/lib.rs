//! Solvers for two-player games on graphs with generalized Büchi and GR(1)
//! objectives: winning-set algorithms, a dominion-bounded progress-measure
//! lifter, strategy extraction with independent certificate checkers,
//! hardness-reduction instance generators, and reference oracles for
//! cross-validation.

mod arena;
pub mod attractor;
pub mod error;
pub mod format;
pub mod game;
pub mod genbuchi;
pub mod gr1;
pub mod oracle;
pub mod progress;
pub mod reductions;
pub mod strategy;

#[cfg(test)]
pub(crate) mod test_games;

pub use attractor::{attractor, is_closed, AttractorResult, NO_RANK};
pub use error::{Error, Violation};
pub use game::{
    DominionSource, GameGraph, GenBuchiObjective, Gr1IterationRecord, Gr1Objective,
    Gr1SolveResult, IterationRecord, Objective, Player, SolveResult, SubgameMap, VertexSet,
    NO_VERTEX,
};
pub use format::{
    parse_game, parse_result, partition_checksum, serialize_game, serialize_result, ResultFile,
};
pub use genbuchi::{build_level, solve_basic, solve_fast, LevelGraph};
pub use gr1::{find_small_dominion, solve_gr1_basic, solve_gr1_fast};
pub use oracle::{
    brute_force_ov, brute_force_small_dominions, brute_force_triangle, genbuchi_to_buchi,
    solve_buchi, solve_via_buchi_reduction, BuchiReduction,
};
pub use progress::{
    lift_dominion, lift_dominion_ordered, Dominion, LiftOrder, ProgressMeasure, RhoTable,
    INFINITE_RHO,
};
pub use reductions::{
    decode_ov, decode_triangle, gen_random_game, gen_random_gr1, gen_random_ov,
    gen_random_triangle, ov_to_game, solve_ov_instance, solve_reduced, solve_triangle_instance,
    triangle_to_game, OvInstance, RandomGameSpec, ReductionSolver, TriangleInstance,
};
pub use strategy::{
    check_p1_genbuchi, check_p1_gr1, check_p2_genbuchi, check_p2_gr1,
    extract_genbuchi_strategies, extract_gr1_strategies, Counterexample, Gr1CertRecord,
    Gr1Certificate, P1GenBuchiStrategy, P1Gr1Strategy, P2CertRecord, P2GenBuchiCertificate,
};
