//! Shared fixtures for unit tests.

use crate::game::{GameGraph, GenBuchiObjective, Player};

/// How an edge of the 10-vertex example game is drawn in the decomposition
/// illustration: solid edges appear at level 1, dashed at level 2, the one
/// dotted edge only at the top level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Solid,
    Dashed,
    Dotted,
}

/// The 10-vertex, 23-edge example game. Vertices a..j map to ids 0..9;
/// players: b, c, i belong to player 1, the rest to player 2. Targets:
/// T1 = {a, e, i}, T2 = {b, d}.
pub fn figure1() -> (GameGraph, GenBuchiObjective) {
    use Player::{P1, P2};
    let owner = vec![P2, P1, P1, P2, P2, P2, P2, P2, P1, P2];
    let g = GameGraph::new(owner, &figure1_edges()).unwrap();
    let obj = GenBuchiObjective::new(10, &[vec![0, 4, 8], vec![1, 3]]).unwrap();
    (g, obj)
}

pub fn figure1_edges() -> Vec<(u32, u32)> {
    vec![
        (0, 1),
        (1, 0),
        (1, 5),
        (2, 1),
        (2, 3),
        (2, 6),
        (2, 7),
        (2, 8),
        (3, 2),
        (3, 4),
        (4, 3),
        (4, 9),
        (5, 0),
        (5, 1),
        (5, 6),
        (6, 1),
        (6, 7),
        (7, 1),
        (7, 2),
        (8, 3),
        (8, 7),
        (9, 3),
        (9, 4),
    ]
}

pub fn figure1_edge_kind(edge: (u32, u32)) -> EdgeKind {
    match edge {
        (2, 1) => EdgeKind::Dotted,
        (2, 7) | (2, 3) | (5, 1) => EdgeKind::Dashed,
        _ => EdgeKind::Solid,
    }
}
