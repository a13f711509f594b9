//! The small worked games used throughout the docs and tests.
//!
//! Node 0 (`a`) belongs to Alice; nodes 1 (`b`) and 2 (`c`) belong to Bob.

use alloc::vec;

use crate::graph::{Edge, GameGraph, Player};

/// The three-node car game: `a->b:7, a->c:2, b->c:4, b->a:-2, c->b:3, c->a:-8`.
pub fn figure1() -> GameGraph {
    GameGraph::new(
        vec![Player::Alice, Player::Bob, Player::Bob],
        vec![
            Edge::new(0, 1, 7),
            Edge::new(0, 2, 2),
            Edge::new(1, 2, 4),
            Edge::new(1, 0, -2),
            Edge::new(2, 1, 3),
            Edge::new(2, 0, -8),
        ],
    )
    .expect("static example")
}

/// The same game with Bob's optimal choices fixed: `a->b:7, a->c:2, b->c:4, c->a:-8`.
pub fn figure3() -> GameGraph {
    GameGraph::new(
        vec![Player::Alice, Player::Bob, Player::Bob],
        vec![
            Edge::new(0, 1, 7),
            Edge::new(0, 2, 2),
            Edge::new(1, 2, 4),
            Edge::new(2, 0, -8),
        ],
    )
    .expect("static example")
}
