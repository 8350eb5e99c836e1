//! Example games shipped with the crate.

use crate::arena::{Arena, TargetWeightedArena};
use crate::document::{parse_arena, parse_matrix};
use crate::matrix::PenaltyMatrix;

pub const MEMORY_EXAMPLE: &str = include_str!("../fixtures/memory_example.json");
pub const CENTIPEDE: &str = include_str!("../fixtures/centipede.json");
pub const FIGURE_ONE: &str = include_str!("../fixtures/figure_one.json");

/// Player 1 needs memory: after `A B C` she must leave `C` towards `E`, after
/// `A C` towards `F`. Her regret is 3.
pub fn memory_example() -> TargetWeightedArena {
    TargetWeightedArena::from_arena(parse_arena(MEMORY_EXAMPLE).expect("fixture parses").arena).expect("fixture is target-weighted")
}

/// Alternating stop/continue tree; iterated regret minimization ends in the
/// last stop with penalties `(1, 3)`.
pub fn centipede() -> Arena {
    parse_arena(CENTIPEDE).expect("fixture parses").arena
}

/// Two-by-two penalty game whose iterated regret outcome is `(B1, A2)`.
pub fn figure_one() -> PenaltyMatrix {
    parse_matrix(FIGURE_ONE).expect("fixture parses")
}

/// Name and document text of every arena fixture.
pub fn arena_fixtures() -> [(&'static str, &'static str); 2] {
    [("memory_example", MEMORY_EXAMPLE), ("centipede", CENTIPEDE)]
}
