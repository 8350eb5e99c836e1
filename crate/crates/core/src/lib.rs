//! Regret and iterated regret minimization for two-player quantitative
//! reachability games on finite weighted arenas.

pub mod arena;
pub mod document;
pub mod error;
pub mod ext;
pub mod fixtures;
pub mod generate;
pub mod iterated_positive;
pub mod iterated_tree;
pub mod matrix;
pub mod minmax;
pub mod oracle;
pub mod play;
pub mod regret_edge;
pub mod report;
pub mod regret_twa;
pub mod strategy;

pub use arena::{edge_tree_to_leaf_twa, Arena, ArenaSpec, Player, Pos, TargetWeightedArena, Violation};
pub use error::{Error, Result};
pub use ext::{ExtNat, Fin, Inf};
pub use play::{outcome, outcome_utility, utility, Play, PlayEnd};
pub use strategy::{FiniteMemoryStrategy, MemorylessStrategy, Strategy};
