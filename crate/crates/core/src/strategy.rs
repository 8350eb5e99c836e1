//! Memoryless and finite-memory strategies.

use std::collections::{BTreeMap, BTreeSet};

use crate::arena::{Arena, Player, Pos};
use crate::error::{Error, Result};

/// A strategy that depends only on the current position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemorylessStrategy {
    pub player: Player,
    /// Chosen successor per owned position with outgoing edges.
    pub choices: BTreeMap<Pos, Pos>,
}

impl MemorylessStrategy {
    pub fn new(player: Player) -> Self {
        MemorylessStrategy { player, choices: BTreeMap::new() }
    }

    /// The strategy picking the smallest-id successor everywhere.
    pub fn first_successor(arena: &Arena, player: Player) -> Self {
        let choices = (0..arena.len())
            .filter(|&p| arena.owner(p) == player)
            .filter_map(|p| arena.successors(p).next().map(|q| (p, q)))
            .collect();
        MemorylessStrategy { player, choices }
    }
}

/// A Mealy-style strategy with an explicit memory alphabet.
///
/// The memory is updated on every move of either player from
/// `(memory, from, to)`; the move at an owned position is read from
/// `(memory, position)`. Tables only need to cover the pairs that can occur
/// while the strategy is followed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMemoryStrategy {
    pub player: Player,
    /// Human-readable label of each memory state.
    pub memory: Vec<String>,
    pub initial: usize,
    pub moves: BTreeMap<(usize, Pos), Pos>,
    pub updates: BTreeMap<(usize, Pos, Pos), usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Strategy {
    Memoryless(MemorylessStrategy),
    FiniteMemory(FiniteMemoryStrategy),
}

impl From<MemorylessStrategy> for Strategy {
    fn from(s: MemorylessStrategy) -> Self {
        Strategy::Memoryless(s)
    }
}

impl From<FiniteMemoryStrategy> for Strategy {
    fn from(s: FiniteMemoryStrategy) -> Self {
        Strategy::FiniteMemory(s)
    }
}

impl Strategy {
    pub fn player(&self) -> Player {
        match self {
            Strategy::Memoryless(s) => s.player,
            Strategy::FiniteMemory(s) => s.player,
        }
    }

    pub fn initial_memory(&self) -> usize {
        match self {
            Strategy::Memoryless(_) => 0,
            Strategy::FiniteMemory(s) => s.initial,
        }
    }

    pub fn memory_size(&self) -> usize {
        match self {
            Strategy::Memoryless(_) => 1,
            Strategy::FiniteMemory(s) => s.memory.len(),
        }
    }

    /// Move at `pos`, owned by this strategy's player: `None` (⊥) exactly
    /// when `pos` is a dead end.
    pub fn choose(&self, arena: &Arena, memory: usize, pos: Pos) -> Result<Option<Pos>> {
        if arena.owner(pos) != self.player() {
            return Err(Error::Contract(format!(
                "{} asked to move at {:?}, owned by {}",
                self.player(),
                arena.id(pos),
                arena.owner(pos)
            )));
        }
        if arena.is_dead_end(pos) {
            return Ok(None);
        }
        let next = match self {
            Strategy::Memoryless(s) => s.choices.get(&pos).copied(),
            Strategy::FiniteMemory(s) => s.moves.get(&(memory, pos)).copied(),
        };
        match next {
            Some(q) if arena.edge(pos, q).is_some() => Ok(Some(q)),
            Some(q) => Err(Error::Contract(format!(
                "strategy moves from {:?} to {:?} without an edge",
                arena.id(pos),
                arena.id(q)
            ))),
            None => Err(Error::Contract(format!(
                "strategy of {} undefined at {:?} (memory {memory})",
                self.player(),
                arena.id(pos)
            ))),
        }
    }

    pub fn update(&self, arena: &Arena, memory: usize, from: Pos, to: Pos) -> Result<usize> {
        match self {
            Strategy::Memoryless(_) => Ok(0),
            Strategy::FiniteMemory(s) => s.updates.get(&(memory, from, to)).copied().ok_or_else(|| {
                Error::Contract(format!(
                    "no memory update for move {:?} -> {:?} in memory {memory}",
                    arena.id(from),
                    arena.id(to)
                ))
            }),
        }
    }

    /// `(memory, position)` pairs that occur in plays consistent with the
    /// strategy, stopping where a table entry is missing.
    pub fn reachable_pairs(&self, arena: &Arena) -> BTreeSet<(usize, Pos)> {
        let start = (self.initial_memory(), arena.initial());
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some((m, p)) = stack.pop() {
            let next: Vec<Pos> = if arena.owner(p) == self.player() {
                self.choose(arena, m, p).ok().flatten().into_iter().collect()
            } else {
                arena.successors(p).collect()
            };
            for q in next {
                if let Ok(m2) = self.update(arena, m, p, q) {
                    if seen.insert((m2, q)) {
                        stack.push((m2, q));
                    }
                }
            }
        }
        seen
    }

    /// Checks every table entry against the arena: moves only at owned
    /// positions and only along edges, memory indices in range.
    pub fn check(&self, arena: &Arena) -> Result<()> {
        let player = self.player();
        let check_move = |p: Pos, q: Pos| -> Result<()> {
            if p >= arena.len() || q >= arena.len() || arena.edge(p, q).is_none() {
                return Err(Error::Contract(format!("move #{p} -> #{q} is not an edge")));
            }
            if arena.owner(p) != player {
                return Err(Error::Contract(format!("move defined at {:?}, not owned by {player}", arena.id(p))));
            }
            Ok(())
        };
        match self {
            Strategy::Memoryless(s) => s.choices.iter().try_for_each(|(&p, &q)| check_move(p, q)),
            Strategy::FiniteMemory(s) => {
                let m = s.memory.len();
                if s.initial >= m {
                    return Err(Error::Contract("initial memory out of range".into()));
                }
                for (&(mem, p), &q) in &s.moves {
                    if mem >= m {
                        return Err(Error::Contract("memory index out of range".into()));
                    }
                    check_move(p, q)?;
                }
                for (&(mem, p, q), &next) in &s.updates {
                    if mem >= m || next >= m || arena.edge(p, q).is_none() {
                        return Err(Error::Contract("bad memory update entry".into()));
                    }
                }
                Ok(())
            }
        }
    }
}
