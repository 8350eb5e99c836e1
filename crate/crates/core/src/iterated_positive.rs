//! Iterated regret on arenas whose edge weights are all at least 1.
//!
//! Plays whose accumulated weights stay within `B` form a finite tree; the
//! tree is solved by [`crate::iterated_tree`] and the witnesses are mapped
//! back to the arena with the tree node as memory.

use std::collections::BTreeMap;

use crate::arena::{Arena, Edge, Pos, Position};
use crate::error::{Error, Result};
use crate::iterated_tree::{iterated_regret as iterate_tree, IteratedReport};
use crate::strategy::{FiniteMemoryStrategy, MemorylessStrategy};

pub const DEFAULT_UNFOLD_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnfoldConfig {
    /// Most tree nodes the unfolding may create.
    pub cap: usize,
    /// Replaces `B` when set. For tests on small instances.
    pub bound: Option<u64>,
}

impl Default for UnfoldConfig {
    fn default() -> Self {
        UnfoldConfig { cap: DEFAULT_UNFOLD_CAP, bound: None }
    }
}

/// `(b, B) = (6 M^3 |S|, b M)`, saturating.
pub fn bounds(arena: &Arena) -> Result<(u64, u64)> {
    arena.check_positive()?;
    let m = arena.max_weight();
    let b = 6u64.saturating_mul(m.saturating_pow(3)).saturating_mul(arena.len() as u64);
    Ok((b, b.saturating_mul(m)))
}

/// Tree of the plays whose accumulated weights are both at most `bound`.
#[derive(Debug, Clone)]
pub struct Unfolding {
    pub bound: u64,
    pub tree: Arena,
    /// Tree node to the last position of its play.
    pub origin: Vec<Pos>,
    /// Accumulated weights of each play.
    pub utilities: Vec<[u64; 2]>,
}

pub fn unfold(arena: &Arena, bound: u64, config: &UnfoldConfig) -> Result<Unfolding> {
    arena.check_positive()?;
    if config.cap == 0 {
        return Err(Error::Input("unfold cap must be at least 1".into()));
    }
    let mut origin = vec![arena.initial()];
    let mut utilities = vec![[0u64; 2]];
    let mut edges = Vec::new();
    let mut k = 0;
    while k < origin.len() {
        let acc = utilities[k];
        for e in arena.out_edges(origin[k]) {
            let next = [acc[0] + e.weights[0], acc[1] + e.weights[1]];
            if next[0] > bound || next[1] > bound {
                continue;
            }
            if origin.len() == config.cap {
                return Err(Error::Resource {
                    what: "unfolding",
                    required: format!("more than {} nodes", config.cap),
                    cap: config.cap as u64,
                });
            }
            origin.push(e.dst);
            utilities.push(next);
            edges.push(Edge { src: k, dst: origin.len() - 1, weights: e.weights });
        }
        k += 1;
    }
    let width = (origin.len() - 1).max(1).to_string().len();
    let positions = origin
        .iter()
        .enumerate()
        .map(|(k, &s)| {
            let src = arena.position(s);
            Position { id: format!("u{k:0width$}:{}", src.id), owner: src.owner, targets: src.targets }
        })
        .collect();
    let tree = Arena::from_sorted_parts(positions, 0, edges);
    Ok(Unfolding { bound, tree, origin, utilities })
}

#[derive(Debug, Clone)]
pub struct PositiveReport {
    /// `(b, B)` of the arena.
    pub bounds: (u64, u64),
    /// The bound actually used for unfolding.
    pub bound: u64,
    pub unfolded_nodes: usize,
    pub tree: IteratedReport,
    /// Witnesses on the arena, with the play so far (up to `B`) as memory
    /// and an overflow state beyond.
    pub witnesses: [FiniteMemoryStrategy; 2],
}

pub fn iterated_regret(arena: &Arena, config: &UnfoldConfig) -> Result<PositiveReport> {
    let (b, big_b) = bounds(arena)?;
    let bound = config.bound.unwrap_or(big_b);
    let unfolding = unfold(arena, bound, config)?;
    let tree = iterate_tree(&unfolding.tree)?;
    let witnesses = tree.witnesses.clone().map(|w| map_back(arena, &unfolding, &w));
    Ok(PositiveReport { bounds: (b, big_b), bound, unfolded_nodes: unfolding.origin.len(), tree, witnesses })
}

/// Memory is the tree node reached so far, restricted to nodes compatible
/// with the strategy. Moves leaving the tree switch to `overflow`, where the
/// smallest-id successor is played.
fn map_back(arena: &Arena, unfolding: &Unfolding, strategy: &MemorylessStrategy) -> FiniteMemoryStrategy {
    let tree = &unfolding.tree;
    let player = strategy.player;
    let mut reached = vec![0];
    let mut k = 0;
    while k < reached.len() {
        let h = reached[k];
        if tree.owner(h) == player {
            reached.extend(strategy.choices.get(&h).copied());
        } else {
            reached.extend(tree.successors(h));
        }
        k += 1;
    }
    reached.sort_unstable();
    let mem: BTreeMap<Pos, usize> = reached.iter().enumerate().map(|(m, &h)| (h, m)).collect();
    let overflow = reached.len();
    let mut memory: Vec<String> = reached.iter().map(|&h| tree.id(h).to_string()).collect();
    memory.push("overflow".to_string());
    let mut moves = BTreeMap::new();
    let mut updates = BTreeMap::new();
    for &h in &reached {
        let s = unfolding.origin[h];
        let m = mem[&h];
        let inside: BTreeMap<Pos, Pos> = tree.successors(h).map(|c| (unfolding.origin[c], c)).collect();
        for t in arena.successors(s) {
            let next = inside.get(&t).and_then(|c| mem.get(c)).copied().unwrap_or(overflow);
            updates.insert((m, s, t), next);
        }
        if arena.owner(s) == player && !arena.is_dead_end(s) {
            let t = match strategy.choices.get(&h) {
                Some(&c) => unfolding.origin[c],
                None => arena.successors(s).next().unwrap(),
            };
            moves.insert((m, s), t);
        }
    }
    for s in 0..arena.len() {
        if arena.owner(s) == player {
            if let Some(t) = arena.successors(s).next() {
                moves.insert((overflow, s), t);
            }
        }
        for t in arena.successors(s) {
            updates.insert((overflow, s, t), overflow);
        }
    }
    FiniteMemoryStrategy { player, memory, initial: mem[&0], moves, updates }
}
