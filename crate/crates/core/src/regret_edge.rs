//! Regret minimization on edge-weighted arenas.
//!
//! Winning regret minimizers keep the solved player's utility within
//! `B = 2 * M * |S|`, so positions are paired with the utility accumulated so
//! far (up to `B`) and the resulting target-weighted arena is solved by
//! [`crate::regret_twa`].

use std::collections::{BTreeMap, HashMap};

use crate::arena::{Arena, Edge, Player, Pos, Position, TargetWeightedArena};
use crate::error::{Error, Result};
use crate::ext::Fin;
use crate::regret_twa::{self, RegretReport};
use crate::strategy::{FiniteMemoryStrategy, Strategy};

/// Default cap on utility-graph positions.
pub const DEFAULT_NODE_CAP: u64 = 5_000_000;

/// `2 * M * |S|`, saturating.
pub fn strategy_bound(arena: &Arena) -> u64 {
    2u64.saturating_mul(arena.max_weight()).saturating_mul(arena.len() as u64)
}

/// Reachable pairs `(s, u)` with `u <= bound`, plus one losing sink that
/// absorbs every move pushing the utility past `bound`.
#[derive(Debug, Clone)]
pub struct UtilityGraph {
    pub player: Player,
    pub bound: u64,
    pub twa: TargetWeightedArena,
    /// Product position to `(source position, utility)`; `None` for the sink.
    pub nodes: Vec<Option<(Pos, u64)>>,
}

impl UtilityGraph {
    pub fn find(&self, s: Pos, u: u64) -> Option<Pos> {
        self.nodes.iter().position(|&n| n == Some((s, u)))
    }

    pub fn sink(&self) -> Option<Pos> {
        self.nodes.iter().position(Option::is_none)
    }
}

pub const SINK_ID: &str = "#overflow";

pub fn build_utility_graph(arena: &Arena, player: Player, bound: u64) -> UtilityGraph {
    build_capped(arena, player, bound, u64::MAX).expect("uncapped")
}

fn build_capped(arena: &Arena, player: Player, bound: u64, cap: u64) -> Result<UtilityGraph> {
    let mut index: HashMap<Option<(Pos, u64)>, usize> = HashMap::new();
    let mut nodes = vec![Some((arena.initial(), 0))];
    index.insert(nodes[0], 0);
    let mut edges = Vec::new();
    let mut k = 0;
    while k < nodes.len() {
        if nodes.len() as u64 > cap {
            return Err(Error::Resource {
                what: "utility graph",
                required: format!("more than {cap} positions"),
                cap,
            });
        }
        let Some((s, u)) = nodes[k] else {
            k += 1;
            continue;
        };
        for e in arena.out_edges(s) {
            let v = u.saturating_add(e.weight(player));
            let next = (v <= bound).then_some((e.dst, v));
            let dst = *index.entry(next).or_insert_with(|| {
                nodes.push(next);
                nodes.len() - 1
            });
            edges.push(Edge { src: k, dst, weights: [0, 0] });
        }
        k += 1;
    }
    // Several moves may overflow into the sink from the same position.
    edges.sort_by_key(|e| (e.src, e.dst));
    edges.dedup_by_key(|e| (e.src, e.dst));
    let id_of = |n: &Option<(Pos, u64)>| match n {
        Some((s, u)) => format!("{}#{u}", arena.id(*s)),
        None => SINK_ID.to_string(),
    };
    let positions = nodes
        .iter()
        .map(|n| {
            let (owner, targets) = match n {
                Some((s, _)) => {
                    let mut t = [false; 2];
                    t[player.index()] = arena.is_target(*s, player);
                    (arena.owner(*s), t)
                }
                None => (player, [false; 2]),
            };
            Position { id: id_of(n), owner, targets }
        })
        .collect();
    let unsorted = Arena::from_unsorted_parts(positions, 0, edges);
    let mut sorted = vec![None; nodes.len()];
    let mut explicit = [BTreeMap::new(), BTreeMap::new()];
    for n in &nodes {
        let p = unsorted.lookup(&id_of(n)).expect("product id");
        sorted[p] = *n;
        if let Some((s, u)) = n {
            if arena.is_target(*s, player) {
                explicit[player.index()].insert(p, Fin(*u));
            }
        }
    }
    let twa = TargetWeightedArena::with_target_weights(unsorted, explicit).expect("targets carry weights");
    Ok(UtilityGraph { player, bound, twa, nodes: sorted })
}

pub fn regret(arena: &Arena, player: Player) -> Result<RegretReport> {
    regret_with_cap(arena, player, DEFAULT_NODE_CAP)
}

/// Regret of `player` with a witness whose memory is the accumulated
/// utility (up to `B`) and the best alternative seen, plus an overflow
/// state that plays the smallest-id successor.
pub fn regret_with_cap(arena: &Arena, player: Player, cap: u64) -> Result<RegretReport> {
    let bound = strategy_bound(arena);
    let graph = build_capped(arena, player, bound, cap)?;
    let inner = regret_twa::regret(&graph.twa, player);
    let Strategy::FiniteMemory(fm) = &inner.witness else {
        unreachable!("regret_twa returns finite-memory witnesses")
    };
    let witness = pull_back(arena, &graph, fm);
    Ok(RegretReport { witness: witness.into(), product_size: graph.nodes.len(), ..inner })
}

fn pull_back(arena: &Arena, graph: &UtilityGraph, inner: &FiniteMemoryStrategy) -> FiniteMemoryStrategy {
    let mut labels: BTreeMap<(u64, usize), usize> = BTreeMap::new();
    for (&(b, p, q), &b2) in &inner.updates {
        for (node, mem) in [(p, b), (q, b2)] {
            if let Some((_, u)) = graph.nodes[node] {
                labels.insert((u, mem), 0);
            }
        }
    }
    for &(b, p) in inner.moves.keys() {
        if let Some((_, u)) = graph.nodes[p] {
            labels.insert((u, b), 0);
        }
    }
    labels.insert((0, inner.initial), 0);
    let mut memory = Vec::new();
    for (k, (&(u, b), slot)) in labels.iter_mut().enumerate() {
        *slot = k;
        memory.push(format!("u={u},{}", inner.memory[b]));
    }
    let overflow = memory.len();
    memory.push("overflow".to_string());
    let mut moves = BTreeMap::new();
    let mut updates = BTreeMap::new();
    for (&(b, p), &q) in &inner.moves {
        let Some((s, u)) = graph.nodes[p] else { continue };
        let t = match graph.nodes[q] {
            Some((t, _)) => t,
            None => arena
                .out_edges(s)
                .iter()
                .find(|e| u.saturating_add(e.weight(graph.player)) > graph.bound)
                .expect("an edge leads to the sink")
                .dst,
        };
        moves.insert((labels[&(u, b)], s), t);
    }
    for (&(b, p, q), &b2) in &inner.updates {
        let Some((s, u)) = graph.nodes[p] else { continue };
        let mem = labels[&(u, b)];
        match graph.nodes[q] {
            Some((t, v)) => {
                updates.insert((mem, s, t), labels[&(v, b2)]);
            }
            None => {
                for e in arena.out_edges(s) {
                    if u.saturating_add(e.weight(graph.player)) > graph.bound {
                        updates.insert((mem, s, e.dst), overflow);
                    }
                }
            }
        }
    }
    for p in 0..arena.len() {
        if arena.owner(p) == graph.player {
            if let Some(q) = arena.successors(p).next() {
                moves.insert((overflow, p), q);
            }
        }
        for q in arena.successors(p) {
            updates.insert((overflow, p, q), overflow);
        }
    }
    FiniteMemoryStrategy {
        player: graph.player,
        memory,
        initial: labels[&(0, inner.initial)],
        moves,
        updates,
    }
}

/// Same regret whichever reduction applies: the target-weighted one when the
/// arena satisfies the TWA property, the utility graph otherwise.
pub fn regret_auto(arena: &Arena, player: Player) -> Result<(RegretReport, bool)> {
    match TargetWeightedArena::from_arena(arena.clone()) {
        Ok(twa) => Ok((regret_twa::regret(&twa, player), true)),
        Err(_) => regret(arena, player).map(|r| (r, false)),
    }
}
