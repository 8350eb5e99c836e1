//! Regret minimization on target-weighted arenas through the graph of best
//! alternatives.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};

use crate::arena::{Arena, Edge, Player, Pos, Position, TargetWeightedArena};
use crate::ext::{ExtNat, Fin, Inf};
use crate::minmax::minmax_strategy;
use crate::strategy::{FiniteMemoryStrategy, Strategy};

/// Least utility `player` can reach from each position when both players
/// cooperate: a shortest path to `C_i` under `player`'s edge weights.
pub fn best_values(arena: &Arena, player: Player) -> Vec<ExtNat> {
    let sources = (0..arena.len()).filter(|&p| arena.is_target(p, player)).map(|p| (p, 0));
    dijkstra_backward(arena, sources, |p| !arena.is_target(p, player), |e| e.weight(player))
}

/// Best values under target weights: `mu_i(s)` at a target, the least
/// reachable target weight elsewhere. These are the values of the
/// alternatives in a target-weighted arena.
pub fn target_values(twa: &TargetWeightedArena, player: Player) -> Vec<ExtNat> {
    let arena = twa.arena();
    let sources = (0..arena.len()).filter_map(|p| match twa.target_weight(player, p) {
        Some(Fin(w)) => Some((p, w)),
        _ => None,
    });
    dijkstra_backward(arena, sources, |p| !arena.is_target(p, player), |_| 0)
}

fn dijkstra_backward(
    arena: &Arena,
    sources: impl Iterator<Item = (Pos, u64)>,
    relaxable: impl Fn(Pos) -> bool,
    cost: impl Fn(&Edge) -> u64,
) -> Vec<ExtNat> {
    let mut dist = vec![Inf; arena.len()];
    let mut heap = BinaryHeap::new();
    for (p, d) in sources {
        dist[p] = Fin(d);
        heap.push(Reverse((d, p)));
    }
    while let Some(Reverse((d, q))) = heap.pop() {
        if dist[q] != Fin(d) {
            continue;
        }
        for e in arena.in_edges(q) {
            let nd = d + cost(e);
            if relaxable(e.src) && Fin(nd) < dist[e.src] {
                dist[e.src] = Fin(nd);
                heap.push(Reverse((nd, e.src)));
            }
        }
    }
    dist
}

/// `ba_i(s, s')`: `inf` at positions of the opponent, otherwise the best
/// value over the other successors of `s`.
pub fn edge_best_alternative(twa: &TargetWeightedArena, player: Player, s: Pos, succ: Pos) -> ExtNat {
    alternative(twa.arena(), &target_values(twa, player), player, s, succ)
}

fn alternative(arena: &Arena, values: &[ExtNat], player: Player, s: Pos, succ: Pos) -> ExtNat {
    if arena.owner(s) != player {
        return Inf;
    }
    ExtNat::min_of(arena.successors(s).filter(|&q| q != succ).map(|q| values[q]))
}

/// The reachable product of a TWA with best-alternative values.
///
/// Nodes are pairs `(s, b)` starting from `(s0, inf)`. Moving along
/// `(s, s')` updates `b` to `min(b, ba_i(s, s'))`. The targets of the solved
/// player keep their position and weigh `mu_i(s) - min(mu_i(s), b)`.
#[derive(Debug, Clone)]
pub struct BestAlternativeGraph {
    pub player: Player,
    /// The product as a target-weighted arena (only the solved player's
    /// targets are kept).
    pub product: TargetWeightedArena,
    /// Product position to `(source position, best alternative)`.
    pub nodes: Vec<(Pos, ExtNat)>,
}

impl BestAlternativeGraph {
    pub fn node(&self, p: Pos) -> (Pos, ExtNat) {
        self.nodes[p]
    }

    /// Product position of `(s, b)` if it was reached.
    pub fn find(&self, s: Pos, b: ExtNat) -> Option<Pos> {
        self.nodes.iter().position(|&n| n == (s, b))
    }

    /// Largest number of distinct `b` values attached to one source position.
    pub fn max_alternatives_per_position(&self) -> usize {
        let mut per: HashMap<Pos, usize> = HashMap::new();
        for &(s, _) in &self.nodes {
            *per.entry(s).or_default() += 1;
        }
        per.into_values().max().unwrap_or(0)
    }
}

pub fn build_best_alternative_graph(twa: &TargetWeightedArena, player: Player) -> BestAlternativeGraph {
    let arena = twa.arena();
    let values = target_values(twa, player);
    let mut index: HashMap<(Pos, ExtNat), usize> = HashMap::new();
    let mut nodes = vec![(arena.initial(), Inf)];
    index.insert(nodes[0], 0);
    let mut edges = Vec::new();
    let mut k = 0;
    while k < nodes.len() {
        let (s, b) = nodes[k];
        for q in arena.successors(s) {
            let next = (q, b.min(alternative(arena, &values, player, s, q)));
            let dst = *index.entry(next).or_insert_with(|| {
                nodes.push(next);
                nodes.len() - 1
            });
            edges.push(Edge { src: k, dst, weights: [0, 0] });
        }
        k += 1;
    }
    let positions = nodes
        .iter()
        .map(|&(s, b)| {
            let src = arena.position(s);
            let mut targets = [false; 2];
            targets[player.index()] = src.targets[player.index()];
            Position { id: format!("{}#{}", src.id, b), owner: src.owner, targets }
        })
        .collect();
    let mut explicit = [BTreeMap::new(), BTreeMap::new()];
    let unsorted = Arena::from_unsorted_parts(positions, 0, edges);
    // Product ids are unique: `b` never contains '#'.
    let mut order = vec![0; nodes.len()];
    for (k, &(s, b)) in nodes.iter().enumerate() {
        let id = format!("{}#{}", arena.id(s), b);
        order[k] = unsorted.lookup(&id).expect("product id");
    }
    let mut sorted_nodes = vec![(0, Inf); nodes.len()];
    for (k, &node) in nodes.iter().enumerate() {
        sorted_nodes[order[k]] = node;
        let (s, b) = node;
        if let Some(mu) = twa.target_weight(player, s) {
            explicit[player.index()].insert(order[k], mu.excess_over(b));
        }
    }
    let product = TargetWeightedArena::with_target_weights(unsorted, explicit).expect("product targets carry weights");
    BestAlternativeGraph { player, product, nodes: sorted_nodes }
}

/// Solved regret with a witness strategy for the source arena.
#[derive(Debug, Clone)]
pub struct RegretReport {
    pub player: Player,
    pub regret: ExtNat,
    /// Finite-memory strategy whose memory is the best alternative seen.
    pub witness: Strategy,
    /// False when the regret is `inf` and the witness is arbitrary.
    pub winning: bool,
    pub product_size: usize,
}

pub fn regret(twa: &TargetWeightedArena, player: Player) -> RegretReport {
    let graph = build_best_alternative_graph(twa, player);
    let solution = minmax_strategy(&graph.product, player);
    let witness = pull_back(twa.arena(), &graph, &solution.strategy.choices);
    RegretReport {
        player,
        regret: solution.value,
        witness: witness.into(),
        winning: solution.winning,
        product_size: graph.nodes.len(),
    }
}

/// Runs a memoryless product strategy on the source arena, keeping the `b`
/// component as memory. Only reachable (memory, position) pairs appear.
fn pull_back(arena: &Arena, graph: &BestAlternativeGraph, choices: &BTreeMap<Pos, Pos>) -> FiniteMemoryStrategy {
    let product = graph.product.arena();
    let alphabet: BTreeSet<ExtNat> = graph.nodes.iter().map(|&(_, b)| b).collect();
    let alphabet: Vec<ExtNat> = alphabet.into_iter().collect();
    let mem = |b: ExtNat| alphabet.binary_search(&b).expect("known alternative");
    let mut moves = BTreeMap::new();
    let mut updates = BTreeMap::new();
    for (p, &(s, b)) in graph.nodes.iter().enumerate() {
        if let Some(&q) = choices.get(&p) {
            if arena.owner(s) == graph.player {
                moves.insert((mem(b), s), graph.nodes[q].0);
            }
        }
        for q in product.successors(p) {
            let (t, b2) = graph.nodes[q];
            updates.insert((mem(b), s, t), mem(b2));
        }
    }
    FiniteMemoryStrategy {
        player: graph.player,
        memory: alphabet.iter().map(|b| format!("b={b}")).collect(),
        initial: mem(Inf),
        moves,
        updates,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::ArenaSpec;
    use crate::play::{outcome, outcome_utility};
    use crate::strategy::MemorylessStrategy;
    use Player::*;

    fn build(spec: ArenaSpec) -> TargetWeightedArena {
        TargetWeightedArena::from_arena(spec.build().unwrap()).unwrap()
    }

    /// A P2 root choosing between a P1 choice point and a P1 node with a
    /// cooperative detour.
    fn memory_example() -> TargetWeightedArena {
        let mut spec = ArenaSpec::new("A");
        for (id, owner) in [("A", P2), ("B", P1), ("C", P1), ("D", P2), ("F", P2)] {
            spec = spec.position(id, owner, [false; 2]);
        }
        for id in ["E", "G", "H", "I", "J"] {
            spec = spec.position(id, P1, [true, false]);
        }
        spec.edge("A", "B", 0, 0)
            .edge("A", "C", 0, 0)
            .edge("B", "C", 0, 0)
            .edge("B", "D", 0, 0)
            .edge("C", "E", 3, 0)
            .edge("C", "F", 0, 0)
            .edge("D", "G", 3, 0)
            .edge("D", "H", 0, 0)
            .edge("F", "I", 4, 0)
            .edge("F", "J", 0, 0)
            .build()
            .map(|a| TargetWeightedArena::from_arena(a).unwrap())
            .unwrap()
    }

    #[test]
    fn best_values_on_two_routes() {
        let arena = ArenaSpec::new("s")
            .position("s", P1, [false; 2])
            .position("a", P2, [false; 2])
            .position("b", P2, [false; 2])
            .position("c", P1, [false; 2])
            .position("t", P1, [true, false])
            .position("x", P1, [false; 2])
            .edge("s", "a", 1, 0)
            .edge("s", "b", 1, 0)
            .edge("a", "t", 3, 0)
            .edge("b", "c", 0, 0)
            .edge("c", "t", 1, 0)
            .edge("s", "x", 0, 0)
            .build()
            .unwrap();
        let v = best_values(&arena, P1);
        assert_eq!(v[arena.lookup("s").unwrap()], Fin(2));
        assert_eq!(v[arena.lookup("a").unwrap()], Fin(3));
        assert_eq!(v[arena.lookup("t").unwrap()], Fin(0));
        assert_eq!(v[arena.lookup("x").unwrap()], Inf);
    }

    #[test]
    fn best_alternatives_in_memory_example() {
        let g = memory_example();
        let a = g.arena();
        let id = |s: &str| a.lookup(s).unwrap();
        assert_eq!(edge_best_alternative(&g, P1, id("C"), id("E")), Fin(0));
        assert_eq!(edge_best_alternative(&g, P1, id("C"), id("F")), Fin(3));
        assert_eq!(edge_best_alternative(&g, P1, id("A"), id("B")), Inf);
        assert_eq!(edge_best_alternative(&g, P1, id("B"), id("D")), Fin(0));
        let values = target_values(&g, P1);
        assert_eq!(values[id("D")], Fin(0));
        assert_eq!(values[id("E")], Fin(3));
    }

    #[test]
    fn memory_example_regret_is_three() {
        let g = memory_example();
        let report = regret(&g, P1);
        assert_eq!(report.regret, Fin(3));
        assert!(report.winning);
        let graph = build_best_alternative_graph(&g, P1);
        let e = g.arena().lookup("E").unwrap();
        assert!(graph.find(e, Fin(0)).is_some());
        // A C E keeps b = 0 from the alternative through F.
        report.witness.check(g.arena()).unwrap();
    }

    #[test]
    fn memory_example_outcome() {
        let g = memory_example();
        let a = g.arena();
        let id = |s: &str| a.lookup(s).unwrap();
        let mut l1 = MemorylessStrategy::new(P1);
        l1.choices.insert(id("B"), id("C"));
        l1.choices.insert(id("C"), id("E"));
        let mut l2 = MemorylessStrategy::first_successor(a, P2);
        l2.choices.insert(id("A"), id("B"));
        let play = outcome(a, &l1.clone().into(), &l2.clone().into()).unwrap();
        assert_eq!(play.ids(a), ["A", "B", "C", "E"]);
        assert_eq!(outcome_utility(a, &l1.into(), &l2.into(), P1).unwrap(), Fin(3));
    }

    #[test]
    fn no_choice_means_no_alternatives() {
        let g = build(ArenaSpec::new("s")
            .position("s", P2, [false; 2])
            .position("m", P1, [false; 2])
            .position("n", P2, [false; 2])
            .position("t", P1, [true, false])
            .position("u", P1, [true, false])
            .edge("s", "m", 0, 0)
            .edge("s", "n", 0, 0)
            .edge("m", "t", 4, 0)
            .edge("n", "u", 2, 0));
        let graph = build_best_alternative_graph(&g, P1);
        assert_eq!(graph.nodes.len(), g.arena().len());
        assert!(graph.nodes.iter().all(|&(_, b)| b == Inf));
        assert_eq!(regret(&g, P1).regret, Fin(0));
    }

    #[test]
    fn losing_player_has_infinite_regret() {
        let g = build(ArenaSpec::new("s")
            .position("s", P2, [false; 2])
            .position("t", P1, [true, false])
            .position("x", P1, [false; 2])
            .edge("s", "t", 1, 0)
            .edge("s", "x", 0, 0));
        let report = regret(&g, P1);
        assert_eq!(report.regret, Inf);
        assert!(!report.winning);
    }

    #[test]
    fn two_choices_regret() {
        // Player 1 picks 5 or 2: the 2 has regret 0.
        let g = build(ArenaSpec::new("s")
            .position("s", P1, [false; 2])
            .position("a", P1, [true, false])
            .position("b", P1, [true, false])
            .edge("s", "a", 5, 0)
            .edge("s", "b", 2, 0));
        let report = regret(&g, P1);
        assert_eq!(report.regret, Fin(0));
        let play = outcome(g.arena(), &report.witness, &MemorylessStrategy::new(P2).into()).unwrap();
        assert_eq!(play.ids(g.arena()), ["s", "b"]);
    }
}
