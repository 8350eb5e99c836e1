//! Min-max reachability games on target-weighted arenas.
//!
//! `can_achieve` is a layered attractor with successor counters;
//! `minmax_value` runs a dichotomy over the distinct target weights.

use crate::arena::{Player, Pos, TargetWeightedArena};
use crate::ext::{ExtNat, Fin, Inf};
use crate::strategy::MemorylessStrategy;

/// Work done by one attractor computation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AttractorStats {
    /// Number of layers added after `W_0`.
    pub rounds: u32,
    /// Counter initializations plus decrements.
    pub counter_updates: u64,
    /// Incoming edges inspected while propagating.
    pub edge_visits: u64,
}

/// Result of `can_achieve`: the final set `W*` with the layer of each member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attractor {
    pub player: Player,
    pub bound: u64,
    /// `layer[s] = Some(j)` iff `s` entered at round `j`.
    pub layer: Vec<Option<u32>>,
    pub stats: AttractorStats,
    initial: Pos,
}

impl Attractor {
    pub fn winning(&self) -> bool {
        self.layer[self.initial].is_some()
    }

    pub fn contains(&self, p: Pos) -> bool {
        self.layer[p].is_some()
    }

    pub fn len(&self) -> usize {
        self.layer.iter().filter(|l| l.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Decides whether `player` can force a visit to one of her targets of
/// weight at most `bound` before any target of larger weight.
pub fn can_achieve(twa: &TargetWeightedArena, player: Player, bound: u64) -> Attractor {
    let arena = twa.arena();
    let n = arena.len();
    let mut layer: Vec<Option<u32>> = vec![None; n];
    let mut counter: Vec<usize> = Vec::with_capacity(n);
    let mut stats = AttractorStats::default();
    let mut frontier = Vec::new();
    for p in 0..n {
        counter.push(arena.out_degree(p));
        stats.counter_updates += 1;
        if arena.is_target(p, player) && twa.target_weight(player, p).is_some_and(|w| w <= bound) {
            layer[p] = Some(0);
            frontier.push(p);
        }
    }
    let mut round = 0;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &q in &frontier {
            for e in arena.in_edges(q) {
                stats.edge_visits += 1;
                let p = e.src;
                // Targets end the play: they are never added past W_0.
                if layer[p].is_some() || arena.is_target(p, player) {
                    continue;
                }
                if arena.owner(p) == player {
                    layer[p] = Some(round + 1);
                    next.push(p);
                } else {
                    counter[p] -= 1;
                    stats.counter_updates += 1;
                    if counter[p] == 0 {
                        layer[p] = Some(round + 1);
                        next.push(p);
                    }
                }
            }
        }
        if !next.is_empty() {
            round += 1;
        }
        frontier = next;
    }
    stats.rounds = round;
    Attractor { player, bound, layer, stats, initial: arena.initial() }
}

/// `minmax_i`: the least target weight `player` can guarantee, `inf` when
/// she cannot force a visit to her targets at all.
pub fn minmax_value(twa: &TargetWeightedArena, player: Player) -> ExtNat {
    let weights = twa.distinct_weights(player);
    let Some(&top) = weights.last() else {
        return Inf;
    };
    if !can_achieve(twa, player, top).winning() {
        return Inf;
    }
    // Smallest index whose weight is achievable; the last one is.
    let (mut lo, mut hi) = (0, weights.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if can_achieve(twa, player, weights[mid]).winning() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Fin(weights[lo])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinmaxSolution {
    pub value: ExtNat,
    pub strategy: MemorylessStrategy,
    /// False when the value is `inf` and the strategy is an arbitrary legal one.
    pub winning: bool,
}

/// A memoryless strategy guaranteeing `minmax_value`.
///
/// Inside the attractor every owned position moves to the successor of
/// lowest layer, ties broken by smallest id; elsewhere to the smallest-id
/// successor.
pub fn minmax_strategy(twa: &TargetWeightedArena, player: Player) -> MinmaxSolution {
    let arena = twa.arena();
    let value = minmax_value(twa, player);
    let mut strategy = MemorylessStrategy::first_successor(arena, player);
    let Fin(bound) = value else {
        return MinmaxSolution { value, strategy, winning: false };
    };
    let attractor = can_achieve(twa, player, bound);
    for p in 0..arena.len() {
        if arena.owner(p) != player || arena.is_target(p, player) || !attractor.contains(p) {
            continue;
        }
        let best = arena
            .successors(p)
            .filter_map(|q| attractor.layer[q].map(|l| (l, q)))
            .min()
            .expect("attractor member has a successor inside");
        strategy.choices.insert(p, best.1);
    }
    MinmaxSolution { value, strategy, winning: true }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::ArenaSpec;
    use crate::play::outcome_utility;
    use crate::strategy::Strategy;
    use Player::*;

    fn twa(spec: ArenaSpec) -> TargetWeightedArena {
        TargetWeightedArena::from_arena(spec.build().unwrap()).unwrap()
    }

    /// Player 1 picks `l` or `r`; Player 2 then chooses a target.
    fn diamond() -> TargetWeightedArena {
        twa(ArenaSpec::new("s")
            .position("s", P1, [false; 2])
            .position("l", P2, [false; 2])
            .position("r", P2, [false; 2])
            .position("t1", P1, [true, false])
            .position("t5", P1, [true, false])
            .position("t3", P1, [true, false])
            .edge("s", "l", 0, 0)
            .edge("s", "r", 0, 0)
            .edge("l", "t1", 1, 0)
            .edge("l", "t5", 5, 0)
            .edge("r", "t3", 3, 0)
            .edge("r", "t1", 1, 0))
    }

    #[test]
    fn initial_target_is_won_at_zero() {
        let g = twa(ArenaSpec::new("s").position("s", P1, [true, false]));
        assert!(can_achieve(&g, P1, 0).winning());
        assert_eq!(minmax_value(&g, P1), Fin(0));
    }

    #[test]
    fn unreachable_target() {
        let g = twa(ArenaSpec::new("s")
            .position("s", P1, [false; 2])
            .position("t", P1, [true, false])
            .edge("t", "s", 0, 0));
        assert!(!can_achieve(&g, P1, 100).winning());
        assert_eq!(minmax_value(&g, P1), Inf);
        let sol = minmax_strategy(&g, P1);
        assert!(!sol.winning);
    }

    #[test]
    fn forced_path() {
        let g = twa(ArenaSpec::new("s")
            .position("s", P2, [false; 2])
            .position("m", P1, [false; 2])
            .position("t", P1, [true, false])
            .edge("s", "m", 0, 0)
            .edge("m", "t", 7, 0));
        assert_eq!(minmax_value(&g, P1), Fin(7));
        let sol = minmax_strategy(&g, P1);
        assert_eq!(sol.strategy.choices.len(), 1);
    }

    #[test]
    fn diamond_prefers_smaller_guarantee() {
        let g = diamond();
        let thresholds: Vec<bool> = (0..6).map(|k| can_achieve(&g, P1, k).winning()).collect();
        assert_eq!(thresholds, [false, false, false, true, true, true]);
        assert_eq!(minmax_value(&g, P1), Fin(3));
        let sol = minmax_strategy(&g, P1);
        let s = g.arena().lookup("s").unwrap();
        assert_eq!(g.arena().id(sol.strategy.choices[&s]), "r");
        // Both adversary strategies at r respect the guarantee.
        let r = g.arena().lookup("r").unwrap();
        for q in g.arena().successors(r) {
            let mut adv = MemorylessStrategy::first_successor(g.arena(), P2);
            adv.choices.insert(r, q);
            let u = outcome_utility(g.arena(), &Strategy::from(sol.strategy.clone()), &adv.into(), P1).unwrap();
            assert!(u <= Fin(3));
        }
    }

    #[test]
    fn opponent_dead_end_is_losing() {
        let g = twa(ArenaSpec::new("s")
            .position("s", P1, [false; 2])
            .position("d", P2, [false; 2])
            .position("t", P1, [true, false])
            .edge("s", "d", 0, 0)
            .edge("s", "t", 2, 0));
        assert_eq!(minmax_value(&g, P1), Fin(2));
    }

    #[test]
    fn heavy_target_blocks() {
        // Passing through the weight-9 target ends the play there.
        let g = twa(ArenaSpec::new("s")
            .position("s", P1, [false; 2])
            .position("h", P1, [true, false])
            .position("t", P1, [true, false])
            .edge("s", "h", 9, 0)
            .edge("h", "t", 1, 0));
        assert!(!can_achieve(&g, P1, 1).winning());
        assert_eq!(minmax_value(&g, P1), Fin(9));
    }

    #[test]
    fn counters_within_budget() {
        let g = diamond();
        let a = can_achieve(&g, P1, 3);
        let budget = (g.arena().len() + g.arena().edge_count()) as u64;
        assert!(a.stats.counter_updates <= budget);
        assert!(a.stats.rounds as usize <= g.arena().len());
    }
}
