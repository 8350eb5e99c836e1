//! Seeded random arenas for property tests and the `gen` command.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::seq::index::sample;
use rand::Rng;

use crate::arena::{Arena, ArenaSpec, Player, TargetWeightedArena};

#[derive(Debug, Clone, PartialEq)]
pub struct ArenaParams {
    pub positions: usize,
    pub max_weight: u64,
    /// Draw weights from `1..=max_weight` instead of `0..=max_weight`.
    pub positive: bool,
    pub max_out_degree: usize,
    pub target_probability: f64,
    /// Chance that a position draws its successors from all positions
    /// rather than from later ones only.
    pub back_edge_probability: f64,
}

impl Default for ArenaParams {
    fn default() -> Self {
        ArenaParams { positions: 6, max_weight: 3, positive: false, max_out_degree: 3, target_probability: 0.5, back_edge_probability: 0.15 }
    }
}

fn id(k: usize, n: usize) -> String {
    let width = n.saturating_sub(1).max(1).to_string().len();
    format!("s{k:0width$}")
}

/// Owners mostly alternate with `level`, which makes choices of one player
/// lead into choices of the other.
fn owner<R: Rng>(rng: &mut R, level: usize) -> Player {
    let alternate = rng.gen_bool(0.75);
    if (alternate && level.is_multiple_of(2)) || (!alternate && rng.gen_bool(0.5)) {
        Player::P1
    } else {
        Player::P2
    }
}

fn weight<R: Rng>(rng: &mut R, max: u64, positive: bool) -> u64 {
    if positive {
        rng.gen_range(1..=max.max(1))
    } else {
        rng.gen_range(0..=max)
    }
}

/// Edge-weighted arena. Edges mostly lead to later positions, with some
/// positions allowed back edges and self-loops. Non-targets always have a
/// successor; targets are mostly sinks.
pub fn random_arena<R: Rng>(params: &ArenaParams, rng: &mut R) -> Arena {
    let (spec, _) = random_shape(params, rng);
    let mut spec = spec;
    for e in &mut spec.edges {
        e.weights = [weight(rng, params.max_weight, params.positive), weight(rng, params.max_weight, params.positive)];
    }
    spec.build().expect("generated arenas are valid")
}

/// Same shapes as [`random_arena`] with at most `max_targets` targets per
/// player and weights in `0..=params.max_weight` placed on target edges.
pub fn random_twa<R: Rng>(params: &ArenaParams, max_targets: usize, rng: &mut R) -> TargetWeightedArena {
    let (mut spec, _) = random_shape(params, rng);
    let n = spec.positions.len();
    for player in Player::BOTH {
        let mut targets: Vec<usize> = (0..n).filter(|&k| spec.positions[k].targets[player.index()]).collect();
        while targets.len() > max_targets {
            let k = targets.swap_remove(rng.gen_range(0..targets.len()));
            spec.positions[k].targets[player.index()] = false;
        }
    }
    let mut mu = [vec![0; n], vec![0; n]];
    for k in 0..n {
        for player in Player::BOTH {
            if spec.positions[k].targets[player.index()] {
                mu[player.index()][k] = rng.gen_range(0..=params.max_weight);
            }
        }
    }
    let ids: BTreeMap<String, usize> = spec.positions.iter().enumerate().map(|(k, p)| (p.id.clone(), k)).collect();
    for e in &mut spec.edges {
        let dst = ids[&e.to];
        e.weights = [mu[0][dst], mu[1][dst]];
    }
    TargetWeightedArena::from_arena(spec.build().expect("generated arenas are valid")).expect("weights depend on the target only")
}

fn random_shape<R: Rng>(params: &ArenaParams, rng: &mut R) -> (ArenaSpec, usize) {
    let n = params.positions.max(1);
    let mut spec = ArenaSpec::new(id(0, n));
    let mut sinks = vec![false; n];
    for (k, sink) in sinks.iter_mut().enumerate() {
        let p = if k == 0 { params.target_probability / 4.0 } else { params.target_probability };
        let targets = [rng.gen_bool(p), rng.gen_bool(p)];
        *sink = k > 0 && (targets[0] || targets[1]) && rng.gen_bool(0.7);
        spec = spec.position(&id(k, n), owner(rng, k), targets);
    }
    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    // A spanning edge from an earlier non-sink keeps most positions reachable.
    for k in 1..n {
        let parents: Vec<usize> = (0..k).filter(|&j| !sinks[j]).collect();
        if !parents.is_empty() {
            succ[parents[rng.gen_range(0..parents.len())]].insert(k);
        }
    }
    for k in (0..n).filter(|&k| !sinks[k]) {
        let back = k + 1 == n || rng.gen_bool(params.back_edge_probability);
        let (lo, pool) = if back { (0, n) } else { (k + 1, n - k - 1) };
        let degree = rng.gen_range(1..=params.max_out_degree.clamp(1, pool));
        for dst in sample(rng, pool, degree) {
            if succ[k].len() < params.max_out_degree.max(1) {
                succ[k].insert(lo + dst);
            }
        }
    }
    let mut edges = 0;
    for (k, out) in succ.iter().enumerate() {
        for &dst in out {
            spec = spec.edge(&id(k, n), &id(dst, n), 0, 0);
            edges += 1;
        }
    }
    (spec, edges)
}

/// Target-weighted arena with exactly `edges` edges (capped by `n^2`) and at
/// most `max_targets` targets per player.
pub fn random_twa_sized<R: Rng>(positions: usize, edges: usize, max_weight: u64, max_targets: usize, rng: &mut R) -> TargetWeightedArena {
    let n = positions.max(1);
    let mut mu: [BTreeMap<usize, u64>; 2] = [BTreeMap::new(), BTreeMap::new()];
    for player in Player::BOTH {
        let count = rng.gen_range(0..=max_targets.min(n));
        for t in sample(rng, n, count) {
            mu[player.index()].insert(t, rng.gen_range(0..=max_weight));
        }
    }
    let ids: Vec<String> = (0..n).map(|k| id(k, n)).collect();
    let mut spec = ArenaSpec::new(ids[0].clone());
    for (k, name) in ids.iter().enumerate() {
        spec = spec.position(name, owner(rng, k), [mu[0].contains_key(&k), mu[1].contains_key(&k)]);
    }
    let m = edges.min(n * n);
    let mut seen = HashSet::with_capacity(m);
    while seen.len() < m {
        let pair = (rng.gen_range(0..n), rng.gen_range(0..n));
        if seen.insert(pair) {
            let (src, dst) = pair;
            let w = [mu[0].get(&dst).copied().unwrap_or(0), mu[1].get(&dst).copied().unwrap_or(0)];
            spec = spec.edge(&ids[src], &ids[dst], w[0], w[1]);
        }
    }
    let arena = spec.build().expect("generated arenas are valid");
    TargetWeightedArena::from_arena(arena).expect("weights depend on the target only")
}

/// Tree with between 1 and `max_leaves` leaves and branching 2 or 3. Most
/// leaves are targets of both players; a few inner nodes are targets too.
pub fn random_tree<R: Rng>(max_leaves: usize, max_weight: u64, rng: &mut R) -> Arena {
    let goal = rng.gen_range(1..=max_leaves.max(1));
    let mut parent: Vec<Option<usize>> = vec![None];
    let mut leaves = vec![0];
    while leaves.len() < goal {
        let room = goal - leaves.len() + 1;
        let k = rng.gen_range(2..=3.min(room));
        let at = leaves.swap_remove(rng.gen_range(0..leaves.len()));
        for _ in 0..k {
            parent.push(Some(at));
            leaves.push(parent.len() - 1);
        }
    }
    let n = parent.len();
    let mut has_child = vec![false; n];
    for p in parent.iter().flatten() {
        has_child[*p] = true;
    }
    let mut depth = vec![0; n];
    for k in 1..n {
        depth[k] = depth[parent[k].unwrap()] + 1;
    }
    let mut spec = ArenaSpec::new(id(0, n));
    for (k, &inner) in has_child.iter().enumerate() {
        let prob = if inner { 0.1 } else { 0.85 };
        spec = spec.position(&id(k, n), owner(rng, depth[k]), [rng.gen_bool(prob), rng.gen_bool(prob)]);
    }
    for (k, p) in parent.iter().enumerate() {
        if let Some(p) = p {
            spec = spec.edge(&id(*p, n), &id(k, n), rng.gen_range(0..=max_weight), rng.gen_range(0..=max_weight));
        }
    }
    spec.build().expect("generated trees are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn same_seed_same_arena() {
        let params = ArenaParams::default();
        let a = random_arena(&params, &mut ChaCha8Rng::seed_from_u64(3));
        let b = random_arena(&params, &mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a, b);
    }

    #[test]
    fn positive_arenas_are_positive() {
        let params = ArenaParams { positive: true, max_weight: 2, ..Default::default() };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            random_arena(&params, &mut rng).check_positive().unwrap();
        }
    }

    #[test]
    fn trees_respect_leaf_budget() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let t = random_tree(12, 5, &mut rng);
            t.check_tree().unwrap();
            let leaves = (0..t.len()).filter(|&p| t.is_dead_end(p)).count();
            assert!((1..=12).contains(&leaves));
        }
    }

    #[test]
    fn twa_has_requested_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = random_twa_sized(50, 120, 4, 3, &mut rng);
        assert_eq!(g.arena().len(), 50);
        assert_eq!(g.arena().edge_count(), 120);
        assert!(g.distinct_weights(Player::P1).len() <= 3);
    }
}
