//! Brute-force reference computations straight from the definitions.
//!
//! Nothing here uses the reductions of the solver modules: regrets come from
//! explicit strategy enumeration on trees, or from backward induction over
//! plays for arenas whose plays are too many to enumerate. Best values are
//! recomputed by a plain fixpoint rather than a priority queue.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::arena::{Arena, Edge, Player, Pos, Position, TargetWeightedArena};
use crate::error::{Error, Result};
use crate::ext::{ExtNat, Fin, Inf};
use crate::iterated_tree::Subtree;
use crate::regret_edge::strategy_bound;
use crate::regret_twa::BestAlternativeGraph;
use crate::strategy::{FiniteMemoryStrategy, MemorylessStrategy, Strategy};

/// Largest strategy space the enumerating oracles accept.
pub const STRATEGY_GUARD: u64 = 1_000_000;

/// A strategy on a tree, defined exactly on the nodes of its player that
/// remain reachable when it is followed.
pub type TreeStrategy = BTreeMap<Pos, Pos>;

fn alive(sub: Option<&Subtree>, q: Pos) -> bool {
    sub.is_none_or(|s| s.contains(q))
}

fn children<'a>(tree: &'a Arena, sub: Option<&'a Subtree>, p: Pos) -> impl Iterator<Item = Pos> + 'a {
    tree.successors(p).filter(move |&q| alive(sub, q))
}

/// Closed-form size of a player's strategy space: a sum over children at
/// the player's nodes, a product at the opponent's, 1 at leaves.
pub fn strategy_count(tree: &Arena, sub: Option<&Subtree>, player: Player) -> u128 {
    fn at(tree: &Arena, sub: Option<&Subtree>, player: Player, p: Pos) -> u128 {
        let mut kids = children(tree, sub, p).peekable();
        if kids.peek().is_none() {
            return 1;
        }
        if tree.owner(p) == player {
            kids.map(|q| at(tree, sub, player, q)).fold(0u128, u128::saturating_add)
        } else {
            kids.map(|q| at(tree, sub, player, q)).fold(1u128, u128::saturating_mul)
        }
    }
    at(tree, sub, player, tree.initial())
}

/// Every strategy of `player` on the (sub)tree, in a deterministic order.
pub fn enumerate_strategies(tree: &Arena, sub: Option<&Subtree>, player: Player) -> Result<Vec<TreeStrategy>> {
    let count = strategy_count(tree, sub, player);
    if count > STRATEGY_GUARD as u128 {
        return Err(Error::Resource {
            what: "strategy enumeration",
            required: format!("{count} strategies"),
            cap: STRATEGY_GUARD,
        });
    }
    fn at(tree: &Arena, sub: Option<&Subtree>, player: Player, p: Pos) -> Vec<TreeStrategy> {
        let kids: Vec<Pos> = children(tree, sub, p).collect();
        if kids.is_empty() {
            return vec![TreeStrategy::new()];
        }
        if tree.owner(p) == player {
            let mut out = Vec::new();
            for &q in &kids {
                for mut m in at(tree, sub, player, q) {
                    m.insert(p, q);
                    out.push(m);
                }
            }
            out
        } else {
            let mut acc = vec![TreeStrategy::new()];
            for &q in &kids {
                let below = at(tree, sub, player, q);
                let mut next = Vec::with_capacity(acc.len() * below.len());
                for a in &acc {
                    for b in &below {
                        let mut m = a.clone();
                        m.extend(b.iter().map(|(&k, &v)| (k, v)));
                        next.push(m);
                    }
                }
                acc = next;
            }
            acc
        }
    }
    Ok(at(tree, sub, player, tree.initial()))
}

/// Leaf reached when `own` (of `player`) meets `opp`.
pub fn tree_outcome(tree: &Arena, player: Player, own: &TreeStrategy, opp: &TreeStrategy) -> Pos {
    let mut p = tree.initial();
    while !tree.is_dead_end(p) {
        let s = if tree.owner(p) == player { own } else { opp };
        p = *s.get(&p).expect("strategy defined on compatible nodes");
    }
    p
}

/// The part of `strategy` that is compatible with it inside `sub`.
pub fn restrict(tree: &Arena, sub: &Subtree, player: Player, strategy: &TreeStrategy) -> TreeStrategy {
    let mut out = TreeStrategy::new();
    let mut stack = vec![tree.initial()];
    while let Some(p) = stack.pop() {
        if tree.owner(p) == player {
            if let Some(&q) = strategy.get(&p) {
                if sub.contains(q) {
                    out.insert(p, q);
                    stack.push(q);
                }
            }
        } else {
            stack.extend(children(tree, Some(sub), p));
        }
    }
    out
}

/// Regret of each strategy of `own` against `opp`, best responses ranging
/// over `own`: `max_{opp} (u(own, opp) - min_{own'} u(own', opp))`.
pub fn strategy_regrets(
    leaf: &TargetWeightedArena,
    player: Player,
    own: &[TreeStrategy],
    opp: &[TreeStrategy],
) -> Result<Vec<ExtNat>> {
    if own.is_empty() || opp.is_empty() {
        return Err(Error::Input("strategy sets must be nonempty".into()));
    }
    let tree = leaf.arena();
    let utility = |a: &TreeStrategy, b: &TreeStrategy| {
        leaf.target_weight(player, tree_outcome(tree, player, a, b)).expect("leaf weight")
    };
    let table: Vec<Vec<ExtNat>> = own.iter().map(|a| opp.iter().map(|b| utility(a, b)).collect()).collect();
    let br: Vec<ExtNat> = (0..opp.len()).map(|j| ExtNat::min_of(table.iter().map(|row| row[j]))).collect();
    Ok(table
        .iter()
        .map(|row| row.iter().zip(&br).map(|(&u, &b)| u - b).max().expect("nonempty"))
        .collect())
}

/// `min_{own} max_{opp} (u - br)` on a leaf-target tree.
pub fn regret_bruteforce(
    leaf: &TargetWeightedArena,
    player: Player,
    own: &[TreeStrategy],
    opp: &[TreeStrategy],
) -> Result<ExtNat> {
    Ok(strategy_regrets(leaf, player, own, opp)?.into_iter().min().expect("nonempty"))
}

/// Explicit iteration of the delete operator on strategy sets.
#[derive(Debug, Clone)]
pub struct OracleIteration {
    /// Entry `j - 1`: regrets of rank `j`.
    pub regrets: Vec<[ExtNat; 2]>,
    /// Entry `j`: the surviving sets `P^j` of both players.
    pub survivors: Vec<[Vec<TreeStrategy>; 2]>,
    /// First rank with `P^j = P^{j-1}`, if reached within `max_rank`.
    pub fixpoint: Option<usize>,
}

pub fn iterated_bruteforce(leaf: &TargetWeightedArena, max_rank: usize) -> Result<OracleIteration> {
    let tree = leaf.arena();
    let full = [enumerate_strategies(tree, None, Player::P1)?, enumerate_strategies(tree, None, Player::P2)?];
    let mut survivors = vec![full];
    let mut regrets = Vec::new();
    for rank in 1..=max_rank {
        let current = survivors.last().unwrap();
        let mut next: [Vec<TreeStrategy>; 2] = [Vec::new(), Vec::new()];
        let mut values = [Inf; 2];
        for player in Player::BOTH {
            let i = player.index();
            let regs = strategy_regrets(leaf, player, &current[i], &current[1 - i])?;
            let best = *regs.iter().min().unwrap();
            values[i] = best;
            next[i] = current[i].iter().zip(&regs).filter(|(_, &r)| r == best).map(|(s, _)| s.clone()).collect();
        }
        regrets.push(values);
        let stable = next == *current;
        survivors.push(next);
        if stable {
            return Ok(OracleIteration { regrets, survivors, fixpoint: Some(rank) });
        }
    }
    Ok(OracleIteration { regrets, survivors, fixpoint: None })
}

/// Best values by plain fixpoint iteration: `mu_i` at targets of a TWA.
pub fn naive_target_values(twa: &TargetWeightedArena, player: Player) -> Vec<ExtNat> {
    let arena = twa.arena();
    let mut v: Vec<ExtNat> = (0..arena.len()).map(|p| twa.target_weight(player, p).unwrap_or(Inf)).collect();
    loop {
        let mut changed = false;
        for p in (0..arena.len()).filter(|&p| !arena.is_target(p, player)) {
            let m = ExtNat::min_of(arena.successors(p).map(|q| v[q]));
            if m < v[p] {
                v[p] = m;
                changed = true;
            }
        }
        if !changed {
            return v;
        }
    }
}

/// Shortest-path values to `C_i` under edge weights, by Bellman-Ford rounds.
pub fn naive_best_values(arena: &Arena, player: Player) -> Vec<ExtNat> {
    let mut v: Vec<ExtNat> = (0..arena.len()).map(|p| if arena.is_target(p, player) { Fin(0) } else { Inf }).collect();
    loop {
        let mut changed = false;
        for e in arena.edges() {
            if arena.is_target(e.src, player) {
                continue;
            }
            let cand = v[e.dst] + e.weight(player);
            if cand < v[e.src] {
                v[e.src] = cand;
                changed = true;
            }
        }
        if !changed {
            return v;
        }
    }
}

/// Checks every edge of a best-alternative graph against alternatives
/// recomputed from scratch. Since the root carries `inf`, this certifies that
/// every node's `b` is the best alternative of every path reaching it.
/// Returns the number of edges checked.
pub fn check_best_alternative_graph(
    source: &TargetWeightedArena,
    graph: &BestAlternativeGraph,
) -> std::result::Result<usize, String> {
    let arena = source.arena();
    let player = graph.player;
    let values = naive_target_values(source, player);
    let product = graph.product.arena();
    let root = graph.nodes[product.initial()];
    if root != (arena.initial(), Inf) {
        return Err(format!("root is {root:?}"));
    }
    let mut checked = 0;
    for p in 0..product.len() {
        let (s, b) = graph.nodes[p];
        let succ: BTreeSet<Pos> = product.successors(p).map(|q| graph.nodes[q].0).collect();
        let expected: BTreeSet<Pos> = arena.successors(s).collect();
        if succ != expected {
            return Err(format!("moves of {:?} are not copied", arena.id(s)));
        }
        for q in product.successors(p) {
            let (t, b2) = graph.nodes[q];
            let alt = if arena.owner(s) == player {
                ExtNat::min_of(arena.successors(s).filter(|&r| r != t).map(|r| values[r]))
            } else {
                Inf
            };
            if b2 != b.min(alt) {
                return Err(format!(
                    "edge {:?} -> {:?}: stored {b2}, recomputed {}",
                    arena.id(s),
                    arena.id(t),
                    b.min(alt)
                ));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// The tree of plays of an acyclic arena, cut at the first visit of the
/// player's targets and at dead ends.
#[derive(Debug, Clone)]
pub struct HistoryTree {
    /// Leaf targets for both players; the solved player's weight is her
    /// utility, the other player's is 0.
    pub leaf: TargetWeightedArena,
    /// Tree node to arena position.
    pub origin: Vec<Pos>,
}

pub fn unfold_history(arena: &Arena, player: Player, node_cap: usize) -> Result<HistoryTree> {
    if !arena.is_acyclic() {
        return Err(Error::Input("history trees are only built for acyclic arenas".into()));
    }
    let mut origin = vec![arena.initial()];
    let mut utility = vec![0u64];
    let mut edges = Vec::new();
    let mut k = 0;
    while k < origin.len() {
        let s = origin[k];
        if !arena.is_target(s, player) {
            for e in arena.out_edges(s) {
                if origin.len() >= node_cap {
                    return Err(Error::Resource {
                        what: "history tree",
                        required: format!("more than {node_cap} nodes"),
                        cap: node_cap as u64,
                    });
                }
                origin.push(e.dst);
                utility.push(utility[k] + e.weight(player));
                edges.push(Edge { src: k, dst: origin.len() - 1, weights: [0, 0] });
            }
        }
        k += 1;
    }
    let width = origin.len().to_string().len();
    let leafs: Vec<bool> = {
        let mut has_child = vec![false; origin.len()];
        for e in &edges {
            has_child[e.src] = true;
        }
        has_child.into_iter().map(|c| !c).collect()
    };
    let positions = origin
        .iter()
        .enumerate()
        .map(|(k, &s)| Position {
            id: format!("h{k:0width$}:{}", arena.id(s)),
            owner: arena.owner(s),
            targets: [leafs[k], leafs[k]],
        })
        .collect();
    let tree = Arena::from_sorted_parts(positions, 0, edges);
    let mut explicit = [BTreeMap::new(), BTreeMap::new()];
    for k in (0..origin.len()).filter(|&k| leafs[k]) {
        let u = if arena.is_target(origin[k], player) { Fin(utility[k]) } else { Inf };
        explicit[player.index()].insert(k, u);
        explicit[player.opponent().index()].insert(k, Fin(0));
    }
    let leaf = TargetWeightedArena::with_target_weights(tree, explicit)?;
    Ok(HistoryTree { leaf, origin })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMethod {
    /// Explicit strategy enumeration on the tree of plays.
    Enumeration,
    /// Backward induction over plays, memoized on (position, utility,
    /// best alternative) and run until its values stop changing.
    Induction { rounds: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphOracle {
    pub regret: ExtNat,
    pub method: OracleMethod,
}

/// History-tree size below which enumeration is attempted.
pub const ENUMERATION_NODES: usize = 4_000;
/// Largest `|own| * |opp|` table built by enumeration.
pub const ENUMERATION_TABLE: u128 = 400_000;

/// `reg_i` of an edge-weighted arena. Plays whose utility exceeds
/// `2 * M * |S|` count as lost, which is exact for winning minimizers.
pub fn graph_regret_bruteforce(arena: &Arena, player: Player) -> Result<GraphOracle> {
    if arena.is_acyclic() {
        if let Ok(h) = unfold_history(arena, player, ENUMERATION_NODES) {
            let tree = h.leaf.arena();
            let counts = [strategy_count(tree, None, player), strategy_count(tree, None, player.opponent())];
            if counts[0].saturating_mul(counts[1]) <= ENUMERATION_TABLE {
                let own = enumerate_strategies(tree, None, player)?;
                let opp = enumerate_strategies(tree, None, player.opponent())?;
                let regret = regret_bruteforce(&h.leaf, player, &own, &opp)?;
                return Ok(GraphOracle { regret, method: OracleMethod::Enumeration });
            }
        }
    }
    induction_regret(arena, player)
}

/// Same as [`graph_regret_bruteforce`] for a target-weighted arena.
pub fn twa_regret_bruteforce(twa: &TargetWeightedArena, player: Player) -> Result<GraphOracle> {
    graph_regret_bruteforce(&reweighted(twa, player)?, player)
}

/// The arena whose edge weights into each target of `player` equal its
/// target weight. A target of weight `inf` becomes a dead end that is no
/// longer a target, which leaves every utility unchanged.
fn reweighted(twa: &TargetWeightedArena, player: Player) -> Result<Arena> {
    let arena = twa.arena();
    let mut spec = arena.to_spec();
    let lost: HashSet<&str> =
        (0..arena.len()).filter(|&p| twa.target_weight(player, p) == Some(Inf)).map(|p| arena.id(p)).collect();
    for p in &mut spec.positions {
        if lost.contains(p.id.as_str()) {
            p.targets[player.index()] = false;
        }
    }
    spec.edges.retain(|e| !lost.contains(e.from.as_str()));
    for e in &mut spec.edges {
        let dst = arena.lookup(&e.to).unwrap();
        e.weights[player.index()] = match twa.target_weight(player, dst) {
            Some(Fin(w)) => w,
            _ => 0,
        };
    }
    spec.build()
}

type State = (Pos, u64, ExtNat);

fn induction_regret(arena: &Arena, player: Player) -> Result<GraphOracle> {
    let bound = strategy_bound(arena);
    let best = naive_best_values(arena, player);
    // Reachable states; `None` successors are moves beyond the bound.
    let start: State = (arena.initial(), 0, Inf);
    let mut index: HashMap<State, usize> = HashMap::from([(start, 0)]);
    let mut states = vec![start];
    let mut succ: Vec<Vec<Option<usize>>> = Vec::new();
    let mut k = 0;
    while k < states.len() {
        let (s, u, b) = states[k];
        let mut out = Vec::new();
        if !arena.is_target(s, player) {
            for e in arena.out_edges(s) {
                let v = u + e.weight(player);
                if v > bound {
                    out.push(None);
                    continue;
                }
                let alt = if arena.owner(s) == player {
                    ExtNat::min_of(arena.out_edges(s).iter().filter(|f| f.dst != e.dst).map(|f| best[f.dst] + (u + f.weight(player))))
                } else {
                    Inf
                };
                let next = (e.dst, v, b.min(alt));
                let id = *index.entry(next).or_insert_with(|| {
                    states.push(next);
                    states.len() - 1
                });
                out.push(Some(id));
            }
        }
        succ.push(out);
        k += 1;
        if states.len() > 5_000_000 {
            return Err(Error::Resource { what: "oracle states", required: "more than 5000000".into(), cap: 5_000_000 });
        }
    }
    let terminal = |x: usize| -> Option<ExtNat> {
        let (s, u, b) = states[x];
        if arena.is_target(s, player) {
            Some(Fin(u).excess_over(b))
        } else if succ[x].is_empty() {
            Some(Inf)
        } else {
            None
        }
    };
    let mut value: Vec<ExtNat> = (0..states.len()).map(|x| terminal(x).unwrap_or(Inf)).collect();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut next = value.clone();
        for x in 0..states.len() {
            if terminal(x).is_some() {
                continue;
            }
            let vals = succ[x].iter().map(|q| q.map_or(Inf, |q| value[q]));
            next[x] = if arena.owner(states[x].0) == player { vals.min().unwrap() } else { vals.max().unwrap() };
        }
        if next == value {
            break;
        }
        value = next;
        if rounds > states.len() + 1 {
            return Err(Error::Contract("backward induction did not stabilize".into()));
        }
    }
    Ok(GraphOracle { regret: value[0], method: OracleMethod::Induction { rounds } })
}

/// Worst regret of a fixed strategy over every adversary, with the
/// adversary free to cooperate off the play when computing the best
/// response. A cycle of (position, memory) states the adversary can reach
/// before the player's target means the target can be avoided forever.
pub fn witness_regret(arena: &Arena, witness: &Strategy, player: Player) -> Result<ExtNat> {
    witness.check(arena)?;
    let bound = strategy_bound(arena);
    let best = naive_best_values(arena, player);
    // Reachable (position, memory) pairs before the target.
    let start = (arena.initial(), witness.initial_memory());
    let mut seen = HashSet::from([start]);
    let mut order = vec![start];
    let mut k = 0;
    let step = |s: Pos, m: usize| -> Result<Vec<(Pos, usize)>> {
        if arena.is_target(s, player) {
            return Ok(Vec::new());
        }
        let moves: Vec<Pos> = if arena.owner(s) == player {
            witness.choose(arena, m, s)?.into_iter().collect()
        } else {
            arena.successors(s).collect()
        };
        moves.into_iter().map(|t| Ok((t, witness.update(arena, m, s, t)?))).collect()
    };
    let mut graph: HashMap<(Pos, usize), Vec<(Pos, usize)>> = HashMap::new();
    while k < order.len() {
        let (s, m) = order[k];
        let next = step(s, m)?;
        for &x in &next {
            if seen.insert(x) {
                order.push(x);
            }
        }
        graph.insert((s, m), next);
        k += 1;
    }
    if has_cycle(&graph, start) {
        return Ok(Inf);
    }
    // Longest-path style maximum over plays, memoized on the full state.
    let mut memo: HashMap<(Pos, usize, u64, ExtNat), ExtNat> = HashMap::new();
    fn worst(
        arena: &Arena,
        player: Player,
        best: &[ExtNat],
        graph: &HashMap<(Pos, usize), Vec<(Pos, usize)>>,
        memo: &mut HashMap<(Pos, usize, u64, ExtNat), ExtNat>,
        bound: u64,
        state: (Pos, usize, u64, ExtNat),
    ) -> ExtNat {
        if let Some(&v) = memo.get(&state) {
            return v;
        }
        let (s, m, u, b) = state;
        let value = if arena.is_target(s, player) {
            Fin(u).excess_over(b)
        } else if u > bound.saturating_mul(4) {
            // Utilities this large only arise from unbounded witnesses.
            Inf
        } else {
            let next = &graph[&(s, m)];
            if next.is_empty() {
                Inf
            } else {
                let mut worst_value = Fin(0);
                for &(t, m2) in next {
                    let w = arena.edge(s, t).unwrap().weight(player);
                    let alt = if arena.owner(s) == player {
                        ExtNat::min_of(
                            arena.out_edges(s).iter().filter(|f| f.dst != t).map(|f| best[f.dst] + (u + f.weight(player))),
                        )
                    } else {
                        Inf
                    };
                    let v = worst(arena, player, best, graph, memo, bound, (t, m2, u + w, b.min(alt)));
                    worst_value = worst_value.max(v);
                }
                worst_value
            }
        };
        memo.insert(state, value);
        value
    }
    Ok(worst(arena, player, &best, &graph, &mut memo, bound, (start.0, start.1, 0, Inf)))
}

fn has_cycle(graph: &HashMap<(Pos, usize), Vec<(Pos, usize)>>, start: (Pos, usize)) -> bool {
    // Iterative three-color depth-first search.
    let mut color: HashMap<(Pos, usize), u8> = HashMap::new();
    let mut stack = vec![(start, 0usize)];
    color.insert(start, 1);
    while let Some(&mut (node, ref mut next)) = stack.last_mut() {
        let succ = &graph[&node];
        if *next < succ.len() {
            let x = succ[*next];
            *next += 1;
            match color.get(&x).copied().unwrap_or(0) {
                0 => {
                    color.insert(x, 1);
                    stack.push((x, 0));
                }
                1 => return true,
                _ => {}
            }
        } else {
            color.insert(node, 2);
            stack.pop();
        }
    }
    false
}

/// A history-tree strategy of the adversary as a finite-memory strategy of
/// the original arena, with the tree node as memory.
pub fn tree_strategy_on_arena(
    arena: &Arena,
    history: &HistoryTree,
    player: Player,
    strategy: &TreeStrategy,
) -> FiniteMemoryStrategy {
    let tree = history.leaf.arena();
    let mut moves = BTreeMap::new();
    let mut updates = BTreeMap::new();
    for h in 0..tree.len() {
        for c in tree.successors(h) {
            updates.insert((h, history.origin[h], history.origin[c]), c);
        }
        if let Some(&c) = strategy.get(&h) {
            moves.insert((h, history.origin[h]), history.origin[c]);
        }
    }
    // Leaves of the history tree continue in the arena: stay put in memory.
    for h in (0..tree.len()).filter(|&h| tree.is_dead_end(h)) {
        let s = history.origin[h];
        for t in arena.successors(s) {
            updates.insert((h, s, t), h);
        }
        if arena.owner(s) == player {
            if let Some(t) = arena.successors(s).next() {
                moves.insert((h, s), t);
            }
        }
    }
    FiniteMemoryStrategy {
        player,
        memory: (0..tree.len()).map(|h| tree.id(h).to_string()).collect(),
        initial: 0,
        moves,
        updates,
    }
}

/// Regret of `witness` by replaying it against every adversary strategy of
/// the history tree of an acyclic arena. Best responses are minima over all
/// strategies of the player on the same tree.
pub fn witness_regret_enumerated(arena: &Arena, witness: &Strategy, player: Player) -> Result<ExtNat> {
    let history = unfold_history(arena, player, ENUMERATION_NODES)?;
    let tree = history.leaf.arena();
    let own = enumerate_strategies(tree, None, player)?;
    let opp = enumerate_strategies(tree, None, player.opponent())?;
    if (own.len() as u128) * (opp.len() as u128) > ENUMERATION_TABLE {
        return Err(Error::Resource {
            what: "witness replay",
            required: format!("{} x {} strategy pairs", own.len(), opp.len()),
            cap: ENUMERATION_TABLE as u64,
        });
    }
    let mut worst = Fin(0);
    for b in &opp {
        let adversary: Strategy = tree_strategy_on_arena(arena, &history, player.opponent(), b).into();
        let u = crate::play::outcome_utility(arena, witness, &adversary, player)?;
        let br = ExtNat::min_of(
            own.iter().map(|a| history.leaf.target_weight(player, tree_outcome(tree, player, a, b)).unwrap()),
        );
        worst = worst.max(u - br);
    }
    Ok(worst)
}

/// Memoryless strategy as a tree strategy restricted to compatible nodes.
pub fn memoryless_on_tree(tree: &Arena, sub: &Subtree, strategy: &MemorylessStrategy) -> TreeStrategy {
    restrict(tree, sub, strategy.player, &strategy.choices)
}
