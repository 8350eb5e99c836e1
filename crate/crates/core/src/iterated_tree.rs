//! Iterated regret minimization on finite tree arenas.
//!
//! Each rank recomputes both players' best alternatives on the surviving
//! subtree, solves the two min-max games by backward induction, and deletes
//! the edges that lead above the root value of their owner.

use crate::arena::{edge_tree_to_leaf_twa, Arena, Player, Pos, TargetWeightedArena};
use crate::error::Result;
use crate::ext::{ExtNat, Inf};
use crate::strategy::MemorylessStrategy;

/// A subtree of a fixed tree containing its root, as a node mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subtree {
    pub alive: Vec<bool>,
}

impl Subtree {
    pub fn full(tree: &Arena) -> Self {
        Subtree { alive: vec![true; tree.len()] }
    }

    pub fn contains(&self, p: Pos) -> bool {
        self.alive[p]
    }

    pub fn node_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn children<'a>(&'a self, tree: &'a Arena, p: Pos) -> impl Iterator<Item = Pos> + 'a {
        tree.successors(p).filter(move |&q| self.alive[q])
    }

    /// Surviving edges as `(from, to)` index pairs.
    pub fn edges(&self, tree: &Arena) -> Vec<(Pos, Pos)> {
        tree.edges().iter().filter(|e| self.alive[e.src] && self.alive[e.dst]).map(|e| (e.src, e.dst)).collect()
    }
}

/// Both players' best alternatives on a (sub)tree with leaf targets.
#[derive(Debug, Clone)]
pub struct DualBATree {
    /// `(b1, b2)` per node: the best alternative of its root path.
    pub alternatives: Vec<[ExtNat; 2]>,
    /// `mu_i - min(mu_i, b_i)` at leaves, `None` at internal nodes.
    pub reduced: Vec<Option<[ExtNat; 2]>>,
    /// Nodes of the subtree in breadth-first order from the root.
    pub order: Vec<Pos>,
}

/// Dual best-alternative tree of a whole leaf-target tree.
pub fn dual_ba_tree(leaf: &TargetWeightedArena) -> Result<DualBATree> {
    leaf.arena().check_tree()?;
    let tree = leaf.arena();
    if let Some(p) = (0..tree.len()).find(|&p| tree.is_dead_end(p) != tree.is_target(p, Player::P1)) {
        return Err(crate::Error::NotTree(format!("targets must be exactly the leaves, {:?} is not", tree.id(p))));
    }
    let mut visits = 0;
    Ok(dual_on(leaf, &Subtree::full(tree), &mut visits))
}

fn dual_on(leaf: &TargetWeightedArena, sub: &Subtree, visits: &mut u64) -> DualBATree {
    let tree = leaf.arena();
    let n = tree.len();
    let mut order = vec![tree.initial()];
    let mut k = 0;
    while k < order.len() {
        let p = order[k];
        order.extend(sub.children(tree, p));
        k += 1;
    }
    *visits += order.len() as u64;
    // Bottom-up: best values, plus the two smallest child values per node.
    let mut best = vec![[Inf; 2]; n];
    let mut smallest: Vec<[(ExtNat, Option<Pos>, ExtNat); 2]> = vec![[(Inf, None, Inf); 2]; n];
    for &p in order.iter().rev() {
        *visits += 1;
        if tree.is_dead_end(p) {
            for player in Player::BOTH {
                best[p][player.index()] = leaf.target_weight(player, p).expect("leaf weight");
            }
            continue;
        }
        for i in 0..2 {
            let (mut m1, mut arg, mut m2) = (Inf, None, Inf);
            for q in sub.children(tree, p) {
                let v = best[q][i];
                if arg.is_none() || v < m1 {
                    m2 = m1;
                    m1 = v;
                    arg = Some(q);
                } else if v < m2 {
                    m2 = v;
                }
            }
            best[p][i] = m1;
            smallest[p][i] = (m1, arg, m2);
        }
    }
    // Top-down: running minima of edge alternatives.
    let mut alternatives = vec![[Inf; 2]; n];
    let mut reduced = vec![None; n];
    for &p in &order {
        *visits += 1;
        for q in sub.children(tree, p) {
            for player in Player::BOTH {
                let i = player.index();
                let alt = if tree.owner(p) != player {
                    Inf
                } else {
                    let (m1, arg, m2) = smallest[p][i];
                    if arg == Some(q) { m2 } else { m1 }
                };
                alternatives[q][i] = alternatives[p][i].min(alt);
            }
        }
        if tree.is_dead_end(p) {
            let mu = best[p];
            let b = alternatives[p];
            reduced[p] = Some([mu[0].excess_over(b[0]), mu[1].excess_over(b[1])]);
        }
    }
    DualBATree { alternatives, reduced, order }
}

/// `minmax_i` of every node of the dual tree: reduced weight at leaves, min
/// over children at the player's nodes, max at the opponent's.
pub fn backward_minmax(tree: &Arena, dual: &DualBATree, player: Player) -> Vec<ExtNat> {
    let sub = mask_of(tree, &dual.order);
    minmax_on(tree, &sub, dual, player, &mut 0)
}

fn mask_of(tree: &Arena, order: &[Pos]) -> Subtree {
    let mut alive = vec![false; tree.len()];
    for &p in order {
        alive[p] = true;
    }
    Subtree { alive }
}

fn minmax_on(tree: &Arena, sub: &Subtree, dual: &DualBATree, player: Player, visits: &mut u64) -> Vec<ExtNat> {
    let mut value = vec![Inf; tree.len()];
    for &p in dual.order.iter().rev() {
        *visits += 1;
        value[p] = match dual.reduced[p] {
            Some(r) => r[player.index()],
            None => {
                let children = sub.children(tree, p).map(|q| value[q]);
                if tree.owner(p) == player {
                    children.min().expect("internal node keeps a child")
                } else {
                    children.max().expect("internal node keeps a child")
                }
            }
        };
    }
    value
}

/// One application of the delete operator: drops every edge `(s, s')` at a
/// node of player `i` with `minmax_i(s') > minmax_i(root)`, then keeps the
/// component of the root.
pub fn delete_step(tree: &Arena, sub: &Subtree, values: &[Vec<ExtNat>; 2]) -> Subtree {
    delete_counting(tree, sub, values, &mut 0)
}

fn delete_counting(tree: &Arena, sub: &Subtree, values: &[Vec<ExtNat>; 2], visits: &mut u64) -> Subtree {
    let root = tree.initial();
    let mut alive = vec![false; tree.len()];
    alive[root] = true;
    let mut stack = vec![root];
    while let Some(p) = stack.pop() {
        *visits += 1;
        let i = tree.owner(p).index();
        for q in sub.children(tree, p) {
            if values[i][q] <= values[i][root] {
                alive[q] = true;
                stack.push(q);
            }
        }
    }
    Subtree { alive }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank {
    /// `(reg_1^{G,j}, reg_2^{G,j})`.
    pub regrets: [ExtNat; 2],
    /// Nodes alive in `D^{j-1}(G)`, on which this rank is computed.
    pub nodes: usize,
}

#[derive(Debug, Clone)]
pub struct IteratedReport {
    /// Entry `j - 1` holds rank `j`, for `j = 1..=fixpoint`.
    pub ranks: Vec<Rank>,
    /// The first rank `j` with `D^j(G) = D^{j-1}(G)`.
    pub fixpoint: usize,
    /// `subtrees[j] = D^j(G)` for `j < fixpoint`; `D^fixpoint(G)` equals
    /// the last entry.
    pub subtrees: Vec<Subtree>,
    /// One strategy per player, following the surviving subtree.
    pub witnesses: [MemorylessStrategy; 2],
    /// Node visits over all passes.
    pub visits: u64,
}

impl IteratedReport {
    pub fn final_regrets(&self) -> [ExtNat; 2] {
        self.ranks.last().expect("at least one rank").regrets
    }

    pub fn survivors(&self) -> &Subtree {
        self.subtrees.last().expect("at least D^0")
    }
}

/// Iterated regret of an edge-weighted tree arena.
pub fn iterated_regret(tree: &Arena) -> Result<IteratedReport> {
    let leaf = edge_tree_to_leaf_twa(tree)?;
    Ok(iterated_on_leaf_tree(&leaf))
}

/// Iterated regret of a tree whose targets are its leaves.
pub fn iterated_on_leaf_tree(leaf: &TargetWeightedArena) -> IteratedReport {
    let tree = leaf.arena();
    let root = tree.initial();
    let mut visits = 0;
    let mut subtrees = vec![Subtree::full(tree)];
    let mut ranks = Vec::new();
    // Last-seen min-max values per node, for the witnesses.
    let mut choice_values: Vec<[ExtNat; 2]> = vec![[Inf; 2]; tree.len()];
    let mut choice_rank = vec![0usize; tree.len()];
    loop {
        let current = subtrees.last().unwrap();
        let dual = dual_on(leaf, current, &mut visits);
        let values = [
            minmax_on(tree, current, &dual, Player::P1, &mut visits),
            minmax_on(tree, current, &dual, Player::P2, &mut visits),
        ];
        for &p in &dual.order {
            choice_values[p] = [values[0][p], values[1][p]];
            choice_rank[p] = ranks.len();
        }
        ranks.push(Rank { regrets: [values[0][root], values[1][root]], nodes: dual.order.len() });
        let next = delete_counting(tree, current, &values, &mut visits);
        let done = &next == current;
        if !done {
            subtrees.push(next);
            continue;
        }
        let witnesses = Player::BOTH.map(|player| witness(tree, &subtrees, &choice_values, &choice_rank, player));
        return IteratedReport { fixpoint: ranks.len(), ranks, subtrees, witnesses, visits };
    }
}

/// At each node of the player, moves to the child with least min-max value
/// in the last rank where the node was alive, restricted to children alive in
/// that rank; ties go to the smallest id.
fn witness(
    tree: &Arena,
    subtrees: &[Subtree],
    values: &[[ExtNat; 2]],
    last_rank: &[usize],
    player: Player,
) -> MemorylessStrategy {
    let mut s = MemorylessStrategy::new(player);
    for p in (0..tree.len()).filter(|&p| tree.owner(p) == player && !tree.is_dead_end(p)) {
        let sub = &subtrees[last_rank[p]];
        let best = sub
            .children(tree, p)
            .map(|q| (values[q][player.index()], q))
            .min()
            .map(|(_, q)| q)
            .unwrap_or_else(|| tree.successors(p).next().unwrap());
        s.choices.insert(p, best);
    }
    s
}
