//! Weighted game arenas and their target-weighted view.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::{ExtNat, Fin, Inf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    P1,
    P2,
}

impl Player {
    pub const BOTH: [Player; 2] = [Player::P1, Player::P2];

    pub fn opponent(self) -> Player {
        match self {
            Player::P1 => Player::P2,
            Player::P2 => Player::P1,
        }
    }

    /// 0 for Player 1, 1 for Player 2.
    pub fn index(self) -> usize {
        match self {
            Player::P1 => 0,
            Player::P2 => 1,
        }
    }

    pub fn number(self) -> u8 {
        self.index() as u8 + 1
    }

    pub fn from_number(n: u64) -> Option<Player> {
        match n {
            1 => Some(Player::P1),
            2 => Some(Player::P2),
            _ => None,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Player {}", self.number())
    }
}

/// Index of a position inside an [`Arena`]. Indices follow the id order.
pub type Pos = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionSpec {
    pub id: String,
    pub owner: Player,
    pub targets: [bool; 2],
}

impl PositionSpec {
    pub fn new(id: impl Into<String>, owner: Player) -> Self {
        PositionSpec { id: id.into(), owner, targets: [false; 2] }
    }

    pub fn target_of(mut self, player: Player) -> Self {
        self.targets[player.index()] = true;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSpec {
    pub from: String,
    pub to: String,
    pub weights: [u64; 2],
}

/// An arena as written down, before validation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ArenaSpec {
    pub positions: Vec<PositionSpec>,
    pub initial: String,
    pub edges: Vec<EdgeSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoPositions,
    EmptyId { index: usize },
    DuplicatePosition { id: String },
    InitialMissing { id: String },
    UnknownEndpoint { from: String, to: String, missing: String },
    DuplicateEdge { from: String, to: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoPositions => f.write_str("arena has no positions"),
            Violation::EmptyId { index } => write!(f, "position #{index} has an empty id"),
            Violation::DuplicatePosition { id } => write!(f, "position {id:?} declared twice"),
            Violation::InitialMissing { id } => {
                write!(f, "initial missing: {id:?} is not a declared position")
            }
            Violation::UnknownEndpoint { from, to, missing } => {
                write!(f, "edge {from:?} -> {to:?} uses undeclared position {missing:?}")
            }
            Violation::DuplicateEdge { from, to } => {
                write!(f, "edge {from:?} -> {to:?} declared twice")
            }
        }
    }
}

impl ArenaSpec {
    pub fn new(initial: impl Into<String>) -> Self {
        ArenaSpec { initial: initial.into(), ..Default::default() }
    }

    pub fn position(mut self, id: &str, owner: Player, targets: [bool; 2]) -> Self {
        self.positions.push(PositionSpec { id: id.to_string(), owner, targets });
        self
    }

    pub fn edge(mut self, from: &str, to: &str, w1: u64, w2: u64) -> Self {
        self.edges.push(EdgeSpec { from: from.to_string(), to: to.to_string(), weights: [w1, w2] });
        self
    }

    /// Every invariant violation, in declaration order. Empty iff the spec
    /// builds into an [`Arena`].
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.positions.is_empty() {
            out.push(Violation::NoPositions);
        }
        let mut ids = HashSet::new();
        for (index, p) in self.positions.iter().enumerate() {
            if p.id.is_empty() {
                out.push(Violation::EmptyId { index });
            } else if !ids.insert(p.id.as_str()) {
                out.push(Violation::DuplicatePosition { id: p.id.clone() });
            }
        }
        if !self.positions.is_empty() && !ids.contains(self.initial.as_str()) {
            out.push(Violation::InitialMissing { id: self.initial.clone() });
        }
        let mut pairs = HashSet::new();
        for e in &self.edges {
            let mut known = true;
            for end in [&e.from, &e.to] {
                if !ids.contains(end.as_str()) {
                    out.push(Violation::UnknownEndpoint {
                        from: e.from.clone(),
                        to: e.to.clone(),
                        missing: end.clone(),
                    });
                    known = false;
                    break;
                }
            }
            if known && !pairs.insert((e.from.as_str(), e.to.as_str())) {
                out.push(Violation::DuplicateEdge { from: e.from.clone(), to: e.to.clone() });
            }
        }
        out
    }

    pub fn build(&self) -> Result<Arena> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(Error::InvalidArena(violations));
        }
        let mut order: Vec<usize> = (0..self.positions.len()).collect();
        order.sort_by(|&a, &b| self.positions[a].id.cmp(&self.positions[b].id));
        let positions: Vec<Position> = order
            .iter()
            .map(|&k| {
                let p = &self.positions[k];
                Position { id: p.id.clone(), owner: p.owner, targets: p.targets }
            })
            .collect();
        let index: HashMap<String, Pos> =
            positions.iter().enumerate().map(|(i, p)| (p.id.clone(), i)).collect();
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { src: index[&e.from], dst: index[&e.to], weights: e.weights })
            .collect();
        Ok(Arena::assemble(positions, index, index_of(&self.initial, &self.positions, &order), edges))
    }
}

fn index_of(initial: &str, positions: &[PositionSpec], order: &[usize]) -> Pos {
    order.iter().position(|&k| positions[k].id == initial).expect("validated initial")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Position {
    pub id: String,
    pub owner: Player,
    pub targets: [bool; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub src: Pos,
    pub dst: Pos,
    pub weights: [u64; 2],
}

impl Edge {
    pub fn weight(&self, player: Player) -> u64 {
        self.weights[player.index()]
    }
}

/// A validated finite weighted game arena.
///
/// Positions are stored sorted by id and edges sorted by `(src, dst)`, so all
/// iteration orders are reproducible. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arena {
    positions: Vec<Position>,
    index: HashMap<String, Pos>,
    initial: Pos,
    edges: Vec<Edge>,
    out_start: Vec<usize>,
    preds: Vec<Vec<usize>>,
    max_weight: [u64; 2],
}

impl Arena {
    /// Builds from already indexed parts. `positions` must be sorted by id
    /// with unique ids and `edges` must reference valid indices without
    /// duplicate pairs.
    pub(crate) fn from_sorted_parts(positions: Vec<Position>, initial: Pos, edges: Vec<Edge>) -> Arena {
        debug_assert!(positions.windows(2).all(|w| w[0].id < w[1].id));
        let index = positions.iter().enumerate().map(|(i, p)| (p.id.clone(), i)).collect();
        Arena::assemble(positions, index, initial, edges)
    }

    /// Builds from parts in arbitrary order, sorting positions by id.
    pub(crate) fn from_unsorted_parts(positions: Vec<Position>, initial: Pos, edges: Vec<Edge>) -> Arena {
        let mut order: Vec<usize> = (0..positions.len()).collect();
        order.sort_by(|&a, &b| positions[a].id.cmp(&positions[b].id));
        let mut rank = vec![0; positions.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let edges = edges
            .into_iter()
            .map(|e| Edge { src: rank[e.src], dst: rank[e.dst], weights: e.weights })
            .collect();
        let mut slots: Vec<Option<Position>> = positions.into_iter().map(Some).collect();
        let sorted = order.iter().map(|&k| slots[k].take().expect("permutation")).collect();
        Arena::from_sorted_parts(sorted, rank[initial], edges)
    }

    fn assemble(positions: Vec<Position>, index: HashMap<String, Pos>, initial: Pos, mut edges: Vec<Edge>) -> Arena {
        edges.sort_by_key(|e| (e.src, e.dst));
        let n = positions.len();
        let mut out_start = vec![0; n + 1];
        for e in &edges {
            out_start[e.src + 1] += 1;
        }
        for i in 0..n {
            out_start[i + 1] += out_start[i];
        }
        let mut preds = vec![Vec::new(); n];
        let mut max_weight = [0; 2];
        for (k, e) in edges.iter().enumerate() {
            preds[e.dst].push(k);
            max_weight[0] = max_weight[0].max(e.weights[0]);
            max_weight[1] = max_weight[1].max(e.weights[1]);
        }
        Arena { positions, index, initial, edges, out_start, preds, max_weight }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn initial(&self) -> Pos {
        self.initial
    }

    pub fn positions(&self) -> &[Position] {
        &self.positions
    }

    pub fn position(&self, p: Pos) -> &Position {
        &self.positions[p]
    }

    pub fn id(&self, p: Pos) -> &str {
        &self.positions[p].id
    }

    pub fn lookup(&self, id: &str) -> Option<Pos> {
        self.index.get(id).copied()
    }

    pub fn owner(&self, p: Pos) -> Player {
        self.positions[p].owner
    }

    pub fn is_target(&self, p: Pos, player: Player) -> bool {
        self.positions[p].targets[player.index()]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Outgoing edges of `p`, sorted by destination id.
    pub fn out_edges(&self, p: Pos) -> &[Edge] {
        &self.edges[self.out_start[p]..self.out_start[p + 1]]
    }

    pub fn successors(&self, p: Pos) -> impl Iterator<Item = Pos> + '_ {
        self.out_edges(p).iter().map(|e| e.dst)
    }

    pub fn out_degree(&self, p: Pos) -> usize {
        self.out_start[p + 1] - self.out_start[p]
    }

    pub fn is_dead_end(&self, p: Pos) -> bool {
        self.out_degree(p) == 0
    }

    /// Incoming edges of `p`.
    pub fn in_edges(&self, p: Pos) -> impl Iterator<Item = &Edge> + '_ {
        self.preds[p].iter().map(|&k| &self.edges[k])
    }

    pub fn edge(&self, src: Pos, dst: Pos) -> Option<&Edge> {
        let out = self.out_edges(src);
        out.binary_search_by_key(&dst, |e| e.dst).ok().map(|k| &out[k])
    }

    /// `M_i`: the largest weight of `player` on any edge.
    pub fn max_weight_of(&self, player: Player) -> u64 {
        self.max_weight[player.index()]
    }

    /// `M`: the largest weight of either player.
    pub fn max_weight(&self) -> u64 {
        self.max_weight[0].max(self.max_weight[1])
    }

    /// Same arena with a different initial position.
    pub fn rooted_at(&self, root: Pos) -> Arena {
        Arena { initial: root, ..self.clone() }
    }

    /// Converts back into an unvalidated spec (positions and edges in id order).
    pub fn to_spec(&self) -> ArenaSpec {
        ArenaSpec {
            positions: self
                .positions
                .iter()
                .map(|p| PositionSpec { id: p.id.clone(), owner: p.owner, targets: p.targets })
                .collect(),
            initial: self.id(self.initial).to_string(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    from: self.id(e.src).to_string(),
                    to: self.id(e.dst).to_string(),
                    weights: e.weights,
                })
                .collect(),
        }
    }

    /// Checks that the arena is a tree rooted at its initial position: the
    /// root has no incoming edge, every other position has exactly one, and
    /// every position is reachable from the root.
    pub fn check_tree(&self) -> Result<()> {
        let root = self.initial;
        for p in 0..self.len() {
            let indeg = self.preds[p].len();
            if p == root && indeg != 0 {
                return Err(Error::NotTree(format!("root {:?} has an incoming edge", self.id(p))));
            }
            if p != root && indeg != 1 {
                return Err(Error::NotTree(format!(
                    "position {:?} has {indeg} incoming edges",
                    self.id(p)
                )));
            }
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(p) = stack.pop() {
            for q in self.successors(p) {
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        if let Some(p) = seen.iter().position(|s| !s) {
            return Err(Error::NotTree(format!("position {:?} is unreachable from the root", self.id(p))));
        }
        Ok(())
    }

    /// Errors unless both players' weights are at least 1 on every edge.
    pub fn check_positive(&self) -> Result<()> {
        match self.edges.iter().find(|e| e.weights[0] == 0 || e.weights[1] == 0) {
            Some(e) => Err(Error::NotPositive {
                from: self.id(e.src).to_string(),
                to: self.id(e.dst).to_string(),
                w1: e.weights[0],
                w2: e.weights[1],
            }),
            None => Ok(()),
        }
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm over the whole arena.
        let mut indeg: Vec<usize> = self.preds.iter().map(Vec::len).collect();
        let mut stack: Vec<Pos> = (0..self.len()).filter(|&p| indeg[p] == 0).collect();
        let mut seen = 0;
        while let Some(p) = stack.pop() {
            seen += 1;
            for q in self.successors(p) {
                indeg[q] -= 1;
                if indeg[q] == 0 {
                    stack.push(q);
                }
            }
        }
        seen == self.len()
    }
}

/// An arena in which only edges entering a target carry weight, and all
/// edges entering the same target carry the same weight.
///
/// Target weights are held explicitly per player and may be `inf`. The
/// utility of a play for player `i` is the weight of the first target of
/// `i` it visits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetWeightedArena {
    arena: Arena,
    weights: [Vec<Option<ExtNat>>; 2],
    max_finite: [u64; 2],
}

impl TargetWeightedArena {
    /// Reads target weights off the edge weights, checking the TWA property
    /// for both players. A target without incoming edges gets weight 0, and
    /// so does the initial position when it is a target.
    pub fn from_arena(arena: Arena) -> Result<Self> {
        let mut weights = [vec![None; arena.len()], vec![None; arena.len()]];
        for player in Player::BOTH {
            for p in 0..arena.len() {
                let mut incoming = arena.in_edges(p).map(|e| e.weight(player));
                if arena.is_target(p, player) {
                    let w = incoming.next().unwrap_or(0);
                    if p == arena.initial() {
                        // Plays start inside the target: the empty sum applies.
                        weights[player.index()][p] = Some(Fin(0));
                        continue;
                    }
                    if let Some(other) = arena.in_edges(p).map(|e| e.weight(player)).find(|&x| x != w) {
                        return Err(Error::NotTargetWeighted(format!(
                            "edges into target {:?} carry different {player} weights {w} and {other}",
                            arena.id(p)
                        )));
                    }
                    weights[player.index()][p] = Some(Fin(w));
                } else if let Some(e) = arena.in_edges(p).find(|e| e.weight(player) != 0) {
                    return Err(Error::NotTargetWeighted(format!(
                        "edge {:?} -> {:?} into a non-target carries {player} weight {}",
                        arena.id(e.src),
                        arena.id(e.dst),
                        e.weight(player)
                    )));
                }
            }
        }
        Ok(Self::assemble(arena, weights))
    }

    /// Uses explicit target weights. Every target of a player needs a
    /// weight and non-targets must not have one. Edge weights of `arena`
    /// are replaced by the induced ones (`inf` targets get edge weight 0).
    pub fn with_target_weights(arena: Arena, explicit: [BTreeMap<Pos, ExtNat>; 2]) -> Result<Self> {
        let mut weights = [vec![None; arena.len()], vec![None; arena.len()]];
        for player in Player::BOTH {
            let given = &explicit[player.index()];
            for (&p, &w) in given {
                if p >= arena.len() || !arena.is_target(p, player) {
                    return Err(Error::NotTargetWeighted(format!(
                        "weight given for non-target position #{p} of {player}"
                    )));
                }
                weights[player.index()][p] = Some(w);
            }
            if let Some(p) = (0..arena.len()).find(|&p| arena.is_target(p, player) && !given.contains_key(&p)) {
                return Err(Error::NotTargetWeighted(format!(
                    "target {:?} of {player} has no weight",
                    arena.id(p)
                )));
            }
        }
        let edges = arena
            .edges()
            .iter()
            .map(|e| {
                let mut w = [0; 2];
                for player in Player::BOTH {
                    if let Some(Fin(x)) = weights[player.index()][e.dst] {
                        w[player.index()] = x;
                    }
                }
                Edge { weights: w, ..*e }
            })
            .collect();
        let arena = Arena::from_sorted_parts(arena.positions.clone(), arena.initial, edges);
        Ok(Self::assemble(arena, weights))
    }

    fn assemble(arena: Arena, weights: [Vec<Option<ExtNat>>; 2]) -> Self {
        let max_of = |ws: &Vec<Option<ExtNat>>| {
            ws.iter().filter_map(|w| w.and_then(ExtNat::finite)).max().unwrap_or(0)
        };
        let max_finite = [max_of(&weights[0]), max_of(&weights[1])];
        TargetWeightedArena { arena, weights, max_finite }
    }

    pub fn arena(&self) -> &Arena {
        &self.arena
    }

    pub fn into_arena(self) -> Arena {
        self.arena
    }

    /// `mu_i(p)` for a target `p` of `player`, `None` elsewhere.
    pub fn target_weight(&self, player: Player, p: Pos) -> Option<ExtNat> {
        self.weights[player.index()][p]
    }

    /// Largest finite target weight of `player`.
    pub fn max_target_weight(&self, player: Player) -> u64 {
        self.max_finite[player.index()]
    }

    /// Sorted distinct finite target weights of `player`.
    pub fn distinct_weights(&self, player: Player) -> Vec<u64> {
        let mut ws: Vec<u64> =
            self.weights[player.index()].iter().filter_map(|w| w.and_then(ExtNat::finite)).collect();
        ws.sort_unstable();
        ws.dedup();
        ws
    }

    /// Utility of a sequence of positions for `player` under target weights.
    pub fn utility_of(&self, positions: &[Pos], player: Player) -> ExtNat {
        match positions.iter().find(|&&p| self.arena.is_target(p, player)) {
            None => Inf,
            Some(&p) => self.weights[player.index()][p].expect("target has weight"),
        }
    }
}

/// Turns an edge-weighted tree into the target-weighted tree whose targets
/// are exactly the leaves (for both players), each leaf weighted by the
/// utility of its root path. Leaves whose path misses `C_i` get weight `inf`.
pub fn edge_tree_to_leaf_twa(tree: &Arena) -> Result<TargetWeightedArena> {
    tree.check_tree()?;
    let n = tree.len();
    // Utility accumulated along the root path; None once the target was hit.
    let mut acc: Vec<[Option<u64>; 2]> = vec![[None; 2]; n];
    let mut util: Vec<[ExtNat; 2]> = vec![[Inf; 2]; n];
    let root = tree.initial();
    let mut stack = vec![root];
    for player in Player::BOTH {
        let i = player.index();
        if tree.is_target(root, player) {
            util[root][i] = Fin(0);
        } else {
            acc[root][i] = Some(0);
        }
    }
    while let Some(p) = stack.pop() {
        for e in tree.out_edges(p) {
            let q = e.dst;
            for player in Player::BOTH {
                let i = player.index();
                match acc[p][i] {
                    None => util[q][i] = util[p][i],
                    Some(sum) => {
                        let sum = sum + e.weights[i];
                        if tree.is_target(q, player) {
                            util[q][i] = Fin(sum);
                        } else {
                            acc[q][i] = Some(sum);
                        }
                    }
                }
            }
            stack.push(q);
        }
    }
    let positions = tree
        .positions()
        .iter()
        .enumerate()
        .map(|(p, pos)| {
            let leaf = tree.is_dead_end(p);
            Position { id: pos.id.clone(), owner: pos.owner, targets: [leaf, leaf] }
        })
        .collect();
    let edges = tree.edges().iter().map(|e| Edge { weights: [0, 0], ..*e }).collect();
    let leafy = Arena::from_sorted_parts(positions, root, edges);
    let mut explicit = [BTreeMap::new(), BTreeMap::new()];
    for p in (0..n).filter(|&p| tree.is_dead_end(p)) {
        explicit[0].insert(p, util[p][0]);
        explicit[1].insert(p, util[p][1]);
    }
    TargetWeightedArena::with_target_weights(leafy, explicit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Player::*;

    fn two() -> ArenaSpec {
        ArenaSpec::new("a").position("a", P1, [false; 2]).position("t", P2, [true, false]).edge("a", "t", 2, 1)
    }

    #[test]
    fn valid_spec_has_no_violations() {
        assert!(two().validate().is_empty());
        let arena = two().build().unwrap();
        assert_eq!(arena.len(), 2);
        assert_eq!(arena.max_weight(), 2);
        assert_eq!(arena.max_weight_of(P2), 1);
    }

    #[test]
    fn undeclared_endpoint_is_one_violation() {
        let v = two().edge("a", "ghost", 0, 0).validate();
        assert_eq!(v.len(), 1);
        assert!(matches!(&v[0], Violation::UnknownEndpoint { missing, .. } if missing == "ghost"));
        assert!(v[0].to_string().contains("ghost"));
    }

    #[test]
    fn missing_initial() {
        let mut spec = two();
        spec.initial = "nowhere".into();
        let v = spec.validate();
        assert_eq!(v, vec![Violation::InitialMissing { id: "nowhere".into() }]);
        assert!(v[0].to_string().starts_with("initial missing"));
        assert!(matches!(spec.build(), Err(Error::InvalidArena(_))));
    }

    #[test]
    fn duplicates_are_reported() {
        let v = two().position("a", P2, [false; 2]).edge("a", "t", 0, 0).validate();
        assert!(v.contains(&Violation::DuplicatePosition { id: "a".into() }));
        assert!(v.contains(&Violation::DuplicateEdge { from: "a".into(), to: "t".into() }));
    }

    #[test]
    fn positions_sorted_by_id() {
        let arena = ArenaSpec::new("z")
            .position("z", P1, [false; 2])
            .position("b", P2, [false; 2])
            .position("m", P1, [false; 2])
            .edge("z", "m", 0, 0)
            .edge("z", "b", 0, 0)
            .build()
            .unwrap();
        let ids: Vec<_> = arena.positions().iter().map(|p| p.id.as_str()).collect();
        assert_eq!(ids, ["b", "m", "z"]);
        let succ: Vec<_> = arena.successors(arena.initial()).map(|p| arena.id(p)).collect();
        assert_eq!(succ, ["b", "m"]);
    }

    #[test]
    fn twa_property_checked() {
        let ok = ArenaSpec::new("s")
            .position("s", P1, [false; 2])
            .position("u", P2, [false; 2])
            .position("t", P2, [true, false])
            .edge("s", "u", 0, 0)
            .edge("s", "t", 4, 0)
            .edge("u", "t", 4, 0)
            .build()
            .unwrap();
        let t = ok.lookup("t").unwrap();
        let twa = TargetWeightedArena::from_arena(ok).unwrap();
        assert_eq!(twa.target_weight(P1, t), Some(Fin(4)));
        assert_eq!(twa.max_target_weight(P1), 4);

        let uneven = ArenaSpec::new("s")
            .position("s", P1, [false; 2])
            .position("u", P2, [false; 2])
            .position("t", P2, [true, false])
            .edge("s", "u", 0, 0)
            .edge("s", "t", 4, 0)
            .edge("u", "t", 3, 0)
            .build()
            .unwrap();
        assert!(matches!(TargetWeightedArena::from_arena(uneven), Err(Error::NotTargetWeighted(_))));

        let weighted_inner = two().edge("t", "a", 0, 1).build().unwrap();
        assert!(TargetWeightedArena::from_arena(weighted_inner).is_err());
    }

    #[test]
    fn tree_checks() {
        let arena = two().build().unwrap();
        arena.check_tree().unwrap();
        let cyclic = two().edge("t", "a", 0, 0).build().unwrap();
        assert!(matches!(cyclic.check_tree(), Err(Error::NotTree(_))));
        assert!(!cyclic.is_acyclic());
        assert!(arena.is_acyclic());
    }

    #[test]
    fn leaf_twa_single_edge() {
        let tree = ArenaSpec::new("r")
            .position("r", P1, [false; 2])
            .position("l", P2, [true, true])
            .edge("r", "l", 2, 7)
            .build()
            .unwrap();
        let twa = edge_tree_to_leaf_twa(&tree).unwrap();
        let l = tree.lookup("l").unwrap();
        assert_eq!(twa.target_weight(P1, l), Some(Fin(2)));
        assert_eq!(twa.target_weight(P2, l), Some(Fin(7)));
    }

    #[test]
    fn leaf_twa_missed_target_is_inf() {
        let tree = ArenaSpec::new("r")
            .position("r", P1, [false; 2])
            .position("m", P2, [false, true])
            .position("l", P2, [false, false])
            .edge("r", "m", 1, 3)
            .edge("m", "l", 1, 5)
            .build()
            .unwrap();
        let twa = edge_tree_to_leaf_twa(&tree).unwrap();
        let l = tree.lookup("l").unwrap();
        assert_eq!(twa.target_weight(P1, l), Some(Inf));
        // Player 2 stops counting at m.
        assert_eq!(twa.target_weight(P2, l), Some(Fin(3)));
        assert!(!twa.arena().is_target(tree.lookup("m").unwrap(), P2));
    }

    #[test]
    fn leaf_twa_rejects_non_tree() {
        let dag = ArenaSpec::new("r")
            .position("r", P1, [false; 2])
            .position("a", P2, [false; 2])
            .position("l", P2, [true; 2])
            .edge("r", "a", 0, 0)
            .edge("r", "l", 0, 0)
            .edge("a", "l", 0, 0)
            .build()
            .unwrap();
        assert!(matches!(edge_tree_to_leaf_twa(&dag), Err(Error::NotTree(_))));
    }

    #[test]
    fn opponent_is_involutive() {
        for p in Player::BOTH {
            assert_eq!(p.opponent().opponent(), p);
            assert_ne!(p.opponent(), p);
        }
    }
}
