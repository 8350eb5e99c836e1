//! Machine-readable solver reports and the solver-versus-oracle check.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arena::{Arena, Player, TargetWeightedArena};
use crate::document::{ArenaDocument, Diagnostic};
use crate::error::Result;
use crate::ext::ExtNat;
use crate::iterated_tree::iterated_on_leaf_tree;
use crate::oracle::{
    check_best_alternative_graph, enumerate_strategies, graph_regret_bruteforce, iterated_bruteforce, restrict,
    strategy_count, twa_regret_bruteforce, witness_regret, OracleMethod, STRATEGY_GUARD,
};
use crate::regret_twa::build_best_alternative_graph;
use crate::strategy::Strategy;
use crate::{arena::edge_tree_to_leaf_twa, regret_edge, regret_twa};

/// Hex SHA-256 of the canonical document of the arena.
pub fn arena_digest(arena: &Arena, twa: Option<&TargetWeightedArena>) -> String {
    let text = serde_json::to_string(&ArenaDocument::from_arena(arena, twa)).expect("documents serialize");
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveRow {
    pub memory: String,
    pub position: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UpdateRow {
    pub memory: String,
    pub from: String,
    pub to: String,
    pub next: String,
}

/// A strategy as tables over labels, restricted to the (memory, position)
/// pairs reachable while it is followed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessTable {
    pub player: u8,
    pub memory: Vec<String>,
    pub initial: String,
    pub moves: Vec<MoveRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub updates: Vec<UpdateRow>,
}

impl WitnessTable {
    pub fn new(arena: &Arena, strategy: &Strategy) -> Self {
        let reachable = strategy.reachable_pairs(arena);
        let player = strategy.player();
        let label = |m: usize| match strategy {
            Strategy::Memoryless(_) => "-".to_string(),
            Strategy::FiniteMemory(s) => s.memory[m].clone(),
        };
        let mut used: Vec<usize> = reachable.iter().map(|&(m, _)| m).collect();
        used.dedup();
        used.sort_unstable();
        used.dedup();
        let mut moves = Vec::new();
        let mut updates = Vec::new();
        for &(m, p) in &reachable {
            if arena.owner(p) == player {
                if let Ok(Some(q)) = strategy.choose(arena, m, p) {
                    moves.push(MoveRow { memory: label(m), position: arena.id(p).to_string(), to: arena.id(q).to_string() });
                }
            }
            if let Strategy::FiniteMemory(_) = strategy {
                for q in arena.successors(p) {
                    if let Ok(m2) = strategy.update(arena, m, p, q) {
                        updates.push(UpdateRow {
                            memory: label(m),
                            from: arena.id(p).to_string(),
                            to: arena.id(q).to_string(),
                            next: label(m2),
                        });
                    }
                }
            }
        }
        WitnessTable {
            player: player.number(),
            memory: used.into_iter().map(label).collect(),
            initial: label(strategy.initial_memory()),
            moves,
            updates,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlayerResult {
    pub player: u8,
    pub value: ExtNat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessTable>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckLine {
    pub what: String,
    pub solver: String,
    pub oracle: String,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveReport {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub digest: Option<String>,
    /// Which solver handled the input, e.g. `"target-weighted"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub results: Vec<PlayerResult>,
    /// Entry `j - 1`: regrets of both players at rank `j`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ranks: Vec<[ExtNat; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixpoint: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub survivors: Option<[Vec<String>; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckLine>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<Diagnostic>,
}

impl SolveReport {
    pub fn new(command: impl Into<String>) -> Self {
        SolveReport { command: command.into(), ..Default::default() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn line(what: String, solver: ExtNat, oracle: ExtNat) -> CheckLine {
    CheckLine { what, solver: solver.to_string(), oracle: oracle.to_string(), agree: solver == oracle }
}

fn method_name(m: OracleMethod) -> &'static str {
    match m {
        OracleMethod::Enumeration => "enumeration",
        OracleMethod::Induction { .. } => "induction",
    }
}

/// Runs every applicable solver on the arena and compares with the oracle.
pub fn check_arena(arena: &Arena, twa: Option<&TargetWeightedArena>) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    let derived = match twa {
        Some(_) => None,
        None => TargetWeightedArena::from_arena(arena.clone()).ok(),
    };
    let twa = twa.or(derived.as_ref());
    for player in Player::BOTH {
        if let Some(g) = twa {
            let solved = regret_twa::regret(g, player);
            let oracle = twa_regret_bruteforce(g, player)?;
            lines.push(line(format!("regret {player} (target-weighted, {})", method_name(oracle.method)), solved.regret, oracle.regret));
            let witness = witness_regret(g.arena(), &solved.witness, player)?;
            lines.push(line(format!("witness {player} (target-weighted)"), witness, solved.regret));
            let graph = build_best_alternative_graph(g, player);
            let ok = check_best_alternative_graph(g, &graph);
            lines.push(CheckLine {
                what: format!("best alternatives {player}"),
                solver: format!("{} nodes", graph.nodes.len()),
                oracle: ok.clone().map_or_else(|e| e, |n| format!("{n} edges recomputed")),
                agree: ok.is_ok(),
            });
        }
        if twa.is_none() || twa.is_some_and(|g| g.arena() == arena) {
            let solved = regret_edge::regret(arena, player)?;
            let oracle = graph_regret_bruteforce(arena, player)?;
            lines.push(line(format!("regret {player} (edge-weighted, {})", method_name(oracle.method)), solved.regret, oracle.regret));
            let witness = witness_regret(arena, &solved.witness, player)?;
            lines.push(line(format!("witness {player} (edge-weighted)"), witness, solved.regret));
        }
    }
    if arena.check_tree().is_ok() {
        let leaf = edge_tree_to_leaf_twa(arena)?;
        let tree = leaf.arena();
        let counts = [strategy_count(tree, None, Player::P1), strategy_count(tree, None, Player::P2)];
        if counts.iter().all(|&c| c <= STRATEGY_GUARD as u128) && counts[0].saturating_mul(counts[1]) <= 1_000_000 {
            let report = iterated_on_leaf_tree(&leaf);
            let it = iterated_bruteforce(&leaf, tree.len() + 1)?;
            let ranks = report.ranks.len().max(it.regrets.len());
            for j in 0..ranks {
                let ours = report.ranks.get(j).map(|r| r.regrets);
                let theirs = it.regrets.get(j).copied();
                for player in Player::BOTH {
                    let i = player.index();
                    let fmt = |v: Option<[ExtNat; 2]>| v.map_or("-".to_string(), |v| v[i].to_string());
                    lines.push(CheckLine {
                        what: format!("rank {} regret {player}", j + 1),
                        solver: fmt(ours),
                        oracle: fmt(theirs),
                        agree: ours.is_some() && ours.map(|v| v[i]) == theirs.map(|v| v[i]),
                    });
                }
            }
            let mut same = Some(report.fixpoint) == it.fixpoint;
            for j in 0..=report.fixpoint.min(it.survivors.len() - 1) {
                let sub = &report.subtrees[j.min(report.subtrees.len() - 1)];
                for player in Player::BOTH {
                    let a: std::collections::BTreeSet<_> =
                        it.survivors[j][player.index()].iter().map(|s| restrict(tree, sub, player, s)).collect();
                    let b: std::collections::BTreeSet<_> = enumerate_strategies(tree, Some(sub), player)?.into_iter().collect();
                    same &= a == b;
                }
            }
            lines.push(CheckLine {
                what: "surviving strategies".into(),
                solver: format!("fixpoint {}", report.fixpoint),
                oracle: it.fixpoint.map_or("none".into(), |f| format!("fixpoint {f}")),
                agree: same,
            });
        }
    }
    Ok(lines)
}
