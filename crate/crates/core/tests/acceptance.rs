//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use regret_core::fixtures::{centipede, figure_one};
use regret_core::generate::{random_arena, random_tree, random_twa, random_twa_sized, ArenaParams};
use regret_core::iterated_positive::{iterated_regret as positive_iterated, unfold, UnfoldConfig};
use regret_core::iterated_tree::iterated_regret;
use regret_core::matrix::{iterate, strategy_regret, SurvivorSets};
use regret_core::minmax::can_achieve;
use regret_core::oracle::{
    check_best_alternative_graph, enumerate_strategies, graph_regret_bruteforce, iterated_bruteforce,
    memoryless_on_tree, restrict, strategy_count, tree_outcome, twa_regret_bruteforce, witness_regret,
    witness_regret_enumerated, OracleMethod,
};
use regret_core::regret_edge::{build_utility_graph, strategy_bound};
use regret_core::regret_twa::build_best_alternative_graph;
use regret_core::{
    edge_tree_to_leaf_twa, outcome, regret_edge, regret_twa, utility, Arena, ExtNat, Fin, Player, Strategy,
    TargetWeightedArena,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn twa_suite() -> Vec<TargetWeightedArena> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    (0..240).map(|k| random_twa(&ArenaParams { positions: 2 + k % 7, max_weight: 5, ..Default::default() }, 3, &mut rng)).collect()
}

fn edge_suite() -> Vec<Arena> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    (0..120).map(|k| random_arena(&ArenaParams { positions: 2 + k % 5, max_weight: 3, ..Default::default() }, &mut rng)).collect()
}

fn tree_suite() -> Vec<Arena> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    (0..120).map(|_| random_tree(12, 5, &mut rng)).collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let m = figure_one();
    let full = SurvivorSets::full(&m);
    let regrets = [
        strategy_regret(&m, Player::P1, 0, &full),
        strategy_regret(&m, Player::P1, 1, &full),
        strategy_regret(&m, Player::P2, 0, &full),
        strategy_regret(&m, Player::P2, 1, &full),
    ];
    ensure(regrets == [1, 1, 0, 3], || format!("strategy regrets A1, B1, A2, B2 = {regrets:?}"))?;
    let it = iterate(&m);
    let last = it.survivors.last().unwrap();
    let names = Player::BOTH.map(|p| last.of(p).iter().map(|&k| m.labels(p)[k].clone()).collect::<Vec<_>>());
    ensure(names == [vec!["B1".to_string()], vec!["A2".to_string()]], || format!("fixpoint {names:?}"))?;
    ensure(it.regrets[1][0] == 0, || format!("rank-2 regret of Player 1 is {}", it.regrets[1][0]))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("A1=1 B1=1 A2=0 B2=3, fixpoint ({{B1}},{{A2}}), {elapsed:?}"))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    let mut finite = 0;
    for k in 0..200 {
        let params = ArenaParams { positions: 1 + k % 8, max_weight: 3, ..Default::default() };
        let arena = random_arena(&params, &mut rng);
        let twa = random_twa(&params, 3, &mut rng);
        for player in Player::BOTH {
            let (report, _) = regret_edge::regret_auto(&arena, player).map_err(|e| e.to_string())?;
            // Reaching any target is all that matters for winning.
            let zeros = Player::BOTH.map(|p| {
                (0..arena.len()).filter(|&s| arena.is_target(s, p)).map(|s| (s, Fin(0))).collect()
            });
            let reach = TargetWeightedArena::with_target_weights(arena.clone(), zeros).unwrap();
            let wins = can_achieve(&reach, player, arena.max_weight_of(player)).winning();
            ensure(report.regret.is_finite() == wins, || format!("edge arena {k} {player}: regret {} winning {wins}", report.regret))?;
            let r = regret_twa::regret(&twa, player).regret;
            let wins = can_achieve(&twa, player, twa.max_target_weight(player)).winning();
            ensure(r.is_finite() == wins, || format!("TWA {k} {player}: regret {r} winning {wins}"))?;
            finite += report.regret.is_finite() as usize + r.is_finite() as usize;
            checked += 2;
        }
    }
    Ok(format!("400 arenas, {checked} (arena, player) pairs, {finite} finite, 0 counterexamples"))
}

fn criterion_3(twas: &[TargetWeightedArena]) -> Outcome {
    let start = Instant::now();
    let (mut positive, mut enumerated) = (0, 0);
    for (k, g) in twas.iter().enumerate() {
        for player in Player::BOTH {
            let solved = regret_twa::regret(g, player).regret;
            let oracle = twa_regret_bruteforce(g, player).map_err(|e| e.to_string())?;
            ensure(solved == oracle.regret, || format!("TWA {k} {player}: solver {solved}, oracle {}", oracle.regret))?;
            positive += (solved.is_finite() && solved > Fin(0)) as usize;
            enumerated += (oracle.method == OracleMethod::Enumeration) as usize;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{} TWAs, {} solves ({enumerated} by enumeration, {positive} with positive finite regret), {elapsed:?}", twas.len(), twas.len() * 2))
}

fn criterion_4(arenas: &[Arena]) -> Outcome {
    let (mut positive, mut enumerated) = (0, 0);
    for (k, arena) in arenas.iter().enumerate() {
        for player in Player::BOTH {
            let solved = regret_edge::regret(arena, player).map_err(|e| e.to_string())?.regret;
            let oracle = graph_regret_bruteforce(arena, player).map_err(|e| e.to_string())?;
            ensure(solved == oracle.regret, || format!("arena {k} {player}: solver {solved}, oracle {}", oracle.regret))?;
            positive += (solved.is_finite() && solved > Fin(0)) as usize;
            enumerated += (oracle.method == OracleMethod::Enumeration) as usize;
        }
    }
    Ok(format!("{} arenas, {} solves ({enumerated} by enumeration, {positive} with positive finite regret)", arenas.len(), arenas.len() * 2))
}

fn criterion_5(twas: &[TargetWeightedArena], arenas: &[Arena]) -> Outcome {
    let mut edges = 0;
    for (k, g) in twas.iter().enumerate() {
        for player in Player::BOTH {
            let graph = build_best_alternative_graph(g, player);
            edges += check_best_alternative_graph(g, &graph).map_err(|e| format!("TWA {k} {player}: {e}"))?;
        }
    }
    for (k, arena) in arenas.iter().enumerate() {
        for player in Player::BOTH {
            let utility_graph = build_utility_graph(arena, player, strategy_bound(arena));
            let graph = build_best_alternative_graph(&utility_graph.twa, player);
            edges += check_best_alternative_graph(&utility_graph.twa, &graph).map_err(|e| format!("arena {k} {player}: {e}"))?;
        }
    }
    Ok(format!("{edges} best-alternative edges recomputed, 0 violations"))
}

fn criterion_6(trees: &[Arena]) -> Outcome {
    let mut ranks = 0;
    for (k, tree) in trees.iter().enumerate() {
        let report = iterated_regret(tree).map_err(|e| e.to_string())?;
        let leaf = edge_tree_to_leaf_twa(tree).unwrap();
        let it = iterated_bruteforce(&leaf, tree.len() + 1).map_err(|e| e.to_string())?;
        let ours: Vec<[ExtNat; 2]> = report.ranks.iter().map(|r| r.regrets).collect();
        ensure(ours == it.regrets, || format!("tree {k}: ranks {ours:?} vs oracle {:?}", it.regrets))?;
        ensure(Some(report.fixpoint) == it.fixpoint, || format!("tree {k}: fixpoint {} vs {:?}", report.fixpoint, it.fixpoint))?;
        ensure(report.fixpoint <= tree.len(), || format!("tree {k}: fixpoint {} > |S|", report.fixpoint))?;
        for pair in ours.windows(2) {
            ensure(pair[1][0] <= pair[0][0] && pair[1][1] <= pair[0][1], || format!("tree {k}: regrets increase"))?;
        }
        for j in 0..=report.fixpoint {
            let sub = &report.subtrees[j.min(report.subtrees.len() - 1)];
            for player in Player::BOTH {
                let a: BTreeSet<_> = it.survivors[j][player.index()].iter().map(|s| restrict(tree, sub, player, s)).collect();
                let b: BTreeSet<_> = enumerate_strategies(tree, Some(sub), player).unwrap().into_iter().collect();
                ensure(a == b, || format!("tree {k}: survivors of {player} differ at rank {j}"))?;
            }
        }
        ranks += report.fixpoint;
    }
    Ok(format!("{} trees, {ranks} ranks compared with survivor sets", trees.len()))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let tree = centipede();
    let report = iterated_regret(&tree).map_err(|e| e.to_string())?;
    let first = report.ranks[0].regrets;
    ensure(first == [Fin(1), Fin(1)], || format!("rank-1 regrets {first:?}"))?;
    let last = report.final_regrets();
    ensure(last == [Fin(0), Fin(0)], || format!("fixpoint regrets {last:?}"))?;
    let [w1, w2] = report.witnesses.clone();
    let play = outcome(&tree, &w1.into(), &w2.into()).map_err(|e| e.to_string())?;
    let penalty = Player::BOTH.map(|p| utility(&tree, &play, p).unwrap());
    ensure(penalty == [Fin(1), Fin(3)], || format!("outcome penalty {penalty:?}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("rank 1 (1,1), fixpoint (0,0) at rank {}, outcome (1,3), {elapsed:?}", report.fixpoint))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut checked, mut skipped, mut nodes) = (0, 0, 0);
    while checked < 50 {
        let params = ArenaParams { positions: 2 + checked % 3, max_weight: 2, positive: true, ..Default::default() };
        let arena = random_arena(&params, &mut rng);
        let bound = 4 + (checked + skipped) as u64 % 5;
        let config = UnfoldConfig { cap: 100_000, bound: Some(bound) };
        let unfolding = unfold(&arena, bound, &config).map_err(|e| e.to_string())?;
        let tree = &unfolding.tree;
        if strategy_count(tree, None, Player::P1).saturating_mul(strategy_count(tree, None, Player::P2)) > 20_000 {
            skipped += 1;
            continue;
        }
        let report = positive_iterated(&arena, &config).map_err(|e| e.to_string())?;
        let it = iterated_bruteforce(&edge_tree_to_leaf_twa(tree).unwrap(), tree.len() + 1).map_err(|e| e.to_string())?;
        let ours: Vec<[ExtNat; 2]> = report.tree.ranks.iter().map(|r| r.regrets).collect();
        ensure(ours == it.regrets, || format!("arena {checked}: ranks {ours:?} vs oracle {:?}", it.regrets))?;
        nodes += tree.len();
        checked += 1;
    }
    Ok(format!("50 arenas with unfolding bound 4..=8 ({nodes} tree nodes, {skipped} too large for enumeration skipped)"))
}

fn tree_witness_regret(tree: &Arena, player: Player) -> Result<(ExtNat, ExtNat), String> {
    let report = iterated_regret(tree).map_err(|e| e.to_string())?;
    let leaf = edge_tree_to_leaf_twa(tree).unwrap();
    let it = iterated_bruteforce(&leaf, tree.len() + 1).map_err(|e| e.to_string())?;
    // Rank-fixpoint regret is measured against the sets surviving one rank earlier.
    let sets = &it.survivors[report.fixpoint - 1];
    let full = regret_core::iterated_tree::Subtree::full(tree);
    let witness = memoryless_on_tree(tree, &full, &report.witnesses[player.index()]);
    let weight = |a: &_, b: &_| leaf.target_weight(player, tree_outcome(tree, player, a, b)).unwrap();
    let mut worst = Fin(0);
    for b in &sets[player.opponent().index()] {
        let br = ExtNat::min_of(sets[player.index()].iter().map(|a| weight(a, b)));
        worst = worst.max(weight(&witness, b) - br);
    }
    Ok((worst, report.final_regrets()[player.index()]))
}

fn criterion_9(twas: &[TargetWeightedArena], arenas: &[Arena], trees: &[Arena]) -> Outcome {
    let (mut witnesses, mut replayed) = (0, 0);
    let mut check = |arena: &Arena, witness: &Strategy, regret: ExtNat, player: Player, what: String| -> Result<(), String> {
        if !regret.is_finite() {
            return Ok(());
        }
        witnesses += 1;
        let w = witness_regret(arena, witness, player).map_err(|e| e.to_string())?;
        ensure(w == regret, || format!("{what}: witness regret {w}, reported {regret}"))?;
        if arena.is_acyclic() {
            if let Ok(w) = witness_regret_enumerated(arena, witness, player) {
                replayed += 1;
                ensure(w == regret, || format!("{what}: replayed regret {w}, reported {regret}"))?;
            }
        }
        Ok(())
    };
    for (k, g) in twas.iter().enumerate() {
        for player in Player::BOTH {
            let r = regret_twa::regret(g, player);
            check(g.arena(), &r.witness, r.regret, player, format!("TWA {k} {player}"))?;
        }
    }
    for (k, arena) in arenas.iter().enumerate() {
        for player in Player::BOTH {
            let r = regret_edge::regret(arena, player).map_err(|e| e.to_string())?;
            check(arena, &r.witness, r.regret, player, format!("arena {k} {player}"))?;
        }
    }
    let mut tree_witnesses = 0;
    for (k, tree) in trees.iter().enumerate() {
        for player in Player::BOTH {
            let (worst, reported) = tree_witness_regret(tree, player)?;
            if reported.is_finite() {
                tree_witnesses += 1;
                ensure(worst == reported, || format!("tree {k} {player}: witness {worst}, reported {reported}"))?;
            }
        }
    }
    Ok(format!(
        "{witnesses} graph witnesses ({replayed} also replayed against every adversary strategy), {tree_witnesses} tree witnesses"
    ))
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let g = random_twa_sized(100_000, 300_000, 20, 2_000, &mut rng);
    let budget = (g.arena().len() + g.arena().edge_count()) as u64;
    let k = g.distinct_weights(Player::P1).get(1000).copied().unwrap_or(10);
    let start = Instant::now();
    let a = can_achieve(&g, Player::P1, k);
    let elapsed = start.elapsed();
    ensure(a.stats.counter_updates <= budget, || format!("{} counter updates > {budget}", a.stats.counter_updates))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "|S|=100000 |T|=300000: {} counter updates (budget {budget}), {} rounds, {} in W*, {elapsed:?}",
        a.stats.counter_updates,
        a.stats.rounds,
        a.len()
    ))
}

fn main() -> ExitCode {
    let twas = twa_suite();
    let arenas = edge_suite();
    let trees = tree_suite();
    let results: Vec<(&str, Outcome)> = vec![
        ("matrix fixture", criterion_1()),
        ("finite regret iff winning", criterion_2()),
        ("TWA regret equals oracle", criterion_3(&twas)),
        ("edge-weighted regret equals oracle", criterion_4(&arenas)),
        ("stored best alternatives are exact", criterion_5(&twas, &arenas)),
        ("tree iterated regret equals oracle", criterion_6(&trees)),
        ("centipede fixture", criterion_7()),
        ("positive-arena iterated regret equals oracle", criterion_8()),
        ("witness soundness", criterion_9(&twas, &arenas, &trees)),
        ("attractor counter budget", criterion_10()),
    ];
    let mut failed = 0;
    for (k, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
