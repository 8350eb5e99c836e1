//! `regret`: command-line driver for the regret-core solvers.
//!
//! Every command prints a JSON report on standard output. Exit codes: 0 on
//! success, 1 on diagnostics, 2 on resource limits, 3 when a solver
//! disagrees with the oracle.

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use regret_core::document::{parse_arena, parse_matrix, ArenaDocument, Diagnostic, ParsedArena};
use regret_core::generate::{random_arena, random_tree, ArenaParams};
use regret_core::iterated_positive::{self, UnfoldConfig, DEFAULT_UNFOLD_CAP};
use regret_core::iterated_tree;
use regret_core::matrix::iterate;
use regret_core::minmax::minmax_strategy;
use regret_core::report::{arena_digest, check_arena, PlayerResult, SolveReport, WitnessTable};
use regret_core::{regret_edge, regret_twa, Error, Player, Strategy, TargetWeightedArena};

#[derive(Debug, Parser)]
#[command(name = "regret", version, about = "Regret minimization for reachability games on weighted graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse arena documents and report diagnostics.
    Validate(Inputs),
    /// Minmax value and an optimal memoryless strategy of a target-weighted arena.
    Minmax {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_parser = parse_player)]
        player: Player,
    },
    /// Regret and a witness strategy, target-weighted or edge-weighted.
    Regret {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_parser = parse_player)]
        player: Player,
    },
    /// Iterated regret on a tree arena or a strictly positive arena.
    Iterated {
        #[command(flatten)]
        inputs: Inputs,
        /// Most nodes the unfolding of a positive arena may create.
        #[arg(long, default_value_t = DEFAULT_UNFOLD_CAP)]
        cap: usize,
        /// Unfolding bound replacing the computed one.
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Iterated regret on a penalty matrix document.
    Matrix(Inputs),
    /// Compare every applicable solver with the brute-force oracle.
    Check(Inputs),
    /// Print a random arena document.
    Gen {
        #[arg(long, default_value_t = 6)]
        positions: usize,
        #[arg(long, default_value_t = 3)]
        max_weight: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Tree arena with at most `positions` leaves.
        #[arg(long, conflicts_with = "positive")]
        tree: bool,
        /// All edge weights at least 1.
        #[arg(long)]
        positive: bool,
    },
}

#[derive(Debug, Args)]
struct Inputs {
    /// Input files; "-" reads standard input.
    #[arg(required = true)]
    files: Vec<String>,
}

fn parse_player(s: &str) -> Result<Player, String> {
    s.parse::<u64>().ok().and_then(Player::from_number).ok_or_else(|| "player must be 1 or 2".to_string())
}

const OK: u8 = 0;
const DIAGNOSTICS: u8 = 1;
const RESOURCE: u8 = 2;
const DISAGREEMENT: u8 = 3;

struct Outcome {
    report: SolveReport,
    code: u8,
}

impl Outcome {
    fn ok(report: SolveReport) -> Self {
        Outcome { report, code: OK }
    }

    fn diagnostics(mut report: SolveReport, diagnostics: Vec<Diagnostic>) -> Self {
        report.diagnostics = diagnostics;
        Outcome { report, code: DIAGNOSTICS }
    }

    fn error(report: SolveReport, e: Error) -> Self {
        let code = if matches!(e, Error::Resource { .. }) { RESOURCE } else { DIAGNOSTICS };
        let mut out = Outcome::diagnostics(report, vec![message(e.to_string())]);
        out.code = code;
        out
    }
}

fn message(text: String) -> Diagnostic {
    Diagnostic { line: None, column: None, field: None, message: text }
}

fn read_input(file: &str) -> Result<String, String> {
    if file == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(|e| format!("standard input: {e}"))?;
        Ok(text)
    } else {
        std::fs::read_to_string(file).map_err(|e| format!("{file}: {e}"))
    }
}

fn echo(command: &str, file: &str, flags: &[String]) -> String {
    std::iter::once(command.to_string()).chain(flags.iter().cloned()).chain(std::iter::once(file.to_string())).collect::<Vec<_>>().join(" ")
}

fn with_arena(report: SolveReport, text: &str, solve: impl FnOnce(SolveReport, ParsedArena) -> Outcome) -> Outcome {
    match parse_arena(text) {
        Ok(parsed) => {
            let mut report = report;
            report.digest = Some(arena_digest(&parsed.arena, parsed.twa.as_ref()));
            solve(report, parsed)
        }
        Err(d) => Outcome::diagnostics(report, d),
    }
}

fn result(player: Player, value: regret_core::ExtNat, arena: &regret_core::Arena, witness: Option<&Strategy>) -> PlayerResult {
    PlayerResult { player: player.number(), value, witness: witness.map(|w| WitnessTable::new(arena, w)) }
}

fn run_validate(report: SolveReport, text: &str) -> Outcome {
    with_arena(report, text, |mut r, parsed| {
        r.notes.push(format!("{} positions, {} edges", parsed.arena.len(), parsed.arena.edge_count()));
        if parsed.twa.is_some() {
            r.notes.push("explicit target weights".into());
        }
        Outcome::ok(r)
    })
}

fn run_minmax(report: SolveReport, text: &str, player: Player) -> Outcome {
    with_arena(report, text, |mut r, parsed| {
        let twa = match parsed.twa.map_or_else(|| TargetWeightedArena::from_arena(parsed.arena.clone()), Ok) {
            Ok(twa) => twa,
            Err(e) => return Outcome::error(r, e),
        };
        let solution = minmax_strategy(&twa, player);
        r.method = Some("target-weighted".into());
        r.results.push(result(player, solution.value, twa.arena(), Some(&solution.strategy.into())));
        Outcome::ok(r)
    })
}

fn run_regret(report: SolveReport, text: &str, player: Player) -> Outcome {
    with_arena(report, text, |mut r, parsed| {
        let (solved, method) = match parsed.twa {
            Some(twa) => (regret_twa::regret(&twa, player), "target-weighted"),
            None => match regret_edge::regret_auto(&parsed.arena, player) {
                Ok((solved, true)) => (solved, "target-weighted"),
                Ok((solved, false)) => (solved, "edge-weighted"),
                Err(e) => return Outcome::error(r, e),
            },
        };
        r.method = Some(method.into());
        let witness = solved.regret.is_finite().then_some(&solved.witness);
        r.results.push(result(player, solved.regret, &parsed.arena, witness));
        if !solved.winning {
            r.notes.push(format!("{player} has no winning strategy"));
        }
        Outcome::ok(r)
    })
}

fn run_iterated(report: SolveReport, text: &str, config: UnfoldConfig) -> Outcome {
    with_arena(report, text, |mut r, parsed| {
        let arena = &parsed.arena;
        if arena.check_tree().is_ok() {
            let it = match iterated_tree::iterated_regret(arena) {
                Ok(it) => it,
                Err(e) => return Outcome::error(r, e),
            };
            r.method = Some("tree".into());
            r.ranks = it.ranks.iter().map(|k| k.regrets).collect();
            r.fixpoint = Some(it.fixpoint);
            let regrets = it.final_regrets();
            for (player, w) in Player::BOTH.into_iter().zip(it.witnesses) {
                r.results.push(result(player, regrets[player.index()], arena, Some(&w.into())));
            }
            return Outcome::ok(r);
        }
        let it = match iterated_positive::iterated_regret(arena, &config) {
            Ok(it) => it,
            Err(e) => return Outcome::error(r, e),
        };
        r.method = Some("positive".into());
        r.ranks = it.tree.ranks.iter().map(|k| k.regrets).collect();
        r.fixpoint = Some(it.tree.fixpoint);
        r.notes.push(format!("b = {}, B = {}, unfolding bound {}", it.bounds.0, it.bounds.1, it.bound));
        r.notes.push(format!("{} unfolded nodes", it.unfolded_nodes));
        let regrets = it.tree.final_regrets();
        for (player, w) in Player::BOTH.into_iter().zip(it.witnesses) {
            r.results.push(result(player, regrets[player.index()], arena, Some(&w.into())));
        }
        Outcome::ok(r)
    })
}

fn run_matrix(mut report: SolveReport, text: &str) -> Outcome {
    let m = match parse_matrix(text) {
        Ok(m) => m,
        Err(d) => return Outcome::diagnostics(report, d),
    };
    let it = iterate(&m);
    let last = it.survivors.last().expect("full sets");
    report.method = Some("matrix".into());
    report.ranks = it.regrets.iter().map(|r| r.map(regret_core::ExtNat::Fin)).collect();
    report.fixpoint = Some(it.fixpoint);
    report.survivors = Some(Player::BOTH.map(|p| last.of(p).iter().map(|&k| m.labels(p)[k].clone()).collect()));
    Outcome::ok(report)
}

fn run_check(report: SolveReport, text: &str) -> Outcome {
    with_arena(report, text, |mut r, parsed| match check_arena(&parsed.arena, parsed.twa.as_ref()) {
        Ok(lines) => {
            let agree = lines.iter().all(|l| l.agree);
            r.checks = lines;
            r.agree = Some(agree);
            r.notes.push(if agree { "agree" } else { "disagree" }.into());
            let code = if agree { OK } else { DISAGREEMENT };
            Outcome { report: r, code }
        }
        Err(e) => Outcome::error(r, e),
    })
}

fn run_file(command: &Command, file: &str) -> Outcome {
    let (name, flags) = match command {
        Command::Validate(_) => ("validate", vec![]),
        Command::Minmax { player, .. } => ("minmax", vec![format!("--player {}", player.number())]),
        Command::Regret { player, .. } => ("regret", vec![format!("--player {}", player.number())]),
        Command::Iterated { cap, bound, .. } => {
            let mut flags = vec![format!("--cap {cap}")];
            flags.extend(bound.map(|b| format!("--bound {b}")));
            ("iterated", flags)
        }
        Command::Matrix(_) => ("matrix", vec![]),
        Command::Check(_) => ("check", vec![]),
        Command::Gen { .. } => unreachable!("gen reads no input"),
    };
    let report = SolveReport::new(echo(name, file, &flags));
    let text = match read_input(file) {
        Ok(text) => text,
        Err(e) => return Outcome::diagnostics(report, vec![message(e)]),
    };
    match command {
        Command::Validate(_) => run_validate(report, &text),
        Command::Minmax { player, .. } => run_minmax(report, &text, *player),
        Command::Regret { player, .. } => run_regret(report, &text, *player),
        Command::Iterated { cap, bound, .. } => run_iterated(report, &text, UnfoldConfig { cap: *cap, bound: *bound }),
        Command::Matrix(_) => run_matrix(report, &text),
        Command::Check(_) => run_check(report, &text),
        Command::Gen { .. } => unreachable!(),
    }
}

fn generate(positions: usize, max_weight: u64, seed: u64, tree: bool, positive: bool) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let arena = if tree {
        random_tree(positions.max(1), max_weight, &mut rng)
    } else {
        random_arena(&ArenaParams { positions: positions.max(1), max_weight, positive, ..Default::default() }, &mut rng)
    };
    ArenaDocument::from_arena(&arena, None).to_json()
}

/// Ignores a closed standard output, e.g. when piped into `head`.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let files = match &cli.command {
        Command::Gen { positions, max_weight, seed, tree, positive } => {
            emit(&generate(*positions, *max_weight, *seed, *tree, *positive));
            return ExitCode::SUCCESS;
        }
        Command::Validate(i) | Command::Matrix(i) | Command::Check(i) => &i.files,
        Command::Minmax { inputs, .. } | Command::Regret { inputs, .. } | Command::Iterated { inputs, .. } => &inputs.files,
    };
    if files.iter().filter(|f| f.as_str() == "-").count() > 1 {
        eprintln!("standard input can be read only once");
        return ExitCode::from(DIAGNOSTICS);
    }
    // One solver per file; reports keep input order.
    let outcomes: Vec<Outcome> = std::thread::scope(|scope| {
        let handles: Vec<_> = files.iter().map(|f| scope.spawn(|| run_file(&cli.command, f))).collect();
        handles.into_iter().map(|h| h.join().expect("solver thread panicked")).collect()
    });
    let code = outcomes.iter().map(|o| o.code).max().unwrap_or(OK);
    if let [single] = outcomes.as_slice() {
        emit(&single.report.to_json());
    } else {
        let reports: Vec<&SolveReport> = outcomes.iter().map(|o| &o.report).collect();
        emit(&serde_json::to_string_pretty(&reports).expect("reports serialize"));
    }
    ExitCode::from(code)
}
