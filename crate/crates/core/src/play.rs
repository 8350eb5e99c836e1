//! Plays, utilities, and the outcome of a strategy profile.

use std::collections::HashSet;

use crate::arena::{Arena, Player, Pos};
use crate::error::{Error, Result};
use crate::ext::{ExtNat, Fin, Inf};
use crate::strategy::Strategy;

/// How a materialized play ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlayEnd {
    /// The last position has no outgoing edge.
    DeadEnd,
    /// The play continues forever by repeating `positions[loop_start..]`.
    Lasso { loop_start: usize },
    /// Explicit prefix of a longer play.
    Prefix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Play {
    pub positions: Vec<Pos>,
    pub end: PlayEnd,
}

impl Play {
    pub fn prefix(positions: Vec<Pos>) -> Self {
        Play { positions, end: PlayEnd::Prefix }
    }

    pub fn last(&self) -> Option<Pos> {
        self.positions.last().copied()
    }

    pub fn is_finite(&self) -> bool {
        self.end == PlayEnd::DeadEnd
    }

    /// Checks that consecutive positions are joined by edges and that the
    /// end marker is consistent.
    pub fn check(&self, arena: &Arena) -> Result<()> {
        if self.positions.is_empty() {
            return Err(Error::InvalidPlay("empty play".into()));
        }
        if let Some(&p) = self.positions.iter().find(|&&p| p >= arena.len()) {
            return Err(Error::InvalidPlay(format!("unknown position index {p}")));
        }
        for w in self.positions.windows(2) {
            if arena.edge(w[0], w[1]).is_none() {
                return Err(Error::InvalidPlay(format!(
                    "no edge {:?} -> {:?}",
                    arena.id(w[0]),
                    arena.id(w[1])
                )));
            }
        }
        let last = *self.positions.last().unwrap();
        match self.end {
            PlayEnd::DeadEnd if !arena.is_dead_end(last) => Err(Error::InvalidPlay(format!(
                "play marked finite but {:?} has successors",
                arena.id(last)
            ))),
            PlayEnd::Lasso { loop_start } => {
                if loop_start >= self.positions.len() || arena.edge(last, self.positions[loop_start]).is_none() {
                    Err(Error::InvalidPlay("lasso does not close".into()))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    pub fn ids<'a>(&self, arena: &'a Arena) -> Vec<&'a str> {
        self.positions.iter().map(|&p| arena.id(p)).collect()
    }
}

/// Sum of `player`'s edge weights up to the first visit of `C_i`, or `inf`
/// when the play never visits it. Lassos are checked on their full cycle.
pub fn utility(arena: &Arena, play: &Play, player: Player) -> Result<ExtNat> {
    play.check(arena)?;
    Ok(path_utility(arena, &play.positions, player))
}

/// Utility of a sequence of positions known to be a path of `arena`.
pub(crate) fn path_utility(arena: &Arena, path: &[Pos], player: Player) -> ExtNat {
    let mut sum = 0u64;
    for (k, &p) in path.iter().enumerate() {
        if arena.is_target(p, player) {
            return Fin(sum);
        }
        if let Some(&q) = path.get(k + 1) {
            sum += arena.edge(p, q).expect("path edge").weight(player);
        }
    }
    Inf
}

/// The unique play produced by two strategies of opposite players.
///
/// The play is traced until a dead end, until both players have visited
/// their targets (`PlayEnd::Prefix`), or until a (position, memory) state
/// repeats (`PlayEnd::Lasso`). Utilities only depend on this prefix.
pub fn outcome(arena: &Arena, first: &Strategy, second: &Strategy) -> Result<Play> {
    if first.player() == second.player() {
        return Err(Error::Contract("outcome needs strategies of both players".into()));
    }
    let (s1, s2) = match first.player() {
        Player::P1 => (first, second),
        Player::P2 => (second, first),
    };
    let mut pos = arena.initial();
    let mut mem = [s1.initial_memory(), s2.initial_memory()];
    let mut positions = vec![pos];
    let mut seen = HashSet::new();
    let mut visited = [false; 2];
    let mut state_at = Vec::new();
    loop {
        for player in Player::BOTH {
            visited[player.index()] |= arena.is_target(pos, player);
        }
        if visited == [true, true] {
            return Ok(Play { positions, end: PlayEnd::Prefix });
        }
        let state = (pos, mem);
        if !seen.insert(state) {
            let loop_start = state_at.iter().position(|s| *s == state).expect("seen state");
            positions.pop();
            return Ok(Play { positions, end: PlayEnd::Lasso { loop_start } });
        }
        state_at.push(state);
        let mover = if arena.owner(pos) == Player::P1 { s1 } else { s2 };
        let next = match mover.choose(arena, mem[arena.owner(pos).index()], pos)? {
            None => return Ok(Play { positions, end: PlayEnd::DeadEnd }),
            Some(q) => q,
        };
        mem = [s1.update(arena, mem[0], pos, next)?, s2.update(arena, mem[1], pos, next)?];
        pos = next;
        positions.push(pos);
    }
}

/// `u_i(outcome(s1, s2))`.
pub fn outcome_utility(arena: &Arena, first: &Strategy, second: &Strategy, player: Player) -> Result<ExtNat> {
    let play = outcome(arena, first, second)?;
    Ok(path_utility(arena, &play.positions, player))
}
