//! Iterated regret minimization on strategic-form penalty matrices.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arena::Player;
use crate::error::{Error, Result};

/// `cells[r][c] = (penalty of the row player, penalty of the column player)`.
/// Player 1 picks rows, Player 2 columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PenaltyMatrix {
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub cells: Vec<Vec<[u64; 2]>>,
}

impl PenaltyMatrix {
    pub fn new(cells: Vec<Vec<[u64; 2]>>) -> Result<Self> {
        let rows = (1..=cells.len()).map(|k| format!("r{k}")).collect();
        let width = cells.first().map_or(0, Vec::len);
        let columns = (1..=width).map(|k| format!("c{k}")).collect();
        let m = PenaltyMatrix { rows, columns, cells };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if self.cells.is_empty() || self.cells[0].is_empty() {
            return Err(Error::Input("matrix needs at least one row and one column".into()));
        }
        if self.cells.iter().any(|row| row.len() != self.columns.len()) || self.cells.len() != self.rows.len() {
            return Err(Error::Input("matrix is not rectangular or labels do not match".into()));
        }
        Ok(())
    }

    fn size(&self, player: Player) -> usize {
        match player {
            Player::P1 => self.rows.len(),
            Player::P2 => self.columns.len(),
        }
    }

    /// Penalty of `player` when she plays `own` against `opp`.
    pub fn penalty(&self, player: Player, own: usize, opp: usize) -> u64 {
        match player {
            Player::P1 => self.cells[own][opp][0],
            Player::P2 => self.cells[opp][own][1],
        }
    }

    pub fn labels(&self, player: Player) -> &[String] {
        match player {
            Player::P1 => &self.rows,
            Player::P2 => &self.columns,
        }
    }
}

/// Surviving row and column indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurvivorSets(pub [BTreeSet<usize>; 2]);

impl SurvivorSets {
    pub fn full(m: &PenaltyMatrix) -> Self {
        SurvivorSets(Player::BOTH.map(|p| (0..m.size(p)).collect()))
    }

    pub fn of(&self, player: Player) -> &BTreeSet<usize> {
        &self.0[player.index()]
    }
}

/// Worst excess of `index` over the best reply, across surviving opponents.
pub fn strategy_regret(m: &PenaltyMatrix, player: Player, index: usize, survivors: &SurvivorSets) -> u64 {
    let own = survivors.of(player);
    survivors
        .of(player.opponent())
        .iter()
        .map(|&opp| {
            let best = own.iter().map(|&a| m.penalty(player, a, opp)).min().expect("nonempty survivors");
            m.penalty(player, index, opp) - best.min(m.penalty(player, index, opp))
        })
        .max()
        .unwrap_or(0)
}

/// Keeps, for each player, every surviving index of minimal regret.
pub fn delete(m: &PenaltyMatrix, survivors: &SurvivorSets) -> (SurvivorSets, [u64; 2]) {
    let mut regrets = [0; 2];
    let sets = Player::BOTH.map(|player| {
        let scored: Vec<(usize, u64)> =
            survivors.of(player).iter().map(|&k| (k, strategy_regret(m, player, k, survivors))).collect();
        let best = scored.iter().map(|&(_, r)| r).min().expect("nonempty survivors");
        regrets[player.index()] = best;
        scored.into_iter().filter(|&(_, r)| r == best).map(|(k, _)| k).collect()
    });
    (SurvivorSets(sets), regrets)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixIteration {
    /// Entry `j`: survivors after `j` deletions.
    pub survivors: Vec<SurvivorSets>,
    /// Entry `j - 1`: regrets of rank `j`.
    pub regrets: Vec<[u64; 2]>,
    /// First rank whose deletion changes nothing.
    pub fixpoint: usize,
}

pub fn iterate(m: &PenaltyMatrix) -> MatrixIteration {
    let mut survivors = vec![SurvivorSets::full(m)];
    let mut regrets = Vec::new();
    loop {
        let (next, r) = delete(m, survivors.last().unwrap());
        regrets.push(r);
        if &next == survivors.last().unwrap() {
            return MatrixIteration { fixpoint: regrets.len(), survivors, regrets };
        }
        survivors.push(next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Player::*;

    fn figure_one() -> PenaltyMatrix {
        let mut m = PenaltyMatrix::new(vec![vec![[2, 1], [3, 4]], vec![[1, 2], [4, 3]]]).unwrap();
        m.rows = vec!["A1".into(), "B1".into()];
        m.columns = vec!["A2".into(), "B2".into()];
        m
    }

    #[test]
    fn strategy_regrets_of_figure_one() {
        let m = figure_one();
        let full = SurvivorSets::full(&m);
        assert_eq!(strategy_regret(&m, P1, 0, &full), 1);
        assert_eq!(strategy_regret(&m, P1, 1, &full), 1);
        assert_eq!(strategy_regret(&m, P2, 0, &full), 0);
        assert_eq!(strategy_regret(&m, P2, 1, &full), 3);
    }

    #[test]
    fn delete_steps_of_figure_one() {
        let m = figure_one();
        let (first, _) = delete(&m, &SurvivorSets::full(&m));
        assert_eq!(first, SurvivorSets([BTreeSet::from([0, 1]), BTreeSet::from([0])]));
        let (second, regrets) = delete(&m, &first);
        assert_eq!(second, SurvivorSets([BTreeSet::from([1]), BTreeSet::from([0])]));
        assert_eq!(strategy_regret(&m, P1, 1, &first), 0);
        assert_eq!(regrets, [0, 0]);
    }

    #[test]
    fn iteration_of_figure_one() {
        let m = figure_one();
        let it = iterate(&m);
        assert_eq!(it.survivors.last().unwrap(), &SurvivorSets([BTreeSet::from([1]), BTreeSet::from([0])]));
        assert_eq!(it.regrets[1][0], 0);
        assert_eq!(it.fixpoint, 3);
    }

    #[test]
    fn one_by_one() {
        let m = PenaltyMatrix::new(vec![vec![[7, 9]]]).unwrap();
        assert_eq!(strategy_regret(&m, P1, 0, &SurvivorSets::full(&m)), 0);
        assert_eq!(iterate(&m).fixpoint, 1);
    }

    #[test]
    fn identical_entries_stop_at_rank_one() {
        let m = PenaltyMatrix::new(vec![vec![[2, 2]; 3]; 3]).unwrap();
        let it = iterate(&m);
        assert_eq!(it.fixpoint, 1);
        assert_eq!(it.survivors, [SurvivorSets::full(&m)]);
    }

    #[test]
    fn ragged_matrices_are_rejected() {
        assert!(PenaltyMatrix::new(vec![vec![[1, 1]], vec![]]).is_err());
        assert!(PenaltyMatrix::new(vec![]).is_err());
    }
}
