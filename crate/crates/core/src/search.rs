//! Exhaustive search over finite grids with "distinct sums" constraints.
//!
//! Every brute-force decoration problem here has the same shape: pick one
//! value per variable from a finite domain so that, for each constraint, two
//! linear forms in those values differ. Variables are assigned in index
//! order and domain values in list order, so the first solution found is the
//! lexicographically first grid point that satisfies everything. A constraint
//! is checked as soon as its highest variable is assigned; pruning never
//! skips a satisfying point, so the witness matches plain enumeration.

use serde::Serialize;

pub const DEFAULT_GRID_BUDGET: u128 = 10_000_000;

/// Result of a bounded exhaustive search.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum SearchOutcome<T> {
    Found {
        witness: T,
    },
    NoneFound,
    /// The grid was larger than the budget; nothing was searched.
    Refused {
        grid: u128,
        budget: u128,
    },
}

impl<T> SearchOutcome<T> {
    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> SearchOutcome<U> {
        match self {
            SearchOutcome::Found { witness } => SearchOutcome::Found {
                witness: f(witness),
            },
            SearchOutcome::NoneFound => SearchOutcome::NoneFound,
            SearchOutcome::Refused { grid, budget } => SearchOutcome::Refused { grid, budget },
        }
    }

    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found { .. })
    }

    pub fn is_none_found(&self) -> bool {
        matches!(self, SearchOutcome::NoneFound)
    }

    pub fn is_refused(&self) -> bool {
        matches!(self, SearchOutcome::Refused { .. })
    }
}

/// `sum(coefficient * value[var])`, evaluated in term order.
pub(crate) type LinearForm = Vec<(usize, f64)>;

pub(crate) struct DistinctSums {
    pub domains: Vec<Vec<f64>>,
    pub constraints: Vec<(LinearForm, LinearForm)>,
}

pub(crate) fn grid_size(domains: &[Vec<f64>]) -> u128 {
    domains
        .iter()
        .fold(1u128, |acc, d| acc.saturating_mul(d.len() as u128))
}

pub(crate) fn eval(form: &LinearForm, values: &[f64]) -> f64 {
    form.iter().map(|&(var, c)| c * values[var]).sum()
}

impl DistinctSums {
    /// Returns the chosen domain index per variable.
    pub fn solve(&self, budget: u128) -> SearchOutcome<Vec<usize>> {
        let grid = grid_size(&self.domains);
        if grid > budget {
            return SearchOutcome::Refused { grid, budget };
        }
        if grid == 0 {
            return SearchOutcome::NoneFound;
        }

        let vars = self.domains.len();
        // constraints bucketed by the variable that completes them
        let mut ready: Vec<Vec<usize>> = vec![Vec::new(); vars];
        let mut constant = Vec::new();
        for (idx, (lhs, rhs)) in self.constraints.iter().enumerate() {
            match lhs.iter().chain(rhs).map(|&(v, _)| v).max() {
                Some(last) => ready[last].push(idx),
                None => constant.push(idx),
            }
        }
        let values = vec![0.0; vars];
        if constant.iter().any(|&c| !self.holds(c, &values)) {
            return SearchOutcome::NoneFound;
        }

        let mut state = Dfs {
            problem: self,
            ready,
            values,
            choice: vec![0; vars],
        };
        if state.descend(0) {
            SearchOutcome::Found {
                witness: state.choice,
            }
        } else {
            SearchOutcome::NoneFound
        }
    }

    fn holds(&self, constraint: usize, values: &[f64]) -> bool {
        let (lhs, rhs) = &self.constraints[constraint];
        eval(lhs, values) != eval(rhs, values)
    }
}

struct Dfs<'a> {
    problem: &'a DistinctSums,
    ready: Vec<Vec<usize>>,
    values: Vec<f64>,
    choice: Vec<usize>,
}

impl Dfs<'_> {
    fn descend(&mut self, var: usize) -> bool {
        if var == self.values.len() {
            return true;
        }
        for (i, &value) in self.problem.domains[var].iter().enumerate() {
            self.values[var] = value;
            self.choice[var] = i;
            let ok = self.ready[var]
                .iter()
                .all(|&c| self.problem.holds(c, &self.values));
            if ok && self.descend(var + 1) {
                return true;
            }
        }
        false
    }
}
