//! `key = value` run configuration, merged underneath command-line flags.

use std::path::PathBuf;
use std::str::FromStr;

use cascadelab::search::DEFAULT_GRID_BUDGET;
use cascadelab::ExpansionBudget;

/// Settings that may come from either the config file or global flags.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub grid_budget: Option<u128>,
    pub max_terms: Option<usize>,
    pub max_factors: Option<usize>,
    pub exact_cap: Option<usize>,
    pub node_budget: Option<u64>,
    pub prime_budget: Option<u32>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub emit: Option<String>,
    pub output: Option<PathBuf>,
}

fn value<T: FromStr>(key: &str, raw: &str, line: usize) -> Result<T, String> {
    raw.parse()
        .map_err(|_| format!("config line {line}: bad value {raw:?} for {key}"))
}

impl Overrides {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut out = Overrides::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, val) = body
                .split_once('=')
                .ok_or_else(|| format!("config line {line}: expected key = value"))?;
            let key = key.trim().replace('_', "-");
            let val = val.trim();
            match key.as_str() {
                "grid-budget" => out.grid_budget = Some(value(&key, val, line)?),
                "max-terms" => out.max_terms = Some(value(&key, val, line)?),
                "max-factors" => out.max_factors = Some(value(&key, val, line)?),
                "exact-cap" => out.exact_cap = Some(value(&key, val, line)?),
                "node-budget" => out.node_budget = Some(value(&key, val, line)?),
                "prime-budget" => out.prime_budget = Some(value(&key, val, line)?),
                "seed" => out.seed = Some(value(&key, val, line)?),
                "threads" => out.threads = Some(value(&key, val, line)?),
                "emit" => out.emit = Some(val.to_string()),
                "output" => out.output = Some(PathBuf::from(val)),
                other => return Err(format!("config line {line}: unknown key {other:?}")),
            }
        }
        Ok(out)
    }

    /// `self` wins over `base`.
    pub fn over(self, base: Overrides) -> Overrides {
        Overrides {
            grid_budget: self.grid_budget.or(base.grid_budget),
            max_terms: self.max_terms.or(base.max_terms),
            max_factors: self.max_factors.or(base.max_factors),
            exact_cap: self.exact_cap.or(base.exact_cap),
            node_budget: self.node_budget.or(base.node_budget),
            prime_budget: self.prime_budget.or(base.prime_budget),
            seed: self.seed.or(base.seed),
            threads: self.threads.or(base.threads),
            emit: self.emit.or(base.emit),
            output: self.output.or(base.output),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub grid_budget: u128,
    pub expansion: ExpansionBudget,
    pub exact_cap: usize,
    pub node_budget: u64,
    pub prime_budget: u32,
    pub seed: u64,
    pub threads: usize,
    pub emit: Option<String>,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(o: Overrides) -> Result<Self, String> {
        let defaults = ExpansionBudget::default();
        let cfg = RunConfig {
            grid_budget: o.grid_budget.unwrap_or(DEFAULT_GRID_BUDGET),
            expansion: ExpansionBudget {
                max_factors: o.max_factors.unwrap_or(defaults.max_factors),
                max_terms: o.max_terms.unwrap_or(defaults.max_terms),
            },
            exact_cap: o
                .exact_cap
                .unwrap_or(cascadelab::cascades::DEFAULT_EXACT_CAP),
            node_budget: o
                .node_budget
                .unwrap_or(cascadelab::cascades::DEFAULT_NODE_BUDGET),
            prime_budget: o
                .prime_budget
                .unwrap_or(cascadelab::seeds::DEFAULT_PRIME_BUDGET),
            seed: o.seed.unwrap_or(0),
            threads: o.threads.unwrap_or(1),
            emit: o.emit,
            output: o.output,
        };
        let positive = [
            ("grid-budget", cfg.grid_budget > 0),
            ("max-terms", cfg.expansion.max_terms > 0),
            ("max-factors", cfg.expansion.max_factors > 0),
            ("exact-cap", cfg.exact_cap > 0),
            ("node-budget", cfg.node_budget > 0),
            (
                "prime-budget",
                cfg.prime_budget > 0 && cfg.prime_budget < 64,
            ),
            ("threads", cfg.threads > 0),
        ];
        if let Some((key, _)) = positive.iter().find(|(_, ok)| !ok) {
            return Err(format!("{key} must be positive"));
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_known_keys() {
        let o = Overrides::parse("# budgets\ngrid-budget = 500\nmax_terms=10 # inline\nseed = 7\n")
            .unwrap();
        assert_eq!(o.grid_budget, Some(500));
        assert_eq!(o.max_terms, Some(10));
        assert_eq!(o.seed, Some(7));
    }

    #[test]
    fn rejects_unknown_and_malformed() {
        assert!(Overrides::parse("colour = red")
            .unwrap_err()
            .contains("unknown key"));
        assert!(Overrides::parse("seed 7").is_err());
        assert!(Overrides::parse("seed = x").is_err());
    }

    #[test]
    fn flags_win_and_budgets_stay_positive() {
        let file = Overrides::parse("seed = 1\nthreads = 4").unwrap();
        let flags = Overrides {
            seed: Some(9),
            ..Overrides::default()
        };
        let cfg = RunConfig::resolve(flags.over(file)).unwrap();
        assert_eq!((cfg.seed, cfg.threads), (9, 4));
        let bad = Overrides {
            grid_budget: Some(0),
            ..Overrides::default()
        };
        assert!(RunConfig::resolve(bad).is_err());
    }
}
