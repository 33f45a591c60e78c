//! Run configuration: seed and Gröbner budget, layered as defaults, then an
//! optional TOML file, then the `ALGCOMP_BUDGET` environment variable.

use std::path::Path;

use algcomp_core::groebner::Budget;
use serde::Deserialize;

pub const BUDGET_ENV: &str = "ALGCOMP_BUDGET";

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct BudgetOverrides {
    max_pairs: Option<usize>,
    max_basis: Option<usize>,
    max_terms: Option<usize>,
    max_reductions: Option<u64>,
}

impl BudgetOverrides {
    fn apply(&self, b: &mut Budget) {
        if let Some(v) = self.max_pairs {
            b.max_pairs = v;
        }
        if let Some(v) = self.max_basis {
            b.max_basis = v;
        }
        if let Some(v) = self.max_terms {
            b.max_terms = v;
        }
        if let Some(v) = self.max_reductions {
            b.max_reductions = v;
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    seed: Option<u64>,
    #[serde(default)]
    budget: BudgetOverrides,
}

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub seed: u64,
    pub budget: Budget,
}

/// `key=value` pairs separated by commas, e.g. `max_pairs=100,max_basis=20`.
fn parse_env_budget(s: &str) -> Result<BudgetOverrides, String> {
    let mut o = BudgetOverrides::default();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| format!("{BUDGET_ENV}: expected key=value, got {part:?}"))?;
        let bad = |_| format!("{BUDGET_ENV}: {k} needs a nonnegative integer, got {v:?}");
        match k.trim() {
            "max_pairs" => o.max_pairs = Some(v.trim().parse().map_err(bad)?),
            "max_basis" => o.max_basis = Some(v.trim().parse().map_err(bad)?),
            "max_terms" => o.max_terms = Some(v.trim().parse().map_err(bad)?),
            "max_reductions" => o.max_reductions = Some(v.trim().parse().map_err(bad)?),
            other => return Err(format!("{BUDGET_ENV}: unknown key {other:?}")),
        }
    }
    Ok(o)
}

pub fn load(config: Option<&Path>, seed_flag: Option<u64>, env: Option<String>) -> Result<Settings, String> {
    let file: ConfigFile = match config {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| format!("cannot read config {}: {e}", p.display()))?;
            toml::from_str(&text).map_err(|e| format!("bad config {}: {e}", p.display()))?
        }
        None => ConfigFile::default(),
    };
    let mut budget = Budget::default();
    file.budget.apply(&mut budget);
    if let Some(s) = env {
        parse_env_budget(&s)?.apply(&mut budget);
    }
    Ok(Settings {
        seed: seed_flag.or(file.seed).unwrap_or(0),
        budget,
    })
}
