//! Strategy selection.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice;
use crate::stats::{self, Counters};
use crate::submod;
use crate::subset::Subset;

use super::{
    certified, solve_brute, solve_d0, solve_enumerative, solve_fpt_kd, solve_k2, solve_via_anchors,
    Instance, Outcome, Solution,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Auto,
    Brute,
    D0,
    K2,
    Fpt,
    Anchored,
    Enum,
}

impl Strategy {
    pub const ALL: [Strategy; 7] = [
        Strategy::Auto,
        Strategy::Brute,
        Strategy::D0,
        Strategy::K2,
        Strategy::Fpt,
        Strategy::Anchored,
        Strategy::Enum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::Brute => "brute",
            Strategy::D0 => "d0",
            Strategy::K2 => "k2",
            Strategy::Fpt => "fpt",
            Strategy::Anchored => "anchored",
            Strategy::Enum => "enum",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Strategy> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    /// Largest lattice used as a source of anchors.
    pub anchor_cap: usize,
    /// Largest number of minimizer tuples the enumerative solver will try.
    pub product_cap: usize,
    /// Largest ground set for exhaustive search.
    pub brute_limit: usize,
    /// Largest `k * max d` handed to the cut search.
    pub budget_cap: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            anchor_cap: 1_000_000,
            product_cap: 1_000_000,
            brute_limit: 20,
            budget_cap: 12,
        }
    }
}

impl SolverConfig {
    /// Defaults, with `RSM_BRUTE_LIMIT` overriding the brute-force limit.
    pub fn from_env() -> Self {
        let mut c = SolverConfig::default();
        if let Some(limit) = std::env::var("RSM_BRUTE_LIMIT").ok().and_then(|v| v.parse().ok()) {
            c.brute_limit = limit;
        }
        c
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub outcome: Outcome,
    pub algorithm: &'static str,
    pub counters: Counters,
}

pub fn dispatch(inst: &Instance, strategy: Strategy, config: &SolverConfig) -> Result<Report> {
    stats::reset();
    let (outcome, algorithm) = match strategy {
        Strategy::Auto => auto(inst, config)?,
        Strategy::Brute => (solve_brute(inst, config.brute_limit)?, "brute"),
        Strategy::D0 => (solve_d0(inst)?, "d0"),
        Strategy::K2 => (solve_k2(inst)?, "k2"),
        Strategy::Fpt => (solve_fpt_kd(inst)?, "fpt"),
        Strategy::Anchored => (solve_via_anchors(inst, config.anchor_cap)?, "anchored"),
        Strategy::Enum => (solve_enumerative(inst, config.product_cap)?, "enum"),
    };
    Ok(Report {
        outcome,
        algorithm,
        counters: stats::snapshot(),
    })
}

fn auto(inst: &Instance, config: &SolverConfig) -> Result<(Outcome, &'static str)> {
    let thresholds = inst.thresholds();
    if thresholds.iter().all(|&d| d == 0) {
        return Ok((solve_d0(inst)?, "d0"));
    }
    match inst.k() {
        0 => return Ok((certified(&[], &[], Subset::empty(inst.n()))?, "minimize")),
        1 => {
            let l = submod::to_lattice(&inst.functions()[0])?;
            return Ok((certified(&[l.clone()], &thresholds, l.minimum().clone())?, "minimize"));
        }
        2 => return Ok((solve_k2(inst)?, "k2")),
        _ => {}
    }
    let lattices = inst.lattices()?;
    let counts: Vec<usize> = lattices
        .iter()
        .map(|l| lattice::count_members(l, config.anchor_cap.max(config.product_cap)))
        .collect();
    if counts.iter().any(|&c| c <= config.anchor_cap) {
        return Ok((solve_via_anchors(inst, config.anchor_cap)?, "anchored"));
    }
    if inst.k() * inst.max_threshold() <= config.budget_cap {
        return Ok((solve_fpt_kd(inst)?, "fpt"));
    }
    let product = counts
        .iter()
        .try_fold(1usize, |acc, &c| acc.checked_mul(c).filter(|&p| p <= config.product_cap));
    if product.is_some() {
        return Ok((solve_enumerative(inst, config.product_cap)?, "enum"));
    }
    if inst.n() <= config.brute_limit {
        return Ok((solve_brute(inst, config.brute_limit)?, "brute"));
    }
    Err(Error::Refused(
        "no exact strategy fits the configured caps; raise a cap or pick --algo".into(),
    ))
}

/// Smallest uniform threshold with a feasible solution, by binary search.
pub fn min_radius(inst: &Instance, config: &SolverConfig) -> Result<(usize, Solution)> {
    let solve_at = |d: usize| -> Result<Option<Solution>> {
        let at = inst.with_thresholds(d, None)?;
        Ok(dispatch(&at, Strategy::Auto, config)?.outcome.solution().cloned())
    };
    let (mut lo, mut hi) = (0, inst.n());
    let mut best = solve_at(hi)?.ok_or_else(|| Error::Internal("infeasible at d = n".into()))?;
    while lo < hi {
        let mid = (lo + hi) / 2;
        match solve_at(mid)? {
            Some(sol) => {
                hi = mid;
                best = sol;
            }
            None => lo = mid + 1,
        }
    }
    Ok((hi, best))
}
