//! Instances, solutions and the exact solvers.

mod anchored;
mod brute;
mod dispatch;
mod enumerative;
mod mbdc;
mod poly;

pub use anchored::{solve_anchored, solve_via_anchors, AnchoredInstance};
pub use brute::{brute_minimizers, solve_brute};
pub use dispatch::{dispatch, min_radius, Report, SolverConfig, Strategy};
pub use enumerative::{closest_string, solve_enumerative};
pub use mbdc::{build_mbdc, eliminate_forbidden, solve_fpt_kd, solve_mbdc, MbdcInstance};
pub use poly::{midpoint, solve_d0, solve_k2};

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::lattice::{self, CompactLattice};
use crate::submod::{self, FunctionSpec};
use crate::subset::Subset;

/// `k` submodular functions over a named ground set and distance thresholds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    universe: Vec<String>,
    functions: Vec<FunctionSpec>,
    d: usize,
    per_function_d: Option<Vec<usize>>,
}

impl Instance {
    pub fn new(
        universe: Vec<String>,
        functions: Vec<FunctionSpec>,
        d: usize,
        per_function_d: Option<Vec<usize>>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        for name in &universe {
            if name == "s" || name == "t" {
                return Err(Error::InvalidInstance(format!(
                    "element name {name:?} is reserved for cut terminals"
                )));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidInstance(format!("duplicate element {name:?}")));
            }
        }
        let n = universe.len();
        if let Some(i) = functions.iter().position(|f| f.universe_len() != n) {
            return Err(Error::InvalidInstance(format!(
                "function {i} is defined over a different ground set"
            )));
        }
        if let Some(per) = &per_function_d {
            if per.len() != functions.len() {
                return Err(Error::InvalidInstance(format!(
                    "{} per-function thresholds for {} functions",
                    per.len(),
                    functions.len()
                )));
            }
        }
        Ok(Instance {
            universe,
            functions,
            d,
            per_function_d,
        })
    }

    /// Elements named `v0, v1, ..`.
    pub fn unnamed(n: usize, functions: Vec<FunctionSpec>, d: usize) -> Result<Self> {
        Self::new((0..n).map(|i| format!("v{i}")).collect(), functions, d, None)
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn n(&self) -> usize {
        self.universe.len()
    }

    pub fn k(&self) -> usize {
        self.functions.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn functions(&self) -> &[FunctionSpec] {
        &self.functions
    }

    pub fn per_function_d(&self) -> Option<&[usize]> {
        self.per_function_d.as_deref()
    }

    pub fn threshold(&self, i: usize) -> usize {
        self.per_function_d.as_ref().map_or(self.d, |p| p[i])
    }

    pub fn thresholds(&self) -> Vec<usize> {
        (0..self.k()).map(|i| self.threshold(i)).collect()
    }

    pub fn max_threshold(&self) -> usize {
        self.thresholds().into_iter().max().unwrap_or(self.d)
    }

    pub fn with_thresholds(&self, d: usize, per_function_d: Option<Vec<usize>>) -> Result<Self> {
        Self::new(self.universe.clone(), self.functions.clone(), d, per_function_d)
    }

    pub fn lattices(&self) -> Result<Vec<CompactLattice>> {
        self.functions.iter().map(submod::to_lattice).collect()
    }

    pub fn element_index(&self, name: &str) -> Option<usize> {
        self.universe.iter().position(|u| u == name)
    }

    pub fn subset_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Subset> {
        let mut x = Subset::empty(self.n());
        for name in names {
            let name = name.as_ref();
            let i = self
                .element_index(name)
                .ok_or_else(|| Error::InvalidInstance(format!("unknown element {name:?}")))?;
            x.insert(i);
        }
        Ok(x)
    }

    /// Element names of `x`, sorted.
    pub fn names_of(&self, x: &Subset) -> Vec<String> {
        let mut names: Vec<String> = x.iter().map(|i| self.universe[i].clone()).collect();
        names.sort();
        names
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub y: Subset,
    pub distance: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub x: Subset,
    pub witnesses: Vec<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Feasible(Solution),
    Infeasible,
}

impl Outcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Outcome::Feasible(_))
    }

    pub fn solution(&self) -> Option<&Solution> {
        match self {
            Outcome::Feasible(s) => Some(s),
            Outcome::Infeasible => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub ok: bool,
    /// Nearest minimizer of each function and its distance to `X`.
    pub witnesses: Vec<Witness>,
}

/// Checks `X` against every threshold using exact distances.
pub fn verify(inst: &Instance, x: &Subset) -> Result<Verification> {
    verify_lattices(&inst.lattices()?, &inst.thresholds(), x)
}

pub(crate) fn verify_lattices(
    lattices: &[CompactLattice],
    thresholds: &[usize],
    x: &Subset,
) -> Result<Verification> {
    let mut ok = true;
    let mut witnesses = Vec::with_capacity(lattices.len());
    for (l, &d) in lattices.iter().zip(thresholds) {
        let (distance, y) = lattice::gamma(l, x)?;
        ok &= distance <= d;
        witnesses.push(Witness { y, distance });
    }
    Ok(Verification { ok, witnesses })
}

/// Builds a feasible outcome from `x`, or fails loudly if `x` does not verify.
pub(crate) fn certified(
    lattices: &[CompactLattice],
    thresholds: &[usize],
    x: Subset,
) -> Result<Outcome> {
    let v = verify_lattices(lattices, thresholds, &x)?;
    if !v.ok {
        return Err(Error::Internal("solver produced a set that fails verification".into()));
    }
    Ok(Outcome::Feasible(Solution {
        x,
        witnesses: v.witnesses,
    }))
}
