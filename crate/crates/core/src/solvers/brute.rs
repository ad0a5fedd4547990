//! Exhaustive reference solver. It evaluates functions directly and never
//! touches the flow code, so it can serve as an oracle for the others.

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::lattice;
use crate::submod::FunctionSpec;
use crate::subset::Subset;

use super::{Instance, Outcome, Solution, Witness};

/// Hard ceiling independent of configuration: masks are `u64` and the scan is `2^n`.
const MAX_BRUTE: usize = 30;

/// Every minimizer of `spec` as a bit mask, found by evaluating all `2^n` sets.
pub fn brute_minimizers(spec: &FunctionSpec) -> Result<Vec<u64>> {
    let n = spec.universe_len();
    if n > MAX_BRUTE {
        return Err(Error::Refused(format!("{n} elements is too many for exhaustive search")));
    }
    match spec {
        FunctionSpec::Explicit(e) => Ok(e.sets().iter().map(Subset::to_mask).collect()),
        FunctionSpec::Lattice(l) => Ok((0..1u64 << n)
            .filter(|&m| lattice::is_member(l, &Subset::from_mask(n, m)))
            .collect()),
        FunctionSpec::Cut(c) => {
            let values: Vec<Cost> = (0..1u64 << n)
                .map(|m| c.evaluate(&Subset::from_mask(n, m)))
                .collect();
            let best = *values.iter().min().expect("at least the empty set");
            if best.is_infinite() {
                return Err(Error::InfiniteCut);
            }
            Ok((0..1u64 << n).filter(|&m| values[m as usize] == best).collect())
        }
    }
}

/// First `X` in canonical order that is feasible, scanning all `2^n` sets.
pub fn solve_brute(inst: &Instance, limit: usize) -> Result<Outcome> {
    let n = inst.n();
    if n > limit.min(MAX_BRUTE) {
        return Err(Error::Refused(format!(
            "brute force is limited to {} elements, instance has {n}",
            limit.min(MAX_BRUTE)
        )));
    }
    let families: Vec<Vec<u64>> = inst
        .functions()
        .iter()
        .map(brute_minimizers)
        .collect::<Result<_>>()?;
    let thresholds = inst.thresholds();
    'outer: for x in 0..1u64 << n {
        crate::stats::count_branch();
        let mut witnesses = Vec::with_capacity(families.len());
        for (fam, &d) in families.iter().zip(&thresholds) {
            let best = fam
                .iter()
                .map(|&y| ((x ^ y).count_ones() as usize, y))
                .min_by_key(|&(dist, _)| dist)
                .expect("families are non-empty");
            if best.0 > d {
                continue 'outer;
            }
            witnesses.push(Witness {
                y: Subset::from_mask(n, best.1),
                distance: best.0,
            });
        }
        return Ok(Outcome::Feasible(Solution {
            x: Subset::from_mask(n, x),
            witnesses,
        }));
    }
    Ok(Outcome::Infeasible)
}
