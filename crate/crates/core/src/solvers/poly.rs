//! Polynomial cases: `d = 0` and `k = 2`.

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::flow::{self, DiGraph};
use crate::lattice::add_expansion_edges;
use crate::subset::Subset;

use super::{certified, Instance, Outcome};

/// All thresholds zero: a common minimizer is a closed set of the union of
/// the expansion graphs on a single copy of the ground set.
pub fn solve_d0(inst: &Instance) -> Result<Outcome> {
    if inst.thresholds().iter().any(|&d| d != 0) {
        return Err(Error::Precondition("the d = 0 solver needs every threshold to be 0".into()));
    }
    let n = inst.n();
    let lattices = inst.lattices()?;
    let (s, t) = (n, n + 1);
    let mut g = DiGraph::new(n + 2);
    for l in &lattices {
        add_expansion_edges(l, &mut g, 0, s, t);
    }
    let cut = match flow::minimum_cut(&g, s, t) {
        Ok(cut) => cut,
        Err(Error::InfiniteCut) => return Ok(Outcome::Infeasible),
        Err(e) => return Err(e),
    };
    let x = Subset::from_indices(n, cut.members.iter().filter(|&v| v < n));
    certified(&lattices, &inst.thresholds(), x)
}

/// A set within `d1` of `y1` and `d2` of `y2`, if one exists.
///
/// Keeps `y1 ∩ y2`, the first half of `y1 \ y2` and the first half of
/// `y2 \ y1`. With unequal budgets, elements of `y1 △ y2` are then moved to
/// the side of the tighter budget in canonical order until both hold.
pub fn midpoint(y1: &Subset, y2: &Subset, d1: usize, d2: usize) -> Option<Subset> {
    let diff = y1.symmetric_difference(y2);
    if diff.count() > d1 + d2 {
        return None;
    }
    let only1: Vec<usize> = y1.difference(y2).iter().collect();
    let only2: Vec<usize> = y2.difference(y1).iter().collect();
    let mut x = y1.intersection(y2);
    for &v in only1.iter().take(only1.len() / 2) {
        x.insert(v);
    }
    for &v in only2.iter().take(only2.len() / 2) {
        x.insert(v);
    }
    for v in diff.iter() {
        let (e1, e2) = (x.distance(y1), x.distance(y2));
        if e1 > d1 && x.contains(v) != y1.contains(v) {
            x.toggle(v);
        } else if e2 > d2 && x.contains(v) != y2.contains(v) {
            x.toggle(v);
        }
    }
    debug_assert!(x.distance(y1) <= d1 && x.distance(y2) <= d2);
    Some(x)
}

/// Two functions: find minimizers `Y1, Y2` with `|Y1 △ Y2|` minimum by one
/// cut in the doubled expansion graph, then take their midpoint.
pub fn solve_k2(inst: &Instance) -> Result<Outcome> {
    if inst.k() != 2 {
        return Err(Error::Precondition(format!("the k = 2 solver got {} functions", inst.k())));
    }
    let n = inst.n();
    let lattices = inst.lattices()?;
    let (s, t) = (2 * n, 2 * n + 1);
    let mut g = DiGraph::new(2 * n + 2);
    add_expansion_edges(&lattices[0], &mut g, 0, s, t);
    add_expansion_edges(&lattices[1], &mut g, n, s, t);
    for v in 0..n {
        g.add_pair(v, n + v, Cost::ONE)?;
    }
    let cut = flow::minimum_cut(&g, s, t)?;
    let y1 = Subset::from_indices(n, cut.members.iter().filter(|&v| v < n));
    let y2 = Subset::from_indices(n, cut.members.iter().filter(|&v| v >= n && v < 2 * n).map(|v| v - n));
    let thresholds = inst.thresholds();
    match midpoint(&y1, &y2, thresholds[0], thresholds[1]) {
        Some(x) => certified(&lattices, &thresholds, x),
        None => Ok(Outcome::Infeasible),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn midpoint_examples() {
        let y1 = Subset::from_indices(4, [0, 1, 2, 3]);
        let y2 = Subset::empty(4);
        assert_eq!(midpoint(&y1, &y2, 2, 2), Some(Subset::from_indices(4, [0, 1])));
        assert_eq!(midpoint(&y1, &y2, 1, 2), None);
        let x = midpoint(&y1, &y2, 3, 1).unwrap();
        assert!(x.distance(&y1) <= 3 && x.distance(&y2) <= 1);
    }
}
