//! Enumerate one minimizer per function and solve each tuple as a binary
//! closest-string problem.

use crate::error::{Error, Result};
use crate::lattice;
use crate::stats;
use crate::subset::Subset;

use super::{Instance, Outcome, Solution, Witness};

/// A set within `radii[j]` of `centers[j]` for every `j`, or `None`.
///
/// Bounded search tree rooted at the first center: while some center is too
/// far, one of the first few positions where the candidate differs from it
/// (and was not changed before) must be changed. Depth is at most `radii[0]`.
pub fn closest_string(centers: &[Subset], radii: &[usize]) -> Option<Subset> {
    assert_eq!(centers.len(), radii.len(), "one radius per center");
    let first = centers.first()?;
    let mut x = first.clone();
    let mut changed = Subset::empty(first.universe_len());
    branch(centers, radii, &mut x, &mut changed, radii[0]).then_some(x)
}

fn branch(centers: &[Subset], radii: &[usize], x: &mut Subset, changed: &mut Subset, depth: usize) -> bool {
    stats::count_branch();
    let Some(j) = (0..centers.len()).find(|&j| x.distance(&centers[j]) > radii[j]) else {
        return true;
    };
    if depth == 0 {
        return false;
    }
    let diff = x.symmetric_difference(&centers[j]);
    let locked = diff.intersection(changed).count();
    if locked > radii[j] {
        return false;
    }
    let candidates: Vec<usize> = diff
        .difference(changed)
        .iter()
        .take(radii[j] - locked + 1)
        .collect();
    for p in candidates {
        x.toggle(p);
        changed.insert(p);
        if branch(centers, radii, x, changed, depth - 1) {
            return true;
        }
        changed.remove(p);
        x.toggle(p);
    }
    false
}

/// Tries every tuple of minimizers when their number is at most `cap`.
pub fn solve_enumerative(inst: &Instance, cap: usize) -> Result<Outcome> {
    let lattices = inst.lattices()?;
    let thresholds = inst.thresholds();
    let refuse = || Error::Refused(format!("more than {cap} tuples of minimizers"));
    let mut families = Vec::with_capacity(lattices.len());
    let mut product = 1usize;
    for l in &lattices {
        let members = lattice::enumerate_members(l, cap).map_err(|_| refuse())?;
        product = product.checked_mul(members.len()).filter(|&p| p <= cap).ok_or_else(refuse)?;
        families.push(members);
    }
    if families.is_empty() {
        return Ok(Outcome::Feasible(Solution {
            x: Subset::empty(inst.n()),
            witnesses: Vec::new(),
        }));
    }
    let mut idx = vec![0usize; families.len()];
    loop {
        let centers: Vec<Subset> = idx.iter().zip(&families).map(|(&i, f)| f[i].clone()).collect();
        if let Some(x) = closest_string(&centers, &thresholds) {
            let witnesses = centers
                .into_iter()
                .map(|y| Witness {
                    distance: x.distance(&y),
                    y,
                })
                .collect();
            return Ok(Outcome::Feasible(Solution { x, witnesses }));
        }
        let mut pos = families.len();
        loop {
            if pos == 0 {
                return Ok(Outcome::Infeasible);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < families[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closest_string_examples() {
        let a = Subset::empty(2);
        let b = Subset::full(2);
        let x = closest_string(&[a.clone(), b.clone()], &[1, 1]).unwrap();
        assert_eq!(x.count(), 1);
        assert_eq!(closest_string(&[a, b], &[0, 1]), None);
    }
}
