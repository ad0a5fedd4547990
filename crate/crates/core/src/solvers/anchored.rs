//! Anchored search: a solution is sought within `d0` of a given set `Y0`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::lattice::{self, CompactLattice};
use crate::stats;
use crate::subset::Subset;

use super::{certified, Instance, Outcome};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchoredInstance {
    pub instance: Instance,
    pub y0: Subset,
    pub d0: usize,
}

impl AnchoredInstance {
    pub fn new(instance: Instance, y0: Subset, d0: usize) -> Result<Self> {
        if y0.universe_len() != instance.n() {
            return Err(Error::InvalidInstance("anchor over a different ground set".into()));
        }
        if instance.per_function_d().is_none() && d0 > instance.d() {
            return Err(Error::Precondition(format!(
                "anchor radius {d0} exceeds d = {}",
                instance.d()
            )));
        }
        Ok(AnchoredInstance { instance, y0, d0 })
    }
}

/// Finds `X` with `|X △ Y0| <= d0` and `X` within each threshold, if one exists.
pub fn solve_anchored(a: &AnchoredInstance) -> Result<Outcome> {
    let lattices = a.instance.lattices()?;
    let thresholds = a.instance.thresholds();
    let mut search = Anchored {
        lattices: &lattices,
        thresholds: &thresholds,
        failed: HashSet::new(),
    };
    match search.solve(&a.y0, a.d0)? {
        Some(x) => certified(&lattices, &thresholds, x),
        None => Ok(Outcome::Infeasible),
    }
}

/// Runs the anchored search once per member of the smallest lattice, using
/// that lattice's threshold as the anchor radius.
pub fn solve_via_anchors(inst: &Instance, cap: usize) -> Result<Outcome> {
    let lattices = inst.lattices()?;
    let thresholds = inst.thresholds();
    if inst.k() == 0 {
        return certified(&lattices, &thresholds, Subset::empty(inst.n()));
    }
    let (anchor, members) = lattices
        .iter()
        .enumerate()
        .filter_map(|(i, l)| lattice::enumerate_members(l, cap).ok().map(|m| (i, m)))
        .min_by_key(|(_, m)| m.len())
        .ok_or_else(|| Error::Refused(format!("every lattice has more than {cap} members")))?;
    let rest: Vec<CompactLattice> = lattices
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != anchor)
        .map(|(_, l)| l.clone())
        .collect();
    let rest_d: Vec<usize> = thresholds
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != anchor)
        .map(|(_, &d)| d)
        .collect();
    let mut search = Anchored {
        lattices: &rest,
        thresholds: &rest_d,
        failed: HashSet::new(),
    };
    for y0 in &members {
        search.failed.clear();
        if let Some(x) = search.solve(y0, thresholds[anchor])? {
            return certified(&lattices, &thresholds, x);
        }
    }
    Ok(Outcome::Infeasible)
}

struct Anchored<'a> {
    lattices: &'a [CompactLattice],
    thresholds: &'a [usize],
    failed: HashSet<(Subset, usize)>,
}

/// Search state for one violated lattice. Parts are `U0`, the blocks, then
/// `Uinf`; `U0` is known to lie inside every member and `Uinf` outside.
#[derive(Clone)]
struct Guesses {
    t: Subset,
    fixed: Vec<bool>,
}

impl Anchored<'_> {
    fn solve(&mut self, y0: &Subset, d0: usize) -> Result<Option<Subset>> {
        stats::count_branch();
        if self.failed.contains(&(y0.clone(), d0)) {
            return Ok(None);
        }
        let mut violated = None;
        for (i, l) in self.lattices.iter().enumerate() {
            if lattice::gamma(l, y0)?.0 > self.thresholds[i] {
                violated = Some(i);
                break;
            }
        }
        let Some(i) = violated else {
            return Ok(Some(y0.clone()));
        };
        if d0 > 0 {
            let l = &self.lattices[i];
            let start = Guesses {
                t: Subset::empty(y0.universe_len()),
                fixed: vec![false; l.num_nodes() + 1],
            };
            if let Some(x) = self.explore(i, y0, d0, start)? {
                return Ok(Some(x));
            }
        }
        self.failed.insert((y0.clone(), d0));
        Ok(None)
    }

    fn part<'l>(l: &'l CompactLattice, p: usize) -> &'l Subset {
        if p == l.num_nodes() {
            l.u_inf()
        } else {
            l.node(p)
        }
    }

    /// Grows `T`, a set of elements on which `Y0` and the violated lattice's
    /// witness must differ, until it exceeds the threshold; then branches on
    /// moving `Y0` by one element of `T`.
    fn explore(&mut self, i: usize, y0: &Subset, d0: usize, mut g: Guesses) -> Result<Option<Subset>> {
        let lattices = self.lattices;
        let l = &lattices[i];
        let d = self.thresholds[i];
        let inf_part = l.num_nodes();
        loop {
            let y = y0.symmetric_difference(&g.t);
            if g.t.count() > d || lattice::is_member(l, &y) {
                break;
            }
            let mut options: Vec<Guesses> = Vec::with_capacity(2);

            let split = (0..=inf_part).find(|&p| {
                let part = Self::part(l, p);
                !g.fixed[p] && !part.is_disjoint(&y) && !part.is_subset(&y)
            });
            if let Some(p) = split {
                let part = Self::part(l, p);
                let choices: &[bool] = match p {
                    0 => &[true],
                    p if p == inf_part => &[false],
                    _ => &[true, false],
                };
                for &inside in choices {
                    let mut next = g.clone();
                    let add = if inside { part.difference(&y) } else { part.intersection(&y) };
                    next.t = next.t.union(&add);
                    next.fixed[p] = true;
                    options.push(next);
                }
            } else if !g.fixed[0] && !l.u0().is_empty() && l.u0().is_disjoint(&y) {
                g.t = g.t.union(l.u0());
                g.fixed[0] = true;
            } else if !g.fixed[inf_part] && !l.u_inf().is_empty() && l.u_inf().is_subset(&y) {
                g.t = g.t.union(l.u_inf());
                g.fixed[inf_part] = true;
            } else {
                let edge = l.dag().iter().copied().find(|&(a, b)| {
                    !l.node(b).is_empty() && l.node(a).is_subset(&y) && l.node(b).is_disjoint(&y)
                });
                let Some((a, b)) = edge else {
                    return Err(Error::Internal("non-member with no violated condition".into()));
                };
                match (g.fixed[a], g.fixed[b]) {
                    (true, true) => return Ok(None),
                    (true, false) => {
                        g.t = g.t.union(l.node(b));
                        g.fixed[b] = true;
                    }
                    (false, true) => {
                        g.t = g.t.union(l.node(a));
                        g.fixed[a] = true;
                    }
                    (false, false) => {
                        let mut inside = g.clone();
                        inside.t = inside.t.union(l.node(b));
                        inside.fixed[a] = true;
                        inside.fixed[b] = true;
                        let mut outside = g.clone();
                        outside.t = outside.t.union(l.node(a));
                        outside.fixed[a] = true;
                        options.extend([inside, outside]);
                    }
                }
            }

            if !options.is_empty() {
                for next in options {
                    if next.t.count() <= d + d0 {
                        if let Some(x) = self.explore(i, y0, d0, next)? {
                            return Ok(Some(x));
                        }
                    }
                }
                return Ok(None);
            }
            if g.t.count() > d + d0 {
                return Ok(None);
            }
        }
        if g.t.count() <= d {
            // A member this close to Y0 contradicts the violated threshold.
            return Ok(None);
        }
        for v in g.t.iter() {
            let mut moved = y0.clone();
            moved.toggle(v);
            if let Some(x) = self.solve(&moved, d0 - 1)? {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }
}
