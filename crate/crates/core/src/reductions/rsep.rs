//! Robust separation: families of disjoint sets, each of which should be
//! kept whole by a cut that contains `s` and avoids `t`.

use rand::Rng;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::flow::DiGraph;
use crate::random::Rand;
use crate::solvers::Instance;
use crate::submod::{CutFunction, ExplicitFamily, FunctionSpec};
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RSepInstance {
    universe: Vec<String>,
    s: usize,
    t: usize,
    families: Vec<Vec<Subset>>,
    d: usize,
}

impl RSepInstance {
    pub fn new(universe: Vec<String>, s: usize, t: usize, families: Vec<Vec<Subset>>, d: usize) -> Result<Self> {
        let n = universe.len();
        if s >= n || t >= n || s == t {
            return Err(Error::MissingTerminal);
        }
        for (i, fam) in families.iter().enumerate() {
            let mut seen = Subset::empty(n);
            for set in fam {
                if set.universe_len() != n {
                    return Err(Error::InvalidInstance(format!("family {i} uses another universe")));
                }
                if !seen.is_disjoint(set) {
                    return Err(Error::InvalidInstance(format!("family {i} has overlapping sets")));
                }
                seen = seen.union(set);
            }
        }
        Ok(RSepInstance {
            universe,
            s,
            t,
            families,
            d,
        })
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn families(&self) -> &[Vec<Subset>] {
        &self.families
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.universe.iter().position(|u| u == name)
    }

    /// Ground elements of the derived robust-minimization instance, in order.
    pub fn inner_elements(&self) -> Vec<usize> {
        (0..self.universe.len()).filter(|&u| u != self.s && u != self.t).collect()
    }

    /// Maps a separating set to the derived instance by dropping `s`.
    pub fn to_rsm_set(&self, x: &Subset) -> Subset {
        let inner = self.inner_elements();
        Subset::from_indices(inner.len(), (0..inner.len()).filter(|&i| x.contains(inner[i])))
    }

    /// Inverse of [`RSepInstance::to_rsm_set`].
    pub fn from_rsm_set(&self, x: &Subset) -> Subset {
        let inner = self.inner_elements();
        let mut out = Subset::from_indices(self.universe.len(), x.iter().map(|i| inner[i]));
        out.insert(self.s);
        out
    }
}

/// Cost of separating `set` from `x`; `None` means infinite.
pub fn rsep_dist(inst: &RSepInstance, x: &Subset, set: &Subset) -> Option<usize> {
    let (has_s, has_t) = (set.contains(inst.s), set.contains(inst.t));
    let outside = set.difference(x).count();
    let inside = set.intersection(x).count();
    match (has_s, has_t) {
        (false, false) => Some(outside.min(inside)),
        (true, false) => Some(outside),
        (false, true) => Some(inside),
        (true, true) => None,
    }
}

/// Total cost for each family, `None` where some set cannot be kept whole.
pub fn rsep_costs(inst: &RSepInstance, x: &Subset) -> Vec<Option<usize>> {
    inst.families
        .iter()
        .map(|fam| fam.iter().map(|set| rsep_dist(inst, x, set)).sum())
        .collect()
}

pub fn rsep_is_solution(inst: &RSepInstance, x: &Subset) -> bool {
    x.contains(inst.s)
        && !x.contains(inst.t)
        && rsep_costs(inst, x).iter().all(|c| c.is_some_and(|c| c <= inst.d))
}

/// First solution in canonical order over sets containing `s` but not `t`.
pub fn rsep_solve_brute(inst: &RSepInstance, limit: usize) -> Result<Option<Subset>> {
    let inner = inst.inner_elements();
    if inner.len() > limit.min(30) {
        return Err(Error::Refused(format!("{} free elements exceed the brute-force limit", inner.len())));
    }
    for mask in 0..1u64 << inner.len() {
        let mut x = Subset::from_indices(inst.universe.len(), (0..inner.len()).filter(|&i| mask >> i & 1 == 1).map(|i| inner[i]));
        x.insert(inst.s);
        if rsep_is_solution(inst, &x) {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// One cut function per family: infinite cliques on every set, so the
/// minimizers are exactly the cuts that keep each set whole.
pub fn rsep_to_rsm(inst: &RSepInstance) -> Result<Instance> {
    if inst.families.iter().flatten().any(|set| set.contains(inst.s) && set.contains(inst.t)) {
        return Ok(infeasible_instance(inst.d));
    }
    let inner = inst.inner_elements();
    let n = inner.len();
    let vertex = |u: usize| -> usize {
        if u == inst.s {
            n
        } else if u == inst.t {
            n + 1
        } else {
            inner.binary_search(&u).expect("inner element")
        }
    };
    let mut functions = Vec::with_capacity(inst.families.len());
    for fam in &inst.families {
        let mut g = DiGraph::new(n + 2);
        for set in fam {
            for u in set.iter() {
                for v in set.iter() {
                    if u != v {
                        g.add_edge(vertex(u), vertex(v), Cost::Infinite)?;
                    }
                }
            }
        }
        functions.push(FunctionSpec::Cut(CutFunction::new(n, g)?));
    }
    let names = inner.iter().map(|&u| inst.universe[u].clone()).collect();
    Instance::new(names, functions, inst.d, None)
}

/// Two singleton families `{D}` and `{∅}` with `|D| = 2d + 1`: never feasible.
pub fn infeasible_instance(d: usize) -> Instance {
    let n = 2 * d + 1;
    let f1 = ExplicitFamily::new(n, vec![Subset::full(n)]).expect("singleton");
    let f2 = ExplicitFamily::new(n, vec![Subset::empty(n)]).expect("singleton");
    Instance::new(
        (0..n).map(|i| format!("blocker:{i}")).collect(),
        vec![FunctionSpec::Explicit(f1), FunctionSpec::Explicit(f2)],
        d,
        None,
    )
    .expect("well-formed")
}

/// Random instance over `size` elements plus `s` and `t`.
pub fn random_rsep(rng: &mut Rand, size: usize, families: usize, d: usize) -> RSepInstance {
    let mut universe = vec!["s".to_string(), "t".to_string()];
    universe.extend((1..=size).map(|i| format!("u{i}")));
    let n = universe.len();
    let fams = (0..families)
        .map(|_| {
            let mut order: Vec<usize> = (0..n).collect();
            rand::seq::SliceRandom::shuffle(order.as_mut_slice(), rng);
            let mut sets = Vec::new();
            let mut rest = order.as_slice();
            while !rest.is_empty() && sets.len() < 3 {
                let take = rng.gen_range(1..=rest.len().min(3));
                let set = Subset::from_indices(n, rest[..take].iter().copied());
                rest = &rest[take..];
                if !(set.contains(0) && set.contains(1)) && rng.gen_bool(0.7) {
                    sets.push(set);
                }
            }
            sets
        })
        .collect();
    RSepInstance::new(universe, 0, 1, fams, d).expect("disjoint by construction")
}
