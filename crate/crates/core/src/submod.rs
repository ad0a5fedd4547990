//! Submodular function descriptions and their minimizer lattices.

use std::collections::BTreeMap;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::flow::{self, DiGraph};
use crate::lattice::{self, CompactLattice};
use crate::subset::Subset;

/// `f(X)` is the cost of the edges leaving `X ∪ {s}`. Vertices `0..n` are the
/// ground elements, `n` is `s` and `n + 1` is `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutFunction {
    n: usize,
    graph: DiGraph,
}

impl CutFunction {
    pub fn new(n: usize, graph: DiGraph) -> Result<Self> {
        if graph.num_vertices() != n + 2 {
            return Err(Error::InvalidGraph(format!(
                "cut graph over {n} elements needs {} vertices, got {}",
                n + 2,
                graph.num_vertices()
            )));
        }
        Ok(CutFunction { n, graph })
    }

    pub fn universe_len(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> &DiGraph {
        &self.graph
    }

    pub fn source(&self) -> usize {
        self.n
    }

    pub fn sink(&self) -> usize {
        self.n + 1
    }

    pub fn evaluate(&self, x: &Subset) -> Cost {
        let mut side = Subset::empty(self.n + 2);
        for v in x.iter() {
            side.insert(v);
        }
        side.insert(self.source());
        self.graph.cut_value(&side)
    }
}

/// An explicit family of minimizers; must be non-empty and closed under
/// union and intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitFamily {
    n: usize,
    sets: Vec<Subset>,
}

impl ExplicitFamily {
    pub fn new(n: usize, mut sets: Vec<Subset>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::InvalidInstance("explicit family is empty".into()));
        }
        if sets.iter().any(|s| s.universe_len() != n) {
            return Err(Error::InvalidInstance("family member over another ground set".into()));
        }
        sets.sort();
        sets.dedup();
        for a in &sets {
            for b in &sets {
                if sets.binary_search(&a.union(b)).is_err()
                    || sets.binary_search(&a.intersection(b)).is_err()
                {
                    return Err(Error::LatticeClosureViolated);
                }
            }
        }
        Ok(ExplicitFamily { n, sets })
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn universe_len(&self) -> usize {
        self.n
    }

    pub fn contains(&self, x: &Subset) -> bool {
        self.sets.binary_search(x).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionSpec {
    Cut(CutFunction),
    Explicit(ExplicitFamily),
    Lattice(CompactLattice),
}

impl FunctionSpec {
    pub fn universe_len(&self) -> usize {
        match self {
            FunctionSpec::Cut(c) => c.universe_len(),
            FunctionSpec::Explicit(e) => e.universe_len(),
            FunctionSpec::Lattice(l) => l.universe_len(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            FunctionSpec::Cut(_) => "cut",
            FunctionSpec::Explicit(_) => "explicit",
            FunctionSpec::Lattice(_) => "lattice",
        }
    }

    /// Explicit and lattice functions are indicators: `0` on members, `inf` elsewhere.
    pub fn evaluate(&self, x: &Subset) -> Cost {
        let indicator = |m: bool| if m { Cost::ZERO } else { Cost::Infinite };
        match self {
            FunctionSpec::Cut(c) => c.evaluate(x),
            FunctionSpec::Explicit(e) => indicator(e.contains(x)),
            FunctionSpec::Lattice(l) => indicator(lattice::is_member(l, x)),
        }
    }
}

/// Minimum value and the smallest minimizer.
pub fn minimize(spec: &FunctionSpec) -> Result<(Cost, Subset)> {
    match spec {
        FunctionSpec::Cut(c) => {
            let cut = flow::minimum_cut(c.graph(), c.source(), c.sink())?;
            let x = Subset::from_indices(c.n, cut.members.iter().filter(|&v| v < c.n));
            Ok((cut.value, x))
        }
        FunctionSpec::Explicit(e) => {
            let smallest = e.sets.iter().fold(Subset::full(e.n), |acc, s| acc.intersection(s));
            Ok((Cost::ZERO, smallest))
        }
        FunctionSpec::Lattice(l) => Ok((Cost::ZERO, l.minimum().clone())),
    }
}

/// Compact description of the set of minimizers.
pub fn to_lattice(spec: &FunctionSpec) -> Result<CompactLattice> {
    match spec {
        FunctionSpec::Cut(c) => {
            let f = flow::max_flow(c.graph(), c.source(), c.sink())?;
            flow::residual_condensation(&f)
        }
        FunctionSpec::Explicit(e) => explicit_lattice(e),
        FunctionSpec::Lattice(l) => Ok(l.clone()),
    }
}

fn explicit_lattice(e: &ExplicitFamily) -> Result<CompactLattice> {
    let n = e.n;
    let u0 = e.sets.iter().fold(Subset::full(n), |acc, s| acc.intersection(s));
    let top = e.sets.iter().fold(Subset::empty(n), |acc, s| acc.union(s));
    let u_inf = top.complement();
    let mut by_signature: BTreeMap<Vec<bool>, Subset> = BTreeMap::new();
    for v in top.difference(&u0).iter() {
        let sig: Vec<bool> = e.sets.iter().map(|s| s.contains(v)).collect();
        by_signature
            .entry(sig)
            .or_insert_with(|| Subset::empty(n))
            .insert(v);
    }
    let blocks: Vec<(Vec<bool>, Subset)> = by_signature.into_iter().collect();
    let mut dag = Vec::new();
    for (i, (sig_a, _)) in blocks.iter().enumerate() {
        dag.push((i + 1, 0));
        for (j, (sig_b, _)) in blocks.iter().enumerate() {
            let implies = sig_a.iter().zip(sig_b).all(|(&a, &b)| !a || b);
            if i != j && implies {
                dag.push((i + 1, j + 1));
            }
        }
    }
    let l = CompactLattice::new(n, u0, blocks.into_iter().map(|(_, b)| b).collect(), u_inf, dag)?;
    debug_assert_eq!(lattice::count_members(&l, e.sets.len()), e.sets.len());
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, items: &[usize]) -> Subset {
        Subset::from_indices(n, items.iter().copied())
    }

    #[test]
    fn explicit_examples() {
        let n = 2;
        let fam = ExplicitFamily::new(n, vec![set(n, &[]), set(n, &[0]), set(n, &[1]), set(n, &[0, 1])])
            .unwrap();
        let l = to_lattice(&FunctionSpec::Explicit(fam)).unwrap();
        assert!(l.u0().is_empty());
        assert_eq!(l.blocks().len(), 2);
        assert_eq!(l.dag(), &[(1, 0), (2, 0)]);

        let fam = ExplicitFamily::new(n, vec![set(n, &[0]), set(n, &[0, 1])]).unwrap();
        let spec = FunctionSpec::Explicit(fam);
        assert_eq!(minimize(&spec).unwrap().1, set(n, &[0]));
        assert_eq!(spec.evaluate(&set(n, &[1])), Cost::Infinite);

        let err = ExplicitFamily::new(n, vec![set(n, &[0]), set(n, &[1])]).unwrap_err();
        assert_eq!(err.to_string(), "lattice closure violated");
    }

    #[test]
    fn cut_examples() {
        // a=0, b=1, s=2, t=3
        let mut g = DiGraph::new(4);
        g.add_edge(2, 0, Cost::int(2)).unwrap();
        g.add_edge(0, 1, Cost::int(1)).unwrap();
        g.add_edge(1, 3, Cost::int(2)).unwrap();
        let spec = FunctionSpec::Cut(CutFunction::new(2, g).unwrap());
        assert_eq!(spec.evaluate(&set(2, &[0])), Cost::int(1));
        let (v, x) = minimize(&spec).unwrap();
        assert_eq!((v, x), (Cost::int(1), set(2, &[0])));
        let l = to_lattice(&spec).unwrap();
        assert_eq!(l.u0(), &set(2, &[0]));
        assert_eq!(l.u_inf(), &set(2, &[1]));

        let mut g = DiGraph::new(3);
        g.add_edge(1, 0, Cost::Infinite).unwrap();
        g.add_edge(0, 2, Cost::Infinite).unwrap();
        let spec = FunctionSpec::Cut(CutFunction::new(1, g).unwrap());
        assert_eq!(to_lattice(&spec), Err(Error::InfiniteCut));
    }
}
