//! Balanced minimum cuts.

use rand::Rng;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::flow::DiGraph;
use crate::random::Rand;
use crate::solvers::Instance;
use crate::submod::{CutFunction, ExplicitFamily, FunctionSpec};
use crate::subset::Subset;

/// Simple undirected graph on vertices `0..num_vertices` with terminals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalGraph {
    num_vertices: usize,
    s: usize,
    t: usize,
    edges: Vec<(usize, usize)>,
}

impl TerminalGraph {
    pub fn new(num_vertices: usize, s: usize, t: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if s >= num_vertices || t >= num_vertices || s == t {
            return Err(Error::MissingTerminal);
        }
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &edges {
            if u >= num_vertices || v >= num_vertices || u == v {
                return Err(Error::InvalidGraph(format!("bad undirected edge {{{u}, {v}}}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("duplicate edge {{{u}, {v}}}")));
            }
        }
        Ok(TerminalGraph {
            num_vertices,
            s,
            t,
            edges,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn cut_size(&self, side: &Subset) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| side.contains(u) != side.contains(v))
            .count()
    }

    /// Source sides of all `s`-`t` cuts, by exhaustive enumeration.
    fn cuts(&self) -> impl Iterator<Item = Subset> + '_ {
        assert!(self.num_vertices <= 24, "too many vertices for exhaustive search");
        let n = self.num_vertices;
        (0..1u64 << n)
            .map(move |m| Subset::from_mask(n, m))
            .filter(|x| x.contains(self.s) && !x.contains(self.t))
    }

    pub fn min_cut_size(&self) -> usize {
        self.cuts().map(|x| self.cut_size(&x)).min().expect("some cut exists")
    }
}

/// Whether some minimum cut has exactly half of the vertices on each side.
pub fn perfectly_balanced_brute(g: &TerminalGraph) -> bool {
    if g.num_vertices % 2 == 1 {
        return false;
    }
    let best = g.min_cut_size();
    g.cuts()
        .any(|x| x.count() * 2 == g.num_vertices && g.cut_size(&x) == best)
}

/// Whether some minimum cut has at least `l` vertices on each side.
pub fn most_balanced_brute(g: &TerminalGraph, l: usize) -> bool {
    let best = g.min_cut_size();
    g.cuts().any(|x| {
        let side = x.count();
        side.min(g.num_vertices - side) >= l && g.cut_size(&x) == best
    })
}

/// Adds `|V| - 2l` isolated vertices, so that a most-balanced question
/// becomes a perfectly balanced one. `None` when `l > |V| / 2`, which no
/// cut can satisfy.
pub fn mostbalanced_to_perfect(g: &TerminalGraph, l: usize) -> Option<TerminalGraph> {
    if 2 * l > g.num_vertices {
        return None;
    }
    let extra = g.num_vertices - 2 * l;
    Some(
        TerminalGraph::new(g.num_vertices + extra, g.s, g.t, g.edges.clone())
            .expect("same edges on a larger vertex set"),
    )
}

/// Three functions over the non-terminal vertices `V` plus fresh `R` with
/// `|R| = |V| / 2`: the singletons `{V ∪ R}` and `{R}`, and the cut
/// function of the graph with an extra edge `r - t` per `r in R`; `d = |R|`.
pub fn balancedcut_to_rsm(g: &TerminalGraph) -> Result<Instance> {
    let inner: Vec<usize> = (0..g.num_vertices).filter(|&v| v != g.s && v != g.t).collect();
    if inner.len() % 2 == 1 {
        return Err(Error::Precondition(format!(
            "need an even number of non-terminal vertices, got {}",
            inner.len()
        )));
    }
    let half = inner.len() / 2;
    let n = inner.len() + half;
    let (s, t) = (n, n + 1);
    let vertex = |v: usize| {
        if v == g.s {
            s
        } else if v == g.t {
            t
        } else {
            inner.binary_search(&v).expect("inner vertex")
        }
    };
    let mut graph = DiGraph::new(n + 2);
    for &(u, v) in &g.edges {
        graph.add_pair(vertex(u), vertex(v), Cost::ONE)?;
    }
    for r in inner.len()..n {
        graph.add_pair(r, t, Cost::ONE)?;
    }
    let r_set = Subset::from_indices(n, inner.len()..n);
    let functions = vec![
        FunctionSpec::Explicit(ExplicitFamily::new(n, vec![Subset::full(n)])?),
        FunctionSpec::Explicit(ExplicitFamily::new(n, vec![r_set])?),
        FunctionSpec::Cut(CutFunction::new(n, graph)?),
    ];
    let mut names: Vec<String> = inner.iter().map(|v| format!("x{v}")).collect();
    names.extend((1..=half).map(|i| format!("r{i}")));
    Instance::new(names, functions, half, None)
}

/// `G(n, p)` with `s = 0` and `t = 1`.
pub fn random_terminal_graph(rng: &mut Rand, num_vertices: usize, p: f64) -> TerminalGraph {
    let mut edges = Vec::new();
    for u in 0..num_vertices {
        for v in u + 1..num_vertices {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    TerminalGraph::new(num_vertices, 0, 1, edges).expect("simple graph")
}
