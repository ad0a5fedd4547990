//! Multi-budgeted directed cut: the combined graph, elimination of forbidden
//! edges and a bounded search tree over shortest paths.

use std::collections::{HashSet, VecDeque};

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::flow::{self, DiGraph};
use crate::lattice::{add_expansion_edges, is_member};
use crate::stats;
use crate::subset::Subset;

use super::{Instance, Outcome, Solution, Witness};

/// A cut `X` (source in, sink out) is feasible when it leaves no forbidden
/// edge and at most `budgets[c]` edges of each class `c`. Edges with no class
/// that are not forbidden may be cut freely. Edge costs are ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MbdcInstance {
    pub graph: DiGraph,
    pub source: usize,
    pub sink: usize,
    pub class: Vec<Option<usize>>,
    pub forbidden: Vec<bool>,
    pub budgets: Vec<usize>,
}

impl MbdcInstance {
    /// Whether the cut with source side `side` meets every constraint.
    pub fn is_feasible_cut(&self, side: &Subset) -> bool {
        if !side.contains(self.source) || side.contains(self.sink) {
            return false;
        }
        let mut used = vec![0usize; self.budgets.len()];
        for (i, e) in self.graph.edges().iter().enumerate() {
            if side.contains(e.tail) && !side.contains(e.head) {
                if self.forbidden[i] {
                    return false;
                }
                if let Some(c) = self.class[i] {
                    used[c] += 1;
                }
            }
        }
        used.iter().zip(&self.budgets).all(|(u, b)| u <= b)
    }
}

/// Vertex layout: copy `i` of element `v` is `i * n + v`, the free copy `v*`
/// is `k * n + v`, then the source and the sink. Expansion edges are
/// forbidden; the links between `v*` and `v^i` form class `i`.
pub fn build_mbdc(inst: &Instance) -> Result<MbdcInstance> {
    let (n, k) = (inst.n(), inst.k());
    let lattices = inst.lattices()?;
    let (s, t) = ((k + 1) * n, (k + 1) * n + 1);
    let mut graph = DiGraph::new((k + 1) * n + 2);
    let mut class = Vec::new();
    let mut forbidden = Vec::new();
    for (i, l) in lattices.iter().enumerate() {
        let before = graph.edges().len();
        add_expansion_edges(l, &mut graph, i * n, s, t);
        let added = graph.edges().len() - before;
        class.extend(std::iter::repeat_n(None, added));
        forbidden.extend(std::iter::repeat_n(true, added));
    }
    for i in 0..k {
        for v in 0..n {
            graph.add_pair(k * n + v, i * n + v, Cost::ONE)?;
            class.extend([Some(i), Some(i)]);
            forbidden.extend([false, false]);
        }
    }
    Ok(MbdcInstance {
        graph,
        source: s,
        sink: t,
        class,
        forbidden,
        budgets: inst.thresholds(),
    })
}

/// Replaces each forbidden edge of class `c` by `budgets[c] + 1` parallel
/// copies; forbidden edges without a class go to a new class of budget 1
/// and are doubled.
pub fn eliminate_forbidden(m: &MbdcInstance) -> MbdcInstance {
    let extra = m.budgets.len();
    let needs_extra = m
        .class
        .iter()
        .zip(&m.forbidden)
        .any(|(c, &f)| f && c.is_none());
    let mut graph = DiGraph::new(m.graph.num_vertices());
    let mut class = Vec::new();
    for (i, e) in m.graph.edges().iter().enumerate() {
        let (copies, c) = match (m.forbidden[i], m.class[i]) {
            (false, c) => (1, c),
            (true, Some(c)) => (m.budgets[c] + 1, Some(c)),
            (true, None) => (2, Some(extra)),
        };
        for _ in 0..copies {
            graph
                .add_edge(e.tail, e.head, e.cost)
                .expect("copy of a valid edge");
            class.push(c);
        }
    }
    let mut budgets = m.budgets.clone();
    if needs_extra {
        budgets.push(1);
    }
    MbdcInstance {
        forbidden: vec![false; class.len()],
        graph,
        source: m.source,
        sink: m.sink,
        class,
        budgets,
    }
}

/// Source side of a feasible cut, or `None`.
///
/// The search keeps a set of vertices known to lie on the source side and a
/// set of cut edges. While the sink is reachable, a shortest path from the
/// known side is taken; some edge on it is the first to leave the solution,
/// so the search branches on that edge and moves the path prefix before it
/// to the source side. Branches whose unit-capacity flow bound exceeds the
/// remaining budget are pruned.
pub fn solve_mbdc(m: &MbdcInstance) -> Result<Option<Subset>> {
    let nv = m.graph.num_vertices();
    if m.source >= nv || m.sink >= nv || m.source == m.sink {
        return Err(Error::MissingTerminal);
    }
    let mut out_edges = vec![Vec::new(); nv];
    for (i, e) in m.graph.edges().iter().enumerate() {
        out_edges[e.tail].push(i);
    }
    let mut search = Search {
        m,
        out_edges,
        failed: HashSet::new(),
    };
    let mut known = Subset::empty(nv);
    known.insert(m.source);
    let cut = Subset::empty(m.graph.edges().len());
    let side = search.run(known, cut, m.budgets.clone())?;
    if let Some(side) = &side {
        if !m.is_feasible_cut(side) {
            return Err(Error::Internal("search returned an infeasible cut".into()));
        }
    }
    Ok(side)
}

struct Search<'a> {
    m: &'a MbdcInstance,
    out_edges: Vec<Vec<usize>>,
    failed: HashSet<(Subset, Subset)>,
}

impl Search<'_> {
    fn cuttable(&self, e: usize, remaining: &[usize]) -> bool {
        !self.m.forbidden[e] && self.m.class[e].is_none_or(|c| remaining[c] > 0)
    }

    /// Breadth-first search from `known` avoiding cut edges. Returns the
    /// reached set and, if the sink was reached, the edges of a shortest path.
    fn bfs(&self, known: &Subset, cut: &Subset) -> (Subset, Option<Vec<usize>>) {
        let nv = self.m.graph.num_vertices();
        let mut seen = known.clone();
        let mut parent: Vec<Option<usize>> = vec![None; nv];
        let mut queue: VecDeque<usize> = known.iter().collect();
        while let Some(u) = queue.pop_front() {
            for &e in &self.out_edges[u] {
                if cut.contains(e) {
                    continue;
                }
                let v = self.m.graph.edges()[e].head;
                if !seen.contains(v) {
                    seen.insert(v);
                    parent[v] = Some(e);
                    if v == self.m.sink {
                        let mut path = Vec::new();
                        let mut w = v;
                        while let Some(pe) = parent[w] {
                            path.push(pe);
                            w = self.m.graph.edges()[pe].tail;
                        }
                        path.reverse();
                        return (seen, Some(path));
                    }
                    queue.push_back(v);
                }
            }
        }
        (seen, None)
    }

    /// Minimum number of budgeted edges any completion still has to cut.
    /// Free edges are left out, cut edges dropped, uncuttable ones infinite.
    fn lower_bound(&self, known: &Subset, cut: &Subset, remaining: &[usize]) -> Result<Cost> {
        let nv = self.m.graph.num_vertices();
        let hub = nv;
        let mut g = DiGraph::new(nv + 1);
        for (i, e) in self.m.graph.edges().iter().enumerate() {
            if cut.contains(i) || (!self.m.forbidden[i] && self.m.class[i].is_none()) {
                continue;
            }
            let cap = if self.cuttable(i, remaining) {
                Cost::ONE
            } else {
                Cost::Infinite
            };
            g.add_edge(e.tail, e.head, cap)?;
        }
        for v in known.iter() {
            g.add_edge(hub, v, Cost::Infinite)?;
        }
        Ok(flow::max_flow(&g, hub, self.m.sink)?.value)
    }

    fn run(&mut self, known: Subset, cut: Subset, remaining: Vec<usize>) -> Result<Option<Subset>> {
        stats::count_branch();
        let key = (known, cut);
        if self.failed.contains(&key) {
            return Ok(None);
        }
        let (known, cut) = key;
        let (reached, path) = self.bfs(&known, &cut);
        let Some(path) = path else {
            return Ok(Some(reached));
        };
        let slack: usize = remaining.iter().sum();
        if self.lower_bound(&known, &cut, &remaining)? > Cost::int(slack as i128) {
            self.failed.insert((known, cut));
            return Ok(None);
        }
        let mut prefix = known.clone();
        for &e in &path {
            if self.cuttable(e, &remaining) {
                let mut next_cut = cut.clone();
                next_cut.insert(e);
                let mut next_remaining = remaining.clone();
                if let Some(c) = self.m.class[e] {
                    next_remaining[c] -= 1;
                }
                if let Some(side) = self.run(prefix.clone(), next_cut, next_remaining)? {
                    return Ok(Some(side));
                }
            }
            let head = self.m.graph.edges()[e].head;
            if head != self.m.sink {
                prefix.insert(head);
            }
        }
        self.failed.insert((known, cut));
        Ok(None)
    }
}

/// Full pipeline: combined graph, forbidden-edge elimination, search, and
/// read-back of `X` from the free copies and witnesses from copy `i`.
pub fn solve_fpt_kd(inst: &Instance) -> Result<Outcome> {
    let (n, k) = (inst.n(), inst.k());
    let lattices = inst.lattices()?;
    let thresholds = inst.thresholds();
    let m = eliminate_forbidden(&build_mbdc(inst)?);
    let Some(side) = solve_mbdc(&m)? else {
        return Ok(Outcome::Infeasible);
    };
    let x = Subset::from_indices(n, (0..n).filter(|&v| side.contains(k * n + v)));
    let mut witnesses = Vec::with_capacity(k);
    for (i, l) in lattices.iter().enumerate() {
        let y = Subset::from_indices(n, (0..n).filter(|&v| side.contains(i * n + v)));
        let distance = x.distance(&y);
        if !is_member(l, &y) || distance > thresholds[i] {
            return Err(Error::Internal(format!("cut does not certify function {i}")));
        }
        witnesses.push(Witness { y, distance });
    }
    Ok(Outcome::Feasible(Solution { x, witnesses }))
}
