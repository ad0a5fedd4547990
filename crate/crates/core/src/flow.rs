//! Exact max flow (Dinic), minimal minimum cuts and the residual-graph
//! condensation that describes every minimum cut at once.

use std::collections::VecDeque;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::lattice::CompactLattice;
use crate::stats;
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub cost: Cost,
}

/// A directed multigraph on vertices `0..num_vertices`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiGraph {
    num_vertices: usize,
    edges: Vec<Edge>,
}

impl DiGraph {
    pub fn new(num_vertices: usize) -> Self {
        DiGraph {
            num_vertices,
            edges: Vec::new(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn add_edge(&mut self, tail: usize, head: usize, cost: Cost) -> Result<()> {
        if tail >= self.num_vertices || head >= self.num_vertices {
            return Err(Error::InvalidGraph(format!(
                "edge ({tail}, {head}) references a missing vertex"
            )));
        }
        if tail == head {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {tail}")));
        }
        if cost.is_negative() {
            return Err(Error::InvalidGraph(format!("negative cost on edge ({tail}, {head})")));
        }
        self.edges.push(Edge { tail, head, cost });
        Ok(())
    }

    /// Adds edges in both directions.
    pub fn add_pair(&mut self, u: usize, v: usize, cost: Cost) -> Result<()> {
        self.add_edge(u, v, cost)?;
        self.add_edge(v, u, cost)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_vertices];
        for e in &self.edges {
            adj[e.tail].push(e.head);
        }
        adj
    }

    /// Total cost of the edges leaving `side`.
    pub fn cut_value(&self, side: &Subset) -> Cost {
        self.edges
            .iter()
            .filter(|e| side.contains(e.tail) && !side.contains(e.head))
            .map(|e| e.cost)
            .sum()
    }
}

/// Vertices reachable from any of `sources` along the edges of `g`.
pub fn reachable(g: &DiGraph, sources: &[usize]) -> Subset {
    search(&g.adjacency(), g.num_vertices(), sources)
}

fn search(adj: &[Vec<usize>], n: usize, sources: &[usize]) -> Subset {
    let mut seen = Subset::empty(n);
    let mut stack: Vec<usize> = Vec::new();
    for &s in sources {
        if !seen.contains(s) {
            seen.insert(s);
            stack.push(s);
        }
    }
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen.contains(v) {
                seen.insert(v);
                stack.push(v);
            }
        }
    }
    seen
}

#[derive(Debug, Clone)]
pub struct MaxFlow {
    pub source: usize,
    pub sink: usize,
    pub value: Cost,
    /// Arcs with positive residual capacity, weighted by that capacity.
    pub residual: DiGraph,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSide {
    /// Source side of the cut, including the source itself.
    pub members: Subset,
    pub value: Cost,
}

struct Network {
    head: Vec<usize>,
    cap: Vec<Cost>,
    adj: Vec<Vec<usize>>,
    level: Vec<usize>,
    next: Vec<usize>,
}

impl Network {
    fn new(g: &DiGraph) -> Self {
        let mut net = Network {
            head: Vec::with_capacity(2 * g.edges.len()),
            cap: Vec::with_capacity(2 * g.edges.len()),
            adj: vec![Vec::new(); g.num_vertices],
            level: vec![0; g.num_vertices],
            next: vec![0; g.num_vertices],
        };
        for e in &g.edges {
            net.adj[e.tail].push(net.head.len());
            net.head.push(e.head);
            net.cap.push(e.cost);
            net.adj[e.head].push(net.head.len());
            net.head.push(e.tail);
            net.cap.push(Cost::ZERO);
        }
        net
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = usize::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u] {
                let v = self.head[a];
                if self.level[v] == usize::MAX && !self.cap[a].is_zero() {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        self.level[t] != usize::MAX
    }

    fn dfs(&mut self, u: usize, t: usize, limit: Cost) -> Cost {
        if u == t {
            return limit;
        }
        while self.next[u] < self.adj[u].len() {
            let a = self.adj[u][self.next[u]];
            let v = self.head[a];
            if !self.cap[a].is_zero() && self.level[v] == self.level[u] + 1 {
                let pushed = self.dfs(v, t, limit.min(self.cap[a]));
                if !pushed.is_zero() {
                    self.cap[a] = self.cap[a] - pushed;
                    self.cap[a ^ 1] = self.cap[a ^ 1] + pushed;
                    return pushed;
                }
            }
            self.next[u] += 1;
        }
        Cost::ZERO
    }

    fn residual(&self) -> DiGraph {
        let mut r = DiGraph::new(self.adj.len());
        for (a, &cap) in self.cap.iter().enumerate() {
            if !cap.is_zero() {
                r.edges.push(Edge {
                    tail: self.head[a ^ 1],
                    head: self.head[a],
                    cost: cap,
                });
            }
        }
        r
    }
}

/// Maximum `s`-`t` flow. The value is `Infinite` exactly when some `s`-`t`
/// path uses only infinite edges; the residual is then the input graph.
pub fn max_flow(g: &DiGraph, s: usize, t: usize) -> Result<MaxFlow> {
    let n = g.num_vertices();
    if s >= n || t >= n || s == t {
        return Err(Error::MissingTerminal);
    }
    stats::count_flow();
    let mut inf_only = DiGraph::new(n);
    inf_only.edges = g.edges.iter().filter(|e| e.cost.is_infinite()).cloned().collect();
    if reachable(&inf_only, &[s]).contains(t) {
        return Ok(MaxFlow {
            source: s,
            sink: t,
            value: Cost::Infinite,
            residual: g.clone(),
        });
    }
    let mut net = Network::new(g);
    let mut value = Cost::ZERO;
    while net.bfs(s, t) {
        net.next.iter_mut().for_each(|x| *x = 0);
        loop {
            let pushed = net.dfs(s, t, Cost::Infinite);
            if pushed.is_zero() {
                break;
            }
            value += pushed;
        }
    }
    Ok(MaxFlow {
        source: s,
        sink: t,
        value,
        residual: net.residual(),
    })
}

/// The minimal minimum cut: everything reachable from the source in the residual.
pub fn min_cut(flow: &MaxFlow) -> Result<CutSide> {
    if flow.value.is_infinite() {
        return Err(Error::InfiniteCut);
    }
    Ok(CutSide {
        members: reachable(&flow.residual, &[flow.source]),
        value: flow.value,
    })
}

/// Convenience wrapper: max flow followed by [`min_cut`].
pub fn minimum_cut(g: &DiGraph, s: usize, t: usize) -> Result<CutSide> {
    min_cut(&max_flow(g, s, t)?)
}

/// Describes the family of all minimum cuts as a compact lattice.
///
/// Ground elements are the vertices other than the terminals, numbered in
/// vertex order with the source and sink skipped.
pub fn residual_condensation(flow: &MaxFlow) -> Result<CompactLattice> {
    if flow.value.is_infinite() {
        return Err(Error::InfiniteCut);
    }
    let (s, t) = (flow.source, flow.sink);
    let nv = flow.residual.num_vertices();
    let element_of: Vec<Option<usize>> = {
        let mut next = 0;
        (0..nv)
            .map(|v| {
                if v == s || v == t {
                    None
                } else {
                    next += 1;
                    Some(next - 1)
                }
            })
            .collect()
    };
    let n = nv - 2;
    let adj = flow.residual.adjacency();
    let mut radj = vec![Vec::new(); nv];
    for (u, outs) in adj.iter().enumerate() {
        for &v in outs {
            radj[v].push(u);
        }
    }
    let from_s = search(&adj, nv, &[s]);
    let to_t = search(&radj, nv, &[t]);
    if from_s.contains(t) {
        return Err(Error::Internal("residual graph still has an augmenting path".into()));
    }

    let middle: Vec<bool> = (0..nv).map(|v| !from_s.contains(v) && !to_t.contains(v)).collect();
    let comp = strongly_connected(&adj, &middle);
    let num_comp = comp.iter().flatten().max().map_or(0, |&c| c + 1);

    let mut u0 = Subset::empty(n);
    let mut u_inf = Subset::empty(n);
    let mut blocks = vec![Subset::empty(n); num_comp];
    for v in 0..nv {
        let Some(e) = element_of[v] else { continue };
        if from_s.contains(v) {
            u0.insert(e);
        } else if to_t.contains(v) {
            u_inf.insert(e);
        } else {
            blocks[comp[v].expect("middle vertex has a component")].insert(e);
        }
    }

    // Component c becomes DAG node c + 1; node 0 is U0.
    let mut dag = Vec::new();
    for (u, outs) in adj.iter().enumerate() {
        let Some(cu) = comp[u] else { continue };
        for &v in outs {
            match comp[v] {
                Some(cv) if cv != cu => dag.push((cu + 1, cv + 1)),
                Some(_) => {}
                None if from_s.contains(v) => dag.push((cu + 1, 0)),
                None => {
                    return Err(Error::Internal(
                        "residual arc from a free block into the sink side".into(),
                    ))
                }
            }
        }
    }
    // Blocks with no outgoing arc are free; U0 is always present, so an edge
    // to it makes U0 the unique sink without changing the member family.
    for c in 0..num_comp {
        if !dag.iter().any(|&(a, _)| a == c + 1) {
            dag.push((c + 1, 0));
        }
    }
    CompactLattice::new(n, u0, blocks, u_inf, dag)
}

/// Component ids for the vertices flagged in `active`, restricted to arcs
/// between active vertices (iterative Kosaraju).
fn strongly_connected(adj: &[Vec<usize>], active: &[bool]) -> Vec<Option<usize>> {
    let n = adj.len();
    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    for root in 0..n {
        if !active[root] || visited[root] {
            continue;
        }
        visited[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (u, ref mut i)) = stack.last_mut() {
            if let Some(&v) = adj[u].get(*i) {
                *i += 1;
                if active[v] && !visited[v] {
                    visited[v] = true;
                    stack.push((v, 0));
                }
            } else {
                order.push(u);
                stack.pop();
            }
        }
    }
    let mut radj = vec![Vec::new(); n];
    for (u, outs) in adj.iter().enumerate() {
        if active[u] {
            for &v in outs {
                if active[v] {
                    radj[v].push(u);
                }
            }
        }
    }
    let mut comp = vec![None; n];
    let mut next = 0;
    for &root in order.iter().rev() {
        if comp[root].is_some() {
            continue;
        }
        comp[root] = Some(next);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &v in &radj[u] {
                if comp[v].is_none() {
                    comp[v] = Some(next);
                    stack.push(v);
                }
            }
        }
        next += 1;
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize, Cost)]) -> DiGraph {
        let mut g = DiGraph::new(n);
        for &(u, v, c) in edges {
            g.add_edge(u, v, c).unwrap();
        }
        g
    }

    #[test]
    fn small_flows() {
        // s=0, a=1, t=2
        let g = graph(3, &[(0, 1, Cost::int(3)), (1, 2, Cost::int(2))]);
        let cut = minimum_cut(&g, 0, 2).unwrap();
        assert_eq!(cut.value, Cost::int(2));
        assert_eq!(cut.members, Subset::from_indices(3, [0, 1]));

        let g = graph(2, &[(0, 1, Cost::Infinite)]);
        let f = max_flow(&g, 0, 1).unwrap();
        assert_eq!(f.value, Cost::Infinite);
        assert_eq!(min_cut(&f), Err(Error::InfiniteCut));

        let g = graph(3, &[(0, 1, Cost::int(1))]);
        let cut = minimum_cut(&g, 0, 2).unwrap();
        assert_eq!(cut.value, Cost::ZERO);
        assert_eq!(cut.members, Subset::from_indices(3, [0, 1]));
    }

    #[test]
    fn rejects_bad_input() {
        let mut g = DiGraph::new(2);
        assert!(g.add_edge(0, 0, Cost::ONE).is_err());
        assert!(g.add_edge(0, 2, Cost::ONE).is_err());
        assert!(g.add_edge(0, 1, Cost::int(-1)).is_err());
        assert_eq!(max_flow(&g, 0, 0).unwrap_err(), Error::MissingTerminal);
    }

    #[test]
    fn condensation_of_single_middle_vertex() {
        // a=0, s=1, t=2: both {} and {a} are minimum cuts.
        let g = graph(3, &[(1, 0, Cost::ONE), (0, 2, Cost::ONE)]);
        let l = residual_condensation(&max_flow(&g, 1, 2).unwrap()).unwrap();
        assert!(l.u0().is_empty());
        assert!(l.u_inf().is_empty());
        assert_eq!(l.blocks(), &[Subset::from_indices(1, [0])]);
        assert_eq!(l.dag(), &[(1, 0)]);
    }
}
