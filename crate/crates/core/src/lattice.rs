//! Compact (Birkhoff) representation of a lattice of sets and the queries
//! built on it: membership, enumeration, the expansion graph and distances.

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::flow::{self, DiGraph};
use crate::subset::Subset;

/// A family of subsets of `{0, .., n-1}` closed under union and intersection.
///
/// The ground set is split into `U0`, non-empty blocks `U1..Ub` and `Uinf`.
/// DAG node `0` is `U0` and node `i` is `blocks[i-1]`. Members are exactly
/// the sets `U0 ∪ (union of the blocks in Z)` where `Z` is closed under
/// successors. `U0` is the unique sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactLattice {
    n: usize,
    u0: Subset,
    blocks: Vec<Subset>,
    u_inf: Subset,
    dag: Vec<(usize, usize)>,
}

impl CompactLattice {
    /// Validates the parts and DAG, then orders blocks by smallest element.
    pub fn new(
        n: usize,
        u0: Subset,
        blocks: Vec<Subset>,
        u_inf: Subset,
        dag: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidLattice(msg));
        let parts = std::iter::once(&u0).chain(&blocks).chain(std::iter::once(&u_inf));
        let mut seen = Subset::empty(n);
        for p in parts {
            if p.universe_len() != n {
                return bad("part over a different ground set".into());
            }
            if !seen.is_disjoint(p) {
                return bad("parts overlap".into());
            }
            seen = seen.union(p);
        }
        if seen.count() != n {
            return bad("parts do not cover the ground set".into());
        }
        if blocks.iter().any(Subset::is_empty) {
            return bad("empty block".into());
        }
        let b = blocks.len();
        for &(x, y) in &dag {
            if x > b || y > b {
                return bad(format!("DAG edge ({x}, {y}) out of range"));
            }
            if x == y {
                return bad(format!("DAG self-loop at {x}"));
            }
            if x == 0 {
                return bad("U0 must be a sink".into());
            }
        }
        for i in 1..=b {
            if !dag.iter().any(|&(x, _)| x == i) {
                return bad(format!("block {i} is a sink; U0 must be the only one"));
            }
        }
        if topological_order(b + 1, &dag).is_none() {
            return bad("DAG has a cycle".into());
        }

        let mut order: Vec<usize> = (0..b).collect();
        order.sort_by_key(|&i| blocks[i].iter().next());
        let mut new_index = vec![0; b + 1];
        for (pos, &old) in order.iter().enumerate() {
            new_index[old + 1] = pos + 1;
        }
        let blocks = order.iter().map(|&i| blocks[i].clone()).collect();
        let mut dag: Vec<(usize, usize)> =
            dag.iter().map(|&(x, y)| (new_index[x], new_index[y])).collect();
        dag.sort_unstable();
        dag.dedup();
        Ok(CompactLattice {
            n,
            u0,
            blocks,
            u_inf,
            dag,
        })
    }

    /// The lattice whose only member is `set`.
    pub fn singleton(set: &Subset) -> Self {
        let n = set.universe_len();
        CompactLattice {
            n,
            u0: set.clone(),
            blocks: Vec::new(),
            u_inf: set.complement(),
            dag: Vec::new(),
        }
    }

    pub fn universe_len(&self) -> usize {
        self.n
    }

    pub fn u0(&self) -> &Subset {
        &self.u0
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    pub fn u_inf(&self) -> &Subset {
        &self.u_inf
    }

    pub fn dag(&self) -> &[(usize, usize)] {
        &self.dag
    }

    /// DAG node `i` as a set (`0` is `U0`).
    pub fn node(&self, i: usize) -> &Subset {
        if i == 0 {
            &self.u0
        } else {
            &self.blocks[i - 1]
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.blocks.len() + 1
    }

    /// The smallest member, `U0`.
    pub fn minimum(&self) -> &Subset {
        &self.u0
    }

    pub fn maximum(&self) -> Subset {
        self.u_inf.complement()
    }
}

/// Nodes ordered so that every edge goes from a later to an earlier node
/// (successors first). `None` if the graph has a cycle.
fn topological_order(num_nodes: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut outdeg = vec![0usize; num_nodes];
    let mut preds = vec![Vec::new(); num_nodes];
    for &(x, y) in edges {
        outdeg[x] += 1;
        preds[y].push(x);
    }
    let mut ready: Vec<usize> = (0..num_nodes).filter(|&i| outdeg[i] == 0).collect();
    ready.reverse();
    let mut order = Vec::with_capacity(num_nodes);
    while let Some(v) = ready.pop() {
        order.push(v);
        for &p in &preds[v] {
            outdeg[p] -= 1;
            if outdeg[p] == 0 {
                ready.push(p);
            }
        }
    }
    (order.len() == num_nodes).then_some(order)
}

pub fn is_member(l: &CompactLattice, y: &Subset) -> bool {
    if !l.u0.is_subset(y) || !l.u_inf.is_disjoint(y) {
        return false;
    }
    let mut included = vec![true; l.num_nodes()];
    for (i, block) in l.blocks.iter().enumerate() {
        if block.is_subset(y) {
            included[i + 1] = true;
        } else if block.is_disjoint(y) {
            included[i + 1] = false;
        } else {
            return false;
        }
    }
    l.dag.iter().all(|&(x, z)| !included[x] || included[z])
}

/// All members in canonical order, or `CapExceeded` if there are more than `cap`.
pub fn enumerate_members(l: &CompactLattice, cap: usize) -> Result<Vec<Subset>> {
    let order = topological_order(l.num_nodes(), &l.dag).expect("validated DAG");
    let mut succ = vec![Vec::new(); l.num_nodes()];
    for &(x, y) in &l.dag {
        succ[x].push(y);
    }
    let mut out = Vec::new();
    let mut included = vec![false; l.num_nodes()];
    included[0] = true;
    let mut current = l.u0.clone();
    let ctx = EnumCtx {
        l,
        order: &order,
        succ: &succ,
        cap,
    };
    ctx.go(1, &mut included, &mut current, &mut out)?;
    out.sort();
    Ok(out)
}

struct EnumCtx<'a> {
    l: &'a CompactLattice,
    order: &'a [usize],
    succ: &'a [Vec<usize>],
    cap: usize,
}

impl EnumCtx<'_> {
    fn go(
        &self,
        pos: usize,
        included: &mut [bool],
        current: &mut Subset,
        out: &mut Vec<Subset>,
    ) -> Result<()> {
        if pos == self.order.len() {
            if out.len() >= self.cap {
                return Err(Error::CapExceeded { cap: self.cap });
            }
            out.push(current.clone());
            return Ok(());
        }
        let node = self.order[pos];
        self.go(pos + 1, included, current, out)?;
        if self.succ[node].iter().all(|&y| included[y]) {
            included[node] = true;
            let saved = current.clone();
            *current = current.union(self.l.node(node));
            self.go(pos + 1, included, current, out)?;
            *current = saved;
            included[node] = false;
        }
        Ok(())
    }
}

/// Number of members, saturating at `cap + 1`.
pub fn count_members(l: &CompactLattice, cap: usize) -> usize {
    match enumerate_members(l, cap) {
        Ok(m) => m.len(),
        Err(_) => cap.saturating_add(1),
    }
}

/// Expansion graph with all structural edges infinite. Vertex `i < n` is the
/// copy of element `i`, vertex `n` is the source and `n + 1` the sink.
#[derive(Debug, Clone)]
pub struct ExpandedGraph {
    pub graph: DiGraph,
    pub source: usize,
    pub sink: usize,
}

pub fn expand_graph(l: &CompactLattice) -> ExpandedGraph {
    let n = l.n;
    let mut g = DiGraph::new(n + 2);
    add_expansion_edges(l, &mut g, 0, n, n + 1);
    ExpandedGraph {
        graph: g,
        source: n,
        sink: n + 1,
    }
}

/// Adds the infinite expansion edges of `l` to `g`, with element `v` mapped
/// to vertex `offset + v`.
pub(crate) fn add_expansion_edges(
    l: &CompactLattice,
    g: &mut DiGraph,
    offset: usize,
    s: usize,
    t: usize,
) {
    let inf = Cost::Infinite;
    let add = |g: &mut DiGraph, u: usize, v: usize| {
        g.add_edge(u, v, inf).expect("expansion edge within range");
    };
    let parts = std::iter::once(&l.u0).chain(&l.blocks).chain(std::iter::once(&l.u_inf));
    for part in parts {
        for u in part.iter() {
            for v in part.iter() {
                if u != v {
                    add(g, offset + u, offset + v);
                }
            }
        }
    }
    for &(x, y) in &l.dag {
        for u in l.node(x).iter() {
            for v in l.node(y).iter() {
                add(g, offset + u, offset + v);
            }
        }
    }
    for u in l.u0.iter() {
        add(g, offset + u, s);
        add(g, s, offset + u);
    }
    for u in l.u_inf.iter() {
        add(g, offset + u, t);
        add(g, t, offset + u);
    }
}

/// `min_{Y in L} |Z △ Y|` together with the canonical nearest member.
pub fn gamma(l: &CompactLattice, z: &Subset) -> Result<(usize, Subset)> {
    let ExpandedGraph {
        mut graph,
        source,
        sink,
    } = expand_graph(l);
    for v in 0..l.n {
        if z.contains(v) {
            graph.add_edge(source, v, Cost::ONE)?;
        } else {
            graph.add_edge(v, sink, Cost::ONE)?;
        }
    }
    let cut = flow::minimum_cut(&graph, source, sink)?;
    let value = cut
        .value
        .finite()
        .filter(|r| r.is_integer())
        .ok_or_else(|| Error::Internal("non-integral distance".into()))?;
    let nearest = Subset::from_indices(l.n, cut.members.iter().filter(|&v| v < l.n));
    Ok((value.to_integer() as usize, nearest))
}
