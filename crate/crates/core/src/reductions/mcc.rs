//! Multicolored clique encoded as robust minimization with path lattices.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::lattice::CompactLattice;
use crate::random::Rand;
use crate::solvers::Instance;
use crate::submod::{ExplicitFamily, FunctionSpec};
use crate::subset::Subset;

/// A graph whose vertices carry one of `k` colors; edges join distinct colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    k: usize,
    color: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

impl ColoredGraph {
    pub fn new(k: usize, color: Vec<usize>, edges: Vec<(usize, usize)>) -> Result<Self> {
        if k < 3 {
            return Err(Error::Precondition("the clique encoding needs k >= 3".into()));
        }
        if let Some(v) = color.iter().position(|&c| c >= k) {
            return Err(Error::InvalidGraph(format!("vertex {v} has color outside 0..{k}")));
        }
        let mut seen = HashSet::new();
        for &(u, v) in &edges {
            if u >= color.len() || v >= color.len() {
                return Err(Error::InvalidGraph(format!("edge {{{u}, {v}}} references a missing vertex")));
            }
            if color[u] == color[v] {
                return Err(Error::InvalidGraph(format!("edge {{{u}, {v}}} inside one color class")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("duplicate edge {{{u}, {v}}}")));
            }
        }
        Ok(ColoredGraph { k, color, edges })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_vertices(&self) -> usize {
        self.color.len()
    }

    pub fn color(&self, v: usize) -> usize {
        self.color[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Number of edges from `v` to vertices of color `c`.
    pub fn degree_into(&self, v: usize, c: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| (a == v && self.color[b] == c) || (b == v && self.color[a] == c))
            .count()
    }

    /// Whether `vertices` holds one vertex per color, pairwise adjacent.
    pub fn is_multicolored_clique(&self, vertices: &[usize]) -> bool {
        let adjacent: HashSet<(usize, usize)> =
            self.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        let mut colors: Vec<usize> = vertices.iter().map(|&v| self.color[v]).collect();
        colors.sort_unstable();
        colors == (0..self.k).collect::<Vec<_>>()
            && vertices.iter().enumerate().all(|(a, &u)| {
                vertices[a + 1..].iter().all(|&v| adjacent.contains(&(u.min(v), u.max(v))))
            })
    }
}

/// Random colored graph with `n` vertices per color, a planted clique, and
/// up to `m` edges between each pair of colors. Returns the clique too.
pub fn planted_clique(rng: &mut Rand, k: usize, n: usize, m: usize) -> (ColoredGraph, Vec<usize>) {
    assert!(n >= 1 && m >= 1, "need at least one vertex per color and one edge per pair");
    let color: Vec<usize> = (0..k * n).map(|v| v / n).collect();
    let clique: Vec<usize> = (0..k).map(|i| i * n + rng.gen_range(0..n)).collect();
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let planted = (clique[i], clique[j]);
            let mut others: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (0..n).map(move |b| (i * n + a, j * n + b)))
                .filter(|&e| e != planted)
                .collect();
            others.shuffle(rng);
            let extra = rng.gen_range(0..m).min(others.len());
            edges.push(planted);
            edges.extend(others.into_iter().take(extra));
        }
    }
    let g = ColoredGraph::new(k, color, edges).expect("well-formed planted graph");
    (g, clique)
}

/// Encoded instance plus the positions needed to map cliques to sets.
#[derive(Debug, Clone)]
pub struct MccReduction {
    pub instance: Instance,
    /// Padded size of each color class.
    pub n: usize,
    /// Padded number of edges between each pair of colors.
    pub m: usize,
    layout: Layout,
    vertex_pos: Vec<usize>,
    edge_pos: Vec<usize>,
}

impl MccReduction {
    /// `R ∪ D ∪ V⁻ ∪ E⁻`, with the clique's vertices and edges moved from
    /// the minus copies to the plus copies.
    ///
    /// The incidence gadget for colors `(i, j)` sits at distance
    /// `d + deg - 1` from this set, where `deg` is the number of edges from
    /// the clique's `i`-vertex into color `j`. It is a solution only when
    /// every such degree is 1.
    pub fn certificate(&self, g: &ColoredGraph, clique: &[usize]) -> Subset {
        let lay = &self.layout;
        let mut x = lay.r().union(&lay.d_set()).union(&lay.v_minus()).union(&lay.e_minus());
        for &v in clique {
            let (i, h) = (g.color(v), self.vertex_pos[v]);
            x.insert(lay.vp(i, h));
            x.remove(lay.vm(i, h));
        }
        let in_clique: HashSet<usize> = clique.iter().copied().collect();
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if in_clique.contains(&u) && in_clique.contains(&v) {
                let p = lay.pair(g.color(u), g.color(v));
                x.insert(lay.ep(p, self.edge_pos[e]));
                x.remove(lay.em(p, self.edge_pos[e]));
            }
        }
        x
    }
}

#[derive(Debug, Clone)]
struct Layout {
    k: usize,
    n: usize,
    m: usize,
    pairs: Vec<(usize, usize)>,
}

impl Layout {
    fn big_n(&self) -> usize {
        self.k * self.n + self.pairs.len() * self.m
    }
    fn size(&self) -> usize {
        6 * self.big_n()
    }
    fn pair(&self, i: usize, j: usize) -> usize {
        let key = (i.min(j), i.max(j));
        self.pairs.iter().position(|&p| p == key).expect("pair of distinct colors")
    }
    fn vp(&self, i: usize, h: usize) -> usize {
        i * self.n + h
    }
    fn vm(&self, i: usize, h: usize) -> usize {
        self.k * self.n + i * self.n + h
    }
    fn ep(&self, p: usize, h: usize) -> usize {
        2 * self.k * self.n + p * self.m + h
    }
    fn em(&self, p: usize, h: usize) -> usize {
        2 * self.k * self.n + self.pairs.len() * self.m + p * self.m + h
    }
    fn block(&self, which: usize, len: usize) -> Subset {
        let start = 2 * self.big_n() + which * self.big_n();
        Subset::from_indices(self.size(), start..start + len)
    }
    fn r(&self) -> Subset {
        self.block(0, self.big_n())
    }
    fn r_prefix(&self, len: usize) -> Subset {
        self.block(0, len)
    }
    fn rp(&self) -> Subset {
        self.block(1, self.big_n())
    }
    fn rp_prefix(&self, len: usize) -> Subset {
        self.block(1, len)
    }
    fn d_set(&self) -> Subset {
        self.block(2, self.big_n())
    }
    fn dp(&self) -> Subset {
        self.block(3, self.big_n())
    }
    fn set(&self, items: impl IntoIterator<Item = usize>) -> Subset {
        Subset::from_indices(self.size(), items)
    }
    fn v_plus_of(&self, i: usize) -> Subset {
        self.set((0..self.n).map(|h| self.vp(i, h)))
    }
    fn v_minus_of(&self, i: usize) -> Subset {
        self.set((0..self.n).map(|h| self.vm(i, h)))
    }
    fn e_plus_of(&self, p: usize) -> Subset {
        self.set((0..self.m).map(|h| self.ep(p, h)))
    }
    fn e_minus_of(&self, p: usize) -> Subset {
        self.set((0..self.m).map(|h| self.em(p, h)))
    }
    fn v_plus(&self) -> Subset {
        self.set((0..self.k).flat_map(|i| (0..self.n).map(move |h| (i, h))).map(|(i, h)| self.vp(i, h)))
    }
    fn v_minus(&self) -> Subset {
        self.set((0..self.k).flat_map(|i| (0..self.n).map(move |h| (i, h))).map(|(i, h)| self.vm(i, h)))
    }
    fn e_plus(&self) -> Subset {
        let pm = self.pairs.len() * self.m;
        self.set((0..pm).map(|x| self.ep(0, x)))
    }
    fn e_minus(&self) -> Subset {
        let pm = self.pairs.len() * self.m;
        self.set((0..pm).map(|x| self.em(0, x)))
    }
    fn names(&self) -> Vec<String> {
        let mut names = Vec::with_capacity(self.size());
        for sign in ["+", "-"] {
            for i in 0..self.k {
                for h in 0..self.n {
                    names.push(format!("v{sign}:{}:{}", i + 1, h + 1));
                }
            }
        }
        for sign in ["+", "-"] {
            for &(i, j) in &self.pairs {
                for h in 0..self.m {
                    names.push(format!("e{sign}:{}-{}:{}", i + 1, j + 1, h + 1));
                }
            }
        }
        for prefix in ["r", "r'", "d", "d'"] {
            for h in 0..self.big_n() {
                names.push(format!("{prefix}:{}", h + 1));
            }
        }
        names
    }
}

/// Path lattice `U0 <- B1 <- ... <- Bb` with the given sink-side set.
fn path(n: usize, u0: Subset, blocks: Vec<Subset>, u_inf: Subset) -> Result<CompactLattice> {
    let dag = (1..=blocks.len()).map(|h| (h, h - 1)).collect();
    CompactLattice::new(n, u0, blocks, u_inf, dag)
}

fn union_all(sets: &[&Subset]) -> Subset {
    let mut out = sets[0].clone();
    for s in &sets[1..] {
        out = out.union(s);
    }
    out
}

/// Encodes a colored graph; `k' = k + k(k-1)/2` and `d = 2(|V| + |E|)`
/// after padding.
///
/// Classes are padded to a common size and pairs to a common edge count,
/// first with matching edges on fresh vertices and then with isolated
/// vertices. Isolated vertices are added further if one of the prefixes
/// of `R'` used by the gadgets would have negative length.
pub fn mcc_to_rsm(g: &ColoredGraph) -> Result<MccReduction> {
    let k = g.k();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let mut color = g.color.clone();
    let mut pair_edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); pairs.len()];
    let mut edge_pos = Vec::with_capacity(g.edges.len());
    for &(u, v) in &g.edges {
        let (u, v) = if color[u] < color[v] { (u, v) } else { (v, u) };
        let p = pairs.iter().position(|&p| p == (color[u], color[v])).expect("distinct colors");
        edge_pos.push(pair_edges[p].len());
        pair_edges[p].push((u, v));
    }
    let m = pair_edges.iter().map(Vec::len).max().unwrap_or(0).max(1);
    for (p, &(i, j)) in pairs.iter().enumerate() {
        while pair_edges[p].len() < m {
            let (a, b) = (color.len(), color.len() + 1);
            color.extend([i, j]);
            pair_edges[p].push((a, b));
        }
    }
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (v, &c) in color.iter().enumerate() {
        members[c].push(v);
    }
    let mut n = members.iter().map(Vec::len).max().unwrap_or(1).max(1);
    let kp = (k + pairs.len()) as i64;
    let prefixes = |n: usize| {
        let half = (k * n + pairs.len() * m) as i64;
        let (n, m) = (n as i64, m as i64);
        [half - n - 2 * kp + 2, half - m - 2 * kp + 2, half - m - n - 2 * kp + 6]
    };
    while prefixes(n).iter().any(|&x| x < 0) {
        n += 1;
    }
    let [a, b, c] = prefixes(n).map(|x| x as usize);
    let mut vertex_pos = vec![0; color.len()];
    for list in &members {
        for (h, &v) in list.iter().enumerate() {
            vertex_pos[v] = h;
        }
    }

    let lay = Layout { k, n, m, pairs: pairs.clone() };
    let size = lay.size();
    let big_n = lay.big_n();
    let kp = kp as usize;
    let (r, rp, dd, ddp) = (lay.r(), lay.rp(), lay.d_set(), lay.dp());
    let (vp, vm, ep, em) = (lay.v_plus(), lay.v_minus(), lay.e_plus(), lay.e_minus());
    let single = |y: Subset| -> Result<FunctionSpec> {
        Ok(FunctionSpec::Explicit(ExplicitFamily::new(size, vec![y])?))
    };

    let mut functions = vec![
        single(union_all(&[&r, &vp, &vm, &ep, &em, &dd, &ddp]))?,
        single(r.clone())?,
        single(union_all(&[&r, &rp, &vp, &vm, &ep, &em, &dd]))?,
        single(union_all(&[&r, &rp, &dd]))?,
        single(union_all(&[&lay.r_prefix(kp), &rp.difference(&lay.rp_prefix(kp)), &vm, &em, &dd]))?,
    ];

    for i in 0..k {
        let (vp_i, vm_i) = (lay.v_plus_of(i), lay.v_minus_of(i));
        let rest_minus = vm.difference(&vm_i);
        functions.push(single(union_all(&[&lay.rp_prefix(a), &vp_i, &vm, &em, &dd]))?);
        functions.push(single(union_all(&[&lay.rp_prefix(a), &rest_minus, &em, &dd]))?);
        let base0 = union_all(&[&lay.rp_prefix(a + 1), &rest_minus, &em, &dd]);
        let base_inf = union_all(&[&r, &rp.difference(&lay.rp_prefix(a + 1)), &vp.difference(&vp_i), &ep, &ddp]);
        let mut u0 = base0.clone();
        u0.insert(lay.vp(i, 0));
        let blocks = (0..n - 1).map(|h| lay.set([lay.vp(i, h + 1), lay.vm(i, h)])).collect();
        let mut u_inf = base_inf.clone();
        u_inf.insert(lay.vm(i, n - 1));
        functions.push(FunctionSpec::Lattice(path(size, u0, blocks, u_inf)?));
        let mut u0 = base0;
        u0.insert(lay.vp(i, n - 1));
        let blocks = (1..n).rev().map(|h| lay.set([lay.vp(i, h - 1), lay.vm(i, h)])).collect();
        let mut u_inf = base_inf;
        u_inf.insert(lay.vm(i, 0));
        functions.push(FunctionSpec::Lattice(path(size, u0, blocks, u_inf)?));
    }

    for p in 0..pairs.len() {
        let (ep_p, em_p) = (lay.e_plus_of(p), lay.e_minus_of(p));
        let rest_minus = em.difference(&em_p);
        functions.push(single(union_all(&[&lay.rp_prefix(b), &ep_p, &vm, &em, &dd]))?);
        functions.push(single(union_all(&[&lay.rp_prefix(b), &vm, &rest_minus, &dd]))?);
        let base0 = union_all(&[&lay.rp_prefix(b + 1), &vm, &rest_minus, &dd]);
        let base_inf = union_all(&[&r, &rp.difference(&lay.rp_prefix(b + 1)), &vp, &ep.difference(&ep_p), &ddp]);
        let mut u0 = base0.clone();
        u0.insert(lay.ep(p, 0));
        let blocks = (0..m - 1).map(|h| lay.set([lay.ep(p, h + 1), lay.em(p, h)])).collect();
        let mut u_inf = base_inf.clone();
        u_inf.insert(lay.em(p, m - 1));
        functions.push(FunctionSpec::Lattice(path(size, u0, blocks, u_inf)?));
        let mut u0 = base0;
        u0.insert(lay.ep(p, m - 1));
        let blocks = (1..m).rev().map(|h| lay.set([lay.ep(p, h - 1), lay.em(p, h)])).collect();
        let mut u_inf = base_inf;
        u_inf.insert(lay.em(p, 0));
        functions.push(FunctionSpec::Lattice(path(size, u0, blocks, u_inf)?));
    }

    for i in 0..k {
        for j in (0..k).filter(|&j| j != i) {
            let p = lay.pair(i, j);
            // Edges of the pair incident to the h-th vertex of class i.
            let incident = |h: usize, plus: bool| -> Subset {
                let v = members[i].get(h).copied();
                lay.set(pair_edges[p].iter().enumerate().filter_map(|(x, &(a, b))| {
                    let touches = v.is_some_and(|v| a == v || b == v);
                    touches.then(|| if plus { lay.ep(p, x) } else { lay.em(p, x) })
                }))
            };
            let (vp_i, vm_i) = (lay.v_plus_of(i), lay.v_minus_of(i));
            let (ep_p, em_p) = (lay.e_plus_of(p), lay.e_minus_of(p));
            let mut u0 = union_all(&[&lay.rp_prefix(c), &vm.difference(&vm_i), &em.difference(&em_p), &dd, &incident(0, true)]);
            u0.insert(lay.vp(i, 0));
            let blocks = (0..n - 1)
                .map(|h| {
                    let mut blk = incident(h + 1, true).union(&incident(h, false));
                    blk.insert(lay.vp(i, h + 1));
                    blk.insert(lay.vm(i, h));
                    blk
                })
                .collect();
            let mut u_inf = union_all(&[
                &incident(n - 1, false),
                &r,
                &rp.difference(&lay.rp_prefix(c)),
                &vp.difference(&vp_i),
                &ep.difference(&ep_p),
                &ddp,
            ]);
            u_inf.insert(lay.vm(i, n - 1));
            functions.push(FunctionSpec::Lattice(path(size, u0, blocks, u_inf)?));
        }
    }

    debug_assert_eq!(functions.len(), 5 + 4 * k + 4 * pairs.len() + k * (k - 1));
    let instance = Instance::new(lay.names(), functions, 2 * big_n, None)?;
    Ok(MccReduction {
        instance,
        n,
        m,
        layout: lay,
        vertex_pos,
        edge_pos,
    })
}
