//! Seeded generators for random functions and instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cost::Cost;
use crate::error::Result;
use crate::flow::DiGraph;
use crate::lattice::{self, CompactLattice};
use crate::solvers::Instance;
use crate::submod::{self, CutFunction, ExplicitFamily, FunctionSpec};
use crate::subset::Subset;

pub type Rand = ChaCha8Rng;

pub fn rng(seed: u64) -> Rand {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random cut function with integer costs in `0..=max_cost`; each present
/// edge is infinite with probability `inf_prob`. Retries until the minimum
/// is finite.
pub fn cut_function(rng: &mut Rand, n: usize, edge_prob: f64, max_cost: i128, inf_prob: f64) -> CutFunction {
    loop {
        let mut g = DiGraph::new(n + 2);
        for u in 0..n + 2 {
            for v in 0..n + 2 {
                if u == v || u == n + 1 || v == n || !rng.gen_bool(edge_prob) {
                    continue;
                }
                let cost = if rng.gen_bool(inf_prob) {
                    Cost::Infinite
                } else {
                    Cost::int(rng.gen_range(0..=max_cost))
                };
                g.add_edge(u, v, cost).expect("valid random edge");
            }
        }
        let f = CutFunction::new(n, g).expect("sized graph");
        if submod::minimize(&FunctionSpec::Cut(f.clone())).is_ok_and(|(v, _)| !v.is_infinite()) {
            return f;
        }
    }
}

/// Random compact lattice: a random partition and a random DAG on it.
pub fn lattice(rng: &mut Rand, n: usize) -> CompactLattice {
    let max_blocks = n.min(4);
    let num_blocks = if max_blocks == 0 { 0 } else { rng.gen_range(0..=max_blocks) };
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut u0 = Subset::empty(n);
    let mut u_inf = Subset::empty(n);
    let mut blocks = vec![Subset::empty(n); num_blocks];
    for (pos, &v) in order.iter().enumerate() {
        if pos < num_blocks {
            blocks[pos].insert(v);
            continue;
        }
        match rng.gen_range(0..4) {
            0 => u0.insert(v),
            1 => u_inf.insert(v),
            _ if num_blocks > 0 => {
                let b = rng.gen_range(0..num_blocks);
                blocks[b].insert(v)
            }
            _ => u0.insert(v),
        }
    }
    let mut dag = Vec::new();
    for i in 1..=num_blocks {
        let mut has_out = false;
        for j in 0..i {
            if rng.gen_bool(0.35) {
                dag.push((i, j));
                has_out = true;
            }
        }
        if !has_out {
            dag.push((i, rng.gen_range(0..i)));
        }
    }
    CompactLattice::new(n, u0, blocks, u_inf, dag).expect("valid random lattice")
}

pub fn explicit_family(rng: &mut Rand, n: usize) -> ExplicitFamily {
    let l = lattice(rng, n);
    let members = lattice::enumerate_members(&l, usize::MAX).expect("no cap");
    ExplicitFamily::new(n, members).expect("members of a lattice are closed")
}

/// A cut, explicit or lattice function with equal probability.
pub fn function(rng: &mut Rand, n: usize) -> FunctionSpec {
    match rng.gen_range(0..3) {
        0 => FunctionSpec::Cut(cut_function(rng, n, 0.3, 5, 0.1)),
        1 => FunctionSpec::Explicit(explicit_family(rng, n)),
        _ => FunctionSpec::Lattice(lattice(rng, n)),
    }
}

/// Mixed-kind instance; with probability `per_function_prob` thresholds
/// are drawn per function from `0..=d`.
pub fn instance(rng: &mut Rand, n: usize, k: usize, d: usize, per_function_prob: f64) -> Result<Instance> {
    let functions = (0..k).map(|_| function(rng, n)).collect();
    let per = rng
        .gen_bool(per_function_prob)
        .then(|| (0..k).map(|_| rng.gen_range(0..=d)).collect());
    Instance::new((0..n).map(|i| format!("v{i}")).collect(), functions, d, per)
}

pub fn subset(rng: &mut Rand, n: usize) -> Subset {
    Subset::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)))
}
