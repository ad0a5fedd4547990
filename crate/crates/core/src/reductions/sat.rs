//! Positive-or-negative 1-in-3 satisfiability and its encoding as robust
//! separation, plus threshold padding.

use rand::Rng;

use crate::error::{Error, Result};
use crate::random::Rand;
use crate::subset::Subset;

use super::rsep::RSepInstance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lit {
    pub var: usize,
    pub negated: bool,
}

/// Every clause has exactly three distinct literals; exactly one must be true.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    num_vars: usize,
    clauses: Vec<[Lit; 3]>,
}

impl Formula {
    pub fn new(num_vars: usize, clauses: Vec<[Lit; 3]>) -> Result<Self> {
        for (j, c) in clauses.iter().enumerate() {
            if c.iter().any(|l| l.var >= num_vars) {
                return Err(Error::InvalidInstance(format!("clause {j} uses an unknown variable")));
            }
            if c[0] == c[1] || c[0] == c[2] || c[1] == c[2] {
                return Err(Error::InvalidInstance(format!("clause {j} repeats a literal")));
            }
        }
        Ok(Formula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[Lit; 3]] {
        &self.clauses
    }

    pub fn value(lit: Lit, assignment: &[bool]) -> bool {
        assignment[lit.var] != lit.negated
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().filter(|&&l| Self::value(l, assignment)).count() == 1)
    }
}

/// First satisfying assignment in counting order.
pub fn solve_1in3_brute(phi: &Formula) -> Option<Vec<bool>> {
    assert!(phi.num_vars <= 24, "too many variables for exhaustive search");
    (0..1u32 << phi.num_vars)
        .map(|m| (0..phi.num_vars).map(|v| m >> v & 1 == 1).collect::<Vec<bool>>())
        .find(|a| phi.satisfied_by(a))
}

pub fn random_formula(rng: &mut Rand, num_vars: usize, num_clauses: usize) -> Formula {
    assert!(num_vars >= 2, "three distinct literals need at least two variables");
    let clauses = (0..num_clauses)
        .map(|_| loop {
            let lit = |rng: &mut Rand| Lit {
                var: rng.gen_range(0..num_vars),
                negated: rng.gen_bool(0.5),
            };
            let c = [lit(rng), lit(rng), lit(rng)];
            if c[0] != c[1] && c[0] != c[2] && c[1] != c[2] {
                break c;
            }
        })
        .collect();
    Formula::new(num_vars, clauses).expect("distinct literals")
}

fn lit_name(l: Lit) -> String {
    format!("{}x{}", if l.negated { "-" } else { "+" }, l.var + 1)
}

/// Universe: `s`, `t`, both literals of each variable, then `r:j:1..3` and
/// `z:j` for each clause `j`. Threshold 1.
pub fn sat1in3_to_rsep(phi: &Formula) -> RSepInstance {
    let nv = phi.num_vars;
    let m = phi.clauses.len();
    let mut universe = vec!["s".to_string(), "t".to_string()];
    for v in 0..nv {
        universe.push(lit_name(Lit { var: v, negated: false }));
        universe.push(lit_name(Lit { var: v, negated: true }));
    }
    for j in 1..=m {
        for q in 1..=3 {
            universe.push(format!("r:{j}:{q}"));
        }
    }
    for j in 1..=m {
        universe.push(format!("z:{j}"));
    }
    let n = universe.len();
    let (s, t) = (0, 1);
    let lit = |l: Lit| 2 + 2 * l.var + usize::from(l.negated);
    let r = |j: usize, q: usize| 2 + 2 * nv + 3 * j + (q - 1);
    let z = |j: usize| 2 + 2 * nv + 3 * m + j;
    let set = |items: &[usize]| Subset::from_indices(n, items.iter().copied());
    let all_r: Vec<usize> = (0..m).flat_map(|j| (1..=3).map(move |q| r(j, q))).collect();

    let mut families = Vec::new();
    for v in 0..nv {
        let (pos, neg) = (lit(Lit { var: v, negated: false }), lit(Lit { var: v, negated: true }));
        let mut with_r = vec![s, pos, neg];
        with_r.extend(&all_r);
        families.push(vec![set(&with_r)]);
        families.push(vec![set(&[pos, neg, t])]);
    }
    for (j, c) in phi.clauses.iter().enumerate() {
        let [l1, l2, l3] = c.map(lit);
        families.push(vec![set(&[l1, l2, l3, t])]);
        families.push(vec![set(&[l1, z(j)]), set(&[l2, r(j, 2)])]);
        families.push(vec![set(&[r(j, 1), z(j)]), set(&[l3, r(j, 3)])]);
    }
    RSepInstance::new(universe, s, t, families, 1).expect("disjoint by construction")
}

/// The separating set induced by a satisfying assignment:
/// `{s} ∪ R ∪ true literals ∪ {z_j : third literal of clause j false}`.
pub fn sat1in3_certificate(phi: &Formula, rsep: &RSepInstance, assignment: &[bool]) -> Subset {
    let n = rsep.universe().len();
    let idx = |name: &str| rsep.index(name).expect("generated name");
    let mut x = Subset::empty(n);
    x.insert(rsep.s());
    for (j, c) in phi.clauses.iter().enumerate() {
        for q in 1..=3 {
            x.insert(idx(&format!("r:{}:{q}", j + 1)));
        }
        if !Formula::value(c[2], assignment) {
            x.insert(idx(&format!("z:{}", j + 1)));
        }
    }
    for v in 0..phi.num_vars {
        let l = Lit {
            var: v,
            negated: !assignment[v],
        };
        x.insert(idx(&lit_name(l)));
    }
    x
}

/// Raises the threshold of a threshold-1 instance to `target_d` without
/// changing feasibility: fresh elements `D` with `|D| = 2 target_d`, new
/// families `{D ∪ {s}}` and `{D ∪ {t}}`, and a set of `2 target_d - 1`
/// elements of `D` added to every existing family.
pub fn pad_rsep_threshold(inst: &RSepInstance, target_d: usize) -> Result<RSepInstance> {
    if inst.d() != 1 {
        return Err(Error::Precondition(format!("padding needs threshold 1, got {}", inst.d())));
    }
    if target_d == 0 {
        return Err(Error::Precondition("target threshold must be at least 1".into()));
    }
    let old_n = inst.universe().len();
    let mut universe = inst.universe().to_vec();
    universe.extend((1..=2 * target_d).map(|i| format!("pad:{i}")));
    let n = universe.len();
    let widen = |x: &Subset| Subset::from_indices(n, x.iter());
    let dummies: Vec<usize> = (old_n..n).collect();
    let d_hat = Subset::from_indices(n, dummies[..2 * target_d - 1].iter().copied());
    let mut families: Vec<Vec<Subset>> = inst
        .families()
        .iter()
        .map(|fam| {
            let mut sets: Vec<Subset> = fam.iter().map(widen).collect();
            sets.push(d_hat.clone());
            sets
        })
        .collect();
    let mut with_s = Subset::from_indices(n, dummies.iter().copied());
    let mut with_t = with_s.clone();
    with_s.insert(inst.s());
    with_t.insert(inst.t());
    families.push(vec![with_s]);
    families.push(vec![with_t]);
    RSepInstance::new(universe, inst.s(), inst.t(), families, target_d)
}
