use rand::Rng;
use rsm_core::random;
use rsm_core::reductions::*;
use rsm_core::solvers;

#[test]
fn sat_chain_matches_brute_force() {
    let mut rng = random::rng(11);
    for _ in 0..200 {
        let vars = rng.gen_range(2..=3);
        let clauses = rng.gen_range(1..=2);
        let phi = random_formula(&mut rng, vars, clauses);
        let sat = solve_1in3_brute(&phi);
        let rsep = sat1in3_to_rsep(&phi);
        assert_eq!(rsep_solve_brute(&rsep, 20).unwrap().is_some(), sat.is_some());
        if let Some(a) = &sat {
            assert!(rsep_is_solution(&rsep, &sat1in3_certificate(&phi, &rsep, a)));
        }
        let inst = rsep_to_rsm(&rsep).unwrap();
        let out = solvers::solve_brute(&inst, 20).unwrap();
        assert_eq!(out.is_feasible(), sat.is_some());
    }
}

#[test]
fn planted_clique_certificate_misses_by_degree() {
    let mut rng = random::rng(5);
    for _ in 0..60 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=3);
        let (g, clique) = planted_clique(&mut rng, 3, n, m);
        let red = mcc_to_rsm(&g).unwrap();
        let v = solvers::verify(&red.instance, &red.certificate(&g, &clique)).unwrap();
        let d = red.instance.d();
        let first_incidence = 5 + 4 * 3 + 4 * 3;
        assert!(v.witnesses[..first_incidence].iter().all(|w| w.distance <= d));
        let mut degrees = Vec::new();
        for i in 0..3 {
            for j in (0..3).filter(|&j| j != i) {
                degrees.push(g.degree_into(clique[i], j));
            }
        }
        for (w, deg) in v.witnesses[first_incidence..].iter().zip(&degrees) {
            assert_eq!(w.distance, d + deg - 1);
        }
        assert_eq!(v.ok, degrees.iter().all(|&deg| deg == 1));
    }
}
