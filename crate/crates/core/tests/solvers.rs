use rsm_core::random;
use rsm_core::solvers::{self, Outcome};
use rand::Rng;

fn check(o: &Outcome, inst: &solvers::Instance, name: &str) {
    if let Outcome::Feasible(sol) = o {
        let v = solvers::verify(inst, &sol.x).unwrap();
        assert!(v.ok, "{name} returned a set that fails verification");
    }
}

#[test]
fn solvers_agree_with_brute_force() {
    let mut rng = random::rng(7);
    for round in 0..1000 {
        let n = rng.gen_range(0..=8);
        let k = rng.gen_range(0..=4);
        let d = rng.gen_range(0..=3);
        let inst = random::instance(&mut rng, n, k, d, 0.3).unwrap();
        let brute = solvers::solve_brute(&inst, 20).unwrap();
        check(&brute, &inst, "brute");
        let expect = brute.is_feasible();
        let fpt = solvers::solve_fpt_kd(&inst).unwrap();
        check(&fpt, &inst, "fpt");
        assert_eq!(fpt.is_feasible(), expect, "fpt round {round}: {inst:?}");
        let anch = solvers::solve_via_anchors(&inst, 1_000_000).unwrap();
        check(&anch, &inst, "anchored");
        assert_eq!(anch.is_feasible(), expect, "anchored round {round}");
        let en = solvers::solve_enumerative(&inst, 1_000_000).unwrap();
        check(&en, &inst, "enum");
        assert_eq!(en.is_feasible(), expect, "enum round {round}");
        if k == 2 {
            assert_eq!(solvers::solve_k2(&inst).unwrap().is_feasible(), expect, "k2 round {round}");
        }
        if inst.thresholds().iter().all(|&t| t == 0) {
            assert_eq!(solvers::solve_d0(&inst).unwrap().is_feasible(), expect, "d0 round {round}");
        }
    }
}
