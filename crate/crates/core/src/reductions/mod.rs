//! Reductions into robust minimization, with the brute-force deciders used
//! to check them.

pub mod balanced;
pub mod mcc;
pub mod rsep;
pub mod sat;

pub use balanced::{
    balancedcut_to_rsm, most_balanced_brute, mostbalanced_to_perfect, perfectly_balanced_brute,
    random_terminal_graph, TerminalGraph,
};
pub use mcc::{mcc_to_rsm, planted_clique, ColoredGraph, MccReduction};
pub use rsep::{
    infeasible_instance, random_rsep, rsep_costs, rsep_dist, rsep_is_solution, rsep_solve_brute,
    rsep_to_rsm, RSepInstance,
};
pub use sat::{
    pad_rsep_threshold, random_formula, sat1in3_certificate, sat1in3_to_rsep, solve_1in3_brute,
    Formula, Lit,
};
