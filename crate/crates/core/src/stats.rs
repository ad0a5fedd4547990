//! Per-thread work counters reported alongside solver results.

use std::cell::Cell;

thread_local! {
    static FLOW_CALLS: Cell<u64> = const { Cell::new(0) };
    static BRANCH_NODES: Cell<u64> = const { Cell::new(0) };
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counters {
    pub flow_calls: u64,
    pub branch_nodes: u64,
}

pub fn reset() {
    FLOW_CALLS.with(|c| c.set(0));
    BRANCH_NODES.with(|c| c.set(0));
}

pub fn snapshot() -> Counters {
    Counters {
        flow_calls: FLOW_CALLS.with(Cell::get),
        branch_nodes: BRANCH_NODES.with(Cell::get),
    }
}

pub(crate) fn count_flow() {
    FLOW_CALLS.with(|c| c.set(c.get() + 1));
}

pub(crate) fn count_branch() {
    BRANCH_NODES.with(|c| c.set(c.get() + 1));
}
