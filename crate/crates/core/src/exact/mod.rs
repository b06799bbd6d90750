//! Exact solvers: exhaustive search, and the min-cut algorithm for
//! 2-monotone Boolean templates.

mod brute;
mod flow;
mod mincut;

pub use brute::{brute_force, brute_force_with_cap, search_space, DEFAULT_CAP};
pub use flow::{max_flow, Arc, FlowCut, FlowNetwork};
pub use mincut::{
    build_cut_graph, solve_cut_graph, two_monotone_max_csp, two_monotone_solve, Anchor,
    AnchorMode, CutGraph, CutSolution,
};
