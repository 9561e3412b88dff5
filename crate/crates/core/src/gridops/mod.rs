//! Uniform grids, sampled two-component functions and the finite-difference
//! operators acting on them.

mod grid;
mod ladder;
mod operator;
mod residuals;
mod wavefunction;

pub use grid::{
    build_grid, default_grid, Cutoffs, EndKind, Grid, TruncationPolicy, MIN_NODES, TAIL_AMPLITUDE,
};
pub use ladder::{apply_ladder, derivative, Direction};
pub use operator::{assemble_hamiltonian, check_inside, OperatorMatrix};
pub use residuals::{
    gaussian_bump, intertwining_between, intertwining_residual, shape_invariance_between,
    shape_invariance_residual,
};
pub use wavefunction::WaveFunction;
