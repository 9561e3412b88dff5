//! Ground and excited eigenstates.

mod closed;
mod excited;
mod ode;

pub use closed::{ground_state_closed_form, GroundStateSpec};
pub use excited::{excited_state, ground_state_residual, rayleigh_quotient};
pub use ode::{
    ground_state_degeneracy, ground_state_ode, kernel_on_grid, DEGENERACY_NODES, MATCH_TOL,
    ODE_RTOL,
};
