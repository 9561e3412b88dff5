//! Benchmark fixtures shared by the criterion targets.

use matsusy_core::catalog::{self, FamilyId, Params};
use matsusy_core::gridops::{
    assemble_hamiltonian, build_grid, Grid, OperatorMatrix, TruncationPolicy,
};

/// The Coulomb-like system at κ=1, μ=0, ω=1.
pub fn coulomb() -> (FamilyId, Params) {
    (FamilyId::F1CoulombLike, Params::new(1.0, 0.0, 1.0))
}

/// Dirichlet Hamiltonian of `coulomb()` on [1e-3, 60] with `n` nodes.
pub fn coulomb_operator(n: usize) -> (Grid, OperatorMatrix) {
    let (f, p) = coulomb();
    let grid = build_grid(f, &p, n, &TruncationPolicy::explicit(1e-3, 60.0)).expect("grid");
    let h = assemble_hamiltonian(&catalog::potential(f, &p).expect("potential"), &grid)
        .expect("operator");
    (grid, h)
}
