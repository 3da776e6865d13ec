//! Brute-force ground truth in the full `N`-dimensional Hilbert space.

pub mod density;
pub mod entangle;
pub mod state;

pub use density::{
    dephase_ab, dephased_initial_density, dephased_trajectory_full, evolve_dephased_full, grover_operator_matrix,
    FullDensity, DENSE_MAX_N,
};
pub use entangle::{
    entanglement_scan, is_entangled, predicted_product, purity, qubit_count, reduced_density, QubitFactorization,
    ScanEntry, DEFAULT_ENTANGLEMENT_TOL,
};
pub use state::{
    apply_diffusion_v, apply_grover_iterations, apply_oracle_u, coherent_trajectory, FullState, STATEVECTOR_MAX_N,
};
