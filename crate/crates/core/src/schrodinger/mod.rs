//! Grids, potentials and the discretized operators `H0 = -d²/dx²` and
//! `H = H0 + V` on a Dirichlet box.

mod ensemble;
mod grid;
mod operator;
mod potential;
mod resolvent;

pub use ensemble::{parse_complex, potential_ensemble, EnsembleSpec, Family};
pub use grid::Grid1D;
pub use operator::{
    assemble_h, assemble_h0, cluster_eigenvalues, eigenvalues_offaxis, laplacian_dirichlet, offaxis_spectrum,
    EigRecord, OffaxisFilter, SpectralParams, SpectralWindow,
};
pub use potential::Potential;
pub use resolvent::{birman_schwinger, free_resolvent_kernel_1d, nystrom_resolvent, BirmanSchwinger, BsMode};
pub(crate) use operator::offaxis_spectrum_with_stats;
