//! Thermal quantum correlations of a three-qubit XXZ Heisenberg ring with a
//! z-axis Dzyaloshinskii–Moriya interaction.
//!
//! The crate covers the whole pipeline from the Hamiltonian to the numbers
//! that get plotted:
//!
//! * [`numerics`]: small dense complex linear algebra (Kronecker products,
//!   partial traces, a Jacobi Hermitian eigensolver, von Neumann entropy).
//! * [`model`]: the ring Hamiltonian, its closed-form spectrum, Gibbs states,
//!   the reduced two-site X state and ground-level crossings.
//! * [`correlations`]: mutual information, classical correlation, quantum
//!   discord (closed form for X states plus a brute-force measurement
//!   optimizer) and Wootters concurrence.
//! * [`channels`]: local dephasing and depolarizing Kraus channels and the
//!   resulting pair discord/concurrence dynamics.
//! * [`cli`]: parameter sweeps, figure presets and validation reports used by
//!   the `qcorr` binary.

pub mod channels;
pub mod cli;
pub mod correlations;
pub mod error;
pub mod model;
pub mod numerics;

pub use error::{Error, Result};
pub use numerics::ComplexMatrix;
