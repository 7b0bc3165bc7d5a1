//! Hamiltonian ray tracing for the eikonal equation in media whose squared
//! slowness is a quadratic polynomial without position cross terms, together
//! with the exact differential Galois classification of the variational
//! equations and its realization through quiver representations.
//!
//! Module map:
//! - [`algebra`]: exact polynomials, rational functions, Poisson brackets
//! - [`hamiltonics`]: seismic models, Hamiltonians, variational matrices
//! - [`raytrace`]: fixed-step integration of rays and variational flows
//! - [`galois`]: singular points, Picard-Vessiot bases, abelian Galois factors
//! - [`quiver`]: path algebras, canonical representations, matrix exponentials
//! - [`cli`]: the `seisgal` command-line front end

pub mod algebra;
pub mod cli;
pub mod galois;
pub mod hamiltonics;
pub mod quiver;
pub mod raytrace;
