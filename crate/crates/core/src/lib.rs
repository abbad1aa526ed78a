//! Exact construction and verification of SL(3,R)-intertwining differential
//! operators between line-and-vector bundles over the real projective plane.
//!
//! Everything is computed over the rationals. The layers are:
//!
//! - [`exactalg`]: rationals, sparse matrices, rank/nullspace, parametric solve.
//! - [`weights`]: weights of sl(3), Weyl group, linkage and Boe's criterion.
//! - [`sl3`]: the Lie algebra, its Gelfand-Naimark decomposition, `Ad(exp n-)`.
//! - [`fiber`]: sl(2)/M-representations on the fibers and the invariants `psi`.
//! - [`polyweyl`]: polynomials, the Weyl algebra with matrix coefficients.
//! - [`classify`]: the parameter classification and the Theta bijection.
//! - [`verma`]: generalized Verma modules, explicit homs, the brute-force oracle.
//! - [`ido`]: Cartan/PRV operators, the infinitesimal action, intertwining checks.
//! - [`bgg`]: the BGG complex, exactness, the kernel representation, parity.

pub mod bgg;
pub mod classify;
pub mod exactalg;
pub mod fiber;
pub mod ido;
pub mod polyweyl;
pub mod sl3;
pub mod verma;
pub mod weights;

pub use exactalg::{LinParam, Rat, RatMatrix};
