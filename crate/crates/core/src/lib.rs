//! Numerical core for Christoffel-Darboux kernels of generalized Jacobi
//! measures on unions of intervals.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! - [`specfun`]: gamma, real-order Bessel functions of the first kind and
//!   their zeros, and the limit kernels `J_alpha`, `L_alpha` (raw and entire).
//! - [`measure`]: generalized Jacobi measures `w(x) prod |x - x_i|^g_i dx`.
//! - [`orthopoly`]: recurrence tables (closed form and discretized Lanczos),
//!   composite Gauss-Jacobi quadrature, orthonormal polynomial evaluation.
//! - [`cdkernel`]: kernels `K_n`, Christoffel functions, kernel zeros and
//!   correlation determinants.
//! - [`potential`]: equilibrium densities of interval unions and polynomial
//!   inverse images.
//! - [`universality`]: scaling-limit scans and the associated checks.
#![no_std]
#![warn(missing_debug_implementations)]
// `!(x > 0.0)` guards are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cdkernel;
mod error;
pub mod linalg;
pub mod measure;
pub mod orthopoly;
pub mod poly;
pub mod potential;
pub mod specfun;
mod twofold;
pub mod universality;

pub use error::{Error, Result};
