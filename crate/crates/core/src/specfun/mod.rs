//! Special functions: gamma, Bessel `J_nu`, its zeros and the limit kernels.
#![allow(clippy::excessive_precision)] // constants are quoted as published

mod bessel;
mod gamma;
mod kernels;
mod zeros;

pub use bessel::{bessel_j, bessel_j_real, bessel_j_scaled_real, BesselOrder, BesselValue, SERIES_RADIUS};
pub use gamma::gamma_fn;
pub use kernels::{
    cardinal_series, kernel_j, kernel_j_diag, kernel_l, kernel_l_diag, kernel_l_entire_real, KernelVariant,
    CONFLUENT_REL_TOL,
};
pub use zeros::{bessel_j_zeros, MAX_ZERO_COUNT};
