//! File formats, verification suites and the command line for
//! [`christoffel_core`].

// `!(x > 0.0)` guards are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod io;
pub mod suites;

pub use christoffel_core as core;
