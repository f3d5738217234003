//! Numerical toolkit for a fractional elliptic boundary-value problem on
//! cylinders `(a, b) x Omega`: the operator `D^alpha_{a+} D^alpha_{b-}` along
//! the axis and the restricted fractional Laplacian `(-Delta)^s` across it.
//!
//! - [`fracops`]: Riemann–Liouville integrals and derivatives on grids.
//! - [`kernel`]: the kernels `K` and `G` of the equivalent integral equation.
//! - [`eigen1d`]: Nyström eigenvalues of the axial operator.
//! - [`fraclap`]: the fractional Laplacian on intervals and planar masks.
//! - [`rearrange`]: symmetric-decreasing, Schwarz and Steiner rearrangements.
//! - [`inequalities`]: Lyapunov, Hartman–Wintner and Faber–Krahn checks.
//! - [`cli`]: the `fracspec` command-line front end.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod eigen1d;
pub mod error;
pub mod extrapolate;
pub mod fraclap;
pub mod fracops;
pub mod grid;
pub mod inequalities;
pub mod kernel;
pub mod linalg;
pub mod mask;
pub mod quadrature;
pub mod rearrange;

pub use error::{Error, Result};
pub use grid::{FracOrder, Grid1D, GridFn1D};
pub use kernel::{GreenKernel, KernelParams};
pub use mask::{DomainMask2D, GridFn2D};
