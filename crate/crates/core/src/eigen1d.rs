//! Nyström discretization of `u = Int G(x,t) f(t) dt` and the Dirichlet
//! eigenvalues `mu_k` of `D^alpha_{a+} D^alpha_{b-}`.
//!
//! The symmetric matrix `M = W^(1/2) G W^(1/2)` (trapezoid weights on a mesh
//! graded toward both endpoints) has eigenvalues `eta_k`; the differential
//! operator's eigenvalues are the characteristic numbers `mu_k = 1 / eta_k`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::fracops::bvp_operator;
use crate::grid::{Grid1D, GridFn1D};
use crate::kernel::{GreenKernel, KernelParams};
use crate::linalg::{jacobi_eigen, SymMatrix};

pub const MIN_NYSTROM_NODES: usize = 16;

/// Off-diagonal tolerance of the Jacobi sweeps, relative to `||M||_F`.
pub const JACOBI_TOL: f64 = 1e-12;

/// Node count used by [`eigen_scaling_check`].
pub const SCALING_CHECK_NODES: usize = 128;

/// Eigenfunction residuals are measured on `[a + m(b-a), b - m(b-a)]`.
pub const RESIDUAL_MARGIN: f64 = 0.1;

#[derive(Debug, Clone)]
pub struct KernelMatrix {
    pub grid: Grid1D,
    pub entries: SymMatrix,
    pub weights: Vec<f64>,
    /// Largest propagated kernel-quadrature error estimate over all entries.
    pub max_kernel_error: f64,
}

#[derive(Debug, Clone)]
pub struct SpectralResult {
    /// `mu_1 < mu_2 < ...`
    pub eigenvalues: Vec<f64>,
    /// Nodal values, unit norm in the trapezoid-weighted L2 sense.
    pub eigenfunctions: Vec<GridFn1D>,
    /// Relative operator residuals `||L u - mu u|| / (mu ||u||)` on the
    /// interior window.
    pub residuals: Vec<f64>,
    pub mesh_size: usize,
    /// Kernel-operator eigenvalues `eta_k = 1 / mu_k`.
    pub kernel_eigenvalues: Vec<f64>,
    pub jacobi_sweeps: usize,
}

/// Grading exponent of the Nyström mesh.
pub fn grading_exponent(alpha: f64) -> f64 {
    2.0 / alpha
}

pub fn nystrom_grid(p: &KernelParams, n: usize) -> Result<Grid1D> {
    Grid1D::graded(p.a(), p.b(), n, grading_exponent(p.alpha().value()))
}

pub fn assemble_green_matrix(p: &KernelParams, grid: &Grid1D) -> Result<KernelMatrix> {
    let n = grid.len();
    if n < MIN_NYSTROM_NODES {
        return param(format!("Nystrom matrix needs n >= {MIN_NYSTROM_NODES}, got {n}"));
    }
    let tol = 1e-12 * p.length();
    if (grid.a() - p.a()).abs() > tol || (grid.b() - p.b()).abs() > tol {
        return param(format!(
            "grid [{}, {}] does not match interval [{}, {}]",
            grid.a(),
            grid.b(),
            p.a(),
            p.b()
        ));
    }
    let kernel = GreenKernel::new(*p);
    let x = grid.nodes();
    let weights = grid.trapezoid_weights();
    let sqrt_w: Vec<f64> = weights.iter().map(|w| w.sqrt()).collect();
    let boundary: Vec<(f64, f64)> = x.par_iter().map(|&xi| kernel.k_unchecked(p.a(), xi)).collect();

    let rows: Vec<(Vec<f64>, f64)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![0.0; i + 1];
            let mut err: f64 = 0.0;
            for j in 0..=i {
                let (g, e) = kernel.g_with_boundary_row(x[i], x[j], boundary[i], boundary[j]);
                row[j] = sqrt_w[i] * g * sqrt_w[j];
                err = err.max(e);
            }
            (row, err)
        })
        .collect();

    let mut entries = SymMatrix::zeros(n);
    let mut max_kernel_error: f64 = 0.0;
    for (i, (row, err)) in rows.into_iter().enumerate() {
        max_kernel_error = max_kernel_error.max(err);
        for (j, v) in row.into_iter().enumerate() {
            entries.set(i, j, v);
            entries.set(j, i, v);
        }
    }
    Ok(KernelMatrix {
        grid: grid.clone(),
        entries,
        weights,
        max_kernel_error,
    })
}

/// The `k` smallest Dirichlet eigenvalues on an `n`-node graded mesh.
pub fn eigen_frac1d(p: &KernelParams, n: usize, k: usize) -> Result<SpectralResult> {
    if k == 0 || 4 * k > n {
        return param(format!("k = {k} must satisfy 1 <= k <= n/4 (n = {n})"));
    }
    let grid = nystrom_grid(p, n)?;
    let km = assemble_green_matrix(p, &grid)?;
    let eig = jacobi_eigen(&km.entries, JACOBI_TOL)?;

    let mut eigenvalues = Vec::with_capacity(k);
    let mut kernel_eigenvalues = Vec::with_capacity(k);
    let mut eigenfunctions = Vec::with_capacity(k);
    let mut residuals = Vec::with_capacity(k);
    for idx in (eig.values.len() - k..eig.values.len()).rev() {
        let eta = eig.values[idx];
        if !(eta > 0.0) {
            return Err(Error::Numerical(format!(
                "spectrum positivity violated: kernel eigenvalue {eta:e} among the top {k}"
            )));
        }
        let v = &eig.vectors[idx];
        let mut u: Vec<f64> = v
            .iter()
            .zip(&km.weights)
            .map(|(vi, w)| if *w > 0.0 { vi / w.sqrt() } else { 0.0 })
            .collect();
        let mean: f64 = u.iter().zip(&km.weights).map(|(ui, w)| ui * w).sum();
        if mean < 0.0 {
            u.iter_mut().for_each(|ui| *ui = -*ui);
        }
        let u = GridFn1D::new(grid.clone(), u)?;
        let mu = 1.0 / eta;
        residuals.push(operator_residual(&u, mu, p)?);
        eigenvalues.push(mu);
        kernel_eigenvalues.push(eta);
        eigenfunctions.push(u);
    }
    Ok(SpectralResult {
        eigenvalues,
        eigenfunctions,
        residuals,
        mesh_size: n,
        kernel_eigenvalues,
        jacobi_sweeps: eig.sweeps,
    })
}

/// `||L u - mu u|| / (mu ||u||)` over the interior window, with `L` applied by
/// product integration and finite differences.
pub fn operator_residual(u: &GridFn1D, mu: f64, p: &KernelParams) -> Result<f64> {
    let lu = bvp_operator(u, p.alpha())?;
    let lo = p.a() + RESIDUAL_MARGIN * p.length();
    let hi = p.b() - RESIDUAL_MARGIN * p.length();
    let x = u.grid().nodes();
    let w = u.grid().trapezoid_weights();
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..x.len() {
        if x[i] >= lo && x[i] <= hi {
            let r = lu.values()[i] - mu * u.values()[i];
            num += w[i] * r * r;
            den += w[i] * u.values()[i] * u.values()[i];
        }
    }
    Ok((num / den).sqrt() / mu)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingReport {
    pub alpha: f64,
    pub stretch: f64,
    pub mu_base: f64,
    pub mu_stretched: f64,
    pub ratio: f64,
    /// `stretch^(-2 alpha)`.
    pub expected: f64,
}

impl ScalingReport {
    pub fn relative_deviation(&self) -> f64 {
        (self.ratio - self.expected).abs() / self.expected
    }
}

/// Compare `mu_1` on `[a, b]` with `mu_1` on `[a, a + stretch (b-a)]`.
pub fn eigen_scaling_check(p: &KernelParams, stretch: f64) -> Result<ScalingReport> {
    eigen_scaling_check_with(p, stretch, SCALING_CHECK_NODES)
}

pub fn eigen_scaling_check_with(p: &KernelParams, stretch: f64, n: usize) -> Result<ScalingReport> {
    if !(stretch > 0.0 && stretch.is_finite()) {
        return param(format!("stretch {stretch} must be positive"));
    }
    let stretched = p.with_interval(p.a(), p.a() + stretch * p.length())?;
    let mu_base = eigen_frac1d(p, n, 1)?.eigenvalues[0];
    let mu_stretched = eigen_frac1d(&stretched, n, 1)?.eigenvalues[0];
    let alpha = p.alpha().value();
    Ok(ScalingReport {
        alpha,
        stretch,
        mu_base,
        mu_stretched,
        ratio: mu_stretched / mu_base,
        expected: stretch.powf(-2.0 * alpha),
    })
}
