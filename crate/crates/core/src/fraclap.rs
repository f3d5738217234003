//! Restricted (integral) fractional Laplacian with zero exterior data, on
//! intervals and on cell-described planar domains, and its first eigenpair.
//!
//! The operator is normalized so that its Fourier symbol is `|xi|^(2s)`:
//! `C_{N,s} = 4^s Gamma(N/2 + s) / (pi^(N/2) |Gamma(-s)|)`.
//!
//! 1D: fractional centered differences. Row `i` holds `h^(-2s) g_{i-j}` with
//! `g_m = (-1)^m Gamma(2s+1) / (Gamma(s-m+1) Gamma(s+m+1))`; nodes outside the
//! interval carry zero and are dropped.
//!
//! 2D: for a cell center `y`, `C Int (u(y) - u(z)) |y-z|^(-2-2s) dz` is split
//! into the 3x3 block of cells around `y`, handled by weights on the eight
//! neighbours that are exact for quadratics, and everything else, handled by
//! midpoint quadrature up to radius `R = 4 diam` and by the closed-form radial
//! tail beyond. Exterior cells hold `u = 0`, so their weights only feed the
//! diagonal.

use rayon::prelude::*;
use statrs::function::gamma::gamma;

use crate::error::{param, Error, Result};
use crate::grid::{Grid1D, GridFn1D};
use crate::linalg::{dot, norm2, Cholesky, SymMatrix};
use crate::mask::{DomainMask2D, GridFn2D};
use crate::quadrature::GaussRule;

/// Far-field interactions are summed explicitly out to this multiple of the
/// domain diameter.
pub const FAR_FIELD_DIAMETERS: f64 = 4.0;

pub const MIN_1D_NODES: usize = 8;

/// Relative eigenvalue change that stops inverse iteration.
pub const INVERSE_ITERATION_TOL: f64 = 1e-10;

pub const INVERSE_ITERATION_MAX: usize = 20_000;

#[derive(Debug, Clone, PartialEq)]
pub enum Geometry {
    /// `size` interior nodes of `(-length/2, length/2)`.
    Interval { length: f64 },
    Planar(DomainMask2D),
}

#[derive(Debug, Clone)]
pub struct FracLapMatrix {
    pub s: f64,
    pub geometry: Geometry,
    pub h: f64,
    pub entries: SymMatrix,
    /// Set for single-cell domains, where the near-field correction has no
    /// interior neighbours to act on.
    pub low_accuracy: bool,
}

impl FracLapMatrix {
    pub fn dimension(&self) -> usize {
        match self.geometry {
            Geometry::Interval { .. } => 1,
            Geometry::Planar(_) => 2,
        }
    }

    pub fn size(&self) -> usize {
        self.entries.size()
    }

    /// Discrete quadratic form ratio `v^T A v / v^T v`.
    pub fn rayleigh_quotient(&self, v: &[f64]) -> f64 {
        dot(v, &self.entries.mul_vec(v)) / dot(v, v)
    }
}

#[derive(Debug, Clone)]
pub enum Eigenfunction {
    OneD(GridFn1D),
    TwoD(GridFn2D),
}

#[derive(Debug, Clone)]
pub struct FirstEigenpair {
    pub lambda: f64,
    pub phi: Eigenfunction,
    /// Eigenvector over the unknowns (unit Euclidean norm, nonnegative sum).
    pub vector: Vec<f64>,
    /// `||A v - lambda v|| / lambda`.
    pub residual: f64,
    pub iterations: usize,
}

/// `C_{N,s}` for the integral fractional Laplacian.
pub fn normalization_constant(dim: u32, s: f64) -> f64 {
    let half_n = dim as f64 / 2.0;
    4f64.powf(s) * gamma(half_n + s) / (std::f64::consts::PI.powf(half_n) * gamma(-s).abs())
}

/// `g_0, ..., g_{len-1}` of the fractional centered difference.
pub fn centered_difference_coefficients(s: f64, len: usize) -> Vec<f64> {
    let mut g = Vec::with_capacity(len);
    let mut gm = gamma(2.0 * s + 1.0) / gamma(s + 1.0).powi(2);
    for m in 0..len {
        g.push(gm);
        let m = m as f64;
        gm *= (m - s) / (s + m + 1.0);
    }
    g
}

fn check_order(s: f64) -> Result<()> {
    if s > 0.0 && s < 1.0 {
        Ok(())
    } else {
        param(format!("fractional Laplacian order {s} outside (0, 1)"))
    }
}

pub fn fraclap_matrix_1d(n: usize, s: f64, length: f64) -> Result<FracLapMatrix> {
    check_order(s)?;
    if n < MIN_1D_NODES {
        return param(format!("need at least {MIN_1D_NODES} interior nodes, got {n}"));
    }
    if !(length > 0.0 && length.is_finite()) {
        return param(format!("interval length {length} must be positive"));
    }
    let h = length / (n + 1) as f64;
    let scale = h.powf(-2.0 * s);
    let g = centered_difference_coefficients(s, n);
    let entries = SymMatrix::from_fn(n, |i, j| scale * g[i.abs_diff(j)]);
    Ok(FracLapMatrix {
        s,
        geometry: Geometry::Interval { length },
        h,
        entries,
        low_accuracy: false,
    })
}

/// `Int_{[-1,1]^2} |z|^(-2s) dz`.
fn unit_box_moment(s: f64) -> f64 {
    let e = 2.0 - 2.0 * s;
    let rule = GaussRule::legendre(24);
    8.0 / e * rule.integrate(0.0, std::f64::consts::FRAC_PI_4, |th| th.cos().powf(-e))
}

/// Explicit lattice weights `|k|^(-2-2s)` over all lattice points `k` with
/// `max(|k_1|,|k_2|) >= 2` and `|k| <= radius` (lattice units).
fn far_lattice_sum(s: f64, radius: f64) -> f64 {
    let rmax = radius.floor() as i64;
    let r2 = radius * radius;
    let p = 1.0 + s;
    let mut total = 0.0;
    // One octant-free quadrant sweep: (i >= 1, j >= 0) covers the plane 4x.
    for i in 1..=rmax {
        for j in 0..=rmax {
            let d2 = (i * i + j * j) as f64;
            if d2 > r2 || (i < 2 && j < 2) {
                continue;
            }
            total += d2.powf(-p);
        }
    }
    4.0 * total
}

pub fn fraclap_matrix_2d(mask: &DomainMask2D, s: f64) -> Result<FracLapMatrix> {
    check_order(s)?;
    let h = mask.h();
    let cells = mask.interior();
    let n = cells.len();
    let c_ns = normalization_constant(2, s);
    let unit = h.powf(-2.0 * s);

    // Neighbour weights (in units of h^-2s) exact for quadratics on the
    // 3x3 block: 2 w_e + 4 w_c = 1/2 (3/2)^(2-2s) J(s).
    let block = 0.5 * 1.5f64.powf(2.0 - 2.0 * s) * unit_box_moment(s);
    let corner_ratio = 2f64.powf(-1.0 - s);
    let w_edge = block / (2.0 + 4.0 * corner_ratio);
    let w_corner = w_edge * corner_ratio;

    let radius = (FAR_FIELD_DIAMETERS * mask.diameter() / h).max(3.0);
    let tail = std::f64::consts::PI / s * radius.powf(-2.0 * s);
    let diag = c_ns * unit * (4.0 * w_edge + 4.0 * w_corner + far_lattice_sum(s, radius) + tail);

    let weight = |di: i64, dj: i64| -> f64 {
        let (ai, aj) = (di.abs(), dj.abs());
        if ai <= 1 && aj <= 1 {
            if ai + aj == 1 {
                w_edge
            } else {
                w_corner
            }
        } else {
            ((di * di + dj * dj) as f64).powf(-1.0 - s)
        }
    };
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let (ri, ci) = cells[i];
            (0..n)
                .map(|j| {
                    if i == j {
                        diag
                    } else {
                        let (rj, cj) = cells[j];
                        -c_ns * unit * weight(ri as i64 - rj as i64, ci as i64 - cj as i64)
                    }
                })
                .collect()
        })
        .collect();
    let mut entries = SymMatrix::from_rows(n, rows.concat());
    entries.symmetrize();
    Ok(FracLapMatrix {
        s,
        geometry: Geometry::Planar(mask.clone()),
        h,
        entries,
        low_accuracy: n == 1,
    })
}

/// Smallest eigenvalue by inverse iteration on the Cholesky factor.
pub fn lambda1(m: &FracLapMatrix) -> Result<FirstEigenpair> {
    let chol = Cholesky::factor(&m.entries).map_err(|e| {
        Error::Numerical(format!("fractional Laplacian discretization is broken: {e}"))
    })?;
    let n = m.size();
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut lambda = m.rayleigh_quotient(&v);
    let mut iterations = 0;
    loop {
        iterations += 1;
        let mut w = chol.solve(&v);
        let norm = norm2(&w);
        w.iter_mut().for_each(|x| *x /= norm);
        let next = m.rayleigh_quotient(&w);
        v = w;
        let done = (next - lambda).abs() < INVERSE_ITERATION_TOL * next.abs();
        lambda = next;
        if done {
            break;
        }
        if iterations >= INVERSE_ITERATION_MAX {
            return Err(Error::Numerical(format!(
                "inverse iteration did not converge in {INVERSE_ITERATION_MAX} steps"
            )));
        }
    }
    if v.iter().sum::<f64>() < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    let av = m.entries.mul_vec(&v);
    let residual = av
        .iter()
        .zip(&v)
        .map(|(a, x)| (a - lambda * x).powi(2))
        .sum::<f64>()
        .sqrt()
        / lambda;
    let phi = eigenfunction(m, &v)?;
    Ok(FirstEigenpair {
        lambda,
        phi,
        vector: v,
        residual,
        iterations,
    })
}

fn eigenfunction(m: &FracLapMatrix, v: &[f64]) -> Result<Eigenfunction> {
    match &m.geometry {
        Geometry::Interval { length } => {
            let n = v.len();
            let scale = 1.0 / m.h.sqrt();
            let grid = Grid1D::uniform(-length / 2.0, length / 2.0, n + 2)?;
            let mut vals = vec![0.0; n + 2];
            for (i, x) in v.iter().enumerate() {
                vals[i + 1] = x * scale;
            }
            Ok(Eigenfunction::OneD(GridFn1D::new(grid, vals)?))
        }
        Geometry::Planar(mask) => {
            let scale = 1.0 / mask.h();
            let mut vals = vec![0.0; mask.rows() * mask.cols()];
            for (k, (r, c)) in mask.interior().into_iter().enumerate() {
                vals[r * mask.cols() + c] = v[k] * scale;
            }
            let mut f = GridFn2D::new(mask.h(), mask.rows(), mask.cols(), vals)?;
            f.origin = mask.origin();
            Ok(Eigenfunction::TwoD(f))
        }
    }
}

/// Convenience: assemble and solve in one step.
pub fn lambda1_of_mask(mask: &DomainMask2D, s: f64) -> Result<f64> {
    Ok(lambda1(&fraclap_matrix_2d(mask, s)?)?.lambda)
}

pub fn lambda1_of_interval(n: usize, s: f64, length: f64) -> Result<f64> {
    Ok(lambda1(&fraclap_matrix_1d(n, s, length)?)?.lambda)
}
