//! Executable forms of the cylinder results: separated first eigenvalue,
//! Lyapunov and Hartman–Wintner necessary conditions, and the
//! Rayleigh–Faber–Krahn shape sweep.
//!
//! The checkers audit a given potential `q`; they never decide solvability.
//! A violated report means no nontrivial solution can exist for that `q`.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::eigen1d::eigen_frac1d;
use crate::error::{param, Result};
use crate::fraclap::{fraclap_matrix_2d, lambda1};
use crate::grid::GridFn1D;
use crate::kernel::{GreenKernel, KernelParams};
use crate::mask::DomainMask2D;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportContext {
    pub alpha: f64,
    pub a: f64,
    pub b: f64,
    pub lambda1: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub domain: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub inequality: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
    /// `lhs - rhs`.
    pub margin: f64,
    /// `|margin|` within tolerance: the bound is attained.
    pub equality: bool,
    pub verdict: &'static str,
    pub context: ReportContext,
}

/// Absolute slack used for `satisfied` and `equality`: `1e-9 max(1, |rhs|)`.
pub fn tolerance(rhs: f64) -> f64 {
    1e-9 * rhs.abs().max(1.0)
}

impl InequalityReport {
    fn new(inequality: &'static str, lhs: f64, rhs: f64, context: ReportContext) -> Self {
        let tol = tolerance(rhs);
        let margin = lhs - rhs;
        let satisfied = lhs >= rhs - tol;
        Self {
            inequality,
            lhs,
            rhs,
            satisfied,
            margin,
            equality: margin.abs() <= tol,
            verdict: if satisfied {
                "necessary condition satisfied"
            } else {
                "necessary condition violated"
            },
            context,
        }
    }

    pub fn with_domain(mut self, s: f64, domain: impl Into<String>) -> Self {
        self.context.s = Some(s);
        self.context.domain = Some(domain.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn check_inputs(q: &GridFn1D, p: &KernelParams, lambda1: f64) -> Result<ReportContext> {
    let tol = 1e-12 * p.length();
    let g = q.grid();
    if (g.a() - p.a()).abs() > tol || (g.b() - p.b()).abs() > tol {
        return param(format!(
            "potential sampled on [{}, {}] but the interval is [{}, {}]",
            g.a(),
            g.b(),
            p.a(),
            p.b()
        ));
    }
    if !(lambda1 >= 0.0 && lambda1.is_finite()) {
        return param(format!("lambda1 = {lambda1} must be a nonnegative number"));
    }
    Ok(ReportContext {
        alpha: p.alpha().value(),
        a: p.a(),
        b: p.b(),
        lambda1,
        s: None,
        domain: None,
    })
}

/// `Int_a^b |q - lambda1| dx >= 1 / sup G(x,x)`.
pub fn lyapunov_check(q: &GridFn1D, p: &KernelParams, lambda1: f64) -> Result<InequalityReport> {
    let ctx = check_inputs(q, p, lambda1)?;
    let lhs = q.map(|v| (v - lambda1).abs()).trapezoid();
    let rhs = 1.0 / GreenKernel::new(*p).sup_g_diag().value;
    Ok(InequalityReport::new("lyapunov", lhs, rhs, ctx))
}

/// `Int_a^b (K(a,a)K(s,s) - K(a,s)^2) [q(s) - lambda1]^+ ds >= K(a,a)`.
pub fn hartman_wintner_check(q: &GridFn1D, p: &KernelParams, lambda1: f64) -> Result<InequalityReport> {
    let ctx = check_inputs(q, p, lambda1)?;
    let kernel = GreenKernel::new(*p);
    let k_aa = kernel.k_aa();
    let weights: Vec<f64> = q
        .grid()
        .nodes()
        .par_iter()
        .map(|&s| {
            let k_as = kernel.k_unchecked(p.a(), s).0;
            k_aa * kernel.k_diag(s) - k_as * k_as
        })
        .collect();
    let integrand: Vec<f64> = weights
        .iter()
        .zip(q.values())
        .map(|(w, v)| w * (v - lambda1).max(0.0))
        .collect();
    let lhs = GridFn1D::new(q.grid().clone(), integrand)?.trapezoid();
    Ok(InequalityReport::new("hartman-wintner", lhs, k_aa, ctx))
}

#[derive(Debug, Clone)]
pub struct CylinderSpec {
    pub params: KernelParams,
    pub s: f64,
    pub cross_section: DomainMask2D,
}

impl CylinderSpec {
    pub fn new(params: KernelParams, s: f64, cross_section: DomainMask2D) -> Result<Self> {
        if !(s > 0.0 && s < 1.0) {
            return param(format!("s = {s} outside (0, 1)"));
        }
        Ok(Self {
            params,
            s,
            cross_section,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CylinderEigen {
    pub nu1: f64,
    pub mu1: f64,
    pub lambda1: f64,
}

/// `nu_1((a,b) x Omega) = mu_1(a,b) + lambda_1(Omega)`.
pub fn cylinder_nu1(spec: &CylinderSpec, n_1d: usize) -> Result<CylinderEigen> {
    let mu1 = eigen_frac1d(&spec.params, n_1d, 1)?.eigenvalues[0];
    let lambda1 = lambda1(&fraclap_matrix_2d(&spec.cross_section, spec.s)?)?.lambda;
    Ok(CylinderEigen {
        nu1: mu1 + lambda1,
        mu1,
        lambda1,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub shape_id: String,
    pub cells: usize,
    pub lambda1: f64,
    pub mu1: f64,
    pub nu1: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    /// Ascending in `nu1`, ties by shape id.
    pub rows: Vec<SweepRow>,
}

pub const SWEEP_CSV_HEADER: &str = "shape_id,cells,lambda1,mu1,nu1";

impl SweepTable {
    pub fn minimizer(&self) -> &SweepRow {
        &self.rows[0]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(SWEEP_CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            writeln!(out, "{},{},{},{},{}", r.shape_id, r.cells, r.lambda1, r.mu1, r.nu1).unwrap();
        }
        out
    }
}

/// First cylinder eigenvalue for each cross-section of equal cell count,
/// sorted ascending. `mu_1` does not depend on the shape and is computed once.
pub fn rfk_sweep(
    shapes: &[(String, DomainMask2D)],
    p: &KernelParams,
    s: f64,
    n_1d: usize,
) -> Result<SweepTable> {
    if shapes.len() < 2 {
        return param("a sweep needs at least two shapes");
    }
    let cells = shapes[0].1.count();
    if let Some((id, m)) = shapes.iter().find(|(_, m)| m.count() != cells) {
        return param(format!(
            "shape {id:?} has {} cells but {:?} has {cells}: measures differ",
            m.count(),
            shapes[0].0
        ));
    }
    if !(s > 0.0 && s < 1.0) {
        return param(format!("s = {s} outside (0, 1)"));
    }
    let mu1 = eigen_frac1d(p, n_1d, 1)?.eigenvalues[0];
    let lambdas: Vec<f64> = shapes
        .par_iter()
        .map(|(_, m)| Ok(lambda1(&fraclap_matrix_2d(m, s)?)?.lambda))
        .collect::<Result<_>>()?;
    let mut rows: Vec<SweepRow> = shapes
        .iter()
        .zip(lambdas)
        .map(|((id, m), lambda1)| SweepRow {
            shape_id: id.clone(),
            cells: m.count(),
            lambda1,
            mu1,
            nu1: mu1 + lambda1,
        })
        .collect();
    rows.sort_by(|x, y| x.nu1.total_cmp(&y.nu1).then_with(|| x.shape_id.cmp(&y.shape_id)));
    Ok(SweepTable { rows })
}
