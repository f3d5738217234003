//! Riemann–Liouville integrals, the left Riemann–Liouville derivative and the
//! right Caputo derivative on (possibly graded) 1D grids.
//!
//! Integrals use product integration: the integrand is replaced by its
//! piecewise-linear interpolant and the power kernel is integrated against
//! each hat function. Derivatives then apply second-order finite differences
//! (three-point, one-sided at the endpoints).

use std::sync::OnceLock;

use statrs::function::gamma::gamma;

use crate::error::{param, Result};
use crate::grid::{FracOrder, GridFn1D};
use crate::quadrature::GaussRule;

/// Minimum node count for the differentiation stencils.
pub const MIN_DIFF_NODES: usize = 5;

fn panel_rule() -> &'static GaussRule {
    static RULE: OnceLock<GaussRule> = OnceLock::new();
    RULE.get_or_init(|| GaussRule::legendre(8))
}

/// `I^alpha_{a+} f` at every node.
pub fn rl_integral_left(f: &GridFn1D, alpha: FracOrder) -> GridFn1D {
    let values = left_integral(f.grid().nodes(), f.values(), alpha.value());
    GridFn1D::new(f.grid().clone(), values).expect("same grid")
}

/// `I^alpha_{b-} f` at every node.
pub fn rl_integral_right(f: &GridFn1D, alpha: FracOrder) -> GridFn1D {
    rl_integral_left(&f.reflected(), alpha).reflected()
}

/// `D^alpha_{a+} f = d/dx I^{1-alpha}_{a+} f`.
pub fn rl_derivative_left(f: &GridFn1D, alpha: FracOrder) -> Result<GridFn1D> {
    check_diff_grid(f)?;
    if alpha.is_one() {
        return Ok(derivative(f));
    }
    let inner = FracOrder::new(1.0 - alpha.value())?;
    Ok(derivative(&rl_integral_left(f, inner)))
}

/// Right Caputo derivative with the sign convention
/// `D^alpha_{b-} f = -I^{1-alpha}_{b-} f'`, so that `alpha = 1` gives `-f'`.
pub fn caputo_derivative_right(f: &GridFn1D, alpha: FracOrder) -> Result<GridFn1D> {
    check_diff_grid(f)?;
    let df = derivative(f);
    let integrated = if alpha.is_one() {
        df
    } else {
        rl_integral_right(&df, FracOrder::new(1.0 - alpha.value())?)
    };
    Ok(integrated.map(|v| -v))
}

/// The composed operator `D^alpha_{a+} D^alpha_{b-}` (left RL after right
/// Caputo) applied to `f`.
pub fn bvp_operator(f: &GridFn1D, alpha: FracOrder) -> Result<GridFn1D> {
    rl_derivative_left(&caputo_derivative_right(f, alpha)?, alpha)
}

fn check_diff_grid(f: &GridFn1D) -> Result<()> {
    if f.grid().len() < MIN_DIFF_NODES {
        return param(format!(
            "differentiation needs at least {MIN_DIFF_NODES} nodes, got {}",
            f.grid().len()
        ));
    }
    Ok(())
}

/// Second-order first derivative on a nonuniform grid.
pub fn derivative(f: &GridFn1D) -> GridFn1D {
    let x = f.grid().nodes();
    let v = f.values();
    let n = x.len();
    let mut d = vec![0.0; n];
    for i in 1..n - 1 {
        let h1 = x[i] - x[i - 1];
        let h2 = x[i + 1] - x[i];
        d[i] = -h2 / (h1 * (h1 + h2)) * v[i - 1]
            + (h2 - h1) / (h1 * h2) * v[i]
            + h1 / (h2 * (h1 + h2)) * v[i + 1];
    }
    let (h1, h2) = (x[1] - x[0], x[2] - x[1]);
    d[0] = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * v[0] + (h1 + h2) / (h1 * h2) * v[1]
        - h1 / (h2 * (h1 + h2)) * v[2];
    let (h1, h2) = (x[n - 1] - x[n - 2], x[n - 2] - x[n - 3]);
    d[n - 1] = (2.0 * h1 + h2) / (h1 * (h1 + h2)) * v[n - 1] - (h1 + h2) / (h1 * h2) * v[n - 2]
        + h1 / (h2 * (h1 + h2)) * v[n - 3];
    GridFn1D::new(f.grid().clone(), d).expect("same grid")
}

fn left_integral(x: &[f64], f: &[f64], alpha: f64) -> Vec<f64> {
    let n = x.len();
    let scale = 1.0 / gamma(alpha);
    let mut out = vec![0.0; n];
    for k in 1..n {
        let mut acc = 0.0;
        for j in 0..k {
            let (wl, wr) = hat_weights(x[k] - x[j + 1], x[k] - x[j], alpha);
            acc += wl * f[j] + wr * f[j + 1];
        }
        out[k] = scale * acc;
    }
    out
}

/// Integrals of `tau^(alpha-1)` against the two hat functions of the panel
/// `tau in [near, far]`: the left hat is 1 at `tau = far`, the right hat is 1
/// at `tau = near`.
fn hat_weights(near: f64, far: f64, alpha: f64) -> (f64, f64) {
    let h = far - near;
    if near < 2.0 * h {
        let p0 = (far.powf(alpha) - near.powf(alpha)) / alpha;
        let p1 = (far.powf(alpha + 1.0) - near.powf(alpha + 1.0)) / (alpha + 1.0);
        ((p1 - near * p0) / h, (far * p0 - p1) / h)
    } else {
        // Far panels: the kernel is smooth, and the closed form would cancel.
        let rule = panel_rule();
        let c = 0.5 * (near + far);
        let r = 0.5 * h;
        let mut wl = 0.0;
        let mut wr = 0.0;
        for (z, w) in rule.nodes.iter().zip(&rule.weights) {
            let k = w * (c + r * z).powf(alpha - 1.0);
            wl += k * 0.5 * (1.0 + z);
            wr += k * 0.5 * (1.0 - z);
        }
        (r * wl, r * wr)
    }
}
