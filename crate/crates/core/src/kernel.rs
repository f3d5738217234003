//! The kernels of the integral equation equivalent to the Dirichlet problem
//! for `D^alpha_{a+} D^alpha_{b-}`:
//!
//! ```text
//! K(x,t) = 1/Gamma(alpha)^2 * Int_{max(x,t)}^{b} (s-x)^(alpha-1) (s-t)^(alpha-1) ds
//! G(x,t) = K(x,t) - K(a,t) K(x,a) / K(a,a)
//! ```
//!
//! Off the diagonal `K` is evaluated with `u = s - max(x,t)`, which leaves
//! `Int_0^L u^(alpha-1) (u+d)^(alpha-1) du`, `d = |x - t|`. The panel `[0, d]`
//! carries the algebraic endpoint singularity and is handled by a Gauss–Jacobi
//! rule with weight `u^(alpha-1)`; the rest is covered by geometrically growing
//! Gauss–Legendre panels. Every value comes with an order-doubling error
//! estimate. On the diagonal the closed form
//! `K(x,x) = (b-x)^(2 alpha-1) / (Gamma(alpha)^2 (2 alpha-1))` is used.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::error::{param, Error, Result};
use crate::grid::FracOrder;
use crate::quadrature::GaussRule;

/// Base order of the kernel rules; the error estimate compares against twice
/// this many points.
const BASE_POINTS: usize = 12;

/// Samples in the bracketing scan that precedes the golden-section search.
pub const SUP_SCAN_SAMPLES: usize = 64;

/// Fractional order and interval of the boundary-value problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelParams {
    alpha: FracOrder,
    a: f64,
    b: f64,
}

impl KernelParams {
    pub fn new(alpha: f64, a: f64, b: f64) -> Result<Self> {
        let alpha = FracOrder::for_bvp(alpha)?;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return param(format!("interval ({a}, {b}) must be finite with a < b"));
        }
        Ok(Self { alpha, a, b })
    }

    pub fn alpha(&self) -> FracOrder {
        self.alpha
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    pub fn with_interval(&self, a: f64, b: f64) -> Result<Self> {
        Self::new(self.alpha.value(), a, b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelEval {
    pub x: f64,
    pub t: f64,
    pub value: f64,
    pub abs_error_estimate: f64,
}

/// Maximizer and value of `x -> G(x,x)` over `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagSup {
    pub x_star: f64,
    pub value: f64,
}

/// Kernel evaluator with precomputed quadrature rules for one parameter set.
#[derive(Debug, Clone)]
pub struct GreenKernel {
    params: KernelParams,
    inv_gamma_sq: f64,
    k_aa: f64,
    jacobi: [GaussRule; 2],
    legendre: [GaussRule; 2],
}

impl GreenKernel {
    pub fn new(params: KernelParams) -> Self {
        let alpha = params.alpha.value();
        let g = gamma(alpha);
        let beta = alpha - 1.0;
        let mut kernel = Self {
            params,
            inv_gamma_sq: 1.0 / (g * g),
            k_aa: 0.0,
            jacobi: [
                GaussRule::jacobi(BASE_POINTS, 0.0, beta),
                GaussRule::jacobi(2 * BASE_POINTS, 0.0, beta),
            ],
            legendre: [GaussRule::legendre(BASE_POINTS), GaussRule::legendre(2 * BASE_POINTS)],
        };
        kernel.k_aa = kernel.k_diag(params.a);
        kernel
    }

    pub fn params(&self) -> &KernelParams {
        &self.params
    }

    /// `K(a,a) = (b-a)^(2 alpha-1) / (Gamma(alpha)^2 (2 alpha-1))`.
    pub fn k_aa(&self) -> f64 {
        self.k_aa
    }

    /// Closed-form diagonal value `K(x,x)`.
    pub fn k_diag(&self, x: f64) -> f64 {
        let alpha = self.params.alpha.value();
        let e = 2.0 * alpha - 1.0;
        (self.params.b - x).max(0.0).powf(e) * self.inv_gamma_sq / e
    }

    fn check(&self, x: f64, t: f64) -> Result<()> {
        let KernelParams { a, b, .. } = self.params;
        for (name, v) in [("x", x), ("t", t)] {
            if !(v >= a && v <= b) {
                return Err(Error::Domain(format!("{name} = {v} outside [{a}, {b}]")));
            }
        }
        Ok(())
    }

    pub fn eval_k(&self, x: f64, t: f64) -> Result<KernelEval> {
        self.check(x, t)?;
        let (value, err) = self.k_unchecked(x, t);
        Ok(KernelEval {
            x,
            t,
            value,
            abs_error_estimate: err,
        })
    }

    pub fn eval_g(&self, x: f64, t: f64) -> Result<KernelEval> {
        self.check(x, t)?;
        let (value, err) = self.g_unchecked(x, t);
        Ok(KernelEval {
            x,
            t,
            value,
            abs_error_estimate: err,
        })
    }

    /// `G(x,t)` given a cached `K(a, .)` row; used by matrix assembly.
    pub(crate) fn g_with_boundary_row(&self, x: f64, t: f64, k_ax: (f64, f64), k_at: (f64, f64)) -> (f64, f64) {
        let (kxt, ekxt) = self.k_unchecked(x, t);
        let corr = k_at.0 * k_ax.0 / self.k_aa;
        let ecorr = (k_at.1 * k_ax.0.abs() + k_ax.1 * k_at.0.abs()) / self.k_aa;
        (kxt - corr, ekxt + ecorr)
    }

    pub(crate) fn g_unchecked(&self, x: f64, t: f64) -> (f64, f64) {
        let a = self.params.a;
        let k_ax = self.k_unchecked(a, x);
        let k_at = self.k_unchecked(a, t);
        self.g_with_boundary_row(x, t, k_ax, k_at)
    }

    /// `G(x,x) = K(x,x) - K(a,x)^2 / K(a,a)`.
    pub fn g_diag(&self, x: f64) -> f64 {
        let k = self.k_unchecked(self.params.a, x).0;
        self.k_diag(x) - k * k / self.k_aa
    }

    pub(crate) fn k_unchecked(&self, x: f64, t: f64) -> (f64, f64) {
        if x == t {
            return (self.k_diag(x), 0.0);
        }
        let m = x.max(t);
        let d = (x - t).abs();
        let len = self.params.b - m;
        if len <= 0.0 {
            return (0.0, 0.0);
        }
        if self.params.alpha.is_one() {
            return (len, 0.0);
        }
        let lo = self.offdiag_integral(d, len, 0);
        let hi = self.offdiag_integral(d, len, 1);
        (hi * self.inv_gamma_sq, (hi - lo).abs() * self.inv_gamma_sq)
    }

    /// `Int_0^len u^(alpha-1) (u+d)^(alpha-1) du` with rule level `level`.
    fn offdiag_integral(&self, d: f64, len: f64, level: usize) -> f64 {
        let alpha = self.params.alpha.value();
        let beta = alpha - 1.0;
        let first = d.min(len);
        // Map [0, first] to [-1, 1]: u = first (1 + z) / 2.
        let half = 0.5 * first;
        let jr = &self.jacobi[level];
        let mut total = half.powf(alpha)
            * jr.nodes
                .iter()
                .zip(&jr.weights)
                .map(|(z, w)| w * (half * (1.0 + z) + d).powf(beta))
                .sum::<f64>();
        let lr = &self.legendre[level];
        let mut lo = first;
        while lo < len {
            let hi = (2.0 * lo).min(len);
            total += lr.integrate(lo, hi, |u| (u * (u + d)).powf(beta));
            lo = hi;
        }
        total
    }

    /// Maximize `G(x,x)` over `(a,b)`: a uniform scan brackets the peak, then
    /// golden-section search narrows it to `1e-10 (b-a)`.
    pub fn sup_g_diag(&self) -> DiagSup {
        let KernelParams { a, b, .. } = self.params;
        let len = b - a;
        let step = len / SUP_SCAN_SAMPLES as f64;
        let mut best = (a, f64::NEG_INFINITY);
        for i in 1..SUP_SCAN_SAMPLES {
            let x = a + step * i as f64;
            let v = self.g_diag(x);
            if v > best.1 {
                best = (x, v);
            }
        }
        let (mut lo, mut hi) = ((best.0 - step).max(a), (best.0 + step).min(b));
        let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
        let mut c = hi - inv_phi * (hi - lo);
        let mut dd = lo + inv_phi * (hi - lo);
        let mut fc = self.g_diag(c);
        let mut fd = self.g_diag(dd);
        while hi - lo > 1e-10 * len {
            if fc > fd {
                hi = dd;
                dd = c;
                fd = fc;
                c = hi - inv_phi * (hi - lo);
                fc = self.g_diag(c);
            } else {
                lo = c;
                c = dd;
                fc = fd;
                dd = lo + inv_phi * (hi - lo);
                fd = self.g_diag(dd);
            }
        }
        let x_star = 0.5 * (lo + hi);
        let mut out = DiagSup {
            x_star,
            value: self.g_diag(x_star),
        };
        if best.1 > out.value {
            out = DiagSup {
                x_star: best.0,
                value: best.1,
            };
        }
        out
    }
}

pub fn eval_k(p: &KernelParams, x: f64, t: f64) -> Result<KernelEval> {
    GreenKernel::new(*p).eval_k(x, t)
}

pub fn eval_g(p: &KernelParams, x: f64, t: f64) -> Result<KernelEval> {
    GreenKernel::new(*p).eval_g(x, t)
}

pub fn sup_g_diag(p: &KernelParams) -> DiagSup {
    GreenKernel::new(*p).sup_g_diag()
}

/// Diagonal value `K(x,x)` by quadrature, independent of the closed form.
/// The integrand `u^(2 alpha - 2)` is self-similar under `u -> u/2`, so
/// `Int_0^L = P / (1 - 2^(1 - 2 alpha))` where `P` is the Gauss–Legendre
/// integral over the smooth panel `[L/2, L]`.
pub fn k_diag_quadrature(p: &KernelParams, x: f64) -> Result<KernelEval> {
    if !(x >= p.a && x <= p.b) {
        return Err(Error::Domain(format!("x = {x} outside [{}, {}]", p.a, p.b)));
    }
    let alpha = p.alpha.value();
    let g = gamma(alpha);
    let len = p.b - x;
    let ratio = 2f64.powf(1.0 - 2.0 * alpha);
    let rule = |n: usize| {
        let panel = GaussRule::legendre(n).integrate(0.5 * len, len, |u| u.powf(2.0 * alpha - 2.0));
        panel / (1.0 - ratio) / (g * g)
    };
    let lo = rule(BASE_POINTS);
    let hi = if len > 0.0 { rule(2 * BASE_POINTS) } else { 0.0 };
    Ok(KernelEval {
        x,
        t: x,
        value: hi,
        abs_error_estimate: (hi - lo).abs(),
    })
}
