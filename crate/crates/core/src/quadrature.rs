//! Gauss–Jacobi rules on `[-1, 1]` for the weight `(1 - x)^a (1 + x)^b`,
//! built by the Golub–Welsch method. `a = b = 0` gives Gauss–Legendre.

use statrs::function::gamma::ln_gamma;

use crate::linalg::{jacobi_eigen, SymMatrix};

#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn legendre(n: usize) -> Self {
        Self::jacobi(n, 0.0, 0.0)
    }

    /// `n`-point rule exact for `p(x) (1-x)^a (1+x)^b`, `deg p <= 2n - 1`.
    pub fn jacobi(n: usize, a: f64, b: f64) -> Self {
        assert!(n >= 1 && a > -1.0 && b > -1.0, "invalid Gauss-Jacobi parameters");
        let ab = a + b;
        // Three-term recurrence coefficients of the monic Jacobi polynomials.
        let diag: Vec<f64> = (0..n)
            .map(|k| {
                let k = k as f64;
                let d = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
                if d == 0.0 {
                    (b - a) / (ab + 2.0)
                } else {
                    (b * b - a * a) / d
                }
            })
            .collect();
        let off: Vec<f64> = (1..n)
            .map(|k| {
                if k == 1 {
                    return (4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))).sqrt();
                }
                let k = k as f64;
                let s = 2.0 * k + ab;
                (4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0))).sqrt()
            })
            .collect();
        let jm = SymMatrix::from_fn(n, |i, j| {
            if i == j {
                diag[i]
            } else if i + 1 == j {
                off[i]
            } else if j + 1 == i {
                off[j]
            } else {
                0.0
            }
        });
        let mu0 = ((ab + 1.0) * std::f64::consts::LN_2 + ln_gamma(a + 1.0) + ln_gamma(b + 1.0)
            - ln_gamma(ab + 2.0))
        .exp();
        let eig = jacobi_eigen(&jm, 1e-15).expect("tridiagonal Jacobi matrix diagonalizes");
        let weights = eig.vectors.iter().map(|v| mu0 * v[0] * v[0]).collect();
        Self {
            nodes: eig.values,
            weights,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Integral of `f` over `[lo, hi]` with the plain Legendre rule.
    pub fn integrate(&self, lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> f64 {
        let c = 0.5 * (hi + lo);
        let r = 0.5 * (hi - lo);
        r * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(c + r * x))
            .sum::<f64>()
    }
}
