//! Richardson extrapolation from three successive mesh halvings.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Extrapolation {
    /// Limit estimate.
    pub value: f64,
    /// Observed convergence order `p` in `v(h) ~ v* + C h^p`.
    pub order: f64,
    /// `|value - finest|`, the size of the correction applied.
    pub uncertainty: f64,
}

/// Extrapolate from values on meshes `h`, `h/2`, `h/4` (coarse to fine).
/// Returns `None` when the differences do not contract monotonically.
pub fn richardson3(coarse: f64, mid: f64, fine: f64) -> Option<Extrapolation> {
    let d1 = coarse - mid;
    let d2 = mid - fine;
    if d2 == 0.0 {
        return Some(Extrapolation {
            value: fine,
            order: f64::INFINITY,
            uncertainty: 0.0,
        });
    }
    let ratio = d1 / d2;
    if !(ratio > 1.0) {
        return None;
    }
    let order = ratio.log2();
    let value = fine - d2 / (ratio - 1.0);
    Some(Extrapolation {
        value,
        order,
        uncertainty: (value - fine).abs(),
    })
}
