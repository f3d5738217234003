//! One-dimensional grids and sampled functions.

use serde::{Deserialize, Serialize};

use crate::error::{param, Result};

/// Order of a fractional integral or derivative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FracOrder(f64);

impl FracOrder {
    /// Accepts `0 < alpha <= 1`, the range valid for fractional integrals.
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha <= 1.0 {
            Ok(Self(alpha))
        } else {
            param(format!("fractional order {alpha} outside (0, 1]"))
        }
    }

    /// Accepts `1/2 < alpha <= 1`, the range of the boundary-value operator.
    pub fn for_bvp(alpha: f64) -> Result<Self> {
        if alpha > 0.5 && alpha <= 1.0 {
            Ok(Self(alpha))
        } else {
            param(format!("fractional order {alpha} outside (1/2, 1]"))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_one(self) -> bool {
        self.0 == 1.0
    }
}

/// Strictly increasing nodes covering `[a, b]`, endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid1D {
    nodes: Vec<f64>,
}

impl Grid1D {
    pub fn from_nodes(nodes: Vec<f64>) -> Result<Self> {
        if nodes.len() < 3 {
            return param(format!("grid needs at least 3 nodes, got {}", nodes.len()));
        }
        if nodes.iter().any(|x| !x.is_finite()) {
            return param("grid nodes must be finite");
        }
        if nodes.windows(2).any(|w| w[1] <= w[0]) {
            return param("grid nodes must be strictly increasing");
        }
        Ok(Self { nodes })
    }

    pub fn uniform(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a < b) {
            return param(format!("interval ({a}, {b}) is empty"));
        }
        if n < 3 {
            return param(format!("grid needs at least 3 nodes, got {n}"));
        }
        let h = (b - a) / (n - 1) as f64;
        let mut nodes: Vec<f64> = (0..n).map(|i| a + h * i as f64).collect();
        nodes[n - 1] = b;
        Self::from_nodes(nodes)
    }

    /// Nodes clustered toward both endpoints: on each half the reference
    /// coordinate `xi in [0, 1/2]` is mapped to `(2 xi)^exponent / 2`.
    /// `exponent = 1` gives the uniform grid.
    pub fn graded(a: f64, b: f64, n: usize, exponent: f64) -> Result<Self> {
        if !(a < b) {
            return param(format!("interval ({a}, {b}) is empty"));
        }
        if n < 3 {
            return param(format!("grid needs at least 3 nodes, got {n}"));
        }
        if !(exponent >= 1.0) {
            return param(format!("grading exponent {exponent} must be >= 1"));
        }
        let len = b - a;
        let last = (n - 1) as f64;
        let mut nodes = Vec::with_capacity(n);
        for i in 0..n {
            // Mirror the left half so the grid is exactly symmetric.
            let j = i.min(n - 1 - i) as f64;
            let xi = j / last;
            let off = 0.5 * (2.0 * xi).powf(exponent) * len;
            nodes.push(if 2 * i < n { a + off } else { b - off });
        }
        nodes[0] = a;
        nodes[n - 1] = b;
        Self::from_nodes(nodes)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn a(&self) -> f64 {
        self.nodes[0]
    }

    pub fn b(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    /// Composite trapezoid weights; they sum to `b - a`.
    pub fn trapezoid_weights(&self) -> Vec<f64> {
        let x = &self.nodes;
        let n = x.len();
        let mut w = vec![0.0; n];
        for i in 0..n - 1 {
            let h = x[i + 1] - x[i];
            w[i] += 0.5 * h;
            w[i + 1] += 0.5 * h;
        }
        w
    }

    pub fn is_uniform(&self, rel_tol: f64) -> bool {
        let h = (self.b() - self.a()) / (self.len() - 1) as f64;
        self.nodes
            .windows(2)
            .all(|w| ((w[1] - w[0]) - h).abs() <= rel_tol * h)
    }

    /// Reflect `x -> a + b - x`, reversing node order.
    pub fn reflected(&self) -> Self {
        let (a, b) = (self.a(), self.b());
        let mut nodes: Vec<f64> = self.nodes.iter().rev().map(|x| a + b - x).collect();
        let n = nodes.len();
        nodes[0] = a;
        nodes[n - 1] = b;
        Self { nodes }
    }
}

/// Values sampled at the nodes of a [`Grid1D`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridFn1D {
    grid: Grid1D,
    values: Vec<f64>,
}

impl GridFn1D {
    pub fn new(grid: Grid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return param(format!(
                "{} values for a grid of {} nodes",
                values.len(),
                grid.len()
            ));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.nodes().iter().map(|&x| f(x)).collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn trapezoid(&self) -> f64 {
        self.grid
            .trapezoid_weights()
            .iter()
            .zip(&self.values)
            .map(|(w, v)| w * v)
            .sum()
    }

    /// Weighted discrete L2 norm `sqrt(sum w_i v_i^2)` with trapezoid weights.
    pub fn l2_norm(&self) -> f64 {
        self.map(|v| v * v).trapezoid().sqrt()
    }

    pub(crate) fn reflected(&self) -> Self {
        Self {
            grid: self.grid.reflected(),
            values: self.values.iter().rev().copied().collect(),
        }
    }
}
