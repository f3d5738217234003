//! Dense symmetric matrices: cyclic Jacobi eigendecomposition and Cholesky
//! factorization.

use crate::error::{Error, Result};

/// Dense square matrix stored row-major. Callers keep it symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(n: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n * n, "row-major data has wrong length");
        Self { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Replace `A` by `(A + A^T) / 2`.
    pub fn symmetrize(&mut self) {
        let n = self.n;
        for i in 0..n {
            for j in i + 1..n {
                let v = 0.5 * (self.data[i * n + j] + self.data[j * n + i]);
                self.data[i * n + j] = v;
                self.data[j * n + i] = v;
            }
        }
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (i + 1..n).all(|j| self.data[i * n + j] == self.data[j * n + i]))
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let n = self.n;
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += self.data[i * n + j] * self.data[i * n + j];
                }
            }
        }
        s.sqrt()
    }
}

/// Full eigendecomposition of a symmetric matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector for `values[k]`.
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
}

pub const JACOBI_MAX_SWEEPS: usize = 50;

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
/// `tol * ||A||_F`.
///
/// Each sweep visits every pair `(p, q)` once, in round-robin order: a round
/// is a set of disjoint pairs whose rotations commute, so the round is applied
/// as `A <- J^T A J` with two passes of contiguous row operations.
pub fn jacobi_eigen(matrix: &SymMatrix, tol: f64) -> Result<SymEigen> {
    let n = matrix.size();
    let mut a = matrix.clone();
    // Rows of `vt` are the columns of the accumulated rotation V.
    let mut vt = SymMatrix::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 });
    let scale = a.frobenius_norm();
    if n < 2 || scale == 0.0 {
        return Ok(finish(a, vt, 0));
    }
    let target = tol * scale;

    // Circle-method schedule; an odd size gets a dummy slot `n` that sits out.
    let slots = n + n % 2;
    let mut ring: Vec<usize> = (0..slots).collect();
    let mut rotations: Vec<(usize, usize, f64, f64)> = Vec::with_capacity(slots / 2);

    for sweep in 0..JACOBI_MAX_SWEEPS {
        if a.off_diagonal_norm() <= target {
            return Ok(finish(a, vt, sweep));
        }
        for _round in 0..slots - 1 {
            rotations.clear();
            for i in 0..slots / 2 {
                let (p, q) = (ring[i].min(ring[slots - 1 - i]), ring[i].max(ring[slots - 1 - i]));
                if q >= n {
                    continue;
                }
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let theta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                rotations.push((p, q, c, t * c));
            }
            if !rotations.is_empty() {
                apply_round(&mut a, &mut vt, &rotations);
            }
            ring[1..].rotate_right(1);
        }
    }
    if a.off_diagonal_norm() <= target {
        return Ok(finish(a, vt, JACOBI_MAX_SWEEPS));
    }
    Err(Error::Numerical(format!(
        "Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps"
    )))
}

fn rotate_pair(x: &mut [f64], y: &mut [f64], c: f64, s: f64) {
    for (xk, yk) in x.iter_mut().zip(y.iter_mut()) {
        let (u, v) = (*xk, *yk);
        *xk = c * u - s * v;
        *yk = s * u + c * v;
    }
}

fn two_rows(data: &mut [f64], n: usize, p: usize, q: usize) -> (&mut [f64], &mut [f64]) {
    debug_assert!(p < q);
    let (lo, hi) = data.split_at_mut(q * n);
    (&mut lo[p * n..(p + 1) * n], &mut hi[..n])
}

fn apply_round(a: &mut SymMatrix, vt: &mut SymMatrix, rotations: &[(usize, usize, f64, f64)]) {
    let n = a.n;
    // A J: every row mixes its entries p and q.
    let mix = |row: &mut [f64]| {
        for &(p, q, c, s) in rotations {
            let (u, v) = (row[p], row[q]);
            row[p] = c * u - s * v;
            row[q] = s * u + c * v;
        }
    };
    a.data.chunks_exact_mut(n).for_each(mix);
    // J^T (A J): rows p and q mix.
    for &(p, q, c, s) in rotations {
        let (rp, rq) = two_rows(&mut a.data, n, p, q);
        rotate_pair(rp, rq, c, s);
        a.data[p * n + q] = 0.0;
        a.data[q * n + p] = 0.0;
        let (rp, rq) = two_rows(&mut vt.data, n, p, q);
        rotate_pair(rp, rq, c, s);
    }
}

fn finish(a: SymMatrix, vt: SymMatrix, sweeps: usize) -> SymEigen {
    let n = a.n;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).total_cmp(&a.get(j, j)));
    SymEigen {
        values: order.iter().map(|&i| a.get(i, i)).collect(),
        vectors: order.iter().map(|&i| vt.row(i).to_vec()).collect(),
        sweeps,
    }
}

/// Lower-triangular Cholesky factor `L` with `A = L L^T`.
#[derive(Debug, Clone)]
pub struct Cholesky {
    n: usize,
    l: Vec<f64>,
}

impl Cholesky {
    pub fn factor(a: &SymMatrix) -> Result<Self> {
        let n = a.size();
        let mut l = vec![0.0; n * n];
        for j in 0..n {
            let mut d = a.get(j, j);
            for k in 0..j {
                d -= l[j * n + k] * l[j * n + k];
            }
            if !(d > 0.0) {
                return Err(Error::Numerical(format!(
                    "matrix is not positive definite (pivot {j} = {d:e})"
                )));
            }
            let d = d.sqrt();
            l[j * n + j] = d;
            let (upper, lower) = l.split_at_mut((j + 1) * n);
            let lj = &upper[j * n..j * n + j];
            for i in j + 1..n {
                let li = &mut lower[(i - j - 1) * n..(i - j) * n];
                let dot: f64 = li[..j].iter().zip(lj).map(|(x, y)| x * y).sum();
                li[j] = (a.get(i, j) - dot) / d;
            }
        }
        Ok(Self { n, l })
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y = b.to_vec();
        for i in 0..n {
            let row = &self.l[i * n..i * n + i];
            let s: f64 = row.iter().zip(&y[..i]).map(|(a, b)| a * b).sum();
            y[i] = (y[i] - s) / self.l[i * n + i];
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|k| self.l[k * n + i] * y[k]).sum();
            y[i] = (y[i] - s) / self.l[i * n + i];
        }
        y
    }
}

pub(crate) fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub(crate) fn norm2(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}
