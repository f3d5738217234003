//! Cell-level rearrangements: symmetric-decreasing rearrangement of grid
//! functions, Schwarz and Steiner symmetrization of masks, and layer-cake
//! decompositions.
//!
//! Every operation permutes cells, so equimeasurability and norm
//! preservation hold exactly. Ties (equal distances, equal values) resolve to
//! the lower index.

use crate::error::{param, Error, Result};
use crate::fraclap::fraclap_matrix_1d;
use crate::grid::GridFn1D;
use crate::mask::{DomainMask2D, GridFn2D};

/// Symmetric-decreasing rearrangement on a uniform grid: the largest value
/// lands on the node nearest the midpoint, then values alternate outward,
/// left before right.
pub fn rearrange_1d(f: &GridFn1D) -> Result<GridFn1D> {
    if !f.grid().is_uniform(1e-9) {
        return param("rearrangement needs a uniform grid");
    }
    if let Some(v) = f.values().iter().find(|v| !(**v >= 0.0)) {
        return Err(Error::Domain(format!("rearrangement needs nonnegative values, found {v}")));
    }
    let n = f.values().len();
    let mut slots: Vec<usize> = (0..n).collect();
    // |2i - (n-1)| is twice the distance to the midpoint, in index units.
    slots.sort_by_key(|&i| ((2 * i).abs_diff(n - 1), i));
    let mut sorted = f.values().to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut out = vec![0.0; n];
    for (slot, v) in slots.into_iter().zip(sorted) {
        out[slot] = v;
    }
    GridFn1D::new(f.grid().clone(), out)
}

/// Replace a domain by the quasi-disk with the same number of cells, centered
/// on the center of the input grid.
pub fn schwarz_set_2d(mask: &DomainMask2D) -> Result<DomainMask2D> {
    let disk = DomainMask2D::disk(mask.count(), mask.h())?;
    let h = mask.h();
    let (ox, oy) = mask.origin();
    let cx = ox + 0.5 * mask.cols() as f64 * h;
    let cy = oy + 0.5 * mask.rows() as f64 * h;
    let origin = (cx - 0.5 * disk.cols() as f64 * h, cy - 0.5 * disk.rows() as f64 * h);
    Ok(disk.with_origin(origin))
}

/// Which family of slices is symmetrized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// Rows: cells move along x, symmetric about the middle column.
    X = 1,
    /// Columns: cells move along y, symmetric about the middle row.
    Y = 2,
}

impl TryFrom<u8> for Axis {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            1 => Ok(Axis::X),
            2 => Ok(Axis::Y),
            _ => param(format!("axis must be 1 or 2, got {v}")),
        }
    }
}

/// Steiner symmetrization: every slice along `axis` becomes a centered run
/// with the same number of cells.
pub fn steiner_2d(mask: &DomainMask2D, axis: Axis) -> Result<DomainMask2D> {
    let (rows, cols) = (mask.rows(), mask.cols());
    let mut cells = vec![false; rows * cols];
    match axis {
        Axis::X => {
            for r in 0..rows {
                let k = (0..cols).filter(|&c| mask.get(r, c)).count();
                let start = (cols - k) / 2;
                for c in start..start + k {
                    cells[r * cols + c] = true;
                }
            }
        }
        Axis::Y => {
            for c in 0..cols {
                let k = (0..rows).filter(|&r| mask.get(r, c)).count();
                let start = (rows - k) / 2;
                for r in start..start + k {
                    cells[r * cols + c] = true;
                }
            }
        }
    }
    DomainMask2D::new(mask.h(), mask.origin(), rows, cols, cells)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelSet {
    pub threshold: f64,
    /// Height of the slab this level contributes to the reconstruction.
    pub thickness: f64,
    /// Superlevel set `{f > threshold}`, row-major.
    pub cells: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelSetDecomposition {
    pub h: f64,
    pub rows: usize,
    pub cols: usize,
    /// Thresholds ascending; sets nested decreasing.
    pub levels: Vec<LevelSet>,
}

impl LevelSetDecomposition {
    pub fn thresholds(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.threshold).collect()
    }

    /// The superlevel set of level `k` as a mask, `None` when it is empty.
    pub fn mask(&self, k: usize) -> Option<DomainMask2D> {
        DomainMask2D::new(self.h, (0.0, 0.0), self.rows, self.cols, self.levels[k].cells.clone()).ok()
    }

    /// `sum_k thickness_k * chi_k`.
    pub fn reconstruct(&self) -> GridFn2D {
        let mut vals = vec![0.0; self.rows * self.cols];
        for l in &self.levels {
            for (v, &inside) in vals.iter_mut().zip(&l.cells) {
                if inside {
                    *v += l.thickness;
                }
            }
        }
        GridFn2D::new(self.h, self.rows, self.cols, vals).expect("matching size")
    }
}

/// Superlevel sets at `levels` equally spaced thresholds `k max / levels`.
/// Reconstruction overshoots `f` by less than `max / levels`.
pub fn layer_cake(f: &GridFn2D, levels: usize) -> Result<LevelSetDecomposition> {
    if levels < 2 {
        return param(format!("layer cake needs at least 2 levels, got {levels}"));
    }
    if let Some(v) = f.values.iter().find(|v| !(**v >= 0.0)) {
        return Err(Error::Domain(format!("layer cake needs nonnegative values, found {v}")));
    }
    let top = f.max();
    let make = |threshold: f64, thickness: f64| LevelSet {
        threshold,
        thickness,
        cells: f.values.iter().map(|&v| v > threshold).collect(),
    };
    let positive: Vec<f64> = f.values.iter().copied().filter(|&v| v > 0.0).collect();
    let single = positive.is_empty() || positive.iter().all(|&v| v == top);
    let levels = if single {
        vec![make(0.0, top)]
    } else {
        let step = top / levels as f64;
        (0..levels).map(|k| make(k as f64 * step, step)).collect()
    };
    Ok(LevelSetDecomposition {
        h: f.h,
        rows: f.rows,
        cols: f.cols,
        levels,
    })
}

/// `v^T A v / v^T v` of the interior values of `f` with the 1D fractional
/// Laplacian on the same uniform grid (`f` vanishes at both endpoints).
pub fn fractional_rayleigh_quotient(f: &GridFn1D, s: f64) -> Result<f64> {
    let n = f.grid().len();
    if n < 3 {
        return param("grid too small");
    }
    let length = f.grid().b() - f.grid().a();
    let m = fraclap_matrix_1d(n - 2, s, length)?;
    Ok(m.rayleigh_quotient(&f.values()[1..n - 1]))
}
