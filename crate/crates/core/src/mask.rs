//! Planar domains described cell by cell, and functions sampled on them.
//!
//! Text format:
//!
//! ```text
//! h=0.0625
//! 0110
//! 1111
//! ```
//!
//! The header gives the cell width; each following line is one row of cells
//! (`1` inside, `0` outside). Line `r` holds row `r`, whose cell centers sit at
//! `y = origin.1 + (r + 1/2) h`.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{param, Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct DomainMask2D {
    h: f64,
    origin: (f64, f64),
    rows: usize,
    cols: usize,
    cells: Vec<bool>,
}

impl DomainMask2D {
    pub fn new(h: f64, origin: (f64, f64), rows: usize, cols: usize, cells: Vec<bool>) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return param(format!("cell width {h} must be positive"));
        }
        if rows == 0 || cols == 0 || cells.len() != rows * cols {
            return param(format!("{} cells for a {rows}x{cols} grid", cells.len()));
        }
        if !cells.iter().any(|&c| c) {
            return param("mask has no interior cells");
        }
        Ok(Self {
            h,
            origin,
            rows,
            cols,
            cells,
        })
    }

    /// Build from row strings of `0`/`1`.
    pub fn from_rows(h: f64, rows: &[&str]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut cells = Vec::with_capacity(rows.len() * cols);
        for (i, line) in rows.iter().enumerate() {
            if line.len() != cols {
                return Err(Error::Format(format!(
                    "row {i} has {} cells, expected {cols}",
                    line.len()
                )));
            }
            for ch in line.chars() {
                cells.push(match ch {
                    '1' => true,
                    '0' => false,
                    other => {
                        return Err(Error::Format(format!("unexpected character {other:?} in row {i}")))
                    }
                });
            }
        }
        Self::new(h, (0.0, 0.0), rows.len(), cols, cells)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Format("empty mask file".into()))?;
        let h: f64 = header
            .strip_prefix("h=")
            .ok_or_else(|| Error::Format(format!("expected `h=<real>` header, got {header:?}")))?
            .trim()
            .parse()
            .map_err(|e| Error::Format(format!("bad cell width in {header:?}: {e}")))?;
        let rows: Vec<&str> = lines.collect();
        if rows.is_empty() {
            return Err(Error::Format("mask file has no rows".into()));
        }
        Self::from_rows(h, &rows).map_err(|e| match e {
            Error::Parameter(m) => Error::Format(m),
            other => other,
        })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "h={}", self.h).unwrap();
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.push(if self.get(r, c) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn origin(&self) -> (f64, f64) {
        self.origin
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.cells[r * self.cols + c]
    }

    pub fn cells(&self) -> &[bool] {
        &self.cells
    }

    pub fn count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn area(&self) -> f64 {
        self.count() as f64 * self.h * self.h
    }

    /// `(row, col)` of the interior cells in row-major order.
    pub fn interior(&self) -> Vec<(usize, usize)> {
        (0..self.rows)
            .flat_map(|r| (0..self.cols).map(move |c| (r, c)))
            .filter(|&(r, c)| self.get(r, c))
            .collect()
    }

    pub fn center_of(&self, r: usize, c: usize) -> (f64, f64) {
        (
            self.origin.0 + (c as f64 + 0.5) * self.h,
            self.origin.1 + (r as f64 + 0.5) * self.h,
        )
    }

    /// Same cells, different cell width (a uniform dilation about the origin).
    pub fn with_h(&self, h: f64) -> Result<Self> {
        Self::new(h, self.origin, self.rows, self.cols, self.cells.clone())
    }

    pub fn without_cell(&self, r: usize, c: usize) -> Result<Self> {
        let mut cells = self.cells.clone();
        cells[r * self.cols + c] = false;
        Self::new(self.h, self.origin, self.rows, self.cols, cells)
    }

    /// Diameter of the bounding box of the interior cells.
    pub fn diameter(&self) -> f64 {
        let inside = self.interior();
        let (r0, r1) = inside.iter().fold((usize::MAX, 0), |(lo, hi), &(r, _)| (lo.min(r), hi.max(r)));
        let (c0, c1) = inside.iter().fold((usize::MAX, 0), |(lo, hi), &(_, c)| (lo.min(c), hi.max(c)));
        let w = (c1 - c0 + 1) as f64 * self.h;
        let t = (r1 - r0 + 1) as f64 * self.h;
        w.hypot(t)
    }

    /// Smallest mask containing every interior cell, origin moved accordingly.
    pub fn cropped(&self) -> Self {
        let inside = self.interior();
        let r0 = inside.iter().map(|p| p.0).min().unwrap();
        let r1 = inside.iter().map(|p| p.0).max().unwrap();
        let c0 = inside.iter().map(|p| p.1).min().unwrap();
        let c1 = inside.iter().map(|p| p.1).max().unwrap();
        let rows = r1 - r0 + 1;
        let cols = c1 - c0 + 1;
        let mut cells = Vec::with_capacity(rows * cols);
        for r in r0..=r1 {
            for c in c0..=c1 {
                cells.push(self.get(r, c));
            }
        }
        Self {
            h: self.h,
            origin: (self.origin.0 + c0 as f64 * self.h, self.origin.1 + r0 as f64 * self.h),
            rows,
            cols,
            cells,
        }
    }

    /// Quasi-disk of exactly `cells` cells: the cells nearest the center of an
    /// even-sided grid, ties broken by `(row, col)`.
    pub fn disk(cells: usize, h: f64) -> Result<Self> {
        if cells == 0 {
            return param("a disk needs at least one cell");
        }
        let side = 2 * ((cells as f64 / std::f64::consts::PI).sqrt().ceil() as usize) + 2;
        let mid = side as f64 / 2.0;
        let mut order: Vec<(f64, usize, usize)> = (0..side)
            .flat_map(|r| (0..side).map(move |c| (r, c)))
            .map(|(r, c)| {
                let dx = c as f64 + 0.5 - mid;
                let dy = r as f64 + 0.5 - mid;
                (dx * dx + dy * dy, r, c)
            })
            .collect();
        order.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
        let mut mask = vec![false; side * side];
        for &(_, r, c) in order.iter().take(cells) {
            mask[r * side + c] = true;
        }
        Ok(Self::new(h, (0.0, 0.0), side, side, mask)?.cropped_at_origin())
    }

    /// Rectangle of `cells` cells with width/height close to `aspect`; when
    /// `cells` does not factor, the remainder forms a centered partial row on
    /// top.
    pub fn quasi_rectangle(cells: usize, aspect: f64, h: f64) -> Result<Self> {
        if cells == 0 || !(aspect >= 1.0) {
            return param(format!("rectangle needs cells > 0 and aspect >= 1 (got {cells}, {aspect})"));
        }
        let height = ((cells as f64 / aspect).sqrt().round() as usize).max(1);
        let width = cells / height;
        let rem = cells - width * height;
        let rows = height + usize::from(rem > 0);
        let mut mask = vec![false; rows * width];
        for r in 0..height {
            for c in 0..width {
                mask[r * width + c] = true;
            }
        }
        if rem > 0 {
            let start = (width - rem) / 2;
            for c in start..start + rem {
                mask[height * width + c] = true;
            }
        }
        Self::new(h, (0.0, 0.0), rows, width, mask)
    }

    /// Right isosceles triangle with legs of `legs` cells (lower-left corner).
    pub fn right_triangle(legs: usize, h: f64) -> Result<Self> {
        let mut mask = vec![false; legs * legs];
        for r in 0..legs {
            for c in 0..legs - r {
                mask[r * legs + c] = true;
            }
        }
        Self::new(h, (0.0, 0.0), legs, legs, mask)
    }

    /// Named shapes with exactly `cells` cells: `disk`, `square`, `rect<k>`.
    pub fn builtin(name: &str, cells: usize, h: f64) -> Result<Self> {
        match name {
            "disk" => Self::disk(cells, h),
            "square" => Self::quasi_rectangle(cells, 1.0, h),
            _ => match name.strip_prefix("rect").map(str::parse::<f64>) {
                Some(Ok(k)) if k >= 1.0 => Self::quasi_rectangle(cells, k, h),
                _ => param(format!("unknown builtin shape {name:?}")),
            },
        }
    }

    fn cropped_at_origin(self) -> Self {
        let mut m = self.cropped();
        m.origin = (0.0, 0.0);
        m
    }

    pub(crate) fn with_origin(mut self, origin: (f64, f64)) -> Self {
        self.origin = origin;
        self
    }
}

/// Values on the cells of a rectangular grid (row-major), typically zero
/// outside a mask.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFn2D {
    pub h: f64,
    pub origin: (f64, f64),
    pub rows: usize,
    pub cols: usize,
    pub values: Vec<f64>,
}

impl GridFn2D {
    pub fn new(h: f64, rows: usize, cols: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != rows * cols {
            return param(format!("{} values for a {rows}x{cols} grid", values.len()));
        }
        Ok(Self {
            h,
            origin: (0.0, 0.0),
            rows,
            cols,
            values,
        })
    }

    pub fn from_fn(h: f64, rows: usize, cols: usize, f: impl Fn(f64, f64) -> f64) -> Self {
        let values = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| (r, c)))
            .map(|(r, c)| f((c as f64 + 0.5) * h, (r as f64 + 0.5) * h))
            .collect();
        Self {
            h,
            origin: (0.0, 0.0),
            rows,
            cols,
            values,
        }
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.values[r * self.cols + c]
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}
