//! Rectangular sampling grids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One axis: `len` points at `min + i * step`.
///
/// For periodic use the period is `len * step`; the point `min + len * step`
/// is identified with `min`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub min: f64,
    pub step: f64,
    pub len: usize,
}

impl Axis {
    pub fn new(min: f64, step: f64, len: usize) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::InvalidGrid(format!("step must be positive, got {step}")));
        }
        if len == 0 {
            return Err(Error::InvalidGrid("axis with zero points".into()));
        }
        Ok(Axis { min, step, len })
    }

    /// `len` points covering `[lo, hi)` periodically.
    pub fn periodic(lo: f64, hi: f64, len: usize) -> Result<Self> {
        if !(hi > lo) {
            return Err(Error::InvalidGrid(format!("empty interval [{lo}, {hi})")));
        }
        Axis::new(lo, (hi - lo) / len as f64, len)
    }

    /// `len` points covering `[lo, hi]` including both endpoints.
    pub fn closed(lo: f64, hi: f64, len: usize) -> Result<Self> {
        if len < 2 || !(hi > lo) {
            return Err(Error::InvalidGrid(format!("closed axis needs >= 2 points on [{lo}, {hi}]")));
        }
        Axis::new(lo, (hi - lo) / (len - 1) as f64, len)
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.min + i as f64 * self.step
    }

    pub fn period(&self) -> f64 {
        self.len as f64 * self.step
    }

    /// Trapezoid weight for a closed axis.
    pub fn trapezoid_weight(&self, i: usize) -> f64 {
        if i == 0 || i + 1 == self.len {
            0.5 * self.step
        } else {
            self.step
        }
    }
}

/// Row-major multi-axis grid (last axis fastest).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    axes: Vec<Axis>,
}

impl Grid {
    pub fn new(axes: Vec<Axis>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::InvalidGrid("grid without axes".into()));
        }
        Ok(Grid { axes })
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn axis(&self, k: usize) -> &Axis {
        &self.axes[k]
    }

    pub fn ndim(&self) -> usize {
        self.axes.len()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn stride(&self, k: usize) -> usize {
        self.axes[k + 1..].iter().map(|a| a.len).product()
    }

    pub fn unravel(&self, mut flat: usize, out: &mut [usize]) {
        for k in (0..self.axes.len()).rev() {
            let n = self.axes[k].len;
            out[k] = flat % n;
            flat /= n;
        }
    }

    pub fn ravel(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.axes).fold(0, |acc, (&i, a)| acc * a.len + i)
    }

    pub fn coords(&self, flat: usize) -> Vec<f64> {
        let mut idx = vec![0; self.ndim()];
        self.unravel(flat, &mut idx);
        idx.iter().zip(&self.axes).map(|(&i, a)| a.coord(i)).collect()
    }

    /// Flat index of the periodic neighbour `offset` steps along axis `k`.
    pub fn shifted(&self, flat: usize, k: usize, offset: isize) -> usize {
        let stride = self.stride(k);
        let n = self.axes[k].len as isize;
        let i = (flat / stride) as isize % n;
        let j = (i + offset).rem_euclid(n);
        (flat as isize + (j - i) * stride as isize) as usize
    }

    pub fn require_min_points(&self, min: usize) -> Result<()> {
        for (k, a) in self.axes.iter().enumerate() {
            if a.len < min {
                return Err(Error::GridTooSmall { axis: k, len: a.len, min });
            }
        }
        Ok(())
    }

    pub fn cell_volume(&self) -> f64 {
        self.axes.iter().map(|a| a.step).product()
    }
}

/// Multilinear interpolation weights on a periodic grid: `(flat index, weight)` pairs.
pub fn periodic_stencil(grid: &Grid, point: &[f64]) -> Vec<(usize, f64)> {
    let d = grid.ndim();
    let mut base = vec![0usize; d];
    let mut frac = vec![0.0; d];
    for k in 0..d {
        let a = grid.axis(k);
        let t = (point[k] - a.min) / a.step;
        let fl = t.floor();
        frac[k] = t - fl;
        base[k] = (fl as i64).rem_euclid(a.len as i64) as usize;
    }
    let mut out = Vec::with_capacity(1 << d);
    let mut idx = vec![0usize; d];
    for corner in 0..(1usize << d) {
        let mut w = 1.0;
        for k in 0..d {
            let up = corner >> k & 1 == 1;
            let n = grid.axis(k).len;
            idx[k] = if up { (base[k] + 1) % n } else { base[k] };
            w *= if up { frac[k] } else { 1.0 - frac[k] };
        }
        if w != 0.0 {
            out.push((grid.ravel(&idx), w));
        }
    }
    out
}
