//! Sampled Clifford-valued functions on `G^{n+1}` and the Segal–Bargmann-type
//! inner product, projections and kernel condition.
//!
//! Integrals over `s` of `s`-periodic integrands are taken as the normalized
//! mean over the sampled `s` box, which must cover whole periods of the
//! characters `e^{2πe_l h_l s_l}`.

use std::f64::consts::PI;

use rayon::prelude::*;

use super::{GalileanElement, PlanckTuple};
use crate::clifford::{CliffordElement, DenseTable, Signature};
use crate::error::{check_dim, Error, Result};
use crate::grid::{Axis, Grid};

/// Samples on a grid with axes `[s₀…s_n, x, y₀…y_n]` (last axis fastest).
#[derive(Clone, Debug)]
pub struct CliffordGridFunction {
    table: DenseTable,
    generators: usize,
    grid: Grid,
    data: Vec<f64>,
}

impl PartialEq for CliffordGridFunction {
    fn eq(&self, other: &Self) -> bool {
        self.table.signature() == other.table.signature() && self.grid == other.grid && self.data == other.data
    }
}

impl CliffordGridFunction {
    /// Grid with `s_l ∈ [0, 1/|h_l|)` (or `[0, 1)` when `h_l = 0`) sampled by
    /// `s_points`, and every `x, y` axis closed on `[lo, hi]` with `xy_points`.
    pub fn standard_grid(h: &PlanckTuple, s_points: usize, lo: f64, hi: f64, xy_points: usize) -> Result<Grid> {
        let mut axes = Vec::new();
        for &hl in &h.h {
            let period = if hl == 0.0 { 1.0 } else { 1.0 / hl.abs() };
            axes.push(Axis::periodic(0.0, period, s_points)?);
        }
        for _ in 0..=h.generators() {
            axes.push(Axis::closed(lo, hi, xy_points)?);
        }
        Grid::new(axes)
    }

    fn generators_of(sig: &Signature, grid: &Grid) -> Result<usize> {
        let g = sig.generators();
        if grid.ndim() != 2 * g + 1 {
            return Err(Error::InvalidGrid(format!(
                "grid has {} axes, expected {} for {} generators",
                grid.ndim(),
                2 * g + 1,
                g
            )));
        }
        Ok(g)
    }

    pub fn zeros(sig: &Signature, grid: Grid) -> Result<Self> {
        let generators = Self::generators_of(sig, &grid)?;
        let table = DenseTable::new(sig);
        let data = vec![0.0; grid.len() * table.width()];
        Ok(CliffordGridFunction { table, generators, grid, data })
    }

    pub fn from_fn(
        sig: &Signature,
        grid: Grid,
        f: impl Fn(&GalileanElement) -> Result<CliffordElement> + Sync,
    ) -> Result<Self> {
        let mut out = Self::zeros(sig, grid)?;
        let w = out.table.width();
        let g = out.generators;
        let grid = &out.grid;
        out.data.par_chunks_mut(w).enumerate().try_for_each(|(flat, chunk)| -> Result<()> {
            let c = grid.coords(flat);
            let pt = GalileanElement { s: c[..g].to_vec(), x: c[g], y: c[g + 1..].to_vec() };
            let v = f(&pt)?;
            if v.signature() != sig {
                return Err(Error::SignatureMismatch);
            }
            chunk.copy_from_slice(&v.to_dense());
            Ok(())
        })?;
        Ok(out)
    }

    pub fn signature(&self) -> &Signature {
        self.table.signature()
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn value(&self, flat: usize) -> CliffordElement {
        CliffordElement::from_dense(self.signature(), self.dense(flat))
    }

    fn dense(&self, flat: usize) -> &[f64] {
        let w = self.table.width();
        &self.data[flat * w..(flat + 1) * w]
    }

    fn s_count(&self) -> usize {
        self.grid.axes()[..self.generators].iter().map(|a| a.len).product()
    }

    fn xy_count(&self) -> usize {
        self.grid.len() / self.s_count()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.signature() != other.signature() {
            return Err(Error::SignatureMismatch);
        }
        if self.grid != other.grid {
            return Err(Error::InvalidGrid("operands sampled on different grids".into()));
        }
        Ok(())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same(other)?;
        Ok(self.data.iter().zip(&other.data).fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.data.iter_mut().zip(&other.data).for_each(|(a, b)| *a += b);
        Ok(out)
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut out = self.clone();
        out.data.iter_mut().for_each(|a| *a *= k);
        out
    }

    /// Dense `exp(±2π e_j h_j s_j)` for every `s` sample.
    fn characters(&self, j: usize, hj: f64, sign: f64) -> Vec<Vec<f64>> {
        let m = self.xy_count();
        (0..self.s_count())
            .map(|k| {
                let sj = self.grid.coords(k * m)[j];
                self.table.blade_exp(j, sign * 2.0 * PI * hj * sj)
            })
            .collect()
    }

    fn check_period(&self, l: usize, hl: f64) -> Result<()> {
        if hl == 0.0 {
            return Ok(());
        }
        let cycles = self.grid.axis(l).period() * hl.abs();
        if cycles < 0.5 || (cycles - cycles.round()).abs() > 1e-9 {
            return Err(Error::InvalidGrid(format!(
                "s-axis {l} covers {cycles} periods of the h = {hl} character; need a whole number"
            )));
        }
        Ok(())
    }

    /// `mean_s f(s, ·) · chars(s)` at one `(x, y)` sample.
    fn s_mean_right(&self, xy: usize, chars: &[Vec<f64>]) -> Vec<f64> {
        let m = self.xy_count();
        let mut acc = vec![0.0; self.table.width()];
        for (k, ch) in chars.iter().enumerate() {
            self.table.mul_acc(self.dense(k * m + xy), ch, &mut acc);
        }
        let n = chars.len() as f64;
        acc.iter_mut().for_each(|v| *v /= n);
        acc
    }

    fn xy_weight(&self, xy: usize) -> f64 {
        let g = self.generators;
        let mut idx = vec![0usize; self.grid.ndim()];
        self.grid.unravel(xy, &mut idx);
        self.grid.axes()[g..].iter().zip(&idx[g..]).map(|(a, &i)| a.trapezoid_weight(i)).product()
    }
}

/// `Σ_j h_j ∫∫ (⟨f̄₁ e^{2πe_j h_j s_j}⟩_s)(⟨e^{−2πe_j h_j s_j} f₂⟩_s) dx dy`, with `f̄`
/// the Clifford conjugate and `⟨·⟩_s` the period mean.
pub fn inner_product(h: &PlanckTuple, f1: &CliffordGridFunction, f2: &CliffordGridFunction) -> Result<CliffordElement> {
    f1.check_same(f2)?;
    check_dim(f1.generators, h.generators())?;
    for (l, &hl) in h.h.iter().enumerate() {
        f1.check_period(l, hl)?;
    }
    let t = &f1.table;
    let w = t.width();
    let m = f1.xy_count();
    let mut total = vec![0.0; w];
    for (j, &hj) in h.h.iter().enumerate() {
        if hj == 0.0 {
            continue;
        }
        let plus = f1.characters(j, hj, 1.0);
        let minus = f1.characters(j, hj, -1.0);
        let sm = plus.len() as f64;
        let part = (0..m)
            .into_par_iter()
            .map(|xy| {
                let mut left = vec![0.0; w];
                let mut right = vec![0.0; w];
                for k in 0..plus.len() {
                    let conj = t.conjugate(f1.dense(k * m + xy));
                    t.mul_acc(&conj, &plus[k], &mut left);
                    t.mul_acc(&minus[k], f2.dense(k * m + xy), &mut right);
                }
                let wt = f1.xy_weight(xy) / (sm * sm);
                t.mul(&left, &right).into_iter().map(|v| v * wt).collect::<Vec<_>>()
            })
            .reduce(|| vec![0.0; w], |a, b| a.iter().zip(&b).map(|(u, v)| u + v).collect());
        for (acc, v) in total.iter_mut().zip(part) {
            *acc += hj * v;
        }
    }
    Ok(CliffordElement::from_dense(f1.signature(), &total))
}

/// `[P_j k](s,x,y) = e^{2πe_j s_j h_j} ⟨k e^{−2πe_j s_j h_j}⟩_s`.
pub fn project(j: usize, hj: f64, k: &CliffordGridFunction) -> Result<CliffordGridFunction> {
    k.signature().check_index(j)?;
    if hj == 0.0 {
        return Err(Error::ZeroPlanck);
    }
    k.check_period(j, hj)?;
    let t = &k.table;
    let w = t.width();
    let m = k.xy_count();
    let plus = k.characters(j, hj, 1.0);
    let minus = k.characters(j, hj, -1.0);
    let means: Vec<Vec<f64>> = (0..m).into_par_iter().map(|xy| k.s_mean_right(xy, &minus)).collect();
    let mut out = k.clone();
    out.data.par_chunks_mut(w).enumerate().for_each(|(flat, chunk)| {
        let (s_idx, xy) = (flat / m, flat % m);
        chunk.iter_mut().for_each(|v| *v = 0.0);
        t.mul_acc(&plus[s_idx], &means[xy], chunk);
    });
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelCheck {
    pub holds: bool,
    /// Largest coefficient difference between the two partial transforms.
    pub residual: f64,
}

/// Relative tolerance used by [`kernel_condition`].
pub const KERNEL_TOLERANCE: f64 = 1e-9;

/// Compares `⟨k e^{−2πe_j h_j s_j}⟩_s` with `⟨k e^{2πe_j h_j s_j}⟩_s` at every `(x, y)`.
pub fn kernel_condition(k: &CliffordGridFunction, j: usize, hj: f64) -> Result<KernelCheck> {
    k.signature().check_index(j)?;
    k.check_period(j, hj)?;
    let minus = k.characters(j, hj, -1.0);
    let plus = k.characters(j, hj, 1.0);
    let residual = (0..k.xy_count())
        .into_par_iter()
        .map(|xy| {
            let a = k.s_mean_right(xy, &minus);
            let b = k.s_mean_right(xy, &plus);
            a.iter().zip(&b).fold(0.0, |m: f64, (u, v)| m.max((u - v).abs()))
        })
        .reduce(|| 0.0, f64::max);
    Ok(KernelCheck { holds: residual <= KERNEL_TOLERANCE * k.max_abs().max(1.0), residual })
}

/// `⟨k c e^{−2πe_j h_j s_j}⟩_s` and `⟨k e^{−2πe_j h_j s_j}⟩_s c`, per `(x, y)` sample.
pub fn constant_commutation_sides(
    k: &CliffordGridFunction,
    j: usize,
    hj: f64,
    c: &CliffordElement,
) -> Result<(Vec<CliffordElement>, Vec<CliffordElement>)> {
    k.signature().check_index(j)?;
    k.check_period(j, hj)?;
    if c.signature() != k.signature() {
        return Err(Error::SignatureMismatch);
    }
    let t = &k.table;
    let cd = c.to_dense();
    let minus = k.characters(j, hj, -1.0);
    let c_minus: Vec<Vec<f64>> = minus.iter().map(|e| t.mul(&cd, e)).collect();
    let sig = k.signature();
    let (lhs, rhs) = (0..k.xy_count())
        .map(|xy| {
            let l = k.s_mean_right(xy, &c_minus);
            let r = t.mul(&k.s_mean_right(xy, &minus), &cd);
            (CliffordElement::from_dense(sig, &l), CliffordElement::from_dense(sig, &r))
        })
        .unzip();
    Ok((lhs, rhs))
}
