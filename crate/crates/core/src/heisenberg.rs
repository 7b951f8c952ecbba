//! The Heisenberg group `Hⁿ`, its coadjoint orbits and the Schrödinger-type
//! representation `ρ_ħ` acting on sampled functions of `(q, p)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::grid::{periodic_stencil, Axis, Grid};

/// Group point `(s, x, y)` with `x, y ∈ Rⁿ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeisenbergElement {
    pub s: f64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl HeisenbergElement {
    pub fn new(s: f64, x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        check_dim(x.len(), y.len())?;
        if x.is_empty() {
            return Err(Error::InvalidParameter("Heisenberg group needs n >= 1".into()));
        }
        Ok(HeisenbergElement { s, x, y })
    }

    pub fn identity(n: usize) -> Self {
        HeisenbergElement { s: 0.0, x: vec![0.0; n], y: vec![0.0; n] }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut m = (self.s - other.s).abs();
        for (a, b) in self.x.iter().zip(&other.x).chain(self.y.iter().zip(&other.y)) {
            m = m.max((a - b).abs());
        }
        m
    }
}

/// `ω(x,y;x',y') = x·y' − x'·y`.
pub fn symplectic_form(x: &[f64], y: &[f64], xp: &[f64], yp: &[f64]) -> Result<f64> {
    check_dim(x.len(), y.len())?;
    check_dim(x.len(), xp.len())?;
    check_dim(x.len(), yp.len())?;
    Ok(dot(x, yp) - dot(xp, y))
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| u * v).sum()
}

fn vec_add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(u, v)| u + v).collect()
}

/// Group law `(s,x,y)*(s',x',y') = (s+s'+½ω, x+x', y+y')`.
pub fn h_mul(g1: &HeisenbergElement, g2: &HeisenbergElement) -> Result<HeisenbergElement> {
    check_dim(g1.dim(), g2.dim())?;
    let w = symplectic_form(&g1.x, &g1.y, &g2.x, &g2.y)?;
    Ok(HeisenbergElement {
        s: g1.s + g2.s + 0.5 * w,
        x: vec_add(&g1.x, &g2.x),
        y: vec_add(&g1.y, &g2.y),
    })
}

pub fn h_inv(g: &HeisenbergElement) -> HeisenbergElement {
    HeisenbergElement {
        s: -g.s,
        x: g.x.iter().map(|v| -v).collect(),
        y: g.y.iter().map(|v| -v).collect(),
    }
}

/// Point `(ħ, q, p)` of the dual Lie algebra.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoadjointPoint {
    pub hbar: f64,
    pub q: Vec<f64>,
    pub p: Vec<f64>,
}

impl CoadjointPoint {
    pub fn new(hbar: f64, q: Vec<f64>, p: Vec<f64>) -> Result<Self> {
        check_dim(q.len(), p.len())?;
        Ok(CoadjointPoint { hbar, q, p })
    }

    /// `ħ ≠ 0` points lie on the plane orbit `O_ħ`; `ħ = 0` points are one-point orbits.
    pub fn is_one_point_orbit(&self) -> bool {
        self.hbar == 0.0
    }
}

/// Coadjoint action `(ħ, q, p) ↦ (ħ, q + ħy, p − ħx)`.
///
/// Acting with `g1` and then `g2` equals acting with `g1 * g2`.
pub fn coadjoint(g: &HeisenbergElement, pt: &CoadjointPoint) -> Result<CoadjointPoint> {
    check_dim(g.dim(), pt.q.len())?;
    check_dim(pt.q.len(), pt.p.len())?;
    let h = pt.hbar;
    Ok(CoadjointPoint {
        hbar: h,
        q: pt.q.iter().zip(&g.y).map(|(q, y)| q + h * y).collect(),
        p: pt.p.iter().zip(&g.x).map(|(p, x)| p - h * x).collect(),
    })
}

/// One-dimensional representation `ρ_(q,p)(s,x,y) = e^{−2πi(q·x + p·y)}`.
pub fn character_rep(q: &[f64], p: &[f64], g: &HeisenbergElement) -> Result<Complex64> {
    check_dim(q.len(), g.dim())?;
    check_dim(p.len(), g.dim())?;
    Ok(Complex64::from_polar(1.0, -2.0 * PI * (dot(q, &g.x) + dot(p, &g.y))))
}

/// Complex samples of `f(q, p)` on a periodic grid; axes `0..n` are `q`, `n..2n` are `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    n: usize,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if grid.ndim() % 2 != 0 || grid.ndim() == 0 {
            return Err(Error::InvalidGrid(format!(
                "phase-space grid needs an even number of axes, got {}",
                grid.ndim()
            )));
        }
        check_dim(grid.len(), values.len())?;
        let n = grid.ndim() / 2;
        Ok(GridFunction { grid, n, values })
    }

    /// Square periodic grid `[-half_width, half_width)^{2n}` with `points` per axis.
    pub fn square_grid(n: usize, half_width: f64, points: usize) -> Result<Grid> {
        let axis = Axis::periodic(-half_width, half_width, points)?;
        Grid::new(vec![axis; 2 * n])
    }

    pub fn from_fn(grid: Grid, f: impl Fn(&[f64], &[f64]) -> Complex64 + Sync) -> Result<Self> {
        if grid.ndim() % 2 != 0 {
            return Err(Error::InvalidGrid("phase-space grid needs an even number of axes".into()));
        }
        let n = grid.ndim() / 2;
        let values = (0..grid.len())
            .into_par_iter()
            .map(|i| {
                let c = grid.coords(i);
                f(&c[..n], &c[n..])
            })
            .collect();
        GridFunction::new(grid, values)
    }

    pub fn zeros(grid: Grid) -> Result<Self> {
        let len = grid.len();
        GridFunction::new(grid, vec![Complex64::new(0.0, 0.0); len])
    }

    /// Fock vacuum `e^{−2π(|q|²+|p|²)/ħ}`.
    pub fn vacuum(grid: Grid, hbar: f64) -> Result<Self> {
        if hbar == 0.0 {
            return Err(Error::ZeroPlanck);
        }
        GridFunction::from_fn(grid, |q, p| {
            Complex64::new((-2.0 * PI * (dot(q, q) + dot(p, p)) / hbar).exp(), 0.0)
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        check_dim(self.values.len(), other.values.len())?;
        Ok(self.values.iter().zip(&other.values).fold(0.0, |m, (a, b)| m.max((a - b).norm())))
    }

    /// Linear combination `self + k * other`.
    pub fn axpy(&self, k: Complex64, other: &Self) -> Result<Self> {
        check_dim(self.values.len(), other.values.len())?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + k * b).collect();
        Ok(GridFunction { grid: self.grid.clone(), n: self.n, values })
    }

    pub fn scale(&self, k: Complex64) -> Self {
        GridFunction { grid: self.grid.clone(), n: self.n, values: self.values.iter().map(|v| v * k).collect() }
    }

    fn map_indexed(&self, f: impl Fn(usize, &[f64]) -> Complex64 + Sync) -> Self {
        let values = (0..self.grid.len())
            .into_par_iter()
            .map(|i| f(i, &self.grid.coords(i)))
            .collect();
        GridFunction { grid: self.grid.clone(), n: self.n, values }
    }

    /// Periodic multilinear interpolation at an arbitrary phase-space point.
    pub fn interpolate(&self, point: &[f64]) -> Complex64 {
        periodic_stencil(&self.grid, point)
            .into_iter()
            .map(|(i, w)| self.values[i] * w)
            .sum()
    }

    /// Centered second-order derivative along grid axis `axis`, periodic wrap.
    pub fn partial(&self, axis: usize) -> Result<Self> {
        self.grid.require_min_points(3)?;
        let h = self.grid.axis(axis).step;
        Ok(self.map_indexed(|i, _| {
            let up = self.values[self.grid.shifted(i, axis, 1)];
            let dn = self.values[self.grid.shifted(i, axis, -1)];
            (up - dn) / (2.0 * h)
        }))
    }

    /// A-priori bound on the error of one multilinear interpolation of these
    /// samples: `Σ_axes h²/8 · max|∂²f|`, with `h²∂²f` estimated by second differences.
    pub fn interpolation_error_bound(&self) -> f64 {
        (0..self.grid.ndim())
            .map(|k| {
                let m = (0..self.values.len())
                    .map(|i| {
                        let up = self.values[self.grid.shifted(i, k, 1)];
                        let dn = self.values[self.grid.shifted(i, k, -1)];
                        (up - 2.0 * self.values[i] + dn).norm()
                    })
                    .fold(0.0, f64::max);
                m / 8.0
            })
            .sum()
    }
}

/// `[ρ_ħ(s,x,y) f](q,p) = e^{−2πi(ħs + q·x + p·y)} f(q − ħy/2, p + ħx/2)`.
///
/// Off-grid samples come from periodic multilinear interpolation.
pub fn rho_apply(hbar: f64, g: &HeisenbergElement, f: &GridFunction) -> Result<GridFunction> {
    if hbar == 0.0 {
        return Err(Error::ZeroPlanck);
    }
    check_dim(g.dim(), f.dim())?;
    let n = f.dim();
    Ok(f.map_indexed(|_, c| {
        let (q, p) = c.split_at(n);
        let mut shifted = Vec::with_capacity(2 * n);
        shifted.extend(q.iter().zip(&g.y).map(|(q, y)| q - 0.5 * hbar * y));
        shifted.extend(p.iter().zip(&g.x).map(|(p, x)| p + 0.5 * hbar * x));
        let phase = -2.0 * PI * (hbar * g.s + dot(q, &g.x) + dot(p, &g.y));
        Complex64::from_polar(1.0, phase) * f.interpolate(&shifted)
    }))
}

/// `D^j_ħ = (ħ/2)(∂_{p_j} + i∂_{q_j}) + 2π(p_j + i q_j)`; Fock space is its common kernel.
pub fn cauchy_riemann_apply(hbar: f64, j: usize, f: &GridFunction) -> Result<GridFunction> {
    if hbar == 0.0 {
        return Err(Error::ZeroPlanck);
    }
    let n = f.dim();
    if j >= n {
        return Err(Error::IndexOutOfRange { index: j, generators: n });
    }
    let dq = f.partial(j)?;
    let dp = f.partial(n + j)?;
    let i = Complex64::i();
    Ok(f.map_indexed(|k, c| {
        let (q, p) = (c[j], c[n + j]);
        0.5 * hbar * (dp.values[k] + i * dq.values[k]) + 2.0 * PI * Complex64::new(p, q) * f.values[k]
    }))
}

/// Basis of the Heisenberg Lie algebra: `S`, `X_j`, `Y_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LieGenerator {
    S,
    X(usize),
    Y(usize),
}

/// Derived representation as printed alongside `ρ_ħ`:
/// `dρ(S) = −2πiħ`, `dρ(X_j) = ħ∂_{p_j} + (i/2)q_j`, `dρ(Y_j) = −ħ∂_{q_j} + (i/2)p_j`.
///
/// These operators satisfy `[dρ(X_j), dρ(Y_j)] = iħ`, not `dρ(S)`; see
/// [`derived_rep_from_rho_apply`] for the generators that differentiate `ρ_ħ`.
pub fn derived_rep_apply(hbar: f64, which: LieGenerator, f: &GridFunction) -> Result<GridFunction> {
    let n = f.dim();
    let i = Complex64::i();
    match which {
        LieGenerator::S => Ok(f.scale(-2.0 * PI * i * hbar)),
        LieGenerator::X(j) => {
            check_generator(j, n)?;
            let dp = f.partial(n + j)?;
            Ok(f.map_indexed(|k, c| hbar * dp.values[k] + 0.5 * i * c[j] * f.values[k]))
        }
        LieGenerator::Y(j) => {
            check_generator(j, n)?;
            let dq = f.partial(j)?;
            Ok(f.map_indexed(|k, c| -hbar * dq.values[k] + 0.5 * i * c[n + j] * f.values[k]))
        }
    }
}

/// Generators of `ρ_ħ` obtained by differentiating it along `exp(tS)`, `exp(tX_j)`, `exp(tY_j)`:
/// `−2πiħ`, `(ħ/2)∂_{p_j} − 2πi q_j`, `−(ħ/2)∂_{q_j} − 2πi p_j`.
pub fn derived_rep_from_rho_apply(hbar: f64, which: LieGenerator, f: &GridFunction) -> Result<GridFunction> {
    let n = f.dim();
    let i = Complex64::i();
    match which {
        LieGenerator::S => Ok(f.scale(-2.0 * PI * i * hbar)),
        LieGenerator::X(j) => {
            check_generator(j, n)?;
            let dp = f.partial(n + j)?;
            Ok(f.map_indexed(|k, c| 0.5 * hbar * dp.values[k] - 2.0 * PI * i * c[j] * f.values[k]))
        }
        LieGenerator::Y(j) => {
            check_generator(j, n)?;
            let dq = f.partial(j)?;
            Ok(f.map_indexed(|k, c| -0.5 * hbar * dq.values[k] - 2.0 * PI * i * c[n + j] * f.values[k]))
        }
    }
}

fn check_generator(j: usize, n: usize) -> Result<()> {
    if j < n {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: j, generators: n })
    }
}
