//! Marching the Hamilton field equations along `u⁰`.
//!
//! The pair `(q, p⁰)` is advanced with velocity Verlet; the spatial
//! polymomenta are tied to the field by `p^k = ∂_k q / a_k` (the Legendre
//! relation) and recomputed on every slice. Space is periodic.

use rayon::prelude::*;

use super::DWHamiltonian;
use crate::clifford::Signature;
use crate::error::{check_dim, Error, Result};
use crate::grid::{Axis, Grid};

/// Largest admissible growth factor of any mode over the horizon.
pub const MAX_GROWTH: f64 = 1e6;

/// Data on one `u⁰ = const` slice.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldSlice {
    pub space: Grid,
    pub q: Vec<f64>,
    pub p0: Vec<f64>,
}

impl FieldSlice {
    pub fn from_fn(space: Grid, q: impl Fn(&[f64]) -> f64, p0: impl Fn(&[f64]) -> f64) -> Self {
        let pts: Vec<Vec<f64>> = (0..space.len()).map(|i| space.coords(i)).collect();
        FieldSlice { q: pts.iter().map(|x| q(x)).collect(), p0: pts.iter().map(|x| p0(x)).collect(), space }
    }
}

/// Field and polymomenta on a space-time grid with axes `[u⁰, u¹…uⁿ]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldState {
    pub sig: Signature,
    pub grid: Grid,
    /// Per axis: whether differences wrap around.
    pub periodic: Vec<bool>,
    pub q: Vec<f64>,
    /// `p[μ]` holds `p^μ`.
    pub p: Vec<Vec<f64>>,
}

impl FieldState {
    /// Samples `q(u)` and `p^μ(u)` on `grid`; time axis non-periodic, space periodic.
    pub fn from_fn(
        sig: &Signature,
        grid: Grid,
        q: impl Fn(&[f64]) -> f64 + Sync,
        p: impl Fn(usize, &[f64]) -> f64 + Sync,
    ) -> Result<Self> {
        check_dim(sig.generators(), grid.ndim())?;
        let qs = (0..grid.len()).into_par_iter().map(|i| q(&grid.coords(i))).collect();
        let ps = (0..sig.generators())
            .map(|mu| (0..grid.len()).into_par_iter().map(|i| p(mu, &grid.coords(i))).collect())
            .collect();
        let mut periodic = vec![true; grid.ndim()];
        periodic[0] = false;
        Ok(FieldState { sig: sig.clone(), grid, periodic, q: qs, p: ps })
    }

    pub fn time_slices(&self) -> usize {
        self.grid.axis(0).len
    }

    pub fn slice_len(&self) -> usize {
        self.grid.len() / self.time_slices()
    }

    pub fn q_at(&self, t: usize) -> &[f64] {
        let m = self.slice_len();
        &self.q[t * m..(t + 1) * m]
    }

    pub fn p_at(&self, mu: usize, t: usize) -> &[f64] {
        let m = self.slice_len();
        &self.p[mu][t * m..(t + 1) * m]
    }

    pub fn slice(&self, t: usize) -> FieldSlice {
        let space = Grid::new(self.grid.axes()[1..].to_vec()).expect("state has spatial axes");
        FieldSlice { space, q: self.q_at(t).to_vec(), p0: self.p_at(0, t).to_vec() }
    }
}

/// Linear stability of the march: `∂₀²q = −Ω q` per spatial Fourier mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Stability {
    pub omega2_min: f64,
    pub omega2_max: f64,
}

/// Extremes of `Ω = a₀(U''(0) − Σ_k λ_k / a_k)` over `λ_k ∈ [0, 4/dx_k²]`.
pub fn stability(h: &DWHamiltonian, space: &Grid) -> Stability {
    let n = space.ndim();
    let u2 = h.potential.curvature_at_zero();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for corner in 0..(1usize << n) {
        let mut s = u2;
        for k in 0..n {
            if corner >> k & 1 == 1 {
                let dx = space.axis(k).step;
                s -= 4.0 / (dx * dx) / h.kinetic[k + 1];
            }
        }
        let omega2 = h.kinetic[0] * s;
        lo = lo.min(omega2);
        hi = hi.max(omega2);
    }
    Stability { omega2_min: lo, omega2_max: hi }
}

fn check_stable(h: &DWHamiltonian, space: &Grid, dt: f64, t_end: f64) -> Result<()> {
    let s = stability(h, space);
    if s.omega2_max > 0.0 && dt * dt * s.omega2_max >= 4.0 {
        return Err(Error::Unstable(format!(
            "time step {dt} violates the CFL bound dt < {}",
            2.0 / s.omega2_max.sqrt()
        )));
    }
    if s.omega2_min < 0.0 {
        let growth = t_end * (-s.omega2_min).sqrt();
        if growth > MAX_GROWTH.ln() {
            return Err(Error::Unstable(format!(
                "modes grow by e^{growth:.1} over the horizon; limit is {MAX_GROWTH:e}"
            )));
        }
    }
    Ok(())
}

/// `−U'(q) − Σ_k (1/a_k) Δ_k q` with the three-point Laplacian.
fn p0_rate(h: &DWHamiltonian, space: &Grid, q: &[f64], out: &mut [f64]) {
    let du = h.potential.derivative();
    out.par_iter_mut().enumerate().for_each(|(i, o)| {
        let mut v = -du.eval(q[i]);
        for k in 0..space.ndim() {
            let dx = space.axis(k).step;
            let lap = (q[space.shifted(i, k, 1)] - 2.0 * q[i] + q[space.shifted(i, k, -1)]) / (dx * dx);
            v -= lap / h.kinetic[k + 1];
        }
        *o = v;
    });
}

/// Marches `steps` steps of size `dt` from `init`.
pub fn dw_integrate(h: &DWHamiltonian, init: &FieldSlice, dt: f64, steps: usize) -> Result<FieldState> {
    let g = h.generators();
    if g < 2 {
        return Err(Error::InvalidParameter("the march needs at least one spatial direction".into()));
    }
    check_dim(g - 1, init.space.ndim())?;
    check_dim(init.space.len(), init.q.len())?;
    check_dim(init.space.len(), init.p0.len())?;
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidParameter(format!("dt must be positive, got {dt}")));
    }
    init.space.require_min_points(3)?;
    check_stable(h, &init.space, dt, dt * steps as f64)?;

    let space = &init.space;
    let m = space.len();
    let a0 = h.kinetic[0];
    let mut q = init.q.clone();
    let mut p0 = init.p0.clone();
    let mut rate = vec![0.0; m];
    let mut qs = Vec::with_capacity(m * (steps + 1));
    let mut p0s = Vec::with_capacity(m * (steps + 1));
    qs.extend_from_slice(&q);
    p0s.extend_from_slice(&p0);
    p0_rate(h, space, &q, &mut rate);
    for _ in 0..steps {
        for i in 0..m {
            p0[i] += 0.5 * dt * rate[i];
            q[i] += dt * a0 * p0[i];
        }
        p0_rate(h, space, &q, &mut rate);
        for i in 0..m {
            p0[i] += 0.5 * dt * rate[i];
        }
        qs.extend_from_slice(&q);
        p0s.extend_from_slice(&p0);
    }

    let mut axes = vec![Axis::new(0.0, dt, steps + 1)?];
    axes.extend_from_slice(space.axes());
    let grid = Grid::new(axes)?;
    let mut p = vec![p0s];
    for k in 0..space.ndim() {
        let dx = space.axis(k).step;
        let ak = h.kinetic[k + 1];
        let pk: Vec<f64> = (0..qs.len())
            .into_par_iter()
            .map(|flat| {
                let (t, i) = (flat / m, flat % m);
                let slice = &qs[t * m..(t + 1) * m];
                (slice[space.shifted(i, k, 1)] - slice[space.shifted(i, k, -1)]) / (2.0 * dx) / ak
            })
            .collect();
        p.push(pk);
    }
    let mut periodic = vec![true; grid.ndim()];
    periodic[0] = false;
    Ok(FieldState { sig: h.sig.clone(), grid, periodic, q: qs, p })
}

/// Discrete invariant of the march:
/// `Σ dV [½(p⁰)² + a₀U(q) − a₀ Σ_k (1/a_k) ½ (D⁺_k q)²]` with forward differences.
pub fn energy(h: &DWHamiltonian, slice: &FieldSlice) -> f64 {
    let space = &slice.space;
    let a0 = h.kinetic[0];
    let vol = space.cell_volume();
    (0..space.len())
        .map(|i| {
            let mut e = 0.5 * slice.p0[i] * slice.p0[i] + a0 * h.potential.eval(slice.q[i]);
            for k in 0..space.ndim() {
                let d = (slice.q[space.shifted(i, k, 1)] - slice.q[i]) / space.axis(k).step;
                e -= a0 / h.kinetic[k + 1] * 0.5 * d * d;
            }
            e * vol
        })
        .sum()
}

/// RMS deviation of `q` on the last slice from `exact(t, x)`.
pub fn plane_wave_error(state: &FieldState, exact: impl Fn(f64, &[f64]) -> f64) -> f64 {
    let last = state.time_slices() - 1;
    let t = state.grid.axis(0).coord(last);
    let space = state.slice(last).space;
    let q = state.q_at(last);
    let sum: f64 = (0..space.len()).map(|i| (q[i] - exact(t, &space.coords(i))).powi(2)).sum();
    (sum / space.len() as f64).sqrt()
}
