//! Time stepping of `ḟ = {H, f}` with the classic fourth-order Runge–Kutta scheme.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::charsum::{pmech_bracket, CharacterSum};
use super::phase_space::{moyal_poly, poisson_poly, PolyObservable};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Backend {
    Pmech,
    Poisson,
    Moyal { hbar: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvolveOptions {
    pub degree_cap: u32,
    pub atom_cap: usize,
    /// Store every `record_every`-th step; the final state is always stored.
    pub record_every: usize,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        EvolveOptions { degree_cap: 32, atom_cap: 4096, record_every: 1 }
    }
}

/// Observable classes closed under a bracket.
pub trait Observable: Clone {
    /// `self + k·other`.
    fn axpy(&self, k: f64, other: &Self) -> Result<Self>;
    fn bracket(h: &Self, f: &Self, backend: Backend) -> Result<Self>;
    fn check_caps(&self, opts: &EvolveOptions) -> Result<()>;
}

impl Observable for PolyObservable<f64> {
    fn axpy(&self, k: f64, other: &Self) -> Result<Self> {
        self.add(&other.scale(k))
    }

    fn bracket(h: &Self, f: &Self, backend: Backend) -> Result<Self> {
        match backend {
            Backend::Poisson => poisson_poly(h, f),
            Backend::Moyal { hbar } => moyal_poly(hbar, h, f),
            Backend::Pmech => Err(Error::InvalidParameter(
                "the pmech backend acts on character sums; use poisson or moyal for polynomials".into(),
            )),
        }
    }

    fn check_caps(&self, opts: &EvolveOptions) -> Result<()> {
        let d = self.degree();
        if d > opts.degree_cap {
            return Err(Error::Truncation { what: "polynomial degree", value: d as usize, cap: opts.degree_cap as usize });
        }
        Ok(())
    }
}

impl Observable for CharacterSum {
    fn axpy(&self, k: f64, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(k, 0.0)))
    }

    fn bracket(h: &Self, f: &Self, backend: Backend) -> Result<Self> {
        match backend {
            Backend::Pmech => pmech_bracket(h, f),
            Backend::Moyal { hbar } => pmech_bracket(&h.with_hbar(hbar), &f.with_hbar(hbar)),
            Backend::Poisson => pmech_bracket(&h.with_hbar(0.0), &f.with_hbar(0.0)),
        }
    }

    fn check_caps(&self, opts: &EvolveOptions) -> Result<()> {
        if self.len() > opts.atom_cap {
            return Err(Error::Truncation { what: "atom count", value: self.len(), cap: opts.atom_cap });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory<O> {
    pub times: Vec<f64>,
    pub states: Vec<O>,
}

impl<O> Trajectory<O> {
    pub fn last(&self) -> &O {
        self.states.last().expect("trajectory holds the initial state")
    }
}

/// Integrates to `t_end` in `ceil(t_end/dt)` equal steps of size at most `dt`.
pub fn evolve<O: Observable>(
    h: &O,
    f0: &O,
    t_end: f64,
    dt: f64,
    backend: Backend,
    opts: &EvolveOptions,
) -> Result<Trajectory<O>> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidParameter(format!("dt must be positive, got {dt}")));
    }
    if !(t_end >= 0.0) || !t_end.is_finite() {
        return Err(Error::InvalidParameter(format!("t_end must be non-negative, got {t_end}")));
    }
    if opts.record_every == 0 {
        return Err(Error::InvalidParameter("record_every must be positive".into()));
    }
    if let Backend::Moyal { hbar: 0.0 } = backend {
        return Err(Error::ZeroPlanck);
    }
    f0.check_caps(opts)?;
    let steps = (t_end / dt).ceil() as usize;
    let step = if steps == 0 { 0.0 } else { t_end / steps as f64 };
    let mut traj = Trajectory { times: vec![0.0], states: vec![f0.clone()] };
    let mut f = f0.clone();
    for i in 1..=steps {
        let k1 = O::bracket(h, &f, backend)?;
        let k2 = O::bracket(h, &f.axpy(0.5 * step, &k1)?, backend)?;
        let k3 = O::bracket(h, &f.axpy(0.5 * step, &k2)?, backend)?;
        let k4 = O::bracket(h, &f.axpy(step, &k3)?, backend)?;
        let incr = k1.axpy(2.0, &k2)?.axpy(2.0, &k3)?.axpy(1.0, &k4)?;
        f = f.axpy(step / 6.0, &incr)?;
        f.check_caps(opts)?;
        if i % opts.record_every == 0 || i == steps {
            traj.times.push(i as f64 * step);
            traj.states.push(f.clone());
        }
    }
    Ok(traj)
}
