//! The Galilean group `G^{n+1}`, its Clifford-valued vacuum and coherent
//! states, the Segal–Bargmann-type space and the field brackets.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::clifford::{blade_exp, CliffordElement, Signature};
use crate::error::{check_dim, Error, Result};

mod brackets;
mod space;

pub use brackets::{
    classical_rep, field_bracket, field_commutator, field_kernel, field_poisson_poly, field_star, quantum_bracket,
    ClassicalImage, ComplexClifford, FieldAtom, FieldCharacterSum, TrigSeries, TrigTerm,
};
pub use space::{
    constant_commutation_sides, inner_product, kernel_condition, project, CliffordGridFunction, KernelCheck,
    KERNEL_TOLERANCE,
};

/// Point `(s, x, y)` with `s, y ∈ R^{n+1}` and scalar `x`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GalileanElement {
    pub s: Vec<f64>,
    pub x: f64,
    pub y: Vec<f64>,
}

impl GalileanElement {
    pub fn new(s: Vec<f64>, x: f64, y: Vec<f64>) -> Result<Self> {
        check_dim(s.len(), y.len())?;
        if s.is_empty() {
            return Err(Error::InvalidParameter("Galilean element needs n+1 >= 1 components".into()));
        }
        Ok(GalileanElement { s, x, y })
    }

    pub fn identity(generators: usize) -> Self {
        GalileanElement { s: vec![0.0; generators], x: 0.0, y: vec![0.0; generators] }
    }

    /// `n + 1`.
    pub fn generators(&self) -> usize {
        self.s.len()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut m = (self.x - other.x).abs();
        for (a, b) in self.s.iter().zip(&other.s).chain(self.y.iter().zip(&other.y)) {
            m = m.max((a - b).abs());
        }
        m
    }
}

/// `s_j + s_j' + ½(x y_j' − x' y_j)`, `x + x'`, `y + y'`.
pub fn g_mul(g1: &GalileanElement, g2: &GalileanElement) -> Result<GalileanElement> {
    check_dim(g1.generators(), g2.generators())?;
    let s = (0..g1.generators())
        .map(|j| g1.s[j] + g2.s[j] + 0.5 * (g1.x * g2.y[j] - g2.x * g1.y[j]))
        .collect();
    let y = g1.y.iter().zip(&g2.y).map(|(a, b)| a + b).collect();
    Ok(GalileanElement { s, x: g1.x + g2.x, y })
}

pub fn g_inv(g: &GalileanElement) -> GalileanElement {
    GalileanElement {
        s: g.s.iter().map(|v| -v).collect(),
        x: -g.x,
        y: g.y.iter().map(|v| -v).collect(),
    }
}

/// Planck constants `h = (h₀, …, h_n)`; zero components are allowed but flagged.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanckTuple {
    pub h: Vec<f64>,
}

impl PlanckTuple {
    pub fn new(h: Vec<f64>) -> Result<Self> {
        if h.is_empty() || h.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("Planck tuple must be nonempty and finite".into()));
        }
        Ok(PlanckTuple { h })
    }

    pub fn generators(&self) -> usize {
        self.h.len()
    }

    pub fn zero_components(&self) -> Vec<usize> {
        (0..self.h.len()).filter(|&j| self.h[j] == 0.0).collect()
    }

    pub fn all_nonzero(&self) -> bool {
        self.h.iter().all(|&v| v != 0.0)
    }
}

fn check_setup(h: &PlanckTuple, sig: &Signature, g: &GalileanElement) -> Result<()> {
    check_dim(sig.generators(), h.generators())?;
    check_dim(sig.generators(), g.generators())
}

/// `Σ_j exp 2πh_j(e_j s_j − ¼(x² + |y|²))`.
pub fn vacuum_eval(h: &PlanckTuple, sig: &Signature, g: &GalileanElement) -> Result<CliffordElement> {
    check_setup(h, sig, g)?;
    let r2 = g.x * g.x + g.y.iter().map(|v| v * v).sum::<f64>();
    let mut out = CliffordElement::zero(sig);
    for (j, &hj) in h.h.iter().enumerate() {
        let term = blade_exp(-0.5 * PI * hj * r2, j, 2.0 * PI * hj * g.s[j], sig)?;
        out = out.try_add(&term)?;
    }
    Ok(out)
}

/// Coherent state `v_{h,g}` evaluated at `g'`, from the closed formula.
pub fn coherent_eval(
    h: &PlanckTuple,
    sig: &Signature,
    g: &GalileanElement,
    gp: &GalileanElement,
) -> Result<CliffordElement> {
    check_setup(h, sig, g)?;
    check_dim(g.generators(), gp.generators())?;
    let r2 = (gp.x - g.x).powi(2) + gp.y.iter().zip(&g.y).map(|(a, b)| (a - b).powi(2)).sum::<f64>();
    let mut out = CliffordElement::zero(sig);
    for (j, &hj) in h.h.iter().enumerate() {
        let omega = g.x * gp.y[j] - gp.x * g.y[j];
        let phase = gp.s[j] - g.s[j] - 0.5 * omega;
        let term = blade_exp(-0.5 * PI * hj * r2, j, 2.0 * PI * hj * phase, sig)?;
        out = out.try_add(&term)?;
    }
    Ok(out)
}

/// Left regular action on the vacuum: `v(g⁻¹ g')`.
pub fn coherent_eval_by_shift(
    h: &PlanckTuple,
    sig: &Signature,
    g: &GalileanElement,
    gp: &GalileanElement,
) -> Result<CliffordElement> {
    vacuum_eval(h, sig, &g_mul(&g_inv(g), gp)?)
}
