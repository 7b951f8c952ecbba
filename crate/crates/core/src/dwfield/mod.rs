//! De Donder–Weyl covariant Hamiltonian theory of one scalar field.
//!
//! Kinetic term `½ Σ η^{μμ} (∂_μ q)²`, so `p^μ = η^{μμ} ∂_μ q` and
//! `H = ½ Σ η^{μμ} (p^μ)² + V(q)`.

use serde::{Deserialize, Serialize};

use crate::clifford::{center_constant, CliffordElement, Signature};
use crate::error::{Error, Result};
use crate::poly::Poly;

mod integrate;
mod pairing;

pub use integrate::{dw_integrate, energy, plane_wave_error, stability, FieldSlice, FieldState, Stability};
pub use pairing::{combined_polymomenta, dirac_pairing, residual_check, ResidualReport, SpacetimeField};

/// Polynomial in one variable, `Σ c_k q^k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Potential(pub Vec<f64>);

impl Potential {
    pub fn zero() -> Self {
        Potential(Vec::new())
    }

    /// `½ m² q²`.
    pub fn mass(m: f64) -> Self {
        Potential(vec![0.0, 0.0, 0.5 * m * m])
    }

    pub fn eval(&self, q: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * q + c)
    }

    pub fn derivative(&self) -> Potential {
        Potential(self.0.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect())
    }

    pub fn scale(&self, s: f64) -> Potential {
        Potential(self.0.iter().map(|c| c * s).collect())
    }

    /// Coefficient of `q²`, doubled: the linearized restoring constant.
    pub fn curvature_at_zero(&self) -> f64 {
        2.0 * self.0.get(2).copied().unwrap_or(0.0)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().rposition(|&c| c != 0.0).unwrap_or(0)
    }

    fn to_poly(&self, nvars: usize) -> Poly<f64> {
        let mut p = Poly::zero(nvars);
        for (k, &c) in self.0.iter().enumerate() {
            let mut e = vec![0; nvars];
            e[0] = k as u32;
            p.add_term(e, c).expect("arity matches");
        }
        p
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LagrangianSpec {
    pub sig: Signature,
    pub potential: Potential,
}

impl LagrangianSpec {
    pub fn new(sig: Signature, potential: Potential) -> Self {
        LagrangianSpec { sig, potential }
    }

    /// `L(q, v) = ½ Σ η^{μμ} v_μ² − V(q)` over variables `(q, v₀…v_n)`.
    pub fn poly(&self) -> Poly<f64> {
        let g = self.sig.generators();
        let mut l = self.potential.to_poly(g + 1).scale(-1.0);
        for mu in 0..g {
            let mut e = vec![0; g + 1];
            e[mu + 1] = 2;
            l.add_term(e, 0.5 * f64::from(self.sig.square(mu))).expect("arity matches");
        }
        l
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum HamiltonianKind {
    Legendre,
    /// `H_C = K(p) − V(q)/C`.
    Rescaled { c: f64 },
}

/// `H = ½ Σ a_μ (p^μ)² + U(q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DWHamiltonian {
    pub sig: Signature,
    pub kinetic: Vec<f64>,
    pub potential: Potential,
    pub kind: HamiltonianKind,
    pub source: LagrangianSpec,
}

pub fn legendre(l: &LagrangianSpec) -> Result<DWHamiltonian> {
    let lp = l.poly();
    let g = l.sig.generators();
    let mut kinetic = Vec::with_capacity(g);
    for mu in 0..g {
        // ∂L/∂v_μ = η^{μμ} v_μ; p^μ ∂_μq − L picks up ½ / η^{μμ} (p^μ)².
        let mut e = vec![0; g + 1];
        e[mu + 1] = 1;
        let c = lp.derivative(mu + 1, 1).coeff(&e).copied().unwrap_or(0.0);
        if c == 0.0 {
            return Err(Error::DegenerateMetric(mu));
        }
        kinetic.push(1.0 / c);
    }
    Ok(DWHamiltonian { sig: l.sig.clone(), kinetic, potential: l.potential.clone(), kind: HamiltonianKind::Legendre, source: l.clone() })
}

impl DWHamiltonian {
    pub fn generators(&self) -> usize {
        self.kinetic.len()
    }

    /// The rescaled Hamiltonian `H_C`; undefined for `C = 0`.
    pub fn rescaled(&self) -> Result<DWHamiltonian> {
        let c = center_constant(&self.sig);
        if c == 0.0 {
            return Err(Error::InvalidParameter("C = 0: the rescaled Hamiltonian is undefined".into()));
        }
        Ok(DWHamiltonian {
            potential: self.source.potential.scale(-1.0 / c),
            kind: HamiltonianKind::Rescaled { c },
            ..self.clone()
        })
    }

    /// Over variables `(q, p⁰…pⁿ)`.
    pub fn poly(&self) -> Poly<f64> {
        let g = self.generators();
        let mut h = self.potential.to_poly(g + 1);
        for (mu, &a) in self.kinetic.iter().enumerate() {
            let mut e = vec![0; g + 1];
            e[mu + 1] = 2;
            h.add_term(e, 0.5 * a).expect("arity matches");
        }
        h
    }

    pub fn clifford_poly(&self) -> Poly<CliffordElement> {
        let p = self.poly();
        Poly::from_terms(p.nvars(), p.terms().map(|(e, c)| (e.clone(), CliffordElement::scalar(&self.sig, *c))))
            .expect("arity matches")
    }

    pub fn eval(&self, q: f64, p: &[f64]) -> f64 {
        self.potential.eval(q) + self.kinetic.iter().zip(p).map(|(a, v)| 0.5 * a * v * v).sum::<f64>()
    }

    pub fn d_dq(&self, q: f64) -> f64 {
        self.potential.derivative().eval(q)
    }

    pub fn d_dp(&self, mu: usize, p: f64) -> f64 {
        self.kinetic[mu] * p
    }
}

/// `Σ_μ c_μ ∂²_μ q + F(q) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldEquation {
    pub second_order: Vec<f64>,
    pub force: Potential,
}

/// Euler–Lagrange equation `∂_μ(∂L/∂(∂_μq)) − ∂L/∂q = 0` from the Lagrangian polynomial.
pub fn euler_lagrange(l: &LagrangianSpec) -> Result<FieldEquation> {
    let lp = l.poly();
    let g = l.sig.generators();
    let mut second_order = Vec::with_capacity(g);
    for mu in 0..g {
        let dl = lp.derivative(mu + 1, 1);
        let mut e = vec![0; g + 1];
        e[mu + 1] = 1;
        let c = dl.coeff(&e).copied().unwrap_or(0.0);
        let linear = Poly::monomial(g + 1, e, c)?;
        if dl != linear {
            return Err(Error::InvalidParameter("momentum is not linear in the field gradient".into()));
        }
        second_order.push(c);
    }
    let dq = lp.derivative(0, 1).scale(-1.0);
    Ok(FieldEquation { second_order, force: potential_from_poly(&dq)? })
}

/// Second-order equation implied by the Hamilton field equations:
/// `∂_μ q = ∂H/∂p^μ = a_μ p^μ` and `Σ ∂_μ p^μ = −∂H/∂q`.
pub fn hamilton_second_order(h: &DWHamiltonian) -> Result<FieldEquation> {
    let hp = h.poly();
    let g = h.generators();
    let mut second_order = Vec::with_capacity(g);
    for mu in 0..g {
        let mut e = vec![0; g + 1];
        e[mu + 1] = 1;
        let a = hp.derivative(mu + 1, 1).coeff(&e).copied().unwrap_or(0.0);
        if a == 0.0 {
            return Err(Error::DegenerateMetric(mu));
        }
        second_order.push(1.0 / a);
    }
    Ok(FieldEquation { second_order, force: potential_from_poly(&hp.derivative(0, 1))? })
}

fn potential_from_poly(p: &Poly<f64>) -> Result<Potential> {
    let mut c = vec![0.0; p.degree() as usize + 1];
    for (e, v) in p.terms() {
        if e[1..].iter().any(|&k| k != 0) {
            return Err(Error::InvalidParameter("force depends on momenta or gradients".into()));
        }
        c[e[0] as usize] += v;
    }
    Ok(Potential(c))
}
