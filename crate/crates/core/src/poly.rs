//! Sparse multivariate polynomials with exact monomial bookkeeping.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_complex::Complex64;

use crate::clifford::CliffordElement;
use crate::error::{check_dim, Result};

/// Ring of polynomial coefficients.
pub trait Coefficient: Clone + Debug + PartialEq + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, s: f64) -> Self;
}

impl Coefficient for f64 {
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, s: f64) -> Self {
        self * s
    }
}

impl Coefficient for Complex64 {
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, s: f64) -> Self {
        self * s
    }
}

/// Operands must share a signature; the polynomial routines never mix them.
impl Coefficient for CliffordElement {
    fn is_zero(&self) -> bool {
        CliffordElement::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, s: f64) -> Self {
        CliffordElement::scale(self, s)
    }
}

pub type Exponents = Vec<u32>;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<C: Coefficient> {
    nvars: usize,
    terms: BTreeMap<Exponents, C>,
}

impl<C: Coefficient> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn monomial(nvars: usize, exps: Exponents, coeff: C) -> Result<Self> {
        let mut p = Self::zero(nvars);
        p.add_term(exps, coeff)?;
        Ok(p)
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, C)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c)?;
        }
        Ok(p)
    }

    pub fn add_term(&mut self, exps: Exponents, coeff: C) -> Result<()> {
        check_dim(self.nvars, exps.len())?;
        if coeff.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&exps) {
            Some(c) => {
                let sum = c.add(&coeff);
                if sum.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(exps, coeff);
            }
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Option<&C> {
        self.terms.get(exps)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `0` for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.nvars, other.nvars)?;
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in self.terms() {
            let v = c.scale(s);
            if !v.is_zero() {
                out.terms.insert(e.clone(), v);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_dim(self.nvars, other.nvars)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.mul(cb))?;
            }
        }
        Ok(out)
    }

    /// Right multiplication of every coefficient by a constant.
    pub fn mul_coeff_right(&self, c: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, a) in self.terms() {
            let v = a.mul(c);
            if !v.is_zero() {
                out.terms.insert(e.clone(), v);
            }
        }
        out
    }

    /// `∂^order / ∂x_var^order`.
    pub fn derivative(&self, var: usize, order: u32) -> Self {
        let mut out = Self::zero(self.nvars);
        if order == 0 {
            return self.clone();
        }
        for (e, c) in self.terms() {
            let k = e[var];
            if k < order {
                continue;
            }
            let falling: f64 = (0..order).map(|i| f64::from(k - i)).product();
            let mut ne = e.clone();
            ne[var] -= order;
            out.add_term(ne, c.scale(falling)).expect("same arity");
        }
        out
    }

    pub fn eval_with(&self, point: &[f64], zero: C) -> Result<C> {
        check_dim(self.nvars, point.len())?;
        let mut acc = zero;
        for (e, c) in self.terms() {
            let m: f64 = e.iter().zip(point).map(|(&k, x)| x.powi(k as i32)).product();
            acc = acc.add(&c.scale(m));
        }
        Ok(acc)
    }

    pub fn max_abs_coeff_diff(&self, other: &Self, norm: impl Fn(&C) -> f64) -> f64 {
        let mut m: f64 = 0.0;
        for (e, c) in self.terms() {
            let d = match other.terms.get(e) {
                Some(o) => norm(&c.add(&o.scale(-1.0))),
                None => norm(c),
            };
            m = m.max(d);
        }
        for (e, c) in other.terms() {
            if !self.terms.contains_key(e) {
                m = m.max(norm(c));
            }
        }
        m
    }
}

impl Poly<f64> {
    pub fn eval(&self, point: &[f64]) -> Result<f64> {
        self.eval_with(point, 0.0)
    }

    pub fn constant(nvars: usize, c: f64) -> Self {
        Poly::monomial(nvars, vec![0; nvars], c).expect("arity matches")
    }

    pub fn variable(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        Poly::monomial(nvars, e, 1.0).expect("arity matches")
    }
}
