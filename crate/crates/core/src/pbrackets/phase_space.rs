//! Phase-space polynomials and their Poisson and Moyal brackets.

use std::f64::consts::PI;

use crate::error::{check_dim, Error, Result};
use crate::poly::{Coefficient, Poly};

/// Polynomial in `(q₁…qₙ, p₁…pₙ)`; variable `j` is `q_j`, variable `n + j` is `p_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyObservable<C: Coefficient = f64> {
    n: usize,
    poly: Poly<C>,
}

impl<C: Coefficient> PolyObservable<C> {
    pub fn zero(n: usize) -> Self {
        PolyObservable { n, poly: Poly::zero(2 * n) }
    }

    pub fn from_poly(n: usize, poly: Poly<C>) -> Result<Self> {
        check_dim(2 * n, poly.nvars())?;
        Ok(PolyObservable { n, poly })
    }

    pub fn monomial(q: &[u32], p: &[u32], coeff: C) -> Result<Self> {
        check_dim(q.len(), p.len())?;
        let n = q.len();
        let exps = q.iter().chain(p).copied().collect();
        Ok(PolyObservable { n, poly: Poly::monomial(2 * n, exps, coeff)? })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &Poly<C> {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.poly.degree()
    }

    pub fn len(&self) -> usize {
        self.poly.len()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Monomials as `(q exponents, p exponents, coefficient)`.
    pub fn monomials(&self) -> impl Iterator<Item = (&[u32], &[u32], &C)> {
        self.poly.terms().map(move |(e, c)| (&e[..self.n], &e[self.n..], c))
    }

    pub fn coeff(&self, q: &[u32], p: &[u32]) -> Option<&C> {
        let e: Vec<u32> = q.iter().chain(p).copied().collect();
        self.poly.coeff(&e)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.n, other.n)?;
        Ok(PolyObservable { n: self.n, poly: self.poly.add(&other.poly)? })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_dim(self.n, other.n)?;
        Ok(PolyObservable { n: self.n, poly: self.poly.sub(&other.poly)? })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_dim(self.n, other.n)?;
        Ok(PolyObservable { n: self.n, poly: self.poly.mul(&other.poly)? })
    }

    pub fn scale(&self, s: f64) -> Self {
        PolyObservable { n: self.n, poly: self.poly.scale(s) }
    }

    pub fn dq(&self, j: usize, order: u32) -> Self {
        PolyObservable { n: self.n, poly: self.poly.derivative(j, order) }
    }

    pub fn dp(&self, j: usize, order: u32) -> Self {
        PolyObservable { n: self.n, poly: self.poly.derivative(self.n + j, order) }
    }

    pub fn max_abs_coeff_diff(&self, other: &Self, norm: impl Fn(&C) -> f64) -> f64 {
        self.poly.max_abs_coeff_diff(&other.poly, norm)
    }
}

impl PolyObservable<f64> {
    pub fn q(n: usize, j: usize) -> Self {
        PolyObservable { n, poly: Poly::variable(2 * n, j) }
    }

    pub fn p(n: usize, j: usize) -> Self {
        PolyObservable { n, poly: Poly::variable(2 * n, n + j) }
    }

    pub fn constant(n: usize, c: f64) -> Self {
        PolyObservable { n, poly: Poly::constant(2 * n, c) }
    }

    /// `½Σ(q_j² + p_j²)`.
    pub fn harmonic_oscillator(n: usize) -> Self {
        let mut h = Self::zero(n);
        for j in 0..n {
            let q = Self::q(n, j);
            let p = Self::p(n, j);
            h = h.add(&q.mul(&q).unwrap().add(&p.mul(&p).unwrap()).unwrap().scale(0.5)).unwrap();
        }
        h
    }

    pub fn eval(&self, q: &[f64], p: &[f64]) -> Result<f64> {
        check_dim(self.n, q.len())?;
        check_dim(self.n, p.len())?;
        let pt: Vec<f64> = q.iter().chain(p).copied().collect();
        self.poly.eval(&pt)
    }
}

/// `Σ_j (∂a/∂q_j ∂b/∂p_j − ∂a/∂p_j ∂b/∂q_j)`.
pub fn poisson_poly<C: Coefficient>(a: &PolyObservable<C>, b: &PolyObservable<C>) -> Result<PolyObservable<C>> {
    check_dim(a.n, b.n)?;
    let mut out = PolyObservable::zero(a.n);
    for j in 0..a.n {
        let t1 = a.dq(j, 1).mul(&b.dp(j, 1))?;
        let t2 = a.dp(j, 1).mul(&b.dq(j, 1))?;
        out = out.add(&t1)?.sub(&t2)?;
    }
    Ok(out)
}

/// `m`-th power of the bidifferential operator `Σ_j (∂_{q_j}⊗∂_{p_j} − ∂_{p_j}⊗∂_{q_j})`.
pub fn poisson_power<C: Coefficient>(m: u32, a: &PolyObservable<C>, b: &PolyObservable<C>) -> Result<PolyObservable<C>> {
    check_dim(a.n, b.n)?;
    let n = a.n;
    let mut out = PolyObservable::zero(n);
    let mut slots = vec![0u32; 2 * n];
    distribute(m, 0, &mut slots, &mut |slots| {
        let (alpha, beta) = slots.split_at(n);
        let mut weight = factorial(m);
        for &k in slots.iter() {
            weight /= factorial(k);
        }
        if beta.iter().sum::<u32>() % 2 == 1 {
            weight = -weight;
        }
        let mut da = a.clone();
        let mut db = b.clone();
        for j in 0..n {
            da = da.dq(j, alpha[j]).dp(j, beta[j]);
            db = db.dp(j, alpha[j]).dq(j, beta[j]);
        }
        if da.is_zero() || db.is_zero() {
            return Ok(());
        }
        out = out.add(&da.mul(&db)?.scale(weight))?;
        Ok(())
    })?;
    Ok(out)
}

fn distribute(
    remaining: u32,
    slot: usize,
    slots: &mut [u32],
    visit: &mut impl FnMut(&[u32]) -> Result<()>,
) -> Result<()> {
    if slot + 1 == slots.len() {
        slots[slot] = remaining;
        return visit(slots);
    }
    for k in 0..=remaining {
        slots[slot] = k;
        distribute(remaining - k, slot + 1, slots, visit)?;
    }
    Ok(())
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

/// `(4π/ħ)·sin((ħ/4π)Π)(a, b)`, a finite series on polynomials.
///
/// The leading term is computed by [`poisson_poly`], so the result coincides
/// bit for bit with the Poisson bracket whenever the higher terms vanish.
pub fn moyal_poly<C: Coefficient>(hbar: f64, a: &PolyObservable<C>, b: &PolyObservable<C>) -> Result<PolyObservable<C>> {
    if hbar == 0.0 {
        return Err(Error::ZeroPlanck);
    }
    let mut out = poisson_poly(a, b)?;
    let top = a.degree().min(b.degree());
    let r = hbar / (4.0 * PI);
    let mut k = 1u32;
    while 2 * k + 1 <= top {
        let m = 2 * k + 1;
        let w = r.powi(2 * k as i32) / factorial(m) * if k % 2 == 1 { -1.0 } else { 1.0 };
        let term = poisson_power(m, a, b)?;
        if !term.is_zero() {
            out = out.add(&term.scale(w))?;
        }
        k += 1;
    }
    Ok(out)
}
