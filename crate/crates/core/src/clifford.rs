//! Clifford algebras over a diagonal metric.
//!
//! Generators `e_0 .. e_n` satisfy `e_μ e_ν + e_ν e_μ = 2 η^{μν}`, so that
//! `e_μ² = η^{μμ}` and `Σ_j e_j e_j` is the trace of the metric. Elements are
//! stored sparsely, one real coefficient per basis blade; a blade is the
//! strictly increasing index set of its generators, encoded as a bit mask.
//!
//! [`DenseTable`] gives a flat `2^(n+1)` representation for grid workloads
//! where a map per sample would be too slow.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported number of generators (blade masks are `u32`).
pub const MAX_GENERATORS: usize = 16;

/// Diagonal metric `diag(η^{00}, …, η^{nn})` with entries `±1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Signature(Arc<[i8]>);

impl Signature {
    pub fn new(diag: &[i8]) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidSignature("empty signature".into()));
        }
        if diag.len() > MAX_GENERATORS {
            return Err(Error::InvalidSignature(format!(
                "{} generators exceeds the maximum of {MAX_GENERATORS}",
                diag.len()
            )));
        }
        if let Some(bad) = diag.iter().find(|&&d| d != 1 && d != -1) {
            return Err(Error::InvalidSignature(format!("entry {bad} is not ±1")));
        }
        Ok(Signature(diag.into()))
    }

    /// Parses `"+1,-1,-1"`, `"+,-,-"` or `"1 -1"`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut diag = Vec::new();
        for tok in text.split(|c: char| c == ',' || c.is_whitespace()) {
            let tok = tok.trim();
            if tok.is_empty() {
                continue;
            }
            let v = match tok {
                "+" | "+1" | "1" => 1,
                "-" | "-1" => -1,
                other => {
                    return Err(Error::InvalidSignature(format!("cannot parse entry '{other}'")))
                }
            };
            diag.push(v);
        }
        Signature::new(&diag)
    }

    pub fn minkowski(n_space: usize) -> Self {
        let mut d = vec![-1i8; n_space + 1];
        d[0] = 1;
        Signature::new(&d).expect("valid minkowski signature")
    }

    pub fn euclidean_negative(generators: usize) -> Self {
        Signature::new(&vec![-1i8; generators]).expect("valid signature")
    }

    pub fn generators(&self) -> usize {
        self.0.len()
    }

    pub fn blade_count(&self) -> usize {
        1 << self.0.len()
    }

    pub fn diag(&self) -> &[i8] {
        &self.0
    }

    pub fn square(&self, j: usize) -> i8 {
        self.0[j]
    }

    pub(crate) fn check_index(&self, j: usize) -> Result<()> {
        if j < self.generators() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: j, generators: self.generators() })
        }
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "diag(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", if *d > 0 { "+1" } else { "-1" })?;
        }
        write!(f, ")")
    }
}

/// Basis blade as a bit mask over generator indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Blade(pub u32);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn generator(j: usize) -> Blade {
        Blade(1 << j)
    }

    pub fn from_indices(indices: &[usize]) -> Result<Blade> {
        let mut mask = 0u32;
        let mut last: Option<usize> = None;
        for &i in indices {
            if i >= MAX_GENERATORS {
                return Err(Error::IndexOutOfRange { index: i, generators: MAX_GENERATORS });
            }
            if last.is_some_and(|l| l >= i) {
                return Err(Error::InvalidParameter(format!(
                    "blade indices must be strictly increasing: {indices:?}"
                )));
            }
            last = Some(i);
            mask |= 1 << i;
        }
        Ok(Blade(mask))
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|i| self.0 & (1 << i) != 0).collect()
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }
}

/// Sign and metric factor of `blade(a) * blade(b)`; the product blade is `a ^ b`.
fn blade_product_factor(a: u32, b: u32, diag: &[i8]) -> f64 {
    let mut swaps = 0u32;
    let mut shifted = a >> 1;
    while shifted != 0 {
        swaps += (shifted & b).count_ones();
        shifted >>= 1;
    }
    let mut factor = if swaps % 2 == 0 { 1.0 } else { -1.0 };
    let mut common = a & b;
    while common != 0 {
        let i = common.trailing_zeros() as usize;
        factor *= f64::from(diag[i]);
        common &= common - 1;
    }
    factor
}

/// Sparse multivector.
#[derive(Clone, PartialEq)]
pub struct CliffordElement {
    sig: Signature,
    coeffs: BTreeMap<Blade, f64>,
}

impl CliffordElement {
    pub fn zero(sig: &Signature) -> Self {
        CliffordElement { sig: sig.clone(), coeffs: BTreeMap::new() }
    }

    pub fn scalar(sig: &Signature, value: f64) -> Self {
        let mut e = Self::zero(sig);
        e.set(Blade::SCALAR, value);
        e
    }

    /// The generator `e_j`.
    pub fn basis(sig: &Signature, j: usize) -> Result<Self> {
        sig.check_index(j)?;
        let mut e = Self::zero(sig);
        e.set(Blade::generator(j), 1.0);
        Ok(e)
    }

    pub fn from_blades(sig: &Signature, terms: &[(Blade, f64)]) -> Result<Self> {
        let mut e = Self::zero(sig);
        for &(blade, v) in terms {
            if blade.0 >> sig.generators() != 0 {
                return Err(Error::IndexOutOfRange {
                    index: 31 - blade.0.leading_zeros() as usize,
                    generators: sig.generators(),
                });
            }
            let cur = e.get(blade);
            e.set(blade, cur + v);
        }
        Ok(e)
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn get(&self, blade: Blade) -> f64 {
        self.coeffs.get(&blade).copied().unwrap_or(0.0)
    }

    pub fn scalar_part(&self) -> f64 {
        self.get(Blade::SCALAR)
    }

    pub fn set(&mut self, blade: Blade, value: f64) {
        if value == 0.0 {
            self.coeffs.remove(&blade);
        } else {
            self.coeffs.insert(blade, value);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, f64)> + '_ {
        self.coeffs.iter().map(|(b, v)| (*b, *v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when only the scalar blade is present (or the element is zero).
    pub fn is_scalar(&self) -> bool {
        self.coeffs.keys().all(|b| *b == Blade::SCALAR)
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = Self::zero(&self.sig);
        for (b, v) in self.terms() {
            out.set(b, v * s);
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_signature(other)?;
        let mut out = self.clone();
        for (b, v) in other.terms() {
            let cur = out.get(b);
            out.set(b, cur + v);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(-1.0))
    }

    /// Geometric product.
    pub fn geometric_product(&self, other: &Self) -> Result<Self> {
        self.same_signature(other)?;
        let diag = self.sig.diag();
        let mut acc: BTreeMap<Blade, f64> = BTreeMap::new();
        for (a, va) in self.terms() {
            for (b, vb) in other.terms() {
                let f = blade_product_factor(a.0, b.0, diag);
                *acc.entry(Blade(a.0 ^ b.0)).or_insert(0.0) += f * va * vb;
            }
        }
        acc.retain(|_, v| *v != 0.0);
        Ok(CliffordElement { sig: self.sig.clone(), coeffs: acc })
    }

    /// Reversion: reverses the generator order in every blade.
    pub fn reverse(&self) -> Self {
        self.map_by_grade(|g| if (g * (g.saturating_sub(1)) / 2) % 2 == 0 { 1.0 } else { -1.0 })
    }

    /// Grade involution `e_j -> -e_j`.
    pub fn grade_involution(&self) -> Self {
        self.map_by_grade(|g| if g % 2 == 0 { 1.0 } else { -1.0 })
    }

    /// Clifford conjugation: reversion composed with grade involution.
    pub fn conjugate(&self) -> Self {
        self.reverse().grade_involution()
    }

    fn map_by_grade(&self, f: impl Fn(u32) -> f64) -> Self {
        let mut out = Self::zero(&self.sig);
        for (b, v) in self.terms() {
            out.set(b, v * f(b.grade()));
        }
        out
    }

    /// Largest absolute coefficient difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut m: f64 = 0.0;
        for (b, v) in self.terms() {
            m = m.max((v - other.get(b)).abs());
        }
        for (b, v) in other.terms() {
            if !self.coeffs.contains_key(&b) {
                m = m.max(v.abs());
            }
        }
        m
    }

    pub fn norm_max(&self) -> f64 {
        self.terms().fold(0.0, |m, (_, v)| m.max(v.abs()))
    }

    /// Euclidean norm of the coefficient vector.
    pub fn coeff_norm(&self) -> f64 {
        self.terms().map(|(_, v)| v * v).sum::<f64>().sqrt()
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.sig.blade_count()];
        for (b, v) in self.terms() {
            d[b.0 as usize] = v;
        }
        d
    }

    pub fn from_dense(sig: &Signature, dense: &[f64]) -> Self {
        let mut e = Self::zero(sig);
        for (i, &v) in dense.iter().enumerate() {
            e.set(Blade(i as u32), v);
        }
        e
    }

    fn same_signature(&self, other: &Self) -> Result<()> {
        if self.sig == other.sig {
            Ok(())
        } else {
            Err(Error::SignatureMismatch)
        }
    }
}

impl fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (b, v)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " {} ", if v < 0.0 { '-' } else { '+' })?;
            } else if v < 0.0 {
                write!(f, "-")?;
            }
            write!(f, "{}", v.abs())?;
            if b != Blade::SCALAR {
                write!(f, " e")?;
                for j in b.indices() {
                    write!(f, "{j}")?;
                }
            }
        }
        Ok(())
    }
}

// Operator impls panic on signature mismatch; use the `try_*` methods when the
// signatures are not known to agree.
impl<'a> Mul<&'a CliffordElement> for &'a CliffordElement {
    type Output = CliffordElement;
    fn mul(self, rhs: &'a CliffordElement) -> CliffordElement {
        self.geometric_product(rhs).expect("signature mismatch in geometric product")
    }
}

impl<'a> Add<&'a CliffordElement> for &'a CliffordElement {
    type Output = CliffordElement;
    fn add(self, rhs: &'a CliffordElement) -> CliffordElement {
        self.try_add(rhs).expect("signature mismatch in addition")
    }
}

impl<'a> Sub<&'a CliffordElement> for &'a CliffordElement {
    type Output = CliffordElement;
    fn sub(self, rhs: &'a CliffordElement) -> CliffordElement {
        self.try_sub(rhs).expect("signature mismatch in subtraction")
    }
}

impl Neg for &CliffordElement {
    type Output = CliffordElement;
    fn neg(self) -> CliffordElement {
        self.scale(-1.0)
    }
}

pub fn geometric_product(a: &CliffordElement, b: &CliffordElement) -> Result<CliffordElement> {
    a.geometric_product(b)
}

/// `exp(a + e_j b)`, circular when `e_j² = -1` and hyperbolic when `e_j² = +1`.
pub fn blade_exp(a: f64, j: usize, b: f64, sig: &Signature) -> Result<CliffordElement> {
    sig.check_index(j)?;
    let (even, odd) = if sig.square(j) < 0 { (b.cos(), b.sin()) } else { (b.cosh(), b.sinh()) };
    let scale = a.exp();
    let mut e = CliffordElement::zero(sig);
    e.set(Blade::SCALAR, scale * even);
    e.set(Blade::generator(j), scale * odd);
    Ok(e)
}

/// `Σ_j e_j e_j = Σ_j η^{jj}`.
pub fn center_constant(sig: &Signature) -> f64 {
    sig.diag().iter().map(|&d| f64::from(d)).sum()
}

/// Precomputed product table for dense multivectors (`2^(n+1)` coefficients).
#[derive(Clone, Debug)]
pub struct DenseTable {
    sig: Signature,
    factors: Vec<f64>,
}

impl DenseTable {
    pub fn new(sig: &Signature) -> Self {
        let m = sig.blade_count();
        let mut factors = vec![0.0; m * m];
        for a in 0..m {
            for b in 0..m {
                factors[a * m + b] = blade_product_factor(a as u32, b as u32, sig.diag());
            }
        }
        DenseTable { sig: sig.clone(), factors }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn width(&self) -> usize {
        self.sig.blade_count()
    }

    /// `out += x * y`.
    pub fn mul_acc(&self, x: &[f64], y: &[f64], out: &mut [f64]) {
        let m = self.width();
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0.0 {
                continue;
            }
            let row = &self.factors[a * m..(a + 1) * m];
            for (b, &yb) in y.iter().enumerate() {
                if yb != 0.0 {
                    out[a ^ b] += row[b] * xa * yb;
                }
            }
        }
    }

    pub fn mul(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.width()];
        self.mul_acc(x, y, &mut out);
        out
    }

    /// Clifford conjugation on a dense multivector.
    pub fn conjugate(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .enumerate()
            .map(|(b, &v)| {
                let g = (b as u32).count_ones();
                // reversion sign (-1)^{g(g-1)/2} times involution sign (-1)^g
                let s = ((g * (g.saturating_sub(1)) / 2) + g) % 2;
                if s == 0 {
                    v
                } else {
                    -v
                }
            })
            .collect()
    }

    /// Dense `exp(e_j θ)`.
    pub fn blade_exp(&self, j: usize, theta: f64) -> Vec<f64> {
        let mut d = vec![0.0; self.width()];
        let (even, odd) =
            if self.sig.square(j) < 0 { (theta.cos(), theta.sin()) } else { (theta.cosh(), theta.sinh()) };
        d[0] = even;
        d[1 << j] = odd;
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(d: &[i8]) -> Signature {
        Signature::new(d).unwrap()
    }

    fn all_blades(s: &Signature) -> Vec<CliffordElement> {
        (0..s.blade_count())
            .map(|b| CliffordElement::from_blades(s, &[(Blade(b as u32), 1.0)]).unwrap())
            .collect()
    }

    #[test]
    fn generator_squares_follow_metric() {
        let s = sig(&[1, -1]);
        let e0 = CliffordElement::basis(&s, 0).unwrap();
        let e1 = CliffordElement::basis(&s, 1).unwrap();
        assert_eq!(&e0 * &e0, CliffordElement::scalar(&s, 1.0));
        assert_eq!(&e1 * &e1, CliffordElement::scalar(&s, -1.0));
        assert!((&(&e0 * &e1) + &(&e1 * &e0)).is_zero());
    }

    #[test]
    fn minkowski_center_is_minus_two() {
        let s = Signature::minkowski(3);
        let mut c = CliffordElement::zero(&s);
        for j in 0..4 {
            let e = CliffordElement::basis(&s, j).unwrap();
            c = &c + &(&e * &e);
        }
        assert_eq!(c, CliffordElement::scalar(&s, -2.0));
        assert_eq!(center_constant(&s), -2.0);
        assert_eq!(center_constant(&sig(&[-1, -1])), -2.0);
        assert_eq!(center_constant(&sig(&[1, 1])), 2.0);
    }

    #[test]
    fn exhaustive_associativity_small_algebras() {
        for d in [vec![1i8], vec![-1], vec![1, -1], vec![-1, -1], vec![1, 1, -1], vec![-1, -1, -1]] {
            let s = sig(&d);
            let blades = all_blades(&s);
            for a in &blades {
                for b in &blades {
                    for c in &blades {
                        assert_eq!(&(a * b) * c, a * &(b * c), "signature {s:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn blade_exp_cases() {
        let s = sig(&[-1, 1]);
        assert_eq!(blade_exp(0.0, 0, 0.0, &s).unwrap(), CliffordElement::scalar(&s, 1.0));
        let r = blade_exp(0.0, 0, std::f64::consts::PI, &s).unwrap();
        assert!((r.scalar_part() + 1.0).abs() < 1e-15);
        assert!(r.get(Blade::generator(0)).abs() < 1e-15);
        assert!(blade_exp(0.0, 2, 1.0, &s).is_err());
    }

    #[test]
    fn blade_exp_matches_power_series() {
        // term-by-term sum of exp(a + e_j b) = e^a Σ (e_j b)^k / k!
        for d in [vec![-1i8, 1], vec![1, -1]] {
            let s = sig(&d);
            for j in 0..2 {
                let (a, b): (f64, f64) = (0.3, 1.0);
                let step = CliffordElement::basis(&s, j).unwrap().scale(b);
                let mut term = CliffordElement::scalar(&s, 1.0);
                let mut sum = term.clone();
                for k in 1..40 {
                    term = (&term * &step).scale(1.0 / k as f64);
                    sum = &sum + &term;
                }
                let series = sum.scale(a.exp());
                let closed = blade_exp(a, j, b, &s).unwrap();
                assert!(series.max_abs_diff(&closed) < 1e-13);
            }
        }
        // cosh(1) + e_j sinh(1)
        let s = sig(&[1]);
        let r = blade_exp(0.0, 0, 1.0, &s).unwrap();
        assert!((r.scalar_part() - 1.543_080_634_815_243_7).abs() < 1e-15);
        assert!((r.get(Blade::generator(0)) - 1.175_201_193_643_801_4).abs() < 1e-15);
    }

    #[test]
    fn conjugation_negates_generators() {
        let s = sig(&[-1, -1]);
        let e01 = CliffordElement::from_blades(&s, &[(Blade(0b11), 1.0)]).unwrap();
        let e0 = CliffordElement::basis(&s, 0).unwrap();
        assert_eq!(e0.conjugate(), e0.scale(-1.0));
        // (e0 e1)~ = e1 e0 = -e0 e1, involution keeps grade 2
        assert_eq!(e01.conjugate(), e01.scale(-1.0));
        let table = DenseTable::new(&s);
        let x = vec![1.0, 2.0, 3.0, 4.0];
        let sparse = CliffordElement::from_dense(&s, &x);
        assert_eq!(table.conjugate(&x), sparse.conjugate().to_dense());
    }

    #[test]
    fn dense_table_matches_sparse_product() {
        let s = sig(&[1, -1, -1]);
        let t = DenseTable::new(&s);
        let x: Vec<f64> = (0..8).map(|i| (i as f64) * 0.5 - 1.0).collect();
        let y: Vec<f64> = (0..8).map(|i| 2.0 - (i as f64) * 0.25).collect();
        let dense = t.mul(&x, &y);
        let sparse = &CliffordElement::from_dense(&s, &x) * &CliffordElement::from_dense(&s, &y);
        assert!(CliffordElement::from_dense(&s, &dense).max_abs_diff(&sparse) < 1e-14);
    }

    #[test]
    fn mismatched_signatures_are_rejected() {
        let a = CliffordElement::scalar(&sig(&[1]), 1.0);
        let b = CliffordElement::scalar(&sig(&[-1]), 1.0);
        assert_eq!(a.geometric_product(&b), Err(Error::SignatureMismatch));
        assert!(Signature::new(&[]).is_err());
        assert!(Signature::new(&[2]).is_err());
    }

    #[test]
    fn signature_parsing() {
        assert_eq!(Signature::parse("+1,-1").unwrap(), sig(&[1, -1]));
        assert_eq!(Signature::parse("-,-").unwrap(), sig(&[-1, -1]));
        assert!(Signature::parse("+1,0").is_err());
    }
}
