//! Clifford-valued field observables as delta atoms in the partial transforms
//! `k̂_j(0,…,h_j,…,0,x,y)`, and their brackets.
//!
//! An atom lives in channel `j` with Planck component `h`. Pairs of atoms
//! combine only within a channel. With the first operand at `(x₁,y₁)` and the
//! second at `(x₂,y₂)`, the phase is `φ_j = x₂y₁_j − x₁y₂_j`, and the result
//! coefficient is `c₁c₂·K_j(φ_j)` with the kernel multiplied on the right.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::clifford::{blade_exp, CliffordElement, Signature};
use crate::error::{check_dim, Error, Result};
use crate::pbrackets::bits;
use crate::poly::Poly;

use super::PlanckTuple;

#[derive(Clone, Debug, PartialEq)]
pub struct FieldAtom {
    pub channel: usize,
    pub h: f64,
    pub coeff: CliffordElement,
    pub x: f64,
    pub y: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct FieldKey {
    channel: usize,
    h: u64,
    x: u64,
    y: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FieldCharacterSum {
    sig: Signature,
    atoms: BTreeMap<FieldKey, CliffordElement>,
}

impl FieldCharacterSum {
    pub fn new(sig: &Signature) -> Self {
        FieldCharacterSum { sig: sig.clone(), atoms: BTreeMap::new() }
    }

    pub fn from_atoms(sig: &Signature, atoms: impl IntoIterator<Item = FieldAtom>) -> Result<Self> {
        let mut s = FieldCharacterSum::new(sig);
        for a in atoms {
            s.push(a)?;
        }
        Ok(s)
    }

    /// The same `(coeff, x, y)` atoms placed in every channel `j` at `h_j`.
    pub fn replicated(
        sig: &Signature,
        h: &PlanckTuple,
        atoms: &[(CliffordElement, f64, Vec<f64>)],
    ) -> Result<Self> {
        check_dim(sig.generators(), h.generators())?;
        let mut s = FieldCharacterSum::new(sig);
        for (j, &hj) in h.h.iter().enumerate() {
            for (c, x, y) in atoms {
                s.push(FieldAtom { channel: j, h: hj, coeff: c.clone(), x: *x, y: y.clone() })?;
            }
        }
        Ok(s)
    }

    pub fn push(&mut self, atom: FieldAtom) -> Result<()> {
        self.sig.check_index(atom.channel)?;
        check_dim(self.sig.generators(), atom.y.len())?;
        if atom.coeff.signature() != &self.sig {
            return Err(Error::SignatureMismatch);
        }
        if !atom.h.is_finite() || !atom.x.is_finite() || atom.y.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite atom data".into()));
        }
        let key = FieldKey {
            channel: atom.channel,
            h: bits(atom.h),
            x: bits(atom.x),
            y: atom.y.iter().map(|v| bits(*v)).collect(),
        };
        self.add_at(key, &atom.coeff);
        Ok(())
    }

    fn add_at(&mut self, key: FieldKey, c: &CliffordElement) {
        if c.is_zero() {
            return;
        }
        let sum = match self.atoms.get(&key) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.atoms.remove(&key);
        } else {
            self.atoms.insert(key, sum);
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = FieldAtom> + '_ {
        self.atoms.iter().map(|(k, c)| FieldAtom {
            channel: k.channel,
            h: f64::from_bits(k.h),
            coeff: c.clone(),
            x: f64::from_bits(k.x),
            y: k.y.iter().map(|b| f64::from_bits(*b)).collect(),
        })
    }

    pub fn coeff_at(&self, channel: usize, h: f64, x: f64, y: &[f64]) -> CliffordElement {
        let key = FieldKey { channel, h: bits(h), x: bits(x), y: y.iter().map(|v| bits(*v)).collect() };
        self.atoms.get(&key).cloned().unwrap_or_else(|| CliffordElement::zero(&self.sig))
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut out = FieldCharacterSum::new(&self.sig);
        for (key, c) in &self.atoms {
            out.add_at(key.clone(), &c.scale(k));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch);
        }
        let mut out = self.clone();
        for (k, c) in &other.atoms {
            out.add_at(k.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    /// Atoms of the channels whose Planck component is non-zero.
    pub fn nonzero_channels(&self) -> Self {
        let mut out = FieldCharacterSum::new(&self.sig);
        for (k, c) in &self.atoms {
            if k.h != 0 {
                out.atoms.insert(k.clone(), c.clone());
            }
        }
        out
    }

    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let mut m: f64 = 0.0;
        for (k, c) in &self.atoms {
            m = m.max(match other.atoms.get(k) {
                Some(o) => c.max_abs_diff(o),
                None => c.norm_max(),
            });
        }
        for (k, c) in &other.atoms {
            if !self.atoms.contains_key(k) {
                m = m.max(c.norm_max());
            }
        }
        m
    }

    fn pairwise(
        a: &Self,
        b: &Self,
        kernel: impl Fn(usize, f64, f64) -> Result<CliffordElement>,
    ) -> Result<Self> {
        if a.sig != b.sig {
            return Err(Error::SignatureMismatch);
        }
        let mut out = FieldCharacterSum::new(&a.sig);
        for (ka, ca) in &a.atoms {
            let (x1, y1) = (f64::from_bits(ka.x), f64::from_bits(ka.y[ka.channel]));
            for (kb, cb) in b.atoms.range(channel_range(ka.channel, ka.h)) {
                let (x2, y2) = (f64::from_bits(kb.x), f64::from_bits(kb.y[kb.channel]));
                let phi = x2 * y1 - x1 * y2;
                let k = kernel(ka.channel, f64::from_bits(ka.h), phi)?;
                let coeff = &(ca * cb) * &k;
                let key = FieldKey {
                    channel: ka.channel,
                    h: ka.h,
                    x: bits(f64::from_bits(ka.x) + f64::from_bits(kb.x)),
                    y: ka.y.iter().zip(&kb.y).map(|(u, v)| bits(f64::from_bits(*u) + f64::from_bits(*v))).collect(),
                };
                out.add_at(key, &coeff);
            }
        }
        Ok(out)
    }
}

fn channel_range(channel: usize, h: u64) -> std::ops::RangeInclusive<FieldKey> {
    FieldKey { channel, h, x: 0, y: Vec::new() }..=FieldKey { channel, h, x: u64::MAX, y: vec![u64::MAX; 64] }
}

/// Field bracket kernel: `(4π/h) sin(πhφ)·e_j`, and `4π²φ·e_j` at `h = 0`.
pub fn field_kernel(sig: &Signature, j: usize, h: f64, phi: f64) -> Result<CliffordElement> {
    let k = crate::pbrackets::pmech_kernel(h, phi);
    Ok(CliffordElement::basis(sig, j)?.scale(k))
}

/// Restricted star product: kernel `exp(πe_j h φ_j)`.
pub fn field_star(a: &FieldCharacterSum, b: &FieldCharacterSum) -> Result<FieldCharacterSum> {
    let sig = a.sig.clone();
    FieldCharacterSum::pairwise(a, b, |j, h, phi| blade_exp(0.0, j, PI * h * phi, &sig))
}

/// `a ⋆ b − b ⋆ a`.
pub fn field_commutator(a: &FieldCharacterSum, b: &FieldCharacterSum) -> Result<FieldCharacterSum> {
    field_star(a, b)?.sub(&field_star(b, a)?)
}

pub fn field_bracket(a: &FieldCharacterSum, b: &FieldCharacterSum) -> Result<FieldCharacterSum> {
    let sig = a.sig.clone();
    FieldCharacterSum::pairwise(a, b, |j, h, phi| field_kernel(&sig, j, h, phi))
}

/// Image of the bracket under the representation with Planck tuple `h`:
/// `Σ_j (4πe_j/h_j) sin(πh_jφ_j)` over channels, all `h_j ≠ 0`.
pub fn quantum_bracket(a: &FieldCharacterSum, b: &FieldCharacterSum, h: &PlanckTuple) -> Result<FieldCharacterSum> {
    if a.sig != b.sig {
        return Err(Error::SignatureMismatch);
    }
    check_dim(a.sig.generators(), h.generators())?;
    if !h.all_nonzero() {
        return Err(Error::ZeroPlanck);
    }
    for atom in a.atoms().chain(b.atoms()) {
        if atom.h != h.h[atom.channel] {
            return Err(Error::InvalidParameter(format!(
                "atom in channel {} has h = {}, representation uses h = {}",
                atom.channel, atom.h, h.h[atom.channel]
            )));
        }
    }
    let mut out = FieldCharacterSum::new(&a.sig);
    for (j, &hj) in h.h.iter().enumerate() {
        let ej = CliffordElement::basis(&a.sig, j)?;
        let left: Vec<FieldAtom> = a.atoms().filter(|t| t.channel == j).collect();
        let right: Vec<FieldAtom> = b.atoms().filter(|t| t.channel == j).collect();
        for p in &left {
            for r in &right {
                let phi = r.x * p.y[j] - p.x * r.y[j];
                let w = 4.0 * PI / hj * (PI * hj * phi).sin();
                out.push(FieldAtom {
                    channel: j,
                    h: hj,
                    coeff: &(&p.coeff * &r.coeff) * &ej.scale(w),
                    x: p.x + r.x,
                    y: p.y.iter().zip(&r.y).map(|(u, v)| u + v).collect(),
                })?;
            }
        }
    }
    Ok(out)
}

/// Complexified Clifford number `re + i·im`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexClifford {
    pub re: CliffordElement,
    pub im: CliffordElement,
}

impl ComplexClifford {
    pub fn zero(sig: &Signature) -> Self {
        ComplexClifford { re: CliffordElement::zero(sig), im: CliffordElement::zero(sig) }
    }

    pub fn from_parts(z: Complex64, c: &CliffordElement) -> Self {
        ComplexClifford { re: c.scale(z.re), im: c.scale(z.im) }
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexClifford { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ComplexClifford { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &Self) -> Self {
        ComplexClifford {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }

    pub fn mul_right(&self, c: &CliffordElement) -> Self {
        ComplexClifford { re: &self.re * c, im: &self.im * c }
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        self.re.max_abs_diff(&o.re).max(self.im.max_abs_diff(&o.im))
    }

    pub fn norm_max(&self) -> f64 {
        self.re.norm_max().max(self.im.norm_max())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrigTerm {
    pub z: Complex64,
    pub c: CliffordElement,
    pub x: f64,
    pub y: Vec<f64>,
}

/// `Σ z·c·e^{−2πi(qx + p·y)}` as a function of `(q, p⁰…pⁿ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigSeries {
    sig: Signature,
    terms: Vec<TrigTerm>,
}

impl TrigSeries {
    pub fn new(sig: &Signature) -> Self {
        TrigSeries { sig: sig.clone(), terms: Vec::new() }
    }

    pub fn terms(&self) -> &[TrigTerm] {
        &self.terms
    }

    pub fn eval(&self, q: f64, p: &[f64]) -> Result<ComplexClifford> {
        check_dim(self.sig.generators(), p.len())?;
        let mut acc = ComplexClifford::zero(&self.sig);
        for t in &self.terms {
            let arg = q * t.x + t.y.iter().zip(p).map(|(a, b)| a * b).sum::<f64>();
            let z = t.z * Complex64::from_polar(1.0, -2.0 * PI * arg);
            acc = acc.add(&ComplexClifford::from_parts(z, &t.c));
        }
        Ok(acc)
    }

    fn map_z(&self, f: impl Fn(&TrigTerm) -> Complex64) -> Self {
        TrigSeries {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|t| TrigTerm { z: f(t), ..t.clone() }).collect(),
        }
    }

    pub fn dq(&self) -> Self {
        self.map_z(|t| t.z * Complex64::new(0.0, -2.0 * PI * t.x))
    }

    pub fn dp(&self, j: usize) -> Self {
        self.map_z(|t| t.z * Complex64::new(0.0, -2.0 * PI * t.y[j]))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        TrigSeries { sig: self.sig.clone(), terms }
    }
}

/// Full Fourier transforms of a classical (`h = 0`) field observable, one per channel.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalImage {
    channels: Vec<TrigSeries>,
}

impl ClassicalImage {
    pub fn channel(&self, j: usize) -> &TrigSeries {
        &self.channels[j]
    }

    pub fn generators(&self) -> usize {
        self.channels.len()
    }

    pub fn total(&self) -> TrigSeries {
        let mut it = self.channels.iter();
        let first = it.next().expect("at least one channel").clone();
        it.fold(first, |acc, s| acc.add(s))
    }

    /// `Σ_j (∂_q A ∂_{p^j} B − ∂_{p^j} A ∂_q B) e_j` at `(q, p)`, built from
    /// pointwise values of the channel-`j` transforms.
    pub fn poisson_eval(a: &Self, b: &Self, q: f64, p: &[f64]) -> Result<ComplexClifford> {
        check_dim(a.generators(), b.generators())?;
        let sig = a.channels[0].sig.clone();
        let mut acc = ComplexClifford::zero(&sig);
        for j in 0..a.generators() {
            let (aj, bj) = (&a.channels[j], &b.channels[j]);
            let t1 = aj.dq().eval(q, p)?.mul(&bj.dp(j).eval(q, p)?);
            let t2 = aj.dp(j).eval(q, p)?.mul(&bj.dq().eval(q, p)?);
            acc = acc.add(&t1.sub(&t2).mul_right(&CliffordElement::basis(&sig, j)?));
        }
        Ok(acc)
    }
}

/// Full Fourier transform `(x, y) → (q, p)` of each channel; every atom must have `h = 0`.
pub fn classical_rep(a: &FieldCharacterSum) -> Result<ClassicalImage> {
    let mut channels = vec![TrigSeries::new(&a.sig); a.sig.generators()];
    for atom in a.atoms() {
        if atom.h != 0.0 {
            return Err(Error::InvalidParameter(format!(
                "classical representation needs h = 0; channel {} has h = {}",
                atom.channel, atom.h
            )));
        }
        channels[atom.channel].terms.push(TrigTerm {
            z: Complex64::new(1.0, 0.0),
            c: atom.coeff,
            x: atom.x,
            y: atom.y,
        });
    }
    Ok(ClassicalImage { channels })
}

/// `Σ_j (∂_q A ∂_{p^j} B − ∂_{p^j} A ∂_q B) e_j` on polynomials in `(q, p⁰…pⁿ)`.
pub fn field_poisson_poly(
    sig: &Signature,
    a: &Poly<CliffordElement>,
    b: &Poly<CliffordElement>,
) -> Result<Poly<CliffordElement>> {
    let g = sig.generators();
    check_dim(g + 1, a.nvars())?;
    check_dim(g + 1, b.nvars())?;
    let mut out = Poly::zero(g + 1);
    for j in 0..g {
        let t1 = a.derivative(0, 1).mul(&b.derivative(j + 1, 1))?;
        let t2 = a.derivative(j + 1, 1).mul(&b.derivative(0, 1))?;
        out = out.add(&t1.sub(&t2)?.mul_coeff_right(&CliffordElement::basis(sig, j)?))?;
    }
    Ok(out)
}
