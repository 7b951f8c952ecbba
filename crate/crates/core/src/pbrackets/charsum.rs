//! Observables as finite sums of delta atoms in the partial Fourier picture.
//!
//! An atom `(ħ, c, x, y)` stands for `c·δ(x − x₀)δ(y − y₀)` in the channel
//! with Planck parameter `ħ`. Substituting two atoms into the twisted
//! convolution collapses the integral: the product lands at the summed
//! position and picks up the phase `e^{iπħφ}` with
//! `φ = x₂·y₁ − x₁·y₂` (first operand `(x₁,y₁)`).

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::heisenberg::dot;

/// Planck channel of a [`CharacterSum`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Channel {
    pub hbar: f64,
}

impl Channel {
    pub fn is_classical(&self) -> bool {
        self.hbar == 0.0
    }
}

/// Coefficient ring carried by a channel's atoms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientRing {
    Complex,
    Clifford,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Atom {
    pub hbar: f64,
    pub coeff: Complex64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl Atom {
    pub fn new(hbar: f64, coeff: Complex64, x: Vec<f64>, y: Vec<f64>) -> Self {
        Atom { hbar, coeff, x, y }
    }

    /// Unit atom at the origin.
    pub fn unit(hbar: f64, n: usize) -> Self {
        Atom { hbar, coeff: Complex64::new(1.0, 0.0), x: vec![0.0; n], y: vec![0.0; n] }
    }
}

/// Exact bit-pattern key; `-0.0` is folded into `0.0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct AtomKey {
    pub(crate) hbar: u64,
    pub(crate) pos: Vec<u64>,
}

pub(crate) fn bits(v: f64) -> u64 {
    if v == 0.0 {
        0
    } else {
        v.to_bits()
    }
}

/// `φ = x₂·y₁ − x₁·y₂`.
pub fn phase_form(x1: &[f64], y1: &[f64], x2: &[f64], y2: &[f64]) -> f64 {
    dot(x2, y1) - dot(x1, y2)
}

/// Pairwise kernel of the p-mechanical bracket: `(4π/ħ) sin(πħφ)`, and `4π²φ` at `ħ = 0`.
pub fn pmech_kernel(hbar: f64, phi: f64) -> f64 {
    if hbar == 0.0 {
        4.0 * PI * PI * phi
    } else {
        4.0 * PI / hbar * (PI * hbar * phi).sin()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharacterSum {
    n: usize,
    atoms: BTreeMap<AtomKey, Complex64>,
}

impl CharacterSum {
    pub fn new(n: usize) -> Self {
        CharacterSum { n, atoms: BTreeMap::new() }
    }

    pub fn from_atoms(n: usize, atoms: impl IntoIterator<Item = Atom>) -> Result<Self> {
        let mut s = CharacterSum::new(n);
        for a in atoms {
            s.push(a)?;
        }
        Ok(s)
    }

    /// Single atom.
    pub fn atom(hbar: f64, coeff: Complex64, x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        let n = x.len();
        CharacterSum::from_atoms(n, [Atom::new(hbar, coeff, x, y)])
    }

    /// Adds an atom, merging with an existing atom at the same channel and position.
    pub fn push(&mut self, atom: Atom) -> Result<()> {
        check_dim(self.n, atom.x.len())?;
        check_dim(self.n, atom.y.len())?;
        if !atom.hbar.is_finite() || atom.x.iter().chain(&atom.y).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite atom data".into()));
        }
        let key = AtomKey {
            hbar: bits(atom.hbar),
            pos: atom.x.iter().chain(&atom.y).map(|v| bits(*v)).collect(),
        };
        self.add_at(key, atom.coeff);
        Ok(())
    }

    fn add_at(&mut self, key: AtomKey, c: Complex64) {
        let entry = self.atoms.entry(key).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        if entry.re == 0.0 && entry.im == 0.0 {
            let k = self
                .atoms
                .iter()
                .find(|(_, v)| v.re == 0.0 && v.im == 0.0)
                .map(|(k, _)| k.clone());
            if let Some(k) = k {
                self.atoms.remove(&k);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        self.atoms.iter().map(|(k, c)| self.decode(k, *c))
    }

    fn decode(&self, k: &AtomKey, c: Complex64) -> Atom {
        let pos: Vec<f64> = k.pos.iter().map(|b| f64::from_bits(*b)).collect();
        Atom {
            hbar: f64::from_bits(k.hbar),
            coeff: c,
            x: pos[..self.n].to_vec(),
            y: pos[self.n..].to_vec(),
        }
    }

    /// Distinct channels present, in ascending key order.
    pub fn channels(&self) -> Vec<Channel> {
        let mut seen: Vec<u64> = self.atoms.keys().map(|k| k.hbar).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.into_iter().map(|b| Channel { hbar: f64::from_bits(b) }).collect()
    }

    /// Coefficient of the atom at `(hbar, x, y)`, zero if absent.
    pub fn coeff_at(&self, hbar: f64, x: &[f64], y: &[f64]) -> Complex64 {
        let key = AtomKey { hbar: bits(hbar), pos: x.iter().chain(y).map(|v| bits(*v)).collect() };
        self.atoms.get(&key).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let mut out = CharacterSum::new(self.n);
        for (key, c) in &self.atoms {
            let v = c * k;
            if v.re != 0.0 || v.im != 0.0 {
                out.atoms.insert(key.clone(), v);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.n, other.n)?;
        let mut out = self.clone();
        for (k, c) in &other.atoms {
            out.add_at(k.clone(), *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Moves every atom to channel `hbar`.
    pub fn with_hbar(&self, hbar: f64) -> Self {
        let mut out = CharacterSum::new(self.n);
        for (k, c) in &self.atoms {
            out.add_at(AtomKey { hbar: bits(hbar), pos: k.pos.clone() }, *c);
        }
        out
    }

    /// Largest coefficient deviation over the union of atoms.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let mut m: f64 = 0.0;
        for (k, c) in &self.atoms {
            let o = other.atoms.get(k).copied().unwrap_or_default();
            m = m.max((c - o).norm());
        }
        for (k, c) in &other.atoms {
            if !self.atoms.contains_key(k) {
                m = m.max(c.norm());
            }
        }
        m
    }

    /// Full Fourier transform of the `ħ = 0` atoms,
    /// `F(q,p) = Σ c·e^{−2πi(q·x + p·y)}`.
    pub fn fourier_eval(&self, q: &[f64], p: &[f64]) -> Result<Complex64> {
        check_dim(self.n, q.len())?;
        check_dim(self.n, p.len())?;
        Ok(self
            .atoms()
            .filter(|a| a.hbar == 0.0)
            .map(|a| a.coeff * Complex64::from_polar(1.0, -2.0 * PI * (dot(q, &a.x) + dot(p, &a.y))))
            .sum())
    }

    /// Channelwise multiplication by `2πiħ`: the central vector field `S` acting on `e^{2πiħs}`.
    pub fn central_derivative(&self) -> Self {
        let mut out = CharacterSum::new(self.n);
        for (k, c) in &self.atoms {
            let h = f64::from_bits(k.hbar);
            out.add_at(k.clone(), c * Complex64::new(0.0, 2.0 * PI * h));
        }
        out
    }

    /// Combines same-channel atom pairs: the result atom sits at the summed
    /// position with coefficient `c₁c₂·kernel(ħ, φ)`.
    pub(crate) fn pairwise(
        a: &Self,
        b: &Self,
        kernel: impl Fn(f64, f64) -> Complex64,
    ) -> Result<Self> {
        check_dim(a.n, b.n)?;
        let n = a.n;
        let mut by_channel: BTreeMap<u64, Vec<(&AtomKey, Complex64)>> = BTreeMap::new();
        for (k, c) in &b.atoms {
            by_channel.entry(k.hbar).or_default().push((k, *c));
        }
        let mut out = CharacterSum::new(n);
        for (ka, ca) in &a.atoms {
            let Some(partners) = by_channel.get(&ka.hbar) else { continue };
            let hbar = f64::from_bits(ka.hbar);
            let pa: Vec<f64> = ka.pos.iter().map(|v| f64::from_bits(*v)).collect();
            let (x1, y1) = pa.split_at(n);
            for (kb, cb) in partners {
                let pb: Vec<f64> = kb.pos.iter().map(|v| f64::from_bits(*v)).collect();
                let (x2, y2) = pb.split_at(n);
                let phi = phase_form(x1, y1, x2, y2);
                let coeff = ca * cb * kernel(hbar, phi);
                if coeff.re == 0.0 && coeff.im == 0.0 {
                    continue;
                }
                let pos = pa.iter().zip(&pb).map(|(u, v)| bits(u + v)).collect();
                out.add_at(AtomKey { hbar: ka.hbar, pos }, coeff);
            }
        }
        Ok(out)
    }
}

/// Twisted convolution, channel by channel: phase `e^{iπħφ}`.
pub fn star(a: &CharacterSum, b: &CharacterSum) -> Result<CharacterSum> {
    CharacterSum::pairwise(a, b, |hbar, phi| Complex64::from_polar(1.0, PI * hbar * phi))
}

/// `a ⋆ b − b ⋆ a`, computed directly with the kernel `2i·sin(πħφ)`.
pub fn commutator(a: &CharacterSum, b: &CharacterSum) -> Result<CharacterSum> {
    CharacterSum::pairwise(a, b, |hbar, phi| Complex64::new(0.0, 2.0 * (PI * hbar * phi).sin()))
}

/// Multiplies each channel by `2π/(iħ)`; channels with `ħ = 0` are rejected.
pub fn antiderivative(a: &CharacterSum) -> Result<CharacterSum> {
    if a.channels().iter().any(Channel::is_classical) {
        return Err(Error::ZeroChannel);
    }
    let mut out = CharacterSum::new(a.n);
    for (k, c) in &a.atoms {
        let h = f64::from_bits(k.hbar);
        out.add_at(k.clone(), c * Complex64::new(0.0, -2.0 * PI / h));
    }
    Ok(out)
}

/// p-mechanical bracket: kernel `(4π/ħ) sin(πħφ)` for `ħ ≠ 0`, `4π²φ` for `ħ = 0`.
pub fn pmech_bracket(a: &CharacterSum, b: &CharacterSum) -> Result<CharacterSum> {
    CharacterSum::pairwise(a, b, |hbar, phi| Complex64::new(pmech_kernel(hbar, phi), 0.0))
}
