//! Independent reference computations shared by the integration tests.

#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use pmech_core::clifford::{Blade, CliffordElement, Signature};
use pmech_core::pbrackets::{CharacterSum, PolyObservable};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Product of two basis blades by explicit reordering of generator words.
pub fn blade_product_oracle(diag: &[i8], a: u32, b: u32) -> (u32, f64) {
    let mut word: Vec<usize> = (0..32).filter(|k| a >> k & 1 == 1).collect();
    word.extend((0..32).filter(|k| b >> k & 1 == 1));
    let mut sign = 1.0;
    // bubble sort; every transposition of distinct generators flips the sign
    for i in 0..word.len() {
        for j in 0..word.len().saturating_sub(i + 1) {
            if word[j] > word[j + 1] {
                word.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    let mut out = Vec::new();
    let mut i = 0;
    while i < word.len() {
        if i + 1 < word.len() && word[i] == word[i + 1] {
            sign *= f64::from(diag[word[i]]);
            i += 2;
        } else {
            out.push(word[i]);
            i += 1;
        }
    }
    (out.iter().fold(0u32, |m, &k| m | 1 << k), sign)
}

/// `∫∫ G_a(u) G_b(v) e^{iθ(u,v)} du dv` for unit-mass Gaussians of width `sigma`
/// centred at `a` and `b` in the plane, by tensor trapezoid quadrature.
pub fn mollified_mass(a: [f64; 2], b: [f64; 2], sigma: f64, theta: impl Fn([f64; 2], [f64; 2]) -> f64) -> Complex64 {
    let m = 21;
    let half = 7.0 * sigma;
    let step = 2.0 * half / (m - 1) as f64;
    let nodes: Vec<f64> = (0..m).map(|i| -half + i as f64 * step).collect();
    let w: Vec<f64> = nodes.iter().map(|t| (-t * t / (2.0 * sigma * sigma)).exp()).collect();
    let norm: f64 = w.iter().sum::<f64>().powi(2);
    let mut acc = Complex64::new(0.0, 0.0);
    for (i0, d0) in nodes.iter().enumerate() {
        for (i1, d1) in nodes.iter().enumerate() {
            let u = [a[0] + d0, a[1] + d1];
            let wu = w[i0] * w[i1];
            for (j0, e0) in nodes.iter().enumerate() {
                for (j1, e1) in nodes.iter().enumerate() {
                    let v = [b[0] + e0, b[1] + e1];
                    acc += Complex64::from_polar(wu * w[j0] * w[j1], theta(u, v));
                }
            }
        }
    }
    acc / (norm * norm)
}

/// Twisted-convolution phase `πħ(v_x u_y − u_x v_y)`.
pub fn star_phase(hbar: f64) -> impl Fn([f64; 2], [f64; 2]) -> f64 + Copy {
    move |u, v| PI * hbar * (v[0] * u[1] - u[0] * v[1])
}

/// `re + im·e_j`: image of a complex number when `e_j² = −1`.
pub fn complex_to_clifford(sig: &Signature, j: usize, z: Complex64) -> CliffordElement {
    CliffordElement::from_blades(sig, &[(Blade::SCALAR, z.re), (Blade::generator(j), z.im)]).unwrap()
}

/// Pointwise Poisson bracket of the Fourier images of two classical
/// character sums, from closed-form derivatives of `e^{−2πi(q·x + p·y)}`.
pub fn poisson_of_images(a: &CharacterSum, b: &CharacterSum, q: &[f64], p: &[f64]) -> Complex64 {
    let n = q.len();
    let image = |s: &CharacterSum| -> Vec<(Complex64, Vec<f64>, Vec<f64>)> {
        s.atoms()
            .map(|t| {
                let arg: f64 = (0..n).map(|k| q[k] * t.x[k] + p[k] * t.y[k]).sum();
                (t.coeff * Complex64::from_polar(1.0, -2.0 * PI * arg), t.x, t.y)
            })
            .collect()
    };
    let (ia, ib) = (image(a), image(b));
    let d = Complex64::new(0.0, -2.0 * PI);
    let mut acc = Complex64::new(0.0, 0.0);
    for (fa, xa, ya) in &ia {
        for (fb, xb, yb) in &ib {
            for k in 0..n {
                acc += (d * xa[k] * fa) * (d * yb[k] * fb) - (d * ya[k] * fa) * (d * xb[k] * fb);
            }
        }
    }
    acc
}

pub fn random_poly(rng: &mut StdRng, n: usize, degree: u32, terms: usize) -> PolyObservable<f64> {
    let mut out = PolyObservable::zero(n);
    for _ in 0..terms {
        let mut left = rng.gen_range(0..=degree);
        let mut q = vec![0u32; n];
        let mut p = vec![0u32; n];
        for k in 0..2 * n {
            let e = if k + 1 == 2 * n { left } else { rng.gen_range(0..=left) };
            left -= e;
            if k < n {
                q[k] = e;
            } else {
                p[k - n] = e;
            }
        }
        let m = PolyObservable::monomial(&q, &p, rng.gen_range(-1.0..1.0)).unwrap();
        out = out.add(&m).unwrap();
    }
    out
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

/// Richardson combination of widths `sigma` and `2·sigma`, cancelling the `O(σ²)` bias.
pub fn mollified_mass_extrapolated(
    a: [f64; 2],
    b: [f64; 2],
    sigma: f64,
    theta: impl Fn([f64; 2], [f64; 2]) -> f64 + Copy,
) -> Complex64 {
    (4.0 * mollified_mass(a, b, sigma, theta) - mollified_mass(a, b, 2.0 * sigma, theta)) / 3.0
}
