mod common;

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use common::*;
use pmech_core::clifford::{Blade, CliffordElement, Signature};
use pmech_core::galilean::{field_bracket, field_commutator, FieldAtom, FieldCharacterSum};
use pmech_core::pbrackets::{commutator, moyal_poly, pmech_bracket, star, CharacterSum, PolyObservable};

fn atom1(hbar: f64, c: Complex64, p: [f64; 2]) -> CharacterSum {
    CharacterSum::atom(hbar, c, vec![p[0]], vec![p[1]]).unwrap()
}

#[test]
fn star_product_matches_mollified_convolution() {
    let mut r = rng(101);
    for _ in 0..8 {
        let hbar = [0.3, 1.0, 2.0][r.gen_range(0..3usize)];
        let pa = [r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)];
        let pb = [r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)];
        let (ca, cb) = (Complex64::new(r.gen_range(-1.0..1.0), 0.4), Complex64::new(0.7, r.gen_range(-1.0..1.0)));
        let (a, b) = (atom1(hbar, ca, pa), atom1(hbar, cb, pb));
        let at = ([pa[0] + pb[0]], [pa[1] + pb[1]]);
        let ab = ca * cb * mollified_mass_extrapolated(pa, pb, 1e-4, star_phase(hbar));
        let ba = ca * cb * mollified_mass_extrapolated(pb, pa, 1e-4, star_phase(hbar));
        let got = star(&a, &b).unwrap().coeff_at(hbar, &at.0, &at.1);
        assert!((got - ab).norm() < 1e-9, "star {got} vs {ab}");
        let got = commutator(&a, &b).unwrap().coeff_at(hbar, &at.0, &at.1);
        assert!((got - (ab - ba)).norm() < 1e-9);
        let got = pmech_bracket(&a, &b).unwrap().coeff_at(hbar, &at.0, &at.1);
        let want = (ab - ba) * Complex64::new(0.0, -2.0 * PI / hbar);
        assert!((got - want).norm() < 1e-8, "bracket {got} vs {want}");
    }
}

#[test]
fn field_kernel_matches_mollified_convolution() {
    let sig = Signature::euclidean_negative(3);
    let mut r = rng(102);
    for _ in 0..8 {
        let j = r.gen_range(0..3usize);
        let h = [0.25, 0.5, 1.5][r.gen_range(0..3usize)];
        let mut coeff = || {
            CliffordElement::from_blades(&sig, &[(Blade::SCALAR, r.gen_range(-1.0..1.0)), (Blade(0b110), r.gen_range(-1.0..1.0))])
                .unwrap()
        };
        let (ca, cb) = (coeff(), coeff());
        let mut pos = || {
            let mut y = vec![0.0; 3];
            y[j] = r.gen_range(-1.0..1.0);
            (r.gen_range(-1.0..1.0), y)
        };
        let ((x1, y1), (x2, y2)) = (pos(), pos());
        let a = FieldCharacterSum::from_atoms(&sig, [FieldAtom { channel: j, h, coeff: ca.clone(), x: x1, y: y1.clone() }]).unwrap();
        let b = FieldCharacterSum::from_atoms(&sig, [FieldAtom { channel: j, h, coeff: cb.clone(), x: x2, y: y2.clone() }]).unwrap();
        let at: Vec<f64> = y1.iter().zip(&y2).map(|(u, v)| u + v).collect();
        let (pa, pb) = ([x1, y1[j]], [x2, y2[j]]);
        let ab = mollified_mass_extrapolated(pa, pb, 1e-4, star_phase(h));
        let ba = mollified_mass_extrapolated(pb, pa, 1e-4, star_phase(h));
        let c12 = ca.geometric_product(&cb).unwrap();
        let comm = c12.geometric_product(&complex_to_clifford(&sig, j, ab - ba)).unwrap();
        let got = field_commutator(&a, &b).unwrap();
        // the commutator of single atoms is c₁c₂(k(φ) − k(−φ)); b⋆a carries c₂c₁
        let swapped = cb.geometric_product(&ca).unwrap().geometric_product(&complex_to_clifford(&sig, j, ba)).unwrap();
        let direct = c12.geometric_product(&complex_to_clifford(&sig, j, ab)).unwrap().try_sub(&swapped).unwrap();
        assert!(got.coeff_at(j, h, x1 + x2, &at).max_abs_diff(&direct) < 1e-9);
        let want = comm.scale(2.0 * PI / h);
        let br = field_bracket(&a, &b).unwrap().coeff_at(j, h, x1 + x2, &at);
        assert!(br.max_abs_diff(&want) < 1e-8, "{br} vs {want}");
    }
}

/// Degree-`d` Taylor polynomial of `c·e^{−2πi(qx + py)}` in one degree of freedom.
fn taylor_character(c: Complex64, x: f64, y: f64, d: u32) -> PolyObservable<Complex64> {
    let mut out = PolyObservable::zero(1);
    let w = Complex64::new(0.0, -2.0 * PI);
    for total in 0..=d {
        for a in 0..=total {
            let b = total - a;
            let binom = (1..=a).fold(1.0, |acc, k| acc * f64::from(b + k) / f64::from(k));
            let fact = (1..=total).fold(1.0, |acc, k| acc * f64::from(k));
            let coeff = c * w.powu(total) * x.powi(a as i32) * y.powi(b as i32) * binom / fact;
            out = out.add(&PolyObservable::monomial(&[a], &[b], coeff).unwrap()).unwrap();
        }
    }
    out
}

#[test]
fn moyal_polynomial_and_character_backends_agree() {
    let mut r = rng(103);
    let hbar = 0.8;
    let atoms = |r: &mut rand::rngs::StdRng| -> Vec<(Complex64, f64, f64)> {
        (0..2)
            .map(|_| (Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)), r.gen_range(-0.1..0.1), r.gen_range(-0.1..0.1)))
            .collect()
    };
    let (ta, tb) = (atoms(&mut r), atoms(&mut r));
    let d = 18;
    let poly = |t: &[(Complex64, f64, f64)]| {
        t.iter().fold(PolyObservable::zero(1), |acc, &(c, x, y)| acc.add(&taylor_character(c, x, y, d)).unwrap())
    };
    let chars = |t: &[(Complex64, f64, f64)]| {
        t.iter().fold(CharacterSum::new(1), |acc, &(c, x, y)| acc.add(&atom1(hbar, c, [x, y])).unwrap())
    };
    let m = moyal_poly(hbar, &poly(&ta), &poly(&tb)).unwrap();
    let br = pmech_bracket(&chars(&ta), &chars(&tb)).unwrap();
    for _ in 0..10 {
        let (q, p) = (r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        let got = m.poly().eval_with(&[q, p], Complex64::new(0.0, 0.0)).unwrap();
        let want: Complex64 =
            br.atoms().map(|t| t.coeff * Complex64::from_polar(1.0, -2.0 * PI * (q * t.x[0] + p * t.y[0]))).sum();
        assert!((got - want).norm() < 1e-9 * want.norm().max(1.0), "{got} vs {want}");
    }
}

#[test]
fn four_generator_products_match_word_oracle() {
    let mut r = rng(104);
    let diag = [1i8, -1, -1, -1];
    let sig = Signature::new(&diag).unwrap();
    for _ in 0..20 {
        let mut random = || {
            let terms: Vec<(Blade, f64)> = (0..16u32).map(|m| (Blade(m), r.gen_range(-1.0..1.0))).collect();
            (CliffordElement::from_blades(&sig, &terms).unwrap(), terms)
        };
        let ((a, ta), (b, tb)) = (random(), random());
        let mut want = vec![0.0; 16];
        for &(ba, ca) in &ta {
            for &(bb, cb) in &tb {
                let (m, s) = blade_product_oracle(&diag, ba.0, bb.0);
                want[m as usize] += s * ca * cb;
            }
        }
        let got = a.geometric_product(&b).unwrap();
        for (m, w) in want.iter().enumerate() {
            assert!((got.get(Blade(m as u32)) - w).abs() < 1e-12);
        }
    }
}
