mod common;

use std::f64::consts::PI;

use num_complex::Complex64;

use common::*;
use pmech_core::clifford::Signature;
use pmech_core::dwfield::{
    dw_integrate, energy, legendre, plane_wave_error, residual_check, FieldSlice, LagrangianSpec, Potential,
};
use pmech_core::grid::{Axis, Grid};
use pmech_core::pbrackets::{evolve, Atom, Backend, CharacterSum, EvolveOptions};

/// `cos 2πq + cos 2πp` as characters, plus a probe observable.
fn pendulum_like(hbar: f64) -> (CharacterSum, CharacterSum) {
    let half = Complex64::new(0.5, 0.0);
    let h = CharacterSum::from_atoms(
        1,
        [
            Atom::new(hbar, half, vec![0.5], vec![0.0]),
            Atom::new(hbar, half, vec![-0.5], vec![0.0]),
            Atom::new(hbar, half, vec![0.0], vec![0.5]),
            Atom::new(hbar, half, vec![0.0], vec![-0.5]),
        ],
    )
    .unwrap();
    let f = CharacterSum::from_atoms(1, [Atom::new(hbar, Complex64::new(1.0, 0.0), vec![0.25], vec![0.125])]).unwrap();
    (h, f)
}

#[test]
fn hbar_scan_of_trajectories_has_slope_two() {
    let opts = EvolveOptions::default();
    let (h0, f0) = pendulum_like(0.0);
    let classical = evolve(&h0, &f0, 0.1, 0.025, Backend::Pmech, &opts).unwrap();
    let hbars = [0.2, 0.1, 0.05];
    let errs: Vec<f64> = hbars
        .iter()
        .map(|&hbar| {
            let (h, f) = pendulum_like(hbar);
            let q = evolve(&h, &f, 0.1, 0.025, Backend::Pmech, &opts).unwrap();
            q.last().with_hbar(0.0).max_coeff_diff(classical.last())
        })
        .collect();
    let slope = loglog_slope(&hbars, &errs);
    assert!((slope - 2.0).abs() < 0.1, "slope {slope}, errors {errs:?}");
}

#[test]
fn pmech_backend_equals_relabelled_moyal_and_poisson() {
    let opts = EvolveOptions::default();
    let (hq, fq) = pendulum_like(0.3);
    let (h0, f0) = pendulum_like(0.0);
    let direct = evolve(&hq, &fq, 0.05, 0.025, Backend::Pmech, &opts).unwrap();
    let moyal = evolve(&h0, &f0, 0.05, 0.025, Backend::Moyal { hbar: 0.3 }, &opts).unwrap();
    assert!(direct.last().max_coeff_diff(&moyal.last().with_hbar(0.3)) < 1e-12);
    let classical = evolve(&h0, &f0, 0.05, 0.025, Backend::Pmech, &opts).unwrap();
    let poisson = evolve(&hq, &fq, 0.05, 0.025, Backend::Poisson, &opts).unwrap();
    assert!(classical.last().max_coeff_diff(&poisson.last().with_hbar(0.0)) < 1e-12);
}

fn klein_gordon(sig: &str, m: f64) -> pmech_core::dwfield::DWHamiltonian {
    legendre(&LagrangianSpec::new(Signature::parse(sig).unwrap(), Potential::mass(m))).unwrap()
}

#[test]
fn energy_oscillates_without_secular_drift() {
    let h = klein_gordon("+1,-1", 1.0);
    let space = Grid::new(vec![Axis::periodic(0.0, 2.0 * PI, 128).unwrap()]).unwrap();
    let dx = space.axis(0).step;
    let init = FieldSlice::from_fn(
        space,
        |x| (x[0]).cos() + 0.3 * (3.0 * x[0]).sin(),
        |x| 0.5 * (2.0 * x[0]).cos(),
    );
    let steps = 4000;
    let state = dw_integrate(&h, &init, 0.5 * dx, steps).unwrap();
    let e0 = energy(&h, &state.slice(0));
    let dev = |range: std::ops::Range<usize>| {
        range.map(|t| ((energy(&h, &state.slice(t)) - e0) / e0).abs()).fold(0.0, f64::max)
    };
    let (first, second) = (dev(0..steps / 2), dev(steps / 2..steps + 1));
    assert!(first < 1e-3 && second < 1e-3, "{first} {second}");
    assert!(second < 2.0 * first + 1e-12, "secular drift: {first} then {second}");
}

#[test]
fn plane_wave_in_two_space_dimensions_converges() {
    let h = klein_gordon("+1,-1,-1", 1.0);
    let (k1, k2) = (1.0, 2.0);
    let w = (k1 * k1 + k2 * k2 + 1.0f64).sqrt();
    let run = |n: usize| {
        let axis = Axis::periodic(0.0, 2.0 * PI, n).unwrap();
        let space = Grid::new(vec![axis; 2]).unwrap();
        let dx = 2.0 * PI / n as f64;
        let steps = (1.0 / (0.4 * dx)).ceil() as usize;
        let init = FieldSlice::from_fn(space, |x| (k1 * x[0] + k2 * x[1]).cos(), |x| w * (k1 * x[0] + k2 * x[1]).sin());
        let s = dw_integrate(&h, &init, 1.0 / steps as f64, steps).unwrap();
        plane_wave_error(&s, |t, x| (k1 * x[0] + k2 * x[1] - w * t).cos())
    };
    let errs = [run(32), run(64)];
    let order = (errs[0] / errs[1]).log2();
    assert!(errs[1] < 1e-2 && order > 1.8, "{errs:?} order {order}");
}

#[test]
fn vanishing_center_is_flagged() {
    let h = klein_gordon("+1,-1", 1.0);
    let space = Grid::new(vec![Axis::periodic(0.0, 2.0 * PI, 64).unwrap()]).unwrap();
    let init = FieldSlice::from_fn(space, |x| x[0].cos(), |x| 2f64.sqrt() * x[0].sin());
    let state = dw_integrate(&h, &init, 0.01, 20).unwrap();
    let rep = residual_check(&state, &h).unwrap();
    assert!(rep.c_zero);
    assert_eq!(rep.center_constant, 0.0);
    assert_eq!(rep.bracket_constant, 0.0);
    assert!(rep.q_pairing < 1e-12 && rep.separation_mismatch < 1e-12);
}

#[test]
fn rescaled_pairing_requires_uniformly_negative_metric() {
    // ⟨D,p⟩ = −Σ_j ∂_j²q while the field equation balances Σ_j η^{jj}∂_j²q
    let h = klein_gordon("+1,-1,-1", 1.0);
    let residual = |n: usize| {
        let axis = Axis::periodic(0.0, 2.0 * PI, n).unwrap();
        let space = Grid::new(vec![axis; 2]).unwrap();
        let init = FieldSlice::from_fn(space, |x| (x[0] + x[1]).cos(), |_| 0.0);
        let steps = n / 4;
        let state = dw_integrate(&h, &init, 0.2 / steps as f64, steps).unwrap();
        residual_check(&state, &h).unwrap()
    };
    let (a, b) = (residual(16), residual(32));
    assert!(!a.c_zero && a.center_constant == -1.0 && a.bracket_constant == -1.0);
    assert!(a.q_pairing < 1e-12);
    assert!(b.p_pairing > 0.1 && b.p_pairing > 0.5 * a.p_pairing, "{} {}", a.p_pairing, b.p_pairing);
}
