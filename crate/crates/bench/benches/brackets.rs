use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use pmech_core::clifford::{Blade, CliffordElement, Signature};
use pmech_core::galilean::{field_bracket, FieldAtom, FieldCharacterSum};
use pmech_core::pbrackets::{moyal_poly, pmech_bracket, poisson_poly, Atom, CharacterSum, PolyObservable};

fn lattice_sum(hbar: f64, atoms: usize, seed: u32) -> CharacterSum {
    let mut s = CharacterSum::new(1);
    for i in 0..atoms as u32 {
        let k = i.wrapping_mul(2654435761).wrapping_add(seed);
        let x = f64::from(k % 17) / 8.0 - 1.0;
        let y = f64::from((k / 17) % 13) / 8.0 - 0.75;
        s.push(Atom::new(hbar, Complex64::new(1.0 / f64::from(i + 1), 0.1), vec![x], vec![y])).unwrap();
    }
    s
}

fn dense_poly(degree: u32) -> PolyObservable<f64> {
    let mut out = PolyObservable::zero(1);
    for a in 0..=degree {
        for b in 0..=degree - a {
            let c = 1.0 / f64::from(1 + a + 2 * b);
            out = out.add(&PolyObservable::monomial(&[a], &[b], c).unwrap()).unwrap();
        }
    }
    out
}

fn character_brackets(c: &mut Criterion) {
    let mut group = c.benchmark_group("pmech_bracket");
    for atoms in [4, 16, 64] {
        let (a, b) = (lattice_sum(0.5, atoms, 1), lattice_sum(0.5, atoms, 7));
        group.bench_with_input(BenchmarkId::from_parameter(atoms), &(a, b), |bench, (a, b)| {
            bench.iter(|| pmech_bracket(black_box(a), black_box(b)).unwrap())
        });
    }
    group.finish();
}

fn polynomial_brackets(c: &mut Criterion) {
    let mut group = c.benchmark_group("poly_bracket");
    for degree in [4, 8, 12] {
        let (a, b) = (dense_poly(degree), dense_poly(degree).scale(-0.5));
        group.bench_with_input(BenchmarkId::new("poisson", degree), &(a.clone(), b.clone()), |bench, (a, b)| {
            bench.iter(|| poisson_poly(black_box(a), black_box(b)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("moyal", degree), &(a, b), |bench, (a, b)| {
            bench.iter(|| moyal_poly(0.7, black_box(a), black_box(b)).unwrap())
        });
    }
    group.finish();
}

fn field_brackets(c: &mut Criterion) {
    let sig = Signature::euclidean_negative(3);
    let coeff = CliffordElement::from_blades(&sig, &[(Blade::SCALAR, 1.0), (Blade(0b011), 0.5), (Blade(0b111), -0.25)]).unwrap();
    let sum = |shift: f64| {
        let atoms = (0..24).map(|i| {
            let j = i % 3;
            let mut y = vec![0.0; 3];
            y[j] = f64::from(i as u32) / 16.0 - shift;
            FieldAtom { channel: j, h: 0.5, coeff: coeff.scale(1.0 / (1.0 + i as f64)), x: shift * f64::from(i as u32) / 24.0, y }
        });
        FieldCharacterSum::from_atoms(&sig, atoms).unwrap()
    };
    let (a, b) = (sum(0.25), sum(0.5));
    c.bench_function("field_bracket/24", |bench| bench.iter(|| field_bracket(black_box(&a), black_box(&b)).unwrap()));
}

fn clifford_products(c: &mut Criterion) {
    let sig = Signature::new(&[1, -1, -1, -1]).unwrap();
    let dense: Vec<f64> = (0..16).map(|i| 1.0 / (1.0 + f64::from(i))).collect();
    let a = CliffordElement::from_dense(&sig, &dense);
    let b = a.reverse();
    c.bench_function("geometric_product/cl13", |bench| bench.iter(|| black_box(&a).geometric_product(black_box(&b)).unwrap()));
}

criterion_group!(benches, character_brackets, polynomial_brackets, field_brackets, clifford_products);
criterion_main!(benches);
