use pmech_core::galilean::{coherent_eval, inner_product, vacuum_eval, CliffordGridFunction};
use pmech_core::{CliffordElement, GalileanElement, PlanckTuple, Signature};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::{json, Value};

use crate::report::{csv_string, envelope, require_positive, usage, Output};

#[derive(clap::Args, Debug, Serialize)]
pub struct Args {
    /// Planck components `h_j`, one per generator; repeat the flag.
    #[arg(long = "hbar", default_values_t = [1.0])]
    pub hbar: Vec<f64>,
    /// Metric diagonal; defaults to all −1.
    #[arg(long, allow_hyphen_values = true)]
    pub signature: Option<String>,
    /// Samples per `s` period.
    #[arg(long, default_value_t = 8)]
    pub s_points: usize,
    /// Samples per `x`, `y` axis.
    #[arg(long, default_value_t = 31)]
    pub xy_points: usize,
    /// The `x`, `y` axes span `[-half_width, half_width]`.
    #[arg(long, default_value_t = 5.0)]
    pub half_width: f64,
    /// Number of random coherent states.
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

fn element_json(c: &CliffordElement) -> Value {
    let blades: Vec<Value> = c.terms().map(|(b, v)| json!({ "blade": b.indices(), "value": v })).collect();
    json!({ "scalar": c.scalar_part(), "blades": blades })
}

pub fn run(args: &Args) -> anyhow::Result<()> {
    require_positive("half-width", args.half_width)?;
    if args.hbar.iter().any(|h| *h == 0.0 || !h.is_finite()) {
        return Err(usage("--hbar components must be nonzero and finite"));
    }
    let h = PlanckTuple::new(args.hbar.clone())?;
    let g = h.generators();
    let sig = match &args.signature {
        Some(s) => Signature::parse(s)?,
        None => Signature::euclidean_negative(g),
    };
    if sig.generators() != g {
        return Err(usage(format!("--signature has {} generators but {g} --hbar values were given", sig.generators())));
    }
    let grid = CliffordGridFunction::standard_grid(&h, args.s_points, -args.half_width, args.half_width, args.xy_points)?;
    let norm = |f: &CliffordGridFunction| inner_product(&h, f, f);

    let vacuum = CliffordGridFunction::from_fn(&sig, grid.clone(), |pt| vacuum_eval(&h, &sig, pt))?;
    let vacuum_norm = norm(&vacuum)?;
    let zero_norm = norm(&CliffordGridFunction::zeros(&sig, grid.clone())?)?;

    let mut rng = StdRng::seed_from_u64(args.seed);
    let reach = 0.25 * args.half_width;
    let mut states = Vec::with_capacity(args.count);
    for _ in 0..args.count {
        let s: Vec<f64> = h.h.iter().map(|hj| rng.gen_range(0.0..1.0 / hj.abs())).collect();
        let x = rng.gen_range(-reach..reach);
        let y: Vec<f64> = (0..g).map(|_| rng.gen_range(-reach..reach)).collect();
        let center = GalileanElement::new(s, x, y)?;
        let f = CliffordGridFunction::from_fn(&sig, grid.clone(), |pt| coherent_eval(&h, &sig, &center, pt))?;
        states.push((center, norm(&f)?));
    }

    let coherent: Vec<Value> = states
        .iter()
        .map(|(c, n)| json!({ "center": c, "norm": element_json(n) }))
        .collect();
    let report = envelope(
        "coherent",
        args,
        json!({
            "signature": sig.diag(),
            "vacuum_norm": element_json(&vacuum_norm),
            "zero_norm": element_json(&zero_norm),
            "coherent": coherent,
        }),
    );
    args.output.emit(&report, || {
        let mut header = vec!["state".to_string(), "norm".into(), "x".into()];
        header.extend((0..g).map(|j| format!("s{j}")));
        header.extend((0..g).map(|j| format!("y{j}")));
        let mut rows = vec![];
        let mut row = |name: String, n: &CliffordElement, c: Option<&GalileanElement>| {
            let mut r = vec![name, n.scalar_part().to_string()];
            match c {
                Some(c) => {
                    r.push(c.x.to_string());
                    r.extend(c.s.iter().chain(&c.y).map(f64::to_string));
                }
                None => r.extend(std::iter::repeat(String::new()).take(1 + 2 * g)),
            }
            rows.push(r);
        };
        row("vacuum".into(), &vacuum_norm, None);
        row("zero".into(), &zero_norm, None);
        for (i, (c, n)) in states.iter().enumerate() {
            row(format!("coherent{i}"), n, Some(c));
        }
        csv_string(&header, &rows)
    })
}
