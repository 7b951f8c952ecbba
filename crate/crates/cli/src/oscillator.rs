use std::collections::BTreeSet;

use pmech_core::io::{parse_poly, poly_to_json};
use pmech_core::pbrackets::{evolve, Backend, EvolveOptions};
use pmech_core::PolyObservable;
use serde::Serialize;
use serde_json::{json, Value};

use crate::report::{csv_string, envelope, read_document, require_positive, usage, Output};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendArg {
    Poisson,
    Moyal,
}

#[derive(clap::Args, Debug, Serialize)]
pub struct Args {
    /// poly/1 observable evolved in time; defaults to q.
    #[arg(long)]
    pub observable: Option<String>,
    /// poly/1 Hamiltonian; defaults to ½(q² + p²).
    #[arg(long)]
    pub hamiltonian: Option<String>,
    #[arg(long, value_enum, default_value = "poisson")]
    pub backend: BackendArg,
    /// Planck value for the moyal backend.
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    #[arg(long, default_value_t = std::f64::consts::TAU)]
    pub t_end: f64,
    #[arg(long, default_value_t = 100)]
    pub record_every: usize,
    #[arg(long, default_value_t = 32)]
    pub degree_cap: u32,
    #[command(flatten)]
    pub output: Output,
}

/// `q^2 p` style label; variables are numbered when there is more than one degree of freedom.
fn label(q: &[u32], p: &[u32]) -> String {
    let var = |name: &str, j: usize| if q.len() == 1 { name.to_string() } else { format!("{name}{j}") };
    let mut parts = Vec::new();
    for (name, exps) in [("q", q), ("p", p)] {
        for (j, &e) in exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(var(name, j)),
                _ => parts.push(format!("{}^{e}", var(name, j))),
            }
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

pub fn run(args: &Args) -> anyhow::Result<()> {
    require_positive("dt", args.dt)?;
    if !(args.t_end >= 0.0 && args.t_end.is_finite()) {
        return Err(usage(format!("--t-end must be non-negative and finite, got {}", args.t_end)));
    }
    if args.record_every == 0 {
        return Err(usage("--record-every must be positive"));
    }
    let h = match &args.hamiltonian {
        Some(s) => parse_poly(&read_document(s)?)?,
        None => PolyObservable::harmonic_oscillator(1),
    };
    let f0 = match &args.observable {
        Some(s) => parse_poly(&read_document(s)?)?,
        None => PolyObservable::q(h.dim(), 0),
    };
    if f0.dim() != h.dim() {
        return Err(usage(format!(
            "observable has {} degrees of freedom, Hamiltonian has {}",
            f0.dim(),
            h.dim()
        )));
    }
    let backend = match args.backend {
        BackendArg::Poisson => Backend::Poisson,
        BackendArg::Moyal => Backend::Moyal { hbar: args.hbar },
    };
    let opts = EvolveOptions { degree_cap: args.degree_cap, record_every: args.record_every, ..Default::default() };
    let traj = evolve(&h, &f0, args.t_end, args.dt, backend, &opts)?;

    let keys: BTreeSet<(Vec<u32>, Vec<u32>)> =
        traj.states.iter().flat_map(|s| s.monomials().map(|(q, p, _)| (q.to_vec(), p.to_vec()))).collect();
    let states: Vec<Value> = traj
        .times
        .iter()
        .zip(&traj.states)
        .map(|(t, s)| json!({ "t": t, "observable": poly_to_json(s) }))
        .collect();
    let report = envelope(
        "oscillator",
        args,
        json!({ "backend": backend, "steps": (args.t_end / args.dt).ceil(), "trajectory": states }),
    );
    args.output.emit(&report, || {
        let mut header = vec!["t".to_string()];
        header.extend(keys.iter().map(|(q, p)| label(q, p)));
        let rows: Vec<Vec<String>> = traj
            .times
            .iter()
            .zip(&traj.states)
            .map(|(t, s)| {
                let mut row = vec![t.to_string()];
                row.extend(keys.iter().map(|(q, p)| s.coeff(q, p).copied().unwrap_or(0.0).to_string()));
                row
            })
            .collect();
        csv_string(&header, &rows)
    })
}
