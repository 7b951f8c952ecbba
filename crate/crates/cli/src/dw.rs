use std::f64::consts::TAU;
use std::path::PathBuf;

use pmech_core::dwfield::{
    dw_integrate, energy, legendre, plane_wave_error, residual_check, stability, FieldSlice, Potential,
};
use pmech_core::{Axis, DWHamiltonian, FieldState, Grid, LagrangianSpec, Signature};
use serde::Serialize;
use serde_json::json;

use crate::report::{csv_string, envelope, parse_list, require_positive, usage, write_output, Output};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    PlaneWave,
    Zero,
}

#[derive(clap::Args, Debug, Serialize)]
pub struct Args {
    /// Metric diagonal, time direction first, e.g. `+1,-1`.
    #[arg(long, default_value = "+1,-1", allow_hyphen_values = true)]
    pub signature: String,
    /// Points per spatial axis.
    #[arg(long, default_value_t = 128)]
    pub grid: usize,
    /// Period of every spatial axis.
    #[arg(long, default_value_t = TAU)]
    pub length: f64,
    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t_end: f64,
    /// Potential coefficients `c0,c1,c2,...` of `Σ c_k q^k`.
    #[arg(long, default_value = "0,0,0.5", allow_hyphen_values = true)]
    pub potential: String,
    #[arg(long, value_enum, default_value = "plane-wave")]
    pub preset: Preset,
    /// Wave vector, padded with zeros.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub k: String,
    /// CSV of `t, x..., q` written every `--snapshot-every` steps.
    #[arg(long)]
    pub snapshots: Option<PathBuf>,
    #[arg(long, default_value_t = 10)]
    pub snapshot_every: usize,
    #[command(flatten)]
    pub output: Output,
}

/// Exact mode `q(t, x)` of the linearized field equation and its `∂₀q` at `t = 0`.
struct Mode {
    k: Vec<f64>,
    omega2: f64,
}

impl Mode {
    fn phase(&self, x: &[f64]) -> f64 {
        self.k.iter().zip(x).map(|(k, x)| k * x).sum()
    }

    fn q(&self, t: f64, x: &[f64]) -> f64 {
        let ph = self.phase(x);
        if self.omega2 >= 0.0 {
            (ph - self.omega2.sqrt() * t).cos()
        } else {
            ((-self.omega2).sqrt() * t).cosh() * ph.cos()
        }
    }

    fn dq_dt0(&self, x: &[f64]) -> f64 {
        if self.omega2 >= 0.0 {
            self.omega2.sqrt() * self.phase(x).sin()
        } else {
            0.0
        }
    }
}

fn plane_wave(h: &DWHamiltonian, k: &[f64], length: f64) -> anyhow::Result<Mode> {
    if h.potential.0.iter().enumerate().any(|(i, &c)| i != 2 && c != 0.0) {
        return Err(usage("the plane-wave preset needs a purely quadratic potential `0,0,c2`"));
    }
    for (j, kj) in k.iter().enumerate() {
        let cycles = kj * length / TAU;
        if (cycles - cycles.round()).abs() > 1e-9 {
            return Err(usage(format!("k[{j}] = {kj} does not fit the periodic box of length {length}")));
        }
    }
    // Σ_μ η^{μμ}∂_μ²q = U''(0) q
    let eta0 = h.sig.square(0) as f64;
    let spatial: f64 = k.iter().enumerate().map(|(j, kj)| h.sig.square(j + 1) as f64 * kj * kj).sum();
    let omega2 = (h.potential.curvature_at_zero() - spatial) / eta0;
    Ok(Mode { k: k.to_vec(), omega2 })
}

fn snapshots_csv(state: &FieldState, every: usize) -> anyhow::Result<String> {
    let grid = &state.grid;
    let space = Grid::new(grid.axes()[1..].to_vec())?;
    let mut header = vec!["t".to_string()];
    header.extend((0..space.ndim()).map(|k| format!("x{k}")));
    header.push("q".into());
    let mut rows = Vec::new();
    let last = state.time_slices() - 1;
    for t in (0..=last).filter(|t| t % every == 0 || *t == last) {
        let time = grid.axis(0).coord(t).to_string();
        for (i, q) in state.q_at(t).iter().enumerate() {
            let mut row = vec![time.clone()];
            row.extend(space.coords(i).iter().map(f64::to_string));
            row.push(q.to_string());
            rows.push(row);
        }
    }
    csv_string(&header, &rows)
}

pub fn run(args: &Args) -> anyhow::Result<()> {
    require_positive("dt", args.dt)?;
    require_positive("length", args.length)?;
    if !(args.t_end >= 0.0 && args.t_end.is_finite()) {
        return Err(usage(format!("--t-end must be non-negative and finite, got {}", args.t_end)));
    }
    if args.snapshot_every == 0 {
        return Err(usage("--snapshot-every must be positive"));
    }
    let sig = Signature::parse(&args.signature)?;
    let h = legendre(&LagrangianSpec::new(sig.clone(), Potential(parse_list("potential", &args.potential)?)))?;
    let dims = sig.generators().saturating_sub(1);
    if dims == 0 {
        return Err(usage("--signature needs at least one spatial direction"));
    }
    let mut k = parse_list("k", &args.k)?;
    if k.len() > dims {
        return Err(usage(format!("--k has {} components for {dims} spatial directions", k.len())));
    }
    k.resize(dims, 0.0);

    let axis = Axis::periodic(0.0, args.length, args.grid)?;
    let space = Grid::new(vec![axis; dims])?;
    let steps = (args.t_end / args.dt).ceil() as usize;
    let dt = if steps == 0 { args.dt } else { args.t_end / steps as f64 };
    let mode = match args.preset {
        Preset::PlaneWave => Some(plane_wave(&h, &k, args.length)?),
        Preset::Zero => None,
    };
    let a0 = h.kinetic[0];
    let init = match &mode {
        Some(m) => FieldSlice::from_fn(space.clone(), |x| m.q(0.0, x), |x| m.dq_dt0(x) / a0),
        None => FieldSlice::from_fn(space.clone(), |_| 0.0, |_| 0.0),
    };
    let state = dw_integrate(&h, &init, dt, steps)?;

    let energies: Vec<f64> = (0..state.time_slices()).map(|t| energy(&h, &state.slice(t))).collect();
    let e0 = energies[0];
    let max_dev = energies.iter().map(|e| (e - e0).abs()).fold(0.0, f64::max);
    let rel_dev = if e0 == 0.0 { max_dev } else { max_dev / e0.abs() };
    let stab = stability(&h, &space);
    let residual = residual_check(&state, &h)?;
    let pw_error = mode.as_ref().map(|m| plane_wave_error(&state, |t, x| m.q(t, x)));

    if let Some(path) = &args.snapshots {
        write_output(Some(path), &snapshots_csv(&state, args.snapshot_every)?)?;
    }
    let report = envelope(
        "dw",
        args,
        json!({
            "hamiltonian": { "kinetic": h.kinetic, "potential": h.potential.0 },
            "steps": steps,
            "dt": dt,
            "cfl_bound": (stab.omega2_max > 0.0).then(|| 2.0 / stab.omega2_max.sqrt()),
            "omega2": mode.as_ref().map(|m| m.omega2),
            "energy": { "initial": e0, "final": energies.last(), "max_relative_deviation": rel_dev },
            "plane_wave_error": pw_error,
            "residual": residual,
        }),
    );
    args.output.emit(&report, || {
        let header = ["t", "energy"].map(String::from);
        let rows: Vec<Vec<String>> =
            energies.iter().enumerate().map(|(t, e)| vec![(t as f64 * dt).to_string(), e.to_string()]).collect();
        csv_string(&header, &rows)
    })
}
