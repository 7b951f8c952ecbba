use pmech_core::galilean::{field_bracket, FieldAtom};
use pmech_core::io::{charsum_to_json, fieldsum_to_json, parse_observable, poly_to_json, ObservableDoc};
use pmech_core::pbrackets::{moyal_poly, pmech_bracket, poisson_poly};
use pmech_core::{CharacterSum, FieldCharacterSum, PolyObservable};
use serde::Serialize;
use serde_json::{json, Value};

use crate::report::{csv_string, envelope, loglog_slope, read_document, usage, Output};

#[derive(clap::Args, Debug, Serialize)]
pub struct Args {
    /// First observable: a JSON document or a path to one.
    #[arg(long)]
    pub a: String,
    /// Second observable, of the same schema as the first.
    #[arg(long)]
    pub b: String,
    /// Planck value to relabel both observables to; repeat for a scan.
    #[arg(long = "hbar")]
    pub hbar: Vec<f64>,
    #[command(flatten)]
    pub output: Output,
}

struct Row {
    hbar: Option<f64>,
    size: usize,
    bracket: Value,
    /// Largest coefficient distance to the classical bracket.
    distance: Option<f64>,
}

fn relabel_field(s: &FieldCharacterSum, h: f64) -> anyhow::Result<FieldCharacterSum> {
    Ok(FieldCharacterSum::from_atoms(s.signature(), s.atoms().map(|a| FieldAtom { h, ..a }))?)
}

fn charsum_rows(a: &CharacterSum, b: &CharacterSum, scan: &[f64]) -> anyhow::Result<Vec<Row>> {
    if scan.is_empty() {
        let br = pmech_bracket(a, b)?;
        return Ok(vec![Row { hbar: None, size: br.len(), bracket: charsum_to_json(&br), distance: None }]);
    }
    let classical = pmech_bracket(&a.with_hbar(0.0), &b.with_hbar(0.0))?;
    scan.iter()
        .map(|&h| {
            let br = pmech_bracket(&a.with_hbar(h), &b.with_hbar(h))?;
            let distance = br.with_hbar(0.0).max_coeff_diff(&classical);
            Ok(Row { hbar: Some(h), size: br.len(), bracket: charsum_to_json(&br), distance: Some(distance) })
        })
        .collect()
}

fn poly_rows(a: &PolyObservable<f64>, b: &PolyObservable<f64>, scan: &[f64]) -> anyhow::Result<Vec<Row>> {
    let classical = poisson_poly(a, b)?;
    if scan.is_empty() {
        return Ok(vec![Row { hbar: None, size: classical.len(), bracket: poly_to_json(&classical), distance: None }]);
    }
    scan.iter()
        .map(|&h| {
            let br = if h == 0.0 { classical.clone() } else { moyal_poly(h, a, b)? };
            let distance = br.max_abs_coeff_diff(&classical, |v| v.abs());
            Ok(Row { hbar: Some(h), size: br.len(), bracket: poly_to_json(&br), distance: Some(distance) })
        })
        .collect()
}

fn field_rows(a: &FieldCharacterSum, b: &FieldCharacterSum, scan: &[f64]) -> anyhow::Result<Vec<Row>> {
    if scan.is_empty() {
        let br = field_bracket(a, b)?;
        return Ok(vec![Row { hbar: None, size: br.len(), bracket: fieldsum_to_json(&br), distance: None }]);
    }
    let classical = field_bracket(&relabel_field(a, 0.0)?, &relabel_field(b, 0.0)?)?;
    scan.iter()
        .map(|&h| {
            let br = field_bracket(&relabel_field(a, h)?, &relabel_field(b, h)?)?;
            let distance = relabel_field(&br, 0.0)?.max_coeff_diff(&classical);
            Ok(Row { hbar: Some(h), size: br.len(), bracket: fieldsum_to_json(&br), distance: Some(distance) })
        })
        .collect()
}

pub fn run(args: &Args) -> anyhow::Result<()> {
    if let Some(h) = args.hbar.iter().find(|h| !h.is_finite()) {
        return Err(usage(format!("--hbar must be finite, got {h}")));
    }
    let a = parse_observable(&read_document(&args.a)?)?;
    let b = parse_observable(&read_document(&args.b)?)?;
    let (kind, rows) = match (&a, &b) {
        (ObservableDoc::CharSum(a), ObservableDoc::CharSum(b)) => ("charsum", charsum_rows(a, b, &args.hbar)?),
        (ObservableDoc::Poly(a), ObservableDoc::Poly(b)) => ("poly", poly_rows(a, b, &args.hbar)?),
        (ObservableDoc::FieldSum(a), ObservableDoc::FieldSum(b)) => ("fieldsum", field_rows(a, b, &args.hbar)?),
        _ => return Err(usage("--a and --b must use the same schema")),
    };
    let fit: Vec<(f64, f64)> =
        rows.iter().filter_map(|r| Some((r.hbar?.abs(), r.distance?))).filter(|(h, _)| *h > 0.0).collect();
    let slope = loglog_slope(&fit);
    let results: Vec<Value> = rows
        .iter()
        .map(|r| json!({ "hbar": r.hbar, "size": r.size, "distance_to_classical": r.distance, "bracket": r.bracket }))
        .collect();
    let report = envelope("bracket", args, json!({ "kind": kind, "results": results, "hbar_slope": slope }));
    args.output.emit(&report, || {
        let header = ["hbar", "size", "distance_to_classical"].map(String::from);
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        let body: Vec<Vec<String>> =
            rows.iter().map(|r| vec![opt(r.hbar), r.size.to_string(), opt(r.distance)]).collect();
        csv_string(&header, &body)
    })
}
