//! Versioned JSON schemas for observables.
//!
//! * `charsum/1`: `{"schema","n","channels":[{"hbar","ring"}],"atoms":[{"hbar","re","im","x","y"}]}`
//! * `poly/1`: `{"schema","n","monomials":[{"q","p","re"}]}`
//! * `fieldsum/1`: `{"schema","signature","atoms":[{"channel","h","x","y","coeff":[{"blade","value"}]}]}`

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::{Blade, CliffordElement, Signature};
use crate::error::{Error, Result};
use crate::galilean::{FieldAtom, FieldCharacterSum};
use crate::pbrackets::{Atom, Channel, CharacterSum, CoefficientRing, PolyObservable};

pub const CHARSUM_SCHEMA: &str = "charsum/1";
pub const POLY_SCHEMA: &str = "poly/1";
pub const FIELDSUM_SCHEMA: &str = "fieldsum/1";

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChannelDoc {
    hbar: f64,
    #[serde(default = "complex_ring")]
    ring: CoefficientRing,
}

fn complex_ring() -> CoefficientRing {
    CoefficientRing::Complex
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomDoc {
    hbar: f64,
    re: f64,
    #[serde(default)]
    im: f64,
    x: Vec<f64>,
    y: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CharSumDoc {
    schema: String,
    n: usize,
    #[serde(default)]
    channels: Option<Vec<ChannelDoc>>,
    atoms: Vec<AtomDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MonomialDoc {
    q: Vec<u32>,
    p: Vec<u32>,
    re: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyDoc {
    schema: String,
    n: usize,
    monomials: Vec<MonomialDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BladeDoc {
    blade: Vec<usize>,
    value: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldAtomDoc {
    channel: usize,
    h: f64,
    x: f64,
    y: Vec<f64>,
    coeff: Vec<BladeDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldSumDoc {
    schema: String,
    signature: Vec<i8>,
    atoms: Vec<FieldAtomDoc>,
}

/// Any observable document.
#[derive(Clone, Debug, PartialEq)]
pub enum ObservableDoc {
    CharSum(CharacterSum),
    Poly(PolyObservable<f64>),
    FieldSum(FieldCharacterSum),
}

fn syntax_error(text: &str, e: &serde_json::Error) -> Error {
    let line = e.line();
    let context = text.lines().nth(line.saturating_sub(1)).unwrap_or("").trim_end();
    Error::Schema(format!("line {line}, column {}: {e}\n  | {context}", e.column()))
}

fn parse_doc<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| syntax_error(text, &e))
}

fn check_schema(found: &str, expected: &str) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(Error::Schema(format!("expected schema \"{expected}\", found \"{found}\"")))
    }
}

fn at_item(what: &str, i: usize, e: Error) -> Error {
    Error::Schema(format!("{what} #{i}: {e}"))
}

/// Reads the `schema` tag and parses accordingly.
pub fn parse_observable(text: &str) -> Result<ObservableDoc> {
    #[derive(Deserialize)]
    struct Tag {
        schema: String,
    }
    let tag: Tag = parse_doc(text)?;
    match tag.schema.as_str() {
        CHARSUM_SCHEMA => parse_charsum(text).map(ObservableDoc::CharSum),
        POLY_SCHEMA => parse_poly(text).map(ObservableDoc::Poly),
        FIELDSUM_SCHEMA => parse_fieldsum(text).map(ObservableDoc::FieldSum),
        other => Err(Error::Schema(format!(
            "unknown schema \"{other}\"; expected one of {CHARSUM_SCHEMA}, {POLY_SCHEMA}, {FIELDSUM_SCHEMA}"
        ))),
    }
}

pub fn parse_charsum(text: &str) -> Result<CharacterSum> {
    let doc: CharSumDoc = parse_doc(text)?;
    check_schema(&doc.schema, CHARSUM_SCHEMA)?;
    if let Some(channels) = &doc.channels {
        for (i, c) in channels.iter().enumerate() {
            if c.ring != CoefficientRing::Complex {
                return Err(Error::Schema(format!(
                    "channel #{i}: ring \"clifford\" is carried by {FIELDSUM_SCHEMA} documents"
                )));
            }
            if channels[..i].iter().any(|o| o.hbar == c.hbar) {
                return Err(Error::Schema(format!("channel #{i}: duplicate hbar {}", c.hbar)));
            }
        }
    }
    let mut s = CharacterSum::new(doc.n);
    for (i, a) in doc.atoms.into_iter().enumerate() {
        if let Some(channels) = &doc.channels {
            if !channels.iter().any(|c| c.hbar == a.hbar) {
                return Err(Error::Schema(format!("atom #{i}: hbar {} is not a declared channel", a.hbar)));
            }
        }
        s.push(Atom::new(a.hbar, Complex64::new(a.re, a.im), a.x, a.y)).map_err(|e| at_item("atom", i, e))?;
    }
    Ok(s)
}

pub fn charsum_to_json(s: &CharacterSum) -> serde_json::Value {
    let doc = CharSumDoc {
        schema: CHARSUM_SCHEMA.into(),
        n: s.dim(),
        channels: Some(
            s.channels()
                .into_iter()
                .map(|Channel { hbar }| ChannelDoc { hbar, ring: CoefficientRing::Complex })
                .collect(),
        ),
        atoms: s
            .atoms()
            .map(|a| AtomDoc { hbar: a.hbar, re: a.coeff.re, im: a.coeff.im, x: a.x, y: a.y })
            .collect(),
    };
    serde_json::to_value(doc).expect("plain data serializes")
}

pub fn parse_poly(text: &str) -> Result<PolyObservable<f64>> {
    let doc: PolyDoc = parse_doc(text)?;
    check_schema(&doc.schema, POLY_SCHEMA)?;
    let mut out = PolyObservable::zero(doc.n);
    for (i, m) in doc.monomials.into_iter().enumerate() {
        if m.q.len() != doc.n || m.p.len() != doc.n {
            return Err(at_item(
                "monomial",
                i,
                Error::DimensionMismatch { expected: doc.n, found: if m.q.len() != doc.n { m.q.len() } else { m.p.len() } },
            ));
        }
        let term = PolyObservable::monomial(&m.q, &m.p, m.re).map_err(|e| at_item("monomial", i, e))?;
        out = out.add(&term)?;
    }
    Ok(out)
}

pub fn poly_to_json(p: &PolyObservable<f64>) -> serde_json::Value {
    let doc = PolyDoc {
        schema: POLY_SCHEMA.into(),
        n: p.dim(),
        monomials: p.monomials().map(|(q, pe, c)| MonomialDoc { q: q.to_vec(), p: pe.to_vec(), re: *c }).collect(),
    };
    serde_json::to_value(doc).expect("plain data serializes")
}

pub fn parse_fieldsum(text: &str) -> Result<FieldCharacterSum> {
    let doc: FieldSumDoc = parse_doc(text)?;
    check_schema(&doc.schema, FIELDSUM_SCHEMA)?;
    let sig = Signature::new(&doc.signature)?;
    let mut s = FieldCharacterSum::new(&sig);
    for (i, a) in doc.atoms.into_iter().enumerate() {
        let mut coeff = CliffordElement::zero(&sig);
        for b in &a.coeff {
            let blade = Blade::from_indices(&b.blade).map_err(|e| at_item("atom", i, e))?;
            if blade.indices().iter().any(|&k| k >= sig.generators()) {
                return Err(at_item(
                    "atom",
                    i,
                    Error::IndexOutOfRange { index: *b.blade.iter().max().unwrap_or(&0), generators: sig.generators() },
                ));
            }
            coeff.set(blade, coeff.get(blade) + b.value);
        }
        s.push(FieldAtom { channel: a.channel, h: a.h, coeff, x: a.x, y: a.y }).map_err(|e| at_item("atom", i, e))?;
    }
    Ok(s)
}

pub fn fieldsum_to_json(s: &FieldCharacterSum) -> serde_json::Value {
    let doc = FieldSumDoc {
        schema: FIELDSUM_SCHEMA.into(),
        signature: s.signature().diag().to_vec(),
        atoms: s
            .atoms()
            .map(|a| FieldAtomDoc {
                channel: a.channel,
                h: a.h,
                x: a.x,
                y: a.y,
                coeff: a.coeff.terms().map(|(b, v)| BladeDoc { blade: b.indices(), value: v }).collect(),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("plain data serializes")
}

pub fn observable_to_json(o: &ObservableDoc) -> serde_json::Value {
    match o {
        ObservableDoc::CharSum(s) => charsum_to_json(s),
        ObservableDoc::Poly(p) => poly_to_json(p),
        ObservableDoc::FieldSum(f) => fieldsum_to_json(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charsum_roundtrip() {
        let text = r#"{"schema":"charsum/1","n":1,"channels":[{"hbar":0.5,"ring":"complex"}],
            "atoms":[{"hbar":0.5,"re":1.0,"im":-2.0,"x":[1.0],"y":[0.25]}]}"#;
        let s = parse_charsum(text).unwrap();
        let back = parse_charsum(&charsum_to_json(&s).to_string()).unwrap();
        assert_eq!(s, back);
    }

    #[test]
    fn diagnostics_carry_line_context() {
        let text = "{\"schema\":\"charsum/1\",\n\"n\":1,\n\"atoms\":[{\"hbar\":0.5,\"re\":1.0 \"x\":[1.0]}]}";
        let Err(Error::Schema(msg)) = parse_charsum(text) else { panic!("expected schema error") };
        assert!(msg.starts_with("line 3"), "{msg}");
        assert!(msg.contains("\"atoms\""), "{msg}");
        let dim = r#"{"schema":"charsum/1","n":2,"atoms":[{"hbar":0.5,"re":1.0,"x":[1.0],"y":[0.0]}]}"#;
        let Err(Error::Schema(msg)) = parse_charsum(dim) else { panic!("expected schema error") };
        assert!(msg.contains("atom #0"), "{msg}");
    }

    #[test]
    fn poly_and_fieldsum_roundtrip() {
        let p = parse_poly(r#"{"schema":"poly/1","n":1,"monomials":[{"q":[2],"p":[0],"re":0.5},{"q":[0],"p":[2],"re":0.5}]}"#)
            .unwrap();
        assert_eq!(p, PolyObservable::harmonic_oscillator(1));
        assert_eq!(parse_poly(&poly_to_json(&p).to_string()).unwrap(), p);
        let f = parse_fieldsum(
            r#"{"schema":"fieldsum/1","signature":[-1,-1],"atoms":[{"channel":1,"h":0.0,"x":1.0,"y":[0.0,2.0],
                "coeff":[{"blade":[],"value":1.5},{"blade":[0,1],"value":-1.0}]}]}"#,
        )
        .unwrap();
        assert_eq!(parse_fieldsum(&fieldsum_to_json(&f).to_string()).unwrap(), f);
        assert!(matches!(parse_observable(r#"{"schema":"nope/1"}"#), Err(Error::Schema(_))));
    }
}
