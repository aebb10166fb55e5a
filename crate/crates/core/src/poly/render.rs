use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Exponents, MultiPoly};
use crate::error::Error;

const STANDARD_NAMES: [&str; 4] = ["q", "s", "v", "w"];

/// Terms in graded lexicographic order, highest first.
pub(crate) fn graded_terms(p: &MultiPoly) -> Vec<(&Exponents, &BigInt)> {
    let mut v: Vec<_> = p.terms.iter().collect();
    v.sort_by(|(a, _), (b, _)| {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        db.cmp(&da).then_with(|| b.cmp(a))
    });
    v
}

#[derive(Clone, Copy)]
pub(crate) enum Style {
    Text,
    Latex,
}

pub(crate) fn render(p: &MultiPoly, names: &[&str; 4], style: Style) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in graded_terms(p).into_iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = c.abs();
        let factors: Vec<String> = e
            .iter()
            .zip(names.iter())
            .filter(|(k, _)| **k > 0)
            .map(|(k, name)| match (style, *k) {
                (_, 1) => name.to_string(),
                (Style::Text, k) => format!("{name}^{k}"),
                (Style::Latex, k) => format!("{name}^{{{k}}}"),
            })
            .collect();
        let sep = match style {
            Style::Text => "*",
            Style::Latex => " ",
        };
        if factors.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push_str(sep);
            }
            out.push_str(&factors.join(sep));
        }
    }
    out
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, &STANDARD_NAMES, Style::Text))
    }
}

impl MultiPoly {
    pub fn to_latex(&self) -> String {
        render(self, &STANDARD_NAMES, Style::Latex)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, Error> {
        Ok(serde_json::from_value(value.clone())?)
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct PolyJson {
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    e: [u32; 4],
    c: String,
}

impl From<MultiPoly> for PolyJson {
    fn from(p: MultiPoly) -> Self {
        PolyJson { terms: graded_terms(&p).into_iter().map(|(e, c)| TermJson { e: *e, c: c.to_string() }).collect() }
    }
}

impl TryFrom<PolyJson> for MultiPoly {
    type Error = Error;

    fn try_from(j: PolyJson) -> Result<Self, Error> {
        let mut p = MultiPoly::zero();
        for t in j.terms {
            let c: BigInt = t.c.parse().map_err(|_| Error::Parse(format!("bad coefficient `{}`", t.c)))?;
            if !c.is_zero() {
                p.add_term(t.e, c);
            }
        }
        Ok(p)
    }
}
