//! Machine-readable records. Field order is fixed so the JSON is byte-stable.

use serde::Serialize;

use crate::coproduct::{CheckReport, ObstructionReport};
use crate::modular::Prime;
use crate::tensor::Tensor;
use crate::term::{Element, Generator, Grading, Monomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LetterRecord {
    pub g: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
}

impl From<Generator> for LetterRecord {
    fn from(g: Generator) -> Self {
        match g {
            Generator::Beta => LetterRecord { g: "b", k: None },
            Generator::Power(k) => LetterRecord { g: "P", k: Some(k) },
        }
    }
}

pub fn word_record(m: &Monomial) -> Vec<LetterRecord> {
    m.letters().iter().copied().map(LetterRecord::from).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermRecord {
    pub c: u32,
    pub w: Vec<LetterRecord>,
    pub deg: [u64; 2],
}

/// `{"p":3,"terms":[{"c":2,"w":[{"g":"P","k":2},{"g":"P","k":0}],"deg":[8,2]}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementRecord {
    pub p: u32,
    pub terms: Vec<TermRecord>,
}

impl ElementRecord {
    pub fn new(p: Prime, e: &Element) -> Self {
        let g = Grading::standard(p);
        let terms = e
            .sorted_terms(p)
            .into_iter()
            .map(|(m, c)| {
                let d = g.bidegree_of(m).expect("standard grading is concrete");
                TermRecord { c: c.value(), w: word_record(m), deg: [d.n, d.s] }
            })
            .collect();
        ElementRecord { p: p.get(), terms }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorTermRecord {
    pub c: u32,
    pub l: Vec<LetterRecord>,
    pub r: Vec<LetterRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorRecord {
    pub terms: Vec<TensorTermRecord>,
    pub text: String,
}

impl TensorRecord {
    pub fn new(p: Prime, t: &Tensor<2>) -> Self {
        let terms = t
            .sorted_terms(p)
            .into_iter()
            .map(|([l, r], c)| TensorTermRecord { c: c.value(), l: word_record(l), r: word_record(r) })
            .collect();
        TensorRecord { terms, text: t.to_text(p) }
    }
}

/// Coproduct output: the tensor plus the scheme that produced it.
#[derive(Clone, Debug, Serialize)]
pub struct CoproductRecord<'a> {
    pub p: u32,
    pub scheme: &'a str,
    #[serde(flatten)]
    pub tensor: TensorRecord,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChecksRecord<'a> {
    pub p: u32,
    pub passed: bool,
    pub reports: &'a [CheckReport],
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionRecord<'a> {
    pub p: u32,
    pub verdict: &'a str,
    pub cases: &'a [ObstructionReport],
}

pub fn to_json<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("records serialize")
}
