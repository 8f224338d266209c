use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graycat::{GrayExpr3, Step, TwoCellNF};
use crate::molecule::Cert;
use crate::ogp::{ElemSet, ElementSpec, Ogp, Sign, StructureError};
use crate::products::{Label, LabelError, LabelledComplex};
use crate::theories::{DiagCell, DiagPresentation};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("schema violation: {0}")]
    Structure(#[from] StructureError),
    #[error("schema violation: {0}")]
    Label(#[from] LabelError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverJson {
    pub id: String,
    pub sign: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub id: String,
    pub dim: usize,
    pub covers: Vec<CoverJson>,
}

/// On-disk form of a complex. `labels` is present for labelled complexes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
    pub elements: Vec<ElementJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, Label>>,
}

impl ComplexJson {
    pub fn from_ogp(p: &Ogp) -> ComplexJson {
        let elements = (0..p.len())
            .map(|x| {
                let mut covers: Vec<CoverJson> = p
                    .faces(x)
                    .iter()
                    .map(|&(y, s)| CoverJson {
                        id: p.id(y).to_string(),
                        sign: s.symbol().to_string(),
                    })
                    .collect();
                covers.sort_by(|a, b| a.id.cmp(&b.id));
                ElementJson {
                    id: p.id(x).to_string(),
                    dim: p.dim(x),
                    covers,
                }
            })
            .collect();
        ComplexJson {
            name: p.name().to_string(),
            comment: p.comment().map(str::to_string),
            elements,
            labels: None,
        }
    }

    pub fn to_ogp(&self) -> Result<Ogp, IoError> {
        let mut specs = Vec::with_capacity(self.elements.len());
        for (i, e) in self.elements.iter().enumerate() {
            let mut covers = Vec::with_capacity(e.covers.len());
            for (j, c) in e.covers.iter().enumerate() {
                let s = Sign::parse(&c.sign).ok_or_else(|| {
                    IoError::Schema(format!(
                        "elements[{i}] (id {:?}): covers[{j}]: sign must be \"+\" or \"-\", got {:?}",
                        e.id, c.sign
                    ))
                })?;
                covers.push((c.id.clone(), s));
            }
            specs.push(ElementSpec {
                id: e.id.clone(),
                dim: e.dim,
                covers,
            });
        }
        let mut p = Ogp::build(self.name.clone(), specs)?;
        p.set_comment(self.comment.clone());
        Ok(p)
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn parse_complex(text: &str) -> Result<Ogp, IoError> {
    serde_json::from_str::<ComplexJson>(text)?.to_ogp()
}

/// Canonical form: ids and covers sorted lexicographically.
pub fn serialize_complex(p: &Ogp) -> String {
    pretty(&ComplexJson::from_ogp(p))
}

pub fn parse_labelled(text: &str) -> Result<LabelledComplex, IoError> {
    let j: ComplexJson = serde_json::from_str(text)?;
    let shape = j.to_ogp()?;
    match j.labels {
        Some(l) => Ok(LabelledComplex::new(shape, l)?),
        None => Ok(LabelledComplex::by_ids(shape)),
    }
}

pub fn serialize_labelled(l: &LabelledComplex) -> String {
    let mut j = ComplexJson::from_ogp(&l.shape);
    j.labels = Some(l.label_map());
    pretty(&j)
}

#[derive(Serialize, Deserialize)]
struct CellJson {
    name: String,
    dim: usize,
    shape: ComplexJson,
}

#[derive(Serialize, Deserialize)]
struct DiagJson {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    comment: Option<String>,
    cells: Vec<CellJson>,
}

pub fn serialize_diag(d: &DiagPresentation) -> String {
    let cells = d
        .cells
        .iter()
        .map(|c| {
            let mut shape = ComplexJson::from_ogp(&c.shape.shape);
            shape.labels = Some(c.shape.label_map());
            CellJson {
                name: c.name.clone(),
                dim: c.dim,
                shape,
            }
        })
        .collect();
    pretty(&DiagJson {
        name: d.name.clone(),
        comment: None,
        cells,
    })
}

pub fn parse_diag(text: &str) -> Result<DiagPresentation, IoError> {
    let j: DiagJson = serde_json::from_str(text)?;
    let mut cells = Vec::with_capacity(j.cells.len());
    for c in j.cells {
        let shape = c.shape.to_ogp()?;
        let labels = c
            .shape
            .labels
            .ok_or_else(|| IoError::Schema(format!("cell {:?}: missing labels", c.name)))?;
        cells.push(DiagCell {
            name: c.name,
            dim: c.dim,
            shape: LabelledComplex::new(shape, labels)?,
        });
    }
    Ok(DiagPresentation {
        name: j.name,
        cells,
    })
}

fn ids(p: &Ogp, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| p.id(x).to_string()).collect()
}

fn set_ids(p: &Ogp, s: &ElemSet) -> Vec<String> {
    p.ids_of(s)
}

#[derive(Serialize)]
struct NfJson {
    support: Vec<String>,
    order: Vec<String>,
}

fn nf_json(p: &Ogp, nf: &TwoCellNF) -> NfJson {
    NfJson {
        support: set_ids(p, &nf.support),
        order: ids(p, &nf.order),
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum StepJson {
    Interchange {
        display: String,
        before: Vec<String>,
        pos: usize,
    },
    Gen {
        display: String,
        atom: String,
        source: NfJson,
        target: NfJson,
    },
}

#[derive(Serialize)]
struct ExprJson {
    display: String,
    source: NfJson,
    target: NfJson,
    steps: Vec<StepJson>,
}

pub fn serialize_expr(p: &Ogp, e: &GrayExpr3) -> String {
    let steps = e
        .steps
        .iter()
        .map(|s| match s {
            Step::Interchange { before, pos, .. } => StepJson::Interchange {
                display: s.display(p),
                before: ids(p, before),
                pos: *pos,
            },
            Step::GenApp {
                atom,
                source,
                target,
            } => StepJson::Gen {
                display: s.display(p),
                atom: p.id(*atom).to_string(),
                source: nf_json(p, source),
                target: nf_json(p, target),
            },
        })
        .collect();
    let target = e.steps.last().map(|s| s.target()).unwrap_or(e.source.clone());
    pretty(&ExprJson {
        display: e.display(p),
        source: nf_json(p, &e.source),
        target: nf_json(p, &target),
        steps,
    })
}

#[derive(Serialize)]
struct MoleculeJson<'a> {
    cert: &'a Cert,
    shape: ComplexJson,
}

/// A molecule with its construction certificate.
pub fn serialize_molecule(m: &crate::molecule::Molecule) -> String {
    pretty(&MoleculeJson {
        cert: &m.cert,
        shape: ComplexJson::from_ogp(&m.shape),
    })
}

pub fn to_pretty<T: Serialize>(v: &T) -> String {
    pretty(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molecule::globe;

    #[test]
    fn globe_round_trip() {
        let p = globe(2);
        let s = serialize_complex(&p);
        let q = parse_complex(&s).unwrap();
        assert_eq!(q, p);
        assert_eq!(serialize_complex(&q), s);
    }

    #[test]
    fn dangling_cover_reports_path() {
        let text = r#"{"name":"x","elements":[{"id":"a","dim":1,"covers":[{"id":"nope","sign":"+"}]}]}"#;
        let e = parse_complex(text).unwrap_err().to_string();
        assert!(e.contains("elements[0]"), "{e}");
        assert!(e.contains("nope"), "{e}");
    }

    #[test]
    fn bad_sign() {
        let text = r#"{"name":"x","elements":[{"id":"a","dim":0,"covers":[]},{"id":"b","dim":1,"covers":[{"id":"a","sign":"*"}]}]}"#;
        assert!(matches!(parse_complex(text), Err(IoError::Schema(_))));
    }
}
