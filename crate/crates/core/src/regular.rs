use serde::Serialize;

use crate::molecule::{recognize, spherical, Recognition};
use crate::ogp::{Ogp, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Unknown,
    /// The check does not apply to this element.
    Na,
}

impl Status {
    fn of(b: bool) -> Status {
        if b {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn and(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Unknown, _) | (_, Unknown) => Unknown,
            (Na, x) | (x, Na) => x,
            _ => Pass,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ElementReport {
    pub id: String,
    pub dim: usize,
    pub spherical: Status,
    pub input_molecule: Status,
    pub output_molecule: Status,
    pub globular: Status,
}

impl ElementReport {
    pub fn overall(&self) -> Status {
        self.spherical
            .and(self.input_molecule)
            .and(self.output_molecule)
            .and(self.globular)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub name: String,
    pub elements: Vec<ElementReport>,
}

impl ValidationReport {
    pub fn status(&self) -> Status {
        self.elements
            .iter()
            .fold(Status::Pass, |s, e| s.and(e.overall()))
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    pub fn failures(&self) -> Vec<&ElementReport> {
        self.elements
            .iter()
            .filter(|e| e.overall() == Status::Fail)
            .collect()
    }
}

/// Checks every element of positive dimension for spherical boundary,
/// molecule boundaries and globularity. Structural errors are caught
/// earlier, when the complex is built.
pub fn validate_complex(p: &Ogp) -> ValidationReport {
    let mut elements = Vec::new();
    for x in 0..p.len() {
        let n = p.dim(x);
        if n == 0 {
            continue;
        }
        let cl = p.down(x).clone();
        let mol = |s: Sign| {
            let b = p.boundary(&cl, n as i64 - 1, Some(s));
            match recognize(p, &b) {
                Recognition::Molecule(_) => Status::Pass,
                Recognition::NotMolecule => Status::Fail,
                Recognition::Unknown => Status::Unknown,
            }
        };
        let globular = if n >= 2 {
            let mut ok = true;
            for a in Sign::BOTH {
                let target = p.boundary(&cl, n as i64 - 2, Some(a));
                for b in Sign::BOTH {
                    let inner = p.boundary(&cl, n as i64 - 1, Some(b));
                    ok &= p.boundary(&inner, n as i64 - 2, Some(a)) == target;
                }
            }
            Status::of(ok)
        } else {
            Status::Na
        };
        elements.push(ElementReport {
            id: p.id(x).to_string(),
            dim: n,
            spherical: Status::of(spherical(p, &cl)),
            input_molecule: mol(Sign::Minus),
            output_molecule: mol(Sign::Plus),
            globular,
        });
    }
    ValidationReport {
        name: p.name().to_string(),
        elements,
    }
}
