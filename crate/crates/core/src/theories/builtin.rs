use thiserror::Error;

use super::diag::{co_mon_complex, mon_complex, DiagPresentation};
use super::pro::{dual_pro, words, Flags, Generator, Op, Presentation, Relation, RelationKind, Slice};

pub const BUILTIN_NAMES: [&str; 6] = ["N", "Mon", "coMon", "MonComplex", "coMonComplex", "BialgExpected"];

const BIALG_EXPECTED: &str = include_str!("../../fixtures/bialg_expected.json");

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Pro(Presentation),
    Complex(DiagPresentation),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum BuiltinError {
    #[error("unknown builtin {0:?}; known: N, Mon, coMon, MonComplex, coMonComplex, BialgExpected")]
    Unknown(String),
}

pub fn builtin(name: &str) -> Result<Builtin, BuiltinError> {
    Ok(match name {
        "N" => Builtin::Pro(n()),
        "Mon" => Builtin::Pro(mon()),
        "coMon" => Builtin::Pro(co_mon()),
        "MonComplex" => Builtin::Complex(mon_complex()),
        "coMonComplex" => Builtin::Complex(co_mon_complex()),
        "BialgExpected" => Builtin::Pro(bialg_expected()),
        _ => return Err(BuiltinError::Unknown(name.to_string())),
    })
}

/// The free pro on one sort.
pub fn n() -> Presentation {
    Presentation {
        name: "N".into(),
        sorts: words(&["1"]),
        generators: vec![],
        relations: vec![],
        flags: Flags::default(),
    }
}

pub fn mon() -> Presentation {
    let mu = || Op::Gen("μ".into());
    let eta = || Op::Gen("η".into());
    let rel = |name: &str, source: &[&str], lhs: Vec<Slice>, rhs: Vec<Slice>| Relation {
        name: name.into(),
        kind: RelationKind::Given,
        source: words(source),
        lhs,
        rhs,
    };
    Presentation {
        name: "Mon".into(),
        sorts: words(&["1"]),
        generators: vec![
            Generator {
                name: "μ".into(),
                input: words(&["1", "1"]),
                output: words(&["1"]),
            },
            Generator {
                name: "η".into(),
                input: vec![],
                output: words(&["1"]),
            },
        ],
        relations: vec![
            rel(
                "α",
                &["1", "1", "1"],
                vec![Slice::new(&[], mu(), &["1"]), Slice::new(&[], mu(), &[])],
                vec![Slice::new(&["1"], mu(), &[]), Slice::new(&[], mu(), &[])],
            ),
            rel(
                "λ",
                &["1"],
                vec![Slice::new(&[], eta(), &["1"]), Slice::new(&[], mu(), &[])],
                vec![],
            ),
            rel(
                "ρ",
                &["1"],
                vec![Slice::new(&["1"], eta(), &[]), Slice::new(&[], mu(), &[])],
                vec![],
            ),
        ],
        flags: Flags::default(),
    }
}

/// Generator and relation names of the comonoid theory.
pub fn co_name(s: &str) -> String {
    match s {
        "μ" => "δ".into(),
        "η" => "ε".into(),
        s => format!("{s}°"),
    }
}

pub fn co_mon() -> Presentation {
    dual_pro(&mon(), "coMon", &co_name).expect("the monoid theory is well formed")
}

pub fn bialg_expected() -> Presentation {
    serde_json::from_str(BIALG_EXPECTED).expect("bundled fixture parses")
}
