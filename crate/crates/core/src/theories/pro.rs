use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::perm::{block_sigma, PermError};

pub type Word = Vec<String>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Op {
    Gen(String),
    /// `σ_{a,b}: (a, b) ⇒ (b, a)`.
    Braid(String, String),
    /// `σ*_{a,b}: (a, b) ⇒ (b, a)`, the inverse of `σ_{b,a}`.
    BraidInv(String, String),
}

/// One whiskered operation: `pre ∘₀ op ∘₀ post`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Slice {
    pub pre: Word,
    pub op: Op,
    pub post: Word,
}

impl Slice {
    pub fn new(pre: &[&str], op: Op, post: &[&str]) -> Slice {
        Slice {
            pre: words(pre),
            op,
            post: words(post),
        }
    }

    pub fn gen(pre: &[String], g: &str, post: &[String]) -> Slice {
        Slice {
            pre: pre.to_vec(),
            op: Op::Gen(g.to_string()),
            post: post.to_vec(),
        }
    }
}

pub fn words(xs: &[&str]) -> Word {
    xs.iter().map(|s| s.to_string()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    #[serde(rename = "in")]
    pub input: Word,
    #[serde(rename = "out")]
    pub output: Word,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    Given,
    Inherited,
    Interchange,
    Symmetry,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub name: String,
    pub kind: RelationKind,
    pub source: Word,
    pub lhs: Vec<Slice>,
    pub rhs: Vec<Slice>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub braided: bool,
    pub symmetric: bool,
}

/// A presented pro, prob or prop.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub name: String,
    pub sorts: Vec<String>,
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
    pub flags: Flags,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ProError {
    #[error("unknown sort {0:?}")]
    UnknownSort(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("braidings need a braided presentation")]
    NotBraided,
    #[error("slice {index} does not apply to the word {word:?}")]
    Chain { index: usize, word: Word },
    #[error("relation {0:?}: the two sides have different targets")]
    NotParallel(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}

impl Presentation {
    pub fn generator(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.name == name)
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.name == name)
    }

    fn check_word(&self, w: &[String]) -> Result<(), ProError> {
        match w.iter().find(|s| !self.sorts.contains(s)) {
            Some(s) => Err(ProError::UnknownSort(s.clone())),
            None => Ok(()),
        }
    }

    fn op_type(&self, op: &Op) -> Result<(Word, Word), ProError> {
        match op {
            Op::Gen(g) => {
                let g = self
                    .generator(g)
                    .ok_or_else(|| ProError::UnknownGenerator(g.clone()))?;
                Ok((g.input.clone(), g.output.clone()))
            }
            Op::Braid(a, b) | Op::BraidInv(a, b) => {
                if !self.flags.braided {
                    return Err(ProError::NotBraided);
                }
                Ok((vec![a.clone(), b.clone()], vec![b.clone(), a.clone()]))
            }
        }
    }

    /// Target word of `slices` applied to `source`.
    pub fn target(&self, source: &[String], slices: &[Slice]) -> Result<Word, ProError> {
        self.check_word(source)?;
        let mut cur = source.to_vec();
        for (i, s) in slices.iter().enumerate() {
            let (input, output) = self.op_type(&s.op)?;
            let expect: Word = [s.pre.clone(), input, s.post.clone()].concat();
            if expect != cur {
                return Err(ProError::Chain { index: i, word: cur });
            }
            cur = [s.pre.clone(), output, s.post.clone()].concat();
        }
        Ok(cur)
    }

    /// Checks generator types and that every relation has parallel sides.
    pub fn check(&self) -> Result<(), ProError> {
        for g in &self.generators {
            self.check_word(&g.input)?;
            self.check_word(&g.output)?;
        }
        for r in &self.relations {
            if self.target(&r.source, &r.lhs)? != self.target(&r.source, &r.rhs)? {
                return Err(ProError::NotParallel(r.name.clone()));
            }
        }
        Ok(())
    }

    pub fn count_kind(&self, kind: RelationKind) -> usize {
        self.relations.iter().filter(|r| r.kind == kind).count()
    }
}

pub const TENSOR_SEP: &str = "⊗";

fn pair(a: &str, c: &str) -> String {
    format!("{a}{TENSOR_SEP}{c}")
}

fn map_slices(slices: &[Slice], sort: &dyn Fn(&str) -> String, gen: &dyn Fn(&str) -> String) -> Vec<Slice> {
    let mw = |w: &Word| w.iter().map(|s| sort(s)).collect::<Word>();
    slices
        .iter()
        .map(|s| Slice {
            pre: mw(&s.pre),
            op: match &s.op {
                Op::Gen(g) => Op::Gen(gen(g)),
                Op::Braid(a, b) => Op::Braid(sort(a), sort(b)),
                Op::BraidInv(a, b) => Op::BraidInv(sort(a), sort(b)),
            },
            post: mw(&s.post),
        })
        .collect()
}

fn block(rows: &[Word], from: usize, to: usize) -> Word {
    rows[from..to].concat()
}

/// The external tensor product of two pros, as a presented prob.
pub fn tensor_pros(t: &Presentation, s: &Presentation) -> Result<Presentation, ProError> {
    let sorts: Vec<String> = t
        .sorts
        .iter()
        .flat_map(|a| s.sorts.iter().map(move |c| pair(a, c)))
        .collect();
    let mut generators = Vec::new();
    for phi in &t.generators {
        for c in &s.sorts {
            generators.push(Generator {
                name: pair(&phi.name, c),
                input: phi.input.iter().map(|a| pair(a, c)).collect(),
                output: phi.output.iter().map(|b| pair(b, c)).collect(),
            });
        }
    }
    for a in &t.sorts {
        for psi in &s.generators {
            generators.push(Generator {
                name: pair(a, &psi.name),
                input: psi.input.iter().map(|c| pair(a, c)).collect(),
                output: psi.output.iter().map(|d| pair(a, d)).collect(),
            });
        }
    }
    let mut relations = Vec::new();
    for r in &t.relations {
        for c in &s.sorts {
            let sort = |x: &str| pair(x, c);
            let gen = |g: &str| pair(g, c);
            relations.push(Relation {
                name: pair(&r.name, c),
                kind: RelationKind::Inherited,
                source: r.source.iter().map(|x| sort(x)).collect(),
                lhs: map_slices(&r.lhs, &sort, &gen),
                rhs: map_slices(&r.rhs, &sort, &gen),
            });
        }
    }
    for a in &t.sorts {
        for r in &s.relations {
            let sort = |x: &str| pair(a, x);
            relations.push(Relation {
                name: pair(a, &r.name),
                kind: RelationKind::Inherited,
                source: r.source.iter().map(|x| sort(x)).collect(),
                lhs: map_slices(&r.lhs, &sort, &sort),
                rhs: map_slices(&r.rhs, &sort, &sort),
            });
        }
    }
    for phi in &t.generators {
        for psi in &s.generators {
            relations.push(interchange(phi, psi)?);
        }
    }
    let out = Presentation {
        name: format!("{}{TENSOR_SEP}{}", t.name, s.name),
        sorts,
        generators,
        relations,
        flags: Flags {
            braided: true,
            symmetric: false,
        },
    };
    out.check()?;
    Ok(out)
}

/// The relation `φ⊗ψ` between the two four-stage composites.
fn interchange(phi: &Generator, psi: &Generator) -> Result<Relation, ProError> {
    let (a, b) = (&phi.input, &phi.output);
    let (c, d) = (&psi.input, &psi.output);
    // rows indexed by the outer factor
    let rows = |xs: &Word, ys: &Word| -> Vec<Word> {
        xs.iter()
            .map(|x| ys.iter().map(|y| pair(x, y)).collect())
            .collect()
    };
    let cols = |xs: &Word, ys: &Word| -> Vec<Word> {
        ys.iter()
            .map(|y| xs.iter().map(|x| pair(x, y)).collect())
            .collect()
    };
    let (ac, ad, bc, bd) = (rows(a, c), rows(a, d), rows(b, c), rows(b, d));
    let (ac_t, ad_t, bc_t, bd_t) = (cols(a, c), cols(a, d), cols(b, c), cols(b, d));
    let source: Word = ac.concat();

    let mut lhs = Vec::new();
    for (i, ai) in a.iter().enumerate() {
        lhs.push(Slice::gen(&block(&ad, 0, i), &pair(ai, &psi.name), &block(&ac, i + 1, a.len())));
    }
    lhs.extend(block_sigma(a.len(), d.len(), &ad)?.0);
    for (l, dl) in d.iter().enumerate() {
        lhs.push(Slice::gen(&block(&bd_t, 0, l), &pair(&phi.name, dl), &block(&ad_t, l + 1, d.len())));
    }
    lhs.extend(block_sigma(b.len(), d.len(), &bd)?.1);

    let mut rhs = block_sigma(a.len(), c.len(), &ac)?.0;
    for (k, ck) in c.iter().enumerate() {
        rhs.push(Slice::gen(&block(&bc_t, 0, k), &pair(&phi.name, ck), &block(&ac_t, k + 1, c.len())));
    }
    rhs.extend(block_sigma(b.len(), c.len(), &bc)?.1);
    for (j, bj) in b.iter().enumerate() {
        rhs.push(Slice::gen(&block(&bd, 0, j), &pair(bj, &psi.name), &block(&bc, j + 1, b.len())));
    }
    Ok(Relation {
        name: pair(&phi.name, &psi.name),
        kind: RelationKind::Interchange,
        source,
        lhs,
        rhs,
    })
}

/// Adds the symmetry relations `σ_{a,b} = σ*_{a,b}` and, for a tensor
/// product of `t` and `s`, the relations identifying the symmetries of each
/// factor with braidings of the product.
pub fn prop_quotient(
    p: &Presentation,
    factors: Option<(&Presentation, &Presentation)>,
) -> Result<Presentation, ProError> {
    if !p.flags.braided {
        return Err(ProError::NotBraided);
    }
    let mut out = p.clone();
    out.flags.symmetric = true;
    let names: BTreeSet<String> = p.relations.iter().map(|r| r.name.clone()).collect();
    let add_rel = |out: &mut Presentation, r: Relation| {
        if !names.contains(&r.name) {
            out.relations.push(r);
        }
    };
    for a in &p.sorts {
        for b in &p.sorts {
            add_rel(
                &mut out,
                Relation {
                    name: format!("σ=σ*[{a},{b}]"),
                    kind: RelationKind::Symmetry,
                    source: vec![a.clone(), b.clone()],
                    lhs: vec![Slice::new(&[], Op::Braid(a.clone(), b.clone()), &[])],
                    rhs: vec![Slice::new(&[], Op::BraidInv(a.clone(), b.clone()), &[])],
                },
            );
        }
    }
    if let Some((t, s)) = factors {
        let mut extra = Vec::new();
        for a in &t.sorts {
            for b in &t.sorts {
                for c in &s.sorts {
                    extra.push((format!("σ[{a},{b}]{TENSOR_SEP}{c}"), pair(a, c), pair(b, c)));
                }
            }
        }
        for a in &t.sorts {
            for c in &s.sorts {
                for d in &s.sorts {
                    extra.push((format!("{a}{TENSOR_SEP}σ[{c},{d}]"), pair(a, c), pair(a, d)));
                }
            }
        }
        for (name, x, y) in extra {
            if out.generator(&name).is_none() {
                out.generators.push(Generator {
                    name: name.clone(),
                    input: vec![x.clone(), y.clone()],
                    output: vec![y.clone(), x.clone()],
                });
            }
            add_rel(
                &mut out,
                Relation {
                    name: name.clone(),
                    kind: RelationKind::Symmetry,
                    source: vec![x.clone(), y.clone()],
                    lhs: vec![Slice::new(&[], Op::Gen(name.clone()), &[])],
                    rhs: vec![Slice::new(&[], Op::Braid(x, y), &[])],
                },
            );
        }
    }
    out.check()?;
    Ok(out)
}

/// Reverses the direction of every 2-cell; `rename` gives the new names of
/// generators and relations.
pub fn dual_pro(p: &Presentation, name: &str, rename: &dyn Fn(&str) -> String) -> Result<Presentation, ProError> {
    let flip = |slices: &[Slice]| -> Vec<Slice> {
        slices
            .iter()
            .rev()
            .map(|s| Slice {
                pre: s.pre.clone(),
                op: match &s.op {
                    Op::Gen(g) => Op::Gen(rename(g)),
                    Op::Braid(a, b) => Op::BraidInv(b.clone(), a.clone()),
                    Op::BraidInv(a, b) => Op::Braid(b.clone(), a.clone()),
                },
                post: s.post.clone(),
            })
            .collect()
    };
    let mut relations = Vec::new();
    for r in &p.relations {
        relations.push(Relation {
            name: rename(&r.name),
            kind: r.kind,
            source: p.target(&r.source, &r.lhs)?,
            lhs: flip(&r.lhs),
            rhs: flip(&r.rhs),
        });
    }
    let out = Presentation {
        name: name.to_string(),
        sorts: p.sorts.clone(),
        generators: p
            .generators
            .iter()
            .map(|g| Generator {
                name: rename(&g.name),
                input: g.output.clone(),
                output: g.input.clone(),
            })
            .collect(),
        relations,
        flags: p.flags,
    };
    out.check()?;
    Ok(out)
}
