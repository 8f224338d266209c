use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::glue::glue;
use crate::ogp::{ElemSet, ElementSpec, Ogp, Sign};

pub const PAIR_SEP: &str = "⊗";
pub const BASEPOINT: &str = "•";

/// Gray product with pair ids `x⊗y`.
pub fn gray_product(p: &Ogp, q: &Ogp) -> Ogp {
    gray_product_with(p, q, PAIR_SEP)
}

/// Gray product with pair ids joined by `sep`.
pub fn gray_product_with(p: &Ogp, q: &Ogp, sep: &str) -> Ogp {
    let pid = |x: usize, y: usize| format!("{}{sep}{}", p.id(x), q.id(y));
    let mut specs = Vec::with_capacity(p.len() * q.len());
    for x in 0..p.len() {
        for y in 0..q.len() {
            let mut covers = Vec::new();
            for &(x2, s) in p.faces(x) {
                covers.push((pid(x2, y), s));
            }
            for &(y2, s) in q.faces(y) {
                covers.push((pid(x, y2), s.twist(p.dim(x))));
            }
            specs.push(ElementSpec {
                id: pid(x, y),
                dim: p.dim(x) + q.dim(y),
                covers,
            });
        }
    }
    Ogp::build(format!("{}{sep}{}", p.name(), q.name()), specs)
        .expect("pair ids must not collide; choose another separator")
}

/// Index of `x⊗y` in a product built by [`gray_product_with`].
pub fn pair_index(pq: &Ogp, p: &Ogp, q: &Ogp, x: usize, y: usize, sep: &str) -> usize {
    pq.index_of(&format!("{}{sep}{}", p.id(x), q.id(y)))
        .expect("not a product of these factors")
}

/// Coordinate maps of a Gray product, as element-index tables.
pub struct Projections {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

pub fn gray_projections(pq: &Ogp, p: &Ogp, q: &Ogp, sep: &str) -> Projections {
    let mut left = vec![usize::MAX; pq.len()];
    let mut right = vec![usize::MAX; pq.len()];
    for x in 0..p.len() {
        for y in 0..q.len() {
            let i = pair_index(pq, p, q, x, y, sep);
            left[i] = x;
            right[i] = y;
        }
    }
    Projections { left, right }
}

/// Checks `f(∂ₙᵅ x) = ∂ₙᵅ f(x)` for every element `x`, sign and `n` below
/// `dim x`, and `f(cl{x}) = cl{f(x)}`.
pub fn is_map(src: &Ogp, dst: &Ogp, f: &[usize]) -> bool {
    let image = |s: &ElemSet| dst.set_of(s.ones().map(|x| f[x]));
    (0..src.len()).all(|x| {
        let fx = f[x];
        if image(src.down(x)) != *dst.down(fx) {
            return false;
        }
        (0..src.dim(x) as i64).all(|n| {
            Sign::BOTH.iter().all(|&a| {
                image(&src.elem_boundary(x, n, Some(a))) == dst.elem_boundary(fx, n, Some(a))
            })
        })
    })
}

/// Label of a cell in a presented complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Gen(String),
    /// A degenerate cell, a unit on the named cell.
    Unit(String),
    Basepoint,
    Pair(Box<Label>, Box<Label>),
}

impl Label {
    pub fn gen(s: &str) -> Label {
        Label::Gen(s.to_string())
    }

    pub fn parse(s: &str) -> Label {
        if s == BASEPOINT {
            Label::Basepoint
        } else if let Some(r) = s.strip_prefix("ε:") {
            Label::Unit(r.to_string())
        } else {
            Label::Gen(s.to_string())
        }
    }

    pub fn is_basepoint(&self) -> bool {
        matches!(self, Label::Basepoint)
    }

    pub fn is_generator(&self) -> bool {
        matches!(self, Label::Gen(_))
    }

    fn has_basepoint(&self) -> bool {
        match self {
            Label::Basepoint => true,
            Label::Pair(a, b) => a.has_basepoint() || b.has_basepoint(),
            _ => false,
        }
    }

    fn has_unit(&self) -> bool {
        match self {
            Label::Unit(_) => true,
            Label::Pair(a, b) => a.has_unit() || b.has_unit(),
            _ => false,
        }
    }

    fn bare(&self) -> String {
        match self {
            Label::Gen(s) | Label::Unit(s) => s.clone(),
            Label::Basepoint => BASEPOINT.into(),
            Label::Pair(a, b) => format!("{}{PAIR_SEP}{}", a.bare(), b.bare()),
        }
    }

    /// Relabelling applied by the smash quotient.
    pub fn collapse(&self) -> Label {
        match self {
            Label::Pair(..) if self.has_basepoint() => Label::Basepoint,
            Label::Pair(..) if self.has_unit() => Label::Unit(self.bare()),
            Label::Pair(..) => Label::Gen(self.bare()),
            l => l.clone(),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Gen(s) => f.write_str(s),
            Label::Unit(s) => write!(f, "ε:{s}"),
            Label::Basepoint => f.write_str(BASEPOINT),
            Label::Pair(a, b) => write!(f, "{a}{PAIR_SEP}{b}"),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Label::parse(&String::deserialize(d)?))
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LabelError {
    #[error("element {0:?} has no label")]
    Missing(String),
    #[error("label for unknown element {0:?}")]
    Unknown(String),
}

/// A complex whose elements carry labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledComplex {
    pub shape: Ogp,
    /// Indexed by element.
    pub labels: Vec<Label>,
}

impl LabelledComplex {
    pub fn new(shape: Ogp, labels: BTreeMap<String, Label>) -> Result<Self, LabelError> {
        for k in labels.keys() {
            if shape.index_of(k).is_none() {
                return Err(LabelError::Unknown(k.clone()));
            }
        }
        let labels = shape
            .ids()
            .iter()
            .map(|id| labels.get(id).cloned().ok_or_else(|| LabelError::Missing(id.clone())))
            .collect::<Result<_, _>>()?;
        Ok(LabelledComplex { shape, labels })
    }

    /// Labels every element by its own id.
    pub fn by_ids(shape: Ogp) -> Self {
        let labels = shape.ids().iter().map(|s| Label::Gen(s.clone())).collect();
        LabelledComplex { shape, labels }
    }

    pub fn label(&self, x: usize) -> &Label {
        &self.labels[x]
    }

    pub fn label_map(&self) -> BTreeMap<String, Label> {
        self.shape
            .ids()
            .iter()
            .cloned()
            .zip(self.labels.iter().cloned())
            .collect()
    }

    /// Elements of the greatest dimension whose labels are generators.
    pub fn generator_cells(&self, s: &ElemSet, dim: usize) -> Vec<usize> {
        s.ones()
            .filter(|&x| self.shape.dim(x) == dim && self.labels[x].is_generator())
            .collect()
    }
}

pub fn gray_labelled(x: &LabelledComplex, y: &LabelledComplex) -> LabelledComplex {
    let shape = gray_product(&x.shape, &y.shape);
    let mut labels = vec![Label::Basepoint; shape.len()];
    for a in 0..x.shape.len() {
        for b in 0..y.shape.len() {
            let i = pair_index(&shape, &x.shape, &y.shape, a, b, PAIR_SEP);
            labels[i] = Label::Pair(Box::new(x.labels[a].clone()), Box::new(y.labels[b].clone()));
        }
    }
    LabelledComplex { shape, labels }
}

/// Relabels every cell lying over a basepoint of either factor as the
/// basepoint, and flattens the remaining pair labels.
pub fn smash_collapse(x: &LabelledComplex) -> LabelledComplex {
    LabelledComplex {
        shape: x.shape.clone(),
        labels: x.labels.iter().map(Label::collapse).collect(),
    }
}

/// Disjoint union with the two basepoints identified.
pub fn wedge(x: &LabelledComplex, y: &LabelledComplex) -> Option<LabelledComplex> {
    let bx = (0..x.shape.len()).find(|&i| x.shape.dim(i) == 0 && x.labels[i].is_basepoint())?;
    let by = (0..y.shape.len()).find(|&i| y.shape.dim(i) == 0 && y.labels[i].is_basepoint())?;
    let ident: HashMap<usize, usize> = [(by, bx)].into_iter().collect();
    let name = format!("{}∨{}", x.shape.name(), y.shape.name());
    let g = glue(&name, &x.shape, &x.shape.full(), &y.shape, &y.shape.full(), &ident, None);
    let mut labels = vec![Label::Basepoint; g.ogp.len()];
    for (i, t) in g.left.iter().enumerate() {
        labels[t.unwrap()] = x.labels[i].clone();
    }
    for (i, t) in g.right.iter().enumerate() {
        labels[t.unwrap()] = y.labels[i].clone();
    }
    Some(LabelledComplex {
        shape: g.ogp,
        labels,
    })
}

/// A generating cell named by its label, with its dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenCell {
    pub name: String,
    pub dim: usize,
    pub basepoint: bool,
}

impl GenCell {
    pub fn new(name: &str, dim: usize) -> Self {
        GenCell {
            name: name.into(),
            dim,
            basepoint: false,
        }
    }

    pub fn basepoint() -> Self {
        GenCell {
            name: BASEPOINT.into(),
            dim: 0,
            basepoint: true,
        }
    }
}

/// Generators of a smash product by dimension: the basepoint, plus `x⊗y`
/// for every pair of non-basepoint generators.
pub fn smash_generators(gx: &[GenCell], gy: &[GenCell]) -> BTreeMap<usize, Vec<String>> {
    let mut out: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    out.entry(0).or_default().push(BASEPOINT.into());
    for a in gx.iter().filter(|g| !g.basepoint) {
        for b in gy.iter().filter(|g| !g.basepoint) {
            out.entry(a.dim + b.dim)
                .or_default()
                .push(format!("{}{PAIR_SEP}{}", a.name, b.name));
        }
    }
    out
}

pub fn smash_counts(gx: &[GenCell], gy: &[GenCell]) -> BTreeMap<usize, usize> {
    smash_generators(gx, gy)
        .into_iter()
        .map(|(d, v)| (d, v.len()))
        .collect()
}
