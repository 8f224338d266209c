use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::ogp::{ElemSet, ElementSpec, Ogp, Sign};

/// Where an element of a glued complex came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Left(String),
    Right(String),
    Top,
}

pub type OriginMap = BTreeMap<String, Origin>;

/// Result of gluing two complexes along an identification.
#[derive(Clone, Debug)]
pub struct Glued {
    pub ogp: Ogp,
    pub origin: OriginMap,
    /// Image of each element of the left input (`None` when discarded).
    pub left: Vec<Option<usize>>,
    /// Image of each element of the right input (`None` when discarded).
    pub right: Vec<Option<usize>>,
    /// Index of the adjoined top element, if any.
    pub top: Option<usize>,
}

/// Faces of an adjoined greatest element, given on either side.
pub struct TopSpec {
    pub dim: usize,
    pub covers: Vec<(bool, usize, Sign)>,
}

/// Pushout of `keep_a ⊆ a` and `keep_b ⊆ b` identifying each right element
/// `y` in `ident` with the left element `ident[y]`. Kept left elements get ids
/// `left/…`, the remaining right elements `right/…`, and an optional new
/// greatest element gets `top`.
pub fn glue(
    name: &str,
    a: &Ogp,
    keep_a: &ElemSet,
    b: &Ogp,
    keep_b: &ElemSet,
    ident: &HashMap<usize, usize>,
    top: Option<TopSpec>,
) -> Glued {
    let lid = |x: usize| format!("left/{}", a.id(x));
    let rid = |y: usize| match ident.get(&y) {
        Some(&x) => lid(x),
        None => format!("right/{}", b.id(y)),
    };
    let mut specs = Vec::new();
    let mut origin = OriginMap::new();
    for x in keep_a.ones() {
        specs.push(ElementSpec {
            id: lid(x),
            dim: a.dim(x),
            covers: a
                .faces(x)
                .iter()
                .map(|&(f, s)| (lid(f), s))
                .collect(),
        });
        origin.insert(lid(x), Origin::Left(a.id(x).to_string()));
    }
    for y in keep_b.ones() {
        if ident.contains_key(&y) {
            continue;
        }
        specs.push(ElementSpec {
            id: rid(y),
            dim: b.dim(y),
            covers: b.faces(y).iter().map(|&(f, s)| (rid(f), s)).collect(),
        });
        origin.insert(rid(y), Origin::Right(b.id(y).to_string()));
    }
    if let Some(t) = &top {
        specs.push(ElementSpec {
            id: "top".into(),
            dim: t.dim,
            covers: t
                .covers
                .iter()
                .map(|&(left, x, s)| (if left { lid(x) } else { rid(x) }, s))
                .collect(),
        });
        origin.insert("top".into(), Origin::Top);
    }
    let ogp = Ogp::build(name, specs).expect("gluing keeps the structure well formed");
    let left = (0..a.len())
        .map(|x| keep_a.contains(x).then(|| ogp.index_of(&lid(x)).unwrap()))
        .collect();
    let right = (0..b.len())
        .map(|y| keep_b.contains(y).then(|| ogp.index_of(&rid(y)).unwrap()))
        .collect();
    let top = top.map(|_| ogp.index_of("top").unwrap());
    Glued {
        ogp,
        origin,
        left,
        right,
        top,
    }
}

/// Follows an origin map back to the id of an input, for display.
pub fn origin_id(origin: &OriginMap, id: &str) -> Option<String> {
    match origin.get(id)? {
        Origin::Left(s) | Origin::Right(s) => Some(s.clone()),
        Origin::Top => None,
    }
}
