use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::glue::{glue, Glued, OriginMap, TopSpec};
use crate::iso::{find_iso, mismatch_stratum, IsoError, IsoMap};
use crate::ogp::{set_inter, set_minus, set_union, ElemSet, ElementSpec, Ogp, Sign, UnknownId};
use crate::order::{frame_dimension_of, maxd};

/// Construction certificate of a molecule.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cert {
    Atom(String),
    Paste {
        k: usize,
        left: Box<Cert>,
        right: Box<Cert>,
    },
}

impl Cert {
    pub fn paste(k: usize, left: Cert, right: Cert) -> Cert {
        Cert::Paste {
            k,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn map_ids(&self, f: &dyn Fn(&str) -> String) -> Cert {
        match self {
            Cert::Atom(x) => Cert::Atom(f(x)),
            Cert::Paste { k, left, right } => Cert::paste(*k, left.map_ids(f), right.map_ids(f)),
        }
    }

    pub fn atoms(&self) -> Vec<&str> {
        match self {
            Cert::Atom(x) => vec![x.as_str()],
            Cert::Paste { left, right, .. } => {
                let mut v = left.atoms();
                v.extend(right.atoms());
                v
            }
        }
    }

    /// Element set described by the certificate.
    pub fn elements(&self, p: &Ogp) -> Result<ElemSet, UnknownId> {
        match self {
            Cert::Atom(x) => Ok(p.down(p.elem(x)?).clone()),
            Cert::Paste { left, right, .. } => Ok(set_union(&left.elements(p)?, &right.elements(p)?)),
        }
    }

    /// Checks every pasting node of the tree inside `p`.
    pub fn verify(&self, p: &Ogp) -> bool {
        self.check(p).is_some()
    }

    fn check(&self, p: &Ogp) -> Option<ElemSet> {
        match self {
            Cert::Atom(x) => p.index_of(x).map(|i| p.down(i).clone()),
            Cert::Paste { k, left, right } => {
                let a = left.check(p)?;
                let b = right.check(p)?;
                split_holds(p, &a, &b, *k).then(|| set_union(&a, &b))
            }
        }
    }
}

impl fmt::Display for Cert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cert::Atom(x) => write!(f, "{x}"),
            Cert::Paste { k, left, right } => write!(f, "({left} ∘{k} {right})"),
        }
    }
}

/// `a ∩ b = ∂ₖ⁺a = ∂ₖ⁻b` with both parts proper in the union.
pub fn split_holds(p: &Ogp, a: &ElemSet, b: &ElemSet, k: usize) -> bool {
    let u = set_union(a, b);
    if *a == u || *b == u {
        return false;
    }
    let i = set_inter(a, b);
    i == p.boundary(a, k as i64, Some(Sign::Plus)) && i == p.boundary(b, k as i64, Some(Sign::Minus))
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MolError {
    #[error("pasting along the {k}-boundary is degenerate (one side equals its boundary)")]
    Degenerate { k: usize },
    #[error("boundary mismatch: {what} are not isomorphic, first unmatched stratum is dimension {stratum}")]
    BoundaryMismatch { what: String, stratum: usize },
    #[error("boundary isomorphisms disagree on shared elements")]
    InconsistentBoundary,
    #[error("{0} does not have spherical boundary")]
    NotSpherical(String),
    #[error("{0} is not a molecule")]
    NotMolecule(String),
    #[error("could not decide whether {0} is a molecule")]
    Undecided(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("substitution result failed verification: {0}")]
    Verification(String),
    #[error(transparent)]
    Iso(#[from] IsoError),
    #[error(transparent)]
    Unknown(#[from] UnknownId),
}

/// A molecule as a standalone complex together with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Molecule {
    pub shape: Ogp,
    pub cert: Cert,
    /// Provenance of elements when the shape was produced by gluing.
    pub origin: OriginMap,
}

impl Molecule {
    pub fn new(shape: Ogp, cert: Cert) -> Self {
        Molecule {
            shape,
            cert,
            origin: OriginMap::new(),
        }
    }

    /// Recognizes the whole of `shape` as a molecule.
    pub fn from_ogp(shape: Ogp) -> Result<Molecule, MolError> {
        let full = shape.full();
        match recognize(&shape, &full) {
            Recognition::Molecule(cert) => Ok(Molecule::new(shape, cert)),
            Recognition::NotMolecule => Err(MolError::NotMolecule(shape.name().to_string())),
            Recognition::Unknown => Err(MolError::Undecided(shape.name().to_string())),
        }
    }

    /// Recognizes a closed subset of `p`, keeping ids.
    pub fn from_subset(p: &Ogp, u: &ElemSet, name: &str) -> Result<Molecule, MolError> {
        match recognize(p, u) {
            Recognition::Molecule(cert) => Ok(Molecule::new(p.restrict(u, name), cert)),
            Recognition::NotMolecule => Err(MolError::NotMolecule(name.to_string())),
            Recognition::Unknown => Err(MolError::Undecided(name.to_string())),
        }
    }

    pub fn dim(&self) -> i64 {
        self.shape.dimension()
    }

    pub fn len(&self) -> usize {
        self.shape.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shape.is_empty()
    }

    pub fn full(&self) -> ElemSet {
        self.shape.full()
    }

    pub fn boundary_set(&self, n: i64, a: Option<Sign>) -> ElemSet {
        self.shape.boundary(&self.full(), n, a)
    }

    /// The boundary `∂ₙᵅ` as a molecule with the same ids.
    pub fn boundary(&self, n: i64, a: Sign) -> Result<Molecule, MolError> {
        let b = self.boundary_set(n, Some(a));
        let name = format!("∂{n}{}{}", a.symbol(), self.shape.name());
        Molecule::from_subset(&self.shape, &b, &name)
    }

    pub fn is_spherical(&self) -> bool {
        spherical(&self.shape, &self.full())
    }

    /// The top element when the molecule is an atom.
    pub fn top(&self) -> Option<usize> {
        self.shape.greatest(&self.full())
    }
}

/// `∂ₖ⁺u ∩ ∂ₖ⁻u = ∂ₖ₋₁u` for all `k < dim u`.
pub fn spherical(p: &Ogp, u: &ElemSet) -> bool {
    let n = p.dim_of(u);
    (0..n).all(|k| {
        set_inter(
            &p.boundary(u, k, Some(Sign::Plus)),
            &p.boundary(u, k, Some(Sign::Minus)),
        ) == p.boundary(u, k - 1, None)
    })
}

pub fn globe(n: usize) -> Ogp {
    let mut specs = Vec::new();
    if n == 0 {
        specs.push(ElementSpec::new("0", 0, &[]));
    } else {
        for k in 0..n {
            for s in Sign::BOTH {
                let covers = if k == 0 {
                    vec![]
                } else {
                    vec![
                        (format!("{}-", k - 1), Sign::Minus),
                        (format!("{}+", k - 1), Sign::Plus),
                    ]
                };
                specs.push(ElementSpec {
                    id: format!("{k}{}", s.symbol()),
                    dim: k,
                    covers,
                });
            }
        }
        specs.push(ElementSpec {
            id: n.to_string(),
            dim: n,
            covers: vec![
                (format!("{}-", n - 1), Sign::Minus),
                (format!("{}+", n - 1), Sign::Plus),
            ],
        });
    }
    Ogp::build(format!("O{n}"), specs).unwrap()
}

pub fn globe_molecule(n: usize) -> Molecule {
    let top = if n == 0 { "0".to_string() } else { n.to_string() };
    Molecule::new(globe(n), Cert::Atom(top))
}

/// The chain `Iₙ` of `n` arrows `e1..en` between vertices `v0..vn`.
pub fn interval_chain(n: usize) -> Molecule {
    assert!(n >= 1, "interval_chain needs n >= 1");
    let mut specs: Vec<ElementSpec> = (0..=n)
        .map(|i| ElementSpec::new(format!("v{i}"), 0, &[]))
        .collect();
    for i in 1..=n {
        specs.push(ElementSpec {
            id: format!("e{i}"),
            dim: 1,
            covers: vec![
                (format!("v{}", i - 1), Sign::Minus),
                (format!("v{i}"), Sign::Plus),
            ],
        });
    }
    let mut cert = Cert::Atom("e1".into());
    for i in 2..=n {
        cert = Cert::paste(0, cert, Cert::Atom(format!("e{i}")));
    }
    Molecule::new(Ogp::build(format!("I{n}"), specs).unwrap(), cert)
}

/// The atom `Iₙ ⇒ Iₘ`: input arrows `a1..an` through `v0..vn`, output arrows
/// `b1..bm` through `v0, w1..w(m-1), vn`, top `t`.
pub fn u_nm(n: usize, m: usize) -> Molecule {
    assert!(n >= 1 && m >= 1, "u_nm needs n, m >= 1");
    let mut specs: Vec<ElementSpec> = (0..=n)
        .map(|i| ElementSpec::new(format!("v{i}"), 0, &[]))
        .collect();
    for j in 1..m {
        specs.push(ElementSpec::new(format!("w{j}"), 0, &[]));
    }
    for i in 1..=n {
        specs.push(ElementSpec {
            id: format!("a{i}"),
            dim: 1,
            covers: vec![
                (format!("v{}", i - 1), Sign::Minus),
                (format!("v{i}"), Sign::Plus),
            ],
        });
    }
    let out_vertex = |j: usize| {
        if j == 0 {
            "v0".to_string()
        } else if j == m {
            format!("v{n}")
        } else {
            format!("w{j}")
        }
    };
    for j in 1..=m {
        specs.push(ElementSpec {
            id: format!("b{j}"),
            dim: 1,
            covers: vec![(out_vertex(j - 1), Sign::Minus), (out_vertex(j), Sign::Plus)],
        });
    }
    let mut covers: Vec<(String, Sign)> = (1..=n).map(|i| (format!("a{i}"), Sign::Minus)).collect();
    covers.extend((1..=m).map(|j| (format!("b{j}"), Sign::Plus)));
    specs.push(ElementSpec {
        id: "t".into(),
        dim: 2,
        covers,
    });
    Molecule::new(
        Ogp::build(format!("U{n},{m}"), specs).unwrap(),
        Cert::Atom("t".into()),
    )
}

/// Sign-wise isomorphism of the `n`-boundaries, as a map from elements of
/// `b` to elements of `a`.
fn boundary_iso(
    a: &Ogp,
    ua: &ElemSet,
    b: &Ogp,
    ub: &ElemSet,
    n: i64,
) -> Result<HashMap<usize, usize>, MolError> {
    let mut ident = HashMap::new();
    for s in Sign::BOTH {
        let ba = a.boundary(ua, n, Some(s));
        let bb = b.boundary(ub, n, Some(s));
        let Some(m) = find_iso(b, &bb, a, &ba)? else {
            return Err(MolError::BoundaryMismatch {
                what: format!("the {n}{} boundaries", s.symbol()),
                stratum: mismatch_stratum(b, &bb, a, &ba).unwrap_or(0),
            });
        };
        for (y, x) in m {
            if let Some(&prev) = ident.get(&y) {
                if prev != x {
                    return Err(MolError::InconsistentBoundary);
                }
            }
            ident.insert(y, x);
        }
    }
    Ok(ident)
}

fn right_id(g: &Glued, b: &Ogp) -> impl Fn(&str) -> String {
    let names: HashMap<String, String> = (0..b.len())
        .filter_map(|y| g.right[y].map(|r| (b.id(y).to_string(), g.ogp.id(r).to_string())))
        .collect();
    move |s: &str| names[s].clone()
}

/// Pastes `u1` and `u2` along `∂ₖ⁺u1 ≅ ∂ₖ⁻u2`.
pub fn paste(u1: &Molecule, u2: &Molecule, k: usize) -> Result<Molecule, MolError> {
    let b1 = u1.boundary_set(k as i64, Some(Sign::Plus));
    let b2 = u2.boundary_set(k as i64, Some(Sign::Minus));
    if b1 == u1.full() || b2 == u2.full() {
        return Err(MolError::Degenerate { k });
    }
    let Some(m) = find_iso(&u2.shape, &b2, &u1.shape, &b1)? else {
        return Err(MolError::BoundaryMismatch {
            what: format!("∂{k}+ of the left and ∂{k}- of the right molecule"),
            stratum: mismatch_stratum(&u2.shape, &b2, &u1.shape, &b1).unwrap_or(0),
        });
    };
    let ident: HashMap<usize, usize> = m.into_iter().collect();
    let name = format!("({}∘{k}{})", u1.shape.name(), u2.shape.name());
    let g = glue(&name, &u1.shape, &u1.full(), &u2.shape, &u2.full(), &ident, None);
    let rid = right_id(&g, &u2.shape);
    let cert = Cert::paste(
        k,
        u1.cert.map_ids(&|s| format!("left/{s}")),
        u2.cert.map_ids(&rid),
    );
    Ok(Molecule {
        shape: g.ogp,
        cert,
        origin: g.origin,
    })
}

/// The atom `u ⇒ v`.
pub fn cell_to(u: &Molecule, v: &Molecule) -> Result<Molecule, MolError> {
    let n = u.dim();
    if v.dim() != n || n < 0 {
        return Err(MolError::Dimension(format!(
            "cell_to needs molecules of equal dimension, got {n} and {}",
            v.dim()
        )));
    }
    if !u.is_spherical() {
        return Err(MolError::NotSpherical(u.shape.name().to_string()));
    }
    if !v.is_spherical() {
        return Err(MolError::NotSpherical(v.shape.name().to_string()));
    }
    let ident = boundary_iso(&u.shape, &u.full(), &v.shape, &v.full(), n - 1)?;
    let nd = n as usize;
    let mut covers = Vec::new();
    for x in 0..u.len() {
        if u.shape.dim(x) == nd {
            covers.push((true, x, Sign::Minus));
        }
    }
    for y in 0..v.len() {
        if v.shape.dim(y) == nd {
            covers.push((false, y, Sign::Plus));
        }
    }
    let name = format!("({}⇒{})", u.shape.name(), v.shape.name());
    let g = glue(
        &name,
        &u.shape,
        &u.full(),
        &v.shape,
        &v.full(),
        &ident,
        Some(TopSpec {
            dim: nd + 1,
            covers,
        }),
    );
    Ok(Molecule {
        shape: g.ogp,
        cert: Cert::Atom("top".into()),
        origin: g.origin,
    })
}

/// The atom `⟨u⟩ = ∂⁻u ⇒ ∂⁺u`.
pub fn compos(u: &Molecule) -> Result<Molecule, MolError> {
    let n = u.dim();
    if n <= 0 {
        return Ok(u.clone());
    }
    if !u.is_spherical() {
        return Err(MolError::NotSpherical(u.shape.name().to_string()));
    }
    let mut a = cell_to(&u.boundary(n - 1, Sign::Minus)?, &u.boundary(n - 1, Sign::Plus)?)?;
    a.shape.set_name(format!("⟨{}⟩", u.shape.name()));
    Ok(a)
}

pub fn unique_iso(u: &Molecule, v: &Molecule) -> Result<Option<IsoMap>, IsoError> {
    find_iso(&u.shape, &u.full(), &v.shape, &v.full())
}

fn check_substitution(u: &Molecule, v: &ElemSet, w: &Molecule) -> Result<HashMap<usize, usize>, MolError> {
    let p = &u.shape;
    let n = p.dimension();
    if p.dim_of(v) != n || w.dim() != n {
        return Err(MolError::Dimension(format!(
            "substitution needs {n}-dimensional pieces, got {} and {}",
            p.dim_of(v),
            w.dim()
        )));
    }
    match recognize(p, v) {
        Recognition::Molecule(_) => {}
        Recognition::NotMolecule => return Err(MolError::NotMolecule("the replaced subset".into())),
        Recognition::Unknown => return Err(MolError::Undecided("the replaced subset".into())),
    }
    if !spherical(p, v) {
        return Err(MolError::NotSpherical("the replaced subset".into()));
    }
    if !w.is_spherical() {
        return Err(MolError::NotSpherical(w.shape.name().to_string()));
    }
    boundary_iso(p, v, &w.shape, &w.full(), n - 1)
}

/// Glues `w` in place of `v ⊆ u` without checking that the result is a molecule.
pub fn substitute_unchecked(u: &Molecule, v: &ElemSet, w: &Molecule) -> Result<Glued, MolError> {
    let ident = check_substitution(u, v, w)?;
    let p = &u.shape;
    let n = p.dimension();
    let bv = p.boundary(v, n - 1, None);
    let keep = set_minus(&p.full(), &set_minus(v, &bv));
    let name = format!("{}[{}]", p.name(), w.shape.name());
    Ok(glue(&name, p, &keep, &w.shape, &w.full(), &ident, None))
}

/// `u[w/v]`, verified to be a molecule.
pub fn substitute(u: &Molecule, v: &ElemSet, w: &Molecule) -> Result<Molecule, MolError> {
    let g = substitute_unchecked(u, v, w)?;
    match recognize(&g.ogp, &g.ogp.full()) {
        Recognition::Molecule(cert) => Ok(Molecule {
            shape: g.ogp,
            cert,
            origin: g.origin,
        }),
        Recognition::NotMolecule => Err(MolError::Verification(format!(
            "{} is not a molecule",
            g.ogp.name()
        ))),
        Recognition::Unknown => Err(MolError::Verification(format!(
            "could not recognize {}",
            g.ogp.name()
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recognition {
    Molecule(Cert),
    NotMolecule,
    Unknown,
}

impl Recognition {
    pub fn cert(self) -> Option<Cert> {
        match self {
            Recognition::Molecule(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_molecule(&self) -> bool {
        matches!(self, Recognition::Molecule(_))
    }
}

struct Recognizer<'a> {
    p: &'a Ogp,
    memo: HashMap<ElemSet, Option<Cert>>,
}

impl Recognizer<'_> {
    fn rec(&mut self, u: &ElemSet) -> Option<Cert> {
        if let Some(c) = self.memo.get(u) {
            return c.clone();
        }
        let c = self.compute(u);
        self.memo.insert(u.clone(), c.clone());
        c
    }

    fn compute(&mut self, u: &ElemSet) -> Option<Cert> {
        let p = self.p;
        if u.count_ones(..) == 0 {
            return None;
        }
        let maxes = p.maximal(u);
        if maxes.len() == 1 {
            return Some(Cert::Atom(p.id(maxes[0]).to_string()));
        }
        let frd = frame_dimension_of(p, &maxes);
        if frd < 0 {
            return None;
        }
        let d = p.dim_of(u);
        for k in frd..d {
            let Some(order) = maxd(p, u, k).high_order() else {
                continue;
            };
            if order.len() < 2 {
                continue;
            }
            let plus = p.boundary(u, k, Some(Sign::Plus));
            for i in 1..order.len() {
                let u2 = set_union(&p.closure_of(order[i..].iter().copied()), &plus);
                let m2 = p.boundary(&u2, k, Some(Sign::Minus));
                let u1 = p.closure(&set_minus(u, &set_minus(&u2, &m2)));
                if set_union(&u1, &u2) != *u || !split_holds(p, &u1, &u2, k as usize) {
                    continue;
                }
                if let Some(c1) = self.rec(&u1) {
                    if let Some(c2) = self.rec(&u2) {
                        return Some(Cert::paste(k as usize, c1, c2));
                    }
                }
            }
        }
        None
    }
}

/// Decides whether the closed subset `u` of `p` is a molecule, returning a
/// certificate. Complete up to dimension 3; in higher dimensions a failed
/// search yields [`Recognition::Unknown`].
pub fn recognize(p: &Ogp, u: &ElemSet) -> Recognition {
    if !p.is_closed(u) {
        return Recognition::NotMolecule;
    }
    let mut r = Recognizer {
        p,
        memo: HashMap::new(),
    };
    match r.rec(u) {
        Some(c) => Recognition::Molecule(c),
        None if p.dim_of(u) >= 4 => Recognition::Unknown,
        None => Recognition::NotMolecule,
    }
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub molecules: Vec<(ElemSet, Cert)>,
    pub truncated: bool,
}

/// All molecules of `p`, generated from atom closures by pasting inside `p`,
/// up to `max_count` of them.
pub fn enumerate_molecules(p: &Ogp, max_count: usize) -> Enumeration {
    let mut found: Vec<(ElemSet, Cert)> = Vec::new();
    let mut index: HashMap<ElemSet, usize> = HashMap::new();
    for x in 0..p.len() {
        if found.len() >= max_count {
            return Enumeration {
                molecules: found,
                truncated: true,
            };
        }
        let s = p.down(x).clone();
        index.insert(s.clone(), found.len());
        found.push((s, Cert::Atom(p.id(x).to_string())));
    }
    let mut by_minus: HashMap<(i64, ElemSet), Vec<usize>> = HashMap::new();
    let mut by_plus: HashMap<(i64, ElemSet), Vec<usize>> = HashMap::new();
    let mut i = 0;
    while i < found.len() {
        let m = found[i].0.clone();
        let dm = p.dim_of(&m);
        for k in 0..dm {
            let pl = p.boundary(&m, k, Some(Sign::Plus));
            let mi = p.boundary(&m, k, Some(Sign::Minus));
            by_plus.entry((k, pl.clone())).or_default().push(i);
            by_minus.entry((k, mi.clone())).or_default().push(i);
            let mut pairs = Vec::new();
            for &j in by_minus.get(&(k, pl.clone())).into_iter().flatten() {
                pairs.push((i, j));
            }
            for &j in by_plus.get(&(k, mi)).into_iter().flatten() {
                pairs.push((j, i));
            }
            for (a, b) in pairs {
                let (sa, sb) = (&found[a].0, &found[b].0);
                if !split_holds(p, sa, sb, k as usize) {
                    continue;
                }
                let u = set_union(sa, sb);
                if index.contains_key(&u) {
                    continue;
                }
                if found.len() >= max_count {
                    return Enumeration {
                        molecules: found,
                        truncated: true,
                    };
                }
                let c = Cert::paste(k as usize, found[a].1.clone(), found[b].1.clone());
                index.insert(u.clone(), found.len());
                found.push((u, c));
            }
        }
        i += 1;
    }
    Enumeration {
        molecules: found,
        truncated: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn globe_counts() {
        assert_eq!(globe(0).len(), 1);
        assert_eq!(globe(2).len(), 5);
        assert_eq!(globe(3).len(), 7);
    }

    #[test]
    fn chain_and_paste() {
        let o1 = globe_molecule(1);
        let i2 = paste(&o1, &o1, 0).unwrap();
        assert_eq!(i2.len(), 5);
        assert!(unique_iso(&i2, &interval_chain(2)).unwrap().is_some());
        assert!(i2.cert.verify(&i2.shape));
        let u21 = u_nm(2, 1);
        let two = paste(&u21, &u21, 0).unwrap();
        assert_eq!(two.len(), 13);
        assert!(paste(&u21, &u_nm(1, 2), 1).is_ok());
        assert!(matches!(paste(&o1, &o1, 1), Err(MolError::Degenerate { .. })));
        assert!(matches!(
            paste(&u21, &u21, 1),
            Err(MolError::BoundaryMismatch { .. })
        ));
    }

    #[test]
    fn cell_to_counts() {
        let u = cell_to(&interval_chain(2), &interval_chain(1)).unwrap();
        assert_eq!(u.len(), 7);
        assert!(unique_iso(&u, &u_nm(2, 1)).unwrap().is_some());
        let o2 = cell_to(&interval_chain(1), &interval_chain(1)).unwrap();
        assert!(unique_iso(&o2, &globe_molecule(2)).unwrap().is_some());
        let u32 = cell_to(&interval_chain(3), &interval_chain(2)).unwrap();
        assert_eq!(u32.len(), 11);
        assert!(unique_iso(&u32, &u_nm(3, 2)).unwrap().is_some());
    }

    #[test]
    fn compos_examples() {
        let o2 = globe_molecule(2);
        assert!(unique_iso(&compos(&o2).unwrap(), &o2).unwrap().is_some());
        let v = paste(&u_nm(2, 1), &u_nm(1, 2), 1).unwrap();
        assert!(unique_iso(&compos(&v).unwrap(), &u_nm(2, 2)).unwrap().is_some());
        let c = compos(&interval_chain(2)).unwrap();
        assert!(unique_iso(&c, &globe_molecule(1)).unwrap().is_some());
    }

    #[test]
    fn recognition() {
        let i2 = interval_chain(2);
        let r = recognize(&i2.shape, &i2.full()).cert().unwrap();
        assert!(matches!(r, Cert::Paste { k: 0, .. }));
        let o1 = globe(1);
        let two = Ogp::build(
            "two",
            o1.to_specs()
                .into_iter()
                .chain(o1.rename("b", |s| format!("b{s}")).to_specs())
                .collect(),
        )
        .unwrap();
        assert_eq!(recognize(&two, &two.full()), Recognition::NotMolecule);
    }

    #[test]
    fn substitution_examples() {
        let u = paste(&u_nm(2, 1), &u_nm(1, 2), 1).unwrap();
        let c = compos(&u).unwrap();
        let s = substitute(&u, &u.full(), &c).unwrap();
        assert!(unique_iso(&s, &u_nm(2, 2)).unwrap().is_some());
        let u21 = u_nm(2, 1);
        let input = u21.boundary_set(1, Some(Sign::Minus));
        let w = u21.boundary(1, Sign::Minus).unwrap();
        let atom = u_nm(2, 1);
        let same = substitute(&atom, &atom.full(), &compos(&atom).unwrap()).unwrap();
        assert!(unique_iso(&same, &atom).unwrap().is_some());
        // a 1-dimensional piece cannot replace inside a 2-molecule
        assert!(substitute(&u21, &input, &w).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_molecules(&globe(1), 100).molecules.len(), 3);
        assert_eq!(enumerate_molecules(&interval_chain(2).shape, 100).molecules.len(), 6);
        assert_eq!(enumerate_molecules(&globe(2), 100).molecules.len(), 5);
        let e = enumerate_molecules(&interval_chain(5).shape, 4);
        assert!(e.truncated);
    }
}
