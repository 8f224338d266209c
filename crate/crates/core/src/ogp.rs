use std::collections::HashMap;
use std::fmt;
use std::ops::Neg;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::graph::DiGraph;

/// Subsets of an [`Ogp`] are bitsets indexed by element position.
pub type ElemSet = FixedBitSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Minus, Sign::Plus];

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Minus => "-",
            Sign::Plus => "+",
        }
    }

    pub fn parse(s: &str) -> Option<Sign> {
        match s {
            "-" | "−" => Some(Sign::Minus),
            "+" => Some(Sign::Plus),
            _ => None,
        }
    }

    /// `(-1)^n` applied to `self`.
    pub fn twist(self, n: usize) -> Sign {
        if n % 2 == 0 {
            self
        } else {
            -self
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Element description used to build an [`Ogp`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementSpec {
    pub id: String,
    pub dim: usize,
    pub covers: Vec<(String, Sign)>,
}

impl ElementSpec {
    pub fn new(id: impl Into<String>, dim: usize, covers: &[(&str, Sign)]) -> Self {
        ElementSpec {
            id: id.into(),
            dim,
            covers: covers.iter().map(|(c, s)| (c.to_string(), *s)).collect(),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("elements[{index}]: duplicate id {id:?}")]
    DuplicateId { index: usize, id: String },
    #[error("elements[{index}] (id {id:?}): cover {cover} refers to unknown id {target:?}")]
    Dangling {
        index: usize,
        id: String,
        cover: usize,
        target: String,
    },
    #[error("elements[{index}] (id {id:?}): grading violated, dim {dim} element covers {target:?} of dim {target_dim}")]
    Grading {
        index: usize,
        id: String,
        dim: usize,
        target: String,
        target_dim: usize,
    },
    #[error("elements[{index}] (id {id:?}): grading violated, a {dim}-element must cover {below}-elements")]
    NoFaces {
        index: usize,
        id: String,
        dim: usize,
        below: usize,
    },
    #[error("elements[{index}] (id {id:?}): {target:?} is covered more than once")]
    DuplicateCover {
        index: usize,
        id: String,
        target: String,
    },
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("unknown element id {0:?}")]
pub struct UnknownId(pub String);

/// Finite oriented graded poset, stored through its signed covering relation.
///
/// Elements are kept sorted by id, so element indices follow the
/// lexicographic order of ids.
#[derive(Clone, Debug)]
pub struct Ogp {
    name: String,
    comment: Option<String>,
    ids: Vec<String>,
    index: HashMap<String, usize>,
    dims: Vec<usize>,
    faces: Vec<Vec<(usize, Sign)>>,
    cofaces: Vec<Vec<(usize, Sign)>>,
    down: Vec<ElemSet>,
}

impl PartialEq for Ogp {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.same_structure(other)
    }
}

impl Eq for Ogp {}

impl Ogp {
    pub fn build(name: impl Into<String>, specs: Vec<ElementSpec>) -> Result<Ogp, StructureError> {
        let mut index = HashMap::new();
        for (i, s) in specs.iter().enumerate() {
            if index.insert(s.id.clone(), i).is_some() {
                return Err(StructureError::DuplicateId {
                    index: i,
                    id: s.id.clone(),
                });
            }
        }
        for (i, s) in specs.iter().enumerate() {
            let mut seen = std::collections::HashSet::new();
            for (c, (t, _)) in s.covers.iter().enumerate() {
                let Some(&j) = index.get(t) else {
                    return Err(StructureError::Dangling {
                        index: i,
                        id: s.id.clone(),
                        cover: c,
                        target: t.clone(),
                    });
                };
                if specs[j].dim + 1 != s.dim {
                    return Err(StructureError::Grading {
                        index: i,
                        id: s.id.clone(),
                        dim: s.dim,
                        target: t.clone(),
                        target_dim: specs[j].dim,
                    });
                }
                if !seen.insert(t.as_str()) {
                    return Err(StructureError::DuplicateCover {
                        index: i,
                        id: s.id.clone(),
                        target: t.clone(),
                    });
                }
            }
            if s.dim > 0 && s.covers.is_empty() {
                return Err(StructureError::NoFaces {
                    index: i,
                    id: s.id.clone(),
                    dim: s.dim,
                    below: s.dim - 1,
                });
            }
        }

        let mut order: Vec<usize> = (0..specs.len()).collect();
        order.sort_by(|&a, &b| specs[a].id.cmp(&specs[b].id));
        let ids: Vec<String> = order.iter().map(|&i| specs[i].id.clone()).collect();
        let index: HashMap<String, usize> =
            ids.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let dims: Vec<usize> = order.iter().map(|&i| specs[i].dim).collect();
        let n = ids.len();
        let mut faces = vec![Vec::new(); n];
        let mut cofaces = vec![Vec::new(); n];
        for (new, &old) in order.iter().enumerate() {
            let mut fs: Vec<(usize, Sign)> = specs[old]
                .covers
                .iter()
                .map(|(t, s)| (index[t], *s))
                .collect();
            fs.sort();
            for &(f, s) in &fs {
                cofaces[f].push((new, s));
            }
            faces[new] = fs;
        }
        for c in cofaces.iter_mut() {
            c.sort();
        }
        let mut by_dim: Vec<usize> = (0..n).collect();
        by_dim.sort_by_key(|&i| dims[i]);
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for &x in &by_dim {
            let mut d = FixedBitSet::with_capacity(n);
            d.insert(x);
            for &(f, _) in &faces[x] {
                d.union_with(&down[f]);
            }
            down[x] = d;
        }
        Ok(Ogp {
            name: name.into(),
            comment: None,
            ids,
            index,
            dims,
            faces,
            cofaces,
            down,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn comment(&self) -> Option<&str> {
        self.comment.as_deref()
    }

    pub fn set_comment(&mut self, comment: Option<String>) {
        self.comment = comment;
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, x: usize) -> &str {
        &self.ids[x]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn elem(&self, id: &str) -> Result<usize, UnknownId> {
        self.index_of(id).ok_or_else(|| UnknownId(id.to_string()))
    }

    pub fn dim(&self, x: usize) -> usize {
        self.dims[x]
    }

    pub fn faces(&self, x: usize) -> &[(usize, Sign)] {
        &self.faces[x]
    }

    pub fn cofaces(&self, x: usize) -> &[(usize, Sign)] {
        &self.cofaces[x]
    }

    /// Sign of the cover `y -> x`, if `y` covers `x`.
    pub fn orientation(&self, y: usize, x: usize) -> Option<Sign> {
        self.faces[y].iter().find(|(f, _)| *f == x).map(|(_, s)| *s)
    }

    /// Closure of a single element.
    pub fn down(&self, x: usize) -> &ElemSet {
        &self.down[x]
    }

    pub fn empty_set(&self) -> ElemSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn full(&self) -> ElemSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    pub fn set_of(&self, xs: impl IntoIterator<Item = usize>) -> ElemSet {
        let mut s = self.empty_set();
        for x in xs {
            s.insert(x);
        }
        s
    }

    pub fn set_from_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<ElemSet, UnknownId> {
        let mut s = self.empty_set();
        for id in ids {
            s.insert(self.elem(id.as_ref())?);
        }
        Ok(s)
    }

    pub fn ids_of(&self, s: &ElemSet) -> Vec<String> {
        s.ones().map(|x| self.ids[x].clone()).collect()
    }

    /// Dimension of a subset, `-1` when empty.
    pub fn dim_of(&self, s: &ElemSet) -> i64 {
        s.ones().map(|x| self.dims[x] as i64).max().unwrap_or(-1)
    }

    pub fn dimension(&self) -> i64 {
        self.dims.iter().map(|&d| d as i64).max().unwrap_or(-1)
    }

    pub fn closure(&self, s: &ElemSet) -> ElemSet {
        let mut c = self.empty_set();
        for x in s.ones() {
            c.union_with(&self.down[x]);
        }
        c
    }

    pub fn closure_of(&self, xs: impl IntoIterator<Item = usize>) -> ElemSet {
        let mut c = self.empty_set();
        for x in xs {
            c.union_with(&self.down[x]);
        }
        c
    }

    pub fn is_closed(&self, s: &ElemSet) -> bool {
        s.ones()
            .all(|x| self.faces[x].iter().all(|&(f, _)| s.contains(f)))
    }

    /// Elements of `u` not covered by any element of `u`.
    pub fn maximal(&self, u: &ElemSet) -> Vec<usize> {
        u.ones()
            .filter(|&x| self.cofaces[x].iter().all(|&(c, _)| !u.contains(c)))
            .collect()
    }

    /// The unique greatest element of `u`, if any.
    pub fn greatest(&self, u: &ElemSet) -> Option<usize> {
        let m = self.maximal(u);
        if m.len() == 1 && self.down[m[0]] == *u {
            Some(m[0])
        } else {
            None
        }
    }

    /// `n`-dimensional elements of `u` all of whose covering elements in `u`
    /// carry the sign `a`.
    pub fn source_set(&self, u: &ElemSet, n: i64, a: Sign) -> ElemSet {
        let mut s = self.empty_set();
        if n < 0 {
            return s;
        }
        for x in u.ones() {
            if self.dims[x] as i64 == n
                && self.cofaces[x]
                    .iter()
                    .all(|&(c, sg)| !u.contains(c) || sg == a)
            {
                s.insert(x);
            }
        }
        s
    }

    /// The `n`-boundary of `u` with sign `a`, or the union over both signs.
    pub fn boundary(&self, u: &ElemSet, n: i64, a: Option<Sign>) -> ElemSet {
        if n < 0 {
            return self.empty_set();
        }
        let mut high = self.empty_set();
        for x in u.ones() {
            if self.dims[x] as i64 > n {
                high.insert(x);
            }
        }
        let mut res = u.clone();
        res.difference_with(&self.closure(&high));
        let signs: &[Sign] = match a {
            Some(Sign::Minus) => &[Sign::Minus],
            Some(Sign::Plus) => &[Sign::Plus],
            None => &Sign::BOTH,
        };
        for &s in signs {
            res.union_with(&self.closure(&self.source_set(u, n, s)));
        }
        res
    }

    /// Boundary of the closure of a single element.
    pub fn elem_boundary(&self, x: usize, n: i64, a: Option<Sign>) -> ElemSet {
        self.boundary(&self.down[x], n, a)
    }

    /// Oriented Hasse graph of `u`: `y -> x` for a `+` cover, `x -> y` for a `-` cover.
    pub fn oriented_hasse(&self, u: &ElemSet) -> DiGraph {
        let verts: Vec<usize> = u.ones().collect();
        let mut g = DiGraph::new(verts);
        for y in u.ones() {
            for &(x, s) in &self.faces[y] {
                if !u.contains(x) {
                    continue;
                }
                match s {
                    Sign::Plus => g.add_edge(y, x),
                    Sign::Minus => g.add_edge(x, y),
                }
            }
        }
        g
    }

    /// Flips the orientation of every cover `y -> x` with `dim y` in `dims`,
    /// or of every cover when `dims` is `None`.
    pub fn dual(&self, dims: Option<&[usize]>) -> Ogp {
        let flip = |d: usize| dims.map_or(true, |ds| ds.contains(&d));
        let specs = (0..self.len())
            .map(|y| ElementSpec {
                id: self.ids[y].clone(),
                dim: self.dims[y],
                covers: self.faces[y]
                    .iter()
                    .map(|&(x, s)| {
                        (
                            self.ids[x].clone(),
                            if flip(self.dims[y]) { -s } else { s },
                        )
                    })
                    .collect(),
            })
            .collect();
        let mut o = Ogp::build(format!("{}°", self.name), specs).expect("dual preserves structure");
        o.comment = self.comment.clone();
        o
    }

    /// Standalone copy of a closed subset, keeping ids.
    pub fn restrict(&self, u: &ElemSet, name: impl Into<String>) -> Ogp {
        let specs = u
            .ones()
            .map(|y| ElementSpec {
                id: self.ids[y].clone(),
                dim: self.dims[y],
                covers: self.faces[y]
                    .iter()
                    .filter(|(x, _)| u.contains(*x))
                    .map(|&(x, s)| (self.ids[x].clone(), s))
                    .collect(),
            })
            .collect();
        Ogp::build(name, specs).expect("restriction of a closed subset")
    }

    /// Same structure with ids rewritten by `f`, which must be injective.
    pub fn rename(&self, name: impl Into<String>, f: impl Fn(&str) -> String) -> Ogp {
        let specs = self
            .to_specs()
            .into_iter()
            .map(|s| ElementSpec {
                id: f(&s.id),
                dim: s.dim,
                covers: s.covers.into_iter().map(|(c, sg)| (f(&c), sg)).collect(),
            })
            .collect();
        Ogp::build(name, specs).expect("renaming must be injective")
    }

    pub fn to_specs(&self) -> Vec<ElementSpec> {
        (0..self.len())
            .map(|y| ElementSpec {
                id: self.ids[y].clone(),
                dim: self.dims[y],
                covers: self.faces[y]
                    .iter()
                    .map(|&(x, s)| (self.ids[x].clone(), s))
                    .collect(),
            })
            .collect()
    }

    /// Equality of ids, dimensions and signed covers, ignoring the name.
    pub fn same_structure(&self, other: &Ogp) -> bool {
        self.ids == other.ids && self.dims == other.dims && self.faces == other.faces
    }

    pub fn count_by_dim(&self) -> Vec<usize> {
        let d = self.dimension();
        let mut c = vec![0; (d + 1).max(0) as usize];
        for &x in &self.dims {
            c[x] += 1;
        }
        c
    }
}

pub fn set_union(a: &ElemSet, b: &ElemSet) -> ElemSet {
    let mut r = a.clone();
    r.union_with(b);
    r
}

pub fn set_inter(a: &ElemSet, b: &ElemSet) -> ElemSet {
    let mut r = a.clone();
    r.intersect_with(b);
    r
}

pub fn set_minus(a: &ElemSet, b: &ElemSet) -> ElemSet {
    let mut r = a.clone();
    r.difference_with(b);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molecule::globe;

    #[test]
    fn globe_boundaries() {
        let o2 = globe(2);
        let full = o2.full();
        let dm = o2.source_set(&full, 1, Sign::Minus);
        assert_eq!(o2.ids_of(&dm), vec!["1-"]);
        let b = o2.boundary(&full, 1, Some(Sign::Plus));
        assert_eq!(o2.ids_of(&b), vec!["0+", "0-", "1+"]);
        assert_eq!(o2.boundary(&full, 2, Some(Sign::Minus)), full);
        assert_eq!(o2.boundary(&full, -1, None).count_ones(..), 0);
    }

    #[test]
    fn closure_examples() {
        let o2 = globe(2);
        let top = o2.set_from_ids(&["2"]).unwrap();
        assert_eq!(o2.closure(&top).count_ones(..), 5);
        assert_eq!(o2.closure(&o2.empty_set()).count_ones(..), 0);
        let e = o2.set_from_ids(&["1+"]).unwrap();
        assert_eq!(o2.ids_of(&o2.closure(&e)), vec!["0+", "0-", "1+"]);
    }

    #[test]
    fn structural_errors() {
        let bad = Ogp::build("x", vec![ElementSpec::new("a", 1, &[])]);
        assert!(matches!(bad, Err(StructureError::NoFaces { .. })));
        let dangling = Ogp::build("x", vec![ElementSpec::new("a", 1, &[("p", Sign::Minus)])]);
        assert!(matches!(dangling, Err(StructureError::Dangling { .. })));
        let multi = Ogp::build(
            "x",
            vec![
                ElementSpec::new("p", 0, &[]),
                ElementSpec::new("a", 1, &[("p", Sign::Minus), ("p", Sign::Plus)]),
            ],
        );
        assert!(matches!(multi, Err(StructureError::DuplicateCover { .. })));
    }

    #[test]
    fn hasse_of_o1() {
        let o1 = globe(1);
        let g = o1.oriented_hasse(&o1.full());
        let mut e: Vec<(String, String)> = g
            .edges()
            .map(|(a, b)| (o1.id(a).to_string(), o1.id(b).to_string()))
            .collect();
        e.sort();
        assert_eq!(
            e,
            vec![("0-".into(), "1".into()), ("1".into(), "0+".into())]
        );
    }

    #[test]
    fn dual_flips() {
        let o1 = globe(1);
        let d = o1.dual(None);
        let full = d.full();
        assert_eq!(d.ids_of(&d.source_set(&full, 0, Sign::Minus)), vec!["0+"]);
        assert!(d.dual(None).same_structure(&o1));
    }
}
