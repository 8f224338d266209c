use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::glue::{Origin, OriginMap};
use crate::graph::DiGraph;
use crate::molecule::{
    compos, enumerate_molecules, recognize, spherical, split_holds, substitute, Cert, MolError,
    Molecule, Recognition,
};
use crate::ogp::{set_inter, set_minus, set_union, ElemSet, Ogp, Sign};

/// The bipartite graph `Maxdₙ(u)`.
#[derive(Clone, Debug)]
pub struct MaxdGraph {
    pub n: i64,
    pub low: Vec<usize>,
    pub high: Vec<usize>,
    pub graph: DiGraph,
}

impl MaxdGraph {
    pub fn is_high(&self, x: usize) -> bool {
        self.high.binary_search(&x).is_ok()
    }

    /// Reachability restricted to high vertices.
    pub fn high_graph(&self) -> DiGraph {
        let reach = self.graph.reachability();
        let mut h = DiGraph::new(self.high.clone());
        for &x in &self.high {
            let i = self.graph.position(x).unwrap();
            for &y in &self.high {
                if x != y && reach[i].contains(self.graph.position(y).unwrap()) {
                    h.add_edge(x, y);
                }
            }
        }
        h
    }

    /// High vertices in topological order with least-index tie-breaking, or
    /// `None` if the graph has a cycle.
    pub fn high_order(&self) -> Option<Vec<usize>> {
        if !self.graph.is_acyclic() {
            return None;
        }
        self.high_graph().topo_sort()
    }

    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        self.graph.find_cycle()
    }

    pub fn path_exists(&self, from: usize, to: usize) -> bool {
        self.graph.shortest_path(from, |v| v == to).is_some()
    }
}

pub fn maxd(p: &Ogp, u: &ElemSet, n: i64) -> MaxdGraph {
    let low: Vec<usize> = u.ones().filter(|&x| p.dim(x) as i64 <= n).collect();
    let high: Vec<usize> = p
        .maximal(u)
        .into_iter()
        .filter(|&x| p.dim(x) as i64 > n)
        .collect();
    let mut graph = DiGraph::new(low.iter().chain(high.iter()).copied().collect());
    for &x in &high {
        let inner = p.elem_boundary(x, n - 1, None);
        let ins = set_minus(&p.elem_boundary(x, n, Some(Sign::Minus)), &inner);
        let outs = set_minus(&p.elem_boundary(x, n, Some(Sign::Plus)), &inner);
        for y in ins.ones() {
            graph.add_edge(y, x);
        }
        for y in outs.ones() {
            graph.add_edge(x, y);
        }
    }
    MaxdGraph { n, low, high, graph }
}

/// Frame dimension from a list of maximal elements.
pub fn frame_dimension_of(p: &Ogp, maxes: &[usize]) -> i64 {
    let mut best = -1;
    for (i, &x) in maxes.iter().enumerate() {
        for &y in &maxes[i + 1..] {
            best = best.max(p.dim_of(&set_inter(p.down(x), p.down(y))));
        }
    }
    best
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OrderError {
    #[error("empty subset")]
    Empty,
    #[error("expected dimension {expected}, found {found}")]
    Dimension { expected: i64, found: i64 },
    #[error("{0} is not a valid order")]
    BadOrder(String),
    #[error("split verification failed at factor {index}")]
    Split { index: usize },
    #[error("the oriented Hasse graph has a cycle")]
    NotLoopFree,
    #[error("{0}")]
    Spanning(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("molecule enumeration exceeded the budget of {0}")]
    Budget(usize),
    #[error(transparent)]
    Mol(#[from] MolError),
}

pub fn frame_dimension(p: &Ogp, u: &ElemSet) -> Result<i64, OrderError> {
    if u.count_ones(..) == 0 {
        return Err(OrderError::Empty);
    }
    Ok(frame_dimension_of(p, &p.maximal(u)))
}

#[derive(Clone, Debug)]
pub struct FrameReport {
    pub acyclic: bool,
    pub checked: usize,
    pub truncated: bool,
    /// A molecule whose Maxd graph at its frame dimension has a cycle.
    pub witness: Option<(ElemSet, Vec<usize>)>,
}

/// Checks acyclicity of `Maxd_k(u)` at `k = frdim(u)` for the given
/// molecules, or for every enumerated molecule of `p`.
pub fn frame_acyclic(
    p: &Ogp,
    molecules: Option<&[ElemSet]>,
    budget: usize,
) -> Result<FrameReport, OrderError> {
    let (list, truncated): (Vec<ElemSet>, bool) = match molecules {
        Some(m) => (m.to_vec(), false),
        None => {
            let e = enumerate_molecules(p, budget);
            (e.molecules.into_iter().map(|(s, _)| s).collect(), e.truncated)
        }
    };
    if truncated {
        return Err(OrderError::Budget(budget));
    }
    for u in &list {
        let k = frame_dimension(p, u)?;
        if k < 0 {
            continue;
        }
        let g = maxd(p, u, k);
        if let Some(c) = g.find_cycle() {
            return Ok(FrameReport {
                acyclic: false,
                checked: list.len(),
                truncated,
                witness: Some((u.clone(), c)),
            });
        }
    }
    Ok(FrameReport {
        acyclic: true,
        checked: list.len(),
        truncated,
        witness: None,
    })
}

/// A `k`-order on `u`: maximal elements of dimension above `k` sorted
/// topologically in `Maxd_k(u)`.
pub fn k_order(p: &Ogp, u: &ElemSet, k: i64) -> Option<Vec<usize>> {
    maxd(p, u, k).high_order()
}

/// Checks that `order` lists exactly the high vertices of `Maxd_k(u)` in an
/// order compatible with its paths.
pub fn is_k_order(p: &Ogp, u: &ElemSet, k: i64, order: &[usize]) -> bool {
    let g = maxd(p, u, k);
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != g.high {
        return false;
    }
    let h = g.high_graph();
    order
        .iter()
        .enumerate()
        .all(|(i, &x)| order[..i].iter().all(|&y| !h.has_edge(x, y)))
}

/// Factors `V₁, …, V_m` with `u = V₁ ∘ₖ … ∘ₖ V_m`, each `V_i` containing the
/// `i`-th element of `order`; each factor comes with a certificate.
pub fn frame_decomposition(
    p: &Ogp,
    u: &ElemSet,
    k: i64,
    order: &[usize],
) -> Result<Vec<(ElemSet, Cert)>, OrderError> {
    if !is_k_order(p, u, k, order) {
        return Err(OrderError::BadOrder(format!("the {k}-order")));
    }
    let mut rest = u.clone();
    let mut parts = Vec::new();
    for i in 0..order.len().saturating_sub(1) {
        let plus = p.boundary(&rest, k, Some(Sign::Plus));
        let u2 = set_union(&p.closure_of(order[i + 1..].iter().copied()), &plus);
        let m2 = p.boundary(&u2, k, Some(Sign::Minus));
        let v = p.closure(&set_minus(&rest, &set_minus(&u2, &m2)));
        if set_union(&v, &u2) != rest || !split_holds(p, &v, &u2, k.max(0) as usize) {
            return Err(OrderError::Split { index: i + 1 });
        }
        parts.push(v);
        rest = u2;
    }
    parts.push(rest);
    let mut out = Vec::new();
    for (i, v) in parts.into_iter().enumerate() {
        let hits = order.iter().filter(|&&x| v.contains(x)).count();
        if hits != 1 || !v.contains(order[i]) {
            return Err(OrderError::Split { index: i + 1 });
        }
        match recognize(p, &v) {
            Recognition::Molecule(c) => out.push((v, c)),
            _ => return Err(OrderError::Split { index: i + 1 }),
        }
    }
    Ok(out)
}

/// The preorder `⪯` given by reachability in the oriented Hasse graph.
#[derive(Clone, Debug)]
pub struct LoopFree {
    graph: DiGraph,
    reach: Vec<FixedBitSet>,
    /// All elements in `⪯`-increasing order when `⪯` is total.
    pub total: Option<Vec<usize>>,
}

impl LoopFree {
    pub fn precedes(&self, x: usize, y: usize) -> bool {
        let (i, j) = (self.graph.position(x).unwrap(), self.graph.position(y).unwrap());
        self.reach[i].contains(j)
    }

    pub fn is_total(&self) -> bool {
        self.total.is_some()
    }
}

/// Returns `Ok` with the order `⪯` if the oriented Hasse graph of `u` is
/// acyclic, otherwise a cycle.
pub fn totally_loop_free(p: &Ogp, u: &ElemSet) -> Result<LoopFree, Vec<usize>> {
    let graph = p.oriented_hasse(u);
    let Some(topo) = graph.topo_sort() else {
        return Err(graph.find_cycle().unwrap_or_default());
    };
    let reach = graph.reachability();
    let pos = |x: usize| graph.position(x).unwrap();
    let total = topo
        .windows(2)
        .all(|w| reach[pos(w[0])].contains(pos(w[1])))
        .then(|| topo.clone());
    Ok(LoopFree {
        graph,
        reach,
        total,
    })
}

/// 2-dimensional elements of `u` sorted by `⪯`.
pub fn normal_1_order(p: &Ogp, u: &ElemSet) -> Result<Vec<usize>, OrderError> {
    let d = p.dim_of(u);
    if d != 2 {
        return Err(OrderError::Dimension {
            expected: 2,
            found: d,
        });
    }
    let lf = totally_loop_free(p, u).map_err(|_| OrderError::NotLoopFree)?;
    let mut cells: Vec<usize> = u.ones().filter(|&x| p.dim(x) == 2).collect();
    cells.sort_by(|&a, &b| {
        if a == b {
            std::cmp::Ordering::Equal
        } else if lf.precedes(a, b) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    for w in cells.windows(2) {
        if !lf.precedes(w[0], w[1]) {
            return Err(OrderError::NotLoopFree);
        }
    }
    Ok(cells)
}

/// `(U₊, U₋)` with `u = U₊ ∘₁ U₋` and `∂₁⁺U₊ = ∂₁⁻U₋ = i`.
pub fn slice_decomposition(
    p: &Ogp,
    u: &ElemSet,
    i: &ElemSet,
) -> Result<(ElemSet, ElemSet), OrderError> {
    let d = p.dim_of(u);
    if d > 2 {
        return Err(OrderError::Dimension {
            expected: 2,
            found: d,
        });
    }
    if p.dim_of(i) != 1 || set_minus(i, u).count_ones(..) > 0 {
        return Err(OrderError::Spanning("the cut must be a 1-dimensional subset".into()));
    }
    for s in Sign::BOTH {
        if p.boundary(i, 0, Some(s)) != p.boundary(u, 0, Some(s)) {
            return Err(OrderError::Spanning(format!(
                "the cut does not share the {}-endpoint of the molecule",
                s.symbol()
            )));
        }
    }
    if d <= 1 {
        if *i != *u {
            return Err(OrderError::Spanning("a 1-molecule is its own only cut".into()));
        }
        return Ok((u.clone(), u.clone()));
    }
    // 2-cells below the cut are those from which a wire of the cut can be
    // reached through 1- and 2-dimensional incidences
    let cells: Vec<usize> = u.ones().filter(|&x| p.dim(x) == 2).collect();
    let mut below = p.empty_set();
    let mut stack: Vec<usize> = i.ones().filter(|&x| p.dim(x) == 1).collect();
    let mut seen = p.empty_set();
    while let Some(w) = stack.pop() {
        if seen.contains(w) {
            continue;
        }
        seen.insert(w);
        for &(c, s) in p.cofaces(w) {
            if s == Sign::Plus && u.contains(c) && !below.contains(c) {
                below.insert(c);
                for &(f, fs) in p.faces(c) {
                    if fs == Sign::Minus {
                        stack.push(f);
                    }
                }
            }
        }
    }
    let above: Vec<usize> = cells.into_iter().filter(|&c| !below.contains(c)).collect();
    let up = set_union(&p.closure(&below), i);
    let dn = set_union(&p.closure_of(above), i);
    let check = set_union(&up, &dn) == *u
        && set_inter(&up, &dn) == *i
        && p.boundary(&up, 1, Some(Sign::Plus)) == *i
        && p.boundary(&dn, 1, Some(Sign::Minus)) == *i;
    if !check {
        return Err(OrderError::Spanning("the cut does not split the molecule".into()));
    }
    Ok((up, dn))
}

/// Outcome of substituting one side and testing that the other survives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstSide {
    pub substituted: bool,
    pub survives: bool,
    /// Path in `Maxd_{n-1}` between elements of the surviving side through
    /// an element outside it, with display ids.
    pub obstruction: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimSubstReport {
    pub holds: bool,
    /// Substitute `⟨v⟩` for `v`, then test `w`.
    pub v_first: SubstSide,
    /// Substitute `⟨w⟩` for `w`, then test `v`.
    pub w_first: SubstSide,
}

/// Checks that after replacing `v` by `⟨v⟩` in `u`, `w` is still a
/// submolecule, and symmetrically.
pub fn check_sim_substitution(
    u: &Molecule,
    v: &ElemSet,
    w: &ElemSet,
    names: (&str, &str),
) -> Result<SimSubstReport, OrderError> {
    let p = &u.shape;
    let n = p.dimension();
    for (s, name) in [(v, names.0), (w, names.1)] {
        if p.dim_of(s) != n {
            return Err(OrderError::Hypothesis(format!("{name} is not {n}-dimensional")));
        }
        if !recognize(p, s).is_molecule() {
            return Err(OrderError::Hypothesis(format!("{name} is not a molecule")));
        }
        if !spherical(p, s) {
            return Err(OrderError::Hypothesis(format!("{name} is not spherical")));
        }
    }
    let bv = p.boundary(v, n - 1, None);
    let bw = p.boundary(w, n - 1, None);
    if set_minus(&set_inter(v, w), &set_union(&bv, &bw)).count_ones(..) > 0 {
        return Err(OrderError::Hypothesis(format!(
            "{} and {} overlap outside their boundaries",
            names.0, names.1
        )));
    }
    let v_first = one_side(u, v, w, names.0)?;
    let w_first = one_side(u, w, v, names.1)?;
    Ok(SimSubstReport {
        holds: v_first.survives && w_first.survives,
        v_first,
        w_first,
    })
}

fn one_side(u: &Molecule, v: &ElemSet, w: &ElemSet, vname: &str) -> Result<SubstSide, OrderError> {
    let p = &u.shape;
    let n = p.dimension();
    let vm = Molecule::from_subset(p, v, vname)?;
    let cv = compos(&vm)?;
    let u1 = match substitute(u, v, &cv) {
        Ok(m) => m,
        Err(MolError::Verification(_)) => {
            return Ok(SubstSide {
                substituted: false,
                survives: false,
                obstruction: None,
            })
        }
        Err(e) => return Err(e.into()),
    };
    let q = &u1.shape;
    let display = |id: &str| -> String {
        match u1.origin.get(id) {
            Some(Origin::Left(s)) => s.clone(),
            _ => format!("⟨{vname}⟩"),
        }
    };
    let lookup: HashMap<String, usize> = (0..q.len())
        .filter_map(|i| match u1.origin.get(q.id(i)) {
            Some(Origin::Left(s)) => Some((s.clone(), i)),
            _ => None,
        })
        .collect();
    let mut w1 = q.empty_set();
    for x in w.ones() {
        match lookup.get(p.id(x)) {
            Some(&i) => w1.insert(i),
            None => {
                return Ok(SubstSide {
                    substituted: true,
                    survives: false,
                    obstruction: None,
                })
            }
        }
    }
    let wm = Molecule::from_subset(q, &w1, "w")?;
    let cw = compos(&wm)?;
    if substitute(&u1, &w1, &cw).is_ok() {
        return Ok(SubstSide {
            substituted: true,
            survives: true,
            obstruction: None,
        });
    }
    let path = obstruction_path(q, &w1, n - 1).map(|ps| ps.iter().map(|&x| display(q.id(x))).collect());
    Ok(SubstSide {
        substituted: true,
        survives: false,
        obstruction: path,
    })
}

/// Shortest path in `Maxd_k(q)` leaving the maximal elements of `w`,
/// passing through a maximal element outside `w`, and coming back.
fn obstruction_path(q: &Ogp, w: &ElemSet, k: i64) -> Option<Vec<usize>> {
    let g = maxd(q, &q.full(), k);
    let inside: Vec<usize> = g.high.iter().copied().filter(|&x| w.contains(x)).collect();
    let outside: Vec<usize> = g.high.iter().copied().filter(|&x| !w.contains(x)).collect();
    let mut best: Option<Vec<usize>> = None;
    for &h in &outside {
        for &a in &inside {
            let Some(mut first) = g.graph.shortest_path(a, |x| x == h) else {
                continue;
            };
            let Some(second) = g.graph.shortest_path(h, |x| inside.contains(&x)) else {
                continue;
            };
            first.extend_from_slice(&second[1..]);
            if best.as_ref().map_or(true, |b| first.len() < b.len()) {
                best = Some(first);
            }
        }
    }
    best
}

/// Renders element ids through an origin map, for reports.
pub fn origin_names(origin: &OriginMap, q: &Ogp, xs: &[usize]) -> Vec<String> {
    xs.iter()
        .map(|&x| match origin.get(q.id(x)) {
            Some(Origin::Left(s)) | Some(Origin::Right(s)) => s.clone(),
            _ => q.id(x).to_string(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molecule::{globe, globe_molecule, interval_chain, paste, u_nm};

    #[test]
    fn maxd_examples() {
        let i2 = interval_chain(2);
        let p = &i2.shape;
        let g = maxd(p, &p.full(), 0);
        let e1 = p.elem("e1").unwrap();
        let e2 = p.elem("e2").unwrap();
        let v1 = p.elem("v1").unwrap();
        assert!(g.graph.has_edge(e1, v1) && g.graph.has_edge(v1, e2));
        assert_eq!(g.high_order().unwrap(), vec![e1, e2]);
        let o2 = globe(2);
        assert_eq!(maxd(&o2, &o2.full(), 1).high.len(), 1);
    }

    #[test]
    fn frame_dimensions() {
        let o1 = globe(1);
        assert_eq!(frame_dimension(&o1, &o1.full()).unwrap(), -1);
        let i2 = interval_chain(2);
        assert_eq!(frame_dimension(&i2.shape, &i2.full()).unwrap(), 0);
        let u = paste(&u_nm(2, 1), &u_nm(1, 2), 1).unwrap();
        assert_eq!(frame_dimension(&u.shape, &u.full()).unwrap(), 1);
    }

    #[test]
    fn slices_of_u21() {
        let u = u_nm(2, 1);
        let p = &u.shape;
        let input = p.boundary(&p.full(), 1, Some(Sign::Minus));
        let (a, b) = slice_decomposition(p, &p.full(), &input).unwrap();
        assert_eq!(a, input);
        assert_eq!(b, p.full());
        let output = p.boundary(&p.full(), 1, Some(Sign::Plus));
        let (a, b) = slice_decomposition(p, &p.full(), &output).unwrap();
        assert_eq!(a, p.full());
        assert_eq!(b, output);
        let i1 = interval_chain(1);
        let (a, b) = slice_decomposition(&i1.shape, &i1.full(), &i1.full()).unwrap();
        assert_eq!((a.clone(), b), (i1.full(), i1.full()));
    }

    #[test]
    fn normal_order_u21() {
        let u = u_nm(2, 1);
        assert_eq!(normal_1_order(&u.shape, &u.full()).unwrap(), vec![u.shape.elem("t").unwrap()]);
    }

    #[test]
    fn stacked_globes_substitute_together() {
        let u = paste(&globe_molecule(2), &globe_molecule(2), 1).unwrap();
        let p = &u.shape;
        let tops: Vec<usize> = (0..p.len()).filter(|&x| p.dim(x) == 2).collect();
        assert_eq!(tops.len(), 2);
        let (v, w) = (p.down(tops[0]).clone(), p.down(tops[1]).clone());
        let r = check_sim_substitution(&u, &v, &w, ("v", "w")).unwrap();
        assert!(r.holds);
        assert!(r.v_first.survives && r.w_first.survives);
        assert_eq!(r.v_first.obstruction, None);
        // the same atom on both sides overlaps outside the boundaries
        assert!(check_sim_substitution(&u, &v, &v, ("v", "v")).is_err());
    }
}
