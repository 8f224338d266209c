use std::collections::HashMap;

use thiserror::Error;

use crate::glue::Origin;
use crate::graph::DiGraph;
use crate::molecule::{compos, substitute, MolError, Molecule};
use crate::ogp::{set_inter, set_minus, set_union, ElemSet, Ogp, Sign};
use crate::order::{frame_decomposition, is_k_order, k_order, maxd, normal_1_order, OrderError};

/// A 2-cell of the free Gray-category: a 2-molecule with a 1-order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCellNF {
    pub support: ElemSet,
    pub order: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    /// Moves a pair out of normal order.
    Fwd,
    /// Moves a pair back into normal order.
    Inv,
}

impl Dir {
    fn flip(self) -> Dir {
        match self {
            Dir::Fwd => Dir::Inv,
            Dir::Inv => Dir::Fwd,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// Swaps `before[pos]` and `before[pos + 1]`.
    Interchange {
        support: ElemSet,
        before: Vec<usize>,
        pos: usize,
        dir: Dir,
    },
    /// A 3-atom applied in context.
    GenApp {
        atom: usize,
        source: TwoCellNF,
        target: TwoCellNF,
    },
}

fn swapped(v: &[usize], k: usize) -> Vec<usize> {
    let mut w = v.to_vec();
    w.swap(k, k + 1);
    w
}

impl Step {
    pub fn source(&self) -> TwoCellNF {
        match self {
            Step::Interchange {
                support, before, ..
            } => TwoCellNF {
                support: support.clone(),
                order: before.clone(),
            },
            Step::GenApp { source, .. } => source.clone(),
        }
    }

    pub fn target(&self) -> TwoCellNF {
        match self {
            Step::Interchange {
                support,
                before,
                pos,
                ..
            } => TwoCellNF {
                support: support.clone(),
                order: swapped(before, *pos),
            },
            Step::GenApp { target, .. } => target.clone(),
        }
    }

    pub fn inverse(&self) -> Option<Step> {
        match self {
            Step::Interchange {
                support,
                before,
                pos,
                dir,
            } => Some(Step::Interchange {
                support: support.clone(),
                before: swapped(before, *pos),
                pos: *pos,
                dir: dir.flip(),
            }),
            Step::GenApp { .. } => None,
        }
    }

    pub fn display(&self, p: &Ogp) -> String {
        match self {
            Step::Interchange {
                before, pos, dir, ..
            } => {
                let tag = match dir {
                    Dir::Fwd => "χ⁻",
                    Dir::Inv => "χ⁺",
                };
                format!("{tag}[{},{}]", p.id(before[*pos]), p.id(before[*pos + 1]))
            }
            Step::GenApp { atom, .. } => format!("c[{}]", p.id(*atom)),
        }
    }
}

/// A composite of steps starting at `source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayExpr3 {
    pub source: TwoCellNF,
    pub steps: Vec<Step>,
}

impl GrayExpr3 {
    pub fn identity(nf: TwoCellNF) -> Self {
        GrayExpr3 {
            source: nf,
            steps: Vec::new(),
        }
    }

    pub fn display(&self, p: &Ogp) -> String {
        if self.steps.is_empty() {
            return "id".into();
        }
        self.steps
            .iter()
            .map(|s| s.display(p))
            .collect::<Vec<_>>()
            .join(" ; ")
    }

    pub fn interchange_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, Step::Interchange { .. }))
            .count()
    }

    pub fn atoms(&self) -> Vec<usize> {
        self.steps
            .iter()
            .filter_map(|s| match s {
                Step::GenApp { atom, .. } => Some(*atom),
                _ => None,
            })
            .collect()
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GrayError {
    #[error("not a 1-order on its support")]
    NotOneOrder,
    #[error("step {index} does not start where the previous one ends")]
    Chain { index: usize },
    #[error("step {index} is not a legal interchange")]
    BadInterchange { index: usize },
    #[error("expected a {expected}-dimensional molecule, found dimension {found}")]
    Dimension { expected: i64, found: i64 },
    #[error("atom {0} does not apply to the current support")]
    NotApplicable(String),
    #[error("the two expressions have different boundaries")]
    Mismatch,
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Mol(#[from] MolError),
}

pub fn nf_source(e: &GrayExpr3) -> TwoCellNF {
    e.source.clone()
}

pub fn nf_target(e: &GrayExpr3) -> TwoCellNF {
    e.steps
        .last()
        .map_or_else(|| e.source.clone(), |s| s.target())
}

pub fn normal_order(p: &Ogp, support: &ElemSet) -> Result<Vec<usize>, GrayError> {
    Ok(normal_1_order(p, support)?)
}

pub fn normal_nf(p: &Ogp, support: &ElemSet) -> Result<TwoCellNF, GrayError> {
    Ok(TwoCellNF {
        support: support.clone(),
        order: normal_order(p, support)?,
    })
}

pub fn is_one_order(p: &Ogp, nf: &TwoCellNF) -> bool {
    is_k_order(p, &nf.support, 1, &nf.order)
}

fn ranks(p: &Ogp, support: &ElemSet) -> Result<HashMap<usize, usize>, GrayError> {
    Ok(normal_order(p, support)?
        .into_iter()
        .enumerate()
        .map(|(i, x)| (x, i))
        .collect())
}

/// Number of pairs listed against the normal 1-order.
pub fn inversion_weight(p: &Ogp, nf: &TwoCellNF) -> Result<usize, GrayError> {
    let r = ranks(p, &nf.support)?;
    let o = &nf.order;
    let mut w = 0;
    for i in 0..o.len() {
        for j in i + 1..o.len() {
            if r[&o[j]] < r[&o[i]] {
                w += 1;
            }
        }
    }
    Ok(w)
}

/// Checks that consecutive steps compose and that every interchange swaps
/// two cells whose exchange keeps a 1-order.
pub fn check_expr(p: &Ogp, e: &GrayExpr3) -> Result<(), GrayError> {
    let mut cur = e.source.clone();
    for (i, s) in e.steps.iter().enumerate() {
        if s.source() != cur {
            return Err(GrayError::Chain { index: i });
        }
        if let Step::Interchange {
            support,
            before,
            pos,
            dir,
        } = s
        {
            let r = ranks(p, support)?;
            let after = swapped(before, *pos);
            let expected = if r[&before[*pos]] < r[&before[*pos + 1]] {
                Dir::Fwd
            } else {
                Dir::Inv
            };
            if *dir != expected
                || !is_k_order(p, support, 1, before)
                || !is_k_order(p, support, 1, &after)
            {
                return Err(GrayError::BadInterchange { index: i });
            }
        }
        cur = s.target();
    }
    Ok(())
}

/// Inverse interchangers taking `order` to the normal 1-order, always
/// swapping the out-of-order adjacent pair whose first element is greatest.
fn bubble(p: &Ogp, support: &ElemSet, order: &[usize]) -> Result<Vec<Step>, GrayError> {
    let r = ranks(p, support)?;
    let mut cur = order.to_vec();
    let mut steps = Vec::new();
    loop {
        let pick = (0..cur.len().saturating_sub(1))
            .filter(|&k| r[&cur[k]] > r[&cur[k + 1]])
            .max_by_key(|&k| r[&cur[k]]);
        let Some(k) = pick else { break };
        steps.push(Step::Interchange {
            support: support.clone(),
            before: cur.clone(),
            pos: k,
            dir: Dir::Inv,
        });
        cur.swap(k, k + 1);
    }
    Ok(steps)
}

/// Cancels adjacent mutually inverse interchanges.
fn free_reduce(steps: Vec<Step>) -> Vec<Step> {
    let mut out: Vec<Step> = Vec::with_capacity(steps.len());
    for s in steps {
        if let Some(last) = out.last() {
            if last.inverse().as_ref() == Some(&s) {
                out.pop();
                continue;
            }
        }
        out.push(s);
    }
    out
}

fn path_steps(p: &Ogp, support: &ElemSet, from: &[usize], to: &[usize]) -> Result<Vec<Step>, GrayError> {
    let mut steps = bubble(p, support, from)?;
    let back = bubble(p, support, to)?;
    steps.extend(back.iter().rev().map(|s| s.inverse().unwrap()));
    Ok(free_reduce(steps))
}

/// The canonical composite of interchangers from `from` to `to`.
pub fn interchanger_path(
    p: &Ogp,
    support: &ElemSet,
    from: &[usize],
    to: &[usize],
) -> Result<GrayExpr3, GrayError> {
    for o in [from, to] {
        if !is_k_order(p, support, 1, o) {
            return Err(GrayError::NotOneOrder);
        }
    }
    Ok(GrayExpr3 {
        source: TwoCellNF {
            support: support.clone(),
            order: from.to_vec(),
        },
        steps: path_steps(p, support, from, to)?,
    })
}

/// A 1-order with one position standing for a collapsed sub-molecule.
pub type ContextOrder = Vec<Option<usize>>;

/// `s[⟨b⟩/b]` with each of its 2-cells traced back to `p`; `None` marks
/// the new cell.
struct Collapsed {
    shape: Ogp,
    back: Vec<Option<usize>>,
}

impl Collapsed {
    fn new(p: &Ogp, s: &ElemSet, b: &ElemSet) -> Result<Collapsed, GrayError> {
        let m = Molecule::from_subset(p, s, "S")?;
        let local = m.shape.set_of(b.ones().map(|x| m.shape.index_of(p.id(x)).unwrap()));
        let w = compos(&Molecule::from_subset(p, b, "B")?)?;
        let q = substitute(&m, &local, &w)?;
        let back = (0..q.shape.len())
            .map(|i| match q.origin.get(q.shape.id(i)) {
                Some(Origin::Left(id)) => p.index_of(id),
                _ => None,
            })
            .collect();
        Ok(Collapsed {
            shape: q.shape,
            back,
        })
    }

    fn forward(&self, ctx: &ContextOrder) -> Option<Vec<usize>> {
        ctx.iter()
            .map(|c| {
                (0..self.shape.len()).find(|&i| {
                    self.back[i] == *c && (c.is_some() || self.shape.dim(i) == 2)
                })
            })
            .collect()
    }

    fn normal(&self) -> Result<ContextOrder, GrayError> {
        Ok(normal_order(&self.shape, &self.shape.full())?
            .into_iter()
            .map(|i| self.back[i])
            .collect())
    }

    fn valid(&self, ctx: &ContextOrder) -> bool {
        self.forward(ctx)
            .is_some_and(|o| is_k_order(&self.shape, &self.shape.full(), 1, &o))
    }
}

fn expand(ctx: &ContextOrder, fill: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for c in ctx {
        match c {
            Some(x) => out.push(*x),
            None => out.extend_from_slice(fill),
        }
    }
    out
}

/// Replaces the entries of `block` by a single hole if they are contiguous.
fn collapse_block(order: &[usize], block: &[usize]) -> Option<ContextOrder> {
    let pos: Vec<usize> = (0..order.len()).filter(|&i| block.contains(&order[i])).collect();
    let (&first, &last) = (pos.first()?, pos.last()?);
    if last - first + 1 != pos.len() || pos.len() != block.len() {
        return None;
    }
    let mut out: ContextOrder = order[..first].iter().map(|&x| Some(x)).collect();
    out.push(None);
    out.extend(order[last + 1..].iter().map(|&x| Some(x)));
    Some(out)
}

fn two_cells(p: &Ogp, s: &ElemSet) -> Vec<usize> {
    s.ones().filter(|&x| p.dim(x) == 2).collect()
}

fn atom_faces(p: &Ogp, a: usize, s: Sign) -> ElemSet {
    p.elem_boundary(a, 2, Some(s))
}

/// Supports reached by applying `atoms` in sequence to `start`.
fn supports(p: &Ogp, start: &ElemSet, atoms: &[usize]) -> Result<Vec<ElemSet>, GrayError> {
    let mut out = vec![start.clone()];
    for &a in atoms {
        let cur = out.last().unwrap();
        let minus = atom_faces(p, a, Sign::Minus);
        if set_minus(&minus, cur).count_ones(..) > 0 {
            return Err(GrayError::NotApplicable(p.id(a).to_string()));
        }
        let inner = p.elem_boundary(a, 1, None);
        let next = set_union(&set_minus(cur, &set_minus(&minus, &inner)), &atom_faces(p, a, Sign::Plus));
        out.push(next);
    }
    Ok(out)
}

/// The generator application of `a` on `before` in the given context.
fn gen_app(
    p: &Ogp,
    a: usize,
    before: &ElemSet,
    after: &ElemSet,
    ctx: &ContextOrder,
) -> Result<Step, GrayError> {
    let minus = normal_order(p, &atom_faces(p, a, Sign::Minus))?;
    let plus = normal_order(p, &atom_faces(p, a, Sign::Plus))?;
    Ok(Step::GenApp {
        atom: a,
        source: TwoCellNF {
            support: before.clone(),
            order: expand(ctx, &minus),
        },
        target: TwoCellNF {
            support: after.clone(),
            order: expand(ctx, &plus),
        },
    })
}

/// Generator applications of `atoms` in sequence from `source`, joined by
/// canonical interchanger paths and ending at `target_order`. Contexts are
/// chosen backwards: each application reuses the order the next one starts
/// from when the cells it produces sit together there.
pub fn rebuild(
    p: &Ogp,
    source: &TwoCellNF,
    atoms: &[usize],
    target_order: &[usize],
) -> Result<GrayExpr3, GrayError> {
    let sup = supports(p, &source.support, atoms)?;
    let mut apps = Vec::with_capacity(atoms.len());
    let mut next = target_order.to_vec();
    for i in (0..atoms.len()).rev() {
        let a = atoms[i];
        let plus = atom_faces(p, a, Sign::Plus);
        let col = Collapsed::new(p, &sup[i + 1], &plus)?;
        let ctx = match collapse_block(&next, &two_cells(p, &plus)) {
            Some(c) if col.valid(&c) => c,
            _ => col.normal()?,
        };
        let app = gen_app(p, a, &sup[i], &sup[i + 1], &ctx)?;
        next = app.source().order;
        apps.push(app);
    }
    apps.reverse();
    let mut steps = Vec::new();
    let mut cur = source.order.clone();
    for (i, app) in apps.into_iter().enumerate() {
        let s = app.source();
        steps.extend(path_steps(p, &sup[i], &cur, &s.order)?);
        cur = app.target().order;
        steps.push(app);
    }
    steps.extend(path_steps(p, sup.last().unwrap(), &cur, target_order)?);
    Ok(GrayExpr3 {
        source: source.clone(),
        steps: free_reduce(steps),
    })
}

fn dim3(p: &Ogp, u: &ElemSet) -> Result<(), GrayError> {
    let d = p.dim_of(u);
    if d != 3 {
        return Err(GrayError::Dimension {
            expected: 3,
            found: d,
        });
    }
    Ok(())
}

/// The interpretation of a 3-molecule with a single 3-dimensional element.
/// With `ctx` the generator is applied in that context order (a 1-order on
/// the input boundary with the input of the atom collapsed, `None` marking
/// the collapsed cell); otherwise a context is chosen.
pub fn interpret_atom_in_context(
    p: &Ogp,
    u: &ElemSet,
    ctx: Option<&ContextOrder>,
) -> Result<GrayExpr3, GrayError> {
    dim3(p, u)?;
    let tops: Vec<usize> = u.ones().filter(|&x| p.dim(x) == 3).collect();
    if tops.len() != 1 {
        return Err(GrayError::Dimension {
            expected: 3,
            found: p.dim_of(u),
        });
    }
    let x = tops[0];
    let src = normal_nf(p, &p.boundary(u, 2, Some(Sign::Minus)))?;
    let tgt = normal_nf(p, &p.boundary(u, 2, Some(Sign::Plus)))?;
    let Some(ctx) = ctx else {
        return rebuild(p, &src, &[x], &tgt.order);
    };
    let col = Collapsed::new(p, &src.support, &atom_faces(p, x, Sign::Minus))?;
    if !col.valid(ctx) {
        return Err(GrayError::NotOneOrder);
    }
    let app = gen_app(p, x, &src.support, &tgt.support, ctx)?;
    let mut steps = path_steps(p, &src.support, &src.order, &app.source().order)?;
    let back = path_steps(p, &tgt.support, &app.target().order, &tgt.order)?;
    steps.push(app);
    steps.extend(back);
    Ok(GrayExpr3 { source: src, steps })
}

/// The interpretation of a 3-molecule along the frame decomposition for a
/// 2-order (the default one when `order` is `None`).
pub fn interpret(p: &Ogp, u: &ElemSet, order: Option<&[usize]>) -> Result<GrayExpr3, GrayError> {
    dim3(p, u)?;
    let order = match order {
        Some(o) => o.to_vec(),
        None => k_order(p, u, 2).ok_or(OrderError::BadOrder("the 2-order".into()))?,
    };
    frame_decomposition(p, u, 2, &order)?;
    let src = normal_nf(p, &p.boundary(u, 2, Some(Sign::Minus)))?;
    let tgt = normal_order(p, &p.boundary(u, 2, Some(Sign::Plus)))?;
    rebuild(p, &src, &order, &tgt)
}

/// Applications that must stay in sequence: `a` before `b` when `b` uses
/// interior cells produced by `a`.
fn depends(p: &Ogp, a: usize, b: usize) -> bool {
    let out = set_minus(&atom_faces(p, a, Sign::Plus), &p.elem_boundary(a, 1, None));
    let inp = set_minus(&atom_faces(p, b, Sign::Minus), &p.elem_boundary(b, 1, None));
    set_inter(&out, &inp).count_ones(..) > 0
}

/// Reorders independent generator applications by atom and rebuilds the
/// interchangers canonically.
pub fn expr_normalize(p: &Ogp, e: &GrayExpr3) -> Result<GrayExpr3, GrayError> {
    check_expr(p, e)?;
    let target = nf_target(e);
    let atoms = e.atoms();
    let mut g = DiGraph::new((0..atoms.len()).collect());
    for i in 0..atoms.len() {
        for j in i + 1..atoms.len() {
            if depends(p, atoms[i], atoms[j]) {
                g.add_edge(i, j);
            }
        }
    }
    // Kahn on positions, with ties broken by the atom itself
    let mut indeg: Vec<usize> = (0..atoms.len()).map(|i| g.predecessors(i).count()).collect();
    let mut done = vec![false; atoms.len()];
    let mut sorted = Vec::with_capacity(atoms.len());
    for _ in 0..atoms.len() {
        let i = (0..atoms.len())
            .filter(|&i| !done[i] && indeg[i] == 0)
            .min_by_key(|&i| (atoms[i], i))
            .expect("positions form a DAG");
        done[i] = true;
        sorted.push(atoms[i]);
        for j in g.successors(i).collect::<Vec<_>>() {
            indeg[j] -= 1;
        }
    }
    let out = rebuild(p, &e.source, &sorted, &target.order)?;
    if nf_target(&out) != target {
        return Err(GrayError::Mismatch);
    }
    Ok(out)
}

pub fn expr_equal(p: &Ogp, a: &GrayExpr3, b: &GrayExpr3) -> Result<bool, GrayError> {
    if a.source != b.source || nf_target(a) != nf_target(b) {
        return Err(GrayError::Mismatch);
    }
    Ok(expr_normalize(p, a)? == expr_normalize(p, b)?)
}

/// The relation a 4-atom imposes: the interpretations of its two boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub atom: usize,
    pub lhs: GrayExpr3,
    pub rhs: GrayExpr3,
}

pub fn equation_of_atom(p: &Ogp, x: usize) -> Result<Equation, GrayError> {
    if p.dim(x) != 4 {
        return Err(GrayError::Dimension {
            expected: 4,
            found: p.dim(x) as i64,
        });
    }
    Ok(Equation {
        atom: x,
        lhs: interpret(p, &p.elem_boundary(x, 3, Some(Sign::Minus)), None)?,
        rhs: interpret(p, &p.elem_boundary(x, 3, Some(Sign::Plus)), None)?,
    })
}

/// One horizontal slice of a layered 2-cell: a single 2-cell whiskered by
/// wires on either side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub pre: Vec<usize>,
    pub cell: usize,
    pub post: Vec<usize>,
}

/// A 2-cell written as a vertical stack of layers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layered {
    pub input: Vec<usize>,
    pub layers: Vec<Layer>,
}

/// 1-cells of a 1-dimensional molecule, in composition order.
pub fn wire_order(p: &Ogp, s: &ElemSet) -> Option<Vec<usize>> {
    if p.dim_of(s) > 1 {
        return None;
    }
    maxd(p, s, 0).high_order()
}

fn inputs(p: &Ogp, cell: usize, sign: Sign) -> Option<Vec<usize>> {
    wire_order(p, &p.elem_boundary(cell, 1, Some(sign)))
}

impl Layer {
    pub fn wires(&self, p: &Ogp, sign: Sign) -> Option<Vec<usize>> {
        let mut w = self.pre.clone();
        w.extend(inputs(p, self.cell, sign)?);
        w.extend_from_slice(&self.post);
        Some(w)
    }
}

/// Splits a 2-cell into layers, one per cell of its 1-order.
pub fn encode_layers(p: &Ogp, nf: &TwoCellNF) -> Result<Layered, GrayError> {
    let input = wire_order(p, &p.boundary(&nf.support, 1, Some(Sign::Minus)))
        .ok_or(GrayError::NotOneOrder)?;
    if nf.order.is_empty() {
        return Ok(Layered {
            input,
            layers: Vec::new(),
        });
    }
    let parts = frame_decomposition(p, &nf.support, 1, &nf.order)?;
    let mut layers = Vec::with_capacity(parts.len());
    for ((v, _), &cell) in parts.iter().zip(&nf.order) {
        let row = maxd(p, v, 0).high_order().ok_or(GrayError::NotOneOrder)?;
        let k = row.iter().position(|&y| y == cell).ok_or(GrayError::NotOneOrder)?;
        layers.push(Layer {
            pre: row[..k].to_vec(),
            cell,
            post: row[k + 1..].to_vec(),
        });
    }
    Ok(Layered { input, layers })
}

/// Reads back the support and 1-order of a layered 2-cell, checking that
/// consecutive layers compose.
pub fn decode_layers(p: &Ogp, l: &Layered) -> Result<TwoCellNF, GrayError> {
    let mut wires = l.input.clone();
    let mut support = p.closure_of(l.input.iter().copied());
    for (i, layer) in l.layers.iter().enumerate() {
        let inp = layer.wires(p, Sign::Minus).ok_or(GrayError::NotOneOrder)?;
        if inp != wires {
            return Err(GrayError::Chain { index: i });
        }
        wires = layer.wires(p, Sign::Plus).ok_or(GrayError::NotOneOrder)?;
        support.union_with(p.down(layer.cell));
    }
    let nf = TwoCellNF {
        support,
        order: l.layers.iter().map(|x| x.cell).collect(),
    };
    if !is_one_order(p, &nf) {
        return Err(GrayError::NotOneOrder);
    }
    Ok(nf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molecule::{paste, u_nm};

    #[test]
    fn weights_and_paths() {
        // two side-by-side cells
        let u = paste(&u_nm(1, 1), &u_nm(1, 1), 0).unwrap();
        let p = &u.shape;
        let s = p.full();
        let n = normal_order(p, &s).unwrap();
        let r: Vec<usize> = n.iter().rev().copied().collect();
        let nf = TwoCellNF {
            support: s.clone(),
            order: r.clone(),
        };
        assert_eq!(inversion_weight(p, &nf).unwrap(), 1);
        let e = interchanger_path(p, &s, &r, &n).unwrap();
        assert_eq!(e.steps.len(), 1);
        check_expr(p, &e).unwrap();
        assert!(interchanger_path(p, &s, &n, &n).unwrap().steps.is_empty());
        let mut both = e.steps.clone();
        both.push(e.steps[0].inverse().unwrap());
        assert!(free_reduce(both).is_empty());
    }

    #[test]
    fn layers_round_trip() {
        let u = paste(&u_nm(2, 1), &u_nm(1, 2), 1).unwrap();
        let p = &u.shape;
        let nf = normal_nf(p, &p.full()).unwrap();
        let l = encode_layers(p, &nf).unwrap();
        assert_eq!(l.layers.len(), 2);
        assert_eq!(decode_layers(p, &l).unwrap(), nf);
    }
}
