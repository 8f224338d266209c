use std::collections::{BTreeMap, HashMap, VecDeque};

use thiserror::Error;

use crate::ogp::{ElemSet, Ogp, Sign};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum IsoError {
    #[error("found two distinct isomorphisms; the inputs are not rigid")]
    NotUnique,
}

/// Element-to-element map from the first subset to the second, sorted by source.
pub type IsoMap = Vec<(usize, usize)>;

type Side<'a> = (&'a Ogp, Vec<usize>);

fn refine(a: &Side, b: &Side) -> (Vec<usize>, Vec<usize>) {
    let (pa, va) = a;
    let (pb, vb) = b;
    let pos_a: HashMap<usize, usize> = va.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let pos_b: HashMap<usize, usize> = vb.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut ca: Vec<usize> = va.iter().map(|&x| pa.dim(x)).collect();
    let mut cb: Vec<usize> = vb.iter().map(|&x| pb.dim(x)).collect();
    let mut classes = usize::MAX;
    loop {
        let sig = |p: &Ogp, pos: &HashMap<usize, usize>, col: &Vec<usize>, x: usize| {
            let mut f: Vec<(Sign, usize)> = p
                .faces(x)
                .iter()
                .filter_map(|&(y, s)| pos.get(&y).map(|&i| (s, col[i])))
                .collect();
            let mut c: Vec<(Sign, usize)> = p
                .cofaces(x)
                .iter()
                .filter_map(|&(y, s)| pos.get(&y).map(|&i| (s, col[i])))
                .collect();
            f.sort_unstable();
            c.sort_unstable();
            (col[pos[&x]], f, c)
        };
        let sa: Vec<_> = va.iter().map(|&x| sig(pa, &pos_a, &ca, x)).collect();
        let sb: Vec<_> = vb.iter().map(|&x| sig(pb, &pos_b, &cb, x)).collect();
        let mut palette = BTreeMap::new();
        for s in sa.iter().chain(sb.iter()) {
            let n = palette.len();
            palette.entry(s.clone()).or_insert(n);
        }
        // renumber in sorted signature order so colours are canonical
        let ordered: BTreeMap<_, usize> = palette
            .keys()
            .enumerate()
            .map(|(i, k)| (k.clone(), i))
            .collect();
        ca = sa.iter().map(|s| ordered[s]).collect();
        cb = sb.iter().map(|s| ordered[s]).collect();
        if ordered.len() == classes {
            return (ca, cb);
        }
        classes = ordered.len();
    }
}

fn histogram(c: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &x in c {
        *h.entry(x).or_insert(0) += 1;
    }
    h
}

/// First dimension at which the two subsets cannot be matched, or `None`
/// when an isomorphism exists.
pub fn mismatch_stratum(a: &Ogp, sa: &ElemSet, b: &Ogp, sb: &ElemSet) -> Option<usize> {
    let count = |p: &Ogp, s: &ElemSet| {
        let mut h = BTreeMap::new();
        for x in s.ones() {
            *h.entry(p.dim(x)).or_insert(0usize) += 1;
        }
        h
    };
    let (ha, hb) = (count(a, sa), count(b, sb));
    let top = ha.keys().chain(hb.keys()).max().copied()?;
    for d in 0..=top {
        if ha.get(&d) != hb.get(&d) {
            return Some(d);
        }
    }
    let side_a = (a, sa.ones().collect::<Vec<_>>());
    let side_b = (b, sb.ones().collect::<Vec<_>>());
    let (ca, cb) = refine(&side_a, &side_b);
    for d in 0..=top {
        let pick = |p: &Ogp, v: &[usize], c: &[usize]| {
            let cs: Vec<usize> = v
                .iter()
                .zip(c)
                .filter(|(x, _)| p.dim(**x) == d)
                .map(|(_, &c)| c)
                .collect();
            histogram(&cs)
        };
        if pick(a, &side_a.1, &ca) != pick(b, &side_b.1, &cb) {
            return Some(d);
        }
    }
    match find_iso(a, sa, b, sb) {
        Ok(Some(_)) => None,
        _ => Some(0),
    }
}

/// Searches for an isomorphism between closed subsets `sa` of `a` and `sb` of
/// `b` preserving dimensions and signed covers. The search continues after
/// the first hit so that a second, distinct isomorphism is reported.
pub fn find_iso(a: &Ogp, sa: &ElemSet, b: &Ogp, sb: &ElemSet) -> Result<Option<IsoMap>, IsoError> {
    let va: Vec<usize> = sa.ones().collect();
    let vb: Vec<usize> = sb.ones().collect();
    if va.len() != vb.len() {
        return Ok(None);
    }
    if va.is_empty() {
        return Ok(Some(Vec::new()));
    }
    let side_a = (a, va.clone());
    let side_b = (b, vb.clone());
    let (ca, cb) = refine(&side_a, &side_b);
    if histogram(&ca) != histogram(&cb) {
        return Ok(None);
    }
    let pos_a: HashMap<usize, usize> = va.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let pos_b: HashMap<usize, usize> = vb.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut by_colour: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (j, &c) in cb.iter().enumerate() {
        by_colour.entry(c).or_default().push(j);
    }
    let class_size = |i: usize| by_colour[&ca[i]].len();

    // neighbour lists in local positions
    let nb = |p: &Ogp, pos: &HashMap<usize, usize>, v: &[usize]| -> Vec<Vec<(usize, Sign, bool)>> {
        v.iter()
            .map(|&x| {
                let mut out = Vec::new();
                for &(y, s) in p.faces(x) {
                    if let Some(&j) = pos.get(&y) {
                        out.push((j, s, true));
                    }
                }
                for &(y, s) in p.cofaces(x) {
                    if let Some(&j) = pos.get(&y) {
                        out.push((j, s, false));
                    }
                }
                out
            })
            .collect()
    };
    let nb_a = nb(a, &pos_a, &va);
    let nb_b = nb(b, &pos_b, &vb);

    // static search order: breadth first from the rarest colours
    let n = va.len();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&i| (class_size(i), i));
    for s in starts {
        if placed[s] {
            continue;
        }
        placed[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(i) = q.pop_front() {
            order.push(i);
            let mut next: Vec<usize> = nb_a[i].iter().map(|t| t.0).filter(|&j| !placed[j]).collect();
            next.sort_by_key(|&j| (class_size(j), j));
            next.dedup();
            for j in next {
                if !placed[j] {
                    placed[j] = true;
                    q.push_back(j);
                }
            }
        }
    }

    struct Search<'s> {
        order: Vec<usize>,
        ca: &'s [usize],
        by_colour: &'s BTreeMap<usize, Vec<usize>>,
        nb_a: &'s [Vec<(usize, Sign, bool)>],
        nb_b: &'s [Vec<(usize, Sign, bool)>],
        fwd: Vec<usize>,
        inv: Vec<usize>,
        found: Vec<Vec<usize>>,
    }

    impl Search<'_> {
        fn ok(&self, i: usize, j: usize) -> bool {
            for &(k, s, face) in &self.nb_a[i] {
                let m = self.fwd[k];
                if m != usize::MAX && !self.nb_b[j].contains(&(m, s, face)) {
                    return false;
                }
            }
            for &(k, s, face) in &self.nb_b[j] {
                let m = self.inv[k];
                if m != usize::MAX && !self.nb_a[i].contains(&(m, s, face)) {
                    return false;
                }
            }
            true
        }

        fn go(&mut self, depth: usize) {
            if self.found.len() >= 2 {
                return;
            }
            if depth == self.order.len() {
                self.found.push(self.fwd.clone());
                return;
            }
            let i = self.order[depth];
            for &j in &self.by_colour[&self.ca[i]] {
                if self.inv[j] != usize::MAX || !self.ok(i, j) {
                    continue;
                }
                self.fwd[i] = j;
                self.inv[j] = i;
                self.go(depth + 1);
                self.fwd[i] = usize::MAX;
                self.inv[j] = usize::MAX;
                if self.found.len() >= 2 {
                    return;
                }
            }
        }
    }

    let mut search = Search {
        order,
        ca: &ca,
        by_colour: &by_colour,
        nb_a: &nb_a,
        nb_b: &nb_b,
        fwd: vec![usize::MAX; n],
        inv: vec![usize::MAX; n],
        found: Vec::new(),
    };
    search.go(0);
    match search.found.len() {
        0 => Ok(None),
        1 => Ok(Some(
            search.found[0]
                .iter()
                .enumerate()
                .map(|(i, &j)| (va[i], vb[j]))
                .collect(),
        )),
        _ => Err(IsoError::NotUnique),
    }
}
