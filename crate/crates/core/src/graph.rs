use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap, VecDeque};

use fixedbitset::FixedBitSet;

/// Directed graph on a set of element indices.
#[derive(Clone, Debug, Default)]
pub struct DiGraph {
    verts: Vec<usize>,
    pos: HashMap<usize, usize>,
    succ: Vec<BTreeSet<usize>>,
    pred: Vec<BTreeSet<usize>>,
}

impl DiGraph {
    pub fn new(mut verts: Vec<usize>) -> Self {
        verts.sort_unstable();
        verts.dedup();
        let pos = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = verts.len();
        DiGraph {
            verts,
            pos,
            succ: vec![BTreeSet::new(); n],
            pred: vec![BTreeSet::new(); n],
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        let (i, j) = (self.pos[&a], self.pos[&b]);
        self.succ[i].insert(j);
        self.pred[j].insert(i);
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts
    }

    pub fn contains(&self, v: usize) -> bool {
        self.pos.contains_key(&v)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        match (self.pos.get(&a), self.pos.get(&b)) {
            (Some(&i), Some(&j)) => self.succ[i].contains(&j),
            _ => false,
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(move |(i, s)| s.iter().map(move |&j| (self.verts[i], self.verts[j])))
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(|s| s.len()).sum()
    }

    pub fn successors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.succ[self.pos[&v]].iter().map(move |&j| self.verts[j])
    }

    pub fn predecessors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.pred[self.pos[&v]].iter().map(move |&j| self.verts[j])
    }

    /// Kahn's algorithm, always taking the least ready vertex.
    /// Returns `None` if the graph has a cycle.
    pub fn topo_sort(&self) -> Option<Vec<usize>> {
        let n = self.verts.len();
        let mut indeg: Vec<usize> = self.pred.iter().map(|p| p.len()).collect();
        let mut ready: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&i| indeg[i] == 0).map(Reverse).collect();
        let mut out = Vec::with_capacity(n);
        while let Some(Reverse(i)) = ready.pop() {
            out.push(self.verts[i]);
            for &j in &self.succ[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    ready.push(Reverse(j));
                }
            }
        }
        (out.len() == n).then_some(out)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topo_sort().is_some()
    }

    /// Some directed cycle, listed from its least vertex, if one exists.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let n = self.verts.len();
        let mut color = vec![0u8; n];
        let mut parent = vec![usize::MAX; n];
        for s in 0..n {
            if color[s] != 0 {
                continue;
            }
            let mut stack: Vec<(usize, Vec<usize>)> =
                vec![(s, self.succ[s].iter().rev().copied().collect())];
            color[s] = 1;
            while let Some((v, rest)) = stack.last_mut() {
                let v = *v;
                if let Some(w) = rest.pop() {
                    if color[w] == 0 {
                        color[w] = 1;
                        parent[w] = v;
                        stack.push((w, self.succ[w].iter().rev().copied().collect()));
                    } else if color[w] == 1 {
                        let mut cyc = vec![w];
                        let mut x = v;
                        while x != w {
                            cyc.push(x);
                            x = parent[x];
                        }
                        cyc.reverse();
                        cyc.rotate_right(1);
                        let m = (0..cyc.len()).min_by_key(|&i| cyc[i]).unwrap();
                        cyc.rotate_left(m);
                        return Some(cyc.into_iter().map(|i| self.verts[i]).collect());
                    }
                } else {
                    color[v] = 2;
                    stack.pop();
                }
            }
        }
        None
    }

    /// For each vertex, the set of vertex positions reachable from it
    /// (reflexively). Positions index [`DiGraph::vertices`].
    pub fn reachability(&self) -> Vec<FixedBitSet> {
        let n = self.verts.len();
        let mut reach = vec![FixedBitSet::with_capacity(n); n];
        for s in 0..n {
            let r = &mut reach[s];
            r.insert(s);
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for &w in &self.succ[v] {
                    if !r.contains(w) {
                        r.insert(w);
                        q.push_back(w);
                    }
                }
            }
        }
        reach
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.pos.get(&v).copied()
    }

    /// Shortest path from `from` to any vertex satisfying `goal`, with
    /// least-vertex tie-breaking. The path has at least one edge.
    pub fn shortest_path(
        &self,
        from: usize,
        goal: impl Fn(usize) -> bool,
    ) -> Option<Vec<usize>> {
        let s = self.pos[&from];
        let n = self.verts.len();
        let mut prev = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut q = VecDeque::new();
        for &w in &self.succ[s] {
            if !seen[w] {
                seen[w] = true;
                prev[w] = s;
                q.push_back(w);
            }
        }
        while let Some(v) = q.pop_front() {
            if goal(self.verts[v]) {
                let mut path = vec![v];
                let mut x = v;
                loop {
                    x = prev[x];
                    path.push(x);
                    if x == s {
                        break;
                    }
                }
                path.reverse();
                return Some(path.into_iter().map(|i| self.verts[i]).collect());
            }
            for &w in &self.succ[v] {
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = v;
                    q.push_back(w);
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kahn_is_lexicographic() {
        let mut g = DiGraph::new(vec![0, 1, 2, 3]);
        g.add_edge(3, 1);
        g.add_edge(2, 1);
        assert_eq!(g.topo_sort().unwrap(), vec![0, 2, 3, 1]);
    }

    #[test]
    fn cycle_detection() {
        let mut g = DiGraph::new(vec![5, 6, 7]);
        g.add_edge(6, 7);
        g.add_edge(7, 5);
        g.add_edge(5, 6);
        assert!(g.topo_sort().is_none());
        assert_eq!(g.find_cycle().unwrap(), vec![5, 6, 7]);
        let mut h = DiGraph::new(vec![1, 2]);
        h.add_edge(1, 2);
        assert!(h.find_cycle().is_none());
    }

    #[test]
    fn paths() {
        let mut g = DiGraph::new(vec![0, 1, 2, 3]);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(0, 3);
        g.add_edge(3, 2);
        assert_eq!(g.shortest_path(0, |v| v == 2).unwrap(), vec![0, 1, 2]);
        assert!(g.shortest_path(2, |v| v == 0).is_none());
    }
}
