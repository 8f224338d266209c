use std::collections::BTreeSet;
use std::fmt::Write;

use crate::ogp::{ElemSet, Ogp};
use crate::order::MaxdGraph;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn header(out: &mut String, name: &str) {
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=circle, fontsize=10];").unwrap();
}

fn ranks(out: &mut String, p: &Ogp, verts: &[usize], style: impl Fn(usize) -> String) {
    let dims: BTreeSet<usize> = verts.iter().map(|&x| p.dim(x)).collect();
    for d in dims {
        writeln!(out, "  subgraph \"dim{d}\" {{").unwrap();
        writeln!(out, "    rank=same;").unwrap();
        for &x in verts.iter().filter(|&&x| p.dim(x) == d) {
            writeln!(out, "    {}{};", quote(p.id(x)), style(x)).unwrap();
        }
        writeln!(out, "  }}").unwrap();
    }
}

/// The oriented Hasse graph of `u`, one rank per dimension. Input faces
/// point into their cofaces, output faces point out of them.
pub fn export_dot(p: &Ogp, u: &ElemSet) -> String {
    let mut out = String::new();
    header(&mut out, p.name());
    let g = p.oriented_hasse(u);
    ranks(&mut out, p, g.vertices(), |_| String::new());
    for (a, b) in g.edges() {
        writeln!(out, "  {} -> {};", quote(p.id(a)), quote(p.id(b))).unwrap();
    }
    out.push_str("}\n");
    out
}

/// `Maxdₙ` with high vertices boxed. Consecutive ids of `path` are drawn
/// in bold red.
pub fn export_maxd_dot(p: &Ogp, m: &MaxdGraph, path: &[String]) -> String {
    let mut out = String::new();
    header(&mut out, &format!("Maxd{}({})", m.n, p.name()));
    let on_path: BTreeSet<&str> = path.iter().map(String::as_str).collect();
    ranks(&mut out, p, m.graph.vertices(), |x| {
        let mut attrs = Vec::new();
        if m.is_high(x) {
            attrs.push("shape=box");
        }
        if on_path.contains(p.id(x)) {
            attrs.push("color=red");
        }
        if attrs.is_empty() {
            String::new()
        } else {
            format!(" [{}]", attrs.join(", "))
        }
    });
    let hops: BTreeSet<(&str, &str)> = path
        .windows(2)
        .map(|w| (w[0].as_str(), w[1].as_str()))
        .collect();
    for (a, b) in m.graph.edges() {
        let (ia, ib) = (p.id(a), p.id(b));
        let style = if hops.contains(&(ia, ib)) {
            " [color=red, penwidth=2]"
        } else {
            ""
        };
        writeln!(out, "  {} -> {}{};", quote(ia), quote(ib), style).unwrap();
    }
    out.push_str("}\n");
    out
}
