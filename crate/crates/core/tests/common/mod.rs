#![allow(dead_code)]

use ogpkit::molecule::{cell_to, globe_molecule, interval_chain, paste, u_nm, Molecule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A 2-cell with `a` inputs and `b` outputs, sitting after `pre` wires.
#[derive(Clone, Copy, Debug)]
pub struct Layer {
    pub pre: usize,
    pub a: usize,
    pub b: usize,
}

fn chain(n: usize) -> Molecule {
    if n == 1 {
        globe_molecule(1)
    } else {
        interval_chain(n)
    }
}

/// `m` with `pre` wires on its left and `post` on its right.
pub fn whisker(m: &Molecule, pre: usize, post: usize) -> Molecule {
    let mut out = m.clone();
    if pre > 0 {
        out = paste(&chain(pre), &out, 0).expect("left whisker");
    }
    if post > 0 {
        out = paste(&out, &chain(post), 0).expect("right whisker");
    }
    out
}

fn stack(parts: Vec<Molecule>, k: usize) -> Molecule {
    let mut it = parts.into_iter();
    let first = it.next().expect("nonempty");
    it.fold(first, |acc, m| paste(&acc, &m, k).expect("stacking"))
}

/// Wire counts before and after each layer.
pub fn widths(input: usize, layers: &[Layer]) -> Vec<usize> {
    let mut w = vec![input];
    for l in layers {
        let n = *w.last().unwrap();
        w.push(n - l.a + l.b);
    }
    w
}

pub fn layer_molecule(input: usize, l: &Layer) -> Molecule {
    whisker(&u_nm(l.a, l.b), l.pre, input - l.pre - l.a)
}

pub fn build_layers(input: usize, layers: &[Layer]) -> Molecule {
    let w = widths(input, layers);
    stack(
        layers
            .iter()
            .zip(&w)
            .map(|(l, &n)| layer_molecule(n, l))
            .collect(),
        1,
    )
}

/// Random layer on `n` wires.
pub fn random_layer(r: &mut impl Rng, n: usize) -> Layer {
    let a = r.gen_range(1..=n.min(3));
    let pre = r.gen_range(0..=n - a);
    let b = r.gen_range(1..=2);
    Layer { pre, a, b }
}

/// Random layered 2-molecule with at most `max_layers` cells.
pub fn random_layers(r: &mut impl Rng, max_layers: usize) -> (usize, Vec<Layer>) {
    let input = r.gen_range(1..=3);
    let count = r.gen_range(1..=max_layers);
    let mut layers = Vec::new();
    let mut n = input;
    for _ in 0..count {
        let l = random_layer(r, n);
        n = n - l.a + l.b;
        if n > 4 {
            break;
        }
        layers.push(l);
    }
    if layers.is_empty() {
        layers.push(Layer { pre: 0, a: 1, b: 1 });
    }
    (input, layers)
}

pub fn random_2_molecule(r: &mut impl Rng) -> Molecule {
    let (input, layers) = random_layers(r, 5);
    let m = build_layers(input, &layers);
    if r.gen_bool(0.2) {
        let (i2, l2) = random_layers(r, 2);
        paste(&m, &build_layers(i2, &l2), 0).expect("side by side")
    } else {
        m
    }
}

/// One rewrite of a layered diagram, as a whiskered 3-atom.
fn rewrite(r: &mut impl Rng, input: usize, layers: &[Layer]) -> Option<(Molecule, Vec<Layer>)> {
    let w = widths(input, layers);
    let i = r.gen_range(0..layers.len());
    let l = layers[i];
    let merge = i + 1 < layers.len()
        && layers[i + 1].pre == l.pre
        && layers[i + 1].a == l.b
        && r.gen_bool(0.5);
    let (src, new): (Vec<Layer>, Vec<Layer>) = if merge {
        let m = layers[i + 1];
        let src = vec![l, m];
        (src, vec![Layer { pre: l.pre, a: l.a, b: m.b }])
    } else {
        let c = r.gen_range(1..=2);
        (
            vec![l],
            vec![Layer { pre: l.pre, a: l.a, b: c }, Layer { pre: l.pre, a: c, b: l.b }],
        )
    };
    let local_in = build_layers(l.a, &src.iter().map(|x| Layer { pre: 0, ..*x }).collect::<Vec<_>>());
    let local_out = build_layers(l.a, &new.iter().map(|x| Layer { pre: 0, ..*x }).collect::<Vec<_>>());
    let atom = cell_to(&local_in, &local_out).ok()?;
    let mut cell = whisker(&atom, l.pre, w[i] - l.pre - l.a);
    if i > 0 {
        cell = paste(&build_layers(input, &layers[..i]), &cell, 1).ok()?;
    }
    let rest = i + src.len();
    if rest < layers.len() {
        cell = paste(&cell, &build_layers(w[rest], &layers[rest..]), 1).ok()?;
    }
    let mut out = layers[..i].to_vec();
    out.extend(new);
    out.extend_from_slice(&layers[rest..]);
    Some((cell, out))
}

/// Random 3-molecule made of split and merge rewrites of a layered
/// diagram, with at most `max_elements` elements.
pub fn random_3_molecule(r: &mut impl Rng, max_elements: usize) -> Molecule {
    loop {
        let (input, layers0) = random_layers(r, 3);
        let Some((first, mut layers)) = rewrite(r, input, &layers0) else {
            continue;
        };
        if first.len() > max_elements {
            continue;
        }
        let mut m = first;
        let steps = r.gen_range(0..=3);
        for _ in 0..steps {
            let Some((cell, next)) = rewrite(r, input, &layers) else {
                continue;
            };
            let Ok(candidate) = paste(&m, &cell, 2) else {
                continue;
            };
            if candidate.len() > max_elements {
                break;
            }
            m = candidate;
            layers = next;
        }
        if r.gen_bool(0.25) {
            let side = if r.gen_bool(0.5) {
                match rewrite(r, 1, &[Layer { pre: 0, a: 1, b: 1 }]) {
                    Some((atom, _)) => atom,
                    None => build_layers(1, &[Layer { pre: 0, a: 1, b: 1 }]),
                }
            } else {
                build_layers(1, &[Layer { pre: 0, a: 1, b: 1 }])
            };
            if let Ok(c) = paste(&m, &side, 0) {
                if c.len() <= max_elements {
                    return c;
                }
            }
        }
        return m;
    }
}

/// Layers each using every wire, so every composite of consecutive layers
/// is round.
pub fn random_round_layers(r: &mut impl Rng, max_layers: usize) -> (usize, Vec<Layer>) {
    let input = r.gen_range(1..=3);
    let count = r.gen_range(1..=max_layers);
    let mut layers = Vec::new();
    let mut n = input;
    for _ in 0..count {
        let b = r.gen_range(1..=3);
        layers.push(Layer { pre: 0, a: n, b });
        n = b;
    }
    (input, layers)
}
