mod common;

use common::*;
use ogpkit::glue::Origin;
use ogpkit::graycat::{
    decode_layers, encode_layers, expr_equal, inversion_weight, interchanger_path, interpret,
    nf_source, nf_target, normal_order, Step, TwoCellNF,
};
use ogpkit::io::json::{parse_complex, serialize_complex};
use ogpkit::io::{frob, power};
use ogpkit::molecule::{
    cell_to, compos, globe, paste, recognize, spherical, substitute, u_nm, unique_iso, Molecule,
};
use ogpkit::ogp::{set_union, Ogp, Sign};
use ogpkit::order::{
    frame_acyclic, frame_decomposition, frame_dimension, k_order, maxd, totally_loop_free,
};
use ogpkit::products::{gray_product, smash_counts, GenCell};
use ogpkit::regular::validate_complex;
use ogpkit::theories::perm::{invert_slices, perm_compose, permute_word};
use ogpkit::theories::{
    perm_decompose, presentation_of_smash, sigma_expr, sigma_star_expr, wire_permutation,
    DiagCell, DiagPresentation, Permutation,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn globular(p: &Ogp) -> bool {
    (0..p.len()).filter(|&x| p.dim(x) >= 2).all(|x| {
        let n = p.dim(x) as i64;
        let cl = p.down(x);
        Sign::BOTH.iter().all(|&a| {
            let target = p.boundary(cl, n - 2, Some(a));
            Sign::BOTH
                .iter()
                .all(|&b| p.boundary(&p.boundary(cl, n - 1, Some(b)), n - 2, Some(a)) == target)
        })
    })
}

/// Bubble-sort swap count, independent of the library's inversion count.
fn swaps_to_sort(images: &[usize]) -> usize {
    let mut v = images.to_vec();
    let mut count = 0;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                count += 1;
            }
        }
    }
    count
}

fn random_perm(r: &mut impl Rng, n: usize) -> Permutation {
    let mut v: Vec<usize> = (1..=n).collect();
    v.shuffle(r);
    Permutation::new(v).unwrap()
}

fn word(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("a{}", i + 1)).collect()
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn boundaries_of_random_molecules(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = if r.gen_bool(0.5) { random_2_molecule(&mut r) } else { random_3_molecule(&mut r, 40) };
        let p = &m.shape;
        prop_assert!(globular(p));
        prop_assert!(validate_complex(p).passed());
        let full = p.full();
        let d = p.dimension();
        for n in d..d + 2 {
            for a in Sign::BOTH {
                prop_assert_eq!(p.boundary(&full, n, Some(a)), full.clone());
            }
        }
        // closure is idempotent and monotone, boundaries of closed sets are closed
        let xs: Vec<usize> = (0..p.len()).filter(|_| r.gen_bool(0.3)).collect();
        let s = p.set_of(xs.iter().copied());
        let c = p.closure(&s);
        prop_assert_eq!(p.closure(&c), c.clone());
        prop_assert!(s.is_subset(&c));
        let bigger = p.closure(&set_union(&s, &p.set_of([r.gen_range(0..p.len())])));
        prop_assert!(c.is_subset(&bigger));
        for n in 0..d {
            for a in Sign::BOTH {
                prop_assert!(p.is_closed(&p.boundary(&c, n, Some(a))));
            }
        }
    }

    #[test]
    fn duality(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_2_molecule(&mut r);
        let p = &m.shape;
        let q = p.dual(None);
        prop_assert!(q.dual(None).same_structure(p));
        prop_assert_eq!(serialize_complex(&q.dual(None)).replace("°°", ""), serialize_complex(p).replace("°°", ""));
        let u = p.closure_of([r.gen_range(0..p.len())]);
        for n in 0..=2 {
            for a in Sign::BOTH {
                prop_assert_eq!(q.source_set(&u, n, a), p.source_set(&u, n, -a));
            }
        }
    }

    #[test]
    fn serialization_is_stable(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_3_molecule(&mut r, 40);
        let s = serialize_complex(&m.shape);
        let again = serialize_complex(&parse_complex(&s).unwrap());
        prop_assert_eq!(s, again);
    }

    #[test]
    fn recognition_recovers_certificates(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_3_molecule(&mut r, 40);
        let p = &m.shape;
        let cert = recognize(p, &p.full()).cert();
        prop_assert!(cert.is_some());
        let cert = cert.unwrap();
        prop_assert!(cert.verify(p));
        prop_assert_eq!(cert.elements(p).unwrap(), p.full());
        prop_assert!(m.cert.verify(p));
    }

    #[test]
    fn codim1_acyclic(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_3_molecule(&mut r, 40);
        let p = &m.shape;
        prop_assert!(maxd(p, &p.full(), p.dimension() - 1).find_cycle().is_none());
        let rep = frame_acyclic(p, Some(&[p.full()]), 0).unwrap();
        prop_assert!(rep.acyclic);
    }

    #[test]
    fn two_molecules_are_loop_free(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_2_molecule(&mut r);
        let p = &m.shape;
        let full = p.full();
        prop_assert!(p.oriented_hasse(&full).is_acyclic());
        let lf = totally_loop_free(p, &full).unwrap();
        prop_assert!(lf.is_total());
        let maxes = p.maximal(&full);
        for k in 0..=1 {
            let g = maxd(p, &full, k);
            for &x in &maxes {
                for &y in &maxes {
                    if x != y && g.path_exists(x, y) {
                        prop_assert!(lf.precedes(x, y), "{} {}", p.id(x), p.id(y));
                    }
                }
            }
        }
    }

    #[test]
    fn frame_decomposition_covers(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_3_molecule(&mut r, 40);
        let p = &m.shape;
        let full = p.full();
        let frdim = frame_dimension(p, &full).unwrap();
        for k in frdim.max(0)..p.dimension() {
            let order = k_order(p, &full, k).unwrap();
            let parts = frame_decomposition(p, &full, k, &order).unwrap();
            let mut acc = parts[0].0.clone();
            for (v, _) in &parts[1..] {
                acc = set_union(&acc, v);
            }
            prop_assert_eq!(acc, full.clone());
            // pasting the pieces back rebuilds the molecule up to isomorphism
            let mols: Vec<Molecule> = parts
                .iter()
                .map(|(v, _)| Molecule::from_subset(p, v, "piece").unwrap())
                .collect();
            let mut glued = mols[0].clone();
            for piece in &mols[1..] {
                glued = paste(&glued, piece, k as usize).unwrap();
            }
            prop_assert!(unique_iso(&glued, &m).unwrap().is_some());
        }
    }

    #[test]
    fn paste_is_associative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (input, layers) = random_layers(&mut r, 5);
        if layers.len() >= 3 {
            let w = widths(input, &layers);
            let i = r.gen_range(1..layers.len() - 1);
            let j = r.gen_range(i + 1..layers.len());
            let a = build_layers(input, &layers[..i]);
            let b = build_layers(w[i], &layers[i..j]);
            let c = build_layers(w[j], &layers[j..]);
            let left = paste(&paste(&a, &b, 1).unwrap(), &c, 1).unwrap();
            let right = paste(&a, &paste(&b, &c, 1).unwrap(), 1).unwrap();
            prop_assert!(unique_iso(&left, &right).unwrap().is_some());
        }
        let a = random_2_molecule(&mut r);
        let b = random_2_molecule(&mut r);
        let c = random_2_molecule(&mut r);
        let left = paste(&paste(&a, &b, 0).unwrap(), &c, 0).unwrap();
        let right = paste(&a, &paste(&b, &c, 0).unwrap(), 0).unwrap();
        let iso = unique_iso(&left, &right).unwrap();
        prop_assert!(iso.is_some());
        let id = unique_iso(&left, &left).unwrap().unwrap();
        prop_assert!(id.iter().all(|(x, y)| x == y));
    }

    #[test]
    fn atoms_have_the_given_boundaries(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (input, layers) = random_round_layers(&mut r, 4);
        let u = build_layers(input, &layers);
        prop_assert!(u.is_spherical());
        let v = compos(&u).unwrap();
        let a = cell_to(&u, &v).unwrap();
        let p = &a.shape;
        prop_assert!(spherical(p, &p.full()));
        let src = Molecule::from_subset(p, &p.boundary(&p.full(), 2, Some(Sign::Minus)), "s").unwrap();
        let tgt = Molecule::from_subset(p, &p.boundary(&p.full(), 2, Some(Sign::Plus)), "t").unwrap();
        prop_assert!(unique_iso(&src, &u).unwrap().is_some());
        prop_assert!(unique_iso(&tgt, &v).unwrap().is_some());
    }

    #[test]
    fn substitution_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (input, layers) = random_round_layers(&mut r, 4);
        let m = build_layers(input, &layers);
        let w = widths(input, &layers);
        let i = r.gen_range(0..layers.len());
        let j = r.gen_range(i..layers.len());
        let piece = build_layers(w[i], &layers[i..=j]);
        // locate the piece inside m as the layers i..=j
        let p = &m.shape;
        let order = normal_order(p, &p.full()).unwrap();
        let parts = frame_decomposition(p, &p.full(), 1, &order).unwrap();
        let mut v = parts[i].0.clone();
        for (s, _) in &parts[i + 1..=j] {
            v = set_union(&v, s);
        }
        prop_assert_eq!(v.count_ones(..), piece.len());
        let vm = Molecule::from_subset(p, &v, "v").unwrap();
        let u1 = substitute(&m, &v, &compos(&vm).unwrap()).unwrap();
        let top = u1
            .origin
            .iter()
            .find(|(_, o)| **o == Origin::Right("top".into()))
            .map(|(id, _)| u1.shape.index_of(id).unwrap())
            .unwrap();
        let back = substitute(&u1, u1.shape.down(top), &vm).unwrap();
        prop_assert!(unique_iso(&back, &m).unwrap().is_some());
    }

    #[test]
    fn layered_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_2_molecule(&mut r);
        let p = &m.shape;
        let full = p.full();
        let order = k_order(p, &full, 1).unwrap();
        let nf = TwoCellNF { support: full.clone(), order };
        let l = encode_layers(p, &nf).unwrap();
        prop_assert_eq!(decode_layers(p, &l).unwrap(), nf.clone());
        // every sub-molecule with its normal order round-trips too
        let parts = frame_decomposition(p, &full, 1, &nf.order).unwrap();
        let sub = parts[0].0.clone();
        let o = normal_order(p, &sub).unwrap();
        let nf2 = TwoCellNF { support: sub, order: o };
        prop_assert_eq!(decode_layers(p, &encode_layers(p, &nf2).unwrap()).unwrap(), nf2);
    }

    #[test]
    fn interchanger_paths_follow_weights(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_2_molecule(&mut r);
        let p = &m.shape;
        let full = p.full();
        let normal = normal_order(p, &full).unwrap();
        // random 1-orders: random topological sorts of Maxd_1
        let random_order = |r: &mut rand_chacha::ChaCha8Rng| {
            let g = maxd(p, &full, 1).high_graph();
            let mut left: Vec<usize> = g.vertices().to_vec();
            let mut out = Vec::new();
            while !left.is_empty() {
                let ready: Vec<usize> = left
                    .iter()
                    .copied()
                    .filter(|&x| left.iter().all(|&y| y == x || !g.has_edge(y, x)))
                    .collect();
                let x = *ready.choose(r).unwrap();
                out.push(x);
                left.retain(|&y| y != x);
            }
            out
        };
        let a = random_order(&mut r);
        let b = random_order(&mut r);
        let wa = inversion_weight(p, &TwoCellNF { support: full.clone(), order: a.clone() }).unwrap();
        let wb = inversion_weight(p, &TwoCellNF { support: full.clone(), order: b.clone() }).unwrap();
        let to_normal = interchanger_path(p, &full, &a, &normal).unwrap();
        prop_assert_eq!(to_normal.steps.len(), wa);
        let mut w = wa;
        for s in &to_normal.steps {
            let next = inversion_weight(p, &s.target()).unwrap();
            prop_assert!(next < w);
            w = next;
        }
        let ab = interchanger_path(p, &full, &a, &b).unwrap();
        prop_assert!(ab.steps.len() >= wa.abs_diff(wb));
        prop_assert_eq!(nf_target(&ab).order, b);
    }

    #[test]
    fn gray_products(a in 0usize..6, b in 0usize..6) {
        let shapes = [globe(0), globe(1), globe(2), u_nm(2, 1).shape, u_nm(1, 2).shape, globe(3)];
        let (p, q) = (&shapes[a], &shapes[b]);
        let pq = gray_product(p, q);
        prop_assert_eq!(pq.len(), p.len() * q.len());
        for x in 0..p.len() {
            for y in 0..q.len() {
                let id = format!("{}⊗{}", p.id(x), q.id(y));
                let z = pq.index_of(&id).unwrap();
                prop_assert_eq!(pq.dim(z), p.dim(x) + q.dim(y));
            }
        }
        if pq.len() <= 150 {
            prop_assert!(validate_complex(&pq).passed());
        }
        let unit = gray_product(&globe(0), q).rename(q.name(), |s| s.trim_start_matches("0⊗").to_string());
        prop_assert!(unit.same_structure(q));
    }

    #[test]
    fn permutations(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=8);
        let s = random_perm(&mut r, n);
        let ks = perm_decompose(&s);
        prop_assert_eq!(ks.len(), swaps_to_sort(s.images()));
        prop_assert_eq!(perm_compose(n, &ks), s.clone());
        prop_assert_eq!(perm_decompose(&s.clone()), ks);
        let w = word(n);
        let sig = sigma_expr(&s, &w).unwrap();
        prop_assert_eq!(wire_permutation(n, &sig).unwrap(), s.clone());
        let star = sigma_star_expr(&s, &w).unwrap();
        prop_assert_eq!(wire_permutation(n, &star).unwrap(), s.clone());
        prop_assert_eq!(invert_slices(&star), sigma_expr(&s.inverse(), &permute_word(&s, &w)).unwrap());
    }

    #[test]
    fn smash_counts_convolve(dims_x in prop::collection::vec(1usize..4, 0..4), dims_y in prop::collection::vec(1usize..4, 0..4)) {
        let mk = |name: &str, dims: &[usize]| {
            let mut cells = vec![DiagCell {
                name: "•".into(),
                dim: 0,
                shape: ogpkit::products::LabelledComplex {
                    shape: globe(0),
                    labels: vec![ogpkit::products::Label::Basepoint],
                },
            }];
            for (i, &d) in dims.iter().enumerate() {
                cells.push(DiagCell {
                    name: format!("{name}{i}"),
                    dim: d,
                    shape: ogpkit::products::LabelledComplex::by_ids(globe(d)),
                });
            }
            DiagPresentation { name: name.into(), cells }
        };
        let x = mk("x", &dims_x);
        let y = mk("y", &dims_y);
        let mut expect = std::collections::BTreeMap::new();
        expect.insert(0usize, 1usize);
        for &a in &dims_x {
            for &b in &dims_y {
                *expect.entry(a + b).or_insert(0) += 1;
            }
        }
        prop_assert_eq!(presentation_of_smash(&x, &y).counts(), expect.clone());
        let gx: Vec<GenCell> = x.gen_cells();
        let gy: Vec<GenCell> = y.gen_cells();
        prop_assert_eq!(smash_counts(&gx, &gy), expect);
    }
}

#[test]
fn gray_product_is_associative() {
    let shapes = [globe(1), globe(2), u_nm(2, 1).shape];
    for p in &shapes {
        for q in &shapes {
            for r in &shapes {
                let a = gray_product(&gray_product(p, q), r);
                let b = gray_product(p, &gray_product(q, r));
                assert!(a.same_structure(&b), "{} {} {}", p.name(), q.name(), r.name());
            }
        }
    }
}

#[test]
fn shipped_fixtures_satisfy_invariants() {
    for p in [power(), frob()] {
        assert!(validate_complex(&p).passed());
        assert!(globular(&p));
        let rep = frame_acyclic(&p, None, 100_000).unwrap();
        assert!(rep.acyclic, "{}", p.name());
        assert!(rep.checked > 0);
    }
}

#[test]
fn interpretation_is_independent_of_order() {
    let p = frob();
    let full = p.full();
    let o = k_order(&p, &full, 2).unwrap();
    let rev: Vec<usize> = o.iter().rev().copied().collect();
    let e1 = interpret(&p, &full, Some(&o)).unwrap();
    let e2 = interpret(&p, &full, Some(&rev)).unwrap();
    assert!(expr_equal(&p, &e1, &e2).unwrap());
    let src = nf_source(&e1);
    assert_eq!(src.support, p.boundary(&full, 2, Some(Sign::Minus)));
    assert_eq!(src.order, normal_order(&p, &src.support).unwrap());
    let tgt = nf_target(&e1);
    assert_eq!(tgt.support, p.boundary(&full, 2, Some(Sign::Plus)));
    assert_eq!(tgt.order, normal_order(&p, &tgt.support).unwrap());
    assert_eq!(e1.steps.iter().filter(|s| matches!(s, Step::GenApp { .. })).count(), 2);
}
