use std::cmp::Ordering;
use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::table::{table_decompose_with_map, FiniteChainTable};
use super::{map_element, AlgElement, FleChain};
use crate::bunch::{Bunch, EmbeddingSpec, RankClass};
use crate::dirsys::Label;
use crate::ogroups::{og_sample, QMatrix};
use crate::report::Report;

/// Rebuilds the bunch from the algebra and compares: exhaustively through the finite
/// table when every layer is trivial, on a seeded sample otherwise.
pub fn roundtrip_check(b: &Bunch, bound: u32, count: usize, seed: u64) -> Report {
    let mut r = Report::new();
    let c = match FleChain::new(b.clone()) {
        Ok(c) => c,
        Err(e) => {
            r.global("RT-INPUT", e.to_string());
            return r;
        }
    };
    match FiniteChainTable::from_chain(&c) {
        Some((tab, elems)) => exhaustive(&c, &tab, &elems, &mut r),
        None => sampled(&c, bound, count, seed, &mut r),
    }
    r
}

fn exhaustive(c: &FleChain, tab: &FiniteChainTable, elems: &[AlgElement], r: &mut Report) {
    let b = c.bunch();
    let (back, back_elems) = match table_decompose_with_map(tab) {
        Ok(x) => x,
        Err(e) => {
            r.global("RT-DECOMPOSE", e.to_string());
            return;
        }
    };
    if back.len() != b.len() {
        r.global("RT-KAPPA", format!("{} nodes recovered from {}", back.len(), b.len()));
        return;
    }
    for i in 0..b.len() {
        if back.label(i) != b.label(i) {
            r.at("RT-LABEL", b.skeleton().id(i), format!("recovered label {}", back.label(i)));
        }
    }
    for (x, y) in elems.iter().zip(&back_elems) {
        if x.node != y.node || x.tag != y.tag {
            r.global("RT-ELEM", format!("{} comes back as {}", c.describe(x), y));
        }
    }
    match FleChain::new(back) {
        Ok(c2) => match FiniteChainTable::from_chain(&c2) {
            Some((tab2, _)) if tab2 == *tab => {}
            _ => r.global("RT-TABLE", "algebra of the recovered bunch differs"),
        },
        Err(e) => r.global("RT-DECOMPOSE", e.to_string()),
    }
}

fn sampled(c: &FleChain, bound: u32, count: usize, seed: u64, r: &mut Report) {
    let b = c.bunch();
    let sk = b.skeleton();
    let n = b.len();
    let t = c.unit();
    let odd = c.classification().rank == RankClass::Odd;
    let f = c.falsum();
    let f_idem = c.mul(&f, &f) == f;
    for u in 0..n {
        let id = sk.id(u);
        let unit = c.layer_unit(u);
        let up = c.neg(&unit);
        let up_idem = c.mul(&up, &up) == up;
        let label = match (u == 0, odd) {
            (true, true) => Label::O,
            (true, false) if f_idem => Label::I,
            (true, false) => Label::J,
            _ if up_idem => Label::I,
            _ => Label::J,
        };
        if label != b.label(u) {
            r.at("RT-LABEL", id, format!("recovered label {label}"));
        }
        if c.res(&unit, &unit) != unit {
            r.at("RT-KAPPA", id, "layer unit is not its own local unit");
        }
        for (k, x) in og_sample(b.group(u), bound, count.max(2) / n.max(1), seed.wrapping_add(u as u64))
            .into_iter()
            .enumerate()
        {
            let xe = AlgElement::plain(u, x.clone());
            if c.res(&xe, &xe) != unit {
                r.at("RT-KAPPA", id, format!("x->x differs from the layer unit for {}", c.describe(&xe)));
            }
            let inv = AlgElement::plain(u, x.iter().map(|v| -v).collect());
            if c.res(&xe, &unit) != inv {
                r.at("RT-INV", id, format!("x->u is not the group inverse for {}", c.describe(&xe)));
            }
            if b.label(u) == Label::I {
                let in_h = c.compare(&c.mul(&xe, &up), &xe) == Ordering::Less;
                if in_h != b.in_h(u, &x) {
                    r.at("RT-H", id, format!("membership of {} in H not recovered", c.describe(&xe)));
                }
            }
            for v in u + 1..n {
                let moved = c.mul(&c.layer_unit(v), &xe);
                let expect = AlgElement::plain(v, b.system().transition(u, v).expect("ordered").apply(&x));
                if moved != expect && k < 3 {
                    r.at("RT-TRANS", id, format!("v*x differs from the transition to {}", sk.id(v)));
                }
            }
        }
    }
    if c.res(&t, &t) != t {
        r.global("RT-KAPPA", "t is not idempotent under ->");
    }
}

/// Algebra-level sub-structure check of `x` inside `y` along node-identity inclusions:
/// membership, order, product, residuum and constants on sampled elements.
pub fn subalgebra_sample(
    x: &Bunch,
    y: &Bunch,
    inclusions: &BTreeMap<String, QMatrix>,
    bound: u32,
    count: usize,
    seed: u64,
) -> Report {
    let mut r = Report::new();
    let (cx, cy) = match (FleChain::new(x.clone()), FleChain::new(y.clone())) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            r.global("B0", e.to_string());
            return r;
        }
    };
    let mut maps = inclusions.clone();
    for u in 0..x.len() {
        let id = x.skeleton().id(u);
        if !maps.contains_key(id) {
            if let Some(v) = y.skeleton().index_of(id) {
                if x.group(u).same_lattice(y.group(v)) {
                    maps.insert(id.to_owned(), QMatrix::identity(x.group(u).rank()));
                }
            }
        }
    }
    let e = EmbeddingSpec::inclusion(maps);
    let phi = |a: &AlgElement| map_element(&cx, &cy, &e, a).filter(|b| cy.check(b).is_ok());
    let pool = cx.sample(bound, count, seed);
    let mut images = Vec::with_capacity(pool.len());
    for a in &pool {
        match phi(a) {
            Some(b) => images.push(b),
            None => {
                r.global("B1", format!("{} has no image", cx.describe(a)));
                return r;
            }
        }
    }
    if images[0] != cy.unit() {
        r.global("B5", "t is not preserved");
    }
    if phi(&cx.falsum()).as_ref() != Some(&cy.falsum()) {
        r.global("B6", "f is not preserved");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(31).wrapping_add(7));
    let n = pool.len();
    let mut pairs: Vec<(usize, usize)> = (0..n.min(40)).flat_map(|i| (0..n.min(40)).map(move |j| (i, j))).collect();
    for _ in 0..count {
        pairs.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    for (i, j) in pairs {
        let (a, b) = (&pool[i], &pool[j]);
        let (fa, fb) = (&images[i], &images[j]);
        if cx.compare(a, b) != cy.compare(fa, fb) {
            r.global("B2", format!("order of {} and {} not preserved", cx.describe(a), cx.describe(b)));
        }
        if phi(&cx.mul(a, b)).as_ref() != Some(&cy.mul(fa, fb)) {
            r.global("B3", format!("product of {} and {} not preserved", cx.describe(a), cx.describe(b)));
        }
        if phi(&cx.res(a, b)).as_ref() != Some(&cy.res(fa, fb)) {
            r.global("B4", format!("residuum of {} and {} not preserved", cx.describe(a), cx.describe(b)));
        }
        if r.findings().len() > 20 {
            break;
        }
    }
    r
}
