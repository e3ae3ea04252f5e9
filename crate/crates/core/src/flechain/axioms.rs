use std::cmp::Ordering;
use std::fmt::Debug;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AlgElement, FleChain};
use crate::bunch::RankClass;
use crate::report::Report;

/// What the axiom suite needs from an algebra.
pub trait InvolutiveChain {
    type Elem: Clone + PartialEq + Debug;

    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn res(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn compare(&self, x: &Self::Elem, y: &Self::Elem) -> Ordering;
    fn unit(&self) -> Self::Elem;
    fn falsum(&self) -> Self::Elem;
    /// Claimed rank class, checked against the rank laws.
    fn rank_class(&self) -> RankClass;
    fn enumerate(&self) -> Option<Vec<Self::Elem>>;
    fn sample(&self, bound: u32, count: usize, seed: u64) -> Vec<Self::Elem>;
    fn describe(&self, x: &Self::Elem) -> String;
}

impl InvolutiveChain for FleChain {
    type Elem = AlgElement;

    fn mul(&self, x: &AlgElement, y: &AlgElement) -> AlgElement {
        FleChain::mul(self, x, y)
    }
    fn res(&self, x: &AlgElement, y: &AlgElement) -> AlgElement {
        FleChain::res(self, x, y)
    }
    fn neg(&self, x: &AlgElement) -> AlgElement {
        FleChain::neg(self, x)
    }
    fn compare(&self, x: &AlgElement, y: &AlgElement) -> Ordering {
        FleChain::compare(self, x, y)
    }
    fn unit(&self) -> AlgElement {
        FleChain::unit(self)
    }
    fn falsum(&self) -> AlgElement {
        FleChain::falsum(self)
    }
    fn rank_class(&self) -> RankClass {
        self.classification().rank
    }
    fn enumerate(&self) -> Option<Vec<AlgElement>> {
        self.finite_enumerate()
    }
    fn sample(&self, bound: u32, count: usize, seed: u64) -> Vec<AlgElement> {
        FleChain::sample(self, bound, count, seed)
    }
    fn describe(&self, x: &AlgElement) -> String {
        FleChain::describe(self, x)
    }
}

const PER_CODE: usize = 5;
const EXHAUSTIVE_TRIPLES: usize = 30_000;

struct Sink<'a, C: InvolutiveChain> {
    c: &'a C,
    r: Report,
    counts: std::collections::HashMap<&'static str, usize>,
}

impl<C: InvolutiveChain> Sink<'_, C> {
    fn fail(&mut self, code: &'static str, what: &str, xs: &[&C::Elem]) {
        let n = self.counts.entry(code).or_default();
        *n += 1;
        if *n > PER_CODE {
            return;
        }
        let names: Vec<String> = xs.iter().map(|x| self.c.describe(x)).collect();
        self.r.global(code, format!("{what}: {}", names.join(" ")));
    }
}

/// Checks the involutive FL_e-chain laws on all elements (finite case) or on a seeded sample.
pub fn axiom_suite<C: InvolutiveChain>(c: &C, bound: u32, count: usize, seed: u64) -> Report {
    let mut s = Sink { c, r: Report::new(), counts: Default::default() };
    let (pool, exhaustive) = match c.enumerate() {
        Some(all) if all.len().pow(3) <= EXHAUSTIVE_TRIPLES => (all, true),
        _ => (c.sample(bound, count, seed), false),
    };
    let t = c.unit();
    let f = c.falsum();
    let le = |a: &C::Elem, b: &C::Elem| c.compare(a, b) != Ordering::Greater;

    for x in &pool {
        if c.mul(&t, x) != *x {
            s.fail("AX-UNIT", "t*x != x", &[x]);
        }
        let nx = c.neg(x);
        if c.neg(&nx) != *x {
            s.fail("AX-INV", "x'' != x", &[x]);
        }
        if nx != c.res(x, &f) {
            s.fail("AX-INV", "x' != x->f", &[x]);
        }
        if c.compare(x, x) != Ordering::Equal {
            s.fail("AX-ORD", "x not equal to itself", &[x]);
        }
        if le(&t, x) && !le(&c.res(x, x), x) {
            s.fail("AX-EQ1", "x >= t but x->x > x", &[x]);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let n = pool.len();
    let mut triples: Vec<(usize, usize, usize)> = Vec::new();
    if exhaustive {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    triples.push((i, j, k));
                }
            }
        }
    } else {
        for _ in 0..count.max(1) {
            triples.push((rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)));
        }
    }
    for (i, j, k) in triples {
        let (x, y, z) = (&pool[i], &pool[j], &pool[k]);
        let xy = c.mul(x, y);
        if xy != c.mul(y, x) {
            s.fail("AX-COMM", "x*y != y*x", &[x, y]);
        }
        if c.mul(&xy, z) != c.mul(x, &c.mul(y, z)) {
            s.fail("AX-ASSOC", "(x*y)*z != x*(y*z)", &[x, y, z]);
        }
        let cxy = c.compare(x, y);
        if cxy != c.compare(y, x).reverse() || (cxy == Ordering::Equal) != (x == y) {
            s.fail("AX-ORD", "comparison not antisymmetric", &[x, y]);
        }
        if le(x, y) && le(y, z) && !le(x, z) {
            s.fail("AX-ORD", "comparison not transitive", &[x, y, z]);
        }
        if le(x, y) && !le(&c.mul(x, z), &c.mul(y, z)) {
            s.fail("AX-MONO", "x<=y but x*z > y*z", &[x, y, z]);
        }
        if le(&xy, z) != le(y, &c.res(x, z)) {
            s.fail("AX-ADJ", "x*y<=z disagrees with y<=x->z", &[x, y, z]);
        }
    }

    let nt = c.neg(&t);
    let f_idem = c.mul(&f, &f) == f;
    match c.rank_class() {
        RankClass::Odd => {
            if nt != t {
                s.fail("AX-RANK", "odd but t' != t", &[&t]);
            }
        }
        class => {
            if c.compare(&f, &t) != Ordering::Less {
                s.fail("AX-RANK", "even but f is not below t", &[&f, &t]);
            }
            for x in &pool {
                if c.compare(&f, x) == Ordering::Less && c.compare(x, &t) == Ordering::Less {
                    s.fail("AX-RANK", "even but an element lies strictly between f and t", &[x]);
                }
            }
            if (class == RankClass::EvenIdemF) != f_idem {
                s.fail("AX-RANK", "idempotence of f does not match the rank class", &[&f]);
            }
        }
    }
    s.r
}
