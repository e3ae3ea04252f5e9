//! The involutive FL_e-chain of a bunch and its decomposition back into a bunch.
//!
//! Elements are tagged layer elements: a plain group element `x` of `G_u`, or a
//! dotted copy `•h` of an element `h` of `H_u` at an I-node. Within a layer,
//! `•h` sits directly below `h`. Elements of different layers are compared
//! after pushing the lower one up with the transition map, ties going to the
//! lower node.

mod axioms;
mod roundtrip;
mod table;

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bunch::{bunch_classify, bunch_validate, Bunch, Classification, EmbeddingSpec};
use crate::dirsys::Label;
use crate::error::{Error, Result};
use crate::ogroups::matrix::{vec_add, vec_neg};
use crate::ogroups::sample::random_element;
use crate::ogroups::{format_rational, parse_rational, GroupElement, LatticeKind, OGroup, QMatrix, Rational};

pub use axioms::{axiom_suite, InvolutiveChain};
pub use roundtrip::{roundtrip_check, subalgebra_sample};
pub use table::{table_decompose, table_decompose_with_map, FiniteChainTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Dotted,
    Plain,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgElement {
    pub node: usize,
    pub tag: Tag,
    pub coords: GroupElement,
}

impl AlgElement {
    pub fn plain(node: usize, coords: GroupElement) -> Self {
        AlgElement { node, tag: Tag::Plain, coords }
    }

    pub fn dotted(node: usize, coords: GroupElement) -> Self {
        AlgElement { node, tag: Tag::Dotted, coords }
    }
}

impl fmt::Display for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(format_rational).collect();
        let dot = if self.tag == Tag::Dotted { "•" } else { "" };
        write!(f, "{dot}({})@{}", c.join(","), self.node)
    }
}

/// The algebra built from a valid bunch; transitions are precomputed.
#[derive(Clone, Debug)]
pub struct FleChain {
    bunch: Bunch,
    trans: Vec<Vec<QMatrix>>,
    atoms: Vec<Option<GroupElement>>,
    class: Classification,
}

impl FleChain {
    pub fn new(bunch: Bunch) -> Result<Self> {
        let rep = bunch_validate(&bunch);
        if !rep.is_ok() {
            return Err(Error::InvalidBunch(rep.render()));
        }
        let trans = bunch
            .system()
            .transition_table()
            .into_iter()
            .map(|row| row.into_iter().map(|h| h.matrix().clone()).collect())
            .collect();
        let atoms = (0..bunch.len()).map(|i| bunch.group(i).atom()).collect();
        let class = bunch_classify(&bunch);
        Ok(FleChain { bunch, trans, atoms, class })
    }

    pub fn bunch(&self) -> &Bunch {
        &self.bunch
    }

    pub fn classification(&self) -> Classification {
        self.class
    }

    pub fn node_id(&self, i: usize) -> &str {
        self.bunch.skeleton().id(i)
    }

    fn group(&self, i: usize) -> &OGroup {
        self.bunch.group(i)
    }

    pub fn element(&self, node: &str, tag: Tag, coords: GroupElement) -> Result<AlgElement> {
        let i = self.bunch.skeleton().require(node)?;
        let x = AlgElement { node: i, tag, coords };
        self.check(&x)?;
        Ok(x)
    }

    pub fn check(&self, x: &AlgElement) -> Result<()> {
        if x.node >= self.bunch.len() {
            return Err(Error::UnknownNode(format!("#{}", x.node)));
        }
        self.group(x.node).check(&x.coords)?;
        if x.tag == Tag::Dotted && !(self.bunch.label(x.node) == Label::I && self.bunch.in_h(x.node, &x.coords)) {
            return Err(Error::NotInGroup("dotted element outside H at its node".into()));
        }
        Ok(())
    }

    pub fn unit(&self) -> AlgElement {
        AlgElement::plain(0, self.group(0).unit())
    }

    pub fn falsum(&self) -> AlgElement {
        self.neg(&self.unit())
    }

    /// The unit of the layer at `node`.
    pub fn layer_unit(&self, node: usize) -> AlgElement {
        AlgElement::plain(node, self.group(node).unit())
    }

    pub fn rho(&self, v: usize, x: &AlgElement) -> AlgElement {
        if x.node < v {
            AlgElement::plain(v, self.trans[x.node][v - x.node].apply(&x.coords))
        } else {
            x.clone()
        }
    }

    pub fn compare(&self, x: &AlgElement, y: &AlgElement) -> Ordering {
        let w = x.node.max(y.node);
        let a = self.rho(w, x);
        let b = self.rho(w, y);
        self.group(w)
            .compare(&a.coords, &b.coords)
            .then(a.tag.cmp(&b.tag))
            .then(x.node.cmp(&y.node))
    }

    fn plain_in_h(&self, x: &AlgElement) -> bool {
        x.tag == Tag::Plain && self.bunch.in_h(x.node, &x.coords)
    }

    pub fn mul(&self, x: &AlgElement, y: &AlgElement) -> AlgElement {
        let w = x.node.max(y.node);
        let a = self.rho(w, x);
        let b = self.rho(w, y);
        let s = vec_add(&a.coords, &b.coords);
        if self.bunch.label(w) == Label::I
            && self.bunch.in_h(w, &s)
            && !(self.plain_in_h(&a) && self.plain_in_h(&b))
        {
            AlgElement::dotted(w, s)
        } else {
            AlgElement::plain(w, s)
        }
    }

    pub fn neg(&self, x: &AlgElement) -> AlgElement {
        let m = vec_neg(&x.coords);
        match (x.tag, self.bunch.label(x.node)) {
            (Tag::Dotted, _) => AlgElement::plain(x.node, m),
            (Tag::Plain, Label::I) if self.bunch.in_h(x.node, &x.coords) => AlgElement::dotted(x.node, m),
            (Tag::Plain, Label::J) => {
                let a = self.atoms[x.node].as_ref().expect("J-node groups are discrete");
                AlgElement::plain(x.node, m.iter().zip(a).map(|(p, q)| p - q).collect())
            }
            _ => AlgElement::plain(x.node, m),
        }
    }

    pub fn res(&self, x: &AlgElement, y: &AlgElement) -> AlgElement {
        self.neg(&self.mul(x, &self.neg(y)))
    }

    /// Every element, in increasing order, when all layers are trivial.
    pub fn finite_enumerate(&self) -> Option<Vec<AlgElement>> {
        if (0..self.bunch.len()).any(|i| !self.group(i).is_trivial()) {
            return None;
        }
        let mut out = Vec::new();
        for i in 0..self.bunch.len() {
            if self.bunch.label(i) == Label::I {
                out.push(AlgElement::dotted(i, Vec::new()));
            }
            out.push(AlgElement::plain(i, Vec::new()));
        }
        out.sort_by(|a, b| self.compare(a, b));
        Some(out)
    }

    /// Seeded sample: `t`, `f`, every layer unit and its involute, then random elements.
    pub fn sample(&self, bound: u32, count: usize, seed: u64) -> Vec<AlgElement> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = vec![self.unit(), self.falsum()];
        for i in 0..self.bunch.len() {
            let u = self.layer_unit(i);
            out.push(self.neg(&u));
            out.push(u);
        }
        let b = i64::from(bound.max(1));
        while out.len() < count.max(out.len()) {
            let node = rng.gen_range(0..self.bunch.len());
            out.push(self.random_at(node, b, &mut rng));
        }
        out
    }

    fn random_at(&self, node: usize, bound: i64, rng: &mut ChaCha8Rng) -> AlgElement {
        let g = self.group(node);
        let h = self.bunch.subgroup(node);
        let pick = if h.is_some() { rng.gen_range(0..3) } else { 0 };
        if pick == 0 {
            return AlgElement::plain(node, random_element(g, bound, rng));
        }
        let basis = h.expect("I-node").basis();
        let mut v = g.unit();
        for b in basis {
            let c = match g.lattice() {
                LatticeKind::Int => Rational::from_integer(rng.gen_range(-bound..=bound).into()),
                LatticeKind::Rat => Rational::new(rng.gen_range(-2 * bound..=2 * bound).into(), 2.into()),
            };
            v = v.iter().zip(b).map(|(x, y)| x + &c * y).collect();
        }
        if pick == 1 {
            AlgElement::dotted(node, v)
        } else {
            AlgElement::plain(node, v)
        }
    }

    pub fn describe(&self, x: &AlgElement) -> String {
        let c: Vec<String> = x.coords.iter().map(format_rational).collect();
        let dot = if x.tag == Tag::Dotted { "•" } else { "" };
        format!("{dot}({})@{}", c.join(","), self.node_id(x.node))
    }

    /// Inverse of [`FleChain::describe`]; also accepts `t`, `f`, and `.` or `*` for the dot.
    pub fn parse_element(&self, s: &str) -> Result<AlgElement> {
        let s = s.trim();
        match s {
            "t" => return Ok(self.unit()),
            "f" => return Ok(self.falsum()),
            _ => {}
        }
        let bad = || Error::Parse(format!("not an element literal: {s:?}"));
        let (tag, rest) = match s.strip_prefix('•').or_else(|| s.strip_prefix('.')).or_else(|| s.strip_prefix('*')) {
            Some(r) => (Tag::Dotted, r),
            None => (Tag::Plain, s),
        };
        let (coords, node) = rest.rsplit_once('@').ok_or_else(bad)?;
        let inner = coords.trim().strip_prefix('(').and_then(|c| c.strip_suffix(')')).ok_or_else(bad)?;
        let coords = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?
        };
        self.element(node.trim(), tag, coords)
    }
}

/// Image of an element of `x` in `y` along `e`; `None` if the node is unmapped.
pub fn map_element(x: &FleChain, y: &FleChain, e: &EmbeddingSpec, a: &AlgElement) -> Option<AlgElement> {
    let u = x.node_id(a.node);
    let v = e.node_map.get(u)?;
    let vi = y.bunch().skeleton().index_of(v)?;
    let m = e.layer_maps.get(u)?;
    if m.cols() != a.coords.len() {
        return None;
    }
    Some(AlgElement { node: vi, tag: a.tag, coords: m.apply(&a.coords) })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::dirsys::{DirectSystem, Skeleton};
    use crate::ogroups::q;

    fn trivial_chain(labels: &[(&str, Label)]) -> FleChain {
        let sk = Skeleton::new(labels.iter().map(|(a, b)| (a.to_string(), *b))).unwrap();
        let n = sk.len();
        let d = DirectSystem::new(sk, vec![OGroup::trivial(); n], vec![QMatrix::zeros(0, 0); n - 1]).unwrap();
        FleChain::new(Bunch::new(d, BTreeMap::new()).unwrap()).unwrap()
    }

    #[test]
    fn sugihara_five_order() {
        let c = trivial_chain(&[("t", Label::O), ("a", Label::I), ("b", Label::I)]);
        let all = c.finite_enumerate().unwrap();
        let names: Vec<String> = all.iter().map(|x| c.describe(x)).collect();
        assert_eq!(names, vec!["•()@b", "•()@a", "()@t", "()@a", "()@b"]);
        let a = AlgElement::plain(1, vec![]);
        let da = AlgElement::dotted(1, vec![]);
        assert_eq!(c.mul(&a, &da), da);
        assert_eq!(c.neg(&da), a);
        assert_eq!(c.falsum(), c.unit());
    }

    #[test]
    fn j_layer_negation() {
        let sk = Skeleton::new([("t", Label::J)]).unwrap();
        let d = DirectSystem::new(sk, vec![OGroup::z(1)], vec![]).unwrap();
        let c = FleChain::new(Bunch::new(d, BTreeMap::new()).unwrap()).unwrap();
        assert_eq!(c.neg(&AlgElement::plain(0, vec![q(3)])), AlgElement::plain(0, vec![q(-4)]));
        assert_eq!(c.falsum(), AlgElement::plain(0, vec![q(-1)]));
    }

    #[test]
    fn invalid_bunch_rejected() {
        let sk = Skeleton::new([("t", Label::J)]).unwrap();
        let d = DirectSystem::new(sk, vec![OGroup::trivial()], vec![]).unwrap();
        assert!(FleChain::new(Bunch::new(d, BTreeMap::new()).unwrap()).is_err());
    }
}
