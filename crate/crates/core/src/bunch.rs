//! Bunches of layer groups: validation, classification, sub-bunches and embeddings.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::dirsys::{ds_validate, DirectSystem, Label, Skeleton};
use crate::error::{Error, Result};
use crate::ogroups::lattice::integer_kernel;
use crate::ogroups::{GroupElement, LatticeKind, OGroup, OGroupHom, QMatrix, Rational, SubgroupSpec};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RankClass {
    Odd,
    EvenNonIdemF,
    EvenIdemF,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub rank: RankClass,
    pub symm: bool,
}

/// A direct system whose I-nodes carry a distinguished subgroup `H_u`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bunch {
    system: DirectSystem,
    subgroups: Vec<Option<SubgroupSpec>>,
}

impl Bunch {
    /// Missing subgroups at I-nodes default to the whole layer group.
    pub fn new(system: DirectSystem, mut subgroups: BTreeMap<String, SubgroupSpec>) -> Result<Self> {
        let sk = system.skeleton();
        for id in subgroups.keys() {
            let i = sk.require(id)?;
            if sk.label(i) != Label::I {
                return Err(Error::InvalidBunch(format!("subgroup given at non-I node {id}")));
            }
        }
        let subs = (0..sk.len())
            .map(|i| match sk.label(i) {
                Label::I => Some(subgroups.remove(sk.id(i)).unwrap_or_else(|| SubgroupSpec::full(system.group(i)))),
                _ => None,
            })
            .collect();
        Ok(Bunch { system, subgroups: subs })
    }

    /// Convenience constructor from `(id, label, group)` triples and consecutive step matrices.
    pub fn build(nodes: Vec<(&str, Label, OGroup)>, steps: Vec<QMatrix>, subgroups: Vec<(&str, SubgroupSpec)>) -> Result<Self> {
        let sk = Skeleton::new(nodes.iter().map(|(id, l, _)| (id.to_string(), *l)))?;
        let groups = nodes.into_iter().map(|(_, _, g)| g).collect();
        let subs = subgroups.into_iter().map(|(id, h)| (id.to_owned(), h)).collect();
        Bunch::new(DirectSystem::new(sk, groups, steps)?, subs)
    }

    pub fn system(&self) -> &DirectSystem {
        &self.system
    }

    pub fn skeleton(&self) -> &Skeleton {
        self.system.skeleton()
    }

    pub fn len(&self) -> usize {
        self.system.len()
    }

    pub fn is_empty(&self) -> bool {
        self.system.is_empty()
    }

    pub fn group(&self, i: usize) -> &OGroup {
        self.system.group(i)
    }

    pub fn label(&self, i: usize) -> Label {
        self.skeleton().label(i)
    }

    pub fn subgroup(&self, i: usize) -> Option<&SubgroupSpec> {
        self.subgroups[i].as_ref()
    }

    pub fn subgroups(&self) -> BTreeMap<String, SubgroupSpec> {
        self.subgroups
            .iter()
            .enumerate()
            .filter_map(|(i, h)| h.clone().map(|h| (self.skeleton().id(i).to_owned(), h)))
            .collect()
    }

    pub fn in_h(&self, i: usize, x: &[Rational]) -> bool {
        self.subgroups[i].as_ref().is_some_and(|h| h.contains(self.group(i), x))
    }

    /// Same bunch with new layer orders.
    pub fn with_groups(&self, groups: Vec<OGroup>) -> Result<Self> {
        Ok(Bunch { system: self.system.with_groups(groups)?, subgroups: self.subgroups.clone() })
    }

    pub fn with_subgroup(&self, id: &str, h: SubgroupSpec) -> Result<Self> {
        let i = self.skeleton().require(id)?;
        if self.label(i) != Label::I {
            return Err(Error::InvalidBunch(format!("subgroup given at non-I node {id}")));
        }
        let mut b = self.clone();
        b.subgroups[i] = Some(h);
        Ok(b)
    }
}

pub fn bunch_validate(b: &Bunch) -> Report {
    let mut r = Report::new();
    let sk = b.skeleton();
    for (id, why) in sk.partition_violations() {
        r.at("PART", &id, why);
    }
    r.extend(ds_validate(b.system()));
    let n = b.len();
    for u in 0..n {
        let id = sk.id(u);
        let g = b.group(u);
        match sk.label(u) {
            Label::J => {
                let Some(atom) = g.atom() else {
                    r.at("DISC", id, "J-node group is not discretely ordered");
                    continue;
                };
                for v in u + 1..n {
                    let img = b.system().transition(u, v).expect("ordered").apply(&atom);
                    if img.iter().any(|c| !c.is_zero()) {
                        r.at("G2", id, format!("transition to {} does not identify the unit with its lower cover", sk.id(v)));
                    }
                }
            }
            Label::I => {
                let h = b.subgroup(u).expect("I-node subgroup");
                if let Err(e) = h.check_in(g) {
                    r.at("HSUB", id, e.to_string());
                    continue;
                }
                for w in 0..u {
                    let t = b.system().transition(w, u).expect("ordered");
                    for e in QMatrix::identity(b.group(w).rank()).col_vecs() {
                        if !h.contains(g, &t.apply(&e)) {
                            r.at("G3", id, format!("image of the transition from {} leaves H", sk.id(w)));
                            break;
                        }
                    }
                }
            }
            Label::O => {}
        }
    }
    r
}

pub fn bunch_classify(b: &Bunch) -> Classification {
    let rank = match b.label(0) {
        Label::O => RankClass::Odd,
        Label::J => RankClass::EvenNonIdemF,
        Label::I => RankClass::EvenIdemF,
    };
    let symm = (0..b.len()).all(|i| b.label(i) != Label::J);
    Classification { rank, symm }
}

/// A node map plus one layer matrix per source node.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EmbeddingSpec {
    pub node_map: BTreeMap<String, String>,
    pub layer_maps: BTreeMap<String, QMatrix>,
}

impl EmbeddingSpec {
    /// Identity on node ids with the given layer matrices.
    pub fn inclusion(layer_maps: BTreeMap<String, QMatrix>) -> Self {
        let node_map = layer_maps.keys().map(|k| (k.clone(), k.clone())).collect();
        EmbeddingSpec { node_map, layer_maps }
    }

    /// Node-identity inclusion with identity layer maps for every node of `x`.
    pub fn identity_on(x: &Bunch) -> Self {
        let maps = (0..x.len())
            .map(|i| (x.skeleton().id(i).to_owned(), QMatrix::identity(x.group(i).rank())))
            .collect();
        Self::inclusion(maps)
    }

    pub fn layer_hom(&self, x: &Bunch, y: &Bunch, u: &str) -> Result<OGroupHom> {
        let ui = x.skeleton().require(u)?;
        let v = self.node_map.get(u).ok_or_else(|| Error::UnknownNode(u.to_owned()))?;
        let vi = y.skeleton().require(v)?;
        let m = self.layer_maps.get(u).ok_or_else(|| Error::Precondition(format!("no layer map at {u}")))?;
        OGroupHom::new(x.group(ui).clone(), y.group(vi).clone(), m.clone())
    }

    /// `other ∘ self`
    pub fn then(&self, other: &EmbeddingSpec) -> Result<EmbeddingSpec> {
        let mut out = EmbeddingSpec::default();
        for (u, v) in &self.node_map {
            let w = other.node_map.get(v).ok_or_else(|| Error::UnknownNode(v.clone()))?;
            let a = self.layer_maps.get(u).ok_or_else(|| Error::Precondition(format!("no layer map at {u}")))?;
            let b = other.layer_maps.get(v).ok_or_else(|| Error::Precondition(format!("no layer map at {v}")))?;
            out.node_map.insert(u.clone(), w.clone());
            out.layer_maps.insert(u.clone(), b.mul(a));
        }
        Ok(out)
    }
}

/// Generators of `{x in G_X : m x in H}` for a subgroup `H` of `G_Y`.
pub fn preimage_generators(gx: &OGroup, gy: &OGroup, m: &QMatrix, hy: &SubgroupSpec) -> Vec<GroupElement> {
    let g = gx.rank();
    let all = || QMatrix::identity(g).col_vecs();
    if g == 0 {
        return Vec::new();
    }
    if gy.rank() == 0 {
        return all();
    }
    let basis = if hy.basis().is_empty() {
        QMatrix::zeros(gy.rank(), 0)
    } else {
        QMatrix::from_columns(hy.basis(), gy.rank()).expect("basis shape")
    };
    match (gx.lattice(), gy.lattice()) {
        (LatticeKind::Rat, LatticeKind::Int) => all(),
        (LatticeKind::Int, LatticeKind::Int) => {
            let stacked = m.hstack(&basis.neg());
            let z = crate::ogroups::lattice::from_qmatrix(&stacked);
            integer_kernel(&z, stacked.cols())
                .into_iter()
                .map(|v| v[..g].iter().map(|c| Rational::from_integer(c.clone())).collect())
                .collect()
        }
        (_, LatticeKind::Rat) => {
            // Rows annihilating span(H); x is in the preimage iff they kill m x.
            let ann = if basis.cols() == 0 {
                QMatrix::identity(gy.rank())
            } else {
                let rows = basis.transpose().nullspace();
                if rows.is_empty() {
                    return all();
                }
                QMatrix::from_rows(rows, gy.rank()).expect("shape")
            };
            let cond = ann.mul(m);
            match gx.lattice() {
                LatticeKind::Rat => cond.nullspace(),
                LatticeKind::Int => {
                    let scaled: Vec<Vec<Rational>> = cond
                        .row_vecs()
                        .iter()
                        .map(|r| {
                            crate::ogroups::matrix::primitive_integer(r)
                                .into_iter()
                                .map(Rational::from_integer)
                                .collect()
                        })
                        .collect();
                    let c = QMatrix::from_rows(scaled, g).expect("shape");
                    integer_kernel(&crate::ogroups::lattice::from_qmatrix(&c), g)
                        .into_iter()
                        .map(|v| v.into_iter().map(Rational::from_integer).collect())
                        .collect()
                }
            }
        }
    }
}

struct Codes {
    layer: &'static str,
    square: &'static str,
}

/// Per-layer embedding conditions and commuting squares for a node correspondence.
fn layer_conditions(x: &Bunch, y: &Bunch, image: &[Option<usize>], maps: &BTreeMap<String, QMatrix>, codes: Codes, r: &mut Report) {
    let xs = x.skeleton();
    let mut homs: Vec<Option<OGroupHom>> = vec![None; x.len()];
    for u in 0..x.len() {
        let id = xs.id(u);
        let Some(v) = image[u] else { continue };
        let Some(m) = maps.get(id) else {
            r.at(codes.layer, id, "no layer map");
            continue;
        };
        let h = match OGroupHom::new(x.group(u).clone(), y.group(v).clone(), m.clone()) {
            Ok(h) => h,
            Err(e) => {
                r.at(codes.layer, id, format!("layer map invalid: {e}"));
                continue;
            }
        };
        if !h.is_injective() {
            r.at(codes.layer, id, "layer map is not injective");
        }
        if !h.is_order_preserving() {
            r.at(codes.layer, id, "layer map is not order preserving");
        }
        if x.label(u) == Label::I && y.label(v) == Label::I {
            let hx = x.subgroup(u).expect("I-node");
            let hy = y.subgroup(v).expect("I-node");
            if hx.basis().iter().any(|b| !hy.contains(y.group(v), &h.apply(b))) {
                r.at(codes.layer, id, "H is not mapped into H");
            }
            let pre = preimage_generators(x.group(u), y.group(v), m, hy);
            if pre.iter().any(|p| !hx.contains(x.group(u), p)) {
                r.at(codes.layer, id, "an element outside H is mapped into H");
            }
        }
        if x.label(u) == Label::J && y.label(v) == Label::J {
            if let (Some(ax), Some(ay)) = (x.group(u).atom(), y.group(v).atom()) {
                if h.apply(&ax) != ay {
                    r.at(codes.layer, id, "lower cover of the unit is not preserved");
                }
            }
        }
        homs[u] = Some(h);
    }
    for u in 0..x.len() {
        for w in u + 1..x.len() {
            let (Some(hu), Some(hw), Some(u2), Some(w2)) = (&homs[u], &homs[w], image[u], image[w]) else { continue };
            if u2 > w2 {
                continue;
            }
            let lhs = hw.matrix().mul(x.system().transition(u, w).expect("ordered").matrix());
            let rhs = y.system().transition(u2, w2).expect("ordered").matrix().mul(hu.matrix());
            if lhs != rhs {
                r.at(codes.square, xs.id(u), format!("square to {} does not commute", xs.id(w)));
            }
        }
    }
}

/// Conditions for `x` to be a sub-bunch of `y` along per-layer inclusions.
pub fn subbunch_check(x: &Bunch, y: &Bunch, inclusions: &BTreeMap<String, QMatrix>) -> Report {
    let mut r = Report::new();
    let xs = x.skeleton();
    let ys = y.skeleton();
    if xs.least() != ys.least() {
        r.at("S1", xs.least(), format!("least nodes differ ({} in the larger bunch)", ys.least()));
    }
    let image: Vec<Option<usize>> = xs.ids().iter().map(|id| ys.index_of(id)).collect();
    let mut last: Option<usize> = None;
    for (u, im) in image.iter().enumerate() {
        let id = xs.id(u);
        match im {
            None => r.at("S2", id, "node missing from the larger bunch"),
            Some(v) => {
                if xs.label(u) != ys.label(*v) {
                    r.at("S2", id, format!("label {} vs {}", xs.label(u), ys.label(*v)));
                }
                if last.is_some_and(|l| *v <= l) {
                    r.at("S2", id, "node order not preserved");
                }
                last = Some(*v);
            }
        }
    }
    let mut maps = inclusions.clone();
    for u in 0..x.len() {
        let id = xs.id(u);
        if let Some(v) = image[u] {
            if !maps.contains_key(id) && x.group(u).same_lattice(y.group(v)) {
                maps.insert(id.to_owned(), QMatrix::identity(x.group(u).rank()));
            }
        }
    }
    layer_conditions(x, y, &image, &maps, Codes { layer: "S3", square: "S4" }, &mut r);
    r
}

/// Conditions for `e` to be an embedding of `x` into `y`.
pub fn embedding_check(x: &Bunch, y: &Bunch, e: &EmbeddingSpec) -> Report {
    let mut r = Report::new();
    let xs = x.skeleton();
    let ys = y.skeleton();
    let mut image: Vec<Option<usize>> = Vec::with_capacity(x.len());
    for u in 0..x.len() {
        let id = xs.id(u);
        let v = match e.node_map.get(id) {
            None => {
                r.at("E1", id, "node not mapped");
                None
            }
            Some(t) => match ys.index_of(t) {
                None => {
                    r.at("E1", id, format!("image {t} is not a node of the target"));
                    None
                }
                Some(v) => Some(v),
            },
        };
        image.push(v);
    }
    if image[0].is_some_and(|v| v != 0) {
        r.at("E1", xs.least(), "least node not mapped to the least node");
    }
    for u in 0..x.len() {
        let Some(v) = image[u] else { continue };
        if xs.label(u) != ys.label(v) {
            r.at("E1", xs.id(u), format!("label {} mapped to label {}", xs.label(u), ys.label(v)));
        }
        for w in u + 1..x.len() {
            if image[w].is_some_and(|vw| vw <= v) {
                r.at("E1", xs.id(u), format!("order with {} not strictly preserved", xs.id(w)));
            }
        }
    }
    layer_conditions(x, y, &image, &e.layer_maps, Codes { layer: "E2", square: "E2" }, &mut r);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn single(label: Label, g: OGroup) -> Bunch {
        let sk = Skeleton::new([("t", label)]).unwrap();
        Bunch::new(DirectSystem::new(sk, vec![g], vec![]).unwrap(), BTreeMap::new()).unwrap()
    }

    #[test]
    fn classify_by_least_label() {
        assert_eq!(bunch_classify(&single(Label::O, OGroup::trivial())), Classification { rank: RankClass::Odd, symm: true });
        assert_eq!(bunch_classify(&single(Label::J, OGroup::z(1))).rank, RankClass::EvenNonIdemF);
        assert!(!bunch_classify(&single(Label::J, OGroup::z(1))).symm);
        assert_eq!(bunch_classify(&single(Label::I, OGroup::trivial())).rank, RankClass::EvenIdemF);
    }

    #[test]
    fn j_node_needs_discrete_group() {
        assert!(bunch_validate(&single(Label::J, OGroup::trivial())).has_code("DISC"));
        assert!(bunch_validate(&single(Label::J, OGroup::q(1))).has_code("DISC"));
        assert!(bunch_validate(&single(Label::J, OGroup::z(1))).is_ok());
    }

    #[test]
    fn g2_violation() {
        let sk = Skeleton::new([("t", Label::J), ("u", Label::I)]).unwrap();
        let z = OGroup::z(1);
        let d = DirectSystem::new(sk, vec![z.clone(), z], vec![QMatrix::identity(1)]).unwrap();
        let b = Bunch::new(d, BTreeMap::new()).unwrap();
        let rep = bunch_validate(&b);
        assert!(rep.has_code("G2"));
        assert!(rep.render().starts_with("G2 node=t"));
    }

    #[test]
    fn g3_violation() {
        let sk = Skeleton::new([("t", Label::O), ("u", Label::I)]).unwrap();
        let z = OGroup::z(1);
        let d = DirectSystem::new(sk, vec![z.clone(), z], vec![QMatrix::identity(1)]).unwrap();
        let mut h = BTreeMap::new();
        h.insert("u".to_owned(), SubgroupSpec::new(vec![vec![crate::ogroups::q(2)]]));
        let b = Bunch::new(d, h).unwrap();
        assert!(bunch_validate(&b).has_code("G3"));
    }

    #[test]
    fn doubling_on_j_node_is_not_an_embedding() {
        let x = single(Label::J, OGroup::z(1));
        let mut e = EmbeddingSpec::identity_on(&x);
        assert!(embedding_check(&x, &x, &e).is_ok());
        e.layer_maps.insert("t".into(), QMatrix::from_i64(&[&[2]]));
        assert!(embedding_check(&x, &x, &e).has_code("E2"));
    }

    #[test]
    fn z_inside_z2_is_a_subbunch() {
        let x = single(Label::O, OGroup::z(1));
        let y = single(Label::O, OGroup::z(2));
        let mut inc = BTreeMap::new();
        inc.insert("t".to_owned(), QMatrix::from_i64(&[&[1], &[0]]));
        assert!(subbunch_check(&x, &y, &inc).is_ok());
        inc.insert("t".to_owned(), QMatrix::from_i64(&[&[0], &[1]]));
        assert!(subbunch_check(&x, &y, &inc).is_ok());
        inc.insert("t".to_owned(), QMatrix::from_i64(&[&[1], &[-1]]));
        assert!(subbunch_check(&x, &y, &inc).is_ok());
        inc.insert("t".to_owned(), QMatrix::from_i64(&[&[-1], &[0]]));
        assert!(subbunch_check(&x, &y, &inc).has_code("S3"));
    }

    #[test]
    fn h_reflection_is_required() {
        let x = single(Label::I, OGroup::z(1)).with_subgroup("t", SubgroupSpec::trivial()).unwrap();
        let y = single(Label::I, OGroup::z(1));
        assert!(bunch_validate(&x).is_ok());
        let rep = subbunch_check(&x, &y, &BTreeMap::new());
        assert!(rep.has_code("S3"), "{rep}");
        assert!(subbunch_check(&y, &x, &BTreeMap::new()).has_code("S3"));
    }
}
