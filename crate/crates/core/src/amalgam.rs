//! Amalgamation of V-formations of symmetric bunches with integer layers.
//!
//! The skeletons are merged into a chain; every system is extended over the merged
//! chain; each layer of the amalgam is the torsion-free pushout of the extended
//! embeddings; transitions are induced by the pushout property; and total orders
//! on the new layers are searched node by node, with backtracking.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::bunch::{bunch_classify, bunch_validate, embedding_check, Bunch, EmbeddingSpec};
use crate::dirsys::{ds_closure, ds_extend_embedding_family, DirectSystem, Label, Skeleton};
use crate::error::{Error, Result};
use crate::flechain::{map_element, AlgElement, FleChain, Tag};
use crate::ogroups::lattice::lattice_basis;
use crate::ogroups::{
    order_extension_candidates, pushout_of_maps, LatticeKind, OGroup, OrderConstraint, QMatrix, Rational, SubgroupSpec,
};
use crate::report::Report;

/// `Y <- X -> Z` along two embeddings.
#[derive(Clone, Debug)]
pub struct VFormation {
    pub x: Bunch,
    pub y: Bunch,
    pub z: Bunch,
    pub iota1: EmbeddingSpec,
    pub iota2: EmbeddingSpec,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SkeletonAmalgam {
    pub skeleton: Skeleton,
    /// Node ids of `Y` to node ids of the amalgam.
    pub nu1: BTreeMap<String, String>,
    /// Node ids of `Z` to node ids of the amalgam.
    pub nu2: BTreeMap<String, String>,
}

#[derive(Clone, Debug)]
pub struct AmalgamResult {
    pub w: Bunch,
    pub iota3: EmbeddingSpec,
    pub iota4: EmbeddingSpec,
    /// Functional matrix chosen for each layer of `w` (0x0 for trivial layers).
    pub orders: Vec<QMatrix>,
    pub note: String,
}

pub const AMALGAM_NOTE: &str =
    "layers are torsion-free group pushouts with searched lexicographic orders, not free products of l-groups";

/// Merges the chains so that the two images of `x` coincide; between consecutive
/// shared nodes the `y`-only nodes come first.
pub fn chain_strong_amalgam(
    x: &Skeleton,
    y: &Skeleton,
    z: &Skeleton,
    m1: &BTreeMap<String, String>,
    m2: &BTreeMap<String, String>,
) -> Result<SkeletonAmalgam> {
    merge_chains(x, y, z, m1, m2, &|_| 0, &|_| 0)
}

fn image_indices(x: &Skeleton, t: &Skeleton, m: &BTreeMap<String, String>) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for id in x.ids() {
        let v = m.get(id).ok_or_else(|| Error::Precondition(format!("node {id} is not mapped")))?;
        let i = t.require(v)?;
        if out.last().is_some_and(|&l| i <= l) {
            return Err(Error::Precondition("node map is not strictly increasing".into()));
        }
        out.push(i);
    }
    if out.first() != Some(&0) {
        return Err(Error::Precondition("least node is not mapped to the least node".into()));
    }
    Ok(out)
}

/// Within a gap, nodes are merged by nondecreasing key, `y` first on ties.
fn merge_chains(
    x: &Skeleton,
    y: &Skeleton,
    z: &Skeleton,
    m1: &BTreeMap<String, String>,
    m2: &BTreeMap<String, String>,
    key_y: &dyn Fn(usize) -> usize,
    key_z: &dyn Fn(usize) -> usize,
) -> Result<SkeletonAmalgam> {
    let iy = image_indices(x, y, m1)?;
    let iz = image_indices(x, z, m2)?;
    let mut nodes: Vec<(String, Label)> = Vec::new();
    let mut nu1 = BTreeMap::new();
    let mut nu2 = BTreeMap::new();
    let mut taken: std::collections::HashSet<String> = y.ids().iter().cloned().collect();
    let mut fresh = |id: &str| {
        let mut s = id.to_owned();
        while taken.contains(&s) {
            s.push('\'');
        }
        taken.insert(s.clone());
        s
    };
    for k in 0..x.len() {
        let (a, b) = (iy[k], iz[k]);
        if y.label(a) != z.label(b) {
            return Err(Error::Precondition(format!(
                "label conflict at shared node {}: {} vs {}",
                x.id(k),
                y.label(a),
                z.label(b)
            )));
        }
        let wid = y.id(a).to_owned();
        nodes.push((wid.clone(), y.label(a)));
        nu1.insert(y.id(a).to_owned(), wid.clone());
        nu2.insert(z.id(b).to_owned(), wid);
        let y_end = iy.get(k + 1).copied().unwrap_or(y.len());
        let z_end = iz.get(k + 1).copied().unwrap_or(z.len());
        let (mut p, mut q) = (a + 1, b + 1);
        while p < y_end || q < z_end {
            let take_y = q >= z_end || (p < y_end && key_y(p) <= key_z(q));
            if take_y {
                nodes.push((y.id(p).to_owned(), y.label(p)));
                nu1.insert(y.id(p).to_owned(), y.id(p).to_owned());
                p += 1;
            } else {
                let w = fresh(z.id(q));
                nodes.push((w.clone(), z.label(q)));
                nu2.insert(z.id(q).to_owned(), w);
                q += 1;
            }
        }
    }
    Ok(SkeletonAmalgam { skeleton: Skeleton::new(nodes)?, nu1, nu2 })
}

fn relabel(d: &DirectSystem, map: impl Fn(&str) -> String) -> Result<DirectSystem> {
    let sk = d.skeleton();
    let nodes = (0..sk.len()).map(|i| (map(sk.id(i)), sk.label(i)));
    d.relabel(Skeleton::new(nodes)?)
}

/// For each node `v` of `t`: nullity of `ς_{ι(p)→v} ∘ ι_p`, `p` the last `x`-node below `v`.
fn kernel_keys(x: &Bunch, t: &Bunch, e: &EmbeddingSpec) -> Result<Vec<usize>> {
    let iy = image_indices(x.skeleton(), t.skeleton(), &e.node_map)?;
    let mut keys = Vec::with_capacity(t.len());
    let mut k = 0;
    for v in 0..t.len() {
        while k + 1 < iy.len() && iy[k + 1] <= v {
            k += 1;
        }
        let m = &e.layer_maps[x.skeleton().id(k)];
        let through = t.system().transition(iy[k], v)?.matrix().mul(m);
        keys.push(through.cols() - through.rank());
    }
    Ok(keys)
}

fn reject_unsupported(v: &VFormation) -> Result<()> {
    for (name, b) in [("X", &v.x), ("Y", &v.y), ("Z", &v.z)] {
        let rep = bunch_validate(b);
        if !rep.is_ok() {
            return Err(Error::Rejected(format!("{name} is not a valid bunch:\n{rep}")));
        }
        if let Some(i) = (0..b.len()).find(|&i| b.label(i) == Label::J) {
            return Err(Error::Rejected(format!(
                "{name} has a J-node ({}); the classes with non-idempotent local falsa fail amalgamation, so only symmetric formations are accepted",
                b.skeleton().id(i)
            )));
        }
        if (0..b.len()).any(|i| b.group(i).rank() > 0 && b.group(i).lattice() == LatticeKind::Rat) {
            return Err(Error::Rejected(format!("{name} has a rational layer; only integer layers are supported")));
        }
    }
    let cx = bunch_classify(&v.x).rank;
    if bunch_classify(&v.y).rank != cx || bunch_classify(&v.z).rank != cx {
        return Err(Error::Rejected("the three bunches have different rank classes".into()));
    }
    for (name, t, e) in [("first", &v.y, &v.iota1), ("second", &v.z, &v.iota2)] {
        let rep = embedding_check(&v.x, t, e);
        if !rep.is_ok() {
            return Err(Error::Rejected(format!("{name} leg is not an embedding:\n{rep}")));
        }
    }
    Ok(())
}

const ORDER_CANDIDATES: usize = 3;
const ORDER_BUDGET: usize = 500;

struct Layer {
    rank: usize,
    j1: QMatrix,
    j2: QMatrix,
    proj: QMatrix,
    section: QMatrix,
}

/// Amalgam of a V-formation. Inside each gap the new nodes are ordered by the kernel
/// of the map out of the preceding shared layer, so nodes that kill more come later.
pub fn amalgamate(v: &VFormation) -> Result<AmalgamResult> {
    amalgamate_with(v, true)
}

fn amalgamate_with(v: &VFormation, kernel_aware: bool) -> Result<AmalgamResult> {
    reject_unsupported(v)?;
    let (xs, ys, zs) = (v.x.skeleton(), v.y.skeleton(), v.z.skeleton());

    let (mut ky, mut kz) = (vec![0; ys.len()], vec![0; zs.len()]);
    if kernel_aware {
        ky = kernel_keys(&v.x, &v.y, &v.iota1)?;
        kz = kernel_keys(&v.x, &v.z, &v.iota2)?;
    }
    let sa = merge_chains(xs, ys, zs, &v.iota1.node_map, &v.iota2.node_map, &|i| ky[i], &|i| kz[i])?;
    let kw = &sa.skeleton;

    let x_to_w = |id: &str| sa.nu1[&v.iota1.node_map[id]].clone();
    let xc = ds_closure(&relabel(v.x.system(), x_to_w)?, kw)?;
    let yc = ds_closure(&relabel(v.y.system(), |id| sa.nu1[id].clone())?, kw)?;
    let zc = ds_closure(&relabel(v.z.system(), |id| sa.nu2[id].clone())?, kw)?;

    let x_nodes: Vec<String> = xs.ids().iter().map(|id| x_to_w(id)).collect();
    let fam = |e: &EmbeddingSpec| -> BTreeMap<String, QMatrix> {
        xs.ids().iter().map(|id| (x_to_w(id), e.layer_maps[id].clone())).collect()
    };
    let i1 = ds_extend_embedding_family(&xc, &yc, &x_nodes, &fam(&v.iota1))?;
    let i2 = ds_extend_embedding_family(&xc, &zc, &x_nodes, &fam(&v.iota2))?;

    let n = kw.len();
    let mut layers = Vec::with_capacity(n);
    for u in 0..n {
        let id = kw.id(u);
        let po = pushout_of_maps(i1[id].matrix(), i2[id].matrix())?;
        layers.push(Layer { rank: po.rank, j1: po.j1, j2: po.j2, proj: po.projection, section: po.section });
    }
    let mut steps = Vec::with_capacity(n.saturating_sub(1));
    for u in 0..n.saturating_sub(1) {
        let d = yc.step(u).matrix().block_diag(zc.step(u).matrix());
        let s = layers[u + 1].proj.mul(&d).mul(&layers[u].section);
        if s.mul(&layers[u].proj) != layers[u + 1].proj.mul(&d) {
            return Err(Error::Failed(format!("induced transition {} -> {} is not well defined", kw.id(u), kw.id(u + 1))));
        }
        steps.push(s);
    }

    let orders = search_orders(&yc, &zc, &layers, &steps, kw)?;
    let groups: Vec<OGroup> = orders
        .iter()
        .cloned()
        .map(|f| if f.rows() == 0 { Ok(OGroup::trivial()) } else { OGroup::int_lex(f) })
        .collect::<Result<_>>()?;

    let y_at: BTreeMap<&str, usize> = sa.nu1.iter().map(|(y, w)| (w.as_str(), ys.require(y).expect("node"))).collect();
    let z_at: BTreeMap<&str, usize> = sa.nu2.iter().map(|(z, w)| (w.as_str(), zs.require(z).expect("node"))).collect();
    let mut subgroups = BTreeMap::new();
    for u in 0..n {
        if kw.label(u) != Label::I {
            continue;
        }
        let id = kw.id(u);
        let mut gens: Vec<Vec<Rational>> = Vec::new();
        if let Some(&yi) = y_at.get(id) {
            if let Some(h) = v.y.subgroup(yi) {
                gens.extend(h.basis().iter().map(|b| layers[u].j1.apply(b)));
            }
        }
        if let Some(&zi) = z_at.get(id) {
            if let Some(h) = v.z.subgroup(zi) {
                gens.extend(h.basis().iter().map(|b| layers[u].j2.apply(b)));
            }
        }
        if u > 0 {
            gens.extend(steps[u - 1].col_vecs());
        }
        let ints: Vec<Vec<BigInt>> = gens.iter().map(|g| g.iter().map(|c| c.to_integer()).collect()).collect();
        let basis = lattice_basis(&ints, layers[u].rank)
            .into_iter()
            .map(|b| b.into_iter().map(Rational::from_integer).collect())
            .collect();
        subgroups.insert(id.to_owned(), SubgroupSpec::new(basis));
    }

    let w = Bunch::new(DirectSystem::new(kw.clone(), groups, steps)?, subgroups)?;
    let spec = |nu: &BTreeMap<String, String>, pick: fn(&Layer) -> &QMatrix| EmbeddingSpec {
        node_map: nu.clone(),
        layer_maps: nu
            .iter()
            .map(|(src, wid)| (src.clone(), pick(&layers[kw.require(wid).expect("node")]).clone()))
            .collect(),
    };
    let iota3 = spec(&sa.nu1, |l| &l.j1);
    let iota4 = spec(&sa.nu2, |l| &l.j2);

    let mut rep = bunch_validate(&w);
    rep.extend(embedding_check(&v.y, &w, &iota3));
    rep.extend(embedding_check(&v.z, &w, &iota4));
    if !rep.is_ok() {
        return Err(Error::Failed(format!("constructed amalgam does not verify:\n{rep}")));
    }
    Ok(AmalgamResult { w, iota3, iota4, orders, note: AMALGAM_NOTE.into() })
}

/// Depth-first choice of layer orders in increasing node order.
fn search_orders(
    yc: &DirectSystem,
    zc: &DirectSystem,
    layers: &[Layer],
    steps: &[QMatrix],
    kw: &Skeleton,
) -> Result<Vec<QMatrix>> {
    let n = layers.len();
    let mut chosen: Vec<QMatrix> = Vec::with_capacity(n);
    let mut options: Vec<Vec<QMatrix>> = Vec::with_capacity(n);
    let mut budget = ORDER_BUDGET;
    let candidates_at = |u: usize, chosen: &[QMatrix]| -> Vec<QMatrix> {
        let l = &layers[u];
        if l.rank == 0 {
            return vec![QMatrix::zeros(0, 0)];
        }
        let mut cs = vec![
            OrderConstraint::new(yc.group(u).clone(), l.j1.clone()),
            OrderConstraint::new(zc.group(u).clone(), l.j2.clone()),
        ];
        if u > 0 && layers[u - 1].rank > 0 {
            let prev = OGroup::int_lex(chosen[u - 1].clone()).expect("chosen orders are invertible");
            cs.push(OrderConstraint::new(prev, steps[u - 1].clone()));
        }
        order_extension_candidates(l.rank, &cs, ORDER_CANDIDATES)
    };
    let mut first = candidates_at(0, &chosen);
    first.reverse();
    options.push(first);
    loop {
        let u = chosen.len();
        if u == n {
            return Ok(chosen);
        }
        match options[u].pop() {
            Some(f) => {
                chosen.push(f);
                if chosen.len() < n {
                    if budget == 0 {
                        break;
                    }
                    budget -= 1;
                    let mut next = candidates_at(chosen.len(), &chosen);
                    next.reverse();
                    options.push(next);
                }
            }
            None => {
                if u == 0 {
                    return Err(Error::Failed(format!("no layer order found at node {}", kw.id(0))));
                }
                options.pop();
                chosen.pop();
            }
        }
    }
    Err(Error::Failed("layer order search budget exhausted".into()))
}

/// Independent checks of an amalgam against its formation.
pub fn verify_amalgam(v: &VFormation, r: &AmalgamResult, bound: u32, count: usize, seed: u64) -> Report {
    let mut rep = bunch_validate(&r.w);
    rep.extend(embedding_check(&v.y, &r.w, &r.iota3));
    rep.extend(embedding_check(&v.z, &r.w, &r.iota4));
    if bunch_classify(&r.w).rank != bunch_classify(&v.x).rank {
        rep.global("AM-RANK", "rank class of the amalgam differs from the formation");
    }
    let (e13, e24) = match (v.iota1.then(&r.iota3), v.iota2.then(&r.iota4)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            rep.global("AM-SQ", format!("composites undefined: {e}"));
            return rep;
        }
    };
    for id in v.x.skeleton().ids() {
        if e13.node_map.get(id) != e24.node_map.get(id) {
            rep.at("AM-SQ", id, "node images differ");
        } else if e13.layer_maps.get(id) != e24.layer_maps.get(id) {
            rep.at("AM-SQ", id, "layer maps differ");
        }
    }
    let chains = (FleChain::new(v.x.clone()), FleChain::new(v.y.clone()), FleChain::new(v.z.clone()), FleChain::new(r.w.clone()));
    let (Ok(cx), Ok(cy), Ok(cz), Ok(cw)) = chains else {
        rep.global("AM-SQ", "algebra-level check skipped: a bunch is invalid");
        return rep;
    };
    let mut bad = 0;
    for a in cx.sample(bound, count, seed) {
        let via_y = map_element(&cx, &cy, &v.iota1, &a).and_then(|b| map_element(&cy, &cw, &r.iota3, &b));
        let via_z = map_element(&cx, &cz, &v.iota2, &a).and_then(|b| map_element(&cz, &cw, &r.iota4, &b));
        let ok = match (&via_y, &via_z) {
            (Some(p), Some(q)) => p == q && cw.check(p).is_ok(),
            _ => false,
        };
        if !ok && bad < 5 {
            bad += 1;
            rep.global("AM-SQ", format!("element {} maps differently along the two legs", cx.describe(&a)));
        }
    }
    rep
}

/// A pair `y`, `z` outside the images of `X` that the amalgam identifies.
#[derive(Clone, Debug)]
pub struct StrongApViolation {
    pub y: AlgElement,
    pub z: AlgElement,
    pub image: AlgElement,
}

fn in_image(x: &Bunch, t: &Bunch, e: &EmbeddingSpec, a: &AlgElement) -> bool {
    let tid = t.skeleton().id(a.node);
    let Some((xid, _)) = e.node_map.iter().find(|(_, v)| v.as_str() == tid) else { return false };
    let m = &e.layer_maps[xid];
    let xi = x.skeleton().require(xid).expect("node");
    match m.solve(&a.coords) {
        None => false,
        Some(sol) if sol.iter().all(|c| c.is_integer()) || m.cols() == 0 => {
            a.tag == Tag::Plain || x.in_h(xi, &sol)
        }
        Some(_) => {
            // The rational solution is unique for an injective map.
            false
        }
    }
}

/// Searches layer elements with coordinates in `[-bound, bound]` for a strong-amalgamation failure.
pub fn strong_violations(v: &VFormation, r: &AmalgamResult, bound: i64) -> Vec<StrongApViolation> {
    let (Ok(cy), Ok(cz), Ok(cw)) = (FleChain::new(v.y.clone()), FleChain::new(v.z.clone()), FleChain::new(r.w.clone())) else {
        return Vec::new();
    };
    let elems = |c: &FleChain| -> Vec<AlgElement> {
        let b = c.bunch();
        let mut out = Vec::new();
        for u in 0..b.len() {
            for x in crate::ogroups::sample::integer_box(b.group(u).rank(), bound) {
                if b.in_h(u, &x) {
                    out.push(AlgElement::dotted(u, x.clone()));
                }
                out.push(AlgElement::plain(u, x));
            }
        }
        out
    };
    let outside_y: Vec<(AlgElement, AlgElement)> = elems(&cy)
        .into_iter()
        .filter(|a| !in_image(&v.x, &v.y, &v.iota1, a))
        .filter_map(|a| map_element(&cy, &cw, &r.iota3, &a).map(|w| (a, w)))
        .collect();
    let mut out = Vec::new();
    for b in elems(&cz) {
        if in_image(&v.x, &v.z, &v.iota2, &b) {
            continue;
        }
        let Some(wb) = map_element(&cz, &cw, &r.iota4, &b) else { continue };
        for (a, wa) in &outside_y {
            if *wa == wb {
                out.push(StrongApViolation { y: a.clone(), z: b.clone(), image: wb.clone() });
            }
        }
    }
    // Simplest witnesses first: plain before dotted, then small and positive.
    let key = |v: &StrongApViolation| {
        let c = &v.y.coords;
        let l1: Rational = c.iter().map(|x| x.abs()).sum();
        (v.y.tag != Tag::Plain, v.z.tag != Tag::Plain, l1, c.iter().any(|x| x < &Rational::from_integer(0.into())))
    };
    out.sort_by(|a, b| key(a).cmp(&key(b)));
    out
}

/// The doubling formation inside the two-node even shape with idempotent falsum:
/// node `0` trivial, node `1` carrying `Z`, both I-nodes with `H = G`, and both legs
/// multiplying the `Z` layer by 2.
pub fn strong_ap_formation() -> VFormation {
    let b = Bunch::build(
        vec![("0", Label::I, OGroup::trivial()), ("1", Label::I, OGroup::z(1))],
        vec![QMatrix::zeros(1, 0)],
        vec![],
    )
    .expect("valid");
    let mut e = EmbeddingSpec::default();
    e.node_map.insert("0".into(), "0".into());
    e.node_map.insert("1".into(), "1".into());
    e.layer_maps.insert("0".into(), QMatrix::zeros(0, 0));
    e.layer_maps.insert("1".into(), QMatrix::from_i64(&[&[2]]));
    VFormation { x: b.clone(), y: b.clone(), z: b, iota1: e.clone(), iota2: e }
}

/// Amalgamates the doubling formation and returns it, its amalgam, and a witness
/// that the amalgam is not strong.
pub fn strong_ap_counterwitness() -> Result<(VFormation, AmalgamResult, StrongApViolation)> {
    let v = strong_ap_formation();
    let r = amalgamate(&v)?;
    let w = strong_violations(&v, &r, 2)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Failed("no strong-amalgamation witness found".into()))?;
    Ok((v, r, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::sugihara;

    fn ident_spec(pairs: &[(&str, &str, QMatrix)]) -> EmbeddingSpec {
        let mut e = EmbeddingSpec::default();
        for (a, b, m) in pairs {
            e.node_map.insert(a.to_string(), b.to_string());
            e.layer_maps.insert(a.to_string(), m.clone());
        }
        e
    }

    #[test]
    fn skeleton_merge_puts_y_first() {
        let x = Skeleton::new([("t", Label::O)]).unwrap();
        let y = Skeleton::new([("t", Label::O), ("a", Label::I)]).unwrap();
        let z = Skeleton::new([("t", Label::O), ("b", Label::I)]).unwrap();
        let m: BTreeMap<String, String> = [("t".to_string(), "t".to_string())].into();
        let sa = chain_strong_amalgam(&x, &y, &z, &m, &m).unwrap();
        assert_eq!(sa.skeleton.ids(), &["t", "a", "b"]);
    }

    #[test]
    fn skeleton_merge_rejects_label_conflict() {
        let x = Skeleton::new([("t", Label::I)]).unwrap();
        let y = Skeleton::new([("t", Label::I)]).unwrap();
        let z = Skeleton::new([("t", Label::O)]).unwrap();
        let m: BTreeMap<String, String> = [("t".to_string(), "t".to_string())].into();
        assert!(chain_strong_amalgam(&x, &y, &z, &m, &m).is_err());
    }

    #[test]
    fn sugihara_triple() {
        let x = sugihara(1, true);
        let y = sugihara(2, true);
        let z = Bunch::build(
            vec![("t", Label::O, OGroup::trivial()), ("b", Label::I, OGroup::trivial())],
            vec![QMatrix::zeros(0, 0)],
            vec![],
        )
        .unwrap();
        let e = ident_spec(&[("t", "t", QMatrix::zeros(0, 0))]);
        let v = VFormation { x, y, z, iota1: e.clone(), iota2: e };
        let r = amalgamate(&v).unwrap();
        assert_eq!(r.w.skeleton().ids(), &["t", "a", "b"]);
        assert!(verify_amalgam(&v, &r, 3, 50, 1).is_ok());
    }

    #[test]
    fn free_product_of_planes_has_rank_three() {
        let x = Bunch::build(vec![("t", Label::O, OGroup::z(1))], vec![], vec![]).unwrap();
        let y = Bunch::build(vec![("t", Label::O, OGroup::z(2))], vec![], vec![]).unwrap();
        let e = ident_spec(&[("t", "t", QMatrix::from_i64(&[&[1], &[0]]))]);
        let v = VFormation { x, y: y.clone(), z: y, iota1: e.clone(), iota2: e };
        let r = amalgamate(&v).unwrap();
        assert_eq!(r.w.group(0).rank(), 3);
        assert!(verify_amalgam(&v, &r, 3, 100, 2).is_ok());
    }

    fn zero_transition_formation() -> VFormation {
        let x = Bunch::build(vec![("t", Label::O, OGroup::z(1))], vec![], vec![]).unwrap();
        let y = Bunch::build(
            vec![("t", Label::O, OGroup::z(1)), ("a", Label::I, OGroup::trivial())],
            vec![QMatrix::zeros(0, 1)],
            vec![],
        )
        .unwrap();
        let z = Bunch::build(
            vec![("t", Label::O, OGroup::z(1)), ("b", Label::I, OGroup::z(1))],
            vec![QMatrix::identity(1)],
            vec![],
        )
        .unwrap();
        let e = ident_spec(&[("t", "t", QMatrix::identity(1))]);
        VFormation { x, y, z, iota1: e.clone(), iota2: e }
    }

    #[test]
    fn killing_node_goes_last() {
        let v = zero_transition_formation();
        let r = amalgamate(&v).unwrap();
        assert_eq!(r.w.skeleton().ids(), &["t", "b", "a"]);
        assert!(verify_amalgam(&v, &r, 3, 100, 3).is_ok());
        assert!(amalgamate_with(&v, false).is_err());
    }

    #[test]
    fn j_nodes_rejected() {
        let b = crate::catalog::j_integers();
        let e = EmbeddingSpec::identity_on(&b);
        let v = VFormation { x: b.clone(), y: b.clone(), z: b, iota1: e.clone(), iota2: e };
        assert!(matches!(amalgamate(&v), Err(Error::Rejected(_))));
    }

    #[test]
    fn doubling_is_not_strong() {
        let (_, r, w) = strong_ap_counterwitness().unwrap();
        assert_eq!(r.w.group(1).rank(), 1);
        assert_eq!(w.y.coords, w.z.coords);
    }
}
