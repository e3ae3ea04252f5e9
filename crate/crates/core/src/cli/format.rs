//! JSON documents. Every document carries `format_version` and a `type` tag;
//! rationals are `"p/q"` strings (plain JSON integers are accepted on input) and
//! matrices are row-major arrays of rows.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::amalgam::{AmalgamResult, VFormation};
use crate::bunch::{Bunch, EmbeddingSpec};
use crate::dirsys::{DirectSystem, Label, Skeleton};
use crate::error::{Error, Result};
use crate::flechain::FiniteChainTable;
use crate::ogroups::{format_rational, parse_rational, LatticeKind, OGroup, QMatrix, Rational, SubgroupSpec};

pub const FORMAT_VERSION: &str = "1";

/// An exact rational that serializes as a string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub Rational);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Rat;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as \"p/q\" or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rat, E> {
                parse_rational(v).map(Rat).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rat, E> {
                Ok(Rat(Rational::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rat, E> {
                Ok(Rat(Rational::from_integer(v.into())))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Rat, E> {
                Err(E::custom(format!("floating-point value {v} is not exact; write it as \"p/q\"")))
            }
        }
        d.deserialize_any(V)
    }
}

pub type Matrix = Vec<Vec<Rat>>;
pub type Vector = Vec<Rat>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeDoc {
    Int,
    Rat,
}

/// Rank 0 is the trivial group; `functionals` defaults to the identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functionals: Option<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeDoc {
    pub id: String,
    pub label: Label,
    #[serde(default = "trivial_group")]
    pub group: GroupDoc,
    /// Basis of `H` at an I-node; the full group when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Vec<Vector>>,
}

fn trivial_group() -> GroupDoc {
    GroupDoc { rank: 0, lattice: None, functionals: None }
}

/// Nodes in increasing order and the transitions between consecutive nodes;
/// omitted transitions are zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BunchDoc {
    pub nodes: Vec<NodeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transitions: Option<Vec<Matrix>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkeletonNodeDoc {
    pub id: String,
    pub label: Label,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkeletonDoc {
    pub nodes: Vec<SkeletonNodeDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableDoc {
    pub mul: Vec<Vec<usize>>,
    pub t: usize,
    pub f: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingDoc {
    pub node_map: BTreeMap<String, String>,
    pub layer_maps: BTreeMap<String, Matrix>,
}

/// A bunch given inline or as a path relative to the referring document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BunchRef {
    Path { path: String },
    Inline(BunchDoc),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VFormationDoc {
    pub x: BunchRef,
    pub y: BunchRef,
    pub z: BunchRef,
    pub iota1: EmbeddingDoc,
    pub iota2: EmbeddingDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmalgamDoc {
    pub w: BunchDoc,
    pub iota3: EmbeddingDoc,
    pub iota4: EmbeddingDoc,
    pub orders: BTreeMap<String, Matrix>,
    #[serde(default)]
    pub note: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementsDoc {
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Payload {
    Bunch(BunchDoc),
    System(BunchDoc),
    Skeleton(SkeletonDoc),
    Table(TableDoc),
    Embedding(EmbeddingDoc),
    Vformation(VFormationDoc),
    Amalgam(AmalgamDoc),
    Elements(ElementsDoc),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Bunch(_) => "bunch",
            Payload::System(_) => "system",
            Payload::Skeleton(_) => "skeleton",
            Payload::Table(_) => "table",
            Payload::Embedding(_) => "embedding",
            Payload::Vformation(_) => "vformation",
            Payload::Amalgam(_) => "amalgam",
            Payload::Elements(_) => "elements",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub format_version: String,
    #[serde(flatten)]
    pub payload: Payload,
}

impl Document {
    pub fn new(payload: Payload) -> Self {
        Document { format_version: FORMAT_VERSION.into(), payload }
    }

    /// Parses and checks the version; errors carry serde's line and column.
    pub fn parse(text: &str) -> Result<Self> {
        let d: Document = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if d.format_version != FORMAT_VERSION {
            return Err(Error::Parse(format!("unknown format_version {:?}", d.format_version)));
        }
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }
}

/// A parsed document with the directory that relative paths resolve against.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub doc: Document,
    pub base: PathBuf,
}

pub fn load(path: &Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let doc = Document::parse(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok(Loaded { doc, base })
}

fn rats(v: &[Rat]) -> Vec<Rational> {
    v.iter().map(|r| r.0.clone()).collect()
}

fn to_rats(v: &[Rational]) -> Vector {
    v.iter().cloned().map(Rat).collect()
}

pub fn matrix_from_doc(m: &Matrix, rows: usize, cols: usize, what: &str) -> Result<QMatrix> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return Err(Error::Dimension(format!("{what}: expected a {rows}x{cols} matrix")));
    }
    QMatrix::from_rows(m.iter().map(|r| rats(r)).collect(), cols)
}

pub fn matrix_to_doc(m: &QMatrix) -> Matrix {
    m.row_vecs().iter().map(|r| to_rats(r)).collect()
}

pub fn group_from_doc(g: &GroupDoc) -> Result<OGroup> {
    if g.rank == 0 {
        return Ok(OGroup::trivial());
    }
    let lattice = match g.lattice {
        Some(LatticeDoc::Rat) => LatticeKind::Rat,
        _ => LatticeKind::Int,
    };
    let f = match &g.functionals {
        Some(m) => matrix_from_doc(m, g.rank, g.rank, "functionals")?,
        None => QMatrix::identity(g.rank),
    };
    OGroup::lex(lattice, f)
}

pub fn group_to_doc(g: &OGroup) -> GroupDoc {
    if g.rank() == 0 {
        return trivial_group();
    }
    let lattice = match g.lattice() {
        LatticeKind::Int => LatticeDoc::Int,
        LatticeKind::Rat => LatticeDoc::Rat,
    };
    GroupDoc { rank: g.rank(), lattice: Some(lattice), functionals: Some(matrix_to_doc(g.functionals())) }
}

fn system_from_doc(d: &BunchDoc) -> Result<(DirectSystem, BTreeMap<String, SubgroupSpec>)> {
    let sk = Skeleton::new(d.nodes.iter().map(|n| (n.id.clone(), n.label)))?;
    let groups: Vec<OGroup> = d.nodes.iter().map(|n| group_from_doc(&n.group)).collect::<Result<_>>()?;
    let n = groups.len();
    let steps = match &d.transitions {
        None => (1..n).map(|i| QMatrix::zeros(groups[i].rank(), groups[i - 1].rank())).collect(),
        Some(ts) => {
            if ts.len() + 1 != n {
                return Err(Error::Dimension(format!("{} transitions given for {n} nodes", ts.len())));
            }
            ts.iter()
                .enumerate()
                .map(|(i, m)| {
                    let what = format!("transition {} -> {}", d.nodes[i].id, d.nodes[i + 1].id);
                    matrix_from_doc(m, groups[i + 1].rank(), groups[i].rank(), &what)
                })
                .collect::<Result<_>>()?
        }
    };
    let mut subgroups = BTreeMap::new();
    for node in &d.nodes {
        if let Some(basis) = &node.subgroup {
            subgroups.insert(node.id.clone(), SubgroupSpec::new(basis.iter().map(|b| rats(b)).collect()));
        }
    }
    Ok((DirectSystem::new(sk, groups, steps)?, subgroups))
}

pub fn bunch_from_doc(d: &BunchDoc) -> Result<Bunch> {
    let (sys, subgroups) = system_from_doc(d)?;
    Bunch::new(sys, subgroups)
}

pub fn direct_system_from_doc(d: &BunchDoc) -> Result<DirectSystem> {
    let (sys, subgroups) = system_from_doc(d)?;
    if let Some(id) = subgroups.keys().next() {
        return Err(Error::Parse(format!("a system document has no subgroups (node {id})")));
    }
    Ok(sys)
}

pub fn system_to_doc(d: &DirectSystem) -> BunchDoc {
    let sk = d.skeleton();
    let nodes = (0..d.len())
        .map(|i| NodeDoc { id: sk.id(i).to_owned(), label: sk.label(i), group: group_to_doc(d.group(i)), subgroup: None })
        .collect();
    let transitions = (0..d.len().saturating_sub(1)).map(|i| matrix_to_doc(d.step(i).matrix())).collect();
    BunchDoc { nodes, transitions: Some(transitions) }
}

pub fn bunch_to_doc(b: &Bunch) -> BunchDoc {
    let mut doc = system_to_doc(b.system());
    for (i, n) in doc.nodes.iter_mut().enumerate() {
        if b.label(i) == Label::I {
            n.subgroup = b.subgroup(i).map(|h| h.basis().iter().map(|v| to_rats(v)).collect());
        }
    }
    doc
}

pub fn skeleton_from_doc(d: &SkeletonDoc) -> Result<Skeleton> {
    Skeleton::new(d.nodes.iter().map(|n| (n.id.clone(), n.label)))
}

pub fn table_from_doc(d: &TableDoc) -> Result<FiniteChainTable> {
    FiniteChainTable::new(d.mul.clone(), d.t, d.f)
}

pub fn table_to_doc(t: &FiniteChainTable) -> TableDoc {
    TableDoc { mul: t.mul.clone(), t: t.t, f: t.f }
}

/// Layer maps take their shapes from the groups of `x` and `y`.
pub fn embedding_from_doc(d: &EmbeddingDoc, x: &Bunch, y: &Bunch) -> Result<EmbeddingSpec> {
    let mut e = EmbeddingSpec { node_map: d.node_map.clone(), layer_maps: BTreeMap::new() };
    for (u, m) in &d.layer_maps {
        let ui = x.skeleton().require(u)?;
        let target = d.node_map.get(u).map(String::as_str).unwrap_or(u);
        let vi = y.skeleton().require(target)?;
        let q = matrix_from_doc(m, y.group(vi).rank(), x.group(ui).rank(), &format!("layer map at {u}"))?;
        e.layer_maps.insert(u.clone(), q);
    }
    Ok(e)
}

pub fn embedding_to_doc(e: &EmbeddingSpec) -> EmbeddingDoc {
    EmbeddingDoc {
        node_map: e.node_map.clone(),
        layer_maps: e.layer_maps.iter().map(|(k, m)| (k.clone(), matrix_to_doc(m))).collect(),
    }
}

pub fn resolve_bunch(r: &BunchRef, base: &Path) -> Result<Bunch> {
    match r {
        BunchRef::Inline(d) => bunch_from_doc(d),
        BunchRef::Path { path } => {
            let loaded = load(&base.join(path))?;
            match loaded.doc.payload {
                Payload::Bunch(d) => bunch_from_doc(&d),
                other => Err(Error::Parse(format!("{path}: expected a bunch document, found {}", other.kind()))),
            }
        }
    }
}

pub fn vformation_from_doc(d: &VFormationDoc, base: &Path) -> Result<VFormation> {
    let x = resolve_bunch(&d.x, base)?;
    let y = resolve_bunch(&d.y, base)?;
    let z = resolve_bunch(&d.z, base)?;
    let iota1 = embedding_from_doc(&d.iota1, &x, &y)?;
    let iota2 = embedding_from_doc(&d.iota2, &x, &z)?;
    Ok(VFormation { x, y, z, iota1, iota2 })
}

pub fn vformation_to_doc(v: &VFormation) -> VFormationDoc {
    VFormationDoc {
        x: BunchRef::Inline(bunch_to_doc(&v.x)),
        y: BunchRef::Inline(bunch_to_doc(&v.y)),
        z: BunchRef::Inline(bunch_to_doc(&v.z)),
        iota1: embedding_to_doc(&v.iota1),
        iota2: embedding_to_doc(&v.iota2),
    }
}

pub fn amalgam_to_doc(r: &AmalgamResult, report: Option<Vec<String>>) -> AmalgamDoc {
    let sk = r.w.skeleton();
    AmalgamDoc {
        w: bunch_to_doc(&r.w),
        iota3: embedding_to_doc(&r.iota3),
        iota4: embedding_to_doc(&r.iota4),
        orders: r.orders.iter().enumerate().map(|(i, f)| (sk.id(i).to_owned(), matrix_to_doc(f))).collect(),
        note: r.note.clone(),
        report,
    }
}

pub fn amalgam_from_doc(d: &AmalgamDoc, v: &VFormation) -> Result<AmalgamResult> {
    let w = bunch_from_doc(&d.w)?;
    let iota3 = embedding_from_doc(&d.iota3, &v.y, &w)?;
    let iota4 = embedding_from_doc(&d.iota4, &v.z, &w)?;
    let orders = (0..w.len()).map(|i| w.group(i).functionals().clone()).collect();
    Ok(AmalgamResult { w, iota3, iota4, orders, note: d.note.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bunch::bunch_validate;

    #[test]
    fn minimal_odd_bunch_parses() {
        let d = Document::parse(
            r#"{"format_version": "1", "type": "bunch", "nodes": [{"id": "t", "label": "O", "group": {"rank": 0}}]}"#,
        )
        .unwrap();
        let Payload::Bunch(b) = d.payload else { panic!() };
        assert_eq!(bunch_from_doc(&b).unwrap().len(), 1);
    }

    #[test]
    fn fractions_stay_exact() {
        let d = Document::parse(
            r#"{"format_version": "1", "type": "bunch", "nodes": [
                {"id": "t", "label": "O", "group": {"rank": 1, "lattice": "rat", "functionals": [["1/3"]]}}]}"#,
        )
        .unwrap();
        let Payload::Bunch(b) = d.payload else { panic!() };
        let g = group_from_doc(&b.nodes[0].group).unwrap();
        assert_eq!(g.functionals().get(0, 0), &Rational::new(1.into(), 3.into()));
    }

    #[test]
    fn floats_rejected() {
        let r = Document::parse(
            r#"{"format_version": "1", "type": "bunch", "nodes": [
                {"id": "t", "label": "O", "group": {"rank": 1, "functionals": [[0.5]]}}]}"#,
        );
        assert!(matches!(r, Err(Error::Parse(_))));
    }

    #[test]
    fn trivial_j_node_parses_but_is_invalid() {
        let d = Document::parse(
            r#"{"format_version": "1", "type": "bunch", "nodes": [{"id": "t", "label": "J"}]}"#,
        )
        .unwrap();
        let Payload::Bunch(b) = d.payload else { panic!() };
        let b = bunch_from_doc(&b).unwrap();
        assert!(bunch_validate(&b).has_code("DISC"));
    }

    #[test]
    fn unknown_version_rejected() {
        let r = Document::parse(r#"{"format_version": "7", "type": "elements", "elements": []}"#);
        assert!(r.is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let Err(Error::Parse(msg)) = Document::parse("{\n  \"format_version\": \"1\",\n  \"type\": \"bunch\",\n  \"nodes\": [}\n") else {
            panic!()
        };
        assert!(msg.contains("line 4"), "{msg}");
    }
}
