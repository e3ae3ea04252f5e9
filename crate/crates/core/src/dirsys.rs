//! Skeletons and direct systems of ordered groups over finite chains.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::ogroups::{OGroup, OGroupHom, QMatrix};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Label {
    O,
    J,
    I,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::O => "O",
            Label::J => "J",
            Label::I => "I",
        })
    }
}

/// Finite chain of node ids (listed in increasing order) with an O/J/I label per node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    ids: Vec<String>,
    labels: Vec<Label>,
    index: HashMap<String, usize>,
}

impl Skeleton {
    pub fn new<S: Into<String>>(nodes: impl IntoIterator<Item = (S, Label)>) -> Result<Self> {
        let mut ids = Vec::new();
        let mut labels = Vec::new();
        let mut index = HashMap::new();
        for (id, l) in nodes {
            let id = id.into();
            if index.insert(id.clone(), ids.len()).is_some() {
                return Err(Error::Skeleton(format!("duplicate node id {id:?}")));
            }
            ids.push(id);
            labels.push(l);
        }
        if ids.is_empty() {
            return Err(Error::Skeleton("a skeleton needs at least one node".into()));
        }
        Ok(Skeleton { ids, labels, index })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn label(&self, i: usize) -> Label {
        self.labels[i]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn require(&self, id: &str) -> Result<usize> {
        self.index_of(id).ok_or_else(|| Error::UnknownNode(id.to_owned()))
    }

    pub fn least(&self) -> &str {
        &self.ids[0]
    }

    /// Violations of the label table: O only at the least node, others J or I.
    pub fn partition_violations(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 && *l == Label::O {
                out.push((self.ids[i].clone(), "label O away from the least node".to_owned()));
            }
        }
        out
    }
}

/// Groups on the nodes of a skeleton with consecutive transitions and, optionally,
/// explicitly given transitions between non-consecutive nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectSystem {
    skeleton: Skeleton,
    groups: Vec<OGroup>,
    steps: Vec<OGroupHom>,
    explicit: BTreeMap<(usize, usize), OGroupHom>,
}

impl DirectSystem {
    /// `steps[i]` goes from node `i` to node `i + 1`.
    pub fn new(skeleton: Skeleton, groups: Vec<OGroup>, steps: Vec<QMatrix>) -> Result<Self> {
        Self::with_explicit(skeleton, groups, steps, BTreeMap::new())
    }

    pub fn with_explicit(
        skeleton: Skeleton,
        groups: Vec<OGroup>,
        steps: Vec<QMatrix>,
        explicit: BTreeMap<(usize, usize), QMatrix>,
    ) -> Result<Self> {
        let n = skeleton.len();
        if groups.len() != n {
            return Err(Error::Dimension(format!("{} groups for {n} nodes", groups.len())));
        }
        if steps.len() + 1 != n {
            return Err(Error::Dimension(format!("{} consecutive transitions for {n} nodes", steps.len())));
        }
        let steps = steps
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                OGroupHom::new(groups[i].clone(), groups[i + 1].clone(), m).map_err(|e| {
                    Error::InvalidBunch(format!("transition {} -> {}: {e}", skeleton.id(i), skeleton.id(i + 1)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut ex = BTreeMap::new();
        for ((u, v), m) in explicit {
            if u > v || v >= n {
                return Err(Error::Precondition(format!("explicit transition ({u}, {v}) is not an ordered node pair")));
            }
            let h = OGroupHom::new(groups[u].clone(), groups[v].clone(), m).map_err(|e| {
                Error::InvalidBunch(format!("transition {} -> {}: {e}", skeleton.id(u), skeleton.id(v)))
            })?;
            ex.insert((u, v), h);
        }
        Ok(DirectSystem { skeleton, groups, steps, explicit: ex })
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    pub fn len(&self) -> usize {
        self.skeleton.len()
    }

    pub fn is_empty(&self) -> bool {
        self.skeleton.is_empty()
    }

    pub fn group(&self, i: usize) -> &OGroup {
        &self.groups[i]
    }

    pub fn groups(&self) -> &[OGroup] {
        &self.groups
    }

    pub fn step(&self, i: usize) -> &OGroupHom {
        &self.steps[i]
    }

    pub fn explicit(&self) -> &BTreeMap<(usize, usize), OGroupHom> {
        &self.explicit
    }

    /// Same system on a relabelled skeleton of the same length.
    pub fn relabel(&self, skeleton: Skeleton) -> Result<Self> {
        if skeleton.len() != self.len() {
            return Err(Error::Dimension("relabelling changes the number of nodes".into()));
        }
        Ok(DirectSystem { skeleton, ..self.clone() })
    }

    /// Same skeleton and transitions, new layer orders (lattices must match).
    pub fn with_groups(&self, groups: Vec<OGroup>) -> Result<Self> {
        let steps = self.steps.iter().map(|h| h.matrix().clone()).collect();
        let ex = self.explicit.iter().map(|(k, h)| (*k, h.matrix().clone())).collect();
        Self::with_explicit(self.skeleton.clone(), groups, steps, ex)
    }

    /// `ς_{u→v}`: the explicit transition when given, else the composite of consecutive ones.
    pub fn transition(&self, u: usize, v: usize) -> Result<OGroupHom> {
        if u > v {
            return Err(Error::Precondition(format!(
                "no transition from {} down to {}",
                self.skeleton.id(u),
                self.skeleton.id(v)
            )));
        }
        if let Some(h) = self.explicit.get(&(u, v)) {
            return Ok(h.clone());
        }
        let mut h = OGroupHom::identity(self.groups[u].clone());
        for k in u..v {
            h = h.then(&self.steps[k])?;
        }
        Ok(h)
    }

    pub fn transition_by_id(&self, u: &str, v: &str) -> Result<OGroupHom> {
        self.transition(self.skeleton.require(u)?, self.skeleton.require(v)?)
    }

    /// All `ς_{u→v}` for `u <= v`, indexed `[u][v - u]`.
    pub fn transition_table(&self) -> Vec<Vec<OGroupHom>> {
        (0..self.len())
            .map(|u| (u..self.len()).map(|v| self.transition(u, v).expect("ordered pair")).collect())
            .collect()
    }
}

/// Identity law, composition law on every triple, and order preservation.
pub fn ds_validate(d: &DirectSystem) -> Report {
    let mut r = Report::new();
    let n = d.len();
    let sk = d.skeleton();
    for ((u, v), h) in d.explicit() {
        if u == v && h.matrix() != &QMatrix::identity(d.group(*u).rank()) {
            r.at("G1", sk.id(*u), "transition to itself is not the identity");
        }
    }
    for u in 0..n {
        for v in u..n {
            let Ok(uv) = d.transition(u, v) else { continue };
            if !uv.is_order_preserving() {
                r.at("ORD", sk.id(u), format!("transition to {} is not order preserving", sk.id(v)));
            }
            if d.explicit().is_empty() {
                continue;
            }
            for w in v..n {
                let vw = d.transition(v, w).expect("ordered");
                let uw = d.transition(u, w).expect("ordered");
                if vw.matrix().mul(uv.matrix()) != *uw.matrix() {
                    r.at("G1", sk.id(u), format!("composition through {} to {} fails", sk.id(v), sk.id(w)));
                }
            }
        }
    }
    r
}

pub fn ds_transition(d: &DirectSystem, u: &str, v: &str) -> Result<OGroupHom> {
    d.transition_by_id(u, v)
}

/// Checks that `alpha`'s nodes occur in `beta` in the same order with the same least node,
/// and returns for each `beta` node the index of its `alpha`-predecessor.
fn alpha_predecessors(alpha: &Skeleton, beta: &Skeleton) -> Result<Vec<usize>> {
    if alpha.least() != beta.least() {
        return Err(Error::Precondition(format!(
            "least nodes differ: {} vs {}",
            alpha.least(),
            beta.least()
        )));
    }
    let mut last = None;
    for id in alpha.ids() {
        let b = beta.require(id).map_err(|_| Error::Precondition(format!("node {id} missing from the superchain")))?;
        if last.is_some_and(|l| b <= l) {
            return Err(Error::Precondition("superchain reorders the nodes".into()));
        }
        last = Some(b);
    }
    let mut pred = Vec::with_capacity(beta.len());
    let mut cur = 0;
    for id in beta.ids() {
        if let Some(a) = alpha.index_of(id) {
            cur = a;
        }
        pred.push(cur);
    }
    Ok(pred)
}

/// The limit of the system restricted to the `alpha`-nodes below `s`, with its canonical maps.
pub fn ds_prefix_limit(d: &DirectSystem, beta: &Skeleton, s: &str) -> Result<(OGroup, Vec<(String, OGroupHom)>)> {
    let alpha = d.skeleton();
    let si = beta.require(s)?;
    let p = (0..=si)
        .rev()
        .find_map(|b| alpha.index_of(beta.id(b)))
        .ok_or_else(|| Error::Precondition(format!("no node of the system lies below {s}")))?;
    let maps = (0..=p).map(|i| Ok((alpha.id(i).to_owned(), d.transition(i, p)?))).collect::<Result<Vec<_>>>()?;
    Ok((d.group(p).clone(), maps))
}

/// Extends `d` over the superchain `beta`: a new node carries the group of its
/// predecessor in `d`, and every transition is fixed by the limit construction.
pub fn ds_closure(d: &DirectSystem, beta: &Skeleton) -> Result<DirectSystem> {
    let alpha = d.skeleton();
    let pred = alpha_predecessors(alpha, beta)?;
    let n = beta.len();
    let in_alpha: Vec<bool> = beta.ids().iter().map(|id| alpha.index_of(id).is_some()).collect();
    let groups: Vec<OGroup> = pred.iter().map(|&p| d.group(p).clone()).collect();
    let g = |i: usize, j: usize| -> Result<QMatrix> {
        if in_alpha[i] || in_alpha[j] {
            return Ok(d.transition(pred[i], pred[j])?.matrix().clone());
        }
        match (i + 1..j).find(|&w| in_alpha[w]) {
            None => Ok(QMatrix::identity(groups[i].rank())),
            Some(w) => {
                let into = d.transition(pred[i], pred[w])?;
                let out = d.transition(pred[w], pred[j])?;
                Ok(out.matrix().mul(into.matrix()))
            }
        }
    };
    let steps = (0..n - 1).map(|i| g(i, i + 1)).collect::<Result<Vec<_>>>()?;
    let mut explicit = BTreeMap::new();
    for i in 0..n {
        for j in i + 2..n {
            explicit.insert((i, j), g(i, j)?);
        }
    }
    DirectSystem::with_explicit(beta.clone(), groups, steps, explicit)
}

/// Extends an embedding family given on the nodes of `x` (ids of the closed systems)
/// to every node: `ι_v = ς^Y_{p→v} ∘ ι_p` with `p` the last `x`-node below `v`.
pub fn ds_extend_embedding_family(
    x_closed: &DirectSystem,
    y_closed: &DirectSystem,
    x_nodes: &[String],
    iotas: &BTreeMap<String, QMatrix>,
) -> Result<BTreeMap<String, OGroupHom>> {
    let sk = y_closed.skeleton();
    if x_closed.skeleton().ids() != sk.ids() {
        return Err(Error::Precondition("closed systems live on different chains".into()));
    }
    let mut alpha = Vec::new();
    for id in x_nodes {
        let i = sk.require(id)?;
        let m = iotas.get(id).ok_or_else(|| Error::Precondition(format!("no layer map at {id}")))?;
        let h = OGroupHom::new(x_closed.group(i).clone(), y_closed.group(i).clone(), m.clone())?;
        alpha.push((i, h));
    }
    alpha.sort_by_key(|(i, _)| *i);
    if alpha.first().map(|(i, _)| *i) != Some(0) {
        return Err(Error::Precondition("the family must include the least node".into()));
    }
    for (a, (u, iu)) in alpha.iter().enumerate() {
        for (v, iv) in &alpha[a + 1..] {
            let lhs = iv.matrix().mul(x_closed.transition(*u, *v)?.matrix());
            let rhs = y_closed.transition(*u, *v)?.matrix().mul(iu.matrix());
            if lhs != rhs {
                return Err(Error::Precondition(format!(
                    "family does not commute on {} -> {}",
                    sk.id(*u),
                    sk.id(*v)
                )));
            }
        }
    }
    let mut out = BTreeMap::new();
    let mut k = 0;
    for v in 0..sk.len() {
        while k + 1 < alpha.len() && alpha[k + 1].0 <= v {
            k += 1;
        }
        let (p, ip) = &alpha[k];
        let h = ip.then(&y_closed.transition(*p, v)?)?;
        let h = OGroupHom::new(x_closed.group(v).clone(), y_closed.group(v).clone(), h.matrix().clone())?;
        out.insert(sk.id(v).to_owned(), h);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sk(nodes: &[(&str, Label)]) -> Skeleton {
        Skeleton::new(nodes.iter().map(|(a, b)| (a.to_string(), *b))).unwrap()
    }

    #[test]
    fn duplicate_ids_rejected() {
        assert!(Skeleton::new([("t", Label::O), ("t", Label::I)]).is_err());
    }

    #[test]
    fn transition_composes() {
        let s = sk(&[("t", Label::O), ("a", Label::I), ("b", Label::I)]);
        let z = OGroup::z(1);
        let d = DirectSystem::new(
            s,
            vec![z.clone(), z.clone(), z],
            vec![QMatrix::from_i64(&[&[2]]), QMatrix::from_i64(&[&[3]])],
        )
        .unwrap();
        assert_eq!(d.transition(0, 2).unwrap().matrix(), &QMatrix::from_i64(&[&[6]]));
        assert_eq!(d.transition(1, 1).unwrap().matrix(), &QMatrix::identity(1));
        assert!(d.transition(2, 0).is_err());
        assert!(ds_validate(&d).is_ok());
    }

    #[test]
    fn negation_step_is_reported() {
        let s = sk(&[("t", Label::O), ("a", Label::I)]);
        let z = OGroup::z(1);
        let d = DirectSystem::new(s, vec![z.clone(), z], vec![QMatrix::from_i64(&[&[-1]])]).unwrap();
        assert!(ds_validate(&d).has_code("ORD"));
    }

    #[test]
    fn closure_inserts_node() {
        let alpha = sk(&[("t", Label::O), ("b", Label::I)]);
        let beta = sk(&[("t", Label::O), ("a", Label::I), ("b", Label::I)]);
        let d = DirectSystem::new(alpha, vec![OGroup::z(1), OGroup::trivial()], vec![QMatrix::zeros(0, 1)]).unwrap();
        let c = ds_closure(&d, &beta).unwrap();
        assert_eq!(c.group(1), &OGroup::z(1));
        assert_eq!(c.transition(0, 1).unwrap().matrix(), &QMatrix::identity(1));
        assert!(c.transition(1, 2).unwrap().matrix().is_zero());
        assert!(ds_validate(&c).is_ok());
    }

    #[test]
    fn prefix_limit_needs_a_node_below() {
        let alpha = sk(&[("t", Label::O)]);
        let beta = sk(&[("t", Label::O), ("a", Label::I)]);
        let d = DirectSystem::new(alpha, vec![OGroup::z(2)], vec![]).unwrap();
        let (g, maps) = ds_prefix_limit(&d, &beta, "a").unwrap();
        assert_eq!(g, OGroup::z(2));
        assert_eq!(maps.len(), 1);
        let other = sk(&[("s", Label::O), ("t", Label::I)]);
        assert!(ds_closure(&d, &other).is_err());
    }
}
