use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::axioms::InvolutiveChain;
use super::{AlgElement, FleChain, Tag};
use crate::bunch::{Bunch, RankClass};
use crate::dirsys::{DirectSystem, Label, Skeleton};
use crate::error::{Error, Result};
use crate::ogroups::{OGroup, QMatrix};

/// A finite chain `0 < 1 < ... < size-1` with a product table and constants `t`, `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteChainTable {
    pub size: usize,
    pub mul: Vec<Vec<usize>>,
    pub t: usize,
    pub f: usize,
}

impl FiniteChainTable {
    pub fn new(mul: Vec<Vec<usize>>, t: usize, f: usize) -> Result<Self> {
        let size = mul.len();
        if size == 0 {
            return Err(Error::Table("empty table".into()));
        }
        if mul.iter().any(|r| r.len() != size || r.iter().any(|&x| x >= size)) {
            return Err(Error::Table("product table is not square over the universe".into()));
        }
        if t >= size || f >= size {
            return Err(Error::Table("constants out of range".into()));
        }
        Ok(FiniteChainTable { size, mul, t, f })
    }

    /// Largest `v` with `x*v <= z`, if any.
    pub fn residuum(&self, x: usize, z: usize) -> Option<usize> {
        (0..self.size).rev().find(|&v| self.mul[x][v] <= z)
    }

    /// Table of the algebra of an all-trivial bunch, with the element of each index.
    pub fn from_chain(c: &FleChain) -> Option<(FiniteChainTable, Vec<AlgElement>)> {
        let all = c.finite_enumerate()?;
        let idx = |x: &AlgElement| all.iter().position(|y| y == x).expect("closed universe");
        let mul = all.iter().map(|x| all.iter().map(|y| idx(&c.mul(x, y))).collect()).collect();
        let t = idx(&c.unit());
        let f = idx(&c.falsum());
        Some((FiniteChainTable { size: all.len(), mul, t, f }, all))
    }

    fn structural_errors(&self) -> Option<String> {
        let n = self.size;
        for x in 0..n {
            if self.mul[self.t][x] != x {
                return Some(format!("t is not a unit at {x}"));
            }
            for y in 0..n {
                if self.mul[x][y] != self.mul[y][x] {
                    return Some(format!("not commutative at ({x}, {y})"));
                }
                if y + 1 < n && self.mul[x][y] > self.mul[x][y + 1] {
                    return Some(format!("not monotone at ({x}, {y})"));
                }
                for z in 0..n {
                    if self.mul[self.mul[x][y]][z] != self.mul[x][self.mul[y][z]] {
                        return Some(format!("not associative at ({x}, {y}, {z})"));
                    }
                }
            }
        }
        for x in 0..n {
            for z in 0..n {
                let Some(r) = self.residuum(x, z) else {
                    return Some(format!("no residuum {x} -> {z}"));
                };
                if (0..n).any(|y| (self.mul[x][y] <= z) != (y <= r)) {
                    return Some(format!("residuum {x} -> {z} is not adjoint"));
                }
            }
        }
        None
    }

    fn neg_of(&self, x: usize) -> usize {
        self.residuum(x, self.f).unwrap_or(0)
    }
}

impl InvolutiveChain for FiniteChainTable {
    type Elem = usize;

    fn mul(&self, x: &usize, y: &usize) -> usize {
        self.mul[*x][*y]
    }
    fn res(&self, x: &usize, y: &usize) -> usize {
        self.residuum(*x, *y).unwrap_or(0)
    }
    fn neg(&self, x: &usize) -> usize {
        self.neg_of(*x)
    }
    fn compare(&self, x: &usize, y: &usize) -> Ordering {
        x.cmp(y)
    }
    fn unit(&self) -> usize {
        self.t
    }
    fn falsum(&self) -> usize {
        self.f
    }
    fn rank_class(&self) -> RankClass {
        if self.f == self.t {
            RankClass::Odd
        } else if self.mul[self.f][self.f] == self.f {
            RankClass::EvenIdemF
        } else {
            RankClass::EvenNonIdemF
        }
    }
    fn enumerate(&self) -> Option<Vec<usize>> {
        Some((0..self.size).collect())
    }
    fn sample(&self, _bound: u32, _count: usize, _seed: u64) -> Vec<usize> {
        (0..self.size).collect()
    }
    fn describe(&self, x: &usize) -> String {
        format!("#{x}")
    }
}

pub fn table_decompose(t: &FiniteChainTable) -> Result<Bunch> {
    table_decompose_with_map(t).map(|(b, _)| b)
}

/// Decomposes a finite involutive FL_e-chain; also returns the element of each table index.
pub fn table_decompose_with_map(tab: &FiniteChainTable) -> Result<(Bunch, Vec<AlgElement>)> {
    if let Some(e) = tab.structural_errors() {
        return Err(Error::Table(e));
    }
    let n = tab.size;
    let neg: Vec<usize> = (0..n).map(|x| tab.neg_of(x)).collect();
    if (0..n).any(|x| neg[neg[x]] != x) {
        return Err(Error::Table("not involutive".into()));
    }
    let t = tab.t;
    let f = tab.f;
    let odd = neg[t] == t;
    if !odd && f + 1 != t {
        return Err(Error::Table("neither odd nor even: t is neither fixed by the involution nor the cover of f".into()));
    }
    if neg[t] != f {
        return Err(Error::Table("t' differs from f".into()));
    }
    let home: Vec<usize> = (0..n).map(|x| tab.residuum(x, x).expect("residuated")).collect();
    let mut kappa: Vec<usize> = home.clone();
    kappa.sort_unstable();
    kappa.dedup();
    if kappa[0] != t {
        return Err(Error::Table("t is not the least of the local units".into()));
    }
    let mut nodes = Vec::new();
    let mut elems: Vec<Option<AlgElement>> = vec![None; n];
    for (i, &u) in kappa.iter().enumerate() {
        let up = neg[u];
        let up_idem = tab.mul[up][up] == up;
        let label = match (u == t, odd, up_idem) {
            (true, true, _) => Label::O,
            (_, _, true) => Label::I,
            _ => Label::J,
        };
        let layer: Vec<usize> = (0..n).filter(|&x| home[x] == u).collect();
        let (g, dotted): (Vec<usize>, Vec<usize>) = if label == Label::I {
            let h: Vec<usize> = layer.iter().copied().filter(|&x| tab.mul[x][up] < x).collect();
            let dh: Vec<usize> = h.iter().map(|&x| tab.mul[x][up]).collect();
            if h.is_empty() {
                return Err(Error::Table(format!("empty subgroup at local unit {u}")));
            }
            (layer.iter().copied().filter(|x| !dh.contains(x)).collect(), dh)
        } else {
            (layer.clone(), Vec::new())
        };
        if g.len() != 1 || g[0] != u {
            return Err(Error::Table(format!("layer group at local unit {u} is not trivial")));
        }
        if label == Label::J {
            return Err(Error::Table(format!("local unit {u} would need a discrete nontrivial group")));
        }
        elems[u] = Some(AlgElement::plain(i, Vec::new()));
        for d in dotted {
            elems[d] = Some(AlgElement::dotted(i, Vec::new()));
        }
        nodes.push((format!("u{u}"), label));
    }
    let elems = elems
        .into_iter()
        .map(|e| e.ok_or_else(|| Error::Table("element outside every layer".into())))
        .collect::<Result<Vec<_>>>()?;
    let k = nodes.len();
    let sk = Skeleton::new(nodes)?;
    let d = DirectSystem::new(sk, vec![OGroup::trivial(); k], vec![QMatrix::zeros(0, 0); k - 1])?;
    let b = Bunch::new(d, BTreeMap::new())?;
    debug_assert!(elems.iter().all(|e| e.tag == Tag::Plain || b.label(e.node) == Label::I));
    Ok((b, elems))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_element_boolean_chain() {
        let t = FiniteChainTable::new(vec![vec![0, 0], vec![0, 1]], 1, 0).unwrap();
        let (b, el) = table_decompose_with_map(&t).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b.label(0), Label::I);
        assert_eq!(el[0].tag, Tag::Dotted);
        assert_eq!(el[1].tag, Tag::Plain);
    }

    #[test]
    fn non_involutive_rejected() {
        // Three-element Goedel chain: residuated but x'' != x.
        let t = FiniteChainTable::new(vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]], 2, 0).unwrap();
        assert!(matches!(table_decompose(&t), Err(Error::Table(_))));
    }

    #[test]
    fn corrupted_table_rejected() {
        let mut t = FiniteChainTable::new(vec![vec![0, 0], vec![0, 1]], 1, 0).unwrap();
        t.mul[0][1] = 1;
        assert!(table_decompose(&t).is_err());
    }
}
