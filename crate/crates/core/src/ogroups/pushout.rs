//! Torsion-free pushouts of integer lattices.

use super::group::{LatticeKind, OGroup, OGroupHom};
use super::lattice::{from_qmatrix, hermite_rows, smith, to_qmatrix, ZMat};
use super::matrix::QMatrix;
use crate::error::{Error, Result};

/// `W = (Z^k ⊕ Z^m) / <(P g, -Q g)>` modulo torsion, presented by the projection
/// `Π : Z^{k+m} -> Z^n` in Hermite form, `j1 = Π[:, ..k]`, `j2 = Π[:, k..]`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub rank: usize,
    pub j1: QMatrix,
    pub j2: QMatrix,
    pub projection: QMatrix,
    /// Right inverse of the projection: `Π · section = I`.
    pub section: QMatrix,
}

impl Pushout {
    /// `W` with the plain lexicographic order; the real order is chosen later.
    pub fn group(&self) -> OGroup {
        OGroup::z(self.rank)
    }
}

/// Pushout of two integer embeddings with a common source.
pub fn group_pushout(iota1: &OGroupHom, iota2: &OGroupHom) -> Result<Pushout> {
    if !iota1.source().same_lattice(iota2.source()) {
        return Err(Error::Precondition("pushout legs have different sources".into()));
    }
    for (name, h) in [("first", iota1), ("second", iota2)] {
        for g in [h.source(), h.target()] {
            if g.rank() > 0 && g.lattice() != LatticeKind::Int {
                return Err(Error::Precondition(format!("{name} leg involves a rational lattice")));
            }
        }
        if !h.is_embedding() {
            return Err(Error::Precondition(format!("{name} leg is not an o-embedding")));
        }
    }
    pushout_of_maps(iota1.matrix(), iota2.matrix())
}

/// Pushout of arbitrary integer matrices `P : Z^g -> Z^k`, `Q : Z^g -> Z^m`.
pub fn pushout_of_maps(p: &QMatrix, q: &QMatrix) -> Result<Pushout> {
    if p.cols() != q.cols() {
        return Err(Error::Dimension("pushout legs have different source ranks".into()));
    }
    if !p.is_integral() || !q.is_integral() {
        return Err(Error::Lattice("pushout of non-integral maps".into()));
    }
    let k = p.rows();
    let m = q.rows();
    let total = k + m;
    let a = p.vstack(&q.neg());
    let snf = smith(&from_qmatrix(&a), a.cols());
    let r = snf.rank;
    let n = total - r;
    let u = to_qmatrix(&snf.u, total);
    let u_inv = u.inverse().expect("unimodular");
    let pi0: ZMat = snf.u[r..].to_vec();
    let sec0 = u_inv.select_cols(r..total);
    let herm = hermite_rows(&pi0, total);
    let t = to_qmatrix(&herm.t, n);
    let t_inv = t.inverse().expect("unimodular");
    let projection = to_qmatrix(&herm.h, total);
    let section = sec0.mul(&t_inv);
    debug_assert_eq!(projection.mul(&section), QMatrix::identity(n));
    Ok(Pushout {
        rank: n,
        j1: projection.select_cols(0..k),
        j2: projection.select_cols(k..total),
        projection,
        section,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_into_two_planes() {
        let z1 = OGroup::z(1);
        let z2 = OGroup::z(2);
        let i = OGroupHom::new(z1, z2, QMatrix::from_i64(&[&[1], &[0]])).unwrap();
        let po = group_pushout(&i, &i).unwrap();
        assert_eq!(po.rank, 3);
        assert_eq!(po.j1, QMatrix::from_i64(&[&[1, 0], &[0, 1], &[0, 0]]));
        assert_eq!(po.j2, QMatrix::from_i64(&[&[1, 0], &[0, 0], &[0, 1]]));
    }

    #[test]
    fn doubling_both_sides() {
        let z1 = OGroup::z(1);
        let d = OGroupHom::new(z1.clone(), z1, QMatrix::from_i64(&[&[2]])).unwrap();
        let po = group_pushout(&d, &d).unwrap();
        assert_eq!(po.rank, 1);
        assert_eq!(po.j1, QMatrix::identity(1));
        assert_eq!(po.j2, QMatrix::identity(1));
    }

    #[test]
    fn non_embedding_rejected() {
        let z1 = OGroup::z(1);
        let neg = OGroupHom::new(z1.clone(), z1.clone(), QMatrix::from_i64(&[&[-1]])).unwrap();
        let id = OGroupHom::identity(z1);
        assert!(group_pushout(&neg, &id).is_err());
    }
}
