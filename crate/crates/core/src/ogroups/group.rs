//! Lexicographically ordered lattice groups and homomorphisms between them.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use super::matrix::{lex_sign, leading_index, primitive_integer, vec_is_integral, vec_is_zero, QMatrix, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LatticeKind {
    Int,
    Rat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Trivial,
    Lex,
}

/// A lattice `Z^n` or `Q^n` ordered by `x > 0 iff F x` is lexicographically positive.
///
/// Rank 0 is the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OGroup {
    lattice: LatticeKind,
    functionals: QMatrix,
    inverse: QMatrix,
}

pub type GroupElement = Vec<Rational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverDir {
    Up,
    Down,
}

impl OGroup {
    pub fn trivial() -> Self {
        OGroup { lattice: LatticeKind::Int, functionals: QMatrix::zeros(0, 0), inverse: QMatrix::zeros(0, 0) }
    }

    pub fn lex(lattice: LatticeKind, functionals: QMatrix) -> Result<Self> {
        if !functionals.is_square() {
            return Err(Error::Dimension(format!(
                "functional matrix must be square, got {}x{}",
                functionals.rows(),
                functionals.cols()
            )));
        }
        if functionals.rows() == 0 {
            return Ok(Self::trivial());
        }
        let inverse = functionals.inverse().ok_or(Error::Singular)?;
        Ok(OGroup { lattice, functionals, inverse })
    }

    /// `Z^n` with the plain lexicographic order.
    pub fn z(n: usize) -> Self {
        Self::lex(LatticeKind::Int, QMatrix::identity(n)).expect("identity is invertible")
    }

    /// `Q^n` with the plain lexicographic order.
    pub fn q(n: usize) -> Self {
        Self::lex(LatticeKind::Rat, QMatrix::identity(n)).expect("identity is invertible")
    }

    pub fn int_lex(functionals: QMatrix) -> Result<Self> {
        Self::lex(LatticeKind::Int, functionals)
    }

    pub fn kind(&self) -> GroupKind {
        if self.rank() == 0 {
            GroupKind::Trivial
        } else {
            GroupKind::Lex
        }
    }

    pub fn lattice(&self) -> LatticeKind {
        self.lattice
    }

    pub fn rank(&self) -> usize {
        self.functionals.rows()
    }

    pub fn functionals(&self) -> &QMatrix {
        &self.functionals
    }

    pub fn inverse_functionals(&self) -> &QMatrix {
        &self.inverse
    }

    pub fn is_trivial(&self) -> bool {
        self.rank() == 0
    }

    /// Same underlying lattice, ignoring the order.
    pub fn same_lattice(&self, other: &OGroup) -> bool {
        self.rank() == other.rank() && (self.rank() == 0 || self.lattice == other.lattice)
    }

    pub fn unit(&self) -> GroupElement {
        vec![Rational::zero(); self.rank()]
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.rank() && (self.lattice == LatticeKind::Rat || vec_is_integral(x))
    }

    pub fn check(&self, x: &[Rational]) -> Result<()> {
        if x.len() != self.rank() {
            return Err(Error::Dimension(format!("element of length {} in rank-{} group", x.len(), self.rank())));
        }
        if !self.contains(x) {
            return Err(Error::NotInGroup("non-integral coordinates in an integer lattice".into()));
        }
        Ok(())
    }

    pub fn sign(&self, x: &[Rational]) -> Ordering {
        lex_sign(&self.functionals.apply(x))
    }

    pub fn compare(&self, x: &[Rational], y: &[Rational]) -> Ordering {
        let d: Vec<Rational> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.sign(&d)
    }

    pub fn is_positive(&self, x: &[Rational]) -> bool {
        self.sign(x) == Ordering::Greater
    }

    /// Only nontrivial integer lattices are discretely ordered.
    pub fn is_discrete(&self) -> bool {
        self.lattice == LatticeKind::Int && self.rank() > 0
    }

    /// Least strictly positive element of a discrete group.
    pub fn atom(&self) -> Option<GroupElement> {
        if !self.is_discrete() {
            return None;
        }
        let n = self.rank();
        // The last column of F^-1 spans the kernel of the first n-1 functionals
        // and takes value 1 on the last; scaling by a positive factor keeps the sign.
        let c = self.inverse.col(n - 1);
        Some(primitive_integer(&c).into_iter().map(Rational::from_integer).collect())
    }

    /// Up/down cover in a discrete group; the identity map otherwise.
    pub fn cover(&self, x: &[Rational], dir: CoverDir) -> GroupElement {
        match self.atom() {
            None => x.to_vec(),
            Some(a) => match dir {
                CoverDir::Up => x.iter().zip(&a).map(|(p, q)| p + q).collect(),
                CoverDir::Down => x.iter().zip(&a).map(|(p, q)| p - q).collect(),
            },
        }
    }

    /// Same lattice and the same positive cone.
    pub fn same_order(&self, other: &OGroup) -> bool {
        if !self.same_lattice(other) {
            return false;
        }
        let id = QMatrix::identity(self.rank());
        let fwd = OGroupHom { source: self.clone(), target: other.clone(), matrix: id.clone() };
        let back = OGroupHom { source: other.clone(), target: self.clone(), matrix: id };
        fwd.is_order_preserving() && back.is_order_preserving()
    }
}

/// A group homomorphism given by a `target.rank() x source.rank()` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OGroupHom {
    source: OGroup,
    target: OGroup,
    matrix: QMatrix,
}

impl OGroupHom {
    /// Checks shape and that the matrix maps the source lattice into the target lattice.
    pub fn new(source: OGroup, target: OGroup, matrix: QMatrix) -> Result<Self> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::Dimension(format!(
                "hom matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.rank(),
                source.rank()
            )));
        }
        if target.lattice() == LatticeKind::Int && target.rank() > 0 {
            match source.lattice() {
                LatticeKind::Int if !matrix.is_integral() => {
                    return Err(Error::Lattice("non-integral matrix between integer lattices".into()))
                }
                LatticeKind::Rat if source.rank() > 0 && !matrix.is_zero() => {
                    return Err(Error::Lattice("a rational lattice has only the zero map into an integer lattice".into()))
                }
                _ => {}
            }
        }
        Ok(OGroupHom { source, target, matrix })
    }

    pub fn zero(source: OGroup, target: OGroup) -> Self {
        let m = QMatrix::zeros(target.rank(), source.rank());
        OGroupHom { source, target, matrix: m }
    }

    pub fn identity(g: OGroup) -> Self {
        let m = QMatrix::identity(g.rank());
        OGroupHom { source: g.clone(), target: g, matrix: m }
    }

    pub fn source(&self) -> &OGroup {
        &self.source
    }

    pub fn target(&self) -> &OGroup {
        &self.target
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Rational]) -> GroupElement {
        self.matrix.apply(x)
    }

    /// `other ∘ self`
    pub fn then(&self, other: &OGroupHom) -> Result<OGroupHom> {
        if !self.target.same_lattice(&other.source) {
            return Err(Error::Dimension("composition of non-matching homs".into()));
        }
        Ok(OGroupHom {
            source: self.source.clone(),
            target: other.target.clone(),
            matrix: other.matrix.mul(&self.matrix),
        })
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.is_injective()
    }

    /// Column-dominance test on `B = F_t M F_s^-1`: every column lex-nonnegative,
    /// a nonzero column is followed only by columns with strictly later leading index,
    /// and a zero column only by zero columns.
    pub fn is_order_preserving(&self) -> bool {
        if self.source.rank() == 0 || self.target.rank() == 0 {
            return true;
        }
        let b = self.target.functionals.mul(&self.matrix).mul(&self.source.inverse);
        column_dominance(&b)
    }

    /// Injective and order preserving.
    pub fn is_embedding(&self) -> bool {
        self.is_injective() && self.is_order_preserving()
    }
}

/// True iff `y -> B y` maps lex-positive vectors to lex-nonnegative ones.
pub fn column_dominance(b: &QMatrix) -> bool {
    let cols = b.col_vecs();
    let mut last_lead: Option<usize> = None;
    let mut seen_zero = false;
    for c in &cols {
        match leading_index(c) {
            None => seen_zero = true,
            Some(l) => {
                if seen_zero || c[l].is_negative() {
                    return false;
                }
                if let Some(prev) = last_lead {
                    if l <= prev {
                        return false;
                    }
                }
                last_lead = Some(l);
            }
        }
    }
    true
}

/// A subgroup given by a basis of generator columns; integer combinations in an
/// integer lattice, rational combinations in a rational one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupSpec {
    basis: Vec<GroupElement>,
}

impl SubgroupSpec {
    pub fn new(basis: Vec<GroupElement>) -> Self {
        SubgroupSpec { basis }
    }

    pub fn full(g: &OGroup) -> Self {
        let id = QMatrix::identity(g.rank());
        SubgroupSpec { basis: id.col_vecs() }
    }

    pub fn trivial() -> Self {
        SubgroupSpec { basis: Vec::new() }
    }

    pub fn basis(&self) -> &[GroupElement] {
        &self.basis
    }

    /// Basis vectors must lie in the group and be linearly independent.
    pub fn check_in(&self, g: &OGroup) -> Result<()> {
        for b in &self.basis {
            g.check(b)?;
        }
        if !self.basis.is_empty() {
            let m = QMatrix::from_columns(&self.basis, g.rank())?;
            if m.rank() != self.basis.len() {
                return Err(Error::Dimension("subgroup basis is not linearly independent".into()));
            }
        }
        Ok(())
    }

    pub fn contains(&self, g: &OGroup, x: &[Rational]) -> bool {
        subgroup_contains(g, self, x)
    }
}

pub fn subgroup_contains(g: &OGroup, h: &SubgroupSpec, x: &[Rational]) -> bool {
    if !g.contains(x) {
        return false;
    }
    if vec_is_zero(x) {
        return true;
    }
    if h.basis.is_empty() {
        return false;
    }
    match g.lattice() {
        LatticeKind::Rat => QMatrix::from_columns(&h.basis, g.rank())
            .map(|m| m.col_span_contains(x))
            .unwrap_or(false),
        LatticeKind::Int => {
            let gens: Vec<_> = h.basis.iter().map(|v| v.iter().map(|c| c.to_integer()).collect()).collect();
            let xi: Vec<_> = x.iter().map(|c| c.to_integer()).collect();
            super::lattice::lattice_contains(&gens, g.rank(), &xi)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ogroups::matrix::q;

    fn v(xs: &[i64]) -> GroupElement {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn lex_compare() {
        let z2 = OGroup::z(2);
        assert_eq!(z2.compare(&v(&[0, 5]), &v(&[1, -100])), Ordering::Less);
        let q1 = OGroup::q(1);
        assert_eq!(q1.compare(&[crate::ogroups::matrix::qfrac(1, 2)], &[crate::ogroups::matrix::qfrac(1, 3)]), Ordering::Greater);
    }

    #[test]
    fn covers() {
        let z2 = OGroup::z(2);
        assert_eq!(z2.cover(&v(&[3, 7]), CoverDir::Up), v(&[3, 8]));
        assert_eq!(OGroup::z(1).cover(&v(&[-4]), CoverDir::Down), v(&[-5]));
        let q1 = OGroup::q(1);
        assert_eq!(q1.cover(&v(&[2]), CoverDir::Up), v(&[2]));
        assert!(!q1.is_discrete());
        assert!(!OGroup::trivial().is_discrete());
        assert!(OGroup::z(1).is_discrete());
    }

    #[test]
    fn atom_of_skewed_order() {
        let g = OGroup::int_lex(QMatrix::from_i64(&[&[1, 1], &[0, 2]])).unwrap();
        let a = g.atom().unwrap();
        let fa = g.functionals().apply(&a);
        assert!(fa[0].is_zero() && fa[1].is_positive());
        assert_eq!(a, v(&[-1, 1]));
    }

    #[test]
    fn order_preservation_examples() {
        let z1 = OGroup::z(1);
        let z2 = OGroup::z(2);
        let neg = OGroupHom::new(z1.clone(), z1.clone(), QMatrix::from_i64(&[&[-1]])).unwrap();
        assert!(!neg.is_order_preserving());
        let proj = OGroupHom::new(z2.clone(), z1.clone(), QMatrix::from_i64(&[&[1, 0]])).unwrap();
        assert!(proj.is_order_preserving());
        assert!(!proj.is_embedding());
        let second = OGroupHom::new(z2.clone(), z1.clone(), QMatrix::from_i64(&[&[0, 1]])).unwrap();
        assert!(!second.is_order_preserving());
        let incl = OGroupHom::new(z1.clone(), z2.clone(), QMatrix::from_i64(&[&[1], &[0]])).unwrap();
        assert!(incl.is_embedding());
    }

    #[test]
    fn lattice_mismatch_rejected() {
        let r = OGroupHom::new(OGroup::z(1), OGroup::z(1), QMatrix::from_rows(vec![vec![crate::ogroups::matrix::qfrac(1, 2)]], 1).unwrap());
        assert!(r.is_err());
        assert!(OGroupHom::new(OGroup::q(1), OGroup::z(1), QMatrix::from_i64(&[&[1]])).is_err());
    }

    #[test]
    fn subgroup_membership() {
        let z2 = OGroup::z(2);
        let h = SubgroupSpec::new(vec![v(&[2, 0]), v(&[0, 1])]);
        assert!(subgroup_contains(&z2, &h, &v(&[4, -3])));
        assert!(!subgroup_contains(&z2, &h, &v(&[1, 0])));
        let q1 = OGroup::q(1);
        let hq = SubgroupSpec::new(vec![v(&[1])]);
        assert!(subgroup_contains(&q1, &hq, &[crate::ogroups::matrix::qfrac(1, 2)]));
    }
}
