//! Seeded sampling and brute-force cone checks.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::group::{GroupElement, LatticeKind, OGroup, OGroupHom};
use super::matrix::{q, qfrac, vec_is_zero, vec_neg, Rational};
use crate::error::{Error, Result};

/// Distinct elements with coordinates in `[-bound, bound]`, the unit first.
/// Rational lattices draw coordinates `p/d` with `d` in `1..=3`.
pub fn og_sample(g: &OGroup, bound: u32, count: usize, seed: u64) -> Vec<GroupElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![g.unit()];
    let mut seen: HashSet<GroupElement> = out.iter().cloned().collect();
    if g.rank() == 0 || bound == 0 {
        return out;
    }
    let b = i64::from(bound);
    let attempts = count.saturating_mul(20);
    for _ in 0..attempts {
        if out.len() >= count {
            break;
        }
        let x = random_element(g, b, &mut rng);
        if seen.insert(x.clone()) {
            out.push(x);
        }
    }
    out
}

pub(crate) fn random_element(g: &OGroup, bound: i64, rng: &mut impl Rng) -> GroupElement {
    (0..g.rank())
        .map(|_| match g.lattice() {
            LatticeKind::Int => q(rng.gen_range(-bound..=bound)),
            LatticeKind::Rat => {
                let d = rng.gen_range(1..=3);
                qfrac(rng.gen_range(-bound * d..=bound * d), d)
            }
        })
        .collect()
}

/// Every vector of `Z^n` with coordinates in `[-bound, bound]`.
pub fn integer_box(n: usize, bound: i64) -> Vec<GroupElement> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * (2 * bound as usize + 1));
        for v in &out {
            for c in -bound..=bound {
                let mut w: Vec<Rational> = v.clone();
                w.push(q(c));
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Brute-force order preservation over the coordinate box.
pub fn order_preserving_on_box(h: &OGroupHom, bound: i64) -> bool {
    integer_box(h.source().rank(), bound)
        .iter()
        .filter(|x| h.source().is_positive(x))
        .all(|x| h.target().sign(&h.apply(x)) != std::cmp::Ordering::Less)
}

/// `false` iff some strictly positive `x1` and `x2` (coordinates in the box) have
/// nonzero images with `p1(x1) = -p2(x2)`.
pub fn cone_compatibility_sample(p1: &OGroupHom, p2: &OGroupHom, bound: u32) -> Result<bool> {
    if !p1.target().same_lattice(p2.target()) {
        return Err(Error::Dimension("cone maps land in different groups".into()));
    }
    let b = i64::from(bound);
    let strict_image = |h: &OGroupHom| -> Vec<GroupElement> {
        integer_box(h.source().rank(), b)
            .into_iter()
            .filter(|x| h.source().is_positive(x))
            .map(|x| h.apply(&x))
            .filter(|y| !vec_is_zero(y))
            .collect()
    };
    let inverse_cone: HashSet<GroupElement> = strict_image(p2).iter().map(|y| vec_neg(y)).collect();
    Ok(!strict_image(p1).iter().any(|y| inverse_cone.contains(y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ogroups::matrix::QMatrix;

    #[test]
    fn sample_includes_unit_and_is_seeded() {
        let z2 = OGroup::z(2);
        assert_eq!(og_sample(&z2, 0, 10, 3), vec![z2.unit()]);
        let a = og_sample(&z2, 2, 5, 7);
        assert_eq!(a.len(), 5);
        assert_eq!(a[0], z2.unit());
        assert_eq!(a, og_sample(&z2, 2, 5, 7));
        assert!(og_sample(&OGroup::q(1), 2, 5, 1).iter().all(|x| x[0] <= q(2) && x[0] >= q(-2)));
    }

    #[test]
    fn cones() {
        let z1 = OGroup::z(1);
        let id = OGroupHom::identity(z1.clone());
        let neg = OGroupHom::new(z1.clone(), z1, QMatrix::from_i64(&[&[-1]])).unwrap();
        assert!(cone_compatibility_sample(&id, &id, 3).unwrap());
        assert!(!cone_compatibility_sample(&id, &neg, 3).unwrap());
    }
}
