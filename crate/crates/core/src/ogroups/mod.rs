//! Ordered lattice groups: orders, covers, homomorphisms, pushouts and order search.

pub mod group;
pub mod lattice;
pub mod matrix;
pub mod order_search;
pub mod pushout;
pub mod sample;

pub use group::{column_dominance, subgroup_contains, CoverDir, GroupElement, GroupKind, LatticeKind, OGroup, OGroupHom, SubgroupSpec};
pub use matrix::{format_rational, parse_rational, q, qfrac, QMatrix, Rational};
pub use order_search::{order_extension_candidates, order_extension_search, OrderConstraint, OrderSearch};
pub use pushout::{group_pushout, pushout_of_maps, Pushout};
pub use sample::{cone_compatibility_sample, og_sample, order_preserving_on_box};

pub fn og_compare(g: &OGroup, x: &[Rational], y: &[Rational]) -> std::cmp::Ordering {
    g.compare(x, y)
}

pub fn og_cover(g: &OGroup, x: &[Rational], dir: CoverDir) -> GroupElement {
    g.cover(x, dir)
}

pub fn og_is_discrete(g: &OGroup) -> bool {
    g.is_discrete()
}

pub fn hom_order_preserving(h: &OGroupHom) -> bool {
    h.is_order_preserving()
}

pub fn hom_embedding_check(h: &OGroupHom) -> bool {
    h.is_embedding()
}
