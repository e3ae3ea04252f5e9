use std::cmp::Ordering;

use num_bigint::BigInt;
use proptest::prelude::*;

use layerbunch::amalgam::{amalgamate, verify_amalgam, VFormation};
use layerbunch::bunch::{bunch_validate, Bunch, EmbeddingSpec};
use layerbunch::catalog::axiom_catalog;
use layerbunch::cli::format::{bunch_from_doc, bunch_to_doc, Document, Payload};
use layerbunch::dirsys::Label;
use layerbunch::flechain::{axiom_suite, FleChain};
use layerbunch::ogroups::lattice::{hermite_rows, mat_mul, smith, ZMat};
use layerbunch::ogroups::{
    og_cover, order_extension_search, pushout_of_maps, q, CoverDir, OGroup, OrderConstraint, OrderSearch, QMatrix,
    SubgroupSpec,
};

fn zmat(rows: &[Vec<i64>]) -> ZMat {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn qmat(rows: &[Vec<i64>], cols: usize) -> QMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    QMatrix::from_i64_with_cols(&refs, cols)
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, cols), rows)
}

/// Small valid bunches: an O or I least node, I-nodes above, ranks 0..=2.
fn small_bunch() -> impl Strategy<Value = Bunch> {
    (1usize..=3, any::<bool>(), prop::collection::vec((0usize..=2, any::<bool>(), any::<bool>()), 3)).prop_map(
        |(n, odd, spec)| {
            let groups: Vec<OGroup> = spec[..n]
                .iter()
                .map(|&(r, skew, _)| {
                    if r == 2 && skew {
                        OGroup::int_lex(QMatrix::from_i64(&[&[1, 1], &[0, 1]])).unwrap()
                    } else {
                        OGroup::z(r)
                    }
                })
                .collect();
            let ids = ["t", "a", "b"];
            let nodes = (0..n)
                .map(|i| (ids[i], if i == 0 && odd { Label::O } else { Label::I }, groups[i].clone()))
                .collect();
            // Zero transitions are always order preserving.
            let steps = (1..n).map(|i| QMatrix::zeros(groups[i].rank(), groups[i - 1].rank())).collect();
            let subs = (0..n)
                .filter(|&i| groups[i].rank() > 0 && spec[i].2 && !(i == 0 && odd))
                .map(|i| {
                    let mut v = vec![q(0); groups[i].rank()];
                    v[0] = q(2);
                    let mut basis = vec![v];
                    for k in 1..groups[i].rank() {
                        let mut e = vec![q(0); groups[i].rank()];
                        e[k] = q(1);
                        basis.push(e);
                    }
                    (ids[i], SubgroupSpec::new(basis))
                })
                .collect();
            Bunch::build(nodes, steps, subs).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn documents_round_trip(b in small_bunch()) {
        let doc = Document::new(Payload::Bunch(bunch_to_doc(&b)));
        let text = doc.to_json();
        let parsed = Document::parse(&text).unwrap();
        prop_assert_eq!(&parsed, &doc);
        prop_assert_eq!(parsed.to_json(), text);
        let Payload::Bunch(d) = parsed.payload else { unreachable!() };
        prop_assert_eq!(bunch_from_doc(&d).unwrap(), b);
    }

    #[test]
    fn generated_bunches_are_valid_chains(b in small_bunch(), seed in 0u64..1000) {
        prop_assert!(bunch_validate(&b).is_ok());
        let c = FleChain::new(b).unwrap();
        let r = axiom_suite(&c, 3, 60, seed);
        prop_assert!(r.is_ok(), "{}", r);
    }

    #[test]
    fn hermite_and_smith(a in int_matrix(3, 3), rows in 1usize..=3, cols in 1usize..=3) {
        let a: Vec<Vec<i64>> = a[..rows].iter().map(|r| r[..cols].to_vec()).collect();
        let za = zmat(&a);
        let h = hermite_rows(&za, cols);
        prop_assert_eq!(mat_mul(&h.t, &za, cols), h.h.clone());
        for (i, &p) in h.pivots.iter().enumerate() {
            prop_assert!(h.h[i][p] > BigInt::from(0));
            prop_assert!(h.h[i][..p].iter().all(|x| *x == BigInt::from(0)));
        }
        let s = smith(&za, cols);
        prop_assert_eq!(mat_mul(&mat_mul(&s.u, &za, cols), &s.v, cols), s.d.clone());
        for i in 0..rows.min(cols) {
            for j in 0..cols {
                if i != j {
                    prop_assert_eq!(&s.d[i][j], &BigInt::from(0));
                }
            }
            if i + 1 < rows.min(cols) && s.d[i + 1][i + 1] != BigInt::from(0) {
                prop_assert_eq!(&s.d[i + 1][i + 1] % &s.d[i][i], BigInt::from(0));
            }
        }
    }

    #[test]
    fn pushout_square_commutes(p in int_matrix(3, 2), qm in int_matrix(2, 2), g in 0usize..=2, k in 1usize..=3, m in 1usize..=2) {
        let p: Vec<Vec<i64>> = p[..k].iter().map(|r| r[..g].to_vec()).collect();
        let qm: Vec<Vec<i64>> = qm[..m].iter().map(|r| r[..g].to_vec()).collect();
        let (pp, qq) = (qmat(&p, g), qmat(&qm, g));
        let po = pushout_of_maps(&pp, &qq).unwrap();
        prop_assert_eq!(po.j1.mul(&pp), po.j2.mul(&qq));
        prop_assert_eq!(po.projection.mul(&po.section), QMatrix::identity(po.rank));
        prop_assert!(po.rank >= k + m - g.min(k + m));
    }

    #[test]
    fn chain_order_is_total_and_compatible(idx in 0usize..8, seed in 0u64..500) {
        let (_, b) = axiom_catalog().swap_remove(idx);
        let c = FleChain::new(b).unwrap();
        let xs = c.sample(4, 12, seed);
        for x in &xs {
            for y in &xs {
                let o = c.compare(x, y);
                prop_assert_eq!(o, c.compare(y, x).reverse());
                prop_assert_eq!(o == Ordering::Equal, x == y);
                if o != Ordering::Greater {
                    prop_assert_ne!(c.compare(&c.neg(x), &c.neg(y)), Ordering::Less);
                }
            }
        }
    }

    #[test]
    fn covers_are_inverse(x in prop::collection::vec(-6i64..=6, 2), skew in any::<bool>()) {
        let f = if skew { QMatrix::from_i64(&[&[1, 1], &[0, 1]]) } else { QMatrix::identity(2) };
        let g = OGroup::int_lex(f).unwrap();
        let x: Vec<_> = x.into_iter().map(q).collect();
        let up = og_cover(&g, &x, CoverDir::Up);
        prop_assert_eq!(g.compare(&up, &x), Ordering::Greater);
        prop_assert_eq!(og_cover(&g, &up, CoverDir::Down), x);
    }

    #[test]
    fn found_orders_verify(m in int_matrix(2, 2), n in 2usize..=3) {
        let mut rows = m.clone();
        rows.resize(n, vec![0, 0]);
        let c = OrderConstraint::new(OGroup::z(2), qmat(&rows, 2));
        if let OrderSearch::Found(f) = order_extension_search(n, std::slice::from_ref(&c)) {
            let h = layerbunch::ogroups::OGroupHom::new(OGroup::z(2), OGroup::int_lex(f).unwrap(), c.matrix.clone()).unwrap();
            prop_assert!(h.is_order_preserving());
        }
    }

    #[test]
    fn sugihara_amalgams_stay_trivial(ny in 1usize..=3, nz in 1usize..=3, odd in any::<bool>()) {
        let chain = |prefix: &str, n: usize| {
            let least = if odd { Label::O } else { Label::I };
            let mut ids = vec!["t".to_string()];
            ids.extend((1..n).map(|i| format!("{prefix}{i}")));
            let nodes = ids.iter().enumerate().map(|(i, id)| (id.as_str(), if i == 0 { least } else { Label::I }, OGroup::trivial())).collect();
            Bunch::build(nodes, vec![QMatrix::zeros(0, 0); n - 1], vec![]).unwrap()
        };
        let x = chain("x", 1);
        let e = EmbeddingSpec::identity_on(&x);
        let v = VFormation { x, y: chain("y", ny), z: chain("z", nz), iota1: e.clone(), iota2: e };
        let r = amalgamate(&v).unwrap();
        prop_assert_eq!(r.w.len(), ny + nz - 1);
        prop_assert!((0..r.w.len()).all(|i| r.w.group(i).rank() == 0));
        prop_assert!(verify_amalgam(&v, &r, 3, 50, 1).is_ok());
    }
}

#[test]
fn reports_are_deterministic() {
    for (_, b) in axiom_catalog() {
        let c = FleChain::new(b).unwrap();
        assert_eq!(axiom_suite(&c, 5, 200, 9).render(), axiom_suite(&c, 5, 200, 9).render());
    }
    let broken = Bunch::build(
        vec![("t", Label::O, OGroup::z(1)), ("a", Label::J, OGroup::trivial())],
        vec![QMatrix::zeros(0, 1)],
        vec![],
    )
    .unwrap();
    let r1 = bunch_validate(&broken).render();
    assert_eq!(r1, bunch_validate(&broken).render());
    assert!(r1.starts_with("DISC node=a"), "{r1}");
}
