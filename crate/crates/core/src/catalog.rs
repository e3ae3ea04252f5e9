//! Small named bunches used by the examples, the CLI data files and the tests.

use crate::bunch::Bunch;
use crate::dirsys::Label;
use crate::ogroups::{q, OGroup, QMatrix, SubgroupSpec};

fn int_vec(xs: &[i64]) -> Vec<crate::ogroups::Rational> {
    xs.iter().map(|&x| q(x)).collect()
}

/// All-trivial bunch on `n` nodes: the `(2n-1)`-element odd Sugihara chain, or the
/// `2n`-element even one.
pub fn sugihara(n: usize, odd: bool) -> Bunch {
    assert!(n >= 1);
    let nodes = (0..n)
        .map(|i| {
            let l = if i == 0 && odd { Label::O } else { Label::I };
            (node_name(i), l)
        })
        .collect::<Vec<_>>();
    let nodes = nodes.iter().map(|(s, l)| (s.as_str(), *l, OGroup::trivial())).collect();
    Bunch::build(nodes, vec![QMatrix::zeros(0, 0); n - 1], vec![]).expect("valid")
}

fn node_name(i: usize) -> String {
    if i == 0 {
        "t".to_owned()
    } else {
        ((b'a' + (i as u8 - 1)) as char).to_string()
    }
}

/// Odd; trivial at `t`, `Z` at an I-node with `H = 2Z`.
pub fn odd_z_layer() -> Bunch {
    Bunch::build(
        vec![("t", Label::O, OGroup::trivial()), ("a", Label::I, OGroup::z(1))],
        vec![QMatrix::zeros(1, 0)],
        vec![("a", SubgroupSpec::new(vec![int_vec(&[2])]))],
    )
    .expect("valid")
}

/// Odd; a single node carrying `Z^2` ordered by the functionals `(1,1), (0,1)`.
pub fn odd_z2_lex() -> Bunch {
    let g = OGroup::int_lex(QMatrix::from_i64(&[&[1, 1], &[0, 1]])).expect("invertible");
    Bunch::build(vec![("t", Label::O, g)], vec![], vec![]).expect("valid")
}

/// Odd; `Z` at `t` sent to zero in a trivial I-layer.
pub fn z_then_trivial() -> Bunch {
    Bunch::build(
        vec![("t", Label::O, OGroup::z(1)), ("a", Label::I, OGroup::trivial())],
        vec![QMatrix::zeros(0, 1)],
        vec![],
    )
    .expect("valid")
}

/// Even with non-idempotent falsum; J, I, J layers `Z`, `Z^2`, `Z`.
pub fn mixed_three() -> Bunch {
    Bunch::build(
        vec![
            ("t", Label::J, OGroup::z(1)),
            ("a", Label::I, OGroup::z(2)),
            ("b", Label::J, OGroup::z(1)),
        ],
        vec![QMatrix::zeros(2, 1), QMatrix::from_i64(&[&[1, 0]])],
        vec![("a", SubgroupSpec::new(vec![int_vec(&[1, 0]), int_vec(&[0, 2])]))],
    )
    .expect("valid")
}

/// Odd; `Q^2` projected onto `Q` at an I-node.
pub fn rational_layers() -> Bunch {
    Bunch::build(
        vec![("t", Label::O, OGroup::q(2)), ("a", Label::I, OGroup::q(1))],
        vec![QMatrix::from_i64(&[&[1, 0]])],
        vec![],
    )
    .expect("valid")
}

/// Even with non-idempotent falsum: a single J-node `Z`.
pub fn j_integers() -> Bunch {
    Bunch::build(vec![("t", Label::J, OGroup::z(1))], vec![], vec![]).expect("valid")
}

/// The bunches on which the axiom suite is run by default.
pub fn axiom_catalog() -> Vec<(&'static str, Bunch)> {
    vec![
        ("sugihara-odd-5", sugihara(3, true)),
        ("sugihara-even-6", sugihara(3, false)),
        ("odd-z-layer", odd_z_layer()),
        ("odd-z2-lex", odd_z2_lex()),
        ("z-then-trivial", z_then_trivial()),
        ("mixed-three", mixed_three()),
        ("rational-layers", rational_layers()),
        ("j-integers", j_integers()),
    ]
}

