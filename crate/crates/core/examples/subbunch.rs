// Sub-bunch conditions against the algebra: Z inside Z^2, a sign flip, and
// an index-two subgroup.

use std::collections::BTreeMap;

use layerbunch::bunch::{subbunch_check, Bunch};
use layerbunch::dirsys::Label;
use layerbunch::flechain::subalgebra_sample;
use layerbunch::ogroups::{OGroup, QMatrix};

fn main() {
    let x = Bunch::build(vec![("t", Label::O, OGroup::z(1))], vec![], vec![]).unwrap();
    let y = Bunch::build(vec![("t", Label::O, OGroup::z(2))], vec![], vec![]).unwrap();
    for (name, m) in [
        ("n -> (n, 0)", QMatrix::from_i64(&[&[1], &[0]])),
        ("n -> (0, n)", QMatrix::from_i64(&[&[0], &[1]])),
        ("n -> (-n, 0)", QMatrix::from_i64(&[&[-1], &[0]])),
        ("n -> (2n, 0)", QMatrix::from_i64(&[&[2], &[0]])),
    ] {
        let maps = BTreeMap::from([("t".to_string(), m)]);
        let structural = subbunch_check(&x, &y, &maps);
        let algebraic = subalgebra_sample(&x, &y, &maps, 5, 200, 7);
        println!("{name}: structural {} / algebra {}", verdict(structural.is_ok()), verdict(algebraic.is_ok()));
        if !structural.is_ok() {
            println!("{}", structural.render().lines().map(|l| format!("    {l}")).collect::<Vec<_>>().join("\n"));
        }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "sub-bunch"
    } else {
        "rejected"
    }
}
