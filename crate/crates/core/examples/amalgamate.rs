// Amalgams of V-formations: two planes over a line, and two extensions of Z where
// one kills the layer and the other keeps it.

use layerbunch::amalgam::{amalgamate, verify_amalgam, VFormation};
use layerbunch::bunch::{Bunch, EmbeddingSpec};
use layerbunch::dirsys::Label;
use layerbunch::ogroups::{OGroup, QMatrix};

fn along(m: QMatrix) -> EmbeddingSpec {
    EmbeddingSpec::inclusion([("t".to_string(), m)].into())
}

fn report(name: &str, v: &VFormation) {
    let r = amalgamate(v).unwrap();
    let sk = r.w.skeleton();
    println!("{name}");
    for i in 0..r.w.len() {
        println!("  {} ({}): rank {}, order {:?}", sk.id(i), sk.label(i), r.w.group(i).rank(), r.orders[i].to_strings());
    }
    println!("  Y -> W at t: {:?}", r.iota3.layer_maps["t"].to_strings());
    println!("  Z -> W at t: {:?}", r.iota4.layer_maps["t"].to_strings());
    println!("  verify: {}", verify_amalgam(v, &r, 5, 300, 1));
}

fn main() {
    let line = Bunch::build(vec![("t", Label::O, OGroup::z(1))], vec![], vec![]).unwrap();
    let plane = Bunch::build(vec![("t", Label::O, OGroup::z(2))], vec![], vec![]).unwrap();
    let e = along(QMatrix::from_i64(&[&[1], &[0]]));
    let v = VFormation { x: line.clone(), y: plane.clone(), z: plane, iota1: e.clone(), iota2: e };
    report("planes over a line", &v);

    let y = Bunch::build(
        vec![("t", Label::O, OGroup::z(1)), ("a", Label::I, OGroup::trivial())],
        vec![QMatrix::zeros(0, 1)],
        vec![],
    )
    .unwrap();
    let z = Bunch::build(
        vec![("t", Label::O, OGroup::z(1)), ("b", Label::I, OGroup::z(1))],
        vec![QMatrix::identity(1)],
        vec![],
    )
    .unwrap();
    let e = along(QMatrix::identity(1));
    let v = VFormation { x: line, y, z, iota1: e.clone(), iota2: e };
    report("zero transition", &v);
}
