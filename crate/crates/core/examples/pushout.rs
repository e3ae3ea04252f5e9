// Pushouts of integer embeddings: two copies of Z^2 glued along Z, and the
// doubling maps, where the glued group identifies more than the common part.

use layerbunch::ogroups::{group_pushout, OGroup, OGroupHom, QMatrix};

fn show(name: &str, i1: &OGroupHom, i2: &OGroupHom) {
    let p = group_pushout(i1, i2).unwrap();
    println!("{name}: rank {}", p.rank);
    println!("  j1 = {:?}", p.j1.to_strings());
    println!("  j2 = {:?}", p.j2.to_strings());
    assert_eq!(p.j1.mul(i1.matrix()), p.j2.mul(i2.matrix()));
}

fn main() {
    let e = QMatrix::from_i64(&[&[1], &[0]]);
    let i = OGroupHom::new(OGroup::z(1), OGroup::z(2), e).unwrap();
    show("Z -> Z^2, Z -> Z^2", &i, &i);

    let d = OGroupHom::new(OGroup::z(1), OGroup::z(1), QMatrix::from_i64(&[&[2]])).unwrap();
    show("x2, x2", &d, &d);
}
