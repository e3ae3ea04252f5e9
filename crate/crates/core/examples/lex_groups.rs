// Lexicographically ordered groups, covers, and the order-preservation test for
// homomorphisms, checked against brute force on a box.

use layerbunch::ogroups::{og_compare, og_cover, q, order_preserving_on_box, CoverDir, OGroup, OGroupHom, QMatrix};

fn main() {
    // x > 0 iff x1 + x2 > 0, or x1 + x2 = 0 and x2 > 0.
    let g = OGroup::int_lex(QMatrix::from_i64(&[&[1, 1], &[0, 1]])).unwrap();
    let (a, b) = (vec![q(2), q(-1)], vec![q(-1), q(2)]);
    println!("(2,-1) vs (-1,2): {:?}", og_compare(&g, &a, &b));
    println!("discrete: {}, atom: {:?}", g.is_discrete(), g.atom().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()));
    let up = og_cover(&g, &a, CoverDir::Up);
    println!("cover of (2,-1): ({}, {})", up[0], up[1]);

    let z = OGroup::z(1);
    for m in [&[&[1i64, 1][..]][..], &[&[1, 0]], &[&[0, 1]]] {
        let h = OGroupHom::new(g.clone(), z.clone(), QMatrix::from_i64(m)).unwrap();
        println!(
            "{:?}: order preserving {} (brute force on [-5,5]^2: {})",
            h.matrix().to_strings(),
            h.is_order_preserving(),
            order_preserving_on_box(&h, 5)
        );
    }
}
