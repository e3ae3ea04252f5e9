// Amalgams need not be strong: with both legs doubling Z, the amalgam glues the
// odd integers of Y and Z together although X contains neither.

use layerbunch::amalgam::{amalgamate, strong_ap_counterwitness, strong_violations, VFormation};
use layerbunch::bunch::EmbeddingSpec;
use layerbunch::flechain::FleChain;

fn main() {
    let (v, r, w) = strong_ap_counterwitness().unwrap();
    let cw = FleChain::new(r.w.clone()).unwrap();
    let cy = FleChain::new(v.y.clone()).unwrap();
    let cz = FleChain::new(v.z.clone()).unwrap();
    println!("Y ∋ {} and Z ∋ {} meet at {} in W", cy.describe(&w.y), cz.describe(&w.z), cw.describe(&w.image));
    println!("all violations with |coords| <= 2: {}", strong_violations(&v, &r, 2).len());

    // With identity legs there is nothing outside the common part to collide.
    let id = EmbeddingSpec::identity_on(&v.x);
    let same = VFormation { x: v.x.clone(), y: v.x.clone(), z: v.x.clone(), iota1: id.clone(), iota2: id };
    let r = amalgamate(&same).unwrap();
    println!("identity formation violations: {}", strong_violations(&same, &r, 2).len());
}
