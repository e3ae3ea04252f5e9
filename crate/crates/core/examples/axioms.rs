// The chain axioms on the algebras of the catalog bunches.

use std::time::Instant;

use layerbunch::bunch::bunch_classify;
use layerbunch::catalog::axiom_catalog;
use layerbunch::flechain::{axiom_suite, FleChain};

fn main() {
    for (name, b) in axiom_catalog() {
        let class = bunch_classify(&b);
        let c = FleChain::new(b).unwrap();
        let start = Instant::now();
        let r = axiom_suite(&c, 5, 500, 1);
        println!("{name:<16} {:?} symm={} -> {} ({:?})", class.rank, class.symm, r, start.elapsed());
    }
}
