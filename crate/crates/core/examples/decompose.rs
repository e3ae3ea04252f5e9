// From a finite product table back to a bunch, and around again.

use layerbunch::catalog::sugihara;
use layerbunch::flechain::{roundtrip_check, table_decompose, FiniteChainTable, FleChain};

fn main() {
    // Even four-element Sugihara chain: 0 < 1 = f < 2 = t < 3.
    let t = FiniteChainTable::new(
        vec![vec![0, 0, 0, 0], vec![0, 1, 1, 3], vec![0, 1, 2, 3], vec![0, 3, 3, 3]],
        2,
        1,
    )
    .unwrap();
    let b = table_decompose(&t).unwrap();
    for i in 0..b.len() {
        println!("node {} label {}", b.skeleton().id(i), b.label(i));
    }
    let (back, _) = FiniteChainTable::from_chain(&FleChain::new(b).unwrap()).unwrap();
    println!("table recovered: {}", back == t);

    let goedel = FiniteChainTable::new(vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]], 2, 0).unwrap();
    println!("Goedel chain: {}", table_decompose(&goedel).unwrap_err());

    println!("round trip of the 7-element odd chain: {}", roundtrip_check(&sugihara(4, true), 5, 200, 1));
}
