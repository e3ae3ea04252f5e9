// Sugihara chains from all-trivial bunches: elements in order and the product table.

use layerbunch::catalog::sugihara;
use layerbunch::flechain::FleChain;

fn main() {
    for (n, odd) in [(3, true), (2, false)] {
        let c = FleChain::new(sugihara(n, odd)).expect("valid bunch");
        let elems = c.finite_enumerate().expect("all layers trivial");
        let names: Vec<String> = elems.iter().map(|x| c.describe(x)).collect();
        println!("{} chain, {} elements: {}", if odd { "odd" } else { "even" }, elems.len(), names.join(" < "));
        println!("  t = {}, f = {}", c.describe(&c.unit()), c.describe(&c.falsum()));
        for x in &elems {
            let row: Vec<String> = elems.iter().map(|y| format!("{:>7}", c.describe(&c.mul(x, y)))).collect();
            println!("  {:>7} | {}", c.describe(x), row.join(" "));
        }
    }
}
