// Extending a direct system to a larger skeleton. New nodes copy the layer of the
// nearest old node below them.

use layerbunch::catalog::z_then_trivial;
use layerbunch::dirsys::{ds_closure, ds_validate, Label, Skeleton};

fn main() {
    let d = z_then_trivial().system().clone();
    let beta = Skeleton::new([("t", Label::O), ("s", Label::I), ("a", Label::I), ("b", Label::I)]).unwrap();
    let c = ds_closure(&d, &beta).unwrap();
    for (i, id) in c.skeleton().ids().iter().enumerate() {
        println!("{id}: rank {}", c.group(i).rank());
    }
    for (u, row) in c.transition_table().iter().enumerate() {
        for (k, h) in row.iter().enumerate() {
            println!("  {} -> {}: {:?}", c.skeleton().id(u), c.skeleton().id(u + k), h.matrix().to_strings());
        }
    }
    println!("validate: {}", ds_validate(&c));
}
