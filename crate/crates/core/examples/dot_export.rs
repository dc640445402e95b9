//! Print G(A, B) of Example 2 in Graphviz format.
//!
//! `cargo run --example dot_export | dot -Tsvg > example2.svg`

use structctl::{fixtures, graph::to_dot};

fn main() {
    print!("{}", to_dot(&fixtures::example2()));
}
