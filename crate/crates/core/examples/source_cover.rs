//! Example 1 has a perfect matching in its state bipartite graph, so one
//! cheapest connection per source component is optimal for every objective.

use structctl::{fixtures, solve, Mode, Problem};

fn main() {
    let instance = fixtures::example1();
    for problem in Problem::ALL {
        let s = solve(&instance, problem, Mode::Auto).expect("example 1 is solvable");
        let picks: Vec<String> = s
            .selected
            .iter()
            .map(|e| format!("u{}->v{} ({})", e.col, e.row, e.cost))
            .collect();
        println!(
            "{problem:>17}: count {} cost {} via {} [{}]",
            s.count(),
            s.cost(),
            s.method.tag(),
            picks.join(", ")
        );
    }
}
