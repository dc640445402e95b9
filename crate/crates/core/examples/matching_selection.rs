//! Example 2 is strongly connected without a perfect matching; the
//! selection comes from a minimum-cost maximum matching of Γ(A, B) under
//! each cost function.

use structctl::graph::build_bipartite;
use structctl::matching::{assign_costs, min_cost_max_matching, CostVariant};
use structctl::{fixtures, solve, Mode, Problem};

fn main() {
    let instance = fixtures::example2();
    let bipartite = build_bipartite(&instance);
    for variant in [CostVariant::C, CostVariant::CUniform, CostVariant::C1] {
        let m = min_cost_max_matching(&assign_costs(&bipartite, &instance, variant));
        let inputs: Vec<String> = m
            .input_edges()
            .map(|e| format!("{:?}->v{}", e.left, e.right))
            .collect();
        println!(
            "{variant:?}: size {} cost {} state edges {} inputs [{}]",
            m.len(),
            m.cost,
            m.state_edge_count(),
            inputs.join(", ")
        );
    }
    for problem in Problem::ALL {
        let s = solve(&instance, problem, Mode::Auto).unwrap();
        println!("{problem}: {}", s.to_json());
    }
}
