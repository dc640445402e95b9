//! Power-grid model on the bundled 118-bus synthetic topology: 53
//! generators (4 states each) and 65 loads (3 states each).

use std::time::Instant;

use structctl::generate::{generate_grid, GeneratorSpec, GridState, Topology};
use structctl::graph::{build_digraph, scc_decompose};
use structctl::{classify, fixtures, solve, Mode, Problem};

fn main() {
    let start = Instant::now();
    let topology = Topology::from_json(fixtures::SYNTHETIC_118_JSON).unwrap();
    let (instance, layout) =
        generate_grid(&topology, &GeneratorSpec::grid(topology.clone(), 10, 118)).unwrap();
    let scc = scc_decompose(&build_digraph(&instance));
    println!(
        "{} buses, {} lines: {} states, {} state edges, {} candidate inputs",
        topology.buses,
        topology.lines.len(),
        instance.d(),
        instance.a.len(),
        instance.b.len()
    );
    println!("class {}, {} source components", classify(&instance), scc.source_count());

    let s = solve(&instance, Problem::SparsestMinCost, Mode::Auto).unwrap();
    let on_load_energy = s
        .selected
        .iter()
        .filter(|e| layout.states[e.row].1 == GridState::LoadEnergy)
        .count();
    println!(
        "selected {} connections, cost {:.3}, {on_load_energy} into load energy states, in {:?}",
        s.count(),
        s.cost(),
        start.elapsed()
    );
}
