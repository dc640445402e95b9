//! Solver output next to exhaustive search and a numerical rank probe on
//! small generated instances.

use structctl::generate::{generate, Family, GeneratorSpec};
use structctl::oracle::{brute_force, numerical_probe};
use structctl::{classify, solve, Mode, Problem};

fn main() {
    for (family, seed) in [(Family::Pm, 1), (Family::Sc, 2), (Family::Tree, 3), (Family::Pm, 4)] {
        let instance = generate(&GeneratorSpec::new(family, 6, 3, seed).with_density(0.15)).unwrap();
        let oracle = brute_force(&instance).unwrap();
        println!(
            "{family} seed {seed} ({}), |B|={}, {} subsets checked",
            classify(&instance),
            instance.b.len(),
            oracle.checked
        );
        for problem in Problem::ALL {
            let s = solve(&instance, problem, Mode::Auto).unwrap();
            let o = oracle.optimum(problem).unwrap();
            let probe = numerical_probe(&instance, &s.keys(), 3, seed).unwrap();
            println!(
                "  {problem:>17}: solver ({}, {:.3})  oracle ({}, {:.3})  probe full rank: {probe}",
                s.count(),
                s.cost(),
                o.count,
                o.cost
            );
        }
    }
}
