//! Instances outside the structured classes: the 2-approximation against
//! the exhaustive optimum.

use structctl::generate::{generate, Family, GeneratorSpec};
use structctl::oracle::brute_force;
use structctl::{classify, solve, AssumptionClass, Mode, Problem};

fn main() {
    let mut shown = 0;
    for seed in 0.. {
        let spec = GeneratorSpec::new(Family::General, 7, 2, seed).with_density(0.2);
        let Ok(instance) = generate(&spec) else { continue };
        if classify(&instance) != AssumptionClass::General || instance.b.len() > 16 {
            continue;
        }
        let approx = solve(&instance, Problem::MinCost, Mode::Auto).unwrap();
        let optimum = brute_force(&instance).unwrap().min_cost.unwrap();
        println!(
            "seed {seed:3}: approx {:7.3} ({} entries)  optimum {:7.3} ({} entries)  ratio {:.3}",
            approx.cost(),
            approx.count(),
            optimum.cost,
            optimum.count,
            approx.cost() / optimum.cost
        );
        shown += 1;
        if shown == 10 {
            break;
        }
    }
}
