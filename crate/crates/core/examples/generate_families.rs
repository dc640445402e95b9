//! Random instance families and the class each one lands in.

use std::collections::BTreeMap;

use structctl::generate::{generate, Family, GeneratorSpec};
use structctl::{classify, serialize_instance};

fn main() {
    for family in [Family::Pm, Family::Sc, Family::Tree, Family::General] {
        let mut classes: BTreeMap<&str, usize> = BTreeMap::new();
        let mut infeasible = 0;
        for seed in 0..200 {
            match generate(&GeneratorSpec::new(family, 12, 3, seed).with_density(0.1)) {
                Ok(instance) => *classes.entry(classify(&instance).name()).or_default() += 1,
                Err(_) => infeasible += 1,
            }
        }
        println!("{family:>8}: {classes:?}, {infeasible} infeasible specs");
    }
    let sample = generate(&GeneratorSpec::new(Family::Tree, 4, 2, 0)).unwrap();
    println!("{}", serialize_instance(&sample));
}
