//! Bundled instances, parsed from the JSON files under `fixtures/`.

use crate::pattern::{parse_instance, SystemInstance};

pub const EXAMPLE1_JSON: &str = include_str!("../fixtures/example1.json");
pub const EXAMPLE2_JSON: &str = include_str!("../fixtures/example2.json");
pub const SYNTHETIC_118_JSON: &str = include_str!("../fixtures/synthetic118.json");

/// 10 states, 3 inputs; `Γ(A)` has a perfect matching and `G(A)` has three
/// source components.
pub fn example1() -> SystemInstance {
    parse_instance(EXAMPLE1_JSON).expect("bundled fixture is valid")
}

/// 8 states, 4 inputs; `G(A)` is strongly connected, `Γ(A)` has no perfect matching.
pub fn example2() -> SystemInstance {
    parse_instance(EXAMPLE2_JSON).expect("bundled fixture is valid")
}
