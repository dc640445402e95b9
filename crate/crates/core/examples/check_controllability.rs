//! Structural controllability of Example 1, before and after forbidding
//! input-connections into some states.

use std::collections::BTreeSet;

use structctl::{apply_forbidden_set, check_controllability, classify, fixtures};

fn main() {
    let instance = fixtures::example1();
    let report = check_controllability(&instance);
    println!("example 1: controllable={} class={}", report.controllable, classify(&instance));
    println!("source components: {}", report.source_count);

    let forbidden = BTreeSet::from([2, 6, 9]);
    let reduced = apply_forbidden_set(&instance, &forbidden).expect("states in range");
    let report = check_controllability(&reduced);
    println!(
        "without inputs into {forbidden:?}: controllable={} ({report})",
        report.controllable
    );
}
