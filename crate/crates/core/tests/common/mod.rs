//! Shared instance builders, exhaustive reference implementations and
//! invariant checks used by the property suites and the acceptance gate.
#![allow(dead_code, clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use structctl::generate::{generate, generate_grid, synthetic_topology, Family, GenError, GeneratorSpec};
use structctl::graph::{
    build_bipartite, build_digraph, max_matching, scc_decompose, BipartiteEdge, BipartiteGraph,
    LeftVertex,
};
use structctl::matching::{assign_costs, min_cost_max_matching, CostVariant};
use structctl::oracle::{brute_force, probe_ranks};
use structctl::solvers::solve_perfect_matching;
use structctl::{
    apply_forbidden_set, classify, dualize, is_structurally_controllable, parse_instance,
    serialize_instance, solve, AssumptionClass, CostedInputPattern, InputConnection, Mode,
    NormPair, Problem, Solution, SparsityPattern, SystemInstance,
};

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent random `A` and `B` with integer costs in `0..=9`.
pub fn random_instance(rng: &mut impl Rng, d: usize, m: usize, pa: f64, pb: f64) -> SystemInstance {
    let mut a = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if rng.gen_bool(pa) {
                a.push((i, j));
            }
        }
    }
    let mut b = Vec::new();
    for i in 0..d {
        for j in 0..m {
            if rng.gen_bool(pb) {
                b.push(InputConnection::new(i, j, rng.gen_range(0..=9) as f64));
            }
        }
    }
    SystemInstance::new(SparsityPattern::new(d, a), CostedInputPattern::new(d, m, b), "")
}

/// Same pattern, integer costs in `0..=9`.
pub fn integer_costs(instance: &SystemInstance, rng: &mut impl Rng) -> SystemInstance {
    instance.with_inputs(instance.b.map_costs(|_| rng.gen_range(0..=9) as f64))
}

/// Add random integer-cost entries to `B` up to a random size of at most 14
/// (or the full `d x m` grid). Class and feasibility depend on `A` and grow
/// monotonically in `B`, so both are preserved.
pub fn pad_inputs(instance: &SystemInstance, rng: &mut impl Rng) -> SystemInstance {
    let (d, m) = (instance.d(), instance.m());
    let cap = (d * m).min(14);
    let target = rng.gen_range(instance.b.len().min(cap)..=cap);
    let mut entries = instance.b.entries().to_vec();
    let mut free: Vec<(usize, usize)> = (0..d)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .filter(|&(i, j)| instance.b.get(i, j).is_none())
        .collect();
    while entries.len() < target && !free.is_empty() {
        let (i, j) = free.swap_remove(rng.gen_range(0..free.len()));
        entries.push(InputConnection::new(i, j, rng.gen_range(0..=9) as f64));
    }
    instance.with_inputs(CostedInputPattern::new(d, m, entries))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Pm,
    Sc,
    Tree,
    Combined,
    General,
}

impl Target {
    pub const EXACT: [Target; 4] = [Target::Pm, Target::Sc, Target::Tree, Target::Combined];

    pub fn name(self) -> &'static str {
        match self {
            Target::Pm => "pm",
            Target::Sc => "sc",
            Target::Tree => "tree",
            Target::Combined => "combined",
            Target::General => "general",
        }
    }

    fn accepts(self, class: AssumptionClass) -> bool {
        matches!(
            (self, class),
            (Target::Pm, AssumptionClass::PerfectMatching)
                | (Target::Sc, AssumptionClass::StronglyConnected)
                | (Target::Tree, AssumptionClass::RootedTree { .. })
                | (Target::Combined, AssumptionClass::PerfectMatchingAndStronglyConnected)
                | (Target::General, AssumptionClass::General)
        )
    }
}

/// A controllable instance of the requested class with `d <= 7`, `m <= 4`,
/// `|B| <= 14` and integer costs, drawn deterministically from `seed`.
pub fn class_instance(target: Target, seed: u64) -> SystemInstance {
    let mut r = rng(seed ^ 0x5eed_cafe);
    for attempt in 0..10_000u64 {
        let d = r.gen_range(2..=7);
        let m = r.gen_range(1..=4);
        let (family, density) = match target {
            Target::Pm => (Family::Pm, r.gen_range(0.05..0.3)),
            Target::Sc => (Family::Sc, r.gen_range(0.0..0.15)),
            Target::Tree => (Family::Tree, r.gen_range(0.0..0.4)),
            Target::Combined => {
                if r.gen_bool(0.5) {
                    (Family::Pm, r.gen_range(0.2..0.6))
                } else {
                    (Family::Sc, r.gen_range(0.2..0.6))
                }
            }
            Target::General => (Family::General, r.gen_range(0.1..0.35)),
        };
        let spec = GeneratorSpec::new(family, d, m, seed.wrapping_mul(10_007).wrapping_add(attempt))
            .with_density(density);
        let Ok(inst) = generate(&spec) else { continue };
        if inst.b.len() > 14 || !target.accepts(classify(&inst)) {
            continue;
        }
        let inst = pad_inputs(&integer_costs(&inst, &mut r), &mut r);
        if is_structurally_controllable(&inst) {
            return inst;
        }
    }
    panic!("no {} instance for seed {seed}", target.name());
}

// ---------------------------------------------------------------------------
// Reference implementations

/// Component label per vertex (smallest member) and source flags, from the
/// transitive closure.
pub fn reference_scc(d: usize, edges: &[(usize, usize)]) -> (Vec<usize>, BTreeSet<usize>) {
    let mut reach = vec![vec![false; d]; d];
    for (v, row) in reach.iter_mut().enumerate() {
        row[v] = true;
    }
    for &(from, to) in edges {
        reach[from][to] = true;
    }
    for k in 0..d {
        for i in 0..d {
            if reach[i][k] {
                for j in 0..d {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    let label: Vec<usize> = (0..d)
        .map(|v| (0..d).find(|&u| reach[u][v] && reach[v][u]).unwrap())
        .collect();
    let mut sources: BTreeSet<usize> = label.iter().copied().collect();
    for &(from, to) in edges {
        if label[from] != label[to] {
            sources.remove(&label[to]);
        }
    }
    (label, sources)
}

/// Exhaustive `(max matching size, min cost at that size)` by dynamic
/// programming over right vertices and the set of used left vertices.
pub fn reference_matching(g: &BipartiteGraph) -> (usize, f64) {
    let n_right = g.right_count();
    let mut by_right: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n_right];
    for e in &g.edges {
        by_right[e.right].push((g.left_index(e.left), e.cost));
    }
    fn best(
        r: usize,
        used: u64,
        by_right: &[Vec<(usize, f64)>],
        memo: &mut HashMap<(usize, u64), (usize, f64)>,
    ) -> (usize, f64) {
        if r == by_right.len() {
            return (0, 0.0);
        }
        if let Some(&v) = memo.get(&(r, used)) {
            return v;
        }
        let mut out = best(r + 1, used, by_right, memo);
        for &(l, c) in &by_right[r] {
            if used & (1 << l) == 0 {
                let (s, k) = best(r + 1, used | (1 << l), by_right, memo);
                let cand = (s + 1, k + c);
                if cand.0 > out.0 || (cand.0 == out.0 && cand.1 < out.1) {
                    out = cand;
                }
            }
        }
        memo.insert((r, used), out);
        out
    }
    best(0, 0, &by_right, &mut HashMap::new())
}

/// A random bipartite graph with `right` state vertices and `inputs` extra
/// left vertices; every edge gets an integer cost in `0..=9`.
pub fn random_bipartite(rng: &mut impl Rng, right: usize, inputs: usize, p: f64) -> BipartiteGraph {
    let mut edges = Vec::new();
    for r in 0..right {
        for l in 0..right + inputs {
            if rng.gen_bool(p) {
                let left = if l < right {
                    LeftVertex::State(l)
                } else {
                    LeftVertex::Input(l - right)
                };
                edges.push(BipartiteEdge {
                    left,
                    right: r,
                    cost: rng.gen_range(0..=9) as f64,
                });
            }
        }
    }
    BipartiteGraph {
        state_count: right,
        input_count: inputs,
        edges,
    }
}

// ---------------------------------------------------------------------------
// Invariant checks

pub fn check_scc(instance: &SystemInstance) -> Check {
    let d = instance.d();
    let digraph = build_digraph(instance);
    let scc = scc_decompose(&digraph);
    let (label, sources) = reference_scc(d, &digraph.state_edges);
    for v in 0..d {
        let ours = scc.components[scc.component_of[v]][0];
        ensure!(ours == label[v], "v{v}: component led by {ours}, expected {}", label[v]);
    }
    let ours: BTreeSet<usize> = scc.sources().iter().map(|&c| scc.components[c][0]).collect();
    ensure!(ours == sources, "sources {ours:?}, expected {sources:?}");
    Ok(())
}

pub fn check_max_matching(g: &BipartiteGraph) -> Check {
    let (size, cost) = reference_matching(g);
    let hk = max_matching(g);
    ensure!(hk.len() == size, "max matching {} != exhaustive {size}", hk.len());
    let mc = min_cost_max_matching(g);
    ensure!(mc.len() == size, "MCMM size {} != exhaustive {size}", mc.len());
    ensure!(mc.cost == cost, "MCMM cost {} != exhaustive {cost}", mc.cost);
    let mut rights = BTreeSet::new();
    let mut lefts = BTreeSet::new();
    for e in &mc.edges {
        ensure!(rights.insert(e.right) && lefts.insert(g.left_index(e.left)), "not a matching");
    }
    Ok(())
}

/// With strictly positive input costs, the state edges of an MCMM form a
/// maximum matching of `Γ(A)`.
pub fn check_state_part_maximum(instance: &SystemInstance) -> Check {
    let positive = instance.with_inputs(instance.b.map_costs(|w| w + 1.0));
    let g = assign_costs(&build_bipartite(&positive), &positive, CostVariant::C);
    let mc = min_cost_max_matching(&g);
    let nu = max_matching(&g.state_part()).len();
    ensure!(
        mc.state_edge_count() == nu,
        "MCMM uses {} state edges, Γ(A) has maximum {nu}",
        mc.state_edge_count()
    );
    Ok(())
}

/// An MCMM under `w + 1` costs is also cost-optimal under `w`.
pub fn check_c1_transfer(instance: &SystemInstance) -> Check {
    let g = build_bipartite(instance);
    let c = min_cost_max_matching(&assign_costs(&g, instance, CostVariant::C));
    let c1 = min_cost_max_matching(&assign_costs(&g, instance, CostVariant::C1));
    ensure!(c.len() == c1.len(), "sizes differ: {} vs {}", c.len(), c1.len());
    let c1_under_c = c1.cost - c1.input_edges().count() as f64;
    ensure!(c1_under_c == c.cost, "C-cost of C1 optimum {c1_under_c} != {}", c.cost);
    Ok(())
}

pub fn check_monotone(instance: &SystemInstance, rng: &mut impl Rng) -> Check {
    let sub = instance.with_inputs(instance.b.filter(|_| rng.gen_bool(0.6)));
    if is_structurally_controllable(&sub) {
        ensure!(is_structurally_controllable(instance), "adding inputs lost controllability");
    }
    Ok(())
}

/// With a perfect matching in `Γ(A)`, controllability is exactly "every
/// source component receives an input".
pub fn check_pm_reduction(instance: &SystemInstance) -> Check {
    if !structctl::graph::has_perfect_matching(instance) {
        return Ok(());
    }
    let scc = scc_decompose(&build_digraph(instance));
    let covered = scc.sources().iter().all(|&c| {
        scc.components[c]
            .iter()
            .any(|&v| instance.b.entries().iter().any(|e| e.row == v))
    });
    ensure!(
        covered == is_structurally_controllable(instance),
        "cover test {covered} disagrees with checker"
    );
    Ok(())
}

/// Every random realization has rank `d` exactly when the pattern is
/// structurally controllable.
pub fn check_probe(instance: &SystemInstance, seed: u64) -> Check {
    let keys: Vec<(usize, usize)> = instance.b.entries().iter().map(InputConnection::key).collect();
    let ranks = probe_ranks(instance, &keys, 3, seed).map_err(|e| e.to_string())?;
    let structural = is_structurally_controllable(instance);
    let d = instance.d();
    for (t, &r) in ranks.iter().enumerate() {
        ensure!(
            (r == d) == structural,
            "draw {t}: rank {r} of {d}, structural {structural}"
        );
    }
    Ok(())
}

pub fn check_feasible(instance: &SystemInstance, s: &Solution) -> Check {
    for e in &s.selected {
        let found = instance.b.get(e.row, e.col);
        ensure!(
            found.is_some_and(|f| f.cost == e.cost),
            "selected ({}, {}) not in B",
            e.row,
            e.col
        );
    }
    ensure!(s.norms == NormPair::of(&s.selected), "norms do not match selection");
    let keep: BTreeSet<(usize, usize)> = s.keys().into_iter().collect();
    let reduced = instance.with_inputs(instance.b.filter(|e| keep.contains(&e.key())));
    ensure!(is_structurally_controllable(&reduced), "selection is not controllable");
    Ok(())
}

/// Solver results against the exhaustive optimum for all three problems.
pub fn check_exact(instance: &SystemInstance) -> Check {
    let oracle = brute_force(instance).map_err(|e| e.to_string())?;
    ensure!(oracle.feasible, "oracle finds the instance infeasible");
    let class = classify(instance);
    for problem in Problem::ALL {
        let s = solve(instance, problem, Mode::Auto)
            .map_err(|e| format!("{problem} on {class}: {e}"))?;
        check_feasible(instance, &s).map_err(|e| format!("{problem}: {e}"))?;
        ensure!(s.exact, "{problem} on {class} not flagged exact");
        let opt = oracle.optimum(problem).unwrap();
        match problem {
            Problem::MinCost => ensure!(
                s.cost() == opt.cost,
                "min-cost on {class}: {} vs optimum {}",
                s.cost(),
                opt.cost
            ),
            Problem::MinCount => ensure!(
                s.count() == opt.count,
                "min-count on {class}: {} vs optimum {}",
                s.count(),
                opt.count
            ),
            Problem::SparsestMinCost => ensure!(
                (s.count(), s.cost()) == (opt.count, opt.cost),
                "sparsest-min-cost on {class}: ({}, {}) vs optimum ({}, {})",
                s.count(),
                s.cost(),
                opt.count,
                opt.cost
            ),
        }
    }
    if matches!(class, AssumptionClass::PerfectMatching) {
        let q = scc_decompose(&build_digraph(instance)).source_count();
        let s = solve(instance, Problem::MinCost, Mode::Auto).unwrap();
        ensure!(s.count() == q, "source cover has {} entries, {q} sources", s.count());
    }
    Ok(())
}

/// Approximation ratio of the min-cost heuristic on a controllable instance.
pub fn approx_ratio(instance: &SystemInstance) -> Result<f64, String> {
    let s = solve(instance, Problem::MinCost, Mode::Approx).map_err(|e| e.to_string())?;
    check_feasible(instance, &s)?;
    let opt = brute_force(instance).map_err(|e| e.to_string())?.min_cost.unwrap().cost;
    ensure!(s.cost() <= 2.0 * opt, "cost {} exceeds twice the optimum {opt}", s.cost());
    Ok(if opt == 0.0 { 1.0 } else { s.cost() / opt })
}

pub fn check_oracle_relations(instance: &SystemInstance) -> Check {
    let r = brute_force(instance).map_err(|e| e.to_string())?;
    ensure!(
        r.feasible == is_structurally_controllable(instance),
        "oracle feasibility {} disagrees with checker",
        r.feasible
    );
    let (Some(p1), Some(p2), Some(cnt)) = (&r.min_cost, &r.sparsest_min_cost, &r.min_count) else {
        return Ok(());
    };
    ensure!(p2.count <= p1.witness.len(), "P2 count above P1 witness count");
    ensure!(p1.cost <= p2.cost, "P1 cost above P2 cost");
    ensure!(p2.count == cnt.count, "P2 count differs from minimum count");
    Ok(())
}

pub fn check_deterministic(instance: &SystemInstance) -> Check {
    for problem in Problem::ALL {
        let (Ok(a), Ok(b)) = (solve(instance, problem, Mode::Auto), solve(instance, problem, Mode::Auto))
        else {
            continue;
        };
        ensure!(a.to_json() == b.to_json(), "{problem} output differs between runs");
    }
    Ok(())
}

/// Scaling every cost by `lambda` keeps the source-cover selection and
/// scales its cost.
pub fn check_scaling(instance: &SystemInstance, lambda: f64) -> Check {
    let Ok(base) = solve_perfect_matching(instance, Problem::MinCost) else {
        return Ok(());
    };
    let scaled = instance.with_inputs(instance.b.map_costs(|w| w * lambda));
    let s = solve_perfect_matching(&scaled, Problem::MinCost).map_err(|e| e.to_string())?;
    ensure!(s.keys() == base.keys(), "selection changed under scaling by {lambda}");
    let expected = base.cost() * lambda;
    ensure!(
        (s.cost() - expected).abs() <= 1e-9 * expected.abs().max(1.0),
        "cost {} != {expected}",
        s.cost()
    );
    Ok(())
}

pub fn check_pattern_ops(instance: &SystemInstance, rng: &mut impl Rng) -> Check {
    let text = serialize_instance(instance);
    let back = parse_instance(&text).map_err(|e| e.to_string())?;
    ensure!(&back == instance, "parse(serialize(x)) != x");
    ensure!(serialize_instance(&back) == text, "serialize(parse(s)) != s");

    let forbidden: BTreeSet<usize> = (0..instance.d()).filter(|_| rng.gen_bool(0.3)).collect();
    let reduced = apply_forbidden_set(instance, &forbidden).map_err(|e| e.to_string())?;
    ensure!(reduced.a == instance.a, "forbidden set touched A");
    for e in reduced.b.entries() {
        ensure!(instance.b.entries().contains(e), "forbidden set added an entry");
        ensure!(!forbidden.contains(&e.row), "forbidden row {} kept", e.row);
    }

    ensure!(dualize(&dualize(instance)).a == instance.a, "dualize is not an involution");
    let norms = instance.b.norms();
    let sum: f64 = instance.b.entries().iter().map(|e| e.cost).sum();
    ensure!(norms.count == instance.b.len() && norms.cost == sum, "norms mismatch");
    Ok(())
}

/// `Ok(false)` when the spec is infeasible (more unmatched states than
/// inputs), which the generator reports instead of producing an instance.
pub fn check_family(target: Target, seed: u64) -> Result<bool, String> {
    let mut r = rng(seed);
    let d = r.gen_range(2..=30);
    let m = r.gen_range(1..=5);
    let density = r.gen_range(0.0..0.3);
    let family = match target {
        Target::Pm => Family::Pm,
        Target::Sc => Family::Sc,
        Target::Tree => Family::Tree,
        _ => Family::General,
    };
    let spec = GeneratorSpec::new(family, d, m, seed).with_density(density);
    let inst = match generate(&spec) {
        Ok(inst) => inst,
        Err(GenError::Infeasible(_)) => return Ok(false),
        Err(e) => return Err(e.to_string()),
    };
    ensure!(
        serialize_instance(&inst) == serialize_instance(&generate(&spec).unwrap()),
        "generation is not deterministic"
    );
    let class = classify(&inst);
    let ok = match target {
        Target::Pm => matches!(
            class,
            AssumptionClass::PerfectMatching | AssumptionClass::PerfectMatchingAndStronglyConnected
        ),
        Target::Sc => matches!(
            class,
            AssumptionClass::StronglyConnected | AssumptionClass::PerfectMatchingAndStronglyConnected
        ),
        Target::Tree => matches!(class, AssumptionClass::RootedTree { .. }),
        _ => true,
    };
    ensure!(ok, "{} family (d={d}) classified as {class}", target.name());
    ensure!(is_structurally_controllable(&inst), "generated instance not controllable");
    Ok(true)
}

pub fn check_grid(seed: u64) -> Check {
    let mut r = rng(seed);
    let buses = r.gen_range(10..=118);
    let gens = r.gen_range(1..buses);
    let topo = synthetic_topology(buses, gens, seed).map_err(|e| e.to_string())?;
    let m = r.gen_range(1..=10);
    let (inst, _) =
        generate_grid(&topo, &GeneratorSpec::grid(topo.clone(), m, seed)).map_err(|e| e.to_string())?;
    let loads = buses - gens;
    ensure!(inst.d() == 4 * gens + 3 * loads, "state count {}", inst.d());
    let q = scc_decompose(&build_digraph(&inst)).source_count();
    ensure!(q == loads, "{q} source components for {loads} loads");
    ensure!(is_structurally_controllable(&inst), "grid instance not controllable");
    Ok(())
}
