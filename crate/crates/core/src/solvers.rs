//! Selection of input-connections that keep `(A, B*)` structurally
//! controllable at least cost.
//!
//! * [`solve_single_edge`]: `Γ(A)` has a perfect matching and `G(A)` is
//!   strongly connected, so one connection suffices.
//! * [`solve_perfect_matching`]: `Γ(A)` has a perfect matching; pick the
//!   cheapest connection into every source component.
//! * [`solve_sdr`]: `G(A)` is strongly connected or a rooted tree; take the
//!   input edges of a minimum-cost maximum matching of `Γ(A, B)`.
//! * [`solve_general_approx`]: any controllable instance, minimum cost within
//!   a factor of two.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::SolveError;
use crate::graph::{
    build_bipartite, build_digraph, check_controllability, classify, has_perfect_matching,
    scc_decompose, AssumptionClass, LeftVertex, Matching,
};
use crate::matching::{assign_costs, min_cost_max_matching, CostVariant};
use crate::pattern::{InputConnection, NormPair, SystemInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    /// Minimize `‖B'‖_w`.
    MinCost,
    /// Minimize `‖B'‖_0`.
    MinCount,
    /// Minimize `‖B'‖_w` among the sparsest feasible `B'`.
    SparsestMinCost,
}

impl Problem {
    pub const ALL: [Problem; 3] = [Problem::MinCost, Problem::MinCount, Problem::SparsestMinCost];

    pub fn name(self) -> &'static str {
        match self {
            Problem::MinCost => "min-cost",
            Problem::MinCount => "min-count",
            Problem::SparsestMinCost => "sparsest-min-cost",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Problem::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown problem '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Pick the exact algorithm for the instance class; fall back to the
    /// approximation for min-cost on general instances.
    Auto,
    /// Fail instead of approximating.
    ExactOnly,
    /// Always use the 2-approximation (min-cost only).
    Approx,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Auto => "auto",
            Mode::ExactOnly => "exact-only",
            Mode::Approx => "approx",
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Mode::Auto),
            "exact-only" => Ok(Mode::ExactOnly),
            "approx" => Ok(Mode::Approx),
            _ => Err(format!("unknown mode '{s}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    #[serde(rename = "alg1")]
    SourceCover,
    #[serde(rename = "alg2")]
    MatchingSdr,
    #[serde(rename = "alg2-tree")]
    MatchingSdrTree,
    #[serde(rename = "alg3")]
    Approx,
    #[serde(rename = "oracle")]
    Oracle,
    #[serde(rename = "single-edge")]
    SingleEdge,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::SourceCover => "alg1",
            Method::MatchingSdr => "alg2",
            Method::MatchingSdrTree => "alg2-tree",
            Method::Approx => "alg3",
            Method::Oracle => "oracle",
            Method::SingleEdge => "single-edge",
        }
    }
}

/// The connection chosen for one source component.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverEntry {
    pub component: usize,
    pub connection: InputConnection,
}

/// Why the selected set is feasible.
#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    /// One connection per source component (perfect-matching case).
    SourceCover(Vec<CoverEntry>),
    /// A matching of `Γ(A, B*)` saturating every state copy.
    SaturatingMatching(Matching),
    /// Accessibility from the cover, no dilation from the matching.
    Combined {
        cover: Vec<CoverEntry>,
        matching: Matching,
    },
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    /// Sorted by `(row, col)`, no duplicates.
    pub selected: Vec<InputConnection>,
    pub norms: NormPair,
    pub method: Method,
    pub exact: bool,
    pub certificate: Certificate,
}

impl Solution {
    pub fn new(
        mut selected: Vec<InputConnection>,
        method: Method,
        exact: bool,
        certificate: Certificate,
    ) -> Self {
        selected.sort_by_key(InputConnection::key);
        selected.dedup_by_key(|e| e.key());
        let norms = NormPair::of(&selected);
        Solution {
            selected,
            norms,
            method,
            exact,
            certificate,
        }
    }

    pub fn count(&self) -> usize {
        self.norms.count
    }

    pub fn cost(&self) -> f64 {
        self.norms.cost
    }

    pub fn keys(&self) -> Vec<(usize, usize)> {
        self.selected.iter().map(InputConnection::key).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("solution serialization cannot fail")
    }
}

impl Serialize for Solution {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            selected: &'a [InputConnection],
            count: usize,
            cost: f64,
            method: Method,
            exact: bool,
        }
        Wire {
            selected: &self.selected,
            count: self.norms.count,
            cost: self.norms.cost,
            method: self.method,
            exact: self.exact,
        }
        .serialize(serializer)
    }
}

fn ensure_controllable(instance: &SystemInstance) -> Result<(), SolveError> {
    let violations = instance.validate();
    if !violations.is_empty() {
        return Err(SolveError::InvalidInstance(violations));
    }
    let report = check_controllability(instance);
    if report.controllable {
        Ok(())
    } else {
        Err(SolveError::NotStructurallyControllable(report))
    }
}

/// `(cost, row, col)` ordering: cheapest first, then lowest state, then
/// lowest input.
fn cheaper(a: &InputConnection, b: &InputConnection, uniform: bool) -> bool {
    let (ca, cb) = if uniform { (1.0, 1.0) } else { (a.cost, b.cost) };
    match ca.total_cmp(&cb) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => a.key() < b.key(),
    }
}

/// The cheapest connection into each source component of `G(A)`.
fn source_cover(
    instance: &SystemInstance,
    uniform: bool,
) -> Result<Vec<CoverEntry>, SolveError> {
    let scc = scc_decompose(&build_digraph(instance));
    let mut best: Vec<Option<InputConnection>> = vec![None; scc.len()];
    for e in instance.b.entries() {
        let c = scc.component_of[e.row];
        if !scc.is_source[c] {
            continue;
        }
        match &best[c] {
            Some(cur) if !cheaper(e, cur, uniform) => {}
            _ => best[c] = Some(*e),
        }
    }
    scc.sources()
        .into_iter()
        .map(|c| match best[c] {
            Some(connection) => Ok(CoverEntry {
                component: c,
                connection,
            }),
            None => Err(SolveError::UncoveredSource {
                component: c,
                states: scc.components[c].clone(),
            }),
        })
        .collect()
}

/// Input edges of a minimum-cost maximum matching of `Γ(A, B)` under `variant`.
fn matching_selection(
    instance: &SystemInstance,
    variant: CostVariant,
) -> Result<(Vec<InputConnection>, Matching), SolveError> {
    let costed = assign_costs(&build_bipartite(instance), instance, variant);
    let matching = min_cost_max_matching(&costed);
    if matching.len() != instance.d() {
        return Err(SolveError::Unsaturated {
            matched: matching.len(),
            d: instance.d(),
        });
    }
    let selected = matching
        .input_edges()
        .map(|e| match e.left {
            LeftVertex::Input(j) => *instance.b.get(e.right, j).expect("edge comes from B"),
            LeftVertex::State(_) => unreachable!(),
        })
        .collect();
    Ok((selected, matching))
}

/// Single cheapest connection; requires a perfect matching in `Γ(A)` and a
/// strongly connected `G(A)`. Exact for every problem.
pub fn solve_single_edge(instance: &SystemInstance) -> Result<Solution, SolveError> {
    ensure_controllable(instance)?;
    let class = classify(instance);
    if class != AssumptionClass::PerfectMatchingAndStronglyConnected {
        return Err(SolveError::Precondition(format!(
            "single-edge selection needs a perfect matching and strong connectivity, got {class}"
        )));
    }
    let best = instance
        .b
        .entries()
        .iter()
        .copied()
        .reduce(|best, e| if cheaper(&e, &best, false) { e } else { best })
        .expect("controllable instance has an input-connection");
    let cover = vec![CoverEntry {
        component: 0,
        connection: best,
    }];
    Ok(Solution::new(
        vec![best],
        Method::SingleEdge,
        true,
        Certificate::SourceCover(cover),
    ))
}

/// Cheapest connection per source component; requires a perfect matching in
/// `Γ(A)`. The result has exactly one entry per source component. For
/// [`Problem::MinCount`] all costs are treated as equal.
pub fn solve_perfect_matching(
    instance: &SystemInstance,
    problem: Problem,
) -> Result<Solution, SolveError> {
    ensure_controllable(instance)?;
    if !has_perfect_matching(instance) {
        return Err(SolveError::Precondition(
            "source-cover selection needs a perfect matching in Γ(A)".into(),
        ));
    }
    let cover = source_cover(instance, problem == Problem::MinCount)?;
    let selected = cover.iter().map(|c| c.connection).collect();
    Ok(Solution::new(
        selected,
        Method::SourceCover,
        true,
        Certificate::SourceCover(cover),
    ))
}

/// Minimum-cost maximum matching selection; requires `G(A)` strongly
/// connected (without a perfect matching in `Γ(A)`) or a rooted tree.
///
/// Costs: `w` for min-cost, unit for min-count, `w + 1` for
/// sparsest-min-cost so that among cost-optimal choices the sparsest wins.
pub fn solve_sdr(instance: &SystemInstance, problem: Problem) -> Result<Solution, SolveError> {
    ensure_controllable(instance)?;
    let method = match classify(instance) {
        AssumptionClass::StronglyConnected => Method::MatchingSdr,
        AssumptionClass::RootedTree { .. } => Method::MatchingSdrTree,
        other => {
            return Err(SolveError::Precondition(format!(
                "matching selection needs a strongly connected or rooted-tree G(A), got {other}"
            )))
        }
    };
    let variant = match problem {
        Problem::MinCost => CostVariant::C,
        Problem::MinCount => CostVariant::CUniform,
        Problem::SparsestMinCost => CostVariant::C1,
    };
    let (selected, matching) = matching_selection(instance, variant)?;
    Ok(Solution::new(
        selected,
        method,
        true,
        Certificate::SaturatingMatching(matching),
    ))
}

/// 2-approximation of the min-cost problem for any controllable instance.
///
/// Takes the source cover `B'` and the matching selection `B~`, drops every
/// `B'` connection whose source component already receives a `B~`
/// connection, and returns the union. A component counts as covered as soon
/// as one `B~` connection lands anywhere in it.
pub fn solve_general_approx(instance: &SystemInstance) -> Result<Solution, SolveError> {
    ensure_controllable(instance)?;
    let cover = source_cover(instance, false)?;
    let (matched, matching) = matching_selection(instance, CostVariant::C)?;

    let scc = scc_decompose(&build_digraph(instance));
    let reached: BTreeSet<usize> = matched
        .iter()
        .map(|e| scc.component_of[e.row])
        .filter(|&c| scc.is_source[c])
        .collect();
    let mut selected: Vec<InputConnection> = cover
        .iter()
        .filter(|c| !reached.contains(&c.component))
        .map(|c| c.connection)
        .collect();
    selected.extend(matched);
    Ok(Solution::new(
        selected,
        Method::Approx,
        false,
        Certificate::Combined { cover, matching },
    ))
}

/// Route `(instance, problem)` to the matching algorithm.
pub fn solve(
    instance: &SystemInstance,
    problem: Problem,
    mode: Mode,
) -> Result<Solution, SolveError> {
    ensure_controllable(instance)?;
    if mode == Mode::Approx {
        return match problem {
            Problem::MinCost => solve_general_approx(instance),
            _ => Err(SolveError::InvalidMode {
                mode: mode.name(),
                problem: problem.name(),
            }),
        };
    }
    match classify(instance) {
        AssumptionClass::PerfectMatchingAndStronglyConnected => solve_single_edge(instance),
        AssumptionClass::PerfectMatching => solve_perfect_matching(instance, problem),
        AssumptionClass::StronglyConnected | AssumptionClass::RootedTree { .. } => {
            solve_sdr(instance, problem)
        }
        AssumptionClass::General => match (mode, problem) {
            (Mode::Auto, Problem::MinCost) => solve_general_approx(instance),
            (_, problem) => Err(SolveError::NoExactAlgorithm {
                problem: problem.name(),
                class: AssumptionClass::General.name(),
            }),
        },
    }
}
