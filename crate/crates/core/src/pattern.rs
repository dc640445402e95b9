//! Sparsity patterns for the state matrix `A` and the costed input matrix `B`.
//!
//! Indices are 0-based everywhere. An absent input-connection is simply not
//! stored; solvers treat it as unavailable.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;

/// Zero/star structure of the `d x d` state matrix. Each entry `(i, j)` means
/// `A[i][j] != 0`, i.e. a state-connection `v_j -> v_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct SparsityPattern {
    d: usize,
    entries: Vec<(usize, usize)>,
}

impl SparsityPattern {
    /// Entries are stored sorted; duplicates are kept so that [`validate`]
    /// can report them.
    pub fn new(d: usize, mut entries: Vec<(usize, usize)>) -> Self {
        entries.sort_unstable();
        Self { d, entries }
    }

    pub fn empty(d: usize) -> Self {
        Self::new(d, Vec::new())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.entries.binary_search(&(i, j)).is_ok()
    }

    /// `(i, j) -> (j, i)` for every entry.
    pub fn transpose(&self) -> Self {
        Self::new(self.d, self.entries.iter().map(|&(i, j)| (j, i)).collect())
    }
}

/// A single star entry `B[row][col]` with its usage cost.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InputConnection {
    #[serde(rename = "i")]
    pub row: usize,
    #[serde(rename = "j")]
    pub col: usize,
    #[serde(rename = "w")]
    pub cost: f64,
}

impl InputConnection {
    pub fn new(row: usize, col: usize, cost: f64) -> Self {
        Self { row, col, cost }
    }

    pub fn key(&self) -> (usize, usize) {
        (self.row, self.col)
    }
}

/// Zero/star structure of the `d x m` input matrix with a cost per star entry.
#[derive(Debug, Clone, PartialEq)]
pub struct CostedInputPattern {
    d: usize,
    m: usize,
    entries: Vec<InputConnection>,
}

impl CostedInputPattern {
    pub fn new(d: usize, m: usize, mut entries: Vec<InputConnection>) -> Self {
        entries.sort_by_key(InputConnection::key);
        Self { d, m, entries }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn entries(&self) -> &[InputConnection] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&InputConnection> {
        self.entries
            .binary_search_by_key(&(row, col), InputConnection::key)
            .ok()
            .map(|k| &self.entries[k])
    }

    pub fn norms(&self) -> NormPair {
        NormPair::of(&self.entries)
    }

    /// Keep only the entries accepted by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&InputConnection) -> bool) -> Self {
        Self {
            d: self.d,
            m: self.m,
            entries: self.entries.iter().copied().filter(|e| keep(e)).collect(),
        }
    }

    /// Same pattern with every cost replaced by `f(cost)`.
    pub fn map_costs(&self, mut f: impl FnMut(f64) -> f64) -> Self {
        Self {
            d: self.d,
            m: self.m,
            entries: self
                .entries
                .iter()
                .map(|e| InputConnection::new(e.row, e.col, f(e.cost)))
                .collect(),
        }
    }
}

/// `‖B‖_0` and `‖B‖_w` of a set of input-connections.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct NormPair {
    pub count: usize,
    pub cost: f64,
}

impl NormPair {
    pub fn of<'a>(entries: impl IntoIterator<Item = &'a InputConnection>) -> Self {
        entries.into_iter().fold(Self::default(), |acc, e| Self {
            count: acc.count + 1,
            cost: acc.cost + e.cost,
        })
    }
}

/// A pair `(A, B)` sharing the state dimension `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemInstance {
    pub a: SparsityPattern,
    pub b: CostedInputPattern,
    pub label: String,
}

impl SystemInstance {
    pub fn new(a: SparsityPattern, b: CostedInputPattern, label: impl Into<String>) -> Self {
        Self {
            a,
            b,
            label: label.into(),
        }
    }

    pub fn d(&self) -> usize {
        self.a.d()
    }

    pub fn m(&self) -> usize {
        self.b.m()
    }

    /// Same state structure, different input pattern.
    pub fn with_inputs(&self, b: CostedInputPattern) -> Self {
        Self {
            a: self.a.clone(),
            b,
            label: self.label.clone(),
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate(self)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

/// One well-formedness problem found by [`validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    ZeroStates,
    ZeroInputs,
    DimensionMismatch { a_d: usize, b_d: usize },
    StateIndexOutOfRange { i: usize, j: usize, d: usize },
    InputIndexOutOfRange { i: usize, j: usize, d: usize, m: usize },
    DuplicateStateEntry { i: usize, j: usize },
    DuplicateInputEntry { i: usize, j: usize },
    NegativeCost { i: usize, j: usize, w: f64 },
    NonFiniteCost { i: usize, j: usize },
}

impl Violation {
    pub fn is_duplicate(&self) -> bool {
        matches!(
            self,
            Violation::DuplicateStateEntry { .. } | Violation::DuplicateInputEntry { .. }
        )
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroStates => write!(f, "state count d must be at least 1"),
            Violation::ZeroInputs => write!(f, "input count m must be at least 1"),
            Violation::DimensionMismatch { a_d, b_d } => {
                write!(f, "A has {a_d} states but B has {b_d} rows")
            }
            Violation::StateIndexOutOfRange { i, j, d } => {
                write!(f, "A entry ({i}, {j}) outside [0, {d})")
            }
            Violation::InputIndexOutOfRange { i, j, d, m } => {
                write!(f, "B entry ({i}, {j}) outside [0, {d}) x [0, {m})")
            }
            Violation::DuplicateStateEntry { i, j } => write!(f, "duplicate A entry ({i}, {j})"),
            Violation::DuplicateInputEntry { i, j } => write!(f, "duplicate B entry ({i}, {j})"),
            Violation::NegativeCost { i, j, w } => {
                write!(f, "B entry ({i}, {j}) has negative cost {w}")
            }
            Violation::NonFiniteCost { i, j } => write!(f, "B entry ({i}, {j}) has non-finite cost"),
        }
    }
}

/// Every invariant violation of `instance`; empty iff well-formed.
pub fn validate(instance: &SystemInstance) -> Vec<Violation> {
    let mut out = Vec::new();
    let (a, b) = (&instance.a, &instance.b);
    if a.d == 0 {
        out.push(Violation::ZeroStates);
    }
    if b.m == 0 {
        out.push(Violation::ZeroInputs);
    }
    if a.d != b.d {
        out.push(Violation::DimensionMismatch { a_d: a.d, b_d: b.d });
    }
    for &(i, j) in &a.entries {
        if i >= a.d || j >= a.d {
            out.push(Violation::StateIndexOutOfRange { i, j, d: a.d });
        }
    }
    for w in a.entries.windows(2) {
        if w[0] == w[1] {
            out.push(Violation::DuplicateStateEntry {
                i: w[0].0,
                j: w[0].1,
            });
        }
    }
    for e in &b.entries {
        if e.row >= b.d || e.col >= b.m {
            out.push(Violation::InputIndexOutOfRange {
                i: e.row,
                j: e.col,
                d: b.d,
                m: b.m,
            });
        }
        if !e.cost.is_finite() {
            out.push(Violation::NonFiniteCost { i: e.row, j: e.col });
        } else if e.cost < 0.0 {
            out.push(Violation::NegativeCost {
                i: e.row,
                j: e.col,
                w: e.cost,
            });
        }
    }
    for w in b.entries.windows(2) {
        if w[0].key() == w[1].key() {
            out.push(Violation::DuplicateInputEntry {
                i: w[0].row,
                j: w[0].col,
            });
        }
    }
    out
}

#[derive(Debug, thiserror::Error, PartialEq)]
#[error("forbidden state {state} outside [0, {d})")]
pub struct ForbiddenStateOutOfRange {
    pub state: usize,
    pub d: usize,
}

/// Drop every input-connection whose target state is forbidden. `A` is untouched.
pub fn apply_forbidden_set(
    instance: &SystemInstance,
    forbidden: &BTreeSet<usize>,
) -> Result<SystemInstance, ForbiddenStateOutOfRange> {
    let d = instance.d();
    if let Some(&state) = forbidden.iter().find(|&&s| s >= d) {
        return Err(ForbiddenStateOutOfRange { state, d });
    }
    Ok(instance.with_inputs(instance.b.filter(|e| !forbidden.contains(&e.row))))
}

/// Transpose the state structure. `B` is left as is; this yields the state
/// graph of the observability dual `(A^T, B^T)`.
pub fn dualize(instance: &SystemInstance) -> SystemInstance {
    SystemInstance {
        a: instance.a.transpose(),
        b: instance.b.clone(),
        label: instance.label.clone(),
    }
}

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    d: usize,
    m: usize,
    #[serde(rename = "A")]
    a: Vec<[usize; 2]>,
    #[serde(rename = "B")]
    b: Vec<InputConnection>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    label: String,
}

/// Parse the JSON instance format, rejecting duplicates and invalid data.
pub fn parse_instance(text: &str) -> Result<SystemInstance, ParseError> {
    let file: InstanceFile =
        serde_json::from_str(text).map_err(|e| match e.classify() {
            serde_json::error::Category::Data => ParseError::Schema(e.to_string()),
            _ => ParseError::Syntax(e.to_string()),
        })?;
    let instance = SystemInstance {
        a: SparsityPattern::new(file.d, file.a.into_iter().map(|[i, j]| (i, j)).collect()),
        b: CostedInputPattern::new(file.d, file.m, file.b),
        label: file.label,
    };
    let violations = validate(&instance);
    if let Some(dup) = violations.iter().find(|v| v.is_duplicate()) {
        return Err(ParseError::Schema(dup.to_string()));
    }
    if !violations.is_empty() {
        return Err(ParseError::Invalid(violations));
    }
    Ok(instance)
}

pub fn serialize_instance(instance: &SystemInstance) -> String {
    let file = InstanceFile {
        d: instance.d(),
        m: instance.m(),
        a: instance.a.entries.iter().map(|&(i, j)| [i, j]).collect(),
        b: instance.b.entries.clone(),
        label: instance.label.clone(),
    };
    serde_json::to_string_pretty(&file).expect("instance serialization cannot fail")
}
