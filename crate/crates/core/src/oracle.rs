//! Ground truth by exhaustive search over subsets of `B`, and a numerical
//! controllability probe on random realizations.
//!
//! The subset search carries its own bitmask feasibility test rather than
//! calling into [`crate::graph`], so the two can be checked against each other.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::is_structurally_controllable;
use crate::pattern::{InputConnection, SystemInstance};
use crate::solvers::{Certificate, Method, Problem, Solution};

/// Largest `‖B‖_0` accepted by [`brute_force`].
pub const MAX_ENTRIES: usize = 20;
/// Largest `d` accepted by [`numerical_probe`].
pub const MAX_PROBE_STATES: usize = 12;
/// Singular values below `RANK_TOLERANCE * σ_max` count as zero.
pub const RANK_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("B has {entries} entries; exhaustive search is capped at {cap}")]
    TooManyEntries { entries: usize, cap: usize },
    #[error("d = {d} exceeds the probe cap of {cap}")]
    TooManyStates { d: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Optimum {
    pub count: usize,
    pub cost: f64,
    /// First optimal subset in enumeration order.
    pub witness: Vec<InputConnection>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// `false` iff no subset of `B` (not even `B` itself) is feasible.
    pub feasible: bool,
    pub min_cost: Option<Optimum>,
    pub min_count: Option<Optimum>,
    /// Least count, then least cost.
    pub sparsest_min_cost: Option<Optimum>,
    /// Subsets whose feasibility was actually tested.
    pub checked: usize,
}

impl OracleResult {
    pub fn optimum(&self, problem: Problem) -> Option<&Optimum> {
        match problem {
            Problem::MinCost => self.min_cost.as_ref(),
            Problem::MinCount => self.min_count.as_ref(),
            Problem::SparsestMinCost => self.sparsest_min_cost.as_ref(),
        }
    }

    pub fn solution(&self, problem: Problem) -> Option<Solution> {
        self.optimum(problem).map(|o| {
            Solution::new(o.witness.clone(), Method::Oracle, true, Certificate::None)
        })
    }
}

/// Feasibility of a subset of `B` given as a bitmask over its entries.
trait Feasibility {
    fn feasible(&mut self, mask: u32) -> bool;
}

/// Bitset version for `d <= 64`: reachability closure plus Kuhn's augmenting
/// paths over right-side state copies.
struct BitsetCheck {
    d: usize,
    m: usize,
    /// successors[v]: states with an edge from v.
    successors: Vec<u64>,
    /// state_left[i]: left state copies j with A[i][j] != 0.
    state_left: Vec<u64>,
    /// (row, col) of each B entry.
    entries: Vec<(usize, usize)>,
    input_left: Vec<u64>,
    owner: Vec<Option<usize>>,
    visited: Vec<bool>,
}

impl BitsetCheck {
    fn new(instance: &SystemInstance) -> Self {
        let d = instance.d();
        let mut successors = vec![0u64; d];
        let mut state_left = vec![0u64; d];
        for &(i, j) in instance.a.entries() {
            successors[j] |= 1 << i;
            state_left[i] |= 1 << j;
        }
        let m = instance.m();
        Self {
            d,
            m,
            successors,
            state_left,
            entries: instance.b.entries().iter().map(|e| (e.row, e.col)).collect(),
            input_left: vec![0; d],
            owner: vec![None; d + m],
            visited: vec![false; d + m],
        }
    }

    fn augment(&mut self, right: usize) -> bool {
        let lefts = (0..self.d)
            .filter(|&j| self.state_left[right] >> j & 1 == 1)
            .chain(
                (0..self.m)
                    .filter(|&k| self.input_left[right] >> k & 1 == 1)
                    .map(|k| self.d + k),
            )
            .collect::<Vec<_>>();
        for l in lefts {
            if self.visited[l] {
                continue;
            }
            self.visited[l] = true;
            match self.owner[l] {
                None => {
                    self.owner[l] = Some(right);
                    return true;
                }
                Some(other) => {
                    if self.augment(other) {
                        self.owner[l] = Some(right);
                        return true;
                    }
                }
            }
        }
        false
    }
}

impl Feasibility for BitsetCheck {
    fn feasible(&mut self, mask: u32) -> bool {
        let full = if self.d == 64 { u64::MAX } else { (1u64 << self.d) - 1 };
        let mut reach = 0u64;
        self.input_left.iter_mut().for_each(|x| *x = 0);
        for (k, &(row, col)) in self.entries.iter().enumerate() {
            if mask >> k & 1 == 1 {
                reach |= 1 << row;
                self.input_left[row] |= 1 << col;
            }
        }
        loop {
            let mut next = reach;
            let mut rest = reach;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                next |= self.successors[v];
            }
            if next == reach {
                break;
            }
            reach = next;
        }
        if reach != full {
            return false;
        }
        self.owner.iter_mut().for_each(|o| *o = None);
        for right in 0..self.d {
            self.visited.iter_mut().for_each(|v| *v = false);
            if !self.augment(right) {
                return false;
            }
        }
        true
    }
}

/// Fallback for large `d`, through the graph module.
struct GraphCheck<'a> {
    instance: &'a SystemInstance,
}

impl Feasibility for GraphCheck<'_> {
    fn feasible(&mut self, mask: u32) -> bool {
        let mut k = 0;
        let b = self.instance.b.filter(|_| {
            let keep = mask >> k & 1 == 1;
            k += 1;
            keep
        });
        is_structurally_controllable(&self.instance.with_inputs(b))
    }
}

/// Advance `idx` to the next `k`-combination of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut p = k;
    while p > 0 {
        p -= 1;
        if idx[p] < n - k + p {
            idx[p] += 1;
            for q in p + 1..k {
                idx[q] = idx[q - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Solve all three problems by enumerating every subset of `B`, in order of
/// increasing size and then lexicographically. Feasibility is only tested
/// for subsets that could still improve one of the optima.
pub fn brute_force(instance: &SystemInstance) -> Result<OracleResult, OracleError> {
    let entries = instance.b.entries();
    let n = entries.len();
    if n > MAX_ENTRIES {
        return Err(OracleError::TooManyEntries {
            entries: n,
            cap: MAX_ENTRIES,
        });
    }
    let mut check: Box<dyn Feasibility + '_> = if instance.d() <= 64 {
        Box::new(BitsetCheck::new(instance))
    } else {
        Box::new(GraphCheck { instance })
    };

    let subset = |idx: &[usize]| idx.iter().map(|&k| entries[k]).collect::<Vec<_>>();
    let mut min_cost: Option<Optimum> = None;
    let mut sparsest: Option<Optimum> = None;
    let mut checked = 0;

    for k in 0..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let cost: f64 = idx.iter().map(|&e| entries[e].cost).sum();
            let improves_p1 = min_cost.as_ref().is_none_or(|o| cost < o.cost);
            let improves_p2 = sparsest
                .as_ref()
                .is_none_or(|o| o.count == k && cost < o.cost);
            if improves_p1 || improves_p2 {
                let mask = idx.iter().fold(0u32, |m, &e| m | 1 << e);
                checked += 1;
                if check.feasible(mask) {
                    let opt = Optimum {
                        count: k,
                        cost,
                        witness: subset(&idx),
                    };
                    if improves_p1 {
                        min_cost = Some(opt.clone());
                    }
                    if improves_p2 {
                        sparsest = Some(opt);
                    }
                }
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }

    // The first feasible subset found is also the first of least size.
    let min_count = sparsest.as_ref().map(|s| {
        let mut first = None;
        let mut idx: Vec<usize> = (0..s.count).collect();
        loop {
            let mask = idx.iter().fold(0u32, |m, &e| m | 1 << e);
            if check.feasible(mask) {
                first = Some(subset(&idx));
                break;
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
        let witness = first.expect("a feasible subset of this size exists");
        Optimum {
            count: s.count,
            cost: witness.iter().map(|e| e.cost).sum(),
            witness,
        }
    });

    Ok(OracleResult {
        feasible: min_cost.is_some(),
        min_cost,
        min_count,
        sparsest_min_cost: sparsest,
        checked,
    })
}

/// Numerical rank of `[B, AB, ..., A^{d-1} B]` for one random realization
/// with every star entry of `A` and of `subset` drawn uniformly from `[1, 2]`.
fn realization_rank(instance: &SystemInstance, subset: &[(usize, usize)], rng: &mut ChaCha8Rng) -> usize {
    let d = instance.d();
    let m = instance.m();
    let mut a = DMatrix::<f64>::zeros(d, d);
    for &(i, j) in instance.a.entries() {
        a[(i, j)] = rng.gen_range(1.0..=2.0);
    }
    let mut b = DMatrix::<f64>::zeros(d, m);
    for &(i, j) in subset {
        b[(i, j)] = rng.gen_range(1.0..=2.0);
    }
    let mut ctrb = DMatrix::<f64>::zeros(d, d * m);
    let mut block = b;
    for p in 0..d {
        ctrb.view_mut((0, p * m), (d, m)).copy_from(&block);
        block = &a * block;
    }
    let sv = ctrb.singular_values();
    let max = sv.iter().cloned().fold(0.0f64, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > RANK_TOLERANCE * max).count()
}

/// Controllability-matrix rank of each of `trials` random realizations.
pub fn probe_ranks(
    instance: &SystemInstance,
    subset: &[(usize, usize)],
    trials: usize,
    seed: u64,
) -> Result<Vec<usize>, OracleError> {
    let d = instance.d();
    if d > MAX_PROBE_STATES {
        return Err(OracleError::TooManyStates {
            d,
            cap: MAX_PROBE_STATES,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..trials)
        .map(|_| realization_rank(instance, subset, &mut rng))
        .collect())
}

/// `true` iff at least one of `trials` random realizations of `(A, subset)`
/// has a full-rank controllability matrix.
pub fn numerical_probe(
    instance: &SystemInstance,
    subset: &[(usize, usize)],
    trials: usize,
    seed: u64,
) -> Result<bool, OracleError> {
    let d = instance.d();
    Ok(probe_ranks(instance, subset, trials, seed)?
        .into_iter()
        .any(|r| r == d))
}
