//! Seeded random instance families and the generator/load power-grid model.
//!
//! Every family output is structurally controllable: input-connections are
//! added until each source component is reached and `Γ(A, B)` has an SDR.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{build_bipartite, build_digraph, max_matching, scc_decompose, LeftVertex};
use crate::pattern::{CostedInputPattern, InputConnection, SparsityPattern, SystemInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Self-loop on every state, so `Γ(A)` has a perfect matching.
    Pm,
    /// Spanning in- and out-arborescences at a common root, so `G(A)` is
    /// strongly connected.
    Sc,
    /// A random arborescence plus forward edges; acyclic with one root.
    /// Extra forward edges keep at most `m` states unmatched in `Γ(A)`.
    Tree,
    /// Independent random edges, topped up so that at most `m` states are
    /// unmatched in `Γ(A)`.
    General,
    /// Generators and loads coupled along transmission lines.
    Grid,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Pm => "pm",
            Family::Sc => "sc",
            Family::Tree => "tree",
            Family::General => "general",
            Family::Grid => "grid",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Family::Pm, Family::Sc, Family::Tree, Family::General, Family::Grid]
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family '{s}'"))
    }
}

/// Bus-level network: every bus hosts exactly one generator or one load.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Topology {
    pub buses: usize,
    pub lines: Vec<[usize; 2]>,
    pub generator_buses: Vec<usize>,
    pub load_buses: Vec<usize>,
}

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("invalid topology: {0}")]
    InvalidTopology(String),
    #[error("topology is not connected: bus {0} is unreachable from bus 0")]
    DisconnectedTopology(usize),
    #[error("cannot make instance controllable: {0}")]
    Infeasible(String),
}

impl Topology {
    pub fn from_json(text: &str) -> Result<Self, GenError> {
        serde_json::from_str(text).map_err(|e| GenError::InvalidTopology(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("topology serialization cannot fail")
    }

    pub fn validate(&self) -> Result<(), GenError> {
        let n = self.buses;
        if n == 0 {
            return Err(GenError::InvalidTopology("no buses".into()));
        }
        if let Some(l) = self.lines.iter().find(|l| l[0] >= n || l[1] >= n) {
            return Err(GenError::InvalidTopology(format!("line {l:?} outside [0, {n})")));
        }
        let mut role = vec![0u8; n];
        let tagged = self
            .generator_buses
            .iter()
            .map(|&b| (b, 1u8))
            .chain(self.load_buses.iter().map(|&b| (b, 2u8)));
        for (b, tag) in tagged {
            if b >= n {
                return Err(GenError::InvalidTopology(format!("bus {b} outside [0, {n})")));
            }
            if role[b] != 0 {
                return Err(GenError::InvalidTopology(format!("bus {b} assigned twice")));
            }
            role[b] = tag;
        }
        if let Some(b) = role.iter().position(|&r| r == 0) {
            return Err(GenError::InvalidTopology(format!(
                "bus {b} hosts neither a generator nor a load"
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &[a, b] in &self.lines {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        match seen.iter().position(|&s| !s) {
            Some(b) => Err(GenError::DisconnectedTopology(b)),
            None => Ok(()),
        }
    }
}

/// A connected random topology: a random spanning tree plus `buses / 2`
/// extra lines, with `generators` buses chosen at random to host generators.
pub fn synthetic_topology(buses: usize, generators: usize, seed: u64) -> Result<Topology, GenError> {
    if buses == 0 || generators > buses {
        return Err(GenError::InvalidSpec(format!(
            "{generators} generators on {buses} buses"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..buses).collect();
    order.shuffle(&mut rng);
    let mut lines = BTreeSet::new();
    for k in 1..buses {
        let other = order[rng.gen_range(0..k)];
        let a = order[k];
        lines.insert([a.min(other), a.max(other)]);
    }
    if buses > 2 {
        let target = lines.len() + buses / 2;
        while lines.len() < target {
            let a = rng.gen_range(0..buses);
            let b = rng.gen_range(0..buses);
            if a != b {
                lines.insert([a.min(b), a.max(b)]);
            }
        }
    }
    let mut gens: Vec<usize> = (0..buses).collect::<Vec<_>>();
    gens.shuffle(&mut rng);
    gens.truncate(generators);
    gens.sort_unstable();
    let is_gen: BTreeSet<usize> = gens.iter().copied().collect();
    Ok(Topology {
        buses,
        lines: lines.into_iter().collect(),
        generator_buses: gens,
        load_buses: (0..buses).filter(|b| !is_gen.contains(b)).collect(),
    })
}

/// State variables of one component in the grid model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridState {
    /// Valve opening `a_G`.
    Valve,
    /// Generator frequency `ω_G`.
    GenFrequency,
    /// Turbine mechanical power `P_T`.
    Turbine,
    /// Injected power `P_G`.
    GenPower,
    /// Consumed real energy `I_L`.
    LoadEnergy,
    /// Load frequency `ω_L`.
    LoadFrequency,
    /// Received power `P_L`.
    LoadPower,
}

/// Where each bus's states live in the generated instance.
#[derive(Debug, Clone, PartialEq)]
pub struct GridLayout {
    /// First state index of each bus.
    pub offset: Vec<usize>,
    pub is_generator: Vec<bool>,
    pub states: Vec<(usize, GridState)>,
}

impl GridLayout {
    pub fn frequency(&self, bus: usize) -> usize {
        self.offset[bus] + 1
    }

    pub fn power(&self, bus: usize) -> usize {
        self.offset[bus] + if self.is_generator[bus] { 3 } else { 2 }
    }

    pub fn load_energy_states(&self) -> Vec<usize> {
        self.states
            .iter()
            .enumerate()
            .filter(|(_, (_, s))| *s == GridState::LoadEnergy)
            .map(|(k, _)| k)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub family: Family,
    /// State count; ignored for [`Family::Grid`].
    pub d: usize,
    pub m: usize,
    /// Probability of each optional edge of `A` and of each cell of `B`.
    pub density: f64,
    pub cost_lo: f64,
    pub cost_hi: f64,
    pub seed: u64,
    /// Required for [`Family::Grid`].
    pub topology: Option<Topology>,
}

impl GeneratorSpec {
    pub fn new(family: Family, d: usize, m: usize, seed: u64) -> Self {
        Self {
            family,
            d,
            m,
            density: 0.2,
            cost_lo: 0.0,
            cost_hi: 20.0,
            seed,
            topology: None,
        }
    }

    pub fn grid(topology: Topology, m: usize, seed: u64) -> Self {
        Self {
            topology: Some(topology),
            ..Self::new(Family::Grid, 0, m, seed)
        }
    }

    pub fn with_density(mut self, density: f64) -> Self {
        self.density = density;
        self
    }

    pub fn with_costs(mut self, lo: f64, hi: f64) -> Self {
        self.cost_lo = lo;
        self.cost_hi = hi;
        self
    }

    fn check(&self) -> Result<(), GenError> {
        if self.family != Family::Grid && self.d == 0 {
            return Err(GenError::InvalidSpec("d must be at least 1".into()));
        }
        if self.m == 0 {
            return Err(GenError::InvalidSpec("m must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.density) {
            return Err(GenError::InvalidSpec(format!(
                "density {} outside [0, 1]",
                self.density
            )));
        }
        if !(self.cost_lo.is_finite() && self.cost_hi.is_finite())
            || self.cost_lo < 0.0
            || self.cost_lo > self.cost_hi
        {
            return Err(GenError::InvalidSpec(format!(
                "cost range [{}, {}]",
                self.cost_lo, self.cost_hi
            )));
        }
        Ok(())
    }
}

struct Builder {
    d: usize,
    m: usize,
    a: BTreeSet<(usize, usize)>,
    b: BTreeSet<(usize, usize)>,
    rng: ChaCha8Rng,
}

impl Builder {
    fn new(d: usize, m: usize, seed: u64) -> Self {
        Self {
            d,
            m,
            a: BTreeSet::new(),
            b: BTreeSet::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// State-connection `from -> to`, i.e. `A[to][from] != 0`.
    fn edge(&mut self, from: usize, to: usize) {
        self.a.insert((to, from));
    }

    fn random_inputs(&mut self, density: f64) {
        for i in 0..self.d {
            for j in 0..self.m {
                if self.rng.gen_bool(density) {
                    self.b.insert((i, j));
                }
            }
        }
    }

    fn instance(&self, costs: &[f64]) -> SystemInstance {
        let b = self
            .b
            .iter()
            .zip(costs.iter().chain(std::iter::repeat(&0.0)))
            .map(|(&(i, j), &w)| InputConnection::new(i, j, w))
            .collect();
        SystemInstance::new(
            SparsityPattern::new(self.d, self.a.iter().copied().collect()),
            CostedInputPattern::new(self.d, self.m, b),
            "",
        )
    }

    /// Add a connection into every source component that has none.
    fn cover_sources(&mut self) {
        let inst = self.instance(&[]);
        let scc = scc_decompose(&build_digraph(&inst));
        for c in scc.sources() {
            if scc.components[c].iter().any(|&v| self.b.iter().any(|&(i, _)| i == v)) {
                continue;
            }
            let members = &scc.components[c];
            let v = members[self.rng.gen_range(0..members.len())];
            let u = self.rng.gen_range(0..self.m);
            self.b.insert((v, u));
        }
    }

    /// Add allowed state edges until a maximum matching of `Γ(A)` leaves at
    /// most `m` right copies unmatched. A new edge `l -> r` extends the
    /// matching when `l` is reachable from a free left copy and `r` from a
    /// free right copy along alternating paths.
    fn limit_deficiency(&mut self, allowed: impl Fn(usize, usize) -> bool) {
        let d = self.d;
        let mut succ = vec![Vec::new(); d];
        let mut pred = vec![Vec::new(); d];
        for &(to, from) in &self.a {
            succ[from].push(to);
            pred[to].push(from);
        }
        let inst = self.instance(&[]);
        let mut mate_l: Vec<Option<usize>> = vec![None; d];
        let mut mate_r: Vec<Option<usize>> = vec![None; d];
        for e in &max_matching(&build_bipartite(&inst).state_part()).edges {
            if let LeftVertex::State(l) = e.left {
                mate_l[l] = Some(e.right);
                mate_r[e.right] = Some(l);
            }
        }
        const NONE: usize = usize::MAX;
        loop {
            if mate_r.iter().filter(|m| m.is_none()).count() <= self.m {
                return;
            }
            // Forward from free lefts: `parent_r[y]` is the left that reached
            // right `y`. Backward from free rights: `parent_l[x]` is the right
            // that reached left `x`.
            let mut parent_r = vec![NONE; d];
            let mut left_reached = vec![false; d];
            let mut queue: VecDeque<usize> = (0..d).filter(|&l| mate_l[l].is_none()).collect();
            queue.iter().for_each(|&l| left_reached[l] = true);
            while let Some(x) = queue.pop_front() {
                for &y in &succ[x] {
                    if parent_r[y] == NONE {
                        parent_r[y] = x;
                        if let Some(x2) = mate_r[y].filter(|&x2| !left_reached[x2]) {
                            left_reached[x2] = true;
                            queue.push_back(x2);
                        }
                    }
                }
            }
            let mut parent_l = vec![NONE; d];
            let mut right_reached = vec![false; d];
            let mut queue: VecDeque<usize> = (0..d).filter(|&r| mate_r[r].is_none()).collect();
            queue.iter().for_each(|&r| right_reached[r] = true);
            while let Some(y) = queue.pop_front() {
                for &x in &pred[y] {
                    if parent_l[x] == NONE {
                        parent_l[x] = y;
                        if let Some(y2) = mate_l[x].filter(|&y2| !right_reached[y2]) {
                            right_reached[y2] = true;
                            queue.push_back(y2);
                        }
                    }
                }
            }
            let mut lefts: Vec<usize> = (0..d).filter(|&l| left_reached[l]).collect();
            let mut rights: Vec<usize> = (0..d).filter(|&r| right_reached[r]).collect();
            lefts.shuffle(&mut self.rng);
            rights.shuffle(&mut self.rng);
            let pick = rights.iter().find_map(|&r| {
                lefts
                    .iter()
                    .find(|&&l| allowed(l, r) && !self.a.contains(&(r, l)))
                    .map(|&l| (l, r))
            });
            let Some((l, r)) = pick else { return };
            self.edge(l, r);
            succ[l].push(r);
            pred[r].push(l);
            // Shift the right half of the path towards its free end.
            let mut shifted = mate_r[r];
            while let Some(x) = shifted {
                let next = parent_l[x];
                shifted = mate_r[next];
                mate_l[x] = Some(next);
                mate_r[next] = Some(x);
            }
            // Then the left half, ending at a free left copy.
            let mut x = l;
            let mut y = r;
            loop {
                let old = mate_l[x];
                mate_l[x] = Some(y);
                mate_r[y] = Some(x);
                match old {
                    Some(prev) => {
                        x = parent_r[prev];
                        y = prev;
                    }
                    None => break,
                }
            }
        }
    }

    /// Give every state copy left unmatched by a maximum matching of `Γ(A)`
    /// its own input, which yields an SDR of `Γ(A, B)`.
    fn saturate(&mut self) -> Result<(), GenError> {
        let inst = self.instance(&[]);
        let matching = max_matching(&build_bipartite(&inst).state_part());
        let mut right_free = vec![true; self.d];
        for e in &matching.edges {
            right_free[e.right] = false;
        }
        let unmatched: Vec<usize> = (0..self.d).filter(|&r| right_free[r]).collect();
        if unmatched.len() > self.m {
            return Err(GenError::Infeasible(format!(
                "Γ(A) leaves {} states unmatched but only {} inputs exist",
                unmatched.len(),
                self.m
            )));
        }
        let mut inputs: Vec<usize> = (0..self.m).collect();
        inputs.shuffle(&mut self.rng);
        for (r, u) in unmatched.into_iter().zip(inputs) {
            self.b.insert((r, u));
        }
        Ok(())
    }

    fn finish(mut self, spec: &GeneratorSpec) -> Result<SystemInstance, GenError> {
        self.cover_sources();
        self.saturate()?;
        if self.b.is_empty() {
            let v = self.rng.gen_range(0..self.d);
            let u = self.rng.gen_range(0..self.m);
            self.b.insert((v, u));
        }
        let costs: Vec<f64> = (0..self.b.len())
            .map(|_| sample_cost(&mut self.rng, spec.cost_lo, spec.cost_hi))
            .collect();
        let mut inst = self.instance(&costs);
        inst.label = format!("{} d={} m={} seed={}", spec.family, spec.d, spec.m, spec.seed);
        Ok(inst)
    }
}

fn sample_cost(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.gen_range(lo..hi)
    }
}

/// Deterministic in `spec` (including its seed).
pub fn generate(spec: &GeneratorSpec) -> Result<SystemInstance, GenError> {
    spec.check()?;
    if spec.family == Family::Grid {
        let topology = spec
            .topology
            .as_ref()
            .ok_or_else(|| GenError::InvalidSpec("grid family needs a topology".into()))?;
        return generate_grid(topology, spec).map(|(inst, _)| inst);
    }
    let (d, p) = (spec.d, spec.density);
    let mut g = Builder::new(d, spec.m, spec.seed);
    match spec.family {
        Family::Pm => {
            for v in 0..d {
                g.edge(v, v);
            }
            for from in 0..d {
                for to in 0..d {
                    if from != to && g.rng.gen_bool(p) {
                        g.edge(from, to);
                    }
                }
            }
        }
        Family::Sc => {
            let mut order: Vec<usize> = (0..d).collect();
            order.shuffle(&mut g.rng);
            for k in 1..d {
                let down = order[g.rng.gen_range(0..k)];
                let up = order[g.rng.gen_range(0..k)];
                g.edge(down, order[k]);
                g.edge(order[k], up);
            }
            for from in 0..d {
                for to in 0..d {
                    if g.rng.gen_bool(p) {
                        g.edge(from, to);
                    }
                }
            }
        }
        Family::Tree => {
            let mut order: Vec<usize> = (0..d).collect();
            order.shuffle(&mut g.rng);
            for k in 1..d {
                let parent = order[g.rng.gen_range(0..k)];
                g.edge(parent, order[k]);
            }
            for x in 0..d {
                for y in x + 1..d {
                    if g.rng.gen_bool(p) {
                        g.edge(order[x], order[y]);
                    }
                }
            }
            let mut pos = vec![0; d];
            for (k, &v) in order.iter().enumerate() {
                pos[v] = k;
            }
            g.limit_deficiency(|l, r| pos[l] < pos[r]);
        }
        Family::General => {
            for from in 0..d {
                for to in 0..d {
                    if g.rng.gen_bool(p) {
                        g.edge(from, to);
                    }
                }
            }
            g.limit_deficiency(|_, _| true);
        }
        Family::Grid => unreachable!(),
    }
    g.random_inputs(p);
    g.finish(spec)
}

/// Build the grid model over `topology`.
///
/// Per generator: `a_G, ω_G, P_T, P_G`, each with a self-loop, `a_G <-> ω_G`,
/// `ω_G <-> P_G`, `a_G -> P_T -> ω_G`. Per load: `I_L, ω_L, P_L`, each with
/// a self-loop, `I_L -> ω_L`, `ω_L <-> P_L`. Every line `(x, y)` adds
/// `ω_x -> P_y` and `ω_y -> P_x`, whatever the component kinds. Each load's
/// `I_L` receives at least one input-connection.
pub fn generate_grid(
    topology: &Topology,
    spec: &GeneratorSpec,
) -> Result<(SystemInstance, GridLayout), GenError> {
    topology.validate()?;
    spec.check()?;
    let gens: BTreeSet<usize> = topology.generator_buses.iter().copied().collect();
    let mut offset = Vec::with_capacity(topology.buses);
    let mut is_generator = Vec::with_capacity(topology.buses);
    let mut states = Vec::new();
    for bus in 0..topology.buses {
        offset.push(states.len());
        let g = gens.contains(&bus);
        is_generator.push(g);
        let kinds: &[GridState] = if g {
            &[
                GridState::Valve,
                GridState::GenFrequency,
                GridState::Turbine,
                GridState::GenPower,
            ]
        } else {
            &[
                GridState::LoadEnergy,
                GridState::LoadFrequency,
                GridState::LoadPower,
            ]
        };
        states.extend(kinds.iter().map(|&k| (bus, k)));
    }
    let layout = GridLayout {
        offset,
        is_generator,
        states,
    };
    let d = layout.states.len();
    let mut g = Builder::new(d, spec.m, spec.seed);
    for v in 0..d {
        g.edge(v, v);
    }
    for bus in 0..topology.buses {
        let o = layout.offset[bus];
        if layout.is_generator[bus] {
            let (valve, freq, turbine, power) = (o, o + 1, o + 2, o + 3);
            g.edge(valve, freq);
            g.edge(freq, valve);
            g.edge(freq, power);
            g.edge(power, freq);
            g.edge(valve, turbine);
            g.edge(turbine, freq);
        } else {
            let (energy, freq, power) = (o, o + 1, o + 2);
            g.edge(energy, freq);
            g.edge(freq, power);
            g.edge(power, freq);
        }
    }
    for &[x, y] in &topology.lines {
        g.edge(layout.frequency(x), layout.power(y));
        g.edge(layout.frequency(y), layout.power(x));
    }
    for v in layout.load_energy_states() {
        let u = g.rng.gen_range(0..spec.m);
        g.b.insert((v, u));
    }
    g.random_inputs(spec.density);
    let mut inst = g.finish(spec)?;
    inst.label = format!(
        "grid: {} generators, {} loads, {} lines, m={} seed={}",
        topology.generator_buses.len(),
        topology.load_buses.len(),
        topology.lines.len(),
        spec.m,
        spec.seed
    );
    Ok((inst, layout))
}
