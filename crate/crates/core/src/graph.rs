//! The digraph `G(A, B)`, the bipartite graph `Γ(A, B)`, and the structural
//! controllability test built on them.
//!
//! A pair is structurally controllable iff every state is reachable from some
//! input and `Γ(A, B)` has a matching saturating every right-side state copy.

use std::collections::VecDeque;
use std::fmt;
use std::fmt::Write as _;

use crate::pattern::SystemInstance;

/// `G(A, B)`: state edges `v_j -> v_i` for every `A[i][j] != 0`, input edges
/// `u_j -> v_i` for every `B[i][j] != 0`.
#[derive(Debug, Clone)]
pub struct Digraph {
    pub state_count: usize,
    pub input_count: usize,
    /// `(from, to)` pairs over state vertices.
    pub state_edges: Vec<(usize, usize)>,
    /// `(input, state)` pairs.
    pub input_edges: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
}

impl Digraph {
    /// Out-neighbours of state `v` in `G(A)`, ascending.
    pub fn successors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.state_count];
        for &(_, to) in &self.state_edges {
            deg[to] += 1;
        }
        deg
    }
}

pub fn build_digraph(instance: &SystemInstance) -> Digraph {
    let d = instance.d();
    let mut state_edges: Vec<(usize, usize)> =
        instance.a.entries().iter().map(|&(i, j)| (j, i)).collect();
    state_edges.sort_unstable();
    let mut out = vec![Vec::new(); d];
    for &(from, to) in &state_edges {
        out[from].push(to);
    }
    let mut input_edges: Vec<(usize, usize)> =
        instance.b.entries().iter().map(|e| (e.col, e.row)).collect();
    input_edges.sort_unstable();
    Digraph {
        state_count: d,
        input_count: instance.m(),
        state_edges,
        input_edges,
        out,
    }
}

/// A left vertex of `Γ(A, B)`: either a state copy `v_j^1` or an input `u_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LeftVertex {
    State(usize),
    Input(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BipartiteEdge {
    pub left: LeftVertex,
    /// Index of the right-side state copy `v_i^2`.
    pub right: usize,
    pub cost: f64,
}

impl BipartiteEdge {
    pub fn is_input(&self) -> bool {
        matches!(self.left, LeftVertex::Input(_))
    }
}

/// `Γ(A, B)`. Left vertices are numbered `0..d` for state copies and
/// `d..d + m` for inputs; right vertices `0..d`.
#[derive(Debug, Clone)]
pub struct BipartiteGraph {
    pub state_count: usize,
    pub input_count: usize,
    pub edges: Vec<BipartiteEdge>,
}

impl BipartiteGraph {
    pub fn left_count(&self) -> usize {
        self.state_count + self.input_count
    }

    pub fn right_count(&self) -> usize {
        self.state_count
    }

    pub fn left_index(&self, v: LeftVertex) -> usize {
        match v {
            LeftVertex::State(j) => j,
            LeftVertex::Input(j) => self.state_count + j,
        }
    }

    /// `Γ(A)`: the same graph restricted to state-connection edges.
    pub fn state_part(&self) -> BipartiteGraph {
        BipartiteGraph {
            state_count: self.state_count,
            input_count: self.input_count,
            edges: self.edges.iter().copied().filter(|e| !e.is_input()).collect(),
        }
    }

    pub fn state_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| !e.is_input()).count()
    }

    pub fn input_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_input()).count()
    }

    /// Per left vertex, `(right, edge index)` pairs sorted by right index.
    pub(crate) fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.left_count()];
        for (k, e) in self.edges.iter().enumerate() {
            adj[self.left_index(e.left)].push((e.right, k));
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        adj
    }
}

/// Edges start uncosted (cost 0); see [`crate::matching::assign_costs`].
pub fn build_bipartite(instance: &SystemInstance) -> BipartiteGraph {
    let mut edges: Vec<BipartiteEdge> = instance
        .a
        .entries()
        .iter()
        .map(|&(i, j)| BipartiteEdge {
            left: LeftVertex::State(j),
            right: i,
            cost: 0.0,
        })
        .collect();
    edges.extend(instance.b.entries().iter().map(|e| BipartiteEdge {
        left: LeftVertex::Input(e.col),
        right: e.row,
        cost: 0.0,
    }));
    BipartiteGraph {
        state_count: instance.d(),
        input_count: instance.m(),
        edges,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SccDecomposition {
    /// Component id of each state vertex.
    pub component_of: Vec<usize>,
    /// Vertices of each component, ascending. Components are numbered by
    /// their smallest vertex.
    pub components: Vec<Vec<usize>>,
    /// `true` if no edge enters the component from another component.
    pub is_source: Vec<bool>,
}

impl SccDecomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Ids of the source components.
    pub fn sources(&self) -> Vec<usize> {
        (0..self.len()).filter(|&c| self.is_source[c]).collect()
    }

    pub fn source_count(&self) -> usize {
        self.is_source.iter().filter(|&&s| s).count()
    }
}

/// Tarjan's algorithm over `G(A)` with an explicit stack.
pub fn scc_decompose(digraph: &Digraph) -> SccDecomposition {
    const UNVISITED: usize = usize::MAX;
    let n = digraph.state_count;
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut raw_comp = vec![UNVISITED; n];
    let mut raw_count = 0;
    let mut next_index = 0;
    // (vertex, position in its successor list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let succ = digraph.successors(v);
            if *pos < succ.len() {
                let w = succ[*pos];
                *pos += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    raw_comp[w] = raw_count;
                    if w == v {
                        break;
                    }
                }
                raw_count += 1;
            }
        }
    }

    // Renumber by smallest member so the output does not depend on DFS order.
    let mut rename = vec![UNVISITED; raw_count];
    let mut count = 0;
    for &c in &raw_comp {
        if rename[c] == UNVISITED {
            rename[c] = count;
            count += 1;
        }
    }
    let component_of: Vec<usize> = raw_comp.iter().map(|&c| rename[c]).collect();
    let mut components = vec![Vec::new(); count];
    for (v, &c) in component_of.iter().enumerate() {
        components[c].push(v);
    }
    let mut is_source = vec![true; count];
    for &(from, to) in &digraph.state_edges {
        if component_of[from] != component_of[to] {
            is_source[component_of[to]] = false;
        }
    }
    SccDecomposition {
        component_of,
        components,
        is_source,
    }
}

/// States reachable from some input through `G(A, B)`, ascending.
pub fn accessible_states(digraph: &Digraph) -> Vec<usize> {
    let mut seen = vec![false; digraph.state_count];
    let mut queue = VecDeque::new();
    for &(_, v) in &digraph.input_edges {
        if !seen[v] {
            seen[v] = true;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in digraph.successors(v) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    (0..digraph.state_count).filter(|&v| seen[v]).collect()
}

/// A set of vertex-disjoint edges of a bipartite graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Matching {
    pub edges: Vec<BipartiteEdge>,
    pub cost: f64,
}

impl Matching {
    pub(crate) fn from_edges(mut edges: Vec<BipartiteEdge>) -> Self {
        edges.sort_by_key(|e| (e.right, e.left));
        let cost = edges.iter().map(|e| e.cost).sum();
        Matching { edges, cost }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Right vertices covered by the matching, ascending.
    pub fn saturated(&self) -> Vec<usize> {
        self.edges.iter().map(|e| e.right).collect()
    }

    pub fn input_edges(&self) -> impl Iterator<Item = &BipartiteEdge> {
        self.edges.iter().filter(|e| e.is_input())
    }

    pub fn state_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| !e.is_input()).count()
    }
}

/// Hopcroft–Karp over an adjacency list; entries are `(right, payload)` and
/// are scanned in order. Returns the right vertex and payload matched to
/// each left vertex.
pub(crate) fn hopcroft_karp(
    adj: &[Vec<(usize, usize)>],
    n_right: usize,
) -> Vec<Option<(usize, usize)>> {
    const INF: usize = usize::MAX;
    let n_left = adj.len();
    let mut left_match: Vec<Option<(usize, usize)>> = vec![None; n_left];
    let mut right_match: Vec<Option<usize>> = vec![None; n_right];
    let mut dist = vec![INF; n_left];
    let mut queue = VecDeque::new();
    let mut cursor = vec![0usize; n_left];
    let mut stack: Vec<usize> = Vec::new();
    let mut via: Vec<(usize, usize)> = Vec::new();

    loop {
        // BFS layering from free left vertices.
        queue.clear();
        for u in 0..n_left {
            if left_match[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = INF;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &(r, _) in &adj[u] {
                match right_match[r] {
                    None => found = true,
                    Some(w) if dist[w] == INF => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            break;
        }

        cursor.iter_mut().for_each(|c| *c = 0);
        for start in 0..n_left {
            if left_match[start].is_some() {
                continue;
            }
            stack.clear();
            via.clear();
            stack.push(start);
            while let Some(&u) = stack.last() {
                if cursor[u] == adj[u].len() {
                    dist[u] = INF;
                    stack.pop();
                    via.pop();
                    continue;
                }
                let (r, payload) = adj[u][cursor[u]];
                cursor[u] += 1;
                match right_match[r] {
                    None => {
                        via.push((r, payload));
                        for (&l, &(r, p)) in stack.iter().zip(via.iter()) {
                            left_match[l] = Some((r, p));
                            right_match[r] = Some(l);
                        }
                        break;
                    }
                    Some(w) if dist[w] != INF && dist[w] == dist[u] + 1 => {
                        via.push((r, payload));
                        stack.push(w);
                    }
                    Some(_) => {}
                }
            }
        }
    }
    left_match
}

/// A maximum-cardinality matching (Hopcroft–Karp, ascending adjacency order).
pub fn max_matching(bipartite: &BipartiteGraph) -> Matching {
    let adj = bipartite.adjacency();
    let left_match = hopcroft_karp(&adj, bipartite.right_count());
    Matching::from_edges(
        left_match
            .into_iter()
            .flatten()
            .map(|(_, k)| bipartite.edges[k])
            .collect(),
    )
}

/// `Γ(A)` has a matching of size `d`.
pub fn has_perfect_matching(instance: &SystemInstance) -> bool {
    max_matching(&build_bipartite(instance).state_part()).len() == instance.d()
}

/// `Γ(A, B)` has a matching saturating every right-side state copy.
pub fn has_sdr(instance: &SystemInstance) -> bool {
    max_matching(&build_bipartite(instance)).len() == instance.d()
}

/// Outcome of the structural controllability test with witnesses.
#[derive(Debug, Clone, PartialEq)]
pub struct ControllabilityReport {
    pub controllable: bool,
    pub accessible: bool,
    pub sdr: bool,
    pub inaccessible_states: Vec<usize>,
    /// Source components (vertex lists) with no path from any input.
    pub inaccessible_sources: Vec<Vec<usize>>,
    pub matching_size: usize,
    /// Right-side state copies left unmatched by a maximum matching of `Γ(A, B)`.
    pub unsaturated: Vec<usize>,
    pub source_count: usize,
}

impl fmt::Display for ControllabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.controllable {
            return write!(f, "structurally controllable");
        }
        let mut parts = Vec::new();
        if !self.accessible {
            parts.push(format!(
                "inaccessible source components {:?} (states {:?})",
                self.inaccessible_sources, self.inaccessible_states
            ));
        }
        if !self.sdr {
            parts.push(format!(
                "dilation: maximum matching covers {} states, unsaturated {:?}",
                self.matching_size, self.unsaturated
            ));
        }
        write!(f, "{}", parts.join("; "))
    }
}

pub fn check_controllability(instance: &SystemInstance) -> ControllabilityReport {
    let d = instance.d();
    let digraph = build_digraph(instance);
    let reach = accessible_states(&digraph);
    let mut reachable = vec![false; d];
    for &v in &reach {
        reachable[v] = true;
    }
    let scc = scc_decompose(&digraph);
    let inaccessible_sources: Vec<Vec<usize>> = scc
        .sources()
        .into_iter()
        .filter(|&c| !reachable[scc.components[c][0]])
        .map(|c| scc.components[c].clone())
        .collect();
    let inaccessible_states: Vec<usize> = (0..d).filter(|&v| !reachable[v]).collect();

    let matching = max_matching(&build_bipartite(instance));
    let mut covered = vec![false; d];
    for e in &matching.edges {
        covered[e.right] = true;
    }
    let unsaturated: Vec<usize> = (0..d).filter(|&v| !covered[v]).collect();

    let accessible = inaccessible_states.is_empty();
    let sdr = unsaturated.is_empty();
    ControllabilityReport {
        controllable: accessible && sdr,
        accessible,
        sdr,
        inaccessible_states,
        inaccessible_sources,
        matching_size: matching.len(),
        unsaturated,
        source_count: scc.source_count(),
    }
}

pub fn is_structurally_controllable(instance: &SystemInstance) -> bool {
    check_controllability(instance).controllable
}

/// Which of the structured cases an instance falls into; tested in the
/// order of the variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssumptionClass {
    PerfectMatchingAndStronglyConnected,
    PerfectMatching,
    StronglyConnected,
    RootedTree { root: usize },
    General,
}

impl AssumptionClass {
    pub fn name(&self) -> &'static str {
        match self {
            AssumptionClass::PerfectMatchingAndStronglyConnected => {
                "PerfectMatchingAndStronglyConnected"
            }
            AssumptionClass::PerfectMatching => "PerfectMatching",
            AssumptionClass::StronglyConnected => "StronglyConnected",
            AssumptionClass::RootedTree { .. } => "RootedTree",
            AssumptionClass::General => "General",
        }
    }
}

impl fmt::Display for AssumptionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AssumptionClass::RootedTree { root } => write!(f, "RootedTree(root v{root})"),
            other => f.write_str(other.name()),
        }
    }
}

/// Root of `G(A)` if it is acyclic (no self-loops) with a single vertex of
/// in-degree zero that reaches every vertex.
fn rooted_tree_root(digraph: &Digraph, scc: &SccDecomposition) -> Option<usize> {
    let d = digraph.state_count;
    if scc.len() != d || digraph.state_edges.iter().any(|&(a, b)| a == b) {
        return None;
    }
    let deg = digraph.in_degrees();
    let mut roots = (0..d).filter(|&v| deg[v] == 0);
    let root = roots.next()?;
    if roots.next().is_some() {
        return None;
    }
    let mut seen = vec![false; d];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        for &w in digraph.successors(v) {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                queue.push_back(w);
            }
        }
    }
    (count == d).then_some(root)
}

pub fn classify(instance: &SystemInstance) -> AssumptionClass {
    let digraph = build_digraph(instance);
    let scc = scc_decompose(&digraph);
    let perfect = has_perfect_matching(instance);
    let strongly = scc.len() == 1;
    match (perfect, strongly) {
        (true, true) => AssumptionClass::PerfectMatchingAndStronglyConnected,
        (true, false) => AssumptionClass::PerfectMatching,
        (false, true) => AssumptionClass::StronglyConnected,
        (false, false) => match rooted_tree_root(&digraph, &scc) {
            Some(root) => AssumptionClass::RootedTree { root },
            None => AssumptionClass::General,
        },
    }
}

fn fmt_cost(w: f64) -> String {
    if w.fract() == 0.0 && w.abs() < 1e15 {
        format!("{}", w as i64)
    } else {
        format!("{w}")
    }
}

/// Graphviz rendering of `G(A, B)`: state edges solid, input edges dashed and
/// labelled with their cost.
pub fn to_dot(instance: &SystemInstance) -> String {
    let digraph = build_digraph(instance);
    let mut s = String::new();
    let name = if instance.label.is_empty() {
        "G".to_string()
    } else {
        instance.label.replace('"', "'")
    };
    writeln!(s, "digraph \"{name}\" {{").unwrap();
    for v in 0..digraph.state_count {
        writeln!(s, "  v{v} [shape=circle];").unwrap();
    }
    for u in 0..digraph.input_count {
        writeln!(s, "  u{u} [shape=box, style=filled, fillcolor=pink];").unwrap();
    }
    for &(from, to) in &digraph.state_edges {
        writeln!(s, "  v{from} -> v{to} [style=solid];").unwrap();
    }
    for e in instance.b.entries() {
        writeln!(
            s,
            "  u{} -> v{} [style=dashed, color=cyan, label=\"{}\"];",
            e.col,
            e.row,
            fmt_cost(e.cost)
        )
        .unwrap();
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::pattern::{CostedInputPattern, InputConnection, SparsityPattern};

    fn inst(d: usize, a: &[(usize, usize)], m: usize, b: &[(usize, usize, f64)]) -> SystemInstance {
        SystemInstance::new(
            SparsityPattern::new(d, a.to_vec()),
            CostedInputPattern::new(
                d,
                m,
                b.iter().map(|&(i, j, w)| InputConnection::new(i, j, w)).collect(),
            ),
            "",
        )
    }

    #[test]
    fn example1_digraph_counts() {
        let g = build_digraph(&fixtures::example1());
        assert_eq!(
            (g.state_count, g.input_count, g.state_edges.len(), g.input_edges.len()),
            (10, 3, 15, 7)
        );
        // A[0][1] is the edge v1 -> v0.
        assert!(g.state_edges.contains(&(1, 0)));
    }

    #[test]
    fn self_loop_digraph() {
        let g = build_digraph(&inst(1, &[(0, 0)], 1, &[]));
        assert_eq!(g.state_edges, vec![(0, 0)]);
    }

    #[test]
    fn example2_bipartite_counts() {
        let g = build_bipartite(&fixtures::example2());
        assert_eq!((g.state_edge_count(), g.input_edge_count()), (11, 16));
        assert!(g.edges.contains(&BipartiteEdge {
            left: LeftVertex::Input(2),
            right: 6,
            cost: 0.0
        }));
    }

    #[test]
    fn example1_sources() {
        let scc = scc_decompose(&build_digraph(&fixtures::example1()));
        let sources: Vec<Vec<usize>> = scc
            .sources()
            .into_iter()
            .map(|c| scc.components[c].clone())
            .collect();
        assert_eq!(sources, vec![vec![0, 1, 2], vec![6, 7], vec![8, 9]]);
        assert_eq!(scc.len(), 4);
    }

    #[test]
    fn isolated_vertices_are_sources() {
        let scc = scc_decompose(&build_digraph(&inst(2, &[], 1, &[])));
        assert_eq!(scc.components, vec![vec![0], vec![1]]);
        assert_eq!(scc.is_source, vec![true, true]);
    }

    #[test]
    fn example2_single_component() {
        let scc = scc_decompose(&build_digraph(&fixtures::example2()));
        assert_eq!(scc.len(), 1);
        assert_eq!(scc.components[0], (0..8).collect::<Vec<_>>());
        assert!(scc.is_source[0]);
    }

    #[test]
    fn accessibility() {
        let ex1 = fixtures::example1();
        assert_eq!(accessible_states(&build_digraph(&ex1)).len(), 10);
        let empty = ex1.with_inputs(ex1.b.filter(|_| false));
        assert!(accessible_states(&build_digraph(&empty)).is_empty());
        // From v2: v2 -> v1 -> v0 -> v2 and v2 -> v3 -> v4 -> v5 -> v3.
        let only = ex1.with_inputs(ex1.b.filter(|e| e.key() == (2, 0)));
        assert_eq!(accessible_states(&build_digraph(&only)), vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn matchings() {
        let ex1 = fixtures::example1();
        assert_eq!(max_matching(&build_bipartite(&ex1).state_part()).len(), 10);
        let ex2 = fixtures::example2();
        assert_eq!(max_matching(&build_bipartite(&ex2).state_part()).len(), 6);
        assert!(max_matching(&build_bipartite(&inst(3, &[], 1, &[]))).is_empty());
    }

    #[test]
    fn perfect_matching_and_sdr() {
        let ex1 = fixtures::example1();
        assert!(has_perfect_matching(&ex1));
        let ex2 = fixtures::example2();
        assert!(!has_perfect_matching(&ex2));
        assert!(has_sdr(&ex2));
        let tiny = inst(1, &[], 1, &[(0, 0, 1.0)]);
        assert!(!has_perfect_matching(&tiny));
        assert!(has_sdr(&tiny));
    }

    #[test]
    fn controllability_examples() {
        let ex1 = fixtures::example1();
        assert!(is_structurally_controllable(&ex1));
        let empty = ex1.with_inputs(ex1.b.filter(|_| false));
        let report = check_controllability(&empty);
        assert!(!report.controllable && !report.accessible && report.sdr);
        assert_eq!(report.inaccessible_sources.len(), 3);
        assert!(!report.to_string().is_empty());
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&fixtures::example1()), AssumptionClass::PerfectMatching);
        assert_eq!(classify(&fixtures::example2()), AssumptionClass::StronglyConnected);
        let path = inst(3, &[(1, 0), (2, 1)], 1, &[]);
        assert_eq!(classify(&path), AssumptionClass::RootedTree { root: 0 });
        let both = inst(2, &[(0, 0), (1, 1), (0, 1), (1, 0)], 1, &[]);
        assert_eq!(
            classify(&both),
            AssumptionClass::PerfectMatchingAndStronglyConnected
        );
        // Two in-degree-zero vertices.
        let fork = inst(3, &[(2, 0), (2, 1)], 1, &[]);
        assert_eq!(classify(&fork), AssumptionClass::General);
        // A self-loop rules out the tree case.
        let looped = inst(2, &[(1, 0), (1, 1)], 1, &[]);
        assert_eq!(classify(&looped), AssumptionClass::General);
    }

    #[test]
    fn dot_output() {
        let dot = to_dot(&fixtures::example1());
        assert!(dot.contains("v1 -> v0 [style=solid];"));
        assert!(dot.contains("u0 -> v2 [style=dashed, color=cyan, label=\"10\"];"));
        assert_eq!(dot.matches("->").count(), 22);
    }
}
