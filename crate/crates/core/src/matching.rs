//! Minimum-cost maximum matching on `Γ(A, B)` and the three edge-cost
//! functions used by the matching-based solver.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::graph::{BipartiteGraph, LeftVertex, Matching};
use crate::pattern::SystemInstance;

/// Edge costs on `Γ(A, B)`. State edges always cost 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostVariant {
    /// Input edge `(u_j, v_k)` costs `w_kj`.
    C,
    /// Every input edge costs 1.
    CUniform,
    /// Input edge `(u_j, v_k)` costs `w_kj + 1`.
    C1,
}

impl CostVariant {
    pub fn input_cost(self, w: f64) -> f64 {
        match self {
            CostVariant::C => w,
            CostVariant::CUniform => 1.0,
            CostVariant::C1 => w + 1.0,
        }
    }
}

/// Copy of `bipartite` with every edge costed under `variant`.
///
/// # Panics
/// If an input edge of `bipartite` has no matching entry in `instance.b`.
pub fn assign_costs(
    bipartite: &BipartiteGraph,
    instance: &SystemInstance,
    variant: CostVariant,
) -> BipartiteGraph {
    let mut out = bipartite.clone();
    for e in &mut out.edges {
        e.cost = match e.left {
            LeftVertex::State(_) => 0.0,
            LeftVertex::Input(j) => {
                let w = instance
                    .b
                    .get(e.right, j)
                    .unwrap_or_else(|| panic!("no B entry ({}, {j})", e.right))
                    .cost;
                variant.input_cost(w)
            }
        };
    }
    out
}

#[derive(Clone, Copy)]
struct Arc {
    to: usize,
    rev: usize,
    cap: u8,
    cost: f64,
    /// Index into `BipartiteGraph::edges` for left -> right arcs.
    edge: Option<usize>,
}

struct FlowNetwork {
    arcs: Vec<Vec<Arc>>,
}

impl FlowNetwork {
    fn new(n: usize) -> Self {
        Self {
            arcs: vec![Vec::new(); n],
        }
    }

    fn add(&mut self, from: usize, to: usize, cost: f64, edge: Option<usize>) {
        let rev_from = self.arcs[to].len();
        let rev_to = self.arcs[from].len();
        self.arcs[from].push(Arc {
            to,
            rev: rev_from,
            cap: 1,
            cost,
            edge,
        });
        self.arcs[to].push(Arc {
            to: from,
            rev: rev_to,
            cap: 0,
            cost: -cost,
            edge: None,
        });
    }
}

#[derive(PartialEq)]
struct HeapItem {
    dist: f64,
    node: usize,
}

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A maximum-cardinality matching of least total cost among all
/// maximum-cardinality matchings.
///
/// Successive shortest paths on the unit-capacity network
/// `source -> left -> right -> sink`, with Dijkstra on reduced costs. Each
/// augmentation adds one matched pair at the least possible cost increase,
/// so stopping when the sink becomes unreachable yields a minimum-cost flow
/// of maximum value. Costs must be non-negative.
pub fn min_cost_max_matching(bipartite: &BipartiteGraph) -> Matching {
    let n_left = bipartite.left_count();
    let n_right = bipartite.right_count();
    let source = n_left + n_right;
    let sink = source + 1;
    let n = sink + 1;

    let mut net = FlowNetwork::new(n);
    for l in 0..n_left {
        net.add(source, l, 0.0, None);
    }
    for (l, row) in bipartite.adjacency().iter().enumerate() {
        for &(r, k) in row {
            debug_assert!(bipartite.edges[k].cost >= 0.0);
            net.add(l, n_left + r, bipartite.edges[k].cost, Some(k));
        }
    }
    for r in 0..n_right {
        net.add(n_left + r, sink, 0.0, None);
    }

    let mut potential = vec![0.0f64; n];
    let mut dist = vec![f64::INFINITY; n];
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut heap = BinaryHeap::new();

    loop {
        dist.iter_mut().for_each(|x| *x = f64::INFINITY);
        prev.iter_mut().for_each(|p| *p = None);
        dist[source] = 0.0;
        heap.push(HeapItem {
            dist: 0.0,
            node: source,
        });
        while let Some(HeapItem { dist: du, node: u }) = heap.pop() {
            if du > dist[u] {
                continue;
            }
            for (k, arc) in net.arcs[u].iter().enumerate() {
                if arc.cap == 0 {
                    continue;
                }
                // Reduced costs are non-negative up to rounding.
                let reduced = (arc.cost + potential[u] - potential[arc.to]).max(0.0);
                let nd = du + reduced;
                if nd < dist[arc.to] {
                    dist[arc.to] = nd;
                    prev[arc.to] = Some((u, k));
                    heap.push(HeapItem {
                        dist: nd,
                        node: arc.to,
                    });
                }
            }
        }
        if !dist[sink].is_finite() {
            break;
        }
        for v in 0..n {
            if dist[v].is_finite() {
                potential[v] += dist[v];
            }
        }
        let mut v = sink;
        while let Some((u, k)) = prev[v] {
            let rev = net.arcs[u][k].rev;
            net.arcs[u][k].cap -= 1;
            net.arcs[v][rev].cap += 1;
            v = u;
        }
    }

    let edges = (0..n_left)
        .flat_map(|l| net.arcs[l].iter())
        .filter(|arc| arc.cap == 0)
        .filter_map(|arc| arc.edge)
        .map(|k| bipartite.edges[k])
        .collect();
    Matching::from_edges(edges)
}
