//! Transversal numbers: exact branch and bound, a subset-enumeration oracle and a greedy bound.

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{Hypergraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransversalResult {
    pub tau: usize,
    /// The lexicographically smallest minimum transversal (sorted ids).
    pub witness: Vec<Vertex>,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no transversal of size <= {limit} exists")]
pub struct ExceedsLimit {
    pub limit: usize,
}

pub fn is_transversal(h: &Hypergraph, set: &[Vertex]) -> bool {
    let mut mark = vec![false; h.n()];
    for &v in set {
        if v < h.n() {
            mark[v] = true;
        }
    }
    h.edges().iter().all(|e| e.iter().any(|&v| mark[v]))
}

/// Tries all vertex subsets by increasing size, each size in lexicographic order.
pub fn tau_bruteforce(h: &Hypergraph, limit: usize) -> Result<TransversalResult, ExceedsLimit> {
    let mut tested = 0u64;
    for size in 0..=limit.min(h.n()) {
        for subset in (0..h.n()).combinations(size) {
            tested += 1;
            if is_transversal(h, &subset) {
                return Ok(TransversalResult { tau: size, witness: subset, nodes_explored: tested });
            }
        }
    }
    Err(ExceedsLimit { limit })
}

/// Repeatedly takes a vertex of maximum degree among the edges not yet hit
/// (smallest id on ties).
pub fn greedy_transversal(h: &Hypergraph) -> Vec<Vertex> {
    let mut hit = vec![false; h.m()];
    let mut chosen = Vec::new();
    loop {
        let mut degree = vec![0usize; h.n()];
        for (e, edge) in h.edges().iter().enumerate() {
            if !hit[e] {
                for &v in edge {
                    degree[v] += 1;
                }
            }
        }
        let Some((best, &d)) = degree.iter().enumerate().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        else {
            break;
        };
        if d == 0 {
            break;
        }
        chosen.push(best);
        for (e, edge) in h.edges().iter().enumerate() {
            if edge.binary_search(&best).is_ok() {
                hit[e] = true;
            }
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Greedy packing of pairwise-disjoint edges, smallest edges first (lexicographic on ties).
/// Its size is a lower bound on the transversal number.
pub fn disjoint_edge_packing(h: &Hypergraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..h.m()).collect();
    order.sort_by(|&a, &b| {
        let (ea, eb) = (&h.edges()[a], &h.edges()[b]);
        ea.len().cmp(&eb.len()).then_with(|| ea.cmp(eb))
    });
    let mut used = vec![false; h.n()];
    let mut packing = Vec::new();
    for e in order {
        let edge = &h.edges()[e];
        if edge.iter().all(|&v| !used[v]) {
            edge.iter().for_each(|&v| used[v] = true);
            packing.push(e);
        }
    }
    packing
}

/// Exact transversal number by branch and bound.
///
/// Branches on the vertices of a smallest uncovered edge (highest residual
/// degree first), prunes with a disjoint-edge packing and starts from the
/// greedy solution. The returned witness is the lexicographically smallest
/// minimum transversal, so it does not depend on search order.
pub fn tau_exact(h: &Hypergraph) -> TransversalResult {
    let mut search = Search::new(h);
    let greedy = greedy_transversal(h);
    search.best_size = greedy.len();
    search.run();
    let tau = search.best_size;
    let mut nodes = search.nodes;

    let mut witness = Vec::with_capacity(tau);
    let mut low = 0;
    for _ in 0..tau {
        let mut placed = false;
        for v in low..h.n() {
            let mut probe = Search::new(h);
            for &w in &witness {
                probe.choose(w);
            }
            probe.choose(v);
            for u in 0..=v {
                probe.excluded[u] = true;
            }
            // Any completion of total size <= tau.
            probe.best_size = tau + 1;
            probe.first_only = true;
            probe.run();
            nodes += probe.nodes;
            if probe.found {
                witness.push(v);
                low = v + 1;
                placed = true;
                break;
            }
        }
        debug_assert!(placed, "a minimum transversal extends the current prefix");
    }
    TransversalResult { tau, witness, nodes_explored: nodes }
}

struct Search<'a> {
    h: &'a Hypergraph,
    incidence: Vec<Vec<usize>>,
    hits: Vec<usize>,
    excluded: Vec<bool>,
    chosen: Vec<Vertex>,
    /// Only solutions strictly smaller than this are of interest.
    best_size: usize,
    first_only: bool,
    found: bool,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(h: &'a Hypergraph) -> Self {
        Self {
            h,
            incidence: h.incidence(),
            hits: vec![0; h.m()],
            excluded: vec![false; h.n()],
            chosen: Vec::new(),
            best_size: usize::MAX,
            first_only: false,
            found: false,
            nodes: 0,
        }
    }

    fn choose(&mut self, v: Vertex) {
        self.chosen.push(v);
        for &e in &self.incidence[v] {
            self.hits[e] += 1;
        }
    }

    fn unchoose(&mut self) {
        let v = self.chosen.pop().expect("non-empty");
        for &e in &self.incidence[v] {
            self.hits[e] -= 1;
        }
    }

    fn run(&mut self) {
        self.recurse();
    }

    fn recurse(&mut self) {
        self.nodes += 1;
        if self.chosen.len() >= self.best_size || (self.first_only && self.found) {
            return;
        }
        let h = self.h;
        let mut open: Vec<(usize, Vec<Vertex>)> = Vec::new();
        for (e, edge) in h.edges().iter().enumerate() {
            if self.hits[e] == 0 {
                let free: Vec<Vertex> = edge.iter().copied().filter(|&v| !self.excluded[v]).collect();
                if free.is_empty() {
                    return;
                }
                open.push((e, free));
            }
        }
        if open.is_empty() {
            self.best_size = self.chosen.len();
            self.found = true;
            return;
        }
        open.sort_by(|a, b| a.1.len().cmp(&b.1.len()).then_with(|| a.1.cmp(&b.1)));

        let mut used = vec![false; h.n()];
        let mut packing = 0;
        for (_, free) in &open {
            if free.iter().all(|&v| !used[v]) {
                free.iter().for_each(|&v| used[v] = true);
                packing += 1;
            }
        }
        if self.chosen.len() + packing >= self.best_size {
            return;
        }

        let mut residual = vec![0usize; h.n()];
        for (_, free) in &open {
            for &v in free {
                residual[v] += 1;
            }
        }
        let mut candidates = open[0].1.clone();
        candidates.sort_by(|&a, &b| residual[b].cmp(&residual[a]).then(a.cmp(&b)));

        let mut newly_excluded = Vec::new();
        for v in candidates {
            self.choose(v);
            self.recurse();
            self.unchoose();
            if self.first_only && self.found {
                break;
            }
            self.excluded[v] = true;
            newly_excluded.push(v);
        }
        for v in newly_excluded {
            self.excluded[v] = false;
        }
    }
}
