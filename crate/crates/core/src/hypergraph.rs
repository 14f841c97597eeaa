//! Hypergraph model and the structural operations used by the discharging argument.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Edge = Vec<Vertex>;

/// A hypergraph on vertices `0..n` whose edges are sorted, duplicate-free id lists.
///
/// Edge order is preserved as given; only the interchange format sorts edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    k: Option<usize>,
    edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    VertexOutOfRange { edge: usize, vertex: Vertex },
    RepeatedVertex { edge: usize, vertex: Vertex },
    EmptyEdge { edge: usize },
    DuplicateEdge { first: usize, second: usize },
    WrongCardinality { edge: usize, expected: usize, found: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexOutOfRange { edge, vertex } => {
                write!(f, "vertex id out of range: {vertex} in edge {edge}")
            }
            Violation::RepeatedVertex { edge, vertex } => {
                write!(f, "repeated vertex: {vertex} in edge {edge}")
            }
            Violation::EmptyEdge { edge } => write!(f, "empty edge: edge {edge}"),
            Violation::DuplicateEdge { first, second } => {
                write!(f, "duplicate edge: edge {second} repeats edge {first}")
            }
            Violation::WrongCardinality { edge, expected, found } => {
                write!(f, "wrong cardinality: edge {edge} has {found} vertices, expected {expected}")
            }
        }
    }
}

/// Checks raw hypergraph data against every [`Hypergraph`] invariant.
///
/// Edges are compared as sets, so `[1, 0]` duplicates `[0, 1]`.
pub fn validate(n: usize, k: Option<usize>, edges: &[Vec<Vertex>]) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut seen: HashMap<Vec<Vertex>, usize> = HashMap::new();
    for (i, edge) in edges.iter().enumerate() {
        if edge.is_empty() {
            out.push(Violation::EmptyEdge { edge: i });
        }
        for &v in edge {
            if v >= n {
                out.push(Violation::VertexOutOfRange { edge: i, vertex: v });
            }
        }
        let mut sorted = edge.clone();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                out.push(Violation::RepeatedVertex { edge: i, vertex: w[0] });
            }
        }
        sorted.dedup();
        if let Some(k) = k {
            if edge.len() != k {
                out.push(Violation::WrongCardinality { edge: i, expected: k, found: edge.len() });
            }
        }
        match seen.get(&sorted) {
            Some(&first) => out.push(Violation::DuplicateEdge { first, second: i }),
            None => {
                seen.insert(sorted, i);
            }
        }
    }
    out
}

impl Hypergraph {
    /// Builds a hypergraph in canonical form (each edge sorted, edges in
    /// lexicographic order). Fails with every violation found.
    pub fn new(n: usize, k: Option<usize>, edges: Vec<Vec<Vertex>>) -> Result<Self> {
        let violations = validate(n, k, &edges);
        if !violations.is_empty() {
            return Err(Error::InvalidHypergraph(violations));
        }
        let mut edges: Vec<Edge> = edges
            .into_iter()
            .map(|mut e| {
                e.sort_unstable();
                e
            })
            .collect();
        edges.sort();
        Ok(Self { n, k, edges })
    }

    /// Builds a k-uniform hypergraph.
    pub fn uniform(n: usize, k: usize, edges: Vec<Vec<Vertex>>) -> Result<Self> {
        Self::new(n, Some(k), edges)
    }

    pub fn empty(n: usize, k: Option<usize>) -> Self {
        Self { n, k, edges: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn k(&self) -> Option<usize> {
        self.k
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// The common edge size if every edge has the same size (declared or not).
    pub fn uniformity(&self) -> Option<usize> {
        if self.k.is_some() {
            return self.k;
        }
        let first = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == first).then_some(first)
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate(self.n, self.k, &self.edges)
    }

    /// Returns a copy with one more edge.
    pub fn with_edge(&self, edge: Vec<Vertex>) -> Result<Self> {
        let mut edges = self.edges.clone();
        edges.push(edge);
        Self::new(self.n, self.k, edges)
    }

    /// Returns a copy without edge `index`.
    pub fn without_edge(&self, index: usize) -> Self {
        let mut edges = self.edges.clone();
        edges.remove(index);
        Self { n: self.n, k: self.k, edges }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    /// Edge indices incident to each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile::new(self.degrees())
    }

    /// Vertices sharing at least one edge with `u`, excluding `u`.
    pub fn neighbors(&self, u: Vertex) -> Result<BTreeSet<Vertex>> {
        if u >= self.n {
            return Err(Error::VertexOutOfRange { vertex: u, n: self.n });
        }
        Ok(self
            .edges
            .iter()
            .filter(|e| e.binary_search(&u).is_ok())
            .flat_map(|e| e.iter().copied())
            .filter(|&v| v != u)
            .collect())
    }

    /// No two distinct edges overlap.
    pub fn is_linear(&self) -> bool {
        self.edges
            .iter()
            .enumerate()
            .all(|(i, e)| self.edges[i + 1..].iter().all(|f| !edges_overlap(e, f)))
    }

    /// `H - U`: drop `U`, every edge meeting `U`, and every vertex left with
    /// no surviving incident edge. Vertices that were already isolated stay.
    pub fn remove_closed(&self, removed: &[Vertex]) -> Result<Removal> {
        let mut in_u = vec![false; self.n];
        for &u in removed {
            if u >= self.n {
                return Err(Error::VertexOutOfRange { vertex: u, n: self.n });
            }
            in_u[u] = true;
        }
        let degree = self.degrees();
        let kept_edges: Vec<&Edge> = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| !in_u[v]))
            .collect();
        let mut alive = vec![false; self.n];
        for e in &kept_edges {
            for &v in e.iter() {
                alive[v] = true;
            }
        }
        for v in 0..self.n {
            if degree[v] == 0 && !in_u[v] {
                alive[v] = true;
            }
        }
        let mut map = vec![None; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if alive[v] {
                map[v] = Some(next);
                next += 1;
            }
        }
        let edges = kept_edges
            .into_iter()
            .map(|e| e.iter().map(|&v| map[v].expect("survivor")).collect())
            .collect();
        Ok(Removal {
            graph: Hypergraph { n: next, k: self.k, edges },
            map,
        })
    }

    /// Edge-connected components; each isolated vertex is its own component.
    /// Components are ordered by their smallest vertex and re-indexed densely.
    pub fn connected_components(&self) -> Vec<Hypergraph> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &self.edges {
            for w in e.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut index_of_root: HashMap<usize, usize> = HashMap::new();
        let mut members: Vec<Vec<Vertex>> = Vec::new();
        for v in 0..self.n {
            let r = find(&mut parent, v);
            let c = *index_of_root.entry(r).or_insert_with(|| {
                members.push(Vec::new());
                members.len() - 1
            });
            members[c].push(v);
        }
        let mut local = vec![0; self.n];
        let mut comp_of = vec![0; self.n];
        for (c, vs) in members.iter().enumerate() {
            for (i, &v) in vs.iter().enumerate() {
                local[v] = i;
                comp_of[v] = c;
            }
        }
        let mut edges: Vec<Vec<Edge>> = vec![Vec::new(); members.len()];
        for e in &self.edges {
            edges[comp_of[e[0]]].push(e.iter().map(|&v| local[v]).collect());
        }
        members
            .iter()
            .zip(edges)
            .map(|(vs, edges)| Hypergraph { n: vs.len(), k: self.k, edges })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    pub fn to_document(&self) -> HypergraphDocument {
        let mut edges = self.edges.clone();
        edges.sort();
        HypergraphDocument { n: self.n, k: self.k, edges, blocks: None }
    }

    /// Canonical interchange text (pretty JSON, edges sorted).
    pub fn to_json(&self) -> String {
        self.to_document().to_json()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        HypergraphDocument::from_json(text)?.into_hypergraph()
    }
}

/// Result of [`Hypergraph::remove_closed`]: the new graph plus the old-to-new id map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Removal {
    pub graph: Hypergraph,
    pub map: Vec<Option<Vertex>>,
}

/// Two edges overlap when they share at least two vertices.
pub fn edges_overlap(e: &[Vertex], f: &[Vertex]) -> bool {
    intersection_size(e, f) >= 2
}

/// Size of the intersection of two sorted id lists.
pub fn intersection_size(e: &[Vertex], f: &[Vertex]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < e.len() && j < f.len() {
        match e[i].cmp(&f[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Degree statistics: `degrees[v]`, histogram `n_i`, `n_{>=4}` and the maximum degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    /// `histogram[i]` = number of vertices of degree `i` (index 0 counts isolated vertices).
    pub histogram: Vec<usize>,
    pub max_degree: usize,
}

impl DegreeProfile {
    pub fn new(degrees: Vec<usize>) -> Self {
        let max_degree = degrees.iter().copied().max().unwrap_or(0);
        let mut histogram = vec![0; max_degree + 1];
        for &d in &degrees {
            histogram[d] += 1;
        }
        Self { degrees, histogram, max_degree }
    }

    /// `n_i`, zero beyond the maximum degree.
    pub fn count(&self, degree: usize) -> usize {
        self.histogram.get(degree).copied().unwrap_or(0)
    }

    /// `n_{>=i}`.
    pub fn count_at_least(&self, degree: usize) -> usize {
        self.histogram.iter().skip(degree).sum()
    }

    pub fn degree_sum(&self) -> usize {
        self.degrees.iter().sum()
    }
}

/// A named contiguous id range `start..end`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockRange {
    pub name: String,
    pub start: usize,
    pub end: usize,
}

/// The on-disk interchange form of a hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphDocument {
    pub n: usize,
    pub k: Option<usize>,
    pub edges: Vec<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<BlockRange>>,
}

impl HypergraphDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        let mut doc = self.clone();
        for e in &mut doc.edges {
            e.sort_unstable();
        }
        doc.edges.sort();
        let mut out = String::from("{\n");
        out.push_str(&format!("  \"n\": {},\n", doc.n));
        out.push_str(&format!("  \"k\": {},\n", serde_json::to_string(&doc.k).expect("json")));
        let edges: Vec<String> = doc
            .edges
            .iter()
            .map(|e| format!("    {}", serde_json::to_string(e).expect("json")))
            .collect();
        if edges.is_empty() {
            out.push_str("  \"edges\": []");
        } else {
            out.push_str(&format!("  \"edges\": [\n{}\n  ]", edges.join(",\n")));
        }
        if let Some(blocks) = &doc.blocks {
            let blocks: Vec<String> = blocks
                .iter()
                .map(|b| format!("    {}", serde_json::to_string(b).expect("json")))
                .collect();
            out.push_str(&format!(",\n  \"blocks\": [\n{}\n  ]", blocks.join(",\n")));
        }
        out.push_str("\n}\n");
        out
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate(self.n, self.k, &self.edges)
    }

    pub fn into_hypergraph(self) -> Result<Hypergraph> {
        Hypergraph::new(self.n, self.k, self.edges)
    }
}
