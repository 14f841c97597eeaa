//! The 13-block lower-bound instance, closed-form bounds on `c_k`, and a seeded
//! random generator for k-uniform hypergraphs.

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_rational::BigRational;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::hypergraph::{BlockRange, Hypergraph, HypergraphDocument, Vertex};

/// Names of the 13 blocks, in id-assignment order.
pub const BLOCK_NAMES: [&str; 13] = [
    "X1L", "X1M", "X1R", "X2L", "X2M", "X2R", "X3L", "X3M", "X3R", "Y12", "Y23", "Y31", "Z",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Block {
    X(usize, Part),
    /// `Y(i)` sits between `X_i` and `X_{i+1}` (indices mod 3, 1-based).
    Y(usize),
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Part {
    L,
    M,
    R,
}

impl Block {
    fn index(self) -> usize {
        match self {
            Block::X(i, p) => 3 * (i - 1) + p as usize,
            Block::Y(i) => 8 + i,
            Block::Z => 12,
        }
    }
}

/// Block sizes and id ranges of the lower-bound instance for one `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockLayout {
    pub k: usize,
    pub side: usize,
    pub middle: usize,
    pub bridge: usize,
    pub centre: usize,
    /// `(start, end)` for each block in [`BLOCK_NAMES`] order.
    pub ranges: [(usize, usize); 13],
}

fn iverson(b: bool) -> usize {
    usize::from(b)
}

pub fn block_layout(k: usize) -> Result<BlockLayout> {
    if k < 2 {
        return Err(Error::UniformityOutOfDomain { k, min: 2 });
    }
    let side = k / 4;
    let middle = iverson(k % 4 == 2 || k % 4 == 3);
    let bridge = iverson(k % 2 == 1);
    let centre = k - (2 * side + 2 * bridge + middle);
    let sizes = [
        side, middle, side, side, middle, side, side, middle, side, bridge, bridge, bridge, centre,
    ];
    let mut ranges = [(0, 0); 13];
    let mut next = 0;
    for (r, s) in ranges.iter_mut().zip(sizes) {
        *r = (next, next + s);
        next += s;
    }
    Ok(BlockLayout { k, side, middle, bridge, centre, ranges })
}

impl BlockLayout {
    pub fn n(&self) -> usize {
        self.ranges[12].1
    }

    pub fn size(&self, block: Block) -> usize {
        let (a, b) = self.ranges[block.index()];
        b - a
    }

    pub fn vertices(&self, block: Block) -> std::ops::Range<Vertex> {
        let (a, b) = self.ranges[block.index()];
        a..b
    }

    /// The six edges as block lists, in the published order.
    pub fn edge_blocks() -> [Vec<Block>; 6] {
        use Block::*;
        use Part::*;
        let x = |i| [X(i, L), X(i, M), X(i, R)];
        let ring = |i: usize, j: usize, y: usize| {
            let mut v = x(i).to_vec();
            v.push(Y(y));
            v.extend(x(j));
            v
        };
        [
            ring(1, 2, 1),
            ring(2, 3, 2),
            ring(3, 1, 3),
            vec![Y(1), X(2, L), X(2, M), Z, Y(3), X(3, R)],
            vec![Y(2), X(3, L), X(3, M), Z, Y(1), X(1, R)],
            vec![Y(3), X(1, L), X(1, M), Z, Y(2), X(2, R)],
        ]
    }

    pub fn block_ranges(&self) -> Vec<BlockRange> {
        BLOCK_NAMES
            .iter()
            .zip(self.ranges)
            .map(|(name, (start, end))| BlockRange { name: name.to_string(), start, end })
            .collect()
    }
}

/// The lower-bound instance: `2k` vertices, six edges of size `k`.
#[derive(Debug, Clone)]
pub struct TuzaInstance {
    pub layout: BlockLayout,
    pub graph: Hypergraph,
}

impl TuzaInstance {
    pub fn to_document(&self) -> HypergraphDocument {
        let mut doc = self.graph.to_document();
        doc.blocks = Some(self.layout.block_ranges());
        doc
    }
}

pub fn tuza_instance(k: usize) -> Result<TuzaInstance> {
    let layout = block_layout(k)?;
    let edges = BlockLayout::edge_blocks()
        .iter()
        .map(|blocks| blocks.iter().flat_map(|&b| layout.vertices(b)).collect())
        .collect();
    let graph = Hypergraph::uniform(layout.n(), k, edges)?;
    Ok(TuzaInstance { layout, graph })
}

/// `3 / (2k + 6)`, the ratio achieved by [`tuza_instance`].
pub fn paper_lower_bound(k: usize) -> BigRational {
    BigRational::new(BigInt::from(3), BigInt::from(2 * k + 6))
}

/// `2 / (k + 1 + floor(sqrt k) + ceil(k / floor(sqrt k)))`, integer arithmetic throughout.
pub fn lai_chang_lower_bound(k: usize) -> Result<BigRational> {
    if k < 1 {
        return Err(Error::UniformityOutOfDomain { k, min: 1 });
    }
    let root = k.sqrt();
    let denom = k + 1 + root + k.div_ceil(root);
    Ok(BigRational::new(BigInt::from(2), BigInt::from(denom)))
}

/// `ln(k) / k`.
pub fn alon_upper_bound(k: usize) -> Result<f64> {
    if k < 2 {
        return Err(Error::UniformityOutOfDomain { k, min: 2 });
    }
    Ok((k as f64).ln() / k as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSpec {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub require_connected: bool,
    pub require_distinct_edges: bool,
}

/// Draws sets of whole instances before giving up on connectivity.
pub const INSTANCE_ATTEMPTS: usize = 10_000;
/// Redraws of a single edge before giving up on distinctness.
pub const EDGE_ATTEMPTS: usize = 10_000;

/// A random k-uniform hypergraph with `m` edges drawn uniformly among k-subsets of `0..n`.
///
/// Without `require_distinct_edges`, repeated draws collapse into one edge, so the
/// result may have fewer than `m` edges.
pub fn random_uniform_hypergraph(spec: RandomSpec) -> Result<Hypergraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    random_uniform_with(&mut rng, spec)
}

pub fn random_uniform_with(rng: &mut impl Rng, spec: RandomSpec) -> Result<Hypergraph> {
    let RandomSpec { k, n, m, require_connected, require_distinct_edges, .. } = spec;
    if k == 0 || n < k {
        return Err(Error::Generator(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    if require_distinct_edges && BigUint::from(m) > num_integer::binomial(BigUint::from(n), BigUint::from(k)) {
        return Err(Error::Generator(format!("m = {m} exceeds C({n}, {k}) distinct edges")));
    }
    for _ in 0..INSTANCE_ATTEMPTS {
        let mut seen: HashSet<Vec<Vertex>> = HashSet::new();
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let mut attempts = 0;
            loop {
                let mut e = index::sample(rng, n, k).into_vec();
                e.sort_unstable();
                if seen.insert(e.clone()) {
                    edges.push(e);
                    break;
                }
                if !require_distinct_edges {
                    break;
                }
                attempts += 1;
                if attempts >= EDGE_ATTEMPTS {
                    return Err(Error::Generator("edge rejection cap exceeded".into()));
                }
            }
        }
        let h = Hypergraph::uniform(n, k, edges)?;
        if !require_connected || h.is_connected() {
            return Ok(h);
        }
    }
    Err(Error::Generator("connectivity rejection cap exceeded".into()))
}
