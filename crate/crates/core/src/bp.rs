//! Exact biclique partition number for small graphs.
//!
//! The search always branches on the lexicographically smallest uncovered
//! edge `{u, v}`: whatever optimal partition exists, exactly one of its
//! bicliques covers that edge using only still-uncovered pairs, so trying every
//! such biclique (with `u` in part A) is exhaustive. Results are memoized on
//! the set of uncovered edges, which also makes a [`BpSolver`] reusable across
//! many graphs on the same vertex count.

use std::collections::HashMap;

use crate::biclique::{Biclique, BicliquePartition};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::limits::OracleLimits;

/// Largest vertex count whose edge set fits one `u64` mask.
pub const BP_MAX_SUPPORTED_VERTICES: usize = 11;

/// Maps unordered pairs `{u, v}` of `0..n` to bit positions, in lexicographic order.
#[derive(Debug, Clone)]
pub struct PairIndex {
    n: usize,
    index: Vec<Vec<u8>>,
    pairs: Vec<(Vertex, Vertex)>,
}

impl PairIndex {
    pub fn new(n: usize) -> Self {
        assert!(n <= BP_MAX_SUPPORTED_VERTICES, "pair index needs n <= 11");
        let mut index = vec![vec![u8::MAX; n]; n];
        let mut pairs = Vec::new();
        for (u, v) in (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))) {
            index[u][v] = pairs.len() as u8;
            index[v][u] = pairs.len() as u8;
            pairs.push((u, v));
        }
        PairIndex { n, index, pairs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_pairs(&self) -> usize {
        self.pairs.len()
    }

    pub fn bit(&self, u: Vertex, v: Vertex) -> u64 {
        1 << self.index[u][v]
    }

    pub fn pair(&self, bit: usize) -> (Vertex, Vertex) {
        self.pairs[bit]
    }

    pub fn mask_of(&self, g: &Graph) -> u64 {
        g.edges().fold(0, |m, (u, v)| m | self.bit(u, v))
    }

    pub fn graph_of(&self, mask: u64) -> Graph {
        let mut g = Graph::empty(self.n);
        for (bit, &(u, v)) in self.pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                g.insert_unchecked(u, v);
            }
        }
        g
    }

    fn vertex_adjacency(&self, mask: u64) -> Vec<u64> {
        let mut adj = vec![0u64; self.n];
        let mut rest = mask;
        while rest != 0 {
            let (u, v) = self.pairs[rest.trailing_zeros() as usize];
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
            rest &= rest - 1;
        }
        adj
    }
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    part_a: u64,
    part_b: u64,
    edges: u64,
}

/// Memoizing exact solver for graphs on a fixed vertex count.
#[derive(Debug, Clone)]
pub struct BpSolver {
    pairs: PairIndex,
    // uncovered-edge mask -> (bp of that edge set, first biclique of a witness)
    memo: HashMap<u64, (usize, Option<Candidate>)>,
}

impl BpSolver {
    pub fn new(n: usize) -> Self {
        BpSolver {
            pairs: PairIndex::new(n),
            memo: HashMap::new(),
        }
    }

    pub fn pairs(&self) -> &PairIndex {
        &self.pairs
    }

    /// Biclique partition number of the graph whose edges are `mask`.
    pub fn bp_of_mask(&mut self, mask: u64) -> usize {
        self.solve(mask)
    }

    /// Witness bicliques for `mask`, following the memoized choices.
    pub fn witness_of_mask(&mut self, mask: u64) -> Vec<Biclique> {
        self.solve(mask);
        let mut out = Vec::new();
        let mut rest = mask;
        while rest != 0 {
            let (_, choice) = self.memo[&rest];
            let c = choice.expect("nonempty edge set has a memoized choice");
            out.push(Biclique::new(
                bits_to_vertices(c.part_a),
                bits_to_vertices(c.part_b),
            ));
            rest &= !c.edges;
        }
        out
    }

    fn solve(&mut self, mask: u64) -> usize {
        if mask == 0 {
            return 0;
        }
        if let Some(&(value, _)) = self.memo.get(&mask) {
            return value;
        }
        let candidates = self.candidates(mask);
        let mut best = usize::MAX;
        let mut choice = None;
        for c in candidates {
            let rest = mask & !c.edges;
            if rest == 0 {
                best = 1;
                choice = Some(c);
                break;
            }
            // Largest first: only the first candidate can cover everything, so
            // from here on every value is at least 2.
            if best <= 2 {
                break;
            }
            let value = 1 + self.solve(rest);
            if value < best {
                best = value;
                choice = Some(c);
            }
        }
        self.memo.insert(mask, (best, choice));
        best
    }

    /// Every biclique of the uncovered graph containing its smallest edge
    /// `{u, v}` with `u` in part A, largest first.
    fn candidates(&self, mask: u64) -> Vec<Candidate> {
        let (u, v) = self.pairs.pair(mask.trailing_zeros() as usize);
        let adj = self.pairs.vertex_adjacency(mask);
        let others: Vec<Vertex> = (0..self.pairs.n)
            .filter(|&w| w != u && w != v && adj[w] != 0)
            .collect();
        let mut out = Vec::new();
        self.grow(&adj, &others, 0, 1 << u, 1 << v, &mut out);
        // Stable sort keeps the enumeration order among equal sizes.
        out.sort_by_key(|c| std::cmp::Reverse(c.edges.count_ones()));
        out
    }

    fn grow(
        &self,
        adj: &[u64],
        others: &[Vertex],
        pos: usize,
        part_a: u64,
        part_b: u64,
        out: &mut Vec<Candidate>,
    ) {
        let Some(&w) = others.get(pos) else {
            out.push(Candidate {
                part_a,
                part_b,
                edges: self.cross_mask(part_a, part_b),
            });
            return;
        };
        let bit = 1u64 << w;
        if adj[w] & part_b == part_b {
            self.grow(adj, others, pos + 1, part_a | bit, part_b, out);
        }
        if adj[w] & part_a == part_a {
            self.grow(adj, others, pos + 1, part_a, part_b | bit, out);
        }
        self.grow(adj, others, pos + 1, part_a, part_b, out);
    }

    fn cross_mask(&self, part_a: u64, part_b: u64) -> u64 {
        let mut edges = 0;
        for a in bits_to_vertices(part_a) {
            for b in bits_to_vertices(part_b) {
                edges |= self.pairs.bit(a, b);
            }
        }
        edges
    }
}

fn bits_to_vertices(mut bits: u64) -> Vec<Vertex> {
    let mut out = Vec::new();
    while bits != 0 {
        out.push(bits.trailing_zeros() as Vertex);
        bits &= bits - 1;
    }
    out
}

/// Minimum number of bicliques partitioning `E(g)`, with a witness partition.
pub fn bp_exact(g: &Graph, limits: &OracleLimits) -> Result<(usize, BicliquePartition)> {
    if g.n() > limits.bp_max_vertices || g.edge_count() > limits.bp_max_edges {
        return Err(Error::OracleLimit(format!(
            "biclique partition oracle accepts at most {} vertices and {} edges, got {} and {}",
            limits.bp_max_vertices,
            limits.bp_max_edges,
            g.n(),
            g.edge_count()
        )));
    }
    if g.n() > BP_MAX_SUPPORTED_VERTICES {
        return Err(Error::OracleLimit(format!(
            "biclique partition oracle works on at most {BP_MAX_SUPPORTED_VERTICES} vertices, got {}",
            g.n()
        )));
    }
    let mut solver = BpSolver::new(g.n());
    let mask = solver.pairs().mask_of(g);
    let value = solver.bp_of_mask(mask);
    let witness = solver.witness_of_mask(mask);
    let partition = BicliquePartition::new(g.clone(), witness)?;
    if value != partition.m() || !partition.validate().ok() {
        return Err(Error::Internal(format!(
            "biclique partition witness of size {} does not certify value {value}",
            partition.m()
        )));
    }
    Ok((value, partition))
}
