//! Simple undirected graphs, vertex colorings and the exact chromatic number oracle.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::limits::OracleLimits;

pub type Vertex = usize;
pub type Color = u64;

/// Simple undirected graph on vertices `0..n`.
///
/// Adjacency is kept as one bitset row per vertex so that membership and
/// neighborhood intersection stay cheap on dense instances.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<FixedBitSet>,
    num_edges: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![FixedBitSet::with_capacity(n); n],
            num_edges: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_unchecked(u, v);
            }
        }
        g
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::MalformedInput(format!(
                "edge {{{u},{v}}} has an endpoint outside 0..{}",
                self.n
            )));
        }
        if u == v {
            return Err(Error::MalformedInput(format!("self-loop at vertex {u}")));
        }
        if self.has_edge(u, v) {
            return Err(Error::MalformedInput(format!("duplicate edge {{{u},{v}}}")));
        }
        self.insert_unchecked(u, v);
        Ok(())
    }

    pub(crate) fn insert_unchecked(&mut self, u: Vertex, v: Vertex) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.num_edges += 1;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.num_edges
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adj[u].contains(v)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].ones()
    }

    pub fn neighborhood(&self, v: Vertex) -> &FixedBitSet {
        &self.adj[v]
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .ones()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// A set of vertices of some host graph, kept sorted and duplicate free.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSubset {
    members: Vec<Vertex>,
}

impl VertexSubset {
    pub fn new(mut members: Vec<Vertex>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSubset { members }
    }

    pub fn all(n: usize) -> Self {
        VertexSubset {
            members: (0..n).collect(),
        }
    }

    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn check(&self, n: usize) -> Result<()> {
        match self.members.last() {
            Some(&v) if v >= n => Err(Error::MalformedInput(format!(
                "vertex {v} is outside 0..{n}"
            ))),
            _ => Ok(()),
        }
    }

    /// `{0..n} \ self`.
    pub fn complement(&self, n: usize) -> Self {
        let inside = self.to_bitset(n);
        VertexSubset {
            members: (0..n).filter(|&v| !inside.contains(v)).collect(),
        }
    }

    pub fn to_bitset(&self, n: usize) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(n);
        for &v in &self.members {
            bits.insert(v);
        }
        bits
    }
}

impl FromIterator<Vertex> for VertexSubset {
    fn from_iter<T: IntoIterator<Item = Vertex>>(iter: T) -> Self {
        VertexSubset::new(iter.into_iter().collect())
    }
}

/// Total vertex coloring. Color values are arbitrary; `num_colors` counts
/// the distinct values actually used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    assignment: Vec<Color>,
    num_colors: usize,
}

impl Coloring {
    pub fn new(assignment: Vec<Color>) -> Self {
        let mut distinct = assignment.clone();
        distinct.sort_unstable();
        distinct.dedup();
        Coloring {
            num_colors: distinct.len(),
            assignment,
        }
    }

    pub fn constant(n: usize) -> Self {
        Coloring::new(vec![0; n])
    }

    pub fn assignment(&self) -> &[Color] {
        &self.assignment
    }

    pub fn color(&self, v: Vertex) -> Color {
        self.assignment[v]
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    /// Relabels colors to `0..num_colors`, preserving their relative order.
    pub fn compacted(&self) -> Coloring {
        let mut distinct = self.assignment.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let rank: BTreeMap<Color, Color> = distinct
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i as Color))
            .collect();
        Coloring {
            assignment: self.assignment.iter().map(|c| rank[c]).collect(),
            num_colors: self.num_colors,
        }
    }

    pub fn into_assignment(self) -> Vec<Color> {
        self.assignment
    }
}

pub fn is_proper(g: &Graph, c: &Coloring) -> Result<bool> {
    if c.len() != g.n() {
        return Err(Error::MalformedInput(format!(
            "coloring covers {} vertices but the graph has {}",
            c.len(),
            g.n()
        )));
    }
    Ok(first_conflict(g, c).is_none())
}

pub(crate) fn first_conflict(g: &Graph, c: &Coloring) -> Option<(Vertex, Vertex)> {
    g.edges().find(|&(u, v)| c.color(u) == c.color(v))
}

/// Result of [`induced_subgraph`]: the subgraph plus the order-preserving
/// relabeling in both directions.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub old_to_new: Vec<Option<Vertex>>,
    pub new_to_old: Vec<Vertex>,
}

pub fn induced_subgraph(g: &Graph, s: &VertexSubset) -> Result<InducedSubgraph> {
    s.check(g.n())?;
    let new_to_old = s.members().to_vec();
    let mut old_to_new = vec![None; g.n()];
    for (i, &v) in new_to_old.iter().enumerate() {
        old_to_new[v] = Some(i);
    }
    let mut graph = Graph::empty(new_to_old.len());
    for (i, &u) in new_to_old.iter().enumerate() {
        for w in g.neighbors(u) {
            if let Some(j) = old_to_new[w] {
                if j > i {
                    graph.insert_unchecked(i, j);
                }
            }
        }
    }
    Ok(InducedSubgraph {
        graph,
        old_to_new,
        new_to_old,
    })
}

/// Merges a coloring of `g[s]` and one of `g[V \ s]` with disjoint palettes.
///
/// Outside vertices keep their (compacted) colors; inside colors are shifted
/// past the outside palette, so the result uses exactly the sum of both
/// color counts.
pub fn combine_colorings(
    g: &Graph,
    s: &VertexSubset,
    c_inside: &Coloring,
    c_outside: &Coloring,
) -> Result<Coloring> {
    let inside = induced_subgraph(g, s)?;
    let outside = induced_subgraph(g, &s.complement(g.n()))?;
    for (name, sub, c) in [
        ("inside", &inside, c_inside),
        ("outside", &outside, c_outside),
    ] {
        if !is_proper(&sub.graph, c)? {
            return Err(Error::PreconditionViolation(format!(
                "{name} coloring is not proper on its induced subgraph"
            )));
        }
    }
    if s.is_empty() {
        return Ok(c_outside.clone());
    }
    if s.len() == g.n() {
        return Ok(c_inside.clone());
    }

    let c_inside = c_inside.compacted();
    let c_outside = c_outside.compacted();
    let offset = c_outside.num_colors() as Color;
    let mut assignment = vec![0; g.n()];
    for (i, &v) in inside.new_to_old.iter().enumerate() {
        assignment[v] = c_inside.color(i) + offset;
    }
    for (i, &v) in outside.new_to_old.iter().enumerate() {
        assignment[v] = c_outside.color(i);
    }
    Ok(Coloring::new(assignment))
}

/// Sequential greedy coloring in order of decreasing degree (ties by index).
pub fn greedy_coloring(g: &Graph) -> Coloring {
    let mut assignment: Vec<Option<Color>> = vec![None; g.n()];
    for v in degree_order(g) {
        let mut taken: Vec<Color> = g.neighbors(v).filter_map(|w| assignment[w]).collect();
        taken.sort_unstable();
        taken.dedup();
        let color = taken
            .iter()
            .enumerate()
            .find(|&(i, &c)| i as Color != c)
            .map_or(taken.len() as Color, |(i, _)| i as Color);
        assignment[v] = Some(color);
    }
    Coloring::new(assignment.into_iter().map(|c| c.unwrap_or(0)).collect())
}

/// Vertices of a clique found greedily from each start vertex; the largest wins.
pub fn greedy_clique(g: &Graph) -> Vec<Vertex> {
    let order = degree_order(g);
    let mut best: Vec<Vertex> = Vec::new();
    for &start in &order {
        let mut clique = vec![start];
        let mut candidates = g.neighborhood(start).clone();
        for &v in &order {
            if candidates.contains(v) {
                clique.push(v);
                candidates.intersect_with(g.neighborhood(v));
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}

fn degree_order(g: &Graph) -> Vec<Vertex> {
    let mut order: Vec<Vertex> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

/// Exact chromatic number with a witness coloring.
///
/// Tries `q` from the greedy clique size upward and stops at the greedy
/// coloring's count; each attempt is a backtracking search where a vertex may
/// only open the next unused color class.
pub fn chromatic_number_exact(g: &Graph, limits: &OracleLimits) -> Result<(usize, Coloring)> {
    let n = g.n();
    if n > limits.chi_max_vertices {
        return Err(Error::OracleLimit(format!(
            "chromatic number oracle accepts at most {} vertices, got {n}",
            limits.chi_max_vertices
        )));
    }
    if n > 64 {
        return Err(Error::OracleLimit(format!(
            "chromatic number oracle works on at most 64 vertices, got {n}"
        )));
    }
    if n == 0 {
        return Ok((0, Coloring::new(Vec::new())));
    }

    let greedy = greedy_coloring(g);
    let lower = greedy_clique(g).len();
    let upper = greedy.num_colors();
    if lower == upper {
        return Ok((upper, greedy.compacted()));
    }

    let order = degree_order(g);
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).fold(0u64, |m, w| m | (1 << w)))
        .collect();
    for q in lower..upper {
        let mut search = KColorSearch {
            adj: &adj,
            order: &order,
            classes: vec![0; q],
            assignment: vec![0; n],
        };
        if search.run(0, 0) {
            let coloring = Coloring::new(search.assignment);
            return Ok((q, coloring));
        }
    }
    Ok((upper, greedy.compacted()))
}

struct KColorSearch<'a> {
    adj: &'a [u64],
    order: &'a [Vertex],
    classes: Vec<u64>,
    assignment: Vec<Color>,
}

impl KColorSearch<'_> {
    fn run(&mut self, pos: usize, used: usize) -> bool {
        let Some(&v) = self.order.get(pos) else {
            return true;
        };
        let open = (used + 1).min(self.classes.len());
        for c in 0..open {
            if self.classes[c] & self.adj[v] != 0 {
                continue;
            }
            self.classes[c] |= 1 << v;
            self.assignment[v] = c as Color;
            if self.run(pos + 1, used.max(c + 1)) {
                return true;
            }
            self.classes[c] &= !(1 << v);
        }
        false
    }
}
