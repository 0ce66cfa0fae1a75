//! Biclique partitions: the instance data model, validation, restriction to
//! induced subgraphs and the two product-style colorings.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, Color, Coloring, Graph, Vertex, VertexSubset};

/// Widest partition [`bitvector_coloring`] accepts.
pub const BITVECTOR_MAX_BICLIQUES: usize = 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

/// Complete bipartite graph between `part_a` and `part_b`. The order of the
/// two parts is significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Biclique {
    pub part_a: VertexSubset,
    pub part_b: VertexSubset,
}

impl Biclique {
    pub fn new(part_a: Vec<Vertex>, part_b: Vec<Vertex>) -> Self {
        Biclique {
            part_a: VertexSubset::new(part_a),
            part_b: VertexSubset::new(part_b),
        }
    }

    pub fn part(&self, side: Side) -> &VertexSubset {
        match side {
            Side::A => &self.part_a,
            Side::B => &self.part_b,
        }
    }

    /// Cross pairs as `(a, b)` with `a` from part A.
    pub fn cross_pairs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.part_a
            .members()
            .iter()
            .flat_map(move |&a| self.part_b.members().iter().map(move |&b| (a, b)))
    }

    pub fn edge_count(&self) -> usize {
        self.part_a.len() * self.part_b.len()
    }

    fn max_vertex(&self) -> Option<Vertex> {
        let a = self.part_a.members().last().copied();
        let b = self.part_b.members().last().copied();
        a.max(b)
    }
}

fn ordered(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A host graph together with bicliques that are meant to partition its edges.
///
/// Construction only checks vertex ranges; the partition invariants are
/// checked by [`BicliquePartition::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BicliquePartition {
    graph: Graph,
    bicliques: Vec<Biclique>,
}

impl BicliquePartition {
    pub fn new(graph: Graph, bicliques: Vec<Biclique>) -> Result<Self> {
        let n = graph.n();
        for (i, h) in bicliques.iter().enumerate() {
            if let Some(v) = h.max_vertex().filter(|&v| v >= n) {
                return Err(Error::MalformedInput(format!(
                    "biclique {i} uses vertex {v} outside 0..{n}"
                )));
            }
        }
        Ok(BicliquePartition { graph, bicliques })
    }

    /// Canonical constructor: the graph is derived from the bicliques.
    pub fn from_bicliques(n: usize, bicliques: Vec<Biclique>) -> Result<Self> {
        let graph = union_graph(&bicliques, n)?;
        Ok(BicliquePartition { graph, bicliques })
    }

    pub fn empty(n: usize) -> Self {
        BicliquePartition {
            graph: Graph::empty(n),
            bicliques: Vec::new(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn bicliques(&self) -> &[Biclique] {
        &self.bicliques
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Number of bicliques.
    pub fn m(&self) -> usize {
        self.bicliques.len()
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    OverlappingParts,
    EmptyPart,
    EdgeCollision,
    UncoveredEdge,
    NonEdgeCovered,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::OverlappingParts => "overlapping-parts",
            ViolationKind::EmptyPart => "empty-part",
            ViolationKind::EdgeCollision => "edge-collision",
            ViolationKind::UncoveredEdge => "uncovered-edge",
            ViolationKind::NonEdgeCovered => "non-edge-covered",
        }
    }
}

/// One broken partition invariant with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    OverlappingParts {
        biclique: usize,
        vertex: Vertex,
    },
    EmptyPart {
        biclique: usize,
        side: Side,
    },
    EdgeCollision {
        u: Vertex,
        v: Vertex,
        first: usize,
        second: usize,
    },
    UncoveredEdge {
        u: Vertex,
        v: Vertex,
    },
    NonEdgeCovered {
        u: Vertex,
        v: Vertex,
        biclique: usize,
    },
}

impl Violation {
    pub fn kind(&self) -> ViolationKind {
        match self {
            Violation::OverlappingParts { .. } => ViolationKind::OverlappingParts,
            Violation::EmptyPart { .. } => ViolationKind::EmptyPart,
            Violation::EdgeCollision { .. } => ViolationKind::EdgeCollision,
            Violation::UncoveredEdge { .. } => ViolationKind::UncoveredEdge,
            Violation::NonEdgeCovered { .. } => ViolationKind::NonEdgeCovered,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.kind().as_str())?;
        match *self {
            Violation::OverlappingParts { biclique, vertex } => {
                write!(f, "biclique {biclique} has vertex {vertex} in both parts")
            }
            Violation::EmptyPart { biclique, side } => {
                write!(f, "biclique {biclique} has an empty part {side}")
            }
            Violation::EdgeCollision {
                u,
                v,
                first,
                second,
            } => {
                write!(
                    f,
                    "pair {{{u},{v}}} is covered by bicliques {first} and {second}"
                )
            }
            Violation::UncoveredEdge { u, v } => {
                write!(f, "edge {{{u},{v}}} is not covered by any biclique")
            }
            Violation::NonEdgeCovered { u, v, biclique } => {
                write!(
                    f,
                    "biclique {biclique} covers {{{u},{v}}}, which is not an edge"
                )
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate(p: &BicliquePartition) -> ValidationReport {
    let mut violations = Vec::new();
    let mut owner: BTreeMap<(Vertex, Vertex), usize> = BTreeMap::new();

    for (i, h) in p.bicliques.iter().enumerate() {
        for side in [Side::A, Side::B] {
            if h.part(side).is_empty() {
                violations.push(Violation::EmptyPart { biclique: i, side });
            }
        }
        let b_bits = h.part_b.to_bitset(p.n());
        for &v in h.part_a.members() {
            if b_bits.contains(v) {
                violations.push(Violation::OverlappingParts {
                    biclique: i,
                    vertex: v,
                });
            }
        }
        for (a, b) in h.cross_pairs() {
            if a == b {
                continue;
            }
            let (u, v) = ordered(a, b);
            if !p.graph.has_edge(u, v) {
                violations.push(Violation::NonEdgeCovered { u, v, biclique: i });
            }
            if let Some(&first) = owner.get(&(u, v)) {
                violations.push(Violation::EdgeCollision {
                    u,
                    v,
                    first,
                    second: i,
                });
            } else {
                owner.insert((u, v), i);
            }
        }
    }
    for (u, v) in p.graph.edges() {
        if !owner.contains_key(&(u, v)) {
            violations.push(Violation::UncoveredEdge { u, v });
        }
    }
    ValidationReport { violations }
}

/// The graph whose edges are the cross pairs of `bicliques`, failing if any
/// pair is produced twice.
pub fn union_graph(bicliques: &[Biclique], n: usize) -> Result<Graph> {
    let mut graph = Graph::empty(n);
    let mut owner: BTreeMap<(Vertex, Vertex), usize> = BTreeMap::new();
    for (i, h) in bicliques.iter().enumerate() {
        if let Some(v) = h.max_vertex().filter(|&v| v >= n) {
            return Err(Error::MalformedInput(format!(
                "biclique {i} uses vertex {v} outside 0..{n}"
            )));
        }
        for (a, b) in h.cross_pairs() {
            if a == b {
                return Err(Error::InvalidPartition(format!(
                    "biclique {i} has vertex {a} in both parts"
                )));
            }
            let (u, v) = ordered(a, b);
            if let Some(&first) = owner.get(&(u, v)) {
                return Err(Error::EdgeCollision {
                    u,
                    v,
                    first,
                    second: i,
                });
            }
            owner.insert((u, v), i);
            graph.insert_unchecked(u, v);
        }
    }
    Ok(graph)
}

/// A partition restricted to an induced subgraph.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub partition: BicliquePartition,
    /// Vertex `i` of the restricted instance is `new_to_old[i]` in the original.
    pub new_to_old: Vec<Vertex>,
    /// Original indices of the bicliques that survived.
    pub kept: Vec<usize>,
}

/// Intersects every biclique with `s` and drops those that lose a part.
pub fn restrict(p: &BicliquePartition, s: &VertexSubset) -> Result<Restriction> {
    let sub = induced_subgraph(&p.graph, s)?;
    let relabel = |part: &VertexSubset| -> Vec<Vertex> {
        part.members()
            .iter()
            .filter_map(|&v| sub.old_to_new[v])
            .collect()
    };
    let mut bicliques = Vec::new();
    let mut kept = Vec::new();
    for (i, h) in p.bicliques.iter().enumerate() {
        let a = relabel(&h.part_a);
        let b = relabel(&h.part_b);
        if !a.is_empty() && !b.is_empty() {
            bicliques.push(Biclique::new(a, b));
            kept.push(i);
        }
    }
    Ok(Restriction {
        partition: BicliquePartition {
            graph: sub.graph,
            bicliques,
        },
        new_to_old: sub.new_to_old,
        kept,
    })
}

/// Colors `v` by the bit vector of bicliques whose part B contains `v`.
///
/// Every edge lies in exactly one biclique with one endpoint on each side,
/// so the two endpoints differ in that biclique's bit.
pub fn bitvector_coloring(p: &BicliquePartition) -> Result<Coloring> {
    if p.m() > BITVECTOR_MAX_BICLIQUES {
        return Err(Error::Capacity(format!(
            "bit-vector coloring supports at most {BITVECTOR_MAX_BICLIQUES} bicliques, got {}",
            p.m()
        )));
    }
    let mut assignment: Vec<Color> = vec![0; p.n()];
    for (i, h) in p.bicliques.iter().enumerate() {
        for &v in h.part_b.members() {
            assignment[v] |= 1 << i;
        }
    }
    Ok(Coloring::new(assignment))
}

/// Colors `v` by the pair `(c1(v), c2(v))`, flattened to an integer.
pub fn product_coloring(g: &Graph, c1: &Coloring, c2: &Coloring) -> Result<Coloring> {
    if c1.len() != g.n() || c2.len() != g.n() {
        return Err(Error::MalformedInput(format!(
            "colorings cover {} and {} vertices but the graph has {}",
            c1.len(),
            c2.len(),
            g.n()
        )));
    }
    if let Some((u, v)) = g
        .edges()
        .find(|&(u, v)| c1.color(u) == c1.color(v) && c2.color(u) == c2.color(v))
    {
        return Err(Error::PreconditionViolation(format!(
            "edge {{{u},{v}}} is monochromatic under both colorings"
        )));
    }
    let c1 = c1.compacted();
    let c2 = c2.compacted();
    let width = c2.num_colors().max(1) as Color;
    Ok(Coloring::new(
        (0..g.n())
            .map(|v| c1.color(v) * width + c2.color(v))
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_proper;

    fn k3_stars() -> BicliquePartition {
        BicliquePartition::from_bicliques(
            3,
            vec![
                Biclique::new(vec![0], vec![1, 2]),
                Biclique::new(vec![1], vec![2]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(k3_stars().validate().ok());

        let edge = Graph::new(2, [(0, 1)]).unwrap();
        let p = BicliquePartition::new(
            edge,
            vec![
                Biclique::new(vec![0], vec![1]),
                Biclique::new(vec![1], vec![0]),
            ],
        )
        .unwrap();
        assert_eq!(
            p.validate().violations,
            vec![Violation::EdgeCollision {
                u: 0,
                v: 1,
                first: 0,
                second: 1
            }]
        );

        let g = Graph::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let p = BicliquePartition::new(g, vec![Biclique::new(vec![0, 1], vec![1, 2])]).unwrap();
        let kinds: Vec<_> = p
            .validate()
            .violations
            .iter()
            .map(Violation::kind)
            .collect();
        assert!(kinds.contains(&ViolationKind::OverlappingParts));
    }

    #[test]
    fn validate_reports_coverage_problems() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let p = BicliquePartition::new(
            g,
            vec![
                Biclique::new(vec![0], vec![1]),
                Biclique::new(vec![0], vec![2]),
                Biclique::new(vec![2], vec![]),
            ],
        )
        .unwrap();
        let v = p.validate().violations;
        assert!(v.contains(&Violation::NonEdgeCovered {
            u: 0,
            v: 2,
            biclique: 1
        }));
        assert!(v.contains(&Violation::UncoveredEdge { u: 1, v: 2 }));
        assert!(v.contains(&Violation::EmptyPart {
            biclique: 2,
            side: Side::B
        }));
    }

    #[test]
    fn union_examples() {
        let g = union_graph(&[Biclique::new(vec![0], vec![1, 2])], 3).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2)]);
        assert_eq!(union_graph(&[], 4).unwrap(), Graph::empty(4));
        let err = union_graph(
            &[
                Biclique::new(vec![0], vec![1]),
                Biclique::new(vec![0], vec![1]),
            ],
            2,
        );
        assert_eq!(
            err,
            Err(Error::EdgeCollision {
                u: 0,
                v: 1,
                first: 0,
                second: 1
            })
        );
        assert!(matches!(
            union_graph(&[Biclique::new(vec![0], vec![3])], 3),
            Err(Error::MalformedInput(_))
        ));
    }

    #[test]
    fn restrict_examples() {
        let p = k3_stars();
        let r = restrict(&p, &VertexSubset::new(vec![0, 2])).unwrap();
        assert_eq!(r.partition.bicliques(), &[Biclique::new(vec![0], vec![1])]);
        assert_eq!(
            r.partition.graph().edges().collect::<Vec<_>>(),
            vec![(0, 1)]
        );
        assert_eq!((r.new_to_old, r.kept), (vec![0, 2], vec![0]));
        assert!(r.partition.validate().ok());

        let r = restrict(&p, &VertexSubset::all(3)).unwrap();
        assert_eq!(r.partition, p);

        let r = restrict(&p, &VertexSubset::new(vec![1])).unwrap();
        assert_eq!(r.partition.m(), 0);
        assert_eq!(r.partition.graph().edge_count(), 0);
    }

    #[test]
    fn bitvector_examples() {
        let c = bitvector_coloring(&k3_stars()).unwrap();
        assert_eq!(c.assignment(), &[0b00, 0b01, 0b11]);
        assert_eq!(c.num_colors(), 3);
        assert!(is_proper(k3_stars().graph(), &c).unwrap());

        let c = bitvector_coloring(&BicliquePartition::empty(3)).unwrap();
        assert_eq!(c.assignment(), &[0, 0, 0]);

        let single =
            BicliquePartition::from_bicliques(2, vec![Biclique::new(vec![0], vec![1])]).unwrap();
        assert_eq!(bitvector_coloring(&single).unwrap().assignment(), &[0, 1]);
    }

    #[test]
    fn bitvector_capacity() {
        let bicliques = (0..63)
            .map(|i| Biclique::new(vec![2 * i], vec![2 * i + 1]))
            .collect();
        let p = BicliquePartition::from_bicliques(126, bicliques).unwrap();
        assert!(matches!(bitvector_coloring(&p), Err(Error::Capacity(_))));
    }

    #[test]
    fn product_examples() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let c1 = Coloring::new(vec![0, 1, 1]);
        let c2 = Coloring::new(vec![0, 0, 1]);
        let c = product_coloring(&g, &c1, &c2).unwrap();
        assert!(is_proper(&g, &c).unwrap());
        assert!(c.num_colors() <= 4);

        let proper = Coloring::new(vec![0, 1, 0]);
        let c = product_coloring(&g, &proper, &Coloring::constant(3)).unwrap();
        assert!(is_proper(&g, &c).unwrap());
        assert_eq!(c.num_colors(), 2);

        let constant = Coloring::constant(3);
        assert!(matches!(
            product_coloring(&g, &constant, &constant),
            Err(Error::PreconditionViolation(_))
        ));
    }
}
