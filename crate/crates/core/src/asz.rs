//! Recursive coloring of biclique-partitioned graphs with certified color bounds.
//!
//! For a partition `H_0..H_{m-1}` the auxiliary digraph has an edge `i -> j`
//! tagged with side `P` of `H_j` when some cross pair of `H_i` lies inside
//! that part. Edge-disjointness makes this digraph oriented and every ordered
//! pair carries at most one tag, so some index has indegree at most
//! `(m-1)/2` and one of its parts is touched by at most a quarter of the other
//! bicliques. Splitting that part off and recursing on both sides gives the
//! bound `F(m) = F(m-1) + F((m-1)/4)`.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::biclique::{Biclique, BicliquePartition, Side};
use crate::error::{Error, Result};
use crate::graph::{Color, Coloring, Vertex};

/// Digraphs with at least this many nodes compute their side tags in parallel.
const PARALLEL_DIGRAPH_THRESHOLD: usize = 128;

/// Which part of `h_j`, if any, contains a cross pair of `h_i`.
pub fn internal_edge_side(h_i: &Biclique, h_j: &Biclique) -> Result<Option<Side>> {
    let meets = |x: &[Vertex], y: &[Vertex]| sorted_intersect(x, y);
    let touches = |p: &[Vertex]| meets(h_i.part_a.members(), p) && meets(h_i.part_b.members(), p);
    side_from_flags(touches(h_j.part_a.members()), touches(h_j.part_b.members()))
}

fn sorted_intersect(x: &[Vertex], y: &[Vertex]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        match x[i].cmp(&y[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

fn side_from_flags(in_a: bool, in_b: bool) -> Result<Option<Side>> {
    match (in_a, in_b) {
        (true, true) => Err(Error::InvalidPartition(
            "a biclique has cross pairs inside both parts of another biclique".into(),
        )),
        (true, false) => Ok(Some(Side::A)),
        (false, true) => Ok(Some(Side::B)),
        (false, false) => Ok(None),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DigraphEdge {
    pub from: usize,
    pub to: usize,
    pub side: Side,
}

/// Oriented digraph on biclique indices with side-tagged edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxiliaryDigraph {
    m: usize,
    edges: Vec<DigraphEdge>,
    incoming_a: Vec<usize>,
    incoming_b: Vec<usize>,
}

impl AuxiliaryDigraph {
    pub fn m(&self) -> usize {
        self.m
    }

    /// Edges sorted by `(from, to)`.
    pub fn edges(&self) -> &[DigraphEdge] {
        &self.edges
    }

    pub fn edge(&self, from: usize, to: usize) -> Option<Side> {
        self.edges
            .binary_search_by(|e| (e.from, e.to).cmp(&(from, to)))
            .ok()
            .map(|k| self.edges[k].side)
    }

    pub fn indegree(&self, j: usize) -> usize {
        self.incoming_a[j] + self.incoming_b[j]
    }

    pub fn indegrees(&self) -> Vec<usize> {
        (0..self.m).map(|j| self.indegree(j)).collect()
    }

    /// Incoming edges of `j` tagged with `side`.
    pub fn incoming(&self, j: usize, side: Side) -> usize {
        match side {
            Side::A => self.incoming_a[j],
            Side::B => self.incoming_b[j],
        }
    }

    pub fn min_indegree(&self) -> Option<usize> {
        (0..self.m).map(|j| self.indegree(j)).min()
    }

    fn from_parts(parts: &[(&FixedBitSet, &FixedBitSet)]) -> Result<Self> {
        let m = parts.len();
        let row = |i: usize| -> Result<Vec<DigraphEdge>> {
            let (a_i, b_i) = parts[i];
            let mut out = Vec::new();
            for (j, &(a_j, b_j)) in parts.iter().enumerate() {
                if i == j {
                    continue;
                }
                let in_a = !a_i.is_disjoint(a_j) && !b_i.is_disjoint(a_j);
                let in_b = !a_i.is_disjoint(b_j) && !b_i.is_disjoint(b_j);
                if let Some(side) = side_from_flags(in_a, in_b).map_err(|_| {
                    Error::InvalidPartition(format!(
                        "biclique {i} has cross pairs inside both parts of biclique {j}"
                    ))
                })? {
                    out.push(DigraphEdge {
                        from: i,
                        to: j,
                        side,
                    });
                }
            }
            Ok(out)
        };
        let rows: Vec<Vec<DigraphEdge>> = if m >= PARALLEL_DIGRAPH_THRESHOLD {
            (0..m).into_par_iter().map(row).collect::<Result<_>>()?
        } else {
            (0..m).map(row).collect::<Result<_>>()?
        };
        let edges: Vec<DigraphEdge> = rows.into_iter().flatten().collect();

        let mut incoming_a = vec![0; m];
        let mut incoming_b = vec![0; m];
        for e in &edges {
            match e.side {
                Side::A => incoming_a[e.to] += 1,
                Side::B => incoming_b[e.to] += 1,
            }
        }
        let d = AuxiliaryDigraph {
            m,
            edges,
            incoming_a,
            incoming_b,
        };
        d.check_invariants()?;
        Ok(d)
    }

    fn check_invariants(&self) -> Result<()> {
        for e in &self.edges {
            if e.from == e.to {
                return Err(Error::Internal(format!("loop at {}", e.from)));
            }
            if self.edge(e.to, e.from).is_some() {
                return Err(Error::InvalidPartition(format!(
                    "bicliques {} and {} each have a cross pair inside a part of the other",
                    e.from, e.to
                )));
            }
        }
        if let Some(min) = self.min_indegree() {
            if min > (self.m - 1) / 2 {
                return Err(Error::Internal(format!(
                    "oriented digraph on {} nodes has minimum indegree {min}",
                    self.m
                )));
            }
        }
        Ok(())
    }
}

pub fn build_auxiliary_digraph(p: &BicliquePartition) -> Result<AuxiliaryDigraph> {
    let n = p.n();
    let bits: Vec<(FixedBitSet, FixedBitSet)> = p
        .bicliques()
        .iter()
        .map(|h| (h.part_a.to_bitset(n), h.part_b.to_bitset(n)))
        .collect();
    let parts: Vec<_> = bits.iter().map(|(a, b)| (a, b)).collect();
    AuxiliaryDigraph::from_parts(&parts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Always pivot on the first biclique.
    Prop2,
    /// Pivot on a minimum-indegree biclique.
    Thm1,
    /// Pivot on whichever part has the fewest contributing bicliques.
    Greedy,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Prop2, Strategy::Thm1, Strategy::Greedy];

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Prop2 => "prop2",
            Strategy::Thm1 => "thm1",
            Strategy::Greedy => "greedy",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prop2" => Ok(Strategy::Prop2),
            "thm1" => Ok(Strategy::Thm1),
            "greedy" => Ok(Strategy::Greedy),
            other => Err(Error::MalformedInput(format!("unknown strategy {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PivotChoice {
    pub pivot: usize,
    pub side: Side,
    pub indegree: usize,
    /// Bicliques with a cross pair inside the chosen part.
    pub contributing: usize,
}

pub fn choose_pivot(d: &AuxiliaryDigraph, strategy: Strategy) -> Result<PivotChoice> {
    if d.m() == 0 {
        return Err(Error::EmptyPartition);
    }
    let lighter_side = |j: usize| {
        if d.incoming(j, Side::B) < d.incoming(j, Side::A) {
            Side::B
        } else {
            Side::A
        }
    };
    let choice = |pivot: usize, side: Side| PivotChoice {
        pivot,
        side,
        indegree: d.indegree(pivot),
        contributing: d.incoming(pivot, side),
    };
    Ok(match strategy {
        Strategy::Prop2 => choice(0, lighter_side(0)),
        Strategy::Thm1 => {
            // min_by_key keeps the first minimum, i.e. the smallest index.
            let j = (0..d.m()).min_by_key(|&j| d.indegree(j)).unwrap_or(0);
            choice(j, lighter_side(j))
        }
        Strategy::Greedy => (0..d.m())
            .flat_map(|j| [choice(j, Side::A), choice(j, Side::B)])
            .min_by_key(|c| c.contributing)
            .expect("m >= 1"),
    })
}

/// One pivot step of [`asz_color`]. Indices refer to the original instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceRow {
    pub depth: usize,
    pub m: usize,
    pub pivot: usize,
    pub side: Side,
    pub indegree: usize,
    pub contributing: usize,
    /// Vertices in the split-off part.
    pub inside_size: usize,
    /// Vertices in the remainder.
    pub outside_size: usize,
    /// Colors used by this subproblem.
    pub colors: usize,
}

/// Pivot steps in depth-first order, the split-off part before the remainder.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct RecursionTrace {
    pub rows: Vec<TraceRow>,
}

struct Part {
    index: usize,
    a: FixedBitSet,
    b: FixedBitSet,
}

struct Subproblem {
    vertices: FixedBitSet,
    parts: Vec<Part>,
    depth: usize,
}

enum TreeNode {
    Leaf {
        vertices: Vec<Vertex>,
    },
    Split {
        inside: usize,
        outside: usize,
        row: usize,
    },
}

/// Colors `p.graph()` by recursive pivoting.
///
/// The split-off part and the remainder get disjoint palettes, so the color
/// count of a subproblem is the sum over its two halves, and a subproblem with
/// no bicliques uses one color. The recursion runs on an explicit stack, so
/// partitions with thousands of bicliques are fine.
pub fn asz_color(p: &BicliquePartition, strategy: Strategy) -> Result<(Coloring, RecursionTrace)> {
    let n = p.n();
    let root = Subproblem {
        vertices: {
            let mut all = FixedBitSet::with_capacity(n);
            all.insert_range(..);
            all
        },
        parts: p
            .bicliques()
            .iter()
            .enumerate()
            .map(|(index, h)| Part {
                index,
                a: h.part_a.to_bitset(n),
                b: h.part_b.to_bitset(n),
            })
            .collect(),
        depth: 0,
    };

    let mut tree: Vec<TreeNode> = Vec::new();
    let mut rows: Vec<TraceRow> = Vec::new();
    let mut stack: Vec<(usize, Subproblem)> = vec![(0, root)];
    tree.push(TreeNode::Leaf {
        vertices: Vec::new(),
    });

    while let Some((id, sub)) = stack.pop() {
        if sub.parts.is_empty() {
            tree[id] = TreeNode::Leaf {
                vertices: sub.vertices.ones().collect(),
            };
            continue;
        }
        let refs: Vec<_> = sub.parts.iter().map(|q| (&q.a, &q.b)).collect();
        let d = AuxiliaryDigraph::from_parts(&refs)?;
        let choice = choose_pivot(&d, strategy)?;
        let pivot = &sub.parts[choice.pivot];
        let split = match choice.side {
            Side::A => pivot.a.clone(),
            Side::B => pivot.b.clone(),
        };
        let mut rest = sub.vertices.clone();
        rest.difference_with(&split);

        let inside = restrict_parts(&sub.parts, &split);
        let outside = restrict_parts(&sub.parts, &rest);
        if inside.len() != choice.contributing || outside.len() >= sub.parts.len() {
            return Err(Error::Internal(format!(
                "pivot {} left {} and {} bicliques from {}",
                pivot.index,
                inside.len(),
                outside.len(),
                sub.parts.len()
            )));
        }

        rows.push(TraceRow {
            depth: sub.depth,
            m: sub.parts.len(),
            pivot: pivot.index,
            side: choice.side,
            indegree: choice.indegree,
            contributing: choice.contributing,
            inside_size: split.count_ones(..),
            outside_size: rest.count_ones(..),
            colors: 0,
        });
        let inside_id = tree.len();
        let outside_id = inside_id + 1;
        tree.push(TreeNode::Leaf {
            vertices: Vec::new(),
        });
        tree.push(TreeNode::Leaf {
            vertices: Vec::new(),
        });
        tree[id] = TreeNode::Split {
            inside: inside_id,
            outside: outside_id,
            row: rows.len() - 1,
        };
        let depth = sub.depth + 1;
        stack.push((
            outside_id,
            Subproblem {
                vertices: rest,
                parts: outside,
                depth,
            },
        ));
        stack.push((
            inside_id,
            Subproblem {
                vertices: split,
                parts: inside,
                depth,
            },
        ));
    }

    // Children always have larger ids than their parent.
    let mut colors = vec![0usize; tree.len()];
    for id in (0..tree.len()).rev() {
        colors[id] = match &tree[id] {
            TreeNode::Leaf { vertices } => usize::from(!vertices.is_empty()),
            TreeNode::Split {
                inside,
                outside,
                row,
            } => {
                let total = colors[*inside] + colors[*outside];
                rows[*row].colors = total;
                total
            }
        };
    }

    let mut assignment: Vec<Color> = vec![0; n];
    let mut offsets = vec![0usize; tree.len()];
    for id in 0..tree.len() {
        match &tree[id] {
            TreeNode::Leaf { vertices } => {
                for &v in vertices {
                    assignment[v] = offsets[id] as Color;
                }
            }
            TreeNode::Split {
                inside, outside, ..
            } => {
                offsets[*outside] = offsets[id];
                offsets[*inside] = offsets[id] + colors[*outside];
            }
        }
    }

    let coloring = Coloring::new(assignment);
    if coloring.num_colors() != colors[0] {
        return Err(Error::Internal(format!(
            "recursion counted {} colors but the coloring uses {}",
            colors[0],
            coloring.num_colors()
        )));
    }
    Ok((coloring, RecursionTrace { rows }))
}

fn restrict_parts(parts: &[Part], keep: &FixedBitSet) -> Vec<Part> {
    parts
        .iter()
        .filter_map(|q| {
            let a = &q.a & keep;
            let b = &q.b & keep;
            (!a.is_clear() && !b.is_clear()).then_some(Part {
                index: q.index,
                a,
                b,
            })
        })
        .collect()
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
    fn side_examples() {
        let p = k3_stars();
        let (h1, h2) = (&p.bicliques()[0], &p.bicliques()[1]);
        assert_eq!(internal_edge_side(h2, h1).unwrap(), Some(Side::B));
        assert_eq!(internal_edge_side(h1, h2).unwrap(), None);
        let far = Biclique::new(vec![5], vec![6]);
        assert_eq!(internal_edge_side(h1, &far).unwrap(), None);
    }

    #[test]
    fn side_detects_non_disjoint_input() {
        // ({0,2},{1,3}) has pair {0,1} inside A and {2,3} inside B of the other.
        let h_i = Biclique::new(vec![0, 2], vec![1, 3]);
        let h_j = Biclique::new(vec![0, 1], vec![2, 3]);
        assert!(matches!(
            internal_edge_side(&h_i, &h_j),
            Err(Error::InvalidPartition(_))
        ));
    }

    #[test]
    fn digraph_examples() {
        let d = build_auxiliary_digraph(&k3_stars()).unwrap();
        assert_eq!(
            d.edges(),
            &[DigraphEdge {
                from: 1,
                to: 0,
                side: Side::B
            }]
        );
        assert_eq!(d.indegrees(), vec![1, 0]);

        let single =
            BicliquePartition::from_bicliques(2, vec![Biclique::new(vec![0], vec![1])]).unwrap();
        let d = build_auxiliary_digraph(&single).unwrap();
        assert_eq!((d.m(), d.edges().len()), (1, 0));
    }

    #[test]
    fn digraph_rejects_two_cycles() {
        // Not edge-disjoint: both bicliques contain {0,3} and {1,2}.
        let g = crate::graph::Graph::complete(4);
        let p = BicliquePartition::new(
            g,
            vec![
                Biclique::new(vec![0, 1], vec![2, 3]),
                Biclique::new(vec![0, 2], vec![1, 3]),
            ],
        )
        .unwrap();
        assert!(matches!(
            build_auxiliary_digraph(&p),
            Err(Error::InvalidPartition(_))
        ));
    }

    #[test]
    fn pivot_examples() {
        let d = build_auxiliary_digraph(&k3_stars()).unwrap();
        let c = choose_pivot(&d, Strategy::Thm1).unwrap();
        assert_eq!(
            c,
            PivotChoice {
                pivot: 1,
                side: Side::A,
                indegree: 0,
                contributing: 0
            }
        );
        let c = choose_pivot(&d, Strategy::Prop2).unwrap();
        assert_eq!((c.pivot, c.side, c.contributing), (0, Side::A, 0));

        let empty = build_auxiliary_digraph(&BicliquePartition::empty(2)).unwrap();
        assert_eq!(
            choose_pivot(&empty, Strategy::Thm1),
            Err(Error::EmptyPartition)
        );
    }

    #[test]
    fn k3_trace() {
        let p = k3_stars();
        let (c, trace) = asz_color(&p, Strategy::Thm1).unwrap();
        assert_eq!(c.num_colors(), 3);
        assert!(is_proper(p.graph(), &c).unwrap());
        let pivots: Vec<_> = trace
            .rows
            .iter()
            .map(|r| (r.pivot, r.side, r.colors))
            .collect();
        assert_eq!(pivots, vec![(1, Side::A, 3), (0, Side::A, 2)]);
    }

    #[test]
    fn base_cases() {
        let (c, trace) = asz_color(&BicliquePartition::empty(4), Strategy::Thm1).unwrap();
        assert_eq!(c.num_colors(), 1);
        assert!(trace.rows.is_empty());
        let (c, _) = asz_color(&BicliquePartition::empty(0), Strategy::Thm1).unwrap();
        assert_eq!(c.num_colors(), 0);

        let star =
            BicliquePartition::from_bicliques(3, vec![Biclique::new(vec![0], vec![1, 2])]).unwrap();
        let (c, trace) = asz_color(&star, Strategy::Thm1).unwrap();
        assert_eq!(c.num_colors(), 2);
        assert_eq!(trace.rows.len(), 1);
    }

    #[test]
    fn strategy_names_round_trip() {
        for s in Strategy::ALL {
            assert_eq!(s.as_str().parse::<Strategy>().unwrap(), s);
        }
        assert!("bitvector".parse::<Strategy>().is_err());
    }
}
