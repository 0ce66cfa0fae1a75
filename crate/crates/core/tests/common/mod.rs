//! Test-only oracles that share no code path with the library's solvers.
#![allow(dead_code)]

use asz::Graph;
use nalgebra::DMatrix;

/// Chromatic number by trying every assignment of `q` colors, smallest `q` first.
pub fn brute_chi(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    for q in 1..=n {
        let mut colors = vec![0usize; n];
        loop {
            if edges.iter().all(|&(u, v)| colors[u] != colors[v]) {
                return q;
            }
            // Odometer increment.
            let mut i = 0;
            while i < n && colors[i] == q - 1 {
                colors[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            colors[i] += 1;
        }
    }
    n
}

/// `max(#positive, #negative)` adjacency eigenvalues: a lower bound on the
/// biclique partition number (each biclique adds a rank-2 matrix with one
/// positive and one negative eigenvalue).
pub fn inertia_lower_bound(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let adj = DMatrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 });
    let eig = adj.symmetric_eigen();
    let pos = eig.eigenvalues.iter().filter(|&&x| x > 1e-9).count();
    let neg = eig.eigenvalues.iter().filter(|&&x| x < -1e-9).count();
    pos.max(neg)
}

/// Every biclique `(A, B)` of `g` as edge masks over the sorted edge list,
/// each unordered `{A, B}` once.
fn all_biclique_masks(g: &Graph) -> Vec<u64> {
    let n = g.n();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let index = |u: usize, v: usize| edges.iter().position(|&e| e == (u.min(v), u.max(v)));
    let mut masks = Vec::new();
    // Assign each vertex to A (1), B (2) or neither (0).
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let mut a = Vec::new();
        let mut b = Vec::new();
        let mut c = code;
        for v in 0..n {
            match c % 3 {
                1 => a.push(v),
                2 => b.push(v),
                _ => {}
            }
            c /= 3;
        }
        if a.is_empty() || b.is_empty() || a[0] > b[0] {
            continue;
        }
        let mut mask = 0u64;
        let mut ok = true;
        for &x in &a {
            for &y in &b {
                match index(x, y) {
                    Some(i) => mask |= 1 << i,
                    None => ok = false,
                }
            }
        }
        if ok {
            masks.push(mask);
        }
    }
    masks.sort_unstable();
    masks.dedup();
    masks
}

/// Biclique partition number by trying every set of `t` pairwise disjoint
/// bicliques, `t = 0, 1, ...`. Only usable on very small graphs.
pub fn brute_bp(g: &Graph) -> usize {
    let m = g.edge_count();
    let full: u64 = if m == 0 { 0 } else { (1u64 << m) - 1 };
    let masks = all_biclique_masks(g);
    fn search(masks: &[u64], start: usize, left: usize, covered: u64, full: u64) -> bool {
        if left == 0 {
            return covered == full;
        }
        (start..masks.len()).any(|i| {
            masks[i] & covered == 0 && search(masks, i + 1, left - 1, covered | masks[i], full)
        })
    }
    (0..=m)
        .find(|&t| search(&masks, 0, t, 0, full))
        .expect("single edges always work")
}

/// Graph on `n` vertices from an edge mask over the lexicographic pair order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::new(n, edges).unwrap()
}
