//! Instance generators.
//!
//! Random instances are driven by SplitMix64 (`rand_xoshiro::SplitMix64`)
//! seeded directly with the user seed. Integers below a bound are drawn with
//! the multiply-high reduction `(x * bound) >> 64` on one 64-bit output, so the
//! stream of instances is reproducible from the seed alone on any platform.

use fixedbitset::FixedBitSet;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::biclique::{Biclique, BicliquePartition};
use crate::graph::Vertex;

/// Attempts per biclique before the sampled subset size shrinks.
pub const RETRIES_PER_BICLIQUE: usize = 100;

/// Uniform integer in `0..bound` (`bound > 0`).
pub fn below(rng: &mut SplitMix64, bound: u64) -> u64 {
    ((u128::from(rng.next_u64()) * u128::from(bound)) >> 64) as u64
}

/// `K_n` as the stars `({i}, {i+1, ..., n-1})` for `i = 0..n-2`.
pub fn gen_star_partition(n: usize) -> BicliquePartition {
    let stars = (0..n.saturating_sub(1))
        .map(|i| Biclique::new(vec![i], (i + 1..n).collect()))
        .collect();
    BicliquePartition::from_bicliques(n, stars).expect("stars partition K_n")
}

/// `m` disjoint edges `({2i}, {2i+1})` on `2m` vertices.
pub fn gen_matching(m: usize) -> BicliquePartition {
    let edges = (0..m)
        .map(|i| Biclique::new(vec![2 * i], vec![2 * i + 1]))
        .collect();
    BicliquePartition::from_bicliques(2 * m, edges).expect("matching is edge-disjoint")
}

/// Up to `m` random edge-disjoint bicliques on `n` vertices.
///
/// Each biclique samples a vertex subset of size `2 + below(cap - 1)` by a
/// partial Fisher-Yates shuffle, assigns each sampled vertex to part A or B by
/// one draw of `below(2)` (if one part stays empty the first sampled vertex
/// switches sides), and is rejected if it reuses an edge. After
/// [`RETRIES_PER_BICLIQUE`] rejections `cap` (initially `n`) drops by one; the
/// generator stops early once `cap < 2`.
pub fn gen_random_partition(n: usize, m: usize, seed: u64) -> BicliquePartition {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut used = vec![FixedBitSet::with_capacity(n); n];
    let mut bicliques = Vec::new();
    let mut cap = n;

    while bicliques.len() < m && cap >= 2 {
        let mut placed = false;
        for _ in 0..RETRIES_PER_BICLIQUE {
            let size = 2 + below(&mut rng, (cap - 1) as u64) as usize;
            let mut pool: Vec<Vertex> = (0..n).collect();
            for i in 0..size {
                let j = i + below(&mut rng, (n - i) as u64) as usize;
                pool.swap(i, j);
            }
            let sample = &pool[..size];
            let mut in_b: Vec<bool> = sample.iter().map(|_| below(&mut rng, 2) == 1).collect();
            if in_b.iter().all(|&b| b) || in_b.iter().all(|&b| !b) {
                in_b[0] = !in_b[0];
            }
            let (a, b): (Vec<_>, Vec<_>) = sample.iter().zip(&in_b).partition(|(_, &side)| !side);
            let a: Vec<Vertex> = a.into_iter().map(|(&v, _)| v).collect();
            let b: Vec<Vertex> = b.into_iter().map(|(&v, _)| v).collect();
            if a.iter().any(|&x| b.iter().any(|&y| used[x].contains(y))) {
                continue;
            }
            for &x in &a {
                for &y in &b {
                    used[x].insert(y);
                    used[y].insert(x);
                }
            }
            bicliques.push(Biclique::new(a, b));
            placed = true;
            break;
        }
        if !placed {
            cap -= 1;
        }
    }
    BicliquePartition::from_bicliques(n, bicliques)
        .expect("rejection sampling keeps bicliques disjoint")
}

/// Places `p2` after `p1`, shifting its vertices by `p1.n()`.
pub fn disjoint_union(p1: &BicliquePartition, p2: &BicliquePartition) -> BicliquePartition {
    let shift = p1.n();
    let shifted = p2.bicliques().iter().map(|h| {
        Biclique::new(
            h.part_a.members().iter().map(|v| v + shift).collect(),
            h.part_b.members().iter().map(|v| v + shift).collect(),
        )
    });
    let bicliques = p1.bicliques().iter().cloned().chain(shifted).collect();
    BicliquePartition::from_bicliques(p1.n() + p2.n(), bicliques)
        .expect("disjoint union of valid partitions")
}
