//! Exhaustive check of `chi(G) <= bp(G) + 1` over all labeled small graphs.
//!
//! A graph on `n` vertices is identified by its edge mask: bit `i` is the
//! `i`-th pair of `0..n` in lexicographic order (see [`PairIndex`]). Graph
//! indices run over `0..2^(n(n-1)/2)` and are processed in fixed-size chunks;
//! chunks are independent and merge deterministically, so the report does not
//! depend on scheduling.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bp::{BpSolver, PairIndex};
use crate::error::{Error, Result};
use crate::graph::chromatic_number_exact;
use crate::limits::OracleLimits;

/// Largest accepted `n_max`.
pub const SWEEP_MAX_VERTICES: usize = 7;

const CHUNK: u64 = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GraphRecord {
    pub n: usize,
    pub mask: u64,
    pub chi: usize,
    pub bp: usize,
}

impl GraphRecord {
    pub fn edges(&self) -> Vec<(usize, usize)> {
        PairIndex::new(self.n).graph_of(self.mask).edges().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelSummary {
    pub n: usize,
    pub graphs: u64,
    pub max_gap: i64,
    pub extremal: u64,
    pub violations: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub n_max: usize,
    pub graphs_checked: u64,
    /// Largest `chi - bp` seen.
    pub max_gap: i64,
    pub levels: Vec<LevelSummary>,
    /// Graphs with `chi > bp + 1`.
    pub violations: Vec<GraphRecord>,
    /// Graphs with `chi = bp + 1`, sorted by `(n, mask)`.
    pub extremal_witnesses: Vec<GraphRecord>,
}

impl SweepReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
struct ChunkResult {
    graphs: u64,
    max_gap: Option<i64>,
    violations: Vec<GraphRecord>,
    extremal: Vec<GraphRecord>,
}

impl ChunkResult {
    fn merge(&mut self, other: ChunkResult) {
        self.graphs += other.graphs;
        self.max_gap = self.max_gap.max(other.max_gap);
        self.violations.extend(other.violations);
        self.extremal.extend(other.extremal);
    }
}

fn run_chunk(n: usize, start: u64, end: u64, limits: &OracleLimits) -> Result<ChunkResult> {
    let mut solver = BpSolver::new(n);
    let mut out = ChunkResult::default();
    for mask in start..end {
        let g = solver.pairs().graph_of(mask);
        let (chi, _) = chromatic_number_exact(&g, limits)?;
        let bp = solver.bp_of_mask(mask);
        let gap = chi as i64 - bp as i64;
        let record = GraphRecord { n, mask, chi, bp };
        out.graphs += 1;
        out.max_gap = out.max_gap.max(Some(gap));
        if gap > 1 {
            out.violations.push(record);
        } else if gap == 1 {
            out.extremal.push(record);
        }
    }
    Ok(out)
}

/// Progress persisted between chunk batches.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct Checkpoint {
    n_max: usize,
    /// Next `(n, graph index)` to process.
    next_n: usize,
    next_index: u64,
    done: Vec<(usize, ChunkResult)>,
}

/// Configures and runs a sweep.
#[derive(Debug, Clone)]
pub struct Sweep {
    n_max: usize,
    jobs: Option<usize>,
    progress: Option<PathBuf>,
}

impl Sweep {
    pub fn new(n_max: usize) -> Self {
        Sweep {
            n_max,
            jobs: None,
            progress: None,
        }
    }

    /// Worker threads; defaults to the rayon global pool.
    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = Some(jobs.max(1));
        self
    }

    /// Checkpoint file, read on start (if present) and rewritten after every batch.
    pub fn progress_file(mut self, path: impl AsRef<Path>) -> Self {
        self.progress = Some(path.as_ref().to_path_buf());
        self
    }

    pub fn run(&self) -> Result<SweepReport> {
        if self.n_max > SWEEP_MAX_VERTICES {
            return Err(Error::OracleLimit(format!(
                "sweep accepts n_max <= {SWEEP_MAX_VERTICES}, got {}",
                self.n_max
            )));
        }
        match self.jobs {
            Some(jobs) => rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::Internal(format!("thread pool: {e}")))?
                .install(|| self.run_inner()),
            None => self.run_inner(),
        }
    }

    fn run_inner(&self) -> Result<SweepReport> {
        use rayon::prelude::*;

        let limits = OracleLimits {
            chi_max_vertices: SWEEP_MAX_VERTICES,
            ..OracleLimits::default()
        };
        let mut state = self.load_checkpoint()?.unwrap_or(Checkpoint {
            n_max: self.n_max,
            next_n: 1,
            next_index: 0,
            done: Vec::new(),
        });
        let batch = CHUNK * 4 * rayon::current_num_threads() as u64;

        while state.next_n <= self.n_max {
            let n = state.next_n;
            let total = 1u64 << (n * (n - 1) / 2);
            let start = state.next_index;
            let end = (start + batch).min(total);
            let starts: Vec<u64> = (start..end).step_by(CHUNK as usize).collect();
            let parts = starts
                .par_iter()
                .map(|&s| run_chunk(n, s, (s + CHUNK).min(end), &limits))
                .collect::<Result<Vec<_>>>()?;
            let mut merged = ChunkResult::default();
            for part in parts {
                merged.merge(part);
            }
            match state.done.last_mut() {
                Some((level, acc)) if *level == n => acc.merge(merged),
                _ => state.done.push((n, merged)),
            }
            if end == total {
                state.next_n += 1;
                state.next_index = 0;
            } else {
                state.next_index = end;
            }
            self.save_checkpoint(&state)?;
        }
        Ok(Self::report(self.n_max, state.done))
    }

    fn report(n_max: usize, done: Vec<(usize, ChunkResult)>) -> SweepReport {
        let mut levels = Vec::new();
        let mut violations = Vec::new();
        let mut extremal_witnesses = Vec::new();
        for (n, r) in done {
            levels.push(LevelSummary {
                n,
                graphs: r.graphs,
                max_gap: r.max_gap.unwrap_or(i64::MIN),
                extremal: r.extremal.len() as u64,
                violations: r.violations.len() as u64,
            });
            violations.extend(r.violations);
            extremal_witnesses.extend(r.extremal);
        }
        violations.sort();
        extremal_witnesses.sort();
        SweepReport {
            n_max,
            graphs_checked: levels.iter().map(|l| l.graphs).sum(),
            max_gap: levels.iter().map(|l| l.max_gap).max().unwrap_or(0),
            levels,
            violations,
            extremal_witnesses,
        }
    }

    fn load_checkpoint(&self) -> Result<Option<Checkpoint>> {
        let Some(path) = &self.progress else {
            return Ok(None);
        };
        if !path.exists() {
            return Ok(None);
        }
        let text =
            fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let state: Checkpoint = serde_json::from_str(&text)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        if state.n_max != self.n_max {
            return Err(Error::MalformedInput(format!(
                "{} belongs to a sweep with n_max = {}",
                path.display(),
                state.n_max
            )));
        }
        Ok(Some(state))
    }

    fn save_checkpoint(&self, state: &Checkpoint) -> Result<()> {
        let Some(path) = &self.progress else {
            return Ok(());
        };
        let tmp = path.with_extension("tmp");
        let text = serde_json::to_string(state).expect("checkpoint serializes");
        fs::write(&tmp, text)
            .and_then(|_| fs::rename(&tmp, path))
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

/// Sweeps every labeled graph on `1..=n_max` vertices.
pub fn conjecture_sweep(n_max: usize) -> Result<SweepReport> {
    Sweep::new(n_max).run()
}
