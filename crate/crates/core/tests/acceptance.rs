//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use asz::asz::DigraphEdge;
use asz::bounds::{compare_mubayi_vishwanathan, exponent_ratio, ChainCheck};
use asz::{
    asz_color, bitvector_coloring, bp_exact, build_auxiliary_digraph, build_table,
    chromatic_number_exact, conjecture_sweep, gen_random_partition, gen_star_partition, is_proper,
    verify_bound_chain, BicliquePartition, BoundKind, Graph, OracleLimits, Side, Strategy,
};
use num_bigint::BigUint;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table_values(kind: BoundKind, max_k: usize) -> Vec<BigUint> {
    build_table(kind, max_k).values().to_vec()
}

fn c1_bound_tables() -> Outcome {
    let rec4 = table_values(BoundKind::Rec4, 5);
    let rec2 = table_values(BoundKind::Rec2, 3);
    let want4: Vec<BigUint> = [1u32, 2, 3, 4, 5, 7].map(BigUint::from).into();
    let want2: Vec<BigUint> = [1u32, 2, 3, 5].map(BigUint::from).into();
    ensure(rec4 == want4, || format!("rec4[0..=5] = {rec4:?}"))?;
    ensure(rec2 == want2, || format!("rec2[0..=3] = {rec2:?}"))?;
    Ok("rec4 = 1 2 3 4 5 7, rec2 = 1 2 3 5".into())
}

fn c2_closed_form() -> Outcome {
    let max_k = 1u64 << 16;
    let report = verify_bound_chain(max_k).map_err(|e| e.to_string())?;
    let failures =
        report.failures_of(ChainCheck::ClosedForm) + report.failures_of(ChainCheck::BaseCase);
    ensure(report.rows.len() as u64 == max_k, || {
        format!("{} rows", report.rows.len())
    })?;
    ensure(failures == 0, || format!("{failures} closed-form failures"))?;
    let tightest = report
        .rows
        .iter()
        .map(|r| r.closed_form - r.log2_rec4)
        .fold(f64::INFINITY, f64::min);
    Ok(format!(
        "1 <= k <= {max_k}, 0 failures, smallest slack {tightest:.6}"
    ))
}

fn c3_induction_chain() -> Outcome {
    let max_k = 1u64 << 16;
    let report = verify_bound_chain(max_k).map_err(|e| e.to_string())?;
    let three_quarters = report.failures_of(ChainCheck::ThreeQuarters);
    let linear = report.failures_of(ChainCheck::Linear);
    let order = report.failures_of(ChainCheck::TableOrder);
    ensure(three_quarters + linear + order == 0, || {
        format!("failures: three-quarters {three_quarters}, linear {linear}, table order {order}")
    })?;
    Ok(format!("4 <= k <= {max_k}, 0 failures"))
}

fn c4_exponent_improvement() -> Outcome {
    let k_hi = 1u64 << 20;
    let cmp = compare_mubayi_vishwanathan(10, k_hi).map_err(|e| e.to_string())?;
    ensure(cmp.not_improved.is_empty(), || {
        format!(
            "not improved at {} values, first {:?}",
            cmp.not_improved.len(),
            cmp.not_improved.first()
        )
    })?;
    ensure(cmp.tolerance <= 1e-6, || {
        format!("tolerance {}", cmp.tolerance)
    })?;
    let ratio = exponent_ratio(k_hi).map_err(|e| e.to_string())?;
    ensure(ratio < 0.6, || format!("ratio at 2^20 is {ratio}"))?;
    // The improvement starts exactly at k = 10.
    let below = compare_mubayi_vishwanathan(1, 9).map_err(|e| e.to_string())?;
    ensure(below.not_improved.contains(&9), || {
        "k = 9 unexpectedly improved".into()
    })?;
    Ok(format!(
        "10 <= k <= 2^20 improved, ratio at 2^20 = {ratio:.6}"
    ))
}

/// `(n, m, seed)` for fuzz instance `i`.
fn fuzz_params(i: u64, max_n: u64, max_m: u64) -> (usize, usize, u64) {
    let n = 2 + (i.wrapping_mul(7919) % (max_n - 1));
    let m = i.wrapping_mul(104_729) % (max_m + 1);
    (n as usize, m as usize, 0x5eed_0000 + i)
}

fn check_instance(p: &BicliquePartition) -> Result<(), String> {
    let m = p.m();
    let rec4 = build_table(BoundKind::Rec4, m);
    let rec2 = build_table(BoundKind::Rec2, m);
    ensure(p.validate().ok(), || {
        "generator produced an invalid partition".into()
    })?;
    for strategy in Strategy::ALL {
        let (c, _) = asz_color(p, strategy).map_err(|e| e.to_string())?;
        ensure(is_proper(p.graph(), &c).unwrap(), || {
            format!("{strategy} coloring improper")
        })?;
        let bound = match strategy {
            Strategy::Prop2 => rec2.get(m),
            Strategy::Thm1 | Strategy::Greedy => rec4.get(m),
        };
        ensure(BigUint::from(c.num_colors()) <= *bound, || {
            format!("{strategy} used {} colors, bound {bound}", c.num_colors())
        })?;
    }
    let c = bitvector_coloring(p).map_err(|e| e.to_string())?;
    ensure(is_proper(p.graph(), &c).unwrap(), || {
        "bitvector coloring improper".into()
    })?;
    ensure((c.num_colors() as u64) <= 1 << m, || {
        "bitvector above 2^m".into()
    })?;
    let d = build_auxiliary_digraph(p).map_err(|e| e.to_string())?;
    for e in d.edges() {
        ensure(e.from != e.to && d.edge(e.to, e.from).is_none(), || {
            format!("D not oriented at {} -> {}", e.from, e.to)
        })?;
    }
    if m > 0 {
        let min = d.min_indegree().unwrap();
        ensure(min <= (m - 1) / 2, || {
            format!("min indegree {min} with m = {m}")
        })?;
    }
    Ok(())
}

fn c5_soundness_fuzz() -> Outcome {
    let mut total_m = 0;
    for i in 0..1000 {
        let (n, m, seed) = fuzz_params(i, 40, 15);
        let p = gen_random_partition(n, m, seed);
        total_m += p.m();
        check_instance(&p).map_err(|e| format!("instance {i} (n={n}, m={m}, seed={seed}): {e}"))?;
    }
    Ok(format!(
        "1000 instances, {total_m} bicliques total, 0 violations"
    ))
}

fn c6_exact_cross_check() -> Outcome {
    let limits = OracleLimits::default();
    let mut checked = 0;
    for i in 0..1000 {
        let (n, m, seed) = fuzz_params(i, 12, 15);
        let p = gen_random_partition(n, m, seed);
        let (chi, _) = chromatic_number_exact(p.graph(), &limits).map_err(|e| e.to_string())?;
        for strategy in Strategy::ALL {
            let (c, _) = asz_color(&p, strategy).map_err(|e| e.to_string())?;
            ensure(c.num_colors() >= chi, || {
                format!(
                    "instance {i}: {strategy} used {} < chi {chi}",
                    c.num_colors()
                )
            })?;
        }
        let bits = bitvector_coloring(&p).map_err(|e| e.to_string())?;
        ensure(bits.num_colors() >= chi, || {
            format!("instance {i}: bitvector below chi")
        })?;
        checked += 1;
    }
    Ok(format!("{checked} instances with n <= 12, 0 violations"))
}

fn c7_complete_graphs() -> Outcome {
    let rec4 = build_table(BoundKind::Rec4, 59);
    let mut worst = (0, 0);
    for n in 2..=60usize {
        let p = gen_star_partition(n);
        ensure(*p.graph() == Graph::complete(n), || {
            format!("star partition of K_{n} wrong")
        })?;
        let (c, _) = asz_color(&p, Strategy::Thm1).map_err(|e| e.to_string())?;
        ensure(is_proper(p.graph(), &c).unwrap(), || {
            format!("K_{n} coloring improper")
        })?;
        let k = c.num_colors();
        ensure(k >= n && BigUint::from(k) <= *rec4.get(n - 1), || {
            format!("K_{n}: {k} colors, bound {}", rec4.get(n - 1))
        })?;
        worst = worst.max((k - n, n));
    }
    Ok(format!(
        "n = 2..60, largest excess over n is {} at n = {}",
        worst.0, worst.1
    ))
}

fn c8_graham_pollak() -> Outcome {
    let limits = OracleLimits::default();
    for n in 2..=6 {
        let (bp, witness) = bp_exact(&Graph::complete(n), &limits).map_err(|e| e.to_string())?;
        ensure(bp == n - 1, || format!("bp(K_{n}) = {bp}"))?;
        ensure(witness.validate().ok() && witness.m() == bp, || {
            format!("bad witness for K_{n}")
        })?;
    }
    Ok("bp(K_n) = n - 1 for n = 2..6".into())
}

fn c9_conjecture_sweep() -> Outcome {
    let report = conjecture_sweep(6).map_err(|e| e.to_string())?;
    ensure(report.violations.is_empty(), || {
        format!("{} violations", report.violations.len())
    })?;
    let expected: u64 = (1..=6u32).map(|n| 1u64 << (n * (n - 1) / 2)).sum();
    ensure(report.graphs_checked == expected, || {
        format!(
            "checked {} graphs, expected {expected}",
            report.graphs_checked
        )
    })?;
    for n in 1..=6usize {
        let full = (1u64 << (n * (n - 1) / 2)) - 1;
        let hit = report
            .extremal_witnesses
            .iter()
            .find(|r| r.n == n && r.mask == full)
            .ok_or_else(|| format!("K_{n} missing from extremal witnesses"))?;
        ensure(hit.chi == n && hit.bp == n - 1, || {
            format!("K_{n}: {hit:?}")
        })?;
    }
    Ok(format!(
        "{} graphs, 0 violations, {} extremal witnesses incl. K_1..K_6",
        report.graphs_checked,
        report.extremal_witnesses.len()
    ))
}

fn c10_worked_trace() -> Outcome {
    let p = gen_star_partition(3);
    let d = build_auxiliary_digraph(&p).map_err(|e| e.to_string())?;
    let want = [DigraphEdge {
        from: 1,
        to: 0,
        side: Side::B,
    }];
    ensure(d.edges() == want, || format!("D edges {:?}", d.edges()))?;
    let (c, trace) = asz_color(&p, Strategy::Thm1).map_err(|e| e.to_string())?;
    ensure(
        c.num_colors() == 3 && is_proper(p.graph(), &c).unwrap(),
        || "coloring".into(),
    )?;
    let rows = &trace.rows;
    ensure(rows.len() == 2, || format!("{} trace rows", rows.len()))?;
    let top = &rows[0];
    ensure(
        top.pivot == 1 && top.indegree == 0 && top.colors == 3,
        || format!("{top:?}"),
    )?;
    let rest = &rows[1];
    ensure(rest.m == 1 && rest.colors == 2, || format!("{rest:?}"))?;
    Ok(
        "pivot H_2 (indegree 0), then 2 colors on the remaining edge, 3 total; D = {2 -> 1 : B}"
            .into(),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 bound tables", c1_bound_tables, Duration::from_millis(1)),
        ("2 closed form", c2_closed_form, Duration::from_secs(10)),
        (
            "3 induction chain",
            c3_induction_chain,
            Duration::from_secs(10),
        ),
        (
            "4 exponent improvement",
            c4_exponent_improvement,
            Duration::from_secs(60),
        ),
        (
            "5 soundness fuzz",
            c5_soundness_fuzz,
            Duration::from_secs(60),
        ),
        (
            "6 exact cross-check",
            c6_exact_cross_check,
            Duration::from_secs(60),
        ),
        (
            "7 complete graphs",
            c7_complete_graphs,
            Duration::from_secs(30),
        ),
        ("8 graham-pollak", c8_graham_pollak, Duration::from_secs(60)),
        (
            "9 conjecture sweep",
            c9_conjecture_sweep,
            Duration::from_secs(600),
        ),
        ("10 worked trace", c10_worked_trace, Duration::from_secs(1)),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > budget => Err(format!("{msg}; over budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS  criterion {name} [{elapsed:.2?}]: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {name} [{elapsed:.2?}]: {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
