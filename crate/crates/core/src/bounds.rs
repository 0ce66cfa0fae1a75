//! Upper-bound tables for the two recurrences and exact verification of the
//! inequalities derived from them.
//!
//! `rec4` is `F(k+1) = F(k) + F(floor(k/4))` and `rec2` is
//! `F(k+1) = F(k) + F(floor(k/2))`, both with `F(0) = 1`. Entry `F(m)` bounds
//! the number of colors the recursive coloring uses on an `m`-biclique
//! partition under the matching pivot strategy.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::asz::Strategy;
use crate::error::{Error, Result};

/// Default largest `k` checked by [`verify_bound_chain`].
pub const DEFAULT_VERIFY_MAX: u64 = 1 << 16;

/// Absolute error bound of [`log2_biguint`].
pub const LOG2_ERROR_BOUND: f64 = 1e-12;

/// Float comparisons closer than this are re-decided exactly.
pub const COMPARISON_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Rec4,
    Rec2,
}

impl BoundKind {
    fn divisor(self) -> usize {
        match self {
            BoundKind::Rec4 => 4,
            BoundKind::Rec2 => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::Rec4 => "rec4",
            BoundKind::Rec2 => "rec2",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rec4" => Ok(BoundKind::Rec4),
            "rec2" => Ok(BoundKind::Rec2),
            other => Err(Error::MalformedInput(format!(
                "unknown bound table {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundTable {
    kind: BoundKind,
    values: Vec<BigUint>,
}

impl BoundTable {
    pub fn kind(&self) -> BoundKind {
        self.kind
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn get(&self, k: usize) -> &BigUint {
        &self.values[k]
    }

    /// Largest index in the table.
    pub fn max_k(&self) -> usize {
        self.values.len() - 1
    }

    /// Re-checks `values[0] = 1`, the recurrence and strict growth.
    pub fn check(&self) -> Result<()> {
        if self.values.first() != Some(&BigUint::one()) {
            return Err(Error::Internal(format!(
                "{} table does not start at 1",
                self.kind
            )));
        }
        let d = self.kind.divisor();
        for k in 0..self.max_k() {
            let expected = &self.values[k] + &self.values[k / d];
            if self.values[k + 1] != expected || self.values[k + 1] <= self.values[k] {
                return Err(Error::Internal(format!(
                    "{} table breaks its recurrence at k = {}",
                    self.kind,
                    k + 1
                )));
            }
        }
        Ok(())
    }
}

pub fn build_table(kind: BoundKind, max_k: usize) -> BoundTable {
    let d = kind.divisor();
    let mut values: Vec<BigUint> = Vec::with_capacity(max_k + 1);
    values.push(BigUint::one());
    for k in 0..max_k {
        let next = &values[k] + &values[k / d];
        values.push(next);
    }
    BoundTable { kind, values }
}

/// Color bound certified for `strategy` on `m` bicliques.
pub fn strategy_bound(strategy: Strategy, m: usize) -> BigUint {
    let kind = match strategy {
        Strategy::Thm1 | Strategy::Greedy => BoundKind::Rec4,
        Strategy::Prop2 => BoundKind::Rec2,
    };
    build_table(kind, m).values.swap_remove(m)
}

/// `(log2(4k))^2 / 4`.
pub fn closed_form_exponent(k: u64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("closed-form exponent needs k >= 1".into()));
    }
    let l = (4.0 * k as f64).log2();
    Ok(l * l / 4.0)
}

/// `((log2 k)^2 + log2 k) / 2`.
pub fn mv_exponent(k: u64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("exponent needs k >= 1".into()));
    }
    let l = (k as f64).log2();
    Ok((l * l + l) / 2.0)
}

/// `log2(v)` from the bit length and the leading 64 bits; error below
/// [`LOG2_ERROR_BOUND`].
pub fn log2_biguint(v: &BigUint) -> Result<f64> {
    if v.is_zero() {
        return Err(Error::Domain("log2 of zero".into()));
    }
    let bits = v.bits();
    if bits <= 64 {
        return Ok((v.to_u64().expect("fits") as f64).log2());
    }
    let shift = bits - 64;
    let top = (v >> shift).to_u64().expect("64 leading bits");
    Ok(shift as f64 + (top as f64).log2())
}

/// Fixed-point `log2(x)` scaled by `2^frac_bits` and truncated.
///
/// Uses the square-and-compare digit recurrence with `frac_bits + 64` working
/// bits; the result is within `2^-(frac_bits - 8)` of the true value.
fn log2_fixed(x: &BigUint, frac_bits: u64) -> BigUint {
    let work = frac_bits + 64;
    let int_part = x.bits() - 1;
    let one = BigUint::one() << work;
    let two = BigUint::one() << (work + 1);
    // y = x / 2^int_part in [1, 2), scaled by 2^work.
    let mut y = (x << work) >> int_part;
    let mut result = BigUint::from(int_part) << frac_bits;
    for i in (0..frac_bits).rev() {
        y = (&y * &y) >> work;
        if y >= two {
            y >>= 1u32;
            result |= BigUint::one() << i;
        }
    }
    debug_assert!(y >= one);
    result
}

/// Decides `log2(value) <= (log2(4k))^2 / 4` conclusively.
pub fn log2_within_closed_form(value: &BigUint, k: u64) -> Result<bool> {
    let exponent = closed_form_exponent(k)?;
    let gap = exponent - log2_biguint(value)?;
    if gap > COMPARISON_MARGIN {
        return Ok(true);
    }
    if gap < -COMPARISON_MARGIN {
        return Ok(false);
    }
    if k.is_power_of_two() {
        // Exponent is (t+2)^2/4: compare value^4 with 2^((t+2)^2).
        let t = u64::from(k.trailing_zeros()) + 2;
        return Ok(value.pow(4) <= BigUint::one() << (t * t));
    }
    // 4 * log2(value) vs log2(4k)^2 in fixed point with 160 fractional bits.
    const FRAC: u64 = 160;
    let lhs = log2_fixed(value, FRAC) << (FRAC + 2);
    let l = log2_fixed(&BigUint::from(4 * k), FRAC);
    let rhs = &l * &l;
    // Both sides are within 2^(FRAC + 16) units of their true values.
    let slack = BigUint::one() << (FRAC + 32);
    if &lhs + &slack < rhs {
        Ok(true)
    } else if lhs > &rhs + &slack {
        Ok(false)
    } else {
        Err(Error::Internal(format!(
            "closed-form comparison at k = {k} is inconclusive at 160 bits"
        )))
    }
}

/// `value <= 2^k`, exactly.
fn at_most_power_of_two(value: &BigUint, k: u64) -> bool {
    let bits = value.bits();
    bits <= k || (bits == k + 1 && value.trailing_zeros() == Some(k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainCheck {
    /// `rec4[k] <= (ceil(3k/4) + 1) * rec4[floor(k/4)]`, `k >= 4`.
    ThreeQuarters,
    /// `rec4[k] <= k * rec4[floor(k/4)]`, `k >= 4`.
    Linear,
    /// `log2(rec4[k]) <= (log2(4k))^2 / 4`, `k >= 1`.
    ClosedForm,
    /// `rec4[k] <= rec2[k] <= 2^k`.
    TableOrder,
    /// The closed form at `k = 1, 2, 3`.
    BaseCase,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainFailure {
    pub check: ChainCheck,
    pub k: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentRow {
    pub k: u64,
    pub log2_rec4: f64,
    pub closed_form: f64,
    pub mv: f64,
    pub closed_form_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentReport {
    pub max_k: u64,
    pub log2_error_bound: f64,
    pub rows: Vec<ExponentRow>,
    pub failures: Vec<ChainFailure>,
}

impl ExponentReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failures_of(&self, check: ChainCheck) -> usize {
        self.failures.iter().filter(|f| f.check == check).count()
    }
}

/// Checks every inequality of the induction chain for `1 <= k <= max_k`.
pub fn verify_bound_chain(max_k: u64) -> Result<ExponentReport> {
    let len = usize::try_from(max_k)
        .map_err(|_| Error::Domain(format!("table size {max_k} does not fit memory")))?;
    let rec4 = build_table(BoundKind::Rec4, len);
    let rec2 = build_table(BoundKind::Rec2, len);
    rec4.check()?;
    rec2.check()?;

    let per_k = (1..=max_k)
        .into_par_iter()
        .map(|k| -> Result<(ExponentRow, Vec<ChainFailure>)> {
            let i = k as usize;
            let value = rec4.get(i);
            let mut failures = Vec::new();
            let mut fail = |check| failures.push(ChainFailure { check, k });

            if k >= 4 {
                let quarter = rec4.get(i / 4);
                let three_quarters = (3 * k).div_ceil(4) + 1;
                if value > &(quarter * BigUint::from(three_quarters)) {
                    fail(ChainCheck::ThreeQuarters);
                }
                if value > &(quarter * BigUint::from(k)) {
                    fail(ChainCheck::Linear);
                }
            }
            let closed_form_ok = log2_within_closed_form(value, k)?;
            if !closed_form_ok {
                fail(ChainCheck::ClosedForm);
                if k <= 3 {
                    fail(ChainCheck::BaseCase);
                }
            }
            if value > rec2.get(i) || !at_most_power_of_two(rec2.get(i), k) {
                fail(ChainCheck::TableOrder);
            }
            let row = ExponentRow {
                k,
                log2_rec4: log2_biguint(value)?,
                closed_form: closed_form_exponent(k)?,
                mv: mv_exponent(k)?,
                closed_form_ok,
            };
            Ok((row, failures))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::with_capacity(per_k.len());
    let mut failures = Vec::new();
    for (row, f) in per_k {
        rows.push(row);
        failures.extend(f);
    }
    Ok(ExponentReport {
        max_k,
        log2_error_bound: LOG2_ERROR_BOUND,
        rows,
        failures,
    })
}

/// Ratio of the closed-form exponent to the older `((log k)^2 + log k)/2` one.
pub fn exponent_ratio(k: u64) -> Result<f64> {
    Ok(closed_form_exponent(k)? / mv_exponent(k)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MvComparison {
    pub k_lo: u64,
    pub k_hi: u64,
    pub tolerance: f64,
    /// `k` in range where the closed form is not below the older exponent by
    /// more than `tolerance`.
    pub not_improved: Vec<u64>,
    /// Smallest `k` from which every later `k` in range is improved.
    pub improved_from: Option<u64>,
    pub ratio_at_hi: f64,
}

impl MvComparison {
    /// Whether every `k >= 10` in range is improved.
    pub fn improved_from_ten(&self) -> bool {
        self.not_improved.iter().all(|&k| k < 10)
    }
}

pub fn compare_mubayi_vishwanathan(k_lo: u64, k_hi: u64) -> Result<MvComparison> {
    if k_lo == 0 || k_lo > k_hi {
        return Err(Error::Domain(format!("bad range {k_lo}..={k_hi}")));
    }
    let tolerance = COMPARISON_MARGIN;
    let not_improved: Vec<u64> = (k_lo..=k_hi)
        .into_par_iter()
        .filter(|&k| {
            let new = closed_form_exponent(k).expect("k >= 1");
            let old = mv_exponent(k).expect("k >= 1");
            old - new <= tolerance
        })
        .collect();
    let improved_from = match not_improved.last() {
        None => Some(k_lo),
        Some(&k) if k < k_hi => Some(k + 1),
        Some(_) => None,
    };
    Ok(MvComparison {
        k_lo,
        k_hi,
        tolerance,
        not_improved,
        improved_from,
        ratio_at_hi: exponent_ratio(k_hi)?,
    })
}
