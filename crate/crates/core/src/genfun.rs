//! Generating functions of systolic sequences.
//!
//! A sequence `s_1, s_2, ...` has a rational generating function exactly when
//! it satisfies a linear recurrence with constant coefficients, so the
//! detector here is exact: no tolerance, and floating data must be
//! rationalised by the caller first.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratio::{serde_ratio_vec, to_f64};

pub const DEFAULT_MAX_ORDER: usize = 16;

/// Terms `s_1..s_N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalSequence {
    #[serde(with = "serde_ratio_vec")]
    terms: Vec<BigRational>,
}

impl RationalSequence {
    pub fn new(terms: Vec<BigRational>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Domain("sequence must be non-empty".into()));
        }
        Ok(Self { terms })
    }

    pub fn from_integers(terms: impl IntoIterator<Item = i64>) -> Result<Self> {
        Self::new(terms.into_iter().map(|t| BigRational::from_integer(t.into())).collect())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let seq: Self = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(seq.terms)
    }

    pub fn terms(&self) -> &[BigRational] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `sum_{k <= n} s_k z^k`, exactly.
pub fn partial_series(seq: &RationalSequence, z: &BigRational, n: usize) -> Result<BigRational> {
    if z.abs() >= BigRational::one() {
        return Err(Error::Domain("series is only evaluated for |z| < 1".into()));
    }
    if n > seq.len() {
        return Err(Error::SequenceTooShort { needed: n, got: seq.len() });
    }
    let mut power = z.clone();
    let mut total = BigRational::zero();
    for term in &seq.terms[..n] {
        total += term * &power;
        power *= z;
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecurrenceVerdict {
    pub found: bool,
    /// Order of the shortest recurrence fitting every term; reported even when
    /// it exceeds the requested maximum.
    pub order: usize,
    /// `s_k = c_1 s_{k-1} + ... + c_order s_{k-order}`; empty unless found.
    #[serde(with = "serde_ratio_vec")]
    pub coefficients: Vec<BigRational>,
    pub max_order: usize,
    /// Number of leading terms the recurrence was replayed against.
    pub verified_prefix_length: usize,
}

/// Berlekamp-Massey over the rationals: shortest recurrence generating `seq`,
/// as `(order, c)` with `s_k = sum_i c_i s_{k-i}` for `k >= order`.
pub fn shortest_recurrence(seq: &[BigRational]) -> (usize, Vec<BigRational>) {
    // Connection polynomials with constant term 1: s_k + sum_i conn_i s_{k-i} = 0.
    let mut conn = vec![BigRational::one()];
    let mut prev = vec![BigRational::one()];
    let mut order = 0usize;
    let mut shift = 1usize;
    let mut prev_discrepancy = BigRational::one();
    for k in 0..seq.len() {
        let discrepancy: BigRational =
            (0..=order).map(|i| conn.get(i).cloned().unwrap_or_default() * &seq[k - i]).sum();
        if discrepancy.is_zero() {
            shift += 1;
            continue;
        }
        let factor = &discrepancy / &prev_discrepancy;
        let mut next = conn.clone();
        if next.len() < prev.len() + shift {
            next.resize(prev.len() + shift, BigRational::zero());
        }
        for (i, p) in prev.iter().enumerate() {
            next[i + shift] -= &factor * p;
        }
        if 2 * order <= k {
            prev = std::mem::replace(&mut conn, next);
            order = k + 1 - order;
            prev_discrepancy = discrepancy;
            shift = 1;
        } else {
            conn = next;
            shift += 1;
        }
    }
    conn.resize(order + 1, BigRational::zero());
    (order, conn[1..].iter().map(|c| -c).collect())
}

fn replays(seq: &[BigRational], coefficients: &[BigRational]) -> bool {
    let order = coefficients.len();
    (order..seq.len()).all(|k| {
        let predicted: BigRational = coefficients.iter().enumerate().map(|(i, c)| c * &seq[k - 1 - i]).sum();
        predicted == seq[k]
    })
}

/// Shortest exact recurrence of order at most `max_order`. Needs at least
/// `2 max_order + 4` terms so any fit found is determined by the data.
pub fn detect_linear_recurrence(seq: &RationalSequence, max_order: usize) -> Result<RecurrenceVerdict> {
    let needed = 2 * max_order + 4;
    if seq.len() < needed {
        return Err(Error::SequenceTooShort { needed, got: seq.len() });
    }
    let (order, coefficients) = shortest_recurrence(&seq.terms);
    if order <= max_order && replays(&seq.terms, &coefficients) {
        return Ok(RecurrenceVerdict {
            found: true,
            order,
            coefficients,
            max_order,
            verified_prefix_length: seq.len(),
        });
    }
    Ok(RecurrenceVerdict { found: false, order, coefficients: Vec::new(), max_order, verified_prefix_length: 0 })
}

/// Coefficients of `S z / (1 - z)`: the constant sequence `S`.
pub fn conjecture_series(s: &BigRational, n: usize) -> Result<RationalSequence> {
    if !s.is_positive() {
        return Err(Error::Domain("systolic volume must be > 0".into()));
    }
    RationalSequence::new(vec![s.clone(); n])
}

/// `⌊scale · k / ln(1 + k)⌋` for `k = 1..=n`, as exact integers.
pub fn integerized_log_ratio(scale: f64, n: usize) -> RationalSequence {
    let terms = (1..=n)
        .map(|k| {
            let v = (scale * k as f64 / (k as f64).ln_1p()).floor();
            BigRational::from_integer(BigInt::from(v as i64))
        })
        .collect();
    RationalSequence { terms }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SandwichRow {
    pub k: usize,
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub inside: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SandwichScan {
    pub rows: Vec<SandwichRow>,
    /// `None` for an empty sequence.
    pub fraction_inside: Option<f64>,
}

/// Test each `s_k` against `C̃ k / ln(1+k)^m <= s_k <= C k / ln(1+k)`.
pub fn sandwich_scan(terms: &[BigRational], c_tilde: f64, c: f64, m: u32) -> Result<SandwichScan> {
    let rows = terms
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let s = crate::bounds::sandwich(i as u64 + 1, c_tilde, c, m)?;
            let value = to_f64(t);
            let inside = crate::bounds::le_with_slack(s.lower, value) && crate::bounds::le_with_slack(value, s.upper);
            Ok(SandwichRow { k: i + 1, value, lower: s.lower, upper: s.upper, inside })
        })
        .collect::<Result<Vec<_>>>()?;
    let fraction_inside =
        (!rows.is_empty()).then(|| rows.iter().filter(|r| r.inside).count() as f64 / rows.len() as f64);
    Ok(SandwichScan { rows, fraction_inside })
}
