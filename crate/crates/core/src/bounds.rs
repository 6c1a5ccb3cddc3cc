//! Closed-form systolic inequalities with user-supplied constants.
//!
//! The universal constants in these inequalities are not known numerically.
//! They are inputs here, defaulting to 1.0 with a provenance tag that says so,
//! and every report carries that tag along.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::serialize_bigint;
use crate::ratio::serde_ratio;

pub const ILLUSTRATIVE: &str = "illustrative constants (all 1.0), not known values";

/// Relative slack for floating-point inequality checks.
pub const REL_SLACK: f64 = 1e-12;

fn default_one() -> f64 {
    1.0
}

fn default_dimension() -> u32 {
    2
}

fn default_provenance() -> String {
    ILLUSTRATIVE.to_string()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundConstants {
    #[serde(default = "default_dimension")]
    pub m: u32,
    #[serde(default = "default_one")]
    pub c_m: f64,
    #[serde(default = "default_one")]
    pub c_prime_m: f64,
    #[serde(default = "default_one")]
    pub c_second_m: f64,
    /// No known value; never defaulted.
    #[serde(default)]
    pub sigma_m: Option<f64>,
    /// Systolic volume of the `m`-torus, if the caller has one.
    #[serde(default)]
    pub s_tm: Option<f64>,
    #[serde(default = "default_one")]
    pub a: f64,
    #[serde(default = "default_one")]
    pub b: f64,
    #[serde(default = "default_provenance")]
    pub provenance: String,
}

impl Default for BoundConstants {
    fn default() -> Self {
        Self {
            m: default_dimension(),
            c_m: 1.0,
            c_prime_m: 1.0,
            c_second_m: 1.0,
            sigma_m: None,
            s_tm: None,
            a: 1.0,
            b: 1.0,
            provenance: default_provenance(),
        }
    }
}

impl BoundConstants {
    pub fn from_json(text: &str) -> Result<Self> {
        let k: Self = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        k.validate()?;
        Ok(k)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::Domain("dimension m must be >= 1".into()));
        }
        let named = [
            ("c_m", self.c_m),
            ("c_prime_m", self.c_prime_m),
            ("c_second_m", self.c_second_m),
            ("a", self.a),
            ("b", self.b),
        ];
        let optional = [("sigma_m", self.sigma_m), ("s_tm", self.s_tm)];
        let all = named.into_iter().chain(optional.into_iter().filter_map(|(n, v)| v.map(|v| (n, v))));
        for (name, value) in all {
            positive(name, value)?;
        }
        Ok(())
    }

    pub fn is_illustrative(&self) -> bool {
        self.provenance == ILLUSTRATIVE
    }
}

fn positive(name: &str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite and > 0, got {value}")))
    }
}

/// `a <= b` up to relative slack.
pub fn le_with_slack(a: f64, b: f64) -> bool {
    a <= b + REL_SLACK * a.abs().max(b.abs())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: f64,
}

impl NamedValue {
    pub fn new(name: impl Into<String>, value: f64) -> Self {
        Self { name: name.into(), value }
    }
}

/// Lower and upper bounds gathered for one quantity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub inputs: Vec<NamedValue>,
    pub lower: Vec<NamedValue>,
    pub upper: Vec<NamedValue>,
    /// Largest lower bound does not exceed smallest upper bound.
    pub consistent: bool,
    pub constants: String,
}

impl BoundReport {
    pub fn new(
        name: impl Into<String>,
        inputs: Vec<NamedValue>,
        lower: Vec<NamedValue>,
        upper: Vec<NamedValue>,
        constants: &BoundConstants,
    ) -> Self {
        let max_lower = lower.iter().map(|v| v.value).fold(f64::NEG_INFINITY, f64::max);
        let min_upper = upper.iter().map(|v| v.value).fold(f64::INFINITY, f64::min);
        let consistent = lower.is_empty() || upper.is_empty() || le_with_slack(max_lower, min_upper);
        Self { name: name.into(), inputs, lower, upper, consistent, constants: constants.provenance.clone() }
    }
}

/// `C_m h / exp(C'_m sqrt(ln h))`.
pub fn height_lb(h: f64, k: &BoundConstants) -> Result<f64> {
    if !h.is_finite() || h < 2.0 {
        return Err(Error::Domain(format!("height must be >= 2, got {h}")));
    }
    Ok(k.c_m * h / (k.c_prime_m * h.ln().sqrt()).exp())
}

/// `C''_m v / ln(2 + v)^m`.
pub fn simvol_lb(v: f64, k: &BoundConstants) -> Result<f64> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::Domain(format!("simplicial volume must be >= 0, got {v}")));
    }
    Ok(k.c_second_m * v / (2.0 + v).ln().powi(k.m as i32))
}

/// `C_m ln t / exp(C'_m sqrt(ln ln t))`.
pub fn torsion_lb(t1: f64, k: &BoundConstants) -> Result<f64> {
    if !t1.is_finite() || t1 < 3.0 {
        return Err(Error::Domain(format!("torsion order must be >= 3, got {t1}")));
    }
    let ln_t = t1.ln();
    Ok(k.c_m * ln_t / (k.c_prime_m * ln_t.ln().sqrt()).exp())
}

/// Whether `(ln t)^(1-ε) <= torsion_lb(t)` at these constants. Only meaningful
/// for large `t`; the answer depends on the constants.
pub fn torsion_power_dominated(t1: f64, eps: f64, k: &BoundConstants) -> Result<bool> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::Domain(format!("ε must be > 0, got {eps}")));
    }
    let value = torsion_lb(t1, k)?;
    Ok(le_with_slack(t1.ln().powf(1.0 - eps), value))
}

/// `2 log_3 t`.
pub fn height_from_torsion(t1: f64) -> Result<f64> {
    if !t1.is_finite() || t1 < 1.0 {
        return Err(Error::Domain(format!("torsion order must be >= 1, got {t1}")));
    }
    Ok(2.0 * t1.ln() / 3f64.ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sandwich {
    pub k: u64,
    pub lower: f64,
    pub upper: f64,
    pub consistent: bool,
}

/// `C̃ k / ln(1+k)^m <= S(ka) <= C k / ln(1+k)`.
pub fn sandwich(k: u64, c_tilde: f64, c: f64, m: u32) -> Result<Sandwich> {
    if k == 0 {
        return Err(Error::Domain("multiple k must be >= 1".into()));
    }
    positive("lower constant", c_tilde)?;
    positive("upper constant", c)?;
    if m == 0 {
        return Err(Error::Domain("dimension m must be >= 1".into()));
    }
    let kf = k as f64;
    let log = kf.ln_1p();
    let lower = c_tilde * kf / log.powi(m as i32);
    let upper = c * kf / log;
    Ok(Sandwich { k, lower, upper, consistent: le_with_slack(lower, upper) })
}

/// Lens space bound through `t_1 >= n`.
pub fn lens_lb(n: u64, k: &BoundConstants) -> Result<f64> {
    if n < 3 {
        return Err(Error::Domain(format!("lens order must be >= 3, got {n}")));
    }
    torsion_lb(n as f64, k)
}

/// Pass to a cyclic subgroup of index at most 12, then divide the lens bound
/// of the cover by 12.
pub fn finite_pi1_3manifold_lb(order: u64, k: &BoundConstants) -> Result<f64> {
    if order < 36 {
        return Err(Error::Domain(format!("group order must be >= 36, got {order}")));
    }
    Ok(lens_lb(order.div_ceil(12), k)? / 12.0)
}

pub const KAPPA_SCALE: f64 = 62_500.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KappaUpper {
    pub systolic_area: f64,
    pub value: f64,
    pub alpha: f64,
}

/// `κ <= (62500 · 25/3) S exp((1 + ln 25) sqrt(ln(62500 S)))`, for `S >= π/16`.
///
/// The square root is taken of `ln(62500 S)`, which is positive on the whole
/// domain; `ln S` itself is negative just above `π/16`.
pub fn kappa_upper_from_systole(s: f64) -> Result<KappaUpper> {
    if !s.is_finite() || s < PI / 16.0 {
        return Err(Error::Domain(format!("systolic area must be >= π/16, got {s}")));
    }
    let root = (KAPPA_SCALE * s).ln().sqrt();
    let c = KAPPA_SCALE * 25.0 / 3.0;
    let c_prime = 1.0 + 25f64.ln();
    Ok(KappaUpper { systolic_area: s, value: c * s * (c_prime * root).exp(), alpha: 25.0 * root.exp() })
}

/// `S <= κ / 2π`.
pub fn systolic_area_upper_from_kappa(kappa: f64) -> Result<f64> {
    if !kappa.is_finite() || kappa < 0.0 {
        return Err(Error::Domain(format!("complexity must be >= 0, got {kappa}")));
    }
    Ok(kappa / (2.0 * PI))
}

fn binomial(n: &BigInt, r: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * (n - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}

/// Count of groups with complexity at most `K`, bounded by `2^{K^3/14}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupCountBound {
    pub k: u64,
    /// `⌈3K/4⌉`.
    pub vertices: u64,
    #[serde(serialize_with = "serialize_bigint")]
    pub triples: BigInt,
    /// `K^3 / 14`.
    #[serde(with = "serde_ratio")]
    pub exponent: BigRational,
    /// `sum_{s <= K} C(T, s) <= 2^T` with `T = C(M, 3)`.
    pub subsets_within_power: bool,
    /// `T <= K^3 / 14`.
    pub power_within_bound: bool,
}

impl GroupCountBound {
    pub fn chain_holds(&self) -> bool {
        self.subsets_within_power && self.power_within_bound
    }

    /// `2^{K^3/14}` when the exponent is an integer.
    pub fn exact_bound(&self) -> Option<BigInt> {
        let e = self.exponent.to_integer().to_usize()?;
        self.exponent.is_integer().then(|| num_traits::pow(BigInt::from(2), e))
    }
}

pub fn group_count_bound(k: u64) -> Result<GroupCountBound> {
    if k == 0 {
        return Err(Error::Domain("complexity budget K must be >= 1".into()));
    }
    let vertices = (3 * k).div_ceil(4);
    let triples = binomial(&BigInt::from(vertices), 3);
    let subsets: BigInt = (0..=k).map(|s| binomial(&triples, s)).sum();
    let t = triples.to_usize().ok_or_else(|| Error::Domain(format!("K = {k} is too large")))?;
    let power = num_traits::pow(BigInt::from(2), t);
    let cube = BigInt::from(k).pow(3);
    Ok(GroupCountBound {
        k,
        vertices,
        subsets_within_power: subsets <= power,
        power_within_bound: BigInt::from(14) * &triples <= cube,
        exponent: BigRational::new(cube, BigInt::from(14)),
        triples,
    })
}

/// Complexity bounds for the genus-`l` surface group: `(4l/3, upper)`.
pub fn surface_kappa_bounds(l: u64) -> Result<(BigRational, BigInt)> {
    if l == 0 {
        return Err(Error::Domain("genus l must be >= 1".into()));
    }
    let lower = BigRational::new(BigInt::from(4 * l), BigInt::from(3));
    if l == 2 {
        return Ok((lower, BigInt::from(24)));
    }
    // {a} is a for integral a, else ⌊a⌋ + 1; here a = (7 + sqrt(1 + 48l)) / 2.
    let disc = BigInt::from(1 + 48 * l);
    let root = disc.sqrt();
    let bracket = if &root * &root == disc && (BigInt::from(7) + &root).is_even() {
        (BigInt::from(7) + &root) / 2
    } else {
        // a is not an integer, and ⌊a⌋ = ⌊(7 + isqrt) / 2⌋ in both cases.
        (BigInt::from(7) + &root).div_floor(&BigInt::from(2)) + 1
    };
    Ok((lower, BigInt::from(4 * (l - 1)) + bracket * 2))
}

/// `(n(n-1)/2, 7n(n-1))` for the free abelian group of rank `n`.
pub fn abelian_kappa_bounds(n: u64) -> (BigInt, BigInt) {
    let pairs = BigInt::from(n) * BigInt::from(n.saturating_sub(1));
    (&pairs / 2, pairs * 7)
}

/// `C(n, m) · S(T^m)`.
pub fn torus_class_bound(n: u64, m: u64, s_tm: f64) -> Result<f64> {
    if m == 0 || m > n {
        return Err(Error::Domain(format!("need 1 <= m <= n, got m = {m}, n = {n}")));
    }
    positive("torus systolic volume", s_tm)?;
    let c = binomial(&BigInt::from(n), m);
    Ok(c.to_f64().unwrap_or(f64::INFINITY) * s_tm)
}

/// `K(d) · S(G, a)`.
pub fn waring_nil_bound(waring_number: u64, s_a: f64) -> Result<f64> {
    if !s_a.is_finite() || s_a < 0.0 {
        return Err(Error::Domain(format!("systolic volume must be >= 0, got {s_a}")));
    }
    Ok(waring_number as f64 * s_a)
}

/// Known upper bounds for multiples of a class, combined by subadditivity.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct UpperIngredients {
    /// `(j, value)`: the class `j a` has systolic volume at most `value`.
    #[serde(default)]
    pub base: Vec<(u64, f64)>,
    /// Constants `C` of available `C k / ln(1 + k)` bounds.
    #[serde(default)]
    pub log_constants: Vec<f64>,
    /// Slopes `s` of available `s k` bounds.
    #[serde(default)]
    pub linear_slopes: Vec<f64>,
}

/// Ingredients normalised for the composition: linear bounds become a unit
/// base value and only the smallest log constant matters.
struct Normalised {
    base: Vec<(usize, f64)>,
    log_constant: Option<f64>,
}

impl UpperIngredients {
    fn normalise(&self) -> Result<Normalised> {
        if self.base.is_empty() && self.log_constants.is_empty() && self.linear_slopes.is_empty() {
            return Err(Error::Domain("no upper-bound ingredients".into()));
        }
        let mut base = Vec::new();
        for &(j, v) in &self.base {
            if j == 0 {
                return Err(Error::Domain("base multiples must be >= 1".into()));
            }
            positive("base value", v)?;
            base.push((j as usize, v));
        }
        for &s in &self.linear_slopes {
            positive("linear slope", s)?;
            base.push((1, s));
        }
        for &c in &self.log_constants {
            positive("log constant", c)?;
        }
        let log_constant = self.log_constants.iter().copied().reduce(f64::min);
        Ok(Normalised { base, log_constant })
    }
}

/// Cheapest sum of base values with multiples adding up to each `r <= n`.
fn knapsack(base: &[(usize, f64)], n: usize) -> Vec<f64> {
    let mut best = vec![f64::INFINITY; n + 1];
    best[0] = 0.0;
    for r in 1..=n {
        for &(j, v) in base {
            if j <= r && best[r - j] + v < best[r] {
                best[r] = best[r - j] + v;
            }
        }
    }
    best
}

fn log_bound(c: Option<f64>, r: usize) -> f64 {
    match (c, r) {
        (_, 0) => 0.0,
        (Some(c), r) => c * r as f64 / (r as f64).ln_1p(),
        (None, _) => f64::INFINITY,
    }
}

/// Smallest upper bound for `k a` reachable by splitting `k` into parts.
///
/// Parts bounded by the log formula can be merged, because `C r / ln(1 + r)`
/// has non-increasing cost per unit, so an optimal split uses at most one
/// such part. The rest is an unbounded knapsack over the base values.
pub fn best_upper_bound(k: u64, ingredients: &UpperIngredients) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("multiple k must be >= 1".into()));
    }
    let norm = ingredients.normalise()?;
    let k = usize::try_from(k).map_err(|_| Error::Domain("multiple too large".into()))?;
    let cb = knapsack(&norm.base, k);
    Ok((0..=k).map(|r| cb[r] + log_bound(norm.log_constant, k - r)).fold(f64::INFINITY, f64::min))
}

/// `best_upper_bound(k)` for `k = 1..=n`.
pub fn best_upper_sequence(n: u64, ingredients: &UpperIngredients) -> Result<Vec<f64>> {
    let norm = ingredients.normalise()?;
    let n = usize::try_from(n).map_err(|_| Error::Domain("length too large".into()))?;
    let cb = knapsack(&norm.base, n);
    let log: Vec<f64> = (0..=n).map(|r| log_bound(norm.log_constant, r)).collect();
    Ok((1..=n).map(|k| (0..=k).map(|r| cb[r] + log[k - r]).fold(f64::INFINITY, f64::min)).collect())
}

/// Worst violation of `best(i + j) <= best(i) + best(j)` over the sequence, if any.
pub fn subadditivity_violation(seq: &[f64]) -> Option<(usize, usize)> {
    for i in 1..=seq.len() {
        for j in i..=seq.len() - i {
            if !le_with_slack(seq[i + j - 1], seq[i - 1] + seq[j - 1]) {
                return Some((i, j));
            }
        }
    }
    None
}
