//! Minimal decompositions of integers into sums of `d`-th powers.
//!
//! The answer always comes from an exact dynamic program over `1..=k`; the
//! greedy decomposition is only used as a cheap upper bound to sanity-check
//! the table.

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};

/// Default cap on `k` for the dynamic program; override with
/// `SYSTOLIC_WARING_CAP`.
pub const DEFAULT_CAP: u64 = 10_000_000;

pub fn configured_cap() -> u64 {
    std::env::var("SYSTOLIC_WARING_CAP").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_CAP)
}

/// `k = sum a_i^d` with the parts in non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WaringDecomposition {
    pub k: u64,
    pub d: u32,
    pub parts: Vec<u64>,
}

impl WaringDecomposition {
    pub fn count(&self) -> usize {
        self.parts.len()
    }

    /// Re-sum the parts in arbitrary precision.
    pub fn verify(&self) -> bool {
        let total: BigUint = self.parts.iter().map(|&a| BigUint::from(a).pow(self.d)).sum();
        !self.parts.is_empty() && total == BigUint::from(self.k)
    }
}

/// Minimal part counts for every integer up to a limit.
#[derive(Debug, Clone)]
pub struct PowerTable {
    d: u32,
    powers: Vec<u64>,
    counts: Vec<u8>,
}

impl PowerTable {
    pub fn build(limit: u64, d: u32, cap: u64) -> Result<Self> {
        if d < 2 {
            return Err(Error::Domain(format!("power d must be >= 2, got {d}")));
        }
        if limit > cap {
            return Err(Error::LimitExceeded { value: limit, limit: cap });
        }
        let limit = usize::try_from(limit).map_err(|_| Error::LimitExceeded { value: limit, limit: cap })?;
        let powers: Vec<u64> = (1u64..).map_while(|a| a.checked_pow(d).filter(|&p| p <= limit as u64)).collect();
        let mut counts = vec![0u8; limit + 1];
        for i in 1..=limit {
            let best = powers
                .iter()
                .take_while(|&&p| p as usize <= i)
                .map(|&p| counts[i - p as usize])
                .min()
                .expect("1 is always a power");
            counts[i] = best.checked_add(1).expect("part counts stay below 255");
        }
        Ok(Self { d, powers, counts })
    }

    pub fn limit(&self) -> u64 {
        self.counts.len() as u64 - 1
    }

    pub fn count(&self, k: u64) -> usize {
        usize::from(self.counts[k as usize])
    }

    /// Lexicographically largest minimal decomposition: at each step take the
    /// largest base whose removal stays on an optimal path. The parts come out
    /// non-increasing because a larger later part could have been taken first.
    pub fn decompose(&self, k: u64) -> WaringDecomposition {
        let mut rem = k as usize;
        let mut parts = Vec::with_capacity(self.count(k));
        while rem > 0 {
            let (base, p) = self
                .powers
                .iter()
                .enumerate()
                .rev()
                .map(|(i, &p)| (i as u64 + 1, p as usize))
                .find(|&(_, p)| p <= rem && self.counts[rem - p] + 1 == self.counts[rem])
                .expect("optimal predecessor exists");
            parts.push(base);
            rem -= p;
        }
        WaringDecomposition { k, d: self.d, parts }
    }
}

/// Decomposition of `k` into the fewest `d`-th powers.
pub fn min_powers(k: u64, d: u32) -> Result<WaringDecomposition> {
    min_powers_with_cap(k, d, configured_cap())
}

pub fn min_powers_with_cap(k: u64, d: u32, cap: u64) -> Result<WaringDecomposition> {
    if k == 0 {
        return Err(Error::Domain("k must be >= 1".into()));
    }
    let table = PowerTable::build(k, d, cap)?;
    let decomposition = table.decompose(k);
    debug_assert!(decomposition.count() <= greedy_powers(k, d).len());
    Ok(decomposition)
}

/// Bases `a_i` (homothety degrees) with `sum a_i^d = k`, fewest terms.
pub fn degrees_for_class(k: u64, d: u32) -> Result<Vec<u64>> {
    Ok(min_powers(k, d)?.parts)
}

/// Largest-power-first decomposition. Not minimal in general (for squares,
/// 32 = 25 + 4 + 1 + 1 + 1 greedily but 16 + 16 optimally), so it only serves
/// as an upper bound.
pub fn greedy_powers(k: u64, d: u32) -> Vec<u64> {
    let mut rem = k;
    let mut parts = Vec::new();
    while rem > 0 {
        let base = (1u64..).take_while(|a| a.pow(d) <= rem).last().expect("rem >= 1");
        parts.push(base);
        rem -= base.pow(d);
    }
    parts
}

/// Maximum minimal part count over `1..=limit`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WaringReport {
    pub d: u32,
    pub limit: u64,
    pub max_count: usize,
    pub argmax: Vec<u64>,
    /// Every `k` in range needs at most this many parts.
    pub bound: usize,
    pub bound_holds: bool,
    /// All reconstructed decompositions re-summed exactly.
    pub all_verified: bool,
}

/// Check that every `k <= limit` is a sum of at most `bound` `d`-th powers.
pub fn verify_waring(limit: u64, d: u32, bound: usize, cap: u64) -> Result<WaringReport> {
    if limit == 0 {
        return Err(Error::Domain("limit must be >= 1".into()));
    }
    let table = PowerTable::build(limit, d, cap)?;
    let max_count = (1..=limit).map(|k| table.count(k)).max().unwrap_or(0);
    let argmax: Vec<u64> = (1..=limit).filter(|&k| table.count(k) == max_count).collect();
    let all_verified = (1..=limit).all(|k| {
        let dec = table.decompose(k);
        dec.count() == table.count(k) && dec.verify()
    });
    Ok(WaringReport { d, limit, max_count, argmax, bound, bound_holds: max_count <= bound, all_verified })
}

/// `2^d + ⌊(3/2)^d⌋ - 2`, the number of `d`-th powers every positive integer
/// needs at most (4, 9, 19, 37, ... for d = 2, 3, 4, 5, ...). Valid for the
/// desk-scale `d` this crate handles.
pub fn waring_number(d: u32) -> Result<u64> {
    if !(2..=40).contains(&d) {
        return Err(Error::Domain(format!("power d must be in 2..=40, got {d}")));
    }
    let three_halves = 3u128.pow(d) / 2u128.pow(d);
    Ok((1u64 << d) + three_halves as u64 - 2)
}

/// `verify_waring` for fourth powers against the bound 19.
pub fn verify_g4(limit: u64) -> Result<WaringReport> {
    verify_waring(limit, 4, 19, configured_cap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use systolic_oracles::min_powers_by_search;

    #[test]
    fn spot_decompositions() {
        let d = min_powers(16, 4).unwrap();
        assert_eq!(d.parts, vec![2]);
        let d = min_powers(79, 4).unwrap();
        assert_eq!(d.count(), 19);
        assert_eq!(d.parts.iter().filter(|&&a| a == 2).count(), 4);
        assert_eq!(d.parts.iter().filter(|&&a| a == 1).count(), 15);
        assert_eq!(min_powers(5, 4).unwrap().parts, vec![1; 5]);
        assert!(d.verify());
    }

    #[test]
    fn degrees_for_classes() {
        assert_eq!(degrees_for_class(17, 4).unwrap(), vec![2, 1]);
        assert_eq!(degrees_for_class(1, 3).unwrap(), vec![1]);
        assert!(degrees_for_class(0, 4).is_err());
    }

    #[test]
    fn waring_numbers() {
        let g: Vec<u64> = (2..=6).map(|d| waring_number(d).unwrap()).collect();
        assert_eq!(g, vec![4, 9, 19, 37, 73]);
        assert!(waring_number(1).is_err());
    }

    #[test]
    fn lexicographic_tie_break() {
        // 50 = 25 + 25 = 49 + 1: both minimal for squares, largest first wins.
        assert_eq!(min_powers(50, 2).unwrap().parts, vec![7, 1]);
    }

    #[test]
    fn refusals() {
        assert!(matches!(min_powers_with_cap(101, 4, 100), Err(Error::LimitExceeded { .. })));
        assert!(min_powers(10, 1).is_err());
    }

    #[test]
    fn g4_small_limits() {
        let r = verify_g4(100).unwrap();
        assert_eq!((r.max_count, r.argmax.clone()), (19, vec![79]));
        assert!(r.bound_holds && r.all_verified);
        let r = verify_g4(15).unwrap();
        assert_eq!((r.max_count, r.argmax), (15, vec![15]));
        assert_eq!(verify_g4(1).unwrap().max_count, 1);
    }

    #[test]
    fn agrees_with_exhaustive_search() {
        for d in 2..=4 {
            let table = PowerTable::build(300, d, DEFAULT_CAP).unwrap();
            for k in 1..=300 {
                assert_eq!(table.count(k), min_powers_by_search(k, d), "k={k} d={d}");
            }
        }
    }

    #[test]
    fn bellman_property() {
        let table = PowerTable::build(5000, 4, DEFAULT_CAP).unwrap();
        for k in 1..=5000u64 {
            for j in (1u64..).take_while(|j| j.pow(4) <= k) {
                assert!(table.count(k) <= table.count(k - j.pow(4)) + 1);
            }
        }
    }

    #[test]
    fn greedy_is_an_upper_bound() {
        let table = PowerTable::build(2000, 4, DEFAULT_CAP).unwrap();
        for k in 1..=2000 {
            assert!(table.count(k) <= greedy_powers(k, 4).len());
        }
        assert_eq!(greedy_powers(32, 2), vec![5, 2, 1, 1, 1]);
        assert_eq!(min_powers(32, 2).unwrap().parts, vec![4, 4]);
    }
}
