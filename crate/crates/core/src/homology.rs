//! Integer simplicial homology with torsion, and the triangle-count bound on
//! first-homology torsion.
//!
//! `H_k = Z^{b_k} + sum Z/d_i` with `b_k = nullity(d_k) - rank(d_{k+1})` and the
//! `d_i` the invariant factors of `d_{k+1}` that exceed one. Homology is
//! unreduced and reported for `k = 0..=dim`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::complex::{BoundaryMatrix, SimplicialComplex};
use crate::snf::{smith_normal_form, SmithForm};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub betti: Vec<usize>,
    #[serde(serialize_with = "serialize_torsion")]
    pub torsion: Vec<Vec<BigInt>>,
}

impl HomologySummary {
    pub fn euler_characteristic(&self) -> i64 {
        self.betti.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }

    /// Order of the torsion subgroup of `H_k` (1 when torsion-free).
    pub fn torsion_order(&self, k: usize) -> BigInt {
        self.torsion.get(k).map_or_else(BigInt::one, |t| t.iter().product())
    }
}

/// Big integers go out as JSON numbers when they fit, strings otherwise.
pub(crate) fn serialize_bigint<S: Serializer>(value: &BigInt, ser: S) -> Result<S::Ok, S::Error> {
    match value.to_i64() {
        Some(v) => ser.serialize_i64(v),
        None => ser.serialize_str(&value.to_string()),
    }
}

fn serialize_torsion<S: Serializer>(torsion: &[Vec<BigInt>], ser: S) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Factor<'a>(#[serde(serialize_with = "serialize_bigint")] &'a BigInt);
    ser.collect_seq(torsion.iter().map(|t| t.iter().map(Factor).collect::<Vec<_>>()))
}

/// Smith forms of `d_1, ..., d_dim`, indexed so that entry `k - 1` is `d_k`.
fn boundary_forms(x: &SimplicialComplex) -> Vec<SmithForm> {
    let dim = x.dim().unwrap_or(0);
    (1..=dim).map(|k| smith_normal_form(&x.boundary_matrix(k).expect("k in range").to_sparse())).collect()
}

pub fn homology(x: &SimplicialComplex) -> HomologySummary {
    let Some(dim) = x.dim() else {
        return HomologySummary { betti: Vec::new(), torsion: Vec::new() };
    };
    let counts = x.face_counts();
    let forms = boundary_forms(x);
    let rank_of = |k: usize| -> usize {
        // rank of d_k; d_0 and d_{dim+1} are zero maps.
        if k == 0 || k > dim {
            0
        } else {
            forms[k - 1].rank
        }
    };
    let betti = (0..=dim).map(|k| counts[k] - rank_of(k) - rank_of(k + 1)).collect();
    let torsion = (0..=dim).map(|k| if k < dim { forms[k].torsion() } else { Vec::new() }).collect();
    HomologySummary { betti, torsion }
}

/// `|Tors H_1(X; Z)|`, the product of the nontrivial invariant factors of `d_2`.
pub fn torsion_order_h1(x: &SimplicialComplex) -> BigInt {
    if x.dim().unwrap_or(0) < 2 {
        return BigInt::one();
    }
    let form = smith_normal_form(&x.boundary_matrix(2).expect("dim >= 2").to_sparse());
    form.factor_product()
}

/// Result of checking `s_2 >= 2 log_3 |Tors H_1|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TorsionBoundCheck {
    pub s2: usize,
    #[serde(serialize_with = "serialize_bigint")]
    pub torsion_order: BigInt,
    /// `2 log_3 |Tors H_1|`.
    pub bound: f64,
    pub holds: bool,
}

/// Compare the triangle count with twice the base-3 logarithm of the torsion
/// order. `holds` is decided exactly as `|Tors H_1|^2 <= 3^{s_2}`.
pub fn check_s2_torsion_bound(x: &SimplicialComplex) -> TorsionBoundCheck {
    let s2 = x.face_counts().get(2).copied().unwrap_or(0);
    let torsion_order = torsion_order_h1(x);
    let bound = 2.0 * ln_bigint(&torsion_order) / 3f64.ln();
    let holds = &torsion_order * &torsion_order <= num_traits::pow(BigInt::from(3u32), s2);
    TorsionBoundCheck { s2, torsion_order, bound, holds }
}

/// Natural logarithm of a positive big integer, without overflowing `f64`.
pub fn ln_bigint(value: &BigInt) -> f64 {
    assert!(value.is_positive(), "logarithm of a non-positive integer");
    let bits = value.bits();
    if bits <= 1000 {
        return value.to_f64().expect("fits").ln();
    }
    let shift = bits - 64;
    let top: BigInt = value >> shift;
    top.to_f64().expect("64-bit mantissa").ln() + shift as f64 * std::f64::consts::LN_2
}

/// Determinant bound check on a `d_2` matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinorGcdCheck {
    /// Number of triangles (columns of `d_2`).
    pub s2: usize,
    pub rank: usize,
    /// `t(D)`: product of the invariant factors.
    #[serde(serialize_with = "serialize_bigint")]
    pub t_d: BigInt,
    /// `t(D)^2 <= 3^rank` (and hence `<= 3^{s_2}`).
    pub bound_holds: bool,
    /// For at most five columns: whether `t(D)` equals the gcd of all maximal
    /// nonzero minors computed directly.
    pub brute_force_agrees: Option<bool>,
}

impl MinorGcdCheck {
    pub fn passed(&self) -> bool {
        self.bound_holds && self.brute_force_agrees != Some(false)
    }
}

pub fn minor_gcd_check(m: &BoundaryMatrix) -> MinorGcdCheck {
    let form = smith_normal_form(&m.to_sparse());
    let t_d = form.factor_product();
    let three = BigInt::from(3u32);
    let bound_holds = &t_d * &t_d <= num_traits::pow(three, form.rank);
    let brute_force_agrees = (m.col_count() <= 5).then(|| {
        let (rank, gcd) = maximal_minor_gcd(&m.to_dense());
        rank == form.rank && gcd == t_d
    });
    MinorGcdCheck { s2: m.col_count(), rank: form.rank, t_d, bound_holds, brute_force_agrees }
}

/// Rank and gcd of all nonzero minors of maximal order, by enumeration.
fn maximal_minor_gcd(dense: &[Vec<i64>]) -> (usize, BigInt) {
    use num_integer::Integer;
    let rows = dense.len();
    let cols = dense.first().map_or(0, Vec::len);
    for order in (1..=rows.min(cols)).rev() {
        let mut g = BigInt::zero();
        let col_sets = index_subsets(cols, order);
        for rset in index_subsets(rows, order) {
            for cset in &col_sets {
                let sub: Vec<Vec<BigInt>> =
                    rset.iter().map(|&r| cset.iter().map(|&c| BigInt::from(dense[r][c])).collect()).collect();
                g = g.gcd(&bareiss_determinant(sub));
            }
        }
        if !g.is_zero() {
            return (order, g);
        }
    }
    (0, BigInt::one())
}

fn index_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let Some(p) = (0..k).rev().find(|&p| idx[p] != p + n - k) else {
            return out;
        };
        idx[p] += 1;
        for q in p + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// Fraction-free Gaussian elimination.
fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &a[n - 1][n - 1]
    }
}
