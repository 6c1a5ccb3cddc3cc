//! Smith normal form of sparse integer matrices over arbitrary-precision integers.
//!
//! Elimination works on a row-major sparse store with a column occupancy index.
//! Pivots are chosen by smallest absolute value, then by Markowitz cost
//! `(row_nnz - 1) * (col_nnz - 1)`, then by position, so the result is fully
//! deterministic. A pivot that does not divide its row and column is replaced
//! by the remainder it produces; once it divides everything it is split off as
//! a diagonal entry. The collected diagonal is normalised into a divisibility
//! chain at the end.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Sparse integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, BigInt>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    /// Build from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets<I, V>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, V)>,
        V: Into<BigInt>,
    {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            let v: BigInt = v.into();
            let slot = m.data[r].entry(c).or_insert_with(BigInt::zero);
            *slot += v;
            if slot.is_zero() {
                m.data[r].remove(&c);
            }
        }
        m
    }

    pub fn from_dense<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let triplets = rows.iter().enumerate().flat_map(|(i, row)| {
            assert_eq!(row.as_ref().len(), cols, "ragged dense matrix");
            row.as_ref().iter().enumerate().filter(|(_, v)| **v != 0).map(move |(j, &v)| (i, j, v))
        });
        Self::from_triplets(rows.len(), cols, triplets)
    }

    pub fn row_count(&self) -> usize {
        self.rows
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn get(&self, row: usize, col: usize) -> BigInt {
        self.data[row].get(&col).cloned().unwrap_or_default()
    }

    pub fn transpose(&self) -> Self {
        let triplets =
            self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(&c, v)| (c, r, v.clone())));
        Self::from_triplets(self.cols, self.rows, triplets)
    }

    /// Reorder rows and columns: entry `(r, c)` moves to `(row_perm[r], col_perm[c])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        let triplets = self
            .data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(&c, v)| (row_perm[r], col_perm[c], v.clone())));
        Self::from_triplets(self.rows, self.cols, triplets)
    }

    /// Multiply chosen rows and columns by -1.
    pub fn sign_flipped(&self, row_neg: &[bool], col_neg: &[bool]) -> Self {
        let triplets = self.data.iter().enumerate().flat_map(|(r, row)| {
            row.iter().map(move |(&c, v)| {
                let v = if row_neg[r] != col_neg[c] { -v.clone() } else { v.clone() };
                (r, c, v)
            })
        });
        Self::from_triplets(self.rows, self.cols, triplets)
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c)).collect()).collect()
    }
}

/// Invariant factors `d_1 | d_2 | ... | d_r` of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmithForm {
    #[serde(serialize_with = "serialize_bigints")]
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
    pub row_dim: usize,
    pub col_dim: usize,
}

impl SmithForm {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// `t(D)`: product of the invariant factors, equal to the gcd of all
    /// maximal nonzero minors.
    pub fn factor_product(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn nullity(&self) -> usize {
        self.col_dim - self.rank
    }
}

fn serialize_bigints<S: Serializer>(values: &[BigInt], ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_seq(values.iter().map(ToString::to_string))
}

/// Compute the Smith normal form of `matrix`.
pub fn smith_normal_form(matrix: &SparseMatrix) -> SmithForm {
    let mut work = Elimination::new(matrix);
    let diagonal = work.run();
    SmithForm {
        rank: diagonal.len(),
        invariant_factors: divisibility_chain(diagonal),
        row_dim: matrix.rows,
        col_dim: matrix.cols,
    }
}

/// Turn a list of nonzero diagonal entries into the equivalent divisibility
/// chain, using `diag(a, b) ~ diag(gcd, lcm)`.
pub fn divisibility_chain(diagonal: Vec<BigInt>) -> Vec<BigInt> {
    let mut units = 0usize;
    let mut rest: Vec<BigInt> = Vec::new();
    for d in diagonal {
        let d = d.abs();
        debug_assert!(!d.is_zero());
        if d.is_one() {
            units += 1;
        } else {
            rest.push(d);
        }
    }
    rest.sort();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            if (&rest[j] % &rest[i]).is_zero() {
                continue;
            }
            let g = rest[i].gcd(&rest[j]);
            let l = &rest[i] / &g * &rest[j];
            rest[i] = g;
            rest[j] = l;
        }
    }
    // After the sweep rest[i] | rest[j] for i < j, so the order is already ascending.
    let mut out = vec![BigInt::one(); units];
    out.extend(rest);
    out
}

struct Elimination {
    rows: Vec<BTreeMap<usize, BigInt>>,
    col_rows: Vec<BTreeSet<usize>>,
}

impl Elimination {
    fn new(matrix: &SparseMatrix) -> Self {
        let mut col_rows = vec![BTreeSet::new(); matrix.cols];
        for (r, row) in matrix.data.iter().enumerate() {
            for &c in row.keys() {
                col_rows[c].insert(r);
            }
        }
        Self { rows: matrix.data.clone(), col_rows }
    }

    fn run(&mut self) -> Vec<BigInt> {
        let mut diagonal = Vec::new();
        while let Some((r, c)) = self.select_pivot() {
            if let Some(d) = self.reduce_at(r, c) {
                diagonal.push(d);
            }
        }
        diagonal
    }

    fn select_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize, usize)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            let row_cost = row.len() - 1;
            for (&c, v) in row {
                let cost = row_cost * (self.col_rows[c].len() - 1);
                let mag = v.abs();
                let better = match &best {
                    None => true,
                    Some((bm, bc, _, _)) => (&mag, cost) < (bm, *bc),
                };
                if better {
                    let unit_and_free = mag.is_one() && cost == 0;
                    best = Some((mag, cost, r, c));
                    if unit_and_free {
                        return Some((r, c));
                    }
                }
            }
        }
        best.map(|(_, _, r, c)| (r, c))
    }

    /// Try to split off the pivot at `(r, c)`. Returns the diagonal entry on
    /// success, or `None` if a smaller remainder was created instead.
    fn reduce_at(&mut self, r: usize, c: usize) -> Option<BigInt> {
        let pivot = self.rows[r][&c].clone();
        // Column entries: row operations.
        let others: Vec<usize> = self.col_rows[c].iter().copied().filter(|&k| k != r).collect();
        let mut shrunk = false;
        for k in others {
            let a = self.rows[k][&c].clone();
            let q = a.div_floor(&pivot);
            self.add_row_multiple(k, r, &(-q));
            if self.rows[k].contains_key(&c) {
                shrunk = true;
            }
        }
        if shrunk {
            return None;
        }
        // Row entries: column operations. Column `c` is now zero outside row `r`,
        // so clearing a divisible entry only touches row `r`.
        let row_entries: Vec<(usize, BigInt)> =
            self.rows[r].iter().filter(|(&j, _)| j != c).map(|(&j, v)| (j, v.clone())).collect();
        for (j, a) in &row_entries {
            if !(a % &pivot).is_zero() {
                let q = a.div_floor(&pivot);
                self.add_col_multiple(*j, c, &(-q));
                shrunk = true;
            }
        }
        if shrunk {
            return None;
        }
        for (j, _) in row_entries {
            self.col_rows[j].remove(&r);
        }
        self.rows[r].clear();
        self.col_rows[c].remove(&r);
        Some(pivot.abs())
    }

    /// `row[target] += factor * row[source]`.
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        let source_row: Vec<(usize, BigInt)> = self.rows[source].iter().map(|(&j, v)| (j, v.clone())).collect();
        let target_row = &mut self.rows[target];
        for (j, v) in source_row {
            let slot = target_row.entry(j).or_insert_with(BigInt::zero);
            let was_zero = slot.is_zero();
            *slot += factor * v;
            if slot.is_zero() {
                target_row.remove(&j);
                self.col_rows[j].remove(&target);
            } else if was_zero {
                self.col_rows[j].insert(target);
            }
        }
    }

    /// `col[target] += factor * col[source]`.
    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        let source_rows: Vec<usize> = self.col_rows[source].iter().copied().collect();
        for k in source_rows {
            let v = self.rows[k][&source].clone();
            let slot = self.rows[k].entry(target).or_insert_with(BigInt::zero);
            let was_zero = slot.is_zero();
            *slot += factor * v;
            if slot.is_zero() {
                self.rows[k].remove(&target);
                self.col_rows[target].remove(&k);
            } else if was_zero {
                self.col_rows[target].insert(k);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use systolic_oracles::naive_smith;

    fn factors(m: &[Vec<i64>]) -> Vec<i64> {
        smith_normal_form(&SparseMatrix::from_dense(m))
            .invariant_factors
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn identity_and_diagonal() {
        assert_eq!(factors(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), vec![1, 1, 1]);
        assert_eq!(factors(&[vec![2, 0], vec![0, 4]]), vec![2, 4]);
        assert_eq!(factors(&[vec![3, 0], vec![0, 5]]), vec![1, 15]);
        assert_eq!(naive_smith(&[vec![3, 0], vec![0, 5]]), vec![1, 15]);
    }

    #[test]
    fn empty_matrices_have_rank_zero() {
        let form = smith_normal_form(&SparseMatrix::zeros(0, 0));
        assert_eq!(form.rank, 0);
        let form = smith_normal_form(&SparseMatrix::zeros(3, 2));
        assert_eq!((form.rank, form.nullity()), (0, 2));
    }

    #[test]
    fn chain_normalisation() {
        let chain = divisibility_chain(vec![6.into(), 4.into(), 1.into(), (-9).into()]);
        let chain: Vec<i64> = chain.iter().map(|d| i64::try_from(d).unwrap()).collect();
        assert_eq!(chain, vec![1, 1, 6, 36]);
    }

    #[test]
    fn large_entries_stay_exact() {
        let big = 1i64 << 40;
        let m = vec![vec![big, big + 1], vec![big - 1, big]];
        // det = big^2 - (big^2 - 1) = 1
        assert_eq!(factors(&m), vec![1, 1]);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..=6, 1usize..=6)
            .prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r))
    }

    proptest! {
        #[test]
        fn matches_naive_oracle(m in small_matrix()) {
            prop_assert_eq!(factors(&m), naive_smith(&m));
        }

        #[test]
        fn transpose_invariant(m in small_matrix()) {
            let a = SparseMatrix::from_dense(&m);
            prop_assert_eq!(
                smith_normal_form(&a).invariant_factors,
                smith_normal_form(&a.transpose()).invariant_factors
            );
        }

        #[test]
        fn sign_flip_invariant(m in small_matrix(), seed in any::<u64>()) {
            let a = SparseMatrix::from_dense(&m);
            let rn: Vec<bool> = (0..a.row_count()).map(|i| (seed >> (i % 64)) & 1 == 1).collect();
            let cn: Vec<bool> = (0..a.col_count()).map(|i| (seed >> ((i + 7) % 64)) & 1 == 1).collect();
            prop_assert_eq!(
                smith_normal_form(&a).invariant_factors,
                smith_normal_form(&a.sign_flipped(&rn, &cn)).invariant_factors
            );
        }
    }
}
