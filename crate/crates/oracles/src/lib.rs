//! Brute-force reference computations.
//!
//! Nothing here shares code with `systolic-core`; each routine is the most
//! direct (and slowest) way to get the answer, so agreement is meaningful.

// Index loops mirror the textbook algorithms.
#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Dense textbook Smith reduction. Returns the invariant factors (nonzero
/// diagonal, divisibility chain) as `i64`.
pub fn naive_smith(matrix: &[Vec<i64>]) -> Vec<i64> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigInt>> = matrix.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the trailing block.
        let mut pos = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && pos.is_none_or(|(pi, pj): (usize, usize)| a[i][j].abs() < a[pi][pj].abs()) {
                    pos = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pos else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut done = true;
        for i in t + 1..rows {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                for j in t..cols {
                    let sub = &q * &a[t][j];
                    a[i][j] -= sub;
                }
            }
            if !a[i][t].is_zero() {
                done = false;
            }
        }
        for j in t + 1..cols {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for i in t..rows {
                    let sub = &q * &a[i][t];
                    a[i][j] -= sub;
                }
            }
            if !a[t][j].is_zero() {
                done = false;
            }
        }
        if !done {
            continue;
        }
        // Pivot must divide the whole trailing block.
        let bad = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
        if let Some((i, _)) = bad {
            for j in t..cols {
                let add = a[i][j].clone();
                a[t][j] += add;
            }
            continue;
        }
        diag.push(a[t][t].abs().to_i64().expect("oracle factor fits in i64"));
        t += 1;
    }
    diag
}

/// gcd of all nonzero minors of maximal nonzero order, by exhaustive
/// enumeration. Returns `(rank, gcd)`; intended for matrices with at most a
/// handful of columns.
pub fn brute_force_minor_gcd(matrix: &[Vec<i64>]) -> (usize, i64) {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    for order in (1..=rows.min(cols)).rev() {
        let mut g = 0i64;
        for rset in combinations(rows, order) {
            for cset in combinations(cols, order) {
                let sub: Vec<Vec<i64>> = rset.iter().map(|&r| cset.iter().map(|&c| matrix[r][c]).collect()).collect();
                g = g.gcd(&determinant(&sub));
            }
        }
        if g != 0 {
            return (order, g);
        }
    }
    (0, 1)
}

/// Laplace expansion along the first row.
pub fn determinant(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * determinant(&minor)
            })
            .sum(),
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Shortest cycle length by enumerating every simple cycle. `None` for forests.
pub fn girth_by_cycle_enumeration(n: usize, edges: &[(usize, usize)]) -> Option<usize> {
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in edges {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    fn extend(adj: &[Vec<bool>], start: usize, cur: usize, len: usize, on_path: &mut [bool], best: &mut Option<usize>) {
        for next in 0..adj.len() {
            if !adj[cur][next] {
                continue;
            }
            if next == start && len >= 3 {
                *best = Some(best.map_or(len, |b| b.min(len)));
            } else if next > start && !on_path[next] {
                on_path[next] = true;
                extend(adj, start, next, len + 1, on_path, best);
                on_path[next] = false;
            }
        }
    }
    let mut best = None;
    for start in 0..n {
        let mut on_path = vec![false; n];
        on_path[start] = true;
        extend(&adj, start, start, 1, &mut on_path, &mut best);
    }
    best
}

/// Linear complexity of a finite sequence: the least `L` for which some
/// `c_1..c_L` satisfy `s_n = sum c_i s_{n-i}` for every `n >= L`. Decided by
/// checking consistency of the (Hankel-structured) linear system for each `L`.
pub fn linear_complexity(seq: &[BigRational]) -> usize {
    let n = seq.len();
    for order in 0..=n {
        let system: Vec<Vec<BigRational>> = (order..n)
            .map(|k| {
                let mut row: Vec<BigRational> = (1..=order).map(|i| seq[k - i].clone()).collect();
                row.push(seq[k].clone());
                row
            })
            .collect();
        if system_is_consistent(system, order) {
            return order;
        }
    }
    n
}

/// Gaussian elimination over the rationals on an augmented matrix with
/// `unknowns` coefficient columns.
fn system_is_consistent(mut rows: Vec<Vec<BigRational>>, unknowns: usize) -> bool {
    let mut rank = 0;
    for col in 0..unknowns {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &pivot;
                for c in col..=unknowns {
                    let sub = &f * &rows[rank][c];
                    rows[r][c] -= sub;
                }
            }
        }
        rank += 1;
    }
    rows[rank..].iter().all(|r| r[unknowns].is_zero())
}

/// Minimum number of `d`-th powers summing to `k`, by exhaustive search over
/// non-increasing part sequences (iterative deepening).
pub fn min_powers_by_search(k: u64, d: u32) -> usize {
    fn fits(rem: u64, parts_left: usize, max_base: u64, d: u32) -> bool {
        if rem == 0 {
            return true;
        }
        if parts_left == 0 {
            return false;
        }
        let mut b = max_base;
        while b >= 1 {
            let p = b.pow(d);
            if p <= rem {
                // Even using only b^d for every remaining part cannot reach rem.
                if p * parts_left as u64 >= rem && fits(rem - p, parts_left - 1, b, d) {
                    return true;
                }
                if p * (parts_left as u64) < rem {
                    return false;
                }
            }
            b -= 1;
        }
        false
    }
    let max_base = (1..).take_while(|b: &u64| b.pow(d) <= k).last().unwrap_or(1);
    (1..).find(|&parts| fits(k, parts, max_base, d)).expect("k is a sum of ones")
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}
