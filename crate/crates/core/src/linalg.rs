//! Exact sparse linear algebra: ranks over ℚ and 𝔽_p, and Smith normal
//! form over ℤ with arbitrary-precision entries.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A sparse integer matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, i64>>,
}

impl SparseMatrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, rows: vec![BTreeMap::new(); nrows] }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Adds `v` to entry `(r, c)`.
    pub fn add(&mut self, r: usize, c: usize, v: i64) {
        assert!(r < self.nrows && c < self.ncols, "entry ({r},{c}) outside {}x{}", self.nrows, self.ncols);
        if v == 0 {
            return;
        }
        let e = self.rows[r].entry(c).or_insert(0);
        *e += v;
        if *e == 0 {
            self.rows[r].remove(&c);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.rows[r].get(&c).copied().unwrap_or(0)
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.rows[r].iter().map(|(&c, &v)| (c, v))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch");
        let mut out = SparseMatrix::zero(self.nrows, other.ncols);
        for (r, row) in self.rows.iter().enumerate() {
            for (&k, &v) in row {
                for (&c, &w) in &other.rows[k] {
                    out.add(r, c, v * w);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.ncols, self.nrows);
        for (r, row) in self.rows.iter().enumerate() {
            for (&c, &v) in row {
                out.add(c, r, v);
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        (0..self.nrows).map(|r| (0..self.ncols).map(|c| self.get(r, c)).collect()).collect()
    }
}

/// Rank over ℚ by exact row echelon insertion.
pub fn rank_rational(m: &SparseMatrix) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, BigRational>> = BTreeMap::new();
    for row in &m.rows {
        let mut v: BTreeMap<usize, BigRational> =
            row.iter().map(|(&c, &x)| (c, BigRational::from_integer(BigInt::from(x)))).collect();
        while let Some((&lead, coeff)) = v.iter().next() {
            match pivots.get(&lead) {
                None => {
                    let inv = coeff.recip();
                    for x in v.values_mut() {
                        *x *= &inv;
                    }
                    pivots.insert(lead, v);
                    break;
                }
                Some(p) => {
                    let f = coeff.clone();
                    for (&c, x) in p {
                        let e = v.entry(c).or_insert_with(BigRational::zero);
                        *e -= &f * x;
                        if e.is_zero() {
                            v.remove(&c);
                        }
                    }
                }
            }
        }
    }
    pivots.len()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, so a^{p-2}
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Rank over 𝔽_p for a prime `p`.
pub fn rank_mod_p(m: &SparseMatrix, p: u64) -> usize {
    let red = |x: i64| x.rem_euclid(p as i64) as u64;
    let mut pivots: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
    for row in &m.rows {
        let mut v: BTreeMap<usize, u64> = row.iter().map(|(&c, &x)| (c, red(x))).filter(|&(_, x)| x != 0).collect();
        while let Some((&lead, &coeff)) = v.iter().next() {
            match pivots.get(&lead) {
                None => {
                    let inv = inv_mod(coeff, p);
                    for x in v.values_mut() {
                        *x = (*x as u128 * inv as u128 % p as u128) as u64;
                    }
                    pivots.insert(lead, v);
                    break;
                }
                Some(piv) => {
                    for (&c, &x) in piv {
                        let e = v.entry(c).or_insert(0);
                        let sub = (coeff as u128 * x as u128 % p as u128) as u64;
                        *e = (*e + p - sub) % p;
                        if *e == 0 {
                            v.remove(&c);
                        }
                    }
                }
            }
        }
    }
    pivots.len()
}

/// Nonzero invariant factors `d_1 | d_2 | ...` of the Smith normal form.
///
/// Unit pivots are eliminated sparsely first; the remaining block is
/// diagonalized densely with big integers.
pub fn smith_invariants(m: &SparseMatrix) -> Vec<BigInt> {
    let mut rows: Vec<BTreeMap<usize, BigInt>> =
        m.rows.iter().map(|r| r.iter().map(|(&c, &v)| (c, BigInt::from(v))).collect()).collect();
    let mut in_col: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.ncols];
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            in_col[c].insert(r);
        }
    }
    let mut alive = vec![true; m.nrows];
    let mut units = 0usize;
    loop {
        let mut found = None;
        for r in 0..rows.len() {
            if !alive[r] {
                continue;
            }
            let best = rows[r]
                .iter()
                .filter(|(_, v)| v.abs().is_one())
                .min_by_key(|(&c, _)| in_col[c].len())
                .map(|(&c, _)| c);
            if let Some(c) = best {
                found = Some((r, c));
                break;
            }
        }
        let Some((r, c)) = found else { break };
        let pivot_row = std::mem::take(&mut rows[r]);
        let sign = pivot_row[&c].clone();
        let others: Vec<usize> = in_col[c].iter().copied().filter(|&x| x != r).collect();
        for o in others {
            let f = &rows[o][&c] * &sign;
            for (&cc, v) in &pivot_row {
                let e = rows[o].entry(cc).or_insert_with(BigInt::zero);
                *e -= &f * v;
                if e.is_zero() {
                    rows[o].remove(&cc);
                    in_col[cc].remove(&o);
                } else {
                    in_col[cc].insert(o);
                }
            }
        }
        for &cc in pivot_row.keys() {
            in_col[cc].remove(&r);
        }
        alive[r] = false;
        units += 1;
    }
    let live_rows: Vec<usize> = (0..rows.len()).filter(|&r| alive[r] && !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..m.ncols).filter(|&c| !in_col[c].is_empty()).collect();
    let col_pos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut dense = vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
    for (i, &r) in live_rows.iter().enumerate() {
        for (c, v) in &rows[r] {
            dense[i][col_pos[c]] = v.clone();
        }
    }
    let mut out = vec![BigInt::one(); units];
    out.extend(dense_smith(dense));
    out
}

/// Invariant factors of a dense matrix (destroys it).
pub fn dense_smith(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let nr = a.len();
    let nc = if nr == 0 { 0 } else { a[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..nr {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (head, tail) = a.split_at_mut(i);
                for j in t..nc {
                    let d = &q * &head[t][j];
                    tail[0][j] -= d;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..nc {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let d = &q * &row[t];
                    row[j] -= d;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                move_min_to_pivot(&mut a, t);
                continue;
            }
            // pivot must divide the whole trailing block
            let bad = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    for j in t..nc {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// Moves the smallest nonzero entry of row `t` / column `t` to `(t, t)`.
fn move_min_to_pivot(a: &mut [Vec<BigInt>], t: usize) {
    let nr = a.len();
    let nc = a[0].len();
    let mut best = (t, t);
    for i in t..nr {
        if !a[i][t].is_zero() && (a[best.0][best.1].is_zero() || a[i][t].abs() < a[best.0][best.1].abs()) {
            best = (i, t);
        }
    }
    for j in t..nc {
        if !a[t][j].is_zero() && (a[best.0][best.1].is_zero() || a[t][j].abs() < a[best.0][best.1].abs()) {
            best = (t, j);
        }
    }
    a.swap(t, best.0);
    for row in a.iter_mut() {
        row.swap(t, best.1);
    }
}
