//! Exact linear algebra over the rationals used by the Hom solvers.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Zero};

/// A linear map between graded pieces, stored column by column: column `j`
/// lists the nonzero coordinates `(row, coefficient)` of the image of basis
/// vector `j`, sorted by row.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinearMap {
    rows: usize,
    cols: Vec<Vec<(usize, i64)>>,
}

impl LinearMap {
    pub fn new(rows: usize, mut cols: Vec<Vec<(usize, i64)>>) -> Self {
        for col in &mut cols {
            col.retain(|&(_, c)| c != 0);
            col.sort_unstable_by_key(|&(r, _)| r);
        }
        LinearMap { rows, cols }
    }

    pub fn zero(rows: usize, ncols: usize) -> Self {
        LinearMap {
            rows,
            cols: vec![Vec::new(); ncols],
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.cols[j]
    }

    /// Rows of the map: `transpose()[i]` lists `(column, coefficient)`.
    pub fn transpose(&self) -> Vec<Vec<(usize, i64)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, c) in col {
                rows[i].push((j, c));
            }
        }
        rows
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap) -> LinearMap {
        let cols = inner
            .cols
            .iter()
            .map(|col| {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for &(k, c) in col {
                    for &(i, d) in &self.cols[k] {
                        *acc.entry(i).or_insert(0) += c * d;
                    }
                }
                acc.into_iter().collect()
            })
            .collect();
        LinearMap::new(self.rows, cols)
    }

    /// Kronecker product; basis pair `(i, j)` sits at index `i * other_dim + j`.
    pub fn kron(&self, other: &LinearMap) -> LinearMap {
        let mut cols = Vec::with_capacity(self.ncols() * other.ncols());
        for a in &self.cols {
            for b in &other.cols {
                let mut col = Vec::with_capacity(a.len() * b.len());
                for &(i, c) in a {
                    for &(k, d) in b {
                        col.push((i * other.rows + k, c * d));
                    }
                }
                cols.push(col);
            }
        }
        LinearMap::new(self.rows * other.rows, cols)
    }

    /// Reindexes source and target bases: basis vector `j` of the source
    /// moves to `src[j]`, row `i` moves to `dst[i]`.
    pub fn permute(&self, src: &[usize], dst: &[usize]) -> LinearMap {
        let mut cols = vec![Vec::new(); self.ncols()];
        for (j, col) in self.cols.iter().enumerate() {
            cols[src[j]] = col.iter().map(|&(i, c)| (dst[i], c)).collect();
        }
        LinearMap::new(self.rows, cols)
    }
}

type Small = Ratio<i64>;

/// Incremental row echelon form over the rationals. Rows are kept sparse and
/// reduced only by their leading entries, which keeps fill-in low for the
/// two-term equations produced by monomial actions.
///
/// Arithmetic runs in checked `i64` fractions and moves every stored row to
/// arbitrary precision the first time an operation would overflow.
#[derive(Default)]
pub struct SparseEchelon {
    small: HashMap<usize, Vec<(usize, Small)>>,
    big: HashMap<usize, Vec<(usize, BigRational)>>,
    promoted: bool,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.small.len() + self.big.len()
    }

    /// Adds a row given as `(column, coefficient)` pairs, returning whether
    /// it was independent of the rows already present.
    pub fn insert(&mut self, entries: impl IntoIterator<Item = (usize, i64)>) -> bool {
        let mut row: Vec<(usize, i64)> = entries.into_iter().collect();
        row.sort_unstable_by_key(|&(c, _)| c);
        let mut merged: Vec<(usize, i64)> = Vec::with_capacity(row.len());
        for (c, v) in row {
            match merged.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|&(_, v)| v != 0);
        if !self.promoted {
            let small_row = merged
                .iter()
                .map(|&(c, v)| (c, Small::from_integer(v)))
                .collect();
            if let Some(independent) = reduce_small(&mut self.small, small_row) {
                return independent;
            }
            self.promote();
        }
        let big_row = merged.into_iter().map(|(c, v)| (c, rational(v))).collect();
        reduce_big(&mut self.big, big_row)
    }

    fn promote(&mut self) {
        self.promoted = true;
        for (lead, row) in self.small.drain() {
            let row = row
                .into_iter()
                .map(|(c, v)| {
                    (
                        c,
                        BigRational::new(BigInt::from(*v.numer()), BigInt::from(*v.denom())),
                    )
                })
                .collect();
            self.big.insert(lead, row);
        }
    }
}

/// `None` on overflow, with the pivots unchanged.
fn reduce_small(
    pivots: &mut HashMap<usize, Vec<(usize, Small)>>,
    mut row: Vec<(usize, Small)>,
) -> Option<bool> {
    loop {
        let Some(&(lead, coeff)) = row.first() else {
            return Some(false);
        };
        match pivots.get(&lead) {
            Some(pivot) => {
                let mut out = Vec::with_capacity(row.len() + pivot.len());
                let (mut i, mut j) = (0, 0);
                while i < row.len() || j < pivot.len() {
                    if j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0) {
                        out.push(row[i]);
                        i += 1;
                    } else if i == row.len() || pivot[j].0 < row[i].0 {
                        out.push((
                            pivot[j].0,
                            Small::zero().checked_sub(&coeff.checked_mul(&pivot[j].1)?)?,
                        ));
                        j += 1;
                    } else {
                        let v = row[i].1.checked_sub(&coeff.checked_mul(&pivot[j].1)?)?;
                        if !v.is_zero() {
                            out.push((row[i].0, v));
                        }
                        i += 1;
                        j += 1;
                    }
                }
                row = out;
            }
            None => {
                let normalized = row
                    .iter()
                    .map(|&(c, v)| v.checked_div(&coeff).map(|v| (c, v)))
                    .collect::<Option<_>>()?;
                pivots.insert(lead, normalized);
                return Some(true);
            }
        }
    }
}

fn reduce_big(
    pivots: &mut HashMap<usize, Vec<(usize, BigRational)>>,
    mut row: Vec<(usize, BigRational)>,
) -> bool {
    loop {
        let Some((lead, coeff)) = row.first().cloned() else {
            return false;
        };
        match pivots.get(&lead) {
            Some(pivot) => {
                let mut out = Vec::with_capacity(row.len() + pivot.len());
                let (mut i, mut j) = (0, 0);
                while i < row.len() || j < pivot.len() {
                    if j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0) {
                        out.push(row[i].clone());
                        i += 1;
                    } else if i == row.len() || pivot[j].0 < row[i].0 {
                        out.push((pivot[j].0, -(&coeff * &pivot[j].1)));
                        j += 1;
                    } else {
                        let v = &row[i].1 - &coeff * &pivot[j].1;
                        if !v.is_zero() {
                            out.push((row[i].0, v));
                        }
                        i += 1;
                        j += 1;
                    }
                }
                row = out;
            }
            None => {
                let inv = BigRational::one() / coeff;
                let normalized = row.into_iter().map(|(c, v)| (c, v * &inv)).collect();
                pivots.insert(lead, normalized);
                return true;
            }
        }
    }
}

/// Rank of a dense rational matrix by Gaussian elimination.
pub fn dense_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        let (top, bottom) = m.split_at_mut(r + 1);
        let prow = &top[r];
        for row in bottom.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let factor = &row[c] / &pivot;
            for j in c..ncols {
                if !prow[j].is_zero() {
                    let delta = &factor * &prow[j];
                    row[j] -= delta;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

pub fn rational(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rational(x)).collect())
            .collect()
    }

    #[test]
    fn sparse_and_dense_rank_agree() {
        let rows: &[&[i64]] = &[
            &[1, -1, 0, 0],
            &[0, 1, -1, 0],
            &[1, 0, -1, 0],
            &[0, 0, 2, 3],
            &[2, 0, 0, 3],
        ];
        let mut ech = SparseEchelon::new();
        for r in rows {
            ech.insert(r.iter().enumerate().map(|(c, &v)| (c, v)));
        }
        assert_eq!(ech.rank(), 3);
        assert_eq!(dense_rank(dense(rows)), 3);
    }

    #[test]
    fn overflow_moves_to_big_arithmetic() {
        let big = i64::MAX / 2;
        let rows: &[&[i64]] = &[
            &[1, big, 0],
            &[1, 0, big],
            &[0, 1, 1],
            &[3, big, big],
            &[0, 7, 0],
        ];
        let mut ech = SparseEchelon::new();
        for r in rows {
            ech.insert(r.iter().enumerate().map(|(c, &v)| (c, v)));
        }
        assert!(ech.promoted);
        assert_eq!(ech.rank(), dense_rank(dense(rows)));
    }

    #[test]
    fn zero_rows_are_dependent() {
        let mut ech = SparseEchelon::new();
        assert!(!ech.insert(vec![(3, 1), (3, -1)]));
        assert!(ech.insert(vec![(2, 5)]));
        assert!(!ech.insert(vec![(2, -1)]));
    }

    #[test]
    fn kron_and_compose() {
        // multiplication by x on span{1, x} -> span{x, x^2}
        let x = LinearMap::new(2, vec![vec![(0, 1)], vec![(1, 1)]]);
        let y = LinearMap::new(1, vec![vec![(0, 1)]]);
        let k = x.kron(&y);
        assert_eq!(k.ncols(), 2);
        assert_eq!(k.column(1), &[(1, 1)]);
        let shift = LinearMap::new(2, vec![vec![(1, 1)], vec![]]);
        assert_eq!(shift.compose(&shift), LinearMap::zero(2, 2));
        assert_eq!(shift.transpose(), vec![vec![], vec![(0, 1)]]);
    }
}
