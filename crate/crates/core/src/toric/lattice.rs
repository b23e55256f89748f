//! Exact integer linear algebra for kernel lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn to_big(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Rank over the rationals.
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in (r + 1)..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] / &pivot;
            for j in c..ncols {
                let delta = &factor * &m[r][j];
                m[i][j] -= delta;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Basis of `{c in Z^n : A c = 0}`.
///
/// Unimodular column operations bring `A` to column echelon form while the
/// same operations are applied to the identity; the transformed identity
/// columns sitting under zero columns of `A` span the kernel, and the span is
/// saturated because the transform is invertible over the integers.
pub fn integer_kernel(a: &[Vec<BigInt>], ncols: usize) -> IntMatrix {
    let nrows = a.len();
    // columns of the stacked matrix [A; I]
    let mut cols: Vec<Vec<BigInt>> = (0..ncols)
        .map(|j| {
            let mut col: Vec<BigInt> = a.iter().map(|row| row[j].clone()).collect();
            col.extend((0..ncols).map(|k| {
                if k == j {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
            col
        })
        .collect();
    let mut pivot_col = 0;
    for row in 0..nrows {
        if pivot_col == ncols {
            break;
        }
        for j in (pivot_col + 1)..ncols {
            if cols[j][row].is_zero() {
                continue;
            }
            if cols[pivot_col][row].is_zero() {
                cols.swap(pivot_col, j);
                continue;
            }
            // [p q] <- [p q] * [[x, -b/g], [y, a/g]] with x a + y b = g
            let a_val = cols[pivot_col][row].clone();
            let b_val = cols[j][row].clone();
            let egcd = a_val.extended_gcd(&b_val);
            let (g, x, y) = (egcd.gcd, egcd.x, egcd.y);
            let (u, v) = (-(&b_val / &g), &a_val / &g);
            let p = std::mem::take(&mut cols[pivot_col]);
            let q = std::mem::take(&mut cols[j]);
            cols[pivot_col] = p.iter().zip(&q).map(|(pi, qi)| &x * pi + &y * qi).collect();
            cols[j] = p.iter().zip(&q).map(|(pi, qi)| &u * pi + &v * qi).collect();
        }
        if !cols[pivot_col][row].is_zero() {
            pivot_col += 1;
        }
    }
    cols[pivot_col..]
        .iter()
        .map(|c| c[nrows..].to_vec())
        .collect()
}

/// Row Hermite normal form of the lattice spanned by `rows`: positive
/// pivots, entries above each pivot reduced into `[0, pivot)`, zero rows
/// dropped. Two generating sets of the same lattice give the same output.
pub fn hermite_rows(rows: &[Vec<BigInt>]) -> IntMatrix {
    let mut m: IntMatrix = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        // gcd-combine everything below into row r
        for i in (r + 1)..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            if m[r][c].is_zero() {
                m.swap(r, i);
                continue;
            }
            let a_val = m[r][c].clone();
            let b_val = m[i][c].clone();
            let egcd = a_val.extended_gcd(&b_val);
            let (g, x, y) = (egcd.gcd, egcd.x, egcd.y);
            let (u, v) = (-(&b_val / &g), &a_val / &g);
            let p = std::mem::take(&mut m[r]);
            let q = std::mem::take(&mut m[i]);
            m[r] = p.iter().zip(&q).map(|(pi, qi)| &x * pi + &y * qi).collect();
            m[i] = p.iter().zip(&q).map(|(pi, qi)| &u * pi + &v * qi).collect();
        }
        if m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            for x in m[r].iter_mut() {
                *x = -x.clone();
            }
        }
        let pivot = m[r][c].clone();
        for i in 0..r {
            let q = m[i][c].div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            for j in 0..ncols {
                let delta = &q * &m[r][j];
                m[i][j] -= delta;
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

/// Nonzero elementary divisors of an integer matrix, in divisibility order.
pub fn smith_diagonal(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut m: IntMatrix = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..nrows.min(ncols) {
        // smallest nonzero entry of the remaining block as pivot
        let Some((pi, pj)) = (t..nrows)
            .flat_map(|i| (t..ncols).map(move |j| (i, j)))
            .filter(|&(i, j)| !m[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| m[i][j].abs().cmp(&m[k][l].abs()))
        else {
            break;
        };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut done = true;
            for i in (t + 1)..nrows {
                let q = m[i][t].div_floor(&m[t][t]);
                if !q.is_zero() {
                    for j in t..ncols {
                        let delta = &q * &m[t][j];
                        m[i][j] -= delta;
                    }
                }
            }
            for j in (t + 1)..ncols {
                let q = m[t][j].div_floor(&m[t][t]);
                if !q.is_zero() {
                    for row in m.iter_mut().skip(t) {
                        let delta = &q * &row[t];
                        row[j] -= delta;
                    }
                }
            }
            // a nonzero remainder in row/column t becomes the new pivot
            let remainder = (t + 1..nrows)
                .map(|i| (i, t))
                .chain((t + 1..ncols).map(|j| (t, j)))
                .find(|&(i, j)| !m[i][j].is_zero());
            if let Some((i, j)) = remainder {
                m.swap(t, i);
                for row in m.iter_mut() {
                    row.swap(t, j);
                }
                done = false;
            }
            if done {
                // enforce divisibility against the rest of the block
                let bad = (t + 1..nrows)
                    .flat_map(|i| (t + 1..ncols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&m[i][j] % &m[t][t]).is_zero());
                match bad {
                    Some((i, _)) => {
                        for j in t..ncols {
                            let v = m[i][j].clone();
                            m[t][j] += v;
                        }
                    }
                    None => break,
                }
            }
        }
        diag.push(m[t][t].abs());
    }
    diag
}
