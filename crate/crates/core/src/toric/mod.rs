//! Standard graded toric rings `K[A]` given by integer matrices.
//!
//! The columns of `A` are the exponent vectors of the algebra generators. A
//! presentation is standard graded when some rational row vector `λ` gives
//! every column degree one; `λ` is kept as a certificate.

pub mod lattice;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use lattice::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ToricError {
    #[error("matrix has no columns")]
    Empty,
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("not standard graded: (1,...,1) is not in the row space of the matrix")]
    NotStandardGraded,
    #[error("point enumeration exceeded the cap of {cap} points at degree {degree}")]
    ResourceCap { cap: usize, degree: usize },
    #[error("cannot parse matrix: {0}")]
    Parse(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricPresentation {
    /// Row-major `r x n` matrix.
    rows: Vec<Vec<i64>>,
    ncols: usize,
    grading: Vec<BigRational>,
}

/// Integer basis of `{c : A c = 0}` in Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    pub vectors: IntMatrix,
}

impl LatticeBasis {
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }
}

/// Distinct semigroup elements per degree: `points[n]` are the sums of `n`
/// columns (with repetition), sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupCensus {
    pub points: Vec<Vec<Vec<i64>>>,
}

impl SemigroupCensus {
    pub fn counts(&self) -> Vec<usize> {
        self.points.iter().map(Vec::len).collect()
    }
}

/// Solves `λ A = (1, ..., 1)` over the rationals, free variables set to zero.
fn grading_certificate(rows: &[Vec<i64>], ncols: usize) -> Option<Vec<BigRational>> {
    let nvars = rows.len();
    // augmented system A^T λ = 1, one equation per column of A
    let mut m: Vec<Vec<BigRational>> = (0..ncols)
        .map(|j| {
            let mut eq: Vec<BigRational> = rows
                .iter()
                .map(|r| BigRational::from_integer(BigInt::from(r[j])))
                .collect();
            eq.push(BigRational::one());
            eq
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nvars {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x / &pivot;
        }
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let factor = m[i][c].clone();
            for j in 0..=nvars {
                let delta = &factor * &m[r][j];
                m[i][j] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|eq| !eq[nvars].is_zero()) {
        return None;
    }
    let mut lambda = vec![BigRational::zero(); nvars];
    for (i, &c) in pivots.iter().enumerate() {
        lambda[c] = m[i][nvars].clone();
    }
    Some(lambda)
}

impl ToricPresentation {
    pub fn validate(rows: Vec<Vec<i64>>) -> Result<Self, ToricError> {
        let ncols = rows.first().map_or(0, Vec::len);
        if ncols == 0 {
            return Err(ToricError::Empty);
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != ncols {
                return Err(ToricError::Ragged {
                    row: i,
                    found: r.len(),
                    expected: ncols,
                });
            }
        }
        let grading = grading_certificate(&rows, ncols).ok_or(ToricError::NotStandardGraded)?;
        Ok(ToricPresentation {
            rows,
            ncols,
            grading,
        })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        Self::validate(rows).expect("identity is standard graded")
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        (0..self.ncols).map(|j| self.column(j)).collect()
    }

    pub fn grading(&self) -> &[BigRational] {
        &self.grading
    }

    /// Degree of an exponent vector under the grading certificate.
    pub fn degree_of(&self, v: &[i64]) -> BigRational {
        self.grading
            .iter()
            .zip(v)
            .map(|(l, &x)| l * BigRational::from_integer(BigInt::from(x)))
            .sum()
    }

    pub fn certificate_holds(&self) -> bool {
        (0..self.ncols).all(|j| self.degree_of(&self.column(j)).is_one())
    }

    /// `K[A] ⊗ K[B] = K[C]` with `C = diag(A, B)`.
    pub fn tensor(&self, other: &ToricPresentation) -> ToricPresentation {
        let (n, m) = (self.ncols, other.ncols);
        let mut rows = Vec::with_capacity(self.nrows() + other.nrows());
        for r in &self.rows {
            let mut row = r.clone();
            row.extend(std::iter::repeat_n(0, m));
            rows.push(row);
        }
        for r in &other.rows {
            let mut row = vec![0; n];
            row.extend_from_slice(r);
            rows.push(row);
        }
        let mut grading = self.grading.clone();
        grading.extend_from_slice(&other.grading);
        ToricPresentation {
            rows,
            ncols: n + m,
            grading,
        }
    }

    /// `K[A] # K[B]`: column `(i, j)` is `a_i` stacked over `b_j`, in
    /// row-major order of `(i, j)`.
    pub fn segre(&self, other: &ToricPresentation) -> ToricPresentation {
        let (n, m) = (self.ncols, other.ncols);
        let mut rows = vec![Vec::with_capacity(n * m); self.nrows() + other.nrows()];
        for i in 0..n {
            for j in 0..m {
                for (k, r) in self.rows.iter().enumerate() {
                    rows[k].push(r[i]);
                }
                for (k, r) in other.rows.iter().enumerate() {
                    rows[self.nrows() + k].push(r[j]);
                }
            }
        }
        let mut grading = self.grading.clone();
        grading.extend(std::iter::repeat_n(BigRational::zero(), other.nrows()));
        ToricPresentation {
            rows,
            ncols: n * m,
            grading,
        }
    }

    pub fn rank(&self) -> usize {
        lattice::rank(&lattice::to_big(&self.rows))
    }

    /// Integer kernel of the matrix, normalized to Hermite form.
    pub fn kernel_lattice(&self) -> LatticeBasis {
        let a = lattice::to_big(&self.rows);
        let raw = lattice::integer_kernel(&a, self.ncols);
        LatticeBasis {
            vectors: lattice::hermite_rows(&raw),
        }
    }

    /// Semigroup elements of degree `0..=max_degree`, failing once more than
    /// `cap` points have been produced in total.
    pub fn census(
        &self,
        max_degree: usize,
        cap: Option<usize>,
    ) -> Result<SemigroupCensus, ToricError> {
        let columns: BTreeSet<Vec<i64>> = self.columns().into_iter().collect();
        let mut points = vec![vec![vec![0; self.nrows()]]];
        let mut total = 1usize;
        for degree in 1..=max_degree {
            let mut next = BTreeSet::new();
            for p in &points[degree - 1] {
                for c in &columns {
                    next.insert(p.iter().zip(c).map(|(x, y)| x + y).collect::<Vec<i64>>());
                }
                if let Some(cap) = cap {
                    if total + next.len() > cap {
                        return Err(ToricError::ResourceCap { cap, degree });
                    }
                }
            }
            total += next.len();
            points.push(next.into_iter().collect());
        }
        Ok(SemigroupCensus { points })
    }
}

/// Parses the matrix file format: a header line `r n` followed by `r` lines
/// of `n` integers.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<i64>>, ToricError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| ToricError::Parse("missing header line".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| ToricError::Parse(format!("bad header token `{t}`")))
        })
        .collect::<Result<_, _>>()?;
    let [r, n] = dims[..] else {
        return Err(ToricError::Parse(format!(
            "header `{header}` must be `r n`"
        )));
    };
    let mut rows = Vec::with_capacity(r);
    for i in 0..r {
        let line = lines
            .next()
            .ok_or_else(|| ToricError::Parse(format!("expected {r} rows, found {i}")))?;
        let row: Vec<i64> = line
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| ToricError::Parse(format!("bad entry `{t}` in row {}", i + 1)))
            })
            .collect::<Result<_, _>>()?;
        if row.len() != n {
            return Err(ToricError::Ragged {
                row: i,
                found: row.len(),
                expected: n,
            });
        }
        rows.push(row);
    }
    if let Some(extra) = lines.next() {
        return Err(ToricError::Parse(format!(
            "unexpected trailing line `{extra}`"
        )));
    }
    Ok(rows)
}

pub fn format_matrix(rows: &[Vec<i64>]) -> String {
    let n = rows.first().map_or(0, Vec::len);
    let mut out = format!("{} {}\n", rows.len(), n);
    for r in rows {
        let parts: Vec<String> = r.iter().map(i64::to_string).collect();
        out.push_str(&parts.join(" "));
        out.push('\n');
    }
    out
}

impl fmt::Display for ToricPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_matrix(&self.rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn twisted_cubic() -> ToricPresentation {
        ToricPresentation::validate(vec![vec![1, 1, 1], vec![0, 1, 2]]).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert_eq!(ToricPresentation::identity(2).grading(), &[q(1), q(1)]);
        assert_eq!(twisted_cubic().grading(), &[q(1), q(0)]);
        assert_eq!(
            ToricPresentation::validate(vec![vec![1, 2]]),
            Err(ToricError::NotStandardGraded)
        );
        assert_eq!(ToricPresentation::validate(vec![]), Err(ToricError::Empty));
        assert!(matches!(
            ToricPresentation::validate(vec![vec![1, 0], vec![1]]),
            Err(ToricError::Ragged { row: 1, .. })
        ));
    }

    #[test]
    fn rational_grading_certificate() {
        // columns (2,0), (0,2), (1,1): λ = (1/2, 1/2)
        let p = ToricPresentation::validate(vec![vec![2, 0, 1], vec![0, 2, 1]]).unwrap();
        assert!(p.certificate_holds());
        assert_eq!(
            p.grading(),
            &[
                BigRational::new(1.into(), 2.into()),
                BigRational::new(1.into(), 2.into())
            ]
        );
    }

    #[test]
    fn tensor_examples() {
        let i2 = ToricPresentation::identity(2);
        let t = i2.tensor(&i2);
        assert_eq!(t, ToricPresentation::identity(4));
        assert_eq!(twisted_cubic().tensor(&i2).ncols(), 5);
        assert_eq!(
            twisted_cubic()
                .tensor(&twisted_cubic())
                .kernel_lattice()
                .rank(),
            2
        );
    }

    #[test]
    fn segre_examples() {
        let i2 = ToricPresentation::identity(2);
        let s = i2.segre(&i2);
        assert_eq!(
            s.columns(),
            vec![
                vec![1, 0, 1, 0],
                vec![1, 0, 0, 1],
                vec![0, 1, 1, 0],
                vec![0, 1, 0, 1]
            ]
        );
        assert!(s.certificate_holds());
        let k = s.kernel_lattice();
        assert_eq!(
            k.vectors,
            vec![vec![
                BigInt::from(1),
                BigInt::from(-1),
                BigInt::from(-1),
                BigInt::from(1)
            ]]
        );

        let single = ToricPresentation::validate(vec![vec![1]]).unwrap();
        let c = twisted_cubic();
        let cs = c.segre(&single);
        assert_eq!(cs.ncols(), 3);
        assert_eq!(cs.kernel_lattice().rank(), c.ncols() - c.rank());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(ToricPresentation::identity(2).kernel_lattice().rank(), 0);
        let k = twisted_cubic().kernel_lattice();
        assert_eq!(
            k.vectors,
            vec![vec![BigInt::from(1), BigInt::from(-2), BigInt::from(1)]]
        );
        // leading entry positive
        assert!(k.vectors[0]
            .iter()
            .find(|x| !x.is_zero())
            .unwrap()
            .is_positive());
    }

    #[test]
    fn census_examples() {
        let i2 = ToricPresentation::identity(2);
        assert_eq!(i2.census(3, None).unwrap().counts(), vec![1, 2, 3, 4]);
        assert_eq!(
            i2.segre(&i2).census(2, None).unwrap().counts(),
            vec![1, 4, 9]
        );
        assert_eq!(
            twisted_cubic().census(2, None).unwrap().counts(),
            vec![1, 3, 5]
        );
        assert_eq!(
            i2.census(10, Some(20)),
            Err(ToricError::ResourceCap { cap: 20, degree: 5 })
        );
    }

    #[test]
    fn matrix_file_format() {
        let text = "2 3\n1 1 1\n0 1 2\n";
        let rows = parse_matrix(text).unwrap();
        assert_eq!(rows, vec![vec![1, 1, 1], vec![0, 1, 2]]);
        assert_eq!(format_matrix(&rows), text);
        assert!(parse_matrix("2 3\n1 1 1\n").is_err());
        assert!(parse_matrix("1 2\n1 x\n").is_err());
        assert!(matches!(
            parse_matrix("1 2\n1 2 3\n"),
            Err(ToricError::Ragged { .. })
        ));
    }
}
