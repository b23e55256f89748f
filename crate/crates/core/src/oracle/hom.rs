//! Degreewise graded Hom into the ring, `Hom^i(M, T) = {φ : φ(M_k) ⊆ T_{k+i}}`.
//!
//! A degree-`i` homomorphism is a family of linear maps `φ_k : M_k -> T_{k+i}`
//! with `φ_{k+1}(g m) = g φ_k(m)` for every degree-one generator `g`; since
//! `T` is generated in degree one this is exactly `T`-linearity.

use num_rational::BigRational;

use super::algebra::dense_block;
use super::linalg::{dense_rank, rational, LinearMap, SparseEchelon};
use super::module::TruncatedModule;
use super::OracleError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeStatus {
    /// No constraint or unknown was dropped; the dimension is `dim Hom^i`.
    Exact,
    /// Truncated, but adding the last fully known layer of constraints did
    /// not change the dimension.
    Stable,
    Inconclusive,
}

impl DegreeStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            DegreeStatus::Exact => "exact",
            DegreeStatus::Stable => "stable",
            DegreeStatus::Inconclusive => "inconclusive",
        }
    }

    /// Usable for a consistency comparison.
    pub fn is_conclusive(self) -> bool {
        self != DegreeStatus::Inconclusive
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomDegree {
    pub degree: i64,
    pub dim: usize,
    pub status: DegreeStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomWindowReport {
    pub degrees: Vec<HomDegree>,
    /// Every degree in the window is exact.
    pub exact: bool,
    pub module_window: (i64, i64),
    pub ring_top: i64,
}

impl HomWindowReport {
    pub fn dim(&self, i: i64) -> Option<usize> {
        self.degrees.iter().find(|d| d.degree == i).map(|d| d.dim)
    }

    /// Nonzero dimensions as `(degree, dim)`.
    pub fn nonzero(&self) -> Vec<(i64, usize)> {
        self.degrees
            .iter()
            .filter(|d| d.dim > 0)
            .map(|d| (d.degree, d.dim))
            .collect()
    }
}

#[derive(Clone, Copy, Debug)]
enum Slot {
    Vars { offset: usize, rows: usize },
    Zero,
    Unknown,
}

struct Layout {
    slots: Vec<Slot>,
    /// Number of variables in slots `0..=idx`.
    through: Vec<usize>,
}

fn layout(m: &TruncatedModule, i: i64, k_max: i64) -> Layout {
    let ring = m.parent();
    let mut slots = Vec::new();
    let mut through = Vec::new();
    let mut nvars = 0;
    for k in m.lo()..=k_max {
        let cols = m.dim(k);
        let slot = if cols == 0 {
            Slot::Zero
        } else {
            match ring.known_dim(k + i) {
                Some(0) => Slot::Zero,
                Some(rows) => {
                    let s = Slot::Vars {
                        offset: nvars,
                        rows,
                    };
                    nvars += rows * cols;
                    s
                }
                None => Slot::Unknown,
            }
        };
        slots.push(slot);
        through.push(nvars);
    }
    Layout { slots, through }
}

/// Solution dimensions of the systems on module degrees `lo..=k`, one entry
/// per `k` in `lo..=k_max`, and whether anything had to be dropped inside
/// that range.
fn solve(m: &TruncatedModule, i: i64, k_max: i64) -> (Vec<usize>, bool) {
    let Layout { slots, through } = layout(m, i, k_max);
    let mut touched = slots.iter().any(|s| matches!(s, Slot::Unknown));
    let mut echelon = SparseEchelon::new();
    let mut prefix = vec![through[0]];
    for k in m.lo()..k_max {
        let idx = (k - m.lo()) as usize;
        touched |= add_layer(m, i, k, slots[idx], slots[idx + 1], &mut echelon);
        prefix.push(through[idx + 1] - echelon.rank());
    }
    (prefix, touched)
}

/// Adds the equations `φ_{k+1}(g m) = g φ_k(m)` for `m` in `M_k`; returns
/// whether they could not be written inside the window.
fn add_layer(
    m: &TruncatedModule,
    i: i64,
    k: i64,
    here: Slot,
    next: Slot,
    echelon: &mut SparseEchelon,
) -> bool {
    let ring = m.parent();
    if matches!(here, Slot::Unknown) || matches!(next, Slot::Unknown) {
        return false;
    }
    let target_dim = match ring.known_dim(k + i + 1) {
        Some(d) => d,
        None => return matches!(here, Slot::Vars { .. }),
    };
    if target_dim == 0 {
        return false;
    }
    let var = |slot: Slot, b: usize, j: usize| match slot {
        Slot::Vars { offset, rows } => offset + j * rows + b,
        _ => unreachable!("only variable slots are indexed"),
    };
    for g in 0..ring.generators() {
        let module_map = m.action(k, g).expect("in-window module action");
        let ring_rows: Vec<Vec<(usize, i64)>> = match here {
            Slot::Vars { .. } => ring
                .action(k + i, g)
                .expect("in-window ring action")
                .transpose(),
            _ => Vec::new(),
        };
        for j in 0..m.dim(k) {
            for b in 0..target_dim {
                let mut row: Vec<(usize, i64)> = Vec::new();
                if let Slot::Vars { .. } = next {
                    for &(l, c) in module_map.column(j) {
                        row.push((var(next, b, l), c));
                    }
                }
                if let Slot::Vars { .. } = here {
                    for &(bp, c) in &ring_rows[b] {
                        row.push((var(here, bp, j), -c));
                    }
                }
                if !row.is_empty() {
                    echelon.insert(row);
                }
            }
        }
    }
    false
}

/// Dimensions of `Hom^i(M, T)` for `i` in `i_lo..=i_hi`, each tagged with how
/// far the truncation can be trusted.
pub fn hom_window(
    m: &TruncatedModule,
    i_lo: i64,
    i_hi: i64,
) -> Result<HomWindowReport, OracleError> {
    if (m.lo()..=m.hi()).all(|k| m.dim(k) == 0) {
        return Err(OracleError::WindowTooSmall);
    }
    let ring = m.parent();
    let mut degrees = Vec::new();
    for i in i_lo..=i_hi {
        let (prefix, touched_inside) = solve(m, i, m.hi());
        let dim = *prefix.last().expect("window is nonempty");
        let touched = touched_inside || !m.zero_below() || !m.zero_above();
        let status = if !touched {
            DegreeStatus::Exact
        } else {
            stability(m, i, &prefix)
        };
        degrees.push(HomDegree {
            degree: i,
            dim,
            status,
        });
    }
    let exact = degrees.iter().all(|d| d.status == DegreeStatus::Exact);
    Ok(HomWindowReport {
        degrees,
        exact,
        module_window: (m.lo(), m.hi()),
        ring_top: ring.top(),
    })
}

/// Stable when the dimension computed through the last fully known module
/// degree `K` equals the one through `K - 1` and the full-window answer.
fn stability(m: &TruncatedModule, i: i64, prefix: &[usize]) -> DegreeStatus {
    let ring = m.parent();
    let mut k_known = None;
    for k in m.lo()..=m.hi() {
        let representable = m.dim(k) == 0 || ring.known_dim(k + i).is_some();
        let next_target = m.dim(k) == 0 || ring.known_dim(k + i + 1).is_some();
        if representable && next_target {
            k_known = Some(k);
        } else {
            break;
        }
    }
    let Some(k_top) = k_known else {
        return DegreeStatus::Inconclusive;
    };
    if k_top <= m.lo() || !m.zero_below() {
        return DegreeStatus::Inconclusive;
    }
    let idx = (k_top - m.lo()) as usize;
    let full = *prefix.last().expect("window is nonempty");
    if prefix[idx] == prefix[idx - 1] && prefix[idx] == full {
        DegreeStatus::Stable
    } else {
        DegreeStatus::Inconclusive
    }
}

/// Second route for fully enclosed modules over Artinian rings: treat a
/// homomorphism as one matrix `X` from all of `M` to all of `T`, impose
/// `X g_M = g_T X` for every generator and zero blocks outside degree `i`,
/// and take the nullity of the dense system.
pub fn hom_dims_dense(
    m: &TruncatedModule,
    i_lo: i64,
    i_hi: i64,
) -> Result<Vec<usize>, OracleError> {
    let ring = m.parent();
    if !(m.zero_below() && m.zero_above() && ring.is_artinian()) {
        return Err(OracleError::NotEnclosed);
    }
    let m_degrees: Vec<i64> = (m.lo()..=m.hi())
        .flat_map(|k| std::iter::repeat_n(k, m.dim(k)))
        .collect();
    let t_degrees: Vec<i64> = (0..=ring.top())
        .flat_map(|k| std::iter::repeat_n(k, ring.basis(k).len()))
        .collect();
    let (dm, dt) = (m_degrees.len(), t_degrees.len());
    let gens = ring.generators();
    let m_mats: Vec<Vec<Vec<BigRational>>> = (0..gens)
        .map(|g| {
            let blocks = (m.lo()..m.hi())
                .map(|k| (k - m.lo(), m.action(k, g).expect("in-window module action")));
            block_matrix(
                blocks,
                &(m.lo()..=m.hi()).map(|k| m.dim(k)).collect::<Vec<_>>(),
            )
        })
        .collect();
    let t_mats: Vec<Vec<Vec<BigRational>>> = (0..gens)
        .map(|g| {
            let blocks =
                (0..ring.top()).map(|k| (k, ring.action(k, g).expect("in-window ring action")));
            block_matrix(blocks, &ring.dims())
        })
        .collect();

    let nvars = dt * dm;
    let x = |r: usize, c: usize| r * dm + c;
    let mut out = Vec::new();
    for i in i_lo..=i_hi {
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for r in 0..dt {
            for c in 0..dm {
                if t_degrees[r] != m_degrees[c] + i {
                    let mut row = vec![rational(0); nvars];
                    row[x(r, c)] = rational(1);
                    rows.push(row);
                }
            }
        }
        for g in 0..gens {
            // (T_g X - X M_g)[r][c] = sum_s T_g[r][s] X[s][c] - sum_s X[r][s] M_g[s][c]
            for r in 0..dt {
                for c in 0..dm {
                    let mut row = vec![rational(0); nvars];
                    for s in 0..dt {
                        row[x(s, c)] += &t_mats[g][r][s];
                    }
                    for s in 0..dm {
                        row[x(r, s)] -= &m_mats[g][s][c];
                    }
                    rows.push(row);
                }
            }
        }
        out.push(nvars - dense_rank(rows));
    }
    Ok(out)
}

/// Square matrix on the direct sum of graded pieces of sizes `dims`, with
/// each `(k, map)` placed from piece `k` into piece `k + 1`.
fn block_matrix<'a>(
    blocks: impl Iterator<Item = (i64, &'a LinearMap)>,
    dims: &[usize],
) -> Vec<Vec<BigRational>> {
    let size: usize = dims.iter().sum();
    let offset = |k: usize| -> usize { dims[..k].iter().sum() };
    let mut mat = vec![vec![rational(0); size]; size];
    for (k, map) in blocks {
        let (src, dst) = (offset(k as usize), offset(k as usize + 1));
        for (r, row) in dense_block(map).into_iter().enumerate() {
            for (c, v) in row.into_iter().enumerate() {
                mat[dst + r][src + c] = v;
            }
        }
    }
    mat
}
