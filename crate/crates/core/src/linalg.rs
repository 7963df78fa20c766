//! Dense small-matrix numerics: vectors, the ambient inner-product space,
//! Gram matrices, determinants and numerical rank.
//!
//! Everything here is generic over [`Scalar`], so the same code runs in
//! `f64`, `f32` or exact rational arithmetic.

use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// Zero, relative and symmetry thresholds shared by every module.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Absolute threshold for treating a normalized scalar as zero.
    pub zero: f64,
    /// Relative comparison threshold.
    pub rel: f64,
    /// Maximum asymmetry accepted in a metric.
    pub sym: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            zero: 1e-9,
            rel: 1e-9,
            sym: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("zero", self.zero), ("rel", self.rel), ("sym", self.sym)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidSpace(format!(
                    "tolerance {name} must be finite and positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Dense coordinate vector with finite entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<T>", into = "Vec<T>")]
#[serde(bound(
    serialize = "T: Scalar + Serialize",
    deserialize = "T: Scalar + Deserialize<'de>"
))]
pub struct Vector<T> {
    coords: Vec<T>,
}

impl<T: Scalar> Vector<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Empty("vector"));
        }
        if !coords.iter().all(Scalar::is_finite_value) {
            return Err(Error::NonFinite("vector"));
        }
        Ok(Vector { coords })
    }

    pub fn from_f64(coords: &[f64]) -> Result<Self> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("vector"));
        }
        Self::new(coords.iter().map(|&c| T::from_f64_lossy(c)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Vector {
            coords: vec![T::zero(); dim],
        }
    }

    /// Standard basis vector with a one at 0-based position `axis`.
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.coords[axis] = T::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scaled(&self, alpha: &T) -> Self {
        Vector {
            coords: self
                .coords
                .iter()
                .map(|c| c.clone() * alpha.clone())
                .collect(),
        }
    }

    /// `self + alpha * other`.
    pub fn axpy(&self, alpha: &T, other: &Self) -> Self {
        assert_eq!(
            self.dim(),
            other.dim(),
            "axpy on vectors of different length"
        );
        Vector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.clone() + alpha.clone() * b.clone())
                .collect(),
        }
    }

    pub fn max_abs(&self) -> T {
        self.coords
            .iter()
            .map(|c| c.abs())
            .fold(T::zero(), |m, c| if c > m { c } else { m })
    }
}

impl<T: Scalar> TryFrom<Vec<T>> for Vector<T> {
    type Error = Error;

    fn try_from(coords: Vec<T>) -> Result<Self> {
        Vector::new(coords)
    }
}

impl<T> From<Vector<T>> for Vec<T> {
    fn from(v: Vector<T>) -> Vec<T> {
        v.coords
    }
}

impl<T: Scalar> Add for &Vector<T> {
    type Output = Vector<T>;

    fn add(self, rhs: &Vector<T>) -> Vector<T> {
        self.axpy(&T::one(), rhs)
    }
}

impl<T: Scalar> Sub for &Vector<T> {
    type Output = Vector<T>;

    fn sub(self, rhs: &Vector<T>) -> Vector<T> {
        self.axpy(&-T::one(), rhs)
    }
}

/// Row-major square matrix with finite entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<T>>", into = "Vec<Vec<T>>")]
#[serde(bound(
    serialize = "T: Scalar + Serialize",
    deserialize = "T: Scalar + Deserialize<'de>"
))]
pub struct SquareMatrix<T> {
    size: usize,
    entries: Vec<T>,
}

impl<T: Scalar> SquareMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::Empty("matrix"));
        }
        let mut entries = Vec::with_capacity(size * size);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != size {
                return Err(Error::NotSquare {
                    rows: size,
                    row,
                    len: r.len(),
                });
            }
            entries.extend(r);
        }
        if !entries.iter().all(Scalar::is_finite_value) {
            return Err(Error::NonFinite("matrix"));
        }
        Ok(SquareMatrix { size, entries })
    }

    pub fn identity(size: usize) -> Self {
        let mut entries = vec![T::zero(); size * size];
        for i in 0..size {
            entries[i * size + i] = T::one();
        }
        SquareMatrix { size, entries }
    }

    pub fn diagonal(diag: Vec<T>) -> Result<Self> {
        let size = diag.len();
        let rows = diag
            .into_iter()
            .enumerate()
            .map(|(i, d)| {
                let mut row = vec![T::zero(); size];
                row[i] = d;
                row
            })
            .collect();
        Self::from_rows(rows)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.size + j]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.size).map(<[T]>::to_vec).collect()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.size).all(|i| {
            (0..self.size).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    /// Largest asymmetry `(i, j, |M_ij - M_ji|)`, if any entry pair differs.
    pub fn worst_asymmetry(&self) -> Option<(usize, usize, f64)> {
        let mut worst: Option<(usize, usize, f64)> = None;
        for i in 0..self.size {
            for j in (i + 1)..self.size {
                let gap = (self.get(i, j).clone() - self.get(j, i).clone())
                    .abs()
                    .to_f64_lossy();
                if gap > 0.0 && worst.is_none_or(|(_, _, g)| gap > g) {
                    worst = Some((i, j, gap));
                }
            }
        }
        worst
    }

    /// Leading `order x order` block.
    pub fn leading_block(&self, order: usize) -> Self {
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            entries.extend_from_slice(&self.entries[i * self.size..i * self.size + order]);
        }
        SquareMatrix {
            size: order,
            entries,
        }
    }
}

impl<T: Clone> From<SquareMatrix<T>> for Vec<Vec<T>> {
    fn from(m: SquareMatrix<T>) -> Self {
        m.entries
            .chunks(m.size.max(1))
            .map(|r| r.to_vec())
            .collect()
    }
}

impl<T: Scalar> TryFrom<Vec<Vec<T>>> for SquareMatrix<T> {
    type Error = Error;

    fn try_from(rows: Vec<Vec<T>>) -> Result<Self> {
        SquareMatrix::from_rows(rows)
    }
}

/// The ambient space: `R^dim` with an inner product `<a, b> = a^T M b`,
/// carrying an n-norm of arity `arity`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpaceConfigRepr<T>", into = "SpaceConfigRepr<T>")]
#[serde(bound(
    serialize = "T: Scalar + Serialize",
    deserialize = "T: Scalar + Deserialize<'de>"
))]
pub struct SpaceConfig<T> {
    dim: usize,
    arity: usize,
    metric: SquareMatrix<T>,
    tolerance: Tolerance,
    euclidean: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: Scalar + Serialize",
    deserialize = "T: Scalar + Deserialize<'de>"
))]
struct SpaceConfigRepr<T> {
    dim: usize,
    arity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metric: Option<SquareMatrix<T>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tolerance: Option<Tolerance>,
}

impl<T: Scalar> TryFrom<SpaceConfigRepr<T>> for SpaceConfig<T> {
    type Error = Error;

    fn try_from(r: SpaceConfigRepr<T>) -> Result<Self> {
        let metric = r.metric.unwrap_or_else(|| SquareMatrix::identity(r.dim));
        let tolerance = r.tolerance.unwrap_or_else(T::default_tolerance);
        SpaceConfig::with_metric(r.dim, r.arity, metric, tolerance)
    }
}

impl<T: Scalar> From<SpaceConfig<T>> for SpaceConfigRepr<T> {
    fn from(c: SpaceConfig<T>) -> Self {
        SpaceConfigRepr {
            dim: c.dim,
            arity: c.arity,
            metric: (!c.euclidean).then_some(c.metric),
            tolerance: Some(c.tolerance),
        }
    }
}

impl<T: Scalar> SpaceConfig<T> {
    /// `R^dim` with the standard dot product.
    pub fn euclidean(dim: usize, arity: usize) -> Result<Self> {
        Self::with_metric(
            dim,
            arity,
            SquareMatrix::identity(dim),
            T::default_tolerance(),
        )
    }

    pub fn with_metric(
        dim: usize,
        arity: usize,
        metric: SquareMatrix<T>,
        tolerance: Tolerance,
    ) -> Result<Self> {
        tolerance.validate()?;
        if dim == 0 || arity == 0 {
            return Err(Error::InvalidSpace(format!(
                "dimension and arity must be positive (dim={dim}, arity={arity})"
            )));
        }
        if arity > dim {
            return Err(Error::InvalidSpace(format!(
                "arity {arity} exceeds dimension {dim}"
            )));
        }
        if metric.size() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: metric.size(),
            });
        }
        if let Some((i, j, gap)) = metric.worst_asymmetry() {
            if T::EXACT || gap > tolerance.sym {
                return Err(Error::NotSymmetric { i, j, gap });
            }
        }
        for order in 1..=dim {
            if determinant(&metric.leading_block(order)) <= T::zero() {
                return Err(Error::NotPositiveDefinite { order });
            }
        }
        let euclidean = metric.is_identity();
        Ok(SpaceConfig {
            dim,
            arity,
            metric,
            tolerance,
            euclidean,
        })
    }

    pub fn with_tolerance(mut self, tolerance: Tolerance) -> Result<Self> {
        tolerance.validate()?;
        self.tolerance = tolerance;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn metric(&self) -> &SquareMatrix<T> {
        &self.metric
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tolerance
    }

    pub fn is_euclidean(&self) -> bool {
        self.euclidean
    }

    pub fn check_dim(&self, v: &Vector<T>) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: v.dim(),
            });
        }
        Ok(())
    }
}

/// `<a, b> = a^T M b`.
///
/// The sum is arranged so that swapping `a` and `b` produces bit-identical
/// results in floating point.
pub fn inner<T: Scalar>(cfg: &SpaceConfig<T>, a: &Vector<T>, b: &Vector<T>) -> Result<T> {
    cfg.check_dim(a)?;
    cfg.check_dim(b)?;
    Ok(inner_unchecked(cfg, a, b))
}

pub(crate) fn inner_unchecked<T: Scalar>(cfg: &SpaceConfig<T>, a: &Vector<T>, b: &Vector<T>) -> T {
    let (a, b) = (a.coords(), b.coords());
    if cfg.euclidean {
        return a
            .iter()
            .zip(b)
            .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
    }
    let m = &cfg.metric;
    let mut acc = T::zero();
    for i in 0..cfg.dim {
        acc = acc + m.get(i, i).clone() * (a[i].clone() * b[i].clone());
        for j in (i + 1)..cfg.dim {
            let cross = a[i].clone() * b[j].clone() + a[j].clone() * b[i].clone();
            acc = acc + m.get(i, j).clone() * cross;
        }
    }
    acc
}

/// Length of `v` under the space's metric.
pub fn length<T: Real>(cfg: &SpaceConfig<T>, v: &Vector<T>) -> T {
    let sq = inner_unchecked(cfg, v, v);
    if sq > T::zero() {
        sq.sqrt()
    } else {
        T::zero()
    }
}

/// Matrix of pairwise inner products. Exactly symmetric by construction.
pub fn gram_matrix<T: Scalar>(cfg: &SpaceConfig<T>, vs: &[Vector<T>]) -> Result<SquareMatrix<T>> {
    if vs.is_empty() {
        return Err(Error::Empty("vector list"));
    }
    for v in vs {
        cfg.check_dim(v)?;
    }
    let n = vs.len();
    let mut entries = vec![T::zero(); n * n];
    for i in 0..n {
        for j in i..n {
            let g = inner_unchecked(cfg, &vs[i], &vs[j]);
            entries[j * n + i] = g.clone();
            entries[i * n + j] = g;
        }
    }
    Ok(SquareMatrix { size: n, entries })
}

/// Determinant by LU factorization with partial pivoting.
pub fn determinant<T: Scalar>(m: &SquareMatrix<T>) -> T {
    let n = m.size;
    let mut a = m.entries.clone();
    let mut det = T::one();
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&r, &s| {
                a[r * n + col]
                    .abs()
                    .partial_cmp(&a[s * n + col].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap_or(col);
        if a[pivot_row * n + col].is_zero() {
            return T::zero();
        }
        if pivot_row != col {
            for k in 0..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            det = -det;
        }
        let pivot = a[col * n + col].clone();
        for r in (col + 1)..n {
            let factor = a[r * n + col].clone() / pivot.clone();
            if factor.is_zero() {
                continue;
            }
            for k in (col + 1)..n {
                let delta = factor.clone() * a[col * n + k].clone();
                a[r * n + k] = a[r * n + k].clone() - delta;
            }
        }
        det = det * pivot;
    }
    det
}

/// Row-reduction summary of a vector list.
#[derive(Debug, Clone, PartialEq)]
pub struct RankProfile {
    pub rank: usize,
    /// Smallest accepted pivot of the row-normalized elimination; 1 when no
    /// pivot was accepted. Rows are scaled to unit max-abs first, so this is
    /// a scale-free measure of how far the list is from dependence.
    pub smallest_pivot: f64,
}

/// Numerical rank with pivot threshold `tol.zero` on row-normalized input.
pub fn rank<T: Scalar>(vs: &[Vector<T>], tol: &Tolerance) -> usize {
    rank_profile(vs, tol).rank
}

pub fn rank_profile<T: Scalar>(vs: &[Vector<T>], tol: &Tolerance) -> RankProfile {
    let mut rows: Vec<Vec<T>> = vs
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| {
            let scale = v.max_abs();
            v.coords()
                .iter()
                .map(|c| c.clone() / scale.clone())
                .collect()
        })
        .collect();
    let cols = vs.iter().map(Vector::dim).max().unwrap_or(0);
    let threshold = T::from_f64_lossy(tol.zero);
    let negligible = |x: &T| {
        if T::EXACT {
            x.is_zero()
        } else {
            x.abs() <= threshold
        }
    };

    // complete pivoting: partial pivoting is not rank-revealing
    let mut rank = 0;
    let mut smallest = f64::INFINITY;
    let mut free_cols: Vec<usize> = (0..cols).collect();
    while rank < rows.len() && !free_cols.is_empty() {
        let mut best: Option<(usize, usize, T)> = None;
        for (r, row) in rows.iter().enumerate().skip(rank) {
            for (ci, &c) in free_cols.iter().enumerate() {
                let a = row[c].abs();
                if best.as_ref().is_none_or(|(_, _, b)| a > *b) {
                    best = Some((r, ci, a));
                }
            }
        }
        let Some((pivot_row, ci, magnitude)) = best else {
            break;
        };
        if negligible(&magnitude) {
            break;
        }
        let col = free_cols.swap_remove(ci);
        rows.swap(rank, pivot_row);
        let pivot = rows[rank][col].clone();
        smallest = smallest.min(magnitude.to_f64_lossy());
        for r in (rank + 1)..rows.len() {
            let factor = rows[r][col].clone() / pivot.clone();
            if factor.is_zero() {
                continue;
            }
            for &k in free_cols.iter().chain(std::iter::once(&col)) {
                let delta = factor.clone() * rows[rank][k].clone();
                rows[r][k] = rows[r][k].clone() - delta;
            }
        }
        rank += 1;
    }
    RankProfile {
        rank,
        smallest_pivot: if smallest.is_finite() { smallest } else { 1.0 },
    }
}

/// Whether `u` lies in the span of `basis` (empty span is `{0}`).
pub fn in_span<T: Scalar>(u: &Vector<T>, basis: &[Vector<T>], tol: &Tolerance) -> bool {
    let base = rank(basis, tol);
    let mut extended = basis.to_vec();
    extended.push(u.clone());
    rank(&extended, tol) == base
}
