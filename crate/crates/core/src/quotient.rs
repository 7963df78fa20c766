//! Quotient spaces of an n-normed space with respect to a frame.
//!
//! Removing the frame vectors indexed by `s = {i1 < … < im}` leaves the
//! subspace `span{y_i : i ∉ s}`; the quotient by it carries the norm
//!
//! ```text
//! ‖ū‖*_s = Σ_{k=1..m} ‖u, y_1, …, y_{i_k - 1}, y_{i_k + 1}, …, y_n‖
//! ```
//!
//! i.e. the sum of the class-1 norms `‖ū‖*_j` over `j ∈ s`. Indices are
//! 1-based throughout, in code and in JSON. Cosets are never materialized;
//! every operation takes a representative.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, rank_profile, SpaceConfig, Vector};
use crate::nnorm::{hadamard_scale, normalized, Axiom, AxiomReport, NNorm, ShiftCheck, Tally};
use crate::sampling::{self, TupleStyle};
use crate::scalar::{Real, Scalar};

/// Linearly independent anchor set `y_1, …, y_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FrameRepr<T>", into = "FrameRepr<T>")]
#[serde(bound(
    serialize = "T: Scalar + Serialize",
    deserialize = "T: Scalar + Deserialize<'de>"
))]
pub struct Frame<T> {
    space: SpaceConfig<T>,
    vectors: Vec<Vector<T>>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: Scalar + Serialize",
    deserialize = "T: Scalar + Deserialize<'de>"
))]
struct FrameRepr<T> {
    space: SpaceConfig<T>,
    vectors: Vec<Vector<T>>,
}

impl<T: Scalar> TryFrom<FrameRepr<T>> for Frame<T> {
    type Error = Error;

    fn try_from(r: FrameRepr<T>) -> Result<Self> {
        Frame::new(r.space, r.vectors)
    }
}

impl<T: Scalar> From<Frame<T>> for FrameRepr<T> {
    fn from(f: Frame<T>) -> Self {
        FrameRepr {
            space: f.space,
            vectors: f.vectors,
        }
    }
}

impl<T: Scalar> Frame<T> {
    pub fn new(space: SpaceConfig<T>, vectors: Vec<Vector<T>>) -> Result<Self> {
        if vectors.len() != space.arity() {
            return Err(Error::ArityMismatch {
                expected: space.arity(),
                actual: vectors.len(),
            });
        }
        for v in &vectors {
            space.check_dim(v)?;
        }
        let rank = linalg::rank(&vectors, space.tolerance());
        if rank < vectors.len() {
            return Err(Error::DependentFrame {
                rank,
                arity: vectors.len(),
            });
        }
        Ok(Frame { space, vectors })
    }

    /// `e_1, …, e_n` in `R^d`.
    pub fn standard_basis(space: SpaceConfig<T>) -> Self {
        let vectors = (0..space.arity())
            .map(|i| Vector::unit(space.dim(), i))
            .collect();
        Frame { space, vectors }
    }

    pub fn space(&self) -> &SpaceConfig<T> {
        &self.space
    }

    pub fn arity(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vector<T>] {
        &self.vectors
    }

    /// `y_j`, 1-based.
    pub fn get(&self, j: usize) -> Result<&Vector<T>> {
        if j == 0 || j > self.arity() {
            return Err(Error::IndexOutOfRange {
                index: j,
                n: self.arity(),
            });
        }
        Ok(&self.vectors[j - 1])
    }

    /// `y_i` for every 1-based `i` not in `removed`, ascending.
    pub fn remaining(&self, removed: &IndexSet) -> Vec<Vector<T>> {
        self.vectors
            .iter()
            .enumerate()
            .filter(|(i, _)| !removed.contains(i + 1))
            .map(|(_, v)| v.clone())
            .collect()
    }

    pub fn is_standard_basis(&self) -> bool {
        self.vectors
            .iter()
            .enumerate()
            .all(|(i, v)| *v == Vector::unit(self.space.dim(), i))
    }
}

impl<T: Real> Frame<T> {
    /// Random frame with coordinates in `[-1, 1]`, redrawn until it is
    /// comfortably independent.
    pub fn random(space: SpaceConfig<T>, seed: u64) -> Self {
        let mut rng = sampling::stream(seed, 0xF4A3);
        let mut tol = *space.tolerance();
        tol.zero = tol.zero.max(1e-3);
        loop {
            let vectors: Vec<Vector<T>> = (0..space.arity())
                .map(|_| sampling::uniform_vector(&mut rng, space.dim(), 1.0))
                .collect();
            if linalg::rank(&vectors, &tol) == vectors.len() {
                return Frame { space, vectors };
            }
        }
    }
}

/// Sorted subset `{i1 < … < im}` of `{1, …, n}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IndexSet {
    indices: Vec<usize>,
}

impl IndexSet {
    /// Validates ordering and positivity; the upper bound is checked against a
    /// concrete `n` with [`IndexSet::validate_for`].
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidIndexSet("empty".into()));
        }
        if indices[0] == 0 {
            return Err(Error::InvalidIndexSet("indices are 1-based".into()));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIndexSet(format!(
                "{indices:?} is not strictly increasing"
            )));
        }
        Ok(IndexSet { indices })
    }

    pub fn with_bound(indices: Vec<usize>, n: usize) -> Result<Self> {
        let s = Self::new(indices)?;
        s.validate_for(n)?;
        Ok(s)
    }

    /// `{1, …, n}`.
    pub fn full(n: usize) -> Self {
        IndexSet {
            indices: (1..=n).collect(),
        }
    }

    pub fn validate_for(&self, n: usize) -> Result<()> {
        match self.indices.last() {
            Some(&last) if last > n => Err(Error::IndexOutOfRange { index: last, n }),
            _ => Ok(()),
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn m(&self) -> usize {
        self.indices.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    /// `{1, …, n} \ self`, ascending.
    pub fn complement(&self, n: usize) -> Vec<usize> {
        (1..=n).filter(|&i| !self.contains(i)).collect()
    }

    /// Bitmask with bit `i - 1` set for each member, or `None` when an
    /// index exceeds 64.
    pub fn mask(&self) -> Option<u64> {
        self.indices.iter().try_fold(0u64, |acc, &i| {
            let bit = u32::try_from(i - 1)
                .ok()
                .and_then(|b| 1u64.checked_shl(b))?;
            Some(acc | bit)
        })
    }
}

impl TryFrom<Vec<usize>> for IndexSet {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        IndexSet::new(v)
    }
}

impl From<IndexSet> for Vec<usize> {
    fn from(s: IndexSet) -> Self {
        s.indices
    }
}

impl std::fmt::Display for IndexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.indices.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl std::str::FromStr for IndexSet {
    type Err = Error;

    /// Accepts `{1,5}`, `1,5` or `1 5`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        let indices = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidIndexSet(format!("bad index {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        IndexSet::new(indices)
    }
}

/// All `C(n, m)` index sets of size `m`, lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCollection {
    pub n: usize,
    pub m: usize,
    pub members: Vec<IndexSet>,
}

pub fn class_collection(n: usize, m: usize) -> Result<ClassCollection> {
    if m == 0 || m > n {
        return Err(Error::ClassOutOfRange { n, m });
    }
    let members = itertools::Itertools::combinations(1..=n, m)
        .map(|indices| IndexSet { indices })
        .collect();
    Ok(ClassCollection { n, m, members })
}

fn check_pair<T: Scalar>(frame: &Frame<T>, norm_cfg: &SpaceConfig<T>) -> Result<()> {
    let space = frame.space();
    if norm_cfg.dim() != space.dim() || norm_cfg.arity() != space.arity() {
        return Err(Error::InvalidSpace(format!(
            "norm is defined on (d={}, n={}) but frame lives in (d={}, n={})",
            norm_cfg.dim(),
            norm_cfg.arity(),
            space.dim(),
            space.arity()
        )));
    }
    Ok(())
}

fn class1_tuple<T: Real>(frame: &Frame<T>, u: &Vector<T>, j: usize) -> Vec<Vector<T>> {
    let mut tuple = Vec::with_capacity(frame.arity());
    tuple.push(u.clone());
    tuple.extend(
        frame
            .vectors
            .iter()
            .enumerate()
            .filter(|&(i, _)| i + 1 != j)
            .map(|(_, y)| y.clone()),
    );
    tuple
}

/// `‖ū‖*_j = ‖u, y_1, …, y_{j-1}, y_{j+1}, …, y_n‖`.
pub fn class1_norm<T: Real>(
    frame: &Frame<T>,
    norm: &NNorm<T>,
    u: &Vector<T>,
    j: usize,
) -> Result<T> {
    check_pair(frame, norm.config())?;
    frame.space().check_dim(u)?;
    if j == 0 || j > frame.arity() {
        return Err(Error::IndexOutOfRange {
            index: j,
            n: frame.arity(),
        });
    }
    Ok(norm.eval_unchecked(&class1_tuple(frame, u, j)))
}

/// The class-1 summands `(j, ‖ū‖*_j)` for `j ∈ s`, in index order.
pub fn classm_terms<T: Real>(
    frame: &Frame<T>,
    norm: &NNorm<T>,
    u: &Vector<T>,
    s: &IndexSet,
) -> Result<Vec<(usize, T)>> {
    s.validate_for(frame.arity())?;
    s.indices()
        .iter()
        .map(|&j| class1_norm(frame, norm, u, j).map(|v| (j, v)))
        .collect()
}

/// `‖ū‖*_s`, summed from [`classm_terms`] in index order.
pub fn classm_norm<T: Real>(
    frame: &Frame<T>,
    norm: &NNorm<T>,
    u: &Vector<T>,
    s: &IndexSet,
) -> Result<T> {
    Ok(classm_terms(frame, norm, u, s)?
        .into_iter()
        .fold(T::zero(), |acc, (_, v)| acc + v))
}

/// Sum of the Hadamard bounds of the class-1 tuples; the natural magnitude
/// against which a class-m value is compared to zero.
pub fn classm_scale<T: Real>(frame: &Frame<T>, u: &Vector<T>, s: &IndexSet) -> T {
    s.indices()
        .iter()
        .map(|&j| hadamard_scale(frame.space(), &class1_tuple(frame, u, j)))
        .fold(T::zero(), |a, b| a + b)
}

/// Whether `u` represents the zero coset of `X / span{y_i : i ∉ s}`.
pub fn in_removed_span<T: Scalar>(frame: &Frame<T>, u: &Vector<T>, s: &IndexSet) -> bool {
    linalg::in_span(u, &frame.remaining(s), frame.space().tolerance())
}

/// Convenience bundle for one quotient `X*_s`.
#[derive(Debug, Clone)]
pub struct QuotientFrame<T: Real> {
    frame: Frame<T>,
    removed: IndexSet,
    norm: NNorm<T>,
}

impl<T: Real> QuotientFrame<T> {
    pub fn new(frame: Frame<T>, removed: IndexSet, norm: NNorm<T>) -> Result<Self> {
        check_pair(&frame, norm.config())?;
        removed.validate_for(frame.arity())?;
        Ok(QuotientFrame {
            frame,
            removed,
            norm,
        })
    }

    pub fn frame(&self) -> &Frame<T> {
        &self.frame
    }

    pub fn removed(&self) -> &IndexSet {
        &self.removed
    }

    pub fn nnorm(&self) -> &NNorm<T> {
        &self.norm
    }

    pub fn norm_of(&self, u: &Vector<T>) -> Result<T> {
        classm_norm(&self.frame, &self.norm, u, &self.removed)
    }
}

/// Compares `‖ū‖*_s` with `‖(u + shift)‾‖*_s`.
pub fn coset_shift_check<T: Real>(
    frame: &Frame<T>,
    norm: &NNorm<T>,
    u: &Vector<T>,
    s: &IndexSet,
    shift: &Vector<T>,
) -> Result<ShiftCheck<T>> {
    frame.space().check_dim(shift)?;
    let moved = u + shift;
    let lhs = classm_norm(frame, norm, u, s)?;
    let rhs = classm_norm(frame, norm, &moved, s)?;
    let scale = classm_scale(frame, u, s).max(classm_scale(frame, &moved, s));
    let discrepancy = normalized((lhs - rhs).abs().to_f64_lossy(), scale.to_f64_lossy());
    Ok(ShiftCheck {
        lhs,
        rhs,
        discrepancy,
        passed: discrepancy <= frame.space().tolerance().rel,
    })
}

/// Well-definedness on cosets: shifting `u` by `Σ_{i ∉ s} α_i y_i` must not
/// change `‖ū‖*_s`. `coeffs` must be keyed by exactly the complement of `s`.
pub fn coset_invariance_check<T: Real>(
    frame: &Frame<T>,
    norm: &NNorm<T>,
    u: &Vector<T>,
    s: &IndexSet,
    coeffs: &BTreeMap<usize, T>,
) -> Result<ShiftCheck<T>> {
    s.validate_for(frame.arity())?;
    let expected = s.complement(frame.arity());
    let actual: Vec<usize> = coeffs.keys().copied().collect();
    if expected != actual {
        return Err(Error::CoefficientMismatch { expected, actual });
    }
    let shift = coeffs
        .iter()
        .fold(Vector::zeros(frame.space().dim()), |acc, (&i, a)| {
            acc.axpy(a, &frame.vectors[i - 1])
        });
    coset_shift_check(frame, norm, u, s, &shift)
}

/// Samples representatives for the quotient by `span{y_i : i ∉ s}`.
fn sample_representative<T: Real, R: Rng>(
    rng: &mut R,
    frame: &Frame<T>,
    s: &IndexSet,
    style: TupleStyle,
) -> Vector<T> {
    let dim = frame.space().dim();
    match style {
        TupleStyle::Uniform => sampling::uniform_vector(rng, dim, 1.0),
        TupleStyle::NearDependent { perturbation } => {
            let kept = frame.remaining(s);
            let refs: Vec<&Vector<T>> = kept.iter().collect();
            let coeffs: Vec<T> = (0..kept.len())
                .map(|_| T::from_f64_lossy(rng.gen_range(-1.0..=1.0)))
                .collect();
            let w = sampling::orthogonal_unit(rng, dim, &refs);
            sampling::combination(dim, &refs, &coeffs).axpy(&T::from_f64_lossy(perturbation), &w)
        }
    }
}

/// Randomized check that `‖·‖*_s` is a norm on `X / span{y_i : i ∉ s}`:
/// nonnegativity, definiteness in both directions against the span oracle,
/// homogeneity, the triangle inequality and coset invariance (reported as
/// [`Axiom::ShiftInvariance`]).
pub fn quotient_norm_axioms<T: Real>(
    frame: &Frame<T>,
    norm: &NNorm<T>,
    s: &IndexSet,
    trials: usize,
    seed: u64,
) -> Result<Vec<AxiomReport<T>>> {
    if trials == 0 {
        return Err(Error::Precondition("trials must be at least 1".into()));
    }
    check_pair(frame, norm.config())?;
    s.validate_for(frame.arity())?;
    let axioms = [
        Axiom::Nonnegativity,
        Axiom::DefinitenessForward,
        Axiom::DefinitenessBackward,
        Axiom::AbsoluteHomogeneity,
        Axiom::TriangleInequality,
        Axiom::ShiftInvariance,
    ];
    Ok(axioms
        .iter()
        .enumerate()
        .map(|(i, &axiom)| {
            check_quotient_axiom(frame, norm, s, axiom, trials, seed, 100 + i as u64)
        })
        .collect())
}

fn check_quotient_axiom<T: Real>(
    frame: &Frame<T>,
    norm: &NNorm<T>,
    s: &IndexSet,
    axiom: Axiom,
    trials: usize,
    seed: u64,
    stream: u64,
) -> AxiomReport<T> {
    let tol = *frame.space().tolerance();
    let dim = frame.space().dim();
    let mut rng = sampling::stream(seed, stream);
    let threshold = match axiom {
        Axiom::Nonnegativity | Axiom::DefinitenessForward | Axiom::DefinitenessBackward => tol.zero,
        _ => tol.rel,
    };
    let mut tally = Tally::new(axiom, threshold);
    let f = |x: T| x.to_f64_lossy();
    let eval = |u: &Vector<T>| f(classm_norm(frame, norm, u, s).expect("validated inputs"));

    for trial in 0..trials {
        let style = sampling::style_for_trial(trial);
        let u = sample_representative(&mut rng, frame, s, style);
        let value = eval(&u);
        let scale = f(classm_scale(frame, &u, s));
        let inputs = || (vec![u.clone()], Vec::new());
        match axiom {
            Axiom::Nonnegativity => {
                let d = if value.is_finite() {
                    normalized((-value).max(0.0), scale)
                } else {
                    f64::INFINITY
                };
                tally.record(d, inputs);
            }
            Axiom::DefinitenessForward => {
                if value.abs() <= tol.zero * scale {
                    let mut extended = frame.remaining(s);
                    let base = linalg::rank(&extended, &tol);
                    extended.push(u.clone());
                    let profile = rank_profile(&extended, &tol);
                    let d = if profile.rank > base {
                        profile.smallest_pivot
                    } else {
                        0.0
                    };
                    tally.record(d, inputs);
                }
            }
            Axiom::DefinitenessBackward => {
                if in_removed_span(frame, &u, s) {
                    tally.record(normalized(value.abs(), scale), inputs);
                }
            }
            Axiom::AbsoluteHomogeneity => {
                let alpha = T::from_f64_lossy(rng.gen_range(-10.0..=10.0));
                let lhs = eval(&u.scaled(&alpha));
                let a = f(alpha.abs());
                tally.record(normalized((lhs - a * value).abs(), a * scale), || {
                    (vec![u.clone()], vec![alpha])
                });
            }
            Axiom::TriangleInequality => {
                let other = match style {
                    TupleStyle::Uniform => sampling::uniform_vector(&mut rng, dim, 1.0),
                    TupleStyle::NearDependent { .. } => {
                        let w: Vector<T> = sampling::uniform_vector(&mut rng, dim, 1e-3);
                        u.scaled(&-T::one()).axpy(&T::one(), &w)
                    }
                };
                let sum = &u + &other;
                let lhs = eval(&sum);
                let rhs = value + eval(&other);
                let sc = scale
                    .max(f(classm_scale(frame, &other, s)))
                    .max(f(classm_scale(frame, &sum, s)));
                tally.record(normalized((lhs - rhs).max(0.0), sc), || {
                    (vec![u.clone(), other.clone()], Vec::new())
                });
            }
            Axiom::ShiftInvariance => {
                let coeffs: BTreeMap<usize, T> = s
                    .complement(frame.arity())
                    .into_iter()
                    .map(|i| (i, T::from_f64_lossy(rng.gen_range(-5.0..=5.0))))
                    .collect();
                let check =
                    coset_invariance_check(frame, norm, &u, s, &coeffs).expect("validated inputs");
                tally.record(check.discrepancy, || {
                    (vec![u.clone()], coeffs.values().copied().collect())
                });
            }
            Axiom::PermutationInvariance => unreachable!("not a quotient-norm property"),
        }
    }
    tally.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector<f64> {
        Vector::from_f64(c).unwrap()
    }

    fn orthonormal(d: usize, n: usize) -> (Frame<f64>, NNorm<f64>) {
        let space = SpaceConfig::euclidean(d, n).unwrap();
        (Frame::standard_basis(space.clone()), NNorm::standard(space))
    }

    fn set(ix: &[usize]) -> IndexSet {
        IndexSet::new(ix.to_vec()).unwrap()
    }

    #[test]
    fn class_collection_examples() {
        let c = class_collection(3, 2).unwrap();
        assert_eq!(c.members, vec![set(&[1, 2]), set(&[1, 3]), set(&[2, 3])]);
        assert_eq!(
            class_collection(4, 4).unwrap().members,
            vec![IndexSet::full(4)]
        );
        assert_eq!(class_collection(5, 2).unwrap().members.len(), 10);
        assert_eq!(
            class_collection(3, 0).unwrap_err(),
            Error::ClassOutOfRange { n: 3, m: 0 }
        );
        assert_eq!(
            class_collection(3, 4).unwrap_err(),
            Error::ClassOutOfRange { n: 3, m: 4 }
        );
    }

    #[test]
    fn mask_limits() {
        assert_eq!(
            IndexSet::new(vec![1, 64]).unwrap().mask(),
            Some(1 | 1 << 63)
        );
        assert_eq!(IndexSet::new(vec![3, 65]).unwrap().mask(), None);
    }

    #[test]
    fn index_set_validation() {
        assert!(IndexSet::new(vec![]).is_err());
        assert!(IndexSet::new(vec![0, 1]).is_err());
        assert!(IndexSet::new(vec![2, 1]).is_err());
        assert!(IndexSet::new(vec![1, 1]).is_err());
        assert_eq!(
            IndexSet::with_bound(vec![1, 4], 3).unwrap_err(),
            Error::IndexOutOfRange { index: 4, n: 3 }
        );
        assert_eq!("{1,5}".parse::<IndexSet>().unwrap(), set(&[1, 5]));
        assert_eq!("2 3".parse::<IndexSet>().unwrap(), set(&[2, 3]));
        assert!("1,x".parse::<IndexSet>().is_err());
        assert_eq!(set(&[1, 5]).to_string(), "{1,5}");
        assert_eq!(set(&[2, 4]).complement(5), vec![1, 3, 5]);
    }

    #[test]
    fn frame_rejects_dependence() {
        let space = SpaceConfig::<f64>::euclidean(3, 2).unwrap();
        let err = Frame::new(
            space.clone(),
            vec![v(&[1.0, 2.0, 3.0]), v(&[2.0, 4.0, 6.0])],
        )
        .unwrap_err();
        assert_eq!(err, Error::DependentFrame { rank: 1, arity: 2 });
        assert!(matches!(
            Frame::new(space, vec![v(&[1.0, 0.0, 0.0])]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn class1_examples() {
        let (frame, norm) = orthonormal(4, 3);
        for j in 1..=3 {
            let yj = frame.get(j).unwrap().clone();
            assert_eq!(class1_norm(&frame, &norm, &yj, j).unwrap(), 1.0);
        }
        // u in span(Y \ {y_1})
        let u = v(&[0.0, 2.0, -1.0, 0.0]);
        assert_eq!(class1_norm(&frame, &norm, &u, 1).unwrap(), 0.0);
        assert_eq!(
            class1_norm(&frame, &norm, &Vector::zeros(4), 2).unwrap(),
            0.0
        );
        assert_eq!(
            class1_norm(&frame, &norm, &u, 4).unwrap_err(),
            Error::IndexOutOfRange { index: 4, n: 3 }
        );
    }

    #[test]
    fn classm_examples() {
        let (frame, norm) = orthonormal(3, 3);
        let y1 = frame.get(1).unwrap().clone();
        let terms = classm_terms(&frame, &norm, &y1, &IndexSet::full(3)).unwrap();
        assert_eq!(terms, vec![(1, 1.0), (2, 0.0), (3, 0.0)]);
        assert_eq!(
            classm_norm(&frame, &norm, &y1, &IndexSet::full(3)).unwrap(),
            1.0
        );

        let u = v(&[0.3, -1.2, 2.0]);
        for j in 1..=3 {
            assert_eq!(
                classm_norm(&frame, &norm, &u, &set(&[j])).unwrap(),
                class1_norm(&frame, &norm, &u, j).unwrap()
            );
        }
        // u in span{y_3} is the zero coset of X / span{y_3} for s = {1, 2}
        assert_eq!(
            classm_norm(&frame, &norm, &v(&[0.0, 0.0, 7.0]), &set(&[1, 2])).unwrap(),
            0.0
        );
        assert!(classm_norm(&frame, &norm, &u, &set(&[1, 4])).is_err());
    }

    #[test]
    fn coset_examples() {
        let (frame, norm) = orthonormal(4, 3);
        let s = set(&[1]);
        let u = v(&[0.4, -0.7, 1.1, 0.3]);
        let zero: BTreeMap<usize, f64> = [(2, 0.0), (3, 0.0)].into();
        let c = coset_invariance_check(&frame, &norm, &u, &s, &zero).unwrap();
        assert!(c.passed);
        assert_eq!(c.discrepancy, 0.0);

        let coeffs: BTreeMap<usize, f64> = [(2, 3.5), (3, -4.25)].into();
        assert!(
            coset_invariance_check(&frame, &norm, &u, &s, &coeffs)
                .unwrap()
                .passed
        );

        let wrong: BTreeMap<usize, f64> = [(1, 1.0), (3, 1.0)].into();
        assert_eq!(
            coset_invariance_check(&frame, &norm, &u, &s, &wrong).unwrap_err(),
            Error::CoefficientMismatch {
                expected: vec![2, 3],
                actual: vec![1, 3]
            }
        );

        // shifting along a removed direction is not a coset move
        let y1 = frame.get(1).unwrap().clone();
        let c = coset_shift_check(&frame, &norm, &Vector::zeros(4), &s, &y1).unwrap();
        assert_eq!((c.lhs, c.rhs), (0.0, 1.0));
        assert!(!c.passed);
    }

    #[test]
    fn quotient_axioms_pass() {
        let (frame, norm) = orthonormal(4, 3);
        for s in class_collection(3, 2).unwrap().members {
            let reports = quotient_norm_axioms(&frame, &norm, &s, 120, 8).unwrap();
            for r in reports {
                assert!(r.passed(), "{:?} on {s}: {:?}", r.axiom, r.witness);
            }
        }
        let space = SpaceConfig::<f64>::euclidean(5, 3).unwrap();
        let frame = Frame::random(space.clone(), 4);
        let norm = NNorm::standard(space);
        let reports = quotient_norm_axioms(&frame, &norm, &set(&[2]), 120, 9).unwrap();
        assert!(reports.iter().all(AxiomReport::passed), "{reports:?}");
    }

    #[test]
    fn quotient_definiteness_examples() {
        let (frame, norm) = orthonormal(4, 3);
        let s = set(&[1, 3]);
        let y1 = frame.get(1).unwrap().clone();
        assert!(classm_norm(&frame, &norm, &y1, &s).unwrap() > 0.0);
        let zero_coset = frame.get(2).unwrap().clone();
        assert_eq!(classm_norm(&frame, &norm, &zero_coset, &s).unwrap(), 0.0);
        assert!(in_removed_span(&frame, &zero_coset, &s));
        assert!(!in_removed_span(&frame, &y1, &s));
    }

    #[test]
    fn mismatched_norm_and_frame() {
        let (frame, _) = orthonormal(4, 3);
        let other = NNorm::standard(SpaceConfig::euclidean(5, 3).unwrap());
        assert!(matches!(
            class1_norm(&frame, &other, &Vector::zeros(4), 1),
            Err(Error::InvalidSpace(_))
        ));
    }

    #[test]
    fn frame_json_round_trip() {
        let space = SpaceConfig::<f64>::euclidean(3, 2).unwrap();
        let frame = Frame::random(space, 1);
        let json = serde_json::to_string(&frame).unwrap();
        let back: Frame<f64> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, frame);
        let bad = r#"{"space":{"dim":2,"arity":2},"vectors":[[1,2],[2,4]]}"#;
        assert!(serde_json::from_str::<Frame<f64>>(bad).is_err());
        let coll = class_collection(3, 2).unwrap();
        let json = serde_json::to_string(&coll).unwrap();
        assert_eq!(json, r#"{"n":3,"m":2,"members":[[1,2],[1,3],[2,3]]}"#);
    }
}
