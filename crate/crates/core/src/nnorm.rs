//! The n-norm: the standard Gram-determinant norm, a pluggable evaluator type
//! and randomized axiom checkers that work on any evaluator.

use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    self, gram_matrix, inner_unchecked, rank_profile, SpaceConfig, SquareMatrix, Vector,
};
use crate::sampling::{self, TupleStyle};
use crate::scalar::{Real, Scalar};

pub type Evaluator<T> = Arc<dyn Fn(&SpaceConfig<T>, &[Vector<T>]) -> T + Send + Sync>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormKind {
    Standard,
    Custom(String),
}

/// A function `X^n -> R` bound to a space. Only [`NormKind::Standard`] is
/// built in; anything else is injected through [`NNorm::custom`].
#[derive(Clone)]
pub struct NNorm<T> {
    cfg: SpaceConfig<T>,
    kind: NormKind,
    evaluator: Evaluator<T>,
}

impl<T: Real> fmt::Debug for NNorm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NNorm")
            .field("kind", &self.kind)
            .field("dim", &self.cfg.dim())
            .field("arity", &self.cfg.arity())
            .finish()
    }
}

impl<T: Real> NNorm<T> {
    pub fn standard(cfg: SpaceConfig<T>) -> Self {
        NNorm {
            cfg,
            kind: NormKind::Standard,
            evaluator: Arc::new(|cfg, vs| gram_schmidt_volume(cfg, vs)),
        }
    }

    pub fn custom<F>(cfg: SpaceConfig<T>, name: impl Into<String>, evaluator: F) -> Self
    where
        F: Fn(&SpaceConfig<T>, &[Vector<T>]) -> T + Send + Sync + 'static,
    {
        NNorm {
            cfg,
            kind: NormKind::Custom(name.into()),
            evaluator: Arc::new(evaluator),
        }
    }

    pub fn config(&self) -> &SpaceConfig<T> {
        &self.cfg
    }

    pub fn kind(&self) -> &NormKind {
        &self.kind
    }

    pub fn eval(&self, vs: &[Vector<T>]) -> Result<T> {
        check_tuple(&self.cfg, vs)?;
        Ok(self.eval_unchecked(vs))
    }

    pub(crate) fn eval_unchecked(&self, vs: &[Vector<T>]) -> T {
        (self.evaluator)(&self.cfg, vs)
    }
}

fn check_tuple<T: Scalar>(cfg: &SpaceConfig<T>, vs: &[Vector<T>]) -> Result<()> {
    if vs.len() != cfg.arity() {
        return Err(Error::ArityMismatch {
            expected: cfg.arity(),
            actual: vs.len(),
        });
    }
    vs.iter().try_for_each(|v| cfg.check_dim(v))
}

/// Square root of the Gram determinant of `vs`.
///
/// Evaluated as the product of Gram-Schmidt residual lengths under the
/// metric, which equals `sqrt(det G)` but keeps absolute error near machine
/// precision times the Hadamard bound. Forming `G` first squares the
/// condition number; [`gram_norm`] is the literal route, done exactly.
pub fn standard_norm<T: Real>(cfg: &SpaceConfig<T>, vs: &[Vector<T>]) -> Result<T> {
    check_tuple(cfg, vs)?;
    Ok(gram_schmidt_volume(cfg, vs))
}

fn gram_schmidt_volume<T: Real>(cfg: &SpaceConfig<T>, vs: &[Vector<T>]) -> T {
    let mut basis: Vec<Vector<T>> = Vec::with_capacity(vs.len());
    let mut volume = T::one();
    for x in vs {
        let mut r = x.clone();
        // two passes: classical Gram-Schmidt needs reorthogonalization
        for _ in 0..2 {
            for q in &basis {
                let c = inner_unchecked(cfg, &r, q);
                r = r.axpy(&-c, q);
            }
        }
        let len = linalg::length(cfg, &r);
        // residuals at the rounding floor are exact zeros
        let floor = T::epsilon()
            * T::from_usize(4 * vs.len()).unwrap_or_else(T::one)
            * linalg::length(cfg, x);
        if len <= floor {
            return T::zero();
        }
        volume = volume * len;
        basis.push(r.scaled(&len.recip()));
    }
    volume
}

/// `det` of the Gram matrix; exact for exact scalars.
pub fn gram_determinant<T: Scalar>(cfg: &SpaceConfig<T>, vs: &[Vector<T>]) -> Result<T> {
    check_tuple(cfg, vs)?;
    Ok(linalg::determinant(&gram_matrix(cfg, vs)?))
}

/// `sqrt(det G)` with `G` and its determinant formed in rational arithmetic.
///
/// Float inputs convert to rationals without error, so the only rounding is
/// the final conversion and square root.
pub fn gram_norm<T: Real>(cfg: &SpaceConfig<T>, vs: &[Vector<T>]) -> Result<T> {
    check_tuple(cfg, vs)?;
    let exact = |x: &T| {
        BigRational::from_float(x.to_f64_lossy()).ok_or(Error::NonFinite("gram_norm input"))
    };
    let rows = vs
        .iter()
        .map(|v| v.coords().iter().map(exact).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    // M a_j for each vector, skipped for the identity metric
    let images: Vec<Vec<BigRational>> = if cfg.is_euclidean() {
        rows.clone()
    } else {
        let metric = cfg
            .metric()
            .rows()
            .iter()
            .map(|r| r.iter().map(exact).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        rows.iter()
            .map(|a| {
                metric
                    .iter()
                    .map(|m| m.iter().zip(a).map(|(x, y)| x * y).sum())
                    .collect()
            })
            .collect()
    };
    let gram: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|a| {
            images
                .iter()
                .map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect();
    let det = linalg::determinant(&SquareMatrix::from_rows(gram)?);
    let det = det.to_f64().unwrap_or(f64::INFINITY).max(0.0);
    Ok(T::from_f64_lossy(det.sqrt()))
}

/// Product of the vector lengths; bounds the standard norm from above.
pub fn hadamard_scale<T: Real>(cfg: &SpaceConfig<T>, vs: &[Vector<T>]) -> T {
    vs.iter()
        .fold(T::one(), |acc, v| acc * linalg::length(cfg, v))
}

/// `diff / scale`, treating `0 / 0` as zero and `x / 0` as infinite.
pub(crate) fn normalized(diff: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        diff / scale
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axiom {
    Nonnegativity,
    /// Zero value implies linear dependence.
    DefinitenessForward,
    /// Linear dependence implies zero value.
    DefinitenessBackward,
    PermutationInvariance,
    AbsoluteHomogeneity,
    TriangleInequality,
    ShiftInvariance,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::Nonnegativity,
        Axiom::DefinitenessForward,
        Axiom::DefinitenessBackward,
        Axiom::PermutationInvariance,
        Axiom::AbsoluteHomogeneity,
        Axiom::TriangleInequality,
        Axiom::ShiftInvariance,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Pass,
    Fail,
}

/// Offending input for a failed check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: Scalar + Serialize",
    deserialize = "T: Scalar + Deserialize<'de>"
))]
pub struct Witness<T> {
    pub inputs: Vec<Vector<T>>,
    /// Scalars used by the check (homogeneity factor, shift coefficients, ...).
    pub parameters: Vec<T>,
    pub discrepancy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: Scalar + Serialize",
    deserialize = "T: Scalar + Deserialize<'de>"
))]
pub struct AxiomReport<T> {
    pub axiom: Axiom,
    pub outcome: Outcome,
    /// Number of evaluated cases whose premise applied.
    pub cases: usize,
    /// Failure threshold the discrepancy was compared against.
    pub threshold: f64,
    pub worst_discrepancy: f64,
    pub witness: Option<Witness<T>>,
}

impl<T> AxiomReport<T> {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

/// Accumulates one axiom's cases, keeping the worst failing witness.
pub(crate) struct Tally<T> {
    axiom: Axiom,
    threshold: f64,
    cases: usize,
    worst: f64,
    witness: Option<Witness<T>>,
}

impl<T: Scalar> Tally<T> {
    pub(crate) fn new(axiom: Axiom, threshold: f64) -> Self {
        Tally {
            axiom,
            threshold,
            cases: 0,
            worst: 0.0,
            witness: None,
        }
    }

    pub(crate) fn record(
        &mut self,
        discrepancy: f64,
        inputs: impl FnOnce() -> (Vec<Vector<T>>, Vec<T>),
    ) {
        self.cases += 1;
        let discrepancy = if discrepancy.is_nan() {
            f64::INFINITY
        } else {
            discrepancy
        };
        if discrepancy > self.worst {
            self.worst = discrepancy;
            if discrepancy > self.threshold {
                let (inputs, parameters) = inputs();
                self.witness = Some(Witness {
                    inputs,
                    parameters,
                    discrepancy,
                });
            }
        }
    }

    pub(crate) fn finish(self) -> AxiomReport<T> {
        AxiomReport {
            axiom: self.axiom,
            outcome: if self.witness.is_some() {
                Outcome::Fail
            } else {
                Outcome::Pass
            },
            cases: self.cases,
            threshold: self.threshold,
            worst_discrepancy: self.worst,
            witness: self.witness,
        }
    }
}

/// Both sides of a shift or coset identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftCheck<T> {
    pub lhs: T,
    pub rhs: T,
    /// `|lhs - rhs|` relative to the larger Hadamard scale of the two sides.
    pub discrepancy: f64,
    pub passed: bool,
}

/// `‖x1,…,xn‖ = ‖x1 + α2 x2 + … + αn xn, x2,…,xn‖`.
pub fn shift_invariance_check<T: Real>(
    norm: &NNorm<T>,
    vs: &[Vector<T>],
    alphas: &[T],
) -> Result<ShiftCheck<T>> {
    check_tuple(norm.config(), vs)?;
    if alphas.len() + 1 != vs.len() {
        return Err(Error::ArityMismatch {
            expected: vs.len() - 1,
            actual: alphas.len(),
        });
    }
    let shifted_first = vs[1..]
        .iter()
        .zip(alphas)
        .fold(vs[0].clone(), |acc, (x, a)| acc.axpy(a, x));
    let mut shifted = vs.to_vec();
    shifted[0] = shifted_first;

    let cfg = norm.config();
    let lhs = norm.eval_unchecked(vs);
    let rhs = norm.eval_unchecked(&shifted);
    let scale = hadamard_scale(cfg, vs).max(hadamard_scale(cfg, &shifted));
    let discrepancy = normalized((lhs - rhs).abs().to_f64_lossy(), scale.to_f64_lossy());
    Ok(ShiftCheck {
        lhs,
        rhs,
        discrepancy,
        passed: discrepancy <= cfg.tolerance().rel,
    })
}

/// Randomized check of every n-norm axiom plus the shift identity.
///
/// Each axiom draws `trials` tuples from its own seeded stream, cycling
/// through uniform and near-dependent samples. Discrepancies are measured
/// relative to the Hadamard bound of the tuples involved.
pub fn check_axioms<T: Real>(
    norm: &NNorm<T>,
    trials: usize,
    seed: u64,
) -> Result<Vec<AxiomReport<T>>> {
    if trials == 0 {
        return Err(Error::Precondition("trials must be at least 1".into()));
    }
    Ok(Axiom::ALL
        .iter()
        .enumerate()
        .map(|(i, &axiom)| check_axiom(norm, axiom, trials, seed, i as u64))
        .collect())
}

fn check_axiom<T: Real>(
    norm: &NNorm<T>,
    axiom: Axiom,
    trials: usize,
    seed: u64,
    stream: u64,
) -> AxiomReport<T> {
    let cfg = norm.config();
    let tol = *cfg.tolerance();
    let (dim, arity) = (cfg.dim(), cfg.arity());
    let mut rng = sampling::stream(seed, stream);
    let threshold = match axiom {
        Axiom::Nonnegativity | Axiom::DefinitenessForward | Axiom::DefinitenessBackward => tol.zero,
        _ => tol.rel,
    };
    let mut tally = Tally::new(axiom, threshold);
    let f = |x: T| x.to_f64_lossy();

    for trial in 0..trials {
        let style = sampling::style_for_trial(trial);
        let vs: Vec<Vector<T>> = sampling::sample_tuple(&mut rng, dim, arity, style);
        let value = f(norm.eval_unchecked(&vs));
        let scale = f(hadamard_scale(cfg, &vs));
        let inputs = || (vs.clone(), Vec::new());
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
                let looks_zero = value.abs() <= tol.zero * scale;
                if looks_zero {
                    let profile = rank_profile(&vs, &tol);
                    let d = if profile.rank == arity {
                        profile.smallest_pivot
                    } else {
                        0.0
                    };
                    tally.record(d, inputs);
                }
            }
            Axiom::DefinitenessBackward => {
                if rank_profile(&vs, &tol).rank < arity {
                    tally.record(normalized(value.abs(), scale), inputs);
                }
            }
            Axiom::PermutationInvariance => {
                let orders: Vec<Vec<usize>> = if arity <= 4 {
                    (0..arity).permutations(arity).collect()
                } else {
                    let mut p: Vec<usize> = (0..arity).collect();
                    p.shuffle(&mut rng);
                    vec![p]
                };
                let worst = orders
                    .iter()
                    .map(|p| {
                        let permuted: Vec<Vector<T>> = p.iter().map(|&i| vs[i].clone()).collect();
                        normalized((f(norm.eval_unchecked(&permuted)) - value).abs(), scale)
                    })
                    .fold(0.0, f64::max);
                tally.record(worst, inputs);
            }
            Axiom::AbsoluteHomogeneity => {
                let alpha = T::from_f64_lossy(rng.gen_range(-10.0..=10.0));
                let mut scaled = vs.clone();
                scaled[0] = vs[0].scaled(&alpha);
                let lhs = f(norm.eval_unchecked(&scaled));
                let rhs = f(alpha.abs()) * value;
                let d = normalized((lhs - rhs).abs(), f(alpha.abs()) * scale);
                tally.record(d, || (vs.clone(), vec![alpha]));
            }
            Axiom::TriangleInequality => {
                let other: Vector<T> = match style {
                    TupleStyle::Uniform => sampling::uniform_vector(&mut rng, dim, 1.0),
                    // partner that nearly cancels the first slot
                    TupleStyle::NearDependent { .. } => {
                        let w: Vector<T> = sampling::uniform_vector(&mut rng, dim, 1e-3);
                        vs[0].scaled(&-T::one()).axpy(&T::one(), &w)
                    }
                };
                let mut primed = vs.clone();
                primed[0] = other.clone();
                let mut summed = vs.clone();
                summed[0] = &vs[0] + &other;
                let lhs = f(norm.eval_unchecked(&summed));
                let rhs = value + f(norm.eval_unchecked(&primed));
                let s = scale
                    .max(f(hadamard_scale(cfg, &primed)))
                    .max(f(hadamard_scale(cfg, &summed)));
                tally.record(normalized((lhs - rhs).max(0.0), s), || {
                    let mut inputs = vs.clone();
                    inputs.push(other.clone());
                    (inputs, Vec::new())
                });
            }
            Axiom::ShiftInvariance => {
                let alphas: Vec<T> = (1..arity)
                    .map(|_| T::from_f64_lossy(rng.gen_range(-5.0..=5.0)))
                    .collect();
                let check = shift_invariance_check(norm, &vs, &alphas)
                    .expect("arity matches by construction");
                tally.record(check.discrepancy, || (vs.clone(), alphas.clone()));
            }
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

    fn space(dim: usize, arity: usize) -> SpaceConfig<f64> {
        SpaceConfig::euclidean(dim, arity).unwrap()
    }

    #[test]
    fn standard_norm_examples() {
        let cfg = space(3, 2);
        assert_eq!(
            standard_norm(&cfg, &[Vector::unit(3, 0), Vector::unit(3, 1)]).unwrap(),
            1.0
        );
        let six = standard_norm(&cfg, &[v(&[2.0, 0.0, 0.0]), v(&[0.0, 3.0, 0.0])]).unwrap();
        assert!((six - 6.0).abs() < 1e-12);
        assert!(
            (gram_norm(&cfg, &[v(&[2.0, 0.0, 0.0]), v(&[0.0, 3.0, 0.0])]).unwrap() - 6.0).abs()
                < 1e-12
        );

        let cfg3 = space(3, 3);
        let a = v(&[0.3, -1.0, 2.0]);
        let b = v(&[1.5, 0.5, -0.25]);
        let dep = standard_norm(&cfg3, &[a.clone(), b.clone(), &a + &b]).unwrap();
        assert!(dep <= 1e-12, "dependent triple gave {dep}");
    }

    #[test]
    fn arity_and_dimension_errors() {
        let cfg = space(3, 2);
        assert_eq!(
            standard_norm(&cfg, &[Vector::unit(3, 0)]).unwrap_err(),
            Error::ArityMismatch {
                expected: 2,
                actual: 1
            }
        );
        assert_eq!(
            standard_norm(&cfg, &[Vector::unit(3, 0), Vector::unit(2, 0)]).unwrap_err(),
            Error::DimensionMismatch {
                expected: 3,
                actual: 2
            }
        );
    }

    #[test]
    fn standard_norm_passes_all_axioms() {
        for (d, n) in [(3, 2), (4, 4), (6, 3)] {
            let norm = NNorm::standard(space(d, n));
            let reports = check_axioms(&norm, 300, 17).unwrap();
            assert_eq!(reports.len(), 7);
            for r in &reports {
                assert!(
                    r.passed(),
                    "{:?} failed for d={d} n={n}: {:?}",
                    r.axiom,
                    r.witness
                );
                assert!(r.cases > 0, "{:?} saw no cases", r.axiom);
            }
        }
    }

    #[test]
    fn zero_trials_rejected() {
        let norm = NNorm::standard(space(3, 2));
        assert!(matches!(
            check_axioms(&norm, 0, 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn broken_norm_fails_backward_definiteness() {
        let broken = NNorm::custom(
            space(3, 2),
            "abs-first-coordinates",
            |_, vs: &[Vector<f64>]| vs.iter().map(|v| v.coords()[0].abs()).sum(),
        );
        let reports = check_axioms(&broken, 60, 5).unwrap();
        let backward = reports
            .iter()
            .find(|r| r.axiom == Axiom::DefinitenessBackward)
            .unwrap();
        assert_eq!(backward.outcome, Outcome::Fail);
        let w = backward.witness.as_ref().unwrap();
        assert!(w.discrepancy > backward.threshold);
        // the witness really is dependent yet evaluates nonzero
        let tol = linalg::Tolerance::default();
        assert!(linalg::rank(&w.inputs, &tol) < 2);
        assert!(broken.eval(&w.inputs).unwrap() > 0.0);
    }

    #[test]
    fn checker_is_deterministic() {
        let broken = NNorm::custom(space(4, 2), "sum-lengths", |c, vs: &[Vector<f64>]| {
            vs.iter().map(|v| linalg::length(c, v)).sum()
        });
        let a = check_axioms(&broken, 50, 99).unwrap();
        let b = check_axioms(&broken, 50, 99).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn shift_examples() {
        let norm = NNorm::standard(space(4, 3));
        let vs = vec![
            v(&[1.0, 2.0, 0.0, 1.0]),
            v(&[0.0, 1.0, 1.0, 0.0]),
            v(&[3.0, 0.0, 1.0, -1.0]),
        ];
        let zero = shift_invariance_check(&norm, &vs, &[0.0, 0.0]).unwrap();
        assert!(zero.passed);
        assert_eq!(zero.discrepancy, 0.0);
        let shifted = shift_invariance_check(&norm, &vs, &[-4.5, 2.25]).unwrap();
        assert!(shifted.passed, "{shifted:?}");

        let dep = vec![vs[0].clone(), vs[1].clone(), &vs[0] + &vs[1]];
        let c = shift_invariance_check(&norm, &dep, &[3.0, -1.0]).unwrap();
        assert!(c.passed && c.lhs < 1e-12 && c.rhs < 1e-12);

        assert!(matches!(
            shift_invariance_check(&norm, &vs, &[1.0]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn f32_standard_norm() {
        let cfg = SpaceConfig::<f32>::euclidean(3, 2).unwrap();
        let val = standard_norm(
            &cfg,
            &[
                Vector::from_f64(&[2.0, 0.0, 0.0]).unwrap(),
                Vector::from_f64(&[1.0, 3.0, 0.0]).unwrap(),
            ],
        )
        .unwrap();
        assert!((val - 6.0).abs() < 1e-5);
        let reports = check_axioms(&NNorm::standard(cfg), 60, 2).unwrap();
        assert!(reports.iter().all(|r| r.passed()), "{reports:?}");
    }
}
