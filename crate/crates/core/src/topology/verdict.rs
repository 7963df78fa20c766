use serde::Serialize;

use super::sequence::{ClosedForm, Profile, SequenceSpec, TableEntry};
use super::NormSelection;
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::nnorm::NNorm;
use crate::quotient::{classm_norm, classm_scale, Frame, IndexSet};
use crate::scalar::{Real, Scalar};

/// Indices at which analytic verdicts record trace samples.
pub const EVIDENCE_KS: [u64; 6] = [1, 2, 3, 10, 100, 1000];

const TAIL_FRACTION_DEN: usize = 2;
const DECAY_RATIO: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[serde(bound(serialize = "T: Scalar + Serialize"))]
pub enum Conclusion<T> {
    Converges { limit: Vector<T> },
    Diverges,
    Bounded { bound: T },
    Unbounded,
    Cauchy,
    NotCauchy,
    Inconclusive,
}

/// [`Conclusion`] without its payload, for comparing verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConclusionKind {
    Converges,
    Diverges,
    Bounded,
    Unbounded,
    Cauchy,
    NotCauchy,
    Inconclusive,
}

impl<T> Conclusion<T> {
    pub fn kind(&self) -> ConclusionKind {
        match self {
            Conclusion::Converges { .. } => ConclusionKind::Converges,
            Conclusion::Diverges => ConclusionKind::Diverges,
            Conclusion::Bounded { .. } => ConclusionKind::Bounded,
            Conclusion::Unbounded => ConclusionKind::Unbounded,
            Conclusion::Cauchy => ConclusionKind::Cauchy,
            Conclusion::NotCauchy => ConclusionKind::NotCauchy,
            Conclusion::Inconclusive => ConclusionKind::Inconclusive,
        }
    }
}

/// Table window used by a sampled verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleWindow {
    pub first_k: u64,
    pub last_k: u64,
    /// First index of the tail whose traces must be non-increasing.
    pub tail_from_k: u64,
    /// The final trace value must be at most this fraction of the window peak.
    pub decay_ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Method {
    Analytic,
    Sampled { window: SampleWindow },
}

/// Asymptotic shape of one subset's trace, known exactly on the analytic path.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "trend", rename_all = "snake_case")]
pub enum Trend<T> {
    /// Zero for every `k`, up to the zero tolerance.
    Zero,
    /// Tends to zero.
    Vanishes,
    /// Tends to a positive constant.
    Settles { value: T },
    /// Grows like `rate * k`.
    Grows { rate: T },
    /// Takes one value on even `k` and another on odd `k`.
    Alternates { even: T, odd: T },
    /// Never exceeds `bound`.
    Bounded { bound: T },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceSample<T> {
    pub k: u64,
    /// Second index for difference traces `‖x_k - x_l‖`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u64>,
    pub value: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Scalar + Serialize"))]
pub struct SubsetEvidence<T> {
    pub subset: IndexSet,
    pub samples: Vec<TraceSample<T>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trend: Option<Trend<T>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Scalar + Serialize"))]
pub struct Verdict<T> {
    pub conclusion: Conclusion<T>,
    pub method: Method,
    pub evidence: Vec<SubsetEvidence<T>>,
}

impl<T> Verdict<T> {
    pub fn kind(&self) -> ConclusionKind {
        self.conclusion.kind()
    }
}

/// What [`is_bounded_wrt`] inspects.
#[derive(Debug, Clone, Copy)]
pub enum BoundedSubject<'a, T> {
    Points(&'a [Vector<T>]),
    Sequence(&'a SequenceSpec<T>),
}

/// `(value, value is zero)` for `‖ū‖*_s`, judged against the Hadamard scale.
fn probe<T: Real>(
    frame: &Frame<T>,
    norm: &NNorm<T>,
    u: &Vector<T>,
    s: &IndexSet,
) -> Result<(T, bool)> {
    let value = classm_norm(frame, norm, u, s)?;
    let tol = T::from_f64_lossy(norm.config().tolerance().zero);
    Ok((value, value <= tol * classm_scale(frame, u, s)))
}

fn direction_probe<T: Real>(
    frame: &Frame<T>,
    norm: &NNorm<T>,
    cf: &ClosedForm<T>,
    s: &IndexSet,
) -> Result<(T, bool)> {
    match &cf.direction {
        Some(v) if cf.moves() => probe(frame, norm, v, s),
        _ => Ok((T::zero(), true)),
    }
}

fn prepare<T: Real>(
    spec: &SequenceSpec<T>,
    frame: &Frame<T>,
    selection: &NormSelection,
) -> Result<()> {
    spec.validate()?;
    selection.check_frame(frame)?;
    let dim = frame.space().dim();
    match spec.dim() {
        Some(d) if d != dim => Err(Error::DimensionMismatch {
            expected: dim,
            actual: d,
        }),
        _ => Ok(()),
    }
}

fn table_of<T>(spec: &SequenceSpec<T>) -> &[TableEntry<T>] {
    match spec {
        SequenceSpec::Custom { table } => table,
        _ => &[],
    }
}

fn window_of<T>(table: &[TableEntry<T>]) -> SampleWindow {
    SampleWindow {
        first_k: table.first().map_or(0, |e| e.k),
        last_k: table.last().map_or(0, |e| e.k),
        tail_from_k: table
            .get(table.len() / TAIL_FRACTION_DEN)
            .map_or(0, |e| e.k),
        decay_ratio: DECAY_RATIO,
    }
}

fn max_of<T: Real>(xs: impl IntoIterator<Item = T>) -> T {
    xs.into_iter().fold(T::zero(), |a, b| a.max(b))
}

/// Tail of `trace` is non-increasing and its last value has decayed to
/// `decay_ratio` of `peak`.
fn settles<T: Real>(trace: &[T], peak: T, tol_rel: f64) -> bool {
    if trace.len() < 2 {
        return false;
    }
    let slack = T::from_f64_lossy(tol_rel) * peak;
    let tail = &trace[trace.len() / TAIL_FRACTION_DEN..];
    let monotone = tail.windows(2).all(|w| w[1] <= w[0] + slack);
    let last = *trace.last().expect("nonempty");
    monotone && last <= T::from_f64_lossy(DECAY_RATIO) * peak
}

/// Whether `spec` converges to `candidate_limit` with respect to every norm
/// in `selection`.
///
/// A sequence that converges to some other point is reported as
/// [`Conclusion::Diverges`], since the verdict is about the candidate.
pub fn converges_wrt<T: Real>(
    spec: &SequenceSpec<T>,
    frame: &Frame<T>,
    norm: &NNorm<T>,
    selection: &NormSelection,
    candidate_limit: &Vector<T>,
) -> Result<Verdict<T>> {
    prepare(spec, frame, selection)?;
    frame.space().check_dim(candidate_limit)?;
    let Some(cf) = spec.closed_form() else {
        return sampled_convergence(table_of(spec), frame, norm, selection, candidate_limit);
    };

    let offset = &cf.base - candidate_limit;
    let mut all = true;
    let mut evidence = Vec::with_capacity(selection.subsets().len());
    for s in selection.subsets() {
        let (a_val, a_null) = probe(frame, norm, &offset, s)?;
        let (_, v_null) = direction_probe(frame, norm, &cf, s)?;
        let vanishing = matches!(cf.profile, Profile::Vanishing { .. });
        let trend = match (&cf.profile, v_null) {
            (_, true) if a_null => Trend::Zero,
            (_, true) => Trend::Settles { value: a_val },
            (Profile::Vanishing { .. }, false) if a_null => Trend::Vanishes,
            (Profile::Vanishing { .. }, false) => Trend::Settles { value: a_val },
            (Profile::Linear, false) => Trend::Grows {
                rate: classm_norm(frame, norm, cf.direction.as_ref().expect("moving"), s)?,
            },
            (_, false) => Trend::Alternates {
                even: classm_norm(frame, norm, &(&cf.at(2) - candidate_limit), s)?,
                odd: classm_norm(frame, norm, &(&cf.at(1) - candidate_limit), s)?,
            },
        };
        all &= a_null && (v_null || vanishing);
        let samples = EVIDENCE_KS
            .iter()
            .map(|&k| {
                classm_norm(frame, norm, &(&cf.at(k) - candidate_limit), s)
                    .map(|value| TraceSample { k, l: None, value })
            })
            .collect::<Result<_>>()?;
        evidence.push(SubsetEvidence {
            subset: s.clone(),
            samples,
            trend: Some(trend),
        });
    }
    let conclusion = if all {
        Conclusion::Converges {
            limit: candidate_limit.clone(),
        }
    } else {
        Conclusion::Diverges
    };
    Ok(Verdict {
        conclusion,
        method: Method::Analytic,
        evidence,
    })
}

fn sampled_convergence<T: Real>(
    table: &[TableEntry<T>],
    frame: &Frame<T>,
    norm: &NNorm<T>,
    selection: &NormSelection,
    candidate_limit: &Vector<T>,
) -> Result<Verdict<T>> {
    let tol_rel = norm.config().tolerance().rel;
    let mut all = true;
    let mut evidence = Vec::new();
    for s in selection.subsets() {
        let samples: Vec<TraceSample<T>> = table
            .iter()
            .map(|e| {
                classm_norm(frame, norm, &(&e.point - candidate_limit), s).map(|value| {
                    TraceSample {
                        k: e.k,
                        l: None,
                        value,
                    }
                })
            })
            .collect::<Result<_>>()?;
        let trace: Vec<T> = samples.iter().map(|t| t.value).collect();
        all &= settles(&trace, max_of(trace.iter().copied()), tol_rel);
        evidence.push(SubsetEvidence {
            subset: s.clone(),
            samples,
            trend: None,
        });
    }
    let conclusion = if all {
        Conclusion::Converges {
            limit: candidate_limit.clone(),
        }
    } else {
        Conclusion::Inconclusive
    };
    Ok(Verdict {
        conclusion,
        method: Method::Sampled {
            window: window_of(table),
        },
        evidence,
    })
}

/// Whether `spec` is Cauchy with respect to every norm in `selection`.
///
/// Analytic evidence samples `‖x_{2k+1} - x_k‖*_s`.
pub fn is_cauchy_wrt<T: Real>(
    spec: &SequenceSpec<T>,
    frame: &Frame<T>,
    norm: &NNorm<T>,
    selection: &NormSelection,
) -> Result<Verdict<T>> {
    prepare(spec, frame, selection)?;
    let Some(cf) = spec.closed_form() else {
        return sampled_cauchy(table_of(spec), frame, norm, selection);
    };

    let mut all = true;
    let mut evidence = Vec::with_capacity(selection.subsets().len());
    for s in selection.subsets() {
        let (v_val, v_null) = direction_probe(frame, norm, &cf, s)?;
        let trend = match (&cf.profile, v_null) {
            (_, true) => Trend::Zero,
            (Profile::Vanishing { .. }, false) => Trend::Vanishes,
            (Profile::Linear, false) => Trend::Grows { rate: v_val },
            (_, false) => Trend::Alternates {
                even: classm_norm(frame, norm, &(&cf.at(5) - &cf.at(2)), s)?,
                odd: T::zero(),
            },
        };
        all &= v_null || matches!(cf.profile, Profile::Vanishing { .. });
        let samples = EVIDENCE_KS
            .iter()
            .map(|&k| {
                let l = 2 * k + 1;
                classm_norm(frame, norm, &(&cf.at(l) - &cf.at(k)), s).map(|value| TraceSample {
                    k,
                    l: Some(l),
                    value,
                })
            })
            .collect::<Result<_>>()?;
        evidence.push(SubsetEvidence {
            subset: s.clone(),
            samples,
            trend: Some(trend),
        });
    }
    let conclusion = if all {
        Conclusion::Cauchy
    } else {
        Conclusion::NotCauchy
    };
    Ok(Verdict {
        conclusion,
        method: Method::Analytic,
        evidence,
    })
}

fn sampled_cauchy<T: Real>(
    table: &[TableEntry<T>],
    frame: &Frame<T>,
    norm: &NNorm<T>,
    selection: &NormSelection,
) -> Result<Verdict<T>> {
    let tol_rel = norm.config().tolerance().rel;
    let mut all = true;
    let mut evidence = Vec::new();
    for s in selection.subsets() {
        let samples: Vec<TraceSample<T>> = table
            .windows(2)
            .map(|w| {
                classm_norm(frame, norm, &(&w[1].point - &w[0].point), s).map(|value| TraceSample {
                    k: w[0].k,
                    l: Some(w[1].k),
                    value,
                })
            })
            .collect::<Result<_>>()?;
        let mut diameter = T::zero();
        for (i, a) in table.iter().enumerate() {
            for b in &table[i + 1..] {
                diameter = diameter.max(classm_norm(frame, norm, &(&b.point - &a.point), s)?);
            }
        }
        let gaps: Vec<T> = samples.iter().map(|t| t.value).collect();
        all &= settles(&gaps, diameter, tol_rel);
        evidence.push(SubsetEvidence {
            subset: s.clone(),
            samples,
            trend: None,
        });
    }
    let conclusion = if all {
        Conclusion::Cauchy
    } else {
        Conclusion::Inconclusive
    };
    Ok(Verdict {
        conclusion,
        method: Method::Sampled {
            window: window_of(table),
        },
        evidence,
    })
}

/// Whether the subject stays within some `M` under every norm in `selection`.
///
/// Finite point sets and custom tables report the largest value seen. Closed
/// forms report `max_s (‖base‖*_s + sup|phi| ‖v‖*_s)`, an upper bound by the
/// triangle inequality.
pub fn is_bounded_wrt<T: Real>(
    subject: BoundedSubject<'_, T>,
    frame: &Frame<T>,
    norm: &NNorm<T>,
    selection: &NormSelection,
) -> Result<Verdict<T>> {
    match subject {
        BoundedSubject::Points(points) => {
            if points.is_empty() {
                return Err(Error::Empty("point set"));
            }
            selection.check_frame(frame)?;
            points.iter().try_for_each(|p| frame.space().check_dim(p))?;
            let indexed: Vec<(u64, &Vector<T>)> = (1..).zip(points).collect();
            finite_bound(&indexed, frame, norm, selection, Method::Analytic)
        }
        BoundedSubject::Sequence(spec) => {
            prepare(spec, frame, selection)?;
            match spec.closed_form() {
                Some(cf) => analytic_bound(&cf, frame, norm, selection),
                None => {
                    let table = table_of(spec);
                    let indexed: Vec<(u64, &Vector<T>)> =
                        table.iter().map(|e| (e.k, &e.point)).collect();
                    let method = Method::Sampled {
                        window: window_of(table),
                    };
                    finite_bound(&indexed, frame, norm, selection, method)
                }
            }
        }
    }
}

fn finite_bound<T: Real>(
    points: &[(u64, &Vector<T>)],
    frame: &Frame<T>,
    norm: &NNorm<T>,
    selection: &NormSelection,
    method: Method,
) -> Result<Verdict<T>> {
    let mut bound = T::zero();
    let mut evidence = Vec::new();
    for s in selection.subsets() {
        let samples: Vec<TraceSample<T>> = points
            .iter()
            .map(|&(k, p)| {
                classm_norm(frame, norm, p, s).map(|value| TraceSample { k, l: None, value })
            })
            .collect::<Result<_>>()?;
        let local = max_of(samples.iter().map(|t| t.value));
        bound = bound.max(local);
        evidence.push(SubsetEvidence {
            subset: s.clone(),
            samples,
            trend: Some(Trend::Bounded { bound: local }),
        });
    }
    Ok(Verdict {
        conclusion: Conclusion::Bounded { bound },
        method,
        evidence,
    })
}

fn analytic_bound<T: Real>(
    cf: &ClosedForm<T>,
    frame: &Frame<T>,
    norm: &NNorm<T>,
    selection: &NormSelection,
) -> Result<Verdict<T>> {
    let mut bound = T::zero();
    let mut unbounded = false;
    let mut evidence = Vec::new();
    for s in selection.subsets() {
        let base = classm_norm(frame, norm, &cf.base, s)?;
        let (v_val, v_null) = direction_probe(frame, norm, cf, s)?;
        let trend = match cf.phi_bound() {
            None if !v_null => {
                unbounded = true;
                Trend::Grows { rate: v_val }
            }
            None => Trend::Bounded { bound: base },
            Some(sup) => Trend::Bounded {
                bound: base + sup * v_val,
            },
        };
        if let Trend::Bounded { bound: b } = &trend {
            bound = bound.max(*b);
        }
        let samples = EVIDENCE_KS
            .iter()
            .map(|&k| {
                classm_norm(frame, norm, &cf.at(k), s).map(|value| TraceSample {
                    k,
                    l: None,
                    value,
                })
            })
            .collect::<Result<_>>()?;
        evidence.push(SubsetEvidence {
            subset: s.clone(),
            samples,
            trend: Some(trend),
        });
    }
    let conclusion = if unbounded {
        Conclusion::Unbounded
    } else {
        Conclusion::Bounded { bound }
    };
    Ok(Verdict {
        conclusion,
        method: Method::Analytic,
        evidence,
    })
}

/// Verdicts for one class level under its full collection.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Scalar + Serialize"))]
pub struct EquivalenceRow<T> {
    pub m: usize,
    pub convergence: Verdict<T>,
    pub boundedness: Verdict<T>,
    pub cauchy: Verdict<T>,
}

impl<T> EquivalenceRow<T> {
    pub fn kinds(&self) -> [ConclusionKind; 3] {
        [
            self.convergence.kind(),
            self.boundedness.kind(),
            self.cauchy.kind(),
        ]
    }
}

/// Convergence, boundedness and Cauchy verdicts under the full class-m
/// collection for each `m = 1..=n`.
pub fn equivalence_matrix<T: Real>(
    spec: &SequenceSpec<T>,
    frame: &Frame<T>,
    norm: &NNorm<T>,
    candidate_limit: &Vector<T>,
) -> Result<Vec<EquivalenceRow<T>>> {
    if spec.closed_form().is_none() {
        return Err(Error::Precondition(
            "equivalence_matrix needs a closed-form sequence".into(),
        ));
    }
    (1..=frame.arity())
        .map(|m| {
            let full = NormSelection::full(frame.arity(), m)?;
            Ok(EquivalenceRow {
                m,
                convergence: converges_wrt(spec, frame, norm, &full, candidate_limit)?,
                boundedness: is_bounded_wrt(BoundedSubject::Sequence(spec), frame, norm, &full)?,
                cauchy: is_cauchy_wrt(spec, frame, norm, &full)?,
            })
        })
        .collect()
}

/// A non-covering selection that wrongly certifies convergence.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Scalar + Serialize"))]
pub struct UnsoundWitness<T> {
    pub selection: NormSelection,
    pub spec: SequenceSpec<T>,
    pub candidate_limit: Vector<T>,
    pub selection_verdict: Verdict<T>,
    pub full_verdict: Verdict<T>,
}

/// Searches for an index `j` such that the class-m sets avoiding `j`
/// certify `k * y_j -> 0` while the full collection does not.
///
/// Returns `None` when `m = n`, where every selection covers.
pub fn unsound_selection_witness<T: Real>(
    frame: &Frame<T>,
    norm: &NNorm<T>,
    m: usize,
) -> Result<Option<UnsoundWitness<T>>> {
    let n = frame.arity();
    let full = NormSelection::full(n, m)?;
    if m == n {
        return Ok(None);
    }
    let zero = Vector::zeros(frame.space().dim());
    for j in (1..=n).rev() {
        let avoiding: Vec<IndexSet> = full
            .subsets()
            .iter()
            .filter(|s| !s.contains(j))
            .cloned()
            .collect();
        let selection = NormSelection::new(n, avoiding)?;
        let spec = SequenceSpec::DivergentLinear {
            direction: frame.get(j)?.clone(),
        };
        let selection_verdict = converges_wrt(&spec, frame, norm, &selection, &zero)?;
        let full_verdict = converges_wrt(&spec, frame, norm, &full, &zero)?;
        if selection_verdict.kind() != full_verdict.kind() {
            return Ok(Some(UnsoundWitness {
                selection,
                spec,
                candidate_limit: zero,
                selection_verdict,
                full_verdict,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::SpaceConfig;

    fn setup(d: usize, n: usize) -> (Frame<f64>, NNorm<f64>) {
        let space = SpaceConfig::euclidean(d, n).unwrap();
        (Frame::standard_basis(space.clone()), NNorm::standard(space))
    }

    fn v(c: &[f64]) -> Vector<f64> {
        Vector::from_f64(c).unwrap()
    }

    fn power(limit: Vector<f64>, direction: Vector<f64>) -> SequenceSpec<f64> {
        SequenceSpec::ConvergentPower {
            limit,
            direction,
            coefficient: 1.0,
            exponent: 1.0,
        }
    }

    #[test]
    fn power_converges_for_every_class() {
        let (frame, norm) = setup(4, 3);
        let x = v(&[1.0, 2.0, -1.0, 0.5]);
        let spec = power(x.clone(), v(&[0.3, -1.0, 2.0, 1.0]));
        for m in 1..=3 {
            let full = NormSelection::full(3, m).unwrap();
            let verdict = converges_wrt(&spec, &frame, &norm, &full, &x).unwrap();
            assert_eq!(
                verdict.conclusion,
                Conclusion::Converges { limit: x.clone() }
            );
            assert_eq!(verdict.method, Method::Analytic);
        }
    }

    #[test]
    fn power_trace_matches_closed_form() {
        let (frame, norm) = setup(3, 3);
        let dir = v(&[1.0, 1.0, 0.0]);
        let spec = power(Vector::zeros(3), dir.clone());
        let s = IndexSet::new(vec![1]).unwrap();
        let sel = NormSelection::new(3, vec![s.clone()]).unwrap();
        let verdict = converges_wrt(&spec, &frame, &norm, &sel, &Vector::zeros(3)).unwrap();
        let unit = classm_norm(&frame, &norm, &dir, &s).unwrap();
        for t in &verdict.evidence[0].samples {
            let expect = unit / t.k as f64;
            assert!(
                (t.value - expect).abs() <= 1e-12 * unit,
                "k={} {} vs {}",
                t.k,
                t.value,
                expect
            );
        }
        assert_eq!(verdict.evidence[0].trend, Some(Trend::Vanishes));
    }

    #[test]
    fn wrong_candidate_diverges() {
        let (frame, norm) = setup(3, 2);
        let spec = power(v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0]));
        let full = NormSelection::full(2, 1).unwrap();
        let verdict = converges_wrt(&spec, &frame, &norm, &full, &Vector::zeros(3)).unwrap();
        assert_eq!(verdict.conclusion, Conclusion::Diverges);
    }

    #[test]
    fn r5_selections() {
        let (frame, norm) = setup(5, 5);
        let spec = SequenceSpec::DivergentLinear {
            direction: Vector::unit(5, 4),
        };
        let zero = Vector::zeros(5);
        let pair = NormSelection::from_lists(5, &[&[1, 2], &[3, 4]]).unwrap();
        let triple = NormSelection::from_lists(5, &[&[1, 2], &[3, 4], &[1, 5]]).unwrap();
        let a = converges_wrt(&spec, &frame, &norm, &pair, &zero).unwrap();
        assert_eq!(a.kind(), ConclusionKind::Converges);
        let b = converges_wrt(&spec, &frame, &norm, &triple, &zero).unwrap();
        assert_eq!(b.kind(), ConclusionKind::Diverges);
        let e15 = &b.evidence[2];
        for t in &e15.samples {
            assert!((t.value - t.k as f64).abs() <= 1e-9 * t.k as f64);
        }
        assert_eq!(e15.trend, Some(Trend::Grows { rate: 1.0 }));
    }

    #[test]
    fn cauchy_examples() {
        let (frame, norm) = setup(3, 3);
        let full = NormSelection::full(3, 2).unwrap();
        let p = power(v(&[1.0, 1.0, 1.0]), v(&[1.0, 0.0, 2.0]));
        assert_eq!(
            is_cauchy_wrt(&p, &frame, &norm, &full).unwrap().kind(),
            ConclusionKind::Cauchy
        );

        let c = SequenceSpec::Constant {
            value: v(&[1.0, 2.0, 3.0]),
        };
        let verdict = is_cauchy_wrt(&c, &frame, &norm, &full).unwrap();
        assert_eq!(verdict.kind(), ConclusionKind::Cauchy);
        assert!(verdict
            .evidence
            .iter()
            .flat_map(|e| &e.samples)
            .all(|t| t.value == 0.0));

        let dir = v(&[0.0, 1.0, 1.0]);
        let lin = SequenceSpec::DivergentLinear {
            direction: dir.clone(),
        };
        let verdict = is_cauchy_wrt(&lin, &frame, &norm, &full).unwrap();
        assert_eq!(verdict.kind(), ConclusionKind::NotCauchy);
        // ‖x_l - x_k‖ = |l - k| ‖v‖ by direct evaluation
        for (e, s) in verdict.evidence.iter().zip(full.subsets()) {
            let unit = classm_norm(&frame, &norm, &dir, s).unwrap();
            for t in &e.samples {
                let gap = (t.l.unwrap() - t.k) as f64;
                assert!((t.value - gap * unit).abs() <= 1e-9 * gap * unit.max(1.0));
            }
        }

        let osc = SequenceSpec::Oscillating {
            center: Vector::zeros(3),
            direction: dir,
            amplitude: 1.0,
        };
        assert_eq!(
            is_cauchy_wrt(&osc, &frame, &norm, &full).unwrap().kind(),
            ConclusionKind::NotCauchy
        );
    }

    #[test]
    fn boundedness_examples() {
        let (frame, norm) = setup(3, 2);
        let full = NormSelection::full(2, 1).unwrap();
        let pts = vec![
            v(&[1.0, 0.0, 0.0]),
            v(&[0.0, 3.0, 0.0]),
            v(&[0.0, 0.0, 2.0]),
        ];
        let verdict = is_bounded_wrt(BoundedSubject::Points(&pts), &frame, &norm, &full).unwrap();
        let mut expect = 0.0f64;
        for p in &pts {
            for s in full.subsets() {
                expect = expect.max(classm_norm(&frame, &norm, p, s).unwrap());
            }
        }
        assert_eq!(verdict.conclusion, Conclusion::Bounded { bound: expect });
        assert_eq!(expect, 3.0);
        assert_eq!(
            is_bounded_wrt(BoundedSubject::Points(&[]), &frame, &norm, &full).unwrap_err(),
            Error::Empty("point set")
        );

        let lin = SequenceSpec::DivergentLinear {
            direction: v(&[1.0, 1.0, 1.0]),
        };
        let verdict = is_bounded_wrt(BoundedSubject::Sequence(&lin), &frame, &norm, &full).unwrap();
        assert_eq!(verdict.kind(), ConclusionKind::Unbounded);

        let dir = v(&[0.0, 2.0, 1.0]);
        let p = power(Vector::zeros(3), dir.clone());
        let verdict = is_bounded_wrt(BoundedSubject::Sequence(&p), &frame, &norm, &full).unwrap();
        let Conclusion::Bounded { bound } = verdict.conclusion else {
            panic!("expected bounded, got {:?}", verdict.conclusion)
        };
        let cap = full
            .subsets()
            .iter()
            .map(|s| classm_norm(&frame, &norm, &dir, s).unwrap())
            .fold(0.0, f64::max);
        assert_eq!(bound, cap);
        assert!(verdict
            .evidence
            .iter()
            .flat_map(|e| &e.samples)
            .all(|t| t.value <= bound));
    }

    #[test]
    fn equivalence_rows() {
        let (frame, norm) = setup(4, 3);
        let x = v(&[0.5, -1.0, 2.0, 1.0]);
        let cases = [
            (
                power(x.clone(), v(&[1.0, 1.0, 0.0, 1.0])),
                ConclusionKind::Converges,
            ),
            (
                SequenceSpec::DivergentLinear {
                    direction: v(&[0.0, 0.0, 0.0, 1.0]),
                },
                ConclusionKind::Diverges,
            ),
            (
                SequenceSpec::Constant { value: x.clone() },
                ConclusionKind::Converges,
            ),
        ];
        for (spec, expected) in cases {
            let rows = equivalence_matrix(&spec, &frame, &norm, &x).unwrap();
            assert_eq!(rows.len(), 3);
            for row in &rows {
                assert_eq!(row.convergence.kind(), expected, "m={}", row.m);
                assert_eq!(row.kinds(), rows[0].kinds());
            }
        }
        let custom = SequenceSpec::Custom {
            table: vec![TableEntry {
                k: 1,
                point: x.clone(),
            }],
        };
        assert!(matches!(
            equivalence_matrix(&custom, &frame, &norm, &x),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn sampled_paths() {
        let (frame, norm) = setup(2, 2);
        let full = NormSelection::full(2, 1).unwrap();
        let zero = Vector::zeros(2);
        let geometric = SequenceSpec::Custom {
            table: (1..=40)
                .map(|k| TableEntry {
                    k,
                    point: v(&[0.5f64.powi(k as i32), 0.0]),
                })
                .collect(),
        };
        let verdict = converges_wrt(&geometric, &frame, &norm, &full, &zero).unwrap();
        assert_eq!(verdict.kind(), ConclusionKind::Converges);
        let Method::Sampled { window } = verdict.method else {
            panic!("sampled expected")
        };
        assert_eq!(
            (window.first_k, window.last_k, window.tail_from_k),
            (1, 40, 21)
        );
        assert_eq!(
            is_cauchy_wrt(&geometric, &frame, &norm, &full)
                .unwrap()
                .kind(),
            ConclusionKind::Cauchy
        );

        let slow = SequenceSpec::Custom {
            table: (1..=40)
                .map(|k| TableEntry {
                    k,
                    point: v(&[1.0 / k as f64, 0.0]),
                })
                .collect(),
        };
        assert_eq!(
            converges_wrt(&slow, &frame, &norm, &full, &zero)
                .unwrap()
                .kind(),
            ConclusionKind::Inconclusive
        );
        assert_eq!(
            is_cauchy_wrt(&slow, &frame, &norm, &full).unwrap().kind(),
            ConclusionKind::Inconclusive
        );

        let verdict =
            is_bounded_wrt(BoundedSubject::Sequence(&slow), &frame, &norm, &full).unwrap();
        assert_eq!(verdict.conclusion, Conclusion::Bounded { bound: 1.0 });
    }

    #[test]
    fn mismatches_are_errors() {
        let (frame, norm) = setup(3, 2);
        let sel = NormSelection::full(3, 1).unwrap();
        let spec = SequenceSpec::Constant {
            value: Vector::<f64>::zeros(3),
        };
        assert!(matches!(
            converges_wrt(&spec, &frame, &norm, &sel, &Vector::zeros(3)),
            Err(Error::ArityMismatch { .. })
        ));
        let sel = NormSelection::full(2, 1).unwrap();
        let spec4 = SequenceSpec::Constant {
            value: Vector::<f64>::zeros(4),
        };
        assert!(matches!(
            converges_wrt(&spec4, &frame, &norm, &sel, &Vector::zeros(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn unsound_witness_exists_below_full_class() {
        for n in 2..=5 {
            let (frame, norm) = setup(n, n);
            for m in 1..n {
                let w = unsound_selection_witness(&frame, &norm, m)
                    .unwrap()
                    .expect("witness");
                assert_eq!(w.selection_verdict.kind(), ConclusionKind::Converges);
                assert_eq!(w.full_verdict.kind(), ConclusionKind::Diverges);
                assert!(!super::super::covering_check(&w.selection));
            }
            assert!(unsound_selection_witness(&frame, &norm, n)
                .unwrap()
                .is_none());
        }
    }
}
