use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::cover::{enumerate_minimal_covers, COVER_SEARCH_LIMIT};
use super::sequence::SequenceSpec;
use super::verdict::{converges_wrt, equivalence_matrix, ConclusionKind};
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::nnorm::NNorm;
use crate::quotient::Frame;
use crate::sampling;
use crate::scalar::{Real, Scalar};

const CORPUS_STREAM: u64 = 0x7c0;

/// A closed-form sequence, the limit to test against, and the convergence
/// verdict it must receive under any covering collection.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Scalar + Serialize"))]
pub struct CorpusCase<T> {
    pub spec: SequenceSpec<T>,
    pub candidate_limit: Vector<T>,
    pub expected: ConclusionKind,
}

/// `count` cases cycling through convergent, linear, oscillating, constant
/// and convergent-to-the-wrong-point sequences.
pub fn corpus<T: Real>(dim: usize, count: usize, seed: u64) -> Vec<CorpusCase<T>> {
    let mut rng = sampling::stream(seed, CORPUS_STREAM);
    let vec = |rng: &mut rand_chacha::ChaCha8Rng| loop {
        let v: Vector<T> = sampling::uniform_vector(rng, dim, 2.0);
        if v.max_abs() > T::from_f64_lossy(0.1) {
            return v;
        }
    };
    (0..count)
        .map(|i| {
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let coefficient = T::from_f64_lossy(sign * rng.gen_range(0.5..3.0));
            let exponent = T::from_f64_lossy(rng.gen_range(0.5..3.0));
            match i % 5 {
                0 | 4 => {
                    let limit = vec(&mut rng);
                    let direction = vec(&mut rng);
                    let (candidate_limit, expected) = if i % 5 == 0 {
                        (limit.clone(), ConclusionKind::Converges)
                    } else {
                        (&limit + &vec(&mut rng), ConclusionKind::Diverges)
                    };
                    CorpusCase {
                        spec: SequenceSpec::ConvergentPower {
                            limit,
                            direction,
                            coefficient,
                            exponent,
                        },
                        candidate_limit,
                        expected,
                    }
                }
                1 => CorpusCase {
                    spec: SequenceSpec::DivergentLinear {
                        direction: vec(&mut rng),
                    },
                    candidate_limit: vec(&mut rng),
                    expected: ConclusionKind::Diverges,
                },
                2 => {
                    let center = vec(&mut rng);
                    CorpusCase {
                        spec: SequenceSpec::Oscillating {
                            center: center.clone(),
                            direction: vec(&mut rng),
                            amplitude: coefficient,
                        },
                        candidate_limit: center,
                        expected: ConclusionKind::Diverges,
                    }
                }
                _ => {
                    let value = vec(&mut rng);
                    CorpusCase {
                        spec: SequenceSpec::Constant {
                            value: value.clone(),
                        },
                        candidate_limit: value,
                        expected: ConclusionKind::Converges,
                    }
                }
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub case: usize,
    pub frame: usize,
    pub property: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub cases: usize,
    pub frames: usize,
    pub checks: usize,
    pub disagreements: Vec<Disagreement>,
}

impl CorpusSummary {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Property names for agreement across class levels, indexed like
/// [`EquivalenceRow::kinds`](super::EquivalenceRow::kinds).
pub const EQUIVALENCE: [&str; 3] = [
    "convergence equivalence",
    "boundedness equivalence",
    "cauchy equivalence",
];

/// Property names for agreement across frames.
pub const FRAME_INDEPENDENCE: [&str; 3] = [
    "convergence frame independence",
    "boundedness frame independence",
    "cauchy frame independence",
];

struct CaseRun {
    checks: usize,
    disagreements: Vec<Disagreement>,
    /// Per frame, per class level: convergence, boundedness and Cauchy kinds.
    kinds: Vec<Vec<[ConclusionKind; 3]>>,
}

/// Runs every case against every frame and checks, per frame:
/// agreement across class levels, the expected convergence verdict,
/// convergent implies Cauchy, Cauchy implies convergent to the natural limit,
/// and that each minimal covering selection matches the full collection.
/// Across frames it checks that the verdicts are identical.
pub fn run_corpus<T: Real>(
    frames: &[Frame<T>],
    norm: &NNorm<T>,
    cases: &[CorpusCase<T>],
) -> Result<CorpusSummary> {
    let Some(first) = frames.first() else {
        return Err(Error::Empty("frame list"));
    };
    let n = first.arity();
    for f in frames {
        if f.space().dim() != norm.config().dim() || f.arity() != norm.config().arity() {
            return Err(Error::InvalidSpace(
                "every frame must live in the norm's space".into(),
            ));
        }
    }
    let covers = (1..=n)
        .map(|m| {
            if n <= COVER_SEARCH_LIMIT {
                enumerate_minimal_covers(n, m)
            } else {
                Ok(Vec::new())
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let runs = cases
        .par_iter()
        .enumerate()
        .map(|(ci, case)| -> Result<CaseRun> {
            let mut run = CaseRun {
                checks: 0,
                disagreements: Vec::new(),
                kinds: Vec::new(),
            };
            let flag =
                |run: &mut CaseRun, fi: usize, ok: bool, property: &'static str, detail: String| {
                    run.checks += 1;
                    if !ok {
                        run.disagreements.push(Disagreement {
                            case: ci,
                            frame: fi,
                            property,
                            detail,
                        });
                    }
                };
            for (fi, frame) in frames.iter().enumerate() {
                let rows = equivalence_matrix(&case.spec, frame, norm, &case.candidate_limit)?;
                let kinds: Vec<[ConclusionKind; 3]> = rows.iter().map(|r| r.kinds()).collect();
                for (row, k) in rows.iter().zip(&kinds) {
                    for (p, name) in EQUIVALENCE.iter().enumerate() {
                        flag(
                            &mut run,
                            fi,
                            k[p] == kinds[0][p],
                            name,
                            format!("m={} gave {:?}, m=1 gave {:?}", row.m, k[p], kinds[0][p]),
                        );
                    }
                    flag(
                        &mut run,
                        fi,
                        k[0] == case.expected,
                        "expected verdict",
                        format!("m={} gave {:?}, expected {:?}", row.m, k[0], case.expected),
                    );
                    let implies =
                        k[0] != ConclusionKind::Converges || k[2] == ConclusionKind::Cauchy;
                    flag(
                        &mut run,
                        fi,
                        implies,
                        "convergent implies cauchy",
                        format!("m={} gave {k:?}", row.m),
                    );
                    if k[2] == ConclusionKind::Cauchy {
                        let natural = case.spec.closed_form().expect("closed form").base;
                        let full = super::NormSelection::full(n, row.m)?;
                        let v = converges_wrt(&case.spec, frame, norm, &full, &natural)?;
                        flag(
                            &mut run,
                            fi,
                            v.kind() == ConclusionKind::Converges,
                            "cauchy implies convergent",
                            format!("m={} gave {:?}", row.m, v.kind()),
                        );
                    }
                    for sel in &covers[row.m - 1] {
                        let v = converges_wrt(&case.spec, frame, norm, sel, &case.candidate_limit)?;
                        flag(
                            &mut run,
                            fi,
                            v.kind() == k[0],
                            "covering soundness",
                            format!(
                                "{sel} gave {:?}, full m={} gave {:?}",
                                v.kind(),
                                row.m,
                                k[0]
                            ),
                        );
                    }
                }
                run.kinds.push(kinds);
            }
            let all_kinds = std::mem::take(&mut run.kinds);
            for (fi, kinds) in all_kinds.iter().enumerate().skip(1) {
                for (p, name) in FRAME_INDEPENDENCE.iter().enumerate() {
                    let here: Vec<_> = kinds.iter().map(|k| k[p]).collect();
                    let there: Vec<_> = all_kinds[0].iter().map(|k| k[p]).collect();
                    flag(
                        &mut run,
                        fi,
                        here == there,
                        name,
                        format!("{here:?} vs frame 0 {there:?}"),
                    );
                }
            }
            Ok(run)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut summary = CorpusSummary {
        cases: cases.len(),
        frames: frames.len(),
        checks: 0,
        disagreements: Vec::new(),
    };
    for run in runs {
        summary.checks += run.checks;
        summary.disagreements.extend(run.disagreements);
    }
    Ok(summary)
}
