use serde::Serialize;

use super::sequence::{eval_sequence, SequenceSpec};
use super::verdict::{converges_wrt, ConclusionKind};
use super::NormSelection;
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::nnorm::NNorm;
use crate::quotient::Frame;
use crate::scalar::{Real, Scalar};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Scalar + Serialize"))]
pub struct ProbeEntry<T> {
    /// Position of the sequence in the probe input, 0-based.
    pub index: usize,
    pub limit: Vector<T>,
    pub limit_in_set: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Scalar + Serialize"))]
pub struct ProbeReport<T> {
    pub entries: Vec<ProbeEntry<T>>,
}

impl<T> ProbeReport<T> {
    /// The first sequence whose limit escapes the set, which shows the set is
    /// not closed.
    pub fn witness(&self) -> Option<&ProbeEntry<T>> {
        self.entries.iter().find(|e| !e.limit_in_set)
    }
}

/// Falsification probe for closedness of `K = {x : membership(x)}`.
///
/// Every sequence must have a known limit, converge to it under the class-1
/// collection, and stay inside `K` at each of `sample_ks`. The report says
/// whether each limit is in `K`. An all-true report is not a proof.
pub fn closed_set_probe<T, F>(
    specs: &[SequenceSpec<T>],
    membership: F,
    frame: &Frame<T>,
    norm: &NNorm<T>,
    sample_ks: &[u64],
) -> Result<ProbeReport<T>>
where
    T: Real,
    F: Fn(&Vector<T>) -> bool,
{
    let class1 = NormSelection::full(frame.arity(), 1)?;
    let mut entries = Vec::with_capacity(specs.len());
    for (index, spec) in specs.iter().enumerate() {
        let limit = spec.known_limit().ok_or_else(|| {
            Error::Precondition(format!(
                "sequence {index} ({}) has no known limit",
                spec.kind_name()
            ))
        })?;
        let verdict = converges_wrt(spec, frame, norm, &class1, limit)?;
        if verdict.kind() != ConclusionKind::Converges {
            return Err(Error::Precondition(format!(
                "sequence {index} does not converge"
            )));
        }
        for &k in sample_ks {
            if !membership(&eval_sequence(spec, k)?) {
                return Err(Error::Precondition(format!(
                    "sequence {index} leaves the set at k = {k}"
                )));
            }
        }
        entries.push(ProbeEntry {
            index,
            limit: limit.clone(),
            limit_in_set: membership(limit),
        });
    }
    Ok(ProbeReport { entries })
}
