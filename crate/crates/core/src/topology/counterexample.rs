use serde::Serialize;

use super::cover::covering_check;
use super::sequence::{eval_sequence, SequenceSpec};
use super::verdict::{converges_wrt, Verdict};
use super::NormSelection;
use crate::error::{Error, Result};
use crate::linalg::{SpaceConfig, Vector};
use crate::nnorm::NNorm;
use crate::quotient::{classm_norm, Frame, IndexSet};
use crate::scalar::{Real, Scalar};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CounterexampleRow<T> {
    pub k: u64,
    pub n12: T,
    pub n34: T,
    pub n15: T,
}

/// `x_k = k e_5` in `R^5` against the selections `{{1,2},{3,4}}` and
/// `{{1,2},{3,4},{1,5}}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Scalar + Serialize"))]
pub struct CounterexampleRecord<T> {
    pub rows: Vec<CounterexampleRow<T>>,
    pub pair: NormSelection,
    pub triple: NormSelection,
    pub pair_covers: bool,
    pub triple_covers: bool,
    /// Converges, which is wrong.
    pub pair_verdict: Verdict<T>,
    pub triple_verdict: Verdict<T>,
}

pub fn counterexample_r5<T: Real>(
    frame: &Frame<T>,
    norm: &NNorm<T>,
    max_k: u64,
) -> Result<CounterexampleRecord<T>> {
    let space = frame.space();
    if space.dim() != 5 || space.arity() != 5 {
        return Err(Error::Precondition(format!(
            "needs d = n = 5, got d = {}, n = {}",
            space.dim(),
            space.arity()
        )));
    }
    if !space.is_euclidean() || !frame.is_standard_basis() {
        return Err(Error::Precondition(
            "needs the identity metric and the standard basis frame".into(),
        ));
    }
    if max_k == 0 {
        return Err(Error::SequenceIndex { k: 0 });
    }

    let spec = SequenceSpec::DivergentLinear {
        direction: Vector::unit(5, 4),
    };
    let zero = Vector::zeros(5);
    let set = |i: &[usize]| IndexSet::new(i.to_vec());
    let (s12, s34, s15) = (set(&[1, 2])?, set(&[3, 4])?, set(&[1, 5])?);
    let rows = (1..=max_k)
        .map(|k| {
            let x = eval_sequence(&spec, k)?;
            Ok(CounterexampleRow {
                k,
                n12: classm_norm(frame, norm, &x, &s12)?,
                n34: classm_norm(frame, norm, &x, &s34)?,
                n15: classm_norm(frame, norm, &x, &s15)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let pair = NormSelection::new(5, vec![s12.clone(), s34.clone()])?;
    let triple = NormSelection::new(5, vec![s12, s34, s15])?;
    Ok(CounterexampleRecord {
        rows,
        pair_covers: covering_check(&pair),
        triple_covers: covering_check(&triple),
        pair_verdict: converges_wrt(&spec, frame, norm, &pair, &zero)?,
        triple_verdict: converges_wrt(&spec, frame, norm, &triple, &zero)?,
        pair,
        triple,
    })
}

/// [`counterexample_r5`] on Euclidean `R^5` with the standard basis.
pub fn standard_counterexample(max_k: u64) -> Result<CounterexampleRecord<f64>> {
    let space = SpaceConfig::euclidean(5, 5)?;
    let frame = Frame::standard_basis(space.clone());
    counterexample_r5(&frame, &NNorm::standard(space), max_k)
}
