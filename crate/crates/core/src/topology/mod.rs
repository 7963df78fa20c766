//! Sequences in an n-normed space and their behaviour under collections of
//! quotient norms.
//!
//! A [`NormSelection`] picks which class-m norms `‖·‖*_s` are consulted. The
//! verdict functions inspect one trace per subset and take the conjunction.
//! For the closed-form sequence kinds every trace has an exact form in `k`,
//! so the verdict is [`Method::Analytic`]; custom tables only get a
//! [`Method::Sampled`] verdict which leans towards
//! [`Conclusion::Inconclusive`].

mod corpus;
mod counterexample;
mod cover;
mod probe;
mod sequence;
mod trace;
mod verdict;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quotient::{class_collection, Frame, IndexSet};
use crate::scalar::Scalar;

pub use corpus::{
    corpus, run_corpus, CorpusCase, CorpusSummary, Disagreement, EQUIVALENCE, FRAME_INDEPENDENCE,
};
pub use counterexample::{
    counterexample_r5, standard_counterexample, CounterexampleRecord, CounterexampleRow,
};
pub use cover::{
    covering_check, enumerate_minimal_covers, minimal_cover_size, search_min_cover_size,
    COVER_SEARCH_LIMIT,
};
pub use probe::{closed_set_probe, ProbeEntry, ProbeReport};
pub use sequence::{eval_sequence, ClosedForm, Profile, SequenceSpec, TableEntry};
pub use trace::{convergence_trace, read_trace_csv, write_trace_csv, TraceRow};
pub use verdict::{
    converges_wrt, equivalence_matrix, is_bounded_wrt, is_cauchy_wrt, unsound_selection_witness,
    BoundedSubject, Conclusion, ConclusionKind, EquivalenceRow, Method, SampleWindow,
    SubsetEvidence, TraceSample, Trend, UnsoundWitness, Verdict, EVIDENCE_KS,
};

/// A family of same-size index sets naming the quotient norms to consult.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SelectionRepr", into = "SelectionRepr")]
pub struct NormSelection {
    n: usize,
    subsets: Vec<IndexSet>,
}

#[derive(Serialize, Deserialize)]
struct SelectionRepr {
    n: usize,
    subsets: Vec<IndexSet>,
}

impl TryFrom<SelectionRepr> for NormSelection {
    type Error = Error;

    fn try_from(r: SelectionRepr) -> Result<Self> {
        NormSelection::new(r.n, r.subsets)
    }
}

impl From<NormSelection> for SelectionRepr {
    fn from(s: NormSelection) -> Self {
        SelectionRepr {
            n: s.n,
            subsets: s.subsets,
        }
    }
}

impl NormSelection {
    pub fn new(n: usize, subsets: Vec<IndexSet>) -> Result<Self> {
        let Some(first) = subsets.first() else {
            return Err(Error::InvalidSelection("no subsets".into()));
        };
        let m = first.m();
        for (i, s) in subsets.iter().enumerate() {
            s.validate_for(n)?;
            if s.m() != m {
                return Err(Error::InvalidSelection(format!(
                    "subset {s} has size {}, expected {m}",
                    s.m()
                )));
            }
            if subsets[..i].contains(s) {
                return Err(Error::InvalidSelection(format!("duplicate subset {s}")));
            }
        }
        Ok(NormSelection { n, subsets })
    }

    /// Builds from 1-based index lists, e.g. `&[&[1, 2], &[3, 4]]`.
    pub fn from_lists(n: usize, lists: &[&[usize]]) -> Result<Self> {
        let subsets = lists
            .iter()
            .map(|l| IndexSet::new(l.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, subsets)
    }

    /// The whole class-m collection.
    pub fn full(n: usize, m: usize) -> Result<Self> {
        let c = class_collection(n, m)?;
        Ok(NormSelection {
            n,
            subsets: c.members,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.subsets[0].m()
    }

    pub fn subsets(&self) -> &[IndexSet] {
        &self.subsets
    }

    pub fn check_frame<T: Scalar>(&self, frame: &Frame<T>) -> Result<()> {
        if self.n != frame.arity() {
            return Err(Error::ArityMismatch {
                expected: frame.arity(),
                actual: self.n,
            });
        }
        Ok(())
    }
}

impl std::fmt::Display for NormSelection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.subsets.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}
