use std::fmt::Display;
use std::io::{Read, Write};
use std::str::FromStr;

use super::sequence::{eval_sequence, SequenceSpec};
use super::NormSelection;
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::nnorm::NNorm;
use crate::quotient::{classm_norm, Frame, IndexSet};
use crate::scalar::Real;

/// One `(k, subset, value)` sample of a norm trace.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow<T> {
    pub k: u64,
    pub subset: IndexSet,
    pub value: T,
}

/// `‖x_k - candidate‖*_s` for each `k` in `ks` and each `s` in `selection`.
pub fn convergence_trace<T: Real>(
    spec: &SequenceSpec<T>,
    frame: &Frame<T>,
    norm: &NNorm<T>,
    selection: &NormSelection,
    candidate_limit: &Vector<T>,
    ks: &[u64],
) -> Result<Vec<TraceRow<T>>> {
    selection.check_frame(frame)?;
    frame.space().check_dim(candidate_limit)?;
    let mut rows = Vec::with_capacity(ks.len() * selection.subsets().len());
    for &k in ks {
        let x = eval_sequence(spec, k)?;
        frame.space().check_dim(&x)?;
        let diff = &x - candidate_limit;
        for s in selection.subsets() {
            rows.push(TraceRow {
                k,
                subset: s.clone(),
                value: classm_norm(frame, norm, &diff, s)?,
            });
        }
    }
    Ok(rows)
}

fn csv_error(e: csv::Error) -> Error {
    Error::Trace(e.to_string())
}

/// Writes `k,subset,value` with values in shortest round-trip form.
pub fn write_trace_csv<T: Display, W: Write>(rows: &[TraceRow<T>], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "subset", "value"])
        .map_err(csv_error)?;
    for r in rows {
        w.write_record([r.k.to_string(), r.subset.to_string(), r.value.to_string()])
            .map_err(csv_error)?;
    }
    w.flush().map_err(|e| Error::Trace(e.to_string()))
}

pub fn read_trace_csv<T: FromStr, R: Read>(input: R) -> Result<Vec<TraceRow<T>>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(csv_error)?;
    if header != vec!["k", "subset", "value"] {
        return Err(Error::Trace(format!("unexpected header {header:?}")));
    }
    r.records()
        .map(|rec| {
            let rec = rec.map_err(csv_error)?;
            let field = |i: usize| rec.get(i).unwrap_or_default();
            let line = rec.position().map_or(0, |p| p.line());
            Ok(TraceRow {
                k: field(0)
                    .parse()
                    .map_err(|_| Error::Trace(format!("line {line}: bad k {:?}", field(0))))?,
                subset: field(1).parse()?,
                value: field(2)
                    .parse()
                    .map_err(|_| Error::Trace(format!("line {line}: bad value {:?}", field(2))))?,
            })
        })
        .collect()
}
