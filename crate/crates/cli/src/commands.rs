use ntopo::linalg::{gram_matrix, rank};
use ntopo::nnorm::{gram_determinant, standard_norm};
use ntopo::quotient::{classm_norm, classm_terms, in_removed_span, IndexSet};
use ntopo::topology::{
    counterexample_r5, covering_check, enumerate_minimal_covers, minimal_cover_size,
    search_min_cover_size, ConclusionKind, NormSelection, TraceRow, COVER_SEARCH_LIMIT,
};
use ntopo::Vector64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Setup;
use crate::CliError;

/// Index sets are bitmasks in the exhaustive checks.
const MAX_COVER_N: usize = 64;

/// What a command produced, before it is wrapped into a report.
pub struct Outcome {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub failures: Vec<Value>,
    pub trace: Option<Vec<TraceRow<f64>>>,
}

pub fn to_value<S: Serialize>(x: &S) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

/// Parses `1,2,3`, `[1, 2, 3]` or `1 2 3`.
pub fn parse_vector(s: &str) -> Result<Vector64, CliError> {
    let body = s.trim().trim_start_matches('[').trim_end_matches(']');
    let coords = body
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| CliError::Usage(format!("bad coordinate {t:?} in {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Vector64::from_f64(&coords)?)
}

pub fn norm(setup: &Setup, vectors: &[Vector64]) -> Result<Outcome, CliError> {
    let space = setup.norm.config();
    let value = standard_norm(space, vectors)?;
    let gram = gram_matrix(space, vectors)?;
    let det = gram_determinant(space, vectors)?;
    Ok(Outcome {
        command: "norm".into(),
        inputs: json!({ "vectors": vectors }),
        results: json!({
            "value": value,
            "gram": gram.rows(),
            "gram_determinant": det,
            "rank": rank(vectors, space.tolerance()),
        }),
        failures: Vec::new(),
        trace: None,
    })
}

pub fn quotient(setup: &Setup, u: &Vector64, s: &IndexSet) -> Result<Outcome, CliError> {
    let terms = classm_terms(&setup.frame, &setup.norm, u, s)?;
    let norm = classm_norm(&setup.frame, &setup.norm, u, s)?;
    let residual = norm - terms.iter().map(|&(_, v)| v).sum::<f64>();
    let mut failures = Vec::new();
    if residual != 0.0 {
        failures.push(json!({ "check": "decomposition", "residual": residual }));
    }
    Ok(Outcome {
        command: "quotient".into(),
        inputs: json!({ "u": u, "subset": s }),
        results: json!({
            "subset": s.to_string(),
            "norm": norm,
            "terms": terms
                .iter()
                .map(|&(j, v)| json!({ "j": j, "value": v }))
                .collect::<Vec<_>>(),
            "residual": residual,
            "in_removed_span": in_removed_span(&setup.frame, u, s),
        }),
        failures,
        trace: None,
    })
}

#[derive(Serialize)]
struct CoverLevel {
    m: usize,
    minimal_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    searched_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    minimal_covers: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    listed: Option<Vec<String>>,
}

pub fn cover_levels(
    n: usize,
    levels: &[usize],
    list: bool,
    failures: &mut Vec<Value>,
) -> Result<Value, CliError> {
    let mut out = Vec::with_capacity(levels.len());
    for &m in levels {
        let minimal_size = minimal_cover_size(n, m)?;
        let (searched_size, covers) = if n <= COVER_SEARCH_LIMIT {
            (
                Some(search_min_cover_size(n, m)?),
                Some(enumerate_minimal_covers(n, m)?),
            )
        } else {
            (None, None)
        };
        if let Some(found) = searched_size.filter(|&f| f != minimal_size) {
            failures.push(json!({
                "check": "minimal cover size",
                "n": n,
                "m": m,
                "formula": minimal_size,
                "search": found,
            }));
        }
        out.push(CoverLevel {
            m,
            minimal_size,
            searched_size,
            minimal_covers: covers.as_ref().map(Vec::len),
            listed: covers
                .filter(|_| list)
                .map(|c| c.iter().map(|s| s.to_string()).collect()),
        });
    }
    Ok(to_value(&out))
}

pub fn cover(
    n: usize,
    m: Option<usize>,
    list: bool,
    check: &[IndexSet],
) -> Result<Outcome, CliError> {
    if !(1..=MAX_COVER_N).contains(&n) {
        return Err(CliError::Usage(format!(
            "n must be between 1 and {MAX_COVER_N}, got {n}"
        )));
    }
    let levels: Vec<usize> = match m {
        Some(m) => vec![m],
        None => (1..=n).collect(),
    };
    let mut failures = Vec::new();
    let mut results = json!({
        "n": n,
        "levels": cover_levels(n, &levels, list, &mut failures)?,
    });
    if !check.is_empty() {
        let selection = NormSelection::new(n, check.to_vec())?;
        results["selection"] = json!({
            "family": selection.to_string(),
            "covers": covering_check(&selection),
        });
    }
    Ok(Outcome {
        command: "cover".into(),
        inputs: json!({ "n": n, "m": m, "list": list, "check": check }),
        results,
        failures,
        trace: None,
    })
}

pub fn demo_counterexample(setup: &Setup, k: i64) -> Result<Outcome, CliError> {
    let max_k = u64::try_from(k)
        .ok()
        .filter(|&k| k >= 1)
        .ok_or_else(|| CliError::Usage(format!("--k must be at least 1, got {k}")))?;
    let record = counterexample_r5(&setup.frame, &setup.norm, max_k)?;
    let subsets = [
        IndexSet::new(vec![1, 2])?,
        IndexSet::new(vec![3, 4])?,
        IndexSet::new(vec![1, 5])?,
    ];
    let trace = record
        .rows
        .iter()
        .flat_map(|r| {
            subsets
                .iter()
                .zip([r.n12, r.n34, r.n15])
                .map(|(s, value)| TraceRow {
                    k: r.k,
                    subset: s.clone(),
                    value,
                })
        })
        .collect();

    let mut failures = Vec::new();
    let pair = record.pair_verdict.kind();
    let triple = record.triple_verdict.kind();
    if pair != ConclusionKind::Converges || triple != ConclusionKind::Diverges {
        failures.push(json!({
            "check": "verdict pair",
            "pair": pair,
            "triple": triple,
            "expected": [ConclusionKind::Converges, ConclusionKind::Diverges],
        }));
    }
    Ok(Outcome {
        command: "demo counterexample".into(),
        inputs: json!({ "k": max_k }),
        results: json!({
            "rows": record.rows,
            "pair": { "selection": record.pair.to_string(), "covers": record.pair_covers, "verdict": pair },
            "triple": { "selection": record.triple.to_string(), "covers": record.triple_covers, "verdict": triple },
        }),
        failures,
        trace: Some(trace),
    })
}
