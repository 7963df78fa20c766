use clap::ValueEnum;
use ntopo::nnorm::{check_axioms, Axiom, AxiomReport};
use ntopo::quotient::{class_collection, quotient_norm_axioms};
use ntopo::topology::{
    corpus, run_corpus, unsound_selection_witness, CorpusSummary, EQUIVALENCE, FRAME_INDEPENDENCE,
};
use ntopo::Frame64;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::commands::{cover_levels, to_value, Outcome};
use crate::config::Setup;
use crate::CliError;

/// Disagreements listed per property; the rest are only counted.
const MAX_LISTED: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// n-norm axioms of the standard norm.
    Axioms,
    /// Norm axioms and coset invariance of every quotient norm.
    Quotient,
    /// Convergence verdicts agree across class levels and frames.
    Convergence,
    /// Boundedness verdicts agree across class levels and frames.
    Boundedness,
    /// Cauchy verdicts agree, and match convergence.
    Cauchy,
    /// Minimal cover sizes, covering soundness and unsound non-covers.
    Covering,
    All,
}

impl Suite {
    const EACH: [Suite; 6] = [
        Suite::Axioms,
        Suite::Quotient,
        Suite::Convergence,
        Suite::Boundedness,
        Suite::Cauchy,
        Suite::Covering,
    ];

    fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Quotient => "quotient",
            Suite::Convergence => "convergence",
            Suite::Boundedness => "boundedness",
            Suite::Cauchy => "cauchy",
            Suite::Covering => "covering",
            Suite::All => "all",
        }
    }

    fn corpus_properties(self) -> Vec<&'static str> {
        match self {
            Suite::Convergence => vec![EQUIVALENCE[0], FRAME_INDEPENDENCE[0], "expected verdict"],
            Suite::Boundedness => vec![EQUIVALENCE[1], FRAME_INDEPENDENCE[1]],
            Suite::Cauchy => vec![
                EQUIVALENCE[2],
                FRAME_INDEPENDENCE[2],
                "convergent implies cauchy",
                "cauchy implies convergent",
            ],
            Suite::Covering => vec!["covering soundness"],
            _ => Vec::new(),
        }
    }
}

struct Verifier<'a> {
    setup: &'a Setup,
    seed: u64,
    trials: usize,
    corpus: Option<CorpusSummary>,
    failures: Vec<Value>,
}

pub fn verify(setup: &Setup, suite: Suite, seed: u64, trials: usize) -> Result<Outcome, CliError> {
    let suites = if suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![suite]
    };
    let mut v = Verifier {
        setup,
        seed,
        trials,
        corpus: None,
        failures: Vec::new(),
    };
    let mut results = Map::new();
    for s in suites {
        let value = match s {
            Suite::Axioms => v.axioms()?,
            Suite::Quotient => v.quotient()?,
            Suite::Covering => {
                let mut value = v.covering()?;
                value["corpus"] = v.corpus_checks(s)?;
                value
            }
            _ => v.corpus_checks(s)?,
        };
        results.insert(s.name().to_string(), value);
    }
    Ok(Outcome {
        command: format!("verify {}", suite.name()),
        inputs: json!({ "suite": suite }),
        results: Value::Object(results),
        failures: v.failures,
        trace: None,
    })
}

#[derive(Serialize)]
struct AxiomSummary {
    axiom: Axiom,
    passed: bool,
    cases: usize,
    worst_discrepancy: f64,
    threshold: f64,
}

impl AxiomSummary {
    fn absorb(&mut self, r: &AxiomReport<f64>) {
        self.passed &= r.passed();
        self.cases += r.cases;
        self.worst_discrepancy = self.worst_discrepancy.max(r.worst_discrepancy);
    }
}

fn summarize<'r>(reports: impl IntoIterator<Item = &'r AxiomReport<f64>>) -> Vec<AxiomSummary> {
    let mut out: Vec<AxiomSummary> = Vec::new();
    for r in reports {
        match out.iter_mut().find(|s| s.axiom == r.axiom) {
            Some(s) => s.absorb(r),
            None => out.push(AxiomSummary {
                axiom: r.axiom,
                passed: r.passed(),
                cases: r.cases,
                worst_discrepancy: r.worst_discrepancy,
                threshold: r.threshold,
            }),
        }
    }
    out
}

impl Verifier<'_> {
    fn axioms(&mut self) -> Result<Value, CliError> {
        let reports = check_axioms(&self.setup.norm, self.trials, self.seed)?;
        for r in reports.iter().filter(|r| !r.passed()) {
            self.failures
                .push(json!({ "suite": "axioms", "report": r }));
        }
        Ok(to_value(&summarize(&reports)))
    }

    fn quotient(&mut self) -> Result<Value, CliError> {
        let n = self.setup.frame.arity();
        let mut all = Vec::new();
        let mut subsets = 0;
        for m in 1..=n {
            for s in class_collection(n, m)?.members {
                let reports = quotient_norm_axioms(
                    &self.setup.frame,
                    &self.setup.norm,
                    &s,
                    self.trials,
                    self.seed,
                )?;
                for r in reports.iter().filter(|r| !r.passed()) {
                    self.failures.push(json!({
                        "suite": "quotient",
                        "subset": s.to_string(),
                        "report": r,
                    }));
                }
                all.extend(reports);
                subsets += 1;
            }
        }
        Ok(json!({ "subsets": subsets, "checks": to_value(&summarize(&all)) }))
    }

    fn covering(&mut self) -> Result<Value, CliError> {
        let n = self.setup.frame.arity();
        let levels: Vec<usize> = (1..=n).collect();
        let sizes = cover_levels(n, &levels, false, &mut self.failures)?;
        let mut witnesses = Vec::new();
        for m in 1..n {
            match unsound_selection_witness(&self.setup.frame, &self.setup.norm, m)? {
                Some(w) => witnesses.push(json!({
                    "m": m,
                    "selection": w.selection.to_string(),
                    "selection_verdict": w.selection_verdict.kind(),
                    "full_verdict": w.full_verdict.kind(),
                })),
                None => self.failures.push(json!({
                    "suite": "covering",
                    "check": "unsound non-cover",
                    "m": m,
                    "detail": "no non-covering selection gave a wrong verdict",
                })),
            }
        }
        Ok(json!({ "n": n, "levels": sizes, "unsound_witnesses": witnesses }))
    }

    fn run_corpus(&self) -> Result<CorpusSummary, CliError> {
        let space = self.setup.norm.config().clone();
        let frames = vec![
            self.setup.frame.clone(),
            Frame64::random(space.clone(), self.seed.wrapping_add(1)),
            Frame64::random(space.clone(), self.seed.wrapping_add(2)),
        ];
        let cases = corpus::<f64>(space.dim(), (self.trials / 10).max(50), self.seed);
        Ok(run_corpus(&frames, &self.setup.norm, &cases)?)
    }

    fn corpus_checks(&mut self, suite: Suite) -> Result<Value, CliError> {
        let summary = match &self.corpus {
            Some(s) => s.clone(),
            None => {
                let s = self.run_corpus()?;
                self.corpus = Some(s.clone());
                s
            }
        };
        let mut properties = Vec::new();
        for p in suite.corpus_properties() {
            let found: Vec<_> = summary
                .disagreements
                .iter()
                .filter(|d| d.property == p)
                .collect();
            for d in found.iter().take(MAX_LISTED) {
                self.failures
                    .push(json!({ "suite": suite.name(), "disagreement": d }));
            }
            properties.push(json!({ "property": p, "disagreements": found.len() }));
        }
        Ok(json!({
            "cases": summary.cases,
            "frames": summary.frames,
            "properties": properties,
        }))
    }
}
