//! Acceptance criteria, one line of output each. Runs without the libtest
//! harness so the lines always print; exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ntopo::linalg::{determinant, in_span, SpaceConfig, SquareMatrix, Vector};
use ntopo::nnorm::{check_axioms, gram_norm, NNorm};
use ntopo::quotient::{
    class_collection, classm_norm, classm_scale, classm_terms, coset_invariance_check,
    in_removed_span, quotient_norm_axioms, Frame, IndexSet,
};
use ntopo::topology::{
    converges_wrt, corpus, covering_check, minimal_cover_size, run_corpus, search_min_cover_size,
    standard_counterexample, unsound_selection_witness, ConclusionKind, NormSelection,
};

struct Verdict {
    ok: bool,
    detail: String,
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn uniform(rng: &mut ChaCha8Rng, dim: usize) -> Vector<f64> {
    let c: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    Vector::from_f64(&c).unwrap()
}

/// Laplace expansion along the first row.
fn cofactor_det(m: &[Vec<f64>]) -> f64 {
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<f64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, x)| *x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                sign * m[0][j] * cofactor_det(&minor)
            })
            .sum(),
    }
}

fn axiom_suite() -> Verdict {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    let mut spaces = 0;
    for n in 2..=5 {
        for d in [n, n + 1, n + 3] {
            let norm = NNorm::<f64>::standard(SpaceConfig::euclidean(d, n).unwrap());
            let reports = check_axioms(&norm, 1000, 0xa11 + (n * 10 + d) as u64).unwrap();
            spaces += 1;
            if reports.len() != 7 {
                failures.push(format!("n={n} d={d}: {} checks", reports.len()));
            }
            for r in &reports {
                worst = worst.max(r.worst_discrepancy);
                if !r.passed() || r.threshold > 1e-9 {
                    failures.push(format!(
                        "n={n} d={d} {:?}: worst {:e}",
                        r.axiom, r.worst_discrepancy
                    ));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        failures.push(format!("took {elapsed:.1?}"));
    }
    Verdict {
        ok: failures.is_empty(),
        detail: format!(
            "{spaces} spaces x 7 checks x 1000 tuples, worst normalized discrepancy {worst:.3e}{}",
            list(&failures)
        ),
    }
}

fn quotient_correctness() -> Verdict {
    let mut r = rng(0xc05e7);
    let mut failures = Vec::new();
    let (mut decompositions, mut cosets, mut definiteness) = (0, 0, 0);
    let mut worst_coset = 0.0f64;

    for trial in 0..300u64 {
        let n = 2 + (trial % 4) as usize;
        let d = n + (trial / 4 % 3) as usize;
        let space = SpaceConfig::euclidean(d, n).unwrap();
        let frame = Frame::random(space.clone(), trial);
        let norm = NNorm::standard(space);
        let members: Vec<IndexSet> = (1..=n)
            .flat_map(|m| class_collection(n, m).unwrap().members)
            .collect();

        let u = uniform(&mut r, d);
        for s in &members {
            let terms = classm_terms(&frame, &norm, &u, s).unwrap();
            let sum = terms.iter().fold(0.0, |acc, (_, v)| acc + v);
            decompositions += 1;
            if classm_norm(&frame, &norm, &u, s).unwrap() != sum {
                failures.push(format!("decomposition residual for {s}"));
            }
        }

        for _ in 0..4 {
            let s = &members[r.gen_range(0..members.len())];
            let coeffs: BTreeMap<usize, f64> = s
                .complement(n)
                .into_iter()
                .map(|i| (i, r.gen_range(-5.0..=5.0)))
                .collect();
            let check = coset_invariance_check(&frame, &norm, &u, s, &coeffs).unwrap();
            cosets += 1;
            worst_coset = worst_coset.max(check.discrepancy);
            if !check.passed {
                failures.push(format!("coset {s}: {:e}", check.discrepancy));
            }
        }

        // u = Σ_{i∉s} c_i y_i + δ w with w orthogonal to the kept vectors,
        // so u lies in the removed span exactly when δ = 0.
        for delta in [1e-3, 1e-6, 0.0] {
            let s = &members[r.gen_range(0..members.len())];
            let kept = frame.remaining(s);
            let w = orthogonal_unit(&mut r, d, &kept);
            let u = kept.iter().fold(w.scaled(&delta), |acc, y| {
                acc.axpy(&r.gen_range(-1.0..=1.0), y)
            });
            let value = classm_norm(&frame, &norm, &u, s).unwrap();
            let zero = value <= 1e-9 * classm_scale(&frame, &u, s);
            let oracle = in_span(&u, &kept, frame.space().tolerance());
            definiteness += 1;
            if zero != oracle
                || oracle != (delta == 0.0)
                || oracle != in_removed_span(&frame, &u, s)
            {
                failures.push(format!(
                    "definiteness at delta={delta:e}, s={s}: value {value:e}, span oracle {oracle}"
                ));
            }
        }

        if trial % 25 == 0 {
            let s = &members[trial as usize % members.len()];
            for rep in quotient_norm_axioms(&frame, &norm, s, 120, trial).unwrap() {
                if !rep.passed() {
                    failures.push(format!("{:?} on {s}", rep.axiom));
                }
            }
        }
    }
    Verdict {
        ok: failures.is_empty() && cosets >= 1000 && definiteness >= 600,
        detail: format!(
            "{decompositions} decompositions exact, {cosets} coset shifts (worst {worst_coset:.3e}), \
             {definiteness} definiteness probes at 1e-3/1e-6/0{}",
            list(&failures)
        ),
    }
}

fn orthogonal_unit(r: &mut ChaCha8Rng, dim: usize, span: &[Vector<f64>]) -> Vector<f64> {
    let dot = |a: &Vector<f64>, b: &Vector<f64>| -> f64 {
        a.coords().iter().zip(b.coords()).map(|(x, y)| x * y).sum()
    };
    let mut basis: Vec<Vector<f64>> = Vec::new();
    for v in span {
        let mut q = v.clone();
        for _ in 0..2 {
            for b in &basis {
                q = q.axpy(&-dot(&q, b), b);
            }
        }
        let len = dot(&q, &q).sqrt();
        basis.push(q.scaled(&len.recip()));
    }
    loop {
        let mut q = uniform(r, dim);
        for _ in 0..2 {
            for b in &basis {
                q = q.axpy(&-dot(&q, b), b);
            }
        }
        let len = dot(&q, &q).sqrt();
        if len > 1e-3 {
            return q.scaled(&len.recip());
        }
    }
}

fn counterexample() -> Verdict {
    let start = Instant::now();
    let rec = standard_counterexample(100).unwrap();
    let mut failures = Vec::new();
    for row in &rec.rows {
        let k = row.k as f64;
        if row.n12.abs() > 1e-9 || row.n34.abs() > 1e-9 || (row.n15 - k).abs() > 1e-9 * k {
            failures.push(format!(
                "k={}: ({}, {}, {})",
                row.k, row.n12, row.n34, row.n15
            ));
        }
    }
    if rec.rows.len() != 100 {
        failures.push(format!("{} rows", rec.rows.len()));
    }
    if rec.pair_covers || !rec.triple_covers {
        failures.push("covering flags".into());
    }
    if rec.pair_verdict.kind() != ConclusionKind::Converges
        || rec.triple_verdict.kind() != ConclusionKind::Diverges
    {
        failures.push(format!(
            "verdicts {:?} / {:?}",
            rec.pair_verdict.kind(),
            rec.triple_verdict.kind()
        ));
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(5) {
        failures.push(format!("took {elapsed:.1?}"));
    }
    Verdict {
        ok: failures.is_empty(),
        detail: format!(
            "k=1..100 traces (0, 0, k), {{1,2}},{{3,4}} -> {:?}, adding {{1,5}} -> {:?}{}",
            rec.pair_verdict.kind(),
            rec.triple_verdict.kind(),
            list(&failures)
        ),
    }
}

fn verdict_equivalences() -> Verdict {
    let mut failures = Vec::new();
    let (mut specs, mut checks) = (0, 0);
    for n in 2..=5 {
        for d in [n, n + 2] {
            let space = SpaceConfig::euclidean(d, n).unwrap();
            let frames: Vec<Frame<f64>> = (0..3)
                .map(|i| Frame::random(space.clone(), 0xf00 + 7 * i + d as u64))
                .collect();
            let cases = corpus(d, 60, 0xe0 + (n * 10 + d) as u64);
            let summary = run_corpus(&frames, &NNorm::standard(space), &cases).unwrap();
            specs += cases.len();
            checks += summary.checks;
            failures.extend(summary.disagreements.iter().map(|x| {
                format!(
                    "n={n} d={d} case {} frame {}: {} ({})",
                    x.case, x.frame, x.property, x.detail
                )
            }));
        }
    }
    Verdict {
        ok: failures.is_empty(),
        detail: format!(
            "{specs} specs x 3 frames over n=2..5, {checks} comparisons, {} disagreements{}",
            failures.len(),
            list(&failures)
        ),
    }
}

fn covering() -> Verdict {
    let mut failures = Vec::new();
    let mut pairs = 0;
    for n in 1..=7 {
        for m in 1..=n {
            pairs += 1;
            let closed = minimal_cover_size(n, m).unwrap();
            let searched = search_min_cover_size(n, m).unwrap();
            if closed != searched || closed != n.div_ceil(m) {
                failures.push(format!("({n},{m}): {closed} vs search {searched}"));
            }
        }
    }
    let five_two = minimal_cover_size(5, 2).unwrap();
    if five_two != 3 {
        failures.push(format!("(5,2) -> {five_two}"));
    }

    let mut selections = 0;
    let mut witnesses = 0;
    for n in 2..=5 {
        let d = n + 1;
        let space = SpaceConfig::euclidean(d, n).unwrap();
        let frame = Frame::random(space.clone(), 0xc0 + n as u64);
        let norm = NNorm::standard(space);
        let cases = corpus::<f64>(d, 50, 0xcc + n as u64);
        for m in 1..=n {
            let full = NormSelection::full(n, m).unwrap();
            let members = full.subsets().to_vec();
            let max_size = members.len().min(n.div_ceil(m) + 1);
            let covering_families: Vec<NormSelection> = (1..=max_size)
                .flat_map(|size| members.iter().cloned().combinations(size))
                .map(|fam| NormSelection::new(n, fam).unwrap())
                .filter(covering_check)
                .collect();
            for case in &cases {
                let reference =
                    converges_wrt(&case.spec, &frame, &norm, &full, &case.candidate_limit)
                        .unwrap()
                        .kind();
                for sel in &covering_families {
                    selections += 1;
                    let got = converges_wrt(&case.spec, &frame, &norm, sel, &case.candidate_limit)
                        .unwrap()
                        .kind();
                    if got != reference {
                        failures.push(format!("n={n} {sel}: {got:?} vs full {reference:?}"));
                    }
                }
            }
            if m < n {
                match unsound_selection_witness(&frame, &norm, m).unwrap() {
                    Some(w)
                        if !covering_check(&w.selection)
                            && w.selection_verdict.kind() != w.full_verdict.kind() =>
                    {
                        witnesses += 1
                    }
                    _ => failures.push(format!("no unsound witness for n={n} m={m}")),
                }
            }
        }
    }
    Verdict {
        ok: failures.is_empty(),
        detail: format!(
            "{pairs} (n,m) pairs match search, (5,2) -> {five_two}, {selections} covering \
             selections agree, {witnesses} unsound witnesses{}",
            list(&failures)
        ),
    }
}

fn numerical_oracles() -> Verdict {
    let mut r = rng(0xde7);
    let mut failures = Vec::new();
    let (mut worst_det, mut worst_vol) = (0.0f64, 0.0f64);
    for i in 0..1000 {
        let n = 2 + i % 4;
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n).map(|_| r.gen_range(-1.0..=1.0)).collect())
            .collect();
        let oracle = cofactor_det(&rows);
        let lu = determinant(&SquareMatrix::from_rows(rows).unwrap());
        let rel = (lu - oracle).abs() / oracle.abs();
        worst_det = worst_det.max(rel);
        if rel.is_nan() || rel > 1e-10 {
            failures.push(format!("det {lu} vs cofactor {oracle}"));
        }
    }
    for i in 0..1000 {
        let n = 2 + i % 4;
        let cfg = SpaceConfig::euclidean(n, n).unwrap();
        let vs: Vec<Vector<f64>> = (0..n).map(|_| uniform(&mut r, n)).collect();
        let rows: Vec<Vec<f64>> = vs.iter().map(|v| v.coords().to_vec()).collect();
        let volume = cofactor_det(&rows).abs();
        let gram = gram_norm(&cfg, &vs).unwrap();
        let rel = (gram - volume).abs() / volume;
        worst_vol = worst_vol.max(rel);
        if rel.is_nan() || rel > 1e-9 {
            failures.push(format!("sqrt(det G) {gram} vs |det A| {volume}"));
        }
    }
    Verdict {
        ok: failures.is_empty(),
        detail: format!(
            "determinant worst relative error {worst_det:.3e}, Gram volume worst {worst_vol:.3e}{}",
            list(&failures)
        ),
    }
}

fn list(failures: &[String]) -> String {
    if failures.is_empty() {
        String::new()
    } else {
        let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
        format!("; {} failures: {}", failures.len(), shown.join("; "))
    }
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 6] = [
        ("axiom suite", axiom_suite),
        ("quotient norm correctness", quotient_correctness),
        ("counterexample reproduction", counterexample),
        ("verdict equivalences", verdict_equivalences),
        ("covering combinatorics", covering),
        ("numerical oracles", numerical_oracles),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = run();
        if !v.ok {
            failed += 1;
        }
        println!(
            "criterion {} {:<28} {} [{:.2?}] {}",
            i + 1,
            name,
            if v.ok { "PASS" } else { "FAIL" },
            start.elapsed(),
            v.detail
        );
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
