//! Human-readable summaries of a pipeline run.

use std::fmt::Write;

use atomcert_core::certificate::{PipelineRun, Stage, StageOutcome};

fn status<T>(out: &mut String, name: &str, s: &StageOutcome<T>) -> bool {
    match s {
        StageOutcome::NotRun => {
            writeln!(out, "{}: not run", name).unwrap();
            false
        }
        StageOutcome::Failed(e) => {
            writeln!(out, "{}: failed: {}", name, e).unwrap();
            false
        }
        StageOutcome::Done(_) => true,
    }
}

fn period(out: &mut String, run: &PipelineRun) {
    if !status(out, "period", &run.period) {
        return;
    }
    let p = run.period.done().unwrap();
    let coeffs: Vec<String> = p.series.coeffs().iter().map(|c| c.to_string()).collect();
    writeln!(out, "period coefficients through q^{}:", p.series.order()).unwrap();
    writeln!(out, "  {}", coeffs.join(", ")).unwrap();
    if let Some(r) = &p.regularized {
        writeln!(out, "regularized operator ({}), rewritten in q:", r.tag).unwrap();
        writeln!(out, "  {}", r.transformed).unwrap();
        writeln!(
            out,
            "  annihilates the regularized period through q^{}: {}",
            r.depth, r.annihilates
        )
        .unwrap();
    }
}

fn ansatz(out: &mut String, run: &PipelineRun) {
    if !status(out, "ansatz", &run.ansatz) {
        return;
    }
    let a = run.ansatz.done().unwrap();
    for (label, m) in [
        ("symmetric", &a.symmetric),
        ("antisymmetric", &a.antisymmetric),
    ] {
        writeln!(out, "{} block, parameters {}:", label, m.params.join(", ")).unwrap();
        for i in 0..m.matrix.rows() {
            let row: Vec<String> = m.matrix.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(out, "  [ {} ]", row.join(" | ")).unwrap();
        }
    }
}

fn operator(out: &mut String, run: &PipelineRun) {
    if !status(out, "eliminate", &run.eliminate) {
        return;
    }
    let e = run.eliminate.done().unwrap();
    writeln!(out, "scalar operator of order {}:", e.operator.order()).unwrap();
    for (k, c) in e.operator.coeffs().iter().enumerate().rev() {
        writeln!(out, "  D^{}: {}", k, c).unwrap();
    }
}

fn solve(out: &mut String, run: &PipelineRun) {
    if !status(out, "solve", &run.solve) {
        return;
    }
    let s = run.solve.done().unwrap();
    let fmt = |a: &std::collections::BTreeMap<String, atomcert_core::algebra::Rat>| {
        let parts: Vec<String> = a.iter().map(|(k, v)| format!("{} = {}", k, v)).collect();
        format!("({})", parts.join(", "))
    };
    writeln!(
        out,
        "{} matched equations through q^{}",
        s.report.equations.len(),
        s.match_order
    )
    .unwrap();
    writeln!(out, "solutions:").unwrap();
    for x in &s.report.solutions {
        writeln!(out, "  {}", fmt(x)).unwrap();
    }
    for r in &s.report.rejected {
        writeln!(out, "rejected {}: {}", fmt(&r.values), r.reason).unwrap();
    }
    writeln!(out, "accepted:").unwrap();
    for x in &s.report.accepted {
        writeln!(out, "  {}", fmt(x)).unwrap();
    }
    if let Some(op) = &s.operator {
        writeln!(out, "solved operator: {}", op).unwrap();
    }
}

fn spectrum(out: &mut String, run: &PipelineRun) {
    if !status(out, "spectrum", &run.spectrum) {
        return;
    }
    let s = run.spectrum.done().unwrap();
    for b in s.report.blocks() {
        writeln!(
            out,
            "{}: χ = {}  (zero multiplicity {})",
            b.label,
            b.factored(),
            b.zero_multiplicity
        )
        .unwrap();
    }
    if let Some(r) = &s.report.reciprocity {
        let show = |v: &[atomcert_core::algebra::Rat]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        writeln!(
            out,
            "reciprocity: singular t² {{{}}} vs 1/c {{{}}}: {}",
            show(&r.singular),
            show(&r.reciprocals),
            if r.passed { "match" } else { "MISMATCH" }
        )
        .unwrap();
    }
}

fn atoms(out: &mut String, run: &PipelineRun) {
    if !status(out, "atoms", &run.atoms) {
        return;
    }
    let a = run.atoms.done().unwrap();
    writeln!(out, "{}", a.transcendental).unwrap();
    for c in &a.cases {
        writeln!(
            out,
            "{}: {}; {}",
            c.case.placement.name(),
            c.case.plus,
            c.case.minus
        )
        .unwrap();
        writeln!(
            out,
            "  obstruction on {}: {}",
            c.case.t_bearing().label,
            c.obstruction.holds()
        )
        .unwrap();
    }
}

/// Report for `focus`, followed by the checks and the verdict.
pub fn render(run: &PipelineRun, focus: Stage) -> String {
    let mut out = String::new();
    match focus {
        Stage::Period => period(&mut out, run),
        Stage::Ansatz => ansatz(&mut out, run),
        Stage::Eliminate => operator(&mut out, run),
        Stage::Solve => solve(&mut out, run),
        Stage::Spectrum => spectrum(&mut out, run),
        Stage::Atoms => {
            for f in [period, ansatz, operator, solve, spectrum, atoms] {
                f(&mut out, run);
            }
        }
    }
    writeln!(out, "checks:").unwrap();
    for c in &run.checks {
        writeln!(
            out,
            "  [{}] {}: {}",
            if c.passed { "pass" } else { "FAIL" },
            c.name,
            c.detail
        )
        .unwrap();
    }
    let verdict = run.verdict().map_or("not run", |v| v.as_str());
    writeln!(out, "verdict: {}", verdict).unwrap();
    out
}
