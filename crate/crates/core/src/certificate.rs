//! End-to-end pipeline and its canonical JSON certificate.
//!
//! Stages run in order; a stage that fails records a failed check and stops
//! the run, and every later stage is reported as `"not run"`. The verdict is
//! only `IRRATIONAL_CERTIFIED` when the atom stage ran and every check
//! passed. JSON objects use sorted keys, and rationals are `"num/den"`
//! strings, so identical inputs give byte-identical output.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::algebra::{BiPoly, LaurentPoly, ParamPoly, PolyMatrix, PowerSeries, Rat, Vars};
use crate::ansatz::{antisymmetric_parameter, build_ansatz, AnsatzMatrix, DegreeRule, NOVIKOV};
use crate::atoms::{self, AtomAnalysis, AtomError, AtomInvariants, CentreModel, VerdictKind};
use crate::instance::InstanceSpec;
use crate::qde::{
    eliminate, match_equations, period_coefficients, solve_parameters, DiffOperator, Elimination,
    SolveReport, MATCH_SLACK,
};
use crate::spectrum::{kappa_char, reciprocity_check, BlockSpectrum, Reciprocity, SpectrumReport};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Smallest truncation order at which the matched equations saturate.
pub const MIN_SOLVE_ORDER: usize = 10;

/// Second truncation order used to confirm that the solution set is stable.
pub const STABILITY_ORDER: usize = 12;

/// Name of the antisymmetric parameter.
pub const ANTISYMMETRIC_PARAM: &str = "w";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    Period,
    Ansatz,
    Eliminate,
    Solve,
    Spectrum,
    Atoms,
}

impl Stage {
    pub const ALL: [Stage; 6] = [
        Stage::Period,
        Stage::Ansatz,
        Stage::Eliminate,
        Stage::Solve,
        Stage::Spectrum,
        Stage::Atoms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Period => "period",
            Stage::Ansatz => "ansatz",
            Stage::Eliminate => "eliminate",
            Stage::Solve => "solve",
            Stage::Spectrum => "spectrum",
            Stage::Atoms => "atoms",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown stage {0:?}")]
pub struct UnknownStage(pub String);

impl FromStr for Stage {
    type Err = UnknownStage;
    fn from_str(s: &str) -> Result<Stage, UnknownStage> {
        Stage::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| UnknownStage(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("truncation order {0} is below {MIN_SOLVE_ORDER}, which the solve stage needs")]
    OrderTooSmall(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOptions {
    /// Overrides the instance's truncation order.
    pub order: Option<usize>,
    pub through: Stage,
}

impl Default for RunOptions {
    fn default() -> RunOptions {
        RunOptions {
            order: None,
            through: Stage::Atoms,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// The regularized operator rewritten in `q` and checked against the
/// regularized period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularizedCheck {
    pub tag: String,
    pub original: DiffOperator,
    pub transformed: DiffOperator,
    /// Highest `q` power through which the residual was checked.
    pub depth: usize,
    pub annihilates: bool,
    /// First `q` power where applying it to the unregularized period fails.
    pub direct_residual: Option<(usize, Rat)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodStage {
    pub series: PowerSeries,
    pub regularized: Option<RegularizedCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnsatzStage {
    pub symmetric: AnsatzMatrix,
    pub antisymmetric: AnsatzMatrix,
    pub symmetric_gram: PolyMatrix,
    pub antisymmetric_gram: PolyMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveStage {
    pub match_order: usize,
    pub report: SolveReport,
    pub stability: Option<(usize, bool)>,
    pub chosen: Option<BTreeMap<String, Rat>>,
    pub operator: Option<DiffOperator>,
    pub annihilation_depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumStage {
    pub mplus: PolyMatrix,
    pub mminus: PolyMatrix,
    pub w: Rat,
    pub report: SpectrumReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StageOutcome<T> {
    NotRun,
    Failed(String),
    Done(T),
}

impl<T> StageOutcome<T> {
    pub fn done(&self) -> Option<&T> {
        match self {
            StageOutcome::Done(x) => Some(x),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineRun {
    pub instance: InstanceSpec,
    pub order: usize,
    pub through: Stage,
    pub period: StageOutcome<PeriodStage>,
    pub ansatz: StageOutcome<AnsatzStage>,
    pub eliminate: StageOutcome<Elimination>,
    pub solve: StageOutcome<SolveStage>,
    pub spectrum: StageOutcome<SpectrumStage>,
    pub atoms: StageOutcome<AtomAnalysis>,
    pub checks: Vec<Check>,
}

impl PipelineRun {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// `None` when the atom stage was not selected and nothing failed.
    pub fn verdict(&self) -> Option<VerdictKind> {
        let certified = self.all_passed()
            && self
                .atoms
                .done()
                .is_some_and(|a| a.verdict == VerdictKind::IrrationalCertified);
        if certified {
            Some(VerdictKind::IrrationalCertified)
        } else if !self.all_passed() || self.through == Stage::Atoms {
            Some(VerdictKind::Inconclusive)
        } else {
            None
        }
    }

    /// Process exit status: 0 certified (or a clean partial run), 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self.verdict() {
            Some(VerdictKind::IrrationalCertified) | None => 0,
            Some(VerdictKind::Inconclusive) => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        certificate_json(self)
    }

    /// Pretty-printed canonical certificate with a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }
}

struct Runner {
    checks: Vec<Check>,
}

impl Runner {
    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }
}

fn q_ring() -> std::sync::Arc<Vars> {
    Vars::new(&[NOVIKOV])
}

fn run_period(inst: &InstanceSpec, order: usize, r: &mut Runner) -> Result<PeriodStage, String> {
    let series = period_coefficients(&inst.period, order).map_err(|e| e.to_string())?;
    let regularized = match inst.regularized {
        None => None,
        Some(src) => {
            let original = src.operator();
            let transformed = original
                .even_to_square(NOVIKOV)
                .map_err(|e| e.to_string())?
                .normalized();
            let qd = transformed.q_degree() as usize;
            let ext = period_coefficients(&inst.period, order + qd).map_err(|e| e.to_string())?;
            let residual = transformed
                .apply(&ext.regularize(2))
                .map_err(|e| e.to_string())?;
            let annihilates = residual.is_zero();
            let direct = transformed.apply(&ext).map_err(|e| e.to_string())?;
            let direct_residual = direct
                .coeffs()
                .iter()
                .enumerate()
                .find(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, c.clone()));
            r.check(
                "period.regularized_annihilation",
                annihilates,
                format!(
                    "transformed operator applied to Σ (2m)!·G_m q^m vanishes through q^{}",
                    residual.order()
                ),
            );
            Some(RegularizedCheck {
                tag: src.tag().to_string(),
                original,
                transformed,
                depth: residual.order(),
                annihilates,
                direct_residual,
            })
        }
    };
    Ok(PeriodStage {
        series,
        regularized,
    })
}

fn run_ansatz(inst: &InstanceSpec, r: &mut Runner) -> Result<AnsatzStage, String> {
    let ring = inst.ambient_ring();
    let basis = ring.build_eigenbasis();
    let q = q_ring();
    let build = |block: &[crate::cohomology::BasisElement], classes| {
        let rule = DegreeRule::hyperplane(block.iter().map(|b| b.degree).collect());
        let gram = ring.gram_matrix(classes, &q);
        build_ansatz(&ring, block, &rule, &gram).map(|a| (a, gram))
    };
    let (sym_classes, anti_classes) = (basis.symmetric_classes(), basis.antisymmetric_classes());
    let (sym, sym_gram) = build(&basis.symmetric, &sym_classes).map_err(|e| e.to_string())?;
    let sym = sym
        .rename(&inst.quantum.param_names)
        .map_err(|e| e.to_string())?;
    let (anti, anti_gram) =
        build(&basis.antisymmetric, &anti_classes).map_err(|e| e.to_string())?;
    let anti_names: Vec<(String, (usize, usize))> = anti
        .anchors
        .iter()
        .enumerate()
        .map(|(i, &pos)| {
            let name = if anti.anchors.len() == 1 {
                ANTISYMMETRIC_PARAM.to_string()
            } else {
                format!("{}{}", ANTISYMMETRIC_PARAM, i)
            };
            (name, pos)
        })
        .collect();
    let anti = anti.rename(&anti_names).map_err(|e| e.to_string())?;

    let sa = sym.is_self_adjoint(&sym_gram).map_err(|e| e.to_string())?
        && anti
            .is_self_adjoint(&anti_gram)
            .map_err(|e| e.to_string())?;
    r.check(
        "ansatz.self_adjoint",
        sa,
        "Mᵀ·G = G·M identically on both blocks",
    );
    let classical = |a: &AnsatzMatrix| {
        let qi = a.vars().index_of(NOVIKOV).expect("q");
        a.matrix.map(|e| e.eval_var(qi, &Rat::zero())) == a.classical
    };
    r.check(
        "ansatz.classical_limit",
        classical(&sym) && classical(&anti),
        "q = 0 recovers cup product with H1 + H2",
    );
    let named = sym.params.len() == inst.quantum.param_names.len();
    r.check(
        "ansatz.parameter_count",
        named && anti.params.len() == 1,
        format!(
            "{} symmetric and {} antisymmetric free parameters",
            sym.params.len(),
            anti.params.len()
        ),
    );
    Ok(AnsatzStage {
        symmetric: sym,
        antisymmetric: anti,
        symmetric_gram: sym_gram,
        antisymmetric_gram: anti_gram,
    })
}

fn run_eliminate(
    inst: &InstanceSpec,
    a: &AnsatzStage,
    r: &mut Runner,
) -> Result<Elimination, String> {
    let elim = eliminate(&a.symmetric.matrix, inst.quantum.component).map_err(|e| e.to_string())?;
    let residual = elim.cofactor_residual().map_err(|e| e.to_string())?;
    r.check(
        "eliminate.cofactor_identity",
        residual.iter().all(ParamPoly::is_zero),
        "Σ c_k r_k = 0 symbolically",
    );
    let dim = a.symmetric.matrix.rows();
    r.check(
        "eliminate.order",
        elim.operator.order() == dim,
        format!(
            "order {} for a block of dimension {}",
            elim.operator.order(),
            dim
        ),
    );
    Ok(elim)
}

fn solve_at(inst: &InstanceSpec, op: &DiffOperator, order: usize) -> Result<SolveReport, String> {
    let g = period_coefficients(&inst.period, order).map_err(|e| e.to_string())?;
    let eqs = match_equations(op, &g, order - MATCH_SLACK).map_err(|e| e.to_string())?;
    solve_parameters(&eqs, &inst.quantum.enumerative).map_err(|e| e.to_string())
}

fn run_solve(
    inst: &InstanceSpec,
    order: usize,
    elim: &Elimination,
    r: &mut Runner,
) -> Result<SolveStage, String> {
    let report = solve_at(inst, &elim.operator, order)?;
    let stability = if order > STABILITY_ORDER {
        let other = solve_at(inst, &elim.operator, STABILITY_ORDER)?;
        let same = report.same_outcome(&other);
        r.check(
            "solve.truncation_stable",
            same,
            format!(
                "solution sets agree at orders {} and {}",
                STABILITY_ORDER, order
            ),
        );
        Some((STABILITY_ORDER, same))
    } else {
        None
    };
    let unique = report.accepted.len() == 1;
    r.check(
        "solve.unique_enumerative",
        unique,
        format!(
            "{} solutions, {} with non-negative integer enumerative invariants",
            report.solutions.len(),
            report.accepted.len()
        ),
    );
    let chosen = unique.then(|| report.accepted[0].clone());
    let mut operator = None;
    let mut depth = 0;
    if let Some(values) = &chosen {
        let op = elim
            .operator
            .evaluate(values)
            .embed(&q_ring())
            .map_err(|e| e.to_string())?;
        let g = period_coefficients(&inst.period, order).map_err(|e| e.to_string())?;
        let residual = op.apply(&g).map_err(|e| e.to_string())?;
        depth = residual.order();
        r.check(
            "solve.annihilation",
            residual.is_zero(),
            format!("solved operator annihilates G through q^{}", depth),
        );
        operator = Some(op);
    }
    Ok(SolveStage {
        match_order: order - MATCH_SLACK,
        report,
        stability,
        chosen,
        operator,
        annihilation_depth: depth,
    })
}

fn run_spectrum(
    inst: &InstanceSpec,
    a: &AnsatzStage,
    s: &SolveStage,
    period: &PeriodStage,
    r: &mut Runner,
) -> Result<SpectrumStage, String> {
    let values = s
        .chosen
        .as_ref()
        .ok_or("no unique parameter solution to substitute")?;
    let mplus = a
        .symmetric
        .substitute_params(values)
        .map_err(|e| e.to_string())?;
    let w = antisymmetric_parameter(&inst.quantum.n_invariant);
    let wv: BTreeMap<String, Rat> = a
        .antisymmetric
        .params
        .iter()
        .map(|p| (p.clone(), w.clone()))
        .collect();
    let mminus = a
        .antisymmetric
        .substitute_params(&wv)
        .map_err(|e| e.to_string())?;
    let mut report = match kappa_char(&mplus, &mminus) {
        Ok(rep) => rep,
        Err(e) => {
            r.check("spectrum.template", false, e.to_string());
            return Err(e.to_string());
        }
    };
    r.check(
        "spectrum.template",
        true,
        format!(
            "χ+ = {}, χ- = {}",
            report.symmetric.factored(),
            report.antisymmetric.factored()
        ),
    );
    if let Some(reg) = &period.regularized {
        let rec = reciprocity_check(&reg.original, &report).map_err(|e| e.to_string())?;
        r.check(
            "spectrum.reciprocity",
            rec.passed,
            "singular t² values are the reciprocals of the symmetric eigenvalue squares",
        );
        report.reciprocity = Some(rec);
    }
    Ok(SpectrumStage {
        mplus,
        mminus,
        w,
        report,
    })
}

fn run_atoms(
    inst: &InstanceSpec,
    sp: &SpectrumStage,
    r: &mut Runner,
) -> Result<AtomAnalysis, String> {
    let analysis = match atoms::certify(inst, &sp.report) {
        Ok(a) => a,
        Err(e @ AtomError::RhoUnknown) => {
            r.check("atoms.transcendental_rho_known", false, e.to_string());
            return Err(e.to_string());
        }
        Err(e) => return Err(e.to_string()),
    };
    r.check(
        "atoms.transcendental_rho_known",
        true,
        format!("T is simple: {}", analysis.transcendental),
    );
    for c in &analysis.cases {
        let atom = c.case.t_bearing();
        r.check(
            &format!("atoms.obstruction.{}", c.case.placement.name()),
            c.obstruction.holds(),
            format!(
                "{}; t² coefficient nonzero: {}, ρ < 3: {}",
                atom, c.obstruction.t2_nonzero, c.obstruction.rho_below_three
            ),
        );
    }
    let empty = analysis.cases.iter().all(|c| c.realizations.is_empty());
    let detail = if empty {
        format!(
            "no multiset of at most {} points, curves (genus ≤ {}) or surfaces realizes a T-bearing atom",
            atoms::SEARCH_CENTRES,
            atoms::SEARCH_GENUS
        )
    } else {
        let found: Vec<String> = analysis
            .cases
            .iter()
            .filter_map(|c| {
                let first = c.realizations.first()?;
                let names: Vec<String> = first.iter().map(|m| m.to_string()).collect();
                Some(format!(
                    "{} realized by [{}] ({} multisets)",
                    c.case.placement.name(),
                    names.join(", "),
                    c.realizations.len()
                ))
            })
            .collect();
        found.join("; ")
    };
    r.check("atoms.exclusion_empty", empty, detail);
    Ok(analysis)
}

fn stage<T>(
    selected: bool,
    blocked: &mut bool,
    f: impl FnOnce() -> Result<T, String>,
) -> StageOutcome<T> {
    if !selected || *blocked {
        return StageOutcome::NotRun;
    }
    match f() {
        Ok(x) => StageOutcome::Done(x),
        Err(e) => {
            *blocked = true;
            StageOutcome::Failed(e)
        }
    }
}

/// Runs the pipeline through `opts.through`.
pub fn run(instance: &InstanceSpec, opts: &RunOptions) -> Result<PipelineRun, PipelineError> {
    let order = opts.order.unwrap_or(instance.run.order);
    if opts.through >= Stage::Solve && order < MIN_SOLVE_ORDER {
        return Err(PipelineError::OrderTooSmall(order));
    }
    let inst = instance;
    let mut r = Runner { checks: Vec::new() };
    let mut blocked = false;
    let on = |s: Stage| s <= opts.through;

    let period = stage(on(Stage::Period), &mut blocked, || {
        run_period(inst, order, &mut r)
    });
    let ansatz = stage(on(Stage::Ansatz), &mut blocked, || run_ansatz(inst, &mut r));
    let elim = stage(on(Stage::Eliminate), &mut blocked, || {
        run_eliminate(inst, ansatz.done().expect("ran"), &mut r)
    });
    let solve = stage(on(Stage::Solve), &mut blocked, || {
        run_solve(inst, order, elim.done().expect("ran"), &mut r)
    });
    let spectrum = stage(on(Stage::Spectrum), &mut blocked, || {
        run_spectrum(
            inst,
            ansatz.done().expect("ran"),
            solve.done().expect("ran"),
            period.done().expect("ran"),
            &mut r,
        )
    });
    let atoms = stage(on(Stage::Atoms), &mut blocked, || {
        run_atoms(inst, spectrum.done().expect("ran"), &mut r)
    });

    let mut checks = r.checks;
    for (st, failed) in [
        (Stage::Period, failure(&period)),
        (Stage::Ansatz, failure(&ansatz)),
        (Stage::Eliminate, failure(&elim)),
        (Stage::Solve, failure(&solve)),
        (Stage::Spectrum, failure(&spectrum)),
        (Stage::Atoms, failure(&atoms)),
    ] {
        if let Some(msg) = failed {
            if !checks
                .iter()
                .any(|c| !c.passed && c.name.starts_with(st.name()))
            {
                checks.push(Check {
                    name: format!("{}.completed", st.name()),
                    passed: false,
                    detail: msg.to_string(),
                });
            }
        }
    }

    Ok(PipelineRun {
        instance: instance.clone(),
        order,
        through: opts.through,
        period,
        ansatz,
        eliminate: elim,
        solve,
        spectrum,
        atoms,
        checks,
    })
}

fn failure<T>(s: &StageOutcome<T>) -> Option<&str> {
    match s {
        StageOutcome::Failed(m) => Some(m),
        _ => None,
    }
}

// ---- canonical JSON ----

pub fn rat_json(r: &Rat) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

/// Univariate polynomials become ascending coefficient arrays; others list
/// their terms with exponent vectors.
pub fn poly_json(p: &ParamPoly) -> Value {
    if p.vars().len() == 1 {
        let coeffs = p.univariate_coeffs(0).expect("univariate");
        return Value::Array(coeffs.iter().map(rat_json).collect());
    }
    let terms: Vec<Value> = p
        .terms()
        .map(|(e, c)| json!({ "exponents": e, "coefficient": rat_json(c) }))
        .collect();
    json!({ "variables": p.vars().names(), "terms": terms, "text": p.to_string() })
}

pub fn matrix_json(m: &PolyMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(poly_json).collect()))
            .collect(),
    )
}

pub fn operator_json(op: &DiffOperator) -> Value {
    json!({
        "variable": op.var(),
        "order": op.order(),
        "coefficients": op.coeffs().iter().map(poly_json).collect::<Vec<_>>(),
        "text": op.to_string(),
    })
}

pub fn bipoly_json(p: &BiPoly) -> Value {
    json!({
        "variable": p.outer_name(),
        "coefficients": p.coeffs().iter().map(poly_json).collect::<Vec<_>>(),
        "text": p.to_string(),
    })
}

pub fn laurent_json(p: &LaurentPoly) -> Value {
    json!({
        "terms": p.terms().map(|(k, c)| json!([k, c])).collect::<Vec<_>>(),
        "text": p.to_string(),
    })
}

fn assignment_json(a: &BTreeMap<String, Rat>) -> Value {
    Value::Object(a.iter().map(|(k, v)| (k.clone(), rat_json(v))).collect())
}

fn atom_json(a: &AtomInvariants) -> Value {
    json!({ "label": a.label, "rho": a.rho, "hodge_poly": laurent_json(&a.hodge_poly) })
}

fn instance_json(inst: &InstanceSpec) -> Value {
    json!({
        "name": inst.name,
        "ring": {
            "generators": inst.ring.generators,
            "nilpotency": inst.ring.nilpotency,
            "pairing": rat_json(&inst.ring.pairing),
            "weights": inst.ring.weights,
        },
        "involution": format!("{}:{}", inst.swap.0, inst.swap.1),
        "hodge": {
            "h31": inst.hodge.h31,
            "middle": inst.hodge.middle,
            "dimT": inst.hodge.dim_t,
            "tdecomp": inst.hodge.t_decomposition,
            "simple": inst.hodge.simple,
        },
        "quantum": {
            "N": rat_json(&inst.quantum.n_invariant),
            "enumerative": inst.quantum.enumerative,
            "component": inst.quantum.component,
            "param_names": inst.quantum.param_names.iter()
                .map(|(n, (i, j))| format!("{}@({},{})", n, i, j)).collect::<Vec<_>>(),
        },
        "period": {
            "source": inst.period.source.tag(),
            "regularized": inst.regularized.map(|r| r.tag()),
        },
        "run": {
            "order": inst.run.order,
            "zero_dim_plus": inst.run.zero_dim_plus,
            "zero_dim_minus": inst.run.zero_dim_minus,
        },
    })
}

fn outcome_json<T>(s: &StageOutcome<T>, f: impl FnOnce(&T) -> Value) -> Value {
    match s {
        StageOutcome::NotRun => json!({ "status": "not run" }),
        StageOutcome::Failed(e) => json!({ "status": "failed", "error": e }),
        StageOutcome::Done(x) => {
            let mut v = f(x);
            if let Value::Object(m) = &mut v {
                m.insert("status".into(), Value::String("ok".into()));
            }
            v
        }
    }
}

fn ansatz_json(a: &AnsatzMatrix, gram: &PolyMatrix) -> Value {
    json!({
        "parameters": a.params,
        "anchors": a.anchors.iter().map(|(i, j)| json!([i, j])).collect::<Vec<_>>(),
        "placements": a.placements.iter().map(|p| json!({
            "row": p.row, "col": p.col, "q_power": p.q_power,
            "param": p.param, "multiplier": rat_json(&p.multiplier),
        })).collect::<Vec<_>>(),
        "classical": matrix_json(&a.classical),
        "matrix": matrix_json(&a.matrix),
        "gram": matrix_json(gram),
    })
}

fn solve_json(s: &SolveStage) -> Value {
    let rep = &s.report;
    json!({
        "match_order": s.match_order,
        "equations": rep.equations.iter().map(|e| json!({
            "q_order": e.q_order, "poly": poly_json(&e.poly),
        })).collect::<Vec<_>>(),
        "linearized": {
            "monomials": rep.linearized.monomials,
            "rows": rep.linearized.rows.iter()
                .map(|r| r.iter().map(rat_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        },
        "solutions": rep.solutions.iter().map(assignment_json).collect::<Vec<_>>(),
        "accepted": rep.accepted.iter().map(assignment_json).collect::<Vec<_>>(),
        "rejected": rep.rejected.iter().map(|x| json!({
            "values": assignment_json(&x.values), "reason": x.reason,
        })).collect::<Vec<_>>(),
        "stability": s.stability.map(|(o, same)| json!({ "order": o, "identical": same })),
        "solved_operator": s.operator.as_ref().map(operator_json),
        "annihilation_depth": s.annihilation_depth,
    })
}

fn block_json(b: &BlockSpectrum) -> Value {
    json!({
        "label": b.label,
        "dimension": b.dimension,
        "chi": bipoly_json(&b.chi),
        "factored": b.factored(),
        "zero_multiplicity": b.zero_multiplicity,
        "eigen_squares": b.eigen_squares.iter().map(rat_json).collect::<Vec<_>>(),
    })
}

fn reciprocity_json(r: &Reciprocity) -> Value {
    json!({
        "singular_t_squared": r.singular.iter().map(rat_json).collect::<Vec<_>>(),
        "reciprocal_eigen_squares": r.reciprocals.iter().map(rat_json).collect::<Vec<_>>(),
        "passed": r.passed,
    })
}

fn spectrum_json(s: &SpectrumStage) -> Value {
    json!({
        "kappa_scale": crate::spectrum::KAPPA_SCALE,
        "symmetric_matrix": matrix_json(&s.mplus),
        "antisymmetric_matrix": matrix_json(&s.mminus),
        "antisymmetric_parameter": rat_json(&s.w),
        "symmetric": block_json(&s.report.symmetric),
        "antisymmetric": block_json(&s.report.antisymmetric),
        "total_chi": bipoly_json(&s.report.total_chi()),
        "reciprocity": s.report.reciprocity.as_ref().map(reciprocity_json),
    })
}

fn centres_json(v: &[CentreModel]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(c.to_string())).collect())
}

fn atoms_json(a: &AtomAnalysis) -> Value {
    json!({
        "transcendental": atom_json(&a.transcendental),
        "zero_dimensions": { "plus": a.zero_dims.0, "minus": a.zero_dims.1 },
        "cases": a.cases.iter().map(|c| json!({
            "placement": c.case.placement.name(),
            "E_0^+": atom_json(&c.case.plus),
            "E_0^-": atom_json(&c.case.minus),
            "t_bearing": c.case.t_bearing().label,
            "t2_nonzero": c.obstruction.t2_nonzero,
            "rho_below_three": c.obstruction.rho_below_three,
            "obstruction": c.obstruction.holds(),
            "realizations": c.realizations.iter().map(|r| centres_json(r)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "search_bounds": { "max_centres": atoms::SEARCH_CENTRES, "max_genus": atoms::SEARCH_GENUS },
        "nonzero_eigenspaces": a.nonzero.iter().map(|(b, c, d)| json!({
            "block": b, "eigen_square": rat_json(c), "dimension": d,
        })).collect::<Vec<_>>(),
        "atom_verdict": a.verdict.as_str(),
    })
}

fn period_json(p: &PeriodStage) -> Value {
    json!({
        "coefficients": p.series.coeffs().iter().map(rat_json).collect::<Vec<_>>(),
        "regularized": p.regularized.as_ref().map(|r| json!({
            "source": r.tag,
            "original": operator_json(&r.original),
            "transformed": operator_json(&r.transformed),
            "depth": r.depth,
            "annihilates_regularized_period": r.annihilates,
            "direct_residual": r.direct_residual.as_ref()
                .map(|(k, c)| json!({ "q_power": k, "coefficient": rat_json(c) })),
        })),
    })
}

fn notes(run: &PipelineRun) -> Vec<String> {
    let mut out = vec![
        "the antisymmetric quantum parameter is w = -N/2, read off from the three-point invariant"
            .to_string(),
        "nonzero eigenspaces are reported with dimensions only".to_string(),
    ];
    if let Some(reg) = run.period.done().and_then(|p| p.regularized.as_ref()) {
        let mut s =
            "the regularized operator annihilates Σ (2m)!·G_m q^m, not G itself".to_string();
        if let Some((k, c)) = &reg.direct_residual {
            s.push_str(&format!("; applied to G it leaves {} at q^{}", c, k));
        }
        out.push(s);
    }
    out
}

pub fn certificate_json(run: &PipelineRun) -> Value {
    let mut stages = Map::new();
    stages.insert("period".into(), outcome_json(&run.period, period_json));
    stages.insert(
        "ansatz".into(),
        outcome_json(&run.ansatz, |a| {
            json!({
                "symmetric": ansatz_json(&a.symmetric, &a.symmetric_gram),
                "antisymmetric": ansatz_json(&a.antisymmetric, &a.antisymmetric_gram),
            })
        }),
    );
    stages.insert(
        "eliminate".into(),
        outcome_json(&run.eliminate, |e| {
            json!({
                "operator": operator_json(&e.operator),
                "cyclic_rows": matrix_json(&e.rows),
            })
        }),
    );
    stages.insert("solve".into(), outcome_json(&run.solve, solve_json));
    stages.insert(
        "spectrum".into(),
        outcome_json(&run.spectrum, spectrum_json),
    );
    stages.insert("atoms".into(), outcome_json(&run.atoms, atoms_json));

    let checks: Vec<Value> = run
        .checks
        .iter()
        .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
        .collect();
    json!({
        "verdict": run.verdict().map_or("not run", VerdictKind::as_str),
        "checks": checks,
        "stages": Value::Object(stages),
        "engine_version": ENGINE_VERSION,
        "instance": instance_json(&run.instance),
        "order": run.order,
        "through": run.through.name(),
        "notes": notes(run),
    })
}
