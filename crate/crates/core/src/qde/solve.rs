//! Exact solver for small polynomial systems from coefficient matching.
//!
//! The system is linearized over the monomials that occur. Linear rows of
//! the reduced system are solved and substituted; once no linear row is
//! left, a univariate equation of degree at most two is split over its
//! rational roots. Every candidate is checked against all equations.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::univariate::rational_roots;
use crate::algebra::{linalg, Exponents, ParamPoly, Rat, Vars};

use super::operator::MatchedEquation;

pub type Assignment = BTreeMap<String, Rat>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("system is underdetermined")]
    Underdetermined,
    #[error("linearized system is inconsistent")]
    Inconsistent,
    #[error("unsolved: {0}")]
    Unsolved(String),
}

/// The top-level linearization in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedSystem {
    /// Column labels; the last column is the constant term.
    pub monomials: Vec<String>,
    pub rows: Vec<Vec<Rat>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub values: Assignment,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub equations: Vec<MatchedEquation>,
    pub linearized: LinearizedSystem,
    /// Every verified solution, sorted.
    pub solutions: Vec<Assignment>,
    /// Solutions whose enumerative parameters are non-negative integers.
    pub accepted: Vec<Assignment>,
    pub rejected: Vec<Rejection>,
}

impl SolveReport {
    /// Same solutions, survivors and rejections.
    pub fn same_outcome(&self, other: &SolveReport) -> bool {
        self.solutions == other.solutions
            && self.accepted == other.accepted
            && self.rejected == other.rejected
    }
}

fn monomial_order(a: &Exponents, b: &Exponents) -> std::cmp::Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

fn linearize(eqs: &[ParamPoly]) -> (Vec<Exponents>, Vec<Vec<Rat>>, Vec<usize>) {
    let mut monos: BTreeSet<Exponents> = BTreeSet::new();
    for e in eqs {
        for (x, _) in e.terms() {
            if x.iter().any(|&d| d > 0) {
                monos.insert(x.clone());
            }
        }
    }
    let mut monos: Vec<Exponents> = monos.into_iter().collect();
    monos.sort_by(monomial_order);
    let m = monos.len();
    let mut rows: Vec<Vec<Rat>> = eqs
        .iter()
        .map(|e| {
            let mut row: Vec<Rat> = monos.iter().map(|x| e.coefficient(x)).collect();
            row.push(e.constant_term());
            row
        })
        .collect();
    let order: Vec<usize> = (0..m).collect();
    let pivots = linalg::rref_ordered(&mut rows, &order);
    (monos, rows, pivots)
}

fn row_poly(vars: &Arc<Vars>, monos: &[Exponents], row: &[Rat]) -> ParamPoly {
    let mut terms: Vec<(Exponents, Rat)> = monos.iter().cloned().zip(row.iter().cloned()).collect();
    terms.push((vec![0; vars.len()], row[monos.len()].clone()));
    ParamPoly::from_terms(vars, terms)
}

fn solve_branch(
    vars: &Arc<Vars>,
    eqs: Vec<ParamPoly>,
    unknown: &BTreeSet<usize>,
) -> Result<Vec<Vec<Option<Rat>>>, SolveError> {
    let eqs: Vec<ParamPoly> = eqs.into_iter().filter(|e| !e.is_zero()).collect();
    if eqs.iter().any(ParamPoly::is_constant) {
        return Ok(Vec::new());
    }
    if eqs.is_empty() {
        if unknown.is_empty() {
            return Ok(vec![vec![None; vars.len()]]);
        }
        return Err(SolveError::Underdetermined);
    }
    let (monos, rows, _) = linearize(&eqs);
    let reduced: Vec<ParamPoly> = rows.iter().map(|r| row_poly(vars, &monos, r)).collect();
    if reduced.iter().any(ParamPoly::is_constant) {
        return Ok(Vec::new());
    }

    // A linear row: substitute its leading variable and recurse.
    if let Some(lin) = reduced.iter().find(|p| p.total_degree() == Some(1)) {
        let (lead, c) = lin.leading_term().expect("nonzero row");
        let x = lead.iter().position(|&d| d == 1).expect("linear monomial");
        let xv = ParamPoly::var_at(vars, x);
        let rest = lin - &xv.scale(c);
        let expr = rest.scale(&(-c.recip()));
        let next: Vec<ParamPoly> = reduced
            .iter()
            .map(|e| e.substitute(x, &expr).expect("same ring"))
            .collect();
        let mut still = unknown.clone();
        still.remove(&x);
        let mut out = Vec::new();
        for mut sol in solve_branch(vars, next, &still)? {
            let values: Assignment = sol
                .iter()
                .enumerate()
                .filter_map(|(i, v)| v.clone().map(|v| (vars.name(i).to_string(), v)))
                .collect();
            let xval = expr.evaluate(&values);
            let Some(xval) = xval.as_constant() else {
                return Err(SolveError::Underdetermined);
            };
            sol[x] = Some(xval);
            out.push(sol);
        }
        return Ok(out);
    }

    // Otherwise split a univariate equation over its rational roots.
    let uni = reduced
        .iter()
        .filter(|p| p.support_vars().len() == 1)
        .min_by_key(|p| p.total_degree());
    let Some(uni) = uni else {
        return Err(SolveError::Unsolved(
            "no linear or univariate equation remains".into(),
        ));
    };
    let x = uni.support_vars()[0];
    let deg = uni.degree_in(x).unwrap_or(0);
    if deg > 2 {
        return Err(SolveError::Unsolved(format!(
            "univariate equation of degree {} in {}",
            deg,
            vars.name(x)
        )));
    }
    let coeffs = uni.univariate_coeffs(x).expect("univariate");
    let roots = rational_roots(&coeffs).ok_or_else(|| {
        SolveError::Unsolved(format!(
            "irrational roots for {}: {} = 0",
            vars.name(x),
            uni
        ))
    })?;
    let roots: BTreeSet<Rat> = roots.into_iter().collect();
    let mut still = unknown.clone();
    still.remove(&x);
    let mut out = Vec::new();
    for root in roots {
        let next: Vec<ParamPoly> = reduced.iter().map(|e| e.eval_var(x, &root)).collect();
        for mut sol in solve_branch(vars, next, &still)? {
            sol[x] = Some(root.clone());
            out.push(sol);
        }
    }
    Ok(out)
}

/// Solves the matched equations and applies the enumerativity filter.
pub fn solve_parameters(
    equations: &[MatchedEquation],
    enumerative: &[String],
) -> Result<SolveReport, SolveError> {
    let Some(first) = equations.first() else {
        return Err(SolveError::Underdetermined);
    };
    let vars = first.poly.vars().clone();
    let polys: Vec<ParamPoly> = equations.iter().map(|e| e.poly.clone()).collect();

    let (monos, rows, _) = linearize(&polys);
    let inconsistent = rows
        .iter()
        .any(|r| r[..monos.len()].iter().all(Rat::is_zero) && !r[monos.len()].is_zero());
    if inconsistent {
        return Err(SolveError::Inconsistent);
    }
    let mut labels: Vec<String> = monos
        .iter()
        .map(|e| {
            let p = ParamPoly::monomial(&vars, e.clone(), 1);
            p.to_string()
        })
        .collect();
    labels.push("1".to_string());
    let linearized = LinearizedSystem {
        monomials: labels,
        rows: rows.clone(),
    };

    let unknown: BTreeSet<usize> = (0..vars.len()).collect();
    let raw = solve_branch(&vars, polys.clone(), &unknown)?;
    let mut solutions: Vec<Assignment> = Vec::new();
    for sol in raw {
        let values: Assignment = sol
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                (
                    vars.name(i).to_string(),
                    v.expect("every variable assigned"),
                )
            })
            .collect();
        let holds = polys.iter().all(|p| p.evaluate(&values).is_zero());
        if holds && !solutions.contains(&values) {
            solutions.push(values);
        }
    }
    solutions.sort();

    let mut accepted = Vec::new();
    let mut rejected = Vec::new();
    for s in &solutions {
        let bad: Vec<String> = enumerative
            .iter()
            .filter_map(|name| {
                let v = s.get(name)?;
                let ok = v.is_integer() && !v.is_negative();
                (!ok).then(|| format!("{} = {} is not a non-negative integer", name, v))
            })
            .collect();
        if bad.is_empty() {
            accepted.push(s.clone());
        } else {
            rejected.push(Rejection {
                values: s.clone(),
                reason: bad.join("; "),
            });
        }
    }
    Ok(SolveReport {
        equations: equations.to_vec(),
        linearized,
        solutions,
        accepted,
        rejected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq(p: ParamPoly) -> MatchedEquation {
        MatchedEquation {
            q_order: 0,
            poly: p,
        }
    }

    #[test]
    fn empty_system_is_underdetermined() {
        assert_eq!(solve_parameters(&[], &[]), Err(SolveError::Underdetermined));
    }

    #[test]
    fn sign_branch() {
        // x + 2y = 10, (x - y)^2 = 16
        let r = Vars::new(&["x", "y"]);
        let x = ParamPoly::var(&r, "x").unwrap();
        let y = ParamPoly::var(&r, "y").unwrap();
        let e1 = &(&x + &y.scale(&Rat::from(2))) - &ParamPoly::constant(&r, 10);
        let d = &x - &y;
        let e2 = &(&d * &d) - &ParamPoly::constant(&r, 16);
        let rep = solve_parameters(&[eq(e1), eq(e2)], &["x".into()]).unwrap();
        assert_eq!(rep.solutions.len(), 2);
        assert_eq!(rep.accepted.len(), 1);
        assert_eq!(rep.accepted[0]["x"], Rat::from(6));
        assert_eq!(rep.rejected[0].values["x"], Rat::new(2, 3));
    }

    #[test]
    fn inconsistent_linear_system() {
        let r = Vars::new(&["x"]);
        let x = ParamPoly::var(&r, "x").unwrap();
        let e1 = &x - &ParamPoly::one(&r);
        let e2 = x.clone();
        assert_eq!(
            solve_parameters(&[eq(e1), eq(e2)], &[]),
            Err(SolveError::Inconsistent)
        );
    }

    #[test]
    fn irrational_roots_are_not_guessed() {
        let r = Vars::new(&["x"]);
        let x = ParamPoly::var(&r, "x").unwrap();
        let e = &(&x * &x) - &ParamPoly::constant(&r, 2);
        assert!(matches!(
            solve_parameters(&[eq(e)], &[]),
            Err(SolveError::Unsolved(_))
        ));
    }

    #[test]
    fn free_variable_is_underdetermined() {
        let r = Vars::new(&["x", "y"]);
        let x = ParamPoly::var(&r, "x").unwrap();
        let e = &x - &ParamPoly::one(&r);
        assert_eq!(
            solve_parameters(&[eq(e)], &[]),
            Err(SolveError::Underdetermined)
        );
    }
}
