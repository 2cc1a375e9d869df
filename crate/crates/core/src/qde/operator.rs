//! Linear differential operators `Σ c_k D^k` with `D = x d/dx`.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{normalize_vector, ParamPoly, PowerSeries, Rat, Vars};

use super::QdeError;

#[derive(Clone, PartialEq, Eq)]
pub struct DiffOperator {
    /// Variable of the Euler derivation (`q` or `t`).
    var: String,
    /// `coeffs[k]` multiplies `D^k`; the last entry is nonzero.
    coeffs: Vec<ParamPoly>,
}

/// One coefficient of `L f` as a polynomial in the operator's parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedEquation {
    pub q_order: usize,
    pub poly: ParamPoly,
}

impl DiffOperator {
    pub fn new(var: &str, coeffs: Vec<ParamPoly>) -> Result<DiffOperator, QdeError> {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(ParamPoly::is_zero) {
            coeffs.pop();
        }
        let Some(first) = coeffs.first() else {
            return Err(QdeError::ZeroOperator);
        };
        if first.vars().index_of(var).is_none() {
            return Err(QdeError::Algebra(
                crate::algebra::AlgebraError::UnknownVariable(var.to_string()),
            ));
        }
        Ok(DiffOperator {
            var: var.to_string(),
            coeffs,
        })
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn vars(&self) -> &Arc<Vars> {
        self.coeffs[0].vars()
    }

    fn var_index(&self) -> usize {
        self.vars()
            .index_of(&self.var)
            .expect("checked at construction")
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ParamPoly] {
        &self.coeffs
    }

    pub fn leading_coefficient(&self) -> &ParamPoly {
        self.coeffs.last().expect("nonzero operator")
    }

    /// Highest power of the derivation variable among the coefficients.
    pub fn q_degree(&self) -> u32 {
        let x = self.var_index();
        self.coeffs
            .iter()
            .filter_map(|c| c.degree_in(x))
            .max()
            .unwrap_or(0)
    }

    /// True when some coefficient involves a variable other than the
    /// derivation variable.
    pub fn has_parameters(&self) -> bool {
        let x = self.var_index();
        self.coeffs
            .iter()
            .any(|c| c.support_vars().iter().any(|&i| i != x))
    }

    /// Primitive form: divide by the gcd of the coefficients, then make the
    /// operator monic when its top coefficient is a rational constant, and
    /// otherwise give the first nonzero coefficient a positive leading term.
    pub fn normalized(&self) -> DiffOperator {
        let mut coeffs = normalize_vector(self.coeffs.clone());
        if let Some(top) = coeffs.last().and_then(ParamPoly::as_constant) {
            let inv = top.recip();
            coeffs = coeffs.iter().map(|c| c.scale(&inv)).collect();
        }
        DiffOperator {
            var: self.var.clone(),
            coeffs,
        }
    }

    /// Substitutes named parameter values into every coefficient.
    pub fn evaluate(&self, values: &std::collections::BTreeMap<String, Rat>) -> DiffOperator {
        DiffOperator {
            var: self.var.clone(),
            coeffs: self.coeffs.iter().map(|c| c.evaluate(values)).collect(),
        }
    }

    /// Re-expresses the coefficients in the ring of `target`.
    pub fn embed(&self, target: &Arc<Vars>) -> Result<DiffOperator, QdeError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.embed(target))
            .collect::<Result<Vec<_>, _>>()?;
        DiffOperator::new(&self.var, coeffs)
    }

    /// `L f` with coefficients left as polynomials in the parameters. The
    /// result is kept through `q^(order(f) − q_degree)`.
    pub fn apply_symbolic(&self, f: &PowerSeries) -> Vec<ParamPoly> {
        let x = self.var_index();
        let keep = f.order().saturating_sub(self.q_degree() as usize);
        let zero = ParamPoly::zero(self.vars());
        let mut out = vec![zero; keep + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            let parts = c.as_univariate(x);
            for (j, part) in parts.iter().enumerate() {
                if part.is_zero() {
                    continue;
                }
                for (n, slot) in out.iter_mut().enumerate().skip(j) {
                    let m = n - j;
                    let weight = Rat::from(m as u64).pow(k as u32) * f.coeff(m);
                    if !weight.is_zero() {
                        *slot = &*slot + &part.scale(&weight);
                    }
                }
            }
        }
        out
    }

    /// `L f` for a parameter-free operator.
    pub fn apply(&self, f: &PowerSeries) -> Result<PowerSeries, QdeError> {
        if self.has_parameters() {
            return Err(QdeError::ParametersPresent);
        }
        let coeffs = self
            .apply_symbolic(f)
            .into_iter()
            .map(|p| p.constant_term())
            .collect();
        Ok(PowerSeries::new(coeffs))
    }

    /// Rewrites an operator in `t` whose coefficients are even in `t` as an
    /// operator in `q = t^2`, using `t d/dt = 2 q d/dq`.
    pub fn even_to_square(&self, new_var: &str) -> Result<DiffOperator, QdeError> {
        let t = self.var_index();
        let mut names: Vec<String> = self.vars().names().to_vec();
        names[t] = new_var.to_string();
        let vars = Vars::new(&names);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (k, c) in self.coeffs.iter().enumerate() {
            let mut terms = Vec::new();
            for (e, x) in c.terms() {
                if e[t] % 2 != 0 {
                    return Err(QdeError::NotEven);
                }
                let mut e = e.clone();
                e[t] /= 2;
                terms.push((e, x * Rat::from(2).pow(k as u32)));
            }
            coeffs.push(ParamPoly::from_terms(&vars, terms));
        }
        DiffOperator::new(new_var, coeffs)
    }
}

/// Matches `L f = 0` coefficient by coefficient through `q^order`, returning
/// the nonzero equations as polynomials in the parameters alone.
pub fn match_equations(
    op: &DiffOperator,
    f: &PowerSeries,
    order: usize,
) -> Result<Vec<MatchedEquation>, QdeError> {
    let params: Vec<String> = op
        .vars()
        .names()
        .iter()
        .filter(|n| *n != op.var())
        .cloned()
        .collect();
    let ring = Vars::new(&params);
    let mut out = Vec::new();
    for (k, p) in op.apply_symbolic(f).into_iter().enumerate().take(order + 1) {
        if !p.is_zero() {
            out.push(MatchedEquation {
                q_order: k,
                poly: p.embed(&ring)?,
            });
        }
    }
    Ok(out)
}

impl fmt::Display for DiffOperator {
    /// E.g. `D^2 + (-q)*D + (2*q^2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let d = match k {
                0 => String::new(),
                1 => "D".to_string(),
                _ => format!("D^{}", k),
            };
            match (c.as_constant(), d.is_empty()) {
                (Some(x), false) if x.is_one() => write!(f, "{}", d)?,
                (_, true) => write!(f, "({})", c)?,
                _ => write!(f, "({})*{}", c, d)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOperator[{}]({})", self.var, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qring() -> Arc<Vars> {
        Vars::new(&["q"])
    }

    #[test]
    fn derivative_kills_constants() {
        let r = qring();
        let d = DiffOperator::new("q", vec![ParamPoly::zero(&r), ParamPoly::one(&r)]).unwrap();
        assert!(d.apply(&PowerSeries::one(8)).unwrap().is_zero());
    }

    #[test]
    fn result_order_shrinks_by_q_degree() {
        let r = qring();
        let q = ParamPoly::var(&r, "q").unwrap();
        let op = DiffOperator::new("q", vec![&q * &q]).unwrap();
        assert_eq!(op.apply(&PowerSeries::one(10)).unwrap().order(), 8);
    }

    #[test]
    fn parameters_rejected_by_numeric_apply() {
        let r = Vars::new(&["s", "q"]);
        let op = DiffOperator::new("q", vec![ParamPoly::var(&r, "s").unwrap()]).unwrap();
        assert_eq!(
            op.apply(&PowerSeries::one(3)),
            Err(QdeError::ParametersPresent)
        );
    }

    #[test]
    fn zero_operator_rejected() {
        let r = qring();
        assert_eq!(
            DiffOperator::new("q", vec![ParamPoly::zero(&r)]),
            Err(QdeError::ZeroOperator)
        );
    }

    #[test]
    fn monic_normalization() {
        let r = qring();
        let q = ParamPoly::var(&r, "q").unwrap();
        let op = DiffOperator::new(
            "q",
            vec![q.scale(&Rat::from(-6)), ParamPoly::constant(&r, 3)],
        )
        .unwrap();
        let n = op.normalized();
        assert_eq!(n.coeffs()[1], ParamPoly::one(&r));
        assert_eq!(n.coeffs()[0], q.scale(&Rat::from(-2)));
        assert_eq!(n.to_string(), "D + (-2*q)");
    }

    #[test]
    fn odd_coefficients_cannot_be_squared() {
        let r = Vars::new(&["t"]);
        let t = ParamPoly::var(&r, "t").unwrap();
        let op = DiffOperator::new("t", vec![t]).unwrap();
        assert_eq!(op.even_to_square("q"), Err(QdeError::NotEven));
    }
}
