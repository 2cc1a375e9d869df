//! Polynomials in an outer variable whose coefficients are [`ParamPoly`]s.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::poly::{ParamPoly, Vars};
use super::rat::Rat;

#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    outer: String,
    vars: Arc<Vars>,
    /// `coeffs[k]` multiplies `outer^k`; the last entry is nonzero.
    coeffs: Vec<ParamPoly>,
}

impl BiPoly {
    pub fn new(outer: &str, vars: &Arc<Vars>, coeffs: Vec<ParamPoly>) -> BiPoly {
        let mut p = BiPoly {
            outer: outer.to_string(),
            vars: vars.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn zero(outer: &str, vars: &Arc<Vars>) -> BiPoly {
        BiPoly::new(outer, vars, Vec::new())
    }

    pub fn constant(outer: &str, c: ParamPoly) -> BiPoly {
        let vars = c.vars().clone();
        BiPoly::new(outer, &vars, vec![c])
    }

    /// `outer^k`.
    pub fn outer_power(outer: &str, vars: &Arc<Vars>, k: usize) -> BiPoly {
        let mut coeffs = vec![ParamPoly::zero(vars); k + 1];
        coeffs[k] = ParamPoly::one(vars);
        BiPoly::new(outer, vars, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(ParamPoly::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn outer_name(&self) -> &str {
        &self.outer
    }

    pub fn vars(&self) -> &Arc<Vars> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[ParamPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ParamPoly {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| ParamPoly::zero(&self.vars))
    }

    pub fn leading_coefficient(&self) -> Option<&ParamPoly> {
        self.coeffs.last()
    }

    /// Largest `a` such that `outer^a` divides the polynomial.
    pub fn lowest_power(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Divides by `outer^k`, which must divide exactly.
    pub fn unshift(&self, k: usize) -> BiPoly {
        assert!(self.coeffs.iter().take(k).all(ParamPoly::is_zero));
        BiPoly::new(
            &self.outer,
            &self.vars,
            self.coeffs.iter().skip(k).cloned().collect(),
        )
    }

    /// Evaluates every coefficient's inner variable at `idx` to `value`.
    pub fn eval_inner(&self, idx: usize, value: &Rat) -> BiPoly {
        BiPoly::new(
            &self.outer,
            &self.vars,
            self.coeffs.iter().map(|c| c.eval_var(idx, value)).collect(),
        )
    }

    fn zip_with(&self, other: &BiPoly, f: impl Fn(&ParamPoly, &ParamPoly) -> ParamPoly) -> BiPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| f(&self.coeff(k), &other.coeff(k))).collect();
        BiPoly::new(&self.outer, &self.vars, coeffs)
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero(&self.outer, &self.vars);
        }
        let mut coeffs =
            vec![ParamPoly::zero(&self.vars); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        BiPoly::new(&self.outer, &self.vars, coeffs)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::new(
            &self.outer,
            &self.vars,
            self.coeffs.iter().map(|c| -c).collect(),
        )
    }
}

impl fmt::Display for BiPoly {
    /// Descending powers of the outer variable, e.g. `λ^3 + (-4*q)*λ`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => self.outer.clone(),
                _ => format!("{}^{}", self.outer, k),
            };
            match (c.as_constant(), mono.is_empty()) {
                (Some(x), false) if x.is_one() => write!(f, "{}", mono)?,
                (_, true) => write!(f, "({})", c)?,
                _ => write!(f, "({})*{}", c, mono)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
