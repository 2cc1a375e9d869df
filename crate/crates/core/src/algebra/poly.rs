//! Sparse multivariate polynomials over the rationals.
//!
//! A [`ParamPoly`] lives in a ring with a fixed, ordered variable set. Terms
//! are stored as exponent vectors in a `BTreeMap`, so iteration order is the
//! lexicographic monomial order with the first variable most significant.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::rat::Rat;
use super::AlgebraError;

/// An ordered set of variable names shared by all polynomials of one ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vars {
    names: Vec<String>,
}

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Arc<Vars> {
        Arc::new(Vars {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
        })
    }

    pub fn empty() -> Arc<Vars> {
        Arc::new(Vars { names: Vec::new() })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.names)
    }
}

pub type Exponents = Vec<u32>;

#[derive(Clone)]
pub struct ParamPoly {
    vars: Arc<Vars>,
    terms: BTreeMap<Exponents, Rat>,
}

impl PartialEq for ParamPoly {
    fn eq(&self, other: &Self) -> bool {
        same_vars(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl Eq for ParamPoly {}

pub(crate) fn same_vars(a: &Arc<Vars>, b: &Arc<Vars>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl ParamPoly {
    pub fn zero(vars: &Arc<Vars>) -> ParamPoly {
        ParamPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<Vars>, c: impl Into<Rat>) -> ParamPoly {
        let c = c.into();
        let mut p = ParamPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &Arc<Vars>) -> ParamPoly {
        ParamPoly::constant(vars, Rat::one())
    }

    pub fn var(vars: &Arc<Vars>, name: &str) -> Result<ParamPoly, AlgebraError> {
        let idx = vars
            .index_of(name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
        Ok(ParamPoly::var_at(vars, idx))
    }

    pub fn var_at(vars: &Arc<Vars>, idx: usize) -> ParamPoly {
        let mut exps = vec![0; vars.len()];
        exps[idx] = 1;
        ParamPoly::monomial(vars, exps, Rat::one())
    }

    pub fn monomial(vars: &Arc<Vars>, exps: Exponents, c: impl Into<Rat>) -> ParamPoly {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let c = c.into();
        let mut p = ParamPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, combining
    /// repeated monomials and dropping zeros.
    pub fn from_terms<I>(vars: &Arc<Vars>, terms: I) -> ParamPoly
    where
        I: IntoIterator<Item = (Exponents, Rat)>,
    {
        let mut p = ParamPoly::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(e, &c);
        }
        p
    }

    /// Univariate polynomial `Σ coeffs[k] x^k` in the variable at `idx`.
    pub fn from_univariate(vars: &Arc<Vars>, idx: usize, coeffs: &[Rat]) -> ParamPoly {
        let mut p = ParamPoly::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[idx] = k as u32;
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exps: Exponents, c: &Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &Arc<Vars> {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&vec![0; self.vars.len()])
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    /// Leading term under lexicographic order.
    pub fn leading_term(&self) -> Option<(&Exponents, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rat {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    pub fn degree_in(&self, idx: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[idx]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Indices of variables that occur with positive degree.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    fn check_vars(&self, other: &ParamPoly) -> Result<(), AlgebraError> {
        if same_vars(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(AlgebraError::VarMismatch {
                left: self.vars.names().to_vec(),
                right: other.vars.names().to_vec(),
            })
        }
    }

    pub fn checked_add(&self, other: &ParamPoly) -> Result<ParamPoly, AlgebraError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &ParamPoly) -> Result<ParamPoly, AlgebraError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &ParamPoly) -> Result<ParamPoly, AlgebraError> {
        self.check_vars(other)?;
        let mut out = ParamPoly::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero(&self.vars);
        }
        ParamPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> ParamPoly {
        let mut acc = ParamPoly::one(&self.vars);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies by the monomial with the given exponents.
    pub fn shift(&self, exps: &[u32]) -> ParamPoly {
        ParamPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// `x d/dx` in the variable at `idx`: each monomial is scaled by its
    /// exponent in that variable.
    pub fn euler_derivative(&self, idx: usize) -> ParamPoly {
        let mut out = ParamPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[idx] > 0 {
                out.terms.insert(e.clone(), c * Rat::from(e[idx]));
            }
        }
        out
    }

    pub fn euler_derivative_in(&self, name: &str) -> Result<ParamPoly, AlgebraError> {
        let idx = self
            .vars
            .index_of(name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
        Ok(self.euler_derivative(idx))
    }

    /// Coefficient of `x^k` for the variable `x` at `idx`, as a polynomial in
    /// the same ring that does not involve `x`.
    pub fn coeff_in(&self, idx: usize, k: u32) -> ParamPoly {
        let mut out = ParamPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[idx] == k {
                let mut e = e.clone();
                e[idx] = 0;
                out.terms.insert(e, c.clone());
            }
        }
        out
    }

    /// Splits into coefficients of successive powers of the variable at `idx`.
    pub fn as_univariate(&self, idx: usize) -> Vec<ParamPoly> {
        let deg = match self.degree_in(idx) {
            Some(d) => d,
            None => return Vec::new(),
        };
        let mut out = vec![ParamPoly::zero(&self.vars); deg as usize + 1];
        for (e, c) in &self.terms {
            let k = e[idx] as usize;
            let mut e = e.clone();
            e[idx] = 0;
            out[k].terms.insert(e, c.clone());
        }
        out
    }

    /// Univariate coefficient list, when this polynomial involves only the
    /// variable at `idx`.
    pub fn univariate_coeffs(&self, idx: usize) -> Option<Vec<Rat>> {
        self.as_univariate(idx)
            .into_iter()
            .map(|c| c.as_constant())
            .collect()
    }

    /// Replaces the variable at `idx` by `value`.
    pub fn substitute(&self, idx: usize, value: &ParamPoly) -> Result<ParamPoly, AlgebraError> {
        self.check_vars(value)?;
        let coeffs = self.as_univariate(idx);
        let mut acc = ParamPoly::zero(&self.vars);
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        Ok(acc)
    }

    pub fn eval_var(&self, idx: usize, value: &Rat) -> ParamPoly {
        let mut out = ParamPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            let k = e[idx];
            let mut e = e.clone();
            e[idx] = 0;
            out.add_term(e, &(c * value.pow(k)));
        }
        out
    }

    /// Substitutes every named variable that appears in `values`.
    pub fn evaluate(&self, values: &BTreeMap<String, Rat>) -> ParamPoly {
        let mut out = self.clone();
        for (name, v) in values {
            if let Some(idx) = self.vars.index_of(name) {
                out = out.eval_var(idx, v);
            }
        }
        out
    }

    /// Re-expresses the polynomial in another ring, matching variables by name.
    pub fn embed(&self, target: &Arc<Vars>) -> Result<ParamPoly, AlgebraError> {
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names().iter().enumerate() {
            let j = target.index_of(name);
            if j.is_none() && self.terms.keys().any(|e| e[i] > 0) {
                return Err(AlgebraError::UnknownVariable(name.clone()));
            }
            map.push(j);
        }
        let mut out = ParamPoly::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (i, &x) in e.iter().enumerate() {
                if let Some(j) = map[i] {
                    ne[j] += x;
                }
            }
            out.add_term(ne, c);
        }
        Ok(out)
    }

    /// gcd of all coefficients (positive), zero for the zero polynomial.
    pub fn content(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |acc, c| acc.gcd(c))
    }

    /// Scales to integer coefficients with gcd 1 and positive leading
    /// coefficient.
    pub fn primitive(&self) -> ParamPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading_coefficient().is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Exact division; fails when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &ParamPoly) -> Result<ParamPoly, AlgebraError> {
        self.check_vars(divisor)?;
        let (lt_e, lt_c) = divisor.leading_term().ok_or(AlgebraError::DivisionByZero)?;
        let (lt_e, lt_c) = (lt_e.clone(), lt_c.clone());
        let mut rem = self.clone();
        let mut quot = ParamPoly::zero(&self.vars);
        while let Some((re, rc)) = rem.leading_term() {
            if re.iter().zip(&lt_e).any(|(a, b)| a < b) {
                return Err(AlgebraError::NotExact);
            }
            let e: Exponents = re.iter().zip(&lt_e).map(|(a, b)| a - b).collect();
            let c = rc / &lt_c;
            let term = ParamPoly::monomial(&self.vars, e, c);
            rem = &rem - &(&term * divisor);
            quot = &quot + &term;
        }
        Ok(quot)
    }
}

macro_rules! poly_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&ParamPoly> for &ParamPoly {
            type Output = ParamPoly;
            /// Panics when the operands live in different rings; use the
            /// `checked_*` form to get an error instead.
            fn $m(self, rhs: &ParamPoly) -> ParamPoly {
                self.$checked(rhs).expect("polynomial ring mismatch")
            }
        }
        impl $tr<ParamPoly> for ParamPoly {
            type Output = ParamPoly;
            fn $m(self, rhs: ParamPoly) -> ParamPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
poly_op!(Add, add, checked_add);
poly_op!(Sub, sub, checked_sub);
poly_op!(Mul, mul, checked_mul);

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        self.scale(&Rat::from(-1))
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -&self
    }
}

pub(crate) fn fmt_monomial(vars: &Vars, e: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &x) in e.iter().enumerate() {
        match x {
            0 => {}
            1 => parts.push(vars.name(i).to_string()),
            _ => parts.push(format!("{}^{}", vars.name(i), x)),
        }
    }
    parts.join("*")
}

impl fmt::Display for ParamPoly {
    /// Terms in descending lexicographic order, e.g. `2*s*q^2 - q + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono = fmt_monomial(&self.vars, e);
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if mono.is_empty() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", abs, mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({})", self)
    }
}
