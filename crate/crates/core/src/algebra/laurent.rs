//! Integer Laurent polynomials, used for Hodge polynomials in `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn constant(c: i64) -> LaurentPoly {
        LaurentPoly::from_terms([(0, c)])
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, k: i32, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(k).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&k);
        }
    }

    pub fn coeff(&self, k: i32) -> i64 {
        self.terms.get(&k).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: i64) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(k, x)| (k, x * c)))
    }

    /// Invariant under `t ↔ t⁻¹`.
    pub fn is_symmetric(&self) -> bool {
        self.terms().all(|(k, c)| self.coeff(-k) == c)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }

    /// Sum of coefficients (the total dimension).
    pub fn eval_one(&self) -> i64 {
        self.terms.values().sum()
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().chain(rhs.terms()))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms().rev().enumerate() {
            if i > 0 {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            let a = c.abs();
            match (k, a) {
                (0, _) => write!(f, "{}", a)?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{}*t", a)?,
                (_, 1) => write!(f, "t^{}", k)?,
                _ => write!(f, "{}*t^{}", a, k)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_symmetry() {
        let p = LaurentPoly::from_terms([(2, 1), (0, 19), (-2, 1)]);
        assert_eq!(p.to_string(), "t^2 + 19 + t^-2");
        assert!(p.is_symmetric());
        assert!(!LaurentPoly::from_terms([(2, 1)]).is_symmetric());
        assert_eq!(p.eval_one(), 21);
    }

    #[test]
    fn addition_drops_zeros() {
        let a = LaurentPoly::from_terms([(1, 2), (0, 1)]);
        let b = LaurentPoly::from_terms([(1, -2)]);
        assert_eq!(&a + &b, LaurentPoly::constant(1));
    }
}
