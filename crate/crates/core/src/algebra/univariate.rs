//! Rational root finding for univariate polynomials over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rat::Rat;

/// Largest absolute value whose divisors are enumerated by trial division.
const DIVISOR_LIMIT: u64 = 1 << 40;

/// Removes trailing zeros so the last entry is the leading coefficient.
pub fn trim(coeffs: &[Rat]) -> Vec<Rat> {
    let mut v = coeffs.to_vec();
    while v.last().is_some_and(Rat::is_zero) {
        v.pop();
    }
    v
}

pub fn eval(coeffs: &[Rat], x: &Rat) -> Rat {
    coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
}

/// Synthetic division by `(x - root)`; exact when `root` is a root.
pub fn deflate(coeffs: &[Rat], root: &Rat) -> (Vec<Rat>, Rat) {
    let n = coeffs.len();
    let mut out = vec![Rat::zero(); n - 1];
    let mut carry = Rat::zero();
    for k in (0..n).rev() {
        let v = &coeffs[k] + &(&carry * root);
        if k == 0 {
            return (out, v);
        }
        out[k - 1] = v.clone();
        carry = v;
    }
    unreachable!()
}

/// All rational roots with multiplicity, sorted ascending, when the
/// polynomial splits into linear factors over Q. `None` otherwise, or when
/// the coefficients are too large for the divisor search.
pub fn rational_roots(coeffs: &[Rat]) -> Option<Vec<Rat>> {
    let mut p = trim(coeffs);
    if p.is_empty() {
        return None;
    }
    let mut roots = Vec::new();
    while p.len() > 1 && p[0].is_zero() {
        roots.push(Rat::zero());
        p.remove(0);
    }
    while p.len() > 1 {
        if p.len() == 2 {
            roots.push(-&p[0] / &p[1]);
            break;
        }
        if p.len() == 3 {
            let (c, b, a) = (&p[0], &p[1], &p[2]);
            let disc = b * b - Rat::from(4) * a * c;
            let s = disc.sqrt_exact()?;
            let two_a = Rat::from(2) * a;
            roots.push((-b - &s) / &two_a);
            roots.push((-b + &s) / &two_a);
            break;
        }
        let r = find_root(&p)?;
        p = deflate(&p, &r).0;
        roots.push(r);
    }
    roots.sort();
    Some(roots)
}

fn find_root(p: &[Rat]) -> Option<Rat> {
    // Clear denominators to an integer polynomial.
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let lead = ints.last()?.abs();
    let tail = ints[0].abs();
    let dl = divisors(&lead)?;
    let dt = divisors(&tail)?;
    for a in &dt {
        for b in &dl {
            for sign in [1i64, -1] {
                let cand = Rat::new(a * sign, b.clone());
                if eval(p, &cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    if n.is_zero() {
        return None;
    }
    let n = n.to_u64().filter(|&x| x <= DIVISOR_LIMIT)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| Rat::from(x)).collect()
    }

    #[test]
    fn quadratic_roots() {
        // (16x + 1)(128x - 1) = 2048x^2 + 112x - 1
        let roots = rational_roots(&r(&[-1, 112, 2048])).unwrap();
        assert_eq!(roots, vec![Rat::new(-1, 16), Rat::new(1, 128)]);
    }

    #[test]
    fn irrational_rejected() {
        assert_eq!(rational_roots(&r(&[-2, 0, 1])), None);
    }

    #[test]
    fn cubic_with_multiplicity() {
        // x (x - 2)^2 (x + 3) = x^4 - x^3 - 8x^2 + 12x
        let roots = rational_roots(&r(&[0, 12, -8, -1, 1])).unwrap();
        assert_eq!(roots, r(&[-3, 0, 2, 2]));
    }

    #[test]
    fn synthetic_division() {
        let (q, rem) = deflate(&r(&[-1, 0, 1]), &Rat::from(1));
        assert_eq!(q, r(&[1, 1]));
        assert!(rem.is_zero());
    }
}
