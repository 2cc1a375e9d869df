//! The ambient cohomology ring `Q[H1, H2]/(H1^n, H2^n)` with its cup product,
//! Poincaré pairing and the factor-swap involution.

use std::fmt;
use std::ops::{Add, Sub};
use std::sync::Arc;

use crate::algebra::{linalg, PolyMatrix, Rat, Vars};

/// Two generators of degree 2, each nilpotent of order `nilpotency`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientRing {
    nilpotency: u32,
    /// Top intersection number `∫ H1^{n-1} H2^{n-1}`.
    pairing: Rat,
}

/// A class in the monomial basis `H1^a H2^b`, `0 ≤ a, b < n`.
#[derive(Clone, PartialEq, Eq)]
pub struct AmbientClass {
    n: u32,
    coeffs: Vec<Rat>,
}

/// A named basis element with its topological degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub label: String,
    pub class: AmbientClass,
    pub degree: u32,
}

/// Bases of the ±1 eigenspaces of the involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenBasis {
    pub symmetric: Vec<BasisElement>,
    pub antisymmetric: Vec<BasisElement>,
}

impl EigenBasis {
    pub fn symmetric_classes(&self) -> Vec<AmbientClass> {
        self.symmetric.iter().map(|b| b.class.clone()).collect()
    }

    pub fn antisymmetric_classes(&self) -> Vec<AmbientClass> {
        self.antisymmetric.iter().map(|b| b.class.clone()).collect()
    }
}

impl AmbientRing {
    /// Panics if `nilpotency < 1`; instance validation rejects that earlier.
    pub fn new(nilpotency: u32, pairing: Rat) -> AmbientRing {
        assert!(nilpotency >= 1);
        AmbientRing {
            nilpotency,
            pairing,
        }
    }

    pub fn nilpotency(&self) -> u32 {
        self.nilpotency
    }

    pub fn pairing_normalization(&self) -> &Rat {
        &self.pairing
    }

    pub fn dimension(&self) -> usize {
        (self.nilpotency * self.nilpotency) as usize
    }

    pub fn top_degree(&self) -> u32 {
        4 * (self.nilpotency - 1)
    }

    pub fn zero(&self) -> AmbientClass {
        AmbientClass {
            n: self.nilpotency,
            coeffs: vec![Rat::zero(); self.dimension()],
        }
    }

    /// `c · H1^a H2^b`, or zero when a relation kills it.
    pub fn monomial(&self, a: u32, b: u32, c: impl Into<Rat>) -> AmbientClass {
        let mut x = self.zero();
        if a < self.nilpotency && b < self.nilpotency {
            x.coeffs[(a * self.nilpotency + b) as usize] = c.into();
        }
        x
    }

    pub fn one(&self) -> AmbientClass {
        self.monomial(0, 0, 1)
    }

    pub fn h1(&self) -> AmbientClass {
        self.monomial(1, 0, 1)
    }

    pub fn h2(&self) -> AmbientClass {
        self.monomial(0, 1, 1)
    }

    /// `H = H1 + H2`.
    pub fn hyperplane(&self) -> AmbientClass {
        &self.h1() + &self.h2()
    }

    /// All monomials `H1^a H2^b` in index order.
    pub fn monomial_basis(&self) -> Vec<AmbientClass> {
        let n = self.nilpotency;
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| self.monomial(a, b, 1))
            .collect()
    }

    /// Number of monomials in the middle degree.
    pub fn middle_rank(&self) -> usize {
        let n = self.nilpotency;
        let mid = n - 1;
        (0..n).filter(|&a| a <= mid && mid - a < n).count()
    }

    pub fn cup(&self, x: &AmbientClass, y: &AmbientClass) -> AmbientClass {
        let mut out = self.zero();
        for ((a1, b1), c1) in x.support() {
            for ((a2, b2), c2) in y.support() {
                let (a, b) = (a1 + a2, b1 + b2);
                if a < self.nilpotency && b < self.nilpotency {
                    let idx = (a * self.nilpotency + b) as usize;
                    out.coeffs[idx] += &(c1 * c2);
                }
            }
        }
        out
    }

    /// `∫ x ⌣ y`: the top-monomial coefficient times the normalization.
    pub fn pair(&self, x: &AmbientClass, y: &AmbientClass) -> Rat {
        let top = self.nilpotency - 1;
        self.cup(x, y).coeff(top, top) * &self.pairing
    }

    /// Exchanges `H1` and `H2`.
    pub fn involution(&self, x: &AmbientClass) -> AmbientClass {
        let mut out = self.zero();
        for ((a, b), c) in x.support() {
            out.coeffs[(b * self.nilpotency + a) as usize] = c.clone();
        }
        out
    }

    /// Symmetric orbit sums and antisymmetric differences, ordered by degree
    /// and then by decreasing power of `H1`.
    pub fn build_eigenbasis(&self) -> EigenBasis {
        let n = self.nilpotency;
        let mut pairs: Vec<(u32, u32)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| a >= b)
            .collect();
        pairs.sort_by(|x, y| (x.0 + x.1).cmp(&(y.0 + y.1)).then(y.0.cmp(&x.0)));
        let mut symmetric = Vec::new();
        let mut antisymmetric = Vec::new();
        for (a, b) in pairs {
            let m = self.monomial(a, b, 1);
            let degree = 2 * (a + b);
            if a == b {
                symmetric.push(BasisElement {
                    label: format!("s{}", symmetric.len()),
                    class: m,
                    degree,
                });
            } else {
                let swapped = self.monomial(b, a, 1);
                symmetric.push(BasisElement {
                    label: format!("s{}", symmetric.len()),
                    class: &m + &swapped,
                    degree,
                });
                antisymmetric.push(BasisElement {
                    label: format!("a{}", antisymmetric.len() + 1),
                    class: &m - &swapped,
                    degree,
                });
            }
        }
        EigenBasis {
            symmetric,
            antisymmetric,
        }
    }

    /// Pairing matrix `(pair(b_i, b_j))` as a constant matrix in `vars`.
    pub fn gram_matrix(&self, basis: &[AmbientClass], vars: &Arc<Vars>) -> PolyMatrix {
        let rows: Vec<Vec<Rat>> = basis
            .iter()
            .map(|x| basis.iter().map(|y| self.pair(x, y)).collect())
            .collect();
        PolyMatrix::from_rat_rows(vars, &rows)
    }

    /// Pairing between two different bases.
    pub fn mixed_gram(&self, left: &[AmbientClass], right: &[AmbientClass]) -> Vec<Vec<Rat>> {
        left.iter()
            .map(|x| right.iter().map(|y| self.pair(x, y)).collect())
            .collect()
    }

    /// Coordinates of `x` in `basis`, if `x` lies in its span.
    pub fn coordinates(&self, basis: &[AmbientClass], x: &AmbientClass) -> Option<Vec<Rat>> {
        let cols: Vec<Vec<Rat>> = basis.iter().map(|b| b.coeffs.clone()).collect();
        linalg::solve_in_span(&cols, &x.coeffs)
    }
}

impl AmbientClass {
    pub fn coeff(&self, a: u32, b: u32) -> Rat {
        self.coeffs[(a * self.n + b) as usize].clone()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    pub fn scale(&self, c: &Rat) -> AmbientClass {
        AmbientClass {
            n: self.n,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Nonzero terms as `((a, b), coefficient)`.
    pub fn support(&self) -> impl Iterator<Item = ((u32, u32), &Rat)> + '_ {
        let n = self.n;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| ((i as u32 / n, i as u32 % n), c))
    }

    /// Topological degree when the support is homogeneous; `None` for zero
    /// or mixed-degree classes.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.support().map(|((a, b), _)| 2 * (a + b));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }
}

impl Add for &AmbientClass {
    type Output = AmbientClass;
    fn add(self, rhs: &AmbientClass) -> AmbientClass {
        assert_eq!(self.n, rhs.n, "classes from different rings");
        AmbientClass {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &AmbientClass {
    type Output = AmbientClass;
    fn sub(self, rhs: &AmbientClass) -> AmbientClass {
        assert_eq!(self.n, rhs.n, "classes from different rings");
        AmbientClass {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Display for AmbientClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<((u32, u32), &Rat)> = self.support().collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        terms.sort_by(|x, y| {
            let (dx, dy) = (x.0 .0 + x.0 .1, y.0 .0 + y.0 .1);
            dx.cmp(&dy).then(y.0 .0.cmp(&x.0 .0))
        });
        for (i, ((a, b), c)) in terms.into_iter().enumerate() {
            let mut mono = Vec::new();
            for (g, e) in [("H1", a), ("H2", b)] {
                match e {
                    0 => {}
                    1 => mono.push(g.to_string()),
                    _ => mono.push(format!("{}^{}", g, e)),
                }
            }
            let mono = mono.join("*");
            let neg = c.is_negative();
            if i > 0 {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            } else if neg {
                write!(f, "-")?;
            }
            let abs = c.abs();
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{}", abs)?,
                (false, true) => write!(f, "{}", mono)?,
                (false, false) => write!(f, "{}*{}", abs, mono)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AmbientClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
