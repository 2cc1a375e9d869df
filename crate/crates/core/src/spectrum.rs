//! Spectrum of Euler multiplication `κ = 2·M` on each eigenblock.
//!
//! Eigenvalues are tracked through their squares: a block's characteristic
//! polynomial is matched against `λ^a · Π (λ² − c_i q)` with rational `c_i`,
//! so radicals never appear.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::algebra::univariate::rational_roots;
use crate::algebra::{AlgebraError, BiPoly, ParamPoly, PolyMatrix, Rat, Vars};
use crate::ansatz::NOVIKOV;
use crate::qde::DiffOperator;

pub const LAMBDA: &str = "λ";

/// First Chern class in units of the hyperplane class.
pub const KAPPA_SCALE: i64 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error(
        "characteristic polynomial of the {block} block does not factor as λ^a·Π(λ² − c·q): {chi}"
    )]
    TemplateMismatch { block: String, chi: String },
    #[error("matrix involves variables other than q")]
    NotParameterFree,
    #[error("leading coefficient does not split over Q in t²: {0}")]
    LeadingCoefficient(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSpectrum {
    pub label: String,
    pub dimension: usize,
    pub chi: BiPoly,
    pub zero_multiplicity: usize,
    /// Sorted multiset of `c` with `(λ² − c·q) | χ`.
    pub eigen_squares: Vec<Rat>,
}

impl BlockSpectrum {
    /// `λ^a · Π (λ² − c q)` rebuilt from the recovered data.
    pub fn template(&self) -> BiPoly {
        template(self.chi.vars(), self.zero_multiplicity, &self.eigen_squares)
    }

    /// Factored form such as `λ^2 (λ^2 - 128q) (λ^2 + 16q)`.
    pub fn factored(&self) -> String {
        let mut parts = Vec::new();
        match self.zero_multiplicity {
            0 => {}
            1 => parts.push(LAMBDA.to_string()),
            a => parts.push(format!("{}^{}", LAMBDA, a)),
        }
        for c in self.eigen_squares.iter().rev() {
            let sign = if c.is_negative() { "+" } else { "-" };
            let a = c.abs();
            let coef = if a.is_one() {
                String::new()
            } else {
                a.to_string()
            };
            parts.push(format!("({}^2 {} {}q)", LAMBDA, sign, coef));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reciprocity {
    /// Values of `t²` where the leading coefficient vanishes.
    pub singular: Vec<Rat>,
    /// `1/c` over the nonzero symmetric eigenvalue squares.
    pub reciprocals: Vec<Rat>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    pub symmetric: BlockSpectrum,
    pub antisymmetric: BlockSpectrum,
    pub reciprocity: Option<Reciprocity>,
}

impl SpectrumReport {
    pub fn blocks(&self) -> [&BlockSpectrum; 2] {
        [&self.symmetric, &self.antisymmetric]
    }

    /// χ of κ on the whole ring, as the product of the block polynomials.
    pub fn total_chi(&self) -> BiPoly {
        &self.symmetric.chi * &self.antisymmetric.chi
    }
}

fn template(vars: &std::sync::Arc<Vars>, zeros: usize, squares: &[Rat]) -> BiPoly {
    let qi = vars.index_of(NOVIKOV).expect("q in ring");
    let mut out = BiPoly::outer_power(LAMBDA, vars, zeros);
    for c in squares {
        let cq = ParamPoly::var_at(vars, qi).scale(&-c);
        let factor = BiPoly::new(
            LAMBDA,
            vars,
            vec![cq, ParamPoly::zero(vars), ParamPoly::one(vars)],
        );
        out = &out * &factor;
    }
    out
}

/// Largest `a` with `λ^a | χ`; the degree for the zero polynomial.
pub fn zero_multiplicity(chi: &BiPoly) -> usize {
    chi.lowest_power().unwrap_or(0)
}

/// Matches χ against the square template and verifies by multiplying back.
pub fn block_spectrum(label: &str, m: &PolyMatrix) -> Result<BlockSpectrum, SpectrumError> {
    let vars = m.vars().clone();
    if vars.names() != [NOVIKOV] {
        return Err(SpectrumError::NotParameterFree);
    }
    let kappa = m.scale(&Rat::from(KAPPA_SCALE));
    let chi = kappa.char_poly(LAMBDA)?;
    let shown = chi.to_string();
    let mismatch = || SpectrumError::TemplateMismatch {
        block: label.to_string(),
        chi: shown.clone(),
    };
    let a = zero_multiplicity(&chi);
    let rest = chi.unshift(a);
    let deg = rest.degree().unwrap_or(0);
    if deg % 2 != 0 {
        return Err(mismatch());
    }
    let k = deg / 2;
    // rest(λ) = q^k · p(λ²/q); collect p's coefficients in ascending order.
    let mut p = vec![Rat::zero(); k + 1];
    for (i, c) in rest.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if i % 2 != 0 {
            return Err(mismatch());
        }
        let j = k - i / 2;
        let mono = vec![j as u32];
        if c.num_terms() != 1 || c.coefficient(&mono).is_zero() {
            return Err(mismatch());
        }
        p[i / 2] = c.coefficient(&mono);
    }
    let squares = rational_roots(&p).ok_or_else(mismatch)?;
    let spec = BlockSpectrum {
        label: label.to_string(),
        dimension: m.rows(),
        chi,
        zero_multiplicity: a,
        eigen_squares: squares,
    };
    if spec.template() != spec.chi || a + 2 * spec.eigen_squares.len() != spec.dimension {
        return Err(mismatch());
    }
    Ok(spec)
}

/// Spectra of `κ` on the symmetric and antisymmetric blocks.
pub fn kappa_char(
    mplus: &PolyMatrix,
    mminus: &PolyMatrix,
) -> Result<SpectrumReport, SpectrumError> {
    Ok(SpectrumReport {
        symmetric: block_spectrum("symmetric", mplus)?,
        antisymmetric: block_spectrum("antisymmetric", mminus)?,
        reciprocity: None,
    })
}

/// Roots in `x = t²` of an operator's leading coefficient.
pub fn singular_squares(op: &DiffOperator) -> Result<Vec<Rat>, SpectrumError> {
    let lead = op.leading_coefficient();
    let err = || SpectrumError::LeadingCoefficient(lead.to_string());
    let ti = op.vars().index_of(op.var()).ok_or_else(err)?;
    let coeffs = lead.univariate_coeffs(ti).ok_or_else(err)?;
    if coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
        return Err(err());
    }
    let even: Vec<Rat> = coeffs.iter().step_by(2).cloned().collect();
    rational_roots(&even).ok_or_else(err)
}

/// Compares the singular `t²` values of `regularized` with the reciprocals
/// of the nonzero symmetric eigenvalue squares, as sets.
pub fn reciprocity_check(
    regularized: &DiffOperator,
    report: &SpectrumReport,
) -> Result<Reciprocity, SpectrumError> {
    let singular: BTreeSet<Rat> = singular_squares(regularized)?.into_iter().collect();
    let reciprocals: BTreeSet<Rat> = report
        .symmetric
        .eigen_squares
        .iter()
        .filter(|c| !c.is_zero())
        .map(Rat::recip)
        .collect();
    Ok(Reciprocity {
        passed: singular == reciprocals,
        singular: singular.into_iter().collect(),
        reciprocals: reciprocals.into_iter().collect(),
    })
}
