//! Quantum period series.

use crate::algebra::{PowerSeries, Rat};

use super::QdeError;

/// Identifier accepted in instance files for the built-in period formula.
pub const VERRA_PERIOD_TAG: &str = "verra-eq3";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeriodSource {
    /// `Σ_m Σ_{l ≤ m} (2m)! / ((l!)³ m! ((m−l)!)³) q^m`.
    VerraDoubleCover,
    /// Explicit coefficient list starting at `q^0`.
    Explicit(Vec<Rat>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodSpec {
    pub source: PeriodSource,
}

impl PeriodSource {
    pub fn tag(&self) -> &'static str {
        match self {
            PeriodSource::VerraDoubleCover => VERRA_PERIOD_TAG,
            PeriodSource::Explicit(_) => "explicit",
        }
    }
}

/// The `m`-th coefficient of the built-in period.
pub fn verra_coefficient(m: u32) -> Rat {
    let two_m = Rat::factorial(2 * m);
    let m_fact = Rat::factorial(m);
    (0..=m)
        .map(|l| {
            let a = Rat::factorial(l).pow(3);
            let b = Rat::factorial(m - l).pow(3);
            &two_m / &(a * &m_fact * b)
        })
        .sum()
}

/// `G(q)` through `q^order`.
pub fn period_coefficients(spec: &PeriodSpec, order: usize) -> Result<PowerSeries, QdeError> {
    match &spec.source {
        PeriodSource::VerraDoubleCover => Ok(PowerSeries::new(
            (0..=order as u32).map(verra_coefficient).collect(),
        )),
        PeriodSource::Explicit(c) => {
            if c.first().is_none_or(|c0| !c0.is_one()) {
                return Err(QdeError::BadPeriod("leading coefficient must be 1".into()));
            }
            if c.len() <= order {
                return Err(QdeError::BadPeriod(format!(
                    "{} coefficients given, order {} requested",
                    c.len(),
                    order
                )));
            }
            Ok(PowerSeries::new(c[..=order].to_vec()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_coefficients() {
        let spec = PeriodSpec {
            source: PeriodSource::VerraDoubleCover,
        };
        let g = period_coefficients(&spec, 4).unwrap();
        let expected = [
            Rat::from(1),
            Rat::from(4),
            Rat::from(15),
            Rat::new(280, 9),
            Rat::new(6055, 144),
        ];
        assert_eq!(g.coeffs(), &expected);
    }

    #[test]
    fn first_coefficient_as_sum() {
        // l = 0 and l = 1 each contribute 2!/(1·1·1) = 2.
        let terms: Vec<Rat> = (0..=1u32)
            .map(|l| Rat::from(2) / (Rat::factorial(l).pow(3) * Rat::factorial(1 - l).pow(3)))
            .collect();
        assert_eq!(terms, vec![Rat::from(2), Rat::from(2)]);
        assert_eq!(verra_coefficient(1), Rat::from(4));
    }

    #[test]
    fn explicit_source_checks() {
        let bad = PeriodSpec {
            source: PeriodSource::Explicit(vec![Rat::from(2)]),
        };
        assert!(period_coefficients(&bad, 0).is_err());
        let short = PeriodSpec {
            source: PeriodSource::Explicit(vec![Rat::from(1), Rat::from(4)]),
        };
        assert!(period_coefficients(&short, 3).is_err());
        assert_eq!(period_coefficients(&short, 1).unwrap().order(), 1);
    }
}
