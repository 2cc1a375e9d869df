//! Truncated power series with rational coefficients.

use std::fmt;

use super::rat::Rat;

/// `Σ_{k ≤ order} c_k q^k`, with coefficients beyond `order` unknown.
#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rat>,
}

impl PowerSeries {
    /// Panics on an empty coefficient list: a series knows at least `c_0`.
    pub fn new(coeffs: Vec<Rat>) -> PowerSeries {
        assert!(
            !coeffs.is_empty(),
            "power series needs at least one coefficient"
        );
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> PowerSeries {
        PowerSeries::new(vec![Rat::zero(); order + 1])
    }

    pub fn one(order: usize) -> PowerSeries {
        let mut s = PowerSeries::zero(order);
        s.coeffs[0] = Rat::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rat {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> PowerSeries {
        PowerSeries::new(self.coeffs[..=order.min(self.order())].to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.order().min(other.order());
        PowerSeries::new(
            (0..=n)
                .map(|k| &self.coeffs[k] + &other.coeffs[k])
                .collect(),
        )
    }

    pub fn sub(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.order().min(other.order());
        PowerSeries::new(
            (0..=n)
                .map(|k| &self.coeffs[k] - &other.coeffs[k])
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> PowerSeries {
        PowerSeries::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k)
                    .map(|i| &self.coeffs[i] * &other.coeffs[k - i])
                    .sum()
            })
            .collect();
        PowerSeries::new(coeffs)
    }

    /// Multiplication by a polynomial `Σ p_k q^k`; keeps the series order.
    pub fn mul_poly(&self, poly: &[Rat]) -> PowerSeries {
        let n = self.order();
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k.min(poly.len().saturating_sub(1)))
                    .map(|i| &poly[i] * &self.coeffs[k - i])
                    .sum()
            })
            .collect();
        PowerSeries::new(coeffs)
    }

    /// `q d/dq`.
    pub fn euler_derivative(&self) -> PowerSeries {
        PowerSeries::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * Rat::from(k))
                .collect(),
        )
    }

    /// Laplace-type regularization for a variable `t` with `q = t^step`:
    /// the coefficient of `t^d` is multiplied by `d!`.
    pub fn regularize(&self, step: u32) -> PowerSeries {
        PowerSeries::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * Rat::factorial(step * k as u32))
                .collect(),
        )
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(Rat::to_string).collect();
        write!(f, "[{}] + O(q^{})", parts.join(", "), self.order() + 1)
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(v: &[i64]) -> PowerSeries {
        PowerSeries::new(v.iter().map(|&x| Rat::from(x)).collect())
    }

    #[test]
    fn truncating_product() {
        let a = ps(&[1, 1, 0, 0]);
        let b = ps(&[1, -1, 0]);
        assert_eq!(a.mul(&b), ps(&[1, 0, -1]));
    }

    #[test]
    fn euler_derivative_kills_constants() {
        assert!(PowerSeries::one(5).euler_derivative().is_zero());
        assert_eq!(ps(&[3, 1, 1]).euler_derivative(), ps(&[0, 1, 2]));
    }

    #[test]
    fn regularization_rescales() {
        assert_eq!(ps(&[1, 4, 15]).regularize(2), ps(&[1, 8, 360]));
    }
}
