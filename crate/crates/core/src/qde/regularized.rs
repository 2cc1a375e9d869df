//! Built-in regularized operators, stated in the variable `t`.

use crate::algebra::{ParamPoly, Vars};

use super::operator::DiffOperator;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegularizedSource {
    /// Fourth-order operator annihilating the regularized Verra period.
    Verra,
}

impl RegularizedSource {
    pub fn from_tag(tag: &str) -> Option<RegularizedSource> {
        match tag {
            "verra-regularized" => Some(RegularizedSource::Verra),
            _ => None,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            RegularizedSource::Verra => "verra-regularized",
        }
    }

    pub fn operator(&self) -> DiffOperator {
        match self {
            RegularizedSource::Verra => verra_regularized(),
        }
    }
}

fn t_poly(coeffs: &[(u32, i64)]) -> ParamPoly {
    let vars = Vars::new(&["t"]);
    ParamPoly::from_terms(&vars, coeffs.iter().map(|&(e, c)| (vec![e], c.into())))
}

/// `(16t²+1)(128t²−1) D⁴ + 64t²(256t²+7) D³ + 16t²(2816t²+43) D²
///  + 96t²(512t²+5) D + 128t²(144t²+1)` with `D = t d/dt`.
pub fn verra_regularized() -> DiffOperator {
    let c0 = t_poly(&[(2, 128), (4, 128 * 144)]);
    let c1 = t_poly(&[(2, 96 * 5), (4, 96 * 512)]);
    let c2 = t_poly(&[(2, 16 * 43), (4, 16 * 2816)]);
    let c3 = t_poly(&[(2, 64 * 7), (4, 64 * 256)]);
    let a = t_poly(&[(0, 1), (2, 16)]);
    let b = t_poly(&[(0, -1), (2, 128)]);
    let c4 = &a * &b;
    DiffOperator::new("t", vec![c0, c1, c2, c3, c4]).expect("well-formed")
}
