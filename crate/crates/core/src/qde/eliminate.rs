//! Cyclic-vector elimination of `D y = M y` to a scalar operator.

use crate::algebra::{AlgebraError, ParamPoly, PolyMatrix};
use crate::ansatz::NOVIKOV;

use super::operator::DiffOperator;
use super::QdeError;

/// Result of eliminating a first-order system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    /// Covectors `r_0..r_k` with `D^j f = r_j · y`.
    pub rows: PolyMatrix,
    pub operator: DiffOperator,
}

impl Elimination {
    /// `Σ c_j r_j`, which is zero for a correct elimination.
    pub fn cofactor_residual(&self) -> Result<Vec<ParamPoly>, AlgebraError> {
        self.rows.left_apply(self.operator.coeffs())
    }
}

/// Rows `r_0..r_count` with `r_0 = e_component` and
/// `r_{k+1} = D r_k + r_k · M`.
pub fn cyclic_rows(m: &PolyMatrix, component: usize, count: usize) -> Result<PolyMatrix, QdeError> {
    if !m.is_square() {
        return Err(AlgebraError::NotSquare(m.rows(), m.cols()).into());
    }
    let n = m.rows();
    if component >= n {
        return Err(QdeError::BadComponent(component, n));
    }
    let vars = m.vars().clone();
    let qi = vars
        .index_of(NOVIKOV)
        .ok_or_else(|| AlgebraError::UnknownVariable(NOVIKOV.to_string()))?;
    let mut rows = Vec::with_capacity(count + 1);
    let mut r = vec![ParamPoly::zero(&vars); n];
    r[component] = ParamPoly::one(&vars);
    rows.push(r.clone());
    for _ in 0..count {
        let rm = m.left_apply(&r)?;
        r = r
            .iter()
            .zip(&rm)
            .map(|(a, b)| &a.euler_derivative(qi) + b)
            .collect();
        rows.push(r.clone());
    }
    Ok(PolyMatrix::from_rows(&vars, rows)?)
}

/// The least-order normalized operator annihilating the chosen component of
/// every solution.
pub fn eliminate(m: &PolyMatrix, component: usize) -> Result<Elimination, QdeError> {
    let n = m.rows();
    for k in 1..=n {
        let rows = cyclic_rows(m, component, k)?;
        let kernel = rows.left_nullspace()?;
        if let Some(v) = kernel.into_iter().next() {
            let operator = DiffOperator::new(NOVIKOV, v)?.normalized();
            return Ok(Elimination { rows, operator });
        }
    }
    Err(QdeError::NoDependence(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Rat, Vars};

    #[test]
    fn constant_solution() {
        let r = Vars::new(&["q"]);
        let m = PolyMatrix::zeros(&r, 1, 1);
        let rows = cyclic_rows(&m, 0, 1).unwrap();
        assert_eq!(rows.get(0, 0), &ParamPoly::one(&r));
        assert!(rows.get(1, 0).is_zero());
        let e = eliminate(&m, 0).unwrap();
        assert_eq!(
            e.operator.coeffs(),
            &[ParamPoly::zero(&r), ParamPoly::one(&r)]
        );
    }

    #[test]
    fn scalar_system() {
        let r = Vars::new(&["q"]);
        let c = ParamPoly::constant(&r, Rat::new(3, 2));
        let m = PolyMatrix::from_rows(&r, vec![vec![c.clone()]]).unwrap();
        let rows = cyclic_rows(&m, 0, 1).unwrap();
        assert_eq!(rows.get(1, 0), &c);
    }

    #[test]
    fn bad_component() {
        let r = Vars::new(&["q"]);
        let m = PolyMatrix::zeros(&r, 2, 2);
        assert_eq!(cyclic_rows(&m, 2, 1), Err(QdeError::BadComponent(2, 2)));
    }
}
