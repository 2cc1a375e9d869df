//! Parameterized quantum multiplication matrices.
//!
//! Starting from the classical cup product by `H`, every position allowed by
//! the degree rule receives a fresh unknown times `q^d`. Self-adjointness for
//! the Poincaré pairing is imposed as exact linear relations among the
//! unknowns, which are then eliminated.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{linalg, AlgebraError, ParamPoly, PolyMatrix, Rat, Vars};
use crate::cohomology::{AmbientClass, AmbientRing, BasisElement};

/// Name of the Novikov variable in every ansatz ring.
pub const NOVIKOV: &str = "q";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnsatzError {
    #[error("multiplication by H sends basis element {0} outside the block")]
    LeavesBlock(usize),
    #[error("self-adjointness constraints are inconsistent")]
    Inconsistent,
    #[error("gram matrix must have constant entries")]
    NonConstantGram,
    #[error("gram matrix is {0}x{0} but the block has {1} elements")]
    GramSize(usize, usize),
    #[error("no value supplied for parameter `{0}`")]
    MissingParameter(String),
    #[error("parameter name `{name}` anchors at {pos:?}, which is not a free position")]
    UnknownAnchor { name: String, pos: (usize, usize) },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Which `(row, column, q-power)` positions may be nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRule {
    pub degrees: Vec<u32>,
    pub novikov_degree: u32,
    pub multiplier_degree: u32,
}

impl DegreeRule {
    /// Quantum multiplication by a degree-2 class with `q` of degree 4.
    pub fn hyperplane(degrees: Vec<u32>) -> DegreeRule {
        DegreeRule {
            degrees,
            novikov_degree: 4,
            multiplier_degree: 2,
        }
    }

    pub fn max_power(&self) -> u32 {
        let top = self.degrees.iter().copied().max().unwrap_or(0);
        (top + self.multiplier_degree).div_ceil(self.novikov_degree)
    }

    /// All `d ≥ 0` with `deg(b_row) = mult + deg(b_col) − novikov·d`.
    pub fn admissible_powers(&self, row: usize, col: usize) -> Vec<u32> {
        let target = self.degrees[row] as i64;
        let source = (self.degrees[col] + self.multiplier_degree) as i64;
        (0..=self.max_power())
            .filter(|&d| source - (self.novikov_degree * d) as i64 == target)
            .collect()
    }
}

/// A parameter occurrence: `entry(row, col) ∋ multiplier · param · q^q_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    pub row: usize,
    pub col: usize,
    pub q_power: u32,
    pub param: String,
    pub multiplier: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnsatzMatrix {
    pub matrix: PolyMatrix,
    pub params: Vec<String>,
    /// First row-major position of each parameter's unknown.
    pub anchors: Vec<(usize, usize)>,
    pub placements: Vec<Placement>,
    pub classical: PolyMatrix,
}

/// Matrix of cup multiplication by `H1 + H2` in `block`; column `i` holds
/// the coordinates of `H ⌣ b_i`.
pub fn classical_matrix(
    ring: &AmbientRing,
    block: &[AmbientClass],
    vars: &Arc<Vars>,
) -> Result<PolyMatrix, AnsatzError> {
    let h = ring.hyperplane();
    let n = block.len();
    let mut cols = Vec::with_capacity(n);
    for (i, b) in block.iter().enumerate() {
        let image = ring.cup(&h, b);
        cols.push(
            ring.coordinates(block, &image)
                .ok_or(AnsatzError::LeavesBlock(i))?,
        );
    }
    let rows: Vec<Vec<Rat>> = (0..n)
        .map(|j| (0..n).map(|i| cols[i][j].clone()).collect())
        .collect();
    Ok(PolyMatrix::from_rat_rows(vars, &rows))
}

struct Unknown {
    row: usize,
    col: usize,
    q_power: u32,
}

/// Builds the most general self-adjoint matrix compatible with the degree
/// rule whose `q = 0` part is the classical matrix.
pub fn build_ansatz(
    ring: &AmbientRing,
    block: &[BasisElement],
    rule: &DegreeRule,
    gram: &PolyMatrix,
) -> Result<AnsatzMatrix, AnsatzError> {
    let n = block.len();
    if gram.rows() != n || gram.cols() != n {
        return Err(AnsatzError::GramSize(gram.rows(), n));
    }
    let g: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    gram.get(i, j)
                        .as_constant()
                        .ok_or(AnsatzError::NonConstantGram)
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let classes: Vec<AmbientClass> = block.iter().map(|b| b.class.clone()).collect();
    let classical = classical_matrix(ring, &classes, &Vars::empty())?;
    let cl: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| classical.get(i, j).constant_term())
                .collect()
        })
        .collect();

    let mut unknowns = Vec::new();
    for row in 0..n {
        for col in 0..n {
            for d in rule.admissible_powers(row, col) {
                if d >= 1 {
                    unknowns.push(Unknown {
                        row,
                        col,
                        q_power: d,
                    });
                }
            }
        }
    }
    let k = unknowns.len();

    // (GM − MᵀG)_{ab} = 0, split by q-power. Column k holds the constant.
    let mut system: Vec<Vec<Rat>> = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            for d in 0..=rule.max_power() {
                let mut eq = vec![Rat::zero(); k + 1];
                if d == 0 {
                    for c in 0..n {
                        eq[k] += &(&g[a][c] * &cl[c][b]);
                        eq[k] -= &(&cl[c][a] * &g[c][b]);
                    }
                }
                for (idx, u) in unknowns.iter().enumerate() {
                    if u.q_power != d {
                        continue;
                    }
                    if u.col == b {
                        eq[idx] += &g[a][u.row];
                    }
                    if u.col == a {
                        eq[idx] -= &g[u.row][b];
                    }
                }
                if eq.iter().any(|x| !x.is_zero()) {
                    system.push(eq);
                }
            }
        }
    }

    // Later positions become pivots so the surviving unknowns are the
    // earliest row-major ones.
    let order: Vec<usize> = (0..k).rev().collect();
    let pivots = linalg::rref_ordered(&mut system, &order);
    for row in &system {
        if row[..k].iter().all(Rat::is_zero) && !row[k].is_zero() {
            return Err(AnsatzError::Inconsistent);
        }
    }
    let free: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();

    // value(u) = offset + Σ coeff_f · u_f over free unknowns.
    let mut offset = vec![Rat::zero(); k];
    let mut coeff = vec![vec![Rat::zero(); free.len()]; k];
    for (fi, &f) in free.iter().enumerate() {
        coeff[f][fi] = Rat::one();
    }
    for (row, &p) in system.iter().zip(&pivots) {
        offset[p] = -&row[k];
        for (fi, &f) in free.iter().enumerate() {
            coeff[p][fi] = -&row[f];
        }
    }

    // Rescale each parameter to coprime integer multipliers, first positive.
    let mut scale = vec![Rat::one(); free.len()];
    for (fi, s) in scale.iter_mut().enumerate() {
        let column: Vec<&Rat> = (0..k)
            .map(|u| &coeff[u][fi])
            .filter(|x| !x.is_zero())
            .collect();
        let content = column.iter().fold(Rat::zero(), |acc, x| acc.gcd(x));
        let sign = if column[0].is_negative() {
            Rat::from(-1)
        } else {
            Rat::one()
        };
        *s = sign / content;
    }

    let params: Vec<String> = free
        .iter()
        .map(|&f| format!("p{}_{}", unknowns[f].row, unknowns[f].col))
        .collect();
    let anchors: Vec<(usize, usize)> = free
        .iter()
        .map(|&f| (unknowns[f].row, unknowns[f].col))
        .collect();
    let mut names = params.clone();
    names.push(NOVIKOV.to_string());
    let vars = Vars::new(&names);
    let qi = free.len();

    let mut matrix = classical.embed(&vars)?;
    let mut placements = Vec::new();
    for (idx, u) in unknowns.iter().enumerate() {
        let mut exps = vec![0; vars.len()];
        exps[qi] = u.q_power;
        let mut entry = matrix.get(u.row, u.col).clone();
        entry = &entry + &ParamPoly::monomial(&vars, exps.clone(), offset[idx].clone());
        for fi in 0..free.len() {
            let m = &coeff[idx][fi] * &scale[fi];
            if m.is_zero() {
                continue;
            }
            let mut e = exps.clone();
            e[fi] = 1;
            entry = &entry + &ParamPoly::monomial(&vars, e, m.clone());
            placements.push(Placement {
                row: u.row,
                col: u.col,
                q_power: u.q_power,
                param: params[fi].clone(),
                multiplier: m,
            });
        }
        matrix.set(u.row, u.col, entry);
    }
    Ok(AnsatzMatrix {
        classical: classical.embed(&vars)?,
        matrix,
        params,
        anchors,
        placements,
    })
}

impl AnsatzMatrix {
    pub fn vars(&self) -> &Arc<Vars> {
        self.matrix.vars()
    }

    /// Renames parameters by the position that anchors them.
    pub fn rename(&self, names: &[(String, (usize, usize))]) -> Result<AnsatzMatrix, AnsatzError> {
        let mut params = self.params.clone();
        for (name, pos) in names {
            let idx = self.anchors.iter().position(|a| a == pos).ok_or_else(|| {
                AnsatzError::UnknownAnchor {
                    name: name.clone(),
                    pos: *pos,
                }
            })?;
            params[idx] = name.clone();
        }
        let mut all = params.clone();
        all.push(NOVIKOV.to_string());
        let vars = Vars::new(&all);
        let relabel = |m: &PolyMatrix| -> PolyMatrix {
            m.map_into(&vars, |e| {
                ParamPoly::from_terms(&vars, e.terms().map(|(x, c)| (x.clone(), c.clone())))
            })
        };
        let rename_param = |p: &str| -> String {
            let i = self
                .params
                .iter()
                .position(|x| x == p)
                .expect("known parameter");
            params[i].clone()
        };
        Ok(AnsatzMatrix {
            matrix: relabel(&self.matrix),
            classical: relabel(&self.classical),
            placements: self
                .placements
                .iter()
                .map(|p| Placement {
                    param: rename_param(&p.param),
                    ..p.clone()
                })
                .collect(),
            params,
            anchors: self.anchors.clone(),
        })
    }

    /// `Mᵀ·G = G·M` identically in all parameters.
    pub fn is_self_adjoint(&self, gram: &PolyMatrix) -> Result<bool, AnsatzError> {
        let g = gram.embed(self.vars())?;
        let left = self.matrix.transpose().checked_mul(&g)?;
        let right = g.checked_mul(&self.matrix)?;
        Ok(left == right)
    }

    /// Substitutes every parameter, leaving a matrix in `q` alone.
    pub fn substitute_params(
        &self,
        values: &BTreeMap<String, Rat>,
    ) -> Result<PolyMatrix, AnsatzError> {
        for p in &self.params {
            if !values.contains_key(p) {
                return Err(AnsatzError::MissingParameter(p.clone()));
            }
        }
        let target = Vars::new(&[NOVIKOV]);
        let evaluated = self.matrix.map(|e| e.evaluate(values));
        Ok(evaluated.embed(&target)?)
    }
}

/// The antisymmetric parameter in terms of the three-point invariant `N`:
/// the off-diagonal quantum entries equal `−N/2 · q`.
pub fn antisymmetric_parameter(n_invariant: &Rat) -> Rat {
    -(n_invariant / &Rat::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verra() -> AmbientRing {
        AmbientRing::new(3, Rat::from(2))
    }

    #[test]
    fn admissible_examples() {
        let rule = DegreeRule::hyperplane(vec![0, 2, 4, 4, 6, 8]);
        assert_eq!(rule.admissible_powers(0, 1), vec![1]);
        assert!(rule.admissible_powers(5, 5).is_empty());
        assert_eq!(rule.admissible_powers(2, 1), vec![0]);
        assert_eq!(rule.admissible_powers(0, 4), vec![2]);
        assert_eq!(rule.max_power(), 3);
    }

    #[test]
    fn classical_columns() {
        let ring = verra();
        let e = ring.build_eigenbasis();
        let vars = Vars::empty();
        let m = classical_matrix(&ring, &e.symmetric_classes(), &vars).unwrap();
        let col = |i: usize| -> Vec<Rat> { (0..6).map(|j| m.get(j, i).constant_term()).collect() };
        assert_eq!(col(0), [0, 1, 0, 0, 0, 0].map(Rat::from).to_vec());
        assert_eq!(col(1), [0, 0, 1, 2, 0, 0].map(Rat::from).to_vec());
        let a = classical_matrix(&ring, &e.antisymmetric_classes(), &vars).unwrap();
        assert!((0..3).all(|j| a.get(j, 2).is_zero()));
    }

    #[test]
    fn classical_leaving_block_is_an_error() {
        let ring = verra();
        let block = vec![ring.one()];
        assert_eq!(
            classical_matrix(&ring, &block, &Vars::empty()),
            Err(AnsatzError::LeavesBlock(0))
        );
    }

    #[test]
    fn point_block_has_no_quantum_part() {
        let ring = verra();
        let block = vec![BasisElement {
            label: "top".into(),
            class: ring.monomial(2, 2, 1),
            degree: 8,
        }];
        let rule = DegreeRule::hyperplane(vec![8]);
        let gram = ring.gram_matrix(&[ring.monomial(2, 2, 1)], &Vars::empty());
        let a = build_ansatz(&ring, &block, &rule, &gram).unwrap();
        assert!(a.params.is_empty());
        assert!(a.matrix.is_zero());
    }

    #[test]
    fn missing_parameter_value() {
        let ring = verra();
        let e = ring.build_eigenbasis();
        let rule = DegreeRule::hyperplane(vec![2, 4, 6]);
        let gram = ring.gram_matrix(&e.antisymmetric_classes(), &Vars::empty());
        let a = build_ansatz(&ring, &e.antisymmetric, &rule, &gram).unwrap();
        assert_eq!(
            a.substitute_params(&BTreeMap::new()),
            Err(AnsatzError::MissingParameter("p0_1".into()))
        );
    }
}
