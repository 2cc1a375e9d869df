//! Matrices over a [`ParamPoly`] ring: products, characteristic polynomials
//! and fraction-free left kernels.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::bipoly::BiPoly;
use super::gcd::poly_gcd_all;
use super::poly::{same_vars, ParamPoly, Vars};
use super::rat::Rat;
use super::AlgebraError;

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    vars: Arc<Vars>,
    rows: usize,
    cols: usize,
    entries: Vec<ParamPoly>,
}

impl PolyMatrix {
    pub fn zeros(vars: &Arc<Vars>, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix {
            vars: vars.clone(),
            rows,
            cols,
            entries: vec![ParamPoly::zero(vars); rows * cols],
        }
    }

    pub fn identity(vars: &Arc<Vars>, n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(vars, n, n);
        for i in 0..n {
            m.set(i, i, ParamPoly::one(vars));
        }
        m
    }

    pub fn from_rows(
        vars: &Arc<Vars>,
        rows: Vec<Vec<ParamPoly>>,
    ) -> Result<PolyMatrix, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(AlgebraError::DimensionMismatch(format!(
                    "ragged rows: expected {} columns, found {}",
                    c,
                    row.len()
                )));
            }
            for e in row {
                if !same_vars(e.vars(), vars) {
                    return Err(AlgebraError::VarMismatch {
                        left: vars.names().to_vec(),
                        right: e.vars().names().to_vec(),
                    });
                }
                entries.push(e);
            }
        }
        Ok(PolyMatrix {
            vars: vars.clone(),
            rows: r,
            cols: c,
            entries,
        })
    }

    /// Constant matrix from rational rows.
    pub fn from_rat_rows(vars: &Arc<Vars>, rows: &[Vec<Rat>]) -> PolyMatrix {
        let polys = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| ParamPoly::constant(vars, x.clone()))
                    .collect()
            })
            .collect();
        PolyMatrix::from_rows(vars, polys).expect("rectangular input")
    }

    pub fn vars(&self) -> &Arc<Vars> {
        &self.vars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ParamPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: ParamPoly) {
        assert!(same_vars(value.vars(), &self.vars), "entry ring mismatch");
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[ParamPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<ParamPoly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[ParamPoly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(ParamPoly::is_zero)
    }

    pub fn map(&self, f: impl Fn(&ParamPoly) -> ParamPoly) -> PolyMatrix {
        PolyMatrix {
            vars: self.vars.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Like [`PolyMatrix::map`], with entries landing in `target`.
    pub fn map_into(&self, target: &Arc<Vars>, f: impl Fn(&ParamPoly) -> ParamPoly) -> PolyMatrix {
        let entries: Vec<ParamPoly> = self.entries.iter().map(f).collect();
        assert!(
            entries.iter().all(|e| same_vars(e.vars(), target)),
            "entry ring mismatch"
        );
        PolyMatrix {
            vars: target.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Re-expresses every entry in another ring, matching variables by name.
    pub fn embed(&self, target: &Arc<Vars>) -> Result<PolyMatrix, AlgebraError> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.embed(target))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolyMatrix {
            vars: target.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zeros(&self.vars, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &Rat) -> PolyMatrix {
        self.map(|e| e.scale(c))
    }

    pub fn checked_add(&self, other: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolyMatrix {
            entries,
            ..self.clone()
        })
    }

    pub fn checked_sub(&self, other: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        self.checked_add(&other.scale(&Rat::from(-1)))
    }

    pub fn checked_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if !same_vars(&self.vars, &other.vars) {
            return Err(AlgebraError::VarMismatch {
                left: self.vars.names().to_vec(),
                right: other.vars.names().to_vec(),
            });
        }
        let mut out = PolyMatrix::zeros(&self.vars, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = ParamPoly::zero(&self.vars);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[ParamPoly]) -> Result<Vec<ParamPoly>, AlgebraError> {
        if v.len() != self.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "covector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut out = vec![ParamPoly::zero(&self.vars); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let e = self.get(i, j);
                if !e.is_zero() {
                    *o = o.checked_add(&vi.checked_mul(e)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &PolyMatrix) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(&self.vars, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Characteristic polynomial `det(λ·I − M)` in the outer variable `outer`.
    pub fn char_poly(&self, outer: &str) -> Result<BiPoly, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let entry = |i: usize, j: usize| {
            let neg = BiPoly::constant(outer, -self.get(i, j));
            if i == j {
                &BiPoly::outer_power(outer, &self.vars, 1) + &neg
            } else {
                neg
            }
        };
        let table: Vec<Vec<BiPoly>> = (0..n)
            .map(|i| (0..n).map(|j| entry(i, j)).collect())
            .collect();
        let one = BiPoly::outer_power(outer, &self.vars, 0);
        let zero = BiPoly::zero(outer, &self.vars);
        Ok(laplace_det(&table, &one, &zero))
    }

    pub fn determinant(&self) -> Result<ParamPoly, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare(self.rows, self.cols));
        }
        let table: Vec<Vec<BiPoly>> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| BiPoly::constant("_", self.get(i, j).clone()))
                    .collect()
            })
            .collect();
        let one = BiPoly::outer_power("_", &self.vars, 0);
        let zero = BiPoly::zero("_", &self.vars);
        Ok(laplace_det(&table, &one, &zero).coeff(0))
    }

    /// Basis of `{v : v · M = 0}` with polynomial entries.
    ///
    /// Computed by fraction-free Gauss–Jordan elimination on `Mᵀ`: every
    /// intermediate entry is a minor of the input, so each division is
    /// exact. Each returned vector is divided by the gcd of its entries and
    /// signed so that its first nonzero entry has a positive leading
    /// coefficient.
    pub fn left_nullspace(&self) -> Result<Vec<Vec<ParamPoly>>, AlgebraError> {
        let a = self.transpose();
        let (m, n) = (a.rows, a.cols);
        let mut w: Vec<Vec<ParamPoly>> = (0..m).map(|i| a.row(i).to_vec()).collect();
        let mut prev = ParamPoly::one(&self.vars);
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !w[i][c].is_zero()) else {
                continue;
            };
            w.swap(r, p);
            let pivot = w[r][c].clone();
            let pivot_row = w[r].clone();
            for (i, row) in w.iter_mut().enumerate() {
                if i == r {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    let val = &(&pivot * &*x) - &(&f * y);
                    *x = val.div_exact(&prev)?;
                }
            }
            prev = pivot;
            pivots.push((r, c));
            r += 1;
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for f in (0..n).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![ParamPoly::zero(&self.vars); n];
            v[f] = prev.clone();
            for &(row, col) in &pivots {
                v[col] = -&w[row][f];
            }
            basis.push(normalize_vector(v));
        }
        Ok(basis)
    }
}

/// Divides by the gcd of the entries and fixes the sign so the first nonzero
/// entry has a positive leading coefficient.
pub fn normalize_vector(v: Vec<ParamPoly>) -> Vec<ParamPoly> {
    let Some(g) = poly_gcd_all(v.iter().filter(|p| !p.is_zero())) else {
        return v;
    };
    let mut out: Vec<ParamPoly> = v
        .iter()
        .map(|p| p.div_exact(&g).expect("gcd divides every entry"))
        .collect();
    let scale = out.iter().fold(Rat::zero(), |acc, p| acc.gcd(&p.content()));
    let first_sign_negative = out
        .iter()
        .find(|p| !p.is_zero())
        .is_some_and(|p| p.leading_coefficient().is_negative());
    let mut s = scale.recip();
    if first_sign_negative {
        s = -s;
    }
    for p in out.iter_mut() {
        *p = p.scale(&s);
    }
    out
}

/// Laplace expansion along rows, memoized on the set of used columns.
fn laplace_det(table: &[Vec<BiPoly>], one: &BiPoly, zero: &BiPoly) -> BiPoly {
    let n = table.len();
    let mut memo: HashMap<u32, BiPoly> = HashMap::new();
    fn go(
        table: &[Vec<BiPoly>],
        used: u32,
        one: &BiPoly,
        zero: &BiPoly,
        memo: &mut HashMap<u32, BiPoly>,
    ) -> BiPoly {
        let n = table.len();
        let row = used.count_ones() as usize;
        if row == n {
            return one.clone();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = zero.clone();
        let mut position = 0;
        for j in 0..n {
            if used & (1 << j) != 0 {
                continue;
            }
            let a = &table[row][j];
            if !a.is_zero() {
                let minor = go(table, used | (1 << j), one, zero, memo);
                let term = a * &minor;
                acc = if position % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            position += 1;
        }
        memo.insert(used, acc.clone());
        acc
    }
    if n == 0 {
        return one.clone();
    }
    go(table, 0, one, zero, &mut memo)
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, "  ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j], width = width)?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix {}x{}\n{}", self.rows, self.cols, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qring() -> Arc<Vars> {
        Vars::new(&["q"])
    }

    fn c(r: &Arc<Vars>, x: i64) -> ParamPoly {
        ParamPoly::constant(r, x)
    }

    #[test]
    fn kernel_of_zero_second_row() {
        let r = qring();
        let m = PolyMatrix::from_rows(&r, vec![vec![c(&r, 1)], vec![c(&r, 0)]]).unwrap();
        let k = m.left_nullspace().unwrap();
        assert_eq!(k, vec![vec![c(&r, 0), c(&r, 1)]]);
    }

    #[test]
    fn kernel_of_proportional_rows() {
        let r = qring();
        let q = ParamPoly::var(&r, "q").unwrap();
        let m = PolyMatrix::from_rows(&r, vec![vec![c(&r, 1)], vec![q.clone()]]).unwrap();
        let k = m.left_nullspace().unwrap();
        assert_eq!(k.len(), 1);
        // First nonzero entry is -q; the sign convention makes it +q.
        assert_eq!(k[0], vec![q.clone(), c(&r, -1)]);
        assert!(m.left_apply(&k[0]).unwrap().iter().all(ParamPoly::is_zero));
    }

    #[test]
    fn kernel_empty_for_full_rank() {
        let r = qring();
        let m = PolyMatrix::identity(&r, 3);
        assert!(m.left_nullspace().unwrap().is_empty());
    }

    #[test]
    fn char_poly_of_zero() {
        let r = qring();
        let chi = PolyMatrix::zeros(&r, 2, 2).char_poly("λ").unwrap();
        assert_eq!(chi, BiPoly::outer_power("λ", &r, 2));
    }

    #[test]
    fn char_poly_non_square() {
        let r = qring();
        assert_eq!(
            PolyMatrix::zeros(&r, 2, 3).char_poly("λ"),
            Err(AlgebraError::NotSquare(2, 3))
        );
    }

    #[test]
    fn char_poly_antisymmetric_block() {
        // ((0, 2q, 0), (1, 0, 2q), (0, 1, 0)) has χ = λ³ − 4qλ.
        let r = qring();
        let q = ParamPoly::var(&r, "q").unwrap();
        let two_q = q.scale(&Rat::from(2));
        let z = c(&r, 0);
        let one = c(&r, 1);
        let m = PolyMatrix::from_rows(
            &r,
            vec![
                vec![z.clone(), two_q.clone(), z.clone()],
                vec![one.clone(), z.clone(), two_q.clone()],
                vec![z.clone(), one.clone(), z.clone()],
            ],
        )
        .unwrap();
        let chi = m.char_poly("λ").unwrap();
        assert_eq!(
            chi.coeffs(),
            &[z.clone(), q.scale(&Rat::from(-4)), z.clone(), one.clone()]
        );
        let chi2 = m.scale(&Rat::from(2)).char_poly("λ").unwrap();
        assert_eq!(
            chi2.coeffs(),
            &[z.clone(), q.scale(&Rat::from(-16)), z, one]
        );
    }

    #[test]
    fn determinant_matches_char_poly_constant() {
        let r = qring();
        let q = ParamPoly::var(&r, "q").unwrap();
        let m = PolyMatrix::from_rows(
            &r,
            vec![vec![q.clone(), c(&r, 2)], vec![c(&r, 3), q.clone()]],
        )
        .unwrap();
        assert_eq!(m.determinant().unwrap(), &(&q * &q) - &c(&r, 6));
    }
}
