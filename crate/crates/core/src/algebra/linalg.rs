//! Dense row reduction over Q.

use super::rat::Rat;

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row. Columns are scanned in the order given by `column_order`.
pub fn rref_ordered(rows: &mut Vec<Vec<Rat>>, column_order: &[usize]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in column_order {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &(&f * y);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    pivots
}

pub fn rref(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let n = rows.first().map_or(0, Vec::len);
    let order: Vec<usize> = (0..n).collect();
    rref_ordered(rows, &order)
}

/// Solves `Σ x_j cols[j] = target` for a full-column-rank system.
pub fn solve_in_span(cols: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let n = cols.len();
    let m = target.len();
    let mut rows: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.contains(&n) || pivots.len() < n {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (row, &c) in rows.iter().zip(&pivots) {
        x[c] = row[n].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_coordinates() {
        let cols = vec![
            vec![Rat::from(1), Rat::from(1), Rat::from(0)],
            vec![Rat::from(1), Rat::from(-1), Rat::from(0)],
        ];
        let x = solve_in_span(&cols, &[Rat::from(3), Rat::from(1), Rat::from(0)]).unwrap();
        assert_eq!(x, vec![Rat::from(2), Rat::from(1)]);
        assert!(solve_in_span(&cols, &[Rat::from(0), Rat::from(0), Rat::from(1)]).is_none());
    }
}
