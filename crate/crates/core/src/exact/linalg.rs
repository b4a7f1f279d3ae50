use num_traits::Zero;

use super::Rational;

/// Outcome of an exact linear solve `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    /// Full column rank: the only solution.
    Unique(Vec<Rational>),
    /// Consistent but rank deficient: the reduced-echelon solution with
    /// every free variable set to zero.
    Underdetermined(Vec<Rational>),
    Inconsistent,
}

impl LinearSolution {
    pub fn solution(&self) -> Option<&[Rational]> {
        match self {
            LinearSolution::Unique(x) | LinearSolution::Underdetermined(x) => Some(x),
            LinearSolution::Inconsistent => None,
        }
    }

    pub fn is_consistent(&self) -> bool {
        !matches!(self, LinearSolution::Inconsistent)
    }
}

/// Gauss-Jordan elimination over the rationals. `rows` is the coefficient
/// matrix in row-major order; every row must have the same length.
///
/// Pivots are chosen left to right, so earlier columns are preferred as
/// basic variables.
pub fn solve(rows: &[Vec<Rational>], rhs: &[Rational]) -> LinearSolution {
    assert_eq!(rows.len(), rhs.len(), "row count must match right-hand side");
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            assert_eq!(r.len(), ncols);
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();

    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..ncols {
        let Some(sel) = (prow..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(prow, sel);
        let inv = m[prow][col].recip();
        for x in m[prow].iter_mut().skip(col) {
            *x *= &inv;
        }
        let pivot_row = m[prow].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == prow || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        prow += 1;
        if prow == m.len() {
            break;
        }
    }

    if m[prow..].iter().any(|row| !row[ncols].is_zero()) {
        return LinearSolution::Inconsistent;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][ncols].clone();
    }
    if pivots.len() == ncols {
        LinearSolution::Unique(x)
    } else {
        LinearSolution::Underdetermined(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn unique_solution() {
        let a = mat(&[&[2, 1], &[1, 3]]);
        let b = vec![int(3), int(5)];
        assert_eq!(solve(&a, &b), LinearSolution::Unique(vec![rat(4, 5), rat(7, 5)]));
    }

    #[test]
    fn underdetermined_sets_free_variables_to_zero() {
        let a = mat(&[&[1, 1, 0], &[0, 0, 1]]);
        let b = vec![int(2), int(5)];
        assert_eq!(
            solve(&a, &b),
            LinearSolution::Underdetermined(vec![int(2), int(0), int(5)])
        );
    }

    #[test]
    fn inconsistent_system() {
        let a = mat(&[&[1, 1], &[2, 2]]);
        let b = vec![int(1), int(3)];
        assert_eq!(solve(&a, &b), LinearSolution::Inconsistent);
    }

    #[test]
    fn empty_column_set() {
        let a = vec![vec![], vec![]];
        assert_eq!(solve(&a, &[int(0), int(0)]), LinearSolution::Unique(vec![]));
        assert_eq!(solve(&a, &[int(0), int(1)]), LinearSolution::Inconsistent);
    }
}
