use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Smith normal form `left * m * right = diag(d_1, ..., d_r, 0, ...)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Diagonal entries, `min(rows, cols)` of them: nonnegative, each
    /// dividing the next, nonzero ones first.
    pub diag: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// The diagonal form as a full matrix of the input's shape.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.rows(), self.right.cols());
        for (i, x) in self.diag.iter().enumerate() {
            d.set(i, i, x.clone());
        }
        d
    }

    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    /// Invariant factors greater than one: the torsion of the cokernel.
    pub fn torsion_factors(&self) -> Vec<BigInt> {
        self.diag.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect()
    }

    /// Order of the torsion subgroup of the cokernel.
    pub fn torsion_order(&self) -> BigInt {
        self.diag.iter().filter(|d| !d.is_zero()).product()
    }
}

/// Smith normal form by pivoting elimination with unimodular row and column
/// transforms tracked.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let steps = rows.min(cols);

    for t in 0..steps {
        // Pivot: smallest nonzero |entry| in the trailing block.
        let Some((pi, pj)) = smallest_nonzero(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_floor(a.get(t, t));
                a.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                if !a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_floor(a.get(t, t));
                a.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                if !a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                let (pi, pj) = smallest_nonzero_cross(&a, t);
                a.swap_rows(t, pi);
                left.swap_rows(t, pi);
                a.swap_cols(t, pj);
                right.swap_cols(t, pj);
                continue;
            }
            // Row and column are clear; enforce divisibility of the block.
            let p = a.get(t, t).clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }

    let diag = (0..steps).map(|i| a.get(i, i).clone()).collect();
    SmithForm { diag, left, right }
}

fn smallest_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let av = v.abs();
            if best.as_ref().is_none_or(|(b, _, _)| av < *b) {
                best = Some((av, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Smallest nonzero entry on row `t` / column `t` from position `t` on.
fn smallest_nonzero_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (a.get(t, t).abs(), t, t);
    for i in t + 1..a.rows() {
        let v = a.get(i, t);
        if !v.is_zero() && v.abs() < best.0 {
            best = (v.abs(), i, t);
        }
    }
    for j in t + 1..a.cols() {
        let v = a.get(t, j);
        if !v.is_zero() && v.abs() < best.0 {
            best = (v.abs(), t, j);
        }
    }
    (best.1, best.2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        assert_eq!(s.left.mul(m).mul(&s.right), s.diagonal_matrix());
        assert!(s.left.determinant().abs().is_one());
        assert!(s.right.determinant().abs().is_one());
        for w in s.diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]) || w[0].is_zero() && w[1].is_zero());
        }
        s
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn a2_cartan() {
        let s = check(&IntMatrix::from_rows(&[[2, -1], [-1, 2]]));
        assert_eq!(s.diag, ints(&[1, 3]));
    }

    #[test]
    fn identity() {
        let s = check(&IntMatrix::identity(4));
        assert_eq!(s.diag, ints(&[1, 1, 1, 1]));
    }

    #[test]
    fn negative_scalar() {
        let s = check(&IntMatrix::from_rows(&[[-2]]));
        assert_eq!(s.diag, ints(&[2]));
    }

    #[test]
    fn needs_divisibility_fix() {
        let s = check(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(s.diag, ints(&[1, 6]));
        let s = check(&IntMatrix::from_rows(&[[4, 0, 0], [0, 6, 0], [0, 0, 10]]));
        assert_eq!(s.diag, ints(&[2, 2, 60]));
    }

    #[test]
    fn rectangular_and_singular() {
        let s = check(&IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]));
        assert_eq!(s.diag, ints(&[2, 6, 12]));
        let s = check(&IntMatrix::from_rows(&[[1, 2, 3], [2, 4, 6]]));
        assert_eq!(s.diag, ints(&[1, 0]));
        let s = check(&IntMatrix::zeros(2, 3));
        assert_eq!(s.diag, ints(&[0, 0]));
    }
}
