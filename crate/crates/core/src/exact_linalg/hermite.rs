use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Row-style Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    /// `transform * input`; echelon form with positive pivots and entries
    /// above each pivot reduced into `[0, pivot)`. Zero rows come last.
    pub form: IntMatrix,
    /// Unimodular.
    pub transform: IntMatrix,
    pub pivots: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The nonzero rows, a basis of the row lattice.
    pub fn basis_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rank()).map(|i| self.form.row(i).to_vec()).collect()
    }
}

pub fn hermite_normal_form(m: &IntMatrix) -> HermiteForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Fold every lower entry of column c into row r by extended gcd.
        for i in r + 1..rows {
            if h.get(i, c).is_zero() {
                continue;
            }
            let a = h.get(r, c).clone();
            let b = h.get(i, c).clone();
            let e = a.extended_gcd(&b);
            let (x, y, g) = (e.x, e.y, e.gcd);
            let (ag, bg) = (&a / &g, &b / &g);
            combine_rows(&mut h, r, i, &x, &y, &ag, &bg);
            combine_rows(&mut u, r, i, &x, &y, &ag, &bg);
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        let p = h.get(r, c).clone();
        for i in 0..r {
            let q = -h.get(i, c).div_floor(&p);
            h.add_row_multiple(i, r, &q);
            u.add_row_multiple(i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    HermiteForm { form: h, transform: u, pivots }
}

/// (row_r, row_i) <- (x row_r + y row_i, -b/g row_r + a/g row_i), a unimodular
/// 2x2 step since x a/g + y b/g = 1.
fn combine_rows(m: &mut IntMatrix, r: usize, i: usize, x: &BigInt, y: &BigInt, ag: &BigInt, bg: &BigInt) {
    for j in 0..m.cols() {
        let vr = m.get(r, j).clone();
        let vi = m.get(i, j).clone();
        m.set(r, j, x * &vr + y * &vi);
        m.set(i, j, ag * &vi - bg * &vr);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn hnf_of_small_matrix() {
        let m = IntMatrix::from_rows(&[[2, 3, 6, 2], [5, 6, 1, 6], [8, 3, 1, 1]]);
        let h = hermite_normal_form(&m);
        assert_eq!(h.transform.mul(&m), h.form);
        assert!(h.transform.determinant().abs().is_one());
        assert_eq!(
            h.form,
            IntMatrix::from_rows(&[[1, 0, 50, -11], [0, 3, 28, -2], [0, 0, 61, -13]])
        );
    }

    #[test]
    fn rank_deficient_rows_sink() {
        let m = IntMatrix::from_rows(&[[2, 0], [4, 0], [0, 3]]);
        let h = hermite_normal_form(&m);
        assert_eq!(h.rank(), 2);
        assert_eq!(h.basis_rows(), vec![vec![BigInt::from(2), BigInt::zero()], vec![BigInt::zero(), BigInt::from(3)]]);
    }
}
