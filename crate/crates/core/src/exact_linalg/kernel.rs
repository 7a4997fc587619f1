//! Exact rank and kernel computations.
//!
//! Rows are cleared of denominators and reduced over the integers with
//! primitive (content 1) normalization, which keeps entry growth small. The
//! reduced basis is kept in reduced echelon form throughout: every stored row
//! vanishes at the pivot columns of every other stored row.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, RatMatrix, Rational};
use crate::error::{Error, Result};

/// Incremental reduced row echelon basis over the integers.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    cols: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl EchelonBasis {
    pub fn new(cols: usize) -> Self {
        Self { cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Adds a row; returns whether it increased the rank.
    pub fn insert_int(&mut self, mut v: Vec<BigInt>) -> bool {
        assert_eq!(v.len(), self.cols);
        for (p, r) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let a = r[*p].clone();
            let b = v[*p].clone();
            let g = a.gcd(&b);
            let (fa, fb) = (&a / &g, &b / &g);
            for (x, y) in v.iter_mut().zip(r) {
                if y.is_zero() {
                    if !x.is_zero() {
                        *x *= &fa;
                    }
                } else {
                    *x = &*x * &fa - &fb * y;
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        make_primitive(&mut v, p);
        for (q, r) in self.rows.iter_mut() {
            if r[p].is_zero() {
                continue;
            }
            let a = v[p].clone();
            let b = r[p].clone();
            let g = a.gcd(&b);
            let (fa, fb) = (&a / &g, &b / &g);
            for (x, y) in r.iter_mut().zip(&v) {
                *x = &*x * &fa - &fb * y;
            }
            make_primitive(r, *q);
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        true
    }

    pub fn insert_rat(&mut self, v: &[Rational]) -> bool {
        let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let iv = v.iter().map(|x| (x * &l).to_integer()).collect();
        self.insert_int(iv)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|(p, _)| *p)
    }

    /// Kernel basis in canonical form: one vector per free column `f`, with
    /// a 1 at `f`, zeros at the other free columns.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let mut is_pivot = vec![false; self.cols];
        for (p, _) in &self.rows {
            is_pivot[*p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (p, r) in &self.rows {
                    if !r[f].is_zero() {
                        v[*p] = -Rational::new(r[f].clone(), r[*p].clone());
                    }
                }
                v
            })
            .collect()
    }
}

fn make_primitive(v: &mut [BigInt], pivot: usize) {
    let mut g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if v[pivot].is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

/// Rank of a rational matrix.
pub fn rank(m: &RatMatrix) -> usize {
    let mut e = EchelonBasis::new(m.cols());
    for i in 0..m.rows() {
        if e.is_full() {
            break;
        }
        e.insert_rat(m.row(i));
    }
    e.rank()
}

pub(crate) fn rank_int(m: &IntMatrix) -> usize {
    let mut e = EchelonBasis::new(m.cols());
    for i in 0..m.rows() {
        if e.is_full() {
            break;
        }
        e.insert_int(m.row(i).to_vec());
    }
    e.rank()
}

/// Basis of the right kernel `{v : m v = 0}`.
pub fn rational_kernel(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let mut e = EchelonBasis::new(m.cols());
    for i in 0..m.rows() {
        if e.is_full() {
            break;
        }
        e.insert_rat(m.row(i));
    }
    e.kernel()
}

/// Basis of the intersection of the right kernels, i.e. the kernel of the
/// vertical stack.
pub fn stack_and_common_kernel(ms: &[RatMatrix]) -> Result<Vec<Vec<Rational>>> {
    let Some(first) = ms.first() else {
        return Ok(Vec::new());
    };
    let cols = first.cols();
    let mut e = EchelonBasis::new(cols);
    for m in ms {
        if m.cols() != cols {
            return Err(Error::ColumnMismatch { expected: cols, found: m.cols() });
        }
        for i in 0..m.rows() {
            if e.is_full() {
                break;
            }
            e.insert_rat(m.row(i));
        }
    }
    Ok(e.kernel())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::rat_matrix::int;

    #[test]
    fn zero_matrix_has_full_kernel() {
        assert_eq!(rational_kernel(&RatMatrix::zeros(2, 2)).len(), 2);
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(rational_kernel(&RatMatrix::identity(3)).is_empty());
    }

    #[test]
    fn single_row_kernel() {
        let m = RatMatrix::from_rows(&[[int(1), int(1)]]);
        let k = rational_kernel(&m);
        assert_eq!(k, vec![vec![int(-1), int(1)]]);
    }

    #[test]
    fn common_kernels() {
        assert!(stack_and_common_kernel(&[RatMatrix::identity(3)]).unwrap().is_empty());
        let z = RatMatrix::zeros(3, 3);
        assert_eq!(stack_and_common_kernel(&[z.clone(), z]).unwrap().len(), 3);
        let a = RatMatrix::from_rows(&[[int(1), int(0)], [int(0), int(0)]]);
        let b = RatMatrix::from_rows(&[[int(0), int(0)], [int(0), int(1)]]);
        assert!(stack_and_common_kernel(&[a, b]).unwrap().is_empty());
    }

    #[test]
    fn mismatched_columns_rejected() {
        let r = stack_and_common_kernel(&[RatMatrix::zeros(1, 2), RatMatrix::zeros(1, 3)]);
        assert_eq!(r, Err(Error::ColumnMismatch { expected: 2, found: 3 }));
    }
}
