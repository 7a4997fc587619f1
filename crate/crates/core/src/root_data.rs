//! Root systems of types A–G in standard ambient coordinates, their Cartan
//! matrices, simple reflections and root-lattice Gram forms.
//!
//! Cartan entries follow `a_ij = 2(α_i, α_j) / (α_i, α_i)`, so the simple
//! reflection `s_i` sends `α_j` to `α_j − a_ij α_i` and the Gram matrix
//! factors as `G = D·C` with `D = diag((α_i, α_i) / 2)`.
//!
//! Gram matrices are normalized so that short roots have squared length 2,
//! the smallest scaling that makes the root lattice even and integral.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_linalg::{int, rat, smith_normal_form, IntMatrix, RatMatrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    /// Noncrystallographic; only meaningful for the resolution lookup.
    H,
}

impl Family {
    pub const CRYSTALLOGRAPHIC: [Family; 7] =
        [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
            Family::H => 'H',
        }
    }

    pub fn admits_rank(self, n: usize) -> bool {
        match self {
            Family::A => n >= 1,
            Family::B | Family::C => n >= 2,
            Family::D => n >= 3,
            Family::E => (6..=8).contains(&n),
            Family::F => n == 4,
            Family::G => n == 2,
            Family::H => false,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            "H" => Ok(Family::H),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

/// A crystallographic root system type, e.g. `E8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemSpec {
    family: Family,
    rank: usize,
}

impl RootSystemSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if !family.admits_rank(rank) {
            return Err(Error::InvalidRank { family, rank });
        }
        Ok(Self { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Every supported type of rank at most `max_rank`, ordered by family
    /// then rank.
    pub fn supported_up_to(max_rank: usize) -> Vec<Self> {
        Family::CRYSTALLOGRAPHIC
            .iter()
            .flat_map(|&f| (1..=max_rank).filter_map(move |n| Self::new(f, n).ok()))
            .collect()
    }

    /// Number of roots.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, _) => n * (n + 1),
            (Family::B | Family::C, _) => 2 * n * n,
            (Family::D, _) => 2 * n * (n - 1),
            (Family::E, 6) => 72,
            (Family::E, 7) => 126,
            (Family::E, _) => 240,
            (Family::F, _) => 48,
            (Family::G, _) => 12,
            (Family::H, _) => unreachable!("no H spec can be constructed"),
        }
    }

    /// |det| of the Cartan matrix, the index of the root lattice in the
    /// weight lattice.
    pub fn cartan_determinant(&self) -> i64 {
        match self.family {
            Family::A => self.rank as i64 + 1,
            Family::B | Family::C => 2,
            Family::D => 4,
            Family::E => 9 - self.rank as i64,
            Family::F | Family::G => 1,
            Family::H => unreachable!("no H spec can be constructed"),
        }
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for RootSystemSpec {
    type Err = Error;

    /// Parses `"E8"`, `"b3"` and the like.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family: Family = chars.next().map(String::from).unwrap_or_default().parse()?;
        let rank = chars.as_str().parse().map_err(|_| Error::UnknownFamily(s.to_string()))?;
        Self::new(family, rank)
    }
}

/// Euclidean lattice given by a symmetric Gram matrix in some basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub gram: RatMatrix,
    pub label: String,
}

impl Lattice {
    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    /// `det` of the Gram matrix; the squared covolume.
    pub fn determinant(&self) -> Rational {
        self.gram.determinant()
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    spec: RootSystemSpec,
    cartan: IntMatrix,
    simple_roots: Vec<Vec<Rational>>,
    /// Coordinates of every root in the simple-root basis, positive roots
    /// first (by height), then their negatives.
    root_coords: Vec<Vec<i64>>,
    gram: IntMatrix,
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |s, (x, y)| s + x * y)
}

fn unit(dim: usize, i: usize) -> Vec<Rational> {
    (0..dim).map(|k| if k == i { int(1) } else { int(0) }).collect()
}

fn combo(terms: &[(i64, usize)], dim: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    for &(c, i) in terms {
        v[i] += int(c);
    }
    v
}

/// Simple roots in Bourbaki's ambient realization.
fn bourbaki_simple_roots(spec: RootSystemSpec) -> Vec<Vec<Rational>> {
    let n = spec.rank;
    let chain = |dim: usize, count: usize| -> Vec<Vec<Rational>> {
        (0..count).map(|i| combo(&[(1, i), (-1, i + 1)], dim)).collect()
    };
    match spec.family {
        Family::A => chain(n + 1, n),
        Family::B => {
            let mut r = chain(n, n - 1);
            r.push(unit(n, n - 1));
            r
        }
        Family::C => {
            let mut r = chain(n, n - 1);
            r.push(combo(&[(2, n - 1)], n));
            r
        }
        Family::D => {
            let mut r = chain(n, n - 1);
            r.push(combo(&[(1, n - 2), (1, n - 1)], n));
            r
        }
        Family::E => {
            let half = rat(1, 2);
            let mut a1 = vec![-half.clone(); 8];
            a1[0] = half.clone();
            a1[7] = half;
            let mut r = vec![a1, combo(&[(1, 0), (1, 1)], 8)];
            for i in 0..6 {
                r.push(combo(&[(-1, i), (1, i + 1)], 8));
            }
            r.truncate(n);
            r
        }
        Family::F => {
            let h = rat(1, 2);
            vec![
                combo(&[(1, 1), (-1, 2)], 4),
                combo(&[(1, 2), (-1, 3)], 4),
                unit(4, 3),
                vec![h.clone(), -h.clone(), -h.clone(), -h],
            ]
        }
        Family::G => vec![combo(&[(1, 0), (-1, 1)], 3), combo(&[(-2, 0), (1, 1), (1, 2)], 3)],
        Family::H => unreachable!(),
    }
}

/// Cartan matrix of a supported type.
pub fn cartan_matrix(spec: RootSystemSpec) -> IntMatrix {
    cartan_from_roots(&bourbaki_simple_roots(spec))
}

fn cartan_from_roots(roots: &[Vec<Rational>]) -> IntMatrix {
    let n = roots.len();
    IntMatrix::from_fn(n, n, |i, j| {
        let a = int(2) * dot(&roots[i], &roots[j]) / dot(&roots[i], &roots[i]);
        assert!(a.is_integer(), "non-integral Cartan entry");
        a.to_integer()
    })
}

impl RootDatum {
    pub fn new(spec: RootSystemSpec) -> Self {
        let simple_roots = bourbaki_simple_roots(spec);
        let n = spec.rank;
        let cartan = cartan_from_roots(&simple_roots);
        let shortest = simple_roots.iter().map(|a| dot(a, a)).min().expect("rank >= 1");
        let scale = int(2) / shortest;
        let gram = IntMatrix::from_fn(n, n, |i, j| {
            let g = &scale * dot(&simple_roots[i], &simple_roots[j]);
            assert!(g.is_integer(), "non-integral Gram entry");
            g.to_integer()
        });
        let cart: Vec<Vec<i64>> = (0..n)
            .map(|i| cartan.row(i).iter().map(|x| i64::try_from(x).expect("small Cartan entry")).collect())
            .collect();
        let root_coords = root_orbit(&cart);
        Self { spec, cartan, simple_roots, root_coords, gram }
    }

    pub fn from_parts(family: Family, rank: usize) -> Result<Self> {
        Ok(Self::new(RootSystemSpec::new(family, rank)?))
    }

    pub fn spec(&self) -> RootSystemSpec {
        self.spec
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn simple_roots(&self) -> &[Vec<Rational>] {
        &self.simple_roots
    }

    pub fn ambient_dim(&self) -> usize {
        self.simple_roots[0].len()
    }

    /// Root coordinates in the simple-root basis.
    pub fn root_coords(&self) -> &[Vec<i64>] {
        &self.root_coords
    }

    /// All roots as ambient vectors.
    pub fn all_roots(&self) -> Vec<Vec<Rational>> {
        self.root_coords.iter().map(|c| self.to_ambient_i64(c)).collect()
    }

    pub fn to_ambient_i64(&self, coords: &[i64]) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.ambient_dim()];
        for (c, a) in coords.iter().zip(&self.simple_roots) {
            if *c != 0 {
                for (x, y) in v.iter_mut().zip(a) {
                    *x += int(*c) * y;
                }
            }
        }
        v
    }

    /// Ambient coordinates of the simple roots as columns.
    pub fn basis_matrix(&self) -> RatMatrix {
        RatMatrix::from_fn(self.ambient_dim(), self.rank(), |i, j| self.simple_roots[j][i].clone())
    }

    /// Simple reflection `s_i` (1-based) in the simple-root basis. Columns
    /// are the images of the simple roots.
    pub fn simple_reflection(&self, i: usize) -> Result<IntMatrix> {
        let n = self.rank();
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, rank: n });
        }
        let k = i - 1;
        let mut s = IntMatrix::identity(n);
        for j in 0..n {
            let v = s.get(k, j) - self.cartan.get(k, j);
            s.set(k, j, v);
        }
        Ok(s)
    }

    pub fn simple_reflections(&self) -> Vec<IntMatrix> {
        (1..=self.rank()).map(|i| self.simple_reflection(i).expect("index in range")).collect()
    }

    /// Reflection in the simple root `α_i` (1-based) as an ambient matrix.
    pub fn ambient_reflection(&self, i: usize) -> Result<RatMatrix> {
        let n = self.rank();
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, rank: n });
        }
        Ok(reflection_matrix(&self.simple_roots[i - 1]))
    }

    pub fn root_lattice(&self) -> Lattice {
        Lattice { gram: self.gram.to_rat(), label: self.spec.to_string() }
    }
}

/// `I − 2 a aᵀ / (a, a)`.
pub fn reflection_matrix(a: &[Rational]) -> RatMatrix {
    let norm = dot(a, a);
    let d = a.len();
    RatMatrix::from_fn(d, d, |i, j| {
        let delta = if i == j { Rational::one() } else { Rational::zero() };
        delta - int(2) * &a[i] * &a[j] / &norm
    })
}

/// Closure of the simple roots under the simple reflections, in root
/// coordinates; positives sorted by height then lexicographically, followed
/// by the negatives in the same order.
fn root_orbit(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        if seen.insert(e.clone()) {
            queue.push(e);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let beta = queue[head].clone();
        head += 1;
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
            let mut img = beta.clone();
            img[i] -= pairing;
            if seen.insert(img.clone()) {
                queue.push(img);
            }
        }
    }
    let mut pos: Vec<Vec<i64>> = queue.into_iter().filter(|r| r.iter().all(|&c| c >= 0)).collect();
    pos.sort_by(|a, b| (a.iter().sum::<i64>(), a).cmp(&(b.iter().sum::<i64>(), b)));
    let neg: Vec<Vec<i64>> = pos.iter().map(|r| r.iter().map(|c| -c).collect()).collect();
    pos.extend(neg);
    pos
}

pub fn build_root_datum(spec: RootSystemSpec) -> RootDatum {
    RootDatum::new(spec)
}

/// Outcome of comparing the weight lattice of `A_n` with the model
/// `Z^{n+1} / diag Z`.
#[derive(Clone, Debug, Serialize)]
pub struct DualQuotientCheck {
    pub n: usize,
    /// Nontrivial invariant factors of the discriminant group of `A_n`.
    #[serde(serialize_with = "crate::report::ser_bigints")]
    pub invariant_factors: Vec<BigInt>,
    pub cyclic_of_order_n_plus_1: bool,
    /// Gram of the projections of `e_1..e_n` to the sum-zero hyperplane.
    #[serde(serialize_with = "crate::report::ser_ratmatrix")]
    pub model_gram: RatMatrix,
    /// Gram of `A_n*` in the fundamental-weight basis (inverse Cartan).
    #[serde(serialize_with = "crate::report::ser_ratmatrix")]
    pub dual_gram: RatMatrix,
    /// Unimodular change of basis taking the model basis to the
    /// fundamental weights.
    #[serde(serialize_with = "crate::report::ser_intmatrix")]
    pub basis_change: IntMatrix,
    pub grams_match: bool,
    pub passed: bool,
}

/// Checks that `A_n*/A_n` is cyclic of order `n + 1` and that the images of
/// the standard basis of `Z^{n+1}` in the sum-zero hyperplane span a lattice
/// isometric to `A_n*`.
pub fn dual_lattice_quotient_check(n: usize) -> Result<DualQuotientCheck> {
    let datum = RootDatum::new(RootSystemSpec::new(Family::A, n)?);
    let snf = smith_normal_form(datum.gram());
    let invariant_factors = snf.torsion_factors();
    let cyclic = invariant_factors == vec![BigInt::from(n + 1)];

    let m = (n + 1) as i64;
    let model_gram = RatMatrix::from_fn(n, n, |i, j| {
        let delta = if i == j { int(1) } else { int(0) };
        delta - rat(1, m)
    });
    // ω_j = p_1 + ... + p_j: upper-triangular ones.
    let basis_change = IntMatrix::from_fn(n, n, |k, j| if k <= j { BigInt::one() } else { BigInt::zero() });
    let t = basis_change.to_rat();
    let transported = t.transpose().mul(&model_gram).mul(&t);
    let dual_gram = datum.gram().to_rat().inverse().ok_or(Error::SingularGram)?;
    let grams_match = transported == dual_gram && basis_change.determinant().abs().is_one();
    Ok(DualQuotientCheck {
        n,
        invariant_factors,
        cyclic_of_order_n_plus_1: cyclic,
        model_gram,
        dual_gram,
        basis_change,
        grams_match,
        passed: cyclic && grams_match,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(f: Family, n: usize) -> RootSystemSpec {
        RootSystemSpec::new(f, n).unwrap()
    }

    #[test]
    fn admissible_ranks() {
        assert!(RootSystemSpec::new(Family::A, 0).is_err());
        assert!(RootSystemSpec::new(Family::B, 1).is_err());
        assert!(RootSystemSpec::new(Family::D, 2).is_err());
        assert!(RootSystemSpec::new(Family::E, 5).is_err());
        assert!(RootSystemSpec::new(Family::E, 9).is_err());
        assert!(RootSystemSpec::new(Family::F, 3).is_err());
        assert!(RootSystemSpec::new(Family::G, 3).is_err());
        assert!(RootSystemSpec::new(Family::H, 3).is_err());
        assert_eq!("e8".parse::<RootSystemSpec>().unwrap(), spec(Family::E, 8));
        assert!("X2".parse::<RootSystemSpec>().is_err());
    }

    #[test]
    fn small_cartan_matrices() {
        assert_eq!(cartan_matrix(spec(Family::A, 1)), IntMatrix::from_rows(&[[2]]));
        assert_eq!(cartan_matrix(spec(Family::A, 2)), IntMatrix::from_rows(&[[2, -1], [-1, 2]]));
        let g2 = cartan_matrix(spec(Family::G, 2));
        assert_eq!(g2.determinant(), BigInt::one());
        assert_eq!(g2.get(0, 1) * g2.get(1, 0), BigInt::from(3));
    }

    #[test]
    fn cartan_axioms_and_determinants() {
        for s in RootSystemSpec::supported_up_to(8) {
            let c = cartan_matrix(s);
            for i in 0..s.rank() {
                assert_eq!(*c.get(i, i), BigInt::from(2));
                for j in 0..s.rank() {
                    if i != j {
                        assert!(!c.get(i, j).is_positive(), "{s}");
                        assert_eq!(c.get(i, j).is_zero(), c.get(j, i).is_zero());
                    }
                }
            }
            assert_eq!(c.determinant(), BigInt::from(s.cartan_determinant()), "{s}");
        }
    }

    #[test]
    fn root_counts() {
        let d = RootDatum::new(spec(Family::A, 2));
        assert_eq!(d.root_coords().len(), 6);
        let d = RootDatum::new(spec(Family::D, 4));
        assert_eq!(d.root_coords().len(), 24);
        let d = RootDatum::new(spec(Family::E, 8));
        assert_eq!(d.root_coords().len(), 240);
        for s in RootSystemSpec::supported_up_to(8) {
            assert_eq!(RootDatum::new(s).root_coords().len(), s.root_count(), "{s}");
        }
    }

    #[test]
    fn gram_is_scaled_cartan() {
        for s in RootSystemSpec::supported_up_to(8) {
            let d = RootDatum::new(s);
            let g = d.gram();
            assert!(g.is_symmetric());
            assert!(g.to_rat().is_positive_definite());
            // G = D·C with D_ii = G_ii / 2
            for i in 0..s.rank() {
                for j in 0..s.rank() {
                    let half = g.get(i, i) / BigInt::from(2);
                    assert_eq!(*g.get(i, j), half * d.cartan().get(i, j), "{s}");
                }
            }
            let min_diag = (0..s.rank()).map(|i| g.get(i, i).clone()).min().unwrap();
            assert_eq!(min_diag, BigInt::from(2), "{s}");
        }
    }

    #[test]
    fn simple_reflection_examples() {
        let a1 = RootDatum::new(spec(Family::A, 1));
        assert_eq!(a1.simple_reflection(1).unwrap(), IntMatrix::from_rows(&[[-1]]));
        let a2 = RootDatum::new(spec(Family::A, 2));
        assert_eq!(a2.simple_reflection(1).unwrap(), IntMatrix::from_rows(&[[-1, 1], [0, 1]]));
        assert!(matches!(a2.simple_reflection(0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(a2.simple_reflection(3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn simple_reflections_are_gram_isometries() {
        for s in RootSystemSpec::supported_up_to(8) {
            let d = RootDatum::new(s);
            let g = d.gram();
            for r in d.simple_reflections() {
                let id = IntMatrix::identity(s.rank());
                assert!(r.mul(&r).is_identity());
                assert_eq!(&r.transpose().mul(g).mul(&r), g);
                assert_eq!(r.sub(&id).rank(), 1);
            }
        }
    }

    #[test]
    fn ambient_reflections_agree_with_root_basis() {
        for s in [spec(Family::G, 2), spec(Family::F, 4), spec(Family::B, 3), spec(Family::E, 6)] {
            let d = RootDatum::new(s);
            let b = d.basis_matrix();
            for i in 1..=s.rank() {
                let amb = d.ambient_reflection(i).unwrap();
                let lhs = amb.mul(&b);
                let rhs = b.mul(&d.simple_reflection(i).unwrap().to_rat());
                assert_eq!(lhs, rhs, "{s} s{i}");
            }
        }
    }

    #[test]
    fn roots_in_ambient_have_expected_lengths() {
        let d = RootDatum::new(spec(Family::D, 4));
        for r in d.all_roots() {
            assert_eq!(dot(&r, &r), int(2));
            assert_eq!(r.iter().filter(|x| !x.is_zero()).count(), 2);
        }
        let g2 = RootDatum::new(spec(Family::G, 2));
        let lens: HashSet<Rational> = g2.all_roots().iter().map(|r| dot(r, r)).collect();
        assert_eq!(lens, [int(2), int(6)].into_iter().collect());
    }

    #[test]
    fn dual_quotient_small_cases() {
        let c = dual_lattice_quotient_check(1).unwrap();
        assert_eq!(c.invariant_factors, vec![BigInt::from(2)]);
        assert_eq!(c.model_gram, RatMatrix::from_rows(&[[rat(1, 2)]]));
        assert!(c.passed);
        assert_eq!(dual_lattice_quotient_check(2).unwrap().invariant_factors, vec![BigInt::from(3)]);
        assert_eq!(dual_lattice_quotient_check(3).unwrap().invariant_factors, vec![BigInt::from(4)]);
        assert!(dual_lattice_quotient_check(0).is_err());
    }
}
