//! Weyl groups as explicit sets of integer matrices.
//!
//! Elements are enumerated breadth first from the generators and stored
//! compactly: one flat byte arena holding every matrix row-major, indexed by
//! a hash table of element positions. The enumeration order is deterministic
//! (by word length, then by generator order), identity first.

use std::hash::BuildHasher;

use hashbrown::{DefaultHashBuilder, HashTable};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_linalg::IntMatrix;
use crate::root_data::{Family, RootDatum, RootSystemSpec};

pub const DEFAULT_GROUP_CAP: usize = 5_000_000;

/// Environment variable consulted for the group cap when no flag is given.
pub const GROUP_CAP_ENV: &str = "ROOTHK_GROUP_CAP";

/// Upper bound on the number of elements an exhaustive enumeration may hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupCap {
    max_elements: usize,
}

impl GroupCap {
    pub fn new(max_elements: usize) -> Option<Self> {
        (max_elements > 0).then_some(Self { max_elements })
    }

    pub fn max_elements(&self) -> usize {
        self.max_elements
    }

    pub fn admits(&self, order: &BigInt) -> bool {
        order.to_usize().is_some_and(|o| o <= self.max_elements)
    }
}

impl Default for GroupCap {
    fn default() -> Self {
        Self { max_elements: DEFAULT_GROUP_CAP }
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Classical order of the Weyl group.
pub fn group_order_formula(spec: RootSystemSpec) -> BigInt {
    let n = spec.rank();
    match spec.family() {
        Family::A => factorial(n + 1),
        Family::B | Family::C => (BigInt::from(1) << n) * factorial(n),
        Family::D => (BigInt::from(1) << (n - 1)) * factorial(n),
        Family::E => match n {
            6 => BigInt::from(51_840),
            7 => BigInt::from(2_903_040),
            _ => BigInt::from(696_729_600),
        },
        Family::F => BigInt::from(1152),
        Family::G => BigInt::from(12),
        Family::H => unreachable!("no H spec can be constructed"),
    }
}

/// Every element of a finite matrix group, `dim × dim` each, in one arena.
#[derive(Clone, Debug)]
pub struct ElementSet {
    dim: usize,
    data: Vec<i8>,
}

impl ElementSet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        if self.dim == 0 {
            0
        } else {
            self.data.len() / (self.dim * self.dim)
        }
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Row-major entries of element `i`.
    pub fn get(&self, i: usize) -> &[i8] {
        let s = self.dim * self.dim;
        &self.data[i * s..(i + 1) * s]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[i8]> + '_ {
        self.data.chunks_exact(self.dim * self.dim)
    }

    pub fn matrix(&self, i: usize) -> IntMatrix {
        compact_to_matrix(self.get(i), self.dim)
    }

    pub fn position(&self, m: &IntMatrix) -> Option<usize> {
        let key = matrix_to_compact(m).ok()?;
        self.iter().position(|e| e == key.as_slice())
    }
}

pub fn compact_to_matrix(e: &[i8], dim: usize) -> IntMatrix {
    IntMatrix::new(dim, dim, e.iter().map(|&x| BigInt::from(x)).collect()).expect("square element")
}

fn matrix_to_compact(m: &IntMatrix) -> Result<Vec<i8>> {
    m.entries().iter().map(|x| x.to_i8().ok_or(Error::EntryOverflow)).collect()
}

/// Sparse rows of a generator, used for fast left multiplication.
struct SparseGen {
    rows: Vec<Vec<(usize, i32)>>,
}

impl SparseGen {
    fn new(g: &IntMatrix) -> Result<Self> {
        let rows = (0..g.rows())
            .map(|i| {
                g.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| x.to_i32().map(|v| (k, v)).ok_or(Error::EntryOverflow))
                    .collect()
            })
            .collect::<Result<_>>()?;
        Ok(Self { rows })
    }

    /// `out = g · w`
    fn left_mul(&self, w: &[i8], dim: usize, out: &mut [i8]) -> Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            for j in 0..dim {
                let mut acc = 0i32;
                for &(k, v) in row {
                    acc += v * w[k * dim + j] as i32;
                }
                out[i * dim + j] = i8::try_from(acc).map_err(|_| Error::EntryOverflow)?;
            }
        }
        Ok(())
    }
}

/// Breadth-first closure of `generators` under left multiplication.
///
/// Fails with [`Error::GroupTooLarge`] as soon as more than `cap` elements
/// have been found.
pub fn enumerate_closure(generators: &[IntMatrix], dim: usize, cap: GroupCap) -> Result<ElementSet> {
    let gens = generators.iter().map(SparseGen::new).collect::<Result<Vec<_>>>()?;
    let size = dim * dim;
    let hasher = DefaultHashBuilder::default();
    let mut data: Vec<i8> = Vec::new();
    let mut table: HashTable<u32> = HashTable::new();

    let identity = matrix_to_compact(&IntMatrix::identity(dim))?;
    data.extend_from_slice(&identity);
    table.insert_unique(hasher.hash_one(&identity[..]), 0, |_| unreachable!());

    let mut scratch = vec![0i8; size];
    let mut head = 0usize;
    let mut count = 1usize;
    while head < count {
        for g in &gens {
            {
                let w = &data[head * size..(head + 1) * size];
                g.left_mul(w, dim, &mut scratch)?;
            }
            let h = hasher.hash_one(&scratch[..]);
            let found = table
                .find(h, |&idx| &data[idx as usize * size..(idx as usize + 1) * size] == scratch.as_slice())
                .is_some();
            if found {
                continue;
            }
            if count >= cap.max_elements() {
                return Err(Error::GroupTooLarge { order: BigInt::from(count + 1), cap: cap.max_elements() });
            }
            data.extend_from_slice(&scratch);
            let idx = u32::try_from(count).map_err(|_| Error::EntryOverflow)?;
            let data_ref = &data;
            table.insert_unique(h, idx, |&i| {
                hasher.hash_one(&data_ref[i as usize * size..(i as usize + 1) * size])
            });
            count += 1;
        }
        head += 1;
    }
    data.shrink_to_fit();
    Ok(ElementSet { dim, data })
}

/// Weyl group of a root datum, with simple reflections (root basis) as
/// generators and optionally every element.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    datum: RootDatum,
    generators: Vec<IntMatrix>,
    order: BigInt,
    elements: Option<ElementSet>,
}

impl WeylGroup {
    /// The group described by its generators only; no enumeration.
    pub fn generators_only(datum: &RootDatum) -> Self {
        Self {
            generators: datum.simple_reflections(),
            order: group_order_formula(datum.spec()),
            datum: datum.clone(),
            elements: None,
        }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    pub fn order(&self) -> &BigInt {
        &self.order
    }

    pub fn elements(&self) -> Option<&ElementSet> {
        self.elements.as_ref()
    }

    pub fn is_exhaustive(&self) -> bool {
        self.elements.is_some()
    }

    /// Every element as an exact matrix, identity first, in enumeration
    /// order.
    pub fn element_iter(&self) -> Result<impl ExactSizeIterator<Item = IntMatrix> + '_> {
        let els = self.elements.as_ref().ok_or(Error::NotEnumerated)?;
        Ok((0..els.len()).map(move |i| els.matrix(i)))
    }
}

/// Enumerates the Weyl group of `datum` if its order fits under `cap`.
pub fn generate_group(datum: &RootDatum, cap: GroupCap) -> Result<WeylGroup> {
    let mut g = WeylGroup::generators_only(datum);
    if !cap.admits(&g.order) {
        return Err(Error::GroupTooLarge { order: g.order.clone(), cap: cap.max_elements() });
    }
    g.elements = Some(enumerate_closure(&g.generators, datum.rank(), cap)?);
    Ok(g)
}

/// Result of checking that `W(B_n)` acts by signed permutations.
#[derive(Clone, Debug, Serialize)]
pub struct SignedPermutationReport {
    pub n: usize,
    pub element_count: usize,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub expected_count: BigInt,
    /// Elements that are diagonal with ±1 entries (the sign-change subgroup).
    pub sign_changes: usize,
    /// Elements that are permutation matrices.
    pub permutations: usize,
    pub all_signed_permutations: bool,
    pub passed: bool,
}

fn is_signed_permutation(e: &[i8], n: usize) -> bool {
    let rows_ok = (0..n).all(|i| {
        let row = &e[i * n..(i + 1) * n];
        row.iter().filter(|&&x| x != 0).count() == 1 && row.iter().all(|&x| x.abs() <= 1)
    });
    let cols_ok = (0..n).all(|j| (0..n).filter(|&i| e[i * n + j] != 0).count() == 1);
    rows_ok && cols_ok
}

/// Enumerates `W(B_n)` in the orthonormal coordinates of `Z^n` and checks
/// that it consists of exactly `2^n · n!` signed permutation matrices, with
/// `2^n` sign changes and `n!` permutations.
pub fn check_signed_permutation_structure(n: usize, cap: GroupCap) -> Result<SignedPermutationReport> {
    let spec = RootSystemSpec::new(Family::B, n)?;
    let expected = group_order_formula(spec);
    if !cap.admits(&expected) {
        return Err(Error::GroupTooLarge { order: expected, cap: cap.max_elements() });
    }
    let datum = RootDatum::new(spec);
    let gens = (1..=n)
        .map(|i| {
            datum
                .ambient_reflection(i)?
                .to_int()
                .ok_or_else(|| Error::LatticeNotPreserved("B_n reflection not integral".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let els = enumerate_closure(&gens, n, cap)?;
    let all = els.iter().all(|e| is_signed_permutation(e, n));
    let sign_changes = els
        .iter()
        .filter(|e| (0..n).all(|i| (0..n).all(|j| (i == j) || e[i * n + j] == 0)))
        .count();
    let permutations = els.iter().filter(|e| e.iter().all(|&x| x >= 0)).count();
    let count = els.len();
    let passed = all
        && BigInt::from(count) == expected
        && BigInt::from(sign_changes) == (BigInt::from(1) << n)
        && BigInt::from(permutations) == factorial(n);
    Ok(SignedPermutationReport {
        n,
        element_count: count,
        expected_count: expected,
        sign_changes,
        permutations,
        all_signed_permutations: all,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(f: Family, n: usize) -> RootDatum {
        RootDatum::new(RootSystemSpec::new(f, n).unwrap())
    }

    #[test]
    fn order_formula_values() {
        let o = |f, n| group_order_formula(RootSystemSpec::new(f, n).unwrap());
        assert_eq!(o(Family::A, 1), BigInt::from(2));
        assert_eq!(o(Family::B, 3), BigInt::from(48));
        assert_eq!(o(Family::A, 4), BigInt::from(120));
        assert_eq!(o(Family::D, 4), BigInt::from(192));
        assert_eq!(o(Family::E, 8), BigInt::from(696_729_600));
    }

    #[test]
    fn small_groups_match_formula() {
        assert_eq!(generate_group(&datum(Family::A, 2), GroupCap::default()).unwrap().elements().unwrap().len(), 6);
        assert_eq!(generate_group(&datum(Family::B, 2), GroupCap::default()).unwrap().elements().unwrap().len(), 8);
        for (f, n) in [(Family::A, 4), (Family::B, 3), (Family::C, 3), (Family::D, 4), (Family::G, 2), (Family::F, 4)] {
            let g = generate_group(&datum(f, n), GroupCap::default()).unwrap();
            assert_eq!(BigInt::from(g.elements().unwrap().len()), *g.order(), "{f}{n}");
        }
    }

    #[test]
    fn e8_exceeds_default_cap() {
        let r = generate_group(&datum(Family::E, 8), GroupCap::default());
        assert!(matches!(r, Err(Error::GroupTooLarge { .. })));
    }

    #[test]
    fn cap_is_enforced_during_closure() {
        let d = datum(Family::A, 3);
        let gens = d.simple_reflections();
        let r = enumerate_closure(&gens, 3, GroupCap::new(10).unwrap());
        assert!(matches!(r, Err(Error::GroupTooLarge { cap: 10, .. })));
        assert!(GroupCap::new(0).is_none());
    }

    #[test]
    fn element_iter_order() {
        let g = generate_group(&datum(Family::A, 1), GroupCap::default()).unwrap();
        let els: Vec<_> = g.element_iter().unwrap().collect();
        assert_eq!(els, vec![IntMatrix::from_rows(&[[1]]), IntMatrix::from_rows(&[[-1]])]);
        let g = generate_group(&datum(Family::A, 2), GroupCap::default()).unwrap();
        let els: Vec<_> = g.element_iter().unwrap().collect();
        assert_eq!(els.len(), 6);
        assert!(els[0].is_identity());
        let unenumerated = WeylGroup::generators_only(&datum(Family::A, 2));
        assert!(matches!(unenumerated.element_iter(), Err(Error::NotEnumerated)));
    }

    #[test]
    fn elements_preserve_gram_and_close_under_inverse() {
        let d = datum(Family::B, 3);
        let g = generate_group(&d, GroupCap::default()).unwrap();
        let gram = d.gram();
        let els = g.elements().unwrap();
        for w in g.element_iter().unwrap() {
            assert_eq!(&w.transpose().mul(gram).mul(&w), gram);
            let inv = w.unimodular_inverse().unwrap();
            assert!(els.position(&inv).is_some());
            for s in g.generators() {
                assert!(els.position(&s.mul(&w)).is_some());
            }
        }
    }

    #[test]
    fn signed_permutations_small() {
        let r = check_signed_permutation_structure(2, GroupCap::default()).unwrap();
        assert!(r.passed);
        assert_eq!(r.element_count, 8);
        let r = check_signed_permutation_structure(3, GroupCap::default()).unwrap();
        assert!(r.passed);
        assert_eq!(r.element_count, 48);
        let r = check_signed_permutation_structure(4, GroupCap::default()).unwrap();
        assert_eq!(r.element_count, 384);
        assert!(r.passed);
        assert!(matches!(
            check_signed_permutation_structure(4, GroupCap::new(100).unwrap()),
            Err(Error::GroupTooLarge { .. })
        ));
    }
}
