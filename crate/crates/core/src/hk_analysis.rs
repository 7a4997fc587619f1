//! Verdicts for quotients `X = (L ⊗ A) / W` with `A` an abelian surface.
//!
//! `A` enters only through its lattice `Λ_A ≅ Z⁴`: as a real torus
//! `L ⊗ A = (L ⊗ R⁴) / (L ⊗ Z⁴)`, and `w ∈ W` acts as `w ⊗ I₄`. Every quantity
//! computed here (dimensions, fixed components) depends only on that.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_linalg::{smith_normal_form, IntMatrix, RatMatrix};
use crate::invariant_theory::{
    invariant_dim, irreducibility_check, rep_double, rep_reflection, rep_wedge2, Representation,
};
use crate::lattice_tower::{invariant_intermediate_lattices, TowerBase, TowerReport, DEFAULT_SUBGROUP_CAP};
use crate::root_data::{Family, RootDatum, RootSystemSpec};
use crate::weyl::{enumerate_closure, group_order_formula, ElementSet, GroupCap};

/// Rank of a small integer matrix by fraction-free elimination with
/// primitive rows, in `i128`.
pub fn small_rank(m: &[i64], rows: usize, cols: usize) -> usize {
    let mut a: Vec<Vec<i128>> = m.chunks_exact(cols).take(rows).map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            if a[r][c] == 0 {
                continue;
            }
            let (x, y) = (a[rank][c], a[r][c]);
            let g = gcd(x, y);
            let (fx, fy) = (x / g, y / g);
            let mut content = 0;
            for j in c..cols {
                a[r][j] = a[r][j] * fx - a[rank][j] * fy;
                content = gcd(content, a[r][j]);
            }
            if content > 1 {
                for j in c..cols {
                    a[r][j] /= content;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `rank(w − I)` for a compact element.
fn rank_minus_identity(e: &[i8], n: usize) -> usize {
    let m: Vec<i64> = e
        .iter()
        .enumerate()
        .map(|(k, &x)| x as i64 - if k / n == k % n { 1 } else { 0 })
        .collect();
    small_rank(&m, n, n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Freeness {
    /// Every `w ≠ 1` has fixed-space codimension at least 2 on `V ⊕ V`.
    Verified { min_codim: usize, minimizers: usize, elements_checked: usize },
    /// Some `w ≠ 1` fixes a subspace of codimension below 2.
    Violated { min_codim: usize },
    /// The group is over the cap; no universal claim is made.
    SkippedGroupTooLarge {
        #[serde(serialize_with = "crate::report::ser_bigint")]
        order: BigInt,
        cap: usize,
    },
}

impl Freeness {
    pub fn is_verified(&self) -> bool {
        matches!(self, Freeness::Verified { .. })
    }

    pub fn min_codim(&self) -> Option<usize> {
        match self {
            Freeness::Verified { min_codim, .. } | Freeness::Violated { min_codim } => Some(*min_codim),
            Freeness::SkippedGroupTooLarge { .. } => None,
        }
    }
}

/// Minimum over `w ≠ 1` of `codim Fix(w | V ⊕ V) = 2·rank(w − I)`, over an
/// enumerated group.
pub fn freeness_over_elements(els: &ElementSet) -> Freeness {
    let n = els.dim();
    let (min, count) = (1..els.len())
        .into_par_iter()
        .map(|i| {
            let r = 2 * rank_minus_identity(els.get(i), n);
            (r, 1usize)
        })
        .reduce(
            || (usize::MAX, 0),
            |a, b| match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => a,
                std::cmp::Ordering::Greater => b,
                std::cmp::Ordering::Equal => (a.0, a.1 + b.1),
            },
        );
    if els.len() <= 1 {
        // Trivial group: vacuously free.
        return Freeness::Verified { min_codim: usize::MAX, minimizers: 0, elements_checked: 0 };
    }
    if min >= 2 {
        Freeness::Verified { min_codim: min, minimizers: count, elements_checked: els.len() - 1 }
    } else {
        Freeness::Violated { min_codim: min }
    }
}

/// Freeness in codimension 2 for the Weyl group of `datum`, enumerating it
/// when its order fits under `cap`; otherwise skipped.
pub fn freeness_codim_check(datum: &RootDatum, cap: GroupCap) -> Result<Freeness> {
    freeness_for_generators(&datum.simple_reflections(), datum.rank(), &group_order_formula(datum.spec()), cap)
}

/// Same check for arbitrary generators of a group of known order (e.g. `W`
/// written in the basis of an intermediate lattice).
pub fn freeness_for_generators(generators: &[IntMatrix], dim: usize, order: &BigInt, cap: GroupCap) -> Result<Freeness> {
    if !cap.admits(order) {
        return Ok(Freeness::SkippedGroupTooLarge { order: order.clone(), cap: cap.max_elements() });
    }
    let els = enumerate_closure(generators, dim, cap)?;
    Ok(freeness_over_elements(&els))
}

/// Fixed locus of `w ⊗ I₄` on the real torus `(L ⊗ R⁴)/(L ⊗ Z⁴)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedLocusEntry {
    pub element_id: Option<usize>,
    /// `dim ker(w − I)` on `V`.
    pub fix_dim_v: usize,
    /// `2 (n − fix_dim_v)`: complex codimension of the fixed locus.
    pub codim_doubled: usize,
    /// Torsion factors of `coker(w − I)`, each repeated four times.
    #[serde(serialize_with = "crate::report::ser_bigints")]
    pub component_invariant_factors: Vec<BigInt>,
    /// Number of connected components of the fixed locus.
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub component_count: BigInt,
}

/// Fixed locus of `w` (integral in the lattice basis) on `L ⊗ A`.
pub fn fixed_locus_on_abelian(w: &IntMatrix, element_id: Option<usize>) -> FixedLocusEntry {
    let n = w.rows();
    let shifted = w.sub(&IntMatrix::identity(n));
    let snf = smith_normal_form(&shifted);
    let rank = snf.rank();
    let torsion = snf.torsion_factors();
    let component_invariant_factors: Vec<BigInt> =
        torsion.iter().flat_map(|d| std::iter::repeat_n(d.clone(), 4)).collect();
    let component_count = snf.torsion_order().pow(4);
    FixedLocusEntry {
        element_id,
        fix_dim_v: n - rank,
        codim_doubled: 2 * rank,
        component_invariant_factors,
        component_count,
    }
}

/// Number of `a ∈ (Z/k)^{n·copies}` with `((w − I) ⊗ I_copies) a ≡ 0 mod k`,
/// i.e. the `k`-torsion points of the torus fixed by `w ⊗ I_copies`.
pub fn count_fixed_torsion_points(w: &IntMatrix, k: u64, copies: usize) -> u64 {
    let n = w.rows();
    let m: Vec<i64> = w
        .sub(&IntMatrix::identity(n))
        .to_i64_vec()
        .expect("small entries");
    let dim = n * copies;
    let total = (k as u128).pow(dim as u32);
    assert!(total <= 1 << 32, "enumeration too large");
    let k = k as i64;
    let mut a = vec![0i64; dim];
    let mut count = 0u64;
    for _ in 0..total {
        let fixed = (0..copies).all(|c| {
            (0..n).all(|i| (0..n).map(|j| m[i * n + j] * a[j * copies + c]).sum::<i64>().rem_euclid(k) == 0)
        });
        if fixed {
            count += 1;
        }
        for x in a.iter_mut() {
            *x += 1;
            if *x < k {
                break;
            }
            *x = 0;
        }
    }
    count
}

/// Component count and fixed dimension of `w ⊗ I₄` on `L ⊗ A`, found by
/// enumerating torsion points rather than by Smith form.
///
/// For `det(w − I) ≠ 0` every fixed point is `|det|`-torsion and the count
/// is exact. Otherwise the count `N(k) = c·k^f` is sampled at `k = 12` and
/// `k = 24` on a single copy, which is exact whenever the torsion exponent
/// of `coker(w − I)` divides 12 (true for every Weyl group of rank ≤ 4).
pub fn brute_force_fixed_components(w: &IntMatrix) -> Option<(BigInt, usize)> {
    let n = w.rows();
    let det = w.sub(&IntMatrix::identity(n)).determinant().abs();
    if !det.is_zero() {
        let k = det.to_u64()?;
        let full = (k as f64).powi(4 * n as i32) <= 4_194_304.0;
        let c = if full {
            BigInt::from(count_fixed_torsion_points(w, k, 4))
        } else {
            BigInt::from(count_fixed_torsion_points(w, k, 1)).pow(4)
        };
        return Some((c, 0));
    }
    if n > 4 {
        return None;
    }
    let n12 = count_fixed_torsion_points(w, 12, 1);
    let n24 = count_fixed_torsion_points(w, 24, 1);
    if !n24.is_multiple_of(n12) {
        return None;
    }
    let ratio = n24 / n12;
    if !ratio.is_power_of_two() {
        return None;
    }
    let f = ratio.trailing_zeros() as usize;
    let scale = 12u64.pow(f as u32);
    if !n12.is_multiple_of(scale) {
        return None;
    }
    Some((BigInt::from(n12 / scale).pow(4), f))
}

/// Dimension of the invariant 2-forms `(∧²(V ⊕ V))^W`.
pub fn symplectic_form_dim(rep: &Representation) -> usize {
    invariant_dim(&rep_wedge2(&rep_double(rep)))
}

/// Whether `(Λ ⊗ C²)/W` has a symplectic resolution, taken from the
/// published classification rather than computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Resolution {
    Resolvable,
    NotResolvable,
    OutOfScope,
}

impl fmt::Display for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Resolution::Resolvable => "resolvable",
            Resolution::NotResolvable => "not_resolvable",
            Resolution::OutOfScope => "out_of_scope",
        })
    }
}

/// Source of the resolution table.
pub const RESOLUTION_SOURCE: &str =
    "Ginzburg-Kaledin, Poisson deformations of symplectic quotient singularities (2004); Kuznetsov, Quiver varieties and Hilbert schemes (2007)";

pub fn resolution_verdict(family: Family) -> Resolution {
    match family {
        Family::A | Family::B | Family::C => Resolution::Resolvable,
        Family::D | Family::E | Family::F | Family::G => Resolution::NotResolvable,
        Family::H => Resolution::OutOfScope,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnownModel {
    pub tag: String,
    pub source: String,
}

pub const KUMMER_TAG: &str = "generalized Kummer K_n(A) (birational)";
pub const HILB_TAG: &str = "Sym^n(Kummer K), Hilb^n(K3) type (birational)";

/// Identification of `X` with a known hyperkähler model, when there is one:
/// `A_n` with a lattice of its tower `A_n ⊆ L ⊆ A_n*`, or the signed
/// permutation group on `Z^n`.
pub fn known_model(spec: RootSystemSpec, lattice_label: &str) -> Option<KnownModel> {
    let n = spec.rank();
    match spec.family() {
        Family::A => {
            let root = format!("A{n}");
            let in_tower = lattice_label == root
                || lattice_label == format!("{root}*")
                || lattice_label.starts_with(&format!("{root}["));
            in_tower.then(|| KnownModel {
                tag: KUMMER_TAG.to_string(),
                source: format!("X = ker(Sym^{}(A) -> A) via A_n* = Z^(n+1)/diag Z", n + 1),
            })
        }
        Family::B | Family::C if lattice_label == format!("Z{n}") => Some(KnownModel {
            tag: HILB_TAG.to_string(),
            source: "W(B_n) = (Z/2)^n x S_n acting on Z^n; (Z^n ⊗ A)/(Z/2)^n = K^n".to_string(),
        }),
        _ => None,
    }
}

/// Which member of the tower to analyze.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeSelector {
    Root,
    Dual,
    /// Position in the tower, sorted by index over the base.
    Index(usize),
}

impl FromStr for LatticeSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "root" => Ok(Self::Root),
            "dual" => Ok(Self::Dual),
            _ => s
                .strip_prefix("index:")
                .and_then(|k| k.parse().ok())
                .map(Self::Index)
                .ok_or_else(|| Error::InvalidSelector(s.to_string())),
        }
    }
}

impl fmt::Display for LatticeSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Root => f.write_str("root"),
            Self::Dual => f.write_str("dual"),
            Self::Index(k) => write!(f, "index:{k}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HKVerdict {
    #[serde(serialize_with = "crate::report::ser_display")]
    pub spec: RootSystemSpec,
    pub lattice_label: String,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub index_over_base: BigInt,
    #[serde(serialize_with = "crate::report::ser_intmatrix")]
    pub lattice_gram: IntMatrix,
    pub irreducible: bool,
    pub sym2_invariants: usize,
    pub wedge2_invariants: usize,
    pub symplectic_form_dim: usize,
    pub free_in_codim2: Freeness,
    pub resolution: Resolution,
    pub known_model: Option<KnownModel>,
}

impl HKVerdict {
    /// The two properties established for these quotients: a unique
    /// invariant 2-form and freeness in codimension 2 (when checked).
    pub fn checks_pass(&self) -> bool {
        self.irreducible
            && self.symplectic_form_dim == 1
            && !matches!(self.free_in_codim2, Freeness::Violated { .. })
    }
}

fn select(tower: &TowerReport, spec: RootSystemSpec, selector: LatticeSelector) -> Result<usize> {
    let disc = crate::lattice_tower::discriminant_group(
        &TowerBase::for_spec(spec)?.gram,
    )?;
    let root = match spec.family() {
        Family::B => {
            let label = format!("Z{}", spec.rank());
            tower.lattices.iter().position(|l| l.label == label).expect("Z^n is in the tower over D_n")
        }
        _ => 0,
    };
    match selector {
        LatticeSelector::Root => Ok(root),
        LatticeSelector::Dual => tower
            .dual_position(root, &disc)
            .ok_or_else(|| Error::InvalidSelector("dual not in tower".into())),
        LatticeSelector::Index(k) if k < tower.lattices.len() => Ok(k),
        LatticeSelector::Index(k) => Err(Error::SelectorOutOfRange { index: k, len: tower.lattices.len() }),
    }
}

/// Full verdict for `W` of type `spec` acting on the selected lattice.
///
/// For types B and C the lattices are those of the tower `D_n ⊆ Z^n ⊆ D_n*`;
/// `root` selects `Z^n` for B and `D_n` for C.
pub fn analyze(spec: RootSystemSpec, selector: LatticeSelector, cap: GroupCap) -> Result<HKVerdict> {
    let base = TowerBase::for_spec(spec)?;
    let tower = invariant_intermediate_lattices(&base, DEFAULT_SUBGROUP_CAP)?;
    let pos = select(&tower, spec, selector)?;
    let lattice = &tower.lattices[pos];

    // W in the basis of L.
    let basis = &lattice.basis;
    let basis_inv = basis.inverse().ok_or(Error::SingularGram)?;
    let gens = base
        .generators
        .iter()
        .map(|m| {
            basis_inv
                .mul(&m.to_rat())
                .mul(basis)
                .to_int()
                .ok_or_else(|| Error::LatticeNotPreserved(format!("{} is not W-stable", lattice.label)))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = spec.rank();
    let rep = Representation::new(
        format!("{}⊗Q", lattice.label),
        n,
        gens.iter().map(IntMatrix::to_rat).collect::<Vec<RatMatrix>>(),
    )?;
    let irreducible = irreducibility_check(&rep);
    let sym2 = invariant_dim(&crate::invariant_theory::rep_sym2(&rep));
    let wedge2 = invariant_dim(&rep_wedge2(&rep));
    let form_dim = symplectic_form_dim(&rep);
    let free = freeness_for_generators(&gens, n, &group_order_formula(spec), cap)?;
    Ok(HKVerdict {
        spec,
        lattice_label: lattice.label.clone(),
        index_over_base: lattice.index_over_root.clone(),
        lattice_gram: lattice.primitive_gram.clone(),
        irreducible,
        sym2_invariants: sym2,
        wedge2_invariants: wedge2,
        symplectic_form_dim: form_dim,
        free_in_codim2: free,
        resolution: resolution_verdict(spec.family()),
        known_model: known_model(spec, &lattice.label),
    })
}

/// Convenience: `symplectic_form_dim` of a root datum's reflection
/// representation.
pub fn symplectic_form_dim_of(datum: &RootDatum) -> usize {
    symplectic_form_dim(&rep_reflection(datum))
}
