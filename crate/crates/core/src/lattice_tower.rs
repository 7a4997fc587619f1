//! Dual lattices, discriminant groups, and the `W`-stable lattices `L` with
//! `Λ ⊆ L ⊆ Λ*`.
//!
//! Coordinates: a base lattice `Λ` comes with an integral Gram matrix `G` in
//! some basis. A vector `x` of `Λ ⊗ Q` (in that basis) lies in `Λ*` iff
//! `y = G x` is integral, so `Λ*/Λ ≅ Z^n / G Z^n`. With `U G V = D` the Smith
//! form, an element `y` is recorded by its residues `(U y)_i mod d_i` for the
//! nontrivial factors `d_i`.
//!
//! Intermediate lattices correspond to subgroups of `Λ*/Λ`; a lattice is
//! `W`-stable iff its subgroup is stable under the induced action.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_linalg::{hermite_normal_form, int, smith_normal_form, IntMatrix, RatMatrix, Rational};
use crate::root_data::{Family, Lattice, RootDatum, RootSystemSpec};

pub const DEFAULT_SUBGROUP_CAP: usize = 1_000_000;

/// `Λ*` with Gram `G⁻¹` in the dual basis.
pub fn dual_lattice(datum: &RootDatum) -> Result<Lattice> {
    let gram = datum.gram().to_rat().inverse().ok_or(Error::SingularGram)?;
    Ok(Lattice { gram, label: format!("{}*", datum.spec()) })
}

/// The finite abelian group `Λ*/Λ`.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    /// Nontrivial invariant factors, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
    /// Dual-basis coordinates (`y = G x`) of one lift per cyclic factor.
    pub generator_lifts: Vec<Vec<BigInt>>,
    pub order: BigInt,
    gram: IntMatrix,
    /// Rows of the Smith left transform belonging to nontrivial factors.
    residue_rows: Vec<Vec<BigInt>>,
}

impl DiscriminantGroup {
    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    /// Residues of a dual-basis vector.
    pub fn residues(&self, y: &[BigInt]) -> Vec<BigInt> {
        self.residue_rows
            .iter()
            .zip(&self.invariant_factors)
            .map(|(row, d)| row.iter().zip(y).map(|(a, b)| a * b).sum::<BigInt>().mod_floor(d))
            .collect()
    }

    /// A dual-basis lift of a residue vector.
    pub fn lift(&self, r: &[BigInt]) -> Vec<BigInt> {
        let n = self.gram.rows();
        let mut y = vec![BigInt::zero(); n];
        for (c, l) in r.iter().zip(&self.generator_lifts) {
            for (yi, li) in y.iter_mut().zip(l) {
                *yi += c * li;
            }
        }
        y
    }

    /// Value of the discriminant bilinear form `yᵀ G⁻¹ y' mod 1`.
    pub fn pairing(&self, a: &[BigInt], b: &[BigInt]) -> Rational {
        let ginv = self.gram.to_rat().inverse().expect("nonsingular");
        let ya: Vec<Rational> = self.lift(a).into_iter().map(Rational::from_integer).collect();
        let yb: Vec<Rational> = self.lift(b).into_iter().map(Rational::from_integer).collect();
        let v = ginv.mul_vec(&yb);
        let s = ya.iter().zip(&v).fold(Rational::zero(), |s, (x, y)| s + x * y);
        &s - s.floor()
    }

    fn radices(&self) -> Result<Vec<usize>> {
        self.invariant_factors.iter().map(|d| d.to_usize().ok_or(Error::EntryOverflow)).collect()
    }
}

/// `Λ*/Λ` from the Smith form of the Gram matrix.
pub fn discriminant_group(gram: &IntMatrix) -> Result<DiscriminantGroup> {
    let det = gram.determinant();
    if det.is_zero() {
        return Err(Error::SingularGram);
    }
    let snf = smith_normal_form(gram);
    let uinv = snf.left.unimodular_inverse().expect("Smith transforms are unimodular");
    let mut invariant_factors = Vec::new();
    let mut generator_lifts = Vec::new();
    let mut residue_rows = Vec::new();
    for (i, d) in snf.diag.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        invariant_factors.push(d.clone());
        generator_lifts.push(uinv.column(i));
        residue_rows.push(snf.left.row(i).to_vec());
    }
    Ok(DiscriminantGroup { invariant_factors, generator_lifts, order: det.abs(), gram: gram.clone(), residue_rows })
}

pub fn discriminant_group_of(datum: &RootDatum) -> Result<DiscriminantGroup> {
    discriminant_group(datum.gram())
}

/// Automorphism of `Λ*/Λ` induced by a lattice isometry, given by the
/// images of the cyclic generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantAutomorphism {
    pub images: Vec<Vec<BigInt>>,
    factors: Vec<BigInt>,
}

impl DiscriminantAutomorphism {
    pub fn apply(&self, r: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.factors.len()];
        for (c, img) in r.iter().zip(&self.images) {
            for (o, x) in out.iter_mut().zip(img) {
                *o += c * x;
            }
        }
        out.iter().zip(&self.factors).map(|(o, d)| o.mod_floor(d)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, img)| {
            img.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
        })
    }

    /// The action as a permutation of the elements listed in `elements`.
    pub fn permutation(&self, elements: &[Vec<BigInt>]) -> Vec<usize> {
        let pos: HashMap<&Vec<BigInt>, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        elements.iter().map(|e| pos[&self.apply(e)]).collect()
    }
}

/// The maps induced on `Λ*/Λ` by lattice isometries `M` (given in the basis
/// of `Λ`). On dual coordinates `M` acts as `M⁻ᵀ`.
pub fn induced_discriminant_action(
    generators: &[IntMatrix],
    disc: &DiscriminantGroup,
) -> Result<Vec<DiscriminantAutomorphism>> {
    let g = disc.gram();
    generators
        .iter()
        .enumerate()
        .map(|(k, m)| {
            if &m.transpose().mul(g).mul(m) != g {
                return Err(Error::LatticeNotPreserved(format!("generator {k} does not preserve the Gram form")));
            }
            let inv_t = m
                .unimodular_inverse()
                .ok_or_else(|| Error::LatticeNotPreserved(format!("generator {k} is not unimodular")))?
                .transpose();
            let images = disc.generator_lifts.iter().map(|y| disc.residues(&inv_t.mul_vec(y))).collect();
            Ok(DiscriminantAutomorphism { images, factors: disc.invariant_factors.clone() })
        })
        .collect()
}

/// Every element of a finite abelian group with the given cyclic factors,
/// in mixed-radix order (last coordinate fastest).
fn all_elements(radices: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &r in radices {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..r).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

fn encode(e: &[usize], radices: &[usize]) -> usize {
    e.iter().zip(radices).fold(0, |acc, (x, r)| acc * r + x)
}

/// Every subgroup of the group with the given cyclic factors, each as the
/// sorted list of its element codes. Grows subgroups one generator at a
/// time, deduplicating.
fn all_subgroups(radices: &[usize]) -> Vec<Vec<usize>> {
    let elements = all_elements(radices);
    let add = |a: &[usize], b: &[usize]| -> Vec<usize> {
        a.iter().zip(b).zip(radices).map(|((x, y), r)| (x + y) % r).collect()
    };
    let closure = |seed: &BTreeSet<usize>, g: usize| -> BTreeSet<usize> {
        let mut set = seed.clone();
        let mut frontier: Vec<usize> = seed.iter().copied().collect();
        let gv = &elements[g];
        while let Some(h) = frontier.pop() {
            let s = encode(&add(&elements[h], gv), radices);
            if set.insert(s) {
                frontier.push(s);
            }
        }
        // Closed under adding g; since g has finite order this is <H, g>.
        set
    };
    let trivial: BTreeSet<usize> = [0].into_iter().collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert(trivial.iter().copied().collect());
    let mut queue = vec![trivial];
    let mut head = 0;
    while head < queue.len() {
        let h = queue[head].clone();
        head += 1;
        for g in 0..elements.len() {
            if h.contains(&g) {
                continue;
            }
            let bigger = closure(&h, g);
            let key: Vec<usize> = bigger.iter().copied().collect();
            if seen.insert(key) {
                queue.push(bigger);
            }
        }
    }
    seen.into_iter().collect()
}

/// What the tower is built over: `Λ`, its Gram matrix, the group acting on
/// it, and optionally an ambient realization used for naming.
#[derive(Clone, Debug)]
pub struct TowerBase {
    pub label: String,
    pub spec: Option<RootSystemSpec>,
    pub gram: IntMatrix,
    /// Isometries of `Λ` in its basis.
    pub generators: Vec<IntMatrix>,
    /// Ambient coordinates of the basis of `Λ`, as columns.
    pub ambient: Option<RatMatrix>,
    naming: Naming,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Naming {
    Generic,
    TypeA(usize),
    TypeD(usize),
}

impl TowerBase {
    /// The root lattice of `datum` under its own Weyl group.
    pub fn root_lattice(datum: &RootDatum) -> Self {
        let spec = datum.spec();
        let naming = match spec.family() {
            Family::A => Naming::TypeA(spec.rank()),
            Family::D => Naming::TypeD(spec.rank()),
            _ => Naming::Generic,
        };
        Self {
            label: spec.to_string(),
            spec: Some(spec),
            gram: datum.gram().clone(),
            generators: datum.simple_reflections(),
            ambient: Some(datum.basis_matrix()),
            naming,
        }
    }

    /// `D_n ⊂ Z^n` (basis `e_i − e_{i+1}`, `e_{n−1} + e_n`) under the
    /// signed permutation group `W(B_n) = W(C_n)`. Defined for `n ≥ 2`.
    pub fn d_lattice_under_signed_permutations(n: usize) -> Result<Self> {
        let spec = RootSystemSpec::new(Family::B, n)?;
        let b = RootDatum::new(spec);
        let basis = RatMatrix::from_fn(n, n, |i, j| {
            let v = if j + 1 < n {
                if i == j {
                    1
                } else if i == j + 1 {
                    -1
                } else {
                    0
                }
            } else if i + 2 == n || i + 1 == n {
                1
            } else {
                0
            };
            int(v)
        });
        let basis_inv = basis.inverse().ok_or(Error::SingularGram)?;
        let gram = basis.transpose().mul(&basis).to_int().expect("integral");
        let generators = (1..=n)
            .map(|i| {
                let r = b.ambient_reflection(i)?;
                basis_inv
                    .mul(&r)
                    .mul(&basis)
                    .to_int()
                    .ok_or_else(|| Error::LatticeNotPreserved(format!("s{i} of B{n} does not preserve D{n}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            label: format!("D{n}"),
            spec: Some(spec),
            gram,
            generators,
            ambient: Some(basis),
            naming: Naming::TypeD(n),
        })
    }

    /// The natural tower for a type: over the root lattice for A, D, E, F,
    /// G; over `D_n` for B and C, whose Weyl group is the full signed
    /// permutation group.
    pub fn for_spec(spec: RootSystemSpec) -> Result<Self> {
        match spec.family() {
            Family::B | Family::C => {
                let mut base = Self::d_lattice_under_signed_permutations(spec.rank())?;
                base.spec = Some(spec);
                Ok(base)
            }
            _ => Ok(Self::root_lattice(&RootDatum::new(spec))),
        }
    }

    /// Arbitrary `Λ` and generators.
    pub fn custom(label: impl Into<String>, gram: IntMatrix, generators: Vec<IntMatrix>) -> Self {
        Self { label: label.into(), spec: None, gram, generators, ambient: None, naming: Naming::Generic }
    }
}

/// One `W`-stable lattice `Λ ⊆ L ⊆ Λ*`.
#[derive(Clone, Debug, Serialize)]
pub struct IntermediateLattice {
    pub label: String,
    /// Residue vectors generating the subgroup `L/Λ`.
    #[serde(serialize_with = "crate::report::ser_bigint_rows")]
    pub subgroup_generators: Vec<Vec<BigInt>>,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub index_over_root: BigInt,
    /// Basis of `L` as columns, in the coordinates of `Λ`.
    #[serde(serialize_with = "crate::report::ser_ratmatrix")]
    pub basis: RatMatrix,
    /// Gram matrix of `L` in that basis, inherited from `Λ ⊗ Q`.
    #[serde(serialize_with = "crate::report::ser_ratmatrix")]
    pub gram: RatMatrix,
    /// `gram` rescaled to integral entries of content 1.
    #[serde(serialize_with = "crate::report::ser_intmatrix")]
    pub primitive_gram: IntMatrix,
    #[serde(skip)]
    pub(crate) members: Vec<usize>,
}

/// All `W`-stable intermediate lattices of a base, sorted by index.
#[derive(Clone, Debug, Serialize)]
pub struct TowerReport {
    pub base_label: String,
    #[serde(serialize_with = "crate::report::ser_opt_display")]
    pub spec: Option<RootSystemSpec>,
    #[serde(serialize_with = "crate::report::ser_bigints")]
    pub discriminant_factors: Vec<BigInt>,
    pub subgroup_count: usize,
    pub lattices: Vec<IntermediateLattice>,
    pub classes: RescalingPartition,
    #[serde(skip)]
    pub(crate) radices: Vec<usize>,
}

impl TowerReport {
    pub fn labels(&self) -> Vec<&str> {
        self.lattices.iter().map(|l| l.label.as_str()).collect()
    }

    pub fn by_label(&self, label: &str) -> Option<&IntermediateLattice> {
        self.lattices.iter().find(|l| l.label == label)
    }

    /// Position in the tower of the lattice dual to `lattices[i]`, via the
    /// annihilator of its subgroup under the discriminant form.
    pub fn dual_position(&self, i: usize, disc: &DiscriminantGroup) -> Option<usize> {
        let elements = all_elements(&self.radices);
        let as_big = |e: &Vec<usize>| e.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let members = &self.lattices[i].members;
        let annihilator: Vec<usize> = (0..elements.len())
            .filter(|&x| members.iter().all(|&h| disc.pairing(&as_big(&elements[x]), &as_big(&elements[h])).is_zero()))
            .collect();
        self.lattices.iter().position(|l| l.members == annihilator)
    }
}

fn lattice_label(base: &TowerBase, index: &BigInt, order: &BigInt, ambient_basis: Option<&RatMatrix>) -> String {
    let n = base.gram.rows();
    let name = &base.label;
    if index.is_one() {
        return name.clone();
    }
    if index == order {
        return format!("{name}*");
    }
    match base.naming {
        Naming::TypeA(_) | Naming::Generic => format!("{name}[{index}]"),
        Naming::TypeD(_) => {
            let Some(amb) = ambient_basis else {
                return format!("{name}[{index}]");
            };
            // Index-2 lattices over D_n: Z^n or a half-spin lattice.
            if amb.is_integral() {
                return format!("Z{n}");
            }
            let half = vec![Rational::new(1.into(), 2.into()); n];
            let inv = amb.inverse().expect("basis");
            if inv.mul_vec(&half).iter().all(|x| x.is_integer()) {
                format!("{name}+")
            } else {
                format!("{name}-")
            }
        }
    }
}

/// Enumerates every subgroup of `Λ*/Λ` stable under the induced action of
/// the base generators and lifts each to a lattice.
pub fn invariant_intermediate_lattices(base: &TowerBase, cap: usize) -> Result<TowerReport> {
    let disc = discriminant_group(&base.gram)?;
    if disc.order.to_usize().is_none_or(|o| o > cap) {
        return Err(Error::DiscriminantTooLarge { order: disc.order.clone(), cap });
    }
    let radices = disc.radices()?;
    let action = induced_discriminant_action(&base.generators, &disc)?;
    let elements = all_elements(&radices);
    let big: Vec<Vec<BigInt>> = elements.iter().map(|e| e.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let perms: Vec<Vec<usize>> = action.iter().map(|a| a.permutation(&big)).collect();
    let subgroups = all_subgroups(&radices);
    let subgroup_count = subgroups.len();

    let n = base.gram.rows();
    let gram_q = base.gram.to_rat();
    let gram_inv = gram_q.inverse().ok_or(Error::SingularGram)?;
    let mut lattices = Vec::new();
    for members in subgroups {
        let stable = perms.iter().all(|p| members.iter().all(|&h| members.binary_search(&p[h]).is_ok()));
        if !stable {
            continue;
        }
        // Generators of L in dual coordinates: columns of G and member lifts.
        let mut rows: Vec<Vec<BigInt>> = (0..n).map(|j| base.gram.column(j)).collect();
        rows.extend(members.iter().skip(1).map(|&h| disc.lift(&big[h])));
        let gen_matrix = IntMatrix::new(rows.len(), n, rows.concat()).expect("shape");
        let hnf = hermite_normal_form(&gen_matrix);
        let by = IntMatrix::new(n, n, hnf.basis_rows().concat()).expect("full rank");
        let basis = gram_inv.mul(&by.transpose().to_rat());
        let gram = basis.transpose().mul(&gram_q).mul(&basis);
        let (primitive_gram, _) = gram.primitive_integral().ok_or(Error::SingularGram)?;
        let index = BigInt::from(members.len());
        debug_assert_eq!(Rational::from_integer(base.gram.determinant().abs()) / by.determinant().abs(), Rational::from_integer(index.clone()));
        let ambient_basis = base.ambient.as_ref().map(|a| a.mul(&basis));
        let label = lattice_label(base, &index, &disc.order, ambient_basis.as_ref());
        let subgroup_generators = minimal_generators(&members, &elements, &radices)
            .into_iter()
            .map(|g| big[g].clone())
            .collect();
        lattices.push(IntermediateLattice {
            label,
            subgroup_generators,
            index_over_root: index,
            basis,
            gram,
            primitive_gram,
            members,
        });
    }
    lattices.sort_by(|a, b| (&a.index_over_root, &a.label, &a.members).cmp(&(&b.index_over_root, &b.label, &b.members)));
    disambiguate_labels(&mut lattices);
    let entries: Vec<(String, RatMatrix)> = lattices.iter().map(|l| (l.label.clone(), l.gram.clone())).collect();
    let classes = classify_up_to_rescaling(&entries);
    Ok(TowerReport {
        base_label: base.label.clone(),
        spec: base.spec,
        discriminant_factors: disc.invariant_factors.clone(),
        subgroup_count,
        lattices,
        classes,
        radices,
    })
}

/// Convenience form taking a root datum and arbitrary isometries of its
/// root lattice (in the simple-root basis).
pub fn invariant_intermediate_lattices_for(
    datum: &RootDatum,
    generators: Vec<IntMatrix>,
    cap: usize,
) -> Result<TowerReport> {
    let mut base = TowerBase::root_lattice(datum);
    base.generators = generators;
    invariant_intermediate_lattices(&base, cap)
}

fn minimal_generators(members: &[usize], elements: &[Vec<usize>], radices: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span: BTreeSet<usize> = [0].into_iter().collect();
    for &m in members {
        if span.contains(&m) {
            continue;
        }
        gens.push(m);
        let mut frontier: Vec<usize> = span.iter().copied().collect();
        while let Some(h) = frontier.pop() {
            let s: Vec<usize> =
                elements[h].iter().zip(&elements[m]).zip(radices).map(|((x, y), r)| (x + y) % r).collect();
            let code = encode(&s, radices);
            if span.insert(code) {
                frontier.push(code);
            }
        }
    }
    gens
}

fn disambiguate_labels(lattices: &mut [IntermediateLattice]) {
    let mut counts: HashMap<String, usize> = HashMap::new();
    for l in lattices.iter() {
        *counts.entry(l.label.clone()).or_default() += 1;
    }
    let mut seen: HashMap<String, usize> = HashMap::new();
    for l in lattices.iter_mut() {
        if counts[&l.label] > 1 {
            let k = seen.entry(l.label.clone()).or_default();
            *k += 1;
            l.label = format!("{}#{}", l.label, k);
        }
    }
}

/// Checks by direct computation that every generator maps `L` into itself:
/// `basis⁻¹ · M · basis` must be integral.
pub fn is_stable(lattice: &IntermediateLattice, generators: &[IntMatrix]) -> bool {
    let Some(inv) = lattice.basis.inverse() else {
        return false;
    };
    generators.iter().all(|m| inv.mul(&m.to_rat()).mul(&lattice.basis).is_integral())
}

/// Outcome of comparing two Gram matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    /// `Pᵀ G₁ P = G₂` for the given unimodular `P`.
    Equal(IntMatrix),
    Distinct(&'static str),
    Inconclusive,
}

const SEARCH_BUDGET: usize = 2_000_000;

/// Isometry test for positive definite forms, made integral by a common
/// scale. Cheap invariants first, then a bounded backtracking search for a
/// basis of the first lattice realizing the second Gram matrix.
pub fn isometry(g1: &RatMatrix, g2: &RatMatrix) -> Equivalence {
    if g1.rows() != g2.rows() {
        return Equivalence::Distinct("rank");
    }
    let l = g1.denominator_lcm().lcm(&g2.denominator_lcm());
    let scale = Rational::from_integer(l);
    let (a, b) = (
        g1.scale(&scale).to_int().expect("integral after scaling"),
        g2.scale(&scale).to_int().expect("integral after scaling"),
    );
    if a.determinant() != b.determinant() {
        return Equivalence::Distinct("determinant");
    }
    if smith_normal_form(&a).diag != smith_normal_form(&b).diag {
        return Equivalence::Distinct("invariant factors");
    }
    let even = |m: &IntMatrix| (0..m.rows()).all(|i| m.get(i, i).is_even());
    if even(&a) != even(&b) {
        return Equivalence::Distinct("parity");
    }
    match find_isometry(&a, &b, SEARCH_BUDGET) {
        Search::Found(p) => Equivalence::Equal(p),
        Search::Exhausted => Equivalence::Distinct("no isometry exists"),
        Search::OutOfBudget => Equivalence::Inconclusive,
    }
}

enum Search {
    Found(IntMatrix),
    Exhausted,
    OutOfBudget,
}

/// LDLᵀ-style data for enumerating vectors of a given norm: `Q(x) = Σ d_i
/// (x_i + Σ_{j>i} mu[i][j] x_j)²`.
struct Quadratic {
    d: Vec<Rational>,
    mu: Vec<Vec<Rational>>,
}

impl Quadratic {
    fn new(g: &IntMatrix) -> Self {
        let n = g.rows();
        let mut q: Vec<Vec<Rational>> = (0..n).map(|i| g.row(i).iter().cloned().map(Rational::from_integer).collect()).collect();
        let mut d = vec![Rational::zero(); n];
        let mut mu = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            d[i] = q[i][i].clone();
            for j in i + 1..n {
                mu[i][j] = &q[i][j] / &d[i];
            }
            for k in i + 1..n {
                for l in i + 1..n {
                    let v = &mu[i][k] * &q[i][l];
                    q[k][l] -= v;
                }
            }
        }
        Self { d, mu }
    }

    /// Every integral `x` with `Q(x) = target`.
    fn vectors_of_norm(&self, target: &BigInt, budget: &mut usize) -> Option<Vec<Vec<BigInt>>> {
        let n = self.d.len();
        let mut out = Vec::new();
        let mut x = vec![BigInt::zero(); n];
        let t = Rational::from_integer(target.clone());
        if !self.recurse(n, &t, &mut x, &mut out, budget) {
            return None;
        }
        Some(out)
    }

    fn recurse(&self, k: usize, rem: &Rational, x: &mut Vec<BigInt>, out: &mut Vec<Vec<BigInt>>, budget: &mut usize) -> bool {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        if k == 0 {
            if rem.is_zero() {
                out.push(x.clone());
            }
            return true;
        }
        let i = k - 1;
        let c: Rational = (i + 1..x.len()).fold(Rational::zero(), |s, j| s + &self.mu[i][j] * Rational::from_integer(x[j].clone()));
        let bound = rem / &self.d[i];
        let fits = |t: &BigInt| {
            let v = Rational::from_integer(t.clone()) + &c;
            &v * &v <= bound
        };
        let start = (-&c).round().to_integer();
        let mut t = start.clone();
        while fits(&t) {
            if !self.try_value(i, &t, &c, rem, x, out, budget) {
                return false;
            }
            t += 1;
        }
        let mut t = start - 1;
        while fits(&t) {
            if !self.try_value(i, &t, &c, rem, x, out, budget) {
                return false;
            }
            t -= 1;
        }
        true
    }

    #[allow(clippy::too_many_arguments)]
    fn try_value(&self, i: usize, t: &BigInt, c: &Rational, rem: &Rational, x: &mut Vec<BigInt>, out: &mut Vec<Vec<BigInt>>, budget: &mut usize) -> bool {
        let v = Rational::from_integer(t.clone()) + c;
        let r = rem - &self.d[i] * &v * &v;
        x[i] = t.clone();
        let ok = self.recurse(i, &r, x, out, budget);
        x[i] = BigInt::zero();
        ok
    }
}

fn find_isometry(a: &IntMatrix, b: &IntMatrix, budget: usize) -> Search {
    let n = a.rows();
    let q = Quadratic::new(a);
    let mut budget = budget;
    let mut candidates = Vec::with_capacity(n);
    for j in 0..n {
        match q.vectors_of_norm(b.get(j, j), &mut budget) {
            Some(v) => candidates.push(v),
            None => return Search::OutOfBudget,
        }
    }
    let mut chosen: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    let inner = |u: &[BigInt], v: &[BigInt]| -> BigInt { a.mul_vec(v).iter().zip(u).map(|(x, y)| x * y).sum() };
    fn go(
        j: usize,
        n: usize,
        candidates: &[Vec<Vec<BigInt>>],
        chosen: &mut Vec<Vec<BigInt>>,
        b: &IntMatrix,
        inner: &dyn Fn(&[BigInt], &[BigInt]) -> BigInt,
        budget: &mut usize,
    ) -> Option<bool> {
        if j == n {
            return Some(true);
        }
        for v in &candidates[j] {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            if (0..j).all(|i| inner(&chosen[i], v) == *b.get(i, j)) {
                chosen.push(v.clone());
                match go(j + 1, n, candidates, chosen, b, inner, budget) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {
                        chosen.pop();
                    }
                }
            }
        }
        Some(false)
    }
    match go(0, n, &candidates, &mut chosen, b, &inner, &mut budget) {
        Some(true) => {
            let p = IntMatrix::from_fn(n, n, |i, j| chosen[j][i].clone());
            Search::Found(p)
        }
        Some(false) => Search::Exhausted,
        None => Search::OutOfBudget,
    }
}

/// Lattices grouped by isometry of their inherited forms, and isometry
/// classes grouped further when their primitive rescalings agree.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RescalingPartition {
    /// Indices of isometric lattices.
    pub isometry_classes: Vec<Vec<usize>>,
    /// Indices into `isometry_classes`: classes that differ only by scale.
    pub rescaling_classes: Vec<Vec<usize>>,
    /// Pairs of lattice indices the search could not decide. Never merged.
    pub inconclusive: Vec<(usize, usize)>,
}

impl RescalingPartition {
    pub fn isometry_class_of(&self, i: usize) -> usize {
        self.isometry_classes.iter().position(|c| c.contains(&i)).expect("every index is classified")
    }

    pub fn rescaling_class_of(&self, i: usize) -> usize {
        let c = self.isometry_class_of(i);
        self.rescaling_classes.iter().position(|r| r.contains(&c)).expect("every class is grouped")
    }

    pub fn same_up_to_rescaling(&self, i: usize, j: usize) -> bool {
        self.rescaling_class_of(i) == self.rescaling_class_of(j)
    }
}

fn partition(grams: &[RatMatrix], inconclusive: &mut Vec<(usize, usize)>, ids: &[usize]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (k, g) in grams.iter().enumerate() {
        let mut placed = false;
        for class in classes.iter_mut() {
            match isometry(&grams[class[0]], g) {
                Equivalence::Equal(_) => {
                    class.push(k);
                    placed = true;
                    break;
                }
                Equivalence::Distinct(_) => {}
                Equivalence::Inconclusive => inconclusive.push((ids[class[0]], ids[k])),
            }
        }
        if !placed {
            classes.push(vec![k]);
        }
    }
    classes
}

/// Classifies lattices given by (label, Gram) pairs.
pub fn classify_up_to_rescaling(lattices: &[(String, RatMatrix)]) -> RescalingPartition {
    let mut inconclusive = Vec::new();
    let grams: Vec<RatMatrix> = lattices.iter().map(|(_, g)| g.clone()).collect();
    let ids: Vec<usize> = (0..grams.len()).collect();
    let isometry_classes = partition(&grams, &mut inconclusive, &ids);
    let reps: Vec<RatMatrix> = isometry_classes
        .iter()
        .map(|c| grams[c[0]].primitive_integral().map(|(p, _)| p.to_rat()).unwrap_or_else(|| grams[c[0]].clone()))
        .collect();
    let rep_ids: Vec<usize> = isometry_classes.iter().map(|c| c[0]).collect();
    let rescaling_classes = partition(&reps, &mut inconclusive, &rep_ids);
    RescalingPartition { isometry_classes, rescaling_classes, inconclusive }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(f: Family, n: usize) -> RootSystemSpec {
        RootSystemSpec::new(f, n).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn dual_lattice_indices() {
        for (s, idx) in [(spec(Family::E, 8), 1), (spec(Family::A, 1), 2), (spec(Family::D, 4), 4)] {
            let d = RootDatum::new(s);
            let dual = dual_lattice(&d).unwrap();
            assert_eq!(dual.gram.mul(&d.gram().to_rat()), RatMatrix::identity(s.rank()));
            assert_eq!(d.gram().determinant(), BigInt::from(idx));
        }
    }

    #[test]
    fn discriminant_factors() {
        let f = |s| discriminant_group_of(&RootDatum::new(s)).unwrap().invariant_factors;
        assert_eq!(f(spec(Family::A, 2)), ints(&[3]));
        assert_eq!(f(spec(Family::A, 3)), ints(&[4]));
        assert_eq!(f(spec(Family::D, 4)), ints(&[2, 2]));
        assert_eq!(f(spec(Family::D, 5)), ints(&[4]));
        assert!(f(spec(Family::E, 8)).is_empty());
        assert_eq!(discriminant_group(&IntMatrix::zeros(2, 2)).unwrap_err(), Error::SingularGram);
    }

    #[test]
    fn lifts_reduce_to_generators() {
        let disc = discriminant_group_of(&RootDatum::new(spec(Family::D, 6))).unwrap();
        for (i, l) in disc.generator_lifts.iter().enumerate() {
            let r = disc.residues(l);
            let expect: Vec<BigInt> = (0..r.len()).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect();
            assert_eq!(r, expect);
        }
    }

    #[test]
    fn type_a_action_is_trivial() {
        for n in 1..=6 {
            let d = RootDatum::new(spec(Family::A, n));
            let disc = discriminant_group_of(&d).unwrap();
            let act = induced_discriminant_action(&d.simple_reflections(), &disc).unwrap();
            assert!(act.iter().all(DiscriminantAutomorphism::is_identity));
        }
    }

    #[test]
    fn signed_permutations_move_half_spin_classes() {
        for n in [4, 6] {
            let base = TowerBase::d_lattice_under_signed_permutations(n).unwrap();
            let disc = discriminant_group(&base.gram).unwrap();
            assert_eq!(disc.invariant_factors, ints(&[2, 2]));
            let act = induced_discriminant_action(&base.generators, &disc).unwrap();
            assert!(act.iter().any(|a| !a.is_identity()));
        }
    }

    #[test]
    fn non_isometry_rejected() {
        let d = RootDatum::new(spec(Family::A, 2));
        let disc = discriminant_group_of(&d).unwrap();
        let bad = IntMatrix::from_rows(&[[1, 1], [0, 1]]);
        assert!(matches!(induced_discriminant_action(&[bad], &disc), Err(Error::LatticeNotPreserved(_))));
    }

    #[test]
    fn a4_tower() {
        let t = invariant_intermediate_lattices(&TowerBase::for_spec(spec(Family::A, 4)).unwrap(), DEFAULT_SUBGROUP_CAP).unwrap();
        assert_eq!(t.labels(), vec!["A4", "A4*"]);
    }

    #[test]
    fn b3_tower_is_d3_z3_d3dual() {
        let t = invariant_intermediate_lattices(&TowerBase::for_spec(spec(Family::B, 3)).unwrap(), DEFAULT_SUBGROUP_CAP).unwrap();
        assert_eq!(t.labels(), vec!["D3", "Z3", "D3*"]);
        let z = t.by_label("Z3").unwrap();
        assert!(matches!(isometry(&z.gram, &RatMatrix::identity(3)), Equivalence::Equal(_)));
    }

    #[test]
    fn b4_excludes_half_spin() {
        let t = invariant_intermediate_lattices(&TowerBase::for_spec(spec(Family::B, 4)).unwrap(), DEFAULT_SUBGROUP_CAP).unwrap();
        assert_eq!(t.subgroup_count, 5);
        assert_eq!(t.labels(), vec!["D4", "Z4", "D4*"]);
        // Under W(D4) itself all five subgroups are stable.
        let t = invariant_intermediate_lattices(&TowerBase::for_spec(spec(Family::D, 4)).unwrap(), DEFAULT_SUBGROUP_CAP).unwrap();
        assert_eq!(t.labels(), vec!["D4", "D4+", "D4-", "Z4", "D4*"]);
    }

    #[test]
    fn e8_tower_is_single() {
        let t = invariant_intermediate_lattices(&TowerBase::for_spec(spec(Family::E, 8)).unwrap(), DEFAULT_SUBGROUP_CAP).unwrap();
        assert_eq!(t.labels(), vec!["E8"]);
    }

    #[test]
    fn discriminant_cap() {
        let base = TowerBase::for_spec(spec(Family::A, 4)).unwrap();
        assert!(matches!(invariant_intermediate_lattices(&base, 4), Err(Error::DiscriminantTooLarge { .. })));
    }

    #[test]
    fn classification_examples() {
        let a1 = ("A1".to_string(), IntMatrix::from_rows(&[[2]]).to_rat());
        let a1d = ("A1*".to_string(), RatMatrix::from_rows(&[[crate::exact_linalg::rat(1, 2)]]));
        let p = classify_up_to_rescaling(&[a1, a1d]);
        assert_eq!(p.isometry_classes.len(), 2);
        assert!(p.same_up_to_rescaling(0, 1));

        let d3 = RootDatum::new(spec(Family::D, 3)).gram().to_rat();
        let a3 = RootDatum::new(spec(Family::A, 3)).gram().to_rat();
        match isometry(&d3, &a3) {
            Equivalence::Equal(p) => assert_eq!(p.transpose().to_rat().mul(&d3).mul(&p.to_rat()), a3),
            other => panic!("{other:?}"),
        }
        assert_eq!(isometry(&RatMatrix::identity(3), &d3), Equivalence::Distinct("determinant"));
    }

    #[test]
    fn exhaustive_search_separates_same_invariants() {
        // Z^8 vs E8: same determinant and Smith form, different parity.
        let e8 = RootDatum::new(spec(Family::E, 8)).gram().to_rat();
        assert_eq!(isometry(&RatMatrix::identity(8), &e8), Equivalence::Distinct("parity"));
        // [[2,1],[1,3]] and [[1,0],[0,5]]: det 5, odd, not isometric (min 2 vs 1).
        let a = IntMatrix::from_rows(&[[2, 1], [1, 3]]).to_rat();
        let b = IntMatrix::from_rows(&[[1, 0], [0, 5]]).to_rat();
        assert_eq!(isometry(&a, &b), Equivalence::Distinct("no isometry exists"));
    }

    #[test]
    fn tower_members_are_stable_and_indices_multiply() {
        for s in [spec(Family::A, 5), spec(Family::B, 4), spec(Family::D, 6), spec(Family::E, 6)] {
            let base = TowerBase::for_spec(s).unwrap();
            let disc = discriminant_group(&base.gram).unwrap();
            let t = invariant_intermediate_lattices(&base, DEFAULT_SUBGROUP_CAP).unwrap();
            for (i, l) in t.lattices.iter().enumerate() {
                assert!(is_stable(l, &base.generators), "{s} {}", l.label);
                let det_l = l.gram.determinant();
                assert_eq!(det_l * &l.index_over_root * &l.index_over_root, Rational::from_integer(disc.order.clone()));
                let j = t.dual_position(i, &disc).expect("closed under duality");
                assert_eq!(t.dual_position(j, &disc), Some(i));
                assert_eq!(&t.lattices[j].index_over_root * &l.index_over_root, disc.order);
            }
        }
    }
}
