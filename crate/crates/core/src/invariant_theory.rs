//! Tensor constructions on `V = L ⊗ Q` and their invariant subspaces.
//!
//! Invariant dimensions are computed from generators alone as the common
//! fixed space `∩ ker(ρ(s_i) − I)`, which needs no enumeration of the group.
//! Averaging over the whole group ([`invariant_dim_reynolds`]) is kept as an
//! independent cross-check for groups that can be enumerated.
//!
//! Bases are ordered lexicographically on index pairs: `(i, j)` with `i ≤ j`
//! for `Sym²`, `i < j` for `∧²`.

use num_bigint::BigInt;
use num_traits::{Num, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_linalg::{stack_and_common_kernel, EchelonBasis, IntMatrix, RatMatrix, Rational};
use crate::root_data::{RootDatum, RootSystemSpec};
use crate::weyl::{enumerate_closure, GroupCap, WeylGroup};

/// How a representation was obtained from the defining (reflection)
/// representation. Lets the image of any group element be recomputed from
/// its matrix on `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    /// Generator images are given directly.
    Base,
    Double(Box<Construction>),
    Sym2(Box<Construction>),
    Wedge2(Box<Construction>),
    Sum(Box<Construction>, Box<Construction>),
}

impl Construction {
    /// Image of an element given by its matrix on the base space.
    fn apply<T: Num + Clone>(&self, w: &[T], n: usize) -> (Vec<T>, usize) {
        match self {
            Construction::Base => (w.to_vec(), n),
            Construction::Double(c) => {
                let (m, d) = c.apply(w, n);
                (block_diag(&[(&m, d), (&m, d)]), 2 * d)
            }
            Construction::Sym2(c) => {
                let (m, d) = c.apply(w, n);
                (sym2_matrix(&m, d), d * (d + 1) / 2)
            }
            Construction::Wedge2(c) => {
                let (m, d) = c.apply(w, n);
                (wedge2_matrix(&m, d), d * d.saturating_sub(1) / 2)
            }
            Construction::Sum(a, b) => {
                let (ma, da) = a.apply(w, n);
                let (mb, db) = b.apply(w, n);
                (block_diag(&[(&ma, da), (&mb, db)]), da + db)
            }
        }
    }
}

/// A finite-dimensional rational representation, given by the images of a
/// fixed list of group generators.
#[derive(Clone, Debug)]
pub struct Representation {
    dim: usize,
    generator_images: Vec<RatMatrix>,
    label: String,
    construction: Construction,
}

impl Representation {
    /// Wraps arbitrary generator images; all must be `dim × dim`.
    pub fn new(label: impl Into<String>, dim: usize, generator_images: Vec<RatMatrix>) -> Result<Self> {
        for g in &generator_images {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::Shape { rows: dim, cols: dim, got: g.rows() * g.cols() });
            }
        }
        Ok(Self { dim, generator_images, label: label.into(), construction: Construction::Base })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_images(&self) -> &[RatMatrix] {
        &self.generator_images
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    fn derived(&self, label: String, construction: Construction, f: impl Fn(&RatMatrix) -> RatMatrix) -> Self {
        let generator_images: Vec<RatMatrix> = self.generator_images.iter().map(f).collect();
        let dim = generator_images.first().map_or_else(|| derived_dim(&construction, self.dim), RatMatrix::rows);
        Self { dim, generator_images, label, construction }
    }

    /// True when every generator image squares to the identity.
    pub fn generators_are_involutions(&self) -> bool {
        self.generator_images.iter().all(|g| g.mul(g).is_identity())
    }
}

fn derived_dim(c: &Construction, n: usize) -> usize {
    match c {
        Construction::Base => n,
        Construction::Double(_) => 2 * n,
        Construction::Sym2(_) => n * (n + 1) / 2,
        Construction::Wedge2(_) => n * n.saturating_sub(1) / 2,
        Construction::Sum(..) => n,
    }
}

fn block_diag<T: Num + Clone>(blocks: &[(&Vec<T>, usize)]) -> Vec<T> {
    let n: usize = blocks.iter().map(|b| b.1).sum();
    let mut out = vec![T::zero(); n * n];
    let mut off = 0;
    for (m, d) in blocks {
        for i in 0..*d {
            for j in 0..*d {
                out[(off + i) * n + off + j] = m[i * d + j].clone();
            }
        }
        off += d;
    }
    out
}

/// Lexicographic pairs `(i, j)`, `i ≤ j` (or `i < j` when `strict`).
pub fn index_pairs(n: usize, strict: bool) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (if strict { i + 1 } else { i }..n).map(move |j| (i, j)))
        .collect()
}

/// Matrix of `Sym²(g)` on the monomial basis `e_i e_j`, `i ≤ j`.
pub fn sym2_matrix<T: Num + Clone>(g: &[T], n: usize) -> Vec<T> {
    let pairs = index_pairs(n, false);
    let d = pairs.len();
    let mut out = vec![T::zero(); d * d];
    for (col, &(i, j)) in pairs.iter().enumerate() {
        for (row, &(a, b)) in pairs.iter().enumerate() {
            let v = if a == b {
                g[a * n + i].clone() * g[a * n + j].clone()
            } else {
                g[a * n + i].clone() * g[b * n + j].clone() + g[b * n + i].clone() * g[a * n + j].clone()
            };
            out[row * d + col] = v;
        }
    }
    out
}

/// Matrix of `∧²(g)` on the basis `e_i ∧ e_j`, `i < j`.
pub fn wedge2_matrix<T: Num + Clone>(g: &[T], n: usize) -> Vec<T> {
    let pairs = index_pairs(n, true);
    let d = pairs.len();
    let mut out = vec![T::zero(); d * d];
    for (col, &(i, j)) in pairs.iter().enumerate() {
        for (row, &(a, b)) in pairs.iter().enumerate() {
            out[row * d + col] =
                g[a * n + i].clone() * g[b * n + j].clone() - g[b * n + i].clone() * g[a * n + j].clone();
        }
    }
    out
}

fn rat_square(m: &RatMatrix) -> Vec<Rational> {
    m.entries().to_vec()
}

fn square_rat(v: Vec<Rational>, d: usize) -> RatMatrix {
    RatMatrix::new(d, d, v).expect("square")
}

/// The reflection representation `V = L ⊗ Q`: simple reflections in the
/// simple-root basis.
pub fn rep_reflection(datum: &RootDatum) -> Representation {
    let images = datum.simple_reflections().iter().map(IntMatrix::to_rat).collect();
    Representation {
        dim: datum.rank(),
        generator_images: images,
        label: format!("V({})", datum.spec()),
        construction: Construction::Base,
    }
}

/// `V ⊕ V`, each generator acting block diagonally.
pub fn rep_double(rep: &Representation) -> Representation {
    rep.derived(
        format!("{0}+{0}", rep.label),
        Construction::Double(Box::new(rep.construction.clone())),
        |g| RatMatrix::block_diagonal(&[g, g]),
    )
}

pub fn rep_sym2(rep: &Representation) -> Representation {
    let n = rep.dim;
    let d = n * (n + 1) / 2;
    rep.derived(
        format!("Sym2({})", rep.label),
        Construction::Sym2(Box::new(rep.construction.clone())),
        |g| square_rat(sym2_matrix(&rat_square(g), n), d),
    )
}

pub fn rep_wedge2(rep: &Representation) -> Representation {
    let n = rep.dim;
    let d = n * n.saturating_sub(1) / 2;
    rep.derived(
        format!("Wedge2({})", rep.label),
        Construction::Wedge2(Box::new(rep.construction.clone())),
        |g| square_rat(wedge2_matrix(&rat_square(g), n), d),
    )
}

/// Direct sum of two representations of the same generators.
pub fn rep_direct_sum(a: &Representation, b: &Representation) -> Result<Representation> {
    if a.generator_images.len() != b.generator_images.len() {
        return Err(Error::ColumnMismatch { expected: a.generator_images.len(), found: b.generator_images.len() });
    }
    let images = a
        .generator_images
        .iter()
        .zip(&b.generator_images)
        .map(|(x, y)| RatMatrix::block_diagonal(&[x, y]))
        .collect();
    Ok(Representation {
        dim: a.dim + b.dim,
        generator_images: images,
        label: format!("{}+{}", a.label, b.label),
        construction: Construction::Sum(Box::new(a.construction.clone()), Box::new(b.construction.clone())),
    })
}

/// Basis of the common fixed space of the generator images.
pub fn invariant_subspace(rep: &Representation) -> Vec<Vec<Rational>> {
    let id = RatMatrix::identity(rep.dim);
    let systems: Vec<RatMatrix> = rep.generator_images.iter().map(|g| g.sub(&id)).collect();
    if systems.is_empty() {
        return stack_and_common_kernel(&[RatMatrix::zeros(0, rep.dim)]).expect("single block");
    }
    stack_and_common_kernel(&systems).expect("all generator images are square of the same size")
}

/// Dimension of the space of `W`-invariants, from generators only.
pub fn invariant_dim(rep: &Representation) -> usize {
    invariant_subspace(rep).len()
}

/// Dimension of the invariants as the rank of the averaging projector
/// `(1/|W|) Σ ρ(w)`, summed over every element of the group.
///
/// When `rep` is built functorially from the group's own reflection
/// representation, `ρ(w)` is computed from each enumerated `w`. Otherwise
/// the finite image group is enumerated from the generator images directly,
/// subject to `cap`.
pub fn invariant_dim_reynolds(rep: &Representation, group: &WeylGroup, cap: GroupCap) -> Result<usize> {
    let base_images: Vec<RatMatrix> = group.generators().iter().map(IntMatrix::to_rat).collect();
    let functorial = construction_base_matches(rep, &base_images);
    if functorial {
        let els = group.elements().ok_or(Error::NotEnumerated)?;
        let n = els.dim();
        let d = rep.dim;
        let mut sum = vec![0i64; d * d];
        let mut w = vec![0i64; n * n];
        for e in els.iter() {
            for (x, &y) in w.iter_mut().zip(e) {
                *x = y as i64;
            }
            let (img, dd) = rep.construction.apply(&w, n);
            debug_assert_eq!(dd, d);
            for (s, v) in sum.iter_mut().zip(&img) {
                *s += v;
            }
        }
        return Ok(rank_i64(&sum, d));
    }
    // Image group closure; generator images must be integral.
    let gens = rep
        .generator_images
        .iter()
        .map(|g| g.to_int().ok_or(Error::EntryOverflow))
        .collect::<Result<Vec<_>>>()?;
    let els = enumerate_closure(&gens, rep.dim, cap)?;
    let d = rep.dim;
    let mut sum = vec![0i64; d * d];
    for e in els.iter() {
        for (s, &v) in sum.iter_mut().zip(e) {
            *s += v as i64;
        }
    }
    Ok(rank_i64(&sum, d))
}

fn construction_base_matches(rep: &Representation, base_images: &[RatMatrix]) -> bool {
    if base_images.len() != rep.generator_images.len() || base_images.is_empty() {
        return false;
    }
    let n = base_images[0].rows();
    base_images.iter().zip(&rep.generator_images).all(|(b, img)| {
        let (m, d) = rep.construction.apply(&rat_square(b), n);
        d == rep.dim && m == img.entries()
    })
}

fn rank_i64(m: &[i64], d: usize) -> usize {
    let mut e = EchelonBasis::new(d);
    for row in m.chunks_exact(d.max(1)).take(d) {
        if e.is_full() {
            break;
        }
        e.insert_int(row.iter().map(|&x| BigInt::from(x)).collect());
    }
    e.rank()
}

/// Dimension of `{X : ρ(s) X = X ρ(s) for every generator}`.
pub fn commutant_dim(rep: &Representation) -> usize {
    let n = rep.dim;
    let mut e = EchelonBasis::new(n * n);
    // Unknown X_kl sits at index k*n + l.
    for g in &rep.generator_images {
        for a in 0..n {
            for b in 0..n {
                // (gX − Xg)_ab = Σ_k g_ak X_kb − Σ_l X_al g_lb
                let mut row = vec![Rational::zero(); n * n];
                for k in 0..n {
                    row[k * n + b] += g.get(a, k);
                }
                for l in 0..n {
                    row[a * n + l] -= g.get(l, b);
                }
                e.insert_rat(&row);
            }
        }
    }
    n * n - e.rank()
}

/// Irreducibility over the rationals, certified by a one-dimensional
/// commutant (which forces absolute irreducibility).
pub fn irreducibility_check(rep: &Representation) -> bool {
    commutant_dim(rep) == 1
}

/// Basis of `{B : ρ(s)ᵀ B ρ(s) = B for every generator}` as matrices.
pub fn invariant_form_space(rep: &Representation) -> Vec<RatMatrix> {
    let n = rep.dim;
    let mut e = EchelonBasis::new(n * n);
    for g in &rep.generator_images {
        for a in 0..n {
            for b in 0..n {
                // (gᵀ B g − B)_ab = Σ_ij g_ia B_ij g_jb − B_ab
                let mut row = vec![Rational::zero(); n * n];
                for i in 0..n {
                    if g.get(i, a).is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        if !g.get(j, b).is_zero() {
                            row[i * n + j] += g.get(i, a) * g.get(j, b);
                        }
                    }
                }
                row[a * n + b] -= Rational::from_integer(1.into());
                e.insert_rat(&row);
            }
        }
    }
    e.kernel().into_iter().map(|v| RatMatrix::new(n, n, v).expect("n*n entries")).collect()
}

/// The invariant bilinear form of a representation whose form space is a
/// line: primitive integral, symmetric and positive definite.
pub fn invariant_bilinear_form(rep: &Representation) -> Result<IntMatrix> {
    let space = invariant_form_space(rep);
    if space.len() != 1 {
        return Err(Error::FormSpaceDimension(space.len()));
    }
    let (mut form, _) = space[0].primitive_integral().ok_or_else(|| Error::FormCheck("zero form".into()))?;
    if form.get(0, 0).is_negative() {
        form = form.neg();
    }
    if !form.is_symmetric() {
        return Err(Error::FormCheck("invariant form is not symmetric".into()));
    }
    if !form.to_rat().is_positive_definite() {
        return Err(Error::FormCheck("invariant form is not positive definite".into()));
    }
    Ok(form)
}

/// `Σ_w wᵀ F w` over an enumerated group: the averaged form, up to `1/|W|`.
pub fn average_form(group: &WeylGroup, form: &IntMatrix) -> Result<IntMatrix> {
    let mut acc = IntMatrix::zeros(form.rows(), form.cols());
    for w in group.element_iter()? {
        acc = acc.add(&w.transpose().mul(form).mul(&w));
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub rank: usize,
    pub dim_wedge2_doubled: usize,
    pub dim_wedge2: usize,
    pub dim_sym2: usize,
    pub dimensions_consistent: bool,
    pub inv_wedge2_doubled: usize,
    pub inv_wedge2: usize,
    pub inv_sym2: usize,
    pub invariants_consistent: bool,
    pub passed: bool,
}

/// Checks `∧²(V⊕V) ≅ (∧²V)^3 ⊕ Sym²V` on dimensions and on invariant
/// dimensions.
pub fn decomposition_check(datum: &RootDatum) -> DecompositionReport {
    decomposition_check_rep(&rep_reflection(datum))
}

pub fn decomposition_check_rep(v: &Representation) -> DecompositionReport {
    let (s2, w2, w2d) = (rep_sym2(v), rep_wedge2(v), rep_wedge2(&rep_double(v)));
    let (is2, iw2, iw2d) = (invariant_dim(&s2), invariant_dim(&w2), invariant_dim(&w2d));
    let dims_ok = w2d.dim() == 3 * w2.dim() + s2.dim();
    let inv_ok = iw2d == 3 * iw2 + is2;
    DecompositionReport {
        rank: v.dim(),
        dim_wedge2_doubled: w2d.dim(),
        dim_wedge2: w2.dim(),
        dim_sym2: s2.dim(),
        dimensions_consistent: dims_ok,
        inv_wedge2_doubled: iw2d,
        inv_wedge2: iw2,
        inv_sym2: is2,
        invariants_consistent: inv_ok,
        passed: dims_ok && inv_ok,
    }
}

/// Invariant dimensions for the reflection representation of one type.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    #[serde(serialize_with = "crate::report::ser_display")]
    pub spec: RootSystemSpec,
    pub dim_sym2_inv: usize,
    pub dim_wedge2_inv: usize,
    pub dim_wedge2_doubled_inv: usize,
    pub irreducible: bool,
    pub decomposition_consistent: bool,
}

impl InvariantReport {
    /// `(1, 0, 1, irreducible)`: a unique invariant symmetric form, no
    /// invariant alternating form on `V`, and a one-dimensional space of
    /// invariant 2-forms on `V ⊕ V`.
    pub fn is_rank_one(&self) -> bool {
        self.irreducible && self.dim_sym2_inv == 1 && self.dim_wedge2_inv == 0 && self.dim_wedge2_doubled_inv == 1
    }
}

pub fn invariant_report(datum: &RootDatum) -> InvariantReport {
    let v = rep_reflection(datum);
    let d = decomposition_check_rep(&v);
    InvariantReport {
        spec: datum.spec(),
        dim_sym2_inv: d.inv_sym2,
        dim_wedge2_inv: d.inv_wedge2,
        dim_wedge2_doubled_inv: d.inv_wedge2_doubled,
        irreducible: irreducibility_check(&v),
        decomposition_consistent: d.passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::Family;
    use crate::weyl::generate_group;

    fn datum(f: Family, n: usize) -> RootDatum {
        RootDatum::new(RootSystemSpec::new(f, n).unwrap())
    }

    #[test]
    fn construction_dimensions() {
        let a1 = rep_reflection(&datum(Family::A, 1));
        assert_eq!(a1.dim(), 1);
        assert_eq!(a1.generator_images()[0], IntMatrix::from_rows(&[[-1]]).to_rat());
        assert_eq!(rep_wedge2(&a1).dim(), 0);
        let a2 = rep_reflection(&datum(Family::A, 2));
        assert_eq!(rep_sym2(&a2).dim(), 3);
        assert_eq!(rep_wedge2(&a2).dim(), 1);
        let dbl = rep_double(&a2);
        assert_eq!(dbl.dim(), 4);
        assert_eq!(
            dbl.generator_images()[0],
            RatMatrix::block_diagonal(&[&a2.generator_images()[0], &a2.generator_images()[0]])
        );
        assert!(dbl.generators_are_involutions());
        assert_eq!(rep_reflection(&datum(Family::E, 8)).dim(), 8);
        assert_eq!(rep_wedge2(&rep_double(&rep_reflection(&datum(Family::E, 8)))).dim(), 120);
    }

    #[test]
    fn sym2_preserves_induced_form() {
        let d = datum(Family::A, 2);
        let g = d.gram().to_rat();
        let n = 2;
        let pairs = index_pairs(n, false);
        let k = RatMatrix::from_fn(3, 3, |r, c| {
            let ((i, j), (a, b)) = (pairs[r], pairs[c]);
            g.get(i, a) * g.get(j, b) + g.get(i, b) * g.get(j, a)
        });
        for img in rep_sym2(&rep_reflection(&d)).generator_images() {
            assert_eq!(img.transpose().mul(&k).mul(img), k);
        }
    }

    #[test]
    fn functorial_images_are_homomorphic() {
        let d = datum(Family::B, 3);
        let s = d.simple_reflections();
        let v = rep_reflection(&d);
        let w2d = rep_wedge2(&rep_double(&v));
        let prod = s[0].mul(&s[2]).mul(&s[1]);
        let (img, dim) = w2d.construction().apply(prod.to_rat().entries(), 3);
        let expected = w2d.generator_images()[0].mul(&w2d.generator_images()[2]).mul(&w2d.generator_images()[1]);
        assert_eq!(RatMatrix::new(dim, dim, img).unwrap(), expected);
    }

    #[test]
    fn lemma_examples() {
        let a2 = rep_reflection(&datum(Family::A, 2));
        assert_eq!(invariant_dim(&rep_sym2(&a2)), 1);
        assert_eq!(invariant_dim(&rep_wedge2(&a2)), 0);
        let b3 = rep_reflection(&datum(Family::B, 3));
        assert_eq!(invariant_dim(&rep_wedge2(&rep_double(&b3))), 1);
    }

    #[test]
    fn reynolds_examples() {
        let cap = GroupCap::default();
        let d = datum(Family::A, 2);
        let g = generate_group(&d, cap).unwrap();
        assert_eq!(invariant_dim_reynolds(&rep_sym2(&rep_reflection(&d)), &g, cap).unwrap(), 1);
        let d = datum(Family::B, 2);
        let g = generate_group(&d, cap).unwrap();
        assert_eq!(invariant_dim_reynolds(&rep_wedge2(&rep_reflection(&d)), &g, cap).unwrap(), 0);
        let trivial = Representation::new("trivial", 1, vec![RatMatrix::identity(1); 2]).unwrap();
        assert_eq!(invariant_dim_reynolds(&trivial, &g, cap).unwrap(), 1);
        let e8 = WeylGroup::generators_only(&datum(Family::E, 8));
        let v = rep_reflection(&datum(Family::E, 8));
        assert_eq!(invariant_dim_reynolds(&v, &e8, cap), Err(Error::NotEnumerated));
    }

    #[test]
    fn bilinear_forms() {
        let a1 = rep_reflection(&datum(Family::A, 1));
        assert_eq!(invariant_bilinear_form(&a1).unwrap(), IntMatrix::from_rows(&[[1]]));
        let d = datum(Family::A, 2);
        let b = invariant_bilinear_form(&rep_reflection(&d)).unwrap();
        assert!(b.to_rat().is_proportional_to(&d.gram().to_rat()));

        let d = datum(Family::B, 2);
        let g = generate_group(&d, GroupCap::default()).unwrap();
        let avg = average_form(&g, &IntMatrix::identity(2)).unwrap();
        let b = invariant_bilinear_form(&rep_reflection(&d)).unwrap();
        assert!(avg.to_rat().is_proportional_to(&b.to_rat()));
    }

    #[test]
    fn reducible_form_space_rejected() {
        let a1 = rep_reflection(&datum(Family::A, 1));
        let sum = rep_direct_sum(&a1, &a1).unwrap();
        assert_eq!(invariant_bilinear_form(&sum), Err(Error::FormSpaceDimension(4)));
    }

    #[test]
    fn irreducibility_examples() {
        let a2 = rep_reflection(&datum(Family::A, 2));
        assert!(irreducibility_check(&a2));
        assert_eq!(commutant_dim(&rep_double(&a2)), 4);
        assert!(!irreducibility_check(&rep_double(&a2)));
        assert!(irreducibility_check(&rep_reflection(&datum(Family::A, 1))));
    }

    #[test]
    fn decomposition_examples() {
        let r = decomposition_check(&datum(Family::A, 2));
        assert_eq!((r.dim_wedge2_doubled, r.dim_wedge2, r.dim_sym2), (6, 1, 3));
        let r = decomposition_check(&datum(Family::A, 3));
        assert_eq!((r.inv_wedge2_doubled, r.inv_wedge2, r.inv_sym2), (1, 0, 1));
        assert!(r.passed);
        let r = decomposition_check(&datum(Family::G, 2));
        assert_eq!((r.inv_wedge2_doubled, r.inv_wedge2, r.inv_sym2), (1, 0, 1));
    }
}
