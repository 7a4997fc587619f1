use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use roothk::exact_linalg::{hermite_normal_form, rational_kernel, smith_normal_form, IntMatrix, RatMatrix};
use roothk::hk_analysis::{brute_force_fixed_components, fixed_locus_on_abelian};
use roothk::root_data::{Family, RootDatum, RootSystemSpec};

fn matrix(rows: usize, cols: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-range..=range, rows * cols).prop_map(move |v| {
        IntMatrix::new(rows, cols, v.into_iter().map(BigInt::from).collect()).unwrap()
    })
}

fn any_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c, 6))
}

fn spec_strategy() -> impl Strategy<Value = RootSystemSpec> {
    prop::sample::select(
        [(Family::A, 3), (Family::B, 3), (Family::C, 3), (Family::D, 4), (Family::F, 4), (Family::G, 2), (Family::E, 6)]
            .map(|(f, n)| RootSystemSpec::new(f, n).unwrap())
            .to_vec(),
    )
}

proptest! {
    #[test]
    fn smith_reconstructs(m in any_matrix()) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.left.mul(&m).mul(&s.right), s.diagonal_matrix());
        prop_assert!(s.left.determinant().abs().is_one());
        prop_assert!(s.right.determinant().abs().is_one());
        let d: Vec<BigInt> = s.diag.iter().filter(|x| !x.is_zero()).cloned().collect();
        prop_assert!(d.iter().all(|x| x.is_positive()));
        prop_assert!(d.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        prop_assert_eq!(s.rank(), m.rank());
    }

    #[test]
    fn smith_of_transpose(m in any_matrix()) {
        prop_assert_eq!(smith_normal_form(&m).diag, smith_normal_form(&m.transpose()).diag);
    }

    #[test]
    fn hermite_is_row_equivalent(m in any_matrix()) {
        let h = hermite_normal_form(&m);
        prop_assert_eq!(h.transform.mul(&m), h.form.clone());
        prop_assert!(h.transform.determinant().abs().is_one());
        prop_assert_eq!(h.rank(), m.rank());
    }

    #[test]
    fn kernel_rank_nullity(m in any_matrix()) {
        let q: RatMatrix = m.to_rat();
        let k = rational_kernel(&q);
        prop_assert_eq!(k.len() + m.rank(), m.cols());
        for v in &k {
            prop_assert!(q.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn weyl_words_preserve_gram(s in spec_strategy(), word in prop::collection::vec(0usize..8, 0..12)) {
        let d = RootDatum::new(s);
        let refl = d.simple_reflections();
        let w = word.iter().fold(IntMatrix::identity(s.rank()), |acc, &i| acc.mul(&refl[i % s.rank()]));
        prop_assert_eq!(w.transpose().mul(d.gram()).mul(&w), d.gram().clone());
        prop_assert!(w.determinant().abs().is_one());
    }

    #[test]
    fn fixed_locus_matches_enumeration(
        s in prop::sample::select(vec![(Family::A, 2), (Family::B, 2), (Family::G, 2), (Family::A, 3)]),
        word in prop::collection::vec(0usize..3, 0..10),
    ) {
        let spec = RootSystemSpec::new(s.0, s.1).unwrap();
        let refl = RootDatum::new(spec).simple_reflections();
        let w = word.iter().fold(IntMatrix::identity(spec.rank()), |acc, &i| acc.mul(&refl[i % spec.rank()]));
        let e = fixed_locus_on_abelian(&w, None);
        let (count, f) = brute_force_fixed_components(&w).unwrap();
        prop_assert_eq!(e.component_count, count);
        prop_assert_eq!(e.fix_dim_v, f);
        prop_assert_eq!(e.codim_doubled, 2 * (spec.rank() - f));
    }
}
