//! Fixed loci of the elements of W(A2) on A2 ⊗ A, by Smith form and by
//! counting torsion points.

use roothk::hk_analysis::{brute_force_fixed_components, fixed_locus_on_abelian};
use roothk::root_data::{Family, RootDatum, RootSystemSpec};
use roothk::weyl::{generate_group, GroupCap};

fn main() {
    let datum = RootDatum::new(RootSystemSpec::new(Family::A, 2).unwrap());
    let group = generate_group(&datum, GroupCap::default()).unwrap();
    for (i, w) in group.element_iter().unwrap().enumerate() {
        let e = fixed_locus_on_abelian(&w, Some(i));
        let (count, _) = brute_force_fixed_components(&w).unwrap();
        println!(
            "w{i} = {w}: fix dim {}, codim {}, components {} (enumerated {count})",
            e.fix_dim_v, e.codim_doubled, e.component_count
        );
    }
}
