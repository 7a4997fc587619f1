//! W-stable lattices between a root lattice and its dual.
//!
//! cargo run --example sublattices -- B5

use roothk::lattice_tower::{invariant_intermediate_lattices, TowerBase, DEFAULT_SUBGROUP_CAP};
use roothk::report::ratmatrix_string;
use roothk::root_data::RootSystemSpec;

fn main() {
    let spec: RootSystemSpec = std::env::args().nth(1).unwrap_or_else(|| "A7".into()).parse().expect("type like A7");
    let base = TowerBase::for_spec(spec).unwrap();
    let tower = invariant_intermediate_lattices(&base, DEFAULT_SUBGROUP_CAP).unwrap();
    println!(
        "{spec} over {}: discriminant {:?}, {} subgroups, {} stable",
        tower.base_label,
        tower.discriminant_factors.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        tower.subgroup_count,
        tower.lattices.len()
    );
    for (i, l) in tower.lattices.iter().enumerate() {
        println!(
            "  {:<6} index {:<3} class {}  gram {}",
            l.label,
            l.index_over_root,
            tower.classes.rescaling_class_of(i),
            ratmatrix_string(&l.gram)
        );
    }
}
