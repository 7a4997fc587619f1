//! Invariant dimensions of Sym²V, ∧²V and ∧²(V⊕V) for every type of rank ≤ 8.

use roothk::invariant_theory::invariant_report;
use roothk::root_data::{RootDatum, RootSystemSpec};

fn main() {
    println!("type  sym2  wedge2  wedge2(V+V)  irreducible");
    for spec in RootSystemSpec::supported_up_to(8) {
        let r = invariant_report(&RootDatum::new(spec));
        println!(
            "{:<5} {:>4}  {:>6}  {:>11}  {}",
            spec.to_string(),
            r.dim_sym2_inv,
            r.dim_wedge2_inv,
            r.dim_wedge2_doubled_inv,
            r.irreducible
        );
    }
}
