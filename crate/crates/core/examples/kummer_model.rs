//! Every lattice in the A_n tower gives a generalized Kummer model, and Z^n
//! under W(B_n) gives the Hilbert-scheme model.

use roothk::hk_analysis::{analyze, LatticeSelector};
use roothk::root_data::{Family, RootSystemSpec};
use roothk::weyl::GroupCap;

fn main() {
    let cap = GroupCap::default();
    for (family, n, selector) in [
        (Family::A, 3, LatticeSelector::Root),
        (Family::A, 3, LatticeSelector::Index(1)),
        (Family::A, 3, LatticeSelector::Dual),
        (Family::B, 3, LatticeSelector::Root),
        (Family::F, 4, LatticeSelector::Root),
    ] {
        let spec = RootSystemSpec::new(family, n).unwrap();
        let v = analyze(spec, selector, cap).unwrap();
        let tag = v.known_model.map_or_else(|| "no known model".to_string(), |m| m.tag);
        println!("{spec} {:<4} -> {tag}", v.lattice_label);
    }
}
