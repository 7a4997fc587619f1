//! Full verdict for one type and lattice.
//!
//! cargo run --release --example hk_verdict -- E6 root

use roothk::hk_analysis::{analyze, LatticeSelector};
use roothk::root_data::RootSystemSpec;
use roothk::weyl::GroupCap;

fn main() {
    let mut args = std::env::args().skip(1);
    let spec: RootSystemSpec = args.next().unwrap_or_else(|| "G2".into()).parse().expect("type like G2");
    let selector: LatticeSelector = args.next().unwrap_or_else(|| "root".into()).parse().expect("root|dual|index:k");
    let v = analyze(spec, selector, GroupCap::default()).unwrap();
    println!("{}", serde_json::to_string_pretty(&v).unwrap());
}
