//! Enumerates a Weyl group and compares the count with the order formula.
//!
//! cargo run --release --example weyl_group -- E6

use roothk::root_data::{RootDatum, RootSystemSpec};
use roothk::weyl::{generate_group, group_order_formula, GroupCap};

fn main() {
    let spec: RootSystemSpec = std::env::args().nth(1).unwrap_or_else(|| "D4".into()).parse().expect("type like D4");
    let group = generate_group(&RootDatum::new(spec), GroupCap::default()).expect("group under the default cap");
    let count = group.elements().map_or(0, |e| e.len());
    println!("{spec}: enumerated {count}, formula {}", group_order_formula(spec));
}
