//! Cartan matrix, Gram matrix and simple reflections of a root system.
//!
//! cargo run --example root_data -- F4

use roothk::root_data::{RootDatum, RootSystemSpec};
use roothk::weyl::group_order_formula;

fn main() {
    let spec: RootSystemSpec = std::env::args().nth(1).unwrap_or_else(|| "B3".into()).parse().expect("type like B3");
    let datum = RootDatum::new(spec);
    println!("{spec}: {} roots, |W| = {}", spec.root_count(), group_order_formula(spec));
    println!("cartan = {}", datum.cartan());
    println!("gram   = {}", datum.gram());
    for (i, s) in datum.simple_reflections().iter().enumerate() {
        println!("s{} = {s}", i + 1);
    }
}
