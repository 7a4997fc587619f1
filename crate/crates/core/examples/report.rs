//! The default suite as TSV, the same rows `roothk report` prints.
//!
//! cargo run --release --example report

use roothk::report::{default_suite, Format, ReportDocument};
use roothk::weyl::GroupCap;

fn main() {
    let cap = GroupCap::new(500_000).unwrap();
    let doc = ReportDocument::new("report", vec![("suite", "default".into())], default_suite(cap));
    print!("{}", doc.render(Format::Tsv));
    eprintln!("pass {} fail {} skipped {}", doc.summary.pass, doc.summary.fail, doc.summary.skipped);
}
