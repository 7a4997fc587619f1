//! W(B_n) acting on Z^n is the full group of signed permutation matrices.

use roothk::weyl::{check_signed_permutation_structure, GroupCap};

fn main() {
    for n in 2..=5 {
        let r = check_signed_permutation_structure(n, GroupCap::default()).unwrap();
        println!(
            "B{n}: {} elements (expected {}), {} sign changes, {} permutations, ok = {}",
            r.element_count, r.expected_count, r.sign_changes, r.permutations, r.passed
        );
    }
}
