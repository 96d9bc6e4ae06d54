use std::sync::Arc;

use octobil::builtin;
use octobil::maps::codomain_change_of_basis;
use octobil::scalar::{format_vector, ints};
use octobil::verify::{fuzz_nonsingularity, verify_not_in_image};

fn main() {
    let p = Arc::new(builtin("poly_mul(2,2)").unwrap());
    let z = ints(&[1, 0, 1]);

    let avoid = verify_not_in_image(&p, &z, 20_000, 0xC0DA, 9).unwrap();
    println!("(1,0,1) avoided: {} ({} sign checks)", avoid.passed, avoid.sign_checks.unwrap_or(0));

    let q = p.quotient_project(&z).unwrap();
    println!("{} : {:?}", q.id(), q.dims());
    println!("fuzz: {}", fuzz_nonsingularity(&q, 1_000, 0xC0DA, 5).unwrap().passed);

    let c = builtin("complex_mul").unwrap();
    let m = codomain_change_of_basis(q.as_tensor(), c.as_tensor()).unwrap();
    println!("change of basis onto complex_mul:");
    for row in m.to_rows() {
        println!("  {}", format_vector(&row));
    }
}
