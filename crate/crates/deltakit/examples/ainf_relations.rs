//! A-infinity relation checking on the fixture library, plus a seeded
//! single-entry corruption that the checker pins down.
//!
//! ```bash
//! cargo run -p deltakit --example ainf_relations
//! ```

use deltakit::ainf::fixtures::{
    acyclic_two_dim, dual_numbers, field_f2, inject_fault, obstruction_fixture, triple_product, Fault,
};
use deltakit::ainf::{check_relations, homology_category, is_c_isomorphism};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, cat) in [
        ("field_f2", field_f2()),
        ("dual_numbers", dual_numbers()),
        ("acyclic_two_dim", acyclic_two_dim()),
        ("triple_product", triple_product()),
        ("obstruction_fixture(0)", obstruction_fixture(0, true).category),
    ] {
        println!("{name}: {}", check_relations(&cat, 5));
    }

    // corrupt one mu^3 entry of the dg part of an obstruction fixture
    let mut dg = obstruction_fixture(0, true).category;
    dg.mu.remove(&vec![0, 1, 2, 3, 4]);
    let fault = Fault { chain: vec![0, 1, 2, 3], tuple: vec![0, 0, 0], bit: 0 };
    let bad = inject_fault(&dg, &fault);
    println!("after a mu^3 flip: {}", check_relations(&bad, 5));

    // homology category and c-isomorphisms of the dual numbers
    let cat = dual_numbers();
    let hc = homology_category(&cat)?;
    println!("dual numbers: dim H hom(A, A) = {}", hc.dim(0, 0));
    let unit = cat.units[&0];
    println!(
        "unit is a c-isomorphism: {}",
        is_c_isomorphism(&cat, 0, 0, unit)?
    );
    println!("zero map is a c-isomorphism: {}", is_c_isomorphism(&cat, 0, 0, 0)?);
    Ok(())
}
