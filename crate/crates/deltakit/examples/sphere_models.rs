//! Build the three sphere/disk models and certify them by cell counts and
//! exact integer homology.
//!
//! ```bash
//! cargo run -p deltakit --example sphere_models
//! ```

use deltakit::kan::homology::{homology, Ring};
use deltakit::simplicial::print;
use deltakit::spheres::{build_d4_mod, build_s3_mod, build_s4_mod};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s3 = build_s3_mod()?;
    let d4 = build_d4_mod()?;
    let bundle = build_s4_mod()?;

    for (name, set) in [("s3_mod", &s3), ("d4_mod", &d4), ("s4_mod", &bundle.s4)] {
        println!(
            "{name}: {} nondegenerate cells, euler {}",
            set.nondegenerate_cell_count(),
            set.euler_characteristic()
        );
        for (k, g) in homology(set, 4, Ring::Integers).iter().enumerate() {
            println!("  H_{k} = {g}");
        }
        assert!(set.validate().is_valid());
    }

    let (sigma4, sigma0_0, sigma0_1, sigma1) = bundle.distinguished_cells();
    println!(
        "distinguished cells: sigma4={} sigma0_0={} sigma0_1={} sigma1={}",
        bundle.s4.name(sigma4),
        bundle.s4.name(sigma0_0),
        bundle.s4.name(sigma0_1),
        bundle.s4.name(sigma1),
    );
    for i in 0..=4 {
        println!("  vertex {i} of sigma4 -> {}", bundle.s4.name(bundle.sigma4_vertex(i)));
    }

    println!("--- s3_mod in the model format ---");
    print!("{}", print(&s3));
    Ok(())
}
