//! Kan-complete the one-edge circle model and watch the homology stay put.
//!
//! ```bash
//! cargo run -p deltakit --example kan_completion
//! ```

use deltakit::kan::homology::{homology, induces_homology_iso, Ring};
use deltakit::kan::{is_kan, kan_complete};
use deltakit::simplicial::{glue, standard_simplex, Simplex};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // the circle: glue the interval's endpoints
    let interval = standard_simplex(1)?;
    let v0 = Simplex::nondegenerate(interval.cell_by_name(0, "0").unwrap());
    let v1 = Simplex::nondegenerate(interval.cell_by_name(0, "1").unwrap());
    let circle = glue(&interval, &[(v0, v1)])?.quotient;
    println!(
        "circle model: {} cells, H_* = {:?}",
        circle.nondegenerate_cell_count(),
        homology(&circle, 2, Ring::Integers)
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
    );
    println!("is_kan(circle, 2): {}", is_kan(&circle, 2, 10_000));

    let (completed, inclusion, report) = kan_complete(&circle, 2, 40);
    println!(
        "after completion (budget 40): {} cells, attachments {}, certified {}",
        completed.nondegenerate_cell_count(),
        report.attachments,
        report.certified
    );
    for n in 0..=1 {
        println!(
            "  inclusion iso on H_{n}: {}",
            induces_homology_iso(&inclusion, n)?
        );
    }
    Ok(())
}
