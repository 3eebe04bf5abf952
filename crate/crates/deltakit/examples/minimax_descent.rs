//! The explicit family of rotation loops attains its maximum 2*pi on great
//! circles through the antipode; curve-shortening descent from perturbed
//! copies stalls back at that value.
//!
//! The stall exhibits the minimax; it is a property-based substitute, not a
//! proof of the analytic lower bound.
//!
//! ```bash
//! cargo run -p deltakit --example minimax_descent
//! ```

use deltakit::hofer::{descend_family, family_max, optimal_family, perturb_family};
use deltakit::report::fmt_f64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let family = optimal_family(1, 96);
    let (max, vertex) = family_max(&family)?;
    println!(
        "optimal family: {} vertices, family_max {} at vertex {vertex}",
        family.vertices.len(),
        fmt_f64(max)
    );

    let (_, report) = descend_family(&family, 100, 0.3, 1e-5)?;
    println!(
        "descent from the optimal family: stalled={} final_max={}",
        report.stalled,
        fmt_f64(report.final_max)
    );

    for seed in 0..3u64 {
        let perturbed = perturb_family(&family, seed, 5e-3);
        let (m0, _) = family_max(&perturbed)?;
        let (_, report) = descend_family(&perturbed, 150, 0.3, 1e-5)?;
        println!(
            "seed {seed}: initial {} -> stalled at {} after {} steps",
            fmt_f64(m0),
            fmt_f64(report.final_max),
            report.steps_taken
        );
    }
    Ok(())
}
