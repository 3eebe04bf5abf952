//! Positive Hofer lengths of pole paths, the generating Hamiltonian, and
//! the coupling-form area functional reproducing the length.
//!
//! ```bash
//! cargo run -p deltakit --example hofer_length
//! ```

use std::f64::consts::PI;

use deltakit::hofer::area::{area_functional, CouplingFormSpec};
use deltakit::hofer::{generating_hamiltonian, l_plus, rotation_loop, PolePath};
use deltakit::report::fmt_f64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let quarter = PolePath::new(
        (0..2_000)
            .map(|i| {
                let t = PI / 2.0 * i as f64 / 1_999.0;
                [t.sin(), 0.0, t.cos()]
            })
            .collect(),
        false,
    )?;
    println!("l_plus(quarter rotation) = {} (pi/2 = {})", fmt_f64(l_plus(&quarter)?), fmt_f64(PI / 2.0));

    let full = rotation_loop([1.0, 0.0, 0.0], [0.0, 0.0, 1.0], 2_000);
    println!("l_plus(full great-circle loop) = {}", fmt_f64(l_plus(&full)?));

    let ham = generating_hamiltonian(&quarter, 0.5)?;
    let (_, grid_max) = ham.sample_grid(512);
    println!(
        "generating Hamiltonian at t=0.5: speed {} grid max {}",
        fmt_f64(ham.speed),
        fmt_f64(grid_max)
    );

    let spec = CouplingFormSpec::new(quarter.clone(), 0.05, 256, 192);
    let area = area_functional(&spec)?;
    println!(
        "area functional = {} vs l_plus = {}",
        fmt_f64(area),
        fmt_f64(l_plus(&quarter)?)
    );
    Ok(())
}
