//! The 4-simplex extension problem: the simplex over the distinguished
//! boundary exists exactly when the correlator pairing vanishes.
//!
//! ```bash
//! cargo run -p deltakit --example nerve_obstruction
//! ```

use deltakit::ainf::fixtures::obstruction_fixture;
use deltakit::nerve::obstruction_check;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for seed in 0..5u64 {
        for zero in [true, false] {
            let fixture = obstruction_fixture(seed, zero);
            let outcome = obstruction_check(&fixture)?;
            println!(
                "seed {seed}: correlator={} simplex_exists={} solutions={} holds={}",
                outcome.correlator,
                outcome.simplex_exists,
                outcome.solutions.count(),
                outcome.holds(),
            );
        }
    }
    Ok(())
}
