//! Maslov numbers of line loops, the end-closing construction, and the
//! index arithmetic that forces Maslov -2 at arity 4.
//!
//! ```bash
//! cargo run -p deltakit --example maslov_index
//! ```

use std::f64::consts::PI;

use deltakit::maslov::{
    expected_dimension, fredholm_index, linear_sweep, maslov_of_loop, BoundarySegment,
    SurfaceEndData,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut ccw = linear_sweep(0.0, PI, 16);
    ccw.closed = true;
    println!("counterclockwise degree-1 loop: maslov {}", maslov_of_loop(&ccw)?);
    println!("its reverse: maslov {}", maslov_of_loop(&ccw.reverse())?);
    let double = ccw.concat(&ccw)?;
    println!("traversed twice: maslov {}", maslov_of_loop(&double)?);

    // a disk-like surface: one boundary arc sweeping 0 -> pi, a constant
    // end path closing it off
    let data = SurfaceEndData {
        euler_char_closed: 1,
        components: vec![vec![
            BoundarySegment::Arc(linear_sweep(0.0, PI, 8)),
            BoundarySegment::EndPath(linear_sweep(PI, PI, 2)),
        ]],
        orientation_sign: Default::default(),
    };
    println!("closed-off surface: total maslov {}", data.total_maslov()?);
    println!("fredholm index (rank 1): {}", data.fredholm()?);

    println!("fredholm_index(1, 1, -2) = {}", fredholm_index(1, 1, -2));
    for maslov in [-4, -2, 0] {
        let dim = expected_dimension(4, maslov, &[1, 1, 1, 1])?;
        println!("expected_dimension(d=4, maslov={maslov}, degs=1,1,1,1) = {dim}");
    }
    Ok(())
}
