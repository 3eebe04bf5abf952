//! Horn problems and filler search: the inner horn of the triangle fills
//! with its top cell, the point is Kan, the interval is not.
//!
//! ```bash
//! cargo run -p deltakit --example horn_filling
//! ```

use deltakit::kan::{find_filler, is_kan, visit_horns, HornProblem};
use deltakit::simplicial::{standard_simplex, Simplex};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let triangle = standard_simplex(2)?;
    let e01 = Simplex::nondegenerate(triangle.cell_by_name(1, "01").unwrap());
    let e12 = Simplex::nondegenerate(triangle.cell_by_name(1, "12").unwrap());
    let problem = HornProblem::new(2, 1, vec![(0, e12), (2, e01)]);
    match find_filler(&triangle, &problem) {
        Some(filler) => println!(
            "{}",
            problem.report_line(&triangle, true).replace("filled", &format!(
                "filled by {}",
                triangle.describe(&filler)
            ))
        ),
        None => println!("{}", problem.report_line(&triangle, false)),
    }

    let point = standard_simplex(0)?;
    println!("is_kan(point, 2): {}", is_kan(&point, 2, 10_000));

    let interval = standard_simplex(1)?;
    println!("is_kan(interval, 2): {}", is_kan(&interval, 2, 10_000).render(&interval));

    // the first few horn problems of the interval, line by line
    let mut shown = 0;
    visit_horns(&interval, 2, &mut |p| {
        let filled = find_filler(&interval, p).is_some();
        println!("{}", p.report_line(&interval, filled));
        shown += 1;
        shown < 8
    });
    Ok(())
}
