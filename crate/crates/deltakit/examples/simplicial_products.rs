//! Cylinders, cones and quotients: the shuffle count of a prism, the cone
//! cell count, and the two-cell quotient of the 3-simplex.
//!
//! ```bash
//! cargo run -p deltakit --example simplicial_products
//! ```

use deltakit::simplicial::{
    cone, glue, product_with_interval, standard_simplex, DegWord, Simplex,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 0..=2 {
        let x = standard_simplex(n)?;
        let prism = product_with_interval(&x)?.product;
        let top = prism.max_dim();
        println!(
            "Delta^{n} x I: {} nondegenerate cells, {} in top dimension {top}",
            prism.nondegenerate_cell_count(),
            prism.cell_count(top),
        );
        assert!(prism.validate().is_valid());
    }

    let square = product_with_interval(&standard_simplex(1)?)?.product;
    println!("euler(Delta^1 x I) = {}", square.euler_characteristic());

    let triangle_boundary = deltakit::simplicial::boundary(2)?.0;
    let c = cone(&triangle_boundary)?;
    println!(
        "cone(boundary Delta^2): {} cells, euler {}",
        c.cone.nondegenerate_cell_count(),
        c.cone.euler_characteristic()
    );

    // collapse all proper faces of the 3-simplex to a point
    let delta3 = standard_simplex(3)?;
    let v0 = delta3.cell_by_name(0, "0").unwrap();
    let mut idents = Vec::new();
    for d in 0..=2usize {
        for cell in delta3.cells(d) {
            idents.push((
                Simplex::nondegenerate(cell),
                Simplex { cell: v0, word: DegWord::full_collapse(d) },
            ));
        }
    }
    let quotient = glue(&delta3, &idents)?.quotient;
    println!(
        "Delta^3 / boundary: {} nondegenerate cells ({})",
        quotient.nondegenerate_cell_count(),
        quotient.validate()
    );
    Ok(())
}
