//! The nerve of a one-object associative algebra agrees cell-for-cell with
//! the classical nerve of its multiplicative monoid.
//!
//! ```bash
//! cargo run -p deltakit --example monoid_nerve
//! ```

use deltakit::ainf::fixtures::dual_numbers;
use deltakit::nerve::nerve;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cat = dual_numbers();
    let nc = nerve(&cat, 3)?;
    println!("all simplices per dimension: {:?}", nc.counts());
    let set = nc.to_simplicial_set();
    let counts: Vec<usize> = (0..=3).map(|d| set.cell_count(d)).collect();
    println!("nondegenerate cells per dimension: {counts:?}");

    // classical count for the 4-element monoid F2[t]/(t^2): n-simplices are
    // n-tuples, nondegenerate ones avoid the identity
    let m = 4usize;
    let classical: Vec<usize> = (0..=3)
        .map(|n| if n == 0 { 1 } else { (m - 1).pow(n as u32) })
        .collect();
    println!("classical monoid nerve:            {classical:?}");
    assert_eq!(counts, classical);

    // the maximal Kan subcomplex keeps the invertible edges only
    let sub = nc.maximal_kan_subcomplex()?.to_simplicial_set();
    let kept: Vec<usize> = (0..=3).map(|d| sub.cell_count(d)).collect();
    println!("maximal Kan subcomplex cells:      {kept:?}");
    Ok(())
}
