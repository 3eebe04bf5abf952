//! Combinatorial and metric machinery for finitely presented simplicial sets,
//! finite A-infinity categories over F2, and Hofer-length computations on the
//! two-sphere.
//!
//! The crate is organized around a handful of independent toolkits:
//!
//! * [`simplicial`] — finitely presented simplicial sets: standard simplices,
//!   boundaries, horns, products with the interval, cones, gluings and
//!   pushouts, plus a textual model format.
//! * [`kan`] — horn-filler search, Kan condition checking, budgeted Kan
//!   completion, exact simplicial homology (Smith normal form over Z, ranks
//!   over F2), edge-path fundamental-group presentations, and budgeted
//!   homotopy-class comparison.
//! * [`spheres`] — the small models of the 3-sphere, 4-disk and 4-sphere used
//!   throughout, with their distinguished cells.
//! * [`ainf`] — finite-dimensional A-infinity categories over F2: relation
//!   checking, the homology (Donaldson–Fukaya) category, c-isomorphism
//!   detection, and a fixture library.
//! * [`nerve`] — the A-infinity nerve: coherence residuals, the
//!   simplex-extension solver, maximal Kan subcomplex extraction, and the
//!   4-simplex obstruction check.
//! * [`maslov`] — Maslov numbers of loops and paths of Lagrangian lines,
//!   the end-closing construction, Fredholm index and expected-dimension
//!   arithmetic.
//! * [`hofer`] — positive Hofer length of great-circle paths via pole paths,
//!   generating Hamiltonians, the coupling-form area functional, and minimax
//!   over sphere families with discrete curve-shortening descent.
//!
//! Each major capability has a runnable example under `examples/`; the thin
//! `deltakit` binary exposes the same operations as subcommands.

pub mod ainf;
pub mod cli;
pub mod config;
pub mod gf2;
pub mod hofer;
pub mod kan;
pub mod maslov;
pub mod nerve;
pub mod report;
pub mod simplicial;
pub mod snf;
pub mod spheres;
