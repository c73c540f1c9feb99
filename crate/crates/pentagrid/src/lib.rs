//! Tools for the pentagrid, the tiling {5,4} of the hyperbolic plane by
//! right-angled regular pentagons.
//!
//! The crate is organised around the Fibonacci number system that underlies
//! tile coordinates in a sector of the pentagrid:
//!
//! * [`fibcode`] — Zeckendorf (standard) representations of node numbers.
//! * [`fibtree`] — sector-level tree navigation: status, father, sons,
//!   continuator, neighbours, plus a brute-force generation oracle.
//! * [`grid`] — whole-grid addressing: the central tile, five sector trees,
//!   full five-neighbour resolution across sector borders, bounded balls.
//! * [`geometry`] — isometries of the Poincaré disc, pentagon layout,
//!   SVG rendering and the motion-table verifier.
//! * [`cayley`] — the constructive four-colouring of pentagon sides that
//!   realises the pentagrid as a Cayley graph of an abstract group.
//! * [`tilings`] — bounded-depth enumeration of tilings by a single
//!   pentagon with coloured sides.
//! * [`paths`] — closed paths, the pumped path family and a DFA runner.
//! * [`ca`] — a synchronous cellular-automaton engine on pentagrid balls.

pub mod ca;
pub mod cayley;
pub mod error;
pub mod fibcode;
pub mod fibtree;
pub mod geometry;
pub mod grid;
pub mod paths;
pub mod tilings;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
