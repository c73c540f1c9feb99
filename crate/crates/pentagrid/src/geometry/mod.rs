//! Hyperbolic geometry in the Poincaré disc: isometries, pentagon layout,
//! SVG rendering, and the motion-table verifier.

mod isometry;
mod layout;
mod motions;
mod svg;

pub use isometry::{
    distance, midpoint, perp_bisector, perpendicular_at, shift_along, HLine, Isometry,
    MotionClass,
};
pub use layout::{base_polygon, layout, pentagon, side_endpoints, side_key, Layout};
pub use motions::{verify_motion_table, MotionCase, MotionReport, OddKind, SidePair};
pub use svg::render_svg;

use num_complex::Complex64;

/// A point strictly inside the unit disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscPoint {
    pub x: f64,
    pub y: f64,
}

impl DiscPoint {
    pub fn new(x: f64, y: f64) -> Self {
        DiscPoint { x, y }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn from_complex(z: Complex64) -> Self {
        DiscPoint { x: z.re, y: z.im }
    }

    pub fn is_inside(&self) -> bool {
        self.x * self.x + self.y * self.y < 1.0
    }
}

/// Numerical tolerances used by the geometric verifiers.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Geometric coincidence (shared sides, fixed points): 1e-9.
    pub coincidence: f64,
    /// Algebraic identities (involution, determinant drift): 1e-12.
    pub algebra: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            coincidence: 1e-9,
            algebra: 1e-12,
        }
    }
}

impl Tolerances {
    pub fn with_coincidence(c: f64) -> Self {
        Tolerances {
            coincidence: c,
            ..Default::default()
        }
    }
}
