//! The motion-table verifier.
//!
//! Labels a right-angled pentagon `A B C D E` clockwise and equips each side
//! with the generator moving one endpoint to the next around the contour.
//! Three of the five generators are shifts along their sides; the remaining
//! two are odd motions, each either the reflection swapping the endpoints or
//! the glide along the side (reflection in the side composed with the shift
//! along it). The two odd generators sit on contiguous sides (`AB`, `BC`) or
//! on sides separated by one (`AB`, `CD`).
//!
//! The contour word read from `B` composes to an isometry fixing `B`. Were
//! the pentagrid the Cayley graph of these isometries, that composite would
//! be the identity; instead it moves the angle `(BA, BC)` at `B` into one of
//! the other three right angles around `B`. The verifier reports, for each
//! of the eight odd-kind cases, which angle the composite lands in: angles
//! are numbered 1 to 4 starting from `(BA, BC)`, and the table is reproduced
//! only if the result is never angle 1.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::isometry::{perp_bisector, shift_along, HLine, Isometry};
use super::layout::pentagon;
use super::Tolerances;
use crate::{Error, Result};

/// Kind of an odd generator, `g` for glide and `r` for reflection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OddKind {
    Glide,
    Reflection,
}

impl OddKind {
    pub fn letter(self) -> char {
        match self {
            OddKind::Glide => 'g',
            OddKind::Reflection => 'r',
        }
    }
}

/// Whether the sides defining the two odd generators are contiguous or
/// separated by one side of the pentagon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SidePair {
    Contiguous,
    Separated,
}

#[derive(Debug, Clone, Copy)]
pub struct MotionCase {
    pub pair: SidePair,
    pub g1: OddKind,
    pub g2: OddKind,
    /// Angle slot the composite sends angle 1 to.
    pub angle: u8,
    /// Angle slot the table expects.
    pub expected: u8,
}

#[derive(Debug, Clone)]
pub struct MotionReport {
    pub cases: Vec<MotionCase>,
}

impl MotionReport {
    pub fn matches_table(&self) -> bool {
        self.cases.iter().all(|c| c.angle == c.expected)
    }

    pub fn never_angle_one(&self) -> bool {
        self.cases.iter().all(|c| c.angle != 1)
    }
}

/// Vertices `A B C D E`, clockwise.
fn contour() -> [Complex64; 5] {
    let v = pentagon();
    [v[0], v[4], v[3], v[2], v[1]]
}

fn odd_generator(kind: OddKind, x: Complex64, y: Complex64, tol: &Tolerances) -> Result<Isometry> {
    match kind {
        OddKind::Reflection => Ok(Isometry::reflect(&perp_bisector(x, y, tol)?)),
        OddKind::Glide => {
            let line = HLine::through(x, y, tol)?;
            Ok(Isometry::reflect(&line).compose(&shift_along(x, y, tol)?))
        }
    }
}

/// Composes the contour word starting at `B` (so the composite fixes `B`)
/// and reads off which of the four right angles at `B` the angle `(BA, BC)`
/// lands in.
fn run_case(pair: SidePair, g1: OddKind, g2: OddKind, tol: &Tolerances) -> Result<u8> {
    let [a, b, c, d, e] = contour();
    let sides = [(a, b), (b, c), (c, d), (d, e), (e, a)];
    let mut gens: Vec<Isometry> = Vec::with_capacity(5);
    for (i, &(x, y)) in sides.iter().enumerate() {
        let gen = match (i, pair) {
            (0, _) => odd_generator(g1, x, y, tol)?,
            (1, SidePair::Contiguous) | (2, SidePair::Separated) => {
                odd_generator(g2, x, y, tol)?
            }
            _ => shift_along(x, y, tol)?,
        };
        gens.push(gen);
    }
    // Apply the generators in contour order from B: B -> C -> D -> E -> A -> B.
    let mut composite = gens[1];
    for g in [&gens[2], &gens[3], &gens[4], &gens[0]] {
        composite = g.compose(&composite);
    }
    angle_slot_at(b, a, c, &composite, tol)
}

/// Which of the four right angles around `base` contains the image of the
/// bisector of the angle `(base->u, base->v)` under `g`; `g` must fix
/// `base`. Slots are numbered 1..=4 from that angle, advancing toward `v`.
fn angle_slot_at(
    base: Complex64,
    u: Complex64,
    v: Complex64,
    g: &Isometry,
    tol: &Tolerances,
) -> Result<u8> {
    let moved = (g.apply(base) - base).norm();
    if moved > tol.coincidence * 10.0 {
        return Err(Error::Degenerate(format!(
            "composite does not fix the base vertex (moved {moved:e})"
        )));
    }
    let t = Isometry::move_to_origin(base);
    let phi = t.compose(g).compose(&t.inverse());
    let dir_u = {
        let w = t.apply(u);
        w / w.norm()
    };
    let dir_v = {
        let w = t.apply(v);
        w / w.norm()
    };
    let bisector = {
        let s = dir_u + dir_v;
        s / s.norm()
    };
    let image = {
        let w = phi.tangent(Complex64::new(0.0, 0.0), bisector);
        w / w.norm()
    };
    // Right-angled corner: dir_v sits a quarter turn from dir_u. Angles are
    // measured from dir_u in the direction of dir_v, in units of π/2.
    let orient = (dir_u.re * dir_v.im - dir_u.im * dir_v.re).signum();
    let raw = orient * (image / dir_u).arg();
    let phi_angle = raw.rem_euclid(2.0 * PI);
    let slot = (phi_angle / FRAC_PI_2).floor() as i64;
    let offset = phi_angle - slot as f64 * FRAC_PI_2;
    if offset.min(FRAC_PI_2 - offset) < 1e-6 {
        return Err(Error::Degenerate(
            "image direction sits on an angle boundary".into(),
        ));
    }
    Ok((slot.rem_euclid(4) + 1) as u8)
}

/// Runs the eight cases of the motion table and reports the resulting angle
/// of every case against the expected value.
pub fn verify_motion_table(tol: &Tolerances) -> Result<MotionReport> {
    use OddKind::{Glide as G, Reflection as R};
    use SidePair::{Contiguous, Separated};
    let expected = [
        (Contiguous, G, G, 2),
        (Contiguous, G, R, 4),
        (Contiguous, R, G, 4),
        (Contiguous, R, R, 2),
        (Separated, G, G, 4),
        (Separated, G, R, 2),
        (Separated, R, G, 2),
        (Separated, R, R, 4),
    ];
    let mut cases = Vec::with_capacity(8);
    for (pair, g1, g2, want) in expected {
        let angle = run_case(pair, g1, g2, tol)?;
        cases.push(MotionCase {
            pair,
            g1,
            g2,
            angle,
            expected: want,
        });
    }
    Ok(MotionReport { cases })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Five shifts around the contour rotate the angle at `B` one slot:
    /// `(BA, BC)` lands in `(BC, BF)`, the second angle.
    #[test]
    fn all_even_contour_lands_in_angle_two() {
        let tol = Tolerances::default();
        let [a, b, c, d, e] = contour();
        let sides = [(a, b), (b, c), (c, d), (d, e), (e, a)];
        let gens: Vec<Isometry> = sides
            .iter()
            .map(|&(x, y)| shift_along(x, y, &tol).unwrap())
            .collect();
        let mut composite = gens[1];
        for g in [&gens[2], &gens[3], &gens[4], &gens[0]] {
            composite = g.compose(&composite);
        }
        let slot = angle_slot_at(b, a, c, &composite, &tol).unwrap();
        assert_eq!(slot, 2);
    }

    #[test]
    fn table_is_reproduced_and_never_angle_one() {
        let report = verify_motion_table(&Tolerances::default()).unwrap();
        assert_eq!(report.cases.len(), 8);
        for case in &report.cases {
            assert_eq!(
                case.angle, case.expected,
                "case {:?} {}{} gave angle {}",
                case.pair,
                case.g1.letter(),
                case.g2.letter(),
                case.angle
            );
        }
        assert!(report.never_angle_one());
    }
}
