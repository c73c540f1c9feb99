//! Pentagon layout: places the base right-angled pentagon on every tile of a
//! ball so that father and son share the correct side.
//!
//! The base pentagon for `{p,q}` is centered at the origin with one vertex on
//! the positive x axis; its circumradius satisfies
//! `cosh R_h = cos(π/q) / sin(π/p)`. Sides are numbered so that side `i`
//! joins vertices `i-1` and `i` counterclockwise; side `i` of a placed tile
//! faces its slot-`i` neighbour.
//!
//! Every placement is an even isometry (a reflection in the shared side
//! composed with a mirror symmetry of the base pentagon), so all tiles carry
//! the same orientation and side labels stay counterclockwise throughout.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::{DiscPoint, HLine, Isometry, Tolerances};
use crate::grid::{Ball, TileAddress};
use crate::{Error, Result};

/// Vertices of the fundamental regular `p`-gon with interior angle `2π/q`,
/// centered at the origin, one vertex on the positive x axis.
pub fn base_polygon(p: u32, q: u32) -> Result<Vec<DiscPoint>> {
    if p < 3 || q < 3 || (p - 2) * (q - 2) <= 4 {
        return Err(Error::NotHyperbolic { p, q });
    }
    // Circumradius from the right triangle (center, vertex, side midpoint):
    // cosh R = cot(π/p) cot(π/q). The companion relation
    // cos(π/q)/sin(π/p) gives the apothem, not R.
    let cosh_rh = 1.0 / ((PI / p as f64).tan() * (PI / q as f64).tan());
    let rh = cosh_rh.acosh();
    let re = (rh / 2.0).tanh();
    Ok((0..p)
        .map(|j| {
            let th = 2.0 * PI * j as f64 / p as f64;
            DiscPoint::new(re * th.cos(), re * th.sin())
        })
        .collect())
}

/// Vertices of the base pentagon of the pentagrid, as complex numbers.
pub fn pentagon() -> &'static [Complex64; 5] {
    static PENTA: OnceLock<[Complex64; 5]> = OnceLock::new();
    PENTA.get_or_init(|| {
        let v = base_polygon(5, 4).expect("{5,4} is hyperbolic");
        [
            v[0].to_complex(),
            v[1].to_complex(),
            v[2].to_complex(),
            v[3].to_complex(),
            v[4].to_complex(),
        ]
    })
}

/// Endpoints of side `i` (1-based) of the base pentagon.
fn base_side(i: u8) -> (Complex64, Complex64) {
    let v = pentagon();
    let i = i as usize;
    (v[i - 1], v[i % 5])
}

/// The gluing map for side `i`: the even isometry taking the base pentagon
/// onto its neighbour across side `i`, with base side 1 landing on side `i`
/// (orientation reversed, as two adjacent polygons induce).
fn glue(i: u8) -> &'static Isometry {
    static GLUE: OnceLock<[Isometry; 5]> = OnceLock::new();
    &GLUE.get_or_init(|| {
        let tol = Tolerances::default();
        std::array::from_fn(|k| {
            let i = (k + 1) as u8;
            let (a, b) = base_side(i);
            let side_line = HLine::through(a, b, &tol).expect("pentagon side");
            let mirror = HLine::Diameter {
                dir: Complex64::from_polar(1.0, PI * i as f64 / 5.0),
            };
            Isometry::reflect(&side_line).compose(&Isometry::reflect(&mirror))
        })
    })[(i - 1) as usize]
}

/// Placement of every tile of a ball: tile address to the even isometry
/// mapping the base pentagon onto it.
#[derive(Debug, Clone)]
pub struct Layout {
    map: HashMap<TileAddress, Isometry>,
}

impl Layout {
    pub fn isometry(&self, t: TileAddress) -> Option<&Isometry> {
        self.map.get(&t)
    }

    /// Vertices of a placed tile, counterclockwise; vertex `j` is the image
    /// of base vertex `j`, so side `i` joins vertices `i-1` and `i mod 5`.
    pub fn tile_vertices(&self, t: TileAddress) -> Option<[Complex64; 5]> {
        let iso = self.map.get(&t)?;
        Some(std::array::from_fn(|j| iso.apply(pentagon()[j])))
    }

    pub fn tile_center(&self, t: TileAddress) -> Option<Complex64> {
        Some(self.map.get(&t)?.apply(Complex64::new(0.0, 0.0)))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Endpoints of side `i` (1-based) of tile `t` under the layout.
pub fn side_endpoints(layout: &Layout, t: TileAddress, i: u8) -> Option<(Complex64, Complex64)> {
    let v = layout.tile_vertices(t)?;
    Some((v[(i - 1) as usize], v[(i as usize) % 5]))
}

/// Order-free key for a side: the midpoint of its endpoints, rounded.
/// Two tiles share a side exactly when their keys collide.
pub fn side_key(a: Complex64, b: Complex64) -> (i64, i64) {
    let m = (a + b) / 2.0;
    ((m.re * 1e6).round() as i64, (m.im * 1e6).round() as i64)
}

/// Lays the ball out: the center gets the identity, each son the father's
/// isometry composed with the gluing map of the father's side facing it.
pub fn layout(ball: &Ball) -> Result<Layout> {
    let mut map: HashMap<TileAddress, Isometry> = HashMap::with_capacity(ball.tile_count());
    map.insert(TileAddress::Center, Isometry::identity());
    // ball.tiles is ordered center first, then rings by level, so the father
    // of every tile is placed before the tile itself.
    for &t in &ball.tiles {
        if t == TileAddress::Center {
            continue;
        }
        let father = crate::grid::neighbors_full(t, ball.flavor)?[0];
        let side = crate::grid::slot_of(father, t, ball.flavor)? as u8 + 1;
        let base = map
            .get(&father)
            .copied()
            .ok_or_else(|| Error::Msg(format!("father {father} of {t} not yet placed")))?;
        map.insert(t, base.compose(glue(side)));
    }
    Ok(Layout { map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibtree::TreeFlavor;
    use crate::geometry::distance;

    #[test]
    fn base_polygon_examples() {
        // Independent check of the circumradius: in the right triangle cut
        // out by the apothem, cosh R = cot(π/p) cot(π/q), which for {5,4}
        // evaluates to cot(36°) ≈ 1.37638; the vertices then sit at
        // Euclidean radius tanh(R/2) ≈ 0.39812. The apothem satisfies
        // cosh r = cos(π/q)/sin(π/p) ≈ 1.2030.
        let v = base_polygon(5, 4).unwrap();
        let r = (v[0].x * v[0].x + v[0].y * v[0].y).sqrt();
        let cosh_rh = 1.0 / ((PI / 5.0).tan() * (PI / 4.0).tan());
        assert!((cosh_rh - 1.37638).abs() < 5e-5);
        assert!((r - (cosh_rh.acosh() / 2.0).tanh()).abs() < 1e-12);
        let apothem = ((PI / 4.0).cos() / (PI / 5.0).sin()).acosh();
        assert!(apothem < cosh_rh.acosh(), "apothem must be shorter than R");

        assert!(base_polygon(7, 3).is_ok());
        assert!(matches!(
            base_polygon(4, 4),
            Err(Error::NotHyperbolic { p: 4, q: 4 })
        ));
    }

    #[test]
    fn pentagon_has_right_angles() {
        let v = pentagon();
        // Interior angle at vertex 0 between sides to vertices 4 and 1,
        // measured with the conformal model's Euclidean tangents.
        let t = Isometry::move_to_origin(v[0]);
        let a = t.apply(v[4]);
        let b = t.apply(v[1]);
        let ang = (a / b).arg().abs();
        assert!((ang - PI / 2.0).abs() < 1e-12, "angle {ang}");
    }

    #[test]
    fn pentagon_sides_equal_length() {
        let v = pentagon();
        let d0 = distance(v[0], v[1]);
        for i in 0..5 {
            let d = distance(v[i], v[(i + 1) % 5]);
            assert!((d - d0).abs() < 1e-12);
        }
    }

    #[test]
    fn glue_maps_are_even_and_land_on_the_shared_side() {
        for i in 1..=5u8 {
            let g = glue(i);
            assert!(!g.is_odd());
            let (a, b) = base_side(i);
            let img0 = g.apply(pentagon()[0]);
            let img1 = g.apply(pentagon()[1]);
            // Base side 1 lands on side i with reversed orientation.
            assert!((img0 - b).norm() < 1e-12, "side {i}: V0 -> {img0}, want {b}");
            assert!((img1 - a).norm() < 1e-12, "side {i}: V1 -> {img1}, want {a}");
        }
    }

    #[test]
    fn layout_places_center_at_identity() {
        let ball = Ball::build(1, TreeFlavor::Standard).unwrap();
        let l = layout(&ball).unwrap();
        let c = l.tile_center(TileAddress::Center).unwrap();
        assert!(c.norm() < 1e-15);
        assert_eq!(l.len(), ball.tile_count());
    }

    #[test]
    fn adjacent_tiles_share_full_sides() {
        let ball = Ball::build(4, TreeFlavor::Standard).unwrap();
        let l = layout(&ball).unwrap();
        for &t in &ball.tiles {
            let nbrs = crate::grid::neighbors_full(t, TreeFlavor::Standard).unwrap();
            for (slot, &u) in nbrs.iter().enumerate() {
                if !ball.contains(u) {
                    continue;
                }
                let (a1, b1) = side_endpoints(&l, t, slot as u8 + 1).unwrap();
                let back = crate::grid::slot_of(u, t, TreeFlavor::Standard).unwrap();
                let (a2, b2) = side_endpoints(&l, u, back as u8 + 1).unwrap();
                // Shared side, traversed in opposite directions.
                let direct = (a1 - b2).norm() + (b1 - a2).norm();
                assert!(
                    direct < 1e-9,
                    "tiles {t} and {u} do not share a side: mismatch {direct:e}"
                );
            }
        }
    }

    #[test]
    fn placed_tiles_are_pairwise_distinct_and_disjoint() {
        let ball = Ball::build(4, TreeFlavor::Standard).unwrap();
        let l = layout(&ball).unwrap();
        let tol = Tolerances::default();
        let centers: Vec<(TileAddress, Complex64)> = ball
            .tiles
            .iter()
            .map(|&t| (t, l.tile_center(t).unwrap()))
            .collect();
        for (i, &(t, c)) in centers.iter().enumerate() {
            for &(u, d) in centers.iter().skip(i + 1) {
                assert!(
                    (c - d).norm() > 1e-6,
                    "tiles {t} and {u} placed at the same spot"
                );
            }
        }
        // No tile center lies inside another tile: all five side lines of
        // the other tile must separate it from that tile's own center.
        for &(t, c) in &centers {
            for &(u, d) in &centers {
                if t == u {
                    continue;
                }
                let v = l.tile_vertices(u).unwrap();
                let mut inside = true;
                for i in 0..5 {
                    let line = HLine::through(v[i], v[(i + 1) % 5], &tol).unwrap();
                    if line.side(c) * line.side(d) < 0.0 {
                        inside = false;
                        break;
                    }
                }
                assert!(!inside, "center of {t} lies inside tile {u}");
            }
        }
    }
}
