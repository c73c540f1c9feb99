//! Isometries of the Poincaré disc.
//!
//! An h-line is supported by a diameter or by a circle orthogonal to the
//! unit circle (center `Ω`, radius `R`, with `|Ω|² = 1 + R²`). Reflections
//! in h-lines generate every isometry; even isometries (products of two
//! reflections) are rotations, ideal rotations or shifts, odd ones are
//! reflections or glides.
//!
//! Even isometries are stored as unit-determinant fractional-linear maps
//! `z -> (a z + b)/(conj(b) z + conj(a))`; odd ones conjugate the argument
//! first. Only the top row `(a, b)` is kept.

use num_complex::Complex64;

use super::{DiscPoint, Tolerances};
use crate::{Error, Result};

fn cross(p: Complex64, q: Complex64) -> f64 {
    p.re * q.im - p.im * q.re
}

fn dot(p: Complex64, q: Complex64) -> f64 {
    p.re * q.re + p.im * q.im
}

/// A hyperbolic line in the disc model.
#[derive(Debug, Clone, Copy)]
pub enum HLine {
    /// Supported by a diameter with the given unit direction.
    Diameter { dir: Complex64 },
    /// Supported by a circle orthogonal to the unit circle.
    Arc { center: Complex64, radius: f64 },
}

impl HLine {
    /// The h-line through two distinct points of the disc.
    pub fn through(p: Complex64, q: Complex64, tol: &Tolerances) -> Result<HLine> {
        let d = cross(p, q);
        if (p - q).norm() < tol.algebra {
            return Err(Error::Degenerate("h-line through coincident points".into()));
        }
        if d.abs() < 1e-14 * (1.0 + p.norm() * q.norm()) {
            // Collinear with the origin: a diameter.
            let dir = (q - p) / (q - p).norm();
            return Ok(HLine::Diameter { dir });
        }
        // Solve 2<Ω,p> = 1 + |p|², 2<Ω,q> = 1 + |q|².
        let bp = 1.0 + p.norm_sqr();
        let bq = 1.0 + q.norm_sqr();
        let det = 4.0 * d;
        let ox = (bp * 2.0 * q.im - bq * 2.0 * p.im) / det;
        let oy = (bq * 2.0 * p.re - bp * 2.0 * q.re) / det;
        let center = Complex64::new(ox, oy);
        let radius = (center.norm_sqr() - 1.0).sqrt();
        Ok(HLine::Arc { center, radius })
    }

    /// The h-line with the two given ideal endpoints (unit vectors).
    pub fn through_ideal(e1: Complex64, e2: Complex64, tol: &Tolerances) -> Result<HLine> {
        if (e1 - e2).norm() < tol.algebra {
            return Err(Error::Degenerate("coincident ideal endpoints".into()));
        }
        let d = cross(e1, e2);
        if d.abs() < 1e-12 {
            // Antipodal endpoints: a diameter.
            return Ok(HLine::Diameter {
                dir: e1 / e1.norm(),
            });
        }
        // <Ω,e1> = <Ω,e2> = 1.
        let ox = (e2.im - e1.im) / d;
        let oy = (e1.re - e2.re) / d;
        let center = Complex64::new(ox, oy);
        let radius = (center.norm_sqr() - 1.0).sqrt();
        Ok(HLine::Arc { center, radius })
    }

    /// Signed side of the line: 0 on it, same sign = same component.
    pub fn side(&self, z: Complex64) -> f64 {
        match self {
            HLine::Diameter { dir } => cross(*dir, z),
            HLine::Arc { center, radius } => (z - center).norm() - radius,
        }
    }

    pub fn contains(&self, z: Complex64, eps: f64) -> bool {
        self.side(z).abs() < eps
    }

    /// Unit tangent direction at a point assumed to lie on the line.
    pub fn tangent_at(&self, z: Complex64) -> Complex64 {
        match self {
            HLine::Diameter { dir } => *dir,
            HLine::Arc { center, .. } => {
                let r = z - center;
                let t = Complex64::new(-r.im, r.re);
                t / t.norm()
            }
        }
    }

    /// The two ideal endpoints of the line.
    pub fn ideal_endpoints(&self) -> (Complex64, Complex64) {
        match self {
            HLine::Diameter { dir } => (*dir, -*dir),
            HLine::Arc { center, radius } => {
                // Intersection of |z| = 1 and |z - Ω| = R: points at
                // <z, Ω> = 1 on the unit circle.
                let n = center.norm();
                let along = 1.0 / n;
                let perp = (1.0 - along * along).sqrt();
                let u = center / n;
                let v = Complex64::new(-u.im, u.re);
                let _ = radius;
                (u * along + v * perp, u * along - v * perp)
            }
        }
    }
}

/// An isometry of the hyperbolic plane.
#[derive(Debug, Clone, Copy)]
pub struct Isometry {
    a: Complex64,
    b: Complex64,
    odd: bool,
}

impl Isometry {
    pub fn identity() -> Self {
        Isometry {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            odd: false,
        }
    }

    /// Odd if a product of an odd number of reflections.
    pub fn is_odd(&self) -> bool {
        self.odd
    }

    fn normalized(a: Complex64, b: Complex64, odd: bool) -> Self {
        let det = a.norm_sqr() - b.norm_sqr();
        let s = det.sqrt();
        Isometry {
            a: a / s,
            b: b / s,
            odd,
        }
    }

    /// The reflection in an h-line: `Ω M · Ω M' = R²` with `M`, `M'` and `Ω`
    /// aligned for circular supports; the Euclidean mirror for diameters.
    pub fn reflect(l: &HLine) -> Self {
        match l {
            HLine::Diameter { dir } => Isometry {
                a: *dir / dir.norm(),
                b: Complex64::new(0.0, 0.0),
                odd: true,
            },
            HLine::Arc { center, radius } => {
                let i = Complex64::i();
                Isometry::normalized(-i * center / radius, i / radius, true)
            }
        }
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let (oa, ob) = if self.odd {
            (other.a.conj(), other.b.conj())
        } else {
            (other.a, other.b)
        };
        let a = self.a * oa + self.b * ob.conj();
        let b = self.a * ob + self.b * oa.conj();
        Isometry::normalized(a, b, self.odd ^ other.odd)
    }

    pub fn inverse(&self) -> Isometry {
        if self.odd {
            Isometry {
                a: self.a,
                b: -self.b.conj(),
                odd: true,
            }
        } else {
            Isometry {
                a: self.a.conj(),
                b: -self.b,
                odd: false,
            }
        }
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        let w = if self.odd { z.conj() } else { z };
        (self.a * w + self.b) / (self.b.conj() * w + self.a.conj())
    }

    pub fn apply_point(&self, p: DiscPoint) -> DiscPoint {
        DiscPoint::from_complex(self.apply(p.to_complex()))
    }

    /// Image of a tangent vector `v` attached at `z`.
    pub fn tangent(&self, z: Complex64, v: Complex64) -> Complex64 {
        let (w, v) = if self.odd {
            (z.conj(), v.conj())
        } else {
            (z, v)
        };
        let den = self.b.conj() * w + self.a.conj();
        v / (den * den)
    }

    /// The automorphism sending `z0` to the origin (even).
    pub fn move_to_origin(z0: Complex64) -> Isometry {
        let s = (1.0 - z0.norm_sqr()).sqrt();
        Isometry {
            a: Complex64::new(1.0 / s, 0.0),
            b: -z0 / s,
            odd: false,
        }
    }

    /// Rotation by `theta` about the origin.
    pub fn rotation_at_origin(theta: f64) -> Isometry {
        Isometry {
            a: Complex64::from_polar(1.0, theta / 2.0),
            b: Complex64::new(0.0, 0.0),
            odd: false,
        }
    }

    /// Rotation by π about `p`.
    pub fn point_reflection(p: Complex64) -> Isometry {
        let t = Isometry::move_to_origin(p);
        t.inverse()
            .compose(&Isometry::rotation_at_origin(std::f64::consts::PI))
            .compose(&t)
    }

    /// Matrix distance to the identity, insensitive to the ±M ambiguity.
    fn dist_to_identity(&self) -> f64 {
        let d_plus = (self.a - Complex64::new(1.0, 0.0)).norm() + self.b.norm();
        let d_minus = (self.a + Complex64::new(1.0, 0.0)).norm() + self.b.norm();
        d_plus.min(d_minus)
    }
}

/// Hyperbolic distance between two points of the disc.
pub fn distance(z: Complex64, w: Complex64) -> f64 {
    let num = (z - w).norm();
    let den = (Complex64::new(1.0, 0.0) - w.conj() * z).norm();
    2.0 * (num / den).atanh()
}

/// Hyperbolic midpoint of the segment `x y`.
pub fn midpoint(x: Complex64, y: Complex64) -> Complex64 {
    let t = Isometry::move_to_origin(x);
    let y1 = t.apply(y);
    let r = y1.norm();
    let half = (r.atanh() / 2.0).tanh();
    t.inverse().apply(y1 / r * half)
}

/// The h-line through `p` perpendicular to `l`; `p` must lie on `l`.
pub fn perpendicular_at(l: &HLine, p: Complex64, tol: &Tolerances) -> Result<HLine> {
    let t = Isometry::move_to_origin(p);
    let dir = t.tangent(p, l.tangent_at(p));
    let n = Complex64::new(-dir.im, dir.re);
    let n = n / n.norm();
    let q1 = t.inverse().apply(n * 0.4);
    let q2 = t.inverse().apply(-n * 0.4);
    HLine::through(q1, q2, tol)
}

/// The perpendicular bisector of the segment `x y` (the mirror swapping the
/// two points).
pub fn perp_bisector(x: Complex64, y: Complex64, tol: &Tolerances) -> Result<HLine> {
    let line = HLine::through(x, y, tol)?;
    perpendicular_at(&line, midpoint(x, y), tol)
}

/// The shift along the line `x y` transforming `x` into `y`: the product of
/// the reflections in the perpendicular at `x` and in the perpendicular
/// bisector of `x y`.
pub fn shift_along(x: Complex64, y: Complex64, tol: &Tolerances) -> Result<Isometry> {
    let line = HLine::through(x, y, tol)?;
    let m1 = perpendicular_at(&line, x, tol)?;
    let m2 = perp_bisector(x, y, tol)?;
    Ok(Isometry::reflect(&m2).compose(&Isometry::reflect(&m1)))
}

/// Classification of an isometry, with witness data.
#[derive(Debug, Clone)]
pub enum MotionClass {
    Identity,
    Rotation { center: DiscPoint },
    IdealRotation,
    Shift { axis: HLine },
    Reflection { axis: HLine },
    Glide { axis: HLine },
}

impl MotionClass {
    pub fn name(&self) -> &'static str {
        match self {
            MotionClass::Identity => "identity",
            MotionClass::Rotation { .. } => "rotation",
            MotionClass::IdealRotation => "ideal_rotation",
            MotionClass::Shift { .. } => "shift",
            MotionClass::Reflection { .. } => "reflection",
            MotionClass::Glide { .. } => "glide",
        }
    }
}

/// Classifies a product of at most three reflections.
pub fn classify(g: &Isometry, tol: &Tolerances) -> Result<MotionClass> {
    let eps = tol.coincidence;
    if !g.odd {
        if g.dist_to_identity() < eps {
            return Ok(MotionClass::Identity);
        }
        let tr = 2.0 * g.a.re;
        if tr.abs() < 2.0 - eps {
            // Elliptic: the interior fixed point of b̄ z² + (ā − a) z − b = 0.
            if g.b.norm() < eps {
                return Ok(MotionClass::Rotation {
                    center: DiscPoint::new(0.0, 0.0),
                });
            }
            let bb = g.b.conj();
            let lin = g.a.conj() - g.a;
            let disc = (lin * lin + bb * g.b * 4.0).sqrt();
            let z1 = (-lin + disc) / (bb * 2.0);
            let z2 = (-lin - disc) / (bb * 2.0);
            let z = if z1.norm() < 1.0 { z1 } else { z2 };
            if z.norm() >= 1.0 {
                return Err(Error::Degenerate("no interior fixed point found".into()));
            }
            return Ok(MotionClass::Rotation {
                center: DiscPoint::from_complex(z),
            });
        }
        if tr.abs() > 2.0 + eps {
            let (e1, e2) = even_boundary_fixed_points(g)?;
            return Ok(MotionClass::Shift {
                axis: HLine::through_ideal(e1, e2, tol)?,
            });
        }
        return Ok(MotionClass::IdealRotation);
    }
    // Odd: a reflection if it is an involution, otherwise a glide whose axis
    // is the axis of its square.
    let gg = g.compose(g);
    if gg.dist_to_identity() < eps {
        let (e1, e2) = odd_boundary_fixed_points(g)?;
        return Ok(MotionClass::Reflection {
            axis: HLine::through_ideal(e1, e2, tol)?,
        });
    }
    match classify(&gg, tol)? {
        MotionClass::Shift { axis } => Ok(MotionClass::Glide { axis }),
        other => Err(Error::Degenerate(format!(
            "odd isometry whose square classifies as {}",
            other.name()
        ))),
    }
}

fn unit_roots_of(a2: Complex64, a1: Complex64, a0: Complex64) -> Result<(Complex64, Complex64)> {
    // Roots of a2 z² + a1 z + a0, expected on the unit circle.
    let disc = (a1 * a1 - a2 * a0 * 4.0).sqrt();
    let q = if (a1 + disc).norm() > (a1 - disc).norm() {
        -(a1 + disc) / 2.0
    } else {
        -(a1 - disc) / 2.0
    };
    if q.norm() == 0.0 || a2.norm() == 0.0 {
        return Err(Error::Degenerate("degenerate fixed point equation".into()));
    }
    let z1 = q / a2;
    let z2 = a0 / q;
    Ok((z1 / z1.norm(), z2 / z2.norm()))
}

fn even_boundary_fixed_points(g: &Isometry) -> Result<(Complex64, Complex64)> {
    unit_roots_of(g.b.conj(), g.a.conj() - g.a, -g.b)
}

fn odd_boundary_fixed_points(g: &Isometry) -> Result<(Complex64, Complex64)> {
    unit_roots_of(g.a.conj(), g.b.conj() - g.b, -g.a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn sample_points(count: usize) -> Vec<Complex64> {
        // Deterministic low-discrepancy-ish scatter inside the disc.
        (0..count)
            .map(|i| {
                let t = i as f64 + 1.0;
                let r = 0.93 * (t * 0.618_033_988_749).fract();
                let th = 2.0 * PI * (t * 0.414_213_562_373).fract();
                Complex64::from_polar(r, th)
            })
            .collect()
    }

    fn sample_lines() -> Vec<HLine> {
        let tol = Tolerances::default();
        let pts = sample_points(40);
        let mut lines = vec![
            HLine::Diameter {
                dir: Complex64::new(1.0, 0.0),
            },
            HLine::Diameter {
                dir: Complex64::from_polar(1.0, 1.1),
            },
        ];
        for w in pts.chunks(2) {
            if let [p, q] = w {
                if let Ok(l) = HLine::through(*p, *q, &tol) {
                    lines.push(l);
                }
            }
        }
        lines
    }

    #[test]
    fn reflection_is_involution() {
        for l in sample_lines() {
            let r = Isometry::reflect(&l);
            for z in sample_points(25) {
                let back = r.apply(r.apply(z));
                assert!((back - z).norm() < 1e-12, "involution fails: {z} -> {back}");
            }
        }
    }

    #[test]
    fn diameter_reflection_is_euclidean_mirror() {
        let r = Isometry::reflect(&HLine::Diameter {
            dir: Complex64::new(1.0, 0.0),
        });
        for z in sample_points(25) {
            let img = r.apply(z);
            assert!((img - z.conj()).norm() < 1e-13);
        }
    }

    #[test]
    fn reflections_fix_their_line() {
        let tol = Tolerances::default();
        let p = Complex64::new(0.3, 0.1);
        let q = Complex64::new(-0.2, 0.45);
        let l = HLine::through(p, q, &tol).unwrap();
        let r = Isometry::reflect(&l);
        for z in [p, q, midpoint(p, q)] {
            assert!((r.apply(z) - z).norm() < 1e-12);
        }
    }

    #[test]
    fn metric_preserved_by_products() {
        let lines = sample_lines();
        let mut g = Isometry::identity();
        for l in lines.iter().take(5) {
            g = g.compose(&Isometry::reflect(l));
        }
        let pts = sample_points(30);
        for pair in pts.chunks(2) {
            if let [z, w] = pair {
                let d0 = distance(*z, *w);
                let d1 = distance(g.apply(*z), g.apply(*w));
                assert!((d0 - d1).abs() < 1e-10, "metric drift {d0} vs {d1}");
            }
        }
    }

    #[test]
    fn parity_tracks_reflection_count() {
        let lines = sample_lines();
        let mut g = Isometry::identity();
        for (i, l) in lines.iter().take(7).enumerate() {
            g = Isometry::reflect(l).compose(&g);
            assert_eq!(g.is_odd(), (i + 1) % 2 == 1);
        }
    }

    #[test]
    fn classify_identity_and_rotation() {
        let tol = Tolerances::default();
        let r1 = Isometry::reflect(&HLine::Diameter {
            dir: Complex64::new(1.0, 0.0),
        });
        assert!(matches!(
            classify(&r1.compose(&r1), &tol).unwrap(),
            MotionClass::Identity
        ));

        // Reflections in diameters meeting at angle θ compose to a rotation
        // by 2θ about the origin.
        let theta = 0.37;
        let r2 = Isometry::reflect(&HLine::Diameter {
            dir: Complex64::from_polar(1.0, theta),
        });
        let g = r2.compose(&r1);
        match classify(&g, &tol).unwrap() {
            MotionClass::Rotation { center } => {
                assert!(center.to_complex().norm() < 1e-9);
            }
            other => panic!("expected rotation, got {}", other.name()),
        }
        let direct = Isometry::rotation_at_origin(2.0 * theta);
        for z in sample_points(10) {
            assert!((g.apply(z) - direct.apply(z)).norm() < 1e-12);
        }
    }

    #[test]
    fn classify_shift_from_non_secant_lines() {
        let tol = Tolerances::default();
        // Two disjoint vertical-ish arcs on opposite sides of the origin.
        let l1 = HLine::through(
            Complex64::new(0.5, -0.2),
            Complex64::new(0.5, 0.2),
            &tol,
        )
        .unwrap();
        let l2 = HLine::through(
            Complex64::new(-0.5, -0.2),
            Complex64::new(-0.5, 0.2),
            &tol,
        )
        .unwrap();
        let g = Isometry::reflect(&l2).compose(&Isometry::reflect(&l1));
        match classify(&g, &tol).unwrap() {
            MotionClass::Shift { axis } => {
                // The axis is globally invariant: both ideal endpoints are
                // fixed, so points of the axis stay on it.
                let (e1, e2) = axis.ideal_endpoints();
                let probe = midpoint(e1 * 0.9, e2 * 0.9);
                let img = g.apply(probe);
                assert!(
                    axis.side(img).abs() < 1e-9,
                    "axis not invariant: side {}",
                    axis.side(img)
                );
            }
            other => panic!("expected shift, got {}", other.name()),
        }
    }

    #[test]
    fn shift_along_maps_endpoints() {
        let tol = Tolerances::default();
        let x = Complex64::new(0.1, 0.2);
        let y = Complex64::new(-0.3, 0.4);
        let s = shift_along(x, y, &tol).unwrap();
        assert!((s.apply(x) - y).norm() < 1e-12);
        assert!(!s.is_odd());
        match classify(&s, &tol).unwrap() {
            MotionClass::Shift { axis } => {
                assert!(axis.contains(x, 1e-9));
                assert!(axis.contains(y, 1e-9));
            }
            other => panic!("expected shift, got {}", other.name()),
        }
    }

    #[test]
    fn classify_reflection_and_glide() {
        let tol = Tolerances::default();
        let x = Complex64::new(0.15, -0.1);
        let y = Complex64::new(0.4, 0.3);
        let line = HLine::through(x, y, &tol).unwrap();
        let r = Isometry::reflect(&line);
        match classify(&r, &tol).unwrap() {
            MotionClass::Reflection { axis } => {
                assert!(axis.contains(x, 1e-9) && axis.contains(y, 1e-9));
            }
            other => panic!("expected reflection, got {}", other.name()),
        }
        let glide = r.compose(&shift_along(x, y, &tol).unwrap());
        assert!(glide.is_odd());
        match classify(&glide, &tol).unwrap() {
            MotionClass::Glide { axis } => {
                assert!(axis.contains(x, 1e-8), "glide axis misses x");
            }
            other => panic!("expected glide, got {}", other.name()),
        }
    }

    #[test]
    fn perp_bisector_swaps_endpoints() {
        let tol = Tolerances::default();
        let x = Complex64::new(0.25, 0.35);
        let y = Complex64::new(-0.15, 0.1);
        let bis = perp_bisector(x, y, &tol).unwrap();
        let r = Isometry::reflect(&bis);
        assert!((r.apply(x) - y).norm() < 1e-11);
        assert!((r.apply(y) - x).norm() < 1e-11);
    }

    #[test]
    fn midpoint_is_equidistant() {
        let x = Complex64::new(0.5, 0.1);
        let y = Complex64::new(-0.2, -0.6);
        let m = midpoint(x, y);
        assert!((distance(x, m) - distance(m, y)).abs() < 1e-11);
        assert!((distance(x, m) + distance(m, y) - distance(x, y)).abs() < 1e-11);
    }
}
