//! SVG rendering of pentagrid balls.
//!
//! Each tile is one closed path whose sides are circular arcs orthogonal to
//! the unit circle (straight segments for diameters). An optional coloring
//! adds one stroked path per side, in a configurable palette.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_complex::Complex64;

use super::layout::{layout, side_endpoints};
use super::{HLine, Tolerances};
use crate::grid::{Ball, TileAddress};
use crate::{Error, Result};

/// Per-side palette indices for a tile, side 1 first.
pub type SideColors = HashMap<TileAddress, [usize; 5]>;

fn arc_command(a: Complex64, b: Complex64, tol: &Tolerances) -> Result<String> {
    match HLine::through(a, b, tol)? {
        HLine::Diameter { .. } => Ok(format!("L {:.7} {:.7}", b.re, b.im)),
        HLine::Arc { center, radius } => {
            let chord_mid = (a + b) / 2.0;
            let dir = chord_mid - center;
            let m = center + dir / dir.norm() * radius;
            let sweep = if (m - a).re * (b - m).im - (m - a).im * (b - m).re > 0.0 {
                1
            } else {
                0
            };
            Ok(format!(
                "A {r:.7} {r:.7} 0 0 {sweep} {:.7} {:.7}",
                b.re,
                b.im,
                r = radius
            ))
        }
    }
}

/// Renders a ball as an SVG document. With a coloring, every side is stroked
/// in its palette color; the coloring may not reference tiles outside the
/// ball.
pub fn render_svg(
    ball: &Ball,
    coloring: Option<&SideColors>,
    palette: &[String],
    tol: &Tolerances,
) -> Result<String> {
    if ball.tiles.is_empty() {
        return Err(Error::EmptyBall);
    }
    if let Some(colors) = coloring {
        for t in colors.keys() {
            if !ball.contains(*t) {
                return Err(Error::UnknownTile(t.to_string()));
            }
        }
    }
    let l = layout(ball)?;
    let mut out = String::new();
    out.push_str(r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    out.push('\n');
    out.push_str(
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="-1.05 -1.05 2.10 2.10" width="800" height="800">"#,
    );
    out.push('\n');
    out.push_str(r#"<g transform="scale(1,-1)">"#);
    out.push('\n');
    out.push_str(r##"<circle cx="0" cy="0" r="1" fill="none" stroke="#000" stroke-width="0.004"/>"##);
    out.push('\n');
    for &t in &ball.tiles {
        let verts = l.tile_vertices(t).expect("tile placed");
        let mut d = format!("M {:.7} {:.7} ", verts[0].re, verts[0].im);
        for i in 1..=5u8 {
            let (a, b) = side_endpoints(&l, t, i).expect("tile placed");
            debug_assert!((a - verts[(i - 1) as usize]).norm() < 1e-12);
            write!(d, "{} ", arc_command(a, b, tol)?).expect("string write");
        }
        d.push('Z');
        writeln!(
            out,
            r##"<path d="{d}" fill="none" stroke="#555" stroke-width="0.0025"/>"##
        )
        .expect("string write");
    }
    if let Some(colors) = coloring {
        for &t in &ball.tiles {
            let Some(sides) = colors.get(&t) else {
                continue;
            };
            for i in 1..=5u8 {
                let (a, b) = side_endpoints(&l, t, i).expect("tile placed");
                let color = palette
                    .get(sides[(i - 1) as usize])
                    .ok_or_else(|| Error::Msg("palette index out of range".into()))?;
                writeln!(
                    out,
                    r#"<path d="M {:.7} {:.7} {}" fill="none" stroke="{color}" stroke-width="0.006"/>"#,
                    a.re,
                    a.im,
                    arc_command(a, b, tol)?
                )
                .expect("string write");
            }
        }
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibtree::TreeFlavor;

    fn default_palette() -> Vec<String> {
        ["#1b9e77", "#d95f02", "#7570b3", "#e7298a"]
            .iter()
            .map(|s| s.to_string())
            .collect()
    }

    #[test]
    fn ball0_has_six_tile_paths_and_the_border_circle() {
        let ball = Ball::build(0, TreeFlavor::Standard).unwrap();
        let svg = render_svg(&ball, None, &default_palette(), &Tolerances::default()).unwrap();
        assert_eq!(svg.matches("<path").count(), 6);
        assert_eq!(svg.matches("<circle").count(), 1);
    }

    #[test]
    fn coloring_of_absent_tile_is_rejected() {
        let ball = Ball::build(0, TreeFlavor::Standard).unwrap();
        let mut colors = SideColors::new();
        colors.insert(TileAddress::Sector(1, 99), [0, 1, 2, 3, 0]);
        let err = render_svg(&ball, Some(&colors), &default_palette(), &Tolerances::default());
        assert!(matches!(err, Err(Error::UnknownTile(_))));
    }

    #[test]
    fn colored_render_strokes_only_palette_colors() {
        let ball = Ball::build(1, TreeFlavor::Standard).unwrap();
        let palette = default_palette();
        let mut colors = SideColors::new();
        for &t in &ball.tiles {
            colors.insert(t, [0, 1, 2, 3, 0]);
        }
        let svg = render_svg(&ball, Some(&colors), &palette, &Tolerances::default()).unwrap();
        // 21 outlines + 21*5 side strokes.
        assert_eq!(svg.matches("<path").count(), 21 + 105);
        for line in svg.lines().filter(|l| l.contains("stroke-width=\"0.006\"")) {
            assert!(
                palette.iter().any(|c| line.contains(c.as_str())),
                "stroke outside the palette: {line}"
            );
        }
    }
}
