//! SVG rendering of windows with geodesic (circular-arc) edges.

use std::fmt::Write;

use crate::error::Result;
use crate::geometry::{DiskPoint, TilePatch};
use crate::grid::{Address, Grid};
use crate::layout::Layout;
use crate::nav::relative_ball;
use crate::palette;
use crate::window::MAX_RADIUS;

/// Renders the tiles within `radius` of `center`, `center` in canonical pose.
pub fn render_svg(grid: Grid, center: &Address, radius: usize) -> Result<String> {
    if radius > MAX_RADIUS {
        return Err(crate::Error::RadiusCap { radius, cap: MAX_RADIUS });
    }
    if center.grid != grid {
        return Err(crate::Error::GridMismatch { left: grid.tag(), right: center.grid.tag() });
    }
    let layout = Layout::new(grid);
    let tiles: Vec<(TilePatch, String)> = relative_ball(center, radius)
        .into_iter()
        .map(|(rel, abs)| {
            let patch = layout.base().transformed(&layout.frame(&rel));
            (patch, palette::color(&Address::from_pos(grid, &abs)))
        })
        .collect();
    Ok(render_patches(&tiles))
}

/// Writes the unit circle and one closed arc path per tile, coordinates with
/// six decimals, y pointing up.
pub fn render_patches(tiles: &[(TilePatch, String)]) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" viewBox=\"-1.02 -1.02 2.04 2.04\">\n",
    );
    out.push_str("<g transform=\"scale(1,-1)\">\n");
    out.push_str("<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"0.004\"/>\n");
    for (patch, fill) in tiles {
        let _ = writeln!(
            out,
            "<path d=\"{}\" fill=\"{}\" stroke=\"#202020\" stroke-width=\"0.002\"/>",
            arc_path(&patch.vertices),
            fill
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

/// Path data for a polygon whose edges are geodesics of the disk.
pub fn arc_path(vertices: &[DiskPoint]) -> String {
    let n = vertices.len();
    let mut d = format!("M {} {}", num(vertices[0].x), num(vertices[0].y));
    for i in 0..n {
        let (u, v) = (vertices[i], vertices[(i + 1) % n]);
        match geodesic_circle(u, v) {
            None => {
                let _ = write!(d, " L {} {}", num(v.x), num(v.y));
            }
            Some((c, r)) => {
                let cross = (u.x - c.x) * (v.y - c.y) - (u.y - c.y) * (v.x - c.x);
                let sweep = u8::from(cross > 0.0);
                let _ = write!(d, " A {} {} 0 0 {} {} {}", num(r), num(r), sweep, num(v.x), num(v.y));
            }
        }
    }
    d.push_str(" Z");
    d
}

/// Center and radius of the circle orthogonal to the unit circle through `u`
/// and `v`, or `None` when the geodesic is a diameter.
pub fn geodesic_circle(u: DiskPoint, v: DiskPoint) -> Option<(DiskPoint, f64)> {
    // the circle also passes through the inverse of u in the unit circle
    let cross = u.x * v.y - u.y * v.x;
    if cross.abs() < 1e-12 {
        return None;
    }
    let nu = u.x * u.x + u.y * u.y;
    let nv = v.x * v.x + v.y * v.y;
    // |c|^2 - 2 c·u + |u|^2 = r^2 and |c|^2 = 1 + r^2 give c·u = (|u|^2 + 1) / 2
    let (a, b) = ((nu + 1.0) / 2.0, (nv + 1.0) / 2.0);
    let cx = (a * v.y - b * u.y) / cross;
    let cy = (b * u.x - a * v.x) / cross;
    let r = (cx * cx + cy * cy - 1.0).sqrt();
    Some((DiskPoint::new(cx, cy), r))
}
