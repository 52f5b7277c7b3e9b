//! Deterministic chooser colors for tiles.
//!
//! Each sector owns a wedge of the hue circle, split among the sons along the
//! tree path, so nearby tiles of one branch share a tint. Lightness drops with
//! the level. The central tile is neutral gray.

use crate::grid::{son_count, Address, Pos};

pub const CENTER_COLOR: &str = "#9e9e9e";

pub fn color(a: &Address) -> String {
    let (sector, ranks) = match a.to_pos() {
        Pos::Center => return CENTER_COLOR.to_string(),
        Pos::Node { sector, ranks } => (sector, ranks),
    };
    let p = a.grid.p() as f64;
    let (mut lo, mut hi) = (sector as f64 / p, (sector as f64 + 1.0) / p);
    for (i, &r) in ranks.iter().enumerate() {
        let parts = son_count(&ranks[..i]) as f64;
        let width = (hi - lo) / parts;
        lo += width * (r as f64 - 1.0);
        hi = lo + width;
    }
    let hue = (lo + hi) / 2.0 * 360.0;
    let lightness = (0.70 - 0.06 * ranks.len() as f64).max(0.28);
    hsl_hex(hue, 0.65, lightness)
}

fn hsl_hex(h: f64, s: f64, l: f64) -> String {
    let c = (1.0 - (2.0 * l - 1.0).abs()) * s;
    let hp = h / 60.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r, g, b) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    let byte = |v: f64| ((v + m) * 255.0).round().clamp(0.0, 255.0) as u8;
    format!("#{:02x}{:02x}{:02x}", byte(r), byte(g), byte(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use crate::nav::ball;
    use std::collections::BTreeSet;

    #[test]
    fn first_ring_colors_are_distinct() {
        for grid in Grid::ALL {
            let colors: BTreeSet<String> = ball(grid, 1).iter().map(color).collect();
            assert_eq!(colors.len(), 1 + grid.p() as usize);
        }
    }

    #[test]
    fn deterministic_and_well_formed() {
        for a in ball(Grid::Heptagrid, 3) {
            let c = color(&a);
            assert_eq!(c, color(&a));
            assert!(c.len() == 7 && c.starts_with('#') && c[1..].chars().all(|ch| ch.is_ascii_hexdigit()));
        }
        assert_eq!(color(&Address::center(Grid::Pentagrid)), CENTER_COLOR);
        assert_eq!(hsl_hex(0.0, 1.0, 0.5), "#ff0000");
        assert_eq!(hsl_hex(240.0, 1.0, 0.5), "#0000ff");
    }
}
