//! A view of the tiling centered on an arbitrary tile.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::DiskPoint;
use crate::grid::{Address, Grid, Pos};
use crate::layout::Layout;
use crate::nav::{distance, neighbors, origin_direction, recenter, relative_ball};
use crate::palette;
use crate::tree::NodeColor;

pub const MAX_RADIUS: usize = 6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowTile {
    /// Global address.
    pub address: Address,
    /// Address in the system centered on the window's center.
    pub relative: Address,
    /// Tree level of the global address; absent for the central tile.
    pub level: Option<usize>,
    pub color: Option<NodeColor>,
    pub vertices: Vec<DiskPoint>,
    pub center_point: DiskPoint,
    /// Global addresses of the neighbors, by edge index.
    pub neighbors: Vec<Address>,
}

/// Where the global central tile is: drawn in the window, or off to one side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum OriginArrow {
    Visible(Visible),
    Angle(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Visible {
    Visible,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowResponse {
    pub grid: Grid,
    pub center: Address,
    pub radius: usize,
    pub tiles: Vec<WindowTile>,
    /// The global central tile, addressed in the window's system.
    pub origin_address: Address,
    pub origin_arrow: OriginArrow,
}

fn check(grid: Grid, center: &Address, radius: usize) -> Result<()> {
    if center.grid != grid {
        return Err(Error::GridMismatch { left: grid.tag(), right: center.grid.tag() });
    }
    if radius > MAX_RADIUS {
        return Err(Error::RadiusCap { radius, cap: MAX_RADIUS });
    }
    Ok(())
}

/// Tiles within `radius` of `center`, laid out with `center` in canonical pose.
pub fn window(grid: Grid, center: &Address, radius: usize) -> Result<WindowResponse> {
    check(grid, center, radius)?;
    let layout = Layout::new(grid);
    let tiles = relative_ball(center, radius)
        .into_iter()
        .map(|(rel, abs)| {
            let address = Address::from_pos(grid, &abs);
            let patch = layout.base().transformed(&layout.frame(&rel));
            WindowTile {
                level: match &abs {
                    Pos::Center => None,
                    Pos::Node { ranks, .. } => Some(ranks.len()),
                },
                color: address.color(),
                vertices: patch.vertices,
                center_point: patch.center,
                neighbors: neighbors(&address),
                relative: Address::from_pos(grid, &rel),
                address,
            }
        })
        .collect();
    let origin = Address::center(grid);
    let origin_arrow = if distance(center, &origin)? <= radius {
        OriginArrow::Visible(Visible::Visible)
    } else {
        OriginArrow::Angle(origin_direction(center)?)
    };
    Ok(WindowResponse {
        grid,
        center: center.clone(),
        radius,
        tiles,
        origin_address: recenter(&origin, center)?,
        origin_arrow,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TileColor {
    pub address: Address,
    pub color: String,
}

/// Chooser colors of the tiles within `radius` of `center`.
pub fn colors(grid: Grid, center: &Address, radius: usize) -> Result<Vec<TileColor>> {
    check(grid, center, radius)?;
    Ok(relative_ball(center, radius)
        .into_iter()
        .map(|(_, abs)| {
            let address = Address::from_pos(grid, &abs);
            TileColor { color: palette::color(&address), address }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_sizes() {
        let c = Address::center(Grid::Pentagrid);
        assert_eq!(window(Grid::Pentagrid, &c, 1).unwrap().tiles.len(), 6);
        let x: Address = "H7:2:1001".parse().unwrap();
        let w = window(Grid::Heptagrid, &x, 2).unwrap();
        assert_eq!(w.tiles.len(), 29);
        assert_eq!(w.tiles[0].address, x);
        assert!(w.tiles[0].relative.is_center());
        assert!(window(Grid::Pentagrid, &x, 1).is_err());
        assert!(window(Grid::Heptagrid, &x, 7).is_err());
    }

    #[test]
    fn arrow_serialization() {
        let v = serde_json::to_value(OriginArrow::Visible(Visible::Visible)).unwrap();
        assert_eq!(v, "visible");
        let x: Address = "P5:1:1001".parse().unwrap();
        let w = window(Grid::Pentagrid, &x, 1).unwrap();
        assert!(matches!(w.origin_arrow, OriginArrow::Angle(_)));
        assert_eq!(w.origin_address.depth(), 3);
    }
}
