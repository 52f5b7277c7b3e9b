//! Constructive placement of addressed tiles in the Poincaré disk.
//!
//! Every tile carries a frame: the isometry taking the base polygon onto it,
//! vertex `i` of the base landing on the tile's vertex `i`. Crossing edge `j`
//! of a tile multiplies its frame by the reflection of the base polygon in its
//! edge `j` composed with the rotation by `j` steps; this makes edge 0 of the
//! new tile coincide with edge `j` of the old one.

use crate::geometry::{base_polygon, reflect, DiskIsometry, TilePatch};
use crate::grid::{Address, Grid, Pos};

/// Local edge used for each son rank, by father color.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SonPlacement {
    pub white: [u8; 3],
    pub black: [u8; 2],
}

impl Default for SonPlacement {
    fn default() -> Self {
        SonPlacement { white: [2, 3, 4], black: [2, 3] }
    }
}

#[derive(Debug, Clone)]
pub struct Layout {
    grid: Grid,
    base: TilePatch,
    crossings: Vec<DiskIsometry>,
    placement: SonPlacement,
}

impl Layout {
    pub fn new(grid: Grid) -> Layout {
        Layout::with_placement(grid, SonPlacement::default())
    }

    pub fn with_placement(grid: Grid, placement: SonPlacement) -> Layout {
        let p = grid.p() as u32;
        let base = base_polygon(p, grid.q() as u32).expect("both grids are hyperbolic");
        let crossings = (0..grid.p() as usize)
            .map(|j| {
                let (u, v) = base.edge(j);
                let mirror = reflect(u, v).expect("distinct polygon vertices");
                let turn = DiskIsometry::rotation(2.0 * std::f64::consts::PI * j as f64 / p as f64);
                mirror.compose(&turn)
            })
            .collect();
        Layout { grid, base, crossings, placement }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn base(&self) -> &TilePatch {
        &self.base
    }

    /// Frame of the tile reached from `frame` across its edge `edge`.
    pub fn cross(&self, frame: &DiskIsometry, edge: u8) -> DiskIsometry {
        frame.compose(&self.crossings[edge as usize])
    }

    pub(crate) fn frame(&self, pos: &Pos) -> DiskIsometry {
        let mut frame = DiskIsometry::identity();
        if let Pos::Node { sector, ranks } = pos {
            frame = self.cross(&frame, *sector);
            let mut black = false;
            for &r in ranks {
                let edge = if black {
                    self.placement.black[r as usize - 1]
                } else {
                    self.placement.white[r as usize - 1]
                };
                frame = self.cross(&frame, edge);
                black = r == 1;
            }
        }
        frame
    }

    /// Isometry carrying the base polygon onto the tile `a`.
    pub fn frame_of(&self, a: &Address) -> DiskIsometry {
        self.frame(&a.to_pos())
    }

    pub fn patch(&self, a: &Address) -> TilePatch {
        self.base.transformed(&self.frame_of(a))
    }
}
