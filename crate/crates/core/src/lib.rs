//! Coordinates and navigation for the pentagrid {5,4} and the heptagrid {7,3}
//! of the hyperbolic plane.
//!
//! Each grid is a central tile surrounded by sectors, and each sector is
//! spanned by a Fibonacci tree whose nodes are numbered by canonical
//! Fibonacci-basis words. On top of these addresses the crate computes
//! neighbors, shortest paths and changes of center in time polynomial in the
//! word length, and checks all of it against a geometric reference tiling
//! built by reflecting polygons in the Poincaré disk.

pub mod ca;
pub mod error;
pub mod fib;
pub mod geometry;
pub mod grid;
pub mod layout;
pub mod nav;
pub mod oracle;
pub mod palette;
pub mod routing;
pub mod svg;
pub mod tree;
pub mod window;

pub use error::{Error, Result};
pub use fib::{decode, encode, fib, level_bounds, level_of, FibWord, Level};
pub use grid::{Address, Cell, Grid};
pub use nav::{absolute_from, ball, distance, neighbor, neighbors, origin_direction, recenter, shortest_path};
pub use tree::{color_of, parent, path_from_root, preferred_son, sons, NodeColor, SonRank};
