//! Tree relations lifted from words to whole-grid addresses.

use hypergrid::{fib, Address, Cell, Error, Result, SonRank};
use num_bigint::BigUint;

/// Father of a tile and the rank it has among the father's sons. The sector
/// roots hang off the central tile, ranked by sector.
pub fn parent(a: &Address) -> Result<(Address, u8)> {
    match &a.cell {
        Cell::Center => Err(Error::MalformedAddress {
            input: a.to_string(),
            reason: "the central tile has no father".into(),
        }),
        Cell::Node { sector, word } => match hypergrid::parent(word) {
            None => Ok((Address::center(a.grid), *sector)),
            Some((w, rank)) => Ok((Address::node(a.grid, *sector, w)?, SonRank::get(rank))),
        },
    }
}

/// Sons in rank order; the central tile's sons are the sector roots.
pub fn sons(a: &Address) -> Vec<Address> {
    match &a.cell {
        Cell::Center => (1..=a.grid.p()).map(|s| Address::root(a.grid, s).expect("sector in range")).collect(),
        Cell::Node { sector, word } => hypergrid::sons(word)
            .into_iter()
            .map(|w| Address::node(a.grid, *sector, w).expect("same sector"))
            .collect(),
    }
}

/// Number of tiles at distance exactly `n` from the central tile: `p f(2n - 1)`.
pub fn ring(grid: hypergrid::Grid, n: usize) -> BigUint {
    if n == 0 {
        BigUint::from(1u32)
    } else {
        fib(2 * n - 1) * grid.p()
    }
}
