//! Broadcast from a tile that takes itself as the central tile, and replies
//! routed back by reversing the accreted relative address.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{son_count, Address, Pos};
use crate::nav::{relative_ball, transport_step, VertexMap};

pub const MAX_TTL: usize = 6;

/// Hops from the sender: the sector (1-based) taken on the first hop, then
/// one son rank per further hop. Empty at the sender itself.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RelativeAddress {
    pub hops: Vec<u8>,
}

impl RelativeAddress {
    pub fn len(&self) -> usize {
        self.hops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hops.is_empty()
    }
}

impl fmt::Display for RelativeAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.hops.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.hops.iter().map(|h| h.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

/// Delivers to every tile within `ttl` hops of `origin`, relaying only to
/// sons in the origin-rooted coordinate system. Each tile receives once.
pub fn broadcast(origin: &Address, ttl: usize) -> Result<BTreeMap<Address, RelativeAddress>> {
    if ttl > MAX_TTL {
        return Err(Error::RadiusCap { radius: ttl, cap: MAX_TTL });
    }
    let grid = origin.grid;
    let mut out = BTreeMap::new();
    for (rel, abs) in relative_ball(origin, ttl) {
        let hops = match rel {
            Pos::Center => vec![],
            Pos::Node { sector, ranks } => std::iter::once(sector + 1).chain(ranks).collect(),
        };
        let previous = out.insert(Address::from_pos(grid, &abs), RelativeAddress { hops });
        debug_assert!(previous.is_none(), "delivered twice");
    }
    Ok(out)
}

/// Route of a reply from the tile at `r` back to `origin`, both ends included.
pub fn reply(origin: &Address, r: &RelativeAddress) -> Result<Vec<Address>> {
    let grid = origin.grid;
    let mut edges = Vec::with_capacity(r.len());
    let mut ranks: Vec<u8> = vec![];
    for (i, &h) in r.hops.iter().enumerate() {
        let limit = if i == 0 { grid.p() } else { son_count(&ranks) };
        if h == 0 || h > limit {
            return Err(Error::MalformedRelativeAddress(format!("hop {} is {h}, allowed 1..={limit}", i + 1)));
        }
        if i == 0 {
            edges.push(h - 1);
        } else {
            edges.push(h + 1);
            ranks.push(h);
        }
    }
    let mut route = vec![origin.clone()];
    let (mut rel, mut abs, mut map) = (Pos::Center, origin.to_pos(), VertexMap::IDENTITY);
    for e in edges {
        let (rel2, abs2, map2) = transport_step(grid, &rel, &abs, map, e);
        route.push(Address::from_pos(grid, &abs2));
        rel = rel2;
        abs = abs2;
        map = map2;
    }
    route.reverse();
    Ok(route)
}
