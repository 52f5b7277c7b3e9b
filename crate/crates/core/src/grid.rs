//! Grid kinds and global tile addresses.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fib::FibWord;
use crate::tree::{path_from_root, word_from_path, NodeColor, SonRank};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Grid {
    /// {5,4}: right-angled pentagons, four around each vertex.
    Pentagrid,
    /// {7,3}: heptagons, three around each vertex.
    Heptagrid,
}

impl Grid {
    pub const ALL: [Grid; 2] = [Grid::Pentagrid, Grid::Heptagrid];

    /// Number of sides of a tile, also the number of sectors.
    pub fn p(self) -> u8 {
        match self {
            Grid::Pentagrid => 5,
            Grid::Heptagrid => 7,
        }
    }

    /// Number of tiles around a vertex.
    pub fn q(self) -> u8 {
        match self {
            Grid::Pentagrid => 4,
            Grid::Heptagrid => 3,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Grid::Pentagrid => "P5",
            Grid::Heptagrid => "H7",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Grid::Pentagrid => "pentagrid",
            Grid::Heptagrid => "heptagrid",
        }
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Grid {
    type Err = Error;

    /// Accepts `P5`/`H7` in any case, or the names `pentagrid`/`heptagrid`.
    fn from_str(s: &str) -> Result<Grid> {
        match s.to_ascii_lowercase().as_str() {
            "p5" | "pentagrid" | "5,4" | "{5,4}" => Ok(Grid::Pentagrid),
            "h7" | "heptagrid" | "7,3" | "{7,3}" => Ok(Grid::Heptagrid),
            _ => Err(Error::UnknownGrid(s.to_string())),
        }
    }
}

impl Serialize for Grid {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.tag())
    }
}

impl<'de> Deserialize<'de> for Grid {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cell {
    Center,
    /// `sector` counts from 1.
    Node { sector: u8, word: FibWord },
}

/// A tile of one grid: the central tile, or a node of one sector's tree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Address {
    pub grid: Grid,
    pub cell: Cell,
}

impl Address {
    pub fn center(grid: Grid) -> Address {
        Address { grid, cell: Cell::Center }
    }

    pub fn node(grid: Grid, sector: u8, word: FibWord) -> Result<Address> {
        if sector == 0 || sector > grid.p() {
            return Err(Error::SectorOutOfRange { grid: grid.tag(), sector: sector as u32, arity: grid.p() });
        }
        Ok(Address { grid, cell: Cell::Node { sector, word } })
    }

    /// Root of sector `sector` (1-based).
    pub fn root(grid: Grid, sector: u8) -> Result<Address> {
        Address::node(grid, sector, FibWord::one())
    }

    pub fn is_center(&self) -> bool {
        self.cell == Cell::Center
    }

    pub fn sector(&self) -> Option<u8> {
        match &self.cell {
            Cell::Center => None,
            Cell::Node { sector, .. } => Some(*sector),
        }
    }

    pub fn word(&self) -> Option<&FibWord> {
        match &self.cell {
            Cell::Center => None,
            Cell::Node { word, .. } => Some(word),
        }
    }

    /// Tree color; the central tile has none.
    pub fn color(&self) -> Option<NodeColor> {
        self.word().map(crate::tree::color_of)
    }

    /// Graph distance to the central tile: 0 for it, tree level + 1 otherwise.
    pub fn depth(&self) -> usize {
        match &self.cell {
            Cell::Center => 0,
            Cell::Node { word, .. } => path_from_root(word).len() + 1,
        }
    }

    pub(crate) fn to_pos(&self) -> Pos {
        match &self.cell {
            Cell::Center => Pos::Center,
            Cell::Node { sector, word } => Pos::Node {
                sector: sector - 1,
                ranks: path_from_root(word).into_iter().map(SonRank::get).collect(),
            },
        }
    }

    pub(crate) fn from_pos(grid: Grid, pos: &Pos) -> Address {
        match pos {
            Pos::Center => Address::center(grid),
            Pos::Node { sector, ranks } => {
                let ranks: Vec<SonRank> = ranks.iter().map(|&r| SonRank::new(r).expect("rank in 1..=3")).collect();
                let word = word_from_path(&ranks).expect("ranks within son counts");
                Address { grid, cell: Cell::Node { sector: sector + 1, word } }
            }
        }
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.cell {
            Cell::Center => write!(f, "{}:C", self.grid),
            Cell::Node { sector, word } => write!(f, "{}:{}:{}", self.grid, sector, word),
        }
    }
}

impl FromStr for Address {
    type Err = Error;

    /// `("P5"|"H7") ":" ("C" | sector ":" word)`; the grid tag is case-insensitive.
    fn from_str(s: &str) -> Result<Address> {
        let malformed = |reason: &str| Error::MalformedAddress { input: s.to_string(), reason: reason.to_string() };
        let mut parts = s.trim().split(':');
        let grid = match parts.next() {
            Some(tag) if tag.eq_ignore_ascii_case("p5") => Grid::Pentagrid,
            Some(tag) if tag.eq_ignore_ascii_case("h7") => Grid::Heptagrid,
            _ => return Err(malformed("expected grid tag P5 or H7")),
        };
        let second = parts.next().ok_or_else(|| malformed("missing sector or C"))?;
        if second.eq_ignore_ascii_case("c") {
            if parts.next().is_some() {
                return Err(malformed("trailing input after C"));
            }
            return Ok(Address::center(grid));
        }
        if second.len() != 1 || !second.as_bytes()[0].is_ascii_digit() {
            return Err(malformed("sector must be a single decimal digit"));
        }
        let sector = second.as_bytes()[0] - b'0';
        let word = parts.next().ok_or_else(|| malformed("missing word"))?;
        if parts.next().is_some() {
            return Err(malformed("too many fields"));
        }
        let word: FibWord = word.parse()?;
        Address::node(grid, sector, word)
    }
}

impl Serialize for Address {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Address {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A tile as a 0-based sector plus the rank path of its tree node.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum Pos {
    Center,
    Node { sector: u8, ranks: Vec<u8> },
}

impl Pos {
    pub(crate) fn depth(&self) -> usize {
        match self {
            Pos::Center => 0,
            Pos::Node { ranks, .. } => ranks.len() + 1,
        }
    }
}

/// Son count of the node reached by `ranks`: only rank-1 sons are black.
pub(crate) fn son_count(ranks: &[u8]) -> u8 {
    if ranks.last() == Some(&1) {
        2
    } else {
        3
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        let c: Address = "P5:C".parse().unwrap();
        assert_eq!(c, Address::center(Grid::Pentagrid));
        let a: Address = "P5:3:10100".parse().unwrap();
        assert_eq!(a.sector(), Some(3));
        assert_eq!(a.word().unwrap().to_u64(), Some(11));
        assert_eq!(a.to_string(), "P5:3:10100");
        assert_eq!("p5:c".parse::<Address>().unwrap().to_string(), "P5:C");
        assert!(matches!("H7:8:1".parse::<Address>(), Err(Error::SectorOutOfRange { .. })));
        assert!("P5:6:1".parse::<Address>().is_err());
        assert!("P5:0:1".parse::<Address>().is_err());
        assert!("Q5:1:1".parse::<Address>().is_err());
        assert!("P5:1:011".parse::<Address>().is_err());
        assert!("P5:1".parse::<Address>().is_err());
        assert!("P5:1:1:1".parse::<Address>().is_err());
        assert!("P5:C:1".parse::<Address>().is_err());
        assert!("P5:12:1".parse::<Address>().is_err());
    }

    #[test]
    fn pos_round_trip() {
        for s in ["H7:C", "H7:7:1", "P5:2:1010", "P5:5:100101"] {
            let a: Address = s.parse().unwrap();
            assert_eq!(Address::from_pos(a.grid, &a.to_pos()), a);
        }
        let a: Address = "P5:2:1010".parse().unwrap();
        assert_eq!(a.to_pos(), Pos::Node { sector: 1, ranks: vec![2, 1] });
        assert_eq!(a.depth(), 3);
    }

    #[test]
    fn serde_as_string() {
        let a: Address = "H7:4:1001".parse().unwrap();
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, "\"H7:4:1001\"");
        assert_eq!(serde_json::from_str::<Address>(&json).unwrap(), a);
        assert_eq!(serde_json::to_string(&Grid::Heptagrid).unwrap(), "\"H7\"");
    }
}
