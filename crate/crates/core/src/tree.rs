//! The Fibonacci tree spanning one sector, computed directly on coordinates.
//!
//! Nodes are numbered breadth-first from the root 1. A white node has three
//! sons and a black node two; the leftmost son is black, the others white.
//! Every operation here works on the word alone in time linear in its length.

use serde::{Deserialize, Serialize};

use crate::fib::{trailing_zeros, FibWord, Level};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeColor {
    Black,
    White,
}

impl NodeColor {
    pub fn son_count(self) -> u8 {
        match self {
            NodeColor::Black => 2,
            NodeColor::White => 3,
        }
    }

    /// Color of the son at `rank` (only the leftmost son is black).
    pub fn of_rank(rank: SonRank) -> NodeColor {
        if rank.get() == 1 {
            NodeColor::Black
        } else {
            NodeColor::White
        }
    }

    fn from_trailing_zeros(tz: usize) -> NodeColor {
        if tz % 2 == 1 {
            NodeColor::Black
        } else {
            NodeColor::White
        }
    }
}

/// Position of a son under its father, 1 = leftmost.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct SonRank(u8);

impl SonRank {
    pub fn new(rank: u8) -> Option<SonRank> {
        (1..=3).contains(&rank).then_some(SonRank(rank))
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

impl TryFrom<u8> for SonRank {
    type Error = String;

    fn try_from(rank: u8) -> std::result::Result<Self, String> {
        SonRank::new(rank).ok_or_else(|| format!("son rank {rank} outside 1..=3"))
    }
}

impl From<SonRank> for u8 {
    fn from(r: SonRank) -> u8 {
        r.0
    }
}

/// A node is black iff its word has an odd number of trailing zeros.
pub fn color_of(w: &FibWord) -> NodeColor {
    NodeColor::from_trailing_zeros(w.trailing_zeros())
}

/// The son whose word is `w` followed by "00".
pub fn preferred_son(w: &FibWord) -> FibWord {
    w.shifted()
}

/// Rank of the preferred son under a father of the given color.
pub fn preferred_rank(color: NodeColor) -> SonRank {
    match color {
        NodeColor::Black => SonRank(1),
        NodeColor::White => SonRank(2),
    }
}

pub fn sons(w: &FibWord) -> Vec<FibWord> {
    let shifted = w.shifted();
    let mut last = shifted.digits().to_vec();
    *last.last_mut().unwrap() = 1;
    let last = FibWord::from_digits_unchecked(last);
    match color_of(w) {
        NodeColor::Black => vec![shifted, last],
        NodeColor::White => {
            let mut first = shifted.digits().to_vec();
            decrement(&mut first);
            vec![FibWord::from_digits_unchecked(first), shifted, last]
        }
    }
}

/// Son of `w` at `rank`, if the rank exists under that color.
pub fn son(w: &FibWord, rank: SonRank) -> Option<FibWord> {
    sons(w).into_iter().nth(rank.get() as usize - 1)
}

/// Father and rank of `w`, or `None` for the root "1".
pub fn parent(w: &FibWord) -> Option<(FibWord, SonRank)> {
    let mut digits = w.digits().to_vec();
    let mut tz = trailing_zeros(&digits);
    let rank = parent_step(&mut digits, &mut tz)?;
    Some((FibWord::from_digits_unchecked(digits), rank))
}

/// Ranks along the path from the root down to `w`.
pub fn path_from_root(w: &FibWord) -> Vec<SonRank> {
    let mut digits = w.digits().to_vec();
    let mut tz = trailing_zeros(&digits);
    let mut ranks = Vec::new();
    while let Some(rank) = parent_step(&mut digits, &mut tz) {
        ranks.push(rank);
    }
    ranks.reverse();
    ranks
}

/// Folds a rank path from the root into a word; `None` if a rank exceeds the
/// son count of the node it leaves.
pub fn word_from_path(ranks: &[SonRank]) -> Option<FibWord> {
    let mut digits = vec![1u8];
    let mut tz = 0usize;
    for &rank in ranks {
        let color = NodeColor::from_trailing_zeros(tz);
        match (color, rank.get()) {
            (NodeColor::Black, 1) | (NodeColor::White, 2) => {
                digits.extend_from_slice(&[0, 0]);
                tz += 2;
            }
            (NodeColor::Black, 2) | (NodeColor::White, 3) => {
                digits.extend_from_slice(&[0, 1]);
                tz = 0;
            }
            (NodeColor::White, 1) => {
                digits.extend_from_slice(&[0, 0]);
                decrement(&mut digits);
                // a white word has an even number of trailing zeros, so the
                // decremented tail is 0(10)^k and ends in a single zero
                tz = 1;
            }
            _ => return None,
        }
    }
    Some(FibWord::from_digits_unchecked(digits))
}

/// Level of the node: number of parent steps up to the root.
pub fn level(w: &FibWord) -> Level {
    Level(path_from_root(w).len())
}

/// One step toward the root on a mutable canonical word. `tz` must hold the
/// current number of trailing zeros and is kept up to date.
fn parent_step(digits: &mut Vec<u8>, tz: &mut usize) -> Option<SonRank> {
    let n = digits.len();
    if n == 1 {
        return None;
    }
    match (digits[n - 2], digits[n - 1]) {
        (0, 0) => {
            digits.truncate(n - 2);
            *tz -= 2;
            let father = NodeColor::from_trailing_zeros(*tz);
            Some(preferred_rank(father))
        }
        (0, 1) => {
            digits.truncate(n - 2);
            *tz = trailing_zeros(digits);
            Some(match NodeColor::from_trailing_zeros(*tz) {
                NodeColor::Black => SonRank(2),
                NodeColor::White => SonRank(3),
            })
        }
        (1, 0) => {
            // x0(10)^k + 1 = x1 0^{2k}; the father is that value with "00" removed
            let mut i = n;
            while i >= 2 && digits[i - 2] == 1 && digits[i - 1] == 0 {
                i -= 2;
            }
            let k = (n - i) / 2;
            if i == 0 {
                digits.clear();
                digits.push(1);
                digits.resize(1 + 2 * k - 2, 0);
            } else {
                digits[i - 1] = 1;
                digits.truncate(i);
                digits.resize(i + 2 * k - 2, 0);
            }
            *tz = 2 * k - 2;
            Some(SonRank(1))
        }
        _ => unreachable!("canonical words never contain \"11\""),
    }
}

/// Subtracts one from a canonical word ending in "00" (value at least 2),
/// keeping it canonical.
fn decrement(digits: &mut Vec<u8>) {
    let n = digits.len();
    let last_one = digits.iter().rposition(|&d| d == 1).expect("word has a one");
    // the one at weight f(k) becomes ones at weights f(k-1), f(k-3), ...
    digits[last_one] = 0;
    let mut j = last_one + 1;
    while j < n {
        digits[j] = 1;
        j += 2;
    }
    if digits[0] == 0 {
        digits.remove(0);
    }
}

/// Breadth-first materialization of the tree, used as a reference.
#[derive(Debug, Clone)]
pub struct GenerativeTree {
    nodes: Vec<TreeNode>,
    level_starts: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct TreeNode {
    pub color: NodeColor,
    pub parent: Option<(u64, SonRank)>,
    pub sons: Vec<u64>,
    pub level: Level,
}

/// Builds every level up to and including `max_level`.
pub fn generate_tree(max_level: Level) -> GenerativeTree {
    let mut nodes = vec![
        // index 0 is unused so that node n lives at index n
        TreeNode { color: NodeColor::White, parent: None, sons: vec![], level: Level(0) },
        TreeNode { color: NodeColor::White, parent: None, sons: vec![], level: Level(0) },
    ];
    let mut level_starts = vec![1u64];
    let mut frontier = vec![1u64];
    for lvl in 1..=max_level.0 {
        level_starts.push(nodes.len() as u64);
        let mut next = Vec::with_capacity(frontier.len() * 3);
        for &f in &frontier {
            let count = nodes[f as usize].color.son_count();
            for r in 1..=count {
                let rank = SonRank(r);
                let id = nodes.len() as u64;
                nodes.push(TreeNode {
                    color: NodeColor::of_rank(rank),
                    parent: Some((f, rank)),
                    sons: vec![],
                    level: Level(lvl),
                });
                nodes[f as usize].sons.push(id);
                next.push(id);
            }
        }
        frontier = next;
    }
    level_starts.push(nodes.len() as u64);
    GenerativeTree { nodes, level_starts }
}

impl GenerativeTree {
    /// Largest node number present.
    pub fn max_node(&self) -> u64 {
        self.nodes.len() as u64 - 1
    }

    pub fn node(&self, n: u64) -> Option<&TreeNode> {
        if n == 0 {
            return None;
        }
        self.nodes.get(n as usize)
    }

    /// Nodes on a level as an inclusive range.
    pub fn level_range(&self, level: Level) -> Option<(u64, u64)> {
        let start = *self.level_starts.get(level.0)?;
        let end = *self.level_starts.get(level.0 + 1)?;
        Some((start, end - 1))
    }

    pub fn max_level(&self) -> Level {
        Level(self.level_starts.len() - 2)
    }

    /// Rank path from the root to `n`.
    pub fn path(&self, mut n: u64) -> Vec<SonRank> {
        let mut out = vec![];
        while let Some((f, r)) = self.nodes[n as usize].parent {
            out.push(r);
            n = f;
        }
        out.reverse();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fib::encode_u64;

    fn w(s: &str) -> FibWord {
        s.parse().unwrap()
    }

    fn ranks(v: &[u8]) -> Vec<SonRank> {
        v.iter().map(|&r| SonRank::new(r).unwrap()).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(color_of(&w("1")), NodeColor::White);
        assert_eq!(color_of(&w("10")), NodeColor::Black);
        assert_eq!(color_of(&w("10000")), NodeColor::White);
        assert_eq!(preferred_son(&w("1001")), w("100100"));
        let s = |x: &str| sons(&w(x)).iter().map(|v| v.to_string()).collect::<Vec<_>>();
        assert_eq!(s("1"), ["10", "100", "101"]);
        assert_eq!(s("10"), ["1000", "1001"]);
        assert_eq!(s("100"), ["1010", "10000", "10001"]);
        assert_eq!(parent(&w("1")), None);
        assert_eq!(parent(&w("100")), Some((w("1"), SonRank(2))));
        assert_eq!(parent(&w("1000")), Some((w("10"), SonRank(1))));
        assert_eq!(path_from_root(&w("1")), vec![]);
        assert_eq!(path_from_root(&w("1000")), ranks(&[1, 1]));
        assert_eq!(path_from_root(&w("10001")), ranks(&[2, 3]));
    }

    #[test]
    fn generated_small_tree() {
        let t = generate_tree(Level(2));
        assert_eq!(t.node(1).unwrap().sons, vec![2, 3, 4]);
        assert_eq!(t.node(2).unwrap().sons, vec![5, 6]);
        assert_eq!(t.node(3).unwrap().sons, vec![7, 8, 9]);
        assert_eq!(t.level_range(Level(2)), Some((5, 12)));
    }

    #[test]
    fn agrees_with_generated_tree() {
        let t = generate_tree(Level(9));
        for n in 1..=t.max_node() {
            let word = encode_u64(n).unwrap();
            let node = t.node(n).unwrap();
            assert_eq!(color_of(&word), node.color, "color of {n}");
            let expected: Vec<FibWord> =
                node.sons.iter().map(|&s| encode_u64(s).unwrap()).collect();
            if !expected.is_empty() {
                assert_eq!(sons(&word), expected, "sons of {n}");
            }
            let p = parent(&word).map(|(f, r)| (f.to_u64().unwrap(), r));
            assert_eq!(p, node.parent, "parent of {n}");
            assert_eq!(path_from_root(&word), t.path(n), "path of {n}");
            assert_eq!(word_from_path(&t.path(n)), Some(word));
        }
    }

    #[test]
    fn invalid_rank_paths() {
        // node 2 is black and has no third son
        assert_eq!(word_from_path(&ranks(&[1, 3])), None);
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn path_strategy() -> impl Strategy<Value = Vec<SonRank>> {
            proptest::collection::vec(1u8..=3, 0..60).prop_map(|raw| {
                // clamp ranks to the son count along the way
                let mut color = NodeColor::White;
                raw.into_iter()
                    .map(|r| {
                        let r = SonRank(r.min(color.son_count()));
                        color = NodeColor::of_rank(r);
                        r
                    })
                    .collect()
            })
        }

        proptest! {
            #[test]
            fn path_round_trip(path in path_strategy()) {
                let word = word_from_path(&path).unwrap();
                prop_assert_eq!(path_from_root(&word), path.clone());
                if let Some(&last) = path.last() {
                    prop_assert_eq!(color_of(&word), NodeColor::of_rank(last));
                }
            }

            #[test]
            fn parent_inverts_sons(path in path_strategy()) {
                let word = word_from_path(&path).unwrap();
                for (i, s) in sons(&word).into_iter().enumerate() {
                    prop_assert_eq!(parent(&s), Some((word.clone(), SonRank(i as u8 + 1))));
                }
                let pref = preferred_son(&word);
                let rank = preferred_rank(color_of(&word));
                prop_assert_eq!(son(&word, rank), Some(pref));
            }
        }
    }
}
