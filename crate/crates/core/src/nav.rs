//! Neighbors, distances, shortest paths and recentering on addresses.
//!
//! Edge 0 of a node faces its father (the central tile for a sector root) and
//! edges are numbered counterclockwise in canonical pose. The son of rank `r`
//! lies across edge `r + 1`; the remaining edges lead to lateral neighbors in
//! the same or an adjacent sector, given below in closed form on rank paths.

use crate::error::{Error, Result};
use crate::grid::{son_count, Address, Grid, Pos};

/// Extra steps a window may spend moving sideways within one level.
const WINDOW_SLACK: usize = 2;

/// Tile across `edge` of `pos`, and the index of the shared edge seen from it.
pub(crate) fn step(grid: Grid, pos: &Pos, edge: u8) -> (Pos, u8) {
    let p = grid.p();
    debug_assert!(edge < p);
    let (sector, ranks) = match pos {
        Pos::Center => return (Pos::Node { sector: edge, ranks: vec![] }, 0),
        Pos::Node { sector, ranks } => (*sector, ranks),
    };
    if edge == 0 {
        return match ranks.split_last() {
            None => (Pos::Center, sector),
            Some((&last, rest)) => (Pos::Node { sector, ranks: rest.to_vec() }, last + 1),
        };
    }
    let sons = son_count(ranks);
    if (2..2 + sons).contains(&edge) {
        let mut r = ranks.clone();
        r.push(edge - 1);
        return (Pos::Node { sector, ranks: r }, 0);
    }
    let black = sons == 2;
    let node = || (sector, ranks.clone());
    let father = || (sector, ranks[..ranks.len() - 1].to_vec());
    match grid {
        Grid::Pentagrid => match edge {
            1 => (as_pos(lateral_p5(p, node())), 1),
            4 => (as_pos(with_son(lateral_p5(p, father()), 1)), 4),
            _ => unreachable!(),
        },
        Grid::Heptagrid => match edge {
            1 => {
                let z = right_h7(p, node());
                let back = if is_black(&z) { 5 } else { 6 };
                (as_pos(z), back)
            }
            6 => {
                let z = left_h7(p, node());
                let back = match (black, is_black(&z)) {
                    (false, _) => 1,
                    (true, true) => 4,
                    (true, false) => 5,
                };
                (as_pos(z), back)
            }
            5 if !black => (as_pos(with_son(left_h7(p, node()), 1)), 6),
            5 => (as_pos(with_last_son(right_h7(p, father()))), 1),
            4 => (as_pos(with_son(with_last_son(right_h7(p, father())), 1)), 6),
            _ => unreachable!(),
        },
    }
}

type Node = (u8, Vec<u8>);

fn as_pos((sector, ranks): Node) -> Pos {
    Pos::Node { sector, ranks }
}

fn is_black((_, ranks): &Node) -> bool {
    son_count(ranks) == 2
}

fn with_son((sector, mut ranks): Node, rank: u8) -> Node {
    ranks.push(rank);
    (sector, ranks)
}

fn with_last_son((sector, mut ranks): Node) -> Node {
    ranks.push(son_count(&ranks));
    (sector, ranks)
}

/// Strips a maximal suffix of (1, 2) pairs, returning how many were removed.
fn strip_black_second(ranks: &mut Vec<u8>) -> usize {
    let mut m = 0;
    while ranks.len() >= 2 && ranks[ranks.len() - 2..] == [1, 2] {
        ranks.truncate(ranks.len() - 2);
        m += 1;
    }
    m
}

/// Pentagrid: tile across edge 1 of a node.
fn lateral_p5(p: u8, (mut sector, mut r): Node) -> Node {
    let m = strip_black_second(&mut r);
    match r.len() {
        0 => {
            sector = (sector + 1) % p;
            r.push(3);
        }
        n if r[n - 1] < son_count(&r[..n - 1]) => {
            r[n - 1] += 1;
            r.push(3);
        }
        1 => {
            sector = (sector + p - 1) % p;
            r.clear();
        }
        n => {
            r.truncate(n - 1);
            r[n - 2] -= 1;
        }
    }
    for _ in 0..m {
        r.extend_from_slice(&[1, 2]);
    }
    (sector, r)
}

/// Heptagrid: the next tile counterclockwise on the same level, which lies
/// across edge 1.
fn right_h7(p: u8, node: Node) -> Node {
    walk_h7(p, node, true)
}

/// Heptagrid: the previous tile on the same level, across edge 6.
fn left_h7(p: u8, node: Node) -> Node {
    walk_h7(p, node, false)
}

/// Both walks call each other through fathers; unrolled into one loop with a
/// pending suffix so that deep words do not recurse.
fn walk_h7(p: u8, (mut sector, mut r): Node, mut right: bool) -> Node {
    let mut tail_rev: Vec<u8> = Vec::new();
    loop {
        if right {
            let m = strip_black_second(&mut r);
            if m > 0 {
                let first = if r.last() == Some(&3) { 2 } else { 3 };
                for _ in 1..m {
                    tail_rev.extend_from_slice(&[1, 2]);
                }
                tail_rev.extend_from_slice(&[1, first]);
            }
            let n = r.len();
            if n == 0 {
                sector = (sector + 1) % p;
                break;
            }
            if r[n - 1] < son_count(&r[..n - 1]) {
                r[n - 1] += 1;
                break;
            }
            debug_assert_eq!(r[n - 1], 3);
            r.pop();
            tail_rev.push(1);
            right = false;
        } else {
            match r.last().copied() {
                None => {
                    sector = (sector + p - 1) % p;
                    break;
                }
                Some(last) if last >= 2 => {
                    *r.last_mut().unwrap() -= 1;
                    break;
                }
                Some(_) => {
                    r.pop();
                    right = true;
                }
            }
        }
    }
    r.extend(tail_rev.iter().rev());
    (sector, r)
}

/// The `p` neighbors of `a`, indexed by edge.
pub fn neighbors(a: &Address) -> Vec<Address> {
    let pos = a.to_pos();
    (0..a.grid.p()).map(|e| Address::from_pos(a.grid, &step(a.grid, &pos, e).0)).collect()
}

/// The tile across `edge` of `a`, and the index of the shared edge seen from that tile.
pub fn neighbor(a: &Address, edge: u8) -> Result<(Address, u8)> {
    if edge >= a.grid.p() {
        return Err(Error::MalformedAddress {
            input: format!("{a} edge {edge}"),
            reason: format!("edge index must be below {}", a.grid.p()),
        });
    }
    let (pos, back) = step(a.grid, &a.to_pos(), edge);
    Ok((Address::from_pos(a.grid, &pos), back))
}

/// Every tile within `radius` of the central tile, in breadth-first tree order.
pub fn ball(grid: Grid, radius: usize) -> Vec<Address> {
    ball_pos(grid, radius).iter().map(|p| Address::from_pos(grid, p)).collect()
}

pub(crate) fn ball_pos(grid: Grid, radius: usize) -> Vec<Pos> {
    let mut out = vec![Pos::Center];
    if radius == 0 {
        return out;
    }
    let mut frontier: Vec<Pos> = (0..grid.p()).map(|s| Pos::Node { sector: s, ranks: vec![] }).collect();
    for depth in 1..=radius {
        out.extend(frontier.iter().cloned());
        if depth == radius {
            break;
        }
        let mut next = Vec::with_capacity(frontier.len() * 3);
        for pos in &frontier {
            if let Pos::Node { sector, ranks } = pos {
                for r in 1..=son_count(ranks) {
                    let mut child = ranks.clone();
                    child.push(r);
                    next.push(Pos::Node { sector: *sector, ranks: child });
                }
            }
        }
        frontier = next;
    }
    out
}

/// Same-depth positions usually differ near the end of their paths.
fn same_pos(a: &Pos, b: &Pos) -> bool {
    match (a, b) {
        (Pos::Center, Pos::Center) => true,
        (Pos::Node { sector: s, ranks: r }, Pos::Node { sector: t, ranks: q }) => {
            s == t && r.len() == q.len() && r.iter().rev().eq(q.iter().rev())
        }
        _ => false,
    }
}

struct Entry {
    pos: Pos,
    dist: usize,
    /// (depth, index) of the entry this one was reached from.
    pred: Option<(usize, usize)>,
}

/// For every depth from that of `start` down to 0, the tiles reachable while
/// spending at most `WINDOW_SLACK` steps beyond the direct descent, with their
/// walk lengths from `start`.
fn windows(grid: Grid, start: &Pos) -> Vec<Vec<Entry>> {
    let d = start.depth();
    let mut levels: Vec<Vec<Entry>> = (0..=d).map(|_| Vec::new()).collect();
    let mut cur = vec![Entry { pos: start.clone(), dist: 0, pred: None }];
    let mut k = d;
    loop {
        let floor = d - k;
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..cur.len() {
                let dist = cur[i].dist;
                if dist - floor >= WINDOW_SLACK {
                    continue;
                }
                for e in 0..grid.p() {
                    let (u, _) = step(grid, &cur[i].pos, e);
                    if u.depth() != k {
                        continue;
                    }
                    match cur.iter().position(|x| same_pos(&x.pos, &u)) {
                        Some(j) if cur[j].dist <= dist + 1 => {}
                        Some(j) => {
                            cur[j].dist = dist + 1;
                            cur[j].pred = Some((k, i));
                            changed = true;
                        }
                        None => {
                            cur.push(Entry { pos: u, dist: dist + 1, pred: Some((k, i)) });
                            changed = true;
                        }
                    }
                }
            }
        }
        levels[k] = cur;
        if k == 0 {
            break;
        }
        let mut next: Vec<Entry> = Vec::new();
        for (i, t) in levels[k].iter().enumerate() {
            if t.dist - floor > WINDOW_SLACK {
                continue;
            }
            for e in 0..grid.p() {
                let (u, _) = step(grid, &t.pos, e);
                if u.depth() + 1 != k {
                    continue;
                }
                match next.iter().position(|x| same_pos(&x.pos, &u)) {
                    Some(j) if next[j].dist <= t.dist + 1 => {}
                    Some(j) => {
                        next[j].dist = t.dist + 1;
                        next[j].pred = Some((k, i));
                    }
                    None => next.push(Entry { pos: u, dist: t.dist + 1, pred: Some((k, i)) }),
                }
            }
        }
        next.retain(|x| x.dist - (floor + 1) <= WINDOW_SLACK);
        cur = next;
        k -= 1;
    }
    levels
}

/// Best meeting point of the two descents: (total, depth, index in a's window, index in b's).
fn meet(a: &[Vec<Entry>], b: &[Vec<Entry>]) -> (usize, usize, usize, usize) {
    let mut best: Option<(usize, usize, usize, usize)> = None;
    for k in 0..a.len().min(b.len()) {
        for (i, x) in a[k].iter().enumerate() {
            for (j, y) in b[k].iter().enumerate() {
                if same_pos(&x.pos, &y.pos) {
                    let total = x.dist + y.dist;
                    if best.is_none_or(|(t, ..)| total < t) {
                        best = Some((total, k, i, j));
                    }
                }
            }
        }
    }
    best.expect("both descents reach the central tile")
}

fn check_same_grid(a: &Address, b: &Address) -> Result<()> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch { left: a.grid.tag(), right: b.grid.tag() });
    }
    Ok(())
}

/// Graph distance between two tiles of the same grid.
pub fn distance(a: &Address, b: &Address) -> Result<usize> {
    check_same_grid(a, b)?;
    let wa = windows(a.grid, &a.to_pos());
    let wb = windows(b.grid, &b.to_pos());
    Ok(meet(&wa, &wb).0)
}

/// A shortest path from `a` to `b`, both ends included.
pub fn shortest_path(a: &Address, b: &Address) -> Result<Vec<Address>> {
    check_same_grid(a, b)?;
    let wa = windows(a.grid, &a.to_pos());
    let wb = windows(b.grid, &b.to_pos());
    let (_, k, i, j) = meet(&wa, &wb);
    let chain = |w: &[Vec<Entry>], mut at: (usize, usize)| {
        let mut out = vec![];
        loop {
            let e = &w[at.0][at.1];
            out.push(e.pos.clone());
            match e.pred {
                Some(p) => at = p,
                None => return out,
            }
        }
    };
    let mut path = chain(&wa, (k, i));
    path.reverse();
    path.extend(chain(&wb, (k, j)).into_iter().skip(1));
    Ok(path.iter().map(|p| Address::from_pos(a.grid, p)).collect())
}

/// Correspondence between vertex indices of a tile in one coordinate system
/// and the same tile in another: `m -> shift ± m (mod p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct VertexMap {
    flip: bool,
    shift: u8,
}

impl VertexMap {
    pub(crate) const IDENTITY: VertexMap = VertexMap { flip: false, shift: 0 };
}

/// Indices, in the tile across `edge`, of the two endpoints of `edge`. Tiles
/// at depths of equal parity run a shared edge in opposite directions.
fn shared_vertices(p: u8, from_depth: usize, to_depth: usize, back: u8) -> (u8, u8) {
    let next = (back + 1) % p;
    if from_depth % 2 != to_depth % 2 {
        (back, next)
    } else {
        (next, back)
    }
}

/// Crosses `edge` of `a` in system A and the corresponding edge of `b` in
/// system B, where `map` sends vertex indices of `a` to those of `b`.
pub(crate) fn transport_step(grid: Grid, a: &Pos, b: &Pos, map: VertexMap, edge: u8) -> (Pos, Pos, VertexMap) {
    let p = grid.p();
    let (a2, back_a) = step(grid, a, edge);
    let edge_b = if map.flip { (map.shift + 2 * p - edge - 1) % p } else { (map.shift + edge) % p };
    let (b2, back_b) = step(grid, b, edge_b);
    let (x, y) = shared_vertices(p, a.depth(), a2.depth(), back_a);
    let (u, w) = shared_vertices(p, b.depth(), b2.depth(), back_b);
    // the image of vertex `edge` is the first endpoint of `edge_b` unless flipped
    let (xs, ys) = if map.flip { (w, u) } else { (u, w) };
    let flip = (y + p - x) % p != (ys + p - xs) % p;
    let shift = if flip { (xs + x) % p } else { (xs + p - x) % p };
    (a2, b2, VertexMap { flip, shift })
}

/// Edges crossed walking from `from` up to the central tile and down to `to`.
fn route_through_center(from: &Pos, to: &Pos) -> Vec<u8> {
    let mut edges = vec![0; from.depth()];
    if let Pos::Node { sector, ranks } = to {
        edges.push(*sector);
        edges.extend(ranks.iter().map(|r| r + 1));
    }
    edges
}

/// Walks `edges` from `a` in system A, mirroring each step from `b` in system B.
fn transport(grid: Grid, a: &Pos, b: &Pos, edges: &[u8]) -> Pos {
    let (mut a, mut b, mut map) = (a.clone(), b.clone(), VertexMap::IDENTITY);
    for &e in edges {
        let (a2, b2, m2) = transport_step(grid, &a, &b, map, e);
        a = a2;
        b = b2;
        map = m2;
    }
    b
}

/// Every tile within `radius` of `c`, as (position in the system centered at
/// `c`, global position), in breadth-first order of the recentered tree.
pub(crate) fn relative_ball(c: &Address, radius: usize) -> Vec<(Pos, Pos)> {
    let grid = c.grid;
    let mut out = vec![(Pos::Center, c.to_pos())];
    let mut frontier = vec![(Pos::Center, c.to_pos(), VertexMap::IDENTITY)];
    for _ in 0..radius {
        let mut next = vec![];
        for (rel, abs, map) in &frontier {
            let edges: Vec<u8> = match rel {
                Pos::Center => (0..grid.p()).collect(),
                Pos::Node { ranks, .. } => (1..=son_count(ranks)).map(|r| r + 1).collect(),
            };
            for e in edges {
                let (rel2, abs2, map2) = transport_step(grid, rel, abs, *map, e);
                out.push((rel2.clone(), abs2.clone()));
                next.push((rel2, abs2, map2));
            }
        }
        frontier = next;
    }
    out
}

/// Address of `a` in the coordinate system whose central tile is `c` and
/// whose sector 1 lies across edge 0 of `c`.
pub fn recenter(a: &Address, c: &Address) -> Result<Address> {
    check_same_grid(a, c)?;
    let (pa, pc) = (a.to_pos(), c.to_pos());
    let edges = route_through_center(&pc, &pa);
    Ok(Address::from_pos(a.grid, &transport(a.grid, &pc, &Pos::Center, &edges)))
}

/// Inverse of [`recenter`]: the global address of the tile `rel` of the system centered at `c`.
pub fn absolute_from(c: &Address, rel: &Address) -> Result<Address> {
    check_same_grid(rel, c)?;
    let edges = route_through_center(&Pos::Center, &rel.to_pos());
    Ok(Address::from_pos(c.grid, &transport(c.grid, &Pos::Center, &c.to_pos(), &edges)))
}

/// Direction, in radians, of the global central tile as seen from `c` placed
/// in canonical pose.
pub fn origin_direction(c: &Address) -> Result<f64> {
    if c.is_center() {
        return Err(Error::CenterHasNoArrow);
    }
    let frame = crate::layout::Layout::new(c.grid).frame(&c.to_pos());
    let m = frame.invert();
    // m(0) = b / conj(a); its argument stays exact even when |m(0)| rounds to 1
    let angle = m.b.arg() + m.a.arg();
    Ok(angle.sin().atan2(angle.cos()))
}

/// Neighbor of `c` whose direction in canonical pose is closest to `angle`.
pub fn edge_toward(grid: Grid, angle: f64) -> u8 {
    let p = grid.p() as f64;
    let mut best = (f64::INFINITY, 0u8);
    for e in 0..grid.p() {
        let dir = (2.0 * e as f64 + 1.0) * std::f64::consts::PI / p;
        let diff = (angle - dir).sin().atan2((angle - dir).cos()).abs();
        if diff < best.0 {
            best = (diff, e);
        }
    }
    best.1
}
