//! Reference tiling built purely geometrically: reflect the base polygon in
//! its sides until the requested radius is covered, then read adjacency off
//! shared edges. Nothing here consults the symbolic navigation rules, so it
//! can be used to check them.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{base_polygon, hyperbolic_distance, reflect, DiskPoint, TilePatch};
use crate::grid::{Address, Grid};
use crate::layout::{Layout, SonPlacement};
use crate::nav::{ball, neighbors};

pub const MAX_RADIUS: usize = 8;

/// Two points closer than this are the same point.
pub const TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, Serialize)]
pub struct OracleTile {
    pub patch: TilePatch,
    /// Breadth-first distance from the base polygon.
    pub distance: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleTiling {
    pub grid: Grid,
    pub radius: usize,
    pub tiles: Vec<OracleTile>,
    /// Sorted neighbor lists; symmetric.
    pub adjacency: Vec<Vec<usize>>,
    /// Filled in by [`match_addresses`].
    pub address_of: Vec<Option<Address>>,
}

/// Buckets points on a square grid for tolerance lookups.
struct PointIndex {
    cell: f64,
    buckets: HashMap<(i64, i64), Vec<(DiskPoint, usize)>>,
}

impl PointIndex {
    fn new() -> Self {
        PointIndex { cell: 1e-5, buckets: HashMap::new() }
    }

    fn key(&self, p: DiskPoint) -> (i64, i64) {
        ((p.x / self.cell).floor() as i64, (p.y / self.cell).floor() as i64)
    }

    fn insert(&mut self, p: DiskPoint, id: usize) {
        let k = self.key(p);
        self.buckets.entry(k).or_default().push((p, id));
    }

    fn near(&self, p: DiskPoint, tol: f64) -> Vec<usize> {
        let (kx, ky) = self.key(p);
        let mut out = vec![];
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(b) = self.buckets.get(&(kx + dx, ky + dy)) {
                    out.extend(b.iter().filter(|(q, _)| (q.z() - p.z()).norm() < tol).map(|&(_, id)| id));
                }
            }
        }
        out
    }
}

/// Reflection closure of the base polygon out to graph distance `radius`.
pub fn generate(grid: Grid, radius: usize) -> Result<OracleTiling> {
    if radius > MAX_RADIUS {
        return Err(Error::RadiusCap { radius, cap: MAX_RADIUS });
    }
    let base = base_polygon(grid.p() as u32, grid.q() as u32)?;
    let mut tiles = vec![OracleTile { patch: base, distance: 0 }];
    let mut centers = PointIndex::new();
    centers.insert(DiskPoint::ORIGIN, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        if tiles[i].distance == radius {
            continue;
        }
        for e in 0..grid.p() as usize {
            let (u, v) = tiles[i].patch.edge(e);
            let image = tiles[i].patch.transformed(&reflect(u, v)?);
            let known = centers
                .near(image.center, 1e-6)
                .into_iter()
                .any(|j| hyperbolic_distance(tiles[j].patch.center, image.center) < TOLERANCE);
            if !known {
                let id = tiles.len();
                centers.insert(image.center, id);
                tiles.push(OracleTile { patch: image, distance: tiles[i].distance + 1 });
                queue.push_back(id);
            }
        }
    }

    let mut vertices = PointIndex::new();
    for (id, t) in tiles.iter().enumerate() {
        for &v in &t.patch.vertices {
            vertices.insert(v, id);
        }
    }
    let adjacency = tiles
        .iter()
        .enumerate()
        .map(|(id, t)| {
            let mut adj = vec![];
            for e in 0..t.patch.vertices.len() {
                let (u, v) = t.patch.edge(e);
                let at_v = vertices.near(v, TOLERANCE);
                for j in vertices.near(u, TOLERANCE) {
                    if j != id && at_v.contains(&j) && !adj.contains(&j) {
                        adj.push(j);
                    }
                }
            }
            adj.sort_unstable();
            adj
        })
        .collect();
    let n = tiles.len();
    Ok(OracleTiling { grid, radius, tiles, adjacency, address_of: vec![None; n] })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchReport {
    pub grid: Grid,
    pub radius: usize,
    pub oracle_tiles: usize,
    pub addresses: usize,
    pub matched: usize,
    /// Directed (tile, edge) pairs whose symbolic neighbor was compared with the geometry.
    pub edges_checked: usize,
    pub mismatches: Vec<String>,
}

impl MatchReport {
    pub fn is_bijection(&self) -> bool {
        self.mismatches.is_empty() && self.matched == self.oracle_tiles && self.matched == self.addresses
    }
}

/// Places every address of the ball with the default son placement and
/// matches it against the closure tiling; see [`match_addresses_with`].
pub fn match_addresses(t: &mut OracleTiling) -> MatchReport {
    match_addresses_with(t, SonPlacement::default())
}

/// Matches laid-out addresses to closure tiles by center, then checks that
/// each tile's symbolic neighbor across edge `i` is the tile sharing its
/// geometric edge `i`, and that tree depth equals closure distance.
pub fn match_addresses_with(t: &mut OracleTiling, placement: SonPlacement) -> MatchReport {
    let layout = Layout::with_placement(t.grid, placement);
    let mut centers = PointIndex::new();
    for (id, tile) in t.tiles.iter().enumerate() {
        centers.insert(tile.patch.center, id);
    }
    let find = |p: DiskPoint| -> Option<usize> {
        centers
            .near(p, 1e-6)
            .into_iter()
            .find(|&j| hyperbolic_distance(t.tiles[j].patch.center, p) < TOLERANCE)
    };

    let addresses = ball(t.grid, t.radius);
    let mut mismatches = vec![];
    let mut address_of: Vec<Option<Address>> = vec![None; t.tiles.len()];
    let mut tile_of: HashMap<Address, usize> = HashMap::new();
    let mut patches = HashMap::new();
    for a in &addresses {
        let patch = layout.patch(a);
        match find(patch.center) {
            None => mismatches.push(format!("{a}: no closure tile at its layout position")),
            Some(id) => {
                if let Some(prev) = &address_of[id] {
                    mismatches.push(format!("tile #{id} claimed by both {prev} and {a}"));
                    continue;
                }
                if t.tiles[id].distance != a.depth() {
                    mismatches.push(format!(
                        "{a}: tree depth {} but closure distance {}",
                        a.depth(),
                        t.tiles[id].distance
                    ));
                }
                address_of[id] = Some(a.clone());
                tile_of.insert(a.clone(), id);
            }
        }
        patches.insert(a.clone(), patch);
    }
    for (id, a) in address_of.iter().enumerate() {
        if a.is_none() {
            mismatches.push(format!("tile #{id} at distance {} has no address", t.tiles[id].distance));
        }
    }

    let mut edges_checked = 0;
    for a in &addresses {
        let Some(&id) = tile_of.get(a) else { continue };
        let patch = &patches[a];
        for (e, n) in neighbors(a).iter().enumerate() {
            let (u, v) = patch.edge(e);
            let across = t.adjacency[id].iter().copied().find(|&j| {
                let vs = &t.tiles[j].patch.vertices;
                let has = |p: DiskPoint| vs.iter().any(|w| (w.z() - p.z()).norm() < TOLERANCE);
                has(u) && has(v)
            });
            match (across, tile_of.get(n)) {
                (Some(j), Some(&k)) if j == k => edges_checked += 1,
                (None, None) => {}
                (None, Some(_)) => mismatches.push(format!("{a} edge {e}: symbolic neighbor {n} is not across that edge")),
                (Some(j), _) => {
                    let geometric = address_of[j].as_ref().map_or("unaddressed tile".to_string(), |x| x.to_string());
                    mismatches.push(format!("{a} edge {e}: symbolic neighbor {n}, geometric neighbor {geometric}"));
                }
            }
        }
        // tiles strictly inside the ball have all their neighbors in it
        if a.depth() < t.radius && t.adjacency[id].len() != t.grid.p() as usize {
            mismatches.push(format!("{a}: {} closure neighbors", t.adjacency[id].len()));
        }
    }

    let matched = address_of.iter().filter(|x| x.is_some()).count();
    t.address_of = address_of;
    MatchReport {
        grid: t.grid,
        radius: t.radius,
        oracle_tiles: t.tiles.len(),
        addresses: addresses.len(),
        matched,
        edges_checked,
        mismatches,
    }
}

impl OracleTiling {
    /// Index of the tile carrying `a`, once addresses have been matched.
    pub fn index_of(&self, a: &Address) -> Option<usize> {
        self.address_of.iter().position(|x| x.as_ref() == Some(a))
    }

    /// Number of tiles at each distance from the base polygon.
    pub fn ring_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.radius + 1];
        for t in &self.tiles {
            counts[t.distance] += 1;
        }
        counts
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tiling serializes")
    }
}

/// Breadth-first distance and one shortest path (tile indices, both ends
/// included) inside the generated ball.
pub fn oracle_bfs(t: &OracleTiling, from: usize, to: usize) -> Result<(usize, Vec<usize>)> {
    let mut pred = vec![usize::MAX; t.tiles.len()];
    pred[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut path = vec![to];
            let mut y = to;
            while y != from {
                y = pred[y];
                path.push(y);
            }
            path.reverse();
            return Ok((path.len() - 1, path));
        }
        for &n in &t.adjacency[x] {
            if pred[n] == usize::MAX {
                pred[n] = x;
                queue.push_back(n);
            }
        }
    }
    Err(Error::FrontierLimited)
}

/// Breadth-first distances from `from` to every tile (`usize::MAX` if unreachable).
pub fn oracle_distances(t: &OracleTiling, from: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; t.tiles.len()];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for &n in &t.adjacency[x] {
            if dist[n] == usize::MAX {
                dist[n] = dist[x] + 1;
                queue.push_back(n);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_closures() {
        assert_eq!(generate(Grid::Pentagrid, 1).unwrap().tiles.len(), 6);
        let p = generate(Grid::Pentagrid, 2).unwrap();
        assert_eq!(p.ring_counts(), vec![1, 5, 15]);
        let h = generate(Grid::Heptagrid, 2).unwrap();
        assert_eq!(h.ring_counts(), vec![1, 7, 21]);
        assert!(matches!(generate(Grid::Pentagrid, 9), Err(Error::RadiusCap { .. })));
    }

    #[test]
    fn adjacency_is_symmetric_and_irreflexive() {
        for grid in Grid::ALL {
            let t = generate(grid, 3).unwrap();
            for (i, adj) in t.adjacency.iter().enumerate() {
                assert!(!adj.contains(&i));
                for &j in adj {
                    assert!(t.adjacency[j].contains(&i));
                }
                if t.tiles[i].distance < 3 {
                    assert_eq!(adj.len(), grid.p() as usize);
                }
            }
        }
    }

    #[test]
    fn bijection_and_negative_control() {
        for grid in Grid::ALL {
            let mut t = generate(grid, 3).unwrap();
            let report = match_addresses(&mut t);
            assert!(report.is_bijection(), "{:?}", report.mismatches);
            assert_eq!(t.index_of(&Address::center(grid)), Some(0));
            let swapped = SonPlacement { black: [3, 2], ..SonPlacement::default() };
            assert!(!match_addresses_with(&mut t, swapped).mismatches.is_empty());
        }
    }

    #[test]
    fn bfs_examples() {
        let mut t = generate(Grid::Pentagrid, 3).unwrap();
        match_addresses(&mut t);
        let idx = |s: &str| t.index_of(&s.parse().unwrap()).unwrap();
        assert_eq!(oracle_bfs(&t, idx("P5:2:1"), idx("P5:2:1")).unwrap().0, 0);
        assert_eq!(oracle_bfs(&t, 0, idx("P5:4:1")).unwrap().0, 1);
        assert_eq!(oracle_bfs(&t, idx("P5:1:1"), idx("P5:3:1")).unwrap().0, 2);
    }

    #[test]
    fn json_round_trips_through_serde_value() {
        let t = generate(Grid::Heptagrid, 1).unwrap();
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["tiles"].as_array().unwrap().len(), 8);
        assert_eq!(v["grid"], "H7");
    }
}
