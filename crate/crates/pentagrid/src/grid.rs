//! Whole-pentagrid addressing.
//!
//! The pentagrid is the central tile plus five sector trees, one per side of
//! the central pentagon, sectors numbered counterclockwise. Tiles are
//! addressed `C` or `s:n` with `s` the sector and `n` the breadth-first node
//! number inside the sector.
//!
//! Each tile has five neighbour slots. Slot 1 faces the father (the center
//! for sector roots), slots increase counterclockwise. Inside a sector the
//! slots come from the digit rules in [`crate::fibtree`]; entries those rules
//! leave as sentinels (0, or values outside the admissible level range at the
//! extreme branches) are resolved here to tiles of the adjacent sectors.
//!
//! The border resolution was derived once from the geometric layout
//! (reflect-and-match, see the geometry tests) and is frozen as a rule:
//! the leftmost-branch node of sector `s` at level `k` shares its slot-2 side
//! with the rightmost-branch node of sector `s-1` at level `k-1`; dually, the
//! rightmost-branch node at level `k` (the root included) shares its slot-5
//! side with the leftmost-branch node of sector `s+1` at level `k+1`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::fibtree::{self, TreeFlavor};
use crate::{Error, Result};

/// Default cap on ball radius (tree levels per sector).
pub const BALL_LEVEL_CAP: usize = 10;

/// Global tile identity: the central tile, or a node of one of the five
/// sector trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TileAddress {
    Center,
    Sector(u8, u64),
}

impl TileAddress {
    pub fn sector(s: u8, n: u64) -> Self {
        TileAddress::Sector(s, n)
    }

    pub fn is_center(&self) -> bool {
        matches!(self, TileAddress::Center)
    }

    /// Tree level of the node; `None` for the center.
    pub fn level(&self) -> Option<usize> {
        match self {
            TileAddress::Center => None,
            TileAddress::Sector(_, n) => Some(node_level(*n)),
        }
    }
}

impl fmt::Display for TileAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TileAddress::Center => write!(f, "C"),
            TileAddress::Sector(s, n) => write!(f, "{s}:{n}"),
        }
    }
}

impl FromStr for TileAddress {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "C" {
            return Ok(TileAddress::Center);
        }
        let (sec, node) = s
            .split_once(':')
            .ok_or_else(|| Error::BadAddress(s.to_string()))?;
        let sec: u8 = sec.parse().map_err(|_| Error::BadAddress(s.to_string()))?;
        let node: u64 = node.parse().map_err(|_| Error::BadAddress(s.to_string()))?;
        if !(1..=5).contains(&sec) || node == 0 {
            return Err(Error::BadAddress(s.to_string()));
        }
        Ok(TileAddress::Sector(sec, node))
    }
}

fn fib64() -> &'static Vec<u64> {
    static FIB: OnceLock<Vec<u64>> = OnceLock::new();
    FIB.get_or_init(|| {
        let mut v = vec![1u64, 1u64];
        loop {
            let k = v.len();
            match v[k - 1].checked_add(v[k - 2]) {
                Some(next) => v.push(next),
                None => break,
            }
        }
        v
    })
}

/// First node number of level `k`: 1, 2, 5, 13, 34, ...
pub fn level_first(k: usize) -> u64 {
    if k == 0 {
        1
    } else {
        fib64()[2 * k]
    }
}

/// Last node number of level `k`: 1, 4, 12, 33, 88, ...
pub fn level_last(k: usize) -> u64 {
    fib64()[2 * k + 2] - 1
}

/// Tree level of node `n >= 1`.
pub fn node_level(n: u64) -> usize {
    debug_assert!(n >= 1);
    let mut k = 0;
    while level_last(k) < n {
        k += 1;
    }
    k
}

fn sector_prev(s: u8) -> u8 {
    if s == 1 {
        5
    } else {
        s - 1
    }
}

fn sector_next(s: u8) -> u8 {
    s % 5 + 1
}

fn check_sector(s: u8) -> Result<()> {
    if (1..=5).contains(&s) {
        Ok(())
    } else {
        Err(Error::BadSector(s))
    }
}

/// The five neighbours of a tile on the infinite grid, father first (the
/// center for roots), counterclockwise. Supported flavors: standard, best.
pub fn neighbors_full(a: TileAddress, flavor: TreeFlavor) -> Result<[TileAddress; 5]> {
    if !matches!(flavor, TreeFlavor::Standard | TreeFlavor::Best) {
        return Err(Error::UnsupportedFlavor(flavor.to_string()));
    }
    match a {
        TileAddress::Center => Ok([
            TileAddress::Sector(1, 1),
            TileAddress::Sector(2, 1),
            TileAddress::Sector(3, 1),
            TileAddress::Sector(4, 1),
            TileAddress::Sector(5, 1),
        ]),
        TileAddress::Sector(s, n) => {
            check_sector(s)?;
            if n == 0 {
                return Err(Error::ZeroNode);
            }
            // The best-tree rule list for node 2 starts at the border
            // sentinel rather than the father; normalize to father-first.
            if n == 2 && flavor == TreeFlavor::Best {
                return Ok([
                    TileAddress::Sector(s, 1),
                    TileAddress::Sector(sector_prev(s), 1),
                    TileAddress::Sector(s, 5),
                    TileAddress::Sector(s, 6),
                    TileAddress::Sector(s, 7),
                ]);
            }
            let raw = fibtree::neighbors(&BigUint::from(n), flavor)?;
            let mut out: [TileAddress; 5] = [TileAddress::Center; 5];
            for (i, v) in raw.iter().enumerate() {
                let v = v
                    .to_u64()
                    .ok_or_else(|| Error::Msg("neighbour number exceeds u64".into()))?;
                out[i] = TileAddress::Sector(s, v);
            }
            let k = node_level(n);
            if n == 1 {
                out[0] = TileAddress::Center;
            }
            if k >= 1 && n == level_first(k) {
                out[1] = TileAddress::Sector(sector_prev(s), level_last(k - 1));
            }
            if n == level_last(k) {
                out[4] = TileAddress::Sector(sector_next(s), level_first(k + 1));
            }
            Ok(out)
        }
    }
}

/// Slot index (0-based) of `b` among the neighbours of `a`.
pub fn slot_of(a: TileAddress, b: TileAddress, flavor: TreeFlavor) -> Result<usize> {
    neighbors_full(a, flavor)?
        .iter()
        .position(|&t| t == b)
        .ok_or_else(|| Error::NotAdjacent(a.to_string(), b.to_string()))
}

/// The four `(tile, side)` edges around the vertex at corner `corner` of
/// tile `a` (the vertex between sides `corner` and `corner + 1`, 1-based),
/// in cyclic order starting with `(a, corner + 1)`. Each edge is reported
/// from one of its two tiles.
pub fn vertex_cycle(
    a: TileAddress,
    corner: u8,
    flavor: TreeFlavor,
) -> Result<[(TileAddress, u8); 4]> {
    if !(1..=5).contains(&corner) {
        return Err(Error::Msg(format!("corner {corner} out of range 1..=5")));
    }
    let mut edges = [(a, 0u8); 4];
    let mut t = a;
    let mut x = corner % 5 + 1;
    edges[0] = (a, x);
    for e in edges.iter_mut().skip(1) {
        let u = neighbors_full(t, flavor)?[(x - 1) as usize];
        let entry = slot_of(u, t, flavor)? as u8 + 1;
        x = entry % 5 + 1;
        *e = (u, x);
        t = u;
    }
    let back = neighbors_full(t, flavor)?[(x - 1) as usize];
    if back != a {
        return Err(Error::Degenerate(format!(
            "vertex walk from {a} corner {corner} does not close (reached {back})"
        )));
    }
    Ok(edges)
}

/// Memoizing wrapper around [`neighbors_full`] for workloads that revisit
/// tiles many times (coloring propagation, path walking).
#[derive(Debug)]
pub struct NeighborCache {
    flavor: TreeFlavor,
    map: HashMap<TileAddress, [TileAddress; 5]>,
}

impl NeighborCache {
    pub fn new(flavor: TreeFlavor) -> Self {
        NeighborCache {
            flavor,
            map: HashMap::new(),
        }
    }

    pub fn flavor(&self) -> TreeFlavor {
        self.flavor
    }

    pub fn get(&mut self, a: TileAddress) -> Result<[TileAddress; 5]> {
        if let Some(n) = self.map.get(&a) {
            return Ok(*n);
        }
        let n = neighbors_full(a, self.flavor)?;
        self.map.insert(a, n);
        Ok(n)
    }

    pub fn slot_of(&mut self, a: TileAddress, b: TileAddress) -> Result<usize> {
        self.get(a)?
            .iter()
            .position(|&t| t == b)
            .ok_or_else(|| Error::NotAdjacent(a.to_string(), b.to_string()))
    }

    /// Cached variant of [`vertex_cycle`].
    pub fn vertex_cycle(
        &mut self,
        a: TileAddress,
        corner: u8,
    ) -> Result<[(TileAddress, u8); 4]> {
        let mut edges = [(a, 0u8); 4];
        let mut t = a;
        let mut x = corner % 5 + 1;
        edges[0] = (a, x);
        for e in edges.iter_mut().skip(1) {
            let u = self.get(t)?[(x - 1) as usize];
            let entry = self.slot_of(u, t)? as u8 + 1;
            x = entry % 5 + 1;
            *e = (u, x);
            t = u;
        }
        let back = self.get(t)?[(x - 1) as usize];
        if back != a {
            return Err(Error::Degenerate(format!(
                "vertex walk from {a} corner {corner} does not close"
            )));
        }
        Ok(edges)
    }
}

/// A neighbour slot inside a truncated ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Neighbor {
    Tile(TileAddress),
    Exterior,
}

/// The central tile plus all sector tiles through tree level `level`, with
/// the full adjacency map. Boundary slots are marked [`Neighbor::Exterior`].
#[derive(Debug, Clone)]
pub struct Ball {
    pub level: usize,
    pub flavor: TreeFlavor,
    /// Center first, then rings in (level, sector, node) order.
    pub tiles: Vec<TileAddress>,
    adjacency: HashMap<TileAddress, [Neighbor; 5]>,
}

/// Tiles of ring `k`, in counterclockwise cyclic order around the center.
pub fn ring_tiles(k: usize) -> Vec<TileAddress> {
    let mut out = Vec::new();
    for s in 1..=5u8 {
        for n in level_first(k)..=level_last(k) {
            out.push(TileAddress::Sector(s, n));
        }
    }
    out
}

impl Ball {
    pub fn build(level: usize, flavor: TreeFlavor) -> Result<Ball> {
        Ball::build_capped(level, flavor, BALL_LEVEL_CAP)
    }

    pub fn build_capped(level: usize, flavor: TreeFlavor, cap: usize) -> Result<Ball> {
        if level > cap {
            return Err(Error::LevelCap {
                requested: level,
                cap,
            });
        }
        let mut tiles = vec![TileAddress::Center];
        for k in 0..=level {
            tiles.extend(ring_tiles(k));
        }
        let mut adjacency = HashMap::with_capacity(tiles.len());
        for &t in &tiles {
            let full = neighbors_full(t, flavor)?;
            let mut slots = [Neighbor::Exterior; 5];
            for (i, &nb) in full.iter().enumerate() {
                let inside = match nb {
                    TileAddress::Center => true,
                    TileAddress::Sector(_, m) => node_level(m) <= level,
                };
                slots[i] = if inside {
                    Neighbor::Tile(nb)
                } else {
                    Neighbor::Exterior
                };
            }
            adjacency.insert(t, slots);
        }
        Ok(Ball {
            level,
            flavor,
            tiles,
            adjacency,
        })
    }

    pub fn contains(&self, a: TileAddress) -> bool {
        self.adjacency.contains_key(&a)
    }

    pub fn neighbors(&self, a: TileAddress) -> Option<&[Neighbor; 5]> {
        self.adjacency.get(&a)
    }

    pub fn tile_count(&self) -> usize {
        self.tiles.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn address_text_roundtrip() {
        assert_eq!("C".parse::<TileAddress>().unwrap(), TileAddress::Center);
        assert_eq!(
            "3:17".parse::<TileAddress>().unwrap(),
            TileAddress::Sector(3, 17)
        );
        assert_eq!(TileAddress::Sector(3, 17).to_string(), "3:17");
        assert!("6:1".parse::<TileAddress>().is_err());
        assert!("2:0".parse::<TileAddress>().is_err());
        assert!("blah".parse::<TileAddress>().is_err());
    }

    #[test]
    fn center_neighbors_are_roots() {
        let got = neighbors_full(TileAddress::Center, TreeFlavor::Standard).unwrap();
        let want: Vec<TileAddress> = (1..=5).map(|s| TileAddress::Sector(s, 1)).collect();
        assert_eq!(got.to_vec(), want);
    }

    #[test]
    fn root_has_center_in_father_slot() {
        let got = neighbors_full(TileAddress::Sector(1, 1), TreeFlavor::Standard).unwrap();
        assert_eq!(got[0], TileAddress::Center);
        assert_eq!(
            got,
            [
                TileAddress::Center,
                TileAddress::Sector(1, 2),
                TileAddress::Sector(1, 3),
                TileAddress::Sector(1, 4),
                TileAddress::Sector(2, 2),
            ]
        );
    }

    #[test]
    fn border_slots_resolve_across_sectors() {
        // Leftmost node of level 1 touches the previous sector's root.
        let got = neighbors_full(TileAddress::Sector(1, 2), TreeFlavor::Standard).unwrap();
        assert_eq!(
            got,
            [
                TileAddress::Sector(1, 1),
                TileAddress::Sector(5, 1),
                TileAddress::Sector(1, 5),
                TileAddress::Sector(1, 6),
                TileAddress::Sector(1, 7),
            ]
        );
        // Leftmost of level 2 touches the previous sector's rightmost of level 1.
        let got = neighbors_full(TileAddress::Sector(2, 5), TreeFlavor::Standard).unwrap();
        assert_eq!(got[1], TileAddress::Sector(1, 4));
        // Rightmost of level 1 touches the next sector's leftmost of level 2.
        let got = neighbors_full(TileAddress::Sector(1, 4), TreeFlavor::Standard).unwrap();
        assert_eq!(got[4], TileAddress::Sector(2, 5));
    }

    #[test]
    fn reciprocity_over_ball8() {
        let ball = Ball::build(8, TreeFlavor::Standard).unwrap();
        for &a in &ball.tiles {
            for &b in neighbors_full(a, TreeFlavor::Standard).unwrap().iter() {
                let back = neighbors_full(b, TreeFlavor::Standard).unwrap();
                assert!(
                    back.contains(&a),
                    "{b} in N({a}) but {a} not in N({b}) = {back:?}"
                );
            }
        }
    }

    #[test]
    fn ball_sizes() {
        for (lvl, want) in [(0usize, 6usize), (1, 21), (2, 61)] {
            let ball = Ball::build(lvl, TreeFlavor::Standard).unwrap();
            assert_eq!(ball.tile_count(), want, "ball({lvl})");
        }
        assert!(Ball::build(BALL_LEVEL_CAP + 1, TreeFlavor::Standard).is_err());
    }

    #[test]
    fn ball_interior_degree_and_symmetry() {
        let ball = Ball::build(4, TreeFlavor::Standard).unwrap();
        for &t in &ball.tiles {
            let slots = ball.neighbors(t).unwrap();
            let lvl = t.level();
            if lvl.map_or(true, |k| k < ball.level) {
                assert!(
                    slots.iter().all(|s| matches!(s, Neighbor::Tile(_))),
                    "interior tile {t} has an exterior slot"
                );
            }
            for s in slots {
                if let Neighbor::Tile(u) = s {
                    let back = ball.neighbors(*u).unwrap();
                    assert!(back.iter().any(|x| matches!(x, Neighbor::Tile(v) if *v == t)));
                }
            }
        }
    }

    #[test]
    fn vertex_walk_closes_everywhere() {
        let ball = Ball::build(5, TreeFlavor::Standard).unwrap();
        for &t in &ball.tiles {
            for corner in 1..=5u8 {
                let edges = vertex_cycle(t, corner, TreeFlavor::Standard).unwrap();
                assert_eq!(edges[0].0, t);
            }
        }
    }

    #[test]
    fn four_distinct_tiles_around_each_vertex() {
        for &t in &Ball::build(4, TreeFlavor::Standard).unwrap().tiles {
            for corner in 1..=5u8 {
                let edges = vertex_cycle(t, corner, TreeFlavor::Standard).unwrap();
                let mut tiles: Vec<TileAddress> = edges.iter().map(|e| e.0).collect();
                tiles.sort();
                tiles.dedup();
                assert_eq!(tiles.len(), 4, "vertex of {t} corner {corner}: {edges:?}");
            }
        }
    }

    #[test]
    fn best_cycle_is_rotation_of_standard_cycle() {
        let ball = Ball::build(6, TreeFlavor::Standard).unwrap();
        for &t in &ball.tiles {
            let std = neighbors_full(t, TreeFlavor::Standard).unwrap();
            let best = neighbors_full(t, TreeFlavor::Best).unwrap();
            let mut matched = false;
            for r in 0..5 {
                if (0..5).all(|i| std[(i + r) % 5] == best[i]) {
                    matched = true;
                    break;
                }
            }
            assert!(matched, "{t}: best {best:?} is not a rotation of standard {std:?}");
        }
    }

    #[test]
    fn best_father_is_first_slot() {
        use num_bigint::BigUint;
        let ball = Ball::build(6, TreeFlavor::Best).unwrap();
        for &t in &ball.tiles {
            if let TileAddress::Sector(s, n) = t {
                let full = neighbors_full(t, TreeFlavor::Best).unwrap();
                let f = fibtree::father(&BigUint::from(n), TreeFlavor::Best)
                    .unwrap()
                    .map(|b| b.to_u64().unwrap());
                let want = match f {
                    None => TileAddress::Center,
                    Some(fa) => TileAddress::Sector(s, fa),
                };
                assert_eq!(full[0], want, "father slot of {t}");
            }
        }
    }

    #[test]
    fn node_level_agrees_with_fibtree() {
        for n in 1u64..2000 {
            assert_eq!(
                node_level(n),
                fibtree::level(&BigUint::from(n)).unwrap(),
                "level({n})"
            );
        }
    }
}
