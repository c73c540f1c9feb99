//! Tilings of the pentagrid by a single pentagon with colored sides.
//!
//! The tile carries an assortment of at most five colors `1..=5` on its five
//! sides, considered up to circular permutation; copies may only be placed
//! by displacements, so every placed tile shows the same cyclic contour word
//! up to rotation and mirror images never occur. Two tiles may share a side
//! only if both label it with the same color.
//!
//! [`enumerate`] counts the labelings of a ball at a given depth with all
//! interior shared sides matched and boundary sides unconstrained — a finite
//! proxy that distinguishes the no-solution, finitely-many and continuum
//! rows of the reference table. Counting walks the five sector trees with a
//! dynamic program over flank interfaces; [`enumerate_backtracking`] is the
//! independent plain search the DP is checked against.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::fibtree::TreeFlavor;
use crate::grid::{Ball, NeighborCache, TileAddress};
use crate::{Error, Result};

/// Default cap on enumeration depth.
pub const DEPTH_CAP: usize = 6;

/// Five side colors up to circular permutation; canonical form is the
/// lexicographically least rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Assortment {
    word: [u8; 5],
}

impl Assortment {
    pub fn new(word: [u8; 5]) -> Result<Self> {
        if word.iter().any(|&c| !(1..=5).contains(&c)) {
            return Err(Error::BadAssortment(format!("{word:?}")));
        }
        let mut best = word;
        for r in 1..5 {
            let rot: [u8; 5] = std::array::from_fn(|i| word[(i + r) % 5]);
            if rot < best {
                best = rot;
            }
        }
        Ok(Assortment { word: best })
    }

    pub fn word(&self) -> [u8; 5] {
        self.word
    }

    /// The distinct rotations of the word: the placement choices of a tile.
    pub fn rotations(&self) -> Vec<[u8; 5]> {
        let mut out: Vec<[u8; 5]> = (0..5)
            .map(|r| std::array::from_fn(|i| self.word[(i + r) % 5]))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for Assortment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.word {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Assortment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits: Vec<u8> = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::BadAssortment(s.to_string()))
            })
            .collect::<Result<_>>()?;
        let word: [u8; 5] = digits
            .try_into()
            .map_err(|_| Error::BadAssortment(s.to_string()))?;
        Assortment::new(word)
    }
}

/// Verdict of [`classify_assortment`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnumerationOutcome {
    /// The count reached zero at the recorded depth.
    NoSolution { depth: usize },
    /// The count stabilized over the last two depths.
    Finite { count: BigUint, depth_stable: usize },
    /// Strictly increasing counts over the last three depths.
    Growing { counts: Vec<BigUint> },
    /// Not enough depths to decide; the trace is attached.
    Inconclusive { counts: Vec<BigUint> },
}

impl EnumerationOutcome {
    pub fn name(&self) -> &'static str {
        match self {
            EnumerationOutcome::NoSolution { .. } => "no_solution",
            EnumerationOutcome::Finite { .. } => "finite",
            EnumerationOutcome::Growing { .. } => "growing",
            EnumerationOutcome::Inconclusive { .. } => "inconclusive",
        }
    }
}

// ---------------------------------------------------------------------------
// Interface dynamic program over the sector trees.
//
// Inside a sector, a subtree rooted at level l interacts with the rest of
// the ball only through: the father side of its root; for 2-nodes the uncle
// side; one left-flank side per level below the root (the slot-2 side of
// the leftmost descendant, facing the previous subtree's rightmost branch);
// and one right-flank side per level from the root down (the slot-5 nephew
// side of the rightmost descendant). First sons are always 2-nodes under
// the standard rules, so the interface layout is uniform.
// ---------------------------------------------------------------------------

type Count = BigUint;
type FlankMap = HashMap<Vec<u8>, Count>;

struct Dp<'a> {
    rotations: &'a [[u8; 5]],
    /// Count each deepest-ring tile once if it admits any rotation, rather
    /// than once per rotation. Turns the ball(d+1) count into the number of
    /// ball(d) assignments extendable one more ring (the deepest ring's
    /// tiles are pairwise independent given everything above them).
    clamp_leaves: bool,
    /// (status2?, remaining levels, father label, left interface) -> map
    /// from right interface to count.
    memo: HashMap<(bool, usize, u8, Vec<u8>), FlankMap>,
}

impl<'a> Dp<'a> {
    fn new(rotations: &'a [[u8; 5]], clamp_leaves: bool) -> Self {
        Dp {
            rotations,
            clamp_leaves,
            memo: HashMap::new(),
        }
    }

    /// Count of labelings of a subtree whose root has the given status and
    /// `rem` materialized levels below it, whose father-facing side must
    /// read `father`, against the given left interface: for a 2-node the
    /// uncle-facing label followed by the flank labels for each deeper
    /// level, for a 3-node the flank labels only.
    fn subtree(&mut self, two: bool, rem: usize, father: u8, left: &[u8]) -> FlankMap {
        let key = (two, rem, father, left.to_vec());
        if let Some(m) = self.memo.get(&key) {
            return m.clone();
        }
        let mut out = FlankMap::new();
        for w in self.rotations {
            if w[0] != father {
                continue;
            }
            if two && w[1] != left[0] {
                continue;
            }
            if rem == 0 {
                let slot = out.entry(Vec::new()).or_insert_with(Count::zero);
                if !self.clamp_leaves || slot.is_zero() {
                    *slot += Count::one();
                }
                continue;
            }
            let flanks: &[u8] = if two { &left[1..] } else { left };
            // First son is a 2-node whose own uncle side faces the flank of
            // this level; its deeper flanks are ours.
            let (son_slots, son_two): (&[usize], &[bool]) = if two {
                (&[2, 3], &[true, false])
            } else {
                (&[1, 2, 3], &[true, false, false])
            };
            let mut acc: Option<FlankMap> = None;
            for (i, (&slot, &s2)) in son_slots.iter().zip(son_two).enumerate() {
                let phi = w[slot];
                if i == 0 {
                    debug_assert!(s2);
                    acc = Some(self.subtree(true, rem - 1, phi, flanks));
                } else {
                    let prev = acc.take().expect("chained");
                    let mut next = FlankMap::new();
                    for (r_prev, c_prev) in prev {
                        let m = self.subtree(false, rem - 1, phi, &r_prev);
                        for (r, c) in m {
                            *next.entry(r).or_insert_with(Count::zero) += &c_prev * c;
                        }
                    }
                    acc = Some(next);
                }
            }
            for (r_last, c) in acc.expect("at least one son") {
                let mut right = Vec::with_capacity(rem);
                right.push(w[4]);
                right.extend_from_slice(&r_last);
                *out.entry(right).or_insert_with(Count::zero) += c;
            }
        }
        self.memo.insert(key, out.clone());
        out
    }
}

/// Counts the labelings of `ball(depth)` by rotations of the assortment
/// with every interior shared side matched; boundary sides are free.
pub fn enumerate(a: &Assortment, depth: usize) -> Result<BigUint> {
    enumerate_capped(a, depth, DEPTH_CAP)
}

pub fn enumerate_capped(a: &Assortment, depth: usize, cap: usize) -> Result<BigUint> {
    run_dp(a, depth, cap, false)
}

/// Counts the ball(`depth`) assignments that extend to a valid assignment of
/// ball(`depth + 1`). Unlike the raw [`enumerate`] count, this filters out
/// boundary configurations that die one ring further, which is what lets the
/// finitely-tileable assortments stabilize at their true solution counts.
pub fn enumerate_extendable(a: &Assortment, depth: usize) -> Result<BigUint> {
    run_dp(a, depth + 1, DEPTH_CAP, true)
}

fn run_dp(a: &Assortment, depth: usize, cap: usize, clamp_leaves: bool) -> Result<BigUint> {
    if depth > cap {
        return Err(Error::LevelCap {
            requested: depth,
            cap,
        });
    }
    let rotations = a.rotations();
    let mut dp = Dp::new(&rotations, clamp_leaves);
    let mut total = Count::zero();
    for wc in &rotations {
        if depth == 0 {
            let mut prod = Count::one();
            for s in 0..5 {
                let m = dp.subtree(false, 0, wc[s], &[]);
                let c = m.get(&Vec::new()).cloned().unwrap_or_else(Count::zero);
                prod *= c;
            }
            total += prod;
            continue;
        }
        // The cyclic seam closure is a fold over the five sectors tracking
        // (sector 1's left interface, current right interface); at the end
        // sector 5's right interface must equal what sector 1 assumed.
        let mut state: HashMap<(Vec<u8>, Vec<u8>), Count> = HashMap::new();
        for r0 in all_vectors(depth) {
            let m = dp.subtree(false, depth, wc[0], &r0);
            for (r1, c) in m {
                *state
                    .entry((r0.clone(), r1))
                    .or_insert_with(Count::zero) += c;
            }
        }
        for s in 1..5 {
            let mut next: HashMap<(Vec<u8>, Vec<u8>), Count> = HashMap::new();
            for ((r0, r_cur), c0) in state {
                let m = dp.subtree(false, depth, wc[s], &r_cur);
                for (r, c) in m {
                    *next.entry((r0.clone(), r)).or_insert_with(Count::zero) += &c0 * c;
                }
            }
            state = next;
        }
        for ((r0, r5), c) in state {
            if r0 == r5 {
                total += c;
            }
        }
    }
    Ok(total)
}


fn all_vectors(len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * 5);
        for v in &out {
            for c in 1..=5u8 {
                let mut w = v.clone();
                w.push(c);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Plain backtracking count over the ball, tiles in breadth-first address
/// order, rotations tried in increasing order. Exponential in the number of
/// solutions; used as the oracle for the dynamic program.
pub fn enumerate_backtracking(a: &Assortment, depth: usize) -> Result<BigUint> {
    let ball = Ball::build(depth, TreeFlavor::Standard)?;
    let mut cache = NeighborCache::new(TreeFlavor::Standard);
    let rotations = a.rotations();
    let tiles = ball.tiles.clone();
    // Precompute constraints: for tile i, the list of (slot, earlier tile
    // index, its slot) pairs to check.
    let index: HashMap<TileAddress, usize> =
        tiles.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let mut checks: Vec<Vec<(usize, usize, usize)>> = Vec::with_capacity(tiles.len());
    for (i, &t) in tiles.iter().enumerate() {
        let mut list = Vec::new();
        for (slot, &u) in cache.get(t)?.iter().enumerate() {
            if let Some(&j) = index.get(&u) {
                if j < i {
                    let back = cache.slot_of(u, t)?;
                    list.push((slot, j, back));
                }
            }
        }
        checks.push(list);
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(tiles.len());
    let mut count = Count::zero();
    fn rec(
        idx: usize,
        tiles_len: usize,
        rotations: &[[u8; 5]],
        checks: &[Vec<(usize, usize, usize)>],
        chosen: &mut Vec<usize>,
        count: &mut Count,
    ) {
        if idx == tiles_len {
            *count += Count::one();
            return;
        }
        'next: for (r, w) in rotations.iter().enumerate() {
            for &(slot, j, back) in &checks[idx] {
                if w[slot] != rotations[chosen[j]][back] {
                    continue 'next;
                }
            }
            chosen.push(r);
            rec(idx + 1, tiles_len, rotations, checks, chosen, count);
            chosen.pop();
        }
    }
    rec(0, tiles.len(), &rotations, &checks, &mut chosen, &mut count);
    Ok(count)
}

/// Runs [`enumerate_extendable`] for depths `0..=max_depth` and reads off
/// the verdict: zero count means no solution, equal counts on the last two
/// depths mean finitely many, strictly increasing counts over the last three
/// depths are the growth signature of the continuum rows.
pub fn classify_assortment(a: &Assortment, max_depth: usize) -> Result<(Vec<BigUint>, EnumerationOutcome)> {
    let mut counts = Vec::with_capacity(max_depth + 1);
    for d in 0..=max_depth {
        let c = enumerate_extendable(a, d)?;
        let zero = c.is_zero();
        counts.push(c);
        if zero {
            return Ok((
                counts,
                EnumerationOutcome::NoSolution { depth: d },
            ));
        }
    }
    let n = counts.len();
    if n >= 2 && counts[n - 1] == counts[n - 2] {
        return Ok((
            counts.clone(),
            EnumerationOutcome::Finite {
                count: counts[n - 1].clone(),
                depth_stable: n - 2,
            },
        ));
    }
    if n >= 3 && counts[n - 3] < counts[n - 2] && counts[n - 2] < counts[n - 1] {
        return Ok((
            counts.clone(),
            EnumerationOutcome::Growing {
                counts: counts.clone(),
            },
        ));
    }
    Ok((
        counts.clone(),
        EnumerationOutcome::Inconclusive {
            counts: counts.clone(),
        },
    ))
}
