//! The constructive four-coloring of pentagon sides.
//!
//! Interpreting each of four colors `a, b, c, d` as an involutive generator,
//! the pentagrid is the Cayley graph of the abstract group they generate
//! exactly when the sides of all pentagons can be colored so that
//!
//! * a side shared by two pentagons carries one color,
//! * the four sides abutting any vertex carry all four colors, and
//! * every tile is an α-tile: its contour word, read counterclockwise, is a
//!   rotation of `d β γ β γ` with `{β, γ}` a pair from `{a, b, c}`.
//!
//! [`extend_coloring`] builds such a coloring ring by ring from the fixed
//! seed around the central tile, choosing the lexicographically smallest
//! admissible contour word at every step and backtracking if a choice dries
//! up downstream. [`verify_coloring`] is the contract: it checks the three
//! conditions above on the finished ball.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::fibtree::{self, NodeKind, TreeFlavor};
use crate::grid::{ring_tiles, Ball, NeighborCache, TileAddress};
use crate::{Error, Result};

/// One of the four side colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Color {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "c")]
    C,
    #[serde(rename = "d")]
    D,
}

impl Color {
    pub const ALL: [Color; 4] = [Color::A, Color::B, Color::C, Color::D];

    pub fn letter(self) -> char {
        match self {
            Color::A => 'a',
            Color::B => 'b',
            Color::C => 'c',
            Color::D => 'd',
        }
    }

    pub fn from_letter(ch: char) -> Result<Color> {
        match ch {
            'a' => Ok(Color::A),
            'b' => Ok(Color::B),
            'c' => Ok(Color::C),
            'd' => Ok(Color::D),
            _ => Err(Error::Msg(format!("unknown color '{ch}'"))),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Color::A => 0,
            Color::B => 1,
            Color::C => 2,
            Color::D => 3,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// The five side colors of a tile, side 1 (facing the father) first,
/// counterclockwise.
pub type ColorPattern = [Color; 5];

/// Black marks 2-nodes, white 3-nodes (standard-tree status).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shade {
    White,
    Black,
}

/// Type (position of `d`) and shade of a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeTypeTag {
    /// Position of the `d` side, 1..=5 from the father side.
    pub d_position: u8,
    pub shade: Shade,
}

/// Position of the unique `d` side of an α-tile pattern.
pub fn node_type(p: &ColorPattern) -> Result<u8> {
    let ds: Vec<usize> = (0..5).filter(|&i| p[i] == Color::D).collect();
    match ds.as_slice() {
        [i] => Ok(*i as u8 + 1),
        _ => Err(Error::Msg(format!(
            "pattern has {} d sides, expected exactly one",
            ds.len()
        ))),
    }
}

/// True iff the word is a rotation of `d β γ β γ` with `β ≠ γ` in `{a,b,c}`.
pub fn is_alpha_tile(p: &ColorPattern) -> bool {
    candidate_words().contains(p)
}

/// All 30 admissible contour words, lexicographically sorted.
fn candidate_words() -> &'static Vec<ColorPattern> {
    use std::sync::OnceLock;
    static WORDS: OnceLock<Vec<ColorPattern>> = OnceLock::new();
    WORDS.get_or_init(|| {
        let abc = [Color::A, Color::B, Color::C];
        let mut words = Vec::new();
        for beta in abc {
            for gamma in abc {
                if beta == gamma {
                    continue;
                }
                let base = [Color::D, beta, gamma, beta, gamma];
                for r in 0..5 {
                    let w: ColorPattern = std::array::from_fn(|i| base[(i + r) % 5]);
                    words.push(w);
                }
            }
        }
        words.sort();
        words.dedup();
        words
    })
}

/// A side coloring of all tiles of a ball.
#[derive(Debug, Clone)]
pub struct Coloring {
    pub level: usize,
    words: HashMap<TileAddress, ColorPattern>,
}

impl Coloring {
    pub fn word(&self, t: TileAddress) -> Option<&ColorPattern> {
        self.words.get(&t)
    }

    pub fn tiles(&self) -> impl Iterator<Item = (&TileAddress, &ColorPattern)> {
        self.words.iter()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn set_word(&mut self, t: TileAddress, w: ColorPattern) {
        self.words.insert(t, w);
    }

    /// Type and shade of a colored node (shade from the standard tree).
    pub fn type_tag(&self, t: TileAddress) -> Result<NodeTypeTag> {
        let w = self
            .words
            .get(&t)
            .ok_or_else(|| Error::UnknownTile(t.to_string()))?;
        let d_position = node_type(w)?;
        let shade = match t {
            TileAddress::Center => Shade::White,
            TileAddress::Sector(_, n) => {
                match fibtree::status(&BigUint::from(n), TreeFlavor::Standard)? {
                    NodeKind::Two => Shade::Black,
                    NodeKind::Three => Shade::White,
                }
            }
        };
        Ok(NodeTypeTag { d_position, shade })
    }
}

/// Serialized form: one entry per tile.
#[derive(Debug, Serialize, Deserialize)]
pub struct ColoringEntry {
    pub tile: String,
    pub sides: [String; 5],
}

impl Coloring {
    pub fn to_entries(&self) -> Vec<ColoringEntry> {
        let mut tiles: Vec<&TileAddress> = self.words.keys().collect();
        tiles.sort();
        tiles
            .into_iter()
            .map(|t| ColoringEntry {
                tile: t.to_string(),
                sides: std::array::from_fn(|i| self.words[t][i].to_string()),
            })
            .collect()
    }
}

/// The fixed coloring of the central tile and the five sector roots.
///
/// The center is a c-tile `(d, a, b, a, b)`; counterclockwise, the roots
/// read `(d,a,b,a,b)`, `(a,c,a,c,d)`, `(b,c,b,c,d)`, `(a,c,a,c,d)` and
/// `(b,c,b,d,c)`, each word starting at the side shared with the center.
/// Their types come out 1, 5, 5, 5, 4.
pub fn initial_coloring() -> Coloring {
    use Color::{A, B, C, D};
    let mut words = HashMap::new();
    words.insert(TileAddress::Center, [D, A, B, A, B]);
    words.insert(TileAddress::Sector(1, 1), [D, A, B, A, B]);
    words.insert(TileAddress::Sector(2, 1), [A, C, A, C, D]);
    words.insert(TileAddress::Sector(3, 1), [B, C, B, C, D]);
    words.insert(TileAddress::Sector(4, 1), [A, C, A, C, D]);
    words.insert(TileAddress::Sector(5, 1), [B, C, B, D, C]);
    Coloring { level: 0, words }
}

/// One side constraint or vertex co-constraint for a candidate word.
enum ColorRef {
    Fixed(Color),
    MySide(usize),
}

/// Extends the seed coloring ring by ring through tree level `level`,
/// choosing the lexicographically smallest admissible word per tile.
///
/// The search assigns tiles in breadth-first address order and resolves dead
/// ends with conflict-directed backjumping: an exhausted tile jumps straight
/// to the deepest assigned tile its constraints actually referenced, so a
/// bad choice buried rings earlier is revised without enumerating everything
/// in between.
pub fn extend_coloring(level: usize) -> Result<Coloring> {
    let ball = Ball::build(level, TreeFlavor::Standard)?;
    let mut cache = NeighborCache::new(TreeFlavor::Standard);
    let seed = initial_coloring();
    let mut words = seed.words.clone();

    let order: Vec<TileAddress> = ball
        .tiles
        .iter()
        .copied()
        .filter(|t| !words.contains_key(t))
        .collect();
    let index_of: HashMap<TileAddress, usize> =
        order.iter().enumerate().map(|(i, &t)| (t, i)).collect();

    struct Frame {
        tile: TileAddress,
        candidates: Vec<ColorPattern>,
        next: usize,
        /// Assigned tiles (by order index) the candidate filter read.
        sources: BTreeSet<usize>,
        /// Conflicts inherited from failed subtrees below this frame.
        accum: BTreeSet<usize>,
    }

    // Pre-resolved constraints for one tile, against the current partial
    // coloring: equality on sides facing already-colored tiles, and
    // distinctness groups at each corner.
    let frame_for = |tile: TileAddress,
                     words: &HashMap<TileAddress, ColorPattern>,
                     cache: &mut NeighborCache|
     -> Result<Frame> {
        let nbrs = cache.get(tile)?;
        let mut sources = BTreeSet::new();
        let mut note = |t: TileAddress, sources: &mut BTreeSet<usize>| {
            if let Some(&i) = index_of.get(&t) {
                sources.insert(i);
            }
        };
        let mut required: [Option<Color>; 5] = [None; 5];
        for (i, &u) in nbrs.iter().enumerate() {
            if let Some(w) = words.get(&u) {
                let back = cache.slot_of(u, tile)?;
                required[i] = Some(w[back]);
                note(u, &mut sources);
            }
        }
        let mut corners: Vec<Vec<ColorRef>> = Vec::with_capacity(5);
        for corner in 1..=5u8 {
            let edges = cache.vertex_cycle(tile, corner)?;
            let mut refs = Vec::with_capacity(4);
            for &(t, s) in &edges {
                if t == tile {
                    refs.push(ColorRef::MySide((s - 1) as usize));
                } else if let Some(w) = words.get(&t) {
                    refs.push(ColorRef::Fixed(w[(s - 1) as usize]));
                    note(t, &mut sources);
                } else {
                    // The walk reports the edge from tile t's side; t is not
                    // colored, but the tile on the other side of the same
                    // edge may be.
                    let other = cache.get(t)?[(s - 1) as usize];
                    if other == tile {
                        refs.push(ColorRef::MySide(cache.slot_of(tile, t)?));
                    } else if let Some(w) = words.get(&other) {
                        let back = cache.slot_of(other, t)?;
                        refs.push(ColorRef::Fixed(w[back]));
                        note(other, &mut sources);
                    }
                }
            }
            corners.push(refs);
        }
        let candidates = candidate_words()
            .iter()
            .filter(|w| {
                for (i, req) in required.iter().enumerate() {
                    if let Some(c) = req {
                        if w[i] != *c {
                            return false;
                        }
                    }
                }
                for refs in &corners {
                    let mut seen = [false; 4];
                    for r in refs {
                        let c = match r {
                            ColorRef::Fixed(c) => *c,
                            ColorRef::MySide(i) => w[*i],
                        };
                        if seen[c.index()] {
                            return false;
                        }
                        seen[c.index()] = true;
                    }
                }
                true
            })
            .copied()
            .collect();
        Ok(Frame {
            tile,
            candidates,
            next: 0,
            sources,
            accum: BTreeSet::new(),
        })
    };

    if order.is_empty() {
        return Ok(Coloring { level, words });
    }
    let trace = std::env::var_os("PENTAGRID_TRACE").is_some();
    let mut steps: u64 = 0;
    let mut stack: Vec<Frame> = Vec::with_capacity(order.len());
    stack.push(frame_for(order[0], &words, &mut cache)?);
    loop {
        let depth = stack.len();
        let Some(frame) = stack.last_mut() else {
            break;
        };
        steps += 1;
        if trace && steps % 100_000 == 0 {
            eprintln!("cayley cbj: steps={steps} depth={depth}/{}", order.len());
        }
        if frame.next < frame.candidates.len() {
            let w = frame.candidates[frame.next];
            frame.next += 1;
            words.insert(frame.tile, w);
            if stack.len() == order.len() {
                return Ok(Coloring { level, words });
            }
            let idx = stack.len();
            let next = frame_for(order[idx], &words, &mut cache)?;
            stack.push(next);
        } else {
            // Exhausted: jump to the deepest tile this failure depends on.
            let mut blame: BTreeSet<usize> = frame.sources.union(&frame.accum).copied().collect();
            let failed_tile = frame.tile;
            let Some(&jump_to) = blame.iter().max() else {
                return Err(Error::DeadEnd(failed_tile.to_string()));
            };
            blame.remove(&jump_to);
            while stack.len() > jump_to + 1 {
                let f = stack.pop().expect("nonempty");
                words.remove(&f.tile);
            }
            let jf = stack.last_mut().expect("jump target on stack");
            jf.accum.extend(blame);
        }
    }
    Err(Error::DeadEnd(order[0].to_string()))
}

/// A vertex whose known side colors repeat (equivalently, for a vertex
/// interior to the coloring, one that misses a color).
#[derive(Debug, Clone)]
pub struct VertexDefect {
    pub edges: Vec<(TileAddress, u8)>,
    pub colors: Vec<Color>,
}

/// Findings of [`verify_coloring`]; the coloring is valid iff all three
/// lists are empty.
#[derive(Debug, Default)]
pub struct VerifyReport {
    pub side_mismatches: Vec<(TileAddress, TileAddress)>,
    pub vertex_defects: Vec<VertexDefect>,
    pub contour_defects: Vec<TileAddress>,
}

impl VerifyReport {
    pub fn is_clean(&self) -> bool {
        self.side_mismatches.is_empty()
            && self.vertex_defects.is_empty()
            && self.contour_defects.is_empty()
    }
}

/// Checks side consistency, the all-colors-at-every-vertex condition, and
/// the α-tile contour condition over the coloring's domain.
pub fn verify_coloring(coloring: &Coloring) -> Result<VerifyReport> {
    let mut cache = NeighborCache::new(TreeFlavor::Standard);
    let mut report = VerifyReport::default();

    for (&t, w) in coloring.words.iter() {
        if !is_alpha_tile(w) {
            report.contour_defects.push(t);
        }
        let nbrs = cache.get(t)?;
        for (i, &u) in nbrs.iter().enumerate() {
            if u < t {
                continue; // each pair once
            }
            if let Some(wu) = coloring.words.get(&u) {
                let back = cache.slot_of(u, t)?;
                if w[i] != wu[back] {
                    report.side_mismatches.push((t, u));
                }
            }
        }
    }

    let mut seen_vertices: BTreeSet<Vec<(TileAddress, u8)>> = BTreeSet::new();
    for &t in coloring.words.keys() {
        for corner in 1..=5u8 {
            let edges = cache.vertex_cycle(t, corner)?;
            let mut key: Vec<(TileAddress, u8)> = edges.to_vec();
            key.sort();
            if !seen_vertices.insert(key) {
                continue;
            }
            let mut known: Vec<(TileAddress, u8, Color)> = Vec::new();
            for &(u, s) in &edges {
                if let Some(w) = coloring.words.get(&u) {
                    known.push((u, s, w[(s - 1) as usize]));
                } else {
                    // The edge may still be colored from its other tile.
                    let other = cache.get(u)?[(s - 1) as usize];
                    if let Some(w) = coloring.words.get(&other) {
                        let back = cache.slot_of(other, u)?;
                        known.push((u, s, w[back]));
                    }
                }
            }
            let mut colors: Vec<Color> = known.iter().map(|k| k.2).collect();
            colors.sort();
            let distinct = {
                let mut c = colors.clone();
                c.dedup();
                c.len() == colors.len()
            };
            if !distinct {
                report.vertex_defects.push(VertexDefect {
                    edges: known.iter().map(|k| (k.0, k.1)).collect(),
                    colors,
                });
            }
        }
    }
    report.contour_defects.sort();
    Ok(report)
}

// ---------------------------------------------------------------------------
// The pattern table: types of the sons of nodes with given types.
// ---------------------------------------------------------------------------

/// One row of the son-type pattern table. The pattern is a short window of
/// consecutive same-level node types (shade-annotated); `successors` lists
/// the rows the window raises on the next level.
#[derive(Debug, Clone, Copy)]
pub struct AssortRow {
    pub id: u8,
    pub pattern: &'static [(u8, Shade)],
    pub successors: &'static [u8],
}

use Shade::{Black as Bk, White as Wh};

/// The fifteen reference patterns (rows 9 and 13 are textually identical in
/// the source table; the duplication is kept).
pub const TIL_ASSORT: [AssortRow; 15] = [
    AssortRow { id: 1, pattern: &[(5, Wh), (5, Wh)], successors: &[6] },
    AssortRow { id: 2, pattern: &[(5, Wh), (5, Bk)], successors: &[6] },
    AssortRow { id: 3, pattern: &[(5, Bk), (5, Wh)], successors: &[6] },
    AssortRow { id: 4, pattern: &[(5, Wh), (4, Wh)], successors: &[8] },
    AssortRow { id: 5, pattern: &[(4, Wh), (1, Wh), (5, Wh)], successors: &[9, 13] },
    AssortRow { id: 6, pattern: &[(2, Wh), (2, Wh), (2, Bk)], successors: &[12] },
    AssortRow { id: 7, pattern: &[(2, Bk), (2, Wh), (1, Wh)], successors: &[] },
    AssortRow { id: 8, pattern: &[(2, Wh), (1, Wh), (5, Bk)], successors: &[11] },
    AssortRow { id: 9, pattern: &[(5, Wh), (4, Bk), (2, Wh)], successors: &[10, 14] },
    AssortRow { id: 10, pattern: &[(2, Bk), (1, Wh), (1, Bk)], successors: &[] },
    AssortRow { id: 11, pattern: &[(5, Bk), (4, Wh), (2, Bk)], successors: &[7] },
    AssortRow { id: 12, pattern: &[(5, Wh), (1, Bk), (5, Wh)], successors: &[15] },
    AssortRow { id: 13, pattern: &[(5, Wh), (4, Bk), (2, Wh)], successors: &[10, 14] },
    AssortRow { id: 14, pattern: &[(1, Wh), (1, Bk), (5, Wh)], successors: &[13] },
    AssortRow { id: 15, pattern: &[(2, Wh), (3, Bk), (2, Wh)], successors: &[12] },
];

/// Observed configuration patterns of a coloring: the cyclic sequence of
/// (type, shade) pairs along every ring, reduced to adjacent pairs. A pair
/// is covered when it occurs as a contiguous subword of a table row.
#[derive(Debug, Default)]
pub struct PatternReport {
    /// Distinct adjacent pairs observed, with multiplicity.
    pub pairs: Vec<(((u8, Shade), (u8, Shade)), usize)>,
    /// Observed pairs no table row contains.
    pub uncovered: Vec<((u8, Shade), (u8, Shade))>,
    /// Rows that cover at least one observed pair.
    pub matched_rows: BTreeSet<u8>,
}

fn row_covers(row: &AssortRow, a: (u8, Shade), b: (u8, Shade)) -> bool {
    row.pattern.windows(2).any(|w| w[0] == a && w[1] == b)
}

/// Extracts the ring sequences of a coloring and checks every cyclic
/// adjacent pair against the table rows.
pub fn observed_patterns(coloring: &Coloring) -> Result<PatternReport> {
    let mut counts: HashMap<((u8, Shade), (u8, Shade)), usize> = HashMap::new();
    for k in 0..=coloring.level {
        let ring = ring_tiles(k);
        let tags: Vec<(u8, Shade)> = ring
            .iter()
            .map(|&t| coloring.type_tag(t).map(|tag| (tag.d_position, tag.shade)))
            .collect::<Result<_>>()?;
        for i in 0..tags.len() {
            let a = tags[i];
            let b = tags[(i + 1) % tags.len()];
            *counts.entry((a, b)).or_insert(0) += 1;
        }
    }
    let mut report = PatternReport::default();
    for (&pair, &count) in counts.iter() {
        report.pairs.push((pair, count));
        let mut covered = false;
        for row in TIL_ASSORT.iter() {
            if row_covers(row, pair.0, pair.1) {
                report.matched_rows.insert(row.id);
                covered = true;
            }
        }
        if !covered {
            report.uncovered.push(pair);
        }
    }
    report.pairs.sort();
    report.uncovered.sort();
    Ok(report)
}
