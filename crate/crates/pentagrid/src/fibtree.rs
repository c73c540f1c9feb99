//! Sector-level Fibonacci tree navigation.
//!
//! A quarter of the pentagrid is spanned by an infinite tree whose nodes are
//! 2-nodes (two sons) or 3-nodes (three sons), numbered breadth-first from 1
//! at the root, left to right on each level. All tree flavors share that
//! numbering; they differ only in how son kinds are ordered:
//!
//! * standard: `2 -> 2 3`, `3 -> 2 3 3`
//! * central:  `2 -> 2 3`, `3 -> 3 2 3`
//! * best:     `2 -> 3 2`, `3 -> 3 2 3`, root `3 -> 3 3 2`
//! * random:   per-node dice among the permutations of one 2 and two 3s
//!
//! The navigation operations (status, father, sons, neighbours, path) are
//! computed from standard representations for the standard and best trees.
//! The central tree has no published digit rules, so its queries go through
//! a memoized materialization of the son rules; the random flavors are
//! answered only by [`build_oracle`].

use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::fibcode::{decode, encode, fib};
use crate::{Error, Result};

/// Default cap on materialized oracle depth.
pub const ORACLE_LEVEL_CAP: usize = 14;

/// Whether a node has two or three sons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Two,
    Three,
}

impl NodeKind {
    pub fn son_count(self) -> usize {
        match self {
            NodeKind::Two => 2,
            NodeKind::Three => 3,
        }
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeKind::Two => write!(f, "2"),
            NodeKind::Three => write!(f, "3"),
        }
    }
}

/// Selects the son-ordering rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeFlavor {
    Standard,
    Central,
    Best,
    Random(u64),
}

impl fmt::Display for TreeFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeFlavor::Standard => write!(f, "standard"),
            TreeFlavor::Central => write!(f, "central"),
            TreeFlavor::Best => write!(f, "best"),
            TreeFlavor::Random(seed) => write!(f, "random({seed})"),
        }
    }
}

fn check_positive(n: &BigUint) -> Result<()> {
    if n.is_zero() {
        Err(Error::ZeroNode)
    } else {
        Ok(())
    }
}

/// Tree level of node `n`: half the length of its standard representation,
/// rounded down. Level k starts at the node written `1 0^{2k}`.
pub fn level(n: &BigUint) -> Result<usize> {
    check_positive(n)?;
    Ok(encode(n).len() / 2)
}

/// Number of nodes on level `k` (every flavor): 1, 3, 8, 21, 55, ...
pub fn level_size(k: usize) -> BigUint {
    fib(2 * k + 1)
}

/// Number of the first (leftmost) node of level `k`: 1, 2, 5, 13, 34, ...
pub fn level_first(k: usize) -> BigUint {
    if k == 0 {
        BigUint::one()
    } else {
        fib(2 * k)
    }
}

/// Number of the last (rightmost) node of level `k`: 1, 4, 12, 33, ...
pub fn level_last(k: usize) -> BigUint {
    fib(2 * k + 2) - BigUint::one()
}

/// The continuator `c(n)`: the node whose representation is that of `n`
/// with `00` appended. Flavor-independent.
pub fn continuator(n: &BigUint) -> Result<BigUint> {
    check_positive(n)?;
    Ok(decode(&encode(n).append_00()))
}

/// The converse operation `c^{-1}(n)`: drop the last two digits; 0 when the
/// word is too short (boundary sentinel).
pub fn co_continuator(n: &BigUint) -> Result<BigUint> {
    check_positive(n)?;
    Ok(decode(&encode(n).drop_two()))
}

/// Status of node `n` in the given flavor.
///
/// Standard: a word ending `10` marks a 2-node and `01` a 3-node; a word
/// ending `00` defers to the ending of `n - 1` (`10` there means 3-node,
/// `01` means 2-node). Best: 2-nodes are exactly the words ending `01`,
/// except the root which is a 3-node by the axiom. Central: memoized rule
/// materialization.
pub fn status(n: &BigUint, flavor: TreeFlavor) -> Result<NodeKind> {
    check_positive(n)?;
    if n.is_one() {
        return Ok(NodeKind::Three);
    }
    match flavor {
        TreeFlavor::Standard => match encode(n).last_two() {
            (1, 0) => Ok(NodeKind::Two),
            (0, 1) => Ok(NodeKind::Three),
            (0, 0) => match encode(&(n - BigUint::one())).last_two() {
                (1, 0) => Ok(NodeKind::Three),
                (0, 1) => Ok(NodeKind::Two),
                other => unreachable!("predecessor of a 00-word ends {other:?}"),
            },
            other => unreachable!("standard word ends {other:?}"),
        },
        TreeFlavor::Best => match encode(n).last_two() {
            (0, 1) => Ok(NodeKind::Two),
            _ => Ok(NodeKind::Three),
        },
        TreeFlavor::Central => central_with(n, |memo, i| memo.kind[i]),
        TreeFlavor::Random(_) => Err(Error::UnsupportedFlavor(flavor.to_string())),
    }
}

/// Father of `n`, or `None` for the root.
pub fn father(n: &BigUint, flavor: TreeFlavor) -> Result<Option<BigUint>> {
    check_positive(n)?;
    if n.is_one() {
        return Ok(None);
    }
    match flavor {
        TreeFlavor::Standard => {
            let inv = co_continuator(n)?;
            let f = if status(n, flavor)? == NodeKind::Two && encode(n).last_two() == (1, 0) {
                inv + BigUint::one()
            } else {
                inv
            };
            Ok(Some(f))
        }
        TreeFlavor::Best => {
            if *n == BigUint::from(2u32) {
                Ok(Some(BigUint::one()))
            } else {
                Ok(Some(co_continuator(n)?))
            }
        }
        TreeFlavor::Central => central_with(n, |memo, i| Some(BigUint::from(memo.father[i]))),
        TreeFlavor::Random(_) => Err(Error::UnsupportedFlavor(flavor.to_string())),
    }
}

/// Sons of `n`, in breadth-first order (left to right).
pub fn sons(n: &BigUint, flavor: TreeFlavor) -> Result<Vec<BigUint>> {
    check_positive(n)?;
    let c = continuator(n)?;
    let one = BigUint::one();
    match flavor {
        TreeFlavor::Standard => Ok(match status(n, flavor)? {
            NodeKind::Two => vec![c.clone(), &c + &one],
            NodeKind::Three => vec![&c - &one, c.clone(), &c + &one],
        }),
        TreeFlavor::Best => {
            if n.is_one() {
                return Ok(vec![
                    BigUint::from(2u32),
                    BigUint::from(3u32),
                    BigUint::from(4u32),
                ]);
            }
            Ok(match status(n, flavor)? {
                NodeKind::Two => vec![c.clone(), &c + &one],
                NodeKind::Three => vec![c.clone(), &c + &one, &c + &one + &one],
            })
        }
        TreeFlavor::Central => central_with(n, |memo, i| {
            let first = memo.first_son[i];
            let count = memo.kind[i].son_count() as u64;
            (first..first + count).map(BigUint::from).collect()
        }),
        TreeFlavor::Random(_) => Err(Error::UnsupportedFlavor(flavor.to_string())),
    }
}

/// The raw five-neighbour tuple of `n`, exactly as the digit rules give it.
///
/// Entries near a sector border may be 0 or fall outside the expected level
/// range; their reinterpretation as tiles of the adjacent sector is owned by
/// the grid module. Supported for the standard and best trees only.
pub fn neighbors(n: &BigUint, flavor: TreeFlavor) -> Result<[BigUint; 5]> {
    check_positive(n)?;
    let one = BigUint::one();
    let c = continuator(n)?;
    let inv = co_continuator(n)?;
    match flavor {
        TreeFlavor::Standard => {
            let ends = encode(n).last_two();
            Ok(match (status(n, flavor)?, ends) {
                (NodeKind::Two, (0, 0)) => [
                    inv.clone(),
                    &inv - &one,
                    c.clone(),
                    &c + &one,
                    &c + &one + &one,
                ],
                (NodeKind::Two, (1, 0)) => [
                    &inv + &one,
                    inv.clone(),
                    c.clone(),
                    &c + &one,
                    &c + &one + &one,
                ],
                (NodeKind::Three, _) => [
                    inv.clone(),
                    &c - &one,
                    c.clone(),
                    &c + &one,
                    &c + &one + &one,
                ],
                other => unreachable!("impossible status/ending combination {other:?}"),
            })
        }
        TreeFlavor::Best => {
            let ends = encode(n).last_two();
            Ok(match ends {
                // 3-node that ends in 10
                (1, 0) => [
                    inv.clone(),
                    c.clone(),
                    &c + &one,
                    &c + &one + &one,
                    &inv + &one,
                ],
                // 2-node (ends 01), or 3-node ending 00 whose father is a 3-node
                (0, 1) => [
                    inv.clone(),
                    &c - &one,
                    c.clone(),
                    &c + &one,
                    &c + &one + &one,
                ],
                (0, 0) => {
                    // The status test on c^{-1} reads off the standard tree;
                    // the best-tree status would break neighbour reciprocity
                    // (node 11 would claim six distinct neighbours).
                    if status(&inv, TreeFlavor::Standard)? == NodeKind::Three {
                        [
                            inv.clone(),
                            &c - &one,
                            c.clone(),
                            &c + &one,
                            &c + &one + &one,
                        ]
                    } else {
                        [
                            inv.clone(),
                            &inv - &one,
                            c.clone(),
                            &c + &one,
                            &c + &one + &one,
                        ]
                    }
                }
                other => unreachable!("standard word ends {other:?}"),
            })
        }
        _ => Err(Error::UnsupportedFlavor(flavor.to_string())),
    }
}

/// Path from the root (inclusive) down to `n` (inclusive).
pub fn path_to_root(n: &BigUint, flavor: TreeFlavor) -> Result<Vec<BigUint>> {
    check_positive(n)?;
    let mut path = vec![n.clone()];
    let mut cur = n.clone();
    while let Some(f) = father(&cur, flavor)? {
        path.push(f.clone());
        cur = f;
    }
    path.reverse();
    Ok(path)
}

// ---------------------------------------------------------------------------
// Oracle: explicit materialization of the son rules.
// ---------------------------------------------------------------------------

/// One materialized node of an [`OracleTree`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleNode {
    pub number: u64,
    pub kind: NodeKind,
    /// 0 for the root.
    pub father: u64,
    pub sons: Vec<u64>,
}

/// A tree built purely by unrolling the son rules, breadth-first. Used as the
/// independent ground truth for every representation-based operation.
#[derive(Debug, Clone)]
pub struct OracleTree {
    pub flavor: TreeFlavor,
    pub levels: Vec<Vec<OracleNode>>,
}

fn dice(seed: u64, node: u64) -> u64 {
    // splitmix64, keyed by seed and node number; reproducible across runs.
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    mix(seed ^ mix(node)) % 6 + 1
}

fn son_kinds(flavor: TreeFlavor, kind: NodeKind, number: u64) -> Vec<NodeKind> {
    use NodeKind::*;
    match (flavor, kind) {
        (TreeFlavor::Standard, Two) => vec![Two, Three],
        (TreeFlavor::Standard, Three) => vec![Two, Three, Three],
        (TreeFlavor::Central, Two) => vec![Two, Three],
        (TreeFlavor::Central, Three) => vec![Three, Two, Three],
        (TreeFlavor::Best, Two) => vec![Three, Two],
        (TreeFlavor::Best, Three) => {
            if number == 1 {
                vec![Three, Three, Two]
            } else {
                vec![Three, Two, Three]
            }
        }
        (TreeFlavor::Random(seed), Two) => {
            if dice(seed, number) < 4 {
                vec![Two, Three]
            } else {
                vec![Three, Two]
            }
        }
        (TreeFlavor::Random(seed), Three) => {
            let r = dice(seed, number);
            if r < 3 {
                vec![Two, Three, Three]
            } else if r < 5 {
                vec![Three, Two, Three]
            } else {
                vec![Three, Three, Two]
            }
        }
    }
}

/// Materializes `levels + 1` levels (the root is level 0) of the tree with
/// the given flavor.
pub fn build_oracle(flavor: TreeFlavor, levels: usize) -> Result<OracleTree> {
    build_oracle_capped(flavor, levels, ORACLE_LEVEL_CAP)
}

pub fn build_oracle_capped(flavor: TreeFlavor, levels: usize, cap: usize) -> Result<OracleTree> {
    if levels > cap {
        return Err(Error::LevelCap {
            requested: levels,
            cap,
        });
    }
    let mut tree = OracleTree {
        flavor,
        levels: Vec::with_capacity(levels + 1),
    };
    let mut current = vec![(1u64, NodeKind::Three, 0u64)];
    let mut next_number = 2u64;
    for lvl in 0..=levels {
        let mut row = Vec::with_capacity(current.len());
        let mut next = Vec::new();
        for &(number, kind, father) in &current {
            let kinds = son_kinds(flavor, kind, number);
            let sons: Vec<u64> = (0..kinds.len() as u64).map(|i| next_number + i).collect();
            for (i, &k) in kinds.iter().enumerate() {
                next.push((sons[i], k, number));
            }
            next_number += kinds.len() as u64;
            row.push(OracleNode {
                number,
                kind,
                father,
                sons,
            });
        }
        tree.levels.push(row);
        if lvl < levels {
            current = next;
        }
    }
    Ok(tree)
}

impl OracleTree {
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// Looks a node up by number, if materialized.
    pub fn node(&self, n: u64) -> Option<&OracleNode> {
        for row in &self.levels {
            let first = row.first()?.number;
            let last = row.last()?.number;
            if n >= first && n <= last {
                return Some(&row[(n - first) as usize]);
            }
        }
        None
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }

    /// Path from the root to `n` following materialized father links.
    pub fn path_to_root(&self, n: u64) -> Option<Vec<u64>> {
        let mut path = vec![n];
        let mut cur = n;
        while cur != 1 {
            cur = self.node(cur)?.father;
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }
}

// ---------------------------------------------------------------------------
// Central-tree memo: single-writer materialization behind a mutex.
// ---------------------------------------------------------------------------

struct CentralMemo {
    levels_built: usize,
    kind: Vec<NodeKind>,
    father: Vec<u64>,
    first_son: Vec<u64>,
}

static CENTRAL: OnceLock<Mutex<CentralMemo>> = OnceLock::new();

fn central_with<T>(n: &BigUint, read: impl FnOnce(&CentralMemo, usize) -> T) -> Result<T> {
    let lvl = level(n)?;
    if lvl > ORACLE_LEVEL_CAP {
        let shown = n.to_u64().unwrap_or(u64::MAX);
        return Err(Error::BeyondOracle(shown, ORACLE_LEVEL_CAP));
    }
    let n = n.to_u64().expect("node within oracle cap fits u64");
    let memo = CENTRAL.get_or_init(|| {
        Mutex::new(CentralMemo {
            levels_built: 0,
            kind: vec![NodeKind::Three],
            father: vec![0],
            first_son: vec![2],
        })
    });
    let mut memo = memo.lock().expect("central memo poisoned");
    while memo.levels_built < lvl {
        // Extend one level: walk the nodes of the deepest built level and
        // append their sons per the central rules.
        let start = level_first(memo.levels_built)
            .to_u64()
            .expect("within cap");
        let end = level_last(memo.levels_built).to_u64().expect("within cap");
        for number in start..=end {
            let idx = (number - 1) as usize;
            let kinds = son_kinds(TreeFlavor::Central, memo.kind[idx], number);
            let first = memo.first_son[idx];
            for (i, &k) in kinds.iter().enumerate() {
                let son = first + i as u64;
                debug_assert_eq!(memo.kind.len() as u64, son - 1);
                memo.kind.push(k);
                memo.father.push(number);
                memo.first_son.push(0); // fixed up below
            }
        }
        // Assign first_son for the freshly appended level.
        let new_start = level_first(memo.levels_built + 1).to_u64().unwrap();
        let new_end = level_last(memo.levels_built + 1).to_u64().unwrap();
        let mut next = new_end + 1;
        for number in new_start..=new_end {
            let idx = (number - 1) as usize;
            memo.first_son[idx] = next;
            next += memo.kind[idx].son_count() as u64;
        }
        memo.levels_built += 1;
    }
    Ok(read(&memo, (n - 1) as usize))
}
