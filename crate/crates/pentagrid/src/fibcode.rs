//! The Fibonacci number system used for node coordinates.
//!
//! Node numbers are written in the basis `f_1, f_2, f_3, ...` of the
//! Fibonacci sequence with `f_0 = f_1 = 1` and `f_{n+2} = f_{n+1} + f_n`.
//! A word with no occurrence of the pattern `11` and no leading zero is the
//! *standard representation* of its value; every non-negative integer has
//! exactly one such representation (Zeckendorf). Digits are stored most
//! significant first, so the word reads exactly as written on paper:
//! `alpha_k ... alpha_1` with `alpha_i` carrying weight `f_i`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::{Error, Result};

/// A digit word over Fibonacci weights, most significant digit first.
///
/// The empty word encodes 0 and is displayed as `ε`. Construction does not
/// enforce standardness; [`decode`] accepts any 0/1 word, while [`encode`]
/// always returns the canonical standard form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StdRep {
    digits: Vec<u8>,
}

impl StdRep {
    /// Wraps a digit word (values must be 0 or 1, most significant first).
    pub fn from_digits(digits: Vec<u8>) -> Result<Self> {
        if digits.iter().any(|&d| d > 1) {
            return Err(Error::Msg("digits must be 0 or 1".into()));
        }
        Ok(StdRep { digits })
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// The last two digits, padded with leading zeros for short words.
    /// `(next_to_last, last)` — e.g. `"1"` reads as `(0, 1)`.
    pub fn last_two(&self) -> (u8, u8) {
        let n = self.digits.len();
        let last = if n >= 1 { self.digits[n - 1] } else { 0 };
        let prev = if n >= 2 { self.digits[n - 2] } else { 0 };
        (prev, last)
    }

    /// The word with `00` appended (the continuator's representation).
    pub fn append_00(&self) -> StdRep {
        let mut d = self.digits.clone();
        d.push(0);
        d.push(0);
        StdRep { digits: d }
    }

    /// The word with the last two digits removed; empty when fewer than
    /// three digits remain.
    pub fn drop_two(&self) -> StdRep {
        let n = self.digits.len();
        let keep = n.saturating_sub(2);
        StdRep {
            digits: self.digits[..keep].to_vec(),
        }
    }
}

impl fmt::Display for StdRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.is_empty() {
            return write!(f, "ε");
        }
        for d in &self.digits {
            write!(f, "{}", d)?;
        }
        Ok(())
    }
}

impl FromStr for StdRep {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || s == "ε" {
            return Ok(StdRep { digits: vec![] });
        }
        let mut digits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => digits.push(0),
                '1' => digits.push(1),
                _ => return Err(Error::Msg(format!("invalid digit '{c}' in representation"))),
            }
        }
        Ok(StdRep { digits })
    }
}

/// `f_i` under the convention `f_0 = f_1 = 1`.
pub fn fib(i: usize) -> BigUint {
    let mut a = BigUint::from(1u32);
    let mut b = BigUint::from(1u32);
    for _ in 0..i {
        let c = &a + &b;
        a = b;
        b = c;
    }
    a
}

/// Fibonacci ladder `[f_0, f_1, ..., f_k]` with `f_k` the first value > n
/// (at least `f_0, f_1`).
fn fib_ladder_past(n: &BigUint) -> Vec<BigUint> {
    let mut ladder = vec![BigUint::from(1u32), BigUint::from(1u32)];
    while ladder.last().unwrap() <= n {
        let k = ladder.len();
        let next = &ladder[k - 1] + &ladder[k - 2];
        ladder.push(next);
    }
    ladder
}

/// The standard (Zeckendorf) representation of `n`. Runs in time linear in
/// the length of the result.
pub fn encode(n: &BigUint) -> StdRep {
    if n.is_zero() {
        return StdRep { digits: vec![] };
    }
    let ladder = fib_ladder_past(n);
    // Greedy from the largest weight; indices start at 1 (f_0 is unused).
    let mut k = ladder.len() - 1;
    while ladder[k] > *n {
        k -= 1;
    }
    let mut digits = vec![0u8; k];
    let mut rest = n.clone();
    let mut i = k;
    while !rest.is_zero() {
        if i >= 1 && ladder[i] <= rest {
            digits[k - i] = 1;
            rest -= &ladder[i];
            i = i.saturating_sub(2);
        } else {
            i -= 1;
        }
    }
    StdRep { digits }
}

/// Positional value of a digit word: the rightmost digit weighs `f_1`.
/// Standardness is not required.
pub fn decode(rep: &StdRep) -> BigUint {
    let k = rep.digits.len();
    if k == 0 {
        return BigUint::zero();
    }
    let ladder = {
        // f_0 .. f_k
        let mut l = vec![BigUint::from(1u32), BigUint::from(1u32)];
        while l.len() <= k {
            let m = l.len();
            let next = &l[m - 1] + &l[m - 2];
            l.push(next);
        }
        l
    };
    let mut total = BigUint::zero();
    for (j, &d) in rep.digits.iter().enumerate() {
        if d == 1 {
            total += &ladder[k - j];
        }
    }
    total
}

/// True iff the word has no adjacent 1s and no leading zero (the empty word
/// is the canonical zero and counts as standard).
pub fn is_standard(rep: &StdRep) -> bool {
    let d = &rep.digits;
    if d.is_empty() {
        return true;
    }
    if d[0] == 0 {
        return false;
    }
    d.windows(2).all(|w| !(w[0] == 1 && w[1] == 1))
}

/// Convenience: encode a machine integer.
pub fn encode_u64(n: u64) -> StdRep {
    encode(&BigUint::from(n))
}

/// Convenience: decode into a machine integer, if it fits.
pub fn decode_u64(rep: &StdRep) -> Option<u64> {
    use num_traits::ToPrimitive;
    decode(rep).to_u64()
}
