//! Fibonacci numbers and canonical Fibonacci-basis words.
//!
//! The basis is `f(0) = f(1) = 1, f(k) = f(k-1) + f(k-2)`. A word is read most
//! significant digit first and its last digit carries weight `f(1)`. Every
//! positive integer has exactly one word without two adjacent ones and without
//! a leading zero; that greedy form is the coordinate used everywhere else.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// `f(k)` with `f(0) = f(1) = 1`.
pub fn fib(k: usize) -> BigUint {
    let (mut a, mut b) = (BigUint::one(), BigUint::one());
    for _ in 1..=k {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

/// A level of the Fibonacci tree; level 0 holds only the sector root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Level(pub usize);

impl Level {
    pub fn index(self) -> usize {
        self.0
    }

    /// Number of nodes on this level, `f(2l + 1)`.
    pub fn node_count(self) -> BigUint {
        fib(2 * self.0 + 1)
    }
}

/// Canonical Fibonacci-basis word: non-empty, leading one, no "11".
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FibWord {
    digits: Vec<u8>,
}

impl FibWord {
    /// The word "1", coordinate of a sector root.
    pub fn one() -> Self {
        FibWord { digits: vec![1] }
    }

    /// Validates a digit vector (most significant first).
    pub fn from_digits(digits: Vec<u8>) -> Result<Self> {
        validate(&digits).map_err(|reason| Error::MalformedWord {
            word: digits.iter().map(|d| char::from(b'0' + d.min(&9))).collect(),
            reason,
        })?;
        Ok(FibWord { digits })
    }

    pub(crate) fn from_digits_unchecked(digits: Vec<u8>) -> Self {
        debug_assert!(validate(&digits).is_ok(), "invalid digits {digits:?}");
        FibWord { digits }
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn trailing_zeros(&self) -> usize {
        trailing_zeros(&self.digits)
    }

    /// The word with "00" appended (index shift by two).
    pub fn shifted(&self) -> FibWord {
        let mut digits = Vec::with_capacity(self.digits.len() + 2);
        digits.extend_from_slice(&self.digits);
        digits.extend_from_slice(&[0, 0]);
        FibWord { digits }
    }

    pub fn decode(&self) -> BigUint {
        decode(self)
    }

    /// Decodes into a `u64` when the value fits.
    pub fn to_u64(&self) -> Option<u64> {
        let (mut lo, mut hi) = (1u64, 1u64); // f(1), f(2) would be (1, 2)
        let mut total = 0u64;
        for (i, &d) in self.digits.iter().rev().enumerate() {
            // weight of position i (from the end) is f(i + 1)
            let weight = if i == 0 {
                1
            } else {
                let next = lo.checked_add(hi)?;
                lo = hi;
                hi = next;
                hi
            };
            if d == 1 {
                total = total.checked_add(weight)?;
            }
        }
        Some(total)
    }
}

fn validate(digits: &[u8]) -> std::result::Result<(), &'static str> {
    match digits.first() {
        None => return Err("empty word"),
        Some(0) => return Err("leading zero"),
        _ => {}
    }
    if digits.iter().any(|&d| d > 1) {
        return Err("digits must be 0 or 1");
    }
    if digits.windows(2).any(|w| w == [1, 1]) {
        return Err("contains \"11\"");
    }
    Ok(())
}

pub(crate) fn trailing_zeros(digits: &[u8]) -> usize {
    digits.iter().rev().take_while(|&&d| d == 0).count()
}

impl Ord for FibWord {
    fn cmp(&self, other: &Self) -> Ordering {
        // canonical words compare numerically by length, then lexicographically
        self.digits
            .len()
            .cmp(&other.digits.len())
            .then_with(|| self.digits.cmp(&other.digits))
    }
}

impl PartialOrd for FibWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FibWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.digits.iter().map(|&d| if d == 1 { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for FibWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FibWord({self})")
    }
}

impl FromStr for FibWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut digits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => digits.push(0),
                '1' => digits.push(1),
                _ => {
                    return Err(Error::MalformedWord {
                        word: s.to_string(),
                        reason: "digits must be 0 or 1",
                    })
                }
            }
        }
        validate(&digits).map_err(|reason| Error::MalformedWord { word: s.to_string(), reason })?;
        Ok(FibWord { digits })
    }
}

impl Serialize for FibWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FibWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Greedy (Zeckendorf) word of `n >= 1`.
pub fn encode(n: &BigUint) -> Result<FibWord> {
    if n.is_zero() {
        return Err(Error::ZeroHasNoWord);
    }
    if let Some(small) = n.to_u64() {
        return encode_u64(small);
    }
    // weights f(1), f(2), ... up to the largest one not exceeding n
    let mut weights = vec![BigUint::one()];
    let (mut a, mut b) = (BigUint::one(), BigUint::from(2u32));
    while &b <= n {
        weights.push(b.clone());
        let next = &a + &b;
        a = b;
        b = next;
    }
    let mut rest = n.clone();
    let mut digits = Vec::with_capacity(weights.len());
    let mut skip = false;
    for w in weights.iter().rev() {
        if !skip && *w <= rest {
            rest -= w;
            digits.push(1);
            skip = true;
        } else {
            digits.push(0);
            skip = false;
        }
    }
    debug_assert!(rest.is_zero());
    Ok(FibWord::from_digits_unchecked(digits))
}

pub fn encode_u64(n: u64) -> Result<FibWord> {
    if n == 0 {
        return Err(Error::ZeroHasNoWord);
    }
    let mut weights = vec![1u64];
    let (mut a, mut b) = (1u64, 2u64);
    while b <= n {
        weights.push(b);
        match a.checked_add(b) {
            Some(next) => {
                a = b;
                b = next;
            }
            None => break,
        }
    }
    let mut rest = n;
    let mut digits = Vec::with_capacity(weights.len());
    let mut skip = false;
    for &w in weights.iter().rev() {
        if !skip && w <= rest {
            rest -= w;
            digits.push(1);
            skip = true;
        } else {
            digits.push(0);
            skip = false;
        }
    }
    Ok(FibWord::from_digits_unchecked(digits))
}

/// Sum of `f(i)` over the positions holding a one; the last digit weighs `f(1)`.
pub fn decode(word: &FibWord) -> BigUint {
    if let Some(small) = word.to_u64() {
        return BigUint::from(small);
    }
    let mut total = BigUint::zero();
    let (mut weight, mut next) = (BigUint::one(), BigUint::from(2u32));
    for &d in word.digits.iter().rev() {
        if d == 1 {
            total += &weight;
        }
        let after = &weight + &next;
        weight = std::mem::replace(&mut next, after);
    }
    total
}

/// First and last node number on a level: `(f(2l), f(2l + 2) - 1)`.
pub fn level_bounds(level: Level) -> (BigUint, BigUint) {
    let first = fib(2 * level.0);
    let last = fib(2 * level.0 + 2) - BigUint::one();
    (first, last)
}

/// Level holding node number `n >= 1`.
pub fn level_of(n: &BigUint) -> Result<Level> {
    if n.is_zero() {
        return Err(Error::ZeroHasNoWord);
    }
    // walk even-indexed Fibonacci numbers until f(2l + 2) > n
    let (mut a, mut b) = (BigUint::one(), BigUint::one()); // f(k), f(k+1) with k even
    let mut level = 0;
    loop {
        let f2 = &a + &b; // f(k + 2)
        if &f2 > n {
            return Ok(Level(level));
        }
        let f3 = &b + &f2;
        a = f2;
        b = f3;
        level += 1;
    }
}
