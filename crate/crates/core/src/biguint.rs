//! Little-endian vector of 64-bit words: the dividend and quotient type.

use std::fmt;
use std::str::FromStr;

use num_traits::Num;

/// An unsigned integer stored as little-endian 64-bit words.
///
/// The storage length may include zero words above the most significant
/// non-zero word; equality and ordering compare numeric values.
#[derive(Clone, Default)]
pub struct BigUint {
    words: Vec<u64>,
}

impl BigUint {
    pub fn from_words(words: Vec<u64>) -> Self {
        Self { words }
    }

    pub fn zero() -> Self {
        Self { words: vec![0] }
    }

    pub fn from_u64(v: u64) -> Self {
        Self { words: vec![v] }
    }

    pub fn from_u128(v: u128) -> Self {
        let mut words = vec![v as u64, (v >> 64) as u64];
        if words[1] == 0 {
            words.pop();
        }
        Self { words }
    }

    /// `2^k`.
    pub fn pow2(k: u32) -> Self {
        let mut words = vec![0u64; k as usize / 64 + 1];
        words[k as usize / 64] = 1 << (k % 64);
        Self { words }
    }

    /// Storage words, least significant first. Never empty for values built
    /// through the constructors except [`BigUint::from_words`] with an empty
    /// vector, which reads as zero.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn into_words(self) -> Vec<u64> {
        self.words
    }

    /// Storage length in words (at least 1).
    pub fn len(&self) -> usize {
        self.words.len().max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Words with trailing zero words removed.
    pub fn significant(&self) -> &[u64] {
        let n = self
            .words
            .iter()
            .rposition(|&w| w != 0)
            .map_or(0, |i| i + 1);
        &self.words[..n]
    }

    pub fn is_zero(&self) -> bool {
        self.significant().is_empty()
    }

    pub fn bit_len(&self) -> u64 {
        let s = self.significant();
        match s.last() {
            None => 0,
            Some(top) => (s.len() as u64 - 1) * 64 + (64 - top.leading_zeros() as u64),
        }
    }

    /// Trailing zero bits; `None` for zero.
    pub fn trailing_zeros(&self) -> Option<u64> {
        let i = self.words.iter().position(|&w| w != 0)?;
        Some(i as u64 * 64 + self.words[i].trailing_zeros() as u64)
    }

    pub fn to_u128(&self) -> Option<u128> {
        match self.significant() {
            [] => Some(0),
            [a] => Some(*a as u128),
            [a, b] => Some(*a as u128 | (*b as u128) << 64),
            _ => None,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self.significant() {
            [] => Some(0),
            [a] => Some(*a),
            _ => None,
        }
    }

    /// `self >> k`, keeping the storage length minus whole shifted words.
    pub fn shr_bits(&self, k: u64) -> Self {
        let ws = (k / 64) as usize;
        let bs = (k % 64) as u32;
        let src = &self.words;
        if ws >= src.len() {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(src.len() - ws);
        for i in ws..src.len() {
            let lo = src[i] >> bs;
            let hi = if bs > 0 && i + 1 < src.len() {
                src[i + 1] << (64 - bs)
            } else {
                0
            };
            out.push(lo | hi);
        }
        Self { words: out }
    }

    /// `self << k`.
    pub fn shl_bits(&self, k: u64) -> Self {
        let ws = (k / 64) as usize;
        let bs = (k % 64) as u32;
        let mut out = vec![0u64; ws];
        let mut carry = 0u64;
        for &w in self.significant() {
            out.push((w << bs) | carry);
            carry = if bs > 0 { w >> (64 - bs) } else { 0 };
        }
        if carry != 0 {
            out.push(carry);
        }
        if out.is_empty() {
            out.push(0);
        }
        Self { words: out }
    }

    /// `self mod 2^k`.
    pub fn low_bits(&self, k: u64) -> Self {
        let ws = (k / 64) as usize;
        let bs = (k % 64) as u32;
        let mut out: Vec<u64> = self.words.iter().take(ws).copied().collect();
        if bs > 0 {
            if let Some(&w) = self.words.get(ws) {
                out.push(w & ((1u64 << bs) - 1));
            }
        }
        if out.is_empty() {
            out.push(0);
        }
        Self { words: out }
    }

    /// `self + rhs` for a small addend.
    pub fn add_u64(&self, rhs: u64) -> Self {
        let mut out = self.words.clone();
        let mut carry = rhs;
        for w in out.iter_mut() {
            if carry == 0 {
                break;
            }
            let (s, c) = w.overflowing_add(carry);
            *w = s;
            carry = c as u64;
        }
        if carry != 0 {
            out.push(carry);
        }
        Self { words: out }
    }

    /// `self - rhs`, or `None` if the result would be negative.
    pub fn checked_sub_u64(&self, rhs: u64) -> Option<Self> {
        let mut out = self.words.clone();
        let mut borrow = rhs;
        for w in out.iter_mut() {
            if borrow == 0 {
                break;
            }
            let (d, b) = w.overflowing_sub(borrow);
            *w = d;
            borrow = b as u64;
        }
        if borrow != 0 {
            return None;
        }
        Some(Self { words: out })
    }

    /// Bitwise OR with a value known not to overlap, used to re-attach the
    /// low bits saved before an even-divisor shift.
    pub fn or(&self, rhs: &BigUint) -> Self {
        let n = self.words.len().max(rhs.words.len());
        let words = (0..n)
            .map(|i| self.words.get(i).unwrap_or(&0) | rhs.words.get(i).unwrap_or(&0))
            .collect();
        Self { words }
    }

    /// Pads (or truncates zero words) to exactly `n` storage words. Panics if
    /// a non-zero word would be dropped.
    pub fn resized(&self, n: usize) -> Self {
        let mut words = self.words.clone();
        if words.len() > n {
            assert!(words[n..].iter().all(|&w| w == 0), "value does not fit");
        }
        words.resize(n, 0);
        Self { words }
    }

    fn to_num(&self) -> num_bigint::BigUint {
        let mut digits = Vec::with_capacity(self.words.len() * 2);
        for &w in &self.words {
            digits.push(w as u32);
            digits.push((w >> 32) as u32);
        }
        num_bigint::BigUint::new(digits)
    }

    fn from_num(v: &num_bigint::BigUint) -> Self {
        let mut words = v.to_u64_digits();
        if words.is_empty() {
            words.push(0);
        }
        Self { words }
    }
}

impl PartialEq for BigUint {
    fn eq(&self, other: &Self) -> bool {
        self.significant() == other.significant()
    }
}

impl Eq for BigUint {}

impl PartialOrd for BigUint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigUint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let (a, b) = (self.significant(), other.significant());
        a.len()
            .cmp(&b.len())
            .then_with(|| a.iter().rev().cmp(b.iter().rev()))
    }
}

impl From<u64> for BigUint {
    fn from(v: u64) -> Self {
        Self::from_u64(v)
    }
}

impl From<u128> for BigUint {
    fn from(v: u128) -> Self {
        Self::from_u128(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid integer literal {0:?}")]
pub struct ParseBigUintError(pub String);

impl FromStr for BigUint {
    type Err = ParseBigUintError;

    /// Decimal, or hexadecimal with a `0x` prefix.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseBigUintError(s.to_string());
        let t = s.trim();
        let (digits, radix) = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
            Some(h) => (h, 16),
            None => (t, 10),
        };
        if digits.is_empty() || !digits.chars().all(|c| c.is_digit(radix)) {
            return Err(err());
        }
        num_bigint::BigUint::from_str_radix(digits, radix)
            .map(|v| Self::from_num(&v))
            .map_err(|_| err())
    }
}

impl fmt::Display for BigUint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_num(), f)
    }
}

impl fmt::LowerHex for BigUint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.to_num(), f)
    }
}

impl fmt::Debug for BigUint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigUint({self})")
    }
}
