//! Machine-word abstraction for the Montgomery arithmetic.
//!
//! Every algorithm in this crate is written against [`Word`], which is
//! implemented for `u64` (radix `R = 2^64`) and `u128` (radix `R = 2^128`).
//! A 128-bit word is viewed as a little-endian pair of 64-bit digits
//! `x = d1 * 2^64 + d0`; its double-width product is assembled from 64-bit
//! partial products so that no wider native type is needed.

use std::borrow::Cow;
use std::fmt;
use std::hash::Hash;

use num_traits::{PrimInt, Unsigned, WrappingAdd, WrappingMul, WrappingNeg, WrappingSub};

/// An unsigned machine word of exactly `BITS` bits. All arithmetic is
/// two's-complement modulo `2^BITS`.
pub trait Word:
    PrimInt
    + Unsigned
    + WrappingAdd
    + WrappingSub
    + WrappingMul
    + WrappingNeg
    + Hash
    + Default
    + fmt::Debug
    + fmt::Display
    + fmt::LowerHex
    + Send
    + Sync
    + 'static
{
    /// `b = lg R`.
    const BITS: u32;
    /// `lg b`; the width of the leading exponent chunk in the powering ladders.
    const LG_BITS: u32;
    /// Number of 64-bit limbs per word.
    const LIMBS: usize;

    /// Full double-width product, returned as `(lo, hi)`.
    fn umul_lohi(self, rhs: Self) -> (Self, Self);

    /// 64-bit digit `i` (0 = least significant). Out-of-range digits are zero.
    fn limb(self, i: usize) -> u64;

    /// Builds a word from up to `LIMBS` little-endian 64-bit digits; missing
    /// digits are zero and extra digits are ignored.
    fn from_limbs(limbs: &[u64]) -> Self;

    fn from_u64(v: u64) -> Self;

    fn to_u128(self) -> u128;

    fn from_bool(b: bool) -> Self {
        if b {
            Self::one()
        } else {
            Self::zero()
        }
    }

    /// Regroups a little-endian limb vector into words of this width,
    /// zero-padding the top word if needed.
    fn digits_from_limbs(limbs: &[u64]) -> Cow<'_, [Self]> {
        Cow::Owned(limbs.chunks(Self::LIMBS).map(Self::from_limbs).collect())
    }

    /// Inverse of [`Word::digits_from_limbs`]: expands words into 64-bit limbs.
    fn limbs_from_digits(digits: &[Self]) -> Vec<u64> {
        let mut out = Vec::with_capacity(digits.len() * Self::LIMBS);
        for d in digits {
            for i in 0..Self::LIMBS {
                out.push(d.limb(i));
            }
        }
        out
    }
}

impl Word for u64 {
    const BITS: u32 = 64;
    const LG_BITS: u32 = 6;
    const LIMBS: usize = 1;

    #[inline(always)]
    fn umul_lohi(self, rhs: u64) -> (u64, u64) {
        let p = (self as u128) * (rhs as u128);
        (p as u64, (p >> 64) as u64)
    }

    #[inline(always)]
    fn limb(self, i: usize) -> u64 {
        if i == 0 {
            self
        } else {
            0
        }
    }

    fn from_limbs(limbs: &[u64]) -> u64 {
        limbs.first().copied().unwrap_or(0)
    }

    #[inline(always)]
    fn from_u64(v: u64) -> u64 {
        v
    }

    #[inline(always)]
    fn to_u128(self) -> u128 {
        self as u128
    }

    fn digits_from_limbs(limbs: &[u64]) -> Cow<'_, [u64]> {
        Cow::Borrowed(limbs)
    }

    fn limbs_from_digits(digits: &[u64]) -> Vec<u64> {
        digits.to_vec()
    }
}

impl Word for u128 {
    const BITS: u32 = 128;
    const LG_BITS: u32 = 7;
    const LIMBS: usize = 2;

    #[inline(always)]
    fn umul_lohi(self, rhs: u128) -> (u128, u128) {
        let (x0, x1) = (self as u64, (self >> 64) as u64);
        let (y0, y1) = (rhs as u64, (rhs >> 64) as u64);

        let p00 = x0.umul_lohi(y0);
        let p01 = x0.umul_lohi(y1);
        let p10 = x1.umul_lohi(y0);
        let p11 = x1.umul_lohi(y1);

        // Column sums, propagating carries exactly.
        let d0 = p00.0;
        let (d1, c1a) = p00.1.overflowing_add(p01.0);
        let (d1, c1b) = d1.overflowing_add(p10.0);
        let c1 = c1a as u64 + c1b as u64;

        let (d2, c2a) = p01.1.overflowing_add(p10.1);
        let (d2, c2b) = d2.overflowing_add(p11.0);
        let (d2, c2c) = d2.overflowing_add(c1);
        let c2 = c2a as u64 + c2b as u64 + c2c as u64;

        let d3 = p11.1.wrapping_add(c2);

        (
            (d0 as u128) | ((d1 as u128) << 64),
            (d2 as u128) | ((d3 as u128) << 64),
        )
    }

    #[inline(always)]
    fn limb(self, i: usize) -> u64 {
        match i {
            0 => self as u64,
            1 => (self >> 64) as u64,
            _ => 0,
        }
    }

    fn from_limbs(limbs: &[u64]) -> u128 {
        let lo = limbs.first().copied().unwrap_or(0) as u128;
        let hi = limbs.get(1).copied().unwrap_or(0) as u128;
        lo | (hi << 64)
    }

    #[inline(always)]
    fn from_u64(v: u64) -> u128 {
        v as u128
    }

    #[inline(always)]
    fn to_u128(self) -> u128 {
        self
    }
}

/// Full double-width product `x * y = lo + 2^b * hi`.
#[inline(always)]
pub fn umul_lohi<W: Word>(x: W, y: W) -> (W, W) {
    x.umul_lohi(y)
}

/// Lower-half product, `x * y mod 2^b`.
#[inline(always)]
pub fn mull<W: Word>(x: W, y: W) -> W {
    x.wrapping_mul(&y)
}

/// Upper-half product, `floor(x * y / 2^b)`.
#[inline(always)]
pub fn umulh<W: Word>(x: W, y: W) -> W {
    x.umul_lohi(y).1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lohi_small_cases_64() {
        assert_eq!(umul_lohi(12345u64, 1), (12345, 0));
        assert_eq!(umul_lohi(1u64 << 32, 1u64 << 32), (0, 1));
        assert_eq!(umul_lohi(1u64 << 63, 1u64 << 63), (0, 1u64 << 62));
        assert_eq!(mull(1u64 << 63, 2), 0);
        assert_eq!(umulh(1u64 << 63, 2), 1);
        assert_eq!(umulh(987654321u64, 1), 0);
    }

    #[test]
    fn lohi_extremes_128() {
        let m = u128::MAX;
        // (2^128 - 1)^2 = 2^256 - 2^129 + 1
        assert_eq!(umul_lohi(m, m), (1, m - 1));
        assert_eq!(umul_lohi(1u128 << 64, 1u128 << 64), (0, 1));
        assert_eq!(umul_lohi(1u128 << 127, 2), (0, 1));
    }

    #[test]
    fn mull_wraps_triple() {
        let q = 16357897499336320049u64;
        assert_eq!(mull(q, 3), 12180204350589856915);
        assert_eq!(mull(q, 3) ^ 2, 0xA908C752C8936C91);
    }

    #[test]
    fn digits_regroup_pads_top() {
        let limbs = [1u64, 2, 3];
        let d = u128::digits_from_limbs(&limbs);
        assert_eq!(d.as_ref(), &[1u128 | (2u128 << 64), 3]);
        assert_eq!(u128::limbs_from_digits(&d), vec![1, 2, 3, 0]);
        assert!(matches!(u64::digits_from_limbs(&limbs), Cow::Borrowed(_)));
    }
}
