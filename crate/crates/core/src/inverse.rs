//! Inverse of an odd modulus modulo the radix.
//!
//! Width 64 uses the XOR seed followed by four Newton steps; width 128 takes
//! the 64-bit inverse and produces the next 64 bits with three 64-bit
//! multiplies.

use crate::biguint::BigUint;
use crate::error::{Error, Result};
use crate::mont::MontCtx;
use crate::word::{mull, umulh, Word};

/// Initial iterate `XOR(3q, 2)`, correct in at least the low 5 bits.
pub fn qinv_seed(q: u64) -> Result<u64> {
    if q & 1 == 0 {
        return Err(Error::EvenModulus);
    }
    Ok(q.wrapping_mul(3) ^ 2)
}

/// One row of the Newton convergence history.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NewtonStep {
    /// `q * qinv_{j-1} mod 2^64`, the product fed into the step.
    pub product: u64,
    /// `qinv_j`.
    pub qinv: u64,
    /// Number of low bits of `qinv_j` known correct.
    pub good_bits: u32,
}

/// Runs the four Newton steps and reports each iterate.
pub fn qinv_newton64_history(q: u64) -> Result<[NewtonStep; 4]> {
    let mut qinv = qinv_seed(q)?;
    let mut steps = [NewtonStep {
        product: 0,
        qinv: 0,
        good_bits: 0,
    }; 4];
    for step in steps.iter_mut() {
        let product = mull(q, qinv);
        qinv = mull(qinv, 2u64.wrapping_sub(product));
        *step = NewtonStep {
            product,
            qinv,
            good_bits: good_bits(q, qinv),
        };
    }
    Ok(steps)
}

/// `q^-1 mod 2^64` for odd `q`.
pub fn qinv_newton64(q: u64) -> Result<u64> {
    let mut qinv = qinv_seed(q)?;
    for _ in 0..4 {
        let tmp = mull(q, qinv);
        qinv = mull(qinv, 2u64.wrapping_sub(tmp));
    }
    Ok(qinv)
}

/// Number of low bits in which `q * qinv` agrees with 1.
pub fn good_bits(q: u64, qinv: u64) -> u32 {
    (mull(q, qinv) ^ 1).trailing_zeros()
}

/// High inverse word: given the 64-bit inverse `qinv_lo` of `q_lo`, returns
/// `d1` such that `q * (d1 * 2^64 + qinv_lo) = 1 (mod 2^128)` where
/// `q = q_hi * 2^64 + q_lo`.
pub fn qinv_extend(q_lo: u64, q_hi: u64, qinv_lo: u64) -> Result<u64> {
    if mull(q_lo, qinv_lo) != 1 {
        return Err(Error::InverseMismatch);
    }
    let partial = mull(q_hi, qinv_lo).wrapping_add(umulh(q_lo, qinv_lo));
    Ok(mull(qinv_lo.wrapping_neg(), partial))
}

/// `q^-1 mod 2^b` for an odd word of either supported width.
pub fn inverse_mod_radix<W: Word>(q: W) -> Result<W> {
    let q_lo = q.limb(0);
    let lo = qinv_newton64(q_lo)?;
    if W::LIMBS == 1 {
        return Ok(W::from_u64(lo));
    }
    let hi = qinv_extend(q_lo, q.limb(1), lo)?;
    Ok(W::from_limbs(&[lo, hi]))
}

/// A Montgomery context at whichever width the modulus needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnyCtx {
    W64(MontCtx<u64>),
    W128(MontCtx<u128>),
}

impl AnyCtx {
    pub fn bits(&self) -> u32 {
        match self {
            AnyCtx::W64(_) => 64,
            AnyCtx::W128(_) => 128,
        }
    }

    pub fn modulus(&self) -> u128 {
        match self {
            AnyCtx::W64(c) => c.q() as u128,
            AnyCtx::W128(c) => c.q(),
        }
    }

    pub fn qinv(&self) -> u128 {
        match self {
            AnyCtx::W64(c) => c.qinv() as u128,
            AnyCtx::W128(c) => c.qinv(),
        }
    }
}

/// Builds the narrowest context for an odd modulus `3 <= q < 2^128`.
pub fn make_ctx(q: &BigUint) -> Result<AnyCtx> {
    if q.bit_len() > 128 {
        return Err(Error::UnsupportedWidth);
    }
    let v = q.to_u128().unwrap_or_default();
    if v & 1 == 0 {
        return Err(Error::EvenModulus);
    }
    if v < 3 {
        return Err(Error::ModulusTooSmall);
    }
    if v <= u64::MAX as u128 {
        Ok(AnyCtx::W64(MontCtx::new(v as u64)?))
    } else {
        Ok(AnyCtx::W128(MontCtx::new(v)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_values() {
        assert_eq!(qinv_seed(1).unwrap(), 1);
        let q = 16357897499336320049u64;
        let s = qinv_seed(q).unwrap();
        assert_eq!(s, 0xA908C752C8936C91);
        assert_eq!(good_bits(q, s), 6);
        assert_eq!(qinv_seed(10), Err(Error::EvenModulus));
    }

    #[test]
    fn seed_has_five_good_bits() {
        for q in (1u64..4096).step_by(2) {
            assert!(good_bits(q, qinv_seed(q).unwrap()) >= 5, "q = {q}");
        }
    }

    #[test]
    fn newton_trivial_and_even() {
        assert_eq!(qinv_newton64(1).unwrap(), 1);
        assert_eq!(qinv_newton64(u64::MAX).unwrap(), u64::MAX);
        assert_eq!(qinv_newton64(2), Err(Error::EvenModulus));
    }

    #[test]
    fn extend_rejects_bad_low_word() {
        assert_eq!(qinv_extend(3, 0, 5), Err(Error::InverseMismatch));
        assert_eq!(qinv_extend(1, 0, 1).unwrap(), 0);
    }

    #[test]
    fn make_ctx_selects_width() {
        let c = make_ctx(&BigUint::from_u128(16357897499336320049)).unwrap();
        assert_eq!(c.bits(), 64);
        assert_eq!(c.qinv(), 9366409592816252113);

        let c = make_ctx(&BigUint::from_u128(225797717267637708506527464987314161)).unwrap();
        assert_eq!(c.bits(), 128);
        assert_eq!(c.qinv(), 98317950452290864966529955359911823633);

        assert_eq!(make_ctx(&BigUint::from_u64(4)), Err(Error::EvenModulus));
        assert_eq!(make_ctx(&BigUint::from_u64(1)), Err(Error::ModulusTooSmall));
        assert_eq!(
            make_ctx(&BigUint::from_words(vec![1, 0, 1])),
            Err(Error::UnsupportedWidth)
        );
    }
}
