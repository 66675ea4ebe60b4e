use crate::biguint::BigUint;
use crate::error::{Error, Result};
use crate::inverse::{make_ctx, AnyCtx};

/// A general divisor `d = q' * 2^tz` split into its power of two and its odd
/// part `q'`.
///
/// `odd` is `None` when the odd part is 1, i.e. the divisor is a pure power
/// of two and no Montgomery arithmetic is needed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivisorSpec {
    tz: u64,
    odd: Option<AnyCtx>,
}

impl DivisorSpec {
    pub fn new(d: &BigUint) -> Result<Self> {
        let tz = match d.trailing_zeros() {
            Some(tz) => tz,
            None => return Err(Error::DivisorTooSmall),
        };
        let odd = d.shr_bits(tz);
        if odd == BigUint::from_u64(1) {
            if tz == 0 {
                return Err(Error::DivisorTooSmall);
            }
            return Ok(Self { tz, odd: None });
        }
        Ok(Self {
            tz,
            odd: Some(make_ctx(&odd)?),
        })
    }

    pub fn tz(&self) -> u64 {
        self.tz
    }

    pub fn odd_ctx(&self) -> Option<&AnyCtx> {
        self.odd.as_ref()
    }

    /// The odd part `q'`.
    pub fn odd_part(&self) -> u128 {
        self.odd.map_or(1, |c| c.modulus())
    }

    /// Reassembles `q' << tz`.
    pub fn divisor(&self) -> BigUint {
        BigUint::from_u128(self.odd_part()).shl_bits(self.tz)
    }

    /// Splits `x` into `(x >> tz, x mod 2^tz)`.
    pub(crate) fn split_dividend(&self, x: &BigUint) -> (BigUint, BigUint) {
        if self.tz == 0 {
            (x.clone(), BigUint::zero())
        } else {
            (x.shr_bits(self.tz), x.low_bits(self.tz))
        }
    }
}
