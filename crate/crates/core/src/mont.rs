//! Montgomery multiply kernels at radix `R = 2^b`.

use crate::error::{Error, Result};
use crate::inverse::inverse_mod_radix;
use crate::word::{mull, umulh, Word};

/// A validated odd modulus together with its inverse modulo `R`.
///
/// Invariants: `q` is odd, `q >= 3` and `q * qinv = 1 (mod 2^b)`. The context
/// is immutable after construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MontCtx<W: Word> {
    q: W,
    qinv: W,
}

impl<W: Word> MontCtx<W> {
    pub fn new(q: W) -> Result<Self> {
        if q & W::one() == W::zero() {
            return Err(Error::EvenModulus);
        }
        if q < W::from_u64(3) {
            return Err(Error::ModulusTooSmall);
        }
        let qinv = inverse_mod_radix(q)?;
        debug_assert!(mull(q, qinv) == W::one());
        Ok(Self { q, qinv })
    }

    #[inline(always)]
    pub fn q(&self) -> W {
        self.q
    }

    #[inline(always)]
    pub fn qinv(&self) -> W {
        self.qinv
    }

    /// `R mod q`.
    pub fn r_mod_q(&self) -> W {
        (W::max_value() % self.q + W::one()) % self.q
    }
}

/// Montgomery product `x * y * R^-1 (mod q)`, reduced into `[0, q)`.
///
/// The output is fully reduced as long as at least one of `x`, `y` is below
/// `q`; the other may be any `b`-bit value. This is what lets the scaled
/// remainder of the right-to-left loops, which can reach `R - 1`, be fed in
/// directly.
#[inline(always)]
pub fn mont_mul<W: Word>(x: W, y: W, ctx: &MontCtx<W>) -> W {
    debug_assert!(x < ctx.q || y < ctx.q);
    let (lo, hi) = x.umul_lohi(y);
    reduce(lo, hi, ctx)
}

/// Montgomery square `x^2 * R^-1 (mod q)`. Requires `x < q`.
#[inline(always)]
pub fn mont_sqr<W: Word>(x: W, ctx: &MontCtx<W>) -> W {
    debug_assert!(x < ctx.q);
    let (lo, hi) = x.umul_lohi(x);
    reduce(lo, hi, ctx)
}

#[inline(always)]
fn reduce<W: Word>(lo: W, hi: W, ctx: &MontCtx<W>) -> W {
    let lo = mull(ctx.qinv, lo);
    let lo = umulh(ctx.q, lo);
    if hi < lo {
        hi.wrapping_sub(&lo).wrapping_add(&ctx.q)
    } else {
        hi - lo
    }
}

/// Montgomery multiply by unity, `x * R^-1 (mod q)`, without a double-width
/// product. Valid for any `b`-bit `x`.
#[inline(always)]
pub fn mmul_one<W: Word>(x: W, ctx: &MontCtx<W>) -> W {
    let lo = umulh(ctx.q, mull(ctx.qinv, x));
    if lo != W::zero() {
        ctx.q - lo
    } else {
        lo
    }
}

/// `(x + y) mod q` for `x, y < q`, including the case where `x + y`
/// overflows `b` bits.
#[inline(always)]
pub fn mod_add<W: Word>(x: W, y: W, q: W) -> W {
    debug_assert!(x < q && y < q);
    let s = x.wrapping_add(&y);
    if s < x || s >= q {
        s.wrapping_sub(&q)
    } else {
        s
    }
}

/// `(x - y) mod q` for `x, y < q`.
#[inline(always)]
pub fn mod_sub<W: Word>(x: W, y: W, q: W) -> W {
    debug_assert!(x < q && y < q);
    if x >= y {
        x - y
    } else {
        x.wrapping_sub(&y).wrapping_add(&q)
    }
}

/// `-x mod q` for `x < q`.
#[inline(always)]
pub fn mod_neg<W: Word>(x: W, q: W) -> W {
    if x == W::zero() {
        x
    } else {
        q - x
    }
}
