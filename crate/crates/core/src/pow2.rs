//! Powers of two modulo `q`.
//!
//! [`neg_pow2_mod`] exploits the fact that every Montgomery square divides by
//! `R`: starting from a small power of two, a ladder of squarings driven by
//! the complemented bits of `p + b` lands on `2^-p` without any pre- or
//! post-scaling. [`pos_pow2_mod`] is the orthodox ladder for comparison.

use crate::biguint::BigUint;
use crate::error::{Error, Result};
use crate::inverse::{make_ctx, AnyCtx};
use crate::mont::{mmul_one, mod_add, mont_mul, mont_sqr, MontCtx};
use crate::radix_power::r2_mod_q;
use crate::remainder::with_ctx;
use crate::word::Word;

/// Setup of the inverse-power ladder for one exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pow2Plan {
    /// `p + b`.
    pub pshift: u128,
    /// Index of the leading set bit of `pshift`.
    pub i1: u32,
    /// Lowest bit of the leading chunk; also the number of loop iterations.
    pub i0: u32,
    /// Bits `[i1:i0]` of `pshift`, always in `[b/2, b)`.
    pub chunk: u32,
    /// Exponent of the seed power of two, `b - chunk - 1`.
    pub seed_exp: u32,
}

impl Pow2Plan {
    pub fn new<W: Word>(p: u64) -> Result<Self> {
        let b = W::BITS as u128;
        let limit = (1u128 << (W::BITS.min(127))) - b - 1;
        if p as u128 > limit {
            return Err(Error::ExponentTooLarge {
                exponent: p,
                bits: W::BITS,
            });
        }
        let pshift = p as u128 + b;
        let i1 = 127 - pshift.leading_zeros();
        let i0 = i1 + 1 - W::LG_BITS;
        let chunk = (pshift >> i0) as u32;
        debug_assert!(chunk < W::BITS && chunk >= W::BITS / 2);
        Ok(Self {
            pshift,
            i1,
            i0,
            chunk,
            seed_exp: W::BITS - chunk - 1,
        })
    }

    pub fn iterations(&self) -> u32 {
        self.i0
    }

    /// Bit `i` of `NOT(pshift)`.
    pub fn complement_bit(&self, i: u32) -> bool {
        self.pshift >> i & 1 == 0
    }
}

/// One ladder iteration: a Montgomery square, optionally followed by a
/// modular doubling. Exponents are those of the true (unscaled) power of two
/// held after the step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pow2Step {
    pub bit_index: u32,
    pub bit: bool,
    pub doubled: bool,
    pub exponent: i128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pow2Trace<W> {
    pub value: W,
    pub steps: Vec<Pow2Step>,
    /// Exponent of the ladder's starting value.
    pub seed_exponent: i128,
    /// Montgomery multiplies of every kind, including any `R^2` bootstrap.
    pub modmuls: u32,
}

/// `2^-p mod q`.
pub fn neg_pow2_mod<W: Word>(p: u64, ctx: &MontCtx<W>) -> Result<W> {
    Ok(neg_pow2_mod_traced(p, ctx)?.value)
}

pub fn neg_pow2_mod_traced<W: Word>(p: u64, ctx: &MontCtx<W>) -> Result<Pow2Trace<W>> {
    let q = ctx.q();
    if p == 0 {
        return Ok(Pow2Trace {
            value: W::one(),
            steps: Vec::new(),
            seed_exponent: 0,
            modmuls: 0,
        });
    }
    let plan = Pow2Plan::new::<W>(p)?;
    let b = W::BITS as i128;
    let mut s = W::one() << plan.seed_exp as usize;
    if s >= q {
        s = s % q;
    }
    let mut e = plan.seed_exp as i128;
    let mut steps = Vec::with_capacity(plan.i0 as usize);
    for i in (0..plan.i0).rev() {
        s = mont_sqr(s, ctx);
        e = 2 * e - b;
        let bit = plan.complement_bit(i);
        if bit {
            s = mod_add(s, s, q);
            e += 1;
        }
        steps.push(Pow2Step {
            bit_index: i,
            bit,
            doubled: bit,
            exponent: e,
        });
    }
    s = mod_add(s, s, q);
    debug_assert_eq!(e + 1, -(p as i128));
    Ok(Pow2Trace {
        value: s,
        modmuls: steps.len() as u32,
        steps,
        seed_exponent: plan.seed_exp as i128,
    })
}

/// `2^p mod q` by a left-to-right Montgomery ladder.
pub fn pos_pow2_mod<W: Word>(p: u64, ctx: &MontCtx<W>) -> W {
    pos_pow2_mod_traced(p, ctx).value
}

pub fn pos_pow2_mod_traced<W: Word>(p: u64, ctx: &MontCtx<W>) -> Pow2Trace<W> {
    let q = ctx.q();
    let b = W::BITS as i128;
    let len = 64 - p.leading_zeros();
    let rest = len.saturating_sub(W::LG_BITS);
    let chunk = (p >> rest) as u32;
    // Seed R * 2^chunk: one square for R^2, one multiply to attach 2^chunk.
    let r2 = r2_mod_q(ctx);
    let mut s = mont_mul(r2, W::one() << chunk as usize, ctx);
    let mut e = b + chunk as i128;
    let seed_exponent = e;
    let mut modmuls = 2;
    let mut steps = Vec::with_capacity(rest as usize);
    for i in (0..rest).rev() {
        s = mont_sqr(s, ctx);
        e = 2 * e - b;
        let bit = p >> i & 1 == 1;
        if bit {
            s = mod_add(s, s, q);
            e += 1;
        }
        modmuls += 1;
        steps.push(Pow2Step {
            bit_index: i,
            bit,
            doubled: bit,
            exponent: e,
        });
    }
    s = mmul_one(s, ctx);
    modmuls += 1;
    debug_assert_eq!(e - b, p as i128);
    Pow2Trace {
        value: s,
        steps,
        seed_exponent,
        modmuls,
    }
}

fn neg_pow2_any(p: u64, ctx: &AnyCtx) -> Result<u128> {
    with_ctx!(ctx, c, W => Ok(neg_pow2_mod(p, c)?.to_u128()))
}

/// True iff `q` divides `2^p - 1`.
pub fn mersenne_has_factor(p: u64, q: &BigUint) -> Result<bool> {
    let ctx = make_ctx(q)?;
    Ok(neg_pow2_any(p, &ctx)? == 1)
}

/// True iff `q` divides `2^(2^f) + 1`.
pub fn fermat_has_factor(f: u32, q: &BigUint) -> Result<bool> {
    let ctx = make_ctx(q)?;
    if f >= 64 {
        return Err(Error::ExponentTooLarge {
            exponent: u64::MAX,
            bits: ctx.bits(),
        });
    }
    Ok(neg_pow2_any(1 << f, &ctx)? == ctx.modulus() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: u64 = 16357897499336320049;

    fn ctx() -> MontCtx<u64> {
        MontCtx::new(Q).unwrap()
    }

    #[test]
    fn plan_for_977() {
        let p = Pow2Plan::new::<u64>(977).unwrap();
        assert_eq!(p.pshift, 1041);
        assert_eq!((p.i1, p.i0, p.chunk, p.seed_exp), (10, 5, 32, 31));
    }

    #[test]
    fn ladders_977() {
        let c = ctx();
        assert_eq!(neg_pow2_mod(977, &c).unwrap(), 7143819210136784550);
        assert_eq!(pos_pow2_mod(977, &c), 8623243291871090712);
    }

    #[test]
    fn edge_exponents() {
        let c = ctx();
        assert_eq!(neg_pow2_mod(0, &c).unwrap(), 1);
        assert_eq!(neg_pow2_mod(1, &c).unwrap(), Q.div_ceil(2));
        assert_eq!(pos_pow2_mod(0, &c), 1);
        assert_eq!(pos_pow2_mod(1, &c), 2);
        let three = MontCtx::new(3u64).unwrap();
        assert_eq!(neg_pow2_mod(5, &three).unwrap(), 2);
        assert_eq!(pos_pow2_mod(5, &three), 2);
    }

    #[test]
    fn exponent_limit() {
        let c = ctx();
        let max = u64::MAX - 64;
        assert!(neg_pow2_mod(max, &c).is_ok());
        assert!(matches!(
            neg_pow2_mod(max + 1, &c),
            Err(Error::ExponentTooLarge { .. })
        ));
        let w = MontCtx::new(Q as u128).unwrap();
        assert!(neg_pow2_mod(u64::MAX, &w).is_ok());
    }

    #[test]
    fn small_factors() {
        let b = BigUint::from_u64;
        assert!(mersenne_has_factor(11, &b(23)).unwrap());
        assert!(!mersenne_has_factor(11, &b(13)).unwrap());
        assert!(mersenne_has_factor(4, &b(3)).unwrap());
        assert!(!mersenne_has_factor(5, &b(3)).unwrap());
        assert!(fermat_has_factor(5, &b(641)).unwrap());
        assert!(fermat_has_factor(5, &b(6700417)).unwrap());
        assert!(!fermat_has_factor(4, &b(3)).unwrap());
        assert_eq!(mersenne_has_factor(3, &b(4)), Err(Error::EvenModulus));
    }
}
