//! Right-to-left scaled remainders.
//!
//! Each loop step subtracts the running carry from the next dividend word,
//! multiplies by `qinv` and takes the high half of the product with `q` as
//! the carry into the next word. After `i + 1` steps the carry satisfies
//! `cy = -R^-(i+1) * sum_{j<=i} x_j R^j (mod q)`, so the whole dividend is
//! recovered up to a power of `R` that [`radix_power`] supplies.
//!
//! The folded variants split the dividend into `F` equal segments and run
//! `F` independent carry chains in one interleaved pass; the chains are
//! recombined with a single radix power.

use std::borrow::Cow;

use crate::biguint::BigUint;
use crate::divisor::DivisorSpec;
use crate::error::{Error, Result};
use crate::inverse::AnyCtx;
use crate::mont::{mod_add, mod_neg, mont_mul, MontCtx};
use crate::pow2::neg_pow2_mod;
use crate::radix_power::{choose_variant, radix_power, Variant};
use crate::word::{mull, umulh, Word};

/// Number of interleaved carry chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fold {
    One,
    Two,
    Four,
}

impl Fold {
    pub const ALL: [Fold; 3] = [Fold::One, Fold::Two, Fold::Four];

    pub fn factor(self) -> usize {
        match self {
            Fold::One => 1,
            Fold::Two => 2,
            Fold::Four => 4,
        }
    }
}

impl TryFrom<usize> for Fold {
    type Error = Error;

    fn try_from(f: usize) -> Result<Self> {
        match f {
            1 => Ok(Fold::One),
            2 => Ok(Fold::Two),
            4 => Ok(Fold::Four),
            _ => Err(Error::UnsupportedFold(f)),
        }
    }
}

/// How a scaled remainder relates to the true remainder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleKind {
    /// Output of the A loop after the final negation: `x = s * R^n (mod q)`.
    NegScaledA,
    /// Output of the B loop: `x = s * R^(n-1) (mod q)`.
    PosScaledB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScaledRemainder<W: Word> {
    pub value: W,
    pub kind: ScaleKind,
    /// Number of radix-`R` digits the loop consumed.
    pub n: u64,
}

impl<W: Word> ScaledRemainder<W> {
    /// Radix power whose Montgomery product with `value` is the remainder.
    pub fn radix_power_needed(&self) -> u64 {
        match self.kind {
            ScaleKind::NegScaledA => self.n + 1,
            ScaleKind::PosScaledB => self.n,
        }
    }

    pub fn to_remainder(&self, ctx: &MontCtx<W>) -> Result<W> {
        let pow = radix_power(self.radix_power_needed(), ctx)?;
        Ok(mont_mul(self.value, pow, ctx))
    }
}

/// Interleaved A-loop chains over `F` equal segments of `x`.
// Indexing by step keeps the F chains interleaved in one loop body.
#[allow(clippy::needless_range_loop)]
#[inline(always)]
fn carry_chains<W: Word, const F: usize>(x: &[W], ctx: &MontCtx<W>) -> [W; F] {
    debug_assert_eq!(x.len() % F, 0);
    let m = x.len() / F;
    let (q, qinv) = (ctx.q(), ctx.qinv());
    let segs: [&[W]; F] = std::array::from_fn(|k| &x[k * m..(k + 1) * m]);
    let mut cy = [W::zero(); F];
    for i in 0..m {
        for k in 0..F {
            let xi = segs[k][i];
            let tmp = xi.wrapping_sub(&cy[k]);
            let bw = W::from_bool(cy[k] > xi);
            // Adding the borrow to the MULL output stands in for re-adding q.
            let tmp = mull(tmp, qinv).wrapping_add(&bw);
            cy[k] = umulh(tmp, q);
        }
    }
    cy
}

/// Final carry of the A loop (the raw Hensel carry, before negation).
pub fn hensel_carry<W: Word>(x: &[W], ctx: &MontCtx<W>) -> W {
    carry_chains::<W, 1>(x, ctx)[0]
}

/// A-loop carry after every iteration.
pub fn hensel_carry_trace<W: Word>(x: &[W], ctx: &MontCtx<W>) -> Vec<W> {
    let (q, qinv) = (ctx.q(), ctx.qinv());
    let mut cy = W::zero();
    x.iter()
        .map(|&xi| {
            let tmp = xi.wrapping_sub(&cy);
            let bw = W::from_bool(cy > xi);
            cy = umulh(mull(tmp, qinv).wrapping_add(&bw), q);
            cy
        })
        .collect()
}

/// True iff `q` divides `x`.
pub fn is_div_digits<W: Word>(x: &[W], ctx: &MontCtx<W>) -> bool {
    hensel_carry(x, ctx) == W::zero()
}

/// A loop followed by the mod-`q` negation.
pub fn scaled_remainder_a<W: Word>(x: &[W], ctx: &MontCtx<W>) -> ScaledRemainder<W> {
    let cy = hensel_carry(x, ctx);
    ScaledRemainder {
        value: mod_neg(cy, ctx.q()),
        kind: ScaleKind::NegScaledA,
        n: x.len() as u64,
    }
}

/// Values of `lo = x_i - cy (+ q)` after every step of the B loop, including
/// the multiply-free final step. Empty input yields an empty trace.
pub fn scaled_remainder_b_trace<W: Word>(x: &[W], ctx: &MontCtx<W>) -> Vec<W> {
    let mut out = Vec::with_capacity(x.len());
    b_loop(x, ctx, |lo| out.push(lo));
    out
}

#[inline(always)]
fn b_loop<W: Word, S: FnMut(W)>(x: &[W], ctx: &MontCtx<W>, mut sink: S) -> W {
    let (q, qinv) = (ctx.q(), ctx.qinv());
    let Some((&last, body)) = x.split_last() else {
        return W::zero();
    };
    let mut cy = W::zero();
    for &xi in body {
        let tmp = xi.wrapping_sub(&cy);
        let borrow = cy > xi;
        let lo = if borrow { tmp.wrapping_add(&q) } else { tmp };
        sink(lo);
        let t = mull(tmp, qinv).wrapping_add(&W::from_bool(borrow));
        debug_assert!(mull(t, q) == lo);
        cy = umulh(t, q);
    }
    let tmp = last.wrapping_sub(&cy);
    let lo = if cy > last { tmp.wrapping_add(&q) } else { tmp };
    sink(lo);
    lo
}

/// B loop: `n - 1` multiply steps plus a multiply-free final step. The
/// returned value is reduced into `[0, q)`.
pub fn scaled_remainder_b<W: Word>(x: &[W], ctx: &MontCtx<W>) -> ScaledRemainder<W> {
    let q = ctx.q();
    let value = if x.len() == 1 {
        // A single term passes through the loop unchanged.
        x[0] % q
    } else {
        let lo = b_loop(x, ctx, |_| {});
        if lo >= q {
            lo % q
        } else {
            lo
        }
    };
    ScaledRemainder {
        value,
        kind: ScaleKind::PosScaledB,
        n: x.len().max(1) as u64,
    }
}

/// Zero-pads `x` to a multiple of `f` digits without touching the input.
pub(crate) fn padded<W: Word>(x: &[W], f: usize) -> Cow<'_, [W]> {
    let rem = x.len() % f;
    if rem == 0 && !x.is_empty() {
        Cow::Borrowed(x)
    } else {
        let mut v = x.to_vec();
        v.resize(x.len().max(1).div_ceil(f) * f, W::zero());
        Cow::Owned(v)
    }
}

/// Per-segment A-loop carries for an `F`-way fold. `x` is zero-padded to a
/// multiple of `F` digits; segment `j` covers digits `[j*m, (j+1)*m)`.
pub fn fold_scaled_remainder<W: Word>(x: &[W], ctx: &MontCtx<W>, fold: Fold) -> Vec<W> {
    let xp = padded(x, fold.factor());
    fold_padded(&xp, ctx, fold)
}

pub(crate) fn fold_padded<W: Word>(xp: &[W], ctx: &MontCtx<W>, fold: Fold) -> Vec<W> {
    match fold {
        Fold::One => carry_chains::<W, 1>(xp, ctx).to_vec(),
        Fold::Two => carry_chains::<W, 2>(xp, ctx).to_vec(),
        Fold::Four => carry_chains::<W, 4>(xp, ctx).to_vec(),
    }
}

/// Nested recombination `cy_0 + (cy_1 + (... + cy_{F-1} P) P ...) P (mod q)`
/// with segment weight `P = R^(n/F)`, applied as Montgomery products by
/// `P * R = R^(n/F + 1)`.
///
/// The result `c` satisfies `x = -c * R^(n/F) (mod q)`; for `F = 1` it is the
/// serial carry itself. `n` is the padded digit count.
pub fn combine_partials<W: Word>(carries: &[W], ctx: &MontCtx<W>, n: u64) -> Result<W> {
    let f = carries.len() as u64;
    assert!(
        f > 0 && n.is_multiple_of(f),
        "digit count must be a multiple of the fold"
    );
    let pr = radix_power(n / f + 1, ctx)?;
    Ok(combine_with_power(carries, ctx, pr))
}

fn combine_with_power<W: Word>(carries: &[W], ctx: &MontCtx<W>, pr: W) -> W {
    let q = ctx.q();
    let (&top, rest) = carries.split_last().expect("at least one carry");
    rest.iter()
        .rev()
        .fold(top, |acc, &cy| mod_add(mont_mul(acc, pr, ctx), cy, q))
}

/// Rescales a [`combine_partials`] result into the carry the serial loop
/// would have produced over all `n` padded digits, `c * R^(-(F-1)n/F)`.
/// The inverse radix power comes from the scaling-free inverse ladder.
pub fn combined_to_serial_carry<W: Word>(c: W, ctx: &MontCtx<W>, n: u64, fold: Fold) -> Result<W> {
    let f = fold.factor() as u64;
    assert!(
        n.is_multiple_of(f),
        "digit count must be a multiple of the fold"
    );
    if f == 1 {
        return Ok(c);
    }
    let k = (f - 1) * (n / f) - 1;
    let e = k
        .checked_mul(W::BITS as u64)
        .ok_or(Error::WordCountTooLarge(n))?;
    // mont_mul divides by one more R, hence R^-k rather than R^-(k+1).
    Ok(mont_mul(c, neg_pow2_mod(e, ctx)?, ctx))
}

/// `x mod q` for odd `q`, selecting the A or B loop by the cheaper radix power.
pub fn remainder_odd<W: Word>(x: &[W], ctx: &MontCtx<W>) -> Result<W> {
    if x.is_empty() {
        return Ok(W::zero());
    }
    let s = match choose_variant(x.len() as u64) {
        Variant::UseA => scaled_remainder_a(x, ctx),
        Variant::UseB => scaled_remainder_b(x, ctx),
    };
    s.to_remainder(ctx)
}

/// `x mod q` through `F` interleaved A-loop chains.
pub fn remainder_odd_folded<W: Word>(x: &[W], ctx: &MontCtx<W>, fold: Fold) -> Result<W> {
    let xp = padded(x, fold.factor());
    let carries = fold_padded(&xp, ctx, fold);
    let m = (xp.len() / fold.factor()) as u64;
    let pr = radix_power(m + 1, ctx)?;
    let c = combine_with_power(&carries, ctx, pr);
    // x = -c * R^m = mont_mul(-c, R^(m+1))
    Ok(mont_mul(mod_neg(c, ctx.q()), pr, ctx))
}

macro_rules! with_ctx {
    ($ctx:expr, $c:ident, $w:ident => $body:expr) => {
        match $ctx {
            AnyCtx::W64($c) => {
                #[allow(dead_code)]
                type $w = u64;
                $body
            }
            AnyCtx::W128($c) => {
                #[allow(dead_code)]
                type $w = u128;
                $body
            }
        }
    };
}
pub(crate) use with_ctx;

/// True iff the odd modulus of `ctx` divides `x`.
pub fn is_div(x: &BigUint, ctx: &AnyCtx) -> bool {
    with_ctx!(ctx, c, W => is_div_digits(&W::digits_from_limbs(x.words()), c))
}

/// Divisibility by a general divisor, stripping the common power of two.
pub fn divides(x: &BigUint, d: &DivisorSpec) -> bool {
    if let Some(tz) = x.trailing_zeros() {
        if tz < d.tz() {
            return false;
        }
    } else {
        return true;
    }
    match d.odd_ctx() {
        None => true,
        Some(ctx) => is_div(&x.shr_bits(d.tz()), ctx),
    }
}

fn odd_remainder(x: &BigUint, ctx: &AnyCtx, fold: Option<Fold>) -> Result<u128> {
    with_ctx!(ctx, c, W => {
        let digits = W::digits_from_limbs(x.words());
        let r = match fold {
            None => remainder_odd(&digits, c)?,
            Some(f) => remainder_odd_folded(&digits, c, f)?,
        };
        Ok(r.to_u128())
    })
}

fn remainder_impl(x: &BigUint, d: &DivisorSpec, fold: Option<Fold>) -> Result<BigUint> {
    let (xs, bsave) = d.split_dividend(x);
    let r_odd = match d.odd_ctx() {
        None => 0,
        Some(ctx) => odd_remainder(&xs, ctx, fold)?,
    };
    Ok(BigUint::from_u128(r_odd).shl_bits(d.tz()).or(&bsave))
}

/// `x mod d`. Even divisors are handled by removing their power of two and
/// re-attaching the shifted-out low bits of `x`.
pub fn remainder(x: &BigUint, d: &DivisorSpec) -> Result<BigUint> {
    remainder_impl(x, d, None)
}

/// [`remainder`] using `F` interleaved carry chains.
pub fn remainder_folded(x: &BigUint, d: &DivisorSpec, fold: Fold) -> Result<BigUint> {
    remainder_impl(x, d, Some(fold))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: u64 = 16357897499336320049;

    fn x977() -> Vec<u64> {
        let mut x = vec![u64::MAX; 16];
        x[15] = (1u64 << 17) - 1;
        x
    }

    fn ctx() -> MontCtx<u64> {
        MontCtx::new(Q).unwrap()
    }

    #[test]
    fn known_loop_outputs() {
        let c = ctx();
        let x = x977();
        assert!(!is_div_digits(&x, &c));
        assert_eq!(hensel_carry(&x, &c), 5031209829575536552);
        let a = scaled_remainder_a(&x, &c);
        assert_eq!(a.value, 11326687669760783497);
        assert_eq!(a.to_remainder(&c).unwrap(), 8623243291871090711);
        let b = scaled_remainder_b(&x, &c);
        assert_eq!(b.value, 4097145961007838330);
        assert_eq!(b.to_remainder(&c).unwrap(), 8623243291871090711);
    }

    #[test]
    fn zero_and_single_word() {
        let c = ctx();
        assert!(is_div_digits(&[0u64; 5], &c));
        assert_eq!(scaled_remainder_a(&[0u64], &c).value, 0);
        let three = MontCtx::new(3u64).unwrap();
        assert_eq!(scaled_remainder_b(&[5u64], &three).value, 2);
        assert_eq!(remainder_odd::<u64>(&[], &c).unwrap(), 0);
    }

    #[test]
    fn fold_parsing() {
        assert_eq!(Fold::try_from(4).unwrap(), Fold::Four);
        assert_eq!(Fold::try_from(3), Err(Error::UnsupportedFold(3)));
    }

    #[test]
    fn fold_one_is_serial_carry() {
        let c = ctx();
        let x = x977();
        let cs = fold_scaled_remainder(&x, &c, Fold::One);
        assert_eq!(cs, vec![5031209829575536552]);
        assert_eq!(combine_partials(&cs, &c, 16).unwrap(), 5031209829575536552);
    }

    #[test]
    fn folded_carries_rescale_to_serial() {
        let c = ctx();
        let x = x977();
        for f in [Fold::Two, Fold::Four] {
            let cs = fold_scaled_remainder(&x, &c, f);
            let comb = combine_partials(&cs, &c, 16).unwrap();
            assert_eq!(
                combined_to_serial_carry(comb, &c, 16, f).unwrap(),
                5031209829575536552
            );
            assert_eq!(
                remainder_odd_folded(&x, &c, f).unwrap(),
                8623243291871090711
            );
        }
    }

    #[test]
    fn padding_never_mutates_input() {
        let x = [1u64, 2, 3];
        let p = padded(&x, 4);
        assert_eq!(p.as_ref(), &[1, 2, 3, 0]);
        assert!(matches!(padded(&x, 1), Cow::Borrowed(_)));
    }

    #[test]
    fn even_divisor_remainder() {
        let d = DivisorSpec::new(&BigUint::from_u64(12)).unwrap();
        assert_eq!(
            remainder(&BigUint::from_u64(100), &d).unwrap(),
            BigUint::from_u64(4)
        );
        let p = DivisorSpec::new(&BigUint::from_u64(8)).unwrap();
        assert_eq!(
            remainder(&BigUint::from_u64(100), &p).unwrap(),
            BigUint::from_u64(4)
        );
        assert!(divides(&BigUint::from_u64(96), &d));
        assert!(!divides(&BigUint::from_u64(98), &d));
        assert!(divides(&BigUint::zero(), &d));
    }
}
