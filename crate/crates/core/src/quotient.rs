//! Exact quotients from a known remainder.
//!
//! Seeding the right-to-left carry with the true remainder `r` runs the
//! divisibility loop over `x - r`, which is an exact multiple of `q`; the
//! low-half product of each step is then one word of the quotient and the
//! high half is the carry into the next word.

use crate::biguint::BigUint;
use crate::divisor::DivisorSpec;
use crate::error::{Error, Result};
use crate::inverse::AnyCtx;
use crate::mont::{mod_sub, mont_mul, MontCtx};
use crate::radix_power::radix_power;
use crate::remainder::{fold_padded, padded, remainder_odd, with_ctx, Fold};
use crate::word::{mull, umulh, Word};

/// Carry state `(cy, bw)` at the end of a chain.
type ChainEnd<W> = (W, W);

#[inline(always)]
fn quotient_chains<W: Word, const F: usize>(
    x: &[W],
    seeds: [W; F],
    ctx: &MontCtx<W>,
    y: &mut [W],
) -> [ChainEnd<W>; F] {
    debug_assert_eq!(x.len() % F, 0);
    debug_assert_eq!(x.len(), y.len());
    let m = x.len() / F;
    let (q, qinv) = (ctx.q(), ctx.qinv());
    let mut cy = seeds;
    let mut bw = [W::zero(); F];
    for i in 0..m {
        for k in 0..F {
            let idx = k * m + i;
            let xi = x[idx];
            // cy <= R - 2 after the first step, so cy + bw cannot wrap.
            debug_assert!(i == 0 || cy[k] <= W::max_value() - W::one());
            let sub = cy[k] + bw[k];
            let tmp = xi.wrapping_sub(&sub);
            bw[k] = W::from_bool(sub > xi);
            // The borrow is carried into the next word's subtraction, so it
            // must not also be folded into this quotient word.
            let t = mull(tmp, qinv);
            debug_assert!(mull(t, q) == tmp);
            cy[k] = umulh(t, q);
            y[idx] = t;
        }
    }
    std::array::from_fn(|k| (cy[k], bw[k]))
}

/// Quotient digits of `x` given `r = x mod q`. Fails if the chain does not
/// end with a zero carry, which happens exactly when `r` is wrong.
pub fn quotient_digits<W: Word>(x: &[W], r: W, ctx: &MontCtx<W>) -> Result<Vec<W>> {
    let mut y = vec![W::zero(); x.len()];
    let [(cy, bw)] = quotient_chains::<W, 1>(x, [r], ctx, &mut y);
    if cy != W::zero() || bw != W::zero() {
        return Err(Error::InconsistentRemainder {
            carry: cy.to_u128() + bw.to_u128(),
        });
    }
    Ok(y)
}

/// The first `m` quotient digits, reading only `x[..m]`. Correct as long as
/// the full quotient fits in `m` digits; otherwise these are the low digits
/// of the quotient and nothing is checked.
pub fn quotient_low_digits<W: Word>(x: &[W], r: W, ctx: &MontCtx<W>, m: usize) -> Vec<W> {
    let m = m.min(x.len());
    let mut y = vec![W::zero(); m];
    quotient_chains::<W, 1>(&x[..m], [r], ctx, &mut y);
    y
}

/// Remainders of the dividend suffixes starting at each segment boundary,
/// from folded carries. `pr` is the segment weight in Montgomery form,
/// `R^(m+1) mod q` for segments of `m` digits. Entry 0 is `x mod q`.
pub fn partial_remainder_cascade<W: Word>(carries: &[W], ctx: &MontCtx<W>, pr: W) -> Vec<W> {
    let q = ctx.q();
    let f = carries.len();
    let mut out = vec![W::zero(); f];
    let mut acc = W::zero();
    for j in (0..f).rev() {
        acc = mont_mul(mod_sub(acc, carries[j] % q, q), pr, ctx);
        out[j] = acc;
    }
    out
}

/// Quotient and remainder of `x` by odd `q` through `F` interleaved remainder
/// chains and `F` interleaved quotient chains. The quotient has
/// `x.len()` rounded up to a multiple of `F` digits.
pub fn folded_div_rem_digits<W: Word>(
    x: &[W],
    ctx: &MontCtx<W>,
    fold: Fold,
) -> Result<(Vec<W>, W)> {
    let xp = padded(x, fold.factor());
    let m = xp.len() / fold.factor();
    let carries = fold_padded(&xp, ctx, fold);
    let pr = radix_power(m as u64 + 1, ctx)?;
    let rs = partial_remainder_cascade(&carries, ctx, pr);
    let mut y = vec![W::zero(); xp.len()];
    let ends: Vec<ChainEnd<W>> = match fold {
        Fold::One => quotient_chains::<W, 1>(&xp, [rs[0]], ctx, &mut y).to_vec(),
        Fold::Two => quotient_chains::<W, 2>(&xp, [rs[0], rs[1]], ctx, &mut y).to_vec(),
        Fold::Four => {
            quotient_chains::<W, 4>(&xp, [rs[0], rs[1], rs[2], rs[3]], ctx, &mut y).to_vec()
        }
    };
    // Each segment hands the next one exactly its partial remainder; the
    // top segment must drain to zero.
    for (j, &(cy, bw)) in ends.iter().enumerate() {
        let expect = rs.get(j + 1).copied().unwrap_or(W::zero());
        let handed = cy.to_u128() + bw.to_u128();
        if handed != expect.to_u128() {
            return Err(Error::InconsistentRemainder { carry: handed });
        }
    }
    Ok((y, rs[0]))
}

fn to_biguint<W: Word>(digits: &[W], limbs: usize) -> BigUint {
    let mut words = W::limbs_from_digits(digits);
    words.truncate(limbs.max(1));
    BigUint::from_words(words)
}

/// `floor(x / q)` given the true remainder `r = x mod q`.
pub fn quotient(x: &BigUint, r: u128, ctx: &AnyCtx) -> Result<BigUint> {
    with_ctx!(ctx, c, W => {
        let digits = W::digits_from_limbs(x.words());
        let y = quotient_digits(&digits, W::from_limbs(&[r as u64, (r >> 64) as u64]), c)?;
        Ok(to_biguint(&y, x.len()))
    })
}

/// Low `m` 64-bit words of `floor(x / q)` computed from the low `m` words of
/// `x` alone. The result is the whole quotient only if the caller's bound
/// `quotient < 2^(64 m)` holds.
pub fn quotient_low_words(x_low: &[u64], r: u128, ctx: &AnyCtx, m: usize) -> BigUint {
    let m = m.min(x_low.len());
    with_ctx!(ctx, c, W => {
        let digits = W::digits_from_limbs(&x_low[..m]);
        let r = W::from_limbs(&[r as u64, (r >> 64) as u64]);
        let y = quotient_low_digits(&digits, r, c, digits.len());
        to_biguint(&y, m)
    })
}

/// Quotient of `x` by the odd modulus of `ctx` via `F` interleaved chains.
pub fn folded_quotient(x: &BigUint, ctx: &AnyCtx, fold: Fold) -> Result<BigUint> {
    with_ctx!(ctx, c, W => {
        let digits = W::digits_from_limbs(x.words());
        let (y, _) = folded_div_rem_digits(&digits, c, fold)?;
        Ok(to_biguint(&y, x.len()))
    })
}

fn odd_div_rem(x: &BigUint, ctx: &AnyCtx, fold: Option<Fold>) -> Result<(BigUint, u128)> {
    with_ctx!(ctx, c, W => {
        let digits = W::digits_from_limbs(x.words());
        let (y, r) = match fold {
            None => {
                let r = remainder_odd(&digits, c)?;
                (quotient_digits(&digits, r, c)?, r)
            }
            Some(f) => folded_div_rem_digits(&digits, c, f)?,
        };
        Ok((to_biguint(&y, x.len()), r.to_u128()))
    })
}

fn div_rem_impl(x: &BigUint, d: &DivisorSpec, fold: Option<Fold>) -> Result<(BigUint, BigUint)> {
    let (xs, bsave) = d.split_dividend(x);
    match d.odd_ctx() {
        None => Ok((xs, bsave)),
        Some(ctx) => {
            let (y, r) = odd_div_rem(&xs, ctx, fold)?;
            Ok((y, BigUint::from_u128(r).shl_bits(d.tz()).or(&bsave)))
        }
    }
}

/// `(floor(x / d), x mod d)`. An even divisor is reduced to its odd part by
/// shifting both operands; the shifted-out dividend bits are re-attached to
/// the remainder and the quotient needs no adjustment.
pub fn div_rem(x: &BigUint, d: &DivisorSpec) -> Result<(BigUint, BigUint)> {
    div_rem_impl(x, d, None)
}

/// [`div_rem`] with both passes split into `F` interleaved chains.
pub fn div_rem_folded(x: &BigUint, d: &DivisorSpec, fold: Fold) -> Result<(BigUint, BigUint)> {
    div_rem_impl(x, d, Some(fold))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: u64 = 16357897499336320049;
    const R977: u64 = 8623243291871090711;

    fn x977() -> Vec<u64> {
        let mut x = vec![u64::MAX; 16];
        x[15] = (1u64 << 17) - 1;
        x
    }

    #[test]
    fn first_and_last_words() {
        let c = MontCtx::new(Q).unwrap();
        let y = quotient_digits(&x977(), R977, &c).unwrap();
        assert_eq!(y[0], 6364180061714936936);
        assert_eq!(y[14], 147809);
        assert_eq!(y[15], 0);
    }

    #[test]
    fn wrong_remainder_is_reported() {
        let c = MontCtx::new(Q).unwrap();
        let err = quotient_digits(&x977(), R977 - 1, &c).unwrap_err();
        assert!(matches!(err, Error::InconsistentRemainder { .. }));
    }

    #[test]
    fn small_dividend() {
        let c = MontCtx::new(Q).unwrap();
        assert_eq!(quotient_digits(&[12345u64], 12345, &c).unwrap(), vec![0]);
    }

    #[test]
    fn cascade_of_one_is_the_remainder() {
        let c = MontCtx::new(Q).unwrap();
        let x = x977();
        let pr = radix_power(17, &c).unwrap();
        let cy = crate::remainder::hensel_carry(&x, &c);
        assert_eq!(partial_remainder_cascade(&[cy], &c, pr), vec![R977]);
    }

    #[test]
    fn folded_matches_serial() {
        let c = MontCtx::new(Q).unwrap();
        let x = x977();
        let serial = quotient_digits(&x, R977, &c).unwrap();
        for f in Fold::ALL {
            let (y, r) = folded_div_rem_digits(&x, &c, f).unwrap();
            assert_eq!(r, R977);
            assert_eq!(y, serial);
        }
    }

    #[test]
    fn even_and_trivial_divisors() {
        let d = DivisorSpec::new(&BigUint::from_u64(12)).unwrap();
        let (y, r) = div_rem(&BigUint::from_u64(100), &d).unwrap();
        assert_eq!((y, r), (BigUint::from_u64(8), BigUint::from_u64(4)));

        let q = BigUint::from_u64(Q);
        let d = DivisorSpec::new(&q).unwrap();
        let (y, r) = div_rem(&q, &d).unwrap();
        assert_eq!((y, r), (BigUint::from_u64(1), BigUint::zero()));

        let d = DivisorSpec::new(&BigUint::from_u64(16)).unwrap();
        let (y, r) = div_rem_folded(&BigUint::from_u64(100), &d, Fold::Two).unwrap();
        assert_eq!((y, r), (BigUint::from_u64(6), BigUint::from_u64(4)));
    }
}
