//! Rational interval enclosures. Endpoints are exact rationals; the only
//! error sources are explicit series truncations, which are accounted for by
//! widening. Logs and exponentials of rationals are therefore certified.

use super::{rat_pow, Rat};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "inverted interval");
        RatInterval { lo, hi }
    }

    pub fn point(q: Rat) -> Self {
        RatInterval {
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::point(super::rat_from_i64(n))
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / super::rat_from_i64(2)
    }

    pub fn contains(&self, q: &Rat) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::new(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let cands = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        Self::new(lo, hi)
    }

    pub fn mul_rat(&self, q: &Rat) -> Self {
        if q.is_negative() {
            Self::new(&self.hi * q, &self.lo * q)
        } else {
            Self::new(&self.lo * q, &self.hi * q)
        }
    }

    /// Reciprocal; requires the interval to exclude zero.
    pub fn recip(&self) -> Self {
        assert!(
            self.lo.is_positive() || self.hi.is_negative(),
            "reciprocal of an interval containing zero"
        );
        Self::new(self.hi.recip(), self.lo.recip())
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.recip())
    }

    pub fn powi(&self, n: u64) -> Self {
        if n == 0 {
            return Self::from_i64(1);
        }
        if n % 2 == 1 || !self.lo.is_negative() {
            Self::new(rat_pow(&self.lo, n), rat_pow(&self.hi, n))
        } else if !self.hi.is_positive() {
            Self::new(rat_pow(&self.hi, n), rat_pow(&self.lo, n))
        } else {
            let hi = rat_pow(&self.lo, n).max(rat_pow(&self.hi, n));
            Self::new(Rat::zero(), hi)
        }
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Certainly less-than: every point of self is below every point of rhs.
    pub fn lt(&self, rhs: &Self) -> bool {
        self.hi < rhs.lo
    }

    /// Round the endpoints outward to denominators of at most `bits` bits;
    /// keeps interval arithmetic chains from accumulating huge rationals.
    pub fn coarsen(&self, bits: u32) -> Self {
        Self::new(round_dir(&self.lo, bits, false), round_dir(&self.hi, bits, true))
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64().unwrap_or(f64::NAN)
    }

    /// Natural log of the enclosure; requires a positive interval.
    pub fn ln(&self, err: &Rat) -> Self {
        assert!(self.is_positive(), "log of non-positive interval");
        let half = err / super::rat_from_i64(2);
        let lo = ln_rat(&self.lo, &half);
        let hi = ln_rat(&self.hi, &half);
        Self::new(lo.lo, hi.hi)
    }

    /// Exponential of the enclosure.
    pub fn exp(&self, err: &Rat) -> Self {
        let half = err / super::rat_from_i64(2);
        let lo = exp_rat(&self.lo, &half);
        let hi = exp_rat(&self.hi, &half);
        Self::new(lo.lo, hi.hi)
    }

    /// Real power `self^rhs = exp(rhs * ln self)`, for positive base.
    pub fn pow_interval(&self, rhs: &Self, err: &Rat) -> Self {
        let l = self.ln(err);
        l.mul(rhs).exp(err)
    }

    /// Outward-rounded decimal rendering: (value-string, width-string).
    pub fn decimal(&self, digits: u32) -> (String, String) {
        let mid = super::rat_to_decimal(&self.mid(), digits, false);
        let w = super::rat_to_decimal(&self.width(), digits.max(12), true);
        (mid, w)
    }
}

/// Dyadic rounding of q to denominator 2^bits, directed. Integer ops only:
/// rational constructors would gcd-reduce, which is quadratic on the huge
/// numerators that orbit heights produce.
fn round_dir(q: &Rat, bits: u32, up: bool) -> Rat {
    let num: BigInt = q.numer() << bits;
    let (mut d, r) = num.div_rem(q.denom());
    if !r.is_zero() {
        if up && !num.is_negative() {
            d += 1;
        } else if !up && num.is_negative() {
            d -= 1;
        }
    }
    let tz = d.trailing_zeros().unwrap_or(0).min(bits as u64);
    Rat::new_raw(d >> tz, BigInt::one() << (bits as u64 - tz))
}

/// Certified enclosure of ln(q) for q > 0, of width at most 2*err, via
/// atanh-series with dyadic range reduction: ln q = k ln 2 + ln r, r in [1,2).
pub fn ln_rat(q: &Rat, err: &Rat) -> RatInterval {
    assert!(q.is_positive(), "log of non-positive rational");
    if q.is_one() {
        return RatInterval::point(Rat::zero());
    }
    if q < &Rat::one() {
        return ln_rat(&q.recip(), err).neg();
    }
    // range-reduce by powers of two with shift/new_raw only: every Rat
    // constructor or operator gcd-reduces, which is quadratic on the huge
    // numerators that orbit heights produce
    let mut k: u64 = 0;
    let two = super::rat_from_i64(2);
    let mut r = q.clone();
    let nb = r.numer().bits();
    let db = r.denom().bits();
    if nb > db + 1 {
        let shift = nb - db - 1;
        let tz = r.numer().trailing_zeros().unwrap_or(0).min(shift);
        r = Rat::new_raw(r.numer() >> tz, r.denom() << (shift - tz));
        k = shift;
    }
    while r >= two {
        r = if r.numer().is_even() {
            Rat::new_raw(r.numer() >> 1, r.denom().clone())
        } else {
            Rat::new_raw(r.numer().clone(), r.denom() << 1)
        };
        k += 1;
    }
    // round the reduced argument to bounded precision before the series so
    // the series cost does not depend on the bit size of q; |d ln r| <= dr
    // for r >= 1, so the rounding step is accounted in the budget
    let budget = err / super::rat_from_i64(4);
    let bits = bits_for(&budget);
    let r_lo = round_dir(&r, bits, false).max(Rat::one());
    let r_hi = round_dir(&r, bits, true);
    let enc_lo = ln_small(&r_lo, &budget);
    let enc_hi = ln_small(&r_hi, &budget);
    let mut out = RatInterval::new(enc_lo.lo, enc_hi.hi);
    if k > 0 {
        let per = &budget / super::rat_from_i64(k as i64);
        let l2 = ln_small(&two, &per);
        out = out.add(&l2.mul_rat(&super::rat_from_i64(k as i64)));
    }
    out.coarsen(192)
}

/// Enough dyadic bits that 2^{1-bits} <= err.
fn bits_for(err: &Rat) -> u32 {
    let inv = err.recip();
    let b = (inv.numer().magnitude().bits() as i64 - inv.denom().magnitude().bits() as i64).max(0);
    (b as u32 + 4).min(1 << 20)
}

/// ln(r) for r in [1, 2] by 2*atanh((r-1)/(r+1)).
fn ln_small(r: &Rat, err: &Rat) -> RatInterval {
    let one = Rat::one();
    let u = (r - &one) / (r + &one); // in [0, 1/3]
    if u.is_zero() {
        return RatInterval::point(Rat::zero());
    }
    let u2 = &u * &u;
    let mut term = u.clone(); // u^{2j+1}
    let mut sum = Rat::zero();
    let mut j = 0u64;
    loop {
        sum += &term / super::rat_from_i64((2 * j + 1) as i64);
        term *= &u2;
        j += 1;
        // tail bound: sum_{i>=j} u^{2i+1}/(2i+1) <= u^{2j+1} / (1 - u^2)
        let tail = &term / (&one - &u2);
        if &tail * super::rat_from_i64(2) <= *err {
            let lo = &sum * super::rat_from_i64(2);
            let hi = (&sum + &tail) * super::rat_from_i64(2);
            return RatInterval::new(lo, hi);
        }
    }
}

/// Certified enclosure of exp(q) of width about 2*err, by Taylor series with
/// halving range reduction to |x| <= 1/2.
pub fn exp_rat(q: &Rat, err: &Rat) -> RatInterval {
    if q.is_zero() {
        return RatInterval::point(Rat::one());
    }
    let mut halvings = 0u32;
    let mut x = q.clone();
    let half = super::rat_of(1, 2);
    let two = super::rat_from_i64(2);
    while x.abs() > half {
        x /= &two;
        halvings += 1;
    }
    // Work at tighter tolerance to survive the squarings.
    let mut budget = err.clone();
    for _ in 0..halvings {
        budget /= super::rat_from_i64(8);
    }
    let mut iv = exp_small(&x, &budget);
    for _ in 0..halvings {
        iv = iv.mul(&iv).coarsen(256);
    }
    iv
}

/// exp(x) for |x| <= 1/2 by Taylor series with a geometric tail bound.
fn exp_small(x: &Rat, err: &Rat) -> RatInterval {
    let mut term = Rat::one();
    let mut sum = Rat::one();
    let mut n = 1u64;
    loop {
        term = &term * x / super::rat_from_i64(n as i64);
        sum += &term;
        n += 1;
        // |tail| <= |term| * |x| / (1 - |x|) <= |term| for |x| <= 1/2
        let tail = term.abs();
        if &tail * super::rat_from_i64(2) <= *err {
            return RatInterval::new(&sum - &tail, &sum + &tail);
        }
    }
}

/// Decide `ln(a) cmp (p/q)` exactly-ish: refine an enclosure of ln(a) until
/// it separates from the rational threshold; equality is only possible for
/// a = 1, t = 0 (Lindemann), handled up front.
pub fn cmp_ln_rat(a: &Rat, t: &Rat) -> Result<std::cmp::Ordering> {
    use std::cmp::Ordering;
    assert!(a.is_positive());
    if a.is_one() {
        return Ok(t.cmp(&Rat::zero()).reverse());
    }
    let mut err = super::rat_of(1, 1 << 16);
    for _ in 0..64 {
        let enc = ln_rat(a, &err);
        if &enc.lo > t {
            return Ok(Ordering::Greater);
        }
        if &enc.hi < t {
            return Ok(Ordering::Less);
        }
        err /= super::rat_from_i64(1 << 8);
    }
    Err(Error::Internal(
        "log comparison failed to separate (threshold equals an irrational?)".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat_from_i64, rat_of};

    #[test]
    fn ln2_enclosure() {
        let err = rat_of(1, 1_000_000_000_000i64);
        let l = ln_rat(&rat_from_i64(2), &err);
        // ln 2 = 0.69314718055994...
        assert!(l.contains(&rat_of(693147180559945i64, 1_000_000_000_000_000i64)));
        assert!(l.width() <= &err * rat_from_i64(2));
    }

    #[test]
    fn ln_of_large_and_small() {
        let err = rat_of(1, 1_000_000_000);
        let a = ln_rat(&rat_from_i64(1000), &err);
        assert!(a.contains(&rat_of(6907755279, 1_000_000_000))); // ln 1000 = 6.9077552789..
        let b = ln_rat(&rat_of(1, 3), &err);
        assert!(b.is_negative());
    }

    #[test]
    fn exp_enclosure() {
        let err = rat_of(1, 1_000_000_000);
        // e = 2.718281828459045...
        let e1 = exp_rat(&rat_from_i64(1), &err);
        assert!(e1.lo > rat_of(2718281828, 1_000_000_000));
        assert!(e1.hi < rat_of(2718281829, 1_000_000_000));
        // e^{-2.5} * e^{5/2} = 1 exactly
        let e5 = exp_rat(&rat_of(-5, 2), &err);
        let e5i = exp_rat(&rat_of(5, 2), &err);
        assert!(e5.mul(&e5i).contains(&Rat::one()));
        // e^{-2.5} = 0.08208499862...
        assert!(e5.lo > rat_of(820849986, 10_000_000_000i64));
        assert!(e5.hi < rat_of(820849987, 10_000_000_000i64));
    }

    #[test]
    fn interval_pow() {
        let x = RatInterval::new(rat_of(-2, 1), rat_of(3, 1));
        let sq = x.powi(2);
        assert_eq!(sq.lo, rat_from_i64(0));
        assert_eq!(sq.hi, rat_from_i64(9));
    }

    #[test]
    fn real_power() {
        // 4^{1/2} = 2
        let err = rat_of(1, 1_000_000);
        let b = RatInterval::point(rat_from_i64(4));
        let e = RatInterval::point(rat_of(1, 2));
        let p = b.pow_interval(&e, &err);
        assert!(p.contains(&rat_from_i64(2)));
        assert!(p.width() < rat_of(1, 1000));
    }

    #[test]
    fn ln_comparison() {
        use std::cmp::Ordering;
        // ln 2 vs 79/115 = 0.68695...: ln 2 greater
        assert_eq!(
            cmp_ln_rat(&rat_from_i64(2), &rat_of(79, 115)).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            cmp_ln_rat(&rat_from_i64(2), &rat_of(80, 115)).unwrap(),
            Ordering::Less
        );
    }
}
