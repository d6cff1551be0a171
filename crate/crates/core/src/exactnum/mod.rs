//! Exact arithmetic foundation: arbitrary-precision rationals, univariate and
//! bivariate polynomials over them, quotient-ring (number field) elements,
//! rational interval enclosures of logs/exponentials, and certified real root
//! isolation.

pub mod bipoly;
pub mod interval;
pub mod nf;
pub mod poly;
pub mod roots;

pub use bipoly::BiPoly;
pub use interval::RatInterval;
pub use nf::{cyclotomic, NfElem, NumberField};
pub use poly::UniPoly;
pub use roots::{dominant_root, isolate_real_roots, subdominant_modulus_estimate, RootEnclosure};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator (maintained by `num_rational`).
pub type Rat = BigRational;

/// Coefficient-ring operations shared by rationals, quotient-ring elements,
/// and polynomials over either.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact division: `Some(q)` with `q * rhs == self`, or `None` when `rhs`
    /// does not divide `self` in this ring.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;
}

/// Rings in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }
}

impl Ring for Rat {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if num_traits::Zero::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }
}

impl Field for Rat {
    fn inv(&self) -> Self {
        assert!(!num_traits::Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
}

/// `q^n` for a nonnegative exponent, by binary powering.
pub fn rat_pow(q: &Rat, mut n: u64) -> Rat {
    let mut base = q.clone();
    let mut acc: Rat = One::one();
    while n > 0 {
        if n & 1 == 1 {
            acc *= &base;
        }
        n >>= 1;
        if n > 0 {
            base = &base * &base;
        }
    }
    acc
}

pub fn rat_from_i64(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_of(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parse `p/q` or `p` (optionally signed); also accepts decimal literals like
/// `1.25` and scientific forms like `1e20`, which are exact over the
/// rationals.
pub fn parse_rat(s: &str) -> crate::error::Result<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return Err(crate::error::Error::input("empty rational literal"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| crate::error::Error::input(format!("bad numerator in `{s}`")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| crate::error::Error::input(format!("bad denominator in `{s}`")))?;
        if d.is_zero() {
            return Err(crate::error::Error::input("zero denominator"));
        }
        return Ok(Rat::new(n, d));
    }
    // Scientific / decimal forms.
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e
                .parse()
                .map_err(|_| crate::error::Error::input(format!("bad exponent in `{s}`")))?;
            (m, exp)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = digits
        .parse()
        .map_err(|_| crate::error::Error::input(format!("bad rational literal `{s}`")))?;
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let q = if scale >= 0 {
        Rat::from_integer(n * ten.pow(scale as u32))
    } else {
        Rat::new(n, ten.pow((-scale) as u32))
    };
    Ok(q)
}

/// Render a rational as `p/q` (or `p` when the denominator is one).
pub fn rat_to_string(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Decimal expansion with `digits` places, rounded toward the given
/// direction. Used for outward-rounded interval reporting.
pub fn rat_to_decimal(q: &Rat, digits: u32, round_up: bool) -> String {
    let neg = q.is_negative();
    let a = q.abs();
    let scale = BigInt::from(10).pow(digits);
    let scaled = &a * Rat::from_integer(scale.clone());
    let (tr, rem) = (
        scaled.numer() / scaled.denom(),
        scaled.numer() % scaled.denom(),
    );
    // round away from zero when requested-direction calls for it
    let bump = !rem.is_zero() && (round_up != neg);
    let tr = if bump { tr + 1 } else { tr };
    let whole = &tr / &scale;
    let frac = &tr % &scale;
    let sign = if neg && !(tr.is_zero()) { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac:0>width$}", width = digits as usize)
    }
}
