//! Simultaneous rational approximation with gcd correction: given targets
//! c_1 < ... < c_s, produce integers n_i, m_i, u with
//!   c_i - delta <= n_i/u < c_i < m_i/u <= c_i + delta
//! and gcd(n_1,...,n_s) = 1 = gcd(m_1,...,m_s).
//!
//! Targets are never floats: they are exact rationals or logs of rationals,
//! enclosed to whatever width a strict comparison needs.

use crate::error::{Error, Result};
use crate::exactnum::{interval::ln_rat, rat_from_i64, Rat, RatInterval};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An approximation target: an exact rational or the natural log of one.
#[derive(Clone, Debug)]
pub enum Target {
    Exact(Rat),
    /// ln(q) for a rational q > 1 (degrees of maps enter as Log).
    Log(Rat),
}

impl Target {
    pub fn enclosure(&self, err: &Rat) -> RatInterval {
        match self {
            Target::Exact(q) => RatInterval::point(q.clone()),
            Target::Log(q) => ln_rat(q, err),
        }
    }

    fn is_exactly(&self, q: &Rat) -> bool {
        matches!(self, Target::Exact(t) if t == q)
    }
}

#[derive(Clone, Debug)]
pub struct ApproxResult {
    pub n: Vec<BigUint>,
    pub m: Vec<BigUint>,
    pub u: BigUint,
    pub delta: Rat,
    /// whether n_1 < ... < n_s < m_1 < ... < m_s held (guaranteed for small
    /// delta; recorded rather than assumed)
    pub ordered: bool,
    /// true when the gcd deformation step had to run
    pub deformed: bool,
}

impl ApproxResult {
    /// Exponent lists as machine integers, for the dense root machinery.
    pub fn exponents_u64(&self) -> Result<(Vec<u64>, Vec<u64>, u64)> {
        let conv = |v: &[BigUint]| -> Result<Vec<u64>> {
            v.iter()
                .map(|x| {
                    x.to_u64().ok_or_else(|| {
                        Error::guard("approximation exponents exceed u64; retry with different delta")
                    })
                })
                .collect()
        };
        Ok((
            conv(&self.n)?,
            conv(&self.m)?,
            self.u
                .to_u64()
                .ok_or_else(|| Error::guard("denominator exceeds u64"))?,
        ))
    }
}

fn gcd_list(v: &[BigUint]) -> BigUint {
    v.iter().fold(BigUint::zero(), |a, b| a.gcd(b))
}

/// Strict comparison of k/u against a target, refining log enclosures as
/// needed. Returns Less/Greater; an exact hit is an Err (caller perturbs u).
fn cmp_frac_target(k: &BigUint, u: &BigUint, t: &Target) -> Result<std::cmp::Ordering> {
    use std::cmp::Ordering;
    let q = Rat::new(BigInt::from(k.clone()), BigInt::from(u.clone()));
    match t {
        Target::Exact(c) => match q.cmp(c) {
            Ordering::Equal => Err(Error::Internal("exact hit".into())),
            o => Ok(o),
        },
        Target::Log(base) => {
            // ln(base) is irrational for rational base != 1, so separation
            // always terminates
            crate::exactnum::interval::cmp_ln_rat(base, &q).map(|o| o.reverse())
        }
    }
}

/// The constructive approximation of the lemma: floor/ceil numerators over a
/// base denominator (scanned until both gcd conditions hold), with the
/// v-power deformation as the fallback that restores gcd 1.
pub fn approximate_with_gcd(targets: &[Target], delta: &Rat) -> Result<ApproxResult> {
    if targets.len() < 2 {
        return Err(Error::precondition(
            "need at least two targets: with s = 1 the gcd condition forces m_1 = 1, \
             incompatible with condition (1); single-map counting uses canonical heights",
        ));
    }
    if !delta.is_positive() {
        return Err(Error::precondition("delta must be positive"));
    }
    // enclose targets to width < delta/4 and check ordering/positivity
    let err = delta / rat_from_i64(8);
    let encs: Vec<RatInterval> = targets.iter().map(|t| t.enclosure(&err)).collect();
    for e in &encs {
        if !e.is_positive() {
            return Err(Error::precondition("targets must be positive"));
        }
    }
    for w in encs.windows(2) {
        if !(w[0].hi < w[1].lo) {
            return Err(Error::precondition(
                "targets must be strictly increasing and separated beyond enclosure width",
            ));
        }
    }

    // base denominator: large enough that floor/ceil numerators satisfy the
    // delta window; then scan for simultaneous gcd 1
    let four = rat_from_i64(4);
    let u0 = (&four / delta).ceil().to_integer().to_biguint().unwrap();
    let mut u = u0;
    let mut tries = 0usize;
    loop {
        if let Some((n, m)) = base_numerators(targets, &encs, &u)? {
            let gn = gcd_list(&n);
            let gm = gcd_list(&m);
            if gn.is_one() && gm.is_one() {
                return finish(targets, n, m, u, delta, false);
            }
            if tries >= 64 {
                // fall back on the v-power deformation
                let (n2, m2, u2) = deform(targets, &n, &m, &u)?;
                return finish(targets, n2, m2, u2, delta, true);
            }
        }
        u += BigUint::one();
        tries += 1;
        if tries > 100_000 {
            return Err(Error::Internal("base denominator scan did not terminate".into()));
        }
    }
}

/// For a candidate u, the strict floor/ceil numerators, or None when some
/// target is hit exactly by k/u (perturb u instead).
fn base_numerators(
    targets: &[Target],
    encs: &[RatInterval],
    u: &BigUint,
) -> Result<Option<(Vec<BigUint>, Vec<BigUint>)>> {
    let uq = Rat::from_integer(BigInt::from(u.clone()));
    let mut n = vec![];
    let mut m = vec![];
    for (t, e) in targets.iter().zip(encs) {
        // start from the enclosure floor and fix up with strict comparisons
        let lo = (&e.lo * &uq).floor().to_integer();
        let mut k = lo.to_biguint().unwrap_or_default();
        // largest k with k/u < c
        loop {
            let next = &k + BigUint::one();
            match cmp_frac_target(&next, u, t) {
                Ok(std::cmp::Ordering::Less) => k = next,
                Ok(_) => break,
                Err(_) => return Ok(None), // exact hit
            }
        }
        if k.is_zero() {
            return Err(Error::precondition(
                "target smaller than 1/u; delta too large relative to the smallest target",
            ));
        }
        let k1 = &k + BigUint::one();
        if t.is_exactly(&Rat::new(BigInt::from(k1.clone()), BigInt::from(u.clone()))) {
            return Ok(None);
        }
        n.push(k);
        m.push(k1);
    }
    Ok(Some((n, m)))
}

/// The lemma's deformation: v = (n_2 ... n_s m_2 ... m_s u)^r with
/// n_1' = n_1 v + 1, m_1' = m_1 v + 1, others scaled by v; r grows until
/// condition (1) holds again. Restores both gcds to 1.
fn deform(
    targets: &[Target],
    n: &[BigUint],
    m: &[BigUint],
    u: &BigUint,
) -> Result<(Vec<BigUint>, Vec<BigUint>, BigUint)> {
    let mut base = BigUint::one();
    for x in n.iter().skip(1).chain(m.iter().skip(1)) {
        base *= x;
    }
    base *= u;
    let mut v = base.clone();
    for _ in 0..64 {
        let u2 = u * &v;
        let mut n2: Vec<BigUint> = n.iter().map(|x| x * &v).collect();
        let mut m2: Vec<BigUint> = m.iter().map(|x| x * &v).collect();
        n2[0] += BigUint::one();
        m2[0] += BigUint::one();
        // n_1'/u' = n_1/u + 1/v moved up: recheck strictness on index 1 only
        let ok = matches!(
            cmp_frac_target(&n2[0], &u2, &targets[0]),
            Ok(std::cmp::Ordering::Less)
        ) && matches!(
            cmp_frac_target(&m2[0], &u2, &targets[0]),
            Ok(std::cmp::Ordering::Greater)
        );
        if ok {
            debug_assert!(gcd_list(&n2).is_one() && gcd_list(&m2).is_one());
            return Ok((n2, m2, u2));
        }
        v *= &base;
    }
    Err(Error::Internal("gcd deformation did not stabilize".into()))
}

fn finish(
    targets: &[Target],
    n: Vec<BigUint>,
    m: Vec<BigUint>,
    u: BigUint,
    delta: &Rat,
    deformed: bool,
) -> Result<ApproxResult> {
    let res = ApproxResult {
        ordered: n.windows(2).all(|w| w[0] < w[1])
            && m.windows(2).all(|w| w[0] < w[1])
            && n.last() < m.first(),
        n,
        m,
        u,
        delta: delta.clone(),
        deformed,
    };
    verify(targets, &res)?;
    Ok(res)
}

/// Re-verify every lemma condition on the final list with exact arithmetic.
pub fn verify(targets: &[Target], r: &ApproxResult) -> Result<()> {
    if !gcd_list(&r.n).is_one() || !gcd_list(&r.m).is_one() {
        return Err(Error::Internal("gcd condition failed".into()));
    }
    let uq = Rat::from_integer(BigInt::from(r.u.clone()));
    for ((t, n), m) in targets.iter().zip(&r.n).zip(&r.m) {
        let nq = Rat::new(BigInt::from(n.clone()), uq.numer().clone());
        let mq = Rat::new(BigInt::from(m.clone()), uq.numer().clone());
        if !matches!(
            cmp_frac_target(n, &r.u, t),
            Ok(std::cmp::Ordering::Less)
        ) || !matches!(
            cmp_frac_target(m, &r.u, t),
            Ok(std::cmp::Ordering::Greater)
        ) {
            return Err(Error::Internal("strict sandwich failed".into()));
        }
        // window condition against enclosures tight enough for delta/8
        let err = &r.delta / rat_from_i64(8);
        let e = t.enclosure(&err);
        if &e.hi - &nq > r.delta || &mq - &e.lo > r.delta {
            return Err(Error::Internal("delta window failed".into()));
        }
    }
    Ok(())
}

/// Validate externally supplied fractions (like the worked example's
/// 79/115 < log 2 < 80/115, 126/115 < log 3 < 127/115) and wrap them.
pub fn from_supplied(
    targets: &[Target],
    n: Vec<u64>,
    m: Vec<u64>,
    u: u64,
    delta: &Rat,
) -> Result<ApproxResult> {
    let r = ApproxResult {
        ordered: n.windows(2).all(|w| w[0] < w[1])
            && m.windows(2).all(|w| w[0] < w[1])
            && n.last() < m.first(),
        n: n.into_iter().map(BigUint::from).collect(),
        m: m.into_iter().map(BigUint::from).collect(),
        u: BigUint::from(u),
        delta: delta.clone(),
        deformed: false,
    };
    verify(targets, &r)?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat_of;

    fn log_targets() -> Vec<Target> {
        vec![Target::Log(rat_from_i64(2)), Target::Log(rat_from_i64(3))]
    }

    #[test]
    fn supplied_example_fractions_pass() {
        // gcd(79,126) = 1 and gcd(80,127) = 1: accepted unchanged
        let r = from_supplied(
            &log_targets(),
            vec![79, 126],
            vec![80, 127],
            115,
            &rat_of(1, 100),
        )
        .unwrap();
        assert!(!r.deformed);
        assert!(r.ordered);
        // a wrong sandwich is rejected
        assert!(from_supplied(
            &log_targets(),
            vec![80, 126],
            vec![81, 127],
            115,
            &rat_of(1, 100),
        )
        .is_err());
    }

    #[test]
    fn hand_example() {
        // c = (3/2, 5/2), delta = 0.3: some valid list; also check u = 4
        // against the hand-verified one
        let targets = vec![Target::Exact(rat_of(3, 2)), Target::Exact(rat_of(5, 2))];
        let r = approximate_with_gcd(&targets, &rat_of(3, 10)).unwrap();
        verify(&targets, &r).unwrap();
        let hand = from_supplied(&targets, vec![5, 9], vec![7, 11], 4, &rat_of(3, 10));
        assert!(hand.is_ok());
    }

    #[test]
    fn log_targets_small_delta() {
        let targets = log_targets();
        let r = approximate_with_gcd(&targets, &rat_of(1, 200)).unwrap();
        verify(&targets, &r).unwrap();
        assert!(r.ordered, "rem-extra ordering expected for small delta");
    }

    #[test]
    fn s_equals_one_rejected() {
        assert!(approximate_with_gcd(&[Target::Log(rat_from_i64(2))], &rat_of(1, 10)).is_err());
    }

    #[test]
    fn monotone_refinement() {
        // shrinking delta never invalidates: a fresh run succeeds each time
        let targets = log_targets();
        let mut d = rat_of(1, 10);
        for _ in 0..6 {
            let r = approximate_with_gcd(&targets, &d).unwrap();
            verify(&targets, &r).unwrap();
            d /= rat_from_i64(4);
        }
    }

    #[test]
    fn random_target_sets() {
        // deterministic pseudo-random rational target sets, exact checks
        let mut state = 0x243f6a8885a308d3u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for case in 0..1000 {
            let s = 2 + (next() % 3) as usize;
            let mut vals: Vec<Rat> = (0..s)
                .map(|_| {
                    let num = 1 + (next() % 400);
                    let den = 1 + (next() % 40);
                    Rat::new(BigInt::from(num), BigInt::from(den))
                })
                .collect();
            vals.sort();
            vals.dedup();
            if vals.len() < 2 {
                continue;
            }
            let targets: Vec<Target> = vals.into_iter().map(Target::Exact).collect();
            let delta = rat_of(1, 16 + (next() % 64) as i64);
            match approximate_with_gcd(&targets, &delta) {
                Ok(r) => verify(&targets, &r).unwrap(),
                Err(Error::Precondition(_)) => {} // targets too close for delta
                Err(e) => panic!("case {case}: unexpected {e}"),
            }
        }
    }
}
