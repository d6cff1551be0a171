//! Certified real root isolation over the rationals: Sturm chains with exact
//! endpoint arithmetic, bisection refinement, and the dominant-root machinery
//! for composition generating function denominators 1 - sum z^{n_i}.

use super::{rat_from_i64, rat_of, rat_pow, Rat, RatInterval, UniPoly};
use crate::error::{Error, Result};
use num_traits::{Signed, ToPrimitive, Zero};

/// An isolating interval [lo, hi] for a single real root of `factor` (a
/// squarefree polynomial vanishing simply there); the enclosed root has the
/// stated multiplicity in the original polynomial. Refinable on demand.
#[derive(Clone, Debug)]
pub struct RootEnclosure {
    pub lo: Rat,
    pub hi: Rat,
    pub multiplicity: usize,
    factor: UniPoly<Rat>,
}

impl RootEnclosure {
    pub fn interval(&self) -> RatInterval {
        RatInterval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    /// Shrink the enclosure by sign-change bisection until it is narrower
    /// than `width`. The squarefree factor changes sign across the root, so
    /// plain bisection certifies every step.
    pub fn refine_to(&mut self, width: &Rat) {
        let two = rat_from_i64(2);
        let mut flo = self.factor.eval(&self.lo);
        if flo.is_zero() {
            // exact rational root at the left endpoint
            self.hi = self.lo.clone();
            return;
        }
        while self.width() > *width {
            let mid = (&self.lo + &self.hi) / &two;
            let fm = self.factor.eval(&mid);
            if fm.is_zero() {
                // rational root hit exactly: collapse around it
                self.lo = mid.clone();
                self.hi = mid;
                return;
            }
            if (fm.is_negative() && flo.is_negative()) || (fm.is_positive() && flo.is_positive()) {
                self.lo = mid;
                flo = fm;
            } else {
                self.hi = mid;
            }
        }
    }

    pub fn refined(mut self, width: &Rat) -> Self {
        self.refine_to(width);
        self
    }

    /// Evaluate a polynomial over the enclosure as an interval.
    pub fn eval_interval(&self, p: &UniPoly<Rat>) -> RatInterval {
        eval_on_interval(p, &self.interval())
    }
}

/// Interval evaluation by Horner with interval coefficients.
pub fn eval_on_interval(p: &UniPoly<Rat>, x: &RatInterval) -> RatInterval {
    let mut acc = RatInterval::point(Rat::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add(&RatInterval::point(c.clone()));
    }
    acc
}

fn sign(q: &Rat) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Sturm chain of a squarefree polynomial.
fn sturm_chain(p: &UniPoly<Rat>) -> Vec<UniPoly<Rat>> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            return chain;
        }
        if chain[n - 1].is_constant() {
            return chain;
        }
        let (_, r) = chain[n - 2].divrem(&chain[n - 1]).expect("field division");
        chain.push(r.neg());
    }
}

fn sign_variations(chain: &[UniPoly<Rat>], x: &Rat) -> usize {
    let mut count = 0;
    let mut last = 0;
    for p in chain {
        let s = sign(&p.eval(x));
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots of the (squarefree) chain head in (a, b].
fn roots_in(chain: &[UniPoly<Rat>], a: &Rat, b: &Rat) -> usize {
    sign_variations(chain, a) - sign_variations(chain, b)
}

/// A bound M such that all real roots lie in (-M, M): Cauchy's bound.
pub fn root_bound(p: &UniPoly<Rat>) -> Rat {
    let lc = p.leading_coeff();
    let mut m = Rat::zero();
    for c in p.coeffs() {
        let q = (c / &lc).abs();
        if q > m {
            m = q;
        }
    }
    m + rat_from_i64(1)
}

/// Isolate all real roots of `p` in the open interval (lo, hi), returning
/// disjoint enclosures with multiplicities, sorted by position.
pub fn isolate_real_roots(p: &UniPoly<Rat>, lo: &Rat, hi: &Rat) -> Vec<RootEnclosure> {
    assert!(!p.is_zero(), "root isolation of the zero polynomial");
    if p.deg_i() == 0 {
        return vec![];
    }
    let mut out: Vec<RootEnclosure> = vec![];
    for (factor, mult) in p.squarefree_decomposition() {
        let chain = sturm_chain(&factor);
        // nudge endpoints inward if they are roots, to make (lo, hi) open
        let mut a = lo.clone();
        let mut b = hi.clone();
        let step = (&b - &a) / rat_from_i64(1 << 20);
        while factor.eval(&a).is_zero() {
            a += &step;
        }
        while factor.eval(&b).is_zero() {
            b -= &step;
        }
        let mut stack = vec![(a, b)];
        while let Some((a, b)) = stack.pop() {
            let n = roots_in(&chain, &a, &b);
            if n == 0 {
                continue;
            }
            if n == 1 {
                out.push(RootEnclosure {
                    lo: a,
                    hi: b,
                    multiplicity: mult,
                    factor: factor.clone(),
                });
                continue;
            }
            let mid = (&a + &b) / rat_from_i64(2);
            if factor.eval(&mid).is_zero() {
                out.push(RootEnclosure {
                    lo: mid.clone(),
                    hi: mid.clone(),
                    multiplicity: mult,
                    factor: factor.clone(),
                });
                // exclude the exact root from both halves
                let eps = (&b - &a) / rat_from_i64(1 << 20);
                stack.push((a, &mid - &eps));
                stack.push((&mid + &eps, b));
            } else {
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
    }
    // shrink until pairwise disjoint, then sort
    let target = out
        .iter()
        .map(|e| e.width())
        .filter(|w| w.is_positive())
        .min()
        .unwrap_or_else(|| rat_of(1, 64));
    let mut target = target;
    loop {
        let mut ivs: Vec<(Rat, Rat)> = out.iter().map(|e| (e.lo.clone(), e.hi.clone())).collect();
        ivs.sort();
        let disjoint = ivs.windows(2).all(|w| w[0].1 < w[1].0);
        if disjoint {
            break;
        }
        target /= rat_from_i64(4);
        for e in out.iter_mut() {
            e.refine_to(&target);
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Build g(z) = 1 - sum_i z^{n_i} as a dense polynomial.
pub fn composition_denominator(exponents: &[u64]) -> UniPoly<Rat> {
    let deg = *exponents.iter().max().unwrap_or(&0) as usize;
    let mut v = vec![Rat::zero(); deg + 1];
    v[0] = Rat::from_integer(1.into());
    for &n in exponents {
        v[n as usize] = &v[n as usize] - Rat::from_integer(1.into());
    }
    UniPoly::new(v)
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Sparse exact evaluation of g(z) = 1 - sum z^{n_i}.
fn eval_g(exponents: &[u64], z: &Rat) -> Rat {
    let mut acc = Rat::from_integer(1.into());
    for &n in exponents {
        acc -= rat_pow(z, n);
    }
    acc
}

/// The unique smallest-modulus root of g(z) = 1 - sum z^{n_i}: the positive
/// real root in (0,1), certified by bisection on the strictly decreasing g.
/// Requires at least two exponents with gcd one, which is what guarantees
/// dominance and simplicity of the root.
pub fn dominant_root(exponents: &[u64], width: &Rat) -> Result<RootEnclosure> {
    if exponents.len() < 2 {
        return Err(Error::precondition(
            "dominant root needs at least two exponents; single-map counting goes through canonical heights",
        ));
    }
    let mut sorted = exponents.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != exponents.len() {
        return Err(Error::precondition("exponents must be distinct"));
    }
    if sorted.iter().any(|&n| n == 0) {
        return Err(Error::precondition("exponents must be positive"));
    }
    let g = sorted.iter().copied().fold(0u64, gcd_u64);
    if g != 1 {
        return Err(Error::precondition(format!(
            "exponent gcd is {g}, not 1; the smallest-modulus root is not unique"
        )));
    }
    // g(0) = 1 > 0 > g(1) = 1 - s; bisect
    let mut lo = Rat::zero();
    let mut hi = Rat::from_integer(1.into());
    let two = rat_from_i64(2);
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        let v = eval_g(&sorted, &mid);
        if v.is_positive() {
            lo = mid;
        } else if v.is_negative() {
            hi = mid;
        } else {
            // rational root of the trinomial-like g: cannot happen for gcd 1
            // with >= 2 terms except contrived inputs; collapse anyway
            lo = mid.clone();
            hi = mid;
            break;
        }
    }
    Ok(RootEnclosure {
        lo,
        hi,
        multiplicity: 1,
        factor: composition_denominator(&sorted),
    })
}

/// Best-effort estimate of the second-smallest root modulus of g, by a
/// complex Durand-Kerner solve of the polynomial deflated at the certified
/// dominant root. Diagnostics only; no certification.
pub fn subdominant_modulus_estimate(exponents: &[u64], dominant: &RootEnclosure) -> f64 {
    let g = composition_denominator(exponents);
    let coeffs: Vec<f64> = g
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(0.0))
        .collect();
    let alpha = dominant.interval().to_f64();
    // synthetic deflation by (z - alpha)
    let n = coeffs.len() - 1;
    let mut q = vec![0.0f64; n];
    let mut carry = coeffs[n];
    for k in (0..n).rev() {
        q[k] = carry;
        carry = coeffs[k] + carry * alpha;
    }
    let roots = durand_kerner(&q);
    roots
        .into_iter()
        .map(|(re, im)| (re * re + im * im).sqrt())
        .fold(f64::INFINITY, f64::min)
}

/// All residue magnitudes -1/(r g'(r)) over the numerically found roots,
/// paired with the root moduli; diagnostic input for remainder constants.
pub fn residue_profile(exponents: &[u64]) -> Vec<(f64, f64)> {
    let g = composition_denominator(exponents);
    let dg = g.derivative();
    let coeffs: Vec<f64> = g.coeffs().iter().map(|c| c.to_f64().unwrap_or(0.0)).collect();
    let roots = durand_kerner(&coeffs[..]);
    roots
        .into_iter()
        .map(|(re, im)| {
            let modulus = (re * re + im * im).sqrt();
            let (dre, dim) = eval_complex(&dg, re, im);
            // -1/(r g'(r))
            let (pre, pim) = complex_mul(re, im, dre, dim);
            let den = pre * pre + pim * pim;
            let mag = if den > 0.0 { 1.0 / den.sqrt() } else { f64::INFINITY };
            (modulus, mag)
        })
        .collect()
}

fn eval_complex(p: &UniPoly<Rat>, re: f64, im: f64) -> (f64, f64) {
    let mut are = 0.0;
    let mut aim = 0.0;
    for c in p.coeffs().iter().rev() {
        let (nre, nim) = complex_mul(are, aim, re, im);
        are = nre + c.to_f64().unwrap_or(0.0);
        aim = nim;
    }
    (are, aim)
}

fn complex_mul(a: f64, b: f64, c: f64, d: f64) -> (f64, f64) {
    (a * c - b * d, a * d + b * c)
}

/// Durand-Kerner iteration on monic-normalized coefficients (ascending).
fn durand_kerner(coeffs: &[f64]) -> Vec<(f64, f64)> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().map(|c| c.abs() < 1e-300).unwrap_or(false) {
        coeffs.pop();
    }
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return vec![];
    }
    let lc = coeffs[n];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lc).collect();
    // distinct non-real starting points
    let mut roots: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            let r = 1.0 + 0.05 * (k as f64) / (n as f64);
            (r * theta.cos(), r * theta.sin())
        })
        .collect();
    for _ in 0..400 {
        let mut delta_max = 0.0f64;
        for i in 0..n {
            let (re, im) = roots[i];
            let (mut pre, mut pim) = (0.0, 0.0);
            // evaluate monic polynomial at roots[i]
            for c in monic.iter().rev() {
                let (nre, nim) = complex_mul(pre, pim, re, im);
                pre = nre + c;
                pim = nim;
            }
            // denominator: prod_{j != i} (x_i - x_j)
            let (mut dre, mut dim) = (1.0, 0.0);
            for (j, &(rj, ij)) in roots.iter().enumerate() {
                if j != i {
                    let (nre, nim) = complex_mul(dre, dim, re - rj, im - ij);
                    dre = nre;
                    dim = nim;
                }
            }
            let den = dre * dre + dim * dim;
            if den == 0.0 {
                continue;
            }
            let qre = (pre * dre + pim * dim) / den;
            let qim = (pim * dre - pre * dim) / den;
            roots[i] = (re - qre, im - qim);
            delta_max = delta_max.max((qre * qre + qim * qim).sqrt());
        }
        if delta_max < 1e-13 {
            break;
        }
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat_of;

    fn p(coeffs: &[i64]) -> UniPoly<Rat> {
        UniPoly::new(coeffs.iter().map(|&c| rat_from_i64(c)).collect())
    }

    #[test]
    fn isolate_linear() {
        // z - 1 on (0, 2)
        let roots = isolate_real_roots(&p(&[-1, 1]), &Rat::zero(), &rat_from_i64(2));
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity, 1);
        let r = roots[0].clone().refined(&rat_of(1, 1000));
        assert!(r.lo <= Rat::from_integer(1.into()) && Rat::from_integer(1.into()) <= r.hi);
    }

    #[test]
    fn isolate_golden_ratio_conjugate() {
        // 1 - z - z^2 on (0,1): root (sqrt5 - 1)/2 = 0.6180339887...
        let roots = isolate_real_roots(&p(&[1, -1, -1]), &Rat::zero(), &Rat::from_integer(1.into()));
        assert_eq!(roots.len(), 1);
        let r = roots[0].clone().refined(&rat_of(1, 10_000_000_000i64));
        let target = rat_of(6180339887, 10_000_000_000i64);
        assert!(r.lo <= target && target <= r.hi);
    }

    #[test]
    fn isolate_with_multiplicity() {
        // (x-1)^2 (x+3)
        let f = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[3, 1]));
        let roots = isolate_real_roots(&f, &rat_from_i64(-10), &rat_from_i64(10));
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].multiplicity, 1); // -3
        assert_eq!(roots[1].multiplicity, 2); // 1
    }

    #[test]
    fn dominant_root_23() {
        // 1 - z^2 - z^3: root 0.7548776662...
        let w = rat_of(1, 1_000_000_000_000i64);
        let r = dominant_root(&[2, 3], &w).unwrap();
        // root = 0.7548776662466927...
        assert!(r.lo > rat_of(7548776662, 10_000_000_000i64));
        assert!(r.hi < rat_of(7548776663, 10_000_000_000i64));
        assert!(r.width() <= w);
        assert_eq!(r.multiplicity, 1);
        // sign bracket: g decreasing through the root
        assert!(eval_g(&[2, 3], &r.lo).is_positive());
        assert!(eval_g(&[2, 3], &r.hi).is_negative());
    }

    #[test]
    fn dominant_root_preconditions() {
        let w = rat_of(1, 1024);
        assert!(dominant_root(&[2, 4], &w).is_err()); // gcd 2
        assert!(dominant_root(&[3], &w).is_err()); // single exponent
        assert!(dominant_root(&[1, 2], &w).is_ok());
    }

    #[test]
    fn subdominant_estimates() {
        let w = rat_of(1, 1 << 40);
        // {1,2}: other root -(sqrt5+1)/2, modulus 1.6180...
        let d = dominant_root(&[1, 2], &w).unwrap();
        let m = subdominant_modulus_estimate(&[1, 2], &d);
        assert!((m - 1.6180339887).abs() < 1e-6);
        // {2,3}: complex pair of modulus ~1.1509
        let d = dominant_root(&[2, 3], &w).unwrap();
        let m = subdominant_modulus_estimate(&[2, 3], &d);
        assert!((m - 1.1509).abs() < 1e-3);
    }
}
