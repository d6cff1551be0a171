//! Dense univariate polynomials over a generic coefficient ring, with the
//! exact kernels everything else is built on: division, gcd, resultants,
//! discriminants and squarefree decomposition.

use super::{Field, Rat, Ring};
use crate::error::{Error, Result};

/// Coefficients in ascending degree; no trailing zeros. The zero polynomial
/// is the empty vector and has degree `None` (the -infinity sentinel).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<C: Ring> {
    coeffs: Vec<C>,
}

impl<C: Ring> std::fmt::Debug for UniPoly<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "UniPoly{:?}", self.coeffs)
    }
}

impl<C: Ring> UniPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: C, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![C::zero(); k + 1];
        v[k] = c;
        UniPoly { coeffs: v }
    }

    pub fn var() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree with the zero polynomial mapped to -1; convenient in loops.
    pub fn deg_i(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> C {
        self.coeffs.last().cloned().unwrap_or_else(C::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i).add(&rhs.coeff(i)));
        }
        Self::new(v)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i).sub(&rhs.coeff(i)));
        }
        Self::new(v)
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut v = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        Self::new(v)
    }

    pub fn mul_scalar(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// `self(g(x))` by Horner composition.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Self::constant(c.clone()));
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let mut v = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            let mut k = C::zero();
            for _ in 0..i {
                k = k.add(&C::one());
            }
            v.push(c.mul(&k));
        }
        Self::new(v)
    }

    /// Map the coefficients into another ring.
    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> UniPoly<D> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    /// Exponents of the nonzero coefficients.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Quotient and remainder; `None` when a leading-coefficient division is
    /// not exact in the coefficient ring (never over a field with nonzero
    /// divisor).
    pub fn divrem(&self, d: &Self) -> Option<(Self, Self)> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lc = d.leading_coeff();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd && !(rem.len() == dd && dd == 0) {
            if rem.len() < d.coeffs.len() {
                return Some((Self::zero(), self.clone()));
            }
        }
        let mut quot = vec![C::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() >= d.coeffs.len() && !rem.is_empty() {
            let k = rem.len() - d.coeffs.len();
            let q = rem.last().unwrap().exact_div(&lc)?;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].sub(&q.mul(dc));
            }
            quot[k] = q;
            while rem.last().map(|c| c.is_zero()).unwrap_or(false) {
                rem.pop();
            }
            if rem.len() > k + d.coeffs.len() - 1 {
                // degree did not drop: leading subtraction must cancel
                return None;
            }
        }
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Exact polynomial division, reporting non-divisibility as an error.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::NonExactDivision("division by zero polynomial".into()));
        }
        match self.divrem(d) {
            Some((q, r)) if r.is_zero() => Ok(q),
            _ => Err(Error::NonExactDivision(
                "polynomial does not divide evenly".into(),
            )),
        }
    }
}

impl<C: Field> UniPoly<C> {
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading_coeff().inv();
        self.mul_scalar(&inv)
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("field division");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Resultant via the Euclidean remainder sequence.
    pub fn resultant(&self, other: &Self) -> C {
        let mut a = self.clone();
        let mut b = other.clone();
        if a.is_zero() || b.is_zero() {
            // Res(f, 0) = 0 unless both are (nonzero) constants.
            return C::zero();
        }
        let mut acc = C::one();
        let mut negate = false;
        while b.deg_i() > 0 {
            let (_, r) = a.divrem(&b).expect("field division");
            if r.is_zero() {
                return C::zero();
            }
            // res(a,b) = (-1)^{deg a * deg b} * lc(b)^{deg a - deg r} * res(b, r)
            if (a.deg_i() * b.deg_i()) % 2 == 1 {
                negate = !negate;
            }
            let e = (a.deg_i() - r.deg_i()) as u64;
            acc = acc.mul(&ring_pow(&b.leading_coeff(), e));
            a = b;
            b = r;
        }
        // b is a nonzero constant now: res(a, c) = c^{deg a}
        let tail = ring_pow(&b.leading_coeff(), a.deg_i().max(0) as u64);
        let out = acc.mul(&tail);
        if negate {
            out.neg()
        } else {
            out
        }
    }

    /// disc(f) = (-1)^{d(d-1)/2} res(f, f') / lc(f).
    pub fn discriminant(&self) -> C {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return C::zero(),
        };
        let r = self.resultant(&self.derivative());
        let s = d * (d - 1) / 2;
        let r = r.exact_div(&self.leading_coeff()).expect("lc divides");
        if s % 2 == 1 {
            r.neg()
        } else {
            r
        }
    }

    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() || self.deg_i() == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Yun squarefree decomposition: returns `(factor, multiplicity)` pairs
    /// with the factors monic, squarefree and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = vec![];
        if self.deg_i() <= 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.exact_div(&a).expect("divides");
        let mut c = df.exact_div(&a).expect("divides");
        let mut i = 1usize;
        loop {
            let d = c.sub(&b.derivative());
            if b.deg_i() <= 0 {
                break;
            }
            let g = b.gcd(&d);
            if g.deg_i() > 0 {
                out.push((g.clone(), i));
            }
            b = b.exact_div(&g).expect("divides");
            c = d.exact_div(&g).expect("divides");
            i += 1;
            let _ = &a;
            a = g;
        }
        out
    }

    /// Lagrange interpolation through `(x_i, y_i)` with distinct `x_i`.
    pub fn interpolate(points: &[(C, C)]) -> Self {
        let mut acc = Self::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut num = Self::one();
            let mut den = C::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                num = num.mul(&Self::new(vec![xj.neg(), C::one()]));
                den = den.mul(&xi.sub(xj));
            }
            acc = acc.add(&num.mul_scalar(&yi.mul(&den.inv())));
        }
        acc
    }
}

fn ring_pow<C: Ring>(c: &C, mut n: u64) -> C {
    let mut base = c.clone();
    let mut acc = C::one();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc.mul(&base);
        }
        n >>= 1;
        if n > 0 {
            base = base.mul(&base);
        }
    }
    acc
}

impl<C: Ring> Ring for UniPoly<C> {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn one() -> Self {
        UniPoly::one()
    }
    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        UniPoly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        UniPoly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        UniPoly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        UniPoly::neg(self)
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        match self.divrem(rhs) {
            Some((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }
}

impl UniPoly<Rat> {
    /// Compose with `x + t`: the Taylor shift `f(x + t)`.
    pub fn shift(&self, t: &Rat) -> Self {
        self.compose(&UniPoly::new(vec![t.clone(), super::Rat::from_integer(1.into())]))
    }

    /// Parse `c0 + c1*x + c2*x^2` style text with `p/q` coefficients. Terms
    /// may appear in any order; `-` is accepted between terms.
    pub fn parse(s: &str) -> Result<Self> {
        let mut terms: Vec<(usize, Rat)> = vec![];
        let normalized = s.replace('-', "+-").replace("^+-", "^-").replace("e+-", "e-");
        for raw in normalized.split('+') {
            let term = raw.trim();
            if term.is_empty() {
                continue;
            }
            let (coeff_str, exp) = match term.split_once(['x', 'X']) {
                None => (term, 0usize),
                Some((c, rest)) => {
                    let rest = rest.trim();
                    let exp = if rest.is_empty() {
                        1
                    } else {
                        let e = rest
                            .strip_prefix('^')
                            .ok_or_else(|| Error::input(format!("bad term `{term}`")))?;
                        e.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::input(format!("bad exponent in `{term}`")))?
                    };
                    (c.trim().trim_end_matches('*').trim(), exp)
                }
            };
            let coeff = if coeff_str.is_empty() {
                Rat::from_integer(1.into())
            } else if coeff_str == "-" {
                -Rat::from_integer(1.into())
            } else {
                super::parse_rat(coeff_str)?
            };
            terms.push((exp, coeff));
        }
        let deg = terms.iter().map(|(e, _)| *e).max().unwrap_or(0);
        let mut v = vec![<Rat as Ring>::zero(); deg + 1];
        for (e, c) in terms {
            v[e] = &v[e] + c;
        }
        Ok(Self::new(v))
    }
}

impl std::fmt::Display for UniPoly<Rat> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if Ring::is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = super::rat_to_string(c);
            match i {
                0 => write!(f, "{cs}")?,
                1 if cs == "1" => write!(f, "x")?,
                1 => write!(f, "{cs}*x")?,
                _ if cs == "1" => write!(f, "x^{i}")?,
                _ => write!(f, "{cs}*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat_from_i64, rat_of};

    fn p(coeffs: &[i64]) -> UniPoly<Rat> {
        UniPoly::new(coeffs.iter().map(|&c| rat_from_i64(c)).collect())
    }

    #[test]
    fn zero_degree_sentinel() {
        assert_eq!(p(&[]).degree(), None);
        assert_eq!(p(&[0]).degree(), None);
        assert_eq!(p(&[5]).degree(), Some(0));
        assert_eq!(p(&[0, 0, 1]).degree(), Some(2));
    }

    #[test]
    fn divrem_roundtrip() {
        let f = p(&[2, 0, -3, 1, 4]);
        let d = p(&[1, 2, 1]);
        let (q, r) = f.divrem(&d).unwrap();
        assert_eq!(q.mul(&d).add(&r), f);
        assert!(r.deg_i() < d.deg_i());
    }

    #[test]
    fn gcd_shared_root() {
        // gcd(x^2 - 1, x^2 - 2x + 1) = x - 1
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, -2, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn exact_div_difference_of_squares() {
        // (x^2 - y^2)/(x - y) in one variable: (x^2 - 4)/(x - 2) = x + 2
        let f = p(&[-4, 0, 1]);
        let d = p(&[-2, 1]);
        assert_eq!(f.exact_div(&d).unwrap(), p(&[2, 1]));
        assert!(p(&[1, 0, 1]).exact_div(&d).is_err());
    }

    #[test]
    fn quadratic_discriminant() {
        // disc(x^2 + bx + c) = b^2 - 4c
        let f = p(&[7, 3, 1]);
        assert_eq!(f.discriminant(), rat_from_i64(9 - 28));
    }

    #[test]
    fn trinomial_discriminant_nonzero() {
        // 1 - z^2 - z^3 has nonzero discriminant
        let f = p(&[1, 0, -1, -1]);
        assert!(!Ring::is_zero(&f.discriminant()));
    }

    #[test]
    fn resultant_detects_common_factor() {
        let a = p(&[-1, 1]); // x - 1
        let f = p(&[2, 1]).mul(&a);
        let g = p(&[5, 0, 1]).mul(&a);
        assert!(Ring::is_zero(&f.resultant(&g)));
        let h = p(&[1, 1]);
        assert!(!Ring::is_zero(&f.resultant(&h)));
    }

    #[test]
    fn squarefree_decomposition_multiplicities() {
        // (x-1)^2 (x+2)^3
        let f = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[2, 1])).mul(&p(&[2, 1])).mul(&p(&[2, 1]));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0], (p(&[-1, 1]), 2));
        assert_eq!(dec[1], (p(&[2, 1]), 3));
    }

    #[test]
    fn parse_display_roundtrip() {
        let f = UniPoly::parse("1/2 + 3*x + x^3 - x^2").unwrap();
        assert_eq!(f.coeff(0), rat_of(1, 2));
        assert_eq!(f.coeff(2), rat_from_i64(-1));
        let g = UniPoly::parse(&f.to_string()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn interpolation_recovers() {
        let f = p(&[1, -2, 0, 5]);
        let pts: Vec<(Rat, Rat)> = (0..5)
            .map(|i| (rat_from_i64(i), f.eval(&rat_from_i64(i))))
            .collect();
        assert_eq!(UniPoly::interpolate(&pts), f);
    }
}
