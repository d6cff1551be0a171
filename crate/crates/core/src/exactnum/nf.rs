//! Explicit quotient rings Q[t]/(m(t)) with monic irreducible moduli, used
//! for roots of unity and the quadratic extensions arising in decomposition
//! detection. Elements carry a shared handle to their field; plain rationals
//! embed as elements with no field attached and coerce on contact.

use super::{Field, Rat, Ring, UniPoly};
use num_bigint::BigInt;
use std::sync::Arc;

#[derive(Debug, PartialEq, Eq)]
pub struct NumberField {
    modulus: UniPoly<Rat>,
}

impl NumberField {
    /// A quotient ring with the given monic modulus. Irreducibility is the
    /// caller's responsibility; arithmetic only needs monicity, inverses
    /// additionally need coprimality with the modulus.
    pub fn new(modulus: UniPoly<Rat>) -> Arc<Self> {
        assert!(
            modulus.deg_i() >= 1,
            "modulus must have positive degree"
        );
        let modulus = modulus.monic();
        Arc::new(NumberField { modulus })
    }

    /// Q[t]/(Phi_n(t)), the n-th cyclotomic quotient.
    pub fn cyclotomic_field(n: u32) -> Arc<Self> {
        Self::new(cyclotomic(n))
    }

    /// Q[t]/(t^2 - q), a quadratic extension by a square root of `q`.
    pub fn quadratic(q: &Rat) -> Arc<Self> {
        Self::new(UniPoly::new(vec![q.neg(), Ring::zero(), Ring::one()]))
    }

    pub fn modulus(&self) -> &UniPoly<Rat> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn generator(self: &Arc<Self>) -> NfElem {
        NfElem::in_field(UniPoly::var(), self.clone())
    }
}

/// The n-th cyclotomic polynomial, by exact division of x^n - 1 by the
/// cyclotomic polynomials of the proper divisors of n.
pub fn cyclotomic(n: u32) -> UniPoly<Rat> {
    assert!(n >= 1);
    let one: Rat = Ring::one();
    let mut num = UniPoly::monomial(one.clone(), n as usize).sub(&UniPoly::one());
    for d in 1..n {
        if n % d == 0 {
            num = num.exact_div(&cyclotomic(d)).expect("cyclotomic divides");
        }
    }
    num
}

/// An element of Q[t]/(m). `field: None` means a rational constant that
/// adopts the other operand's field on contact.
#[derive(Clone, Debug)]
pub struct NfElem {
    rep: UniPoly<Rat>,
    field: Option<Arc<NumberField>>,
}

impl NfElem {
    pub fn in_field(rep: UniPoly<Rat>, field: Arc<NumberField>) -> Self {
        let rep = reduce(&rep, field.modulus());
        NfElem {
            rep,
            field: Some(field),
        }
    }

    pub fn from_rat(q: Rat) -> Self {
        NfElem {
            rep: UniPoly::constant(q),
            field: None,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    pub fn rep(&self) -> &UniPoly<Rat> {
        &self.rep
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        self.field.as_ref()
    }

    pub fn is_rational(&self) -> bool {
        self.rep.is_constant()
    }

    pub fn as_rat(&self) -> Option<Rat> {
        if self.rep.is_constant() {
            Some(self.rep.coeff(0))
        } else {
            None
        }
    }

    /// Apply the field automorphism t -> t^u (a Galois action on cyclotomic
    /// quotients when gcd(u, n) = 1).
    pub fn galois_map(&self, u: u64) -> Self {
        match &self.field {
            None => self.clone(),
            Some(f) => {
                let t_u = pow_mod(&UniPoly::var(), u, f.modulus());
                let img = self.rep.compose(&t_u);
                NfElem::in_field(img, f.clone())
            }
        }
    }

    /// `self^n` for a nonnegative exponent.
    pub fn pow(&self, n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = match &self.field {
            Some(f) => NfElem::in_field(UniPoly::one(), f.clone()),
            None => NfElem::from_int(1),
        };
        let mut n = n;
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

    fn unified_field<'a>(&'a self, rhs: &'a Self) -> Option<&'a Arc<NumberField>> {
        match (&self.field, &rhs.field) {
            (Some(a), Some(b)) => {
                assert!(
                    a.modulus() == b.modulus(),
                    "mixed coefficient rings: {:?} vs {:?}",
                    a.modulus(),
                    b.modulus()
                );
                Some(a)
            }
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b),
            (None, None) => None,
        }
    }

    fn wrap(rep: UniPoly<Rat>, field: Option<&Arc<NumberField>>) -> Self {
        match field {
            Some(f) => NfElem::in_field(rep, f.clone()),
            None => NfElem { rep, field: None },
        }
    }
}

fn reduce(p: &UniPoly<Rat>, m: &UniPoly<Rat>) -> UniPoly<Rat> {
    if p.deg_i() < m.deg_i() {
        return p.clone();
    }
    let (_, r) = p.divrem(m).expect("monic modulus");
    r
}

fn pow_mod(p: &UniPoly<Rat>, mut n: u64, m: &UniPoly<Rat>) -> UniPoly<Rat> {
    let mut base = reduce(p, m);
    let mut acc = UniPoly::one();
    while n > 0 {
        if n & 1 == 1 {
            acc = reduce(&acc.mul(&base), m);
        }
        n >>= 1;
        if n > 0 {
            base = reduce(&base.mul(&base), m);
        }
    }
    acc
}

impl PartialEq for NfElem {
    fn eq(&self, other: &Self) -> bool {
        if let (Some(a), Some(b)) = (&self.field, &other.field) {
            if a.modulus() != b.modulus() {
                return false;
            }
        }
        self.rep == other.rep
    }
}

impl Ring for NfElem {
    fn zero() -> Self {
        NfElem::from_int(0)
    }
    fn one() -> Self {
        NfElem::from_int(1)
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        let f = self.unified_field(rhs);
        Self::wrap(self.rep.add(&rhs.rep), f)
    }
    fn sub(&self, rhs: &Self) -> Self {
        let f = self.unified_field(rhs);
        Self::wrap(self.rep.sub(&rhs.rep), f)
    }
    fn mul(&self, rhs: &Self) -> Self {
        let f = self.unified_field(rhs);
        Self::wrap(self.rep.mul(&rhs.rep), f)
    }
    fn neg(&self) -> Self {
        NfElem {
            rep: self.rep.neg(),
            field: self.field.clone(),
        }
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let f = self.unified_field(rhs);
        match f {
            None => Some(Self::wrap(
                self.rep
                    .mul_scalar(&Field::inv(&rhs.rep.coeff(0))),
                None,
            )),
            Some(field) => {
                let inv = invert_mod(&rhs.rep, field.modulus())?;
                Some(Self::wrap(self.rep.mul(&inv), Some(field)))
            }
        }
    }
}

impl Field for NfElem {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        NfElem::one().exact_div(self).expect(
            "element not invertible modulo the modulus (modulus reducible?)",
        )
    }
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm, when
/// gcd(a, m) = 1.
fn invert_mod(a: &UniPoly<Rat>, m: &UniPoly<Rat>) -> Option<UniPoly<Rat>> {
    let (mut r0, mut r1) = (m.clone(), reduce(a, m));
    let (mut s0, mut s1) = (UniPoly::zero(), UniPoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1).expect("field division");
        let s = s0.sub(&q.mul(&s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.deg_i() != 0 {
        return None; // gcd non-constant: not invertible
    }
    let c = Field::inv(&r0.coeff(0));
    Some(reduce(&s0.mul_scalar(&c), m))
}

impl std::fmt::Display for NfElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.rep.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.rep.coeffs().iter().enumerate() {
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
                1 if cs == "1" => write!(f, "t")?,
                1 => write!(f, "{cs}*t")?,
                _ if cs == "1" => write!(f, "t^{i}")?,
                _ => write!(f, "{cs}*t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat_from_i64;

    #[test]
    fn cyclotomic_polys() {
        // Phi_1 = x - 1, Phi_2 = x + 1, Phi_3 = x^2 + x + 1, Phi_6 = x^2 - x + 1
        let p = |v: &[i64]| UniPoly::new(v.iter().map(|&c| rat_from_i64(c)).collect::<Vec<Rat>>());
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(2), p(&[1, 1]));
        assert_eq!(cyclotomic(3), p(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), p(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(12).degree(), Some(4));
    }

    #[test]
    fn cube_root_of_unity() {
        // In Q[t]/(t^2+t+1) the class of t is a primitive cube root of unity.
        let k = NumberField::cyclotomic_field(3);
        let t = k.generator();
        assert_eq!(t.pow(3), NfElem::one());
        assert_ne!(t, NfElem::one());
        assert_ne!(t.pow(2), NfElem::one());
        // 1 + t + t^2 = 0
        let s = NfElem::one().add(&t).add(&t.pow(2));
        assert!(s.is_zero());
    }

    #[test]
    fn inverses() {
        let k = NumberField::cyclotomic_field(5);
        let z = k.generator();
        let x = z.pow(2).add(&NfElem::from_int(3));
        let y = x.inv();
        assert_eq!(x.mul(&y), NfElem::one());
    }

    #[test]
    fn galois_action() {
        let k = NumberField::cyclotomic_field(5);
        let z = k.generator();
        // sigma_2 sends z to z^2
        assert_eq!(z.galois_map(2), z.pow(2));
        // and fixes rationals
        assert_eq!(NfElem::from_int(7).galois_map(2), NfElem::from_int(7));
    }

    #[test]
    #[should_panic(expected = "mixed coefficient rings")]
    fn mixed_fields_rejected() {
        let a = NumberField::cyclotomic_field(3).generator();
        let b = NumberField::cyclotomic_field(4).generator();
        let _ = a.add(&b);
    }
}
