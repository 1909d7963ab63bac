use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::MultiPoly;
use super::PolyError;

/// Exact rational scalar. `num_rational` keeps numerator and denominator
/// coprime with a positive denominator.
pub type Rational = BigRational;

/// Builds an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds `n/d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A coefficient domain for [`MultiPoly`].
///
/// Every element knows which domain it lives in, so operations on
/// incompatible operands (two different prime moduli) can be rejected.
pub trait Coeff: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static {
    type Domain: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn domain(&self) -> Self::Domain;
    fn zero_in(domain: &Self::Domain) -> Self;
    fn one_in(domain: &Self::Domain) -> Self;
    fn from_bigint(domain: &Self::Domain, v: &BigInt) -> Self;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Canonical scaling of a nonzero polynomial so that projective
    /// equality becomes syntactic equality. Returns the normalized
    /// polynomial; the input is assumed nonzero.
    fn normalize_poly(p: &MultiPoly<Self>) -> MultiPoly<Self>;

    /// Greatest common divisor, normalized with [`Coeff::normalize_poly`].
    fn poly_gcd(a: &MultiPoly<Self>, b: &MultiPoly<Self>) -> MultiPoly<Self>;

    /// Scalar that brings a list of polynomials (not all zero) to the
    /// joint canonical scaling used for projective coordinates.
    fn joint_normalizer(polys: &[MultiPoly<Self>]) -> Self;

    /// Whether the printer should render this coefficient with a minus sign.
    fn is_negative(&self) -> bool;
}

/// Marker for the field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Coeff for Rational {
    type Domain = Rationals;

    fn domain(&self) -> Rationals {
        Rationals
    }
    fn zero_in(_: &Rationals) -> Self {
        Rational::zero()
    }
    fn one_in(_: &Rationals) -> Self {
        Rational::one()
    }
    fn from_bigint(_: &Rationals, v: &BigInt) -> Self {
        Rational::from_integer(v.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn normalize_poly(p: &MultiPoly<Self>) -> MultiPoly<Self> {
        let (prim, _) = primitive_integer_part(p);
        prim
    }
    fn poly_gcd(a: &MultiPoly<Self>, b: &MultiPoly<Self>) -> MultiPoly<Self> {
        super::gcd::gcd_rational(a, b)
    }
    fn joint_normalizer(polys: &[MultiPoly<Self>]) -> Self {
        let mut den = BigInt::one();
        for p in polys {
            for (_, c) in p.terms() {
                den = den.lcm(c.denom());
            }
        }
        let mut content = BigInt::zero();
        for p in polys {
            for (_, c) in p.terms() {
                content = content.gcd(&(c.numer() * (&den / c.denom())));
            }
        }
        let first_negative = polys
            .iter()
            .find_map(|p| p.leading_coeff())
            .map(|c| Signed::is_negative(c))
            .unwrap_or(false);
        if content.is_zero() {
            return Rational::one();
        }
        let s = Rational::new(den, content);
        if first_negative {
            -s
        } else {
            s
        }
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Splits `p` into `scale * prim`, where `prim` has coprime integer
/// coefficients and a positive leading coefficient (graded lex).
pub fn primitive_integer_part(p: &MultiPoly<Rational>) -> (MultiPoly<Rational>, Rational) {
    if p.is_zero() {
        return (p.clone(), Rational::one());
    }
    let mut den = BigInt::one();
    for (_, c) in p.terms() {
        den = den.lcm(c.denom());
    }
    let mut content = BigInt::zero();
    for (_, c) in p.terms() {
        let n = c.numer() * (&den / c.denom());
        content = content.gcd(&n);
    }
    if p.leading_coeff().map(|c| Signed::is_negative(c)).unwrap_or(false) {
        content = -content;
    }
    // p = (content / den) * prim
    let scale = Rational::new(content, den);
    let inv = scale.recip();
    (p.scale(&inv), scale)
}

/// A prime modulus, validated on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    /// Accepts primes below 2^63.
    pub fn new(p: u64) -> Result<Self, PolyError> {
        if p >= (1u64 << 63) || !is_prime_u64(p) {
            return Err(PolyError::NotPrime(p));
        }
        Ok(PrimeModulus(p))
    }
    pub fn get(self) -> u64 {
        self.0
    }
}

/// Element of the prime field `Z/pZ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    value: u64,
    modulus: u64,
}

impl PrimeField {
    pub fn new(value: i64, modulus: PrimeModulus) -> Self {
        let p = modulus.0 as i128;
        let v = (value as i128).rem_euclid(p) as u64;
        PrimeField { value: v, modulus: modulus.0 }
    }
    pub fn value(&self) -> u64 {
        self.value
    }
    pub fn modulus(&self) -> PrimeModulus {
        PrimeModulus(self.modulus)
    }
    fn check(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "prime field modulus mismatch");
    }
}

impl Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Coeff for PrimeField {
    type Domain = PrimeModulus;

    fn domain(&self) -> PrimeModulus {
        PrimeModulus(self.modulus)
    }
    fn zero_in(d: &PrimeModulus) -> Self {
        PrimeField { value: 0, modulus: d.0 }
    }
    fn one_in(d: &PrimeModulus) -> Self {
        PrimeField { value: 1 % d.0, modulus: d.0 }
    }
    fn from_bigint(d: &PrimeModulus, v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(d.0));
        PrimeField { value: r.to_u64().expect("reduced residue fits u64"), modulus: d.0 }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn is_one(&self) -> bool {
        self.value == 1
    }
    fn add(&self, o: &Self) -> Self {
        self.check(o);
        PrimeField { value: add_mod(self.value, o.value, self.modulus), modulus: self.modulus }
    }
    fn sub(&self, o: &Self) -> Self {
        self.check(o);
        PrimeField { value: sub_mod(self.value, o.value, self.modulus), modulus: self.modulus }
    }
    fn mul(&self, o: &Self) -> Self {
        self.check(o);
        PrimeField { value: mul_mod(self.value, o.value, self.modulus), modulus: self.modulus }
    }
    fn neg(&self) -> Self {
        PrimeField { value: sub_mod(0, self.value, self.modulus), modulus: self.modulus }
    }
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(PrimeField { value: inv_mod(self.value, self.modulus), modulus: self.modulus })
        }
    }
    fn normalize_poly(p: &MultiPoly<Self>) -> MultiPoly<Self> {
        match p.leading_coeff().and_then(|c| c.inv()) {
            Some(inv) => p.scale(&inv),
            None => p.clone(),
        }
    }
    fn poly_gcd(a: &MultiPoly<Self>, b: &MultiPoly<Self>) -> MultiPoly<Self> {
        super::prs::gcd_prs(a, b)
    }
    fn joint_normalizer(polys: &[MultiPoly<Self>]) -> Self {
        let d = polys.first().map(|p| *p.domain()).unwrap_or(PrimeModulus(2));
        polys
            .iter()
            .find_map(|p| p.leading_coeff())
            .and_then(|c| c.inv())
            .unwrap_or_else(|| Self::one_in(&d))
    }
    fn is_negative(&self) -> bool {
        false
    }
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // p prime
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime_u64((1u64 << 61) - 1));
        assert!(!is_prime_u64((1u64 << 61) + 1));
    }

    #[test]
    fn prime_field_ops() {
        let p = PrimeModulus::new(7).unwrap();
        let a = PrimeField::new(-2, p);
        assert_eq!(a.value(), 5);
        assert_eq!(a.mul(&a.inv().unwrap()).value(), 1);
        assert!(PrimeModulus::new(9).is_err());
    }
}
