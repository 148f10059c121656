//! Exact scalar fields: arbitrary-precision rationals and prime fields.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact field arithmetic used by every computation in the crate.
pub trait Field:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(value: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// 0 for the rationals.
    fn characteristic() -> u64;
    /// Parses `p`, `-p` or `p/q`.
    fn parse_scalar(text: &str) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|inv| self.mul(&inv))
    }
}

/// Rational number in lowest terms, denominator positive.
///
/// Small values stay on machine words; anything that overflows is promoted to
/// a big rational.
#[derive(Clone)]
pub enum Rational {
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        let g = gcd_i128(num, den);
        let (mut n, mut d) = if g == 0 { (0, 1) } else { (num / g, den / g) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        if n == 0 {
            d = 1;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational::Small(n, d),
            _ => Rational::Big(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(value: BigRational) -> Self {
        if let (Some(n), Some(d)) = (value.numer().to_i64(), value.denom().to_i64()) {
            return Rational::Small(n, d);
        }
        Rational::Big(Box::new(value))
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn numer_denom(&self) -> (BigInt, BigInt) {
        let b = self.to_big();
        (b.numer().clone(), b.denom().clone())
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => a == c && b == d,
            // Big values are never representable as Small, so mixed pairs differ.
            (Rational::Big(a), Rational::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let (n, d) = self.numer_denom();
        n.hash(state);
        d.hash(state);
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_big().cmp(&other.to_big())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(b) if b.denom().is_one() => write!(f, "{}", b.numer()),
            Rational::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::Small(0, 1)
    }

    fn one() -> Self {
        Rational::Small(1, 1)
    }

    fn from_i64(value: i64) -> Self {
        Rational::Small(value, 1)
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Rational::Small(0, _), x) | (x, Rational::Small(0, _)) => x.clone(),
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Self::from_i128(a + c, b)
                } else {
                    Self::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Self::from_big(self.to_big() + other.to_big()),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Rational::Small(0, _), _) | (_, Rational::Small(0, _)) => Self::zero(),
            (Rational::Small(1, 1), x) | (x, Rational::Small(1, 1)) => x.clone(),
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Self::from_big(self.to_big() * other.to_big()),
        }
    }

    fn neg(&self) -> Self {
        match self {
            Rational::Small(n, d) => match n.checked_neg() {
                Some(n) => Rational::Small(n, *d),
                None => Self::from_big(-self.to_big()),
            },
            Rational::Big(b) => Self::from_big(-(**b).clone()),
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Rational::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Rational::Big(b) => Self::from_big(b.recip()),
        })
    }

    fn characteristic() -> u64 {
        0
    }

    fn parse_scalar(text: &str) -> Option<Self> {
        let text = text.trim();
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let valid = |s: &str| {
            let digits = s.strip_prefix('-').unwrap_or(s);
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        if !valid(num) || !valid(den) || den.starts_with('-') {
            return None;
        }
        let n = BigInt::from_str(num).ok()?;
        let d = BigInt::from_str(den).ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Self::from_big(BigRational::new(n, d)))
    }
}

impl Rational {
    /// Integer part of the numerator when the value is an integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        let b = self.to_big();
        b.is_integer().then(|| b.to_integer())
    }

    pub fn abs(&self) -> Self {
        Self::from_big(self.to_big().abs())
    }
}

static MODULUS: AtomicU64 = AtomicU64::new(32003);

/// Element of the prime field whose characteristic is set by
/// [`Fp::set_modulus`]. The modulus is process-wide.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp(u64);

impl Fp {
    pub fn modulus() -> u64 {
        MODULUS.load(AtomicOrdering::Relaxed)
    }

    /// Sets the process-wide characteristic. Fails unless `p` is a prime below 2^31.
    pub fn set_modulus(p: u64) -> Result<(), String> {
        if !is_prime(p) || p >= (1 << 31) {
            return Err(format!("{p} is not a prime below 2^31"));
        }
        MODULUS.store(p, AtomicOrdering::Relaxed);
        Ok(())
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn reduce(v: i128) -> Self {
        let p = Self::modulus() as i128;
        Fp(v.rem_euclid(p) as u64)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= p {
        if p % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for Fp {
    fn zero() -> Self {
        Fp(0)
    }

    fn one() -> Self {
        Fp(1)
    }

    fn from_i64(value: i64) -> Self {
        Self::reduce(value as i128)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn add(&self, other: &Self) -> Self {
        Self::reduce(self.0 as i128 + other.0 as i128)
    }

    fn sub(&self, other: &Self) -> Self {
        Self::reduce(self.0 as i128 - other.0 as i128)
    }

    fn mul(&self, other: &Self) -> Self {
        Self::reduce(self.0 as i128 * other.0 as i128)
    }

    fn neg(&self) -> Self {
        Self::reduce(-(self.0 as i128))
    }

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        let p = Self::modulus() as i128;
        let (g, x, _) = extended_gcd(self.0 as i128, p);
        debug_assert_eq!(g, 1);
        Some(Self::reduce(x))
    }

    fn characteristic() -> u64 {
        Self::modulus()
    }

    fn parse_scalar(text: &str) -> Option<Self> {
        let r = Rational::parse_scalar(text)?;
        let (n, d) = r.numer_denom();
        let p = BigInt::from(Self::modulus());
        let n = Fp(n.mod_floor(&p).to_u64()?);
        let d = Fp(d.mod_floor(&p).to_u64()?);
        n.div(&d)
    }
}

fn extended_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = extended_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_reduces() {
        let a = Rational::new(2, 4);
        assert_eq!(a, Rational::new(1, 2));
        assert_eq!(a.add(&Rational::new(1, 2)), Rational::one());
        assert_eq!(a.inv().unwrap(), Rational::from_i64(2));
        assert_eq!(Rational::new(-3, -6).to_string(), "1/2");
        assert_eq!(Rational::new(3, -6).to_string(), "-1/2");
    }

    #[test]
    fn rational_promotes_on_overflow() {
        let big = Rational::from_i64(i64::MAX);
        let sq = big.mul(&big);
        assert!(matches!(sq, Rational::Big(_)));
        let back = sq.div(&big).unwrap();
        assert_eq!(back, big);
        assert!(matches!(back, Rational::Small(..)));
    }

    #[test]
    fn rational_parse() {
        assert_eq!(Rational::parse_scalar("-7/21").unwrap(), Rational::new(-1, 3));
        assert!(Rational::parse_scalar("1/0").is_none());
        assert!(Rational::parse_scalar("x").is_none());
        assert!(Rational::parse_scalar("1/-2").is_none());
    }

    #[test]
    fn prime_field_inverse() {
        let x = Fp::from_i64(12345);
        assert_eq!(x.mul(&x.inv().unwrap()), Fp::one());
        assert_eq!(Fp::from_i64(-1).add(&Fp::one()), Fp::zero());
    }
}
