//! Exact field arithmetic: prime fields GF(p) and arbitrary-precision rationals.
//!
//! All higher layers are generic over [`Field`]. A field value works as a
//! context object: elements do not carry their modulus, the field does. This
//! keeps GF(p) elements as bare `u64` residues and lets the same elimination
//! code run over `BigRational` without any rounding anywhere.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand_core::RngCore;

use crate::error::GeomError;

/// A field of scalars together with exact arithmetic on its elements.
///
/// `zero`/`one` take `&self` because GF(p) needs the modulus to make sense of
/// a constant. Division by zero is an `Option`, not a panic.
pub trait Field: Clone + PartialEq + Eq + PartialOrd + Ord + Hash + Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + PartialOrd + Ord + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for the zero element.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Image of a signed integer under the canonical ring map Z -> F.
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;

    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;
    /// All elements in canonical order, `None` when infinite.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    /// Deterministic sample driven by the caller's RNG. For GF(p) this is a
    /// uniform residue; for Q it draws small fractions (|num| <= 9, den <= 9)
    /// so that elimination stays readable in counterexamples.
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;

    fn parse_elem(&self, s: &str) -> Result<Self::Elem, GeomError>;
    fn format_elem(&self, a: &Self::Elem) -> String;

    /// Short name as used in file headers: `p=5` or `q`.
    fn name(&self) -> String;
}

/// The prime field GF(p) with elements stored as residues in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PrimeField {
    p: u64,
}

const MAX_PRIME: u64 = 1 << 31;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, GeomError> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(GeomError::BadField(format!(
                "modulus {p} is not a prime <= 2^31"
            )));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        // p <= 2^31 so the product fits in u64.
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }
    fn sample(&self, rng: &mut dyn RngCore) -> u64 {
        rng.next_u64() % self.p
    }
    fn parse_elem(&self, s: &str) -> Result<u64, GeomError> {
        let v: i64 = s
            .parse()
            .map_err(|_| GeomError::Parse(format!("bad GF({}) scalar `{s}`", self.p)))?;
        Ok(self.from_i64(v))
    }
    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        format!("p={}", self.p)
    }
}

impl Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

/// The rational numbers with arbitrary-precision numerator and denominator.
/// `BigRational` keeps values reduced with a positive denominator, which is
/// exactly the canonical form the subspace formats rely on.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
    fn sample(&self, rng: &mut dyn RngCore) -> BigRational {
        let num = (rng.next_u64() % 19) as i64 - 9;
        let den = (rng.next_u64() % 9) as i64 + 1;
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn parse_elem(&self, s: &str) -> Result<BigRational, GeomError> {
        let bad = || GeomError::Parse(format!("bad rational scalar `{s}`"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(BigRational::from_integer(n))
            }
        }
    }
    fn format_elem(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn name(&self) -> String {
        "q".to_string()
    }
}

impl Display for Rationals {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q")
    }
}

fn _assert_small_rationals_reduced(a: &BigRational) -> bool {
    a.denom().is_positive()
}

/// Runtime description of a field, as it appears in file headers and CLI
/// flags (`p=<prime>` or `q`).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

impl FieldSpec {
    pub fn parse(s: &str) -> Result<Self, GeomError> {
        if s == "q" || s == "Q" {
            return Ok(FieldSpec::Rational);
        }
        if let Some(p) = s.strip_prefix("p=") {
            let p: u64 = p
                .parse()
                .map_err(|_| GeomError::Parse(format!("bad field spec `{s}`")))?;
            PrimeField::new(p)?;
            return Ok(FieldSpec::Prime(p));
        }
        Err(GeomError::Parse(format!(
            "bad field spec `{s}` (expected `p=<prime>` or `q`)"
        )))
    }

    pub fn name(&self) -> String {
        match self {
            FieldSpec::Prime(p) => format!("p={p}"),
            FieldSpec::Rational => "q".to_string(),
        }
    }
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gf5_arithmetic() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.add(&3, &4), 2);
        assert_eq!(f.mul(&2, &4), 3);
        assert_eq!(f.neg(&2), 3);
        assert_eq!(f.inv(&3), Some(2));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-1), 4);
    }

    #[test]
    fn rejects_composite_and_huge_moduli() {
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(6).is_err());
        assert!(PrimeField::new((1 << 31) + 11).is_err());
        assert!(PrimeField::new(2147483647).is_ok()); // 2^31 - 1 is prime
    }

    #[test]
    fn rational_arithmetic_stays_reduced() {
        let f = Rationals;
        let a = f.parse_elem("2/4").unwrap();
        assert_eq!(f.format_elem(&a), "1/2");
        let b = f.parse_elem("-3").unwrap();
        let c = f.mul(&a, &b);
        assert_eq!(f.format_elem(&c), "-3/2");
        assert_eq!(f.format_elem(&f.inv(&c).unwrap()), "-2/3");
        assert!(f.parse_elem("1/0").is_err());
    }

    #[test]
    fn field_spec_round_trip() {
        assert_eq!(FieldSpec::parse("p=7").unwrap(), FieldSpec::Prime(7));
        assert_eq!(FieldSpec::parse("q").unwrap(), FieldSpec::Rational);
        assert!(FieldSpec::parse("p=4").is_err());
        assert!(FieldSpec::parse("r=2").is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let f = PrimeField::new(5).unwrap();
        let mut r1 = ChaCha8Rng::seed_from_u64(42);
        let mut r2 = ChaCha8Rng::seed_from_u64(42);
        let s1: Vec<u64> = (0..20).map(|_| f.sample(&mut r1)).collect();
        let s2: Vec<u64> = (0..20).map(|_| f.sample(&mut r2)).collect();
        assert_eq!(s1, s2);
    }
}
