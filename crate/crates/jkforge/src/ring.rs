//! Coefficient rings and exact scalar arithmetic.
//!
//! Every computation in this crate is exact: coefficients are integers,
//! arbitrary-precision rationals, or elements of a prime field. There is no
//! floating point anywhere in the system.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// The fixed commutative coefficient ring of a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ring {
    /// The integers.
    Z,
    /// The rationals.
    Q,
    /// The prime field with `p` elements.
    Fp(u64),
}

impl Ring {
    pub fn zero(&self) -> Scalar {
        match self {
            Ring::Z => Scalar::Int(BigInt::zero()),
            Ring::Q => Scalar::Rat(BigRational::zero()),
            Ring::Fp(p) => Scalar::Mod(0, *p),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Ring::Z => Scalar::Int(BigInt::one()),
            Ring::Q => Scalar::Rat(BigRational::one()),
            Ring::Fp(p) => Scalar::Mod(1 % p, *p),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Ring::Z => Scalar::Int(BigInt::from(n)),
            Ring::Q => Scalar::Rat(BigRational::from(BigInt::from(n))),
            Ring::Fp(p) => Scalar::Mod(n.rem_euclid(*p as i64) as u64, *p),
        }
    }

    /// Whether nonzero elements are invertible (enables plain Gaussian
    /// elimination; over `Z` kernel computations use Hermite-style reduction).
    pub fn is_field(&self) -> bool {
        !matches!(self, Ring::Z)
    }

    pub fn validate(&self) -> Result<()> {
        if let Ring::Fp(p) = self {
            if *p < 2 || !is_prime(*p) {
                return Err(Error::RingMismatch(format!("{p} is not prime")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z => write!(f, "Z"),
            Ring::Q => write!(f, "Q"),
            Ring::Fp(p) => write!(f, "Fp:{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact scalar in one of the supported coefficient rings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Mod(u64, u64),
}

impl Scalar {
    pub fn ring(&self) -> Ring {
        match self {
            Scalar::Int(_) => Ring::Z,
            Scalar::Rat(_) => Ring::Q,
            Scalar::Mod(_, p) => Ring::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(n) => n.is_zero(),
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Int(n) => n.is_one(),
            Scalar::Rat(q) => q.is_one(),
            Scalar::Mod(v, _) => *v == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a + b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) if p == q => Scalar::Mod((a + b) % p, *p),
            _ => panic!("scalar ring mismatch in add"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(-a),
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod(a, p) => Scalar::Mod(if *a == 0 { 0 } else { p - a }, *p),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a * b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) if p == q => {
                Scalar::Mod(mulmod(*a, *b, *p), *p)
            }
            _ => panic!("scalar ring mismatch in mul"),
        }
    }

    /// Exact division. Over `Z` this fails unless the division is exact.
    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        if other.is_zero() {
            return None;
        }
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => {
                let (q, r) = num_integer::div_rem(a.clone(), b.clone());
                if r.is_zero() {
                    Some(Scalar::Int(q))
                } else {
                    None
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Some(Scalar::Rat(a / b)),
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) if p == q => {
                Some(Scalar::Mod(mulmod(*a, invmod(*b, *p), *p), *p))
            }
            _ => panic!("scalar ring mismatch in div"),
        }
    }

    /// Renders without spaces, suitable for the canonical textual formats.
    pub fn render(&self) -> String {
        match self {
            Scalar::Int(n) => n.to_string(),
            Scalar::Rat(q) => {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Mod(v, _) => v.to_string(),
        }
    }

    pub fn parse(ring: Ring, s: &str) -> Result<Scalar> {
        let bad = |m: &str| Error::ParseError {
            line: 0,
            col: 0,
            msg: format!("bad scalar {s:?}: {m}"),
        };
        match ring {
            Ring::Z => s
                .parse::<BigInt>()
                .map(Scalar::Int)
                .map_err(|e| bad(&e.to_string())),
            Ring::Q => {
                if let Some((n, d)) = s.split_once('/') {
                    let n = n.parse::<BigInt>().map_err(|e| bad(&e.to_string()))?;
                    let d = d.parse::<BigInt>().map_err(|e| bad(&e.to_string()))?;
                    if d.is_zero() {
                        return Err(bad("zero denominator"));
                    }
                    Ok(Scalar::Rat(BigRational::new(n, d)))
                } else {
                    let n = s.parse::<BigInt>().map_err(|e| bad(&e.to_string()))?;
                    Ok(Scalar::Rat(BigRational::from(n)))
                }
            }
            Ring::Fp(p) => {
                let n = s.parse::<i64>().map_err(|e| bad(&e.to_string()))?;
                Ok(Scalar::Mod(n.rem_euclid(p as i64) as u64, p))
            }
        }
    }

    /// Absolute value for pivot selection over `Z`; identity elsewhere.
    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(a.abs()),
            other => other.clone(),
        }
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn invmod(a: u64, p: u64) -> u64 {
    // Fermat: p is prime and a nonzero mod p.
    let mut result: u64 = 1;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mulmod(result, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_inverse_mod_p() {
        let r = Ring::Fp(7);
        for v in 1..7u64 {
            let s = Scalar::Mod(v, 7);
            let inv = r.one().div(&s).unwrap();
            assert!(s.mul(&inv).is_one());
        }
    }

    #[test]
    fn integer_division_is_exact_only() {
        let a = Ring::Z.from_i64(6);
        let b = Ring::Z.from_i64(3);
        let c = Ring::Z.from_i64(4);
        assert_eq!(a.div(&b), Some(Ring::Z.from_i64(2)));
        assert_eq!(a.div(&c), None);
    }

    #[test]
    fn rational_render_round_trip() {
        let q = Scalar::parse(Ring::Q, "-3/4").unwrap();
        assert_eq!(q.render(), "-3/4");
        assert_eq!(Scalar::parse(Ring::Q, &q.render()).unwrap(), q);
    }

    #[test]
    fn primality_gate() {
        assert!(Ring::Fp(2).validate().is_ok());
        assert!(Ring::Fp(97).validate().is_ok());
        assert!(Ring::Fp(91).validate().is_err());
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn rings() -> impl Strategy<Value = Ring> {
        prop_oneof![Just(Ring::Z), Just(Ring::Q), Just(Ring::Fp(101))]
    }

    proptest! {
        #[test]
        fn ring_laws(ring in rings(), a in -50i64..50, b in -50i64..50, c in -50i64..50) {
            let (x, y, z) = (ring.from_i64(a), ring.from_i64(b), ring.from_i64(c));
            prop_assert_eq!(x.add(&y), y.add(&x));
            prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
            prop_assert_eq!(x.mul(&y), y.mul(&x));
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            prop_assert!(x.sub(&x).is_zero());
            prop_assert_eq!(x.mul(&ring.one()), x.clone());
        }

        #[test]
        fn render_parse_round_trip(ring in rings(), a in -1000i64..1000) {
            let x = ring.from_i64(a);
            prop_assert_eq!(Scalar::parse(ring, &x.render()).unwrap(), x);
        }
    }
}
