//! Exact scalar arithmetic over GF(p) and over the rationals.
//!
//! A [`Field`] is a lightweight context (just the characteristic) that is
//! passed to every arithmetic operation. [`Scalar`] values hold canonical
//! representatives: residues in `[0, p)` for GF(p), reduced fractions with
//! positive denominator for characteristic 0. Canonical storage makes
//! structural equality (`==`) mathematical equality.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arithmetic context: GF(p) for prime p, or the rationals for characteristic 0.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Field {
    ch: u64,
}

/// A field element in canonical form.
///
/// `Mod` residues always lie in `[0, p)`; `Rat` fractions are always reduced
/// with positive denominator (enforced by `BigRational`). Mixing variants from
/// different field contexts is a programming error and panics.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scalar {
    Mod(u64),
    Rat(BigRational),
}

impl Field {
    /// Builds the field of the given characteristic. Rejects anything that is
    /// neither 0 nor prime.
    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic == 0 || is_prime(characteristic) {
            Ok(Field { ch: characteristic })
        } else {
            Err(Error::NotPrime(characteristic))
        }
    }

    pub fn rationals() -> Self {
        Field { ch: 0 }
    }

    pub fn characteristic(&self) -> u64 {
        self.ch
    }

    pub fn zero(&self) -> Scalar {
        match self.ch {
            0 => Scalar::Rat(BigRational::zero()),
            _ => Scalar::Mod(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self.ch {
            0 => Scalar::Rat(BigRational::one()),
            1.. => Scalar::Mod(1 % self.ch),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.ch {
            0 => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            p => Scalar::Mod((v as i128).rem_euclid(p as i128) as u64),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u128 + *y as u128) % self.ch as u128) as u64)
            }
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("mixed scalar representations"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Mod(x), Scalar::Mod(y)) => {
                let p = self.ch as u128;
                Scalar::Mod(((*x as u128 + p - *y as u128) % p) as u64)
            }
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x - y),
            _ => panic!("mixed scalar representations"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u128 * *y as u128) % self.ch as u128) as u64)
            }
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("mixed scalar representations"),
        }
    }

    /// Multiplicative inverse. Errors on zero.
    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        match a {
            Scalar::Mod(0) => Err(Error::DivisionByZero),
            Scalar::Mod(x) => Ok(Scalar::Mod(mod_inverse(*x, self.ch))),
            Scalar::Rat(x) if x.is_zero() => Err(Error::DivisionByZero),
            Scalar::Rat(x) => Ok(Scalar::Rat(x.recip())),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Parses a field element from its string form: an integer like `"3"` or
    /// `"-2"`, or a fraction like `"-2/7"`. Over GF(p) a fraction means
    /// numerator times the inverse of the denominator.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let bad = |reason: &str| Error::BadScalar {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        let (num_str, den_str) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (t, None),
        };
        let num = BigInt::from_str(num_str).map_err(|_| bad("bad numerator"))?;
        let den = match den_str {
            Some(d) => BigInt::from_str(d).map_err(|_| bad("bad denominator"))?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(bad("zero denominator"));
        }
        match self.ch {
            0 => Ok(Scalar::Rat(BigRational::new(num, den))),
            p => {
                let n = self.from_bigint(&num);
                let d = self.from_bigint(&den);
                if d.is_zero() {
                    return Err(bad(&format!("denominator is 0 mod {p}")));
                }
                self.div(&n, &d)
            }
        }
    }

    fn from_bigint(&self, v: &BigInt) -> Scalar {
        let p = BigInt::from(self.ch);
        let r = ((v % &p) + &p) % &p;
        Scalar::Mod(r.to_u64().expect("residue fits in u64"))
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod(x) => *x == 0,
            Scalar::Rat(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod(x) => *x == 1,
            Scalar::Rat(x) => x.is_one(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod(x) => write!(f, "{x}"),
            Scalar::Rat(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
        }
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid on i128; a is a nonzero residue mod prime p
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "inverse of a unit mod a prime");
    s0.rem_euclid(p as i128) as u64
}

/// Deterministic Miller-Rabin, exact for all u64 inputs.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut base: u64, mut e: u64| {
        let mut acc = 1u64;
        base %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul(x, x);
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
    use proptest::prelude::*;

    fn fields() -> Vec<Field> {
        [0u64, 2, 3, 5]
            .iter()
            .map(|&c| Field::new(c).unwrap())
            .collect()
    }

    #[test]
    fn make_rejects_composites() {
        for c in [1u64, 4, 6, 9, 15, 1 << 32, u64::MAX] {
            assert!(matches!(Field::new(c), Err(Error::NotPrime(_))), "{c}");
        }
        for c in [0u64, 2, 3, 5, 7, 97, 18446744073709551557] {
            assert!(Field::new(c).is_ok(), "{c}");
        }
    }

    #[test]
    fn canonical_residues() {
        let f = Field::new(5).unwrap();
        assert_eq!(f.from_i64(-2), Scalar::Mod(3));
        assert_eq!(f.from_i64(12), Scalar::Mod(2));
        assert_eq!(f.parse("-2").unwrap(), Scalar::Mod(3));
        assert_eq!(f.parse("7").unwrap(), Scalar::Mod(2));
    }

    #[test]
    fn rational_parse_reduces() {
        let f = Field::rationals();
        let a = f.parse("4/-6").unwrap();
        assert_eq!(a.to_string(), "-2/3");
        assert_eq!(f.parse("-2/7").unwrap().to_string(), "-2/7");
        assert_eq!(f.parse(" 3 ").unwrap().to_string(), "3");
        assert!(f.parse("1/0").is_err());
        assert!(f.parse("x").is_err());
    }

    #[test]
    fn gf_fraction_parse() {
        let f = Field::new(5).unwrap();
        // -2/7 = 3 * inv(2) = 3 * 3 = 9 = 4 mod 5
        assert_eq!(f.parse("-2/7").unwrap(), Scalar::Mod(4));
        assert!(f.parse("1/5").is_err());
    }

    #[test]
    fn inverse_of_zero_fails() {
        for f in fields() {
            assert!(matches!(f.inv(&f.zero()), Err(Error::DivisionByZero)));
        }
    }

    #[test]
    fn no_overflow_near_u64_max() {
        let p = 18446744073709551557u64; // largest prime below 2^64
        let f = Field::new(p).unwrap();
        let a = Scalar::Mod(p - 1);
        assert_eq!(f.mul(&a, &a), Scalar::Mod(1)); // (-1)^2
        assert_eq!(f.add(&a, &a), Scalar::Mod(p - 2));
        let inv = f.inv(&Scalar::Mod(123456789123456789)).unwrap();
        assert_eq!(
            f.mul(&Scalar::Mod(123456789123456789), &inv),
            Scalar::Mod(1)
        );
    }

    #[test]
    fn fermat_little() {
        for p in [2u64, 3, 5, 97] {
            let f = Field::new(p).unwrap();
            for x in 0..p.min(200) {
                let a = Scalar::Mod(x);
                assert_eq!(f.pow(&a, p), a);
            }
        }
    }

    #[test]
    fn display_roundtrip() {
        for f in fields() {
            for v in -20i64..=20 {
                let a = f.from_i64(v);
                assert_eq!(f.parse(&a.to_string()).unwrap(), a);
            }
        }
        let q = Field::rationals();
        let x = q.div(&q.from_i64(-10), &q.from_i64(4)).unwrap();
        assert_eq!(x.to_string(), "-5/2");
        assert_eq!(q.parse("-5/2").unwrap(), x);
    }

    fn arb_pair() -> impl Strategy<Value = (i64, i64)> {
        (-1000i64..=1000, -1000i64..=1000)
    }

    proptest! {
        #[test]
        fn axioms((a, b) in arb_pair(), c in -1000i64..=1000) {
            for f in fields() {
                let (x, y, z) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
                prop_assert_eq!(f.add(&x, &y), f.add(&y, &x));
                prop_assert_eq!(f.mul(&x, &y), f.mul(&y, &x));
                prop_assert_eq!(f.add(&f.add(&x, &y), &z), f.add(&x, &f.add(&y, &z)));
                prop_assert_eq!(f.mul(&f.mul(&x, &y), &z), f.mul(&x, &f.mul(&y, &z)));
                prop_assert_eq!(
                    f.mul(&x, &f.add(&y, &z)),
                    f.add(&f.mul(&x, &y), &f.mul(&x, &z))
                );
                prop_assert_eq!(f.add(&x, &f.zero()), x.clone());
                prop_assert_eq!(f.mul(&x, &f.one()), x.clone());
                prop_assert!(f.add(&x, &f.neg(&x)).is_zero());
                prop_assert_eq!(f.sub(&x, &y), f.add(&x, &f.neg(&y)));
                if !x.is_zero() {
                    prop_assert!(f.mul(&x, &f.inv(&x).unwrap()).is_one());
                }
            }
        }

        #[test]
        fn fermat_prop(a in any::<i64>()) {
            for p in [2u64, 3, 5, 7, 11] {
                let f = Field::new(p).unwrap();
                let x = f.from_i64(a);
                prop_assert_eq!(f.pow(&x, p), x);
            }
        }

        #[test]
        fn rational_exactness(a in -100i64..=100, b in 1i64..=100) {
            // (a/b) * b == a holds exactly, no rounding
            let f = Field::rationals();
            let q = f.div(&f.from_i64(a), &f.from_i64(b)).unwrap();
            prop_assert_eq!(f.mul(&q, &f.from_i64(b)), f.from_i64(a));
        }
    }
}
