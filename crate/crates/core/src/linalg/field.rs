use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The ground field `k`: the rationals or a prime field `F_p` with `p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldTag {
    Rationals,
    Prime(Modulus),
}

/// A prime modulus below `2^31`. Only constructible through [`Modulus::new`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Modulus(p as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldTag {
    pub fn prime(p: u64) -> Result<Self> {
        Modulus::new(p).map(FieldTag::Prime)
    }

    /// The characteristic; 0 for the rationals.
    pub fn characteristic(self) -> u32 {
        match self {
            FieldTag::Rationals => 0,
            FieldTag::Prime(m) => m.get(),
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            FieldTag::Rationals => Scalar(Repr::Rational(BigRational::from_integer(v.into()))),
            FieldTag::Prime(m) => {
                let p = m.get() as i64;
                Scalar(Repr::Residue {
                    value: v.rem_euclid(p) as u32,
                    modulus: m.get(),
                })
            }
        }
    }

    /// Embeds `numer / denom`; fails when the denominator vanishes in this field.
    pub fn from_ratio(self, numer: &BigInt, denom: &BigInt) -> Result<Scalar> {
        match self {
            FieldTag::Rationals => {
                if denom.is_zero() {
                    return Err(Error::NotInvertible("0".into(), self));
                }
                Ok(Scalar(Repr::Rational(BigRational::new(
                    numer.clone(),
                    denom.clone(),
                ))))
            }
            FieldTag::Prime(m) => {
                let p = BigInt::from(m.get());
                let reduce = |x: &BigInt| -> u32 {
                    let r = x % &p;
                    let r = if r.is_negative() { r + &p } else { r };
                    r.to_u32().expect("residue fits in u32")
                };
                let d = Scalar(Repr::Residue {
                    value: reduce(denom),
                    modulus: m.get(),
                });
                let n = Scalar(Repr::Residue {
                    value: reduce(numer),
                    modulus: m.get(),
                });
                let inv = d
                    .inv()
                    .ok_or_else(|| Error::NotInvertible(denom.to_string(), self))?;
                Ok(&n * &inv)
            }
        }
    }

    /// Maps a scalar from another field into this one (rationals reduce mod p).
    pub fn convert(self, s: &Scalar) -> Result<Scalar> {
        match (&s.0, self) {
            (Repr::Rational(q), _) => self.from_ratio(q.numer(), q.denom()),
            (Repr::Residue { modulus, .. }, FieldTag::Prime(m)) if *modulus == m.get() => {
                Ok(s.clone())
            }
            (Repr::Residue { .. }, _) => Err(Error::FieldMismatch(s.field(), self)),
        }
    }

    /// Parses an integer or `a/b` literal into this field.
    pub fn parse_scalar(self, text: &str) -> Result<Scalar, String> {
        let (n, d) = match text.split_once('/') {
            Some((n, d)) => (n, d),
            None => (text, "1"),
        };
        let numer = BigInt::from_str(n).map_err(|_| format!("invalid number `{text}`"))?;
        let denom = BigInt::from_str(d).map_err(|_| format!("invalid number `{text}`"))?;
        self.from_ratio(&numer, &denom)
            .map_err(|_| format!("`{text}` has a denominator that vanishes in {self}"))
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rationals => write!(f, "Q"),
            FieldTag::Prime(m) => write!(f, "F{}", m.get()),
        }
    }
}

impl FromStr for FieldTag {
    type Err = Error;

    /// Accepts `Q` or `F<p>`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Q" => Ok(FieldTag::Rationals),
            _ => {
                let p = s
                    .strip_prefix('F')
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::UnknownField(s.to_string()))?;
                FieldTag::prime(p)
            }
        }
    }
}

/// An exact field element.
///
/// Rationals are kept in lowest terms with positive denominator; residues
/// are canonical representatives in `[0, p)`. Arithmetic between scalars of
/// different fields panics: matrices guarantee a single field per payload.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    Residue { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> FieldTag {
        match &self.0 {
            Repr::Rational(_) => FieldTag::Rationals,
            Repr::Residue { modulus, .. } => FieldTag::Prime(Modulus(*modulus)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.is_zero(),
            Repr::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.is_one(),
            Repr::Residue { value, .. } => *value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(q) => Some(q),
            Repr::Residue { .. } => None,
        }
    }

    pub fn residue(&self) -> Option<u32> {
        match &self.0 {
            Repr::Rational(_) => None,
            Repr::Residue { value, .. } => Some(*value),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Rational(q) => Scalar(Repr::Rational(q.recip())),
            Repr::Residue { value, modulus } => Scalar(Repr::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            }),
        })
    }
}

fn pow_mod(base: u32, mut exp: u32, modulus: u32) -> u32 {
    let m = modulus as u64;
    let mut b = base as u64 % m;
    let mut acc = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u32
}

macro_rules! binop {
    ($trait:ident, $method:ident, $rat:expr, $res:expr) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (&self.0, &rhs.0) {
                    (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational($rat(a, b))),
                    (
                        Repr::Residue { value: a, modulus },
                        Repr::Residue { value: b, modulus: m2 },
                    ) if modulus == m2 => Scalar(Repr::Residue {
                        value: $res(*a as u64, *b as u64, *modulus as u64) as u32,
                        modulus: *modulus,
                    }),
                    _ => panic!("scalar field mismatch: {} vs {}", self.field(), rhs.field()),
                }
            }
        }
    };
}

binop!(Add, add, |a: &BigRational, b| a + b, |a, b, m| (a + b) % m);
binop!(Sub, sub, |a: &BigRational, b| a - b, |a, b, m| (a + m - b) % m);
binop!(Mul, mul, |a: &BigRational, b| a * b, |a, b, m| (a * b) % m);

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Rational(q) => Scalar(Repr::Rational(-q)),
            Repr::Residue { value, modulus } => Scalar(Repr::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            }),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Repr::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Repr::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}
