//! Exact commutative coefficient rings.
//!
//! Every matrix in the crate carries entries of one [`Ring`]. A [`Scalar`]
//! knows its ring, so mixing rings is detected at runtime. The checked
//! operations (`try_add`, `try_mul`, ...) report a mismatch as an error; the
//! operator impls panic instead and are meant for code that already holds
//! the single-ring invariant (matrix kernels).

mod laurent;
mod parse;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use laurent::Laurent;
pub use parse::{format_scalar, parse_scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: Ring, right: Ring },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("literal `{literal}` is not an element of {ring}")]
    WrongRing { literal: String, ring: Ring },
    #[error("modulus {0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("unknown ring `{0}` (expected integer, rational, laurent or gf <p>)")]
    UnknownRing(String),
    #[error("specialization value must be nonzero")]
    ZeroSpecialization,
    #[error("{dividend} is not divisible by {divisor}")]
    Inexact { dividend: String, divisor: String },
}

/// A prime modulus, checked at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(p: u64) -> Result<Self, ScalarError> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(Modulus(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= p {
        if p.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Which coefficient ring a scalar or matrix lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    Rationals,
    /// Laurent polynomials in `q` over the rationals.
    Laurent,
    Prime(Modulus),
}

impl Ring {
    pub fn prime(p: u64) -> Result<Ring, ScalarError> {
        Modulus::new(p).map(Ring::Prime)
    }

    /// Rings in which every nonzero element is invertible.
    pub fn is_field(self) -> bool {
        matches!(self, Ring::Rationals | Ring::Prime(_))
    }

    /// Short token used in operator files and reports.
    pub fn token(self) -> String {
        match self {
            Ring::Integers => "integer".into(),
            Ring::Rationals => "rational".into(),
            Ring::Laurent => "laurent".into(),
            Ring::Prime(p) => format!("gf {}", p.get()),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => f.write_str("integers"),
            Ring::Rationals => f.write_str("rationals"),
            Ring::Laurent => f.write_str("laurent polynomials in q"),
            Ring::Prime(p) => write!(f, "GF({})", p.get()),
        }
    }
}

impl FromStr for Ring {
    type Err = ScalarError;

    /// Accepts `integer`, `rational`, `laurent`, and `gf <p>` / `gf:<p>` / `gf<p>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "integer" | "integers" | "int" | "z" => return Ok(Ring::Integers),
            "rational" | "rationals" | "q" => return Ok(Ring::Rationals),
            "laurent" | "laurent-q" => return Ok(Ring::Laurent),
            _ => {}
        }
        if let Some(rest) = t.strip_prefix("gf") {
            let digits = rest.trim_start_matches([' ', ':', '(']).trim_end_matches(')');
            let p: u64 = digits
                .trim()
                .parse()
                .map_err(|_| ScalarError::UnknownRing(s.to_string()))?;
            return Ring::prime(p);
        }
        Err(ScalarError::UnknownRing(s.to_string()))
    }
}

/// An element of one of the supported exact rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Laurent(Laurent),
    Mod { value: u64, modulus: Modulus },
}

impl Scalar {
    pub fn ring(&self) -> Ring {
        match self {
            Scalar::Int(_) => Ring::Integers,
            Scalar::Rat(_) => Ring::Rationals,
            Scalar::Laurent(_) => Ring::Laurent,
            Scalar::Mod { modulus, .. } => Ring::Prime(*modulus),
        }
    }

    pub fn zero(ring: Ring) -> Scalar {
        Scalar::from_i64(ring, 0)
    }

    pub fn one(ring: Ring) -> Scalar {
        Scalar::from_i64(ring, 1)
    }

    pub fn from_i64(ring: Ring, n: i64) -> Scalar {
        Scalar::from_bigint(ring, BigInt::from(n))
    }

    pub fn from_bigint(ring: Ring, n: BigInt) -> Scalar {
        match ring {
            Ring::Integers => Scalar::Int(n),
            Ring::Rationals => Scalar::Rat(BigRational::from_integer(n)),
            Ring::Laurent => Scalar::Laurent(Laurent::from(n)),
            Ring::Prime(m) => Scalar::Mod {
                value: reduce_bigint(&n, m),
                modulus: m,
            },
        }
    }

    /// Embeds a rational number. Fails for integers with a non-trivial
    /// denominator and for prime fields when the denominator vanishes mod p.
    pub fn from_rational(ring: Ring, r: &BigRational) -> Result<Scalar, ScalarError> {
        match ring {
            Ring::Integers => {
                if r.is_integer() {
                    Ok(Scalar::Int(r.to_integer()))
                } else {
                    Err(ScalarError::WrongRing {
                        literal: format!("{}/{}", r.numer(), r.denom()),
                        ring,
                    })
                }
            }
            Ring::Rationals => Ok(Scalar::Rat(r.clone())),
            Ring::Laurent => Ok(Scalar::Laurent(Laurent::constant(r.clone()))),
            Ring::Prime(m) => {
                let num = reduce_bigint(r.numer(), m);
                let den = reduce_bigint(r.denom(), m);
                if den == 0 {
                    return Err(ScalarError::WrongRing {
                        literal: format!("{}/{}", r.numer(), r.denom()),
                        ring,
                    });
                }
                Ok(Scalar::Mod {
                    value: mul_mod(num, inv_mod(den, m.get()), m.get()),
                    modulus: m,
                })
            }
        }
    }

    /// The indeterminate `q` of the Laurent ring.
    pub fn q() -> Scalar {
        Scalar::Laurent(Laurent::q())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(n) => n.is_zero(),
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Laurent(p) => p.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Int(n) => n.is_one(),
            Scalar::Rat(r) => r.is_one(),
            Scalar::Laurent(p) => p.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    fn check_ring(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.ring() == other.ring() {
            Ok(())
        } else {
            Err(ScalarError::RingMismatch {
                left: self.ring(),
                right: other.ring(),
            })
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_ring(other)?;
        Ok(match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a + b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Laurent(a), Scalar::Laurent(b)) => Scalar::Laurent(a.add(b)),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: (a + b) % modulus.get(),
                modulus: *modulus,
            },
            _ => unreachable!("ring checked"),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_ring(other)?;
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_ring(other)?;
        Ok(match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a * b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Laurent(a), Scalar::Laurent(b)) => Scalar::Laurent(a.mul(b)),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: mul_mod(*a, *b, modulus.get()),
                modulus: *modulus,
            },
            _ => unreachable!("ring checked"),
        })
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(-a),
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Laurent(a) => Scalar::Laurent(a.neg()),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: (modulus.get() - value) % modulus.get(),
                modulus: *modulus,
            },
        }
    }

    /// Multiplicative inverse. Laurent elements are units only when they are
    /// single monomials `c q^k`; integers only when `±1`.
    pub fn invert(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        match self {
            Scalar::Int(n) => {
                if n.abs().is_one() {
                    Ok(self.clone())
                } else {
                    Err(ScalarError::NotAUnit(n.to_string()))
                }
            }
            Scalar::Rat(r) => Ok(Scalar::Rat(r.recip())),
            Scalar::Laurent(p) => p
                .inverse()
                .map(Scalar::Laurent)
                .ok_or_else(|| ScalarError::NotAUnit(p.to_string())),
            Scalar::Mod { value, modulus } => Ok(Scalar::Mod {
                value: inv_mod(*value, modulus.get()),
                modulus: *modulus,
            }),
        }
    }

    /// Exact quotient in the ring itself (used by fraction-free elimination,
    /// where every division is known to be exact).
    pub fn exact_div(&self, divisor: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_ring(divisor)?;
        if divisor.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let inexact = || ScalarError::Inexact {
            dividend: format_scalar(self),
            divisor: format_scalar(divisor),
        };
        match (self, divisor) {
            (Scalar::Int(a), Scalar::Int(b)) => {
                let (q, r) = a.div_rem(b);
                if r.is_zero() {
                    Ok(Scalar::Int(q))
                } else {
                    Err(inexact())
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a / b)),
            (Scalar::Laurent(a), Scalar::Laurent(b)) => {
                a.exact_div(b).map(Scalar::Laurent).ok_or_else(inexact)
            }
            (Scalar::Mod { .. }, Scalar::Mod { .. }) => self.try_mul(&divisor.invert()?),
            _ => unreachable!("ring checked"),
        }
    }

    /// Evaluates a Laurent element at `q = value`, giving a rational.
    pub fn specialize_q(&self, value: &BigRational) -> Result<Scalar, ScalarError> {
        if value.is_zero() {
            return Err(ScalarError::ZeroSpecialization);
        }
        match self {
            Scalar::Laurent(p) => Ok(Scalar::Rat(p.evaluate(value))),
            other => Err(ScalarError::RingMismatch {
                left: other.ring(),
                right: Ring::Laurent,
            }),
        }
    }

    /// Moves an element into another ring when the embedding is canonical:
    /// integers into anything, rationals into the Laurent ring or a prime field.
    pub fn convert(&self, target: Ring) -> Result<Scalar, ScalarError> {
        if self.ring() == target {
            return Ok(self.clone());
        }
        match self {
            Scalar::Int(n) => Ok(Scalar::from_bigint(target, n.clone())),
            Scalar::Rat(r) if target != Ring::Integers => Scalar::from_rational(target, r),
            Scalar::Laurent(p) if target != Ring::Integers => match p.as_constant() {
                Some(c) => Scalar::from_rational(target, &c),
                None => Err(ScalarError::WrongRing {
                    literal: p.to_string(),
                    ring: target,
                }),
            },
            _ => Err(ScalarError::WrongRing {
                literal: format_scalar(self),
                ring: target,
            }),
        }
    }

    /// Canonical "positive" normalization for the Laurent ring: returns the
    /// underlying polynomial when this is a Laurent element.
    pub fn as_laurent(&self) -> Option<&Laurent> {
        match self {
            Scalar::Laurent(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            _ => None,
        }
    }
}

fn reduce_bigint(n: &BigInt, m: Modulus) -> u64 {
    let p = BigInt::from(m.get());
    n.mod_floor(&p).to_u64().expect("residue fits in u64")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2)
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_scalar(self))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}
