//! Laurent polynomials in one variable `q` over exact rationals.
//!
//! A value is stored as a lowest exponent plus a dense run of coefficients.
//! The run never starts or ends with a zero, and the empty run is zero, so
//! structural equality is ring equality.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent {
    low: i64,
    coeffs: Vec<BigRational>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: BigRational, exp: i64) -> Self {
        Self::from_parts(exp, vec![c])
    }

    /// Builds `sum_i coeffs[i] * q^(low + i)`, normalizing away zero ends.
    pub fn from_parts(low: i64, coeffs: Vec<BigRational>) -> Self {
        let mut p = Laurent { low, coeffs };
        p.normalize();
        p
    }

    /// Builds a Laurent polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let terms: Vec<(i64, BigRational)> = terms.into_iter().collect();
        let Some(low) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let high = terms.iter().map(|t| t.0).max().unwrap_or(low);
        let mut coeffs = vec![BigRational::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        Self::from_parts(low, coeffs)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.low = 0;
            }
            Some(first) => {
                let last = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
                self.coeffs.truncate(last + 1);
                self.coeffs.drain(..first);
                self.low += first as i64;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient; `None` for zero.
    pub fn low_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient; `None` for zero.
    pub fn high_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coefficient(&self, exp: i64) -> BigRational {
        if exp < self.low {
            return BigRational::zero();
        }
        self.coeffs
            .get((exp - self.low) as usize)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigRational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// The constant value if this is a degree-zero element.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            Some(BigRational::zero())
        } else if self.low == 0 && self.coeffs.len() == 1 {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self
            .high_exponent()
            .unwrap()
            .max(other.high_exponent().unwrap());
        let mut coeffs = vec![BigRational::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[(other.low - low) as usize + i] += c;
        }
        Laurent::from_parts(low, coeffs)
    }

    pub fn neg(&self) -> Laurent {
        Laurent {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        if self.is_zero() || other.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        // Product of nonzero end coefficients is nonzero, so no renormalization
        // is needed beyond interior zeros, which are allowed.
        Laurent {
            low: self.low + other.low,
            coeffs,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Laurent {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplies by `q^shift`.
    pub fn shift(&self, shift: i64) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            low: self.low + shift,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Inverse of a unit, i.e. of a nonzero monomial `c q^k`.
    pub fn inverse(&self) -> Option<Laurent> {
        if !self.is_monomial() {
            return None;
        }
        Some(Laurent::monomial(self.coeffs[0].recip(), -self.low))
    }

    /// Exact quotient `self / divisor`, or `None` when the divisor does not
    /// divide in the Laurent ring.
    pub fn exact_div(&self, divisor: &Laurent) -> Option<Laurent> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        if divisor.is_monomial() {
            let inv = divisor.inverse()?;
            return Some(self.mul(&inv));
        }
        // Both coefficient runs have nonzero constant terms once the q-power is
        // stripped, and such a divisor is coprime to q, so polynomial division
        // of the runs decides divisibility.
        let (quot, rem) = poly_divmod(&self.coeffs, &divisor.coeffs);
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Laurent::from_parts(self.low - divisor.low, quot))
    }

    /// Monic greatest common divisor, ignoring unit factors `c q^k`.
    /// Returns a polynomial with nonzero constant term (or zero when both are zero).
    pub fn gcd(&self, other: &Laurent) -> Laurent {
        if self.is_zero() {
            return other.monic_part();
        }
        if other.is_zero() {
            return self.monic_part();
        }
        let mut a = self.coeffs.clone();
        let mut b = other.coeffs.clone();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let (_, rem) = poly_divmod(&a, &b);
            a = b;
            b = trim(rem);
        }
        Laurent::from_parts(0, a).monic_part()
    }

    /// `self` with its q-power stripped and its top coefficient scaled to 1.
    pub fn monic_part(&self) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        let lead = self.coeffs.last().unwrap().clone();
        Laurent::from_parts(0, self.coeffs.iter().map(|c| c / &lead).collect())
    }

    /// Leading coefficient (of the highest power), zero for zero.
    pub fn leading_coefficient(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    /// Evaluates at `q = value`; `value` must be nonzero when negative exponents occur.
    pub fn evaluate(&self, value: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in self.terms() {
            acc += c * pow_rational(value, e);
        }
        acc
    }
}

fn pow_rational(value: &BigRational, exp: i64) -> BigRational {
    let base = if exp < 0 { value.recip() } else { value.clone() };
    num_traits::pow(base, exp.unsigned_abs() as usize)
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Polynomial long division on ascending coefficient vectors.
fn poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let den = trim(den.to_vec());
    let mut rem = trim(num.to_vec());
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let lead = den.last().expect("nonzero divisor").clone();
    let mut quot = vec![BigRational::zero(); rem.len() - den.len() + 1];
    while rem.len() >= den.len() && !rem.is_empty() {
        let shift = rem.len() - den.len();
        let factor = rem.last().unwrap() / &lead;
        for (i, d) in den.iter().enumerate() {
            if !d.is_zero() {
                rem[shift + i] -= &factor * d;
            }
        }
        quot[shift] = factor;
        rem.pop();
        rem = trim(rem);
    }
    (quot, rem)
}

fn fmt_coefficient(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Laurent {
    /// Terms in decreasing exponent order, e.g. `q - q^-1`, `1/3*q^-2`, `q^2 + 2*q + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms().rev().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let body = match (e.cmp(&0), abs.is_one()) {
                (Ordering::Equal, _) => fmt_coefficient(&abs),
                (_, true) if e == 1 => "q".to_string(),
                (_, true) => format!("q^{e}"),
                (_, false) if e == 1 => format!("{}*q", fmt_coefficient(&abs)),
                (_, false) => format!("{}*q^{e}", fmt_coefficient(&abs)),
            };
            f.write_str(&body)?;
        }
        Ok(())
    }
}

impl From<BigInt> for Laurent {
    fn from(n: BigInt) -> Self {
        Laurent::constant(BigRational::from_integer(n))
    }
}
