//! Exact polynomials in two formal variables `a` and `b`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

/// `Σ c_{i,j} a^i b^j`; zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivarPoly {
    pub fn zero() -> BivarPoly {
        BivarPoly::default()
    }

    pub fn one() -> BivarPoly {
        BivarPoly::constant(1)
    }

    pub fn constant(c: i64) -> BivarPoly {
        BivarPoly::monomial(0, 0, c)
    }

    pub fn a() -> BivarPoly {
        BivarPoly::monomial(1, 0, 1)
    }

    pub fn b() -> BivarPoly {
        BivarPoly::monomial(0, 1, 1)
    }

    pub fn monomial(deg_a: u32, deg_b: u32, coeff: impl Into<BigInt>) -> BivarPoly {
        let mut p = BivarPoly::zero();
        p.add_term(deg_a, deg_b, coeff.into());
        p
    }

    pub fn add_term(&mut self, deg_a: u32, deg_b: u32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry((deg_a, deg_b)).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&(deg_a, deg_b));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, deg_a: u32, deg_b: u32) -> BigInt {
        self.terms.get(&(deg_a, deg_b)).cloned().unwrap_or_default()
    }

    /// Terms by increasing `(deg_a, deg_b)`.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn scale(&self, c: &BigInt) -> BivarPoly {
        if c.is_zero() {
            return BivarPoly::zero();
        }
        BivarPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Exchanges the roles of `a` and `b`.
    pub fn swap(&self) -> BivarPoly {
        BivarPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), v)| ((j, i), v.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * Pow::pow(a, i) * Pow::pow(b, j))
            .sum()
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// The smallest `(deg_a, deg_b)` where the two polynomials differ, with
    /// both coefficients.
    pub fn first_difference(&self, other: &BivarPoly) -> Option<((u32, u32), BigInt, BigInt)> {
        let diff = self - other;
        diff.terms
            .keys()
            .next()
            .map(|&(i, j)| ((i, j), self.coeff(i, j), other.coeff(i, j)))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomials serialize")
    }
}

impl fmt::Display for BivarPoly {
    /// Terms by increasing `(deg_a, deg_b)`, each with an explicit sign:
    /// `+1 +2*a -3*a^2*b`. The zero polynomial is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            write!(f, "{sign}{}", c.abs())?;
            match i {
                0 => {}
                1 => f.write_str("*a")?,
                _ => write!(f, "*a^{i}")?,
            }
            match j {
                0 => {}
                1 => f.write_str("*b")?,
                _ => write!(f, "*b^{j}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct JsonTerm {
    #[serde(rename = "degA")]
    deg_a: u32,
    #[serde(rename = "degB")]
    deg_b: u32,
    coeff: String,
}

impl Serialize for BivarPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (&(deg_a, deg_b), c) in &self.terms {
            seq.serialize_element(&JsonTerm {
                deg_a,
                deg_b,
                coeff: c.to_string(),
            })?;
        }
        seq.end()
    }
}

impl Add for &BivarPoly {
    type Output = BivarPoly;

    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BivarPoly {
    type Output = BivarPoly;

    fn add(mut self, rhs: BivarPoly) -> BivarPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&BivarPoly> for BivarPoly {
    fn add_assign(&mut self, rhs: &BivarPoly) {
        for (&(i, j), c) in &rhs.terms {
            self.add_term(i, j, c.clone());
        }
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;

    fn neg(self) -> BivarPoly {
        BivarPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;

    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        self + &-rhs
    }
}

impl Sub for BivarPoly {
    type Output = BivarPoly;

    fn sub(self, rhs: BivarPoly) -> BivarPoly {
        &self - &rhs
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;

    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (&(i, j), c) in &self.terms {
            for (&(k, l), d) in &rhs.terms {
                out.add_term(i + k, j + l, c * d);
            }
        }
        out
    }
}

impl Mul for BivarPoly {
    type Output = BivarPoly;

    fn mul(self, rhs: BivarPoly) -> BivarPoly {
        &self * &rhs
    }
}

/// A quotient of two polynomials, compared by cross-multiplication.
#[derive(Debug, Clone, Serialize)]
pub struct RationalExpr {
    pub num: BivarPoly,
    pub den: BivarPoly,
}

impl RationalExpr {
    pub fn new(num: BivarPoly, den: BivarPoly) -> RationalExpr {
        assert!(!den.is_zero(), "denominator must not be zero");
        RationalExpr { num, den }
    }

    /// Reduced value at `a = b = 1` as `(numerator, denominator)` with a
    /// positive denominator.
    pub fn eval_at_one(&self) -> (BigInt, BigInt) {
        reduce(self.num.eval_at_one(), self.den.eval_at_one())
    }
}

impl PartialEq for RationalExpr {
    fn eq(&self, other: &RationalExpr) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

fn reduce(num: BigInt, den: BigInt) -> (BigInt, BigInt) {
    assert!(!den.is_zero(), "value has a zero denominator");
    let g = num.gcd(&den);
    let (mut n, mut d) = (num / &g, den / &g);
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    (n, d)
}

/// Renders a reduced fraction, dropping a unit denominator.
pub fn fraction_string((num, den): &(BigInt, BigInt)) -> String {
    if den.is_one() {
        num.to_string()
    } else {
        format!("{num}/{den}")
    }
}
