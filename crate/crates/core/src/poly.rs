//! Exact polynomials in `x` and `y` allowing negative powers of `x`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{parse_rational, rational_to_string};
use crate::error::{Error, Result};
use crate::linalg::Rational;

/// Exponent pair `(power of x, power of y)`.
pub type Exponent = (i32, u32);

#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponent, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0, 0)
    }

    pub fn x() -> Self {
        LaurentPoly::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        LaurentPoly::monomial(1, 0, 1)
    }

    pub fn constant(c: i64) -> Self {
        LaurentPoly::monomial(c, 0, 0)
    }

    pub fn monomial(c: i64, a: i32, b: u32) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term((a, b), Rational::from_integer(c.into()));
        p
    }

    /// Builds a polynomial from `(coefficient, x power, y power)` triples.
    pub fn from_terms(terms: &[(i64, i32, u32)]) -> Self {
        let mut p = LaurentPoly::zero();
        for &(c, a, b) in terms {
            p.add_term((a, b), Rational::from_integer(c.into()));
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplies by `x^a y^b`.
    pub fn shift(&self, a: i32, b: u32) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(p, q), v)| ((p + a, q + b), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn min_x_power(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.0).min()
    }

    /// True iff there are no negative powers of `x`.
    pub fn is_polynomial(&self) -> bool {
        self.min_x_power().is_none_or(|a| a >= 0)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Total degree of the highest term.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|&(a, b)| a as i64 + b as i64).max()
    }

    /// Leading term in the order x-power first, then y-power.
    fn leading(&self) -> Option<(Exponent, &Rational)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    /// `q` with `q * divisor == self`, or `InexactDivision`.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        if divisor.is_zero() {
            return Err(Error::InexactDivision);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        // x is a unit: shift both sides to lowest x power 0, divide as
        // polynomials (lex order, x first), shift back.
        let (sa, sb) = (self.min_x_power().unwrap(), divisor.min_x_power().unwrap());
        let mut rem = self.shift(-sa, 0);
        let div = divisor.shift(-sb, 0);
        let ((da, db), dc) = div.leading().map(|(e, c)| (e, c.clone())).unwrap();
        let mut quot = LaurentPoly::zero();
        while let Some(((ra, rb), rc)) = rem.leading().map(|(e, c)| (e, c.clone())) {
            if ra < da || rb < db {
                return Err(Error::InexactDivision);
            }
            let c = rc / &dc;
            let step = div.shift(ra - da, rb - db).scale(&c);
            quot.add_term((ra - da, rb - db), c);
            rem = &rem - &step;
        }
        Ok(quot.shift(sa - sb, 0))
    }

    pub fn divides(&self, other: &LaurentPoly) -> bool {
        other.exact_div(self).is_ok()
    }

    /// Substitutes `x := -y`; defined for polynomials only.
    pub fn substitute_x_neg_y(&self) -> Result<LaurentPoly> {
        if !self.is_polynomial() {
            return Err(Error::NegativePower);
        }
        let mut out = LaurentPoly::zero();
        for (&(a, b), c) in &self.terms {
            let c = if a % 2 == 0 { c.clone() } else { -c };
            out.add_term((0, a as u32 + b), c);
        }
        Ok(out)
    }

    /// `(cx, cy, coeff)` rows in display order.
    pub fn json_terms(&self) -> Vec<PolyTerm> {
        self.display_order()
            .map(|(&(a, b), c)| PolyTerm {
                cx: a,
                cy: b,
                coeff: rational_to_string(c),
            })
            .collect()
    }

    pub fn from_json_terms(terms: &[PolyTerm]) -> Result<LaurentPoly> {
        let mut p = LaurentPoly::zero();
        for t in terms {
            p.add_term((t.cx, t.cy), parse_rational(&t.coeff)?);
        }
        Ok(p)
    }

    fn display_order(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter().rev()
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PolyTerm {
    pub cx: i32,
    pub cy: u32,
    pub coeff: String,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.json_terms().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<PolyTerm>::deserialize(d)?;
        LaurentPoly::from_json_terms(&terms).map_err(serde::de::Error::custom)
    }
}

/// Expanded sum, terms sorted by x power then y power, both descending:
/// `-1*x^1*y^1 - 1*y^2`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&(a, b), c)) in self.display_order().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            let mut parts = vec![rational_to_string(&c.abs())];
            if a != 0 {
                parts.push(format!("x^{a}"));
            }
            if b != 0 {
                parts.push(format!("y^{b}"));
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(p, q), d) in &rhs.terms {
                out.add_term((a + p, b + q), c * d);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x() -> LaurentPoly {
        LaurentPoly::x()
    }
    fn y() -> LaurentPoly {
        LaurentPoly::y()
    }

    #[test]
    fn ring_examples() {
        let p = (x() + y()) * (x() - y());
        assert_eq!(p, x() * x() - y() * y());
        let w2 = -&(y() * (x() + y()));
        assert_eq!(w2.to_string(), "-1*x^1*y^1 - 1*y^2");
        assert_eq!(
            w2.exact_div(&(y() * (x() + y()))).unwrap(),
            LaurentPoly::constant(-1)
        );
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        let inv = LaurentPoly::one() - y() * LaurentPoly::monomial(1, -1, 0);
        assert_eq!(inv.to_string(), "1 - 1*x^-1*y^1");
        assert!(!inv.is_polynomial());
    }

    #[test]
    fn substitution_kills_x_plus_y() {
        for n in 5..9 {
            let p = y() * (LaurentPoly::constant(3) * x() + y()) * (x() + y()).pow(n - 4);
            assert!(p.substitute_x_neg_y().unwrap().is_zero());
        }
        let q4 = LaurentPoly::from_terms(&[(6, 2, 0), (3, 1, 1), (1, 0, 2)]);
        assert_eq!(
            q4.substitute_x_neg_y().unwrap(),
            LaurentPoly::monomial(4, 0, 2)
        );
        assert!(LaurentPoly::monomial(1, -1, 0)
            .substitute_x_neg_y()
            .is_err());
    }

    #[test]
    fn inexact_division_is_reported() {
        let a = x() + LaurentPoly::one();
        assert!(matches!(a.exact_div(&y()), Err(Error::InexactDivision)));
        assert!(!((x() + y()).pow(2)).divides(&(y() * (x() + y()))));
        assert!((x() + y()).divides(&(y() * (x() + y()))));
    }

    #[test]
    fn json_round_trip() {
        let p = LaurentPoly::from_terms(&[(6, 2, 0), (-3, -1, 1), (1, 0, 2)]);
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v[0]["cx"], 2);
        assert_eq!(serde_json::from_value::<LaurentPoly>(v).unwrap(), p);
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-5i64..=5, -2i32..=3, 0u32..=3), 0..5)
            .prop_map(|t| LaurentPoly::from_terms(&t))
    }

    proptest! {
        #[test]
        fn product_divides_back(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let p = &a * &b;
            prop_assert_eq!(p.exact_div(&b).unwrap(), a);
        }

        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }
    }
}
