//! Exact rational scalars and dense univariate polynomials over them.
//!
//! Every algebraic identity in this crate is checked by reducing both sides
//! to a [`Poly`] and comparing with `==`. Coefficients are arbitrary-precision
//! rationals, so no check ever rounds.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact fraction in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// `num/den` as a [`Rational`]. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`. Surrounding whitespace is ignored.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::ParseRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(num, den))
}

/// Nearest `f64`. Exact for dyadic rationals that fit.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Generalized binomial coefficient `r (r-1) ... (r-n+1) / n!`.
pub fn binomial(r: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    for j in 0..n {
        let j = int(j as i64);
        acc = acc * (r - &j) / (j + Rational::one());
    }
    acc
}

pub fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * int(k))
}

/// The parameter pair `(alpha, a)` selecting the family `Q^(alpha,-a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Params {
    pub alpha: Rational,
    pub a: Rational,
}

impl Params {
    pub fn new(alpha: Rational, a: Rational) -> Self {
        Self { alpha, a }
    }

    pub fn from_ints(alpha: i64, a: i64) -> Self {
        Self::new(int(alpha), int(a))
    }

    /// Same `alpha`, `a -> a + l`.
    pub fn shift_a(&self, l: i64) -> Self {
        Self::new(self.alpha.clone(), &self.a + int(l))
    }

    /// `alpha -> -alpha`.
    pub fn negate_alpha(&self) -> Self {
        Self::new(-&self.alpha, self.a.clone())
    }

    /// Parameters of the product of two generating functions:
    /// `(alpha1 + alpha2, a1 + a2 + 1)`.
    pub fn combine(&self, other: &Params) -> Self {
        Self::new(
            &self.alpha + &other.alpha,
            &self.a + &other.a + Rational::one(),
        )
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(alpha={}, a={})", self.alpha, self.a)
    }
}

/// Dense polynomial in `x`, coefficients in ascending degree.
///
/// The zero polynomial has an empty coefficient list and no degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `c x^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `sigma(x) = 1 + x^2`.
    pub fn sigma() -> Self {
        Self::from_ints(&[1, 0, 1])
    }

    /// `alpha - 2x(a + shift)`, the first-order factor shared by the
    /// recursions and the Pearson equation.
    pub fn linear_factor(params: &Params, shift: i64) -> Self {
        let slope = -(int(2) * (&params.a + int(shift)));
        Self::new(vec![params.alpha.clone(), slope])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|k| k * c).collect())
    }

    pub fn diff(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn diff_n(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.diff())
    }

    pub fn eval(&self, x0: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x0 + c)
    }

    /// Coefficients rounded once to `f64`.
    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }

    /// `p(-x)`
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `p * sigma^n`
    pub fn mul_sigma_pow(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |acc, _| &acc * &Self::sigma())
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading_coeff().unwrap();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return (Self::zero(), self.clone());
        };
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        (Self::new(quot), Self::new(rem))
    }

    /// `p / sigma` when `sigma` divides `p` exactly.
    pub fn div_sigma(&self) -> Option<Poly> {
        let (q, r) = self.div_rem(&Self::sigma());
        r.is_zero().then_some(q)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PolyVisitor;

        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = Poly;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an array of rational strings")
            }

            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Poly, A::Error> {
                let mut coeffs = Vec::new();
                while let Some(s) = seq.next_element::<String>()? {
                    coeffs.push(parse_rational(&s).map_err(de::Error::custom)?);
                }
                Ok(Poly::new(coeffs))
            }
        }

        deserializer.deserialize_seq(PolyVisitor)
    }
}

fn add_coeffs(p: &Poly, q: &Poly, negate_q: bool) -> Poly {
    let n = p.coeffs.len().max(q.coeffs.len());
    let coeffs = (0..n)
        .map(|k| {
            let a = p.coeffs.get(k);
            let b = q.coeffs.get(k);
            match (a, b, negate_q) {
                (Some(a), Some(b), false) => a + b,
                (Some(a), Some(b), true) => a - b,
                (Some(a), None, _) => a.clone(),
                (None, Some(b), false) => b.clone(),
                (None, Some(b), true) => -b,
                (None, None, _) => unreachable!(),
            }
        })
        .collect();
    Poly::new(coeffs)
}

fn mul_coeffs(p: &Poly, q: &Poly) -> Poly {
    if p.is_zero() || q.is_zero() {
        return Poly::zero();
    }
    let mut out = vec![Rational::zero(); p.coeffs.len() + q.coeffs.len() - 1];
    for (i, a) in p.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.coeffs.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    Poly::new(out)
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                $body(self, rhs)
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                $body(&self, &rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                $body(&self, rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |p, q| add_coeffs(p, q, false));
forward_binop!(Sub, sub, |p, q| add_coeffs(p, q, true));
forward_binop!(Mul, mul, mul_coeffs);

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        *self = add_coeffs(self, rhs, false);
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        *self = add_coeffs(self, rhs, true);
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |acc, p| acc + p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn add_examples() {
        assert_eq!(Poly::sigma() + p(&[0, 0, -1]), Poly::one());
        assert_eq!(Poly::zero() + p(&[3, 4]), p(&[3, 4]));
        assert_eq!(p(&[0, 2]) + p(&[-2, 0, 6]), p(&[-2, 2, 6]));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(Poly::sigma() * Poly::one(), Poly::sigma());
        assert_eq!(p(&[0, -2]) * p(&[0, -4]), p(&[0, 0, 8]));
        assert_eq!(p(&[1, 2, 3]) * Poly::zero(), Poly::zero());
    }

    #[test]
    fn diff_examples() {
        assert_eq!(Poly::sigma().diff(), p(&[0, 2]));
        assert_eq!(Poly::one().diff(), Poly::zero());
        assert_eq!(p(&[-2, 0, 6]).diff(), p(&[0, 12]));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[-2, 0, 6]).eval(&int(0)), int(-2));
        assert_eq!(p(&[7, 1, 1]).eval(&int(0)), int(7));
        assert_eq!(Poly::sigma().eval(&int(2)), int(5));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(&int(-1), 0), int(1));
        assert_eq!(binomial(&int(-1), 2), int(1));
        assert_eq!(binomial(&rat(-3, 2), 1), rat(-3, 2));
        assert_eq!(binomial(&int(5), 2), int(10));
        assert_eq!(binomial(&int(2), 3), int(0));
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::new(vec![int(0), int(0)]), Poly::zero());
        assert_eq!(Poly::one().degree(), Some(0));
        assert!(Poly::zero().coeffs().is_empty());
    }

    #[test]
    fn div_sigma_exact_and_inexact() {
        let q = p(&[3, -1, 2]);
        assert_eq!((&q * &Poly::sigma()).div_sigma(), Some(q.clone()));
        assert_eq!(q.div_sigma(), None);
        let (quot, rem) = p(&[1, 2, 3, 4]).div_rem(&p(&[1, 1]));
        assert_eq!(quot * p(&[1, 1]) + rem.clone(), p(&[1, 2, 3, 4]));
        assert!(rem.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn parse_and_format_rationals() {
        assert_eq!(parse_rational("-3/2").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 5 ").unwrap(), int(5));
        assert_eq!(parse_rational("4/-6").unwrap(), rat(-2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(rat(-3, 2).to_string(), "-3/2");
        assert_eq!(int(5).to_string(), "5");
    }

    #[test]
    fn json_serialization() {
        let q = Poly::new(vec![rat(-1, 3), int(0), int(1)]);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"["-1/3","0","1"]"#);
        let back: Poly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
        assert_eq!(serde_json::to_string(&Poly::zero()).unwrap(), "[]");
        let trimmed: Poly = serde_json::from_str(r#"["1","0"]"#).unwrap();
        assert_eq!(trimmed, Poly::one());
        assert!(serde_json::from_str::<Poly>(r#"["1/0"]"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(
            p(&[24, 0, -240, 0, 120]).to_string(),
            "120x^4 - 240x^2 + 24"
        );
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(
            Poly::new(vec![rat(-1, 3), int(0), int(1)]).to_string(),
            "x^2 - (1/3)"
        );
        assert_eq!(Poly::zero().to_string(), "0");
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-6i64..=6, 1i64..=4), 0..=7)
            .prop_map(|cs| Poly::new(cs.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn ring_axioms(p in small_poly(), q in small_poly(), r in small_poly()) {
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&p - &p, Poly::zero());
        }

        #[test]
        fn leibniz_rule(p in small_poly(), q in small_poly()) {
            prop_assert_eq!((&p * &q).diff(), &p.diff() * &q + &p * &q.diff());
        }

        #[test]
        fn degree_of_product(p in small_poly(), q in small_poly()) {
            if let (Some(dp), Some(dq)) = (p.degree(), q.degree()) {
                prop_assert_eq!((&p * &q).degree(), Some(dp + dq));
            }
        }

        #[test]
        fn eval_is_homomorphism(p in small_poly(), q in small_poly(), n in -5i64..=5, d in 1i64..=3) {
            let x0 = rat(n, d);
            prop_assert_eq!((&p * &q).eval(&x0), p.eval(&x0) * q.eval(&x0));
            prop_assert_eq!((&p + &q).eval(&x0), p.eval(&x0) + q.eval(&x0));
        }

        #[test]
        fn json_roundtrip(p in small_poly()) {
            let s = serde_json::to_string(&p).unwrap();
            prop_assert_eq!(serde_json::from_str::<Poly>(&s).unwrap(), p);
        }
    }
}
