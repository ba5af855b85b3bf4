//! Symbolic calculus on `p(x) sigma(x)^(-k) w0(x)`.
//!
//! `w0(x) = sigma^(-(a+1)) exp(-alpha arccot x)` never gets evaluated here.
//! Its logarithmic derivative is the rational function
//! `(alpha - 2x(a+1)) / sigma`, so the class of elements `p sigma^(-k) w0`
//! is closed under `d/dx`:
//!
//! ```text
//! d/dx [p sigma^-k w0] = [sigma p' + (alpha - 2x(a+1) - 2kx) p] sigma^(-k-1) w0
//! ```
//!
//! That closure rule is all the Rodrigues formulas need.

use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::exact::{int, Params, Poly, Rational};

/// `p(x) * sigma(x)^(-k) * w0(x)` for the weight selected by `params`.
///
/// Canonical form: when `k > 0`, `sigma` does not divide `p`. The zero
/// element always has `k = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedElement {
    params: Params,
    k: usize,
    p: Poly,
}

impl WeightedElement {
    pub fn new(params: Params, p: Poly, k: usize) -> Self {
        let mut e = Self { params, k, p };
        e.canonicalize();
        e
    }

    /// `p * sigma^exponent * w0` with a signed exponent.
    pub fn from_sigma_power(params: Params, p: Poly, exponent: i64) -> Self {
        if exponent >= 0 {
            Self::new(params, p.mul_sigma_pow(exponent as usize), 0)
        } else {
            Self::new(params, p, exponent.unsigned_abs() as usize)
        }
    }

    /// `w0`
    pub fn unit(params: Params) -> Self {
        Self::new(params, Poly::one(), 0)
    }

    /// `w_l = sigma^(-l) w0`
    pub fn weight(params: Params, l: usize) -> Self {
        Self::new(params, Poly::one(), l)
    }

    pub fn zero(params: Params) -> Self {
        Self::new(params, Poly::zero(), 0)
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    /// Power of `sigma` in the denominator.
    pub fn sigma_power(&self) -> usize {
        self.k
    }

    pub fn numerator(&self) -> &Poly {
        &self.p
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }

    fn canonicalize(&mut self) {
        if self.p.is_zero() {
            self.k = 0;
            return;
        }
        while self.k > 0 {
            match self.p.div_sigma() {
                Some(q) => {
                    self.p = q;
                    self.k -= 1;
                }
                None => break,
            }
        }
    }

    pub fn diff(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let k = self.k as i64;
        let factor = Poly::linear_factor(&self.params, 1) - Poly::monomial(int(2 * k), 1);
        let p = &Poly::sigma() * &self.p.diff() + &factor * &self.p;
        Self::new(self.params.clone(), p, self.k + 1)
    }

    pub fn diff_n(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |e, _| e.diff())
    }

    pub fn mul_poly(&self, q: &Poly) -> Self {
        Self::new(self.params.clone(), &self.p * q, self.k)
    }

    pub fn mul_sigma_pow(&self, exponent: i64) -> Self {
        let e = exponent - self.k as i64;
        Self::from_sigma_power(self.params.clone(), self.p.clone(), e)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.params.clone(), self.p.scale(c), self.k)
    }

    /// `sigma^exponent * self / w0` when that is a polynomial.
    pub fn polynomial_part(&self, exponent: i64) -> Option<Poly> {
        let e = exponent - self.k as i64;
        if e >= 0 {
            return Some(self.p.mul_sigma_pow(e as usize));
        }
        let mut p = self.p.clone();
        for _ in 0..e.unsigned_abs() {
            p = p.div_sigma()?;
        }
        Some(p)
    }

    fn combine(&self, rhs: &Self, negate: bool) -> Self {
        assert_eq!(
            self.params, rhs.params,
            "weighted elements over different weights cannot be added"
        );
        let k = self.k.max(rhs.k);
        let lhs_p = self.p.mul_sigma_pow(k - self.k);
        let rhs_p = rhs.p.mul_sigma_pow(k - rhs.k);
        let p = if negate { lhs_p - rhs_p } else { lhs_p + rhs_p };
        Self::new(self.params.clone(), p, k)
    }
}

impl Add for &WeightedElement {
    type Output = WeightedElement;
    fn add(self, rhs: &WeightedElement) -> WeightedElement {
        self.combine(rhs, false)
    }
}

impl Sub for &WeightedElement {
    type Output = WeightedElement;
    fn sub(self, rhs: &WeightedElement) -> WeightedElement {
        self.combine(rhs, true)
    }
}

impl Neg for &WeightedElement {
    type Output = WeightedElement;
    fn neg(self) -> WeightedElement {
        WeightedElement::new(self.params.clone(), -&self.p, self.k)
    }
}

/// `Q_nu = sigma^nu / w0 * d^nu w0 / dx^nu`.
pub fn rodrigues_q(params: &Params, nu: usize) -> Poly {
    WeightedElement::unit(params.clone())
        .diff_n(nu)
        .polynomial_part(nu as i64)
        .expect("d^nu w0 carries at most sigma^(-nu)")
}

/// Builds `Q_nu` from a known `Q_mu` by `nu - mu` further derivatives:
/// `Q_nu = sigma^nu / w0 * d^(nu-mu)/dx^(nu-mu) (sigma^(-mu) w0 Q_mu)`.
pub fn generalized_rodrigues_q(params: &Params, nu: usize, mu: usize, q_mu: &Poly) -> Result<Poly> {
    if mu > nu {
        return Err(Error::SeedAboveTarget { mu, nu });
    }
    let seed = WeightedElement::new(params.clone(), q_mu.clone(), mu);
    Ok(seed
        .diff_n(nu - mu)
        .polynomial_part(nu as i64)
        .expect("derivatives of sigma^(-mu) w0 Q_mu stay within sigma^(-nu)"))
}

/// `sigma^(nu+l) / w0 * d^nu/dx^nu (sigma^(-l) w0)`, which is `Q_nu` at `a + l`.
pub fn parameter_shift_q(params: &Params, l: i64, nu: usize) -> Poly {
    WeightedElement::from_sigma_power(params.clone(), Poly::one(), -l)
        .diff_n(nu)
        .polynomial_part(nu as i64 + l)
        .expect("d^nu (sigma^(-l) w0) carries at most sigma^(-l-nu)")
}

/// `sigma w_l' - [alpha - 2x(l+a+1)] w_l`, identically zero.
pub fn pearson_residual(params: &Params, l: usize) -> WeightedElement {
    let w_l = WeightedElement::weight(params.clone(), l);
    let lhs = w_l.diff().mul_sigma_pow(1);
    let rhs = w_l.mul_poly(&Poly::linear_factor(params, l as i64 + 1));
    &lhs - &rhs
}
