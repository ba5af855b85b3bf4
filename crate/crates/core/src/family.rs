//! The complementary polynomial family `Q_nu^(alpha,-a)`.
//!
//! Two constructions live here: the three-term recursion
//!
//! ```text
//! Q_{nu+1} = [alpha - 2x(a+nu+1)] Q_nu - nu (2a+nu+1) sigma Q_{nu-1}
//! ```
//!
//! and the recursive ODE
//!
//! ```text
//! Q_{nu+1} = sigma Q_nu' + [alpha - 2x(a+nu+1)] Q_nu
//! ```
//!
//! The Rodrigues construction is in [`crate::weight`]. The remaining
//! functions turn the differential equations and generating-function
//! identities into residual polynomials that must vanish.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, int, Params, Poly, Rational};
use crate::weight::WeightedElement;

/// `Q_0 .. Q_max` for one parameter pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QFamily {
    params: Params,
    polys: Vec<Poly>,
}

impl QFamily {
    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn max_degree(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn get(&self, nu: usize) -> Result<&Poly> {
        self.polys.get(nu).ok_or(Error::IndexOutOfRange {
            index: nu,
            max: self.max_degree(),
        })
    }

    /// `P_l`, which coincides with `Q_l`.
    pub fn p(&self, l: usize) -> Result<&Poly> {
        self.get(l)
    }

    /// `Q_nu' + lambda_nu Q_{nu-1}`; zero by the basic recursive ODE.
    pub fn basic_ode_residual(&self, nu: usize) -> Result<Poly> {
        let q = self.get(nu)?;
        if nu == 0 {
            return Ok(q.diff());
        }
        let lambda = lambda_nu(&self.params.a, nu);
        Ok(q.diff() + self.get(nu - 1)?.scale(&lambda))
    }

    /// `sigma Q'' + [alpha - sigma'(a+nu)] Q' + lambda_nu Q`.
    pub fn sturm_liouville_residual(&self, nu: usize) -> Result<Poly> {
        let q = self.get(nu)?;
        let tau = Poly::linear_factor(&self.params, nu as i64);
        Ok(second_order_residual(
            q,
            &tau,
            &lambda_nu(&self.params.a, nu),
        ))
    }

    /// `sigma P_l'' + tau P_l' + lambda_l P_l` with `tau = alpha - sigma'(a+l)`.
    pub fn p_ode_residual(&self, l: usize) -> Result<Poly> {
        let p = self.p(l)?;
        let tau = Poly::new(vec![self.params.alpha.clone(), Rational::zero()])
            - Poly::sigma()
                .diff()
                .scale(&(&self.params.a + int(l as i64)));
        Ok(second_order_residual(
            p,
            &tau,
            &lambda_nu(&self.params.a, l),
        ))
    }

    /// `d/dx(sigma^(l-nu+1) w_l Q_nu') + lambda_nu sigma^(l-nu) w_l Q_nu`,
    /// built in the weight ring. Zero for every `l`.
    pub fn self_adjoint_residual(&self, l: usize, nu: usize) -> Result<WeightedElement> {
        let q = self.get(nu)?;
        let w_l = WeightedElement::weight(self.params.clone(), l);
        let (l, n) = (l as i64, nu as i64);
        let flux = w_l.mul_sigma_pow(l - n + 1).mul_poly(&q.diff());
        let source = w_l
            .mul_sigma_pow(l - n)
            .mul_poly(q)
            .scale(&lambda_nu(&self.params.a, nu));
        Ok(&flux.diff() + &source)
    }
}

fn second_order_residual(q: &Poly, tau: &Poly, lambda: &Rational) -> Poly {
    let d1 = q.diff();
    let d2 = d1.diff();
    &Poly::sigma() * &d2 + tau * &d1 + q.scale(lambda)
}

/// `lambda_nu = nu (2a + nu + 1)`.
pub fn lambda_nu(a: &Rational, nu: usize) -> Rational {
    let n = int(nu as i64);
    &n * (int(2) * a + &n + Rational::one())
}

/// Family built by the three-term recursion.
pub fn three_term_q(params: &Params, max_nu: usize) -> QFamily {
    let sigma = Poly::sigma();
    let mut polys = vec![Poly::one()];
    let mut prev = Poly::zero();
    for nu in 0..max_nu {
        let cur = &polys[nu];
        let mut next = &Poly::linear_factor(params, nu as i64 + 1) * cur;
        if nu > 0 {
            let c = int(nu as i64) * (int(2) * &params.a + int(nu as i64 + 1));
            next -= &(&sigma * &prev).scale(&c);
        }
        prev = cur.clone();
        polys.push(next);
    }
    QFamily {
        params: params.clone(),
        polys,
    }
}

/// Family built by the recursive ODE.
pub fn recursive_ode_q(params: &Params, max_nu: usize) -> QFamily {
    let sigma = Poly::sigma();
    let mut polys = vec![Poly::one()];
    for nu in 0..max_nu {
        let cur = &polys[nu];
        let next = &sigma * &cur.diff() + &Poly::linear_factor(params, nu as i64 + 1) * cur;
        polys.push(next);
    }
    QFamily {
        params: params.clone(),
        polys,
    }
}

/// `sum_k C(n,k) f[k] g[n-k]`
fn binomial_convolution(f: &[Poly], g: &[Poly], n: usize) -> Poly {
    let n_r = int(n as i64);
    (0..=n)
        .map(|k| (&f[k] * &g[n - k]).scale(&binomial(&n_r, k)))
        .sum()
}

/// Right-hand side of the parameter addition theorem:
/// `sum_k C(N,k) Q_k^(p1) Q_{N-k}^(p2)`, which equals `Q_N` at
/// `(alpha1+alpha2, a1+a2+1)`.
pub fn addition_q(p1: &Params, p2: &Params, n: usize) -> Poly {
    let f = three_term_q(p1, n);
    let g = three_term_q(p2, n);
    binomial_convolution(f.polys(), g.polys(), n)
}

/// n-fold addition by folding the two-family theorem. The result equals
/// `Q_N` at `(sum alpha_j, sum a_j + n - 1)`.
pub fn nfold_addition_q(plist: &[Params], n: usize) -> Result<Poly> {
    let (first, rest) = plist.split_first().ok_or(Error::EmptyParams)?;
    let mut acc = three_term_q(first, n).polys;
    for params in rest {
        let g = three_term_q(params, n);
        acc = (0..=n)
            .map(|m| binomial_convolution(&acc, g.polys(), m))
            .collect();
    }
    Ok(acc.swap_remove(n))
}

/// `sum_nu C(N,nu) Q_nu^(0,-a) Q_{N-nu}^(alpha,1)`; the second family has `a = -1`.
pub fn decomposition_q(params: &Params, n: usize) -> Poly {
    let even = three_term_q(&Params::new(Rational::zero(), params.a.clone()), n);
    let alpha_only = three_term_q(&alpha_family_params(&params.alpha), n);
    binomial_convolution(even.polys(), alpha_only.polys(), n)
}

/// Parameters of the pure-`alpha` family `Q^(alpha,1)`, i.e. `a = -1`.
pub fn alpha_family_params(alpha: &Rational) -> Params {
    Params::new(alpha.clone(), -Rational::one())
}

/// `Q_nu^(-alpha,-a)(x) - (-1)^nu Q_nu^(alpha,-a)(-x)`.
pub fn parity_check(params: &Params, nu: usize) -> Poly {
    let lhs = three_term_q(&params.negate_alpha(), nu)
        .polys
        .swap_remove(nu);
    let mut rhs = three_term_q(params, nu).polys.swap_remove(nu).reflect();
    if nu.is_odd() {
        rhs = -rhs;
    }
    lhs - rhs
}

/// Monic finite power series `sum_mu a_mu x^(N-2mu)` solving the
/// `alpha = 0` Sturm-Liouville equation, with `a_0 = 1` and
/// `a_mu = -(N-2mu+2)(N-2mu+1) / (2mu (2a+2mu+1)) a_{mu-1}`.
pub fn power_series_q0(a: &Rational, n: usize) -> Result<Poly> {
    let mut coeffs = vec![Rational::zero(); n + 1];
    let mut a_mu = Rational::one();
    coeffs[n] = a_mu.clone();
    for mu in 1..=n / 2 {
        let tail = int(2) * a + int(2 * mu as i64 + 1);
        if tail.is_zero() {
            return Err(Error::VanishingDenominator { mu });
        }
        let top = int((n - 2 * mu + 2) as i64) * int((n - 2 * mu + 1) as i64);
        a_mu = -(a_mu * top) / (int(2 * mu as i64) * tail);
        coeffs[n - 2 * mu] = a_mu.clone();
    }
    Ok(Poly::new(coeffs))
}
