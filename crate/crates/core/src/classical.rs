//! Gegenbauer, Laguerre and Jacobi polynomials from their three-term
//! recurrences, and the Gegenbauer expansions of `Q_N`.

use num_traits::{One, Zero};

use crate::exact::{binomial, factorial, int, rat, Params, Poly, Rational};
use crate::family::{alpha_family_params, lambda_nu, three_term_q};

/// `C_0^(lambda) .. C_max^(lambda)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GegenbauerFamily {
    pub lambda: Rational,
    pub polys: Vec<Poly>,
}

/// `l C_l = 2x(l+lambda-1) C_{l-1} - (l+2lambda-2) C_{l-2}`, `C_0 = 1`,
/// `C_1 = 2 lambda x`.
pub fn gegenbauer(lambda: &Rational, max_l: usize) -> GegenbauerFamily {
    let mut polys = vec![Poly::one()];
    if max_l >= 1 {
        polys.push(Poly::monomial(int(2) * lambda, 1));
    }
    for l in 2..=max_l {
        let lr = int(l as i64);
        let a = Poly::monomial(int(2) * (&lr + lambda - Rational::one()), 1) * &polys[l - 1];
        let b = polys[l - 2].scale(&(&lr + int(2) * lambda - int(2)));
        polys.push((a - b).scale(&lr.recip()));
    }
    GegenbauerFamily {
        lambda: lambda.clone(),
        polys,
    }
}

/// `(1-x^2) C'' - (2lambda+1) x C' + l(l+2lambda) C`.
pub fn gegenbauer_ode_residual(fam: &GegenbauerFamily, l: usize) -> Poly {
    let c = &fam.polys[l];
    let d1 = c.diff();
    let lr = int(l as i64);
    Poly::from_ints(&[1, 0, -1]) * d1.diff()
        - Poly::monomial(int(2) * &fam.lambda + Rational::one(), 1) * d1
        + c.scale(&(&lr * (&lr + int(2) * &fam.lambda)))
}

/// `Q_m^(0,0) = m! sum_n (-1)^n x^(2n) C_{m-2n}^(n+1)(-x)`.
pub fn expand_q00_gegenbauer(m: usize) -> Poly {
    expand_q0a_gegenbauer(&Rational::zero(), m)
}

/// `Q_N^(0,-a) = N! sum_n C(-a-1, n) x^(2n) C_{N-2n}^(n+a+1)(-x)`.
pub fn expand_q0a_gegenbauer(a: &Rational, n: usize) -> Poly {
    let upper = -a - Rational::one();
    let sum: Poly = (0..=n / 2)
        .map(|k| {
            let lambda = int(k as i64) + a + Rational::one();
            let c = gegenbauer(&lambda, n - 2 * k).polys.swap_remove(n - 2 * k);
            Poly::monomial(binomial(&upper, k), 2 * k) * c.reflect()
        })
        .sum();
    sum.scale(&factorial(n))
}

/// `Q_N^(alpha,-a)` from the decomposition identity with the `alpha = 0`
/// factor replaced by its Gegenbauer expansion at degree `nu`.
pub fn expand_general_gegenbauer(params: &Params, n: usize) -> Poly {
    let alpha_only = three_term_q(&alpha_family_params(&params.alpha), n);
    let n_r = int(n as i64);
    (0..=n)
        .map(|nu| {
            (&alpha_only.polys()[n - nu] * &expand_q0a_gegenbauer(&params.a, nu))
                .scale(&binomial(&n_r, nu))
        })
        .sum()
}

/// `Q_N - N! sum_nu C(N,nu) Q_{N-nu}^(alpha,1) S_N` where the inner
/// Gegenbauer sum `S_N` is taken at degree `N` for every `nu` instead of
/// `nu`. Reported, not asserted.
pub fn printed_general_gegenbauer_residual(params: &Params, n: usize) -> Poly {
    let alpha_only = three_term_q(&alpha_family_params(&params.alpha), n);
    let n_r = int(n as i64);
    let outer: Poly = (0..=n)
        .map(|nu| alpha_only.polys()[n - nu].scale(&binomial(&n_r, nu)))
        .sum();
    // N! * inner_N is the Gegenbauer sum for Q_N^(0,-a)
    let printed = outer * expand_q0a_gegenbauer(&params.a, n);
    three_term_q(params, n).polys()[n].clone() - printed
}

/// `Q_l^(0,-a)` with `a = lambda - l + 1/2`, checked against
/// `sigma y'' - (2lambda+1) x y' + Lambda y = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolicGegenbauer {
    pub a: Rational,
    pub eigenvalue: Rational,
    pub q: Poly,
    pub residual: Poly,
}

pub fn hyperbolic_gegenbauer_map(lambda: &Rational, l: usize) -> HyperbolicGegenbauer {
    let a = lambda - int(l as i64) + rat(1, 2);
    let q = three_term_q(&Params::new(Rational::zero(), a.clone()), l).polys()[l].clone();
    let eigenvalue = lambda_nu(&a, l);
    let d1 = q.diff();
    let residual = Poly::sigma() * d1.diff()
        - Poly::monomial(int(2) * lambda + Rational::one(), 1) * d1
        + q.scale(&eigenvalue);
    HyperbolicGegenbauer {
        a,
        eigenvalue,
        q,
        residual,
    }
}

/// Associated Laguerre `L_0^(k) .. L_max^(k)` from
/// `(n+1) L_{n+1} = (2n+1+k-x) L_n - (n+k) L_{n-1}`.
pub fn laguerre(max_l: usize, superscript: i64) -> Vec<Poly> {
    let k = int(superscript);
    let mut polys = vec![Poly::one()];
    if max_l >= 1 {
        polys.push(Poly::new(vec![Rational::one() + &k, -Rational::one()]));
    }
    for n in 1..max_l {
        let nr = int(n as i64);
        let lin = Poly::new(vec![int(2 * n as i64 + 1) + &k, -Rational::one()]);
        let next = lin * &polys[n] - polys[n - 1].scale(&(&nr + &k));
        polys.push(next.scale(&(nr + Rational::one()).recip()));
    }
    polys
}

/// `l L_l - l L_{l-1} + x L^1_{l-1}`.
pub fn laguerre_identity_residual(l: usize) -> Poly {
    assert!(l >= 1, "laguerre identity needs l >= 1");
    let plain = laguerre(l, 0);
    let assoc = laguerre(l - 1, 1);
    let lr = int(l as i64);
    plain[l].scale(&lr) - plain[l - 1].scale(&lr) + Poly::x() * &assoc[l - 1]
}

/// Jacobi `P_n^(a,b)` by the explicit sum
/// `sum_s C(n+a, n-s) C(n+b, s) ((x-1)/2)^s ((x+1)/2)^(n-s)`,
/// valid for every rational `(a, b)`.
pub fn jacobi_explicit(a: &Rational, b: &Rational, n: usize) -> Poly {
    let nr = int(n as i64);
    let minus = Poly::new(vec![rat(-1, 2), rat(1, 2)]);
    let plus = Poly::new(vec![rat(1, 2), rat(1, 2)]);
    (0..=n)
        .map(|s| {
            let c = binomial(&(&nr + a), n - s) * binomial(&(&nr + b), s);
            (minus.pow(s) * plus.pow(n - s)).scale(&c)
        })
        .sum()
}

/// Jacobi `P_0^(a,b) .. P_max^(a,b)`, normalized by
/// `P_l(1) = (a+1)(a+2)...(a+l)/l!`.
///
/// Uses the standard three-term recurrence; at a degree where its leading
/// factor `2n(n+a+b)(2n+a+b-2)` vanishes, that degree comes from
/// [`jacobi_explicit`] instead.
pub fn jacobi(a: &Rational, b: &Rational, max_l: usize) -> Vec<Poly> {
    let mut polys = vec![Poly::one()];
    if max_l >= 1 {
        let half = rat(1, 2);
        polys.push(Poly::new(vec![(a - b) * &half, (a + b + int(2)) * &half]));
    }
    let s = a + b;
    for n in 2..=max_l {
        let nr = int(n as i64);
        let two_n_s = int(2) * &nr + &s;
        let lead = int(2) * &nr * (&nr + &s) * (&two_n_s - int(2));
        if lead.is_zero() {
            polys.push(jacobi_explicit(a, b, n));
            continue;
        }
        let c1 = &two_n_s - Rational::one();
        let lin = Poly::new(vec![a * a - b * b, &two_n_s * (&two_n_s - int(2))]);
        let c2 = int(2) * (&nr + a - Rational::one()) * (&nr + b - Rational::one()) * &two_n_s;
        let next = (lin * &polys[n - 1]).scale(&c1) - polys[n - 2].scale(&c2);
        polys.push(next.scale(&lead.recip()));
    }
    polys
}

/// `2l P_l^(a,b) - (a+l)(1+x) P_{l-1}^(a,b+1) + (b+l)(1-x) P_{l-1}^(a+1,b)`.
pub fn jacobi_identity_residual(a: &Rational, b: &Rational, l: usize) -> Poly {
    assert!(l >= 1, "jacobi identity needs l >= 1");
    let lr = int(l as i64);
    let one = Rational::one();
    let p = jacobi(a, b, l).swap_remove(l);
    let p_b = jacobi(a, &(b + &one), l - 1).swap_remove(l - 1);
    let p_a = jacobi(&(a + &one), b, l - 1).swap_remove(l - 1);
    p.scale(&(int(2) * &lr)) - (Poly::from_ints(&[1, 1]) * p_b).scale(&(a + &lr))
        + (Poly::from_ints(&[1, -1]) * p_a).scale(&(b + &lr))
}
