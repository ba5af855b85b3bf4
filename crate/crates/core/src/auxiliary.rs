//! Auxiliary polynomials `S_{l+1} = sigma^(l+1)/w0 * d^l/dx^l (sigma' w0 / sigma)`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{Params, Poly, Rational};
use crate::family::three_term_q;
use crate::weight::{rodrigues_q, WeightedElement};

/// `S_1 .. S_max`, stored so that `polys[l - 1] = S_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SFamily {
    params: Params,
    polys: Vec<Poly>,
}

impl SFamily {
    pub fn params(&self) -> &Params {
        &self.params
    }

    /// `S_l` for `1 <= l <= max`.
    pub fn get(&self, l: usize) -> Result<&Poly> {
        l.checked_sub(1)
            .and_then(|i| self.polys.get(i))
            .ok_or(Error::IndexOutOfRange {
                index: l,
                max: self.polys.len(),
            })
    }

    pub fn max_l(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }
}

/// Builds `S_1 .. S_max_l` in the weight ring, seeded by `sigma' sigma^-1 w0`.
pub fn s_family(params: &Params, max_l: usize) -> SFamily {
    let mut e = WeightedElement::from_sigma_power(params.clone(), Poly::sigma().diff(), -1);
    let mut polys = Vec::with_capacity(max_l);
    for l in 1..=max_l {
        polys.push(
            e.polynomial_part(l as i64)
                .expect("d^(l-1) of sigma' sigma^-1 w0 carries at most sigma^(-l)"),
        );
        e = e.diff();
    }
    SFamily {
        params: params.clone(),
        polys,
    }
}

/// `S_l` reconstructed as `[alpha Q_{l-1}^(alpha,-a-1) - P_l] / (a+1)`.
pub fn s_from_shifted_families(params: &Params, l: usize) -> Result<Poly> {
    let denom = &params.a + Rational::one();
    if denom.is_zero() {
        return Err(Error::Domain("a = -1 makes a+1 vanish".into()));
    }
    if l == 0 {
        return Err(Error::Domain("auxiliary polynomials start at l = 1".into()));
    }
    let shifted = three_term_q(&params.shift_a(1), l - 1);
    let p_l = three_term_q(params, l).polys()[l].clone();
    let num = shifted.polys()[l - 1].scale(&params.alpha) - p_l;
    Ok(num.scale(&denom.recip()))
}

/// `S_l - [alpha Q_{l-1}^(alpha,-a-1) - P_l] / (a+1)`, expected zero.
pub fn alt1_residual(params: &Params, l: usize) -> Result<Poly> {
    let rebuilt = s_from_shifted_families(params, l)?;
    Ok(s_family(params, l).get(l)? - &rebuilt)
}

/// `[alpha sigma' Q_{l-1}^(alpha,-a-1) + Q_{l+1}^(alpha,-a)] - P_{l+1}`,
/// with `P_{l+1}` from the Rodrigues formula and the `Q`s from the recursion.
///
/// The relation does not hold as written: the residual is exactly the
/// `alpha sigma' Q_{l-1}^(alpha,-a-1)` term. It is reported, not asserted.
pub fn p_shift_relation_residual(params: &Params, l: usize) -> Result<Poly> {
    if l == 0 {
        return Err(Error::Domain("the shifted relation needs l >= 1".into()));
    }
    let shifted = three_term_q(&params.shift_a(1), l - 1);
    let fam = three_term_q(params, l + 1);
    let q_next = &fam.polys()[l + 1];
    let rhs = (Poly::sigma().diff() * &shifted.polys()[l - 1]).scale(&params.alpha) + q_next;
    Ok(rhs - rodrigues_q(params, l + 1))
}

/// The term the shifted relation carries beyond `P_{l+1} = Q_{l+1}`.
pub fn p_shift_extra_term(params: &Params, l: usize) -> Poly {
    if l == 0 {
        return Poly::zero();
    }
    let shifted = three_term_q(&params.shift_a(1), l - 1);
    (Poly::sigma().diff() * &shifted.polys()[l - 1]).scale(&params.alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn s_family_examples() {
        let params = Params::new(rat(3, 2), rat(-2, 5));
        let fam = s_family(&params, 3);
        assert_eq!(fam.get(1).unwrap(), &p(&[0, 2]));
        // S_2 = sigma'' sigma + sigma' [alpha - sigma' (a+2)]
        let sigma = Poly::sigma();
        let d = sigma.diff();
        let inner = Poly::constant(params.alpha.clone()) - d.scale(&(&params.a + int(2)));
        let expected = &d.diff() * &sigma + &d * &inner;
        assert_eq!(fam.get(2).unwrap(), &expected);
        assert_eq!(
            s_family(&Params::from_ints(0, 0), 2).get(2).unwrap(),
            &p(&[2, 0, -6])
        );
        assert!(fam.get(0).is_err());
        assert!(fam.get(4).is_err());
    }

    #[test]
    fn alt1_examples() {
        let params = Params::new(rat(-7, 3), rat(5, 4));
        assert!(alt1_residual(&params, 1).unwrap().is_zero());
        assert!(alt1_residual(&Params::from_ints(0, 0), 2)
            .unwrap()
            .is_zero());
        assert!(alt1_residual(&Params::new(int(1), rat(1, 2)), 3)
            .unwrap()
            .is_zero());
        assert!(matches!(
            alt1_residual(&Params::from_ints(2, -1), 2),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn shifted_relation_residual_is_the_extra_term() {
        assert!(
            p_shift_relation_residual(&Params::new(int(0), rat(3, 2)), 4)
                .unwrap()
                .is_zero()
        );
        assert_eq!(
            p_shift_relation_residual(&Params::from_ints(1, 0), 1).unwrap(),
            p(&[0, 2])
        );
        let params = Params::from_ints(2, 1);
        let r = p_shift_relation_residual(&params, 2).unwrap();
        assert!(!r.is_zero());
        assert_eq!(r, p_shift_extra_term(&params, 2));
    }
}
