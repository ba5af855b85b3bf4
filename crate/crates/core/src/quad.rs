//! Floating-point side: the closed-form generating function and the
//! orthogonality integrals over the whole real line.
//!
//! Every integral is taken after the substitution `x = cot(theta)`, which
//! maps the real line onto `(0, pi)` with
//!
//! ```text
//! dx = dtheta / sin^2(theta),  sigma = 1 / sin^2(theta),  arccot x = theta
//! ```
//!
//! so the integrands become bounded functions on a finite interval and no
//! tail is ever truncated. Integration is adaptive composite Gauss-Legendre.

use std::f64::consts::PI;
use std::io;

use rayon::prelude::*;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::exact::{int, rat, to_f64, Params, Rational};
use crate::family::three_term_q;

/// A numerical integral with its error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub nodes_used: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Points per Gauss-Legendre panel.
    pub order: usize,
    pub max_segments: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 0.0,
            order: 20,
            max_segments: 4000,
        }
    }
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    dp = legendre_with_derivative(n, x).1;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `(integral of f, integral of |f|)` over `[lo, hi]`.
    pub fn apply<F: Fn(f64) -> f64>(&self, f: &F, lo: f64, hi: f64) -> (f64, f64) {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut sum = 0.0;
        let mut abs = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let v = f(mid + half * x);
            sum += w * v;
            abs += w * v.abs();
        }
        (sum * half, abs * half.abs())
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

struct Segment {
    lo: f64,
    hi: f64,
    left: (f64, f64),
    right: (f64, f64),
    value: f64,
    abs: f64,
    error: f64,
}

impl Segment {
    fn new<F: Fn(f64) -> f64>(rule: &GaussLegendre, f: &F, lo: f64, hi: f64, coarse: f64) -> Self {
        let mid = 0.5 * (lo + hi);
        let left = rule.apply(f, lo, mid);
        let right = rule.apply(f, mid, hi);
        let value = left.0 + right.0;
        let abs = left.1 + right.1;
        let error = (value - coarse).abs().max(50.0 * f64::EPSILON * abs);
        Self {
            lo,
            hi,
            left,
            right,
            value,
            abs,
            error,
        }
    }
}

/// Adaptive composite Gauss-Legendre on `[lo, hi]`.
///
/// Each panel is compared against the sum over its two halves; the panel
/// with the largest discrepancy is bisected until the total error estimate
/// drops below `max(abs_tol, rel_tol |I|)`, or to roundoff level when the
/// integral cancels.
pub fn integrate<F>(f: F, lo: f64, hi: f64, opts: &QuadOptions) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    let rule = GaussLegendre::new(opts.order);
    let coarse = rule.apply(&f, lo, hi).0;
    let mut segments = vec![Segment::new(&rule, &f, lo, hi, coarse)];
    let mut evals = 3 * rule.len();
    loop {
        let value: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        let abs: f64 = segments.iter().map(|s| s.abs).sum();
        if !value.is_finite() {
            return Err(Error::QuadratureNotConverged {
                value,
                error,
                nodes: evals,
            });
        }
        let tol = opts
            .abs_tol
            .max(opts.rel_tol * value.abs())
            .max(100.0 * f64::EPSILON * abs);
        if error <= tol {
            return Ok(QuadResult {
                value,
                abs_error_estimate: error,
                nodes_used: evals,
            });
        }
        if segments.len() >= opts.max_segments {
            return Err(Error::QuadratureNotConverged {
                value,
                error,
                nodes: evals,
            });
        }
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.error.total_cmp(&b.1.error))
            .map(|(i, _)| i)
            .unwrap();
        let s = segments.swap_remove(worst);
        let mid = 0.5 * (s.lo + s.hi);
        segments.push(Segment::new(&rule, &f, s.lo, mid, s.left.0));
        segments.push(Segment::new(&rule, &f, mid, s.hi, s.right.0));
        evals += 4 * rule.len();
    }
}

/// `arccot` on the branch with range `(0, pi)`.
pub fn arccot(x: f64) -> f64 {
    1.0f64.atan2(x)
}

fn ln_sigma(z: f64) -> f64 {
    if z.abs() > 1e150 {
        2.0 * z.abs().ln() + (1.0 / (z * z)).ln_1p()
    } else {
        (z * z).ln_1p()
    }
}

fn genfun_f64(alpha: f64, a: f64, x: f64, y: f64) -> f64 {
    let z = x + y * (1.0 + x * x);
    ((a + 1.0) * (ln_sigma(x) - ln_sigma(z)) + alpha * (arccot(x) - arccot(z))).exp()
}

/// Closed form of `sum_nu y^nu / nu! Q_nu(x)`:
///
/// ```text
/// sigma(x)^(a+1) e^(alpha arccot x) sigma(z)^(-(a+1)) e^(-alpha arccot z),  z = x + y sigma(x)
/// ```
pub fn genfun_closed(params: &Params, x: f64, y: f64) -> f64 {
    genfun_f64(to_f64(&params.alpha), to_f64(&params.a), x, y)
}

/// Closed form against the truncated defining series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesCheck {
    pub closed: f64,
    pub series: f64,
    /// Largest of the last two terms relative to the partial sum.
    pub tail_ratio: f64,
    pub terms: usize,
}

impl SeriesCheck {
    pub fn relative_gap(&self) -> f64 {
        (self.closed - self.series).abs() / self.closed.abs().max(f64::MIN_POSITIVE)
    }

    /// Whether the tail estimate certifies the truncation.
    pub fn converged(&self, threshold: f64) -> bool {
        self.tail_ratio < threshold
    }
}

/// Sums `terms` terms of the series. Each `Q_nu(x)` is evaluated exactly at
/// the binary value of `x` and rounded once.
/// Errors with [`Error::Divergent`] when the terms grow.
pub fn genfun_series_check(params: &Params, x: f64, y: f64, terms: usize) -> Result<SeriesCheck> {
    if terms < 5 {
        return Err(Error::Domain(format!(
            "series check needs at least 5 terms, got {terms}"
        )));
    }
    let fam = three_term_q(params, terms - 1);
    let x_exact = Rational::from_float(x)
        .ok_or_else(|| Error::Domain(format!("x = {x} is not a finite number")))?;
    let mut scale = 1.0;
    let mut mags = Vec::with_capacity(terms);
    let mut series = 0.0;
    for (nu, q) in fam.polys().iter().enumerate() {
        if nu > 0 {
            scale *= y / nu as f64;
        }
        let t = scale * to_f64(&q.eval(&x_exact));
        series += t;
        mags.push(t.abs());
    }
    let third = terms / 3;
    let window_max = |w: &[f64]| w.iter().cloned().fold(0.0, f64::max);
    let late = window_max(&mags[terms - third..]);
    let middle = window_max(&mags[terms - 2 * third..terms - third]);
    if late > middle && late > f64::EPSILON * series.abs() {
        return Err(Error::Divergent { x, y });
    }
    let last = mags[terms - 1].max(mags[terms - 2]);
    Ok(SeriesCheck {
        closed: genfun_closed(params, x, y),
        series,
        tail_ratio: last / series.abs().max(f64::MIN_POSITIVE),
        terms,
    })
}

/// Finite-difference check of
/// `dQ/dy = sigma Q / (1 + z^2) * Q_1(z)`, `z = x + y sigma`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PdeCheck {
    /// Central difference with step `h/2`.
    pub central: f64,
    /// Richardson combination of steps `h` and `h/2`.
    pub richardson: f64,
    pub rhs: f64,
}

impl PdeCheck {
    pub fn relative_gap(&self) -> f64 {
        (self.richardson - self.rhs).abs() / self.rhs.abs().max(f64::MIN_POSITIVE)
    }
}

pub fn pde_check(params: &Params, x: f64, y: f64, h: f64) -> PdeCheck {
    let (alpha, a) = (to_f64(&params.alpha), to_f64(&params.a));
    let g = |yy: f64| genfun_f64(alpha, a, x, yy);
    let central = |step: f64| (g(y + step) - g(y - step)) / (2.0 * step);
    let coarse = central(h);
    let fine = central(0.5 * h);
    let sigma = 1.0 + x * x;
    let z = x + y * sigma;
    let q1 = alpha - 2.0 * z * (a + 1.0);
    PdeCheck {
        central: fine,
        richardson: (4.0 * fine - coarse) / 3.0,
        rhs: sigma * g(y) / (1.0 + z * z) * q1,
    }
}

/// `sum_k c_k cos^k sin^(d-k)`, i.e. `p(cot t) sin^d t` for `p` of degree `d`.
fn homogeneous(coeffs: &[f64], c: f64, s: f64) -> f64 {
    let Some((lead, rest)) = coeffs.split_last() else {
        return 0.0;
    };
    let mut acc = *lead;
    let mut spow = 1.0;
    for ck in rest.iter().rev() {
        spow *= s;
        acc = acc * c + ck * spow;
    }
    acc
}

/// `O_{mu,nu} = integral Q_mu Q_nu e^(-alpha arccot x) / sigma^((mu+nu)/2 + a + 2) dx`,
/// with an extra `sqrt(sigma)` in the numerator when `half_power` is set.
pub fn ortho_integral(
    params: &Params,
    mu: usize,
    nu: usize,
    half_power: bool,
) -> Result<QuadResult> {
    ortho_integral_with(params, mu, nu, half_power, &QuadOptions::default())
}

pub fn ortho_integral_with(
    params: &Params,
    mu: usize,
    nu: usize,
    half_power: bool,
    opts: &QuadOptions,
) -> Result<QuadResult> {
    let fam = three_term_q(params, mu.max(nu));
    let (qm, qn) = (&fam.polys()[mu], &fam.polys()[nu]);
    let (Some(dm), Some(dn)) = (qm.degree(), qn.degree()) else {
        return Ok(QuadResult {
            value: 0.0,
            abs_error_estimate: 0.0,
            nodes_used: 0,
        });
    };
    // after x = cot t the integrand is hom(Q_mu) hom(Q_nu) e^(-alpha t) sin^e t
    let exponent = &params.a * int(2) + int((mu + nu + 2) as i64 - (dm + dn) as i64)
        - if half_power { int(1) } else { int(0) };
    if exponent <= int(-1) {
        return Err(Error::NotIntegrable(format!(
            "integrand decays like |x|^({}) at infinity for a = {}",
            -(exponent + int(2)),
            params.a
        )));
    }
    let e = to_f64(&exponent);
    let alpha = to_f64(&params.alpha);
    let (cm, cn) = (qm.to_f64_coeffs(), qn.to_f64_coeffs());
    let f = move |t: f64| {
        let (s, c) = t.sin_cos();
        homogeneous(&cm, c, s) * homogeneous(&cn, c, s) * (-alpha * t).exp() * s.powf(e)
    };
    integrate(f, 0.0, PI, opts)
}

/// `sqrt(pi) Gamma(a + 3/2) / Gamma(a + 2)`, the constant value of `I_0`
/// on `|y| < 1`.
pub fn i0_reference(a: f64) -> Result<f64> {
    if a.is_nan() || a <= -1.5 {
        return Err(Error::Domain(format!(
            "Gamma(a + 3/2) has a pole or diverges at a = {a}"
        )));
    }
    Ok((0.5 * PI.ln() + ln_gamma(a + 1.5) - ln_gamma(a + 2.0)).exp())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Scan {
    /// `integral sigma^-(a+2) Q(x, y/sqrt(sigma); 0, -a) dx`
    I0,
    /// `integral sigma^-(a+2) e^(-alpha arccot x) Q(x, y/sqrt(sigma); alpha, -a) dx`
    I1,
    /// `integral sigma^-(a+2) e^(-alpha arccot x) Q(x, y/sqrt(sigma); alpha, -a)^2 dx`
    I,
}

fn check_convergent(params: &Params) -> Result<()> {
    if params.a <= rat(-3, 2) {
        return Err(Error::NotIntegrable(format!(
            "the orthogonality integrals need a > -3/2, got a = {}",
            params.a
        )));
    }
    Ok(())
}

fn scan_one(kind: Scan, alpha: f64, a: f64, y: f64, opts: &QuadOptions) -> Result<QuadResult> {
    let f = move |t: f64| {
        let (s, c) = t.sin_cos();
        let x = c / s;
        // dx / sigma^(a+2) = sin^(2a+2) dt and y / sqrt(sigma) = y sin t
        let measure = s.powf(2.0 * a + 2.0);
        let q = genfun_f64(alpha, a, x, y * s);
        match kind {
            Scan::I0 => measure * q,
            Scan::I1 => measure * (-alpha * t).exp() * q,
            Scan::I => measure * (-alpha * t).exp() * q * q,
        }
    };
    integrate(f, 0.0, PI, opts)
}

fn scan(kind: Scan, params: &Params, ys: &[f64], opts: &QuadOptions) -> Result<Vec<QuadResult>> {
    check_convergent(params)?;
    let alpha = if kind == Scan::I0 {
        0.0
    } else {
        to_f64(&params.alpha)
    };
    let a = to_f64(&params.a);
    ys.par_iter()
        .map(|&y| scan_one(kind, alpha, a, y, opts))
        .collect()
}

/// `I_0(y)` at each grid point; the weight exponent is `a`, `alpha = 0`.
pub fn i0_scan(a: &Rational, ys: &[f64]) -> Result<Vec<QuadResult>> {
    i0_scan_with(a, ys, &QuadOptions::default())
}

pub fn i0_scan_with(a: &Rational, ys: &[f64], opts: &QuadOptions) -> Result<Vec<QuadResult>> {
    let params = Params::new(int(0), a.clone());
    scan(Scan::I0, &params, ys, opts)
}

/// `I_1(y) = sum_nu y^nu / nu! O_{nu,0}`.
pub fn i1_scan(params: &Params, ys: &[f64]) -> Result<Vec<QuadResult>> {
    scan(Scan::I1, params, ys, &QuadOptions::default())
}

/// `I(y) = sum y^(nu1+nu2) / (nu1! nu2!) O_{nu1,nu2}`.
pub fn i_scan(params: &Params, ys: &[f64]) -> Result<Vec<QuadResult>> {
    scan(Scan::I, params, ys, &QuadOptions::default())
}

/// `steps` evenly spaced points from `min` to `max` inclusive.
pub fn y_grid(min: f64, max: f64, steps: usize) -> Vec<f64> {
    assert!(steps >= 2, "a grid needs at least two points");
    let h = (max - min) / (steps - 1) as f64;
    (0..steps)
        .map(|i| {
            if i == steps - 1 {
                max
            } else {
                min + h * i as f64
            }
        })
        .collect()
}

/// Renders a float with 17 significant digits; parses back to the same bits.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes `y,value,error_estimate,nodes` rows.
pub fn write_scan_csv<W: io::Write>(w: W, ys: &[f64], results: &[QuadResult]) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["y", "value", "error_estimate", "nodes"])?;
    for (y, r) in ys.iter().zip(results) {
        out.write_record([
            format_float(*y),
            format_float(r.value),
            format_float(r.abs_error_estimate),
            r.nodes_used.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn horner(coeffs: &[f64], x: f64) -> f64 {
        coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn gauss_legendre_is_exact_for_polynomials() {
        let rule = GaussLegendre::new(10);
        let wsum: f64 = rule.weights().iter().sum();
        assert!(close(wsum, 2.0, 1e-14));
        // degree 19 = 2n - 1
        let (v, _) = rule.apply(&|x: f64| x.powi(18) + x.powi(19), -1.0, 1.0);
        assert!(close(v, 2.0 / 19.0, 1e-14));
    }

    #[test]
    fn substitution_reproduces_known_integrals() {
        // integral dx / sigma^2 = pi/2, and dx / sigma = pi
        let r = integrate(|t: f64| t.sin().powi(2), 0.0, PI, &QuadOptions::default()).unwrap();
        assert!(close(r.value, PI / 2.0, 1e-12));
        let r = integrate(|_| 1.0, 0.0, PI, &QuadOptions::default()).unwrap();
        assert!(close(r.value, PI, 1e-12));
        assert!(r.abs_error_estimate >= 0.0);
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let r = integrate(|t: f64| t.powf(-0.5), 0.0, 1.0, &QuadOptions::default()).unwrap();
        assert!(close(r.value, 2.0, 1e-9), "{r:?}");
    }

    #[test]
    fn segment_budget_is_enforced() {
        let opts = QuadOptions {
            max_segments: 2,
            ..QuadOptions::default()
        };
        let err = integrate(|t: f64| (1.0 / t).sin(), 1e-6, 1.0, &opts).unwrap_err();
        assert!(matches!(err, Error::QuadratureNotConverged { .. }));
    }

    #[test]
    fn arccot_branch() {
        assert!(close(arccot(0.0), PI / 2.0, 1e-15));
        assert!(arccot(1e9) > 0.0 && arccot(1e9) < 1e-8);
        assert!(arccot(-1e9) < PI && arccot(-1e9) > PI - 1e-8);
        assert!(close(arccot(-1.0), 3.0 * PI / 4.0, 1e-15));
    }

    #[test]
    fn genfun_examples() {
        let p = Params::new(rat(3, 2), rat(-1, 3));
        assert_eq!(genfun_closed(&p, 0.7, 0.0), 1.0);
        let origin = Params::from_ints(0, 0);
        for y in [0.1, -0.3, 0.5, 2.0] {
            assert!(close(
                genfun_closed(&origin, 0.0, y),
                1.0 / (1.0 + y * y),
                1e-15
            ));
        }
        assert!(close(genfun_closed(&origin, 0.0, 0.5), 0.8, 1e-15));
        // at alpha = 0 the closed form is 1 / (1 + 2xy + y^2 sigma)
        let (x, y) = (0.4, -0.2);
        let expect = 1.0 / (1.0 + 2.0 * x * y + y * y * (1.0 + x * x));
        assert!(close(genfun_closed(&origin, x, y), expect, 1e-15));
    }

    #[test]
    fn series_check_examples() {
        let origin = Params::from_ints(0, 0);
        let s = genfun_series_check(&origin, 0.0, 0.0, 10).unwrap();
        assert_eq!((s.closed, s.series), (1.0, 1.0));
        let s = genfun_series_check(&origin, 0.0, 0.3, 25).unwrap();
        assert!(close(s.closed, 1.0 / 1.09, 1e-15));
        assert!(s.relative_gap() < 1e-10, "{s:?}");
        let s = genfun_series_check(&Params::from_ints(1, 1), 0.5, 0.1, 30).unwrap();
        assert!(s.converged(1e-12));
        assert!(s.relative_gap() < 1e-10, "{s:?}");
    }

    #[test]
    fn series_check_flags_divergence() {
        // radius of convergence in y is 1 / sqrt(sigma(x))
        let err = genfun_series_check(&Params::from_ints(0, 0), 0.5, 1.5, 30).unwrap_err();
        assert!(matches!(err, Error::Divergent { .. }));
        assert!(genfun_series_check(&Params::from_ints(0, 0), 0.5, 0.1, 4).is_err());
    }

    #[test]
    fn pde_holds_at_sample_point() {
        let c = pde_check(&Params::new(rat(1, 2), rat(1, 3)), 0.3, 0.2, 1e-3);
        assert!(c.relative_gap() < 1e-6, "{c:?}");
    }

    #[test]
    fn ortho_examples() {
        let origin = Params::from_ints(0, 0);
        let r = ortho_integral(&origin, 2, 0, false).unwrap();
        assert!(r.value.abs() < 1e-10, "{r:?}");
        let r = ortho_integral(&origin, 0, 0, false).unwrap();
        assert!(close(r.value, PI / 2.0, 1e-8), "{r:?}");
        let r = ortho_integral(&Params::from_ints(0, 1), 2, 4, false).unwrap();
        assert!(r.value.abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn ortho_rejects_divergent_exponents() {
        let err = ortho_integral(&Params::from_ints(0, -2), 0, 0, false).unwrap_err();
        assert!(matches!(err, Error::NotIntegrable(_)));
        assert!(ortho_integral(&Params::new(int(0), rat(-3, 2)), 1, 1, false).is_err());
        assert!(ortho_integral(&Params::new(int(0), rat(-5, 4)), 1, 1, false).is_ok());
        // the extra sqrt(sigma) costs one power of decay
        assert!(ortho_integral(&Params::new(int(0), rat(-5, 4)), 1, 0, true).is_err());
    }

    #[test]
    fn ortho_matches_direct_x_quadrature() {
        // independent route: integrate over x directly on a truncated line
        let params = Params::new(rat(1, 2), rat(1, 2));
        let fam = three_term_q(&params, 3);
        let (q1, q3) = (
            fam.polys()[1].to_f64_coeffs(),
            fam.polys()[3].to_f64_coeffs(),
        );
        let g = |x: f64| {
            let s = 1.0 + x * x;
            horner(&q1, x) * horner(&q3, x) * (-0.5 * arccot(x)).exp() / s.powf(2.0 + 0.5 + 2.0)
        };
        let direct = integrate(g, -2000.0, 2000.0, &QuadOptions::default())
            .unwrap()
            .value;
        let subst = ortho_integral(&params, 1, 3, false).unwrap().value;
        assert!(close(direct, subst, 1e-9), "{direct} vs {subst}");
    }

    #[test]
    fn i0_reference_examples() {
        assert!(close(i0_reference(0.0).unwrap(), PI / 2.0, 1e-13));
        // integral of sigma^-3 and sigma^-4
        assert!(close(i0_reference(1.0).unwrap(), 3.0 * PI / 8.0, 1e-13));
        assert!(close(i0_reference(2.0).unwrap(), 5.0 * PI / 16.0, 1e-13));
        assert!(i0_reference(-1.5).is_err());
        assert!(i0_reference(f64::NAN).is_err());
    }

    #[test]
    fn i0_constant_inside_unit_interval() {
        let rs = i0_scan(&int(0), &[-0.9, 0.0, 0.9]).unwrap();
        for r in rs {
            assert!(close(r.value, PI / 2.0, 1e-8), "{r:?}");
        }
        let r = i0_scan(&int(3), &[0.5]).unwrap()[0];
        assert!(close(r.value, 35.0 * PI / 128.0, 1e-8));
        assert!(close(r.value, i0_reference(3.0).unwrap(), 1e-8));
        // outside: pi / (2 y^2) at a = 0
        let r = i0_scan(&int(0), &[1.5]).unwrap()[0];
        assert!((r.value - PI / 2.0).abs() > 1e-3);
        assert!(close(r.value, PI / (2.0 * 2.25), 1e-9));
    }

    #[test]
    fn i1_at_zero_alpha_is_i0() {
        let ys = [-0.5, 0.2, 0.8];
        let a = rat(1, 2);
        let i0 = i0_scan(&a, &ys).unwrap();
        let i1 = i1_scan(&Params::new(int(0), a), &ys).unwrap();
        for (p, q) in i0.iter().zip(&i1) {
            assert!(close(p.value, q.value, 1e-14));
        }
    }

    #[test]
    fn i1_values() {
        let p = Params::from_ints(1, 0);
        let rs = i1_scan(&p, &[0.0, 0.5, -0.5]).unwrap();
        // y = 0: integral of e^(-t) sin^2 t over (0, pi) = 2 (1 - e^-pi) / 5
        assert!(close(rs[0].value, 0.4 * (1.0 - (-PI).exp()), 1e-12));
        assert!((rs[1].value - rs[2].value).abs() > 1e-4);
    }

    #[test]
    fn i_scan_examples() {
        let p = Params::from_ints(1, 0);
        let i = i_scan(&p, &[0.0]).unwrap()[0];
        let o = ortho_integral(&p, 0, 0, false).unwrap();
        assert!(close(i.value, o.value, 1e-12));
        let even = i_scan(&Params::from_ints(0, 0), &[0.4, -0.4]).unwrap();
        assert!(close(even[0].value, even[1].value, 1e-9));
    }

    #[test]
    fn scans_reject_divergent_weights() {
        assert!(matches!(
            i0_scan(&int(-2), &[0.0]),
            Err(Error::NotIntegrable(_))
        ));
        assert!(i1_scan(&Params::new(int(1), rat(-3, 2)), &[0.0]).is_err());
    }

    #[test]
    fn grid_and_csv() {
        let g = y_grid(-1.0, 1.0, 5);
        assert_eq!(g, vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        let r = QuadResult {
            value: PI / 2.0,
            abs_error_estimate: 1e-17,
            nodes_used: 60,
        };
        let mut buf = Vec::new();
        write_scan_csv(&mut buf, &[0.1], &[r]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "y,value,error_estimate,nodes\n1.0000000000000001e-1,1.5707963267948966e0,1.0000000000000001e-17,60\n"
        );
        let back: f64 = "1.5707963267948966e0".parse().unwrap();
        assert_eq!(back, PI / 2.0);
    }
}
