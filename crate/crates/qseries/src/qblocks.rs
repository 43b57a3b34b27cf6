//! q-Pochhammer symbols, Gaussian polynomials, the mod-3 character, theta
//! builders, and a truncated basic hypergeometric evaluator.
//!
//! Throughout, a Pochhammer argument is a signed monomial
//! `sign * a^{a_exp} * q^{q_exp}` ([`QMonomial`]) and a base is `q^t`
//! ([`PochhammerBase`]). Finite symbols are computed as exact polynomial
//! products (so no window is lost on polynomial inputs); infinite symbols
//! include every factor that can touch a coefficient within the requested
//! order and are exact through exactly that order.
//!
//! The negative-index convention is `(A; q^t)_{-1} = 1 / (1 - A q^{-t})`,
//! the unique choice under which `(-q; q)_{-1} = 1/2`. The singular case
//! `(q^t; q^t)_{-1}` is a reported error; callers that need it must use a
//! limit formula instead.

use crate::bivariate::{BivariateError, BivariateSeries};
use crate::series::{
    add_assign_coeff, coeff_ratio, mul_coeff, Coefficient, LaurentSeries, SeriesError,
};
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Errors from q-block constructions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QBlockError {
    #[error("singular negative-index Pochhammer: (q^{t}; q^{t})_{{-1}} has a vanishing factor")]
    SingularNegativeIndex { t: i64 },
    #[error("divergent formal product: infinite Pochhammer argument must have q-exponent >= 1, got {q_exp}")]
    DivergentProduct { q_exp: i64 },
    #[error("negative Pochhammer index {0} (only -1 is defined)")]
    BadIndex(i64),
    #[error(
        "non-terminating series: argument z = q^{0} admits unboundedly low terms within the window"
    )]
    NonTerminating(i64),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Bivariate(#[from] BivariateError),
}

/// A signed monomial `sign * a^{a_exp} * q^{q_exp}` used as a Pochhammer
/// argument or series variable. `a_exp = 0` in univariate contexts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QMonomial {
    pub negative: bool,
    pub a_exp: i64,
    pub q_exp: i64,
}

impl QMonomial {
    /// `+q^e`.
    pub fn q(e: i64) -> Self {
        QMonomial {
            negative: false,
            a_exp: 0,
            q_exp: e,
        }
    }

    /// `-q^e`.
    pub fn neg_q(e: i64) -> Self {
        QMonomial {
            negative: true,
            a_exp: 0,
            q_exp: e,
        }
    }

    /// `+a^alpha q^e`.
    pub fn a_q(alpha: i64, e: i64) -> Self {
        assert!(alpha >= 0, "a-exponents are nonnegative");
        QMonomial {
            negative: false,
            a_exp: alpha,
            q_exp: e,
        }
    }

    /// `-a^alpha q^e`.
    pub fn neg_a_q(alpha: i64, e: i64) -> Self {
        assert!(alpha >= 0, "a-exponents are nonnegative");
        QMonomial {
            negative: true,
            a_exp: alpha,
            q_exp: e,
        }
    }

    fn sign_coeff(&self) -> Coefficient {
        if self.negative {
            -Coefficient::one()
        } else {
            Coefficient::one()
        }
    }
}

/// The base `q^t` of a Pochhammer symbol, `t >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PochhammerBase(pub i64);

impl PochhammerBase {
    pub fn t(&self) -> i64 {
        let PochhammerBase(t) = *self;
        assert!(t >= 1, "Pochhammer base exponent must be >= 1");
        t
    }
}

/// Number of factors in a multi-argument symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Count {
    Finite(i64),
    Infinite,
}

/// An exact polynomial accumulator: multiplies binomials `1 - c q^e`
/// without any truncation, so finite Pochhammer products stay exact no
/// matter how the requested order compares to the polynomial degree.
struct PolyAcc {
    min_exp: i64,
    coeffs: Vec<Coefficient>,
}

impl PolyAcc {
    fn one() -> Self {
        PolyAcc {
            min_exp: 0,
            coeffs: vec![Coefficient::one()],
        }
    }

    /// Multiply in place by `1 - c * q^e`.
    fn mul_binomial(&mut self, c: &Coefficient, e: i64) {
        if c.is_zero() {
            return;
        }
        let old_min = self.min_exp;
        let old = std::mem::take(&mut self.coeffs);
        let new_min = old_min.min(old_min + e);
        let new_max = (old_min + old.len() as i64 - 1).max(old_min + e + old.len() as i64 - 1);
        let mut coeffs = vec![Coefficient::zero(); (new_max - new_min + 1) as usize];
        for (i, x) in old.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let base = old_min + i as i64;
            add_assign_coeff(&mut coeffs[(base - new_min) as usize], x);
            let prod = -mul_coeff(x, c);
            add_assign_coeff(&mut coeffs[(base + e - new_min) as usize], &prod);
        }
        self.min_exp = new_min;
        self.coeffs = coeffs;
    }

    fn into_series(self, order: i64) -> LaurentSeries {
        let degree = self.min_exp + self.coeffs.len() as i64 - 1;
        LaurentSeries::from_coeffs(self.min_exp, self.coeffs, order.max(degree))
    }
}

/// Finite symbol `(A; q^t)_n` for `n >= 0`, or the `n = -1` convention
/// `1 / (1 - A q^{-t})`, as a series exact through at least `order`.
pub fn poch_finite(
    arg: QMonomial,
    n: i64,
    base: PochhammerBase,
    order: i64,
) -> Result<LaurentSeries, QBlockError> {
    assert_eq!(arg.a_exp, 0, "univariate Pochhammer requires a_exp = 0");
    let t = base.t();
    if n < -1 {
        return Err(QBlockError::BadIndex(n));
    }
    if n == -1 {
        let e = arg.q_exp - t;
        if !arg.negative && e == 0 {
            return Err(QBlockError::SingularNegativeIndex { t });
        }
        if arg.negative && e == 0 {
            // 1 / (1 + 1)
            return Ok(LaurentSeries::monomial(coeff_ratio(1, 2), 0, order));
        }
        let mut acc = PolyAcc::one();
        acc.mul_binomial(&arg.sign_coeff(), e);
        let f = acc.into_series(order + 2 * e.abs());
        return Ok(f.invert()?.truncate(order));
    }
    let mut acc = PolyAcc::one();
    let s = arg.sign_coeff();
    for i in 0..n {
        acc.mul_binomial(&s, arg.q_exp + t * i);
    }
    Ok(acc.into_series(order))
}

/// Infinite symbol `(A; q^t)_inf` truncated at `order`: the product of all
/// factors whose exponent can reach the window. Requires `q_exp >= 1`.
pub fn poch_infinite(
    arg: QMonomial,
    base: PochhammerBase,
    order: i64,
) -> Result<LaurentSeries, QBlockError> {
    assert_eq!(arg.a_exp, 0, "univariate Pochhammer requires a_exp = 0");
    let t = base.t();
    if arg.q_exp < 1 {
        return Err(QBlockError::DivergentProduct { q_exp: arg.q_exp });
    }
    let mut acc = PolyAcc::one();
    let s = arg.sign_coeff();
    let mut e = arg.q_exp;
    while e <= order {
        acc.mul_binomial(&s, e);
        e += t;
    }
    Ok(acc.into_series(order).truncate(order))
}

/// Product `(A_1, ..., A_r; q^t)_s` of symbols sharing a base and count.
pub fn poch_multi(
    args: &[QMonomial],
    base: PochhammerBase,
    count: Count,
    order: i64,
) -> Result<LaurentSeries, QBlockError> {
    let mut acc = LaurentSeries::one(order);
    for &arg in args {
        let f = match count {
            Count::Finite(n) => poch_finite(arg, n, base, order)?,
            Count::Infinite => poch_infinite(arg, base, order)?,
        };
        acc = acc.mul(&f);
    }
    Ok(acc)
}

/// Bivariate finite symbol `(A; q^t)_n`, `n >= 0`, with
/// `A = sign * a^alpha * q^beta`, `beta >= 0`.
pub fn bv_poch_finite(
    arg: QMonomial,
    n: i64,
    base: PochhammerBase,
    order: i64,
) -> Result<BivariateSeries, QBlockError> {
    assert!(n >= 0, "bivariate Pochhammer index must be >= 0");
    assert!(
        arg.q_exp >= 0,
        "bivariate Pochhammer argument needs q_exp >= 0"
    );
    let t = base.t();
    let mut acc = BivariateSeries::one(order);
    for i in 0..n {
        acc = acc.mul(&bv_binomial(arg, arg.q_exp + t * i, order));
    }
    Ok(acc)
}

/// Bivariate infinite symbol `(A; q^t)_inf`; requires `q_exp >= 1` so that
/// only finitely many factors reach the window.
pub fn bv_poch_infinite(
    arg: QMonomial,
    base: PochhammerBase,
    order: i64,
) -> Result<BivariateSeries, QBlockError> {
    let t = base.t();
    if arg.q_exp < 1 {
        return Err(QBlockError::DivergentProduct { q_exp: arg.q_exp });
    }
    let mut acc = BivariateSeries::one(order);
    let mut e = arg.q_exp;
    while e <= order {
        acc = acc.mul(&bv_binomial(arg, e, order));
        e += t;
    }
    Ok(acc)
}

/// `1 - sign * a^alpha * q^e` as a bivariate series.
fn bv_binomial(arg: QMonomial, e: i64, order: i64) -> BivariateSeries {
    use crate::bivariate::APoly;
    let one = BivariateSeries::one(order);
    let mono = BivariateSeries::monomial(APoly::monomial(arg.sign_coeff(), arg.a_exp), e, order);
    one.sub(&mono)
}

type GaussianCache = Mutex<HashMap<(i64, i64), Arc<Vec<Coefficient>>>>;
static GAUSSIAN_CACHE: OnceLock<GaussianCache> = OnceLock::new();

/// Exact coefficient vector of the Gaussian polynomial for `0 <= b <= a`,
/// computed by the q-Pascal recurrence
/// `gp(a, b) = gp(a-1, b) + q^{a-b} gp(a-1, b-1)` and memoized behind a
/// global lock (entries are immutable once inserted).
fn gaussian_poly(a: i64, b: i64) -> Arc<Vec<Coefficient>> {
    debug_assert!(0 <= b && b <= a);
    if b == 0 || b == a {
        return Arc::new(vec![Coefficient::one()]);
    }
    let cache = GAUSSIAN_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(a, b)) {
        return hit.clone();
    }
    let left = gaussian_poly(a - 1, b);
    let right = gaussian_poly(a - 1, b - 1);
    let shift = (a - b) as usize;
    let mut coeffs = vec![Coefficient::zero(); (b * (a - b) + 1) as usize];
    for (i, c) in left.iter().enumerate() {
        add_assign_coeff(&mut coeffs[i], c);
    }
    for (i, c) in right.iter().enumerate() {
        add_assign_coeff(&mut coeffs[i + shift], c);
    }
    let arc = Arc::new(coeffs);
    cache.lock().unwrap().insert((a, b), arc.clone());
    arc
}

/// Gaussian polynomial: the q-binomial coefficient as a series exact
/// through at least `order` (zero outside `0 <= b <= a`).
pub fn gaussian(a: i64, b: i64, order: i64) -> LaurentSeries {
    if b < 0 || a < 0 || b > a {
        return LaurentSeries::zero(order);
    }
    let poly = gaussian_poly(a, b);
    let degree = b * (a - b);
    LaurentSeries::from_coeffs(0, poly.as_ref().clone(), order.max(degree))
}

/// The character mod 3: residues 0, 1, 2 map to 0, +1, -1. Negative
/// arguments use the mathematical (nonnegative) modulus.
pub fn chi3(m: i64) -> i64 {
    match m.rem_euclid(3) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// Theta sum over all integers: sum of `q^{c r^2 + d r}` for `r` in `Z`,
/// truncated at `order`. Requires `c >= 1`.
pub fn theta_sum(c: i64, d: i64, order: i64) -> LaurentSeries {
    assert!(c >= 1);
    let mut acc = LaurentSeries::zero(order);
    for r in theta_range(c, d, order) {
        let e = c * r * r + d * r;
        if e <= order {
            acc = acc.add(&LaurentSeries::monomial(Coefficient::one(), e, order));
        }
    }
    acc
}

/// All `r` with `c r^2 + d r <= order` (a superset is fine; exponents are
/// rechecked by the caller).
fn theta_range(c: i64, d: i64, order: i64) -> std::ops::RangeInclusive<i64> {
    let mut radius = 0;
    while c * radius * radius - d.abs() * radius <= order {
        radius += 1;
    }
    -radius..=radius
}

/// Jacobi triple product instance: returns the pair
/// `(sum side, product side)` for `sum_{r in Z} q^{c r^2 + d r}` and
/// `(-q^{c+d}, -q^{c-d}, q^{2c}; q^{2c})_inf`. Requires `c - |d| >= 1` so
/// the product side is a genuine power series.
pub fn triple_product(
    c: i64,
    d: i64,
    order: i64,
) -> Result<(LaurentSeries, LaurentSeries), QBlockError> {
    assert!(c - d.abs() >= 1, "triple product needs c - |d| >= 1");
    let sum = theta_sum(c, d, order);
    let product = poch_multi(
        &[
            QMonomial::neg_q(c + d),
            QMonomial::neg_q(c - d),
            QMonomial::q(2 * c),
        ],
        PochhammerBase(2 * c),
        Count::Infinite,
        order,
    )?;
    Ok((sum, product))
}

/// Basic hypergeometric series
/// `sum_n prod_i (A_i; q^t)_n / ((q^t; q^t)_n prod_j (B_j; q^t)_n) * z^n`
/// truncated at `order`.
///
/// Termination requires each summand's valuation to grow, which holds when
/// `z.q_exp >= 1` and every numerator argument has `q_exp >= 0` (each
/// numerator factor then has valuation >= 0, so term `n` has valuation at
/// least `n * z.q_exp`). Other shapes must use [`phi_series_terminating`].
pub fn phi_series(
    numerator: &[QMonomial],
    denominator: &[QMonomial],
    base: PochhammerBase,
    z: QMonomial,
    order: i64,
) -> Result<LaurentSeries, QBlockError> {
    if z.q_exp < 1 || numerator.iter().any(|m| m.q_exp < 0) {
        return Err(QBlockError::NonTerminating(
            z.q_exp
                .min(numerator.iter().map(|m| m.q_exp).min().unwrap_or(0)),
        ));
    }
    let n_max = order / z.q_exp;
    phi_series_terminating(numerator, denominator, base, z, order, n_max)
}

/// Basic hypergeometric sum with an explicit upper summation limit, for
/// terminating series (for instance numerators containing `q^{-n}`-style
/// monomials).
pub fn phi_series_terminating(
    numerator: &[QMonomial],
    denominator: &[QMonomial],
    base: PochhammerBase,
    z: QMonomial,
    order: i64,
    n_max: i64,
) -> Result<LaurentSeries, QBlockError> {
    assert_eq!(z.a_exp, 0, "univariate series variable");
    let t = base.t();
    let mut acc = LaurentSeries::zero(order);
    for n in 0..=n_max {
        let mut num = LaurentSeries::one(order + 2 * t * n * n.max(1));
        for &m in numerator {
            num = num.mul(&poch_finite(m, n, base, num.order())?);
        }
        if num.is_zero() {
            continue;
        }
        let mut den = poch_finite(QMonomial::q(t), n, base, num.order())?;
        for &m in denominator {
            den = den.mul(&poch_finite(m, n, base, den.order())?);
        }
        let zn_sign = if z.negative && n % 2 == 1 {
            -Coefficient::one()
        } else {
            Coefficient::one()
        };
        let term =
            num.mul(&den.invert()?)
                .mul(&LaurentSeries::monomial(zn_sign, z.q_exp * n, order));
        acc = acc.add(&term.truncate(order));
    }
    Ok(acc.truncate(order))
}
