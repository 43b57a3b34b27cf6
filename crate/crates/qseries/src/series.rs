//! Truncated formal Laurent series in `q` with exact rational coefficients.
//!
//! A [`LaurentSeries`] stores the coefficients of `q^e` for
//! `min_exp <= e <= order` in a dense vector. Coefficients in that window
//! are *exact*; nothing is known beyond `order`. Every operation computes
//! the widest window it can guarantee rather than assuming aligned orders:
//!
//! - `add`/`sub`: result order is `min(a.order, b.order)`.
//! - `mul`: result order is `min(a.order + b.min_exp, b.order + a.min_exp)`
//!   (for a series that is zero through its order, `min_exp` is taken as
//!   `order + 1`, which is the tightest thing known about its support).
//! - `invert` of `q^v * u` with `u(0) != 0`: result order is `order - 2v`.
//! - `substitute_power(t)`: result order is `order * t`.
//!
//! Invariants:
//! - `coeffs.len() == (order - min_exp + 1)`; the zero series is stored
//!   with an empty vector and `min_exp == order + 1`.
//! - The leading (lowest-exponent) stored coefficient is nonzero, so
//!   `min_exp` is the true valuation of the series within the window.
//! - Coefficients are reduced rationals with positive denominator
//!   (guaranteed by the underlying rational type).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Exact rational coefficient: arbitrary-precision numerator/denominator,
/// always in lowest terms with positive denominator.
pub type Coefficient = BigRational;

/// Build a coefficient from a machine integer.
pub fn coeff_int(n: i64) -> Coefficient {
    BigRational::from_integer(BigInt::from(n))
}

/// Build the coefficient `n / d`. Panics on `d == 0`.
pub fn coeff_ratio(n: i64, d: i64) -> Coefficient {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `a * b` with a fast path for integer coefficients: the product of two
/// reduced fractions with denominator 1 needs no gcd work, and integer
/// series dominate this crate's workload.
#[inline]
pub(crate) fn mul_coeff(a: &Coefficient, b: &Coefficient) -> Coefficient {
    if a.denom().is_one() && b.denom().is_one() {
        Coefficient::new_raw(a.numer() * b.numer(), BigInt::one())
    } else {
        a * b
    }
}

/// `*acc += x` with the same integer fast path.
#[inline]
pub(crate) fn add_assign_coeff(acc: &mut Coefficient, x: &Coefficient) {
    if acc.denom().is_one() && x.denom().is_one() {
        *acc = Coefficient::new_raw(acc.numer() + x.numer(), BigInt::one());
    } else {
        *acc += x;
    }
}

/// Errors from series-level operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    /// Inversion of a series that is zero through its truncation order.
    #[error("non-invertible: series is zero through its truncation order")]
    NonInvertible,
    /// A coefficient beyond the guaranteed-exact window was requested.
    #[error("beyond truncation: coefficient of q^{requested} requested, series exact only through q^{order}")]
    BeyondTruncation { requested: i64, order: i64 },
    /// Exponent substitution q -> q^t with t < 1.
    #[error("substitute_power requires t >= 1, got {0}")]
    BadSubstitution(i64),
    /// Equality was requested through an order beyond an operand's window.
    #[error("comparison through q^{requested} exceeds an operand order {order}")]
    OrderExceeded { requested: i64, order: i64 },
}

/// Location and values of the first coefficient disagreement found by
/// [`LaurentSeries::eq_to_order`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub exponent: i64,
    pub lhs: Coefficient,
    pub rhs: Coefficient,
}

/// A truncated formal Laurent series in `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    min_exp: i64,
    coeffs: Vec<Coefficient>,
    order: i64,
}

impl LaurentSeries {
    /// The zero series, exact through `order`.
    pub fn zero(order: i64) -> Self {
        LaurentSeries {
            min_exp: order + 1,
            coeffs: Vec::new(),
            order,
        }
    }

    /// The constant series 1, exact through `order >= 0`.
    pub fn one(order: i64) -> Self {
        Self::monomial(Coefficient::one(), 0, order)
    }

    /// The series `c * q^e`, exact through `order`. If `e > order` the
    /// monomial is invisible inside the window and the zero series (at that
    /// order) is returned.
    pub fn monomial(c: Coefficient, e: i64, order: i64) -> Self {
        if c.is_zero() || e > order {
            return Self::zero(order);
        }
        let mut coeffs = vec![Coefficient::zero(); (order - e + 1) as usize];
        coeffs[0] = c;
        LaurentSeries {
            min_exp: e,
            coeffs,
            order,
        }
    }

    /// Build from explicit coefficients for `q^min_exp ..` (anything the
    /// window does not cover is dropped), exact through `order`.
    pub fn from_coeffs(min_exp: i64, coeffs: Vec<Coefficient>, order: i64) -> Self {
        let mut s = LaurentSeries {
            min_exp,
            coeffs,
            order,
        };
        s.fit_window();
        s
    }

    /// Build a polynomial `c_0 + c_1 q + ...` from integer coefficients.
    pub fn from_ints(min_exp: i64, ints: &[i64], order: i64) -> Self {
        Self::from_coeffs(min_exp, ints.iter().map(|&n| coeff_int(n)).collect(), order)
    }

    /// Resize `coeffs` to exactly cover `min_exp ..= order`, then trim
    /// leading zeros so `min_exp` is the true valuation.
    fn fit_window(&mut self) {
        if self.min_exp > self.order {
            self.min_exp = self.order + 1;
            self.coeffs.clear();
            return;
        }
        let want = (self.order - self.min_exp + 1) as usize;
        self.coeffs.resize(want, Coefficient::zero());
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.min_exp = self.order + 1;
                self.coeffs.clear();
            }
            Some(k) if k > 0 => {
                self.coeffs.drain(..k);
                self.min_exp += k as i64;
            }
            _ => {}
        }
    }

    /// Truncation order: coefficients of `q^e` are exact for all `e <= order`.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Lowest exponent carrying a nonzero coefficient; `None` for a series
    /// that is zero through its order.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.min_exp)
        }
    }

    /// `min_exp` treated as support lower bound: for the zero series this is
    /// `order + 1` (nothing can appear earlier), which is exactly the value
    /// the product-window rule needs.
    fn support_min(&self) -> i64 {
        self.min_exp
    }

    /// True if every known coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exact coefficient of `q^e`. Errors if `e` lies beyond the window.
    pub fn coeff(&self, e: i64) -> Result<Coefficient, SeriesError> {
        if e > self.order {
            return Err(SeriesError::BeyondTruncation {
                requested: e,
                order: self.order,
            });
        }
        if e < self.min_exp {
            return Ok(Coefficient::zero());
        }
        Ok(self.coeffs[(e - self.min_exp) as usize].clone())
    }

    /// Iterate over `(exponent, coefficient)` pairs with nonzero coefficient.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Coefficient)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_exp + i as i64, c))
    }

    /// Restrict the window to `new_order` (a no-op if already tighter).
    pub fn truncate(&self, new_order: i64) -> Self {
        if new_order >= self.order {
            return self.clone();
        }
        let mut s = self.clone();
        s.order = new_order;
        s.coeffs
            .truncate(((new_order - s.min_exp) + 1).max(0) as usize);
        s.fit_window();
        s
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            order: self.order,
        }
    }

    /// Exact sum; result exact through `min(self.order, other.order)`.
    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let min_exp = self.min_exp.min(other.min_exp).min(order + 1);
        if min_exp > order {
            return Self::zero(order);
        }
        let len = (order - min_exp + 1) as usize;
        let mut coeffs = vec![Coefficient::zero(); len];
        for (src, base) in [(self, self.min_exp), (other, other.min_exp)] {
            for (i, c) in src.coeffs.iter().enumerate() {
                let e = base + i as i64;
                if e <= order {
                    add_assign_coeff(&mut coeffs[(e - min_exp) as usize], c);
                }
            }
        }
        Self::from_coeffs(min_exp, coeffs, order)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiply by a scalar.
    pub fn scale(&self, c: &Coefficient) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        LaurentSeries {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|x| mul_coeff(x, c)).collect(),
            order: self.order,
        }
    }

    /// Exact product through the guaranteed window
    /// `min(a.order + b.support_min, b.order + a.support_min)`.
    ///
    /// Soundness of the window: the unknown tail of `a` starts at
    /// `a.order + 1` and meets terms of `b` no lower than `b.support_min`,
    /// so the first product exponent it can disturb is
    /// `a.order + 1 + b.support_min`; symmetrically for `b`.
    pub fn mul(&self, other: &Self) -> Self {
        let order = (self.order + other.support_min()).min(other.order + self.support_min());
        if self.is_zero() || other.is_zero() {
            return Self::zero(order);
        }
        let min_exp = self.min_exp + other.min_exp;
        if min_exp > order {
            return Self::zero(order);
        }
        let len = (order - min_exp + 1) as usize;
        let mut coeffs = vec![Coefficient::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ea = self.min_exp + i as i64;
            if ea + other.min_exp > order {
                break;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let e = ea + other.min_exp + j as i64;
                if e > order {
                    break;
                }
                let prod = mul_coeff(a, b);
                add_assign_coeff(&mut coeffs[(e - min_exp) as usize], &prod);
            }
        }
        Self::from_coeffs(min_exp, coeffs, order)
    }

    /// Multiply by `q^k` (window shifts with the exponents).
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            min_exp: self.min_exp + k,
            coeffs: self.coeffs.clone(),
            order: self.order + k,
        }
    }

    /// Multiplicative inverse. For `s = q^v * u` with `u` a unit power
    /// series exact through `order - v`, the inverse is exact through
    /// `order - 2v` and has valuation `-v`.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::NonInvertible);
        }
        let v = self.min_exp;
        let unit_order = self.order - v; // order of u = q^{-v} s, exact window
        let n = unit_order as usize; // >= 0 since order >= min_exp
        let a0 = &self.coeffs[0];
        let inv_a0 = a0.recip();
        let mut inv = vec![Coefficient::zero(); n + 1];
        inv[0] = inv_a0.clone();
        for k in 1..=n {
            let mut acc = Coefficient::zero();
            for i in 1..=k.min(self.coeffs.len() - 1) {
                if self.coeffs[i].is_zero() || inv[k - i].is_zero() {
                    continue;
                }
                let prod = mul_coeff(&self.coeffs[i], &inv[k - i]);
                add_assign_coeff(&mut acc, &prod);
            }
            if !acc.is_zero() {
                inv[k] = -mul_coeff(&inv_a0, &acc);
            }
        }
        Ok(Self::from_coeffs(-v, inv, unit_order - v))
    }

    /// Integer power (negative exponents via inversion).
    pub fn pow(&self, n: i64) -> Result<Self, SeriesError> {
        if n == 0 {
            return Ok(Self::one(self.order));
        }
        let base = if n < 0 { self.invert()? } else { self.clone() };
        let mut acc = base.clone();
        for _ in 1..n.abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Substitute `q -> q^t`, `t >= 1`. Exponents scale by `t`; the result
    /// is exact through `order * t`.
    pub fn substitute_power(&self, t: i64) -> Result<Self, SeriesError> {
        if t < 1 {
            return Err(SeriesError::BadSubstitution(t));
        }
        let order = self.order * t;
        if self.is_zero() {
            return Ok(Self::zero(order));
        }
        let min_exp = self.min_exp * t;
        let mut coeffs = vec![Coefficient::zero(); (order - min_exp + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (self.min_exp + i as i64) * t;
            if e <= order {
                coeffs[(e - min_exp) as usize] = c.clone();
            }
        }
        Ok(Self::from_coeffs(min_exp, coeffs, order))
    }

    /// Compare coefficients for all exponents `<= n`. Returns the first
    /// mismatch, or `None` if the series agree. Errors if `n` exceeds either
    /// window (equality is only defined through the smaller order).
    pub fn eq_to_order(&self, other: &Self, n: i64) -> Result<Option<Mismatch>, SeriesError> {
        for s in [self, other] {
            if n > s.order {
                return Err(SeriesError::OrderExceeded {
                    requested: n,
                    order: s.order,
                });
            }
        }
        let lo = self.min_exp.min(other.min_exp);
        for e in lo..=n {
            let l = self.coeff(e)?;
            let r = other.coeff(e)?;
            if l != r {
                return Ok(Some(Mismatch {
                    exponent: e,
                    lhs: l,
                    rhs: r,
                }));
            }
        }
        Ok(None)
    }

    /// True when every stored coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 + O(q^{})", self.order + 1);
        }
        let mut first = true;
        for (e, c) in self.iter() {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if e == 0 {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "q^{}", e)?;
            } else {
                write!(f, "{}*q^{}", a, e)?;
            }
        }
        write!(f, " + O(q^{})", self.order + 1)
    }
}
