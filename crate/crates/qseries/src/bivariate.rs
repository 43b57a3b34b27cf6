//! Truncated series in `q` whose coefficients are Laurent polynomials in a
//! second variable `a`.
//!
//! A [`BivariateSeries`] stores one [`APoly`] per q-exponent `0..=order`;
//! coefficients of `q^e` for `e <= order` are exact. The a-degree appearing
//! at each q-exponent is finite and recorded by the polynomial itself.
//!
//! Specialization `a := q^m` ([`BivariateSeries::specialize`]) maps
//! `a^d q^e` to `q^{e + m d}` and reports the guaranteed-exact order of the
//! result: when every a-exponent in the series is nonnegative (which is an
//! assembly invariant for everything this crate builds) that order is the
//! full q-order, because the unknown q-tail can only move to higher
//! exponents.

use crate::series::{add_assign_coeff, mul_coeff, Coefficient, LaurentSeries, SeriesError};
use num_traits::{One, Zero};
use std::fmt;

/// A Laurent polynomial in `a` (exact, not truncated).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct APoly {
    min_deg: i64,
    coeffs: Vec<Coefficient>, // index i <-> a^{min_deg + i}; trimmed both ends
}

impl APoly {
    pub fn zero() -> Self {
        APoly {
            min_deg: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: Coefficient) -> Self {
        let mut p = APoly {
            min_deg: 0,
            coeffs: vec![c],
        };
        p.trim();
        p
    }

    pub fn one() -> Self {
        Self::constant(Coefficient::one())
    }

    /// `c * a^d`.
    pub fn monomial(c: Coefficient, d: i64) -> Self {
        let mut p = APoly {
            min_deg: d,
            coeffs: vec![c],
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.min_deg = 0;
            }
            Some(k) if k > 0 => {
                self.coeffs.drain(..k);
                self.min_deg += k as i64;
            }
            _ => {}
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True if the polynomial is a constant (degree 0 or zero).
    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty() || (self.min_deg == 0 && self.coeffs.len() == 1)
    }

    pub fn min_degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_deg)
        }
    }

    pub fn max_degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_deg + self.coeffs.len() as i64 - 1)
        }
    }

    pub fn coeff(&self, d: i64) -> Coefficient {
        if self.is_zero() || d < self.min_deg || d > self.max_degree().unwrap() {
            return Coefficient::zero();
        }
        self.coeffs[(d - self.min_deg) as usize].clone()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Coefficient)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_deg + i as i64, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let min = self.min_deg.min(other.min_deg);
        let max = self.max_degree().unwrap().max(other.max_degree().unwrap());
        let mut coeffs = vec![Coefficient::zero(); (max - min + 1) as usize];
        for (src, base) in [(self, self.min_deg), (other, other.min_deg)] {
            for (i, c) in src.coeffs.iter().enumerate() {
                add_assign_coeff(&mut coeffs[(base + i as i64 - min) as usize], c);
            }
        }
        let mut p = APoly {
            min_deg: min,
            coeffs,
        };
        p.trim();
        p
    }

    pub fn neg(&self) -> Self {
        APoly {
            min_deg: self.min_deg,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let min = self.min_deg + other.min_deg;
        let mut coeffs = vec![Coefficient::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let prod = mul_coeff(x, y);
                add_assign_coeff(&mut coeffs[i + j], &prod);
            }
        }
        let mut p = APoly {
            min_deg: min,
            coeffs,
        };
        p.trim();
        p
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut p = APoly {
            min_deg: self.min_deg,
            coeffs: self.coeffs.iter().map(|x| mul_coeff(x, c)).collect(),
        };
        p.trim();
        p
    }
}

impl fmt::Display for APoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if d == 0 {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "a^{}", d)?;
            } else {
                write!(f, "{}*a^{}", c, d)?;
            }
        }
        Ok(())
    }
}

/// Errors specific to bivariate series.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BivariateError {
    #[error("not invertible as a power series in q with polynomial a-coefficients: q^0 coefficient is {0}")]
    NonUnitConstantTerm(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// First disagreement between two bivariate series, as displayed polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BvMismatch {
    pub exponent: i64,
    pub lhs: String,
    pub rhs: String,
}

/// Truncated power series in `q` with Laurent-polynomial-in-`a` coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    coeffs: Vec<APoly>, // index e <-> q^e, length order + 1
    order: i64,
}

impl BivariateSeries {
    pub fn zero(order: i64) -> Self {
        BivariateSeries {
            coeffs: vec![APoly::zero(); (order + 1).max(0) as usize],
            order,
        }
    }

    pub fn one(order: i64) -> Self {
        Self::monomial(APoly::one(), 0, order)
    }

    /// `p(a) * q^e` with `e >= 0`.
    pub fn monomial(p: APoly, e: i64, order: i64) -> Self {
        assert!(e >= 0, "bivariate series use nonnegative q-exponents");
        let mut s = Self::zero(order);
        if e <= order {
            s.coeffs[e as usize] = p;
        }
        s
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn coeff(&self, e: i64) -> Result<APoly, SeriesError> {
        if e > self.order {
            return Err(SeriesError::BeyondTruncation {
                requested: e,
                order: self.order,
            });
        }
        if e < 0 {
            return Ok(APoly::zero());
        }
        Ok(self.coeffs[e as usize].clone())
    }

    /// Smallest a-exponent appearing anywhere in the stored window, if any.
    pub fn min_a_degree(&self) -> Option<i64> {
        self.coeffs.iter().filter_map(|p| p.min_degree()).min()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|p| p.is_zero())
    }

    pub fn truncate(&self, new_order: i64) -> Self {
        if new_order >= self.order {
            return self.clone();
        }
        if new_order < 0 {
            return Self::zero(new_order);
        }
        BivariateSeries {
            coeffs: self.coeffs[..=(new_order as usize)].to_vec(),
            order: new_order,
        }
    }

    pub fn neg(&self) -> Self {
        BivariateSeries {
            coeffs: self.coeffs.iter().map(|p| p.neg()).collect(),
            order: self.order,
        }
    }

    /// Exact sum through `min(self.order, other.order)`.
    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut coeffs = Vec::with_capacity((order + 1) as usize);
        for e in 0..=order {
            coeffs.push(self.coeffs[e as usize].add(&other.coeffs[e as usize]));
        }
        BivariateSeries { coeffs, order }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Exact product. Power series in `q` start at `q^0`, so the window is
    /// simply `min(self.order, other.order)`.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut coeffs = vec![APoly::zero(); (order + 1) as usize];
        for (i, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() || i as i64 > order {
                continue;
            }
            for (j, r) in other.coeffs.iter().enumerate() {
                let e = i + j;
                if e as i64 > order {
                    break;
                }
                if r.is_zero() {
                    continue;
                }
                coeffs[e] = coeffs[e].add(&p.mul(r));
            }
        }
        BivariateSeries { coeffs, order }
    }

    /// Inverse of a series whose `q^0` coefficient is a nonzero *constant*
    /// in `a`. (Only in that case is the inverse again a power series in `q`
    /// with polynomial coefficients.)
    pub fn invert(&self) -> Result<Self, BivariateError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() || !c0.is_constant() {
            return Err(BivariateError::NonUnitConstantTerm(c0.to_string()));
        }
        let a0 = c0.coeff(0);
        let inv_a0 = a0.recip();
        let mut inv = vec![APoly::zero(); (self.order + 1) as usize];
        inv[0] = APoly::constant(inv_a0.clone());
        for k in 1..=(self.order as usize) {
            let mut acc = APoly::zero();
            for i in 1..=k {
                if self.coeffs[i].is_zero() || inv[k - i].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[i].mul(&inv[k - i]));
            }
            if !acc.is_zero() {
                inv[k] = acc.neg().scale(&inv_a0);
            }
        }
        Ok(BivariateSeries {
            coeffs: inv,
            order: self.order,
        })
    }

    /// Specialize `a := q^m`, `m >= 0`, returning a univariate series.
    ///
    /// The guaranteed-exact order is computed from the smallest a-exponent
    /// `D` present: for `D >= 0` it is the full q-order (the unknown q-tail,
    /// whose a-exponents are nonnegative by the same assembly invariant that
    /// produced the stored window, only moves up); for `D < 0` the result is
    /// exact through `order + m*D`, assuming the tail's a-exponents are also
    /// bounded below by `D`.
    pub fn specialize(&self, m: i64) -> LaurentSeries {
        assert!(m >= 0, "specialization exponent must be nonnegative");
        let dmin = self.min_a_degree().unwrap_or(0).min(0);
        let g_order = self.order + m * dmin;
        let mut out = LaurentSeries::zero(g_order);
        for (e, p) in self.coeffs.iter().enumerate() {
            for (d, c) in p.iter() {
                let target = e as i64 + m * d;
                if target <= g_order {
                    out = out.add(&LaurentSeries::monomial(c.clone(), target, g_order));
                }
            }
        }
        out
    }

    /// Per-q-exponent polynomial comparison through order `n`.
    pub fn eq_to_order(&self, other: &Self, n: i64) -> Result<Option<BvMismatch>, SeriesError> {
        for s in [self, other] {
            if n > s.order {
                return Err(SeriesError::OrderExceeded {
                    requested: n,
                    order: s.order,
                });
            }
        }
        for e in 0..=n {
            let l = &self.coeffs[e as usize];
            let r = &other.coeffs[e as usize];
            if l != r {
                return Ok(Some(BvMismatch {
                    exponent: e,
                    lhs: l.to_string(),
                    rhs: r.to_string(),
                }));
            }
        }
        Ok(None)
    }

    /// Lift a univariate series (a-degree 0 everywhere). The series must
    /// not have negative q-exponents.
    pub fn from_univariate(s: &LaurentSeries) -> Self {
        assert!(
            s.valuation().unwrap_or(0) >= 0,
            "cannot lift a series with negative q-exponents"
        );
        let mut out = Self::zero(s.order());
        for (e, c) in s.iter() {
            out.coeffs[e as usize] = APoly::constant(c.clone());
        }
        out
    }
}
