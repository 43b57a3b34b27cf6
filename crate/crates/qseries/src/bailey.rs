//! Bailey pairs as first-class values: the defining relation, two limiting
//! lemmas, chain iteration, and the three stored pairs.
//!
//! A pair carries builders for its alpha and beta sequences. Builders are
//! evaluated under an [`EvalCtx`]: the substitution `a := q^m` (with
//! `m = 0` meaning `a = 1`) and a base scale `q -> q^qscale` (the second
//! limiting lemma evaluates the pair at the squared base). A pair flagged
//! `base_cube` is stored after the substitution `a -> a^3, q -> q^3`, so
//! all of its exponents are integers; its defining relation runs over the
//! base `q^(3*qscale)` with `a^3 = q^(3m)`.
//!
//! Builders return series exact through *at least* `ctx.order`. Stored
//! builders keep the minimum exponent of `alpha_r` at or above
//! `-r*(m + qscale)` and that of `beta_n` at or above
//! `-(m + qscale)*(n + 1)` (the dips come from `(aq)^(-r)`-type terms);
//! the summation cutoffs of the lemma drivers rely on those two bounds,
//! and chain iteration preserves them. Factors multiplied against these
//! Laurent terms are built with matching headroom so no product window
//! ever drops below the request.

use crate::qblocks::{poch_finite, poch_infinite, PochhammerBase, QBlockError, QMonomial};
use crate::series::{Coefficient, LaurentSeries, Mismatch, SeriesError};
use num_traits::One;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BaileyError {
    #[error("singular specialization: a denominator factor vanishes identically")]
    SingularSpecialization,
    #[error(transparent)]
    QBlock(#[from] QBlockError),
}

impl From<SeriesError> for BaileyError {
    fn from(e: SeriesError) -> Self {
        BaileyError::QBlock(QBlockError::Series(e))
    }
}

/// The substitution `a := q^m`; `m = 0` sets `a = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Specialization {
    pub m: i64,
}

impl Specialization {
    pub fn new(m: i64) -> Self {
        assert!(m >= 0, "specialization exponent must be >= 0");
        Specialization { m }
    }
}

/// Evaluation context for term builders.
#[derive(Debug, Clone, Copy)]
pub struct EvalCtx {
    /// `a := q^m`.
    pub m: i64,
    /// Evaluate the pair's formulas with `q -> q^qscale`.
    pub qscale: i64,
    /// The returned series must be exact through at least this order.
    pub order: i64,
}

type TermFn = Arc<dyn Fn(i64, &EvalCtx) -> Result<LaurentSeries, BaileyError> + Send + Sync>;

/// A Bailey pair: named alpha/beta builders plus the stored-base flag.
#[derive(Clone)]
pub struct BaileyPair {
    name: String,
    base_cube: bool,
    alpha: TermFn,
    beta: TermFn,
}

impl BaileyPair {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base_cube(&self) -> bool {
        self.base_cube
    }

    /// Exponent multiplier from the stored-base substitution: 3 for cube
    /// pairs, 1 otherwise.
    fn b(&self) -> i64 {
        if self.base_cube {
            3
        } else {
            1
        }
    }

    pub fn alpha(&self, r: i64, ctx: &EvalCtx) -> Result<LaurentSeries, BaileyError> {
        (self.alpha)(r, ctx)
    }

    pub fn beta(&self, n: i64, ctx: &EvalCtx) -> Result<LaurentSeries, BaileyError> {
        (self.beta)(n, ctx)
    }

    /// Right-hand side of the defining relation:
    /// `sum_{r=0..n} alpha_r / ((Q;Q)_{n-r} (AQ;Q)_{n+r})` with `Q` the
    /// pair's (scaled) base and `A` the specialized `a`-power, evaluated
    /// exactly through `order`.
    pub fn beta_from_alpha(
        &self,
        n: i64,
        spec: Specialization,
        order: i64,
    ) -> Result<LaurentSeries, BaileyError> {
        let b = self.b();
        let t = 1;
        let m = spec.m;
        let oh = order + (m + t) * n + 1;
        let ctx = EvalCtx {
            m,
            qscale: t,
            order: oh,
        };
        let base = PochhammerBase(b * t);
        let mut acc = LaurentSeries::zero(order);
        for r in 0..=n {
            let alpha = self.alpha(r, &ctx)?;
            if alpha.is_zero() {
                continue;
            }
            let d1 = poch_finite(QMonomial::q(b * t), n - r, base, oh)?;
            let d2 = poch_finite(QMonomial::q(b * (m + t)), n + r, base, oh)?;
            let inv = d1
                .mul(&d2)
                .invert()
                .map_err(|_| BaileyError::SingularSpecialization)?;
            acc = acc.add(&alpha.mul(&inv).truncate(order));
        }
        Ok(acc)
    }

    /// Check the defining relation for every `n <= n_max` at the given
    /// specialization and order.
    pub fn verify(
        &self,
        spec: Specialization,
        n_max: i64,
        order: i64,
    ) -> Result<PairReport, BaileyError> {
        let ctx = EvalCtx {
            m: spec.m,
            qscale: 1,
            order,
        };
        let mut results = Vec::new();
        for n in 0..=n_max {
            let from_def = self.beta_from_alpha(n, spec, order)?;
            let stored = self.beta(n, &ctx)?;
            let mismatch = from_def.eq_to_order(&stored, order)?;
            results.push(PairCheck { n, mismatch });
        }
        Ok(PairReport {
            pair: self.name.clone(),
            m: spec.m,
            order,
            results,
        })
    }

    /// The weak Bailey lemma
    /// `sum_n a^n q^{n^2} beta_n = (aq)_inf^{-1} sum_r a^r q^{r^2} alpha_r`
    /// in the pair's stored base: returns `(lhs, rhs)`, both exact through
    /// `order`.
    pub fn weak_bailey_lemma(
        &self,
        spec: Specialization,
        order: i64,
    ) -> Result<(LaurentSeries, LaurentSeries), BaileyError> {
        let b = self.b();
        let m = spec.m;
        let t = 1;

        let mut lhs = LaurentSeries::zero(order);
        let mut n = 0;
        // summand valuation >= b(mn + n^2) - (m+t)(n+1): stop once that
        // clears the window
        while b * (m * n + n * n) - (m + t) * (n + 1) <= order {
            let weight = b * (m * n + n * n);
            let slack = (m + t) * (n + 1);
            let ctx = EvalCtx {
                m,
                qscale: t,
                order: order - weight + slack,
            };
            let beta = self.beta(n, &ctx)?;
            lhs = lhs.add(&beta.shift(weight).truncate(order));
            n += 1;
        }

        let prefactor =
            poch_infinite(QMonomial::q(b * (m + t)), PochhammerBase(b * t), order)?.invert()?;
        let mut alpha_sum = LaurentSeries::zero(order);
        let mut r = 0;
        while b * (m * r + r * r) - (m + t) * r <= order {
            let weight = b * (m * r + r * r);
            let slack = (m + t) * r;
            let ctx = EvalCtx {
                m,
                qscale: t,
                order: order - weight + slack,
            };
            let alpha = self.alpha(r, &ctx)?;
            if !alpha.is_zero() {
                alpha_sum = alpha_sum.add(&alpha.shift(weight).truncate(order));
            }
            r += 1;
        }
        let rhs = prefactor.mul(&alpha_sum).truncate(order);
        Ok((lhs, rhs))
    }

    /// The other limiting case of Bailey's lemma, with the pair evaluated
    /// at the squared base:
    /// `sum_n a^n q^{n^2} (-q;q^2)_n beta_n(a, q^2)` on the left and
    /// `((-aq;q^2)_inf / (aq^2;q^2)_inf) *
    ///  sum_r a^r q^{r^2} (-q;q^2)_r alpha_r(a, q^2) / (-aq;q^2)_r`
    /// on the right (all exponents tripled for cube pairs).
    pub fn squared_base_lemma(
        &self,
        spec: Specialization,
        order: i64,
    ) -> Result<(LaurentSeries, LaurentSeries), BaileyError> {
        let b = self.b();
        let m = spec.m;
        let t = 2;
        let base2 = PochhammerBase(2 * b);

        let mut lhs = LaurentSeries::zero(order);
        let mut n = 0;
        while b * (m * n + n * n) - (m + t) * (n + 1) <= order {
            let weight = b * (m * n + n * n);
            let slack = (m + t) * (n + 1);
            let oh = order - weight + slack;
            let ctx = EvalCtx {
                m,
                qscale: t,
                order: oh,
            };
            let beta = self.beta(n, &ctx)?;
            let oddp = poch_finite(QMonomial::neg_q(b), n, base2, oh)?;
            lhs = lhs.add(&beta.mul(&oddp).shift(weight).truncate(order));
            n += 1;
        }

        let prefactor = poch_infinite(QMonomial::neg_q(b * (m + 1)), base2, order)?
            .mul(&poch_infinite(QMonomial::q(b * (m + 2)), base2, order)?.invert()?);
        let mut alpha_sum = LaurentSeries::zero(order);
        let mut r = 0;
        while b * (m * r + r * r) - (m + t) * r <= order {
            let weight = b * (m * r + r * r);
            let slack = (m + t) * r;
            let oh = order - weight + slack;
            let ctx = EvalCtx {
                m,
                qscale: t,
                order: oh,
            };
            let alpha = self.alpha(r, &ctx)?;
            if !alpha.is_zero() {
                let oddp = poch_finite(QMonomial::neg_q(b), r, base2, oh)?;
                let dens = poch_finite(QMonomial::neg_q(b * (m + 1)), r, base2, oh)?;
                alpha_sum = alpha_sum.add(
                    &alpha
                        .mul(&oddp)
                        .mul(&dens.invert()?)
                        .shift(weight)
                        .truncate(order),
                );
            }
            r += 1;
        }
        let rhs = prefactor.mul(&alpha_sum).truncate(order);
        Ok((lhs, rhs))
    }

    /// One Bailey-chain step:
    /// `alpha'_r = a^r q^{r^2} alpha_r`,
    /// `beta'_n = sum_{r<=n} a^r q^{r^2} beta_r / (Q;Q)_{n-r}`
    /// in the pair's stored base. The result is again a Bailey pair, and
    /// the builders keep the documented valuation bounds.
    pub fn chain_step(&self) -> BaileyPair {
        let b = self.b();
        let alpha_inner = self.alpha.clone();
        let beta_inner = self.beta.clone();
        let alpha: TermFn = Arc::new(move |r, ctx| {
            let weight = b * (ctx.m * r + ctx.qscale * r * r);
            Ok(alpha_inner(r, ctx)?.shift(weight))
        });
        let beta: TermFn = Arc::new(move |n, ctx| {
            let base = PochhammerBase(b * ctx.qscale);
            let oh = ctx.order + (ctx.m + ctx.qscale) * (n + 1);
            let inner_ctx = EvalCtx { order: oh, ..*ctx };
            let mut acc = LaurentSeries::zero(ctx.order);
            for r in 0..=n {
                let weight = b * (ctx.m * r + ctx.qscale * r * r);
                let inner = beta_inner(r, &inner_ctx)?;
                let den = poch_finite(QMonomial::q(b * ctx.qscale), n - r, base, oh)?;
                acc = acc.add(&inner.mul(&den.invert()?).shift(weight).truncate(ctx.order));
            }
            Ok(acc)
        });
        BaileyPair {
            name: format!("{}+chain", self.name),
            base_cube: self.base_cube,
            alpha,
            beta,
        }
    }
}

/// Result of one defining-relation check.
#[derive(Debug, Clone)]
pub struct PairCheck {
    pub n: i64,
    pub mismatch: Option<Mismatch>,
}

/// A per-(specialization, n) verification table.
#[derive(Debug, Clone)]
pub struct PairReport {
    pub pair: String,
    pub m: i64,
    pub order: i64,
    pub results: Vec<PairCheck>,
}

impl PairReport {
    pub fn pass(&self) -> bool {
        self.results.iter().all(|c| c.mismatch.is_none())
    }
}

/// The pair with the simplest possible alpha supported on multiples of 3:
/// `alpha_0 = 1`, `alpha_r = 2` for positive multiples of 3, else 0;
/// `beta_n = sum_r gp(2n, n-3r) / (q)_{2n}`. Valid at `a = 1` (`m = 0`).
pub fn pair_left() -> BaileyPair {
    let alpha: TermFn = Arc::new(|r, ctx| {
        let c = if r == 0 {
            1
        } else if r % 3 == 0 {
            2
        } else {
            0
        };
        Ok(LaurentSeries::monomial(
            Coefficient::from_integer(c.into()),
            0,
            ctx.order,
        ))
    });
    let beta: TermFn = Arc::new(|n, ctx| gp_beta(n, ctx, 0));
    BaileyPair {
        name: "left".into(),
        base_cube: false,
        alpha,
        beta,
    }
}

/// The companion pair supported off multiples of 3: `alpha_r = 1` unless
/// `3 | r`; `beta_n = sum_r gp(2n, n-3r+1) / (q)_{2n}`. Valid at `a = 1`.
pub fn pair_right() -> BaileyPair {
    let alpha: TermFn = Arc::new(|r, ctx| {
        let c = if r % 3 == 0 { 0 } else { 1 };
        Ok(LaurentSeries::monomial(
            Coefficient::from_integer(c.into()),
            0,
            ctx.order,
        ))
    });
    let beta: TermFn = Arc::new(|n, ctx| gp_beta(n, ctx, 1));
    BaileyPair {
        name: "right".into(),
        base_cube: false,
        alpha,
        beta,
    }
}

/// `sum_r gp(2n, n - 3r + offset) / (q^qscale; q^qscale)_{2n}` exact
/// through `ctx.order` (the Gaussian sum is a polynomial in the unscaled
/// base, built exactly and then rescaled).
fn gp_beta(n: i64, ctx: &EvalCtx, offset: i64) -> Result<LaurentSeries, BaileyError> {
    let t = ctx.qscale;
    let pre = ctx.order.max(0) + 1;
    let mut num = LaurentSeries::zero(pre);
    for r in -(n + 1)..=(n + 1) {
        let b = n - 3 * r + offset;
        if (0..=2 * n).contains(&b) {
            num = num.add(&crate::qblocks::gaussian(2 * n, b, pre));
        }
    }
    let num = num.substitute_power(t)?;
    let den = poch_finite(QMonomial::q(t), 2 * n, PochhammerBase(t), ctx.order)?;
    Ok(num.mul(&den.invert()?).truncate(ctx.order))
}

/// The pair behind the cube-shaped identities, stored in cube-substituted
/// form (`a -> a^3`, `q -> q^3`) so every exponent is an integer:
///
/// `alpha_0 = 1` and for `r >= 1`
/// `alpha_r = (a^3 q^3;q^3)_{r-1} (1 - a^3 q^{6r}) (-q^3;q^3)_{r-1}
///            ((aq)^r + (aq)^{-r}) / ((q^3;q^3)_r (-a^3 q^3;q^3)_r)`,
///
/// where the printed prefix `(a^3;q^3)_r / (1 - a^3)` has been cancelled
/// to `(a^3 q^3;q^3)_{r-1}` so the builder stays finite at `a = 1`.
///
/// `beta_n` sums over `j, r >= 0` with `j + r <= n` the terms
/// `a^{-(r+j)} q^{(3r^2-5r)/2 - j} (1 + (aq)^{2(r+j)}) /
///  (2 (q^3;q^3)_j (q^3;q^3)_r (q^3;q^3)_{n-j-r} (-a^3 q^3;q^3)_j P)`
/// with `P = prod_{0 <= i <= n-j, i != r} (1 - a^3 q^{3(2j+r+i)})`; this
/// is the printed summand after cancelling
/// `(a^3;q^3)_{2j+r} (1 - a^3 q^{6j+6r}) / (a^3;q^3)_{n+j+r+1}` into `1/P`,
/// a unit for every admissible index, so `a = 1` is again fine.
pub fn pair_capparelli() -> BaileyPair {
    let alpha: TermFn = Arc::new(|r, ctx| {
        let m = ctx.m;
        let t = ctx.qscale;
        if r == 0 {
            return Ok(LaurentSeries::one(ctx.order));
        }
        let oh = ctx.order + r * (m + t) + 1;
        let base = PochhammerBase(3 * t);
        let p1 = poch_finite(QMonomial::q(3 * m + 3 * t), r - 1, base, oh)?;
        let p2 = poch_finite(QMonomial::neg_q(3 * t), r - 1, base, oh)?;
        let bin = LaurentSeries::one(oh).sub(&LaurentSeries::monomial(
            Coefficient::one(),
            3 * m + 6 * t * r,
            oh,
        ));
        let pm = LaurentSeries::monomial(Coefficient::one(), r * (m + t), oh).add(
            &LaurentSeries::monomial(Coefficient::one(), -r * (m + t), oh),
        );
        let d1 = poch_finite(QMonomial::q(3 * t), r, base, oh)?;
        let d2 = poch_finite(QMonomial::neg_q(3 * m + 3 * t), r, base, oh)?;
        Ok(p1
            .mul(&p2)
            .mul(&bin)
            .mul(&pm)
            .mul(&d1.mul(&d2).invert()?)
            .truncate(ctx.order))
    });
    let beta: TermFn = Arc::new(|n, ctx| {
        let m = ctx.m;
        let t = ctx.qscale;
        let oh = ctx.order + (m + t) * (n + 1) + t;
        let base = PochhammerBase(3 * t);
        let half = Coefficient::new(1.into(), 2.into());
        let mut acc = LaurentSeries::zero(ctx.order);
        for j in 0..=n {
            for r in 0..=(n - j) {
                // r(3r - 5) is always even, so the exponent is integral
                let e = t * ((3 * r * r - 5 * r) / 2 - j);
                let a_part = LaurentSeries::monomial(Coefficient::one(), -m * (r + j), oh).add(
                    &LaurentSeries::monomial(Coefficient::one(), m * (r + j) + 2 * t * (r + j), oh),
                );
                let mut den = poch_finite(QMonomial::q(3 * t), j, base, oh)?
                    .mul(&poch_finite(QMonomial::q(3 * t), r, base, oh)?)
                    .mul(&poch_finite(QMonomial::q(3 * t), n - j - r, base, oh)?)
                    .mul(&poch_finite(QMonomial::neg_q(3 * m + 3 * t), j, base, oh)?);
                for i in 0..=(n - j) {
                    if i == r {
                        continue;
                    }
                    den = den.mul(&LaurentSeries::one(oh).sub(&LaurentSeries::monomial(
                        Coefficient::one(),
                        3 * m + 3 * t * (2 * j + r + i),
                        oh,
                    )));
                }
                let term = a_part.mul(&den.invert()?).scale(&half).shift(e);
                acc = acc.add(&term.truncate(ctx.order));
            }
        }
        Ok(acc)
    });
    BaileyPair {
        name: "capparelli".into(),
        base_cube: true,
        alpha,
        beta,
    }
}

/// Look up a stored pair by its CLI name.
pub fn pair_by_name(name: &str) -> Option<BaileyPair> {
    match name {
        "left" => Some(pair_left()),
        "right" => Some(pair_right()),
        "capparelli" => Some(pair_capparelli()),
        _ => None,
    }
}

/// True when `alpha_0 = beta_0 = 1` at the given specialization.
pub fn unit_normalized(
    pair: &BaileyPair,
    spec: Specialization,
    order: i64,
) -> Result<bool, BaileyError> {
    let ctx = EvalCtx {
        m: spec.m,
        qscale: 1,
        order,
    };
    let a0 = pair.alpha(0, &ctx)?;
    let b0 = pair.beta(0, &ctx)?;
    let one = LaurentSeries::monomial(Coefficient::one(), 0, order);
    Ok(a0.eq_to_order(&one, order)?.is_none() && b0.eq_to_order(&one, order)?.is_none())
}
