//! Named builders for both sides of every identity in the catalog, plus
//! the verification entry point.
//!
//! Every builder takes a truncation order and produces a series that is
//! exact through that order; each multi-sum builder derives its index
//! cutoffs from the positive-definite quadratic part of the q-exponent
//! (the per-index bound is the smallest value whose minimal exponent
//! contribution already exceeds the order, holding the other indices at
//! their minimizing values). The individual summands are exposed in
//! [`terms`] so tests can check that the first excluded index layer cannot
//! touch the window.
//!
//! Univariate identities must assemble to integer coefficients on both
//! sides (intermediate halves and rational Pochhammer conventions have to
//! cancel); this is asserted at verification time. Bivariate identities
//! must assemble with nonnegative a-exponents only; a negative exponent
//! surviving assembly is an assembly bug and is reported as an error.

use crate::bivariate::{APoly, BivariateError, BivariateSeries};
use crate::partitions::{residue_gf, ResidueClassSpec};
use crate::qblocks::{
    bv_poch_finite, bv_poch_infinite, chi3, gaussian, poch_finite, poch_infinite, poch_multi,
    Count, PochhammerBase, QBlockError, QMonomial,
};
use crate::series::{coeff_int, coeff_ratio, Coefficient, LaurentSeries, SeriesError};
use num_traits::One;
use std::collections::HashMap;
use std::time::Instant;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown identity id: {0}")]
    UnknownIdentity(String),
    #[error("bad parameters for {id}: {reason}")]
    BadParams { id: String, reason: String },
    #[error("{id}: {side:?} side assembled with a non-integer coefficient at q^{exponent}")]
    NonIntegral {
        id: String,
        side: Side,
        exponent: i64,
    },
    #[error("{id}: a negative a-exponent survived assembly")]
    NegativeAExponent { id: String },
    #[error(transparent)]
    QBlock(#[from] QBlockError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Bivariate(#[from] BivariateError),
}

/// Which side of an identity to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lhs,
    Rhs,
}

/// Optional identity parameters; ignored by identities that do not take
/// them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Params {
    /// For the mod-5 / mod-8 families.
    pub lambda: u8,
    /// Chain depth for the multi-sum families.
    pub k: i64,
}

impl Default for Params {
    fn default() -> Self {
        Params { lambda: 0, k: 1 }
    }
}

/// A built identity side.
#[derive(Debug, Clone)]
pub enum SeriesValue {
    Univariate(LaurentSeries),
    Bivariate(BivariateSeries),
}

/// Catalog metadata for one identity id.
#[derive(Debug, Clone)]
pub struct Entry {
    pub id: &'static str,
    pub statement: &'static str,
    pub takes_lambda: bool,
    /// `Some(k_max)` for the multi-sum families verified for `1..=k_max`.
    pub k_range: Option<i64>,
    pub bivariate: bool,
    pub default_order: i64,
}

/// First disagreement, with both values rendered as exact strings
/// (decimal rationals for univariate entries, polynomials in `a` for
/// bivariate ones).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportMismatch {
    pub exponent: i64,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one verification run.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub id: String,
    pub order: i64,
    pub pass: bool,
    pub first_mismatch: Option<ReportMismatch>,
    pub elapsed_ms: u128,
    pub lhs_terms: u64,
    pub rhs_terms: u64,
}

const ENTRIES: &[Entry] = &[
    Entry {
        id: "rr",
        statement: "sum_j q^(j^2+L j)/(q)_j = 1/(q^(L+1), q^(4-L); q^5)_inf   [L = lambda]",
        takes_lambda: true,
        k_range: None,
        bivariate: false,
        default_order: 200,
    },
    Entry {
        id: "slater8",
        statement: "sum_j q^(j^2+2L j) (-q;q^2)_j/(q^2;q^2)_j = 1/(q^(1+2L), q^4, q^(7-2L); q^8)_inf",
        takes_lambda: true,
        k_range: None,
        bivariate: false,
        default_order: 200,
    },
    Entry {
        id: "cap0",
        statement: "triple sum over i,j,k with weight (-q^3;q^3)_(i+j) = 1/(q^2,q^3,q^9,q^10; q^12)_inf",
        takes_lambda: false,
        k_range: None,
        bivariate: false,
        default_order: 60,
    },
    Entry {
        id: "cap1",
        statement: "sum_{n,0<=j<=2n} q^(n^2) chi3(n-j+1)/((q)_(2n-j) (q)_j) = 1/(q^2,q^3,q^9,q^10; q^12)_inf",
        takes_lambda: false,
        k_range: None,
        bivariate: false,
        default_order: 200,
    },
    Entry {
        id: "alt_cap1",
        statement: "split-index rearrangement of cap1 with truly infinite double sum",
        takes_lambda: false,
        k_range: None,
        bivariate: false,
        default_order: 100,
    },
    Entry {
        id: "cap2",
        statement: "cube-base triple sum (limit convention at r=j=0) = 1/(q^2,q^3,q^9,q^10; q^12)_inf",
        takes_lambda: false,
        k_range: None,
        bivariate: false,
        default_order: 60,
    },
    Entry {
        id: "a_cap",
        statement: "a-generalized cube-base triple sum = (a^3 q^3;q^3)_inf^-1 sum_r [...], bivariate",
        takes_lambda: false,
        k_range: None,
        bivariate: true,
        default_order: 40,
    },
    Entry {
        id: "multi_cap1",
        statement: "k-fold chain extension of cap1: RHS (q^k,q^5k,q^6k;q^6k)_inf (q^4k,q^8k;q^12k)_inf/(q)_inf",
        takes_lambda: false,
        k_range: Some(3),
        bivariate: false,
        default_order: 50,
    },
    Entry {
        id: "multi_cap2",
        statement: "k-fold chain extension of cap2: RHS (-q^(3k-1),-q^(3k+1),q^6k;q^6k)_inf/(q^3;q^3)_inf",
        takes_lambda: false,
        k_range: Some(2),
        bivariate: false,
        default_order: 40,
    },
    Entry {
        id: "a_atns_cap",
        statement: "a-generalized squared-base triple sum, bivariate",
        takes_lambda: false,
        k_range: None,
        bivariate: true,
        default_order: 36,
    },
    Entry {
        id: "atns_cap",
        statement: "squared-base triple sum (limit convention at r=j=0) = (-q;q^2)_inf",
        takes_lambda: false,
        k_range: None,
        bivariate: false,
        default_order: 60,
    },
    Entry {
        id: "atns_cap1",
        statement: "sum_{n,0<=j<=2n} q^(n^2) (-q;q^2)_n chi3(n-j+1)/((q^2;q^2)_(2n-j) (q^2;q^2)_j) = (q^6;q^12)_inf/(q^3,q^9;q^12)_inf",
        takes_lambda: false,
        k_range: None,
        bivariate: false,
        default_order: 100,
    },
    Entry {
        id: "theta_diff",
        statement: "(-q^9,-q^9,q^18;q^18)_inf - q(-q^3,-q^15,q^18;q^18)_inf = (q,q^5,q^6;q^6)_inf (q^4,q^8;q^12)_inf",
        takes_lambda: false,
        k_range: None,
        bivariate: false,
        default_order: 300,
    },
    Entry {
        id: "jtp_left",
        statement: "sum_{n,r} q^(n^2) gp(2n, n-3r)/(q)_(2n) = (-q^9,-q^9,q^18;q^18)_inf/(q)_inf",
        takes_lambda: false,
        k_range: None,
        bivariate: false,
        default_order: 300,
    },
    Entry {
        id: "jtp_right",
        statement: "sum_{n,r} q^(n^2) gp(2n, n-3r+1)/(q)_(2n) = q(-q^3,-q^15,q^18;q^18)_inf/(q)_inf",
        takes_lambda: false,
        k_range: None,
        bivariate: false,
        default_order: 300,
    },
    Entry {
        id: "product_equiv",
        statement: "(-q^2,-q^4,q^6;q^6)_inf/(q^3;q^3)_inf = 1/(q^2,q^3,q^9,q^10;q^12)_inf",
        takes_lambda: false,
        k_range: None,
        bivariate: false,
        default_order: 300,
    },
];

/// The catalog listing (deterministic order).
pub fn entries() -> &'static [Entry] {
    ENTRIES
}

/// Look up an entry by id.
pub fn entry(id: &str) -> Result<&'static Entry, CatalogError> {
    ENTRIES
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| CatalogError::UnknownIdentity(id.to_string()))
}

/// Every (id, params) instance covered by a full run: parametrized ids
/// expand over their documented ranges.
pub fn all_instances() -> Vec<(String, Params)> {
    let mut out = Vec::new();
    for e in ENTRIES {
        if e.takes_lambda {
            for lambda in [0u8, 1] {
                out.push((e.id.to_string(), Params { lambda, k: 1 }));
            }
        } else if let Some(k_max) = e.k_range {
            for k in 1..=k_max {
                out.push((e.id.to_string(), Params { lambda: 0, k }));
            }
        } else {
            out.push((e.id.to_string(), Params::default()));
        }
    }
    out
}

/// Instance label used in reports: the id plus any effective parameters.
pub fn instance_label(id: &str, params: &Params) -> String {
    match entry(id) {
        Ok(e) if e.takes_lambda => format!("{}(lambda={})", id, params.lambda),
        Ok(e) if e.k_range.is_some() => format!("{}(k={})", id, params.k),
        _ => id.to_string(),
    }
}

fn validate(id: &str, params: &Params) -> Result<&'static Entry, CatalogError> {
    let e = entry(id)?;
    if params.lambda > 1 {
        return Err(CatalogError::BadParams {
            id: id.to_string(),
            reason: format!("lambda must be 0 or 1, got {}", params.lambda),
        });
    }
    if params.k < 1 {
        return Err(CatalogError::BadParams {
            id: id.to_string(),
            reason: format!("k must be >= 1, got {}", params.k),
        });
    }
    Ok(e)
}

/// Build one side of an identity, exact through `order`.
pub fn build(
    id: &str,
    side: Side,
    order: i64,
    params: &Params,
) -> Result<SeriesValue, CatalogError> {
    Ok(build_counted(id, side, order, params)?.0)
}

fn build_counted(
    id: &str,
    side: Side,
    order: i64,
    params: &Params,
) -> Result<(SeriesValue, u64), CatalogError> {
    validate(id, params)?;
    if order < 0 {
        return Err(CatalogError::BadParams {
            id: id.to_string(),
            reason: format!("order must be >= 0, got {order}"),
        });
    }
    let lambda = params.lambda as i64;
    let k = params.k;
    let uni = |b: (LaurentSeries, u64)| (SeriesValue::Univariate(b.0), b.1);
    let bv = |b: (BivariateSeries, u64)| (SeriesValue::Bivariate(b.0), b.1);
    let built = match (id, side) {
        ("rr", Side::Lhs) => uni(rr_lhs(lambda, order)?),
        ("rr", Side::Rhs) => uni((
            residue_gf(&ResidueClassSpec::rogers_ramanujan(params.lambda), order),
            1,
        )),
        ("slater8", Side::Lhs) => uni(slater8_lhs(lambda, order)?),
        ("slater8", Side::Rhs) => uni((
            residue_gf(&ResidueClassSpec::gollnitz_gordon(params.lambda), order),
            1,
        )),
        ("cap0", Side::Lhs) => uni(cap0_lhs(order)?),
        ("cap0", Side::Rhs) => uni((cap_product(order)?, 1)),
        ("cap1", Side::Lhs) => uni(cap1_lhs(order)?),
        ("cap1", Side::Rhs) => uni((cap_product(order)?, 1)),
        ("alt_cap1", Side::Lhs) => uni(alt_cap1_lhs(order)?),
        ("alt_cap1", Side::Rhs) => uni((cap_product(order)?, 1)),
        ("cap2", Side::Lhs) => uni(cap2_lhs(order)?),
        ("cap2", Side::Rhs) => uni((cap_product(order)?, 1)),
        ("a_cap", Side::Lhs) => bv(a_cap_lhs(order)?),
        ("a_cap", Side::Rhs) => bv(a_cap_rhs(order)?),
        ("multi_cap1", Side::Lhs) => uni(multi_cap1_lhs(k, order)?),
        ("multi_cap1", Side::Rhs) => uni((multi_cap1_rhs(k, order)?, 1)),
        ("multi_cap2", Side::Lhs) => uni(multi_cap2_lhs(k, order)?),
        ("multi_cap2", Side::Rhs) => uni((multi_cap2_rhs(k, order)?, 1)),
        ("a_atns_cap", Side::Lhs) => bv(a_atns_cap_lhs(order)?),
        ("a_atns_cap", Side::Rhs) => bv(a_atns_cap_rhs(order)?),
        ("atns_cap", Side::Lhs) => uni(atns_cap_lhs(order)?),
        ("atns_cap", Side::Rhs) => uni((
            poch_infinite(QMonomial::neg_q(1), PochhammerBase(2), order)?,
            1,
        )),
        ("atns_cap1", Side::Lhs) => uni(atns_cap1_lhs(order)?),
        ("atns_cap1", Side::Rhs) => uni((atns_cap1_rhs(order)?, 1)),
        ("theta_diff", Side::Lhs) => uni((theta_diff_lhs(order)?, 2)),
        ("theta_diff", Side::Rhs) => uni((quintuple_cap(1, order)?, 1)),
        ("jtp_left", Side::Lhs) => uni(jtp_lhs(0, order)?),
        ("jtp_left", Side::Rhs) => uni((jtp_rhs(0, order)?, 1)),
        ("jtp_right", Side::Lhs) => uni(jtp_lhs(1, order)?),
        ("jtp_right", Side::Rhs) => uni((jtp_rhs(1, order)?, 1)),
        ("product_equiv", Side::Lhs) => uni((product_equiv_lhs(order)?, 1)),
        ("product_equiv", Side::Rhs) => uni((cap_product(order)?, 1)),
        _ => unreachable!("entry table covers all ids"),
    };
    Ok(built)
}

/// Verify one identity instance: exact coefficientwise comparison through
/// `order`. Univariate sides must assemble integrally; bivariate entries
/// are compared per-q-coefficient as polynomials in `a` *and* at the
/// specializations `a = 1, q, q^2`.
pub fn verify(id: &str, order: i64, params: &Params) -> Result<VerificationReport, CatalogError> {
    validate(id, params)?;
    let start = Instant::now();
    let (lhs, lhs_terms) = build_counted(id, Side::Lhs, order, params)?;
    let (rhs, rhs_terms) = build_counted(id, Side::Rhs, order, params)?;
    let label = instance_label(id, params);
    let first_mismatch = match (&lhs, &rhs) {
        (SeriesValue::Univariate(l), SeriesValue::Univariate(r)) => {
            for (side, s) in [(Side::Lhs, l), (Side::Rhs, r)] {
                if let Some((exp, _)) = s.iter().find(|(_, c)| !c.denom().is_one()) {
                    return Err(CatalogError::NonIntegral {
                        id: label,
                        side,
                        exponent: exp,
                    });
                }
            }
            l.eq_to_order(r, order)?.map(|m| ReportMismatch {
                exponent: m.exponent,
                lhs: m.lhs.to_string(),
                rhs: m.rhs.to_string(),
            })
        }
        (SeriesValue::Bivariate(l), SeriesValue::Bivariate(r)) => {
            for s in [l, r] {
                if s.min_a_degree().unwrap_or(0) < 0 {
                    return Err(CatalogError::NegativeAExponent { id: label });
                }
            }
            let mut found = l.eq_to_order(r, order)?.map(|m| ReportMismatch {
                exponent: m.exponent,
                lhs: m.lhs,
                rhs: m.rhs,
            });
            if found.is_none() {
                for m in 0..=2 {
                    let ls = l.specialize(m);
                    let rs = r.specialize(m);
                    let n = ls.order().min(rs.order());
                    if let Some(mm) = ls.eq_to_order(&rs, n)? {
                        found = Some(ReportMismatch {
                            exponent: mm.exponent,
                            lhs: format!("{} (at a=q^{m})", mm.lhs),
                            rhs: format!("{} (at a=q^{m})", mm.rhs),
                        });
                        break;
                    }
                }
            }
            found
        }
        _ => unreachable!("both sides of an entry share a variable kind"),
    };
    Ok(VerificationReport {
        id: label,
        order,
        pass: first_mismatch.is_none(),
        first_mismatch,
        elapsed_ms: start.elapsed().as_millis(),
        lhs_terms,
        rhs_terms,
    })
}

/// Rough upper bound on the number of summation terms a verification at
/// this order will evaluate (used by the CLI budget guard).
pub fn estimate_terms(id: &str, order: i64, params: &Params) -> u64 {
    let n = order.max(1) as f64;
    let sq = n.sqrt() + 1.0;
    let k = params.k.max(1) as u32;
    let est = match id {
        "rr" | "slater8" => sq,
        "cap0" => sq * sq * sq / 5.0,
        "cap1" | "atns_cap1" => 2.0 * sq * sq,
        "alt_cap1" => sq * sq,
        "cap2" | "a_cap" | "atns_cap" | "a_atns_cap" => sq * sq * sq / 5.0,
        "multi_cap1" => 2.0 * sq.powi(k as i32 + 1),
        "multi_cap2" => sq.powi(k as i32 + 2) / 5.0,
        "theta_diff" | "jtp_left" | "jtp_right" | "product_equiv" => 2.0 * sq,
        _ => n,
    };
    est.ceil() as u64 + 8
}

// ---------------------------------------------------------------------
// shared pieces

/// Cache of inverted finite symbols `1/(q^t; q^t)_s` at a fixed order.
struct InvPoch {
    order: i64,
    cache: HashMap<(i64, i64), LaurentSeries>,
}

impl InvPoch {
    fn new(order: i64) -> Self {
        InvPoch {
            order,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, t: i64, s: i64) -> Result<LaurentSeries, CatalogError> {
        if let Some(hit) = self.cache.get(&(t, s)) {
            return Ok(hit.clone());
        }
        let inv = poch_finite(QMonomial::q(t), s, PochhammerBase(t), self.order)?.invert()?;
        self.cache.insert((t, s), inv.clone());
        Ok(inv)
    }
}

/// `1/(q^2, q^3, q^9, q^10; q^12)_inf`: the product side shared by the
/// whole cube-shaped family.
pub fn cap_product(order: i64) -> Result<LaurentSeries, CatalogError> {
    Ok(poch_multi(
        &[
            QMonomial::q(2),
            QMonomial::q(3),
            QMonomial::q(9),
            QMonomial::q(10),
        ],
        PochhammerBase(12),
        Count::Infinite,
        order,
    )?
    .invert()?)
}

/// The quintuple-shaped product `(q^k, q^5k, q^6k; q^6k)_inf
/// (q^4k, q^8k; q^12k)_inf`.
fn quintuple_cap(k: i64, order: i64) -> Result<LaurentSeries, CatalogError> {
    let a = poch_multi(
        &[QMonomial::q(k), QMonomial::q(5 * k), QMonomial::q(6 * k)],
        PochhammerBase(6 * k),
        Count::Infinite,
        order,
    )?;
    let b = poch_multi(
        &[QMonomial::q(4 * k), QMonomial::q(8 * k)],
        PochhammerBase(12 * k),
        Count::Infinite,
        order,
    )?;
    Ok(a.mul(&b).truncate(order))
}

// ---------------------------------------------------------------------
// univariate builders

fn rr_lhs(lambda: i64, order: i64) -> Result<(LaurentSeries, u64), CatalogError> {
    let mut inv = InvPoch::new(order);
    let mut acc = LaurentSeries::zero(order);
    let mut terms = 0;
    let mut j = 0;
    while j * j + lambda * j <= order {
        acc = acc.add(&inv.get(1, j)?.shift(j * j + lambda * j).truncate(order));
        terms += 1;
        j += 1;
    }
    Ok((acc, terms))
}

fn slater8_lhs(lambda: i64, order: i64) -> Result<(LaurentSeries, u64), CatalogError> {
    let mut inv = InvPoch::new(order);
    let mut acc = LaurentSeries::zero(order);
    let mut terms = 0;
    let mut j = 0;
    while j * j + 2 * lambda * j <= order {
        let num = poch_finite(QMonomial::neg_q(1), j, PochhammerBase(2), order)?;
        let term = num
            .mul(&inv.get(2, j)?)
            .shift(j * j + 2 * lambda * j)
            .truncate(order);
        acc = acc.add(&term);
        terms += 1;
        j += 1;
    }
    Ok((acc, terms))
}

fn cap0_lhs(order: i64) -> Result<(LaurentSeries, u64), CatalogError> {
    // per-index minimal exponents: 3i^2+i, 3j^2-j, 3k(k+1)/2 (cross terms
    // are nonnegative)
    let mut acc = LaurentSeries::zero(order);
    let mut terms = 0;
    let mut i = 0;
    while 3 * i * i + i <= order {
        let mut j = 0;
        while 3 * j * j - j <= order {
            let mut kk = 0;
            while 3 * kk * (kk + 1) / 2 <= order {
                if terms::cap0_exponent(i, j, kk) <= order {
                    acc = acc.add(&terms::cap0_term(i, j, kk, order)?);
                    terms += 1;
                }
                kk += 1;
            }
            j += 1;
        }
        i += 1;
    }
    Ok((acc, terms))
}

fn cap1_lhs(order: i64) -> Result<(LaurentSeries, u64), CatalogError> {
    let mut inv = InvPoch::new(order);
    let mut acc = LaurentSeries::zero(order);
    let mut terms = 0;
    let mut n = 0;
    while n * n <= order {
        for j in 0..=(2 * n) {
            let w = chi3(n - j + 1);
            if w == 0 {
                continue;
            }
            let term = inv
                .get(1, 2 * n - j)?
                .mul(&inv.get(1, j)?)
                .scale(&coeff_int(w))
                .shift(n * n)
                .truncate(order);
            acc = acc.add(&term);
            terms += 1;
        }
        n += 1;
    }
    Ok((acc, terms))
}

fn alt_cap1_lhs(order: i64) -> Result<(LaurentSeries, u64), CatalogError> {
    let mut inv = InvPoch::new(order);
    let mut acc = LaurentSeries::zero(order);
    let mut terms = 0;
    let mut n = 0;
    while n * n <= order {
        let mut j = 0;
        while (n + j) * (n + j) <= order {
            // chi3(j-n+1) + chi3(j-n-1) q^(2j+1) + chi3(j-n) q^(2n)
            let weights = LaurentSeries::monomial(coeff_int(chi3(j - n + 1)), 0, order)
                .add(&LaurentSeries::monomial(
                    coeff_int(chi3(j - n - 1)),
                    2 * j + 1,
                    order,
                ))
                .add(&LaurentSeries::monomial(
                    coeff_int(chi3(j - n)),
                    2 * n,
                    order,
                ));
            if !weights.is_zero() {
                let term = inv
                    .get(1, 2 * j + 1)?
                    .mul(&inv.get(1, 2 * n)?)
                    .mul(&weights)
                    .shift((n + j) * (n + j))
                    .truncate(order);
                acc = acc.add(&term);
            }
            terms += 1;
            j += 1;
        }
        n += 1;
    }
    Ok((acc, terms))
}

fn cap2_lhs(order: i64) -> Result<(LaurentSeries, u64), CatalogError> {
    // per-index minimal exponents: 3n^2, (9r^2-5r)/2, 3j^2-j
    let mut acc = LaurentSeries::one(order);
    let mut terms = 1;
    let mut n = 0;
    while 3 * n * n <= order {
        let mut r = 0;
        while (9 * r * r - 5 * r) / 2 <= order {
            let mut j = 0;
            while 3 * j * j - j <= order {
                if (n, r, j) != (0, 0, 0) && terms::cap2_exponent(n, r, j) <= order {
                    acc = acc.add(&terms::cap2_term(n, r, j, order)?);
                    terms += 1;
                }
                j += 1;
            }
            r += 1;
        }
        n += 1;
    }
    Ok((acc, terms))
}

fn multi_cap1_lhs(k: i64, order: i64) -> Result<(LaurentSeries, u64), CatalogError> {
    let mut inv = InvPoch::new(order);
    let mut acc = LaurentSeries::zero(order);
    let mut terms = 0;
    // enumerate nonincreasing (N_1 >= ... >= N_k >= 0) with sum N_i^2 <= order
    let mut stack: Vec<Vec<i64>> = vec![vec![]];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == k as usize {
            let weight: i64 = prefix.iter().map(|&v| v * v).sum();
            let nk = *prefix.last().unwrap();
            // chain denominators (q)_{N_i - N_{i+1}} for i < k
            let mut chain = LaurentSeries::one(order);
            for w in prefix.windows(2) {
                chain = chain.mul(&inv.get(1, w[0] - w[1])?);
            }
            for j in 0..=(2 * nk) {
                let w = chi3(nk - j + 1);
                if w == 0 {
                    continue;
                }
                let term = chain
                    .mul(&inv.get(1, 2 * nk - j)?)
                    .mul(&inv.get(1, j)?)
                    .scale(&coeff_int(w))
                    .shift(weight)
                    .truncate(order);
                acc = acc.add(&term);
                terms += 1;
            }
            continue;
        }
        let used: i64 = prefix.iter().map(|&v| v * v).sum();
        let cap = prefix.last().copied().unwrap_or(i64::MAX);
        let mut v = 0;
        while used + v * v <= order && v <= cap {
            let mut next = prefix.clone();
            next.push(v);
            stack.push(next);
            v += 1;
        }
    }
    Ok((acc, terms))
}

fn multi_cap1_rhs(k: i64, order: i64) -> Result<LaurentSeries, CatalogError> {
    let euler_inv = poch_infinite(QMonomial::q(1), PochhammerBase(1), order)?.invert()?;
    Ok(quintuple_cap(k, order)?.mul(&euler_inv).truncate(order))
}

fn multi_cap2_lhs(k: i64, order: i64) -> Result<(LaurentSeries, u64), CatalogError> {
    let mut acc = LaurentSeries::one(order);
    let mut terms = 1;
    // enumerate nonincreasing (M_1 >= ... >= M_k >= 0) with
    // 3 sum M_i^2 - M_k - 1 <= order, then r + j <= M_k
    let mut stack: Vec<Vec<i64>> = vec![vec![]];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == k as usize {
            let mk = *prefix.last().unwrap();
            for r in 0..=mk {
                for j in 0..=(mk - r) {
                    if prefix.iter().all(|&v| v == 0) && r == 0 && j == 0 {
                        continue; // the leading 1
                    }
                    if terms::multi_cap2_exponent(&prefix, r, j) <= order {
                        acc = acc.add(&terms::multi_cap2_term(&prefix, r, j, order)?);
                        terms += 1;
                    }
                }
            }
            continue;
        }
        let used: i64 = prefix.iter().map(|&v| 3 * v * v).sum();
        let cap = prefix.last().copied().unwrap_or(i64::MAX);
        let mut v = 0;
        // bound: even with the -M_k - 1 slack the weight must reach the window
        while used + 3 * v * v - v - 1 <= order && v <= cap {
            let mut next = prefix.clone();
            next.push(v);
            stack.push(next);
            v += 1;
        }
    }
    Ok((acc, terms))
}

fn multi_cap2_rhs(k: i64, order: i64) -> Result<LaurentSeries, CatalogError> {
    let theta = poch_multi(
        &[
            QMonomial::neg_q(3 * k - 1),
            QMonomial::neg_q(3 * k + 1),
            QMonomial::q(6 * k),
        ],
        PochhammerBase(6 * k),
        Count::Infinite,
        order,
    )?;
    let cube_euler_inv = poch_infinite(QMonomial::q(3), PochhammerBase(3), order)?.invert()?;
    Ok(theta.mul(&cube_euler_inv).truncate(order))
}

fn atns_cap_lhs(order: i64) -> Result<(LaurentSeries, u64), CatalogError> {
    // per-index minimal exponents: 3n^2, 6r^2-5r, 3j^2-2j
    let mut acc = LaurentSeries::one(order);
    let mut terms = 1;
    let mut n = 0;
    while 3 * n * n <= order {
        let mut r = 0;
        while 6 * r * r - 5 * r <= order {
            let mut j = 0;
            while 3 * j * j - 2 * j <= order {
                if (n, r, j) != (0, 0, 0) && terms::atns_cap_exponent(n, r, j) <= order {
                    acc = acc.add(&terms::atns_cap_term(n, r, j, order)?);
                    terms += 1;
                }
                j += 1;
            }
            r += 1;
        }
        n += 1;
    }
    Ok((acc, terms))
}

fn atns_cap1_lhs(order: i64) -> Result<(LaurentSeries, u64), CatalogError> {
    let mut inv = InvPoch::new(order);
    let mut acc = LaurentSeries::zero(order);
    let mut terms = 0;
    let mut n = 0;
    while n * n <= order {
        let odd = poch_finite(QMonomial::neg_q(1), n, PochhammerBase(2), order)?;
        for j in 0..=(2 * n) {
            let w = chi3(n - j + 1);
            if w == 0 {
                continue;
            }
            let term = odd
                .mul(&inv.get(2, 2 * n - j)?)
                .mul(&inv.get(2, j)?)
                .scale(&coeff_int(w))
                .shift(n * n)
                .truncate(order);
            acc = acc.add(&term);
            terms += 1;
        }
        n += 1;
    }
    Ok((acc, terms))
}

fn atns_cap1_rhs(order: i64) -> Result<LaurentSeries, CatalogError> {
    let num = poch_infinite(QMonomial::q(6), PochhammerBase(12), order)?;
    let den = poch_multi(
        &[QMonomial::q(3), QMonomial::q(9)],
        PochhammerBase(12),
        Count::Infinite,
        order,
    )?;
    Ok(num.mul(&den.invert()?).truncate(order))
}

fn theta_diff_lhs(order: i64) -> Result<LaurentSeries, CatalogError> {
    let left = poch_multi(
        &[QMonomial::neg_q(9), QMonomial::neg_q(9), QMonomial::q(18)],
        PochhammerBase(18),
        Count::Infinite,
        order,
    )?;
    let right = poch_multi(
        &[QMonomial::neg_q(3), QMonomial::neg_q(15), QMonomial::q(18)],
        PochhammerBase(18),
        Count::Infinite,
        order,
    )?;
    Ok(left.sub(&right.shift(1).truncate(order)))
}

/// Shared left-hand side of the two triple-product corollaries:
/// `sum_n q^(n^2)/(q)_(2n) sum_r gp(2n, n - 3r + offset)`.
fn jtp_lhs(offset: i64, order: i64) -> Result<(LaurentSeries, u64), CatalogError> {
    let mut inv = InvPoch::new(order);
    let mut acc = LaurentSeries::zero(order);
    let mut terms = 0;
    let mut n = 0;
    while n * n <= order {
        let mut row = LaurentSeries::zero(order);
        for r in -(n + 1)..=(n + 1) {
            let b = n - 3 * r + offset;
            if (0..=2 * n).contains(&b) {
                row = row.add(&gaussian(2 * n, b, order).truncate(order));
                terms += 1;
            }
        }
        acc = acc.add(&row.mul(&inv.get(1, 2 * n)?).shift(n * n).truncate(order));
        n += 1;
    }
    Ok((acc, terms))
}

fn jtp_rhs(offset: i64, order: i64) -> Result<LaurentSeries, CatalogError> {
    let euler_inv = poch_infinite(QMonomial::q(1), PochhammerBase(1), order)?.invert()?;
    let args: [QMonomial; 3] = if offset == 0 {
        [QMonomial::neg_q(9), QMonomial::neg_q(9), QMonomial::q(18)]
    } else {
        [QMonomial::neg_q(3), QMonomial::neg_q(15), QMonomial::q(18)]
    };
    let theta = poch_multi(&args, PochhammerBase(18), Count::Infinite, order)?;
    let shifted = if offset == 0 {
        theta
    } else {
        theta.shift(1).truncate(order)
    };
    Ok(shifted.mul(&euler_inv).truncate(order))
}

fn product_equiv_lhs(order: i64) -> Result<LaurentSeries, CatalogError> {
    let theta = poch_multi(
        &[QMonomial::neg_q(2), QMonomial::neg_q(4), QMonomial::q(6)],
        PochhammerBase(6),
        Count::Infinite,
        order,
    )?;
    let cube_euler_inv = poch_infinite(QMonomial::q(3), PochhammerBase(3), order)?.invert()?;
    Ok(theta.mul(&cube_euler_inv).truncate(order))
}

// ---------------------------------------------------------------------
// bivariate builders

fn half() -> Coefficient {
    coeff_ratio(1, 2)
}

fn bv_lift(s: &LaurentSeries) -> BivariateSeries {
    BivariateSeries::from_univariate(s)
}

fn a_cap_lhs(order: i64) -> Result<(BivariateSeries, u64), CatalogError> {
    // same index cutoffs as the a = 1 form (a-exponents never lower the
    // q-exponent)
    let mut acc = BivariateSeries::zero(order);
    let mut terms = 0;
    let mut n = 0;
    while 3 * n * n <= order {
        let mut r = 0;
        while (9 * r * r - 5 * r) / 2 <= order {
            let mut j = 0;
            while 3 * j * j - j <= order {
                let e = terms::cap2_exponent(n, r, j);
                if e <= order {
                    acc = acc.add(&terms::a_cap_term(n, r, j, order)?);
                    terms += 1;
                }
                j += 1;
            }
            r += 1;
        }
        n += 1;
    }
    Ok((acc, terms))
}

fn a_cap_rhs(order: i64) -> Result<(BivariateSeries, u64), CatalogError> {
    let prefactor = bv_poch_infinite(QMonomial::a_q(3, 3), PochhammerBase(3), order)?.invert()?;
    let mut sum = BivariateSeries::one(order);
    let mut terms = 1;
    let mut r = 1;
    while 3 * r * r - r <= order {
        // a^{3r} ((aq)^r + (aq)^{-r}) = a^{4r} q^r + a^{2r} q^{-r}; with the
        // theta weight q^{3r^2} both exponents are nonnegative.
        let pair = BivariateSeries::monomial(
            APoly::monomial(Coefficient::one(), 4 * r),
            3 * r * r + r,
            order,
        )
        .add(&BivariateSeries::monomial(
            APoly::monomial(Coefficient::one(), 2 * r),
            3 * r * r - r,
            order,
        ));
        let p1 = bv_poch_finite(QMonomial::a_q(3, 3), r - 1, PochhammerBase(3), order)?;
        let p2 = bv_lift(&poch_finite(
            QMonomial::neg_q(3),
            r - 1,
            PochhammerBase(3),
            order,
        )?);
        let bin = BivariateSeries::one(order).sub(&BivariateSeries::monomial(
            APoly::monomial(Coefficient::one(), 3),
            6 * r,
            order,
        ));
        let d1 = bv_lift(&poch_finite(QMonomial::q(3), r, PochhammerBase(3), order)?);
        let d2 = bv_poch_finite(QMonomial::neg_a_q(3, 3), r, PochhammerBase(3), order)?;
        let term = pair.mul(&p1).mul(&p2).mul(&bin).mul(&d1.mul(&d2).invert()?);
        sum = sum.add(&term);
        terms += 1;
        r += 1;
    }
    Ok((prefactor.mul(&sum), terms))
}

fn a_atns_cap_lhs(order: i64) -> Result<(BivariateSeries, u64), CatalogError> {
    // same index cutoffs as the a = 1 form
    let mut acc = BivariateSeries::zero(order);
    let mut terms = 0;
    let mut n = 0;
    while 3 * n * n <= order {
        let mut r = 0;
        while 6 * r * r - 5 * r <= order {
            let mut j = 0;
            while 3 * j * j - 2 * j <= order {
                let e = terms::atns_cap_exponent(n, r, j);
                if e <= order {
                    acc = acc.add(&terms::a_atns_cap_term(n, r, j, order)?);
                    terms += 1;
                }
                j += 1;
            }
            r += 1;
        }
        n += 1;
    }
    Ok((acc, terms))
}

fn a_atns_cap_rhs(order: i64) -> Result<(BivariateSeries, u64), CatalogError> {
    let prefactor = bv_poch_infinite(QMonomial::neg_a_q(3, 3), PochhammerBase(6), order)?
        .mul(&bv_poch_infinite(QMonomial::a_q(3, 6), PochhammerBase(6), order)?.invert()?);
    let mut sum = BivariateSeries::one(order);
    let mut terms = 1;
    let mut r = 1;
    while 3 * r * r - 2 * r <= order {
        let pair = BivariateSeries::monomial(
            APoly::monomial(Coefficient::one(), 4 * r),
            3 * r * r + 2 * r,
            order,
        )
        .add(&BivariateSeries::monomial(
            APoly::monomial(Coefficient::one(), 2 * r),
            3 * r * r - 2 * r,
            order,
        ));
        let odd3 = bv_lift(&poch_finite(
            QMonomial::neg_q(3),
            r,
            PochhammerBase(6),
            order,
        )?);
        let p1 = bv_poch_finite(QMonomial::a_q(3, 6), r - 1, PochhammerBase(6), order)?;
        let p2 = bv_lift(&poch_finite(
            QMonomial::neg_q(6),
            r - 1,
            PochhammerBase(6),
            order,
        )?);
        let bin = BivariateSeries::one(order).sub(&BivariateSeries::monomial(
            APoly::monomial(Coefficient::one(), 3),
            12 * r,
            order,
        ));
        let d1 = bv_lift(&poch_finite(QMonomial::q(6), r, PochhammerBase(6), order)?);
        let d2 = bv_poch_finite(QMonomial::neg_a_q(3, 6), r, PochhammerBase(6), order)?;
        let d3 = bv_poch_finite(QMonomial::neg_a_q(3, 3), r, PochhammerBase(6), order)?;
        let term = pair
            .mul(&odd3)
            .mul(&p1)
            .mul(&p2)
            .mul(&bin)
            .mul(&d1.mul(&d2).mul(&d3).invert()?);
        sum = sum.add(&term);
        terms += 1;
        r += 1;
    }
    Ok((prefactor.mul(&sum), terms))
}

/// Individual summands of the multi-sum builders, exposed so tests can
/// check the summation bounds: the first index value excluded by a
/// builder's cutoff must produce a term whose valuation exceeds the order.
pub mod terms {
    use super::*;

    /// q-exponent of the cap0 summand.
    pub fn cap0_exponent(i: i64, j: i64, k: i64) -> i64 {
        3 * i * i + i + 3 * j * j - j + (3 * k * k + 3 * k) / 2 + 3 * i * k + 3 * j * k
    }

    /// One cap0 summand, exact through `order`.
    pub fn cap0_term(i: i64, j: i64, k: i64, order: i64) -> Result<LaurentSeries, CatalogError> {
        let e = cap0_exponent(i, j, k);
        let num = poch_finite(QMonomial::neg_q(3), i + j, PochhammerBase(3), order)?;
        let den = poch_finite(QMonomial::q(6), i, PochhammerBase(6), order)?
            .mul(&poch_finite(QMonomial::q(6), j, PochhammerBase(6), order)?)
            .mul(&poch_finite(QMonomial::q(3), k, PochhammerBase(3), order)?);
        Ok(num.mul(&den.invert()?).shift(e).truncate(order))
    }

    /// q-exponent of the cap2 / a_cap summand.
    pub fn cap2_exponent(n: i64, r: i64, j: i64) -> i64 {
        3 * n * n + (9 * r * r - 5 * r) / 2 + 3 * j * j + 6 * n * j + 6 * n * r + 6 * r * j - j
    }

    /// One cap2 summand (limit convention at `r = j = 0`), exact through
    /// `order`.
    pub fn cap2_term(n: i64, r: i64, j: i64, order: i64) -> Result<LaurentSeries, CatalogError> {
        let e = cap2_exponent(n, r, j);
        if r == 0 && j == 0 {
            // q^{3n^2} / ((q^3;q^3)_n)^2, the a -> 1 limit of the
            // a-generalized summand
            let inv = poch_finite(QMonomial::q(3), n, PochhammerBase(3), order)?.invert()?;
            return Ok(inv.mul(&inv).shift(e).truncate(order));
        }
        let num = poch_finite(QMonomial::q(3), 2 * j + r - 1, PochhammerBase(3), order)?
            .mul(&LaurentSeries::one(order).add(&LaurentSeries::monomial(
                Coefficient::one(),
                2 * r + 2 * j,
                order,
            )))
            .mul(&LaurentSeries::one(order).sub(&LaurentSeries::monomial(
                Coefficient::one(),
                6 * r + 6 * j,
                order,
            )));
        let den = poch_finite(QMonomial::q(3), n, PochhammerBase(3), order)?
            .mul(&poch_finite(QMonomial::q(3), r, PochhammerBase(3), order)?)
            .mul(&poch_finite(QMonomial::q(3), j, PochhammerBase(3), order)?)
            .mul(&poch_finite(
                QMonomial::neg_q(0),
                j + 1,
                PochhammerBase(3),
                order,
            )?)
            .mul(&poch_finite(
                QMonomial::q(3),
                n + 2 * r + 2 * j,
                PochhammerBase(3),
                order,
            )?);
        Ok(num.mul(&den.invert()?).shift(e).truncate(order))
    }

    /// The bivariate a_cap summand in cancellation-safe form:
    /// `a^{3n+2r+2j} q^E (1 + a^{2r+2j} q^{2r+2j}) /
    ///  (2 (q^3)_n (q^3)_r (q^3)_j (-a^3 q^3;q^3)_j P)` with
    /// `P = prod_{0<=i<=n+r, i != r} (1 - a^3 q^{3(2j+r)+3i})`, obtained by
    /// splitting `(a^3;q^3)_{n+2j+2r+1}` at index `2j+r` and cancelling the
    /// `(1 - a^3 q^{6j+6r})` numerator factor (the `i = r` slot).
    pub fn a_cap_term(n: i64, r: i64, j: i64, order: i64) -> Result<BivariateSeries, CatalogError> {
        let e = cap2_exponent(n, r, j);
        let mono =
            BivariateSeries::monomial(APoly::monomial(half(), 3 * n + 2 * r + 2 * j), e, order);
        let pair = BivariateSeries::one(order).add(&BivariateSeries::monomial(
            APoly::monomial(Coefficient::one(), 2 * r + 2 * j),
            2 * r + 2 * j,
            order,
        ));
        let mut den = bv_lift(
            &poch_finite(QMonomial::q(3), n, PochhammerBase(3), order)?
                .mul(&poch_finite(QMonomial::q(3), r, PochhammerBase(3), order)?)
                .mul(&poch_finite(QMonomial::q(3), j, PochhammerBase(3), order)?),
        );
        den = den.mul(&bv_poch_finite(
            QMonomial::neg_a_q(3, 3),
            j,
            PochhammerBase(3),
            order,
        )?);
        for i in 0..=(n + r) {
            if i == r {
                continue;
            }
            den = den.mul(&BivariateSeries::one(order).sub(&BivariateSeries::monomial(
                APoly::monomial(Coefficient::one(), 3),
                3 * (2 * j + r) + 3 * i,
                order,
            )));
        }
        Ok(mono.mul(&pair).mul(&den.invert()?))
    }

    /// q-exponent of the atns_cap / a_atns_cap summand.
    pub fn atns_cap_exponent(n: i64, r: i64, j: i64) -> i64 {
        3 * n * n + 6 * r * r + 3 * j * j + 6 * n * j + 6 * n * r + 6 * r * j - 5 * r - 2 * j
    }

    /// One atns_cap summand (limit convention at `r = j = 0`), exact
    /// through `order`. All finite symbols here live over the base `q^6`;
    /// only the `(-q^3; q^6)` weight mixes in the odd cube powers.
    pub fn atns_cap_term(
        n: i64,
        r: i64,
        j: i64,
        order: i64,
    ) -> Result<LaurentSeries, CatalogError> {
        let e = atns_cap_exponent(n, r, j);
        let odd3 = poch_finite(QMonomial::neg_q(3), n + j + r, PochhammerBase(6), order)?;
        if r == 0 && j == 0 {
            // q^{3n^2} (-q^3;q^6)_n / ((q^6;q^6)_n)^2
            let inv = poch_finite(QMonomial::q(6), n, PochhammerBase(6), order)?.invert()?;
            return Ok(odd3.mul(&inv).mul(&inv).shift(e).truncate(order));
        }
        let num = odd3
            .mul(&poch_finite(
                QMonomial::q(6),
                2 * j + r - 1,
                PochhammerBase(6),
                order,
            )?)
            .mul(&LaurentSeries::one(order).add(&LaurentSeries::monomial(
                Coefficient::one(),
                4 * r + 4 * j,
                order,
            )))
            .mul(&LaurentSeries::one(order).sub(&LaurentSeries::monomial(
                Coefficient::one(),
                12 * r + 12 * j,
                order,
            )));
        let den = poch_finite(QMonomial::q(6), n, PochhammerBase(6), order)?
            .mul(&poch_finite(QMonomial::q(6), r, PochhammerBase(6), order)?)
            .mul(&poch_finite(QMonomial::q(6), j, PochhammerBase(6), order)?)
            .mul(&poch_finite(
                QMonomial::neg_q(0),
                j + 1,
                PochhammerBase(6),
                order,
            )?)
            .mul(&poch_finite(
                QMonomial::q(6),
                n + 2 * j + 2 * r,
                PochhammerBase(6),
                order,
            )?);
        Ok(num.mul(&den.invert()?).shift(e).truncate(order))
    }

    /// The bivariate a_atns_cap summand in cancellation-safe form (same
    /// cancellation as [`a_cap_term`], with every base doubled and the
    /// `(-q^3; q^6)` weight retained).
    pub fn a_atns_cap_term(
        n: i64,
        r: i64,
        j: i64,
        order: i64,
    ) -> Result<BivariateSeries, CatalogError> {
        let e = atns_cap_exponent(n, r, j);
        let mono =
            BivariateSeries::monomial(APoly::monomial(half(), 3 * n + 2 * r + 2 * j), e, order);
        let odd3 = bv_lift(&poch_finite(
            QMonomial::neg_q(3),
            n + j + r,
            PochhammerBase(6),
            order,
        )?);
        let pair = BivariateSeries::one(order).add(&BivariateSeries::monomial(
            APoly::monomial(Coefficient::one(), 2 * r + 2 * j),
            4 * r + 4 * j,
            order,
        ));
        let mut den = bv_lift(
            &poch_finite(QMonomial::q(6), n, PochhammerBase(6), order)?
                .mul(&poch_finite(QMonomial::q(6), r, PochhammerBase(6), order)?)
                .mul(&poch_finite(QMonomial::q(6), j, PochhammerBase(6), order)?),
        );
        den = den.mul(&bv_poch_finite(
            QMonomial::neg_a_q(3, 6),
            j,
            PochhammerBase(6),
            order,
        )?);
        for i in 0..=(n + r) {
            if i == r {
                continue;
            }
            den = den.mul(&BivariateSeries::one(order).sub(&BivariateSeries::monomial(
                APoly::monomial(Coefficient::one(), 3),
                6 * (2 * j + r) + 6 * i,
                order,
            )));
        }
        Ok(mono.mul(&odd3).mul(&pair).mul(&den.invert()?))
    }

    /// q-exponent of the multi_cap2 summand for the nonincreasing vector
    /// `m` (with `m[k-1] >= r + j`).
    pub fn multi_cap2_exponent(m: &[i64], r: i64, j: i64) -> i64 {
        3 * m.iter().map(|&v| v * v).sum::<i64>() + (3 * r * r - 5 * r) / 2 - j
    }

    /// One multi_cap2 summand (limit convention at `r = j = 0`), exact
    /// through `order`.
    pub fn multi_cap2_term(
        m: &[i64],
        r: i64,
        j: i64,
        order: i64,
    ) -> Result<LaurentSeries, CatalogError> {
        let k = m.len();
        let mk = m[k - 1];
        assert!(r + j <= mk, "inner indices must fit inside M_k");
        let e = multi_cap2_exponent(m, r, j);
        let nk = mk - r - j;
        // chain difference denominators (q^3)_{M_i - M_{i+1}}
        let mut den = LaurentSeries::one(order);
        for w in m.windows(2) {
            den = den.mul(&poch_finite(
                QMonomial::q(3),
                w[0] - w[1],
                PochhammerBase(3),
                order,
            )?);
        }
        if r == 0 && j == 0 {
            // q^{3 sum M_i^2} / ((q^3)_{n_1} ... (q^3)_{n_k} (q^3)_{n_k})
            let nk_p = poch_finite(QMonomial::q(3), nk, PochhammerBase(3), order)?;
            den = den.mul(&nk_p).mul(&nk_p);
            return Ok(den.invert()?.shift(e).truncate(order));
        }
        let num = poch_finite(QMonomial::q(3), 2 * j + r - 1, PochhammerBase(3), order)?
            .mul(&LaurentSeries::one(order).add(&LaurentSeries::monomial(
                Coefficient::one(),
                2 * r + 2 * j,
                order,
            )))
            .mul(&LaurentSeries::one(order).sub(&LaurentSeries::monomial(
                Coefficient::one(),
                6 * r + 6 * j,
                order,
            )));
        den = den
            .mul(&poch_finite(QMonomial::q(3), nk, PochhammerBase(3), order)?)
            .mul(&poch_finite(QMonomial::q(3), r, PochhammerBase(3), order)?)
            .mul(&poch_finite(QMonomial::q(3), j, PochhammerBase(3), order)?)
            .mul(&poch_finite(
                QMonomial::neg_q(0),
                j + 1,
                PochhammerBase(3),
                order,
            )?)
            .mul(&poch_finite(
                QMonomial::q(3),
                nk + 2 * r + 2 * j,
                PochhammerBase(3),
                order,
            )?);
        Ok(num.mul(&den.invert()?).shift(e).truncate(order))
    }
}
