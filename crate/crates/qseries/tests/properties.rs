//! Property tests: ring axioms through the guaranteed windows, inversion
//! round trips, substitution/specialization homomorphisms, and the
//! summation-bound soundness checks for the multi-sum builders.

use num_traits::One;
use proptest::prelude::*;
use qseries::bivariate::{APoly, BivariateSeries};
use qseries::catalog::terms;
use qseries::partitions::{count_residue, residue_gf, ResidueClassSpec};
use qseries::series::{coeff_int, Coefficient, LaurentSeries};

const ORDER: i64 = 24;

fn small_series() -> impl Strategy<Value = LaurentSeries> {
    (-4i64..=4, prop::collection::vec(-5i64..=5, 1..=7))
        .prop_map(|(min_exp, ints)| LaurentSeries::from_ints(min_exp, &ints, ORDER))
}

fn unit_series() -> impl Strategy<Value = LaurentSeries> {
    (
        -3i64..=3,
        (1i64..=5),
        prop::collection::vec(-5i64..=5, 0..=6),
    )
        .prop_map(|(min_exp, lead, rest)| {
            let mut ints = vec![lead];
            ints.extend(rest);
            LaurentSeries::from_ints(min_exp, &ints, ORDER)
        })
}

fn small_bivariate() -> impl Strategy<Value = BivariateSeries> {
    prop::collection::vec((0i64..=4, 0i64..=3, -4i64..=4), 1..=6).prop_map(|monos| {
        let mut acc = BivariateSeries::zero(ORDER);
        for (q_exp, a_deg, c) in monos {
            acc = acc.add(&BivariateSeries::monomial(
                APoly::monomial(coeff_int(c), a_deg),
                q_exp,
                ORDER,
            ));
        }
        acc
    })
}

fn assert_equal_through_windows(x: &LaurentSeries, y: &LaurentSeries) {
    let n = x.order().min(y.order());
    if let Some(m) = x.eq_to_order(y, n).unwrap() {
        panic!("series differ at q^{}: {} vs {}", m.exponent, m.lhs, m.rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_commutes_and_associates(a in small_series(), b in small_series(), c in small_series()) {
        assert_equal_through_windows(&a.add(&b), &b.add(&a));
        assert_equal_through_windows(&a.add(&b).add(&c), &a.add(&b.add(&c)));
    }

    #[test]
    fn multiplication_commutes_and_associates(a in small_series(), b in small_series(), c in small_series()) {
        assert_equal_through_windows(&a.mul(&b), &b.mul(&a));
        assert_equal_through_windows(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c)));
    }

    #[test]
    fn multiplication_distributes(a in small_series(), b in small_series(), c in small_series()) {
        let lhs = a.mul(&b.add(&c));
        let rhs = a.mul(&b).add(&a.mul(&c));
        assert_equal_through_windows(&lhs, &rhs);
    }

    #[test]
    fn invert_round_trips(s in unit_series()) {
        let inv = s.invert().unwrap();
        let prod = s.mul(&inv);
        let n = prod.order();
        let one = LaurentSeries::monomial(Coefficient::one(), 0, n);
        prop_assert!(prod.eq_to_order(&one, n).unwrap().is_none());
    }

    #[test]
    fn substitute_power_is_a_ring_homomorphism(a in small_series(), b in small_series(), t in 1i64..=4) {
        let lhs = a.mul(&b).substitute_power(t).unwrap();
        let rhs = a.substitute_power(t).unwrap().mul(&b.substitute_power(t).unwrap());
        assert_equal_through_windows(&lhs, &rhs);

        let lhs = a.add(&b).substitute_power(t).unwrap();
        let rhs = a.substitute_power(t).unwrap().add(&b.substitute_power(t).unwrap());
        assert_equal_through_windows(&lhs, &rhs);
    }

    #[test]
    fn specialize_is_a_ring_homomorphism(x in small_bivariate(), y in small_bivariate(), m in 0i64..=3) {
        let lhs = x.mul(&y).specialize(m);
        let rhs = x.specialize(m).mul(&y.specialize(m));
        assert_equal_through_windows(&lhs, &rhs);

        let lhs = x.add(&y).specialize(m);
        let rhs = x.specialize(m).add(&y.specialize(m));
        assert_equal_through_windows(&lhs, &rhs);
    }

    #[test]
    fn residue_gf_coefficients_count_partitions(modulus in 2u64..=9, mask in 1u64..=255) {
        let residues: Vec<u64> = (0..modulus).filter(|r| mask & (1 << r) != 0).collect();
        prop_assume!(!residues.is_empty());
        let spec = ResidueClassSpec::new(modulus, residues);
        let gf = residue_gf(&spec, 18);
        for n in 0..=18 {
            prop_assert_eq!(
                gf.coeff(n).unwrap(),
                coeff_int(count_residue(&spec, n as u64) as i64)
            );
        }
    }
}

/// The multi-sum builders cut each summation index off at the smallest
/// value whose minimal q-exponent contribution exceeds the order; the
/// first excluded layer must therefore sit entirely above the window.
#[test]
fn summation_bounds_are_sound() {
    for order in [12i64, 25, 40] {
        // cap0: bounds 3i^2+i, 3j^2-j, 3k(k+1)/2
        let first = |mut f: Box<dyn FnMut(i64) -> i64>| {
            let mut v = 0;
            while f(v) <= order {
                v += 1;
            }
            v
        };
        let i0 = first(Box::new(|i| 3 * i * i + i));
        let j0 = first(Box::new(|j| 3 * j * j - j));
        let k0 = first(Box::new(|k| 3 * k * (k + 1) / 2));
        for (i, j, k) in [(i0, 0, 0), (0, j0, 0), (0, 0, k0)] {
            let t = terms::cap0_term(i, j, k, order).unwrap();
            assert!(
                t.valuation().is_none_or(|v| v > order),
                "cap0 excluded term ({i},{j},{k}) reaches the window at order {order}"
            );
        }

        // cap2: bounds 3n^2, (9r^2-5r)/2, 3j^2-j
        let n0 = first(Box::new(|n| 3 * n * n));
        let r0 = first(Box::new(|r| (9 * r * r - 5 * r) / 2));
        let j0 = first(Box::new(|j| 3 * j * j - j));
        for (n, r, j) in [(n0, 0, 0), (0, r0, 0), (0, 0, j0)] {
            let t = terms::cap2_term(n, r, j, order).unwrap();
            assert!(
                t.valuation().is_none_or(|v| v > order),
                "cap2 excluded term ({n},{r},{j}) reaches the window at order {order}"
            );
        }

        // atns_cap: bounds 3n^2, 6r^2-5r, 3j^2-2j
        let n0 = first(Box::new(|n| 3 * n * n));
        let r0 = first(Box::new(|r| 6 * r * r - 5 * r));
        let j0 = first(Box::new(|j| 3 * j * j - 2 * j));
        for (n, r, j) in [(n0, 0, 0), (0, r0, 0), (0, 0, j0)] {
            let t = terms::atns_cap_term(n, r, j, order).unwrap();
            assert!(
                t.valuation().is_none_or(|v| v > order),
                "atns_cap excluded term ({n},{r},{j}) reaches the window at order {order}"
            );
        }

        // multi_cap2 (k = 2): vector bound 3*sum M_i^2 - M_k - 1
        let m0 = first(Box::new(|v| 3 * v * v - v - 1));
        let t = terms::multi_cap2_term(&[m0, m0], m0.min(1), 0, order).unwrap();
        assert!(
            t.valuation().is_none_or(|v| v > order),
            "multi_cap2 excluded vector [{m0},{m0}] reaches the window at order {order}"
        );
    }
}

/// The a_cap / a_atns_cap summands are the a-generalizations of the
/// univariate ones: specializing a := 1 term-by-term must reproduce them,
/// including at the singular corner r = j = 0 where the univariate
/// builders use the limit convention.
#[test]
fn bivariate_terms_specialize_to_limit_convention() {
    let order = 30;
    for (n, r, j) in [(1, 0, 0), (2, 0, 0), (1, 1, 0), (1, 0, 1), (2, 1, 1)] {
        let bv = terms::a_cap_term(n, r, j, order).unwrap().specialize(0);
        let uni = terms::cap2_term(n, r, j, order).unwrap();
        let w = bv.order().min(uni.order());
        assert!(
            bv.eq_to_order(&uni, w).unwrap().is_none(),
            "a_cap term ({n},{r},{j}) does not specialize to the cap2 term"
        );

        let bv = terms::a_atns_cap_term(n, r, j, order)
            .unwrap()
            .specialize(0);
        let uni = terms::atns_cap_term(n, r, j, order).unwrap();
        let w = bv.order().min(uni.order());
        assert!(
            bv.eq_to_order(&uni, w).unwrap().is_none(),
            "a_atns_cap term ({n},{r},{j}) does not specialize to the atns_cap term"
        );
    }
}
