//! Acceptance suite: every criterion runs at its stated order with exact
//! (zero-tolerance) comparison and prints one PASS/FAIL line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines; any failure also fails the corresponding test.

use qseries::bailey::{pair_by_name, Specialization};
use qseries::catalog::{self, terms, Params, Side};
use qseries::partitions::{count_constrained, count_residue, ConstraintFamily, ResidueClassSpec};
use qseries::qblocks::{poch_finite, poch_infinite, PochhammerBase, QMonomial};
use qseries::series::{coeff_int, LaurentSeries};

fn uni(v: catalog::SeriesValue) -> LaurentSeries {
    match v {
        catalog::SeriesValue::Univariate(s) => s,
        catalog::SeriesValue::Bivariate(_) => panic!("expected a univariate side"),
    }
}

fn check(criterion: &str, pass: bool, detail: &str) {
    println!(
        "ACCEPTANCE {}: {} {}",
        if pass { "PASS" } else { "FAIL" },
        criterion,
        detail
    );
    assert!(pass, "{criterion}: {detail}");
}

fn verified(id: &str, order: i64, params: &Params) -> (bool, String) {
    let report = catalog::verify(id, order, params).unwrap();
    let detail = match &report.first_mismatch {
        None => format!("(order {order}, {} ms)", report.elapsed_ms),
        Some(m) => format!(
            "(order {order}: mismatch at q^{}: {} vs {})",
            m.exponent, m.lhs, m.rhs
        ),
    };
    (report.pass, format!("{} {detail}", report.id))
}

#[test]
fn criterion_01_capparelli_counts_to_50() {
    let spec = ResidueClassSpec::capparelli();
    let mut pass = true;
    for n in 0..=50 {
        if count_constrained(ConstraintFamily::Capparelli, n) != count_residue(&spec, n) {
            pass = false;
            break;
        }
    }
    pass &= count_constrained(ConstraintFamily::Capparelli, 2) == 1;
    pass &= count_constrained(ConstraintFamily::Capparelli, 6) == 2;
    check(
        "1 gap-3/mod-3 counts equal mod-12 residue counts for n <= 50",
        pass,
        "(spot values C1(2)=1, C1(6)=2)",
    );
}

#[test]
fn criterion_02_rr_and_gg_counts_to_60() {
    let mut pass = true;
    for lambda in [0u8, 1] {
        let rr_spec = ResidueClassSpec::rogers_ramanujan(lambda);
        let gg_spec = ResidueClassSpec::gollnitz_gordon(lambda);
        for n in 0..=60 {
            pass &= count_constrained(ConstraintFamily::RogersRamanujan { lambda }, n)
                == count_residue(&rr_spec, n);
            pass &= count_constrained(ConstraintFamily::GollnitzGordon { lambda }, n)
                == count_residue(&gg_spec, n);
        }
    }
    check(
        "2 gap-2 mod-5 and mod-8 counts for lambda in {0,1}, n <= 60",
        pass,
        "",
    );
}

#[test]
fn criterion_03_mod5_mod8_series_at_200() {
    for lambda in [0u8, 1] {
        let p = Params { lambda, k: 1 };
        let (pass, detail) = verified("rr", 200, &p);
        check("3 mod-5 series identity", pass, &detail);
        let (pass, detail) = verified("slater8", 200, &p);
        check("3 mod-8 series identity", pass, &detail);
    }
}

#[test]
fn criterion_04_cube_family_series() {
    let p = Params::default();
    for (id, order) in [("cap0", 60), ("cap1", 200), ("alt_cap1", 100), ("cap2", 60)] {
        let (pass, detail) = verified(id, order, &p);
        check("4 cube-family identity", pass, &detail);
    }
    let cap1 = uni(catalog::build("cap1", Side::Lhs, 100, &p).unwrap());
    let alt = uni(catalog::build("alt_cap1", Side::Lhs, 100, &p).unwrap());
    let agree = cap1.eq_to_order(&alt, 100).unwrap();
    check(
        "4 two summation arrangements agree through order 100",
        agree.is_none(),
        &format!("{agree:?}"),
    );
}

#[test]
fn criterion_05_bivariate_a_cap_at_40() {
    let p = Params::default();
    let (pass, detail) = verified("a_cap", 40, &p);
    check(
        "5 a-generalized identity, per-q polynomial equality and a = 1, q, q^2",
        pass,
        &detail,
    );
    // a = 1 reproduces both cap2 sides through order 40
    for side in [Side::Lhs, Side::Rhs] {
        let a = match catalog::build("a_cap", side, 40, &p).unwrap() {
            catalog::SeriesValue::Bivariate(s) => s.specialize(0),
            _ => unreachable!(),
        };
        let c = uni(catalog::build("cap2", side, 40, &p).unwrap());
        let agree = a.eq_to_order(&c, 40).unwrap();
        check(
            "5 a = 1 reproduces the cube-family sides",
            agree.is_none(),
            &format!("{side:?} {agree:?}"),
        );
    }
}

#[test]
fn criterion_06_multi_sum_families() {
    for k in 1..=3 {
        let (pass, detail) = verified("multi_cap1", 50, &Params { lambda: 0, k });
        check("6 k-fold first family", pass, &detail);
    }
    for k in 1..=2 {
        let (pass, detail) = verified("multi_cap2", 40, &Params { lambda: 0, k });
        check("6 k-fold second family", pass, &detail);
    }
    let p1 = Params { lambda: 0, k: 1 };
    let m2 = uni(catalog::build("multi_cap2", Side::Lhs, 40, &p1).unwrap());
    let c2 = uni(catalog::build("cap2", Side::Lhs, 40, &Params::default()).unwrap());
    let agree = m2.eq_to_order(&c2, 40).unwrap();
    check(
        "6 k = 1 second family coincides with the base identity",
        agree.is_none(),
        &format!("{agree:?}"),
    );
}

#[test]
fn criterion_07_squared_base_identities() {
    let p = Params::default();
    let (pass, detail) = verified("a_atns_cap", 36, &p);
    check("7 a-generalized squared-base identity", pass, &detail);

    let (pass, detail) = verified("atns_cap", 60, &p);
    check("7 squared-base identity", pass, &detail);
    // its right side is exactly the distinct-odd-parts product
    let rhs = uni(catalog::build("atns_cap", Side::Rhs, 60, &p).unwrap());
    let odd = poch_infinite(QMonomial::neg_q(1), PochhammerBase(2), 60).unwrap();
    let agree = rhs.eq_to_order(&odd, 60).unwrap();
    check(
        "7 squared-base right side is (-q;q^2)_inf exactly",
        agree.is_none(),
        &format!("{agree:?}"),
    );

    let (pass, detail) = verified("atns_cap1", 100, &p);
    check("7 squared-base companion identity", pass, &detail);
}

#[test]
fn criterion_08_defining_relation() {
    for name in ["left", "right"] {
        let report = pair_by_name(name)
            .unwrap()
            .verify(Specialization::new(0), 25, 60)
            .unwrap();
        check(
            "8 defining relation at a = 1, n <= 25",
            report.pass(),
            &format!("pair {name}"),
        );
    }
    let pair = pair_by_name("capparelli").unwrap();
    for m in [1, 2, 3] {
        let report = pair.verify(Specialization::new(m), 8, 60).unwrap();
        check(
            "8 defining relation for the cube pair, n <= 8, order 60",
            report.pass(),
            &format!("a = q^{m}"),
        );
    }
}

#[test]
fn criterion_09_chain_soundness() {
    let chained = pair_by_name("left").unwrap().chain_step();
    let report = chained.verify(Specialization::new(0), 6, 40).unwrap();
    check(
        "9 chained pair still satisfies the defining relation",
        report.pass(),
        "pair left+chain at a = 1, n <= 6",
    );
    let chained = pair_by_name("capparelli").unwrap().chain_step();
    for m in [1, 2, 3] {
        let report = chained.verify(Specialization::new(m), 6, 40).unwrap();
        check(
            "9 chained cube pair still satisfies the defining relation",
            report.pass(),
            &format!("a = q^{m}, n <= 6"),
        );
    }
}

#[test]
fn criterion_10_theta_identities_at_300() {
    let p = Params::default();
    for id in ["jtp_left", "jtp_right", "theta_diff", "product_equiv"] {
        let (pass, detail) = verified(id, 300, &p);
        check("10 theta identity", pass, &detail);
    }
    // final form: the quintuple-shaped product equals
    // (q)_inf / (q^2,q^3,q^9,q^10;q^12)_inf
    let quint = uni(catalog::build("theta_diff", Side::Rhs, 300, &p).unwrap());
    let euler = poch_infinite(QMonomial::q(1), PochhammerBase(1), 300).unwrap();
    let final_form = euler.mul(&catalog::cap_product(300).unwrap()).truncate(300);
    let agree = quint.eq_to_order(&final_form, 300).unwrap();
    check(
        "10 theta difference final form",
        agree.is_none(),
        &format!("{agree:?}"),
    );
    // and therefore the k = 1 multi-sum right side equals the cap1 right side
    let m1 =
        uni(catalog::build("multi_cap1", Side::Rhs, 100, &Params { lambda: 0, k: 1 }).unwrap());
    let c1 = uni(catalog::build("cap1", Side::Rhs, 100, &p).unwrap());
    let agree = m1.eq_to_order(&c1, 100).unwrap();
    check(
        "10 k = 1 multi-sum product side equals the base product side",
        agree.is_none(),
        &format!("{agree:?}"),
    );
}

#[test]
fn criterion_11_negative_controls() {
    let order = 30;
    let product = catalog::cap_product(order).unwrap();

    // (a) drop the chi3 factor from the cap1 left side
    let mut perturbed = LaurentSeries::zero(order);
    let mut n = 0;
    while n * n <= order {
        for j in 0..=(2 * n) {
            let t = poch_finite(QMonomial::q(1), 2 * n - j, PochhammerBase(1), order)
                .unwrap()
                .invert()
                .unwrap()
                .mul(
                    &poch_finite(QMonomial::q(1), j, PochhammerBase(1), order)
                        .unwrap()
                        .invert()
                        .unwrap(),
                )
                .shift(n * n)
                .truncate(order);
            perturbed = perturbed.add(&t);
        }
        n += 1;
    }
    let mismatch = perturbed.eq_to_order(&product, order).unwrap();
    check(
        "11 negative control: dropped character weight is caught",
        mismatch.as_ref().is_some_and(|m| m.exponent <= 30),
        &format!("{mismatch:?}"),
    );

    // (b) flip the sign of the -j term in the cap2 exponent
    let mut perturbed = LaurentSeries::one(order);
    let mut n = 0;
    while 3 * n * n <= order {
        let mut r = 0;
        while (9 * r * r - 5 * r) / 2 <= order {
            let mut j = 0;
            while 3 * j * j - j <= order {
                if (n, r, j) != (0, 0, 0) && terms::cap2_exponent(n, r, j) <= order {
                    // shifting by 2j turns the -j in the exponent into +j
                    perturbed = perturbed.add(
                        &terms::cap2_term(n, r, j, order)
                            .unwrap()
                            .shift(2 * j)
                            .truncate(order),
                    );
                }
                j += 1;
            }
            r += 1;
        }
        n += 1;
    }
    let mismatch = perturbed.eq_to_order(&product, order).unwrap();
    check(
        "11 negative control: flipped exponent sign is caught",
        mismatch.as_ref().is_some_and(|m| m.exponent <= 30),
        &format!("{mismatch:?}"),
    );

    // (c) off-by-one Pochhammer index in the mod-8 sum side
    let mut perturbed = LaurentSeries::zero(order);
    let mut j = 0;
    while j * j <= order {
        let t = poch_finite(QMonomial::neg_q(1), j + 1, PochhammerBase(2), order)
            .unwrap()
            .mul(
                &poch_finite(QMonomial::q(2), j, PochhammerBase(2), order)
                    .unwrap()
                    .invert()
                    .unwrap(),
            )
            .shift(j * j)
            .truncate(order);
        perturbed = perturbed.add(&t);
        j += 1;
    }
    let rhs = residue_gf_mod8(order);
    let mismatch = perturbed.eq_to_order(&rhs, order).unwrap();
    check(
        "11 negative control: off-by-one Pochhammer index is caught",
        mismatch.as_ref().is_some_and(|m| m.exponent <= 30),
        &format!("{mismatch:?}"),
    );
}

fn residue_gf_mod8(order: i64) -> LaurentSeries {
    qseries::partitions::residue_gf(&ResidueClassSpec::gollnitz_gordon(0), order)
}

/// The series sides are generating functions for the constrained counts;
/// tie criteria 1-4 together by reading counts off the verified series.
#[test]
fn series_coefficients_match_partition_counts() {
    let p = Params::default();
    let cap1 = uni(catalog::build("cap1", Side::Rhs, 50, &p).unwrap());
    for n in 0..=50u64 {
        assert_eq!(
            cap1.coeff(n as i64).unwrap(),
            coeff_int(count_constrained(ConstraintFamily::Capparelli, n) as i64),
            "coefficient of q^{n}"
        );
    }
    for lambda in [0u8, 1] {
        let rr = uni(catalog::build("rr", Side::Lhs, 40, &Params { lambda, k: 1 }).unwrap());
        for n in 0..=40u64 {
            assert_eq!(
                rr.coeff(n as i64).unwrap(),
                coeff_int(
                    count_constrained(ConstraintFamily::RogersRamanujan { lambda }, n) as i64
                )
            );
        }
        let gg = uni(catalog::build("slater8", Side::Rhs, 40, &Params { lambda, k: 1 }).unwrap());
        for n in 0..=40u64 {
            assert_eq!(
                gg.coeff(n as i64).unwrap(),
                coeff_int(count_constrained(ConstraintFamily::GollnitzGordon { lambda }, n) as i64)
            );
        }
    }
}
