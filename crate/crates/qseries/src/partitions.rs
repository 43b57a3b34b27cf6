//! Partition enumeration under gap/congruence constraints, residue-class
//! counting, and the corresponding generating functions.
//!
//! Constrained counts use descending-first-part recursion with pruning:
//! every constraint here is a condition on consecutive parts plus a bound
//! on the smallest part, so a prefix that already violates a pair condition
//! can never extend to a valid partition. The unpruned enumerator
//! ([`enumerate_partitions`]) stays available as the independent oracle.

use crate::series::{Coefficient, LaurentSeries};
use num_traits::One;
use std::collections::BTreeSet;

/// A partition: nonincreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    /// Panics unless `parts` is nonincreasing with every part >= 1.
    pub fn new(parts: Vec<u64>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p >= 1),
            "parts must be nonincreasing and positive: {parts:?}"
        );
        Partition { parts }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn sum(&self) -> u64 {
        self.parts.iter().sum()
    }
}

/// The gap/congruence constraint families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintFamily {
    /// Smallest part > lambda; consecutive differences >= 2.
    RogersRamanujan { lambda: u8 },
    /// Smallest part > 2*lambda; differences >= 2, and > 2 whenever either
    /// part of the pair is even.
    GollnitzGordon { lambda: u8 },
    /// Smallest part > 1; differences >= 2; a pair at difference < 4 must
    /// have both parts divisible by 3, or larger = 1 and smaller = -1 mod 3.
    Capparelli,
}

impl ConstraintFamily {
    fn check_lambda(lambda: u8) {
        assert!(lambda <= 1, "lambda must be 0 or 1");
    }

    /// May `smaller` directly follow `larger`?
    fn pair_ok(&self, larger: u64, smaller: u64) -> bool {
        if larger < smaller + 2 {
            return false;
        }
        match *self {
            ConstraintFamily::RogersRamanujan { .. } => true,
            ConstraintFamily::GollnitzGordon { .. } => {
                larger - smaller > 2 || (larger % 2 == 1 && smaller % 2 == 1)
            }
            ConstraintFamily::Capparelli => {
                larger - smaller >= 4
                    || (larger.is_multiple_of(3) && smaller.is_multiple_of(3))
                    || (larger % 3 == 1 && smaller % 3 == 2)
            }
        }
    }

    /// Lower bound the smallest part must exceed.
    fn min_part_bound(&self) -> u64 {
        match *self {
            ConstraintFamily::RogersRamanujan { lambda } => {
                Self::check_lambda(lambda);
                lambda as u64
            }
            ConstraintFamily::GollnitzGordon { lambda } => {
                Self::check_lambda(lambda);
                2 * lambda as u64
            }
            ConstraintFamily::Capparelli => 1,
        }
    }

    /// Full predicate on a complete partition.
    pub fn satisfies(&self, p: &Partition) -> bool {
        let parts = p.parts();
        if let Some(&last) = parts.last() {
            if last <= self.min_part_bound() {
                return false;
            }
        }
        parts.windows(2).all(|w| self.pair_ok(w[0], w[1]))
    }
}

/// Smallest part > lambda and consecutive differences >= 2.
pub fn satisfies_rr(p: &Partition, lambda: u8) -> bool {
    ConstraintFamily::RogersRamanujan { lambda }.satisfies(p)
}

/// Smallest part > 2*lambda, differences >= 2, difference > 2 when either
/// part of the pair is even.
pub fn satisfies_gg(p: &Partition, lambda: u8) -> bool {
    ConstraintFamily::GollnitzGordon { lambda }.satisfies(p)
}

/// Smallest part > 1, differences >= 2, and pairs at difference < 4 are
/// both divisible by 3 or are (1 mod 3, 2 mod 3).
pub fn satisfies_capparelli(p: &Partition) -> bool {
    ConstraintFamily::Capparelli.satisfies(p)
}

/// Allowed part sizes: everything congruent to one of `residues` mod
/// `modulus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueClassSpec {
    modulus: u64,
    residues: BTreeSet<u64>,
}

impl ResidueClassSpec {
    pub fn new(modulus: u64, residues: impl IntoIterator<Item = u64>) -> Self {
        assert!(modulus >= 1);
        let residues: BTreeSet<u64> = residues.into_iter().collect();
        assert!(!residues.is_empty(), "residue set must be nonempty");
        assert!(
            residues.iter().all(|&r| r < modulus),
            "residues must lie in [0, modulus)"
        );
        ResidueClassSpec { modulus, residues }
    }

    /// Residues `{±r : r in plus_minus} ∪ extra` mod `modulus`.
    pub fn plus_minus(modulus: u64, plus_minus: &[u64], extra: &[u64]) -> Self {
        let mut residues = BTreeSet::new();
        for &r in plus_minus {
            residues.insert(r % modulus);
            residues.insert((modulus - r % modulus) % modulus);
        }
        residues.extend(extra.iter().map(|&r| r % modulus));
        Self::new(modulus, residues)
    }

    pub fn allows(&self, part: u64) -> bool {
        self.residues.contains(&(part % self.modulus))
    }

    /// Parts congruent to ±(lambda+1) mod 5.
    pub fn rogers_ramanujan(lambda: u8) -> Self {
        Self::plus_minus(5, &[lambda as u64 + 1], &[])
    }

    /// Parts congruent to ±(1+2*lambda) or 4 mod 8.
    pub fn gollnitz_gordon(lambda: u8) -> Self {
        Self::plus_minus(8, &[1 + 2 * lambda as u64], &[4])
    }

    /// Parts congruent to ±2 or ±3 mod 12.
    pub fn capparelli() -> Self {
        Self::plus_minus(12, &[2, 3], &[])
    }
}

/// Visit every partition of `n` exactly once (parts descending within each
/// partition); `n = 0` visits the empty partition.
pub fn for_each_partition(n: u64, mut visit: impl FnMut(&[u64])) {
    fn rec(remaining: u64, max_part: u64, prefix: &mut Vec<u64>, visit: &mut impl FnMut(&[u64])) {
        if remaining == 0 {
            visit(prefix);
            return;
        }
        let mut part = remaining.min(max_part);
        while part >= 1 {
            prefix.push(part);
            rec(remaining - part, part, prefix, visit);
            prefix.pop();
            part -= 1;
        }
    }
    let mut prefix = Vec::new();
    rec(n, n.max(1), &mut prefix, &mut visit);
}

/// All partitions of `n` (the brute-force oracle; intended for desk-scale
/// `n`).
pub fn enumerate_partitions(n: u64) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_partition(n, |parts| out.push(Partition::new(parts.to_vec())));
    out
}

/// Number of partitions of `n` satisfying the family's constraints, by
/// pruned descending recursion.
pub fn count_constrained(family: ConstraintFamily, n: u64) -> u64 {
    let min_bound = family.min_part_bound();
    fn rec(family: &ConstraintFamily, remaining: u64, prev: Option<u64>, min_bound: u64) -> u64 {
        if remaining == 0 {
            return 1; // prev (if any) already checked > min_bound
        }
        let mut count = 0;
        let hi = match prev {
            Some(p) => p.saturating_sub(2).min(remaining),
            None => remaining,
        };
        let mut part = hi;
        while part > min_bound {
            let ok = match prev {
                Some(p) => family.pair_ok(p, part),
                None => true,
            };
            if ok {
                count += rec(family, remaining - part, Some(part), min_bound);
            }
            part -= 1;
        }
        count
    }
    rec(&family, n, None, min_bound)
}

/// Number of partitions of `n` with every part in an allowed residue
/// class, by the standard coin-counting recurrence.
pub fn count_residue(spec: &ResidueClassSpec, n: u64) -> u64 {
    let n = n as usize;
    let mut dp = vec![0u64; n + 1];
    dp[0] = 1;
    for part in 1..=n {
        if !spec.allows(part as u64) {
            continue;
        }
        for total in part..=n {
            dp[total] += dp[total - part];
        }
    }
    dp[n]
}

/// Generating function of [`count_residue`]: the product of `1/(1 - q^m)`
/// over allowed part sizes `m <= order`.
pub fn residue_gf(spec: &ResidueClassSpec, order: i64) -> LaurentSeries {
    let mut acc = LaurentSeries::one(order);
    for m in 1..=order.max(0) {
        if spec.allows(m as u64) {
            let factor = LaurentSeries::one(order).sub(&LaurentSeries::monomial(
                Coefficient::one(),
                m,
                order,
            ));
            acc = acc.mul(&factor.invert().expect("1 - q^m is a unit"));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::coeff_int;

    #[test]
    fn enumeration_basics() {
        assert_eq!(enumerate_partitions(0), vec![Partition::new(vec![])]);
        assert_eq!(enumerate_partitions(1), vec![Partition::new(vec![1])]);
        assert_eq!(enumerate_partitions(4).len(), 5);
        // classical p(n) values
        let p: Vec<usize> = (0..=10).map(|n| enumerate_partitions(n).len()).collect();
        assert_eq!(p, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn enumeration_is_duplicate_free() {
        let mut seen = std::collections::HashSet::new();
        for_each_partition(9, |parts| {
            assert!(seen.insert(parts.to_vec()), "duplicate {parts:?}");
            assert_eq!(parts.iter().sum::<u64>(), 9);
        });
    }

    #[test]
    fn rr_predicate_cases() {
        assert!(satisfies_rr(&Partition::new(vec![4, 1]), 0));
        assert!(!satisfies_rr(&Partition::new(vec![3, 2]), 0)); // gap 1
        assert!(!satisfies_rr(&Partition::new(vec![4, 1]), 1)); // smallest part 1
    }

    #[test]
    fn gg_predicate_cases() {
        assert!(satisfies_gg(&Partition::new(vec![5, 3]), 0)); // both odd, gap 2
        assert!(!satisfies_gg(&Partition::new(vec![6, 4]), 0)); // even pair at gap 2
        assert!(satisfies_gg(&Partition::new(vec![3]), 1)); // 3 > 2
        assert!(!satisfies_gg(&Partition::new(vec![2]), 1));
        assert!(satisfies_gg(&Partition::new(vec![7, 4]), 0)); // gap 3 with an even part
    }

    #[test]
    fn capparelli_predicate_cases() {
        assert!(satisfies_capparelli(&Partition::new(vec![4, 2]))); // 4=1, 2=-1 mod 3
        assert!(!satisfies_capparelli(&Partition::new(vec![5, 3]))); // fails both clauses
        assert!(satisfies_capparelli(&Partition::new(vec![9, 6]))); // both multiples of 3
        assert!(!satisfies_capparelli(&Partition::new(vec![2, 1]))); // smallest part 1
        assert!(satisfies_capparelli(&Partition::new(vec![7, 2]))); // gap >= 4: no congruence demand
    }

    #[test]
    fn constrained_count_examples() {
        assert_eq!(count_constrained(ConstraintFamily::Capparelli, 6), 2); // (6), (4,2)
        assert_eq!(
            count_constrained(ConstraintFamily::RogersRamanujan { lambda: 0 }, 4),
            2
        ); // (4), (3,1)
        for family in [
            ConstraintFamily::RogersRamanujan { lambda: 1 },
            ConstraintFamily::GollnitzGordon { lambda: 0 },
            ConstraintFamily::Capparelli,
        ] {
            assert_eq!(count_constrained(family, 0), 1);
        }
    }

    #[test]
    fn pruned_count_matches_unpruned_oracle() {
        let families = [
            ConstraintFamily::RogersRamanujan { lambda: 0 },
            ConstraintFamily::RogersRamanujan { lambda: 1 },
            ConstraintFamily::GollnitzGordon { lambda: 0 },
            ConstraintFamily::GollnitzGordon { lambda: 1 },
            ConstraintFamily::Capparelli,
        ];
        for n in 0..=25 {
            let all = enumerate_partitions(n);
            for family in families {
                let oracle = all.iter().filter(|p| family.satisfies(p)).count() as u64;
                assert_eq!(
                    count_constrained(family, n),
                    oracle,
                    "family {family:?} at n = {n}"
                );
            }
        }
    }

    #[test]
    fn residue_count_examples() {
        assert_eq!(count_residue(&ResidueClassSpec::capparelli(), 6), 2); // 3+3, 2+2+2
        assert_eq!(count_residue(&ResidueClassSpec::rogers_ramanujan(0), 4), 2); // 4, 1+1+1+1
        assert_eq!(count_residue(&ResidueClassSpec::capparelli(), 0), 1);
    }

    #[test]
    fn residue_count_matches_enumeration() {
        let specs = [
            ResidueClassSpec::capparelli(),
            ResidueClassSpec::rogers_ramanujan(0),
            ResidueClassSpec::gollnitz_gordon(1),
        ];
        for n in 0..=20 {
            let all = enumerate_partitions(n);
            for spec in &specs {
                let oracle = all
                    .iter()
                    .filter(|p| p.parts().iter().all(|&part| spec.allows(part)))
                    .count() as u64;
                assert_eq!(count_residue(spec, n), oracle, "spec {spec:?} at n = {n}");
            }
        }
    }

    #[test]
    fn residue_gf_matches_counts() {
        let spec = ResidueClassSpec::capparelli();
        let gf = residue_gf(&spec, 30);
        let expected: Vec<i64> = vec![1, 0, 1, 1, 1, 1, 2];
        for (n, want) in expected.into_iter().enumerate() {
            assert_eq!(gf.coeff(n as i64).unwrap(), coeff_int(want), "n = {n}");
        }
        for n in 0..=30 {
            assert_eq!(
                gf.coeff(n).unwrap(),
                coeff_int(count_residue(&spec, n as u64) as i64)
            );
        }
    }

    #[test]
    fn residue_gf_classical_partition_function() {
        // all residues allowed: the classical partition generating function
        let spec = ResidueClassSpec::new(1, [0]);
        let gf = residue_gf(&spec, 14);
        for n in 0..=14 {
            assert_eq!(
                gf.coeff(n).unwrap(),
                coeff_int(enumerate_partitions(n as u64).len() as i64)
            );
        }
    }

    #[test]
    fn empty_window_residue_gf_is_one() {
        // no allowed part size below the order: product is empty
        let spec = ResidueClassSpec::new(50, [40]);
        let gf = residue_gf(&spec, 30);
        assert_eq!(gf.eq_to_order(&LaurentSeries::one(30), 30).unwrap(), None);
    }

    #[test]
    fn appending_violating_part_breaks_predicate() {
        // gap violations cannot be repaired by later parts
        let base = vec![9, 6];
        for family in [
            ConstraintFamily::RogersRamanujan { lambda: 0 },
            ConstraintFamily::GollnitzGordon { lambda: 0 },
            ConstraintFamily::Capparelli,
        ] {
            let mut bad = base.clone();
            bad.push(5); // gap 1 from 6
            assert!(!family.satisfies(&Partition::new(bad)));
        }
        // Capparelli congruence clause at small gap
        let mut bad = vec![9, 6];
        bad.push(4); // gap 2; 6 = 0, 4 = 1 mod 3: not a legal pair
        assert!(!satisfies_capparelli(&Partition::new(bad)));
    }
}
