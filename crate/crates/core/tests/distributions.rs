use std::collections::BTreeMap;

use mahonian::omp::{block_range, enumerate_osp, OmpStat};
use mahonian::qpoly::{self, DistributionTable, LaurentPolynomial};
use mahonian::verify::Suite;
use mahonian::words::{enumerate_words, Composition};

fn poly(coeffs: &[i64]) -> LaurentPolynomial {
    LaurentPolynomial::from_exponent_counts("q", coeffs.iter().enumerate().map(|(i, &c)| (i as i64, c)))
}

/// `Σ q^{inv}` over words, counting inversions directly.
fn brute_inv_dist(alpha: &Composition) -> LaurentPolynomial {
    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    for w in enumerate_words(alpha) {
        let l = w.letters();
        let inv = (0..l.len())
            .flat_map(|i| (i + 1..l.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| l[i] > l[j])
            .count();
        *counts.entry(inv as i64).or_default() += 1;
    }
    LaurentPolynomial::from_exponent_counts("q", counts)
}

#[test]
fn macmahon_q_multinomial() {
    for alpha in Composition::all_up_to(6, 6) {
        let parts: Vec<usize> = alpha.parts().iter().map(|&p| p as usize).collect();
        let m = qpoly::q_multinom(alpha.weight(), &parts).unwrap();
        assert_eq!(m, brute_inv_dist(&alpha), "alpha={alpha}");
        assert_eq!(qpoly::distribution(OmpStat::Maj, &alpha, alpha.weight()), m);
    }
}

#[test]
fn recursion_matches_enumeration() {
    for alpha in Composition::all_up_to(6, 6) {
        for k in block_range(&alpha) {
            let rec = qpoly::mahonian_rec(&alpha, k);
            assert_eq!(rec, qpoly::dist_rec(&alpha, k), "alpha={alpha} k={k}");
            for stat in [OmpStat::Inv, OmpStat::Maj, OmpStat::Dinv] {
                assert_eq!(qpoly::distribution(stat, &alpha, k), rec, "{stat} alpha={alpha} k={k}");
            }
            let count = enumerate_osp(&alpha, k).count();
            assert_eq!(rec.eval_at_one(), count.into());
            assert!(rec.is_nonnegative());
        }
    }
}

#[test]
fn table_entries_are_consistent() {
    let alpha = Composition::new(vec![1, 2, 1]).unwrap();
    let mut table = DistributionTable::new();
    table.add_composition(&alpha);
    assert_eq!(table.len(), 3 * 4);
    for ((a, k, _), p) in table.iter() {
        assert_eq!(p, &qpoly::mahonian_rec(a, *k));
    }
    assert!(table.get(&alpha, 1, OmpStat::Inv).is_none());
}

#[test]
fn small_examples() {
    let a = Composition::ones(3);
    let m = qpoly::distribution(OmpStat::Inv, &a, 2);
    assert_eq!(m, poly(&[2, 3, 1]));
    assert_eq!(m.eval_at_one(), 6.into());
    assert_eq!(qpoly::q_stirling(3, 2), poly(&[2, 1]));
    assert_eq!(qpoly::q_stirling(3, 0), LaurentPolynomial::zero());
}

#[test]
fn generalized_stirling_identity() {
    let report = Suite::Stirling.run(Some(6));
    assert!(report.passed(), "{report}");
}

#[test]
fn refined_identity_and_z_coefficients() {
    for alpha in Composition::all_up_to(5, 5) {
        let (lhs, rhs) = qpoly::main_result_sides(&alpha);
        assert_eq!(lhs, rhs, "alpha={alpha}");
        for k in block_range(&alpha) {
            let z = (alpha.weight() - k) as i64;
            assert_eq!(lhs.coefficient(&[("z", z)]), qpoly::distribution(OmpStat::Maj, &alpha, k));
        }
    }
}

#[test]
fn serialization_is_canonical() {
    let p = &poly(&[1, 1]) * &LaurentPolynomial::one();
    assert_eq!(
        p.to_json().to_string(),
        r#"[{"coeff":"1","exp":{"q":0}},{"coeff":"1","exp":{"q":1}}]"#
    );
    let big = poly(&[1, 1]).pow(70);
    assert_eq!(big.eval_at_one(), num_bigint::BigInt::from(2).pow(70));
    assert_eq!(big.to_json(), big.clone().to_json());
}
