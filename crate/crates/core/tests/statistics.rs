use std::collections::BTreeSet;

use itertools::Itertools;
use mahonian::omp::{enumerate_osp, OmpStat};
use mahonian::{Composition, OrderedMultisetPartition, StarredPermutation, Word};

fn oracle_inv(w: &[u32]) -> u64 {
    let mut c = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                c += 1;
            }
        }
    }
    c
}

fn oracle_maj(w: &[u32]) -> u64 {
    (1..w.len()).filter(|&i| w[i - 1] > w[i]).map(|i| i as u64).sum()
}

/// Every ordered multiset partition by assigning the copies of each letter
/// to distinct blocks.
fn oracle_osp(alpha: &Composition, k: usize) -> BTreeSet<Vec<Vec<u32>>> {
    let mut out = BTreeSet::new();
    let choices: Vec<Vec<Vec<usize>>> = alpha
        .parts()
        .iter()
        .map(|&a| (0..k).combinations(a as usize).collect())
        .collect();
    for pick in choices.iter().multi_cartesian_product() {
        let mut blocks = vec![Vec::new(); k];
        for (letter, targets) in pick.iter().enumerate() {
            for &b in targets.iter() {
                blocks[b].push(letter as u32 + 1);
            }
        }
        if blocks.iter().all(|b| !b.is_empty()) {
            out.insert(blocks);
        }
    }
    out
}

fn oracle_omp_inv(blocks: &[Vec<u32>]) -> u64 {
    let mut c = 0;
    for (j, later) in blocks.iter().enumerate() {
        let b = *later.iter().min().unwrap();
        for earlier in &blocks[..j] {
            c += earlier.iter().filter(|&&a| a > b).count() as u64;
        }
    }
    c
}

/// Diagonal inversions on the column diagram: column `i` holds block `i`
/// stacked from the bottom in increasing order.
fn oracle_dinv(blocks: &[Vec<u32>]) -> u64 {
    let height = blocks.iter().map(Vec::len).max().unwrap_or(0);
    let cell = |col: usize, h: usize| -> Option<u32> {
        let mut b = blocks[col].clone();
        b.sort_unstable();
        b.get(h).copied()
    };
    let mut c = 0;
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            for h in 0..height {
                if let (Some(x), Some(y)) = (cell(i, h), cell(j, h)) {
                    if x > y {
                        c += 1;
                    }
                }
                if let (Some(x), Some(y)) = (cell(i, h), cell(j, h + 1)) {
                    if x < y {
                        c += 1;
                    }
                }
            }
        }
    }
    c
}

fn oracle_minimaj(blocks: &[Vec<u32>]) -> u64 {
    blocks
        .iter()
        .map(|b| b.iter().copied().permutations(b.len()).collect::<Vec<_>>())
        .multi_cartesian_product()
        .map(|orders| oracle_maj(&orders.concat()))
        .min()
        .unwrap()
}

fn stirling2(n: usize, k: usize) -> u64 {
    if n == 0 && k == 0 {
        return 1;
    }
    if n == 0 || k == 0 {
        return 0;
    }
    k as u64 * stirling2(n - 1, k) + stirling2(n - 1, k - 1)
}

#[test]
fn word_statistics_match_brute_force() {
    for n in 0..=6 {
        for w in mahonian::words::all_words(n, 3) {
            assert_eq!(w.inv(), oracle_inv(w.letters()), "{w}");
            assert_eq!(w.maj(), oracle_maj(w.letters()), "{w}");
            let rlmaj: u64 = w.descent_set().iter().map(|&i| (n - i) as u64).sum();
            assert_eq!(w.rlmaj(), rlmaj);
        }
    }
}

#[test]
fn enumeration_matches_independent_generator() {
    for alpha in Composition::all_up_to(6, 6) {
        for k in 1..=alpha.weight() + 1 {
            let got: Vec<Vec<Vec<u32>>> = enumerate_osp(&alpha, k).map(|p| p.blocks().to_vec()).collect();
            let unique: BTreeSet<_> = got.iter().cloned().collect();
            assert_eq!(unique.len(), got.len(), "duplicates for alpha={alpha} k={k}");
            assert_eq!(unique, oracle_osp(&alpha, k), "alpha={alpha} k={k}");
        }
    }
}

#[test]
fn ordered_set_partition_counts() {
    for n in 1..=7 {
        for k in 1..=n {
            let count = enumerate_osp(&Composition::ones(n), k).count() as u64;
            let factorial: u64 = (1..=k as u64).product();
            assert_eq!(count, factorial * stirling2(n, k), "n={n} k={k}");
        }
    }
}

#[test]
fn partition_statistics_match_definitions() {
    for alpha in Composition::all_up_to(6, 6) {
        for k in mahonian::omp::block_range(&alpha) {
            for pi in enumerate_osp(&alpha, k) {
                assert_eq!(pi.inv(), oracle_omp_inv(pi.blocks()), "inv {pi}");
                assert_eq!(pi.dinv(), oracle_dinv(pi.blocks()), "dinv {pi}");
                assert_eq!(pi.maj(), pi.maj_starred(), "maj forms disagree on {pi}");
                assert_eq!(pi.minimaj(), oracle_minimaj(pi.blocks()), "minimaj {pi}");
            }
        }
    }
}

#[test]
fn maj_forms_agree_and_starred_round_trips() {
    for alpha in Composition::all_up_to(7, 7) {
        for k in mahonian::omp::block_range(&alpha) {
            for pi in enumerate_osp(&alpha, k) {
                assert_eq!(pi.maj(), pi.maj_starred(), "{pi}");
                let sp = pi.to_starred();
                assert_eq!(sp.stars().len(), alpha.weight() - k);
                assert_eq!(OrderedMultisetPartition::from_starred(&sp).unwrap(), pi);
            }
        }
    }
}

#[test]
fn singleton_partitions_reduce_to_words() {
    for alpha in Composition::all_up_to(6, 6) {
        for pi in enumerate_osp(&alpha, alpha.weight()) {
            let w = pi.reading_word();
            assert_eq!(pi.inv(), w.inv());
            assert_eq!(pi.maj(), w.maj());
            assert!(pi.to_starred().stars().is_empty());
        }
    }
}

#[test]
fn text_forms_round_trip() {
    for alpha in Composition::all_up_to(5, 5) {
        for k in mahonian::omp::block_range(&alpha) {
            for pi in enumerate_osp(&alpha, k) {
                let bar = pi.to_string();
                assert_eq!(bar.parse::<OrderedMultisetPartition>().unwrap(), pi);
                let sp = pi.to_starred();
                assert_eq!(sp.to_string().parse::<StarredPermutation>().unwrap(), sp);
                assert_eq!(StarredPermutation::parse_compact(&sp.to_compact_string()).unwrap(), sp);
            }
        }
    }
}

#[test]
fn example_statistics() {
    let pi: OrderedMultisetPartition = "24|134|2".parse().unwrap();
    assert_eq!(pi.maj(), 2);
    assert_eq!(pi.dinv(), 3);
    assert_eq!(pi.shape(), vec![2, 3, 1]);
    assert_eq!(pi.to_starred().to_string(), "4*2 4*3*1 2");
    let pi: OrderedMultisetPartition = "15|23|4".parse().unwrap();
    assert_eq!(pi.inv(), 2);
    let pi: OrderedMultisetPartition = "13|23|14|234".parse().unwrap();
    assert_eq!(pi.minimaj_word().to_string(), "312341234");
    assert_eq!(pi.minimaj(), 6);
    assert_eq!(pi.stat(OmpStat::Minimaj), 6);
    let pi: OrderedMultisetPartition = "3|1|2|2|13".parse().unwrap();
    assert_eq!(pi.inv(), 6);
    let sp: StarredPermutation = "3 1 2 2 3*1".parse().unwrap();
    assert_eq!(sp.maj(), 5);
    assert_eq!(sp.to_partition().maj(), 5);
}

#[test]
fn invalid_inputs_are_rejected() {
    assert!("1|1 2".parse::<OrderedMultisetPartition>().is_err());
    assert!("11|2".parse::<OrderedMultisetPartition>().is_err());
    assert!("1||2".parse::<OrderedMultisetPartition>().is_err());
    assert!(StarredPermutation::new(Word::new(vec![1, 2]).unwrap(), [1]).is_err());
    assert!("0,1".parse::<Composition>().is_err());
    assert_eq!(enumerate_osp(&Composition::new(vec![2, 1]).unwrap(), 1).count(), 0);
    assert_eq!(enumerate_osp(&Composition::new(vec![2, 1]).unwrap(), 4).count(), 0);
}
