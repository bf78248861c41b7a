use std::collections::{BTreeMap, HashSet};

use mahonian::insertion::{self, InsertionStat};
use mahonian::omp::enumerate_osp;
use mahonian::{Composition, OrderedMultisetPartition};

fn alphas(max_weight: usize) -> Vec<Composition> {
    Composition::all_up_to(max_weight, max_weight).into_iter().filter(|a| a.len() >= 2).collect()
}

/// For every α with |α| ≤ 6 and every k: inserting over all `(π, U, B)`
/// with `π ∈ osp(α⁻, ℓ)` hits each element of `osp(α, k)` exactly once,
/// raises the statistic by `ΣU + ΣB`, and is undone by the inverse.
#[test]
fn insertion_maps_are_statistic_controlled_bijections() {
    for alpha in alphas(6) {
        let shorter = alpha.without_last().unwrap();
        let n = alpha.len() as u32;
        let copies = alpha.last() as usize;
        let (lo, hi) = (alpha.max_part() as usize, alpha.weight());
        for k in lo..=hi {
            let expected: HashSet<OrderedMultisetPartition> = enumerate_osp(&alpha, k).collect();
            for stat in InsertionStat::ALL {
                let mut seen = HashSet::new();
                for l in 1..=k {
                    for base in enumerate_osp(&shorter, l) {
                        for args in insertion::all_args(&base, copies, k) {
                            let image = insertion::insert(stat, &args, n).unwrap();
                            assert!(image.is_in(&alpha, k), "{stat} {args:?} -> {image}");
                            assert_eq!(
                                stat.eval(&image),
                                stat.eval(&base) + args.label_sum(),
                                "{stat} law fails for {args:?} -> {image}"
                            );
                            assert_eq!(insertion::peel(stat, &image, n).unwrap(), args, "{stat} {image}");
                            assert!(seen.insert(image.clone()), "{stat} hits {image} twice");
                        }
                    }
                }
                assert_eq!(seen, expected, "{stat} image for alpha {alpha}, k {k}");
            }
        }
    }
}

/// `φ^inv` and `φ^dinv` with parameter ℓ produce exactly the partitions
/// carrying `k − ℓ` singleton blocks `{n}`.
#[test]
fn images_split_by_singleton_count() {
    for alpha in alphas(6) {
        let shorter = alpha.without_last().unwrap();
        let n = alpha.len() as u32;
        let copies = alpha.last() as usize;
        for k in mahonian::omp::block_range(&alpha) {
            for l in 1..=k {
                for base in enumerate_osp(&shorter, l) {
                    for args in insertion::all_args(&base, copies, k) {
                        for stat in [InsertionStat::Inv, InsertionStat::Dinv] {
                            let image = insertion::insert(stat, &args, n).unwrap();
                            let singles = image.blocks().iter().filter(|b| b.as_slice() == [n]).count();
                            assert_eq!(singles, k - l);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn psi_transports_and_inverts() {
    for alpha in Composition::all_up_to(6, 6) {
        for k in mahonian::omp::block_range(&alpha) {
            let all: Vec<_> = enumerate_osp(&alpha, k).collect();
            for from in InsertionStat::ALL {
                for to in InsertionStat::ALL {
                    let mut images = HashSet::new();
                    for rho in &all {
                        let image = insertion::psi(&alpha, k, rho, from, to).unwrap();
                        assert_eq!(to.eval(&image), from.eval(rho));
                        if from == to {
                            assert_eq!(&image, rho);
                        }
                        let back = insertion::psi(&alpha, k, &image, to, from).unwrap();
                        assert_eq!(&back, rho, "{from}->{to} not inverted on {rho}");
                        images.insert(image);
                    }
                    assert_eq!(images.len(), all.len());
                }
            }
        }
    }
}

#[test]
fn rl_minima_preserved_for_permutations() {
    let alpha = Composition::ones(5);
    let report = insertion::check_rl_minima(&alpha, 3, InsertionStat::Inv, InsertionStat::Maj).unwrap();
    assert!(report.passed(), "{report:?}");
    assert_eq!(report.checked, 150);
}

#[test]
fn word_insertion_matches_brute_force() {
    // Every multiset of labels on a word of length N gives a distinct word
    // with maj raised by the label sum.
    for w in mahonian::words::all_words(4, 3) {
        let n = w.max_letter() + 1;
        for copies in 1..=2usize {
            let mut by_word = BTreeMap::new();
            let len = w.len();
            let mut labels = vec![0usize; copies];
            loop {
                if labels.windows(2).all(|p| p[0] >= p[1]) {
                    let out = insertion::insert_maj_word(&w, &labels).unwrap();
                    assert_eq!(out.maj(), w.maj() + labels.iter().sum::<usize>() as u64);
                    assert_eq!(out.letters().iter().filter(|&&x| x == n).count(), copies);
                    assert!(by_word.insert(out, labels.clone()).is_none());
                }
                let mut i = 0;
                while i < copies && labels[i] == len {
                    labels[i] = 0;
                    i += 1;
                }
                if i == copies {
                    break;
                }
                labels[i] += 1;
            }
        }
    }
}
