//! Insertion maps for `inv`, `maj` and `dinv` on ordered multiset partitions,
//! their inverses, and the recursive bijections `ψ` assembled from them.
//!
//! Every map takes `(π, U, B)` where `π` has `ℓ` blocks over letters smaller
//! than `n`, `U ⊆ [0, ℓ−1]` is a set and `B` a multiset over `[0, ℓ]`. The
//! result has `k = ℓ + |B|` blocks and `|U| + |B|` copies of `n`, and the
//! corresponding statistic grows by exactly `ΣU + ΣB`.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::omp::{OrderedMultisetPartition, StarredPermutation};
use crate::words::{self, Composition, Word};

/// Statistics that have an insertion map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InsertionStat {
    Inv,
    Maj,
    Dinv,
}

impl InsertionStat {
    pub const ALL: [InsertionStat; 3] = [InsertionStat::Inv, InsertionStat::Maj, InsertionStat::Dinv];

    pub fn name(self) -> &'static str {
        match self {
            InsertionStat::Inv => "inv",
            InsertionStat::Maj => "maj",
            InsertionStat::Dinv => "dinv",
        }
    }

    pub fn eval(self, pi: &OrderedMultisetPartition) -> u64 {
        match self {
            InsertionStat::Inv => pi.inv(),
            InsertionStat::Maj => pi.maj(),
            InsertionStat::Dinv => pi.dinv(),
        }
    }
}

impl fmt::Display for InsertionStat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for InsertionStat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inv" => Ok(InsertionStat::Inv),
            "maj" => Ok(InsertionStat::Maj),
            "dinv" => Ok(InsertionStat::Dinv),
            _ => Err(Error::Parse(format!("no insertion map for statistic {s:?}"))),
        }
    }
}

/// `(π, U, B)` for an insertion map. `U` is kept sorted and duplicate-free,
/// `B` sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InsertionArgs {
    base: OrderedMultisetPartition,
    u: Vec<usize>,
    b: Vec<usize>,
}

impl InsertionArgs {
    pub fn new(base: OrderedMultisetPartition, mut u: Vec<usize>, mut b: Vec<usize>) -> Result<Self> {
        let l = base.num_blocks();
        u.sort_unstable();
        b.sort_unstable();
        if u.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::InvalidInsertionArgs(format!("U = {u:?} is not a set")));
        }
        if let Some(&x) = u.last() {
            if x >= l {
                return Err(Error::InvalidInsertionArgs(format!(
                    "U element {x} outside [0, {}]",
                    l as isize - 1
                )));
            }
        }
        if let Some(&x) = b.last() {
            if x > l {
                return Err(Error::InvalidInsertionArgs(format!("B element {x} outside [0, {l}]")));
            }
        }
        Ok(InsertionArgs { base, u, b })
    }

    pub fn base(&self) -> &OrderedMultisetPartition {
        &self.base
    }

    pub fn u(&self) -> &[usize] {
        &self.u
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    /// `ℓ`, the number of blocks of the base.
    pub fn l(&self) -> usize {
        self.base.num_blocks()
    }

    /// Block count of the image, `ℓ + |B|`.
    pub fn k(&self) -> usize {
        self.l() + self.b.len()
    }

    /// Number of inserted letters, `|U| + |B|`.
    pub fn copies(&self) -> usize {
        self.u.len() + self.b.len()
    }

    pub fn label_sum(&self) -> u64 {
        self.u.iter().chain(&self.b).map(|&x| x as u64).sum()
    }

    pub fn with_base(&self, base: OrderedMultisetPartition) -> Result<Self> {
        InsertionArgs::new(base, self.u.clone(), self.b.clone())
    }

    fn check_letter(&self, n: u32) -> Result<()> {
        if n <= self.base.max_letter() {
            return Err(Error::InvalidInsertionArgs(format!(
                "letter {n} is not larger than every letter of {}",
                self.base
            )));
        }
        Ok(())
    }
}

/// Every valid `(U, B)` for `base` with `copies` new letters and `k` blocks
/// in the image: `|B| = k − ℓ`, `|U| = copies − |B|`.
pub fn all_args(
    base: &OrderedMultisetPartition,
    copies: usize,
    k: usize,
) -> impl Iterator<Item = InsertionArgs> + '_ {
    let l = base.num_blocks();
    let sizes = (k >= l && k - l <= copies && copies - (k - l) <= l).then(|| (copies - (k - l), k - l));
    sizes.into_iter().flat_map(move |(nu, nb)| {
        (0..l).combinations(nu).flat_map(move |u| {
            (0..=l).combinations_with_replacement(nb).map(move |b| InsertionArgs {
                base: base.clone(),
                u: u.clone(),
                b,
            })
        })
    })
}

/// A labeling of insertion sites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelReport {
    /// Labels on the `N + 1` gaps of a (starred) word; starred gaps carry none.
    Gaps {
        word: Vec<u32>,
        stars: BTreeSet<usize>,
        labels: Vec<Option<usize>>,
    },
    /// One label per block.
    Blocks {
        partition: OrderedMultisetPartition,
        labels: Vec<usize>,
    },
}

impl LabelReport {
    /// Labels in site order, skipping unlabeled sites.
    pub fn labels(&self) -> Vec<usize> {
        match self {
            LabelReport::Gaps { labels, .. } => labels.iter().flatten().copied().collect(),
            LabelReport::Blocks { labels, .. } => labels.clone(),
        }
    }

    /// Labels are distinct and form `0..count`.
    pub fn is_contiguous(&self) -> bool {
        let mut l = self.labels();
        l.sort_unstable();
        l.iter().enumerate().all(|(i, &x)| i == x)
    }
}

impl fmt::Display for LabelReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelReport::Gaps { word, stars, labels } => {
                for g in 0..=word.len() {
                    match labels[g] {
                        Some(l) => write!(f, "_{{{l}}}")?,
                        None if stars.contains(&g) => f.write_str("*")?,
                        None if g > 0 && g < word.len() => f.write_str(" ")?,
                        None => {}
                    }
                    if g < word.len() {
                        write!(f, "{}", word[g])?;
                    }
                }
                Ok(())
            }
            LabelReport::Blocks { labels, .. } => {
                let parts: Vec<String> = labels.iter().map(usize::to_string).collect();
                f.write_str(&parts.join("|"))
            }
        }
    }
}

/// Major-index labels of the gaps of a starred word: right end 0, unstarred
/// descents right to left, the front, then non-descents left to right.
fn maj_gap_labels(word: &[u32], stars: &BTreeSet<usize>) -> Vec<Option<usize>> {
    let n = word.len();
    let mut labels = vec![None; n + 1];
    if n == 0 {
        labels[0] = Some(0);
        return labels;
    }
    labels[n] = Some(0);
    let mut next = 1;
    for p in (1..n).rev() {
        if word[p - 1] > word[p] && !stars.contains(&p) {
            labels[p] = Some(next);
            next += 1;
        }
    }
    labels[0] = Some(next);
    next += 1;
    for p in 1..n {
        if word[p - 1] <= word[p] {
            labels[p] = Some(next);
            next += 1;
        }
    }
    labels
}

/// The major-index labeling of a word's gaps.
pub fn maj_labels_word(w: &Word) -> LabelReport {
    let stars = BTreeSet::new();
    let labels = maj_gap_labels(w.letters(), &stars);
    LabelReport::Gaps { word: w.letters().to_vec(), stars, labels }
}

/// The unstarred-gap labeling used by the `maj` insertion map.
pub fn maj_labels_starred(sp: &StarredPermutation) -> LabelReport {
    let word = sp.word().letters().to_vec();
    let labels = maj_gap_labels(&word, sp.stars());
    LabelReport::Gaps { word, stars: sp.stars().clone(), labels }
}

/// Block labels for the `inv` map: right to left, `0..ℓ`.
pub fn inv_block_labels(pi: &OrderedMultisetPartition) -> LabelReport {
    let l = pi.num_blocks();
    LabelReport::Blocks { partition: pi.clone(), labels: (0..l).rev().collect() }
}

fn dinv_labels(pi: &OrderedMultisetPartition) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pi.num_blocks()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(pi.blocks()[i].len()), i));
    let mut labels = vec![0; order.len()];
    for (label, &i) in order.iter().enumerate() {
        labels[i] = label;
    }
    labels
}

/// Block labels for the `dinv` map: larger blocks first, ties left to right.
pub fn dinv_block_labels(pi: &OrderedMultisetPartition) -> LabelReport {
    LabelReport::Blocks { partition: pi.clone(), labels: dinv_labels(pi) }
}

fn starred_maj(word: &[u32], stars: &BTreeSet<usize>) -> u64 {
    let des = words::descents(word);
    let correction: u64 = stars
        .iter()
        .map(|&s| des.iter().filter(|&&d| d >= s).count() as u64)
        .sum();
    words::maj(word) - correction
}

/// One step of the `maj` insertion: put `n` at the gap labeled `label`, move
/// every star right of it one descent leftward, optionally star the
/// rightmost descent.
fn maj_insert_step(
    word: &mut Vec<u32>,
    stars: &mut BTreeSet<usize>,
    label: usize,
    n: u32,
    star_rightmost: bool,
) -> Result<()> {
    let labels = maj_gap_labels(word, stars);
    let gap = labels
        .iter()
        .position(|&l| l == Some(label))
        .ok_or(Error::LabelOutOfRange { label, cap: labels.iter().flatten().count() - 1 })?;
    word.insert(gap, n);
    let new_pos = gap + 1;
    let des = words::descents(word);
    let mut moved = BTreeSet::new();
    for &p in stars.iter() {
        let p = if p > gap { p + 1 } else { p };
        if p > new_pos {
            let idx = des.partition_point(|&d| d < p);
            if idx == 0 {
                return Err(Error::InvalidInsertionArgs("no descent to shift a star onto".into()));
            }
            moved.insert(des[idx - 1]);
        } else {
            moved.insert(p);
        }
    }
    if moved.len() != stars.len() {
        return Err(Error::InvalidInsertionArgs("star collision while shifting".into()));
    }
    if star_rightmost {
        let last = *des
            .last()
            .ok_or_else(|| Error::InvalidInsertionArgs("no descent to star".into()))?;
        if !moved.insert(last) {
            return Err(Error::InvalidInsertionArgs("rightmost descent already starred".into()));
        }
    }
    *stars = moved;
    Ok(())
}

/// Carlitz-style insertion of `|B|` copies of a new largest letter into a
/// word. Labels are consumed from largest to smallest; each must not exceed
/// the previous one.
pub fn insert_maj_word(w: &Word, b: &[usize]) -> Result<Word> {
    let n = w.max_letter() + 1;
    let mut word = w.letters().to_vec();
    let mut stars = BTreeSet::new();
    let mut sorted = b.to_vec();
    sorted.sort_unstable_by(|x, y| y.cmp(x));
    let mut cap = word.len();
    for &label in &sorted {
        if label > cap {
            return Err(Error::LabelOutOfRange { label, cap });
        }
        maj_insert_step(&mut word, &mut stars, label, n, false)?;
        cap = label;
    }
    Ok(Word::from_vec_unchecked(word))
}

/// `φ^inv`: blocks labeled right to left; `u ∈ U` adds `n` to block `u`,
/// `b ∈ B` adds a singleton `{n}` with exactly `b` original blocks to its
/// right. Elements are processed largest first, ties taken from `U`.
pub fn phi_inv(args: &InsertionArgs, n: u32) -> Result<OrderedMultisetPartition> {
    args.check_letter(n)?;
    let l = args.l();
    // (original label, block)
    let mut blocks: Vec<(Option<usize>, Vec<u32>)> = args
        .base
        .blocks()
        .iter()
        .enumerate()
        .map(|(i, b)| (Some(l - 1 - i), b.clone()))
        .collect();
    for (value, from_u) in merge_desc(&args.u, &args.b, true) {
        if from_u {
            let idx = blocks.iter().position(|(lab, _)| *lab == Some(value)).expect("label exists");
            blocks[idx].1.push(n);
        } else if value == l {
            blocks.insert(0, (None, vec![n]));
        } else {
            let idx = blocks.iter().position(|(lab, _)| *lab == Some(value)).expect("label exists");
            blocks.insert(idx + 1, (None, vec![n]));
        }
    }
    Ok(OrderedMultisetPartition::from_sorted_blocks(
        blocks.into_iter().map(|(_, b)| b).collect(),
    ))
}

/// `(value, from_first)` pairs, largest value first. On ties the element of
/// the first list comes first when `first_wins` is set.
fn merge_desc(first: &[usize], second: &[usize], first_wins: bool) -> Vec<(usize, bool)> {
    let mut all: Vec<(usize, bool)> = first
        .iter()
        .map(|&x| (x, true))
        .chain(second.iter().map(|&x| (x, false)))
        .collect();
    all.sort_by(|a, b| b.0.cmp(&a.0).then(if first_wins { b.1.cmp(&a.1) } else { a.1.cmp(&b.1) }));
    all
}

fn check_contains(rho: &OrderedMultisetPartition, n: u32) -> Result<()> {
    if rho.max_letter() > n {
        return Err(Error::ContentMismatch(format!("{rho} has letters larger than {n}")));
    }
    Ok(())
}

/// Inverse of [`phi_inv`]: strips every `n` from `ρ`.
pub fn phi_inv_inverse(rho: &OrderedMultisetPartition, n: u32) -> Result<InsertionArgs> {
    check_contains(rho, n)?;
    let mut u = Vec::new();
    let mut b = Vec::new();
    let mut base = Vec::new();
    let mut originals_right = 0;
    for block in rho.blocks().iter().rev() {
        if block.as_slice() == [n] {
            b.push(originals_right);
            continue;
        }
        let mut block = block.clone();
        if block.last() == Some(&n) {
            block.pop();
            u.push(originals_right);
        }
        base.push(block);
        originals_right += 1;
    }
    base.reverse();
    InsertionArgs::new(OrderedMultisetPartition::from_sorted_blocks(base), u, b)
}

/// `φ^dinv`: `u ∈ U` adds `n` to the block with dinv label `u`; `b ∈ B` adds a
/// singleton `{n}` in the gap with `b` blocks to its right.
pub fn phi_dinv(args: &InsertionArgs, n: u32) -> Result<OrderedMultisetPartition> {
    args.check_letter(n)?;
    let l = args.l();
    let labels = dinv_labels(&args.base);
    let mut out = Vec::with_capacity(args.k());
    let singletons = |out: &mut Vec<Vec<u32>>, gap_label: usize| {
        for _ in args.b.iter().filter(|&&x| x == gap_label) {
            out.push(vec![n]);
        }
    };
    for (g, (block, label)) in args.base.blocks().iter().zip(&labels).enumerate() {
        singletons(&mut out, l - g);
        let mut block = block.clone();
        if args.u.binary_search(label).is_ok() {
            block.push(n);
        }
        out.push(block);
    }
    singletons(&mut out, 0);
    Ok(OrderedMultisetPartition::from_sorted_blocks(out))
}

/// Inverse of [`phi_dinv`].
pub fn phi_dinv_inverse(rho: &OrderedMultisetPartition, n: u32) -> Result<InsertionArgs> {
    check_contains(rho, n)?;
    let mut base = Vec::new();
    let mut had_n = Vec::new();
    let mut b = Vec::new();
    for block in rho.blocks() {
        if block.as_slice() == [n] {
            b.push(base.len());
            continue;
        }
        let mut block = block.clone();
        let has = block.last() == Some(&n);
        if has {
            block.pop();
        }
        had_n.push(has);
        base.push(block);
    }
    let l = base.len();
    let b = b.into_iter().map(|left| l - left).collect();
    let base = OrderedMultisetPartition::from_sorted_blocks(base);
    let labels = dinv_labels(&base);
    let u = labels
        .iter()
        .zip(&had_n)
        .filter(|(_, &h)| h)
        .map(|(&lab, _)| lab)
        .collect();
    InsertionArgs::new(base, u, b)
}

/// `φ^maj` on the starred form. Processes `U⁺ = U + 1` together with `B`,
/// largest first, ties taken from `B`.
pub fn phi_maj(args: &InsertionArgs, n: u32) -> Result<OrderedMultisetPartition> {
    Ok(phi_maj_starred(args, n)?.to_partition())
}

/// [`phi_maj`] returning the starred permutation.
pub fn phi_maj_starred(args: &InsertionArgs, n: u32) -> Result<StarredPermutation> {
    args.check_letter(n)?;
    let sp = args.base.to_starred();
    let mut word = sp.word().letters().to_vec();
    let mut stars = sp.stars().clone();
    let u_plus: Vec<usize> = args.u.iter().map(|&x| x + 1).collect();
    let mut cap = args.l();
    for (label, from_u) in merge_desc(&u_plus, &args.b, false) {
        if label > cap {
            return Err(Error::LabelOutOfRange { label, cap });
        }
        maj_insert_step(&mut word, &mut stars, label, n, from_u)?;
        cap = if from_u { label - 1 } else { label };
    }
    Ok(StarredPermutation::from_parts_unchecked(word, stars))
}

/// Inverse of [`phi_maj`]. Does not need `ℓ`: each removal decides between
/// `U` and `B` by whether the rightmost descent is starred.
pub fn phi_maj_inverse(rho: &OrderedMultisetPartition, n: u32) -> Result<InsertionArgs> {
    check_contains(rho, n)?;
    let sp = rho.to_starred();
    let mut word = sp.word().letters().to_vec();
    let mut stars = sp.stars().clone();
    let mut u = Vec::new();
    let mut b = Vec::new();
    while word.contains(&n) {
        let before = starred_maj(&word, &stars);
        let des = words::descents(&word);
        // A trailing n can only come from label 0, which is never in U⁺.
        let from_u = word.last() != Some(&n) && des.last().is_some_and(|r| stars.contains(r));
        if from_u {
            stars.remove(des.last().unwrap());
        }
        let len = word.len();
        let chosen = (1..=len)
            .rev()
            .find(|&p| word[p - 1] == n && (p == len || (p > 1 && word[p - 2] > word[p])))
            .or_else(|| (1..=len).find(|&p| word[p - 1] == n))
            .expect("word contains n");
        let mut moved = BTreeSet::new();
        for &s in &stars {
            if s >= chosen {
                let idx = des.partition_point(|&d| d <= s);
                let next = *des.get(idx).ok_or_else(|| {
                    Error::InvalidInsertionArgs(format!("cannot shift star at {s} in {rho}"))
                })?;
                moved.insert(next - 1);
            } else {
                moved.insert(s);
            }
        }
        if moved.len() != stars.len() {
            return Err(Error::InvalidInsertionArgs(format!("star collision peeling {rho}")));
        }
        word.remove(chosen - 1);
        stars = moved;
        let after = starred_maj(&word, &stars);
        let dropped = (before - after) as usize;
        if from_u {
            u.push(dropped);
        } else {
            b.push(dropped);
        }
    }
    let base = StarredPermutation::new(Word::new(word)?, stars)?.to_partition();
    InsertionArgs::new(base, u, b)
}

/// Dispatches to the insertion map of `stat`.
pub fn insert(stat: InsertionStat, args: &InsertionArgs, n: u32) -> Result<OrderedMultisetPartition> {
    match stat {
        InsertionStat::Inv => phi_inv(args, n),
        InsertionStat::Maj => phi_maj(args, n),
        InsertionStat::Dinv => phi_dinv(args, n),
    }
}

/// Dispatches to the inverse insertion map of `stat`.
pub fn peel(stat: InsertionStat, rho: &OrderedMultisetPartition, n: u32) -> Result<InsertionArgs> {
    match stat {
        InsertionStat::Inv => phi_inv_inverse(rho, n),
        InsertionStat::Maj => phi_maj_inverse(rho, n),
        InsertionStat::Dinv => phi_dinv_inverse(rho, n),
    }
}

fn check_member(alpha: &Composition, k: usize, rho: &OrderedMultisetPartition) -> Result<()> {
    if !rho.is_in(alpha, k) {
        return Err(Error::ContentMismatch(format!(
            "{rho} is not in osp(({alpha}), {k})"
        )));
    }
    Ok(())
}

/// `ψ_{α,k}` transporting `from` to `to`: peel the largest letter with the
/// inverse map of `from`, recurse on `α⁻`, reinsert with the map of `to`.
pub fn psi(
    alpha: &Composition,
    k: usize,
    rho: &OrderedMultisetPartition,
    from: InsertionStat,
    to: InsertionStat,
) -> Result<OrderedMultisetPartition> {
    check_member(alpha, k, rho)?;
    psi_unchecked(alpha, rho, from, to)
}

fn psi_unchecked(
    alpha: &Composition,
    rho: &OrderedMultisetPartition,
    from: InsertionStat,
    to: InsertionStat,
) -> Result<OrderedMultisetPartition> {
    let Some(shorter) = alpha.without_last() else {
        return Ok(rho.clone());
    };
    let n = alpha.len() as u32;
    let args = peel(from, rho, n)?;
    let image = psi_unchecked(&shorter, args.base(), from, to)?;
    insert(to, &args.with_base(image)?, n)
}

/// One level of a `ψ` computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRow {
    pub letter: u32,
    pub alpha: Composition,
    pub k: usize,
    pub partition: OrderedMultisetPartition,
    /// `(ℓ, U, B)` from peeling `letter`; `None` on the base level.
    pub peeled: Option<(usize, Vec<usize>, Vec<usize>)>,
    pub image: OrderedMultisetPartition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiTrace {
    pub from: InsertionStat,
    pub to: InsertionStat,
    pub rows: Vec<TraceRow>,
}

impl PsiTrace {
    pub fn result(&self) -> &OrderedMultisetPartition {
        &self.rows[0].image
    }

    /// Tab-separated table, one row per peeled letter, followed by the
    /// result on its own line. `render` chooses the partition notation.
    pub fn render(&self, render: impl Fn(&OrderedMultisetPartition) -> String) -> String {
        let mut out = String::from("n\talpha\tk\tpi\tl\tU\tB\tpsi\n");
        let set = |v: &[usize]| {
            let parts: Vec<String> = v.iter().rev().map(usize::to_string).collect();
            format!("{{{}}}", parts.join(","))
        };
        for row in &self.rows {
            let (l, u, b) = match &row.peeled {
                Some((l, u, b)) => (l.to_string(), set(u), set(b)),
                None => ("-".into(), "-".into(), "-".into()),
            };
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                row.letter,
                row.alpha,
                row.k,
                render(&row.partition),
                l,
                u,
                b,
                render(&row.image)
            ));
        }
        out.push_str(&render(self.result()));
        out.push('\n');
        out
    }
}

/// [`psi`] recording every level.
pub fn psi_trace(
    alpha: &Composition,
    k: usize,
    rho: &OrderedMultisetPartition,
    from: InsertionStat,
    to: InsertionStat,
) -> Result<PsiTrace> {
    check_member(alpha, k, rho)?;
    let mut levels = Vec::new();
    let mut alpha_cur = alpha.clone();
    let mut cur = rho.clone();
    loop {
        let letter = alpha_cur.len() as u32;
        let k_cur = cur.num_blocks();
        match alpha_cur.without_last() {
            None => {
                levels.push((letter, alpha_cur, k_cur, cur, None));
                break;
            }
            Some(shorter) => {
                let args = peel(from, &cur, letter)?;
                let next = args.base().clone();
                levels.push((letter, alpha_cur, k_cur, cur, Some(args)));
                alpha_cur = shorter;
                cur = next;
            }
        }
    }
    let mut rows = Vec::with_capacity(levels.len());
    let mut image: Option<OrderedMultisetPartition> = None;
    for (letter, alpha, k, partition, args) in levels.into_iter().rev() {
        let (img, peeled) = match args {
            None => (partition.clone(), None),
            Some(args) => {
                let below = image.take().expect("lower level computed first");
                let img = insert(to, &args.with_base(below)?, letter)?;
                (img, Some((args.l(), args.u().to_vec(), args.b().to_vec())))
            }
        };
        image = Some(img.clone());
        rows.push(TraceRow { letter, alpha, k, partition, peeled, image: img });
    }
    rows.reverse();
    Ok(PsiTrace { from, to, rows })
}

/// Outcome of a right-to-left-minima preservation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RlMinimaReport {
    pub checked: usize,
    pub counterexample: Option<(OrderedMultisetPartition, OrderedMultisetPartition)>,
}

impl RlMinimaReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks that the reading words of `ρ` and `ψ(ρ)` have the same
/// right-to-left minima for every `ρ ∈ osp(α, k)`.
pub fn check_rl_minima(
    alpha: &Composition,
    k: usize,
    from: InsertionStat,
    to: InsertionStat,
) -> Result<RlMinimaReport> {
    let mut checked = 0;
    for rho in crate::omp::enumerate_osp(alpha, k) {
        let image = psi(alpha, k, &rho, from, to)?;
        checked += 1;
        if rho.reading_word().rl_minima_letters() != image.reading_word().rl_minima_letters() {
            return Ok(RlMinimaReport { checked, counterexample: Some((rho, image)) });
        }
    }
    Ok(RlMinimaReport { checked, counterexample: None })
}
