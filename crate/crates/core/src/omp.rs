//! Ordered multiset partitions, their descent-starred permutation form, and
//! the statistics `inv`, `maj`, `dinv` and `minimaj`.
//!
//! An ordered multiset partition of `A(α) = {i^{α_i}}` into `k` blocks is an
//! ordered list of nonempty *sets* whose union (with multiplicity) is `A(α)`.
//! Blocks are stored sorted increasingly. The starred form writes every block
//! decreasingly and marks the descents that glue letters of one block.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::words::{self, enumerate_words, Composition, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedMultisetPartition {
    blocks: Vec<Vec<u32>>,
}

impl OrderedMultisetPartition {
    /// Builds a partition from blocks given in any order; each block must be a
    /// nonempty set of positive letters.
    pub fn new(blocks: Vec<Vec<u32>>) -> Result<Self> {
        let mut out = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            if b.contains(&0) {
                return Err(Error::InvalidPartition("letters must be positive".into()));
            }
            b.sort_unstable();
            if b.windows(2).any(|p| p[0] == p[1]) {
                return Err(Error::InvalidPartition(format!(
                    "repeated letter inside block {b:?}"
                )));
            }
            out.push(b);
        }
        Ok(OrderedMultisetPartition { blocks: out })
    }

    pub(crate) fn from_sorted_blocks(blocks: Vec<Vec<u32>>) -> Self {
        debug_assert!(blocks
            .iter()
            .all(|b| !b.is_empty() && b.windows(2).all(|p| p[0] < p[1])));
        OrderedMultisetPartition { blocks }
    }

    /// The partition with no blocks (content `∅`).
    pub fn empty() -> Self {
        OrderedMultisetPartition { blocks: Vec::new() }
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Total number of letters.
    pub fn size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn max_letter(&self) -> u32 {
        self.blocks
            .iter()
            .filter_map(|b| b.last().copied())
            .max()
            .unwrap_or(0)
    }

    /// Letter multiplicities `(#1, …, #max)`.
    pub fn content(&self) -> Vec<u32> {
        let mut c = vec![0u32; self.max_letter() as usize];
        for b in &self.blocks {
            for &x in b {
                c[x as usize - 1] += 1;
            }
        }
        c
    }

    /// True when the content is exactly `α` and there are `k` blocks.
    pub fn is_in(&self, alpha: &Composition, k: usize) -> bool {
        self.blocks.len() == k && self.content() == alpha.parts()
    }

    /// The composition of block sizes, left to right.
    pub fn shape(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// `σ(π)`: blocks written decreasingly, concatenated.
    pub fn reading_word(&self) -> Word {
        Word::from_vec_unchecked(
            self.blocks
                .iter()
                .flat_map(|b| b.iter().rev().copied())
                .collect(),
        )
    }

    pub fn to_starred(&self) -> StarredPermutation {
        let mut stars = BTreeSet::new();
        let mut pos = 0;
        for b in &self.blocks {
            for _ in 1..b.len() {
                pos += 1;
                stars.insert(pos);
            }
            pos += 1;
        }
        StarredPermutation { word: self.reading_word(), stars }
    }

    pub fn from_starred(sp: &StarredPermutation) -> Result<Self> {
        sp.validate()?;
        Ok(sp.to_partition())
    }

    /// Pairs `(a, b)`, `a > b`, with `a` in a block strictly left of `b`'s block
    /// and `b` minimal in its block. Occurrences count with multiplicity.
    pub fn inv(&self) -> u64 {
        let mut count = 0u64;
        for (j, bj) in self.blocks.iter().enumerate() {
            let b = bj[0];
            for bi in &self.blocks[..j] {
                count += bi.iter().filter(|&&a| a > b).count() as u64;
            }
        }
        count
    }

    /// Primary triples `π_i^h > π_j^h` plus secondary triples
    /// `π_i^h < π_j^{h+1}`, over `i < j`, heights counted from 1.
    pub fn dinv(&self) -> u64 {
        let mut count = 0u64;
        for (i, bi) in self.blocks.iter().enumerate() {
            for bj in &self.blocks[i + 1..] {
                for (h, &x) in bi.iter().enumerate() {
                    if let Some(&y) = bj.get(h) {
                        if x > y {
                            count += 1;
                        }
                    }
                    if let Some(&y) = bj.get(h + 1) {
                        if x < y {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    /// Major index via the weight word: `w_0 = 0`, `w_i` increments when
    /// `σ_i` is the minimum of its block, and `maj = Σ_{σ_i > σ_{i+1}} w_i`.
    pub fn maj(&self) -> u64 {
        let sigma: Vec<u32> = self.reading_word().into_letters();
        let mut weights = Vec::with_capacity(sigma.len());
        let mut w = 0u64;
        for b in &self.blocks {
            for idx in (0..b.len()).rev() {
                if idx == 0 {
                    w += 1;
                }
                weights.push(w);
            }
        }
        sigma
            .windows(2)
            .zip(&weights)
            .filter(|(p, _)| p[0] > p[1])
            .map(|(_, &w)| w)
            .sum()
    }

    /// Major index computed from the starred form:
    /// `maj(σ) − Σ_{i∈S} |Des(σ) ∩ [i, ∞)|`.
    pub fn maj_starred(&self) -> u64 {
        self.to_starred().maj()
    }

    /// The block reading word `τ(π)` whose major index is `minimaj(π)`.
    pub fn minimaj_word(&self) -> Word {
        let k = self.blocks.len();
        let mut pieces: Vec<Vec<u32>> = vec![Vec::new(); k];
        for i in (0..k).rev() {
            let block = &self.blocks[i];
            if i + 1 == k {
                pieces[i] = block.clone();
                continue;
            }
            let leftmost = pieces[i + 1][0];
            // split point: first element exceeding `leftmost`
            let cut = block.partition_point(|&x| x <= leftmost);
            pieces[i] = if cut == 0 {
                block.clone()
            } else {
                block[cut..].iter().chain(&block[..cut]).copied().collect()
            };
        }
        Word::from_vec_unchecked(pieces.concat())
    }

    pub fn minimaj(&self) -> u64 {
        self.minimaj_word().maj()
    }

    pub fn stat(&self, stat: OmpStat) -> u64 {
        match stat {
            OmpStat::Inv => self.inv(),
            OmpStat::Maj => self.maj(),
            OmpStat::Dinv => self.dinv(),
            OmpStat::Minimaj => self.minimaj(),
        }
    }
}

/// The four statistics on ordered multiset partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OmpStat {
    Inv,
    Maj,
    Dinv,
    Minimaj,
}

impl OmpStat {
    pub const ALL: [OmpStat; 4] = [OmpStat::Inv, OmpStat::Maj, OmpStat::Dinv, OmpStat::Minimaj];

    pub fn name(self) -> &'static str {
        match self {
            OmpStat::Inv => "inv",
            OmpStat::Maj => "maj",
            OmpStat::Dinv => "dinv",
            OmpStat::Minimaj => "minimaj",
        }
    }
}

impl fmt::Display for OmpStat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OmpStat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inv" => Ok(OmpStat::Inv),
            "maj" => Ok(OmpStat::Maj),
            "dinv" => Ok(OmpStat::Dinv),
            "minimaj" => Ok(OmpStat::Minimaj),
            _ => Err(Error::Parse(format!("unknown statistic {s:?}"))),
        }
    }
}

fn uses_commas(letters: impl IntoIterator<Item = u32>) -> bool {
    letters.into_iter().any(|l| l > 9)
}

impl fmt::Display for OrderedMultisetPartition {
    /// Bar form: blocks increasing, separated by `|`, e.g. `24|134|2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let commas = uses_commas(self.blocks.iter().flatten().copied());
        let rendered: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                if commas {
                    b.iter().map(u32::to_string).join(",")
                } else {
                    b.iter().map(u32::to_string).collect()
                }
            })
            .collect();
        f.write_str(&rendered.join("|"))
    }
}

impl FromStr for OrderedMultisetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(OrderedMultisetPartition::empty());
        }
        let commas = s.contains(',');
        let blocks = s
            .split('|')
            .map(|b| words::parse_letters(b.trim(), commas))
            .collect::<Result<Vec<_>>>()?;
        OrderedMultisetPartition::new(blocks)
    }
}

/// A word together with a subset of its descents ("stars").
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StarredPermutation {
    word: Word,
    stars: BTreeSet<usize>,
}

impl StarredPermutation {
    pub fn new(word: Word, stars: impl IntoIterator<Item = usize>) -> Result<Self> {
        let sp = StarredPermutation { word, stars: stars.into_iter().collect() };
        sp.validate()?;
        Ok(sp)
    }

    pub(crate) fn from_parts_unchecked(word: Vec<u32>, stars: BTreeSet<usize>) -> Self {
        StarredPermutation { word: Word::from_vec_unchecked(word), stars }
    }

    fn validate(&self) -> Result<()> {
        let w = self.word.letters();
        for &s in &self.stars {
            if s == 0 || s >= w.len() || w[s - 1] <= w[s] {
                return Err(Error::StarNotDescent(s));
            }
        }
        Ok(())
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn stars(&self) -> &BTreeSet<usize> {
        &self.stars
    }

    pub fn num_blocks(&self) -> usize {
        self.word.len() - self.stars.len()
    }

    pub fn to_partition(&self) -> OrderedMultisetPartition {
        let mut blocks = Vec::new();
        let mut cur = Vec::new();
        for (idx, &x) in self.word.letters().iter().enumerate() {
            cur.push(x);
            if !self.stars.contains(&(idx + 1)) {
                cur.reverse();
                blocks.push(std::mem::take(&mut cur));
            }
        }
        OrderedMultisetPartition::from_sorted_blocks(blocks)
    }

    /// `maj(σ) − Σ_{i∈S} |Des(σ) ∩ [i, ∞)|`.
    pub fn maj(&self) -> u64 {
        let des = self.word.descent_set();
        let base = self.word.maj();
        let correction: u64 = self
            .stars
            .iter()
            .map(|&s| des.iter().filter(|&&d| d >= s).count() as u64)
            .sum();
        base - correction
    }

    /// `rlmaj(σ) − Σ_{i∈S} |Des(σ) ∩ [1, i]|`.
    pub fn rlmaj(&self) -> u64 {
        let des = self.word.descent_set();
        let base = self.word.rlmaj();
        let correction: u64 = self
            .stars
            .iter()
            .map(|&s| des.iter().filter(|&&d| d <= s).count() as u64)
            .sum();
        base - correction
    }

    /// Compact rendering: letters with `*` after each starred letter, e.g.
    /// `4*24*3*12` (comma separated when a letter exceeds 9).
    pub fn to_compact_string(&self) -> String {
        let letters = self.word.letters();
        let commas = uses_commas(letters.iter().copied());
        let mut out = String::new();
        for (idx, &x) in letters.iter().enumerate() {
            if idx > 0 && commas && !self.stars.contains(&idx) {
                out.push(',');
            }
            out.push_str(&x.to_string());
            if self.stars.contains(&(idx + 1)) {
                out.push('*');
            }
        }
        out
    }

    /// Parses the compact rendering produced by [`Self::to_compact_string`].
    pub fn parse_compact(s: &str) -> Result<Self> {
        let s = s.trim();
        let commas = s.contains(',');
        let mut letters = Vec::new();
        let mut stars = BTreeSet::new();
        if commas {
            for group in s.split(',') {
                let parts: Vec<&str> = group.split('*').collect();
                for (i, p) in parts.iter().enumerate() {
                    if p.is_empty() {
                        if i + 1 == parts.len() && i > 0 {
                            continue;
                        }
                        return Err(Error::Parse(format!("bad starred word {s:?}")));
                    }
                    if i > 0 {
                        stars.insert(letters.len());
                    }
                    letters.push(
                        p.parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad letter {p:?}")))?,
                    );
                }
            }
        } else {
            for c in s.chars() {
                if c == '*' {
                    if letters.is_empty() {
                        return Err(Error::Parse(format!("bad starred word {s:?}")));
                    }
                    stars.insert(letters.len());
                } else {
                    letters.push(
                        c.to_digit(10)
                            .ok_or_else(|| Error::Parse(format!("bad letter {c:?}")))?,
                    );
                }
            }
        }
        StarredPermutation::new(Word::new(letters)?, stars)
    }
}

impl fmt::Display for StarredPermutation {
    /// Canonical starred form, e.g. `4*2 4*3*1 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (idx, &x) in self.word.letters().iter().enumerate() {
            if idx > 0 {
                out.push(if self.stars.contains(&idx) { '*' } else { ' ' });
            }
            out.push_str(&x.to_string());
        }
        f.write_str(&out)
    }
}

impl FromStr for StarredPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut stars = BTreeSet::new();
        for token in s.split_whitespace() {
            for (i, p) in token.split('*').enumerate() {
                if i > 0 {
                    stars.insert(letters.len());
                }
                letters.push(
                    p.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad letter {p:?}")))?,
                );
            }
        }
        StarredPermutation::new(Word::new(letters)?, stars)
    }
}

/// Every element of `osp(α, k)` exactly once, ordered lexicographically by
/// starred form (word first, then star positions). Empty when `k` is out of
/// range.
pub fn enumerate_osp(
    alpha: &Composition,
    k: usize,
) -> impl Iterator<Item = OrderedMultisetPartition> {
    let weight = alpha.weight();
    let in_range = k >= alpha.max_part() as usize && k <= weight;
    let n_stars = weight.saturating_sub(k);
    let words: Box<dyn Iterator<Item = Word>> = if in_range {
        Box::new(enumerate_words(alpha))
    } else {
        Box::new(std::iter::empty())
    };
    words.flat_map(move |w| {
        let des = w.descent_set();
        let letters = w.into_letters();
        des.into_iter()
            .combinations(n_stars)
            .map(move |stars| {
                StarredPermutation::from_parts_unchecked(
                    letters.clone(),
                    stars.into_iter().collect(),
                )
                .to_partition()
            })
    })
}

/// Valid block counts for `α`: `max α_i ≤ k ≤ |α|`.
pub fn block_range(alpha: &Composition) -> std::ops::RangeInclusive<usize> {
    alpha.max_part() as usize..=alpha.weight()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> OrderedMultisetPartition {
        s.parse().unwrap()
    }

    #[test]
    fn starred_form_example() {
        let sp = p("24|134|2").to_starred();
        assert_eq!(sp.word().to_string(), "424312");
        assert_eq!(sp.stars().iter().copied().collect::<Vec<_>>(), vec![1, 3, 4]);
        assert_eq!(sp.to_string(), "4*2 4*3*1 2");
        assert_eq!(sp.to_compact_string(), "4*24*3*12");
        assert_eq!(OrderedMultisetPartition::from_starred(&sp).unwrap(), p("24|134|2"));
        assert_eq!("4*2 4*3*1 2".parse::<StarredPermutation>().unwrap(), sp);
        assert_eq!(StarredPermutation::parse_compact("4*24*3*12").unwrap(), sp);
    }

    #[test]
    fn singletons_have_no_stars() {
        let sp = p("3|1|2").to_starred();
        assert!(sp.stars().is_empty());
        assert_eq!(sp.num_blocks(), 3);
    }

    #[test]
    fn star_must_sit_on_descent() {
        let w: Word = "123".parse().unwrap();
        assert_eq!(StarredPermutation::new(w.clone(), [1]), Err(Error::StarNotDescent(1)));
        assert!(StarredPermutation::new(w, [3]).is_err());
        assert!("2*2".parse::<StarredPermutation>().is_err());
    }

    #[test]
    fn invalid_blocks_rejected() {
        assert!("11|2".parse::<OrderedMultisetPartition>().is_err());
        assert!(OrderedMultisetPartition::new(vec![vec![]]).is_err());
        assert!("1||2".parse::<OrderedMultisetPartition>().is_err());
    }

    #[test]
    fn inv_examples() {
        assert_eq!(p("15|23|4").inv(), 2);
        assert_eq!(p("1234").inv(), 0);
        assert_eq!(p("3|1|2|2|13").inv(), 6);
    }

    #[test]
    fn dinv_examples() {
        assert_eq!(p("24|134|2").dinv(), 3);
        assert_eq!(p("123").dinv(), 0);
    }

    #[test]
    fn maj_examples() {
        assert_eq!(p("24|134|2").maj(), 2);
        assert_eq!(p("24|134|2").maj_starred(), 2);
        let sp: StarredPermutation = "3 1 2 2 3*1".parse().unwrap();
        assert_eq!(sp.maj(), 5);
        assert_eq!(sp.to_partition().maj(), 5);
        let singles = p("5|2|1|4|3");
        assert_eq!(singles.maj(), singles.reading_word().maj());
    }

    #[test]
    fn minimaj_examples() {
        let pi = p("13|23|14|234");
        assert_eq!(pi.minimaj_word().to_string(), "312341234");
        assert_eq!(pi.minimaj(), 6);
    }

    #[test]
    fn shapes() {
        assert_eq!(p("13|23|14|234").shape(), vec![2, 2, 2, 3]);
        assert_eq!(p("2|1|3").shape(), vec![1, 1, 1]);
        assert_eq!(p("24|134|2").shape(), vec![2, 3, 1]);
    }

    #[test]
    fn enumeration_small_cases() {
        let a11 = Composition::new(vec![1, 1]).unwrap();
        let k1: Vec<String> = enumerate_osp(&a11, 1).map(|p| p.to_string()).collect();
        assert_eq!(k1, ["12"]);
        let k2: Vec<String> = enumerate_osp(&a11, 2).map(|p| p.to_string()).collect();
        assert_eq!(k2, ["1|2", "2|1"]);
        assert_eq!(enumerate_osp(&Composition::ones(3), 2).count(), 6);
        assert_eq!(enumerate_osp(&a11, 3).count(), 0);
        assert_eq!(enumerate_osp(&Composition::new(vec![2, 1]).unwrap(), 1).count(), 0);
    }

    #[test]
    fn large_letters_use_commas() {
        let pi = OrderedMultisetPartition::new(vec![vec![3, 11], vec![2]]).unwrap();
        assert_eq!(pi.to_string(), "3,11|2");
        assert_eq!("3,11|2".parse::<OrderedMultisetPartition>().unwrap(), pi);
        let sp = pi.to_starred();
        assert_eq!(sp.to_string(), "11*3 2");
        assert_eq!(sp.to_compact_string(), "11*3,2");
        assert_eq!(StarredPermutation::parse_compact("11*3,2").unwrap(), sp);
    }
}
