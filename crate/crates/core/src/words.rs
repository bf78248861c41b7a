//! Words over the positive integers (permutations of a multiset) and the
//! classical statistics on them.
//!
//! All reported positions are 1-based: position `i` refers to the pair
//! `(w_i, w_{i+1})` when talking about descents and ascents. Equal adjacent
//! letters are neither descents nor ascents.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A composition `α = (α_1, …, α_n)`: a nonempty sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidComposition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidComposition(format!("zero part in {parts:?}")));
        }
        Ok(Composition(parts))
    }

    /// `1^n`.
    pub fn ones(n: usize) -> Self {
        assert!(n > 0);
        Composition(vec![1; n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `|α|`.
    pub fn weight(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn last(&self) -> u32 {
        *self.0.last().expect("compositions are nonempty")
    }

    pub fn max_part(&self) -> u32 {
        *self.0.iter().max().expect("compositions are nonempty")
    }

    /// `α⁻`, the composition with its last part removed. `None` for length 1.
    pub fn without_last(&self) -> Option<Composition> {
        if self.0.len() == 1 {
            None
        } else {
            Some(Composition(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    /// The multiset `{i^{α_i}}` as a sorted letter list.
    pub fn letters(&self) -> Vec<u32> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| std::iter::repeat_n(i as u32 + 1, a as usize))
            .collect()
    }

    /// Number of words in `S_α`.
    pub fn multinomial(&self) -> u128 {
        let mut acc: u128 = 1;
        let mut seen: u128 = 0;
        for &p in &self.0 {
            for j in 1..=p as u128 {
                seen += 1;
                acc = acc * seen / j;
            }
        }
        acc
    }

    /// All compositions of `weight`, in lexicographic order.
    pub fn all_of_weight(weight: usize) -> Vec<Composition> {
        fn rec(rest: usize, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
            if rest == 0 {
                out.push(Composition(cur.clone()));
                return;
            }
            for p in 1..=rest {
                cur.push(p as u32);
                rec(rest - p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if weight > 0 {
            rec(weight, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Compositions with `1 ≤ |α| ≤ max_weight` and at most `max_parts` parts.
    pub fn all_up_to(max_weight: usize, max_parts: usize) -> Vec<Composition> {
        (1..=max_weight)
            .flat_map(Composition::all_of_weight)
            .filter(|c| c.len() <= max_parts)
            .collect()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Comma-separated positive integers, e.g. `1,2,1,3`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad composition part {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

/// A finite word `w_1 … w_N` of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<u32>);

/// Statistics that can be evaluated on a (sub)word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WordStat {
    Inv,
    Maj,
    Rlmaj,
    Des,
}

impl Word {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::Parse("letters must be positive".into()));
        }
        Ok(Word(letters))
    }

    pub(crate) fn from_vec_unchecked(letters: Vec<u32>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Letter at 1-based position `i`.
    pub fn at(&self, i: usize) -> Result<u32> {
        self.check_pos(i)?;
        Ok(self.0[i - 1])
    }

    fn check_pos(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.0.len() {
            Err(Error::PositionOutOfRange { pos: i, len: self.0.len() })
        } else {
            Ok(())
        }
    }

    pub fn descent_set(&self) -> Vec<usize> {
        descents(&self.0)
    }

    pub fn ascent_set(&self) -> Vec<usize> {
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, p)| p[0] < p[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn des(&self) -> usize {
        self.0.windows(2).filter(|p| p[0] > p[1]).count()
    }

    pub fn inv(&self) -> u64 {
        inv(&self.0)
    }

    /// `|Inv^{i,□}|`: inversions whose first coordinate is `i`.
    pub fn inv_from(&self, i: usize) -> Result<u64> {
        self.check_pos(i)?;
        let x = self.0[i - 1];
        Ok(self.0[i..].iter().filter(|&&y| x > y).count() as u64)
    }

    /// `|Inv^{□,j}|`: inversions whose second coordinate is `j`.
    pub fn inv_to(&self, j: usize) -> Result<u64> {
        self.check_pos(j)?;
        Ok(inv_to(&self.0, j))
    }

    pub fn maj(&self) -> u64 {
        maj(&self.0)
    }

    /// `Σ_{i∈Des} (N − i)`.
    pub fn rlmaj(&self) -> u64 {
        let n = self.0.len();
        self.descent_set().iter().map(|&i| (n - i) as u64).sum()
    }

    pub fn stat(&self, stat: WordStat) -> u64 {
        match stat {
            WordStat::Inv => self.inv(),
            WordStat::Maj => self.maj(),
            WordStat::Rlmaj => self.rlmaj(),
            WordStat::Des => self.des() as u64,
        }
    }

    /// The contiguous subword `w_a … w_b`, renumbered from 1.
    pub fn subword(&self, a: usize, b: usize) -> Result<Word> {
        if a == 0 || a > b || b > self.0.len() {
            return Err(Error::InvalidRange { a, b, len: self.0.len() });
        }
        Ok(Word(self.0[a - 1..b].to_vec()))
    }

    /// Positions `i` with `w_i < w_j` for every `j > i`.
    pub fn rl_minima(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut min_right = u32::MAX;
        for (idx, &x) in self.0.iter().enumerate().rev() {
            if x < min_right {
                out.push(idx + 1);
                min_right = x;
            }
        }
        out.reverse();
        out
    }

    /// The letters at the right-to-left minima, left to right.
    pub fn rl_minima_letters(&self) -> Vec<u32> {
        self.rl_minima().into_iter().map(|i| self.0[i - 1]).collect()
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Complement with respect to the alphabet `[1, max]`: `x ↦ max + 1 − x`.
    pub fn complement(&self, max: u32) -> Word {
        Word(self.0.iter().map(|&x| max + 1 - x).collect())
    }

    /// Letter multiplicities `(#1, #2, …, #max)`.
    pub fn content(&self, max: u32) -> Vec<u32> {
        let mut c = vec![0; max as usize];
        for &x in &self.0 {
            if x <= max {
                c[x as usize - 1] += 1;
            }
        }
        c
    }

    pub fn max_letter(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

/// Evaluates `stat` on `w_a … w_b`.
pub fn restricted_stat(stat: WordStat, w: &Word, a: usize, b: usize) -> Result<u64> {
    Ok(w.subword(a, b)?.stat(stat))
}

pub(crate) fn descents(w: &[u32]) -> Vec<usize> {
    w.windows(2)
        .enumerate()
        .filter(|(_, p)| p[0] > p[1])
        .map(|(i, _)| i + 1)
        .collect()
}

pub(crate) fn maj(w: &[u32]) -> u64 {
    w.windows(2)
        .enumerate()
        .filter(|(_, p)| p[0] > p[1])
        .map(|(i, _)| (i + 1) as u64)
        .sum()
}

pub(crate) fn inv(w: &[u32]) -> u64 {
    let mut count = 0;
    for (i, &x) in w.iter().enumerate() {
        count += w[i + 1..].iter().filter(|&&y| x > y).count() as u64;
    }
    count
}

/// 1-based `j`; caller guarantees range.
pub(crate) fn inv_to(w: &[u32], j: usize) -> u64 {
    let y = w[j - 1];
    w[..j - 1].iter().filter(|&&x| x > y).count() as u64
}

pub(crate) fn render_letters(letters: &[u32]) -> String {
    if letters.iter().all(|&l| l <= 9) {
        letters.iter().map(u32::to_string).collect()
    } else {
        letters.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    }
}

pub(crate) fn parse_letters(s: &str, comma_mode: bool) -> Result<Vec<u32>> {
    let letters: Vec<u32> = if comma_mode {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad letter {t:?}")))
            })
            .collect::<Result<_>>()?
    } else {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| Error::Parse(format!("bad letter {c:?}")))
            })
            .collect::<Result<_>>()?
    };
    if letters.contains(&0) {
        return Err(Error::Parse("letters must be positive".into()));
    }
    Ok(letters)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_letters(&self.0))
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::default());
        }
        Ok(Word(parse_letters(s, s.contains(','))?))
    }
}

/// Lexicographic stream over `S_α`.
pub struct WordEnumerator {
    next: Option<Vec<u32>>,
}

impl Iterator for WordEnumerator {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Word(current))
    }
}

/// Every permutation of `{i^{α_i}}` exactly once, lexicographically.
pub fn enumerate_words(alpha: &Composition) -> WordEnumerator {
    WordEnumerator { next: Some(alpha.letters()) }
}

/// All words of length `n` over `[1, alphabet]`, lexicographically.
pub fn all_words(n: usize, alphabet: u32) -> impl Iterator<Item = Word> {
    let total = (alphabet as u64).pow(n as u32);
    (0..total).map(move |idx| word_from_index(idx, n, alphabet))
}

pub(crate) fn word_from_index(mut idx: u64, n: usize, alphabet: u32) -> Word {
    let mut letters = vec![1u32; n];
    for slot in letters.iter_mut().rev() {
        *slot = (idx % alphabet as u64) as u32 + 1;
        idx /= alphabet as u64;
    }
    Word(letters)
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn descents_and_ascents() {
        assert_eq!(w("5167324").descent_set(), vec![1, 4, 5]);
        assert!(w("123").descent_set().is_empty());
        let x = w("2211");
        assert_eq!(x.descent_set(), vec![2]);
        assert!(x.ascent_set().is_empty());
        let y = w("1221");
        assert_eq!(y.ascent_set(), vec![1]);
        assert_eq!(y.descent_set(), vec![3]);
    }

    #[test]
    fn inversion_counts() {
        assert_eq!(w("52143").inv(), 6);
        assert_eq!(w("12345").inv(), 0);
        let x = w("61748");
        assert_eq!(x.inv_to(3).unwrap(), 0);
        assert_eq!(x.inv_to(4).unwrap(), 2);
        assert_eq!(x.inv_from(1).unwrap(), 2);
        assert!(x.inv_to(6).is_err());
        assert!(x.inv_from(0).is_err());
    }

    #[test]
    fn major_index() {
        assert_eq!(w("32431413").maj(), 14);
        assert_eq!(w("112233").maj(), 0);
        assert_eq!(w("24153").maj(), 6);
        assert_eq!(w("5167324").rlmaj(), 6 + 3 + 2);
    }

    #[test]
    fn restricted_statistics() {
        let x = w("25361748");
        assert_eq!(restricted_stat(WordStat::Maj, &x, 1, 4).unwrap(), 2);
        assert_eq!(restricted_stat(WordStat::Inv, &x, 4, 8).unwrap(), 3);
        assert_eq!(restricted_stat(WordStat::Inv, &x, 1, 8).unwrap(), x.inv());
        assert!(restricted_stat(WordStat::Inv, &x, 5, 4).is_err());
        assert!(restricted_stat(WordStat::Inv, &x, 0, 4).is_err());
        assert!(restricted_stat(WordStat::Inv, &x, 2, 9).is_err());
    }

    #[test]
    fn word_enumeration() {
        let got: Vec<String> = enumerate_words(&Composition::new(vec![1, 1]).unwrap())
            .map(|w| w.to_string())
            .collect();
        assert_eq!(got, ["12", "21"]);
        let got: Vec<String> = enumerate_words(&Composition::new(vec![2, 1]).unwrap())
            .map(|w| w.to_string())
            .collect();
        assert_eq!(got, ["112", "121", "211"]);
        let alpha = Composition::new(vec![1, 2, 1, 3]).unwrap();
        assert_eq!(enumerate_words(&alpha).count(), 420);
        assert_eq!(alpha.multinomial(), 420);
    }

    #[test]
    fn right_to_left_minima() {
        assert_eq!(w("52143").rl_minima(), vec![3, 5]);
        assert_eq!(w("54321").rl_minima(), vec![5]);
        assert_eq!(w("12345").rl_minima(), vec![1, 2, 3, 4, 5]);
        assert_eq!(w("24153").rl_minima(), vec![3, 5]);
        // equal letters are not strictly smaller
        assert_eq!(w("2112").rl_minima(), vec![3, 4]);
    }

    #[test]
    fn serialization() {
        assert_eq!(w("52143").to_string(), "52143");
        let big = Word::new(vec![11, 3, 2]).unwrap();
        assert_eq!(big.to_string(), "11,3,2");
        assert_eq!("11,3,2".parse::<Word>().unwrap(), big);
        assert!("1a2".parse::<Word>().is_err());
        assert!("102".parse::<Word>().is_err());
    }

    #[test]
    fn compositions() {
        assert_eq!(Composition::all_of_weight(4).len(), 8);
        assert_eq!(Composition::all_up_to(8, 4).len(), 1 + 2 + 4 + 8 + 15 + 26 + 42 + 64);
        assert!(Composition::new(vec![]).is_err());
        assert!(Composition::new(vec![1, 0]).is_err());
        let a: Composition = "1,2,1,3".parse().unwrap();
        assert_eq!(a.weight(), 7);
        assert_eq!(a.without_last().unwrap().parts(), &[1, 2, 1]);
        assert_eq!(a.to_string(), "1,2,1,3");
    }
}
