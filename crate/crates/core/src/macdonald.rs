//! Starred Macdonald polynomials of hook shape `H̃_{n,m}(x; q,t,u,v)`.
//!
//! A filling of the hook `(n−m, 1^m)` is a word `σ ∈ [N]^n`: the column,
//! read upward, is `σ_1 … σ_{m+1}` (its last letter is the corner) and the
//! row is `σ_{m+1} … σ_n`. The column contributes `t^{maj}` with one factor
//! `(1 + v t^{−j})` per column descent; the row contributes `q^{inv}` with a
//! factor `(1 + u q^{−(inv_to(i)+1)})` per row descent `i`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::omp::StarredPermutation;
use crate::qpoly::{one_plus_over, LaurentPolynomial};
use crate::words::{self, Word};

const QTUV: [&str; 4] = ["q", "t", "u", "v"];

/// Name of the `i`-th alphabet variable (1-based).
pub fn x_var(i: usize) -> String {
    format!("x_{i}")
}

fn x_vars(num_x: usize) -> Vec<String> {
    (1..=num_x).map(x_var).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// The hook `(n−m, 1^m)`.
    pub fn hook(n: usize, m: usize) -> Result<Self> {
        if m >= n {
            return Err(Error::InvalidParameters(format!("need m < n, got n={n}, m={m}")));
        }
        let mut parts = vec![(n - m) as u32];
        parts.extend(std::iter::repeat_n(1, m));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition((1..=first).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// Partitions of `n` in reverse lexicographic order, `(n)` first.
    pub fn all_of(n: usize) -> Vec<Partition> {
        fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n as u32, n as u32, &mut Vec::new(), &mut out);
        out
    }

    /// `self ≥ other` in dominance order (same weight assumed).
    pub fn dominates(&self, other: &Partition) -> bool {
        let mut a = 0;
        let mut b = 0;
        for i in 0..self.len().max(other.len()) {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|e| Error::Parse(format!("{p:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// A filling of a Young diagram in French convention: `rows[0]` is the
/// bottom row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let shape: Vec<u32> = rows.iter().map(|r| r.len() as u32).collect();
        Partition::new(shape)?;
        Ok(Tableau { rows })
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition(self.rows.iter().map(|r| r.len() as u32).collect())
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_semistandard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self
            .rows
            .windows(2)
            .all(|pair| pair[1].iter().zip(&pair[0]).all(|(up, down)| up > down));
        rows_ok && cols_ok
    }

    pub fn is_standard(&self) -> bool {
        let mut all: Vec<u32> = self.rows.iter().flatten().copied().collect();
        all.sort_unstable();
        self.is_semistandard() && all.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    fn row_of(&self) -> Vec<usize> {
        let mut row = vec![0; self.size() + 1];
        for (r, entries) in self.rows.iter().enumerate() {
            for &x in entries {
                row[x as usize] = r;
            }
        }
        row
    }

    /// `{i : i+1 lies in a higher row than i}` for a standard tableau.
    pub fn descents(&self) -> Vec<usize> {
        let row = self.row_of();
        (1..self.size()).filter(|&i| row[i + 1] > row[i]).collect()
    }

    pub fn maj(&self) -> u64 {
        self.descents().iter().map(|&i| i as u64).sum()
    }

    pub fn rlmaj(&self) -> u64 {
        let n = self.size();
        self.descents().iter().map(|&i| (n - i) as u64).sum()
    }

    pub fn content(&self, max: u32) -> Vec<u32> {
        let mut c = vec![0; max as usize];
        for &x in self.rows.iter().flatten() {
            if x >= 1 && x <= max {
                c[x as usize - 1] += 1;
            }
        }
        c
    }
}

impl fmt::Display for Tableau {
    /// Rows from top to bottom, one per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self
            .rows
            .iter()
            .rev()
            .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        f.write_str(&lines.join("\n"))
    }
}

/// All standard Young tableaux of shape `λ`.
pub fn enumerate_syt(lambda: &Partition) -> Vec<Tableau> {
    fn rec(shape: &[u32], next: u32, n: u32, rows: &mut Vec<Vec<u32>>, out: &mut Vec<Tableau>) {
        if next > n {
            out.push(Tableau { rows: rows.clone() });
            return;
        }
        for r in 0..shape.len() {
            let len = rows[r].len();
            if len < shape[r] as usize && (r == 0 || rows[r - 1].len() > len) {
                rows[r].push(next);
                rec(shape, next + 1, n, rows, out);
                rows[r].pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut rows = vec![Vec::new(); lambda.len()];
    rec(lambda.parts(), 1, lambda.weight() as u32, &mut rows, &mut out);
    out
}

/// All semistandard tableaux of shape `λ` with entries in `[1, max_entry]`.
pub fn enumerate_ssyt(lambda: &Partition, max_entry: u32) -> Vec<Tableau> {
    let cells: Vec<(usize, usize)> = lambda
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    fn rec(cells: &[(usize, usize)], idx: usize, max: u32, rows: &mut Vec<Vec<u32>>, out: &mut Vec<Tableau>) {
        let Some(&(r, c)) = cells.get(idx) else {
            out.push(Tableau { rows: rows.clone() });
            return;
        };
        let left = if c > 0 { rows[r][c - 1] } else { 1 };
        let below = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
        for x in left.max(below)..=max {
            rows[r].push(x);
            rec(cells, idx + 1, max, rows, out);
            rows[r].pop();
        }
    }
    let mut out = Vec::new();
    let mut rows = vec![Vec::new(); lambda.len()];
    rec(&cells, 0, max_entry, &mut rows, &mut out);
    out
}

/// Kostka number `K_{λ,μ}`: semistandard tableaux of shape `λ` and content
/// `μ`, counted by peeling horizontal strips. Zero parts of `μ` are allowed.
pub fn kostka(lambda: &Partition, mu: &[u32]) -> u64 {
    if lambda.weight() != mu.iter().map(|&x| x as usize).sum::<usize>() {
        return 0;
    }
    let mut memo = HashMap::new();
    kostka_rec(lambda.parts(), mu, &mut memo)
}

fn kostka_rec(shape: &[u32], mu: &[u32], memo: &mut HashMap<(Vec<u32>, usize), u64>) -> u64 {
    let Some((&last, rest)) = mu.split_last() else {
        return u64::from(shape.iter().all(|&p| p == 0));
    };
    let key = (shape.to_vec(), mu.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    // ν with λ_{i+1} ≤ ν_i ≤ λ_i removing exactly `last` cells
    let mut total = 0;
    let mut nu = shape.to_vec();
    strips(shape, 0, last, &mut nu, &mut |nu| total += kostka_rec(nu, rest, memo));
    memo.insert(key, total);
    total
}

fn strips(shape: &[u32], i: usize, remaining: u32, nu: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if i == shape.len() {
        if remaining == 0 {
            f(nu);
        }
        return;
    }
    let floor = shape.get(i + 1).copied().unwrap_or(0);
    let max_remove = (shape[i] - floor).min(remaining);
    for take in 0..=max_remove {
        nu[i] = shape[i] - take;
        strips(shape, i + 1, remaining - take, nu, f);
    }
    nu[i] = shape[i];
}

/// `s_λ(x_1, …, x_N)` by semistandard tableau enumeration.
pub fn schur_polynomial(lambda: &Partition, num_x: usize) -> LaurentPolynomial {
    let vars = x_vars(num_x);
    let mut terms: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
    for t in enumerate_ssyt(lambda, num_x as u32) {
        let e = t.content(num_x as u32).into_iter().map(i64::from).collect();
        *terms.entry(e).or_default() += 1;
    }
    LaurentPolynomial::from_parts(vars, terms)
}

/// Monomial symmetric polynomial `m_λ(x_1, …, x_N)`.
pub fn monomial_symmetric(lambda: &Partition, num_x: usize) -> LaurentPolynomial {
    let mut exps: Vec<i64> = lambda.parts().iter().map(|&p| i64::from(p)).collect();
    if exps.len() > num_x {
        return LaurentPolynomial::zero();
    }
    exps.resize(num_x, 0);
    exps.sort_unstable();
    let mut terms = BTreeMap::new();
    loop {
        terms.insert(exps.clone(), BigInt::from(1));
        if !next_permutation(&mut exps) {
            break;
        }
    }
    LaurentPolynomial::from_parts(x_vars(num_x), terms)
}

fn next_permutation(v: &mut [i64]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Statistics of one filling that determine its weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct WeightKey {
    q: i64,
    t: i64,
    col_des: usize,
    /// exponents `i` of the factors `(1 + u q^{−i})`
    row_marks: Vec<i64>,
}

impl WeightKey {
    fn poly(&self) -> LaurentPolynomial {
        let mut p = LaurentPolynomial::monomial(&[("q", self.q), ("t", self.t)], 1);
        for &i in &self.row_marks {
            p = &p * &one_plus_over("u", "q", i);
        }
        for j in 1..=self.col_des {
            p = &p * &one_plus_over("v", "t", j as i64);
        }
        p.with_vars(&QTUV)
    }
}

fn check_hook(n: usize, m: usize, num_x: usize) -> Result<u64> {
    if n == 0 || m >= n {
        return Err(Error::InvalidParameters(format!("need 0 ≤ m < n, got n={n}, m={m}")));
    }
    if num_x == 0 {
        return Err(Error::InvalidParameters("need at least one x variable".into()));
    }
    (num_x as u64)
        .checked_pow(n as u32)
        .filter(|&c| c <= 1 << 32)
        .ok_or_else(|| Error::InvalidParameters(format!("{num_x}^{n} fillings is too many")))
}

fn column_stats(col: &[u32]) -> (i64, usize) {
    let des = words::descents(col);
    (des.iter().sum::<usize>() as i64, des.len())
}

fn inv_weight(word: &[u32], m: usize) -> WeightKey {
    let (t, col_des) = column_stats(&word[..=m]);
    let row = &word[m..];
    let mut row_marks: Vec<i64> = words::descents(row)
        .iter()
        .map(|&i| words::inv_to(row, i) as i64 + 1)
        .collect();
    row_marks.sort_unstable();
    WeightKey { q: words::inv(row) as i64, t, col_des, row_marks }
}

fn rlmaj_weight(word: &[u32], m: usize) -> WeightKey {
    let (t, col_des) = column_stats(&word[..=m]);
    let row = &word[m..];
    let des = words::descents(row);
    let q = des.iter().map(|&i| (row.len() - i) as i64).sum();
    WeightKey { q, t, col_des, row_marks: (1..=des.len() as i64).collect() }
}

/// Sums `weight(σ) x^σ` over all `σ ∈ [N]^n` in parallel.
fn word_sum(n: usize, num_x: usize, count: u64, weight: fn(&[u32], usize) -> WeightKey, m: usize) -> LaurentPolynomial {
    type Groups = HashMap<WeightKey, HashMap<Vec<u8>, u64>>;
    let chunk = 4096u64;
    let chunks = count.div_ceil(chunk);
    let groups: Groups = (0..chunks)
        .into_par_iter()
        .fold(Groups::new, |mut acc, c| {
            for idx in c * chunk..((c + 1) * chunk).min(count) {
                let w = words::word_from_index(idx, n, num_x as u32);
                let mut content = vec![0u8; num_x];
                for &x in w.letters() {
                    content[x as usize - 1] += 1;
                }
                *acc.entry(weight(w.letters(), m)).or_default().entry(content).or_default() += 1;
            }
            acc
        })
        .reduce(Groups::new, |mut a, b| {
            for (key, contents) in b {
                let slot = a.entry(key).or_default();
                for (c, k) in contents {
                    *slot.entry(c).or_default() += k;
                }
            }
            a
        });
    let mut vars: Vec<String> = QTUV.iter().map(|v| v.to_string()).collect();
    vars.extend(x_vars(num_x));
    let mut keys: Vec<&WeightKey> = groups.keys().collect();
    keys.sort();
    let mut terms: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
    for key in keys {
        let w = key.poly();
        for (e, c) in w.terms() {
            for (content, k) in &groups[key] {
                let mut exps = e.to_vec();
                exps.extend(content.iter().map(|&x| i64::from(x)));
                *terms.entry(exps).or_default() += c * BigInt::from(*k);
            }
        }
    }
    LaurentPolynomial::from_parts(vars, terms)
}

/// `H̃_{n,m}(x_1, …, x_N; q, t, u, v)` by summing over all fillings.
pub fn hmac_monomial(n: usize, m: usize, num_x: usize) -> Result<LaurentPolynomial> {
    let count = check_hook(n, m, num_x)?;
    Ok(word_sum(n, num_x, count, inv_weight, m))
}

/// The same sum with the row weighted by `q^{rlmaj} Π_{i=1}^{des}(1 + u q^{−i})`.
/// Every weight depends only on the descent set of the filling.
pub fn hmac_rlmaj_form(n: usize, m: usize, num_x: usize) -> Result<LaurentPolynomial> {
    let count = check_hook(n, m, num_x)?;
    Ok(word_sum(n, num_x, count, rlmaj_weight, m))
}

/// Weight `q^a t^b u^c v^d` of one starred filling: `stars` are absolute
/// descent positions of `σ`; those in `[1, m]` star the column, those in
/// `[m+1, n−1]` the row.
pub fn filling_weight(sigma: &Word, m: usize, stars: &BTreeSet<usize>) -> Result<LaurentPolynomial> {
    let n = sigma.len();
    if m >= n {
        return Err(Error::InvalidParameters(format!("need m < n, got n={n}, m={m}")));
    }
    let letters = sigma.letters();
    let col_stars: Vec<usize> = stars.iter().copied().filter(|&s| s <= m).collect();
    let row_stars: Vec<usize> = stars.iter().filter(|&&s| s > m).map(|&s| s - m).collect();
    let col = StarredPermutation::new(Word::new(letters[..=m].to_vec())?, col_stars.iter().copied())?;
    let row = StarredPermutation::new(Word::new(letters[m..].to_vec())?, row_stars.iter().copied())?;
    Ok(LaurentPolynomial::monomial(
        &[
            ("q", row.to_partition().inv() as i64),
            ("t", col.maj() as i64),
            ("u", row_stars.len() as i64),
            ("v", col_stars.len() as i64),
        ],
        1,
    ))
}

/// Schur coefficient of `s_λ` in `H̃_{n,m}` as given by the tableau formula:
/// `Σ_T q^{Σ_{i∈Des, i>m}(n−i)} t^{Σ_{i∈Des, i≤m} i} Π_{i=1}^{#row}(1+u q^{−i}) Π_{j=1}^{#col}(1+v t^{−j})`.
pub fn schur_coeff_theorem(lambda: &Partition, m: usize) -> Result<LaurentPolynomial> {
    let n = lambda.weight();
    if m >= n {
        return Err(Error::InvalidParameters(format!("need m < n, got n={n}, m={m}")));
    }
    let mut groups: BTreeMap<WeightKey, u64> = BTreeMap::new();
    for t in enumerate_syt(lambda) {
        let des = t.descents();
        let (col, row): (Vec<usize>, Vec<usize>) = des.iter().partition(|&&i| i <= m);
        let key = WeightKey {
            q: row.iter().map(|&i| (n - i) as i64).sum(),
            t: col.iter().map(|&i| i as i64).sum(),
            col_des: col.len(),
            row_marks: (1..=row.len() as i64).collect(),
        };
        *groups.entry(key).or_default() += 1;
    }
    let mut acc = LaurentPolynomial::zero().with_vars(&QTUV);
    for (key, count) in groups {
        acc += &key.poly().scale(&BigInt::from(count));
    }
    Ok(acc)
}

/// A Schur expansion `Σ c_λ s_λ` with nonzero coefficients, in extraction
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SchurExpansion {
    pub terms: Vec<(Partition, LaurentPolynomial)>,
}

impl SchurExpansion {
    pub fn get(&self, lambda: &Partition) -> Option<&LaurentPolynomial> {
        self.terms.iter().find(|(l, _)| l == lambda).map(|(_, c)| c)
    }

    /// `[{"lambda": [..], "coeff": <polynomial>}, …]`
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(l, c)| json!({ "lambda": l.parts(), "coeff": c.to_json() }))
                .collect(),
        )
    }

    /// Applies `f` to every coefficient, dropping those that become zero.
    pub fn map(&self, f: impl Fn(&LaurentPolynomial) -> LaurentPolynomial) -> SchurExpansion {
        SchurExpansion {
            terms: self
                .terms
                .iter()
                .map(|(l, c)| (l.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }
}

/// Symmetry in `x_1 … x_N`: every adjacent transposition fixes `f`.
pub fn is_symmetric(f: &LaurentPolynomial, num_x: usize) -> bool {
    (1..num_x).all(|r| {
        let (a, b) = (x_var(r), x_var(r + 1));
        f.rename(&[(&a, &b), (&b, &a)]) == *f
    })
}

/// Expands a symmetric polynomial, homogeneous of degree `n` in
/// `x_1 … x_N` (`N ≥ n`), in Schur functions by triangular elimination
/// against Kostka numbers, then checks the reconstruction.
pub fn schur_extract(f: &LaurentPolynomial, n: usize, num_x: usize) -> Result<SchurExpansion> {
    if num_x < n {
        return Err(Error::InvalidParameters(format!("need N ≥ n, got N={num_x}, n={n}")));
    }
    let names = x_vars(num_x);
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    if f.support_vars().iter().any(|v| v.starts_with("x_") && !name_refs.contains(v)) {
        return Err(Error::InvalidParameters(format!("f uses x variables beyond x_{num_x}")));
    }
    if !is_symmetric(f, num_x) {
        return Err(Error::NotSymmetric);
    }
    let by_content = f.split_by(&name_refs);
    if by_content.keys().any(|e| e.iter().sum::<i64>() != n as i64 || e.iter().any(|&x| x < 0)) {
        return Err(Error::InvalidParameters(format!("f is not homogeneous of x-degree {n}")));
    }
    let coeff_at = |lambda: &Partition| {
        let mut e: Vec<i64> = lambda.parts().iter().map(|&p| i64::from(p)).collect();
        e.resize(num_x, 0);
        by_content.get(&e).cloned().unwrap_or_default()
    };
    let partitions: Vec<Partition> = Partition::all_of(n).into_iter().filter(|l| l.len() <= num_x).collect();
    let mut fixed: Vec<(Partition, LaurentPolynomial)> = Vec::new();
    for lambda in &partitions {
        let mut c = coeff_at(lambda);
        for (kappa, ck) in &fixed {
            let k = kostka(kappa, lambda.parts());
            if k != 0 {
                c = &c - &ck.scale(&BigInt::from(k));
            }
        }
        fixed.push((lambda.clone(), c));
    }
    // reconstruction over every content of f and every partition shape
    let mut cache: HashMap<(usize, Vec<u32>), u64> = HashMap::new();
    let mut contents: BTreeSet<Vec<i64>> = by_content.keys().cloned().collect();
    contents.extend(partitions.iter().map(|l| {
        let mut e: Vec<i64> = l.parts().iter().map(|&p| i64::from(p)).collect();
        e.resize(num_x, 0);
        e
    }));
    for e in &contents {
        let mut mu: Vec<u32> = e.iter().map(|&x| x as u32).filter(|&x| x > 0).collect();
        mu.sort_unstable_by(|a, b| b.cmp(a));
        let mut total = LaurentPolynomial::zero();
        for (i, (lambda, c)) in fixed.iter().enumerate() {
            let k = *cache.entry((i, mu.clone())).or_insert_with(|| kostka(lambda, &mu));
            if k != 0 {
                total += &c.scale(&BigInt::from(k));
            }
        }
        if total != by_content.get(e).cloned().unwrap_or_default() {
            return Err(Error::SchurResidue);
        }
    }
    Ok(SchurExpansion { terms: fixed.into_iter().filter(|(_, c)| !c.is_zero()).collect() })
}

/// `{x_1 … x_N}` polynomial `Σ c_λ s_λ`.
pub fn schur_reconstruct(expansion: &SchurExpansion, num_x: usize) -> LaurentPolynomial {
    let mut acc = LaurentPolynomial::zero();
    for (lambda, c) in &expansion.terms {
        acc += &(c * &schur_polynomial(lambda, num_x));
    }
    acc
}

/// Indices of the unpaired letters among those equal to `r` or `r+1`, after
/// repeatedly pairing an `r+1` with an immediately following `r`.
fn unpaired(letters: &[u32], r: u32) -> Vec<usize> {
    let mut open: Vec<usize> = Vec::new();
    let mut free: Vec<usize> = Vec::new();
    for (i, &x) in letters.iter().enumerate() {
        if x == r + 1 {
            open.push(i);
        } else if x == r
            && open.pop().is_none() {
                free.push(i);
            }
    }
    free.extend(open);
    free.sort_unstable();
    free
}

/// Literal r-pairing: pairs adjacent `r+1, r`, then every unpaired `r` becomes
/// `r+1` and every unpaired `r+1` becomes `r`. Not an involution in general.
pub fn r_pairing(w: &Word, r: u32) -> Word {
    let mut letters = w.letters().to_vec();
    for i in unpaired(&letters, r) {
        letters[i] = if letters[i] == r { r + 1 } else { r };
    }
    Word::from_vec_unchecked(letters)
}

/// The involutive variant: the unpaired letters read `r^a (r+1)^b` and are
/// rewritten as `r^b (r+1)^a`. Swaps the multiplicities of `r` and `r+1`
/// and keeps the descent set.
pub fn r_pairing_involution(w: &Word, r: u32) -> Word {
    let mut letters = w.letters().to_vec();
    let free = unpaired(&letters, r);
    let b = free.iter().filter(|&&i| letters[i] == r + 1).count();
    for (k, &i) in free.iter().enumerate() {
        letters[i] = if k < b { r } else { r + 1 };
    }
    Word::from_vec_unchecked(letters)
}
