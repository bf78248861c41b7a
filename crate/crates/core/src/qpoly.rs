//! Exact Laurent polynomials over named variables, the standard q-analogs,
//! and the distribution-level identities: Mahonian distributions of ordered
//! multiset partitions, their recursions, and generalized q-Stirling numbers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::omp::{enumerate_osp, OmpStat};
use crate::words::{self, enumerate_words, Composition};

/// A polynomial with integer coefficients and possibly negative exponents.
///
/// Exponent vectors are dense over `vars`. Two polynomials compare equal
/// when they have the same terms after matching variables by name.
#[derive(Debug, Clone, Default)]
pub struct LaurentPolynomial {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        LaurentPolynomial { vars: Vec::new(), terms }
    }

    /// The variable `name` to the first power.
    pub fn var(name: &str) -> Self {
        Self::monomial(&[(name, 1)], 1)
    }

    /// `coeff · Π var^exp`.
    pub fn monomial(powers: &[(&str, i64)], coeff: impl Into<BigInt>) -> Self {
        let coeff = coeff.into();
        let vars: Vec<String> = powers.iter().map(|(v, _)| v.to_string()).collect();
        let exps = powers.iter().map(|&(_, e)| e).collect();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        LaurentPolynomial { vars, terms }
    }

    /// `Σ_e counts[e] · q^e` for a single variable.
    pub fn from_exponent_counts<C: Into<BigInt>>(var: &str, counts: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut terms: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (e, c) in counts {
            *terms.entry(vec![e]).or_default() += c.into();
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPolynomial { vars: vec![var.to_string()], terms }
    }

    pub(crate) fn from_parts(vars: Vec<String>, terms: BTreeMap<Vec<i64>, BigInt>) -> Self {
        let mut p = LaurentPolynomial { vars, terms };
        p.terms.retain(|_, c| !c.is_zero());
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order: total degree ascending, then exponent
    /// vectors in decreasing lexicographic order.
    pub fn terms(&self) -> Vec<(&[i64], &BigInt)> {
        let mut out: Vec<(&[i64], &BigInt)> = self.terms.iter().map(|(e, c)| (e.as_slice(), c)).collect();
        out.sort_by(|a, b| {
            let da: i64 = a.0.iter().sum();
            let db: i64 = b.0.iter().sum();
            da.cmp(&db).then_with(|| b.0.cmp(a.0))
        });
        out
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The same polynomial over `vars`, which must contain every variable
    /// that occurs with a nonzero exponent.
    fn over(&self, vars: &[String]) -> Self {
        if self.vars == vars {
            return self.clone();
        }
        let map: Vec<Option<usize>> = self.vars.iter().map(|v| vars.iter().position(|w| w == v)).collect();
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut out = vec![0; vars.len()];
            for (i, &x) in e.iter().enumerate() {
                match map[i] {
                    Some(j) => out[j] = x,
                    None => assert_eq!(x, 0, "variable {} dropped while nonzero", self.vars[i]),
                }
            }
            terms.insert(out, c.clone());
        }
        LaurentPolynomial { vars: vars.to_vec(), terms }
    }

    fn union_vars(&self, other: &Self) -> Vec<String> {
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars
    }

    /// Re-expresses the polynomial over `vars` extended by any of its own
    /// variables missing from that list.
    pub fn with_vars(&self, vars: &[&str]) -> Self {
        let mut all: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        for v in &self.vars {
            if !all.contains(v) {
                all.push(v.clone());
            }
        }
        self.over(&all)
    }

    /// Variables with a nonzero exponent in some term.
    pub fn support_vars(&self) -> Vec<&str> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|e| e[i] != 0))
            .map(|i| self.vars[i].as_str())
            .collect()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return LaurentPolynomial { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        let terms = self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect();
        LaurentPolynomial { vars: self.vars.clone(), terms }
    }

    /// Multiplies by the monomial `Π var^exp`.
    pub fn shift(&self, powers: &[(&str, i64)]) -> Self {
        self * &Self::monomial(powers, 1)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Sum of the coefficients: every variable set to 1.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Smallest and largest exponent of `var`, or `None` for the zero
    /// polynomial.
    pub fn degree_range(&self, var: &str) -> Option<(i64, i64)> {
        if self.is_zero() {
            return None;
        }
        let Some(i) = self.var_index(var) else {
            return Some((0, 0));
        };
        let lo = self.terms.keys().map(|e| e[i]).min()?;
        let hi = self.terms.keys().map(|e| e[i]).max()?;
        Some((lo, hi))
    }

    /// The coefficient of `Π var^exp` regarded as a polynomial in the other
    /// variables (the listed variables keep exponent 0).
    pub fn coefficient(&self, powers: &[(&str, i64)]) -> Self {
        let idx: Vec<(Option<usize>, i64)> = powers.iter().map(|&(v, e)| (self.var_index(v), e)).collect();
        let mut terms = BTreeMap::new();
        'terms: for (e, c) in &self.terms {
            let mut e = e.clone();
            for &(i, want) in &idx {
                let have = i.map_or(0, |i| e[i]);
                if have != want {
                    continue 'terms;
                }
                if let Some(i) = i {
                    e[i] = 0;
                }
            }
            terms.insert(e, c.clone());
        }
        LaurentPolynomial { vars: self.vars.clone(), terms }
    }

    /// Groups terms by their exponents in `split`; each value is the
    /// coefficient polynomial in the remaining variables.
    pub fn split_by(&self, split: &[&str]) -> BTreeMap<Vec<i64>, LaurentPolynomial> {
        let idx: Vec<Option<usize>> = split.iter().map(|v| self.var_index(v)).collect();
        let keep: Vec<usize> = (0..self.vars.len()).filter(|i| !idx.contains(&Some(*i))).collect();
        let vars: Vec<String> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let mut out: BTreeMap<Vec<i64>, BTreeMap<Vec<i64>, BigInt>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let key: Vec<i64> = idx.iter().map(|i| i.map_or(0, |i| e[i])).collect();
            let rest: Vec<i64> = keep.iter().map(|&i| e[i]).collect();
            out.entry(key).or_default().insert(rest, c.clone());
        }
        out.into_iter()
            .map(|(k, terms)| (k, LaurentPolynomial { vars: vars.clone(), terms }))
            .collect()
    }

    /// Simultaneous renaming of variables, e.g. `[("q", "t"), ("t", "q")]`
    /// swaps `q` and `t`.
    pub fn rename(&self, pairs: &[(&str, &str)]) -> Self {
        let vars: Vec<String> = self
            .vars
            .iter()
            .map(|v| {
                pairs
                    .iter()
                    .find(|(from, _)| from == v)
                    .map_or_else(|| v.clone(), |(_, to)| to.to_string())
            })
            .collect();
        let mut seen = std::collections::HashSet::new();
        assert!(vars.iter().all(|v| seen.insert(v)), "renaming merges variables");
        LaurentPolynomial { vars, terms: self.terms.clone() }
    }

    /// Substitutes `var = 0`; every term with a negative power of `var` must
    /// be absent.
    pub fn set_zero(&self, var: &str) -> Self {
        self.coefficient(&[(var, 0)])
    }

    /// Exact division of univariate polynomials with nonnegative exponents.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let vars = self.union_vars(divisor);
        let a = self.over(&vars);
        let b = divisor.over(&vars);
        let support: Vec<usize> = (0..vars.len())
            .filter(|&i| a.terms.keys().chain(b.terms.keys()).any(|e| e[i] != 0))
            .collect();
        if support.len() > 1 {
            return Err(Error::InexactDivision("only univariate division is supported".into()));
        }
        if b.is_zero() {
            return Err(Error::InexactDivision("division by zero".into()));
        }
        let var = support.first().copied();
        let dense = |p: &LaurentPolynomial| -> Result<Vec<BigInt>> {
            let mut v: Vec<BigInt> = Vec::new();
            for (e, c) in &p.terms {
                let d = var.map_or(0, |i| e[i]);
                if d < 0 {
                    return Err(Error::InexactDivision("negative exponent".into()));
                }
                let d = d as usize;
                if v.len() <= d {
                    v.resize(d + 1, BigInt::zero());
                }
                v[d] = c.clone();
            }
            Ok(v)
        };
        let mut rem = dense(&a)?;
        let den = dense(&b)?;
        let lead = den.last().expect("nonzero divisor").clone();
        let dd = den.len() - 1;
        if rem.len() < den.len() {
            if rem.iter().all(Zero::is_zero) {
                return Ok(LaurentPolynomial { vars, terms: BTreeMap::new() });
            }
            return Err(Error::InexactDivision(format!("{self} by {divisor}")));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd];
            if c.is_zero() {
                continue;
            }
            let (q, r) = c.div_rem(&lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!("{self} by {divisor}")));
            }
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= &q * d;
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision(format!("{self} by {divisor}")));
        }
        let mut terms = BTreeMap::new();
        for (d, c) in quot.into_iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; vars.len()];
                if let Some(i) = var {
                    e[i] = d as i64;
                }
                terms.insert(e, c);
            }
        }
        Ok(LaurentPolynomial { vars, terms })
    }

    /// Canonical JSON: a list of `{"coeff": "<decimal>", "exp": {var: int}}`.
    pub fn to_json(&self) -> Value {
        let list = self
            .terms()
            .into_iter()
            .map(|(e, c)| {
                let mut exp = Map::new();
                for (v, x) in self.vars.iter().zip(e) {
                    exp.insert(v.clone(), json!(x));
                }
                json!({ "coeff": c.to_string(), "exp": Value::Object(exp) })
            })
            .collect();
        Value::Array(list)
    }

    fn monomial_string(&self, e: &[i64]) -> String {
        let parts: Vec<String> = self
            .vars
            .iter()
            .zip(e)
            .filter(|(_, &x)| x != 0)
            .map(|(v, &x)| if x == 1 { v.clone() } else { format!("{v}^{x}") })
            .collect();
        parts.join("*")
    }
}

impl PartialEq for LaurentPolynomial {
    fn eq(&self, other: &Self) -> bool {
        if self.terms.len() != other.terms.len() {
            return false;
        }
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let vars = self.union_vars(other);
        self.over(&vars).terms == other.over(&vars).terms
    }
}

impl Eq for LaurentPolynomial {}

impl fmt::Display for LaurentPolynomial {
    /// Human form, e.g. `1 + q + 2*q^2` or `q^-1 - q^2*t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().into_iter().enumerate() {
            let mono = self.monomial_string(e);
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl From<i64> for LaurentPolynomial {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

fn combine(a: &LaurentPolynomial, b: &LaurentPolynomial, sign: i32) -> LaurentPolynomial {
    let vars = a.union_vars(b);
    let mut out = a.over(&vars);
    for (e, c) in &b.over(&vars).terms {
        let slot = out.terms.entry(e.clone()).or_default();
        if sign > 0 {
            *slot += c;
        } else {
            *slot -= c;
        }
        if slot.is_zero() {
            out.terms.remove(e);
        }
    }
    out
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: Self) -> LaurentPolynomial {
        combine(self, rhs, 1)
    }
}

impl Add for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: Self) -> LaurentPolynomial {
        combine(&self, &rhs, 1)
    }
}

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, rhs: &LaurentPolynomial) {
        if self.vars == rhs.vars {
            for (e, c) in &rhs.terms {
                let slot = self.terms.entry(e.clone()).or_default();
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(e);
                }
            }
        } else {
            *self = combine(self, rhs, 1);
        }
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: Self) -> LaurentPolynomial {
        combine(self, rhs, -1)
    }
}

impl Sub for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: Self) -> LaurentPolynomial {
        combine(&self, &rhs, -1)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.scale(&BigInt::from(-1))
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: Self) -> LaurentPolynomial {
        let vars = self.union_vars(rhs);
        let a = self.over(&vars);
        let b = rhs.over(&vars);
        let mut terms: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *terms.entry(e).or_default() += ca * cb;
            }
        }
        LaurentPolynomial::from_parts(vars, terms)
    }
}

impl Mul for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: Self) -> LaurentPolynomial {
        &self * &rhs
    }
}

/// `1 + var · q^{-i}`.
pub fn one_plus_over(var: &str, q: &str, i: i64) -> LaurentPolynomial {
    &LaurentPolynomial::one() + &LaurentPolynomial::monomial(&[(q, -i), (var, 1)], 1)
}

/// `[n]_q = 1 + q + … + q^{n−1}`.
pub fn q_int(n: usize) -> LaurentPolynomial {
    LaurentPolynomial::from_exponent_counts("q", (0..n as i64).map(|e| (e, 1)))
}

/// `[n]_q! = [1]_q [2]_q ⋯ [n]_q`.
pub fn q_fact(n: usize) -> LaurentPolynomial {
    (1..=n).fold(LaurentPolynomial::one().with_vars(&["q"]), |acc, i| &acc * &q_int(i))
}

/// Gaussian binomial `[n choose k]_q`; zero outside `0 ≤ k ≤ n`.
pub fn q_binom(n: usize, k: usize) -> LaurentPolynomial {
    if k > n {
        return LaurentPolynomial::zero().with_vars(&["q"]);
    }
    let den = &q_fact(k) * &q_fact(n - k);
    q_fact(n).div_exact(&den).expect("q-binomial division is exact")
}

/// q-multinomial `[n; parts]_q = [n]! / Π [p]!`.
pub fn q_multinom(n: usize, parts: &[usize]) -> Result<LaurentPolynomial> {
    if parts.iter().sum::<usize>() != n {
        return Err(Error::InvalidParameters(format!("parts {parts:?} do not sum to {n}")));
    }
    let den = parts.iter().fold(LaurentPolynomial::one(), |acc, &p| &acc * &q_fact(p));
    q_fact(n).div_exact(&den)
}

fn c2(x: usize) -> i64 {
    (x * x.saturating_sub(1) / 2) as i64
}

/// `Σ_{π ∈ osp(α,k)} q^{stat(π)}` by enumeration.
pub fn distribution(stat: OmpStat, alpha: &Composition, k: usize) -> LaurentPolynomial {
    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    for pi in enumerate_osp(alpha, k) {
        *counts.entry(pi.stat(stat) as i64).or_default() += 1;
    }
    LaurentPolynomial::from_exponent_counts("q", counts)
}

/// `Σ_{w ∈ S_α} q^{stat(w)}` by enumeration.
pub fn word_distribution(stat: words::WordStat, alpha: &Composition) -> LaurentPolynomial {
    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    for w in enumerate_words(alpha) {
        *counts.entry(w.stat(stat) as i64).or_default() += 1;
    }
    LaurentPolynomial::from_exponent_counts("q", counts)
}

/// Distributions of all four statistics over `osp(α,k)` for every valid `k`,
/// gathered in one enumeration pass.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DistributionTable {
    entries: BTreeMap<(Composition, usize, OmpStat), LaurentPolynomial>,
}

impl DistributionTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds every `(α, k, stat)` entry for the given `α`.
    pub fn add_composition(&mut self, alpha: &Composition) {
        for k in crate::omp::block_range(alpha) {
            let mut counts: HashMap<OmpStat, BTreeMap<i64, u64>> = HashMap::new();
            for pi in enumerate_osp(alpha, k) {
                for stat in OmpStat::ALL {
                    *counts.entry(stat).or_default().entry(pi.stat(stat) as i64).or_default() += 1;
                }
            }
            for stat in OmpStat::ALL {
                let poly = LaurentPolynomial::from_exponent_counts("q", counts.remove(&stat).unwrap_or_default());
                self.entries.insert((alpha.clone(), k, stat), poly);
            }
        }
    }

    pub fn get(&self, alpha: &Composition, k: usize, stat: OmpStat) -> Option<&LaurentPolynomial> {
        self.entries.get(&(alpha.clone(), k, stat))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Composition, usize, OmpStat), &LaurentPolynomial)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Shared driver for the two forms of the Mahonian recursion.
fn mahonian_with(
    alpha: &Composition,
    k: usize,
    memo: &mut HashMap<(Composition, usize), LaurentPolynomial>,
    weight: &dyn Fn(usize, usize, usize, usize) -> LaurentPolynomial,
) -> LaurentPolynomial {
    if let Some(p) = memo.get(&(alpha.clone(), k)) {
        return p.clone();
    }
    let last = alpha.last() as usize;
    let result = match alpha.without_last() {
        None => LaurentPolynomial::constant(i64::from(k == last)).with_vars(&["q"]),
        Some(shorter) => {
            let mut acc = LaurentPolynomial::zero().with_vars(&["q"]);
            for l in 1..=k {
                // |U| = α_n − k + ℓ must lie in [0, ℓ]
                let Some(j) = (last + l).checked_sub(k) else { continue };
                if j > l {
                    continue;
                }
                let inner = mahonian_with(&shorter, l, memo, weight);
                if inner.is_zero() {
                    continue;
                }
                acc += &(&weight(k, l, j, last) * &inner);
            }
            acc
        }
    };
    memo.insert((alpha.clone(), k), result.clone());
    result
}

/// `M_{α,k}(q)` through the trinomial form of the recursion:
/// `Σ_ℓ q^{C(α_n−k+ℓ, 2)} [k; α_n−k+ℓ, k−α_n, k−ℓ] M_{α⁻,ℓ}`.
pub fn mahonian_rec(alpha: &Composition, k: usize) -> LaurentPolynomial {
    let weight = |k: usize, l: usize, j: usize, last: usize| {
        if k < last {
            return LaurentPolynomial::zero();
        }
        let tri = q_multinom(k, &[j, k - last, k - l]).expect("parts sum to k");
        tri.shift(&[("q", c2(j))])
    };
    mahonian_with(alpha, k, &mut HashMap::new(), &weight)
}

/// `M_{α,k}(q)` through the insertion-count form:
/// `Σ_ℓ q^{C(α_n−k+ℓ, 2)} [ℓ choose α_n−k+ℓ] [k choose ℓ] M_{α⁻,ℓ}`.
pub fn dist_rec(alpha: &Composition, k: usize) -> LaurentPolynomial {
    let weight = |k: usize, l: usize, j: usize, _last: usize| {
        (&q_binom(l, j) * &q_binom(k, l)).shift(&[("q", c2(j))])
    };
    mahonian_with(alpha, k, &mut HashMap::new(), &weight)
}

/// Generalized q-Stirling numbers `S̃_a(n, k)`:
/// `S̃(n,k) = Σ_i q^{C(a−k+i,2)} [i choose a−k+i] ([a]!/[k−i]!) S̃(n−1,i)`,
/// with `S̃(1,k) = χ(k = a)`.
pub fn gen_q_stirling(n: usize, k: usize, a: usize) -> Result<LaurentPolynomial> {
    if n == 0 || k == 0 || a == 0 {
        return Err(Error::InvalidParameters("n, k and a must be positive".into()));
    }
    let mut memo = HashMap::new();
    gen_q_stirling_memo(n, k, a, &mut memo)
}

fn gen_q_stirling_memo(
    n: usize,
    k: usize,
    a: usize,
    memo: &mut HashMap<(usize, usize), LaurentPolynomial>,
) -> Result<LaurentPolynomial> {
    if let Some(p) = memo.get(&(n, k)) {
        return Ok(p.clone());
    }
    let result = if n == 1 {
        LaurentPolynomial::constant(i64::from(k == a)).with_vars(&["q"])
    } else {
        let mut acc = LaurentPolynomial::zero().with_vars(&["q"]);
        for i in 1..=k {
            let Some(j) = (a + i).checked_sub(k) else { continue };
            if j > i || k - i > a {
                continue;
            }
            let inner = gen_q_stirling_memo(n - 1, i, a, memo)?;
            if inner.is_zero() {
                continue;
            }
            let quotient = q_fact(a).div_exact(&q_fact(k - i))?;
            let term = &(&q_binom(i, j) * &quotient).shift(&[("q", c2(j))]) * &inner;
            acc += &term;
        }
        acc
    };
    memo.insert((n, k), result.clone());
    Ok(result)
}

/// q-Stirling numbers of the second kind by the two-term recursion
/// `S(n,k) = [k]_q S(n−1,k) + S(n−1,k−1)`, `S(0,0) = 1`.
pub fn q_stirling(n: usize, k: usize) -> LaurentPolynomial {
    let mut row = vec![LaurentPolynomial::one().with_vars(&["q"])];
    for m in 1..=n {
        let mut next = vec![LaurentPolynomial::zero().with_vars(&["q"]); m + 1];
        for (j, slot) in next.iter_mut().enumerate() {
            if j < row.len() && j > 0 {
                *slot += &(&q_int(j) * &row[j]);
            }
            if j >= 1 && j - 1 < row.len() {
                *slot += &row[j - 1];
            }
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_else(|| LaurentPolynomial::zero().with_vars(&["q"]))
}

/// Both sides of the `z`-refined equidistribution of `maj` and `inv` over
/// words:
/// `Σ q^{maj(σ)} Π_{i=1}^{des(σ)} (1 + z/q^i)` and
/// `Σ q^{inv(σ)} Π_{j ∈ Des(σ)} (1 + z/q^{inv_to(σ,j)+1})`.
pub fn main_result_sides(alpha: &Composition) -> (LaurentPolynomial, LaurentPolynomial) {
    let mut lhs_groups: BTreeMap<(u64, usize), u64> = BTreeMap::new();
    let mut rhs_groups: BTreeMap<(u64, Vec<u64>), u64> = BTreeMap::new();
    for w in enumerate_words(alpha) {
        let letters = w.letters();
        let des = words::descents(letters);
        *lhs_groups.entry((w.maj(), des.len())).or_default() += 1;
        let mut marks: Vec<u64> = des.iter().map(|&j| words::inv_to(letters, j) + 1).collect();
        marks.sort_unstable();
        *rhs_groups.entry((w.inv(), marks)).or_default() += 1;
    }
    let base = || LaurentPolynomial::zero().with_vars(&["q", "z"]);
    let mut lhs = base();
    for ((maj, des), count) in lhs_groups {
        let mut term = LaurentPolynomial::monomial(&[("q", maj as i64)], count);
        for i in 1..=des {
            term = &term * &one_plus_over("z", "q", i as i64);
        }
        lhs += &term;
    }
    let mut rhs = base();
    for ((inv, marks), count) in rhs_groups {
        let mut term = LaurentPolynomial::monomial(&[("q", inv as i64)], count);
        for m in marks {
            term = &term * &one_plus_over("z", "q", m as i64);
        }
        rhs += &term;
    }
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: i64) -> LaurentPolynomial {
        LaurentPolynomial::monomial(&[("q", e)], 1)
    }

    fn poly(coeffs: &[i64]) -> LaurentPolynomial {
        LaurentPolynomial::from_exponent_counts("q", coeffs.iter().enumerate().map(|(i, &c)| (i as i64, c)))
    }

    #[test]
    fn q_analogs() {
        assert_eq!(q_int(3), poly(&[1, 1, 1]));
        assert_eq!(q_int(0), LaurentPolynomial::zero());
        assert_eq!(q_binom(4, 2), poly(&[1, 1, 2, 1, 1]));
        assert_eq!(q_binom(2, 3), LaurentPolynomial::zero());
        assert_eq!(q_fact(3), poly(&[1, 2, 2, 1]));
        assert_eq!(q_multinom(3, &[1, 1, 1]).unwrap(), q_fact(3));
        assert!(q_multinom(3, &[1, 1]).is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(poly(&[1, 1, 2]).to_string(), "1 + q + 2*q^2");
        assert_eq!(q(-1).to_string(), "q^-1");
        let p = &LaurentPolynomial::monomial(&[("q", 2), ("t", 1)], -3) + &LaurentPolynomial::one();
        assert_eq!(p.to_string(), "1 - 3*q^2*t");
        assert_eq!(LaurentPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn canonical_json() {
        let p = poly(&[1, 0, 2]);
        assert_eq!(
            p.to_json().to_string(),
            r#"[{"coeff":"1","exp":{"q":0}},{"coeff":"2","exp":{"q":2}}]"#
        );
    }

    #[test]
    fn equality_ignores_variable_order() {
        let a = LaurentPolynomial::monomial(&[("q", 1), ("t", 2)], 1);
        let b = LaurentPolynomial::monomial(&[("t", 2), ("q", 1)], 1);
        assert_eq!(a, b);
        assert_ne!(a, b.rename(&[("q", "t"), ("t", "q")]));
    }

    #[test]
    fn exact_division() {
        let a = &q_int(3) * &q_int(2);
        assert_eq!(a.div_exact(&q_int(2)).unwrap(), q_int(3));
        assert!(q_int(3).div_exact(&q_int(2)).is_err());
        assert!(q_int(3).div_exact(&LaurentPolynomial::zero()).is_err());
    }

    #[test]
    fn coefficient_and_split() {
        let p = &(&q(1) * &LaurentPolynomial::var("z")) + &q(2);
        assert_eq!(p.coefficient(&[("z", 1)]), q(1));
        assert_eq!(p.coefficient(&[("z", 0)]), q(2));
        let parts = p.split_by(&["z"]);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&vec![1]], q(1));
    }

    #[test]
    fn small_distributions() {
        let a = Composition::ones(2);
        assert_eq!(distribution(OmpStat::Inv, &a, 2), poly(&[1, 1]));
        assert_eq!(distribution(OmpStat::Inv, &a, 1), poly(&[1]));
        let a3 = Composition::ones(3);
        assert_eq!(distribution(OmpStat::Maj, &a3, 2), poly(&[2, 3, 1]));
    }

    #[test]
    fn recursion_base_case() {
        let a = Composition::new(vec![3]).unwrap();
        assert_eq!(mahonian_rec(&a, 3), LaurentPolynomial::one());
        assert!(mahonian_rec(&a, 2).is_zero());
        assert_eq!(mahonian_rec(&Composition::ones(3), 2), poly(&[2, 3, 1]));
        assert_eq!(dist_rec(&Composition::ones(3), 2), poly(&[2, 3, 1]));
    }

    #[test]
    fn stirling_base_and_a_equals_one() {
        assert_eq!(gen_q_stirling(1, 2, 2).unwrap(), LaurentPolynomial::one());
        assert!(gen_q_stirling(1, 1, 2).unwrap().is_zero());
        for n in 1..=5 {
            for k in 1..=n {
                assert_eq!(gen_q_stirling(n, k, 1).unwrap(), q_stirling(n, k), "n={n} k={k}");
            }
        }
        assert!(gen_q_stirling(0, 1, 1).is_err());
    }

    #[test]
    fn main_result_small() {
        let (lhs, rhs) = main_result_sides(&Composition::ones(1));
        assert_eq!(lhs, LaurentPolynomial::one());
        assert_eq!(rhs, LaurentPolynomial::one());
        let (lhs, rhs) = main_result_sides(&Composition::ones(2));
        let expected = &(&LaurentPolynomial::one() + &q(1)) + &LaurentPolynomial::var("z");
        assert_eq!(lhs, expected);
        assert_eq!(rhs, expected);
    }
}
