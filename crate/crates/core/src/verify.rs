//! Named invariant suites, each an exhaustive check over a bounded range.
//!
//! Every suite reports how many cases it checked and the first
//! counterexample in a fixed enumeration order, so reports are identical
//! regardless of thread count.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::insertion::{self, InsertionStat};
use crate::macdonald::{self, Partition};
use crate::omp::{block_range, enumerate_osp, OmpStat, OrderedMultisetPartition};
use crate::qpoly::{self, LaurentPolynomial};
use crate::words::{self, Composition, Word, WordStat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Equidistribution,
    InsertionLaws,
    PsiBijection,
    RlMinima,
    Recursions,
    Stirling,
    MainResult,
    MinimajConjecture,
    MacdonaldSymmetry,
    MacdonaldSchur,
    HookSwap,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Equidistribution,
        Suite::InsertionLaws,
        Suite::PsiBijection,
        Suite::RlMinima,
        Suite::Recursions,
        Suite::Stirling,
        Suite::MainResult,
        Suite::MinimajConjecture,
        Suite::MacdonaldSymmetry,
        Suite::MacdonaldSchur,
        Suite::HookSwap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Equidistribution => "equidistribution",
            Suite::InsertionLaws => "insertion-laws",
            Suite::PsiBijection => "psi-bijection",
            Suite::RlMinima => "rl-minima",
            Suite::Recursions => "recursions",
            Suite::Stirling => "stirling",
            Suite::MainResult => "main-result",
            Suite::MinimajConjecture => "minimaj-conjecture",
            Suite::MacdonaldSymmetry => "macdonald-symmetry",
            Suite::MacdonaldSchur => "macdonald-schur",
            Suite::HookSwap => "hook-swap",
        }
    }

    /// Default bound: the largest `|α|` for the composition suites, the
    /// largest `n` for the Stirling and Macdonald suites.
    pub fn default_bound(self) -> usize {
        match self {
            Suite::Equidistribution | Suite::Recursions | Suite::MinimajConjecture => 8,
            Suite::InsertionLaws => 6,
            Suite::PsiBijection | Suite::RlMinima | Suite::MainResult | Suite::Stirling => 7,
            Suite::MacdonaldSymmetry | Suite::MacdonaldSchur | Suite::HookSwap => 6,
        }
    }

    pub fn run(self, bound: Option<usize>) -> SuiteReport {
        let bound = bound.unwrap_or_else(|| self.default_bound());
        let (checked, counterexample) = match self {
            Suite::Equidistribution => equidistribution(bound, 4),
            Suite::InsertionLaws => insertion_laws(bound),
            Suite::PsiBijection => psi_bijection(bound),
            Suite::RlMinima => rl_minima(bound),
            Suite::Recursions => recursions(bound),
            Suite::Stirling => stirling(bound),
            Suite::MainResult => main_result(bound),
            Suite::MinimajConjecture => minimaj_conjecture(bound),
            Suite::MacdonaldSymmetry => macdonald_symmetry(bound),
            Suite::MacdonaldSchur => macdonald_schur(bound),
            Suite::HookSwap => hook_swap(bound),
        };
        SuiteReport { suite: self, bound, checked, counterexample }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub bound: usize,
    pub checked: u64,
    pub counterexample: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} (bound {}): {} cases checked", self.suite, self.bound, self.checked)?;
        if let Some(ce) = &self.counterexample {
            write!(f, "; first counterexample: {ce}")?;
        }
        Ok(())
    }
}

type Outcome = (u64, Option<String>);

/// Runs `check` on every item in parallel and keeps the first failure in
/// item order.
fn over<T: Sync>(items: &[T], check: impl Fn(&T) -> Outcome + Sync + Send) -> Outcome {
    let results: Vec<Outcome> = items.par_iter().map(check).collect();
    let checked = results.iter().map(|r| r.0).sum();
    (checked, results.into_iter().find_map(|r| r.1))
}

fn fail(checked: u64, msg: String) -> Outcome {
    (checked, Some(msg))
}

fn q_dist<I: IntoIterator<Item = u64>>(values: I) -> LaurentPolynomial {
    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    for v in values {
        *counts.entry(v as i64).or_default() += 1;
    }
    LaurentPolynomial::from_exponent_counts("q", counts)
}

/// Distributions of `stats` over `osp(α,k)` from one enumeration pass.
fn osp_dists(alpha: &Composition, k: usize, stats: &[OmpStat]) -> (u64, Vec<LaurentPolynomial>) {
    let mut counts: Vec<BTreeMap<i64, u64>> = vec![BTreeMap::new(); stats.len()];
    let mut total = 0;
    for pi in enumerate_osp(alpha, k) {
        total += 1;
        for (slot, &s) in counts.iter_mut().zip(stats) {
            *slot.entry(pi.stat(s) as i64).or_default() += 1;
        }
    }
    let polys = counts
        .into_iter()
        .map(|c| LaurentPolynomial::from_exponent_counts("q", c))
        .collect();
    (total, polys)
}

fn compositions(max_weight: usize, max_parts: usize) -> Vec<Composition> {
    Composition::all_up_to(max_weight, max_parts)
}

fn equidistribution(max_weight: usize, max_parts: usize) -> Outcome {
    const STATS: [OmpStat; 3] = [OmpStat::Inv, OmpStat::Maj, OmpStat::Dinv];
    over(&compositions(max_weight, max_parts), |alpha| {
        let mut checked = 0;
        for k in block_range(alpha) {
            let (_, d) = osp_dists(alpha, k, &STATS);
            checked += 1;
            if d[0] != d[1] || d[0] != d[2] {
                return fail(checked, format!("alpha={alpha} k={k}: inv={} maj={} dinv={}", d[0], d[1], d[2]));
            }
        }
        (checked, None)
    })
}

fn insertion_case(alpha: &Composition, k: usize, stat: InsertionStat) -> Result<Outcome> {
    let shorter = alpha.without_last().expect("length ≥ 2");
    let n = alpha.len() as u32;
    let copies = alpha.last() as usize;
    let mut checked = 0;
    let mut seen = HashSet::new();
    for l in 1..=k {
        for base in enumerate_osp(&shorter, l) {
            for args in insertion::all_args(&base, copies, k) {
                checked += 1;
                let image = insertion::insert(stat, &args, n)?;
                let ctx = || format!("{stat} alpha={alpha} k={k} base={base} U={:?} B={:?}", args.u(), args.b());
                if !image.is_in(alpha, k) {
                    return Ok(fail(checked, format!("{}: image {image} outside osp", ctx())));
                }
                if stat.eval(&image) != stat.eval(&base) + args.label_sum() {
                    return Ok(fail(checked, format!("{}: statistic law fails, image {image}", ctx())));
                }
                if stat != InsertionStat::Maj {
                    let singles = image.blocks().iter().filter(|b| b.as_slice() == [n]).count();
                    if singles != k - l {
                        return Ok(fail(checked, format!("{}: {singles} singleton blocks", ctx())));
                    }
                }
                if insertion::peel(stat, &image, n)? != args {
                    return Ok(fail(checked, format!("{}: inverse does not recover args", ctx())));
                }
                if !seen.insert(image.clone()) {
                    return Ok(fail(checked, format!("{}: image {image} hit twice", ctx())));
                }
            }
        }
    }
    for rho in enumerate_osp(alpha, k) {
        checked += 1;
        if !seen.contains(&rho) {
            return Ok(fail(checked, format!("{stat} alpha={alpha} k={k}: {rho} not in the image")));
        }
        let args = insertion::peel(stat, &rho, n)?;
        if insertion::insert(stat, &args, n)? != rho {
            return Ok(fail(checked, format!("{stat} alpha={alpha} k={k}: insert∘peel moves {rho}")));
        }
    }
    Ok((checked, None))
}

fn insertion_laws(max_weight: usize) -> Outcome {
    let cases: Vec<(Composition, usize, InsertionStat)> = compositions(max_weight, max_weight)
        .into_iter()
        .filter(|a| a.len() >= 2)
        .flat_map(|a| {
            block_range(&a)
                .flat_map(move |k| InsertionStat::ALL.into_iter().map(move |s| (k, s)))
                .map(move |(k, s)| (a.clone(), k, s))
                .collect::<Vec<_>>()
        })
        .collect();
    over(&cases, |(alpha, k, stat)| {
        insertion_case(alpha, *k, *stat).unwrap_or_else(|e| fail(1, format!("{stat} alpha={alpha} k={k}: {e}")))
    })
}

const PSI_PAIRS: [(InsertionStat, InsertionStat); 6] = [
    (InsertionStat::Inv, InsertionStat::Maj),
    (InsertionStat::Maj, InsertionStat::Inv),
    (InsertionStat::Inv, InsertionStat::Dinv),
    (InsertionStat::Dinv, InsertionStat::Inv),
    (InsertionStat::Dinv, InsertionStat::Maj),
    (InsertionStat::Maj, InsertionStat::Dinv),
];

fn psi_case(alpha: &Composition, k: usize) -> Result<Outcome> {
    let all: Vec<OrderedMultisetPartition> = enumerate_osp(alpha, k).collect();
    let mut checked = 0;
    for (from, to) in PSI_PAIRS {
        let mut images = HashSet::with_capacity(all.len());
        for rho in &all {
            checked += 1;
            let image = insertion::psi(alpha, k, rho, from, to)?;
            if to.eval(&image) != from.eval(rho) {
                return Ok(fail(checked, format!("psi {from}->{to} alpha={alpha} k={k}: {rho} -> {image} breaks transport")));
            }
            if &insertion::psi(alpha, k, &image, to, from)? != rho {
                return Ok(fail(checked, format!("psi {to}->{from} does not invert {from}->{to} on {rho}")));
            }
            images.insert(image);
        }
        if images.len() != all.len() {
            return Ok(fail(checked, format!("psi {from}->{to} alpha={alpha} k={k} is not injective")));
        }
    }
    Ok((checked, None))
}

fn alpha_k_cases(max_weight: usize) -> Vec<(Composition, usize)> {
    compositions(max_weight, max_weight)
        .into_iter()
        .flat_map(|a| block_range(&a).map(move |k| (a.clone(), k)).collect::<Vec<_>>())
        .collect()
}

fn psi_bijection(max_weight: usize) -> Outcome {
    over(&alpha_k_cases(max_weight), |(alpha, k)| {
        psi_case(alpha, *k).unwrap_or_else(|e| fail(1, format!("alpha={alpha} k={k}: {e}")))
    })
}

fn rl_minima(max_weight: usize) -> Outcome {
    over(&alpha_k_cases(max_weight), |(alpha, k)| {
        match insertion::check_rl_minima(alpha, *k, InsertionStat::Inv, InsertionStat::Maj) {
            Ok(r) => match r.counterexample {
                None => (r.checked as u64, None),
                Some((rho, image)) => fail(
                    r.checked as u64,
                    format!("alpha={alpha} k={k}: {} and {} differ", rho.to_starred(), image.to_starred()),
                ),
            },
            Err(e) => fail(1, format!("alpha={alpha} k={k}: {e}")),
        }
    })
}

fn recursions(max_weight: usize) -> Outcome {
    const STATS: [OmpStat; 3] = [OmpStat::Inv, OmpStat::Maj, OmpStat::Dinv];
    let enumerated = over(&compositions(max_weight, max_weight), |alpha| {
        let mut checked = 0;
        for k in block_range(alpha) {
            checked += 1;
            let rec = qpoly::mahonian_rec(alpha, k);
            let dist = qpoly::dist_rec(alpha, k);
            if rec != dist {
                return fail(checked, format!("alpha={alpha} k={k}: mah-rec {rec} != dist-rec {dist}"));
            }
            let (_, d) = osp_dists(alpha, k, &STATS);
            for (s, p) in STATS.iter().zip(&d) {
                if *p != rec {
                    return fail(checked, format!("alpha={alpha} k={k}: {s} distribution {p} != recursion {rec}"));
                }
            }
        }
        (checked, None)
    });
    if enumerated.1.is_some() {
        return enumerated;
    }
    let macmahon = over(&compositions(max_weight, max_weight), |alpha| {
        let parts: Vec<usize> = alpha.parts().iter().map(|&p| p as usize).collect();
        let multinom = match qpoly::q_multinom(alpha.weight(), &parts) {
            Ok(p) => p,
            Err(e) => return fail(1, format!("alpha={alpha}: {e}")),
        };
        let inv = qpoly::word_distribution(WordStat::Inv, alpha);
        let maj = qpoly::word_distribution(WordStat::Maj, alpha);
        if inv != multinom || maj != multinom {
            return fail(1, format!("alpha={alpha}: q-multinomial {multinom}, inv {inv}, maj {maj}"));
        }
        let full = qpoly::mahonian_rec(alpha, alpha.weight());
        if full != multinom {
            return fail(1, format!("alpha={alpha}: M at k=|alpha| is {full}, q-multinomial {multinom}"));
        }
        (1, None)
    });
    (enumerated.0 + macmahon.0, macmahon.1)
}

fn stirling(max_n: usize) -> Outcome {
    let mut cases: Vec<(usize, usize)> = Vec::new();
    for a in 1..=3 {
        for n in 1..=3 {
            cases.push((a, n));
        }
    }
    let prop = over(&cases, |&(a, n)| {
        let alpha = Composition::new(vec![a as u32; n]).expect("positive parts");
        let mut checked = 0;
        let fact_a = qpoly::q_fact(a).pow(n as u32);
        for k in 1..=a * n {
            checked += 1;
            let s = match qpoly::gen_q_stirling(n, k, a) {
                Ok(s) => s,
                Err(e) => return fail(checked, format!("a={a} n={n} k={k}: {e}")),
            };
            let m = qpoly::distribution(OmpStat::Inv, &alpha, k);
            if &m * &fact_a != &qpoly::q_fact(k) * &s {
                return fail(checked, format!("a={a} n={n} k={k}: M={m}, S={s}"));
            }
        }
        (checked, None)
    });
    if prop.1.is_some() {
        return prop;
    }
    let ns: Vec<usize> = (1..=max_n).collect();
    let a_one = over(&ns, |&n| {
        let alpha = Composition::ones(n);
        let mut checked = 0;
        for k in 1..=n {
            checked += 1;
            let stir = qpoly::q_stirling(n, k);
            let generalized = qpoly::gen_q_stirling(n, k, 1).unwrap_or_default();
            if generalized != stir {
                return fail(checked, format!("n={n} k={k}: a=1 recursion {generalized} != {stir}"));
            }
            let m = qpoly::distribution(OmpStat::Inv, &alpha, k);
            if m != &qpoly::q_fact(k) * &stir {
                return fail(checked, format!("n={n} k={k}: M={m} != [k]!·{stir}"));
            }
        }
        (checked, None)
    });
    (prop.0 + a_one.0, a_one.1)
}

fn main_result(max_weight: usize) -> Outcome {
    over(&compositions(max_weight, max_weight), |alpha| {
        let (lhs, rhs) = qpoly::main_result_sides(alpha);
        if lhs != rhs {
            return fail(1, format!("alpha={alpha}: LHS {lhs} != RHS {rhs}"));
        }
        let mut checked = 1;
        for k in block_range(alpha) {
            checked += 1;
            let z = (alpha.weight() - k) as i64;
            let (_, d) = osp_dists(alpha, k, &[OmpStat::Maj, OmpStat::Inv]);
            let left = lhs.coefficient(&[("z", z)]);
            let right = rhs.coefficient(&[("z", z)]);
            if left != d[0] || right != d[1] {
                return fail(checked, format!("alpha={alpha} k={k}: z^{z} coefficients {left} / {right}, distributions {} / {}", d[0], d[1]));
            }
        }
        (checked, None)
    })
}

fn minimaj_conjecture(max_weight: usize) -> Outcome {
    let alphas = compositions(max_weight, max_weight);
    let dist = over(&alphas, |alpha| {
        let mut checked = 0;
        for k in block_range(alpha) {
            checked += 1;
            let (_, d) = osp_dists(alpha, k, &[OmpStat::Inv, OmpStat::Minimaj]);
            if d[0] != d[1] {
                return fail(checked, format!("alpha={alpha} k={k}: inv {} minimaj {}", d[0], d[1]));
            }
        }
        (checked, None)
    });
    if dist.1.is_some() {
        return dist;
    }
    let ns: Vec<usize> = (1..=max_weight.min(7)).collect();
    let shaped = over(&ns, |&n| {
        let alpha = Composition::ones(n);
        let mut by_shape: BTreeMap<Vec<usize>, (Vec<u64>, Vec<u64>)> = BTreeMap::new();
        for k in 1..=n {
            for pi in enumerate_osp(&alpha, k) {
                let slot = by_shape.entry(pi.shape()).or_default();
                slot.0.push(pi.inv());
                slot.1.push(pi.minimaj());
            }
        }
        let mut checked = 0;
        for (shape, (inv, minimaj)) in by_shape {
            checked += 1;
            let (a, b) = (q_dist(inv), q_dist(minimaj));
            if a != b {
                return fail(checked, format!("n={n} shape={shape:?}: inv {a} minimaj {b}"));
            }
        }
        (checked, None)
    });
    (dist.0 + shaped.0, shaped.1)
}

fn hook_cases(max_n: usize) -> Vec<(usize, usize)> {
    (1..=max_n).flat_map(|n| (0..n).map(move |m| (n, m))).collect()
}

fn macdonald_symmetry(max_n: usize) -> Outcome {
    let hooks = over(&hook_cases(max_n), |&(n, m)| {
        let f = match macdonald::hmac_monomial(n, m, n) {
            Ok(f) => f,
            Err(e) => return fail(1, format!("n={n} m={m}: {e}")),
        };
        if !macdonald::is_symmetric(&f, n) {
            return fail(1, format!("n={n} m={m}: not symmetric in x_1..x_{n}"));
        }
        match macdonald::hmac_rlmaj_form(n, m, n) {
            Ok(g) if g == f => (2, None),
            Ok(_) => fail(2, format!("n={n} m={m}: rlmaj form differs")),
            Err(e) => fail(2, format!("n={n} m={m}: {e}")),
        }
    });
    if hooks.1.is_some() {
        return hooks;
    }
    // descent-preserving pairing: the constructive symmetry witness
    let lengths: Vec<usize> = (1..=max_n.max(8)).collect();
    let pairing = over(&lengths, |&len| {
        let alphabet = if len <= max_n { len.max(3) as u32 } else { 3 };
        let mut checked = 0;
        for w in words::all_words(len, alphabet) {
            for r in 1..alphabet {
                checked += 1;
                let image = macdonald::r_pairing_involution(&w, r);
                if let Some(msg) = pairing_failure(&w, &image, r) {
                    return fail(checked, msg);
                }
            }
        }
        (checked, None)
    });
    (hooks.0 + pairing.0, pairing.1)
}

fn pairing_failure(w: &Word, image: &Word, r: u32) -> Option<String> {
    let max = w.max_letter().max(r + 1);
    let (c, d) = (w.content(max), image.content(max));
    let (r0, r1) = (r as usize - 1, r as usize);
    let swapped = c[r0] == d[r1] && c[r1] == d[r0] && c.iter().enumerate().all(|(i, &x)| i == r0 || i == r1 || x == d[i]);
    if !swapped {
        return Some(format!("r={r}: {w} -> {image} does not swap the multiplicities"));
    }
    if w.descent_set() != image.descent_set() {
        return Some(format!("r={r}: {w} -> {image} changes the descent set"));
    }
    if &macdonald::r_pairing_involution(image, r) != w {
        return Some(format!("r={r}: {w} -> {image} is not an involution"));
    }
    None
}

fn macdonald_schur(max_n: usize) -> Outcome {
    let schur_round_trip = over(&(1..=max_n.min(5)).collect::<Vec<_>>(), |&n| {
        let mut checked = 0;
        for lambda in Partition::all_of(n) {
            checked += 1;
            let s = macdonald::schur_polynomial(&lambda, n);
            match macdonald::schur_extract(&s, n, n) {
                Ok(e) if e.terms == vec![(lambda.clone(), LaurentPolynomial::one())] => {}
                Ok(e) => return fail(checked, format!("s_{lambda} extracts to {:?}", e.terms)),
                Err(e) => return fail(checked, format!("s_{lambda}: {e}")),
            }
        }
        (checked, None)
    });
    if schur_round_trip.1.is_some() {
        return schur_round_trip;
    }
    let hooks = over(&hook_cases(max_n), |&(n, m)| {
        let expansion = match macdonald::hmac_monomial(n, m, n).and_then(|f| macdonald::schur_extract(&f, n, n)) {
            Ok(e) => e,
            Err(e) => return fail(1, format!("n={n} m={m}: {e}")),
        };
        let mut checked = 0;
        for lambda in Partition::all_of(n) {
            checked += 1;
            let extracted = expansion.get(&lambda).cloned().unwrap_or_default();
            let theorem = match macdonald::schur_coeff_theorem(&lambda, m) {
                Ok(t) => t,
                Err(e) => return fail(checked, format!("n={n} m={m} lambda={lambda}: {e}")),
            };
            if extracted != theorem {
                return fail(checked, format!("n={n} m={m} lambda={lambda}: extracted {extracted}, tableau formula {theorem}"));
            }
            let plain = extracted.set_zero("u").set_zero("v");
            if !plain.is_nonnegative() {
                return fail(checked, format!("n={n} m={m} lambda={lambda}: u=v=0 coefficient {plain} has a negative term"));
            }
        }
        (checked, None)
    });
    (schur_round_trip.0 + hooks.0, hooks.1)
}

/// `(q, t, u, v) ↦ (t, q, v, u)`.
pub fn swap_qt_uv(p: &LaurentPolynomial) -> LaurentPolynomial {
    p.rename(&[("q", "t"), ("t", "q"), ("u", "v"), ("v", "u")])
}

fn hook_swap(max_n: usize) -> Outcome {
    let schur = over(&hook_cases(max_n), |&(n, m)| {
        let mut checked = 0;
        for lambda in Partition::all_of(n) {
            checked += 1;
            let a = macdonald::schur_coeff_theorem(&lambda, m);
            let b = macdonald::schur_coeff_theorem(&lambda, n - 1 - m);
            match (a, b) {
                (Ok(a), Ok(b)) if a == swap_qt_uv(&b) => {}
                (Ok(a), Ok(b)) => {
                    return fail(checked, format!("n={n} m={m} lambda={lambda}: {a} vs swapped {}", swap_qt_uv(&b)))
                }
                (Err(e), _) | (_, Err(e)) => return fail(checked, format!("n={n} m={m}: {e}")),
            }
        }
        (checked, None)
    });
    if schur.1.is_some() {
        return schur;
    }
    let monomial = over(&hook_cases(max_n), |&(n, m)| {
        let pair = macdonald::hmac_monomial(n, m, n).and_then(|a| Ok((a, macdonald::hmac_monomial(n, n - 1 - m, n)?)));
        match pair {
            Ok((a, b)) if a == swap_qt_uv(&b) => (1, None),
            Ok(_) => fail(1, format!("n={n} m={m}: monomial expansions differ after the swap")),
            Err(e) => fail(1, format!("n={n} m={m}: {e}")),
        }
    });
    (schur.0 + monomial.0, monomial.1)
}

