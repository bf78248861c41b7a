//! Acceptance gate. Prints one line per criterion and exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use mahonian::insertion::{self, InsertionArgs, InsertionStat};
use mahonian::macdonald;
use mahonian::omp::{block_range, enumerate_osp};
use mahonian::qpoly::LaurentPolynomial;
use mahonian::verify::{Suite, SuiteReport};
use mahonian::{Composition, OrderedMultisetPartition, StarredPermutation, Word};

type Check = std::result::Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn eq<T: PartialEq + std::fmt::Display>(label: &str, got: T, want: T) -> std::result::Result<(), String> {
    ensure(got == want, || format!("{label}: got {got}, want {want}"))
}

fn worked_examples() -> std::result::Result<(), String> {
    let p = |s: &str| s.parse::<OrderedMultisetPartition>().map_err(|e| e.to_string());
    let w = |s: &str| s.parse::<Word>().map_err(|e| e.to_string());

    let carlitz = insertion::psi(&Composition::ones(5), 5, &p("5|2|1|4|3")?, InsertionStat::Inv, InsertionStat::Maj)
        .map_err(|e| e.to_string())?;
    eq("psi_5(52143)", carlitz.reading_word().to_string().as_str(), "24153")?;

    let word = insertion::insert_maj_word(&w("323113")?, &[5, 5]).map_err(|e| e.to_string())?;
    eq("maj insertion of 323113 with {5,5}", word.to_string().as_str(), "32431413")?;
    eq("maj(32431413)", word.maj(), 14)?;

    let pi = p("24|134|2")?;
    eq("maj(24|134|2)", pi.maj(), 2)?;
    eq("dinv(24|134|2)", pi.dinv(), 3)?;
    eq("inv(15|23|4)", p("15|23|4")?.inv(), 2)?;
    eq("minimaj word of 13|23|14|234", p("13|23|14|234")?.minimaj_word().to_string().as_str(), "312341234")?;

    let args = InsertionArgs::new(p("3|1|2|2|13")?, vec![2, 0], vec![3]).map_err(|e| e.to_string())?;
    let out = insertion::phi_inv(&args, 4).map_err(|e| e.to_string())?;
    eq("inv insertion", out.to_string().as_str(), "3|1|4|24|2|134")?;

    let base = "3 1 2 2 3*1".parse::<StarredPermutation>().map_err(|e| e.to_string())?.to_partition();
    let args = InsertionArgs::new(base, vec![2, 0], vec![3]).map_err(|e| e.to_string())?;
    let out = insertion::phi_maj_starred(&args, 4).map_err(|e| e.to_string())?;
    eq("maj insertion", out.to_string().as_str(), "4 3*1 4 4*2 2 3*1")?;
    eq("maj of maj insertion", out.maj(), 10)?;

    let labels = insertion::dinv_block_labels(&p("124|2|13|134|1")?);
    eq("dinv block labels", labels.to_string().as_str(), "0|3|2|1|4")?;

    let paired = macdonald::r_pairing(&w("24231243331324123321")?, 2);
    eq("2-pairing", paired.to_string().as_str(), "34331242231324122321")?;

    let stars: BTreeSet<usize> = [2, 4].into_iter().collect();
    let filling = macdonald::filling_weight(&w("25361748")?, 3, &stars).map_err(|e| e.to_string())?;
    let q2t = LaurentPolynomial::monomial(&[("q", 2), ("t", 1)], 1);
    eq("starred hook filling", filling.coefficient(&[("u", 1), ("v", 1)]), q2t.clone())?;
    eq("starred hook filling", filling, &q2t * &LaurentPolynomial::monomial(&[("u", 1), ("v", 1)], 1))?;
    Ok(())
}

fn starred_round_trips(max_weight: usize) -> std::result::Result<u64, String> {
    let mut checked = 0;
    for alpha in Composition::all_up_to(max_weight, max_weight) {
        for k in block_range(&alpha) {
            for pi in enumerate_osp(&alpha, k) {
                checked += 1;
                let sp = pi.to_starred();
                let back = OrderedMultisetPartition::from_starred(&sp).map_err(|e| e.to_string())?;
                ensure(back == pi, || format!("{pi} -> {sp} -> {back}"))?;
            }
        }
    }
    Ok(checked)
}

fn suites(list: &[Suite]) -> Check {
    let reports: Vec<SuiteReport> = list.iter().map(|s| s.run(None)).collect();
    let summary = reports.iter().map(|r| format!("{} {}", r.suite, r.checked)).collect::<Vec<_>>().join(", ");
    match reports.iter().find(|r| !r.passed()) {
        None => Ok(summary),
        Some(r) => Err(r.to_string()),
    }
}

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    run: Box<dyn Fn() -> Check>,
}

fn main() -> ExitCode {
    let threads = rayon::current_num_threads();
    let macdonald_budget = Duration::from_secs(if threads > 1 { 600 } else { 2400 });
    let criteria = vec![
        Criterion {
            id: 1,
            title: "worked examples reproduce exactly",
            budget: Duration::from_secs(1),
            run: Box::new(|| worked_examples().map(|()| "all values match".into())),
        },
        Criterion {
            id: 2,
            title: "inv, maj, dinv equidistributed for |alpha| <= 8 with at most 4 parts",
            budget: Duration::from_secs(120),
            run: Box::new(|| suites(&[Suite::Equidistribution])),
        },
        Criterion {
            id: 3,
            title: "psi bijections transport statistics and keep right-to-left minima for |alpha| <= 7",
            budget: Duration::from_secs(120),
            run: Box::new(|| suites(&[Suite::PsiBijection, Suite::RlMinima])),
        },
        Criterion {
            id: 4,
            title: "q-multinomial, both recursions and the generalized q-Stirling identity",
            budget: Duration::from_secs(60),
            run: Box::new(|| suites(&[Suite::Recursions, Suite::Stirling])),
        },
        Criterion {
            id: 5,
            title: "two-variable identity in q and z for |alpha| <= 7",
            budget: Duration::from_secs(60),
            run: Box::new(|| suites(&[Suite::MainResult])),
        },
        Criterion {
            id: 6,
            title: "minimaj conjecture for |alpha| <= 8 and the shape-refined form for n <= 7",
            budget: Duration::from_secs(120),
            run: Box::new(|| suites(&[Suite::MinimajConjecture])),
        },
        Criterion {
            id: 7,
            title: "hook Macdonald symmetry, Schur coefficients, positivity and q/t swap for n <= 6",
            budget: macdonald_budget,
            run: Box::new(|| suites(&[Suite::MacdonaldSymmetry, Suite::MacdonaldSchur, Suite::HookSwap])),
        },
        Criterion {
            id: 8,
            title: "insertion inverses for |alpha| <= 6 and starred round trips for |alpha| <= 7",
            budget: Duration::from_secs(60),
            run: Box::new(|| {
                let laws = suites(&[Suite::InsertionLaws])?;
                let starred = starred_round_trips(7)?;
                Ok(format!("{laws}, starred {starred}"))
            }),
        },
    ];

    println!("acceptance: {} criteria, {threads} worker thread(s)", criteria.len());
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let timing = format!("{:.2}s of {}s", elapsed.as_secs_f64(), c.budget.as_secs());
        let line = match outcome {
            Ok(detail) if elapsed <= c.budget => format!("[PASS] criterion {}: {} ({detail}; {timing})", c.id, c.title),
            Ok(detail) => format!("[FAIL] criterion {}: {} ({detail}; over budget, {timing})", c.id, c.title),
            Err(why) => format!("[FAIL] criterion {}: {} ({why}; {timing})", c.id, c.title),
        };
        if line.starts_with("[FAIL]") {
            failures += 1;
        }
        println!("{line}");
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
