//! Command-line front end for the `mahonian` library.
//!
//! [`run`] parses arguments, dispatches one subcommand and returns the bytes
//! destined for stdout and stderr together with the exit status. Output is
//! produced by [`emit`] and is byte-identical across runs and worker counts.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use mahonian::insertion::{self, InsertionStat, PsiTrace};
use mahonian::macdonald::{self, Partition, SchurExpansion};
use mahonian::omp::{block_range, enumerate_osp, OmpStat};
use mahonian::qpoly::{self, LaurentPolynomial};
use mahonian::verify::{Suite, SuiteReport};
use mahonian::{Composition, OrderedMultisetPartition, StarredPermutation};
use serde_json::{json, Value};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_FAILED: u8 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] mahonian::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "mahonian", version, about = "Mahonian statistics on ordered multiset partitions")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Worker threads for parallel sums (0 = one per core).
    #[arg(long, env = "MAHONIAN_WORKERS", global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// inv, maj, dinv and minimaj of one partition.
    Stats {
        /// Partition in bar notation, e.g. `24|134|2`.
        #[arg(long, conflicts_with = "word", required_unless_present = "word")]
        omp: Option<String>,
        /// Partition as a starred word, e.g. `4*24*3*12` or `4*2 4*3*1 2`.
        #[arg(long)]
        word: Option<String>,
    },
    /// Lists osp(alpha, k) in starred lexicographic order.
    Enumerate {
        #[arg(long)]
        alpha: Composition,
        /// Number of blocks; every valid k when omitted.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Distribution polynomials, enumerated and by recursion.
    Dist {
        #[arg(long, required_unless_present = "max_weight")]
        alpha: Option<Composition>,
        #[arg(long)]
        k: Option<usize>,
        /// inv, maj, dinv or minimaj; all four when omitted.
        #[arg(long)]
        stat: Option<OmpStat>,
        /// Tabulate every composition up to this weight instead of one alpha.
        #[arg(long, conflicts_with = "alpha")]
        max_weight: Option<usize>,
    },
    /// Trace of the bijection psi between two statistics.
    Bijection {
        #[arg(long)]
        alpha: Composition,
        #[arg(long)]
        k: usize,
        #[arg(long, conflicts_with = "word", required_unless_present = "word")]
        omp: Option<String>,
        #[arg(long)]
        word: Option<String>,
        /// Source and target statistic, e.g. `inv,maj`.
        #[arg(long, default_value = "inv,maj")]
        stat: String,
    },
    /// Monomial and Schur expansions of the starred hook Macdonald polynomial.
    Macdonald {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Number of x variables; defaults to n.
        #[arg(long)]
        vars: Option<usize>,
    },
    /// Runs invariant suites over a bounded range.
    Verify {
        /// Suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Overrides the default bound (weight or n) of each suite.
        #[arg(long)]
        max_weight: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub status: u8,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

/// What a subcommand produced, before formatting.
#[derive(Debug, Clone)]
pub enum Payload {
    Stats { partition: OrderedMultisetPartition },
    Enumerate { alpha: Composition, items: Vec<(usize, OrderedMultisetPartition)> },
    Dist { rows: Vec<DistRow> },
    Bijection { trace: PsiTrace, starred: bool },
    Macdonald { n: usize, m: usize, num_x: usize, monomial: LaurentPolynomial, schur: SchurExpansion, formula_ok: Vec<bool> },
    Verify { reports: Vec<SuiteReport> },
}

#[derive(Debug, Clone)]
pub struct DistRow {
    pub alpha: Composition,
    pub k: usize,
    pub stat: OmpStat,
    pub enumerated: LaurentPolynomial,
    pub recursion: LaurentPolynomial,
}

impl DistRow {
    pub fn agrees(&self) -> bool {
        self.enumerated == self.recursion
    }
}

impl Payload {
    /// True when the payload records a failed check; the exit status is then 2.
    pub fn failed(&self) -> bool {
        match self {
            Payload::Dist { rows } => rows.iter().any(|r| !r.agrees()),
            Payload::Macdonald { formula_ok, .. } => formula_ok.iter().any(|ok| !ok),
            Payload::Verify { reports } => reports.iter().any(|r| !r.passed()),
            _ => false,
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { status, stdout: Vec::new(), stderr: text }
            } else {
                Output { status, stdout: text.into_bytes(), stderr: String::new() }
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.workers.unwrap_or(0)).build() {
        Ok(pool) => pool,
        Err(e) => return usage(format!("cannot start workers: {e}")),
    };
    let mut warnings = String::new();
    match pool.install(|| dispatch(&cli.command, &mut warnings)) {
        Ok(payload) => {
            let status = if payload.failed() { EXIT_FAILED } else { EXIT_OK };
            if status == EXIT_FAILED {
                warnings.push_str("error: verification failed\n");
            }
            Output { status, stdout: emit(cli.format, &payload), stderr: warnings }
        }
        Err(e) => {
            warnings.push_str(&format!("error: {e}\n"));
            Output { status: EXIT_USAGE, stdout: Vec::new(), stderr: warnings }
        }
    }
}

fn usage(msg: String) -> Output {
    Output { status: EXIT_USAGE, stdout: Vec::new(), stderr: format!("error: {msg}\n") }
}

fn parse_partition(omp: Option<&str>, word: Option<&str>) -> Result<(OrderedMultisetPartition, bool), CliError> {
    match (omp, word) {
        (Some(s), None) => Ok((s.parse()?, false)),
        (None, Some(s)) => {
            let sp = if s.trim().contains(' ') { s.parse::<StarredPermutation>()? } else { StarredPermutation::parse_compact(s)? };
            Ok((sp.to_partition(), true))
        }
        _ => Err(CliError::Usage("give exactly one of --omp and --word".into())),
    }
}

fn check_k(alpha: &Composition, k: usize) -> Result<(), CliError> {
    let range = block_range(alpha);
    if range.contains(&k) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("k={k} outside {}..={} for alpha={alpha}", range.start(), range.end())))
    }
}

fn dispatch(command: &Command, warnings: &mut String) -> Result<Payload, CliError> {
    match command {
        Command::Stats { omp, word } => {
            let (partition, _) = parse_partition(omp.as_deref(), word.as_deref())?;
            Ok(Payload::Stats { partition })
        }
        Command::Enumerate { alpha, k } => {
            let ks: Vec<usize> = match k {
                Some(k) => {
                    check_k(alpha, *k)?;
                    vec![*k]
                }
                None => block_range(alpha).collect(),
            };
            let items = ks.into_iter().flat_map(|k| enumerate_osp(alpha, k).map(move |p| (k, p))).collect();
            Ok(Payload::Enumerate { alpha: alpha.clone(), items })
        }
        Command::Dist { alpha, k, stat, max_weight } => {
            let alphas = match (alpha, max_weight) {
                (Some(a), _) => vec![a.clone()],
                (None, Some(w)) => {
                    if *w > 8 {
                        warnings.push_str(&format!("warning: --max-weight {w} exceeds 8 and may be slow\n"));
                    }
                    Composition::all_up_to(*w, *w)
                }
                (None, None) => return Err(CliError::Usage("give --alpha or --max-weight".into())),
            };
            if let (Some(a), Some(k)) = (alpha, k) {
                check_k(a, *k)?;
            }
            let stats: Vec<OmpStat> = stat.map_or_else(|| OmpStat::ALL.to_vec(), |s| vec![s]);
            let mut rows = Vec::new();
            for a in &alphas {
                for kk in block_range(a).filter(|kk| k.is_none_or(|k| k == *kk)) {
                    let recursion = qpoly::mahonian_rec(a, kk);
                    for &s in &stats {
                        let enumerated = qpoly::distribution(s, a, kk);
                        rows.push(DistRow { alpha: a.clone(), k: kk, stat: s, enumerated, recursion: recursion.clone() });
                    }
                }
            }
            Ok(Payload::Dist { rows })
        }
        Command::Bijection { alpha, k, omp, word, stat } => {
            let (from, to) = stat
                .split_once(',')
                .ok_or_else(|| CliError::Usage(format!("--stat expects FROM,TO, got {stat:?}")))?;
            let from: InsertionStat = from.trim().parse()?;
            let to: InsertionStat = to.trim().parse()?;
            let (rho, starred) = parse_partition(omp.as_deref(), word.as_deref())?;
            check_k(alpha, *k)?;
            let trace = insertion::psi_trace(alpha, *k, &rho, from, to)?;
            Ok(Payload::Bijection { trace, starred })
        }
        Command::Macdonald { n, m, vars } => {
            let num_x = vars.unwrap_or(*n);
            if *n == 0 || m >= n {
                return Err(CliError::Usage(format!("need 0 <= m < n, got n={n} m={m}")));
            }
            if num_x < *n {
                return Err(CliError::Usage(format!("--vars must be at least n={n}")));
            }
            if num_x > 6 {
                warnings.push_str(&format!("warning: {num_x}^{n} words to sum; this may be slow\n"));
            }
            let monomial = macdonald::hmac_monomial(*n, *m, num_x)?;
            let schur = macdonald::schur_extract(&monomial, *n, num_x)?;
            let mut formula_ok = Vec::new();
            for lambda in Partition::all_of(*n) {
                let got = schur.get(&lambda).cloned().unwrap_or_default();
                formula_ok.push(got == macdonald::schur_coeff_theorem(&lambda, *m)?);
            }
            Ok(Payload::Macdonald { n: *n, m: *m, num_x, monomial, schur, formula_ok })
        }
        Command::Verify { suite, max_weight } => {
            let suites: Vec<Suite> = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse()?] };
            for s in &suites {
                if let Some(b) = max_weight {
                    if *b > s.default_bound() {
                        warnings.push_str(&format!(
                            "warning: bound {b} exceeds the default {} for {s}; this may be slow\n",
                            s.default_bound()
                        ));
                    }
                }
            }
            let reports = suites.into_iter().map(|s| s.run(*max_weight)).collect();
            Ok(Payload::Verify { reports })
        }
    }
}

fn json_lines(value: Value) -> Vec<u8> {
    let mut out = value.to_string().into_bytes();
    out.push(b'\n');
    out
}

fn parts_json(alpha: &Composition) -> Value {
    json!(alpha.parts())
}

/// Serializes a payload in the requested format.
pub fn emit(format: Format, payload: &Payload) -> Vec<u8> {
    let mut out = String::new();
    match payload {
        Payload::Stats { partition } => {
            let stats: Vec<(&str, u64)> = OmpStat::ALL.iter().map(|&s| (s.name(), partition.stat(s))).collect();
            match format {
                Format::Json => {
                    let mut obj = serde_json::Map::new();
                    obj.insert("partition".into(), json!(partition.to_string()));
                    obj.insert("starred".into(), json!(partition.to_starred().to_string()));
                    for (name, v) in &stats {
                        obj.insert((*name).into(), json!(v));
                    }
                    return json_lines(Value::Object(obj));
                }
                Format::Tsv => {
                    out.push_str("partition\tstarred");
                    for (name, _) in &stats {
                        let _ = write!(out, "\t{name}");
                    }
                    let _ = write!(out, "\n{partition}\t{}", partition.to_starred());
                    for (_, v) in &stats {
                        let _ = write!(out, "\t{v}");
                    }
                    out.push('\n');
                }
                Format::Text => {
                    let _ = writeln!(out, "partition {partition}");
                    let _ = writeln!(out, "starred {}", partition.to_starred());
                    for (name, v) in &stats {
                        let _ = writeln!(out, "{name}={v}");
                    }
                }
            }
        }
        Payload::Enumerate { alpha, items } => match format {
            Format::Json => {
                let list: Vec<Value> = items
                    .iter()
                    .map(|(k, p)| json!({ "k": k, "bar": p.to_string(), "starred": p.to_starred().to_string() }))
                    .collect();
                return json_lines(json!({ "alpha": parts_json(alpha), "partitions": list }));
            }
            Format::Tsv => {
                out.push_str("bar\tstarred\n");
                for (_, p) in items {
                    let _ = writeln!(out, "{p}\t{}", p.to_starred());
                }
            }
            Format::Text => {
                for (_, p) in items {
                    let _ = writeln!(out, "{p}");
                }
                let _ = writeln!(out, "total {}", items.len());
            }
        },
        Payload::Dist { rows } => match format {
            Format::Json => {
                let list: Vec<Value> = rows
                    .iter()
                    .map(|r| {
                        json!({
                            "alpha": parts_json(&r.alpha),
                            "k": r.k,
                            "stat": r.stat.name(),
                            "polynomial": r.enumerated.to_json(),
                            "total": r.enumerated.eval_at_one().to_string(),
                            "matches_recursion": r.agrees(),
                        })
                    })
                    .collect();
                return json_lines(Value::Array(list));
            }
            Format::Tsv => {
                out.push_str("alpha\tk\tstat\tpolynomial\n");
                for r in rows {
                    let _ = writeln!(out, "{}\t{}\t{}\t{}", r.alpha, r.k, r.stat, r.enumerated);
                }
            }
            Format::Text => {
                for (i, r) in rows.iter().enumerate() {
                    if i > 0 {
                        out.push('\n');
                    }
                    let _ = writeln!(out, "alpha {} k {} stat {}", r.alpha, r.k, r.stat);
                    for (e, c) in r.enumerated.terms() {
                        let _ = writeln!(out, "q^{} coeff {c}", e.first().copied().unwrap_or(0));
                    }
                    let _ = writeln!(out, "total {}", r.enumerated.eval_at_one());
                    if r.agrees() {
                        out.push_str("recursion agrees\n");
                    } else {
                        let _ = writeln!(out, "recursion DIFFERS: {}", r.recursion);
                    }
                }
            }
        },
        Payload::Bijection { trace, starred } => {
            let render = |p: &OrderedMultisetPartition| {
                if *starred {
                    p.to_starred().to_compact_string()
                } else {
                    p.to_string()
                }
            };
            match format {
                Format::Json => {
                    let rows: Vec<Value> = trace
                        .rows
                        .iter()
                        .map(|row| {
                            let peeled = row.peeled.as_ref().map(|(l, u, b)| json!({ "l": l, "U": u, "B": b }));
                            json!({
                                "n": row.letter,
                                "alpha": parts_json(&row.alpha),
                                "k": row.k,
                                "pi": render(&row.partition),
                                "peeled": peeled,
                                "psi": render(&row.image),
                            })
                        })
                        .collect();
                    return json_lines(json!({
                        "from": trace.from.name(),
                        "to": trace.to.name(),
                        "rows": rows,
                        "result": render(trace.result()),
                    }));
                }
                Format::Tsv | Format::Text => out.push_str(&trace.render(render)),
            }
        }
        Payload::Macdonald { n, m, num_x, monomial, schur, formula_ok } => match format {
            Format::Json => {
                return json_lines(json!({
                    "n": n,
                    "m": m,
                    "vars": num_x,
                    "monomial": monomial.to_json(),
                    "schur": schur.to_json(),
                    "matches_tableau_formula": formula_ok.iter().all(|ok| *ok),
                }));
            }
            Format::Tsv => {
                out.push_str("lambda\tcoeff\n");
                for (lambda, c) in &schur.terms {
                    let _ = writeln!(out, "{lambda}\t{c}");
                }
            }
            Format::Text => {
                let _ = writeln!(out, "n {n} m {m} vars {num_x}");
                let _ = writeln!(out, "monomial {monomial}");
                for (lambda, c) in &schur.terms {
                    let _ = writeln!(out, "s[{lambda}] {c}");
                }
                let verdict = if formula_ok.iter().all(|ok| *ok) { "agrees" } else { "DIFFERS" };
                let _ = writeln!(out, "tableau formula {verdict}");
            }
        },
        Payload::Verify { reports } => match format {
            Format::Json => {
                let list: Vec<Value> = reports
                    .iter()
                    .map(|r| {
                        json!({
                            "suite": r.suite.name(),
                            "bound": r.bound,
                            "checked": r.checked,
                            "passed": r.passed(),
                            "counterexample": r.counterexample,
                        })
                    })
                    .collect();
                return json_lines(Value::Array(list));
            }
            Format::Tsv => {
                out.push_str("suite\tbound\tchecked\tstatus\tcounterexample\n");
                for r in reports {
                    let status = if r.passed() { "PASS" } else { "FAIL" };
                    let ce = r.counterexample.as_deref().unwrap_or("");
                    let _ = writeln!(out, "{}\t{}\t{}\t{status}\t{ce}", r.suite, r.bound, r.checked);
                }
            }
            Format::Text => {
                for r in reports {
                    let _ = writeln!(out, "{r}");
                }
            }
        },
    }
    out.into_bytes()
}
