//! Command-line front end.
//!
//! Exit codes: `0` success, `1` usage, parse or input error, `2` when a
//! verification finds a violation or a classification is `NoAction`.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use gsig_core::bounds::{
    c1_squared, classify, max_strictly_under, max_under, universal_bound, BoundTerms,
};
use gsig_core::dedekind::{
    dedekind_sum_direct, dedekind_sum_fast, dedekind_symbol, defect, defect_extremal, primes_up_to,
};
use gsig_core::enumerate::{enumerate, SearchWindow};
use gsig_core::evidence::derive_star;
use gsig_core::homology::{decompositions, forces_trivial};
use gsig_core::lightcone::{check_cone_lemma, cone_position, pairing};
use gsig_core::{
    LorentzVector, ManifoldInvariants, PrimeOrder, Rational, RotationNumber, StarEvidence, Verdict,
};

use crate::catalog::{find, load_catalog_file, seed_catalog, serialize_catalog, CatalogEntry};
use crate::report::{Report, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "gsig", version, about = "Dedekind sums, signature defects and fixed-sphere bounds")]
struct Cli {
    /// Catalog file overriding the built-in seed catalog.
    #[arg(long, global = true, env = "GSIG_CATALOG", value_name = "FILE")]
    catalog: Option<PathBuf>,
    /// Emit the machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Add a rounded decimal column with N digits.
    #[arg(long, global = true, value_name = "N")]
    decimal: Option<u32>,
    /// Include elapsed time (outside the canonical report).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Signature defect def(p; q, 1) of an isolated fixed point.
    Defect {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
    },
    /// Dedekind sum s(q, p).
    Dedekind {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        /// Also evaluate the direct O(p) sum and compare.
        #[arg(long)]
        check: bool,
    },
    /// Check |def(p; q, 1)| <= (p-1)(p-2)/3 for all primes p <= PMAX and all q.
    VerifyLemma {
        #[arg(long)]
        pmax: u32,
        /// Also compare the fast Dedekind sum with the direct sum.
        #[arg(long)]
        oracle: bool,
    },
    /// All (t, c, r) with t + c(p-1) + rp = b2.
    Decompose {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        b2: u64,
    },
    /// Sphere bounds for a manifold and prime.
    Bound {
        #[command(flatten)]
        manifold: ManifoldArgs,
        #[arg(long)]
        p: u64,
        /// Cap on sphere self-intersections; defaults to -2 if minimal, else -1.
        #[arg(long, allow_negative_numbers = true)]
        s: Option<i64>,
    },
    /// Classify homologically trivial smooth Z_p actions.
    Classify {
        #[command(flatten)]
        manifold: ManifoldArgs,
        #[arg(long)]
        p: u64,
    },
    /// Enumerate fixed-point data satisfying the G-signature equation.
    Enumerate {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_negative_numbers = true)]
        chi: i64,
        #[arg(long, allow_negative_numbers = true)]
        sigma: i64,
        #[arg(long, allow_negative_numbers = true)]
        smin: i64,
        #[arg(long, allow_negative_numbers = true)]
        smax: i64,
        #[arg(long)]
        star: bool,
        #[arg(long)]
        minimal: bool,
        #[arg(long)]
        allow_zero: bool,
        /// List every solution.
        #[arg(long)]
        full: bool,
    },
    /// Light cone positions and lemma check for vectors in a (1, k) basis.
    Cone {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Inspect the manifold catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogCommand,
    },
    /// Classify every catalog entry for a list of primes.
    Sweep {
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7,11,13")]
        primes: Vec<u64>,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    List,
    Show { id: String },
    /// Print the catalog in canonical TOML.
    Export,
}

#[derive(Args, Debug)]
struct ManifoldArgs {
    /// Catalog entry name.
    #[arg(long, conflicts_with_all = ["chi", "sigma"], required_unless_present = "chi")]
    manifold: Option<String>,
    #[arg(long, allow_negative_numbers = true, requires = "sigma")]
    chi: Option<i64>,
    #[arg(long, allow_negative_numbers = true, requires = "chi")]
    sigma: Option<i64>,
    #[arg(long)]
    spin: bool,
    #[arg(long)]
    minimal: bool,
    /// Evidence flags, comma separated.
    #[arg(long, value_delimiter = ',')]
    flags: Vec<String>,
}

struct Context_ {
    catalog: Vec<CatalogEntry>,
    digits: Option<u32>,
}

impl Context_ {
    fn manifold(&self, args: &ManifoldArgs) -> anyhow::Result<ManifoldInvariants> {
        if let Some(id) = &args.manifold {
            return Ok(find(&self.catalog, id)?.invariants.clone());
        }
        let (Some(chi), Some(sigma)) = (args.chi, args.sigma) else {
            bail!("either --manifold or both --chi and --sigma are required");
        };
        let facts = StarEvidence::from_flags(args.flags.iter().map(String::as_str))?;
        Ok(ManifoldInvariants::new(format!("chi={chi},sigma={sigma}"), chi, sigma)?
            .with_spin(args.spin)
            .with_minimal(args.minimal)
            .with_evidence(facts))
    }
}

/// Human output plus exit status of one command.
struct Outcome {
    report: Report,
    text: Option<String>,
    code: i32,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Outcome { report, text: None, code: EXIT_OK }
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let report = outcome.report;
            let text = if cli.json {
                report.to_json() + "\n"
            } else {
                outcome.text.unwrap_or_else(|| report.render_text())
            };
            let _ = out.write_all(text.as_bytes());
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}

fn execute(cli: &Cli) -> anyhow::Result<Outcome> {
    let start = Instant::now();
    let catalog = match &cli.catalog {
        Some(path) => load_catalog_file(path)?,
        None => seed_catalog(),
    };
    let ctx = Context_ { catalog, digits: cli.decimal };
    let mut outcome = match &cli.command {
        Command::Defect { p, q } => cmd_defect(&ctx, *p, *q)?,
        Command::Dedekind { p, q, check } => cmd_dedekind(&ctx, *p, *q, *check)?,
        Command::VerifyLemma { pmax, oracle } => cmd_verify_lemma(*pmax, *oracle),
        Command::Decompose { p, b2 } => cmd_decompose(*p, *b2)?,
        Command::Bound { manifold, p, s } => cmd_bound(&ctx, manifold, *p, *s)?,
        Command::Classify { manifold, p } => cmd_classify(&ctx, manifold, *p)?,
        Command::Enumerate { p, chi, sigma, smin, smax, star, minimal, allow_zero, full } => {
            let mut window = SearchWindow::new(*smin, *smax)?;
            window.require_star = *star;
            window.require_minimal = *minimal;
            window.allow_zero_square = *allow_zero;
            cmd_enumerate(*p, *chi, *sigma, &window, *full)?
        }
        Command::Cone { a, b } => cmd_cone(&ctx, a, b)?,
        Command::Catalog { action } => cmd_catalog(&ctx, action)?,
        Command::Sweep { primes } => cmd_sweep(&ctx, primes)?,
    };
    if cli.timing {
        let ms = start.elapsed().as_millis() as u64;
        outcome.report.elapsed_ms = Some(ms);
        if let Some(text) = &mut outcome.text {
            text.push_str(&format!("elapsed: {ms} ms\n"));
        }
    }
    Ok(outcome)
}

fn prime(p: u64) -> anyhow::Result<PrimeOrder> {
    PrimeOrder::new(p).with_context(|| format!("--p {p}"))
}

fn single_value(value: &Rational, digits: Option<u32>) -> String {
    match digits {
        Some(d) => format!("{value}  ({})\n", value.to_decimal(d)),
        None => format!("{value}\n"),
    }
}

fn cmd_defect(ctx: &Context_, p: u64, q: i64) -> anyhow::Result<Outcome> {
    let q = RotationNumber::new(prime(p)?, q)?;
    let value = defect(q);
    let mut report = Report::new("defect");
    report.input("p", p).input("q", q);
    report.rational("defect", &value, ctx.digits);
    report.rational("dedekind_sum", &dedekind_sum_fast(q), ctx.digits);
    report.rational("extremal", &defect_extremal(q.order()), ctx.digits);
    report.result = value.to_string();
    let text = single_value(&value, ctx.digits);
    Ok(Outcome { report, text: Some(text), code: EXIT_OK })
}

fn cmd_dedekind(ctx: &Context_, p: u64, q: i64, check: bool) -> anyhow::Result<Outcome> {
    let q = RotationNumber::new(prime(p)?, q)?;
    let fast = dedekind_sum_fast(q);
    let mut report = Report::new("dedekind");
    report.input("p", p).input("q", q);
    report.rational("dedekind_sum", &fast, ctx.digits);
    report.rational("dedekind_symbol", &dedekind_symbol(q), ctx.digits);
    report.result = fast.to_string();
    let mut code = EXIT_OK;
    let mut text = single_value(&fast, ctx.digits);
    if check {
        let direct = dedekind_sum_direct(q);
        report.rational("dedekind_sum_direct", &direct, ctx.digits);
        if direct != fast {
            code = EXIT_NEGATIVE;
            text.push_str(&format!("MISMATCH: direct sum gives {direct}\n"));
            report.result = format!("mismatch: fast {fast}, direct {direct}");
        }
    }
    Ok(Outcome { report, text: Some(text), code })
}

/// Violations of the extremal estimate at one prime.
fn lemma_violations(p: PrimeOrder, oracle: bool) -> (usize, Vec<String>) {
    let extremal = defect_extremal(p);
    let mut bad = Vec::new();
    let mut pairs = 0;
    for q in p.rotations() {
        pairs += 1;
        let d = defect(q);
        if d.abs() > extremal {
            bad.push(format!("p={p} q={q}: |def| = {} > {extremal}", d.abs()));
        }
        if (q.get() == 1 || q.get() == p.get() - 1) && d.abs() != extremal {
            bad.push(format!("p={p} q={q}: |def| = {} is not extremal", d.abs()));
        }
        if q.get() == 1 && d != -&extremal {
            bad.push(format!("p={p}: def(p;1,1) = {d}, expected -{extremal}"));
        }
        if oracle && dedekind_sum_fast(q) != dedekind_sum_direct(q) {
            bad.push(format!("p={p} q={q}: fast and direct Dedekind sums differ"));
        }
    }
    (pairs, bad)
}

fn cmd_verify_lemma(pmax: u32, oracle: bool) -> Outcome {
    let primes = primes_up_to(pmax);
    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(16);
    let mut results: Vec<(usize, usize, Vec<String>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let primes = &primes;
                scope.spawn(move || {
                    primes
                        .iter()
                        .enumerate()
                        .skip(w)
                        .step_by(workers)
                        .map(|(i, &p)| {
                            let (pairs, bad) = lemma_violations(p, oracle);
                            (i, pairs, bad)
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    });
    results.sort_by_key(|r| r.0);

    let pairs: usize = results.iter().map(|r| r.1).sum();
    let violations: Vec<String> = results.into_iter().flat_map(|r| r.2).collect();
    let mut report = Report::new("verify-lemma");
    report.input("pmax", pmax).input("oracle", oracle);
    report.value("primes_checked", primes.len()).value("pairs_checked", pairs);
    report.value("violations", violations.len());
    let mut text = String::new();
    let code = if violations.is_empty() {
        report.result = format!("all primes \u{2264} {pmax} pass");
        EXIT_OK
    } else {
        report.result = format!("{} violations", violations.len());
        let mut table = Table::new(["violation"]);
        for v in &violations {
            table.push([v.clone()]);
            text.push_str(v);
            text.push('\n');
        }
        report.table = Some(table);
        EXIT_NEGATIVE
    };
    text.push_str(&format!("{}\nprimes checked: {}, pairs checked: {pairs}\n", report.result, primes.len()));
    Outcome { report, text: Some(text), code }
}

fn cmd_decompose(p: u64, b2: u64) -> anyhow::Result<Outcome> {
    let order = prime(p)?;
    let mut report = Report::new("decompose");
    report.input("p", p).input("b2", b2);
    let mut table = Table::new(["t", "c", "r"]);
    let all = decompositions(order, b2)?;
    for d in &all {
        table.push([d.t.to_string(), d.c.to_string(), d.r.to_string()]);
    }
    let trivial = forces_trivial(order, b2)?;
    report.value("count", all.len()).value("forces_trivial", trivial);
    report.result = if trivial {
        "action is homologically trivial".into()
    } else {
        format!("{} decompositions", all.len())
    };
    report.table = Some(table);
    Ok(Outcome::ok(report))
}

fn manifold_inputs(report: &mut Report, m: &ManifoldInvariants) {
    report
        .input("manifold", &m.name)
        .input("chi", m.chi)
        .input("sigma", m.sigma)
        .input("spin", m.spin)
        .input("minimal", m.minimal)
        .input("flags", m.star_facts.flags().join(","));
}

fn cmd_bound(ctx: &Context_, args: &ManifoldArgs, p: u64, s: Option<i64>) -> anyhow::Result<Outcome> {
    let order = prime(p)?;
    let m = ctx.manifold(args)?;
    let s = s.unwrap_or(if m.minimal { -2 } else { -1 });
    let c1sq = c1_squared(&m);
    let terms = BoundTerms::new(order, m.chi, c1sq, s)?;
    let bound = terms.value();
    let universal = universal_bound(order, &m, s)?;

    let mut report = Report::new("bound");
    manifold_inputs(&mut report, &m);
    report.input("p", p).input("s", s);
    report.value("c1_squared", c1sq);
    report.value("numerator", terms.numerator).value("denominator", terms.denominator);
    report.rational("sphere_bound", &bound, ctx.digits);
    report.rational("universal_bound", &universal, ctx.digits);
    report.value("n_max", max_under(&bound));
    report.value("n_max_universal", max_strictly_under(&universal));
    report.value("a_priori_max", m.chi / 2);
    report.result = format!("n <= {bound}");
    report.basis.push(format!("assumes every fixed sphere has [S]^2 <= {s}"));
    Ok(Outcome::ok(report))
}

fn cmd_classify(ctx: &Context_, args: &ManifoldArgs, p: u64) -> anyhow::Result<Outcome> {
    let order = prime(p)?;
    let m = ctx.manifold(args)?;
    let c = classify(order, &m)?;

    let mut report = Report::new("classify");
    manifold_inputs(&mut report, &m);
    report.input("p", p);
    report.value("verdict", c.verdict.name());
    report.value("n_max", c.verdict.n_max().map_or("none".to_string(), |n| n.to_string()));
    report.value("c1_squared", c.c1_squared).value("l", c.l).value("s_used", c.s_used);
    report.value("numerator", c.terms.numerator).value("denominator", c.terms.denominator);
    report.rational("sphere_bound", &c.sphere_bound, ctx.digits);
    report.rational("universal_bound", &c.universal_bound, ctx.digits);
    report.value("star_rule", c.star_rule.tag());
    report.result = c.verdict.to_string();
    report.basis.push(c.basis.tag().to_string());
    report.basis.push(c.star_rule.tag().to_string());
    let code = if c.verdict == Verdict::NoAction { EXIT_NEGATIVE } else { EXIT_OK };
    Ok(Outcome { report, text: None, code })
}

fn cmd_enumerate(p: u64, chi: i64, sigma: i64, window: &SearchWindow, full: bool) -> anyhow::Result<Outcome> {
    let order = prime(p)?;
    let solutions = enumerate(order, chi, sigma, window)?;
    let mut report = Report::new("enumerate");
    report
        .input("p", p)
        .input("chi", chi)
        .input("sigma", sigma)
        .input("smin", window.s_min)
        .input("smax", window.s_max)
        .input("star", window.require_star)
        .input("minimal", window.require_minimal)
        .input("allow_zero", window.allow_zero_square);
    let max_n = solutions.iter().map(|s| s.n()).max();
    report.value("solutions", solutions.len());
    report.value("max_n", max_n.map_or("none".to_string(), |n| n.to_string()));
    report.result = match max_n {
        Some(n) => format!("{} solutions, at most {n} spheres", solutions.len()),
        None => "no solutions".to_string(),
    };
    if full {
        let mut table = Table::new(["n", "m", "spheres", "points"]);
        for s in &solutions {
            let spheres: Vec<String> = s.spheres().iter().map(|x| x.to_string()).collect();
            let points: Vec<String> = s.points().iter().map(|q| q.to_string()).collect();
            table.push([
                s.n().to_string(),
                s.m().to_string(),
                format!("[{}]", spheres.join(", ")),
                format!("[{}]", points.join(", ")),
            ]);
        }
        report.table = Some(table);
    }
    Ok(Outcome::ok(report))
}

fn parse_vector(text: &str) -> anyhow::Result<LorentzVector> {
    let coords = text
        .split(',')
        .map(|c| c.trim().parse::<Rational>())
        .collect::<Result<Vec<_>, _>>()
        .with_context(|| format!("vector {text:?}"))?;
    Ok(LorentzVector::new(coords)?)
}

fn cmd_cone(ctx: &Context_, a: &str, b: &str) -> anyhow::Result<Outcome> {
    let va = parse_vector(a)?;
    let vb = parse_vector(b)?;
    let ab = pairing(&va, &vb)?;
    let holds = check_cone_lemma(&va, &vb)?;
    let mut report = Report::new("cone");
    report.input("a", &va).input("b", &vb);
    report.rational("a.a", &pairing(&va, &va)?, ctx.digits);
    report.rational("b.b", &pairing(&vb, &vb)?, ctx.digits);
    report.rational("a.b", &ab, ctx.digits);
    report.value("position_a", cone_position(&va)).value("position_b", cone_position(&vb));
    report.result = if holds { "lemma holds".into() } else { "lemma violated".into() };
    let code = if holds { EXIT_OK } else { EXIT_NEGATIVE };
    Ok(Outcome { report, text: None, code })
}

fn cmd_catalog(ctx: &Context_, action: &CatalogCommand) -> anyhow::Result<Outcome> {
    match action {
        CatalogCommand::List => {
            let mut report = Report::new("catalog list");
            let mut table =
                Table::new(["name", "chi", "sigma", "c1^2", "b2+", "b2-", "spin", "minimal", "star"]);
            for e in &ctx.catalog {
                let m = &e.invariants;
                table.push([
                    m.name.clone(),
                    m.chi.to_string(),
                    m.sigma.to_string(),
                    c1_squared(m).to_string(),
                    m.b2_plus().to_string(),
                    m.b2_minus().to_string(),
                    m.spin.to_string(),
                    m.minimal.to_string(),
                    e.star.tag().to_string(),
                ]);
            }
            report.value("entries", ctx.catalog.len());
            report.table = Some(table);
            Ok(Outcome::ok(report))
        }
        CatalogCommand::Show { id } => {
            let e = find(&ctx.catalog, id)?;
            let m = &e.invariants;
            let mut report = Report::new("catalog show");
            manifold_inputs(&mut report, m);
            report.input("h1_zero", m.h1_zero);
            report.value("b2", m.b2()).value("b2_plus", m.b2_plus()).value("b2_minus", m.b2_minus());
            report.value("c1_squared", c1_squared(m));
            report.value("l", gsig_core::bounds::l_invariant(m));
            report.value("star", derive_star(m)?.tag());
            report.result = e.note.clone();
            Ok(Outcome::ok(report))
        }
        CatalogCommand::Export => {
            let mut report = Report::new("catalog export");
            let text = serialize_catalog(&ctx.catalog);
            report.value("entries", ctx.catalog.len());
            report.result = text.clone();
            Ok(Outcome { report, text: Some(text), code: EXIT_OK })
        }
    }
}

fn cmd_sweep(ctx: &Context_, primes: &[u64]) -> anyhow::Result<Outcome> {
    let orders = primes.iter().map(|&p| prime(p)).collect::<anyhow::Result<Vec<_>>>()?;
    let mut report = Report::new("sweep");
    report.input("primes", primes.iter().map(u64::to_string).collect::<Vec<_>>().join(","));
    let mut table = Table::new(["manifold", "p", "verdict", "n_max", "sphere_bound", "basis"]);
    let mut counts = [0usize; 4];
    for e in &ctx.catalog {
        for &p in &orders {
            match classify(p, &e.invariants) {
                Ok(c) => {
                    counts[match c.verdict {
                        Verdict::NoAction => 0,
                        Verdict::Pseudofree => 1,
                        Verdict::SphereBound { .. } => 2,
                    }] += 1;
                    table.push([
                        e.name().to_string(),
                        p.to_string(),
                        c.verdict.name().to_string(),
                        c.verdict.n_max().map_or("-".into(), |n| n.to_string()),
                        c.sphere_bound.to_string(),
                        c.basis.tag().to_string(),
                    ]);
                }
                Err(gsig_core::Error::HypothesesNotMet { .. }) => {
                    counts[3] += 1;
                    table.push([
                        e.name().to_string(),
                        p.to_string(),
                        "n/a".to_string(),
                        "-".to_string(),
                        "-".to_string(),
                        e.star.tag().to_string(),
                    ]);
                }
                Err(other) => return Err(other.into()),
            }
        }
    }
    report.value("no_action", counts[0]).value("pseudofree", counts[1]);
    report.value("sphere_bound", counts[2]).value("hypotheses_not_met", counts[3]);
    report.result = format!("{} rows", table.rows.len());
    report.table = Some(table);
    Ok(Outcome::ok(report))
}
