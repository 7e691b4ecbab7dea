//! `rquiver`: command-line driver for the verification suites.

mod report;

use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use rquiver_core::algebra::{Field, RatFuncZ, Q};
use rquiver_core::denominators::{denom, verify_lemma34, verify_sink_source_gap, verify_thm42, GammaJ};
use rquiver_core::dot::{ar_dot, gamma_j_dot, quiver_dot, window_dot};
use rquiver_core::modules::rmatrix::clear_denominator;
use rquiver_core::modules::{
    check_ybe_vector, extract_denominator, fusion_report, is_intertwiner, rnorm_vector, solve_intertwiner, spin_rep,
    vector_rep, wedge_rep, ModuleData,
};
use rquiver_core::qpoch::verify_rank;
use rquiver_core::quiver::DynkinQuiver;
use rquiver_core::repetition::Repetition;
use rquiver_core::roots::{CartanType, Family};
use rquiver_core::scan::{map_items, Mode};
use rquiver_core::Error;

use report::Report;

#[derive(Parser, Debug)]
#[command(name = "rquiver", version, about = "Exact checks of AR-quiver combinatorics and R-matrix denominators")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, env = "RQUIVER_THREADS", global = true)]
    threads: Option<usize>,
    /// Shuffle the processing order of orientations with this seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
struct TypeArgs {
    /// Cartan family: A, D or E.
    #[arg(long = "type", value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    rank: usize,
}

impl TypeArgs {
    fn cartan(&self) -> Result<CartanType, Error> {
        CartanType::new(self.family, self.rank)
    }
}

#[derive(Args, Debug, Clone)]
struct QuiverArgs {
    #[command(flatten)]
    ty: TypeArgs,
    /// Arrows `a-b,...` meaning `a -> b`; defaults to the linear orientation.
    #[arg(long)]
    arrows: Option<String>,
}

impl QuiverArgs {
    fn quiver(&self) -> Result<DynkinQuiver, Error> {
        let ty = self.ty.cartan()?;
        match &self.arrows {
            Some(a) => DynkinQuiver::parse(ty, a),
            None => Ok(DynkinQuiver::linear(ty)),
        }
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate the bijection phi on a window of the repetition quiver.
    Phi {
        #[command(flatten)]
        q: QuiverArgs,
        /// Window `lo,hi` of p values; defaults to two Coxeter periods around the heights.
        #[arg(long, value_parser = parse_window)]
        window: Option<(i64, i64)>,
        /// Also print the AR quiver.
        #[arg(long)]
        print_ar: bool,
    },
    /// Denominator of the normalized R-matrix between fundamental modules k and l.
    Denom {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// Orientation checks.
    Verify {
        #[arg(value_enum)]
        check: VerifyCheck,
        #[command(flatten)]
        q: QuiverArgs,
        /// Check every orientation instead of one.
        #[arg(long, conflicts_with = "arrows")]
        all_orientations: bool,
    },
    /// Pochhammer-symbol identities for the universal R-matrix scalars.
    Qpoch {
        #[command(subcommand)]
        action: QpochAction,
    },
    /// R-matrices on tensor products of fundamental modules.
    Rmatrix {
        #[command(subcommand)]
        action: RmatrixAction,
    },
    /// Graphviz export.
    Dot {
        #[arg(value_enum)]
        object: DotObject,
        #[command(flatten)]
        q: QuiverArgs,
        #[arg(long, value_parser = parse_window)]
        window: Option<(i64, i64)>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VerifyCheck {
    /// Gamma^J is Q^rev and A^J the finite Cartan matrix.
    Thm42,
    /// Pole orders at most one between vertices of J, type D.
    Lemma34,
    /// AR-quiver description, additivity, Nakayama and the adapted-word checks.
    Combinatorial,
}

#[derive(Subcommand, Debug)]
enum QpochAction {
    /// Closed form against recursion and the functional identity with the denominators.
    Verify {
        /// Rank n >= 4 of type D.
        #[arg(long)]
        rank: Vec<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RepKind {
    Vector,
    #[value(name = "spin+")]
    SpinPlus,
    #[value(name = "spin-")]
    SpinMinus,
}

impl RepKind {
    fn node(self, n: usize) -> usize {
        match self {
            RepKind::Vector => 1,
            RepKind::SpinPlus => n,
            RepKind::SpinMinus => n - 1,
        }
    }

    fn build(self, n: usize) -> Result<ModuleData<RatFuncZ>, Error> {
        let q = RatFuncZ::q();
        match self {
            RepKind::Vector => vector_rep(n, q),
            RepKind::SpinPlus => spin_rep(n, 1, q),
            RepKind::SpinMinus => spin_rep(n, -1, q),
        }
    }
}

#[derive(Subcommand, Debug)]
enum RmatrixAction {
    /// Solve for the normalized R-matrix on rep ⊗ rep(z) and print its entries.
    Build {
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum, default_value_t = RepKind::Vector)]
        rep: RepKind,
    },
    /// Intertwining property, closed form and Yang–Baxter for the vector representation.
    Check {
        #[arg(long)]
        rank: usize,
        /// Rational value of q for the Yang–Baxter check.
        #[arg(long, default_value = "3/5")]
        q: String,
    },
    /// Denominator read off from the solved R-matrix, compared with the closed form.
    Denominator {
        #[command(flatten)]
        ty: TypeArgs,
        /// Left factor (type D).
        #[arg(long, value_enum, default_value_t = RepKind::Vector)]
        rep: RepKind,
        /// Right factor (type D); defaults to `--rep`.
        #[arg(long, value_enum)]
        with: Option<RepKind>,
        /// Wedge powers (type A).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
    },
    /// Fusion of the vector representation into the k-th fundamental module.
    Fusion {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DotObject {
    Quiver,
    Window,
    Ar,
    GammaJ,
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or("expected lo,hi")?;
    let p = |x: &str| x.trim().parse::<i64>().map_err(|e| e.to_string());
    Ok((p(a)?, p(b)?))
}

/// Errors that mean the request itself was invalid.
fn is_usage_error(e: &anyhow::Error) -> bool {
    e.downcast_ref::<Error>().is_some_and(|e| {
        matches!(
            e,
            Error::InvalidCartanType { .. }
                | Error::InvalidVertex { .. }
                | Error::InvalidQuiver(_)
                | Error::IndexOutOfRange(_)
                | Error::UnsupportedType
                | Error::TooLarge(_)
        )
    }) || e.downcast_ref::<UsageError>().is_some()
}

#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mode = configure_threads(cli.threads);
    let mut out = String::new();
    match run(&cli, mode, &mut out) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
                Format::Text => {
                    print!("{out}");
                    print!("{}", report.render_text());
                }
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if is_usage_error(&e) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn configure_threads(threads: Option<usize>) -> Mode {
    match threads {
        Some(0) | None => Mode::Parallel,
        Some(1) => Mode::Sequential,
        Some(t) => {
            #[cfg(feature = "parallel")]
            {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
            }
            #[cfg(not(feature = "parallel"))]
            let _ = t;
            Mode::Parallel
        }
    }
}

fn run(cli: &Cli, mode: Mode, out: &mut String) -> anyhow::Result<Report> {
    match &cli.command {
        Command::Phi { q, window, print_ar } => cmd_phi(q, *window, *print_ar, out),
        Command::Denom { ty, k, l } => cmd_denom(ty, *k, *l, out),
        Command::Verify {
            check,
            q,
            all_orientations,
        } => cmd_verify(*check, q, *all_orientations, cli.seed, mode),
        Command::Qpoch {
            action: QpochAction::Verify { rank },
        } => cmd_qpoch(rank),
        Command::Rmatrix { action } => cmd_rmatrix(action, out),
        Command::Dot { object, q, window } => cmd_dot(*object, q, *window, out),
    }
}

fn cmd_phi(q: &QuiverArgs, window: Option<(i64, i64)>, print_ar: bool, out: &mut String) -> anyhow::Result<Report> {
    let quiver = q.quiver()?;
    let rep = Repetition::new(&quiver);
    let window = window.unwrap_or_else(|| rep.default_window());
    let table = rep.build_phi(window);
    out.push_str(&format!("# {quiver}, xi = {:?}\n", rep.height().0));
    for e in table.entries() {
        out.push_str(&format!("{} -> ({}, {})\n", e.vertex, e.root, e.shift));
    }
    let mut report = Report::new("phi");
    let ar = rep.ar_quiver();
    if print_ar {
        out.push_str("# AR quiver\n");
        for (v, b) in &ar.dims {
            out.push_str(&format!("{v} dim {b}\n"));
        }
        for (a, b) in &ar.arrows {
            out.push_str(&format!("{a} -> {b}\n"));
        }
    }
    report.data = Some(json!({ "phi": table, "ar": if print_ar { serde_json::to_value(&ar)? } else { json!(null) } }));
    report.run("phi_bijective", "phi is a bijection on the window", || Ok((table.is_bijective(), table.len())))?;
    Ok(report)
}

fn cmd_denom(ty: &TypeArgs, k: usize, l: usize, out: &mut String) -> anyhow::Result<Report> {
    let d = denom(ty.cartan()?, k, l)?;
    out.push_str(&format!("d_{{{k},{l}}}(z) = {}\n", d.factored()));
    out.push_str(&format!("{}\n", serde_json::to_string(&d.exponents)?));
    let mut report = Report::new("denom");
    report.data = Some(serde_json::to_value(&d)?);
    Ok(report)
}

fn orientations(q: &QuiverArgs, all: bool, seed: Option<u64>) -> anyhow::Result<Vec<DynkinQuiver>> {
    let mut qs = if all {
        DynkinQuiver::all_orientations(q.ty.cartan()?)
    } else {
        vec![q.quiver()?]
    };
    if let Some(s) = seed {
        qs.shuffle(&mut ChaCha8Rng::seed_from_u64(s));
    }
    Ok(qs)
}

fn cmd_verify(
    check: VerifyCheck,
    q: &QuiverArgs,
    all: bool,
    seed: Option<u64>,
    mode: Mode,
) -> anyhow::Result<Report> {
    let ty = q.ty.cartan()?;
    match check {
        VerifyCheck::Thm42 if ty.family == Family::E => return Err(Error::UnsupportedType.into()),
        VerifyCheck::Lemma34 if ty.family != Family::D => {
            return Err(UsageError("the simple-pole check is stated for type D".into()).into())
        }
        _ => {}
    }
    let qs = orientations(q, all, seed)?;
    let (name, anchor) = match check {
        VerifyCheck::Thm42 => ("thm42", "Gamma^J is isomorphic to Q^rev and A^J is the finite Cartan matrix"),
        VerifyCheck::Lemma34 => ("lemma34", "normalized R-matrices between vertices of J have at most simple poles"),
        VerifyCheck::Combinatorial => ("combinatorial", "AR quiver description, additivity and adapted reduced words"),
    };
    let mut report = Report::new(format!("verify {name}"));
    report.run(&format!("{name} {ty}"), anchor, || {
        let verdicts = map_items(&qs, mode, |quiver| -> Result<Option<String>, Error> {
            let rep = Repetition::new(quiver);
            let ok = match check {
                VerifyCheck::Thm42 => verify_thm42(&rep)?,
                VerifyCheck::Lemma34 => verify_lemma34(&rep)? && verify_sink_source_gap(&rep),
                VerifyCheck::Combinatorial => {
                    let r = rep.combinatorial_report();
                    if !r.all() {
                        return Ok(Some(format!("{}: {}", quiver.arrow_spec(), r.failures().join(", "))));
                    }
                    true
                }
            };
            Ok((!ok).then(|| quiver.arrow_spec()))
        });
        let mut failures = Vec::new();
        for v in verdicts {
            failures.extend(v?);
        }
        let order: Vec<String> = qs.iter().map(|q| q.arrow_spec()).collect();
        Ok((failures.is_empty(), json!({ "orientations": order.len(), "order": order, "failures": failures })))
    })?;
    Ok(report)
}

fn cmd_qpoch(ranks: &[usize]) -> anyhow::Result<Report> {
    let ranks: Vec<usize> = if ranks.is_empty() { (4..=9).collect() } else { ranks.to_vec() };
    let mut report = Report::new("qpoch verify");
    for n in ranks {
        report.run(
            &format!("qpoch D{n}"),
            "closed form of a_{k,l} equals the recursion, and a·a matches d/d",
            || {
                let r = verify_rank(n)?;
                Ok((r.passed(), r))
            },
        )?;
    }
    Ok(report)
}

fn parse_q(s: &str) -> anyhow::Result<Q> {
    let q: Q = s.parse().with_context(|| format!("bad rational {s:?}"))?;
    if Field::is_zero(&q) {
        bail!(UsageError("q must be nonzero".into()));
    }
    Ok(q)
}

fn cmd_rmatrix(action: &RmatrixAction, out: &mut String) -> anyhow::Result<Report> {
    match action {
        RmatrixAction::Build { rank, rep } => {
            let n = *rank;
            let m = rep.build(n)?;
            let r = solve_intertwiner(&m, &m.evaluate(&RatFuncZ::z())?)?;
            let k = rep.node(n);
            let d = extract_denominator(&r, Family::D, n, k, k)?;
            let cleared = clear_denominator(&r, &d);
            out.push_str(&format!("# D{n} {:?} ⊗ {:?}(z): dim {}, {} nonzero entries\n", rep, rep, r.rows(), r.nnz()));
            out.push_str(&format!("# d(z) = {}\n", d.factored()));
            let mut report = Report::new("rmatrix build");
            let dim = m.dim();
            let mut entries = Vec::new();
            for (row, col, x) in cleared.iter() {
                let lab = |i: usize| format!("{}⊗{}", m.labels[i / dim], m.labels[i % dim]);
                out.push_str(&format!("{} <- {}: {x}\n", lab(row), lab(col)));
                entries.push(json!({ "row": lab(row), "col": lab(col), "value": x.to_string() }));
            }
            report.data = Some(json!({ "denominator": d, "entries": entries }));
            Ok(report)
        }
        RmatrixAction::Check { rank, q } => {
            let n = *rank;
            let q0 = parse_q(q)?;
            let v = vector_rep(n, RatFuncZ::q())?;
            let vz = v.evaluate(&RatFuncZ::z())?;
            let mut report = Report::new("rmatrix check");
            let r = solve_intertwiner(&v, &vz)?;
            report.run("intertwiner", "R commutes with the coproduct action", || {
                Ok((is_intertwiner(&r, &v.tensor(&vz)?, &vz.tensor(&v)?)?, n))
            })?;
            report.run("closed_form", "solver agrees with the explicit vector R-matrix", || {
                Ok((r == rnorm_vector(n)?, n))
            })?;
            report.run("yang_baxter", "braid relation for the vector R-matrix", || {
                Ok((check_ybe_vector(n, &q0)?, q0.to_string()))
            })?;
            Ok(report)
        }
        RmatrixAction::Denominator { ty, rep, with, k, l } => {
            let n = ty.rank;
            let z = RatFuncZ::z();
            let (m, other, k, l) = match ty.family {
                Family::D => {
                    let w = with.unwrap_or(*rep);
                    (rep.build(n)?, w.build(n)?, rep.node(n), w.node(n))
                }
                Family::A => {
                    let k = k.ok_or_else(|| UsageError("--k is required for type A".into()))?;
                    let l = l.unwrap_or(k);
                    let q = RatFuncZ::q();
                    (wedge_rep(n, k, q.clone())?, wedge_rep(n, l, q)?, k, l)
                }
                Family::E => return Err(Error::UnsupportedType.into()),
            };
            let expect = denom(ty.cartan()?, k, l)?;
            let mut report = Report::new("rmatrix denominator");
            let mut got = None;
            report.run(
                &format!("denominator {}{n} ({k},{l})", ty.family),
                "denominator of the solved R-matrix equals the tabulated d_{k,l}",
                || {
                    let r = solve_intertwiner(&m, &other.evaluate(&z)?)?;
                    let d = extract_denominator(&r, ty.family, n, k, l)?;
                    let ok = d.exponents == expect.exponents;
                    let detail = json!({ "solver": d.exponents, "closed_form": expect.exponents });
                    got = Some(d);
                    Ok((ok, detail))
                },
            )?;
            let got = got.expect("solver ran");
            out.push_str(&format!("solver:      {}\nclosed form: {}\n", got.factored(), expect.factored()));
            Ok(report)
        }
        RmatrixAction::Fusion { rank, k } => {
            let mut report = Report::new("rmatrix fusion");
            report.run(
                &format!("fusion D{rank} k={k}"),
                "the fused R-matrix product has image the k-th fundamental module",
                || {
                    let r = fusion_report(*rank, *k)?;
                    Ok((r.passed(), r))
                },
            )?;
            Ok(report)
        }
    }
}

fn cmd_dot(object: DotObject, q: &QuiverArgs, window: Option<(i64, i64)>, out: &mut String) -> anyhow::Result<Report> {
    let quiver = q.quiver()?;
    let rep = Repetition::new(&quiver);
    let dot = match object {
        DotObject::Quiver => quiver_dot(&quiver),
        DotObject::Window => {
            let w = window.unwrap_or_else(|| rep.default_window());
            window_dot(&rep, Some(&rep.build_phi(w)), w)
        }
        DotObject::Ar => ar_dot(&rep.ar_quiver()),
        DotObject::GammaJ => gamma_j_dot(&GammaJ::build(&rep)?),
    };
    out.push_str(&dot);
    let mut report = Report::new("dot");
    report.data = Some(json!({ "dot": dot }));
    Ok(report)
}
