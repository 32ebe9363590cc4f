//! Command-line surface: root-system data, quantum Bruhat graph exports,
//! generic Newton points, cordiality reports, grid surveys, and the
//! invariant battery.
//!
//! Exit codes: 0 on success, 1 on user error (bad input, out-of-range
//! requests), 2 on an internal invariant violation (which always indicates
//! a bug, never bad input).

#![forbid(unsafe_code)]

mod cache;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use cordial_core::cordial::{
    summarize, survey as run_survey, survey_to_csv, survey_to_json, CordialError,
    CordialityChecker, CordialityReport, Method, SurveyMethod, SurveyRequest,
};
use cordial_core::newton::{
    default_min_pairing, generic_adlv_dimension, generic_newton_bruteforce, generic_newton_qbg,
    NewtonError, NewtonPoint, DEFAULT_LOWER_SET_BOUND,
};
use cordial_core::qbg::{QbgError, QuantumBruhatGraph};
use cordial_core::rootsys::{Coweight, LatticeMode, RootSystem};
use cordial_core::weyl::{WeylElement, WeylGroup};
use cordial_core::{AffineElement, AffineGroup, Defect};

#[derive(Parser)]
#[command(
    name = "cordial",
    version,
    about = "Generic Newton points of Iwahori-double cosets and cordiality, in exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print root-system data (roots, coroots, pairing matrix)
    Rootsys(RootsysArgs),
    /// Build the quantum Bruhat graph and export it
    Qbg(QbgArgs),
    /// Compute the generic Newton point of one element
    Nu(NuArgs),
    /// Evaluate the cordiality predicate for one element
    Cordial(CordialArgs),
    /// Sweep a grid of (v, w, λ) and emit a table
    Survey(SurveyArgs),
    /// Run the invariant battery for a type
    Verify(VerifyArgs),
}

#[derive(Args, Clone)]
struct GroupArgs {
    /// Named type: A1..A5, B2, B3, C2, C3, D4, F4, G2
    #[arg(long = "type")]
    group_type: Option<String>,
    /// Explicit Cartan matrix, rows separated by ';' (e.g. "2,-2;-1,2")
    #[arg(long, conflicts_with = "group_type")]
    cartan: Option<String>,
    /// Coweight lattice: "sc" (coroot lattice) or "adj" (coweight lattice)
    #[arg(long, default_value = "adj")]
    lattice: String,
}

#[derive(Args)]
struct RootsysArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Output format: "json" or "text"
    #[arg(long, default_value = "text")]
    format: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct QbgArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Output format: "dot" or "json"
    #[arg(long, default_value = "dot")]
    format: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct ElementArgs {
    /// Translation part μ in lattice coordinates (overrides --v/--lambda)
    #[arg(long)]
    mu: Option<String>,
    /// Finite part w as a digit word ("121") or "e"
    #[arg(long, default_value = "e")]
    w: String,
    /// v as a digit word; the element is x = t^{v(λ)}·w
    #[arg(long, default_value = "e")]
    v: String,
    /// Dominant λ in lattice coordinates ("3,3"); type A also accepts the
    /// (rank+1)-tuple form ("4,1,-5")
    #[arg(long)]
    lambda: Option<String>,
}

#[derive(Args)]
struct NuArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[command(flatten)]
    element: ElementArgs,
    /// "oracle", "qbg", or "both"
    #[arg(long, default_value = "both")]
    method: String,
    /// Override the superregularity threshold (inclusive minimal pairing)
    #[arg(long = "min-pairing", short = 'M')]
    min_pairing: Option<i64>,
    /// Run the graph formula below the threshold (results unguaranteed)
    #[arg(long)]
    force: bool,
    /// Bruhat lower-set length bound for the oracle
    #[arg(long, default_value_t = DEFAULT_LOWER_SET_BOUND)]
    bound: u32,
    #[arg(long, default_value = "text")]
    format: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CordialArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[command(flatten)]
    element: ElementArgs,
    /// "oracle", "qbg", or "both" (both falls back to the applicable method)
    #[arg(long, default_value = "both")]
    method: String,
    #[arg(long = "min-pairing", short = 'M')]
    min_pairing: Option<i64>,
    #[arg(long, default_value_t = DEFAULT_LOWER_SET_BOUND)]
    bound: u32,
    #[arg(long, default_value = "text")]
    format: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SurveyArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// λ in lattice coordinates; repeatable
    #[arg(long, required = true)]
    lambda: Vec<String>,
    /// "all" or a comma-separated list of words ("e,1,12")
    #[arg(long, default_value = "all")]
    v: String,
    #[arg(long, default_value = "all")]
    w: String,
    /// "oracle", "qbg", or "both"
    #[arg(long, default_value = "both")]
    method: String,
    #[arg(long = "min-pairing", short = 'M')]
    min_pairing: Option<i64>,
    #[arg(long, default_value_t = DEFAULT_LOWER_SET_BOUND)]
    bound: u32,
    /// "csv" or "json"
    #[arg(long, default_value = "csv")]
    format: String,
    /// Worker threads
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Cap on sampled checks per property
    #[arg(long, default_value_t = 200_000)]
    budget: usize,
    /// Seed for the sampled sweeps
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "text")]
    format: String,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

enum Failure {
    User(String),
    Internal(String),
}

fn user(msg: impl std::fmt::Display) -> Failure {
    Failure::User(msg.to_string())
}

fn internal(msg: impl std::fmt::Display) -> Failure {
    Failure::Internal(msg.to_string())
}

fn from_newton(e: NewtonError) -> Failure {
    match e {
        NewtonError::NoUniqueMaximum | NewtonError::BadDimension(_) => internal(e),
        _ => user(e),
    }
}

fn from_cordial(e: CordialError) -> Failure {
    match e {
        CordialError::Newton(n) => from_newton(n),
        CordialError::InequalityViolated { .. }
        | CordialError::EtaPathMismatch { .. }
        | CordialError::MethodDisagreement { .. } => internal(e),
    }
}

fn from_qbg(e: QbgError) -> Failure {
    match e {
        QbgError::UnknownFormat(_) => user(e),
        _ => internal(e),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::User(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal invariant violation: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Rootsys(args) => cmd_rootsys(args),
        Command::Qbg(args) => cmd_qbg(args),
        Command::Nu(args) => cmd_nu(args),
        Command::Cordial(args) => cmd_cordial(args),
        Command::Survey(args) => cmd_survey(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn parse_lattice(s: &str) -> Result<LatticeMode, Failure> {
    LatticeMode::parse(s).ok_or_else(|| user(format!("unknown lattice `{s}` (use sc or adj)")))
}

fn build_root_system(args: &GroupArgs) -> Result<RootSystem, Failure> {
    let lattice = parse_lattice(&args.lattice)?;
    match (&args.group_type, &args.cartan) {
        (Some(name), None) => RootSystem::named(name, lattice).map_err(user),
        (None, Some(rows)) => {
            let cartan: Result<Vec<Vec<i64>>, _> = rows
                .split(';')
                .map(|row| {
                    row.split(',')
                        .map(|c| c.trim().parse::<i64>())
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect();
            let cartan = cartan.map_err(|e| user(format!("bad --cartan entry: {e}")))?;
            RootSystem::from_cartan(cartan, lattice).map_err(user)
        }
        (None, None) => Err(user("one of --type or --cartan is required")),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    }
}

struct Session {
    affine: AffineGroup,
    qbg: QuantumBruhatGraph,
}

impl Session {
    fn open(args: &GroupArgs) -> Result<Session, Failure> {
        let rs = build_root_system(args)?;
        let weyl = Arc::new(WeylGroup::new(rs));
        let qbg = QuantumBruhatGraph::build(weyl.clone()).map_err(from_qbg)?;
        let affine = AffineGroup::new(weyl).map_err(user)?;
        Ok(Session { affine, qbg })
    }

    fn weyl(&self) -> &WeylGroup {
        self.affine.weyl()
    }
}

/// Coefficient-string coweight: lattice coordinates, or the type-A tuple
/// alias when it has rank+1 entries.
fn parse_coweight(rs: &RootSystem, s: &str) -> Result<Coweight, Failure> {
    let parts: Result<Vec<i64>, _> = s.split(',').map(|c| c.trim().parse::<i64>()).collect();
    let parts = parts.map_err(|e| user(format!("bad coweight `{s}`: {e}")))?;
    if parts.len() == rs.rank() {
        rs.coweight_from_lattice_coords(&parts).map_err(user)
    } else if parts.len() == rs.rank() + 1 && rs.is_type_a() {
        let tuple: Vec<cordial_core::Rational64> = parts
            .iter()
            .map(|&x| cordial_core::Rational64::from_integer(x))
            .collect();
        let cw = rs.coweight_from_tuple(&tuple).map_err(user)?;
        if !rs.in_lattice(&cw) {
            return Err(user(format!(
                "tuple {s} is not a point of the {} lattice",
                rs.lattice()
            )));
        }
        Ok(cw)
    } else {
        Err(user(format!(
            "coweight `{s}` has {} entries, expected {} (or {} for a type-A tuple)",
            parts.len(),
            rs.rank(),
            rs.rank() + 1
        )))
    }
}

fn parse_element(session: &Session, args: &ElementArgs) -> Result<AffineElement, Failure> {
    let weyl = session.weyl();
    let rs = weyl.root_system();
    let w = weyl.parse_word(&args.w).map_err(user)?;
    let mu = match (&args.mu, &args.lambda) {
        (Some(mu), _) => parse_coweight(rs, mu)?,
        (None, Some(lambda)) => {
            let lam = parse_coweight(rs, lambda)?;
            if !rs.is_dominant(&lam) {
                return Err(user(format!(
                    "--lambda must be dominant (got {lam}); pass an arbitrary translation via --mu"
                )));
            }
            let v = weyl.parse_word(&args.v).map_err(user)?;
            weyl.act_on_coweight(v, &lam)
        }
        (None, None) => return Err(user("one of --mu or --lambda is required")),
    };
    session.affine.from_parts(mu, w).map_err(user)
}

/// Word rendered in subscript notation for text output.
fn sfmt(word: &str) -> String {
    if word == "e" {
        "e".to_string()
    } else {
        format!("s{word}")
    }
}

/// Validated output sink: everything is computed before anything is
/// written, and file output goes through a temp-file rename.
fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
        Some(path) => {
            let tmp = path.with_extension("tmp");
            std::fs::write(&tmp, text)
                .and_then(|_| std::fs::rename(&tmp, path))
                .map_err(|e| user(format!("cannot write {}: {e}", path.display())))
        }
    }
}

fn cmd_rootsys(args: RootsysArgs) -> Result<(), Failure> {
    let rs = build_root_system(&args.group)?;
    let text = match args.format.as_str() {
        "json" => serde_json::to_string_pretty(&rs.to_json()).expect("serializable") + "\n",
        "text" => {
            let mut s = String::new();
            s.push_str(&format!(
                "type {} (rank {}, lattice {})\n",
                rs.name(),
                rs.rank(),
                rs.lattice()
            ));
            s.push_str("cartan:\n");
            for row in rs.cartan() {
                s.push_str(&format!("  {row:?}\n"));
            }
            s.push_str(&format!("symmetrizer: {:?}\n", rs.symmetrizer()));
            s.push_str(&format!("positive roots ({}):\n", rs.num_positive_roots()));
            for (k, r) in rs.positive_roots().iter().enumerate() {
                let cr = &rs.positive_coroots()[k];
                s.push_str(&format!(
                    "  {:>2}: root {:?}  coroot {:?}  ⟨2ρ,β∨⟩ = {}\n",
                    k,
                    r.0,
                    cr.0,
                    rs.two_rho_pair_coroot(cr)
                ));
            }
            s
        }
        other => return Err(user(format!("unknown format `{other}` (json or text)"))),
    };
    emit(&args.output, &text)
}

fn cmd_qbg(args: QbgArgs) -> Result<(), Failure> {
    if !matches!(args.format.as_str(), "dot" | "json") {
        return Err(user(format!(
            "unknown format `{}` (dot or json)",
            args.format
        )));
    }
    // optional cache, keyed by type+lattice+format+version
    let cache_dir = std::env::var_os("CORDIAL_CACHE_DIR").map(PathBuf::from);
    let key = args.group.group_type.as_ref().map(|t| {
        format!(
            "qbg-{}-{}-{}",
            t.to_ascii_uppercase(),
            args.group.lattice,
            args.format
        )
    });
    if let (Some(dir), Some(key)) = (&cache_dir, &key) {
        if let Some(text) = cache::read(dir, key) {
            return emit(&args.output, &text);
        }
    }
    let session = Session::open(&args.group)?;
    let text = session.qbg.export_graph(&args.format).map_err(from_qbg)?;
    if let (Some(dir), Some(key)) = (&cache_dir, &key) {
        cache::write(dir, key, &text);
    }
    emit(&args.output, &text)
}

fn cmd_nu(args: NuArgs) -> Result<(), Failure> {
    let session = Session::open(&args.group)?;
    let x = parse_element(&session, &args.element)?;
    let rs = session.weyl().root_system();
    let min_pairing = args
        .min_pairing
        .unwrap_or_else(|| default_min_pairing(rs.name()));

    let run_oracle = || -> Result<NewtonPoint, Failure> {
        generic_newton_bruteforce(&session.affine, &x, args.bound).map_err(from_newton)
    };
    let run_graph = || -> Result<NewtonPoint, Failure> {
        generic_newton_qbg(&session.affine, &session.qbg, &x, min_pairing, args.force)
            .map_err(from_newton)
    };

    let d = session.affine.decompose_dominant(&x);
    let superregular =
        rs.min_simple_pairing(&d.lambda) >= cordial_core::Rational64::from_integer(min_pairing);
    let in_bound = session.affine.length(&x) <= args.bound;

    let (nu, method) = match args.method.as_str() {
        "oracle" => (run_oracle()?, "oracle"),
        "qbg" => (run_graph()?, "qbg"),
        "both" => match (superregular || args.force, in_bound) {
            (true, true) => {
                let a = run_oracle()?;
                let b = run_graph()?;
                if a != b {
                    return Err(internal(format!(
                        "generic Newton point routes disagree: oracle {a}, graph {b}"
                    )));
                }
                (a, "both")
            }
            (true, false) => (run_graph()?, "qbg"),
            (false, true) => (run_oracle()?, "oracle"),
            (false, false) => {
                return Err(user(format!(
                    "neither method applies: ℓ(x) = {} exceeds --bound {} and λ is below \
                     the superregularity threshold {min_pairing}",
                    session.affine.length(&x),
                    args.bound
                )))
            }
        },
        other => return Err(user(format!("unknown method `{other}`"))),
    };

    let def = cordial_core::newton::defect_with_kottwitz(rs, &session.affine.kottwitz(&x), &nu);
    let dim = generic_adlv_dimension(&session.affine, &x, &nu).map_err(from_newton)?;
    let text = match args.format.as_str() {
        "json" => {
            let defect_json = match def {
                Defect::Known(d) => serde_json::json!(d),
                Defect::Indeterminate => serde_json::json!("indeterminate"),
            };
            serde_json::to_string_pretty(&serde_json::json!({
                "nu_x": nu.to_json(),
                "method": method,
                "defect": defect_json,
                "dim_Xx_bx": dim,
            }))
            .expect("serializable")
                + "\n"
        }
        "text" => {
            let weyl = session.weyl();
            format!(
                "x = t^μ·{} with μ = {}\n\
                 decomposition: v = {}, λ = {}, w = {}{}\n\
                 ℓ(x) = {}, η(x) = {}, ℓ(η(x)) = {}\n\
                 ν_x = {nu}   [method: {method}]\n\
                 defect = {def}\n\
                 dim X_x(b_x) = {dim}\n",
                sfmt(&weyl.format_element(x.finite)),
                x.translation,
                sfmt(&weyl.format_element(d.v)),
                d.lambda,
                sfmt(&weyl.format_element(d.w)),
                if d.singular { "  (singular λ)" } else { "" },
                session.affine.length(&x),
                sfmt(&weyl.format_element(session.affine.eta(&x))),
                weyl.length(session.affine.eta(&x)),
            )
        }
        other => return Err(user(format!("unknown format `{other}`"))),
    };
    emit(&args.output, &text)
}

fn report_json(session: &Session, report: &CordialityReport) -> serde_json::Value {
    let weyl = session.weyl();
    serde_json::json!({
        "element": session.affine.element_to_json(&report.element),
        "decomposition": session.affine.decomposition_to_json(&report.decomposition),
        "cordial": report.verdict.to_string(),
        "method": report.method.to_string(),
        "lhs": report.lhs,
        "rhs": report.rhs.map(|r| cordial_core::newton::ratio_string(&r)),
        "nu_x": report.nu_x.as_ref().map(|n| n.to_json()),
        "defect": match report.defect {
            Defect::Known(d) => serde_json::json!(d),
            Defect::Indeterminate => serde_json::json!("indeterminate"),
        },
        "families": report.families.labels(),
        "superregular": report.superregular,
        "eta": weyl.format_element(session.affine.eta(&report.element)),
        "note": report.note,
    })
}

fn cmd_cordial(args: CordialArgs) -> Result<(), Failure> {
    let session = Session::open(&args.group)?;
    let x = parse_element(&session, &args.element)?;
    let mut checker = CordialityChecker::new(&session.affine, &session.qbg);
    checker.lower_set_bound = args.bound;
    if let Some(m) = args.min_pairing {
        checker.min_pairing = m;
    }
    let d = session.affine.decompose_dominant(&x);
    let report = match args.method.as_str() {
        "oracle" => checker
            .is_cordial(&x, Method::DefinitionOracle)
            .map_err(from_cordial)?,
        "qbg" => checker
            .is_cordial(&x, Method::QbgSuperregular)
            .map_err(from_cordial)?,
        "both" => {
            let superregular = checker.is_superregular(&d.lambda);
            let in_bound = session.affine.length(&x) <= checker.lower_set_bound;
            match (superregular, in_bound) {
                (true, true) => checker.is_cordial_both(&x).map_err(from_cordial)?,
                (true, false) => checker
                    .is_cordial(&x, Method::QbgSuperregular)
                    .map_err(from_cordial)?,
                (false, _) => checker
                    .is_cordial(&x, Method::DefinitionOracle)
                    .map_err(from_cordial)?,
            }
        }
        other => return Err(user(format!("unknown method `{other}`"))),
    };
    let text = match args.format.as_str() {
        "json" => {
            serde_json::to_string_pretty(&report_json(&session, &report)).expect("serializable")
                + "\n"
        }
        "text" => {
            let weyl = session.weyl();
            format!(
                "x = t^μ·{} with μ = {}\n\
                 decomposition: v = {}, λ = {}, w = {}{}\n\
                 cordial = {}   [method: {}]\n\
                 ℓ(x) - ℓ(η(x)) = {}   ⟨2ρ,ν_x⟩ - def(b_x) = {}\n\
                 ν_x = {}   defect = {}\n\
                 families: {}\n{}",
                sfmt(&weyl.format_element(x.finite)),
                x.translation,
                sfmt(&weyl.format_element(report.decomposition.v)),
                report.decomposition.lambda,
                sfmt(&weyl.format_element(report.decomposition.w)),
                if report.decomposition.singular {
                    "  (singular λ)"
                } else {
                    ""
                },
                report.verdict,
                report.method,
                report.lhs,
                report
                    .rhs
                    .map(|r| cordial_core::newton::ratio_string(&r))
                    .unwrap_or_else(|| "indeterminate".to_string()),
                report
                    .nu_x
                    .as_ref()
                    .map(|n| n.to_string())
                    .unwrap_or_else(|| "-".to_string()),
                report.defect,
                report.families,
                report
                    .note
                    .as_ref()
                    .map(|n| format!("note: {n}\n"))
                    .unwrap_or_default(),
            )
        }
        other => return Err(user(format!("unknown format `{other}`"))),
    };
    emit(&args.output, &text)
}

fn parse_range(weyl: &WeylGroup, s: &str) -> Result<Option<Vec<WeylElement>>, Failure> {
    if s == "all" {
        return Ok(None);
    }
    let mut out = Vec::new();
    for part in s.split(',') {
        out.push(weyl.parse_word(part.trim()).map_err(user)?);
    }
    Ok(Some(out))
}

fn cmd_survey(args: SurveyArgs) -> Result<(), Failure> {
    if args.jobs == 0 {
        return Err(user("--jobs must be positive"));
    }
    let session = Session::open(&args.group)?;
    let weyl = session.weyl();
    let rs = weyl.root_system();
    let lambdas: Result<Vec<Coweight>, Failure> = args
        .lambda
        .iter()
        .map(|s| {
            let lam = parse_coweight(rs, s)?;
            if !rs.is_dominant(&lam) {
                return Err(user(format!("λ = {lam} is not dominant")));
            }
            Ok(lam)
        })
        .collect();
    let lambdas = lambdas?;
    let method = match args.method.as_str() {
        "oracle" => SurveyMethod::Oracle,
        "qbg" => SurveyMethod::Qbg,
        "both" => SurveyMethod::Both,
        other => return Err(user(format!("unknown method `{other}`"))),
    };
    let vs = parse_range(weyl, &args.v)?;
    let ws = parse_range(weyl, &args.w)?;
    let mut checker = CordialityChecker::new(&session.affine, &session.qbg);
    checker.lower_set_bound = args.bound;
    if let Some(m) = args.min_pairing {
        checker.min_pairing = m;
    }

    // Parallel over the v slices: each worker produces its rows in order and
    // the ordered collect keeps the output deterministic for any --jobs.
    let v_list: Vec<WeylElement> = vs.unwrap_or_else(|| weyl.elements().collect());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| user(format!("cannot build thread pool: {e}")))?;
    let rows: Vec<_> = pool.install(|| {
        use rayon::prelude::*;
        v_list
            .par_iter()
            .map(|&v| {
                let request = SurveyRequest {
                    lambdas: lambdas.clone(),
                    vs: Some(vec![v]),
                    ws: ws.clone(),
                    method,
                };
                run_survey(&checker, &request)
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    });

    let text = match args.format.as_str() {
        "csv" => survey_to_csv(&rows),
        "json" => {
            serde_json::to_string_pretty(&survey_to_json(&rows)).expect("serializable") + "\n"
        }
        other => return Err(user(format!("unknown format `{other}` (csv or json)"))),
    };
    let s = summarize(&rows);
    emit(&args.output, &text)?;
    eprintln!(
        "survey: {} rows — {} cordial, {} non-cordial, {} indeterminate, {} errors, {} in a family",
        s.rows, s.cordial, s.not_cordial, s.indeterminate, s.errors, s.in_any_family
    );
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    if args.jobs == 0 {
        return Err(user("--jobs must be positive"));
    }
    let lattice = parse_lattice(&args.group.lattice)?;
    let name = args
        .group
        .group_type
        .as_ref()
        .ok_or_else(|| user("verify requires --type"))?
        .to_ascii_uppercase();
    let opts = verify::VerifyOptions {
        budget: args.budget,
        seed: args.seed,
    };
    let results = verify::run(&name, lattice, &opts, args.jobs).map_err(user)?;
    let failed = results
        .iter()
        .filter(|r| r.status == verify::Status::Fail)
        .count();
    let text = match args.format.as_str() {
        "json" => {
            let arr: Vec<serde_json::Value> = results
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "name": r.name,
                        "status": if r.status == verify::Status::Pass { "pass" } else { "fail" },
                        "detail": r.detail,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&serde_json::json!({
                "type": name,
                "lattice": lattice.to_string(),
                "seed": args.seed,
                "properties": arr,
                "failed": failed,
            }))
            .expect("serializable")
                + "\n"
        }
        "text" => {
            let mut s = String::new();
            s.push_str(&format!(
                "verifying {name} ({lattice} lattice, seed {}) — {} properties\n",
                args.seed,
                results.len()
            ));
            for r in &results {
                let tag = if r.status == verify::Status::Pass {
                    "PASS"
                } else {
                    "FAIL"
                };
                s.push_str(&format!("{tag} {:<38} {}\n", r.name, r.detail));
            }
            s.push_str(&format!(
                "{}/{} properties passed\n",
                results.len() - failed,
                results.len()
            ));
            s
        }
        other => return Err(user(format!("unknown format `{other}`"))),
    };
    emit(&args.output, &text)?;
    if failed > 0 {
        return Err(internal(format!("{failed} properties failed")));
    }
    Ok(())
}
