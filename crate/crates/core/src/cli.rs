//! The `ainfkit` command line: reads the module file formats, runs one computation and
//! prints its report.
//!
//! Exit codes: 0 success, 1 verification failure (the report is still printed), 2 malformed
//! input, 64 usage error.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::graded_ainf::{
    verify_ainf, verify_bimodule, verify_bimodule_morphism, verify_functor, AInfError, AInfStructure, BimoduleData, BimoduleMorphism,
    FunctorData, VerifyReport, DEFAULT_BOUND,
};
use crate::hochschild::{
    change_of_rings, reorder_iso, telescope, telescope_filtration_report, BarComplex, BarReport, FiltrationReport, HochschildError,
    TelescopeData, DEFAULT_LENGTH_BOUND,
};
use crate::novikov::Q;
use crate::qh_spec::{self, QhError};
use crate::toric_lg::{
    critical_points, family_polytope, jacobian_rank, superpotential, CriticalReport, DelzantCheck, Family, MomentPolytope, NumericOptions,
    Superpotential, ToricError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "ainfkit", version, about = "Exact A-infinity, Hochschild, toric and quantum cohomology computations")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// A-infinity structures, bimodules, morphisms and functors.
    Ainf {
        #[command(subcommand)]
        command: AinfCommand,
    },
    /// Hochschild complexes.
    Hh {
        #[command(subcommand)]
        command: HhCommand,
    },
    /// Telescope complex of a directed system of chain complexes.
    Telescope {
        file: PathBuf,
    },
    /// Toric Landau-Ginzburg models.
    Toric {
        #[command(subcommand)]
        command: ToricCommand,
    },
    /// Quantum and symplectic cohomology of the shipped families.
    Qh {
        #[command(subcommand)]
        command: QhCommand,
    },
}

#[derive(Subcommand, Debug)]
enum AinfCommand {
    /// Checks the defining relations up to a total length bound.
    Verify {
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        bound: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
enum HhCommand {
    /// Homology ranks of the bar complex of a bimodule.
    Ranks {
        bimodule: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        bound: Option<u64>,
    },
    /// The tautological map along a functor, with its chain-map residual.
    ChangeOfRings {
        functor: PathBuf,
        bimodule: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        bound: Option<u64>,
    },
    /// Compares the bar complex of a tensor bimodule with the two-sided tensor complex.
    TensorCheck {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        bound: Option<u64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    Projective,
    Bundle,
}

#[derive(Args, Debug, Clone)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Option<FamilyKind>,
    #[arg(short = 'm')]
    m: Option<usize>,
    #[arg(short = 'k')]
    k: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct ToricArgs {
    /// Polytope file; alternatively use `--family`.
    polytope: Option<PathBuf>,
    #[command(flatten)]
    family: FamilyArgs,
    /// Values of `t` (crit) or of `s = t^{1/N}` (jac).
    #[arg(long = "t", value_parser = parse_rational)]
    t: Vec<Q>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum ToricCommand {
    /// The superpotential of a polytope.
    Potential(ToricArgs),
    /// Critical points, values and nondisplaceability flags.
    Crit(ToricArgs),
    /// Rank of the Jacobian ring.
    Jac(ToricArgs),
}

#[derive(Args, Debug, Clone)]
struct QhArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Specializations `s = t^{1/N}` for the Jacobian rank.
    #[arg(long = "t", value_parser = parse_rational)]
    t: Vec<Q>,
}

#[derive(Subcommand, Debug)]
enum QhCommand {
    Presentation(QhArgs),
    Spectrum(QhArgs),
    Sh(QhArgs),
    Compare(QhArgs),
    Generation(QhArgs),
}

fn parse_rational(s: &str) -> Result<Q, String> {
    s.trim().parse::<Q>().map_err(|_| format!("`{s}` is not a rational number p/q"))
}

/// Reports of the `ainf verify` subcommand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub kind: String,
    pub ok: bool,
    pub reports: Vec<VerifyReport>,
}

/// Report of `hh change-of-rings`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChangeOfRingsOutput {
    pub length_bound: usize,
    pub pulled_back_dim: usize,
    pub residual_entries: usize,
    pub chain_map: bool,
    pub source: BarReport,
    pub target: BarReport,
}

/// Report of `hh tensor-check`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensorCheckOutput {
    pub length_bound: usize,
    pub residual_entries: usize,
    pub intertwines: bool,
    pub bar_ranks: BTreeMap<i64, usize>,
    pub tensor_ranks: BTreeMap<i64, usize>,
    pub ranks_agree: bool,
}

/// Report of `telescope`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TelescopeOutput {
    pub stages: usize,
    pub telescope_dim: usize,
    /// `d² = 0` on the telescope (checked on assembly).
    pub square_zero: bool,
    pub filtration: FiltrationReport,
    pub ok: bool,
}

/// Report of `toric potential`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PotentialOutput {
    pub family: Option<Family>,
    pub polytope: serde_json::Value,
    pub has_interior: bool,
    pub delzant: DelzantCheck,
    pub superpotential: String,
    pub terms: Vec<crate::toric_lg::Term>,
}

enum Failure {
    Usage(String),
    Input(String),
}

impl From<AInfError> for Failure {
    fn from(e: AInfError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<HochschildError> for Failure {
    fn from(e: HochschildError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<ToricError> for Failure {
    fn from(e: ToricError) -> Self {
        match e {
            ToricError::NeedsSpecialization => Failure::Usage(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

impl From<QhError> for Failure {
    fn from(e: QhError) -> Self {
        match e {
            QhError::Toric(t) => t.into(),
            e => Failure::Input(e.to_string()),
        }
    }
}

/// A finished computation: the JSON report and whether every check passed.
struct Outcome {
    report: serde_json::Value,
    ok: bool,
}

impl Outcome {
    fn of<T: Serialize>(report: &T, ok: bool) -> Self {
        Outcome { report: serde_json::to_value(report).expect("reports serialize"), ok }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn bound_or(b: Option<u64>, default: usize) -> usize {
    b.map_or(default, |b| b as usize)
}

/// Runs the command line `args` (without the program name), writing the report to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("ainfkit")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(outcome) => {
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&outcome.report).expect("reports serialize"),
                Format::Text => render_text(&outcome.report),
            };
            let _ = writeln!(out, "{body}");
            if outcome.ok {
                EXIT_OK
            } else {
                let _ = writeln!(err, "verification failed");
                EXIT_VERIFICATION
            }
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "usage error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Input(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_INPUT
        }
    }
}

fn execute(cmd: &Command) -> Result<Outcome, Failure> {
    match cmd {
        Command::Ainf { command: AinfCommand::Verify { file, bound } } => ainf_verify(&read(file)?, bound_or(*bound, DEFAULT_BOUND)),
        Command::Hh { command } => match command {
            HhCommand::Ranks { bimodule, bound } => {
                let m = Arc::new(BimoduleData::from_json_str(&read(bimodule)?)?);
                let report = BarComplex::new(m, bound_or(*bound, DEFAULT_LENGTH_BOUND))?.report()?;
                Ok(Outcome::of(&report, true))
            }
            HhCommand::ChangeOfRings { functor, bimodule, bound } => {
                let phi = FunctorData::from_json_str(&read(functor)?)?;
                let n = Arc::new(BimoduleData::from_json_str(&read(bimodule)?)?);
                let length_bound = bound_or(*bound, 3);
                let ch = change_of_rings(&phi, n, length_bound)?;
                let residual_entries = ch.residual_entries();
                let report = ChangeOfRingsOutput {
                    length_bound,
                    pulled_back_dim: ch.pulled_back.dim(),
                    residual_entries,
                    chain_map: residual_entries == 0,
                    source: ch.source.report()?,
                    target: ch.target.report()?,
                };
                Ok(Outcome::of(&report, report.chain_map))
            }
            HhCommand::TensorCheck { left, right, bound } => {
                let l = Arc::new(BimoduleData::from_json_str(&read(left)?)?);
                let r = Arc::new(BimoduleData::from_json_str(&read(right)?)?);
                let length_bound = bound_or(*bound, 4);
                let iso = reorder_iso(l, r, length_bound)?;
                let bar_ranks = iso.bar.complex().homology_ranks()?;
                let tensor_ranks = iso.tensor.complex().homology_ranks()?;
                let report = TensorCheckOutput {
                    length_bound,
                    residual_entries: iso.residual_entries,
                    intertwines: iso.intertwines(),
                    ranks_agree: bar_ranks == tensor_ranks,
                    bar_ranks,
                    tensor_ranks,
                };
                Ok(Outcome::of(&report, report.intertwines && report.ranks_agree))
            }
        },
        Command::Telescope { file } => telescope_cmd(&read(file)?),
        Command::Toric { command } => toric(command),
        Command::Qh { command } => qh(command),
    }
}

fn ainf_verify(text: &str, bound: usize) -> Result<Outcome, Failure> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Failure::Input(format!("invalid JSON: {e}")))?;
    let has = |k: &str| v.get(k).is_some();
    let (kind, reports) = if has("object_map") {
        let phi = FunctorData::from_json_str(text)?;
        ("functor", vec![verify_ainf(phi.source(), bound)?, verify_ainf(phi.target(), bound)?, verify_functor(&phi, bound)?])
    } else if has("source") && has("target") {
        let f = BimoduleMorphism::from_json_str(text)?;
        let base = f.base().clone();
        ("bimodule_morphism", vec![verify_ainf(&base, bound)?, verify_bimodule(f.source(), bound)?, verify_bimodule(f.target(), bound)?, verify_bimodule_morphism(&f, bound)?])
    } else if has("spaces") {
        let m = BimoduleData::from_json_str(text)?;
        ("bimodule", vec![verify_ainf(m.base(), bound)?, verify_bimodule(&m, bound)?])
    } else {
        let a = AInfStructure::from_json_str(text)?;
        ("ainf", vec![verify_ainf(&a, bound)?])
    };
    let ok = reports.iter().all(|r| r.ok);
    Ok(Outcome::of(&VerifyOutput { kind: kind.into(), ok, reports }, ok))
}

fn telescope_cmd(text: &str) -> Result<Outcome, Failure> {
    let t = match TelescopeData::from_json_str(text) {
        Ok(t) => t,
        Err(e @ HochschildError::ConnectingMapNotChainMap { .. }) => return Err(Failure::Input(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let (square_zero, telescope_dim) = match telescope(&t) {
        Ok(c) => (true, c.total_dim()),
        Err(HochschildError::NotAComplex { .. }) => (false, 0),
        Err(e) => return Err(e.into()),
    };
    let filtration = if square_zero { telescope_filtration_report(&t)? } else { FiltrationReport::default() };
    let ok = square_zero
        && filtration.top_stage_matches
        && filtration.inclusions_quasi_iso
        && filtration.top_inclusion_quasi_iso
        && filtration.connecting_maps_compatible;
    Ok(Outcome::of(&TelescopeOutput { stages: t.len(), telescope_dim, square_zero, filtration, ok }, ok))
}

fn family_of(f: &FamilyArgs) -> Result<Option<Family>, Failure> {
    match (f.family, f.m, f.k) {
        (None, None, None) => Ok(None),
        (Some(FamilyKind::Projective), Some(m), None) => Ok(Some(Family::Projective { m })),
        (Some(FamilyKind::Bundle), Some(m), Some(k)) => Ok(Some(Family::NegativeLineBundle { m, k })),
        (Some(FamilyKind::Projective), _, Some(_)) => Err(Failure::Usage("-k is only meaningful with --family bundle".into())),
        _ => Err(Failure::Usage("give --family projective -m <m>, or --family bundle -m <m> -k <k>".into())),
    }
}

fn toric_potential(a: &ToricArgs) -> Result<Superpotential, Failure> {
    let polytope = match (&a.polytope, family_of(&a.family)?) {
        (Some(p), None) => MomentPolytope::from_json_str(&read(p)?)?,
        (None, Some(f)) => family_polytope(f)?,
        _ => return Err(Failure::Usage("give either a polytope file or --family".into())),
    };
    Ok(superpotential(&polytope))
}

fn toric(cmd: &ToricCommand) -> Result<Outcome, Failure> {
    match cmd {
        ToricCommand::Potential(a) => {
            let w = toric_potential(a)?;
            let p = w.polytope();
            let report = PotentialOutput {
                family: w.family(),
                polytope: p.to_json(),
                has_interior: p.has_interior(),
                delzant: p.delzant().clone(),
                superpotential: w.to_string(),
                terms: w.terms().to_vec(),
            };
            Ok(Outcome::of(&report, true))
        }
        ToricCommand::Crit(a) => {
            let w = toric_potential(a)?;
            let opts = match (a.t.first(), a.seed) {
                (Some(t), Some(seed)) => Some(NumericOptions::new(t.clone(), seed)),
                (Some(_), None) => return Err(Failure::Usage("the numerical branch needs --seed".into())),
                _ => None,
            };
            let set = critical_points(&w, opts.as_ref())?;
            Ok(Outcome::of(&CriticalReport::build(&w, set), true))
        }
        ToricCommand::Jac(a) => {
            let w = toric_potential(a)?;
            let specs = if a.t.is_empty() { qh_spec::default_specializations() } else { a.t.clone() };
            let data = jacobian_rank(&w, &specs)?;
            let ok = data.consistent;
            Ok(Outcome::of(&data, ok))
        }
    }
}

fn qh(cmd: &QhCommand) -> Result<Outcome, Failure> {
    let (args, which) = match cmd {
        QhCommand::Presentation(a) => (a, 0),
        QhCommand::Spectrum(a) => (a, 1),
        QhCommand::Sh(a) => (a, 2),
        QhCommand::Compare(a) => (a, 3),
        QhCommand::Generation(a) => (a, 4),
    };
    let family = family_of(&args.family)?.ok_or_else(|| Failure::Usage("--family is required".into()))?;
    let specs = if args.t.is_empty() { qh_spec::default_specializations() } else { args.t.clone() };
    match which {
        0 => Ok(Outcome::of(&qh_spec::presentation(family)?, true)),
        1 => {
            let p = qh_spec::presentation(family)?;
            Ok(Outcome::of(&qh_spec::spectrum(&qh_spec::c1_operator(&p)), true))
        }
        2 => {
            let p = qh_spec::presentation(family)?;
            let sh = qh_spec::sh_quotient(&p, &qh_spec::c1_operator(&p))?;
            let ok = sh.automorphism;
            Ok(Outcome::of(&sh, ok))
        }
        3 => {
            let pipe = qh_spec::run_pipeline(family, &specs)?;
            let report = pipe.report();
            let ok = report.spectrum_match && report.sh_rank.is_none_or(|r| r == report.jacobian_rank) && !matches!(pipe.comparison, Some(Err(_)));
            Ok(Outcome::of(&report, ok))
        }
        _ => {
            let pipe = qh_spec::run_pipeline(family, &specs)?;
            Ok(Outcome::of(&pipe.generation, true))
        }
    }
}

/// `key: value` lines for the top-level fields; nested values in compact JSON.
fn render_text(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                serde_json::Value::String(s) => format!("{k}: {s}"),
                serde_json::Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                    let mut s = format!("{k}:");
                    for i in items {
                        s.push_str("\n  ");
                        s.push_str(&i.to_string());
                    }
                    s
                }
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}
