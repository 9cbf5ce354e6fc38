//! Command-line front end: argument parsing and one function per subcommand.
//!
//! Every command produces a serializable report. [`run`] renders it in the
//! requested format and maps failures to exit codes.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::affine::{
    build_affine_diagram, verify_affine_generation, verify_identities, AffineDiagram, AffineError, AffineSetup,
    GenerationReport, IdentityReport,
};
use crate::catalog::{config, GroupId};
use crate::diagrams::{circ_reduce, classify_eisenstein, CircReduction, ClassificationReport};
use crate::group::{coxeter_element_check, CoxeterElementReport, Perm, ReflectionGroup};
use crate::lattices::build_root_system;
use crate::presentations::verify::{presentation_kind, verify_group, VerifyReport};
use crate::rings::RingId;
use crate::weyl::{run_trials, SimpleSystem, TrialReport, WeylParams, WeylSetup};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "REFLEKT_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ALGORITHM: i32 = 3;
pub const EXIT_CERTIFICATION: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "reflekt", version, about = "Unitary reflection groups: roots, Weyl vectors, diagrams, presentations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

/// Options of the Weyl-vector iteration, shared by every command that needs
/// a simple system.
#[derive(Args, Clone, Debug)]
pub struct TrialArgs {
    /// Number of random starts.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Stopping tolerance on the squared step.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 100_000)]
    pub max_iter: usize,
    /// Exponent `e` in the mirror weight `o(r)^-e`.
    #[arg(long, default_value_t = 2.0)]
    pub weight_exponent: f64,
}

impl TrialArgs {
    pub fn params(&self) -> WeylParams {
        WeylParams {
            tol: self.tol,
            max_iter: self.max_iter,
            weight_exponent: self.weight_exponent,
            ..WeylParams::default()
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dump the projective roots of a group.
    Roots {
        #[arg(value_parser = parse_group)]
        group: GroupId,
    },
    /// Run the Weyl-vector iteration from seeded random starts.
    Weyl {
        #[arg(value_parser = parse_group)]
        group: GroupId,
        #[command(flatten)]
        trials: TrialArgs,
    },
    /// Enumerate Eisenstein root diagrams up to the given rank.
    Classify {
        #[arg(long, default_value_t = 5)]
        max_rank: usize,
    },
    /// Check the presentation on the algorithm's generators and certify its order.
    Verify {
        #[arg(value_parser = parse_group)]
        group: GroupId,
        #[arg(long, default_value_t = 2_000_000)]
        max_cosets: usize,
        #[command(flatten)]
        trials: TrialArgs,
    },
    /// Search orderings of the simple generators for a Coxeter element.
    Coxeter {
        #[arg(value_parser = parse_group)]
        group: GroupId,
        #[command(flatten)]
        trials: TrialArgs,
    },
    /// Build the affine diagram and check the affine identities.
    Affine {
        #[arg(value_parser = parse_group)]
        group: GroupId,
        /// Word length of the ball used for the identities.
        #[arg(long, default_value_t = 4)]
        radius: usize,
        #[command(flatten)]
        trials: TrialArgs,
    },
}

fn parse_group(s: &str) -> Result<GroupId, String> {
    s.parse::<GroupId>().map_err(|e| e.to_string())
}

/// A command failure together with its exit code. `report` carries the
/// output of a command that ran but whose checks failed.
#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub code: i32,
    pub message: String,
    pub report: Option<String>,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: message.into(), report: None }
    }

    fn algorithm(message: impl ToString) -> Self {
        CliError { code: EXIT_ALGORITHM, message: message.to_string(), report: None }
    }
}

/// Sizes the global thread pool from [`THREADS_ENV`] when it holds a positive integer.
pub fn init_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

/// Runs a parsed command line and returns the rendered output.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Roots { group } => roots(*group, cli.format),
        Command::Weyl { group, trials } => weyl(*group, trials, cli.format),
        Command::Classify { max_rank } => classify(*max_rank, cli.format),
        Command::Verify { group, max_cosets, trials } => verify(*group, *max_cosets, trials, cli.format),
        Command::Coxeter { group, trials } => coxeter(*group, trials, cli.format),
        Command::Affine { group, radius, trials } => affine(*group, *radius, trials, cli.format),
    }
}

/// Parses `args`, runs the command, writes the output and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    init_threads();
    let (body, code) = match run(&cli) {
        Ok(body) => (Some(body), EXIT_OK),
        Err(e) => {
            eprintln!("error: {}", e.message);
            (e.report, e.code)
        }
    };
    if let Some(body) = body {
        let written = match &cli.out {
            Some(path) => std::fs::write(path, &body),
            None => {
                print!("{body}");
                Ok(())
            }
        };
        if let Err(e) = written {
            eprintln!("error: cannot write output: {e}");
            return EXIT_USAGE;
        }
    }
    code
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn no_dot(command: &str) -> CliError {
    CliError::usage(format!("{command} has no dot output"))
}

/// Runs the trials and returns the setup with the representative simple system.
fn simple_system(group: GroupId, args: &TrialArgs) -> Result<(WeylSetup, TrialReport, SimpleSystem), CliError> {
    let rs = build_root_system(group).map_err(CliError::algorithm)?;
    let grp = ReflectionGroup::full(rs).map_err(CliError::algorithm)?;
    let setup = WeylSetup::new(grp, args.params());
    let report = run_trials(&setup, args.trials, args.seed).map_err(CliError::algorithm)?;
    let simple = report
        .representative()
        .cloned()
        .ok_or_else(|| CliError::algorithm(format!("{group}: no independent simple system in {} trials", args.trials)))?;
    Ok((setup, report, simple))
}

pub fn roots(group: GroupId, format: Format) -> Result<String, CliError> {
    let rs = build_root_system(group).map_err(CliError::algorithm)?;
    let json = rs.to_json();
    match format {
        Format::Json => Ok(to_json(&json)),
        Format::Text => {
            let mut s = format!(
                "{}: {} projective roots, {} roots, ring {:?}, dimension {}\n",
                json.group, json.projective_count, json.root_count, json.ring, json.dim
            );
            for (r, n) in json.roots.iter().zip(&json.norms) {
                let _ = writeln!(s, "  ({})  norm {n}", r.join(", "));
            }
            Ok(s)
        }
        Format::Dot => Err(no_dot("roots")),
    }
}

pub fn weyl(group: GroupId, args: &TrialArgs, format: Format) -> Result<String, CliError> {
    let rs = build_root_system(group).map_err(CliError::algorithm)?;
    let grp = ReflectionGroup::full(rs).map_err(CliError::algorithm)?;
    let setup = WeylSetup::new(grp, args.params());
    let report = run_trials(&setup, args.trials, args.seed).map_err(CliError::algorithm)?;
    if report.converged == 0 {
        return Err(CliError {
            code: EXIT_ALGORITHM,
            message: format!("{group}: none of {} trials converged", args.trials),
            report: Some(render_weyl(&report, Format::Json)?),
        });
    }
    render_weyl(&report, format)
}

fn render_weyl(report: &TrialReport, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(to_json(report)),
        Format::Text => {
            let mut s = report.summary_line();
            s.push('\n');
            if let Some(ss) = report.representative() {
                let _ = writeln!(s, "simple roots: {}", ss.texts.join("  "));
            }
            Ok(s)
        }
        Format::Dot => report
            .representative()
            .map(|ss| ss.diagram().to_dot(&report.group))
            .ok_or_else(|| CliError::algorithm(format!("{}: no independent simple system", report.group))),
    }
}

/// An affine diagram met by the classification.
#[derive(Clone, Debug, Serialize)]
pub struct AffineEntry {
    pub rank: usize,
    pub gram: Vec<Vec<String>>,
    pub numbering: Vec<String>,
}

/// Reduction of one circuit `Circ_{k,u}`.
#[derive(Clone, Debug, Serialize)]
pub struct CircEntry {
    pub k: usize,
    pub u: String,
    /// Class name when the circuit is definite, `"indefinite"` otherwise.
    pub result: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyOutput {
    #[serde(flatten)]
    pub report: ClassificationReport,
    pub affine: Vec<AffineEntry>,
    pub circuits: Vec<CircEntry>,
}

pub fn classify_output(max_rank: usize) -> Result<ClassifyOutput, CliError> {
    let report = classify_eisenstein(max_rank);
    let affine = report
        .affine
        .iter()
        .map(|(d, n)| AffineEntry {
            rank: d.size(),
            gram: d.gram().to_text(),
            numbering: n.iter().map(|x| x.to_string()).collect(),
        })
        .collect();
    let e = RingId::Eisenstein;
    let mut circuits = Vec::new();
    for k in 3..=max_rank.min(5) {
        for u in crate::rings::units(e) {
            let result = match circ_reduce(k, u).map_err(CliError::algorithm)? {
                CircReduction::Definite { diagram: d, .. } => report
                    .class_diagrams
                    .iter()
                    .zip(&report.classes)
                    .find(|(c, _)| c.size() == d.size() && crate::diagrams::eisenstein_isometry(&d, c).is_some())
                    .map_or_else(|| "definite".to_string(), |(_, entry)| entry.name.clone()),
                CircReduction::Indefinite { .. } => "indefinite".to_string(),
            };
            circuits.push(CircEntry { k, u: u.to_string(), result });
        }
    }
    Ok(ClassifyOutput { report, affine, circuits })
}

pub fn classify(max_rank: usize, format: Format) -> Result<String, CliError> {
    if max_rank == 0 {
        return Err(CliError::usage("--max-rank must be at least 1"));
    }
    let out = classify_output(max_rank)?;
    match format {
        Format::Json => Ok(to_json(&out)),
        Format::Text => {
            let mut s = format!("classes up to rank {}:", max_rank);
            for c in &out.report.classes {
                let _ = write!(s, " {}", c.name);
            }
            s.push('\n');
            let _ = writeln!(s, "diagrams per rank: {:?}", out.report.diagrams_per_rank);
            let _ = writeln!(s, "affine diagrams: {}", out.affine.len());
            for a in &out.affine {
                let _ = writeln!(s, "  rank {} numbering ({})", a.rank, a.numbering.join(", "));
            }
            for c in &out.circuits {
                let _ = writeln!(s, "Circ({}, {}) -> {}", c.k, c.u, c.result);
            }
            Ok(s)
        }
        Format::Dot => {
            let mut s = String::new();
            for (c, d) in out.report.classes.iter().zip(&out.report.class_diagrams) {
                s.push_str(&d.to_dot(&c.name));
            }
            for (i, (d, n)) in out.report.affine.iter().enumerate() {
                s.push_str(&d.to_dot_with(&format!("affine-{}", i + 1), &[], Some(n)));
            }
            Ok(s)
        }
    }
}

fn perms(setup: &WeylSetup, ss: &SimpleSystem) -> Result<Vec<Perm>, CliError> {
    ss.roots
        .iter()
        .map(|&i| setup.group.perm(&setup.group.rs.generator(i)).map_err(CliError::algorithm))
        .collect()
}

pub fn verify_report(group: GroupId, max_cosets: usize, args: &TrialArgs) -> Result<VerifyReport, CliError> {
    if presentation_kind(group).is_none() {
        return Err(CliError::usage(format!("no presentation configured for {group}")));
    }
    let (setup, _, ss) = simple_system(group, args)?;
    let gens = perms(&setup, &ss)?;
    verify_group(group, &gens, &setup.group.order(), max_cosets)
        .ok_or_else(|| CliError::algorithm(format!("{group}: no labeling of the simple generators satisfies the presentation")))
}

pub fn verify(group: GroupId, max_cosets: usize, args: &TrialArgs, format: Format) -> Result<String, CliError> {
    let report = verify_report(group, max_cosets, args)?;
    let body = match format {
        Format::Json => to_json(&report),
        Format::Text => {
            let mut s = format!("{} ({:?} presentation, labeling {:?})\n", report.group, report.kind, report.labeling);
            let held = report.relations.iter().filter(|r| r.holds).count();
            let _ = writeln!(s, "relations hold: {held}/{}", report.relations.len());
            let _ = writeln!(s, "generators generate: {}", report.generators_generate);
            if let Some(m) = &report.mutation {
                let _ = writeln!(s, "mutation maps: {}", if m.ok { "ok" } else { "FAILED" });
            }
            for o in &report.open_relations {
                let _ = writeln!(s, "open: {}  ({})", o.relation, o.status);
            }
            match (&report.certification, &report.certification_error) {
                (Some(c), _) => {
                    let _ = writeln!(s, "certified order {} (group order {})", c.order, report.group_order);
                }
                (None, Some(e)) => {
                    let _ = writeln!(s, "certification failed: {e}");
                }
                _ => {}
            }
            s
        }
        Format::Dot => return Err(no_dot("verify")),
    };
    if report.ok() {
        Ok(body)
    } else {
        Err(CliError {
            code: EXIT_CERTIFICATION,
            message: format!("{}: verification failed", report.group),
            report: Some(body),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoxeterOutput {
    pub group: String,
    pub degrees: Vec<u32>,
    pub simple_roots: Vec<String>,
    #[serde(flatten)]
    pub report: CoxeterElementReport,
}

pub fn coxeter_output(group: GroupId, args: &TrialArgs) -> Result<CoxeterOutput, CliError> {
    let degrees = config(group)
        .degrees
        .ok_or_else(|| CliError::usage(format!("no degrees configured for {group}")))?;
    let (setup, _, ss) = simple_system(group, args)?;
    let mats: Vec<_> = ss.roots.iter().map(|&i| setup.group.rs.generator(i)).collect();
    let cap = 4 * u64::from(degrees.iter().copied().max().unwrap_or(1));
    let report = coxeter_element_check(&mats, &degrees, cap).map_err(CliError::algorithm)?;
    Ok(CoxeterOutput {
        group: group.to_string(),
        degrees,
        simple_roots: ss.texts.clone(),
        report,
    })
}

pub fn coxeter(group: GroupId, args: &TrialArgs, format: Format) -> Result<String, CliError> {
    let out = coxeter_output(group, args)?;
    let body = match format {
        Format::Json => to_json(&out),
        Format::Text => {
            let phases: Vec<String> = out.report.phases.iter().map(|(a, b)| format!("{a}/{b}")).collect();
            format!(
                "{}: ordering {:?}, order {}, phases {{{}}}, matches degrees {:?}: {}\n",
                out.group,
                out.report.permutation,
                out.report.order,
                phases.join(", "),
                out.degrees,
                out.report.ok()
            )
        }
        Format::Dot => return Err(no_dot("coxeter")),
    };
    if out.report.ok() {
        Ok(body)
    } else {
        Err(CliError { code: EXIT_CERTIFICATION, message: format!("{}: Coxeter element check failed", out.group), report: Some(body) })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AffineOutput {
    pub diagram: AffineDiagram,
    pub generation: GenerationReport,
    pub identities: IdentityReport,
}

impl AffineOutput {
    pub fn ok(&self) -> bool {
        self.diagram.ok() && self.generation.ok() && self.identities.ok()
    }
}

fn affine_error(e: AffineError) -> CliError {
    match e {
        AffineError::Unsupported(_) => CliError::usage(e.to_string()),
        _ => CliError::algorithm(e),
    }
}

pub fn affine_output(group: GroupId, radius: usize, args: &TrialArgs) -> Result<AffineOutput, CliError> {
    let setup = AffineSetup::new(group).map_err(affine_error)?;
    let (_, _, ss) = simple_system(group, args)?;
    let diagram = build_affine_diagram(&setup, &ss.roots).map_err(affine_error)?;
    let generation = verify_affine_generation(&setup, &diagram).map_err(affine_error)?;
    let identities = verify_identities(&setup, &diagram, radius).map_err(affine_error)?;
    Ok(AffineOutput { diagram, generation, identities })
}

pub fn affine(group: GroupId, radius: usize, args: &TrialArgs, format: Format) -> Result<String, CliError> {
    let out = affine_output(group, radius, args)?;
    let body = match format {
        Format::Json => to_json(&out),
        Format::Dot => out.diagram.dot.clone(),
        Format::Text => {
            let d = &out.diagram;
            format!(
                "{}: numbering ({}), balanced {}, automorphism orders {:?}\nspan index {} (translations {}), identities on ball of radius {} ({} elements): {}\n",
                d.group,
                d.numbering.join(", "),
                d.balanced,
                d.automorphism_orders,
                out.generation.span_index,
                out.generation.translation_index,
                out.identities.radius,
                out.identities.ball_size,
                out.identities.ok()
            )
        }
    };
    if out.ok() {
        Ok(body)
    } else {
        Err(CliError { code: EXIT_CERTIFICATION, message: format!("{}: affine checks failed", out.diagram.group), report: Some(body) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("reflekt").chain(args.iter().copied()))
    }

    #[test]
    fn parses_flags() {
        let cli = parse(&["weyl", "g4", "--trials", "7", "--seed", "3", "--tol", "1e-9", "--format", "text"]).unwrap();
        assert_eq!(cli.format, Format::Text);
        match cli.command {
            Command::Weyl { group, trials } => {
                assert_eq!(group, GroupId::Exceptional(4));
                assert_eq!((trials.trials, trials.seed, trials.tol), (7, 3, 1e-9));
            }
            _ => panic!("wrong command"),
        }
    }

    #[test]
    fn unknown_group_is_usage_error() {
        assert_eq!(main_with_args(["reflekt", "roots", "g7"]), EXIT_USAGE);
        assert_eq!(main_with_args(["reflekt", "frobnicate"]), EXIT_USAGE);
    }

    #[test]
    fn roots_text() {
        let s = roots(GroupId::Exceptional(4), Format::Text).unwrap();
        assert!(s.starts_with("G4: 4 projective roots"));
    }
}
