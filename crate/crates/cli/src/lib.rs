//! Command-line front end for the `handlebody` library.
//!
//! [`dispatch`] parses arguments, runs one subcommand and returns the exit
//! code. Output goes to the supplied writers so the whole surface can be
//! driven from tests.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use handlebody::presentation::ALPHABET_SIZE;
use handlebody::text::{
    parse_certificate, parse_diagram, parse_path, parse_presentation, render_diagram_text, write_certificate,
    write_diagram, write_path, write_presentation,
};
use handlebody::{
    apply_moves, default_fingerprint_groups, h1_invariants, hom_count, replay, stabilize, stable_diffeo_decide,
    surgery_on_loop, DecideOptions, FiniteGroup, NormalFormDiagram, Presentation, ReplayError, SearchConfig,
    Verdict, Word,
};
use serde_json::json;

pub const EXIT_OK: i32 = 0;
/// Certificate verification failed.
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_FILE: i32 = 66;

#[derive(Debug, Parser)]
#[command(name = "handlebody", version, about = "Presentations, normal-form Kirby diagrams and stable diffeomorphism")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Presentation files.
    #[command(subcommand)]
    Pres(PresCommand),
    /// Diagram files.
    #[command(subcommand)]
    Diag(DiagCommand),
    /// Handle moves.
    #[command(subcommand)]
    Moves(MovesCommand),
    /// Surgery on loops.
    #[command(subcommand)]
    Surgery(SurgeryCommand),
    /// Stable diffeomorphism.
    #[command(subcommand)]
    Classify(ClassifyCommand),
    /// Move certificates.
    #[command(subcommand)]
    Cert(CertCommand),
}

#[derive(Debug, Subcommand)]
enum PresCommand {
    /// Parse a presentation file and report its first homology.
    Check { file: PathBuf },
    /// Apply one Tietze transformation and print the result.
    Tietze(TietzeArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TietzeOp {
    #[value(name = "T1")]
    T1,
    #[value(name = "T1inv")]
    T1Inv,
    #[value(name = "S1")]
    S1,
    #[value(name = "S2")]
    S2,
}

#[derive(Debug, Args)]
struct TietzeArgs {
    file: PathBuf,
    #[arg(long)]
    op: TietzeOp,
    /// T1: word the new generator stands for.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// T1inv: generator letter to eliminate.
    #[arg(long)]
    generator: Option<char>,
    /// T1inv: relator to solve (1-based). S2: relator to delete.
    #[arg(long)]
    rel: Option<usize>,
    /// S1: relator to replace (1-based).
    #[arg(long)]
    i: Option<usize>,
    /// S1: relator multiplied in (1-based).
    #[arg(long)]
    j: Option<usize>,
    /// S1: exponent of relator j, + or -.
    #[arg(long, allow_hyphen_values = true)]
    sign: Option<String>,
    /// S1: conjugating word.
    #[arg(long, allow_hyphen_values = true)]
    w: Option<String>,
}

#[derive(Debug, Subcommand)]
enum DiagCommand {
    /// Build the normal-form diagram of a presentation file.
    Build {
        file: PathBuf,
        /// Write the diagram file here and print a listing instead.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the invariants of a diagram file.
    Invariants {
        file: PathBuf,
        #[command(flatten)]
        groups: GroupArgs,
    },
}

#[derive(Debug, Subcommand)]
enum MovesCommand {
    /// Apply a certificate's stabilizations and moves to a diagram.
    Apply { diagram: PathBuf, certificate: PathBuf },
}

#[derive(Debug, Subcommand)]
enum SurgeryCommand {
    /// Surgery on loops in the connected sum of N copies of S^1 x S^3.
    Run {
        #[arg(long)]
        handles: usize,
        /// Loop word; repeat, each followed by its --parity.
        #[arg(long = "loop", allow_hyphen_values = true, required = true)]
        loops: Vec<String>,
        #[arg(long, required = true)]
        parity: Vec<u8>,
    },
}

#[derive(Debug, Subcommand)]
enum ClassifyCommand {
    /// Decide stable diffeomorphism of two diagram files.
    Decide(DecideArgs),
}

#[derive(Debug, Args)]
struct DecideArgs {
    d1: PathBuf,
    d2: PathBuf,
    /// Tietze path file from the first presentation to the second.
    #[arg(long, conflicts_with_all = ["search_depth", "word_bound", "budget"])]
    path: Option<PathBuf>,
    #[arg(long)]
    search_depth: Option<usize>,
    #[arg(long)]
    word_bound: Option<usize>,
    #[arg(long)]
    budget: Option<usize>,
    /// Also write the certificate file here on success.
    #[arg(long)]
    certificate: Option<PathBuf>,
    #[command(flatten)]
    groups: GroupArgs,
}

#[derive(Debug, Subcommand)]
enum CertCommand {
    /// Replay a certificate from D1 to D2.
    Verify { d1: PathBuf, d2: PathBuf, certificate: PathBuf },
}

#[derive(Debug, Args)]
struct GroupArgs {
    /// Comma-separated fingerprint groups, e.g. Z/2,Z/3,S3.
    #[arg(long, value_delimiter = ',', conflicts_with = "groups_file")]
    groups: Option<Vec<String>>,
    /// File listing fingerprint groups, one name per line.
    #[arg(long)]
    groups_file: Option<PathBuf>,
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn data(message: impl Into<String>) -> Self {
        Failure { code: EXIT_DATA, message: message.into() }
    }
}

impl From<handlebody::Error> for Failure {
    fn from(e: handlebody::Error) -> Self {
        Failure::data(e.to_string())
    }
}

type CliResult = Result<i32, Failure>;

/// Runs the command line `args` (program name first). Returns the exit code.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let mut buf = String::new();
    let result = run(&cli, &mut buf);
    let _ = out.write_all(buf.as_bytes());
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn run(cli: &Cli, out: &mut String) -> CliResult {
    let json = cli.json;
    match &cli.command {
        Command::Pres(PresCommand::Check { file }) => pres_check(file, json, out),
        Command::Pres(PresCommand::Tietze(args)) => pres_tietze(args, json, out),
        Command::Diag(DiagCommand::Build { file, output }) => diag_build(file, output.as_deref(), json, out),
        Command::Diag(DiagCommand::Invariants { file, groups }) => diag_invariants(file, groups, json, out),
        Command::Moves(MovesCommand::Apply { diagram, certificate }) => moves_apply(diagram, certificate, json, out),
        Command::Surgery(SurgeryCommand::Run { handles, loops, parity }) => {
            surgery_run(*handles, loops, parity, json, out)
        }
        Command::Classify(ClassifyCommand::Decide(args)) => classify_decide(args, json, out),
        Command::Cert(CertCommand::Verify { d1, d2, certificate }) => cert_verify(d1, d2, certificate, json, out),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_FILE,
        message: format!("{}: {e}", path.display()),
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure {
        code: EXIT_FILE,
        message: format!("{}: {e}", path.display()),
    })
}

/// Prefixes parse errors with the file they came from.
fn in_file<T>(path: &Path, r: handlebody::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::data(format!("{}: {e}", path.display())))
}

fn load_diagram(path: &Path) -> Result<NormalFormDiagram, Failure> {
    let raw = in_file(path, parse_diagram(&read(path)?))?;
    let problems = raw.validate();
    if !problems.is_empty() {
        return Err(Failure::data(format!("{}: {}", path.display(), problems.join("; "))));
    }
    in_file(path, raw.into_diagram())
}

fn load_groups(args: &GroupArgs) -> Result<Vec<FiniteGroup>, Failure> {
    let names: Vec<String> = match (&args.groups, &args.groups_file) {
        (Some(names), _) => names.clone(),
        (None, Some(path)) => read(path)?
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim().to_string())
            .filter(|l| !l.is_empty())
            .collect(),
        (None, None) => return Ok(default_fingerprint_groups()),
    };
    let known = default_fingerprint_groups();
    names
        .iter()
        .map(|n| {
            known.iter().find(|g| g.name() == n.trim()).cloned().ok_or_else(|| {
                let all: Vec<&str> = known.iter().map(|g| g.name()).collect();
                Failure::usage(format!("unknown group {n:?}; known groups: {}", all.join(", ")))
            })
        })
        .collect()
}

fn emit_json(out: &mut String, value: &serde_json::Value) {
    out.push_str(&serde_json::to_string_pretty(value).expect("JSON values always serialize"));
    out.push('\n');
}

fn pres_check(file: &Path, json: bool, out: &mut String) -> CliResult {
    let parsed = in_file(file, parse_presentation(&read(file)?))?;
    let p = &parsed.presentation;
    let h1 = h1_invariants(p);
    if json {
        emit_json(out, &json!({ "presentation": p, "framings": parsed.framings, "h1": h1 }));
    } else {
        writeln!(out, "{p}").unwrap();
        writeln!(out, "generators={} relators={} H1={h1}", p.num_generators, p.num_relators()).unwrap();
        if let Some(f) = &parsed.framings {
            let f: Vec<String> = f.iter().map(i64::to_string).collect();
            writeln!(out, "framings={}", f.join(",")).unwrap();
        }
    }
    Ok(EXIT_OK)
}

fn need<T: Clone>(v: &Option<T>, flag: &str, op: &str) -> Result<T, Failure> {
    v.clone().ok_or_else(|| Failure::usage(format!("--op {op} needs --{flag}")))
}

fn one_based(v: usize, flag: &str) -> Result<usize, Failure> {
    v.checked_sub(1).ok_or_else(|| Failure::usage(format!("--{flag} is 1-based")))
}

fn word_arg(s: &str, flag: &str) -> Result<Word, Failure> {
    Word::parse(s).map_err(|e| Failure::usage(format!("--{flag}: {e}")))
}

fn pres_tietze(args: &TietzeArgs, json: bool, out: &mut String) -> CliResult {
    let p = in_file(&args.file, parse_presentation(&read(&args.file)?))?.presentation;
    let next: Presentation = match args.op {
        TietzeOp::T1 => p.tietze_t1(&word_arg(&need(&args.x, "x", "T1")?, "x")?)?,
        TietzeOp::T1Inv => {
            let c = need(&args.generator, "generator", "T1inv")?;
            if !c.is_ascii_lowercase() || (c as usize - 'a' as usize) >= ALPHABET_SIZE {
                return Err(Failure::usage("--generator must be a lowercase letter"));
            }
            let rel = one_based(need(&args.rel, "rel", "T1inv")?, "rel")?;
            p.tietze_t1_inverse(c as usize - 'a' as usize, rel)?
        }
        TietzeOp::S1 => {
            let i = one_based(need(&args.i, "i", "S1")?, "i")?;
            let j = one_based(need(&args.j, "j", "S1")?, "j")?;
            let sign = match args.sign.as_deref().unwrap_or("+") {
                "+" => 1,
                "-" => -1,
                other => return Err(Failure::usage(format!("--sign must be + or -, got {other:?}"))),
            };
            let w = word_arg(args.w.as_deref().unwrap_or("-"), "w")?;
            p.tietze_s1(i, j, sign, &w)?
        }
        TietzeOp::S2 => p.tietze_s2(args.rel.map(|r| one_based(r, "rel")).transpose()?)?,
    };
    if json {
        emit_json(out, &json!({ "presentation": next }));
    } else {
        out.push_str(&write_presentation(&next, None));
    }
    Ok(EXIT_OK)
}

fn diag_build(file: &Path, output: Option<&Path>, json: bool, out: &mut String) -> CliResult {
    let parsed = in_file(file, parse_presentation(&read(file)?))?;
    let p = &parsed.presentation;
    // only the parity of a framing survives normalization
    let framings: Vec<i64> = match &parsed.framings {
        Some(f) => f.iter().map(|x| x.rem_euclid(2)).collect(),
        None => vec![0; p.num_relators()],
    };
    let d = NormalFormDiagram::from_presentation(p, &framings)?;
    let text = write_diagram(&d);
    match output {
        Some(path) => {
            write_file(path, &text)?;
            if json {
                emit_json(out, &json!({ "diagram": d }));
            } else {
                writeln!(out, "{}", render_diagram_text(&d)).unwrap();
            }
        }
        None if json => emit_json(out, &json!({ "diagram": d })),
        None => out.push_str(&text),
    }
    Ok(EXIT_OK)
}

fn diag_invariants(file: &Path, groups: &GroupArgs, json: bool, out: &mut String) -> CliResult {
    let d = load_diagram(file)?;
    let groups = load_groups(groups)?;
    let chi = d.euler_characteristic();
    let sigma = d.signature()?;
    let one_type = d.normal_one_type()?;
    let h1 = h1_invariants(&one_type.presentation);
    let counts: Vec<(String, u64)> = groups
        .iter()
        .map(|g| (g.name().to_string(), hom_count(&one_type.presentation, g)))
        .collect();
    if json {
        let counts: Vec<_> = counts.iter().map(|(g, c)| json!({ "group": g, "count": c })).collect();
        emit_json(
            out,
            &json!({
                "euler_characteristic": chi,
                "signature": sigma,
                "h1": h1,
                "spin": one_type.spin,
                "w_class": one_type.w_class,
                "presentation": one_type.presentation,
                "hom_counts": counts,
            }),
        );
    } else {
        let spin = if one_type.spin { "yes" } else { "no" };
        writeln!(out, "chi={chi} sigma={sigma} H1={h1} spin={spin}").unwrap();
        writeln!(out, "pi1={}", one_type.presentation).unwrap();
        writeln!(out, "w_class={}", one_type.w_class).unwrap();
        let counts: Vec<String> = counts.iter().map(|(g, c)| format!("{g}={c}")).collect();
        writeln!(out, "hom_counts {}", counts.join(" ")).unwrap();
    }
    Ok(EXIT_OK)
}

fn moves_apply(diagram: &Path, certificate: &Path, json: bool, out: &mut String) -> CliResult {
    let d = load_diagram(diagram)?;
    let cert = in_file(certificate, parse_certificate(&read(certificate)?))?;
    let start = stabilize(&d, cert.left_stabilizations);
    let end = apply_moves(&start, &cert.moves).map_err(|e| Failure::data(e.to_string()))?;
    if json {
        emit_json(out, &json!({ "diagram": end }));
    } else {
        out.push_str(&write_diagram(&end));
    }
    Ok(EXIT_OK)
}

fn surgery_run(handles: usize, loops: &[String], parity: &[u8], json: bool, out: &mut String) -> CliResult {
    if loops.len() != parity.len() {
        return Err(Failure::usage(format!(
            "{} --loop values but {} --parity values",
            loops.len(),
            parity.len()
        )));
    }
    if handles > ALPHABET_SIZE {
        return Err(Failure::usage(format!("at most {ALPHABET_SIZE} 1-handles")));
    }
    let mut d = NormalFormDiagram::one_handles_only(handles);
    for (l, &p) in loops.iter().zip(parity) {
        d = surgery_on_loop(&d, &word_arg(l, "loop")?, p)?;
    }
    if json {
        emit_json(out, &json!({ "diagram": d }));
    } else {
        out.push_str(&write_diagram(&d));
    }
    Ok(EXIT_OK)
}

fn classify_decide(args: &DecideArgs, json: bool, out: &mut String) -> CliResult {
    let d1 = load_diagram(&args.d1)?;
    let d2 = load_diagram(&args.d2)?;
    let path = match &args.path {
        Some(p) => Some(in_file(p, parse_path(&read(p)?))?),
        None => None,
    };
    let defaults = SearchConfig::default();
    let options = DecideOptions {
        search: SearchConfig {
            depth: args.search_depth.unwrap_or(defaults.depth),
            word_bound: args.word_bound.unwrap_or(defaults.word_bound),
            budget: args.budget.unwrap_or(defaults.budget),
        },
        groups: load_groups(&args.groups)?,
    };
    let verdict = stable_diffeo_decide(&d1, &d2, path.as_ref(), &options)?;
    if let (Some(target), Verdict::StablyDiffeomorphic { certificate, .. }) = (&args.certificate, &verdict) {
        write_file(target, &write_certificate(certificate))?;
    }
    if json {
        emit_json(out, &json!(verdict));
    } else {
        match &verdict {
            Verdict::StablyDiffeomorphic { certificate, path } => {
                out.push_str("verdict: StablyDiffeomorphic\n");
                writeln!(out, "path: {} steps", path.len()).unwrap();
                out.push_str(&write_path(path));
                writeln!(out, "certificate: {} moves", certificate.moves.len()).unwrap();
                out.push_str(&write_certificate(certificate));
            }
            Verdict::DistinctInvariant { witnesses } => {
                out.push_str("verdict: DistinctInvariant\n");
                for w in witnesses {
                    writeln!(out, "{}: {} vs {}", w.name, w.left, w.right).unwrap();
                }
            }
            Verdict::NotDetermined { reason } => {
                out.push_str("verdict: NotDetermined\n");
                writeln!(out, "reason: {reason}").unwrap();
            }
        }
    }
    Ok(verdict.exit_code())
}

fn cert_verify(d1: &Path, d2: &Path, certificate: &Path, json: bool, out: &mut String) -> CliResult {
    let source = load_diagram(d1)?;
    let target = load_diagram(d2)?;
    let cert = in_file(certificate, parse_certificate(&read(certificate)?))?;
    let result = replay(&source, &cert, &target);
    if json {
        let (failing, reason) = match &result {
            Ok(()) => (None, None),
            Err(e) => (e.move_index().map(|i| i + 1), Some(e.to_string())),
        };
        emit_json(out, &json!({ "verified": result.is_ok(), "failing_move": failing, "reason": reason }));
    } else {
        match &result {
            Ok(()) => writeln!(
                out,
                "verified: {} moves, k={} l={}",
                cert.moves.len(),
                cert.left_stabilizations,
                cert.right_stabilizations
            )
            .unwrap(),
            Err(ReplayError::Rejected { index, source }) => {
                writeln!(out, "rejected at move {}: {source}", index + 1).unwrap()
            }
            Err(e @ ReplayError::Mismatch { .. }) => writeln!(out, "mismatch: {e}").unwrap(),
        }
    }
    Ok(if result.is_ok() { EXIT_OK } else { EXIT_REJECTED })
}
