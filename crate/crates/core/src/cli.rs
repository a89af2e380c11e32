//! Command-line front end.
//!
//! Exit codes: 0 pass, 2 axiom or verification failure, 3 parse or arity
//! error, 4 internal error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::demo;
use crate::error::Error;
use crate::io;
use crate::linalg::GaussMatrix;
use crate::matroid::Matroid;
use crate::phirotope::{self, Phirotope};
use crate::reconstruct;
use crate::set::ElemSet;
use crate::signature::{self, PhasedSignature, SignatureKind, WeakMapFailure};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Cap on the number of failures listed by `check phirotope`.
const MAX_LISTED: usize = 64;

#[derive(Parser, Debug)]
#[command(name = "cmatroid", version, about = "Exact computations with complex matroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Phirotope, circuits and cocircuits of a matrix's row space.
    FromMatrix {
        file: PathBuf,
        /// Output prefix; defaults to the input path without extension.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify an axiom system.
    Check {
        kind: CheckKind,
        /// One file, or circuits then cocircuits for `dualpair`.
        #[arg(required = true, num_args = 1..=2)]
        files: Vec<PathBuf>,
    },
    /// Dual phirotope, or the orthogonal signature of a circuit or cocircuit file.
    Dual {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Deletion and contraction, with comma-separated labels.
    Minor {
        file: PathBuf,
        #[arg(long)]
        delete: Option<String>,
        #[arg(long)]
        contract: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Phased circuits of a matrix or phirotope.
    Circuits {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Phased cocircuits of a matrix, phirotope or circuit file.
    Cocircuits {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebuild a phirotope from circuits or cocircuits; on a phirotope, run the full round trip.
    Reconstruct {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether the first phirotope weak-maps to the second.
    Weakmap { first: PathBuf, second: PathBuf },
    /// Cross ratio `φ(a,C) φ(b,D) / (φ(b,C) φ(a,D))`, or all of them.
    Crossratio {
        file: PathBuf,
        a: Option<usize>,
        b: Option<usize>,
        #[arg(long, default_value = "")]
        c: String,
        #[arg(long, default_value = "")]
        d: String,
        #[arg(long)]
        all: bool,
    },
    /// Reproducible counterexamples.
    Demo {
        #[command(subcommand)]
        which: DemoCommand,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckKind {
    Phirotope,
    Circuits,
    Dualpair,
}

#[derive(Subcommand, Debug)]
enum DemoCommand {
    /// Two row spaces with equal phirotopes but different realizable phase vectors.
    NoVectorAxioms {
        #[arg(long)]
        swap: bool,
        #[arg(long)]
        zero_target: bool,
    },
    /// Circuits of a 4x7 matrix avoiding element 1.
    Elimination {
        #[arg(long)]
        permute: bool,
    },
}

#[derive(Debug)]
enum CliError {
    Io(PathBuf, std::io::Error),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult = std::result::Result<i32, CliError>;

/// Exit status for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Arity(_) | Error::GroundTooLarge(_) | Error::OutsideGround { .. } => EXIT_PARSE,
        Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_FAIL,
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_PARSE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(CliError::Io(path, e)) => {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            EXIT_PARSE
        }
        Err(CliError::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

enum Input {
    Matrix(GaussMatrix),
    Phirotope(Phirotope),
    Signature(PhasedSignature),
}

fn read(path: &Path) -> std::result::Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

/// Sniffs the file type from its first non-comment token.
fn load(path: &Path) -> std::result::Result<Input, CliError> {
    let text = read(path)?;
    let head = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split_whitespace().next())
        .unwrap_or("");
    Ok(match head {
        "phirotope" => Input::Phirotope(io::parse_phirotope(&text)?),
        "circuits" | "cocircuits" => Input::Signature(io::parse_signature(&text, SignatureKind::Circuits, None)?),
        _ if head.contains(':') => Input::Signature(io::parse_signature(&text, SignatureKind::Circuits, None)?),
        _ => Input::Matrix(io::parse_matrix(&text)?),
    })
}

fn load_phirotope(path: &Path) -> std::result::Result<Phirotope, CliError> {
    match load(path)? {
        Input::Phirotope(p) => Ok(p),
        Input::Matrix(m) => Ok(Phirotope::from_matrix(&m)?),
        Input::Signature(_) => Err(Error::Parse {
            line: 1,
            msg: format!("{} holds a signature, expected a phirotope or matrix", path.display()),
        }
        .into()),
    }
}

fn load_signature(path: &Path, kind: SignatureKind) -> std::result::Result<PhasedSignature, CliError> {
    let text = read(path)?;
    Ok(io::parse_signature(&text, kind, None)?)
}

/// Underlying matroid of a signature: circuits directly, cocircuits through the dual.
pub fn signature_matroid(sig: &PhasedSignature) -> crate::Result<Matroid> {
    let m = Matroid::from_circuits(sig.ground(), &sig.supports())?;
    Ok(match sig.kind() {
        SignatureKind::Circuits => m,
        SignatureKind::Cocircuits => m.dual(),
    })
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> std::result::Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(p.to_path_buf(), e)),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(PathBuf::from("<stdout>"), e)),
    }
}

fn say(out: &mut dyn Write, line: impl AsRef<str>) -> std::result::Result<(), CliError> {
    emit(out, None, &format!("{}\n", line.as_ref()))
}

/// Comma-separated one-based labels.
fn parse_labels(list: &str) -> crate::Result<Vec<usize>> {
    list.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(0) | Err(_) => Err(Error::Parse {
                line: 0,
                msg: format!("bad element label `{t}`"),
            }),
            Ok(v) if v > crate::set::MAX_GROUND => Err(Error::GroundTooLarge(v)),
            Ok(v) => Ok(v - 1),
        })
        .collect()
}

fn label_set(list: &Option<String>, ground: ElemSet) -> crate::Result<ElemSet> {
    let set = match list {
        Some(s) => ElemSet::from_elems(parse_labels(s)?),
        None => ElemSet::EMPTY,
    };
    if !set.is_subset(ground) {
        return Err(Error::OutsideGround { set, ground });
    }
    Ok(set)
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CliResult {
    match cmd {
        Command::FromMatrix { file, out: prefix } => from_matrix(&file, prefix, out),
        Command::Check { kind, files } => check(kind, &files, out),
        Command::Dual { file, out: dest } => {
            let text = match load(&file)? {
                Input::Matrix(m) => phirotope::dual_phirotope(&Phirotope::from_matrix(&m)?).to_string(),
                Input::Phirotope(p) => phirotope::dual_phirotope(&p).to_string(),
                Input::Signature(s) => signature::min_support_orthogonal(&s)?.to_string(),
            };
            emit(out, dest.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
        Command::Minor {
            file,
            delete,
            contract,
            out: dest,
        } => {
            let text = match load(&file)? {
                Input::Signature(s) => {
                    let del = label_set(&delete, s.ground())?;
                    let con = label_set(&contract, s.ground())?;
                    check_disjoint(del, con)?;
                    signature::contract_signature(&signature::delete_signature(&s, del)?, con)?.to_string()
                }
                other => {
                    let p = match other {
                        Input::Matrix(m) => Phirotope::from_matrix(&m)?,
                        Input::Phirotope(p) => p,
                        Input::Signature(_) => unreachable!(),
                    };
                    let del = label_set(&delete, p.ground())?;
                    let con = label_set(&contract, p.ground())?;
                    check_disjoint(del, con)?;
                    let p = if del.is_empty() { p } else { phirotope::delete_phirotope(&p, del)? };
                    let p = if con.is_empty() { p } else { phirotope::contract_phirotope(&p, con)? };
                    p.to_string()
                }
            };
            emit(out, dest.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
        Command::Circuits { file, out: dest } => {
            let p = load_phirotope(&file)?;
            emit(out, dest.as_deref(), &signature::circuits_from_phirotope(&p).to_string())?;
            Ok(EXIT_OK)
        }
        Command::Cocircuits { file, out: dest } => {
            let sig = match load(&file)? {
                Input::Matrix(m) => signature::cocircuits_from_phirotope(&Phirotope::from_matrix(&m)?),
                Input::Phirotope(p) => signature::cocircuits_from_phirotope(&p),
                Input::Signature(s) if s.kind() == SignatureKind::Circuits => {
                    signature::cocircuit_signature_from_circuits(&signature_matroid(&s)?, &s)?
                }
                Input::Signature(s) => s,
            };
            emit(out, dest.as_deref(), &sig.to_string())?;
            Ok(EXIT_OK)
        }
        Command::Reconstruct { file, out: dest } => reconstruct_cmd(&file, dest.as_deref(), out),
        Command::Weakmap { first, second } => weakmap(&first, &second, out),
        Command::Crossratio {
            file,
            a,
            b,
            c,
            d,
            all,
        } => crossratio(&file, a, b, &c, &d, all, out),
        Command::Demo { which } => match which {
            DemoCommand::NoVectorAxioms { swap, zero_target } => {
                let r = demo::no_vector_axioms(swap, zero_target)?;
                emit(out, None, &r.render())?;
                Ok(EXIT_OK)
            }
            DemoCommand::Elimination { permute } => {
                let r = demo::elimination(permute)?;
                emit(out, None, &r.render())?;
                Ok(if r.x_in_kernel && r.y_in_kernel { EXIT_OK } else { EXIT_INTERNAL })
            }
        },
    }
}

fn check_disjoint(del: ElemSet, con: ElemSet) -> crate::Result<()> {
    let both = del.intersection(con);
    if both.is_empty() {
        Ok(())
    } else {
        Err(Error::Arity(format!("{both} is both deleted and contracted")))
    }
}

fn from_matrix(file: &Path, prefix: Option<PathBuf>, out: &mut dyn Write) -> CliResult {
    let m = io::parse_matrix(&read(file)?)?;
    let p = Phirotope::from_matrix(&m)?;
    let c = signature::circuits_from_phirotope(&p);
    let d = signature::cocircuits_from_phirotope(&p);
    let prefix = prefix.unwrap_or_else(|| file.with_extension(""));
    let target = |ext: &str| {
        let mut s = prefix.clone().into_os_string();
        s.push(format!(".{ext}"));
        PathBuf::from(s)
    };
    let mat = p.underlying_matroid();
    say(out, format!("rank {} on {}", mat.rank(), mat.ground()))?;
    say(
        out,
        format!(
            "bases: {}, circuits: {}, cocircuits: {}, loops: {}",
            mat.bases().len(),
            c.len(),
            d.len(),
            mat.loops()
        ),
    )?;
    for (ext, text) in [("phirotope", p.to_string()), ("circuits", c.to_string()), ("cocircuits", d.to_string())] {
        let path = target(ext);
        emit(out, Some(&path), &text)?;
        say(out, format!("wrote {}", path.display()))?;
    }
    Ok(EXIT_OK)
}

fn check(kind: CheckKind, files: &[PathBuf], out: &mut dyn Write) -> CliResult {
    let want = if matches!(kind, CheckKind::Dualpair) { 2 } else { 1 };
    if files.len() != want {
        return Err(Error::Arity(format!("check expects {want} file(s), got {}", files.len())).into());
    }
    match kind {
        CheckKind::Phirotope => {
            let p = load_phirotope(&files[0])?;
            let failures: Vec<_> = p.gp_failures().collect();
            if failures.is_empty() {
                say(out, "phirotope: pass")?;
                return Ok(EXIT_OK);
            }
            for w in failures.iter().take(MAX_LISTED) {
                say(out, format!("GP failure: {w}"))?;
            }
            if failures.len() > MAX_LISTED {
                say(out, format!("... {} more", failures.len() - MAX_LISTED))?;
            }
            say(out, format!("phirotope: fail, {} GP failures", failures.len()))?;
            Ok(EXIT_FAIL)
        }
        CheckKind::Circuits => {
            let c = load_signature(&files[0], SignatureKind::Circuits)?;
            let m = signature_matroid(&c.clone().with_kind(SignatureKind::Circuits))?;
            match signature::verify_circuit_axioms(&m, &c) {
                Ok(()) => {
                    say(out, "circuits: pass")?;
                    Ok(EXIT_OK)
                }
                Err(w) => {
                    say(out, format!("circuits: fail: {w}"))?;
                    Ok(EXIT_FAIL)
                }
            }
        }
        CheckKind::Dualpair => {
            let c = load_signature(&files[0], SignatureKind::Circuits)?;
            let d = load_signature(&files[1], SignatureKind::Cocircuits)?;
            let m = signature_matroid(&c.clone().with_kind(SignatureKind::Circuits))?;
            match signature::verify_dual_pair(&m, &c, &d) {
                Ok(()) => {
                    say(out, "dual pair: pass")?;
                    Ok(EXIT_OK)
                }
                Err(w) => {
                    say(out, format!("dual pair: fail: {w}"))?;
                    Ok(EXIT_FAIL)
                }
            }
        }
    }
}

fn reconstruct_cmd(file: &Path, dest: Option<&Path>, out: &mut dyn Write) -> CliResult {
    match load(file)? {
        Input::Signature(s) => {
            let m = signature_matroid(&s)?;
            let p = match s.kind() {
                SignatureKind::Circuits => reconstruct::reconstruct_phirotope(&m, &s)?,
                SignatureKind::Cocircuits => {
                    let dual = reconstruct::reconstruct_phirotope(&m.dual(), &s.with_kind(SignatureKind::Circuits))?;
                    phirotope::dual_phirotope(&dual)
                }
            };
            emit(out, dest, &p.to_string())?;
            Ok(EXIT_OK)
        }
        other => {
            let p = match other {
                Input::Matrix(m) => Phirotope::from_matrix(&m)?,
                Input::Phirotope(p) => p,
                Input::Signature(_) => unreachable!(),
            };
            match reconstruct::roundtrip_report(&p) {
                Ok(r) => {
                    if let Some(path) = dest {
                        emit(out, Some(path), &r.reconstructed.to_string())?;
                    }
                    say(out, r.to_string())?;
                    Ok(EXIT_OK)
                }
                Err(reconstruct::RoundtripFailure::Reconstruction(e)) if exit_code(&e) != EXIT_FAIL => Err(e.into()),
                Err(f) => {
                    say(out, format!("round trip: fail: {f}"))?;
                    Ok(EXIT_FAIL)
                }
            }
        }
    }
}

fn weakmap(first: &Path, second: &Path, out: &mut dyn Write) -> CliResult {
    let (a, b) = (load(first)?, load(second)?);
    if let (Input::Signature(c1), Input::Signature(c2)) = (&a, &b) {
        let yes = signature::weak_map_circuits(c1, c2);
        say(out, if yes { "weak map: yes" } else { "weak map: no" })?;
        return Ok(if yes { EXIT_OK } else { EXIT_FAIL });
    }
    let to_phi = |i: Input, path: &Path| -> std::result::Result<Phirotope, CliError> {
        match i {
            Input::Matrix(m) => Ok(Phirotope::from_matrix(&m)?),
            Input::Phirotope(p) => Ok(p),
            Input::Signature(_) => Err(Error::Parse {
                line: 1,
                msg: format!("{} holds a signature; pass two phirotopes or two signatures", path.display()),
            }
            .into()),
        }
    };
    let (p1, p2) = (to_phi(a, first)?, to_phi(b, second)?);
    match signature::weak_map_phirotope_unit(&p1, &p2) {
        Ok(c) => {
            say(out, format!("weak map: yes, c={c}"))?;
            Ok(EXIT_OK)
        }
        Err(f) => {
            let why = match f {
                WeakMapFailure::GroundMismatch => "ground sets differ".to_string(),
                WeakMapFailure::RankMismatch => "ranks differ".to_string(),
                WeakMapFailure::Blocking(b) => format!("blocking basis {b}"),
            };
            say(out, format!("weak map: no, {why}"))?;
            Ok(EXIT_FAIL)
        }
    }
}

fn crossratio(
    file: &Path,
    a: Option<usize>,
    b: Option<usize>,
    c: &str,
    d: &str,
    all: bool,
    out: &mut dyn Write,
) -> CliResult {
    let p = load_phirotope(file)?;
    let tuple = |v: &[usize]| v.iter().map(|e| (e + 1).to_string()).collect::<Vec<_>>().join(",");
    if all {
        for ((a, b, c, d), cr) in phirotope::all_cross_ratios(&p) {
            say(out, format!("[{},{} | {} | {}] = {cr}", a + 1, b + 1, tuple(&c), tuple(&d)))?;
        }
        return Ok(EXIT_OK);
    }
    let (Some(a), Some(b)) = (a, b) else {
        return Err(Error::Arity("crossratio needs elements a and b, or --all".into()).into());
    };
    let mut elems = parse_labels(&format!("{a},{b}"))?;
    let (cs, ds) = (parse_labels(c)?, parse_labels(d)?);
    if cs.len() + 1 != p.rank() || ds.len() + 1 != p.rank() {
        return Err(Error::Arity(format!("--c and --d need {} labels each", p.rank().saturating_sub(1))).into());
    }
    elems.extend(&cs);
    elems.extend(&ds);
    let used = ElemSet::from_elems(elems.iter().copied());
    if !used.is_subset(p.ground()) {
        return Err(Error::OutsideGround {
            set: used,
            ground: p.ground(),
        }
        .into());
    }
    match phirotope::cross_ratio(&p, elems[0], elems[1], &cs, &ds) {
        Some(cr) => say(out, format!("[{},{} | {} | {}] = {cr}", a, b, tuple(&cs), tuple(&ds)))?,
        None => say(out, "undefined")?,
    }
    Ok(EXIT_OK)
}
