//! Command-line driver.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use termlat_core::oracle::MAX_SPACE;
use termlat_core::*;

use crate::report::Report;
use crate::sigfile::load_signature_file;

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Exit code for a negative answer (clash, zero degree, no match).
pub const EXIT_FAIL: i32 = 1;
/// Exit code for usage, parse and signature errors.
pub const EXIT_ERROR: i32 = 2;
/// Exit code for a failed `--verify` re-check.
pub const EXIT_VERIFY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "termlat", version, about = "Crisp and fuzzy unification and generalization of first-order terms")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// Similarity signature file.
    #[arg(long, global = true, env = "TERMLAT_SIG", value_name = "FILE")]
    sig: Option<PathBuf>,

    /// Rule set; defaults to full with a signature and crisp without.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,

    /// T-norm, overriding the signature file header.
    #[arg(long, global = true, value_enum)]
    tnorm: Option<TNormArg>,

    /// Allow cyclic bindings.
    #[arg(long, global = true)]
    no_occurs_check: bool,

    /// Print the derivation.
    #[arg(long, global = true)]
    trace: bool,

    /// JSON output.
    #[arg(long, global = true)]
    json: bool,

    /// Re-check results with the brute-force oracle.
    #[arg(long, global = true)]
    verify: bool,

    /// Reject a name used at two arities within one problem.
    #[arg(long, global = true)]
    strict_arity: bool,

    /// Run problems from FILE, one `COMMAND<TAB>TERM1<TAB>TERM2` per line.
    #[arg(long, global = true, value_name = "FILE")]
    batch: Option<PathBuf>,

    /// Warn about min-transitivity violations when checking a signature.
    #[arg(long, global = true)]
    check_transitive: bool,

    /// Variables shared by both generalization inputs.
    #[arg(long, global = true, value_enum, default_value_t = SharedVarsArg::Keep)]
    shared_vars: SharedVarsArg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Unify two terms.
    Unify { t1: String, t2: String },
    /// Generalize (anti-unify) two terms.
    Generalize { t1: String, t2: String },
    /// Similarity degree of two terms.
    Similarity { t1: String, t2: String },
    /// Does GENERAL subsume SPECIFIC?
    Subsumes { general: String, specific: String },
    /// Validate a signature file (defaults to --sig).
    CheckSig { file: Option<PathBuf> },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Crisp,
    Weak,
    Full,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TNormArg {
    Min,
    Product,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SharedVarsArg {
    Keep,
    Rename,
    Reject,
}

// A problem-level error: message and exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn error(message: impl Into<String>) -> Self {
        Failure { code: EXIT_ERROR, message: message.into() }
    }

    fn verify(message: impl Into<String>) -> Self {
        Failure { code: EXIT_VERIFY, message: format!("verification failed: {}", message.into()) }
    }
}

struct Session {
    sig: SimilaritySignature,
    mode: ModeArg,
    occurs_check: bool,
    verify: bool,
    strict_arity: bool,
    shared_vars: SharedVars,
}

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match (&cli.command, &cli.batch) {
        (Some(_), Some(_)) => {
            let _ = writeln!(err, "error: give either a command or --batch, not both");
            EXIT_ERROR
        }
        (None, None) => {
            let _ = writeln!(err, "error: no command given; try --help");
            EXIT_ERROR
        }
        (Some(Command::CheckSig { file }), None) => check_sig(&cli, file.as_deref(), out, err),
        (Some(command), None) => {
            let session = match Session::new(&cli) {
                Ok(s) => s,
                Err(f) => return report_failure(f, err),
            };
            let (name, t1, t2) = match command {
                Command::Unify { t1, t2 } => ("unify", t1, t2),
                Command::Generalize { t1, t2 } => ("generalize", t1, t2),
                Command::Similarity { t1, t2 } => ("similarity", t1, t2),
                Command::Subsumes { general, specific } => ("subsumes", general, specific),
                Command::CheckSig { .. } => unreachable!(),
            };
            match session.solve(name, t1, t2) {
                Ok(report) => {
                    let _ = if cli.json {
                        writeln!(out, "{}", report.to_json())
                    } else {
                        write!(out, "{}", report.to_text(cli.trace))
                    };
                    if report.success {
                        EXIT_OK
                    } else {
                        EXIT_FAIL
                    }
                }
                Err(f) => report_failure(f, err),
            }
        }
        (None, Some(path)) => {
            let session = match Session::new(&cli) {
                Ok(s) => s,
                Err(f) => return report_failure(f, err),
            };
            run_batch(&session, path, cli.json, out, err)
        }
    }
}

fn report_failure(f: Failure, err: &mut dyn Write) -> i32 {
    let _ = writeln!(err, "error: {}", f.message);
    f.code
}

fn load_sig(path: &Path, tnorm: Option<TNormArg>) -> Result<SimilaritySignature, Failure> {
    let sig = load_signature_file(path).map_err(|e| Failure::error(e.to_string()))?;
    Ok(match tnorm {
        Some(TNormArg::Min) => sig.with_tnorm(TNorm::Min),
        Some(TNormArg::Product) => sig.with_tnorm(TNorm::Product),
        None => sig,
    })
}

fn check_sig(cli: &Cli, file: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let Some(path) = file.or(cli.sig.as_deref()) else {
        let _ = writeln!(err, "error: check-sig needs a FILE or --sig");
        return EXIT_ERROR;
    };
    let sig = match load_sig(path, cli.tnorm) {
        Ok(sig) => sig,
        Err(f) => return report_failure(f, err),
    };
    let violations = if cli.check_transitive { sig.transitivity_violations() } else { Vec::new() };
    for (f, g, h) in &violations {
        let _ = writeln!(
            err,
            "warning: not min-transitive: {f} ~ {g} ({}), {g} ~ {h} ({}), but {f} ~ {h} ({})",
            sig.degree(f, g),
            sig.degree(g, h),
            sig.degree(f, h)
        );
    }
    let entries: Vec<String> = sig
        .entries()
        .iter()
        .map(|e| {
            let pairs: Vec<String> = e.mapping().pairs().map(|(i, j)| format!("{i}->{j}")).collect();
            let mapping = if e.mapping().is_empty() { String::new() } else { format!(" [{}]", pairs.join(", ")) };
            format!("sim {} {} : {}{}", e.lo(), e.hi(), e.degree(), mapping)
        })
        .collect();
    let _ = if cli.json {
        let v: Vec<_> = violations.iter().map(|(f, g, h)| vec![f.to_string(), g.to_string(), h.to_string()]).collect();
        writeln!(
            out,
            "{}",
            json!({
                "status": "VALID",
                "tnorm": sig.tnorm().name(),
                "entries": entries,
                "transitivity_violations": v,
            })
        )
    } else {
        writeln!(out, "tnorm {}", sig.tnorm().name())
            .and_then(|_| entries.iter().try_for_each(|e| writeln!(out, "{e}")))
            .and_then(|_| writeln!(out, "valid: {} entries", entries.len()))
    };
    EXIT_OK
}

fn run_batch(session: &Session, path: &Path, json_out: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
            return EXIT_ERROR;
        }
    };
    let (mut ok, mut fail, mut errors) = (0, 0, 0);
    for (i, line) in text.lines().enumerate() {
        let number = i + 1;
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let result = match fields.as_slice() {
            [command, t1, t2] => session.solve(command.trim(), t1, t2),
            _ => Err(Failure::error("expected COMMAND<TAB>TERM1<TAB>TERM2")),
        };
        match result {
            Ok(report) => {
                if report.success {
                    ok += 1;
                } else {
                    fail += 1;
                }
                let _ = if json_out {
                    let mut v = report.to_json();
                    v["line"] = json!(number);
                    writeln!(out, "{v}")
                } else {
                    writeln!(out, "{number}: {}", report.to_line())
                };
            }
            Err(f) => {
                errors += 1;
                let _ = writeln!(err, "line {number}: error: {}", f.message);
                let _ = if json_out {
                    writeln!(out, "{}", json!({ "line": number, "status": "ERROR", "error": f.message }))
                } else {
                    writeln!(out, "{number}: ERROR")
                };
            }
        }
    }
    let _ = writeln!(out, "ok={ok} fail={fail} err={errors}");
    if errors == 0 {
        EXIT_OK
    } else {
        EXIT_ERROR
    }
}

impl Session {
    fn new(cli: &Cli) -> Result<Self, Failure> {
        let sig = match &cli.sig {
            Some(path) => load_sig(path, cli.tnorm)?,
            None => SimilaritySignature::new(match cli.tnorm {
                Some(TNormArg::Product) => TNorm::Product,
                _ => TNorm::Min,
            }),
        };
        let mode = cli.mode.unwrap_or(if cli.sig.is_some() { ModeArg::Full } else { ModeArg::Crisp });
        Ok(Session {
            sig,
            mode,
            occurs_check: !cli.no_occurs_check,
            verify: cli.verify,
            strict_arity: cli.strict_arity,
            shared_vars: match cli.shared_vars {
                SharedVarsArg::Keep => SharedVars::Keep,
                SharedVarsArg::Rename => SharedVars::Rename,
                SharedVarsArg::Reject => SharedVars::Reject,
            },
        })
    }

    fn parse(&self, t1: &str, t2: &str) -> Result<(Term, Term), Failure> {
        let opts = ParseOptions { strict_arity: false, allow_reserved: false };
        let a = parse_term_with(t1.trim(), opts).map_err(|e| Failure::error(format!("term 1: {e}")))?;
        let b = parse_term_with(t2.trim(), opts).map_err(|e| Failure::error(format!("term 2: {e}")))?;
        if self.strict_arity {
            let strict = ParseOptions { strict_arity: true, ..opts };
            parse_terms(&[t1.trim(), t2.trim()], strict).map_err(|e| Failure::error(e.to_string()))?;
        }
        Ok((a, b))
    }

    fn unify_config(&self) -> UnifyConfig<'_> {
        let cfg = match self.mode {
            ModeArg::Crisp => UnifyConfig::crisp(),
            ModeArg::Weak => UnifyConfig::weak(&self.sig),
            ModeArg::Full => UnifyConfig::full(&self.sig),
        };
        cfg.with_occurs_check(self.occurs_check)
    }

    fn gen_config(&self) -> GenConfig<'_> {
        let cfg = match self.mode {
            ModeArg::Crisp => GenConfig::crisp(),
            ModeArg::Weak => GenConfig::functor_weak(&self.sig),
            ModeArg::Full => GenConfig::full(&self.sig),
        };
        cfg.with_shared_vars(self.shared_vars)
    }

    fn similarity_mode(&self) -> SimilarityMode {
        match self.mode {
            ModeArg::Full => SimilarityMode::Mapped,
            _ => SimilarityMode::EqualArity,
        }
    }

    fn solve(&self, command: &str, t1: &str, t2: &str) -> Result<Report, Failure> {
        let (a, b) = self.parse(t1, t2)?;
        let report = match command {
            "unify" => {
                let o = unify(&a, &b, &self.unify_config()).map_err(|e| Failure::error(e.to_string()))?;
                if self.verify {
                    self.verify_unify(&a, &b, &o)?;
                }
                Report::unify(&o)
            }
            "generalize" => {
                let r = generalize(&a, &b, &self.gen_config()).map_err(|e| Failure::error(e.to_string()))?;
                if self.verify {
                    self.verify_generalize(&r)?;
                }
                Report::generalize(&r)
            }
            "similarity" => {
                let sig = if matches!(self.mode, ModeArg::Crisp) { SimilaritySignature::empty() } else { &self.sig };
                let d = term_similarity(sig, &a, &b, self.similarity_mode());
                if self.verify {
                    let n = naive_similarity(sig, &a, &b, self.similarity_mode());
                    if (n.value() - d.value()).abs() > 1e-9 {
                        return Err(Failure::verify(format!("direct evaluation gives {n}, engine {d}")));
                    }
                }
                Report::similarity(d)
            }
            "subsumes" => {
                let m = subsumes(&a, &b);
                if self.verify {
                    if let Some(m) = &m {
                        if m.apply(&a) != b {
                            return Err(Failure::verify(format!("{m} does not map {a} to {b}")));
                        }
                    } else {
                        let lgg = generalize(&a, &b, &GenConfig::crisp()).map_err(|e| Failure::error(e.to_string()))?;
                        if variant_equal(&lgg.generalizer, &a) {
                            return Err(Failure::verify(format!("{a} generalizes {b}")));
                        }
                    }
                }
                Report::subsumes(m.as_ref())
            }
            other => {
                return Err(Failure::error(format!(
                    "unknown command `{other}`; expected unify, generalize, similarity or subsumes"
                )))
            }
        };
        Ok(report)
    }

    fn verify_unify(&self, a: &Term, b: &Term, o: &UnifyOutcome) -> Result<(), Failure> {
        let cfg = self.unify_config();
        if o.is_solved() {
            let (ia, ib) = (o.substitution.apply(a), o.substitution.apply(b));
            if cfg.mode == UnifyMode::Crisp {
                if ia != ib {
                    return Err(Failure::verify(format!("instances differ: {ia} and {ib}")));
                }
            } else {
                let d = naive_similarity(&self.sig, &ia, &ib, cfg.mode.similarity_mode());
                let exact = self.sig.tnorm() == TNorm::Min;
                if (exact && (d.value() - o.degree.value()).abs() > 1e-9) || d.is_zero() {
                    return Err(Failure::verify(format!("instances are similar to degree {d}, reported {}", o.degree)));
                }
            }
        } else if cfg.mode == UnifyMode::Crisp && cfg.occurs_check {
            // search for a ground unifier over the problem's own symbols
            let mut symbols = Vec::new();
            collect_symbols(a, &mut symbols);
            collect_symbols(b, &mut symbols);
            if !symbols.iter().any(Symbol::is_constant) {
                symbols.push(Symbol::new("c", 0));
            }
            let range = TermSpace::ground(symbols, 2);
            match oracle_unifiers(a, b, &range) {
                Ok(found) if !found.is_empty() => {
                    return Err(Failure::verify(format!("oracle found unifier {}", found[0])));
                }
                Ok(_) => {}
                Err(e) => return Err(Failure::error(format!("cannot verify: {e} (limit {MAX_SPACE})"))),
            }
        }
        Ok(())
    }

    fn verify_generalize(&self, r: &GenResult) -> Result<(), Failure> {
        let (a, b) = &r.inputs;
        let mode = self.gen_config().mode;
        for (sigma, input) in [(&r.sigma1, a), (&r.sigma2, b)] {
            let instance = sigma.apply(&r.generalizer);
            if mode == GenMode::Crisp {
                if instance != *input {
                    return Err(Failure::verify(format!("{instance} differs from {input}")));
                }
            } else {
                let d = naive_similarity(&self.sig, &instance, input, mode.similarity_mode());
                if d < r.degree {
                    return Err(Failure::verify(format!("{instance} ~ {input} only to degree {d}")));
                }
            }
        }
        Ok(())
    }
}

fn collect_symbols(t: &Term, out: &mut Vec<Symbol>) {
    if let Term::App(f, args) = t {
        if !out.contains(f) {
            out.push(f.clone());
        }
        args.iter().for_each(|a| collect_symbols(a, out));
    }
}
