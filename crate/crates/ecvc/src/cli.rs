//! Command-line surface.
//!
//! Exit codes: 0 pass, 1 verification or containment failure, 2 usage or
//! input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ecvc_core::modular::{gamma0, sym2_lift};
use ecvc_core::{
    builtin_case, builtin_cases, fuzz_coxeter, fuzz_psi, search_vectors, verify_case, CheckOutcome, FanoCase,
    BUILTIN_NAMES,
};
use serde_json::json;

use crate::case_file::{case_to_json, load_case};
use crate::report_json::{report_json, report_text};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "ecvc", version, about = "Exact checks of exceptional-collection / vanishing-cycle monodromy data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the full certificate on built-in or file-supplied cases.
    Verify(VerifyArgs),
    /// Brute-force search for norm-2 vector tuples reproducing X + Xᵗ.
    Search(SearchArgs),
    /// Seeded property checks of the Coxeter and ψ identities.
    Fuzz(FuzzArgs),
    /// List built-in cases or export one as a case file.
    Cases {
        #[command(subcommand)]
        action: CasesAction,
    },
    /// Print the 3×3 symmetric-square lift of a Γ₀(N) element.
    Psi(PsiArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct CaseSelector {
    /// Built-in case: P3, Q, V5 or V22.
    #[arg(long)]
    case: Option<String>,
    /// Every built-in case.
    #[arg(long)]
    all: bool,
    /// JSON case file.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    select: CaseSelector,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "search_source")]
struct SearchSource {
    #[arg(long)]
    case: Option<String>,
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[command(flatten)]
    source: SearchSource,
    /// Coordinates range over [-bound, bound].
    #[arg(long, default_value_t = 25, allow_hyphen_values = true)]
    bound: i64,
    /// Let w₁ range over every norm-2 vector instead of the minimal one.
    #[arg(long)]
    no_pin: bool,
}

#[derive(Args, Debug)]
struct FuzzArgs {
    /// Random unitriangular matrices for the Coxeter identities.
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 8)]
    max_dim: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Levels for the ψ checks; repeat for several. Defaults to 2, 3, 5, 11.
    #[arg(long)]
    level: Vec<u64>,
    /// Random pairs per level for the ψ checks.
    #[arg(long, default_value_t = 500)]
    psi_trials: usize,
    /// Maximum word length of random Γ₀(N) elements.
    #[arg(long, default_value_t = 12)]
    word_len: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum CasesAction {
    List,
    Export {
        #[arg(long)]
        case: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct PsiArgs {
    #[arg(long)]
    level: u64,
    /// Entries a,b,c,d of [[a,b],[c,d]].
    #[arg(long, allow_hyphen_values = true)]
    matrix: String,
}

/// Usage or input error: message plus exit code 2.
struct UsageError(String);

fn builtin_or_err(name: &str) -> Result<FanoCase, UsageError> {
    builtin_case(name).ok_or_else(|| {
        UsageError(format!(
            "unknown case `{name}`; expected one of {}",
            BUILTIN_NAMES.join(", ")
        ))
    })
}

fn load_or_err(path: &std::path::Path) -> Result<FanoCase, UsageError> {
    load_case(path).map_err(|e| UsageError(format!("cannot load case file: {e}")))
}

fn wants_json(args: &[OsString]) -> bool {
    args.windows(2)
        .any(|w| w[0] == "--format" && w[1] == "json")
        || args.iter().any(|a| a == "--format=json")
}

fn emit_usage_error(msg: &str, json_mode: bool, err: &mut dyn Write, out: &mut dyn Write) -> i32 {
    if json_mode {
        let _ = writeln!(out, "{}", json!({ "error": msg, "exit_code": EXIT_USAGE }));
    } else {
        let _ = writeln!(err, "error: {msg}");
    }
    EXIT_USAGE
}

/// Parses `args` (including the program name) and runs the command, writing
/// to `out` and `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let json_mode = wants_json(&args);
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_PASS;
            }
            if json_mode {
                return emit_usage_error(e.to_string().trim(), true, err, out);
            }
            let _ = write!(err, "{e}");
            return EXIT_USAGE;
        }
    };
    let result = match cli.command {
        Command::Verify(a) => verify(a, out),
        Command::Search(a) => search(a, out),
        Command::Fuzz(a) => fuzz(a, out),
        Command::Cases { action } => cases(action, out),
        Command::Psi(a) => psi(a, out),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => emit_usage_error(&msg, json_mode, err, out),
    }
}

fn write_output(text: &str, path: Option<&PathBuf>, out: &mut dyn Write) -> Result<(), UsageError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| UsageError(format!("cannot write {}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| UsageError(format!("cannot write output: {e}"))),
    }
}

fn verify(args: VerifyArgs, out: &mut dyn Write) -> Result<i32, UsageError> {
    let sel = args.select;
    let (cases, many) = if sel.all {
        (builtin_cases(), true)
    } else if let Some(name) = sel.case {
        (vec![builtin_or_err(&name)?], false)
    } else if let Some(path) = sel.file {
        (vec![load_or_err(&path)?], false)
    } else {
        unreachable!("clap enforces one selector")
    };
    let reports: Vec<_> = cases.iter().map(verify_case).collect();
    let all_pass = reports.iter().all(|r| r.overall());
    let text = match args.format {
        Format::Json => {
            let docs: Vec<_> = reports.iter().zip(&cases).map(|(r, c)| report_json(r, c)).collect();
            let mut s = if many {
                serde_json::to_string_pretty(&docs)
            } else {
                serde_json::to_string_pretty(&docs[0])
            }
            .expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => reports.iter().map(report_text).collect(),
    };
    write_output(&text, args.out.as_ref(), out)?;
    Ok(if all_pass { EXIT_PASS } else { EXIT_FAIL })
}

fn search(args: SearchArgs, out: &mut dyn Write) -> Result<i32, UsageError> {
    if args.bound <= 0 {
        return Err(UsageError(format!("bound must be positive, got {}", args.bound)));
    }
    let case = match (args.source.case, args.source.file) {
        (Some(name), _) => builtin_or_err(&name)?,
        (None, Some(path)) => load_or_err(&path)?,
        (None, None) => unreachable!("clap enforces one source"),
    };
    let tuples = search_vectors(&case, args.bound, !args.no_pin);
    let mut text = String::new();
    for t in &tuples {
        text.push_str(&serde_json::to_string(t).expect("integers serialize"));
        text.push('\n');
    }
    write_output(&text, None, out)?;
    Ok(if tuples.contains(&case.v) { EXIT_PASS } else { EXIT_FAIL })
}

fn fuzz(args: FuzzArgs, out: &mut dyn Write) -> Result<i32, UsageError> {
    if args.trials == 0 || args.max_dim < 2 || args.psi_trials == 0 {
        return Err(UsageError("trials must be positive and max-dim at least 2".into()));
    }
    let levels = if args.level.is_empty() {
        vec![2, 3, 5, 11]
    } else {
        args.level
    };
    if levels.contains(&0) {
        return Err(UsageError("level must be positive".into()));
    }
    let mut outcomes: Vec<CheckOutcome> = vec![fuzz_coxeter(args.trials, args.max_dim, args.seed)];
    for n in levels {
        outcomes.push(fuzz_psi(args.psi_trials, n, args.word_len, args.seed));
    }
    let pass = outcomes.iter().all(|o| o.passed);
    let text = match args.format {
        Format::Text => outcomes
            .iter()
            .map(|o| match &o.witness {
                None => format!("PASS {}\n", o.label),
                Some(w) => format!("FAIL {}: {w}\n", o.label),
            })
            .collect(),
        Format::Json => {
            let items: Vec<_> = outcomes.iter().map(crate::report_json::CheckJson::from).collect();
            let mut s = serde_json::to_string_pretty(&json!({ "checks": items, "overall": pass }))
                .expect("serializes");
            s.push('\n');
            s
        }
    };
    write_output(&text, None, out)?;
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}

fn cases(action: CasesAction, out: &mut dyn Write) -> Result<i32, UsageError> {
    match action {
        CasesAction::List => {
            let text: String = builtin_cases()
                .iter()
                .map(|c| {
                    format!(
                        "{}\tN={}\td={}\t-K^3={}\t{}\n",
                        c.name,
                        c.level,
                        c.index,
                        c.minus_k_cubed,
                        c.collection.as_deref().unwrap_or("")
                    )
                })
                .collect();
            write_output(&text, None, out)?;
        }
        CasesAction::Export { case, out: path } => {
            let c = builtin_or_err(&case)?;
            write_output(&case_to_json(&c), path.as_ref(), out)?;
        }
    }
    Ok(EXIT_PASS)
}

fn psi(args: PsiArgs, out: &mut dyn Write) -> Result<i32, UsageError> {
    let entries: Vec<i64> = args
        .matrix
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| UsageError(format!("--matrix expects a,b,c,d integers: {e}")))?;
    let [a, b, c, d] = entries[..] else {
        return Err(UsageError(format!(
            "--matrix expects 4 entries, got {}",
            entries.len()
        )));
    };
    let g = gamma0(a, b, c, d, args.level).map_err(|e| UsageError(e.to_string()))?;
    write_output(&format!("{}\n", sym2_lift(&g).render()), None, out)?;
    Ok(EXIT_PASS)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("ecvc").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn psi_command() {
        let (code, out, _) = run_capture(&["psi", "--level", "11", "--matrix", "4,1,11,3"]);
        assert_eq!(code, 0);
        assert_eq!(out, "[[9,66,-11],[3,23,-4],[-11,-88,16]]\n");
        let (code, out, _) = run_capture(&["psi", "--level", "11", "--matrix", "1,0,0,1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "[[1,0,0],[0,1,0],[0,0,1]]\n");
    }

    #[test]
    fn psi_level_error() {
        let (code, _, err) = run_capture(&["psi", "--level", "11", "--matrix", "3,1,2,1"]);
        assert_eq!(code, 2);
        assert!(err.contains("level"), "{err}");
        let (code, _, err) = run_capture(&["psi", "--level", "2", "--matrix", "3,1,2,2"]);
        assert_eq!(code, 2);
        assert!(err.contains("determinant"), "{err}");
        let (code, _, _) = run_capture(&["psi", "--level", "2", "--matrix", "3,1,2"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn unknown_case_is_usage_error() {
        let (code, _, err) = run_capture(&["verify", "--case", "BOGUS"]);
        assert_eq!(code, 2);
        assert!(err.contains("BOGUS"));
    }

    #[test]
    fn unknown_case_json_mode_emits_json() {
        let (code, out, _) = run_capture(&["verify", "--case", "BOGUS", "--format", "json"]);
        assert_eq!(code, 2);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["exit_code"], 2);
    }

    #[test]
    fn conflicting_selectors_rejected() {
        let (code, _, _) = run_capture(&["verify", "--all", "--case", "V22"]);
        assert_eq!(code, 2);
        let (code, _, _) = run_capture(&["verify"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn nonpositive_bound_rejected() {
        assert_eq!(run_capture(&["search", "--case", "P3", "--bound", "0"]).0, 2);
        assert_eq!(run_capture(&["search", "--case", "P3", "--bound", "-3"]).0, 2);
    }

    #[test]
    fn cases_list_names_all_builtins() {
        let (code, out, _) = run_capture(&["cases", "list"]);
        assert_eq!(code, 0);
        let names: Vec<_> = out.lines().map(|l| l.split('\t').next().unwrap()).collect();
        assert_eq!(names, BUILTIN_NAMES);
    }

    #[test]
    fn cases_export_to_stdout() {
        let (code, out, _) = run_capture(&["cases", "export", "--case", "V5"]);
        assert_eq!(code, 0);
        assert_eq!(out, case_to_json(&builtin_case("V5").unwrap()));
    }
}
