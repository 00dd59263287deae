//! Command-line front end. [`run`] takes the argument list and the output
//! streams so it can be driven from tests; the `semires` binary only
//! forwards `std::env::args`.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 unsupported class or
//! embedding dimension, 3 internal verification failure.

mod scan;
mod selftest;

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::indispensability::{cross_validate_with, IndispensabilityError, Witness};
use crate::invariants::{
    closed_form_pf, default_truncation, hilbert_check, k_polynomial, pf_from_betti, InvariantsError,
};
use crate::presentation::{classify, Classification, PresentationError};
use crate::resolution::{resolve_classified, GradedResolution, ResolutionError};
use crate::semigroup::{NumericalSemigroup, SemigroupError};

pub use scan::{scan, ScanRecord, ScanSpec};
pub use selftest::{selftest, SelftestCheck};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_UNSUPPORTED: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

/// Comma-separated generator list, kept in the order given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generators(pub Vec<u64>);

fn parse_generators(s: &str) -> Result<Generators, String> {
    let v: Result<Vec<u64>, String> = s
        .split(',')
        .map(|t| {
            let t = t.trim();
            match t.parse::<u64>() {
                Ok(0) | Err(_) => Err(format!("'{t}' is not a positive integer")),
                Ok(n) => Ok(n),
            }
        })
        .collect();
    v.map(Generators)
}

#[derive(Debug, Parser)]
#[command(
    name = "semires",
    version,
    about = "Graded minimal free resolutions of numerical semigroup rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
struct Format {
    /// Emit JSON (the default).
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Emit human-readable text.
    #[arg(long)]
    text: bool,
}

#[derive(Debug, Args)]
struct GensArg {
    /// Generators, comma separated, e.g. 7,9,8,13.
    #[arg(value_parser = parse_generators)]
    generators: Generators,
    #[command(flatten)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Family and defining parameters.
    Classify(GensArg),
    /// The graded minimal free resolution.
    Resolve(GensArg),
    /// K-polynomial and truncated Hilbert series.
    Hilbert {
        #[command(flatten)]
        gens: GensArg,
        /// Truncation degree (default g(S) + N + 5).
        #[arg(long)]
        max_degree: Option<u64>,
    },
    /// Pseudo-Frobenius numbers from the Betti degrees and from the definition.
    Pf(GensArg),
    /// Frobenius number from the Betti degrees and from the definition.
    Frobenius(GensArg),
    /// Strong indispensability of the resolution.
    Indisp(GensArg),
    /// Batch over generator or parameter ranges, one record per line.
    Scan(ScanArgs),
    /// Re-check the reference examples.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
struct ScanArgs {
    /// All minimal generating tuples with entries up to M.
    #[arg(long, value_name = "M", conflicts_with_all = ["komeda", "bresinsky"])]
    gens_max: Option<u64>,
    /// Restrict the exhaustive scan to one embedding dimension (2, 3 or 4).
    #[arg(long, requires = "gens_max")]
    dim: Option<usize>,
    /// Pseudosymmetric semigroups from parameters alpha_i <= MAX.
    #[arg(long, value_name = "MAX", conflicts_with = "bresinsky")]
    komeda: Option<u64>,
    /// Symmetric non-complete-intersections from parameters alpha_ij <= MAX.
    #[arg(long, value_name = "MAX")]
    bresinsky: Option<u64>,
    /// Keep only this class (e.g. FourGenCI).
    #[arg(long)]
    class: Option<String>,
    /// CSV instead of JSON lines.
    #[arg(long)]
    csv: bool,
}

#[derive(Debug, Args)]
struct SelftestArgs {
    #[command(flatten)]
    format: Format,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
    /// The reader went away; nothing left to report.
    quiet: bool,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
            quiet: false,
        }
    }
}

impl From<SemigroupError> for Failure {
    fn from(e: SemigroupError) -> Self {
        Failure::new(EXIT_USAGE, e.to_string())
    }
}

impl From<PresentationError> for Failure {
    fn from(e: PresentationError) -> Self {
        let code = match e {
            PresentationError::UnsupportedEmbeddingDimension(_) => EXIT_UNSUPPORTED,
            PresentationError::Semigroup(_) | PresentationError::InvalidParameters(_) => EXIT_USAGE,
            _ => EXIT_VERIFICATION,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<ResolutionError> for Failure {
    fn from(e: ResolutionError) -> Self {
        match e {
            ResolutionError::Presentation(p) => p.into(),
            ResolutionError::UnsupportedClass(_) => Failure::new(EXIT_UNSUPPORTED, e.to_string()),
            _ => Failure::new(EXIT_VERIFICATION, e.to_string()),
        }
    }
}

impl From<IndispensabilityError> for Failure {
    fn from(e: IndispensabilityError) -> Self {
        match e {
            IndispensabilityError::Presentation(p) => p.into(),
            IndispensabilityError::Resolution(r) => r.into(),
            IndispensabilityError::UnsupportedClass(_) => {
                Failure::new(EXIT_UNSUPPORTED, e.to_string())
            }
            IndispensabilityError::CrossValidationMismatch { .. } => {
                Failure::new(EXIT_VERIFICATION, e.to_string())
            }
        }
    }
}

impl From<InvariantsError> for Failure {
    fn from(e: InvariantsError) -> Self {
        let code = match e {
            InvariantsError::TruncationTooSmall { .. } => EXIT_USAGE,
            InvariantsError::UnsupportedClass(_) => EXIT_UNSUPPORTED,
            InvariantsError::ConsistencyFailure { .. } => EXIT_VERIFICATION,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        let mut f = Failure::new(EXIT_USAGE, format!("write failed: {e}"));
        f.quiet = e.kind() == std::io::ErrorKind::BrokenPipe;
        f
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) if f.quiet => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Classify(g) => cmd_classify(&g, out),
        Command::Resolve(g) => cmd_resolve(&g, out),
        Command::Hilbert { gens, max_degree } => cmd_hilbert(&gens, max_degree, out),
        Command::Pf(g) => cmd_pf(&g, out),
        Command::Frobenius(g) => cmd_frobenius(&g, out),
        Command::Indisp(g) => cmd_indisp(&g, out),
        Command::Scan(a) => cmd_scan(a, out),
        Command::Selftest(a) => cmd_selftest(a.format, out),
    }
}

fn semigroup(g: &GensArg) -> Result<NumericalSemigroup, Failure> {
    let s = NumericalSemigroup::new(&g.generators.0)?;
    if s.k() > 4 || s.k() < 2 {
        return Err(PresentationError::UnsupportedEmbeddingDimension(s.k()).into());
    }
    Ok(s)
}

fn classified(g: &GensArg) -> Result<(NumericalSemigroup, Classification), Failure> {
    let s = semigroup(g)?;
    let c = classify(&s)?;
    Ok((s, c))
}

fn resolved(
    g: &GensArg,
) -> Result<(NumericalSemigroup, Classification, GradedResolution), Failure> {
    let (s, c) = classified(g)?;
    let r = resolve_classified(&s, &c)?;
    Ok((s, c, r))
}

fn emit(out: &mut dyn Write, format: Format, value: &Value, text: String) -> Result<(), Failure> {
    if format.text {
        write!(out, "{text}")?;
        if !text.ends_with('\n') {
            writeln!(out)?;
        }
    } else {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(value).expect("JSON values serialize")
        )?;
    }
    Ok(())
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn flatten_params(prefix: &str, v: &Value, lines: &mut Vec<String>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten_params(&key, x, lines);
            }
        }
        other => lines.push(format!("  {prefix} = {other}")),
    }
}

fn cmd_classify(g: &GensArg, out: &mut dyn Write) -> Result<i32, Failure> {
    let (s, c) = classified(g)?;
    let mut obj: Map<String, Value> = match serde_json::to_value(&c).expect("serializable") {
        Value::Object(m) => m,
        other => Map::from_iter([("class".to_string(), other)]),
    };
    obj.insert("generators".into(), json!(s.generators()));
    obj.insert("symmetry".into(), json!(s.classify_symmetry()));
    obj.insert("frobenius".into(), json!(s.frobenius()));
    obj.insert("type".into(), json!(s.type_number()));
    let value = Value::Object(obj);
    let mut lines = vec![
        format!("semigroup: {s}"),
        format!("class: {}", c.tag()),
        format!("symmetry: {:?}", s.classify_symmetry()),
        format!("frobenius: {}", s.frobenius()),
        format!("type: {}", s.type_number()),
    ];
    if let Some(p) = value.get("parameters") {
        lines.push("parameters:".into());
        flatten_params("", p, &mut lines);
    }
    emit(out, g.format, &value, lines.join("\n"))?;
    Ok(EXIT_OK)
}

fn cmd_resolve(g: &GensArg, out: &mut dyn Write) -> Result<i32, Failure> {
    let (_, _, r) = resolved(g)?;
    emit(out, g.format, &r.to_json(), r.render_text())?;
    Ok(EXIT_OK)
}

fn cmd_hilbert(g: &GensArg, max_degree: Option<u64>, out: &mut dyn Write) -> Result<i32, Failure> {
    let (s, _, r) = resolved(g)?;
    let d = max_degree.unwrap_or_else(|| default_truncation(&s));
    let k = k_polynomial(&r);
    let check = hilbert_check(&r, &s, d)?;
    let support: Vec<usize> = check
        .coefficients
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, _)| i)
        .collect();
    let series_text = support
        .iter()
        .map(|&i| match (i, check.coefficients[i]) {
            (0, c) => c.to_string(),
            (i, 1) => format!("z^{i}"),
            (i, c) => format!("{c}*z^{i}"),
        })
        .collect::<Vec<_>>()
        .join(" + ");
    let value = json!({
        "k_polynomial": k.to_json(),
        "max_degree": d,
        "series": check.coefficients,
        "matches_semigroup": check.passed,
        "mismatches": check.mismatches,
    });
    let text = format!(
        "K(z) = {k}\nH(z) = {series_text} + O(z^{})\nmatches semigroup up to degree {d}: {}",
        d + 1,
        check.passed
    );
    emit(out, g.format, &value, text)?;
    Ok(if check.passed {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    })
}

fn cmd_pf(g: &GensArg, out: &mut dyn Write) -> Result<i32, Failure> {
    let (s, c, r) = resolved(g)?;
    let betti = pf_from_betti(&r);
    let definition = s.pseudofrobenius();
    let closed = closed_form_pf(&c, &s).ok();
    let agree = betti == definition && closed.as_ref().is_none_or(|v| *v == definition);
    let value = json!({
        "betti_route": betti,
        "definition_route": definition,
        "closed_form": closed,
        "match": agree,
    });
    let mut text = format!(
        "PF from Betti degrees: [{}]\nPF by definition:      [{}]",
        join(&betti),
        join(&definition)
    );
    if let Some(cf) = &closed {
        text.push_str(&format!("\nPF closed form:        [{}]", join(cf)));
    }
    if !agree {
        text.push_str("\nMISMATCH");
    }
    emit(out, g.format, &value, text)?;
    Ok(if agree { EXIT_OK } else { EXIT_VERIFICATION })
}

fn cmd_frobenius(g: &GensArg, out: &mut dyn Write) -> Result<i32, Failure> {
    let (s, _, r) = resolved(g)?;
    let betti = pf_from_betti(&r).into_iter().max().unwrap_or(-1);
    let definition = s.frobenius();
    let agree = betti == definition;
    let value = json!({
        "betti_route": betti,
        "definition_route": definition,
        "match": agree,
    });
    let mut text =
        format!("g(S) from Betti degrees: {betti}\ng(S) by definition:      {definition}");
    if !agree {
        text.push_str("\nMISMATCH");
    }
    emit(out, g.format, &value, text)?;
    Ok(if agree { EXIT_OK } else { EXIT_VERIFICATION })
}

fn witness_text(w: &Witness) -> String {
    format!(
        "level {}, degrees #{} and #{}: difference {} in S",
        w.level, w.pair[0], w.pair[1], w.diff
    )
}

fn cmd_indisp(g: &GensArg, out: &mut dyn Write) -> Result<i32, Failure> {
    let (s, c, r) = resolved(g)?;
    let cv = cross_validate_with(&s, &c, &r)?;
    let rep = &cv.closed_form;
    let mut value = serde_json::to_value(rep).expect("serializable");
    value["class"] = json!(c.tag());
    value["cross_check"] = json!({
        "verdict": cv.differences.verdict,
        "method": cv.differences.method,
        "levels_checked": cv.differences.levels_checked,
        "witnesses": cv.differences.witnesses,
    });
    let mut lines = vec![
        format!("class: {}", c.tag()),
        format!("strongly indispensable: {}", rep.verdict),
        format!("method: {:?}", rep.method),
    ];
    for (level, diffs) in &rep.differences {
        lines.push(format!("level {level} differences: {}", join(diffs)));
    }
    for w in &rep.witnesses {
        lines.push(format!("witness: {}", witness_text(w)));
    }
    for crit in &rep.criteria {
        lines.push(format!(
            "criterion {}: {:?}, representations {:?}",
            crit.label, crit.verdict, crit.representations
        ));
    }
    for o in &rep.obstructions {
        lines.push(format!(
            "obstruction {}: degree gap {} in S",
            o.label, o.gap
        ));
    }
    lines.push(format!(
        "cross-check ({:?}, levels {:?}): {}",
        cv.differences.method, cv.differences.levels_checked, cv.differences.verdict
    ));
    emit(out, g.format, &value, lines.join("\n"))?;
    Ok(EXIT_OK)
}

fn cmd_scan(a: ScanArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let spec = match (a.gens_max, a.komeda, a.bresinsky) {
        (Some(m), None, None) => ScanSpec::Exhaustive {
            max: m,
            dims: match a.dim {
                Some(d @ 2..=4) => vec![d],
                Some(d) => {
                    return Err(Failure::new(
                        EXIT_USAGE,
                        format!("--dim must be 2, 3 or 4, got {d}"),
                    ))
                }
                None => vec![2, 3, 4],
            },
        },
        (None, Some(m), None) => ScanSpec::Komeda { max: m },
        (None, None, Some(m)) => ScanSpec::Bresinsky { max: m },
        _ => {
            return Err(Failure::new(
                EXIT_USAGE,
                "scan needs exactly one of --gens-max, --komeda, --bresinsky",
            ))
        }
    };
    let class = match &a.class {
        Some(name) => Some(
            crate::presentation::ClassTag::parse(name)
                .ok_or_else(|| Failure::new(EXIT_USAGE, format!("unknown class '{name}'")))?,
        ),
        None => None,
    };
    let mut mismatches = 0usize;
    if a.csv {
        writeln!(out, "generators,class,frobenius,type,verdict,witness")?;
    }
    let mut write_err = None;
    scan(&spec, class, |rec| {
        if rec.mismatch {
            mismatches += 1;
        }
        let res = if a.csv {
            writeln!(out, "{}", rec.csv_line())
        } else {
            writeln!(out, "{}", rec.to_json())
        };
        match res {
            Ok(()) => true,
            Err(e) => {
                write_err = Some(e);
                false
            }
        }
    });
    if let Some(e) = write_err {
        return Err(e.into());
    }
    Ok(if mismatches == 0 {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    })
}

fn cmd_selftest(format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    let checks = selftest();
    let passed = checks.iter().all(|c| c.passed);
    let value = json!({ "passed": passed, "checks": checks });
    let text = checks
        .iter()
        .map(|c| {
            format!(
                "{} {}{}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                if c.passed {
                    String::new()
                } else {
                    format!(": {}", c.detail)
                }
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    emit(out, format, &value, text)?;
    Ok(if passed { EXIT_OK } else { EXIT_VERIFICATION })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["semires"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn generator_parsing() {
        assert_eq!(
            parse_generators("7,9,8,13"),
            Ok(Generators(vec![7, 9, 8, 13]))
        );
        assert_eq!(parse_generators(" 2, 3"), Ok(Generators(vec![2, 3])));
        assert!(parse_generators("7,0").is_err());
        assert!(parse_generators("7,-1").is_err());
        assert!(parse_generators("").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["classify", "7,9,8,13"]).0, EXIT_OK);
        assert_eq!(call(&["classify"]).0, EXIT_USAGE);
        assert_eq!(call(&["classify", "4,6"]).0, EXIT_USAGE);
        assert_eq!(call(&["classify", "7,9", "--json", "--text"]).0, EXIT_USAGE);
        assert_eq!(call(&["resolve", "19,27,28,31,32"]).0, EXIT_UNSUPPORTED);
        assert_eq!(call(&["resolve", "6,7,9,10"]).0, EXIT_UNSUPPORTED);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn pf_output() {
        let (code, out, _) = call(&["pf", "13,9,11,14"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["betti_route"], json!([15, 30]));
        assert_eq!(v["definition_route"], json!([15, 30]));
        assert_eq!(v["match"], json!(true));
    }
}
