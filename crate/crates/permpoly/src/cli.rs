//! Command-line surface: build fields, construct family instances, run
//! verification suites, evaluate inverses, sample resultant identities,
//! and emit machine-readable reports.
//!
//! Every command prints one structured JSON document on stdout (or a human
//! table with `--format text`). Reports are self-contained: re-running
//! with the echoed parameters and seed reproduces them byte-identically
//! apart from the per-suite `millis` timings.
//!
//! Exit status: `0` when every suite matched its prediction-implied
//! expectation (a correctly predicted non-permutation is a PASS), `1` on
//! a theorem-contradicting observation, `2` on usage errors.

use crate::families::{Family, FamilyParams, InverseBranch, ResultantIdentity};
use crate::gf::{FieldElement, FieldSpec, ModulusCache};
use crate::localmethod::{discriminant_nonvanishing, identity_abc_check, lemma_certify, LocalScheme};
use crate::poly::{
    brute_inverse_table, is_permutation, lagrange_interpolate, parse_coeff, parse_poly,
    EvalTable, SparsePoly,
};
use crate::tower::TowerParams;
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

/// Seed used by sampling commands when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 0xC0FFEE;
/// Schema tag stamped into every report.
pub const REPORT_SCHEMA: &str = "permpoly.report.v1";
/// Field-order ceiling for the interpolation command.
const INTERPOLATE_GUARD: u64 = 4096;

#[derive(Debug, Parser)]
#[command(
    name = "permpoly",
    version,
    about = "Verify permutation trinomials over cubic extension fields and evaluate their closed-form inverses"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format written to stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Modulus cache file; overrides the PERMPOLY_MODULUS_CACHE variable.
    #[arg(long, global = true, value_name = "PATH")]
    modulus_cache: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the verification suites for one family instance.
    Verify(VerifyArgs),
    /// Evaluate a closed-form inverse at one point.
    Invert(InvertArgs),
    /// Tabulate predicted vs. verified permutation status across towers.
    Enumerate(EnumerateArgs),
    /// Sample the factored-resultant identity at random points.
    ResultantCheck(ResultantCheckArgs),
    /// Interpolate an inverse from its value table and cross-check it.
    Interpolate(InterpolateArgs),
    /// Scan any polynomial over any field within caps for bijectivity.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
struct FamilySelection {
    /// Which trinomial family: f1 | f2 | f3.
    #[arg(long, value_parser = parse_family)]
    family: Family,
    /// Field characteristic (2 for f1/f2; any prime for f3).
    #[arg(long)]
    p: u64,
    /// Base-field degree: the tower is GF(p^(3m)) over GF(p^m).
    #[arg(long)]
    m: u32,
    /// Coefficient A: `unity3:j` (j-th cube root of unity), `unit:j`
    /// (j-th base-field unit), or `coeffs:c0,c1,...`.
    #[arg(long = "A", value_name = "SELECTOR")]
    a: String,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    sel: FamilySelection,
    /// Comma-separated subset of suites to run (default: all):
    /// bijectivity, inverse_crosscheck, branch_coverage, discriminant,
    /// identity_abc, lemma_certify.
    #[arg(long, value_delimiter = ',')]
    suites: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InverseFormArg {
    Piecewise,
    Rational,
    Brute,
}

#[derive(Debug, Args)]
struct InvertArgs {
    #[command(flatten)]
    sel: FamilySelection,
    /// The value to invert: colon-separated base-p digits (constant term
    /// first), `g` or `g^j` for generator powers.
    #[arg(long)]
    value: String,
    /// Which inverse representation to evaluate.
    #[arg(long, value_enum, default_value_t = InverseFormArg::Piecewise)]
    form: InverseFormArg,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    /// Which trinomial family: f1 | f2 | f3.
    #[arg(long, value_parser = parse_family)]
    family: Family,
    /// Largest base-field degree m to cover (f1/f2; tower caps at m = 8).
    #[arg(long)]
    max_m: Option<u32>,
    /// Largest base-field order q to cover (f3; caps at q = 256).
    #[arg(long)]
    max_q: Option<u64>,
}

#[derive(Debug, Args)]
struct ResultantCheckArgs {
    #[command(flatten)]
    sel: FamilySelection,
    /// Number of non-degenerate draws to evaluate.
    #[arg(long, default_value_t = 500)]
    samples: u64,
    /// RNG seed; the default is fixed for reproducibility.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Debug, Args)]
struct InterpolateArgs {
    /// Which family: f1 | f2 | f3 | identity (the test stub f = x).
    #[arg(long)]
    family: String,
    /// Field characteristic.
    #[arg(long)]
    p: u64,
    /// Base-field degree.
    #[arg(long)]
    m: u32,
    /// Coefficient A selector (required for f1/f2/f3, ignored for identity).
    #[arg(long = "A", value_name = "SELECTOR")]
    a: Option<String>,
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Field characteristic.
    #[arg(long)]
    p: u64,
    /// Extension degree: the field is GF(p^k).
    #[arg(long)]
    k: u32,
    /// Polynomial to scan, e.g. "x^5 + x^3 + x" or "g^2*x^4 + 0:1*x + 1".
    #[arg(long)]
    poly: String,
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    match s {
        "f1" => Ok(Family::F1),
        "f2" => Ok(Family::F2),
        "f3" => Ok(Family::F3),
        other => Err(format!("unknown family '{other}' (expected f1, f2, or f3)")),
    }
}

// ---------------------------------------------------------------------------
// Report types
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
struct RunReport {
    schema: &'static str,
    command: &'static str,
    params: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    field: Option<FieldInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<FamilyInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    suites: Vec<SuiteResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<serde_json::Value>,
    ok: bool,
}

#[derive(Debug, Serialize)]
struct FieldInfo {
    p: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<u32>,
    k: u32,
    order: u64,
    modulus: Vec<u32>,
    modulus_display: String,
}

#[derive(Debug, Serialize)]
struct FamilyInfo {
    name: &'static str,
    a_selector: String,
    a_coeffs: Vec<u32>,
    a_display: String,
    predicted_permutation: bool,
}

#[derive(Debug, Serialize)]
struct SuiteResult {
    name: &'static str,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    observed: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    root_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    details: Option<String>,
    millis: u128,
}

/// Payload of one suite before timing is attached.
#[derive(Debug, Default)]
struct SuiteOutcome {
    passed: bool,
    expected: Option<String>,
    observed: Option<String>,
    counterexample: Option<String>,
    root_count: Option<u64>,
    details: Option<String>,
}

impl SuiteOutcome {
    fn skipped(reason: &str) -> Self {
        SuiteOutcome {
            passed: true,
            details: Some(format!("skipped: {reason}")),
            ..Default::default()
        }
    }
}

/// Run one suite with timing; an error inside a suite is a failed check
/// (the usual cause is a theorem-contradicting denominator), not a usage
/// problem, so it lands in the report rather than aborting the run.
fn timed(name: &'static str, body: impl FnOnce() -> Result<SuiteOutcome>) -> SuiteResult {
    let start = Instant::now();
    let outcome = body().unwrap_or_else(|e| SuiteOutcome {
        passed: false,
        details: Some(format!("error: {e}")),
        ..Default::default()
    });
    SuiteResult {
        name,
        passed: outcome.passed,
        expected: outcome.expected,
        observed: outcome.observed,
        counterexample: outcome.counterexample,
        root_count: outcome.root_count,
        details: outcome.details,
        millis: start.elapsed().as_millis(),
    }
}

fn field_info(spec: &FieldSpec, m: Option<u32>) -> FieldInfo {
    FieldInfo {
        p: spec.p(),
        m,
        k: spec.degree(),
        order: spec.order(),
        modulus: spec.modulus().to_vec(),
        modulus_display: modulus_display(spec.modulus()),
    }
}

fn modulus_display(coeffs: &[u32]) -> String {
    let mut out = String::new();
    for (e, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        match (e, c) {
            (0, _) => {
                let _ = write!(out, "{c}");
            }
            (1, 1) => out.push('t'),
            (1, _) => {
                let _ = write!(out, "{c}*t");
            }
            (_, 1) => {
                let _ = write!(out, "t^{e}");
            }
            (_, _) => {
                let _ = write!(out, "{c}*t^{e}");
            }
        }
    }
    out
}

fn family_info(fp: &FamilyParams, selector: &str) -> FamilyInfo {
    FamilyInfo {
        name: fp.family().name(),
        a_selector: selector.to_string(),
        a_coeffs: fp.coeff_a().coeffs().to_vec(),
        a_display: fp.coeff_a().to_string(),
        predicted_permutation: fp.predicted_permutation(),
    }
}

// ---------------------------------------------------------------------------
// Parameter resolution
// ---------------------------------------------------------------------------

/// Build a field spec, going through a modulus cache when one is named on
/// the command line or in PERMPOLY_MODULUS_CACHE.
fn resolve_spec(p: u64, k: u32, cache: &Option<PathBuf>) -> Result<FieldSpec> {
    let path = cache
        .clone()
        .or_else(|| std::env::var_os("PERMPOLY_MODULUS_CACHE").map(PathBuf::from));
    match path {
        Some(path) => ModulusCache::open(path)?.field_spec(p, k),
        None => FieldSpec::new(p, k),
    }
}

fn resolve_tower(p: u64, m: u32, cache: &Option<PathBuf>) -> Result<TowerParams> {
    if m == 0 || m > 8 {
        return Err(Error::InvalidParams(format!(
            "tower degree m must be in 1..=8 (field order caps at 2^24), got {m}"
        )));
    }
    TowerParams::from_spec(resolve_spec(p, 3 * m, cache)?, m)
}

/// Resolve an `--A` selector against a tower.
fn resolve_a(tower: &TowerParams, selector: &str) -> Result<FieldElement> {
    if let Some(js) = selector.strip_prefix("unity3:") {
        let j: usize = js
            .parse()
            .map_err(|e| Error::Parse(format!("bad unity3 index '{js}': {e}")))?;
        let roots = tower.cube_roots_of_unity();
        return roots.get(j).copied().ok_or_else(|| {
            Error::InvalidParams(format!(
                "unity3:{j} out of range: this tower has {} cube root(s) of unity",
                roots.len()
            ))
        });
    }
    if let Some(js) = selector.strip_prefix("unit:") {
        let j: usize = js
            .parse()
            .map_err(|e| Error::Parse(format!("bad unit index '{js}': {e}")))?;
        let units = tower.subfield_units();
        return units.get(j).copied().ok_or_else(|| {
            Error::InvalidParams(format!(
                "unit:{j} out of range: the base field has {} unit(s)",
                units.len()
            ))
        });
    }
    if let Some(cs) = selector.strip_prefix("coeffs:") {
        let p = tower.field().p();
        let digits: Vec<u32> = cs
            .split(',')
            .map(|d| {
                let v = d
                    .trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad coefficient '{d}': {e}")))?;
                if u64::from(v) >= p {
                    return Err(Error::Parse(format!(
                        "coefficient {v} is not a base-{p} digit"
                    )));
                }
                Ok(v)
            })
            .collect::<Result<_>>()?;
        return tower.field().from_coeffs(&digits);
    }
    Err(Error::Parse(format!(
        "unknown A selector '{selector}' (use unity3:j, unit:j, or coeffs:c0,c1,...)"
    )))
}

fn resolve_family(sel: &FamilySelection, cache: &Option<PathBuf>) -> Result<FamilyParams> {
    let tower = resolve_tower(sel.p, sel.m, cache)?;
    let a = resolve_a(&tower, &sel.a)?;
    FamilyParams::new(sel.family, tower, a)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

const ALL_SUITES: [&str; 6] = [
    "bijectivity",
    "inverse_crosscheck",
    "branch_coverage",
    "discriminant",
    "identity_abc",
    "lemma_certify",
];

fn cmd_verify(args: &VerifyArgs, cache: &Option<PathBuf>) -> Result<RunReport> {
    let fp = resolve_family(&args.sel, cache)?;
    let selected: Vec<&str> = if args.suites.is_empty() {
        ALL_SUITES.to_vec()
    } else {
        let mut out = Vec::new();
        for s in &args.suites {
            let name = ALL_SUITES
                .iter()
                .find(|&&k| k == s.as_str())
                .ok_or_else(|| {
                    Error::InvalidParams(format!(
                        "unknown suite '{s}' (available: {})",
                        ALL_SUITES.join(", ")
                    ))
                })?;
            out.push(*name);
        }
        out
    };

    let mut suites = Vec::new();
    for name in selected {
        let suite = match name {
            "bijectivity" => timed(name, || Ok(suite_bijectivity(&fp))),
            "inverse_crosscheck" => timed(name, || suite_inverse_crosscheck(&fp)),
            "branch_coverage" => timed(name, || suite_branch_coverage(&fp)),
            "discriminant" => timed(name, || suite_discriminant(&fp)),
            "identity_abc" => timed(name, || suite_identity_abc(&fp)),
            "lemma_certify" => timed(name, || suite_lemma_certify(&fp)),
            _ => unreachable!(),
        };
        suites.push(suite);
    }
    let ok = suites.iter().all(|s| s.passed);
    Ok(RunReport {
        schema: REPORT_SCHEMA,
        command: "verify",
        params: json!({
            "family": fp.family().name(),
            "p": args.sel.p,
            "m": args.sel.m,
            "A": args.sel.a,
            "suites": args.suites,
        }),
        field: Some(field_info(fp.field(), Some(args.sel.m))),
        family: Some(family_info(&fp, &args.sel.a)),
        seed: None,
        suites,
        result: None,
        ok,
    })
}

fn perm_word(b: bool) -> String {
    if b { "permutation" } else { "not a permutation" }.to_string()
}

fn suite_bijectivity(fp: &FamilyParams) -> SuiteOutcome {
    let report = is_permutation(fp.field(), &fp.polynomial());
    let expected = fp.predicted_permutation();
    SuiteOutcome {
        passed: report.is_permutation == expected,
        expected: Some(perm_word(expected)),
        observed: Some(perm_word(report.is_permutation)),
        counterexample: report
            .collision
            .map(|(x1, x2)| format!("f({x1}) = f({x2})")),
        root_count: Some(report.root_count),
        details: Some(format!(
            "exhaustive scan over {} elements",
            fp.field().order()
        )),
    }
}

fn suite_inverse_crosscheck(fp: &FamilyParams) -> Result<SuiteOutcome> {
    if !fp.predicted_permutation() {
        return Ok(SuiteOutcome::skipped(
            "no inverse exists for a (correctly predicted) non-permutation",
        ));
    }
    let spec = fp.field();
    let brute = brute_inverse_table(spec, &fp.polynomial())?;
    let piecewise = fp.inverse_table()?;
    let mut forms = vec!["piecewise", "brute"];
    let mut agree = piecewise == brute;
    if fp.family() != Family::F3 {
        let rational = fp.rational_inverse_table()?;
        agree = agree && rational == brute;
        forms.insert(1, "rational");
    }
    let f_table = EvalTable::of_sparse(spec, &fp.polynomial());
    agree = agree && piecewise.is_inverse_of(&f_table);
    Ok(SuiteOutcome {
        passed: agree,
        expected: Some("all inverse forms agree".into()),
        observed: Some(if agree {
            "all inverse forms agree".into()
        } else {
            "tables differ".into()
        }),
        details: Some(format!(
            "{} tables compared on {} points; f∘g and g∘f are the identity",
            forms.join(", "),
            spec.order()
        )),
        ..Default::default()
    })
}

fn suite_branch_coverage(fp: &FamilyParams) -> Result<SuiteOutcome> {
    if !fp.predicted_permutation() {
        return Ok(SuiteOutcome::skipped(
            "branch counts are defined for permutation instances",
        ));
    }
    let spec = fp.field();
    let (mut linear, mut kernel, mut origin, mut total) = (0u64, 0u64, 0u64, 0u64);
    for y in spec.elements() {
        match fp.inverse_eval(y)?.branch {
            InverseBranch::Linear => linear += 1,
            InverseBranch::Kernel => kernel += 1,
            InverseBranch::Origin => origin += 1,
            InverseBranch::Total => total += 1,
        }
    }
    let order = spec.order();
    let q = fp.tower().q();
    let passed = if fp.family() == Family::F3 {
        total == order
    } else {
        // The linear form is a scaled trace, so its kernel has q² points;
        // one of them is the origin.
        origin == 1 && kernel == q * q - 1 && linear == order - q * q
    };
    Ok(SuiteOutcome {
        passed,
        details: Some(format!(
            "branches hit: linear {linear}, kernel {kernel}, origin {origin}, total {total}"
        )),
        ..Default::default()
    })
}

fn suite_discriminant(fp: &FamilyParams) -> Result<SuiteOutcome> {
    if fp.family() == Family::F3 {
        return Ok(SuiteOutcome::skipped("the branch discriminant is an f1/f2 notion"));
    }
    let report = discriminant_nonvanishing(fp)?;
    let expected = fp.predicted_permutation();
    Ok(SuiteOutcome {
        passed: report.holds == expected,
        expected: Some(format!(
            "nonzero on all nonzero inputs: {}",
            expected
        )),
        observed: Some(format!("nonzero on all nonzero inputs: {}", report.holds)),
        counterexample: report.witness.map(|x| format!("vanishes at x = {x}")),
        ..Default::default()
    })
}

fn suite_identity_abc(fp: &FamilyParams) -> Result<SuiteOutcome> {
    if fp.family() != Family::F1 {
        return Ok(SuiteOutcome::skipped("the linear-form identity is an f1 notion"));
    }
    let holds = identity_abc_check(fp)?;
    Ok(SuiteOutcome {
        passed: holds,
        expected: Some("L(x) = L(f(x)) for all x".into()),
        observed: Some(if holds { "holds".into() } else { "fails".into() }),
        ..Default::default()
    })
}

fn suite_lemma_certify(fp: &FamilyParams) -> Result<SuiteOutcome> {
    let report = lemma_certify(&LocalScheme::for_family(fp));
    let expected = fp.predicted_permutation();
    let mut passed = report.certified == expected;
    let mut details = String::new();
    if report.certified {
        let brute = brute_inverse_table(fp.field(), &fp.polynomial())?;
        let induced_matches = report.induced_inverse.as_ref() == Some(&brute);
        passed = passed && induced_matches;
        details = format!(
            "combiner recovered every input; induced inverse table {} the brute-force table",
            if induced_matches { "equals" } else { "DIFFERS from" }
        );
    }
    Ok(SuiteOutcome {
        passed,
        expected: Some(format!("certified: {expected}")),
        observed: Some(format!("certified: {}", report.certified)),
        counterexample: report.counterexample.map(|ce| {
            format!(
                "x = {}, f(x) = {}, combiner -> {}",
                ce.x,
                ce.image,
                ce.recovered
                    .map_or("undefined".to_string(), |r| r.to_string())
            )
        }),
        details: if details.is_empty() { None } else { Some(details) },
        ..Default::default()
    })
}

// ---------------------------------------------------------------------------
// invert
// ---------------------------------------------------------------------------

fn cmd_invert(args: &InvertArgs, cache: &Option<PathBuf>) -> Result<RunReport> {
    let fp = resolve_family(&args.sel, cache)?;
    if !fp.predicted_permutation() {
        return Err(Error::InvalidParams(format!(
            "{} with these parameters is not a permutation; nothing to invert",
            fp.family()
        )));
    }
    let spec = fp.field();
    let y = parse_coeff(spec, &args.value)?;
    if args.form == InverseFormArg::Rational && fp.rational_inverse().is_none() {
        return Err(Error::InvalidParams(format!(
            "{} has no separate rational inverse form",
            fp.family()
        )));
    }

    let suite = timed("invert", || {
        let (x, branch) = match args.form {
            InverseFormArg::Piecewise => {
                let iv = fp.inverse_eval(y)?;
                (iv.value, Some(iv.branch))
            }
            InverseFormArg::Rational => (fp.rational_inverse_eval(y)?, None),
            InverseFormArg::Brute => {
                let table = brute_inverse_table(spec, &fp.polynomial())?;
                (table.image(spec, y), None)
            }
        };
        // The one check that must never fail on a genuine permutation.
        let back = fp.polynomial().eval(spec, x);
        if back != y {
            return Err(Error::Contract(format!(
                "inverse candidate {x} maps to {back}, not back to {y}"
            )));
        }
        Ok(SuiteOutcome {
            passed: true,
            observed: Some(x.to_string()),
            details: Some(match branch {
                Some(b) => format!("branch: {}", branch_name(b)),
                None => format!("form: {:?}", args.form).to_lowercase(),
            }),
            ..Default::default()
        })
    });

    // Recompute for the result block (cheap: one more evaluation).
    let result = if suite.passed {
        let (x, branch) = match args.form {
            InverseFormArg::Piecewise => {
                let iv = fp.inverse_eval(y)?;
                (iv.value, Some(branch_name(iv.branch)))
            }
            InverseFormArg::Rational => (fp.rational_inverse_eval(y)?, None),
            InverseFormArg::Brute => {
                let table = brute_inverse_table(spec, &fp.polynomial())?;
                (table.image(spec, y), None)
            }
        };
        Some(json!({
            "value": y.to_string(),
            "inverse": x.to_string(),
            "inverse_coeffs": x.coeffs(),
            "branch": branch,
            "form": format!("{:?}", args.form).to_lowercase(),
        }))
    } else {
        None
    };

    let ok = suite.passed;
    Ok(RunReport {
        schema: REPORT_SCHEMA,
        command: "invert",
        params: json!({
            "family": fp.family().name(),
            "p": args.sel.p,
            "m": args.sel.m,
            "A": args.sel.a,
            "value": args.value,
            "form": format!("{:?}", args.form).to_lowercase(),
        }),
        field: Some(field_info(spec, Some(args.sel.m))),
        family: Some(family_info(&fp, &args.sel.a)),
        seed: None,
        suites: vec![suite],
        result,
        ok,
    })
}

fn branch_name(b: InverseBranch) -> &'static str {
    match b {
        InverseBranch::Linear => "linear",
        InverseBranch::Kernel => "kernel",
        InverseBranch::Origin => "origin",
        InverseBranch::Total => "total",
    }
}

// ---------------------------------------------------------------------------
// enumerate
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
struct EnumerateRow {
    family: &'static str,
    p: u64,
    m: u32,
    q: u64,
    order: u64,
    a_selector: String,
    a_display: String,
    predicted: bool,
    verified: bool,
    root_count: u64,
    agree: bool,
}

fn cmd_enumerate(args: &EnumerateArgs, cache: &Option<PathBuf>) -> Result<RunReport> {
    let rows = match args.family {
        Family::F1 | Family::F2 => {
            let max_m = args.max_m.ok_or_else(|| {
                Error::InvalidParams("f1/f2 enumeration needs --max-m".into())
            })?;
            if !(1..=8).contains(&max_m) {
                return Err(Error::InvalidParams(format!(
                    "--max-m must be in 1..=8, got {max_m}"
                )));
            }
            let mut rows = Vec::new();
            for m in 1..=max_m {
                let tower = resolve_tower(2, m, cache)?;
                for (j, a) in tower.cube_roots_of_unity().into_iter().enumerate() {
                    rows.push(enumerate_row(
                        args.family,
                        &tower,
                        a,
                        format!("unity3:{j}"),
                    )?);
                }
            }
            rows
        }
        Family::F3 => {
            let max_q = args.max_q.ok_or_else(|| {
                Error::InvalidParams("f3 enumeration needs --max-q".into())
            })?;
            if !(2..=256).contains(&max_q) {
                return Err(Error::InvalidParams(format!(
                    "--max-q must be in 2..=256, got {max_q}"
                )));
            }
            let mut rows = Vec::new();
            for q in 2..=max_q {
                let Some((p, m)) = prime_power_decompose(q) else {
                    continue;
                };
                let tower = resolve_tower(p, m, cache)?;
                for (j, a) in tower.subfield_units().into_iter().enumerate() {
                    rows.push(enumerate_row(Family::F3, &tower, a, format!("unit:{j}"))?);
                }
            }
            rows
        }
    };

    let agree_count = rows.iter().filter(|r| r.agree).count();
    let ok = agree_count == rows.len();
    let suite = SuiteResult {
        name: "enumerate",
        passed: ok,
        expected: Some("every row: predicted = verified".into()),
        observed: Some(format!("{agree_count}/{} rows agree", rows.len())),
        counterexample: rows
            .iter()
            .find(|r| !r.agree)
            .map(|r| format!("{} q={} A={}", r.family, r.q, r.a_display)),
        root_count: None,
        details: None,
        millis: 0,
    };
    Ok(RunReport {
        schema: REPORT_SCHEMA,
        command: "enumerate",
        params: json!({
            "family": args.family.name(),
            "max_m": args.max_m,
            "max_q": args.max_q,
        }),
        field: None,
        family: None,
        seed: None,
        suites: vec![suite],
        result: Some(serde_json::to_value(&rows).map_err(|e| Error::Parse(e.to_string()))?),
        ok,
    })
}

fn enumerate_row(
    family: Family,
    tower: &TowerParams,
    a: FieldElement,
    a_selector: String,
) -> Result<EnumerateRow> {
    let fp = FamilyParams::new(family, tower.clone(), a)?;
    let report = is_permutation(fp.field(), &fp.polynomial());
    Ok(EnumerateRow {
        family: family.name(),
        p: tower.p(),
        m: tower.m(),
        q: tower.q(),
        order: fp.field().order(),
        a_selector,
        a_display: a.to_string(),
        predicted: fp.predicted_permutation(),
        verified: report.is_permutation,
        root_count: report.root_count,
        agree: fp.predicted_permutation() == report.is_permutation,
    })
}

/// `q = p^m` for prime `p`, or `None` when `q` is not a prime power.
fn prime_power_decompose(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if p * p > q {
        return Some((q, 1)); // q itself is prime
    }
    let mut m = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

// ---------------------------------------------------------------------------
// resultant-check
// ---------------------------------------------------------------------------

fn cmd_resultant_check(args: &ResultantCheckArgs, cache: &Option<PathBuf>) -> Result<RunReport> {
    let fp = resolve_family(&args.sel, cache)?;
    let spec = fp.field();
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);

    let mut equal = 0u64;
    let mut unequal = 0u64;
    let mut degenerate = 0u64;
    let mut first_unequal: Option<String> = None;
    let mut attempts = 0u64;
    let attempt_cap = args.samples.saturating_mul(20).saturating_add(1000);

    let suite = timed("resultant_factorization", || {
        while equal + unequal < args.samples {
            attempts += 1;
            if attempts > attempt_cap {
                return Err(Error::InvalidParams(format!(
                    "drew {attempts} samples but almost all were degenerate; giving up"
                )));
            }
            let y = spec.from_index(rng.gen_range(0..spec.order()));
            let v = spec.from_index(rng.gen_range(0..spec.order()));
            match fp.resultant_factorization_check(&fp.projections(y), v)? {
                ResultantIdentity::Equal => equal += 1,
                ResultantIdentity::Degenerate => degenerate += 1,
                ResultantIdentity::Unequal {
                    determinant,
                    factored,
                } => {
                    unequal += 1;
                    first_unequal.get_or_insert(format!(
                        "y = {y}, v = {v}: determinant {determinant} vs factored {factored}"
                    ));
                }
            }
        }
        Ok(SuiteOutcome {
            passed: unequal == 0 && equal == args.samples,
            expected: Some(format!("{} equal", args.samples)),
            observed: Some(format!(
                "{equal} equal, {unequal} unequal, {degenerate} degenerate draws skipped"
            )),
            counterexample: first_unequal.clone(),
            ..Default::default()
        })
    });

    let ok = suite.passed;
    Ok(RunReport {
        schema: REPORT_SCHEMA,
        command: "resultant-check",
        params: json!({
            "family": fp.family().name(),
            "p": args.sel.p,
            "m": args.sel.m,
            "A": args.sel.a,
            "samples": args.samples,
            "seed": args.seed,
        }),
        field: Some(field_info(spec, Some(args.sel.m))),
        family: Some(family_info(&fp, &args.sel.a)),
        seed: Some(args.seed),
        suites: vec![suite],
        result: Some(json!({
            "equal": equal,
            "unequal": unequal,
            "degenerate_skipped": degenerate,
        })),
        ok,
    })
}

// ---------------------------------------------------------------------------
// interpolate
// ---------------------------------------------------------------------------

fn cmd_interpolate(args: &InterpolateArgs, cache: &Option<PathBuf>) -> Result<RunReport> {
    let is_identity = args.family == "identity";
    let family = if is_identity {
        None
    } else {
        Some(parse_family(&args.family).map_err(Error::InvalidParams)?)
    };
    let tower = resolve_tower(args.p, args.m, cache)?;
    let spec = tower.field().clone();
    if spec.order() > INTERPOLATE_GUARD {
        return Err(Error::GuardExceeded {
            size: spec.order(),
            guard: INTERPOLATE_GUARD,
        });
    }

    let (fp, f): (Option<FamilyParams>, SparsePoly) = match family {
        None => (None, SparsePoly::identity(&spec)),
        Some(fam) => {
            let selector = args.a.as_deref().ok_or_else(|| {
                Error::InvalidParams("family interpolation needs --A".into())
            })?;
            let a = resolve_a(&tower, selector)?;
            let fp = FamilyParams::new(fam, tower.clone(), a)?;
            if !fp.predicted_permutation() {
                return Err(Error::InvalidParams(
                    "these parameters do not give a permutation; no inverse to interpolate"
                        .into(),
                ));
            }
            let poly = fp.polynomial();
            (Some(fp), poly)
        }
    };

    let mut interpolated = None;
    let suite = timed("interpolate", || {
        let inverse = brute_inverse_table(&spec, &f)?;
        let points: Vec<(FieldElement, FieldElement)> = spec
            .elements()
            .map(|y| (y, inverse.image(&spec, y)))
            .collect();
        let g = lagrange_interpolate(&spec, &points, INTERPOLATE_GUARD)?;
        // Cross-checks before printing: g undoes f everywhere, and agrees
        // with the closed forms where they exist.
        for x in spec.elements() {
            let y = f.eval(&spec, x);
            if g.eval(&spec, y) != x {
                return Err(Error::Contract(format!(
                    "interpolated inverse fails at x = {x}"
                )));
            }
        }
        if let Some(fp) = &fp {
            for y in spec.elements() {
                let expect = fp.inverse_eval(y)?.value;
                if g.eval(&spec, y) != expect {
                    return Err(Error::Contract(format!(
                        "interpolated inverse disagrees with the piecewise form at y = {y}"
                    )));
                }
                if fp.family() != Family::F3
                    && fp.rational_inverse_eval(y)? != expect
                {
                    return Err(Error::Contract(format!(
                        "rational form disagrees at y = {y}"
                    )));
                }
            }
        }
        let degree = g.degree();
        let outcome = SuiteOutcome {
            passed: true,
            observed: Some(format!(
                "degree {}",
                degree.map_or("-∞ (zero polynomial)".to_string(), |d| d.to_string())
            )),
            details: Some(format!(
                "interpolated from {} points; verified against f pointwise{}",
                spec.order(),
                if fp.is_some() { " and against the closed forms" } else { "" }
            )),
            ..Default::default()
        };
        interpolated = Some(g);
        Ok(outcome)
    });

    let result = interpolated.map(|g| {
        json!({
            "degree": g.degree(),
            "polynomial": g.to_string(),
            "coefficients": g
                .coeffs()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>(),
        })
    });

    let ok = suite.passed;
    Ok(RunReport {
        schema: REPORT_SCHEMA,
        command: "interpolate",
        params: json!({
            "family": args.family,
            "p": args.p,
            "m": args.m,
            "A": args.a,
        }),
        field: Some(field_info(&spec, Some(args.m))),
        family: fp.as_ref().map(|fp| family_info(fp, args.a.as_deref().unwrap_or(""))),
        seed: None,
        suites: vec![suite],
        result,
        ok,
    })
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

fn cmd_check(args: &CheckArgs, cache: &Option<PathBuf>) -> Result<RunReport> {
    let spec = resolve_spec(args.p, args.k, cache)?;
    let poly = parse_poly(&spec, &args.poly)?;
    let suite = timed("permutation_scan", || {
        let report = is_permutation(&spec, &poly);
        Ok(SuiteOutcome {
            passed: true, // observational: no prediction to contradict
            observed: Some(perm_word(report.is_permutation)),
            counterexample: report
                .collision
                .map(|(x1, x2)| format!("f({x1}) = f({x2})")),
            root_count: Some(report.root_count),
            details: Some(format!("f = {poly}")),
            ..Default::default()
        })
    });
    Ok(RunReport {
        schema: REPORT_SCHEMA,
        command: "check",
        params: json!({
            "p": args.p,
            "k": args.k,
            "poly": args.poly,
        }),
        field: Some(field_info(&spec, None)),
        family: None,
        seed: None,
        suites: vec![suite],
        result: None,
        ok: true,
    })
}

// ---------------------------------------------------------------------------
// Rendering and entry point
// ---------------------------------------------------------------------------

fn render_text(r: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "permpoly {}", r.command);
    if let Some(f) = &r.field {
        let _ = write!(
            out,
            "field: GF({}^{}) = {} elements, modulus {}",
            f.p, f.k, f.order, f.modulus_display
        );
        if let Some(m) = f.m {
            let _ = write!(out, ", tower over GF({}^{})", f.p, m);
        }
        out.push('\n');
    }
    if let Some(fam) = &r.family {
        let _ = writeln!(
            out,
            "family: {}, A = {} ({}), predicted: {}",
            fam.name,
            fam.a_display,
            fam.a_selector,
            perm_word(fam.predicted_permutation)
        );
    }
    if let Some(seed) = r.seed {
        let _ = writeln!(out, "seed: {seed}");
    }
    for s in &r.suites {
        let _ = write!(
            out,
            "  [{}] {}",
            if s.passed { "PASS" } else { "FAIL" },
            s.name
        );
        if let (Some(e), Some(o)) = (&s.expected, &s.observed) {
            if e == o {
                let _ = write!(out, ": {o}");
            } else {
                let _ = write!(out, ": expected {e}, observed {o}");
            }
        } else if let Some(o) = &s.observed {
            let _ = write!(out, ": {o}");
        }
        if let Some(rc) = s.root_count {
            let _ = write!(out, "; root_count {rc}");
        }
        if let Some(ce) = &s.counterexample {
            let _ = write!(out, "; counterexample: {ce}");
        }
        if let Some(d) = &s.details {
            let _ = write!(out, " ({d})");
        }
        let _ = writeln!(out, " [{} ms]", s.millis);
    }
    if let Some(result) = &r.result {
        let _ = writeln!(
            out,
            "result: {}",
            serde_json::to_string(result).unwrap_or_default()
        );
    }
    let _ = writeln!(out, "{}", if r.ok { "OK" } else { "MISMATCH" });
    out
}

fn execute(cli: &Cli) -> Result<i32> {
    let cache = &cli.modulus_cache;
    let report = match &cli.command {
        Command::Verify(args) => cmd_verify(args, cache)?,
        Command::Invert(args) => cmd_invert(args, cache)?,
        Command::Enumerate(args) => cmd_enumerate(args, cache)?,
        Command::ResultantCheck(args) => cmd_resultant_check(args, cache)?,
        Command::Interpolate(args) => cmd_interpolate(args, cache)?,
        Command::Check(args) => cmd_check(args, cache)?,
    };
    let rendered = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report)
            .map_err(|e| Error::Parse(format!("report serialization: {e}")))?,
        Format::Text => render_text(&report),
    };
    println!("{rendered}");
    Ok(if report.ok { 0 } else { 1 })
}

/// Parse argv and run; returns the process exit code (0 = expectations
/// matched, 1 = theorem-contradicting observation, 2 = usage error).
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Contract(_) | Error::NotAPermutation => 1,
                _ => 2,
            }
        }
    }
}
