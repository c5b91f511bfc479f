//! Command-line surface: parse a section or hyperplane, run the requested
//! analysis, and emit a text or JSON report.
//!
//! Exit codes: `0` success, `1` invalid input or I/O failure, `2` internal
//! inconsistency — the classifier and the ideal oracle disagree, a sweep
//! records failures, or a cross-check that is provably impossible to fail
//! fails anyway. Exit 2 existing is the point: divergence must be loud.
//!
//! JSON reports are canonical: object keys are emitted in sorted order and
//! all coordinates are normalized, so parsing a report and re-serializing
//! it is byte-identical.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::classify::{classify_section, verdict, ZeroSchemeReport};
use crate::error::{Error, Result};
use crate::exactalg::Field;
use crate::flagcount::{count_hyperplane_section, sweep_verify, CountReport, SweepMode, SweepSummary};
use crate::multipoly::oracle::{oracle_classify, oracle_classify_bounded, IdealOracleReport};
use crate::multipoly::groebner::hilbert_function;
use crate::sections::{
    hyperplane_to_section, parse_hyperplane, parse_section, section_to_hyperplane, HyperplaneP7,
    SectionMatrix,
};

/// Exact classification of hyperplane sections of the flag threefold.
#[derive(Debug, Parser)]
#[command(name = "flagsections", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the zero scheme of a section and describe the corresponding
    /// hyperplane section of the flag threefold.
    Classify(InputArgs),
    /// Re-derive the classification through the Groebner/Hilbert/point-count
    /// oracle and report whether it agrees with the eigenstructure route.
    Oracle(OracleArgs),
    /// Count the hyperplane section over a finite field by brute-force flag
    /// enumeration and compare against the predicted q^2+q+1+q*N.
    Count(InputArgs),
    /// Classify every section class over F_p (or a seeded sample) while
    /// cross-checking the oracle and the count identity on each one.
    Sweep(SweepArgs),
    /// Convert between a section matrix and its hyperplane coordinates,
    /// there and back, verifying exactness.
    Roundtrip(InputArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Section as three comma-separated linear forms, e.g. "X, 2Y, 3Z".
    #[arg(long, conflicts_with = "hyperplane")]
    pub section: Option<String>,
    /// Hyperplane as eight comma-separated scalars.
    #[arg(long)]
    pub hyperplane: Option<String>,
    /// Coefficient field: "Q" or a prime p >= 5.
    #[arg(long, default_value = "Q")]
    pub field: String,
    #[arg(long, value_enum, default_value_t = OutputMode::Text)]
    pub output: OutputMode,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Largest extension degree to count points over (1..=3). Defaults to
    /// the deepest level that stays under the enumeration cap.
    #[arg(long)]
    pub depth: Option<u8>,
    /// Report the Hilbert function in degrees 0..=d_max.
    #[arg(long = "d-max", default_value_t = 5)]
    pub d_max: usize,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// The prime p of the base field F_p.
    #[arg(long)]
    pub field: String,
    /// Visit every section class (the default when --sample is absent).
    #[arg(long, conflicts_with = "sample")]
    pub exhaustive: bool,
    /// Visit this many seeded uniform random classes instead.
    #[arg(long)]
    pub sample: Option<u64>,
    /// Seed for the sample draw.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = OutputMode::Text)]
    pub output: OutputMode,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parse, run, print, and translate errors into an exit code.
pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    let mut stdout = io::stdout().lock();
    match run(&cli, &mut stdout) {
        Ok(code) => code,
        Err(Error::Inconsistency(msg)) => {
            eprintln!("internal inconsistency: {msg}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// Execute one parsed command, writing the report to `out` (or to the file
/// named by `--out`). Returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let (report, sink, code) = match &cli.command {
        Command::Classify(args) => {
            let (section, field) = resolve_section(args)?;
            let rendered = render_report(&classify_report(&section, field)?, args.output);
            (rendered, args.out.clone(), 0)
        }
        Command::Oracle(args) => {
            let (section, field) = resolve_section(&args.input)?;
            let data = oracle_report(&section, field, args.depth, args.d_max)?;
            let code = if data.agreement { 0 } else { 2 };
            (render_report(&data, args.input.output), args.input.out.clone(), code)
        }
        Command::Count(args) => {
            let (section, field) = resolve_section(args)?;
            require_finite(field, "count")?;
            let data = count_report(&section)?;
            let code = if data.report.matches() { 0 } else { 2 };
            (render_report(&data, args.output), args.out.clone(), code)
        }
        Command::Sweep(args) => {
            let field = parse_field(&args.field)?;
            require_finite(field, "sweep")?;
            let f = field.finite_field().expect("finite by the guard above");
            let mode = match args.sample {
                Some(count) => SweepMode::Sample { count },
                None => SweepMode::Exhaustive,
            };
            let summary = sweep_verify(&f, mode, args.seed)?;
            let code = if summary.failures.is_empty() { 0 } else { 2 };
            (render_report(&summary, args.output), args.out.clone(), code)
        }
        Command::Roundtrip(args) => {
            let data = roundtrip_report(args)?;
            let code = if data.exact { 0 } else { 2 };
            (render_report(&data, args.output), args.out.clone(), code)
        }
    };
    match sink {
        Some(path) => fs::write(path, report.as_bytes())?,
        None => out.write_all(report.as_bytes())?,
    }
    Ok(code)
}

fn parse_field(text: &str) -> Result<Field> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(Field::Rational);
    }
    let p: u64 = t
        .parse()
        .map_err(|_| Error::InvalidInput(format!("field must be \"Q\" or a prime, got {t:?}")))?;
    Field::prime(p)
}

fn require_finite(field: Field, command: &str) -> Result<()> {
    if field.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "{command} enumerates points and needs a finite field, not Q"
        )))
    }
}

/// Exactly one of --section/--hyperplane, parsed over --field.
fn resolve_section(args: &InputArgs) -> Result<(SectionMatrix, Field)> {
    let field = parse_field(&args.field)?;
    let section = match (&args.section, &args.hyperplane) {
        (Some(s), None) => parse_section(s, &field)?,
        (None, Some(h)) => hyperplane_to_section(&parse_hyperplane(h, &field)?),
        _ => {
            return Err(Error::InvalidInput(
                "give exactly one of --section or --hyperplane".into(),
            ))
        }
    };
    if section.is_scalar() {
        return Err(Error::ScalarSection);
    }
    Ok((section, field))
}

/// A report that can print itself both ways.
trait Report {
    fn text(&self) -> String;
    fn value(&self) -> Value;
}

fn render_report(r: &dyn Report, mode: OutputMode) -> String {
    match mode {
        OutputMode::Text => r.text(),
        OutputMode::Json => {
            let mut s = r.value().to_string();
            s.push('\n');
            s
        }
    }
}

fn field_name(field: Field) -> String {
    match field.order() {
        None => "Q".into(),
        Some(q) => format!("F_{q}"),
    }
}

fn hyperplane_coords(h: &HyperplaneP7) -> Vec<String> {
    h.normalized().coords().iter().map(|c| c.to_string()).collect()
}

struct ClassifyData {
    field: Field,
    report: ZeroSchemeReport,
    hyperplane: HyperplaneP7,
}

fn classify_report(section: &SectionMatrix, field: Field) -> Result<ClassifyData> {
    Ok(ClassifyData {
        field,
        report: classify_section(section)?,
        hyperplane: section_to_hyperplane(section)?,
    })
}

impl Report for ClassifyData {
    fn text(&self) -> String {
        let v = verdict(&self.report);
        let r = &self.report;
        let mut s = String::new();
        s.push_str(&format!(
            "section [{}] over {}\n",
            r.section.render(),
            field_name(self.field)
        ));
        s.push_str(&format!("type {} — {}\n", v.type_letter, v.kind));
        s.push_str(&format!("zero scheme: {}\n", r.scheme_type.describe()));
        s.push_str(&format!("  charpoly: {}\n", r.charpoly));
        for orbit in &r.orbits {
            s.push_str(&format!(
                "  factor {} (degree {}, multiplicity {})\n",
                orbit.factor, orbit.degree, orbit.multiplicity
            ));
        }
        for (pt, mult) in &r.points {
            s.push_str(&format!("  point {pt} with multiplicity {mult}\n"));
        }
        if let Some(line) = &r.line {
            s.push_str(&format!("  line {{{line} = 0}}\n"));
        }
        if let Some(pt) = &r.embedded_point {
            s.push_str(&format!("  embedded point {pt}\n"));
        }
        s.push_str("components:\n");
        for c in &v.components {
            s.push_str(&format!("  - {c}\n"));
        }
        s.push_str(&format!(
            "hyperplane [{}]\n",
            hyperplane_coords(&self.hyperplane).join(", ")
        ));
        if let (Some(n), Some(h)) = (v.reduced_points, v.hyperplane_points) {
            s.push_str(&format!(
                "counts over {}: reduced zero locus {n}, hyperplane section {h}\n",
                field_name(self.field)
            ));
        }
        s
    }

    fn value(&self) -> Value {
        let v = verdict(&self.report);
        let r = &self.report;
        let orbits: Vec<Value> = r
            .orbits
            .iter()
            .map(|o| {
                json!({
                    "factor": o.factor.to_string(),
                    "degree": o.degree,
                    "multiplicity": o.multiplicity,
                    "points": o.points.as_ref().map(|pts| {
                        pts.iter().map(|p| p.to_string()).collect::<Vec<_>>()
                    }),
                })
            })
            .collect();
        json!({
            "command": "classify",
            "field": field_name(self.field),
            "section": r.section.render(),
            "hyperplane": hyperplane_coords(&self.hyperplane),
            "type": v.type_letter.to_string(),
            "surface": v.kind.to_string(),
            "degrees": v.kind.degrees(),
            "description": v.description,
            "components": v.components,
            "charpoly": r.charpoly.to_string(),
            "charpoly_pattern": r.charpoly_pattern(),
            "orbits": orbits,
            "points": r.points.iter().map(|(p, m)| {
                json!({"point": p.to_string(), "multiplicity": m})
            }).collect::<Vec<_>>(),
            "line": r.line.as_ref().map(|l| l.to_string()),
            "embedded_point": r.embedded_point.as_ref().map(|p| p.to_string()),
            "reduced_points": v.reduced_points.map(|n| n as u64),
            "hyperplane_points": v.hyperplane_points.map(|n| n as u64),
        })
    }
}

struct OracleData {
    field: Field,
    classifier_letter: char,
    oracle: IdealOracleReport,
    hilbert: Vec<usize>,
    d_max: usize,
    agreement: bool,
    section: SectionMatrix,
}

fn oracle_report(
    section: &SectionMatrix,
    field: Field,
    depth: Option<u8>,
    d_max: usize,
) -> Result<OracleData> {
    if d_max > 12 {
        return Err(Error::InvalidInput("--d-max larger than 12 is never informative".into()));
    }
    let classifier = classify_section(section)?;
    let oracle = match depth {
        Some(k) => {
            if !(1..=3).contains(&k) {
                return Err(Error::InvalidInput("--depth must be 1, 2, or 3".into()));
            }
            oracle_classify_bounded(section, k)?
        }
        None => oracle_classify(section)?,
    };
    let agreement = oracle.outcome.type_letter() == Some(classifier.scheme_type.letter());
    let hilbert = hilbert_function(&oracle.groebner_basis, d_max);
    Ok(OracleData {
        field,
        classifier_letter: classifier.scheme_type.letter(),
        oracle,
        hilbert,
        d_max,
        agreement,
        section: section.clone(),
    })
}

impl Report for OracleData {
    fn text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!(
            "section [{}] over {}\n",
            self.section.render(),
            field_name(self.field)
        ));
        s.push_str(&format!("classifier: type {}\n", self.classifier_letter));
        s.push_str(&format!("oracle:     {}\n", self.oracle.outcome));
        s.push_str(&format!(
            "agreement:  {}\n",
            if self.agreement { "yes" } else { "NO — divergence" }
        ));
        s.push_str("groebner basis:\n");
        for g in &self.oracle.groebner_basis {
            s.push_str(&format!("  - {g}\n"));
        }
        s.push_str(&format!(
            "hilbert function (degrees 0..={}): {}\n",
            self.d_max,
            self.hilbert
                .iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        ));
        match &self.oracle.line_factor {
            Some(l) => s.push_str(&format!("common linear factor: {l}\n")),
            None => s.push_str("common linear factor: none\n"),
        }
        if !self.oracle.point_counts.is_empty() {
            let q = self.field.order().expect("oracle runs over finite fields");
            let counts = self
                .oracle
                .point_counts
                .iter()
                .map(|(k, n)| format!("F_{}^{k} -> {n}", q))
                .collect::<Vec<_>>()
                .join(", ");
            s.push_str(&format!("point counts: {counts}\n"));
        }
        s
    }

    fn value(&self) -> Value {
        json!({
            "command": "oracle",
            "field": field_name(self.field),
            "section": self.section.render(),
            "classifier_type": self.classifier_letter.to_string(),
            "oracle_outcome": self.oracle.outcome.to_string(),
            "agreement": self.agreement,
            "groebner_basis": self.oracle.groebner_basis.iter()
                .map(|g| g.to_string()).collect::<Vec<_>>(),
            "hilbert": self.hilbert,
            "line_factor": self.oracle.line_factor.as_ref().map(|l| l.to_string()),
            "point_counts": self.oracle.point_counts.iter()
                .map(|(k, n)| (k.to_string(), json!(n)))
                .collect::<serde_json::Map<_, _>>(),
        })
    }
}

struct CountData {
    field: Field,
    section: SectionMatrix,
    report: CountReport,
}

fn count_report(section: &SectionMatrix) -> Result<CountData> {
    Ok(CountData {
        field: section.field(),
        section: section.clone(),
        report: count_hyperplane_section(section)?,
    })
}

impl Report for CountData {
    fn text(&self) -> String {
        let r = &self.report;
        let q = r.q;
        format!(
            "section [{}] over {}\n\
             flags on the hyperplane: {} of {}\n\
             reduced zero locus: {} rational points\n\
             predicted: {} + {}*{} = {}\n\
             agreement: {}\n",
            self.section.render(),
            field_name(self.field),
            r.on_hyperplane,
            r.flags_total,
            r.reduced_points,
            q * q + q + 1,
            q,
            r.reduced_points,
            r.predicted,
            if r.matches() { "yes" } else { "NO — divergence" }
        )
    }

    fn value(&self) -> Value {
        let r = &self.report;
        json!({
            "command": "count",
            "field": field_name(self.field),
            "section": self.section.render(),
            "q": r.q,
            "flags_total": r.flags_total,
            "on_hyperplane": r.on_hyperplane,
            "reduced_points": r.reduced_points,
            "predicted": r.predicted,
            "match": r.matches(),
        })
    }
}

impl Report for SweepSummary {
    fn text(&self) -> String {
        let mut s = String::new();
        let mode = if self.exhaustive {
            "exhaustive".to_string()
        } else {
            format!("sample, seed {}", self.seed.expect("sampled sweeps carry a seed"))
        };
        s.push_str(&format!("sweep over F_{} ({mode}): {} classes\n", self.q, self.classes));
        let tallies = self
            .tallies
            .iter()
            .map(|(letter, n)| format!("{letter}={n}"))
            .collect::<Vec<_>>()
            .join(" ");
        s.push_str(&format!("tallies: {tallies}\n"));
        s.push_str(&format!(
            "oracle agreements: {}/{}\n",
            self.oracle_agreements, self.classes
        ));
        s.push_str(&format!(
            "count identity matches: {}/{}\n",
            self.count_matches, self.classes
        ));
        if self.failures.is_empty() {
            s.push_str("failures: none\n");
        } else {
            s.push_str(&format!("failures: {}\n", self.failures.len()));
            for f in &self.failures {
                s.push_str(&format!("  ! {f}\n"));
            }
        }
        s
    }

    fn value(&self) -> Value {
        json!({
            "command": "sweep",
            "field": format!("F_{}", self.q),
            "mode": if self.exhaustive { "exhaustive" } else { "sample" },
            "seed": self.seed,
            "classes": self.classes,
            "tallies": self.tallies.iter()
                .map(|(letter, n)| (letter.to_string(), json!(n)))
                .collect::<serde_json::Map<_, _>>(),
            "oracle_agreements": self.oracle_agreements,
            "count_matches": self.count_matches,
            "failures": self.failures,
        })
    }
}

struct RoundtripData {
    field: Field,
    section: SectionMatrix,
    hyperplane: HyperplaneP7,
    reconstructed: SectionMatrix,
    exact: bool,
}

fn roundtrip_report(args: &InputArgs) -> Result<RoundtripData> {
    let field = parse_field(&args.field)?;
    let (section, hyperplane) = match (&args.section, &args.hyperplane) {
        (Some(s), None) => {
            let a = parse_section(s, &field)?;
            let h = section_to_hyperplane(&a)?;
            (a, h)
        }
        (None, Some(h)) => {
            let h = parse_hyperplane(h, &field)?;
            (hyperplane_to_section(&h), h)
        }
        _ => {
            return Err(Error::InvalidInput(
                "give exactly one of --section or --hyperplane".into(),
            ))
        }
    };
    let reconstructed = hyperplane_to_section(&section_to_hyperplane(&section)?);
    // The cycle must reproduce the hyperplane exactly, and the reconstructed
    // section must present the same zero scheme (it is the trace-zero
    // representative of the same class).
    let again = section_to_hyperplane(&reconstructed)?;
    let exact = again.normalized().coords() == hyperplane.normalized().coords()
        && classify_section(&section)?.scheme_type
            == classify_section(&reconstructed)?.scheme_type;
    Ok(RoundtripData {
        field,
        section,
        hyperplane,
        reconstructed,
        exact,
    })
}

impl Report for RoundtripData {
    fn text(&self) -> String {
        format!(
            "section [{}] over {}\n\
             hyperplane [{}]\n\
             reconstructed section [{}]\n\
             round-trip exact: {}\n",
            self.section.render(),
            field_name(self.field),
            hyperplane_coords(&self.hyperplane).join(", "),
            self.reconstructed.render(),
            if self.exact { "yes" } else { "NO — divergence" }
        )
    }

    fn value(&self) -> Value {
        json!({
            "command": "roundtrip",
            "field": field_name(self.field),
            "section": self.section.render(),
            "hyperplane": hyperplane_coords(&self.hyperplane),
            "reconstructed_section": self.reconstructed.render(),
            "match": self.exact,
        })
    }
}
