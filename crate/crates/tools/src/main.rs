//! `gentle` — command-line front end for graded gentle algebras, their
//! twisted complexes, and the surface dictionary.
//!
//! Exit codes follow the grep convention: 0 for a positive outcome
//! (valid file, facts pass, witnesses found, value computed), 1 for an
//! honest negative (invalid object, fact failure, empty search), 2 for
//! unusable input (unreadable file, bad schema, malformed word, bad
//! modulus).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use gentle_core::derived::{exceptional_search, silting_search, SearchReport};
use gentle_core::field::{is_prime_u64, PrimeField};
use gentle_core::path::Algebra;
use gentle_core::scenario::{scenarios, verify_all, verify_scenario, FactOutcome, Provenance};
use gentle_core::surface::SurfaceInvariants;
use gentle_core::twist::{cycle_twist, grading_invariant, CyclicWalk};
use gentle_core::word::{format_word, parse_word, string_hom_fast, string_hom_fast_in};

use gentle_tools::formats;
use gentle_tools::report::{machine_line, profile_value, OutputFormat};

#[derive(Parser)]
#[command(
    name = "gentle",
    version,
    about = "Graded gentle algebras, twisted complexes, and surface models"
)]
struct Cli {
    /// Output format: a human table or single-line JSON reports.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,

    /// Coefficient field for morphism-space computations.
    #[arg(long, global = true, value_enum, default_value_t = FieldChoice::Rationals)]
    field: FieldChoice,

    /// Modulus for `--field prime`.
    #[arg(long, global = true, value_name = "P")]
    prime: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FieldChoice {
    Rationals,
    Prime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FileKind {
    Presentation,
    ArcSystem,
    Complex,
    Word,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SearchKind {
    Exceptional,
    Silting,
}

/// Where the working algebra comes from: a built-in scenario or a
/// presentation file.
#[derive(Args)]
struct AlgebraSource {
    /// Built-in scenario name (see `gentle verify` for the list).
    #[arg(long, value_name = "NAME", conflicts_with = "presentation")]
    scenario: Option<String>,

    /// Path to a gentle.presentation/1 file.
    #[arg(long, value_name = "FILE")]
    presentation: Option<PathBuf>,
}

impl AlgebraSource {
    fn load(&self) -> Result<Algebra> {
        let pres = match (&self.scenario, &self.presentation) {
            (Some(name), None) => scenarios()
                .into_iter()
                .find(|s| s.name == name.as_str())
                .map(|s| s.presentation)
                .ok_or_else(|| {
                    anyhow!(
                        "unknown scenario {name:?}; known scenarios: {}",
                        scenario_names().join(", ")
                    )
                })?,
            (None, Some(path)) => {
                let text = read_file(path)?;
                formats::parse_presentation(&text)?
                    .to_core()
                    .with_context(|| format!("in {}", path.display()))?
            }
            _ => bail!("pass exactly one of --scenario or --presentation"),
        };
        Algebra::new(pres).map_err(|e| anyhow!("{e}"))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a file against its schema and the structural rules.
    Validate {
        /// What the file claims to be.
        #[arg(long, value_enum)]
        kind: FileKind,
        /// File to check.
        file: PathBuf,
        /// Algebra context; required for complex and word files.
        #[command(flatten)]
        algebra: AlgebraSource,
    },

    /// List the basis paths of an algebra with endpoints and degrees.
    Basis {
        #[command(flatten)]
        algebra: AlgebraSource,
    },

    /// Surface invariants of an algebra, or of a declared arc system.
    Invariants {
        #[command(flatten)]
        algebra: AlgebraSource,
        /// Read a gentle.arc-system/1 file instead of reconstructing
        /// from an algebra.
        #[arg(long, value_name = "FILE", conflicts_with_all = ["scenario", "presentation"])]
        arc_system: Option<PathBuf>,
    },

    /// Twists of closed walks and the gcd invariant of the grading.
    Twist {
        #[command(flatten)]
        algebra: AlgebraSource,
        /// Closed walk such as "a1+ b1-"; repeat for several walks.
        #[arg(long = "walk", value_name = "WALK", required = true)]
        walks: Vec<String>,
    },

    /// Graded morphism-space dimensions between two words.
    Hom {
        #[command(flatten)]
        algebra: AlgebraSource,
        /// Source word, e.g. "e(1) @0" or "b1+ a2+ @2".
        x: String,
        /// Target word.
        y: String,
    },

    /// Bounded search for exceptional words or silting collections.
    Search {
        #[command(flatten)]
        algebra: AlgebraSource,
        /// What to search for.
        #[arg(long, value_enum)]
        kind: SearchKind,
        /// Longest word considered.
        #[arg(long, default_value_t = 8)]
        max_letters: usize,
        /// Largest |shift| considered.
        #[arg(long, default_value_t = 3)]
        max_offset: i64,
        /// Cone-expansion depth for generation certificates (silting only).
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Keep only words right-orthogonal to this one (exceptional only).
        #[arg(long, value_name = "WORD")]
        orthogonal_to: Option<String>,
    },

    /// Recheck the recorded facts of the built-in scenarios.
    Verify {
        /// Restrict to one scenario by name.
        #[arg(long, value_name = "NAME")]
        scenario: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let code = match run(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    };
    // A reader that hangs up early (piping into `head`) must not turn a
    // finished computation into a panic.
    let mut stdout = std::io::stdout();
    if let Err(e) = stdout.write_all(out.as_bytes()).and_then(|()| stdout.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: writing output: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}

fn run(cli: Cli, out: &mut String) -> Result<u8> {
    let field = resolve_field(cli.field, cli.prime)?;
    let fmt = cli.format;
    match cli.command {
        Command::Validate {
            kind,
            file,
            algebra,
        } => cmd_validate(out, fmt, kind, &file, &algebra),
        Command::Basis { algebra } => cmd_basis(out, fmt, &algebra),
        Command::Invariants {
            algebra,
            arc_system,
        } => cmd_invariants(out, fmt, &algebra, arc_system.as_deref()),
        Command::Twist { algebra, walks } => cmd_twist(out, fmt, &algebra, &walks),
        Command::Hom { algebra, x, y } => cmd_hom(out, fmt, &algebra, &x, &y, field),
        Command::Search {
            algebra,
            kind,
            max_letters,
            max_offset,
            depth,
            orthogonal_to,
        } => cmd_search(
            out,
            fmt,
            &algebra,
            kind,
            max_letters,
            max_offset,
            depth,
            orthogonal_to.as_deref(),
        ),
        Command::Verify { scenario } => cmd_verify(out, fmt, scenario.as_deref()),
    }
}

fn resolve_field(choice: FieldChoice, prime: Option<u64>) -> Result<Option<u64>> {
    match (choice, prime) {
        (FieldChoice::Rationals, None) => Ok(None),
        (FieldChoice::Rationals, Some(_)) => bail!("--prime requires --field prime"),
        (FieldChoice::Prime, None) => bail!("--field prime requires --prime <P>"),
        (FieldChoice::Prime, Some(p)) => {
            if !is_prime_u64(p) {
                bail!("{p} is not a prime modulus");
            }
            Ok(Some(p))
        }
    }
}

/// `println!` into the output buffer (String writes cannot fail).
macro_rules! outln {
    ($dst:expr, $($arg:tt)*) => {
        writeln!($dst, $($arg)*).expect("writing to a String cannot fail")
    };
}

fn scenario_names() -> Vec<&'static str> {
    scenarios().into_iter().map(|s| s.name).collect()
}

fn read_file(path: &std::path::Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Prints a validate verdict and returns the exit code.
fn validated(
    out: &mut String,
    fmt: OutputFormat,
    schema: &str,
    outcome: std::result::Result<(String, serde_json::Value), String>,
) -> Result<u8> {
    match outcome {
        Ok((summary, data)) => {
            match fmt {
                OutputFormat::Table => outln!(out, "valid {schema}: {summary}"),
                OutputFormat::Machine => out.push_str(&machine_line(
                    "validate",
                    "valid",
                    json!({"file_schema": schema, "detail": data}),
                )),
            }
            Ok(0)
        }
        Err(reason) => {
            match fmt {
                OutputFormat::Table => outln!(out, "invalid: {reason}"),
                OutputFormat::Machine => out.push_str(&machine_line(
                    "validate",
                    "invalid",
                    json!({"file_schema": schema, "reason": reason}),
                )),
            }
            Ok(1)
        }
    }
}

fn cmd_validate(
    out: &mut String,
    fmt: OutputFormat,
    kind: FileKind,
    file: &std::path::Path,
    algebra: &AlgebraSource,
) -> Result<u8> {
    let text = read_file(file)?;
    match kind {
        FileKind::Presentation => {
            let f = formats::parse_presentation(&text)?;
            let outcome = match f.to_core() {
                Err(e) => Err(format!("{e:#}")),
                Ok(pres) => {
                    let nv = pres.quiver.vertex_names.len();
                    let na = pres.quiver.arrows.len();
                    let nr = pres.relations.len();
                    match Algebra::new(pres) {
                        Ok(alg) => Ok((
                            format!(
                                "{nv} vertices, {na} arrows, {nr} relations, dimension {}",
                                alg.dimension()
                            ),
                            json!({
                                "vertices": nv,
                                "arrows": na,
                                "relations": nr,
                                "dimension": alg.dimension(),
                            }),
                        )),
                        // Gentle but with unbounded nonzero paths: the
                        // presentation itself is still well-formed.
                        Err(e) => Ok((
                            format!("{nv} vertices, {na} arrows, {nr} relations; {e}"),
                            json!({
                                "vertices": nv,
                                "arrows": na,
                                "relations": nr,
                                "dimension": serde_json::Value::Null,
                            }),
                        )),
                    }
                }
            };
            validated(out, fmt, formats::PRESENTATION_SCHEMA, outcome)
        }
        FileKind::ArcSystem => {
            let f = formats::parse_arc_system(&text)?;
            let outcome = match f.to_core().map_err(|e| format!("{e:#}")).and_then(|sys| {
                sys.validate().map_err(|e| format!("{e}"))?;
                sys.invariants().map_err(|e| format!("{e}"))
            }) {
                Err(reason) => Err(reason),
                Ok(inv) => Ok((invariants_text(&inv), invariants_value(&inv))),
            };
            validated(out, fmt, formats::ARC_SYSTEM_SCHEMA, outcome)
        }
        FileKind::Complex => {
            let alg = algebra.load()?;
            let f = formats::parse_complex(&text)?;
            let outcome = match f
                .to_core(&alg)
                .map_err(|e| format!("{e:#}"))
                .and_then(|x| x.validate(&alg).map(|()| x).map_err(|e| format!("{e}")))
            {
                Err(reason) => Err(reason),
                Ok(x) => Ok((
                    format!("{} summands, {} entries", x.summands.len(), x.entries.len()),
                    json!({
                        "summands": x.summands.len(),
                        "entries": x.entries.len(),
                        "class": x.k0_class(&alg),
                    }),
                )),
            };
            validated(out, fmt, formats::COMPLEX_SCHEMA, outcome)
        }
        FileKind::Word => {
            let alg = algebra.load()?;
            let f = formats::parse_word_file(&text)?;
            let outcome = match f
                .to_core(&alg)
                .map_err(|e| format!("{e:#}"))
                .and_then(|w| w.validate(&alg).map(|()| w).map_err(|e| format!("{e}")))
            {
                Err(reason) => Err(reason),
                Ok(w) => Ok((
                    format_word(&alg, &w),
                    json!({"word": format_word(&alg, &w), "letters": w.letters.len()}),
                )),
            };
            validated(out, fmt, formats::WORD_SCHEMA, outcome)
        }
    }
}

fn cmd_basis(out: &mut String, fmt: OutputFormat, algebra: &AlgebraSource) -> Result<u8> {
    let alg = algebra.load()?;
    let q = &alg.presentation().quiver;
    match fmt {
        OutputFormat::Table => {
            outln!(out, "dimension {}", alg.dimension());
            for p in alg.path_ids() {
                let d = alg.path(p);
                outln!(
                    out,
                    "{}\t{} -> {}\tdegree {}",
                    alg.path_name(p),
                    q.vertex_names[d.source],
                    q.vertex_names[d.target],
                    d.degree
                );
            }
        }
        OutputFormat::Machine => {
            let paths: Vec<_> = alg
                .path_ids()
                .map(|p| {
                    let d = alg.path(p);
                    json!({
                        "name": alg.path_name(p),
                        "source": q.vertex_names[d.source],
                        "target": q.vertex_names[d.target],
                        "degree": d.degree,
                    })
                })
                .collect();
            out.push_str(&machine_line(
                "basis",
                "ok",
                json!({"dimension": alg.dimension(), "paths": paths}),
            ));
        }
    }
    Ok(0)
}

fn invariants_text(inv: &SurfaceInvariants) -> String {
    format!(
        "genus {}, {} boundary components, marked points per boundary {:?}, euler characteristic {}",
        inv.genus, inv.boundary_components, inv.marked_per_boundary, inv.euler_characteristic
    )
}

fn invariants_value(inv: &SurfaceInvariants) -> serde_json::Value {
    json!({
        "genus": inv.genus,
        "boundary_components": inv.boundary_components,
        "marked_per_boundary": inv.marked_per_boundary,
        "euler_characteristic": inv.euler_characteristic,
    })
}

fn cmd_invariants(
    out: &mut String,
    fmt: OutputFormat,
    algebra: &AlgebraSource,
    arc_system: Option<&std::path::Path>,
) -> Result<u8> {
    let computed = match arc_system {
        Some(path) => {
            let text = read_file(path)?;
            let sys = formats::parse_arc_system(&text)?.to_core()?;
            sys.invariants().map_err(|e| format!("{e}"))
        }
        None => {
            let alg = algebra.load()?;
            gentle_core::surface::algebra_to_surface_invariants(&alg).map_err(|e| format!("{e}"))
        }
    };
    match computed {
        Ok(inv) => {
            match fmt {
                OutputFormat::Table => {
                    outln!(out, "genus {}", inv.genus);
                    outln!(out, "boundary components {}", inv.boundary_components);
                    outln!(out, "marked points per boundary {:?}", inv.marked_per_boundary);
                    outln!(out, "euler characteristic {}", inv.euler_characteristic);
                }
                OutputFormat::Machine => {
                    out.push_str(&machine_line("invariants", "ok", invariants_value(&inv)));
                }
            }
            Ok(0)
        }
        Err(reason) => {
            match fmt {
                OutputFormat::Table => outln!(out, "no surface model: {reason}"),
                OutputFormat::Machine => out.push_str(&machine_line(
                    "invariants",
                    "invalid",
                    json!({"reason": reason}),
                )),
            }
            Ok(1)
        }
    }
}

fn parse_walk(alg: &Algebra, text: &str) -> Result<CyclicWalk> {
    let mut steps = Vec::new();
    for token in text.split_whitespace() {
        let (name, direct) = match token.strip_suffix('+') {
            Some(name) => (name, true),
            None => match token.strip_suffix('-') {
                Some(name) => (name, false),
                None => bail!("walk step {token:?} must end in '+' or '-'"),
            },
        };
        steps.push((name, direct));
    }
    if steps.is_empty() {
        bail!("walk {text:?} has no steps");
    }
    CyclicWalk::from_names(alg, &steps)
        .ok_or_else(|| anyhow!("walk {text:?} names an unknown arrow"))
}

fn cmd_twist(out: &mut String, fmt: OutputFormat, algebra: &AlgebraSource, walks: &[String]) -> Result<u8> {
    let alg = algebra.load()?;
    let parsed = walks
        .iter()
        .map(|w| Ok((w.as_str(), parse_walk(&alg, w)?)))
        .collect::<Result<Vec<_>>>()?;
    let twists = parsed
        .iter()
        .map(|(text, walk)| Ok((*text, cycle_twist(&alg, walk).map_err(|e| anyhow!("{e}"))?)))
        .collect::<Result<Vec<_>>>()?;
    let cycles: Vec<CyclicWalk> = parsed.iter().map(|(_, w)| w.clone()).collect();
    let invariant = grading_invariant(&alg, &cycles).map_err(|e| anyhow!("{e}"))?;
    match fmt {
        OutputFormat::Table => {
            for (text, t) in &twists {
                outln!(out, "{text}  twist {t}");
            }
            outln!(out, "grading invariant {invariant}");
        }
        OutputFormat::Machine => {
            let rows: Vec<_> = twists
                .iter()
                .map(|(text, t)| json!({"walk": text, "twist": t}))
                .collect();
            out.push_str(&machine_line(
                "twist",
                "ok",
                json!({"twists": rows, "invariant": invariant}),
            ));
        }
    }
    Ok(0)
}

fn cmd_hom(
    out: &mut String,
    fmt: OutputFormat,
    algebra: &AlgebraSource,
    x: &str,
    y: &str,
    field: Option<u64>,
) -> Result<u8> {
    let alg = algebra.load()?;
    let xw = parse_word(&alg, x).map_err(|e| anyhow!("word {x:?}: {e}"))?;
    let yw = parse_word(&alg, y).map_err(|e| anyhow!("word {y:?}: {e}"))?;
    let profile: BTreeMap<i64, usize> = match field {
        None => string_hom_fast(&alg, &xw, &yw),
        Some(p) => {
            let ctx = PrimeField::new(p).map_err(|e| anyhow!("{e}"))?;
            string_hom_fast_in(&ctx, &alg, &xw, &yw)
        }
    }
    .map_err(|e| anyhow!("{e}"))?;
    let total: usize = profile.values().sum();
    let field_name = match field {
        None => "rationals".to_string(),
        Some(p) => format!("prime {p}"),
    };
    match fmt {
        OutputFormat::Table => {
            outln!(
                out,
                "hom {} -> {} over {field_name}",
                format_word(&alg, &xw),
                format_word(&alg, &yw)
            );
            if profile.is_empty() {
                outln!(out, "(no nonzero morphism spaces)");
            } else {
                for (d, n) in &profile {
                    outln!(out, "degree {d}: {n}");
                }
            }
            outln!(out, "total {total}");
        }
        OutputFormat::Machine => {
            out.push_str(&machine_line(
                "hom",
                "ok",
                json!({
                    "x": format_word(&alg, &xw),
                    "y": format_word(&alg, &yw),
                    "field": field_name,
                    "profile": profile_value(&profile),
                    "total": total,
                }),
            ));
        }
    }
    Ok(0)
}

fn search_value(report: &SearchReport) -> serde_json::Value {
    json!({
        "kind": report.kind,
        "bounds": {
            "max_letters": report.bounds.max_letters,
            "max_offset": report.bounds.max_offset,
            "depth": report.bounds.depth,
        },
        "words_enumerated": report.words_enumerated,
        "candidates_examined": report.candidates_examined,
        "witnesses": report.witnesses,
        "completeness": report.completeness,
    })
}

fn cmd_search(
    out: &mut String,
    fmt: OutputFormat,
    algebra: &AlgebraSource,
    kind: SearchKind,
    max_letters: usize,
    max_offset: i64,
    depth: usize,
    orthogonal_to: Option<&str>,
) -> Result<u8> {
    let alg = algebra.load()?;
    let report = match kind {
        SearchKind::Exceptional => {
            let orth = orthogonal_to
                .map(|s| parse_word(&alg, s).map_err(|e| anyhow!("word {s:?}: {e}")))
                .transpose()?;
            exceptional_search(&alg, max_letters, max_offset, orth.as_ref())
                .map_err(|e| anyhow!("{e}"))?
        }
        SearchKind::Silting => {
            if orthogonal_to.is_some() {
                bail!("--orthogonal-to only applies to --kind exceptional");
            }
            silting_search(&alg, max_letters, max_offset, depth).map_err(|e| anyhow!("{e}"))?
        }
    };
    match fmt {
        OutputFormat::Table => {
            let depth_note = match report.bounds.depth {
                Some(d) => format!(", depth {d}"),
                None => String::new(),
            };
            outln!(
                out,
                "search {}: max letters {}, max offset {}{depth_note}",
                report.kind,
                report.bounds.max_letters,
                report.bounds.max_offset
            );
            outln!(out, "words enumerated {}", report.words_enumerated);
            outln!(out, "candidates examined {}", report.candidates_examined);
            outln!(out, "witnesses {}", report.witnesses.len());
            for w in &report.witnesses {
                outln!(out, "witness: {w}");
            }
            outln!(out, "completeness: {}", report.completeness);
        }
        OutputFormat::Machine => {
            out.push_str(&machine_line("search", "ok", search_value(&report)));
        }
    }
    Ok(if report.witnesses.is_empty() { 1 } else { 0 })
}

fn provenance_name(p: &Provenance) -> &'static str {
    match p {
        Provenance::Pinned => "pinned",
        Provenance::Recomputed => "recomputed",
    }
}

fn fact_value(f: &FactOutcome) -> serde_json::Value {
    json!({
        "scenario": f.scenario,
        "fact": f.fact,
        "provenance": provenance_name(&f.provenance),
        "pass": f.pass,
        "expected": f.expected,
        "computed": f.computed,
    })
}

fn cmd_verify(out: &mut String, fmt: OutputFormat, scenario: Option<&str>) -> Result<u8> {
    let outcomes = match scenario {
        None => verify_all(),
        Some(name) => verify_scenario(name).ok_or_else(|| {
            anyhow!(
                "unknown scenario {name:?}; known scenarios: {}",
                scenario_names().join(", ")
            )
        })?,
    };
    let failures = outcomes.iter().filter(|f| !f.pass).count();
    match fmt {
        OutputFormat::Table => {
            for f in &outcomes {
                if f.pass {
                    outln!(
                        out,
                        "PASS [{}] {} ({})",
                        f.scenario,
                        f.fact,
                        provenance_name(&f.provenance)
                    );
                } else {
                    outln!(
                        out,
                        "FAIL [{}] {} ({}): expected {}, computed {}",
                        f.scenario,
                        f.fact,
                        provenance_name(&f.provenance),
                        f.expected,
                        f.computed
                    );
                }
            }
            outln!(out, "{} facts, {} failures", outcomes.len(), failures);
        }
        OutputFormat::Machine => {
            let rows: Vec<_> = outcomes.iter().map(fact_value).collect();
            out.push_str(&machine_line(
                "verify",
                if failures == 0 { "pass" } else { "fail" },
                json!({"facts": rows, "total": outcomes.len(), "failures": failures}),
            ));
        }
    }
    Ok(if failures == 0 { 0 } else { 1 })
}
