//! Command-line front end: parsing, satisfiability, grounding, translation,
//! geometric model construction, verification, convexity probes and model
//! export.
//!
//! Exit codes: 0 success (satisfiable / model built / verification passed),
//! 1 unsatisfiable / verification failure / probe violations, 2 input or
//! restriction errors, 3 internal errors (IO).

mod formats;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use adlite::geometry::{
    build_model_for_ontology, midpoint_probe, naive_assertion_embedding, verify_against_ground,
    verify_geometric_model, BuildError, LinearMap, Q, RoleConjunctionRule,
};
use adlite::grounding::{dllite_translate, ground_ontology, GroundingConfig, GroundingMode};
use adlite::reasoner;
use adlite::syntax::{print_ontology, validate_ontology};
use adlite::temporal::{
    build_temporal_model, check_global, check_temporal_restrictions, temporal_translate,
    TemporalError,
};
use adlite::Ontology;

use formats::{
    annotation_names, parse_model, write_fact_file, write_model, write_name_table, ModelFile,
    OutputFormat,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Pairs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "adlite", version, about = "Attributed DL-Lite toolkit")]
struct Cli {
    /// Grounding mode for set-variable enumeration.
    #[arg(long, global = true, value_enum, default_value = "pairs")]
    mode: ModeArg,
    /// Cap on the annotation-element count for exhaustive enumeration.
    #[arg(long, global = true, default_value_t = 4)]
    cap: usize,
    /// Output format for models.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: FormatArg,
    /// Random seed; reserved, all commands are deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an ontology; print its canonical form.
    Parse {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide satisfiability.
    Sat {
        file: PathBuf,
        /// Write the saturated fact base as a fact file.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Ground all inclusions over the annotation domain.
    Ground {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Translate to plain Horn DL-Lite over fresh names.
    Translate {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build a convex geometric model (a temporal bundle for temporal
    /// input).
    BuildModel {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Rational matrix file for the combining map (plain input only).
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Verify a model file against an ontology.
    Verify { ontology: PathBuf, model: PathBuf },
    /// Probe midpoints of individual pairs for convexity-forced clashes.
    Probe {
        ontology: PathBuf,
        model: Option<PathBuf>,
        /// Diagnostic role-conjunction rule `R1+R2=R3` (repeatable); the
        /// left roles match any annotation, the right carries the empty
        /// one.
        #[arg(long = "conj")]
        conj: Vec<String>,
    },
    /// Re-serialize a model file.
    Export {
        model: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), Failure> {
    match path {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(p) => {
            std::fs::write(p, content).map_err(|e| fail(3, format!("{}: {e}", p.display())))
        }
    }
}

fn load_ontology(path: &Path) -> Result<Ontology, Failure> {
    let text = read_input(path)?;
    let o = adlite::parse_ontology(&text)
        .map_err(|e| fail(2, format!("{}:{e}", path.display())))?;
    let report = validate_ontology(&o);
    if !report.is_valid() {
        let mut msg = String::new();
        for v in &report.violations {
            msg.push_str(&format!("{}: {v}\n", path.display()));
        }
        return Err(fail(2, msg.trim_end().to_string()));
    }
    Ok(o)
}

fn load_map(path: &Path) -> Result<LinearMap, Failure> {
    let text = read_input(path)?;
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: Result<Vec<Q>, _> = line.split_whitespace().map(|t| t.parse::<Q>()).collect();
        rows.push(row.map_err(|e| fail(2, format!("{}: bad rational: {e}", path.display())))?);
    }
    LinearMap::new(rows).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

fn config(cli: &Cli) -> GroundingConfig {
    GroundingConfig {
        mode: match cli.mode {
            ModeArg::Exhaustive => GroundingMode::Exhaustive,
            ModeArg::Pairs => GroundingMode::PairRestricted,
        },
        cap: cli.cap,
    }
}

fn format(cli: &Cli) -> OutputFormat {
    match cli.format {
        FormatArg::Text => OutputFormat::Text,
        FormatArg::Json => OutputFormat::Json,
    }
}

fn temporal_error_code(e: &TemporalError) -> u8 {
    match e {
        TemporalError::Unsatisfiable => 1,
        _ => 2,
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    if cli.cap < 1 {
        return Err(fail(2, "--cap must be at least 1"));
    }
    let cfg = config(cli);
    match &cli.command {
        Command::Parse { file, output } => {
            let o = load_ontology(file)?;
            write_output(output.as_deref(), &print_ontology(&o))?;
            Ok(0)
        }
        Command::Sat { file, output } => {
            let o = load_ontology(file)?;
            let (plain, table) = if o.temporal() {
                let t = temporal_translate(&o, cfg)
                    .map_err(|e| fail(temporal_error_code(&e), format!("{e}")))?;
                dllite_translate(&t.ground)
            } else {
                let g = ground_ontology(&o, cfg).map_err(|e| fail(2, format!("{e}")))?;
                dllite_translate(&g)
            };
            let fb = reasoner::saturate(&plain);
            if fb.unsat {
                println!("unsatisfiable");
                if let Some(clash) = &fb.clash {
                    eprintln!("clash: {clash}");
                }
                Ok(1)
            } else {
                println!("satisfiable");
                if let Some(out) = output {
                    let i = formats::resolved_interpretation(&fb, &table);
                    write_output(Some(out), &write_fact_file(&i))?;
                }
                Ok(0)
            }
        }
        Command::Ground { file, output } => {
            let o = load_ontology(file)?;
            let g = ground_ontology(&o, cfg).map_err(|e| fail(2, format!("{e}")))?;
            write_output(output.as_deref(), &print_ontology(&g.to_ontology()))?;
            Ok(0)
        }
        Command::Translate { file, output } => {
            let o = load_ontology(file)?;
            let g = if o.temporal() {
                temporal_translate(&o, cfg)
                    .map_err(|e| fail(temporal_error_code(&e), format!("{e}")))?
                    .ground
            } else {
                ground_ontology(&o, cfg).map_err(|e| fail(2, format!("{e}")))?
            };
            let (plain, table) = dllite_translate(&g);
            let body = print_ontology(&plain.to_ontology());
            match output {
                Some(out) => {
                    write_output(Some(out), &body)?;
                    let sidecar = PathBuf::from(format!("{}.names", out.display()));
                    write_output(Some(&sidecar), &write_name_table(&table))?;
                }
                None => {
                    let mut text = body;
                    text.push_str("# name-table:\n");
                    for line in write_name_table(&table).lines() {
                        text.push_str(&format!("#   {line}\n"));
                    }
                    write_output(None, &text)?;
                }
            }
            Ok(0)
        }
        Command::BuildModel { file, output, map } => {
            let o = load_ontology(file)?;
            if o.temporal() {
                if map.is_some() {
                    return Err(fail(2, "--map is only supported for plain input"));
                }
                let report = check_temporal_restrictions(&o);
                if !report.is_ok() {
                    return Err(fail(2, format!("restriction violated: {report}")));
                }
                let built = build_temporal_model(&o, cfg)
                    .map_err(|e| fail(temporal_error_code(&e), format!("{e}")))?;
                let content = write_model(&ModelFile::Bundle(built.bundle), format(cli));
                write_output(output.as_deref(), &content)?;
                Ok(0)
            } else {
                let f = map.as_deref().map(load_map).transpose()?;
                let built = build_model_for_ontology(&o, cfg, f).map_err(|e| match e {
                    BuildError::Unsatisfiable => fail(1, "unsatisfiable"),
                    other => fail(2, format!("{other}")),
                })?;
                let content = write_model(&ModelFile::Plain(built.eta), format(cli));
                write_output(output.as_deref(), &content)?;
                Ok(0)
            }
        }
        Command::Verify { ontology, model } => {
            let o = load_ontology(ontology)?;
            let text = read_input(model)?;
            // Fact files hold finite interpretations; check those under the
            // standard semantics instead of the geometric one.
            let loaded = match parse_model(&text) {
                Ok(loaded) => loaded,
                Err(model_err) => match formats::parse_fact_file(&text) {
                    Ok(i) => {
                        if o.temporal() {
                            return Err(fail(2, "temporal ontology requires a bundle model"));
                        }
                        let report = adlite::semantics::check_model(&i, &o, cli.cap)
                            .map_err(|e| fail(2, format!("{e}")))?;
                        for f in &report.failures {
                            println!("FAIL Axiom {}: {}", f.axiom, f.detail);
                        }
                        return if report.is_model() {
                            println!("verified: finite interpretation is a model");
                            Ok(0)
                        } else {
                            Ok(1)
                        };
                    }
                    Err(_) => return Err(fail(2, format!("{model_err}"))),
                },
            };
            match loaded {
                ModelFile::Plain(eta) => {
                    if o.temporal() {
                        return Err(fail(2, "temporal ontology requires a bundle model"));
                    }
                    let report = verify_geometric_model(&eta, &o, cfg)
                        .map_err(|e| fail(2, format!("{e}")))?;
                    for f in &report.failures {
                        println!("FAIL {:?} {}", f.kind, f.detail);
                    }
                    if report.is_model() {
                        println!(
                            "verified: {} ground axioms, monotonicity, convexity",
                            report.checked
                        );
                        Ok(0)
                    } else {
                        Ok(1)
                    }
                }
                ModelFile::Bundle(bundle) => {
                    if !o.temporal() {
                        return Err(fail(2, "plain ontology requires a plain model"));
                    }
                    let t = temporal_translate(&o, cfg)
                        .map_err(|e| fail(temporal_error_code(&e), format!("{e}")))?;
                    let report = verify_against_ground(&bundle.global, &t.ground);
                    for f in &report.failures {
                        println!("FAIL {:?} {}", f.kind, f.detail);
                    }
                    let global = check_global(&bundle, &annotation_names(&o))
                        .map_err(|e| fail(2, format!("{e}")))?;
                    for v in &global.violations {
                        println!("FAIL Global {}@{}: {}", v.name, v.spec, v.detail);
                    }
                    if report.is_model() && global.is_global() {
                        println!(
                            "verified: {} ground axioms, global conditions at {} points",
                            report.checked, global.checked_points
                        );
                        Ok(0)
                    } else {
                        Ok(1)
                    }
                }
            }
        }
        Command::Probe {
            ontology,
            model,
            conj,
        } => {
            let o = load_ontology(ontology)?;
            let eta = match model {
                Some(path) => {
                    let text = read_input(path)?;
                    match parse_model(&text).map_err(|e| fail(2, format!("{e}")))? {
                        ModelFile::Plain(eta) => eta,
                        ModelFile::Bundle(b) => b.global,
                    }
                }
                None => naive_assertion_embedding(&o).map_err(|e| fail(2, format!("{e}")))?,
            };
            let rules: Vec<RoleConjunctionRule> = conj
                .iter()
                .map(|raw| parse_conj_rule(raw))
                .collect::<Result<_, _>>()?;
            let diags =
                midpoint_probe(&eta, &o, &rules, cfg).map_err(|e| fail(2, format!("{e}")))?;
            for d in &diags {
                println!(
                    "VIOLATION pair=({},{}) axiom=[{}]",
                    d.pair.0, d.pair.1, d.violated
                );
                for step in &d.chain {
                    println!("  {step:?}");
                }
            }
            if diags.is_empty() {
                println!("no convexity violations found");
                Ok(0)
            } else {
                Ok(1)
            }
        }
        Command::Export { model, output } => {
            let text = read_input(model)?;
            let loaded = parse_model(&text).map_err(|e| fail(2, format!("{e}")))?;
            write_output(Some(output), &write_model(&loaded, format(cli)))?;
            Ok(0)
        }
    }
}

/// `R1+R2=R3` into a diagnostic rule.
fn parse_conj_rule(raw: &str) -> Result<RoleConjunctionRule, Failure> {
    let (lhs, rhs) = raw
        .split_once('=')
        .ok_or_else(|| fail(2, format!("bad --conj rule `{raw}`: expected `R1+R2=R3`")))?;
    let lhs: Vec<_> = lhs
        .split('+')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            (
                adlite::syntax::Ident::new(p),
                adlite::syntax::GroundSpecifier::open_empty(),
            )
        })
        .collect();
    if lhs.is_empty() || rhs.trim().is_empty() {
        return Err(fail(2, format!("bad --conj rule `{raw}`")));
    }
    Ok(RoleConjunctionRule {
        lhs,
        rhs: (
            adlite::syntax::Ident::new(rhs.trim()),
            adlite::syntax::GroundSpecifier::closed_empty(),
        ),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}
