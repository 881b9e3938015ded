use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use celldual::cellcomplex::Region;
use celldual::checks;
use celldual::classify::{classify, mobius_cells, mobius_hat};
use celldual::dualize::{
    auslander_report, cellular_compact_cohomology, cellular_sheaf_cohomology, compact_cohomology,
    ext_against_omega, local_cohomology, open_cohomology, sheaf_cohomology,
};
use celldual::io::{parse_complex, parse_filter};
use celldual::koszul::{koszul_certificate, quadratic_dual_check};
use celldual::repalg::{parse_module, random_module, RANDOM_MAX_DIM};
use celldual::report::{betti_json, betti_tsv};
use celldual::{CellComplex, Field, FieldSpec, OrderFilter, PrimeField, Rationals};

#[derive(Parser, Debug)]
#[command(
    name = "celldual",
    version,
    about = "Modules over incidence algebras of regular cell complexes"
)]
struct Cli {
    /// Ground field: `q` or `f<p>` for a prime p.
    #[arg(long, global = true, default_value = "q")]
    field: String,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that the input is a regular cell complex.
    Validate { file: PathBuf },
    /// Cellular homology of the complex or of a region.
    Homology {
        file: PathBuf,
        /// `closure:<cell>`, `star:<cell>`, `link:<cell>`, `deletion:<cell>`,
        /// `open-star:<cell>`, `punctured`, or comma-separated cells of a filter.
        #[arg(long)]
        region: Option<String>,
        /// Compactly supported cohomology (required for open regions).
        #[arg(long)]
        compact: bool,
        /// Take the upward closure of a listed filter.
        #[arg(long)]
        closure: bool,
    },
    /// Möbius values `μ(σ, 1̂)` by two routes.
    Mobius { file: PathBuf },
    /// Local, sheaf, compactly supported or open-set cohomology of a module.
    Cohomology {
        file: PathBuf,
        #[command(flatten)]
        module: ModuleArg,
        #[command(flatten)]
        mode: Mode,
        /// Comma-separated cells of an order filter.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        closure: bool,
    },
    /// `Ext(M, ω•)` per cell and the Auslander condition.
    Dualize {
        file: PathBuf,
        #[command(flatten)]
        module: ModuleArg,
    },
    /// Cohen-Macaulay, Buchsbaum and Gorenstein* verdicts.
    Classify { file: PathBuf },
    /// Koszulness of the incidence algebra and its quadratic dual.
    Koszul { file: PathBuf },
    /// Run every cross-check on random modules.
    Selftest {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        trials: u64,
    },
}

#[derive(Args, Debug)]
struct ModuleArg {
    /// A builtin (`projective:<cell>`, `injective:<cell>`, `simple:<cell>`,
    /// `random:<seed>`, `ideal-J`, `module:Re-empty`), inline JSON, or a path
    /// to a JSON module file.
    #[arg(long)]
    module: String,
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct Mode {
    #[arg(long)]
    local: bool,
    /// The default.
    #[arg(long)]
    sheaf: bool,
    #[arg(long, requires = "filter")]
    compact: bool,
    #[arg(long, requires = "filter")]
    open: bool,
}

/// The rendered result of a command.
struct Output {
    json: Value,
    tsv: Option<String>,
    /// Set when the report itself shows a broken identity; exit 3.
    mismatch: Option<String>,
    /// The input was rejected; the report explains why.
    invalid: bool,
}

impl Output {
    fn json(json: Value) -> Self {
        Output {
            json,
            tsv: None,
            mismatch: None,
            invalid: false,
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            emit(&out, cli.format);
            match out.mismatch {
                Some(m) => {
                    eprintln!("invariant failure: {m}");
                    ExitCode::from(3)
                }
                None if out.invalid => ExitCode::from(2),
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<celldual::Error>() {
        Some(celldual::Error::Invariant(_)) => 3,
        _ => 2,
    }
}

fn emit(out: &Output, format: Format) {
    let text = match (format, &out.tsv) {
        (Format::Tsv, Some(t)) => t.clone(),
        _ => serde_json::to_string_pretty(&out.json).expect("serializable") + "\n",
    };
    // a closed pipe is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path) -> anyhow::Result<CellComplex> {
    Ok(parse_complex(&read(path)?)?)
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    let field: FieldSpec = cli.field.parse()?;
    if let Command::Validate { file } = &cli.command {
        return Ok(validate(&read(file)?));
    }
    match field {
        FieldSpec::Rationals => run_with(&Rationals, cli),
        FieldSpec::Prime(p) => run_with(&PrimeField::new(p)?, cli),
    }
}

fn validate(text: &str) -> Output {
    match parse_complex(text) {
        Ok(c) => Output::json(json!({
            "valid": true,
            "cells": c.len() - 1,
            "dim": c.max_dim(),
            "simplicial": c.is_simplicial(),
            "diamonds": c.diamonds().len(),
            "reduced_euler_characteristic": c.reduced_euler_characteristic(),
        })),
        Err(e) => Output {
            invalid: true,
            ..Output::json(json!({"valid": false, "error": e.to_string()}))
        },
    }
}

fn run_with<F: Field>(field: &F, cli: &Cli) -> anyhow::Result<Output> {
    let fname = field.spec().to_string();
    match &cli.command {
        Command::Validate { .. } => unreachable!("handled before field dispatch"),
        Command::Homology {
            file,
            region,
            compact,
            closure,
        } => {
            let c = load(file)?;
            let region = match region {
                Some(spec) => parse_region(&c, spec, *closure)?,
                None => Region::Closed(c.whole()),
            };
            let compact = *compact || matches!(region, Region::Open(_));
            let h = c.cellular_homology(field, &region, compact)?;
            Ok(Output {
                json: json!({
                    "field": fname,
                    "compact": compact,
                    "betti": betti_json(&h.betti),
                    "reduced": betti_json(&h.reduced),
                }),
                tsv: Some(betti_tsv(&h.betti)),
                mismatch: None,
                invalid: false,
            })
        }
        Command::Mobius { file } => {
            let c = load(file)?;
            let t = mobius_hat(field, &c)?;
            let bad = mobius_cells(&c);
            let mut tsv = String::from("cell\tcohomological\trecursive\n");
            for (k, v) in &t.cohomological {
                tsv.push_str(&format!("{k}\t{v}\t{}\n", t.recursive[k]));
            }
            let mismatch = if !t.agree {
                Some("cohomological and recursive Möbius values differ".to_string())
            } else if !bad.is_empty() {
                Some(format!(
                    "Möbius function of the face poset is not (-1)^dim on {bad:?}"
                ))
            } else {
                None
            };
            Ok(Output {
                json: json!({
                    "field": fname,
                    "cohomological": t.cohomological,
                    "recursive": t.recursive,
                    "agree": t.agree,
                }),
                tsv: Some(tsv),
                mismatch,
                invalid: false,
            })
        }
        Command::Cohomology {
            file,
            module,
            mode,
            filter,
            closure,
        } => {
            let c = load(file)?;
            let m = parse_module(field, &c, &module_text(&module.module)?)?;
            let psi = |c: &CellComplex| -> anyhow::Result<OrderFilter> {
                let spec = filter.as_deref().context("--filter is required")?;
                Ok(parse_filter(c, spec, *closure)?)
            };
            let (kind, betti, cross) = if mode.local {
                ("local", local_cohomology(&m), None)
            } else if mode.compact {
                let psi = psi(&c)?;
                let b = compact_cohomology(&m, &psi)?;
                let cell = cellular_compact_cohomology(&c, &m, &psi);
                ("compact", b, Some(cell))
            } else if mode.open {
                ("open", open_cohomology(&c, &m, &psi(&c)?)?, None)
            } else {
                if filter.is_some() {
                    bail!("--filter only applies to --compact and --open");
                }
                let b = sheaf_cohomology(&m);
                let cell = cellular_sheaf_cohomology(&c, &m);
                ("sheaf", b, Some(cell))
            };
            let mismatch = cross
                .filter(|cell| *cell != betti)
                .map(|cell| format!("cellular model gives {cell:?}, resolution route {betti:?}"));
            Ok(Output {
                json: json!({"field": fname, "kind": kind, "cohomology": betti_json(&betti)}),
                tsv: Some(betti_tsv(&betti)),
                mismatch,
                invalid: false,
            })
        }
        Command::Dualize { file, module } => {
            let c = load(file)?;
            let m = parse_module(field, &c, &module_text(&module.module)?)?;
            let table = ext_against_omega(&c, &m)?;
            let auslander = match auslander_report(&c, &m) {
                Ok(a) => json!({
                    "j_omega": a.j_omega,
                    "first_nonzero": a.first_nonzero,
                    "holds": a.holds,
                }),
                Err(celldual::Error::ZeroModule) => Value::Null,
                Err(e) => return Err(e.into()),
            };
            let mismatch = match auslander.get("holds") {
                Some(Value::Bool(false)) => Some("Auslander condition fails".to_string()),
                _ => None,
            };
            Ok(Output {
                json: json!({"field": fname, "ext": table.to_json(), "auslander": auslander}),
                tsv: Some(table.to_tsv()),
                mismatch,
                invalid: false,
            })
        }
        Command::Classify { file } => {
            let c = load(file)?;
            let r = classify(field, &c)?;
            let mismatch = (!r.mobius.agree).then(|| "Möbius routes disagree".to_string());
            Ok(Output {
                mismatch,
                ..Output::json(r.to_json())
            })
        }
        Command::Koszul { file } => {
            let c = load(file)?;
            let cert = koszul_certificate(field, &c);
            let q = quadratic_dual_check(field, &c);
            let mut json = cert.to_json(&q);
            json["field"] = json!(fname);
            let mismatch = if !cert.koszul {
                Some("a simple module has a nonlinear resolution".to_string())
            } else if !q.holds {
                Some("quadratic dual is not the twisted opposite algebra".to_string())
            } else {
                None
            };
            Ok(Output {
                mismatch,
                ..Output::json(json)
            })
        }
        Command::Selftest { file, seed, trials } => {
            let c = load(file)?;
            let mut results = serde_json::Map::new();
            let mut failures = Vec::new();
            for (name, check) in checks::all::<F>() {
                let mut passed = 0u64;
                let mut failed = Vec::new();
                for t in 0..*trials {
                    let s = seed.wrapping_add(t);
                    let m = random_module(field, c.poset_arc(), s, RANDOM_MAX_DIM);
                    match check(&c, &m)? {
                        None => passed += 1,
                        Some(why) => {
                            log::warn!("{name} failed for seed {s}: {why}");
                            failed.push(json!({"seed": s, "detail": why}));
                        }
                    }
                }
                if !failed.is_empty() {
                    failures.push(name);
                }
                results.insert(
                    name.to_string(),
                    json!({"passed": passed, "failed": failed}),
                );
            }
            Ok(Output {
                json: json!({
                    "field": fname,
                    "seed": seed,
                    "trials": trials,
                    "checks": results,
                    "ok": failures.is_empty(),
                }),
                tsv: None,
                mismatch: (!failures.is_empty())
                    .then(|| format!("failing checks: {}", failures.join(", "))),
                invalid: false,
            })
        }
    }
}

/// Inline specs pass through; anything naming an existing file is read.
fn module_text(spec: &str) -> anyhow::Result<String> {
    let path = Path::new(spec);
    if !spec.trim_start().starts_with('{') && path.is_file() {
        read(path)
    } else {
        Ok(spec.to_string())
    }
}

fn parse_region(c: &CellComplex, spec: &str, closure: bool) -> anyhow::Result<Region> {
    let cell = |name: &str| c.require(name.trim());
    Ok(match spec.split_once(':') {
        Some(("closure", x)) => Region::Closed(c.closure(cell(x)?)),
        Some(("star", x)) => Region::Closed(c.star(cell(x)?)?),
        Some(("link", x)) => Region::Closed(c.link(cell(x)?)?),
        Some(("deletion", x)) => Region::Closed(c.deletion(cell(x)?)),
        Some(("open-star", x)) => Region::Open(c.open_star(cell(x)?)?),
        Some((kind, _)) => bail!("unknown region kind `{kind}`"),
        None if spec.trim() == "punctured" => Region::Open(c.punctured()),
        None if spec.trim() == "whole" => Region::Closed(c.whole()),
        None => Region::Open(parse_filter(c, spec, closure)?),
    })
}
