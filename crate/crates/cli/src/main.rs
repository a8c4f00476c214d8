use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use prohecke::config::DEFAULT_SEED;
use prohecke::hecke::HeckeElt;
use prohecke::verify::{self, Suite, SuiteParams};
use prohecke::weyl::Side;
use prohecke::wire::{self, CombJson, EltJson};
use prohecke::{cosets, Error, FieldSpec, ProPElt, RunConfig, Setup};

/// Environment variable that replaces the built-in default seed.
const SEED_ENV: &str = "PROHECKE_SEED";

#[derive(Parser)]
#[command(
    name = "prohecke",
    version,
    about = "Pro-p Iwahori-Hecke algebra toolkit"
)]
struct Cli {
    /// JSON run configuration: {"group":..., "field":..., "seed"?, "max_len"?, "samples"?}
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Group preset, used when no --config is given
    #[arg(long, global = true)]
    preset: Option<String>,
    /// Coefficient field as `p` or `p^m` (q = p^m), used with --preset
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    max_len: Option<usize>,
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Write the JSON result to this file
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print JSON instead of a summary
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two elements read from JSON files
    Mul {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = Algebra::Hecke)]
        algebra: Algebra,
    },
    /// Run a verification suite
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
    },
    /// Export a deterministic table
    Export {
        #[arg(value_enum)]
        what: What,
    },
    /// Double-coset calculus
    Coset {
        #[command(subcommand)]
        what: CosetCommand,
    },
}

#[derive(Subcommand)]
enum CosetCommand {
    /// Support of I v I · I w I
    Support { v: PathBuf, w: PathBuf },
    /// Index q^ℓ(w) and the root profile g_w
    Profile { w: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algebra {
    Hecke,
    Propweyl,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum What {
    HeckeTable,
    TopmodTable,
    Omega,
    Characters,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Non-error outcome: the JSON result, a summary and whether it passed.
struct Output {
    value: Value,
    summary: String,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, out: &Output) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(&out.value)? + "\n";
    if let Some(path) = &cli.out {
        fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    let shown = if cli.json {
        text
    } else {
        format!("{}\n", out.summary)
    };
    match io::stdout().lock().write_all(shown.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn load_config(cli: &Cli) -> anyhow::Result<RunConfig> {
    match (&cli.config, &cli.preset) {
        (Some(path), None) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Ok(RunConfig::from_json(&text)?)
        }
        (None, Some(preset)) => {
            let field = cli
                .field
                .as_deref()
                .ok_or_else(|| anyhow!("--preset needs --field"))?;
            let (p, m) = match field.split_once('^') {
                Some((p, m)) => (p.trim().parse()?, m.trim().parse()?),
                None => (field.trim().parse()?, 1),
            };
            Ok(RunConfig::new(preset, FieldSpec::new(p, m, m)))
        }
        (Some(_), Some(_)) => bail!("give either --config or --preset, not both"),
        (None, None) => bail!("no configuration: pass --config PATH or --preset NAME --field P"),
    }
}

/// Suite parameters with their precedence: flags, config file, environment, defaults.
fn params(cli: &Cli, config: &RunConfig) -> anyhow::Result<(SuiteParams, &'static str)> {
    let d = SuiteParams::default();
    let (seed, source) = match (cli.seed, config.seed, std::env::var(SEED_ENV)) {
        (Some(s), _, _) => (s, "flag"),
        (None, Some(s), _) => (s, "config"),
        (None, None, Ok(v)) => (
            v.trim()
                .parse()
                .with_context(|| format!("parsing {SEED_ENV}"))?,
            "env",
        ),
        (None, None, Err(_)) => (DEFAULT_SEED, "default"),
    };
    Ok((
        SuiteParams {
            max_len: cli.max_len.or(config.max_len).unwrap_or(d.max_len),
            samples: cli.samples.or(config.samples).unwrap_or(d.samples),
            seed,
        },
        source,
    ))
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    let config = load_config(cli)?;
    let (params, seed_source) = params(cli, &config)?;
    let setup = Setup::new(config)?;
    match &cli.command {
        Command::Mul { a, b, algebra } => mul(&setup, a, b, *algebra),
        Command::Verify { suite } => {
            let report = verify::run(&setup, *suite, &params)?;
            let mut value = report.to_json(&setup);
            value["seed_source"] = json!(seed_source);
            let summary = format!(
                "{}: {} cases, {} failures ({:?}){}",
                report.suite,
                report.cases,
                report.failures.len(),
                report.mode,
                report
                    .failures
                    .first()
                    .map(|f| format!("\nfirst failure: {f}"))
                    .unwrap_or_default()
            );
            Ok(Output {
                value,
                summary,
                ok: report.passed(),
            })
        }
        Command::Export { what } => export(&setup, *what, params.max_len),
        Command::Coset { what } => coset(&setup, what),
    }
}

/// Reads an element file, checking an embedded "config" key against the run.
fn read_json(setup: &Setup, path: &Path) -> anyhow::Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut value: Value = serde_json::from_str(&text).map_err(Error::from)?;
    if let Some(obj) = value.as_object_mut() {
        if let Some(c) = obj.remove("config") {
            let c: RunConfig = serde_json::from_value(c).map_err(Error::from)?;
            if !c.same_algebra(&setup.config) {
                return Err(Error::Mismatch(format!(
                    "{} was written for a different group or field",
                    path.display()
                ))
                .into());
            }
        }
    }
    Ok(value)
}

fn read_elt(setup: &Setup, path: &Path) -> anyhow::Result<ProPElt> {
    let j: EltJson = serde_json::from_value(read_json(setup, path)?).map_err(Error::from)?;
    Ok(wire::elt_from_json(&setup.group, &j)?)
}

/// A Hecke element file holds either `{"terms": [...]}` or a single element.
fn read_hecke(setup: &Setup, path: &Path) -> anyhow::Result<HeckeElt> {
    let value = read_json(setup, path)?;
    if value.get("terms").is_some() {
        let j: CombJson = serde_json::from_value(value).map_err(Error::from)?;
        Ok(wire::comb_from_json(&setup.group, setup.field(), &j, None)?)
    } else {
        let j: EltJson = serde_json::from_value(value).map_err(Error::from)?;
        Ok(setup.alg.tau(wire::elt_from_json(&setup.group, &j)?))
    }
}

fn with_meta(setup: &Setup, mut value: Value) -> Value {
    value["meta"] = setup.metadata();
    value
}

fn mul(setup: &Setup, a: &Path, b: &Path, algebra: Algebra) -> anyhow::Result<Output> {
    let g = &setup.group;
    let k = setup.field();
    let (product, summary) = match algebra {
        Algebra::Hecke => {
            let x = setup
                .alg
                .mul(&read_hecke(setup, a)?, &read_hecke(setup, b)?);
            let j = wire::comb_to_json(g, k, &x, None);
            let lines: Vec<String> = j
                .terms
                .iter()
                .map(|t| format!("{:?}  {}", t.coeff, serde_json::to_string(&t.elt).unwrap()))
                .collect();
            (
                wire::to_value(&j),
                format!("{} terms\n{}", lines.len(), lines.join("\n")),
            )
        }
        Algebra::Propweyl => {
            let x = g.mul(&read_elt(setup, a)?, &read_elt(setup, b)?);
            let j = wire::elt_to_json(g, &x);
            let line = serde_json::to_string(&j)?;
            (wire::to_value(&j), line)
        }
    };
    Ok(Output {
        value: with_meta(setup, json!({ "product": product })),
        summary,
        ok: true,
    })
}

fn export(setup: &Setup, what: What, max_len: usize) -> anyhow::Result<Output> {
    let g = &setup.group;
    let k = setup.field();
    let alg = &setup.alg;
    let top = &setup.top;
    let (rows, summary) = match what {
        What::HeckeTable => {
            let basis = g.enumerate(max_len);
            let mut rows = Vec::with_capacity(basis.len() * basis.len());
            for v in &basis {
                for w in &basis {
                    let p = wire::comb_to_json(g, k, &alg.mul_basis(v, w), None);
                    rows.push(json!({ "v": wire::elt_to_json(g, v), "w": wire::elt_to_json(g, w), "product": p.terms }));
                }
            }
            let n = rows.len();
            (
                json!(rows),
                format!(
                    "hecke_table: {n} products over {} basis elements",
                    basis.len()
                ),
            )
        }
        What::TopmodTable => {
            let basis = g.enumerate(max_len);
            let mut rows = Vec::new();
            for w in &basis {
                let phi = top.phi(w.clone());
                for j in 0..g.num_s_aff() {
                    for side in [Side::Left, Side::Right] {
                        let r = match side {
                            Side::Left => top.left_gen(j, &phi),
                            Side::Right => top.right_gen(&phi, j),
                        };
                        let side = if side == Side::Left { "left" } else { "right" };
                        let r = wire::comb_to_json(g, k, &r, Some("phi"));
                        rows.push(json!({ "w": wire::elt_to_json(g, w), "s": j, "side": side, "result": r.terms }));
                    }
                }
            }
            let n = rows.len();
            (json!(rows), format!("topmod_table: {n} generator actions"))
        }
        What::Omega => {
            let om = g.weyl().omega();
            let classes: Vec<_> = om
                .elements
                .iter()
                .map(|w| wire::weyl_to_json(g.weyl(), w))
                .collect();
            let summary = if om.finite {
                format!(
                    "Ω: {} classes, invariants {:?}",
                    classes.len(),
                    om.invariants
                )
            } else {
                format!(
                    "Ω: infinite, {} generators, invariants {:?}",
                    classes.len(),
                    om.invariants
                )
            };
            (
                json!({ "finite": om.finite, "invariants": om.invariants, "classes": classes }),
                summary,
            )
        }
        What::Characters => {
            let mut rows = Vec::new();
            for c in alg.all_characters() {
                let verdict = alg.classify_character(&c)?;
                rows.push(json!({ "character": c, "classification": verdict }));
            }
            let n = rows.len();
            (json!(rows), format!("characters: {n} affine characters"))
        }
    };
    let name = what
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    let value = with_meta(
        setup,
        json!({ "table": name, "max_len": max_len, "rows": rows }),
    );
    Ok(Output {
        value,
        summary,
        ok: true,
    })
}

fn coset(setup: &Setup, what: &CosetCommand) -> anyhow::Result<Output> {
    let g = &setup.group;
    let (value, summary) = match what {
        CosetCommand::Support { v, w } => {
            let (v, w) = (read_elt(setup, v)?, read_elt(setup, w)?);
            let sup: Vec<EltJson> = cosets::support_mul(g, &v, &w)
                .iter()
                .map(|x| wire::elt_to_json(g, x))
                .collect();
            let summary = format!("{} double cosets", sup.len());
            (json!({ "support": sup }), summary)
        }
        CosetCommand::Profile { w } => {
            let w = read_elt(setup, w)?;
            let index = cosets::index(g, &w)?;
            let profile = cosets::g_profile(g.weyl(), &w.w);
            let summary = format!(
                "length {}, index {index}, profile {profile:?}",
                g.length(&w)
            );
            (
                json!({ "length": g.length(&w), "index": index.to_string(), "profile": profile }),
                summary,
            )
        }
    };
    Ok(Output {
        value: with_meta(setup, value),
        summary,
        ok: true,
    })
}
