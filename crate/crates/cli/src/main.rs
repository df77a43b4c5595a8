use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ueda_core::atlas::{self, Atlas, AtlasParams};
use ueda_core::json::Json;
use ueda_core::linearize::{self, ConstantsOptions};
use ueda_core::report;
use ueda_core::resolve::CoverConfig;
use ueda_core::series::{parse_rat, Rational, Scalar};
use ueda_core::ueda;

#[derive(Parser)]
#[command(
    name = "ueda",
    version,
    about = "Ueda-type classification of neighborhoods of a cuspidal rational curve"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build or check atlas files.
    Atlas {
        #[command(subcommand)]
        command: AtlasCommand,
    },
    /// Winding number and Pic⁰ class of the normal bundle.
    NormalBundle { atlas: PathBuf },
    /// Finite/infinite type up to a maximal order.
    Classify {
        atlas: PathBuf,
        #[arg(long)]
        max_order: usize,
    },
    /// The obstruction class at a given order.
    Obstruction {
        atlas: PathBuf,
        #[arg(long)]
        order: usize,
    },
    /// Order-by-order linearization with a majorant certificate.
    Linearize {
        atlas: PathBuf,
        #[arg(long)]
        order: usize,
        /// Also write the majorant ledger to this file.
        #[arg(long)]
        ledger: Option<PathBuf>,
        /// Comma-separated circle radii for estimating M, e.g. `1/4,1/2`.
        #[arg(long)]
        probe_radii: Option<String>,
        /// Fiber radius 1/R.
        #[arg(long)]
        fiber_radius: Option<String>,
    },
    /// Resolution, 6:1 cover and contraction bookkeeping.
    Resolve {
        /// `default` or a cover configuration file.
        #[arg(long, default_value = "default")]
        cover: String,
        #[arg(long)]
        nbar: Option<i64>,
        /// Self-intersection of the curve before resolving.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        c_self: i64,
    },
}

#[derive(Subcommand)]
enum AtlasCommand {
    /// Write a model atlas.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Check the structural invariants of an atlas file.
    Validate { atlas: PathBuf },
}

#[derive(Subcommand)]
enum GenKind {
    /// The trivial fibration.
    Trivial(GenOptions),
    /// Trivial fibration with `f_{n+1} = c·ζ`.
    Perturbed {
        #[arg(long)]
        order: usize,
        /// `p`, `p/q` or `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[command(flatten)]
        options: GenOptions,
    },
    /// A disguised trivial fibration (infinite type).
    Coboundary(GenOptions),
}

#[derive(Args)]
struct GenOptions {
    /// Fiber truncation order.
    #[arg(long, default_value_t = 8)]
    n_w: usize,
    /// Laurent window half-width.
    #[arg(long)]
    zeta_window: Option<i32>,
    /// Write to a file instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

enum Failure {
    /// Malformed or inconsistent input.
    Input(anyhow::Error),
    /// A library error; domain outcomes are reported, the rest are input errors.
    Library {
        command: &'static str,
        inputs: Value,
        error: ueda_core::Error,
    },
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

struct Outcome {
    output: String,
    code: u8,
}

fn report(command: &str, inputs: Value, result: Value, certificate: Option<Value>) -> String {
    let mut r = json!({"command": command, "inputs": inputs, "result": result});
    if let Some(c) = certificate {
        r["certificate"] = c;
    }
    pretty(&r)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("{}: malformed JSON", path.display()))
}

fn read_atlas(path: &Path) -> anyhow::Result<Atlas> {
    let v = read_json(path)?;
    Atlas::from_json(&v).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn parse_radius(s: &str, what: &str) -> anyhow::Result<Rational> {
    parse_rat(s).ok_or_else(|| anyhow!("{what}: cannot parse {s:?} as p or p/q"))
}

fn gen_params(o: &GenOptions) -> anyhow::Result<AtlasParams> {
    if o.n_w < 2 {
        bail!("--n-w must be at least 2");
    }
    let mut p = AtlasParams::new(o.n_w);
    if let Some(z) = o.zeta_window {
        if z < 1 {
            bail!("--zeta-window must be positive");
        }
        p = p.with_zeta_window(z);
    }
    Ok(p)
}

fn lib<T>(r: ueda_core::Result<T>, command: &'static str, inputs: &Value) -> Result<T, Failure> {
    r.map_err(|error| Failure::Library {
        command,
        inputs: inputs.clone(),
        error,
    })
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let ok = |output| Ok(Outcome { output, code: 0 });
    match cli.command {
        Command::Atlas { command } => match command {
            AtlasCommand::Gen { kind } => {
                let (atlas, options) = match &kind {
                    GenKind::Trivial(o) => (Atlas::trivial(&gen_params(o)?), o),
                    GenKind::Coboundary(o) => (Atlas::coboundary(&gen_params(o)?), o),
                    GenKind::Perturbed {
                        order,
                        class,
                        options,
                    } => {
                        let c: Scalar = class.parse().map_err(|e| anyhow!("--class: {e}"))?;
                        (Atlas::perturbed(&gen_params(options)?, *order, c), options)
                    }
                };
                let atlas = atlas.map_err(|e| anyhow!("atlas gen: {e}"))?;
                let text = pretty(&atlas.to_json());
                match &options.output {
                    Some(path) => {
                        fs::write(path, &text)
                            .with_context(|| format!("writing {}", path.display()))?;
                        ok(String::new())
                    }
                    None => ok(text),
                }
            }
            AtlasCommand::Validate { atlas: path } => {
                let a = read_atlas(&path)?;
                let v = atlas::validate(&a);
                let out = report(
                    "atlas validate",
                    json!({"atlas": path.display().to_string()}),
                    json!({"valid": v.is_empty(), "violations": report::violations(&v)}),
                    None,
                );
                Ok(Outcome {
                    output: out,
                    code: if v.is_empty() { 0 } else { 2 },
                })
            }
        },
        Command::NormalBundle { atlas: path } => {
            let inputs = json!({"atlas": path.display().to_string()});
            let a = read_atlas(&path)?;
            let r = lib(atlas::normal_bundle_class(&a), "normal-bundle", &inputs)?;
            ok(report(
                "normal-bundle",
                inputs,
                report::normal_bundle(&r),
                None,
            ))
        }
        Command::Classify {
            atlas: path,
            max_order,
        } => {
            let inputs = json!({"atlas": path.display().to_string(), "max_order": max_order});
            let a = read_atlas(&path)?;
            let c = lib(ueda::classify(&a, max_order), "classify", &inputs)?;
            ok(report("classify", inputs, report::classification(&c), None))
        }
        Command::Obstruction { atlas: path, order } => {
            let inputs = json!({"atlas": path.display().to_string(), "order": order});
            let a = read_atlas(&path)?;
            let r = lib(ueda::obstruction_at(&a, order), "obstruction", &inputs)?;
            ok(report("obstruction", inputs, report::obstruction(&r), None))
        }
        Command::Linearize {
            atlas: path,
            order,
            ledger,
            probe_radii,
            fiber_radius,
        } => {
            let mut opts = ConstantsOptions::default();
            if let Some(s) = &probe_radii {
                let radii = s
                    .split(',')
                    .map(|r| parse_radius(r.trim(), "--probe-radii"))
                    .collect::<anyhow::Result<Vec<_>>>()?;
                opts.probe_radii = Some(radii);
            }
            if let Some(s) = &fiber_radius {
                opts.fiber_radius = Some(parse_radius(s, "--fiber-radius")?);
            }
            let inputs = json!({
                "atlas": path.display().to_string(),
                "order": order,
                "probe_radii": probe_radii,
                "fiber_radius": fiber_radius,
            });
            let a = read_atlas(&path)?;
            let r = lib(linearize::linearize(&a, order, &opts), "linearize", &inputs)?;
            if let Some(p) = &ledger {
                fs::write(p, pretty(&report::ledger(&r.ledger)))
                    .with_context(|| format!("writing {}", p.display()))?;
            }
            ok(report(
                "linearize",
                inputs,
                report::linearization(&r),
                Some(report::certificate(&r)),
            ))
        }
        Command::Resolve {
            cover,
            nbar,
            c_self,
        } => {
            let cfg = if cover == "default" {
                CoverConfig::default()
            } else {
                let v = read_json(Path::new(&cover))?;
                CoverConfig::from_json(&v).map_err(|e| anyhow!("{cover}: {e}"))?
            };
            let inputs = json!({"cover": cover, "nbar": nbar, "c_self": c_self});
            let r = lib(report::resolution(&cfg, nbar, c_self), "resolve", &inputs)?;
            ok(report("resolve", inputs, r, None))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.output);
            ExitCode::from(out.code)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Library {
            command,
            inputs,
            error,
        }) => {
            if error.is_domain_outcome() {
                let mut r = json!({"command": command, "inputs": inputs, "result": null});
                r["error"] = report::error(&error);
                print!("{}", pretty(&r));
                eprintln!("{command}: {error}");
                ExitCode::from(1)
            } else {
                eprintln!("error: {command}: {error}");
                ExitCode::from(2)
            }
        }
    }
}
