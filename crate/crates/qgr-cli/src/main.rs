//! Command-line front end: runs spec files, prints the built-in algebra
//! catalog, emits ready-to-run spec files for catalog entries, and manages
//! the Groebner-basis cache.
//!
//! Exit codes: 0 for success, 1 for any error, 2 when every task succeeded
//! but a hypothesis-violation finding was recorded.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use num::BigInt;
use qgr_core::cache::GbCache;
use qgr_core::catalog::{self, StructureConstants};
use qgr_core::free_algebra::Presentation;
use qgr_core::report;
use qgr_core::runner;
use qgr_core::scalar::{FieldSpec, Scalar};
use qgr_core::specfile::{BaseField, OutputFormat, SpecFile, Task};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qgr",
    version,
    about = "Exact invariants of graded quotient categories, from an algebra presentation"
)]
struct Cli {
    /// Output format, overriding a spec file's `output` line (default: text)
    #[arg(long, global = true, value_parser = parse_output)]
    output: Option<OutputFormat>,

    /// Groebner-basis cache directory
    #[arg(long, global = true, value_name = "PATH", default_value = ".qgr-cache")]
    cache_dir: PathBuf,

    /// Skip the cache entirely for this invocation
    #[arg(long, global = true)]
    no_cache: bool,

    /// Use the literal transcribed sixth quantum-matrix relation instead of
    /// the standard one (catalog variant switch)
    #[arg(long, global = true)]
    paper_literal: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a spec file and execute its tasks
    Run {
        /// Path to the spec file (text blocks, or JSON starting with `{`)
        spec: PathBuf,
    },
    /// List the built-in algebra catalog
    ListCatalog,
    /// Print a ready-to-run spec file for a catalog entry
    EmitCatalog {
        /// Catalog entry name (see `list-catalog`)
        name: String,
        /// Base field: Q, rationals, F<p>, or a bare prime
        #[arg(long, default_value = "Q")]
        field: String,
        /// Entry parameters as key=value pairs (e.g. `d=4`, `q=2/3`)
        #[arg(value_name = "PARAMS")]
        params: Vec<String>,
    },
    /// Inspect or clear the Groebner-basis cache
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// Report the entry count and total size of the cache directory
    Stats,
    /// Delete every cache entry in the cache directory
    Clear,
}

fn parse_output(s: &str) -> Result<OutputFormat, String> {
    OutputFormat::from_name(s).ok_or_else(|| format!("expected `text` or `json`, got `{s}`"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Run { spec } => run(cli, spec),
        Command::ListCatalog => {
            list_catalog(cli.output.unwrap_or(OutputFormat::Text));
            Ok(0)
        }
        Command::EmitCatalog { name, field, params } => {
            emit_catalog(cli, name, field, params)?;
            Ok(0)
        }
        Command::Cache { action } => {
            cache_command(cli, action)?;
            Ok(0)
        }
    }
}

fn run(cli: &Cli, spec_path: &PathBuf) -> Result<u8> {
    let text = std::fs::read_to_string(spec_path)
        .with_context(|| format!("cannot read spec file `{}`", spec_path.display()))?;
    let spec = SpecFile::parse(&text)
        .with_context(|| format!("cannot parse spec file `{}`", spec_path.display()))?;

    let mut cache = if cli.no_cache {
        GbCache::disabled()
    } else {
        GbCache::at(cli.cache_dir.clone())
    };
    let report = runner::run_spec(&spec, &mut cache)?;

    for warning in report.cache.iter().flat_map(|c| &c.warnings) {
        eprintln!("warning: {warning}");
    }
    let format = cli.output.or(spec.output).unwrap_or(OutputFormat::Text);
    match format {
        OutputFormat::Json => print!("{}", report.to_json()),
        OutputFormat::Text => print!("{}", report::render_text(&report)),
    }
    Ok(runner::exit_code(&report) as u8)
}

fn list_catalog(format: OutputFormat) {
    let entries = catalog::catalog();
    match format {
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = entries
                .iter()
                .map(|e| {
                    serde_json::json!({
                        "name": e.name,
                        "summary": e.summary,
                        "parameters": e.parameters,
                        "expected_d": e.expected_d,
                        "expected_inverse": e.expected_inverse,
                        "koszul": e.koszul.label(),
                        "gorenstein": e.gorenstein.label(),
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::Value::Array(rows))
                    .expect("static catalog serializes")
            );
        }
        OutputFormat::Text => {
            for e in &entries {
                println!("{}", e.name);
                println!("  {}", e.summary);
                println!("  parameters: {}", e.parameters);
                println!(
                    "  expected: d = {}, inverse {}; koszul: {}; gorenstein: {}",
                    e.expected_d,
                    e.expected_inverse,
                    e.koszul.label(),
                    e.gorenstein.label()
                );
            }
            println!("{} entries; `emit-catalog <name>` prints a runnable spec file", entries.len());
        }
    }
}

/// Splits `key=value` command-line parameters.
fn parse_params(params: &[String]) -> Result<Vec<(String, String)>> {
    params
        .iter()
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| anyhow!("parameter `{p}` is not of the form key=value"))
        })
        .collect()
}

/// Parses an integer or `a/b` fraction into a field element.
fn parse_scalar(field: FieldSpec, text: &str) -> Result<Scalar> {
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let numerator: BigInt =
        num_text.trim().parse().map_err(|_| anyhow!("bad numerator in `{text}`"))?;
    let denominator: BigInt =
        den_text.trim().parse().map_err(|_| anyhow!("bad denominator in `{text}`"))?;
    Ok(Scalar::from_fraction(field, &numerator, &denominator)?)
}

struct Params {
    pairs: Vec<(String, String)>,
}

impl Params {
    fn take(&mut self, key: &str) -> Option<String> {
        let at = self.pairs.iter().position(|(k, _)| k == key)?;
        Some(self.pairs.remove(at).1)
    }

    fn scalar_or(&mut self, field: FieldSpec, key: &str, default: &str) -> Result<Scalar> {
        let text = self.take(key).unwrap_or_else(|| default.to_string());
        parse_scalar(field, &text).with_context(|| format!("parameter `{key}`"))
    }

    fn finish(self, entry: &str) -> Result<()> {
        if let Some((k, _)) = self.pairs.first() {
            bail!("unknown parameter `{k}` for catalog entry `{entry}`");
        }
        Ok(())
    }
}

fn build_entry(
    name: &str,
    field: FieldSpec,
    literal_sixth: bool,
    params: &[(String, String)],
) -> Result<Presentation> {
    let mut params = Params { pairs: params.to_vec() };
    let p = match name {
        "quantum-polynomial" => {
            let d: usize = match params.take("d") {
                Some(text) => text.parse().with_context(|| format!("parameter `d` = `{text}`"))?,
                None => 3,
            };
            let q = catalog::quantum_polynomial_default_q(field, d);
            catalog::quantum_polynomial(field, d, &q)?
        }
        "quantum-matrix" => {
            let q = params.scalar_or(field, "q", "2")?;
            catalog::quantum_matrix(field, &q, literal_sixth)?
        }
        "sklyanin3" => {
            let a = params.scalar_or(field, "a", "1")?;
            let b = params.scalar_or(field, "b", "2")?;
            let c = params.scalar_or(field, "c", "3")?;
            catalog::sklyanin3(field, &a, &b, &c)?
        }
        "homogenized-enveloping" => {
            let lie = params.take("lie").unwrap_or_else(|| "sl2".to_string());
            let sc = if lie == "sl2" {
                StructureConstants::sl2(field)?
            } else if let Some(dim_text) = lie.strip_prefix("abelian") {
                let dim: usize = dim_text
                    .parse()
                    .with_context(|| format!("parameter `lie` = `{lie}`"))?;
                StructureConstants::abelian(field, dim)?
            } else {
                bail!("parameter `lie` must be `sl2` or `abelian<n>`, got `{lie}`");
            };
            catalog::homogenized_enveloping(&sc)?
        }
        "sierra-walton" => {
            let theta = params.scalar_or(field, "theta", "1/2")?;
            let delta = params.scalar_or(field, "delta", "1/3")?;
            catalog::sierra_walton(field, &theta, &delta)?
        }
        other => bail!(
            "unknown catalog entry `{other}`; `list-catalog` shows the available names"
        ),
    };
    params.finish(name)?;
    Ok(p)
}

fn emit_catalog(cli: &Cli, name: &str, field_text: &str, params: &[String]) -> Result<()> {
    let field = match BaseField::from_text(field_text) {
        Some(BaseField::Rationals) => FieldSpec::Rational,
        Some(BaseField::Finite(q)) => FieldSpec::Prime(q),
        None => bail!("bad field `{field_text}`; expected Q, rationals, F<p>, or a prime"),
    };
    let pairs = parse_params(params)?;
    let p = build_entry(name, field, cli.paper_literal, &pairs)?;

    // Default tasks sized so polynomial detection has its guard window:
    // for these entries the inverse has degree at most the generator count.
    let n = (p.generators().len() as u32 + 4).max(8);
    let tasks = vec![Task::Hilbert { n, guard: 4 }, Task::KoszulCheck { n: 8 }];
    print!("{}", SpecFile::render(Some(name), &p, &tasks, cli.output));
    Ok(())
}

fn cache_command(cli: &Cli, action: &CacheAction) -> Result<()> {
    let dir = &cli.cache_dir;
    match action {
        CacheAction::Stats => {
            let stats = GbCache::stats(dir)
                .with_context(|| format!("cannot inspect cache at `{}`", dir.display()))?;
            match cli.output.unwrap_or(OutputFormat::Text) {
                OutputFormat::Json => println!(
                    "{}",
                    serde_json::json!({
                        "directory": dir.display().to_string(),
                        "entries": stats.entries,
                        "bytes": stats.bytes,
                    })
                ),
                OutputFormat::Text => {
                    println!("cache directory: {}", dir.display());
                    println!("entries: {}", stats.entries);
                    println!("bytes: {}", stats.bytes);
                }
            }
        }
        CacheAction::Clear => {
            let removed = GbCache::clear(dir)
                .with_context(|| format!("cannot clear cache at `{}`", dir.display()))?;
            match cli.output.unwrap_or(OutputFormat::Text) {
                OutputFormat::Json => println!(
                    "{}",
                    serde_json::json!({
                        "directory": dir.display().to_string(),
                        "removed": removed,
                    })
                ),
                OutputFormat::Text => println!(
                    "removed {removed} entries from {}",
                    dir.display()
                ),
            }
        }
    }
    Ok(())
}
