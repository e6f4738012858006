use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use codeg::catalog::{build_group, catalog_json, catalog_markdown, BuildOptions, Family, GroupId};
use codeg::chartab::character_table;
use codeg::pc::{PcPresentation, DEFAULT_ORDER_GUARD};
use codeg::verify::{compute_group, verify, Format, MethodChoice, RunConfig, Suite};

/// Character codegree sets of p-groups.
#[derive(Parser)]
#[command(name = "codeg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog templates and the expected-value rows.
    List {
        #[arg(long, default_value = "md", value_parser = parse_format)]
        format: Format,
    },
    /// Compute cod(G) for one group.
    Compute {
        /// Group, e.g. `heisenberg`, `abelian:2,1`, `phi2_31`, `user_json:FILE`.
        group: Option<String>,
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value = "both")]
        method: MethodChoice,
        #[arg(long, default_value = "json", value_parser = parse_format)]
        format: Format,
        #[command(flatten)]
        common: Common,
    },
    /// Check computed codegree sets against the expected values.
    Verify {
        /// p3, p4, p5, 3groups or all.
        suite: Suite,
        /// Comma-separated primes; each suite has its own default.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u32>>,
        #[arg(long, default_value = "both")]
        method: MethodChoice,
        #[arg(long, default_value = "json", value_parser = parse_format)]
        format: Format,
        /// Presentation for a row without a catalog template, as ROW_ID=PATH.
        #[arg(long = "supply", value_parser = parse_supply)]
        supply: Vec<(String, PathBuf)>,
        /// Report per-record wall-clock times.
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Write the character table of one group as JSON.
    Chartab {
        group: Option<String>,
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Target {
    /// Group, as an alternative to the positional argument.
    #[arg(long = "group")]
    group_flag: Option<String>,
    /// The prime; optional for `user_json:` groups.
    #[arg(long = "p")]
    p: Option<u32>,
    /// Build the φ families at p = 3.
    #[arg(long)]
    allow_p3: bool,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest group order to build.
    #[arg(long, env = "CODEG_ORDER_GUARD", default_value_t = DEFAULT_ORDER_GUARD)]
    order_guard: u64,
    /// Write output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

fn parse_supply(s: &str) -> Result<(String, PathBuf), String> {
    let (row, path) = s
        .split_once('=')
        .ok_or_else(|| format!("expected ROW_ID=PATH, got {s:?}"))?;
    Ok((row.to_owned(), PathBuf::from(path)))
}

/// Failure with an exit code: 1 for mismatches, 2 for bad input or I/O.
struct Failure(u8, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(2, e.to_string())
    }
}

fn resolve(positional: Option<String>, target: &Target) -> Result<GroupId, Failure> {
    let text = positional
        .or_else(|| target.group_flag.clone())
        .ok_or_else(|| Failure(2, "no group given".into()))?;
    let family: Family = text.parse()?;
    let p = match (&family, target.p) {
        (_, Some(p)) => p,
        (Family::UserJson(path), None) => PcPresentation::from_json_file(path)?.p(),
        _ => return Err(Failure(2, "--p is required".into())),
    };
    Ok(GroupId::new(family, p))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    let mut text = text.to_owned();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure(2, format!("writing {}: {e}", path.display()))),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::List { format } => {
            let text = match format {
                Format::Json => catalog_json(),
                Format::Md | Format::Csv => catalog_markdown(),
            };
            emit(&None, &text)
        }
        Command::Compute {
            group,
            target,
            method,
            format,
            common,
        } => {
            let id = resolve(group, &target)?;
            let config = RunConfig {
                seed: common.seed,
                order_guard: common.order_guard,
                format,
                method,
                build: BuildOptions {
                    allow_p3: target.allow_p3,
                },
                ..RunConfig::default()
            };
            let g = build_group(&id, config.build, config.order_guard)?;
            let out = compute_group(&g, id.family.to_string(), &config)?;
            emit(&common.out, &out.render(format))?;
            if out.r#match == Some(false) {
                return Err(Failure(1, "formula and brute-force sets differ".into()));
            }
            Ok(())
        }
        Command::Verify {
            suite,
            primes,
            method,
            format,
            supply,
            timings,
            common,
        } => {
            let config = RunConfig {
                seed: common.seed,
                order_guard: common.order_guard,
                format,
                primes,
                method,
                build: BuildOptions::default(),
                timings,
                supplied: supply.into_iter().collect::<BTreeMap<_, _>>(),
            };
            let result = verify(suite, &config);
            emit(&common.out, &result.render(format))?;
            if !result.pass {
                eprint!("{}", result.diff_report());
                return Err(Failure(1, format!("{} record(s) failed", result.failed)));
            }
            Ok(())
        }
        Command::Chartab {
            group,
            target,
            common,
        } => {
            let id = resolve(group, &target)?;
            let opts = BuildOptions {
                allow_p3: target.allow_p3,
            };
            let g = build_group(&id, opts, common.order_guard)?;
            let table = character_table(&g, common.seed)?;
            emit(&common.out, &table.to_json())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("codeg: {msg}");
            ExitCode::from(code)
        }
    }
}
