use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use coprime::chains::{
    annihilator_lower_bound_criterion, audit_chains, chain_report, greedy_maximal_chains,
    is_strongly_exchange_finite, witness_chain,
};
use coprime::classify::{classify, Outcome, PredicateRegistry};
use coprime::corpus::{load_spec, run_audit, Status};
use coprime::rcp::{pair_class, poset_dot, PosetExport};
use coprime::verify::{verify_properties, CHAIN_MAX_LENGTH, CHAIN_TARGET};
use coprime::{Analysis, Error, SizeCaps};

#[derive(Parser)]
#[command(name = "coprime", version, about = "Coprime pairs and ring classes of small finite rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: Config,
}

#[derive(Args)]
struct Config {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest ring accepted for full analysis.
    #[arg(long, global = true, default_value_t = SizeCaps::default().full_analysis, value_parser = positive)]
    cap_full: usize,
    /// Largest ring that may be built at all.
    #[arg(long, global = true, default_value_t = SizeCaps::default().arithmetic, value_parser = positive)]
    cap_arith: usize,
    /// Most one-sided ideals an enumeration may produce.
    #[arg(long, global = true, default_value_t = SizeCaps::default().ideals, value_parser = positive)]
    cap_ideals: usize,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true, value_parser = positive)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decide every ring-class predicate by all of its routes.
    Classify {
        specs: Vec<PathBuf>,
        /// Comma-separated predicate names (default: all).
        #[arg(long, value_delimiter = ',')]
        predicates: Vec<String>,
    },
    /// Enumerate the coprime-pair poset.
    Rcp {
        spec: PathBuf,
        /// Also write the Hasse diagram as Graphviz DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Witness descending chains and compute their lower bounds.
    Chains {
        spec: PathBuf,
        /// A chain as `a,b;c,d;...`, top first (default: greedy maximal chains).
        #[arg(long)]
        chain: Option<String>,
    },
    /// Run the theorem audit and every invariant suite on a directory of specs.
    Audit { dir: PathBuf },
    /// Run every invariant suite on the given rings.
    VerifyProps { specs: Vec<PathBuf> },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

/// A report and the status it should exit with.
struct Output {
    json: Value,
    text: String,
    status: Status,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.config.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let caps = SizeCaps {
        full_analysis: cli.config.cap_full,
        arithmetic: cli.config.cap_arith,
        ideals: cli.config.cap_ideals,
    };
    let result = match &cli.command {
        Command::Classify { specs, predicates } => run_classify(specs, predicates, &caps),
        Command::Rcp { spec, dot } => run_rcp(spec, dot.as_deref(), &caps),
        Command::Chains { spec, chain } => run_chains(spec, chain.as_deref(), &caps),
        Command::Audit { dir } => run_audit_dir(dir, &caps),
        Command::VerifyProps { specs } => run_verify(specs, &caps),
    };
    let output = match result {
        Ok(output) => output,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(Status::of_error(&e).exit_code() as u8);
        }
    };
    let rendered = match cli.config.format {
        Format::Json => serde_json::to_string_pretty(&output.json).expect("reports serialize") + "\n",
        Format::Text => output.text,
    };
    if let Err(e) = emit(cli.config.out.as_deref(), &rendered) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if output.status != Status::Pass {
        eprintln!("status: {:?}", output.status);
    }
    ExitCode::from(output.status.exit_code() as u8)
}

fn emit(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn prepare(path: &Path, caps: &SizeCaps) -> Result<Analysis, Error> {
    let ring = load_spec(path)?.build_with(caps)?;
    Analysis::with_caps(ring, *caps)
}

fn no_inputs() -> Error {
    Error::InvalidSpec("no spec files given".into())
}

/// One value for a single input, an array otherwise.
fn collapse(mut values: Vec<Value>) -> Value {
    if values.len() == 1 {
        values.pop().unwrap()
    } else {
        Value::Array(values)
    }
}

fn run_classify(specs: &[PathBuf], names: &[String], caps: &SizeCaps) -> Result<Output, Error> {
    if specs.is_empty() {
        return Err(no_inputs());
    }
    let registry = PredicateRegistry::standard();
    let selected = if names.is_empty() {
        registry.all()
    } else {
        registry.select(names)?
    };
    let mut status = Status::Pass;
    let mut values = Vec::new();
    let mut text = String::new();
    for path in specs {
        let an = prepare(path, caps)?;
        let report = classify(&an, &selected);
        if !report.routes_agree() {
            status = status.max(Status::InvariantViolation);
        }
        if let Some((_, e)) = report.errors().next() {
            status = status.max(Status::of_error(e));
        }
        text += &format!(
            "{} ({} elements): {} classes, {} minimal\n",
            report.ring, report.size, report.class_count, report.minimal_class_count
        );
        for (name, outcome) in &report.predicates.0 {
            let line = match outcome {
                Outcome::Record(r) => {
                    let routes: Vec<String> = r
                        .routes
                        .iter()
                        .map(|route| match route.value {
                            Some(v) => format!("{}={v}", route.name),
                            None => format!("{}=skipped", route.name),
                        })
                        .collect();
                    let flag = if r.agree { "" } else { "  ROUTES DISAGREE" };
                    format!("  {name:<24} {:<5}  [{}]{flag}\n", r.value, routes.join(", "))
                }
                Outcome::Failed(e) => format!("  {name:<24} error: {e}\n"),
            };
            text += &line;
        }
        values.push(serde_json::to_value(&report).expect("reports serialize"));
    }
    Ok(Output {
        json: collapse(values),
        text,
        status,
    })
}

fn run_rcp(spec: &Path, dot: Option<&Path>, caps: &SizeCaps) -> Result<Output, Error> {
    let an = prepare(spec, caps)?;
    let label = an.ring().label().to_owned();
    let poset = an.poset();
    if let Some(path) = dot {
        fs::write(path, poset_dot(&label, poset))
            .map_err(|e| Error::InvalidSpec(format!("{}: {e}", path.display())))?;
    }
    let export = PosetExport::new(&label, an.size(), poset);
    let mut text = format!(
        "{label} ({} elements): {} classes, {} minimal, {} covering pairs\n",
        an.size(),
        export.class_count,
        export.minimal.len(),
        export.covers.len()
    );
    for class in &export.classes {
        let (a, b) = class.generators;
        let mark = if class.minimal { "  minimal" } else { "" };
        text += &format!(
            "  c{} <{a},{b}> |aR|={} |bR|={}{mark}\n",
            class.index,
            class.first_ideal.len(),
            class.second_ideal.len()
        );
    }
    let status = if poset.is_partial_order() {
        Status::Pass
    } else {
        Status::InvariantViolation
    };
    Ok(Output {
        json: serde_json::to_value(&export).expect("reports serialize"),
        text,
        status,
    })
}

fn parse_chain(text: &str) -> Result<Vec<(usize, usize)>, Error> {
    text.split(';')
        .map(|pair| {
            let parts: Vec<&str> = pair.split(',').map(str::trim).collect();
            match parts.as_slice() {
                [a, b] => Ok((
                    a.parse().map_err(|_| bad_chain(pair))?,
                    b.parse().map_err(|_| bad_chain(pair))?,
                )),
                _ => Err(bad_chain(pair)),
            }
        })
        .collect()
}

fn bad_chain(pair: &str) -> Error {
    Error::InvalidSpec(format!("chain entry `{pair}` is not of the form a,b"))
}

fn run_chains(spec: &Path, chain: Option<&str>, caps: &SizeCaps) -> Result<Output, Error> {
    let an = prepare(spec, caps)?;
    let ring = an.ring();
    let poset = an.poset();
    let label = ring.label().to_owned();

    if let Some(chain) = chain {
        let mut classes = Vec::new();
        for (a, b) in parse_chain(chain)? {
            ring.check_element(a)?;
            ring.check_element(b)?;
            classes.push(pair_class(&an, a, b)?);
        }
        let witnessed = witness_chain(&an, &classes)?;
        let annihilator = annihilator_lower_bound_criterion(&an, &witnessed).ok();
        let report = chain_report(&an, witnessed);
        let consistent = report.consistent
            && annihilator.as_ref().map_or(true, |c| c.agrees_with_lower_bounds);
        let text = format!(
            "{label}: chain {:?}\n  step witnesses {:?}\n  lower bounds {:?}\n  minimal lower bound {:?}\n",
            report.chain.pairs,
            report
                .chain
                .step_witnesses
                .iter()
                .map(|w| (w.r, w.s))
                .collect::<Vec<_>>(),
            report.lower_bounds,
            report.minimal_lower_bound
        );
        return Ok(Output {
            json: json!({ "ring": label, "report": report, "annihilator_criterion": annihilator }),
            text,
            status: if consistent {
                Status::Pass
            } else {
                Status::InvariantViolation
            },
        });
    }

    let strongly_exchange = is_strongly_exchange_finite(&an)?;
    let audit = audit_chains(&an, CHAIN_TARGET, CHAIN_MAX_LENGTH);
    let mut reports = Vec::new();
    let mut consistent = true;
    for classes in greedy_maximal_chains(poset) {
        let witnessed = coprime::chains::witness_chain_indices(&an, &classes)?;
        let report = chain_report(&an, witnessed);
        consistent &= report.consistent;
        reports.push(report);
    }
    let text = format!(
        "{label}: strongly exchange {}, {} classes, height {}\n  {} chains audited, passed {}\n",
        strongly_exchange.value,
        strongly_exchange.class_count,
        strongly_exchange.height,
        audit.chains,
        audit.passed
    );
    let status = if consistent && audit.passed {
        Status::Pass
    } else {
        Status::InvariantViolation
    };
    Ok(Output {
        json: json!({
            "ring": label,
            "strongly_exchange": strongly_exchange,
            "audit": audit,
            "maximal_chains": reports,
        }),
        text,
        status,
    })
}

fn run_audit_dir(dir: &Path, caps: &SizeCaps) -> Result<Output, Error> {
    let report = run_audit(dir, caps)?;
    for warning in &report.warnings {
        eprintln!("warning: {warning}");
    }
    let mut text = format!(
        "{} rings, {} passed, {} failed\n",
        report.ring_count, report.passed, report.failed
    );
    for entry in &report.rings {
        let detail = entry.error.as_deref().unwrap_or("");
        text += &format!("  {:<20} {:?} {detail}\n", entry.file, entry.status);
    }
    Ok(Output {
        json: serde_json::to_value(&report).expect("reports serialize"),
        text,
        status: report.status,
    })
}

fn run_verify(specs: &[PathBuf], caps: &SizeCaps) -> Result<Output, Error> {
    if specs.is_empty() {
        return Err(no_inputs());
    }
    let mut values = Vec::new();
    let mut text = String::new();
    let mut status = Status::Pass;
    for path in specs {
        let an = prepare(path, caps)?;
        let report = verify_properties(&an);
        if !report.passed {
            status = Status::InvariantViolation;
        }
        text += &format!(
            "{}: {} pairs ({} coprime), {} classes, {} chains, passed {}\n",
            report.ring,
            report.coprimality.pairs,
            report.coprimality.coprime_pairs,
            report.minimality.classes,
            report.chains.chains,
            report.passed
        );
        values.push(serde_json::to_value(&report).expect("reports serialize"));
    }
    Ok(Output {
        json: collapse(values),
        text,
        status,
    })
}
