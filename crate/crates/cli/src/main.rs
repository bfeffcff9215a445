use std::path::PathBuf;
use std::process::ExitCode;

use ate_core::oracles::{self, Budget, TheoremId};
use ate_core::{Error, Event, FiniteCapacity, Scenario, StatisticSpec};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Evaluate, rank and analyse acts under ambiguity.
#[derive(Parser)]
#[command(name = "ate", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output layout.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Certainty equivalent of every act.
    Evaluate(ScenarioArgs),
    /// Acts from best to worst with their values.
    Rank(ScenarioArgs),
    /// Matching probability of events.
    Matching {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Event key such as 101 (character i marks state i); repeatable.
        /// Defaults to every nonempty proper event.
        #[arg(long = "event")]
        events: Vec<String>,
    },
    /// Modularity, balancedness and exactness of the scenario's capacity.
    CapacityReport {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Run a property suite on seeded random instances.
    Verify {
        theorem: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        instances: Option<usize>,
        /// Largest state count drawn.
        #[arg(long)]
        n_max: Option<usize>,
    },
}

#[derive(Args)]
struct ScenarioArgs {
    #[arg(long)]
    scenario: PathBuf,
    /// Statistic replacing the model's, as inline JSON or a path to a JSON file.
    #[arg(long)]
    statistic: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

struct Output {
    lines: Vec<String>,
    status: u8,
}

impl Output {
    fn ok(lines: Vec<String>) -> Self {
        Self { lines, status: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command, cli.format) {
        Ok(out) => {
            for line in out.lines {
                println!("{line}");
            }
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, format: Format) -> Result<Output, Error> {
    match command {
        Command::Evaluate(args) => evaluate(&load(&args)?, format),
        Command::Rank(args) => rank(&load(&args)?, format),
        Command::Matching { scenario, events } => matching(&load(&scenario)?, &events, format),
        Command::CapacityReport { scenario } => capacity_report(&Scenario::load(scenario)?, format),
        Command::Verify {
            theorem,
            seed,
            instances,
            n_max,
        } => verify(&theorem, seed, instances, n_max, format),
    }
}

fn load(args: &ScenarioArgs) -> Result<Scenario, Error> {
    let scenario = Scenario::load(&args.scenario)?;
    match &args.statistic {
        Some(spec) => scenario.with_statistic(parse_statistic(spec)?),
        None => Ok(scenario),
    }
}

fn parse_statistic(spec: &str) -> Result<StatisticSpec, Error> {
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else {
        std::fs::read_to_string(spec).map_err(|e| Error::Io {
            path: spec.to_string(),
            reason: e.to_string(),
        })?
    };
    let stat: StatisticSpec =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("statistic: {e}")))?;
    stat.validate()?;
    Ok(stat)
}

/// Twelve decimals with trailing zeros removed.
fn num(x: f64) -> String {
    let s = format!("{x:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn evaluate(s: &Scenario, format: Format) -> Result<Output, Error> {
    let mut lines = Vec::new();
    for (name, act) in &s.acts {
        let v = num(s.model.evaluate(act)?);
        lines.push(match format {
            Format::Text => format!("{name} {v}"),
            Format::Records => format!("value.{name}={v}"),
        });
    }
    Ok(Output::ok(lines))
}

fn rank(s: &Scenario, format: Format) -> Result<Output, Error> {
    let ranked = s
        .model
        .rank_with_tolerance(&s.act_list(), s.options.tolerance)?;
    let lines = match format {
        Format::Text => vec![ranked
            .iter()
            .map(|r| format!("{} {}", r.name, num(r.value)))
            .collect::<Vec<_>>()
            .join(", ")],
        Format::Records => ranked
            .iter()
            .enumerate()
            .flat_map(|(i, r)| {
                let pos = i + 1;
                [
                    format!("rank.{pos}={}", r.name),
                    format!("value.{pos}={}", num(r.value)),
                    format!("class.{pos}={}", r.class),
                ]
            })
            .collect(),
    };
    Ok(Output::ok(lines))
}

fn matching(s: &Scenario, keys: &[String], format: Format) -> Result<Output, Error> {
    let events: Vec<Event> = if keys.is_empty() {
        Event::proper_nonempty(s.n).collect()
    } else {
        keys.iter()
            .map(|k| Event::parse_key(k, s.n))
            .collect::<Result<_, _>>()?
    };
    let mut lines = Vec::new();
    for e in events {
        let p = num(s.model.matching_probability(e)?);
        let key = e.key(s.n);
        lines.push(match format {
            Format::Text => format!("{key} {p}"),
            Format::Records => format!("matching.{key}={p}"),
        });
    }
    Ok(Output::ok(lines))
}

fn pair(n: usize, w: Option<(Event, Event)>) -> Option<String> {
    w.map(|(a, b)| format!("{},{}", a.key(n), b.key(n)))
}

fn weights(w: &[f64]) -> String {
    w.iter().map(|&x| num(x)).collect::<Vec<_>>().join(" ")
}

fn capacity_report(s: &Scenario, format: Format) -> Result<Output, Error> {
    let c: &FiniteCapacity = s.capacity().ok_or_else(|| {
        Error::Config(
            "scenario has no capacity: add a \"capacity\" field or use a capacity-based map".into(),
        )
    })?;
    let n = c.n();
    let mut rows: Vec<(String, String)> = vec![("n".into(), n.to_string())];
    let sup = c.supermodularity_violation();
    rows.push(("supermodular".into(), sup.is_none().to_string()));
    if let Some(w) = pair(n, sup) {
        rows.push(("supermodular_violation".into(), w));
    }
    let sub = c.submodularity_violation();
    rows.push(("submodular".into(), sub.is_none().to_string()));
    if let Some(w) = pair(n, sub) {
        rows.push(("submodular_violation".into(), w));
    }
    let balanced = c.is_balanced()?;
    rows.push(("balanced".into(), balanced.to_string()));
    if balanced {
        let violation = c.exactness_violation()?;
        rows.push(("exact".into(), violation.is_none().to_string()));
        if let Some(e) = violation {
            rows.push(("exactness_violation".into(), e.key(n)));
        }
        if let Some(p) = c.core_point()? {
            rows.push(("core_point".into(), weights(p.weights())));
        }
    } else {
        rows.push(("exact".into(), "false".into()));
    }
    if sup.is_none() && n <= ate_core::capacity::MAX_VERTEX_STATES {
        for (i, v) in c.core_vertices_supermodular()?.iter().enumerate() {
            rows.push((format!("vertex.{}", i + 1), weights(v.weights())));
        }
    }
    let sep = match format {
        Format::Text => ": ",
        Format::Records => "=",
    };
    Ok(Output::ok(
        rows.into_iter()
            .map(|(k, v)| format!("{k}{sep}{v}"))
            .collect(),
    ))
}

fn verify(
    theorem: &str,
    seed: Option<u64>,
    instances: Option<usize>,
    n_max: Option<usize>,
    format: Format,
) -> Result<Output, Error> {
    let theorem: TheoremId = theorem.parse()?;
    let default = theorem.default_budget();
    let budget = Budget {
        instances: instances.unwrap_or(default.instances),
        seed: seed.unwrap_or(default.seed),
        n_max: n_max.unwrap_or(default.n_max),
    };
    let report = oracles::verify(theorem, budget)?;
    eprintln!("elapsed={:.3}s", report.elapsed.as_secs_f64());
    let lines = match format {
        Format::Records => report.to_records().lines().map(str::to_string).collect(),
        Format::Text => {
            let mut lines = vec![format!(
                "{} {} ({} instances checked, seed {}, n up to {})",
                theorem,
                if report.passed { "passed" } else { "FAILED" },
                report.instances_checked,
                budget.seed,
                budget.n_max
            )];
            if let Some(w) = &report.witness {
                lines.push(format!("witness: {w}"));
            }
            lines.extend(report.notes.iter().map(|n| format!("note: {n}")));
            lines
        }
    };
    Ok(Output {
        lines,
        status: if report.passed { 0 } else { 1 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_are_trimmed() {
        assert_eq!(num(1.5), "1.5");
        assert_eq!(num(4.0 / 3.0), "1.333333333333");
        assert_eq!(num(1.0), "1");
        assert_eq!(num(1.4000000000000001), "1.4");
        assert_eq!(num(-1e-14), "0");
        assert_eq!(num(-2.25), "-2.25");
    }

    #[test]
    fn statistic_inline() {
        let s = parse_statistic(r#"{"family":"Entropic","a":0.5}"#).unwrap();
        assert_eq!(s, StatisticSpec::Entropic { a: 0.5 });
        assert!(parse_statistic(r#"{"family":"Entropic","a":0.5,"b":1}"#).is_err());
    }
}
