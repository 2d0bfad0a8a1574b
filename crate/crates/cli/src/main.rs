use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use truthlab::closure::{fh_construct, ClassicalModel, FhOutcome};
use truthlab::exec::{configure_threads, Exec};
use truthlab::scenarios::{
    bundled_source, countermodel, list_scenarios, run_scenario_with, ScenarioOptions, ScenarioReport, COUNTERMODELS,
    SYSTEMS,
};
use truthlab::schemas::{check_with, THEORIES};
use truthlab::syntax::{PoolConfig, SentenceSystem};
use truthlab::translations::{sigma, tau, Delta, Dual};
use truthlab::valuation::{enumerate_fixed_points, eval_fde, least_fixed_point, FixedPoint, Variant};

#[derive(Parser)]
#[command(name = "truthlab", version, about = "Kripkean fixed points, classical closures and axiom checks")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Config {
    /// Pool generation depth.
    #[arg(long, global = true, default_value_t = 2)]
    depth: usize,
    /// Largest name table to enumerate fixed points over.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    max_names: u64,
    /// Cap on the sentence pool.
    #[arg(long, global = true, default_value_t = 2000, value_parser = clap::value_parser!(u64).range(1..))]
    max_pool: u64,
    /// Stage limit for the staged construction.
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    max_stages: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the fixed points of a system with their classes.
    Fixedpoints { system: String },
    /// Check a theory against a model.
    Check {
        #[arg(long)]
        theory: String,
        #[arg(long, default_value = "lfp-closure")]
        model: String,
        system: String,
    },
    /// Evaluate a sentence in a model: `[SYSTEM] SENTENCE`, liar_tt by default.
    Eval {
        #[arg(long, default_value = "lfp-closure")]
        model: String,
        #[arg(num_args = 1..=2, required = true)]
        args: Vec<String>,
    },
    /// Build the countermodel for a corollary item (i to vii, or cd-dt).
    Countermodel { item: String },
    /// Apply a translation: `[SYSTEM] FORMULA`, liar_tt by default.
    Translate {
        /// delta-cons, delta-comp, delta-sym, dual-c, tau or sigma.
        translation: String,
        #[arg(num_args = 1..=2, required = true)]
        args: Vec<String>,
    },
    /// Run one scenario, or all of them with --all.
    Scenario {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        id: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// List theories, scenarios, bundled systems and countermodel items.
    List,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<truthlab::Error> for Failure {
    fn from(e: truthlab::Error) -> Self {
        use truthlab::Error::*;
        let code = match e {
            PoolBudgetExceeded { .. } | EnumerationBudgetExceeded { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type Outcome = Result<u8, Failure>;

fn load(path: &str, c: &Config) -> Result<SentenceSystem, Failure> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            // Bundled systems can be named by id or by a path ending in `<id>.tl`.
            let stem = Path::new(path).file_stem().and_then(|s| s.to_str()).unwrap_or(path);
            match bundled_source(stem) {
                Some(src) => src.to_string(),
                None => return Err(usage(format!("cannot read {path}: {e}"))),
            }
        }
    };
    let config = PoolConfig {
        max_pool: c.max_pool as usize,
        ..PoolConfig::default()
    };
    Ok(SentenceSystem::parse_with(&text, Some(c.depth), config)?)
}

fn split_args(args: &[String]) -> (&str, &str) {
    match args {
        [text] => ("liar_tt", text),
        [system, text] => (system, text),
        _ => unreachable!("clap enforces one or two values"),
    }
}

enum Model {
    Classical(ClassicalModel),
    Fde(FixedPoint),
}

fn variant(s: &str) -> Result<Variant, Failure> {
    s.parse().map_err(|_| usage(format!("unknown variant `{s}`")))
}

fn model(sel: &str, sys: &SentenceSystem, c: &Config) -> Result<Model, Failure> {
    let (fp, kind) = if let Some(rest) = sel.strip_prefix("fp#") {
        let (k, kind) = rest
            .split_once('-')
            .ok_or_else(|| usage(format!("bad model selector `{sel}`")))?;
        let k: usize = k.parse().map_err(|_| usage(format!("bad fixed point index in `{sel}`")))?;
        let fps = enumerate_fixed_points(sys, c.max_names as usize, Exec::default())?;
        let fp = fps
            .get(k)
            .cloned()
            .ok_or_else(|| usage(format!("there are {} fixed points, no #{k}", fps.len())))?;
        (fp, kind)
    } else {
        (least_fixed_point(sys)?, sel.strip_prefix("lfp-").unwrap_or(sel))
    };
    let m = match kind {
        "closure" => ClassicalModel::closure(sys, &fp),
        "inner" => ClassicalModel::inner(sys, &fp),
        "typed" => ClassicalModel::typed(sys, &fp),
        "fde" => return Ok(Model::Fde(fp)),
        "fh" => match fh_construct(sys, c.max_stages as usize)? {
            FhOutcome::Stabilized { model, .. } => model,
            FhOutcome::NonStabilized { trace } => {
                return Err(Failure {
                    code: 3,
                    message: format!(
                        "staged construction did not stabilize within {} stages{}",
                        trace.stages.len() - 1,
                        trace.period.map(|p| format!(" (period {p})")).unwrap_or_default()
                    ),
                })
            }
        },
        _ => {
            if let Some(v) = kind.strip_prefix("cd-") {
                ClassicalModel::cd(sys, &fp, variant(v)?)?
            } else if let Some(rest) = kind.strip_prefix("lemma-b") {
                let (v, b) = rest
                    .split_once(":B=")
                    .ok_or_else(|| usage("lemma-b selectors look like lemma-b:B=<sentence>"))?;
                let v = match v.strip_prefix('-') {
                    Some(v) => variant(v)?,
                    None if v.is_empty() => Variant::Cons,
                    None => return Err(usage(format!("bad model selector `{sel}`"))),
                };
                ClassicalModel::lemma_b(sys, &fp, v, &sys.parse_sentence(b)?)?
            } else {
                return Err(usage(format!("unknown model `{sel}`")));
            }
        }
    };
    Ok(Model::Classical(m))
}

fn emit(c: &Config, text: String, value: serde_json::Value) {
    match c.format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("serializable")),
    }
}

fn scenario_options(c: &Config) -> ScenarioOptions {
    ScenarioOptions {
        depth: c.depth,
        max_stages: c.max_stages as usize,
        exec: Exec::default(),
    }
}

fn emit_scenarios(c: &Config, reports: &[ScenarioReport]) -> u8 {
    let text: String = reports.iter().map(|r| r.to_text()).collect();
    let value = match reports {
        [one] => serde_json::to_value(one),
        _ => serde_json::to_value(reports),
    };
    emit(c, text, value.expect("serializable"));
    if reports.iter().all(|r| r.passed()) {
        0
    } else {
        1
    }
}

fn run(cli: Cli) -> Outcome {
    let c = &cli.config;
    match &cli.command {
        Command::Fixedpoints { system } => {
            let sys = load(system, c)?;
            let fps = enumerate_fixed_points(&sys, c.max_names as usize, Exec::default())?;
            let count = |p: fn(&FixedPoint) -> bool| fps.iter().filter(|f| p(f)).count();
            let (cons, comp, sym, mixed) = (
                count(|f| f.class.consistent),
                count(|f| f.class.complete),
                count(|f| f.class.symmetric),
                count(|f| f.class.mixed),
            );
            let mut text = format!(
                "{} fixed points (consistent {cons}, complete {comp}, symmetric {sym}, mixed {mixed})\n",
                fps.len()
            );
            for (i, fp) in fps.iter().enumerate() {
                text.push_str(&format!("#{i} {} {}\n", fp.assignment, fp.class.label()));
            }
            let value = json!({
                "system": system,
                "count": fps.len(),
                "classes": {"consistent": cons, "complete": comp, "symmetric": sym, "mixed": mixed},
                "fixed_points": fps,
            });
            emit(c, text, value);
            Ok(0)
        }
        Command::Check { theory, model: sel, system } => {
            let sys = load(system, c)?;
            let Model::Classical(m) = model(sel, &sys, c)? else {
                return Err(usage("theories are checked in classical models, not fde"));
            };
            let r = check_with(&m, theory, Exec::default())?;
            emit(c, r.to_text(), serde_json::to_value(&r).expect("serializable"));
            Ok(if r.passed() { 0 } else { 1 })
        }
        Command::Eval { model: sel, args } => {
            let (system, text) = split_args(args);
            let sys = load(system, c)?;
            let f = sys.parse_sentence(text)?;
            let (label, value) = match model(sel, &sys, c)? {
                Model::Classical(m) => (m.describe(), m.eval(&f)?.to_string()),
                Model::Fde(fp) => (format!("fde {}", fp.assignment), eval_fde(&sys, &fp.assignment, &f)?.to_string()),
            };
            emit(
                c,
                format!("{value}\n"),
                json!({"model": label, "sentence": f.to_string(), "value": value}),
            );
            Ok(0)
        }
        Command::Countermodel { item } => {
            if !COUNTERMODELS.contains(&item.as_str()) {
                return Err(usage(format!(
                    "unknown countermodel item `{item}`; expected one of {}",
                    COUNTERMODELS.join(", ")
                )));
            }
            let r = countermodel(item, scenario_options(c))?;
            Ok(emit_scenarios(c, &[r]))
        }
        Command::Translate { translation, args } => {
            let (system, text) = split_args(args);
            let sys = load(system, c)?;
            let f = sys.parse_sentence(text)?;
            let (out, extended) = match translation.as_str() {
                "tau" => (tau(&f)?, None),
                "sigma" => (sigma(&sys, &f)?, None),
                "dual-c" | "c" => {
                    let d = Dual::new(&sys)?;
                    (d.apply(&f)?, Some(d.system().clone()))
                }
                t => match t.strip_prefix("delta-") {
                    Some(v) => {
                        let d = Delta::new(&sys, variant(v)?)?;
                        (d.apply(&f)?, Some(d.system().clone()))
                    }
                    None => return Err(usage(format!("unknown translation `{t}`"))),
                },
            };
            let mut companions = Vec::new();
            if let Some(ext) = extended {
                for n in ext.primary_names() {
                    if sys.body(n).is_none() {
                        let body = ext.body(n).expect("listed name has a body");
                        companions.push(format!("name {n} := {body};"));
                    }
                }
            }
            let mut text_out = format!("{out}\n");
            for comp in &companions {
                text_out.push_str(&format!("  {comp}\n"));
            }
            emit(
                c,
                text_out,
                json!({"translation": translation, "input": f.to_string(), "output": out.to_string(), "companions": companions}),
            );
            Ok(0)
        }
        Command::Scenario { id, all } => {
            let o = scenario_options(c);
            let reports = if *all {
                list_scenarios()
                    .iter()
                    .map(|(id, _)| run_scenario_with(id, o))
                    .collect::<Result<Vec<_>, _>>()?
            } else {
                let id = id.as_deref().expect("clap requires an id without --all");
                vec![run_scenario_with(id, o)?]
            };
            Ok(emit_scenarios(c, &reports))
        }
        Command::List => {
            let mut text = String::from("theories:\n");
            for (id, d) in THEORIES {
                text.push_str(&format!("  {id:<16} {d}\n"));
            }
            text.push_str("scenarios:\n");
            for (id, d) in list_scenarios() {
                text.push_str(&format!("  {id:<16} {d}\n"));
            }
            text.push_str("systems:\n");
            for (id, _) in SYSTEMS {
                text.push_str(&format!("  {id}\n"));
            }
            text.push_str(&format!("countermodels: {}\n", COUNTERMODELS.join(" ")));
            let value = json!({
                "theories": THEORIES.iter().map(|(id, d)| json!({"id": id, "description": d})).collect::<Vec<_>>(),
                "scenarios": list_scenarios().iter().map(|(id, d)| json!({"id": id, "description": d})).collect::<Vec<_>>(),
                "systems": SYSTEMS.iter().map(|(id, _)| *id).collect::<Vec<_>>(),
                "countermodels": COUNTERMODELS,
            });
            emit(c, text, value);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("TRUTHLAB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            configure_threads(n);
        }
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("truthlab: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
