use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use tvml::kripke::{load_model, load_model4, model_to_json, validate_class_ii, validate_s4, ModelClass};
use tvml::proof::{check, load_derivation, SystemId};
use tvml::search::{
    correspondence_check, find_countermodel, rule_soundness_report, system_class, Bounds, CountermodelResult,
    HarnessOptions,
};
use tvml::semantics::{evaluate, ModelRef, SemanticsId};
use tvml::syntax::{parse, Formula};
use tvml::truthval::{compress, tables_text, TruthValue3, TruthValue4};

const EXIT_CODES: &str = "\
Exit codes:
  0  success, or an OK verdict (model valid, proof accepted, no countermodel within bounds)
  1  negative verdict (model violates its class, proof rejected, countermodel found, selftest failure)
  2  usage error, unreadable file or malformed input";

#[derive(Parser)]
#[command(name = "tvml", version, about = "Three-valued modal logic workbench", after_help = EXIT_CODES)]
struct Cli {
    /// Emit a JSON document instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the exhaustive sweeps (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula at a world of a model.
    Eval {
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
        #[arg(long, value_name = "ID")]
        world: String,
        /// wk, I, II, 4I or 4II. The four-valued ones need a four-valued model.
        #[arg(long, value_parser = parse_semantics)]
        semantics: SemanticsId,
        formula: String,
    },
    /// Print the weak Kleene truth tables and the compression map.
    Table,
    /// Check a model file against a model class.
    CheckModel {
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
        /// all, ii, s4 or s4-ii.
        #[arg(long, default_value = "all", value_parser = parse_class)]
        class: ModelClass,
        /// The file holds four-valued values; checks apply to its compression.
        #[arg(long)]
        four: bool,
    },
    /// Check a derivation file against a proof system.
    CheckProof {
        /// I, II, I-s4 or II-s4.
        #[arg(long, value_parser = parse_system)]
        system: SystemId,
        file: PathBuf,
    },
    /// Search small models for a countermodel to `ASSUMPTIONS |- GOAL`.
    Countermodel {
        /// wk, I or II.
        #[arg(long, value_parser = parse_semantics)]
        semantics: SemanticsId,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=4))]
        max_worlds: u32,
        /// Comma-separated atoms to enumerate; atoms of the formulas are always added.
        #[arg(long, value_delimiter = ',', default_value = "p,q")]
        atoms: Vec<String>,
        /// all, ii, s4 or s4-ii.
        #[arg(long, default_value = "all", value_parser = parse_class)]
        class: ModelClass,
        /// An assumption; repeat for several.
        #[arg(long = "assume", value_name = "FORMULA")]
        assume: Vec<String>,
        goal: String,
    },
    /// Run the rule-soundness sweep for every system and the correspondence check.
    Selftest {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=3))]
        max_worlds: u32,
        #[arg(long, value_delimiter = ',', default_value = "p,q")]
        atoms: Vec<String>,
        /// Formula depth for the correspondence check.
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Formula depth of the rule-instance pool.
        #[arg(long, default_value_t = 1)]
        pool_depth: usize,
    },
}

fn parse_semantics(s: &str) -> Result<SemanticsId, String> {
    s.parse()
}

fn parse_class(s: &str) -> Result<ModelClass, String> {
    s.parse()
}

fn parse_system(s: &str) -> Result<SystemId, String> {
    s.parse()
}

/// A failure that ends the run with exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

struct Outcome {
    ok: bool,
    text: String,
    json: Value,
}

fn read(path: &Path) -> Result<String, UsageError> {
    fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn formula(text: &str) -> Result<Formula, UsageError> {
    parse(text).map_err(|e| UsageError(format!("{text:?}: {e}")))
}

fn eval(model: &Path, world: &str, sem: SemanticsId, text: &str) -> Result<Outcome, UsageError> {
    let source = read(model)?;
    let f = formula(text)?;
    let value = if sem.is_four_valued() {
        let m = load_model4(&source)?;
        evaluate(ModelRef::Four(&m), world, &f, sem)?
    } else {
        let m = load_model(&source)?;
        evaluate(ModelRef::Three(&m), world, &f, sem)?
    };
    Ok(Outcome {
        ok: true,
        text: format!("{value}\n"),
        json: json!({"world": world, "formula": text, "value": value.to_string()}),
    })
}

fn table() -> Outcome {
    let row = |f: &dyn Fn(TruthValue3) -> TruthValue3| -> Value {
        TruthValue3::ALL.iter().map(|&a| (a.to_string(), json!(f(a).to_string()))).collect()
    };
    let binary = |f: fn(TruthValue3, TruthValue3) -> TruthValue3| -> Value {
        TruthValue3::ALL
            .iter()
            .map(|&a| (a.to_string(), row(&|b| f(a, b))))
            .collect()
    };
    let compression: serde_json::Map<String, Value> = TruthValue4::ALL
        .iter()
        .map(|&v| (v.to_string(), json!(compress(v).to_string())))
        .collect();
    Outcome {
        ok: true,
        text: tables_text(),
        json: json!({
            "negation": row(&tvml::truthval::wk_not),
            "conjunction": binary(tvml::truthval::wk_and),
            "disjunction": binary(tvml::truthval::wk_or),
            "compression": compression,
        }),
    }
}

fn check_model(path: &Path, class: ModelClass, four: bool) -> Result<Outcome, UsageError> {
    let source = read(path)?;
    let m = if four {
        tvml::kripke::compress_model(&load_model4(&source)?)
    } else {
        load_model(&source)?
    };
    let mut problems: Vec<String> = Vec::new();
    if class.requires_s4() {
        problems.extend(validate_s4(&m).iter().map(|v| format!("s4: {v}")));
    }
    if class.requires_class_ii() {
        problems.extend(validate_class_ii(&m).iter().map(|v| format!("class II: {v}")));
    }
    let text = if problems.is_empty() {
        "OK\n".to_string()
    } else {
        problems.iter().map(|p| format!("{p}\n")).collect()
    };
    Ok(Outcome {
        ok: problems.is_empty(),
        text,
        json: json!({"verdict": if problems.is_empty() { "ok" } else { "invalid" }, "violations": problems}),
    })
}

fn check_proof(path: &Path, sys: SystemId) -> Result<Outcome, UsageError> {
    let d = load_derivation(&read(path)?)?;
    match check(&d, sys) {
        Ok(()) => Ok(Outcome {
            ok: true,
            text: "OK\n".into(),
            json: json!({"verdict": "ok", "system": sys.name(), "conclusion": d.conclusion.to_string()}),
        }),
        Err(errors) => Ok(Outcome {
            ok: false,
            text: errors.iter().map(|e| format!("{e}\n")).collect(),
            json: json!({
                "verdict": "rejected",
                "system": sys.name(),
                "errors": errors
                    .iter()
                    .map(|e| json!({"address": e.address.to_string(), "rule": e.rule.name(), "message": e.message}))
                    .collect::<Vec<_>>(),
            }),
        }),
    }
}

fn countermodel(sem: SemanticsId, bounds: &Bounds, assume: &[String], goal: &str) -> Result<Outcome, UsageError> {
    let gamma = assume.iter().map(|t| formula(t)).collect::<Result<Vec<_>, _>>()?;
    let goal = formula(goal)?;
    match find_countermodel(&gamma, &goal, sem, bounds)? {
        CountermodelResult::Found(c) => {
            let model = model_to_json(&c.model);
            let text = format!(
                "countermodel found at world {}\n{}\n",
                c.world,
                serde_json::to_string_pretty(&model).expect("model serializes")
            );
            Ok(Outcome {
                ok: false,
                text,
                json: json!({"verdict": "countermodel", "world": c.world, "model": model}),
            })
        }
        CountermodelResult::NoneWithinBounds => Ok(Outcome {
            ok: true,
            text: format!("no countermodel up to bounds ({bounds}); this is not a proof of entailment\n"),
            json: json!({"verdict": "none-within-bounds", "bounds": bounds.to_string()}),
        }),
    }
}

fn selftest(bounds: &Bounds, depth: usize, pool_depth: usize) -> Outcome {
    let opts = HarnessOptions {
        pool_depth,
        ..Default::default()
    };
    let mut ok = true;
    let mut text = String::new();
    let mut systems = Vec::new();
    for sys in SystemId::ALL {
        let r = rule_soundness_report(sys, &bounds.for_system(sys), &opts);
        ok &= r.is_clean();
        text.push_str(&format!(
            "soundness {:<6} class {:<13} models {:>6}  violations {}\n",
            sys.name(),
            format!("{:?}", system_class(sys)),
            r.models,
            r.total_violations()
        ));
        for rule in r.rules.iter().filter(|x| x.violations > 0) {
            for ex in &rule.examples {
                text.push_str(&format!("  {}: {} at {}\n", rule.rule.name(), ex.instance.conclusion, ex.world));
            }
        }
        systems.push(json!({
            "system": sys.name(),
            "models": r.models,
            "violations": r
                .rules
                .iter()
                .map(|x| (x.rule.name().to_string(), json!(x.violations)))
                .collect::<serde_json::Map<_, _>>(),
        }));
    }
    let c = correspondence_check(bounds, depth);
    ok &= c.is_clean();
    text.push_str(&format!(
        "correspondence depth {depth}: models {}  lifts {}  checks {}  mismatches {}\n",
        c.models, c.lifts, c.checks, c.mismatch_count
    ));
    for m in &c.mismatches {
        text.push_str(&format!(
            "  {:?}: {} at {}: {} vs {}\n",
            m.variant, m.formula, m.world, m.three_valued, m.four_valued
        ));
    }
    text.push_str(if ok { "selftest passed\n" } else { "selftest FAILED\n" });
    Outcome {
        ok,
        text,
        json: json!({
            "verdict": if ok { "ok" } else { "failed" },
            "bounds": bounds.to_string(),
            "soundness": systems,
            "correspondence": {
                "models": c.models,
                "lifts": c.lifts,
                "checks": c.checks,
                "mismatches": c.mismatch_count,
            },
        }),
    }
}

fn bounds_of(max_worlds: u32, atoms: &[String], class: ModelClass) -> Result<Bounds, UsageError> {
    if let Some(bad) = atoms.iter().find(|a| !tvml::syntax::is_atom_name(a)) {
        return Err(UsageError(format!("invalid atom name {bad:?}")));
    }
    Ok(Bounds {
        max_worlds: max_worlds as usize,
        atoms: atoms.to_vec(),
        max_depth: 0,
        model_class: class,
    })
}

fn run(cli: Cli) -> Result<Outcome, UsageError> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    match cli.command {
        Command::Eval {
            model,
            world,
            semantics,
            formula,
        } => eval(&model, &world, semantics, &formula),
        Command::Table => Ok(table()),
        Command::CheckModel { model, class, four } => check_model(&model, class, four),
        Command::CheckProof { system, file } => check_proof(&file, system),
        Command::Countermodel {
            semantics,
            max_worlds,
            atoms,
            class,
            assume,
            goal,
        } => countermodel(semantics, &bounds_of(max_worlds, &atoms, class)?, &assume, &goal),
        Command::Selftest {
            max_worlds,
            atoms,
            depth,
            pool_depth,
        } => Ok(selftest(&bounds_of(max_worlds, &atoms, ModelClass::All)?, depth, pool_depth)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(outcome) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&outcome.json).expect("json serializes"));
            } else {
                print!("{}", outcome.text);
            }
            ExitCode::from(if outcome.ok { 0 } else { 1 })
        }
        Err(UsageError(message)) => {
            if json {
                println!("{}", json!({"verdict": "error", "message": message}));
            }
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
