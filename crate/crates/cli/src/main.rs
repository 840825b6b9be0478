//! Command-line workbench for many-valued modal logics over finite
//! residuated lattices.

use clap::{Args, Parser, Subcommand};
use mvmodal_core::algebra::{
    check_laws, classify, parse_algebra_file, preset, render_algebra_file, ResiduatedLattice,
};
use mvmodal_core::calculus::{check_derivation, generate_bookkeeping, generate_witnessing, parse_derivation_file};
use mvmodal_core::formula::{
    characterizing_formula, companion, parse as parse_formula, standard_translation, Formula,
};
use mvmodal_core::scenarios;
use mvmodal_core::search::{
    companion_discard, companion_lift, frame_definability_check, global_consequence_refute,
    local_consequence_refute, matrix_soundness, validity_search, DiscardOutcome, DiscardVariant,
    SearchBudget, Verdict,
};
use mvmodal_core::semantics::{parse_model_file, render_model_file, FrameClass};
use serde::Serialize;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

const EXIT_OK: u8 = 0;
const EXIT_REFUTED: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_FILE: u8 = 66;

#[derive(Parser)]
#[command(
    name = "mvmodal",
    about = "Finite residuated lattices, graded Kripke semantics, bounded countermodel search and Hilbert-style calculi",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect and validate algebras.
    Algebra {
        #[command(subcommand)]
        command: AlgebraCmd,
    },
    /// Parse, translate and synthesize formulas.
    Formula {
        #[command(subcommand)]
        command: FormulaCmd,
    },
    /// Evaluate formulas in a model file.
    Model {
        #[command(subcommand)]
        command: ModelCmd,
    },
    /// Bounded countermodel search and the companion method.
    Search {
        #[command(subcommand)]
        command: SearchCmd,
    },
    /// Derivation checking and axiom generation.
    Calc {
        #[command(subcommand)]
        command: CalcCmd,
    },
    /// Run the reproduction scenarios.
    Reproduce {
        /// Scenario id, or `all`.
        id: String,
        /// Print transcripts for passing scenarios too.
        #[arg(long)]
        verbose: bool,
    },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Validate an algebra and print its classification.
    Check { spec: String },
    /// Print the full tables and classification.
    Show { spec: String },
}

#[derive(Subcommand)]
enum FormulaCmd {
    /// Parse and print the canonical form.
    Parse {
        formula: String,
        /// Allow canonical constants `@label`.
        #[arg(long, default_value = "on", value_parser = parse_on_off)]
        constants: bool,
    },
    /// Print the non-modal companion π(φ).
    Companion { formula: String },
    /// Print the standard first-order translation.
    Translate {
        formula: String,
        /// Free world variable.
        #[arg(long, default_value = "x")]
        free: String,
    },
    /// Synthesize the characterizing formula η_a over a finite MV chain.
    Eta {
        #[arg(long)]
        algebra: String,
        /// Element label, e.g. `0.5`.
        label: String,
    },
}

#[derive(Subcommand)]
enum ModelCmd {
    /// Evaluate a formula at a world (or at all worlds).
    Eval {
        model_file: String,
        formula: String,
        world: Option<String>,
    },
}

#[derive(Args, Clone)]
struct SearchOpts {
    /// Algebra preset (e.g. `lukasiewicz(3)`) or algebra file path.
    #[arg(long)]
    algebra: String,
    /// Allow canonical constants in formulas.
    #[arg(long, default_value = "off", value_parser = parse_on_off)]
    constants: bool,
    /// Frame class: all | idem | crisp | boolean.
    #[arg(long, default_value = "all")]
    class: String,
    /// Bound on the number of worlds.
    #[arg(long, default_value_t = 2)]
    max_worlds: usize,
    /// Parallel worker cap (the verdict does not depend on it).
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Optional cap on the number of candidate models.
    #[arg(long)]
    model_cap: Option<u64>,
    /// Output format: text | json-lines.
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Bounded validity over a frame class.
    Valid {
        #[command(flatten)]
        opts: SearchOpts,
        formula: String,
    },
    /// Local consequence refutation: all premises 1 at a world, the
    /// conclusion not.
    Local {
        #[command(flatten)]
        opts: SearchOpts,
        /// Premise (repeatable).
        #[arg(long = "assume")]
        assumes: Vec<String>,
        formula: String,
    },
    /// Global consequence refutation: premises valid in the model, the
    /// conclusion not.
    Global {
        #[command(flatten)]
        opts: SearchOpts,
        #[arg(long = "assume")]
        assumes: Vec<String>,
        formula: String,
    },
    /// Frame definability: do the formulas define exactly the class?
    Define {
        #[command(flatten)]
        opts: SearchOpts,
        formulas: Vec<String>,
    },
    /// Companion discard method (class all | idem | crisp picks the
    /// variant).
    Discard {
        #[command(flatten)]
        opts: SearchOpts,
        formula: String,
    },
    /// Companion lift: exact premise, valid modal conclusion.
    Lift {
        #[command(flatten)]
        opts: SearchOpts,
        /// Non-decreasing combinator over variables x1, x2, …
        #[arg(long)]
        delta: String,
        /// Expanding unary term over p.
        #[arg(long, default_value = "p")]
        epsilon: String,
        /// Premise formulas bound to x1, x2, … (repeatable).
        #[arg(long = "phi")]
        phis: Vec<String>,
        /// Use the modally-witnessed conclusion ε(□φ) instead of □ε(φ).
        #[arg(long)]
        witnessed: bool,
        formula: String,
    },
    /// Matrix soundness of the Table 5 calculus in one of the two
    /// independence matrices.
    Matrix {
        /// `ex52a` or `ex52b`.
        which: String,
    },
}

#[derive(Subcommand)]
enum CalcCmd {
    /// Check a derivation file; prints ok or the first invalid step.
    Check { derivation_file: String },
    /// Print the book-keeping formulas and the witnessing axiom.
    Bookkeeping { algebra: String },
}

fn parse_on_off(s: &str) -> Result<bool, String> {
    match s {
        "on" => Ok(true),
        "off" => Ok(false),
        other => Err(format!("expected on/off, got `{other}`")),
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn error(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_ERROR,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn file(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_FILE,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn load_algebra(spec: &str) -> Result<ResiduatedLattice, Failure> {
    match preset(spec) {
        Ok(alg) => Ok(alg),
        Err(preset_err) => {
            if Path::new(spec).exists() {
                let text = std::fs::read_to_string(spec)
                    .map_err(|e| Failure::file(format!("{spec}: {e}")))?;
                parse_algebra_file(&text).map_err(|e| Failure::error(e.to_string()))
            } else if spec.contains('.') || spec.contains('/') {
                Err(Failure::file(format!("no such algebra file `{spec}`")))
            } else {
                Err(Failure::usage(preset_err.to_string()))
            }
        }
    }
}

fn read_file(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::file(format!("{path}: {e}")))
}

fn parse_f(text: &str, constants: bool) -> Result<Formula, Failure> {
    parse_formula(text, constants).map_err(|e| Failure::usage(e.to_string()))
}

fn frame_class(name: &str) -> Result<FrameClass, Failure> {
    FrameClass::parse(name).ok_or_else(|| Failure::usage(format!("unknown frame class `{name}`")))
}

#[derive(Serialize)]
struct VerdictJson<'a> {
    op: &'a str,
    verdict: &'a str,
    bound: Option<usize>,
    world: Option<&'a str>,
    model: Option<String>,
}

fn print_verdict(op: &str, verdict: &Verdict, format: &str) -> Result<u8, Failure> {
    match format {
        "text" => match verdict {
            Verdict::ValidUpTo(n) => {
                println!("ValidUpTo({n})");
                Ok(EXIT_OK)
            }
            Verdict::Refuted { model, world } => {
                println!("Refuted at world {}", model.frame.worlds[*world]);
                print!("{}", render_model_file(model));
                Ok(EXIT_REFUTED)
            }
        },
        "json-lines" => {
            let json = match verdict {
                Verdict::ValidUpTo(n) => VerdictJson {
                    op,
                    verdict: "valid-up-to",
                    bound: Some(*n),
                    world: None,
                    model: None,
                },
                Verdict::Refuted { model, world } => VerdictJson {
                    op,
                    verdict: "refuted",
                    bound: None,
                    world: Some(&model.frame.worlds[*world]),
                    model: Some(render_model_file(model)),
                },
            };
            println!("{}", serde_json::to_string(&json).expect("verdict serializes"));
            Ok(match verdict {
                Verdict::ValidUpTo(_) => EXIT_OK,
                Verdict::Refuted { .. } => EXIT_REFUTED,
            })
        }
        other => Err(Failure::usage(format!("unknown format `{other}`"))),
    }
}

fn budget(opts: &SearchOpts) -> SearchBudget {
    let mut b = SearchBudget::new(opts.max_worlds).with_jobs(opts.jobs);
    if let Some(cap) = opts.model_cap {
        b = b.with_model_cap(cap);
    }
    b
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Algebra { command } => match command {
            AlgebraCmd::Check { spec } => {
                let alg = load_algebra(&spec)?;
                println!("ok: {} with {} elements", alg.name(), alg.size());
                println!("{}", classify(&alg).summary(&alg));
                for law in check_laws(&alg) {
                    match (&law.pass, &law.witness) {
                        (true, _) => println!("law ({}): pass", law.law),
                        (false, Some((x, y1, y2))) => {
                            println!("law ({}): fails at x={x}, y1={y1}, y2={y2}", law.law)
                        }
                        (false, None) => println!("law ({}): fails", law.law),
                    }
                }
                Ok(EXIT_OK)
            }
            AlgebraCmd::Show { spec } => {
                let alg = load_algebra(&spec)?;
                print!("{}", render_algebra_file(&alg));
                println!("residuum:");
                for a in alg.elements() {
                    let row: Vec<&str> =
                        alg.elements().map(|b| alg.label(alg.res(a, b))).collect();
                    println!("{}", row.join(" "));
                }
                println!("{}", classify(&alg).summary(&alg));
                Ok(EXIT_OK)
            }
        },
        Command::Formula { command } => match command {
            FormulaCmd::Parse { formula, constants } => {
                let f = parse_f(&formula, constants)?;
                println!("{f}");
                Ok(EXIT_OK)
            }
            FormulaCmd::Companion { formula } => {
                let f = parse_f(&formula, true)?;
                let pi = companion(&f).map_err(|e| Failure::error(e.to_string()))?;
                println!("{pi}");
                Ok(EXIT_OK)
            }
            FormulaCmd::Translate { formula, free } => {
                let f = parse_f(&formula, true)?;
                println!("{}", standard_translation(&f, &free));
                Ok(EXIT_OK)
            }
            FormulaCmd::Eta { algebra, label } => {
                let alg = load_algebra(&algebra)?;
                let a = alg
                    .by_label(&label)
                    .map_err(|e| Failure::usage(e.to_string()))?;
                let eta =
                    characterizing_formula(&alg, a).map_err(|e| Failure::error(e.to_string()))?;
                println!("{eta}");
                Ok(EXIT_OK)
            }
        },
        Command::Model { command } => match command {
            ModelCmd::Eval {
                model_file,
                formula,
                world,
            } => {
                let text = read_file(&model_file)?;
                let loader =
                    |path: &str| std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"));
                let model =
                    parse_model_file(&text, &loader).map_err(|e| Failure::error(e.to_string()))?;
                let f = parse_f(&formula, model.constants)?;
                let worlds: Vec<usize> = match world {
                    Some(name) => vec![model
                        .frame
                        .world_index(&name)
                        .map_err(|e| Failure::usage(e.to_string()))?],
                    None => (0..model.frame.n_worlds()).collect(),
                };
                for w in worlds {
                    let value = model
                        .eval(&f, w)
                        .map_err(|e| Failure::error(e.to_string()))?;
                    println!("{}: {}", model.frame.worlds[w], model.algebra().label(value));
                }
                Ok(EXIT_OK)
            }
        },
        Command::Search { command } => run_search(command),
        Command::Calc { command } => match command {
            CalcCmd::Check { derivation_file } => {
                let text = read_file(&derivation_file)?;
                let (calc, derivation) =
                    parse_derivation_file(&text).map_err(|e| Failure::error(e.to_string()))?;
                match check_derivation(&calc, &derivation) {
                    Ok(()) => {
                        println!("ok: {} steps over {}", derivation.steps.len(), calc.name);
                        Ok(EXIT_OK)
                    }
                    Err(e) => {
                        println!("{e}");
                        Ok(EXIT_REFUTED)
                    }
                }
            }
            CalcCmd::Bookkeeping { algebra } => {
                let alg = load_algebra(&algebra)?;
                for formula in generate_bookkeeping(&alg) {
                    println!("{formula}");
                }
                println!("{}", generate_witnessing(&alg));
                Ok(EXIT_OK)
            }
        },
        Command::Reproduce { id, verbose } => {
            let results = if id == "all" {
                scenarios::run_all()
            } else {
                match scenarios::run_scenario(&id) {
                    Some(r) => vec![r],
                    None => {
                        return Err(Failure::usage(format!(
                            "unknown scenario `{id}`; known: {}",
                            scenarios::SCENARIO_IDS.join(", ")
                        )))
                    }
                }
            };
            let mut all_pass = true;
            for r in &results {
                println!("{} {}", if r.pass { "PASS" } else { "FAIL" }, r.id);
                if !r.pass || verbose {
                    for line in r.transcript.lines() {
                        println!("    {line}");
                    }
                }
                all_pass &= r.pass;
            }
            Ok(if all_pass { EXIT_OK } else { EXIT_REFUTED })
        }
    }
}

fn run_search(command: SearchCmd) -> Result<u8, Failure> {
    match command {
        SearchCmd::Valid { opts, formula } => {
            let alg = Arc::new(load_algebra(&opts.algebra)?);
            let f = parse_f(&formula, opts.constants)?;
            let class = frame_class(&opts.class)?;
            let verdict = validity_search(&alg, class, &f, &budget(&opts))
                .map_err(|e| Failure::error(e.to_string()))?;
            print_verdict("valid", &verdict, &opts.format)
        }
        SearchCmd::Local {
            opts,
            assumes,
            formula,
        } => {
            let alg = Arc::new(load_algebra(&opts.algebra)?);
            let gamma: Vec<Formula> = assumes
                .iter()
                .map(|t| parse_f(t, opts.constants))
                .collect::<Result<_, _>>()?;
            let f = parse_f(&formula, opts.constants)?;
            let class = frame_class(&opts.class)?;
            let verdict = local_consequence_refute(&alg, class, &gamma, &f, &budget(&opts))
                .map_err(|e| Failure::error(e.to_string()))?;
            print_verdict("local", &verdict, &opts.format)
        }
        SearchCmd::Global {
            opts,
            assumes,
            formula,
        } => {
            let alg = Arc::new(load_algebra(&opts.algebra)?);
            let gamma: Vec<Formula> = assumes
                .iter()
                .map(|t| parse_f(t, opts.constants))
                .collect::<Result<_, _>>()?;
            let f = parse_f(&formula, opts.constants)?;
            let class = frame_class(&opts.class)?;
            let verdict = global_consequence_refute(&alg, class, &gamma, &f, &budget(&opts))
                .map_err(|e| Failure::error(e.to_string()))?;
            print_verdict("global", &verdict, &opts.format)
        }
        SearchCmd::Define { opts, formulas } => {
            if formulas.is_empty() {
                return Err(Failure::usage("define needs at least one formula"));
            }
            let alg = Arc::new(load_algebra(&opts.algebra)?);
            let phis: Vec<Formula> = formulas
                .iter()
                .map(|t| parse_f(t, opts.constants))
                .collect::<Result<_, _>>()?;
            let class = frame_class(&opts.class)?;
            let outcome = frame_definability_check(&alg, &phis, class, &budget(&opts))
                .map_err(|e| Failure::error(e.to_string()))?;
            match outcome {
                Ok(()) => {
                    println!(
                        "defined: the formulas define exactly the {} frames up to {} worlds",
                        class.name(),
                        opts.max_worlds
                    );
                    Ok(EXIT_OK)
                }
                Err(failure) => {
                    if failure.validates_but_outside {
                        println!("not defined: a frame outside the class validates the set");
                    } else {
                        println!("not defined: a frame in the class refutes the set");
                    }
                    for w in 0..failure.frame.n_worlds() {
                        for w2 in 0..failure.frame.n_worlds() {
                            let v = failure.frame.r(w, w2);
                            if v != failure.frame.algebra.bottom() {
                                println!(
                                    "R: {} {} = {}",
                                    failure.frame.worlds[w],
                                    failure.frame.worlds[w2],
                                    failure.frame.algebra.label(v)
                                );
                            }
                        }
                    }
                    Ok(EXIT_REFUTED)
                }
            }
        }
        SearchCmd::Discard { opts, formula } => {
            let alg = Arc::new(load_algebra(&opts.algebra)?);
            let f = parse_f(&formula, opts.constants)?;
            let class = frame_class(&opts.class)?;
            let variant = DiscardVariant::from_class(class)
                .ok_or_else(|| Failure::usage("discard supports the classes all, idem and crisp"))?;
            let outcome =
                companion_discard(&alg, &f, variant).map_err(|e| Failure::error(e.to_string()))?;
            match outcome {
                DiscardOutcome::Inconclusive => {
                    println!("Inconclusive");
                    Ok(EXIT_OK)
                }
                DiscardOutcome::Discarded {
                    assignment,
                    model,
                    world,
                } => {
                    let desc: Vec<String> = assignment
                        .iter()
                        .map(|(v, e)| format!("{v}={}", alg.label(*e)))
                        .collect();
                    println!("Discarded with {}", desc.join(", "));
                    println!(
                        "chain countermodel (refutes at {}):",
                        model.frame.worlds[world]
                    );
                    print!("{}", render_model_file(&model));
                    Ok(EXIT_REFUTED)
                }
            }
        }
        SearchCmd::Lift {
            opts,
            delta,
            epsilon,
            phis,
            witnessed,
            formula,
        } => {
            let alg = Arc::new(load_algebra(&opts.algebra)?);
            let delta_f = parse_f(&delta, opts.constants)?;
            let epsilon_f = parse_f(&epsilon, opts.constants)?;
            let phi_fs: Vec<Formula> = phis
                .iter()
                .map(|t| parse_f(t, opts.constants))
                .collect::<Result<_, _>>()?;
            let target = parse_f(&formula, opts.constants)?;
            let delta_args: Vec<String> = (1..=phi_fs.len()).map(|i| format!("x{i}")).collect();
            let out = companion_lift(
                &alg,
                &delta_f,
                &delta_args,
                &epsilon_f,
                "p",
                &phi_fs,
                &target,
                witnessed,
                &budget(&opts),
            )
            .map_err(|e| Failure::error(e.to_string()))?;
            println!("conclusion: {}", out.conclusion);
            print_verdict("lift", &out.verified, &opts.format)
        }
        SearchCmd::Matrix { which } => {
            let second = match which.as_str() {
                "ex52a" => false,
                "ex52b" => true,
                other => {
                    return Err(Failure::usage(format!(
                        "unknown matrix `{other}`; known: ex52a, ex52b"
                    )))
                }
            };
            let (matrix, calc) = scenarios::example_52_matrix(second);
            let items = matrix_soundness(&matrix, &calc);
            let mut any_fail = false;
            for item in items {
                if item.pass {
                    println!("pass: {}", item.name);
                } else {
                    any_fail = true;
                    let witness = item
                        .witness
                        .unwrap_or_default()
                        .iter()
                        .map(|(k, v)| format!("{k}={v}"))
                        .collect::<Vec<_>>()
                        .join(", ");
                    println!("FAIL: {} at {witness}", item.name);
                }
            }
            Ok(if any_fail { EXIT_REFUTED } else { EXIT_OK })
        }
    }
}
