use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use relpat::equivalence::ne_equivalent;
use relpat::inclusion::{
    build_predicates, satisfied_predicates, ErasingConstruction, SigmaAssignment,
};
use relpat::machines::{
    ca_encode, ca_find_accepting_run, ca_validate, utm_validate, EncodingParams,
    TwoCounterAutomaton, UtmConfiguration,
};
use relpat::matcher::match_word;
use relpat::reductions::{generate, verify_reduction, CnfFormula, ReductionVariant};
use relpat::relations::relation_holds;
use relpat::semantics::{enumerate_language, equality_counterexample, inclusion_counterexample};
use relpat::syntax::{parse_pattern_file, print_pattern_file};
use relpat::{report, Mode, RelationKind, RelationalPattern, Substitution, Word};

type Failure = Box<dyn std::error::Error>;

#[derive(Parser)]
#[command(name = "relpat", version, about = "Relational pattern languages")]
struct Cli {
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one relation on two words
    Rel { name: String, u: String, v: String },
    /// Membership of a word in a pattern language
    Member {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        witness: bool,
    },
    /// All words of the language up to a length, sorted
    Enum {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        max_len: usize,
    },
    /// Bounded inclusion L(a) ⊆ L(b)
    Bincl(PairBound),
    /// Bounded equality L(a) = L(b)
    Beq(PairBound),
    /// Non-erasing equivalence
    Equiv {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Build (or verify) a 3-SAT reduction instance
    #[command(args_conflicts_with_subcommands = true, subcommand_negates_reqs = true)]
    Reduce {
        #[command(subcommand)]
        action: Option<ReduceAction>,
        #[command(flatten)]
        args: ReduceArgs,
        /// Destination of the pattern file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    #[command(subcommand)]
    Machine(MachineCommand),
    /// Erasing inclusion construction over a two-counter automaton
    #[command(subcommand)]
    Thm3(Thm3Command),
    /// Run the seeded self-check suites
    Report {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "report.json")]
        out: PathBuf,
        /// Record wall time per suite (output is then no longer reproducible)
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Args)]
struct PairBound {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    max_len: usize,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long, required = true)]
    variant: Option<String>,
    #[arg(long)]
    kind: Option<String>,
    #[arg(long, required = true)]
    cnf: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ReduceAction {
    /// Check membership of the instance against brute-force SAT
    Verify(ReduceArgs),
}

#[derive(Args)]
struct Params {
    #[arg(long, default_value_t = 1)]
    x: u64,
    #[arg(long, default_value_t = 1)]
    c1: u64,
    #[arg(long, default_value_t = 1)]
    c2: u64,
    #[arg(long, default_value_t = 1)]
    y2: u64,
}

#[derive(Subcommand)]
enum MachineCommand {
    /// Shortest accepting run from (q0, 0, 0)
    CaRun {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long, default_value_t = 64)]
        max_steps: usize,
    },
    /// Encoding of the shortest accepting run
    CaEncode {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long, default_value_t = 64)]
        max_steps: usize,
        #[command(flatten)]
        params: Params,
    },
    /// Is the word an encoded accepting computation
    CaValidate {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long)]
        word: String,
        #[command(flatten)]
        params: Params,
    },
    /// Is the word an encoded computation of the universal machine
    UtmValidate {
        #[arg(long)]
        word: String,
        /// Start configuration `state,left,right`
        #[arg(long)]
        start: String,
    },
}

#[derive(Subcommand)]
enum Thm3Command {
    /// Write the right-hand pattern for an automaton
    Build {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Indices (1-based) of the predicates an assignment satisfies
    Eval {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        sigma_x: String,
        #[arg(long, allow_hyphen_values = true)]
        sigma_y: String,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn load_pattern(path: &Path) -> Result<(RelationalPattern, Option<Mode>), Failure> {
    let text = read(path)?;
    let file = parse_pattern_file(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((file.pattern, file.mode))
}

/// Flag wins over the file's `mode:` clause; non-erasing otherwise.
fn pick_mode(flag: Option<&str>, file: Option<Mode>) -> Result<Mode, Failure> {
    match flag {
        Some(s) => Mode::parse(s).ok_or_else(|| format!("unknown mode `{s}`").into()),
        None => Ok(file.unwrap_or(Mode::NonErasing)),
    }
}

fn load_automaton(path: &Path) -> Result<TwoCounterAutomaton, Failure> {
    Ok(TwoCounterAutomaton::parse(&read(path)?)?)
}

fn params(p: &Params) -> Result<EncodingParams, Failure> {
    Ok(EncodingParams::new(p.x, p.c1, p.c2, p.y2)?)
}

fn witness_text(h: &Substitution) -> String {
    h.iter()
        .map(|(v, w)| format!("{v}={w}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn verdict(json_out: bool, value: bool, extra: Option<(&str, serde_json::Value)>) {
    if json_out {
        let mut obj = json!({ "result": value });
        if let Some((k, v)) = extra {
            obj[k] = v;
        }
        println!("{obj}");
    } else {
        println!("{value}");
        if let Some((_, v)) = extra {
            match v {
                serde_json::Value::String(s) => println!("{s}"),
                other => println!("{other}"),
            }
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let json_out = cli.json;
    match cli.command {
        Command::Rel { name, u, v } => {
            let kind = RelationKind::from_name(&name)
                .ok_or_else(|| format!("unknown relation `{name}`"))?;
            let u: Vec<char> = u.chars().collect();
            let v: Vec<char> = v.chars().collect();
            let r = relation_holds(kind, &u, &v);
            verdict(json_out, r, None);
            Ok(r)
        }
        Command::Member {
            pattern,
            word,
            mode,
            witness,
        } => {
            let (rp, file_mode) = load_pattern(&pattern)?;
            let mode = pick_mode(mode.as_deref(), file_mode)?;
            let h = match_word(&Word::from(word.as_str()), &rp, mode)?;
            let extra = match (&h, witness) {
                (Some(h), true) if json_out => Some((
                    "witness",
                    serde_json::Value::Object(
                        h.iter()
                            .map(|(v, w)| (v.to_string(), json!(w.to_string())))
                            .collect(),
                    ),
                )),
                (Some(h), true) => Some(("witness", json!(witness_text(h)))),
                _ => None,
            };
            verdict(json_out, h.is_some(), extra);
            Ok(h.is_some())
        }
        Command::Enum {
            pattern,
            mode,
            max_len,
        } => {
            let (rp, file_mode) = load_pattern(&pattern)?;
            let mode = pick_mode(mode.as_deref(), file_mode)?;
            let lang = enumerate_language(&rp, mode, max_len)?;
            let words = lang.shortlex();
            if json_out {
                let list: Vec<String> = words.iter().map(|w| w.to_string()).collect();
                println!("{}", json!(list));
            } else {
                for w in words {
                    println!("{w}");
                }
            }
            Ok(true)
        }
        Command::Bincl(p) => pair_check(p, json_out, false),
        Command::Beq(p) => pair_check(p, json_out, true),
        Command::Equiv { a, b } => {
            let (a, _) = load_pattern(&a)?;
            let (b, _) = load_pattern(&b)?;
            let r = ne_equivalent(&a, &b)?;
            verdict(json_out, r, None);
            Ok(r)
        }
        Command::Reduce { action, args, out } => {
            let verify = matches!(action, Some(ReduceAction::Verify(_)));
            let args = match action {
                Some(ReduceAction::Verify(a)) => a,
                None => args,
            };
            let variant: ReductionVariant = args
                .variant
                .as_deref()
                .ok_or("missing --variant")?
                .parse()?;
            let kind = match args.kind.as_deref() {
                Some(k) => Some(
                    RelationKind::from_name(k).ok_or_else(|| format!("unknown relation `{k}`"))?,
                ),
                None => None,
            };
            let phi = CnfFormula::from_dimacs(&read(args.cnf.as_deref().ok_or("missing --cnf")?)?)?;
            if verify {
                let ok = verify_reduction(variant, kind, &phi)?;
                verdict(json_out, ok, None);
                return Ok(ok);
            }
            let inst = generate(variant, kind, &phi)?;
            let text = print_pattern_file(&inst.pattern, inst.mode);
            match out {
                Some(path) => fs::write(&path, format!("{text}\n"))?,
                None if !json_out => println!("{text}"),
                None => {}
            }
            if json_out {
                println!(
                    "{}",
                    json!({
                        "variant": variant.name(),
                        "kind": inst.kind.name(),
                        "mode": inst.mode.name(),
                        "word": inst.word.to_string(),
                        "pattern": text,
                    })
                );
            } else {
                println!("{}", inst.word);
            }
            Ok(true)
        }
        Command::Machine(m) => machine(m, json_out),
        Command::Thm3(t) => thm3(t, json_out),
        Command::Report { seed, out, timings } => {
            let reports = report::run_report(seed, timings);
            fs::write(&out, report::to_json(&reports))?;
            if json_out {
                print!("{}", report::to_json(&reports));
            } else {
                print!("{}", report::to_text(&reports));
            }
            Ok(reports.iter().all(|r| r.ok()))
        }
    }
}

fn pair_check(p: PairBound, json_out: bool, equality: bool) -> Result<bool, Failure> {
    let (a, ma) = load_pattern(&p.a)?;
    let (b, _) = load_pattern(&p.b)?;
    let mode = pick_mode(p.mode.as_deref(), ma)?;
    let cex = if equality {
        equality_counterexample(&a, &b, mode, p.max_len)?
    } else {
        inclusion_counterexample(&a, &b, mode, p.max_len)?
    };
    let extra = cex
        .as_ref()
        .map(|w| ("counterexample", json!(w.to_string())));
    verdict(json_out, cex.is_none(), extra);
    Ok(cex.is_none())
}

fn machine(m: MachineCommand, json_out: bool) -> Result<bool, Failure> {
    match m {
        MachineCommand::CaRun {
            automaton,
            max_steps,
        } => {
            let a = load_automaton(&automaton)?;
            let run = ca_find_accepting_run(&a, max_steps);
            match &run {
                Some(run) if json_out => {
                    let list: Vec<[u64; 3]> = run
                        .iter()
                        .map(|c| [c.state as u64, c.counter1, c.counter2])
                        .collect();
                    println!("{}", json!({ "result": true, "run": list }));
                }
                Some(run) => {
                    for c in run {
                        println!("{c}");
                    }
                }
                None => verdict(json_out, false, None),
            }
            Ok(run.is_some())
        }
        MachineCommand::CaEncode {
            automaton,
            max_steps,
            params: p,
        } => {
            let a = load_automaton(&automaton)?;
            let p = params(&p)?;
            let Some(run) = ca_find_accepting_run(&a, max_steps) else {
                verdict(json_out, false, None);
                return Ok(false);
            };
            let w = ca_encode(&run, p);
            if json_out {
                println!("{}", json!({ "result": true, "word": w.to_string() }));
            } else {
                println!("{w}");
            }
            Ok(true)
        }
        MachineCommand::CaValidate {
            automaton,
            word,
            params: p,
        } => {
            let a = load_automaton(&automaton)?;
            let ok = ca_validate(&Word::from(word.as_str()), &a, params(&p)?);
            verdict(json_out, ok, None);
            Ok(ok)
        }
        MachineCommand::UtmValidate { word, start } => {
            let parts: Vec<&str> = start.split(',').map(str::trim).collect();
            let bad = || format!("start must be `state,left,right`, got `{start}`");
            if parts.len() != 3 {
                return Err(bad().into());
            }
            let state: u8 = parts[0]
                .trim_start_matches('q')
                .parse()
                .map_err(|_| bad())?;
            if !(1..=15).contains(&state) {
                return Err(format!("state {state} outside 1..=15").into());
            }
            let left: u64 = parts[1].parse().map_err(|_| bad())?;
            let right: u64 = parts[2].parse().map_err(|_| bad())?;
            let ok = utm_validate(
                &Word::from(word.as_str()),
                UtmConfiguration::new(state, left, right),
            );
            verdict(json_out, ok, None);
            Ok(ok)
        }
    }
}

fn thm3(t: Thm3Command, json_out: bool) -> Result<bool, Failure> {
    match t {
        Thm3Command::Build { automaton, out } => {
            let a = load_automaton(&automaton)?;
            let c = ErasingConstruction::default();
            let preds = c.predicates(&a);
            let beta = c.beta(&preds);
            fs::write(
                &out,
                format!("{}\n", print_pattern_file(&beta, Mode::Erasing)),
            )?;
            let alpha = print_pattern_file(&c.alpha(), Mode::Erasing);
            if json_out {
                println!(
                    "{}",
                    json!({ "predicates": preds.len(), "beta_length": beta.pattern().len(), "alpha": alpha })
                );
            } else {
                println!("predicates: {}", preds.len());
                println!("beta length: {}", beta.pattern().len());
                println!("alpha: {alpha}");
            }
            Ok(true)
        }
        Thm3Command::Eval {
            automaton,
            sigma_x,
            sigma_y,
        } => {
            let a = load_automaton(&automaton)?;
            let preds = build_predicates(&a);
            let sigma = SigmaAssignment::new(sigma_x.as_str(), sigma_y.as_str());
            let hits = satisfied_predicates(&sigma, &preds)?;
            if json_out {
                let names: Vec<&str> = hits.iter().map(|&i| preds[i - 1].name.as_str()).collect();
                println!("{}", json!({ "satisfied": hits, "names": names }));
            } else {
                for &i in &hits {
                    println!("{i} {}", preds[i - 1].name);
                }
            }
            Ok(!hits.is_empty())
        }
    }
}
