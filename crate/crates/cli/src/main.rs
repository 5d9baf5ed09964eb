use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use actkit::act::{decompose_indecomposable, tensor, ActMap, FiniteAct};
use actkit::colimit::{cocones_into, colimit, directed_colimit, verify_universal_property, DirectSystem};
use actkit::congruence::Congruence;
use actkit::corpus::{generate_corpus, CorpusSpec};
use actkit::cover::{build_precover, find_cover, PrecoverCertificate};
use actkit::flatness::check_class;
use actkit::json::{
    act_to_doc, monoid_to_doc, parse, read_corpus, read_value, to_value, write_corpus, CongruenceDoc, Loader, MapDoc,
    MonoidDoc, SystemDoc,
};
use actkit::purity::{is_n_pure, is_pure_epi};
use actkit::suite::{run_suite_with, SUITES};
use actkit::{Builder, ClassId, Error};

#[derive(Parser)]
#[command(name = "actkit", version, about = "Exact algebra of finite monoids and their right acts")]
struct Cli {
    /// Pretty-print output instead of one JSON object per line
    #[arg(long, global = true)]
    human: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    #[command(subcommand)]
    Monoid(MonoidCmd),
    #[command(subcommand)]
    Act(ActCmd),
    /// Decide class membership of an act
    Check {
        #[arg(long)]
        act: PathBuf,
        #[arg(long)]
        class: ClassId,
    },
    /// Decide purity of an epimorphism
    Purity(PurityArgs),
    /// Colimit of a direct system
    Colimit {
        #[arg(long)]
        system: PathBuf,
        /// Cross-check against the directed formula and probe the universal property
        #[arg(long)]
        verify: bool,
    },
    /// Cover (or precover) of an act for Pr, SF or CP
    Cover {
        #[arg(long)]
        act: PathBuf,
        #[arg(long)]
        class: ClassId,
        #[arg(long)]
        precover_only: bool,
    },
    #[command(subcommand)]
    Corpus(CorpusCmd),
    #[command(subcommand)]
    Suite(SuiteCmd),
}

#[derive(Subcommand)]
enum MonoidCmd {
    /// Build a standard monoid, e.g. `monoid new cyclic_group 3`
    New {
        builder: String,
        params: Vec<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Validate {
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum ActCmd {
    Validate {
        file: PathBuf,
    },
    /// Indecomposable components
    Decompose {
        file: PathBuf,
    },
    /// Quotient by a congruence file or by the congruence generated by pairs
    Quotient {
        #[arg(long, required_unless_present = "congruence")]
        act: Option<PathBuf>,
        /// Generating pairs as `a,b`
        #[arg(long = "pair", value_parser = parse_pair)]
        pairs: Vec<(usize, usize)>,
        #[arg(long, conflicts_with_all = ["act", "pairs"])]
        congruence: Option<PathBuf>,
    },
    /// `A ⊗ B` for a right act `A` and a left act `B`, given as a right act
    /// over the opposite monoid
    Tensor {
        #[arg(long)]
        act: PathBuf,
        #[arg(long)]
        left: PathBuf,
    },
}

#[derive(Args)]
struct PurityArgs {
    #[arg(long)]
    map: PathBuf,
    /// Check liftability of tuples of this length only
    #[arg(long, conflicts_with = "full")]
    n: Option<usize>,
    /// Full purity (the default)
    #[arg(long)]
    full: bool,
}

#[derive(Subcommand)]
enum CorpusCmd {
    Generate {
        #[arg(long, default_value_t = CorpusSpec::default().max_monoid_order)]
        max_monoid_order: usize,
        #[arg(long, default_value_t = CorpusSpec::default().max_act_size)]
        max_act_size: usize,
        /// Builders to include, e.g. `cyclic_group(2)`; defaults to the standard five
        #[arg(long = "builder")]
        builders: Vec<String>,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
enum SuiteCmd {
    /// Run one suite, or `all`
    Run {
        id: String,
        /// Corpus directory written by `corpus generate`; the default corpus otherwise
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        timing: bool,
    },
    List,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("`{s}` is not `a,b`"))?;
    let num = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("`{x}`: {e}"));
    Ok((num(a)?, num(b)?))
}

enum Outcome {
    Pass(Vec<Value>),
    Fail(Vec<Value>),
}

impl Outcome {
    fn verdict(holds: bool, line: Value) -> Self {
        if holds {
            Outcome::Pass(vec![line])
        } else {
            Outcome::Fail(vec![line])
        }
    }
}

fn load_act(path: &Path) -> Result<Arc<FiniteAct>, Error> {
    let value = read_value(path)?;
    Loader::beside(path).act_doc(&parse(value)?)
}

fn load_map(path: &Path) -> Result<ActMap, Error> {
    let doc: MapDoc = parse(read_value(path)?)?;
    Loader::beside(path).map(&doc)
}

fn certificate_json(c: &PrecoverCertificate) -> Value {
    json!({
        "skeleton": {
            "class": c.skeleton.class,
            "complete": c.skeleton.complete,
            "members": c.skeleton.members.iter().map(|m| m.rows()).collect::<Vec<_>>(),
        },
        "factorizations": c.factorizations.iter().map(|f| json!({
            "member": f.member,
            "hom": f.hom.values(),
            "factor": f.factor.values(),
        })).collect::<Vec<_>>(),
    })
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    Ok(match cli.command {
        Command::Monoid(MonoidCmd::New { builder, params, output }) => {
            let m = Builder::from_parts(&builder, &params)?.build()?;
            let doc = to_value(&monoid_to_doc(&m));
            if let Some(path) = output {
                std::fs::write(&path, doc.to_string() + "\n")
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                Outcome::Pass(vec![json!({ "written": path, "size": m.size() })])
            } else {
                Outcome::Pass(vec![doc])
            }
        }
        Command::Monoid(MonoidCmd::Validate { file }) => {
            let doc: MonoidDoc = parse(read_value(&file)?)?;
            match Loader::beside(&file).monoid_doc(&doc) {
                Ok(m) => Outcome::Pass(vec![json!({
                    "valid": true,
                    "size": m.size(),
                    "commutative": m.is_commutative(),
                    "group": m.is_group(),
                    "inverse": m.is_inverse_monoid().is_ok(),
                    "idempotents": m.idempotents().elements,
                })]),
                Err(e) => Outcome::Fail(vec![json!({ "valid": false, "witness": e.to_string() })]),
            }
        }
        Command::Act(ActCmd::Validate { file }) => match load_act(&file) {
            Ok(a) => Outcome::Pass(vec![json!({
                "valid": true,
                "size": a.size(),
                "fixed_points": a.fixed_points(),
            })]),
            Err(e @ Error::Parse(_)) => return Err(e),
            Err(e) => Outcome::Fail(vec![json!({ "valid": false, "witness": e.to_string() })]),
        },
        Command::Act(ActCmd::Decompose { file }) => {
            let a = load_act(&file)?;
            let d = decompose_indecomposable(&a);
            Outcome::Pass(vec![json!({ "components": d.components })])
        }
        Command::Act(ActCmd::Quotient { act, pairs, congruence }) => {
            let rho = match (act, congruence) {
                (_, Some(path)) => {
                    let doc: CongruenceDoc = parse(read_value(&path)?)?;
                    Loader::beside(&path).congruence(&doc)?
                }
                (Some(path), None) => Congruence::generated(&load_act(&path)?, &pairs)?,
                (None, None) => unreachable!("clap requires one"),
            };
            let (quotient, q) = rho.quotient_act();
            Outcome::Pass(vec![json!({
                "classes": rho.classes(),
                "quotient": to_value(&act_to_doc(&quotient)),
                "map": q.values(),
            })])
        }
        Command::Act(ActCmd::Tensor { act, left }) => {
            let a = load_act(&act)?;
            let b = load_act(&left)?;
            let t = tensor(&a, &b)?;
            let table: Vec<Vec<usize>> = a.elements().map(|x| b.elements().map(|y| t.class(x, y)).collect()).collect();
            Outcome::Pass(vec![json!({ "size": t.classes, "class_of": table })])
        }
        Command::Check { act, class } => {
            let a = load_act(&act)?;
            let v = check_class(&a, class);
            Outcome::verdict(v.holds(), json!({ "class": class, "holds": v.holds(), "witness": v.witness() }))
        }
        Command::Purity(args) => {
            let g = load_map(&args.map)?;
            let (label, v) = match args.n {
                Some(n) => (json!(n), is_n_pure(&g, n)?),
                None => (json!("full"), is_pure_epi(&g)?),
            };
            Outcome::verdict(v.holds(), json!({ "n": label, "holds": v.holds(), "unliftable_tuple": v.witness() }))
        }
        Command::Colimit { system, verify } => {
            let doc: SystemDoc = parse(read_value(&system)?)?;
            let d: DirectSystem = Loader::beside(&system).system(&doc)?;
            let cone = colimit(&d)?;
            let mut line = json!({
                "apex": to_value(&act_to_doc(&cone.apex)),
                "legs": cone.legs.iter().map(|l| l.values()).collect::<Vec<_>>(),
                "directed": d.is_directed(),
            });
            if !verify {
                Outcome::Pass(vec![line])
            } else {
                let mut ok = true;
                if d.is_directed() {
                    match directed_colimit(&d) {
                        Ok(_) => line["directed_formula_agrees"] = json!(true),
                        Err(e) => {
                            ok = false;
                            line["directed_formula_agrees"] = json!(false);
                            line["witness"] = json!(e.to_string());
                        }
                    }
                }
                let mut probes = Vec::new();
                for target in std::iter::once(&cone.apex).chain(d.acts()) {
                    probes.extend(cocones_into(&d, target, 16)?);
                }
                let universal = verify_universal_property(&d, &cone, &probes)?;
                ok &= universal;
                line["probes"] = json!(probes.len());
                line["universal_property"] = json!(universal);
                Outcome::verdict(ok, line)
            }
        }
        Command::Cover { act, class, precover_only } => {
            let a = load_act(&act)?;
            if precover_only {
                let c = build_precover(&a, class)?;
                Outcome::Pass(vec![json!({
                    "class": class,
                    "carrier": to_value(&act_to_doc(&c.carrier)),
                    "map": c.map.values(),
                    "certificate": certificate_json(&c),
                })])
            } else {
                let r = find_cover(&a, class)?;
                Outcome::Pass(vec![json!({
                    "class": class,
                    "carrier": to_value(&act_to_doc(r.map.domain())),
                    "map": r.map.values(),
                    "certificate": certificate_json(&r.certificate),
                    "stats": r.stats,
                })])
            }
        }
        Command::Corpus(CorpusCmd::Generate { max_monoid_order, max_act_size, builders, output }) => {
            let mut spec = CorpusSpec { max_monoid_order, max_act_size, ..CorpusSpec::default() };
            if !builders.is_empty() {
                spec.builders = builders;
            }
            let corpus = generate_corpus(&spec)?;
            let files = write_corpus(&corpus, &output)?;
            Outcome::Pass(vec![json!({
                "directory": output,
                "files": files.len(),
                "monoids": corpus.monoids.len(),
                "acts": corpus.monoids.iter().map(|m| m.acts.len()).sum::<usize>(),
            })])
        }
        Command::Suite(SuiteCmd::List) => Outcome::Pass(SUITES.iter().map(|s| json!(s)).collect()),
        Command::Suite(SuiteCmd::Run { id, corpus, timing }) => {
            let ids: Vec<&str> = if id == "all" { SUITES.to_vec() } else { vec![id.as_str()] };
            if let Some(bad) = ids.iter().find(|i| !SUITES.contains(i)) {
                return Err(Error::UnknownSuite(bad.to_string()));
            }
            let corpus = match corpus {
                Some(path) => read_corpus(&path)?,
                None => generate_corpus(&CorpusSpec::default())?,
            };
            let mut lines = Vec::new();
            let mut passed = true;
            for id in ids {
                let report = run_suite_with(id, &corpus, timing)?;
                passed &= report.passed();
                lines.push(to_value(&report));
            }
            if passed {
                Outcome::Pass(lines)
            } else {
                Outcome::Fail(lines)
            }
        }
    })
}

fn emit(value: &Value, human: bool) {
    if human {
        println!("{}", serde_json::to_string_pretty(value).expect("json"));
    } else {
        println!("{value}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let human = cli.human;
    match run(cli) {
        Ok(Outcome::Pass(lines)) => {
            lines.iter().for_each(|l| emit(l, human));
            ExitCode::SUCCESS
        }
        Ok(Outcome::Fail(lines)) => {
            lines.iter().for_each(|l| emit(l, human));
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": e.to_string() }));
            ExitCode::from(2)
        }
    }
}
