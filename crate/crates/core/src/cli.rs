//! Batch command-line front end.
//!
//! Every command prints one JSON report on stdout:
//!
//! ```json
//! {"command": "...", "inputsDigest": "<sha256>", "outputs": {...}, "timingMs": 1.25}
//! ```
//!
//! `outputs` depends only on the inputs. Failures print
//! `{"error": {"kind": ..., "message": ...}}` on stderr.
//!
//! Exit codes: 0 computed, 2 asserted property violated, 64 usage,
//! 65 bad input data, 70 size cap exceeded.

use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::analysis::OptTable;
use crate::anchor::anchor_sufficiency;
use crate::document::{parse_coords, parse_state, tree_from_json, LinearDocument, ProblemDocument};
use crate::econ::{
    amortization_threshold, gap_report, hardness_report, lower_total, overmodeling_comparison,
    total_external_work, EconModel, HardnessSplit, OverModelParams,
};
use crate::error::Error;
use crate::formula::{exists_forall_brute, is_tautology_brute, Formula};
use crate::problem::{CoordSet, DecisionProblem, Limits, State, DEFAULT_MAX_STATES};
use crate::rational::Rational;
use crate::reductions::{all_coords_gadget, anchor_gadget, tautology_gadget};
use crate::tractable::{
    detect_separable, linear_relevance, solve_separable, tree_opt, tree_relevant_coordinates,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_CAP: i32 = 70;

#[derive(Debug, Parser)]
#[command(
    name = "sufficiency",
    version,
    about = "Exact coordinate-sufficiency analysis"
)]
struct Cli {
    /// State-space cap for exhaustive routines.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STATES)]
    max_states: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ProblemArg {
    /// Problem document (or a `gadget` report).
    #[arg(long)]
    problem: String,
}

#[derive(Debug, Args)]
struct CoordsArg {
    /// Coordinate set, e.g. `[0,2]`; defaults to the document's `queryI`.
    #[arg(long)]
    coords: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Is the coordinate set sufficient?
    Check {
        #[command(flatten)]
        problem: ProblemArg,
        #[command(flatten)]
        coords: CoordsArg,
        /// Exit 2 unless sufficient.
        #[arg(long)]
        assert: bool,
    },
    /// Lexicographically first insufficiency witness.
    Witness {
        #[command(flatten)]
        problem: ProblemArg,
        #[command(flatten)]
        coords: CoordsArg,
    },
    /// Relevant coordinates.
    Relevant {
        #[command(flatten)]
        problem: ProblemArg,
    },
    /// Minimum sufficient set.
    Minsuff {
        #[command(flatten)]
        problem: ProblemArg,
    },
    /// Decision quotient at a state.
    Dq {
        #[command(flatten)]
        problem: ProblemArg,
        #[command(flatten)]
        coords: CoordsArg,
        /// State as `[values]`, `["labels"]` or a state index.
        #[arg(long)]
        state: String,
    },
    /// Anchor assignment search.
    Anchor {
        #[command(flatten)]
        problem: ProblemArg,
        #[command(flatten)]
        coords: CoordsArg,
        /// Exit 2 unless an anchor exists.
        #[arg(long)]
        assert: bool,
    },
    /// Build a reduction gadget from a formula.
    Gadget {
        kind: GadgetArg,
        #[command(flatten)]
        formula: FormulaArgs,
        /// Existential/universal split `k,m` (anchor gadget).
        #[arg(long)]
        split: Option<String>,
        /// Also write the bare instance document to this file.
        #[arg(long)]
        out: Option<String>,
    },
    /// Brute-force formula oracles.
    Formula {
        kind: FormulaQuery,
        #[command(flatten)]
        formula: FormulaArgs,
        #[arg(long)]
        split: Option<String>,
    },
    /// Tree-structured utilities.
    Tree {
        query: TreeQuery,
        #[arg(long)]
        tree: String,
        #[arg(long)]
        state: Option<String>,
    },
    /// Detect and solve a separable utility.
    Separable {
        #[command(flatten)]
        problem: ProblemArg,
        /// Exit 2 unless separable.
        #[arg(long)]
        assert: bool,
    },
    /// Weight-difference relevance of a linear utility.
    Linear {
        #[arg(long)]
        weights: String,
    },
    /// Expressive-gap and hardness cost arithmetic.
    Econ {
        #[command(subcommand)]
        command: EconCommand,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GadgetArg {
    Tautology,
    Allcoords,
    Anchor,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormulaQuery {
    Tautology,
    ExistsForall,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TreeQuery {
    Relevant,
    Opt,
}

#[derive(Debug, Args)]
struct FormulaArgs {
    /// Formula text, e.g. `x1 & ~x2 -> x3`.
    #[arg(long, conflicts_with = "formula_file")]
    formula: Option<String>,
    /// Formula as a JSON AST document.
    #[arg(long)]
    formula_file: Option<String>,
    /// Declared variable count, if larger than the highest index used.
    #[arg(long)]
    vars: Option<usize>,
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Required axes; defaults to the minimum sufficient set of `--problem`.
    #[arg(long)]
    required: Option<String>,
    #[arg(long, default_value = "[]")]
    native: String,
    /// Axis universe size; defaults to the problem's coordinate count.
    #[arg(long)]
    universe: Option<usize>,
    #[arg(long)]
    problem: Option<String>,
}

#[derive(Debug, Subcommand)]
enum EconCommand {
    /// Expressive gap and the conservation identity.
    Gap {
        #[command(flatten)]
        model: ModelArgs,
        /// Exit 2 if conservation fails.
        #[arg(long)]
        assert: bool,
    },
    /// Total external work over `--sites` decision sites.
    Work {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        sites: u64,
    },
    /// Amortization threshold for a one-time cost.
    Amortize {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        h_central: String,
    },
    /// Total hardness and centralized fraction.
    Hardness {
        #[arg(long)]
        h_central: String,
        #[arg(long)]
        h_distributed: String,
        #[arg(long)]
        sites: u64,
        /// Compare against a split with the same central cost and this
        /// distributed cost.
        #[arg(long)]
        versus_distributed: Option<String>,
    },
    /// Over-modeling cost comparison.
    Overmodel {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        k: u64,
        #[arg(long, default_value = "1")]
        c_over: String,
        #[arg(long, default_value = "0")]
        c_under: String,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Io(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

type CmdResult<T> = std::result::Result<T, Failure>;

struct Context {
    limits: Limits,
    digest: Sha256,
}

impl Context {
    fn read(&mut self, path: &str) -> CmdResult<String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Io(format!("cannot read {path}: {e}")))?;
        self.digest.update(path.as_bytes());
        self.digest.update([0]);
        self.digest.update(text.as_bytes());
        self.digest.update([0]);
        Ok(text)
    }

    fn problem(&mut self, path: &str) -> CmdResult<(DecisionProblem, ProblemDocument)> {
        let doc = ProblemDocument::from_json(&self.read(path)?)?;
        Ok((doc.to_problem()?, doc))
    }

    fn formula(&mut self, args: &FormulaArgs) -> CmdResult<Formula> {
        let phi = match (&args.formula, &args.formula_file) {
            (Some(text), _) => Formula::parse(text)?,
            (None, Some(path)) => serde_json::from_str::<Formula>(&self.read(path)?)
                .map_err(|e| Error::Format(format!("formula document: {e}")))
                .and_then(|f| Formula::new(f.ast, f.var_count))?,
            (None, None) => {
                return Err(Failure::Usage(
                    "--formula or --formula-file is required".into(),
                ))
            }
        };
        match args.vars {
            Some(v) => Ok(Formula::new(phi.ast, v)?),
            None => Ok(phi),
        }
    }
}

fn coords_for(arg: &CoordsArg, doc: &ProblemDocument) -> CmdResult<CoordSet> {
    match &arg.coords {
        Some(text) => Ok(parse_coords(text)?),
        None => doc
            .query()?
            .ok_or_else(|| Failure::Usage("--coords is required".into())),
    }
}

fn parse_split(text: Option<&str>, phi: &Formula) -> CmdResult<(usize, usize)> {
    let Some(text) = text else {
        return Err(Failure::Usage("--split k,m is required".into()));
    };
    let parts: Vec<&str> = text
        .trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(str::trim)
        .collect();
    match parts.as_slice() {
        [k, m] => match (k.parse(), m.parse()) {
            (Ok(k), Ok(m)) => Ok((k, m)),
            _ => Err(Failure::Usage(format!("bad split {text:?}"))),
        },
        [k] if k.parse::<usize>().is_ok() => {
            let k: usize = k.parse().unwrap();
            Ok((k, phi.var_count.saturating_sub(k)))
        }
        _ => Err(Failure::Usage(format!("bad split {text:?}"))),
    }
}

fn rational(text: &str) -> CmdResult<Rational> {
    Ok(text.parse::<Rational>()?)
}

fn labels_of(p: &DecisionProblem, s: &State) -> Value {
    json!(p.state_labels(s))
}

fn action_names(p: &DecisionProblem, actions: &[usize]) -> Value {
    json!(actions
        .iter()
        .map(|&a| p.actions()[a].clone())
        .collect::<Vec<_>>())
}

/// Runs one command line (including the program name) and captures its
/// output.
pub fn dispatch<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let started = Instant::now();
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                failure(EXIT_USAGE, "UsageError", &rendered)
            };
        }
    };
    let mut ctx = Context {
        limits: Limits::default().with_max_states(cli.max_states),
        digest: Sha256::new(),
    };
    for a in args.iter().skip(1) {
        ctx.digest.update(a.to_string_lossy().as_bytes());
        ctx.digest.update([0]);
    }
    let name = command_name(&cli.command);
    match run(&mut ctx, cli.command) {
        Ok((outputs, violated)) => {
            let report = json!({
                "command": name,
                "inputsDigest": hex::encode(ctx.digest.finalize()),
                "outputs": outputs,
                "timingMs": started.elapsed().as_secs_f64() * 1000.0,
            });
            Outcome {
                code: if violated { EXIT_VIOLATED } else { EXIT_OK },
                stdout: format!("{}\n", serde_json::to_string_pretty(&report).unwrap()),
                stderr: String::new(),
            }
        }
        Err(Failure::Usage(msg)) => failure(EXIT_USAGE, "UsageError", &msg),
        Err(Failure::Io(msg)) => failure(EXIT_DATA, "IoError", &msg),
        Err(Failure::Data(e)) => failure(exit_code(&e), e.kind(), &e.to_string()),
    }
}

fn failure(code: i32, kind: &str, message: &str) -> Outcome {
    let err = json!({"error": {"kind": kind, "message": message.trim_end()}});
    Outcome {
        code,
        stdout: String::new(),
        stderr: format!("{err}\n"),
    }
}

/// Exit status for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::StateSpaceTooLarge { .. } | Error::TooManyVariables { .. } | Error::Overflow(_) => {
            EXIT_CAP
        }
        _ => EXIT_DATA,
    }
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Check { .. } => "check".into(),
        Command::Witness { .. } => "witness".into(),
        Command::Relevant { .. } => "relevant".into(),
        Command::Minsuff { .. } => "minsuff".into(),
        Command::Dq { .. } => "dq".into(),
        Command::Anchor { .. } => "anchor".into(),
        Command::Gadget { kind, .. } => format!("gadget {}", kind_name(*kind)),
        Command::Formula { kind, .. } => match kind {
            FormulaQuery::Tautology => "formula tautology".into(),
            FormulaQuery::ExistsForall => "formula exists-forall".into(),
        },
        Command::Tree { query, .. } => match query {
            TreeQuery::Relevant => "tree relevant".into(),
            TreeQuery::Opt => "tree opt".into(),
        },
        Command::Separable { .. } => "separable".into(),
        Command::Linear { .. } => "linear".into(),
        Command::Econ { command } => match command {
            EconCommand::Gap { .. } => "econ gap".into(),
            EconCommand::Work { .. } => "econ work".into(),
            EconCommand::Amortize { .. } => "econ amortize".into(),
            EconCommand::Hardness { .. } => "econ hardness".into(),
            EconCommand::Overmodel { .. } => "econ overmodel".into(),
        },
    }
}

fn kind_name(k: GadgetArg) -> &'static str {
    match k {
        GadgetArg::Tautology => "tautology",
        GadgetArg::Allcoords => "allcoords",
        GadgetArg::Anchor => "anchor",
    }
}

/// Returns the outputs block and whether an asserted property failed.
fn run(ctx: &mut Context, command: Command) -> CmdResult<(Value, bool)> {
    let limits = ctx.limits;
    let out = match command {
        Command::Check {
            problem,
            coords,
            assert,
        } => {
            let (p, doc) = ctx.problem(&problem.problem)?;
            let coords = coords_for(&coords, &doc)?;
            let table = OptTable::build(&p, &limits)?;
            let witness = table.insufficiency_witness(&coords)?;
            let sufficient = witness.is_none();
            let outputs = json!({
                "coords": coords,
                "sufficient": sufficient,
                "witness": witness.map(|w| witness_json(&p, &w)),
            });
            return Ok((outputs, assert && !sufficient));
        }
        Command::Witness { problem, coords } => {
            let (p, doc) = ctx.problem(&problem.problem)?;
            let coords = coords_for(&coords, &doc)?;
            let w = OptTable::build(&p, &limits)?.insufficiency_witness(&coords)?;
            json!({"coords": coords, "witness": w.map(|w| witness_json(&p, &w))})
        }
        Command::Relevant { problem } => {
            let (p, _) = ctx.problem(&problem.problem)?;
            let rel = OptTable::build(&p, &limits)?.relevant_coordinates();
            json!({"relevantCoordinates": rel})
        }
        Command::Minsuff { problem } => {
            let (p, _) = ctx.problem(&problem.problem)?;
            let min = OptTable::build(&p, &limits)?.minimal_sufficient_set();
            json!({"minimalSufficientSet": min})
        }
        Command::Dq {
            problem,
            coords,
            state,
        } => {
            let (p, doc) = ctx.problem(&problem.problem)?;
            let coords = coords_for(&coords, &doc)?;
            let s = parse_state(&p, &state)?;
            let table = OptTable::build(&p, &limits)?;
            let dq = table.decision_quotient(&coords, &s)?;
            json!({
                "coords": coords,
                "state": s,
                "stateLabels": labels_of(&p, &s),
                "decisionQuotient": dq,
                "optFraction": Rational::new(table.opt(&s)?.len() as i64, p.num_actions() as i64)?,
            })
        }
        Command::Anchor {
            problem,
            coords,
            assert,
        } => {
            let (p, doc) = ctx.problem(&problem.problem)?;
            let coords = coords_for(&coords, &doc)?;
            let anchor = anchor_sufficiency(&p, &coords, &limits)?;
            let found = anchor.is_some();
            let outputs = json!({
                "coords": coords,
                "anchor": anchor.map(|a| {
                    let labels: Vec<String> =
                        a.pairs().map(|(c, v)| p.domains()[c].label(v)).collect();
                    json!({"coords": a.coords, "values": a.values, "labels": labels})
                }),
            });
            return Ok((outputs, assert && !found));
        }
        Command::Gadget {
            kind,
            formula,
            split,
            out,
        } => {
            let phi = ctx.formula(&formula)?;
            let g = match kind {
                GadgetArg::Tautology => tautology_gadget(&phi, &limits)?,
                GadgetArg::Allcoords => all_coords_gadget(&phi, &limits)?,
                GadgetArg::Anchor => {
                    let (k, m) = parse_split(split.as_deref(), &phi)?;
                    anchor_gadget(&phi, k, m, &limits)?
                }
            };
            let doc = ProblemDocument::from(&g);
            if let Some(path) = out {
                let text = serde_json::to_string_pretty(&doc).expect("serializable");
                std::fs::write(&path, text + "\n")
                    .map_err(|e| Failure::Io(format!("cannot write {path}: {e}")))?;
            }
            json!({"instance": doc})
        }
        Command::Formula {
            kind,
            formula,
            split,
        } => {
            let phi = ctx.formula(&formula)?;
            match kind {
                FormulaQuery::Tautology => {
                    let r = is_tautology_brute(&phi, limits.max_vars)?;
                    json!({"formula": phi.to_string(), "varCount": phi.var_count, "result": r})
                }
                FormulaQuery::ExistsForall => {
                    let (k, m) = parse_split(split.as_deref(), &phi)?;
                    let x = exists_forall_brute(&phi, k, m, limits.max_vars)?;
                    json!({"formula": phi.to_string(), "split": [k, m], "witness": x})
                }
            }
        }
        Command::Tree { query, tree, state } => {
            let tu = tree_from_json(&ctx.read(&tree)?)?;
            match query {
                TreeQuery::Relevant => {
                    let rel = tree_relevant_coordinates(&tu, &limits)?;
                    json!({"relevantCoordinates": rel.coords, "strategy": rel.strategy})
                }
                TreeQuery::Opt => {
                    let text = state.ok_or_else(|| Failure::Usage("--state is required".into()))?;
                    let values: Vec<usize> = serde_json::from_str(&text)
                        .map_err(|e| Error::Format(format!("state {text:?}: {e}")))?;
                    let s = State::new(values);
                    let opt = tree_opt(&tu, &s)?;
                    let names: Vec<&str> = opt
                        .actions()
                        .iter()
                        .map(|&a| tu.actions[a].as_str())
                        .collect();
                    json!({"state": s, "opt": opt, "optActions": names})
                }
            }
        }
        Command::Separable { problem, assert } => {
            let (p, _) = ctx.problem(&problem.problem)?;
            let sep = detect_separable(&p, &limits)?;
            let found = sep.is_some();
            let outputs = match sep {
                None => json!({"separable": false}),
                Some(sep) => {
                    let opt = solve_separable(&sep);
                    json!({
                        "separable": true,
                        "f": sep.f,
                        "g": sep.g,
                        "opt": opt,
                        "optActions": action_names(&p, opt.actions()),
                        "emptySetSufficient": true,
                    })
                }
            };
            return Ok((outputs, assert && !found));
        }
        Command::Linear { weights } => {
            let doc = LinearDocument::from_json(&ctx.read(&weights)?)?;
            let lin = doc.utility()?;
            let mut outputs = json!({"linearRelevance": linear_relevance(&lin)});
            if let Some(sizes) = &doc.domains {
                let p = lin.materialize(sizes, &limits)?;
                let exact = OptTable::build(&p, &limits)?.relevant_coordinates();
                outputs["materializedRelevant"] = json!(exact);
            }
            outputs
        }
        Command::Econ { command } => return run_econ(ctx, command),
    };
    Ok((out, false))
}

fn witness_json(p: &DecisionProblem, w: &crate::analysis::InsufficiencyWitness) -> Value {
    json!({
        "s": w.s,
        "sPrime": w.s_prime,
        "optS": w.opt_s,
        "optSPrime": w.opt_s_prime,
        "sLabels": labels_of(p, &w.s),
        "sPrimeLabels": labels_of(p, &w.s_prime),
        "optSActions": action_names(p, w.opt_s.actions()),
        "optSPrimeActions": action_names(p, w.opt_s_prime.actions()),
    })
}

fn econ_model(ctx: &mut Context, args: &ModelArgs) -> CmdResult<EconModel> {
    let from_problem = match &args.problem {
        Some(path) => {
            let (p, _) = ctx.problem(path)?;
            let min = OptTable::build(&p, &ctx.limits)?.minimal_sufficient_set();
            Some((p.num_coords(), min))
        }
        None => None,
    };
    let required = match (&args.required, &from_problem) {
        (Some(text), _) => parse_coords(text)?,
        (None, Some((_, min))) => min.clone(),
        (None, None) => return Err(Failure::Usage("--required or --problem is required".into())),
    };
    let native = parse_coords(&args.native)?;
    let universe = match (args.universe, &from_problem) {
        (Some(u), _) => u,
        (None, Some((n, _))) => *n,
        (None, None) => CoordSet::max(&required)
            .into_iter()
            .chain(CoordSet::max(&native))
            .max()
            .map_or(0, |m| m + 1),
    };
    Ok(EconModel::new(universe, required, native)?)
}

fn run_econ(ctx: &mut Context, command: EconCommand) -> CmdResult<(Value, bool)> {
    let out = match command {
        EconCommand::Gap { model, assert } => {
            let m = econ_model(ctx, &model)?;
            let g = gap_report(&m);
            let violated = assert && !g.conservation_holds;
            return Ok((
                json!({"required": m.required(), "native": m.native(), "universe": m.universe(), "report": g}),
                violated,
            ));
        }
        EconCommand::Work { model, sites } => {
            let m = econ_model(ctx, &model)?;
            json!({
                "gap": m.gap(),
                "sites": sites,
                "totalExternalWork": total_external_work(&m, sites)?,
            })
        }
        EconCommand::Amortize { model, h_central } => {
            let m = econ_model(ctx, &model)?;
            let h = rational(&h_central)?;
            json!({
                "gap": m.gap(),
                "hCentral": h,
                "threshold": amortization_threshold(h, &m)?,
            })
        }
        EconCommand::Hardness {
            h_central,
            h_distributed,
            sites,
            versus_distributed,
        } => {
            let split = HardnessSplit::new(rational(&h_central)?, rational(&h_distributed)?)?;
            let report = hardness_report(&split, sites)?;
            let mut out = json!({"split": split, "sites": sites, "report": report});
            if let Some(other) = versus_distributed {
                let alt = HardnessSplit::new(split.h_central(), rational(&other)?)?;
                out["versus"] = json!({
                    "split": alt,
                    "hTotal": alt.total(sites)?,
                    "lowerTotal": lower_total(&split, &alt, sites)?,
                });
            }
            out
        }
        EconCommand::Overmodel {
            n,
            k,
            c_over,
            c_under,
        } => {
            let params = OverModelParams {
                n,
                k,
                c_over_per_param: rational(&c_over)?,
                c_under: rational(&c_under)?,
            };
            json!({"n": n, "k": k, "report": overmodeling_comparison(&params)?})
        }
    };
    Ok((out, false))
}
