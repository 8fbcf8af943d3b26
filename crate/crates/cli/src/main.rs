//! `wnu`: command-line front end for the k-wnu free algebra and the
//! condition checker.
//!
//! Exit status: 0 when the command ran (verdicts live in the output), 2 for
//! parse errors, 3 for arity errors, 4 for invalid budgets, 1 otherwise.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use wnu_core::maltsev::{
    classify_slemc, is_trivial, parse_condition, refute_via_s, search_report, CheckReport, Classification,
    MaltsevCondition, ProjectionAssignment, Slemc, SlemcShape, Verdict,
};
use wnu_core::selftest::{run_all, CriterionResult, CRITERIA, DEFAULT_SEED};
use wnu_core::{closure_report, ClosureBudget, ClosureReport, FreeAlgebra, NormalTerm, PairGeneratorSet};

#[derive(Parser, Debug)]
#[command(
    name = "wnu",
    version,
    about = "Free algebras of k-ary weak near-unanimity varieties"
)]
struct Cli {
    /// Arity of the wnu operation symbol `w`.
    #[arg(short = 'k', long = "arity", default_value_t = 3, global = true)]
    k: usize,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Seed for the randomized suites.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone, Copy)]
struct BudgetArgs {
    /// Largest number of w occurrences allowed in each coordinate.
    #[arg(long = "budget-w", default_value_t = 2)]
    budget_w: u64,

    #[arg(long = "budget-rounds", visible_alias = "rounds", default_value_t = 64)]
    budget_rounds: usize,

    #[arg(long = "budget-pairs", default_value_t = 100_000)]
    budget_pairs: usize,
}

impl BudgetArgs {
    fn budget(self) -> ClosureBudget {
        ClosureBudget {
            max_rounds: self.budget_rounds,
            max_pairs: self.budget_pairs,
            max_w_per_coordinate: self.budget_w,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the normal form of a term.
    Normalize { term: String },
    /// Decide whether two terms are equal in the free algebra.
    Eq { lhs: String, rhs: String },
    /// Decide `a ⪯ b` for normal terms, and whether the pair lies in S.
    Subterm { a: String, b: String },
    /// List the normal terms over some variables up to a w budget.
    Enum {
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        #[arg(long = "max-w", default_value_t = 1)]
        max_w: usize,
    },
    /// Close a set of pairs under coordinatewise wA.
    Closure {
        /// Use every ordered pair of distinct variables from this list.
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
        /// A generator pair `(a,b)` of normal terms; repeatable.
        #[arg(long = "gen")]
        gens: Vec<String>,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Include every generated pair in the report.
        #[arg(long)]
        list_pairs: bool,
    },
    /// Classify a Maltsev condition and, for t(x̄) = t(ȳ), search for a
    /// witness and run the refutation.
    Check {
        condition: Option<String>,
        /// Read the condition from a file, one identity per line.
        #[arg(long, conflicts_with = "condition")]
        file: Option<PathBuf>,
        /// w budget of the witness search.
        #[arg(long = "max-w", default_value_t = 2)]
        max_w: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Report elapsed times (makes JSON output vary between runs).
        #[arg(long)]
        timing: bool,
    },
    /// Run the acceptance property suites.
    Selftest {
        /// Only these criteria (1 to 10).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error(transparent)]
    Core(#[from] wnu_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0} criteria failed")]
    Selftest(usize),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        use wnu_core::Error as E;
        match self {
            Failure::Core(E::Syntax { .. } | E::InvalidIdentifier(_) | E::ReservedName | E::UnboundVariable(_)) => 2,
            Failure::Core(E::UnsupportedArity(_) | E::ArityMismatch { .. } | E::InconsistentArity { .. }) => 3,
            Failure::Core(E::InvalidBudget(_) | E::GeneratorOverBudget(..)) => 4,
            Failure::Usage(_) => 2,
            Failure::Core(_) | Failure::Io(_) | Failure::Selftest(_) => 1,
        }
    }
}

type Outcome = Result<String, Failure>;

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce(&T) -> String) -> Outcome {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(value).expect("reports serialize") + "\n",
        Format::Text => text(value),
    })
}

#[derive(Serialize)]
struct NormalizeOut {
    k: usize,
    input: String,
    normal_form: String,
    w_count: u64,
}

#[derive(Serialize)]
struct EqOut {
    k: usize,
    lhs: String,
    rhs: String,
    lhs_normal: String,
    rhs_normal: String,
    equal: bool,
}

#[derive(Serialize)]
struct SubtermOut {
    k: usize,
    a: String,
    b: String,
    subterm: bool,
    in_s: bool,
}

#[derive(Serialize)]
struct EnumOut {
    k: usize,
    vars: Vec<String>,
    max_w: usize,
    count: usize,
    terms: Vec<String>,
}

#[derive(Serialize)]
struct CheckOut {
    condition: String,
    k: usize,
    classification: Option<Classification>,
    /// Why no classification applies (several identities, or composition).
    #[serde(skip_serializing_if = "Option::is_none")]
    not_classified: Option<String>,
    trivial: bool,
    projection_witness: Option<ProjectionAssignment>,
    #[serde(skip_serializing_if = "Option::is_none")]
    search: Option<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    refutation: Option<CheckReport>,
}

fn normal(alg: &FreeAlgebra, text: &str) -> Result<NormalTerm, Failure> {
    let t = alg.parse(text)?;
    alg.certify(t)
        .ok_or_else(|| Failure::Core(wnu_core::Error::NotNormal(alg.render(t))))
}

/// Splits `(a,b)` at its top-level comma.
fn parse_pair(alg: &FreeAlgebra, text: &str) -> Result<(NormalTerm, NormalTerm), Failure> {
    let bad = || Failure::Usage(format!("generator `{text}` is not of the form (a,b)"));
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(bad)?;
    let mut depth = 0i32;
    let split = inner.char_indices().find_map(|(i, c)| {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
        None
    });
    let i = split.ok_or_else(bad)?;
    Ok((normal(alg, &inner[..i])?, normal(alg, &inner[i + 1..])?))
}

fn read_condition(condition: Option<String>, file: Option<PathBuf>) -> Result<String, Failure> {
    match (condition, file) {
        (Some(c), None) => Ok(c),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(&path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            let lines: Vec<&str> = text
                .lines()
                .map(|l| l.trim().trim_end_matches(';').trim())
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .collect();
            Ok(lines.join("; "))
        }
        _ => Err(Failure::Usage("give a condition or --file".into())),
    }
}

fn check(
    alg: &FreeAlgebra,
    cond: &MaltsevCondition,
    max_w: usize,
    budget: &ClosureBudget,
    timing: bool,
) -> Result<CheckOut, Failure> {
    budget.validate()?;
    let witness = is_trivial(cond);
    let (classification, not_classified) = match classify_slemc(cond) {
        Ok(c) => (Some(c), None),
        Err(e @ wnu_core::Error::NotLinearSingle(_)) => (None, Some(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let mut out = CheckOut {
        condition: cond.to_string(),
        k: alg.k(),
        trivial: witness.is_some(),
        projection_witness: witness,
        classification,
        not_classified,
        search: None,
        refutation: None,
    };
    let nontrivial_same_symbol = matches!(
        &out.classification,
        Some(Classification {
            shape: SlemcShape::SameSymbol,
            verdict: Verdict::CandidateNontrivial,
            ..
        })
    );
    if nontrivial_same_symbol {
        let slemc = Slemc::from_condition(cond)?;
        let time = |r: CheckReport| if timing { r } else { r.without_timing() };
        out.search = Some(time(search_report(alg, &slemc, max_w)?));
        out.refutation = Some(time(refute_via_s(alg, &slemc, budget)?));
    }
    Ok(out)
}

fn check_text(c: &CheckOut) -> String {
    let mut s = String::new();
    writeln!(s, "condition: {}", c.condition).unwrap();
    match (&c.classification, &c.not_classified) {
        (Some(cl), _) => writeln!(s, "classification: {cl}: {}", cl.explanation).unwrap(),
        (None, Some(why)) => writeln!(s, "classification: none ({why})").unwrap(),
        (None, None) => {}
    }
    match &c.projection_witness {
        Some(w) => writeln!(s, "trivial: yes, witness {w}").unwrap(),
        None => writeln!(s, "trivial: no").unwrap(),
    }
    if let Some(r) = &c.search {
        writeln!(
            s,
            "witness search: {:?} after {} candidates",
            r.outcome, r.candidates_examined
        )
        .unwrap();
        if let Some(w) = &r.witness {
            writeln!(s, "  witness t = {w}").unwrap();
        }
        writeln!(s, "  {}", r.note).unwrap();
    }
    if let Some(r) = &c.refutation {
        writeln!(s, "refutation: {:?} ({} pairs)", r.outcome, r.candidates_examined).unwrap();
        writeln!(s, "  {}", r.note).unwrap();
    }
    s
}

fn closure_text(r: &ClosureReport) -> String {
    let mut s = String::new();
    let pair = |p: &[String; 2]| format!("({}, {})", p[0], p[1]);
    for g in &r.generator_violations {
        writeln!(s, "precondition violation: generator {} is not in S", pair(g)).unwrap();
    }
    writeln!(
        s,
        "{} pairs, {} rounds, stop: {:?}, saturated: {}",
        r.pair_count, r.rounds_completed, r.stop_reason, r.saturated
    )
    .unwrap();
    match &r.diagonal_witness {
        Some(d) => writeln!(s, "diagonal witness: {}", pair(d)).unwrap(),
        None => writeln!(s, "diagonal witness: none").unwrap(),
    }
    writeln!(s, "pairs outside S: {}", r.s_violations.len()).unwrap();
    for p in r.pairs.iter().flatten() {
        writeln!(s, "{}", pair(p)).unwrap();
    }
    s
}

fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    if let Command::Selftest { only } = &cli.command {
        if let Some(bad) = only.iter().find(|&&id| !(1..=CRITERIA.len() as u32).contains(&id)) {
            return Err(Failure::Usage(format!("no criterion {bad}")));
        }
        let results: Vec<CriterionResult> = if only.is_empty() {
            run_all(cli.seed)
        } else {
            only.iter().map(|&id| CRITERIA[id as usize - 1](cli.seed)).collect()
        };
        let failed = results.iter().filter(|r| !r.passed).count();
        let out = emit(format, &results, |rs| rs.iter().map(|r| format!("{r}\n")).collect())?;
        if failed > 0 {
            print!("{out}");
            return Err(Failure::Selftest(failed));
        }
        return Ok(out);
    }

    let alg = FreeAlgebra::with_arity(cli.k)?;
    match cli.command {
        Command::Normalize { term } => {
            let t = alg.parse(&term)?;
            let n = alg.normalize(t);
            let out = NormalizeOut {
                k: alg.k(),
                input: alg.render(t),
                normal_form: alg.render(n),
                w_count: alg.w_count(n),
            };
            emit(format, &out, |o| format!("{}\n", o.normal_form))
        }
        Command::Eq { lhs, rhs } => {
            let (l, r) = (alg.parse(&lhs)?, alg.parse(&rhs)?);
            let (nl, nr) = (alg.normalize(l), alg.normalize(r));
            let out = EqOut {
                k: alg.k(),
                lhs: alg.render(l),
                rhs: alg.render(r),
                lhs_normal: alg.render(nl),
                rhs_normal: alg.render(nr),
                equal: nl == nr,
            };
            emit(format, &out, |o| {
                let rel = if o.equal { "=" } else { "≠" };
                format!("{} {rel} {}\n", o.lhs_normal, o.rhs_normal)
            })
        }
        Command::Subterm { a, b } => {
            let (na, nb) = (normal(&alg, &a)?, normal(&alg, &b)?);
            let out = SubtermOut {
                k: alg.k(),
                a: alg.render(na),
                b: alg.render(nb),
                subterm: alg.is_subterm(na, nb),
                in_s: alg.in_s(na, nb),
            };
            emit(format, &out, |o| format!("subterm: {}\nin S: {}\n", o.subterm, o.in_s))
        }
        Command::Enum { vars, max_w } => {
            let names: Vec<&str> = vars.iter().map(String::as_str).collect();
            let terms: Vec<String> = alg.enumerate_normal(&names, max_w)?.map(|t| alg.render(t)).collect();
            let out = EnumOut {
                k: alg.k(),
                vars,
                max_w,
                count: terms.len(),
                terms,
            };
            emit(format, &out, |o| o.terms.iter().map(|t| format!("{t}\n")).collect())
        }
        Command::Closure {
            vars,
            gens,
            budget,
            list_pairs,
        } => {
            let mut pairs = Vec::new();
            if !vars.is_empty() {
                let names: Vec<&str> = vars.iter().map(String::as_str).collect();
                pairs.extend(
                    PairGeneratorSet::distinct_variables(&alg, &names)?
                        .pairs()
                        .iter()
                        .copied(),
                );
            }
            for g in &gens {
                pairs.push(parse_pair(&alg, g)?);
            }
            let report = closure_report(&alg, &PairGeneratorSet::new(pairs), &budget.budget(), list_pairs)?;
            emit(format, &report, closure_text)
        }
        Command::Check {
            condition,
            file,
            max_w,
            budget,
            timing,
        } => {
            let text = read_condition(condition, file)?;
            let cond = parse_condition(&text)?;
            let out = check(&alg, &cond, max_w, &budget.budget(), timing)?;
            emit(format, &out, check_text)
        }
        Command::Selftest { .. } => unreachable!("handled above"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
