mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use msvkit::ci::{self, CIReport};
use msvkit::detideal::{self, GeneratorCells};
use msvkit::frlab;
use msvkit::poly::{Fp, PrimeModulus, Rational};
use msvkit::{Error, PartialPermutation, Permutation};
use rayon::prelude::*;
use serde_json::{json, Value};

const CENSUS_MAX_N: usize = 8;

#[derive(Parser)]
#[command(name = "msvkit", version, about = "Matrix Schubert variety toolkit")]
struct Cli {
    /// Coefficient field for the minimal-generator oracle.
    #[arg(long, value_enum, default_value_t = FieldArg::Rational, global = true)]
    field: FieldArg,
    /// Modulus used with `--field prime`.
    #[arg(long, env = "MSVKIT_PRIME", default_value_t = msvkit::poly::DEFAULT_PRIME, global = true)]
    prime: u32,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for census runs (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FieldArg {
    Rational,
    Prime,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Filter {
    Ci,
    NonCi,
    All,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Target {
    /// One-line notation, e.g. 35142 or "10 2 1 3 4 5 6 7 8 9".
    perm: Option<String>,
    /// File holding a permutation or a 0/1 partial permutation matrix.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Draw the diagram: '1' entries, '*' for rank > 0, '.' for rank 0.
    Diagram(Target),
    /// List the essential set with ranks.
    Essential(Target),
    /// List the Fulton generators.
    Gens {
        #[command(flatten)]
        target: Target,
        /// Every minor over the essential set, without pruning.
        #[arg(long)]
        all: bool,
    },
    /// Complete-intersection classification.
    Ci(Target),
    /// Check that the antidiagonals generate the initial ideal.
    VerifyGb {
        #[command(flatten)]
        target: Target,
        #[arg(long, hide = true)]
        corrupt_generator: bool,
    },
    /// Initial ideal of <c> + I_w.
    VerifyLemma2(Target),
    /// Every localization check at c.
    VerifyLocalize(Target),
    /// Groebner, classification and localization checks together.
    VerifyAll {
        #[command(flatten)]
        target: Target,
        #[arg(long, hide = true)]
        corrupt_generator: bool,
    },
    /// Classify every permutation of S_n.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Filter::All)]
        filter: Filter,
    },
}

/// Exit status 1: a verdict or verification came back false.
struct Outcome {
    ok: bool,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

enum Input {
    Perm(Permutation),
    Partial(PartialPermutation),
}

impl Input {
    fn partial(&self) -> &PartialPermutation {
        match self {
            Input::Perm(w) => w.as_partial(),
            Input::Partial(w) => w,
        }
    }

    /// Permutation-only operations run on the extension of a partial permutation.
    fn permutation(&self) -> Permutation {
        match self {
            Input::Perm(w) => w.clone(),
            Input::Partial(w) => w.extend_to_permutation(),
        }
    }
}

fn load(target: &Target) -> Result<Input, CliError> {
    if let Some(s) = &target.perm {
        return Ok(Input::Perm(s.parse()?));
    }
    let path = target.file.as_ref().expect("clap enforces one target");
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    if lines.len() == 1 {
        if let Ok(w) = lines[0].parse::<Permutation>() {
            return Ok(Input::Perm(w));
        }
    }
    let w = PartialPermutation::from_matrix_text(&text)?;
    Ok(match w.to_permutation() {
        Ok(p) => Input::Perm(p),
        Err(_) => Input::Partial(w),
    })
}

fn emit(cli: &Cli, value: Value, text: String) {
    if cli.json {
        println!("{value}");
    } else {
        print!("{text}");
    }
}

fn check_verify_size(operation: &'static str, w: &PartialPermutation) -> Result<(), CliError> {
    let n = w.rows().max(w.cols());
    if n > frlab::VERIFY_MAX_N {
        return Err(Error::Capability {
            operation,
            bound: frlab::VERIFY_MAX_N,
            got: n,
        }
        .into());
    }
    Ok(())
}

fn mu(cli: &Cli, w: &Permutation) -> Result<Option<usize>, CliError> {
    if w.size() > ci::ORACLE_MAX_N {
        return Ok(None);
    }
    Ok(Some(match cli.field {
        FieldArg::Rational => ci::minimal_generator_count::<Rational>(w, &())?,
        FieldArg::Prime => {
            let ctx = PrimeModulus::new(cli.prime)
                .ok_or_else(|| CliError::Usage(format!("{} is not a prime below 2^31", cli.prime)))?;
            ci::minimal_generator_count::<Fp>(w, &ctx)?
        }
    }))
}

fn classify(cli: &Cli, input: &Input) -> Result<CIReport, CliError> {
    let mut report = match input {
        Input::Perm(w) => ci::is_complete_intersection(w),
        Input::Partial(w) => ci::is_complete_intersection_partial(w),
    };
    report.mu = mu(cli, &input.permutation())?;
    Ok(report)
}

fn groebner(input: &Input, corrupt: bool) -> Result<detideal::GroebnerReport, CliError> {
    check_verify_size("verify-gb", input.partial())?;
    let w = input.partial();
    if !corrupt {
        return Ok(detideal::verify_groebner::<Rational>(w, &()));
    }
    // test hook: drop the last generator before computing the basis
    let ideal = detideal::fulton_generators::<Rational>(w, &(), GeneratorCells::Essential);
    let mut gens = ideal.polynomials();
    gens.pop();
    Ok(detideal::verify_groebner_with(w, &gens))
}

fn localization(input: &Input) -> Result<frlab::VerificationReport, CliError> {
    let w = input.permutation();
    check_verify_size("verify-localize", w.as_partial())?;
    let mut report = frlab::verify_localization(&w)?;
    if let Input::Partial(p) = input {
        report.w = render::describe(p);
    }
    Ok(report)
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Diagram(target) => {
            let input = load(target)?;
            let w = input.partial();
            let value = json!({
                "w": render::describe(w),
                "diagram": w.diagram().iter().map(|(c, r)| json!({"cell": [c.p, c.q], "rank": r})).collect::<Vec<_>>(),
                "grid": render::grid(w).lines().collect::<Vec<_>>(),
            });
            emit(cli, value, render::grid(w));
            Ok(Outcome { ok: true })
        }
        Command::Essential(target) => {
            let input = load(target)?;
            let w = input.partial();
            let essential = w.essential_set();
            let value = json!({
                "w": render::describe(w),
                "essential": essential.iter().map(|(c, r)| json!({"cell": [c.p, c.q], "rank": r})).collect::<Vec<_>>(),
            });
            let text: String = essential.iter().map(|(c, r)| format!("{c} r={r}\n")).collect();
            emit(cli, value, text);
            Ok(Outcome { ok: true })
        }
        Command::Gens { target, all } => {
            let input = load(target)?;
            let w = input.partial();
            let ideal = detideal::fulton_generators::<Rational>(w, &(), GeneratorCells::Essential);
            let gens = if *all { ideal.generators().to_vec() } else { ideal.pruned() };
            let value = json!({
                "w": render::describe(w),
                "pruned": !all,
                "generators": gens.iter().map(|g| json!({"label": g.label(), "poly": g.poly.render()})).collect::<Vec<_>>(),
            });
            emit(cli, value, render::generators(&gens));
            Ok(Outcome { ok: true })
        }
        Command::Ci(target) => {
            let input = load(target)?;
            let report = classify(cli, &input)?;
            emit(cli, serde_json::to_value(&report).unwrap(), render::ci_report(&report));
            Ok(Outcome { ok: report.verdict })
        }
        Command::VerifyGb {
            target,
            corrupt_generator,
        } => {
            let input = load(target)?;
            let report = groebner(&input, *corrupt_generator)?;
            emit(cli, serde_json::to_value(&report).unwrap(), render::groebner_report(&report));
            Ok(Outcome { ok: report.matches })
        }
        Command::VerifyLemma2(target) => {
            let input = load(target)?;
            let w = input.permutation();
            check_verify_size("verify-lemma2", w.as_partial())?;
            let c = frlab::find_c(&w);
            let report = c.map(|_| frlab::verify_lemma2(&w)).transpose()?;
            let value = json!({
                "w": render::describe(input.partial()),
                "c": c.map(|c| [c.p, c.q]),
                "skipped": c.is_none(),
                "holds": report.as_ref().map_or(true, |r| r.holds),
                "report": report,
            });
            let text = match &report {
                None => "skipped: w is regular\n".to_string(),
                Some(r) => render::lemma2_report(c.unwrap(), r),
            };
            emit(cli, value, text);
            Ok(Outcome {
                ok: report.map_or(true, |r| r.holds),
            })
        }
        Command::VerifyLocalize(target) => {
            let input = load(target)?;
            let report = localization(&input)?;
            emit(cli, serde_json::to_value(&report).unwrap(), render::localization_report(&report));
            Ok(Outcome { ok: report.holds() })
        }
        Command::VerifyAll {
            target,
            corrupt_generator,
        } => {
            let input = load(target)?;
            let gb = groebner(&input, *corrupt_generator)?;
            let ci = classify(cli, &input)?;
            let loc = localization(&input)?;
            let oracle_agrees = ci.mu.map_or(true, |mu| (mu == ci.codim) == ci.verdict);
            let value = json!({
                "w": render::describe(input.partial()),
                "groebner": gb,
                "ci": ci,
                "localization": loc,
                "oracle_agrees": oracle_agrees,
            });
            let text = format!(
                "{}{}{}oracle agrees: {}\n",
                render::groebner_report(&gb),
                render::ci_report(&ci),
                render::localization_report(&loc),
                oracle_agrees
            );
            emit(cli, value, text);
            Ok(Outcome {
                ok: gb.matches && loc.holds() && oracle_agrees,
            })
        }
        Command::Census { n, filter } => census(cli, *n, *filter),
    }
}

fn census(cli: &Cli, n: usize, filter: Filter) -> Result<Outcome, CliError> {
    if n == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    if n > CENSUS_MAX_N {
        return Err(Error::Capability {
            operation: "census",
            bound: CENSUS_MAX_N,
            got: n,
        }
        .into());
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        pool = pool.num_threads(jobs);
    }
    let pool = pool.build().map_err(|e| CliError::Usage(e.to_string()))?;
    let reports: Vec<CIReport> = pool.install(|| {
        Permutation::all(n)
            .par_iter()
            .map(|w| classify(cli, &Input::Perm(w.clone())))
            .collect::<Result<_, _>>()
    })?;
    let total = reports.len();
    let mut ci_count = 0;
    let mut disagreements = 0;
    for report in &reports {
        ci_count += usize::from(report.verdict);
        if report.mu.is_some_and(|mu| (mu == report.codim) != report.verdict) {
            disagreements += 1;
        }
        let keep = match filter {
            Filter::All => true,
            Filter::Ci => report.verdict,
            Filter::NonCi => !report.verdict,
        };
        if !keep {
            continue;
        }
        if cli.json {
            println!("{}", serde_json::to_string(report).unwrap());
        } else {
            println!("{}", render::census_line(report));
        }
    }
    eprintln!("S_{n}: {ci_count} of {total} are complete intersections; {disagreements} oracle disagreements");
    Ok(Outcome {
        ok: disagreements == 0,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome { ok: true }) => ExitCode::SUCCESS,
        Ok(Outcome { ok: false }) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
