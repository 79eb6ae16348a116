use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use tfan::cone::{cone_from_basis, slice, HCone};
use tfan::division::{sort_basis, standard_basis, StandardBasis, DEFAULT_STEP_CAP};
use tfan::exact::{rat, QVector, Rat};
use tfan::fan::{groebner_fan, Fan, FanConfig};
use tfan::inred::{initially_reduced_basis, Regime};
use tfan::poly::{initial_form, Ideal, MonomialOrdering, Polynomial};

use crate::checks::run_all;
use crate::format::{cone_block, fan_block, initial_block, sb_block, slice_block};
use crate::parse::{parse_fix, parse_problem, parse_rational_list, parse_tiebreak, ParseError, ProblemFile};

#[derive(Parser, Debug)]
#[command(name = "tfan", version, about = "Groebner fans of ideals over Z[[t]][x]")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Standard basis of the generators.
    Stdbasis(Options),
    /// Initially reduced standard basis.
    Inred(Options),
    /// Initial forms of the initially reduced basis at --weight.
    Initial(Options),
    /// Groebner cone of --weight.
    Cone(Options),
    /// All maximal Groebner cones and their adjacencies.
    Fan(Options),
    /// Affine slices of the cone of --weight, or of every cone of the fan.
    Slice(Options),
    /// Runs the invariant suites on the fan.
    Check(Options),
}

#[derive(Args, Debug, Clone, Default)]
pub struct Options {
    pub file: PathBuf,
    /// Weight vector `w0,w1,..,wn`, entries integer or `a/b`.
    #[arg(long, allow_hyphen_values = true)]
    pub weight: Option<String>,
    /// Tiebreak order such as `x>y>z`.
    #[arg(long)]
    pub tiebreak: Option<String>,
    /// Declared prime p; p - t is added to the ideal.
    #[arg(long)]
    pub prime: Option<BigInt>,
    /// Step cap for divisions and generic reduction.
    #[arg(long)]
    pub max_steps: Option<u64>,
    /// Seed for coverage sampling.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of coverage samples.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Worker threads for the fan traversal.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Fixed coordinates of a slice, e.g. `0=-1,3=1`.
    #[arg(long, allow_hyphen_values = true)]
    pub fix: Option<String>,
    /// Stop the traversal after this many cones.
    #[arg(long)]
    pub max_cones: Option<usize>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error("{algorithm} failed: {message}")]
    Compute { algorithm: &'static str, message: String, partial: Option<String> },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute { .. } => 1,
            _ => 2,
        }
    }
}

/// Text for stdout and whether every check passed.
pub struct Output {
    pub text: String,
    pub ok: bool,
}

fn compute(algorithm: &'static str) -> impl Fn(tfan::Error) -> CliError {
    move |e| CliError::Compute { algorithm, message: e.to_string(), partial: None }
}

struct Problem {
    file: ProblemFile,
    ideal: Ideal,
    weights: Vec<QVector>,
    tiebreak: Vec<usize>,
    cap: u64,
}

impl Problem {
    fn regime(&self) -> Regime {
        match &self.ideal.prime {
            Some(p) => Regime::Prime(p.clone()),
            None => Regime::Generic,
        }
    }

    fn ordering(&self, w: Option<&QVector>) -> Result<MonomialOrdering, CliError> {
        let mut weights: Vec<QVector> = w.into_iter().cloned().collect();
        weights.extend(self.weights.iter().cloned());
        MonomialOrdering::new(self.file.n(), weights, self.tiebreak.clone()).map_err(|e| CliError::Usage(e.to_string()))
    }

    fn names(&self) -> &[String] {
        &self.file.names
    }

    fn fan_config(&self, opts: &Options, start: Option<QVector>) -> FanConfig {
        FanConfig {
            start_weight: start.or_else(|| self.weights.first().cloned()),
            tiebreak: Some(self.tiebreak.clone()),
            prime: self.ideal.prime.clone(),
            step_cap: self.cap,
            parallel: opts.threads.is_some_and(|t| t > 1),
            max_cones: opts.max_cones,
        }
    }

    fn basis(&self, w: Option<&QVector>) -> Result<StandardBasis, CliError> {
        let ord = self.ordering(w)?;
        let mut sb = initially_reduced_basis(&self.regime(), &ord, &self.ideal.gens, self.cap)
            .map_err(compute("initially reduced standard basis"))?;
        sort_basis(&mut sb);
        Ok(sb)
    }
}

fn load(opts: &Options) -> Result<Problem, CliError> {
    let text = std::fs::read_to_string(&opts.file).map_err(|e| CliError::Io(format!("{}: {e}", opts.file.display())))?;
    problem_from_text(&text, opts)
}

fn problem_from_text(text: &str, opts: &Options) -> Result<Problem, CliError> {
    let file = parse_problem(text)?;
    let n = file.n();
    let prime = opts.prime.clone().or_else(|| file.prime.clone());
    let ideal = Ideal::new(file.gens.clone(), n, prime).map_err(|e| CliError::Usage(e.to_string()))?;
    let tiebreak = match &opts.tiebreak {
        Some(s) => parse_tiebreak(s, &file.names).map_err(CliError::Usage)?,
        None => file.tiebreak.clone(),
    };
    let weights = if file.weights.is_empty() {
        let mut w = vec![rat(1, 1); n + 1];
        w[0] = rat(-1, 1);
        vec![w]
    } else {
        file.weights.clone()
    };
    Ok(Problem { ideal, weights, tiebreak, cap: opts.max_steps.unwrap_or(DEFAULT_STEP_CAP), file })
}

fn weight_flag(opts: &Options, ambient: usize) -> Result<Option<QVector>, CliError> {
    let Some(s) = &opts.weight else { return Ok(None) };
    let w = parse_rational_list(s).map_err(CliError::Usage)?;
    if w.len() != ambient {
        return Err(CliError::Usage(format!("--weight needs {ambient} entries, got {}", w.len())));
    }
    if !w[0].is_negative() {
        return Err(CliError::Usage("--weight must have a negative first entry".into()));
    }
    Ok(Some(w))
}

fn cone_of(p: &Problem, w: &QVector) -> Result<HCone, CliError> {
    let sb = p.basis(Some(w))?;
    let forms: Vec<Polynomial> = sb.elements.iter().map(|g| initial_form(w, g)).collect::<tfan::Result<_>>().map_err(compute("initial forms"))?;
    cone_from_basis(&sb.ordering, &sb, &forms).map_err(compute("Groebner cone"))
}

fn fan_of(p: &Problem, opts: &Options, start: Option<QVector>) -> Result<Fan, CliError> {
    let config = p.fan_config(opts, start);
    let run = || groebner_fan(&p.ideal, &config);
    let result = match opts.threads {
        Some(t) if t > 1 => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(t).build().map_err(|e| CliError::Usage(e.to_string()))?;
            pool.install(run)
        }
        _ => run(),
    };
    result.map_err(|f| CliError::Compute {
        algorithm: "Groebner fan",
        message: f.cause.to_string(),
        partial: Some(fan_block(&f.partial, p.names())),
    })
}

pub fn run(command: &Command) -> Result<Output, CliError> {
    let opts = match command {
        Command::Stdbasis(o) | Command::Inred(o) | Command::Initial(o) | Command::Cone(o) | Command::Fan(o) | Command::Slice(o) | Command::Check(o) => o,
    };
    let p = load(opts)?;
    run_problem(command, &p, opts)
}

/// Runs a command on problem text instead of a file.
pub fn run_text(command: &Command, text: &str) -> Result<Output, CliError> {
    let opts = match command {
        Command::Stdbasis(o) | Command::Inred(o) | Command::Initial(o) | Command::Cone(o) | Command::Fan(o) | Command::Slice(o) | Command::Check(o) => o,
    };
    let p = problem_from_text(text, opts)?;
    run_problem(command, &p, opts)
}

fn run_problem(command: &Command, p: &Problem, opts: &Options) -> Result<Output, CliError> {
    let ambient = p.file.n() + 1;
    let w = weight_flag(opts, ambient)?;
    let ok = |text| Ok(Output { text, ok: true });
    match command {
        Command::Stdbasis(_) => {
            let ord = p.ordering(w.as_ref())?;
            let mut sb = standard_basis(&ord, &p.ideal.gens, p.cap).map_err(compute("standard basis"))?;
            sort_basis(&mut sb);
            ok(sb_block(&sb, p.names()))
        }
        Command::Inred(_) => ok(sb_block(&p.basis(w.as_ref())?, p.names())),
        Command::Initial(_) => {
            let w = w.unwrap_or_else(|| p.weights[0].clone());
            let sb = p.basis(Some(&w))?;
            let forms: Vec<Polynomial> = sb.elements.iter().map(|g| initial_form(&w, g)).collect::<tfan::Result<_>>().map_err(compute("initial forms"))?;
            ok(initial_block(&w, &forms, p.names()))
        }
        Command::Cone(_) => {
            let w = w.unwrap_or_else(|| p.weights[0].clone());
            ok(cone_block(&cone_of(p, &w)?))
        }
        Command::Fan(_) => ok(fan_block(&fan_of(p, opts, w)?, p.names())),
        Command::Slice(_) => {
            let fix = match &opts.fix {
                Some(s) => parse_fix(s, ambient).map_err(CliError::Usage)?,
                None => vec![(0, rat(-1, 1))],
            };
            let mut text = String::new();
            match &w {
                Some(w) => {
                    let s = slice(&cone_of(p, w)?, &fix).map_err(compute("slice"))?;
                    text.push_str(&slice_block(None, &fix, &s));
                }
                None => {
                    let fan = fan_of(p, opts, None)?;
                    for (i, c) in fan.maximal_cones.iter().enumerate() {
                        let s = slice(&c.hcone, &fix).map_err(compute("slice"))?;
                        text.push_str(&slice_block(Some(i), &fix, &s));
                    }
                }
            }
            ok(text)
        }
        Command::Check(_) => {
            let fan = fan_of(p, opts, w)?;
            let results = run_all(&fan, ambient, opts.samples.unwrap_or(1000), opts.seed.unwrap_or(0));
            let mut text = String::new();
            for r in &results {
                text.push_str(&format!("CHECK {} {} {}\n", r.name, if r.pass { "PASS" } else { "FAIL" }, r.detail));
            }
            Ok(Output { text, ok: results.iter().all(|r| r.pass) })
        }
    }
}

/// Rational vector from integers, for callers building weights in code.
pub fn weight(v: &[i64]) -> QVector {
    v.iter().map(|&x| Rat::from_integer(x.into())).collect()
}
