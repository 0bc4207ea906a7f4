use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use codekit::analysis::{
    affix_class, is_code_regular, is_complete, is_theta_code, is_theta_invariant, is_thin, sardinas_patterson,
};
use codekit::automata::set_state_cap;
use codekit::completion::{build_completion, verify_lemmas};
use codekit::families::{generate, Family, FamilySet, FamilySpec};
use codekit::formats::{
    parse_distribution_file, parse_set_file, parse_theta_file, write_regex_set_file, write_set_file, write_theta_file,
    SetFile,
};
use codekit::hull::{free_hull, theta_free_hull};
use codekit::measure::{measure_finite, measure_regular, BernoulliDist, Measure};
use codekit::{Alphabet, Error, ThetaMap};

#[derive(Parser)]
#[command(
    name = "codekit",
    version,
    about = "Decide code properties, compute invariant free hulls and complete invariant codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the property report of a set.
    Check {
        set: PathBuf,
        #[arg(long)]
        theta: Option<PathBuf>,
        /// Bernoulli distribution; uniform when omitted.
        #[arg(long)]
        dist: Option<PathBuf>,
        /// Extract a double factorization for sets given by regexes.
        #[arg(long)]
        witness: bool,
    },
    /// Embed a non-complete invariant code into a complete one.
    Complete {
        set: PathBuf,
        #[arg(long)]
        theta: PathBuf,
        /// Use this word instead of the shortest non-factor of X*.
        #[arg(long)]
        witness: Option<String>,
        /// Extend the witness until it is overlapping-free.
        #[arg(long)]
        overlap_free_witness: bool,
    },
    /// Smallest free (θ-invariant) submonoid containing a finite set.
    Hull {
        set: PathBuf,
        #[arg(long)]
        theta: Option<PathBuf>,
    },
    /// Measure of a set under a Bernoulli distribution.
    Measure {
        set: PathBuf,
        /// Uniform when omitted.
        #[arg(long)]
        dist: Option<PathBuf>,
    },
    /// Write a set file for one of the built-in families.
    Gen {
        family: String,
        #[arg(short = 'n', long = "n")]
        n: Option<usize>,
        #[arg(short = 'k')]
        k: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the family's map in map-file format.
        #[arg(long)]
        theta_out: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Io(PathBuf, std::io::Error),
    Lib(Error),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(..) => 1,
            Failure::Lib(
                Error::Parse { .. }
                | Error::Regex { .. }
                | Error::InvalidAlphabet(_)
                | Error::ForeignLetter(_)
                | Error::BadDistribution(_),
            ) => 1,
            Failure::Lib(Error::Verification(_)) | Failure::Checks => 3,
            Failure::Lib(_) => 2,
        }
    }
}

type CliResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_owned(), e))
}

fn write(path: &Path, text: &str) -> CliResult {
    fs::write(path, text).map_err(|e| Failure::Io(path.to_owned(), e))
}

fn load_theta(path: &Path, alphabet: &Alphabet) -> Result<ThetaMap, Failure> {
    Ok(parse_theta_file(&read(path)?, alphabet)?)
}

fn load_dist(path: Option<&Path>, alphabet: &Alphabet) -> Result<BernoulliDist, Failure> {
    match path {
        Some(p) => Ok(parse_distribution_file(&read(p)?, alphabet)?),
        None => Ok(BernoulliDist::uniform(alphabet)),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn measure_of(set: &SetFile, d: &BernoulliDist) -> Result<Measure, Failure> {
    Ok(match set.finite() {
        Some(x) => Measure::Rational(measure_finite(x, d)?),
        None => measure_regular(&set.language()?, d)?,
    })
}

fn check(set: &Path, theta: Option<&Path>, dist: Option<&Path>, regular_witness: bool) -> CliResult {
    let set = parse_set_file(&read(set)?)?;
    let a = &set.alphabet;
    let theta = theta.map(|p| load_theta(p, a)).transpose()?;
    let d = load_dist(dist, a)?;
    let l = set.language()?;
    let verdict = match set.finite() {
        Some(x) => sardinas_patterson(x)?,
        None => is_code_regular(&l, regular_witness)?,
    };
    let affix = affix_class(&l)?;
    let (thin, thin_witness) = is_thin(&l)?;
    let (complete, complete_witness) = is_complete(&l)?;
    println!("code: {}", yes(verdict.is_code));
    println!("prefix: {}", yes(affix.prefix));
    println!("suffix: {}", yes(affix.suffix));
    println!("bifix: {}", yes(affix.bifix()));
    println!("thin: {}", yes(thin));
    println!("complete: {}", yes(complete));
    let mut theta_witness = None;
    match &theta {
        Some(t) => {
            println!("theta_invariant: {}", yes(is_theta_invariant(&l, t)?));
            let v = is_theta_code(&l, t, regular_witness || set.finite().is_some())?;
            println!("theta_code: {}", yes(v.is_code));
            theta_witness = v.witness;
        }
        None => {
            println!("theta_invariant: n/a");
            println!("theta_code: n/a");
        }
    }
    println!("measure: {}", measure_of(&set, &d)?);
    if let Some(f) = &verdict.witness {
        let (left, right) = f.render(a);
        println!("witness.left: {left}");
        println!("witness.right: {right}");
    }
    if let Some(f) = &theta_witness {
        let (left, right) = f.render(a);
        println!("witness.theta_left: {left}");
        println!("witness.theta_right: {right}");
    }
    if let Some(w) = thin_witness {
        println!("witness.thin: {}", a.render(&w));
    }
    if let Some(w) = complete_witness {
        println!("witness.complete: {}", a.render(&w));
    }
    Ok(())
}

fn complete(set: &Path, theta: &Path, witness: Option<&str>, overlap_free: bool) -> CliResult {
    let set = parse_set_file(&read(set)?)?;
    let a = &set.alphabet;
    let t = load_theta(theta, a)?;
    let x = set.language()?;
    let witness = witness.map(|w| a.parse_word(w)).transpose()?;
    let trace = build_completion(&x, &t, witness.as_ref(), overlap_free)?;
    let lemmas = verify_lemmas(&trace, &x)?;
    println!("y: {}", a.render(&trace.y));
    println!("z: {}", a.render(&trace.z));
    println!("Z: {}", trace.z_set.rendered().join(" "));
    println!("states.W: {}", trace.w.state_count());
    println!("states.T: {}", trace.t.state_count());
    println!("states.Y: {}", trace.completed.state_count());
    for (name, l) in [("T", &trace.t), ("Y", &trace.completed)] {
        println!("dump.{name}:");
        for line in l.dump().lines() {
            println!("  {line}");
        }
    }
    println!("checks:");
    let lines = trace.checks.lines().into_iter().chain(lemmas.lines());
    let mut failed = false;
    for (name, ok) in lines {
        println!("  {name}: {}", if ok { "pass" } else { "fail" });
        failed |= !ok;
    }
    if failed {
        return Err(Failure::Checks);
    }
    Ok(())
}

fn hull(set: &Path, theta: Option<&Path>) -> CliResult {
    let set = parse_set_file(&read(set)?)?;
    let x = set.finite().ok_or_else(|| Error::BadParams("hull needs a finite set, got regex lines".into()))?;
    let h = match theta {
        Some(p) => theta_free_hull(x, &load_theta(p, &set.alphabet)?)?,
        None => free_hull(x)?,
    };
    println!("base: {}", h.base.rendered().join(" "));
    println!("theta_invariant: {}", yes(h.theta_invariant));
    println!("input_code: {}", yes(h.input_is_code));
    if !h.input_is_code {
        let ok = if h.defect_ok { "" } else { " violated" };
        println!("defect_bound: {}<={}{ok}", h.base.len(), x.len() - 1);
    }
    println!("iterations: {}", h.iterations);
    if !h.defect_ok {
        return Err(Failure::Checks);
    }
    Ok(())
}

fn measure(set: &Path, dist: Option<&Path>) -> CliResult {
    let set = parse_set_file(&read(set)?)?;
    let d = load_dist(dist, &set.alphabet)?;
    println!("measure: {}", measure_of(&set, &d)?);
    Ok(())
}

fn gen(family: &str, n: Option<usize>, k: Option<usize>, output: Option<&Path>, theta_out: Option<&Path>) -> CliResult {
    let family: Family = family.parse()?;
    let param = match (family.param_name(), n, k) {
        (_, Some(_), Some(_)) => return Err(Error::BadParams("give at most one of -n and -k".into()).into()),
        (Some('n'), _, Some(_)) => return Err(Error::BadParams(format!("{family} takes -n, not -k")).into()),
        (Some('k'), Some(_), _) => return Err(Error::BadParams(format!("{family} takes -k, not -n")).into()),
        (_, n, k) => n.or(k),
    };
    let g = generate(FamilySpec::new(family, param))?;
    let text = match &g.set {
        FamilySet::Finite(x) => write_set_file(x),
        FamilySet::Regex { alphabet, text } => write_regex_set_file(alphabet, text),
    };
    match output {
        Some(p) => write(p, &text)?,
        None => print!("{text}"),
    }
    if let Some(p) = theta_out {
        write(p, &write_theta_file(&g.theta))?;
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    if let Ok(cap) = std::env::var("CODEKIT_STATE_CAP") {
        let cap = cap
            .trim()
            .parse()
            .map_err(|_| Error::Parse { line: 1, message: format!("CODEKIT_STATE_CAP: invalid number '{cap}'") })?;
        set_state_cap(cap);
    }
    match cli.command {
        Command::Check { set, theta, dist, witness } => check(&set, theta.as_deref(), dist.as_deref(), witness),
        Command::Complete { set, theta, witness, overlap_free_witness } => {
            complete(&set, &theta, witness.as_deref(), overlap_free_witness)
        }
        Command::Hull { set, theta } => hull(&set, theta.as_deref()),
        Command::Measure { set, dist } => measure(&set, dist.as_deref()),
        Command::Gen { family, n, k, output, theta_out } => gen(&family, n, k, output.as_deref(), theta_out.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Io(path, e) => eprintln!("error: {}: {e}", path.display()),
                Failure::Lib(e) => eprintln!("error: {e}"),
                Failure::Checks => eprintln!("error: verification checks failed"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}
