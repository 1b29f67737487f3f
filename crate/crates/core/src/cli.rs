//! Command-line front end. [`run`] does all the work and returns the exit
//! status with the text for stdout and stderr, so it can be driven from
//! tests as well as from the binary.

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::{Algebra, DEFAULT_FUEL};
use crate::basis::admissible_basis;
use crate::coproduct::{
    check_coassociativity, check_counit, check_relations, coproduct, cp_square_check, square_obstruction, CheckReport,
    CoproductScheme, ObstructionReport, RelationSet,
};
use crate::error::Error;
use crate::modular::Prime;
use crate::output::{to_json, ChecksRecord, CoproductRecord, ElementRecord, ObstructionRecord, TensorRecord};
use crate::parse::parse_expression;
use crate::term::{Element, Grading, Strategy};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "bp-engine", version, about = "Admissible normal forms and coproduct checks at odd primes")]
pub struct Cli {
    /// Odd prime
    #[arg(short = 'p', long = "prime", global = true)]
    pub prime: Option<u32>,

    /// Rewrite-step budget per normalization
    #[arg(long, global = true, env = "BP_ENGINE_FUEL", default_value_t = DEFAULT_FUEL)]
    pub fuel: u64,

    /// JSON output (default)
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,

    /// Human-readable output
    #[arg(long, global = true)]
    pub text: bool,

    /// Worker threads for relation sweeps
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of an expression
    Normalize { expr: String },
    /// Product of two expressions
    Mul { left: String, right: String },
    /// Admissible basis in bidegree (n, s)
    Basis {
        #[arg(short = 'n')]
        n: u64,
        #[arg(short = 's')]
        s: u64,
    },
    /// Coproduct of an expression, extended multiplicatively over its words
    Coprod {
        expr: String,
        #[command(flatten)]
        scheme: SchemeArgs,
    },
    /// Coproduct compatibility with b b = 0 and the Adem-type relations
    CheckRelations {
        #[command(flatten)]
        scheme: SchemeArgs,
        /// Bound on both relation parameters a and b
        #[arg(long, default_value_t = 6)]
        max: u32,
        /// Only the relations among powers (the subalgebra without b)
        #[arg(long)]
        beta_free: bool,
    },
    /// Relations, counit and coassociativity in one run
    CheckCoproduct {
        #[command(flatten)]
        scheme: SchemeArgs,
        /// Bound on the relation parameters a and b
        #[arg(long, default_value_t = 6)]
        max: u32,
        /// Internal-degree bound for the coalgebra axioms
        #[arg(long, default_value_t = 12)]
        n_max: u64,
        /// Bound on the number of power letters
        #[arg(long, default_value_t = 2)]
        s_max: u64,
    },
    /// Counit axiom on basis words
    CheckCounit {
        #[command(flatten)]
        scheme: SchemeArgs,
        /// Internal-degree bound
        #[arg(long, default_value_t = 12)]
        max: u64,
        /// Bound on the number of power letters
        #[arg(long, default_value_t = 2)]
        s_max: u64,
    },
    /// Coassociativity on basis words
    CheckCoassoc {
        #[command(flatten)]
        scheme: SchemeArgs,
        /// Internal-degree bound
        #[arg(long, default_value_t = 12)]
        max: u64,
        /// Bound on the number of power letters
        #[arg(long, default_value_t = 2)]
        s_max: u64,
    },
    /// Square of b ⊗ P0 + P0 ⊗ b for every parity class of (|b|, |P0|)
    Obstruction,
    /// Square of b P0 ⊗ P0 P0 + P0 P0 ⊗ b P0 in the subalgebra generated by P^k and b P^k
    CpCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeName {
    Singer,
    Geometric,
}

#[derive(Debug, Args)]
pub struct SchemeArgs {
    /// Image of b: `b ⊗ 1 + 1 ⊗ b` (singer) or `b ⊗ P0 + P0 ⊗ b` (geometric)
    #[arg(long, value_enum, default_value_t = SchemeName::Singer)]
    pub scheme: SchemeName,
    /// Parity of |b| (geometric scheme)
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub parity_beta: u8,
    /// Parity of |P0| (geometric scheme)
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub parity_p0: u8,
}

impl SchemeArgs {
    fn build(&self, p: Prime) -> CoproductScheme {
        match self.scheme {
            SchemeName::Singer => CoproductScheme::singer(p),
            SchemeName::Geometric => CoproductScheme::geometric(p, self.parity_beta == 1, self.parity_p0 == 1),
        }
    }
}

/// Exit status plus captured output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { status: EXIT_OK, stdout, stderr: String::new() }
    }

    fn usage(msg: String) -> Self {
        Outcome { status: EXIT_USAGE, stdout: String::new(), stderr: msg }
    }
}

/// Parses `args` (including the program name) and runs one subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(rendered),
                _ => Outcome::usage(rendered),
            };
        }
    };
    let Some(raw) = cli.prime else {
        return Outcome::usage("error: -p <odd prime> is required\n".into());
    };
    let p = match Prime::new(raw) {
        Ok(p) => p,
        Err(e) => return Outcome::usage(format!("error: {e}\n")),
    };
    match execute(&cli, p) {
        Ok(out) => out,
        Err(Error::Parse(e)) => Outcome::usage(format!("error: {e}\n")),
        Err(e) => Outcome { status: EXIT_CHECK_FAILED, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn status_for(passed: bool) -> i32 {
    if passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn render_reports(p: Prime, reports: &[CheckReport], text: bool) -> Outcome {
    let passed = reports.iter().all(CheckReport::passed);
    let stdout = if text {
        let mut s = String::new();
        for r in reports {
            s.push_str(&format!("{} {} [{}]: {} checked, {}\n", r.scheme, r.family, r.range, r.instances, r.verdict()));
            for line in &r.trace {
                s.push_str(&format!("  {line}\n"));
            }
            for f in &r.failures {
                s.push_str(&format!("  {:?}: residual {}\n", f.instance, f.residual.text));
            }
            if let Some(note) = &r.note {
                s.push_str(&format!("  note: {note}\n"));
            }
        }
        s.push_str(if passed { "verdict: pass\n" } else { "verdict: fail\n" });
        s
    } else {
        to_json(&ChecksRecord { p: p.get(), passed, reports }) + "\n"
    };
    Outcome { status: status_for(passed), stdout, stderr: String::new() }
}

fn render_element(p: Prime, e: &Element, text: bool) -> String {
    if text {
        e.to_text(p) + "\n"
    } else {
        ElementRecord::new(p, e).to_json() + "\n"
    }
}

fn execute(cli: &Cli, p: Prime) -> Result<Outcome, Error> {
    let alg = Algebra::with_options(p, Strategy::Leftmost, cli.fuel);
    let text = cli.text;
    let out = match &cli.command {
        Command::Normalize { expr } => {
            let e = parse_expression(expr, p)?;
            Outcome::ok(render_element(p, &alg.normalize(&e)?, text))
        }
        Command::Mul { left, right } => {
            let (x, y) = (parse_expression(left, p)?, parse_expression(right, p)?);
            Outcome::ok(render_element(p, &alg.multiply(&x, &y)?, text))
        }
        Command::Basis { n, s } => {
            let words: Vec<String> =
                admissible_basis(p, *n, *s, &Grading::standard(p))?.iter().map(|m| m.to_string()).collect();
            Outcome::ok(if text { words.iter().map(|w| format!("{w}\n")).collect() } else { to_json(&words) + "\n" })
        }
        Command::Coprod { expr, scheme } => {
            let scheme = scheme.build(p);
            let e = parse_expression(expr, p)?;
            let t = coproduct(&e, &scheme, &alg)?;
            Outcome::ok(if text {
                t.to_text(p) + "\n"
            } else {
                to_json(&CoproductRecord { p: p.get(), scheme: scheme.name(), tensor: TensorRecord::new(p, &t) }) + "\n"
            })
        }
        Command::CheckRelations { scheme, max, beta_free } => {
            let set = if *beta_free { RelationSet::BETA_FREE } else { RelationSet::ALL };
            let reports = check_relations(&scheme.build(p), &alg, *max, *max, set, cli.jobs)?;
            render_reports(p, &reports, text)
        }
        Command::CheckCoproduct { scheme, max, n_max, s_max } => {
            let scheme = scheme.build(p);
            let mut reports = check_relations(&scheme, &alg, *max, *max, RelationSet::ALL, cli.jobs)?;
            if scheme.grading().is_standard(p) {
                for s in 0..=*s_max {
                    reports.push(check_counit(&scheme, &alg, *n_max, s)?);
                }
                reports.push(check_coassociativity(&scheme, &alg, *n_max, *s_max)?);
            }
            render_reports(p, &reports, text)
        }
        Command::CheckCounit { scheme, max, s_max } => {
            let scheme = scheme.build(p);
            let reports = (0..=*s_max).map(|s| check_counit(&scheme, &alg, *max, s)).collect::<Result<Vec<_>, _>>()?;
            render_reports(p, &reports, text)
        }
        Command::CheckCoassoc { scheme, max, s_max } => {
            let reports = vec![check_coassociativity(&scheme.build(p), &alg, *max, *s_max)?];
            render_reports(p, &reports, text)
        }
        Command::Obstruction => {
            let cases = [(false, false), (false, true), (true, false), (true, true)]
                .into_iter()
                .map(|(b, t)| square_obstruction(&alg, b, t))
                .collect::<Result<Vec<_>, _>>()?;
            let reproduced = cases.iter().all(ObstructionReport::reproduced);
            let verdict = if reproduced { "obstruction reproduced" } else { "obstruction not reproduced" };
            let stdout = if text {
                let mut s = String::new();
                for c in &cases {
                    s.push_str(&format!(
                        "|b| {} |P0| {}: psi(b)^2 = {}\n",
                        parity_name(c.parities.beta_odd),
                        parity_name(c.parities.p0_odd),
                        c.residual.text
                    ));
                }
                s.push_str(&format!("note: {}\n", cases[0].note));
                s.push_str(&format!("verdict: {verdict}\n"));
                s
            } else {
                to_json(&ObstructionRecord { p: p.get(), verdict, cases: &cases }) + "\n"
            };
            Outcome { status: status_for(reproduced), stdout, stderr: String::new() }
        }
        Command::CpCheck => render_reports(p, &[cp_square_check(&alg)?], text),
    };
    Ok(out)
}

fn parity_name(odd: bool) -> &'static str {
    if odd {
        "odd"
    } else {
        "even"
    }
}

/// Entry point for the binary.
pub fn main() -> ! {
    let out = run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.status)
}
