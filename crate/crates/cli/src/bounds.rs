use clap::{Args, Subcommand};
use num_traits::Zero;
use tatelab::bounds::{
    bound_b, bound_c, f_of_k_report, hensel_galois_report, hensel_report, least_nonsplit_bound,
    BoundReport, ExceptionalZero, FieldParams, REPORT_DIGITS,
};
use tatelab::{Real, Real256};

use crate::report::{Failure, Report};

pub const PRECISION: &str = "256-bit";

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// Degree of the base field K over the rationals.
    #[arg(long = "nk", default_value_t = 1)]
    pub nk: u64,
    /// Natural log of |d_K|.
    #[arg(long = "log-dk", conflicts_with = "dk", allow_hyphen_values = true)]
    pub log_dk: Option<String>,
    /// |d_K| as an integer (its log is taken at full precision).
    #[arg(long = "dk")]
    pub dk: Option<u64>,
    /// Exceptional zero of the Dedekind zeta function: yes, no or unknown.
    /// Defaults to no for the rationals and unknown otherwise.
    #[arg(long)]
    pub exceptional: Option<ExceptionalZero>,
}

#[derive(Debug, Subcommand)]
pub enum BoundsCmd {
    /// f(K)
    Fk(FieldArgs),
    /// Upper bound for log|d_L| from the ramified primes.
    Hensel {
        #[arg(long = "nl")]
        nl: u64,
        /// Comma-separated ramified primes.
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// Upper bound for log|d_L| for a Galois extension L/K.
    HenselGalois {
        #[arg(long = "nl")]
        nl: u64,
        #[arg(long = "nk")]
        nk: u64,
        #[arg(long = "log-dk", default_value = "0", allow_hyphen_values = true)]
        log_dk: String,
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// Bound for the least prime of K that does not split completely in L.
    Nonsplit {
        #[command(flatten)]
        field: FieldArgs,
        /// Natural log of |d_L|.
        #[arg(long = "log-dl", conflicts_with = "dl", allow_hyphen_values = true)]
        log_dl: Option<String>,
        /// |d_L| as an integer.
        #[arg(long = "dl")]
        dl: Option<u64>,
        /// Relative degree [L : K].
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "1")]
        c: String,
    },
    /// B(N, K, m, d)
    #[command(name = "B")]
    B {
        #[arg(long = "N")]
        conductor: u64,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 1)]
        m: u64,
        #[arg(long)]
        d: u64,
    },
    /// C(N, d, F, K)
    #[command(name = "C")]
    C {
        #[arg(long)]
        d: u64,
        #[arg(long = "N")]
        conductor: u64,
        /// Natural log of |d_F|.
        #[arg(long = "log-df", conflicts_with = "df", allow_hyphen_values = true)]
        log_df: Option<String>,
        /// |d_F| as an integer.
        #[arg(long = "df")]
        df: Option<u64>,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value = "1")]
        c: String,
        #[arg(long, default_value = "1")]
        c1: String,
    },
}

fn real(name: &str, s: &str) -> Result<Real256, Failure> {
    Real256::parse_decimal(s).ok_or_else(|| {
        Failure::input(
            "ParseError",
            format!("--{name}: {s:?} is not a decimal number"),
            "write plain or scientific decimals such as 1.3863 or 2e-3",
        )
    })
}

fn log_of(name: &str, log: &Option<String>, raw: Option<u64>) -> Result<Option<Real256>, Failure> {
    match (log, raw) {
        (Some(s), _) => Ok(Some(real(name, s)?)),
        (None, Some(0)) => Err(Failure::input(
            "ParseError",
            "discriminants are nonzero",
            "pass the absolute value of the discriminant",
        )),
        (None, Some(v)) => Ok(Some(Real256::from_u64(v).ln())),
        (None, None) => Ok(None),
    }
}

fn required(name: &str, v: Option<Real256>) -> Result<Real256, Failure> {
    v.ok_or_else(|| {
        Failure::input(
            "MissingArgument",
            format!("--log-{name} or --{name} is required"),
            "pass the discriminant or its natural log",
        )
    })
}

impl FieldArgs {
    fn params(&self) -> Result<FieldParams<Real256>, Failure> {
        let log = log_of("log-dk", &self.log_dk, self.dk)?.unwrap_or_else(Real256::zero);
        let ex = self.exceptional.unwrap_or(if self.nk == 1 {
            ExceptionalZero::No
        } else {
            ExceptionalZero::Unknown
        });
        Ok(FieldParams::new(self.nk, log, ex)?)
    }
}

pub fn run(cmd: &BoundsCmd) -> Result<(Report, BoundReport<Real256>), Failure> {
    let report = match cmd {
        BoundsCmd::Fk(field) => f_of_k_report(&field.params()?),
        BoundsCmd::Hensel { nl, primes } => hensel_report(*nl, primes)?,
        BoundsCmd::HenselGalois {
            nl,
            nk,
            log_dk,
            primes,
        } => hensel_galois_report(*nl, *nk, &real("log-dk", log_dk)?, primes)?,
        BoundsCmd::Nonsplit {
            field,
            log_dl,
            dl,
            n,
            c,
        } => {
            let log_dl = required("dl", log_of("log-dl", log_dl, *dl)?)?;
            least_nonsplit_bound(&field.params()?, &log_dl, *n, &real("c", c)?)?
        }
        BoundsCmd::B {
            conductor,
            field,
            m,
            d,
        } => bound_b(*conductor, &field.params()?, *m, *d)?,
        BoundsCmd::C {
            d,
            conductor,
            log_df,
            df,
            field,
            c,
            c1,
        } => {
            let log_df = required("df", log_of("log-df", log_df, *df)?)?;
            bound_c(
                *conductor,
                *d,
                &log_df,
                &field.params()?,
                &real("c", c)?,
                &real("c1", c1)?,
            )?
        }
    };
    let mut r = Report::new("bounds", PRECISION);
    r.input("bound", report.name);
    for (k, v) in &report.inputs {
        r.input(k, v.clone());
    }
    r.row(&report)?;
    Ok((r, report))
}

pub fn print(report: &BoundReport<Real256>) {
    println!("{}", report.name);
    for (k, v) in &report.inputs {
        println!("  {k} = {v}");
    }
    println!(
        "  log_value = {}",
        report.log_value.to_decimal(REPORT_DIGITS)
    );
    match report.value_decimal(REPORT_DIGITS) {
        Some(v) => println!("  value = {v}"),
        None => println!("  value exceeds 2^4096"),
    }
    if let Some(e) = &report.exact_value {
        println!("  integer ceiling = {e}");
    }
    for (name, v) in &report.branches {
        println!("  branch {name}: log = {}", v.to_decimal(REPORT_DIGITS));
    }
    if let Some(b) = report.active_branch {
        println!("  active: {b}");
    }
    if !report.unnormalized.is_empty() {
        println!(
            "  unnormalized constants: {}",
            report.unnormalized.join(", ")
        );
    }
}
