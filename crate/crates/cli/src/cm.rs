use clap::Subcommand;
use serde_json::json;
use tatelab::bounds::{FieldParams, REPORT_DIGITS};
use tatelab::cmlab::{
    least_nonsplit_search, noncm_rank_check, pi_k_count, survey_rows, DensityReport, EllipticCurve,
    SurveyRow, SURVEY_BUDGET,
};
use tatelab::{CmError, Real, Real256};

use crate::report::{to_value, Failure, Report};

/// Survey primes are processed in windows of this width so that text output
/// can stream.
const WINDOW: u64 = 20_000;

#[derive(Debug, Subcommand)]
pub enum CmCmd {
    /// Tate-class ranks of E x E for a CM curve, prime by prime.
    Survey {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long)]
        pmax: u64,
    },
    /// Tate-class ranks of E x E for a curve given by its Weierstrass model.
    Noncm {
        /// a1,a2,a3,a4,a6
        #[arg(long, allow_hyphen_values = true)]
        curve: EllipticCurve,
        #[arg(long)]
        pmax: u64,
    },
    /// Least inert prime of Q(sqrt(D)) against its effective bound.
    Nonsplit {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long, default_value = "1")]
        c: String,
    },
    /// Prime ideals of Q(sqrt(D)) of norm at most x, against Li(x).
    Pik {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long)]
        x: u64,
    },
}

fn survey_line(r: &SurveyRow) -> String {
    let opt = |v: Option<u64>| v.map_or("-".to_string(), |x| x.to_string());
    format!(
        "{:>9} {:>3} {:>6} {:<15} {:>4} {:>4} {:>3}",
        r.p,
        r.kronecker,
        opt(r.a_p),
        r.reduction_type.as_str(),
        opt(r.rank_base),
        opt(r.rank_stable),
        opt(r.stable_degree)
    )
}

pub fn run(cmd: &CmCmd, text: bool) -> Result<Report, Failure> {
    match cmd {
        CmCmd::Survey { disc, pmax } => {
            if *pmax > SURVEY_BUDGET {
                return Err(CmError::BudgetExceeded {
                    what: "p_max",
                    value: *pmax,
                    limit: SURVEY_BUDGET,
                }
                .into());
            }
            let mut r = Report::new("cm survey", "exact");
            r.input("disc", *disc).input("pmax", *pmax);
            if text {
                println!(
                    "{:>9} {:>3} {:>6} {:<15} {:>4} {:>4} {:>3}",
                    "p", "kr", "|a_p|", "type", "base", "stab", "deg"
                );
            }
            let mut rows = Vec::new();
            let mut lo = 2;
            while lo <= *pmax {
                let hi = (lo + WINDOW - 1).min(*pmax);
                let chunk = survey_rows(*disc, lo, hi)?;
                if text {
                    for row in &chunk {
                        println!("{}", survey_line(row));
                    }
                }
                rows.extend(chunk);
                lo = hi + 1;
            }
            if rows.is_empty() {
                // Still validate the discriminant for tiny bounds.
                survey_rows(*disc, 0, 0)?;
            }
            let density = DensityReport::from_rows(*pmax, &rows);
            if text {
                println!(
                    "good primes {}: inert {} ({:.4}), split {} ({:.4}); rank 4: {}, rank 6: {}, other: {}",
                    density.good_primes,
                    density.inert,
                    density.inert_fraction,
                    density.split,
                    density.split_fraction,
                    density.rank4,
                    density.rank6,
                    density.other_rank
                );
                println!(
                    "over the CM field: {} prime ideals, {} from inert primes ({:.4})",
                    density.cm_field.prime_ideals,
                    density.cm_field.from_inert,
                    density.cm_field.inert_fraction
                );
            }
            for row in &rows {
                r.row(row)?;
            }
            r.summary = Some(to_value(&density)?);
            Ok(r)
        }
        CmCmd::Noncm { curve, pmax } => {
            let rep = noncm_rank_check(curve, *pmax)?;
            let mut r = Report::new("cm noncm", "exact");
            r.input("curve", curve.to_string()).input("pmax", *pmax);
            if text {
                println!(
                    "{:>6} {:>5} {:>4} {:>4} {:>3}",
                    "p", "a_p", "base", "stab", "deg"
                );
                let opt = |v: Option<u64>| v.map_or("-".to_string(), |x| x.to_string());
                for row in &rep.rows {
                    println!(
                        "{:>6} {:>5} {:>4} {:>4} {:>3}",
                        row.p,
                        row.a_p.map_or("bad".to_string(), |a| a.to_string()),
                        opt(row.rank_base),
                        opt(row.rank_stable),
                        opt(row.stable_degree)
                    );
                }
                println!(
                    "rank_base = 4 at every good prime: {}; primes with rank_stable > 4: {:?}",
                    rep.all_rank_base_4, rep.exceptions
                );
            }
            for row in &rep.rows {
                r.row(row)?;
            }
            r.summary = Some(json!({
                "curve": to_value(&rep.curve)?,
                "exceptions": rep.exceptions,
                "all_rank_base_4": rep.all_rank_base_4,
            }));
            Ok(r)
        }
        CmCmd::Nonsplit { disc, c } => {
            let c = Real256::parse_decimal(c).ok_or_else(|| {
                Failure::input(
                    "ParseError",
                    format!("--c: {c:?} is not a decimal number"),
                    "write a decimal such as 1 or 2.5",
                )
            })?;
            let found = least_nonsplit_search(*disc, &FieldParams::<Real256>::rationals(), &c)?;
            let mut r = Report::new("cm nonsplit", crate::bounds::PRECISION);
            r.input("disc", *disc)
                .input("c", c.to_decimal(REPORT_DIGITS));
            if text {
                println!(
                    "least inert prime for D = {}: {}; bound {} (log {}); satisfied: {}",
                    disc,
                    found.found_prime,
                    found
                        .bound
                        .value_decimal(12)
                        .unwrap_or_else(|| "huge".into()),
                    found.bound.log_value.to_decimal(REPORT_DIGITS),
                    found.satisfied
                );
            }
            r.row(&found)?;
            Ok(r)
        }
        CmCmd::Pik { disc, x } => {
            let count = pi_k_count(*disc, *x)?;
            let mut r = Report::new("cm pik", "f64 for Li(x)");
            r.input("disc", *disc).input("x", *x);
            if text {
                println!(
                    "pi_K({}) = {} for D = {}; Li(x) = {:.6}; ratio = {:.6}",
                    x, count.count, disc, count.li_x, count.ratio
                );
            }
            r.row(&count)?;
            Ok(r)
        }
    }
}
