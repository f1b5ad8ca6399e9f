//! Acceptance run: one PASS/FAIL line per criterion. Built with
//! `harness = false` so the lines show up in plain `cargo test` output.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex;
use num_traits::Zero;
use rand::Rng;
use rug::ops::Pow;
use rug::Float;
use tatelab::arith::is_fundamental_discriminant;
use tatelab::bounds::{
    bound_b, bound_c, f_of_k_report, hensel_log_disc, least_nonsplit_bound, ExceptionalZero,
    FieldParams,
};
use tatelab::cmlab::{
    ap_cm, ap_pointcount, exe_survey, kronecker, least_nonsplit_search, noncm_rank_check,
    pi_k_count, EllipticCurve, ReductionType,
};
use tatelab::roots::{complex_roots, multisets_match, subset_products};
use tatelab::tate::{tate_dim_big, tate_dim_numeric};
use tatelab::weil::elliptic;
use tatelab::{
    base_change, cyclotomic, degree_bound, product_variety, stable_tate_dim, tate_dim,
    with_precision, BigInt, IntMatrix, IntPoly, Real, Real256, TateError, WeilPoly,
};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    if ok {
        Ok(detail.into())
    } else {
        Err(detail.into())
    }
}

fn weil_suite() -> Vec<WeilPoly> {
    let mut rng = common::rng(0x7a7e);
    (0..200)
        .map(|_| common::random_weil(&mut rng, 97, 3))
        .collect()
}

/// `E x E` over `F_p` for the Gaussian CM curve, inert and split families.
fn gaussian_squares(p_max: u64) -> Vec<WeilPoly> {
    tatelab::cmlab::primes_in(5, p_max)
        .into_iter()
        .map(|p| {
            let a = ap_cm(-4, p).expect("good prime").abs_trace as i64;
            let e = elliptic(a, p).expect("Hasse");
            product_variety(&e, &e).expect("same field")
        })
        .collect()
}

fn survey_ranks() -> Outcome {
    let s = exe_survey(-4, 100_000).map_err(|e| e.to_string())?;
    let mut inert = 0;
    let mut split = 0;
    for r in &s.rows {
        match r.reduction_type {
            ReductionType::Supersingular => {
                inert += 1;
                if (r.rank_base, r.rank_stable, r.stable_degree) != (Some(4), Some(6), Some(2)) {
                    return Err(format!("inert p = {}: {:?}", r.p, r));
                }
            }
            ReductionType::Ordinary => {
                split += 1;
                if r.rank_stable != Some(4) || r.rank_base != Some(4) {
                    return Err(format!("split p = {}: {:?}", r.p, r));
                }
            }
            ReductionType::BadOrExcluded => {}
        }
    }
    check(
        inert > 4000 && split > 4000,
        format!(
            "{inert} inert primes with ranks (4, 6) at degree 2, {split} split primes with rank 4"
        ),
    )
}

fn survey_density() -> Outcome {
    let s = exe_survey(-4, 100_000).map_err(|e| e.to_string())?;
    let f = s.density.inert_fraction;
    check(
        (0.45..=0.55).contains(&f),
        format!(
            "inert fraction {f:.5} over {} good primes",
            s.density.good_primes
        ),
    )
}

fn noncm_curve() -> Outcome {
    let r = noncm_rank_check(&EllipticCurve::conductor_37(), 1000).map_err(|e| e.to_string())?;
    let bad: Vec<u64> = r
        .rows
        .iter()
        .filter(|x| x.good && x.rank_base != Some(4))
        .map(|x| x.p)
        .collect();
    check(
        r.all_rank_base_4 && bad.is_empty(),
        format!(
            "rank 4 over F_p at all {} good primes <= 1000; stable rank > 4 at {:?}",
            r.rows.iter().filter(|x| x.good).count(),
            r.exceptions
        ),
    )
}

fn tate_properties(suite: &[WeilPoly]) -> Outcome {
    let mut checks = 0u64;
    for (i, w) in suite.iter().enumerate() {
        let d = w.dimension();
        let fail = |what: &str| {
            Err(format!(
                "instance {i} ({}, q = {}): {what}",
                w.poly(),
                w.q()
            ))
        };
        for k in 0..=d {
            let st = stable_tate_dim(w, k).map_err(|e| e.to_string())?;
            let bound = degree_bound(d, k);
            if tate_dim_big(w, k, &bound).map_err(|e| e.to_string())? != st.stable_dim
                || !(&bound % st.min_stable_degree).is_zero()
            {
                return fail("does not stabilize by the degree bound");
            }
            let dims: Vec<u64> = (1..=60).map(|n| tate_dim(w, k, n).unwrap()).collect();
            for n in 1..=60usize {
                if dims[n - 1] > st.stable_dim {
                    return fail("dimension above the stable value");
                }
                for m in (2 * n..=60).step_by(n) {
                    checks += 1;
                    if dims[n - 1] > dims[m - 1] {
                        return fail("divisibility monotonicity");
                    }
                }
                checks += 1;
                if tate_dim(w, d - k, n as u64).unwrap() != dims[n - 1] {
                    return fail("duality");
                }
            }
            for n in 1..=4u32 {
                checks += 1;
                let wn = base_change(w, n).map_err(|e| e.to_string())?;
                if tate_dim(&wn, k, 1).unwrap() != dims[n as usize - 1] {
                    return fail("base change");
                }
            }
        }
    }
    Ok(format!("{} instances, {checks} relations", suite.len()))
}

fn oracle_equivalence(suite: &[WeilPoly]) -> Outcome {
    let mut compared = 0u64;
    let mut ambiguous = 0u64;
    let mut disagree = Vec::new();
    let families = gaussian_squares(2000);
    let degrees: Vec<u64> = (1..=12).collect();
    for w in suite.iter().chain(families.iter()) {
        for k in 0..=w.dimension() {
            for &n in &degrees {
                let exact = tate_dim(w, k, n).map_err(|e| e.to_string())?;
                match tate_dim_numeric(w, k, n, 200) {
                    Ok(v) => {
                        compared += 1;
                        if v != exact {
                            disagree.push(format!("{} k={k} n={n}: {exact} vs {v}", w.poly()));
                        }
                    }
                    Err(TateError::PrecisionInsufficient { .. }) => ambiguous += 1,
                    Err(e) => return Err(e.to_string()),
                }
            }
        }
    }
    check(
        disagree.is_empty() && ambiguous == 0,
        format!(
            "{compared} comparisons ({} random, {} E x E), {} disagreements, {ambiguous} ambiguous {}",
            suite.len(),
            families.len(),
            disagree.len(),
            disagree.first().cloned().unwrap_or_default()
        ),
    )
}

/// `B` and `C` rebuilt as products of powers in MPFR, then logged.
fn product_form_b(log_n_prime: &Float, f: &Float, e: u32, prec: u32) -> Float {
    let n_prime = Float::with_val(prec, log_n_prime.exp_ref());
    let inner = Float::with_val(prec, f + log_n_prime);
    let value = Float::with_val(prec, f.exp_ref()) * n_prime.pow(e) * inner.pow(e + 1);
    value.ln()
}

fn bounds_criterion() -> Outcome {
    let prec = 512;
    let q = FieldParams::<Real256>::rationals();
    let fq = f_of_k_report(&q);
    if fq.exact_value != Some(BigInt::from(1)) || !fq.log_value.is_zero() {
        return Err("f(Q) != 1".into());
    }

    let one = Float::with_val(prec, 1);
    // C: d = 1, N = 1, log d_F = log 4, c = c1 = 1; inner B has m = 2, d = 4.
    let log4 = Float::with_val(prec, 4).ln();
    let n_prime = Float::with_val(prec, 16 * 6) * &log4;
    let oracle_c = product_form_b(&n_prime.ln(), &one, 2 * 16, prec);
    let log_df = Real256::from_u64(4).ln();
    let c = bound_c(
        1,
        1,
        &log_df,
        &q,
        &Real256::from_u64(1),
        &Real256::from_u64(1),
    )
    .map_err(|e| e.to_string())?;
    let got_c = c.log_value.to_mpfr(prec);
    let rel_c = Float::with_val(prec, &got_c - &oracle_c).abs() / &oracle_c;

    // B: N = 2, m = d = 1.
    let oracle_b = product_form_b(&Float::with_val(prec, 2).ln(), &one, 1, prec);
    let b = bound_b(2, &q, 1, 1).map_err(|e| e.to_string())?;
    let got_b = b.log_value.to_mpfr(prec);
    let rel_b =
        Float::with_val(prec, got_b.exp_ref()) / Float::with_val(prec, oracle_b.exp_ref()) - 1u32;
    let rel_b = rel_b.abs();

    let tol = Float::with_val(prec, 1e-10);
    if rel_c > tol || rel_b > tol {
        return Err(format!(
            "log C rel err {}, B rel err {}",
            rel_c.to_f64(),
            rel_b.to_f64()
        ));
    }
    let grid = monotonicity_grid()?;
    Ok(format!(
        "f(Q) = 1; log C = {:.10} (rel err {:.1e}); B = {:.10} (rel err {:.1e}); {grid}",
        got_c.to_f64(),
        rel_c.to_f64(),
        got_b.exp().to_f64(),
        rel_b.to_f64()
    ))
}

fn monotonicity_grid() -> Result<String, String> {
    let one = Real256::from_u64(1);
    let ns = [1u64, 2, 3, 10, 37, 1000, 1 << 20];
    let ds = [1u64, 2, 3, 4];
    let logs = [0.01f64, 0.5, 1.3863, 5.0, 40.0];
    let fields: Vec<FieldParams<Real256>> =
        [(1u64, 0.0f64), (2, 1.0), (2, 3.0), (3, 5.0), (4, 9.0)]
            .iter()
            .map(|&(n, l)| FieldParams::new(n, Real256::from_f64(l), ExceptionalZero::No).unwrap())
            .collect();
    let mut checks = 0u64;
    let mut ordered = |a: &Real256, b: &Real256, what: &str| -> Result<(), String> {
        checks += 1;
        if a <= b {
            Ok(())
        } else {
            Err(format!("{what} not monotone"))
        }
    };
    for fp in &fields {
        for (i, &n) in ns.iter().enumerate() {
            for (j, &d) in ds.iter().enumerate() {
                let b = bound_b(n, fp, 1, d).unwrap().log_value;
                if let Some(&n2) = ns.get(i + 1) {
                    ordered(&b, &bound_b(n2, fp, 1, d).unwrap().log_value, "B in N")?;
                }
                if let Some(&d2) = ds.get(j + 1) {
                    ordered(&b, &bound_b(n, fp, 1, d2).unwrap().log_value, "B in d")?;
                }
                for (l, &ld) in logs.iter().enumerate() {
                    let c = |n, d, ld| {
                        bound_c(n, d, &Real256::from_f64(ld), fp, &one, &one)
                            .unwrap()
                            .log_value
                    };
                    let here = c(n, d, ld);
                    if let Some(&n2) = ns.get(i + 1) {
                        ordered(&here, &c(n2, d, ld), "C in N")?;
                    }
                    if let Some(&d2) = ds.get(j + 1) {
                        ordered(&here, &c(n, d2, ld), "C in d")?;
                    }
                    if let Some(&l2) = logs.get(l + 1) {
                        ordered(&here, &c(n, d, l2), "C in log d_F")?;
                    }
                }
            }
        }
        for (l, &ld) in logs.iter().enumerate() {
            for n in 2..6u64 {
                let v = |ld, n| {
                    least_nonsplit_bound(fp, &Real256::from_f64(ld), n, &one)
                        .unwrap()
                        .log_value
                };
                if let Some(&l2) = logs.get(l + 1) {
                    ordered(&v(ld, n), &v(l2, n), "least-nonsplit in log d_L")?;
                }
            }
        }
    }
    for nl in 1..30u64 {
        let h = |nl| hensel_log_disc::<Real256>(nl, &[2, 3, 5]).unwrap();
        ordered(&h(nl), &h(nl + 1), "hensel in n_L")?;
    }
    Ok(format!("monotonicity grid: {checks} pairs"))
}

fn least_nonsplit() -> Outcome {
    let base = FieldParams::<Real256>::rationals();
    let one = Real256::from_u64(1);
    let mut count = 0;
    let mut worst = (0i64, 0u64);
    for d in -10_000i64..=10_000 {
        if !is_fundamental_discriminant(d) {
            continue;
        }
        let s = least_nonsplit_search(d, &base, &one).map_err(|e| e.to_string())?;
        if !s.satisfied {
            return Err(format!("D = {d}: prime {} above the bound", s.found_prime));
        }
        count += 1;
        if s.found_prime > worst.1 {
            worst = (d, s.found_prime);
        }
    }
    let g = least_nonsplit_search(-4, &base, &one).map_err(|e| e.to_string())?;
    check(
        g.found_prime == 3 && g.bound.exact_value == Some(BigInt::from(87)),
        format!(
            "{count} discriminants within the bound (largest least inert prime {} at D = {}); D = -4: prime {}, bound {}",
            worst.1,
            worst.0,
            g.found_prime,
            g.bound.value_decimal(8).unwrap_or_default()
        ),
    )
}

fn prime_ideal_count() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for d in [-4i64, -3] {
        let c = pi_k_count(d, 100_000).map_err(|e| e.to_string())?;
        ok &= (0.9..=1.1).contains(&c.ratio);
        parts.push(format!(
            "D = {d}: {} / {:.2} = {:.5}",
            c.count, c.li_x, c.ratio
        ));
    }
    check(ok, parts.join("; "))
}

fn kernel() -> Outcome {
    let mut rng = common::rng(9);
    for _ in 0..100 {
        let deg = rng.gen_range(1..=8);
        let f = common::random_monic(&mut rng, deg, 30);
        if IntMatrix::companion(&f).unwrap().charpoly().unwrap() != f {
            return Err(format!("companion round trip fails for {f}"));
        }
    }
    for m in 1..=200u64 {
        let prod = tatelab::arith::divisors(m)
            .into_iter()
            .map(|d| cyclotomic(d).unwrap())
            .reduce(|a, b| &a * &b)
            .unwrap();
        let mut t = vec![0i64; m as usize + 1];
        t[0] = -1;
        t[m as usize] = 1;
        if prod != IntPoly::from_i64s(&t) {
            return Err(format!("cyclotomic product fails at m = {m}"));
        }
    }
    let mut compared = 0;
    for _ in 0..40 {
        let n = rng.gen_range(1..=6usize);
        let entries: Vec<BigInt> = (0..n * n)
            .map(|_| BigInt::from(rng.gen_range(-6i64..=6)))
            .collect();
        let m = IntMatrix::new(n, n, entries).unwrap();
        for r in 1..=n {
            let cp = m.compound(r).unwrap().charpoly().unwrap();
            let ok = with_precision!(200, R => {
                let eig = complex_roots::<R>(&m.charpoly().unwrap()).expect("roots");
                let expected = subset_products(&eig, r);
                let got: Vec<Complex<R>> = complex_roots::<R>(&cp).expect("roots");
                multisets_match(&got, &expected, &R::from_f64(2f64.powi(-100)))
            });
            compared += 1;
            if !ok {
                return Err(format!(
                    "compound eigenvalues differ for r = {r} on {n}x{n}"
                ));
            }
        }
    }
    Ok(format!(
        "100 companion round trips, cyclotomic products to 200, {compared} compound spectra at 200 bits"
    ))
}

fn cm_cross_check() -> Outcome {
    let mut n = 0;
    for (d, curve) in [
        (-4i64, EllipticCurve::gaussian_cm()),
        (-3, EllipticCurve::eisenstein_cm()),
    ] {
        for p in tatelab::cmlab::primes_in(5, 1000) {
            if kronecker(d, p).unwrap() != 1 {
                continue;
            }
            let cm = ap_cm(d, p).map_err(|e| e.to_string())?.abs_trace as i64;
            let pc = ap_pointcount(&curve, p)
                .map_err(|e| e.to_string())?
                .expect("good reduction");
            n += 1;
            if cm != pc.abs() {
                return Err(format!(
                    "D = {d}, p = {p}: Cornacchia {cm}, point count {pc}"
                ));
            }
        }
    }
    Ok(format!(
        "|a_p| agrees with point counts at {n} split primes"
    ))
}

fn main() -> ExitCode {
    let suite = weil_suite();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 gaussian survey ranks to 1e5", Box::new(survey_ranks)),
        ("2 gaussian inert density", Box::new(survey_density)),
        ("3 conductor-37 ranks to 1e3", Box::new(noncm_curve)),
        (
            "4 tate-dimension properties",
            Box::new(|| tate_properties(&suite)),
        ),
        (
            "5 exact vs numeric oracle",
            Box::new(|| oracle_equivalence(&suite)),
        ),
        (
            "6 bound values and monotonicity",
            Box::new(bounds_criterion),
        ),
        ("7 least inert primes |D| <= 1e4", Box::new(least_nonsplit)),
        ("8 prime ideals vs Li at 1e5", Box::new(prime_ideal_count)),
        ("9 exact kernel", Box::new(kernel)),
        ("cm traces vs point counts", Box::new(cm_cross_check)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{name}] {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{name}] {detail} ({secs:.1}s)");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
