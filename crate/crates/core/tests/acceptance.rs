//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the output; exits non-zero if any
//! criterion fails.

use std::cmp::Ordering;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::ToPrimitive;

use logbehave::exact::{
    a_mu, bell, bernoulli_abs_even, lasalle_a, rayleigh_sigma, window, zeta_even_rational, Sequence,
};
use logbehave::logcheck::{
    check_first_zero_bound, check_gamma_bound, check_log_convex_exact, check_nth_root_increasing_exact, random_pairs,
    root_less, scan_conjectures, scan_monotone, verify_a_mu_suite, verify_holder, PropertyReport, Range, RealGrid,
};
use logbehave::real::{bell_real, bessel_zero, bessel_zeta_real, riemann_zeta_real, Function, PrecisionContext, Real};

const ZETA_EVEN_REL: f64 = 1e-12;
const RAYLEIGH_REL: f64 = 1e-10;
const J01: f64 = 2.404825557695773;
const J01_ABS: f64 = 1e-10;
const BELL_REL: f64 = 1e-12;
const MAX_INCONCLUSIVE_FRACTION: f64 = 0.01;
const HOLDER_SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;
type Criterion = (&'static str, f64, Box<dyn Fn() -> Outcome>);

fn ctx() -> PrecisionContext {
    PrecisionContext::new(160, 1e-24, 100_000).expect("valid context")
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn holds(r: &PropertyReport) -> Result<(), String> {
    if r.holds() {
        Ok(())
    } else {
        Err(r.summary())
    }
}

fn c1() -> Outcome {
    for n in 1..=60 {
        let rayleigh = a_mu(&q(1, 1), n).map_err(|e| e.to_string())?;
        if rayleigh != lasalle_a(n) {
            return Err(format!("a_{n}(1) = {rayleigh} but lasalle_a({n}) = {}", lasalle_a(n)));
        }
    }
    Ok("a_n(1) = lasalle_a(n) exactly for n = 1..60".into())
}

fn c2() -> Outcome {
    let w = window(Sequence::BernoulliAbsEvenOverFactorial, 1, 200, None).map_err(|e| e.to_string())?;
    let r = check_log_convex_exact(&w).map_err(|e| e.to_string())?;
    holds(&r)?;
    Ok(format!("{} strict triples, 0 failures", r.strict))
}

fn c3() -> Outcome {
    let (b2, b4, b6) = (bernoulli_abs_even(1), bernoulli_abs_even(2), bernoulli_abs_even(3));
    if root_less(&b2, 1, &b4) != Ordering::Less || root_less(&b4, 2, &b6) != Ordering::Less {
        return Err("|B_2| < |B_4|^(1/2) < |B_6|^(1/3) fails".into());
    }
    let w = window(Sequence::BernoulliAbsEven, 1, 101, None).map_err(|e| e.to_string())?;
    let r = check_nth_root_increasing_exact(&w).map_err(|e| e.to_string())?;
    holds(&r)?;
    if r.range != (Range::Index { start: 1, end: 100 }) {
        return Err(format!("unexpected range {}", r.range));
    }
    Ok(format!("hand case and {} exact pairs n = 1..100", r.strict))
}

fn c4() -> Outcome {
    let mut parts = Vec::new();
    for (mu, n) in [(q(1, 1), 108), (q(0, 1), 48)] {
        let reports = verify_a_mu_suite(&mu, n).map_err(|e| e.to_string())?;
        let root = &reports[1];
        holds(root)?;
        if root.range != (Range::Index { start: 2, end: n }) || root.checked != n - 1 {
            return Err(format!("root check covers {} ({} pairs)", root.range, root.checked));
        }
        if let Some(r) = reports.iter().find(|r| r.is_regression()) {
            return Err(r.summary());
        }
        let d = &reports[2].notes;
        parts.push(format!(
            "mu={mu}: 2..{n} strict, first monotone index {} (stated {})",
            d["first_monotone_index"], d["stated_threshold"]
        ));
    }
    Ok(parts.join("; "))
}

fn c5() -> Outcome {
    for mu in [q(0, 1), q(1, 2), q(1, 1), q(3, 1)] {
        let w = window(Sequence::AMu, 1, 80, Some(&mu)).map_err(|e| e.to_string())?;
        holds(&check_log_convex_exact(&w).map_err(|e| e.to_string())?)?;
    }
    Ok("mu in {0, 1/2, 1, 3}, n = 1..80".into())
}

fn c6(ctx: &PrecisionContext) -> Outcome {
    let mut worst_zeta: f64 = 0.0;
    for n in 1..=10 {
        // π^{2n} in f64 carries about 2n ulps, far below the threshold
        let expected = std::f64::consts::PI.powi(2 * n as i32) * zeta_even_rational(n).to_f64().unwrap();
        let got = riemann_zeta_real(2.0 * n as f64, ctx)
            .map_err(|e| e.to_string())?
            .to_f64();
        let rel = ((got - expected) / expected).abs();
        worst_zeta = worst_zeta.max(rel);
        if rel > ZETA_EVEN_REL {
            return Err(format!("zeta({}) relative error {rel:e}", 2 * n));
        }
    }
    let mut worst_bz: f64 = 0.0;
    for mu in [0i64, 1] {
        for n in 1..=8 {
            let exact = Real::from_rational(&rayleigh_sigma(&q(mu, 1), n).unwrap(), 256);
            let got = bessel_zeta_real(mu as f64, 2.0 * n as f64, ctx).map_err(|e| e.to_string())?;
            let rel = got.rel_diff(&exact);
            worst_bz = worst_bz.max(rel);
            if rel > RAYLEIGH_REL {
                return Err(format!("zeta_{mu}({}) relative error {rel:e}", 2 * n));
            }
        }
    }
    Ok(format!("max rel err zeta {worst_zeta:.1e}, bessel zeta {worst_bz:.1e}"))
}

/// `J_0` from its power series in `f64`, adequate on `[2, 3]`.
fn j0_f64(x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..40 {
        term *= -(x * x) / (4.0 * (k * k) as f64);
        sum += term;
    }
    sum
}

fn bisect_j0() -> f64 {
    let (mut lo, mut hi) = (2.0, 3.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if (j0_f64(mid) > 0.0) == (j0_f64(lo) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn c7(ctx: &PrecisionContext) -> Outcome {
    let r = check_first_zero_bound(&[-0.5, 0.0, 0.5, 1.0, 2.0, 5.0], ctx).map_err(|e| e.to_string())?;
    holds(&r)?;
    let oracle = bisect_j0();
    let j = bessel_zero(0.0, 1, ctx).map_err(|e| e.to_string())?.to_f64();
    let (e_oracle, e_lit) = ((j - oracle).abs(), (j - J01).abs());
    if e_oracle > J01_ABS || e_lit > J01_ABS {
        return Err(format!("j_(0,1) = {j}, bisection {oracle}, reference {J01}"));
    }
    Ok(format!(
        "{} bound checks; j_(0,1) = {j:.15}, |j - bisection| = {e_oracle:.1e}",
        r.checked
    ))
}

fn c8(ctx: &PrecisionContext) -> Outcome {
    let w = window(Sequence::Bell, 1, 201, None).map_err(|e| e.to_string())?;
    holds(&check_nth_root_increasing_exact(&w).map_err(|e| e.to_string())?)?;
    let mut worst: f64 = 0.0;
    for n in 1..=30 {
        let exact = Real::from_rational(&bell(n), 256);
        let rel = bell_real(n as f64, ctx).map_err(|e| e.to_string())?.rel_diff(&exact);
        worst = worst.max(rel);
        if rel > BELL_REL {
            return Err(format!("bell_real({n}) relative error {rel:e}"));
        }
    }
    let pairs = random_pairs(100, 50.0, HOLDER_SEED);
    let r = verify_holder(&pairs, ctx).map_err(|e| e.to_string())?;
    holds(&r)?;
    Ok(format!(
        "roots n = 1..200; bell_real max rel err {worst:.1e}; {} random pairs",
        r.strict
    ))
}

fn c9(ctx: &PrecisionContext) -> Outcome {
    let scans = [
        (Function::Theta, RealGrid::new(6.0, 100.0, 0.5)),
        (Function::ThetaMu(1.0), RealGrid::new(245.0, 400.0, 1.0)),
        (Function::BellRoot, RealGrid::new(1.0, 30.0, 0.25)),
    ];
    let mut parts = Vec::new();
    for (f, grid) in scans {
        let grid = grid.map_err(|e| e.to_string())?;
        let r = scan_monotone(&f, &grid, ctx).map_err(|e| e.to_string())?;
        holds(&r)?;
        let fraction = r.inconclusive as f64 / r.checked as f64;
        if fraction > MAX_INCONCLUSIVE_FRACTION {
            return Err(format!("{}: {} of {} pairs inconclusive", f, r.inconclusive, r.checked));
        }
        parts.push(format!("{f} {}/{} strict", r.strict, r.checked));
    }
    Ok(parts.join(", "))
}

fn c10(ctx: &PrecisionContext) -> Outcome {
    let theta = RealGrid::new(6.0, 60.0, 1.0).map_err(|e| e.to_string())?;
    let bell = RealGrid::new(1.0, 30.0, 1.0).map_err(|e| e.to_string())?;
    let reports = scan_conjectures(&theta, &bell, 1e-2, ctx).map_err(|e| e.to_string())?;
    let mut parts = Vec::new();
    for r in &reports {
        if r.gating || r.is_regression() {
            return Err(format!("{} gates the build", r.subject));
        }
        let samples = r.notes["samples"].as_array().ok_or("missing samples")?;
        let negative = samples.iter().filter(|s| s["sign"] == -1).count();
        parts.push(format!("{}: {negative}/{} negative", r.subject, samples.len()));
    }
    Ok(parts.join(", "))
}

fn c11(ctx: &PrecisionContext) -> Outcome {
    let reports = check_gamma_bound(&[0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 170.0], ctx).map_err(|e| e.to_string())?;
    holds(&reports[0])?;
    Ok(format!(
        "{} points, bound {}",
        reports[0].checked, reports[0].notes["bound"]
    ))
}

fn main() -> ExitCode {
    let ctx = ctx();
    let criteria: Vec<Criterion> = vec![
        ("1 dual-route a_n(1) identity", 2.0, Box::new(c1)),
        ("2 |B_2n|/(2n)! log-convex", 5.0, Box::new(c2)),
        ("3 |B_2n|^(1/n) increasing", 30.0, Box::new(c3)),
        ("4 a_n(mu)^(1/n) verified ranges", 60.0, Box::new(c4)),
        ("5 a_n(mu) log-convex", 10.0, Box::new(c5)),
        ("6 even-argument consistency", 30.0, Box::new(move || c6(&ctx))),
        ("7 first-zero bounds", 10.0, Box::new(move || c7(&ctx))),
        (
            "8 Bell roots, bell_real, Holder pairs",
            60.0,
            Box::new(move || c8(&ctx)),
        ),
        ("9 monotone scans", 120.0, Box::new(move || c9(&ctx))),
        ("10 conjecture evidence", f64::INFINITY, Box::new(move || c10(&ctx))),
        ("11 gamma lower bound", 1.0, Box::new(move || c11(&ctx))),
    ];
    let mut failed = 0;
    for (name, budget, check) in &criteria {
        let start = Instant::now();
        let outcome = check();
        let t = start.elapsed();
        let slow = if t > Duration::from_secs_f64(budget.min(1e6)) {
            " [over budget]"
        } else {
            ""
        };
        let timing = if budget.is_finite() {
            format!("{:.2}s, budget {budget}s{slow}", t.as_secs_f64())
        } else {
            format!("{:.2}s", t.as_secs_f64())
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} ({timing})"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why} ({timing})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
