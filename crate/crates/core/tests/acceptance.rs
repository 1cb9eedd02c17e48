//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::time::{Duration, Instant};

use knotq::curves::{
    enumerate_realizations, realize, verify_lemma_bounds, OpenGaussCode, PlanarCurveMap,
};
use knotq::diagrams::{q_at_minus_one, q_polynomial, signature, LinkDiagram, DEFAULT_NODE_BUDGET};
use knotq::laurent::LaurentPoly;
use knotq::maximality::{kidwell_check, scan, signature_test, unknotting_test, Outcome, TestId};
use knotq::oracles::{checkerboard_signature, distance_exhaustive, perturb, q_naive, OracleReport};
use knotq::tables::{parse_table, KnotRecord, FIXTURE_TABLE};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = fn() -> Check;

fn fixtures() -> Vec<(KnotRecord, LinkDiagram)> {
    parse_table(FIXTURE_TABLE)
        .expect("bundled table loads")
        .into_iter()
        .map(|r| {
            let d = r.diagram().expect("validated by the loader");
            (r, d)
        })
        .collect()
}

fn q(d: &LinkDiagram) -> LaurentPoly {
    q_polynomial(d).expect("within budget").poly
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    ensure(
        t.elapsed() < limit,
        format!("took {:?}, limit {limit:?}", t.elapsed()),
    )
}

fn perko_maxdeg() -> Check {
    let t = Instant::now();
    let (_, d) = fixtures()
        .into_iter()
        .find(|(r, _)| r.name == "10_161")
        .ok_or("no 10_161 fixture")?;
    let qm = q(&d).max_degree();
    ensure(qm == Some(6), format!("maxdeg Q = {qm:?}"))?;
    within(t, Duration::from_secs(60))?;
    Ok(format!("maxdeg Q(10_161) = 6 in {:?}", t.elapsed()))
}

fn perko_verdict() -> Check {
    let records: Vec<KnotRecord> = fixtures().into_iter().map(|(r, _)| r).collect();
    let report = scan(&records, DEFAULT_NODE_BUDGET);
    ensure(
        report.errors.is_empty(),
        format!("scan errors: {:?}", report.errors),
    )?;
    let v = report
        .verdicts
        .iter()
        .find(|v| v.knot == "10_161")
        .ok_or("10_161 missing")?;
    let fired: Vec<_> = v.fired().collect();
    let want = Outcome::NonQMaximal {
        inequality: "10 > 6 + max(3,3)".into(),
    };
    ensure(
        fired.len() == 1 && fired[0].test == TestId::CrossingBound && fired[0].outcome == want,
        format!("fired: {fired:?}"),
    )?;
    ensure(
        !unknotting_test(3, 6).fired(),
        "unknotting test fired for u=3, qmax=6",
    )?;
    let others: Vec<_> = report
        .verdicts
        .iter()
        .filter(|v| v.non_q_maximal() && v.knot != "10_161")
        .collect();
    ensure(others.is_empty(), format!("unexpected flags: {others:?}"))?;
    Ok(v.report_line())
}

fn alternating_equality() -> Check {
    let t = Instant::now();
    let mut n = 0;
    for (r, d) in fixtures() {
        if r.prime != Some(true) || !d.gauss_sequence().is_alternating() || r.crossing_number > 8 {
            continue;
        }
        let m = q(&d).max_degree().unwrap_or(0);
        ensure(
            m == r.crossing_number as i64 - 1,
            format!("{}: maxdeg {m}, c {}", r.name, r.crossing_number),
        )?;
        n += 1;
    }
    ensure(n >= 10, format!("only {n} alternating fixtures"))?;
    within(t, Duration::from_secs(300))?;
    Ok(format!("{n} prime alternating knots have maxdeg Q = c - 1"))
}

fn kidwell() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut n = 0;
    for (r, d) in fixtures() {
        let mut variants = vec![d.clone()];
        for k in 0..20 {
            variants.push(perturb(&d, 1 + k % 3, &mut rng));
        }
        for v in &variants {
            let k = kidwell_check(v, &q(v));
            ensure(k.holds, format!("{}: {} > {} on {v}", r.name, k.lhs, k.rhs))?;
            n += 1;
        }
    }
    Ok(format!("maxdeg Q <= c(D) - d(D) on {n} diagrams"))
}

fn minus_one_powers() -> Check {
    let mut n = 0;
    for (r, d) in fixtures() {
        q_at_minus_one(&q(&d)).map_err(|e| format!("{}: {e}", r.name))?;
        n += 1;
    }
    let m0 = q_at_minus_one(&q(&LinkDiagram::unknot()))
        .map_err(|e| e.to_string())?
        .exponent;
    let m1 = q_at_minus_one(&q(&LinkDiagram::unlink(2)))
        .map_err(|e| e.to_string())?
        .exponent;
    ensure(
        (m0, m1) == (0, 1),
        format!("unknot m={m0}, 2-unlink m={m1}"),
    )?;
    Ok(format!(
        "{n} fixtures give Q(-1) = (-3)^m; unknot m=0, 2-unlink m=1"
    ))
}

fn region_count() -> Check {
    let mut n = 0;
    for c in 0..=6 {
        for m in enumerate_realizations(c, 6).map_err(|e| e.to_string())? {
            let regions = m.regions().len();
            ensure(
                regions == c + 1,
                format!("[{}] has {regions} regions", m.code()),
            )?;
            n += 1;
        }
    }
    Ok(format!(
        "{n} realizations with c <= 6 all have c + 1 regions"
    ))
}

fn lemma_suite() -> Check {
    let t = Instant::now();
    let report = verify_lemma_bounds(6, 6).map_err(|e| e.to_string())?;
    ensure(
        report.violations.is_empty(),
        format!("{} violations", report.violations.len()),
    )?;
    within(t, Duration::from_secs(600))?;
    let maxes: Vec<String> = report.levels.iter().map(|l| l.max_d.to_string()).collect();
    Ok(format!(
        "no violations for c <= 6; max d per c: {}",
        maxes.join(",")
    ))
}

fn chain_lower_bound() -> Check {
    let unit = realize(&OpenGaussCode::new(&[1, 2, 1, 2]).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let mut chain = unit.clone();
    for m in 1..=5 {
        ensure(
            chain.crossing_count() == 2 * m && chain.distance() == m,
            format!("m={m}: c={} d={}", chain.crossing_count(), chain.distance()),
        )?;
        chain = PlanarCurveMap::connected_sum(&chain, &unit, false, false)
            .map_err(|e| e.to_string())?;
    }
    Ok("chains of 1..5 copies of [1 2 1 2] have d = m, c = 2m".into())
}

fn additivity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let pool: Vec<PlanarCurveMap> = (1..=4)
        .flat_map(|c| enumerate_realizations(c, 6).expect("under cap"))
        .collect();
    let mut done = 0;
    let mut tries = 0;
    while done < 200 {
        tries += 1;
        ensure(tries < 100_000, "too few composable pairs")?;
        let a = &pool[rng.gen_range(0..pool.len())];
        let b = &pool[rng.gen_range(0..pool.len())];
        let Ok(s) = PlanarCurveMap::connected_sum(a, b, rng.gen(), rng.gen()) else {
            continue;
        };
        ensure(
            s.crossing_count() == a.crossing_count() + b.crossing_count()
                && s.distance() == a.distance() + b.distance(),
            format!(
                "[{}] # [{}] = [{}], d {} vs {} + {}",
                a.code(),
                b.code(),
                s.code(),
                s.distance(),
                a.distance(),
                b.distance()
            ),
        )?;
        done += 1;
    }
    Ok(format!(
        "{done} connected sums additive in c and d ({tries} draws)"
    ))
}

fn oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut report = OracleReport::default();
    for (_, d) in fixtures() {
        if d.crossing_count() <= 7 {
            report.check(&d, q(&d), q_naive(&d, &mut rng));
        }
        if d.crossing_count() <= 8 {
            report.check(&d, signature(&d).expect("knot"), checkerboard_signature(&d));
        }
    }
    for c in 0..=5 {
        for m in enumerate_realizations(c, 6).map_err(|e| e.to_string())? {
            report.check(
                format!("[{}] {:?}", m.code(), m.flips()),
                m.distance(),
                distance_exhaustive(&m),
            );
        }
    }
    ensure(
        report.passed(),
        format!("mismatches: {:?}", report.mismatches),
    )?;
    Ok(format!(
        "{} oracle comparisons, no mismatches",
        report.cases
    ))
}

fn invariance() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut n = 0;
    for (r, d) in fixtures() {
        let want = q(&d).to_string();
        for k in 0..20 {
            let v = perturb(&d, 1 + k % 4, &mut rng);
            let got = q(&v).to_string();
            ensure(got == want, format!("{}: {got} vs {want} on {v}", r.name))?;
            n += 1;
        }
    }
    Ok(format!("{n} perturbed variants keep their Q"))
}

fn signature_arithmetic() -> Check {
    ensure(signature_test(8, 7).fired(), "sigma=8, qmax=7 did not fire")?;
    let (_, t) = fixtures()
        .into_iter()
        .find(|(r, _)| r.name == "3_1")
        .ok_or("no trefoil")?;
    let s = signature(&t).map_err(|e| e.to_string())?;
    let qm = q(&t).max_degree().unwrap_or(0);
    ensure(
        (s.abs(), qm) == (2, 2),
        format!("trefoil sigma={s} qmax={qm}"),
    )?;
    ensure(!signature_test(s, qm).fired(), "trefoil fired")?;
    Ok("fires for sigma=8, qmax=7; silent for the trefoil (|sigma|=2, qmax=2)".into())
}

fn main() {
    let criteria: [(&str, Criterion); 12] = [
        ("perko maxdeg", perko_maxdeg),
        ("perko verdict", perko_verdict),
        ("alternating equality", alternating_equality),
        ("kidwell inequality", kidwell),
        ("Q(-1) powers of -3", minus_one_powers),
        ("region count", region_count),
        ("lemma suite", lemma_suite),
        ("chain lower bound", chain_lower_bound),
        ("additivity", additivity),
        ("oracle equivalence", oracle_equivalence),
        ("invariance", invariance),
        ("signature arithmetic", signature_arithmetic),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match f() {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} ({:.2?})", k + 1, t.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
