//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Identities are exact, so the only tolerances are the time budgets below.
//! A criterion that fails only in the way pinned by its `diagnosis` is
//! reported as `FAIL (diagnosed)` and does not fail the binary; any other
//! failure does.

use std::time::{Duration, Instant};

use ihowe::bases::{Family, Half, Tuple};
use ihowe::braid::{deepest_truncation, RhoSpace};
use ihowe::cli::{run_batch, CheckReport, Options, Params, Status};
use ihowe::freemod::SparseVector;
use ihowe::kmatrix::RankOneModule;
use ihowe::RatScalar;
use serde_json::Value;

/// Exact arithmetic: identities must hold with zero defect.
const TOLERANCE: u32 = 0;
const BUDGET_RELATIONS: Duration = Duration::from_secs(10);
const BUDGET_COMMUTE: Duration = Duration::from_secs(120);
const BUDGET_HECKE: Duration = Duration::from_secs(300);
const BUDGET_BRAID_K: Duration = Duration::from_secs(300);

enum Verdict {
    Pass(String),
    /// Failed, but exactly as described.
    Diagnosed(String),
    Fail(String),
}

fn run(jobs: Vec<(&str, Params)>) -> Vec<CheckReport> {
    let jobs: Vec<(String, Params)> = jobs.into_iter().map(|(id, p)| (id.to_string(), p)).collect();
    run_batch(&jobs, &Options::default())
        .into_iter()
        .zip(&jobs)
        .map(|(r, (id, p))| r.unwrap_or_else(|e| panic!("{id} {p:?}: {e}")))
        .collect()
}

fn describe(r: &CheckReport) -> String {
    let w = r
        .witness
        .as_ref()
        .map(|w| format!(" at {}: {} vs {}", w.label, w.lhs, w.rhs))
        .unwrap_or_default();
    format!("{} {:?} {:?}{w} {}", r.check_id, r.params, r.status, r.message.clone().unwrap_or_default())
}

/// Pass if every report passed within the budget.
fn all_pass(reports: &[CheckReport], start: Instant, budget: Duration) -> Verdict {
    let checked: u64 = reports.iter().map(|r| r.checked).sum();
    let took = start.elapsed();
    if let Some(bad) = reports.iter().find(|r| !r.passed()) {
        return Verdict::Fail(describe(bad));
    }
    if took > budget {
        return Verdict::Fail(format!("took {took:?}, budget {budget:?}"));
    }
    Verdict::Pass(format!("{} reports, {checked} identities, {took:.1?}", reports.len()))
}

fn grid() -> Vec<(u32, u32, u32)> {
    let mut g = Vec::new();
    for m in 1..=2 {
        for n in 1..=2 {
            for d in 1..=2 {
                g.push((m, n, d));
            }
        }
    }
    g
}

fn q(e: i64) -> RatScalar {
    RatScalar::q_pow(e)
}

fn str_at<'a>(v: &'a Value, path: &[&str]) -> Option<&'a str> {
    path.iter().try_fold(v, |v, k| v.get(k))?.as_str()
}

// ---------------------------------------------------------------------------

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let mut jobs = Vec::new();
    for big_m in 2..=5 {
        for n in 1..=2 {
            jobs.push(("qgroup-relations", Params::new().big_m(big_m).n(n)));
        }
    }
    all_pass(&run(jobs), start, BUDGET_RELATIONS)
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let mut jobs = Vec::new();
    for f in [Family::I, Family::J] {
        for (m, n, d) in grid() {
            jobs.push(("commute", Params::new().family(f).m(m).n(n).d(d)));
        }
    }
    for (m, n, d) in grid() {
        jobs.push(("commute-glsl", Params::new().big_m(2 * m).n(n).d(d)));
        jobs.push(("t0-element", Params::new().family(Family::J).m(m).n(n).d(d)));
    }
    all_pass(&run(jobs), start, BUDGET_COMMUTE)
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    let mut jobs = Vec::new();
    for m in 1..=2 {
        for n in 1..=2 {
            jobs.push(("lambda-iso-i", Params::new().m(m).n(n)));
            jobs.push(("lambda-iso-j", Params::new().m(m).n(n)));
        }
    }
    all_pass(&run(jobs), start, Duration::MAX)
}

fn criterion_4() -> Verdict {
    let start = Instant::now();
    let jobs = grid().into_iter().map(|(m, n, d)| ("omega-diagram", Params::new().m(m).n(n).d(d))).collect();
    all_pass(&run(jobs), start, Duration::MAX)
}

fn rho_label(f: Family, m: u32, comps: &[i32]) -> ihowe::freemod::BasisLabel {
    let sp = RhoSpace::new(f, m, comps.len() as u32).unwrap();
    sp.label_of(&Tuple::new(f.ambient(m), comps.iter().map(|&c| Half(c)).collect()).unwrap()).unwrap()
}

fn criterion_5() -> Verdict {
    let start = Instant::now();
    let mut jobs = Vec::new();
    for f in [Family::I, Family::J] {
        for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3)] {
            for id in ["hecke-identify", "hecke-quadratic", "braid-relations"] {
                jobs.push((id, Params::new().family(f).m(m).n(n)));
            }
        }
    }
    let reports = run(jobs);
    // (-q T_0) v_{1/2} = v_{-1/2} for i, m = n = 1.
    let sp = RhoSpace::new(Family::I, 1, 1).unwrap();
    let (vp, vm) = (rho_label(Family::I, 1, &[1]), rho_label(Family::I, 1, &[-1]));
    let got = sp.braid_t(0).unwrap().apply_label(&vp).unwrap().scale(&-q(1));
    if got != SparseVector::basis(vm) {
        return Verdict::Fail(format!("(-q T0) v_(1/2) = {got}"));
    }
    // v T_1 = -q^-2 v for v = Lambda(v_(1/2, 1/2)), m = 1, n = 2, where sigma_1 fixes v up to q^-1.
    let sp = RhoSpace::new(Family::I, 1, 2).unwrap();
    let v = rho_label(Family::I, 1, &[1, 1]);
    let got = sp.braid_t(1).unwrap().apply_label(&v).unwrap();
    if got != SparseVector::term(v, -q(-2)) {
        return Verdict::Fail(format!("v T1 = {got}"));
    }
    let quad = reports
        .iter()
        .find(|r| r.check_id == "hecke-quadratic" && r.params.get("m") == Some(&2.into()) && r.params.get("n") == Some(&2.into()));
    if quad.map(|r| r.checked) != Some(32) {
        return Verdict::Fail("hecke-quadratic at i, m = n = 2 should check 2 x 16 identities".into());
    }
    all_pass(&reports, start, BUDGET_HECKE)
}

/// `f^lambda` by removing corners, independent of the hook length formula.
fn tableaux(lambda: &mut Vec<u32>) -> u128 {
    if lambda.iter().all(|&x| x == 0) {
        return 1;
    }
    let mut total = 0;
    for r in 0..lambda.len() {
        let corner = lambda[r] > 0 && lambda.get(r + 1).is_none_or(|&next| next < lambda[r]);
        if corner {
            lambda[r] -= 1;
            total += tableaux(lambda);
            lambda[r] += 1;
        }
    }
    total
}

fn partitions_into(n: u32, rows: usize) -> Vec<Vec<u32>> {
    if rows == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    fn rec(n: u32, max: u32, rows: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == rows {
            if n == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for p in (0..=max.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, rows, cur, out);
            cur.pop();
        }
    }
    rec(n, n, rows, &mut Vec::new(), &mut out);
    out
}

/// Dimension of the type B Hecke image on `V^{(x) n}`, `dim V = 2m`:
/// the sum of `dim^2` over the bipartitions with at most `m` rows each.
fn image_dimension(m: usize, n: u32) -> u128 {
    let mut total = 0;
    for k in 0..=n {
        let choose = (0..k as u128).fold(1u128, |a, i| a * (n as u128 - i) / (i + 1));
        for mut l in partitions_into(k, m) {
            for mut u in partitions_into(n - k, m) {
                let dim = choose * tableaux(&mut l) * tableaux(&mut u);
                total += dim * dim;
            }
        }
    }
    total
}

fn criterion_6() -> Verdict {
    let start = Instant::now();
    let reports = run(vec![
        ("commutant", Params::new().family(Family::I).m(2).n(2)),
        ("commutant", Params::new().family(Family::I).m(2).n(3)),
    ]);
    let evals = |r: &CheckReport| -> Vec<(String, u64, u64)> {
        r.details["evaluations"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| (e["q"].as_str().unwrap().to_string(), e["commutant"].as_u64().unwrap(), e["hecke_span"].as_u64().unwrap()))
            .collect()
    };
    let (e2, e3) = (evals(&reports[0]), evals(&reports[1]));
    let summary = format!("n = 2: {e2:?}; n = 3: {e3:?}; {:.1?}", start.elapsed());
    let n2_ok = e2 == vec![("generic".to_string(), 8, 8)];
    let n3_claim = e3.len() == 2 && e3.iter().all(|e| e.1 == 48 && e.2 == 48);
    if n2_ok && n3_claim {
        return Verdict::Pass(summary);
    }
    // Both points agree, the Hecke image spans the commutant, and the
    // common value is the image dimension, 48 - 2 for m = 2 < n = 3.
    let oracle = image_dimension(2, 3) as u64;
    let diagnosed = n2_ok
        && image_dimension(2, 2) == 8
        && e3.len() == 2
        && e3.iter().all(|e| e.1 == oracle && e.2 == oracle)
        && oracle == 46
        && reports.iter().all(|r| r.passed());
    if diagnosed {
        Verdict::Diagnosed(format!(
            "{summary}; claimed 48 = 2^3 3!, measured {oracle}: the sign bipartitions (111|) and (|111) need 3 rows but dim V = 4, so H_B(3) is not faithful"
        ))
    } else {
        Verdict::Fail(summary)
    }
}

fn criterion_7() -> Verdict {
    let start = Instant::now();
    let mut jobs = Vec::new();
    for d in 0..=6 {
        jobs.push(("rank-one", Params::new().d(d).big_m(2)));
        if d <= 4 {
            jobs.push(("rank-one", Params::new().d(d).big_m(4)));
        }
    }
    for f in [Family::I, Family::J] {
        for m in 1..=2 {
            jobs.push(("rank-one-matrices", Params::new().family(f).m(m)));
        }
    }
    let reports = run(jobs);
    let took = start.elapsed();
    // d = 1: L(1) is a block with the B_0 matrix [[q, 1], [1, q^-1]], so the
    // T_0 block matrix gives v_0 T_0 = -q^-1 v_1.
    let l1 = RankOneModule::new(1);
    let from_block = SparseVector::term(l1.label(1), -q(-1));
    let block_agrees = l1.t0_on_v0().unwrap() == from_block;

    let mut exponents = Vec::new();
    let mut other_failure = None;
    for r in &reports {
        if r.passed() {
            continue;
        }
        let only_v0_t0 = r.check_id == "rank-one"
            && r.details["parts"].as_object().unwrap().iter().all(|(k, v)| v["failed"] == 0 || k == "v0 T0");
        let d = r.params["d"].as_i64().unwrap();
        let measured = r.details["v0_t0_exponent"]["measured"].as_i64();
        if only_v0_t0 && measured == Some(-((d + 1) / 2)) {
            exponents.push((d, measured.unwrap()));
        } else {
            other_failure.get_or_insert_with(|| describe(r));
        }
    }
    if let Some(f) = other_failure {
        return Verdict::Fail(f);
    }
    let checked: u64 = reports.iter().map(|r| r.checked).sum();
    if exponents.is_empty() {
        return Verdict::Pass(format!("{checked} identities, {took:.1?}"));
    }
    exponents.sort();
    exponents.dedup();
    if block_agrees {
        Verdict::Diagnosed(format!(
            "{checked} identities, {took:.1?}; all matrices and embeddings hold; v0 T0 = (-q)^e v_d with e = -floor((d+1)/2), not +floor((d+1)/2): {exponents:?}; at d = 1 the T0 block matrix itself gives -q^-1 v_1"
        ))
    } else {
        Verdict::Fail("v0 T0 disagrees with both the claim and the block matrix".into())
    }
}

fn criterion_8() -> Verdict {
    let start = Instant::now();
    let mut jobs = Vec::new();
    for big_m in [2, 4] {
        for d in 0..=4 {
            jobs.push(("braidK", Params::new().big_m(big_m).d(d)));
        }
    }
    let reports = run(jobs);
    let took = start.elapsed();
    if took > BUDGET_BRAID_K {
        return Verdict::Fail(format!("took {took:?}"));
    }
    if reports.iter().all(|r| r.passed()) {
        return Verdict::Pass(format!("{} instances, {took:.1?}", reports.len()));
    }
    // Pinned diagnosis: everything but the displayed weight factor holds, and
    // with the factor corrected by (-q)^height the K-matrix commutes with
    // U^i_m and equals (-q)^{floor((d+1)/2)} T_0 for both M.
    let mut seen = Vec::new();
    for r in &reports {
        let d = r.params["d"].as_i64().unwrap();
        let parts = r.details["parts"].as_object().unwrap();
        let only = parts
            .iter()
            .all(|(k, v)| v["failed"] == 0 || k == "K commutes with U^i_m" || k == "K = c T0");
        let conv = r.details["conventions"].as_array().unwrap();
        let corrected = conv.iter().find(|c| c["convention"] == "sign-corrected").unwrap();
        let want = RatScalar::neg_q_pow((d + 1) / 2).to_string();
        let ok = only
            && corrected["commutes"] == true
            && str_at(corrected, &["scalar"]) == Some(want.as_str())
            && parts.get("K lowest vector").is_some_and(|p| p["failed"] == 0)
            && parts.get("Upsilon unique").is_none_or(|p| p["failed"] == 0);
        if !ok {
            return Verdict::Fail(describe(r));
        }
        if !r.passed() {
            seen.push(format!("M={} d={d}", r.params["M"]));
        }
    }
    Verdict::Diagnosed(format!(
        "{took:.1?}; as displayed K fails to commute with U^i_m for {}; nullity 0 and K(lowest) = (-q)^(-d(M-1)) highest hold everywhere; with g multiplied by (-q)^height K commutes and K = (-q)^floor((d+1)/2) T0 for all M, d",
        seen.join(", ")
    ))
}

fn criterion_9() -> Verdict {
    let start = Instant::now();
    let mut jobs = vec![("truncation", Params::new())];
    for f in [Family::I, Family::J] {
        for (m, n, d) in grid() {
            jobs.push(("integrability", Params::new().family(f).m(m).n(n).d(d)));
        }
    }
    let reports = run(jobs);
    if let Some(bad) = reports.iter().find(|r| r.status == Status::Error || !r.passed()) {
        return Verdict::Fail(describe(bad));
    }
    let cap_min = reports[0].details["instances"].as_array().unwrap().iter().filter_map(|i| i["cap"].as_u64()).min();
    Verdict::Pass(format!("deepest series index {}, smallest cap {cap_min:?}, {:.1?}", deepest_truncation(), start.elapsed()))
}

fn criterion_10() -> Verdict {
    let mut jobs = Vec::new();
    for s in 1..=4 {
        for m in 1..=2 {
            jobs.push(("unequal-parameter", Params::new().s(s).m(m)));
        }
    }
    let reports = run(jobs);
    if let Some(bad) = reports.iter().find(|r| !r.passed()) {
        return Verdict::Fail(describe(bad));
    }
    let names: Vec<&str> = reports.iter().filter_map(|r| str_at(&r.details, &["convention"])).collect();
    if names.len() != reports.len() || names.iter().any(|n| *n != names[0]) {
        return Verdict::Fail(format!("conventions {names:?}"));
    }
    let series: Vec<String> = reports
        .iter()
        .step_by(2)
        .map(|r| format!("s={} {}", r.params["s"], str_at(&r.details, &["series"]).unwrap_or("?")))
        .collect();
    Verdict::Pass(format!("convention {} for every block and s; {}", names[0], series.join(", ")))
}

fn main() {
    assert_eq!(TOLERANCE, 0);
    let criteria: [(u32, fn() -> Verdict); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let (mut pass, mut diagnosed, mut fail) = (0, 0, 0);
    for (k, f) in criteria {
        match f() {
            Verdict::Pass(s) => {
                pass += 1;
                println!("criterion {k}: PASS {s}");
            }
            Verdict::Diagnosed(s) => {
                diagnosed += 1;
                println!("criterion {k}: FAIL (diagnosed) {s}");
            }
            Verdict::Fail(s) => {
                fail += 1;
                println!("criterion {k}: FAIL {s}");
            }
        }
    }
    println!("acceptance: {pass} pass, {diagnosed} fail as diagnosed, {fail} fail unexpectedly");
    if fail > 0 {
        std::process::exit(1);
    }
}
