//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Reference values are recomputed here from scratch (Pascal's triangle,
//! generating-function DP over weights, power sums) rather than read back from
//! the library.

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use chernsub::chern::{c1, c2, c2_from_character, c2_product_rule, chern_character, total_chern};
use chernsub::parallel::Execution;
use chernsub::repring::oracle::phi1_star_lambda_bruteforce_with;
use chernsub::repring::{laurent_mul, phi1_star_lambda, ExponentSeq, LaurentElement};
use chernsub::verifier::{
    certify_dim_divisibility, certify_pk_c2_divisibility, sweep_with, SweepSummary,
    VerificationReport, DEFAULT_SWEEP_LIMIT,
};
use chernsub::{Integer, Prime};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_chernsub"));
    cmd.env_remove("CHERNSUB_ORACLE_CAP");
    cmd
}

fn run(args: &[&str]) -> (Output, Duration) {
    let start = Instant::now();
    let out = bin().args(args).output().expect("binary runs");
    (out, start.elapsed())
}

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

fn pascal(n: usize) -> Vec<Vec<i128>> {
    let mut rows: Vec<Vec<i128>> = vec![vec![1]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![1i128; i + 1];
        for k in 1..i {
            row[k] = prev[k - 1] + prev[k];
        }
        rows.push(row);
    }
    rows
}

/// Weight tallies of all `ℓ`-subsets of `(1, −1, 0, …, 0)`, for every `ℓ`,
/// via the generating function `∏ (1 + x·z^w)`.
fn subset_weight_dp(p: u64) -> Vec<BTreeMap<i64, i128>> {
    let n = (p * p) as usize;
    let mut weights = vec![0i64; n];
    weights[0] = 1;
    weights[1] = -1;
    let mut dp: Vec<BTreeMap<i64, i128>> = vec![BTreeMap::new(); n + 1];
    dp[0].insert(0, 1);
    for &w in &weights {
        for k in (0..n).rev() {
            let shifted: Vec<(i64, i128)> = dp[k].iter().map(|(&s, &c)| (s + w, c)).collect();
            for (s, c) in shifted {
                *dp[k + 1].entry(s).or_insert(0) += c;
            }
        }
    }
    dp
}

fn laurent_from(map: &BTreeMap<i64, i128>) -> LaurentElement {
    LaurentElement::from_terms(map.iter().map(|(&w, &m)| (w, Integer::from(m))))
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn check_success(out: &Output) {
    assert!(
        out.status.success(),
        "exit {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
}

fn criterion_1() -> String {
    let (out, elapsed) = run(&["verify", "-p", "3", "--format", "json"]);
    check_success(&out);
    let r = json(&out);
    assert_eq!(r["index"]["value"], 3);
    assert_eq!(r["index"]["asserted"], true);

    let c = pascal(7);
    let table = r["lambda_c2_table"]["rows"].as_array().unwrap();
    assert_eq!(table.len(), 8);
    let got: Vec<String> = table
        .iter()
        .map(|row| row["c2"].as_str().unwrap().to_string())
        .collect();
    let expected: Vec<String> = (1..=8).map(|l| (-c[7][l - 1]).to_string()).collect();
    assert_eq!(
        expected,
        ["-1", "-7", "-21", "-35", "-35", "-21", "-7", "-1"]
    );
    assert_eq!(got, expected);
    assert!(table.iter().all(|row| row["c1"] == "0"));

    assert_eq!(r["remark21"]["pass"], true);
    assert_eq!(r["congruence_mod_p2"]["binomial"], c[7][2].to_string());
    assert_eq!(r["congruence_mod_p2"]["residue"], (c[7][2] % 9).to_string());
    assert_eq!(r["congruence_mod_p2"]["residue"], "3");

    let b = &r["bezout"];
    let beta1: i128 = b["beta1"].as_str().unwrap().parse().unwrap();
    let beta2: i128 = b["beta2"].as_str().unwrap().parse().unwrap();
    assert_eq!(beta1 * 21 + beta2 * 243, -3);
    assert_eq!(r["y_c2"]["c2"], "3");
    assert_eq!(r["y_c2"]["c1"], "0");

    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    format!("p=3 index 3, beta=({beta1}, {beta2}), c2(y)=3, {elapsed:.2?}")
}

fn criterion_2() -> String {
    let c = pascal(47);
    let mut notes = Vec::new();
    for (p, n, k, modulus, residue) in [(5u64, 23usize, 4usize, 25i128, "5"), (7, 47, 6, 49, "7")] {
        let (out, elapsed) = run(&["verify", "-p", &p.to_string(), "--format", "json"]);
        check_success(&out);
        let r = json(&out);
        assert_eq!(r["index"]["value"], p);
        assert_eq!(r["index"]["asserted"], true);
        assert_eq!(r["sweep"]["status"], "completed");
        assert_eq!(r["sweep"]["max_total_degree"], 2 * p);
        assert_eq!(r["sweep"]["pass"], true);
        assert!(r["oracle"].is_null());
        assert_eq!(r["congruence_mod_p2"]["binomial"], c[n][k].to_string());
        assert_eq!((c[n][k] % modulus).to_string(), residue);
        assert_eq!(r["congruence_mod_p2"]["residue"], residue);
        assert_eq!(r["y_c2"]["c2"], p.to_string());
        assert!(elapsed < Duration::from_secs(10), "p={p} took {elapsed:?}");
        notes.push(format!(
            "p={p} C({n},{k})={} = {residue} mod {modulus} in {elapsed:.2?}",
            c[n][k]
        ));
    }
    notes.join("; ")
}

fn criterion_3() -> String {
    let mut notes = Vec::new();
    for p in [3u64, 5] {
        let pr = prime(p);
        let dp = subset_weight_dp(p);
        let start = Instant::now();
        for ell in 1..p * p {
            let brute = phi1_star_lambda_bruteforce_with(ell, pr, 10_000_000, Execution::Parallel)
                .unwrap_or_else(|e| panic!("p={p} l={ell}: {e}"));
            let closed = phi1_star_lambda(ell, pr).unwrap();
            let reference = laurent_from(&dp[ell as usize]);
            assert_eq!(brute, closed, "p={p} l={ell}: enumeration vs closed form");
            assert_eq!(closed, reference, "p={p} l={ell}: closed form vs DP");
        }
        let elapsed = start.elapsed();
        assert!(
            elapsed < Duration::from_secs(60),
            "p={p} oracle took {elapsed:?}"
        );

        let (out, _) = run(&["oracle", "-p", &p.to_string(), "--cap", "10000000"]);
        check_success(&out);
        let text = String::from_utf8_lossy(&out.stdout);
        let all = p * p - 1;
        assert!(text.contains(&format!("{all}/{all} matched")), "{text}");
        assert!(!text.contains("skipped"), "{text}");
        notes.push(format!("p={p} {all}/{all} matched in {elapsed:.2?}"));
    }
    notes.join("; ")
}

fn criterion_4() -> String {
    let c = pascal(49);
    let mut checked = 0;
    for p in [3u64, 5, 7] {
        let pr = prime(p);
        let n = (p * p) as usize;
        let dim = certify_dim_divisibility(pr).unwrap();
        assert!(dim.pass);
        assert_eq!(dim.checks.len(), n - 1);
        for (i, chk) in dim.checks.iter().enumerate() {
            let ell = i + 1;
            assert_eq!(chk.ell, ell as u64);
            assert_eq!(chk.binomial, Integer::from(c[n][ell]));
            assert_eq!(chk.residue_exact, chk.residue_lucas);
            assert_eq!(chk.residue_exact, 0);
            assert_eq!(c[n][ell] % p as i128, 0);
            checked += 1;
        }
        let pk = certify_pk_c2_divisibility(pr).unwrap();
        assert!(pk.pass);
        assert_eq!(pk.checks.len(), (p - 1) as usize);
        for (i, chk) in pk.checks.iter().enumerate() {
            let k = i as u64 + 1;
            let ell = (p * k) as usize;
            assert_eq!((chk.k, chk.ell), (k, ell as u64));
            let expected = c[n - 2][ell - 1];
            assert_eq!(chk.binomial, Integer::from(expected));
            assert_eq!(chk.c2, Integer::from(-expected));
            assert_eq!(chk.residue_exact, chk.residue_lucas);
            assert_eq!(chk.residue_exact, 0);
            assert_eq!(expected % p as i128, 0);
            checked += 1;
        }
    }
    format!("{checked} binomials, exact and Lucas residues agree")
}

fn random_system(rng: &mut ChaCha8Rng) -> LaurentElement {
    let terms = rng.random_range(0..=6);
    LaurentElement::from_terms((0..terms).map(|_| {
        (
            rng.random_range(-5i64..=5),
            Integer::from(rng.random_range(-10i64..=10)),
        )
    }))
}

fn symmetrize(v: &LaurentElement) -> LaurentElement {
    v + &v.conjugate()
}

/// `c₂ = (s₁² − s₂)/2` from power sums, for virtual systems.
fn c2_power_sums(v: &LaurentElement) -> Integer {
    let s1: Integer = v.iter().map(|(w, m)| m * w).sum();
    let s2: Integer = v.iter().map(|(w, m)| m * (w * w)).sum();
    (&s1 * &s1 - s2) / 2
}

fn criterion_5() -> String {
    const SYSTEMS: usize = 160;
    const DEGREE: usize = 6;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c4e2);
    let mut dual = 0;
    let mut product = 0;
    for _ in 0..SYSTEMS {
        let a = random_system(&mut rng);
        let b = random_system(&mut rng);

        let whitney = total_chern(&(&a + &b), DEGREE);
        assert_eq!(
            whitney,
            total_chern(&a, DEGREE).mul(&total_chern(&b, DEGREE)),
            "{a} + {b}"
        );

        let ab = laurent_mul(&a, &b);
        assert_eq!(
            chern_character(&ab, DEGREE),
            chern_character(&a, DEGREE).mul(&chern_character(&b, DEGREE)),
            "{a} * {b}"
        );

        for v in [a.clone(), b.clone(), symmetrize(&a), symmetrize(&b)] {
            let chern = total_chern(&v, 2);
            if c1(&chern).unwrap() != Integer::from(0) {
                continue;
            }
            let via_total = c2(&chern).unwrap();
            assert_eq!(c2_from_character(&v).unwrap(), via_total, "{v}");
            assert_eq!(c2_power_sums(&v), via_total, "{v}");
            dual += 1;
        }

        let (sa, sb) = (symmetrize(&a), symmetrize(&b));
        let c2a = c2(&total_chern(&sa, 2)).unwrap();
        let c2b = c2(&total_chern(&sb, 2)).unwrap();
        let direct = c2(&total_chern(&laurent_mul(&sa, &sb), 2)).unwrap();
        assert_eq!(
            c2_product_rule(&sa.dim(), &c2a, &sb.dim(), &c2b),
            direct,
            "{sa} * {sb}"
        );
        assert_eq!(c2_power_sums(&laurent_mul(&sa, &sb)), direct);
        product += 1;
    }
    assert!(dual >= 100 && product >= 100);
    format!("{SYSTEMS} systems, {dual} dual-path c2 checks, {product} product-rule checks")
}

fn sweep_reference(p: u64, bound: u64) -> (u64, BTreeMap<usize, u64>) {
    let images = subset_weight_dp(p);
    let top = p * p - 1;
    let mut count = 0;
    let mut by_length = BTreeMap::new();
    let mut stack: Vec<(Vec<u64>, BTreeMap<i64, i128>)> =
        vec![(Vec::new(), BTreeMap::from([(0, 1)]))];
    while let Some((seq, poly)) = stack.pop() {
        let weight: u64 = seq.iter().sum();
        if !seq.is_empty() && weight.is_multiple_of(p) {
            let s1: i128 = poly.iter().map(|(&w, &m)| m * w as i128).sum();
            let s2: i128 = poly.iter().map(|(&w, &m)| m * (w * w) as i128).sum();
            assert_eq!(s1, 0);
            let c2 = -s2 / 2;
            assert_eq!(c2 % p as i128, 0, "{seq:?}");
            let direct = chernsub::verifier::monomial_c2_direct(
                &ExponentSeq::from_sorted(seq.clone(), prime(p)).unwrap(),
                prime(p),
            );
            assert_eq!(direct, Integer::from(c2), "{seq:?}");
            count += 1;
            *by_length.entry(seq.len()).or_insert(0) += 1;
        }
        let start = seq.last().copied().unwrap_or(1);
        for ell in start..=top.min(bound - weight) {
            let mut next = BTreeMap::new();
            for (&w1, &m1) in &poly {
                for (&w2, &m2) in &images[ell as usize] {
                    *next.entry(w1 + w2).or_insert(0i128) += m1 * m2;
                }
            }
            let mut s = seq.clone();
            s.push(ell);
            stack.push((s, next));
        }
    }
    (count, by_length)
}

fn criterion_6() -> String {
    let p = prime(3);
    let runs: Vec<SweepSummary> = [
        Execution::Sequential,
        Execution::Parallel,
        Execution::Parallel,
    ]
    .into_iter()
    .map(|exec| sweep_with(p, 12, DEFAULT_SWEEP_LIMIT, exec).unwrap())
    .collect();
    assert!(
        runs.windows(2).all(|w| w[0] == w[1]),
        "sweep not stable across runs"
    );
    let s = &runs[0];
    assert!(s.pass, "{:?}", s.violations);
    assert!(s.violations.is_empty());
    assert_eq!(s.dual_path_checked, s.monomials);

    let (count, by_length) = sweep_reference(3, 12);
    assert_eq!(s.monomials, count);
    assert_eq!(s.by_length, by_length.into_iter().collect::<Vec<_>>());

    let (out, _) = run(&[
        "verify",
        "-p",
        "3",
        "--sweep-degree",
        "12",
        "--format",
        "json",
    ]);
    check_success(&out);
    let r = json(&out);
    assert_eq!(r["sweep"]["monomials"], count);
    format!("{count} monomials with weight = 0 mod 3, all c2 = 0 mod 3, identical over 3 runs")
}

fn strip_timings(mut v: Value) -> Value {
    v.as_object_mut()
        .unwrap()
        .insert("timings".into(), Value::Null);
    v
}

fn criterion_7() -> String {
    let args = ["verify", "-p", "5", "--format", "json"];
    let (first, _) = run(&args);
    let (second, _) = run(&args);
    check_success(&first);
    check_success(&second);
    let (a, b) = (json(&first), json(&second));
    assert_eq!(strip_timings(a.clone()), strip_timings(b));

    let text = String::from_utf8(first.stdout.clone()).unwrap();
    let report: VerificationReport = serde_json::from_str(&text).unwrap();
    let mut again = serde_json::to_string_pretty(&report).unwrap();
    again.push('\n');
    assert_eq!(again, text, "typed round trip");
    let value: Value = serde_json::from_str(&text).unwrap();
    let mut untyped = serde_json::to_string_pretty(&value).unwrap();
    untyped.push('\n');
    assert_eq!(untyped, text, "untyped round trip");

    let keys: Vec<&str> = a.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        [
            "prime",
            "scope_flag",
            "certificate_dim",
            "certificate_pk",
            "lambda_c2_table",
            "remark21",
            "congruence_mod_p2",
            "bezout",
            "y_c2",
            "index",
            "sweep",
            "oracle",
            "assumptions",
            "timings",
            "version"
        ]
    );
    assert!(no_floats(&value), "floating point in report");
    let big = &a["certificate_dim"]["checks"][11]["binomial"];
    assert_eq!(big, "5200300");
    format!(
        "{} bytes, identical modulo timings, lossless round trip",
        text.len()
    )
}

fn no_floats(v: &Value) -> bool {
    match v {
        Value::Number(n) => !n.is_f64(),
        Value::Array(a) => a.iter().all(no_floats),
        Value::Object(o) => o.values().all(no_floats),
        _ => true,
    }
}

type Criterion = (&'static str, fn() -> String);

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 theorem reproduction, p = 3", criterion_1),
        ("2 theorem reproduction, p = 5 and p = 7", criterion_2),
        ("3 oracle equivalence, p = 3 and p = 5", criterion_3),
        ("4 certificates A and B, p in {3, 5, 7}", criterion_4),
        ("5 characteristic-class property suite", criterion_5),
        ("6 sweep, p = 3, total degree 12", criterion_6),
        ("7 determinism and JSON round trip", criterion_7),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (name, check) in criteria {
        match panic::catch_unwind(AssertUnwindSafe(check)) {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(e) => {
                failures += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL  criterion {name}: {msg}");
            }
        }
    }
    let _ = panic::take_hook();
    println!("acceptance: {}/7 criteria passed", 7 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
