//! Acceptance run: one PASS/FAIL line per criterion with its runtime limit.
//! Run with `cargo test -p toricity-cli --test acceptance -- --nocapture`.

mod support;

#[path = "../../core/tests/common/mod.rs"]
mod oracles;

use std::fs;
use std::time::{Duration, Instant};

use proptest::strategy::Strategy;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use serde_json::Value;
use support::*;
use toricity_core::crn::parse_network;
use toricity_core::exactalg::{rat, ratio, same_row_lattice, IntegerMatrix, Rational};
use toricity_core::polyring::SparsePolynomial;
use toricity_core::toricity::{
    coset_counting_system_at, count_positive_cosets, injectivity_variables, invariance_group, CosetCount,
    CountOptions, GroupMode,
};

type Check = Result<(), String>;

/// Name, runtime limit in seconds, and check.
type Criterion = (&'static str, u64, fn() -> Check);

fn ensure(ok: bool, what: impl Into<String>) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn lattice_is(v: &Value, expected: &[&[i64]]) -> bool {
    same_row_lattice(&integer_matrix(v), &IntegerMatrix::from_i64(expected))
}

/// `sum coef * prod(names)` rendered canonically over `vars`.
fn polynomial(vars: &[String], terms: &[(i64, &[&str])]) -> SparsePolynomial {
    let mut out = SparsePolynomial::zero(vars);
    for (coef, names) in terms {
        let mut t = SparsePolynomial::constant(vars, rat(*coef));
        for name in *names {
            t = &t * &SparsePolynomial::variable(vars, name).unwrap();
        }
        out = &out + &t;
    }
    out
}

fn idh_end_to_end() -> Check {
    let v = json(&["network", &corpus_file("idh.net"), "--json"]);
    let direct = &v["direct"];
    ensure(
        lattice_is(&direct["invariance"]["A"], &[&[1, 0, 1, 0, 1], &[0, 1, 1, 0, 1]]),
        "invariance lattice",
    )?;
    ensure(direct["nondegeneracy"] == "yes_for_all_positive", "nondegeneracy for all positive")?;
    ensure(v["verdict"]["id"] == "toric", "verdict")?;
    ensure(direct["injectivity"]["outcome"] == "toric", "verdict by injectivity")?;

    let net = parse_network(&fs::read_to_string(corpus_file("idh.net")).unwrap()).unwrap();
    let vars = injectivity_variables(&net.steady_state_system().unwrap());
    let expected = polynomial(
        &vars,
        &[
            (-1, &["alpha1", "alpha3", "alpha4", "mu1", "mu3", "mu4"]),
            (-1, &["alpha1", "alpha4", "alpha5", "mu1", "mu4", "mu6"]),
            (-1, &["alpha2", "alpha3", "alpha4", "mu1", "mu3", "mu4"]),
            (-1, &["alpha2", "alpha4", "alpha5", "mu1", "mu4", "mu6"]),
            (-1, &["alpha3", "alpha4", "alpha5", "mu2", "mu4", "mu6"]),
            (-1, &["alpha3", "alpha4", "alpha5", "mu3", "mu4", "mu6"]),
        ],
    );
    let det = direct["injectivity"]["determinant"].as_str().unwrap_or_default();
    ensure(
        det == expected.to_string() || det == (-&expected).to_string(),
        format!("determinant {det}"),
    )?;
    ensure(v["acr"]["acr"] == serde_json::json!(["X4"]), format!("ACR {}", v["acr"]))?;
    ensure(v["multistationarity"]["outcome"] == "monostationary", "monostationary")
}

fn fig_systems() -> Check {
    let first = json(&["analyze", &corpus_file("fig_first.json"), "--json"]);
    ensure(lattice_is(&first["invariance"]["A"], &[&[10, 15, 2]]), "first system lattice")?;
    ensure(first["invariance"]["quasihomogeneity_rank"] == 0, "quasihomogeneity rank 0")?;
    let second = json(&["analyze", &corpus_file("fig_second.json"), "--json"]);
    ensure(second["dimensions"]["d"] == 0, "second system d = 0")
}

fn infinitely_many_cosets() -> Check {
    let v = json(&["analyze", &corpus_file("infinitely_many_cosets.json"), "--json"]);
    ensure(lattice_is(&v["invariance"]["A"], &[&[1, 1, 1]]), "lattice")?;
    ensure(v["nondegeneracy"] == "yes", "nondegenerate")?;
    let dims = &v["dimensions"];
    ensure(dims["s"] == 1 && dims["d"] == 1 && dims["n"] == 3, "s + d = 2 < 3")?;
    ensure(v["verdict"]["id"] == "not_locally_toric", "verdict")
}

fn square_network() -> Check {
    let v = json(&["analyze", &corpus_file("square_network.net"), "--json"]);
    ensure(v["injectivity"]["outcome"] == "inconclusive", "injectivity inconclusive")?;
    ensure(v["verdict"]["id"] != "toric" && v["verdict"]["id"] != "locally_toric", "no claim for all κ")?;

    let net = parse_network(&fs::read_to_string(corpus_file("square_network.net")).unwrap()).unwrap();
    let sys = net.steady_state_system().unwrap();
    let inv = invariance_group(&sys, GroupMode::Positive).unwrap();
    let points: [Vec<Rational>; 3] = [
        vec![rat(1), rat(1)],
        vec![ratio(1, 3), rat(5)],
        vec![ratio(17, 4), ratio(2, 7)],
    ];
    let cases: [(Vec<Rational>, usize); 2] = [
        (vec![ratio(1, 100), rat(3), rat(1), rat(1)], 3),
        (vec![ratio(1, 100), rat(1), rat(1), rat(1)], 1),
    ];
    for (kappa, expected) in &cases {
        for p in &points {
            let h = coset_counting_system_at(&sys, &inv, kappa, p).map_err(|e| e.to_string())?;
            let count = count_positive_cosets(&h, &CountOptions::default()).map_err(|e| e.to_string())?;
            ensure(
                count == CosetCount::Exact(*expected),
                format!("{count:?} at p = {p:?}, expected {expected}"),
            )?;
        }
    }
    Ok(())
}

fn triangle() -> Check {
    let v = json(&["network", &corpus_file("triangle.net"), "--kappa", "1,1,1,1", "--json"]);
    let d = &v["direct"];
    ensure(d["mixed_volume"] == "6", "mixed volume 6")?;
    ensure(d["constant_coset_conditions"]["all_hold"] == true, "constant-coset conditions")?;
    ensure(
        d["coset_count"]["kind"] == "exact" && d["coset_count"]["count"] == 1,
        "exact count 1",
    )?;
    ensure(v["verdict"]["id"] == "toric", "verdict")?;
    ensure(d["zeros_for_all_parameters"] == true, "zeros for every κ")
}

fn shinar_feinberg() -> Check {
    let v = json(&["network", &corpus_file("shinar_feinberg.net"), "--json"]);
    let r = &v["reduction"];
    ensure(r["intermediates"].as_array().map(Vec::len) == Some(3), "three intermediates")?;
    ensure(r["report"]["injectivity"]["outcome"] == "toric", "reduced injectivity")?;
    ensure(
        lattice_is(&r["A_lifted"], &[&[1, 1, 1, 0, 1, 1, 0, 1, 1], &[0, 0, 0, 1, -1, 0, 0, 0, 0]]),
        "lifted lattice",
    )?;
    ensure(v["direct"]["injectivity"]["outcome"] == "inconclusive", "direct injectivity")
}

fn straube() -> Check {
    let v = json(&["network", &corpus_file("straube.net"), "--json"]);
    ensure(v["verdict"]["id"] == "toric", "verdict")?;
    ensure(v["direct"]["injectivity"]["outcome"] == "toric", "by injectivity")?;
    ensure(v["acr"]["acr"] == serde_json::json!([]), "no ACR")?;
    ensure(v["multistationarity"]["outcome"] == "multistationary", "multistationary")
}

fn suite<S: Strategy>(name: &str, cases: u32, strategy: S, check: fn(S::Value) -> Result<(), TestCaseError>) -> Check {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, check).map_err(|e| format!("{name}: {e}"))
}

fn properties() -> Check {
    suite("matroid partition", 200, oracles::partition_case(), oracles::check_partition)?;
    suite("block invariance", 200, oracles::blocks_case(), oracles::check_blocks)?;
    suite("planar mixed volume", 100, oracles::planar_case(), oracles::check_planar_mixed_volume)?;
    suite("Sturm counts", 100, oracles::sturm_case(), oracles::check_sturm)?;
    suite("symbolic determinant", 50, oracles::determinant_case(), oracles::check_determinant)
}

fn batch_determinism() -> Check {
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for jobs in ["1", "8"] {
        let path = dir.path().join(format!("jobs{jobs}.json"));
        let out = toricity(&[
            "batch",
            corpus().to_str().unwrap(),
            "--report",
            path.to_str().unwrap(),
            "--jobs",
            jobs,
        ]);
        ensure(out.status.success(), format!("batch --jobs {jobs} failed"))?;
        reports.push(fs::read(&path).unwrap());
    }
    ensure(reports[0] == reports[1], "reports differ")?;
    let v: Value = serde_json::from_slice(&reports[0]).unwrap();
    ensure(v["rows"].as_array().map(Vec::len) == Some(8), "eight rows")
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("IDH end-to-end", 5, idh_end_to_end),
        ("first and second systems with different dependencies", 1, fig_systems),
        ("infinitely many cosets", 1, infinitely_many_cosets),
        ("square network coset counts", 2, square_network),
        ("triangle network", 5, triangle),
        ("Shinar-Feinberg reduction", 10, shinar_feinberg),
        ("Straube network", 10, straube),
        ("property suites", 300, properties),
        ("batch determinism", 60, batch_determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let within = elapsed <= Duration::from_secs(*limit);
        let status = if outcome.is_ok() && within { "PASS" } else { "FAIL" };
        let detail = match (&outcome, within) {
            (Err(e), _) => format!(" ({e})"),
            (Ok(()), false) => " (over the time limit)".to_string(),
            _ => String::new(),
        };
        println!(
            "criterion {}: {status} {name} [{:.2} s, limit {limit} s, exact]{detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
        if status == "FAIL" {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
