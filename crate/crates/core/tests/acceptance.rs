//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line. Run with `cargo test --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use doily_core::claims::{run_criterion, Claim, Options};

const SEED: u64 = 2024;

fn criterion(n: u8, limit: Option<Duration>) {
    let start = Instant::now();
    let claims: Vec<Claim> = run_criterion(
        n,
        &Options {
            seed: SEED,
            inject_fault: false,
        },
    );
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    let pass = in_time && claims.iter().all(|c| c.pass);
    let limit_note = limit.map_or(String::new(), |l| format!(" (limit {:.0?})", l));
    println!(
        "criterion {n}: {} in {:.2?}{limit_note}",
        if pass { "PASS" } else { "FAIL" },
        elapsed
    );
    for c in &claims {
        println!("  [{}] {}: {}", if c.pass { "ok" } else { "FAIL" }, c.id, c.detail);
    }
    assert!(in_time, "criterion {n} took {elapsed:?}");
    for c in &claims {
        assert!(c.pass, "criterion {n}, {}: {}", c.id, c.detail);
    }
}

#[test]
fn criterion_01_geometry_counts() {
    criterion(1, Some(Duration::from_secs(30)));
}

#[test]
fn criterion_02_code_listings() {
    criterion(2, None);
}

#[test]
fn criterion_03_split_structure() {
    criterion(3, None);
}

#[test]
fn criterion_04_contextuality() {
    criterion(4, Some(Duration::from_secs(5)));
}

#[test]
fn criterion_05_decomposition_identities() {
    criterion(5, Some(Duration::from_secs(10)));
}

#[test]
fn criterion_06_protocols() {
    criterion(6, None);
}

// The heptagon half fails: seven 3-party coalitions hold the support of a
// weight-3 logical operator and see the secret.
#[test]
fn criterion_07_no_information() {
    criterion(7, None);
}

#[test]
fn criterion_08_klein_correspondence() {
    criterion(8, None);
}

#[test]
fn criterion_09_negative_planes() {
    criterion(9, None);
}

#[test]
fn criterion_10_spread_mub() {
    criterion(10, None);
}
