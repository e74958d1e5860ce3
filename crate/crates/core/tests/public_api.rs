use doily_core::codes::CodeKind;
use doily_core::protocols::{builtin_protocols, find_protocol, run, sample_counts, within_three_sigma};
use doily_core::state::{encode_secret, test_secrets, verify_all_identities};
use doily_core::{Amplitude, SecretParam};

#[test]
fn every_protocol_recovers_every_test_secret_on_several_seeds() {
    for spec in builtin_protocols() {
        for s in test_secrets() {
            for seed in 0..8 {
                let t = run(&spec, &s, seed).unwrap();
                assert!(t.success, "{} seed {seed}", spec.id);
                assert_eq!(t.fidelity, Amplitude::ONE);
            }
        }
    }
}

#[test]
fn transcripts_depend_only_on_the_seed() {
    let spec = find_protocol("heptagon-green").unwrap();
    let s = SecretParam::seeded(77);
    assert_eq!(run(&spec, &s, 5).unwrap(), run(&spec, &s, 5).unwrap());
    let outcomes: std::collections::BTreeSet<String> =
        (0..64).map(|seed| run(&spec, &s, seed).unwrap().outcome).collect();
    assert_eq!(outcomes.len(), 8);
}

#[test]
fn parsed_secret_round_trips_through_the_code() {
    let s = SecretParam::parse("(1+i)/2, (1-i)/2").unwrap();
    for kind in [CodeKind::Pentagon, CodeKind::Heptagon] {
        assert_eq!(encode_secret(kind, &s).norm_sqr(), Amplitude::ONE);
    }
    let spec = find_protocol("pentagon-chi-swapped").unwrap();
    let counts = sample_counts(&spec, &s, 4000, 9).unwrap();
    assert!(within_three_sigma(&counts, 0.25), "{counts:?}");
}

#[test]
fn identities_hold_through_the_reexports() {
    assert!(verify_all_identities().iter().all(|r| r.holds));
}
