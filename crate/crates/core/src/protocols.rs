//! Secret-recovery protocols: encode, measure a pair or triple of parties,
//! send the outcome, correct, and read out the secret at the recovery party.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::codes::{code, CodeKind};
use crate::error::{Error, Result};
use crate::state::bases::BasisFamily;
use crate::state::identities::{
    heptagon_plane, pentagon_bell, pentagon_chi, same_secret, secret_factor, BranchRow, Decomposition,
};
use crate::state::logical::{encode_secret, test_secrets, SecretParam};
use crate::state::{Amplitude, GateWord, StateVector};

/// Qubit relabeling j ↦ map[j] swapping qubits 1↔2 and 3↔5 (1-based).
pub const PENTAGON_REFLECTION: [usize; 5] = [1, 0, 4, 3, 2];
/// Heptagon relabeling 1→4, 2→1, 3→5, 4→2, 5→6, 6→3, 7→7 (1-based); it
/// preserves the signed stabilizer group and cycles the slots 3 → 5 → 6.
pub const HEPTAGON_ROTATION: [usize; 7] = [3, 0, 4, 1, 5, 2, 6];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProtocolSpec {
    pub id: String,
    pub decomposition: Decomposition,
}

/// One row of a correction table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Correction {
    pub outcome: String,
    pub branch: GateWord,
    pub correction: GateWord,
}

impl ProtocolSpec {
    pub fn code(&self) -> CodeKind {
        self.decomposition.code
    }

    pub fn family(&self) -> BasisFamily {
        self.decomposition.family
    }

    /// Measuring parties, 1-based, in basis-factor order.
    pub fn measuring_parties(&self) -> Vec<usize> {
        self.decomposition.measured.iter().map(|q| q + 1).collect()
    }

    pub fn recovery_party(&self) -> usize {
        self.decomposition.recovery + 1
    }

    /// Measuring parties together with the recovery party, sorted, 1-based.
    pub fn cooperating_parties(&self) -> Vec<usize> {
        let mut v = self.measuring_parties();
        v.push(self.recovery_party());
        v.sort_unstable();
        v
    }

    /// The correction for each outcome is the inverse of the word the
    /// branch leaves on the secret.
    pub fn corrections(&self) -> Vec<Correction> {
        self.decomposition
            .rows
            .iter()
            .map(|r| Correction {
                outcome: r.outcome.clone(),
                branch: r.word.clone(),
                correction: r.word.inverse(),
            })
            .collect()
    }

    pub fn relabeled(&self, id: &str, map: &[usize]) -> Result<Self> {
        if !code(self.code()).is_invariant_under(map)? {
            return Err(Error::Domain(format!("{map:?} does not preserve the stabilizer group")));
        }
        Ok(Self {
            id: id.to_string(),
            decomposition: self.decomposition.relabel(map)?,
        })
    }
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // j ↦ b[a[j]]
    a.iter().map(|&j| b[j]).collect()
}

/// The built-in protocols: three for the pentagon code and one per plane
/// colour and recovery slot (3, 5, 6) for the heptagon code.
pub fn builtin_protocols() -> Vec<ProtocolSpec> {
    let bell = ProtocolSpec {
        id: "pentagon-bell".into(),
        decomposition: pentagon_bell(),
    };
    let chi = ProtocolSpec {
        id: "pentagon-chi".into(),
        decomposition: pentagon_chi(),
    };
    let swapped = chi
        .relabeled("pentagon-chi-swapped", &PENTAGON_REFLECTION)
        .expect("reflection preserves the pentagon group");
    let mut out = vec![bell, chi, swapped];
    let rot2 = compose(&HEPTAGON_ROTATION, &HEPTAGON_ROTATION);
    for (colour, family) in [
        ("red", BasisFamily::BellZ),
        ("blue", BasisFamily::BellY),
        ("green", BasisFamily::BellX),
    ] {
        let base = ProtocolSpec {
            id: format!("heptagon-{colour}-3"),
            decomposition: heptagon_plane(family).expect("three-qubit family"),
        };
        let s5 = base
            .relabeled(&format!("heptagon-{colour}-5"), &HEPTAGON_ROTATION)
            .expect("rotation preserves the heptagon group");
        let s6 = base
            .relabeled(&format!("heptagon-{colour}-6"), &rot2)
            .expect("rotation preserves the heptagon group");
        out.extend([base, s5, s6]);
    }
    out
}

/// Looks up a built-in protocol; `heptagon-<colour>` names slot 3.
pub fn find_protocol(id: &str) -> Result<ProtocolSpec> {
    let want = match id {
        "heptagon-red" | "heptagon-blue" | "heptagon-green" => format!("{id}-3"),
        _ => id.to_string(),
    };
    builtin_protocols()
        .into_iter()
        .find(|p| p.id == want)
        .ok_or_else(|| Error::Unknown(id.to_string()))
}

/// A dyadic probability num/2^k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dyadic {
    pub num: u64,
    pub k: u32,
}

impl Dyadic {
    fn from_amplitude(a: Amplitude) -> Result<Self> {
        match a.as_dyadic() {
            Some((num, k)) if num >= 0 && k <= 63 => Ok(Self { num: num as u64, k }),
            _ => Err(Error::Domain(format!("{a:?} is not a dyadic probability"))),
        }
    }

    /// num·2^{64−k}, the probability as a 64-bit fixed-point fraction.
    fn fixed(self) -> u128 {
        (self.num as u128) << (64 - self.k)
    }
}

impl std::fmt::Display for Dyadic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, 1u64 << self.k)
    }
}

/// A branch after measuring: the residual state on the unmeasured qubits
/// (in increasing qubit order) and its probability.
#[derive(Debug, Clone)]
pub struct Branch {
    pub row: BranchRow,
    pub residual: StateVector,
    pub probability: Dyadic,
}

/// The encoded state split into all measurement branches.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub spec: ProtocolSpec,
    pub secret: SecretParam,
    pub branches: Vec<Branch>,
}

pub fn prepare(spec: &ProtocolSpec, secret: &SecretParam) -> Result<Prepared> {
    let d = &spec.decomposition;
    let psi = encode_secret(d.code, secret);
    let branches = d
        .rows
        .iter()
        .map(|r| {
            let e = d.family.find(&r.outcome)?.state;
            let residual = psi.project_onto(&d.measured, &e)?;
            let probability = Dyadic::from_amplitude(residual.norm_sqr())?;
            Ok(Branch {
                row: r.clone(),
                residual,
                probability,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let total: u128 = branches.iter().map(|b| b.probability.fixed()).sum();
    if total != 1u128 << 64 {
        return Err(Error::Domain(format!(
            "branch probabilities of {} do not sum to one",
            spec.id
        )));
    }
    Ok(Prepared {
        spec: spec.clone(),
        secret: *secret,
        branches,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProtocolTranscript {
    pub spec_id: String,
    pub seed: u64,
    pub secret: SecretParam,
    pub measuring_parties: Vec<usize>,
    pub recovery_party: usize,
    pub outcome_index: usize,
    pub outcome: String,
    pub probability: String,
    /// The outcome index as the classical bits sent to the recovery party.
    pub message: String,
    pub correction: GateWord,
    pub recovered: [Amplitude; 2],
    pub fidelity: Amplitude,
    pub success: bool,
}

/// Outcome of correcting one branch: the recovered qubit and its fidelity
/// ⟨ψ|ρ|ψ⟩ with the secret, ρ the normalized reduced state.
struct Recovery {
    qubit: Option<StateVector>,
    fidelity: Amplitude,
}

fn recover(spec: &ProtocolSpec, branch: &Branch, secret: &SecretParam) -> Result<Recovery> {
    let d = &spec.decomposition;
    let rest: Vec<usize> = (0..d.code.n_qubits()).filter(|q| !d.measured.contains(q)).collect();
    let pos = rest
        .iter()
        .position(|&q| q == d.recovery)
        .expect("recovery qubit is not measured");
    let corrected = branch
        .residual
        .apply_matrix(&branch.row.word.inverse().matrix(), &[pos])?;
    let rho = corrected.reduced_density_matrix(&[pos])?;
    let s = [secret.alpha, secret.beta];
    let overlap: Amplitude = (0..2)
        .flat_map(|a| (0..2).map(move |b| (a, b)))
        .map(|(a, b)| s[a].conj() * rho.get(a, b) * s[b])
        .sum();
    let norm = corrected.norm_sqr();
    let fidelity = overlap
        * norm
            .checked_inverse()
            .ok_or_else(|| Error::Domain("empty branch".into()))?;
    Ok(Recovery {
        qubit: secret_factor(&corrected, pos),
        fidelity,
    })
}

impl Prepared {
    /// Index of the branch selected by a 64-bit uniform draw.
    pub fn select(&self, draw: u64) -> usize {
        let mut acc = 0u128;
        for (i, b) in self.branches.iter().enumerate() {
            acc += b.probability.fixed();
            if (draw as u128) < acc {
                return i;
            }
        }
        self.branches.len() - 1
    }

    pub fn run(&self, seed: u64) -> Result<ProtocolTranscript> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let idx = self.select(rng.next_u64());
        let branch = &self.branches[idx];
        let rec = recover(&self.spec, branch, &self.secret)?;
        let success =
            rec.fidelity == Amplitude::ONE && rec.qubit.as_ref().is_some_and(|q| same_secret(q, &self.secret));
        let recovered = rec.qubit.map_or([Amplitude::ZERO; 2], |q| [q.amp(0), q.amp(1)]);
        let bits = self.branches.len().trailing_zeros() as usize;
        Ok(ProtocolTranscript {
            spec_id: self.spec.id.clone(),
            seed,
            secret: self.secret,
            measuring_parties: self.spec.measuring_parties(),
            recovery_party: self.spec.recovery_party(),
            outcome_index: idx,
            outcome: branch.row.outcome.clone(),
            probability: branch.probability.to_string(),
            message: format!("{idx:0bits$b}"),
            correction: branch.row.word.inverse(),
            recovered,
            fidelity: rec.fidelity,
            success,
        })
    }
}

pub fn run(spec: &ProtocolSpec, secret: &SecretParam, seed: u64) -> Result<ProtocolTranscript> {
    prepare(spec, secret)?.run(seed)
}

/// Outcome counts over `runs` consecutive seeds starting at `base_seed`.
pub fn sample_counts(spec: &ProtocolSpec, secret: &SecretParam, runs: u64, base_seed: u64) -> Result<Vec<u64>> {
    let p = prepare(spec, secret)?;
    let mut counts = vec![0u64; p.branches.len()];
    for s in 0..runs {
        let t = p.run(base_seed.wrapping_add(s))?;
        if !t.success {
            return Err(Error::Domain(format!(
                "{} failed to recover with seed {}",
                spec.id, t.seed
            )));
        }
        counts[t.outcome_index] += 1;
    }
    Ok(counts)
}

/// True if every count lies within three standard deviations of runs·p.
pub fn within_three_sigma(counts: &[u64], p: f64) -> bool {
    let n: u64 = counts.iter().sum();
    let mean = n as f64 * p;
    let sigma = (n as f64 * p * (1.0 - p)).sqrt();
    counts.iter().all(|&c| (c as f64 - mean).abs() <= 3.0 * sigma)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchCheck {
    pub outcome: String,
    pub probability: String,
    pub factorizes: bool,
    pub recovered: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchReport {
    pub spec_id: String,
    pub branches: Vec<BranchCheck>,
    pub pass: bool,
}

/// Walks every outcome for the basis secrets and the other test secrets:
/// each residual must equal the decomposition's term (spectators ⊗ word·ψ,
/// with the term's sign and weight), have probability 1/4 or 1/8, and be
/// restored to the secret by the correction.
pub fn exhaustive_branch_check(spec: &ProtocolSpec) -> Result<BranchReport> {
    let d = &spec.decomposition;
    let weight = d
        .scale
        .checked_inverse()
        .ok_or_else(|| Error::Domain("scale is not invertible".into()))?;
    let expected_p = Dyadic {
        num: 1,
        k: d.rows.len().trailing_zeros(),
    };
    let mut checks: Vec<BranchCheck> = d
        .rows
        .iter()
        .map(|r| BranchCheck {
            outcome: r.outcome.clone(),
            probability: expected_p.to_string(),
            factorizes: true,
            recovered: true,
        })
        .collect();
    for s in test_secrets() {
        let p = prepare(spec, &s)?;
        for (b, c) in p.branches.iter().zip(checks.iter_mut()) {
            let e = d.family.find(&b.row.outcome)?.state;
            let term = d.term(&b.row, &s.state())?.project_onto(&d.measured, &e)?.scale(weight);
            c.factorizes &= term == b.residual && b.probability == expected_p;
            let rec = recover(spec, b, &s)?;
            c.recovered &= rec.fidelity == Amplitude::ONE && rec.qubit.is_some_and(|q| same_secret(&q, &s));
        }
    }
    let pass = checks.iter().all(|c| c.factorizes && c.recovered);
    Ok(BranchReport {
        spec_id: spec.id.clone(),
        branches: checks,
        pass,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoInfoReport {
    pub code: CodeKind,
    /// 1-based parties.
    pub coalition: Vec<usize>,
    pub secret_independent: bool,
    pub maximally_mixed: bool,
    pub pass: bool,
}

/// Compares the coalition's reduced state across the test secrets. The
/// pentagon check also requires ρ = I/2^k; for the heptagon code mixedness
/// is reported but only secret independence is required.
pub fn no_information_check(kind: CodeKind, coalition: &[usize]) -> Result<NoInfoReport> {
    if coalition.is_empty() || coalition.len() >= kind.threshold() {
        return Err(Error::Domain(format!(
            "coalition size {} is not below the threshold {}",
            coalition.len(),
            kind.threshold()
        )));
    }
    crate::pauli::check_positions(coalition, kind.n_qubits())?;
    let rhos: Vec<_> = test_secrets()
        .iter()
        .map(|s| encode_secret(kind, s).reduced_density_matrix(coalition))
        .collect::<Result<_>>()?;
    let secret_independent = rhos.windows(2).all(|w| w[0] == w[1]);
    let dim = 1 << coalition.len();
    let mixed = crate::state::Matrix::identity(dim).scale(Amplitude::ONE.halve(coalition.len() as u32));
    let maximally_mixed = rhos.iter().all(|r| *r == mixed);
    let pass = secret_independent && (kind == CodeKind::Heptagon || maximally_mixed);
    Ok(NoInfoReport {
        code: kind,
        coalition: coalition.iter().map(|q| q + 1).collect(),
        secret_independent,
        maximally_mixed,
        pass,
    })
}

/// Every non-empty coalition below the threshold, as 0-based qubit lists.
pub fn sub_threshold_coalitions(kind: CodeKind) -> Vec<Vec<usize>> {
    let n = kind.n_qubits();
    let mut out: Vec<Vec<usize>> = (1u32..1 << n)
        .filter(|m| (m.count_ones() as usize) < kind.threshold())
        .map(|m| (0..n).filter(|q| m >> q & 1 == 1).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_shapes() {
        let all = builtin_protocols();
        assert_eq!(all.len(), 12);
        let get = |id: &str| find_protocol(id).unwrap();
        assert_eq!(get("pentagon-bell").measuring_parties(), [3, 5]);
        assert_eq!(get("pentagon-bell").recovery_party(), 4);
        assert_eq!(get("pentagon-chi").measuring_parties(), [3, 4]);
        assert_eq!(get("pentagon-chi").recovery_party(), 5);
        assert_eq!(get("pentagon-chi-swapped").measuring_parties(), [5, 4]);
        assert_eq!(get("pentagon-chi-swapped").recovery_party(), 3);
        assert_eq!(get("heptagon-red").measuring_parties(), [5, 6, 7]);
        assert_eq!(get("heptagon-blue-5").measuring_parties(), [6, 3, 7]);
        assert_eq!(get("heptagon-blue-5").recovery_party(), 5);
        assert_eq!(get("heptagon-green-6").measuring_parties(), [3, 5, 7]);
        assert_eq!(get("heptagon-green-6").recovery_party(), 6);
        for p in &all {
            let n = p.corrections().len();
            assert_eq!(n, if p.code() == CodeKind::Pentagon { 4 } else { 8 });
            assert!(!p.measuring_parties().contains(&p.recovery_party()));
        }
        assert!(find_protocol("nope").is_err());
    }

    #[test]
    fn correction_sets() {
        let words = |id: &str| -> Vec<String> {
            find_protocol(id)
                .unwrap()
                .corrections()
                .iter()
                .map(|c| c.branch.to_string())
                .collect()
        };
        assert_eq!(words("pentagon-bell"), ["XZ", "I", "-X", "Z"]);
        assert_eq!(words("pentagon-chi"), ["RZ", "-iR", "-RY", "RX"]);
        let red: std::collections::BTreeSet<String> = words("heptagon-red").into_iter().collect();
        assert_eq!(red.into_iter().collect::<Vec<_>>(), ["I", "X", "XZ", "Z"]);
    }

    #[test]
    fn every_builtin_recovers_on_every_branch() {
        for p in builtin_protocols() {
            let r = exhaustive_branch_check(&p).unwrap();
            assert!(r.pass, "{}: {:?}", p.id, r.branches);
        }
    }

    #[test]
    fn cyclic_images_of_the_bell_protocol_recover() {
        let base = find_protocol("pentagon-bell").unwrap();
        for k in 1..5 {
            let map: Vec<usize> = (0..5).map(|j| (j + k) % 5).collect();
            let p = base.relabeled(&format!("cyclic-{k}"), &map).unwrap();
            assert!(exhaustive_branch_check(&p).unwrap().pass, "shift {k}");
        }
    }

    #[test]
    fn non_symmetries_are_rejected() {
        let base = find_protocol("pentagon-bell").unwrap();
        assert!(base.relabeled("bad", &[1, 0, 2, 3, 4]).is_err());
    }

    #[test]
    fn transcripts_are_deterministic() {
        let p = find_protocol("heptagon-red").unwrap();
        let s = test_secrets()[3];
        let a = run(&p, &s, 11).unwrap();
        assert_eq!(a, run(&p, &s, 11).unwrap());
        assert!(a.success);
        assert_eq!(a.probability, "1/8");
        assert_eq!(a.message.len(), 3);
        assert_eq!(a.fidelity, Amplitude::ONE);
    }

    #[test]
    fn selection_follows_cumulative_thresholds() {
        let p = prepare(&find_protocol("pentagon-bell").unwrap(), &test_secrets()[0]).unwrap();
        assert_eq!(p.select(0), 0);
        assert_eq!(p.select((1u64 << 62) - 1), 0);
        assert_eq!(p.select(1u64 << 62), 1);
        assert_eq!(p.select(u64::MAX), 3);
    }

    #[test]
    fn three_sigma_helper() {
        assert!(within_three_sigma(&[1000, 1010, 990, 1000], 0.25));
        assert!(!within_three_sigma(&[1200, 800, 1000, 1000], 0.25));
    }

    #[test]
    fn pentagon_coalitions_see_maximally_mixed_states() {
        let cs = sub_threshold_coalitions(CodeKind::Pentagon);
        assert_eq!(cs.len(), 15);
        for c in cs {
            let r = no_information_check(CodeKind::Pentagon, &c).unwrap();
            assert!(r.pass && r.maximally_mixed, "{c:?}");
        }
        assert!(no_information_check(CodeKind::Pentagon, &[0, 1, 2]).is_err());
    }

    #[test]
    fn heptagon_coalitions_supporting_a_logical_operator_see_the_secret() {
        // oracle: a coalition can learn about the secret iff some logical
        // operator, i.e. an element of X̄·S, Ȳ·S or Z̄·S, is supported on it
        let c = code(CodeKind::Heptagon);
        let logicals: Vec<crate::pauli::PauliOperator> = ["XXXXXXX", "YYYYYYY", "ZZZZZZZ"]
            .iter()
            .flat_map(|l| {
                let l: crate::pauli::PauliOperator = l.parse().unwrap();
                c.elements.iter().map(move |g| l * *g)
            })
            .collect();
        let supported = |coal: &[usize]| {
            logicals
                .iter()
                .any(|op| (0..7).all(|q| coal.contains(&q) || op.symbol(q) == 'I'))
        };
        let cs = sub_threshold_coalitions(CodeKind::Heptagon);
        assert_eq!(cs.len(), 63);
        let mut leaking = Vec::new();
        for coal in &cs {
            let r = no_information_check(CodeKind::Heptagon, coal).unwrap();
            assert_eq!(!r.secret_independent, supported(coal), "{coal:?}");
            if !r.secret_independent {
                leaking.push(r.coalition);
            }
        }
        let want: Vec<Vec<usize>> = vec![
            vec![1, 2, 3],
            vec![1, 4, 5],
            vec![1, 6, 7],
            vec![2, 4, 6],
            vec![2, 5, 7],
            vec![3, 4, 7],
            vec![3, 5, 6],
        ];
        assert_eq!(leaking, want);
    }
}
