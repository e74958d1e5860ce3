//! Branch decompositions of encoded code states and their exact verification.
//!
//! A decomposition writes scale·|Ψ⟩ as a sum of product terms
//! sign · (spectator states) ⊗ (measured-party basis state) ⊗ word·|ψ⟩.
//! Both sides are linear in the secret, so agreement on the two basis
//! secrets already decides an identity; the non-basis test secrets are
//! checked as well.

use serde::Serialize;

use super::bases::{BasisFamily, Signs};
use super::logical::{encode_secret, test_secrets, SecretParam};
use super::matrix::Matrix;
use super::ring::Amplitude;
use super::vector::StateVector;
use super::word::GateWord;
use crate::codes::CodeKind;
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

/// One term: the measured parties' basis state, the spectators' states, a
/// sign, and the word acting on the secret at the recovery qubit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchRow {
    pub outcome: String,
    pub spectators: Vec<String>,
    pub sign: i8,
    pub word: GateWord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub code: CodeKind,
    pub family: BasisFamily,
    /// Measured qubits, in the order of the basis state's tensor factors.
    pub measured: Vec<usize>,
    /// Qubit lists of the spectator factors, each in factor order.
    pub spectator_qubits: Vec<Vec<usize>>,
    pub recovery: usize,
    /// The terms sum to `scale`·|Ψ⟩.
    pub scale: Amplitude,
    /// Two commuting observables on the measured pair whose signs select a
    /// branch: (1 + a·G₁)(1 + b·G₂)/4 picks the outcome with signs (a, b).
    pub selectors: Option<[PauliOperator; 2]>,
    pub rows: Vec<BranchRow>,
}

fn row(outcome: &str, spectators: &[&str], sign: i8, word: &str) -> BranchRow {
    BranchRow {
        outcome: outcome.to_string(),
        spectators: spectators.iter().map(|s| s.to_string()).collect(),
        sign,
        word: word.parse().expect("valid gate word"),
    }
}

fn pauli(s: &str) -> PauliOperator {
    s.parse().expect("valid Pauli string")
}

/// Bell-pair measurement on qubits 3 and 5 (1-based), recovery at qubit 4.
pub fn pentagon_bell() -> Decomposition {
    Decomposition {
        code: CodeKind::Pentagon,
        family: BasisFamily::Bell,
        measured: vec![2, 4],
        spectator_qubits: vec![vec![0, 1]],
        recovery: 3,
        scale: Amplitude::int(2),
        selectors: Some([pauli("IIXIX"), pauli("IIZIZ")]),
        rows: vec![
            row("phi-+", &["phi+-"], 1, "XZ"),
            row("phi--", &["phi--"], 1, "I"),
            row("phi+-", &["phi++"], 1, "-X"),
            row("phi++", &["phi-+"], 1, "Z"),
        ],
    }
}

/// χ-pair measurement on qubits 3 and 4, recovery at qubit 5. The spectator
/// pair carries the swapped χ state, i.e. χ placed on qubits (2, 1).
pub fn pentagon_chi() -> Decomposition {
    Decomposition {
        code: CodeKind::Pentagon,
        family: BasisFamily::Chi,
        measured: vec![2, 3],
        spectator_qubits: vec![vec![1, 0]],
        recovery: 4,
        scale: Amplitude::int(2),
        selectors: Some([pauli("IIXYI"), pauli("IIZXI")]),
        rows: vec![
            row("chi++", &["chi++"], 1, "RZ"),
            row("chi--", &["chi--"], 1, "-iR"),
            row("chi-+", &["chi-+"], 1, "-RY"),
            row("chi+-", &["chi+-"], 1, "RX"),
        ],
    }
}

/// Bell-pair measurement on qubits 5 and 6 of the heptagon state; every
/// branch leaves three identical Bell pairs and the secret at qubit 3.
pub fn heptagon_bell_pairs() -> Decomposition {
    let rows = [("++", "I"), ("-+", "Z"), ("+-", "X"), ("--", "XZ")]
        .iter()
        .map(|&(s, w)| {
            let l = format!("phi{s}");
            row(&l, &[&l, &l], 1, w)
        })
        .collect();
    Decomposition {
        code: CodeKind::Heptagon,
        family: BasisFamily::Bell,
        measured: vec![4, 5],
        spectator_qubits: vec![vec![0, 1], vec![3, 6]],
        recovery: 2,
        scale: Amplitude::int(2),
        selectors: Some([pauli("IIIIXXI"), pauli("IIIIZZI")]),
        rows,
    }
}

/// Three-qubit measurement on qubits 5, 6, 7 in a Bell ⊗ single-qubit basis
/// (Z, Y or X eigenstates), spectators on qubits 1, 2, 4, recovery at 3.
pub fn heptagon_plane(family: BasisFamily) -> Result<Decomposition> {
    let table: [(&str, &str, i8, &str); 8] = match family {
        BasisFamily::BellZ => [
            ("+-1", "+-0", 1, "X"),
            ("+-0", "+-1", 1, "X"),
            ("--1", "--0", 1, "XZ"),
            ("--0", "--1", -1, "XZ"),
            ("++0", "++0", 1, "I"),
            ("++1", "++1", 1, "I"),
            ("-+0", "-+0", 1, "Z"),
            ("-+1", "-+1", -1, "Z"),
        ],
        BasisFamily::BellY => [
            ("+-0", "+-0", 1, "ZY"),
            ("+-1", "+-1", 1, "YZ"),
            ("--1", "--0", 1, "Y"),
            ("--0", "--1", -1, "Y"),
            ("++1", "++0", 1, "I"),
            ("++0", "++1", 1, "I"),
            ("-+0", "-+0", 1, "Z"),
            ("-+1", "-+1", 1, "Z"),
        ],
        BasisFamily::BellX => [
            ("+-0", "+-0", 1, "X"),
            ("+-1", "+-1", -1, "X"),
            ("--1", "--0", 1, "ZX"),
            ("--0", "--1", 1, "XZ"),
            ("++0", "++0", 1, "I"),
            ("++1", "++1", 1, "I"),
            ("-+1", "-+0", 1, "Z"),
            ("-+0", "-+1", 1, "Z"),
        ],
        _ => return Err(Error::Domain(format!("{family:?} is not a three-qubit family"))),
    };
    let p = family.prefix();
    Ok(Decomposition {
        code: CodeKind::Heptagon,
        family,
        measured: vec![4, 5, 6],
        spectator_qubits: vec![vec![0, 1, 3]],
        recovery: 2,
        scale: Amplitude::inv_sqrt_pow2(-3),
        selectors: None,
        rows: table
            .iter()
            .map(|&(o, s, sign, w)| row(&format!("{p}{o}"), &[&format!("{p}{s}")], sign, w))
            .collect(),
    })
}

impl Decomposition {
    fn qubits_ok(&self) -> Result<()> {
        let mut all: Vec<usize> = self.measured.clone();
        all.extend(self.spectator_qubits.iter().flatten());
        all.push(self.recovery);
        crate::pauli::check_positions(&all, self.code.n_qubits())?;
        if all.len() != self.code.n_qubits() {
            return Err(Error::InvalidPositions(format!("{all:?} does not cover the code")));
        }
        Ok(())
    }

    /// The term of `r` for a given secret, as an n-qubit state.
    pub fn term(&self, r: &BranchRow, secret: &StateVector) -> Result<StateVector> {
        self.term_with(r, secret, &r.word.matrix())
    }

    fn term_with(&self, r: &BranchRow, secret: &StateVector, m: &Matrix) -> Result<StateVector> {
        self.qubits_ok()?;
        let outcome = self.family.find(&r.outcome)?.state;
        let specs: Vec<StateVector> = r
            .spectators
            .iter()
            .map(|l| self.family.find(l).map(|b| b.state))
            .collect::<Result<_>>()?;
        if specs.len() != self.spectator_qubits.len() {
            return Err(Error::DimensionMismatch {
                left: specs.len(),
                right: self.spectator_qubits.len(),
            });
        }
        let acted = secret.apply_matrix(m, &[0])?;
        let recovery = [self.recovery];
        let mut parts: Vec<(&[usize], &StateVector)> = self
            .spectator_qubits
            .iter()
            .map(Vec::as_slice)
            .zip(specs.iter())
            .collect();
        parts.push((&self.measured, &outcome));
        parts.push((&recovery, &acted));
        let v = StateVector::assemble(&parts)?;
        Ok(if r.sign < 0 { -&v } else { v })
    }

    /// Signs (a, b) of the branch selected by an outcome label.
    pub fn outcome_signs(&self, r: &BranchRow) -> Result<Signs> {
        Ok(self.family.find(&r.outcome)?.signs)
    }

    /// Moves qubit j to `map[j]` in every qubit list and selector.
    pub fn relabel(&self, map: &[usize]) -> Result<Self> {
        crate::pauli::check_positions(map, self.code.n_qubits())?;
        let m = |qs: &[usize]| qs.iter().map(|&q| map[q]).collect::<Vec<_>>();
        let selectors = match &self.selectors {
            Some([a, b]) => Some([a.relabel(map)?, b.relabel(map)?]),
            None => None,
        };
        Ok(Self {
            measured: m(&self.measured),
            spectator_qubits: self.spectator_qubits.iter().map(|q| m(q)).collect(),
            recovery: map[self.recovery],
            selectors,
            ..self.clone()
        })
    }
}

/// Where two sides of an identity first differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub part: String,
    pub secret: usize,
    pub basis: String,
    pub lhs: Amplitude,
    pub rhs: Amplitude,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub statement: String,
    pub parts: usize,
    pub secrets_checked: usize,
    pub holds: bool,
    pub mismatch: Option<Mismatch>,
}

type StateMap = Box<dyn Fn(&StateVector) -> Result<StateVector>>;

/// One equation: `lhs(Ψ)` against the sum of `rhs(ψ)` terms.
struct Part {
    name: String,
    lhs: StateMap,
    rhs: StateMap,
}

fn first_mismatch(name: &str, secret: usize, lhs: &StateVector, rhs: &StateVector) -> Option<Mismatch> {
    (0..1usize << lhs.n())
        .find(|&i| lhs.amp(i) != rhs.amp(i))
        .map(|i| Mismatch {
            part: name.to_string(),
            secret,
            basis: format!("{i:0w$b}", w = lhs.n()),
            lhs: lhs.amp(i),
            rhs: rhs.amp(i),
        })
}

fn check(id: &str, statement: &str, code: CodeKind, parts: Vec<Part>) -> Result<IdentityReport> {
    let secrets = test_secrets();
    let mut mismatch = None;
    'outer: for (k, s) in secrets.iter().enumerate() {
        let big = encode_secret(code, s);
        let small = s.state();
        for p in &parts {
            let l = (p.lhs)(&big)?;
            let r = (p.rhs)(&small)?;
            if let Some(m) = first_mismatch(&p.name, k, &l, &r) {
                mismatch = Some(m);
                break 'outer;
            }
        }
    }
    Ok(IdentityReport {
        id: id.to_string(),
        statement: statement.to_string(),
        parts: parts.len(),
        secrets_checked: secrets.len(),
        holds: mismatch.is_none(),
        mismatch,
    })
}

/// scale·|Ψ⟩ = Σ terms.
fn sum_part(d: Decomposition) -> Part {
    let scale = d.scale;
    Part {
        name: "sum".into(),
        lhs: Box::new(move |big| Ok(big.scale(scale))),
        rhs: Box::new(move |small| {
            d.rows.iter().try_fold(StateVector::zero(d.code.n_qubits()), |acc, r| {
                Ok(&acc + &d.term(r, small)?)
            })
        }),
    }
}

/// scale·(selected projectors)|Ψ⟩ = the single term of each branch.
fn branch_parts(d: &Decomposition) -> Result<Vec<Part>> {
    let [g1, g2] = d
        .selectors
        .ok_or_else(|| Error::Domain("decomposition has no branch selectors".into()))?;
    d.rows
        .iter()
        .map(|r| {
            let Signs(a, b) = d.outcome_signs(r)?;
            let (g1, g2, scale) = (g1, g2, d.scale);
            let (d2, r2) = (d.clone(), r.clone());
            Ok(Part {
                name: r.outcome.clone(),
                lhs: Box::new(move |big| Ok(big.apply_projector(&g1, a)?.apply_projector(&g2, b)?.scale(scale))),
                rhs: Box::new(move |small| d2.term(&r2, small)),
            })
        })
        .collect()
}

pub const IDENTITY_IDS: [&str; 9] = [
    "pentagon-bell-explicit",
    "pentagon-bell-branches",
    "pentagon-bell-sum",
    "pentagon-chi-branches",
    "pentagon-chi-sum",
    "heptagon-bell-branches",
    "heptagon-red-sum",
    "heptagon-blue-sum",
    "heptagon-green-sum",
];

pub fn verify_identity(id: &str) -> Result<IdentityReport> {
    match id {
        "pentagon-bell-explicit" => {
            // (1 − XX₃₅)(1 + ZZ₃₅)/2 |Ψ⟩ = φ^{+-}₁₂ ⊗ φ^{-+}₃₅ ⊗ (α|1⟩ − β|0⟩)₄
            let d = pentagon_bell();
            let r = d.rows[0].clone();
            let flip = Matrix::from_rows(vec![
                vec![Amplitude::ZERO, -Amplitude::ONE],
                vec![Amplitude::ONE, Amplitude::ZERO],
            ])?;
            let [g1, g2] = d.selectors.expect("selectors");
            let part = Part {
                name: "phi-+".into(),
                lhs: Box::new(move |big| {
                    Ok(big
                        .apply_projector(&g1, -1)?
                        .apply_projector(&g2, 1)?
                        .scale(Amplitude::int(2)))
                }),
                rhs: Box::new(move |small| d.term_with(&r, small, &flip)),
            };
            check(
                id,
                "2 P- Q+ |Psi> = phi+-(1,2) phi-+(3,5) (alpha|1> - beta|0>)(4)",
                CodeKind::Pentagon,
                vec![part],
            )
        }
        "pentagon-bell-branches" => {
            let d = pentagon_bell();
            check(
                id,
                "2 P(a) Q(b) |Psi> for each sign pair on qubits 3,5 is one Bell branch",
                d.code,
                branch_parts(&d)?,
            )
        }
        "pentagon-bell-sum" => {
            let d = pentagon_bell();
            check(
                id,
                "2|Psi> is the sum of the four Bell branches",
                d.code,
                vec![sum_part(d.clone())],
            )
        }
        "pentagon-chi-branches" => {
            let d = pentagon_chi();
            check(
                id,
                "2 P(a) Q(b) |Psi> for each sign pair on qubits 3,4 is one chi branch",
                d.code,
                branch_parts(&d)?,
            )
        }
        "pentagon-chi-sum" => {
            let d = pentagon_chi();
            check(
                id,
                "2|Psi> is the sum of the four chi branches",
                d.code,
                vec![sum_part(d.clone())],
            )
        }
        "heptagon-bell-branches" => {
            let d = heptagon_bell_pairs();
            check(
                id,
                "2 Q(a) R(b) |Psi> leaves three equal Bell pairs and the secret at qubit 3",
                d.code,
                branch_parts(&d)?,
            )
        }
        "heptagon-red-sum" => plane_sum(
            id,
            BasisFamily::BellZ,
            "sqrt8|Psi> is the sum of eight Bell x Z-eigenstate branches",
        ),
        "heptagon-blue-sum" => plane_sum(
            id,
            BasisFamily::BellY,
            "sqrt8|Psi> is the sum of eight Bell x Y-eigenstate branches",
        ),
        "heptagon-green-sum" => plane_sum(
            id,
            BasisFamily::BellX,
            "sqrt8|Psi> is the sum of eight Bell x X-eigenstate branches",
        ),
        _ => Err(Error::Unknown(id.to_string())),
    }
}

fn plane_sum(id: &str, family: BasisFamily, statement: &str) -> Result<IdentityReport> {
    let d = heptagon_plane(family)?;
    check(id, statement, d.code, vec![sum_part(d.clone())])
}

/// Checks an arbitrary decomposition: the sum identity and, when it has
/// selectors, every branch.
pub fn verify_decomposition(id: &str, d: &Decomposition) -> Result<IdentityReport> {
    let mut parts = vec![sum_part(d.clone())];
    if d.selectors.is_some() {
        parts.extend(branch_parts(d)?);
    }
    check(id, "sum and branches of a custom table", d.code, parts)
}

pub fn verify_all_identities() -> Vec<IdentityReport> {
    IDENTITY_IDS
        .iter()
        .map(|id| verify_identity(id).expect("known identity"))
        .collect()
}

/// The two Y- and X-basis decompositions exactly as printed, each with one
/// term that differs from the verified tables; both are expected to fail.
pub fn printed_variants() -> Vec<IdentityReport> {
    let mut blue = heptagon_plane(BasisFamily::BellY).expect("three-qubit family");
    blue.rows[7].sign = -1;
    let mut green = heptagon_plane(BasisFamily::BellX).expect("three-qubit family");
    green.rows[7].outcome = "Omega-+1".into();
    [
        ("heptagon-blue-sum-as-printed", blue),
        ("heptagon-green-sum-as-printed", green),
    ]
    .into_iter()
    .map(|(id, d)| check(id, "as printed", d.code, vec![sum_part(d.clone())]).expect("valid tables"))
    .collect()
}

/// The secret recovered from a branch residual, if the recovery-qubit
/// factor can be split off exactly.
pub fn secret_factor(residual: &StateVector, qubit: usize) -> Option<StateVector> {
    let n = residual.n();
    let bit = 1usize << (n - 1 - qubit);
    let i =
        (0..1usize << n).find(|&i| i & bit == 0 && !(residual.amp(i).is_zero() && residual.amp(i | bit).is_zero()))?;
    let v = StateVector::new(1, vec![residual.amp(i), residual.amp(i | bit)]).ok()?;
    v.normalized().ok()
}

/// The same secret up to a unit phase.
pub fn same_secret(a: &StateVector, s: &SecretParam) -> bool {
    a.equal_up_to_global_phase(&s.state())
}
