//! Logical code states and the encoding α|0̄⟩ + β|1̄⟩ of a one-qubit secret.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::bases::{hadamard, phase_gate, t_gate};
use super::ring::Amplitude;
use super::vector::StateVector;
use crate::codes::{code, CodeKind};
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

/// A normalized one-qubit secret α|0⟩ + β|1⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SecretParam {
    pub alpha: Amplitude,
    pub beta: Amplitude,
}

impl SecretParam {
    pub fn new(alpha: Amplitude, beta: Amplitude) -> Result<Self> {
        if alpha.norm_sqr() + beta.norm_sqr() != Amplitude::ONE {
            return Err(Error::Unnormalized);
        }
        Ok(Self { alpha, beta })
    }

    /// Parses "a,b" with each side an exact ring expression.
    pub fn parse(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected `alpha,beta`, got `{s}`")))?;
        Self::new(Amplitude::parse_expr(a)?, Amplitude::parse_expr(b)?)
    }

    pub fn state(&self) -> StateVector {
        StateVector::new(1, vec![self.alpha, self.beta]).expect("one qubit")
    }

    pub fn from_state(v: &StateVector) -> Result<Self> {
        if v.n() != 1 {
            return Err(Error::QubitCount(v.n()));
        }
        Self::new(v.amp(0), v.amp(1))
    }

    /// A word of `len` gates drawn from {H, S, T} applied to |0⟩.
    pub fn random<R: Rng>(rng: &mut R, len: usize) -> Self {
        let gates = [hadamard(), phase_gate(), t_gate()];
        let mut v = StateVector::basis(1, 0);
        for _ in 0..len {
            let g = &gates[rng.random_range(0..gates.len())];
            v = v.apply_matrix(g, &[0]).expect("one qubit");
        }
        Self::from_state(&v).expect("unitary words keep the norm")
    }

    /// A 16-gate random secret from a ChaCha8 stream seeded with `seed`.
    pub fn seeded(seed: u64) -> Self {
        Self::random(&mut ChaCha8Rng::seed_from_u64(seed), 16)
    }
}

/// |0⟩, |1⟩, (|0⟩ + |1⟩)/√2 and (|0⟩ + i|1⟩)/√2.
pub fn test_secrets() -> [SecretParam; 4] {
    let (o, z, h) = (Amplitude::ONE, Amplitude::ZERO, Amplitude::FRAC_1_SQRT_2);
    [
        SecretParam { alpha: o, beta: z },
        SecretParam { alpha: z, beta: o },
        SecretParam { alpha: h, beta: h },
        SecretParam {
            alpha: h,
            beta: Amplitude::I * h,
        },
    ]
}

fn project_code_space(kind: CodeKind, start: StateVector) -> StateVector {
    let c = code(kind);
    let projected = c
        .generators
        .iter()
        .fold(start, |v, g| v.apply_projector(g, 1).expect("generators are Hermitian"));
    projected
        .normalized()
        .expect("code-space projections of basis states have dyadic norm")
}

/// (|0̄⟩, |1̄⟩): the normalized code-space projections of |0…0⟩ and |1…1⟩.
pub fn logical_states(kind: CodeKind) -> (StateVector, StateVector) {
    let n = kind.n_qubits();
    let zero = project_code_space(kind, StateVector::basis(n, 0));
    let one = project_code_space(kind, StateVector::basis(n, (1 << n) - 1));
    (zero, one)
}

pub fn logical_x(kind: CodeKind) -> PauliOperator {
    PauliOperator::from_symbols(&"X".repeat(kind.n_qubits()), 0).expect("valid symbols")
}

pub fn encode_secret(kind: CodeKind, s: &SecretParam) -> StateVector {
    let (zero, one) = logical_states(kind);
    &zero.scale(s.alpha) + &one.scale(s.beta)
}

/// Kets of 4|0̄⟩ and 4|1̄⟩ for the pentagon code, signs as printed.
pub const PENTAGON_ZERO_KETS: [(&str, i8); 16] = [
    ("00000", 1),
    ("10100", 1),
    ("01010", 1),
    ("00101", 1),
    ("10010", 1),
    ("01001", 1),
    ("11000", -1),
    ("01100", -1),
    ("00110", -1),
    ("00011", -1),
    ("10001", -1),
    ("01111", -1),
    ("10111", -1),
    ("11011", -1),
    ("11101", -1),
    ("11110", -1),
];
pub const PENTAGON_ONE_KETS: [(&str, i8); 16] = [
    ("11111", 1),
    ("01011", 1),
    ("10101", 1),
    ("11010", 1),
    ("01101", 1),
    ("10110", 1),
    ("00111", -1),
    ("10011", -1),
    ("11001", -1),
    ("11100", -1),
    ("01110", -1),
    ("10000", -1),
    ("01000", -1),
    ("00100", -1),
    ("00010", -1),
    ("00001", -1),
];
/// Kets of √8|0̄⟩ and √8|1̄⟩ for the heptagon code as printed; the fifth
/// ket of the second list repeats one of the first and is reported as a
/// discrepancy rather than corrected.
pub const HEPTAGON_ZERO_KETS: [&str; 8] = [
    "0000000", "1010101", "0110011", "1100110", "0001111", "1011010", "0111100", "1101001",
];
pub const HEPTAGON_ONE_KETS: [&str; 8] = [
    "1111111", "0101010", "1001100", "0011001", "0001111", "0100101", "1000011", "0010110",
];

/// Kets whose printed and computed amplitudes differ, as (ket, printed, computed).
pub fn listing_discrepancies(computed: &StateVector, printed: &StateVector) -> Vec<(String, Amplitude, Amplitude)> {
    (0..1usize << computed.n())
        .filter(|&i| computed.amp(i) != printed.amp(i))
        .map(|i| (format!("{i:0w$b}", w = computed.n()), printed.amp(i), computed.amp(i)))
        .collect()
}

pub fn printed_logical_states(kind: CodeKind) -> (StateVector, StateVector) {
    match kind {
        CodeKind::Pentagon => {
            let quarter = Amplitude::ONE.halve(2);
            let build = |kets: &[(&str, i8)]| {
                let terms: Vec<(&str, Amplitude)> = kets
                    .iter()
                    .map(|&(k, s)| (k, if s > 0 { quarter } else { -quarter }))
                    .collect();
                StateVector::from_kets(&terms).expect("five-qubit kets")
            };
            (build(&PENTAGON_ZERO_KETS), build(&PENTAGON_ONE_KETS))
        }
        CodeKind::Heptagon => {
            let a = Amplitude::inv_sqrt_pow2(3);
            let build = |kets: &[&str]| {
                let terms: Vec<(&str, Amplitude)> = kets.iter().map(|&k| (k, a)).collect();
                StateVector::from_kets(&terms).expect("seven-qubit kets")
            };
            (build(&HEPTAGON_ZERO_KETS), build(&HEPTAGON_ONE_KETS))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagon_states_match_the_listing() {
        let (zero, one) = logical_states(CodeKind::Pentagon);
        let (pz, po) = printed_logical_states(CodeKind::Pentagon);
        assert_eq!(zero, pz);
        assert_eq!(one, po);
        assert_eq!(zero.amp(0b11000).to_string(), "-1,0,0,0,2");
    }

    #[test]
    fn heptagon_zero_matches_and_one_has_a_single_misprint() {
        let (zero, one) = logical_states(CodeKind::Heptagon);
        let (pz, po) = printed_logical_states(CodeKind::Heptagon);
        assert_eq!(zero, pz);
        let diff = listing_discrepancies(&one, &po);
        let kets: Vec<&str> = diff.iter().map(|d| d.0.as_str()).collect();
        assert_eq!(kets, ["0001111", "1110000"]);
    }

    #[test]
    fn one_is_logical_x_of_zero() {
        for kind in [CodeKind::Pentagon, CodeKind::Heptagon] {
            let (zero, one) = logical_states(kind);
            assert_eq!(zero.apply_pauli(&logical_x(kind)).unwrap(), one);
            assert_eq!(zero.norm_sqr(), Amplitude::ONE);
            assert_eq!(zero.inner(&one).unwrap(), Amplitude::ZERO);
        }
    }

    #[test]
    fn every_group_element_fixes_the_encoded_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for kind in [CodeKind::Pentagon, CodeKind::Heptagon] {
            let c = code(kind);
            let mut secrets = test_secrets().to_vec();
            secrets.push(SecretParam::random(&mut rng, 16));
            for s in &secrets {
                let psi = encode_secret(kind, s);
                assert_eq!(psi.norm_sqr(), Amplitude::ONE);
                for g in &c.elements {
                    assert_eq!(psi.apply_pauli(g).unwrap(), psi, "{g}");
                }
            }
        }
    }

    #[test]
    fn secret_parsing() {
        let s = SecretParam::parse("1/sqrt2, i/sqrt2").unwrap();
        assert_eq!(s, test_secrets()[3]);
        assert!(matches!(SecretParam::parse("1,1"), Err(Error::Unnormalized)));
        assert!(SecretParam::parse("1").is_err());
    }

    #[test]
    fn random_secrets_are_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let s = SecretParam::random(&mut rng, 24);
            assert_eq!(s.alpha.norm_sqr() + s.beta.norm_sqr(), Amplitude::ONE);
        }
    }
}
