//! Short one-qubit gate words such as `XZ`, `-X`, `RZ` or `-iR`, read as
//! operator products (the rightmost gate acts first).

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::bases::{pauli_matrix, unitary_r};
use super::matrix::Matrix;
use super::ring::Amplitude;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    I,
    X,
    Y,
    Z,
    R,
    /// R†
    RInv,
}

impl Gate {
    fn matrix(self) -> Matrix {
        match self {
            Gate::I => Matrix::identity(2),
            Gate::X => pauli_matrix('X').expect("Pauli"),
            Gate::Y => pauli_matrix('Y').expect("Pauli"),
            Gate::Z => pauli_matrix('Z').expect("Pauli"),
            Gate::R => unitary_r(),
            Gate::RInv => unitary_r().adjoint(),
        }
    }

    fn inverse(self) -> Gate {
        match self {
            Gate::R => Gate::RInv,
            Gate::RInv => Gate::R,
            g => g,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Gate::I => "I",
            Gate::X => "X",
            Gate::Y => "Y",
            Gate::Z => "Z",
            Gate::R => "R",
            Gate::RInv => "R'",
        }
    }
}

/// i^phase · g₁g₂…gₖ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GateWord {
    pub phase: u8,
    pub gates: Vec<Gate>,
}

impl GateWord {
    pub fn identity() -> Self {
        Self {
            phase: 0,
            gates: vec![Gate::I],
        }
    }

    pub fn matrix(&self) -> Matrix {
        self.gates
            .iter()
            .fold(Matrix::identity(2), |acc, g| &acc * &g.matrix())
            .scale(Amplitude::i_pow(self.phase as i64))
    }

    pub fn inverse(&self) -> Self {
        Self {
            phase: (4 - self.phase) % 4,
            gates: self.gates.iter().rev().map(|g| g.inverse()).collect(),
        }
    }

    pub fn contains_r(&self) -> bool {
        self.gates.iter().any(|g| matches!(g, Gate::R | Gate::RInv))
    }
}

impl FromStr for GateWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (phase, rest) = if let Some(r) = s.strip_prefix("-i") {
            (3, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (2, r)
        } else if let Some(r) = s.strip_prefix('i') {
            (1, r)
        } else {
            (0, s.strip_prefix('+').unwrap_or(s))
        };
        let mut gates = Vec::new();
        let mut chars = rest.chars().peekable();
        while let Some(c) = chars.next() {
            let g = match c {
                'I' => Gate::I,
                'X' => Gate::X,
                'Y' => Gate::Y,
                'Z' => Gate::Z,
                'R' if chars.peek() == Some(&'\'') => {
                    chars.next();
                    Gate::RInv
                }
                'R' => Gate::R,
                _ => return Err(Error::Parse(format!("bad gate `{c}` in `{s}`"))),
            };
            gates.push(g);
        }
        if gates.is_empty() {
            return Err(Error::Parse(format!("empty gate word `{s}`")));
        }
        Ok(Self { phase, gates })
    }
}

impl fmt::Display for GateWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["", "i", "-", "-i"][self.phase as usize % 4];
        let body: String = self.gates.iter().map(|g| g.symbol()).collect();
        write!(f, "{prefix}{body}")
    }
}

impl Serialize for GateWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GateWord {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["XZ", "-X", "RZ", "-iR", "-RY", "iI", "R'X"] {
            assert_eq!(w(s).to_string(), s);
        }
        assert_eq!(w("+Z").to_string(), "Z");
        assert!("".parse::<GateWord>().is_err());
        assert!("Q".parse::<GateWord>().is_err());
    }

    #[test]
    fn products_act_right_to_left() {
        // XZ|0⟩ = |1⟩, XZ|1⟩ = −|0⟩
        let m = w("XZ").matrix();
        assert_eq!(m.get(1, 0), Amplitude::ONE);
        assert_eq!(m.get(0, 1), -Amplitude::ONE);
    }

    #[test]
    fn inverse_undoes_the_word() {
        for s in ["XZ", "-X", "RZ", "-iR", "-RY", "RX", "ZY"] {
            let word = w(s);
            assert_eq!(&word.inverse().matrix() * &word.matrix(), Matrix::identity(2), "{s}");
        }
        assert_eq!(w("RX").inverse().to_string(), "XR'");
        assert_eq!(w("-iR").inverse().to_string(), "iR'");
    }
}
