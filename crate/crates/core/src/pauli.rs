//! Phased Pauli operators i^k · O_v, where O_v = ⊗ i^{q_i p_i} X^{p_i} Z^{q_i}.

use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf2::{GF2Vector, MAX_QUBITS};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliOperator {
    vec: GF2Vector,
    phase: u8,
}

impl PauliOperator {
    pub fn new(vec: GF2Vector, phase: u8) -> Self {
        Self { vec, phase: phase & 3 }
    }

    pub fn identity(n: usize) -> Result<Self> {
        Ok(Self::new(GF2Vector::zero(n)?, 0))
    }

    pub fn vec(&self) -> GF2Vector {
        self.vec
    }

    /// Exponent k of the prefactor i^k.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn n(&self) -> usize {
        self.vec.n()
    }

    pub fn is_identity(&self) -> bool {
        self.vec.is_zero() && self.phase == 0
    }

    /// +1 or −1 for Hermitian operators, `None` for ±i prefactors.
    pub fn sign(&self) -> Option<i8> {
        match self.phase {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    pub fn times_i_pow(self, k: u8) -> Self {
        Self::new(self.vec, self.phase + k)
    }

    /// Same observable with phase reset to +1.
    pub fn unsigned(self) -> Self {
        Self::new(self.vec, 0)
    }

    pub fn symbol(&self, qubit: usize) -> char {
        match self.vec.qubit(qubit) {
            (0, 0) => 'I',
            (0, 1) => 'X',
            (1, 1) => 'Y',
            _ => 'Z',
        }
    }

    pub fn from_symbols(symbols: &str, phase: u8) -> Result<Self> {
        let n = symbols.chars().count();
        if n > MAX_QUBITS {
            return Err(Error::QubitCount(n));
        }
        let (mut q, mut p) = (0u8, 0u8);
        for (i, c) in symbols.chars().enumerate() {
            let (qi, pi) = match c {
                'I' => (0, 0),
                'X' => (0, 1),
                'Y' => (1, 1),
                'Z' => (1, 0),
                other => return Err(Error::Parse(format!("illegal Pauli symbol `{other}`"))),
            };
            q |= qi << i;
            p |= pi << i;
        }
        Ok(Self::new(GF2Vector::from_qp(q, p, n)?, phase))
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.vec.commutes_with(other.vec)
    }

    /// Product without dimension checking; panics on mismatch.
    fn mul_unchecked(self, rhs: Self) -> Self {
        let (q, p) = (self.vec.q(), self.vec.p());
        let (q2, p2) = (rhs.vec.q(), rhs.vec.p());
        let delta = (q & p).count_ones() + (q2 & p2).count_ones() + 2 * (q & p2).count_ones() + 4 * MAX_QUBITS as u32
            - ((q ^ q2) & (p ^ p2)).count_ones();
        Self::new(self.vec + rhs.vec, self.phase + rhs.phase + (delta & 3) as u8)
    }

    /// Operator at the given qubit positions, phase dropped.
    pub fn restrict(&self, positions: &[usize]) -> Result<Self> {
        check_positions(positions, self.n())?;
        let symbols: String = positions.iter().map(|&i| self.symbol(i)).collect();
        Self::from_symbols(&symbols, 0)
    }

    /// Moves the symbol on qubit `i` to qubit `map[i]`; the phase is kept.
    pub fn relabel(&self, map: &[usize]) -> Result<Self> {
        let n = self.n();
        if map.len() != n {
            return Err(Error::InvalidPositions(format!("{map:?} is not a map on {n} qubits")));
        }
        check_positions(map, n)?;
        let mut symbols = vec!['I'; n];
        for (i, &j) in map.iter().enumerate() {
            symbols[j] = self.symbol(i);
        }
        Self::from_symbols(&symbols.into_iter().collect::<String>(), self.phase)
    }
}

pub(crate) fn check_positions(positions: &[usize], n: usize) -> Result<()> {
    let mut seen = 0u32;
    for &i in positions {
        if i >= n || seen >> i & 1 == 1 {
            return Err(Error::InvalidPositions(format!("{positions:?} for {n} qubits")));
        }
        seen |= 1 << i;
    }
    Ok(())
}

pub fn encode_symbol_string(s: &str) -> Result<PauliOperator> {
    s.parse()
}

pub fn multiply(a: PauliOperator, b: PauliOperator) -> Result<PauliOperator> {
    check_dims(&a, &b)?;
    Ok(a.mul_unchecked(b))
}

pub fn commutes(a: PauliOperator, b: PauliOperator) -> Result<bool> {
    check_dims(&a, &b)?;
    Ok(a.commutes_with(&b))
}

pub fn restrict(a: PauliOperator, positions: &[usize]) -> Result<PauliOperator> {
    a.restrict(positions)
}

fn check_dims(a: &PauliOperator, b: &PauliOperator) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    Ok(())
}

impl Mul for PauliOperator {
    type Output = PauliOperator;

    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.n(), rhs.n(), "multiplying operators of different size");
        self.mul_unchecked(rhs)
    }
}

impl Neg for PauliOperator {
    type Output = PauliOperator;

    fn neg(self) -> Self {
        self.times_i_pow(2)
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (phase, rest) = if let Some(r) = s.strip_prefix("-i") {
            (3, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (2, r)
        } else if let Some(r) = s.strip_prefix('+') {
            (0, r)
        } else if let Some(r) = s.strip_prefix('i') {
            (1, r)
        } else {
            (0, s)
        };
        Self::from_symbols(rest, phase)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["", "i", "-", "-i"][self.phase as usize])?;
        for i in 0..self.n() {
            write!(f, "{}", self.symbol(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliOperator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a whitespace- or comma-separated operator list.
pub fn parse_list(s: &str) -> Result<Vec<PauliOperator>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}
