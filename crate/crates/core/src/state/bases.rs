//! Bell, χ and biseparable measurement bases, and the fixed one- and
//! two-qubit unitaries used by the recovery protocols.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::ring::Amplitude;
use super::vector::StateVector;
use crate::error::{Error, Result};

/// A pair of stabilizer signs, e.g. (+1, −1) for the label "+-".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signs(pub i8, pub i8);

impl Signs {
    pub const ALL: [Signs; 4] = [Signs(1, 1), Signs(1, -1), Signs(-1, 1), Signs(-1, -1)];
}

impl fmt::Display for Signs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |s: i8| if s > 0 { '+' } else { '-' };
        write!(f, "{}{}", c(self.0), c(self.1))
    }
}

fn h() -> Amplitude {
    Amplitude::FRAC_1_SQRT_2
}

fn sgn(s: i8) -> Amplitude {
    if s > 0 {
        Amplitude::ONE
    } else {
        -Amplitude::ONE
    }
}

/// φ^{ab}, stabilized by ⟨a·XX, b·ZZ⟩.
pub fn bell(s: Signs) -> StateVector {
    let (x, y) = if s.1 > 0 { ("00", "11") } else { ("01", "10") };
    StateVector::from_kets(&[(x, h()), (y, sgn(s.0) * h())]).expect("two-qubit kets")
}

/// χ^{ab}, stabilized by ⟨a·XY, b·ZX⟩.
pub fn chi(s: Signs) -> StateVector {
    let half = Amplitude::ONE.halve(1);
    let i = Amplitude::I;
    // ½(|00⟩ + b|01⟩ − ab·i|10⟩ + a·i|11⟩)
    let (a, b) = (sgn(s.0), sgn(s.1));
    StateVector::from_kets(&[
        ("00", half),
        ("01", b * half),
        ("10", -(a * b * i * half)),
        ("11", a * i * half),
    ])
    .expect("two-qubit kets")
}

/// |c̃⟩ = (|0⟩ ± i|1⟩)/√2, the Y eigenbasis.
pub fn tilde(c: u8) -> StateVector {
    let s = if c == 0 { Amplitude::I } else { -Amplitude::I };
    StateVector::from_kets(&[("0", h()), ("1", s * h())]).expect("one-qubit kets")
}

/// |ĉ⟩ = (|0⟩ ± |1⟩)/√2, the X eigenbasis.
pub fn hat(c: u8) -> StateVector {
    let s = if c == 0 { Amplitude::ONE } else { -Amplitude::ONE };
    StateVector::from_kets(&[("0", h()), ("1", s * h())]).expect("one-qubit kets")
}

pub fn computational(c: u8) -> StateVector {
    StateVector::basis(1, c as usize)
}

/// Measurement basis families: two-qubit Bell and χ bases, and three-qubit
/// products of a Bell state with a Z, Y or X eigenstate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisFamily {
    Bell,
    Chi,
    BellZ,
    BellY,
    BellX,
}

/// One labelled member of a basis family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisState {
    pub label: String,
    pub signs: Signs,
    pub bit: Option<u8>,
    pub state: StateVector,
}

impl BasisFamily {
    pub fn n_qubits(self) -> usize {
        match self {
            BasisFamily::Bell | BasisFamily::Chi => 2,
            _ => 3,
        }
    }

    pub fn prefix(self) -> &'static str {
        match self {
            BasisFamily::Bell => "phi",
            BasisFamily::Chi => "chi",
            BasisFamily::BellZ => "Phi",
            BasisFamily::BellY => "Sigma",
            BasisFamily::BellX => "Omega",
        }
    }

    pub fn member(self, s: Signs, bit: Option<u8>) -> Result<BasisState> {
        let single = |c: u8| match self {
            BasisFamily::BellZ => computational(c),
            BasisFamily::BellY => tilde(c),
            _ => hat(c),
        };
        let (state, bit) = match (self, bit) {
            (BasisFamily::Bell, None) => (bell(s), None),
            (BasisFamily::Chi, None) => (chi(s), None),
            (BasisFamily::Bell | BasisFamily::Chi, Some(_)) => {
                return Err(Error::Domain(format!("{} states carry no bit label", self.prefix())))
            }
            (_, Some(c @ (0 | 1))) => (bell(s).tensor(&single(c))?, Some(c)),
            (_, _) => {
                return Err(Error::Domain(format!(
                    "{} states need a bit label 0 or 1",
                    self.prefix()
                )))
            }
        };
        let label = match bit {
            Some(c) => format!("{}{s}{c}", self.prefix()),
            None => format!("{}{s}", self.prefix()),
        };
        Ok(BasisState {
            label,
            signs: s,
            bit,
            state,
        })
    }

    /// All members in a fixed order: sign pairs ++, +-, -+, --, then bit 0, 1.
    pub fn members(self) -> Vec<BasisState> {
        let bits: &[Option<u8>] = if self.n_qubits() == 2 {
            &[None]
        } else {
            &[Some(0), Some(1)]
        };
        Signs::ALL
            .iter()
            .flat_map(|&s| bits.iter().map(move |&b| self.member(s, b).expect("valid label")))
            .collect()
    }

    pub fn find(self, label: &str) -> Result<BasisState> {
        self.members()
            .into_iter()
            .find(|m| m.label == label)
            .ok_or_else(|| Error::Unknown(label.to_string()))
    }
}

/// All standard bases keyed by family.
pub fn standard_bases() -> Vec<(BasisFamily, Vec<BasisState>)> {
    [
        BasisFamily::Bell,
        BasisFamily::Chi,
        BasisFamily::BellZ,
        BasisFamily::BellY,
        BasisFamily::BellX,
    ]
    .into_iter()
    .map(|f| (f, f.members()))
    .collect()
}

fn m2(rows: [[Amplitude; 2]; 2]) -> Matrix {
    Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).expect("2x2")
}

pub fn pauli_matrix(c: char) -> Result<Matrix> {
    let (o, z, i) = (Amplitude::ONE, Amplitude::ZERO, Amplitude::I);
    Ok(match c {
        'I' => Matrix::identity(2),
        'X' => m2([[z, o], [o, z]]),
        'Y' => m2([[z, -i], [i, z]]),
        'Z' => m2([[o, z], [z, -o]]),
        _ => return Err(Error::Parse(format!("not a Pauli symbol: {c}"))),
    })
}

/// U = (1/√2)[[1, 1], [i, −i]], with U†XU = Y, U†YU = Z, U†ZU = X.
pub fn unitary_u() -> Matrix {
    let (o, i) = (Amplitude::ONE, Amplitude::I);
    m2([[o, o], [i, -i]]).scale(h())
}

/// R = e^{iπ/4}U = ½[I + i(X + Y + Z)].
pub fn unitary_r() -> Matrix {
    unitary_u().scale(Amplitude::OMEGA)
}

/// Two-qubit swap, |ab⟩ ↦ |ba⟩.
pub fn swap() -> Matrix {
    let mut m = Matrix::zeros(4);
    for (r, c) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
        m.set(r, c, Amplitude::ONE);
    }
    m
}

pub fn hadamard() -> Matrix {
    let o = Amplitude::ONE;
    m2([[o, o], [o, -o]]).scale(h())
}

pub fn phase_gate() -> Matrix {
    let (o, z) = (Amplitude::ONE, Amplitude::ZERO);
    m2([[o, z], [z, Amplitude::I]])
}

pub fn t_gate() -> Matrix {
    let (o, z) = (Amplitude::ONE, Amplitude::ZERO);
    m2([[o, z], [z, Amplitude::OMEGA]])
}

pub struct SpecialUnitaries {
    pub u: Matrix,
    pub r: Matrix,
    pub swap: Matrix,
}

pub fn special_unitaries() -> SpecialUnitaries {
    SpecialUnitaries {
        u: unitary_u(),
        r: unitary_r(),
        swap: swap(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliOperator;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    fn stabilizes(g: &str, v: &StateVector) -> bool {
        v.apply_pauli(&p(g)).unwrap() == *v
    }

    #[test]
    fn bell_states_match_their_stabilizers() {
        for s in Signs::ALL {
            let v = bell(s);
            let xx = if s.0 > 0 { "XX" } else { "-XX" };
            let zz = if s.1 > 0 { "ZZ" } else { "-ZZ" };
            assert!(stabilizes(xx, &v) && stabilizes(zz, &v), "{s}");
        }
        let h = Amplitude::FRAC_1_SQRT_2;
        assert_eq!(
            bell(Signs(-1, -1)),
            StateVector::from_kets(&[("01", h), ("10", -h)]).unwrap()
        );
        assert_eq!(
            bell(Signs(1, -1)),
            StateVector::from_kets(&[("01", h), ("10", h)]).unwrap()
        );
    }

    #[test]
    fn chi_states_match_their_stabilizers() {
        for s in Signs::ALL {
            let v = chi(s);
            let xy = if s.0 > 0 { "XY" } else { "-XY" };
            let zx = if s.1 > 0 { "ZX" } else { "-ZX" };
            assert!(stabilizes(xy, &v) && stabilizes(zx, &v), "{s}");
        }
        let q = Amplitude::ONE.halve(1);
        let i = Amplitude::I;
        let want = StateVector::from_kets(&[("00", q), ("01", q), ("10", -(i * q)), ("11", i * q)]).unwrap();
        assert_eq!(chi(Signs(1, 1)), want);
        // χ^{++} = (|1̃0⟩ + |0̃1⟩)/√2
        let alt = &tilde(1).tensor(&computational(0)).unwrap() + &tilde(0).tensor(&computational(1)).unwrap();
        assert_eq!(alt.scale(Amplitude::FRAC_1_SQRT_2), want);
    }

    #[test]
    fn every_family_is_orthonormal() {
        for (family, members) in standard_bases() {
            assert_eq!(members.len(), 1 << family.n_qubits());
            for (i, a) in members.iter().enumerate() {
                for (j, b) in members.iter().enumerate() {
                    let want = if i == j { Amplitude::ONE } else { Amplitude::ZERO };
                    assert_eq!(a.state.inner(&b.state).unwrap(), want, "{} {}", a.label, b.label);
                }
            }
        }
    }

    #[test]
    fn single_qubit_bases_are_pauli_eigenstates() {
        for c in 0..2u8 {
            let s = if c == 0 { "" } else { "-" };
            assert!(stabilizes(&format!("{s}Y"), &tilde(c)));
            assert!(stabilizes(&format!("{s}X"), &hat(c)));
        }
    }

    #[test]
    fn u_cycles_the_paulis() {
        let u = unitary_u();
        let ud = u.adjoint();
        let [x, y, z] = ['X', 'Y', 'Z'].map(|c| pauli_matrix(c).unwrap());
        assert_eq!(&(&ud * &x) * &u, y);
        assert_eq!(&(&ud * &y) * &u, z);
        assert_eq!(&(&ud * &z) * &u, x);
        assert!(u.is_unitary());
    }

    #[test]
    fn r_is_a_third_turn() {
        let r = unitary_r();
        let [x, y, z] = ['X', 'Y', 'Z'].map(|c| pauli_matrix(c).unwrap());
        let sum = &(&x + &y) + &z;
        let want = (&Matrix::identity(2) + &sum.scale(Amplitude::I)).scale(Amplitude::ONE.halve(1));
        assert_eq!(r, want);
        let r3 = &(&r * &r) * &r;
        assert!(r3.equal_up_to_phase(&Matrix::identity(2)));
        assert_eq!(r3, -&Matrix::identity(2));
    }

    #[test]
    fn swap_exchanges_qubits() {
        let v = StateVector::from_kets(&[("01", Amplitude::ONE)]).unwrap();
        assert_eq!(
            v.apply_matrix(&swap(), &[0, 1]).unwrap(),
            StateVector::from_kets(&[("10", Amplitude::ONE)]).unwrap()
        );
    }

    #[test]
    fn labels() {
        assert_eq!(
            BasisFamily::BellY.find("Sigma-+1").unwrap().state,
            bell(Signs(-1, 1)).tensor(&tilde(1)).unwrap()
        );
        assert!(BasisFamily::Bell.find("phi+-0").is_err());
        assert_eq!(BasisFamily::Chi.members()[3].label, "chi--");
    }
}
