//! Exact state vectors on up to seven qubits; qubit 0 is the most significant
//! bit of the basis index.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use super::matrix::{pauli_action, Matrix};
use super::ring::Amplitude;
use crate::error::{Error, Result};
use crate::gf2::MAX_QUBITS;
use crate::pauli::{check_positions, PauliOperator};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateVector {
    n: usize,
    amps: Vec<Amplitude>,
}

/// One nonzero entry of a state dump.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DumpEntry {
    pub basis: String,
    pub amplitude: Amplitude,
}

impl StateVector {
    pub fn new(n: usize, amps: Vec<Amplitude>) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::QubitCount(n));
        }
        if amps.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                left: amps.len(),
                right: 1 << n,
            });
        }
        Ok(Self { n, amps })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            amps: vec![Amplitude::ZERO; 1 << n],
        }
    }

    pub fn basis(n: usize, index: usize) -> Self {
        let mut v = Self::zero(n);
        v.amps[index] = Amplitude::ONE;
        v
    }

    /// Sum of amplitude-weighted kets given as bit strings such as "0110".
    pub fn from_kets(terms: &[(&str, Amplitude)]) -> Result<Self> {
        let n = terms.first().map_or(0, |(k, _)| k.len());
        let mut v = Self::zero(n);
        for &(ket, a) in terms {
            if ket.len() != n {
                return Err(Error::DimensionMismatch {
                    left: ket.len(),
                    right: n,
                });
            }
            let idx = usize::from_str_radix(ket, 2).map_err(|_| Error::Parse(format!("bad ket `{ket}`")))?;
            v.amps[idx] += a;
        }
        Ok(v)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amps(&self) -> &[Amplitude] {
        &self.amps
    }

    pub fn amp(&self, index: usize) -> Amplitude {
        self.amps[index]
    }

    pub fn is_zero(&self) -> bool {
        self.amps.iter().all(Amplitude::is_zero)
    }

    pub fn scale(&self, a: Amplitude) -> Self {
        Self {
            n: self.n,
            amps: self.amps.iter().map(|&x| x * a).collect(),
        }
    }

    /// ⟨self|other⟩, antilinear in `self`.
    pub fn inner(&self, other: &StateVector) -> Result<Amplitude> {
        self.check_same(other)?;
        Ok(self.amps.iter().zip(&other.amps).map(|(a, &b)| a.conj() * b).sum())
    }

    pub fn norm_sqr(&self) -> Amplitude {
        self.amps.iter().map(Amplitude::norm_sqr).sum()
    }

    /// Rescales to unit norm when the squared norm is a power of two.
    pub fn normalized(&self) -> Result<Self> {
        let e = self
            .norm_sqr()
            .log2_exact()
            .ok_or_else(|| Error::Domain(format!("squared norm {:?} is not a power of two", self.norm_sqr())))?;
        Ok(self.scale(Amplitude::inv_sqrt_pow2(e)))
    }

    pub fn tensor(&self, other: &StateVector) -> Result<Self> {
        let n = self.n + other.n;
        if n > MAX_QUBITS {
            return Err(Error::QubitCount(n));
        }
        let amps = self
            .amps
            .iter()
            .flat_map(|&a| other.amps.iter().map(move |&b| a * b))
            .collect();
        Ok(Self { n, amps })
    }

    /// Moves qubit j to position `perm[j]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        check_positions(perm, self.n)?;
        if perm.len() != self.n {
            return Err(Error::InvalidPositions(format!(
                "{perm:?} is not a permutation of {} qubits",
                self.n
            )));
        }
        let n = self.n;
        let mut out = Self::zero(n);
        for (b, &a) in self.amps.iter().enumerate() {
            let mut nb = 0;
            for (j, &t) in perm.iter().enumerate() {
                if b >> (n - 1 - j) & 1 == 1 {
                    nb |= 1 << (n - 1 - t);
                }
            }
            out.amps[nb] = a;
        }
        Ok(out)
    }

    /// Tensor product of factors, each placed on the listed qubits.
    pub fn assemble(parts: &[(&[usize], &StateVector)]) -> Result<Self> {
        let mut acc = StateVector::basis(0, 0);
        let mut order = Vec::new();
        for &(qubits, s) in parts {
            if qubits.len() != s.n {
                return Err(Error::DimensionMismatch {
                    left: qubits.len(),
                    right: s.n,
                });
            }
            acc = acc.tensor(s)?;
            order.extend_from_slice(qubits);
        }
        acc.permute(&order)
    }

    pub fn apply_pauli(&self, p: &PauliOperator) -> Result<Self> {
        if p.n() != self.n {
            return Err(Error::DimensionMismatch {
                left: p.n(),
                right: self.n,
            });
        }
        let mut out = Self::zero(self.n);
        for (b, &a) in self.amps.iter().enumerate() {
            if !a.is_zero() {
                let (ph, nb) = pauli_action(p, b);
                out.amps[nb] = ph * a;
            }
        }
        Ok(out)
    }

    /// (1 + sign·g)/2 applied to the state, without renormalizing.
    pub fn apply_projector(&self, g: &PauliOperator, sign: i8) -> Result<Self> {
        if g.phase() & 1 == 1 {
            return Err(Error::Domain(format!("{g} does not square to the identity")));
        }
        let gv = self.apply_pauli(g)?;
        let gv = if sign < 0 { -&gv } else { gv };
        Ok((self + &gv).scale(Amplitude::ONE.halve(1)))
    }

    /// Applies a 2^k × 2^k matrix to the listed qubits; `qubits[0]` is the
    /// most significant bit of the matrix index.
    pub fn apply_matrix(&self, m: &Matrix, qubits: &[usize]) -> Result<Self> {
        check_positions(qubits, self.n)?;
        let k = qubits.len();
        if m.dim() != 1 << k {
            return Err(Error::DimensionMismatch {
                left: m.dim(),
                right: 1 << k,
            });
        }
        let n = self.n;
        let masks: Vec<usize> = qubits.iter().map(|&q| 1 << (n - 1 - q)).collect();
        let local = |b: usize| masks.iter().fold(0, |acc, &mk| (acc << 1) | usize::from(b & mk != 0));
        let with_local = |b: usize, c: usize| {
            masks.iter().enumerate().fold(
                b,
                |acc, (i, &mk)| {
                    if c >> (k - 1 - i) & 1 == 1 {
                        acc | mk
                    } else {
                        acc & !mk
                    }
                },
            )
        };
        let mut out = Self::zero(n);
        for (b, slot) in out.amps.iter_mut().enumerate() {
            let r = local(b);
            *slot = (0..m.dim()).map(|c| m.get(r, c) * self.amps[with_local(b, c)]).sum();
        }
        Ok(out)
    }

    /// ⟨e|_measured ⊗ 1 applied to the state; the remaining qubits keep their
    /// relative order.
    pub fn project_onto(&self, measured: &[usize], e: &StateVector) -> Result<Self> {
        check_positions(measured, self.n)?;
        if e.n != measured.len() {
            return Err(Error::DimensionMismatch {
                left: e.n,
                right: measured.len(),
            });
        }
        let rest = self.complement(measured);
        let n = self.n;
        let mut out = Self::zero(rest.len());
        for (b, &a) in self.amps.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let bits = |qs: &[usize]| qs.iter().fold(0, |acc, &q| (acc << 1) | (b >> (n - 1 - q) & 1));
            out.amps[bits(&rest)] += e.amps[bits(measured)].conj() * a;
        }
        Ok(out)
    }

    pub fn complement(&self, qubits: &[usize]) -> Vec<usize> {
        (0..self.n).filter(|q| !qubits.contains(q)).collect()
    }

    /// Partial trace onto `keep` (in the listed order) of |v⟩⟨v|.
    pub fn reduced_density_matrix(&self, keep: &[usize]) -> Result<Matrix> {
        check_positions(keep, self.n)?;
        let n = self.n;
        let rest = self.complement(keep);
        let bits = |b: usize, qs: &[usize]| qs.iter().fold(0, |acc, &q| (acc << 1) | (b >> (n - 1 - q) & 1));
        let mut split = vec![vec![Amplitude::ZERO; 1 << rest.len()]; 1 << keep.len()];
        for (b, &a) in self.amps.iter().enumerate() {
            split[bits(b, keep)][bits(b, &rest)] = a;
        }
        let mut rho = Matrix::zeros(1 << keep.len());
        for (r, row) in split.iter().enumerate() {
            for (c, col) in split.iter().enumerate() {
                rho.set(r, c, row.iter().zip(col).map(|(&x, y)| x * y.conj()).sum());
            }
        }
        Ok(rho)
    }

    /// True iff `self = λ·other` with |λ| = 1, decided exactly through the
    /// equality case of Cauchy-Schwarz.
    pub fn equal_up_to_global_phase(&self, other: &StateVector) -> bool {
        if self.n != other.n {
            return false;
        }
        let (a, b) = (self.norm_sqr(), other.norm_sqr());
        let ip = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(x, &y)| x.conj() * y)
            .sum::<Amplitude>();
        a == b && ip.norm_sqr() == a * b
    }

    pub fn dump(&self) -> Vec<DumpEntry> {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, &amplitude)| DumpEntry {
                basis: format!("{i:0width$b}", width = self.n),
                amplitude,
            })
            .collect()
    }

    fn check_same(&self, other: &StateVector) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }
}

impl Add for &StateVector {
    type Output = StateVector;

    fn add(self, rhs: &StateVector) -> StateVector {
        assert_eq!(self.n, rhs.n, "state sizes differ");
        StateVector {
            n: self.n,
            amps: self.amps.iter().zip(&rhs.amps).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl Sub for &StateVector {
    type Output = StateVector;

    fn sub(self, rhs: &StateVector) -> StateVector {
        self + &(-rhs)
    }
}

impl Neg for &StateVector {
    type Output = StateVector;

    fn neg(self) -> StateVector {
        self.scale(-Amplitude::ONE)
    }
}

impl Mul<&StateVector> for Amplitude {
    type Output = StateVector;

    fn mul(self, rhs: &StateVector) -> StateVector {
        rhs.scale(self)
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .dump()
            .iter()
            .map(|e| format!("{:?}|{}⟩", e.amplitude, e.basis))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}
