//! Small dense matrices over the exact amplitude ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::ring::Amplitude;
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Amplitude>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Amplitude::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Amplitude::ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Amplitude>>) -> Result<Self> {
        let dim = rows.len();
        if !dim.is_power_of_two() || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Domain("matrix must be square with power-of-two size".into()));
        }
        Ok(Self {
            dim,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_qubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    pub fn get(&self, r: usize, c: usize) -> Amplitude {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Amplitude) {
        self.data[r * self.dim + c] = v;
    }

    /// Dense form of a Pauli operator, qubit 0 as most significant bit.
    pub fn pauli(p: &PauliOperator) -> Self {
        let n = p.n();
        let dim = 1 << n;
        let mut m = Self::zeros(dim);
        for b in 0..dim {
            let (amp, out) = pauli_action(p, b);
            m.set(out, b, amp);
        }
        m
    }

    pub fn scale(&self, a: Amplitude) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * a).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                m.set(c, r, self.get(r, c).conj());
            }
        }
        m
    }

    pub fn kron(&self, other: &Matrix) -> Self {
        let dim = self.dim * other.dim;
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                let v = self.get(r / other.dim, c / other.dim) * other.get(r % other.dim, c % other.dim);
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn trace(&self) -> Amplitude {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn is_unitary(&self) -> bool {
        &self.adjoint() * self == Self::identity(self.dim)
    }

    /// True if `self = λ·other` for some λ with |λ| = 1.
    pub fn equal_up_to_phase(&self, other: &Matrix) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let Some(i) = self.data.iter().position(|a| !a.is_zero()) else {
            return other.data.iter().all(Amplitude::is_zero);
        };
        let (a, b) = (self.data[i], other.data[i]);
        if b.is_zero() || a.norm_sqr() != b.norm_sqr() {
            return false;
        }
        // other = (b/a)·self, checked without dividing: a·other = b·self
        self.data.iter().zip(&other.data).all(|(&x, &y)| a * y == b * x)
    }
}

/// O|b⟩ for a Pauli operator on a basis index, returned as (amplitude, index).
pub(crate) fn pauli_action(p: &PauliOperator, b: usize) -> (Amplitude, usize) {
    let n = p.n();
    let v = p.vec();
    let (mut q_idx, mut p_idx) = (0usize, 0usize);
    for j in 0..n {
        let (qj, pj) = v.qubit(j);
        let bit = 1 << (n - 1 - j);
        if qj == 1 {
            q_idx |= bit;
        }
        if pj == 1 {
            p_idx |= bit;
        }
    }
    let ys = (v.q() & v.p()).count_ones() as i64;
    let signs = ((q_idx & b).count_ones() as i64) * 2;
    (Amplitude::i_pow(p.phase() as i64 + ys + signs), b ^ p_idx)
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions differ");
        let d = self.dim;
        let mut m = Matrix::zeros(d);
        for r in 0..d {
            for c in 0..d {
                m.set(r, c, (0..d).map(|k| self.get(r, k) * rhs.get(k, c)).sum());
            }
        }
        m
    }
}

impl Mul for Matrix {
    type Output = Matrix;

    fn mul(self, rhs: Matrix) -> Matrix {
        &self * &rhs
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions differ");
        Matrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        self + &(-rhs)
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        self.scale(-Amplitude::ONE)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|c| format!("{:?}", self.get(r, c))).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
