//! Mutually unbiased bases from signed spreads of the two-qubit doily.

use serde::Serialize;

use super::ring::Amplitude;
use super::vector::StateVector;
use crate::error::{Error, Result};
use crate::gf2;
use crate::pauli::PauliOperator;
use crate::polar::{build_polar_space, Spread};

/// A sign lift of the spread {ZZ,IZ,ZI}, {IY,YI,YY}, {XX,IX,XI},
/// {XY,ZX,YZ}, {ZY,XZ,YX} in which every triple multiplies to +identity.
pub const SIGNED_SPREAD: [[&str; 3]; 5] = [
    ["ZZ", "IZ", "ZI"],
    ["IY", "-YI", "-YY"],
    ["XX", "IX", "XI"],
    ["XY", "-ZX", "YZ"],
    ["ZY", "-XZ", "YX"],
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MubReport {
    pub bases: usize,
    pub states: usize,
    pub orthonormal: bool,
    pub eigenstates: bool,
    pub unbiased: bool,
    pub pass: bool,
}

pub fn signed_spread() -> Vec<[PauliOperator; 3]> {
    SIGNED_SPREAD
        .iter()
        .map(|t| t.map(|s| s.parse().expect("valid Pauli string")))
        .collect()
}

/// Lifts a spread of the doily by flipping the third element of every
/// triple whose unsigned product is −identity.
pub fn lift_spread(spread: &Spread) -> Vec<[PauliOperator; 3]> {
    let doily = build_polar_space(2).expect("rank 2 is in range");
    spread
        .lines
        .iter()
        .map(|&l| {
            let pts = doily.lines()[l].points();
            let ops = [0, 1, 2].map(|k| PauliOperator::new(pts[k], 0));
            let prod = ops[0] * ops[1] * ops[2];
            if prod.sign() == Some(-1) {
                [ops[0], ops[1], -ops[2]]
            } else {
                ops
            }
        })
        .collect()
}

/// Common eigenbasis of a commuting triple, one state per sign pair of the
/// first two elements.
fn eigenbasis(t: &[PauliOperator; 3]) -> Result<Vec<StateVector>> {
    let mut out = Vec::with_capacity(4);
    for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let v = (0..4)
            .map(|i| {
                StateVector::basis(2, i)
                    .apply_projector(&t[0], a)
                    .and_then(|v| v.apply_projector(&t[1], b))
            })
            .find(|v| v.as_ref().map_or(true, |v| !v.is_zero()))
            .expect("some basis state survives a rank-one projector")?;
        out.push(v.normalized()?);
    }
    Ok(out)
}

pub fn spread_mub_check(lines: &[[PauliOperator; 3]]) -> Result<MubReport> {
    if lines.len() != 5 {
        return Err(Error::NotASpread(format!("{} lines instead of 5", lines.len())));
    }
    let mut covered = 0u32;
    for t in lines {
        if t.iter().any(|p| p.n() != 2 || p.is_identity()) {
            return Err(Error::NotASpread(
                "elements must be non-identity two-qubit operators".into(),
            ));
        }
        let vecs: Vec<gf2::GF2Vector> = t.iter().map(|p| p.vec()).collect();
        let span = gf2::span(&vecs)?;
        if span.rank() != 2 || !span.is_totally_isotropic() {
            return Err(Error::NotASpread(format!(
                "{} {} {} is not an isotropic line",
                t[0], t[1], t[2]
            )));
        }
        for p in t {
            covered |= 1 << p.vec().bits();
        }
        let prod = t[0] * t[1] * t[2];
        if prod.sign() != Some(1) {
            return Err(Error::Domain(format!(
                "{} {} {} multiplies to {prod}",
                t[0], t[1], t[2]
            )));
        }
    }
    if covered != 0xfffe {
        return Err(Error::NotASpread("lines do not partition the 15 points".into()));
    }
    let bases: Vec<Vec<StateVector>> = lines.iter().map(eigenbasis).collect::<Result<_>>()?;
    let eigenstates = lines.iter().zip(&bases).all(|(t, b)| {
        b.iter().all(|v| {
            t.iter().all(|p| {
                let w = v.apply_pauli(p).expect("two qubits");
                w == *v || w == -v
            })
        })
    });
    let ip = |a: &StateVector, b: &StateVector| a.inner(b).expect("two qubits").norm_sqr();
    let orthonormal = bases.iter().all(|b| {
        (0..4).all(|i| (0..4).all(|j| ip(&b[i], &b[j]) == if i == j { Amplitude::ONE } else { Amplitude::ZERO }))
    });
    let quarter = Amplitude::ONE.halve(2);
    let unbiased =
        (0..5).all(|x| (x + 1..5).all(|y| bases[x].iter().all(|e| bases[y].iter().all(|f| ip(e, f) == quarter))));
    Ok(MubReport {
        bases: bases.len(),
        states: bases.iter().map(Vec::len).sum(),
        orthonormal,
        eigenstates,
        unbiased,
        pass: orthonormal && eigenstates && unbiased,
    })
}
