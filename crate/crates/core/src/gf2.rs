//! Bit-exact linear algebra over GF(2) for the symplectic space V(2n, 2).
//!
//! A vector packs `n` q-bits in the low half and `n` p-bits in the high half
//! of a `u16`: bit `i` is `q_i`, bit `n + i` is `p_i`. Qubit 0 is the leftmost
//! symbol of an operator string.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 7;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GF2Vector {
    bits: u16,
    n: u8,
}

impl GF2Vector {
    pub fn new(bits: u16, n: usize) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::QubitCount(n));
        }
        if n < 8 && bits >> (2 * n) != 0 {
            return Err(Error::Domain(format!("bits {bits:#x} exceed {} positions", 2 * n)));
        }
        Ok(Self { bits, n: n as u8 })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(0, n)
    }

    /// Builds a vector from separate q and p bit masks (bit `i` belongs to qubit `i`).
    pub fn from_qp(q: u8, p: u8, n: usize) -> Result<Self> {
        let mask = Self::half_mask_for(n);
        if u16::from(q) & !mask != 0 || u16::from(p) & !mask != 0 {
            return Err(Error::Domain("q/p mask wider than n".into()));
        }
        Self::new(u16::from(q) | (u16::from(p) << n), n)
    }

    fn half_mask_for(n: usize) -> u16 {
        ((1u32 << n) - 1) as u16
    }

    #[inline]
    pub fn bits(self) -> u16 {
        self.bits
    }

    #[inline]
    pub fn n(self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn q(self) -> u16 {
        self.bits & Self::half_mask_for(self.n())
    }

    #[inline]
    pub fn p(self) -> u16 {
        self.bits >> self.n
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    /// The (q_i, p_i) pair of qubit `i`.
    pub fn qubit(self, i: usize) -> (u8, u8) {
        (((self.q() >> i) & 1) as u8, ((self.p() >> i) & 1) as u8)
    }

    /// Symplectic product without the dimension check.
    #[inline]
    pub fn symp(self, other: Self) -> u8 {
        debug_assert_eq!(self.n, other.n);
        (((self.q() & other.p()) ^ (self.p() & other.q())).count_ones() & 1) as u8
    }

    #[inline]
    pub fn commutes_with(self, other: Self) -> bool {
        self.symp(other) == 0
    }

    #[inline]
    pub fn quad(self) -> u8 {
        ((self.q() & self.p()).count_ones() & 1) as u8
    }

    /// All nonzero vectors of V(2n, 2), in increasing bit order.
    pub fn all_nonzero(n: usize) -> Result<Vec<Self>> {
        if n > MAX_QUBITS {
            return Err(Error::QubitCount(n));
        }
        Ok((1u32..(1u32 << (2 * n)))
            .map(|b| Self {
                bits: b as u16,
                n: n as u8,
            })
            .collect())
    }

    /// Number of qubit slots carrying a non-identity symbol.
    pub fn weight(self) -> u32 {
        (self.q() | self.p()).count_ones()
    }
}

impl Add for GF2Vector {
    type Output = GF2Vector;

    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.n, rhs.n, "adding vectors of different length");
        Self {
            bits: self.bits ^ rhs.bits,
            n: self.n,
        }
    }
}

impl fmt::Debug for GF2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.n() {
            write!(f, "{}", (self.q() >> i) & 1)?;
        }
        write!(f, "|")?;
        for i in 0..self.n() {
            write!(f, "{}", (self.p() >> i) & 1)?;
        }
        write!(f, ")")
    }
}

fn check_dims(u: GF2Vector, v: GF2Vector) -> Result<()> {
    if u.n != v.n {
        return Err(Error::DimensionMismatch {
            left: u.n(),
            right: v.n(),
        });
    }
    Ok(())
}

/// ⟨u, v⟩ = Σ (q_i p'_i + q'_i p_i) mod 2; zero iff the observables commute.
pub fn symplectic_form(u: GF2Vector, v: GF2Vector) -> Result<u8> {
    check_dims(u, v)?;
    Ok(u.symp(v))
}

/// Q(v) = Σ q_i p_i mod 2, the parity of Y factors.
pub fn quadratic_form(v: GF2Vector) -> u8 {
    v.quad()
}

/// T_w(v) = v + ⟨v, w⟩ w.
pub fn transvection(w: GF2Vector, v: GF2Vector) -> Result<GF2Vector> {
    check_dims(w, v)?;
    Ok(if v.symp(w) == 1 { v + w } else { v })
}

/// Reduced row echelon form of a set of rows; the pivot of a row is its
/// highest set bit and rows are sorted by decreasing pivot.
pub(crate) fn rref(rows: impl IntoIterator<Item = u16>) -> Vec<u16> {
    let mut basis: Vec<u16> = Vec::new();
    for mut r in rows {
        for &b in &basis {
            let pivot = 1u16 << (15 - b.leading_zeros());
            if r & pivot != 0 {
                r ^= b;
            }
        }
        if r == 0 {
            continue;
        }
        let pivot = 1u16 << (15 - r.leading_zeros());
        for b in basis.iter_mut() {
            if *b & pivot != 0 {
                *b ^= r;
            }
        }
        basis.push(r);
        basis.sort_unstable_by(|a, b| b.cmp(a));
    }
    basis
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    n: usize,
    generators: Vec<GF2Vector>,
    points: Vec<GF2Vector>,
}

impl Subspace {
    fn from_canonical(n: usize, rows: Vec<u16>) -> Self {
        let generators: Vec<GF2Vector> = rows.iter().map(|&b| GF2Vector { bits: b, n: n as u8 }).collect();
        let mut points = Vec::with_capacity((1usize << generators.len()) - 1);
        for mask in 1u32..(1u32 << generators.len()) {
            let mut acc = 0u16;
            for (j, g) in generators.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    acc ^= g.bits;
                }
            }
            points.push(GF2Vector { bits: acc, n: n as u8 });
        }
        points.sort_unstable();
        Self { n, generators, points }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Canonical (row-reduced) generators.
    pub fn generators(&self) -> &[GF2Vector] {
        &self.generators
    }

    /// All nonzero vectors of the span, sorted.
    pub fn points(&self) -> &[GF2Vector] {
        &self.points
    }

    pub fn contains(&self, v: GF2Vector) -> bool {
        v.is_zero() || self.points.binary_search(&v).is_ok()
    }

    pub fn is_totally_isotropic(&self) -> bool {
        is_totally_isotropic(self)
    }

    /// Intersection as a subspace (possibly rank 0).
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let common: Vec<u16> = self
            .points
            .iter()
            .filter(|p| other.contains(**p))
            .map(|p| p.bits)
            .collect();
        Subspace::from_canonical(self.n, rref(common))
    }

    /// Canonical key: the row-reduced generator bits.
    pub fn key(&self) -> Vec<u16> {
        self.generators.iter().map(|g| g.bits).collect()
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace")
            .field("rank", &self.rank())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Subspace from already row-reduced generator bits.
pub(crate) fn span_rows(n: usize, rows: Vec<u16>) -> Subspace {
    Subspace::from_canonical(n, rows)
}

/// Span of a list of vectors; dependent vectors are dropped.
pub fn span(gens: &[GF2Vector]) -> Result<Subspace> {
    let Some(first) = gens.first() else {
        return Ok(Subspace::from_canonical(0, Vec::new()));
    };
    for g in gens {
        check_dims(*first, *g)?;
    }
    Ok(Subspace::from_canonical(first.n(), rref(gens.iter().map(|g| g.bits))))
}

/// Checks ⟨u, v⟩ = 0 on all generator pairs, which suffices by bilinearity.
pub fn is_totally_isotropic(s: &Subspace) -> bool {
    let g = s.generators();
    g.iter()
        .enumerate()
        .all(|(i, u)| g[i + 1..].iter().all(|v| u.symp(*v) == 0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceFilter {
    All,
    TotallyIsotropic,
}

/// Every subspace of V(2n, 2) of the given rank exactly once, ordered
/// lexicographically by canonical generator matrix.
pub fn enumerate_subspaces(n: usize, rank: usize, filter: SubspaceFilter) -> Result<impl Iterator<Item = Subspace>> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCount(n));
    }
    if rank == 0 || rank > 2 * n {
        return Err(Error::Domain(format!(
            "rank {rank} outside 1..={} for V({}, 2)",
            2 * n,
            2 * n
        )));
    }
    Ok(subspace_layers(n, rank, filter)
        .pop()
        .unwrap_or_default()
        .into_iter()
        .map(move |rows| Subspace::from_canonical(n, rows)))
}

/// Canonical keys of all subspaces of rank 1..=max_rank, one layer per rank.
pub(crate) fn subspace_layers(n: usize, max_rank: usize, filter: SubspaceFilter) -> Vec<BTreeSet<Vec<u16>>> {
    let points: Vec<u16> = (1u32..(1u32 << (2 * n))).map(|b| b as u16).collect();
    let mut layers: Vec<BTreeSet<Vec<u16>>> = Vec::with_capacity(max_rank);
    layers.push(points.iter().map(|&p| vec![p]).collect());
    let symp = |a: u16, b: u16| {
        let v = GF2Vector { bits: a, n: n as u8 };
        let w = GF2Vector { bits: b, n: n as u8 };
        v.symp(w)
    };
    for _ in 1..max_rank {
        let prev = layers.last().expect("at least one layer");
        let mut next = BTreeSet::new();
        for rows in prev {
            let span = Subspace::from_canonical(n, rows.clone());
            for &p in &points {
                let v = GF2Vector { bits: p, n: n as u8 };
                if span.contains(v) {
                    continue;
                }
                if filter == SubspaceFilter::TotallyIsotropic && rows.iter().any(|&r| symp(r, p) == 1) {
                    continue;
                }
                next.insert(rref(rows.iter().copied().chain(std::iter::once(p))));
            }
        }
        layers.push(next);
    }
    layers
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(bits: u16, n: usize) -> GF2Vector {
        GF2Vector::new(bits, n).unwrap()
    }

    /// Direct expansion of Σ (q_i p'_i + q'_i p_i) over individual bits.
    fn symp_oracle(u: GF2Vector, w: GF2Vector) -> u8 {
        let n = u.n();
        let bit = |x: GF2Vector, k: usize| ((x.bits() >> k) & 1) as u8;
        let mut s = 0;
        for i in 0..n {
            s += bit(u, i) * bit(w, n + i) + bit(w, i) * bit(u, n + i);
        }
        s % 2
    }

    #[test]
    fn x_and_z_anticommute() {
        // X = (0|1), Z = (1|0)
        let x = GF2Vector::from_qp(0, 1, 1).unwrap();
        let z = GF2Vector::from_qp(1, 0, 1).unwrap();
        assert_eq!(symplectic_form(x, z).unwrap(), 1);
        assert_eq!(symplectic_form(x, x).unwrap(), 0);
    }

    #[test]
    fn xyz_against_shifted_copy() {
        // XYZ: q = (0,1,1), p = (1,1,0)  ->  (011110)
        let xyz = GF2Vector::from_qp(0b110, 0b011, 3).unwrap();
        let e0 = v(1, 3);
        let w = xyz + e0;
        // q0 of w is 1 while p0 of xyz is 1: a single crossing term survives.
        assert_eq!(symp_oracle(xyz, w), 1);
        assert_eq!(symplectic_form(xyz, w).unwrap(), 1);
    }

    #[test]
    fn symplectic_form_rejects_mismatched_n() {
        assert!(matches!(
            symplectic_form(v(1, 1), v(1, 2)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(transvection(v(1, 1), v(1, 2)).is_err());
    }

    #[test]
    fn quadratic_form_counts_y() {
        let y = GF2Vector::from_qp(1, 1, 1).unwrap();
        assert_eq!(quadratic_form(y), 1);
        assert_eq!(quadratic_form(GF2Vector::zero(3).unwrap()), 0);
    }

    #[test]
    fn polarization_identity_exhaustive_small_n() {
        for n in 1..=3 {
            let all = GF2Vector::all_nonzero(n).unwrap();
            let zero = GF2Vector::zero(n).unwrap();
            for &a in all.iter().chain([&zero]) {
                for &b in all.iter().chain([&zero]) {
                    assert_eq!(a.symp(b), symp_oracle(a, b));
                    assert_eq!((a + b).quad() ^ a.quad() ^ b.quad(), a.symp(b));
                }
            }
        }
    }

    #[test]
    fn transvections_are_symplectic_exhaustive_n2() {
        let all = GF2Vector::all_nonzero(2).unwrap();
        for &w in &all {
            assert_eq!(transvection(w, w).unwrap(), w);
            for &a in &all {
                if a.symp(w) == 0 {
                    assert_eq!(transvection(w, a).unwrap(), a);
                }
                for &b in &all {
                    let ta = transvection(w, a).unwrap();
                    let tb = transvection(w, b).unwrap();
                    assert_eq!(ta.symp(tb), a.symp(b));
                }
            }
        }
    }

    #[test]
    fn span_drops_dependent_generators() {
        let a = v(0b0001, 2);
        let b = v(0b0110, 2);
        assert_eq!(span(&[a]).unwrap().points().len(), 1);
        let s = span(&[a, b, a + b]).unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(s.points().len(), 3);
        let empty = span(&[]).unwrap();
        assert_eq!(empty.rank(), 0);
        assert!(empty.points().is_empty());
    }

    #[test]
    fn span_closed_under_addition() {
        let s = span(&[v(0b1001, 3), v(0b110000, 3), v(0b000110, 3)]).unwrap();
        assert_eq!(s.points().len(), 7);
        for &a in s.points() {
            for &b in s.points() {
                assert!(s.contains(a + b));
            }
        }
    }

    #[test]
    fn isotropy_of_anticommuting_pair() {
        let x = GF2Vector::from_qp(0, 1, 1).unwrap();
        let z = GF2Vector::from_qp(1, 0, 1).unwrap();
        assert!(!is_totally_isotropic(&span(&[x, z]).unwrap()));
    }

    /// Independent route: a subspace is totally isotropic iff some translate
    /// Q_a(v) = Q(v) + ⟨a, v⟩ of the hyperbolic form vanishes on it.
    #[test]
    fn isotropy_matches_quadratic_translate_oracle() {
        let all = GF2Vector::all_nonzero(2).unwrap();
        let zero = GF2Vector::zero(2).unwrap();
        let lines: Vec<Subspace> = enumerate_subspaces(2, 2, SubspaceFilter::All).unwrap().collect();
        assert_eq!(lines.len(), 35);
        let mut isotropic = 0;
        for line in &lines {
            let by_pairs = line
                .points()
                .iter()
                .all(|a| line.points().iter().all(|b| symp_oracle(*a, *b) == 0));
            let by_quadric = all
                .iter()
                .chain([&zero])
                .any(|a| line.points().iter().all(|p| p.quad() ^ p.symp(*a) == 0));
            assert_eq!(by_pairs, by_quadric);
            assert_eq!(by_pairs, is_totally_isotropic(line));
            if by_pairs {
                isotropic += 1;
            }
        }
        assert_eq!(isotropic, 15);
    }

    #[test]
    fn enumeration_counts() {
        let count = |n, r, f| enumerate_subspaces(n, r, f).unwrap().count();
        assert_eq!(count(2, 2, SubspaceFilter::TotallyIsotropic), 15);
        assert_eq!(count(2, 2, SubspaceFilter::All), 35);
        assert_eq!(count(3, 3, SubspaceFilter::TotallyIsotropic), 135);
        assert_eq!(count(3, 2, SubspaceFilter::TotallyIsotropic), 315);
        assert_eq!(count(2, 1, SubspaceFilter::All), 15);
    }

    #[test]
    fn enumeration_is_sorted_and_unique() {
        let keys: Vec<Vec<u16>> = enumerate_subspaces(3, 2, SubspaceFilter::All)
            .unwrap()
            .map(|s| s.key())
            .collect();
        assert_eq!(keys.len(), 651);
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn enumeration_domain_errors() {
        assert!(enumerate_subspaces(2, 5, SubspaceFilter::All).is_err());
        assert!(enumerate_subspaces(8, 1, SubspaceFilter::All).is_err());
        assert_eq!(
            enumerate_subspaces(2, 3, SubspaceFilter::TotallyIsotropic)
                .unwrap()
                .count(),
            0
        );
    }

    #[test]
    fn lagrangian_count_formula() {
        for n in 2..=3usize {
            let expected: usize = (1..=n).map(|i| (1usize << i) + 1).product();
            let got = enumerate_subspaces(n, n, SubspaceFilter::TotallyIsotropic)
                .unwrap()
                .count();
            assert_eq!(got, expected);
            for s in enumerate_subspaces(n, n, SubspaceFilter::TotallyIsotropic).unwrap() {
                for a in s.points() {
                    for b in s.points() {
                        assert_eq!(a.symp(*b), 0);
                    }
                }
            }
        }
    }
}
