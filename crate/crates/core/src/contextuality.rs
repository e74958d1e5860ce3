//! Degree of contextuality: the fewest contexts violated by any global
//! assignment of signs to the points, i.e. the coset-leader weight of the
//! right-hand side with respect to the GF(2) incidence matrix.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::codes::{context_sign, fano_lines};
use crate::error::{Error, Result};
use crate::gf2::{self, GF2Vector, SubspaceFilter};
use crate::pauli::PauliOperator;

/// Largest point count handled by exhaustive search.
pub const EXHAUSTIVE_POINTS: usize = 24;
/// Largest context count handled by coset-leader search.
pub const COSET_CONTEXTS: usize = 24;

#[derive(Debug, Clone, Serialize)]
pub struct IncidenceSystem {
    pub points: Vec<String>,
    pub contexts: Vec<Vec<usize>>,
    /// 1 iff the context is negative.
    pub rhs: Vec<u8>,
    /// Parity constraints per context as (point mask, rhs); a context is
    /// satisfied iff all of them hold. Plain contexts carry one constraint.
    #[serde(skip)]
    constraints: Vec<Vec<(u64, u8)>>,
}

fn mask_of(points: &[usize]) -> u64 {
    points.iter().fold(0u64, |m, &p| m | 1 << p)
}

impl IncidenceSystem {
    pub fn new(points: Vec<String>, contexts: Vec<Vec<usize>>, rhs: Vec<u8>) -> Result<Self> {
        if contexts.len() != rhs.len() {
            return Err(Error::Domain(format!(
                "{} contexts but {} signs",
                contexts.len(),
                rhs.len()
            )));
        }
        let constraints = contexts
            .iter()
            .zip(&rhs)
            .map(|(c, &r)| vec![(mask_of(c), r & 1)])
            .collect();
        Self::validated(points, contexts, rhs, constraints)
    }

    fn validated(
        points: Vec<String>,
        contexts: Vec<Vec<usize>>,
        rhs: Vec<u8>,
        constraints: Vec<Vec<(u64, u8)>>,
    ) -> Result<Self> {
        if points.len() > 64 {
            return Err(Error::Domain(format!(
                "{} points exceed the 64-point limit",
                points.len()
            )));
        }
        if let Some(bad) = contexts.iter().flatten().find(|&&p| p >= points.len()) {
            return Err(Error::Domain(format!("context references missing point {bad}")));
        }
        Ok(Self {
            points,
            contexts,
            rhs,
            constraints,
        })
    }

    /// Contexts given as signed observables; points are identified by their
    /// unsigned observable and the rhs is read off each context's product.
    pub fn from_signed_contexts(contexts: &[Vec<PauliOperator>]) -> Result<Self> {
        let mut labels: Vec<PauliOperator> = contexts.iter().flatten().map(|p| p.unsigned()).collect();
        labels.sort();
        labels.dedup();
        let index = |p: &PauliOperator| labels.binary_search(&p.unsigned()).expect("collected label");
        let mut idx = Vec::with_capacity(contexts.len());
        let mut rhs = Vec::with_capacity(contexts.len());
        for c in contexts {
            idx.push(c.iter().map(index).collect());
            rhs.push(u8::from(context_sign(c)? < 0));
        }
        Self::new(labels.iter().map(ToString::to_string).collect(), idx, rhs)
    }

    /// Plane contexts: a plane is satisfied iff its seven lines and its full
    /// product all match the assignment. `rhs` records negative planes.
    pub fn from_planes(planes: &[Vec<PauliOperator>]) -> Result<Self> {
        let mut labels: Vec<PauliOperator> = planes.iter().flatten().map(|p| p.unsigned()).collect();
        labels.sort();
        labels.dedup();
        let index = |p: &PauliOperator| labels.binary_search(&p.unsigned()).expect("collected label");
        let mut contexts = Vec::new();
        let mut rhs = Vec::new();
        let mut constraints = Vec::new();
        for plane in planes {
            let class = crate::codes::classify_plane(plane)?;
            let idx: Vec<usize> = plane.iter().map(index).collect();
            let vecs: Vec<GF2Vector> = plane.iter().map(|p| p.vec()).collect();
            let mut cs = vec![(mask_of(&idx), u8::from(class.product_sign < 0))];
            for l in fano_lines(&vecs) {
                let sign = context_sign(&[plane[l[0]], plane[l[1]], plane[l[2]]])?;
                cs.push((mask_of(&[idx[l[0]], idx[l[1]], idx[l[2]]]), u8::from(sign < 0)));
            }
            contexts.push(idx);
            rhs.push(u8::from(!class.positive));
            constraints.push(cs);
        }
        Self::validated(
            labels.iter().map(ToString::to_string).collect(),
            contexts,
            rhs,
            constraints,
        )
    }

    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    fn single_constraint(&self) -> bool {
        self.constraints.iter().all(|c| c.len() == 1)
    }

    pub fn is_violated(&self, context: usize, x: u64) -> bool {
        self.constraints[context]
            .iter()
            .any(|&(m, r)| ((m & x).count_ones() & 1) as u8 != r)
    }

    pub fn violated(&self, x: u64) -> Vec<usize> {
        (0..self.contexts.len()).filter(|&c| self.is_violated(c, x)).collect()
    }

    pub fn violated_count(&self, x: u64) -> usize {
        (0..self.contexts.len()).filter(|&c| self.is_violated(c, x)).count()
    }

    /// Flips point `p` and the rhs of every constraint containing it; the
    /// resulting system has the same degree.
    pub fn gauge_flip(&self, p: usize) -> Self {
        let mut out = self.clone();
        for (ci, cs) in out.constraints.iter_mut().enumerate() {
            for (m, r) in cs.iter_mut() {
                if *m >> p & 1 == 1 {
                    *r ^= 1;
                }
            }
            out.rhs[ci] = cs[0].1;
        }
        out
    }

    /// Whether rhs lies in the column space of the incidence matrix.
    pub fn is_consistent(&self) -> bool {
        solve(&self.all_rows()).is_some()
    }

    fn all_rows(&self) -> Vec<(u64, u8)> {
        self.constraints.iter().flatten().copied().collect()
    }
}

/// Gaussian elimination over GF(2); returns some solution if consistent.
fn solve(rows: &[(u64, u8)]) -> Option<u64> {
    let mut basis: Vec<(u64, u8)> = Vec::new();
    for &(mut m, mut r) in rows {
        for &(bm, br) in &basis {
            let pivot = 1u64 << (63 - bm.leading_zeros());
            if m & pivot != 0 {
                m ^= bm;
                r ^= br;
            }
        }
        if m == 0 {
            if r == 1 {
                return None;
            }
            continue;
        }
        let pivot = 1u64 << (63 - m.leading_zeros());
        for b in basis.iter_mut() {
            if b.0 & pivot != 0 {
                b.0 ^= m;
                b.1 ^= r;
            }
        }
        basis.push((m, r));
    }
    // fully reduced: each pivot appears in one row, so free variables at 0 give a solution
    Some(
        basis
            .iter()
            .filter(|b| b.1 == 1)
            .fold(0u64, |x, b| x | 1u64 << (63 - b.0.leading_zeros())),
    )
}

/// Lexicographically smallest solution, point 0 being most significant.
fn lexmin_solution(rows: &[(u64, u8)], n_points: usize) -> Option<u64> {
    let mut rows = rows.to_vec();
    solve(&rows)?;
    let mut x = 0u64;
    for i in 0..n_points {
        rows.push((1 << i, 0));
        if solve(&rows).is_none() {
            rows.pop();
            rows.push((1 << i, 1));
            x |= 1 << i;
        }
    }
    Some(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Degree {
    Exact(usize),
    Interval { lower: usize, upper: usize },
}

impl Degree {
    pub fn upper(&self) -> usize {
        match *self {
            Degree::Exact(d) => d,
            Degree::Interval { upper, .. } => upper,
        }
    }

    pub fn lower(&self) -> usize {
        match *self {
            Degree::Exact(d) => d,
            Degree::Interval { lower, .. } => lower,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Bound { restarts: usize, seed: u64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeReport {
    pub degree: Degree,
    /// Sign bit per point (1 = flipped).
    pub witness: Vec<u8>,
    pub violated_contexts: Vec<usize>,
}

impl DegreeReport {
    fn new(sys: &IncidenceSystem, degree: Degree, x: u64) -> Self {
        Self {
            degree,
            witness: (0..sys.n_points()).map(|i| (x >> i & 1) as u8).collect(),
            violated_contexts: sys.violated(x),
        }
    }
}

pub fn contextuality_degree(sys: &IncidenceSystem, mode: Mode) -> Result<DegreeReport> {
    match mode {
        Mode::Exact => {
            let (d, x) = exact_degree(sys)?;
            Ok(DegreeReport::new(sys, Degree::Exact(d), x))
        }
        Mode::Bound { restarts, seed } => {
            let (upper, x) = local_search(sys, restarts, seed);
            let lower = obstruction_lower_bound(sys);
            let degree = if lower == upper {
                Degree::Exact(upper)
            } else {
                Degree::Interval { lower, upper }
            };
            Ok(DegreeReport::new(sys, degree, x))
        }
    }
}

fn exact_degree(sys: &IncidenceSystem) -> Result<(usize, u64)> {
    let n = sys.n_points();
    if n <= EXHAUSTIVE_POINTS {
        Ok(exhaustive(sys))
    } else if sys.contexts.len() <= COSET_CONTEXTS && sys.single_constraint() {
        Ok(coset_leader(sys))
    } else {
        Err(Error::TooLarge {
            points: n,
            contexts: sys.contexts.len(),
        })
    }
}

/// Scans all 2^n assignments in lexicographic order (point 0 most significant).
pub fn exhaustive(sys: &IncidenceSystem) -> (usize, u64) {
    let n = sys.n_points();
    let mut best = (usize::MAX, 0u64);
    for c in 0u64..(1u64 << n) {
        let x = if n == 0 { 0 } else { c.reverse_bits() >> (64 - n) };
        let v = sys.violated_count(x);
        if v < best.0 {
            best = (v, x);
            if v == 0 {
                break;
            }
        }
    }
    best
}

/// Tries error patterns on the contexts by increasing weight until the
/// corrected right-hand side becomes solvable.
pub fn coset_leader(sys: &IncidenceSystem) -> (usize, u64) {
    let m = sys.contexts.len();
    let rows: Vec<u64> = sys.constraints.iter().map(|c| c[0].0).collect();
    for w in 0..=m {
        let mut best: Option<u64> = None;
        for e in 0u32..(1u32 << m) {
            if e.count_ones() as usize != w {
                continue;
            }
            let sys_rows: Vec<(u64, u8)> = rows
                .iter()
                .enumerate()
                .map(|(i, &r)| (r, sys.rhs[i] ^ (e >> i & 1) as u8))
                .collect();
            if let Some(x) = lexmin_solution(&sys_rows, sys.n_points()) {
                let better = best.is_none_or(|b| x.reverse_bits() < b.reverse_bits());
                if better {
                    best = Some(x);
                }
            }
        }
        if let Some(x) = best {
            return (w, x);
        }
    }
    unreachable!("flipping every context is always solvable by x = 0")
}

/// Random restarts with greedy single-point flips; the zero assignment is
/// always tried first.
fn local_search(sys: &IncidenceSystem, restarts: usize, seed: u64) -> (usize, u64) {
    let n = sys.n_points();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = (sys.violated_count(0), 0u64);
    for r in 0..=restarts {
        let mut x = if r == 0 { 0 } else { rng.random::<u64>() & full };
        let mut cur = sys.violated_count(x);
        loop {
            let mut improved = false;
            for p in 0..n {
                let y = x ^ (1 << p);
                let v = sys.violated_count(y);
                if v < cur {
                    x = y;
                    cur = v;
                    improved = true;
                }
            }
            if !improved {
                break;
            }
        }
        if cur < best.0 || (cur == best.0 && x.reverse_bits() < best.1.reverse_bits()) {
            best = (cur, x);
        }
    }
    best
}

/// Packs obstructions with disjoint context support. An obstruction is a
/// set of constraints whose masks sum to zero while their right-hand sides
/// sum to one, so every assignment violates one of its contexts.
pub fn obstruction_lower_bound(sys: &IncidenceSystem) -> usize {
    let rows: Vec<(u64, u8, usize)> = sys
        .constraints
        .iter()
        .enumerate()
        .flat_map(|(ci, cs)| cs.iter().map(move |&(m, r)| (m, r, ci)))
        .collect();
    let words = rows.len().div_ceil(64);
    // each row carries its combination of original constraints
    let mut reduced: Vec<(u64, u8, Vec<u64>)> = Vec::new();
    let mut obstructions: Vec<Vec<u64>> = Vec::new();
    for (i, &(m, r, _)) in rows.iter().enumerate() {
        let mut comb = vec![0u64; words];
        comb[i / 64] |= 1 << (i % 64);
        let (mut m, mut r) = (m, r);
        for (bm, br, bc) in &reduced {
            let pivot = 1u64 << (63 - bm.leading_zeros());
            if m & pivot != 0 {
                m ^= bm;
                r ^= br;
                comb.iter_mut().zip(bc).for_each(|(a, b)| *a ^= b);
            }
        }
        if m == 0 {
            if r == 1 {
                obstructions.push(comb);
            }
        } else {
            reduced.push((m, r, comb));
        }
    }
    let support = |comb: &Vec<u64>| -> Vec<usize> {
        let mut ctx: Vec<usize> = (0..rows.len())
            .filter(|&i| comb[i / 64] >> (i % 64) & 1 == 1)
            .map(|i| rows[i].2)
            .collect();
        ctx.sort_unstable();
        ctx.dedup();
        ctx
    };
    let mut supports: Vec<Vec<usize>> = obstructions.iter().map(support).collect();
    supports.sort_by_key(Vec::len);
    let mut used = vec![false; sys.contexts.len()];
    let mut count = 0;
    for s in supports {
        if s.iter().all(|&c| !used[c]) {
            s.iter().for_each(|&c| used[c] = true);
            count += 1;
        }
    }
    count
}

#[derive(Debug, Clone, Serialize)]
pub struct LiftReport {
    pub satisfied: usize,
    pub total: usize,
    pub assignment: Vec<u8>,
}

/// Largest number of contexts that can be made positive simultaneously.
pub fn max_stabilizer_lift(sys: &IncidenceSystem) -> Result<LiftReport> {
    let (d, x) = exact_degree(sys)?;
    Ok(LiftReport {
        satisfied: sys.contexts.len() - d,
        total: sys.contexts.len(),
        assignment: (0..sys.n_points()).map(|i| (x >> i & 1) as u8).collect(),
    })
}

/// The 135 planes of W(5,2) as unsigned three-qubit observables.
pub fn w52_planes() -> Vec<Vec<PauliOperator>> {
    gf2::enumerate_subspaces(3, 3, SubspaceFilter::TotallyIsotropic)
        .expect("valid rank")
        .map(|s| s.points().iter().map(|&v| PauliOperator::new(v, 0)).collect())
        .collect()
}

/// Degree interval of W(5,2) with plane contexts under the given labeling.
pub fn plane_contextuality_w52(planes: &[Vec<PauliOperator>], restarts: usize, seed: u64) -> Result<DegreeReport> {
    let sys = IncidenceSystem::from_planes(planes)?;
    contextuality_degree(&sys, Mode::Bound { restarts, seed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{build_split_doily, pentagon_split};
    use proptest::prelude::*;

    fn doily_system(left: bool) -> IncidenceSystem {
        let d = build_split_doily(&pentagon_split()).unwrap();
        let labels = if left { &d.left_labels } else { &d.right_labels };
        let contexts: Vec<Vec<PauliOperator>> = d
            .lines
            .iter()
            .map(|l| {
                l.elements
                    .iter()
                    .map(|&m| labels[d.points.iter().position(|&p| p == m).unwrap()])
                    .collect()
            })
            .collect();
        IncidenceSystem::from_signed_contexts(&contexts).unwrap()
    }

    #[test]
    fn doily_degree_is_three_on_both_labelings() {
        for left in [true, false] {
            let sys = doily_system(left);
            assert_eq!(sys.n_points(), 15);
            assert_eq!(sys.rhs.iter().filter(|&&r| r == 1).count(), 3);
            let r = contextuality_degree(&sys, Mode::Exact).unwrap();
            assert_eq!(r.degree, Degree::Exact(3));
            assert_eq!(r.violated_contexts.len(), 3);
            assert_eq!(max_stabilizer_lift(&sys).unwrap().satisfied, 12);
        }
    }

    #[test]
    fn all_positive_has_degree_zero() {
        let mut sys = doily_system(true);
        sys = IncidenceSystem::new(sys.points.clone(), sys.contexts.clone(), vec![0; 15]).unwrap();
        let r = contextuality_degree(&sys, Mode::Exact).unwrap();
        assert_eq!(r.degree, Degree::Exact(0));
        assert!(r.witness.iter().all(|&b| b == 0));
        assert_eq!(max_stabilizer_lift(&sys).unwrap().satisfied, 15);
    }

    #[test]
    fn single_negative_context_is_liftable() {
        let sys = IncidenceSystem::new((0..3).map(|i| i.to_string()).collect(), vec![vec![0, 1, 2]], vec![1]).unwrap();
        let lift = max_stabilizer_lift(&sys).unwrap();
        assert_eq!(lift.satisfied, 1);
        assert_eq!(lift.assignment, vec![0, 0, 1]);
    }

    #[test]
    fn exhaustive_matches_coset_leader_on_doily() {
        let sys = doily_system(true);
        let (d1, x1) = exhaustive(&sys);
        let (d2, x2) = coset_leader(&sys);
        assert_eq!(d1, 3);
        assert_eq!(d2, 3);
        assert_eq!(x1, x2);
    }

    #[test]
    fn bound_mode_brackets_exact() {
        let sys = doily_system(false);
        let r = contextuality_degree(&sys, Mode::Bound { restarts: 20, seed: 1 }).unwrap();
        assert!(r.degree.lower() <= 3 && r.degree.upper() >= 3);
        assert!(r.degree.lower() >= 1);
    }

    #[test]
    fn too_large_for_exact() {
        let planes = w52_planes();
        let sys = IncidenceSystem::from_planes(&planes).unwrap();
        assert!(matches!(
            contextuality_degree(&sys, Mode::Exact),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn invalid_contexts_rejected() {
        assert!(IncidenceSystem::new(vec!["a".into()], vec![vec![1]], vec![0]).is_err());
        assert!(IncidenceSystem::new(vec!["a".into()], vec![vec![0]], vec![]).is_err());
    }

    #[test]
    fn w52_plane_labeling_has_81_negative_planes() {
        let planes = w52_planes();
        assert_eq!(planes.len(), 135);
        let sys = IncidenceSystem::from_planes(&planes).unwrap();
        assert_eq!(sys.n_points(), 63);
        assert_eq!(sys.rhs.iter().filter(|&&r| r == 1).count(), 81);
        let r = plane_contextuality_w52(&planes, 10, 7).unwrap();
        assert!(r.degree.lower() >= 1);
        assert!(r.degree.lower() <= r.degree.upper());
        assert_eq!(r.violated_contexts.len(), r.degree.upper());
    }

    #[test]
    fn positive_plane_labeling_has_degree_zero() {
        let planes = w52_planes();
        let sys = IncidenceSystem::from_planes(&planes).unwrap();
        let mut zero = sys.clone();
        for cs in zero.constraints.iter_mut() {
            cs.iter_mut().for_each(|c| c.1 = 0);
        }
        zero.rhs.iter_mut().for_each(|r| *r = 0);
        let r = contextuality_degree(&zero, Mode::Bound { restarts: 0, seed: 0 }).unwrap();
        assert_eq!(r.degree, Degree::Exact(0));
    }

    fn arb_system() -> impl Strategy<Value = IncidenceSystem> {
        (3usize..=10, 1usize..=12).prop_flat_map(|(n, m)| {
            (
                proptest::collection::vec(proptest::collection::btree_set(0..n, 1..=n.min(4)), m),
                proptest::collection::vec(0u8..2, m),
            )
                .prop_map(move |(ctx, rhs)| {
                    IncidenceSystem::new(
                        (0..n).map(|i| i.to_string()).collect(),
                        ctx.into_iter().map(|s| s.into_iter().collect()).collect(),
                        rhs,
                    )
                    .unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn zero_degree_iff_consistent(sys in arb_system()) {
            let (d, _) = exhaustive(&sys);
            prop_assert_eq!(d == 0, sys.is_consistent());
            prop_assert_eq!(obstruction_lower_bound(&sys) == 0, sys.is_consistent());
            prop_assert!(obstruction_lower_bound(&sys) <= d);
        }

        #[test]
        fn gauge_invariance(sys in arb_system(), p in 0usize..3) {
            let (d, _) = exhaustive(&sys);
            let (d2, _) = exhaustive(&sys.gauge_flip(p));
            prop_assert_eq!(d, d2);
        }

        #[test]
        fn coset_leader_agrees_with_exhaustive(sys in arb_system()) {
            prop_assert_eq!(coset_leader(&sys), exhaustive(&sys));
        }
    }
}
