//! Symplectic polar spaces W(2n−1, 2), hyperbolic quadrics, doily spreads and
//! the Klein correspondence between lines of PG(3,2) and points of Q⁺(5,2).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{self, GF2Vector, Subspace, SubspaceFilter};
use crate::incidence::Incidence;
use crate::pauli::PauliOperator;

#[derive(Debug, Clone)]
pub struct PolarSpace {
    n: usize,
    points: Vec<GF2Vector>,
    /// `isotropic[r - 1]` holds the totally isotropic subspaces of rank r.
    isotropic: Vec<Vec<Subspace>>,
}

impl PolarSpace {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[GF2Vector] {
        &self.points
    }

    /// Totally isotropic subspaces of the given rank (1 = points, n = generators).
    pub fn subspaces(&self, rank: usize) -> &[Subspace] {
        rank.checked_sub(1)
            .and_then(|r| self.isotropic.get(r))
            .map_or(&[], Vec::as_slice)
    }

    pub fn lines(&self) -> &[Subspace] {
        self.subspaces(2)
    }

    pub fn generators(&self) -> &[Subspace] {
        self.subspaces(self.n)
    }

    /// Number of isotropic subspaces per rank, starting with the points.
    pub fn counts(&self) -> Vec<usize> {
        self.isotropic.iter().map(Vec::len).collect()
    }

    /// Points and lines as an incidence structure; point indices follow `points()`.
    pub fn point_line_incidence(&self) -> Incidence {
        let lines = self
            .lines()
            .iter()
            .map(|l| l.points().iter().map(|p| self.index_of(*p)).collect())
            .collect();
        Incidence::new(self.points.len(), lines)
    }

    pub fn index_of(&self, p: GF2Vector) -> usize {
        self.points.binary_search(&p).expect("point of the polar space")
    }
}

pub fn build_polar_space(n: usize) -> Result<PolarSpace> {
    if !(2..=4).contains(&n) {
        return Err(Error::Domain(format!("polar space rank {n} outside 2..=4")));
    }
    let isotropic: Vec<Vec<Subspace>> = gf2::subspace_layers(n, n, SubspaceFilter::TotallyIsotropic)
        .into_iter()
        .map(|layer| layer.into_iter().map(|rows| gf2::span_rows(n, rows)).collect())
        .collect();
    let points = GF2Vector::all_nonzero(n)?;
    Ok(PolarSpace { n, points, isotropic })
}

/// Nonzero vectors with Q(v) = 0: the symmetric observables.
pub fn quadric_points(n: usize) -> Result<Vec<GF2Vector>> {
    if n == 0 {
        return Err(Error::QubitCount(n));
    }
    Ok(GF2Vector::all_nonzero(n)?
        .into_iter()
        .filter(|v| v.quad() == 0)
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Spread {
    /// Indices into the doily's line list.
    pub lines: [usize; 5],
}

/// Coordinates of V(4,2) used by the Plücker map: the four bit positions
/// (q₀, q₁, p₀, p₁) of a two-qubit vector.
const PLUCKER_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KleinPoint {
    /// Bit k holds the k-th coordinate of (p₀₁, p₀₂, p₀₃, p₁₂, p₁₃, p₂₃).
    pub plucker: u8,
    #[serde(skip)]
    pub source_line: Subspace,
}

pub fn plucker_coordinate(k: usize, plucker: u8) -> u8 {
    (plucker >> k) & 1
}

/// p₀₁p₂₃ + p₀₂p₁₃ + p₀₃p₁₂.
pub fn klein_quadric(p: u8) -> u8 {
    let c = |k| plucker_coordinate(k, p);
    (c(0) & c(5)) ^ (c(1) & c(4)) ^ (c(2) & c(3))
}

/// Polar form of the Klein quadric; zero iff the source lines meet.
pub fn klein_polar(a: u8, b: u8) -> u8 {
    let (x, y) = (|k| plucker_coordinate(k, a), |k| plucker_coordinate(k, b));
    (x(0) & y(5)) ^ (x(5) & y(0)) ^ (x(1) & y(4)) ^ (x(4) & y(1)) ^ (x(2) & y(3)) ^ (x(3) & y(2))
}

pub fn plucker_line_map(line: &Subspace) -> Result<KleinPoint> {
    if line.rank() != 2 || line.n() != 2 {
        return Err(Error::Domain(format!(
            "Plücker map needs a rank-2 subspace of V(4,2), got rank {} in V({},2)",
            line.rank(),
            2 * line.n()
        )));
    }
    let (u, v) = (line.generators()[0].bits(), line.generators()[1].bits());
    let bit = |w: u16, i: usize| (w >> i) & 1;
    let mut plucker = 0u8;
    for (k, &(m, n)) in PLUCKER_PAIRS.iter().enumerate() {
        let c = (bit(u, m) & bit(v, n)) ^ (bit(u, n) & bit(v, m));
        plucker |= (c as u8) << k;
    }
    Ok(KleinPoint {
        plucker,
        source_line: line.clone(),
    })
}

#[derive(Debug, Clone)]
pub struct KleinDoily {
    /// Images of the 15 isotropic lines, in doily line order.
    pub points: Vec<KleinPoint>,
    /// adjacency[i][j]: the Plücker points are distinct and joined by a quadric line.
    pub adjacency: Vec<Vec<bool>>,
    /// Light rays: triples {P, P′, P + P′} of real points.
    pub structure: Incidence,
}

/// The image of the isotropic lines of W(3,2) inside the Klein quadric.
pub fn klein_real_doily() -> KleinDoily {
    let doily = build_polar_space(2).expect("rank 2 is in range");
    let points: Vec<KleinPoint> = doily
        .lines()
        .iter()
        .map(|l| plucker_line_map(l).expect("isotropic lines have rank 2"))
        .collect();
    let m = points.len();
    let adjacency: Vec<Vec<bool>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| i != j && klein_polar(points[i].plucker, points[j].plucker) == 0)
                .collect()
        })
        .collect();
    let mut rays = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if !adjacency[i][j] {
                continue;
            }
            let sum = points[i].plucker ^ points[j].plucker;
            if let Some(k) = points.iter().position(|p| p.plucker == sum) {
                if k > j {
                    rays.push(vec![i, j, k]);
                }
            }
        }
    }
    KleinDoily {
        points,
        adjacency,
        structure: Incidence::new(m, rays),
    }
}

/// All partitions of the doily's points into five pairwise disjoint lines,
/// as indices into `build_polar_space(2).lines()`, in lexicographic order.
pub fn doily_spreads() -> Vec<Spread> {
    let doily = build_polar_space(2).expect("rank 2 is in range");
    let masks: Vec<u32> = doily
        .lines()
        .iter()
        .map(|l| l.points().iter().fold(0u32, |m, p| m | 1 << p.bits()))
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(5);
    spread_search(&masks, 0, 0, &mut chosen, &mut out);
    out
}

fn spread_search(masks: &[u32], start: usize, covered: u32, chosen: &mut Vec<usize>, out: &mut Vec<Spread>) {
    if chosen.len() == 5 {
        out.push(Spread {
            lines: chosen.as_slice().try_into().expect("five lines"),
        });
        return;
    }
    for i in start..masks.len() {
        if masks[i] & covered == 0 {
            chosen.push(i);
            spread_search(masks, i + 1, covered | masks[i], chosen, out);
            chosen.pop();
        }
    }
}

/// A W(5,2) plane written as three-qubit observables, paired with the
/// symmetric four-qubit observable that is its Plücker image.
#[derive(Debug, Clone, Serialize)]
pub struct PluckerPair {
    pub plane: Vec<PauliOperator>,
    pub observable: PauliOperator,
}

const PLUCKER_PAIR_DATA: [(&str, &str); 9] = [
    ("YYY YYI ZZI XXI ZZY IIY XXY", "IYYI"),
    ("ZZZ YYI ZZI XXI YYZ XXZ IIZ", "IXXI"),
    ("XXX YYI ZZI XXI IIX ZZX YYX", "IZZI"),
    ("YYY YIY ZIZ XIX ZYZ IYI XYX", "IYIY"),
    ("ZZZ YIY ZIZ XIX YZY XZX IZI", "IXIX"),
    ("XXX YIY ZIZ XIX IXI ZXZ YXY", "IZIZ"),
    ("YYY IYY IZZ IXX YZZ YII YXX", "IIYY"),
    ("ZZZ IYY IZZ IXX ZYY ZXX ZII", "IIXX"),
    ("XXX IYY IZZ IXX XII XZZ XYY", "IIZZ"),
];

/// The nine plane/observable pairs of the negative-plane recovery protocols.
pub fn plucker_plane_pairs() -> Vec<PluckerPair> {
    PLUCKER_PAIR_DATA
        .iter()
        .map(|(plane, obs)| PluckerPair {
            plane: crate::pauli::parse_list(plane).expect("valid fixture"),
            observable: obs.parse().expect("valid fixture"),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct PluckerReport {
    pub all_symmetric: bool,
    pub all_commute_with_yiii: bool,
    pub grid_lines: usize,
    pub negative_grid_lines: usize,
    pub positive_grid_lines: usize,
    /// Every point lies on exactly two grid lines and no two grid lines share two points.
    pub is_grid: bool,
    /// Planes of collinear grid points meet, planes of non-collinear points are disjoint;
    /// along negative grid lines the planes share a line, along positive ones a point.
    pub intersections_match: bool,
    pub pass: bool,
}

pub fn verify_plucker_plane_pairs(pairs: &[PluckerPair]) -> Result<PluckerReport> {
    if pairs.len() != 9 {
        return Err(Error::Domain(format!(
            "expected 9 plane/observable pairs, got {}",
            pairs.len()
        )));
    }
    let mut planes = Vec::with_capacity(9);
    for pair in pairs {
        if pair.observable.n() != 4 {
            return Err(Error::Domain(format!(
                "{} is not a four-qubit observable",
                pair.observable
            )));
        }
        let vecs: Vec<GF2Vector> = pair.plane.iter().map(|p| p.vec()).collect();
        let span = gf2::span(&vecs)?;
        if pair.plane.len() != 7 || span.rank() != 3 || span.n() != 3 || !span.is_totally_isotropic() {
            return Err(Error::NotAFanoPlane(
                pair.plane.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
            ));
        }
        planes.push(span);
    }
    let obs: Vec<PauliOperator> = pairs.iter().map(|p| p.observable.unsigned()).collect();
    let yiii: PauliOperator = "YIII".parse()?;
    let all_symmetric = obs.iter().all(|o| o.vec().quad() == 0);
    let all_commute_with_yiii = obs.iter().all(|o| o.commutes_with(&yiii));

    let mut grid: Vec<[usize; 3]> = Vec::new();
    for i in 0..9 {
        for j in i + 1..9 {
            if !obs[i].commutes_with(&obs[j]) {
                continue;
            }
            let third = obs[i].vec() + obs[j].vec();
            if let Some(k) = obs.iter().position(|o| o.vec() == third) {
                if k > j {
                    grid.push([i, j, k]);
                }
            }
        }
    }
    let sign = |l: &[usize; 3]| (obs[l[0]] * obs[l[1]] * obs[l[2]]).sign();
    let negative_grid_lines = grid.iter().filter(|l| sign(l) == Some(-1)).count();
    let positive_grid_lines = grid.iter().filter(|l| sign(l) == Some(1)).count();
    let is_grid = grid.len() == 6 && (0..9).all(|p| grid.iter().filter(|l| l.contains(&p)).count() == 2);

    let mut intersections_match = true;
    for i in 0..9 {
        for j in i + 1..9 {
            let meet = planes[i].intersection(&planes[j]).rank();
            let line = grid.iter().find(|l| l.contains(&i) && l.contains(&j));
            let expected = match line {
                None => 0,
                Some(l) if sign(l) == Some(-1) => 2,
                Some(_) => 1,
            };
            intersections_match &= meet == expected;
        }
    }
    let pass = all_symmetric
        && all_commute_with_yiii
        && is_grid
        && negative_grid_lines == 3
        && positive_grid_lines == 3
        && intersections_match;
    Ok(PluckerReport {
        all_symmetric,
        all_commute_with_yiii,
        grid_lines: grid.len(),
        negative_grid_lines,
        positive_grid_lines,
        is_grid,
        intersections_match,
        pass,
    })
}
