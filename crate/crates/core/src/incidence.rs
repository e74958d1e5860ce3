//! Point-line incidence structures and isomorphism search between them.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Incidence {
    pub n_points: usize,
    /// Each line is a sorted list of point indices.
    pub lines: Vec<Vec<usize>>,
}

impl Incidence {
    pub fn new(n_points: usize, lines: Vec<Vec<usize>>) -> Self {
        let lines = lines
            .into_iter()
            .map(|mut l| {
                l.sort_unstable();
                l
            })
            .collect();
        Self { n_points, lines }
    }

    pub fn lines_through(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        self.lines
            .iter()
            .enumerate()
            .filter(move |(_, l)| l.contains(&p))
            .map(|(i, _)| i)
    }

    pub fn collinearity(&self) -> Vec<Vec<bool>> {
        let mut m = vec![vec![false; self.n_points]; self.n_points];
        for l in &self.lines {
            for &a in l {
                for &b in l {
                    if a != b {
                        m[a][b] = true;
                    }
                }
            }
        }
        m
    }

    /// Checks the axioms of a generalized quadrangle of order (s, t):
    /// s+1 points per line, t+1 lines per point, two points on at most one
    /// common line, and for every non-incident point-line pair exactly one
    /// point of the line collinear with the point.
    pub fn is_generalized_quadrangle(&self, s: usize, t: usize) -> bool {
        if self.lines.iter().any(|l| l.len() != s + 1) {
            return false;
        }
        if (0..self.n_points).any(|p| self.lines_through(p).count() != t + 1) {
            return false;
        }
        for (i, a) in self.lines.iter().enumerate() {
            for b in &self.lines[i + 1..] {
                if a.iter().filter(|p| b.contains(p)).count() > 1 {
                    return false;
                }
            }
        }
        let coll = self.collinearity();
        for l in &self.lines {
            for p in (0..self.n_points).filter(|p| !l.contains(p)) {
                if l.iter().filter(|&&q| coll[p][q]).count() != 1 {
                    return false;
                }
            }
        }
        true
    }

    /// A point bijection `f` with f(line) ∈ other.lines for every line, if any.
    pub fn isomorphism(&self, other: &Incidence) -> Option<Vec<usize>> {
        if self.n_points != other.n_points || self.lines.len() != other.lines.len() {
            return None;
        }
        let a_deg: Vec<usize> = (0..self.n_points).map(|p| self.lines_through(p).count()).collect();
        let b_deg: Vec<usize> = (0..other.n_points).map(|p| other.lines_through(p).count()).collect();
        let (a_coll, b_coll) = (self.collinearity(), other.collinearity());
        let mut map = vec![usize::MAX; self.n_points];
        let mut used = vec![false; other.n_points];
        let found = self.extend(other, 0, &mut map, &mut used, &a_coll, &b_coll, &a_deg, &b_deg);
        found.then_some(map)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        other: &Incidence,
        next: usize,
        map: &mut [usize],
        used: &mut [bool],
        a_coll: &[Vec<bool>],
        b_coll: &[Vec<bool>],
        a_deg: &[usize],
        b_deg: &[usize],
    ) -> bool {
        if next == self.n_points {
            let mut image: Vec<Vec<usize>> = self
                .lines
                .iter()
                .map(|l| {
                    let mut m: Vec<usize> = l.iter().map(|&p| map[p]).collect();
                    m.sort_unstable();
                    m
                })
                .collect();
            image.sort();
            let mut target = other.lines.clone();
            target.sort();
            return image == target;
        }
        for cand in 0..other.n_points {
            if used[cand] || a_deg[next] != b_deg[cand] {
                continue;
            }
            let consistent = (0..next).all(|prev| a_coll[next][prev] == b_coll[cand][map[prev]]);
            if !consistent {
                continue;
            }
            map[next] = cand;
            used[cand] = true;
            if self.extend(other, next + 1, map, used, a_coll, b_coll, a_deg, b_deg) {
                return true;
            }
            used[cand] = false;
            map[next] = usize::MAX;
        }
        false
    }
}
