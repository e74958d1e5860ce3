//! The pentagon [[5,1,3]] and heptagon [[7,1,3]] stabilizer groups, their
//! 2+3 and 3+4 splits, and signed line/plane contexts built from them.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{self, GF2Vector};
use crate::incidence::Incidence;
use crate::pauli::{check_positions, PauliOperator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeKind {
    Pentagon,
    Heptagon,
}

impl CodeKind {
    pub fn n_qubits(self) -> usize {
        match self {
            CodeKind::Pentagon => 5,
            CodeKind::Heptagon => 7,
        }
    }

    /// Smallest coalition that can recover the secret.
    pub fn threshold(self) -> usize {
        match self {
            CodeKind::Pentagon => 3,
            CodeKind::Heptagon => 4,
        }
    }
}

const PENTAGON_GENERATORS: [&str; 4] = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"];
const HEPTAGON_GENERATORS: [&str; 6] = ["IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"];

#[derive(Debug, Clone, Serialize)]
pub struct StabilizerCode {
    pub kind: CodeKind,
    pub generators: Vec<PauliOperator>,
    /// `elements[m]` is the product of the generators g_j with bit j−1 of m set.
    pub elements: Vec<PauliOperator>,
}

impl StabilizerCode {
    pub fn from_generators(kind: CodeKind, generators: Vec<PauliOperator>) -> Result<Self> {
        let n = kind.n_qubits();
        for g in &generators {
            if g.n() != n {
                return Err(Error::DimensionMismatch { left: g.n(), right: n });
            }
            if g.sign().is_none() {
                return Err(Error::Domain(format!("generator {g} is not Hermitian")));
            }
        }
        for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                if !a.commutes_with(b) {
                    return Err(Error::NonCommuting(a.to_string(), b.to_string()));
                }
            }
        }
        let vecs: Vec<GF2Vector> = generators.iter().map(|g| g.vec()).collect();
        if gf2::span(&vecs)?.rank() != generators.len() {
            return Err(Error::Domain("generators are not independent".into()));
        }
        let k = generators.len();
        let mut elements = Vec::with_capacity(1 << k);
        elements.push(PauliOperator::identity(n)?);
        for mask in 1usize..(1 << k) {
            let low = mask.trailing_zeros() as usize;
            elements.push(elements[mask & (mask - 1)] * generators[low]);
        }
        Ok(Self {
            kind,
            generators,
            elements,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.kind.n_qubits()
    }

    /// All elements with their generator masks, identity excluded.
    pub fn nontrivial(&self) -> impl Iterator<Item = (usize, PauliOperator)> + '_ {
        self.elements.iter().copied().enumerate().skip(1)
    }

    pub fn negative_count(&self) -> usize {
        self.elements.iter().filter(|e| e.sign() == Some(-1)).count()
    }

    /// Generator mask of the element with the given (unsigned) observable.
    pub fn mask_of(&self, v: GF2Vector) -> Option<usize> {
        self.elements.iter().position(|e| e.vec() == v)
    }

    /// Applies a qubit relabeling to every element and reports whether the
    /// signed element set is mapped onto itself.
    pub fn is_invariant_under(&self, map: &[usize]) -> Result<bool> {
        let original: BTreeSet<PauliOperator> = self.elements.iter().copied().collect();
        let mut image = BTreeSet::new();
        for e in &self.elements {
            image.insert(e.relabel(map)?);
        }
        Ok(image == original)
    }
}

pub fn pentagon_code() -> StabilizerCode {
    let gens = PENTAGON_GENERATORS
        .iter()
        .map(|s| s.parse().expect("valid generator"))
        .collect();
    StabilizerCode::from_generators(CodeKind::Pentagon, gens).expect("pentagon generators are valid")
}

pub fn heptagon_code() -> StabilizerCode {
    let gens = HEPTAGON_GENERATORS
        .iter()
        .map(|s| s.parse().expect("valid generator"))
        .collect();
    StabilizerCode::from_generators(CodeKind::Heptagon, gens).expect("heptagon generators are valid")
}

pub fn code(kind: CodeKind) -> StabilizerCode {
    match kind {
        CodeKind::Pentagon => pentagon_code(),
        CodeKind::Heptagon => heptagon_code(),
    }
}

/// Printed element listing of the pentagon group, keyed by generator indices.
pub const PENTAGON_LISTING: [(&str, &str); 15] = [
    ("1", "XZZXI"),
    ("2", "IXZZX"),
    ("3", "XIXZZ"),
    ("4", "ZXIXZ"),
    ("12", "XYIYX"),
    ("13", "IZYYZ"),
    ("14", "YYZIZ"),
    ("23", "XXYIY"),
    ("24", "ZIZYY"),
    ("34", "YXXYI"),
    ("234", "YIYXX"),
    ("134", "ZYYZI"),
    ("124", "YZIZY"),
    ("123", "IYXXY"),
    ("1234", "ZZXIX"),
];

/// Printed element listing of the heptagon group. A leading `~` denotes the
/// complementary generator set, so `~14` is g₂g₃g₅g₆.
pub const HEPTAGON_LISTING: [(&str, &str); 63] = [
    ("1", "IIIXXXX"),
    ("2", "IXXIIXX"),
    ("3", "XIXIXIX"),
    ("4", "IIIZZZZ"),
    ("5", "IZZIIZZ"),
    ("6", "ZIZIZIZ"),
    ("~1", "-YYIZXXZ"),
    ("~2", "-YZXYIXZ"),
    ("~3", "-ZYXYXIZ"),
    ("~4", "-YYIXZZX"),
    ("~5", "-YXZYIZX"),
    ("~6", "-XYZYZIX"),
    ("12", "IXXXXII"),
    ("13", "XIXXIXI"),
    ("14", "IIIYYYY"),
    ("15", "-IZZXXYY"),
    ("16", "-ZIZXYXY"),
    ("23", "XXIIXXI"),
    ("24", "-IXXZZYY"),
    ("25", "IYYIIYY"),
    ("26", "-ZXYIZXY"),
    ("34", "-XIXZYZY"),
    ("35", "-XZYIXZY"),
    ("36", "YIYIYIY"),
    ("45", "IZZZZII"),
    ("46", "ZIZZIZI"),
    ("56", "ZZIIZZI"),
    ("~12", "-YZXZXIY"),
    ("~13", "-ZYXZIXY"),
    ("~14", "YYIIYYI"),
    ("~15", "-YXZZXYI"),
    ("~16", "-XYZZYXI"),
    ("~23", "-ZZIYXXY"),
    ("~24", "-YZXXZYI"),
    ("~25", "YIYYIYI"),
    ("~26", "-XZYYZXI"),
    ("~34", "-ZYXXYZI"),
    ("~35", "-ZXYYXZI"),
    ("~36", "IYYYYII"),
    ("~45", "-YXZXZIY"),
    ("~46", "-XYZXIZY"),
    ("~56", "-XXIYZZY"),
    ("156", "-ZZIXYYX"),
    ("146", "-ZIZYXYX"),
    ("145", "-IZZYYXX"),
    ("256", "-ZYXIZYX"),
    ("246", "-ZXYZIYX"),
    ("245", "-IYYZZXX"),
    ("356", "-YZXIYZX"),
    ("346", "-YIYZXZX"),
    ("345", "-XZYZYIX"),
    ("123", "XXIXIIX"),
    ("234", "-XXIZYYZ"),
    ("134", "-XIXYZYZ"),
    ("124", "-IXXYYZZ"),
    ("235", "-XYZIXYZ"),
    ("135", "-XZYXIYZ"),
    ("125", "-IYYZZXX"),
    ("236", "-YXZIYXZ"),
    ("136", "-YIYXZXZ"),
    ("126", "-ZXYXYIZ"),
    ("456", "ZZIZIIZ"),
    ("123456", "YYIYIIY"),
];

/// Generator mask of a listing key such as `134` or `~25`.
pub fn listing_mask(label: &str, k: usize) -> Result<usize> {
    let (complement, digits) = match label.strip_prefix('~') {
        Some(rest) => (true, rest),
        None => (false, label),
    };
    let mut mask = 0usize;
    for c in digits.chars() {
        let d = c
            .to_digit(10)
            .filter(|d| (1..=k as u32).contains(d))
            .ok_or_else(|| Error::Parse(format!("bad generator index in `{label}`")))?;
        mask |= 1 << (d - 1);
    }
    if complement {
        mask ^= (1 << k) - 1;
    }
    Ok(mask)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ListingEntry {
    pub label: String,
    pub printed: String,
    pub computed: String,
    pub matches: bool,
}

/// Recomputes every listed element from the generators.
pub fn check_listing(code: &StabilizerCode, listing: &[(&str, &str)]) -> Result<Vec<ListingEntry>> {
    let k = code.generators.len();
    listing
        .iter()
        .map(|&(label, printed)| {
            let computed = code.elements[listing_mask(label, k)?];
            let printed_op: PauliOperator = printed.parse()?;
            Ok(ListingEntry {
                label: label.to_string(),
                printed: printed.to_string(),
                computed: computed.to_string(),
                matches: printed_op == computed,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SplitLabeling {
    pub code: StabilizerCode,
    pub left_positions: Vec<usize>,
    pub right_positions: Vec<usize>,
    /// Unsigned restriction to the left positions, indexed by generator mask.
    pub left_labels: Vec<PauliOperator>,
    /// Restriction to the right positions carrying the element's sign.
    pub right_labels: Vec<PauliOperator>,
}

impl SplitLabeling {
    /// True iff the nontrivial left labels are exactly the nonzero vectors of
    /// the left positions, each hit once.
    pub fn left_is_bijective(&self) -> bool {
        let m = self.left_positions.len();
        let labels: BTreeSet<u16> = self.left_labels[1..].iter().map(|l| l.vec().bits()).collect();
        labels.len() == self.left_labels.len() - 1 && labels.len() == (1usize << (2 * m)) - 1 && !labels.contains(&0)
    }
}

pub fn split(code: &StabilizerCode, left: &[usize]) -> Result<SplitLabeling> {
    let n = code.n_qubits();
    check_positions(left, n)?;
    if !(2..=3).contains(&left.len()) {
        return Err(Error::InvalidPositions(format!(
            "left part {left:?} must have 2 or 3 qubits"
        )));
    }
    let right: Vec<usize> = (0..n).filter(|i| !left.contains(i)).collect();
    let mut left_labels = Vec::with_capacity(code.elements.len());
    let mut right_labels = Vec::with_capacity(code.elements.len());
    for e in &code.elements {
        left_labels.push(e.restrict(left)?);
        let r = e.restrict(&right)?;
        right_labels.push(if e.sign() == Some(-1) { -r } else { r });
    }
    Ok(SplitLabeling {
        code: code.clone(),
        left_positions: left.to_vec(),
        right_positions: right,
        left_labels,
        right_labels,
    })
}

/// Sign s with a₁a₂⋯a_k = s·identity for mutually commuting operators.
pub fn context_sign(points: &[PauliOperator]) -> Result<i8> {
    let first = points.first().ok_or_else(|| Error::Domain("empty context".into()))?;
    for (i, a) in points.iter().enumerate() {
        if a.n() != first.n() {
            return Err(Error::DimensionMismatch {
                left: first.n(),
                right: a.n(),
            });
        }
        for b in &points[i + 1..] {
            if !a.commutes_with(b) {
                return Err(Error::NonCommuting(a.to_string(), b.to_string()));
            }
        }
    }
    let product = points.iter().skip(1).fold(*first, |acc, p| acc * *p);
    match (product.vec().is_zero(), product.sign()) {
        (true, Some(s)) => Ok(s),
        _ => Err(Error::NotClosed(product.to_string())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ContextKind {
    Line,
    Plane,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Context {
    pub points: Vec<PauliOperator>,
    pub sign: i8,
    pub kind: ContextKind,
}

impl Context {
    pub fn new(points: Vec<PauliOperator>) -> Result<Self> {
        let kind = match points.len() {
            3 => ContextKind::Line,
            7 => ContextKind::Plane,
            k => return Err(Error::Domain(format!("a context has 3 or 7 points, got {k}"))),
        };
        let sign = context_sign(&points)?;
        Ok(Self { points, sign, kind })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SplitLine {
    /// Generator masks of the three elements.
    pub elements: [usize; 3],
    pub left_sign: i8,
    pub right_sign: i8,
}

#[derive(Debug, Clone, Serialize)]
pub struct SplitDoily {
    /// Generator masks of the 15 points, in increasing order.
    pub points: Vec<usize>,
    pub left_labels: Vec<PauliOperator>,
    pub right_labels: Vec<PauliOperator>,
    pub lines: Vec<SplitLine>,
}

impl SplitDoily {
    pub fn incidence(&self) -> Incidence {
        let idx = |m: usize| self.points.iter().position(|&p| p == m).expect("line point");
        Incidence::new(
            self.points.len(),
            self.lines
                .iter()
                .map(|l| l.elements.iter().map(|&m| idx(m)).collect())
                .collect(),
        )
    }

    pub fn negative_left(&self) -> Vec<&SplitLine> {
        self.lines.iter().filter(|l| l.left_sign < 0).collect()
    }

    pub fn negative_right(&self) -> Vec<&SplitLine> {
        self.lines.iter().filter(|l| l.right_sign < 0).collect()
    }
}

/// Doily formed by a 15-element subgroup: points are its nontrivial elements
/// and lines the triples {a, b, ab} whose left labels commute.
fn doily_on(labeling: &SplitLabeling, masks: Vec<usize>) -> Result<SplitDoily> {
    let mut lines = Vec::new();
    for (i, &a) in masks.iter().enumerate() {
        for &b in &masks[i + 1..] {
            let c = a ^ b;
            if c <= b || !masks.contains(&c) {
                continue;
            }
            let l = &labeling.left_labels;
            if !l[a].commutes_with(&l[b]) {
                continue;
            }
            let left_sign = context_sign(&[l[a], l[b], l[c]])?;
            let r = &labeling.right_labels;
            let right_sign = context_sign(&[r[a], r[b], r[c]])?;
            lines.push(SplitLine {
                elements: [a, b, c],
                left_sign,
                right_sign,
            });
        }
    }
    Ok(SplitDoily {
        left_labels: masks.iter().map(|&m| labeling.left_labels[m]).collect(),
        right_labels: masks.iter().map(|&m| labeling.right_labels[m]).collect(),
        points: masks,
        lines,
    })
}

pub fn build_split_doily(labeling: &SplitLabeling) -> Result<SplitDoily> {
    if labeling.code.kind != CodeKind::Pentagon || labeling.left_positions.len() != 2 {
        return Err(Error::Domain(
            "split doily needs a 2+3 split of the pentagon code".into(),
        ));
    }
    doily_on(labeling, (1..16).collect())
}

/// The 15 heptagon elements acting trivially on qubit 7, whose four-qubit
/// labels (last slot identity) span a doily.
pub fn embedded_central_doily() -> SplitDoily {
    let labeling = heptagon_split();
    let masks = labeling
        .code
        .nontrivial()
        .filter(|(_, e)| e.symbol(6) == 'I')
        .map(|(m, _)| m)
        .collect();
    doily_on(&labeling, masks).expect("subgroup elements commute")
}

/// The usual 3+4 split of the heptagon code, qubits (1,2,4)(3,5,6,7).
pub fn heptagon_split() -> SplitLabeling {
    split(&heptagon_code(), &[0, 1, 3]).expect("valid positions")
}

pub fn pentagon_split() -> SplitLabeling {
    split(&pentagon_code(), &[0, 1]).expect("valid positions")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaneClass {
    pub positive: bool,
    pub product_sign: i8,
    pub negative_lines: Vec<[PauliOperator; 3]>,
}

/// The seven lines {a, b, a+b} of a Fano plane given as point indices.
pub fn fano_lines(vecs: &[GF2Vector]) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..vecs.len() {
        for j in i + 1..vecs.len() {
            if let Some(k) = vecs.iter().position(|v| *v == vecs[i] + vecs[j]) {
                if k > j {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

pub fn classify_plane(points: &[PauliOperator]) -> Result<PlaneClass> {
    let describe = || points.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    if points.len() != 7 {
        return Err(Error::NotAFanoPlane(describe()));
    }
    let vecs: Vec<GF2Vector> = points.iter().map(|p| p.vec()).collect();
    let span = gf2::span(&vecs)?;
    let distinct: BTreeSet<GF2Vector> = vecs.iter().copied().collect();
    if span.rank() != 3 || distinct.len() != 7 || distinct.contains(&GF2Vector::zero(span.n())?) {
        return Err(Error::NotAFanoPlane(describe()));
    }
    let product_sign = context_sign(points)?;
    let negative_lines: Vec<[PauliOperator; 3]> = fano_lines(&vecs)
        .into_iter()
        .filter(|l| context_sign(&[points[l[0]], points[l[1]], points[l[2]]]) == Ok(-1))
        .map(|l| [points[l[0]], points[l[1]], points[l[2]]])
        .collect();
    Ok(PlaneClass {
        positive: product_sign == 1 && negative_lines.is_empty(),
        product_sign,
        negative_lines,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PlaneColor {
    Blue,
    Red,
    Green,
}

impl PlaneColor {
    pub const ALL: [PlaneColor; 3] = [PlaneColor::Blue, PlaneColor::Red, PlaneColor::Green];

    /// Single-qubit observable on qubit 7 shared by every plane of this color.
    pub fn marker(self) -> char {
        match self {
            PlaneColor::Blue => 'Y',
            PlaneColor::Red => 'Z',
            PlaneColor::Green => 'X',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PlaneColor::Blue => "blue",
            PlaneColor::Red => "red",
            PlaneColor::Green => "green",
        }
    }
}

/// A plane of heptagon elements with its two split labelings.
#[derive(Debug, Clone, Serialize)]
pub struct HeptaPlane {
    /// Recovery qubit (1-based): the slot where every element acts trivially.
    pub slot: usize,
    pub color: PlaneColor,
    pub masks: Vec<usize>,
    pub left: Vec<PauliOperator>,
    pub right: Vec<PauliOperator>,
    pub class: PlaneClass,
}

/// Rank-3 subgroups of the heptagon group whose three-qubit labels are
/// mutually commuting, i.e. the 135 planes of W(5,2).
pub fn heptagon_planes(labeling: &SplitLabeling) -> Vec<Vec<usize>> {
    let l = &labeling.left_labels;
    let mut planes = Vec::new();
    for s in gf2::enumerate_subspaces(3, 3, gf2::SubspaceFilter::All).expect("valid rank") {
        let pts: Vec<usize> = s.points().iter().map(|v| v.bits() as usize).collect();
        let commuting = pts
            .iter()
            .enumerate()
            .all(|(i, &a)| pts[i + 1..].iter().all(|&b| l[a].commutes_with(&l[b])));
        if commuting {
            planes.push(pts);
        }
    }
    planes
}

/// Negative planes whose elements all act trivially on one of the qubits 3, 5, 6.
pub fn negative_planes_heptacode() -> Vec<HeptaPlane> {
    let labeling = heptagon_split();
    let mut out = Vec::new();
    for slot in [3usize, 5, 6] {
        for masks in heptagon_planes(&labeling) {
            let idle = masks.iter().all(|&m| labeling.code.elements[m].symbol(slot - 1) == 'I');
            if !idle {
                continue;
            }
            let right: Vec<PauliOperator> = masks.iter().map(|&m| labeling.right_labels[m]).collect();
            let class = classify_plane(&right).expect("subgroup planes are Fano planes");
            if class.positive {
                continue;
            }
            let marker = right
                .iter()
                .find(|r| r.restrict(&[0, 1, 2]).expect("four-qubit label").is_identity())
                .map(|r| r.symbol(3));
            let color = PlaneColor::ALL
                .into_iter()
                .find(|c| Some(c.marker()) == marker)
                .expect("recovery planes contain a qubit-7 observable");
            out.push(HeptaPlane {
                slot,
                color,
                left: masks.iter().map(|&m| labeling.left_labels[m]).collect(),
                right,
                masks,
                class,
            });
        }
    }
    out.sort_by_key(|p| (p.slot, p.color));
    out
}

/// Printed listing of the nine recovery planes: slot, color, three-qubit
/// labels, signed four-qubit labels.
pub const NEGATIVE_PLANE_LISTING: [(usize, PlaneColor, &str, &str); 9] = [
    (
        3,
        PlaneColor::Blue,
        "YYY YYI ZZI XXI ZZY IIY XXY",
        "IIIY IYYI IZZI IXXI -IXXY IYYY -IZZY",
    ),
    (
        3,
        PlaneColor::Red,
        "ZZZ YYI ZZI XXI YYZ XXZ IIZ",
        "IIIZ IYYI IZZI IXXI -IXXZ -IYYZ IZZZ",
    ),
    (
        3,
        PlaneColor::Green,
        "XXX YYI ZZI XXI IIX ZZX YYX",
        "IIIX IYYI IZZI IXXI IXXX -IYYX -IZZX",
    ),
    (
        5,
        PlaneColor::Blue,
        "YYY YIY ZIZ XIX ZYZ IYI XYX",
        "IIIY YIYI ZIZI XIXI -XIXY YIYY -ZIZY",
    ),
    (
        5,
        PlaneColor::Red,
        "ZZZ YIY ZIZ XIX YZY XZX IZI",
        "IIIZ YIYI ZIZI XIXI -XIXZ -YIYZ ZIZZ",
    ),
    (
        5,
        PlaneColor::Green,
        "XXX YIY ZIZ XIX IXI ZXZ YXY",
        "IIIX YIYI ZIZI XIXI XIXX -YIYX -ZIZX",
    ),
    (
        6,
        PlaneColor::Blue,
        "YYY IYY IZZ IXX YZZ YII YXX",
        "IIIY YYII ZZII XXII -XXIY YYIY -ZZIY",
    ),
    (
        6,
        PlaneColor::Red,
        "ZZZ IYY IZZ IXX ZYY ZXX ZII",
        "IIIZ YYII ZZII XXII -XXIZ -YYIZ ZZIZ",
    ),
    (
        6,
        PlaneColor::Green,
        "XXX IYY IZZ IXX XII XZZ XYY",
        "IIIX YYII ZZII XXII XXIX -YYIX -ZZIX",
    ),
];

/// Lines shared by the three planes of each recovery slot, as printed.
pub const SLOT_INTERSECTIONS: [(usize, &str, &str); 3] = [
    (3, "XXI YYI ZZI", "IXXI IYYI IZZI"),
    (5, "XIX YIY ZIZ", "XIXI YIYI ZIZI"),
    (6, "IXX IYY IZZ", "XXII YYII ZZII"),
];

/// Histogram of the 63 four-qubit labels by number of identity slots.
pub fn type23_statistics(labeling: &SplitLabeling) -> Result<[usize; 4]> {
    if labeling.code.kind != CodeKind::Heptagon || labeling.right_positions.len() != 4 {
        return Err(Error::Domain(
            "type statistics need a 3+4 split of the heptagon code".into(),
        ));
    }
    let mut hist = [0usize; 4];
    for r in &labeling.right_labels[1..] {
        let identities = 4 - r.vec().weight() as usize;
        if identities == 4 {
            return Err(Error::Domain("trivial four-qubit label".into()));
        }
        hist[identities] += 1;
    }
    Ok(hist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::parse_list;
    use crate::polar::build_polar_space;

    fn op(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    fn set(s: &str) -> BTreeSet<PauliOperator> {
        parse_list(s).unwrap().into_iter().collect()
    }

    #[test]
    fn pentagon_group_shape() {
        let c = pentagon_code();
        assert_eq!(c.elements.len(), 16);
        assert_eq!(c.generators[0], op("XZZXI"));
        assert_eq!(c.elements[0b0011], op("XYIYX"));
        assert_eq!(c.negative_count(), 0);
        for a in &c.elements {
            assert!((*a * *a).is_identity());
            for b in &c.elements {
                assert!(a.commutes_with(b));
            }
        }
        let vecs: Vec<GF2Vector> = c.generators.iter().map(|g| g.vec()).collect();
        let s = gf2::span(&vecs).unwrap();
        assert_eq!((s.rank(), s.points().len()), (4, 15));
        assert!(s.is_totally_isotropic());
    }

    #[test]
    fn pentagon_listing_matches() {
        let entries = check_listing(&pentagon_code(), &PENTAGON_LISTING).unwrap();
        assert!(entries.iter().all(|e| e.matches), "{entries:?}");
    }

    #[test]
    fn pentagon_cyclic_families() {
        let c = pentagon_code();
        let nontrivial: BTreeSet<PauliOperator> = c.nontrivial().map(|(_, e)| e).collect();
        let mut generated = BTreeSet::new();
        for seed in ["XYIYX", "YZIZY", "ZXIXZ"] {
            let s: Vec<char> = seed.chars().collect();
            for shift in 0..5 {
                let rotated: String = (0..5).map(|i| s[(i + 5 - shift) % 5]).collect();
                generated.insert(op(&rotated));
            }
        }
        assert_eq!(generated, nontrivial);
        assert!(c.is_invariant_under(&[1, 2, 3, 4, 0]).unwrap());
    }

    #[test]
    fn heptagon_listing_reports_single_mismatch() {
        let c = heptagon_code();
        assert_eq!(c.elements.len(), 64);
        assert_eq!(c.negative_count(), 42);
        assert_eq!(c.elements[0b001001], op("IIIYYYY"));
        let entries = check_listing(&c, &HEPTAGON_LISTING).unwrap();
        let labels: BTreeSet<usize> = HEPTAGON_LISTING
            .iter()
            .map(|(l, _)| listing_mask(l, 6).unwrap())
            .collect();
        assert_eq!(labels.len(), 63);
        let bad: Vec<&ListingEntry> = entries.iter().filter(|e| !e.matches).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].label, "125");
        assert_eq!(bad[0].computed, "-IYYXXZZ");
    }

    #[test]
    fn heptagon_cyclic_symmetry() {
        // qubit 1→4, 2→1, 3→5, 4→2, 5→6, 6→3, 7→7 (0-based below)
        let sigma = [3, 0, 4, 1, 5, 2, 6];
        assert!(heptagon_code().is_invariant_under(&sigma).unwrap());
    }

    #[test]
    fn listing_mask_parsing() {
        assert_eq!(listing_mask("~1", 6).unwrap(), 0b111110);
        assert_eq!(listing_mask("135", 6).unwrap(), 0b010101);
        assert!(listing_mask("7", 6).is_err());
    }

    #[test]
    fn generator_validation() {
        let bad = vec![op("XIIII"), op("ZIIII")];
        assert!(matches!(
            StabilizerCode::from_generators(CodeKind::Pentagon, bad),
            Err(Error::NonCommuting(..))
        ));
        let dep = vec![op("XXIII"), op("ZZIII"), op("YYIII")];
        assert!(StabilizerCode::from_generators(CodeKind::Pentagon, dep).is_err());
    }

    #[test]
    fn pentagon_split_labels() {
        let s = pentagon_split();
        assert!(s.left_is_bijective());
        let m = s.code.mask_of(op("XZZXI").vec()).unwrap();
        assert_eq!((s.left_labels[m], s.right_labels[m]), (op("XZ"), op("ZXI")));
        for a in 1..16 {
            for b in 1..16 {
                let sum = s.left_labels[a].vec() + s.left_labels[b].vec();
                assert_eq!(sum, s.left_labels[a ^ b].vec());
            }
        }
        assert!(split(&pentagon_code(), &[0]).is_err());
        assert!(split(&pentagon_code(), &[0, 9]).is_err());
    }

    #[test]
    fn heptagon_split_labels() {
        let s = heptagon_split();
        assert!(s.left_is_bijective());
        assert_eq!(s.left_labels[1], op("IIX"));
        assert_eq!(s.right_labels[1], op("IXXX"));
        assert_eq!(s.right_labels[listing_mask("~1", 6).unwrap()], op("-IXXZ"));
    }

    #[test]
    fn split_doily_negative_lines() {
        let d = build_split_doily(&pentagon_split()).unwrap();
        assert_eq!(d.points.len(), 15);
        assert_eq!(d.lines.len(), 15);
        assert!(d.incidence().is_generalized_quadrangle(2, 2));
        let left: BTreeSet<BTreeSet<PauliOperator>> = d
            .negative_left()
            .iter()
            .map(|l| {
                l.elements
                    .iter()
                    .map(|&m| d.left_labels[d.points.iter().position(|&p| p == m).unwrap()])
                    .collect()
            })
            .collect();
        let expected_left: BTreeSet<BTreeSet<PauliOperator>> =
            ["XX YY ZZ", "ZX XY YZ", "YX ZY XZ"].iter().map(|s| set(s)).collect();
        assert_eq!(left, expected_left);
        let right: BTreeSet<BTreeSet<PauliOperator>> = d
            .negative_right()
            .iter()
            .map(|l| {
                l.elements
                    .iter()
                    .map(|&m| d.right_labels[d.points.iter().position(|&p| p == m).unwrap()])
                    .collect()
            })
            .collect();
        let expected_right: BTreeSet<BTreeSet<PauliOperator>> = ["YIY ZIZ XIX", "IXZ IYX IZY", "XYI YZI ZXI"]
            .iter()
            .map(|s| set(s))
            .collect();
        assert_eq!(right, expected_right);
        // the printed first and second two-qubit lines are not lines of the doily
        assert!(context_sign(&parse_list("XY YY ZZ").unwrap()).is_err());
        assert!(context_sign(&parse_list("ZX XY ZY").unwrap()).is_err());
    }

    #[test]
    fn split_doily_lines_are_isotropic_lines() {
        let d = build_split_doily(&pentagon_split()).unwrap();
        let w = build_polar_space(2).unwrap();
        let ours: BTreeSet<Vec<u16>> = d
            .lines
            .iter()
            .map(|l| {
                let vecs: Vec<GF2Vector> = l
                    .elements
                    .iter()
                    .map(|&m| pentagon_split().left_labels[m].vec())
                    .collect();
                gf2::span(&vecs).unwrap().key()
            })
            .collect();
        let theirs: BTreeSet<Vec<u16>> = w.lines().iter().map(|l| l.key()).collect();
        assert_eq!(ours, theirs);
    }

    #[test]
    fn unsplit_triples_are_positive() {
        let c = pentagon_code();
        for a in 1..16usize {
            for b in a + 1..16 {
                let t = [c.elements[a], c.elements[b], c.elements[a ^ b]];
                assert_eq!(context_sign(&t).unwrap(), 1);
            }
        }
    }

    #[test]
    fn context_sign_cases() {
        assert_eq!(context_sign(&parse_list("XX YY ZZ").unwrap()).unwrap(), -1);
        assert!(matches!(
            context_sign(&parse_list("XI ZI").unwrap()),
            Err(Error::NonCommuting(..))
        ));
        assert!(matches!(
            context_sign(&parse_list("XI IX").unwrap()),
            Err(Error::NotClosed(_))
        ));
        let negplane = parse_list("IXXI IYYI IZZI -IXXZ -IYYZ IZZZ IIIZ").unwrap();
        assert_eq!(context_sign(&negplane).unwrap(), 1);
        let class = classify_plane(&negplane).unwrap();
        assert!(!class.positive);
        assert!(class
            .negative_lines
            .iter()
            .any(|l| l.iter().copied().collect::<BTreeSet<_>>() == set("IXXI IYYI IZZI")));
        assert_eq!(
            Context::new(parse_list("XX YY ZZ").unwrap()).unwrap().kind,
            ContextKind::Line
        );
    }

    #[test]
    fn flipped_plane_and_sign_choices_are_positive() {
        let flipped = parse_list("IXXI -IYYI IZZI IXXZ -IYYZ IZZZ IIIZ").unwrap();
        assert!(classify_plane(&flipped).unwrap().positive);
        let gens = parse_list("IXXI IZZI IIIZ").unwrap();
        for signs in 0..8u8 {
            let g: Vec<PauliOperator> = gens
                .iter()
                .enumerate()
                .map(|(j, &x)| if signs >> j & 1 == 1 { -x } else { x })
                .collect();
            let pts: Vec<PauliOperator> = (1..8usize)
                .map(|m| {
                    (0..3)
                        .filter(|j| m >> j & 1 == 1)
                        .fold(PauliOperator::identity(4).unwrap(), |acc, j| acc * g[j])
                })
                .collect();
            assert!(classify_plane(&pts).unwrap().positive);
        }
    }

    #[test]
    fn classify_plane_rejects_non_planes() {
        let six = parse_list("IXXI IYYI IZZI -IXXZ -IYYZ IZZZ").unwrap();
        assert!(matches!(classify_plane(&six), Err(Error::NotAFanoPlane(_))));
        let repeated = parse_list("IXXI IYYI IZZI -IXXZ -IYYZ IZZZ IXXI").unwrap();
        assert!(classify_plane(&repeated).is_err());
    }

    #[test]
    fn nine_negative_planes_match_listing() {
        let planes = negative_planes_heptacode();
        assert_eq!(planes.len(), 9);
        for (p, (slot, color, left, right)) in planes.iter().zip(NEGATIVE_PLANE_LISTING) {
            assert_eq!((p.slot, p.color), (slot, color));
            assert_eq!(p.left.iter().copied().collect::<BTreeSet<_>>(), set(left));
            assert_eq!(p.right.iter().copied().collect::<BTreeSet<_>>(), set(right));
            assert!(!p.class.positive);
        }
        for (slot, left_line, right_line) in SLOT_INTERSECTIONS {
            let group: Vec<&HeptaPlane> = planes.iter().filter(|p| p.slot == slot).collect();
            let common: BTreeSet<usize> = group[0]
                .masks
                .iter()
                .copied()
                .filter(|m| group.iter().all(|p| p.masks.contains(m)))
                .collect();
            let labeling = heptagon_split();
            let l: BTreeSet<PauliOperator> = common.iter().map(|&m| labeling.left_labels[m]).collect();
            let r: BTreeSet<PauliOperator> = common.iter().map(|&m| labeling.right_labels[m]).collect();
            assert_eq!(l, set(left_line));
            assert_eq!(r, set(right_line));
        }
    }

    #[test]
    fn w52_plane_inventory() {
        let labeling = heptagon_split();
        let planes = heptagon_planes(&labeling);
        assert_eq!(planes.len(), 135);
        let negative = planes
            .iter()
            .filter(|m| {
                let right: Vec<PauliOperator> = m.iter().map(|&x| labeling.right_labels[x]).collect();
                !classify_plane(&right).unwrap().positive
            })
            .count();
        assert_eq!(negative, 81);
    }

    #[test]
    fn negative_planes_permute_under_cyclic_symmetry() {
        let sigma = [3, 0, 4, 1, 5, 2, 6];
        let c = heptagon_code();
        let planes = negative_planes_heptacode();
        let key = |p: &HeptaPlane| p.masks.iter().copied().collect::<BTreeSet<_>>();
        let all: BTreeSet<BTreeSet<usize>> = planes.iter().map(key).collect();
        for p in &planes {
            let image: BTreeSet<usize> = p
                .masks
                .iter()
                .map(|&m| c.mask_of(c.elements[m].relabel(&sigma).unwrap().vec()).unwrap())
                .collect();
            assert!(all.contains(&image));
        }
    }

    #[test]
    fn type23_histogram() {
        assert_eq!(type23_statistics(&heptagon_split()).unwrap(), [18, 33, 9, 3]);
        assert!(type23_statistics(&pentagon_split()).is_err());
    }

    #[test]
    fn central_doily() {
        let d = embedded_central_doily();
        assert_eq!(d.points.len(), 15);
        assert_eq!(d.lines.len(), 15);
        assert!(d.incidence().is_generalized_quadrangle(2, 2));
        for l in &d.lines {
            assert_eq!(l.left_sign, l.right_sign);
        }
        assert!(d.lines.iter().any(|l| l.left_sign < 0));
        let right: BTreeSet<PauliOperator> = d.right_labels.iter().map(|r| r.unsigned()).collect();
        for g in ["YYII", "XXII", "ZZII", "YIYI", "XIXI", "ZIZI", "IYYI", "IXXI", "IZZI"] {
            assert!(right.contains(&op(g)), "{g}");
        }
    }
}
