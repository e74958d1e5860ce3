//! The checks behind `doily verify` and the acceptance suite, one claim per
//! verified statement, grouped into suites.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::codes::{
    build_split_doily, check_listing, heptagon_code, heptagon_split, negative_planes_heptacode, pentagon_code,
    pentagon_split, type23_statistics, CodeKind, HeptaPlane, SplitDoily, HEPTAGON_LISTING, NEGATIVE_PLANE_LISTING,
    PENTAGON_LISTING, SLOT_INTERSECTIONS,
};
use crate::contextuality::{contextuality_degree, max_stabilizer_lift, plane_contextuality_w52, IncidenceSystem, Mode};
use crate::error::Result;
use crate::gf2::{self, SubspaceFilter};
use crate::pauli::{parse_list, PauliOperator};
use crate::polar::{
    build_polar_space, doily_spreads, klein_polar, klein_quadric, klein_real_doily, plucker_line_map,
    plucker_plane_pairs, quadric_points, verify_plucker_plane_pairs,
};
use crate::protocols::{
    builtin_protocols, exhaustive_branch_check, no_information_check, sample_counts, sub_threshold_coalitions,
    within_three_sigma,
};
use crate::state::identities::{
    heptagon_plane, pentagon_bell, printed_variants, verify_decomposition, verify_identity, IDENTITY_IDS,
};
use crate::state::logical::{listing_discrepancies, logical_states, printed_logical_states};
use crate::state::mub::{signed_spread, spread_mub_check};
use crate::state::{BasisFamily, SecretParam};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Pentagon,
    Heptagon,
    Geometry,
    Contextuality,
    Protocols,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Pentagon,
        Suite::Heptagon,
        Suite::Geometry,
        Suite::Contextuality,
        Suite::Protocols,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Pentagon => "pentagon",
            Suite::Heptagon => "heptagon",
            Suite::Geometry => "geometry",
            Suite::Contextuality => "contextuality",
            Suite::Protocols => "protocols",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Claim {
    pub id: String,
    /// Acceptance criterion number, 1 to 10.
    pub criterion: u8,
    pub statement: String,
    pub pass: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub seed: u64,
    /// Runs the identity check on a pentagon table with one sign flipped.
    pub inject_fault: bool,
}

type Check = fn(&Options) -> Result<(bool, String)>;

struct ClaimDef {
    id: &'static str,
    criterion: u8,
    suites: &'static [Suite],
    statement: &'static str,
    check: Check,
}

const CLAIMS: [ClaimDef; 17] = [
    ClaimDef {
        id: "geometry-counts",
        criterion: 1,
        suites: &[Suite::Geometry],
        statement: "W(3,2)=15/15, W(5,2)=63/315/135, W(7,2)=255/5355/11475/2295, Q+(5,2)=35, Q+(7,2)=135",
        check: geometry_counts,
    },
    ClaimDef {
        id: "pentagon-listing",
        criterion: 2,
        suites: &[Suite::Pentagon],
        statement: "the 15 pentagon elements and both logical states match their printed listings",
        check: pentagon_listing,
    },
    ClaimDef {
        id: "heptagon-listing",
        criterion: 2,
        suites: &[Suite::Heptagon],
        statement: "the 63 heptagon elements match the printed listing up to the known misprints; 42 are negative",
        check: heptagon_listing,
    },
    ClaimDef {
        id: "pentagon-split",
        criterion: 3,
        suites: &[Suite::Pentagon],
        statement: "2+3 split: bijective left labels, 3 negative lines per labeling",
        check: pentagon_split_claim,
    },
    ClaimDef {
        id: "heptagon-split",
        criterion: 3,
        suites: &[Suite::Heptagon],
        statement: "3+4 split: bijective left labels, identity-count histogram (18,33,9,3)",
        check: heptagon_split_claim,
    },
    ClaimDef {
        id: "doily-contextuality",
        criterion: 4,
        suites: &[Suite::Contextuality],
        statement: "split doily: degree 3 and maximal lift 12 on both labelings (exhaustive)",
        check: doily_contextuality,
    },
    ClaimDef {
        id: "w52-plane-degree",
        criterion: 4,
        suites: &[Suite::Contextuality],
        statement: "W(5,2) with plane contexts: degree interval reported",
        check: w52_plane_degree,
    },
    ClaimDef {
        id: "pentagon-identities",
        criterion: 5,
        suites: &[Suite::Pentagon],
        statement: "Bell and chi branch decompositions of the pentagon state hold exactly",
        check: pentagon_identities,
    },
    ClaimDef {
        id: "heptagon-identities",
        criterion: 5,
        suites: &[Suite::Heptagon],
        statement: "Bell-pair and plane decompositions of the heptagon state hold exactly",
        check: heptagon_identities,
    },
    ClaimDef {
        id: "pentagon-protocols",
        criterion: 6,
        suites: &[Suite::Pentagon, Suite::Protocols],
        statement: "pentagon protocols recover on every branch; outcomes uniform within 3 sigma",
        check: pentagon_protocols,
    },
    ClaimDef {
        id: "heptagon-protocols",
        criterion: 6,
        suites: &[Suite::Heptagon, Suite::Protocols],
        statement: "heptagon protocols recover on every branch; outcomes uniform within 3 sigma",
        check: heptagon_protocols,
    },
    ClaimDef {
        id: "pentagon-no-information",
        criterion: 7,
        suites: &[Suite::Pentagon, Suite::Protocols],
        statement: "all 15 pentagon coalitions of 1 or 2 parties see I/2^k",
        check: pentagon_no_information,
    },
    ClaimDef {
        id: "heptagon-no-information",
        criterion: 7,
        suites: &[Suite::Heptagon, Suite::Protocols],
        statement: "all 63 heptagon coalitions of 1 to 3 parties see a secret-independent state",
        check: heptagon_no_information,
    },
    ClaimDef {
        id: "klein-correspondence",
        criterion: 8,
        suites: &[Suite::Geometry],
        statement: "35 lines map to the 35 Klein quadric points; the real part is a doily",
        check: klein_correspondence,
    },
    ClaimDef {
        id: "negative-planes",
        criterion: 9,
        suites: &[Suite::Heptagon, Suite::Geometry],
        statement: "9 recovery planes match the listing and meet in the listed lines",
        check: negative_planes,
    },
    ClaimDef {
        id: "plucker-grid",
        criterion: 9,
        suites: &[Suite::Heptagon, Suite::Geometry],
        statement: "the 9 plane observables form a grid with 3 negative lines on Q+(7,2), commuting with YIII",
        check: plucker_grid,
    },
    ClaimDef {
        id: "spread-mub",
        criterion: 10,
        suites: &[Suite::Geometry],
        statement: "6 doily spreads; the signed spread gives 5 mutually unbiased bases",
        check: spread_mub,
    },
];

pub fn claim_ids() -> Vec<&'static str> {
    CLAIMS.iter().map(|c| c.id).collect()
}

fn evaluate(def: &ClaimDef, opts: &Options) -> Claim {
    let start = Instant::now();
    let (pass, detail) = match (def.check)(opts) {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Claim {
        id: def.id.to_string(),
        criterion: def.criterion,
        statement: def.statement.to_string(),
        pass,
        detail,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// Claims of the given suites (all when empty), in declaration order.
pub fn select(suites: &[Suite]) -> Vec<&'static str> {
    CLAIMS
        .iter()
        .filter(|c| suites.is_empty() || c.suites.iter().any(|s| suites.contains(s)))
        .map(|c| c.id)
        .collect()
}

pub fn run_claim(id: &str, opts: &Options) -> Result<Claim> {
    CLAIMS
        .iter()
        .find(|c| c.id == id)
        .map(|c| evaluate(c, opts))
        .ok_or_else(|| crate::Error::Unknown(id.to_string()))
}

/// All claims of one acceptance criterion.
pub fn run_criterion(criterion: u8, opts: &Options) -> Vec<Claim> {
    CLAIMS
        .iter()
        .filter(|c| c.criterion == criterion)
        .map(|c| evaluate(c, opts))
        .collect()
}

fn geometry_counts(_: &Options) -> Result<(bool, String)> {
    let w3 = build_polar_space(2)?;
    let w5 = build_polar_space(3)?;
    let w7 = build_polar_space(4)?;
    let c3 = [w3.points().len(), w3.lines().len()];
    let c5 = [w5.points().len(), w5.lines().len(), w5.generators().len()];
    let c7 = [
        w7.points().len(),
        w7.lines().len(),
        w7.subspaces(3).len(),
        w7.generators().len(),
    ];
    let q5 = quadric_points(3)?.len();
    let q7 = quadric_points(4)?.len();
    let lagrangian = [w3.generators().len(), w5.generators().len()];
    let pass = c3 == [15, 15]
        && c5 == [63, 315, 135]
        && c7 == [255, 5355, 11475, 2295]
        && q5 == 35
        && q7 == 135
        && lagrangian == [15, 135];
    Ok((
        pass,
        format!("W(3,2) {c3:?}; W(5,2) {c5:?}; W(7,2) {c7:?}; Q+(5,2) {q5}; Q+(7,2) {q7}; Lagrangian {lagrangian:?}"),
    ))
}

fn pentagon_listing(_: &Options) -> Result<(bool, String)> {
    let entries = check_listing(&pentagon_code(), &PENTAGON_LISTING)?;
    let bad = entries.iter().filter(|e| !e.matches).count();
    let (zero, one) = logical_states(CodeKind::Pentagon);
    let (pz, po) = printed_logical_states(CodeKind::Pentagon);
    let states_ok = zero == pz && one == po;
    Ok((
        bad == 0 && entries.len() == 15 && states_ok,
        format!(
            "{} elements, {bad} mismatches; logical states match: {states_ok}",
            entries.len()
        ),
    ))
}

fn heptagon_listing(_: &Options) -> Result<(bool, String)> {
    let c = heptagon_code();
    let entries = check_listing(&c, &HEPTAGON_LISTING)?;
    let bad: Vec<String> = entries
        .iter()
        .filter(|e| !e.matches)
        .map(|e| format!("{}: printed {} computed {}", e.label, e.printed, e.computed))
        .collect();
    let negatives = c.negative_count();
    let (zero, one) = logical_states(CodeKind::Heptagon);
    let (pz, po) = printed_logical_states(CodeKind::Heptagon);
    let ket_diff: Vec<String> = listing_discrepancies(&one, &po).into_iter().map(|d| d.0).collect();
    let pass = entries.len() == 63
        && bad.len() == 1
        && entries.iter().any(|e| !e.matches && e.label == "125")
        && negatives == 42
        && zero == pz
        && ket_diff == ["0001111", "1110000"];
    Ok((
        pass,
        format!(
            "{} elements, {negatives} negative; element misprints [{}]; |1> listing differs at {:?}",
            entries.len(),
            bad.join("; "),
            ket_diff
        ),
    ))
}

fn labels_of(d: &SplitDoily, line: &[usize; 3], left: bool) -> BTreeSet<PauliOperator> {
    let labels = if left { &d.left_labels } else { &d.right_labels };
    line.iter()
        .map(|m| labels[d.points.iter().position(|p| p == m).expect("point of the doily")])
        .collect()
}

fn triples(lines: &[&str]) -> Result<BTreeSet<BTreeSet<PauliOperator>>> {
    lines.iter().map(|l| Ok(parse_list(l)?.into_iter().collect())).collect()
}

fn pentagon_split_claim(_: &Options) -> Result<(bool, String)> {
    let s = pentagon_split();
    let d = build_split_doily(&s)?;
    let left: BTreeSet<_> = d
        .negative_left()
        .iter()
        .map(|l| labels_of(&d, &l.elements, true))
        .collect();
    let right: BTreeSet<_> = d
        .negative_right()
        .iter()
        .map(|l| labels_of(&d, &l.elements, false))
        .collect();
    let want_left = triples(&["XX YY ZZ", "ZX XY YZ", "YX ZY XZ"])?;
    let want_right = triples(&["YIY ZIZ XIX", "IXZ IYX IZY", "XYI YZI ZXI"])?;
    let pass = s.left_is_bijective()
        && d.incidence().is_generalized_quadrangle(2, 2)
        && left == want_left
        && right == want_right;
    Ok((
        pass,
        format!(
            "bijective {}; negative lines {} left, {} right; two printed two-qubit triples are misprints of XX YY ZZ and ZX XY YZ",
            s.left_is_bijective(),
            left.len(),
            right.len()
        ),
    ))
}

fn heptagon_split_claim(_: &Options) -> Result<(bool, String)> {
    let s = heptagon_split();
    let hist = type23_statistics(&s)?;
    let pass = s.left_is_bijective() && hist == [18, 33, 9, 3];
    Ok((pass, format!("bijective {}; histogram {hist:?}", s.left_is_bijective())))
}

fn doily_system(left: bool) -> Result<IncidenceSystem> {
    let d = build_split_doily(&pentagon_split())?;
    let contexts: Vec<Vec<PauliOperator>> = d
        .lines
        .iter()
        .map(|l| labels_of(&d, &l.elements, left).into_iter().collect())
        .collect();
    IncidenceSystem::from_signed_contexts(&contexts)
}

fn doily_contextuality(_: &Options) -> Result<(bool, String)> {
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, left) in [("left", true), ("right", false)] {
        let sys = doily_system(left)?;
        let r = contextuality_degree(&sys, Mode::Exact)?;
        let lift = max_stabilizer_lift(&sys)?;
        pass &= r.degree == crate::contextuality::Degree::Exact(3) && lift.satisfied == 12;
        parts.push(format!(
            "{name}: degree {:?}, lift {}/{}",
            r.degree, lift.satisfied, lift.total
        ));
    }
    Ok((pass, parts.join("; ")))
}

fn w52_plane_degree(opts: &Options) -> Result<(bool, String)> {
    let s = heptagon_split();
    let planes: Vec<Vec<PauliOperator>> = crate::codes::heptagon_planes(&s)
        .iter()
        .map(|m| m.iter().map(|&x| s.right_labels[x]).collect())
        .collect();
    let r = plane_contextuality_w52(&planes, 64, opts.seed)?;
    Ok((
        true,
        format!(
            "{} planes; degree in [{}, {}]",
            planes.len(),
            r.degree.lower(),
            r.degree.upper()
        ),
    ))
}

fn identity_summary(ids: &[&str]) -> Result<(bool, Vec<String>)> {
    let mut pass = true;
    let mut notes = Vec::new();
    for id in ids {
        let r = verify_identity(id)?;
        pass &= r.holds;
        notes.push(match &r.mismatch {
            None => format!("{id} ok"),
            Some(m) => format!("{id} fails at {} ({} vs {})", m.basis, m.lhs, m.rhs),
        });
    }
    Ok((pass, notes))
}

fn pentagon_identities(opts: &Options) -> Result<(bool, String)> {
    let ids: Vec<&str> = IDENTITY_IDS
        .iter()
        .copied()
        .filter(|i| i.starts_with("pentagon"))
        .collect();
    let (mut pass, mut notes) = identity_summary(&ids)?;
    if opts.inject_fault {
        let mut d = pentagon_bell();
        d.rows[0].sign = -d.rows[0].sign;
        let r = verify_decomposition("pentagon-bell-sum-injected-fault", &d)?;
        pass &= r.holds;
        notes.push(format!("injected fault detected: {}", !r.holds));
    }
    Ok((pass, notes.join("; ")))
}

fn heptagon_identities(_: &Options) -> Result<(bool, String)> {
    let ids: Vec<&str> = IDENTITY_IDS
        .iter()
        .copied()
        .filter(|i| i.starts_with("heptagon"))
        .collect();
    let (mut pass, mut notes) = identity_summary(&ids)?;
    for r in printed_variants() {
        // the printed Y- and X-basis forms each differ from the verified one in a single term
        pass &= !r.holds;
        notes.push(format!("{} holds: {}", r.id, r.holds));
    }
    for f in [BasisFamily::BellZ, BasisFamily::BellY, BasisFamily::BellX] {
        pass &= heptagon_plane(f)?.rows.len() == 8;
    }
    Ok((pass, notes.join("; ")))
}

const RUNS: u64 = 4000;

fn protocol_claim(kind: CodeKind, opts: &Options) -> Result<(bool, String)> {
    let mut pass = true;
    let mut notes = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for (i, spec) in builtin_protocols().iter().filter(|p| p.code() == kind).enumerate() {
        let exhaustive = exhaustive_branch_check(spec)?;
        let secret = SecretParam::random(&mut rng, 16);
        let counts = sample_counts(spec, &secret, RUNS, opts.seed.wrapping_add(RUNS * i as u64))?;
        let p = 1.0 / counts.len() as f64;
        let uniform = within_three_sigma(&counts, p);
        pass &= exhaustive.pass && uniform;
        notes.push(format!(
            "{}: exhaustive {}, counts {counts:?}",
            spec.id, exhaustive.pass
        ));
    }
    Ok((pass, notes.join("; ")))
}

fn pentagon_protocols(opts: &Options) -> Result<(bool, String)> {
    protocol_claim(CodeKind::Pentagon, opts)
}

fn heptagon_protocols(opts: &Options) -> Result<(bool, String)> {
    protocol_claim(CodeKind::Heptagon, opts)
}

fn pentagon_no_information(_: &Options) -> Result<(bool, String)> {
    let cs = sub_threshold_coalitions(CodeKind::Pentagon);
    let reports: Vec<_> = cs
        .iter()
        .map(|c| no_information_check(CodeKind::Pentagon, c))
        .collect::<Result<_>>()?;
    let ok = reports.iter().filter(|r| r.pass && r.maximally_mixed).count();
    Ok((
        ok == 15 && cs.len() == 15,
        format!("{ok}/{} coalitions maximally mixed", cs.len()),
    ))
}

fn heptagon_no_information(_: &Options) -> Result<(bool, String)> {
    let cs = sub_threshold_coalitions(CodeKind::Heptagon);
    let reports: Vec<_> = cs
        .iter()
        .map(|c| no_information_check(CodeKind::Heptagon, c))
        .collect::<Result<_>>()?;
    let independent = reports.iter().filter(|r| r.secret_independent).count();
    let mixed = reports.iter().filter(|r| r.maximally_mixed).count();
    let leaking: Vec<String> = reports
        .iter()
        .filter(|r| !r.secret_independent)
        .map(|r| r.coalition.iter().map(ToString::to_string).collect::<String>())
        .collect();
    Ok((
        independent == cs.len() && cs.len() == 63,
        format!(
            "{independent}/{} secret-independent, {mixed} maximally mixed; coalitions holding a weight-3 logical operator: [{}]",
            cs.len(),
            leaking.join(" ")
        ),
    ))
}

fn klein_correspondence(_: &Options) -> Result<(bool, String)> {
    let all_lines: Vec<_> = gf2::enumerate_subspaces(2, 2, SubspaceFilter::All)?.collect();
    let images: Vec<u8> = all_lines
        .iter()
        .map(|l| plucker_line_map(l).map(|k| k.plucker))
        .collect::<Result<_>>()?;
    let distinct: BTreeSet<u8> = images.iter().copied().collect();
    let on_quadric = images.iter().all(|&p| p != 0 && klein_quadric(p) == 0);
    let quadric_size = (1u8..64).filter(|&p| klein_quadric(p) == 0).count();
    let kd = klein_real_doily();
    let doily = build_polar_space(2)?;
    let iso = kd.structure.isomorphism(&doily.point_line_incidence()).is_some();
    let lines = doily.lines();
    let mut pairs = 0;
    let mut agree = 0;
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            pairs += 1;
            let meet = lines[i].intersection(&lines[j]).rank() > 0;
            let adj = klein_polar(kd.points[i].plucker, kd.points[j].plucker) == 0;
            if meet == adj && adj == kd.adjacency[i][j] {
                agree += 1;
            }
        }
    }
    let pass = all_lines.len() == 35
        && distinct.len() == 35
        && on_quadric
        && quadric_size == 35
        && iso
        && pairs == 105
        && agree == 105;
    Ok((
        pass,
        format!(
            "{} lines -> {} distinct quadric points (quadric has {quadric_size}); real part isomorphic to W(3,2): {iso}; {agree}/{pairs} line pairs agree",
            all_lines.len(),
            distinct.len()
        ),
    ))
}

fn negative_planes(_: &Options) -> Result<(bool, String)> {
    let planes = negative_planes_heptacode();
    let set = |s: &str| -> Result<BTreeSet<PauliOperator>> { Ok(parse_list(s)?.into_iter().collect()) };
    let mut listing_ok = planes.len() == 9;
    for (p, (slot, color, left, right)) in planes.iter().zip(NEGATIVE_PLANE_LISTING) {
        listing_ok &= (p.slot, p.color) == (slot, color)
            && p.left.iter().copied().collect::<BTreeSet<_>>() == set(left)?
            && p.right.iter().copied().collect::<BTreeSet<_>>() == set(right)?
            && !p.class.positive;
    }
    let labeling = heptagon_split();
    let mut meets_ok = true;
    for (slot, left_line, right_line) in SLOT_INTERSECTIONS {
        let group: Vec<&HeptaPlane> = planes.iter().filter(|p| p.slot == slot).collect();
        let common: BTreeSet<usize> = group[0]
            .masks
            .iter()
            .copied()
            .filter(|m| group.iter().all(|p| p.masks.contains(m)))
            .collect();
        let l: BTreeSet<PauliOperator> = common.iter().map(|&m| labeling.left_labels[m]).collect();
        let r: BTreeSet<PauliOperator> = common.iter().map(|&m| labeling.right_labels[m]).collect();
        meets_ok &= group.len() == 3 && l == set(left_line)? && r == set(right_line)?;
    }
    Ok((
        listing_ok && meets_ok,
        format!(
            "{} planes; listing matches {listing_ok}; slot triples meet in listed lines {meets_ok}",
            planes.len()
        ),
    ))
}

fn plucker_grid(_: &Options) -> Result<(bool, String)> {
    let r = verify_plucker_plane_pairs(&plucker_plane_pairs())?;
    Ok((
        r.pass && r.negative_grid_lines == 3 && r.all_symmetric && r.all_commute_with_yiii,
        format!(
            "grid {} with {} lines ({} negative); on Q+(7,2) {}; commute with YIII {}; intersections {}",
            r.is_grid,
            r.grid_lines,
            r.negative_grid_lines,
            r.all_symmetric,
            r.all_commute_with_yiii,
            r.intersections_match
        ),
    ))
}

fn spread_mub(_: &Options) -> Result<(bool, String)> {
    let spreads = doily_spreads();
    let r = spread_mub_check(&signed_spread())?;
    Ok((
        spreads.len() == 6 && r.pass && r.bases == 5 && r.states == 20,
        format!(
            "{} spreads; {} bases, {} states, unbiased {}",
            spreads.len(),
            r.bases,
            r.states,
            r.unbiased
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_cover_every_criterion() {
        let ids: BTreeSet<&str> = claim_ids().into_iter().collect();
        assert_eq!(ids.len(), CLAIMS.len());
        let crit: BTreeSet<u8> = CLAIMS.iter().map(|c| c.criterion).collect();
        assert_eq!(crit, (1..=10).collect());
        for s in Suite::ALL {
            assert!(!select(&[s]).is_empty(), "{}", s.name());
        }
        assert_eq!(select(&[]).len(), CLAIMS.len());
    }

    #[test]
    fn injected_fault_fails_the_identity_claim() {
        let opts = Options {
            seed: 1,
            inject_fault: true,
        };
        let c = run_claim("pentagon-identities", &opts).unwrap();
        assert!(!c.pass);
        assert!(run_claim("pentagon-identities", &Options::default()).unwrap().pass);
    }

    #[test]
    fn unknown_claim() {
        assert!(run_claim("nope", &Options::default()).is_err());
    }
}
