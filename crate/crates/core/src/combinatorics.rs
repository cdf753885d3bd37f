//! Vertex types, admissible vertex combinations (AVCs), and the
//! classification driver.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::verify_combinatorial;
use crate::generators::{self, GeneratorHandle};
use crate::realization;
use crate::trig::{self, AngleKind, AngleSolution, NonexistenceEvidence};

/// Multiplicities `(a, b, c)` of α, β, γ at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexType {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl VertexType {
    pub const fn new(a: u32, b: u32, c: u32) -> Self {
        VertexType { a, b, c }
    }

    pub fn degree(&self) -> u32 {
        self.a + self.b + self.c
    }

    /// Degree at least 3.
    pub fn is_valid(&self) -> bool {
        self.degree() >= 3
    }
}

fn superscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|d| DIGITS[d.to_digit(10).unwrap() as usize]).collect()
}

impl fmt::Display for VertexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return f.write_str("∅");
        }
        for (sym, n) in [("α", self.a), ("β", self.b), ("γ", self.c)] {
            match n {
                0 => {}
                1 => f.write_str(sym)?,
                n => write!(f, "{sym}{}", superscript(n))?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CombinatoricsError {
    #[error("gonality {0} is outside the supported range {1}..={2}")]
    GonalityOutOfRange(u32, u32, u32),
    #[error("max degree must be at least 3, got {0}")]
    MaxDegree(u32),
    #[error("tolerance must be positive, got {0}")]
    Tolerance(f64),
    #[error(transparent)]
    Trig(#[from] trig::TrigError),
    #[error("{0}")]
    Family(String),
}

/// `aα + bβ + cγ`.
pub fn vertex_angle_sum(v: VertexType, s: &AngleSolution) -> f64 {
    v.a as f64 * s.alpha.radians() + v.b as f64 * s.beta.radians() + v.c as f64 * s.gamma.radians()
}

/// Remainder `2π − (partial angle sum)` left at a vertex.
pub fn remainder(partial: VertexType, s: &AngleSolution) -> f64 {
    2.0 * PI - vertex_angle_sum(partial, s)
}

// Exact feasibility of strict/non-strict linear inequalities in (α, β, γ)/π,
// by Fourier–Motzkin elimination over the rationals.

type Q = Ratio<i64>;

#[derive(Clone, Debug)]
struct Ineq {
    coef: [Q; 3],
    rhs: Q,
    strict: bool,
}

impl Ineq {
    fn new(coef: [i64; 3], rhs: Q, strict: bool) -> Self {
        Ineq { coef: coef.map(Q::from_integer), rhs, strict }
    }
}

fn feasible(mut system: Vec<Ineq>) -> bool {
    for k in 0..3 {
        let zero = Q::from_integer(0);
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for q in system {
            if q.coef[k] > zero {
                pos.push(q);
            } else if q.coef[k] < zero {
                neg.push(q);
            } else {
                rest.push(q);
            }
        }
        for p in &pos {
            for n in &neg {
                let (sp, sn) = (p.coef[k].recip(), -n.coef[k].recip());
                let coef = [0, 1, 2].map(|i| p.coef[i] * sp + n.coef[i] * sn);
                rest.push(Ineq { coef, rhs: p.rhs * sp + n.rhs * sn, strict: p.strict || n.strict });
            }
        }
        system = rest;
    }
    system.iter().all(|q| if q.strict { Q::from_integer(0) > q.rhs } else { Q::from_integer(0) >= q.rhs })
}

/// Inequalities every candidate degree-3 vertex must be consistent with:
/// prototile angle-sum bounds, `α, β > γ`, `α + β + γ ≤ 2π`, angles below π,
/// and `β ≥ α` (when `α ≥ β` the vertex `αβ⋯` is forced to be `αβγ`).
fn degree3_system(m: u32, v: VertexType) -> Vec<Ineq> {
    let (a, b, c) = (v.a as i64, v.b as i64, v.c as i64);
    let q = |n: i64| Q::from_integer(n);
    vec![
        Ineq::new([a, b, c], q(2), false),
        Ineq::new([-a, -b, -c], q(-2), false),
        Ineq::new([1, 0, 0], Q::new(m as i64 - 2, m as i64), true),
        Ineq::new([-1, 0, 0], q(-1), true),
        Ineq::new([0, -1, 0], q(-1), true),
        Ineq::new([0, 0, 1], q(0), true),
        Ineq::new([0, 1, 1], q(1), true),
        Ineq::new([1, 0, -1], q(0), true),
        Ineq::new([0, 1, -1], q(0), true),
        Ineq::new([-1, -1, -1], q(-2), false),
        Ineq::new([-1, 1, 0], q(0), false),
    ]
}

/// Degree-3 vertex types that can occur for gonality `m ≥ 5`.
pub fn enumerate_degree3(m: u32) -> Result<Vec<VertexType>, CombinatoricsError> {
    if m < 5 {
        return Err(CombinatoricsError::GonalityOutOfRange(m, 5, u32::MAX));
    }
    let mut out = Vec::new();
    for a in (0..=3).rev() {
        for b in (0..=3 - a).rev() {
            let v = VertexType::new(a, b, 3 - a - b);
            if feasible(degree3_system(m, v)) {
                out.push(v);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvcMember {
    pub vertex: VertexType,
    /// Appears in a constructed tiling (as opposed to merely admissible).
    pub realized: bool,
}

/// A set of admissible vertex types.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Avc {
    members: Vec<AvcMember>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl Avc {
    pub fn from_vertices(vs: impl IntoIterator<Item = VertexType>) -> Self {
        let mut members: Vec<AvcMember> = vs.into_iter().map(|vertex| AvcMember { vertex, realized: false }).collect();
        members.sort_by_key(|m| m.vertex);
        members.dedup_by_key(|m| m.vertex);
        Avc { members, warnings: Vec::new() }
    }

    pub fn members(&self) -> &[AvcMember] {
        &self.members
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexType> + '_ {
        self.members.iter().map(|m| m.vertex)
    }

    pub fn contains(&self, v: VertexType) -> bool {
        self.members.binary_search_by_key(&v, |m| m.vertex).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Marks members occurring in `census`; returns false if the census has
    /// a vertex type outside the AVC.
    pub fn mark_realized(&mut self, census: &BTreeMap<VertexType, usize>) -> bool {
        for m in &mut self.members {
            m.realized = census.get(&m.vertex).is_some_and(|&n| n > 0);
        }
        census.keys().all(|v| self.contains(*v))
    }
}

impl fmt::Display for Avc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Every vertex type of degree `3..=max_degree` whose angle sum is within
/// `tol` of 2π. Candidates within `2·tol` but outside `tol` are reported as
/// warnings.
pub fn enumerate_avc(s: &AngleSolution, tol: f64, max_degree: u32) -> Result<Avc, CombinatoricsError> {
    if max_degree < 3 {
        return Err(CombinatoricsError::MaxDegree(max_degree));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(CombinatoricsError::Tolerance(tol));
    }
    let bound = |x: f64| (((2.0 * PI + 2.0 * tol) / x).floor() as u32).min(max_degree);
    let (amax, bmax, cmax) = (bound(s.alpha.radians()), bound(s.beta.radians()), bound(s.gamma.radians()));
    let mut found = Vec::new();
    let mut warnings = Vec::new();
    for a in 0..=amax {
        for b in 0..=bmax {
            for c in 0..=cmax {
                let v = VertexType::new(a, b, c);
                if v.degree() < 3 || v.degree() > max_degree {
                    continue;
                }
                let err = (vertex_angle_sum(v, s) - 2.0 * PI).abs();
                if err < tol {
                    found.push(v);
                } else if err < 2.0 * tol {
                    warnings.push(format!("{v} misses 2π by {err:e}, within twice the tolerance"));
                }
            }
        }
    }
    let mut avc = Avc::from_vertices(found);
    avc.warnings = warnings;
    Ok(avc)
}

/// If every member has at most as many β as γ, the two counts must agree at
/// every vertex, so members with fewer β go; symmetrically for the other
/// direction. Otherwise the AVC is returned unchanged.
pub fn counting_filter(avc: &Avc) -> Avc {
    let all_le = avc.vertices().all(|v| v.b <= v.c);
    let all_ge = avc.vertices().all(|v| v.b >= v.c);
    let keep: Vec<AvcMember> = if all_le || all_ge {
        avc.members.iter().copied().filter(|m| m.vertex.b == m.vertex.c).collect()
    } else {
        avc.members.clone()
    };
    Avc { members: keep, warnings: avc.warnings.clone() }
}

/// An m-gon edge meets a rhombus edge somewhere, so `αβ⋯` and `αγ⋯` both
/// have to be vertex types.
pub fn requires_adjacency_pair(avc: &Avc) -> bool {
    let ab = avc.vertices().any(|v| v.a >= 1 && v.b >= 1);
    let ag = avc.vertices().any(|v| v.a >= 1 && v.c >= 1);
    ab && ag
}

// Classification

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `{β²γ, αβγ^c}`, c ≥ 2, m = 5.
    EarthMap,
    /// `{αβγ}`, any m.
    Prism,
    /// `{αβ², αβγ²}`, three fusions of the snub dodecahedron.
    SnubFusion,
    /// `{β³, αβγ²}`, subdivided truncated icosahedron.
    Football,
}

impl Family {
    pub fn vertex_description(self) -> &'static str {
        match self {
            Family::EarthMap => "{β²γ, αβγ^c}",
            Family::Prism => "{αβγ}",
            Family::SnubFusion => "{αβ², αβγ²}",
            Family::Football => "{β³, αβγ²}",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyMember {
    pub generator: GeneratorHandle,
    pub solution: AngleSolution,
    pub face_count: usize,
    /// Numeric AVC at the member's angles.
    pub avc: Avc,
    /// After [`counting_filter`].
    pub filtered_avc: Avc,
    pub census: Vec<(VertexType, usize)>,
    /// The generated tiling uses only vertex types of `avc`.
    pub census_in_avc: bool,
    pub vertex_sums_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome {
    Realized {
        family: Family,
        vertices: String,
        members: Vec<FamilyMember>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        notes: Vec<String>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        eliminated: Vec<NonexistenceEvidence>,
    },
    Nonexistent {
        evidence: Vec<NonexistenceEvidence>,
        note: String,
    },
    SubsumedBy {
        seed: VertexType,
        note: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedEntry {
    pub seed: VertexType,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub m: u32,
    pub c_max: u32,
    pub entries: Vec<SeedEntry>,
}

impl ClassificationReport {
    pub fn realized_families(&self) -> Vec<Family> {
        self.entries
            .iter()
            .filter_map(|e| match &e.outcome {
                Outcome::Realized { family, .. } => Some(*family),
                _ => None,
            })
            .collect()
    }

    pub fn entry(&self, seed: VertexType) -> Option<&SeedEntry> {
        self.entries.iter().find(|e| e.seed == seed)
    }
}

pub const MAX_GONALITY: u32 = 64;
pub const DEFAULT_C_MAX: u32 = 64;
pub const DEFAULT_MAX_DEGREE: u32 = 16;
const AVC_TOL: f64 = 1e-8;
const VERTEX_SUM_TOL: f64 = 1e-9;

const A3: VertexType = VertexType::new(3, 0, 0);
const A2G: VertexType = VertexType::new(2, 0, 1);
const B3: VertexType = VertexType::new(0, 3, 0);
const A2B: VertexType = VertexType::new(2, 1, 0);
const AB2: VertexType = VertexType::new(1, 2, 0);
const B2G: VertexType = VertexType::new(0, 2, 1);
const ABG: VertexType = VertexType::new(1, 1, 1);

fn member(handle: GeneratorHandle, s: AngleSolution, max_degree: u32) -> Result<FamilyMember, CombinatoricsError> {
    let t = handle.build().map_err(|e| CombinatoricsError::Family(e.to_string()))?;
    let report = verify_combinatorial(&t, &s, VERTEX_SUM_TOL);
    let mut avc = enumerate_avc(&s, AVC_TOL, max_degree)?;
    let census = report.census_map();
    let census_in_avc = avc.mark_realized(&census);
    let filtered_avc = counting_filter(&avc);
    Ok(FamilyMember {
        generator: handle,
        solution: s,
        face_count: t.face_count(),
        avc,
        filtered_avc,
        census: report.census,
        census_in_avc,
        vertex_sums_ok: report.failures.is_empty(),
    })
}

fn prism_outcome(m: u32) -> Result<Outcome, CombinatoricsError> {
    let r = realization::prism_radius_midpoint(m);
    let s = realization::prism_solution(m, r).map_err(|e| CombinatoricsError::Family(e.to_string()))?;
    Ok(Outcome::Realized {
        family: Family::Prism,
        vertices: Family::Prism.vertex_description().into(),
        members: vec![member(GeneratorHandle::Prism { m }, s, DEFAULT_MAX_DEGREE)?],
        notes: vec![format!(
            "one-parameter family in the polar radius r ∈ (acot(sin(π/{m})), π/2); representative r = {r:.6}"
        )],
        eliminated: Vec::new(),
    })
}

/// Runs the degree-3 case split for gonality `m` and attaches either a
/// realized family (with generated tilings checked against the numeric AVC)
/// or nonexistence evidence to every seed.
pub fn classify(m: u32, c_max: u32) -> Result<ClassificationReport, CombinatoricsError> {
    if !(5..=MAX_GONALITY).contains(&m) {
        return Err(CombinatoricsError::GonalityOutOfRange(m, 5, MAX_GONALITY));
    }
    let mut entries = Vec::new();
    for seed in enumerate_degree3(m)? {
        let outcome = if m == 5 { classify_pentagon_seed(seed, c_max)? } else { classify_large_seed(m, seed)? };
        entries.push(SeedEntry { seed, outcome });
    }
    Ok(ClassificationReport { m, c_max, entries })
}

fn classify_pentagon_seed(seed: VertexType, c_max: u32) -> Result<Outcome, CombinatoricsError> {
    let m = 5;
    let third = 2.0 * PI / 3.0;
    let outcome = match seed {
        A3 => Outcome::Nonexistent {
            evidence: vec![trig::certify_no_root(m, &[A3, B2G], AngleKind::Gamma, (0.0, PI))?],
            note: "α³ fixes α = 2π/3 and leaves β²⋯ = β²γ; with β²γ the closure identity has no root, \
                   and without any β²⋯ the β/γ balance forces β⋯ = αβγ, which is incompatible with α³"
                .into(),
        },
        A2G => {
            // β at its infimum α; any larger β pushes α + β + γ past 2π
            let evidence = trig::certify_inequality(
                m,
                &[A2G],
                AngleKind::Alpha,
                (third, PI),
                "α + β + γ < 2π with β = α",
                |a| [a, a, 2.0 * PI - 2.0 * a],
                |x| 2.0 * PI - (x[0] + x[1] + x[2]),
            )?;
            Outcome::Nonexistent {
                evidence: vec![evidence],
                note: "α²γ with α > γ gives α > 2π/3; αβγ is then excluded (its tilings are prisms, with no α²γ), \
                       so β > α, and α + β + γ > 2α + γ = 2π breaks the prototile angle-sum bound"
                    .into(),
            }
        }
        A2B => Outcome::Nonexistent {
            evidence: vec![trig::certify_no_root(m, &[A2B, B2G], AngleKind::Alpha, (0.0, PI))?],
            note: "with β²γ the closure identity has no root; the remaining AVCs {α²β, α²γ²} and \
                   {α²β, αβγ²} are excluded by the tile-arrangement argument around γ|α|γ (not mechanized)"
                .into(),
        },
        B3 => {
            let s = realization::sporadic_solution(realization::SporadicKind::Football)
                .map_err(|e| CombinatoricsError::Family(e.to_string()))?;
            Outcome::Realized {
                family: Family::Football,
                vertices: Family::Football.vertex_description().into(),
                members: vec![member(GeneratorHandle::Football, s, DEFAULT_MAX_DEGREE)?],
                notes: vec!["β³ with αβ⋯ = αβγ² determines all angles".into()],
                eliminated: Vec::new(),
            }
        }
        AB2 => {
            let s = realization::sporadic_solution(realization::SporadicKind::SnubFusion)
                .map_err(|e| CombinatoricsError::Family(e.to_string()))?;
            let members = (1..=3)
                .map(|variant| member(GeneratorHandle::SnubFusion { variant }, s, DEFAULT_MAX_DEGREE))
                .collect::<Result<Vec<_>, _>>()?;
            let window = (0.6 * PI, third);
            let eliminated = [VertexType::new(1, 0, 3), VertexType::new(1, 0, 5), VertexType::new(2, 0, 3)]
                .iter()
                .map(|&v| trig::certify_no_root(m, &[AB2, v], AngleKind::Alpha, window))
                .collect::<Result<Vec<_>, _>>()?;
            let a2g2 = trig::solve_closure(m, &[AB2, VertexType::new(2, 0, 2)], None)?;
            let mut notes = vec![
                "αγ⋯ ∈ {α²γ², αγ⁴, αβγ²} after eliminating αγ³, αγ⁵, α²γ³; αγ⁴ and αβγ² give the same angles".into(),
            ];
            if let Some(sol) = a2g2.first() {
                notes.push(format!(
                    "AVC {{αβ², α²γ²}} has angles {sol} but is excluded by the tile-arrangement argument (not mechanized)"
                ));
            }
            notes.push(format!(
                "fusions correspond to the {} perfect matchings of the dodecahedron, in 3 isomorphism classes",
                generators::dodecahedron_matchings().len()
            ));
            Outcome::Realized {
                family: Family::SnubFusion,
                vertices: Family::SnubFusion.vertex_description().into(),
                members,
                notes,
                eliminated,
            }
        }
        B2G => {
            let members = (2..=c_max.max(2))
                .map(|c| {
                    let s = realization::earth_map_solution(c).map_err(|e| CombinatoricsError::Family(e.to_string()))?;
                    member(GeneratorHandle::EarthMap { c }, s, DEFAULT_MAX_DEGREE.max(c + 2))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Outcome::Realized {
                family: Family::EarthMap,
                vertices: Family::EarthMap.vertex_description().into(),
                members,
                notes: vec![
                    format!("members listed for 2 ≤ c ≤ {}", c_max.max(2)),
                    generators::EARTH_MAP_FACE_COUNT_NOTE.into(),
                ],
                eliminated: Vec::new(),
            }
        }
        ABG => prism_outcome(m)?,
        other => Outcome::Nonexistent {
            evidence: Vec::new(),
            note: format!("{other} is not a degree-3 candidate"),
        },
    };
    Ok(outcome)
}

fn classify_large_seed(m: u32, seed: VertexType) -> Result<Outcome, CombinatoricsError> {
    let outcome = match seed {
        A2G => Outcome::SubsumedBy {
            seed: B2G,
            note: "α²γ makes αβ⋯ = αβγ a vertex, so α = β and 2β + γ = 2π, excluded with β²γ".into(),
        },
        B2G => Outcome::Nonexistent {
            evidence: vec![trig::certify_no_root(m, &[B2G], AngleKind::Gamma, (0.0, PI))?],
            note: format!(
                "2β + γ = 2π gives cos x = (1 − tan²(γ/4))/2 < 1/2 ≤ cos(2π/{m}), but every regular {m}-gon edge has cos x > cos(2π/{m})"
            ),
        },
        ABG => prism_outcome(m)?,
        other => Outcome::Nonexistent {
            evidence: Vec::new(),
            note: format!("{other} is not a degree-3 candidate"),
        },
    };
    Ok(outcome)
}
