//! Spherical trigonometry of the two prototiles.
//!
//! A regular spherical m-gon with interior angle α and a spherical rhombus with
//! angles β, γ (opposite angles equal) share an edge length `x` exactly when the
//! two expressions for `cos x` agree:
//!
//! ```text
//! cos x = cot(β/2) cot(γ/2)                       (rhombus)
//! cos x = cot²(α/2) + cos(2π/m) / sin²(α/2)       (regular m-gon)
//! ```
//!
//! The difference of the two is the closure residual. Vertex constraints
//! `aα + bβ + cγ = 2π` cut the angle space down to a line, and the residual is
//! then scanned along that line and refined by bisection.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::VertexType;

/// Largest closure residual accepted for an [`AngleSolution`].
pub const CLOSURE_TOL: f64 = 1e-10;

/// Number of scan subintervals used by [`solve_closure`].
pub const DEFAULT_SUBINTERVALS: usize = 10_000;

/// Final bracket width of the bisection, in radians.
const BRACKET_WIDTH: f64 = 1e-12;

/// Maximal sample spacing of nonexistence evidence.
pub const EVIDENCE_SPACING: f64 = 1e-4 * PI;

/// Distance to a pole of `cot` below which a sample is discarded.
const POLE_GUARD: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TrigError {
    #[error("angle {0} is outside (0, 2π)")]
    AngleOutOfRange(f64),
    #[error("{name} = {value} is outside the open interval ({lo}, {hi})")]
    Domain {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("gonality must be at least 3, got {0}")]
    Gonality(u32),
    #[error("the angle constraints are linearly dependent")]
    LinearlyDependent,
    #[error("expected exactly two independent equations, got {0}")]
    EquationCount(usize),
    #[error("the free angle {0} is fixed by the constraints")]
    FreeAngleFixed(AngleKind),
    #[error("single-constraint evidence needs a constraint without α, got {0}")]
    NotAlphaFree(VertexType),
    #[error("empty sampling interval ({0}, {1})")]
    EmptyInterval(f64, f64),
    #[error("angles are not a solution: {0}")]
    NotASolution(String),
}

/// One of the three prototile angles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AngleKind {
    Alpha,
    Beta,
    Gamma,
}

impl AngleKind {
    pub const ALL: [AngleKind; 3] = [AngleKind::Alpha, AngleKind::Beta, AngleKind::Gamma];

    pub fn index(self) -> usize {
        match self {
            AngleKind::Alpha => 0,
            AngleKind::Beta => 1,
            AngleKind::Gamma => 2,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            AngleKind::Alpha => "α",
            AngleKind::Beta => "β",
            AngleKind::Gamma => "γ",
        }
    }
}

impl fmt::Display for AngleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// An angle in radians, strictly between 0 and 2π.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Angle(f64);

impl Angle {
    pub fn new(radians: f64) -> Result<Self, TrigError> {
        if radians.is_finite() && radians > 0.0 && radians < 2.0 * PI {
            Ok(Angle(radians))
        } else {
            Err(TrigError::AngleOutOfRange(radians))
        }
    }

    /// `k·π`, for `0 < k < 2`.
    pub fn from_pi(k: f64) -> Result<Self, TrigError> {
        Self::new(k * PI)
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// The angle as a multiple of π.
    pub fn in_pi(self) -> f64 {
        self.0 / PI
    }

    /// `(p, q)` with `self = p/q·π`, if such a fraction with `q ≤ 120` matches
    /// within 1e−9. Used for display only.
    pub fn pi_fraction(self) -> Option<(i64, i64)> {
        pi_fraction(self.0)
    }
}

impl TryFrom<f64> for Angle {
    type Error = TrigError;
    fn try_from(v: f64) -> Result<Self, Self::Error> {
        Angle::new(v)
    }
}

impl From<Angle> for f64 {
    fn from(a: Angle) -> f64 {
        a.0
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_fraction() {
            Some((p, 1)) => write!(f, "{p}π"),
            Some((p, q)) => write!(f, "{p}/{q}π"),
            None => write!(f, "{:.5}π", self.in_pi()),
        }
    }
}

/// Smallest-denominator fraction `p/q` (q ≤ 120) with `|radians/π − p/q| < 1e−9`.
pub fn pi_fraction(radians: f64) -> Option<(i64, i64)> {
    let k = radians / PI;
    (1..=120i64).find_map(|q| {
        let p = (k * q as f64).round();
        ((k - p / q as f64).abs() < 1e-9).then_some((p as i64, q))
    })
}

fn check_open(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<(), TrigError> {
    if value > lo && value < hi {
        Ok(())
    } else {
        Err(TrigError::Domain { name, value, lo, hi })
    }
}

fn cot(t: f64) -> f64 {
    t.cos() / t.sin()
}

/// Lower bound `(1 − 2/m)π` on the interior angle of a spherical regular m-gon.
pub fn mgon_angle_lower_bound(m: u32) -> f64 {
    (1.0 - 2.0 / m as f64) * PI
}

/// `cot(β/2)·cot(γ/2)` without domain checks.
pub fn rhombus_edge_cos_raw(beta: f64, gamma: f64) -> f64 {
    cot(0.5 * beta) * cot(0.5 * gamma)
}

/// `cot²(α/2) + cos(2π/m)/sin²(α/2)` without domain checks.
pub fn mgon_edge_cos_raw(m: u32, alpha: f64) -> f64 {
    let s = (0.5 * alpha).sin();
    let c = (0.5 * alpha).cos();
    (c * c + (2.0 * PI / m as f64).cos()) / (s * s)
}

/// Edge cosine of a spherical rhombus with angles β, γ.
///
/// Values outside (−1, 1) mean no nondegenerate rhombus exists; that check is
/// left to the caller.
pub fn rhombus_edge_cos(beta: Angle, gamma: Angle) -> Result<f64, TrigError> {
    check_open("β", beta.0, 0.0, PI)?;
    check_open("γ", gamma.0, 0.0, PI)?;
    Ok(rhombus_edge_cos_raw(beta.0, gamma.0))
}

/// Edge cosine of the regular spherical m-gon with interior angle α.
pub fn mgon_edge_cos(m: u32, alpha: Angle) -> Result<f64, TrigError> {
    if m < 3 {
        return Err(TrigError::Gonality(m));
    }
    check_open("α", alpha.0, mgon_angle_lower_bound(m), PI)?;
    Ok(mgon_edge_cos_raw(m, alpha.0))
}

/// `mgon_edge_cos(m, α) − rhombus_edge_cos(β, γ)`.
pub fn closure_residual(m: u32, alpha: Angle, beta: Angle, gamma: Angle) -> Result<f64, TrigError> {
    Ok(mgon_edge_cos(m, alpha)? - rhombus_edge_cos(beta, gamma)?)
}

fn closure_residual_raw(m: u32, angles: [f64; 3]) -> f64 {
    mgon_edge_cos_raw(m, angles[0]) - rhombus_edge_cos_raw(angles[1], angles[2])
}

/// Angles of a dihedral pair sharing one edge length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleSolution {
    pub m: u32,
    pub alpha: Angle,
    pub beta: Angle,
    pub gamma: Angle,
    pub cos_x: f64,
}

impl AngleSolution {
    /// Builds a checked solution. `β < γ` is swapped (with a log notice);
    /// the angle-sum bounds and the closure identity must hold.
    pub fn new(m: u32, alpha: f64, beta: f64, gamma: f64) -> Result<Self, TrigError> {
        let (beta, gamma) = if beta < gamma {
            log::warn!("β < γ supplied ({beta} < {gamma}); swapping to keep β > γ");
            (gamma, beta)
        } else {
            (beta, gamma)
        };
        let (a, b, g) = (Angle::new(alpha)?, Angle::new(beta)?, Angle::new(gamma)?);
        let residual = closure_residual(m, a, b, g)?;
        if residual.abs() >= CLOSURE_TOL {
            return Err(TrigError::NotASolution(format!(
                "closure residual {residual:e} exceeds {CLOSURE_TOL:e}"
            )));
        }
        if beta <= gamma {
            return Err(TrigError::NotASolution("β = γ".into()));
        }
        if beta + gamma <= PI {
            return Err(TrigError::NotASolution(format!("β + γ = {} ≤ π", beta + gamma)));
        }
        let cos_x = rhombus_edge_cos_raw(beta, gamma);
        if !(cos_x > -1.0 && cos_x < 1.0) {
            return Err(TrigError::NotASolution(format!("cos x = {cos_x} outside (−1, 1)")));
        }
        Ok(AngleSolution { m, alpha: a, beta: b, gamma: g, cos_x })
    }

    /// Skips every check. For perturbation experiments.
    pub fn from_parts_unchecked(m: u32, alpha: f64, beta: f64, gamma: f64, cos_x: f64) -> Self {
        AngleSolution { m, alpha: Angle(alpha), beta: Angle(beta), gamma: Angle(gamma), cos_x }
    }

    pub fn angle(&self, kind: AngleKind) -> f64 {
        match kind {
            AngleKind::Alpha => self.alpha.0,
            AngleKind::Beta => self.beta.0,
            AngleKind::Gamma => self.gamma.0,
        }
    }

    pub fn angles(&self) -> [f64; 3] {
        [self.alpha.0, self.beta.0, self.gamma.0]
    }

    /// Edge length in radians.
    pub fn edge_length(&self) -> f64 {
        self.cos_x.acos()
    }

    pub fn residual(&self) -> f64 {
        closure_residual_raw(self.m, self.angles())
    }

    /// `cos x` from the m-gon side; agrees with `cos_x` up to the residual.
    pub fn mgon_cos_x(&self) -> f64 {
        mgon_edge_cos_raw(self.m, self.alpha.0)
    }

    /// True when `cos x ∈ (0, 1)`, the range the lune construction needs.
    pub fn has_acute_edge(&self) -> bool {
        self.cos_x > 0.0 && self.cos_x < 1.0
    }
}

impl fmt::Display for AngleSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m={} α={} β={} γ={} x={:.5}π",
            self.m,
            self.alpha,
            self.beta,
            self.gamma,
            self.edge_length() / PI
        )
    }
}

/// Fixes one angle to a value, as a linear equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pin {
    pub angle: AngleKind,
    pub value: f64,
}

type Equation = ([f64; 3], f64);

fn vertex_equation(v: &VertexType) -> Equation {
    ([v.a as f64, v.b as f64, v.c as f64], 2.0 * PI)
}

fn dot(u: [f64; 3], v: [f64; 3]) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

fn cross(u: [f64; 3], v: [f64; 3]) -> [f64; 3] {
    [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
}

/// The line `point + t·dir` of (α, β, γ) cut out by two linear equations.
#[derive(Debug, Clone, Copy)]
struct AngleLine {
    point: [f64; 3],
    dir: [f64; 3],
}

impl AngleLine {
    fn from_equations(eqs: &[Equation]) -> Result<Self, TrigError> {
        let [(n1, r1), (n2, r2)] = eqs else {
            return Err(TrigError::EquationCount(eqs.len()));
        };
        let dir = cross(*n1, *n2);
        let det = dot(dir, dir);
        if det < 1e-12 {
            return Err(TrigError::LinearlyDependent);
        }
        let (n11, n22, n12) = (dot(*n1, *n1), dot(*n2, *n2), dot(*n1, *n2));
        let a = (r1 * n22 - r2 * n12) / det;
        let b = (r2 * n11 - r1 * n12) / det;
        let point = [0, 1, 2].map(|k| a * n1[k] + b * n2[k]);
        Ok(AngleLine { point, dir })
    }

    fn at(&self, t: f64) -> [f64; 3] {
        [0, 1, 2].map(|k| self.point[k] + t * self.dir[k])
    }

    /// Point on the line whose `kind` coordinate equals `value`.
    fn at_coordinate(&self, kind: AngleKind, value: f64) -> [f64; 3] {
        let k = kind.index();
        self.at((value - self.point[k]) / self.dir[k])
    }

    /// Open parameter interval on which every `g·x > h` holds.
    fn feasible_interval(&self, constraints: &[([f64; 3], f64)]) -> Option<(f64, f64)> {
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for &(g, h) in constraints {
            let slope = dot(g, self.dir);
            let offset = dot(g, self.point) - h;
            if slope.abs() < 1e-15 {
                if offset <= 0.0 {
                    return None;
                }
            } else if slope > 0.0 {
                lo = lo.max(-offset / slope);
            } else {
                hi = hi.min(-offset / slope);
            }
        }
        (lo < hi && lo.is_finite() && hi.is_finite()).then_some((lo, hi))
    }
}

fn equations(constraints: &[VertexType], pin: Option<Pin>) -> Vec<Equation> {
    let mut eqs: Vec<Equation> = constraints.iter().map(vertex_equation).collect();
    if let Some(p) = pin {
        let mut n = [0.0; 3];
        n[p.angle.index()] = 1.0;
        eqs.push((n, p.value));
    }
    eqs
}

/// Strict linear inequalities `g·(α,β,γ) > h` describing the admissible box.
fn admissible_box(m: u32) -> [([f64; 3], f64); 6] {
    [
        ([1.0, 0.0, 0.0], mgon_angle_lower_bound(m)),
        ([-1.0, 0.0, 0.0], -PI),
        ([0.0, -1.0, 0.0], -PI),
        ([0.0, 0.0, 1.0], 0.0),
        ([0.0, 1.0, -1.0], 0.0),
        ([0.0, 1.0, 1.0], PI),
    ]
}

fn in_admissible_box(m: u32, x: [f64; 3]) -> bool {
    admissible_box(m).iter().all(|&(g, h)| dot(g, x) > h)
}

/// All solutions of the closure identity in the admissible box
/// `{(1−2/m)π < α < π, 0 < γ < β < π, β + γ > π}` for two vertex
/// constraints, or one constraint together with a pinned angle.
///
/// An empty result is the nonexistence signal.
pub fn solve_closure(
    m: u32,
    constraints: &[VertexType],
    pin: Option<Pin>,
) -> Result<Vec<AngleSolution>, TrigError> {
    solve_closure_with_grid(m, constraints, pin, DEFAULT_SUBINTERVALS)
}

/// [`solve_closure`] with an explicit number of scan subintervals.
pub fn solve_closure_with_grid(
    m: u32,
    constraints: &[VertexType],
    pin: Option<Pin>,
    subintervals: usize,
) -> Result<Vec<AngleSolution>, TrigError> {
    if m < 3 {
        return Err(TrigError::Gonality(m));
    }
    let line = AngleLine::from_equations(&equations(constraints, pin))?;
    let Some((lo, hi)) = line.feasible_interval(&admissible_box(m)) else {
        return Ok(Vec::new());
    };

    let f = |t: f64| closure_residual_raw(m, line.at(t));
    let n = subintervals.max(1);
    let step = (hi - lo) / n as f64;
    let nudge = step * 1e-9;
    let node = |i: usize| match i {
        0 => lo + nudge,
        i if i == n => hi - nudge,
        i => lo + i as f64 * step,
    };
    let dir_scale = line.dir.iter().fold(0.0f64, |acc, d| acc.max(d.abs()));
    let t_width = BRACKET_WIDTH / dir_scale;

    let mut roots: Vec<f64> = Vec::new();
    let mut prev = (node(0), f(node(0)));
    if prev.1 == 0.0 {
        roots.push(prev.0);
    }
    for i in 1..=n {
        let t = node(i);
        let v = f(t);
        if v == 0.0 {
            roots.push(t);
        } else if prev.1.is_finite() && v.is_finite() && prev.1 != 0.0 && prev.1.signum() != v.signum() {
            roots.push(bisect(&f, prev.0, t, prev.1, t_width));
        }
        prev = (t, v);
    }

    let mut out: Vec<AngleSolution> = Vec::new();
    for t in roots {
        let x = line.at(t);
        if !in_admissible_box(m, x) || closure_residual_raw(m, x).abs() >= CLOSURE_TOL {
            continue;
        }
        if out.iter().any(|s| (s.alpha.0 - x[0]).abs() < 1e-9 && (s.beta.0 - x[1]).abs() < 1e-9) {
            continue;
        }
        if let Ok(s) = AngleSolution::new(m, x[0], x[1], x[2]) {
            if !s.has_acute_edge() {
                log::info!("solution {s} has cos x outside (0, 1); not realizable by a lune");
            }
            out.push(s);
        }
    }
    out.sort_by(|a, b| a.alpha.0.total_cmp(&b.alpha.0));
    Ok(out)
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut f_lo: f64, width: f64) -> f64 {
    for _ in 0..200 {
        if hi - lo <= width {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Positive,
    Negative,
}

/// Outcome of a nonexistence scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SignSummary {
    /// Every evaluated residual has the same strict sign.
    ConstantSign { sign: Sign },
    /// Every sample violates the named inequality.
    InequalityViolated { inequality: String },
    /// The scan found a sign change or an inequality that holds somewhere.
    Inconclusive { reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub parameter: f64,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipReason {
    /// A derived angle left (0, π).
    OutOfDomain,
    /// Within 1e−12 of a pole of cot.
    NearPole,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SkippedSample {
    pub parameter: f64,
    pub reason: SkipReason,
}

/// Numerical record of a nonexistence argument: dense samples of the closure
/// residual (or of an inequality margin) along a one-parameter family.
///
/// This is evidence from a fixed sampling grid, not a proof.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonexistenceEvidence {
    pub description: String,
    pub m: u32,
    pub constraints: Vec<VertexType>,
    pub free_angle: AngleKind,
    pub interval: (f64, f64),
    pub spacing: f64,
    pub samples: Vec<Sample>,
    pub skipped: Vec<SkippedSample>,
    pub sign_summary: SignSummary,
}

impl NonexistenceEvidence {
    pub fn is_conclusive(&self) -> bool {
        !matches!(self.sign_summary, SignSummary::Inconclusive { .. }) && !self.samples.is_empty()
    }
}

fn sample_grid(lo: f64, hi: f64) -> (f64, impl Iterator<Item = f64>) {
    let n = ((hi - lo) / EVIDENCE_SPACING).ceil().max(1.0) as usize;
    let h = (hi - lo) / n as f64;
    (h, (0..n).map(move |i| lo + (i as f64 + 0.5) * h))
}

fn classify_sample(angles: [f64; 3]) -> Option<SkipReason> {
    if angles.iter().any(|&a| a.abs() < POLE_GUARD || (a - 2.0 * PI).abs() < POLE_GUARD) {
        Some(SkipReason::NearPole)
    } else if angles.iter().any(|&a| !(a > 0.0 && a < PI)) {
        Some(SkipReason::OutOfDomain)
    } else {
        None
    }
}

/// Samples the closure residual densely over `interval` of the free angle.
///
/// Two constraints reduce the angles to a line parametrized by `free`; the
/// evidence is the sign pattern of the residual along it. A single constraint
/// without α (such as `β²γ`) is handled through the edge bound
/// `cos x > cos(2π/m)`, which every regular m-gon edge satisfies; the evidence
/// then records the margin `cos x − cos(2π/m)` from the rhombus side.
pub fn certify_no_root(
    m: u32,
    constraints: &[VertexType],
    free: AngleKind,
    interval: (f64, f64),
) -> Result<NonexistenceEvidence, TrigError> {
    if m < 3 {
        return Err(TrigError::Gonality(m));
    }
    let (lo, hi) = interval;
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(TrigError::EmptyInterval(lo, hi));
    }
    let names: Vec<String> = constraints.iter().map(|v| v.to_string()).collect();

    let (point_of, margin_mode): (Box<dyn Fn(f64) -> [f64; 3]>, bool) = match constraints {
        [single] => {
            if single.a != 0 {
                return Err(TrigError::NotAlphaFree(*single));
            }
            let (b, c) = (single.b as f64, single.c as f64);
            match free {
                AngleKind::Beta if c > 0.0 => {
                    (Box::new(move |v: f64| [0.5 * PI, v, (2.0 * PI - b * v) / c]), true)
                }
                AngleKind::Gamma if b > 0.0 => {
                    (Box::new(move |v: f64| [0.5 * PI, (2.0 * PI - c * v) / b, v]), true)
                }
                _ => return Err(TrigError::FreeAngleFixed(free)),
            }
        }
        _ => {
            let line = AngleLine::from_equations(&equations(constraints, None))?;
            if line.dir[free.index()].abs() < 1e-12 {
                return Err(TrigError::FreeAngleFixed(free));
            }
            (Box::new(move |v: f64| line.at_coordinate(free, v)), false)
        }
    };

    let bound = (2.0 * PI / m as f64).cos();
    let (spacing, grid) = sample_grid(lo, hi);
    let mut samples = Vec::new();
    let mut skipped = Vec::new();
    for v in grid {
        let x = point_of(v);
        if let Some(reason) = classify_sample(x) {
            skipped.push(SkippedSample { parameter: v, reason });
            continue;
        }
        let value = if margin_mode {
            rhombus_edge_cos_raw(x[1], x[2]) - bound
        } else {
            closure_residual_raw(m, x)
        };
        samples.push(Sample { parameter: v, value });
    }

    let sign_summary = if samples.is_empty() {
        SignSummary::Inconclusive { reason: "no sample inside the domain".into() }
    } else if margin_mode {
        let holds = samples.iter().filter(|s| s.value > 0.0).count();
        if holds == 0 {
            SignSummary::InequalityViolated { inequality: format!("cos x > cos(2π/{m})") }
        } else {
            SignSummary::Inconclusive { reason: format!("cos x > cos(2π/{m}) holds at {holds} samples") }
        }
    } else if samples.iter().all(|s| s.value > 0.0) {
        SignSummary::ConstantSign { sign: Sign::Positive }
    } else if samples.iter().all(|s| s.value < 0.0) {
        SignSummary::ConstantSign { sign: Sign::Negative }
    } else {
        let changes = samples.windows(2).filter(|w| w[0].value.signum() != w[1].value.signum()).count();
        SignSummary::Inconclusive { reason: format!("{changes} sign changes of the closure residual") }
    };

    let description = if margin_mode {
        format!(
            "m={m}, {{{}}}: margin cos x − cos(2π/m) over {free} ∈ ({lo:.6}, {hi:.6})",
            names.join(", ")
        )
    } else {
        format!("m={m}, {{{}}}: closure residual over {free} ∈ ({lo:.6}, {hi:.6})", names.join(", "))
    };

    Ok(NonexistenceEvidence {
        description,
        m,
        constraints: constraints.to_vec(),
        free_angle: free,
        interval,
        spacing,
        samples,
        skipped,
        sign_summary,
    })
}

/// Samples an inequality margin along a one-parameter family of angles.
///
/// `point_of` maps the free parameter to `(α, β, γ)`; the inequality is
/// treated as violated at a sample when `margin ≤ 1e−12` there. The summary
/// is [`SignSummary::InequalityViolated`] only if every sample violates it.
pub fn certify_inequality(
    m: u32,
    constraints: &[VertexType],
    free: AngleKind,
    interval: (f64, f64),
    inequality: &str,
    point_of: impl Fn(f64) -> [f64; 3],
    margin: impl Fn([f64; 3]) -> f64,
) -> Result<NonexistenceEvidence, TrigError> {
    if m < 3 {
        return Err(TrigError::Gonality(m));
    }
    let (lo, hi) = interval;
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(TrigError::EmptyInterval(lo, hi));
    }
    let (spacing, grid) = sample_grid(lo, hi);
    let mut samples = Vec::new();
    let mut skipped = Vec::new();
    for v in grid {
        let x = point_of(v);
        match classify_sample(x) {
            Some(reason) => skipped.push(SkippedSample { parameter: v, reason }),
            None => samples.push(Sample { parameter: v, value: margin(x) }),
        }
    }
    let holds = samples.iter().filter(|s| s.value > 1e-12).count();
    let sign_summary = if samples.is_empty() {
        SignSummary::Inconclusive { reason: "no sample inside the domain".into() }
    } else if holds == 0 {
        SignSummary::InequalityViolated { inequality: inequality.to_string() }
    } else {
        SignSummary::Inconclusive { reason: format!("{inequality} holds at {holds} samples") }
    };
    let names: Vec<String> = constraints.iter().map(|v| v.to_string()).collect();
    Ok(NonexistenceEvidence {
        description: format!("m={m}, {{{}}}: margin of {inequality} over {free} ∈ ({lo:.6}, {hi:.6})", names.join(", ")),
        m,
        constraints: constraints.to_vec(),
        free_angle: free,
        interval,
        spacing,
        samples,
        skipped,
        sign_summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn ang(k: f64) -> Angle {
        Angle::from_pi(k).unwrap()
    }

    #[test]
    fn rhombus_flat_limit() {
        let v = rhombus_edge_cos(ang(0.5), ang(0.5)).unwrap();
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn rhombus_cube_face() {
        // adjacent cube vertices (±1,±1,±1)/√3 differ in one coordinate: dot = 1/3
        let p = [1.0, 1.0, 1.0].map(|c: f64| c / 3f64.sqrt());
        let q = [1.0, 1.0, -1.0].map(|c: f64| c / 3f64.sqrt());
        let oracle = dot(p, q);
        let v = rhombus_edge_cos(ang(2.0 / 3.0), ang(2.0 / 3.0)).unwrap();
        assert_abs_diff_eq!(v, oracle, epsilon = 1e-14);
    }

    #[test]
    fn rhombus_domain_errors() {
        assert!(rhombus_edge_cos(ang(1.2), ang(0.5)).is_err());
        assert!(rhombus_edge_cos(ang(0.5), Angle::new(PI).unwrap()).is_err());
    }

    #[test]
    fn mgon_dodecahedron_face() {
        // regular dodecahedron: vertices (±1,±1,±1), (0,±1/φ,±φ), ...; adjacent pair
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let n = 3f64.sqrt();
        let p = [1.0 / n, 1.0 / n, 1.0 / n];
        let q = [0.0, 1.0 / phi / n, phi / n];
        let oracle = dot(p, q);
        assert_abs_diff_eq!(oracle, 5f64.sqrt() / 3.0, epsilon = 1e-14);
        let v = mgon_edge_cos(5, ang(2.0 / 3.0)).unwrap();
        assert_abs_diff_eq!(v, oracle, epsilon = 1e-12);
    }

    #[test]
    fn mgon_degenerates_at_lower_bound() {
        // x → 0 as α falls to (1 − 2/m)π; at α → π the value tends to cos(2π/m)
        let lo = mgon_edge_cos_raw(5, 0.6 * PI + 1e-9);
        assert_abs_diff_eq!(lo, 1.0, epsilon = 1e-8);
        let hi = mgon_edge_cos(5, Angle::new(PI - 1e-9).unwrap()).unwrap();
        assert_abs_diff_eq!(hi, (0.4 * PI).cos(), epsilon = 1e-8);
        assert!(hi < 1.0);
        assert!(mgon_edge_cos(5, ang(0.6)).is_err());
        assert!(mgon_edge_cos(2, ang(0.9)).is_err());
    }

    #[test]
    fn closure_at_regular_angles() {
        let r = closure_residual(5, ang(2.0 / 3.0), ang(2.0 / 3.0), ang(2.0 / 3.0)).unwrap();
        assert_abs_diff_eq!(r, 5f64.sqrt() / 3.0 - 1.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn pi_fraction_display() {
        assert_eq!(ang(2.0 / 3.0).to_string(), "2/3π");
        assert_eq!(ang(1.0).to_string(), "1π");
        assert_eq!(ang(0.61881).to_string(), "0.61881π");
    }

    #[test]
    fn solution_swaps_beta_gamma() {
        let s = solve_closure(5, &[VertexType::new(0, 3, 0), VertexType::new(1, 1, 2)], None).unwrap();
        let s = s[0];
        let swapped = AngleSolution::new(5, s.alpha.0, s.gamma.0, s.beta.0).unwrap();
        assert_eq!(swapped.beta, s.beta);
    }

    #[test]
    fn dependent_constraints() {
        let v = VertexType::new(1, 1, 1);
        assert_eq!(solve_closure(5, &[v, v], None), Err(TrigError::LinearlyDependent));
        assert_eq!(
            solve_closure(5, &[VertexType::new(0, 2, 1)], None),
            Err(TrigError::EquationCount(1))
        );
    }

    #[test]
    fn pinned_prism_solution() {
        let pin = Pin { angle: AngleKind::Alpha, value: 0.9 * PI };
        let sols = solve_closure(5, &[VertexType::new(1, 1, 1)], Some(pin)).unwrap();
        assert_eq!(sols.len(), 1);
        let s = sols[0];
        assert_abs_diff_eq!(s.alpha.0 + s.beta.0 + s.gamma.0, 2.0 * PI, epsilon = 1e-12);
        assert!(s.residual().abs() < CLOSURE_TOL);
    }

    #[test]
    fn evidence_rejects_fixed_free_angle() {
        let e = certify_no_root(5, &[VertexType::new(3, 0, 0), VertexType::new(0, 2, 1)], AngleKind::Alpha, (0.0, PI));
        assert_eq!(e.unwrap_err(), TrigError::FreeAngleFixed(AngleKind::Alpha));
    }
}
