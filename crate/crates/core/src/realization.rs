//! Numeric realization: family parameters, embeddings on the unit sphere and
//! geometric verification.

use std::collections::VecDeque;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::VertexType;
use crate::complex::{FaceKind, TilingComplex};
use crate::generators::{self, GeneratorError};
use crate::trig::{self, AngleSolution, TrigError};

pub type Vec3 = [f64; 3];

/// Largest disagreement tolerated when a vertex is reached twice.
pub const CLOSURE_TOL: f64 = 1e-7;
const OVERLAP_SAMPLES: usize = 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RealizationError {
    #[error("{name} = {value} outside ({lo}, {hi})")]
    Domain { name: &'static str, value: f64, lo: f64, hi: f64 },
    #[error("closure defect {distance:e} at vertex {vertex}")]
    ClosureDefect { vertex: usize, distance: f64 },
    #[error("angles do not fit the complex: {0}")]
    Incompatible(String),
    #[error("no solution with cos x in (0, 1)")]
    NoSolution,
    #[error(transparent)]
    Trig(#[from] TrigError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
}

pub(crate) fn dot(u: Vec3, v: Vec3) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

pub(crate) fn cross(u: Vec3, v: Vec3) -> Vec3 {
    [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
}

fn scale(u: Vec3, k: f64) -> Vec3 {
    [u[0] * k, u[1] * k, u[2] * k]
}

fn add(u: Vec3, v: Vec3) -> Vec3 {
    [u[0] + v[0], u[1] + v[1], u[2] + v[2]]
}

fn sub(u: Vec3, v: Vec3) -> Vec3 {
    [u[0] - v[0], u[1] - v[1], u[2] - v[2]]
}

pub(crate) fn normalize(u: Vec3) -> Vec3 {
    scale(u, 1.0 / dot(u, u).sqrt())
}

fn dist(u: Vec3, v: Vec3) -> f64 {
    let d = sub(u, v);
    dot(d, d).sqrt()
}

/// Great-circle distance.
pub fn arc(u: Vec3, v: Vec3) -> f64 {
    dot(u, v).clamp(-1.0, 1.0).acos()
}

fn from_spherical(colat: f64, lon: f64) -> Vec3 {
    [colat.sin() * lon.cos(), colat.sin() * lon.sin(), colat.cos()]
}

/// Unit tangent at `p` pointing along the great circle towards `q`.
fn tangent(p: Vec3, q: Vec3) -> Vec3 {
    normalize(sub(q, scale(p, dot(p, q))))
}

/// Interior angle at `p` of a counterclockwise face with neighbours `prev`
/// and `next`, measured from the direction of `next` round to `prev`.
pub fn corner_angle(p: Vec3, prev: Vec3, next: Vec3) -> f64 {
    let (tn, tp) = (tangent(p, next), tangent(p, prev));
    let a = dot(p, cross(tn, tp)).atan2(dot(tn, tp));
    if a < 0.0 {
        a + 2.0 * PI
    } else {
        a
    }
}

fn det(a: Vec3, b: Vec3, c: Vec3) -> f64 {
    dot(a, cross(b, c))
}

/// Vertex positions on the unit sphere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Embedding {
    pub positions: Vec<Vec3>,
    /// Worst disagreement seen while propagating (0 for closed-form embeddings).
    pub closure_defect: f64,
}

impl Embedding {
    pub fn new(positions: Vec<Vec3>) -> Self {
        Embedding { positions, closure_defect: 0.0 }
    }

    pub fn position(&self, v: usize) -> Vec3 {
        self.positions[v]
    }

    pub fn max_norm_error(&self) -> f64 {
        self.positions.iter().map(|p| (dot(*p, *p).sqrt() - 1.0).abs()).fold(0.0, f64::max)
    }

    /// Normalized sum of a face's vertices.
    pub fn face_centroid(&self, t: &TilingComplex, f: usize) -> Vec3 {
        normalize(t.face_vertices(f).iter().fold([0.0; 3], |acc, &v| add(acc, self.positions[v])))
    }
}

// Earth map

/// `α(γ) = 2·asin(2cos(π/5) / √(3 − tan²(γ/4)))`.
pub fn earth_map_alpha(gamma: f64) -> f64 {
    let t = (gamma / 4.0).tan();
    2.0 * (2.0 * (PI / 5.0).cos() / (3.0 - t * t).sqrt()).asin()
}

/// `c(γ) = (π − α(γ))/γ + ½`.
pub fn earth_map_c(gamma: f64) -> f64 {
    (PI - earth_map_alpha(gamma)) / gamma + 0.5
}

/// The unique `γ ∈ (0, 2π/5)` with `c(γ) = c`, by bisection.
pub fn earth_map_gamma(c: u32) -> Result<f64, RealizationError> {
    if c < 2 {
        return Err(RealizationError::Domain { name: "c", value: c as f64, lo: 2.0, hi: f64::INFINITY });
    }
    let target = c as f64;
    let (mut lo, mut hi) = (1e-9, 2.0 * PI / 5.0);
    // c(γ) decreases: above target at lo, below at hi
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let err = earth_map_c(mid) - target;
        if err.abs() < 1e-12 || hi - lo < 1e-17 {
            return Ok(mid);
        }
        if err > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `(π − (c−½)γ, π − γ/2, γ)` at `γ = γ_c`.
pub fn earth_map_solution(c: u32) -> Result<AngleSolution, RealizationError> {
    let g = earth_map_gamma(c)?;
    Ok(AngleSolution::new(5, PI - (c as f64 - 0.5) * g, PI - 0.5 * g, g)?)
}

pub fn embed_earth_map(c: u32) -> Result<(TilingComplex, Embedding), RealizationError> {
    let t = generators::earth_map(c)?;
    let s = earth_map_solution(c)?;
    let e = embed_generic(&t, &s)?;
    Ok((t, e))
}

// Prism

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LuneParams {
    pub m: u32,
    /// Polar radius of the polygon vertices.
    pub r: f64,
    /// `π − 2r`, the gap between the polygons.
    pub h: f64,
    /// Longitude offset between the two polygons.
    pub xi1: f64,
}

/// Open interval of admissible polar radii, `(acot(sin(π/m)), π/2)`.
pub fn prism_radius_bounds(m: u32) -> (f64, f64) {
    ((1.0 / (PI / m as f64).sin()).atan(), 0.5 * PI)
}

/// Midpoint of the part of the admissible `r` interval where every rhombus
/// corner stays below π. For m ≥ 4 this is the whole interval; for m = 3
/// only radii near the lower bound qualify.
pub fn prism_radius_midpoint(m: u32) -> f64 {
    let (lo, hi) = prism_radius_bounds(m);
    let convex = |r: f64| match (prism_params(m, r), generators::prism(m)) {
        (Ok(p), Ok(t)) => {
            let e = Embedding::new(prism_positions(&p, p.xi1));
            measured_prism_angles(&t, &e).iter().all(|a| *a < PI)
        }
        _ => false,
    };
    const SAMPLES: usize = 256;
    let at = |k: usize| lo + (hi - lo) * k as f64 / SAMPLES as f64;
    let good: Vec<usize> = (1..SAMPLES).filter(|&k| convex(at(k))).collect();
    let (Some(&first), Some(&last)) = (good.first(), good.last()) else {
        return 0.5 * (lo + hi);
    };
    let edge = |mut inside: f64, mut outside: f64| {
        for _ in 0..60 {
            let mid = 0.5 * (inside + outside);
            if convex(mid) {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        inside
    };
    let a = edge(at(first), at(first - 1));
    let b = if last + 1 == SAMPLES { hi } else { edge(at(last), at(last + 1)) };
    0.5 * (a + b)
}

pub fn prism_params(m: u32, r: f64) -> Result<LuneParams, RealizationError> {
    if m < 3 {
        return Err(RealizationError::Domain { name: "m", value: m as f64, lo: 3.0, hi: f64::INFINITY });
    }
    let (lo, hi) = prism_radius_bounds(m);
    if !(r > lo && r < hi) {
        return Err(RealizationError::Domain { name: "r", value: r, lo, hi });
    }
    let cot = 1.0 / r.tan();
    let xi1 = (2.0 * cot * cot + (2.0 * PI / m as f64).cos()).acos();
    Ok(LuneParams { m, r, h: PI - 2.0 * r, xi1 })
}

fn prism_positions(p: &LuneParams, xi: f64) -> Vec<Vec3> {
    let step = 2.0 * PI / p.m as f64;
    let north = (0..p.m).map(|k| from_spherical(p.r, xi + k as f64 * step));
    let south = (0..p.m).map(|k| from_spherical(PI - p.r, k as f64 * step));
    north.chain(south).collect()
}

/// `prism(m)` placed with north polygon at colatitude `r` and south polygon
/// at `π − r`. The offset sign is chosen so β-labelled corners get the
/// larger rhombus angle.
pub fn embed_prism(m: u32, r: f64) -> Result<(TilingComplex, Embedding), RealizationError> {
    let p = prism_params(m, r)?;
    let t = generators::prism(m)?;
    let mut e = Embedding::new(prism_positions(&p, p.xi1));
    let [_, b, g] = measured_prism_angles(&t, &e);
    if b < g {
        e = Embedding::new(prism_positions(&p, -p.xi1));
    }
    Ok((t, e))
}

/// `[α, β, γ]` read off corner 0 of faces 0 and 2.
fn measured_prism_angles(t: &TilingComplex, e: &Embedding) -> [f64; 3] {
    let corner = |f: usize, i: usize| {
        let vs = t.face_vertices(f);
        let n = vs.len();
        let p = |k: usize| e.positions[vs[k % n]];
        corner_angle(p(i), p(i + n - 1), p(i + 1))
    };
    // rhombus labels run β, γ, β, γ from corner 0
    [corner(0, 0), corner(2, 0), corner(2, 1)]
}

/// Angles of the prism realized at polar radius `r`.
pub fn prism_solution(m: u32, r: f64) -> Result<AngleSolution, RealizationError> {
    let (t, e) = embed_prism(m, r)?;
    let [a, b, g] = measured_prism_angles(&t, &e);
    Ok(AngleSolution::new(m, a, b, g)?)
}

// Sporadic solutions

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SporadicKind {
    /// `{β³, αβγ²}`.
    Football,
    /// `{αβ², αβγ²}`.
    SnubFusion,
}

pub fn sporadic_solution(kind: SporadicKind) -> Result<AngleSolution, RealizationError> {
    let constraints = match kind {
        SporadicKind::Football => [VertexType::new(0, 3, 0), VertexType::new(1, 1, 2)],
        SporadicKind::SnubFusion => [VertexType::new(1, 2, 0), VertexType::new(1, 1, 2)],
    };
    trig::solve_closure(5, &constraints, None)?
        .into_iter()
        .find(|s| s.has_acute_edge())
        .ok_or(RealizationError::NoSolution)
}

// Generic propagation

fn rotate_tangent(b: Vec3, axis: Vec3, phi: f64) -> Vec3 {
    add(scale(b, phi.cos()), scale(cross(axis, b), phi.sin()))
}

/// Positions of a face's vertices given its first two, walking corners with
/// the labelled angles.
fn walk_face(t: &TilingComplex, s: &AngleSolution, h0: usize, p0: Vec3, p1: Vec3) -> Result<Vec<(usize, Vec3)>, RealizationError> {
    let (cx, sx) = (s.cos_x, s.edge_length().sin());
    let mut out = vec![(t.half_edge(h0).origin, p0)];
    let (mut prev, mut cur) = (p0, p1);
    let mut h = t.half_edge(h0).next;
    while h != h0 {
        out.push((t.half_edge(h).origin, cur));
        let theta = t
            .half_edge(h)
            .label
            .value_in(s)
            .ok_or_else(|| RealizationError::Incompatible("unlabelled corner".into()))?;
        let f = rotate_tangent(tangent(cur, prev), cur, -theta);
        let next = normalize(add(scale(cur, cx), scale(f, sx)));
        prev = cur;
        cur = next;
        h = t.half_edge(h).next;
    }
    Ok(out)
}

/// Breadth-first placement of faces from a seed face next to a vertex of
/// highest degree. Every vertex reached twice must agree within
/// [`CLOSURE_TOL`]. The result is posed with the seed face centroid at the
/// north pole and its first edge midpoint on the prime meridian.
pub fn embed_generic(t: &TilingComplex, s: &AngleSolution) -> Result<Embedding, RealizationError> {
    if !s.has_acute_edge() {
        return Err(RealizationError::Incompatible(format!("cos x = {} outside (0, 1)", s.cos_x)));
    }
    if t.m() != s.m {
        return Err(RealizationError::Incompatible(format!("complex has m={} but the solution has m={}", t.m(), s.m)));
    }
    if t.count_faces(FaceKind::Triangle) > 0 {
        return Err(RealizationError::Incompatible("triangles carry no angle labels".into()));
    }
    let hub = (0..t.vertex_count()).max_by_key(|&v| (t.degree(v), std::cmp::Reverse(v))).unwrap_or(0);
    let h_seed = t.outgoing(hub).next().ok_or_else(|| RealizationError::Incompatible("empty complex".into()))?;
    let seed = t.half_edge(h_seed).face;
    let h0 = t.faces()[seed].half_edge;

    let mut pos: Vec<Option<Vec3>> = vec![None; t.vertex_count()];
    let mut placed = vec![false; t.face_count()];
    let mut worst = (0usize, 0.0f64);
    let mut queue = VecDeque::new();

    let x = s.edge_length();
    let place = |pos: &mut Vec<Option<Vec3>>, pts: Vec<(usize, Vec3)>, worst: &mut (usize, f64)| {
        for (v, p) in pts {
            match pos[v] {
                Some(q) => {
                    let d = dist(p, q);
                    if d > worst.1 {
                        *worst = (v, d);
                    }
                }
                None => pos[v] = Some(p),
            }
        }
    };
    let first = walk_face(t, s, h0, [1.0, 0.0, 0.0], [x.cos(), x.sin(), 0.0])?;
    place(&mut pos, first, &mut worst);
    placed[seed] = true;
    queue.push_back(seed);

    while let Some(f) = queue.pop_front() {
        for h in t.face_half_edges(f) {
            let tw = t.half_edge(h).twin;
            let g = t.half_edge(tw).face;
            if placed[g] {
                continue;
            }
            let p0 = pos[t.half_edge(tw).origin].expect("shared edge is placed");
            let p1 = pos[t.dest(tw)].expect("shared edge is placed");
            let pts = walk_face(t, s, tw, p0, p1)?;
            place(&mut pos, pts, &mut worst);
            placed[g] = true;
            queue.push_back(g);
        }
    }
    if worst.1 > CLOSURE_TOL {
        return Err(RealizationError::ClosureDefect { vertex: worst.0, distance: worst.1 });
    }
    let positions: Vec<Vec3> = pos.into_iter().map(|p| p.expect("connected complex")).collect();

    // pose
    let seed_vs = t.face_vertices(seed);
    let z = normalize(seed_vs.iter().fold([0.0; 3], |acc, &v| add(acc, positions[v])));
    let mid = normalize(add(positions[seed_vs[0]], positions[seed_vs[1]]));
    let xa = normalize(sub(mid, scale(z, dot(mid, z))));
    let ya = cross(z, xa);
    let positions = positions.into_iter().map(|p| normalize([dot(p, xa), dot(p, ya), dot(p, z)])).collect();
    Ok(Embedding { positions, closure_defect: worst.1 })
}

// Verification

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometricReport {
    pub max_edge_error: f64,
    pub max_angle_error: f64,
    pub max_vertex_sum_error: f64,
    /// Σ spherical excess from the labelled angles.
    pub area_from_labels: f64,
    /// Σ spherical excess from measured corner angles.
    pub area_measured: f64,
    pub overlaps: Vec<(usize, usize)>,
    pub failures: Vec<String>,
}

impl GeometricReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Measured interior angles of face `f`, corner by corner.
pub fn face_angles(t: &TilingComplex, e: &Embedding, f: usize) -> Vec<f64> {
    let vs = t.face_vertices(f);
    let n = vs.len();
    (0..n)
        .map(|i| corner_angle(e.positions[vs[i]], e.positions[vs[(i + n - 1) % n]], e.positions[vs[(i + 1) % n]]))
        .collect()
}

fn sample_points(t: &TilingComplex, e: &Embedding, f: usize) -> Vec<Vec3> {
    let c = e.face_centroid(t, f);
    let vs = t.face_vertices(f);
    let n = vs.len();
    (0..OVERLAP_SAMPLES)
        .map(|k| {
            let i = k % n;
            let rounds = OVERLAP_SAMPLES.div_ceil(n) as f64;
            let (a, b) = (e.positions[vs[i]], e.positions[vs[(i + 1) % n]]);
            // along the median of the fan triangle (c, a, b), moving outwards each round
            let w = 0.45 * ((k / n) as f64 + 1.0) / (rounds + 1.0);
            let (wa, wb) = (w, w);
            normalize(add(scale(c, 1.0 - wa - wb), add(scale(a, wa), scale(b, wb))))
        })
        .collect()
}

fn strictly_inside(t: &TilingComplex, e: &Embedding, f: usize, q: Vec3, orientation: f64) -> bool {
    let vs = t.face_vertices(f);
    let n = vs.len();
    dot(q, e.face_centroid(t, f)) > 0.0
        && (0..n).all(|i| orientation * det(e.positions[vs[i]], e.positions[vs[(i + 1) % n]], q) > 1e-9)
}

/// Checks edge lengths, corner angles, vertex sums, total area and sampled
/// face overlaps of an embedding against an angle solution.
pub fn verify_geometric(t: &TilingComplex, e: &Embedding, s: &AngleSolution, tol: f64) -> GeometricReport {
    let mut failures = Vec::new();
    if e.positions.len() != t.vertex_count() {
        failures.push(format!("{} positions for {} vertices", e.positions.len(), t.vertex_count()));
        return GeometricReport {
            max_edge_error: f64::INFINITY,
            max_angle_error: f64::INFINITY,
            max_vertex_sum_error: f64::INFINITY,
            area_from_labels: f64::NAN,
            area_measured: f64::NAN,
            overlaps: Vec::new(),
            failures,
        };
    }
    if e.max_norm_error() > 1e-12 {
        failures.push(format!("positions off the unit sphere by {:e}", e.max_norm_error()));
    }

    let x = s.edge_length();
    let mut max_edge_error: f64 = 0.0;
    for (u, v) in t.edges() {
        let err = (arc(e.positions[u], e.positions[v]) - x).abs();
        max_edge_error = max_edge_error.max(err);
        if err > tol {
            failures.push(format!("edge {u}-{v} length off by {err:e}"));
        }
    }

    // counterclockwise if the first corner of face 0 turns left
    let vs0 = t.face_vertices(0);
    let orientation = det(e.positions[vs0[0]], e.positions[vs0[1]], e.positions[vs0[2]]).signum();

    let mut max_angle_error: f64 = 0.0;
    let mut vertex_sum = vec![0.0; t.vertex_count()];
    let (mut area_labels, mut area_measured) = (0.0, 0.0);
    for f in 0..t.face_count() {
        let measured: Vec<f64> = face_angles(t, e, f)
            .into_iter()
            .map(|a| if orientation < 0.0 { 2.0 * PI - a } else { a })
            .collect();
        let vs = t.face_vertices(f);
        let n = vs.len() as f64;
        let mut label_sum = 0.0;
        for ((v, label), a) in vs.iter().zip(t.face_labels(f)).zip(&measured) {
            let want = label.value_in(s).unwrap_or(f64::NAN);
            label_sum += want;
            vertex_sum[*v] += a;
            let err = (a - want).abs();
            max_angle_error = max_angle_error.max(err);
            if err.is_nan() || err > tol {
                failures.push(format!("face {f} corner at {v}: angle off by {err:e}"));
            }
        }
        area_labels += label_sum - (n - 2.0) * PI;
        area_measured += measured.iter().sum::<f64>() - (n - 2.0) * PI;
    }
    let max_vertex_sum_error = vertex_sum.iter().map(|a| (a - 2.0 * PI).abs()).fold(0.0, f64::max);
    if max_vertex_sum_error > tol {
        failures.push(format!("vertex angle sums off by up to {max_vertex_sum_error:e}"));
    }
    for (name, area) in [("labelled", area_labels), ("measured", area_measured)] {
        if (area - 4.0 * PI).abs() > tol {
            failures.push(format!("{name} total area {area} differs from 4π"));
        }
    }

    let samples: Vec<Vec<Vec3>> = (0..t.face_count()).map(|f| sample_points(t, e, f)).collect();
    let mut overlaps = Vec::new();
    for (f, pts) in samples.iter().enumerate() {
        for g in 0..t.face_count() {
            if f != g && pts.iter().any(|&q| strictly_inside(t, e, g, q, orientation)) {
                let pair = (f.min(g), f.max(g));
                if !overlaps.contains(&pair) {
                    overlaps.push(pair);
                }
            }
        }
    }
    if !overlaps.is_empty() {
        failures.push(format!("{} overlapping face pairs", overlaps.len()));
    }

    GeometricReport {
        max_edge_error,
        max_angle_error,
        max_vertex_sum_error,
        area_from_labels: area_labels,
        area_measured,
        overlaps,
        failures,
    }
}

/// Faces of one kind, used by exporters.
pub fn faces_of_kind(t: &TilingComplex, kind: FaceKind) -> Vec<usize> {
    (0..t.face_count()).filter(|&f| t.faces()[f].kind == kind).collect()
}
