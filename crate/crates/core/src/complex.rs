//! Labeled half-edge complexes on the sphere.
//!
//! Every half-edge carries the corner label at its origin inside its face, so
//! a face's labels read off by walking `next` from any of its half-edges.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::VertexType;
use crate::trig::AngleSolution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FaceKind {
    /// The regular m-gon.
    MGon,
    Rhombus,
    /// Intermediate triangles of the snub dodecahedron, before fusion.
    Triangle,
}

impl FaceKind {
    fn code(self) -> u32 {
        match self {
            FaceKind::MGon => 0,
            FaceKind::Rhombus => 1,
            FaceKind::Triangle => 2,
        }
    }
}

/// Corner label: which prototile angle sits at a corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Alpha,
    Beta,
    Gamma,
    /// Provisional corner of a [`FaceKind::Triangle`].
    Delta,
}

impl Label {
    fn code(self) -> u32 {
        match self {
            Label::Alpha => 0,
            Label::Beta => 1,
            Label::Gamma => 2,
            Label::Delta => 3,
        }
    }

    pub fn value_in(self, s: &AngleSolution) -> Option<f64> {
        match self {
            Label::Alpha => Some(s.alpha.radians()),
            Label::Beta => Some(s.beta.radians()),
            Label::Gamma => Some(s.gamma.radians()),
            Label::Delta => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSpec {
    pub kind: FaceKind,
    pub vertices: Vec<usize>,
    pub labels: Vec<Label>,
}

impl FaceSpec {
    pub fn new(kind: FaceKind, vertices: Vec<usize>, labels: Vec<Label>) -> Self {
        FaceSpec { kind, vertices, labels }
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        let mut labels = self.labels.clone();
        vertices.reverse();
        labels.reverse();
        FaceSpec { kind: self.kind, vertices, labels }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("vertex {vertex} out of range (vertex count {count})")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("face {face}: {kind:?} with {len} corners")]
    BadFaceSize { face: usize, kind: FaceKind, len: usize },
    #[error("face {face}: {reason}")]
    BadLabels { face: usize, reason: String },
    #[error("not edge-to-edge at edge {from}→{to}: {reason}")]
    NotEdgeToEdge { from: usize, to: usize, reason: String },
    #[error("not a sphere: {0}")]
    NotSphere(String),
    #[error("vertex {vertex} has degree {degree} < 3")]
    DegreeTooLow { vertex: usize, degree: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfEdge {
    pub origin: usize,
    pub twin: usize,
    pub next: usize,
    pub prev: usize,
    pub face: usize,
    /// Corner label at `origin` inside `face`.
    pub label: Label,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Face {
    pub kind: FaceKind,
    /// First half-edge; walking `next` from here reproduces the input order.
    pub half_edge: usize,
    pub degree: usize,
}

/// A validated, immutable tiling of the sphere by labeled polygons.
#[derive(Debug, Clone, PartialEq)]
pub struct TilingComplex {
    m: u32,
    vertex_count: usize,
    half_edges: Vec<HalfEdge>,
    faces: Vec<Face>,
    /// One outgoing half-edge per vertex.
    vertex_out: Vec<usize>,
}

fn check_labels(face: usize, spec: &FaceSpec) -> Result<(), BuildError> {
    let bad = |reason: &str| Err(BuildError::BadLabels { face, reason: reason.to_string() });
    if spec.labels.len() != spec.vertices.len() {
        return bad("label count differs from corner count");
    }
    match spec.kind {
        FaceKind::MGon => {
            if spec.labels.iter().any(|&l| l != Label::Alpha) {
                return bad("m-gon corners must all be alpha");
            }
        }
        FaceKind::Triangle => {
            if spec.labels.iter().any(|&l| l != Label::Delta) {
                return bad("triangle corners must all be delta");
            }
        }
        FaceKind::Rhombus => {
            let l = &spec.labels;
            let alternating = (l[0] == Label::Beta || l[0] == Label::Gamma)
                && (l[1] == Label::Beta || l[1] == Label::Gamma)
                && l[0] != l[1]
                && l[2] == l[0]
                && l[3] == l[1];
            if !alternating {
                return bad("rhombus labels must alternate beta, gamma");
            }
        }
    }
    Ok(())
}

impl TilingComplex {
    /// Builds and validates a complex from consistently oriented faces.
    pub fn build(m: u32, vertex_count: usize, specs: &[FaceSpec]) -> Result<Self, BuildError> {
        let mut half_edges = Vec::new();
        let mut faces = Vec::with_capacity(specs.len());
        let mut directed: BTreeMap<(usize, usize), usize> = BTreeMap::new();

        for (fi, spec) in specs.iter().enumerate() {
            let n = spec.vertices.len();
            let expected = match spec.kind {
                FaceKind::MGon => m as usize,
                FaceKind::Rhombus => 4,
                FaceKind::Triangle => 3,
            };
            if n != expected || n < 3 {
                return Err(BuildError::BadFaceSize { face: fi, kind: spec.kind, len: n });
            }
            check_labels(fi, spec)?;
            for &v in &spec.vertices {
                if v >= vertex_count {
                    return Err(BuildError::VertexOutOfRange { vertex: v, count: vertex_count });
                }
            }
            let base = half_edges.len();
            for i in 0..n {
                let (from, to) = (spec.vertices[i], spec.vertices[(i + 1) % n]);
                if from == to {
                    return Err(BuildError::NotEdgeToEdge { from, to, reason: format!("degenerate edge in face {fi}") });
                }
                if spec.vertices.iter().filter(|&&w| w == from).count() > 1 {
                    return Err(BuildError::NotEdgeToEdge {
                        from,
                        to,
                        reason: format!("face {fi} visits vertex {from} twice"),
                    });
                }
                if directed.insert((from, to), base + i).is_some() {
                    return Err(BuildError::NotEdgeToEdge {
                        from,
                        to,
                        reason: "directed edge used twice (inconsistent orientation or more than two faces)".into(),
                    });
                }
                half_edges.push(HalfEdge {
                    origin: from,
                    twin: usize::MAX,
                    next: base + (i + 1) % n,
                    prev: base + (i + n - 1) % n,
                    face: fi,
                    label: spec.labels[i],
                });
            }
            faces.push(Face { kind: spec.kind, half_edge: base, degree: n });
        }

        for h in 0..half_edges.len() {
            let from = half_edges[h].origin;
            let to = half_edges[half_edges[h].next].origin;
            match directed.get(&(to, from)) {
                Some(&t) => half_edges[h].twin = t,
                None => {
                    return Err(BuildError::NotSphere(format!("edge {from}–{to} lies on a single face (boundary)")));
                }
            }
        }

        let mut vertex_out = vec![usize::MAX; vertex_count];
        let mut out_degree = vec![0usize; vertex_count];
        for (h, he) in half_edges.iter().enumerate() {
            if vertex_out[he.origin] == usize::MAX {
                vertex_out[he.origin] = h;
            }
            out_degree[he.origin] += 1;
        }
        if let Some(v) = vertex_out.iter().position(|&h| h == usize::MAX) {
            return Err(BuildError::NotSphere(format!("vertex {v} is not on any face")));
        }

        let t = TilingComplex { m, vertex_count, half_edges, faces, vertex_out };

        for (v, &deg) in out_degree.iter().enumerate() {
            let around = t.outgoing(v).count();
            if around != deg {
                return Err(BuildError::NotSphere(format!(
                    "vertex {v} is pinched ({around} of {deg} corners in one cycle)"
                )));
            }
            if around < 3 {
                return Err(BuildError::DegreeTooLow { vertex: v, degree: around });
            }
        }
        if !t.is_connected() {
            return Err(BuildError::NotSphere("edge graph is disconnected".into()));
        }
        let chi = t.euler_characteristic();
        if chi != 2 {
            return Err(BuildError::NotSphere(format!("Euler characteristic {chi} ≠ 2")));
        }
        Ok(t)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for h in self.outgoing(v) {
                let w = self.dest(h);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.vertex_count
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.half_edges.len() / 2
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    pub fn half_edges(&self) -> &[HalfEdge] {
        &self.half_edges
    }

    pub fn half_edge(&self, h: usize) -> &HalfEdge {
        &self.half_edges[h]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn dest(&self, h: usize) -> usize {
        self.half_edges[self.half_edges[h].next].origin
    }

    pub fn count_faces(&self, kind: FaceKind) -> usize {
        self.faces.iter().filter(|f| f.kind == kind).count()
    }

    /// Exactly the two prototile kinds, both present.
    pub fn is_dihedral(&self) -> bool {
        self.count_faces(FaceKind::MGon) > 0
            && self.count_faces(FaceKind::Rhombus) > 0
            && self.count_faces(FaceKind::Triangle) == 0
    }

    /// Half-edges of face `f` in boundary order.
    pub fn face_half_edges(&self, f: usize) -> impl Iterator<Item = usize> + '_ {
        let start = self.faces[f].half_edge;
        let n = self.faces[f].degree;
        std::iter::successors(Some(start), move |&h| Some(self.half_edges[h].next)).take(n)
    }

    pub fn face_vertices(&self, f: usize) -> Vec<usize> {
        self.face_half_edges(f).map(|h| self.half_edges[h].origin).collect()
    }

    pub fn face_labels(&self, f: usize) -> Vec<Label> {
        self.face_half_edges(f).map(|h| self.half_edges[h].label).collect()
    }

    /// Outgoing half-edges of `v` in rotational order.
    pub fn outgoing(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let start = self.vertex_out[v];
        let mut cur = Some(start);
        std::iter::from_fn(move || {
            let h = cur?;
            let nxt = self.half_edges[self.half_edges[h].prev].twin;
            cur = (nxt != start).then_some(nxt);
            Some(h)
        })
        .take(self.half_edges.len())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.outgoing(v).count()
    }

    /// Corner labels around `v`, cyclically in rotational order.
    pub fn corner_labels(&self, v: usize) -> Vec<Label> {
        self.outgoing(v).map(|h| self.half_edges[h].label).collect()
    }

    pub fn vertex_type(&self, v: usize) -> VertexType {
        let mut t = VertexType::new(0, 0, 0);
        for l in self.corner_labels(v) {
            match l {
                Label::Alpha => t.a += 1,
                Label::Beta => t.b += 1,
                Label::Gamma => t.c += 1,
                Label::Delta => {}
            }
        }
        t
    }

    /// Number of vertices of each type.
    pub fn vertex_census(&self) -> BTreeMap<VertexType, usize> {
        let mut census = BTreeMap::new();
        for v in 0..self.vertex_count {
            *census.entry(self.vertex_type(v)).or_insert(0) += 1;
        }
        census
    }

    pub fn label_count(&self, label: Label) -> usize {
        self.half_edges.iter().filter(|h| h.label == label).count()
    }

    pub fn to_face_specs(&self) -> Vec<FaceSpec> {
        (0..self.faces.len())
            .map(|f| FaceSpec::new(self.faces[f].kind, self.face_vertices(f), self.face_labels(f)))
            .collect()
    }

    /// Undirected edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = self
            .half_edges
            .iter()
            .enumerate()
            .filter_map(|(h, he)| {
                let d = self.dest(h);
                (he.origin < d).then_some((he.origin, d))
            })
            .collect();
        e.sort_unstable();
        e
    }
}

/// Result of [`verify_combinatorial`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CombinatorialReport {
    pub census: Vec<(VertexType, usize)>,
    pub max_vertex_sum_error: f64,
    pub euler_characteristic: i64,
    pub failures: Vec<String>,
}

impl CombinatorialReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn census_map(&self) -> BTreeMap<VertexType, usize> {
        self.census.iter().copied().collect()
    }
}

/// Checks vertex angle sums, corner balance and Euler characteristic of `t`
/// against the angles in `s`. Failures are collected, never raised.
pub fn verify_combinatorial(t: &TilingComplex, s: &AngleSolution, tol: f64) -> CombinatorialReport {
    let mut failures = Vec::new();
    if t.m() != s.m {
        failures.push(format!("complex has m={} but the solution has m={}", t.m(), s.m));
    }
    let mut max_err: f64 = 0.0;
    for v in 0..t.vertex_count() {
        let mut sum = 0.0;
        for l in t.corner_labels(v) {
            match l.value_in(s) {
                Some(x) => sum += x,
                None => failures.push(format!("vertex {v} carries a provisional label")),
            }
        }
        let err = (sum - 2.0 * std::f64::consts::PI).abs();
        max_err = max_err.max(err);
        if err > tol {
            failures.push(format!("vertex {v} ({}) sums to 2π{:+e}", t.vertex_type(v), sum - 2.0 * std::f64::consts::PI));
        }
    }

    let mgons = t.count_faces(FaceKind::MGon);
    let rhombi = t.count_faces(FaceKind::Rhombus);
    let (na, nb, ng) = (t.label_count(Label::Alpha), t.label_count(Label::Beta), t.label_count(Label::Gamma));
    if na != t.m() as usize * mgons {
        failures.push(format!("#α = {na} but m·#m-gons = {}", t.m() as usize * mgons));
    }
    if nb != 2 * rhombi || ng != 2 * rhombi {
        failures.push(format!("#β = {nb}, #γ = {ng}, expected 2·#rhombi = {}", 2 * rhombi));
    }
    let chi = t.euler_characteristic();
    if chi != 2 {
        failures.push(format!("Euler characteristic {chi}"));
    }
    CombinatorialReport {
        census: t.vertex_census().into_iter().collect(),
        max_vertex_sum_error: max_err,
        euler_characteristic: chi,
        failures,
    }
}

/// Traversal-minimal integer code of a labeled complex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalCode(pub Vec<u32>);

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // FNV-1a digest, for logs.
        let mut h: u64 = 0xcbf29ce484222325;
        for &x in &self.0 {
            h ^= x as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        write!(f, "{h:016x}/{}", self.0.len())
    }
}

/// Canonical code with reflections counted as isomorphisms.
pub fn canonical_code(t: &TilingComplex) -> CanonicalCode {
    canonical_code_with(t, true)
}

/// Minimum over BFS codes rooted at every half-edge; with `reflections`, the
/// mirror traversal (`prev` for `next`) is included.
pub fn canonical_code_with(t: &TilingComplex, reflections: bool) -> CanonicalCode {
    let n = t.half_edges.len();
    let header = [t.m, t.vertex_count as u32, n as u32, t.faces.len() as u32];
    let mut best: Option<Vec<u32>> = None;
    let mut number = vec![u32::MAX; n];
    let mut order = Vec::with_capacity(n);
    let orientations: &[bool] = if reflections { &[false, true] } else { &[false] };

    for &mirror in orientations {
        let step = |h: usize| if mirror { t.half_edges[h].prev } else { t.half_edges[h].next };
        let symbol = |h: usize| {
            let he = &t.half_edges[h];
            let label = if mirror { t.half_edges[he.next].label } else { he.label };
            t.faces[he.face].kind.code() * 4 + label.code()
        };
        for root in 0..n {
            number.fill(u32::MAX);
            order.clear();
            number[root] = 0;
            order.push(root);
            let mut code = Vec::with_capacity(header.len() + 3 * n);
            code.extend_from_slice(&header);
            // Less: already smaller than best, stop comparing. Equal: still tied.
            let mut state = match &best {
                None => std::cmp::Ordering::Less,
                Some(_) => std::cmp::Ordering::Equal,
            };
            let mut head = 0;
            let mut aborted = false;
            while head < order.len() {
                let h = order[head];
                head += 1;
                for nb in [step(h), t.half_edges[h].twin] {
                    if number[nb] == u32::MAX {
                        number[nb] = order.len() as u32;
                        order.push(nb);
                    }
                }
                let start = code.len();
                code.push(symbol(h));
                code.push(number[step(h)]);
                code.push(number[t.half_edges[h].twin]);
                if state == std::cmp::Ordering::Equal {
                    let b = best.as_ref().expect("tied with an existing best");
                    match code[start..].cmp(&b[start..start + 3]) {
                        std::cmp::Ordering::Greater => {
                            aborted = true;
                            break;
                        }
                        std::cmp::Ordering::Less => state = std::cmp::Ordering::Less,
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
            if !aborted && state == std::cmp::Ordering::Less {
                best = Some(code);
            }
        }
    }
    CanonicalCode(best.unwrap_or_default())
}

pub fn isomorphic(t1: &TilingComplex, t2: &TilingComplex) -> bool {
    canonical_code(t1) == canonical_code(t2)
}

/// Reorients faces so that every shared edge is traversed in opposite
/// directions, starting from the orientation of face 0.
///
/// Returns `None` if the faces do not admit a consistent orientation.
pub fn orient_faces(specs: &[FaceSpec]) -> Option<Vec<FaceSpec>> {
    let mut by_edge: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (f, s) in specs.iter().enumerate() {
        let n = s.vertices.len();
        for i in 0..n {
            let (u, v) = (s.vertices[i], s.vertices[(i + 1) % n]);
            by_edge.entry((u.min(v), u.max(v))).or_default().push(f);
        }
    }
    let has_directed = |s: &FaceSpec, u: usize, v: usize| {
        let n = s.vertices.len();
        (0..n).any(|i| s.vertices[i] == u && s.vertices[(i + 1) % n] == v)
    };
    let mut out: Vec<Option<FaceSpec>> = vec![None; specs.len()];
    for seed in 0..specs.len() {
        if out[seed].is_some() {
            continue;
        }
        out[seed] = Some(specs[seed].clone());
        let mut queue = VecDeque::from([seed]);
        while let Some(f) = queue.pop_front() {
            let cur = out[f].clone().expect("queued faces are oriented");
            let n = cur.vertices.len();
            for i in 0..n {
                let (u, v) = (cur.vertices[i], cur.vertices[(i + 1) % n]);
                for &g in &by_edge[&(u.min(v), u.max(v))] {
                    if g == f {
                        continue;
                    }
                    let want = if has_directed(&specs[g], v, u) { specs[g].clone() } else { specs[g].reversed() };
                    match &out[g] {
                        Some(existing) => {
                            if !has_directed(existing, v, u) {
                                return None;
                            }
                        }
                        None => {
                            out[g] = Some(want);
                            queue.push_back(g);
                        }
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}
