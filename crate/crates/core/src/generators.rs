//! Constructions of every tiling family as a [`TilingComplex`].

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{canonical_code, orient_faces, BuildError, CanonicalCode, FaceKind, FaceSpec, Label, TilingComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("faces admit no consistent orientation")]
    NonOrientable,
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error("triangle {0} would be fused twice")]
    FusionConflict(usize),
    #[error("{0} is not a perfect matching of the dodecahedron")]
    NotAMatching(String),
}

/// Note attached to earth-map output about the face count.
pub const EARTH_MAP_FACE_COUNT_NOTE: &str =
    "earth_map(c) has 2 pentagons and 5(2c−1) rhombi, f = 10c − 3; corner counting rules out 4(2c−1) rhombi, so f = 8c − 2 is not attainable";

use FaceKind::{MGon, Rhombus, Triangle};
use Label::{Alpha, Beta, Delta, Gamma};

fn finish(m: u32, vertex_count: usize, specs: Vec<FaceSpec>) -> Result<TilingComplex, GeneratorError> {
    let oriented = orient_faces(&specs).ok_or(GeneratorError::NonOrientable)?;
    Ok(TilingComplex::build(m, vertex_count, &oriented)?)
}

fn rhombus(vs: [usize; 4], labels: [Label; 4]) -> FaceSpec {
    FaceSpec::new(Rhombus, vs.to_vec(), labels.to_vec())
}

fn mgon(vs: Vec<usize>) -> FaceSpec {
    let n = vs.len();
    FaceSpec::new(MGon, vs, vec![Alpha; n])
}

/// Two m-gons joined by a ring of m rhombi. Vertices `0..m` are the north
/// polygon, `m..2m` the south one; rhombus k is `[n_k, s_k, s_{k+1}, n_{k+1}]`.
pub fn prism(m: u32) -> Result<TilingComplex, GeneratorError> {
    if m < 3 {
        return Err(GeneratorError::Parameter(format!("prism needs m ≥ 3, got {m}")));
    }
    let n = m as usize;
    let mut specs = vec![mgon((0..n).collect()), mgon((n..2 * n).rev().collect())];
    for k in 0..n {
        let k1 = (k + 1) % n;
        specs.push(rhombus([k, n + k, n + k1, k1], [Beta, Gamma, Beta, Gamma]));
    }
    // built directly: the listed orientation is already consistent
    Ok(TilingComplex::build(m, 2 * n, &specs)?)
}

/// Vertex ids of one earth-map block, after gluing to its neighbours.
struct Block {
    a: usize,
    b: usize,
    u: Vec<usize>,
    w: Vec<usize>,
}

/// Earth-map tiling with five blocks of `2c − 1` rhombi between two
/// pentagons. Pentagon vertices carry `αβγ^c`, all others `β²γ`.
pub fn earth_map(c: u32) -> Result<TilingComplex, GeneratorError> {
    if c < 2 {
        return Err(GeneratorError::Parameter(format!("earth map needs c ≥ 2, got {c}")));
    }
    let c = c as usize;
    // per block: A = P_i, X_i = u_{c+1}, Q_i = w_c, then u_2..u_c and w_2..w_{c-1}
    let per_block = 2 * c;
    let p = |i: usize| (i % 5) * per_block;
    let x = |i: usize| (i % 5) * per_block + 1;
    let q = |i: usize| (i % 5) * per_block + 2;
    let blocks: Vec<Block> = (0..5)
        .map(|i| {
            let base = i * per_block + 3;
            let prev = (i + 4) % 5;
            let mut u = vec![p(prev)];
            u.extend((0..c - 1).map(|j| base + j));
            u.push(x(i));
            let mut w = vec![x(prev)];
            w.extend((0..c - 2).map(|j| base + c - 1 + j));
            w.push(q(i));
            Block { a: p(i), b: q(prev), u, w }
        })
        .collect();

    let mut specs = vec![mgon((0..5).map(p).collect()), mgon((0..5).map(q).collect())];
    for blk in &blocks {
        for j in 0..c {
            specs.push(rhombus([blk.a, blk.u[j], blk.w[j], blk.u[j + 1]], [Gamma, Beta, Gamma, Beta]));
        }
        for j in 0..c - 1 {
            specs.push(rhombus([blk.b, blk.w[j], blk.u[j + 1], blk.w[j + 1]], [Gamma, Beta, Gamma, Beta]));
        }
    }
    finish(5, 5 * per_block, specs)
}

/// Faces of the dodecahedron, consistently oriented.
pub const DODECAHEDRON_FACES: [[usize; 5]; 12] = [
    [0, 1, 2, 3, 4],
    [0, 5, 6, 7, 1],
    [1, 7, 8, 9, 2],
    [2, 9, 10, 11, 3],
    [3, 11, 12, 13, 4],
    [4, 13, 14, 5, 0],
    [5, 14, 15, 16, 6],
    [6, 16, 17, 8, 7],
    [8, 17, 18, 10, 9],
    [10, 18, 19, 12, 11],
    [12, 19, 15, 14, 13],
    [15, 19, 18, 17, 16],
];

pub fn dodecahedron() -> Result<TilingComplex, GeneratorError> {
    let specs: Vec<FaceSpec> = DODECAHEDRON_FACES.iter().map(|f| mgon(f.to_vec())).collect();
    Ok(TilingComplex::build(5, 20, &specs)?)
}

/// The 30 dodecahedron edges as sorted pairs, in lexicographic order.
pub fn dodecahedron_edges() -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = DODECAHEDRON_FACES
        .iter()
        .flat_map(|f| (0..5).map(move |i| (f[i].min(f[(i + 1) % 5]), f[i].max(f[(i + 1) % 5]))))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    edges
}

/// Face of the dodecahedron that traverses `u → v`.
fn face_with_directed(u: usize, v: usize) -> usize {
    DODECAHEDRON_FACES
        .iter()
        .position(|f| (0..5).any(|i| f[i] == u && f[(i + 1) % 5] == v))
        .expect("every dodecahedron edge is traversed once in each direction")
}

fn corner(face: usize, u: usize) -> usize {
    face * 5 + DODECAHEDRON_FACES[face].iter().position(|&x| x == u).expect("u lies on face")
}

/// The snub dodecahedron with the bookkeeping needed to fuse its triangles.
#[derive(Debug, Clone)]
pub struct SnubDodecahedron {
    pub complex: TilingComplex,
    /// Face index of the triangle at each dodecahedron vertex.
    pub vertex_triangles: Vec<usize>,
    /// Per dodecahedron edge `(a, b)`: face indices of the triangles nearer
    /// `a` and nearer `b`.
    pub edge_triangles: BTreeMap<(usize, usize), (usize, usize)>,
}

/// Snub dodecahedron: a shrunken pentagon per dodecahedron face, a triangle
/// per dodecahedron vertex and two triangles per dodecahedron edge. Vertex
/// `5F + i` is corner `i` of face `F`.
pub fn snub_dodecahedron() -> Result<SnubDodecahedron, GeneratorError> {
    let mut specs: Vec<FaceSpec> = (0..12).map(|f| mgon((0..5).map(|i| 5 * f + i).collect())).collect();
    let mut vertex_triangles = Vec::with_capacity(20);
    for u in 0..20 {
        let around: Vec<usize> = (0..12).filter(|&f| DODECAHEDRON_FACES[f].contains(&u)).collect();
        specs.push(FaceSpec::new(Triangle, around.iter().map(|&f| corner(f, u)).collect(), vec![Delta; 3]));
        vertex_triangles.push(specs.len() - 1);
    }
    let mut edge_triangles = BTreeMap::new();
    for (a, b) in dodecahedron_edges() {
        let (f, g) = (face_with_directed(a, b), face_with_directed(b, a));
        let near_a = vec![corner(f, a), corner(g, b), corner(g, a)];
        let near_b = vec![corner(f, a), corner(f, b), corner(g, b)];
        specs.push(FaceSpec::new(Triangle, near_a, vec![Delta; 3]));
        specs.push(FaceSpec::new(Triangle, near_b, vec![Delta; 3]));
        edge_triangles.insert((a, b), (specs.len() - 2, specs.len() - 1));
    }
    let complex = finish(5, 60, specs)?;
    Ok(SnubDodecahedron { complex, vertex_triangles, edge_triangles })
}

/// A perfect matching of the dodecahedron, as sorted edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Matching {
    pub edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// Every dodecahedron vertex covered exactly once by dodecahedron edges.
    pub fn is_perfect(&self) -> bool {
        let all = dodecahedron_edges();
        let mut seen = [0u8; 20];
        for &(a, b) in &self.edges {
            if all.binary_search(&(a, b)).is_err() {
                return false;
            }
            seen[a] += 1;
            seen[b] += 1;
        }
        seen.iter().all(|&s| s == 1)
    }
}

/// All perfect matchings of the dodecahedron graph, by backtracking on the
/// lowest uncovered vertex.
pub fn dodecahedron_matchings() -> Vec<Matching> {
    let edges = dodecahedron_edges();
    let mut adj = vec![Vec::new(); 20];
    for &(a, b) in &edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    fn go(adj: &[Vec<usize>], covered: &mut [bool; 20], cur: &mut Vec<(usize, usize)>, out: &mut Vec<Matching>) {
        let Some(u) = covered.iter().position(|&c| !c) else {
            let mut edges = cur.clone();
            edges.sort_unstable();
            out.push(Matching { edges });
            return;
        };
        covered[u] = true;
        for &v in &adj[u] {
            if !covered[v] {
                covered[v] = true;
                cur.push((u.min(v), u.max(v)));
                go(adj, covered, cur, out);
                cur.pop();
                covered[v] = false;
            }
        }
        covered[u] = false;
    }
    let mut out = Vec::new();
    go(&adj, &mut [false; 20], &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Merges two oriented triangles sharing an edge into a rhombus whose
/// diagonal endpoints get β.
fn fuse(t1: &[usize], t2: &[usize]) -> Option<FaceSpec> {
    for i in 0..3 {
        let (p, q, r) = (t1[i], t1[(i + 1) % 3], t1[(i + 2) % 3]);
        for j in 0..3 {
            if t2[j] == q && t2[(j + 1) % 3] == p {
                let s = t2[(j + 2) % 3];
                return Some(rhombus([p, s, q, r], [Beta, Gamma, Beta, Gamma]));
            }
        }
    }
    None
}

/// Pairs the 80 snub triangles into 40 rhombi. Along a matched edge the
/// edge triangles fuse with the vertex triangles at its ends; along an
/// unmatched edge the two edge triangles fuse with each other.
pub fn triangular_fusion(base: &SnubDodecahedron, matching: &Matching) -> Result<TilingComplex, GeneratorError> {
    if !matching.is_perfect() {
        let names: Vec<String> = matching.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        return Err(GeneratorError::NotAMatching(names.join(",")));
    }
    let t = &base.complex;
    let mut used = vec![false; t.face_count()];
    let mut pairs = Vec::with_capacity(40);
    for (&(a, b), &(na, nb)) in &base.edge_triangles {
        if matching.contains(a, b) {
            pairs.push((base.vertex_triangles[a], na));
            pairs.push((nb, base.vertex_triangles[b]));
        } else {
            pairs.push((na, nb));
        }
    }
    let mut specs: Vec<FaceSpec> = (0..t.face_count())
        .filter(|&f| t.faces()[f].kind == MGon)
        .map(|f| mgon(t.face_vertices(f)))
        .collect();
    for (f, g) in pairs {
        for h in [f, g] {
            if std::mem::replace(&mut used[h], true) {
                return Err(GeneratorError::FusionConflict(h));
            }
        }
        let fused = fuse(&t.face_vertices(f), &t.face_vertices(g)).ok_or(GeneratorError::FusionConflict(f))?;
        specs.push(fused);
    }
    debug_assert_eq!(specs.len(), 52);
    Ok(TilingComplex::build(5, 60, &specs)?)
}

/// Isomorphism classes of the triangular fusions.
#[derive(Debug, Clone)]
pub struct FusionClasses {
    pub matchings: Vec<Matching>,
    /// Variant number (1..=3) of each matching's fusion.
    pub variant_of: Vec<u32>,
    /// Index into `matchings` of each variant's representative.
    pub representatives: Vec<usize>,
    pub codes: Vec<CanonicalCode>,
}

impl FusionClasses {
    pub fn class_sizes(&self) -> Vec<usize> {
        (1..=self.codes.len() as u32).map(|v| self.variant_of.iter().filter(|&&x| x == v).count()).collect()
    }
}

/// Vertex with cyclic arrangement `|α|β|γ|γ|`.
pub fn is_bullet(t: &TilingComplex, v: usize) -> bool {
    let labels = t.corner_labels(v);
    if labels.len() != 4 {
        return false;
    }
    let want = [Alpha, Beta, Gamma, Gamma];
    let rev = [Alpha, Gamma, Gamma, Beta];
    (0..4).any(|r| (0..4).all(|i| labels[(r + i) % 4] == want[i]) || (0..4).all(|i| labels[(r + i) % 4] == rev[i]))
}

/// Bullet counts per pentagon, sorted descending.
pub fn bullet_distribution(t: &TilingComplex) -> Vec<usize> {
    let mut d: Vec<usize> = (0..t.face_count())
        .filter(|&f| t.faces()[f].kind == MGon)
        .map(|f| t.face_vertices(f).into_iter().filter(|&v| is_bullet(t, v)).count())
        .collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

/// Pentagons with exactly three consecutive bullets, with the position of
/// the middle one.
pub fn trios(t: &TilingComplex) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for f in 0..t.face_count() {
        if t.faces()[f].kind != MGon {
            continue;
        }
        let vs = t.face_vertices(f);
        let b: Vec<bool> = vs.iter().map(|&v| is_bullet(t, v)).collect();
        if b.iter().filter(|&&x| x).count() != 3 {
            continue;
        }
        let n = vs.len();
        if let Some(i) = (0..n).find(|&i| b[(i + n - 1) % n] && b[i] && b[(i + 1) % n]) {
            out.push((f, i));
        }
    }
    out
}

/// Fewest rhombi on a path that starts at the middle bullet of one trio and
/// ends at the rhombus across the edge opposite the middle bullet of another
/// trio, stepping between rhombi across shared edges. `None` without two
/// trios.
pub fn trio_path_length(t: &TilingComplex) -> Option<usize> {
    let trios = trios(t);
    let mut best: Option<usize> = None;
    for &(f1, i1) in &trios {
        let start = t.face_vertices(f1)[i1];
        let mut dist = vec![usize::MAX; t.face_count()];
        let mut queue = std::collections::VecDeque::new();
        for h in t.outgoing(start) {
            let f = t.half_edge(h).face;
            if t.faces()[f].kind == Rhombus {
                dist[f] = 1;
                queue.push_back(f);
            }
        }
        while let Some(f) = queue.pop_front() {
            for h in t.face_half_edges(f) {
                let g = t.half_edge(t.half_edge(h).twin).face;
                if t.faces()[g].kind == Rhombus && dist[g] == usize::MAX {
                    dist[g] = dist[f] + 1;
                    queue.push_back(g);
                }
            }
        }
        for &(f2, i2) in &trios {
            if f2 == f1 {
                continue;
            }
            let hs: Vec<usize> = t.face_half_edges(f2).collect();
            let n = hs.len();
            let opposite = hs[(i2 + n / 2) % n];
            let across = t.half_edge(t.half_edge(opposite).twin).face;
            let d = dist[across];
            if d != usize::MAX {
                best = Some(best.map_or(d, |b| b.min(d)));
            }
        }
    }
    best
}

static FUSION_CLASSES: OnceLock<Result<FusionClasses, GeneratorError>> = OnceLock::new();

/// Fuses along every perfect matching and groups the results up to
/// isomorphism. Variant 1 is the class whose bullet distribution differs
/// from the other two; the remaining classes follow by decreasing
/// [`trio_path_length`]. Computed once.
pub fn fusion_classes() -> Result<&'static FusionClasses, GeneratorError> {
    FUSION_CLASSES.get_or_init(compute_fusion_classes).as_ref().map_err(Clone::clone)
}

fn compute_fusion_classes() -> Result<FusionClasses, GeneratorError> {
    let base = snub_dodecahedron()?;
    let matchings = dodecahedron_matchings();
    let mut codes: Vec<CanonicalCode> = Vec::new();
    let mut class_of = Vec::with_capacity(matchings.len());
    let mut firsts: Vec<usize> = Vec::new();
    for (i, mt) in matchings.iter().enumerate() {
        let code = canonical_code(&triangular_fusion(&base, mt)?);
        let k = match codes.iter().position(|c| *c == code) {
            Some(k) => k,
            None => {
                codes.push(code);
                firsts.push(i);
                codes.len() - 1
            }
        };
        class_of.push(k);
    }

    // sort key: (distribution shared with another class, −trio path length)
    let stats: Vec<(Vec<usize>, Option<usize>)> = firsts
        .iter()
        .map(|&i| {
            let t = triangular_fusion(&base, &matchings[i])?;
            Ok((bullet_distribution(&t), trio_path_length(&t)))
        })
        .collect::<Result<_, GeneratorError>>()?;
    let mut order: Vec<usize> = (0..codes.len()).collect();
    order.sort_by_key(|&k| {
        let shared = stats.iter().enumerate().any(|(j, s)| j != k && s.0 == stats[k].0);
        (shared, std::cmp::Reverse(stats[k].1), firsts[k])
    });
    log::debug!("fusion class stats: {stats:?}, order {order:?}");

    let mut variant_of_class = vec![0u32; codes.len()];
    for (pos, &k) in order.iter().enumerate() {
        variant_of_class[k] = pos as u32 + 1;
    }
    Ok(FusionClasses {
        variant_of: class_of.iter().map(|&k| variant_of_class[k]).collect(),
        representatives: order.iter().map(|&k| firsts[k]).collect(),
        codes: order.iter().map(|&k| codes[k].clone()).collect(),
        matchings,
    })
}

/// Representative of fusion class `variant` (1, 2 or 3).
pub fn snub_fusion(variant: u32) -> Result<TilingComplex, GeneratorError> {
    let classes = fusion_classes()?;
    let idx = variant
        .checked_sub(1)
        .and_then(|v| classes.representatives.get(v as usize))
        .ok_or_else(|| GeneratorError::Parameter(format!("snub fusion variant must be 1..={}, got {variant}", classes.representatives.len())))?;
    triangular_fusion(&snub_dodecahedron()?, &classes.matchings[*idx])
}

/// Truncated icosahedron with every hexagon cut into three rhombi at its
/// centre. Vertex `5F + i` sits on edge `i` of dodecahedron face `F`;
/// vertex `60 + u` is the centre of the hexagon at dodecahedron vertex `u`.
pub fn football() -> Result<TilingComplex, GeneratorError> {
    let mut specs: Vec<FaceSpec> = (0..12).map(|f| mgon((0..5).map(|i| 5 * f + i).collect())).collect();
    // edge i of face F runs from corner i to corner i+1
    let vertex = |f: usize, a: usize, b: usize| -> usize {
        let face = DODECAHEDRON_FACES[f];
        let i = (0..5)
            .find(|&i| {
                let (x, y) = (face[i], face[(i + 1) % 5]);
                (x, y) == (a, b) || (x, y) == (b, a)
            })
            .expect("edge lies on face");
        5 * f + i
    };
    let leaves = |f: usize, u: usize, w: usize| -> bool {
        let face = DODECAHEDRON_FACES[f];
        (0..5).any(|i| face[i] == u && face[(i + 1) % 5] == w)
    };
    let edges = dodecahedron_edges();
    for u in 0..20 {
        let nbrs: Vec<usize> = edges.iter().filter_map(|&(a, b)| if a == u { Some(b) } else if b == u { Some(a) } else { None }).collect();
        // walk the hexagon: faces around u alternate with edges at u
        let mut hex: Vec<(usize, usize)> = Vec::with_capacity(6);
        let mut w = nbrs[0];
        for _ in 0..3 {
            let f = face_with_directed(u, w);
            let face = DODECAHEDRON_FACES[f];
            let i = face.iter().position(|&x| x == u).unwrap();
            let prev = face[(i + 4) % 5];
            hex.push((f, w));
            hex.push((f, prev));
            w = prev;
        }
        let ids: Vec<usize> = hex.iter().map(|&(f, w)| vertex(f, u, w)).collect();
        let start = (0..6).find(|&i| leaves(hex[i].0, u, hex[i].1)).expect("hexagon has spokes");
        let centre = 60 + u;
        for k in 0..3 {
            let i = start + 2 * k;
            specs.push(rhombus([centre, ids[i % 6], ids[(i + 1) % 6], ids[(i + 2) % 6]], [Beta, Gamma, Beta, Gamma]));
        }
    }
    finish(5, 80, specs)
}

/// Serializable reference to a generator call.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GeneratorHandle {
    Prism { m: u32 },
    EarthMap { c: u32 },
    SnubFusion { variant: u32 },
    Football,
}

impl GeneratorHandle {
    pub fn build(&self) -> Result<TilingComplex, GeneratorError> {
        match *self {
            GeneratorHandle::Prism { m } => prism(m),
            GeneratorHandle::EarthMap { c } => earth_map(c),
            GeneratorHandle::SnubFusion { variant } => snub_fusion(variant),
            GeneratorHandle::Football => football(),
        }
    }
}

impl std::fmt::Display for GeneratorHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GeneratorHandle::Prism { m } => write!(f, "prism(m={m})"),
            GeneratorHandle::EarthMap { c } => write!(f, "earth_map(c={c})"),
            GeneratorHandle::SnubFusion { variant } => write!(f, "snub_fusion({variant})"),
            GeneratorHandle::Football => f.write_str("football()"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::VertexType;

    #[test]
    fn prism_counts() {
        let t = prism(5).unwrap();
        assert_eq!((t.vertex_count(), t.edge_count(), t.face_count()), (10, 15, 7));
        assert_eq!(t.vertex_census(), BTreeMap::from([(VertexType::new(1, 1, 1), 10)]));
        assert!(prism(3).is_ok());
        assert!(prism(2).is_err());
    }

    #[test]
    fn dodecahedron_is_valid() {
        let d = dodecahedron().unwrap();
        assert_eq!((d.vertex_count(), d.edge_count(), d.face_count()), (20, 30, 12));
        assert_eq!(dodecahedron_edges().len(), 30);
    }

    #[test]
    fn snub_counts() {
        let s = snub_dodecahedron().unwrap();
        let t = &s.complex;
        assert_eq!((t.vertex_count(), t.edge_count(), t.face_count()), (60, 150, 92));
        assert!((0..60).all(|v| t.degree(v) == 5));
        assert_eq!(t.count_faces(FaceKind::Triangle), 80);
    }

    #[test]
    fn earth_map_small() {
        let t = earth_map(2).unwrap();
        assert_eq!((t.vertex_count(), t.edge_count(), t.face_count()), (20, 35, 17));
        let census = t.vertex_census();
        assert_eq!(census[&VertexType::new(1, 1, 2)], 10);
        assert_eq!(census[&VertexType::new(0, 2, 1)], 10);
        assert!(earth_map(1).is_err());
    }

    #[test]
    fn football_counts() {
        let t = football().unwrap();
        assert_eq!((t.vertex_count(), t.edge_count(), t.face_count()), (80, 150, 72));
        assert_eq!(
            t.vertex_census(),
            BTreeMap::from([(VertexType::new(0, 3, 0), 20), (VertexType::new(1, 1, 2), 60)])
        );
    }

    #[test]
    fn fusion_rejects_non_matching() {
        let base = snub_dodecahedron().unwrap();
        let bad = Matching { edges: vec![(0, 1)] };
        assert!(matches!(triangular_fusion(&base, &bad), Err(GeneratorError::NotAMatching(_))));
    }
}
