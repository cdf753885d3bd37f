//! Tiling JSON, OBJ and SVG.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{BuildError, FaceKind, FaceSpec, Label, TilingComplex};
use crate::realization::{self, Embedding, Vec3};
use crate::trig::{AngleSolution, TrigError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed tiling JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("{0} faces cannot be written to tiling JSON")]
    Unsupported(&'static str),
    #[error("bad number {0:?}")]
    Number(String),
    #[error("{coordinates} coordinates for {vertices} vertices")]
    CoordinateCount { coordinates: usize, vertices: usize },
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Trig(#[from] TrigError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FileFaceKind {
    Mgon,
    Rhombus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FileLabel {
    Alpha,
    Beta,
    Gamma,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileFace {
    pub kind: FileFaceKind,
    pub vertices: Vec<usize>,
    pub labels: Vec<FileLabel>,
}

/// Angles and edge cosine as decimal strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileAngles {
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
    pub cos_x: String,
}

/// On-disk tiling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TilingFile {
    pub m: u32,
    pub vertices: usize,
    pub faces: Vec<FileFace>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<Vec<Vec3>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angles: Option<FileAngles>,
}

/// `x` with 17 significant digits in positional notation.
pub fn decimal17(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.16}");
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (16 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

fn parse_decimal(s: &str) -> Result<f64, FormatError> {
    s.trim().parse().map_err(|_| FormatError::Number(s.to_string()))
}

impl TilingFile {
    pub fn from_complex(
        t: &TilingComplex,
        embedding: Option<&Embedding>,
        solution: Option<&AngleSolution>,
    ) -> Result<Self, FormatError> {
        let faces = t
            .to_face_specs()
            .into_iter()
            .map(|f| {
                let kind = match f.kind {
                    FaceKind::MGon => FileFaceKind::Mgon,
                    FaceKind::Rhombus => FileFaceKind::Rhombus,
                    FaceKind::Triangle => return Err(FormatError::Unsupported("triangle")),
                };
                let labels = f
                    .labels
                    .iter()
                    .map(|l| match l {
                        Label::Alpha => Ok(FileLabel::Alpha),
                        Label::Beta => Ok(FileLabel::Beta),
                        Label::Gamma => Ok(FileLabel::Gamma),
                        Label::Delta => Err(FormatError::Unsupported("provisionally labelled")),
                    })
                    .collect::<Result<_, _>>()?;
                Ok(FileFace { kind, vertices: f.vertices, labels })
            })
            .collect::<Result<_, _>>()?;
        Ok(TilingFile {
            m: t.m(),
            vertices: t.vertex_count(),
            faces,
            coordinates: embedding.map(|e| e.positions.clone()),
            angles: solution.map(|s| FileAngles {
                alpha: decimal17(s.alpha.radians()),
                beta: decimal17(s.beta.radians()),
                gamma: decimal17(s.gamma.radians()),
                cos_x: decimal17(s.cos_x),
            }),
        })
    }

    pub fn face_specs(&self) -> Vec<FaceSpec> {
        self.faces
            .iter()
            .map(|f| {
                let kind = match f.kind {
                    FileFaceKind::Mgon => FaceKind::MGon,
                    FileFaceKind::Rhombus => FaceKind::Rhombus,
                };
                let labels = f
                    .labels
                    .iter()
                    .map(|l| match l {
                        FileLabel::Alpha => Label::Alpha,
                        FileLabel::Beta => Label::Beta,
                        FileLabel::Gamma => Label::Gamma,
                    })
                    .collect();
                FaceSpec::new(kind, f.vertices.clone(), labels)
            })
            .collect()
    }

    pub fn complex(&self) -> Result<TilingComplex, FormatError> {
        Ok(TilingComplex::build(self.m, self.vertices, &self.face_specs())?)
    }

    /// Angles as stored, without the closure check.
    pub fn raw_angles(&self) -> Result<Option<[f64; 4]>, FormatError> {
        self.angles
            .as_ref()
            .map(|a| Ok([parse_decimal(&a.alpha)?, parse_decimal(&a.beta)?, parse_decimal(&a.gamma)?, parse_decimal(&a.cos_x)?]))
            .transpose()
    }

    /// Stored angles as a checked solution.
    pub fn solution(&self) -> Result<Option<AngleSolution>, FormatError> {
        match self.raw_angles()? {
            Some([a, b, g, _]) => Ok(Some(AngleSolution::new(self.m, a, b, g)?)),
            None => Ok(None),
        }
    }

    pub fn embedding(&self) -> Result<Option<Embedding>, FormatError> {
        match &self.coordinates {
            Some(c) if c.len() != self.vertices => {
                Err(FormatError::CoordinateCount { coordinates: c.len(), vertices: self.vertices })
            }
            Some(c) => Ok(Some(Embedding::new(c.clone()))),
            None => Ok(None),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tiling files always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Wavefront OBJ with straight (chordal) edges.
pub fn to_obj(t: &TilingComplex, e: &Embedding) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {} vertices, {} faces; edges drawn as chords", t.vertex_count(), t.face_count());
    for p in &e.positions {
        let _ = writeln!(out, "v {} {} {}", p[0], p[1], p[2]);
    }
    for (kind, group) in [(FaceKind::MGon, "mgon"), (FaceKind::Rhombus, "rhombus")] {
        let faces = realization::faces_of_kind(t, kind);
        if faces.is_empty() {
            continue;
        }
        let _ = writeln!(out, "g {group}");
        for f in faces {
            let ids: Vec<String> = t.face_vertices(f).iter().map(|v| (v + 1).to_string()).collect();
            let _ = writeln!(out, "f {}", ids.join(" "));
        }
    }
    out
}

pub const SVG_SIZE: f64 = 1000.0;
/// Largest allowed distance between a drawn curve and the projected arc.
pub const SVG_MAX_DEVIATION: f64 = 1e-3;

struct Projection {
    scale: f64,
}

impl Projection {
    /// Stereographic from the south pole.
    fn raw(p: Vec3) -> [f64; 2] {
        let d = 1.0 + p[2];
        [p[0] / d, p[1] / d]
    }

    fn apply(&self, p: Vec3) -> [f64; 2] {
        let [x, y] = Self::raw(p);
        [0.5 * SVG_SIZE + self.scale * x, 0.5 * SVG_SIZE - self.scale * y]
    }
}

fn slerp(a: Vec3, b: Vec3, t: f64) -> Vec3 {
    let w = realization::arc(a, b);
    if w < 1e-15 {
        return a;
    }
    let (sa, sb) = (((1.0 - t) * w).sin() / w.sin(), (t * w).sin() / w.sin());
    realization::normalize([sa * a[0] + sb * b[0], sa * a[1] + sb * b[1], sa * a[2] + sb * b[2]])
}

fn bezier(p: [[f64; 2]; 4], t: f64) -> [f64; 2] {
    let u = 1.0 - t;
    let w = [u * u * u, 3.0 * u * u * t, 3.0 * u * t * t, t * t * t];
    [0, 1].map(|k| (0..4).map(|i| w[i] * p[i][k]).sum())
}

/// Cubic pieces approximating the projected arc from `a` to `b`.
fn arc_cubics(proj: &Projection, a: Vec3, b: Vec3) -> Vec<[[f64; 2]; 4]> {
    let curve = |t: f64| proj.apply(slerp(a, b, t));
    let deriv = |t: f64, span: f64| {
        let h = 1e-6 * span;
        let (p, q) = (curve(t - h), curve(t + h));
        [(q[0] - p[0]) / (2.0 * h), (q[1] - p[1]) / (2.0 * h)]
    };
    let mut pieces = 1usize;
    loop {
        let mut out = Vec::with_capacity(pieces);
        let mut worst: f64 = 0.0;
        for i in 0..pieces {
            let (t0, t1) = (i as f64 / pieces as f64, (i + 1) as f64 / pieces as f64);
            let span = t1 - t0;
            let (p0, p3) = (curve(t0), curve(t1));
            let (d0, d1) = (deriv(t0, span), deriv(t1, span));
            let c = [
                p0,
                [p0[0] + d0[0] * span / 3.0, p0[1] + d0[1] * span / 3.0],
                [p3[0] - d1[0] * span / 3.0, p3[1] - d1[1] * span / 3.0],
                p3,
            ];
            for k in 1..8 {
                let s = k as f64 / 8.0;
                let (q, r) = (bezier(c, s), curve(t0 + s * span));
                worst = worst.max(((q[0] - r[0]).powi(2) + (q[1] - r[1]).powi(2)).sqrt());
            }
            out.push(c);
        }
        if worst <= 0.5 * SVG_MAX_DEVIATION || pieces >= 4096 {
            return out;
        }
        pieces *= 2;
    }
}

/// Stereographic picture from the south pole, faces filled by kind. Faces
/// containing the projection centre are left out.
pub fn to_svg(t: &TilingComplex, e: &Embedding) -> String {
    let reach = e.positions.iter().map(|&p| {
        let [x, y] = Projection::raw(p);
        (x * x + y * y).sqrt()
    });
    let reach = reach.filter(|r| r.is_finite()).fold(0.0, f64::max).max(1e-9);
    let proj = Projection { scale: 0.45 * SVG_SIZE / reach };
    let pole = [0.0, 0.0, -1.0];

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SVG_SIZE} {SVG_SIZE}" width="{SVG_SIZE}" height="{SVG_SIZE}">"#
    );
    for f in 0..t.face_count() {
        let vs = t.face_vertices(f);
        let n = vs.len();
        let contains_pole = (0..n).all(|i| {
            let (a, b) = (e.positions[vs[i]], e.positions[vs[(i + 1) % n]]);
            realization::dot(a, realization::cross(b, pole)) > 0.0
        });
        if contains_pole {
            continue;
        }
        let fill = match t.faces()[f].kind {
            FaceKind::MGon => "#f2c14e",
            FaceKind::Rhombus => "#5b8fb9",
            FaceKind::Triangle => "#b0b0b0",
        };
        let start = proj.apply(e.positions[vs[0]]);
        let mut d = format!("M {:.4} {:.4}", start[0], start[1]);
        for i in 0..n {
            for c in arc_cubics(&proj, e.positions[vs[i]], e.positions[vs[(i + 1) % n]]) {
                let _ = write!(d, " C {:.4} {:.4} {:.4} {:.4} {:.4} {:.4}", c[1][0], c[1][1], c[2][0], c[2][1], c[3][0], c[3][1]);
            }
        }
        d.push_str(" Z");
        let _ = writeln!(out, r##"  <path d="{d}" fill="{fill}" stroke="#222" stroke-width="1"/>"##);
    }
    out.push_str("</svg>\n");
    out
}
