#![allow(dead_code)]

use dihedral_tiling::complex::{FaceSpec, TilingComplex};
use dihedral_tiling::generators::{self, GeneratorHandle};
use rand::seq::SliceRandom;
use rand::Rng;

/// Same complex with vertex ids, face order and face starting corners
/// shuffled.
pub fn permuted(t: &TilingComplex, rng: &mut impl Rng) -> TilingComplex {
    let mut perm: Vec<usize> = (0..t.vertex_count()).collect();
    perm.shuffle(rng);
    let mut specs: Vec<FaceSpec> = t
        .to_face_specs()
        .into_iter()
        .map(|f| {
            let n = f.vertices.len();
            let r = rng.gen_range(0..n);
            let vertices = (0..n).map(|i| perm[f.vertices[(i + r) % n]]).collect();
            let labels = (0..n).map(|i| f.labels[(i + r) % n]).collect();
            FaceSpec::new(f.kind, vertices, labels)
        })
        .collect();
    specs.shuffle(rng);
    TilingComplex::build(t.m(), t.vertex_count(), &specs).expect("relabelled complex stays valid")
}

/// One of each generator family, at small parameters.
pub fn sample_handles() -> Vec<GeneratorHandle> {
    vec![
        GeneratorHandle::Prism { m: 3 },
        GeneratorHandle::Prism { m: 5 },
        GeneratorHandle::Prism { m: 12 },
        GeneratorHandle::EarthMap { c: 2 },
        GeneratorHandle::EarthMap { c: 5 },
        GeneratorHandle::SnubFusion { variant: 1 },
        GeneratorHandle::SnubFusion { variant: 2 },
        GeneratorHandle::SnubFusion { variant: 3 },
        GeneratorHandle::Football,
    ]
}

/// Perfect matchings of the dodecahedron by including or excluding each
/// edge in turn, independent of the library's vertex-driven search.
pub fn brute_force_matching_count() -> usize {
    let edges = generators::dodecahedron_edges();
    fn go(edges: &[(usize, usize)], i: usize, used: u32, taken: usize) -> usize {
        if taken == 10 {
            return usize::from(used == (1 << 20) - 1);
        }
        if i == edges.len() || edges.len() - i < 10 - taken {
            return 0;
        }
        let (a, b) = edges[i];
        let mut n = go(edges, i + 1, used, taken);
        if used & (1 << a) == 0 && used & (1 << b) == 0 {
            n += go(edges, i + 1, used | (1 << a) | (1 << b), taken + 1);
        }
        n
    }
    go(&edges, 0, 0, 0)
}
