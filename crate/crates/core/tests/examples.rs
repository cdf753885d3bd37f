use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use dihedral_tiling::combinatorics::{
    counting_filter, enumerate_avc, enumerate_degree3, requires_adjacency_pair, vertex_angle_sum, Avc, VertexType,
};
use dihedral_tiling::complex::{isomorphic, verify_combinatorial, BuildError, FaceKind, Label, TilingComplex};
use dihedral_tiling::format::{to_obj, to_svg, TilingFile};
use dihedral_tiling::generators::{self, earth_map, football, prism, snub_fusion};
use dihedral_tiling::realization::{self, RealizationError, SporadicKind};
use dihedral_tiling::trig::{self, Angle, AngleSolution, SignSummary};

fn v(a: u32, b: u32, c: u32) -> VertexType {
    VertexType::new(a, b, c)
}

fn pi(k: f64) -> Angle {
    Angle::from_pi(k).unwrap()
}

fn set(vs: &[VertexType]) -> Vec<VertexType> {
    let mut vs = vs.to_vec();
    vs.sort();
    vs
}

// trig

#[test]
fn rhombus_edge_cos_examples() {
    assert_abs_diff_eq!(trig::rhombus_edge_cos(pi(0.5), pi(0.5)).unwrap(), 1.0, epsilon = 1e-12);
    // adjacent cube vertices (±1, ±1, ±1)/√3
    let cube = (1.0 + 1.0 - 1.0) / 3.0;
    assert_abs_diff_eq!(trig::rhombus_edge_cos(pi(2.0 / 3.0), pi(2.0 / 3.0)).unwrap(), cube, epsilon = 1e-12);
    let c = trig::rhombus_edge_cos(pi(0.68737), pi(0.34369)).unwrap();
    assert_abs_diff_eq!(c, (0.14901 * PI).cos(), epsilon = 5e-4);
}

#[test]
fn mgon_edge_cos_examples() {
    assert_abs_diff_eq!(trig::mgon_edge_cos(5, pi(2.0 / 3.0)).unwrap(), 5f64.sqrt() / 3.0, epsilon = 1e-12);
    assert_abs_diff_eq!(trig::mgon_edge_cos(5, pi(0.61881)).unwrap(), (0.12943 * PI).cos(), epsilon = 5e-4);
    assert!(trig::mgon_edge_cos(5, pi(0.59)).is_err());
}

#[test]
fn closure_residual_examples() {
    let r = |a, b, g| trig::closure_residual(5, pi(a), pi(b), pi(g)).unwrap();
    assert_abs_diff_eq!(r(0.61881, 2.0 / 3.0, 0.35726), 0.0, epsilon = 1e-4);
    assert_abs_diff_eq!(r(0.62526, 0.68737, 0.34369), 0.0, epsilon = 1e-4);
    assert_abs_diff_eq!(r(2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0), 5f64.sqrt() / 3.0 - 1.0 / 3.0, epsilon = 1e-12);
}

#[test]
fn solve_closure_examples() {
    let football = trig::solve_closure(5, &[v(0, 3, 0), v(1, 1, 2)], None).unwrap();
    assert_eq!(football.len(), 1);
    assert_abs_diff_eq!(football[0].alpha.in_pi(), 0.61881, epsilon = 5e-5);
    assert_abs_diff_eq!(football[0].beta.in_pi(), 2.0 / 3.0, epsilon = 1e-12);
    assert_abs_diff_eq!(football[0].gamma.in_pi(), 0.35726, epsilon = 5e-5);

    assert!(trig::solve_closure(5, &[v(1, 2, 0), v(2, 0, 3)], None).unwrap().is_empty());

    let sols = trig::solve_closure(5, &[v(1, 2, 0), v(2, 0, 2)], None).unwrap();
    assert_eq!(sols.len(), 1);
    assert_abs_diff_eq!(sols[0].alpha.in_pi(), 0.63636, epsilon = 5e-5);
    assert_abs_diff_eq!(sols[0].beta.in_pi(), 0.68182, epsilon = 5e-5);
    assert_abs_diff_eq!(sols[0].gamma.in_pi(), 0.36364, epsilon = 5e-5);
}

#[test]
fn certify_examples() {
    let e = trig::certify_no_root(5, &[v(3, 0, 0), v(0, 2, 1)], trig::AngleKind::Gamma, (0.0, PI)).unwrap();
    assert!(matches!(e.sign_summary, SignSummary::ConstantSign { .. }));
    assert!(1.0 - (2.0 / 3.0) * (4.0 * (0.4 * PI).cos() + 1.0) < 0.0);
    let first = e.samples[0].value.signum();
    assert!(e.samples.iter().all(|s| s.value.signum() == first));

    let e = trig::certify_no_root(5, &[v(2, 1, 0), v(0, 2, 1)], trig::AngleKind::Alpha, (0.0, PI)).unwrap();
    assert!(matches!(e.sign_summary, SignSummary::ConstantSign { .. }));

    let e = trig::certify_no_root(6, &[v(0, 2, 1)], trig::AngleKind::Gamma, (0.0, PI)).unwrap();
    assert!(matches!(e.sign_summary, SignSummary::InequalityViolated { .. }));
}

// combinatorics

#[test]
fn vertex_angle_sum_examples() {
    let s = realization::prism_solution(5, 0.45 * PI).unwrap();
    assert_abs_diff_eq!(vertex_angle_sum(v(1, 1, 1), &s), 2.0 * PI, epsilon = 1e-9);
    let f = realization::sporadic_solution(SporadicKind::Football).unwrap();
    assert_abs_diff_eq!(vertex_angle_sum(v(0, 3, 0), &f), 2.0 * PI, epsilon = 1e-12);
    let snub = realization::sporadic_solution(SporadicKind::SnubFusion).unwrap();
    assert_abs_diff_eq!(vertex_angle_sum(v(1, 1, 2), &snub), 2.0 * PI, epsilon = 1e-9);
}

#[test]
fn degree3_examples() {
    let five = set(&[v(3, 0, 0), v(2, 0, 1), v(0, 3, 0), v(2, 1, 0), v(1, 2, 0), v(0, 2, 1), v(1, 1, 1)]);
    assert_eq!(set(&enumerate_degree3(5).unwrap()), five);
    let six = set(&[v(2, 0, 1), v(0, 2, 1), v(1, 1, 1)]);
    assert_eq!(set(&enumerate_degree3(6).unwrap()), six);
    assert_eq!(set(&enumerate_degree3(20).unwrap()), six);
    assert!(enumerate_degree3(4).is_err());
}

#[test]
fn avc_examples() {
    let f = realization::sporadic_solution(SporadicKind::Football).unwrap();
    let avc: Vec<_> = enumerate_avc(&f, 1e-6, 16).unwrap().vertices().collect();
    assert_eq!(avc, set(&[v(0, 3, 0), v(1, 1, 2)]));

    let snub = realization::sporadic_solution(SporadicKind::SnubFusion).unwrap();
    let avc = enumerate_avc(&snub, 1e-6, 16).unwrap();
    assert!(avc.contains(v(1, 2, 0)) && avc.contains(v(1, 1, 2)) && avc.contains(v(1, 0, 4)));

    let p = realization::prism_solution(6, 0.45 * PI).unwrap();
    assert!(enumerate_avc(&p, 1e-6, 16).unwrap().contains(v(1, 1, 1)));
}

#[test]
fn counting_filter_examples() {
    let kept = |vs: &[VertexType]| counting_filter(&Avc::from_vertices(vs.iter().copied())).vertices().collect::<Vec<_>>();
    assert_eq!(kept(&[v(0, 1, 2), v(1, 1, 1)]), vec![v(1, 1, 1)]);
    assert_eq!(kept(&[v(1, 1, 1)]), vec![v(1, 1, 1)]);
    assert_eq!(kept(&[v(0, 2, 1), v(1, 1, 2)]), set(&[v(0, 2, 1), v(1, 1, 2)]));
}

#[test]
fn adjacency_pair_examples() {
    let avc = |vs: &[VertexType]| Avc::from_vertices(vs.iter().copied());
    assert!(requires_adjacency_pair(&avc(&[v(1, 1, 1)])));
    assert!(requires_adjacency_pair(&avc(&[v(0, 3, 0), v(1, 1, 2)])));
    assert!(!requires_adjacency_pair(&avc(&[v(0, 3, 0), v(0, 2, 1)])));
}

// complex

#[test]
fn build_examples() {
    let t = prism(5).unwrap();
    assert_eq!((t.vertex_count(), t.edge_count(), t.face_count(), t.euler_characteristic()), (10, 15, 7, 2));
    let specs = t.to_face_specs();
    assert!(matches!(TilingComplex::build(5, 10, &specs[1..]), Err(BuildError::NotSphere(_))));
    let mut bad = specs.clone();
    let r = bad.iter().position(|f| f.kind == FaceKind::Rhombus).unwrap();
    bad[r].labels = vec![Label::Beta, Label::Beta, Label::Gamma, Label::Gamma];
    assert!(matches!(TilingComplex::build(5, 10, &bad), Err(BuildError::BadLabels { .. })));
}

#[test]
fn verify_combinatorial_examples() {
    for m in [3, 5, 9] {
        let s = realization::prism_solution(m, realization::prism_radius_midpoint(m)).unwrap();
        let r = verify_combinatorial(&prism(m).unwrap(), &s, 1e-9);
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.census, vec![(v(1, 1, 1), 2 * m as usize)]);
    }

    // #α: 60 = n₂; #β: 120 = 3n₁ + n₂; #γ: 120 = 2n₂
    let n2 = 60;
    let n1 = (120 - n2) / 3;
    assert_eq!(2 * n2, 120);
    let s = realization::sporadic_solution(SporadicKind::Football).unwrap();
    let t = football().unwrap();
    let r = verify_combinatorial(&t, &s, 1e-9);
    assert!(r.passed());
    assert_eq!(r.census_map().into_iter().collect::<Vec<_>>(), vec![(v(0, 3, 0), n1), (v(1, 1, 2), n2)]);

    let bent = AngleSolution::from_parts_unchecked(5, s.alpha.radians() + 1e-3, s.beta.radians(), s.gamma.radians(), s.cos_x);
    let r = verify_combinatorial(&t, &bent, 1e-9);
    let alpha_vertices = (0..t.vertex_count()).filter(|&x| t.vertex_type(x).a > 0).count();
    assert_eq!(r.failures.iter().filter(|f| f.contains("sums to")).count(), alpha_vertices);
}

#[test]
fn isomorphism_examples() {
    let snubs: Vec<_> = (1..=3).map(|k| snub_fusion(k).unwrap()).collect();
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(isomorphic(&snubs[i], &snubs[j]), i == j);
        }
    }
    assert!(!isomorphic(&prism(5).unwrap(), &earth_map(2).unwrap()));
}

// generators

#[test]
fn prism_examples() {
    assert_eq!(prism(5).unwrap().face_count(), 7);
    let six = prism(6).unwrap();
    assert_eq!(six.face_count(), 8);
    assert_eq!(six.vertex_census().get(&v(1, 1, 1)), Some(&12));
    assert_eq!(prism(3).unwrap().face_count(), 5);
    assert!(prism(2).is_err());
}

#[test]
fn earth_map_examples() {
    // #α: 10 = n₂; #β: 2R = 2n₁ + n₂; #γ: 2R = n₁ + c·n₂
    for c in [2u32, 3] {
        let n2 = 10;
        let n1 = (c as usize - 1) * n2;
        let r = (2 * n1 + n2) / 2;
        let t = earth_map(c).unwrap();
        assert_eq!(t.count_faces(FaceKind::Rhombus), r);
        assert_eq!(t.count_faces(FaceKind::Rhombus), 5 * (2 * c as usize - 1));
        assert_eq!(t.vertex_census().into_iter().collect::<Vec<_>>(), vec![(v(0, 2, 1), n1), (v(1, 1, c), n2)]);
        if c == 2 {
            assert_eq!((t.vertex_count(), t.edge_count(), t.face_count()), (20, 35, 17));
        }
    }
    assert!(earth_map(1).is_err());
}

#[test]
fn snub_examples() {
    let s = generators::snub_dodecahedron().unwrap();
    let t = &s.complex;
    assert_eq!((t.face_count(), t.vertex_count(), t.edge_count()), (92, 60, 150));
    assert!((0..60).all(|x| t.degree(x) == 5));
    assert_eq!(t.count_faces(FaceKind::MGon), 12);

    let ms = generators::dodecahedron_matchings();
    assert!(ms.iter().all(|m| m.edges.len() == 10 && m.is_perfect()));
    for k in 1..=3 {
        let f = snub_fusion(k).unwrap();
        assert_eq!(f.face_count(), 52);
        let census = f.vertex_census();
        assert_eq!(census.keys().copied().collect::<Vec<_>>(), vec![v(1, 1, 2), v(1, 2, 0)]);
    }
    assert!(snub_fusion(4).is_err());
}

#[test]
fn football_examples() {
    let t = football().unwrap();
    assert_eq!(t.face_count(), 72);
    assert_eq!(t.vertex_census().into_iter().collect::<Vec<_>>(), vec![(v(0, 3, 0), 20), (v(1, 1, 2), 60)]);
}

// realization

#[test]
fn earth_map_gamma_examples() {
    assert_abs_diff_eq!(realization::earth_map_c(0.4 * PI), 1.0, epsilon = 1e-12);
    let g2 = realization::earth_map_gamma(2).unwrap();
    assert_abs_diff_eq!(g2 / PI, 0.152, epsilon = 5e-4);
    let s = realization::earth_map_solution(2).unwrap();
    assert!(s.residual().abs() < 1e-10);
    let cos_x = 0.5 * (1.0 - (g2 / 4.0).tan().powi(2));
    assert_abs_diff_eq!(cos_x, trig::rhombus_edge_cos_raw(s.beta.radians(), s.gamma.radians()), epsilon = 1e-10);
}

#[test]
fn prism_params_examples() {
    let p = realization::prism_params(5, 0.45 * PI).unwrap();
    let cot = 1.0 / (0.45 * PI).tan();
    assert_abs_diff_eq!(p.xi1.cos(), 2.0 * cot * cot + (0.4 * PI).cos(), epsilon = 1e-12);
    assert!(p.xi1 > 0.0 && p.xi1 < 0.4 * PI);
    let (lo, hi) = realization::prism_radius_bounds(5);
    assert!(realization::prism_params(5, lo + 1e-9).unwrap().xi1 < 1e-3);
    assert!((realization::prism_params(5, hi - 1e-9).unwrap().xi1 - 0.4 * PI).abs() < 1e-6);
}

#[test]
fn embed_prism_examples() {
    let lengths = |m, r| {
        let (t, e) = realization::embed_prism(m, r).unwrap();
        t.edges().iter().map(|&(a, b)| realization::arc(e.positions[a], e.positions[b])).collect::<Vec<f64>>()
    };
    let a = lengths(5, 0.45 * PI);
    assert_eq!(a.len(), 15);
    assert!(a.iter().all(|x| (x - a[0]).abs() < 1e-10));
    let b = lengths(5, 0.40 * PI);
    assert!((a[0] - b[0]).abs() > 1e-3);
    for r in [0.40 * PI, 0.45 * PI] {
        let (t, e) = realization::embed_prism(5, r).unwrap();
        let s = realization::prism_solution(5, r).unwrap();
        assert!(realization::verify_geometric(&t, &e, &s, 1e-8).passed());
    }
    let c = lengths(3, 0.42 * PI);
    assert!(c.iter().all(|x| (x - c[0]).abs() < 1e-10));
}

#[test]
fn sporadic_examples() {
    let f = realization::sporadic_solution(SporadicKind::Football).unwrap();
    assert_abs_diff_eq!(f.edge_length() / PI, 0.12943, epsilon = 5e-5);
    let s = realization::sporadic_solution(SporadicKind::SnubFusion).unwrap();
    assert_abs_diff_eq!(s.alpha.in_pi(), 0.62526, epsilon = 5e-5);
    assert_abs_diff_eq!(s.beta.in_pi(), 0.68737, epsilon = 5e-5);
    assert_abs_diff_eq!(s.gamma.in_pi(), 0.34369, epsilon = 5e-5);
    assert_abs_diff_eq!(s.edge_length() / PI, 0.14901, epsilon = 5e-5);
    assert_abs_diff_eq!(s.beta.radians(), 2.0 * s.gamma.radians(), epsilon = 1e-9);
}

#[test]
fn embed_generic_rejects_perturbed_angles() {
    let s = realization::prism_solution(5, 0.45 * PI).unwrap();
    let bent = AngleSolution::from_parts_unchecked(5, s.alpha.radians(), s.beta.radians(), s.gamma.radians() + 1e-3, s.cos_x);
    let err = realization::embed_generic(&prism(5).unwrap(), &bent).unwrap_err();
    assert!(matches!(err, RealizationError::ClosureDefect { .. }), "{err}");
}

#[test]
fn geometric_examples() {
    let s = realization::sporadic_solution(SporadicKind::Football).unwrap();
    let t = football().unwrap();
    let e = realization::embed_generic(&t, &s).unwrap();
    let r = realization::verify_geometric(&t, &e, &s, 1e-8);
    assert_abs_diff_eq!(r.area_measured, 4.0 * PI, epsilon = 1e-6);
    assert_abs_diff_eq!(r.area_from_labels, 4.0 * PI, epsilon = 1e-6);

    // 10(α + β + γ) − 16π for a pentagonal prism
    let p = realization::prism_solution(5, 0.45 * PI).unwrap();
    let [a, b, g] = p.angles();
    assert_abs_diff_eq!(10.0 * (a + b + g) - 16.0 * PI, 4.0 * PI, epsilon = 1e-9);

    for c in [2, 10] {
        let (t, e) = realization::embed_earth_map(c).unwrap();
        let s = realization::earth_map_solution(c).unwrap();
        let r = realization::verify_geometric(&t, &e, &s, 1e-8);
        assert!(r.passed() && e.closure_defect < 1e-7, "{:?}", r.failures);
    }
}

// format

#[test]
fn file_round_trip_with_coordinates() {
    let s = realization::sporadic_solution(SporadicKind::SnubFusion).unwrap();
    let t = snub_fusion(2).unwrap();
    let e = realization::embed_generic(&t, &s).unwrap();
    let json = TilingFile::from_complex(&t, Some(&e), Some(&s)).unwrap().to_json();
    let back = TilingFile::from_json(&json).unwrap();
    assert!(isomorphic(&back.complex().unwrap(), &t));
    let s2 = back.solution().unwrap().unwrap();
    assert_eq!(s2.alpha.radians().to_bits(), s.alpha.radians().to_bits());
    let e2 = back.embedding().unwrap().unwrap();
    assert_eq!(e2.positions, e.positions);
    assert_eq!(TilingFile::from_complex(&t, Some(&e), Some(&s)).unwrap().to_json(), json);
}

#[test]
fn exports() {
    let s = realization::sporadic_solution(SporadicKind::Football).unwrap();
    let t = football().unwrap();
    let e = realization::embed_generic(&t, &s).unwrap();
    let obj = to_obj(&t, &e);
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 72);
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), t.vertex_count());
    let svg = to_svg(&t, &e);
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    // a face around the projection pole cannot be drawn bounded
    let paths = svg.matches("<path").count();
    assert!(paths == 71 || paths == 72, "{paths}");
}
