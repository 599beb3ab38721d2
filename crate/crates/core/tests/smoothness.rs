use std::sync::Arc;

use symfan::classify::{candidate_colored_cones, data_for_type, Strategy};
use symfan::colored::{ColorId, ColoredCone, SphericalDatum};
use symfan::exactlin::{frac, rat, RationalVector};
use symfan::rootsys::RootSystem;
use symfan::symmcheck::{is_smooth_checked, Condition, SmoothError, SmoothnessReport};

fn system(s: &str) -> Arc<RootSystem> {
    Arc::new(RootSystem::build(&s.parse().unwrap()).unwrap())
}

fn coweight(rs: &RootSystem, c: &[i64]) -> RationalVector {
    c.iter()
        .zip(rs.fundamental_coweights())
        .fold(RationalVector::zeros(rs.rank()), |acc, (&x, w)| acc.axpy(&rat(-x), w))
}

fn candidates(types: &[&str], bound: usize) -> Vec<(SphericalDatum, ColoredCone)> {
    let mut out = Vec::new();
    for t in types {
        for dv in data_for_type(&t.parse().unwrap()).unwrap() {
            for cc in candidate_colored_cones(&dv.datum, bound, Strategy::Exhaustive) {
                out.push((dv.datum.clone(), cc));
            }
        }
    }
    out
}

/// The invariant ray of a simple cone built from colors and one vector.
fn invariant_ray(d: &SphericalDatum, cc: &ColoredCone) -> RationalVector {
    let rhos: Vec<RationalVector> = cc.colors.iter().map(|c| d.rho(*c).clone()).collect();
    cc.cone
        .rays()
        .into_iter()
        .find(|r| !rhos.iter().any(|x| d.primitive(x) == d.primitive(r)))
        .expect("invariant ray")
}

fn cartan_identities(rs: &RootSystem, report: &SmoothnessReport) {
    for g in report.indexing.as_ref().expect("indexing") {
        let n = g.path.len();
        assert_eq!(g.lambdas.len(), if n == 0 { 1 } else { n + 1 });
        for (i, &a) in g.path.iter().enumerate() {
            let zero = RationalVector::zeros(rs.rank());
            let prev = if i == 0 { &zero } else { &g.lambdas[i - 1] };
            let rhs = g.lambdas[i].scale(&rat(2)).axpy(&rat(-1), prev).axpy(&rat(-1), &g.lambdas[i + 1]);
            assert_eq!(rs.simple_root(a), &rhs, "root {a} in {:?}", g.path);
        }
    }
}

#[test]
fn engines_agree_and_smooth_cones_satisfy_the_cartan_identities() {
    let all = candidates(&["A1", "A2", "A3", "B2", "B3", "C3", "BC1", "BC2", "BC3", "G2", "A1xA1"], 3);
    assert!(all.len() > 300, "{}", all.len());
    let mut smooth = 0;
    for (d, cc) in &all {
        let r = is_smooth_checked(d, cc).unwrap_or_else(|e| panic!("{cc}: {e}"));
        if r.smooth {
            smooth += 1;
            assert!(r.failed.is_none());
            cartan_identities(d.system(), &r);
        } else {
            assert!(r.failed.is_some() && r.indexing.is_none());
        }
    }
    assert!(smooth > 0);
}

#[test]
fn verdict_is_invariant_under_rescaling_the_invariant_ray() {
    for (d, cc) in candidates(&["A2", "B2", "C3", "G2", "BC2"], 3) {
        let v = invariant_ray(&d, &cc);
        let colors: Vec<ColorId> = cc.colors.iter().copied().collect();
        let base = is_smooth_checked(&d, &cc).unwrap();
        for k in [frac(2, 1), frac(7, 3), frac(1, 5)] {
            let scaled = v.scale(&k);
            let again = ColoredCone::from_colors_and_vectors(&d, &colors, &[d.primitive(&scaled).unwrap()]);
            assert_eq!(again, cc);
            let raw = ColoredCone::from_colors_and_vectors(&d, &colors, &[scaled]);
            assert_eq!(is_smooth_checked(&d, &raw).unwrap(), base, "{cc}");
        }
    }
}

#[test]
fn b2_grid_only_accepts_the_first_coweight() {
    let rs = system("B2");
    for (chi, root) in [(rs.root_lattice(), true), (rs.weight_lattice(), false)] {
        let d = SphericalDatum::plain(rs.clone(), chi).unwrap();
        for a in 0..=5i64 {
            for b in 0..=5i64 {
                if a == 0 && b == 0 {
                    continue;
                }
                let Some(v) = d.primitive(&coweight(&rs, &[a, b])) else { continue };
                let cc = ColoredCone::from_colors_and_vectors(&d, &[ColorId::single(0)], &[v]);
                match is_smooth_checked(&d, &cc) {
                    Ok(r) => assert_eq!(r.smooth, root && b == 0, "({a}, {b}): {}", r.witness),
                    Err(SmoothError::InvalidCone(_)) => {}
                    Err(e) => panic!("({a}, {b}): {e}"),
                }
            }
        }
    }
}

#[test]
fn g2_cones_with_the_first_color_are_never_smooth() {
    let rs = system("G2");
    let d = SphericalDatum::plain(rs.clone(), rs.root_lattice()).unwrap();
    let mut seen = 0;
    for a in 0..=8i64 {
        for b in 0..=8i64 {
            let Some(v) = d.primitive(&coweight(&rs, &[a, b])) else { continue };
            let cc = ColoredCone::from_colors_and_vectors(&d, &[ColorId::single(0)], &[v]);
            if let Ok(r) = is_smooth_checked(&d, &cc) {
                seen += 1;
                assert!(!r.smooth, "({a}, {b})");
            }
        }
    }
    assert!(seen > 10);
}

#[test]
fn rank_one_without_colors_is_smooth() {
    for t in ["A1", "BC1"] {
        let rs = system(t);
        let d = SphericalDatum::plain(rs.clone(), rs.root_lattice()).unwrap();
        let v = d.primitive(&coweight(&rs, &[1])).unwrap();
        let cc = ColoredCone::from_colors_and_vectors(&d, &[], &[v]);
        let r = is_smooth_checked(&d, &cc).unwrap();
        assert!(r.smooth, "{t}");
        assert_eq!(r.accepted_indexings, 1);
    }
}

#[test]
fn lower_dimensional_cones_are_rejected() {
    let rs = system("A2");
    let d = SphericalDatum::plain(rs.clone(), rs.root_lattice()).unwrap();
    let v = d.primitive(&coweight(&rs, &[1, 1])).unwrap();
    let cc = ColoredCone::from_colors_and_vectors(&d, &[], &[v]);
    assert!(matches!(is_smooth_checked(&d, &cc), Err(SmoothError::ClosedOrbitNotProjective { .. })));
}

#[test]
fn d6_cone_with_the_fifth_coweight_is_rejected() {
    let rs = system("D6");
    let d = SphericalDatum::plain(rs.clone(), rs.root_lattice()).unwrap();
    let colors: Vec<ColorId> = (0..5).map(ColorId::single).collect();
    let v = d.primitive(&coweight(&rs, &[0, 0, 0, 0, 1, 0])).unwrap();
    let cc = ColoredCone::from_colors_and_vectors(&d, &colors, &[v]);
    let r = is_smooth_checked(&d, &cc).unwrap();
    assert!(!r.smooth);
    assert_ne!(r.failed, Some(Condition::Exceptional));
}
