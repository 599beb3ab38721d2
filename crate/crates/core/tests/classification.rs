use std::collections::BTreeSet;

use symfan::classify::{
    catalog_for, enumerate_picard_one, reference_catalog, supported_types, verify_against_catalog, ClassifyOptions,
    Strategy,
};
use symfan::colored::{
    completeness, is_ample_two_orbit, is_complete, picard_rank, separating_color_coefficients, validate_colored_fan,
    ColorId, ColoredCone, ColoredFan, DivisorId, SphericalDatum,
};
use symfan::exactlin::{rat, RationalVector};
use symfan::rootsys::{RootSystem, TypeLabel};
use symfan::symmcheck::is_smooth;

fn ty(s: &str) -> TypeLabel {
    s.parse().unwrap()
}

fn keys(t: &TypeLabel, opts: &ClassifyOptions) -> BTreeSet<String> {
    enumerate_picard_one(t, opts).unwrap().iter().map(|e| format!("{:?}", e.orbit_key())).collect()
}

#[test]
fn pruned_and_exhaustive_searches_agree() {
    for t in supported_types(4).into_iter().filter(|t| t.rank() <= 4) {
        let bound = Some((t.rank() + 2).min(4));
        let pruned = keys(&t, &ClassifyOptions { bound, strategy: Strategy::Pruned });
        let full = keys(&t, &ClassifyOptions { bound, strategy: Strategy::Exhaustive });
        assert_eq!(pruned, full, "{t}");
    }
}

#[test]
fn doubling_the_bound_changes_nothing() {
    for t in supported_types(5).into_iter().filter(|t| t.rank() <= 5) {
        let b = t.rank() + 2;
        let base = keys(&t, &ClassifyOptions { bound: Some(b), strategy: Strategy::Pruned });
        let doubled = keys(&t, &ClassifyOptions { bound: Some(2 * b), strategy: Strategy::Pruned });
        assert_eq!(base, doubled, "{t}");
    }
}

#[test]
fn enumerated_entries_are_smooth_complete_and_picard_one() {
    for t in supported_types(5) {
        let found = enumerate_picard_one(&t, &ClassifyOptions::default()).unwrap();
        let mut lattices = BTreeSet::new();
        for e in &found {
            validate_colored_fan(&e.datum, &e.fan).unwrap();
            assert!(is_complete(&e.datum, &e.fan), "{e}");
            for cc in e.fan.maximal_cones() {
                assert!(is_smooth(&e.datum, cc).unwrap().smooth, "{e}");
            }
            assert_eq!(picard_rank(&e.datum, &e.fan), Ok(1), "{e}");
            let fibers: Vec<u8> = e.datum.fibers().to_vec();
            assert!(fibers.iter().all(|&f| f == 1), "{e}");
            assert!(lattices.insert(format!("{}", e.datum.chi())), "two entries over one lattice: {e}");
        }
    }
}

#[test]
fn small_types_match_the_catalog() {
    for t in ["A1", "A2", "A3", "B2", "B3", "C3", "BC2", "D4", "G2", "F4", "A1xA1"] {
        let r = verify_against_catalog(&ty(t), &ClassifyOptions::default()).unwrap();
        assert!(r.matches(), "{r}");
    }
}

#[test]
fn orbit_counts() {
    let opts = ClassifyOptions::default();
    let cases = [("A3", 3, 2), ("A4", 2, 1), ("B2", 2, 2), ("D4", 3, 1), ("F4", 0, 0), ("G2", 1, 1)];
    for (t, entries, orbits) in cases {
        let r = verify_against_catalog(&ty(t), &opts).unwrap();
        assert_eq!((r.catalog_entries, r.orbits), (entries, orbits), "{t}");
    }
}

#[test]
fn two_orbit_rows_are_projective() {
    let mut seen = 0;
    for e in reference_catalog(6).unwrap() {
        if e.fan.maximal_cones().len() != 2 {
            continue;
        }
        seen += 1;
        let coeffs = separating_color_coefficients(&e.datum, &e.fan);
        assert!(is_ample_two_orbit(&e.datum, &e.fan, &coeffs).unwrap(), "{e}");
        let report = symfan::colored::ample_report(&e.datum, &e.fan, &coeffs).unwrap();
        for (_, _, _, li, phi) in report.inequalities.iter().filter(|_| !e.supplementary) {
            assert_eq!((li.clone(), phi.clone()), (rat(-1), rat(1)), "{e}");
        }
        let zero: std::collections::BTreeMap<DivisorId, _> = coeffs.keys().map(|k| (*k, rat(0))).collect();
        assert!(!is_ample_two_orbit(&e.datum, &e.fan, &zero).unwrap());
    }
    assert!(seen >= 6, "{seen}");
}

#[test]
fn picard_rank_ignores_cone_order_and_color_slots() {
    for e in reference_catalog(5).unwrap() {
        let mut cones: Vec<ColoredCone> = e.fan.maximal_cones().to_vec();
        cones.reverse();
        let fan = ColoredFan::from_maximal(&e.datum, &cones);
        assert_eq!(picard_rank(&e.datum, &fan), picard_rank(&e.datum, &e.fan), "{e}");
    }
    let rs = std::sync::Arc::new(RootSystem::build(&ty("A1")).unwrap());
    let d = SphericalDatum::new(rs.clone(), rs.weight_lattice(), vec![2], BTreeSet::new(), true).unwrap();
    let v = d.primitive(&-&rs.fundamental_coweights()[0]).unwrap();
    let ranks: Vec<_> = [1u8, 2]
        .iter()
        .map(|&slot| {
            let colored = ColoredCone::from_colors_and_vectors(&d, &[ColorId::new(0, slot)], &[]);
            let plain = ColoredCone::from_colors_and_vectors(&d, &[], std::slice::from_ref(&v));
            let fan = ColoredFan::from_maximal(&d, &[colored, plain]);
            picard_rank(&d, &fan)
        })
        .collect();
    assert_eq!(ranks[0], ranks[1]);
}

#[test]
fn invariant_rays_of_catalog_rows() {
    for e in reference_catalog(5).unwrap() {
        let rays = e.fan.invariant_rays(&e.datum);
        assert_eq!(rays.len(), 1, "{e}");
        for r in rays {
            assert!(e.datum.in_valuation_cone(&r));
            assert_eq!(e.datum.chi_star().is_primitive(&r), Ok(true));
            let on_ray = |c: &ColoredCone| c.cone.rays().iter().any(|x| e.datum.primitive(x).as_ref() == Some(&r));
            assert!(e.fan.maximal_cones().iter().all(on_ray), "{e}");
        }
    }
}

#[test]
fn e6_levi_a5_cone_is_incomplete() {
    let rs = std::sync::Arc::new(RootSystem::build(&ty("E6")).unwrap());
    let d = SphericalDatum::plain(rs.clone(), rs.root_lattice()).unwrap();
    let colors: Vec<ColorId> = [0, 2, 3, 4, 5].into_iter().map(ColorId::single).collect();
    let v = d.primitive(&-&rs.fundamental_coweights()[5]).unwrap();
    let cc = ColoredCone::from_colors_and_vectors(&d, &colors, &[v]);
    let fan = ColoredFan::from_maximal(&d, std::slice::from_ref(&cc));
    assert!(!completeness(&d, &fan).is_covered());
    let w1: RationalVector = -&rs.fundamental_coweights()[0];
    assert!(!cc.cone.contains(&w1));
    assert!(d.in_valuation_cone(&w1));
}

#[test]
fn catalog_sizes() {
    let sizes: Vec<(String, usize)> =
        supported_types(6).iter().map(|t| (t.to_string(), catalog_for(t).unwrap().len())).collect();
    let get = |s: &str| sizes.iter().find(|(t, _)| t == s).unwrap().1;
    assert_eq!(get("A2"), 3);
    assert_eq!(get("A5"), 2);
    assert_eq!(get("B2"), 2);
    assert_eq!(get("D4"), 3);
    assert_eq!(get("D6"), 1);
    for t in ["E6", "E7", "E8", "F4"] {
        assert_eq!(get(t), 0);
    }
}
