use gstar_core::catalog::{build_named, catalog_set};
use gstar_core::growth::*;
use gstar_core::{Engine, FiniteAbelianGroup, GStarAlgebra};

fn z(m: usize) -> FiniteAbelianGroup {
    FiniteAbelianGroup::cyclic(m).unwrap()
}

fn engine(name: &str, g: &FiniteAbelianGroup) -> Engine {
    Engine::new(&build_named(name, g).unwrap()).unwrap()
}

#[test]
fn exclusion_examples() {
    let g = z(2);
    let c = engine("C2star[1]", &g);
    assert!(exclusion_report(&c, "M", 3).unwrap().iter().all(|x| x.excluded));
    let m = engine("Mrho[g]", &g);
    let r = exclusion_report(&m, "E", 2).unwrap();
    let own = r.iter().find(|x| x.algebra == "Mrho[g]@Z2").unwrap();
    assert!(!own.excluded);
    assert_eq!(own.label(), "not-excluded-at-2");
    let fc = engine("FC2star", &g);
    let r = exclusion_report(&fc, "E", 3).unwrap();
    assert!(!r.iter().find(|x| x.algebra == "FC2star@Z2").unwrap().excluded);
    assert!(exclusion_report(&fc, "E", 1).is_err());
}

#[test]
fn radical_bounds() {
    let g = z(2);
    let r = radical_bound_check(&engine("C3[g]", &g), 6).unwrap();
    assert_eq!((r.q, r.degree, r.holds), (3, Some(2), true));
    let r = radical_bound_check(&engine("A2star", &g), 6).unwrap();
    assert!(r.holds && r.degree == Some(1) && r.q >= 2);
    let r = radical_bound_check(&engine("nilpotent[dim=2]", &g), 6).unwrap();
    assert!(r.holds && r.degree == Some(0));
}

#[test]
fn linear_minimality() {
    let g = z(2);
    for name in ["C2star[g]", "C2star[1]", "A2star", "C2[g]"] {
        let v = minimality_report(&engine(name, &g), 4, 6).unwrap();
        assert_eq!(v.label(), "minimal-linear", "{name}: {v}");
    }
    let sum = GStarAlgebra::direct_sum(&[build_named("C2star[1]", &g).unwrap(), build_named("A2star", &g).unwrap()])
        .unwrap();
    let v = minimality_report(&Engine::new(&sum).unwrap(), 4, 6).unwrap();
    match &v {
        Minimality::LinearNonMinimal { matches } => assert!(matches.contains(&"C2star[1]+A2star+N".to_string())),
        other => panic!("{other}"),
    }
    assert_eq!(minimality_report(&engine("C[m=2]", &g), 4, 6).unwrap(), Minimality::Constant);
    assert_eq!(minimality_report(&engine("FC2star", &g), 3, 6).unwrap(), Minimality::OutOfQuadraticScope);
}

#[test]
fn quadratic_minimality() {
    let g = z(2);
    let v = minimality_report(&engine("G2[tau;1,1]", &g), 4, 6).unwrap();
    match v {
        Minimality::MinimalQuadratic { matches } => assert_eq!(matches, vec!["G2[tau;1,1]@Z2".to_string()]),
        other => panic!("{other}"),
    }
}

#[test]
fn linear_shapes_have_linear_profiles() {
    let g = z(2);
    for h in g.elements() {
        for (name, a) in linear_shapes(&g, h).unwrap() {
            let p = profile_of(&Engine::new(&a).unwrap().codim_sequence(6).unwrap()).unwrap();
            assert!(matches!(p.degree, Some(k) if k <= 1), "{name}: {p:?}");
        }
    }
}

#[test]
fn remark_pair_is_one_directional() {
    let g = z(2);
    let r = pairwise_incomparability("K", &g, 3).unwrap();
    let i = r.names.iter().position(|s| s == "M6[omega1;1,1]@Z2").unwrap();
    let j = r.names.iter().position(|s| s == "U3star@Z2").unwrap();
    assert!(r.contains[i][j] && !r.contains[j][i]);
    assert!(r.unseparated.contains(&(i, j)) && !r.unseparated.contains(&(j, i)));
    assert!(r.contains.iter().enumerate().all(|(k, row)| row[k]));
    let csv = r.to_csv();
    assert_eq!(csv.lines().count(), r.names.len() + 1);
}

#[test]
fn growth_report_json() {
    let g = z(2);
    let r = GrowthReport::compute(&engine("A2star", &g), "E", 5, 3).unwrap();
    // 4n - 1 from n = 3 on; with trivial grading c_1 is at most 2
    assert_eq!(r.prefix, vec![2, 6, 11, 15, 19]);
    assert_eq!(r.class, GrowthClass::Linear);
    assert_eq!(r.profile.onset, Some(3));
    assert!(r.all_excluded());
    let j = r.to_json();
    assert_eq!(j["class"], "linear");
    assert_eq!(j["profile"]["leading"], "4");
    assert!(j["exclusions"][0]["verdict"].as_str().unwrap().starts_with("excluded-at-"));
}

#[test]
fn structure_lemmas_on_small_algebras() {
    let g = z(2);
    for name in ["M6[omega1;1,1]", "M7[omega2;1,1]", "M8[1,g]", "G2[tau;1,1]", "C2star[g]", "A2[g]", "N3[g]"] {
        let e = engine(name, &g);
        let r = structure_checks(&e, 3).unwrap();
        assert!(r.passed(), "{name}: {:?}", r.checks);
        assert!(r.applicable() > 0);
    }
    assert!(structure_checks(&engine("FC2star", &g), 3).is_err());
}

#[test]
fn b_decomposition_of_graded_algebra() {
    let g = z(2);
    let a = build_named("N3[g]", &g).unwrap();
    let parts = b_components(&a).unwrap();
    assert_eq!(parts.len(), 2);
    let r = structure_checks(&Engine::new(&a).unwrap(), 3).unwrap();
    let last = r.checks.last().unwrap();
    assert_eq!(last.conclusion, Some(true));
}

#[test]
fn quadratic_profiles_over_z3_sample() {
    let g = z(3);
    for a in catalog_set("K1", &g).unwrap().iter().take(3) {
        let p = profile_of(&Engine::new(a).unwrap().codim_sequence(6).unwrap()).unwrap();
        assert_eq!(p.degree, Some(2), "{}", a.name());
    }
}
