use gstar_core::catalog::{build_named, catalog_set};
use gstar_core::codim::{DegreeVector, Engine};
use gstar_core::reptheory::{
    colength, highest_weight_vector, hwv_rank, multipartitions, multiplicity, multiplicity_with,
    radical_strip_check, YoungTableau,
};
use gstar_core::{FiniteAbelianGroup, Multipartition, Partition};

fn z(m: usize) -> FiniteAbelianGroup {
    FiniteAbelianGroup::cyclic(m).unwrap()
}

fn engine(name: &str, g: &FiniteAbelianGroup) -> Engine {
    Engine::new(&build_named(name, g).unwrap()).unwrap()
}

fn mp(parts: &[&[usize]]) -> Multipartition {
    Multipartition(parts.iter().map(|p| Partition::new(p.to_vec())).collect())
}

#[test]
fn commutative_trivial_cocharacter() {
    let g = z(2);
    let c = engine("C[m=2]", &g);
    for n in 1..=4 {
        for m in multipartitions(&DegreeVector(vec![n, 0, 0, 0])) {
            let expect = usize::from(m.0[0].0 == vec![n]);
            assert_eq!(multiplicity(&c, &m).unwrap(), expect);
        }
        assert_eq!(colength(&c, n).unwrap(), 1);
    }
}

#[test]
fn degree_identity_on_samples() {
    let g = z(2);
    for name in ["A2star", "Mrho[g]", "M4[g]", "G2[gamma;g,g]", "FC2star", "W[nu2;g,1]"] {
        let e = engine(name, &g);
        for n in 1..=4 {
            for nv in DegreeVector::all(4, n) {
                let c = e.block_codim(&nv).unwrap() as u64;
                let s: u64 = multipartitions(&nv).iter().map(|m| multiplicity(&e, m).unwrap() as u64 * m.dim()).sum();
                assert_eq!(s, c, "{name} {nv}");
            }
        }
    }
}

#[test]
fn tableau_independence_and_hwv() {
    let g = z(2);
    for name in ["A2star", "M5[g]", "FC2star"] {
        let e = engine(name, &g);
        for n in 1..=4 {
            for nv in DegreeVector::all(4, n) {
                for m in multipartitions(&nv) {
                    let a = multiplicity(&e, &m).unwrap();
                    let rows: Vec<YoungTableau> = m.0.iter().map(YoungTableau::row_superstandard).collect();
                    assert_eq!(a, multiplicity_with(&e, &m, &rows).unwrap(), "{name} {m}");
                    assert_eq!(a, hwv_rank(&e, &m).unwrap(), "{name} {m}");
                }
            }
        }
    }
}

#[test]
fn colength_of_fc2_star_grows() {
    let e = engine("FC2star", &z(2));
    for n in 1..=5 {
        assert_eq!(colength(&e, n).unwrap(), n + 1);
    }
    assert!(!(1..=4).all(|n| radical_strip_check(&e, n).unwrap()));
}

#[test]
fn c2star_colength_bounded() {
    let e = engine("C2star[1]", &z(2));
    let ls: Vec<usize> = (1..=6).map(|n| colength(&e, n).unwrap()).collect();
    assert!(ls.iter().all(|&l| l <= 2), "{ls:?}");
    assert!(radical_strip_check(&e, 3).unwrap());
    assert!(radical_strip_check(&engine("A2star", &z(2)), 3).unwrap());
}

#[test]
fn m11_lambda() {
    let g = z(3);
    // slots: 1+,1-,g+,g-,g2+,g2-  with h = g^2 here
    let e = engine("M11[g,g2]", &g);
    let m = mp(&[&[2], &[], &[1], &[], &[], &[1]]);
    assert!(multiplicity(&e, &m).unwrap() >= 1);
}

#[test]
fn hwv_shapes() {
    let g = z(2);
    let m = mp(&[&[3], &[], &[], &[]]);
    let t: Vec<YoungTableau> = m.0.iter().map(YoungTableau::column_superstandard).collect();
    let f = highest_weight_vector(&m, &t).unwrap();
    assert_eq!(f.display(&g), "y1_1 y1_1 y1_1");
    let m = mp(&[&[1, 1], &[], &[], &[]]);
    let t: Vec<YoungTableau> = m.0.iter().map(YoungTableau::column_superstandard).collect();
    let f = highest_weight_vector(&m, &t).unwrap();
    assert_eq!(f.display(&g), "y1_1 y2_1 - y2_1 y1_1");
    let bad = vec![YoungTableau { rows: vec![vec![2], vec![1]] }, t[1].clone(), t[2].clone(), t[3].clone()];
    assert!(highest_weight_vector(&m, &bad).is_err());
}

#[test]
fn degree_identity_k_over_z3() {
    let g = z(3);
    for a in catalog_set("K", &g).unwrap().iter().take(3) {
        let e = Engine::new(a).unwrap();
        for nv in DegreeVector::all(6, 3) {
            let c = e.block_codim(&nv).unwrap() as u64;
            let s: u64 = multipartitions(&nv).iter().map(|m| multiplicity(&e, m).unwrap() as u64 * m.dim()).sum();
            assert_eq!(s, c, "{} {nv}", a.name());
        }
    }
}
