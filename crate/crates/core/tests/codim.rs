use gstar_core::catalog::{build_named, catalog_set};
use gstar_core::codim::{tideal_component, DegreeVector, Engine, Mode};
use gstar_core::{FiniteAbelianGroup, Polynomial};

fn z(m: usize) -> FiniteAbelianGroup {
    FiniteAbelianGroup::cyclic(m).unwrap()
}

fn engine(name: &str, g: &FiniteAbelianGroup) -> Engine {
    Engine::new(&build_named(name, g).unwrap()).unwrap()
}

fn poly(s: &str, g: &FiniteAbelianGroup) -> Polynomial {
    Polynomial::parse(s, g).unwrap()
}

#[test]
fn block_examples() {
    let g = z(2);
    let c = engine("C[m=2]", &g);
    for n in 1..=4 {
        assert_eq!(c.block_codim(&DegreeVector(vec![n, 0, 0, 0])).unwrap(), 1);
    }
    let m = engine("Mrho[g]", &g);
    assert_eq!(m.block_codim(&DegreeVector(vec![0, 1, 0, 0])).unwrap(), 0);
    let f = engine("FC2G[g]", &g);
    for a in 0..=3 {
        for b in 0..=3 {
            if a + b > 0 {
                assert_eq!(f.block_codim(&DegreeVector(vec![a, 0, 0, b])).unwrap(), 1);
            }
        }
    }
}

#[test]
fn identity_examples() {
    let g = z(2);
    let fc = engine("FC2star", &g);
    assert!(fc.is_identity(&poly("[x1_1, x2_1]", &g)).unwrap().holds);
    assert!(fc.is_identity(&poly("x1_g", &g)).unwrap().holds);
    let m1 = engine("Mrho[1]", &g);
    assert!(m1.is_identity(&poly("z1_1 z2_1", &g)).unwrap().holds);
    let r = m1.is_identity(&poly("[y1_1, y2_1]", &g)).unwrap();
    assert!(!r.holds);
    let w = r.witness.unwrap();
    let a = m1.algebra();
    let shown: Vec<String> = w.assignment.iter().map(|(_, x)| a.format_element(x)).collect();
    assert_eq!(shown, vec!["e11+e44", "e12+e34"]);
    // value e12 - e34
    assert_eq!(a.format_element(&w.value), "e12-e34");
}

#[test]
fn non_multilinear_identity() {
    let g = z(2);
    let c = engine("C[m=2]", &g);
    assert!(c.is_identity(&poly("y1_1^2 y2_1 - y2_1 y1_1^2", &g)).unwrap().holds);
    let m = engine("Mrho[g]", &g);
    assert!(m.is_identity(&poly("y1_g^2", &g)).unwrap().holds);
    let r = engine("A2star", &g).is_identity(&poly("z1_1^2", &g)).unwrap();
    assert!(r.holds);
}

#[test]
fn kernel_examples() {
    let g = z(2);
    let m = engine("Mrho[g]", &g);
    let nv = DegreeVector(vec![0, 0, 2, 0]);
    let k = m.kernel_identity_basis(&nv).unwrap();
    assert_eq!(k.len(), 2);
    let t1 = poly("y1_g y2_g", &g);
    let t2 = poly("y2_g y1_g", &g);
    assert!(k.contains(&t1) && k.contains(&t2));
    let nv = DegreeVector(vec![1, 1, 1, 0]);
    assert_eq!(m.kernel_identity_basis(&nv).unwrap().len(), 6);
    for nv in DegreeVector::all(4, 3) {
        assert_eq!(m.kernel_identity_basis(&nv).unwrap().len() + m.block_codim(&nv).unwrap(), 6);
    }
}

#[test]
fn generated_ideals() {
    let g = z(2);
    let m = engine("Mrho[g]", &g);
    let gens = vec![poly("z1_1", &g), poly("x1_g x2_g", &g)];
    let r = m.ideal_generated_check(&gens, 4).unwrap();
    assert!(r.equal(), "{:?}", r.discrepancy);
    let m1 = engine("Mrho[1]", &g);
    let gens = vec![poly("z1_1 z2_1", &g), poly("x1_g", &g)];
    assert!(m1.ideal_generated_check(&gens, 4).unwrap().equal());
    let fc = engine("FC2star", &g);
    let gens = vec![poly("[x1_1, x2_1]", &g), poly("x1_g", &g)];
    assert!(fc.ideal_generated_check(&gens, 4).unwrap().equal());
    let fcg = engine("FC2G[g]", &g);
    let gens = vec![poly("z1_1", &g), poly("y1_g", &g)];
    // x1_r with r outside C_2 does not occur over Z2
    assert!(fcg.ideal_generated_check(&gens, 4).unwrap().equal());
    // the empty set misses every identity
    let r = m.ideal_generated_check(&[], 2).unwrap();
    assert!(!r.equal());
}

#[test]
fn fcp_ideal_over_z3() {
    let g = z(3);
    let f = engine("FCp[g]", &g);
    let mut gens = Vec::new();
    let names = ["1", "g", "g2"];
    for i in 0..3 {
        for j in i..3 {
            gens.push(poly(&format!("[y1_{}, y2_{}]", names[i], names[j]), &g));
        }
        gens.push(poly(&format!("z1_{}", names[i]), &g));
    }
    assert!(f.ideal_generated_check(&gens, 3).unwrap().equal());
}

#[test]
fn tideal_small() {
    let g = FiniteAbelianGroup::trivial();
    let z1 = poly("z1_1", &g);
    assert_eq!(tideal_component(&[z1.clone()], &DegreeVector(vec![2, 0]), &g).unwrap().rank(), 1);
    assert_eq!(tideal_component(&[z1], &DegreeVector(vec![1, 1]), &g).unwrap().rank(), 2);
    let big = poly("y1_1 y2_1 y3_1", &g);
    assert_eq!(tideal_component(&[big], &DegreeVector(vec![2, 0]), &g).unwrap().rank(), 0);
}

#[test]
fn containment_examples() {
    let g = z(2);
    let m = engine("Mrho[g]", &g);
    let n3 = engine("N3[g]", &g);
    assert!(m.var_contains(&n3, 4).unwrap().holds);
    let m1 = engine("Mrho[1]", &g);
    let r = m.var_contains(&m1, 1).unwrap();
    assert!(!r.holds);
    let (nv, p) = r.failing.unwrap();
    assert_eq!(nv, DegreeVector(vec![0, 1, 0, 0]));
    assert_eq!(p, poly("z1_1", &g));
    assert!(m.var_contains(&m, 3).unwrap().holds);
    assert!(engine("N2[g]", &g).t_equivalent(&engine("C2star[g]", &g), 4).unwrap());
    let m6 = engine("M6[omega1;1,1]", &g);
    let u3 = engine("U3star", &g);
    assert!(!m6.t_equivalent(&u3, 3).unwrap());
    assert!(m6.var_contains(&u3, 3).unwrap().holds);
    assert!(!u3.var_contains(&m6, 3).unwrap().holds);
}

#[test]
fn oracle_and_chain() {
    for g in [z(2), z(3)] {
        for a in catalog_set("K", &g).unwrap().iter().take(4) {
            let e = Engine::new(a).unwrap();
            for n in 1..=3 {
                let full = e.total_codim(n).unwrap();
                assert_eq!(e.direct_codim(n).unwrap(), full, "{}", a.name());
                let star = e.star_codim(n).unwrap();
                let graded = e.graded_codim(n).unwrap();
                let ord = e.ordinary_codim(n).unwrap();
                assert!(ord <= star && star <= full && ord <= graded && graded <= full, "{}", a.name());
                let bound = (2 * g.order() as u64).pow(n as u32) * ord;
                assert!(full <= bound);
            }
        }
    }
}

#[test]
fn modes_have_expected_slots() {
    let e = engine("A2star", &z(3));
    assert_eq!(e.slot_count(Mode::Full), 6);
    assert_eq!(e.slot_count(Mode::Graded), 3);
    assert_eq!(e.slot_count(Mode::Star), 2);
    assert_eq!(e.slot_count(Mode::Ordinary), 1);
}
