use std::collections::HashMap;

use super::*;
use crate::coeffs::{FieldDescriptor, Scalar};
use crate::presets::{anticommutator_spin, aw2, bannai_ito, restricted_sl2, ruea, sl2, solvable3, uea};
use crate::rewrite::{irreducible_words, normal_form};

fn q() -> FieldDescriptor {
    FieldDescriptor::Rationals
}

fn qq() -> FieldDescriptor {
    FieldDescriptor::rational_functions("q").unwrap()
}

fn universal_aw() -> Presentation {
    let f = qq();
    let z = f.zero();
    aw2(&f, &z, &z, &z).unwrap()
}

fn zfull(p: &Presentation) -> ZPresentation {
    z_presentation(p, &p.relation_names()).unwrap()
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

#[test]
fn centrify_spin() {
    let p = anticommutator_spin(&q()).unwrap();
    let c = centrify(&p, &p.relation_names()).unwrap();
    assert_eq!(c.relations().len(), 9);
    assert_eq!(c.relations()[0].0, "comm(X,R_X)");
    assert_eq!(c.relations()[1].0, "comm(Y,R_X)");
    assert_eq!(c.relations()[8].0, "comm(Z,R_Z)");

    let c = centrify(&p, &names(&["R_X"])).unwrap();
    assert_eq!(
        c.relation_names(),
        ["comm(X,R_X)", "comm(Y,R_X)", "comm(Z,R_X)", "R_Y", "R_Z"]
    );
    assert!(matches!(
        centrify(&p, &names(&["R_W"])),
        Err(CentrifyError::UnknownRelation(n)) if n == "R_W"
    ));
}

#[test]
fn empty_central_subset() {
    let p = anticommutator_spin(&q()).unwrap();
    let zp = z_presentation(&p, &[]).unwrap();
    assert!(zp.central_names().is_empty());
    for ((_, a), (_, b)) in zp.relations().iter().zip(p.relations()) {
        assert_eq!(a, &b.map_coeffs(|c| CentralPoly::constant(c.clone())));
    }
}

#[test]
fn name_clash() {
    let alphabet = crate::freealg::Alphabet::new(&["X", "z_R"]).unwrap();
    let x = NcPoly::monomial(Word::new(vec![0]), q().one());
    let p = Presentation::new("t", q(), alphabet, vec![("R".into(), x)], vec![]).unwrap();
    assert!(matches!(z_presentation(&p, &names(&["R"])), Err(CentrifyError::NameClash(_))));
}

#[test]
fn vanishing_obstacles() {
    for p in [anticommutator_spin(&q()).unwrap(), universal_aw()] {
        let zp = zfull(&p);
        let base = zp.base_system().unwrap();
        let comps = find_compositions(&base);
        assert_eq!(comps.len(), 1);
        let obs = obstacle(&zp, &comps[0]).unwrap();
        assert!(obs.element.is_zero(), "{}", zp.render(&obs.element));
        assert!(verify_obstacle_identity(&zp, &obs).unwrap());
    }
}

#[test]
fn solvable_obstacle() {
    let zp = zfull(&uea(&solvable3(&q())).unwrap());
    let base = zp.base_system().unwrap();
    let comps = find_compositions(&base);
    let comp = comps.iter().find(|c| c.j_name == "R_xy" && c.k_name == "R_yz").unwrap();
    let obs = obstacle(&zp, comp).unwrap();
    assert_eq!(zp.render(&obs.element), "-2*z_yz");
    assert!(verify_obstacle_identity(&zp, &obs).unwrap());
    for seed in 1..8 {
        let alt = obstacle_with(&zp, comp, Strategy::Random(seed)).unwrap();
        assert!(verify_obstacle_identity(&zp, &alt).unwrap());
    }
}

#[test]
fn flatness() {
    for p in [anticommutator_spin(&q()).unwrap(), universal_aw()] {
        let cert = check_prop_gsbasis(&zfull(&p), DEFAULT_SEARCH_BUDGET).unwrap();
        assert!(cert.is_flat());
        assert_eq!(cert.checks.len(), 1);
    }
    let zp = zfull(&uea(&solvable3(&q())).unwrap());
    let cert = check_prop_gsbasis(&zp, DEFAULT_SEARCH_BUDGET).unwrap();
    match cert.verdict {
        PropVerdict::Witness { obstacle, .. } => {
            assert_eq!(zp.render(&obstacle.element), "-2*z_yz");
        }
        PropVerdict::Flat => panic!("solvable presentation is not flat"),
    }
}

#[test]
fn base_must_be_gs() {
    let alphabet = crate::freealg::Alphabet::new(&["X"]).unwrap();
    let one = q().one();
    let xx = NcPoly::monomial(Word::new(vec![0, 0]), one.clone());
    let x = NcPoly::monomial(Word::new(vec![0]), one.clone());
    let p = Presentation::new(
        "t",
        q(),
        alphabet,
        vec![("R_1".into(), xx.sub(&x)), ("R_2".into(), xx.sub(&NcPoly::constant(one)))],
        vec![],
    )
    .unwrap();
    let zp = zfull(&p);
    assert!(matches!(
        check_prop_gsbasis(&zp, 4),
        Err(CentrifyError::BaseNotGs { .. })
    ));
}

#[test]
fn central_relation_examples() {
    let spin = central_relations(&zfull(&anticommutator_spin(&q()).unwrap()), 6).unwrap();
    assert!(spin.relations.is_empty());
    assert_eq!(spin.status, CompletionStatus::Complete);

    let s = central_relations(&zfull(&uea(&sl2(&q())).unwrap()), 6).unwrap();
    assert!(s.relations.is_empty());

    let zp = zfull(&uea(&solvable3(&q())).unwrap());
    let sol = central_relations(&zp, 6).unwrap();
    assert_eq!(sol.relations.len(), 1);
    assert_eq!(zp.render_central(&sol.relations[0]), "z_yz");
}

#[test]
fn bannai_ito_specialization() {
    let zp = zfull(&anticommutator_spin(&q()).unwrap());
    let f = q();
    let omega = [f.from_int(3), f.from_rational(&num_rational::BigRational::new(1.into(), 2.into())).unwrap(), f.from_int(-7)];
    let map: HashMap<String, Scalar> = zp
        .central_names()
        .iter()
        .cloned()
        .zip(omega.iter().cloned())
        .collect();
    let spec = specialize(&zp, &map).unwrap();
    let bi = bannai_ito(&f, &omega).unwrap();
    assert_eq!(spec.canonical_relations(), bi.canonical_relations());

    let mut partial = map.clone();
    partial.remove("z_X");
    assert!(matches!(specialize(&zp, &partial), Err(CentrifyError::MissingAssignment(_))));
}

#[test]
fn zero_specialization_is_identity() {
    let presets = [
        anticommutator_spin(&q()).unwrap(),
        universal_aw(),
        uea(&sl2(&q())).unwrap(),
        ruea(&restricted_sl2()).unwrap(),
    ];
    for p in presets {
        let zp = zfull(&p);
        let zero: HashMap<String, Scalar> = zp
            .central_names()
            .iter()
            .map(|n| (n.clone(), p.field().zero()))
            .collect();
        assert_eq!(specialize(&zp, &zero).unwrap().canonical_relations(), p.canonical_relations());
    }
}

#[test]
fn universal_aw_specializes_to_aw() {
    let f = qq();
    let qv = f.parameter().unwrap();
    let shift = (&qv + &qv.inv().unwrap()).inv().unwrap();
    let (a, b, c) = (f.from_int(2), &qv * &qv, f.from_int(-5));
    let zp = zfull(&universal_aw());
    let map: HashMap<String, Scalar> = [
        ("z_A".to_string(), &a * &shift),
        ("z_B".to_string(), &b * &shift),
        ("z_C".to_string(), &c * &shift),
    ]
    .into_iter()
    .collect();
    let spec = specialize(&zp, &map).unwrap();
    assert_eq!(spec.canonical_relations(), aw2(&f, &a, &b, &c).unwrap().canonical_relations());
}

#[test]
fn inconsistent_specialization() {
    let zp = zfull(&uea(&solvable3(&q())).unwrap());
    let rels = central_relations(&zp, 6).unwrap().relations;
    let zp = zp.with_ideal(rels);
    let f = q();
    let mut map: HashMap<String, Scalar> = zp.central_names().iter().map(|n| (n.clone(), f.zero())).collect();
    assert!(specialize(&zp, &map).is_ok());
    map.insert("z_yz".into(), f.one());
    assert!(matches!(
        specialize(&zp, &map),
        Err(CentrifyError::InconsistentSpecialization(_))
    ));
}

#[test]
fn central_images_commute() {
    for p in [anticommutator_spin(&q()).unwrap(), universal_aw()] {
        let zp = zfull(&p);
        let done = central_relations(&zp, 6).unwrap();
        let c = centrify(&p, &p.relation_names()).unwrap();
        for (_, comm) in c.relations() {
            let lifted = comm.map_coeffs(|x| CentralPoly::constant(x.clone()));
            // [X_i, R_j] = [X_i, R_j − z_j] in the Z-algebra, which is zero
            assert!(normal_form(&lifted, &done.system).is_zero());
        }
    }
}

#[test]
fn flat_deformation_keeps_normal_words() {
    for p in [anticommutator_spin(&q()).unwrap(), universal_aw()] {
        let zp = zfull(&p);
        let base = zp.base_system().unwrap();
        let zsys = central_relations(&zp, 6).unwrap().system;
        let a = irreducible_words(&base, 5);
        let b = irreducible_words(&zsys, 5);
        assert_eq!(a, b);
    }
}

#[test]
fn restricted_centrification_is_enveloping() {
    let d = restricted_sl2();
    let p = ruea(&d).unwrap();
    let c = centrify(&p, p.central()).unwrap();
    let sys = c.rewrite_system().unwrap();
    let done = crate::rewrite::complete(&sys, &crate::rewrite::CompletionOptions::new(8)).unwrap();
    let envelope = uea(&d).unwrap().rewrite_system().unwrap();
    let envelope = crate::rewrite::complete(&envelope, &crate::rewrite::CompletionOptions::new(8)).unwrap();
    assert_eq!(done.system.canonical_rules(), envelope.system.canonical_rules());
}
