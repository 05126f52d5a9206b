use ncinst::algebra::{sphere_relations, Deformation, Element, WeightClass, Weight};
use ncinst::geometry::{build_chart, build_s4, build_s7};
use ncinst::scalar::Scalar;

#[test]
fn s4_reordering_scalar() {
    let p = build_s4(Deformation::Formal);
    let lhs = Element::word(&p, Scalar::one(), &["z2", "z1"]).unwrap();
    let rhs = Element::word(&p, Scalar::q_pow(-4), &["z1", "z2"]).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn s7_reordering_scalar() {
    let p = build_s7(Deformation::Formal);
    let lhs = Element::word(&p, Scalar::one(), &["psi3", "psi1"]).unwrap();
    let rhs = Element::word(&p, Scalar::q_pow(2), &["psi1", "psi3"]).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn s7_sphere_relation() {
    let p = build_s7(Deformation::Formal);
    let mut acc = Element::zero(&p);
    for a in 1..=4 {
        let c = format!("psi{}'", a);
        let g = format!("psi{}", a);
        acc = &acc + &Element::word(&p, Scalar::one(), &[c.as_str(), g.as_str()]).unwrap();
    }
    assert_eq!(acc, Element::one(&p));
}

#[test]
fn sphere_relations_and_their_differentials_vanish() {
    for p in [build_s4(Deformation::Formal), build_s7(Deformation::Formal), build_chart(Deformation::Formal)] {
        for (r, dr) in sphere_relations(&p) {
            assert!(r.is_zero(), "{}", r);
            assert!(dr.is_zero(), "{}", dr);
        }
    }
}

#[test]
fn differential_of_product() {
    let p = build_s4(Deformation::Formal);
    let z12 = Element::word(&p, Scalar::one(), &["z1", "z2"]).unwrap();
    let expected = &Element::word(&p, Scalar::q_pow(4), &["z2", "d(z1)"]).unwrap()
        + &Element::word(&p, Scalar::one(), &["z1", "d(z2)"]).unwrap();
    assert_eq!(z12.differential(), expected);
    let dz1 = Element::named(&p, "d(z1)").unwrap();
    assert!(dz1.differential().is_zero());
}

#[test]
fn chart_differential_of_rho_squared() {
    let p = build_chart(Deformation::Formal);
    let rho2 = Element::word(&p, Scalar::one(), &["rho", "rho"]).unwrap();
    let mut dn = Element::zero(&p);
    for (a, b) in [("zeta1", "d(zeta1')"), ("zeta1'", "d(zeta1)"), ("zeta2", "d(zeta2')"), ("zeta2'", "d(zeta2)")] {
        dn = &dn + &Element::word(&p, Scalar::one(), &["rho", "rho", "rho", "rho", a, b]).unwrap();
    }
    assert_eq!(rho2.differential(), -&dn);
}

#[test]
fn involution_examples() {
    let p = build_s4(Deformation::Formal);
    let w = Element::word(&p, Scalar::one(), &["d(z1)", "d(z2)"]).unwrap();
    let expected = Element::word(&p, Scalar::integer(-1), &["d(z2')", "d(z1')"]).unwrap();
    assert_eq!(w.involution(), expected);
    let p7 = build_s7(Deformation::Formal);
    let x = Element::word(&p7, Scalar::q_pow(2), &["psi1"]).unwrap();
    assert_eq!(x.involution(), Element::word(&p7, Scalar::q_pow(-2), &["psi1'"]).unwrap());
}

#[test]
fn weights_and_twists() {
    let p = build_s4(Deformation::Formal);
    let z1 = Element::named(&p, "z1").unwrap();
    let z0 = Element::named(&p, "z0").unwrap();
    let z2 = Element::named(&p, "z2").unwrap();
    assert_eq!(z1.weight_of(), WeightClass::Homogeneous(Weight(2, 0)));
    assert_eq!((&z0 + &z1).weight_of(), WeightClass::Inhomogeneous);
    assert_eq!(z2.twist((1, 0), true), z2.scale(&Scalar::q_pow(2)));
    assert_eq!(z0.twist((1, 1), false), z0);
    let p7 = build_s7(Deformation::Formal);
    let psi1 = Element::named(&p7, "psi1").unwrap();
    assert_eq!(psi1.weight_of(), WeightClass::Homogeneous(Weight(1, -1)));
    assert_eq!(psi1.twist((1, 0), true), psi1.scale(&Scalar::q_pow(-1)));
}

#[test]
fn critical_pairs() {
    for p in [build_s4(Deformation::Formal), build_s7(Deformation::Formal), build_chart(Deformation::Formal)] {
        p.check_critical_pairs().unwrap();
    }
}
