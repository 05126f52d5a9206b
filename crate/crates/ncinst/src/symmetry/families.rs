//! The so(5) and so(5,1) generators as twisted derivations on the four- and
//! seven-spheres.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Deformation, Element, Presentation};
use crate::geometry::clifford::{CliffordSet, SHORT_ROOTS, SO5_ROOTS};
use crate::geometry::{presentation, subalgebra, AlgebraKind};
use crate::matrixdga::ScalarMatrix;
use crate::scalar::Scalar;

use super::derivation::TwistedDerivation;

/// Label of an so(5,1) generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    H(usize),
    E(i32, i32),
    H0,
    G(i32, i32),
}

impl Generator {
    pub fn root(self) -> (i32, i32) {
        match self {
            Generator::H(_) | Generator::H0 => (0, 0),
            Generator::E(a, b) | Generator::G(a, b) => (a, b),
        }
    }

    /// The ten generators of so(5).
    pub fn so5() -> Vec<Generator> {
        let mut v = vec![Generator::H(1), Generator::H(2)];
        v.extend(SO5_ROOTS.iter().map(|r| Generator::E(r.0, r.1)));
        v
    }

    /// The five generators completing so(5) to so(5,1).
    pub fn conformal() -> Vec<Generator> {
        let mut v = vec![Generator::H0];
        v.extend(SHORT_ROOTS.iter().map(|r| Generator::G(r.0, r.1)));
        v
    }

    pub fn all() -> Vec<Generator> {
        let mut v = Self::so5();
        v.extend(Self::conformal());
        v
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::H(j) => write!(f, "H{}", j),
            Generator::E(a, b) => write!(f, "E({},{})", a, b),
            Generator::H0 => write!(f, "H0"),
            Generator::G(a, b) => write!(f, "G({},{})", a, b),
        }
    }
}

/// The fifteen derivations realizing so(5,1) on one sphere.
#[derive(Clone, Debug)]
pub struct Action {
    pub kind: AlgebraKind,
    pub deformation: Deformation,
    pres: Arc<Presentation>,
    members: Vec<(Generator, TwistedDerivation)>,
}

impl Action {
    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn get(&self, g: Generator) -> &TwistedDerivation {
        &self.members.iter().find(|(k, _)| *k == g).unwrap_or_else(|| panic!("no generator {}", g)).1
    }

    pub fn members(&self) -> &[(Generator, TwistedDerivation)] {
        &self.members
    }
}

fn conjugates(members: &mut Vec<(Generator, TwistedDerivation)>) {
    let positive: Vec<(Generator, TwistedDerivation)> = members.clone();
    for (g, d) in positive {
        let neg = match g {
            Generator::E(a, b) => Generator::E(-a, -b),
            Generator::G(a, b) => Generator::G(-a, -b),
            _ => continue,
        };
        members.push((neg, d.conjugate(&neg.to_string())));
    }
}

/// Which operator formulas an action is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// Operators that respect the relations.  On the four-sphere `G₁,₀`
    /// carries `μ̄z₂∂₂ + μz₂*∂₂*` and `G₀,₁` carries `μz₁∂₁ + μ̄z₁*∂₁*`
    /// inside the Euler-type operators; on the seven-sphere the short-root
    /// matrices split their twist evenly (see [`CliffordSet::spin_e`] and
    /// [`CliffordSet::conformal_matrices`]).
    Corrected,
    /// The formulas as usually printed: `λ̄z₂∂₂ + λz₂*∂₂*` in `G₁,₀`, the
    /// untwisted Euler operator in `G₀,₁`, and the printed spin matrices.
    /// The short-root and conformal operators built this way fail the
    /// relations.
    Literal,
}

/// so(5,1) on the four-sphere: `H_j`, `E_r` from the vector fields
/// `H₁ = z₁∂₁ − z₁*∂₁*`, `E₊₁,₊₁ = z₂∂₁* − z₁∂₂*`, `E₊₁,₋₁ = z₂*∂₁* − z₁∂₂`,
/// `E₊₁,₀ = (2z₀∂₁* − z₁∂₀)/√2`, `E₀,₊₁ = (2z₀∂₂* − z₂∂₀)/√2`, and the
/// conformal operators `H₀ = ∂₀ − z₀𝔈`, `G₀,₁ = 2∂₂* − z₂𝔈`,
/// `G₁,₀ = 2∂₁* − z₁𝔈'` with `𝔈` the Euler operator.  Negative roots use
/// the conjugate pairing `E₋ᵣ(a) = (E_r(a*))*`.
pub fn s4_action(deformation: Deformation, variant: Variant) -> Action {
    let p = presentation(AlgebraKind::S4, deformation);
    let z = |i: usize| Element::generator(&p, i);
    let (z0, z1, z1c, z2, z2c) = (0, 1, 2, 3, 4);
    let zero = || Element::zero(&p);
    let int = |n| Scalar::integer(n);
    let s = Scalar::inv_sqrt2();
    let table = |pairs: Vec<(usize, Element)>| {
        let mut v: Vec<Element> = (0..5).map(|_| zero()).collect();
        for (g, e) in pairs {
            v[g] = e;
        }
        v
    };
    let mut members = vec![
        (Generator::H(1), TwistedDerivation::new("H1", (0, 0), &p, table(vec![(z1, z(z1)), (z1c, -z(z1c))]))),
        (Generator::H(2), TwistedDerivation::new("H2", (0, 0), &p, table(vec![(z2, z(z2)), (z2c, -z(z2c))]))),
        (Generator::E(1, 1), TwistedDerivation::new("E(1,1)", (1, 1), &p, table(vec![(z1c, z(z2)), (z2c, -z(z1))]))),
        (
            Generator::E(1, -1),
            TwistedDerivation::new("E(1,-1)", (1, -1), &p, table(vec![(z1c, z(z2c)), (z2, -z(z1))])),
        ),
        (
            Generator::E(1, 0),
            TwistedDerivation::new(
                "E(1,0)",
                (1, 0),
                &p,
                table(vec![(z1c, z(z0).scale(&Scalar::sqrt2())), (z0, z(z1).scale(&-s.clone()))]),
            ),
        ),
        (
            Generator::E(0, 1),
            TwistedDerivation::new(
                "E(0,1)",
                (0, 1),
                &p,
                table(vec![(z2c, z(z0).scale(&Scalar::sqrt2())), (z0, z(z2).scale(&-s.clone()))]),
            ),
        ),
    ];
    // Euler-type operators: x ↦ −x_lead · c_g · g on each generator.
    let euler = |lead: usize, weights: [Scalar; 5], shift: usize| -> Vec<Element> {
        (0..5)
            .map(|g| {
                let mut img = (&z(lead) * &z(g)).scale(&-weights[g].clone());
                if g == shift {
                    img = &img + &Element::scalar(&p, if lead == z0 { int(1) } else { int(2) });
                }
                img
            })
            .collect()
    };
    let ones = || [int(1), int(1), int(1), int(1), int(1)];
    let (a, b) = match variant {
        Variant::Corrected => (deformation.q(-2), deformation.q(2)),
        Variant::Literal => (deformation.q(-4), deformation.q(4)),
    };
    let g01_weights = match variant {
        Variant::Corrected => [int(1), deformation.q(2), deformation.q(-2), int(1), int(1)],
        Variant::Literal => ones(),
    };
    members.push((Generator::H0, TwistedDerivation::new("H0", (0, 0), &p, euler(z0, ones(), z0))));
    members.push((
        Generator::G(1, 0),
        TwistedDerivation::new("G(1,0)", (1, 0), &p, euler(z1, [int(1), int(1), int(1), a, b], z1c)),
    ));
    members.push((
        Generator::G(0, 1),
        TwistedDerivation::new("G(0,1)", (0, 1), &p, euler(z2, g01_weights, z2c)),
    ));
    conjugates(&mut members);
    Action { kind: AlgebraKind::S4, deformation, pres: p, members }
}

/// A `4×4` matrix whose entries are `Σ_t c_t·M_t` with elements `c_t`
/// written to the left of the spinor they multiply.
#[derive(Clone, Debug)]
pub struct SpinorOperator {
    pub terms: Vec<(Element, ScalarMatrix)>,
}

impl SpinorOperator {
    pub fn scalar(pres: &Arc<Presentation>, m: ScalarMatrix) -> Self {
        SpinorOperator { terms: vec![(Element::one(pres), m)] }
    }

    pub fn entry(&self, a: usize, b: usize) -> Element {
        let pres = self.terms[0].0.presentation().clone();
        let parts: Vec<Element> = self.terms.iter().map(|(c, m)| c.scale(m.get(a, b))).collect();
        Element::sum(&pres, parts.iter())
    }

    pub fn conjugated(&self, cl: &CliffordSet) -> SpinorOperator {
        SpinorOperator { terms: self.terms.iter().map(|(c, m)| (c.clone(), cl.tilde(m))).collect() }
    }
}

/// The derivation `ψₐ ↦ Σ Γₐ_b ψ_b`, `ψₐ* ↦ Σ Γ̃ₐ_b ψ_b*`.
pub fn spinor_derivation(
    name: &str,
    root: (i32, i32),
    pres: &Arc<Presentation>,
    gamma: &SpinorOperator,
    gamma_tilde: &SpinorOperator,
) -> TwistedDerivation {
    TwistedDerivation::from_fn(name, root, pres, |g| {
        let (a, conj) = (g / 2, g % 2 == 1);
        let op = if conj { gamma_tilde } else { gamma };
        let parts: Vec<Element> = (0..4)
            .map(|b| {
                let target = Element::generator(pres, 2 * b + usize::from(conj));
                &op.entry(a, b) * &target
            })
            .collect();
        Element::sum(pres, parts.iter())
    })
}

/// so(5,1) on the seven-sphere through the spin matrices and
/// `H₀ = ½(−z₀I + γ₀)`, `G₁,₀ = ½(−z₁D₁ + C₁)`, `G₀,₁ = ½(−z₂D₂ + C₂)`,
/// with `z` read through the subalgebra map.  Negative roots use the
/// conjugate pairing.
pub fn s7_action(deformation: Deformation, variant: Variant) -> Action {
    let p = presentation(AlgebraKind::S7, deformation);
    let cl = CliffordSet::new(deformation);
    let iota = subalgebra(deformation);
    let s4 = iota.source().clone();
    let z = |name: &str| iota.apply(&Element::named(&s4, name).expect("z name"));
    let half = Scalar::frac(1, 2);
    let mhalf = Scalar::frac(-1, 2);
    let mut members = Vec::new();
    let mut push = |g: Generator, op: SpinorOperator| {
        let tilde = op.conjugated(&cl);
        members.push((g, spinor_derivation(&g.to_string(), g.root(), &p, &op, &tilde)));
    };
    push(Generator::H(1), SpinorOperator::scalar(&p, cl.spin_h(1)));
    push(Generator::H(2), SpinorOperator::scalar(&p, cl.spin_h(2)));
    for r in [(1, 1), (1, -1), (1, 0), (0, 1)] {
        let m = match variant {
            Variant::Corrected => cl.spin_e(r),
            Variant::Literal => cl.printed_spin_e(r),
        };
        push(Generator::E(r.0, r.1), SpinorOperator::scalar(&p, m));
    }
    for (g, k, name) in [(Generator::H0, 0, "z0"), (Generator::G(1, 0), 1, "z1"), (Generator::G(0, 1), 2, "z2")] {
        let (dm, cm) = match variant {
            Variant::Corrected => cl.conformal_matrices(k),
            Variant::Literal => cl.printed_conformal_matrices(k),
        };
        let op = SpinorOperator {
            terms: vec![(z(name).scale(&mhalf), dm), (Element::scalar(&p, half.clone()), cm)],
        };
        push(g, op);
    }
    conjugates(&mut members);
    Action { kind: AlgebraKind::S7, deformation, pres: p, members }
}

/// Compares `g` on the two spheres through the subalgebra map: the
/// seven-sphere derivation applied to `ι(z)` must equal `ι` of the
/// four-sphere derivation applied to `z`, for each function generator `z`.
/// Returns the generators on which they differ.
pub fn compatibility_failures(s4: &Action, s7: &Action, g: Generator) -> Vec<String> {
    let iota = subalgebra(s4.deformation);
    let src = iota.source().clone();
    let (d4, d7) = (s4.get(g), s7.get(g));
    (0..src.function_count())
        .filter(|&id| {
            let z = Element::generator(&src, id);
            let z4 = Element::generator(s4.presentation(), id);
            d7.apply(&iota.apply(&z)) != iota.apply(&d4.apply(&z4))
        })
        .map(|id| format!("{} on {}", g, src.generator_name(id)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn compatibility_failures(s4: &Action, s7: &Action) -> Vec<String> {
        s4.members().iter().flat_map(|(g, _)| super::compatibility_failures(s4, s7, *g)).collect()
    }

    #[test]
    fn corrected_actions_are_well_defined_and_compatible() {
        for d in [Deformation::Formal, Deformation::Classical] {
            let s4 = s4_action(d, Variant::Corrected);
            let s7 = s7_action(d, Variant::Corrected);
            assert_eq!(s4.members().len(), 15);
            assert_eq!(s7.members().len(), 15);
            for a in [&s4, &s7] {
                for (g, der) in a.members() {
                    let bad = der.well_definedness_failures();
                    assert!(bad.is_empty(), "{:?} {}: {:?}", a.kind, g, bad);
                }
            }
            let bad = compatibility_failures(&s4, &s7);
            assert!(bad.is_empty(), "{:?}", bad);
        }
    }

    #[test]
    fn printed_short_root_operators_fail() {
        let d = Deformation::Formal;
        let s4 = s4_action(d, Variant::Literal);
        let s7 = s7_action(d, Variant::Literal);
        for g in [Generator::G(1, 0), Generator::G(0, 1)] {
            assert!(!s4.get(g).well_definedness_failures().is_empty(), "four-sphere {}", g);
        }
        for g in [Generator::E(1, 0), Generator::E(0, 1)] {
            assert!(!s7.get(g).well_definedness_failures().is_empty(), "seven-sphere {}", g);
        }
        // The printed conformal operators respect the relations of the
        // seven-sphere but disagree with the four-sphere action through the
        // subalgebra map.
        let corrected = s4_action(d, Variant::Corrected);
        let bad = compatibility_failures(&corrected, &s7);
        for g in ["G(1,0)", "G(0,1)"] {
            assert!(bad.iter().any(|b| b.starts_with(g)), "{} should be incompatible: {:?}", g, bad);
        }
        for g in [Generator::H(1), Generator::E(1, 1), Generator::E(1, -1), Generator::H0] {
            assert!(s7.get(g).well_definedness_failures().is_empty(), "seven-sphere {}", g);
        }
    }

    #[test]
    fn so5_preserves_the_connection_form() {
        use crate::geometry::build_psi;
        let d = Deformation::Formal;
        let s7 = s7_action(d, Variant::Corrected);
        let psi = build_psi(d);
        let omega = psi.dagger().matmul(&psi.d());
        for g in Generator::so5() {
            let img = s7.get(g).apply_matrix(&omega);
            assert!(img.is_zero(), "{}: {:?}", g, img.first_difference(&omega.scale(&Scalar::zero())));
        }
    }
}
