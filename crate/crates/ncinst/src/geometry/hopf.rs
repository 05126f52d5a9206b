//! The matrix `Ψ` of spinor generators and the projection `p = ΨΨ†`.

use std::sync::Arc;

use crate::algebra::{Deformation, Element, Presentation};
use crate::matrixdga::{MatrixForm, ScalarMatrix};
use crate::scalar::Scalar;

use super::presentations::{presentation, AlgebraKind};

fn gen(p: &Arc<Presentation>, name: &str) -> Element {
    Element::named(p, name).expect("built-in generator name")
}

/// `Ψ` with columns `(ψ₁, ψ₂, ψ₃, ψ₄)` and `(−ψ₂*, ψ₁*, −ψ₄*, ψ₃*)`.
pub fn build_psi(deformation: Deformation) -> MatrixForm {
    let s7 = presentation(AlgebraKind::S7, deformation);
    let g = |n: &str| gen(&s7, n);
    let data = vec![
        g("psi1"),
        -g("psi2'"),
        g("psi2"),
        g("psi1'"),
        g("psi3"),
        -g("psi4'"),
        g("psi4"),
        g("psi3'"),
    ];
    MatrixForm::from_elements(&s7, 4, 2, data)
}

/// The projection over the four-sphere in its explicit form
/// `p = ½[[1+z₀, 0, z₁, −μ̄z₂*], [0, 1+z₀, z₂, μz₁*], [z₁*, z₂*, 1−z₀, 0], [−μz₂, μ̄z₁, 0, 1−z₀]]`.
pub fn build_projection(deformation: Deformation) -> MatrixForm {
    let s4 = presentation(AlgebraKind::S4, deformation);
    let g = |n: &str| gen(&s4, n);
    let one = Element::one(&s4);
    let zero = Element::zero(&s4);
    let mu = deformation.q(2);
    let mu_bar = deformation.q(-2);
    let data = vec![
        &one + &g("z0"),
        zero.clone(),
        g("z1"),
        g("z2'").scale(&-mu_bar.clone()),
        zero.clone(),
        &one + &g("z0"),
        g("z2"),
        g("z1'").scale(&mu),
        g("z1'"),
        g("z2'"),
        &one - &g("z0"),
        zero.clone(),
        g("z2").scale(&-mu.clone()),
        g("z1").scale(&mu_bar),
        zero.clone(),
        &one - &g("z0"),
    ];
    MatrixForm::from_elements(&s4, 4, 4, data).scale(&Scalar::frac(1, 2))
}

/// `Σ_{ab} ψₐ*(γ)_{ab}ψ_b` for a scalar `4×4` matrix.
pub fn spinor_quadratic(deformation: Deformation, gamma: &ScalarMatrix) -> Element {
    let s7 = presentation(AlgebraKind::S7, deformation);
    let mut parts = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            let c = gamma.get(a, b);
            if c.is_zero() {
                continue;
            }
            let w = Element::word(&s7, c.clone(), &[&format!("psi{}'", a + 1), &format!("psi{}", b + 1)]);
            parts.push(w.expect("spinor names"));
        }
    }
    Element::sum(&s7, parts.iter())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::clifford::CliffordSet;
    use crate::geometry::maps::subalgebra;

    #[test]
    fn psi_is_an_isometry_and_p_matches() {
        for d in [Deformation::Formal, Deformation::Classical] {
            let psi = build_psi(d);
            let s7 = psi.presentation().clone();
            assert_eq!(psi.dagger().matmul(&psi), MatrixForm::identity(&s7, 2));
            let p = build_projection(d);
            assert_eq!(p.matmul(&p), p);
            assert_eq!(p.dagger(), p);
            let iota = subalgebra(d);
            assert_eq!(psi.matmul(&psi.dagger()), iota.apply_matrix(&p));
        }
    }

    #[test]
    fn z_from_gamma_matches_subalgebra() {
        let d = Deformation::Formal;
        let cl = CliffordSet::new(d);
        let iota = subalgebra(d);
        let s4 = iota.source().clone();
        let psi = build_psi(d);
        for (k, name) in ["z0", "z1", "z2"].iter().enumerate() {
            let z = iota.apply(&Element::named(&s4, name).unwrap());
            assert_eq!(spinor_quadratic(d, &cl.gamma[k]), z, "{}", name);
            let m = MatrixForm::from_scalars(psi.presentation(), &cl.gamma[k]);
            let lhs = psi.dagger().matmul(&m).matmul(&psi);
            assert_eq!(lhs, MatrixForm::identity(psi.presentation(), 2).mul_element_right(&z), "{}", name);
        }
    }
}
