//! The instanton on the chart, through the local section
//! `Ψ = ρ(I₂; 𝒵)u` with `u = [[u₁, −u₂*], [u₂, u₁*]]` and
//! `𝒵 = [[ζ₁*, ζ₂*], [−μζ₂, μ̄ζ₁]]`.

use std::sync::Arc;

use crate::algebra::{Element, Presentation};
use crate::geometry::hodge::BASIS_2FORMS;
use crate::geometry::presentations::chart_ids::*;
use crate::geometry::{local_section, stereographic, AlgebraMap, HodgeError, HodgeStar};
use crate::matrixdga::MatrixForm;
use crate::scalar::Scalar;
use crate::symmetry::Action;

use super::{expect_equal, FirstOrder, GaugeData};

/// Chart-side data derived from a [`GaugeData`].
#[derive(Clone, Debug)]
pub struct ChartData {
    pub pres: Arc<Presentation>,
    pub section: AlgebraMap,
    pub stereographic: AlgebraMap,
    pub hodge: HodgeStar,
    /// The unitary `u`.
    pub u: MatrixForm,
    /// The matrix `𝒵`.
    pub zmat: MatrixForm,
    /// `ω` pulled back along the local section.
    pub omega: MatrixForm,
    /// `uωu†`.
    pub local_omega: MatrixForm,
    /// `uF₀u†`.
    pub local_curvature: MatrixForm,
}

fn g(p: &Arc<Presentation>, id: usize) -> Element {
    Element::generator(p, id)
}

impl ChartData {
    pub fn new(gauge: &GaugeData) -> Result<ChartData, HodgeError> {
        let d = gauge.deformation;
        let section = local_section(d);
        let pres = section.target().clone();
        let hodge = HodgeStar::new(d)?;
        let mu = d.q(2);
        let u = MatrixForm::from_elements(&pres, 2, 2, vec![g(&pres, U1), -g(&pres, U2C), g(&pres, U2), g(&pres, U1C)]);
        let zmat = MatrixForm::from_elements(
            &pres,
            2,
            2,
            vec![g(&pres, ZETA1C), g(&pres, ZETA2C), g(&pres, ZETA2).scale(&-mu.clone()), g(&pres, ZETA1).scale(&mu.conj())],
        );
        let omega = section.apply_matrix(&gauge.omega);
        let ud = u.dagger();
        let local_omega = u.matmul(&omega).matmul(&ud);
        let local_curvature = u.matmul(&section.apply_matrix(&gauge.curvature)).matmul(&ud);
        Ok(ChartData { pres, section, stereographic: stereographic(d), hodge, u, zmat, omega, local_omega, local_curvature })
    }

    fn rho(&self) -> Element {
        g(&self.pres, RHO)
    }

    fn named(&self, name: &str) -> Element {
        Element::named(&self.pres, name).expect("chart generator name")
    }

    /// `uu† = u†u = I₂`.
    pub fn check_unitary(&self) -> Result<(), String> {
        let id = MatrixForm::identity(&self.pres, 2);
        expect_equal("u u† = I", &self.u.matmul(&self.u.dagger()), &id)?;
        expect_equal("u† u = I", &self.u.dagger().matmul(&self.u), &id)
    }

    /// `uωu† = ρ⁻¹dρ·I + ρ²𝒵†d𝒵 + (du)u†`.
    pub fn check_local_potential(&self) -> Result<(), String> {
        let sigma = g(&self.pres, SIGMA);
        let rho = self.rho();
        let log_drho = MatrixForm::identity(&self.pres, 2).mul_element_right(&(&sigma * &rho.differential()));
        let zz = self.zmat.dagger().matmul(&self.zmat.d()).mul_element_left(&rho.pow(2));
        let du = self.u.d().matmul(&self.u.dagger());
        expect_equal("u ω u†", &self.local_omega, &log_drho.add(&zz).add(&du))
    }

    /// `ρ⁴d𝒵†d𝒵`.
    pub fn rho4_dz_dz(&self) -> MatrixForm {
        self.zmat.dagger().d().matmul(&self.zmat.d()).mul_element_left(&self.rho().pow(4))
    }

    /// The explicit local curvature
    /// `ρ⁴[[dζ₁dζ₁* − dζ₂dζ₂*, 2dζ₁dζ₂*], [2dζ₂dζ₁*, dζ₂dζ₂* − dζ₁dζ₁*]]`.
    ///
    /// The `(2,2)` entry is often printed as `−dζ₁dζ₁* − dζ₂dζ₂*`, which is
    /// anti-self-dual and contradicts the vanishing trace; `printed = true`
    /// builds that variant.
    pub fn explicit_curvature(&self, printed: bool) -> MatrixForm {
        let dd = |a: &str, b: &str| &self.named(&format!("d({})", a)) * &self.named(&format!("d({})", b));
        let two = Scalar::integer(2);
        let z11 = dd("zeta1", "zeta1'");
        let z22 = dd("zeta2", "zeta2'");
        let corner = if printed { -(&z11 + &z22) } else { &z22 - &z11 };
        let entries = vec![&z11 - &z22, dd("zeta1", "zeta2'").scale(&two), dd("zeta2", "zeta1'").scale(&two), corner];
        MatrixForm::from_elements(&self.pres, 2, 2, entries).mul_element_left(&self.rho().pow(4))
    }

    /// `uF₀u† = ρ⁴d𝒵†d𝒵`, and both equal the explicit matrix.
    pub fn check_local_curvature(&self) -> Result<(), String> {
        expect_equal("u F₀ u† = ρ⁴ d𝒵† d𝒵", &self.local_curvature, &self.rho4_dz_dz())?;
        expect_equal("u F₀ u† explicit", &self.local_curvature, &self.explicit_curvature(false))
    }

    /// Every entry of `m` is fixed by `∗θ`.
    pub fn self_duality(&self, label: &str, m: &MatrixForm) -> Result<(), String> {
        for (i, j, e) in m.entries() {
            let star = self.hodge.hodge2(e).map_err(|err| format!("{} ({},{}): {}", label, i + 1, j + 1, err))?;
            if star != *e {
                return Err(format!("{} ({},{}): ∗({}) = {}", label, i + 1, j + 1, e, star));
            }
        }
        Ok(())
    }

    /// `∗² = id` on the six basis 2-forms.
    pub fn check_hodge_involution(&self) -> Result<(), String> {
        for bits in BASIS_2FORMS {
            let x = self.hodge.basis_form(bits);
            let twice = self.hodge.hodge2(&self.hodge.hodge2(&x).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            if twice != x {
                return Err(format!("∗∗({}) = {}", x, twice));
            }
        }
        Ok(())
    }

    /// `u(δ₀ω)u†` computed from the seven-sphere action.
    pub fn local_delta0(&self, gauge: &GaugeData, action: &Action) -> MatrixForm {
        let delta = self.section.apply_matrix(&gauge.delta_omega(action, 0));
        self.u.matmul(&delta).matmul(&self.u.dagger())
    }

    /// `u(δ₀ω)u† = −2ρdρ − 2ρ⁴𝒵†d𝒵`.
    pub fn check_local_delta0(&self, gauge: &GaugeData, action: &Action) -> Result<(), String> {
        let rho = self.rho();
        let m2 = Scalar::integer(-2);
        let a = MatrixForm::identity(&self.pres, 2).mul_element_right(&(&rho * &rho.differential())).scale(&m2);
        let b = self.zmat.dagger().matmul(&self.zmat.d()).mul_element_left(&rho.pow(4)).scale(&m2);
        expect_equal("u δ₀ω u†", &self.local_delta0(gauge, action), &a.add(&b))
    }

    /// `uF_{t,0}u†` for `∇ = ∇₀ + tδ₀ω`, at first order in `t`.
    pub fn perturbed_curvature(&self, gauge: &GaugeData, action: &Action) -> FirstOrder {
        let delta = self.section.apply_matrix(&gauge.delta_omega(action, 0));
        let conn = FirstOrder::new(self.omega.clone(), delta);
        conn.curvature().sandwich(&self.u, &self.u.dagger())
    }

    /// `uF_{t,0}u† = F₀ + 2t(1 − 2ρ²)F₀ mod t²`, and the result is
    /// self-dual at both orders.
    pub fn check_rescaled_curvature(&self, gauge: &GaugeData, action: &Action) -> Result<(), String> {
        let ft = self.perturbed_curvature(gauge, action);
        expect_equal("order t⁰", &ft.base, &self.local_curvature)?;
        let factor = (&Element::one(&self.pres) - &self.rho().pow(2).scale(&Scalar::integer(2))).scale(&Scalar::integer(2));
        expect_equal("order t¹", &ft.tangent, &self.local_curvature.mul_element_left(&factor))?;
        self.self_duality("F_t,0 order t", &ft.tangent)
    }

    /// `δᵢF` pulled back to the chart is self-dual.
    pub fn check_delta_f_self_dual(&self, gauge: &GaugeData, i: usize) -> Result<(), String> {
        let m = self.stereographic.apply_matrix(&gauge.delta_f(i));
        self.self_duality(&format!("δ{}F", i), &m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Deformation;
    use crate::instanton::conformal_action;

    #[test]
    fn local_instanton() {
        for d in [Deformation::Formal, Deformation::Classical] {
            let gd = GaugeData::new(d);
            let c = ChartData::new(&gd).unwrap();
            let a = conformal_action(d);
            c.check_unitary().unwrap();
            c.check_local_potential().unwrap();
            c.check_local_curvature().unwrap();
            c.check_hodge_involution().unwrap();
            c.self_duality("uF₀u†", &c.local_curvature).unwrap();
            c.check_local_delta0(&gd, &a).unwrap();
            c.check_rescaled_curvature(&gd, &a).unwrap();
            for i in 0..5 {
                c.check_delta_f_self_dual(&gd, i).unwrap();
            }
        }
    }

    #[test]
    fn quoted_corner_is_anti_self_dual() {
        let gd = GaugeData::new(Deformation::Formal);
        let c = ChartData::new(&gd).unwrap();
        let printed = c.explicit_curvature(true);
        assert_ne!(printed, c.local_curvature);
        let corner = printed.get(1, 1);
        assert_eq!(c.hodge.hodge2(corner).unwrap(), -corner);
    }
}
