//! The basic instanton: gauge potential `ω = Ψ†dΨ`, its curvature, the five
//! conformal deformations `δᵢω`, `δᵢα`, `δᵢF`, and their local form on the
//! chart.
//!
//! Every check returns `Ok(())` or the first offending entry, rendered.

mod chart;
mod first_order;

pub use chart::ChartData;
pub use first_order::FirstOrder;

use crate::algebra::{Deformation, Element, Weight, WeightClass};
use crate::geometry::{build_projection, build_psi, subalgebra, AlgebraMap, CliffordSet};
use crate::matrixdga::{MatrixForm, ScalarMatrix};
use crate::scalar::Scalar;
use crate::symmetry::{s7_action, Action, Generator, Variant};

/// The generators `H₀, G₊₁,₀, G₀,₊₁, G₋₁,₀, G₀,₋₁` behind the five
/// conformal directions `i = 0..4`.
pub const DIRECTIONS: [Generator; 5] =
    [Generator::H0, Generator::G(1, 0), Generator::G(0, 1), Generator::G(-1, 0), Generator::G(0, -1)];

/// Four-sphere generator names `z⁽ⁱ⁾` of the five directions.
pub const DIRECTION_NAMES: [&str; 5] = ["z0", "z1", "z2", "z1'", "z2'"];

/// Compares two matrices, reporting the first differing entry.
pub fn expect_equal(label: &str, lhs: &MatrixForm, rhs: &MatrixForm) -> Result<(), String> {
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some(d) => Err(format!("{}: {}", label, d)),
    }
}

/// Reports the first non-zero entry.
pub fn expect_zero(label: &str, m: &MatrixForm) -> Result<(), String> {
    for (i, j, e) in m.entries() {
        if !e.is_zero() {
            return Err(format!("{}: entry ({},{}) = {}", label, i + 1, j + 1, e));
        }
    }
    Ok(())
}

/// `ω`, `F₀` in both pictures, and the Dirac data, for one deformation.
#[derive(Clone, Debug)]
pub struct GaugeData {
    pub deformation: Deformation,
    /// `Ψ`, `4×2` over the seven-sphere.
    pub psi: MatrixForm,
    /// `ω = Ψ†dΨ`.
    pub omega: MatrixForm,
    /// `F₀ = dω + ω²`, the equivariant picture.
    pub curvature: MatrixForm,
    /// `p = ΨΨ†` over the four-sphere.
    pub p: MatrixForm,
    pub dp: MatrixForm,
    /// `F₀ = p·dp·dp`, the projected picture over the four-sphere.
    pub projected_curvature: MatrixForm,
    pub clifford: CliffordSet,
    pub iota: AlgebraMap,
}

impl GaugeData {
    pub fn new(deformation: Deformation) -> GaugeData {
        let psi = build_psi(deformation);
        let omega = gauge_potential(&psi);
        let curvature = curvature(&omega);
        let p = build_projection(deformation);
        let dp = p.d();
        let projected_curvature = p.matmul(&dp).matmul(&dp);
        GaugeData {
            deformation,
            psi,
            omega,
            curvature,
            p,
            dp,
            projected_curvature,
            clifford: CliffordSet::new(deformation),
            iota: subalgebra(deformation),
        }
    }

    /// `z⁽ⁱ⁾` in the four-sphere.
    pub fn z(&self, i: usize) -> Element {
        Element::named(self.iota.source(), DIRECTION_NAMES[i]).expect("z names")
    }

    /// `z⁽ⁱ⁾` read in the seven-sphere.
    pub fn z7(&self, i: usize) -> Element {
        self.iota.apply(&self.z(i))
    }

    /// `γᵢ` with `γ₃ = γ₁*`, `γ₄ = γ₂*`.
    pub fn gamma(&self, i: usize) -> &ScalarMatrix {
        self.clifford.direction(i)
    }

    /// `tr ω = 0`, `ω† = −ω`, and every entry has weight `(0,0)`.
    pub fn check_gauge_potential(&self) -> Result<(), String> {
        let tr = self.omega.trace();
        if !tr.is_zero() {
            return Err(format!("tr ω = {}", tr));
        }
        expect_equal("ω† = −ω", &self.omega.dagger(), &self.omega.neg())?;
        for (i, j, e) in self.omega.entries() {
            match e.weight_of() {
                WeightClass::Zero | WeightClass::Homogeneous(Weight(0, 0)) => {}
                other => return Err(format!("ω({},{}) has weight {:?}", i + 1, j + 1, other)),
            }
        }
        Ok(())
    }

    /// `dF₀ + ωF₀ − F₀ω`.
    pub fn bianchi_defect(&self) -> MatrixForm {
        let f = &self.curvature;
        f.d().add(&self.omega.matmul(f)).sub(&f.matmul(&self.omega))
    }

    /// `tr F₀ = 0`.
    pub fn check_curvature_trace(&self) -> Result<(), String> {
        let tr = self.curvature.trace();
        if tr.is_zero() {
            Ok(())
        } else {
            Err(format!("tr F₀ = {}", tr))
        }
    }

    /// `p·dp·dp·p = p·dp·dp`: the projected curvature is already
    /// right-projected.
    pub fn check_projected_curvature(&self) -> Result<(), String> {
        let f = &self.projected_curvature;
        expect_equal("p dp dp p = p dp dp", &f.matmul(&self.p), f)?;
        expect_zero("p dp p", &self.p.matmul(&self.dp).matmul(&self.p))
    }

    /// The two pictures of `F₀` agree: `ι(p dp dp) = Ψ F₀ Ψ†`.
    pub fn check_curvature_pictures(&self) -> Result<(), String> {
        let lhs = self.iota.apply_matrix(&self.projected_curvature);
        let rhs = self.psi.matmul(&self.curvature).matmul(&self.psi.dagger());
        expect_equal("ι(p dp dp) = Ψ F₀ Ψ†", &lhs, &rhs)
    }

    /// `δᵢω`: the generator of direction `i` applied entrywise to `ω`.
    pub fn delta_omega(&self, action: &Action, i: usize) -> MatrixForm {
        action.get(DIRECTIONS[i]).apply_matrix(&self.omega)
    }

    /// The closed forms `−z⁽ⁱ⁾ω − ½dz⁽ⁱ⁾I₂ + Ψ†γᵢdΨ` for `i = 0, 1, 2` and
    /// `−ωz⁽ⁱ⁾ − ½dz⁽ⁱ⁾I₂ + Ψ†γᵢdΨ` for `i = 3, 4`.
    pub fn delta_omega_formula(&self, i: usize) -> MatrixForm {
        let s7 = self.psi.presentation();
        let z = self.z7(i);
        let z_omega = if i < 3 { self.omega.mul_element_left(&z) } else { self.omega.mul_element_right(&z) };
        let dz = MatrixForm::identity(s7, 2).mul_element_right(&z.differential()).scale(&Scalar::frac(-1, 2));
        let gamma = MatrixForm::from_scalars(s7, self.gamma(i));
        let rest = self.psi.dagger().matmul(&gamma).matmul(&self.psi.d());
        z_omega.neg().add(&dz).add(&rest)
    }

    /// `δᵢω` agrees with its closed form.
    pub fn check_delta_omega(&self, action: &Action, i: usize) -> Result<(), String> {
        expect_equal(&format!("δ{}ω", i), &self.delta_omega(action, i), &self.delta_omega_formula(i))
    }

    /// The real combinations `δ₀ω`, `½(δ₁ω + δ₃ω)`, `(δ₁ω − δ₃ω)/2i` and the
    /// same for `2, 4` are traceless and skew-hermitian.
    pub fn check_real_combinations(&self, action: &Action) -> Result<(), String> {
        let deltas: Vec<MatrixForm> = (0..5).map(|i| self.delta_omega(action, i)).collect();
        let half = Scalar::frac(1, 2);
        let inv_2i = Scalar::i().mul_ref(&Scalar::frac(-1, 2));
        let mut combos = vec![("δ0ω".to_string(), deltas[0].clone())];
        for (a, b) in [(1, 3), (2, 4)] {
            combos.push((format!("½(δ{}ω+δ{}ω)", a, b), deltas[a].add(&deltas[b]).scale(&half)));
            combos.push((format!("(δ{}ω−δ{}ω)/2i", a, b), deltas[a].sub(&deltas[b]).scale(&inv_2i)));
        }
        for (label, m) in combos {
            let tr = m.trace();
            if !tr.is_zero() {
                return Err(format!("tr {} = {}", label, tr));
            }
            expect_equal(&format!("{} skew-hermitian", label), &m.dagger(), &m.neg())?;
        }
        Ok(())
    }

    /// `Λᵢ` with `z⁽ⁱ⁾Ψ = ΛᵢΨz⁽ⁱ⁾`: `λ^{H₂}, λ^{−H₁}, λ^{−H₂}, λ^{H₁}` for
    /// `i = 1..4` and `I` for the central `z₀`.
    pub fn psi_twist(&self, i: usize) -> ScalarMatrix {
        match i {
            0 => ScalarMatrix::identity(4),
            1 => self.clifford.lambda_h(2, 1),
            2 => self.clifford.lambda_h(1, -1),
            3 => self.clifford.lambda_h(2, -1),
            4 => self.clifford.lambda_h(1, 1),
            _ => panic!("conformal direction {} out of range", i),
        }
    }

    /// `Mᵢ` with `z⁽ⁱ⁾Ψ† = Ψ†Mᵢz⁽ⁱ⁾`, the inverse of [`Self::psi_twist`].
    pub fn psi_dagger_twist(&self, i: usize) -> ScalarMatrix {
        let t = self.psi_twist(i);
        let d: Vec<Scalar> = t.diagonal().expect("diagonal twist").iter().map(|c| Scalar::one().checked_div(c).expect("unit")).collect();
        ScalarMatrix::diag(&d)
    }

    /// The commutation of `z⁽ⁱ⁾` and `dz⁽ⁱ⁾` with `Ψ` and `Ψ†` through the
    /// given twists.
    pub fn z_psi_failures(&self, i: usize, left: &ScalarMatrix, right: &ScalarMatrix) -> Vec<String> {
        let s7 = self.psi.presentation();
        let (l, r) = (MatrixForm::from_scalars(s7, left), MatrixForm::from_scalars(s7, right));
        let pd = self.psi.dagger();
        let mut bad = Vec::new();
        let z = self.z7(i);
        for (label, x) in [("z", z.clone()), ("dz", z.differential())] {
            if self.psi.mul_element_left(&x) != l.matmul(&self.psi).mul_element_right(&x) {
                bad.push(format!("{}{} Ψ", label, DIRECTION_NAMES[i]));
            }
            if pd.mul_element_left(&x) != pd.matmul(&r).mul_element_right(&x) {
                bad.push(format!("{}{} Ψ†", label, DIRECTION_NAMES[i]));
            }
        }
        bad
    }

    /// `z⁽ⁱ⁾Ψ = ΛᵢΨz⁽ⁱ⁾` and `z⁽ⁱ⁾Ψ† = Ψ†Mᵢz⁽ⁱ⁾`, and the same for `dz⁽ⁱ⁾`.
    pub fn check_z_psi(&self, i: usize) -> Result<(), String> {
        let bad = self.z_psi_failures(i, &self.psi_twist(i), &self.psi_dagger_twist(i));
        if bad.is_empty() {
            Ok(())
        } else {
            Err(format!("commutation fails for {}", bad.join(", ")))
        }
    }

    /// `Ψ(dz⁽ⁱ⁾)Ψ† = p·Mᵢ·dz⁽ⁱ⁾` over the four-sphere.
    pub fn psi_dz_psi_dagger(&self, i: usize) -> MatrixForm {
        let s4 = self.p.presentation();
        self.p.matmul(&MatrixForm::from_scalars(s4, &self.psi_dagger_twist(i))).mul_element_right(&self.z(i).differential())
    }

    /// `Ψ(dz⁽ⁱ⁾)Ψ†` computed in the seven-sphere matches its four-sphere
    /// form.
    pub fn check_psi_dz_psi_dagger(&self, i: usize) -> Result<(), String> {
        let direct = self.psi.mul_element_right(&self.z7(i).differential()).matmul(&self.psi.dagger());
        expect_equal(&format!("Ψ dz{} Ψ†", i), &direct, &self.iota.apply_matrix(&self.psi_dz_psi_dagger(i)))
    }

    /// `δᵢα = pγᵢ(dp)p − ½Ψ(dz⁽ⁱ⁾)Ψ†` over the four-sphere.
    pub fn delta_alpha(&self, i: usize) -> MatrixForm {
        let gamma = MatrixForm::from_scalars(self.p.presentation(), self.gamma(i));
        let first = self.p.matmul(&gamma).matmul(&self.dp).matmul(&self.p);
        first.sub(&self.psi_dz_psi_dagger(i).scale(&Scalar::frac(1, 2)))
    }

    /// `p·δᵢα = δᵢα·p = δᵢα`.
    pub fn check_delta_alpha(&self, i: usize) -> Result<(), String> {
        let a = self.delta_alpha(i);
        expect_equal(&format!("p δ{}α = δ{}α", i, i), &self.p.matmul(&a), &a)?;
        expect_equal(&format!("δ{}α p = δ{}α", i, i), &a.matmul(&self.p), &a)
    }

    /// `δᵢF = p·d(δᵢα)` as an endomorphism of `p(A⁴)`, that is `p·d(δᵢα)·p`.
    pub fn delta_f(&self, i: usize) -> MatrixForm {
        self.p.matmul(&self.delta_alpha(i).d()).matmul(&self.p)
    }

    /// `−2z⁽ⁱ⁾MᵢF₀` over the four-sphere, with `Mᵢ` the twist of
    /// [`Self::psi_dagger_twist`]: `λ^{−H₂}, λ^{H₁}, λ^{H₂}, λ^{−H₁}`.
    pub fn delta_f_formula(&self, i: usize) -> MatrixForm {
        self.delta_f_formula_with(i, &self.psi_dagger_twist(i))
    }

    /// `−2z⁽ⁱ⁾·twist·F₀`.
    pub fn delta_f_formula_with(&self, i: usize, twist: &ScalarMatrix) -> MatrixForm {
        let s4 = self.p.presentation();
        let twist = MatrixForm::from_scalars(s4, twist);
        twist.matmul(&self.projected_curvature).mul_element_left(&self.z(i)).scale(&Scalar::integer(-2))
    }

    /// `δᵢF` agrees with its closed form.
    pub fn check_delta_f(&self, i: usize) -> Result<(), String> {
        expect_equal(&format!("δ{}F", i), &self.delta_f(i), &self.delta_f_formula(i))
    }

    /// `p(dp·γᵢ + γᵢ·dp)(dp)p`, over the four-sphere.
    pub fn crucial_defect(&self, i: usize) -> MatrixForm {
        let gamma = MatrixForm::from_scalars(self.p.presentation(), self.gamma(i));
        let inner = self.dp.matmul(&gamma).add(&gamma.matmul(&self.dp));
        self.p.matmul(&inner).matmul(&self.dp).matmul(&self.p)
    }
}

/// `ω = Ψ†dΨ`.
pub fn gauge_potential(psi: &MatrixForm) -> MatrixForm {
    psi.dagger().matmul(&psi.d())
}

/// `F = dω + ω²`.
pub fn curvature(omega: &MatrixForm) -> MatrixForm {
    omega.d().add(&omega.matmul(omega))
}

/// The so(5,1) action on the seven-sphere used for the deformations.
pub fn conformal_action(deformation: Deformation) -> Action {
    s7_action(deformation, Variant::Corrected)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauge_potential_and_curvature() {
        for d in [Deformation::Formal, Deformation::Classical] {
            let g = GaugeData::new(d);
            g.check_gauge_potential().unwrap();
            g.check_curvature_trace().unwrap();
            expect_zero("bianchi", &g.bianchi_defect()).unwrap();
            g.check_projected_curvature().unwrap();
            g.check_curvature_pictures().unwrap();
        }
    }

    #[test]
    fn deformations_match_closed_forms() {
        for d in [Deformation::Formal, Deformation::Classical] {
            let g = GaugeData::new(d);
            let a = conformal_action(d);
            for i in 0..5 {
                g.check_delta_omega(&a, i).unwrap();
                expect_zero("crucial", &g.crucial_defect(i)).unwrap();
                g.check_z_psi(i).unwrap();
                g.check_psi_dz_psi_dagger(i).unwrap();
                g.check_delta_alpha(i).unwrap();
                g.check_delta_f(i).unwrap();
            }
            g.check_real_combinations(&a).unwrap();
        }
    }

    /// The commonly quoted twists `z₁Ψ = λ^{−H₂}Ψz₁`, `z₂Ψ† = Ψ†λ^{−H₁}z₂`,
    /// `δ₁F = −2z₁λ^{H₂}F₀` and `δ₃F = −2z₁*λ^{−H₂}F₀` fail for formal `q`
    /// and hold classically.
    #[test]
    fn quoted_twists_fail() {
        let g = GaugeData::new(Deformation::Formal);
        let cl = &g.clifford;
        let z1 = g.z_psi_failures(1, &cl.lambda_h(2, -1), &cl.lambda_h(2, -1));
        assert_eq!(z1, vec!["zz1 Ψ".to_string(), "dzz1 Ψ".to_string()]);
        let z2 = g.z_psi_failures(2, &cl.lambda_h(1, -1), &cl.lambda_h(1, -1));
        assert_eq!(z2, vec!["zz2 Ψ†".to_string(), "dzz2 Ψ†".to_string()]);
        assert_ne!(g.delta_f(1), g.delta_f_formula_with(1, &cl.lambda_h(2, 1)));
        assert_ne!(g.delta_f(3), g.delta_f_formula_with(3, &cl.lambda_h(2, -1)));
        let c = GaugeData::new(Deformation::Classical);
        assert_eq!(c.delta_f(1), c.delta_f_formula_with(1, &c.clifford.lambda_h(2, 1)));
    }

    #[test]
    fn first_order_arithmetic_drops_t_squared() {
        let g = GaugeData::new(Deformation::Formal);
        let x = FirstOrder::new(g.curvature.clone(), g.omega.clone());
        let sq = x.matmul(&x);
        assert_eq!(sq.base, g.curvature.matmul(&g.curvature));
        assert_eq!(sq.tangent, g.curvature.matmul(&g.omega).add(&g.omega.matmul(&g.curvature)));
        let c = FirstOrder::constant(g.omega.clone());
        assert!(c.matmul(&c).tangent.is_zero());
    }
}
