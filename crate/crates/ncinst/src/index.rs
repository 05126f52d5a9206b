//! Chern-character arithmetic for the topological charge and the moduli
//! index, and a numeric evaluation of the charge from the local curvature.
//!
//! The operators `π_D(chₖ)` are inputs here: `π_D(ch₂)` is stored as its
//! rational multiple of `γ₅`, with `γ₅² = 1` used symbolically.

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{Deformation, Element};
use crate::geometry::presentations::chart_ids::RHO;
use crate::instanton::{ChartData, GaugeData};
use crate::matrixdga::MatrixForm;
use crate::scalar::{rat, Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IndexError {
    #[error("not a projection: {0}")]
    NotAProjection(String),
    #[error("unsupported Chern data: {0}")]
    Unsupported(String),
    #[error("density is not radial: {0}")]
    NotRadial(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
}

/// `(ch₀, ch₁ = 0?, π_D(ch₂)/γ₅)` of a bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChernVector {
    pub ch0: Rational,
    pub ch1_is_zero: bool,
    pub ch2_gamma5_coeff: Rational,
}

impl ChernVector {
    pub fn new(ch0: i64, ch2_gamma5_coeff: Rational) -> Self {
        ChernVector { ch0: Rational::from_integer(ch0), ch1_is_zero: true, ch2_gamma5_coeff }
    }

    /// The basic instanton bundle: rank 2, `π_D(ch₂(p)) = 3γ₅`.
    pub fn instanton() -> Self {
        Self::new(2, rat(3, 1))
    }

    /// The spinor bundle `S⁻`: rank 2, `π_D(ch₂) = −3γ₅`, the charge `−1`
    /// instanton bundle.
    pub fn spinor_minus() -> Self {
        Self::new(2, rat(-3, 1))
    }

    /// The adjoint bundle: rank 3, `π_D(ch₂) = 4·(3γ₅)`.
    pub fn adjoint() -> Self {
        Self::new(3, rat(12, 1))
    }

    /// A trivial bundle of the given rank.
    pub fn trivial(rank: i64) -> Self {
        Self::new(rank, Rational::zero())
    }

    /// `π_D(ch₂)` in units of `3γ₅`.
    pub fn ch2_units(&self) -> Rational {
        self.ch2_gamma5_coeff / rat(3, 1)
    }

    /// Direct sum: every component adds.
    pub fn direct_sum(&self, o: &ChernVector) -> ChernVector {
        ChernVector {
            ch0: self.ch0 + o.ch0,
            ch1_is_zero: self.ch1_is_zero && o.ch1_is_zero,
            ch2_gamma5_coeff: self.ch2_gamma5_coeff + o.ch2_gamma5_coeff,
        }
    }

    /// Tensor product, valid when both `ch₁` vanish:
    /// `ch₀ = ch₀·ch₀′`, `ch₂ = ch₀·ch₂′ + ch₂·ch₀′`.
    pub fn tensor(&self, o: &ChernVector) -> Result<ChernVector, IndexError> {
        if !self.ch1_is_zero || !o.ch1_is_zero {
            return Err(IndexError::Unsupported("tensor product with non-vanishing ch₁".into()));
        }
        Ok(ChernVector {
            ch0: self.ch0 * o.ch0,
            ch1_is_zero: true,
            ch2_gamma5_coeff: self.ch0 * o.ch2_gamma5_coeff + self.ch2_gamma5_coeff * o.ch0,
        })
    }
}

/// Fixed analytic inputs of the local index formula on the four-sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexConstants {
    /// `⨍1 = Tr_ω|D|⁻⁴ = 1/3`, from the Dixmier trace `8/m!` on the
    /// `m`-sphere.
    pub integral_of_one: Rational,
    /// `res tr(3γ₅²|D|^{−4−2z}) = 6·Tr_ω|D|⁻⁴ = 2`.
    pub residue: Rational,
    /// `index(D) = 0` for the untwisted Dirac operator.
    pub dirac_index: Rational,
}

impl Default for IndexConstants {
    fn default() -> Self {
        IndexConstants { integral_of_one: rat(1, 3), residue: rat(2, 1), dirac_index: Rational::zero() }
    }
}

/// `Top = ⨍γ₅π_D(ch₂(p))` for `π_D(ch₂(p)) = c·γ₅` with `ch₁ = 0`:
/// `(c/3)·3·⨍1`.
pub fn top_charge(ch2_gamma5_coeff: Rational) -> Rational {
    let k = IndexConstants::default();
    ch2_gamma5_coeff / rat(3, 1) * rat(3, 1) * k.integral_of_one
}

/// The index of the Dirac operator with coefficients in `S⁻ ⊗ ad`:
/// `ch₀(S⁻ ⊗ ad)·index(D) + ½(ch₀(S⁻)·k(ad) + k(S⁻)·ch₀(ad))·res`, with
/// `k` the `ch₂` components in units of `3γ₅`.
pub fn moduli_index(spinor: &ChernVector, adjoint: &ChernVector) -> Result<Rational, IndexError> {
    if !spinor.ch1_is_zero || !adjoint.ch1_is_zero {
        return Err(IndexError::Unsupported("non-vanishing ch₁".into()));
    }
    let k = IndexConstants::default();
    let product = spinor.tensor(adjoint)?;
    let mixed = spinor.ch0 * adjoint.ch2_units() + spinor.ch2_units() * adjoint.ch0;
    Ok(product.ch0 * k.dirac_index + rat(1, 2) * mixed * k.residue)
}

/// A formal Chern cycle `chₖ(e) = c·Σ (e − ½)_{i₀i₁} ⊗ e_{i₁i₂} ⊗ ⋯ ⊗ e_{i₂ₖi₀}`,
/// kept as the list of non-zero elementary tensors.
#[derive(Clone, Debug)]
pub struct ChernChain {
    pub k: usize,
    pub coefficient: Rational,
    pub tensors: Vec<Vec<Element>>,
}

/// `(−1)ᵏ(2k)!/k!`.
pub fn chern_coefficient(k: usize) -> Rational {
    let fact = |n: usize| (1..=n as i64).product::<i64>();
    let sign = if k % 2 == 0 { 1 } else { -1 };
    Rational::from_integer(sign * fact(2 * k) / fact(k))
}

/// `ch₀(e) = tr e` as an element.
pub fn chern_zero(e: &MatrixForm) -> Result<Element, IndexError> {
    check_projection(e)?;
    Ok(e.trace())
}

/// `chₖ(e)` for `k ≥ 1` as a formal chain.
pub fn chern_chain(e: &MatrixForm, k: usize) -> Result<ChernChain, IndexError> {
    check_projection(e)?;
    if k == 0 {
        return Err(IndexError::Unsupported("use chern_zero for k = 0".into()));
    }
    let n = e.entries().map(|(i, _, _)| i).max().map_or(0, |m| m + 1);
    let pres = e.presentation();
    let shifted = e.sub(&MatrixForm::identity(pres, n).scale(&Scalar::frac(1, 2)));
    let slots = 2 * k + 1;
    let mut tensors = Vec::new();
    let mut idx = vec![0usize; slots];
    loop {
        let mut factors = Vec::with_capacity(slots);
        for s in 0..slots {
            let (a, b) = (idx[s], idx[(s + 1) % slots]);
            let m = if s == 0 { &shifted } else { e };
            factors.push(m.get(a, b).clone());
        }
        if factors.iter().all(|f| !f.is_zero()) {
            tensors.push(factors);
        }
        let mut pos = 0;
        loop {
            if pos == slots {
                return Ok(ChernChain { k, coefficient: chern_coefficient(k), tensors });
            }
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn check_projection(e: &MatrixForm) -> Result<(), IndexError> {
    if let Some(d) = e.matmul(e).first_difference(e) {
        return Err(IndexError::NotAProjection(format!("e² ≠ e at {}", d)));
    }
    if let Some(d) = e.dagger().first_difference(e) {
        return Err(IndexError::NotAProjection(format!("e† ≠ e at {}", d)));
    }
    Ok(())
}

/// The charge density `tr(F∧F) = C·ρᵏ·vol` on the chart at `q = 1`, with
/// `vol = dx₁dy₁dx₂dy₂` for `ζⱼ = xⱼ + iyⱼ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialDensity {
    pub constant: f64,
    pub rho_power: u8,
}

impl RadialDensity {
    /// The density at radius `r`, `C(1 + r²)^{−k/2}`.
    pub fn at(&self, r: f64) -> f64 {
        self.constant * (1.0 + r * r).powf(-(self.rho_power as f64) / 2.0)
    }
}

/// Extracts the radial profile of `tr(F∧F)` for a matrix of chart
/// 2-forms.  The trace must be a single term `c·ρᵏ·dζ₁dζ₁*dζ₂dζ₂*`.
pub fn radial_density(curvature: &MatrixForm) -> Result<RadialDensity, IndexError> {
    let pres = curvature.presentation();
    let density = curvature.matmul(curvature).trace();
    if density.is_zero() {
        return Ok(RadialDensity { constant: 0.0, rho_power: 0 });
    }
    let top = ["d(zeta1)", "d(zeta1')", "d(zeta2)", "d(zeta2')"]
        .iter()
        .map(|n| Element::named(pres, n).expect("chart form names"))
        .fold(Element::one(pres), |acc, x| &acc * &x);
    let (top_mono, top_coeff) = top.terms().next().map(|(m, c)| (*m, c.clone())).expect("volume form");
    let mut it = density.terms();
    let (m, c) = it.next().expect("non-zero density");
    if it.next().is_some() {
        return Err(IndexError::NotRadial(format!("{} has several terms", density)));
    }
    if m.form_bits() != top_mono.form_bits() {
        return Err(IndexError::NotRadial(format!("{} is not a top form", density)));
    }
    let rho_power = m.exponents()[RHO];
    if m.exponents().iter().enumerate().any(|(g, &e)| g != RHO && e != 0) {
        return Err(IndexError::NotRadial(format!("{} depends on more than ρ", density)));
    }
    let ratio = c.checked_div(&top_coeff).ok_or_else(|| IndexError::NotRadial("volume coefficient".into()))?;
    let ratio = ratio
        .specialize_q1()
        .as_rational()
        .ok_or_else(|| IndexError::NotRadial(format!("coefficient {} is not rational", ratio)))?;
    // dζ dζ* = −2i dx dy, so dζ₁dζ₁*dζ₂dζ₂* = −4 vol.
    let constant = (ratio * rat(-4, 1)).to_f64().expect("finite rational");
    Ok(RadialDensity { constant, rho_power })
}

/// Adaptive Simpson quadrature of `f` on `[a, b]` to absolute tolerance
/// `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, max_depth: u32) -> Result<f64, IndexError> {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64, IndexError> {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol {
            return Ok(left + right + delta / 15.0);
        }
        if depth == 0 {
            return Err(IndexError::Quadrature(format!("no convergence on [{}, {}]", a, b)));
        }
        Ok(recurse(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1)?
            + recurse(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)?)
    }
    let (fa, fb) = (f(a), f(b));
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, m, fm, whole, tol, max_depth)
}

/// `(1/8π²)∫_{ℝ⁴} density` for a radial density, using `vol(S³) = 2π²`
/// and `r = t/(1 − t)` to map `[0, ∞)` onto `[0, 1)`.
pub fn integrate_radial(density: &RadialDensity, rtol: f64) -> Result<f64, IndexError> {
    if density.constant == 0.0 {
        return Ok(0.0);
    }
    let integrand = |t: f64| {
        if t >= 1.0 {
            return 0.0;
        }
        let r = t / (1.0 - t);
        let jac = 1.0 / ((1.0 - t) * (1.0 - t));
        density.at(r) * r.powi(3) * jac
    };
    let scale = density.constant.abs();
    let radial = adaptive_simpson(&integrand, 0.0, 1.0, rtol * scale * 1e-3, 50)?;
    Ok(radial * 2.0 * std::f64::consts::PI.powi(2) / (8.0 * std::f64::consts::PI.powi(2)))
}

/// The topological charge of the basic instanton by quadrature of the
/// classical density `tr(uF₀u† ∧ uF₀u†)`.  The orientation is the one for
/// which the basic instanton has charge `+1`, `dx₁dy₁dx₂dy₂`.
pub fn numeric_charge(rtol: f64) -> Result<f64, IndexError> {
    if !(rtol > 0.0) {
        return Err(IndexError::Quadrature(format!("rtol must be positive, got {}", rtol)));
    }
    let gauge = GaugeData::new(Deformation::Classical);
    let chart = ChartData::new(&gauge).map_err(|e| IndexError::Unsupported(e.to_string()))?;
    let density = radial_density(&chart.local_curvature)?;
    integrate_radial(&density, rtol)
}

/// `∫₀^∞ r³/(1 + r²)⁴ dr = 1/12`, the closed form behind the charge.
pub fn radial_moment() -> Rational {
    rat(1, 12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_projection;
    use num_traits::One;
    use proptest::prelude::*;

    #[test]
    fn charge_and_index_from_quoted_inputs() {
        assert_eq!(top_charge(ChernVector::instanton().ch2_gamma5_coeff), Rational::one());
        assert_eq!(top_charge(Rational::zero()), Rational::zero());
        assert_eq!(top_charge(rat(6, 1)), rat(2, 1));
        let (s, ad) = (ChernVector::spinor_minus(), ChernVector::adjoint());
        assert_eq!(moduli_index(&s, &ad).unwrap(), rat(5, 1));
        // Doubling the coefficient bundle, ad ⊕ ad, doubles the index.
        assert_eq!(moduli_index(&s, &ad.direct_sum(&ad)).unwrap(), rat(10, 1));
        // A flat rank-3 coefficient keeps the S⁻ contribution ½·(−1·3)·2.
        assert_eq!(moduli_index(&s, &ChernVector::trivial(3)).unwrap(), rat(-3, 1));
        // Doubling only ch₂(ad) gives ½(2·8 − 3)·2.
        let ad2 = ChernVector { ch2_gamma5_coeff: rat(24, 1), ..ad };
        assert_eq!(moduli_index(&s, &ad2).unwrap(), rat(13, 1));
        let bad = ChernVector { ch1_is_zero: false, ..ad };
        assert!(moduli_index(&s, &bad).is_err());
    }

    #[test]
    fn chern_chains_of_the_projection() {
        let p = build_projection(Deformation::Formal);
        assert_eq!(chern_zero(&p).unwrap(), Element::integer(p.presentation(), 2));
        let id = MatrixForm::identity(p.presentation(), 4);
        assert_eq!(chern_zero(&id).unwrap(), Element::integer(p.presentation(), 4));
        assert_eq!(chern_coefficient(2), rat(12, 1));
        assert_eq!(chern_coefficient(1), rat(-2, 1));
        let ch2 = chern_chain(&p, 2).unwrap();
        assert_eq!(ch2.coefficient, rat(12, 1));
        assert!(ch2.tensors.iter().all(|t| t.len() == 5));
        assert!(!ch2.tensors.is_empty());
        let not_proj = id.scale(&Scalar::integer(2));
        assert!(chern_chain(&not_proj, 1).is_err());
    }

    #[test]
    fn numeric_charge_is_one() {
        let gauge = GaugeData::new(Deformation::Classical);
        let chart = ChartData::new(&gauge).unwrap();
        let density = radial_density(&chart.local_curvature).unwrap();
        assert_eq!(density.rho_power, 8);
        assert_eq!(density.constant, 48.0);
        assert!(density.at(0.0) > 0.0 && density.at(0.0).is_finite());
        // Closed form: (48/8π²)·2π²·(1/12) = 1.
        assert_eq!(density.constant / 4.0 * radial_moment().to_f64().unwrap(), 1.0);
        let q = numeric_charge(1e-6).unwrap();
        assert!((q - 1.0).abs() < 1e-6, "{}", q);
        let zero = MatrixForm::zeros(chart.local_curvature.presentation(), 2, 2);
        assert_eq!(integrate_radial(&radial_density(&zero).unwrap(), 1e-6).unwrap(), 0.0);
        assert!(numeric_charge(0.0).is_err());
    }

    proptest! {
        #[test]
        fn index_is_affine_and_symmetric(k_s in -20i64..20, k_ad in -20i64..20, r_s in 1i64..6, r_ad in 1i64..6) {
            let s = ChernVector::new(r_s, rat(3 * k_s, 1));
            let ad = ChernVector::new(r_ad, rat(3 * k_ad, 1));
            let a = moduli_index(&s, &ad).unwrap();
            prop_assert_eq!(a, moduli_index(&ad, &s).unwrap());
            prop_assert_eq!(a, Rational::from_integer(r_s * k_ad + k_s * r_ad));
            let doubled = moduli_index(&s, &ad.direct_sum(&ad)).unwrap();
            prop_assert_eq!(doubled, a * rat(2, 1));
        }

        #[test]
        fn top_charge_is_linear(a in -100i64..100, b in -100i64..100) {
            let (x, y) = (rat(a, 1), rat(b, 1));
            prop_assert_eq!(top_charge(x + y), top_charge(x) + top_charge(y));
        }
    }
}
