//! Substitution homomorphisms between presentations.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{Deformation, Element, Presentation};
use crate::matrixdga::MatrixForm;
use crate::scalar::Scalar;

use super::presentations::{chart_ids, presentation, AlgebraKind};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MapError {
    #[error("map {map}: relation {relation} is not preserved (image {image})")]
    RelationViolation { map: String, relation: String, image: String },
    #[error("map {map}: image of {generator} has the wrong shape: {reason}")]
    BadImage { map: String, generator: String, reason: String },
}

/// An algebra map fixed by the images of the degree-0 generators, extended
/// multiplicatively and by `d`-compatibility (`dg ↦ d(image g)`).
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    name: String,
    source: Arc<Presentation>,
    target: Arc<Presentation>,
    images: Vec<Element>,
}

impl AlgebraMap {
    pub fn new(
        name: &str,
        source: &Arc<Presentation>,
        target: &Arc<Presentation>,
        function_images: Vec<Element>,
    ) -> Result<AlgebraMap, MapError> {
        if function_images.len() != source.function_count() {
            return Err(MapError::BadImage {
                map: name.into(),
                generator: "*".into(),
                reason: format!("{} images for {} generators", function_images.len(), source.function_count()),
            });
        }
        let mut images = Vec::with_capacity(source.generator_count());
        for (g, img) in function_images.into_iter().enumerate() {
            if !Arc::ptr_eq(img.presentation(), target) {
                return Err(MapError::BadImage {
                    map: name.into(),
                    generator: source.generator_name(g).into(),
                    reason: "image lives in another presentation".into(),
                });
            }
            images.push(img);
        }
        for id in source.function_count()..source.generator_count() {
            let base = source.base_of(id).expect("1-form generator without base");
            let d = images[base].differential();
            images.push(d);
        }
        Ok(AlgebraMap { name: name.into(), source: source.clone(), target: target.clone(), images })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<Presentation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Presentation> {
        &self.target
    }

    pub fn image_of_generator(&self, id: usize) -> &Element {
        &self.images[id]
    }

    /// Image of the raw product `g₁⋯gₙ`.
    pub fn apply_word(&self, word: &[usize]) -> Element {
        let mut acc = Element::one(&self.target);
        for &g in word {
            acc = &acc * &self.images[g];
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    pub fn apply(&self, e: &Element) -> Element {
        assert!(Arc::ptr_eq(e.presentation(), &self.source), "map {} applied to a foreign element", self.name);
        let parts: Vec<Element> = e.terms().map(|(m, c)| self.apply_word(&e.monomial_word(m)).scale(c)).collect();
        Element::sum(&self.target, parts.iter())
    }

    pub fn apply_matrix(&self, m: &MatrixForm) -> MatrixForm {
        m.map_into(&self.target, |e| self.apply(e))
    }

    /// Checks that every commutation relation between generators and every
    /// rewrite rule of the source maps to zero.
    pub fn check_homomorphism(&self) -> Result<usize, MapError> {
        let src = &self.source;
        let n = src.generator_count();
        let mut checked = 0;
        for g in 0..n {
            for h in g..n {
                let sign = if src.generator_degree(g) == 1 && src.generator_degree(h) == 1 { -1 } else { 1 };
                let c = Scalar::q_pow(src.commutation_exponent(g, h)).scale_int(sign);
                let defect = &self.apply_word(&[g, h]) - &self.apply_word(&[h, g]).scale(&c);
                let trivially_zero = g == h && sign == 1;
                if !trivially_zero && !defect.is_zero() {
                    return Err(MapError::RelationViolation {
                        map: self.name.clone(),
                        relation: format!("{}·{}", src.generator_name(g), src.generator_name(h)),
                        image: defect.to_string(),
                    });
                }
                checked += 1;
            }
        }
        for (lhs, rhs) in src.rule_words() {
            let mut defect = self.apply_word(&lhs);
            for (c, w) in &rhs {
                defect = &defect - &self.apply_word(w).scale(&Scalar::integer(*c));
            }
            if !defect.is_zero() {
                let names: Vec<&str> = lhs.iter().map(|&g| src.generator_name(g)).collect();
                return Err(MapError::RelationViolation {
                    map: self.name.clone(),
                    relation: format!("rule {}", names.join("*")),
                    image: defect.to_string(),
                });
            }
            checked += 1;
        }
        Ok(checked)
    }

    /// Checks `φ(g*) = φ(g)*` and `φ(dg) = d φ(g)` on every generator.
    pub fn check_star_and_d(&self) -> Result<usize, MapError> {
        let src = &self.source;
        for g in 0..src.generator_count() {
            let conj = &self.images[src.conjugate_of(g)];
            if *conj != self.images[g].involution() {
                return Err(MapError::RelationViolation {
                    map: self.name.clone(),
                    relation: format!("star of {}", src.generator_name(g)),
                    image: (conj - &self.images[g].involution()).to_string(),
                });
            }
            let gen = Element::generator(src, g);
            if self.apply(&gen.differential()) != self.apply(&gen).differential() {
                return Err(MapError::RelationViolation {
                    map: self.name.clone(),
                    relation: format!("d of {}", src.generator_name(g)),
                    image: "mismatch".into(),
                });
            }
        }
        Ok(src.generator_count())
    }
}

fn word(p: &Arc<Presentation>, c: Scalar, names: &[&str]) -> Element {
    Element::word(p, c, names).expect("built-in generator names")
}

/// `ι: z₀ ↦ Σ ±ψₐ*ψₐ`, `z₁ ↦ 2(ψ₁ψ₃* + ψ₂*ψ₄)`, `z₂ ↦ 2(−ψ₁*ψ₄ + ψ₂ψ₃*)`
/// from the four-sphere into the seven-sphere.
pub fn subalgebra(deformation: Deformation) -> AlgebraMap {
    let s4 = presentation(AlgebraKind::S4, deformation);
    let s7 = presentation(AlgebraKind::S7, deformation);
    let one = Scalar::one;
    let two = || Scalar::integer(2);
    let z0 = Element::sum(
        &s7,
        [
            word(&s7, one(), &["psi1'", "psi1"]),
            word(&s7, one(), &["psi2'", "psi2"]),
            word(&s7, -one(), &["psi3'", "psi3"]),
            word(&s7, -one(), &["psi4'", "psi4"]),
        ]
        .iter(),
    );
    let z1 = &word(&s7, two(), &["psi1", "psi3'"]) + &word(&s7, two(), &["psi2'", "psi4"]);
    let z2 = &word(&s7, -two(), &["psi1'", "psi4"]) + &word(&s7, two(), &["psi2", "psi3'"]);
    let images = vec![z0, z1.clone(), z1.involution(), z2.clone(), z2.involution()];
    AlgebraMap::new("subalgebra", &s4, &s7, images).expect("subalgebra images")
}

/// Stereographic chart: `z₀ ↦ (1 − |ζ|²)ρ²`, `zⱼ ↦ 2ζⱼρ²`.
pub fn stereographic(deformation: Deformation) -> AlgebraMap {
    use chart_ids::*;
    let s4 = presentation(AlgebraKind::S4, deformation);
    let ch = presentation(AlgebraKind::Chart, deformation);
    let g = |id| Element::generator(&ch, id);
    let rho2 = g(RHO).pow(2);
    let n = &(&g(ZETA1) * &g(ZETA1C)) + &(&g(ZETA2) * &g(ZETA2C));
    let z0 = &(&Element::one(&ch) - &n) * &rho2;
    let two = Scalar::integer(2);
    let z1 = (&g(ZETA1) * &rho2).scale(&two);
    let z2 = (&g(ZETA2) * &rho2).scale(&two);
    let images = vec![z0, z1.clone(), z1.involution(), z2.clone(), z2.involution()];
    AlgebraMap::new("stereographic", &s4, &ch, images).expect("stereographic images")
}

/// Local section over the chart: `ψ₁ ↦ ρu₁`, `ψ₂ ↦ ρu₂`,
/// `ψ₃ ↦ ρ(ζ₁*u₁ + ζ₂*u₂)`, `ψ₄ ↦ ρ(−μζ₂u₁ + μ̄ζ₁u₂)`.
pub fn local_section(deformation: Deformation) -> AlgebraMap {
    use chart_ids::*;
    let s7 = presentation(AlgebraKind::S7, deformation);
    let ch = presentation(AlgebraKind::Chart, deformation);
    let g = |id| Element::generator(&ch, id);
    let rho = g(RHO);
    let mu = deformation.q(2);
    let psi1 = &rho * &g(U1);
    let psi2 = &rho * &g(U2);
    let psi3 = &rho * &(&(&g(ZETA1C) * &g(U1)) + &(&g(ZETA2C) * &g(U2)));
    let psi4 = &rho * &(&(&g(ZETA2) * &g(U1)).scale(&-mu.clone()) + &(&g(ZETA1) * &g(U2)).scale(&mu.conj()));
    let mut images = Vec::new();
    for p in [psi1, psi2, psi3, psi4] {
        let c = p.involution();
        images.push(p);
        images.push(c);
    }
    AlgebraMap::new("local-section", &s7, &ch, images).expect("local section images")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maps_are_star_homomorphisms() {
        for d in [Deformation::Formal, Deformation::Classical] {
            for m in [subalgebra(d), stereographic(d), local_section(d)] {
                m.check_homomorphism().unwrap();
                m.check_star_and_d().unwrap();
            }
        }
    }

    #[test]
    fn stereographic_z0_is_two_rho_squared_minus_one() {
        let m = stereographic(Deformation::Formal);
        let s4 = m.source().clone();
        let ch = m.target().clone();
        let z0 = m.apply(&Element::named(&s4, "z0").unwrap());
        let rho2 = Element::named(&ch, "rho").unwrap().pow(2);
        assert_eq!(z0, &rho2.scale(&Scalar::integer(2)) - &Element::one(&ch));
    }

    #[test]
    fn section_lands_over_the_chart() {
        let d = Deformation::Formal;
        let sec = local_section(d);
        let st = stereographic(d);
        let iota = subalgebra(d);
        let s4 = iota.source().clone();
        for g in 0..s4.function_count() {
            let z = Element::generator(&s4, g);
            assert_eq!(sec.apply(&iota.apply(&z)), st.apply(&z), "generator {}", s4.generator_name(g));
        }
    }
}
