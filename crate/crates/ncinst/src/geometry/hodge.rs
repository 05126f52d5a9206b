//! The flat Hodge star on 2-forms of the chart algebra.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{Deformation, Element, Monomial, Presentation};
use crate::scalar::Scalar;

use super::presentations::{chart_ids, presentation, AlgebraKind};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HodgeError {
    #[error("unsupported form for the chart Hodge star: {0}")]
    Unsupported(String),
    #[error("inconsistent Hodge table at {0}")]
    Inconsistent(String),
}

/// Form bits of `dζ₁, dζ₁*, dζ₂, dζ₂*` in the chart presentation.
const DZ1: u16 = 1 << 0;
const DZ1C: u16 = 1 << 1;
const DZ2: u16 = 1 << 2;
const DZ2C: u16 = 1 << 3;
const DZETA_MASK: u16 = DZ1 | DZ1C | DZ2 | DZ2C;

/// The six canonical basis 2-forms `dζₐdζ_b`, by form bits.
pub const BASIS_2FORMS: [u16; 6] = [DZ1 | DZ1C, DZ1 | DZ2, DZ1 | DZ2C, DZ1C | DZ2, DZ1C | DZ2C, DZ2 | DZ2C];

/// `∗θ` on the chart, as the images of the six basis 2-forms.
#[derive(Clone, Debug)]
pub struct HodgeStar {
    pres: Arc<Presentation>,
    table: BTreeMap<u16, Element>,
}

fn basis(pres: &Arc<Presentation>, bits: u16) -> Element {
    let m = Monomial { e: [0; crate::algebra::MAX_FUNCTIONS], f: bits };
    Element::monomial_element(pres, &m)
}

/// Splits `s·basis(b)` into `(b, s)` when the element is one basis monomial.
fn as_basis_multiple(e: &Element) -> Option<(u16, Scalar)> {
    let mut it = e.terms();
    let (m, c) = it.next()?;
    if it.next().is_some() || m.function_degree() != 0 || m.form_degree() != 2 {
        return None;
    }
    Some((m.form_bits(), c.clone()))
}

impl HodgeStar {
    /// Builds the table from the three rules
    /// `∗(dζ₁dζ₂) = −dζ₁dζ₂`, `∗(dζ₁dζ₁*) = −dζ₂dζ₂*`, `∗(dζ₁dζ₂*) = dζ₁dζ₂*`,
    /// completing it with `∗² = id` and `∗(x*) = (∗x)*`.
    pub fn new(deformation: Deformation) -> Result<HodgeStar, HodgeError> {
        let pres = presentation(AlgebraKind::Chart, deformation);
        let mut table: BTreeMap<u16, Element> = BTreeMap::new();
        let b = |bits| basis(&pres, bits);
        let minus = Scalar::integer(-1);
        table.insert(DZ1 | DZ2, b(DZ1 | DZ2).scale(&minus));
        table.insert(DZ1 | DZ1C, b(DZ2 | DZ2C).scale(&minus));
        table.insert(DZ1 | DZ2C, b(DZ1 | DZ2C));
        loop {
            let before = table.len();
            let known: Vec<(u16, Element)> = table.iter().map(|(k, v)| (*k, v.clone())).collect();
            for (x, image) in known {
                let mut derived = Vec::new();
                // ∗² = id: ∗x = s·y gives ∗y = s⁻¹·x.
                if let Some((y, s)) = as_basis_multiple(&image) {
                    let inv = Scalar::one().checked_div(&s).ok_or_else(|| HodgeError::Inconsistent(format!("{}", y)))?;
                    derived.push((y, b(x).scale(&inv)));
                }
                // Involution: x* = c·x', so ∗x' = c⁻¹·(∗x)*.
                if let Some((xs, c)) = as_basis_multiple(&b(x).involution()) {
                    let inv = Scalar::one().checked_div(&c).ok_or_else(|| HodgeError::Inconsistent(format!("{}", xs)))?;
                    derived.push((xs, image.involution().scale(&inv)));
                }
                for (k, v) in derived {
                    match table.get(&k) {
                        Some(existing) if *existing != v => {
                            return Err(HodgeError::Inconsistent(format!("basis form {}", b(k))));
                        }
                        Some(_) => {}
                        None => {
                            table.insert(k, v);
                        }
                    }
                }
            }
            if table.len() == before {
                break;
            }
        }
        if table.len() != BASIS_2FORMS.len() {
            return Err(HodgeError::Inconsistent(format!("only {} basis forms determined", table.len())));
        }
        Ok(HodgeStar { pres, table })
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    /// The basis 2-form with the given form bits.
    pub fn basis_form(&self, bits: u16) -> Element {
        basis(&self.pres, bits)
    }

    /// Applies `∗θ` to a 2-form in the `dζ` basis with u-free coefficients;
    /// coefficients pass through unchanged.
    pub fn hodge2(&self, alpha: &Element) -> Result<Element, HodgeError> {
        let u_gens = [chart_ids::U1, chart_ids::U1C, chart_ids::U2, chart_ids::U2C];
        let mut parts = Vec::new();
        for (m, c) in alpha.terms() {
            if m.form_degree() != 2 || m.form_bits() & !DZETA_MASK != 0 {
                return Err(HodgeError::Unsupported(format!("monomial {} is not a dζ 2-form", alpha)));
            }
            if u_gens.iter().any(|&g| m.exponents()[g] != 0) {
                return Err(HodgeError::Unsupported(format!("coefficient of {} involves u", alpha)));
            }
            let f = Monomial { e: *m.exponents(), f: 0 };
            let coeff = Element::monomial_element(&self.pres, &f).scale(c);
            parts.push(&coeff * &self.table[&m.form_bits()]);
        }
        Ok(Element::sum(&self.pres, parts.iter()))
    }

    /// `P₋ = ½(1 − ∗θ)`.
    pub fn antiselfdual_projector(&self, alpha: &Element) -> Result<Element, HodgeError> {
        Ok((alpha - &self.hodge2(alpha)?).scale(&Scalar::frac(1, 2)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_entries() {
        let h = HodgeStar::new(Deformation::Formal).unwrap();
        let b = |bits| h.basis_form(bits);
        let neg = |e: Element| -e;
        assert_eq!(h.hodge2(&b(DZ1 | DZ2)).unwrap(), neg(b(DZ1 | DZ2)));
        assert_eq!(h.hodge2(&b(DZ2 | DZ2C)).unwrap(), neg(b(DZ1 | DZ1C)));
        assert_eq!(h.hodge2(&b(DZ1 | DZ2C)).unwrap(), b(DZ1 | DZ2C));
        for bits in BASIS_2FORMS {
            let x = b(bits);
            assert_eq!(h.hodge2(&h.hodge2(&x).unwrap()).unwrap(), x);
        }
        assert!(h.antiselfdual_projector(&b(DZ1 | DZ2C)).unwrap().is_zero());
        assert_eq!(h.antiselfdual_projector(&b(DZ1 | DZ2)).unwrap(), b(DZ1 | DZ2));
    }

    #[test]
    fn rejects_u_forms() {
        let h = HodgeStar::new(Deformation::Formal).unwrap();
        let p = h.presentation().clone();
        let du = Element::named(&p, "d(u1)").unwrap();
        let dz = Element::named(&p, "d(zeta1)").unwrap();
        assert!(h.hodge2(&(&du * &dz)).is_err());
    }
}
