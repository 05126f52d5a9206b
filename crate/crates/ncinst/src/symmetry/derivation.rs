//! Twisted derivations on a presentation.

use std::sync::{Arc, RwLock};

use crate::algebra::{Element, Presentation};
use crate::matrixdga::MatrixForm;
use crate::scalar::Scalar;

/// A linear operator fixed by its values on the degree-0 generators and
/// extended by the twisted Leibniz rule
/// `δ(ab) = δ(a)·λ^{½(−r₁H₂+r₂H₁)}(b) + λ^{½(r₁H₂−r₂H₁)}(a)·δ(b)`
/// together with `δ(dg) = d(δg)`.  For `r = (0, 0)` the rule is the
/// ordinary Leibniz rule.
#[derive(Clone, Debug)]
pub struct TwistedDerivation {
    name: String,
    root: (i32, i32),
    pres: Arc<Presentation>,
    /// Images of all generators; 1-form generators carry `d(δg)`.
    images: Vec<Element>,
    /// Values on raw words already expanded, shared between clones.
    cache: Arc<RwLock<rustc_hash::FxHashMap<Vec<usize>, Arc<Element>>>>,
}

impl TwistedDerivation {
    /// Builds a derivation from the images of the degree-0 generators.
    pub fn new(name: &str, root: (i32, i32), pres: &Arc<Presentation>, function_images: Vec<Element>) -> Self {
        assert_eq!(function_images.len(), pres.function_count(), "one image per function generator");
        let mut images = function_images;
        for id in pres.function_count()..pres.generator_count() {
            let base = pres.base_of(id).expect("1-form generator without base");
            let img = images[base].differential();
            images.push(img);
        }
        TwistedDerivation { name: name.to_string(), root, pres: pres.clone(), images, cache: Default::default() }
    }

    /// Builds a derivation from a closure giving the image of each degree-0
    /// generator.
    pub fn from_fn<F: Fn(usize) -> Element>(name: &str, root: (i32, i32), pres: &Arc<Presentation>, f: F) -> Self {
        let images = (0..pres.function_count()).map(f).collect();
        Self::new(name, root, pres, images)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn root(&self) -> (i32, i32) {
        self.root
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn on_generator(&self, id: usize) -> &Element {
        &self.images[id]
    }

    fn twist_scalar(&self, word: &[usize], sign: i32) -> Scalar {
        let scale = self.pres.deformation().exponent_scale();
        let mut w = crate::algebra::Weight(0, 0);
        for &g in word {
            w = w.add(self.pres.generator_weight(g));
        }
        Scalar::q_pow(sign * scale * w.twist_exponent(self.root))
    }

    /// Applies the derivation to the raw product `coeff · g₁g₂⋯gₙ`.
    ///
    /// The word is peeled from the left,
    /// `δ(g·w) = δ(g)·λ^{−…}(w) + λ^{+…}(g)·δ(w)`, and values on suffixes
    /// are memoized.
    pub fn apply_word(&self, coeff: &Scalar, word: &[usize]) -> Element {
        if coeff.is_zero() {
            return Element::zero(&self.pres);
        }
        self.word_value(word).scale(coeff)
    }

    fn word_value(&self, word: &[usize]) -> Arc<Element> {
        let pres = &self.pres;
        if word.is_empty() {
            return Arc::new(Element::zero(pres));
        }
        if let Some(v) = self.cache.read().expect("derivation cache").get(word) {
            return v.clone();
        }
        if word.len() == 1 {
            let v = Arc::new(self.images[word[0]].clone());
            self.cache.write().expect("derivation cache").insert(word.to_vec(), v.clone());
            return v;
        }
        let (g, rest) = (&word[..1], &word[1..]);
        let mut value = Element::zero(pres);
        let img = &self.images[g[0]];
        if !img.is_zero() {
            let tail = Element::word_ids(pres, self.twist_scalar(rest, -1), rest);
            value = &value + &(img * &tail);
        }
        let inner = self.word_value(rest);
        if !inner.is_zero() {
            let head = Element::word_ids(pres, self.twist_scalar(g, 1), g);
            value = &value + &(&head * &*inner);
        }
        let value = Arc::new(value);
        self.cache.write().expect("derivation cache").insert(word.to_vec(), value.clone());
        value
    }

    /// Applies the derivation to an element of its presentation.
    pub fn apply(&self, e: &Element) -> Element {
        assert!(Arc::ptr_eq(e.presentation(), &self.pres), "derivation {} applied across presentations", self.name);
        let values: Vec<(&Scalar, Arc<Element>)> = e.terms().map(|(m, c)| (c, self.word_value(&e.monomial_word(m)))).collect();
        Element::linear_combination(&self.pres, values.iter().map(|(c, v)| (*c, &**v)))
    }

    /// Entrywise application.
    pub fn apply_matrix(&self, m: &MatrixForm) -> MatrixForm {
        m.map(|e| self.apply(e))
    }

    /// The conjugate derivation `a ↦ (δ(a*))*` of root `−r`.
    pub fn conjugate(&self, name: &str) -> TwistedDerivation {
        let pres = self.pres.clone();
        TwistedDerivation::from_fn(name, (-self.root.0, -self.root.1), &pres, |g| {
            self.images[pres.conjugate_of(g)].involution()
        })
    }

    /// Relations of the presentation that the derivation fails to respect:
    /// every commutation relation between two generators (functions and
    /// 1-forms) and every rewrite rule.  Empty for a well-defined operator.
    pub fn well_definedness_failures(&self) -> Vec<String> {
        let pres = &self.pres;
        let n = pres.generator_count();
        let mut bad = Vec::new();
        for g in 0..n {
            for h in g + 1..n {
                let sign = if pres.generator_degree(g) == 1 && pres.generator_degree(h) == 1 { -1 } else { 1 };
                let c = Scalar::q_pow(pres.commutation_exponent(g, h)).scale_int(sign);
                let lhs = self.apply_word(&Scalar::one(), &[g, h]);
                let rhs = self.apply_word(&c, &[h, g]);
                if lhs != rhs {
                    bad.push(format!(
                        "{}: {}·{} relation: {} vs {}",
                        self.name,
                        pres.generator_name(g),
                        pres.generator_name(h),
                        lhs,
                        rhs
                    ));
                }
            }
            if pres.generator_degree(g) == 1 {
                let sq = self.apply_word(&Scalar::one(), &[g, g]);
                if !sq.is_zero() {
                    bad.push(format!("{}: square of {}: {}", self.name, pres.generator_name(g), sq));
                }
            }
        }
        for (lhs, rhs) in pres.rule_words() {
            let mut defect = self.apply_word(&Scalar::one(), &lhs);
            for (c, w) in &rhs {
                defect = &defect - &self.apply_word(&Scalar::integer(*c), w);
            }
            if !defect.is_zero() {
                let names: Vec<&str> = lhs.iter().map(|&g| pres.generator_name(g)).collect();
                bad.push(format!("{}: rule {}: defect {}", self.name, names.join("*"), defect));
            }
        }
        bad
    }
}

/// `[a, b](x) = a(b(x)) − b(a(x))`.
pub fn commutator_on(a: &TwistedDerivation, b: &TwistedDerivation, x: &Element) -> Element {
    &a.apply(&b.apply(x)) - &b.apply(&a.apply(x))
}

/// Evaluates `Σ cₖ δₖ(x)`.
pub fn combination_on(terms: &[(Scalar, &TwistedDerivation)], x: &Element) -> Element {
    let parts: Vec<Element> = terms.iter().map(|(c, d)| d.apply(x).scale(c)).collect();
    Element::sum(x.presentation(), parts.iter())
}
