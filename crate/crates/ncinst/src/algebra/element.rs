//! Normal-form elements and their operations.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::presentation::{add_raw, RawTerms, Terms};
use super::{AlgebraError, Monomial, Presentation, Weight};
use crate::scalar::{Scalar, SignedTerm};

/// Weight of an element: zero, a common weight, or mixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightClass {
    Zero,
    Homogeneous(Weight),
    Inhomogeneous,
}

/// A finite sum of scalars times canonical monomials, always in normal form.
#[derive(Clone)]
pub struct Element {
    pres: Arc<Presentation>,
    terms: Terms,
}

impl PartialEq for Element {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.pres, &o.pres) && self.terms == o.terms
    }
}

impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.pres.name(), self)
    }
}

impl Element {
    pub(crate) fn from_terms(pres: &Arc<Presentation>, terms: Terms) -> Element {
        Element { pres: pres.clone(), terms }
    }

    pub fn zero(pres: &Arc<Presentation>) -> Element {
        Self::from_terms(pres, Terms::new())
    }

    pub fn one(pres: &Arc<Presentation>) -> Element {
        Self::scalar(pres, Scalar::one())
    }

    pub fn scalar(pres: &Arc<Presentation>, s: Scalar) -> Element {
        let mut t = Terms::new();
        if !s.is_zero() {
            t.insert(Monomial::one(), s);
        }
        Self::from_terms(pres, t)
    }

    pub fn integer(pres: &Arc<Presentation>, n: i64) -> Element {
        Self::scalar(pres, Scalar::integer(n))
    }

    /// The generator with the given identifier; 1-form generators are
    /// returned in their projected normal form.
    pub fn generator(pres: &Arc<Presentation>, id: usize) -> Element {
        Self::from_terms(pres, pres.word_terms(&Scalar::one(), &[id]))
    }

    /// Looks a generator up by its rendered name (`z1`, `z1'`, `d(z1)`).
    pub fn named(pres: &Arc<Presentation>, name: &str) -> Result<Element, AlgebraError> {
        pres.lookup(name)
            .map(|id| Self::generator(pres, id))
            .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))
    }

    /// Normal form of a raw linear combination of generator words.
    pub fn normal_form(pres: &Arc<Presentation>, raw: &[(Scalar, Vec<usize>)]) -> Result<Element, AlgebraError> {
        let mut acc = Element::zero(pres);
        for (c, w) in raw {
            if let Some(&bad) = w.iter().find(|&&g| g >= pres.generator_count()) {
                return Err(AlgebraError::UnknownGenerator(format!("#{}", bad)));
            }
            acc = &acc + &Self::from_terms(pres, pres.word_terms(c, w));
        }
        Ok(acc)
    }

    /// Normal form of a product of named generators with a coefficient.
    pub fn word(pres: &Arc<Presentation>, coeff: Scalar, names: &[&str]) -> Result<Element, AlgebraError> {
        let ids = names
            .iter()
            .map(|n| pres.lookup(n).ok_or_else(|| AlgebraError::UnknownGenerator(n.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_terms(pres, pres.word_terms(&coeff, &ids)))
    }

    /// Normal form of `coeff · g₁⋯gₙ` for generator ids.
    pub fn word_ids(pres: &Arc<Presentation>, coeff: Scalar, word: &[usize]) -> Element {
        if coeff.is_zero() {
            return Element::zero(pres);
        }
        Self::from_terms(pres, pres.word_terms(&coeff, word))
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The element as a pure scalar, if it is one.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    fn check_same(&self, o: &Element) {
        assert!(
            Arc::ptr_eq(&self.pres, &o.pres),
            "{}",
            AlgebraError::PresentationMismatch(self.pres.name().to_string(), o.pres.name().to_string())
        );
    }

    /// Fallible product, for callers that cannot guarantee a shared presentation.
    pub fn try_mul(&self, o: &Element) -> Result<Element, AlgebraError> {
        if !Arc::ptr_eq(&self.pres, &o.pres) {
            return Err(AlgebraError::PresentationMismatch(self.pres.name().into(), o.pres.name().into()));
        }
        Ok(self * o)
    }

    pub fn try_add(&self, o: &Element) -> Result<Element, AlgebraError> {
        if !Arc::ptr_eq(&self.pres, &o.pres) {
            return Err(AlgebraError::PresentationMismatch(self.pres.name().into(), o.pres.name().into()));
        }
        Ok(self + o)
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        if s.is_zero() {
            return Element::zero(&self.pres);
        }
        let terms = self.terms.iter().map(|(m, c)| (*m, c * s)).filter(|(_, c)| !c.is_zero()).collect();
        Self::from_terms(&self.pres, terms)
    }

    pub fn pow(&self, n: u32) -> Element {
        let mut acc = Element::one(&self.pres);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exterior differential.
    pub fn differential(&self) -> Element {
        Self::from_terms(&self.pres, self.pres.differential(&self.terms))
    }

    /// Graded involution `(ab)* = (−1)^{|a||b|} b* a*`, `(da)* = d(a*)`.
    pub fn involution(&self) -> Element {
        Self::from_terms(&self.pres, self.pres.involution(&self.terms))
    }

    /// Scales each monomial of weight `W` by `q^{±(r₁W₂ − r₂W₁)}`.
    pub fn twist(&self, r: (i32, i32), positive: bool) -> Element {
        let scale = self.pres.deformation().exponent_scale();
        if scale == 0 || r == (0, 0) {
            return self.clone();
        }
        let sign = if positive { 1 } else { -1 };
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c.shift(sign * scale * self.pres.mono_weight(m).twist_exponent(r))))
            .collect();
        Self::from_terms(&self.pres, terms)
    }

    pub fn weight_of(&self) -> WeightClass {
        let mut w: Option<Weight> = None;
        for m in self.terms.keys() {
            let wm = self.pres.mono_weight(m);
            match w {
                None => w = Some(wm),
                Some(w0) if w0 != wm => return WeightClass::Inhomogeneous,
                _ => {}
            }
        }
        match w {
            None => WeightClass::Zero,
            Some(w) => WeightClass::Homogeneous(w),
        }
    }

    /// Common form degree of all terms, `None` for mixed degrees or zero.
    pub fn form_degree(&self) -> Option<usize> {
        let mut d: Option<usize> = None;
        for m in self.terms.keys() {
            match d {
                None => d = Some(m.form_degree()),
                Some(d0) if d0 != m.form_degree() => return None,
                _ => {}
            }
        }
        d
    }

    /// The homogeneous form-degree `k` part.
    pub fn degree_part(&self, k: usize) -> Element {
        let terms = self.terms.iter().filter(|(m, _)| m.form_degree() == k).map(|(m, c)| (*m, c.clone())).collect();
        Self::from_terms(&self.pres, terms)
    }

    /// Evaluation at `q = 1`, landing in the classical twin presentation.
    pub fn specialize_q1(&self) -> Element {
        let target = self.pres.classical_twin().cloned().unwrap_or_else(|| self.pres.clone());
        let mut raw = RawTerms::default();
        for (m, c) in &self.terms {
            add_raw(&mut raw, *m, Scalar::base(c.specialize_q1()));
        }
        Self::from_terms(&target, raw.into_iter().collect())
    }

    pub fn same_algebra(&self, o: &Element) -> bool {
        Arc::ptr_eq(&self.pres, &o.pres)
    }

    /// Projects onto canonical representatives; the identity on every
    /// element produced through the public API.
    pub fn reprojected(&self) -> Element {
        Self::from_terms(&self.pres, self.pres.project(self.terms.clone()))
    }

    /// Applies a map on monomials given as a closure returning elements,
    /// extended linearly.
    pub fn map_monomials<F>(&self, target: &Arc<Presentation>, mut f: F) -> Element
    where
        F: FnMut(&Monomial) -> Element,
    {
        let mut acc = Element::zero(target);
        for (m, c) in &self.terms {
            acc = &acc + &f(m).scale(c);
        }
        acc
    }

    /// Generator word of a monomial of this element's presentation.
    pub fn monomial_word(&self, m: &Monomial) -> Vec<usize> {
        self.pres.word(m)
    }

    /// The element consisting of one monomial with coefficient one, taken
    /// as a raw product of its generators (then normalized).
    pub fn monomial_element(pres: &Arc<Presentation>, m: &Monomial) -> Element {
        Self::from_terms(pres, pres.word_terms(&Scalar::one(), &pres.word(m)))
    }

    /// Linear combination `Σ cᵢ·xᵢ` of elements.
    pub fn sum<'a, I: IntoIterator<Item = &'a Element>>(pres: &Arc<Presentation>, items: I) -> Element {
        let mut raw = RawTerms::default();
        for e in items {
            for (m, c) in &e.terms {
                add_raw(&mut raw, *m, c.clone());
            }
        }
        Self::from_terms(pres, raw.into_iter().collect())
    }

    /// `Σ cₖ·eₖ`, accumulated in one pass without intermediate elements.
    pub fn linear_combination<'a, I: IntoIterator<Item = (&'a Scalar, &'a Element)>>(pres: &Arc<Presentation>, items: I) -> Element {
        let mut raw = RawTerms::default();
        for (s, e) in items {
            if s.is_zero() {
                continue;
            }
            for (m, c) in &e.terms {
                add_raw(&mut raw, *m, if s.is_one() { c.clone() } else { c * s });
            }
        }
        Self::from_terms(pres, raw.into_iter().collect())
    }

    /// Canonical textual rendering, parseable by the frontend.
    pub fn render(&self) -> String {
        let mut pieces: Vec<SignedTerm> = Vec::new();
        for (m, c) in &self.terms {
            let atoms = self.pres.render_atoms(m);
            pieces.extend(c.signed_terms(&atoms));
        }
        SignedTerm::join(&pieces)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl<'a> Add<&'a Element> for &'a Element {
    type Output = Element;
    fn add(self, o: &Element) -> Element {
        self.check_same(o);
        if o.terms.is_empty() {
            return self.clone();
        }
        if self.terms.is_empty() {
            return o.clone();
        }
        // Merge of two sorted term lists; the bulk build from sorted input is linear.
        let mut merged: Vec<(Monomial, Scalar)> = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), o.terms.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ma, _)), Some((mb, _))) => match ma.cmp(mb) {
                    std::cmp::Ordering::Less => {
                        let (m, c) = a.next().expect("peeked");
                        merged.push((*m, c.clone()));
                    }
                    std::cmp::Ordering::Greater => {
                        let (m, c) = b.next().expect("peeked");
                        merged.push((*m, c.clone()));
                    }
                    std::cmp::Ordering::Equal => {
                        let (m, ca) = a.next().expect("peeked");
                        let (_, cb) = b.next().expect("peeked");
                        let c = ca + cb;
                        if !c.is_zero() {
                            merged.push((*m, c));
                        }
                    }
                },
                (Some(_), None) => {
                    let (m, c) = a.next().expect("peeked");
                    merged.push((*m, c.clone()));
                }
                (None, Some(_)) => {
                    let (m, c) = b.next().expect("peeked");
                    merged.push((*m, c.clone()));
                }
                (None, None) => break,
            }
        }
        Element::from_terms(&self.pres, merged.into_iter().collect())
    }
}

impl<'a> Sub<&'a Element> for &'a Element {
    type Output = Element;
    fn sub(self, o: &Element) -> Element {
        self + &(-o)
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::from_terms(&self.pres, self.terms.iter().map(|(m, c)| (*m, -c)).collect())
    }
}

impl<'a> Mul<&'a Element> for &'a Element {
    type Output = Element;
    fn mul(self, o: &Element) -> Element {
        self.check_same(o);
        Element::from_terms(&self.pres, self.pres.mul_terms(&self.terms, &o.terms))
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, o: Element) -> Element {
        &self + &o
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, o: Element) -> Element {
        &self - &o
    }
}

impl Mul for Element {
    type Output = Element;
    fn mul(self, o: Element) -> Element {
        &self * &o
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

/// For each sphere constraint `R = 1`: the normal forms of `R − 1` and of
/// `dR`.  Both vanish in a sound presentation.
pub fn sphere_relations(pres: &Arc<Presentation>) -> Vec<(Element, Element)> {
    pres.constraint_elements()
        .iter()
        .zip(pres.constraint_differentials())
        .map(|(r, dr)| {
            let r = &Element::from_terms(pres, r.clone()) - &Element::one(pres);
            (r, Element::from_terms(pres, pres.project(dr.clone())))
        })
        .collect()
}
