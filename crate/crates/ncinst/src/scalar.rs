//! Exact coefficients in the ring ℚ[i, √2][q, q⁻¹].
//!
//! The formal parameter `q` is unimodular, so complex conjugation sends
//! `q` to `q⁻¹` and `i` to `-i`.  The deformation parameters of the
//! algebras are `μ = q²` and `λ = q⁴`; using `q` itself as the atom keeps
//! the half-integer twist exponents of the seven-sphere integral.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use smallvec::{smallvec, SmallVec};

/// Rational numbers used throughout the kernel.
pub type Rational = Ratio<i64>;

/// Shorthand for the rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// An element `a + b·i + c·√2 + d·i√2` of the field ℚ(i, √2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct BaseNumber {
    /// Coefficients of `1`, `i`, `√2`, `i√2`.
    pub c: [Rational; 4],
}

impl BaseNumber {
    pub const fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        BaseNumber { c: [a, b, c, d] }
    }

    pub fn zero() -> Self {
        BaseNumber { c: [Rational::zero(); 4] }
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn rational(r: Rational) -> Self {
        let z = Rational::zero();
        BaseNumber { c: [r, z, z, z] }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(Rational::from_integer(n))
    }

    pub fn i() -> Self {
        let (z, o) = (Rational::zero(), Rational::one());
        BaseNumber { c: [z, o, z, z] }
    }

    pub fn sqrt2() -> Self {
        let (z, o) = (Rational::zero(), Rational::one());
        BaseNumber { c: [z, z, o, z] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Complex conjugation: `i ↦ -i`, rationals and `√2` fixed.
    pub fn conj(&self) -> Self {
        let [a, b, c, d] = self.c;
        BaseNumber { c: [a, -b, c, -d] }
    }

    /// Galois conjugation `√2 ↦ -√2`, used for inverses.
    fn conj_sqrt2(&self) -> Self {
        let [a, b, c, d] = self.c;
        BaseNumber { c: [a, b, -c, -d] }
    }

    pub fn scale(&self, r: Rational) -> Self {
        let [a, b, c, d] = self.c;
        BaseNumber { c: [a * r, b * r, c * r, d * r] }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // x·x̄ lies in ℚ(√2); multiplying by its √2-conjugate lands in ℚ.
        let n1 = *self * self.conj();
        let n2 = n1 * n1.conj_sqrt2();
        let r = n2.c[0];
        debug_assert!(n2.c[1].is_zero() && n2.c[2].is_zero() && n2.c[3].is_zero());
        Some((self.conj() * n1.conj_sqrt2()).scale(r.recip()))
    }

    /// Numeric value as a complex pair, for the floating-point quadrature only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let f = |r: Rational| *r.numer() as f64 / *r.denom() as f64;
        let s = std::f64::consts::SQRT_2;
        let [a, b, c, d] = self.c;
        (f(a) + s * f(c), f(b) + s * f(d))
    }

    /// The rational value, if this number is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(self.c[0])
        } else {
            None
        }
    }
}

impl Add for BaseNumber {
    type Output = BaseNumber;
    fn add(self, o: BaseNumber) -> BaseNumber {
        let mut c = self.c;
        for k in 0..4 {
            c[k] += o.c[k];
        }
        BaseNumber { c }
    }
}

impl Sub for BaseNumber {
    type Output = BaseNumber;
    fn sub(self, o: BaseNumber) -> BaseNumber {
        self + (-o)
    }
}

impl Neg for BaseNumber {
    type Output = BaseNumber;
    fn neg(self) -> BaseNumber {
        let [a, b, c, d] = self.c;
        BaseNumber { c: [-a, -b, -c, -d] }
    }
}

impl Mul for BaseNumber {
    type Output = BaseNumber;
    fn mul(self, o: BaseNumber) -> BaseNumber {
        // Basis 1, i, √2, i√2: the product of basis j and basis k is
        // PRODUCT[j][k] = (factor, basis).
        const PRODUCT: [[(i64, usize); 4]; 4] = [
            [(1, 0), (1, 1), (1, 2), (1, 3)],
            [(1, 1), (-1, 0), (1, 3), (-1, 2)],
            [(1, 2), (1, 3), (2, 0), (2, 1)],
            [(1, 3), (-1, 2), (2, 1), (-2, 0)],
        ];
        let rational = |b: &BaseNumber| b.c[1].is_zero() && b.c[2].is_zero() && b.c[3].is_zero();
        if rational(&self) && rational(&o) {
            let (x, y) = (self.c[0], o.c[0]);
            let p = if x.is_integer() && y.is_integer() { Rational::from_integer(x.numer() * y.numer()) } else { x * y };
            return BaseNumber::rational(p);
        }
        let mut c = [Rational::zero(); 4];
        for (j, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (k, y) in o.c.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let (f, b) = PRODUCT[j][k];
                let p = if x.is_integer() && y.is_integer() {
                    Rational::from_integer(x.numer() * y.numer() * f)
                } else {
                    x * y * Rational::from_integer(f)
                };
                c[b] += p;
            }
        }
        BaseNumber { c }
    }
}

fn render_rational(r: Rational) -> String {
    if r.is_integer() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A signed product `coefficient * atom * atom ...` with an explicit sign,
/// so that sums can be joined as `a + b` or `a - b`.
pub(crate) struct SignedTerm {
    pub negative: bool,
    pub body: String,
}

impl SignedTerm {
    pub fn join(terms: &[SignedTerm]) -> String {
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, t) in terms.iter().enumerate() {
            match (k, t.negative) {
                (0, false) => {}
                (0, true) => out.push('-'),
                (_, false) => out.push_str(" + "),
                (_, true) => out.push_str(" - "),
            }
            out.push_str(&t.body);
        }
        out
    }
}

/// Renders `r * basis` where `basis` is a list of atoms (possibly empty).
fn signed_product(r: Rational, atoms: &[String]) -> SignedTerm {
    let negative = r.is_negative();
    let a = r.abs();
    let mut parts: Vec<String> = Vec::new();
    if !a.is_one() || atoms.is_empty() {
        parts.push(render_rational(a));
    }
    parts.extend(atoms.iter().cloned());
    SignedTerm { negative, body: parts.join("*") }
}

impl BaseNumber {
    /// Signed terms for each nonzero component, each multiplied by `extra` atoms.
    pub(crate) fn signed_terms(&self, extra: &[String]) -> Vec<SignedTerm> {
        let names: [&[&str]; 4] = [&[], &["i"], &["sqrt2"], &["i", "sqrt2"]];
        let mut out = Vec::new();
        for k in 0..4 {
            if self.c[k].is_zero() {
                continue;
            }
            let mut atoms: Vec<String> = names[k].iter().map(|s| s.to_string()).collect();
            atoms.extend(extra.iter().cloned());
            out.push(signed_product(self.c[k], &atoms));
        }
        out
    }
}

impl fmt::Display for BaseNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", SignedTerm::join(&self.signed_terms(&[])))
    }
}

/// Inline storage for the common single-term case.
type TermVec = SmallVec<[(i32, BaseNumber); 1]>;

/// A Laurent polynomial in `q` with coefficients in ℚ(i, √2), stored as
/// strictly increasing exponents with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: TermVec,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: TermVec::new() }
    }

    pub fn one() -> Self {
        Self::base(BaseNumber::one())
    }

    pub fn base(b: BaseNumber) -> Self {
        Self::monomial(0, b)
    }

    pub fn rational(r: Rational) -> Self {
        Self::base(BaseNumber::rational(r))
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(Rational::from_integer(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::rational(rat(n, d))
    }

    pub fn i() -> Self {
        Self::base(BaseNumber::i())
    }

    pub fn sqrt2() -> Self {
        Self::base(BaseNumber::sqrt2())
    }

    /// `1/√2 = √2/2`.
    pub fn inv_sqrt2() -> Self {
        Self::base(BaseNumber::sqrt2().scale(rat(1, 2)))
    }

    /// The monomial `q^k`.
    pub fn q_pow(k: i32) -> Self {
        Self::monomial(k, BaseNumber::one())
    }

    /// `b·q^k`.
    pub fn monomial(k: i32, b: BaseNumber) -> Self {
        if b.is_zero() {
            Self::zero()
        } else {
            Scalar { terms: smallvec![(k, b)] }
        }
    }

    /// Builds a scalar from arbitrary `(exponent, coefficient)` pairs.
    pub fn from_terms(mut raw: Vec<(i32, BaseNumber)>) -> Self {
        raw.sort_by_key(|t| t.0);
        let mut terms = TermVec::with_capacity(raw.len());
        for (k, b) in raw {
            match terms.last_mut() {
                Some((k0, b0)) if *k0 == k => *b0 = *b0 + b,
                _ => terms.push((k, b)),
            }
        }
        terms.retain(|t| !t.1.is_zero());
        Scalar { terms }
    }

    pub fn terms(&self) -> &[(i32, BaseNumber)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Conjugation for unimodular `q`: `q ↦ q⁻¹`, `i ↦ -i`.
    pub fn conj(&self) -> Self {
        let mut terms: TermVec = self.terms.iter().rev().map(|(k, b)| (-k, b.conj())).collect();
        terms.sort_by_key(|t| t.0);
        Scalar { terms }
    }

    /// Evaluation at the classical point `q = 1`.
    pub fn specialize_q1(&self) -> BaseNumber {
        self.terms.iter().fold(BaseNumber::zero(), |acc, (_, b)| acc + *b)
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        if k == 0 {
            return self.clone();
        }
        Scalar { terms: self.terms.iter().map(|(e, b)| (e + k, *b)).collect() }
    }

    pub fn scale_base(&self, b: BaseNumber) -> Self {
        if b.is_zero() {
            return Self::zero();
        }
        Scalar { terms: self.terms.iter().map(|(e, c)| (*e, *c * b)).filter(|t| !t.1.is_zero()).collect() }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale_base(BaseNumber::integer(n))
    }

    /// The scalar as a single `b·q^k`, if it has one term.
    pub fn as_monomial(&self) -> Option<(i32, BaseNumber)> {
        if self.terms.len() == 1 {
            Some(self.terms[0])
        } else {
            None
        }
    }

    /// Exact division in the Laurent ring, `None` when `d` does not divide `self`.
    pub fn checked_div(&self, d: &Scalar) -> Option<Scalar> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        let (dlo, dhi) = (d.terms[0].0, d.terms.last().unwrap().0);
        let lead_inv = d.terms.last().unwrap().1.inverse()?;
        let mut rem = self.clone();
        let mut quot: Vec<(i32, BaseNumber)> = Vec::new();
        // Long division from the top exponent down; the remainder must vanish
        // before its span drops below the divisor's span.
        while !rem.is_zero() {
            let (rhi, rb) = *rem.terms.last().unwrap();
            let rlo = rem.terms[0].0;
            if rhi - rlo < dhi - dlo {
                return None;
            }
            let k = rhi - dhi;
            let c = rb * lead_inv;
            quot.push((k, c));
            rem = &rem - &Scalar::monomial(k, c).mul_ref(d);
        }
        Some(Scalar::from_terms(quot))
    }

    pub fn mul_ref(&self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        let single = |(k, b): (i32, BaseNumber), many: &Scalar| Scalar {
            terms: many.terms.iter().map(|(e, c)| (e + k, *c * b)).filter(|t| !t.1.is_zero()).collect(),
        };
        if self.terms.len() == 1 {
            return single(self.terms[0], o);
        }
        if o.terms.len() == 1 {
            return single(o.terms[0], self);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (k1, b1) in &self.terms {
            for (k2, b2) in &o.terms {
                raw.push((k1 + k2, *b1 * *b2));
            }
        }
        Scalar::from_terms(raw)
    }

    /// Signed rendering pieces, each multiplied by the given atoms.  A
    /// scalar with several components renders as one parenthesised factor.
    pub(crate) fn signed_terms(&self, atoms: &[String]) -> Vec<SignedTerm> {
        let pieces = self.flat_terms(&[]);
        if pieces.len() <= 1 {
            return self.flat_terms(atoms);
        }
        let mut body = format!("({})", SignedTerm::join(&pieces));
        for a in atoms {
            body.push('*');
            body.push_str(a);
        }
        vec![SignedTerm { negative: false, body }]
    }

    fn flat_terms(&self, atoms: &[String]) -> Vec<SignedTerm> {
        let mut out = Vec::new();
        for (k, b) in &self.terms {
            let mut extra = Vec::new();
            match *k {
                0 => {}
                1 => extra.push("q".to_string()),
                _ => extra.push(format!("q^{}", k)),
            }
            extra.extend(atoms.iter().cloned());
            out.extend(b.signed_terms(&extra));
        }
        out
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", SignedTerm::join(&self.flat_terms(&[])))
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        let mut out = TermVec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < o.terms.len() {
            if j == o.terms.len() || (i < self.terms.len() && self.terms[i].0 < o.terms[j].0) {
                out.push(self.terms[i]);
                i += 1;
            } else if i == self.terms.len() || o.terms[j].0 < self.terms[i].0 {
                out.push(o.terms[j]);
                j += 1;
            } else {
                let b = self.terms[i].1 + o.terms[j].1;
                if !b.is_zero() {
                    out.push((self.terms[i].0, b));
                }
                i += 1;
                j += 1;
            }
        }
        Scalar { terms: out }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(k, b)| (*k, -*b)).collect() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.mul_ref(o)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        self.mul_ref(&o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn additive_inverse_cancels() {
        let q = Scalar::q_pow(1);
        assert!((&q + &(-&q)).is_zero());
    }

    #[test]
    fn canonical_ordering() {
        let s = &Scalar::q_pow(4) + &Scalar::one();
        assert_eq!(s.terms()[0].0, 0);
        assert_eq!(s.terms()[1].0, 4);
        assert_eq!(s.to_string(), "1 + q^4");
    }

    #[test]
    fn half_root_two_twice() {
        let h = Scalar::inv_sqrt2();
        assert_eq!(&h + &h, Scalar::sqrt2());
    }

    #[test]
    fn products() {
        assert_eq!(&Scalar::sqrt2() * &Scalar::sqrt2(), Scalar::integer(2));
        assert!((&Scalar::q_pow(2) * &Scalar::q_pow(-2)).is_one());
        let iq = &Scalar::i() * &Scalar::q_pow(1);
        assert_eq!(&iq * &iq, -Scalar::q_pow(2));
    }

    #[test]
    fn conjugation() {
        let iq3 = &Scalar::i() * &Scalar::q_pow(3);
        assert_eq!(iq3.conj(), -(&Scalar::i() * &Scalar::q_pow(-3)));
        assert_eq!(Scalar::q_pow(4).conj(), Scalar::q_pow(-4));
        assert_eq!(Scalar::sqrt2().conj(), Scalar::sqrt2());
    }

    #[test]
    fn specialization() {
        assert!(Scalar::q_pow(4).specialize_q1().is_one());
        assert!((&Scalar::one() - &Scalar::q_pow(2)).specialize_q1().is_zero());
        let s = &(&Scalar::i() * &Scalar::q_pow(-1)) + &(&Scalar::i() * &Scalar::q_pow(1));
        assert_eq!(s.specialize_q1(), BaseNumber::i().scale(rat(2, 1)));
    }

    #[test]
    fn inverse_in_base_field() {
        let x = BaseNumber::new(rat(1, 2), rat(-3, 1), rat(2, 5), rat(7, 3));
        assert!((x * x.inverse().unwrap()).is_one());
        assert!(BaseNumber::zero().inverse().is_none());
    }

    #[test]
    fn laurent_division() {
        let a = &Scalar::q_pow(2) + &Scalar::q_pow(-2);
        let b = &Scalar::q_pow(3) - &Scalar::i();
        let ab = &a * &b;
        assert_eq!(ab.checked_div(&b), Some(a.clone()));
        assert!(Scalar::one().checked_div(&a).is_none());
    }

    #[test]
    fn rendering() {
        let s = &Scalar::frac(-1, 2) * &Scalar::q_pow(-2);
        assert_eq!(s.to_string(), "-1/2*q^-2");
        let t = &Scalar::inv_sqrt2() + &Scalar::q_pow(1);
        assert_eq!(t.to_string(), "1/2*sqrt2 + q");
    }
}
