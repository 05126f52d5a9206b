//! Presentations and the raw monomial engine.
//!
//! # Normal form
//!
//! A monomial is an exponent vector over the degree-0 generators (in the
//! canonical order of the presentation) followed by a set of distinct 1-form
//! generators, also in canonical order.  Multiplying two monomials only has
//! to count inversions: every inverted pair `(g, h)` contributes `ω(g, h)` to
//! the exponent of `q`, and every inverted pair of 1-forms a sign.
//!
//! # Sphere rules
//!
//! Rewrite rules act on the degree-0 exponent vector only.  Each side of a
//! rule must be built from central pairs (a generator next to its conjugate,
//! or weight-zero generators), which is asserted at construction so that a
//! rule can be applied anywhere inside a monomial without ordering scalars.
//! Every rule strictly decreases a weighted degree, or keeps it and lowers a
//! generator later in the canonical order, so rewriting terminates.
//!
//! # Tangential projection of forms
//!
//! A sphere relation `R = Σ g*g = 1` also implies `dR = 0`, a relation that
//! cannot be oriented as a rewrite rule without losing confluence.  Instead
//! every form is projected with the algebra endomorphism
//! `P(dg) = dg − ½·g·dR`.  `P` fixes functions, satisfies `P(dR) = 0`, is
//! idempotent and has kernel exactly the ideal generated by `dR`, so `P(x)`
//! is a canonical representative of the class of `x`.  Since `(dR)² = 0`,
//! `P` on a product of 1-forms is linear in the corrections.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use super::{AlgebraError, Deformation, Weight};
use crate::scalar::Scalar;

/// Maximum number of degree-0 generators in a presentation.
pub const MAX_FUNCTIONS: usize = 10;

/// Maximum number of 1-form generators.
const MAX_FORMS: usize = 16;

/// Canonical monomial: functions first, then distinct 1-forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub(crate) e: [u8; MAX_FUNCTIONS],
    pub(crate) f: u16,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { e: [0; MAX_FUNCTIONS], f: 0 }
    }

    pub fn exponents(&self) -> &[u8; MAX_FUNCTIONS] {
        &self.e
    }

    /// Bit `j` is set when the `j`-th 1-form generator is present.
    pub fn form_bits(&self) -> u16 {
        self.f
    }

    pub fn form_degree(&self) -> usize {
        self.f.count_ones() as usize
    }

    pub fn function_degree(&self) -> usize {
        self.e.iter().map(|&x| x as usize).sum()
    }

    pub(crate) fn functions_only(&self) -> Monomial {
        Monomial { e: self.e, f: 0 }
    }
}

impl Monomial {
    /// Byte sum of the exponents, computed word-wise (wraps past 255, which
    /// only affects the order among monomials of such degree).
    #[inline]
    fn quick_degree(&self) -> u32 {
        let mut lo = [0u8; 8];
        lo.copy_from_slice(&self.e[..8]);
        let lo = u64::from_le_bytes(lo);
        ((lo.wrapping_mul(0x0101_0101_0101_0101) >> 56) as u32) + self.e[8] as u32 + self.e[9] as u32
    }
}

impl Ord for Monomial {
    /// Form degree, then function degree, then form bits, then exponents.
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.f
            .count_ones()
            .cmp(&o.f.count_ones())
            .then_with(|| self.quick_degree().cmp(&o.quick_degree()))
            .then_with(|| self.f.cmp(&o.f))
            .then_with(|| self.e.cmp(&o.e))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

/// Declaration of one degree-0 generator.
#[derive(Clone, Debug)]
pub struct FunctionSpec {
    pub name: String,
    pub weight: Weight,
    /// Index of the conjugate generator (itself when self-adjoint).
    pub conjugate: usize,
    /// Whether the generator has an independent 1-form partner `d(g)`.
    pub has_differential: bool,
}

/// A rewrite rule `lhs → Σ cᵢ·rhsᵢ` on degree-0 exponent vectors.
#[derive(Clone, Debug)]
pub struct RewriteRule {
    pub lhs: Vec<(usize, u8)>,
    pub rhs: Vec<(i64, Vec<(usize, u8)>)>,
}

/// A sphere constraint `Σ g_a·g_b = 1`, listed as generator pairs.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub pairs: Vec<(usize, usize)>,
}

/// Differential of a generator without a 1-form partner:
/// `d(g) = Σ c·F·d(h)` with `F` a function monomial.
#[derive(Clone, Debug)]
pub struct DifferentialRule {
    pub generator: usize,
    pub terms: Vec<(Scalar, Vec<(usize, u8)>, usize)>,
}

/// Everything needed to build a [`Presentation`].
#[derive(Clone, Debug)]
pub struct PresentationSpec {
    pub name: String,
    pub functions: Vec<FunctionSpec>,
    pub rules: Vec<RewriteRule>,
    pub constraints: Vec<Constraint>,
    pub differential_rules: Vec<DifferentialRule>,
    /// Declared commutation table `g·h = q^k·h·g` (undeformed exponents),
    /// checked against the weights at construction.
    pub declared: Vec<(usize, usize, i32)>,
}

#[derive(Clone, Debug)]
pub(crate) struct GenInfo {
    pub name: String,
    pub weight: Weight,
    pub degree: u8,
    pub conjugate: usize,
    /// For a 1-form: the function it is the differential of.
    pub base: Option<usize>,
    /// For a function: its 1-form partner.
    pub differential: Option<usize>,
}

#[derive(Clone, Debug)]
struct CompiledRule {
    lhs: [u8; MAX_FUNCTIONS],
    rhs: Vec<([u8; MAX_FUNCTIONS], i64)>,
}

pub(crate) type Terms = BTreeMap<Monomial, Scalar>;
pub(crate) type RawTerms = rustc_hash::FxHashMap<Monomial, Scalar>;

/// An immutable algebra declaration with its derived commutation table.
#[derive(Debug)]
pub struct Presentation {
    name: String,
    deformation: Deformation,
    pub(crate) gens: Vec<GenInfo>,
    pub(crate) n0: usize,
    n1: usize,
    /// Scaled commutation exponents, row-major over all generators.
    omega: Vec<i32>,
    rules: Vec<CompiledRule>,
    by_name: HashMap<String, usize>,
    /// Differentials of generators without a 1-form partner (normal form).
    diff_rules: Vec<Option<Terms>>,
    /// For each 1-form generator, `g·dR` of its constraint, if any.
    tangent_correction: Vec<Option<Terms>>,
    /// The differentials `dR` of the constraints, for soundness checks.
    constraint_differentials: Vec<Terms>,
    constraint_elements: Vec<Terms>,
    classical: Option<Arc<Presentation>>,
    /// Memoized expansions of reducible exponent vectors.
    reductions: RwLock<rustc_hash::FxHashMap<[u8; MAX_FUNCTIONS], Arc<Vec<([u8; MAX_FUNCTIONS], i64)>>>>,
}

fn exps_from(list: &[(usize, u8)]) -> [u8; MAX_FUNCTIONS] {
    let mut e = [0u8; MAX_FUNCTIONS];
    for &(g, k) in list {
        e[g] += k;
    }
    e
}

fn le(a: &[u8; MAX_FUNCTIONS], b: &[u8; MAX_FUNCTIONS]) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| x <= y)
}

pub(crate) fn add_raw(acc: &mut RawTerms, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&m) {
        Some(v) => {
            *v += &c;
            if v.is_zero() {
                acc.remove(&m);
            }
        }
        None => {
            acc.insert(m, c);
        }
    }
}

impl Presentation {
    /// Builds and validates a presentation.  `classical` links the formal
    /// algebra to its commutative twin, used by [`crate::algebra::Element::specialize_q1`].
    pub fn new(
        spec: &PresentationSpec,
        deformation: Deformation,
        classical: Option<Arc<Presentation>>,
    ) -> Result<Presentation, AlgebraError> {
        let n0 = spec.functions.len();
        if n0 > MAX_FUNCTIONS {
            return Err(AlgebraError::Invalid(format!("too many generators in {}", spec.name)));
        }
        let mut gens: Vec<GenInfo> = spec
            .functions
            .iter()
            .map(|f| GenInfo {
                name: f.name.clone(),
                weight: f.weight,
                degree: 0,
                conjugate: f.conjugate,
                base: None,
                differential: None,
            })
            .collect();
        for (k, f) in spec.functions.iter().enumerate() {
            let c = f.conjugate;
            if c >= n0 || spec.functions[c].conjugate != k {
                return Err(AlgebraError::Invalid(format!("conjugation of {} is not an involution", f.name)));
            }
            if spec.functions[c].weight != f.weight.neg() {
                return Err(AlgebraError::Invalid(format!("conjugate of {} has the wrong weight", f.name)));
            }
            if spec.functions[c].has_differential != f.has_differential {
                return Err(AlgebraError::Invalid(format!("differential pairing of {} is not conjugation-stable", f.name)));
            }
        }
        for (k, f) in spec.functions.iter().enumerate() {
            if f.has_differential {
                let id = gens.len();
                gens.push(GenInfo {
                    name: format!("d({})", f.name),
                    weight: f.weight,
                    degree: 1,
                    conjugate: usize::MAX,
                    base: Some(k),
                    differential: None,
                });
                gens[k].differential = Some(id);
            }
        }
        for id in n0..gens.len() {
            let b = gens[id].base.unwrap();
            gens[id].conjugate = gens[gens[b].conjugate].differential.unwrap();
        }
        let n1 = gens.len() - n0;
        if n1 > MAX_FORMS {
            return Err(AlgebraError::Invalid(format!("too many 1-forms in {}", spec.name)));
        }
        let n = gens.len();
        let scale = deformation.exponent_scale();
        let mut omega = vec![0i32; n * n];
        for a in 0..n {
            for b in 0..n {
                omega[a * n + b] = scale * gens[a].weight.omega(gens[b].weight);
            }
        }
        for &(g, h, k) in &spec.declared {
            let derived = omega[g * n + h];
            if derived != scale * k {
                return Err(AlgebraError::TableMismatch {
                    g: gens[g].name.clone(),
                    h: gens[h].name.clone(),
                    declared: k,
                    derived,
                });
            }
        }
        let by_name = gens.iter().enumerate().map(|(k, g)| (g.name.clone(), k)).collect();
        let rules = spec
            .rules
            .iter()
            .map(|r| CompiledRule {
                lhs: exps_from(&r.lhs),
                rhs: r.rhs.iter().map(|(c, m)| (exps_from(m), *c)).collect(),
            })
            .collect();
        let mut p = Presentation {
            name: spec.name.clone(),
            deformation,
            gens,
            n0,
            n1,
            omega,
            rules,
            by_name,
            diff_rules: vec![None; n0],
            tangent_correction: vec![None; n1],
            constraint_differentials: Vec::new(),
            constraint_elements: Vec::new(),
            classical,
            reductions: RwLock::default(),
        };
        p.check_rules_central()?;
        for c in &spec.constraints {
            p.install_constraint(c)?;
        }
        for r in &spec.differential_rules {
            if p.gens[r.generator].differential.is_some() {
                return Err(AlgebraError::Invalid(format!("{} already has a 1-form partner", p.gens[r.generator].name)));
            }
            let mut raw = RawTerms::default();
            for (c, f, h) in &r.terms {
                let dh = p.gens[*h]
                    .differential
                    .ok_or_else(|| AlgebraError::Invalid("differential rule uses a generator without d".into()))?;
                let m = Monomial { e: exps_from(f), f: 0 };
                if let Some((k, neg, prod)) = p.mul_mono(&m, &p.gen_mono(dh)) {
                    let s = c.shift(k);
                    add_raw(&mut raw, prod, if neg { -s } else { s });
                }
            }
            p.diff_rules[r.generator] = Some(p.normalize(raw));
        }
        for g in 0..n0 {
            if p.gens[g].differential.is_none() && p.diff_rules[g].is_none() {
                return Err(AlgebraError::Invalid(format!("generator {} has no differential", p.gens[g].name)));
            }
        }
        Ok(p)
    }

    fn check_rules_central(&self) -> Result<(), AlgebraError> {
        let n = self.gens.len();
        // Forms always sit to the right of functions, so only function
        // generators can be interleaved with a rule monomial.
        let mut sides: Vec<(String, [u8; MAX_FUNCTIONS])> = Vec::new();
        for (k, r) in self.rules.iter().enumerate() {
            sides.push((format!("rule {} lhs", k), r.lhs));
            for (j, (m, _)) in r.rhs.iter().enumerate() {
                sides.push((format!("rule {} rhs term {}", k, j), *m));
            }
        }
        for (label, m) in sides {
            for h in 0..self.n0 {
                let mut before = 0;
                let mut after = 0;
                for g in 0..self.n0 {
                    let w = m[g] as i32 * self.omega[g * n + h];
                    if h < g {
                        before += w;
                    }
                    if g < h {
                        after += w;
                    }
                }
                if before != 0 || after != 0 {
                    return Err(AlgebraError::NonCentralRule(label));
                }
            }
        }
        Ok(())
    }

    fn install_constraint(&mut self, c: &Constraint) -> Result<(), AlgebraError> {
        let mut raw_r = RawTerms::default();
        let mut raw_dr = RawTerms::default();
        for &(a, b) in &c.pairs {
            let (ma, mb) = (self.gen_mono(a), self.gen_mono(b));
            if let Some((k, neg, m)) = self.mul_mono(&ma, &mb) {
                let s = Scalar::q_pow(k);
                add_raw(&mut raw_r, m, if neg { -s } else { s });
            }
            let da = self.gens[a].differential.ok_or_else(|| AlgebraError::Invalid("constraint generator without d".into()))?;
            let db = self.gens[b].differential.ok_or_else(|| AlgebraError::Invalid("constraint generator without d".into()))?;
            for (x, y) in [(self.gen_mono(da), mb), (ma, self.gen_mono(db))] {
                if let Some((k, neg, m)) = self.mul_mono(&x, &y) {
                    let s = Scalar::q_pow(k);
                    add_raw(&mut raw_dr, m, if neg { -s } else { s });
                }
            }
        }
        let dr = self.normalize(raw_dr);
        for (m, _) in dr.iter() {
            if self.mono_weight(m) != Weight(0, 0) {
                return Err(AlgebraError::Invalid("constraint differential is not of weight zero".into()));
            }
        }
        let mut members: Vec<usize> = c.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        members.sort();
        members.dedup();
        for g in members {
            let dg = self.gens[g].differential.unwrap();
            let j = dg - self.n0;
            if self.tangent_correction[j].is_some() {
                return Err(AlgebraError::Invalid("generator in two constraints".into()));
            }
            let mut raw = RawTerms::default();
            let mg = self.gen_mono(g);
            for (m, s) in dr.iter() {
                if let Some((k, neg, prod)) = self.mul_mono(&mg, m) {
                    let t = s.shift(k);
                    add_raw(&mut raw, prod, if neg { -t } else { t });
                }
            }
            self.tangent_correction[j] = Some(self.normalize(raw));
        }
        self.constraint_elements.push(self.normalize(raw_r));
        self.constraint_differentials.push(dr);
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn deformation(&self) -> Deformation {
        self.deformation
    }

    pub fn classical_twin(&self) -> Option<&Arc<Presentation>> {
        self.classical.as_ref()
    }

    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }

    pub fn function_count(&self) -> usize {
        self.n0
    }

    pub fn form_generator_count(&self) -> usize {
        self.n1
    }

    pub fn generator_name(&self, id: usize) -> &str {
        &self.gens[id].name
    }

    pub fn generator_weight(&self, id: usize) -> Weight {
        self.gens[id].weight
    }

    pub fn generator_degree(&self, id: usize) -> u8 {
        self.gens[id].degree
    }

    pub fn conjugate_of(&self, id: usize) -> usize {
        self.gens[id].conjugate
    }

    pub fn differential_of(&self, id: usize) -> Option<usize> {
        self.gens[id].differential
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    /// Scaled commutation exponent: `g·h = q^k·h·g` (up to the sign for odd pairs).
    /// For a 1-form generator, the function it is the differential of.
    pub fn base_of(&self, id: usize) -> Option<usize> {
        self.gens[id].base
    }

    /// The rewrite rules as generator words: `(lhs, [(coefficient, rhs word)])`.
    pub fn rule_words(&self) -> Vec<(Vec<usize>, Vec<(i64, Vec<usize>)>)> {
        let to_word = |e: &[u8; MAX_FUNCTIONS]| -> Vec<usize> {
            (0..self.n0).flat_map(|g| std::iter::repeat(g).take(e[g] as usize)).collect()
        };
        self.rules.iter().map(|r| (to_word(&r.lhs), r.rhs.iter().map(|(m, c)| (*c, to_word(m))).collect())).collect()
    }

    pub fn commutation_exponent(&self, g: usize, h: usize) -> i32 {
        self.omega[g * self.gens.len() + h]
    }

    pub(crate) fn constraint_elements(&self) -> &[Terms] {
        &self.constraint_elements
    }

    pub(crate) fn constraint_differentials(&self) -> &[Terms] {
        &self.constraint_differentials
    }

    pub(crate) fn gen_mono(&self, id: usize) -> Monomial {
        let mut m = Monomial::one();
        if id < self.n0 {
            m.e[id] = 1;
        } else {
            m.f = 1 << (id - self.n0);
        }
        m
    }

    pub(crate) fn mono_weight(&self, m: &Monomial) -> Weight {
        let mut w = Weight(0, 0);
        for g in 0..self.n0 {
            if m.e[g] > 0 {
                w = w.add(self.gens[g].weight.scale(m.e[g] as i32));
            }
        }
        let mut bits = m.f;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            w = w.add(self.gens[self.n0 + j].weight);
            bits &= bits - 1;
        }
        w
    }

    /// Generator word of a monomial: functions with multiplicity, then forms.
    pub(crate) fn word(&self, m: &Monomial) -> Vec<usize> {
        let mut w = Vec::new();
        for g in 0..self.n0 {
            for _ in 0..m.e[g] {
                w.push(g);
            }
        }
        let mut bits = m.f;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            w.push(self.n0 + j);
            bits &= bits - 1;
        }
        w
    }

    /// Raw product of canonical monomials, before sphere rewriting:
    /// `a·b = (−1)^neg · q^k · m`, or `None` when a 1-form repeats.
    pub(crate) fn mul_mono(&self, a: &Monomial, b: &Monomial) -> Option<(i32, bool, Monomial)> {
        if a.f & b.f != 0 {
            return None;
        }
        let scale = self.deformation.exponent_scale();
        let mut e = [0u8; MAX_FUNCTIONS];
        for g in 0..self.n0 {
            e[g] = a.e[g].checked_add(b.e[g]).expect("exponent overflow in monomial product");
        }
        let mut k = 0i32;
        let mut neg = false;
        if scale != 0 {
            // Functions of `b` move left past the forms of `a`.
            if a.f != 0 {
                let wa = self.mono_weight(&Monomial { e: [0; MAX_FUNCTIONS], f: a.f });
                let wb = self.mono_weight(&b.functions_only());
                k += wa.omega(wb);
            }
            // Merge of the function parts: pairs g in a, h in b with h < g.
            let mut suffix = Weight(0, 0);
            for h in (0..self.n0).rev() {
                if b.e[h] > 0 && suffix != Weight(0, 0) {
                    k += b.e[h] as i32 * suffix.omega(self.gens[h].weight);
                }
                if a.e[h] > 0 {
                    suffix = suffix.add(self.gens[h].weight.scale(a.e[h] as i32));
                }
            }
        }
        // Merge of the form parts: pairs x in a, y in b with y < x.
        if a.f != 0 && b.f != 0 {
            let mut bits = b.f;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                let above = a.f & !((2u16 << j) - 1);
                if above != 0 {
                    if above.count_ones() % 2 == 1 {
                        neg = !neg;
                    }
                    if scale != 0 {
                        let wx = self.mono_weight(&Monomial { e: [0; MAX_FUNCTIONS], f: above });
                        k += wx.omega(self.gens[self.n0 + j].weight);
                    }
                }
                bits &= bits - 1;
            }
        }
        Some((k, neg, Monomial { e, f: a.f | b.f }))
    }

    fn apply_rule(&self, r: &CompiledRule, e: &[u8; MAX_FUNCTIONS]) -> Vec<([u8; MAX_FUNCTIONS], i64)> {
        let mut rest = *e;
        for g in 0..self.n0 {
            rest[g] -= r.lhs[g];
        }
        r.rhs
            .iter()
            .map(|(m, c)| {
                let mut out = rest;
                for g in 0..self.n0 {
                    out[g] += m[g];
                }
                (out, *c)
            })
            .collect()
    }

    fn first_rule(&self, e: &[u8; MAX_FUNCTIONS]) -> Option<&CompiledRule> {
        self.rules.iter().find(|r| le(&r.lhs, e))
    }

    /// Rewrites a degree-0 exponent vector to its irreducible expansion.
    pub(crate) fn reduce_exps(&self, e: [u8; MAX_FUNCTIONS]) -> Vec<([u8; MAX_FUNCTIONS], i64)> {
        if self.first_rule(&e).is_none() {
            return vec![(e, 1)];
        }
        self.reduction(e).as_ref().clone()
    }

    /// The memoized expansion of a reducible exponent vector.
    fn reduction(&self, e: [u8; MAX_FUNCTIONS]) -> Arc<Vec<([u8; MAX_FUNCTIONS], i64)>> {
        if let Some(v) = self.reductions.read().expect("reduction cache").get(&e) {
            return v.clone();
        }
        let mut pending: rustc_hash::FxHashMap<[u8; MAX_FUNCTIONS], i64> = Default::default();
        pending.insert(e, 1);
        let mut done: BTreeMap<[u8; MAX_FUNCTIONS], i64> = BTreeMap::new();
        while let Some((&m, _)) = pending.iter().next() {
            let c = pending.remove(&m).unwrap();
            if c == 0 {
                continue;
            }
            match self.first_rule(&m) {
                None => {
                    *done.entry(m).or_insert(0) += c;
                }
                Some(r) => {
                    for (m2, c2) in self.apply_rule(r, &m) {
                        let v = c.checked_mul(c2).expect("rewrite coefficient overflow");
                        *pending.entry(m2).or_insert(0) += v;
                    }
                }
            }
        }
        let v = Arc::new(done.into_iter().filter(|(_, c)| *c != 0).collect::<Vec<_>>());
        self.reductions.write().expect("reduction cache").insert(e, v.clone());
        v
    }

    /// Applies the sphere rules to every monomial of a raw sum.
    pub(crate) fn normalize(&self, raw: RawTerms) -> Terms {
        if raw.keys().all(|m| self.first_rule(&m.e).is_none()) {
            return raw.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        let mut acc = RawTerms::default();
        for (m, c) in raw {
            if c.is_zero() {
                continue;
            }
            if self.first_rule(&m.e).is_none() {
                add_raw(&mut acc, m, c);
                continue;
            }
            for &(e, k) in self.reduction(m.e).iter() {
                add_raw(&mut acc, Monomial { e, f: m.f }, c.scale_int(k));
            }
        }
        acc.into_iter().collect()
    }

    /// Product of two normal-form sums (no projection needed: the image of
    /// the tangential projection is a subalgebra).
    pub(crate) fn mul_terms(&self, a: &Terms, b: &Terms) -> Terms {
        let mut raw = RawTerms::with_capacity_and_hasher(a.len() * b.len(), Default::default());
        for (ma, ca) in a {
            for (mb, cb) in b {
                if let Some((k, neg, m)) = self.mul_mono(ma, mb) {
                    let s = (ca * cb).shift(k);
                    add_raw(&mut raw, m, if neg { -s } else { s });
                }
            }
        }
        self.normalize(raw)
    }

    /// Tangential projection onto canonical representatives of forms.
    pub(crate) fn project(&self, terms: Terms) -> Terms {
        let touched = |m: &Monomial| {
            let mut bits = m.f;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                if self.tangent_correction[j].is_some() {
                    return true;
                }
                bits &= bits - 1;
            }
            false
        };
        if !terms.keys().any(touched) {
            return terms;
        }
        let half = Scalar::frac(-1, 2);
        let mut raw = RawTerms::default();
        for (m, c) in terms {
            let corr_bits: Vec<usize> = {
                let mut v = Vec::new();
                let mut bits = m.f;
                while bits != 0 {
                    let j = bits.trailing_zeros() as usize;
                    if self.tangent_correction[j].is_some() {
                        v.push(j);
                    }
                    bits &= bits - 1;
                }
                v
            };
            if !corr_bits.is_empty() {
                let coeff = &c * &half;
                for j in corr_bits {
                    let below = m.f & ((1u16 << j) - 1);
                    let above = m.f & !((2u16 << j) - 1);
                    let left = Monomial { e: m.e, f: below };
                    let right = Monomial { e: [0; MAX_FUNCTIONS], f: above };
                    for (mid, s) in self.tangent_correction[j].as_ref().unwrap() {
                        let Some((k1, n1, lm)) = self.mul_mono(&left, mid) else { continue };
                        let Some((k2, n2, out)) = self.mul_mono(&lm, &right) else { continue };
                        let t = (&coeff * s).shift(k1 + k2);
                        add_raw(&mut raw, out, if n1 != n2 { -t } else { t });
                    }
                }
            }
            add_raw(&mut raw, m, c);
        }
        self.normalize(raw)
    }

    /// Differential of a normal-form sum (graded Leibniz, then projection).
    pub(crate) fn differential(&self, terms: &Terms) -> Terms {
        let mut raw = RawTerms::default();
        for (m, c) in terms {
            if m.function_degree() == 0 {
                continue;
            }
            for g in 0..self.n0 {
                let eg = m.e[g];
                if eg == 0 {
                    continue;
                }
                let dg: Terms = match self.gens[g].differential {
                    Some(d) => std::iter::once((self.gen_mono(d), Scalar::one())).collect(),
                    None => self.diff_rules[g].clone().expect("missing differential rule"),
                };
                for t in 0..eg {
                    let mut prefix = Monomial::one();
                    let mut suffix = Monomial { e: [0; MAX_FUNCTIONS], f: m.f };
                    for h in 0..self.n0 {
                        if h < g {
                            prefix.e[h] = m.e[h];
                        } else if h > g {
                            suffix.e[h] = m.e[h];
                        }
                    }
                    prefix.e[g] = t;
                    suffix.e[g] = eg - 1 - t;
                    for (dm, ds) in &dg {
                        let Some((k1, n1, pm)) = self.mul_mono(&prefix, dm) else { continue };
                        let Some((k2, n2, out)) = self.mul_mono(&pm, &suffix) else { continue };
                        let s = (c * ds).shift(k1 + k2);
                        add_raw(&mut raw, out, if n1 != n2 { -s } else { s });
                    }
                }
            }
        }
        self.project(self.normalize(raw))
    }

    /// Graded involution: reverses words, conjugates generators and scalars.
    pub(crate) fn involution(&self, terms: &Terms) -> Terms {
        let mut raw = RawTerms::default();
        for (m, c) in terms {
            let w = self.word(m);
            let mut acc = Monomial::one();
            let mut k = 0;
            let mut neg = false;
            let mut zero = false;
            for &g in w.iter().rev() {
                match self.mul_mono(&acc, &self.gen_mono(self.gens[g].conjugate)) {
                    Some((k1, n1, out)) => {
                        k += k1;
                        neg ^= n1;
                        acc = out;
                    }
                    None => {
                        zero = true;
                        break;
                    }
                }
            }
            if zero {
                continue;
            }
            let deg = m.form_degree();
            if (deg * deg.saturating_sub(1) / 2) % 2 == 1 {
                neg = !neg;
            }
            let s = c.conj().shift(k);
            add_raw(&mut raw, acc, if neg { -s } else { s });
        }
        self.normalize(raw)
    }

    /// Normal form of an arbitrary product of generators.
    pub(crate) fn word_terms(&self, coeff: &Scalar, word: &[usize]) -> Terms {
        let mut acc = Monomial::one();
        let mut k = 0;
        let mut neg = false;
        for &g in word {
            match self.mul_mono(&acc, &self.gen_mono(g)) {
                Some((k1, n1, out)) => {
                    k += k1;
                    neg ^= n1;
                    acc = out;
                }
                None => return Terms::new(),
            }
        }
        let s = coeff.shift(k);
        let mut raw = RawTerms::default();
        add_raw(&mut raw, acc, if neg { -s } else { s });
        self.project(self.normalize(raw))
    }

    /// Checks that every overlap of two rule left-hand sides rewrites to a
    /// unique result; together with termination this proves confluence.
    pub fn check_critical_pairs(&self) -> Result<usize, String> {
        let mut checked = 0;
        for (i, ri) in self.rules.iter().enumerate() {
            for rj in self.rules.iter().skip(i + 1) {
                let overlap = (0..self.n0).any(|g| ri.lhs[g] > 0 && rj.lhs[g] > 0);
                if !overlap {
                    continue;
                }
                let mut lcm = [0u8; MAX_FUNCTIONS];
                for g in 0..self.n0 {
                    lcm[g] = ri.lhs[g].max(rj.lhs[g]);
                }
                let via = |r: &CompiledRule| {
                    let mut acc: BTreeMap<[u8; MAX_FUNCTIONS], i64> = BTreeMap::new();
                    for (m, c) in self.apply_rule(r, &lcm) {
                        for (m2, c2) in self.reduce_exps(m) {
                            *acc.entry(m2).or_insert(0) += c * c2;
                        }
                    }
                    acc.retain(|_, c| *c != 0);
                    acc
                };
                if via(ri) != via(rj) {
                    return Err(format!("critical pair at {:?} does not resolve", &lcm[..self.n0]));
                }
                checked += 1;
            }
        }
        Ok(checked)
    }

    /// Renders a monomial as a product of generator names.
    pub(crate) fn render_atoms(&self, m: &Monomial) -> Vec<String> {
        let mut atoms = Vec::new();
        for g in 0..self.n0 {
            match m.e[g] {
                0 => {}
                1 => atoms.push(self.gens[g].name.clone()),
                k => atoms.push(format!("{}^{}", self.gens[g].name, k)),
            }
        }
        let mut bits = m.f;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            atoms.push(self.gens[self.n0 + j].name.clone());
            bits &= bits - 1;
        }
        atoms
    }
}
