//! The so(5) and so(5,1) bracket table and its verification on a
//! realization.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, Presentation};
use crate::geometry::clifford::{is_root, is_short_root};
use crate::scalar::Scalar;

use super::derivation::{combination_on, commutator_on};
use super::families::{Action, Generator};

/// The expected value of one bracket `[x, y]`.
#[derive(Clone, Debug, PartialEq)]
pub enum Expected {
    Zero,
    /// A fixed combination `Σ cₖ·gₖ`.
    Combination(Vec<(Scalar, Generator)>),
    /// `c·g` with the constant `c` (an `N` or `Ñ`) to be extracted.
    Proportional(Generator),
}

impl Expected {
    fn negated(self) -> Expected {
        match self {
            Expected::Combination(v) => Expected::Combination(v.into_iter().map(|(c, g)| (-c, g)).collect()),
            other => other,
        }
    }
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expected::Zero => write!(f, "0"),
            Expected::Combination(v) => {
                let parts: Vec<String> = v.iter().map(|(c, g)| format!("({})*{}", c, g)).collect();
                write!(f, "{}", parts.join(" + "))
            }
            Expected::Proportional(g) => write!(f, "N*{}", g),
        }
    }
}

fn add(a: (i32, i32), b: (i32, i32)) -> (i32, i32) {
    (a.0 + b.0, a.1 + b.1)
}

fn cartan(r: (i32, i32), k: i64) -> Expected {
    let mut v = Vec::new();
    if r.0 != 0 {
        v.push((Scalar::integer(k * r.0 as i64), Generator::H(1)));
    }
    if r.1 != 0 {
        v.push((Scalar::integer(k * r.1 as i64), Generator::H(2)));
    }
    Expected::Combination(v)
}

fn scaled(c: Scalar, g: Generator) -> Expected {
    if c.is_zero() {
        Expected::Zero
    } else {
        Expected::Combination(vec![(c, g)])
    }
}

/// The expected value of `[x, y]` in so(5,1):
/// `[H₁,H₂] = 0`, `[H_j,E_r] = r_jE_r`, `[E₋ᵣ,E_r] = r₁H₁ + r₂H₂`,
/// `[E_r,E_r′] = N E_{r+r′}`, and for the conformal part `[H₀,H_j] = 0`,
/// `[H_j,G_r] = r_jG_r`, `[H₀,G_r] = √2E_r`, `[H₀,E_r] = G_r/√2` on short
/// roots, `[G₋ᵣ,G_r] = −2r₁H₁ − 2r₂H₂`, `[G_r,G_r′] = N E_{r+r′}`,
/// `[E_r,G_r′] = Ñ G_{r+r′}` and `[E₋ᵣ,G_r] = √2H₀`.
///
/// The sign of `[G₋ᵣ,G_r]` is forced by the Jacobi identity: writing
/// `G_r = √2[H₀,E_r]` gives `[G₋ᵣ,G_r] = −2[E₋ᵣ,E_r]`.  It is often quoted
/// with the opposite sign.  `[H₀,E_r]` on a long root is not part of the
/// list and is expected to vanish, as it does classically.
pub fn expected(x: Generator, y: Generator) -> Expected {
    use Generator::*;
    let sqrt2 = Scalar::sqrt2();
    match (x, y) {
        (H(_), H(_)) | (H0, H(_)) | (H(_), H0) | (H0, H0) => Expected::Zero,
        (H(j), E(a, b)) | (H(j), G(a, b)) => {
            let rj = if j == 1 { a } else { b };
            scaled(Scalar::integer(rj as i64), y)
        }
        (E(..), H(_)) | (G(..), H(_)) | (E(..), H0) | (G(..), H0) => expected(y, x).negated(),
        (H0, G(a, b)) => scaled(sqrt2, E(a, b)),
        (H0, E(a, b)) => {
            if is_short_root((a, b)) {
                scaled(Scalar::inv_sqrt2(), G(a, b))
            } else {
                Expected::Zero
            }
        }
        (E(a, b), E(c, d)) => {
            if (a + c, b + d) == (0, 0) {
                cartan((c, d), 1)
            } else if is_root(add((a, b), (c, d))) {
                Expected::Proportional(E(a + c, b + d))
            } else {
                Expected::Zero
            }
        }
        (G(a, b), G(c, d)) => {
            if (a + c, b + d) == (0, 0) {
                cartan((c, d), -2)
            } else if is_root(add((a, b), (c, d))) {
                Expected::Proportional(E(a + c, b + d))
            } else {
                Expected::Zero
            }
        }
        (E(a, b), G(c, d)) => {
            if (a + c, b + d) == (0, 0) {
                scaled(sqrt2, H0)
            } else if is_short_root(add((a, b), (c, d))) {
                Expected::Proportional(G(a + c, b + d))
            } else {
                Expected::Zero
            }
        }
        (G(..), E(..)) => match expected(y, x) {
            Expected::Combination(v) => Expected::Combination(v).negated(),
            other => other,
        },
    }
}

/// All unordered pairs of the given generators, in list order.
pub fn pairs(generators: &[Generator]) -> Vec<(Generator, Generator)> {
    let mut out = Vec::new();
    for (i, &x) in generators.iter().enumerate() {
        for &y in &generators[i + 1..] {
            out.push((x, y));
        }
    }
    out
}

/// Random normal-form monomials of degree 2 to 4 in the function generators;
/// every fourth carries one 1-form factor.
pub fn monomial_panel(pres: &std::sync::Arc<Presentation>, count: usize, seed: u64) -> Vec<Element> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let functions: Vec<usize> = (0..pres.function_count()).collect();
    let forms: Vec<usize> = (pres.function_count()..pres.generator_count()).collect();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let len = rng.gen_range(2..=4);
        let mut word: Vec<usize> = (0..len).map(|_| *functions.choose(&mut rng).expect("generators")).collect();
        if out.len() % 4 == 3 && !forms.is_empty() {
            word.push(*forms.choose(&mut rng).expect("forms"));
        }
        let m = Element::word_ids(pres, Scalar::one(), &word);
        if !m.is_zero() {
            out.push(m);
        }
    }
    out
}

/// The outcome of checking one bracket on a realization.
#[derive(Clone, Debug)]
pub struct BracketReport {
    pub left: Generator,
    pub right: Generator,
    pub expected: Expected,
    /// The extracted constant for [`Expected::Proportional`] rows.
    pub constant: Option<Scalar>,
    /// Empty when the bracket agrees with the table on every test element.
    pub failures: Vec<String>,
}

impl BracketReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn label(&self) -> String {
        format!("[{},{}]", self.left, self.right)
    }
}

/// Finds `c` with `value = c·target`, if there is one.
fn proportionality(value: &Element, target: &Element) -> Option<Scalar> {
    let (m, t) = target.terms().next()?;
    let c = value.coefficient(m).checked_div(t)?;
    if *value == target.scale(&c) {
        Some(c)
    } else {
        None
    }
}

/// Checks `[x, y]` against [`expected`] on every function generator and on
/// each panel element.  For `N`-type rows the constant is extracted from the
/// first generator on which the target does not vanish.
pub fn check_bracket(action: &Action, x: Generator, y: Generator, panel: &[Element]) -> BracketReport {
    let pres = action.presentation();
    let (dx, dy) = (action.get(x), action.get(y));
    let exp = expected(x, y);
    let gens: Vec<Element> = (0..pres.function_count()).map(|g| Element::generator(pres, g)).collect();
    let mut failures = Vec::new();
    let mut constant = None;
    let combination: Vec<(Scalar, Generator)> = match &exp {
        Expected::Zero => Vec::new(),
        Expected::Combination(v) => v.clone(),
        Expected::Proportional(target) => {
            let t = action.get(*target);
            let mut found = None;
            for e in &gens {
                let te = t.apply(e);
                if te.is_zero() {
                    continue;
                }
                found = proportionality(&commutator_on(dx, dy, e), &te);
                if found.is_none() {
                    failures.push(format!("[{},{}]({}) is not a multiple of {}({})", x, y, e, target, e));
                }
                break;
            }
            match found {
                Some(c) => {
                    constant = Some(c.clone());
                    vec![(c, *target)]
                }
                None => {
                    if failures.is_empty() {
                        failures.push(format!("{} vanishes on every generator", target));
                    }
                    return BracketReport { left: x, right: y, expected: exp, constant: None, failures };
                }
            }
        }
    };
    let terms: Vec<(Scalar, &super::derivation::TwistedDerivation)> =
        combination.iter().map(|(c, g)| (c.clone(), action.get(*g))).collect();
    for e in gens.iter().chain(panel.iter()) {
        let lhs = commutator_on(dx, dy, e);
        let rhs = combination_on(&terms, e);
        if lhs != rhs {
            failures.push(format!("[{},{}]({}) = {} but expected {}", x, y, e, lhs, rhs));
            break;
        }
    }
    BracketReport { left: x, right: y, expected: exp, constant, failures }
}

/// Checks every bracket among `generators`.
pub fn check_table(action: &Action, generators: &[Generator], panel: &[Element]) -> Vec<BracketReport> {
    use rayon::prelude::*;
    pairs(generators).par_iter().map(|&(x, y)| check_bracket(action, x, y, panel)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_table_shape() {
        use Generator::*;
        assert_eq!(expected(H(1), E(1, 1)), Expected::Combination(vec![(Scalar::one(), E(1, 1))]));
        assert_eq!(expected(E(-1, -1), E(1, 1)), cartan((1, 1), 1));
        assert_eq!(expected(E(1, 1), E(-1, -1)), cartan((-1, -1), 1));
        assert_eq!(expected(E(1, 0), E(0, 1)), Expected::Proportional(E(1, 1)));
        assert_eq!(expected(E(1, 1), E(1, -1)), Expected::Zero);
        assert_eq!(expected(E(-1, -1), G(1, 0)), Expected::Proportional(G(0, -1)));
        assert_eq!(expected(E(-1, 0), G(1, 0)), Expected::Combination(vec![(Scalar::sqrt2(), H0)]));
        assert_eq!(expected(G(-1, 0), G(1, 0)), cartan((1, 0), -2));
        assert_eq!(pairs(&Generator::all()).len(), 105);
    }
}
