//! Quasi-commutative normal-form engine.
//!
//! An algebra is declared by a [`PresentationSpec`] listing degree-0
//! generators with doubled torus weights, their conjugates, rewrite rules for
//! the sphere relations and the differentials of generators that have no
//! independent 1-form partner.  Every pair of generators commutes up to the
//! scalar `q^ω(g,h)` with `ω(g,h) = W_g.0·W_h.1 − W_g.1·W_h.0` on doubled
//! weights, and odd generators pick up a sign as well.
//!
//! Elements are kept in a unique normal form: functions to the left of
//! 1-forms in canonical generator order, sphere rules applied to a fixpoint,
//! and differential forms projected tangentially to the sphere (see
//! [`presentation`] for the projection that encodes `d(Σ g*g) = 0`).

mod element;
mod presentation;

pub use element::{sphere_relations, Element, WeightClass};
pub use presentation::{
    Constraint, DifferentialRule, FunctionSpec, Monomial, Presentation, PresentationSpec, RewriteRule, MAX_FUNCTIONS,
};

use thiserror::Error;

/// Doubled torus weight `(2h₁, 2h₂)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight(pub i32, pub i32);

impl Weight {
    pub fn neg(self) -> Weight {
        Weight(-self.0, -self.1)
    }

    pub fn add(self, o: Weight) -> Weight {
        Weight(self.0 + o.0, self.1 + o.1)
    }

    pub fn scale(self, k: i32) -> Weight {
        Weight(self.0 * k, self.1 * k)
    }

    /// The exponent of `q` in the commutation scalar `g h = q^ω h g`.
    pub fn omega(self, o: Weight) -> i32 {
        self.0 * o.1 - self.1 * o.0
    }

    /// Twist exponent `r₁W₂ − r₂W₁` for a root `r`.
    pub fn twist_exponent(self, r: (i32, i32)) -> i32 {
        r.0 * self.1 - r.1 * self.0
    }
}

impl std::fmt::Display for Weight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let half = |w: i32| {
            if w % 2 == 0 {
                format!("{}", w / 2)
            } else {
                format!("{}/2", w)
            }
        };
        write!(f, "({}, {})", half(self.0), half(self.1))
    }
}

/// Whether the algebra is deformed (formal `q`) or its classical limit.
///
/// In the classical limit every commutation and twist exponent is scaled to
/// zero and every explicit `q`-power in a construction evaluates to one, so
/// the same builders produce the commutative algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Deformation {
    Formal,
    Classical,
}

impl Deformation {
    /// The scalar `q^k`, or `1` in the classical limit.
    pub fn q(self, k: i32) -> crate::scalar::Scalar {
        match self {
            Deformation::Formal => crate::scalar::Scalar::q_pow(k),
            Deformation::Classical => crate::scalar::Scalar::one(),
        }
    }

    /// Factor applied to commutation and twist exponents.
    pub fn exponent_scale(self) -> i32 {
        match self {
            Deformation::Formal => 1,
            Deformation::Classical => 0,
        }
    }
}

/// Errors raised by the normal-form engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("elements belong to different presentations ({0} vs {1})")]
    PresentationMismatch(String, String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("declared commutation {g}·{h} = q^{declared} {h}·{g} disagrees with weights (q^{derived})")]
    TableMismatch { g: String, h: String, declared: i32, derived: i32 },
    #[error("rewrite rule `{0}` is not central: rewriting would change ordering scalars")]
    NonCentralRule(String),
    #[error("invalid presentation: {0}")]
    Invalid(String),
}
