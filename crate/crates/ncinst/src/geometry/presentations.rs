//! The deformed four-sphere, seven-sphere and stereographic chart algebras.

use std::sync::{Arc, OnceLock};

use crate::algebra::{
    Constraint, Deformation, DifferentialRule, FunctionSpec, Presentation, PresentationSpec, RewriteRule, Weight,
};
use crate::scalar::Scalar;

/// The three algebras of the construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    S4,
    S7,
    Chart,
}

impl AlgebraKind {
    pub fn parse(s: &str) -> Option<AlgebraKind> {
        match s {
            "s4" => Some(AlgebraKind::S4),
            "s7" => Some(AlgebraKind::S7),
            "chart" => Some(AlgebraKind::Chart),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            AlgebraKind::S4 => "s4",
            AlgebraKind::S7 => "s7",
            AlgebraKind::Chart => "chart",
        }
    }
}

fn f(name: &str, w: (i32, i32), conjugate: usize, has_differential: bool) -> FunctionSpec {
    FunctionSpec { name: name.to_string(), weight: Weight(w.0, w.1), conjugate, has_differential }
}

/// Four-sphere: `z₀ < z₁ < z₁* < z₂ < z₂*`, sphere rule
/// `z₂z₂* → 1 − z₀² − z₁z₁*` (lowers the `z₂` degree).
pub fn s4_spec() -> PresentationSpec {
    let functions = vec![
        f("z0", (0, 0), 0, true),
        f("z1", (2, 0), 2, true),
        f("z1'", (-2, 0), 1, true),
        f("z2", (0, 2), 4, true),
        f("z2'", (0, -2), 3, true),
    ];
    let rules = vec![RewriteRule {
        lhs: vec![(3, 1), (4, 1)],
        rhs: vec![(1, vec![]), (-1, vec![(0, 2)]), (-1, vec![(1, 1), (2, 1)])],
    }];
    // z_μ z_ν = λ_{μν} z_ν z_μ, z_μ z_ν* = λ_{νμ} z_ν* z_μ with λ₁₂ = λ = q⁴,
    // z₀ central; the same scalars for the 1-form relations.
    let mut declared = vec![(1, 3, 4), (1, 4, -4), (3, 2, 4), (2, 4, 4), (2, 3, -4), (4, 1, 4)];
    for g in 0..5 {
        declared.push((0, g, 0));
    }
    let (dz1, dz2, dz2c) = (6, 8, 9);
    declared.extend([(1, dz2, 4), (dz1, dz2, 4), (1, dz2c, -4), (3, dz1, -4)]);
    PresentationSpec {
        name: "s4".into(),
        functions,
        rules,
        constraints: vec![Constraint { pairs: vec![(0, 0), (2, 1), (4, 3)] }],
        differential_rules: vec![],
        declared,
    }
}

/// Seven-sphere: `ψ₁ < ψ₁* < … < ψ₄ < ψ₄*`, sphere rule
/// `ψ₄ψ₄* → 1 − Σ_{a<4} ψₐψₐ*` (lowers the `ψ₄` degree).
pub fn s7_spec() -> PresentationSpec {
    let w = [(1, -1), (-1, 1), (-1, -1), (1, 1)];
    let mut functions = Vec::new();
    for a in 0..4 {
        functions.push(f(&format!("psi{}", a + 1), w[a], 2 * a + 1, true));
        functions.push(f(&format!("psi{}'", a + 1), (-w[a].0, -w[a].1), 2 * a, true));
    }
    let rules = vec![RewriteRule {
        lhs: vec![(6, 1), (7, 1)],
        rhs: vec![(1, vec![]), (-1, vec![(0, 1), (1, 1)]), (-1, vec![(2, 1), (3, 1)]), (-1, vec![(4, 1), (5, 1)])],
    }];
    // λ′ in powers of q (μ = q²).
    let lam = [[0, 0, -2, 2], [0, 0, 2, -2], [2, -2, 0, 0], [-2, 2, 0, 0]];
    let mut declared = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            declared.push((2 * a, 2 * b, lam[a][b]));
            declared.push((2 * a, 2 * b + 1, lam[b][a]));
            declared.push((2 * a + 1, 2 * b + 1, lam[a][b]));
        }
    }
    PresentationSpec {
        name: "s7".into(),
        functions,
        rules,
        constraints: vec![Constraint { pairs: vec![(1, 0), (3, 2), (5, 4), (7, 6)] }],
        differential_rules: vec![],
        declared,
    }
}

/// Generators of the chart algebra, by name.
pub mod chart_ids {
    pub const SIGMA: usize = 0;
    pub const RHO: usize = 1;
    pub const ZETA1: usize = 2;
    pub const ZETA1C: usize = 3;
    pub const ZETA2: usize = 4;
    pub const ZETA2C: usize = 5;
    pub const U1: usize = 6;
    pub const U1C: usize = 7;
    pub const U2: usize = 8;
    pub const U2C: usize = 9;
}

/// Chart algebra with `ρ = (1 + |ζ|²)^{-1/2}`, its inverse `σ`, and the
/// unit vector `u`.
///
/// Rules, in order: `ρσ → 1`, `σ² → 1 + ζ₁ζ₁* + ζ₂ζ₂*`,
/// `ρζ₂ζ₂* → σ − ρ − ρζ₁ζ₁*`, `u₂u₂* → 1 − u₁u₁*`.  With weights
/// σ = 2, ρ = ζ = 1 each rule lowers the weighted degree, except the third
/// which keeps it and lowers the `ζ₂` degree; all overlaps resolve.
pub fn chart_spec() -> PresentationSpec {
    use chart_ids::*;
    let functions = vec![
        f("sigma", (0, 0), SIGMA, false),
        f("rho", (0, 0), RHO, false),
        f("zeta1", (2, 0), ZETA1C, true),
        f("zeta1'", (-2, 0), ZETA1, true),
        f("zeta2", (0, 2), ZETA2C, true),
        f("zeta2'", (0, -2), ZETA2, true),
        f("u1", (1, -1), U1C, true),
        f("u1'", (-1, 1), U1, true),
        f("u2", (-1, 1), U2C, true),
        f("u2'", (1, -1), U2, true),
    ];
    let rules = vec![
        RewriteRule { lhs: vec![(RHO, 1), (SIGMA, 1)], rhs: vec![(1, vec![])] },
        RewriteRule {
            lhs: vec![(SIGMA, 2)],
            rhs: vec![(1, vec![]), (1, vec![(ZETA1, 1), (ZETA1C, 1)]), (1, vec![(ZETA2, 1), (ZETA2C, 1)])],
        },
        RewriteRule {
            lhs: vec![(RHO, 1), (ZETA2, 1), (ZETA2C, 1)],
            rhs: vec![(1, vec![(SIGMA, 1)]), (-1, vec![(RHO, 1)]), (-1, vec![(RHO, 1), (ZETA1, 1), (ZETA1C, 1)])],
        },
        RewriteRule { lhs: vec![(U2, 1), (U2C, 1)], rhs: vec![(1, vec![]), (-1, vec![(U1, 1), (U1C, 1)])] },
    ];
    // dN = Σ (ζⱼ dζⱼ* + ζⱼ* dζⱼ) with N = |ζ|²; dρ = −½ρ³dN, dσ = ½ρ dN.
    let dn = |c: Scalar, rho_pow: u8| -> Vec<(Scalar, Vec<(usize, u8)>, usize)> {
        [(ZETA1, ZETA1C), (ZETA1C, ZETA1), (ZETA2, ZETA2C), (ZETA2C, ZETA2)]
            .iter()
            .map(|&(g, h)| (c.clone(), vec![(RHO, rho_pow), (g, 1)], h))
            .collect()
    };
    let differential_rules = vec![
        DifferentialRule { generator: RHO, terms: dn(Scalar::frac(-1, 2), 3) },
        DifferentialRule { generator: SIGMA, terms: dn(Scalar::frac(1, 2), 1) },
    ];
    let mut declared = vec![(ZETA1, ZETA2, 4), (ZETA1, ZETA2C, -4), (U1, ZETA2, 2), (U1, U2, 0), (U1, U2C, 0)];
    for g in 0..10 {
        declared.push((SIGMA, g, 0));
        declared.push((RHO, g, 0));
    }
    PresentationSpec {
        name: "chart".into(),
        functions,
        rules,
        constraints: vec![Constraint { pairs: vec![(U1C, U1), (U2C, U2)] }],
        differential_rules,
        declared,
    }
}

fn build(kind: AlgebraKind, deformation: Deformation) -> Arc<Presentation> {
    let spec = match kind {
        AlgebraKind::S4 => s4_spec(),
        AlgebraKind::S7 => s7_spec(),
        AlgebraKind::Chart => chart_spec(),
    };
    let twin = match deformation {
        Deformation::Formal => Some(presentation(kind, Deformation::Classical)),
        Deformation::Classical => None,
    };
    Arc::new(
        Presentation::new(&spec, deformation, twin)
            .unwrap_or_else(|e| panic!("built-in presentation {} is invalid: {}", kind.label(), e)),
    )
}

/// Shared instance of one of the built-in presentations.
pub fn presentation(kind: AlgebraKind, deformation: Deformation) -> Arc<Presentation> {
    static CELLS: [OnceLock<Arc<Presentation>>; 6] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let k = match kind {
        AlgebraKind::S4 => 0,
        AlgebraKind::S7 => 1,
        AlgebraKind::Chart => 2,
    } + match deformation {
        Deformation::Formal => 0,
        Deformation::Classical => 3,
    };
    CELLS[k].get_or_init(|| build(kind, deformation)).clone()
}

pub fn build_s4(deformation: Deformation) -> Arc<Presentation> {
    presentation(AlgebraKind::S4, deformation)
}

pub fn build_s7(deformation: Deformation) -> Arc<Presentation> {
    presentation(AlgebraKind::S7, deformation)
}

pub fn build_chart(deformation: Deformation) -> Arc<Presentation> {
    presentation(AlgebraKind::Chart, deformation)
}
