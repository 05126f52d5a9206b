//! The verification suites.
//!
//! Every check is a pure function of a [`Context`] (a deformation and a
//! seed), so the suites can fan out over a thread pool and the sorted
//! report does not depend on the number of workers.  Expensive shared data
//! (gauge field, actions, random panels) is built once per context on first
//! use.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{sphere_relations, Deformation, Element, Presentation};
use crate::geometry::{
    build_projection, build_psi, local_section, presentation, spinor_quadratic, stereographic, subalgebra, AlgebraKind, AlgebraMap,
};
use crate::index::{chern_chain, chern_zero, moduli_index, numeric_charge, radial_density, top_charge, ChernVector};
use crate::instanton::{conformal_action, expect_equal, expect_zero, ChartData, GaugeData, DIRECTIONS, DIRECTION_NAMES};
use crate::matrixdga::MatrixForm;
use crate::scalar::{rat, Scalar};
use crate::symmetry::brackets::{check_bracket, expected, monomial_panel, pairs, BracketReport, Expected};
use crate::symmetry::{commutator_on, compatibility_failures, s4_action, Action, Generator, Variant};

use super::report::{CheckRecord, Report, Status};

/// Names accepted by `verify --suite`, besides `all`.
pub const SUITES: [&str; 11] =
    ["relations", "clifford", "projection", "so5", "so51", "brackets", "instanton", "deltas", "chart", "index", "classical-limit"];

/// Prefix of every check run in the classical limit.
pub const CLASSICAL_PREFIX: &str = "q1:";

/// Random triples per presentation in the associativity checks.
pub const ASSOCIATIVITY_TRIPLES: usize = 1000;
/// Maximal degree of each element of a random triple `(a, b, c)`.
pub const TRIPLE_DEGREE: usize = 6;
/// Random pairs per presentation in the classical commutativity checks.
pub const COMMUTATIVITY_PAIRS: usize = 1000;
/// Random monomials on which every bracket is evaluated, per sphere.
pub const PANEL_SIZE: usize = 50;
/// Relative tolerance of the numeric charge.
pub const CHARGE_RTOL: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SuiteError {
    #[error("unknown suite '{0}' (expected one of {list} or all)", list = SUITES.join(", "))]
    UnknownSuite(String),
    #[error("cannot start {0} worker threads: {1}")]
    ThreadPool(usize, String),
}

/// Shared inputs of the checks for one deformation.
pub struct Context {
    pub deformation: Deformation,
    pub seed: u64,
    gauge: OnceLock<GaugeData>,
    chart: OnceLock<Result<ChartData, String>>,
    s4_action: OnceLock<Action>,
    s7_action: OnceLock<Action>,
    s4_panel: OnceLock<Vec<Element>>,
    s7_panel: OnceLock<Vec<Element>>,
}

impl Context {
    pub fn new(deformation: Deformation, seed: u64) -> Context {
        Context {
            deformation,
            seed,
            gauge: OnceLock::new(),
            chart: OnceLock::new(),
            s4_action: OnceLock::new(),
            s7_action: OnceLock::new(),
            s4_panel: OnceLock::new(),
            s7_panel: OnceLock::new(),
        }
    }

    pub fn pres(&self, kind: AlgebraKind) -> Arc<Presentation> {
        presentation(kind, self.deformation)
    }

    pub fn gauge(&self) -> &GaugeData {
        self.gauge.get_or_init(|| GaugeData::new(self.deformation))
    }

    pub fn chart(&self) -> Result<&ChartData, String> {
        self.chart.get_or_init(|| ChartData::new(self.gauge()).map_err(|e| e.to_string())).as_ref().map_err(Clone::clone)
    }

    /// The corrected so(5,1) action on a sphere.
    pub fn action(&self, kind: AlgebraKind) -> &Action {
        match kind {
            AlgebraKind::S4 => self.s4_action.get_or_init(|| s4_action(self.deformation, Variant::Corrected)),
            AlgebraKind::S7 => self.s7_action.get_or_init(|| conformal_action(self.deformation)),
            AlgebraKind::Chart => panic!("no action on the chart"),
        }
    }

    /// The random monomial panel of a sphere.
    pub fn panel(&self, kind: AlgebraKind) -> &[Element] {
        let cell = match kind {
            AlgebraKind::S4 => &self.s4_panel,
            AlgebraKind::S7 => &self.s7_panel,
            AlgebraKind::Chart => panic!("no panel on the chart"),
        };
        cell.get_or_init(|| monomial_panel(&self.pres(kind), PANEL_SIZE, self.stream_seed(&format!("panel-{}", kind.label()))))
    }

    /// A seed for the named random stream, so that streams do not depend
    /// on the order in which checks run.
    pub fn stream_seed(&self, label: &str) -> u64 {
        // FNV-1a, stable across platforms and compiler versions.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in label.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        h ^ self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
    }

    pub fn rng(&self, label: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.stream_seed(label))
    }
}

type CheckFn = dyn Fn(&Context) -> Result<(), String> + Send + Sync;

/// A named, anchored check.
#[derive(Clone)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    run: Arc<CheckFn>,
}

impl Check {
    pub fn new<F>(name: impl Into<String>, anchor: impl Into<String>, f: F) -> Check
    where
        F: Fn(&Context) -> Result<(), String> + Send + Sync + 'static,
    {
        Check { name: name.into(), anchor: anchor.into(), run: Arc::new(f) }
    }

    /// Runs the check; a panic inside it is reported as a failure.
    pub fn run(&self, ctx: &Context) -> Result<(), String> {
        match catch_unwind(AssertUnwindSafe(|| (self.run)(ctx))) {
            Ok(r) => r,
            Err(payload) => {
                let msg = payload
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "unknown panic".into());
                Err(format!("panicked: {}", msg))
            }
        }
    }
}

fn ensure(ok: bool, detail: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

fn no_failures(bad: Vec<String>) -> Result<(), String> {
    ensure(bad.is_empty(), || bad.join("; "))
}

fn equal(label: &str, lhs: &Element, rhs: &Element) -> Result<(), String> {
    ensure(lhs == rhs, || format!("{}: {} vs {}", label, lhs, rhs))
}

const KINDS: [AlgebraKind; 3] = [AlgebraKind::S4, AlgebraKind::S7, AlgebraKind::Chart];
const SPHERES: [AlgebraKind; 2] = [AlgebraKind::S4, AlgebraKind::S7];

/// A random element: one or two terms, each a small integer times a power
/// of `q` times a word of at most `max_len` generators.
pub fn random_element(pres: &Arc<Presentation>, rng: &mut ChaCha8Rng, max_len: usize, functions_only: bool) -> Element {
    let d = pres.deformation();
    let n = if functions_only { pres.function_count() } else { pres.generator_count() };
    let terms = rng.gen_range(1..=2);
    let mut acc = Element::zero(pres);
    for _ in 0..terms {
        let mut c: i64 = rng.gen_range(-3..=3);
        if c == 0 {
            c = 1;
        }
        let k = rng.gen_range(-2..=2);
        let len = rng.gen_range(0..=max_len);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
        acc = &acc + &Element::word_ids(pres, d.q(k).scale_int(c), &word);
    }
    acc
}

/// `Σ (−1)^{kl} b_l* a_k*` over the form-degree parts `a_k`, `b_l`.
fn graded_reverse(a: &Element, b: &Element) -> Element {
    let pres = a.presentation();
    let top = pres.form_generator_count();
    let mut acc = Element::zero(pres);
    for k in 0..=top {
        let ak = a.degree_part(k);
        if ak.is_zero() {
            continue;
        }
        for l in 0..=top {
            let bl = b.degree_part(l);
            if bl.is_zero() {
                continue;
            }
            let term = &bl.involution() * &ak.involution();
            acc = if (k * l) % 2 == 0 { &acc + &term } else { &acc - &term };
        }
    }
    acc
}

fn map_named(name: &str, d: Deformation) -> AlgebraMap {
    match name {
        "subalgebra" => subalgebra(d),
        "stereographic" => stereographic(d),
        _ => local_section(d),
    }
}

fn relations() -> Vec<Check> {
    let mut v = Vec::new();
    for kind in KINDS {
        let label = kind.label();
        v.push(Check::new(format!("associativity-{}", label), "normal forms of (ab)c and a(bc) agree", move |ctx| {
            let pres = ctx.pres(kind);
            let mut rng = ctx.rng(&format!("associativity-{}", label));
            let per = TRIPLE_DEGREE;
            for t in 0..ASSOCIATIVITY_TRIPLES {
                let a = random_element(&pres, &mut rng, per, false);
                let b = random_element(&pres, &mut rng, per, false);
                let c = random_element(&pres, &mut rng, per, false);
                let (l, r) = (&(&a * &b) * &c, &a * &(&b * &c));
                if l != r {
                    return Err(format!("triple {}: a = {}, b = {}, c = {}: (ab)c = {} vs a(bc) = {}", t, a, b, c, l, r));
                }
            }
            Ok(())
        }));
        v.push(Check::new(format!("sphere-relations-{}", label), "the defining relations and their differentials vanish", move |ctx| {
            let pres = ctx.pres(kind);
            let bad: Vec<String> = sphere_relations(&pres)
                .into_iter()
                .enumerate()
                .flat_map(|(k, (r, dr))| {
                    let mut out = Vec::new();
                    if !r.is_zero() {
                        out.push(format!("relation {} normalizes to {}", k, r));
                    }
                    if !dr.is_zero() {
                        out.push(format!("differential of relation {} normalizes to {}", k, dr));
                    }
                    out
                })
                .collect();
            no_failures(bad)
        }));
        v.push(Check::new(format!("critical-pairs-{}", label), "overlaps of the rewriting rules resolve", move |ctx| {
            ctx.pres(kind).check_critical_pairs().map(|_| ())
        }));
        v.push(Check::new(format!("involution-{}", label), "the involution is an antimultiplicative involution", move |ctx| {
            let pres = ctx.pres(kind);
            let mut rng = ctx.rng(&format!("involution-{}", label));
            for _ in 0..200 {
                let a = random_element(&pres, &mut rng, 3, false);
                let b = random_element(&pres, &mut rng, 3, false);
                equal("(ab)* = (−1)^{|a||b|} b*a*", &(&a * &b).involution(), &graded_reverse(&a, &b))?;
                equal("a** = a", &a.involution().involution(), &a)?;
            }
            Ok(())
        }));
        v.push(Check::new(format!("differential-{}", label), "d is a derivation with d² = 0", move |ctx| {
            let pres = ctx.pres(kind);
            let mut rng = ctx.rng(&format!("differential-{}", label));
            for _ in 0..200 {
                let a = random_element(&pres, &mut rng, 3, true);
                let b = random_element(&pres, &mut rng, 3, false);
                let lhs = (&a * &b).differential();
                let rhs = &(&a.differential() * &b) + &(&a * &b.differential());
                equal("d(ab) = (da)b + a(db)", &lhs, &rhs)?;
                let x = &a * &b;
                ensure(x.differential().differential().is_zero(), || format!("d²({}) ≠ 0", x))?;
                equal("d commutes with *", &x.differential().involution(), &x.involution().differential())?;
            }
            Ok(())
        }));
    }
    for name in ["subalgebra", "stereographic", "local-section"] {
        v.push(Check::new(format!("map-{}", name), "the algebra map is a *-homomorphism commuting with d", move |ctx| {
            let m = map_named(name, ctx.deformation);
            m.check_homomorphism().map_err(|e| e.to_string())?;
            m.check_star_and_d().map(|_| ()).map_err(|e| e.to_string())
        }));
    }
    v
}

fn clifford() -> Vec<Check> {
    let mut v = vec![
        Check::new("clifford-relations", "twisted Clifford relations of the Dirac matrices", |ctx| {
            no_failures(ctx.gauge().clifford.clifford_failures())
        }),
        Check::new("gamma0-grading", "γ₀ as the product of the commutators [γ₁,γ₁*][γ₂,γ₂*]", |ctx| {
            let cl = &ctx.gauge().clifford;
            ensure(cl.grading_holds_with(&Scalar::frac(-1, 16)), || "γ₀ ≠ −1/16·[γ₁,γ₁*][γ₂,γ₂*]".into())
        }),
        Check::new("conjugation-relations", "conjugation of the Dirac matrices by σ", |ctx| {
            no_failures(ctx.gauge().clifford.conjugation_failures_with(-1))
        }),
    ];
    for k in 0..6 {
        v.push(Check::new(format!("spin-identity-{}", k + 1), "commutators of Dirac matrices versus the spin representation", move |ctx| {
            let (label, ok) = ctx.gauge().clifford.spin_correspondence()[k];
            ensure(ok, || format!("{} fails", label))
        }));
    }
    v
}

fn projection() -> Vec<Check> {
    let mut v = vec![
        Check::new("psi-dagger-psi-identity", "Ψ†Ψ = I₂", |ctx| {
            let psi = build_psi(ctx.deformation);
            expect_equal("Ψ†Ψ", &psi.dagger().matmul(&psi), &MatrixForm::identity(psi.presentation(), 2))
        }),
        Check::new("projection-idempotent", "p² = p", |ctx| {
            let p = build_projection(ctx.deformation);
            expect_equal("p²", &p.matmul(&p), &p)
        }),
        Check::new("projection-self-adjoint", "p† = p", |ctx| {
            let p = build_projection(ctx.deformation);
            expect_equal("p†", &p.dagger(), &p)
        }),
        Check::new("projection-explicit-form", "ΨΨ† equals the explicit projection entrywise", |ctx| {
            let g = ctx.gauge();
            expect_equal("ΨΨ†", &g.psi.matmul(&g.psi.dagger()), &g.iota.apply_matrix(&g.p))
        }),
    ];
    for (k, name) in ["z0", "z1", "z2"].into_iter().enumerate() {
        v.push(Check::new(format!("z-from-gamma-{}", name), "the coordinates as spinor quadratics Ψ†γΨ", move |ctx| {
            let g = ctx.gauge();
            let s7 = g.psi.presentation();
            let z = g.z7(k);
            equal("ψ*γψ", &spinor_quadratic(ctx.deformation, g.gamma(k)), &z)?;
            let m = MatrixForm::from_scalars(s7, g.gamma(k));
            expect_equal("Ψ†γΨ", &g.psi.dagger().matmul(&m).matmul(&g.psi), &MatrixForm::identity(s7, 2).mul_element_right(&z))
        }));
    }
    v
}

fn well_definedness(kind: AlgebraKind, g: Generator) -> Check {
    Check::new(format!("well-defined-{}-{}", kind.label(), g), "the derivation annihilates the relations", move |ctx| {
        no_failures(ctx.action(kind).get(g).well_definedness_failures())
    })
}

fn compatibility(g: Generator) -> Check {
    Check::new(format!("compatible-{}", g), "the four- and seven-sphere actions agree through the subalgebra", move |ctx| {
        no_failures(compatibility_failures(ctx.action(AlgebraKind::S4), ctx.action(AlgebraKind::S7), g))
    })
}

fn so5() -> Vec<Check> {
    let mut v = Vec::new();
    for g in Generator::so5() {
        for kind in SPHERES {
            v.push(well_definedness(kind, g));
        }
        v.push(compatibility(g));
        v.push(Check::new(format!("omega-invariance-{}", g), "so(5) derivations annihilate the connection form ω", move |ctx| {
            let gauge = ctx.gauge();
            expect_zero(&format!("{}(ω)", g), &ctx.action(AlgebraKind::S7).get(g).apply_matrix(&gauge.omega))
        }));
        v.push(Check::new(format!("matrix-invariance-{}", g), "Γ̃ᵗλ^{−r₁H₂} + λ^{r₂H₁}Γ = 0 for the spin matrices", move |ctx| {
            let cl = &ctx.gauge().clifford;
            let (gamma, r) = match g {
                Generator::H(j) => (cl.spin_h(j), (0, 0)),
                Generator::E(a, b) => (cl.printed_spin_e_dagger_convention((a, b)), (a, b)),
                _ => unreachable!("so(5) generator"),
            };
            ensure(cl.invariance_defect(&gamma, r).is_zero(), || format!("defect for {} is non-zero", g))
        }));
    }
    v
}

/// Verifies `[x, y]` on both spheres and compares the extracted
/// proportionality constants.
fn bracket_on_both(ctx: &Context, x: Generator, y: Generator) -> Result<(), String> {
    let reports: Vec<BracketReport> =
        SPHERES.iter().map(|&k| check_bracket(ctx.action(k), x, y, ctx.panel(k))).collect();
    for (kind, r) in SPHERES.iter().zip(&reports) {
        if !r.holds() {
            return Err(format!("on {}: {}", kind.label(), r.failures.join("; ")));
        }
    }
    match (&reports[0].constant, &reports[1].constant) {
        (Some(a), Some(b)) if a != b => Err(format!("constant {} on s4 but {} on s7", a, b)),
        (Some(_), None) | (None, Some(_)) => Err("constant extracted on one sphere only".into()),
        _ => Ok(()),
    }
}

fn bracket_checks(prefix: &str, anchor: &str, generators: &[Generator], keep: fn(Generator, Generator) -> bool) -> Vec<Check> {
    pairs(generators)
        .into_iter()
        .filter(|&(x, y)| keep(x, y))
        .map(|(x, y)| {
            let anchor = match expected(x, y) {
                Expected::Proportional(t) => format!("{}; [{},{}] = N·{} with N shared by both spheres", anchor, x, y, t),
                e => format!("{}; [{},{}] = {}", anchor, x, y, e),
            };
            Check::new(format!("{}-[{},{}]", prefix, x, y), anchor, move |ctx| bracket_on_both(ctx, x, y))
        })
        .collect()
}

fn brackets() -> Vec<Check> {
    bracket_checks("so5-bracket", "so(5) Lie brackets", &Generator::so5(), |_, _| true)
}

fn is_conformal(g: Generator) -> bool {
    matches!(g, Generator::H0 | Generator::G(..))
}

fn so51() -> Vec<Check> {
    let mut v = Vec::new();
    for g in Generator::conformal() {
        for kind in SPHERES {
            v.push(well_definedness(kind, g));
        }
        v.push(compatibility(g));
    }
    v.push(Check::new("h0-on-z0", "H₀(z₀) = 1 − z₀²", |ctx| {
        let p = ctx.pres(AlgebraKind::S4);
        let z0 = Element::named(&p, "z0").map_err(|e| e.to_string())?;
        equal("H₀(z₀)", &ctx.action(AlgebraKind::S4).get(Generator::H0).apply(&z0), &(&Element::one(&p) - &z0.pow(2)))
    }));
    v.push(Check::new("g10-on-z1'", "G₁,₀(z₁*) = 2 − z₁z₁*", |ctx| {
        let p = ctx.pres(AlgebraKind::S4);
        let z1 = Element::named(&p, "z1").map_err(|e| e.to_string())?;
        let z1c = z1.involution();
        let rhs = &Element::integer(&p, 2) - &(&z1 * &z1c);
        equal("G₁,₀(z₁*)", &ctx.action(AlgebraKind::S4).get(Generator::G(1, 0)).apply(&z1c), &rhs)
    }));
    v.push(Check::new("worked-example-[E(-1,-1),G(1,0)]-on-z2", "[E₋₁,₋₁,G₁,₀](z₂) = 2 − z₂*z₂ = G₀,₋₁(z₂)", |ctx| {
        let a = ctx.action(AlgebraKind::S4);
        let p = ctx.pres(AlgebraKind::S4);
        let z2 = Element::named(&p, "z2").map_err(|e| e.to_string())?;
        let lhs = commutator_on(a.get(Generator::E(-1, -1)), a.get(Generator::G(1, 0)), &z2);
        let rhs = &Element::integer(&p, 2) - &(&z2.involution() * &z2);
        equal("[E₋₁,₋₁,G₁,₀](z₂)", &lhs, &rhs)?;
        equal("G₀,₋₁(z₂)", &a.get(Generator::G(0, -1)).apply(&z2), &rhs)
    }));
    v.extend(bracket_checks("so51-bracket", "so(5,1) Lie brackets", &Generator::all(), |x, y| is_conformal(x) || is_conformal(y)));
    v
}

fn instanton() -> Vec<Check> {
    let mut v = vec![
        Check::new("gauge-potential", "ω = Ψ†dΨ is traceless, skew-hermitian and of weight zero", |ctx| {
            ctx.gauge().check_gauge_potential()
        }),
        Check::new("curvature-trace", "tr F₀ = 0", |ctx| ctx.gauge().check_curvature_trace()),
        Check::new("bianchi-identity", "dF₀ + ωF₀ − F₀ω = 0", |ctx| expect_zero("Bianchi", &ctx.gauge().bianchi_defect())),
        Check::new("projected-curvature", "p·dp·dp is right-projected and p·dp·p = 0", |ctx| {
            ctx.gauge().check_projected_curvature()
        }),
        Check::new("curvature-pictures", "p·dp·dp = ΨF₀Ψ† through the subalgebra", |ctx| ctx.gauge().check_curvature_pictures()),
    ];
    for i in 0..5 {
        let n = DIRECTION_NAMES[i];
        v.push(Check::new(format!("crucial-property-{}", n), "p(dp·γᵢ + γᵢ·dp)(dp)p = 0", move |ctx| {
            expect_zero(&format!("crucial property for {}", n), &ctx.gauge().crucial_defect(i))
        }));
        v.push(Check::new(format!("z-psi-commutation-{}", n), "z and dz commute past Ψ and Ψ† up to twists", move |ctx| {
            ctx.gauge().check_z_psi(i)
        }));
        v.push(Check::new(format!("psi-dz-psi-dagger-{}", n), "Ψ(dz)Ψ† = p·M·dz over the four-sphere", move |ctx| {
            ctx.gauge().check_psi_dz_psi_dagger(i)
        }));
    }
    v
}

fn deltas() -> Vec<Check> {
    let mut v = vec![Check::new("delta-omega-real-combinations", "real combinations of δω are traceless and skew-hermitian", |ctx| {
        ctx.gauge().check_real_combinations(ctx.action(AlgebraKind::S7))
    })];
    for i in 0..5 {
        let n = DIRECTION_NAMES[i];
        let g = DIRECTIONS[i];
        v.push(Check::new(format!("delta-omega-{}", n), format!("{}(ω) matches its closed form", g), move |ctx| {
            ctx.gauge().check_delta_omega(ctx.action(AlgebraKind::S7), i)
        }));
        v.push(Check::new(format!("delta-alpha-{}", n), "δα is an endomorphism of the projective module", move |ctx| {
            ctx.gauge().check_delta_alpha(i)
        }));
        v.push(Check::new(format!("delta-f-{}", n), "δF = −2z·M·F₀ as matrices of 2-forms", move |ctx| ctx.gauge().check_delta_f(i)));
    }
    v
}

fn chart() -> Vec<Check> {
    let mut v = vec![
        Check::new("chart-unitary", "u is unitary", |ctx| ctx.chart()?.check_unitary()),
        Check::new("chart-local-potential", "uωu† = σdρ + ρ²𝒵†d𝒵 + du·u†", |ctx| ctx.chart()?.check_local_potential()),
        Check::new("chart-local-curvature", "uF₀u† equals the explicit local curvature entrywise", |ctx| {
            ctx.chart()?.check_local_curvature()
        }),
        Check::new("chart-curvature-self-dual", "the local curvature is self-dual", |ctx| {
            let c = ctx.chart()?;
            c.self_duality("uF₀u†", &c.local_curvature)
        }),
        Check::new("hodge-involution", "∗² = id on the six basis 2-forms", |ctx| ctx.chart()?.check_hodge_involution()),
        Check::new("chart-delta0-potential", "u(δ₀ω)u† = −2ρdρ − 2ρ⁴𝒵†d𝒵", |ctx| {
            ctx.chart()?.check_local_delta0(ctx.gauge(), ctx.action(AlgebraKind::S7))
        }),
        Check::new("chart-rescaled-curvature", "F_t rescales by 2t(1 − 2ρ²) at first order and stays self-dual", |ctx| {
            ctx.chart()?.check_rescaled_curvature(ctx.gauge(), ctx.action(AlgebraKind::S7))
        }),
    ];
    for i in 0..5 {
        let n = DIRECTION_NAMES[i];
        v.push(Check::new(format!("chart-delta-f-self-dual-{}", n), "δF mapped to the chart is self-dual", move |ctx| {
            ctx.chart()?.check_delta_f_self_dual(ctx.gauge(), i)
        }));
    }
    v
}

fn index() -> Vec<Check> {
    vec![
        Check::new("top-charge=1", "topological charge of the basic instanton", |_| {
            let t = top_charge(ChernVector::instanton().ch2_gamma5_coeff);
            ensure(t == rat(1, 1), || format!("Top = {}", t))
        }),
        Check::new("moduli-index=5", "index of the twisted Dirac operator on S⁻ ⊗ ad", |_| {
            let k = moduli_index(&ChernVector::spinor_minus(), &ChernVector::adjoint()).map_err(|e| e.to_string())?;
            ensure(k == rat(5, 1), || format!("index = {}", k))
        }),
        Check::new("chern-zero=2", "ch₀(p) = tr p = 2", |ctx| {
            let p = build_projection(ctx.deformation);
            let c0 = chern_zero(&p).map_err(|e| e.to_string())?;
            equal("tr p", &c0, &Element::integer(p.presentation(), 2))
        }),
        Check::new("chern-two-chain", "ch₂(p) as a formal chain with coefficient 12", |ctx| {
            let p = build_projection(ctx.deformation);
            let c = chern_chain(&p, 2).map_err(|e| e.to_string())?;
            ensure(c.coefficient == rat(12, 1) && !c.tensors.is_empty(), || {
                format!("coefficient {} with {} tensors", c.coefficient, c.tensors.len())
            })
        }),
        Check::new("charge-density", "tr(F∧F) = 48ρ⁸·vol on the chart at q = 1", |_| {
            let c = ChartData::new(&GaugeData::new(Deformation::Classical)).map_err(|e| e.to_string())?;
            let d = radial_density(&c.local_curvature).map_err(|e| e.to_string())?;
            ensure(d.constant == 48.0 && d.rho_power == 8, || format!("{}·ρ^{}", d.constant, d.rho_power))
        }),
        Check::new("numeric-charge", "the classical charge integral equals 1", |_| {
            let c = numeric_charge(CHARGE_RTOL).map_err(|e| e.to_string())?;
            ensure((c - 1.0).abs() <= CHARGE_RTOL, || format!("charge = {:.12}", c))
        }),
    ]
}

fn classical_only() -> Vec<Check> {
    let mut v = Vec::new();
    for kind in KINDS {
        let label = kind.label();
        v.push(Check::new(format!("commutativity-{}", label), "functions commute at q = 1", move |ctx| {
            let pres = ctx.pres(kind);
            let mut rng = ctx.rng(&format!("commutativity-{}", label));
            for _ in 0..COMMUTATIVITY_PAIRS {
                let a = random_element(&pres, &mut rng, 3, true);
                let b = random_element(&pres, &mut rng, 3, true);
                equal("ab = ba", &(&a * &b), &(&b * &a))?;
            }
            Ok(())
        }));
        v.push(Check::new(format!("untwisted-{}", label), "every commutation scalar degenerates to 1 at q = 1", move |ctx| {
            let pres = ctx.pres(kind);
            let n = pres.generator_count();
            let bad: Vec<String> = (0..n)
                .flat_map(|g| (0..n).map(move |h| (g, h)))
                .filter(|&(g, h)| pres.commutation_exponent(g, h) != 0)
                .map(|(g, h)| format!("{} {}", pres.generator_name(g), pres.generator_name(h)))
                .collect();
            no_failures(bad)
        }));
    }
    v
}

/// The checks of one deformation-agnostic suite.
fn base_suite(name: &str) -> Option<Vec<Check>> {
    Some(match name {
        "relations" => relations(),
        "clifford" => clifford(),
        "projection" => projection(),
        "so5" => so5(),
        "so51" => so51(),
        "brackets" => brackets(),
        "instanton" => instanton(),
        "deltas" => deltas(),
        "chart" => chart(),
        "index" => index(),
        _ => return None,
    })
}

/// A check bound to the context it runs in.
pub struct Planned {
    pub name: String,
    pub check: Check,
    pub context: Arc<Context>,
}

/// The checks of a suite, bound to their contexts.  The classical limit
/// reruns every other suite at `q = 1` under the `q1:` prefix and adds the
/// commutativity checks.
pub fn plan(suite: &str, seed: u64) -> Result<Vec<Planned>, SuiteError> {
    let formal = Arc::new(Context::new(Deformation::Formal, seed));
    let classical = Arc::new(Context::new(Deformation::Classical, seed));
    let bind = |checks: Vec<Check>, ctx: &Arc<Context>, prefix: &str| -> Vec<Planned> {
        checks.into_iter().map(|c| Planned { name: format!("{}{}", prefix, c.name), check: c, context: ctx.clone() }).collect()
    };
    let classical_suite = || {
        let mut v = Vec::new();
        for s in SUITES.iter().filter(|s| **s != "classical-limit") {
            v.extend(bind(base_suite(s).expect("known suite"), &classical, CLASSICAL_PREFIX));
        }
        v.extend(bind(classical_only(), &classical, CLASSICAL_PREFIX));
        v
    };
    match suite {
        "all" => {
            let mut v = Vec::new();
            for s in SUITES.iter().filter(|s| **s != "classical-limit") {
                v.extend(bind(base_suite(s).expect("known suite"), &formal, ""));
            }
            v.extend(classical_suite());
            Ok(v)
        }
        "classical-limit" => Ok(classical_suite()),
        other => base_suite(other).map(|c| bind(c, &formal, "")).ok_or_else(|| SuiteError::UnknownSuite(other.to_string())),
    }
}

/// Options of a verification run.
#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub seed: u64,
    /// Worker threads; `0` uses one per core.
    pub jobs: usize,
    /// Record wall-clock times; otherwise every `elapsed_ms` is `0` so that
    /// reports are reproducible byte for byte.
    pub timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: 0, jobs: 0, timings: false }
    }
}

fn record(p: &Planned, timings: bool) -> CheckRecord {
    let start = Instant::now();
    let outcome = p.check.run(&p.context);
    let elapsed = if timings { start.elapsed().as_millis() as u64 } else { 0 };
    let (status, detail) = match outcome {
        Ok(()) => (Status::Pass, None),
        Err(d) => (Status::Fail, Some(d)),
    };
    CheckRecord { name: p.name.clone(), paper_anchor: p.check.anchor.clone(), status, detail, elapsed_ms: elapsed }
}

/// Runs a suite on a dedicated thread pool and returns the sorted report.
pub fn run_suite(suite: &str, opts: RunOptions) -> Result<Report, SuiteError> {
    let planned = plan(suite, opts.seed)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| SuiteError::ThreadPool(opts.jobs, e.to_string()))?;
    let start = Instant::now();
    let records: Vec<CheckRecord> = pool.install(|| planned.par_iter().map(|p| record(p, opts.timings)).collect());
    let total = if opts.timings { start.elapsed().as_millis() as u64 } else { 0 };
    Ok(Report::new(suite, opts.seed, records, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn names_are_unique_and_suites_resolve() {
        let all = plan("all", 0).unwrap();
        let names: BTreeSet<&str> = all.iter().map(|p| p.name.as_str()).collect();
        assert_eq!(names.len(), all.len());
        for s in SUITES {
            assert!(!plan(s, 0).unwrap().is_empty(), "{}", s);
        }
        assert!(names.contains("psi-dagger-psi-identity"));
        assert!(names.contains("moduli-index=5"));
        assert!(names.contains("q1:psi-dagger-psi-identity"));
        assert_eq!(plan("nope", 0).err(), Some(SuiteError::UnknownSuite("nope".into())));
    }

    #[test]
    fn fast_suites_pass_and_ignore_jobs() {
        for s in ["projection", "clifford", "index"] {
            let one = run_suite(s, RunOptions { seed: 3, jobs: 1, timings: false }).unwrap();
            let many = run_suite(s, RunOptions { seed: 3, jobs: 4, timings: false }).unwrap();
            assert!(one.all_passed(), "{}", one.to_text());
            assert_eq!(one.to_json(), many.to_json());
        }
    }

    #[test]
    fn panics_become_failures() {
        let c = Check::new("boom", "x", |_| panic!("kaput"));
        let err = c.run(&Context::new(Deformation::Formal, 0)).unwrap_err();
        assert!(err.contains("kaput"));
    }

    #[test]
    fn streams_depend_on_label_and_seed() {
        let a = Context::new(Deformation::Formal, 1);
        let b = Context::new(Deformation::Formal, 2);
        assert_ne!(a.stream_seed("x"), a.stream_seed("y"));
        assert_ne!(a.stream_seed("x"), b.stream_seed("x"));
        assert_eq!(a.stream_seed("x"), Context::new(Deformation::Classical, 1).stream_seed("x"));
    }
}
