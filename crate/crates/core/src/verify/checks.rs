//! Trial functions for every identity, grouped by kind.

use crate::algebra::linalg;
use crate::algebra::{Rat, Scalar, Series, TensorOperator};
use crate::error::{Error, Result};
use crate::gauge::{self, DynParams, InverseMethod};
use crate::zoo::dynamical::{g_inv_on, g_on, g_shifted};
use crate::zoo::{o_matrix, permutation, twist, twist_inverse, unitarity_factor};
use crate::zoo::{Family, Param, Params, Zoo};

use super::{compare, CheckReport, Check, Mismatch, SamplePlan, Sampler, Verdict};

type M = TensorOperator<Rat>;

/// Return early from a trial with the first failed comparison.
macro_rules! hold {
    ($label:expr, $lhs:expr, $rhs:expr) => {
        if let Some(m) = compare($label, &$lhs, &$rhs) {
            return Ok(Some(m));
        }
    };
}

/// Truncation order used for all Laurent expansions in the checks.
const ORDER: i64 = 8;

fn ident(n: usize, slots: usize) -> M {
    TensorOperator::identity(n, slots)
}

fn e3(m: &M, slots: [usize; 2]) -> Result<M> {
    m.embed(&slots, 3)
}

fn scalar_op(v: Rat) -> M {
    TensorOperator::diagonal(&[v])
}

fn needs_q(f: Family) -> bool {
    f.consumes(Param::Q) && !f.q_independent()
}

fn draw_q(f: Family, n: usize, s: &mut Sampler) -> Result<Option<DynParams<Rat>>> {
    if needs_q(f) {
        Ok(Some(s.q("q", n)?))
    } else {
        Ok(None)
    }
}

/// A family of difference type at `(ħ, z)`.
fn at(zoo: &Zoo, f: Family, n: usize, h: &Rat, z: &Rat, q: &Option<DynParams<Rat>>) -> Result<M> {
    let mut p = Params::new().hbar(h.clone()).z(z.clone());
    p.q = q.clone();
    zoo.build(f, n, &p)
}

fn classical_at(zoo: &Zoo, f: Family, n: usize, z: &Rat) -> Result<M> {
    zoo.build(f, n, &Params::new().z(z.clone()))
}

fn semi(zoo: &Zoo, n: usize, h: &Rat, z1: &Rat, z2: &Rat, q: &DynParams<Rat>) -> Result<M> {
    let p = Params::new()
        .hbar(h.clone())
        .z12(z1.clone(), z2.clone())
        .q(q.clone());
    zoo.build(Family::SemiDynamical, n, &p)
}

fn dynamical(zoo: &Zoo, n: usize, h: &Rat, z: &Rat, q: &DynParams<Rat>) -> Result<M> {
    let p = Params::new().hbar(h.clone()).z(z.clone()).q(q.clone());
    zoo.build(Family::Dynamical, n, &p)
}

fn c(x: &Rat) -> Series {
    Series::constant(x.clone())
}

fn eps(order: i64) -> Result<Series> {
    Series::point(Rat::zero(), -1, order)
}

fn pole_at_most_simple(label: &str, m: &TensorOperator<Series>) -> Verdict {
    let dim = m.dim();
    for r in 0..dim {
        for col in 0..dim {
            let v = m.get(r, col).valuation();
            if v.is_some_and(|v| v < -1) {
                return Some(Mismatch {
                    label: label.to_string(),
                    row: r,
                    col,
                    lhs: m.get(r, col).to_string(),
                    rhs: "pole of order at most one".into(),
                    discrepancy: format!("valuation {}", v.unwrap_or(0)),
                });
            }
        }
    }
    None
}

fn commutator(a: &M, b: &M) -> M {
    &a.matmul(b) - &b.matmul(a)
}

// ---------------------------------------------------------------- YBE

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YbeKind {
    Quantum,
    Classical,
    Dynamical,
    SemiDynamical,
}

impl YbeKind {
    fn group(self) -> &'static str {
        match self {
            YbeKind::Quantum => "qybe",
            YbeKind::Classical => "cybe",
            YbeKind::Dynamical => "dynamical-ybe",
            YbeKind::SemiDynamical => "semi-ybe",
        }
    }

    fn anchor(self) -> &'static str {
        match self {
            YbeKind::Quantum => "R12(z12) R13(z13) R23(z23) = R23(z23) R13(z13) R12(z12)",
            YbeKind::Classical => "[r12(z12), r13(z13)] + [r12(z12), r23(z23)] + [r13(z13), r23(z23)] = 0",
            YbeKind::Dynamical => {
                "R12(z12|q-h(3)) R13(z13|q) R23(z23|q-h(1)) = R23(z23|q) R13(z13|q-h(2)) R12(z12|q)"
            }
            YbeKind::SemiDynamical => {
                "R12(z1,z2) R13(z1-h,z3-h) R23(z2,z3) = R23(z2-h,z3-h) R13(z1,z3) R12(z1-h,z2-h)"
            }
        }
    }
}

pub(super) fn ybe(kind: YbeKind, f: Family, n_range: (usize, usize)) -> Check {
    let id = format!("{}/{}", kind.group(), f.name());
    match kind {
        YbeKind::Quantum => Check::new(id, kind.anchor(), n_range, vec![f], move |n, zoo, s| {
            let q = draw_q(f, n, s)?;
            let h = s.nonzero("hbar");
            let z = s.rats("z1,z2,z3", 3);
            let r = |a: usize, b: usize| e3(&at(zoo, f, n, &h, &(&z[a - 1] - &z[b - 1]), &q)?, [a, b]);
            let (r12, r13, r23) = (r(1, 2)?, r(1, 3)?, r(2, 3)?);
            hold!(
                "quantum Yang-Baxter",
                TensorOperator::product([&r12, &r13, &r23]),
                TensorOperator::product([&r23, &r13, &r12])
            );
            Ok(None)
        }),
        YbeKind::Classical => Check::new(id, kind.anchor(), n_range, vec![f], move |n, zoo, s| {
            classical_ybe_trial(zoo, f, n, s, false)
        }),
        YbeKind::Dynamical => Check::new(id, kind.anchor(), n_range, vec![f], move |n, zoo, s| {
            let q = s.q("q", n)?;
            let h = s.nonzero("hbar");
            let z = s.rats("z1,z2,z3", 3);
            let step = -(&h * &Rat::from_int(n as i64));
            let plain = |a: usize, b: usize, qq: &DynParams<Rat>| {
                e3(&dynamical(zoo, n, &h, &(&z[a - 1] - &z[b - 1]), qq)?, [a, b])
            };
            // R_ab with q shifted by the slot-c basis index
            let shifted = |a: usize, b: usize, c: usize| {
                gauge::shifted_sum(&q, &step, 3, c, |qq| plain(a, b, qq))
            };
            let lhs = TensorOperator::product([&shifted(1, 2, 3)?, &plain(1, 3, &q)?, &shifted(2, 3, 1)?]);
            let rhs = TensorOperator::product([&plain(2, 3, &q)?, &shifted(1, 3, 2)?, &plain(1, 2, &q)?]);
            hold!("dynamical Yang-Baxter", lhs, rhs);
            Ok(None)
        }),
        YbeKind::SemiDynamical => Check::new(id, kind.anchor(), n_range, vec![f], move |n, zoo, s| {
            let q = s.q("q", n)?;
            let h = s.nonzero("hbar");
            let z = s.rats("z1,z2,z3", 3);
            let r = |a: usize, b: usize, shift: bool| {
                let (x, y) = if shift {
                    (&z[a - 1] - &h, &z[b - 1] - &h)
                } else {
                    (z[a - 1].clone(), z[b - 1].clone())
                };
                e3(&semi(zoo, n, &h, &x, &y, &q)?, [a, b])
            };
            let lhs = TensorOperator::product([&r(1, 2, false)?, &r(1, 3, true)?, &r(2, 3, false)?]);
            let rhs = TensorOperator::product([&r(2, 3, true)?, &r(1, 3, false)?, &r(1, 2, true)?]);
            hold!("semi-dynamical Yang-Baxter", lhs, rhs);
            Ok(None)
        }),
    }
}

/// With `as_printed`, the third commutator uses `r13(z1 − z2)`, the
/// argument as it appears in the printed classical equation.
fn classical_ybe_trial(zoo: &Zoo, f: Family, n: usize, s: &mut Sampler, as_printed: bool) -> Result<Verdict> {
    let z = s.rats("z1,z2,z3", 3);
    let r = |a: usize, b: usize, x: &Rat| e3(&classical_at(zoo, f, n, x)?, [a, b]);
    let z12 = &z[0] - &z[1];
    let z13 = &z[0] - &z[2];
    let z23 = &z[1] - &z[2];
    let r12 = r(1, 2, &z12)?;
    let r13 = r(1, 3, &z13)?;
    let r23 = r(2, 3, &z23)?;
    let r13_third = if as_printed { r(1, 3, &z12)? } else { r13.clone() };
    let total = &(&commutator(&r12, &r13) + &commutator(&r12, &r23)) + &commutator(&r13_third, &r23);
    hold!("classical Yang-Baxter", total, TensorOperator::zeros(n, 3));
    Ok(None)
}

pub(super) fn cybe_as_printed(f: Family, n_range: (usize, usize)) -> Check {
    Check::new(
        format!("cybe-as-printed/{}", f.name()),
        "[r12(z12), r13(z13)] + [r12(z12), r23(z23)] + [r13(z12), r23(z23)] = 0",
        n_range,
        vec![f],
        move |n, zoo, s| classical_ybe_trial(zoo, f, n, s, true),
    )
    .optional()
}

// ---------------------------------------------------------------- AYBE

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AybeKind {
    Vertex,
    SemiDynamical,
}

pub(super) fn aybe(kind: AybeKind, f: Family, n_range: (usize, usize)) -> Check {
    match kind {
        AybeKind::Vertex => Check::new(
            format!("aybe/{}", f.name()),
            "R^h12 R^e23 = R^e13 R^(h-e)12 + R^(e-h)23 R^h13",
            n_range,
            vec![f],
            move |n, zoo, s| {
                let q = draw_q(f, n, s)?;
                let h = s.nonzero("hbar");
                let e = s.nonzero("eta");
                let z = s.rats("z1,z2,z3", 3);
                let r = |x: &Rat, a: usize, b: usize| e3(&at(zoo, f, n, x, &(&z[a - 1] - &z[b - 1]), &q)?, [a, b]);
                let lhs = r(&h, 1, 2)?.matmul(&r(&e, 2, 3)?);
                let rhs = &r(&e, 1, 3)?.matmul(&r(&(&h - &e), 1, 2)?) + &r(&(&e - &h), 2, 3)?.matmul(&r(&h, 1, 3)?);
                hold!("associative Yang-Baxter", lhs, rhs);
                Ok(None)
            },
        ),
        AybeKind::SemiDynamical => Check::new(
            format!("semi-aybe/{}", f.name()),
            "R^h12(z1+e,z2+e) R^e23(z2+h,z3+h) = R^e13(z1+h,z3+h) R^(h-e)12(z1+e,z2+e) + R^(e-h)23(z2+h,z3+h) R^h13(z1+e,z3+e)",
            n_range,
            vec![f],
            move |n, zoo, s| {
                let q = s.q("q", n)?;
                let h = s.nonzero("hbar");
                let e = s.nonzero("eta");
                let z = s.rats("z1,z2,z3", 3);
                let r = |x: &Rat, a: usize, b: usize, by: &Rat| {
                    e3(&semi(zoo, n, x, &(&z[a - 1] + by), &(&z[b - 1] + by), &q)?, [a, b])
                };
                let lhs = r(&h, 1, 2, &e)?.matmul(&r(&e, 2, 3, &h)?);
                let rhs = &r(&e, 1, 3, &h)?.matmul(&r(&(&h - &e), 1, 2, &e)?)
                    + &r(&(&e - &h), 2, 3, &h)?.matmul(&r(&h, 1, 3, &e)?);
                hold!("semi-dynamical associative Yang-Baxter", lhs, rhs);
                Ok(None)
            },
        ),
    }
}

// ---------------------------------------------------------------- unitarity and skew-symmetry

pub(super) fn unitary_skew(f: Family, n_range: (usize, usize)) -> Check {
    if f == Family::SemiDynamical {
        return Check::new(
            format!("unitarity-skew/{}", f.name()),
            "R12(h,z1,z2) = -R21(-h,z2+h,z1+h); R12(h,z1,z2) R21(h,z2,z1) = (1/h^2 - 1/(z1-z2)^2) 1",
            n_range,
            vec![f],
            move |n, zoo, s| {
                let q = s.q("q", n)?;
                let h = s.nonzero("hbar");
                let z1 = s.rat("z1");
                let z2 = s.rat("z2");
                let r = semi(zoo, n, &h, &z1, &z2, &q)?;
                let skew = semi(zoo, n, &-&h, &(&z2 + &h), &(&z1 + &h), &q)?.swap_slots();
                hold!("skew-symmetry", r, -&skew);
                let back = semi(zoo, n, &h, &z2, &z1, &q)?.swap_slots();
                let f = unitarity_factor(&h, &(&z1 - &z2))?;
                hold!("unitarity", r.matmul(&back), ident(n, 2).scale(&f));
                Ok(None)
            },
        );
    }
    Check::new(
        format!("unitarity-skew/{}", f.name()),
        "R12(h,z) R21(h,-z) = (1/h^2 - 1/z^2) 1; R12(h,z) = -R21(-h,-z)",
        n_range,
        vec![f],
        move |n, zoo, s| {
            let q = draw_q(f, n, s)?;
            let h = s.nonzero("hbar");
            let z = s.nonzero("z");
            let r = at(zoo, f, n, &h, &z, &q)?;
            let back = at(zoo, f, n, &h, &-&z, &q)?.swap_slots();
            let fac = unitarity_factor(&h, &z)?;
            hold!("unitarity", r.matmul(&back), ident(n, 2).scale(&fac));
            let skew = at(zoo, f, n, &-&h, &-&z, &q)?.swap_slots();
            hold!("skew-symmetry", r, -&skew);
            Ok(None)
        },
    )
}

/// Unitarity of the dynamical matrix with the reversed factor evaluated at
/// `q` shifted by the slot-1 index: `R12(z|q) · Σ_k R21(−z|q + N h e_k) E_kk⊗1`.
pub(super) fn dynamical_unitarity_shifted(n_range: (usize, usize)) -> Check {
    Check::new(
        "dynamical-unitarity-shifted/dynamical",
        "R12(h,z|q) R21(h,-z|q+h(1)) = (1/h^2 - 1/z^2) 1",
        n_range,
        vec![Family::Dynamical],
        move |n, zoo, s| {
            let q = s.q("q", n)?;
            let h = s.nonzero("hbar");
            let z = s.nonzero("z");
            let r = dynamical(zoo, n, &h, &z, &q)?;
            let step = &h * &Rat::from_int(n as i64);
            let back = gauge::shifted_sum(&q, &step, 2, 1, |qq| {
                Ok(dynamical(zoo, n, &h, &-&z, qq)?.swap_slots())
            })?;
            let fac = unitarity_factor(&h, &z)?;
            hold!("shifted unitarity", r.matmul(&back), ident(n, 2).scale(&fac));
            Ok(None)
        },
    )
    .optional()
}

// ---------------------------------------------------------------- residues and limits

fn series_params(h: Series, z: Series) -> Params<Series> {
    Params::new().hbar(h).z(z)
}

pub(super) fn residues(f: Family, n_range: (usize, usize)) -> Check {
    if f == Family::SemiDynamical {
        return Check::new(
            format!("residues/{}", f.name()),
            "Res_{h=0} R = 1; Res_{z1=z2} R = P12; Res_{z2=0} R = O12",
            n_range,
            vec![f],
            move |n, zoo, s| {
                let q = s.q("q", n)?;
                let qs = q.to_series();
                let h = s.nonzero("hbar");
                let z1 = s.rat("z1");
                let z2 = s.rat("z2");
                // residues are taken at generic points, away from colliding poles
                let sums = [&z1 + &h, &z2 + &h, &z1 - &z2, &(&z1 - &z2) + &h, &(&z1 - &z2) - &h];
                if z1.is_zero() || z2.is_zero() || sums.iter().any(Rat::is_zero) {
                    return Err(Error::Singular("colliding poles".into()));
                }
                let build = |h: Series, z1: Series, z2: Series| {
                    zoo.build(Family::SemiDynamical, n, &Params::new().hbar(h).z12(z1, z2).q(qs.clone()))
                };
                let e = eps(ORDER)?;
                let rh = build(e.clone(), c(&z1), c(&z2))?;
                hold!("Res at h = 0", rh.coeff(-1)?, ident(n, 2));
                if let Some(m) = pole_at_most_simple("pole in h", &rh) {
                    return Ok(Some(m));
                }
                let rz = build(c(&h), c(&z2) + e.clone(), c(&z2))?;
                hold!("Res at z1 = z2", rz.coeff(-1)?, permutation::<Rat>(n));
                let ro = build(c(&h), c(&z1), e)?;
                hold!("Res at z2 = 0", ro.coeff(-1)?, o_matrix::<Rat>(n));
                Ok(None)
            },
        );
    }
    Check::new(
        format!("residues/{}", f.name()),
        "Res_{h=0} R = 1 with no higher pole in h; Res_{z=0} R = P12",
        n_range,
        vec![f],
        move |n, zoo, s| {
            let q = draw_q(f, n, s)?.map(|q| q.to_series());
            let h = s.nonzero("hbar");
            let z = s.nonzero("z");
            let e = eps(ORDER)?;
            let build = |h: Series, z: Series| {
                let mut p = series_params(h, z);
                p.q = q.clone();
                zoo.build(f, n, &p)
            };
            let rh = build(e.clone(), c(&z))?;
            hold!("Res at h = 0", rh.coeff(-1)?, ident(n, 2));
            if let Some(m) = pole_at_most_simple("pole in h", &rh) {
                return Ok(Some(m));
            }
            let rz = build(c(&h), e)?;
            hold!("Res at z = 0", rz.coeff(-1)?, permutation::<Rat>(n));
            Ok(None)
        },
    )
}

/// `ε R^{11v}(hε, zε)` at `ε → 0` is Yang's matrix.
pub(super) fn scaling_limit() -> Check {
    Check::new(
        "scaling-limit/eleven-vertex",
        "lim_{e->0} e R^{11v, h e}(z e) = 1/h + P12/z",
        (2, 2),
        vec![Family::ElevenVertex, Family::Yang],
        move |n, zoo, s| {
            let h = s.nonzero("hbar");
            let z = s.nonzero("z");
            let e = Series::point(Rat::zero(), 0, ORDER)?;
            let p = series_params(e.scale_rat(&h), e.scale_rat(&z));
            let r = zoo.build(Family::ElevenVertex, n, &p)?.map(|x| x.shift(1));
            let yang = at(zoo, Family::Yang, n, &h, &z, &None)?;
            hold!("scaling limit", r.coeff(0)?, yang);
            Ok(None)
        },
    )
}

// ---------------------------------------------------------------- equivalences

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivCase {
    /// Gauge-built vertex matrix against the explicit closed form.
    Coincidence,
    Components,
    Example1,
    Z2Zero,
    /// Vertex matrix from the dynamical one through shifted gauge factors.
    FromDynamical,
    SixVertexYang,
    ElevenVertexExplicit,
    TwistInverse,
    TwistFactorized,
    TwistRelation,
    /// Semi-dynamical matrix from the dynamical one through gauge factors.
    SemiFromGauge,
    InverseMethods,
    Factorization,
    Cauchy,
}

impl EquivCase {
    pub const ALL: [EquivCase; 14] = [
        EquivCase::Coincidence,
        EquivCase::Components,
        EquivCase::Example1,
        EquivCase::Z2Zero,
        EquivCase::FromDynamical,
        EquivCase::SixVertexYang,
        EquivCase::ElevenVertexExplicit,
        EquivCase::TwistInverse,
        EquivCase::TwistFactorized,
        EquivCase::TwistRelation,
        EquivCase::SemiFromGauge,
        EquivCase::InverseMethods,
        EquivCase::Factorization,
        EquivCase::Cauchy,
    ];

    pub fn id(self) -> &'static str {
        match self {
            EquivCase::Coincidence => "coincidence",
            EquivCase::Components => "vertex-routes/components",
            EquivCase::Example1 => "vertex-routes/example1",
            EquivCase::Z2Zero => "vertex-routes/z2zero",
            EquivCase::FromDynamical => "vertex-routes/dynamical",
            EquivCase::SixVertexYang => "constant-families/six-vertex",
            EquivCase::ElevenVertexExplicit => "constant-families/eleven-vertex",
            EquivCase::TwistInverse => "twist/inverse",
            EquivCase::TwistFactorized => "twist/factorized",
            EquivCase::TwistRelation => "twist/relation",
            EquivCase::SemiFromGauge => "twist/gauge-form",
            EquivCase::InverseMethods => "gauge/inverse",
            EquivCase::Factorization => "gauge/factorization",
            EquivCase::Cauchy => "gauge/cauchy",
        }
    }

    fn anchor(self) -> &'static str {
        match self {
            EquivCase::Coincidence => "g2(z2) g1(z1+h) R^semi(h,z1,z2|q) g2^-1(z2+h) g1^-1(z1) = explicit R^h(z1-z2)",
            EquivCase::Components => "component sum over g and g^-1 entries = gauge product",
            EquivCase::Example1 => "q_i = i, z1 = z/2, z2 = -z/2 specialisation = gauge product",
            EquivCase::Z2Zero => "g1(z+h)(g2'(0) O12 + g2(0) B12(h,z)) g2^-1(h) g1^-1(z) = gauge product",
            EquivCase::FromDynamical => "g2(z2) g1(z1,q-h(2)) R^dyn(z12|q) g2^-1(z2,q-h(1)) g1^-1(z1) = gauge product",
            EquivCase::SixVertexYang => "6-vertex matrix = 1/h + P12/z at N = 2",
            EquivCase::ElevenVertexExplicit => "11-vertex matrix = explicit R at N = 2",
            EquivCase::TwistInverse => "F12 F12^-1 = F12^-1 F12 = 1",
            EquivCase::TwistFactorized => "F12(h,z1|q) = g1^-1(z1+h,q) g1(z1,q-h(2))",
            EquivCase::TwistRelation => "R^semi12(h,z1,z2|q) = F12(h,z1|q) R^dyn12(h,z12|q) F21^-1(h,z2|q)",
            EquivCase::SemiFromGauge => "R^semi = g1^-1(z1+h) g1(z1,q-h(2)) R^dyn g2^-1(z2,q-h(1)) g2(z2+h)",
            EquivCase::InverseMethods => "g^-1 by elimination = symmetric-function form = z-expansion = marked-sum form",
            EquivCase::Factorization => "L^eta(z) = g^-1(z,q) g(z-eta,q)",
            EquivCase::Cauchy => "C(z) = -Xi^-1(z,q) Xi(z-eta,u)",
        }
    }

    fn families(self) -> Vec<Family> {
        use Family::*;
        match self {
            EquivCase::Coincidence => vec![VertexGauge, ExplicitAppendix],
            EquivCase::Components => vec![VertexComponents, VertexGauge],
            EquivCase::Example1 => vec![VertexExample1, VertexGauge],
            EquivCase::Z2Zero => vec![VertexZ2Zero, VertexGauge],
            EquivCase::FromDynamical => vec![Dynamical, VertexGauge],
            EquivCase::SixVertexYang => vec![SixVertex, Yang],
            EquivCase::ElevenVertexExplicit => vec![ElevenVertex, ExplicitAppendix],
            EquivCase::TwistRelation | EquivCase::SemiFromGauge => vec![Dynamical, SemiDynamical],
            _ => vec![],
        }
    }

    fn default_range(self) -> (usize, usize) {
        match self {
            EquivCase::Coincidence => (2, 6),
            EquivCase::SixVertexYang | EquivCase::ElevenVertexExplicit => (2, 2),
            EquivCase::InverseMethods | EquivCase::Factorization | EquivCase::Cauchy => (2, 5),
            _ => (2, 4),
        }
    }
}

fn vertex_gauge(zoo: &Zoo, n: usize, h: &Rat, z1: &Rat, z2: &Rat, q: &DynParams<Rat>) -> Result<M> {
    let p = Params::new()
        .hbar(h.clone())
        .z12(z1.clone(), z2.clone())
        .q(q.clone());
    zoo.build(Family::VertexGauge, n, &p)
}

fn equiv_trial(case: EquivCase, n: usize, zoo: &Zoo, s: &mut Sampler) -> Result<Verdict> {
    use EquivCase::*;
    let label = case.id();
    match case {
        Coincidence | Components | Example1 | Z2Zero | FromDynamical => {
            let q = s.q("q", n)?;
            let h = s.nonzero("hbar");
            let z1 = s.rat("z1");
            let z2 = s.rat("z2");
            let reference = vertex_gauge(zoo, n, &h, &z1, &z2, &q)?;
            let z = &z1 - &z2;
            let other = match case {
                Coincidence => at(zoo, Family::ExplicitAppendix, n, &h, &z, &None)?,
                Components => {
                    let p = Params::new().hbar(h.clone()).z12(z1.clone(), z2.clone()).q(q.clone());
                    zoo.build(Family::VertexComponents, n, &p)?
                }
                Example1 => at(zoo, Family::VertexExample1, n, &h, &z, &None)?,
                Z2Zero => {
                    let q2 = s.q("q'", n)?;
                    at(zoo, Family::VertexZ2Zero, n, &h, &z, &Some(q2))?
                }
                _ => {
                    let rd = dynamical(zoo, n, &h, &z, &q)?;
                    TensorOperator::product([
                        &g_on(&z2, &q, 2, 2)?,
                        &g_shifted(&z1, &q, &h, 1, false)?,
                        &rd,
                        &g_shifted(&z2, &q, &h, 2, true)?,
                        &g_inv_on(&z1, &q, 1, 2)?,
                    ])
                }
            };
            hold!(label, other, reference);
        }
        SixVertexYang | ElevenVertexExplicit => {
            let h = s.nonzero("hbar");
            let z = s.nonzero("z");
            let (a, b) = if case == SixVertexYang {
                (Family::SixVertex, Family::Yang)
            } else {
                (Family::ElevenVertex, Family::ExplicitAppendix)
            };
            hold!(label, at(zoo, a, n, &h, &z, &None)?, at(zoo, b, n, &h, &z, &None)?);
        }
        TwistInverse | TwistFactorized => {
            let q = s.q("q", n)?;
            let h = s.nonzero("hbar");
            let z1 = s.rat("z1");
            let f = twist(&h, &z1, &q)?;
            if case == TwistInverse {
                let fi = twist_inverse(&h, &z1, &q)?;
                hold!("F F^-1", f.matmul(&fi), ident(n, 2));
                hold!("F^-1 F", fi.matmul(&f), ident(n, 2));
            } else {
                let fact = g_inv_on(&(&z1 + &h), &q, 1, 2)?.matmul(&g_shifted(&z1, &q, &h, 1, false)?);
                hold!(label, f, fact);
            }
        }
        TwistRelation | SemiFromGauge => {
            let q = s.q("q", n)?;
            let h = s.nonzero("hbar");
            let z1 = s.rat("z1");
            let z2 = s.rat("z2");
            let rd = dynamical(zoo, n, &h, &(&z1 - &z2), &q)?;
            let lhs = if case == TwistRelation {
                TensorOperator::product([
                    &twist(&h, &z1, &q)?,
                    &rd,
                    &twist_inverse(&h, &z2, &q)?.swap_slots(),
                ])
            } else {
                TensorOperator::product([
                    &g_inv_on(&(&z1 + &h), &q, 1, 2)?,
                    &g_shifted(&z1, &q, &h, 1, false)?,
                    &rd,
                    &g_shifted(&z2, &q, &h, 2, true)?,
                    &g_on(&(&z2 + &h), &q, 2, 2)?,
                ])
            };
            hold!(label, lhs, semi(zoo, n, &h, &z1, &z2, &q)?);
        }
        InverseMethods => {
            let q = s.q("q", n)?;
            let z = s.nonzero("z");
            let g = gauge::g_matrix(&z, &q)?;
            let direct = gauge::g_inverse(&z, &q, InverseMethod::Direct)?;
            hold!("g g^-1", g.matmul(&direct), ident(n, 1));
            hold!("symmetric form", gauge::g_inverse(&z, &q, InverseMethod::Symmetric)?, direct);
            hold!("z-expansion", gauge::g_inverse(&z, &q, InverseMethod::ZExpansion)?, direct);
            hold!("marked-sum form", gauge::g_inverse_marked_form(&z, &q)?, direct);
        }
        Factorization => {
            let q = s.q("q", n)?;
            let z = s.nonzero("z");
            let e = s.rat("eta");
            let rhs = gauge::g_inverse(&z, &q, InverseMethod::Direct)?.matmul(&gauge::g_matrix(&(&z - &e), &q)?);
            hold!(label, gauge::cal_l_eta(&e, &z, &q)?, rhs);
        }
        Cauchy => {
            let q = s.q("q", n)?;
            let u = s.q("u", n)?;
            let z = s.nonzero("z");
            let e = s.rat("eta");
            let xi_inv = linalg::inverse(&gauge::xi_matrix(&z, &q))?;
            let rhs = -&xi_inv.matmul(&gauge::xi_matrix(&(&z - &e), &u));
            hold!(label, gauge::cauchy_matrix(&e, &z, &q, &u)?, rhs);
        }
    }
    Ok(None)
}

pub(super) fn equiv(case: EquivCase) -> Check {
    equiv_in(case, case.default_range())
}

pub(super) fn equiv_in(case: EquivCase, n_range: (usize, usize)) -> Check {
    Check::new(case.id(), case.anchor(), n_range, case.families(), move |n, zoo, s| {
        equiv_trial(case, n, zoo, s)
    })
}

// ---------------------------------------------------------------- gauge matrix

fn vandermonde(x: &[Rat]) -> Rat {
    let mut acc = Rat::one();
    for i in 0..x.len() {
        for j in 0..i {
            acc *= &x[i] - &x[j];
        }
    }
    acc
}

pub(super) fn gauge_determinant(n_range: (usize, usize)) -> Check {
    Check::new(
        "gauge/determinant",
        "det Xi(z,q) = N z prod_{i>j}(q_i - q_j); det Xi(x) = (sum x) prod_{i>j}(x_i - x_j)",
        n_range,
        vec![],
        move |n, _, s| {
            let q = s.q("q", n)?;
            let z = s.rat("z");
            let det = linalg::determinant(&gauge::xi_matrix(&z, &q))?;
            let expect = &(&z * &Rat::from_int(n as i64)) * &vandermonde(q.q());
            hold!("det Xi(z,q)", scalar_op(det), scalar_op(expect));
            let x = s.rats("x", n);
            let det = linalg::determinant(&gauge::xi_of(&x))?;
            let sum: Rat = x.iter().cloned().sum();
            hold!("det Xi(x)", scalar_op(det), scalar_op(sum * vandermonde(&x)));
            Ok(None)
        },
    )
}

pub(super) fn gauge_kernel(n_range: (usize, usize)) -> Check {
    Check::new(
        "gauge/kernel",
        "g(0,q) a = 0 with a = (1,...,1), rank g(0,q) = N-1; g2(0,q) O12 = 0",
        n_range,
        vec![],
        move |n, _, s| {
            let q = s.q("q", n)?;
            let g0 = gauge::g_matrix(&Rat::zero(), &q)?;
            let a = vec![Rat::one(); n];
            let ga = TensorOperator::diagonal(&linalg::apply(&g0, &a));
            hold!("g(0) a", ga, TensorOperator::zeros(n, 1));
            let rank = linalg::rank(&g0);
            if rank != n - 1 {
                return Ok(Some(Mismatch {
                    label: "rank g(0)".into(),
                    row: 0,
                    col: 0,
                    lhs: rank.to_string(),
                    rhs: (n - 1).to_string(),
                    discrepancy: (rank as i64 - n as i64 + 1).abs().to_string(),
                }));
            }
            let go = g0.embed(&[2], 2)?.matmul(&o_matrix::<Rat>(n));
            hold!("g2(0) O12", go, TensorOperator::zeros(n, 2));
            Ok(None)
        },
    )
}

pub(super) fn gauge_derivative(n_range: (usize, usize)) -> Check {
    Check::new(
        "gauge/derivative",
        "d/dz g(z,q) from a Laurent expansion = closed form; l(z,q) = g^-1 d/dz g",
        n_range,
        vec![],
        move |n, _, s| {
            let q = s.q("q", n)?;
            let z = s.nonzero("z");
            let closed = gauge::g_z_derivative_closed(&z, &q)?;
            hold!("g'(z)", gauge::g_z_derivative(&z, &q)?, closed);
            let ginv = gauge::g_inverse(&z, &q, InverseMethod::Direct)?;
            hold!("l(z)", gauge::l_matrix(&z, &q)?, ginv.matmul(&closed));
            Ok(None)
        },
    )
}

// ---------------------------------------------------------------- gauge properties

pub(super) fn q_independence(n_range: (usize, usize)) -> Check {
    Check::new(
        "gauge-props/q-independence",
        "g2(z2) g1(z1+h) R^semi(h,z1,z2|q) g2^-1(z2+h) g1^-1(z1) does not depend on q",
        n_range,
        vec![Family::VertexGauge],
        move |n, zoo, s| {
            let q = s.q("q", n)?;
            let q2 = s.q("q'", n)?;
            let h = s.nonzero("hbar");
            let z1 = s.rat("z1");
            let z2 = s.rat("z2");
            hold!(
                "two dynamical points",
                vertex_gauge(zoo, n, &h, &z1, &z2, &q)?,
                vertex_gauge(zoo, n, &h, &z1, &z2, &q2)?
            );
            Ok(None)
        },
    )
}

pub(super) fn difference_dependence(n_range: (usize, usize)) -> Check {
    Check::new(
        "gauge-props/difference",
        "gauge product depends on z1 - z2 only",
        n_range,
        vec![Family::VertexGauge],
        move |n, zoo, s| {
            let q = s.q("q", n)?;
            let h = s.nonzero("hbar");
            let z1 = s.rat("z1");
            let z2 = s.rat("z2");
            let t = s.rat("shift");
            hold!(
                "common translation",
                vertex_gauge(zoo, n, &h, &z1, &z2, &q)?,
                vertex_gauge(zoo, n, &h, &(&z1 + &t), &(&z2 + &t), &q)?
            );
            Ok(None)
        },
    )
}

/// Left side of the `q_n` bracket:
/// `∂R + l1(z1+h) R + l2(z2) R − R l2(z2+h) − R l1(z1)`, with `l^{(n)}`
/// or, when `plain_l` is set, with `l` in its place.
fn bracket_q(
    zoo: &Zoo,
    n: usize,
    idx: usize,
    h: &Rat,
    z1: &Rat,
    z2: &Rat,
    q: &DynParams<Rat>,
    plain_l: bool,
) -> Result<M> {
    let mut qs: Vec<Series> = q.q().iter().cloned().map(Series::constant).collect();
    qs[idx - 1] = Series::point(q.q()[idx - 1].clone(), 0, 1)?;
    let qs = DynParams::new(qs)?;
    let p = Params::new().hbar(c(h)).z12(c(z1), c(z2)).q(qs);
    let dr = zoo.build(Family::SemiDynamical, n, &p)?.coeff(1)?;
    let r = semi(zoo, n, h, z1, z2, q)?;
    let l = |z: &Rat, slot: usize| -> Result<M> {
        let m = if plain_l {
            gauge::l_matrix(z, q)?
        } else {
            gauge::l_n_matrix(idx, z, q)?
        };
        m.embed(&[slot], 2)
    };
    Ok(dr + l(&(z1 + h), 1)?.matmul(&r) + l(z2, 2)?.matmul(&r)
        - r.matmul(&l(&(z2 + h), 2)?)
        - r.matmul(&l(z1, 1)?))
}

fn bracket_z(zoo: &Zoo, n: usize, h: &Rat, z1: &Rat, z2: &Rat, q: &DynParams<Rat>) -> Result<M> {
    let p = Params::new()
        .hbar(c(h))
        .z12(Series::point(z1.clone(), 0, 1)?, Series::point(z2.clone(), 0, 1)?)
        .q(q.to_series());
    let dr = zoo.build(Family::SemiDynamical, n, &p)?.coeff(1)?;
    let r = semi(zoo, n, h, z1, z2, q)?;
    let l = |z: &Rat, slot: usize| gauge::l_matrix(z, q)?.embed(&[slot], 2);
    Ok(dr + l(&(z1 + h), 1)?.matmul(&r) + l(z2, 2)?.matmul(&r)
        - r.matmul(&l(&(z2 + h), 2)?)
        - r.matmul(&l(z1, 1)?))
}

pub(super) fn brackets(n_range: (usize, usize)) -> Check {
    Check::new(
        "gauge-props/brackets",
        "dR + l1(z1+h) R + l2(z2) R - R l2(z2+h) - R l1(z1) = 0 for d = d/dq_n with l^(n), and d = d/dz1 + d/dz2 with l",
        n_range,
        vec![Family::SemiDynamical],
        move |n, zoo, s| {
            let q = s.q("q", n)?;
            let h = s.nonzero("hbar");
            let z1 = s.rat("z1");
            let z2 = s.rat("z2");
            let zero = TensorOperator::zeros(n, 2);
            for idx in 1..=n {
                let b = bracket_q(zoo, n, idx, &h, &z1, &z2, &q, false)?;
                if let Some(mut m) = compare("q bracket", &b, &zero) {
                    m.label = format!("q bracket, n = {idx}");
                    return Ok(Some(m));
                }
            }
            hold!("z bracket", bracket_z(zoo, n, &h, &z1, &z2, &q)?, zero);
            Ok(None)
        },
    )
}

pub(super) fn argument_symmetry(f: Family, n_range: (usize, usize)) -> Check {
    if f == Family::SemiDynamical {
        return Check::new(
            format!("argument-symmetry/{}", f.name()),
            "R(h,z1,z2|q) = R(z1-z2, h+z2, z2|q) P12",
            n_range,
            vec![f],
            move |n, zoo, s| {
                let q = s.q("q", n)?;
                let h = s.nonzero("hbar");
                let z1 = s.rat("z1");
                let z2 = s.rat("z2");
                let lhs = semi(zoo, n, &h, &z1, &z2, &q)?;
                let rhs = semi(zoo, n, &(&z1 - &z2), &(&h + &z2), &z2, &q)?.matmul(&permutation(n));
                hold!("argument symmetry", lhs, rhs);
                Ok(None)
            },
        );
    }
    Check::new(
        format!("argument-symmetry/{}", f.name()),
        "R^h(z) P12 = R^z(h)",
        n_range,
        vec![f],
        move |n, zoo, s| {
            let q = draw_q(f, n, s)?;
            let h = s.nonzero("hbar");
            let z = s.nonzero("z");
            let lhs = at(zoo, f, n, &h, &z, &q)?.matmul(&permutation(n));
            hold!("argument symmetry", lhs, at(zoo, f, n, &z, &h, &q)?);
            Ok(None)
        },
    )
}

// ---------------------------------------------------------------- classical layer

pub(super) fn classical_limit(n_range: (usize, usize)) -> Check {
    Check::new(
        "classical/limit",
        "r(z) = lim_{h->0} (R^h(z) - 1/h) equals the closed-form classical r-matrix",
        n_range,
        vec![Family::ExplicitAppendix, Family::ClassicalExplicit],
        move |n, zoo, s| {
            let z = s.nonzero("z");
            let r = zoo.build(Family::ExplicitAppendix, n, &series_params(eps(ORDER)?, c(&z)))?;
            hold!("h^0 coefficient", r.coeff(0)?, classical_at(zoo, Family::ClassicalExplicit, n, &z)?);
            Ok(None)
        },
    )
}

pub(super) fn m_coefficient(n_range: (usize, usize)) -> Check {
    Check::new(
        "classical/m",
        "m(z) = h^1 coefficient of R^h(z) = (r(z)^2 - 1/z^2)/2 = closed form",
        n_range,
        vec![Family::ExplicitAppendix, Family::ClassicalExplicit, Family::MExplicit],
        move |n, zoo, s| {
            let z = s.nonzero("z");
            let m = classical_at(zoo, Family::MExplicit, n, &z)?;
            let r = zoo.build(Family::ExplicitAppendix, n, &series_params(eps(ORDER)?, c(&z)))?;
            hold!("h^1 coefficient", r.coeff(1)?, m);
            let cr = classical_at(zoo, Family::ClassicalExplicit, n, &z)?;
            let zi2 = z.inv()?.pow(2);
            let from_r = (&cr.matmul(&cr) - &ident(n, 2).scale(&zi2)).scale(&Rat::new(1, 2));
            hold!("(r^2 - 1/z^2)/2", from_r, m);
            Ok(None)
        },
    )
}

pub(super) fn square_identity(n_range: (usize, usize)) -> Check {
    Check::new(
        "classical/square",
        "(r12(z12) + r23(z23) + r31(z31))^2 = (1/z12^2 + 1/z23^2 + 1/z31^2) 1",
        n_range,
        vec![Family::ClassicalExplicit],
        move |n, zoo, s| {
            let z = s.rats("z1,z2,z3", 3);
            let r = |a: usize, b: usize| e3(&classical_at(zoo, Family::ClassicalExplicit, n, &(&z[a - 1] - &z[b - 1]))?, [a, b]);
            let sum = &(&r(1, 2)? + &r(2, 3)?) + &r(3, 1)?;
            let w = |a: usize, b: usize| -> Result<Rat> { Ok((&z[a - 1] - &z[b - 1]).inv()?.pow(2)) };
            let scalar = w(1, 2)? + w(2, 3)? + w(3, 1)?;
            hold!("square identity", sum.matmul(&sum), ident(n, 3).scale(&scalar));
            Ok(None)
        },
    )
}

pub(super) fn zero_point(n_range: (usize, usize)) -> Check {
    Check::new(
        "classical/zero-point",
        "r(z) = P12/z + r^(0) + O(z); m(z) = m(0) + O(z)",
        n_range,
        vec![Family::ClassicalExplicit, Family::MExplicit, Family::MZero, Family::RZero],
        move |n, zoo, _| {
            let e = eps(ORDER)?;
            let p = Params::new().z(e);
            let r = zoo.build(Family::ClassicalExplicit, n, &p)?;
            hold!("z^-1 coefficient of r", r.coeff(-1)?, permutation::<Rat>(n));
            let r0: M = zoo.build(Family::RZero, n, &Params::new())?;
            hold!("z^0 coefficient of r", r.coeff(0)?, r0);
            let m = zoo.build(Family::MExplicit, n, &p)?;
            hold!("z^-1 coefficient of m", m.coeff(-1)?, TensorOperator::zeros(n, 2));
            let m0: M = zoo.build(Family::MZero, n, &Params::new())?;
            hold!("z^0 coefficient of m", m.coeff(0)?, m0);
            Ok(None)
        },
    )
}

// ---------------------------------------------------------------- Lax layer

pub(super) fn lax_trace(f: Family, n_range: (usize, usize)) -> Check {
    Check::new(
        format!("lax/trace/{}", f.name()),
        "g(z+eta) diag(lambda) g^-1(z) = tr2(R^eta12(z) S2), S = g(eta) diag(lambda) Res g^-1(0)",
        n_range,
        vec![f],
        move |n, zoo, s| {
            let q = s.q("q", n)?;
            let e = s.nonzero("eta");
            let z = s.nonzero("z");
            let lambda: Vec<Rat> = (0..n).map(|_| s.nonzero("lambda")).collect();
            let data = gauge::lax_build(&e, &z, &q, &lambda)?;
            let r = at(zoo, f, n, &e, &z, &None)?;
            let rhs = r.matmul(&data.s.embed(&[2], 2)?).partial_trace(2)?;
            hold!("trace formula", data.l_top, rhs);
            // the same Lax matrix written as g L^RS g^-1
            let g = gauge::g_matrix(&z, &q)?;
            let gi = gauge::g_inverse(&z, &q, InverseMethod::Symmetric)?;
            hold!("gauge of L^RS", TensorOperator::product([&g, &data.l_rs, &gi]), data.l_top);
            Ok(None)
        },
    )
}

pub(super) fn lax_residue(f: Family, n_range: (usize, usize)) -> Check {
    Check::new(
        format!("lax/residue/{}", f.name()),
        "Res g^-1(0)_2 R^h12(z) = g1(z+h) O12 g2^-1(h) g1^-1(z)",
        n_range,
        vec![f],
        move |n, zoo, s| {
            let q = s.q("q", n)?;
            let h = s.nonzero("hbar");
            let z = s.nonzero("z");
            let lhs = gauge::g_residue(&q)?.embed(&[2], 2)?.matmul(&at(zoo, f, n, &h, &z, &None)?);
            let rhs = TensorOperator::product([
                &g_on(&(&z + &h), &q, 1, 2)?,
                &o_matrix::<Rat>(n),
                &g_inv_on(&h, &q, 2, 2)?,
                &g_inv_on(&z, &q, 1, 2)?,
            ]);
            hold!("residue relation", lhs, rhs);
            Ok(None)
        },
    )
}

pub(super) fn o_trace(n_range: (usize, usize)) -> Check {
    Check::new(
        "lax/o-trace",
        "tr2(O12 diag(lambda)_2) = diag(lambda)",
        n_range,
        vec![],
        move |n, _, s| {
            let lambda: Vec<Rat> = (0..n).map(|_| s.nonzero("lambda")).collect();
            let d = TensorOperator::diagonal(&lambda);
            let t = o_matrix::<Rat>(n).matmul(&d.embed(&[2], 2)?).partial_trace(2)?;
            hold!("trace of O", t, d);
            Ok(None)
        },
    )
}

// ---------------------------------------------------------------- public entry points

fn run_one(check: &Check, n: usize, plan: &SamplePlan) -> CheckReport {
    let wide = Check {
        n_min: 1,
        n_max: usize::MAX,
        ..check.clone()
    };
    wide.run(n, plan, &Zoo::new())
}

/// Run several checks as one, sharing each trial's sampler.
fn combined(id: &str, anchor: &'static str, parts: Vec<Check>) -> Check {
    let families = parts.iter().flat_map(|c| c.families.clone()).collect();
    Check::new(id, anchor, (1, usize::MAX), families, move |n, zoo, s| {
        for part in &parts {
            if let Some(mut m) = (part.trial)(n, zoo, s)? {
                m.label = format!("{}: {}", part.id, m.label);
                return Ok(Some(m));
            }
        }
        Ok(None)
    })
}

pub fn check_ybe(kind: YbeKind, family: Family, n: usize, plan: &SamplePlan) -> CheckReport {
    run_one(&ybe(kind, family, (1, usize::MAX)), n, plan)
}

pub fn check_aybe(kind: AybeKind, family: Family, n: usize, plan: &SamplePlan) -> CheckReport {
    run_one(&aybe(kind, family, (1, usize::MAX)), n, plan)
}

pub fn check_unitary_skew(family: Family, n: usize, plan: &SamplePlan) -> CheckReport {
    run_one(&unitary_skew(family, (1, usize::MAX)), n, plan)
}

/// Residues for the family; for the 11-vertex matrix also its scaling limit.
pub fn check_residues_and_limits(family: Family, n: usize, plan: &SamplePlan) -> CheckReport {
    let mut parts = vec![residues(family, (1, usize::MAX))];
    if family == Family::ElevenVertex {
        parts.push(scaling_limit());
    }
    run_one(&combined(&format!("residues/{}", family.name()), parts[0].anchor, parts), n, plan)
}

pub fn check_equiv(case: EquivCase, n: usize, plan: &SamplePlan) -> CheckReport {
    run_one(&equiv_in(case, (1, usize::MAX)), n, plan)
}

pub fn check_gauge_props(n: usize, plan: &SamplePlan) -> CheckReport {
    let all = (1, usize::MAX);
    let parts = vec![
        q_independence(all),
        difference_dependence(all),
        brackets(all),
        argument_symmetry(Family::VertexGauge, all),
        argument_symmetry(Family::SemiDynamical, all),
    ];
    run_one(&combined("gauge-props", "vertex matrix: q-independence, difference dependence, brackets, argument symmetry", parts), n, plan)
}

pub fn check_classical_ids(n: usize, plan: &SamplePlan) -> CheckReport {
    let all = (1, usize::MAX);
    let parts = vec![
        classical_limit(all),
        m_coefficient(all),
        square_identity(all),
        zero_point(all),
        ybe(YbeKind::Classical, Family::ClassicalExplicit, all),
    ];
    run_one(&combined("classical", "classical r-matrix identities", parts), n, plan)
}

pub fn check_lax(n: usize, plan: &SamplePlan) -> CheckReport {
    let all = (1, usize::MAX);
    let parts = vec![
        lax_trace(Family::VertexGauge, all),
        lax_residue(Family::VertexGauge, all),
        o_trace(all),
    ];
    run_one(&combined("lax", "Lax matrices from the vertex R-matrix", parts), n, plan)
}
