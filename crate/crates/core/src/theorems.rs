//! Registry of executable property checks, one per stated result.
//!
//! Item lists are scanned exhaustively in lexicographic order. Items whose
//! hypothesis class the algebra lacks are still scanned, but their
//! counterexamples go to `evidence` and never fail the check.
//! Characterizations of a class are evaluated as equalities of whole-table
//! truth values, so an algebra outside the class passes when every clause is
//! false together.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{axiom, ClassLabel, ElementId, FiniteAlgebra};
use crate::check::{first_violation, named, CheckResult};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::orthospace::{
    associated_orthospace, block_boolean_family, block_decomposition, blocks,
    enumerate_orthoclosed, is_normal, two_cell_partitions, OrthoSpace,
};
use crate::sasaki::{
    center_raw, check_sasaki_set, commutes_raw, divides_raw, generated_subalgebra,
    has_full_sasaki_set, is_full, is_iboolean_subalgebra, is_sasaki_space,
    orthogonal_pair_boolean_witness, phi, sp_center_monoid_check, ProjectionMap,
};
use crate::subset::Subset;

/// Least class a check is stated for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Requirement {
    Be,
    Involutive,
    Iol,
    Ioml,
    IBoolean,
}

impl Requirement {
    pub fn met_by(self, c: &ClassLabel) -> bool {
        match self {
            Requirement::Be => c.is_be && c.is_bounded,
            Requirement::Involutive => c.is_involutive,
            Requirement::Iol => c.is_iol,
            Requirement::Ioml => c.is_ioml,
            Requirement::IBoolean => c.is_iboolean,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Requirement::Be => "bounded BE algebra",
            Requirement::Involutive => "involutive BE algebra",
            Requirement::Iol => "i-OL",
            Requirement::Ioml => "i-OML",
            Requirement::IBoolean => "i-Boolean algebra",
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CheckSpec {
    pub id: &'static str,
    pub requirement: Requirement,
    /// Quantified element variables of the widest clause.
    pub arity: usize,
    pub description: &'static str,
}

struct Entry {
    spec: CheckSpec,
    run: fn(&Ctx) -> Result<CheckResult>,
}

struct Ctx<'a> {
    alg: &'a FiniteAlgebra,
    limits: &'a Limits,
    id: &'static str,
}

macro_rules! entry {
    ($id:literal, $req:ident, $arity:literal, $desc:literal, $run:path) => {
        Entry {
            spec: CheckSpec {
                id: $id,
                requirement: Requirement::$req,
                arity: $arity,
                description: $desc,
            },
            run: $run,
        }
    };
}

static REGISTRY: [Entry; 54] = [
    entry!(
        "L2-BE-PROPS",
        Be,
        3,
        "x->(y->x)=1 and companions on (involutive) BE algebras",
        be_props
    ),
    entry!(
        "P2-QBE-PROPS",
        Involutive,
        4,
        "<=_Q, <=_L and the cancellation law on involutive BE algebras",
        qbe_props
    ),
    entry!(
        "R2-LEL-ORDER-IFF-IG",
        Involutive,
        3,
        "<=_L is an order relation iff (iG)",
        lel_order_iff_ig
    ),
    entry!(
        "L2-IMPL-EQUIV",
        Involutive,
        2,
        "(impl) iff (iG)+(Iabs-i) iff (pi)+(Iabs-i)",
        impl_equiv
    ),
    entry!(
        "L2-IOL-PROPS",
        Iol,
        4,
        "x<=_L y iff y*<=_L x* and companions on i-OLs",
        iol_props
    ),
    entry!(
        "L2-IOM-3WAY",
        Involutive,
        2,
        "(IOM) iff (IOM') iff (IOM'')",
        iom_3way
    ),
    entry!(
        "T2-CHAR-IOML-LE",
        Iol,
        2,
        "i-OML iff <=_L is contained in <=_Q iff x<=_L y implies y=y vee_Q x",
        char_ioml_le
    ),
    entry!(
        "C2-LEQ-EQ-LEL",
        Ioml,
        2,
        "<=_Q equals <=_L on i-OMLs",
        leq_eq_lel
    ),
    entry!(
        "P2-IOML-PROPS-A",
        Ioml,
        3,
        "x->(y meet_Q x)=x->y and companions on i-OMLs",
        ioml_props_a
    ),
    entry!(
        "P2-IOML-PROPS-B",
        Ioml,
        3,
        "(z meet_Q y) meet_Q x=z meet_Q x for x<=_L y and companions",
        ioml_props_b
    ),
    entry!(
        "T2-CHAR-IOML-5WAY",
        Iol,
        2,
        "i-OML iff (x->y)->(y meet_Q x)=x and three more clauses",
        char_ioml_5way
    ),
    entry!(
        "P2-IDIV-IFF-DISTRIB",
        Ioml,
        3,
        "(Idiv) iff (Idis1) and (Idis2) on i-OMLs",
        idiv_iff_distrib
    ),
    entry!(
        "R2-IDIV-IFF-AT",
        Iol,
        2,
        "(Idiv) iff (@) on i-OLs",
        idiv_iff_at
    ),
    entry!(
        "MBE-EQ",
        Involutive,
        3,
        "x.y=(x->y*)* satisfies the m-BE axioms; (m-Pimpl) iff (impl), (Pom) iff (IOM)",
        mbe_eq
    ),
    entry!(
        "L3-ORTHO-BASICS",
        Iol,
        2,
        "x perp x iff x=0 and companions",
        ortho_basics
    ),
    entry!(
        "L3-ORTHO-CONSEQ",
        Iol,
        2,
        "x*->y*=y* and y*->x*=x* for orthogonal x, y",
        ortho_conseq
    ),
    entry!(
        "P3-PERP-IFF-MEETZERO",
        Iol,
        2,
        "on i-OMLs x perp y iff x meet_Q y=0",
        perp_iff_meetzero
    ),
    entry!(
        "P3-CHAR-IOML-ORTHO",
        Iol,
        2,
        "i-OML iff x perp y implies x meet_Q y*=x",
        char_ioml_ortho
    ),
    entry!(
        "P3-CL-IS-IOL",
        Iol,
        0,
        "the orthoclosed sets form an i-OL ordered by inclusion",
        cl_is_iol
    ),
    entry!(
        "P4-SP-BASIC",
        Iol,
        3,
        "phi_a is monotone and companions on i-OLs",
        sp_basic
    ),
    entry!(
        "P4-SP-IOML",
        Iol,
        4,
        "phi_a phi_a x=phi_a x and companions on i-OMLs",
        sp_ioml
    ),
    entry!(
        "P4-SP-IOML-B",
        Ioml,
        3,
        "phi_a x=x iff x<=_L a and companions on i-OMLs",
        sp_ioml_b
    ),
    entry!(
        "T4-SASAKI-PERP-CHAR",
        Iol,
        3,
        "i-OML iff phi_y x perp z implies x perp phi_y z",
        sasaki_perp_char
    ),
    entry!("L4-C-BASICS", Iol, 2, "x C (y->x) and companions", c_basics),
    entry!(
        "T4-C-SYMMETRIC",
        Iol,
        2,
        "i-OML iff x C y implies y C x",
        c_symmetric
    ),
    entry!(
        "C4-C-MEET-COMM",
        Iol,
        2,
        "i-OML iff x C y implies x meet_Q y=y meet_Q x",
        c_meet_comm
    ),
    entry!(
        "L4-C-STAR-CLOSED",
        Ioml,
        2,
        "x C y implies x C y*, x* C y and x* C y*",
        c_star_closed
    ),
    entry!(
        "P4-C-FORMULA",
        Ioml,
        2,
        "x C y iff (x->y*)->(x->y)*=x",
        c_formula
    ),
    entry!(
        "P4-C-MEET-FORMULA",
        Ioml,
        2,
        "x C y iff x meet_Q y=(x->y*)*",
        c_meet_formula
    ),
    entry!(
        "C4-C-4WAY",
        Ioml,
        2,
        "x C y iff meets commute iff joins commute iff phi_x y=phi_y x",
        c_4way
    ),
    entry!(
        "T4-SP-COMPOSE",
        Ioml,
        3,
        "a C b iff phi_a phi_b=phi_b phi_a=phi_(a meet_Q b) iff <=_L-stability",
        sp_compose
    ),
    entry!("L5-C-IFF-D", Iol, 2, "x C y iff x D y", c_iff_d),
    entry!("L5-D-BASICS", Iol, 2, "x D (y->x) and companions", d_basics),
    entry!(
        "P5-BOOLEAN-IS-IOML",
        IBoolean,
        2,
        "every i-Boolean algebra is an i-OML",
        boolean_is_ioml
    ),
    entry!(
        "T5-BOOLEAN-6WAY",
        Ioml,
        2,
        "i-Boolean iff meet_Q commutes and four more clauses",
        boolean_6way
    ),
    entry!(
        "T5-BOOLEAN-MEETLE",
        Ioml,
        2,
        "i-Boolean iff x meet_Q y<=_L x iff x<=_L x vee_Q y",
        boolean_meetle
    ),
    entry!(
        "T5-BOOLEAN-LE",
        Ioml,
        2,
        "i-Boolean iff <= is contained in <=_L",
        boolean_le
    ),
    entry!(
        "C5-ORDERS-COINCIDE",
        IBoolean,
        2,
        "<=, <=_L and <=_Q coincide on i-Boolean algebras",
        orders_coincide
    ),
    entry!(
        "L5-CENTER-ARROW",
        Ioml,
        3,
        "x C z and y C z imply x->y <=_L ((x->y)->z*)->((x->y)->z)*",
        center_arrow
    ),
    entry!(
        "T5-CENTER-BOOLEAN",
        Ioml,
        2,
        "the center is an i-Boolean subalgebra",
        center_boolean
    ),
    entry!(
        "T5-ORTHO-PAIR-BOOLEAN",
        Iol,
        2,
        "i-OML iff every orthogonal pair lies in an i-Boolean subalgebra",
        ortho_pair_boolean
    ),
    entry!(
        "T5-SP-CENTER-MONOID",
        Ioml,
        2,
        "projections of central elements form an Abelian monoid",
        sp_center_monoid
    ),
    entry!(
        "P6-SS-PROPS",
        Iol,
        2,
        "phi 1=psi 1 implies phi=psi and companions for a Sasaki set",
        ss_props
    ),
    entry!(
        "P6-SS-ARROW",
        Iol,
        2,
        "phi(x->y)=(phi x*)*->phi y for a Sasaki set",
        ss_arrow
    ),
    entry!(
        "P6-FULL-PROPS",
        Iol,
        3,
        "phi^x x*=0 and companions for a full Sasaki set",
        full_props
    ),
    entry!(
        "P6-FULL-FORMULA",
        Iol,
        2,
        "phi^x y=y meet_Q x for a full Sasaki set",
        full_formula
    ),
    entry!(
        "T6-FULLSET-IFF-IOML",
        Iol,
        0,
        "i-OML iff a full Sasaki set of projections exists",
        fullset_iff_ioml
    ),
    entry!(
        "P7-DACEY-IFF-BOOLEAN-PAIRS",
        Iol,
        0,
        "Dacey iff orthogonal pairs of closed sets lie in i-Boolean subalgebras",
        dacey_iff_boolean_pairs
    ),
    entry!(
        "L7-DOWNSET",
        Iol,
        2,
        "(down x)^perp=down x* restricted to non-zero elements and companions",
        downset
    ),
    entry!(
        "P7-CL-ISO",
        Iol,
        2,
        "x maps to its non-zero down-set, an isomorphism onto the closed sets",
        cl_iso
    ),
    entry!(
        "T7-IOML-SASAKI",
        Ioml,
        0,
        "the space of a finite i-OML is a Sasaki space",
        ioml_sasaki
    ),
    entry!(
        "P7-FULLSET-SASAKI",
        Iol,
        0,
        "a full Sasaki set makes the space a Sasaki space",
        fullset_sasaki
    ),
    entry!(
        "L7-NORMAL-CRIT",
        Iol,
        0,
        "unique extension of block partitions iff (E2^perp, E1^perp) is a decomposition",
        normal_crit
    ),
    entry!(
        "P7-BLOCK-BOOLEAN",
        Iol,
        0,
        "on normal spaces the closures of block subsets form an i-Boolean subalgebra",
        block_boolean
    ),
];

/// The registry in stable order.
pub fn list_checks() -> Vec<CheckSpec> {
    REGISTRY.iter().map(|e| e.spec).collect()
}

pub fn check_spec(id: &str) -> Option<CheckSpec> {
    REGISTRY.iter().find(|e| e.spec.id == id).map(|e| e.spec)
}

pub fn run_check(alg: &FiniteAlgebra, id: &str, limits: &Limits) -> Result<CheckResult> {
    let entry = REGISTRY
        .iter()
        .find(|e| e.spec.id == id)
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))?;
    run_entry(alg, entry, limits)
}

/// All checks, evaluated in parallel and returned in registry order.
pub fn run_all(alg: &FiniteAlgebra, limits: &Limits) -> Result<Vec<CheckResult>> {
    alg.classify();
    REGISTRY
        .par_iter()
        .map(|e| run_entry(alg, e, limits))
        .collect()
}

fn run_entry(alg: &FiniteAlgebra, entry: &Entry, limits: &Limits) -> Result<CheckResult> {
    let req = entry.spec.requirement;
    if !req.met_by(&alg.classify()) {
        return Ok(CheckResult::skipped(entry.spec.id, req.name()));
    }
    let cx = Ctx {
        alg,
        limits,
        id: entry.spec.id,
    };
    let mut r = (entry.run)(&cx)?;
    r.check_id = entry.spec.id.to_string();
    Ok(r)
}

// ---------------------------------------------------------------------------
// scanning machinery

type Pred = fn(&FiniteAlgebra, &[ElementId]) -> bool;

struct Item {
    label: &'static str,
    level: Requirement,
    roles: &'static [&'static str],
    pred: Pred,
}

macro_rules! item {
    ($label:literal, $level:ident, |$g:ident, $($v:ident),+| $body:expr) => {
        Item {
            label: $label,
            level: Requirement::$level,
            roles: &[$(stringify!($v)),+],
            pred: |$g: &FiniteAlgebra, t: &[ElementId]| {
                let &[$($v),+] = t else { unreachable!() };
                $body
            },
        }
    };
}

fn violation(g: &FiniteAlgebra, it: &Item) -> Option<Vec<ElementId>> {
    first_violation(g.len(), it.roles.len(), |t| (it.pred)(g, t))
}

fn render_tuple(g: &FiniteAlgebra, roles: &[&str], t: &[ElementId]) -> String {
    roles
        .iter()
        .zip(t)
        .map(|(r, &x)| format!("{r}={}", g.name(x)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn run_items(cx: &Ctx, items: &[Item]) -> CheckResult {
    let g = cx.alg;
    let class = g.classify();
    let mut evidence = Vec::new();
    let mut beyond = Vec::new();
    for it in items {
        let v = violation(g, it);
        if it.level.met_by(&class) {
            if let Some(t) = v {
                let mut w = vec![("item".to_string(), it.label.to_string())];
                w.extend(named(g, it.roles, &t));
                return CheckResult::fail(cx.id, w).with_evidence(evidence);
            }
        } else {
            beyond.push(it.label);
            if let Some(t) = v {
                evidence.push((it.label.to_string(), render_tuple(g, it.roles, &t)));
            }
        }
    }
    let r = CheckResult::pass(cx.id).with_evidence(evidence);
    if beyond.is_empty() {
        r
    } else {
        r.with_note(format!(
            "{} stated for a stronger class; evidence only",
            beyond.join(" ")
        ))
    }
}

/// Clause values must all agree. `anchor` is a class flag taking part in the
/// equivalence.
fn run_equivalence(cx: &Ctx, anchor: Option<(&str, bool)>, clauses: &[Item]) -> CheckResult {
    let g = cx.alg;
    let mut values: Vec<(String, bool)> = Vec::new();
    let mut evidence = Vec::new();
    if let Some((name, v)) = anchor {
        values.push((name.to_string(), v));
    }
    for c in clauses {
        let v = violation(g, c);
        if let Some(t) = &v {
            evidence.push((c.label.to_string(), render_tuple(g, c.roles, t)));
        }
        values.push((c.label.to_string(), v.is_none()));
    }
    equivalence_result(cx.id, values, evidence)
}

fn equivalence_result(
    id: &str,
    values: Vec<(String, bool)>,
    evidence: Vec<(String, String)>,
) -> CheckResult {
    if values.windows(2).all(|w| w[0].1 == w[1].1) {
        CheckResult::pass(id).with_evidence(evidence)
    } else {
        let w = values
            .into_iter()
            .map(|(k, v)| (k, v.to_string()))
            .collect();
        CheckResult::fail(id, w)
            .with_evidence(evidence)
            .with_note("clauses disagree")
    }
}

// shorthand used inside item bodies

fn sp(g: &FiniteAlgebra, a: ElementId, x: ElementId) -> ElementId {
    g.wedge_q(x, a)
}

fn cm(g: &FiniteAlgebra, x: ElementId, y: ElementId) -> bool {
    commutes_raw(g, x, y)
}

fn dv(g: &FiniteAlgebra, x: ElementId, y: ElementId) -> bool {
    divides_raw(g, x, y)
}

fn od(g: &FiniteAlgebra, x: ElementId, y: ElementId) -> ElementId {
    g.wedge_p(x, y)
}

fn op(g: &FiniteAlgebra, x: ElementId, y: ElementId) -> ElementId {
    g.star(od(g, g.star(x), g.star(y)))
}

fn ioml_anchor(g: &FiniteAlgebra) -> Option<(&'static str, bool)> {
    Some(("(a) i-OML", g.classify().is_ioml))
}

fn iboolean_anchor(g: &FiniteAlgebra) -> Option<(&'static str, bool)> {
    Some(("(a) i-Boolean", g.classify().is_iboolean))
}

// ---------------------------------------------------------------------------
// BE algebras, i-OLs and i-OMLs

fn be_props(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_items(
        cx,
        &[
            item!("(1)", Be, |g, x, y| g.imp(x, g.imp(y, x)) == g.one()),
            item!("(2)", Be, |g, x, y| g.le(x, g.vee_q(x, y))),
            item!("(3)", Be, |g, x, y| g.imp(x, g.star(y))
                == g.imp(y, g.star(x))),
            item!("(4)", Be, |g, x| g.le(x, g.star(g.star(x)))),
            item!("(5)", Involutive, |g, x, y| g.imp(g.star(x), y)
                == g.imp(g.star(y), x)),
            item!("(6)", Involutive, |g, x, y| g.imp(g.star(x), g.star(y))
                == g.imp(y, x)),
            item!("(7)", Involutive, |g, x, y, z| {
                g.imp(g.star(g.imp(x, y)), z) == g.imp(x, g.imp(g.star(y), z))
            }),
            item!("(8)", Involutive, |g, x, y, z| g.imp(x, g.imp(y, z))
                == g.imp(od(g, x, y), z)),
            item!("(9)", Involutive, |g, x, y| {
                let u = g.imp(g.star(x), y);
                let v = g.imp(g.star(g.imp(g.star(x), x)), g.imp(g.star(y), y));
                g.imp(g.star(u), u) == v
            }),
        ],
    ))
}

fn qbe_props(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_items(
        cx,
        &[
            item!("(1)", Involutive, |g, x, y| {
                !g.le_q(x, y) || (x == g.wedge_q(y, x) && y == g.vee_q(x, y))
            }),
            item!("(2)", Involutive, |g, x, y| {
                g.le_q(x, x) && (!(g.le_q(x, y) && g.le_q(y, x)) || x == y)
            }),
            item!("(3)", Involutive, |g, x, y| {
                g.vee_q(x, y) == g.star(g.wedge_q(g.star(x), g.star(y)))
            }),
            item!("(4)", Involutive, |g, x, y| !g.le_q(x, y) || g.le(x, y)),
            item!("(5)", Involutive, |g, x, y, z| {
                !(g.le_q(x, z) && g.le_q(y, z) && g.imp(z, x) == g.imp(z, y)) || x == y
            }),
            item!("(6)", Involutive, |g, x, y| !g.le_l(x, y) || g.le(x, y)),
            item!("(7)", Involutive, |g, x, y, z| {
                (!(g.le_l(x, y) && g.le_l(y, x)) || x == y)
                    && (!(g.le_l(x, y) && g.le_l(y, z)) || g.le_l(x, z))
            }),
            item!("(8)", Involutive, |g, x, y, z| {
                !(g.le_l(z, x) && g.le_l(z, y)) || g.le_l(z, od(g, x, y))
            }),
            item!("(9)", Involutive, |g, x, y, z, u| {
                g.imp(od(g, x, y), g.imp(z, g.star(u))) == g.imp(od(g, x, z), g.imp(y, g.star(u)))
            }),
        ],
    ))
}

fn lel_order_iff_ig(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_equivalence(
        cx,
        None,
        &[
            item!("<=_L is an order", Involutive, |g, x, y, z| {
                g.le_l(x, x)
                    && (!(g.le_l(x, y) && g.le_l(y, x)) || x == y)
                    && (!(g.le_l(x, y) && g.le_l(y, z)) || g.le_l(x, z))
            }),
            item!("(iG)", Involutive, |g, x| g.imp(g.star(x), x) == x),
        ],
    ))
}

fn impl_equiv(cx: &Ctx) -> Result<CheckResult> {
    fn iabs(g: &FiniteAlgebra, x: ElementId, y: ElementId) -> bool {
        g.imp(g.imp(x, g.imp(x, y)), x) == x
    }
    Ok(run_equivalence(
        cx,
        None,
        &[
            item!("(a) impl", Involutive, |g, x, y| g.imp(g.imp(x, y), x) == x),
            item!("(b) iG and Iabs-i", Involutive, |g, x, y| {
                g.imp(g.star(x), x) == x && iabs(g, x, y)
            }),
            item!("(c) pi and Iabs-i", Involutive, |g, x, y| {
                g.imp(x, g.imp(x, y)) == g.imp(x, y) && iabs(g, x, y)
            }),
        ],
    ))
}

fn iol_props(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_items(
        cx,
        &[
            item!("(1)", Iol, |g, x, y| g.le_l(x, y)
                == g.le_l(g.star(y), g.star(x))),
            item!("(2)", Iol, |g, x, y| !g.le_q(x, y) || g.le_l(x, y)),
            item!("(3)", Iol, |g, x, y| {
                g.le_l(x, g.imp(y, x)) && g.le_l(x, g.imp(g.star(x), y))
            }),
            item!("(4)", Iol, |g, x, y| {
                let m = od(g, x, y);
                g.le_l(m, x) && g.le_l(m, y)
            }),
            item!("(5)", Iol, |g, x, y| {
                (g.star(x) == g.imp(x, y)) == (g.star(y) == g.imp(y, x))
            }),
            item!("(6)", Iol, |g, x, y| g.wedge_q(x, y) != x
                || g.wedge_q(x, g.star(y)) == g.zero()),
            item!("(7)", Iol, |g, x, y| !g.le_l(x, y)
                || g.wedge_q(x, g.star(y)) == g.zero()),
            item!("(8)", Iol, |g, x, y, z| {
                !g.le_l(x, y)
                    || (g.le_l(g.imp(y, z), g.imp(x, z)) && g.le_l(g.imp(z, x), g.imp(z, y)))
            }),
            item!("(9)", Iol, |g, x, y, z| {
                !g.le_l(x, y)
                    || (g.le_l(g.vee_q(x, z), g.vee_q(y, z))
                        && g.le_l(g.wedge_q(x, z), g.wedge_q(y, z)))
            }),
            item!("(10)", Iol, |g, x, y, z| {
                !(g.le_l(x, z) && g.le_l(y, z)) || g.le_l(g.imp(g.star(x), y), z)
            }),
            item!("(11)", Iol, |g, x, y| {
                g.le_l(g.imp(g.imp(x, g.star(y)), g.star(g.imp(x, y))), x)
            }),
            item!("(12)", Iol, |g, x, y, z, u| {
                !(g.le_l(x, y) && g.le_l(z, u)) || g.le_l(g.imp(g.star(x), z), g.imp(g.star(y), u))
            }),
        ],
    ))
}

fn iom_3way(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_equivalence(
        cx,
        None,
        &[
            item!("(IOM)", Involutive, |g, x, y| g.wedge_q(x, g.imp(y, x))
                == x),
            item!("(IOM')", Involutive, |g, x, y| g
                .wedge_q(x, g.imp(g.star(x), y))
                == x),
            item!("(IOM'')", Involutive, |g, x, y| g
                .vee_q(x, g.star(g.imp(x, y)))
                == x),
        ],
    ))
}

fn char_ioml_le(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_equivalence(
        cx,
        ioml_anchor(cx.alg),
        &[
            item!("(b)", Iol, |g, x, y| !g.le_l(x, y) || g.le_q(x, y)),
            item!("(c)", Iol, |g, x, y| !g.le_l(x, y) || y == g.vee_q(y, x)),
        ],
    ))
}

fn leq_eq_lel(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_items(
        cx,
        &[item!("(1)", Ioml, |g, x, y| g.le_q(x, y) == g.le_l(x, y))],
    ))
}

fn ioml_props_a(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_items(
        cx,
        &[
            item!("(1)", Ioml, |g, x, y| g.imp(x, g.wedge_q(y, x))
                == g.imp(x, y)),
            item!("(2)", Ioml, |g, x, y| {
                g.imp(g.vee_q(x, y), g.star(g.imp(x, y))) == g.star(y)
            }),
            item!("(3)", Ioml, |g, x, y, z| {
                g.wedge_q(x, g.wedge_q(g.imp(y, x), g.imp(z, x))) == x
            }),
            item!("(4)", Ioml, |g, x, y| g.imp(g.imp(x, y), g.wedge_q(y, x))
                == x),
            // read as: x <= y and y <=_L x imply x = y
            item!("(5)", Ioml, |g, x, y| !(g.le(x, y) && g.le_l(y, x))
                || x == y),
            item!("(6)", Ioml, |g, x, y| {
                g.le_l(g.wedge_q(x, y), y) && g.le_l(y, g.vee_q(x, y))
            }),
            item!("(7)", Ioml, |g, x, y| g
                .imp(g.wedge_q(x, y), g.wedge_q(y, x))
                == g.one()),
            item!("(8)", Ioml, |g, x, y| g.imp(g.vee_q(x, y), g.vee_q(y, x))
                == g.one()),
            item!("(9)", Ioml, |g, x, y| g.imp(g.vee_q(x, y), y)
                == g.imp(x, y)),
            item!("(10)", Ioml, |g, x, y, z| {
                g.wedge_q(g.wedge_q(x, y), g.wedge_q(y, z)) == g.wedge_q(g.wedge_q(x, y), z)
            }),
        ],
    ))
}

fn ioml_props_b(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_items(
        cx,
        &[
            item!("(1)", Ioml, |g, x, y, z| {
                !(g.le_l(x, y) && g.le_l(x, z)) || g.le_l(x, g.wedge_q(y, z))
            }),
            item!("(2)", Ioml, |g, x, y, z| {
                !g.le_l(x, y) || g.wedge_q(g.wedge_q(z, y), x) == g.wedge_q(z, x)
            }),
            item!("(3)", Ioml, |g, x, y| !(g.le(x, y) && g.le_l(y, x))
                || x == y),
            item!("(4)", Ioml, |g, x, y, z| {
                !(g.le_l(y, x) && g.le_l(z, x)) || g.le_l(g.vee_q(y, z), x)
            }),
            item!("(5)", Ioml, |g, x, y| g.imp(x, g.wedge_q(x, y))
                == g.imp(x, y)),
            item!("(6)", Ioml, |g, x, y| {
                g.wedge_q(x, g.star(y)) != g.zero() || g.wedge_q(x, y) == x
            }),
        ],
    ))
}

fn char_ioml_5way(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_equivalence(
        cx,
        ioml_anchor(cx.alg),
        &[
            item!("(b)", Iol, |g, x, y| g.imp(g.imp(x, y), g.wedge_q(y, x))
                == x),
            item!("(c)", Iol, |g, x, y| !(g.le(x, y) && g.le_l(y, x))
                || x == y),
            item!("(d)", Iol, |g, x, y| {
                g.wedge_q(x, g.star(y)) != g.zero() || g.wedge_q(x, y) == x
            }),
            item!("(e)", Iol, |g, x, y| g.imp(x, g.wedge_q(x, y))
                == g.imp(x, y)),
        ],
    ))
}

fn idiv_iff_distrib(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_equivalence(
        cx,
        None,
        &[
            item!("(Idiv)", Ioml, |g, x, y| dv(g, x, y)),
            item!("(Idis1) and (Idis2)", Ioml, |g, x, y, z| {
                let t = [x, y, z];
                axiom("Idis1").map(|a| a.holds_at(g, &t)).unwrap_or(false)
                    && axiom("Idis2").map(|a| a.holds_at(g, &t)).unwrap_or(false)
            }),
        ],
    ))
}

fn idiv_iff_at(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_equivalence(
        cx,
        None,
        &[
            item!("(Idiv)", Iol, |g, x, y| dv(g, x, y)),
            item!("(@)", Iol, |g, x, y| g.imp(g.imp(g.star(y), x), y)
                == g.imp(x, y)),
        ],
    ))
}

/// `x.y = (x->y*)*` and `x+y = (x*.y*)*`.
fn mbe_eq(cx: &Ctx) -> Result<CheckResult> {
    let g = cx.alg;
    let axioms = run_items(
        cx,
        &[
            item!("(PU)", Involutive, |g, x| od(g, g.one(), x) == x),
            item!("(Pcomm)", Involutive, |g, x, y| od(g, x, y) == od(g, y, x)),
            item!("(Pass)", Involutive, |g, x, y, z| {
                od(g, x, od(g, y, z)) == od(g, od(g, x, y), z)
            }),
            item!("(m-La)", Involutive, |g, x| od(g, x, g.zero()) == g.zero()),
            item!("(m-Re)", Involutive, |g, x| od(g, x, g.star(x)) == g.zero()),
            item!("(DN)", Involutive, |g, x| g.star(g.star(x)) == x),
            item!("(x.y*)*=x->y", Involutive, |g, x, y| {
                g.star(od(g, x, g.star(y))) == g.imp(x, y)
            }),
        ],
    );
    if axioms.failed() {
        return Ok(axioms);
    }
    let pimpl = run_equivalence(
        cx,
        None,
        &[
            item!("(m-Pimpl)", Involutive, |g, x, y| {
                g.star(od(g, g.star(od(g, x, g.star(y))), g.star(x))) == x
            }),
            item!("(impl)", Involutive, |g, x, y| g.imp(g.imp(x, y), x) == x),
        ],
    );
    if pimpl.failed() || !g.classify().is_iol {
        return Ok(pimpl.with_note("(Pom) compared with (IOM) only on i-OLs"));
    }
    let pom = run_equivalence(
        cx,
        None,
        &[
            item!("(Pom)", Iol, |g, x, y| {
                let m = od(g, x, y);
                op(g, m, od(g, g.star(m), x)) == x
            }),
            item!("(IOM)", Iol, |g, x, y| g.wedge_q(x, g.imp(y, x)) == x),
        ],
    );
    let mut evidence = pimpl.evidence;
    evidence.extend(pom.evidence.iter().cloned());
    Ok(CheckResult { evidence, ..pom })
}

// ---------------------------------------------------------------------------
// orthogonality

fn ortho_basics(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_items(
        cx,
        &[
            item!("(1)", Iol, |g, x, y| g.perp(x, y) == g.perp(y, x)),
            item!("(2)", Iol, |g, x| g.perp(x, x) == (x == g.zero())),
            item!("(3)", Iol, |g, x| g.perp(g.zero(), x)),
            item!("(4)", Iol, |g, x| g.perp(g.one(), x) == (x == g.zero())),
            item!("(5)", Iol, |g, x, y| !g.le_l(x, y) || g.perp(x, g.star(y))),
            item!("(6)", Iol, |g, x, y| g.perp(x, g.star(g.imp(y, x)))),
            item!("(7)", Iol, |g, x, y| g.perp(x, y) == g.le_l(x, g.star(y))),
        ],
    ))
}

fn ortho_conseq(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_items(
        cx,
        &[
            item!("(1)", Iol, |g, x, y| {
                !g.perp(x, y)
                    || (g.imp(g.star(x), g.star(y)) == g.star(y)
                        && g.imp(g.star(y), g.star(x)) == g.star(x))
            }),
            item!("(2)", Ioml, |g, x, y| {
                !g.perp(x, y) || g.imp(g.imp(g.star(x), y), x) == g.star(y)
            }),
            // printed with x in place of the final y; the derivation ends in y
            item!("(3)", Ioml, |g, x, y| {
                !g.perp(x, y) || g.imp(g.imp(g.star(x), y), y) == g.star(x)
            }),
            item!("(4)", Ioml, |g, x, y| {
                !g.perp(x, y) || g.imp(g.star(x), g.star(g.imp(g.star(x), y))) == g.star(y)
            }),
        ],
    ))
}

fn perp_iff_meetzero(cx: &Ctx) -> Result<CheckResult> {
    let g = cx.alg;
    let items = [
        item!("perp implies meet_Q zero", Iol, |g, x, y| {
            !g.perp(x, y) || g.wedge_q(x, y) == g.zero()
        }),
        item!("meet_Q zero implies perp", Iol, |g, x, y| {
            g.wedge_q(x, y) != g.zero() || g.perp(x, y)
        }),
    ];
    if g.classify().is_ioml {
        return Ok(run_items(cx, &items));
    }
    let evidence = items
        .iter()
        .map(|it| {
            let v = violation(g, it).map_or("holds".to_string(), |t| render_tuple(g, it.roles, &t));
            (it.label.to_string(), v)
        })
        .collect();
    Ok(CheckResult::skipped(cx.id, Requirement::Ioml.name()).with_evidence(evidence))
}

fn char_ioml_ortho(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_equivalence(
        cx,
        ioml_anchor(cx.alg),
        &[item!("(b)", Iol, |g, x, y| {
            !g.perp(x, y) || g.wedge_q(x, g.star(y)) == x
        })],
    ))
}

fn cl_is_iol(cx: &Ctx) -> Result<CheckResult> {
    let space = associated_orthospace(cx.alg)?;
    let closed = enumerate_orthoclosed(&space, cx.limits)?;
    let cl = closed.to_algebra(&space)?;
    if !cl.classify().is_iol {
        return Ok(CheckResult::fail(
            cx.id,
            vec![("class".into(), cl.classify().class_name().into())],
        ));
    }
    for (i, a) in closed.members().iter().enumerate() {
        for (j, b) in closed.members().iter().enumerate() {
            if cl.le_l(ElementId(i), ElementId(j)) != a.is_subset(b) {
                return Ok(CheckResult::fail(
                    cx.id,
                    vec![("A".into(), space.format(a)), ("B".into(), space.format(b))],
                )
                .with_note("<=_L differs from inclusion"));
            }
        }
    }
    Ok(CheckResult::pass(cx.id).with_note(format!("{} closed sets", closed.len())))
}

// ---------------------------------------------------------------------------
// Sasaki projections and commutation

fn sp_basic(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_items(
        cx,
        &[
            item!("(1)", Iol, |g, x| {
                let (o, z) = (g.one(), g.zero());
                sp(g, x, x) == x
                    && sp(g, o, x) == x
                    && sp(g, x, o) == x
                    && sp(g, z, x) == z
                    && sp(g, x, z) == z
                    && sp(g, x, g.star(x)) == z
                    && sp(g, g.star(x), x) == z
            }),
            item!("(2)", Iol, |g, a, x| !g.le_l(a, x) || sp(g, a, x) == a),
            item!("(3)", Iol, |g, a, x| sp(g, sp(g, a, x), x) == sp(g, a, x)),
            item!("(4)", Iol, |g, a, x| !g.le_q(a, x) || sp(g, x, a) == a),
            item!("(5)", Iol, |g, a, x, y| !g.le_l(x, y)
                || g.le_l(sp(g, a, x), sp(g, a, y))),
        ],
    ))
}

fn fixes_all(g: &FiniteAlgebra, s: ElementId) -> bool {
    g.ids().all(|x| sp(g, s, x) == x)
}

fn sp_ioml(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_items(
        cx,
        &[
            item!("(1)", Ioml, |g, a, b| {
                !(fixes_all(g, a) && fixes_all(g, b)) || fixes_all(g, g.wedge_q(a, b))
            }),
            item!("(2)", Ioml, |g, a, x| sp(g, a, sp(g, a, x)) == sp(g, a, x)),
            item!("(3)", Ioml, |g, a, x| {
                sp(g, a, g.star(sp(g, a, x))) == g.star(g.imp(a, x))
            }),
            item!("(4)", Ioml, |g, a, x| g
                .le_l(sp(g, a, g.star(sp(g, a, x))), g.star(x))),
            item!("(5)", Ioml, |g, a, x, y| {
                g.le_l(sp(g, a, x), g.star(y)) == g.le_l(sp(g, a, y), g.star(x))
            }),
            item!("(6)", Ioml, |g, a, b| sp(g, a, sp(g, b, a)) == sp(g, a, b)),
            item!("(7)", Ioml, |g, a, b, x| {
                a != g.wedge_q(a, b) || sp(g, a, x) == sp(g, a, sp(g, b, x))
            }),
        ],
    ))
}

fn sp_ioml_b(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_items(
        cx,
        &[
            item!("(1)", Ioml, |g, a, x| (sp(g, a, x) == x) == g.le_l(x, a)),
            item!("(2)", Ioml, |g, a, x| (sp(g, a, x) == g.zero())
                == g.le_l(x, g.star(a))),
            item!("(3)", Ioml, |g, a, b, x| {
                !g.le_l(a, b) || sp(g, a, sp(g, b, x)) == sp(g, a, x)
            }),
            item!("(4)", Ioml, |g, a, x, y| {
                let (px, py) = (sp(g, a, x), sp(g, a, y));
                (g.star(px) == g.imp(px, y)) == (g.star(py) == g.imp(py, x))
            }),
            item!("(5)", Ioml, |g, a| {
                let square_zero = g.ids().all(|x| sp(g, a, sp(g, a, x)) == g.zero());
                let top = sp(g, a, g.one());
                square_zero == g.le_l(top, g.star(top))
            }),
            item!("(6)", Ioml, |g, a, x, y| g.perp(sp(g, a, x), y)
                == g.perp(x, sp(g, a, y))),
            item!("(7)", Ioml, |g, x, y| g.perp(x, y)
                == (sp(g, x, y) == g.zero())),
            item!("(8)", Ioml, |g, a, x| !g.perp(x, a)
                || g.perp(sp(g, a, x), g.star(a))),
        ],
    ))
}

fn sasaki_perp_char(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_equivalence(
        cx,
        ioml_anchor(cx.alg),
        &[item!("(b)", Iol, |g, x, y, z| {
            !g.perp(sp(g, y, x), z) || g.perp(x, sp(g, y, z))
        })],
    ))
}

fn c_basics(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_items(
        cx,
        &[
            item!("(1)", Iol, |g, x| {
                let (o, z, s) = (g.one(), g.zero(), g.star(x));
                cm(g, x, x)
                    && cm(g, x, z)
                    && cm(g, z, x)
                    && cm(g, x, o)
                    && cm(g, o, x)
                    && cm(g, x, s)
                    && cm(g, s, x)
            }),
            item!("(2)", Iol, |g, x, y| {
                !(g.le_l(x, y) || g.le_l(x, g.star(y))) || cm(g, x, y)
            }),
            item!("(3)", Iol, |g, x, y| {
                let u = g.imp(g.star(x), y);
                cm(g, x, g.imp(y, x)) && cm(g, x, u) && cm(g, y, u)
            }),
        ],
    ))
}

fn c_symmetric(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_equivalence(
        cx,
        ioml_anchor(cx.alg),
        &[item!("(b)", Iol, |g, x, y| !cm(g, x, y) || cm(g, y, x))],
    ))
}

fn c_meet_comm(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_equivalence(
        cx,
        ioml_anchor(cx.alg),
        &[item!("(b)", Iol, |g, x, y| {
            !cm(g, x, y) || g.wedge_q(x, y) == g.wedge_q(y, x)
        })],
    ))
}

fn c_star_closed(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_items(
        cx,
        &[item!("(1)", Ioml, |g, x, y| {
            let (sx, sy) = (g.star(x), g.star(y));
            !cm(g, x, y) || (cm(g, x, sy) && cm(g, sx, y) && cm(g, sx, sy))
        })],
    ))
}

fn c_formula(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_items(
        cx,
        &[item!("(1)", Ioml, |g, x, y| {
            cm(g, x, y) == (g.imp(g.imp(x, g.star(y)), g.star(g.imp(x, y))) == x)
        })],
    ))
}

fn c_meet_formula(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_items(
        cx,
        &[item!("(1)", Ioml, |g, x, y| cm(g, x, y)
            == (g.wedge_q(x, y) == od(g, x, y)))],
    ))
}

fn c_4way(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_items(
        cx,
        &[item!("(a)-(d)", Ioml, |g, x, y| {
            let c = cm(g, x, y);
            c == (g.wedge_q(x, y) == g.wedge_q(y, x))
                && c == (g.vee_q(x, y) == g.vee_q(y, x))
                && c == (sp(g, x, y) == sp(g, y, x))
        })],
    ))
}

fn sp_compose(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_items(
        cx,
        &[item!("(a)-(c)", Ioml, |g, a, b| {
            let c = cm(g, a, b);
            let m = g.wedge_q(a, b);
            let composes = g.ids().all(|x| {
                let ab = sp(g, a, sp(g, b, x));
                ab == sp(g, b, sp(g, a, x)) && ab == sp(g, m, x)
            });
            let stable = g.ids().all(|x| {
                (!g.le_l(x, a) || g.le_l(sp(g, b, x), a))
                    && (!g.le_l(x, b) || g.le_l(sp(g, a, x), b))
            });
            c == composes && composes == stable
        })],
    ))
}

// ---------------------------------------------------------------------------
// divisibility, i-Boolean algebras and the center

fn c_iff_d(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_items(
        cx,
        &[item!("(1)", Iol, |g, x, y| cm(g, x, y) == dv(g, x, y))],
    ))
}

fn d_basics(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_items(
        cx,
        &[
            item!("(1)", Iol, |g, x| {
                let (o, z, s) = (g.one(), g.zero(), g.star(x));
                dv(g, x, x)
                    && dv(g, x, z)
                    && dv(g, z, x)
                    && dv(g, x, o)
                    && dv(g, o, x)
                    && dv(g, x, s)
                    && dv(g, s, x)
            }),
            item!("(2)", Iol, |g, x, y| {
                !(g.le_l(x, y) || g.le_l(x, g.star(y))) || dv(g, x, y)
            }),
            item!("(3)", Iol, |g, x, y| {
                let u = g.imp(g.star(x), y);
                dv(g, x, g.imp(y, x)) && dv(g, x, u) && dv(g, y, u)
            }),
            item!("(4)", Ioml, |g, x, y| {
                let sy = g.star(y);
                !g.perp(x, y) || (dv(g, x, y) && dv(g, y, x) && dv(g, x, sy) && dv(g, sy, x))
            }),
            item!("(5)", Ioml, |g, x, y| {
                let u = g.imp(g.star(x), y);
                let su = g.star(u);
                dv(g, g.star(x), u) && dv(g, g.star(y), u) && dv(g, x, su) && dv(g, y, su)
            }),
        ],
    ))
}

fn boolean_is_ioml(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_items(
        cx,
        &[item!("(IOM)", IBoolean, |g, x, y| g
            .wedge_q(x, g.imp(y, x))
            == x)],
    ))
}

fn boolean_6way(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_equivalence(
        cx,
        iboolean_anchor(cx.alg),
        &[
            item!("(b)", Ioml, |g, x, y| g.wedge_q(x, y) == od(g, x, y)),
            item!("(c)", Ioml, |g, x, y| g.wedge_q(x, y) == g.wedge_q(y, x)),
            item!("(d)", Ioml, |g, x, y| g.vee_q(x, y) == g.vee_q(y, x)),
            item!("(e)", Ioml, |g, x, y| cm(g, x, y)),
            item!("(f)", Ioml, |g, x, y| dv(g, x, y)),
        ],
    ))
}

fn boolean_meetle(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_equivalence(
        cx,
        iboolean_anchor(cx.alg),
        &[
            item!("(b)", Ioml, |g, x, y| g.le_l(g.wedge_q(x, y), x)),
            item!("(c)", Ioml, |g, x, y| g.le_l(x, g.vee_q(x, y))),
        ],
    ))
}

fn boolean_le(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_equivalence(
        cx,
        iboolean_anchor(cx.alg),
        &[item!("(b)", Ioml, |g, x, y| !g.le(x, y) || g.le_l(x, y))],
    ))
}

fn orders_coincide(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_items(
        cx,
        &[item!("(1)", IBoolean, |g, x, y| {
            let l = g.le_l(x, y);
            g.le(x, y) == l && l == g.le_q(x, y)
        })],
    ))
}

fn center_arrow(cx: &Ctx) -> Result<CheckResult> {
    Ok(run_items(
        cx,
        &[item!("(1)", Ioml, |g, x, y, z| {
            let u = g.imp(x, y);
            !(cm(g, x, z) && cm(g, y, z))
                || g.le_l(u, g.imp(g.imp(u, g.star(z)), g.star(g.imp(u, z))))
        })],
    ))
}

fn center_boolean(cx: &Ctx) -> Result<CheckResult> {
    let g = cx.alg;
    let c = center_raw(g);
    let r = is_iboolean_subalgebra(g, &c)?;
    Ok(r.with_note(format!("center {}", c.format_with(g.elements()))))
}

fn ortho_pair_boolean(cx: &Ctx) -> Result<CheckResult> {
    let g = cx.alg;
    let ioml = g.classify().is_ioml;
    let mut first_bad: Option<(ElementId, ElementId, CheckResult)> = None;
    for x in g.ids() {
        for y in g.ids() {
            if !g.perp(x, y) {
                continue;
            }
            if ioml {
                let (w, _) = orthogonal_pair_boolean_witness(g, x, y)?;
                if w.failed() {
                    let mut wit = named(g, &["x", "y"], &[x, y]);
                    wit.extend(w.witness);
                    return Ok(CheckResult::fail(cx.id, wit).with_note(w.note));
                }
            }
            if first_bad.is_none() {
                let r = is_iboolean_subalgebra(g, &generated_subalgebra(g, &[x, y]))?;
                if r.failed() {
                    first_bad = Some((x, y, r));
                }
            }
        }
    }
    let holds = first_bad.is_none();
    let evidence = match &first_bad {
        Some((x, y, r)) => vec![
            (
                "pair".to_string(),
                format!("({},{})", g.name(*x), g.name(*y)),
            ),
            (
                "not divisible".to_string(),
                format!(
                    "({},{})",
                    r.witness_value("x").unwrap_or("?"),
                    r.witness_value("y").unwrap_or("?")
                ),
            ),
        ],
        None => Vec::new(),
    };
    Ok(equivalence_result(
        cx.id,
        vec![
            ("(a) i-OML".into(), ioml),
            (
                "(b) orthogonal pairs in i-Boolean subalgebras".into(),
                holds,
            ),
        ],
        evidence,
    ))
}

fn sp_center_monoid(cx: &Ctx) -> Result<CheckResult> {
    sp_center_monoid_check(cx.alg)
}

// ---------------------------------------------------------------------------
// Sasaki sets of projections

fn map_name(maps: &[ProjectionMap], i: usize) -> String {
    maps[i].label.clone().unwrap_or_else(|| format!("map#{i}"))
}

fn check_maps(alg: &FiniteAlgebra, maps: &[ProjectionMap]) -> Result<()> {
    match maps.iter().position(|m| m.image.len() != alg.len()) {
        Some(i) => Err(Error::Dimension(format!(
            "{} has the wrong length",
            map_name(maps, i)
        ))),
        None => Ok(()),
    }
}

/// Consequences of the Sasaki set axioms, checked on a supplied set.
pub fn sasaki_set_properties(alg: &FiniteAlgebra, maps: &[ProjectionMap]) -> Result<CheckResult> {
    alg.require_iol("sasaki_set_properties")?;
    check_maps(alg, maps)?;
    const ID: &str = "SS-PROPS";
    let g = alg;
    let one = g.one();
    let fail = |label: &str, roles: Vec<(String, String)>| {
        let mut w = vec![("item".to_string(), label.to_string())];
        w.extend(roles);
        Ok(CheckResult::fail(ID, w))
    };
    for (i, f) in maps.iter().enumerate() {
        for (j, p) in maps.iter().enumerate() {
            let pair = || {
                vec![
                    ("phi".into(), map_name(maps, i)),
                    ("psi".into(), map_name(maps, j)),
                ]
            };
            let below = g.le_l(f.apply(one), p.apply(one));
            if below && (f.compose(p).image != f.image || p.compose(f).image != f.image) {
                return fail("(1)", pair());
            }
            if f.apply(one) == p.apply(one) && f.image != p.image {
                return fail("(2)", pair());
            }
            if below && p.apply(f.apply(one)) != f.apply(one) {
                return fail("(4)", pair());
            }
        }
        if f.compose(f).image != f.image {
            return fail("(3)", vec![("phi".into(), map_name(maps, i))]);
        }
    }
    for (i, f) in maps.iter().enumerate() {
        let top_star = g.star(f.apply(one));
        for x in g.ids() {
            let at = |y: Option<ElementId>| {
                let mut w = vec![
                    ("phi".into(), map_name(maps, i)),
                    ("x".into(), g.name(x).into()),
                ];
                if let Some(y) = y {
                    w.push(("y".into(), g.name(y).into()));
                }
                w
            };
            if (f.apply(x) == g.zero()) != g.le_l(x, top_star) {
                return fail("(5)", at(None));
            }
            for y in g.ids() {
                if g.perp(f.apply(x), f.apply(y)) && !g.perp(x, f.apply(y)) {
                    return fail("(6)", at(Some(y)));
                }
                if g.perp(f.apply(x), y) != g.perp(x, f.apply(y)) {
                    return fail("(7)", at(Some(y)));
                }
            }
        }
    }
    Ok(CheckResult::pass(ID))
}

/// `phi(x->y) = (phi x*)* -> phi y` for every map of a supplied set.
pub fn sasaki_set_arrow(alg: &FiniteAlgebra, maps: &[ProjectionMap]) -> Result<CheckResult> {
    alg.require_iol("sasaki_set_arrow")?;
    check_maps(alg, maps)?;
    let g = alg;
    for (i, f) in maps.iter().enumerate() {
        if let Some(t) = first_violation(g.len(), 2, |t| {
            let (x, y) = (t[0], t[1]);
            f.apply(g.imp(x, y)) == g.imp(g.star(f.apply(g.star(x))), f.apply(y))
        }) {
            let mut w = vec![("phi".into(), map_name(maps, i))];
            w.extend(named(g, &["x", "y"], &t));
            return Ok(CheckResult::fail("SS-ARROW", w));
        }
    }
    Ok(CheckResult::pass("SS-ARROW"))
}

/// Label, arity and predicate of one exhaustive scan.
type Scan<'a> = (&'static str, usize, &'a dyn Fn(&[ElementId]) -> bool);

/// For each element, the map of a full set whose value at 1 is that element.
fn full_lookup(alg: &FiniteAlgebra, maps: &[ProjectionMap]) -> Result<Vec<ProjectionMap>> {
    check_maps(alg, maps)?;
    if !is_full(alg, maps) {
        return Err(Error::Precondition("the set of maps is not full".into()));
    }
    Ok(alg
        .ids()
        .map(|x| {
            maps.iter()
                .find(|m| m.apply(alg.one()) == x)
                .expect("full")
                .clone()
        })
        .collect())
}

/// Consequences of fullness, checked on a supplied full Sasaki set.
pub fn full_set_properties(alg: &FiniteAlgebra, maps: &[ProjectionMap]) -> Result<CheckResult> {
    alg.require_iol("full_set_properties")?;
    let up = full_lookup(alg, maps)?;
    let g = alg;
    const ID: &str = "FULL-PROPS";
    let inner = |x: ElementId, y: ElementId| {
        let m = &up[x.0];
        m.apply(g.star(m.apply(g.star(y))))
    };
    let scans: [Scan; 3] = [
        ("(1)", 3, &|t| {
            let (x, y, z) = (t[0], t[1], t[2]);
            !(g.le_l(z, x) && g.le_l(z, y)) || g.le(z, inner(x, y))
        }),
        ("(2)", 2, &|t| inner(t[0], t[1]) == od(g, t[0], t[1])),
        ("(3)", 1, &|t| up[t[0].0].apply(g.star(t[0])) == g.zero()),
    ];
    for (label, arity, pred) in scans {
        if let Some(t) = first_violation(g.len(), arity, pred) {
            let mut w = vec![("item".to_string(), label.to_string())];
            w.extend(named(g, &["x", "y", "z"][..arity], &t));
            return Ok(CheckResult::fail(ID, w));
        }
    }
    Ok(CheckResult::pass(ID))
}

/// Each map of a full Sasaki set is the Sasaki projection onto its value at 1.
pub fn full_set_formula(alg: &FiniteAlgebra, maps: &[ProjectionMap]) -> Result<CheckResult> {
    alg.require_iol("full_set_formula")?;
    let up = full_lookup(alg, maps)?;
    let g = alg;
    match first_violation(g.len(), 2, |t| {
        up[t[0].0].apply(t[1]) == g.wedge_q(t[1], t[0])
    }) {
        Some(t) => Ok(CheckResult::fail("FULL-FORMULA", named(g, &["x", "y"], &t))),
        None => Ok(CheckResult::pass("FULL-FORMULA")),
    }
}

/// `{phi_0, phi_1}` and, when it is a Sasaki set, the set of all Sasaki
/// projections.
fn sasaki_sets(g: &FiniteAlgebra) -> Result<Vec<(&'static str, Vec<ProjectionMap>)>> {
    let n = g.len();
    let mut sets = vec![("{phi_0, phi_1}", vec![phi(g, g.zero()), phi(g, g.one())])];
    let all: Vec<ProjectionMap> = g.ids().map(|a| phi(g, a)).collect();
    if check_sasaki_set(g, &all)?.passed() {
        sets.push(("SP(X)", all));
    }
    debug_assert!(sets[0].1[1].image == ProjectionMap::identity(n).image);
    Ok(sets)
}

fn over_sets(
    cx: &Ctx,
    f: fn(&FiniteAlgebra, &[ProjectionMap]) -> Result<CheckResult>,
) -> Result<CheckResult> {
    let g = cx.alg;
    let mut checked = Vec::new();
    for (name, maps) in sasaki_sets(g)? {
        let ss = check_sasaki_set(g, &maps)?;
        if !ss.passed() {
            let mut w = vec![("set".to_string(), name.to_string())];
            w.extend(ss.witness);
            return Ok(CheckResult::fail(cx.id, w).with_note(ss.note));
        }
        let r = f(g, &maps)?;
        if r.failed() {
            let mut w = vec![("set".to_string(), name.to_string())];
            w.extend(r.witness);
            return Ok(CheckResult::fail(cx.id, w));
        }
        checked.push(name);
    }
    Ok(CheckResult::pass(cx.id).with_note(format!("checked on {}", checked.join(" and "))))
}

fn ss_props(cx: &Ctx) -> Result<CheckResult> {
    over_sets(cx, sasaki_set_properties)
}

fn ss_arrow(cx: &Ctx) -> Result<CheckResult> {
    over_sets(cx, sasaki_set_arrow)
}

fn over_full_set(
    cx: &Ctx,
    f: fn(&FiniteAlgebra, &[ProjectionMap]) -> Result<CheckResult>,
) -> Result<CheckResult> {
    let g = cx.alg;
    let full = has_full_sasaki_set(g)?;
    if !full.passed() {
        return Ok(CheckResult::skipped(cx.id, "full Sasaki set").with_evidence(full.witness));
    }
    let maps: Vec<ProjectionMap> = g.ids().map(|a| phi(g, a)).collect();
    let r = f(g, &maps)?;
    Ok(r.with_note("checked on SP(X)"))
}

fn full_props(cx: &Ctx) -> Result<CheckResult> {
    over_full_set(cx, full_set_properties)
}

fn full_formula(cx: &Ctx) -> Result<CheckResult> {
    over_full_set(cx, full_set_formula)
}

fn fullset_iff_ioml(cx: &Ctx) -> Result<CheckResult> {
    let g = cx.alg;
    let full = has_full_sasaki_set(g)?;
    let mut evidence = full.witness.clone();
    if !full.note.is_empty() {
        evidence.push(("reason".into(), full.note.clone()));
    }
    Ok(equivalence_result(
        cx.id,
        vec![
            ("(a) i-OML".into(), g.classify().is_ioml),
            ("(b) full Sasaki set".into(), full.passed()),
        ],
        evidence,
    ))
}

// ---------------------------------------------------------------------------
// orthogonality spaces

fn dacey_iff_boolean_pairs(cx: &Ctx) -> Result<CheckResult> {
    let space = associated_orthospace(cx.alg)?;
    let closed = enumerate_orthoclosed(&space, cx.limits)?;
    let cl = closed.to_algebra(&space)?;
    let dacey = cl.classify().is_ioml;
    let mut bad = None;
    'scan: for x in cl.ids() {
        for y in cl.ids() {
            if cl.perp(x, y) {
                let r = is_iboolean_subalgebra(&cl, &generated_subalgebra(&cl, &[x, y]))?;
                if r.failed() {
                    bad = Some((x, y));
                    break 'scan;
                }
            }
        }
    }
    let evidence = bad
        .map(|(x, y)| vec![("pair".into(), format!("({},{})", cl.name(x), cl.name(y)))])
        .unwrap_or_default();
    Ok(equivalence_result(
        cx.id,
        vec![
            ("(a) Dacey".into(), dacey),
            (
                "(b) orthogonal pairs in i-Boolean subalgebras".into(),
                bad.is_none(),
            ),
        ],
        evidence,
    ))
}

/// Non-zero part of the down-set of `x`, as points of the space.
fn h(g: &FiniteAlgebra, space: &OrthoSpace, x: ElementId) -> Subset {
    Subset::from_indices(
        space.len(),
        space
            .origin()
            .iter()
            .enumerate()
            .filter(|(_, &y)| g.le_l(y, x))
            .map(|(p, _)| p),
    )
}

fn downset(cx: &Ctx) -> Result<CheckResult> {
    let g = cx.alg;
    let space = associated_orthospace(g)?;
    let fail = |item: &str, mut roles: Vec<(String, String)>| {
        let mut w = vec![("item".to_string(), item.to_string())];
        w.append(&mut roles);
        Ok(CheckResult::fail(cx.id, w))
    };
    for x in g.ids() {
        let point_perp = Subset::from_indices(
            space.len(),
            space
                .origin()
                .iter()
                .enumerate()
                .filter(|(_, &y)| g.perp(y, x))
                .map(|(p, _)| p),
        );
        let hs = h(g, &space, g.star(x));
        if space.perp(&h(g, &space, x)) != hs || hs != point_perp {
            return fail("(1)", named(g, &["x"], &[x]));
        }
        for y in g.ids() {
            let (hx, hy) = (h(g, &space, x), h(g, &space, y));
            if hx.intersection(&hy) != h(g, &space, od(g, x, y)) {
                return fail("(2)", named(g, &["x", "y"], &[x, y]));
            }
            if h(g, &space, g.imp(x, y)) != space.perp(&hx.intersection(&space.perp(&hy))) {
                return fail("(3)", named(g, &["x", "y"], &[x, y]));
            }
        }
    }
    // (4) and (5) range over non-empty subsets of the carrier
    let n = g.len();
    let full_scan = n <= cx.limits.subset_scan_cap;
    let subsets: Box<dyn Iterator<Item = Vec<ElementId>>> = if full_scan {
        Box::new(
            (1u64..1 << n)
                .map(move |m| (0..n).filter(|i| m >> i & 1 == 1).map(ElementId).collect()),
        )
    } else {
        Box::new((0..n).flat_map(move |i| {
            (i..n).map(move |j| {
                let mut v = vec![ElementId(i)];
                if j != i {
                    v.push(ElementId(j));
                }
                v
            })
        }))
    };
    for ys in subsets {
        let render = || {
            let s = Subset::from_indices(n, ys.iter().map(|y| y.0));
            vec![("Y".to_string(), s.format_with(g.elements()))]
        };
        let meet = g.big_meet(&ys)?;
        let inter = ys
            .iter()
            .fold(space.full(), |acc, &y| acc.intersection(&h(g, &space, y)));
        if inter != h(g, &space, meet) {
            return fail("(4)", render());
        }
        let stars: Vec<ElementId> = ys.iter().map(|&y| g.star(y)).collect();
        let y_perp = Subset::from_indices(
            space.len(),
            space
                .origin()
                .iter()
                .enumerate()
                .filter(|(_, &p)| ys.iter().all(|&y| g.perp(p, y)))
                .map(|(i, _)| i),
        );
        if y_perp != h(g, &space, g.big_meet(&stars)?) {
            return fail("(5)", render());
        }
    }
    let r = CheckResult::pass(cx.id);
    Ok(if full_scan {
        r
    } else {
        r.with_note(format!(
            "(4) and (5) scanned on subsets of size at most 2 (carrier above {})",
            cx.limits.subset_scan_cap
        ))
    })
}

fn cl_iso(cx: &Ctx) -> Result<CheckResult> {
    let g = cx.alg;
    let space = associated_orthospace(g)?;
    let closed = enumerate_orthoclosed(&space, cx.limits)?;
    let images: Vec<Subset> = g.ids().map(|x| h(g, &space, x)).collect();
    let mut sorted = images.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != images.len() {
        let (x, y) = g
            .ids()
            .flat_map(|x| g.ids().map(move |y| (x, y)))
            .find(|&(x, y)| x < y && images[x.0] == images[y.0])
            .expect("collision");
        return Ok(
            CheckResult::fail(cx.id, named(g, &["x", "y"], &[x, y])).with_note("not injective")
        );
    }
    if sorted != closed.members() {
        let missing = closed
            .members()
            .iter()
            .find(|s| !images.contains(s))
            .or_else(|| images.iter().find(|s| closed.index_of(s).is_none()))
            .expect("differs");
        return Ok(
            CheckResult::fail(cx.id, vec![("A".into(), space.format(missing))])
                .with_note("down-sets and closed sets differ"),
        );
    }
    for x in g.ids() {
        if images[g.star(x).0] != space.perp(&images[x.0]) {
            return Ok(
                CheckResult::fail(cx.id, named(g, &["x"], &[x])).with_note("star not preserved")
            );
        }
        for y in g.ids() {
            let arrow = space.perp(&images[x.0].intersection(&space.perp(&images[y.0])));
            if images[g.imp(x, y).0] != arrow {
                return Ok(CheckResult::fail(cx.id, named(g, &["x", "y"], &[x, y]))
                    .with_note("-> not preserved"));
            }
        }
    }
    Ok(CheckResult::pass(cx.id))
}

fn ioml_sasaki(cx: &Ctx) -> Result<CheckResult> {
    let g = cx.alg;
    let space = associated_orthospace(g)?;
    let point = |e: ElementId| space.origin().iter().position(|&o| o == e);
    for x in g.ids() {
        let a = h(g, &space, x);
        let domain = space.perp(&a).complement();
        let fail = |why: &str| {
            Ok(CheckResult::fail(
                cx.id,
                vec![
                    ("A".into(), space.format(&a)),
                    ("x".into(), g.name(x).into()),
                ],
            )
            .with_note(why.to_string()))
        };
        let mut image = vec![usize::MAX; space.len()];
        for p in domain.iter() {
            match point(sp(g, x, space.origin()[p])) {
                Some(q) if a.contains(q) => image[p] = q,
                _ => return fail("phi_x leaves A on the complement of A^perp"),
            }
        }
        if a.iter().any(|p| image[p] != p) {
            return fail("phi_x does not fix A");
        }
        for p in domain.iter() {
            for q in domain.iter() {
                if space.orthogonal(image[p], q) != space.orthogonal(p, image[q]) {
                    return fail("phi_x x perp y differs from x perp phi_x y");
                }
            }
        }
    }
    let search = is_sasaki_space(&space, cx.limits)?;
    if !search.passed() {
        return Ok(CheckResult::fail(cx.id, search.witness).with_note("map search disagrees"));
    }
    Ok(CheckResult::pass(cx.id).with_note("restricted Sasaki projections are Sasaki maps"))
}

fn fullset_sasaki(cx: &Ctx) -> Result<CheckResult> {
    let g = cx.alg;
    let full = has_full_sasaki_set(g)?;
    if !full.passed() {
        return Ok(CheckResult::skipped(cx.id, "full Sasaki set").with_evidence(full.witness));
    }
    let space = associated_orthospace(g)?;
    let r = is_sasaki_space(&space, cx.limits)?;
    Ok(CheckResult {
        note: r.note.clone(),
        ..r
    })
}

fn normal_crit(cx: &Ctx) -> Result<CheckResult> {
    let space = associated_orthospace(cx.alg)?;
    let closed = enumerate_orthoclosed(&space, cx.limits)?;
    let mut by_definition = true;
    let mut by_criterion = true;
    let mut evidence = Vec::new();
    for e in blocks(&space, cx.limits)? {
        for (e1, e2) in two_cell_partitions(&e) {
            let extensions = closed
                .members()
                .iter()
                .filter(|a1| {
                    let a2 = space.perp(a1);
                    !a1.is_empty() && !a2.is_empty() && e1.is_subset(a1) && e2.is_subset(&a2)
                })
                .count();
            let split = || {
                format!(
                    "{} = {} | {}",
                    space.format(&e),
                    space.format(&e1),
                    space.format(&e2)
                )
            };
            if extensions != 1 && by_definition {
                by_definition = false;
                evidence.push((
                    "definition".into(),
                    format!("{}: {extensions} decompositions", split()),
                ));
            }
            if block_decomposition(&space, &e1, &e2).is_none() && by_criterion {
                by_criterion = false;
                evidence.push((
                    "criterion".into(),
                    format!("{}: (E2^perp, E1^perp) is not a decomposition", split()),
                ));
            }
        }
    }
    Ok(equivalence_result(
        cx.id,
        vec![
            ("unique decomposition".into(), by_definition),
            ("(E2^perp, E1^perp) criterion".into(), by_criterion),
        ],
        evidence,
    ))
}

fn block_boolean(cx: &Ctx) -> Result<CheckResult> {
    let space = associated_orthospace(cx.alg)?;
    let normal = is_normal(&space, cx.limits)?;
    if !normal.passed() {
        return Ok(
            CheckResult::skipped(cx.id, "normal orthogonality space").with_evidence(normal.witness)
        );
    }
    let all = blocks(&space, cx.limits)?;
    for e in &all {
        let (r, _) = block_boolean_family(&space, e, cx.limits)?;
        if !r.passed() {
            let mut w = vec![("block".to_string(), space.format(e))];
            w.extend(r.witness);
            return Ok(CheckResult::fail(cx.id, w).with_note(r.note));
        }
    }
    Ok(CheckResult::pass(cx.id).with_note(format!("{} blocks", all.len())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::fixture;
    use std::collections::HashSet;

    #[test]
    fn registry_ids_unique() {
        let ids: HashSet<&str> = REGISTRY.iter().map(|e| e.spec.id).collect();
        assert_eq!(ids.len(), REGISTRY.len());
        assert!(list_checks().len() >= 40);
    }

    #[test]
    fn unknown_check_rejected() {
        let alg = fixture("boolean4").unwrap();
        assert_eq!(
            run_check(&alg, "NOPE", &Limits::default()),
            Err(Error::UnknownCheck("NOPE".into()))
        );
    }

    #[test]
    fn boolean4_all_pass() {
        let alg = fixture("boolean4").unwrap();
        for r in run_all(&alg, &Limits::default()).unwrap() {
            assert!(r.passed(), "{}", r.summary());
        }
    }
}
