//! Finite implication tables and the operations derived from them.

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::check::{first_violation, named, CheckResult, XYZU};
use crate::error::{Error, Result};

/// Index of an element in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ElementId(pub usize);

impl ElementId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A finite algebra `(X, ->, 1)` with a declared bottom `0`.
///
/// Validated on construction: at least two elements, unique names, every
/// entry an element, `x -> 1 = 1`, `1 -> x = x` and `0 -> x = 1`.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    name: Option<String>,
    elements: Vec<String>,
    arrow: Vec<ElementId>,
    one: ElementId,
    zero: ElementId,
    label: OnceLock<ClassLabel>,
}

impl PartialEq for FiniteAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.elements == other.elements
            && self.arrow == other.arrow
            && self.one == other.one
            && self.zero == other.zero
    }
}

impl Eq for FiniteAlgebra {}

impl FiniteAlgebra {
    /// Builds and validates an algebra from a square table; `table[x][y]` is `x -> y`.
    pub fn new(
        name: Option<String>,
        elements: Vec<String>,
        table: Vec<Vec<ElementId>>,
        one: ElementId,
        zero: ElementId,
    ) -> Result<Self> {
        let n = elements.len();
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::Dimension(format!(
                "arrow must be {n}x{n} for {n} elements"
            )));
        }
        Self::from_flat(
            name,
            elements,
            table.into_iter().flatten().collect(),
            one,
            zero,
        )
    }

    /// As [`FiniteAlgebra::new`] with a row-major table.
    pub fn from_flat(
        name: Option<String>,
        elements: Vec<String>,
        arrow: Vec<ElementId>,
        one: ElementId,
        zero: ElementId,
    ) -> Result<Self> {
        let n = elements.len();
        if n < 2 {
            return Err(Error::Trivial);
        }
        for (i, e) in elements.iter().enumerate() {
            if e.is_empty() {
                return Err(Error::Invalid("empty element name".into()));
            }
            if elements[..i].contains(e) {
                return Err(Error::DuplicateElement(e.clone()));
            }
        }
        if arrow.len() != n * n {
            return Err(Error::Dimension(format!(
                "arrow has {} entries, expected {}",
                arrow.len(),
                n * n
            )));
        }
        if let Some(bad) = arrow.iter().position(|v| v.0 >= n) {
            return Err(Error::UnknownElement {
                field: format!("arrow[{}][{}]", bad / n, bad % n),
                name: format!("#{}", arrow[bad].0),
            });
        }
        if one.0 >= n || zero.0 >= n {
            return Err(Error::Invalid("one or zero outside the carrier".into()));
        }
        if one == zero {
            return Err(Error::Trivial);
        }
        let alg = FiniteAlgebra {
            name,
            elements,
            arrow,
            one,
            zero,
            label: OnceLock::new(),
        };
        for x in alg.ids() {
            if alg.imp(alg.one, x) != x {
                return Err(Error::Be3Violation {
                    x: alg.name(x).into(),
                    one: alg.name(alg.one).into(),
                });
            }
        }
        for x in alg.ids() {
            if alg.imp(x, alg.one) != alg.one {
                return Err(Error::Be2Violation {
                    x: alg.name(x).into(),
                    one: alg.name(alg.one).into(),
                });
            }
        }
        for x in alg.ids() {
            if alg.imp(alg.zero, x) != alg.one {
                return Err(Error::NotLowerBound {
                    zero: alg.name(alg.zero).into(),
                    x: alg.name(x).into(),
                });
            }
        }
        Ok(alg)
    }

    pub fn label_name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn ids(&self) -> impl Iterator<Item = ElementId> + Clone {
        (0..self.len()).map(ElementId)
    }

    pub fn one(&self) -> ElementId {
        self.one
    }

    pub fn zero(&self) -> ElementId {
        self.zero
    }

    pub fn name(&self, x: ElementId) -> &str {
        &self.elements[x.0]
    }

    pub fn id(&self, name: &str) -> Option<ElementId> {
        self.elements.iter().position(|e| e == name).map(ElementId)
    }

    /// Row-major table of `x -> y`.
    pub fn table(&self) -> &[ElementId] {
        &self.arrow
    }

    pub fn imp(&self, x: ElementId, y: ElementId) -> ElementId {
        self.arrow[x.0 * self.len() + y.0]
    }

    /// `x* = x -> 0`.
    pub fn star(&self, x: ElementId) -> ElementId {
        self.imp(x, self.zero)
    }

    /// `(x -> y) -> y`.
    pub fn vee_q(&self, x: ElementId, y: ElementId) -> ElementId {
        self.imp(self.imp(x, y), y)
    }

    /// `(x* vee_q y*)*`.
    pub fn wedge_q(&self, x: ElementId, y: ElementId) -> ElementId {
        self.star(self.vee_q(self.star(x), self.star(y)))
    }

    /// `(x -> y*)*`.
    pub fn wedge_p(&self, x: ElementId, y: ElementId) -> ElementId {
        self.star(self.imp(x, self.star(y)))
    }

    /// `x* -> y`.
    pub fn vee_p(&self, x: ElementId, y: ElementId) -> ElementId {
        self.imp(self.star(x), y)
    }

    /// `x -> y = 1`.
    pub fn le(&self, x: ElementId, y: ElementId) -> bool {
        self.imp(x, y) == self.one
    }

    /// `x = x wedge_q y`.
    pub fn le_q(&self, x: ElementId, y: ElementId) -> bool {
        x == self.wedge_q(x, y)
    }

    /// `x = (x -> y*)*`.
    pub fn le_l(&self, x: ElementId, y: ElementId) -> bool {
        x == self.wedge_p(x, y)
    }

    /// Orthogonality `x* = x -> y`.
    pub fn perp(&self, x: ElementId, y: ElementId) -> bool {
        self.star(x) == self.imp(x, y)
    }

    /// Class flags, computed once and cached.
    pub fn classify(&self) -> ClassLabel {
        *self.label.get_or_init(|| classify_uncached(self))
    }

    pub(crate) fn require_iol(&self, what: &str) -> Result<()> {
        if self.classify().is_iol {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{what} requires an i-OL")))
        }
    }

    /// Infimum under `<=_L`, folded with `wedge_p` in element order.
    pub fn big_meet(&self, items: &[ElementId]) -> Result<ElementId> {
        self.require_iol("big_meet")?;
        let acc = items.iter().fold(self.one, |acc, &y| self.wedge_p(acc, y));
        self.confirm_bound(items, acc, true)?;
        Ok(acc)
    }

    /// Supremum under `<=_L`, folded with `vee_p` in element order.
    pub fn big_join(&self, items: &[ElementId]) -> Result<ElementId> {
        self.require_iol("big_join")?;
        let acc = items.iter().fold(self.zero, |acc, &y| self.vee_p(acc, y));
        self.confirm_bound(items, acc, false)?;
        Ok(acc)
    }

    fn confirm_bound(&self, items: &[ElementId], acc: ElementId, lower: bool) -> Result<()> {
        let below = |a: ElementId, b: ElementId| {
            if lower {
                self.le_l(a, b)
            } else {
                self.le_l(b, a)
            }
        };
        if let Some(&y) = items.iter().find(|&&y| !below(acc, y)) {
            return Err(Error::NotLattice(format!(
                "{} is not a bound of {}",
                self.name(acc),
                self.name(y)
            )));
        }
        for z in self.ids() {
            if items.iter().all(|&y| below(z, y)) && !below(z, acc) {
                return Err(Error::NotLattice(format!(
                    "{} is a bound not comparable with {}",
                    self.name(z),
                    self.name(acc)
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.elements.iter().map(|e| e.len()).max().unwrap_or(1);
        write!(f, "{:>w$} |", "->")?;
        for e in &self.elements {
            write!(f, " {e:>w$}")?;
        }
        writeln!(f)?;
        for x in self.ids() {
            write!(f, "{:>w$} |", self.name(x))?;
            for y in self.ids() {
                write!(f, " {:>w$}", self.name(self.imp(x, y)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Class membership flags.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassLabel {
    pub is_be: bool,
    pub is_bounded: bool,
    pub is_involutive: bool,
    pub is_iol: bool,
    pub is_ioml: bool,
    pub is_iboolean: bool,
    pub is_distributive: bool,
}

impl ClassLabel {
    /// Most specific class name.
    pub fn class_name(&self) -> &'static str {
        if self.is_iboolean {
            "i-Boolean"
        } else if self.is_ioml {
            "i-OML"
        } else if self.is_iol {
            "i-OL"
        } else if self.is_involutive {
            "involutive BE"
        } else if self.is_be {
            "BE"
        } else {
            "not BE"
        }
    }
}

fn classify_uncached(alg: &FiniteAlgebra) -> ClassLabel {
    let holds = |id: &str| check_axiom(alg, id).map(|r| r.passed()).unwrap_or(false);
    let is_be = ["BE1", "BE2", "BE3", "BE4"].iter().all(|a| holds(a));
    if !is_be {
        return ClassLabel::default();
    }
    let is_bounded = holds("bounded");
    let is_involutive = is_bounded && holds("DN");
    let is_iol = is_involutive && holds("impl");
    ClassLabel {
        is_be,
        is_bounded,
        is_involutive,
        is_iol,
        is_ioml: is_iol && holds("IOM"),
        is_iboolean: is_iol && holds("@"),
        is_distributive: is_iol && holds("Idis1") && holds("Idis2"),
    }
}

/// Term over variables, `0`, `1` and `->`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Var(usize),
    Zero,
    One,
    Imp(Box<Term>, Box<Term>),
}

impl Term {
    pub fn imp(a: Term, b: Term) -> Term {
        Term::Imp(Box::new(a), Box::new(b))
    }

    pub fn star(a: Term) -> Term {
        Term::imp(a, Term::Zero)
    }

    pub fn vee_q(a: Term, b: Term) -> Term {
        Term::imp(Term::imp(a, b.clone()), b)
    }

    pub fn wedge_q(a: Term, b: Term) -> Term {
        Term::star(Term::vee_q(Term::star(a), Term::star(b)))
    }

    /// Evaluates against a possibly incomplete table; `None` when an entry is missing.
    pub fn eval_with(
        &self,
        vars: &[usize],
        zero: usize,
        one: usize,
        imp: &impl Fn(usize, usize) -> Option<usize>,
    ) -> Option<usize> {
        match self {
            Term::Var(i) => Some(vars[*i]),
            Term::Zero => Some(zero),
            Term::One => Some(one),
            Term::Imp(a, b) => imp(
                a.eval_with(vars, zero, one, imp)?,
                b.eval_with(vars, zero, one, imp)?,
            ),
        }
    }

    pub fn eval(&self, alg: &FiniteAlgebra, vars: &[ElementId]) -> ElementId {
        let vars: Vec<usize> = vars.iter().map(|v| v.0).collect();
        let n = alg.len();
        let v = self.eval_with(&vars, alg.zero.0, alg.one.0, &|x, y| {
            Some(alg.arrow[x * n + y].0)
        });
        ElementId(v.expect("complete table"))
    }
}

/// An equation `lhs = rhs` over the table.
#[derive(Clone, Debug)]
pub struct Axiom {
    pub id: &'static str,
    pub statement: &'static str,
    pub arity: usize,
    pub lhs: Term,
    pub rhs: Term,
}

impl Axiom {
    pub fn holds_at(&self, alg: &FiniteAlgebra, tuple: &[ElementId]) -> bool {
        self.lhs.eval(alg, tuple) == self.rhs.eval(alg, tuple)
    }
}

/// Every axiom accepted by [`check_axiom`].
pub fn axioms() -> &'static [Axiom] {
    static AXIOMS: OnceLock<Vec<Axiom>> = OnceLock::new();
    AXIOMS.get_or_init(build_axioms)
}

fn build_axioms() -> Vec<Axiom> {
    use Term::{One, Zero};
    let (x, y, z) = (Term::Var(0), Term::Var(1), Term::Var(2));
    let i = Term::imp;
    let s = Term::star;
    let ax = |id, statement, arity, lhs, rhs| Axiom {
        id,
        statement,
        arity,
        lhs,
        rhs,
    };
    vec![
        ax("BE1", "x->x = 1", 1, i(x.clone(), x.clone()), One),
        ax("BE2", "x->1 = 1", 1, i(x.clone(), One), One),
        ax("BE3", "1->x = x", 1, i(One, x.clone()), x.clone()),
        ax(
            "BE4",
            "x->(y->z) = y->(x->z)",
            3,
            i(x.clone(), i(y.clone(), z.clone())),
            i(y.clone(), i(x.clone(), z.clone())),
        ),
        ax("bounded", "0->x = 1", 1, i(Zero, x.clone()), One),
        ax("DN", "x** = x", 1, s(s(x.clone())), x.clone()),
        ax(
            "impl",
            "(x->y)->x = x",
            2,
            i(i(x.clone(), y.clone()), x.clone()),
            x.clone(),
        ),
        ax("iG", "x*->x = x", 1, i(s(x.clone()), x.clone()), x.clone()),
        ax(
            "pi",
            "x->(x->y) = x->y",
            2,
            i(x.clone(), i(x.clone(), y.clone())),
            i(x.clone(), y.clone()),
        ),
        ax(
            "Iabs-i",
            "(x->(x->y))->x = x",
            2,
            i(i(x.clone(), i(x.clone(), y.clone())), x.clone()),
            x.clone(),
        ),
        ax(
            "IOM",
            "x meet_q (y->x) = x",
            2,
            Term::wedge_q(x.clone(), i(y.clone(), x.clone())),
            x.clone(),
        ),
        ax(
            "IOM'",
            "x meet_q (x*->y) = x",
            2,
            Term::wedge_q(x.clone(), i(s(x.clone()), y.clone())),
            x.clone(),
        ),
        ax(
            "IOM''",
            "x join_q (x->y)* = x",
            2,
            Term::vee_q(x.clone(), s(i(x.clone(), y.clone()))),
            x.clone(),
        ),
        ax(
            "@",
            "(y*->x)->y = x->y",
            2,
            i(i(s(y.clone()), x.clone()), y.clone()),
            i(x.clone(), y.clone()),
        ),
        ax(
            "Idiv",
            "x->(x->y)* = x->y*",
            2,
            i(x.clone(), s(i(x.clone(), y.clone()))),
            i(x.clone(), s(y.clone())),
        ),
        ax(
            "Idis1",
            "((x*->y)->z*)* = (x->z*)->(y->z*)*",
            3,
            s(i(i(s(x.clone()), y.clone()), s(z.clone()))),
            i(i(x.clone(), s(z.clone())), s(i(y.clone(), s(z.clone())))),
        ),
        ax(
            "Idis2",
            "((x->y*)->z)* = (z*->x)->(z*->y)*",
            3,
            s(i(i(x.clone(), s(y.clone())), z.clone())),
            i(i(s(z.clone()), x.clone()), s(i(s(z.clone()), y))),
        ),
    ]
}

/// Looks up an axiom by id; accepts `involutive` for `DN` and primes as `'` or `′`.
pub fn axiom(id: &str) -> Result<&'static Axiom> {
    let key = match id {
        "involutive" => "DN".to_string(),
        _ => id.replace('′', "'").replace('″', "''"),
    };
    axioms()
        .iter()
        .find(|a| a.id == key)
        .ok_or_else(|| Error::UnknownAxiom(id.to_string()))
}

/// Scans all tuples in lexicographic order and reports the first violation.
pub fn check_axiom(alg: &FiniteAlgebra, id: &str) -> Result<CheckResult> {
    let ax = axiom(id)?;
    Ok(
        match first_violation(alg.len(), ax.arity, |t| ax.holds_at(alg, t)) {
            None => CheckResult::pass(ax.id),
            Some(t) => CheckResult::fail(ax.id, named(alg, &XYZU[..ax.arity], &t)),
        }
        .with_note(ax.statement),
    )
}

/// Free-function form of [`FiniteAlgebra::classify`].
pub fn classify(alg: &FiniteAlgebra) -> ClassLabel {
    alg.classify()
}
