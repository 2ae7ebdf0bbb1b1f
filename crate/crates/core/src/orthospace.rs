//! Orthogonality spaces, orthoclosed families and blocks.

use std::collections::HashMap;

use crate::algebra::{ElementId, FiniteAlgebra};
use crate::check::CheckResult;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::subset::Subset;

/// A symmetric, irreflexive relation on named points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthoSpace {
    names: Vec<String>,
    rel: Vec<Subset>,
    origin: Vec<ElementId>,
}

impl OrthoSpace {
    /// Builds a space from orthogonal pairs given by point index.
    pub fn new(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let m = names.len();
        let mut rel = vec![Subset::empty(m); m];
        for &(p, q) in pairs {
            if p >= m || q >= m {
                return Err(Error::Invalid(format!("pair ({p},{q}) outside {m} points")));
            }
            if p == q {
                return Err(Error::Invalid(format!(
                    "{} is orthogonal to itself",
                    names[p]
                )));
            }
            rel[p].insert(q);
            rel[q].insert(p);
        }
        Ok(OrthoSpace {
            names,
            rel,
            origin: Vec::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn point(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Algebra element behind each point, when built from an algebra.
    pub fn origin(&self) -> &[ElementId] {
        &self.origin
    }

    pub fn orthogonal(&self, p: usize, q: usize) -> bool {
        self.rel[p].contains(q)
    }

    /// Points orthogonal to `p`.
    pub fn neighbours(&self, p: usize) -> &Subset {
        &self.rel[p]
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn subset(&self, names: &[&str]) -> Result<Subset> {
        let mut s = Subset::empty(self.len());
        for n in names {
            s.insert(self.point(n).ok_or_else(|| Error::UnknownElement {
                field: "point".into(),
                name: n.to_string(),
            })?);
        }
        Ok(s)
    }

    pub fn format(&self, s: &Subset) -> String {
        s.format_with(&self.names)
    }

    /// Points orthogonal to every point of `a`; the whole space for `a` empty.
    pub fn perp(&self, a: &Subset) -> Subset {
        a.iter()
            .fold(self.full(), |acc, p| acc.intersection(&self.rel[p]))
    }

    pub fn orthoclosure(&self, a: &Subset) -> Subset {
        self.perp(&self.perp(a))
    }

    pub fn is_orthoclosed(&self, a: &Subset) -> bool {
        self.orthoclosure(a) == *a
    }

    /// Restricts a subset of the source algebra to the points of this space.
    pub fn restrict(&self, elements: &Subset) -> Subset {
        Subset::from_indices(
            self.len(),
            self.origin
                .iter()
                .enumerate()
                .filter(|(_, e)| elements.contains(e.0))
                .map(|(p, _)| p),
        )
    }
}

/// The space of non-zero elements under `x* = x -> y`.
pub fn associated_orthospace(alg: &FiniteAlgebra) -> Result<OrthoSpace> {
    alg.require_iol("associated_orthospace")?;
    let origin: Vec<ElementId> = alg.ids().filter(|&x| x != alg.zero()).collect();
    let names = origin.iter().map(|&x| alg.name(x).to_string()).collect();
    let mut pairs = Vec::new();
    for (p, &x) in origin.iter().enumerate() {
        for (q, &y) in origin.iter().enumerate().skip(p + 1) {
            if alg.perp(x, y) {
                pairs.push((p, q));
            }
        }
    }
    let mut space = OrthoSpace::new(names, &pairs)?;
    space.origin = origin;
    Ok(space)
}

/// Orthoclosed subsets, sorted by cardinality then mask.
#[derive(Clone, Debug)]
pub struct ClosedFamily {
    members: Vec<Subset>,
    index: HashMap<Subset, usize>,
}

impl ClosedFamily {
    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, s: &Subset) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// The algebra on the family with `A -> B = (A ∩ B^⊥)^⊥`.
    pub fn to_algebra(&self, space: &OrthoSpace) -> Result<FiniteAlgebra> {
        let names = self.members.iter().map(|s| space.format(s)).collect();
        let mut flat = Vec::with_capacity(self.len() * self.len());
        for a in &self.members {
            for b in &self.members {
                let c = space.perp(&a.intersection(&space.perp(b)));
                let i = self.index_of(&c).ok_or_else(|| {
                    Error::Invalid(format!("{} is not orthoclosed", space.format(&c)))
                })?;
                flat.push(ElementId(i));
            }
        }
        let zero = ElementId(
            self.index_of(&Subset::empty(space.len()))
                .expect("empty set closed"),
        );
        let one = ElementId(self.index_of(&space.full()).expect("full set closed"));
        FiniteAlgebra::from_flat(None, names, flat, one, zero)
    }
}

/// All orthoclosed subsets: intersections of point perps, plus the whole space.
pub fn enumerate_orthoclosed(space: &OrthoSpace, limits: &Limits) -> Result<ClosedFamily> {
    let mut seen: HashMap<Subset, ()> = HashMap::new();
    let mut members = vec![space.full()];
    seen.insert(space.full(), ());
    for p in 0..space.len() {
        let mut added = Vec::new();
        for m in &members {
            let c = m.intersection(space.neighbours(p));
            if !seen.contains_key(&c) {
                seen.insert(c.clone(), ());
                added.push(c);
            }
        }
        members.extend(added);
        if members.len() > limits.family_cap {
            return Err(Error::ResourceCap(format!(
                "closed family exceeds {} members",
                limits.family_cap
            )));
        }
    }
    members.sort();
    let index = members
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    Ok(ClosedFamily { members, index })
}

pub fn cl_algebra(space: &OrthoSpace, limits: &Limits) -> Result<FiniteAlgebra> {
    enumerate_orthoclosed(space, limits)?.to_algebra(space)
}

/// Dacey when the closed family is an i-OML; a failure carries the IOM witness.
pub fn is_dacey(space: &OrthoSpace, limits: &Limits) -> Result<CheckResult> {
    let cl = cl_algebra(space, limits)?;
    let iom = crate::algebra::check_axiom(&cl, "IOM")?;
    Ok(if cl.classify().is_ioml {
        CheckResult::pass("DACEY")
    } else if iom.failed() {
        let x = cl.id(iom.witness_value("x").unwrap()).unwrap();
        let y = cl.id(iom.witness_value("y").unwrap()).unwrap();
        let got = cl.wedge_q(x, cl.imp(y, x));
        let mut w = iom.witness.clone();
        w.push(("x meet_q (y->x)".into(), cl.name(got).into()));
        CheckResult::fail("DACEY", w).with_note("IOM fails in the closed family")
    } else {
        CheckResult::fail(
            "DACEY",
            vec![("class".into(), cl.classify().class_name().into())],
        )
    })
}

/// Maximal sets of pairwise orthogonal points, sorted.
pub fn blocks(space: &OrthoSpace, limits: &Limits) -> Result<Vec<Subset>> {
    let mut out = Vec::new();
    let mut budget = limits.node_budget;
    bron_kerbosch(
        space,
        Subset::empty(space.len()),
        space.full(),
        Subset::empty(space.len()),
        &mut out,
        &mut budget,
        limits.block_size_cap,
    )?;
    out.sort();
    Ok(out)
}

fn bron_kerbosch(
    space: &OrthoSpace,
    r: Subset,
    mut p: Subset,
    mut x: Subset,
    out: &mut Vec<Subset>,
    budget: &mut u64,
    size_cap: usize,
) -> Result<()> {
    if *budget == 0 {
        return Err(Error::ResourceCap("block enumeration node budget".into()));
    }
    *budget -= 1;
    if p.is_empty() {
        if x.is_empty() {
            if r.count() > size_cap {
                return Err(Error::ResourceCap(format!("block larger than {size_cap}")));
            }
            out.push(r);
        }
        return Ok(());
    }
    let pivot = p
        .union(&x)
        .iter()
        .max_by_key(|&u| p.intersection(space.neighbours(u)).count())
        .expect("p non-empty");
    for v in p
        .difference(space.neighbours(pivot))
        .iter()
        .collect::<Vec<_>>()
    {
        let mut r2 = r.clone();
        r2.insert(v);
        bron_kerbosch(
            space,
            r2,
            p.intersection(space.neighbours(v)),
            x.intersection(space.neighbours(v)),
            out,
            budget,
            size_cap,
        )?;
        p.remove(v);
        x.insert(v);
    }
    Ok(())
}

/// The pair `(E2^⊥, E1^⊥)` when it is a decomposition, i.e. each is the
/// other's perp and both are non-empty.
pub fn block_decomposition(
    space: &OrthoSpace,
    e1: &Subset,
    e2: &Subset,
) -> Option<(Subset, Subset)> {
    let a1 = space.perp(e2);
    let a2 = space.perp(e1);
    let ok = !a1.is_empty() && !a2.is_empty() && a1 == space.perp(&a2) && a2 == space.perp(&a1);
    ok.then_some((a1, a2))
}

/// Splits of a block into two non-empty cells, first cell containing the
/// block's least point.
pub fn two_cell_partitions(e: &Subset) -> Vec<(Subset, Subset)> {
    let pts: Vec<usize> = e.iter().collect();
    if pts.len() < 2 {
        return Vec::new();
    }
    let rest = pts.len() - 1;
    (0..(1u64 << rest) - 1)
        .map(|mask| {
            let mut e1 = Subset::singleton(e.universe(), pts[0]);
            for (k, &p) in pts[1..].iter().enumerate() {
                if mask >> k & 1 == 1 {
                    e1.insert(p);
                }
            }
            let e2 = e.difference(&e1);
            (e1, e2)
        })
        .collect()
}

/// Normal when every two-cell split of every block yields a decomposition.
pub fn is_normal(space: &OrthoSpace, limits: &Limits) -> Result<CheckResult> {
    for e in blocks(space, limits)? {
        for (e1, e2) in two_cell_partitions(&e) {
            if block_decomposition(space, &e1, &e2).is_none() {
                let (a1, a2) = (space.perp(&e2), space.perp(&e1));
                return Ok(CheckResult::fail(
                    "NORMAL",
                    vec![
                        ("block".into(), space.format(&e)),
                        ("E1".into(), space.format(&e1)),
                        ("E2".into(), space.format(&e2)),
                        ("E2^perp".into(), space.format(&a1)),
                        ("E1^perp".into(), space.format(&a2)),
                    ],
                ));
            }
        }
    }
    Ok(CheckResult::pass("NORMAL").with_note("two-cell splits of every block"))
}

/// The family `{A^⊥⊥ : A ⊆ E}` for a block `E` of a normal space, checked to be
/// an i-Boolean subalgebra of the closed family.
pub fn block_boolean_family(
    space: &OrthoSpace,
    e: &Subset,
    limits: &Limits,
) -> Result<(CheckResult, Vec<Subset>)> {
    if !blocks(space, limits)?.contains(e) {
        return Err(Error::Precondition(format!(
            "{} is not a block",
            space.format(e)
        )));
    }
    if !is_normal(space, limits)?.passed() {
        return Err(Error::Precondition("space is not normal".into()));
    }
    let pts: Vec<usize> = e.iter().collect();
    if pts.len() > limits.block_size_cap {
        return Err(Error::ResourceCap(format!(
            "block larger than {}",
            limits.block_size_cap
        )));
    }
    let mut family: Vec<Subset> = (0..1u64 << pts.len())
        .map(|mask| {
            let a = Subset::from_indices(
                space.len(),
                pts.iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &p)| p),
            );
            space.orthoclosure(&a)
        })
        .collect();
    family.sort();
    family.dedup();
    let closed = enumerate_orthoclosed(space, limits)?;
    let cl = closed.to_algebra(space)?;
    let members = Subset::from_indices(
        cl.len(),
        family
            .iter()
            .map(|s| closed.index_of(s).expect("orthoclosed")),
    );
    let result = crate::sasaki::is_iboolean_subalgebra(&cl, &members)?;
    let result = CheckResult {
        check_id: "BLOCK-BOOLEAN".into(),
        ..result
    };
    Ok((result, family))
}

/// `{y : y <=_L x}` over the whole carrier.
pub fn down_set(alg: &FiniteAlgebra, x: ElementId) -> Result<Subset> {
    alg.require_iol("down_set")?;
    Ok(Subset::from_indices(
        alg.len(),
        alg.ids().filter(|&y| alg.le_l(y, x)).map(|y| y.0),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::fixture;

    fn benzene_space() -> OrthoSpace {
        associated_orthospace(&fixture("benzene6").unwrap()).unwrap()
    }

    #[test]
    fn benzene_perps() {
        let s = benzene_space();
        let got: Vec<String> = ["a", "b", "c", "d", "1"]
            .iter()
            .map(|p| s.format(&s.perp(&s.subset(&[p]).unwrap())))
            .collect();
        assert_eq!(got, ["{c,d}", "{d}", "{a}", "{a,b}", "{}"]);
        assert_eq!(s.format(&s.perp(&s.subset(&["a", "b"]).unwrap())), "{d}");
    }

    #[test]
    fn closure_examples() {
        let s = benzene_space();
        let close = |names: &[&str]| s.format(&s.orthoclosure(&s.subset(names).unwrap()));
        assert_eq!(close(&["a"]), "{a}");
        assert_eq!(close(&["c"]), "{c,d}");
        assert_eq!(close(&["d"]), "{d}");
        assert_eq!(close(&[]), "{}");
    }

    #[test]
    fn perp_of_empty_is_everything() {
        let s = benzene_space();
        assert_eq!(s.perp(&Subset::empty(s.len())), s.full());
    }

    #[test]
    fn discrete_space_blocks_are_singletons() {
        let s = OrthoSpace::new(vec!["p".into(), "q".into(), "r".into()], &[]).unwrap();
        let b = blocks(&s, &Limits::default()).unwrap();
        assert_eq!(b.len(), 3);
        assert!(b.iter().all(|x| x.count() == 1));
        assert!(is_normal(&s, &Limits::default()).unwrap().passed());
    }

    #[test]
    fn complete_space_is_one_block() {
        let pairs: Vec<(usize, usize)> = (0..4)
            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
            .collect();
        let s = OrthoSpace::new((0..4).map(|i| format!("p{i}")).collect(), &pairs).unwrap();
        assert_eq!(blocks(&s, &Limits::default()).unwrap(), vec![s.full()]);
    }

    #[test]
    fn reflexive_pair_rejected() {
        assert!(OrthoSpace::new(vec!["p".into()], &[(0, 0)]).is_err());
    }

    #[test]
    fn down_sets() {
        let b = fixture("benzene6").unwrap();
        let s = down_set(&b, b.id("b").unwrap()).unwrap();
        assert_eq!(s.format_with(b.elements()), "{0,a,b}");
        let sa = fixture("sasaki6").unwrap();
        let s = down_set(&sa, sa.id("a").unwrap()).unwrap();
        assert_eq!(s.format_with(sa.elements()), "{0,a}");
        let top = down_set(&b, b.one()).unwrap();
        assert_eq!(top.count(), b.len());
    }
}
