//! Exhaustive search over implication tables up to isomorphism.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{axiom, Axiom, ElementId, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AlgebraClass {
    Iol,
    Ioml,
    IBoolean,
}

impl AlgebraClass {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "").as_str() {
            "iol" => Ok(AlgebraClass::Iol),
            "ioml" => Ok(AlgebraClass::Ioml),
            "iboolean" => Ok(AlgebraClass::IBoolean),
            _ => Err(Error::Invalid(format!("unknown class '{s}'"))),
        }
    }

    fn required(self) -> Vec<&'static str> {
        let mut ids = vec!["DN", "impl"];
        match self {
            AlgebraClass::Iol => {}
            AlgebraClass::Ioml => ids.push("IOM"),
            AlgebraClass::IBoolean => ids.push("@"),
        }
        ids
    }
}

/// Required and forbidden axioms for [`counterexample_search`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchGoal {
    pub require: Vec<String>,
    pub forbid: Vec<String>,
    pub max_size: usize,
}

/// Canonical element names: `0`, then letters, then `1`.
pub fn standard_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i == 0 {
                "0".to_string()
            } else if i == n - 1 {
                "1".to_string()
            } else if i <= 26 {
                ((b'a' + (i - 1) as u8) as char).to_string()
            } else {
                format!("e{i}")
            }
        })
        .collect()
}

/// Colour followed by the sorted (colour, colour, colour) rows of one element.
type Signature = (usize, Vec<(usize, usize, usize)>);

/// Iso-invariant colouring refined until stable. Zero sorts first, one last.
fn refined_colours(alg: &FiniteAlgebra) -> Vec<usize> {
    let n = alg.len();
    let mut colour: Vec<usize> = alg
        .ids()
        .map(|x| {
            if x == alg.zero() {
                0
            } else if x == alg.one() {
                2
            } else {
                1
            }
        })
        .collect();
    loop {
        let sigs: Vec<Signature> = alg
            .ids()
            .map(|x| {
                let mut row: Vec<_> = alg
                    .ids()
                    .map(|y| {
                        (
                            colour[y.0],
                            colour[alg.imp(x, y).0],
                            colour[alg.imp(y, x).0],
                        )
                    })
                    .collect();
                row.sort_unstable();
                (colour[x.0], row)
            })
            .collect();
        let mut distinct: Vec<_> = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| distinct.binary_search(s).expect("present"))
            .collect();
        let before = colour
            .iter()
            .collect::<std::collections::BTreeSet<_>>()
            .len();
        let stable = distinct.len() == before;
        colour = next;
        if stable || distinct.len() == n {
            return colour;
        }
    }
}

/// Relabelling that yields the least row-major table among orders consistent
/// with the refined colouring. Entry `i` is the element placed at position `i`.
pub fn canonical_labeling(alg: &FiniteAlgebra) -> Vec<ElementId> {
    let colour = refined_colours(alg);
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (x, &c) in colour.iter().enumerate() {
        cells.entry(c).or_default().push(x);
    }
    let cells: Vec<Vec<usize>> = cells.into_values().collect();
    let n = alg.len();
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search_orders(alg, &cells, 0, &mut order, &mut used, &mut best);
    best.expect("at least one order")
        .1
        .into_iter()
        .map(ElementId)
        .collect()
}

fn search_orders(
    alg: &FiniteAlgebra,
    cells: &[Vec<usize>],
    cell: usize,
    order: &mut Vec<usize>,
    used: &mut [bool],
    best: &mut Option<(Vec<usize>, Vec<usize>)>,
) {
    if cell == cells.len() {
        let n = order.len();
        let mut pos = vec![0; n];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        let table: Vec<usize> = order
            .iter()
            .flat_map(|&x| {
                let pos = &pos;
                order
                    .iter()
                    .map(move |&y| pos[alg.imp(ElementId(x), ElementId(y)).0])
            })
            .collect();
        if best.as_ref().is_none_or(|(t, _)| table < *t) {
            *best = Some((table, order.clone()));
        }
        return;
    }
    let members = &cells[cell];
    let placed = order.len();
    let filled_in_cell = placed - cells[..cell].iter().map(Vec::len).sum::<usize>();
    if filled_in_cell == members.len() {
        return search_orders(alg, cells, cell + 1, order, used, best);
    }
    for &x in members {
        if !used[x] {
            used[x] = true;
            order.push(x);
            search_orders(alg, cells, cell, order, used, best);
            order.pop();
            used[x] = false;
        }
    }
}

/// Relabels to standard names in canonical order. Isomorphic inputs give equal outputs.
pub fn canonical_form(alg: &FiniteAlgebra) -> FiniteAlgebra {
    let order = canonical_labeling(alg);
    relabel(alg, &order)
}

fn relabel(alg: &FiniteAlgebra, order: &[ElementId]) -> FiniteAlgebra {
    let n = alg.len();
    let mut pos = vec![0; n];
    for (i, x) in order.iter().enumerate() {
        pos[x.0] = i;
    }
    let pos = &pos;
    let flat = order
        .iter()
        .flat_map(|&x| order.iter().map(move |&y| ElementId(pos[alg.imp(x, y).0])))
        .collect();
    FiniteAlgebra::from_flat(
        None,
        standard_names(n),
        flat,
        ElementId(pos[alg.one().0]),
        ElementId(pos[alg.zero().0]),
    )
    .expect("relabelling preserves validity")
}

/// An arrow-preserving bijection `a -> b`, entry `i` being the image of element `i`.
pub fn is_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Option<Vec<ElementId>> {
    if a.len() != b.len() {
        return None;
    }
    let (la, lb) = (canonical_labeling(a), canonical_labeling(b));
    if relabel(a, &la).table() != relabel(b, &lb).table() {
        return None;
    }
    let mut map = vec![ElementId(0); a.len()];
    for (x, y) in la.iter().zip(&lb) {
        map[x.0] = *y;
    }
    Some(map)
}

/// Backtracking table search with `0` first and `1` last.
struct TableSearch<'a> {
    n: usize,
    table: Vec<Option<usize>>,
    free: Vec<(usize, usize)>,
    star: Option<Vec<usize>>,
    checks: Vec<&'a Axiom>,
    budget: u64,
}

impl TableSearch<'_> {
    fn new(n: usize, star: Option<Vec<usize>>, checks: Vec<&'static Axiom>, budget: u64) -> Self {
        let one = n - 1;
        let mut table = vec![None; n * n];
        for x in 0..n {
            table[x] = Some(one);
            table[one * n + x] = Some(x);
            table[x * n + one] = Some(one);
            table[x * n + x] = Some(one);
        }
        if let Some(s) = &star {
            for x in 1..one {
                table[x * n] = Some(s[x]);
            }
        }
        let free = (1..one)
            .flat_map(|x| (0..one).map(move |y| (x, y)))
            .filter(|&(x, y)| table[x * n + y].is_none())
            .collect();
        TableSearch {
            n,
            table,
            free,
            star,
            checks,
            budget,
        }
    }

    fn consistent(&self) -> bool {
        let n = self.n;
        let imp = |x: usize, y: usize| self.table[x * n + y];
        for ax in &self.checks {
            let mut vars = vec![0; ax.arity];
            loop {
                let l = ax.lhs.eval_with(&vars, 0, n - 1, &imp);
                if let Some(l) = l {
                    if let Some(r) = ax.rhs.eval_with(&vars, 0, n - 1, &imp) {
                        if l != r {
                            return false;
                        }
                    }
                }
                let mut k = ax.arity;
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    vars[k] += 1;
                    if vars[k] < n {
                        break;
                    }
                    vars[k] = 0;
                }
                if vars.iter().all(|&v| v == 0) {
                    break;
                }
            }
        }
        true
    }

    fn run(&mut self, visit: &mut dyn FnMut(FiniteAlgebra) -> bool) -> Result<bool> {
        if !self.consistent() {
            return Ok(false);
        }
        self.descend(0, visit)
    }

    /// Returns `true` when the visitor asked to stop.
    fn descend(&mut self, k: usize, visit: &mut dyn FnMut(FiniteAlgebra) -> bool) -> Result<bool> {
        let n = self.n;
        let Some(&(x, y)) = self.free[k..]
            .iter()
            .find(|&&(x, y)| self.table[x * n + y].is_none())
        else {
            let flat = self
                .table
                .iter()
                .map(|v| ElementId(v.expect("complete")))
                .collect();
            let alg = FiniteAlgebra::from_flat(
                None,
                standard_names(n),
                flat,
                ElementId(n - 1),
                ElementId(0),
            )
            .expect("forced rows are valid");
            return Ok(visit(alg));
        };
        let idx = self
            .free
            .iter()
            .position(|&c| c == (x, y))
            .expect("free cell");
        let linked = self.star.as_ref().map(|s| (s[y], s[x]));
        for v in 0..n {
            if self.budget == 0 {
                return Err(Error::ResourceCap("enumeration node budget".into()));
            }
            self.budget -= 1;
            self.table[x * n + y] = Some(v);
            let mut set_linked = None;
            if let Some((lx, ly)) = linked {
                match self.table[lx * n + ly] {
                    Some(w) if w != v => {
                        self.table[x * n + y] = None;
                        continue;
                    }
                    Some(_) => {}
                    None => {
                        self.table[lx * n + ly] = Some(v);
                        set_linked = Some(lx * n + ly);
                    }
                }
            }
            let stop = self.consistent() && self.descend(idx + 1, visit)?;
            if let Some(c) = set_linked {
                self.table[c] = None;
            }
            self.table[x * n + y] = None;
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Involutions of the middle elements up to conjugacy: `k` swapped pairs, the rest fixed.
fn involution_types(n: usize) -> Vec<Vec<usize>> {
    let m = n - 2;
    (0..=m / 2)
        .rev()
        .map(|pairs| {
            let mut s: Vec<usize> = (0..n).collect();
            s[0] = n - 1;
            s[n - 1] = 0;
            for p in 0..pairs {
                let (a, b) = (1 + 2 * p, 2 + 2 * p);
                s[a] = b;
                s[b] = a;
            }
            s
        })
        .collect()
}

/// Visits every table of size `n` satisfying BE, boundedness and `require`.
/// Tables are visited once per involution type, not up to isomorphism.
fn search_tables(
    n: usize,
    require: &[&'static Axiom],
    limits: &Limits,
    visit: &mut dyn FnMut(FiniteAlgebra) -> bool,
) -> Result<()> {
    if n < 2 {
        return Ok(());
    }
    let mut checks: Vec<&'static Axiom> = vec![axiom("BE4")?];
    for ax in require {
        if !checks.iter().any(|c| c.id == ax.id) {
            checks.push(ax);
        }
    }
    let involutive = require.iter().any(|a| a.id == "DN");
    let stars: Vec<Option<Vec<usize>>> = if involutive {
        involution_types(n).into_iter().map(Some).collect()
    } else {
        vec![None]
    };
    let mut budget = limits.node_budget;
    for star in stars {
        let mut search = TableSearch::new(n, star, checks.clone(), budget);
        let stop = search.run(visit)?;
        budget = search.budget;
        if stop {
            break;
        }
    }
    Ok(())
}

/// All algebras of the class with `n` elements, one per isomorphism class,
/// in canonical form and sorted by table.
pub fn enumerate(
    n: usize,
    class: AlgebraClass,
    limit: Option<usize>,
    limits: &Limits,
) -> Result<Vec<FiniteAlgebra>> {
    if n > limits.enumeration_cap {
        return Err(Error::ResourceCap(format!(
            "exhaustive enumeration is capped at {} elements",
            limits.enumeration_cap
        )));
    }
    let require: Vec<&'static Axiom> = class
        .required()
        .iter()
        .map(|id| axiom(id))
        .collect::<Result<_>>()?;
    let mut found: BTreeMap<Vec<ElementId>, FiniteAlgebra> = BTreeMap::new();
    search_tables(n, &require, limits, &mut |alg| {
        let label = alg.classify();
        let member = match class {
            AlgebraClass::Iol => label.is_iol,
            AlgebraClass::Ioml => label.is_ioml,
            AlgebraClass::IBoolean => label.is_iboolean,
        };
        if member {
            let c = canonical_form(&alg);
            found.entry(c.table().to_vec()).or_insert(c);
        }
        false
    })?;
    let mut out: Vec<FiniteAlgebra> = found.into_values().collect();
    if let Some(k) = limit {
        out.truncate(k);
    }
    Ok(out)
}

/// Smallest algebra, by size, satisfying every required axiom and violating
/// every forbidden one. `None` proves absence up to `max_size`.
pub fn counterexample_search(goal: &SearchGoal, limits: &Limits) -> Result<Option<FiniteAlgebra>> {
    if goal.max_size > limits.enumeration_cap {
        return Err(Error::ResourceCap(format!(
            "search is capped at {} elements",
            limits.enumeration_cap
        )));
    }
    let require: Vec<&'static Axiom> = goal
        .require
        .iter()
        .map(|id| axiom(id))
        .collect::<Result<_>>()?;
    let forbid: Vec<&'static Axiom> = goal
        .forbid
        .iter()
        .map(|id| axiom(id))
        .collect::<Result<_>>()?;
    for n in 2..=goal.max_size {
        let mut hit = None;
        search_tables(n, &require, limits, &mut |alg| {
            let ok = ["BE1", "BE2", "BE3", "BE4", "bounded"]
                .iter()
                .chain(
                    goal.require
                        .iter()
                        .map(String::as_str)
                        .collect::<Vec<_>>()
                        .iter(),
                )
                .all(|id| crate::algebra::check_axiom(&alg, id).is_ok_and(|r| r.passed()))
                && forbid
                    .iter()
                    .all(|ax| crate::algebra::check_axiom(&alg, ax.id).is_ok_and(|r| r.failed()));
            if ok {
                hit = Some(canonical_form(&alg));
            }
            ok
        })?;
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::fixture;

    #[test]
    fn small_counts() {
        let l = Limits::default();
        assert_eq!(
            enumerate(2, AlgebraClass::IBoolean, None, &l)
                .unwrap()
                .len(),
            1
        );
        assert_eq!(enumerate(3, AlgebraClass::Iol, None, &l).unwrap().len(), 0);
        assert_eq!(
            enumerate(4, AlgebraClass::IBoolean, None, &l)
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn canonical_form_is_idempotent() {
        for name in crate::io::fixture_names() {
            let a = fixture(name).unwrap();
            let c = canonical_form(&a);
            assert_eq!(canonical_form(&c), c, "{name}");
        }
    }

    #[test]
    fn identical_tables_map_by_identity() {
        let a = fixture("ioml10").unwrap();
        let p = is_isomorphic(&a, &a).unwrap();
        assert!(p.iter().enumerate().all(|(i, x)| x.0 == i));
    }

    #[test]
    fn benzene_and_mo2_differ() {
        assert!(
            is_isomorphic(&fixture("benzene6").unwrap(), &fixture("sasaki6").unwrap()).is_none()
        );
    }

    #[test]
    fn enumeration_cap_enforced() {
        let err = enumerate(10, AlgebraClass::Iol, None, &Limits::default()).unwrap_err();
        assert!(matches!(err, Error::ResourceCap(_)));
    }
}
