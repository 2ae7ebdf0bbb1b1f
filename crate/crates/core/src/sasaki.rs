//! Sasaki projections, commutation, centers, Sasaki sets and Sasaki maps.

use serde::Serialize;

use crate::algebra::{ElementId, FiniteAlgebra};
use crate::check::{first_violation, named, CheckResult, XYZU};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::orthospace::{enumerate_orthoclosed, OrthoSpace};
use crate::subset::Subset;

/// A total self-map of the carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ProjectionMap {
    pub image: Vec<ElementId>,
    pub label: Option<String>,
}

impl ProjectionMap {
    pub fn identity(n: usize) -> Self {
        ProjectionMap {
            image: (0..n).map(ElementId).collect(),
            label: Some("id".into()),
        }
    }

    pub fn constant(n: usize, v: ElementId) -> Self {
        ProjectionMap {
            image: vec![v; n],
            label: None,
        }
    }

    pub fn apply(&self, x: ElementId) -> ElementId {
        self.image[x.0]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ProjectionMap) -> ProjectionMap {
        ProjectionMap {
            image: other.image.iter().map(|&x| self.apply(x)).collect(),
            label: None,
        }
    }

    pub fn name(&self) -> String {
        self.label.clone().unwrap_or_else(|| "map".into())
    }

    pub fn render(&self, alg: &FiniteAlgebra) -> String {
        self.image
            .iter()
            .map(|&x| alg.name(x))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub(crate) fn phi(alg: &FiniteAlgebra, a: ElementId) -> ProjectionMap {
    ProjectionMap {
        image: alg.ids().map(|x| alg.wedge_q(x, a)).collect(),
        label: Some(format!("phi_{}", alg.name(a))),
    }
}

/// `x ↦ x meet_q a`.
pub fn sasaki_projection(alg: &FiniteAlgebra, a: ElementId) -> Result<ProjectionMap> {
    alg.require_iol("sasaki_projection")?;
    Ok(phi(alg, a))
}

/// `x ↦ x join_q a*`.
pub fn dual_projection(alg: &FiniteAlgebra, a: ElementId) -> Result<ProjectionMap> {
    alg.require_iol("dual_projection")?;
    Ok(ProjectionMap {
        image: alg.ids().map(|x| alg.vee_q(x, alg.star(a))).collect(),
        label: Some(format!("dual_{}", alg.name(a))),
    })
}

/// `x C y` iff `y meet_q x = (x -> y*)*`. Not symmetric outside i-OMLs.
pub(crate) fn commutes_raw(alg: &FiniteAlgebra, x: ElementId, y: ElementId) -> bool {
    alg.wedge_q(y, x) == alg.wedge_p(x, y)
}

/// `x D y` iff `x -> (x -> y)* = x -> y*`.
pub(crate) fn divides_raw(alg: &FiniteAlgebra, x: ElementId, y: ElementId) -> bool {
    alg.imp(x, alg.star(alg.imp(x, y))) == alg.imp(x, alg.star(y))
}

pub fn commutes(alg: &FiniteAlgebra, x: ElementId, y: ElementId) -> Result<bool> {
    alg.require_iol("commutes")?;
    Ok(commutes_raw(alg, x, y))
}

pub fn divides(alg: &FiniteAlgebra, x: ElementId, y: ElementId) -> Result<bool> {
    alg.require_iol("divides")?;
    Ok(divides_raw(alg, x, y))
}

/// Elements commuting with every element, with a flag when the algebra is
/// not an i-OML (the center is then not guaranteed to be i-Boolean).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Center {
    pub members: Subset,
    pub is_ioml: bool,
}

pub(crate) fn center_raw(alg: &FiniteAlgebra) -> Subset {
    Subset::from_indices(
        alg.len(),
        alg.ids()
            .filter(|&x| alg.ids().all(|y| commutes_raw(alg, x, y)))
            .map(|x| x.0),
    )
}

pub fn center(alg: &FiniteAlgebra) -> Result<Center> {
    alg.require_iol("center")?;
    Ok(Center {
        members: center_raw(alg),
        is_ioml: alg.classify().is_ioml,
    })
}

/// Contains 0 and 1 and is closed under `->`.
pub fn is_subalgebra(alg: &FiniteAlgebra, s: &Subset) -> bool {
    s.contains(alg.zero().0)
        && s.contains(alg.one().0)
        && s.iter().all(|x| {
            s.iter()
                .all(|y| s.contains(alg.imp(ElementId(x), ElementId(y)).0))
        })
}

/// Least subalgebra containing `generators`.
pub fn generated_subalgebra(alg: &FiniteAlgebra, generators: &[ElementId]) -> Subset {
    let mut s = Subset::from_indices(
        alg.len(),
        generators
            .iter()
            .map(|g| g.0)
            .chain([alg.zero().0, alg.one().0]),
    );
    loop {
        let mut next = s.clone();
        for x in s.iter() {
            for y in s.iter() {
                next.insert(alg.imp(ElementId(x), ElementId(y)).0);
            }
        }
        if next == s {
            return s;
        }
        s = next;
    }
}

/// Subalgebra whose elements pairwise satisfy `x D y`.
pub fn is_iboolean_subalgebra(alg: &FiniteAlgebra, s: &Subset) -> Result<CheckResult> {
    alg.require_iol("is_iboolean_subalgebra")?;
    const ID: &str = "IBOOLEAN-SUBALGEBRA";
    for x in s.iter().map(ElementId) {
        for y in s.iter().map(ElementId) {
            let z = alg.imp(x, y);
            if !s.contains(z.0) {
                return Ok(CheckResult::fail(
                    ID,
                    vec![
                        ("x".into(), alg.name(x).into()),
                        ("y".into(), alg.name(y).into()),
                        ("x->y".into(), alg.name(z).into()),
                    ],
                )
                .with_note("not closed under ->"));
            }
        }
    }
    if !s.contains(alg.zero().0) || !s.contains(alg.one().0) {
        return Ok(CheckResult::fail(
            ID,
            vec![("missing".into(), "0 or 1".into())],
        ));
    }
    for x in s.iter().map(ElementId) {
        for y in s.iter().map(ElementId) {
            if !divides_raw(alg, x, y) {
                return Ok(CheckResult::fail(
                    ID,
                    vec![
                        ("x".into(), alg.name(x).into()),
                        ("y".into(), alg.name(y).into()),
                    ],
                )
                .with_note("x D y fails"));
            }
        }
    }
    Ok(CheckResult::pass(ID))
}

/// Terms of the orthogonal-pair subalgebra, in order:
/// `0, x, y, x*->y, x*, y*, (x*->y)*, 1`.
pub fn orthogonal_pair_terms(alg: &FiniteAlgebra, x: ElementId, y: ElementId) -> [ElementId; 8] {
    let u = alg.imp(alg.star(x), y);
    [
        alg.zero(),
        x,
        y,
        u,
        alg.star(x),
        alg.star(y),
        alg.star(u),
        alg.one(),
    ]
}

/// Arrow table over [`orthogonal_pair_terms`], by term position.
pub const ORTHOGONAL_PAIR_TABLE: [[usize; 8]; 8] = [
    [7, 7, 7, 7, 7, 7, 7, 7],
    [4, 7, 4, 7, 4, 7, 4, 7],
    [5, 5, 7, 7, 7, 5, 5, 7],
    [6, 5, 4, 7, 4, 5, 6, 7],
    [1, 1, 3, 3, 7, 5, 5, 7],
    [2, 3, 2, 3, 4, 7, 4, 7],
    [3, 3, 3, 3, 7, 7, 7, 7],
    [0, 1, 2, 3, 4, 5, 6, 7],
];

/// For orthogonal `x, y`: the eight-term set is an i-Boolean subalgebra whose
/// table follows [`ORTHOGONAL_PAIR_TABLE`].
pub fn orthogonal_pair_boolean_witness(
    alg: &FiniteAlgebra,
    x: ElementId,
    y: ElementId,
) -> Result<(CheckResult, Subset)> {
    alg.require_iol("orthogonal_pair_boolean_witness")?;
    if !alg.perp(x, y) {
        return Err(Error::Precondition(format!(
            "{} and {} are not orthogonal",
            alg.name(x),
            alg.name(y)
        )));
    }
    let terms = orthogonal_pair_terms(alg, x, y);
    let set = Subset::from_indices(alg.len(), terms.iter().map(|t| t.0));
    let mut result = is_iboolean_subalgebra(alg, &set)?;
    result.check_id = "ORTHO-PAIR-BOOLEAN".into();
    if result.passed() {
        const TERMS: [&str; 8] = ["0", "x", "y", "x*->y", "x*", "y*", "(x*->y)*", "1"];
        'rows: for i in 0..8 {
            for j in 0..8 {
                if alg.imp(terms[i], terms[j]) != terms[ORTHOGONAL_PAIR_TABLE[i][j]] {
                    result = CheckResult::fail(
                        "ORTHO-PAIR-BOOLEAN",
                        vec![
                            ("row".into(), TERMS[i].into()),
                            ("column".into(), TERMS[j].into()),
                        ],
                    )
                    .with_note("table differs from the eight-term pattern");
                    break 'rows;
                }
            }
        }
    }
    Ok((result, set))
}

fn map_role(maps: &[ProjectionMap], i: usize) -> String {
    maps[i].label.clone().unwrap_or_else(|| format!("map#{i}"))
}

/// Checks monotonicity, absorption and the orthogonality bound on a set of maps.
pub fn check_sasaki_set(alg: &FiniteAlgebra, maps: &[ProjectionMap]) -> Result<CheckResult> {
    alg.require_iol("check_sasaki_set")?;
    const ID: &str = "SASAKI-SET";
    if let Some(bad) = maps.iter().position(|m| m.image.len() != alg.len()) {
        return Err(Error::Dimension(format!(
            "{} has the wrong length",
            map_role(maps, bad)
        )));
    }
    for (i, m) in maps.iter().enumerate() {
        if let Some(t) = first_violation(alg.len(), 2, |t| {
            !alg.le_l(t[0], t[1]) || alg.le_l(m.apply(t[0]), m.apply(t[1]))
        }) {
            let mut w = vec![("map".into(), map_role(maps, i))];
            w.extend(named(alg, &XYZU[..2], &t));
            return Ok(CheckResult::fail(ID, w).with_note("SS1: map is not <=_L-monotone"));
        }
    }
    let one = alg.one();
    for (i, m) in maps.iter().enumerate() {
        for (j, p) in maps.iter().enumerate() {
            if alg.le_l(m.apply(one), p.apply(one)) {
                let c = m.compose(p);
                if let Some(x) = alg.ids().find(|&x| c.apply(x) != m.apply(x)) {
                    return Ok(CheckResult::fail(
                        ID,
                        vec![
                            ("phi".into(), map_role(maps, i)),
                            ("psi".into(), map_role(maps, j)),
                            ("x".into(), alg.name(x).into()),
                        ],
                    )
                    .with_note("SS2: phi(1) <=_L psi(1) but phi psi differs from phi"));
                }
            }
        }
    }
    for (i, m) in maps.iter().enumerate() {
        if let Some(x) = alg
            .ids()
            .find(|&x| !alg.le_l(m.apply(alg.star(m.apply(x))), alg.star(x)))
        {
            return Ok(CheckResult::fail(
                ID,
                vec![
                    ("map".into(), map_role(maps, i)),
                    ("x".into(), alg.name(x).into()),
                ],
            )
            .with_note("SS3: phi (phi x)* is not <=_L x*"));
        }
    }
    Ok(CheckResult::pass(ID))
}

/// Every element is the value at 1 of some map.
pub fn is_full(alg: &FiniteAlgebra, maps: &[ProjectionMap]) -> bool {
    alg.ids()
        .all(|a| maps.iter().any(|m| m.apply(alg.one()) == a))
}

/// The set of all Sasaki projections.
pub fn canonical_candidate(alg: &FiniteAlgebra) -> Result<Vec<ProjectionMap>> {
    alg.require_iol("canonical_candidate")?;
    Ok(alg.ids().map(|a| phi(alg, a)).collect())
}

/// A full Sasaki set exists iff the Sasaki projections form one.
pub fn has_full_sasaki_set(alg: &FiniteAlgebra) -> Result<CheckResult> {
    let maps = canonical_candidate(alg)?;
    let r = check_sasaki_set(alg, &maps)?;
    Ok(CheckResult {
        check_id: "FULL-SASAKI-SET".into(),
        ..r
    })
}

/// Partial assignment of points of a space, keyed by point index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialMap {
    pub domain: Subset,
    pub assignment: Vec<Option<usize>>,
}

impl PartialMap {
    pub fn get(&self, p: usize) -> Option<usize> {
        self.assignment.get(p).copied().flatten()
    }

    pub fn render(&self, space: &OrthoSpace) -> String {
        self.domain
            .iter()
            .map(|p| {
                format!(
                    "{}->{}",
                    space.names()[p],
                    space.names()[self.get(p).unwrap()]
                )
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Backtracking search for a map from the complement of `A^⊥` onto `A` that
/// fixes `A` and satisfies `phi x ⊥ y iff x ⊥ phi y`.
pub fn sasaki_map_search(
    space: &OrthoSpace,
    a: &Subset,
    limits: &Limits,
) -> Result<Option<PartialMap>> {
    if !space.is_orthoclosed(a) {
        return Err(Error::Precondition(format!(
            "{} is not orthoclosed",
            space.format(a)
        )));
    }
    let perp_a = space.perp(a);
    let domain = perp_a.complement();
    let mut assignment = vec![None; space.len()];
    for p in a.iter() {
        assignment[p] = Some(p);
    }
    let free: Vec<usize> = domain.difference(a).iter().collect();
    let targets: Vec<usize> = a.iter().collect();
    let mut budget = limits.node_budget;
    let fixed: Vec<usize> = a.iter().collect();
    if !fixed
        .iter()
        .all(|&p| consistent(space, &assignment, &fixed, p))
    {
        return Ok(None);
    }
    let mut assigned = fixed;
    let found = extend(
        space,
        &mut assignment,
        &mut assigned,
        &free,
        &targets,
        &mut budget,
    )?;
    Ok(found.then_some(PartialMap { domain, assignment }))
}

fn consistent(space: &OrthoSpace, asg: &[Option<usize>], assigned: &[usize], p: usize) -> bool {
    let fp = asg[p].expect("assigned");
    assigned.iter().all(|&q| {
        let fq = asg[q].expect("assigned");
        space.orthogonal(fp, q) == space.orthogonal(p, fq)
            && space.orthogonal(fq, p) == space.orthogonal(q, fp)
    })
}

fn extend(
    space: &OrthoSpace,
    asg: &mut Vec<Option<usize>>,
    assigned: &mut Vec<usize>,
    free: &[usize],
    targets: &[usize],
    budget: &mut u64,
) -> Result<bool> {
    let Some((&p, rest)) = free.split_first() else {
        return Ok(true);
    };
    for &t in targets {
        if *budget == 0 {
            return Err(Error::ResourceCap("Sasaki map search node budget".into()));
        }
        *budget -= 1;
        asg[p] = Some(t);
        assigned.push(p);
        if consistent(space, asg, assigned, p)
            && extend(space, asg, assigned, rest, targets, budget)?
        {
            return Ok(true);
        }
        assigned.pop();
        asg[p] = None;
    }
    Ok(false)
}

/// A Sasaki map for every orthoclosed set, or `None` where none exists.
pub fn sasaki_maps(
    space: &OrthoSpace,
    limits: &Limits,
) -> Result<Vec<(Subset, Option<PartialMap>)>> {
    enumerate_orthoclosed(space, limits)?
        .members()
        .iter()
        .map(|a| Ok((a.clone(), sasaki_map_search(space, a, limits)?)))
        .collect()
}

pub fn is_sasaki_space(space: &OrthoSpace, limits: &Limits) -> Result<CheckResult> {
    for (a, map) in sasaki_maps(space, limits)? {
        if map.is_none() {
            return Ok(
                CheckResult::fail("SASAKI-SPACE", vec![("A".into(), space.format(&a))])
                    .with_note("no Sasaki map to A"),
            );
        }
    }
    Ok(CheckResult::pass("SASAKI-SPACE"))
}

/// On an i-OML, central elements give commuting projections whose composites
/// are again projections, with 0 and 1 giving the constant-0 and identity maps.
pub fn sp_center_monoid_check(alg: &FiniteAlgebra) -> Result<CheckResult> {
    alg.require_iol("sp_center_monoid_check")?;
    const ID: &str = "SP-CENTER-MONOID";
    if !alg.classify().is_ioml {
        return Ok(CheckResult::skipped(ID, "i-OML"));
    }
    let n = alg.len();
    if phi(alg, alg.zero()).image != ProjectionMap::constant(n, alg.zero()).image
        || phi(alg, alg.one()).image != ProjectionMap::identity(n).image
    {
        return Ok(CheckResult::fail(
            ID,
            vec![("unit".into(), "0 or 1".into())],
        ));
    }
    let members: Vec<ElementId> = center_raw(alg).iter().map(ElementId).collect();
    for &a in &members {
        for &b in &members {
            let (pa, pb) = (phi(alg, a), phi(alg, b));
            let ab = pa.compose(&pb);
            let meet = alg.wedge_q(a, b);
            if ab.image != pb.compose(&pa).image
                || ab.image != phi(alg, meet).image
                || !members.contains(&meet)
            {
                return Ok(CheckResult::fail(
                    ID,
                    vec![
                        ("a".into(), alg.name(a).into()),
                        ("b".into(), alg.name(b).into()),
                    ],
                ));
            }
        }
    }
    Ok(CheckResult::pass(ID))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::fixture;

    fn el(alg: &FiniteAlgebra, n: &str) -> ElementId {
        alg.id(n).unwrap()
    }

    #[test]
    fn projections_on_ioml6_full() {
        let a = fixture("ioml6-full").unwrap();
        let p = sasaki_projection(&a, el(&a, "a")).unwrap();
        assert_eq!(p.render(&a), "0 a 0 a a a");
        let d = dual_projection(&a, el(&a, "a")).unwrap();
        assert_eq!(a.name(d.apply(a.zero())), "b");
    }

    #[test]
    fn commutation_on_benzene_is_one_sided() {
        let b = fixture("benzene6").unwrap();
        assert!(commutes(&b, el(&b, "a"), el(&b, "b")).unwrap());
        assert!(!commutes(&b, el(&b, "b"), el(&b, "a")).unwrap());
        assert!(divides(&b, el(&b, "a"), el(&b, "b")).unwrap());
        assert!(!divides(&b, el(&b, "b"), el(&b, "a")).unwrap());
    }

    #[test]
    fn generated_subalgebra_contains_bounds() {
        let b = fixture("benzene6").unwrap();
        let s = generated_subalgebra(&b, &[el(&b, "a")]);
        assert_eq!(s.format_with(b.elements()), "{0,a,c,1}");
        assert!(is_subalgebra(&b, &s));
    }

    #[test]
    fn boolean_fixture_full_set_covers_everything() {
        let b = fixture("boolean4").unwrap();
        let maps = canonical_candidate(&b).unwrap();
        assert!(check_sasaki_set(&b, &maps).unwrap().passed());
        assert!(is_full(&b, &maps));
    }

    #[test]
    fn trivial_pair_set_is_sasaki() {
        let b = fixture("benzene6").unwrap();
        let maps = vec![phi(&b, b.zero()), phi(&b, b.one())];
        assert!(check_sasaki_set(&b, &maps).unwrap().passed());
        assert!(!is_full(&b, &maps));
    }
}
