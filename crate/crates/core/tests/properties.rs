//! Randomized invariants. Algebras are drawn from the fixtures and every
//! enumerated i-OL up to eight elements; spaces are random symmetric
//! irreflexive relations.

mod common;

use std::sync::OnceLock;

use common::*;
use ortholab::enumeration::{canonical_form, enumerate, is_isomorphic, AlgebraClass};
use ortholab::io::{
    fixture, fixture_names, parse_algebra, parse_stream, serialize_algebra, serialize_stream,
};
use ortholab::orthospace::{
    associated_orthospace, cl_algebra, down_set, enumerate_orthoclosed, is_dacey, OrthoSpace,
};
use ortholab::sasaki::{
    center, commutes, has_full_sasaki_set, is_iboolean_subalgebra, is_sasaki_space,
    orthogonal_pair_boolean_witness, sasaki_projection,
};
use ortholab::{check_axiom, ElementId, FiniteAlgebra, Limits, Subset};
use proptest::prelude::*;

fn pool() -> &'static [FiniteAlgebra] {
    static POOL: OnceLock<Vec<FiniteAlgebra>> = OnceLock::new();
    POOL.get_or_init(|| {
        let limits = Limits::default();
        let mut v: Vec<FiniteAlgebra> = fixture_names()
            .into_iter()
            .map(|n| fixture(n).unwrap())
            .collect();
        for n in [2, 4, 6, 8] {
            v.extend(enumerate(n, AlgebraClass::Iol, None, &limits).unwrap());
        }
        v
    })
}

fn holds(alg: &FiniteAlgebra, id: &str) -> bool {
    check_axiom(alg, id).unwrap().passed()
}

fn id(alg: &FiniteAlgebra, i: usize) -> ElementId {
    ElementId(i % alg.len())
}

/// Symmetric irreflexive relation on up to seven points.
fn space_strategy() -> impl Strategy<Value = OrthoSpace> {
    (2usize..=7).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut pairs = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        pairs.push((i, j));
                    }
                    k += 1;
                }
            }
            OrthoSpace::new((0..n).map(|i| format!("p{i}")).collect(), &pairs).unwrap()
        })
    })
}

fn subset_of(space: &OrthoSpace, mask: u64) -> Subset {
    Subset::from_indices(space.len(), (0..space.len()).filter(|i| mask >> i & 1 == 1))
}

/// A pool index with a permutation of that algebra's carrier.
fn relabelled() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0..pool().len()).prop_flat_map(|k| {
        let n = pool()[k].len();
        (Just(k), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn implicative_involutive_algebras_satisfy_the_weaker_laws(k in 0usize..64) {
        let g = &pool()[k % pool().len()];
        if holds(g, "impl") && g.classify().is_involutive {
            for ax in ["iG", "pi", "Iabs-i"] {
                prop_assert!(holds(g, ax), "{ax}");
            }
        }
    }

    #[test]
    fn laws_equivalent_on_whole_tables(k in 0usize..64) {
        let g = &pool()[k % pool().len()];
        let imp = holds(g, "impl");
        prop_assert_eq!(imp, holds(g, "iG") && holds(g, "Iabs-i"));
        prop_assert_eq!(imp, holds(g, "pi") && holds(g, "Iabs-i"));
        let reflexive = g.ids().all(|x| g.le_l(x, x));
        prop_assert_eq!(reflexive, holds(g, "iG"));
        let iom = holds(g, "IOM");
        prop_assert_eq!(iom, holds(g, "IOM'"));
        prop_assert_eq!(iom, holds(g, "IOM''"));
        prop_assert_eq!(holds(g, "Idiv"), holds(g, "@"));
    }

    #[test]
    fn orders_on_i_omls_and_i_boolean_algebras(k in 0usize..64, x in 0usize..16, y in 0usize..16) {
        let g = &pool()[k % pool().len()];
        let (x, y) = (id(g, x), id(g, y));
        let c = g.classify();
        if c.is_ioml {
            prop_assert_eq!(g.le_q(x, y), g.le_l(x, y));
        }
        if c.is_iboolean {
            prop_assert_eq!(g.le(x, y), g.le_l(x, y));
        }
        prop_assert_eq!(g.imp(x, g.star(y)), g.imp(y, g.star(x)));
        prop_assert_eq!(c.is_involutive, g.ids().all(|z| g.star(g.star(z)) == z));
    }

    #[test]
    fn projections_on_i_omls(k in 0usize..64, a in 0usize..16, x in 0usize..16, y in 0usize..16) {
        let g = &pool()[k % pool().len()];
        prop_assume!(g.classify().is_ioml);
        let (a, x, y) = (id(g, a), id(g, x), id(g, y));
        let p = sasaki_projection(g, a).unwrap();
        prop_assert_eq!(p.compose(&p).image, p.image.clone());
        if g.le_l(x, y) {
            prop_assert!(g.le_l(p.apply(x), p.apply(y)));
        }
        prop_assert_eq!(p.apply(x) == x, g.le_l(x, a));
        prop_assert_eq!(p.apply(x) == g.zero(), g.le_l(x, g.star(a)));
        let c = commutes(g, x, y).unwrap();
        prop_assert_eq!(c, commutes(g, y, x).unwrap());
        prop_assert_eq!(c, g.wedge_q(x, y) == g.wedge_q(y, x));
        prop_assert_eq!(c, g.vee_q(x, y) == g.vee_q(y, x));
        prop_assert_eq!(c, g.imp(g.imp(x, g.star(y)), g.star(g.imp(x, y))) == x);
        if g.perp(x, y) {
            prop_assert!(c);
            prop_assert_eq!(g.wedge_q(x, y), g.zero());
        }
    }

    #[test]
    fn class_characterizations_hold(k in 0usize..64) {
        let g = &pool()[k % pool().len()];
        let c = g.classify();
        prop_assume!(c.is_iol);
        let symmetric = g.ids().all(|x| g.ids().all(|y| !commutes(g, x, y).unwrap() || commutes(g, y, x).unwrap()));
        prop_assert_eq!(symmetric, c.is_ioml);
        let ortho = g.ids().all(|x| g.ids().all(|y| !g.perp(x, y) || g.wedge_q(x, g.star(y)) == x));
        prop_assert_eq!(ortho, c.is_ioml);
        prop_assert_eq!(has_full_sasaki_set(g).unwrap().passed(), c.is_ioml);
        if c.is_ioml {
            let centre = center(g).unwrap();
            prop_assert!(is_iboolean_subalgebra(g, &centre.members).unwrap().passed());
            for x in g.ids() {
                for y in g.ids() {
                    if g.perp(x, y) {
                        prop_assert!(orthogonal_pair_boolean_witness(g, x, y).unwrap().0.passed());
                    }
                }
            }
        }
    }

    #[test]
    fn down_sets_are_the_closed_sets(k in 0usize..64) {
        let g = &pool()[k % pool().len()];
        prop_assume!(g.classify().is_iol);
        let space = associated_orthospace(g).unwrap();
        let closed = enumerate_orthoclosed(&space, &Limits::default()).unwrap();
        let mut images: Vec<Subset> = g.ids().map(|x| space.restrict(&down_set(g, x).unwrap())).collect();
        for x in g.ids() {
            prop_assert_eq!(space.perp(&images[x.0]), images[g.star(x).0].clone());
        }
        images.sort();
        images.dedup();
        prop_assert_eq!(images.len(), g.len());
        prop_assert_eq!(&images[..], closed.members());
    }

    #[test]
    fn sasaki_spaces_are_dacey(k in 0usize..64) {
        let g = &pool()[k % pool().len()];
        prop_assume!(g.classify().is_iol);
        let space = associated_orthospace(g).unwrap();
        let limits = Limits::default();
        if is_sasaki_space(&space, &limits).unwrap().passed() {
            prop_assert!(is_dacey(&space, &limits).unwrap().passed());
        }
    }

    #[test]
    fn perp_laws_on_random_spaces(space in space_strategy(), m1 in any::<u64>(), m2 in any::<u64>()) {
        let a = subset_of(&space, m1);
        let b = a.union(&subset_of(&space, m2));
        prop_assert!(space.perp(&b).is_subset(&space.perp(&a)));
        let closure = space.orthoclosure(&a);
        prop_assert!(a.is_subset(&closure));
        prop_assert_eq!(space.perp(&closure), space.perp(&a));
        prop_assert_eq!(space.orthoclosure(&closure), closure);
    }

    #[test]
    fn closed_families_are_i_ols(space in space_strategy()) {
        let limits = Limits::default();
        let family = enumerate_orthoclosed(&space, &limits).unwrap();
        let members = family.members();
        prop_assert!(members.contains(&Subset::empty(space.len())));
        prop_assert!(members.contains(&space.full()));
        for a in members {
            prop_assert!(family.index_of(&space.perp(a)).is_some());
            for b in members {
                prop_assert!(family.index_of(&a.intersection(b)).is_some());
            }
        }
        let cl = cl_algebra(&space, &limits).unwrap();
        prop_assert!(holds(&cl, "impl") && holds(&cl, "DN"));
        prop_assert!(cl.classify().is_iol);
    }

    #[test]
    fn relabelling_preserves_everything((k, perm) in relabelled()) {
        let g = &pool()[k];
        let h = relabel(g, &perm);
        prop_assert_eq!(h.classify(), g.classify());
        let (ch, cg) = (canonical_form(&h), canonical_form(g));
        prop_assert_eq!(ch.table(), cg.table());
        let p = is_isomorphic(g, &h).expect("relabelling is an isomorphism");
        for x in g.ids() {
            for y in g.ids() {
                prop_assert_eq!(p[g.imp(x, y).0], h.imp(p[x.0], p[y.0]));
            }
        }
        let text = serialize_algebra(&h);
        let back = parse_algebra(&text).unwrap();
        prop_assert_eq!(&back, &h);
        prop_assert_eq!(serialize_algebra(&back), text);
    }

    #[test]
    fn isomorphism_is_transitive_on_samples(i in 0usize..64, j in 0usize..64, k in 0usize..64) {
        let p = pool();
        let (a, b, c) = (&p[i % p.len()], &p[j % p.len()], &p[k % p.len()]);
        if is_isomorphic(a, b).is_some() && is_isomorphic(b, c).is_some() {
            prop_assert!(is_isomorphic(a, c).is_some());
        }
        prop_assert_eq!(is_isomorphic(a, b).is_some(), is_isomorphic(b, a).is_some());
    }
}

#[test]
fn enumeration_is_deterministic_and_duplicate_free() {
    let limits = Limits::default();
    for class in [
        AlgebraClass::Iol,
        AlgebraClass::Ioml,
        AlgebraClass::IBoolean,
    ] {
        let first = enumerate(6, class, None, &limits).unwrap();
        let again = enumerate(6, class, None, &limits).unwrap();
        assert_eq!(serialize_stream(&first), serialize_stream(&again));
        for (i, a) in first.iter().enumerate() {
            for b in &first[i + 1..] {
                assert!(is_isomorphic(a, b).is_none());
            }
        }
        let text = serialize_stream(&first);
        assert_eq!(parse_stream(&text, &limits).unwrap(), first);
        assert_eq!(text.lines().count(), first.len());
    }
}
