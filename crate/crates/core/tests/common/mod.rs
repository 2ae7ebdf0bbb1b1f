//! Helpers shared by the integration test targets, including oracles that
//! avoid the library's search and canonical-form code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use ortholab::enumeration::standard_names;
use ortholab::{ElementId, FiniteAlgebra};
use serde_json::Value;

pub fn el(alg: &FiniteAlgebra, name: &str) -> ElementId {
    alg.id(name).unwrap_or_else(|| panic!("no element {name}"))
}

/// Rows of whitespace-separated element names, row index = left argument.
pub fn parse_rows(alg: &FiniteAlgebra, rows: &[&str]) -> Vec<Vec<ElementId>> {
    rows.iter()
        .map(|r| r.split_whitespace().map(|s| el(alg, s)).collect())
        .collect()
}

/// First cell where `op` differs from the published rows.
pub fn table_mismatch(
    alg: &FiniteAlgebra,
    rows: &[&str],
    op: impl Fn(ElementId, ElementId) -> ElementId,
) -> Option<String> {
    let expected = parse_rows(alg, rows);
    for x in alg.ids() {
        for y in alg.ids() {
            let (got, want) = (op(x, y), expected[x.0][y.0]);
            if got != want {
                return Some(format!(
                    "({}, {}): got {}, expected {}",
                    alg.name(x),
                    alg.name(y),
                    alg.name(got),
                    alg.name(want)
                ));
            }
        }
    }
    None
}

// published tables shared by several targets

/// Rows are `x -> x meet_Q s` for s = 0, a, b, c, d, 1.
pub const IOML6_FULL_PROJECTIONS: [(&str, &str); 6] = [
    ("0", "0 0 0 0 0 0"),
    ("a", "0 a 0 a a a"),
    ("b", "0 0 b b b b"),
    ("c", "0 c c c 0 c"),
    ("d", "0 d d 0 d d"),
    ("1", "0 a b c d 1"),
];

pub const CL_ARROW: [&str; 6] = [
    "X X X X X X",
    "D X D X D X",
    "C C X C X X",
    "B X B X D X",
    "A A X C X X",
    "E A B C D X",
];

pub const CL_MEET: [&str; 6] = [
    "E E E E E E",
    "E A E C E A",
    "E E B E D B",
    "E A E C E C",
    "E E B E D D",
    "E A B C D X",
];

/// Paper names of the closed sets of the benzene space.
pub fn cl_name(letter: &str) -> &'static str {
    match letter {
        "E" => "{}",
        "A" => "{a}",
        "B" => "{d}",
        "C" => "{a,b}",
        "D" => "{c,d}",
        "X" => "{a,b,c,d,1}",
        other => panic!("unknown closed set {other}"),
    }
}

pub fn cl_rows(rows: &[&str]) -> Vec<String> {
    rows.iter()
        .map(|r| {
            r.split_whitespace()
                .map(cl_name)
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}

pub fn expectations() -> Value {
    serde_json::from_str(include_str!("../data/expectations.json")).expect("expectations parse")
}

pub fn frozen_count(n: usize, class: &str) -> u64 {
    expectations()["enumeration"][n.to_string()][class]
        .as_u64()
        .unwrap_or_else(|| panic!("no frozen count for n={n} {class}"))
}

// ---------------------------------------------------------------------------
// ortholattice-side enumeration oracle
//
// Bounded posets on n points are scanned by brute force over the strict order
// of the n-2 inner points; lattices with an orthocomplement are turned into
// arrow tables by x -> y = (x meet y')'. Orthomodularity and distributivity are
// decided with lattice operations, never with the arrow axioms.

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleCounts {
    pub iol: BTreeSet<Vec<usize>>,
    pub ioml: BTreeSet<Vec<usize>>,
    pub iboolean: BTreeSet<Vec<usize>>,
}

struct Lattice {
    n: usize,
    meet: Vec<usize>,
    join: Vec<usize>,
    le: Vec<bool>,
}

fn lattice_from_order(n: usize, le: Vec<bool>) -> Option<Lattice> {
    let bound = |upper: bool, x: usize, y: usize| -> Option<usize> {
        let cands: Vec<usize> = (0..n)
            .filter(|&z| {
                if upper {
                    le[x * n + z] && le[y * n + z]
                } else {
                    le[z * n + x] && le[z * n + y]
                }
            })
            .collect();
        cands.iter().copied().find(|&b| {
            cands
                .iter()
                .all(|&c| if upper { le[b * n + c] } else { le[c * n + b] })
        })
    };
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            meet[x * n + y] = bound(false, x, y)?;
            join[x * n + y] = bound(true, x, y)?;
        }
    }
    Some(Lattice { n, meet, join, le })
}

fn involutions(items: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![vec![]];
    };
    let mut out = Vec::new();
    for (i, &partner) in rest.iter().enumerate() {
        let remaining: Vec<usize> = rest
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &v)| v)
            .collect();
        for mut tail in involutions(&remaining) {
            tail.push((first, partner));
            out.push(tail);
        }
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// Min-lex relabelled table over all bijections fixing the first and last point.
pub fn brute_canonical(n: usize, table: &[usize]) -> Vec<usize> {
    let inner: Vec<usize> = (1..n - 1).collect();
    let mut best: Option<Vec<usize>> = None;
    for p in permutations(&inner) {
        let mut map = vec![0; n];
        map[n - 1] = n - 1;
        for (i, &v) in p.iter().enumerate() {
            map[i + 1] = v;
        }
        let mut t = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                t[map[x] * n + map[y]] = map[table[x * n + y]];
            }
        }
        if best.as_ref().is_none_or(|b| t < *b) {
            best = Some(t);
        }
    }
    best.expect("at least one permutation")
}

/// Ortholattices with `n` elements, as canonical arrow tables per class.
pub fn ortholattice_oracle(n: usize) -> OracleCounts {
    assert!((2..=6).contains(&n), "oracle is only exhaustive for n <= 6");
    let (bot, top) = (0, n - 1);
    let inner: Vec<usize> = (1..n - 1).collect();
    let pairs: Vec<(usize, usize)> = inner
        .iter()
        .flat_map(|&a| inner.iter().filter(move |&&b| b != a).map(move |&b| (a, b)))
        .collect();
    let mut out = OracleCounts::default();
    for mask in 0u64..(1 << pairs.len()) {
        let mut le = vec![false; n * n];
        for x in 0..n {
            le[x * n + x] = true;
            le[bot * n + x] = true;
            le[x * n + top] = true;
        }
        for (k, &(a, b)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                le[a * n + b] = true;
            }
        }
        let antisymmetric = pairs
            .iter()
            .all(|&(a, b)| !(le[a * n + b] && le[b * n + a]));
        let transitive = (0..n).all(|x| {
            (0..n).all(|y| (0..n).all(|z| !(le[x * n + y] && le[y * n + z]) || le[x * n + z]))
        });
        if !antisymmetric || !transitive {
            continue;
        }
        let Some(lat) = lattice_from_order(n, le) else {
            continue;
        };
        for inv in involutions(&inner) {
            let mut c = vec![0; n];
            c[bot] = top;
            c[top] = bot;
            for &(a, b) in &inv {
                c[a] = b;
                c[b] = a;
            }
            if let Some(t) = orthocomplemented_table(&lat, &c) {
                let key = brute_canonical(n, &t.0);
                out.iol.insert(key.clone());
                if t.1 {
                    out.ioml.insert(key.clone());
                }
                if t.2 {
                    out.iboolean.insert(key);
                }
            }
        }
    }
    out
}

/// Arrow table, orthomodular flag and distributive flag, when `c` is an
/// orthocomplement.
fn orthocomplemented_table(lat: &Lattice, c: &[usize]) -> Option<(Vec<usize>, bool, bool)> {
    let n = lat.n;
    let (bot, top) = (0, n - 1);
    let m = |x: usize, y: usize| lat.meet[x * n + y];
    let j = |x: usize, y: usize| lat.join[x * n + y];
    let le = |x: usize, y: usize| lat.le[x * n + y];
    for x in 0..n {
        if m(x, c[x]) != bot || j(x, c[x]) != top {
            return None;
        }
        for y in 0..n {
            if le(x, y) && !le(c[y], c[x]) {
                return None;
            }
        }
    }
    let mut table = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            table[x * n + y] = c[m(x, c[y])];
        }
    }
    let orthomodular = (0..n).all(|x| (0..n).all(|y| !le(x, y) || y == j(x, m(c[x], y))));
    let distributive =
        (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| m(x, j(y, z)) == j(m(x, y), m(x, z)))));
    Some((table, orthomodular, distributive))
}

/// Oracle table as an algebra with standard names.
pub fn oracle_algebra(n: usize, table: &[usize]) -> FiniteAlgebra {
    FiniteAlgebra::from_flat(
        None,
        standard_names(n),
        table.iter().map(|&v| ElementId(v)).collect(),
        ElementId(n - 1),
        ElementId(0),
    )
    .expect("oracle table is a bounded BE algebra")
}

pub fn library_key(alg: &FiniteAlgebra) -> Vec<usize> {
    let n = alg.len();
    // standard position: zero first, one last
    let mut order: Vec<ElementId> = alg.ids().collect();
    order.sort_by_key(|&x| (x != alg.zero(), x == alg.one(), x.0));
    let mut pos = vec![0; n];
    for (i, x) in order.iter().enumerate() {
        pos[x.0] = i;
    }
    let mut t = vec![0; n * n];
    for x in alg.ids() {
        for y in alg.ids() {
            t[pos[x.0] * n + pos[y.0]] = pos[alg.imp(x, y).0];
        }
    }
    brute_canonical(n, &t)
}

// ---------------------------------------------------------------------------
// brute-force isomorphism oracle

/// Any bijection preserving the arrow, by scanning every permutation.
pub fn brute_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    let all: Vec<usize> = (0..n).collect();
    permutations(&all).into_iter().any(|p| {
        (0..n).all(|x| {
            (0..n).all(|y| {
                p[a.imp(ElementId(x), ElementId(y)).0] == b.imp(ElementId(p[x]), ElementId(p[y])).0
            })
        })
    })
}

/// Table of `alg` with element `i` renamed to position `perm[i]`.
pub fn relabel(alg: &FiniteAlgebra, perm: &[usize]) -> FiniteAlgebra {
    let n = alg.len();
    let mut names = vec![String::new(); n];
    let mut table = vec![ElementId(0); n * n];
    for x in alg.ids() {
        names[perm[x.0]] = alg.name(x).to_string();
        for y in alg.ids() {
            table[perm[x.0] * n + perm[y.0]] = ElementId(perm[alg.imp(x, y).0]);
        }
    }
    FiniteAlgebra::from_flat(
        None,
        names,
        table,
        ElementId(perm[alg.one().0]),
        ElementId(perm[alg.zero().0]),
    )
    .expect("relabelling preserves validity")
}
