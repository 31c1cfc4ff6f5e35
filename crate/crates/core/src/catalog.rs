//! Standard small PMQs used throughout tests, examples and the CLI.

use crate::construct::geodesic_pmq;
use crate::group::FiniteGroup;
use crate::perm::Perm;
use crate::pmq::FinitePmq;

fn trivial_conj(a: usize, _: usize) -> usize {
    a
}

/// The one-element PMQ `{1}`.
pub fn unit_pmq() -> FinitePmq {
    FinitePmq::from_fn(vec!["1".into()], 0, trivial_conj, |_, _| Some(0), Some(vec![0])).unwrap()
}

/// `{0, 1, ..., n}` with addition where the sum stays `<= n`, labelled by
/// the numbers themselves, normed by the identity.
pub fn truncated_naturals(n: u32) -> FinitePmq {
    let m = n as usize;
    FinitePmq::from_fn(
        (0..=m).map(|i| i.to_string()).collect(),
        0,
        trivial_conj,
        |a, b| (a + b <= m).then_some(a + b),
        Some((0..=n).collect()),
    )
    .unwrap()
}

/// `{0, 1, 1', 2, ..., n}`: the truncated naturals with a second element
/// `1'` of norm 1 satisfying `1' + 1' = 2` and `1' + k = k + 1` for `k >= 1`.
pub fn naturals_with_extra_one(n: u32) -> FinitePmq {
    assert!(n >= 2, "the extra element needs room for 1' + 1' = 2");
    let m = n as usize;
    // index 0 -> 0, 1 -> 1, 2 -> 1', i >= 3 -> i - 1
    let value = |i: usize| if i <= 1 { i } else if i == 2 { 1 } else { i - 1 };
    let index = |v: usize| if v <= 1 { v } else { v + 1 };
    let mut labels: Vec<String> = vec!["0".into(), "1".into(), "1'".into()];
    labels.extend((2..=m).map(|v| v.to_string()));
    let norm = (0..labels.len()).map(|i| value(i) as u32).collect();
    FinitePmq::from_fn(
        labels,
        0,
        trivial_conj,
        |a, b| {
            if a == 0 {
                return Some(b);
            }
            if b == 0 {
                return Some(a);
            }
            let s = value(a) + value(b);
            (s <= m).then(|| index(s))
        },
        Some(norm),
    )
    .unwrap()
}

/// The abelian PMQ `{1, a, a', b, b', c}` whose only nontrivial products are
/// `ab = ba = a'b' = b'a' = c`; `c` has norm 2, the others norm 1.
pub fn segre() -> FinitePmq {
    let labels = ["1", "a", "a'", "b", "b'", "c"];
    FinitePmq::from_fn(
        labels.iter().map(|s| s.to_string()).collect(),
        0,
        trivial_conj,
        |x, y| match (x, y) {
            (0, z) | (z, 0) => Some(z),
            (1, 3) | (3, 1) | (2, 4) | (4, 2) => Some(5),
            _ => None,
        },
        Some(vec![0, 1, 1, 1, 1, 2]),
    )
    .unwrap()
}

/// `S_d^geo`: the symmetric group with the transposition word-length norm and
/// geodesic products. Elements are in lexicographic order of one-line
/// images and labelled in cycle notation.
pub fn sd_geo(d: usize) -> FinitePmq {
    let g = FiniteGroup::symmetric(d);
    let norm: Vec<u32> = Perm::all(d).iter().map(|p| p.norm()).collect();
    geodesic_pmq(&g, &norm).unwrap()
}

/// The permutation represented by each element of [`sd_geo`].
pub fn sd_geo_perms(d: usize) -> Vec<Perm> {
    Perm::all(d)
}

/// `{1}` together with the transpositions of `S_d`, conjugation from `S_d`,
/// trivial product and unit norm.
pub fn transposition_quandle(d: usize) -> FinitePmq {
    let mut perms = vec![Perm::identity(d)];
    perms.extend(Perm::transpositions(d));
    let pos = |p: &Perm| perms.iter().position(|x| x == p).unwrap();
    FinitePmq::from_fn(
        perms.iter().map(|p| p.cycle_string()).collect(),
        0,
        |a, b| pos(&perms[a].conj(&perms[b])),
        |a, b| match (a, b) {
            (0, z) | (z, 0) => Some(z),
            _ => None,
        },
        Some((0..perms.len()).map(|i| u32::from(i > 0)).collect()),
    )
    .unwrap()
}

/// The rack `{1, a, b}` with `a^a = a^b = b`, `b^a = b^b = a` and trivial
/// product. It satisfies every axiom except `a^a = a`.
pub fn swap_rack() -> FinitePmq {
    FinitePmq::from_fn(
        vec!["1".into(), "a".into(), "b".into()],
        0,
        |x, y| if x == 0 || y == 0 { x } else { 3 - x },
        |x, y| match (x, y) {
            (0, z) | (z, 0) => Some(z),
            _ => None,
        },
        None,
    )
    .unwrap()
}
