//! Basic constructions: geodesic PMQs, `G ⋉ S`, PMQ-group pairs and `Q ⋈ G`.

use crate::error::{axiom, structural, Result};
use crate::group::FiniteGroup;
use crate::pmq::{Elem, FinitePmq};

/// Checks that `norm` is a conjugation-invariant group norm on `g`.
pub fn check_group_norm(g: &FiniteGroup, norm: &[u32]) -> Result<()> {
    if norm.len() != g.len() {
        return Err(structural("norm must assign a value to every group element"));
    }
    for a in 0..g.len() {
        if (norm[a] == 0) != (a == g.unit()) {
            return Err(axiom(format!("norm vanishes exactly at the unit fails at {}", g.label(a))));
        }
    }
    for a in 0..g.len() {
        for b in 0..g.len() {
            if norm[g.mul(a, b)] > norm[a] + norm[b] {
                return Err(axiom(format!("triangle inequality fails at ({}, {})", g.label(a), g.label(b))));
            }
            if norm[g.conj(a, b)] != norm[a] {
                return Err(axiom(format!("norm is not conjugation invariant at ({}, {})", g.label(a), g.label(b))));
            }
        }
    }
    Ok(())
}

/// `G^geo`: the conjugation quandle of `g` with product defined exactly on
/// pairs where the norm is additive.
pub fn geodesic_pmq(g: &FiniteGroup, norm: &[u32]) -> Result<FinitePmq> {
    check_group_norm(g, norm)?;
    FinitePmq::from_fn(
        g.labels().to_vec(),
        g.unit(),
        |a, b| g.conj(a, b),
        |a, b| {
            let c = g.mul(a, b);
            (norm[c] == norm[a] + norm[b]).then_some(c)
        },
        Some(norm.to_vec()),
    )
}

/// `G ⋉ S` for a right action `action(s, g) = s·g` of `g` on `s_labels`.
///
/// Elements are those of `G` (in order) followed by those of `S`; elements of
/// `S` act trivially, `G` acts on itself by conjugation and on `S` through
/// the action. Products are defined on `G × G` and, as the unit laws
/// require, on pairs involving the unit.
///
/// For nontrivial `G` and nonempty `S` the result cannot satisfy conditional
/// associativity: `(g g^{-1}) s` is defined while `g^{-1} s` is not.
/// [`crate::validate::validate`] reports exactly that axiom; all other axioms
/// hold, and the enveloping group is unaffected.
pub fn semidirect_pmq(
    g: &FiniteGroup,
    s_labels: &[String],
    action: impl Fn(usize, usize) -> usize,
) -> Result<FinitePmq> {
    let ng = g.len();
    let ns = s_labels.len();
    for s in 0..ns {
        if action(s, g.unit()) != s {
            return Err(axiom(format!("unit does not act trivially on {}", s_labels[s])));
        }
        for a in 0..ng {
            let sa = action(s, a);
            if sa >= ns {
                return Err(structural("action table entry outside the set"));
            }
            for b in 0..ng {
                if action(sa, b) != action(s, g.mul(a, b)) {
                    return Err(axiom(format!(
                        "not a right action at ({}, {}, {})",
                        s_labels[s],
                        g.label(a),
                        g.label(b)
                    )));
                }
            }
        }
    }
    let mut labels = g.labels().to_vec();
    labels.extend(s_labels.iter().cloned());
    FinitePmq::from_fn(
        labels,
        g.unit(),
        |x, y| match (x < ng, y < ng) {
            (true, true) => g.conj(x, y),
            (false, true) => ng + action(x - ng, y),
            (_, false) => x,
        },
        |x, y| match (x < ng, y < ng) {
            (true, true) => Some(g.mul(x, y)),
            (true, false) if x == g.unit() => Some(y),
            (false, true) if y == g.unit() => Some(x),
            _ => None,
        },
        None,
    )
}

/// A PMQ-group pair `(Q, G, e, r)`.
#[derive(Clone, Debug)]
pub struct PmqGroupPair {
    pub pmq: FinitePmq,
    pub group: FiniteGroup,
    /// `e_map[a]` is the image of `a` in `G`.
    pub e_map: Vec<usize>,
    /// `r_action[g][a] = a^g`, a right action by PMQ automorphisms.
    pub r_action: Vec<Vec<Elem>>,
}

impl PmqGroupPair {
    /// Checks every condition on a PMQ-group pair; `pmq` must be a valid PMQ.
    pub fn new(pmq: FinitePmq, group: FiniteGroup, e_map: Vec<usize>, r_action: Vec<Vec<Elem>>) -> Result<Self> {
        let q = &pmq;
        let g = &group;
        if e_map.len() != q.len() || e_map.iter().any(|&x| x >= g.len()) {
            return Err(structural("e_map must send every PMQ element into the group"));
        }
        if r_action.len() != g.len() || r_action.iter().any(|r| r.len() != q.len() || r.iter().any(|a| a.index() >= q.len())) {
            return Err(structural("r_action must give a total self-map of the PMQ for every group element"));
        }
        let e = |a: Elem| e_map[a.index()];
        let r = |x: usize, a: Elem| r_action[x][a.index()];
        let lab = |a: Elem| q.label(a).to_string();
        if e(q.unit()) != g.unit() {
            return Err(axiom("e_map does not preserve the unit"));
        }
        for a in q.elements() {
            for b in q.elements() {
                if e(q.conj(a, b)) != g.conj(e(a), e(b)) {
                    return Err(axiom(format!("e_map does not preserve conjugation at ({}, {})", lab(a), lab(b))));
                }
                if let Some(ab) = q.prod(a, b) {
                    if e(ab) != g.mul(e(a), e(b)) {
                        return Err(axiom(format!("e_map does not preserve the product at ({}, {})", lab(a), lab(b))));
                    }
                }
                if r(e(b), a) != q.conj(a, b) {
                    return Err(axiom(format!("r(e(b)) differs from conjugation by b at ({}, {})", lab(a), lab(b))));
                }
            }
        }
        for x in 0..g.len() {
            let mut hit = vec![false; q.len()];
            for a in q.elements() {
                hit[r(x, a).index()] = true;
                if e(r(x, a)) != g.conj(e(a), x) {
                    return Err(axiom(format!("e_map is not equivariant at ({}, {})", lab(a), g.label(x))));
                }
                for y in 0..g.len() {
                    if r(g.mul(x, y), a) != r(y, r(x, a)) {
                        return Err(axiom(format!("r is not a right action at ({}, {}, {})", lab(a), g.label(x), g.label(y))));
                    }
                }
                for b in q.elements() {
                    if r(x, q.conj(a, b)) != q.conj(r(x, a), r(x, b)) {
                        return Err(axiom(format!("r({}) does not preserve conjugation", g.label(x))));
                    }
                    if q.prod(a, b).map(|ab| r(x, ab)) != q.prod(r(x, a), r(x, b)) {
                        return Err(axiom(format!("r({}) does not preserve products", g.label(x))));
                    }
                }
            }
            if hit.iter().any(|h| !h) || r(x, q.unit()) != q.unit() {
                return Err(axiom(format!("r({}) is not a PMQ automorphism", g.label(x))));
            }
        }
        Ok(PmqGroupPair { pmq, group, e_map, r_action })
    }

    /// `(G^geo, G)` with `e` the identity and `G` acting by conjugation.
    pub fn geodesic(group: &FiniteGroup, norm: &[u32]) -> Result<Self> {
        let pmq = geodesic_pmq(group, norm)?;
        let e_map = (0..group.len()).collect();
        let r_action = (0..group.len())
            .map(|x| (0..group.len()).map(|a| Elem::from(group.conj(a, x))).collect())
            .collect();
        Self::new(pmq, group.clone(), e_map, r_action)
    }

    pub fn e(&self, a: Elem) -> usize {
        self.e_map[a.index()]
    }

    /// `a^g` under the action.
    pub fn act(&self, a: Elem, g: usize) -> Elem {
        self.r_action[g][a.index()]
    }
}

/// Label given to the copy of a group element inside `Q ⋈ G`.
pub fn join_group_label(label: &str) -> String {
    format!("g:{label}")
}

/// The complete PMQ `Q ⋈ G`: elements of `Q` (in order, keeping their labels)
/// followed by copies of the elements of `G` labelled by [`join_group_label`].
pub fn join_pmq_group(pair: &PmqGroupPair) -> Result<FinitePmq> {
    let q = &pair.pmq;
    let g = &pair.group;
    let nq = q.len();
    let mut labels = q.labels().to_vec();
    labels.extend(g.labels().iter().map(|l| join_group_label(l)));
    let e = |a: usize| pair.e_map[a];
    FinitePmq::from_fn(
        labels,
        q.unit().index(),
        |x, y| match (x < nq, y < nq) {
            (true, true) => q.conj(Elem::from(x), Elem::from(y)).index(),
            (true, false) => pair.act(Elem::from(x), y - nq).index(),
            (false, true) => nq + g.conj(x - nq, e(y)),
            (false, false) => nq + g.conj(x - nq, y - nq),
        },
        |x, y| {
            Some(match (x < nq, y < nq) {
                (true, true) => match q.prod(Elem::from(x), Elem::from(y)) {
                    Some(c) => c.index(),
                    None => nq + g.mul(e(x), e(y)),
                },
                (true, false) => nq + g.mul(e(x), y - nq),
                (false, true) => nq + g.mul(x - nq, e(y)),
                (false, false) => nq + g.mul(x - nq, y - nq),
            })
        },
        None,
    )
}
