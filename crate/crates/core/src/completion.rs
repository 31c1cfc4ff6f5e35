//! The completion `Q̂` of a finite normed PMQ.
//!
//! An element of `Q̂` is a class of sequences over `Q₊ = Q ∖ {1}` under three
//! kinds of moves: contracting an adjacent pair with a defined product (or
//! expanding an entry into such a pair), and the two standard moves. All
//! moves preserve the total norm, so every class is finite and is found by
//! breadth-first search. The representative is the length-lexicographic
//! minimum, comparing entries in declaration order.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::RwLock;

use serde::Serialize;

use crate::braid::Rack;
use crate::construct::PmqGroupPair;
use crate::error::{precondition, Result};
use crate::pmq::{Elem, FinitePmq};

/// Canonical representative of an element of `Q̂`; the empty sequence is
/// the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HatElem {
    canonical: Vec<Elem>,
    norm: u32,
}

impl HatElem {
    pub fn canonical(&self) -> &[Elem] {
        &self.canonical
    }

    pub fn norm(&self) -> u32 {
        self.norm
    }

    pub fn is_unit(&self) -> bool {
        self.canonical.is_empty()
    }

    /// The element of `Q` this represents, if any.
    pub fn as_single(&self) -> Option<Elem> {
        match self.canonical[..] {
            [a] => Some(a),
            _ => None,
        }
    }
}

/// Move-class computations for one normed PMQ, memoized per sequence.
#[derive(Debug)]
pub struct Completion {
    q: FinitePmq,
    norms: Vec<u32>,
    /// For each `c`, all pairs of nonunits with `ab = c`.
    splits: Vec<Vec<(Elem, Elem)>>,
    memo: RwLock<HashMap<Vec<Elem>, Vec<Elem>>>,
}

impl Completion {
    pub fn new(q: &FinitePmq) -> Result<Self> {
        let norms = q.require_norm("completion")?.to_vec();
        if let Some(a) = q.nonunits().into_iter().find(|a| norms[a.index()] == 0) {
            return Err(precondition(format!("norm vanishes on the nonunit {}", q.label(a))));
        }
        let mut splits = vec![Vec::new(); q.len()];
        for a in q.nonunits() {
            for b in q.nonunits() {
                if let Some(c) = q.prod(a, b) {
                    splits[c.index()].push((a, b));
                }
            }
        }
        Ok(Completion { q: q.clone(), norms, splits, memo: RwLock::new(HashMap::new()) })
    }

    pub fn pmq(&self) -> &FinitePmq {
        &self.q
    }

    pub fn unit(&self) -> HatElem {
        HatElem { canonical: Vec::new(), norm: 0 }
    }

    /// The image `â` of an element of `Q`.
    pub fn hat(&self, a: Elem) -> HatElem {
        self.canonical_form(&[a])
    }

    /// Additive extension of the norm to sequences.
    pub fn seq_norm(&self, seq: &[Elem]) -> u32 {
        seq.iter().map(|a| self.norms[a.index()]).sum()
    }

    /// Canonical form of the class of `seq`; unit entries are dropped.
    pub fn canonical_form(&self, seq: &[Elem]) -> HatElem {
        let u = self.q.unit();
        let start: Vec<Elem> = seq.iter().copied().filter(|&a| a != u).collect();
        let norm = self.seq_norm(&start);
        if start.len() <= 1 && self.splits.iter().all(Vec::is_empty) {
            return HatElem { canonical: start, norm };
        }
        if let Some(c) = self.memo.read().expect("memo lock").get(&start) {
            return HatElem { canonical: c.clone(), norm };
        }
        let class = self.class_of(&start);
        let min = class
            .iter()
            .min_by(|x, y| (x.len(), *x).cmp(&(y.len(), *y)))
            .expect("class contains its start")
            .clone();
        let mut memo = self.memo.write().expect("memo lock");
        for s in class {
            memo.insert(s, min.clone());
        }
        HatElem { canonical: min, norm }
    }

    /// Whether two sequences represent the same element of `Q̂`.
    pub fn equal(&self, x: &[Elem], y: &[Elem]) -> bool {
        self.canonical_form(x) == self.canonical_form(y)
    }

    /// Every sequence in the move class of `start` (which has no units).
    pub fn class_of(&self, start: &[Elem]) -> Vec<Vec<Elem>> {
        let mut seen: HashSet<Vec<Elem>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.to_vec());
        queue.push_back(start.to_vec());
        let mut out = Vec::new();
        while let Some(s) = queue.pop_front() {
            self.for_each_neighbour(&s, |t| {
                if !seen.contains(&t) {
                    seen.insert(t.clone());
                    queue.push_back(t);
                }
            });
            out.push(s);
        }
        out
    }

    fn for_each_neighbour(&self, s: &[Elem], mut visit: impl FnMut(Vec<Elem>)) {
        let q = &self.q;
        for j in 0..s.len() {
            for &(a, b) in &self.splits[s[j].index()] {
                let mut t = Vec::with_capacity(s.len() + 1);
                t.extend_from_slice(&s[..j]);
                t.push(a);
                t.push(b);
                t.extend_from_slice(&s[j + 1..]);
                visit(t);
            }
        }
        for j in 0..s.len().saturating_sub(1) {
            let (a, b) = (s[j], s[j + 1]);
            if let Some(c) = q.prod(a, b) {
                let mut t = Vec::with_capacity(s.len() - 1);
                t.extend_from_slice(&s[..j]);
                t.push(c);
                t.extend_from_slice(&s[j + 2..]);
                visit(t);
            }
            let mut t = s.to_vec();
            t[j] = b;
            t[j + 1] = q.conj(a, b);
            visit(t);
            let mut t = s.to_vec();
            t[j] = q.conj_inv(b, a);
            t[j + 1] = a;
            visit(t);
        }
    }

    pub fn hat_mul(&self, x: &HatElem, y: &HatElem) -> HatElem {
        let mut s = x.canonical.clone();
        s.extend_from_slice(&y.canonical);
        self.canonical_form(&s)
    }

    /// `x^y`: every entry of `x` is conjugated by the entries of `y` in turn.
    pub fn hat_conj(&self, x: &HatElem, y: &HatElem) -> HatElem {
        let s: Vec<Elem> = x
            .canonical
            .iter()
            .map(|&a| y.canonical.iter().fold(a, |acc, &b| self.q.conj(acc, b)))
            .collect();
        self.canonical_form(&s)
    }

    /// `x^{y^{-1}}`.
    pub fn hat_conj_inv(&self, x: &HatElem, y: &HatElem) -> HatElem {
        let s: Vec<Elem> = x
            .canonical
            .iter()
            .map(|&a| y.canonical.iter().rev().fold(a, |acc, &b| self.q.conj_inv(acc, b)))
            .collect();
        self.canonical_form(&s)
    }

    /// Ordered product of a list of elements.
    pub fn product(&self, items: &[HatElem]) -> HatElem {
        let s: Vec<Elem> = items.iter().flat_map(|h| h.canonical.iter().copied()).collect();
        self.canonical_form(&s)
    }

    /// All sequences over `Q₊` of total norm `n`, in lexicographic order.
    pub fn sequences_of_norm(&self, n: u32) -> Vec<Vec<Elem>> {
        let pieces: Vec<Elem> = self.q.nonunits();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.extend_sequences(&pieces, n, &mut cur, &mut out);
        out
    }

    fn extend_sequences(&self, pieces: &[Elem], left: u32, cur: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for &a in pieces {
            let m = self.norms[a.index()];
            if m <= left {
                cur.push(a);
                self.extend_sequences(pieces, left - m, cur, out);
                cur.pop();
            }
        }
    }

    /// All elements of `Q̂` of norm `n`, sorted.
    pub fn classes_at_norm(&self, n: u32) -> Vec<HatElem> {
        let mut set: Vec<HatElem> = self
            .sequences_of_norm(n)
            .iter()
            .map(|s| self.canonical_form(s))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        set.sort();
        set
    }

    /// Labels of the canonical form.
    pub fn labels(&self, x: &HatElem) -> Vec<String> {
        self.q.labels_of(&x.canonical)
    }

    /// Canonical form of a sequence of labels.
    pub fn parse(&self, labels: &[impl AsRef<str>]) -> Result<HatElem> {
        Ok(self.canonical_form(&self.q.parse_seq(labels)?))
    }

    /// Checks that `Q → Q̂` is injective and that the elements outside the
    /// image form an ideal, for all classes of norm `<= budget`. If a pair
    /// over the same PMQ is supplied, also checks that the ordered product
    /// in `Q ⋈ G` is constant on every class.
    pub fn verify_embedding(&self, budget: u32, pair: Option<&PmqGroupPair>) -> Result<EmbeddingReport> {
        let q = &self.q;
        let mut report = EmbeddingReport { budget, injective: true, ideal: true, join_consistent: None, witness: None };
        let mut images: HashMap<HatElem, Elem> = HashMap::new();
        for a in q.elements() {
            let h = self.hat(a);
            if let Some(&b) = images.get(&h) {
                report.injective = false;
                report.witness.get_or_insert_with(|| format!("{} and {} have the same image", q.label(b), q.label(a)));
            }
            images.insert(h, a);
        }
        let hats: Vec<HatElem> = q.nonunits().into_iter().map(|a| self.hat(a)).collect();
        for n in 2..=budget {
            for w in self.classes_at_norm(n) {
                if w.as_single().is_some() {
                    continue;
                }
                for a in &hats {
                    let checks = [
                        (self.hat_conj(&w, a), "w^a"),
                        (self.hat_conj_inv(&w, a), "w^{a^-1}"),
                        (self.hat_mul(&w, a), "wa"),
                        (self.hat_mul(a, &w), "aw"),
                    ];
                    for (x, what) in checks {
                        if x.as_single().is_some() {
                            report.ideal = false;
                            report.witness.get_or_insert_with(|| {
                                format!("{what} lies in Q for w = {:?}, a = {:?}", self.labels(&w), self.labels(a))
                            });
                        }
                    }
                }
            }
        }
        if let Some(pair) = pair {
            if pair.pmq != *q {
                return Err(precondition("pair is over a different PMQ"));
            }
            let join = crate::construct::join_pmq_group(pair)?;
            let mut consistent = true;
            for n in 1..=budget {
                let mut value: HashMap<HatElem, Elem> = HashMap::new();
                for s in self.sequences_of_norm(n) {
                    // Q's elements come first in the join, with the same indices
                    let v = join.product_of(&s).expect("the join has total products");
                    let h = self.canonical_form(&s);
                    if *value.entry(h).or_insert(v) != v {
                        consistent = false;
                        report
                            .witness
                            .get_or_insert_with(|| format!("{:?} has two values in Q⋈G", q.labels_of(&s)));
                    }
                }
            }
            report.join_consistent = Some(consistent);
        }
        Ok(report)
    }

    /// Compares `Q̂_{≤1} → Q̂` on canonical forms of norm `<= budget`, where
    /// `Q_{≤1}` keeps the unit and the elements of norm 1.
    pub fn compare_with_low(&self, budget: u32) -> Result<LowComparison> {
        let q = &self.q;
        let keep: Vec<Elem> = q.elements().filter(|a| self.norms[a.index()] <= 1).collect();
        let low = Completion::new(&q.restrict(&keep)?)?;
        let mut out = LowComparison { budget, injective: true, surjective: true, witness: None };
        for n in 0..=budget {
            let mut image: HashMap<HatElem, HatElem> = HashMap::new();
            for c in low.classes_at_norm(n) {
                let s: Vec<Elem> = c.canonical.iter().map(|a| keep[a.index()]).collect();
                let h = self.canonical_form(&s);
                if let Some(prev) = image.insert(h.clone(), c.clone()) {
                    out.injective = false;
                    out.witness.get_or_insert_with(|| {
                        format!("{:?} and {:?} map to {:?}", low.labels(&prev), low.labels(&c), self.labels(&h))
                    });
                }
            }
            for h in self.classes_at_norm(n) {
                if !image.contains_key(&h) {
                    out.surjective = false;
                    out.witness.get_or_insert_with(|| format!("{:?} is not in the image", self.labels(&h)));
                }
            }
        }
        Ok(out)
    }
}

impl Rack for Completion {
    type Elem = HatElem;

    fn conj(&self, a: &HatElem, b: &HatElem) -> HatElem {
        self.hat_conj(a, b)
    }

    fn conj_inv(&self, a: &HatElem, b: &HatElem) -> HatElem {
        self.hat_conj_inv(a, b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub budget: u32,
    pub injective: bool,
    pub ideal: bool,
    pub join_consistent: Option<bool>,
    pub witness: Option<String>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.injective && self.ideal && self.join_consistent != Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowComparison {
    pub budget: u32,
    pub injective: bool,
    pub surjective: bool,
    pub witness: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::FiniteGroup;
    use crate::perm::Perm;
    use proptest::prelude::*;

    fn s3() -> Completion {
        Completion::new(&catalog::sd_geo(3)).unwrap()
    }

    #[test]
    fn empty_sequence_is_the_unit() {
        let c = s3();
        let u = c.canonical_form(&[]);
        assert!(u.is_unit());
        assert_eq!(u.norm(), 0);
        assert_eq!(c.canonical_form(&[c.pmq().unit()]), u);
    }

    #[test]
    fn standard_move_and_contraction() {
        let c = s3();
        let x = c.parse(&["(1,2)", "(2,3)"]).unwrap();
        assert_eq!(x, c.parse(&["(2,3)", "(1,3)"]).unwrap());
        assert_eq!(x.canonical().len(), 1);
        assert_eq!(x.norm(), 2);
        let p = Perm::transposition(3, 1, 2).compose(&Perm::transposition(3, 2, 3));
        assert_eq!(c.labels(&x), vec![p.cycle_string()]);
        // (1,2)(1,2) is not geodesic, so it stays a genuine element of Q̂ ∖ Q
        let y = c.parse(&["(1,2)", "(1,2)"]).unwrap();
        assert_eq!(y.canonical().len(), 2);
    }

    #[test]
    fn relation_ab_equals_b_ab() {
        let c = s3();
        let q = c.pmq().clone();
        for a in q.elements() {
            for b in q.elements() {
                assert!(c.equal(&[a, b], &[b, q.conj(a, b)]));
            }
        }
    }

    #[test]
    fn free_quandle_orders_matter() {
        let c = Completion::new(&catalog::transposition_quandle(3)).unwrap();
        assert_ne!(c.parse(&["(1,2)", "(2,3)"]).unwrap(), c.parse(&["(2,3)", "(1,2)"]).unwrap());
        assert_eq!(c.class_of(&c.pmq().parse_seq(&["(1,2)", "(2,3)"]).unwrap()).len(), 3);
    }

    #[test]
    fn norm_extends_additively() {
        let c = s3();
        let t = c.pmq().of_norm(1);
        for k in 0..5 {
            let seq: Vec<Elem> = (0..k).map(|i| t[i % t.len()]).collect();
            assert_eq!(c.canonical_form(&seq).norm(), k as u32);
        }
    }

    #[test]
    fn embeddings() {
        let c = s3();
        let g = FiniteGroup::symmetric(3);
        let norm: Vec<u32> = Perm::all(3).iter().map(|p| p.norm()).collect();
        let pair = PmqGroupPair::geodesic(&g, &norm).unwrap();
        let r = c.verify_embedding(4, Some(&pair)).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.join_consistent, Some(true));
        let u = Completion::new(&catalog::unit_pmq()).unwrap();
        assert!(u.verify_embedding(3, None).unwrap().passed());
        let t = Completion::new(&catalog::transposition_quandle(3)).unwrap();
        assert!(t.verify_embedding(3, None).unwrap().injective);
    }

    #[test]
    fn missing_norm_is_a_precondition_error() {
        assert!(matches!(Completion::new(&catalog::swap_rack()), Err(crate::Error::Precondition(_))));
    }

    #[test]
    fn low_comparison() {
        let c = s3();
        let r = c.compare_with_low(5).unwrap();
        assert!(r.injective && r.surjective, "{r:?}");
        // ℕ ∪ {1'} is not coconnected: 1·1 and 1'·1' both give 2
        let e = Completion::new(&catalog::naturals_with_extra_one(3)).unwrap();
        let r = e.compare_with_low(3).unwrap();
        assert!(!r.injective);
    }

    #[test]
    fn class_counts_of_truncated_naturals() {
        // every sequence of norm n expands to n copies of 1
        let c = Completion::new(&catalog::truncated_naturals(3)).unwrap();
        for n in 0..=6 {
            assert_eq!(c.classes_at_norm(n).len(), 1);
        }
    }

    proptest! {
        #[test]
        fn conjugation_is_bijective_on_classes(n in 1u32..4, pick in 0usize..6) {
            let c = s3();
            let classes = c.classes_at_norm(n);
            let y = c.hat(Elem::from(pick));
            let mut images: Vec<HatElem> = classes.iter().map(|x| c.hat_conj(x, &y)).collect();
            images.sort();
            prop_assert_eq!(images, classes.clone());
            for x in &classes {
                prop_assert_eq!(&c.hat_conj_inv(&c.hat_conj(x, &y), &y), x);
            }
        }

        #[test]
        fn monoid_laws(a in proptest::collection::vec(0usize..6, 0..3), b in proptest::collection::vec(0usize..6, 0..3)) {
            let c = s3();
            let x = c.canonical_form(&a.iter().map(|&i| Elem::from(i)).collect::<Vec<_>>());
            let y = c.canonical_form(&b.iter().map(|&i| Elem::from(i)).collect::<Vec<_>>());
            prop_assert_eq!(c.hat_mul(&x, &c.unit()), x.clone());
            prop_assert_eq!(c.hat_mul(&x, &y).norm(), x.norm() + y.norm());
            // xy = y x^y
            prop_assert_eq!(c.hat_mul(&x, &y), c.hat_mul(&y, &c.hat_conj(&x, &y)));
        }
    }
}
