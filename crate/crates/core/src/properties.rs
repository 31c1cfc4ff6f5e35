//! Tameness properties of finite PMQs: augmentation, local finiteness, the
//! intrinsic pseudonorm, maximal decomposability, coconnectedness and
//! pairwise determinedness.
//!
//! Everything is decided exactly except pairwise determinedness, which
//! quantifies over all lengths `r >= 3` and is checked up to a bound.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{precondition, Result};
use crate::pmq::{Elem, FinitePmq};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Verdict {
    fn yes() -> Self {
        Verdict { holds: true, witness: None, note: None }
    }

    fn no(witness: String) -> Self {
        Verdict { holds: false, witness: Some(witness), note: None }
    }

    fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.to_string());
        self
    }
}

/// `Q ∖ {1}` is an ideal: `ab = 1` forces `a = b = 1`.
pub fn is_augmented(q: &FinitePmq) -> Verdict {
    for a in q.nonunits() {
        for b in q.elements() {
            if q.prod(a, b) == Some(q.unit()) || q.prod(b, a) == Some(q.unit()) {
                let (x, y) = if q.prod(a, b) == Some(q.unit()) { (a, b) } else { (b, a) };
                return Verdict::no(format!("{}·{} = 1", q.label(x), q.label(y)));
            }
        }
    }
    Verdict::yes()
}

/// Result of the factorization-length search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pseudonorm {
    /// `h(a)`, the maximal number of nonunit factors of `a`.
    Bounded(Vec<u32>),
    /// Some element has a factorization of this length, so lengths are not
    /// bounded by the search.
    UnboundedAt(u32),
}

/// Elements admitting a factorization into exactly `r` nonunits, for
/// `r = 0, 1, ..., up_to` (left-to-right products).
fn factorization_layers(q: &FinitePmq, up_to: u32) -> Vec<Vec<bool>> {
    let n = q.len();
    let nonunits = q.nonunits();
    let mut layers = Vec::new();
    let mut cur = vec![false; n];
    cur[q.unit().index()] = true;
    layers.push(cur.clone());
    for _ in 0..up_to {
        let mut next = vec![false; n];
        for x in q.elements().filter(|x| cur[x.index()]) {
            for &b in &nonunits {
                if let Some(c) = q.prod(x, b) {
                    next[c.index()] = true;
                }
            }
        }
        cur = next;
        layers.push(cur.clone());
    }
    layers
}

/// `h(1) = 0` and `h(a)` is the longest factorization of `a` into nonunits,
/// searched up to `bound` factors.
pub fn intrinsic_pseudonorm(q: &FinitePmq, bound: u32) -> Pseudonorm {
    let layers = factorization_layers(q, bound);
    if layers[bound as usize].iter().any(|&x| x) && bound > 0 {
        return Pseudonorm::UnboundedAt(bound);
    }
    let mut h = vec![0u32; q.len()];
    for (r, layer) in layers.iter().enumerate() {
        for a in q.elements() {
            if layer[a.index()] && a != q.unit() {
                h[a.index()] = r as u32;
            }
        }
    }
    Pseudonorm::Bounded(h)
}

/// Every element has finitely many factorizations into nonunits.
///
/// With `m` nonunits, a factorization of length `m + 1` has two equal
/// prefix products (or a unit prefix), and the stretch between them can be
/// repeated; so local finiteness is equivalent to augmentation together with
/// the absence of factorizations of length `m + 1`.
pub fn is_locally_finite(q: &FinitePmq) -> Verdict {
    let aug = is_augmented(q);
    if !aug.holds {
        return Verdict::no(format!("not augmented: {}", aug.witness.unwrap_or_default()));
    }
    let m = q.len() as u32 - 1;
    match intrinsic_pseudonorm(q, m + 1) {
        Pseudonorm::Bounded(_) if q.norms().is_some() => Verdict::yes().with_note("by norm"),
        Pseudonorm::Bounded(_) => Verdict::yes(),
        Pseudonorm::UnboundedAt(r) => {
            let layers = factorization_layers(q, r);
            let a = q.elements().find(|a| layers[r as usize][a.index()]).unwrap();
            Verdict::no(format!("{} has a factorization into {r} nonunits", q.label(a)))
        }
    }
}

/// Checks that `norm` is a PMQ map to ℕ with kernel `{1}`.
pub fn validate_norm(q: &FinitePmq, norm: &[u32]) -> Verdict {
    if norm.len() != q.len() {
        return Verdict::no("norm has the wrong number of entries".into());
    }
    let nm = |a: Elem| norm[a.index()];
    for a in q.elements() {
        if (nm(a) == 0) != (a == q.unit()) {
            return Verdict::no(format!("N({}) = {}", q.label(a), nm(a)));
        }
    }
    for a in q.elements() {
        for b in q.elements() {
            if nm(q.conj(a, b)) != nm(a) {
                return Verdict::no(format!("N({}^{}) != N({})", q.label(a), q.label(b), q.label(a)));
            }
            if let Some(c) = q.prod(a, b) {
                if nm(c) != nm(a) + nm(b) {
                    return Verdict::no(format!("N({}·{}) != N({}) + N({})", q.label(a), q.label(b), q.label(a), q.label(b)));
                }
            }
        }
    }
    Verdict::yes()
}

/// Elements of norm 1 for the given norm.
fn degree_one(q: &FinitePmq, norm: &[u32]) -> Vec<Elem> {
    q.elements().filter(|a| norm[a.index()] == 1).collect()
}

/// Every element is a (norm-additive) product of elements of norm 1.
pub fn is_maximally_decomposable(q: &FinitePmq) -> Result<Verdict> {
    let norm = q.require_norm("maximal decomposability")?;
    let ones = degree_one(q, norm);
    let mut reached = vec![false; q.len()];
    reached[q.unit().index()] = true;
    let mut frontier = vec![q.unit()];
    while let Some(x) = frontier.pop() {
        for &b in &ones {
            if let Some(c) = q.prod(x, b) {
                if !reached[c.index()] {
                    reached[c.index()] = true;
                    frontier.push(c);
                }
            }
        }
    }
    Ok(match q.elements().find(|a| !reached[a.index()]) {
        None => Verdict::yes(),
        Some(a) => Verdict::no(format!("{} has no decomposition into norm-1 elements", q.label(a))),
    })
}

/// All sequences over `ones` with defined left-to-right product `a`, in
/// lexicographic order.
pub fn decompositions(q: &FinitePmq, norm: &[u32], a: Elem) -> Vec<Vec<Elem>> {
    let ones = degree_one(q, norm);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(q: &FinitePmq, ones: &[Elem], target: Elem, left: u32, acc: Elem, cur: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        if left == 0 {
            if acc == target {
                out.push(cur.clone());
            }
            return;
        }
        for &b in ones {
            if let Some(c) = q.prod(acc, b) {
                cur.push(b);
                go(q, ones, target, left - 1, c, cur, out);
                cur.pop();
            }
        }
    }
    go(q, &ones, a, norm[a.index()], q.unit(), &mut cur, &mut out);
    out
}

/// The two standard moves at every position.
fn move_neighbours(q: &FinitePmq, s: &[Elem]) -> Vec<Vec<Elem>> {
    let mut out = Vec::with_capacity(2 * s.len());
    for j in 0..s.len().saturating_sub(1) {
        let (a, b) = (s[j], s[j + 1]);
        let mut t = s.to_vec();
        t[j] = b;
        t[j + 1] = q.conj(a, b);
        out.push(t);
        let mut t = s.to_vec();
        t[j] = q.conj_inv(b, a);
        t[j + 1] = a;
        out.push(t);
    }
    out
}

/// Splits `items` into standard-move orbits (each in BFS order from its
/// least member; orbits ordered by least member). `items` must be closed
/// under moves.
pub fn move_orbits(q: &FinitePmq, items: &[Vec<Elem>]) -> Vec<Vec<Vec<Elem>>> {
    let mut seen: HashSet<&[Elem]> = HashSet::new();
    let index: HashMap<&[Elem], usize> = items.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let mut orbits = Vec::new();
    for s in items {
        if seen.contains(s.as_slice()) {
            continue;
        }
        seen.insert(s);
        let mut orbit = Vec::new();
        let mut queue = VecDeque::from([s.clone()]);
        while let Some(x) = queue.pop_front() {
            for y in move_neighbours(q, &x) {
                let key = items[*index.get(y.as_slice()).expect("move-closed set")].as_slice();
                if seen.insert(key) {
                    queue.push_back(y);
                }
            }
            orbit.push(x);
        }
        orbits.push(orbit);
    }
    orbits
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementDecompositions {
    pub element: String,
    pub decompositions: usize,
    pub classes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoconnectedReport {
    pub holds: bool,
    pub per_element: Vec<ElementDecompositions>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// For every element, the norm-1 decompositions form one standard-move orbit.
pub fn is_coconnected(q: &FinitePmq) -> Result<CoconnectedReport> {
    let norm = q.require_norm("coconnectedness")?;
    let md = is_maximally_decomposable(q)?;
    if !md.holds {
        return Err(precondition(format!("not maximally decomposable: {}", md.witness.unwrap())));
    }
    let mut report = CoconnectedReport { holds: true, per_element: Vec::new(), witness: None };
    for a in q.elements() {
        let decs = decompositions(q, norm, a);
        for d in &decs {
            debug_assert!(move_neighbours(q, d).iter().all(|t| q.product_of(t) == Some(a)));
        }
        let orbits = move_orbits(q, &decs);
        if orbits.len() > 1 && report.holds {
            report.holds = false;
            report.witness = Some(format!(
                "{} has {} decompositions in {} classes; {:?} and {:?} are not connected",
                q.label(a),
                decs.len(),
                orbits.len(),
                q.labels_of(&orbits[0][0]),
                q.labels_of(&orbits[1][0])
            ));
        }
        report.per_element.push(ElementDecompositions {
            element: q.label(a).to_string(),
            decompositions: decs.len(),
            classes: orbits.len(),
        });
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairwiseReport {
    /// True when no counterexample exists for `3 <= r <= r_max`.
    pub holds_up_to_bound: bool,
    pub r_max: u32,
    /// A move orbit with undefined product in which every member has a
    /// defined leading pair, given by its least member.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    pub note: String,
}

/// Default search bound: one more than the largest norm.
pub fn default_r_max(q: &FinitePmq) -> Result<u32> {
    Ok(q.require_norm("pairwise determinedness")?.iter().copied().max().unwrap_or(0) + 1)
}

/// For `3 <= r <= r_max`, every move orbit of norm-1 sequences of length `r`
/// with undefined product contains a sequence whose first two entries have
/// undefined product.
pub fn is_pairwise_determined(q: &FinitePmq, r_max: u32) -> Result<PairwiseReport> {
    let norm = q.require_norm("pairwise determinedness")?;
    let md = is_maximally_decomposable(q)?;
    if !md.holds {
        return Err(precondition(format!("not maximally decomposable: {}", md.witness.unwrap())));
    }
    let ones = degree_one(q, norm);
    let mut report = PairwiseReport {
        holds_up_to_bound: true,
        r_max,
        witness: None,
        note: format!("bounded verdict: lengths 3..={r_max} checked; no finiteness reduction is known"),
    };
    for r in 3..=r_max {
        let mut undefined = Vec::new();
        let total = ones.len().pow(r);
        for code in 0..total {
            let mut c = code;
            let s: Vec<Elem> = (0..r)
                .map(|_| {
                    let x = ones[c % ones.len()];
                    c /= ones.len();
                    x
                })
                .rev()
                .collect();
            if q.product_of(&s).is_none() {
                undefined.push(s);
            }
        }
        undefined.sort();
        for orbit in move_orbits(q, &undefined) {
            if orbit.iter().all(|s| q.prod(s[0], s[1]).is_some()) {
                let least = orbit.iter().min().unwrap();
                report.holds_up_to_bound = false;
                report.witness = Some(q.labels_of(least));
                return Ok(report);
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub augmented: Verdict,
    pub locally_finite: Verdict,
    /// Which norm the remaining checks used: "given", "intrinsic" or none.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm_used: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intrinsic_norm: Option<BTreeMap<String, u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maximally_decomposable: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coconnected: Option<CoconnectedReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairwise_determined: Option<PairwiseReport>,
}

/// Runs every check. Without a declared norm, the intrinsic pseudonorm is
/// used when it is a norm.
pub fn property_report(q: &FinitePmq, r_max: Option<u32>) -> Result<PropertyReport> {
    let augmented = is_augmented(q);
    let locally_finite = is_locally_finite(q);
    let h = match intrinsic_pseudonorm(q, q.len() as u32) {
        Pseudonorm::Bounded(h) => Some(h),
        Pseudonorm::UnboundedAt(_) => None,
    };
    let mut report = PropertyReport {
        augmented,
        locally_finite,
        norm_used: None,
        intrinsic_norm: h
            .as_ref()
            .map(|h| q.elements().map(|a| (q.label(a).to_string(), h[a.index()])).collect()),
        maximally_decomposable: None,
        coconnected: None,
        pairwise_determined: None,
    };
    let normed = if q.norms().is_some() {
        report.norm_used = Some("given".into());
        q.clone()
    } else {
        match &h {
            Some(h) if validate_norm(q, h).holds => {
                report.norm_used = Some("intrinsic".into());
                q.with_norm(Some(h.clone()))?
            }
            _ => return Ok(report),
        }
    };
    let md = is_maximally_decomposable(&normed)?;
    let decomposable = md.holds;
    report.maximally_decomposable = Some(md);
    if decomposable {
        report.coconnected = Some(is_coconnected(&normed)?);
        let r = match r_max {
            Some(r) => r,
            None => default_r_max(&normed)?,
        };
        report.pairwise_determined = Some(is_pairwise_determined(&normed, r)?);
    }
    Ok(report)
}
