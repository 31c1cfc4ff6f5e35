//! The PMQ-ring `R[Q]` over ℤ or 𝔽_p: basis `⟨a⟩`, product `⟨a⟩⟨b⟩ = ⟨ab⟩`
//! or 0. Quadratic presentations are checked by computing graded
//! dimensions of the quadratic quotient over ℚ.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{precondition, structural, Result};
use crate::homology::Coefficients;
use crate::linalg::{rank_rational, SparseMatrix};
use crate::perm::Perm;
use crate::pmq::{Elem, FinitePmq};
use crate::properties::{self, Verdict};
use crate::symgeo::monotone_decomposition;

/// A finitely supported combination of basis elements; zero coefficients
/// are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RingElem {
    terms: BTreeMap<Elem, BigInt>,
}

impl RingElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn terms(&self) -> &BTreeMap<Elem, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, a: Elem) -> BigInt {
        self.terms.get(&a).cloned().unwrap_or_default()
    }

    /// Homogeneous degree, if every term has the same norm.
    pub fn degree(&self, q: &FinitePmq) -> Option<u32> {
        let mut degs = self.terms.keys().map(|&a| q.norm(a));
        let first = degs.next()??;
        degs.all(|d| d == Some(first)).then_some(first)
    }
}

/// `R[Q]` for a fixed PMQ and coefficient ring.
pub struct PmqRing<'a> {
    q: &'a FinitePmq,
    coeff: Coefficients,
}

impl<'a> PmqRing<'a> {
    pub fn new(q: &'a FinitePmq, coeff: Coefficients) -> Result<Self> {
        if let Coefficients::Mod(p) = coeff {
            if p < 2 || p > 1 << 31 || !is_prime(p) {
                return Err(precondition(format!("{p} is not a prime at most 2^31")));
            }
        }
        Ok(PmqRing { q, coeff })
    }

    pub fn pmq(&self) -> &FinitePmq {
        self.q
    }

    fn reduce(&self, x: BigInt) -> BigInt {
        match self.coeff {
            Coefficients::Integers => x,
            Coefficients::Mod(p) => x.mod_floor(&BigInt::from(p)),
        }
    }

    fn add_term(&self, e: &mut RingElem, a: Elem, c: BigInt) {
        let v = self.reduce(e.coefficient(a) + c);
        if v.is_zero() {
            e.terms.remove(&a);
        } else {
            e.terms.insert(a, v);
        }
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Elem, i64)>) -> RingElem {
        let mut e = RingElem::zero();
        for (a, c) in terms {
            self.add_term(&mut e, a, BigInt::from(c));
        }
        e
    }

    pub fn basis(&self, a: Elem) -> RingElem {
        self.from_terms([(a, 1)])
    }

    pub fn one(&self) -> RingElem {
        self.basis(self.q.unit())
    }

    /// Sum of `⟨a⟩` over a set of elements.
    pub fn sum(&self, set: &[Elem]) -> RingElem {
        self.from_terms(set.iter().map(|&a| (a, 1)))
    }

    pub fn add(&self, x: &RingElem, y: &RingElem) -> RingElem {
        let mut out = x.clone();
        for (&a, c) in &y.terms {
            self.add_term(&mut out, a, c.clone());
        }
        out
    }

    pub fn sub(&self, x: &RingElem, y: &RingElem) -> RingElem {
        let mut out = x.clone();
        for (&a, c) in &y.terms {
            self.add_term(&mut out, a, -c.clone());
        }
        out
    }

    pub fn mul(&self, x: &RingElem, y: &RingElem) -> RingElem {
        let mut out = RingElem::zero();
        for (&a, c) in &x.terms {
            for (&b, d) in &y.terms {
                if let Some(ab) = self.q.prod(a, b) {
                    self.add_term(&mut out, ab, c * d);
                }
            }
        }
        out
    }

    /// `ε(⟨1⟩) = 1`, `ε(⟨a⟩) = 0` otherwise.
    pub fn augmentation(&self, x: &RingElem) -> BigInt {
        x.coefficient(self.q.unit())
    }

    pub fn to_json(&self, x: &RingElem) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = x
            .terms
            .iter()
            .map(|(&a, c)| (self.q.label(a).to_string(), serde_json::Value::String(c.to_string())))
            .collect();
        serde_json::Value::Object(map)
    }

    pub fn parse_json(&self, v: &serde_json::Value) -> Result<RingElem> {
        let obj = v.as_object().ok_or_else(|| structural("ring element must be a label→coefficient map"))?;
        let mut e = RingElem::zero();
        for (label, c) in obj {
            let a = self.q.elem_or_err(label)?;
            let c: BigInt = match c {
                serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
                serde_json::Value::String(s) => s.parse().ok(),
                _ => None,
            }
            .ok_or_else(|| structural(format!("bad coefficient for {label}")))?;
            self.add_term(&mut e, a, c);
        }
        Ok(e)
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `ε` is multiplicative on basis elements. Holds exactly when `Q` is
/// augmented.
pub fn augmentation_is_ring_map(q: &FinitePmq) -> bool {
    let r = PmqRing::new(q, Coefficients::Integers).expect("ℤ is always allowed");
    q.elements().all(|a| {
        q.elements().all(|b| {
            let (x, y) = (r.basis(a), r.basis(b));
            r.augmentation(&r.mul(&x, &y)) == r.augmentation(&x) * r.augmentation(&y)
        })
    })
}

/// A degree-2 relator over the generators `Q_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QuadRelator {
    /// `⟨a⟩⟨b⟩ = ⟨b⟩⟨a^b⟩`
    Exchange { a: usize, b: usize, c: usize, d: usize },
    /// `⟨a⟩⟨b⟩ = 0`
    Zero { a: usize, b: usize },
    /// `⟨a⟩⟨b⟩ = ⟨c⟩⟨d⟩` for two move classes of one product; only
    /// emitted by [`degree_two_presentation`].
    Merge { a: usize, b: usize, c: usize, d: usize },
}

/// Generators are indices into `generators` (the elements of `Q_1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticPresentation {
    pub generators: Vec<String>,
    #[serde(skip)]
    pub generator_elems: Vec<Elem>,
    pub relators: Vec<QuadRelator>,
}

fn degree_one(q: &FinitePmq) -> Result<Vec<Elem>> {
    let norm = q.require_norm("the PMQ-ring presentation")?;
    Ok(q.elements().filter(|a| norm[a.index()] == 1).collect())
}

fn require(v: Verdict, what: &str) -> Result<()> {
    if v.holds {
        Ok(())
    } else {
        Err(precondition(format!("not {what}: {}", v.witness.unwrap_or_default())))
    }
}

fn exchange_and_zero(q: &FinitePmq, gens: &[Elem]) -> Vec<QuadRelator> {
    let pos = |x: Elem| gens.iter().position(|&g| g == x).expect("Q_1 is conjugation-closed");
    let mut out = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for (j, &b) in gens.iter().enumerate() {
            let ab = q.conj(a, b);
            if (i, j) != (j, pos(ab)) {
                out.push(QuadRelator::Exchange { a: i, b: j, c: j, d: pos(ab) });
            }
        }
    }
    for (i, &a) in gens.iter().enumerate() {
        for (j, &b) in gens.iter().enumerate() {
            if q.prod(a, b).is_none() {
                out.push(QuadRelator::Zero { a: i, b: j });
            }
        }
    }
    out
}

/// The presentation with one generator per norm-1 element, the exchange
/// relators `⟨a⟩⟨b⟩ = ⟨b⟩⟨a^b⟩` and the zero relators for undefined
/// products. Refuses unless `Q` is maximally decomposable, coconnected and
/// pairwise determined (up to the default bound).
pub fn quadratic_presentation(q: &FinitePmq) -> Result<QuadraticPresentation> {
    let gens = degree_one(q)?;
    require(properties::is_maximally_decomposable(q)?, "maximally decomposable")?;
    let co = properties::is_coconnected(q)?;
    if !co.holds {
        return Err(precondition(format!("not coconnected: {}", co.witness.unwrap_or_default())));
    }
    let pd = properties::is_pairwise_determined(q, properties::default_r_max(q)?)?;
    if !pd.holds_up_to_bound {
        return Err(precondition(format!(
            "not pairwise determined: {}",
            pd.witness.map(|w| w.join(" ")).unwrap_or_default()
        )));
    }
    Ok(QuadraticPresentation {
        generators: gens.iter().map(|&a| q.label(a).to_string()).collect(),
        relators: exchange_and_zero(q, &gens),
        generator_elems: gens,
    })
}

/// All of `ker(R⟨Q_1⟩ → R[Q])` in degree 2: the relators of
/// [`quadratic_presentation`] plus one merge relator per extra move class
/// of norm-2 decompositions. Needs only a norm and maximal decomposability;
/// whether it presents `R[Q]` is then a question for [`hilbert_check`].
pub fn degree_two_presentation(q: &FinitePmq) -> Result<QuadraticPresentation> {
    let gens = degree_one(q)?;
    require(properties::is_maximally_decomposable(q)?, "maximally decomposable")?;
    let norm = q.require_norm("the PMQ-ring presentation")?;
    let pos = |x: Elem| gens.iter().position(|&g| g == x).unwrap();
    let mut relators = exchange_and_zero(q, &gens);
    for c in q.elements().filter(|c| norm[c.index()] == 2) {
        let decs = properties::decompositions(q, norm, c);
        let orbits = properties::move_orbits(q, &decs);
        let reps: Vec<Vec<Elem>> = orbits.iter().map(|o| o.iter().min().unwrap().clone()).collect();
        for w in reps.windows(2) {
            relators.push(QuadRelator::Merge { a: pos(w[0][0]), b: pos(w[0][1]), c: pos(w[1][0]), d: pos(w[1][1]) });
        }
    }
    Ok(QuadraticPresentation {
        generators: gens.iter().map(|&a| q.label(a).to_string()).collect(),
        relators,
        generator_elems: gens,
    })
}

impl QuadraticPresentation {
    /// Each relator as a list of `(coefficient, generator word)` terms.
    pub fn relator_terms(&self) -> Vec<Vec<(i64, [usize; 2])>> {
        self.relators
            .iter()
            .map(|r| match *r {
                QuadRelator::Exchange { a, b, c, d } | QuadRelator::Merge { a, b, c, d } => {
                    vec![(1, [a, b]), (-1, [c, d])]
                }
                QuadRelator::Zero { a, b } => vec![(1, [a, b])],
            })
            .collect()
    }

    /// One relator per line, `x y - z w` or `x y`.
    pub fn to_text(&self) -> String {
        let g = |i: usize| format!("<{}>", self.generators[i]);
        self.relator_terms()
            .iter()
            .map(|t| match t.as_slice() {
                [(_, [a, b])] => format!("{} {}", g(*a), g(*b)),
                [(_, [a, b]), (_, [c, d])] => format!("{} {} - {} {}", g(*a), g(*b), g(*c), g(*d)),
                _ => unreachable!(),
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Dimension over ℚ of the degree-`nu` part of the quadratic quotient
    /// `T(V)/(relators)`, by the rank of the ideal's degree-`nu` part.
    pub fn quotient_dimension(&self, nu: u32) -> usize {
        let m = self.generators.len();
        if nu == 0 {
            return 1;
        }
        let total = m.pow(nu);
        if nu == 1 {
            return total;
        }
        let terms = self.relator_terms();
        let mut rows = Vec::new();
        for k in 0..(nu - 1) {
            let left = m.pow(k);
            let right = m.pow(nu - 2 - k);
            for l in 0..left {
                for r in 0..right {
                    for t in &terms {
                        let mut row = BTreeMap::new();
                        for &(c, [x, y]) in t {
                            let col = ((l * m + x) * m + y) * right + r;
                            *row.entry(col).or_insert(0i64) += c;
                        }
                        row.retain(|_, v| *v != 0);
                        if !row.is_empty() {
                            rows.push(row);
                        }
                    }
                }
            }
        }
        let mut mat = SparseMatrix::zero(rows.len(), total);
        for (i, row) in rows.iter().enumerate() {
            for (&c, &v) in row {
                mat.add(i, c, v);
            }
        }
        total - rank_rational(&mat)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertRow {
    pub degree: u32,
    pub quotient_dim: usize,
    pub elements: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertReport {
    pub rows: Vec<HilbertRow>,
    pub matches: bool,
}

/// Compares the quotient's graded dimensions with `|Q_ν|` for `ν ≤ max_degree`.
pub fn hilbert_check(q: &FinitePmq, p: &QuadraticPresentation, max_degree: u32) -> Result<HilbertReport> {
    q.require_norm("a Hilbert series comparison")?;
    let rows: Vec<HilbertRow> = (0..=max_degree)
        .map(|nu| HilbertRow { degree: nu, quotient_dim: p.quotient_dimension(nu), elements: q.of_norm(nu).len() })
        .collect();
    let matches = rows.iter().all(|r| r.quotient_dim == r.elements);
    Ok(HilbertReport { rows, matches })
}

/// Generators and relators of the quadratic dual: generators `⟨a⟩'` for
/// `a ∈ Q_1`, and for each `c ∈ Q_2` the relator `Σ_{ab=c} ⟨a⟩'⟨b⟩'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticDual {
    pub generators: Vec<String>,
    /// `(c, pairs (a, b) with ab = c)`, by label.
    pub relators: Vec<(String, Vec<(String, String)>)>,
}

/// Needs a norm, maximal decomposability and local finiteness; the
/// relators are meaningful as the dual whenever the ring is quadratic.
pub fn quadratic_dual(q: &FinitePmq) -> Result<QuadraticDual> {
    let gens = degree_one(q)?;
    require(properties::is_maximally_decomposable(q)?, "maximally decomposable")?;
    require(properties::is_locally_finite(q), "locally finite")?;
    let relators = q
        .of_norm(2)
        .into_iter()
        .map(|c| {
            let pairs = gens
                .iter()
                .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
                .filter(|&(a, b)| q.prod(a, b) == Some(c))
                .map(|(a, b)| (q.label(a).to_string(), q.label(b).to_string()))
                .collect();
            (q.label(c).to_string(), pairs)
        })
        .collect();
    Ok(QuadraticDual { generators: gens.iter().map(|&a| q.label(a).to_string()).collect(), relators })
}

/// `⟨S⟩⟨b⟩ = ⟨b⟩⟨S⟩` for every conjugacy class `S` and element `b`.
pub fn class_sum_centrality(q: &FinitePmq) -> Verdict {
    let r = PmqRing::new(q, Coefficients::Integers).expect("ℤ is always allowed");
    for class in q.conjugacy_classes() {
        let s = r.sum(&class);
        for b in q.elements() {
            let x = r.basis(b);
            if r.mul(&s, &x) != r.mul(&x, &s) {
                let labels: Vec<&str> = class.iter().map(|&a| q.label(a)).collect();
                return Verdict {
                    holds: false,
                    witness: Some(format!("⟨{{{}}}⟩ does not commute with ⟨{}⟩", labels.join(","), q.label(b))),
                    note: None,
                };
            }
        }
    }
    Verdict { holds: true, witness: None, note: None }
}

/// The invariant subring as a ℚ-space, from the linear system
/// `λ_{a^b} = λ_a`, compared against the span of the class sums.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub dimension: usize,
    pub classes: usize,
    pub class_sums_invariant: bool,
    pub matches: bool,
}

pub fn invariant_subring(q: &FinitePmq) -> InvariantReport {
    let n = q.len();
    let mut rows = Vec::new();
    for a in q.elements() {
        for b in q.elements() {
            let c = q.conj(a, b);
            if c != a {
                rows.push((a.index(), c.index()));
            }
        }
    }
    let mut m = SparseMatrix::zero(rows.len(), n);
    for (i, &(a, c)) in rows.iter().enumerate() {
        m.add(i, a, 1);
        m.add(i, c, -1);
    }
    let dimension = n - rank_rational(&m);
    let classes = q.conjugacy_classes();
    let class_sums_invariant = classes.iter().all(|s| {
        q.elements().all(|b| {
            let mut image: Vec<Elem> = s.iter().map(|&a| q.conj(a, b)).collect();
            image.sort();
            image.dedup();
            let mut orig = s.clone();
            orig.sort();
            image == orig
        })
    });
    InvariantReport {
        dimension,
        classes: classes.len(),
        class_sums_invariant,
        matches: class_sums_invariant && dimension == classes.len(),
    }
}

/// Census of monomials `⟨τ_1⟩…⟨τ_p⟩` in transpositions of strictly
/// increasing height, against the standard basis of `R[S_d^geo]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PbwCensus {
    pub d: usize,
    pub monomials: usize,
    /// `d!`
    pub expected: usize,
    /// Pairs not reducible to smaller pairs are exactly those with
    /// increasing heights.
    pub admissible_pairs_by_height: bool,
    /// Every monomial is the monotone decomposition of its product, and
    /// products are pairwise distinct.
    pub bijective: bool,
}

impl PbwCensus {
    pub fn passed(&self) -> bool {
        self.monomials == self.expected && self.admissible_pairs_by_height && self.bijective
    }
}

/// Generators ordered by `(height, smaller point)`.
fn ordered_transpositions(d: usize) -> Vec<Perm> {
    let mut ts = Perm::transpositions(d);
    ts.sort_by_key(|t| {
        let (x, y) = t.as_transposition().unwrap();
        (x.max(y), x.min(y))
    });
    ts
}

pub fn pbw_check_sdgeo(d: usize) -> Result<PbwCensus> {
    if d < 2 {
        return Err(precondition("PBW census needs d >= 2"));
    }
    let ts = ordered_transpositions(d);
    let n = ts.len();
    // (τ, τ') is admissible iff ⟨τ⟩⟨τ'⟩ is nonzero and no smaller pair has
    // the same product.
    let mut admissible_ok = true;
    for i in 0..n {
        for j in 0..n {
            let prod = ts[i].compose(&ts[j]);
            let nonzero = prod.norm() == 2;
            let smaller = (0..n)
                .flat_map(|k| (0..n).map(move |l| (k, l)))
                .take_while(|&(k, l)| (k, l) < (i, j))
                .any(|(k, l)| ts[k].compose(&ts[l]) == prod);
            let admissible = nonzero && !smaller;
            admissible_ok &= admissible == (ts[i].height() < ts[j].height());
        }
    }
    let mut products = Vec::new();
    let mut bijective = true;
    let mut stack: Vec<Vec<usize>> = vec![vec![]];
    while let Some(mono) = stack.pop() {
        let factors: Vec<Perm> = mono.iter().map(|&i| ts[i].clone()).collect();
        let sigma = factors.iter().fold(Perm::identity(d), |acc, t| acc.compose(t));
        bijective &= sigma.norm() as usize == mono.len() && monotone_decomposition(&sigma) == factors;
        products.push(sigma);
        let last_height = mono.last().map_or(0, |&i| ts[i].height());
        for (i, t) in ts.iter().enumerate() {
            if t.height() > last_height {
                let mut next = mono.clone();
                next.push(i);
                stack.push(next);
            }
        }
    }
    let monomials = products.len();
    products.sort();
    products.dedup();
    bijective &= products.len() == monomials;
    Ok(PbwCensus {
        d,
        monomials,
        expected: (1..=d).product(),
        admissible_pairs_by_height: admissible_ok,
        bijective,
    })
}

/// Degree of a product of homogeneous elements is the sum of degrees.
pub fn grading_is_additive(q: &FinitePmq) -> Result<bool> {
    let norm = q.require_norm("the grading")?;
    Ok(q.elements().all(|a| {
        q.elements().all(|b| q.prod(a, b).map_or(true, |c| norm[c.index()] == norm[a.index()] + norm[b.index()]))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn perm_elem(q: &FinitePmq, cycles: &str) -> Elem {
        q.elem(cycles).unwrap_or_else(|| panic!("no element {cycles}"))
    }

    #[test]
    fn basis_products_in_sd_geo() {
        let q = catalog::sd_geo(3);
        let r = PmqRing::new(&q, Coefficients::Integers).unwrap();
        let t12 = r.basis(perm_elem(&q, "(1,2)"));
        let t23 = r.basis(perm_elem(&q, "(2,3)"));
        let t13 = r.basis(perm_elem(&q, "(1,3)"));
        assert!(r.mul(&t12, &t12).is_zero());
        assert_eq!(r.mul(&t12, &t23), r.mul(&t23, &t13));
        assert_eq!(r.mul(&t23, &t13), r.mul(&t13, &t12));
        assert_eq!(r.mul(&r.one(), &t12), t12);
        assert_eq!(r.mul(&t12, &t23).degree(&q), Some(2));
    }

    #[test]
    fn modular_coefficients_reduce() {
        let q = catalog::truncated_naturals(2);
        let r = PmqRing::new(&q, Coefficients::Mod(3)).unwrap();
        let x = r.from_terms([(q.elem("1").unwrap(), 2)]);
        let sq = r.mul(&x, &x);
        assert_eq!(sq.coefficient(q.elem("2").unwrap()), BigInt::from(1));
        assert!(PmqRing::new(&q, Coefficients::Mod(4)).is_err());
        let json = r.to_json(&sq);
        assert_eq!(r.parse_json(&json).unwrap(), sq);
    }

    #[test]
    fn augmentation_matches_property() {
        for q in [catalog::sd_geo(3), catalog::segre(), catalog::truncated_naturals(3)] {
            assert_eq!(augmentation_is_ring_map(&q), properties::is_augmented(&q).holds);
            assert!(augmentation_is_ring_map(&q));
        }
        let g = crate::group::FiniteGroup::cyclic(3).as_pmq();
        assert!(!augmentation_is_ring_map(&g));
        assert!(!properties::is_augmented(&g).holds);
    }

    #[test]
    fn sd_geo_presentation_dimensions() {
        let q = catalog::sd_geo(3);
        let p = quadratic_presentation(&q).unwrap();
        let h = hilbert_check(&q, &p, 3).unwrap();
        let dims: Vec<usize> = h.rows.iter().map(|r| r.quotient_dim).collect();
        assert_eq!(dims, vec![1, 3, 2, 0]);
        assert!(h.matches);
    }

    #[test]
    fn one_generator_square_zero() {
        let q = catalog::truncated_naturals(1);
        let p = quadratic_presentation(&q).unwrap();
        assert_eq!(p.relators, vec![QuadRelator::Zero { a: 0, b: 0 }]);
        assert!(hilbert_check(&q, &p, 3).unwrap().matches);
    }

    #[test]
    fn segre_needs_merge_relator() {
        let q = catalog::segre();
        assert!(matches!(quadratic_presentation(&q), Err(crate::Error::Precondition(_))));
        let p = degree_two_presentation(&q).unwrap();
        let merges: Vec<_> = p.relators.iter().filter(|r| matches!(r, QuadRelator::Merge { .. })).collect();
        assert_eq!(merges.len(), 1);
        assert!(p.to_text().contains("<a> <b> - <a'> <b'>"));
        assert!(hilbert_check(&q, &p, 3).unwrap().matches);
    }

    #[test]
    fn truncation_is_not_quadratic() {
        let q = catalog::truncated_naturals(2);
        assert!(quadratic_presentation(&q).is_err());
        let p = degree_two_presentation(&q).unwrap();
        let h = hilbert_check(&q, &p, 3).unwrap();
        assert!(!h.matches);
        assert_eq!(h.rows[3].quotient_dim, 1);
    }

    #[test]
    fn duals() {
        let q = catalog::truncated_naturals(2);
        let d = quadratic_dual(&q).unwrap();
        assert_eq!(d.generators, vec!["1"]);
        assert_eq!(d.relators, vec![("2".to_string(), vec![("1".to_string(), "1".to_string())])]);
        let s3 = quadratic_dual(&catalog::sd_geo(3)).unwrap();
        assert_eq!(s3.relators.len(), 2);
        assert!(s3.relators.iter().all(|(_, pairs)| pairs.len() == 3));
        let unit = quadratic_dual(&catalog::unit_pmq()).unwrap();
        assert!(unit.generators.is_empty() && unit.relators.is_empty());
    }

    #[test]
    fn class_sums_central_and_span_invariants() {
        for q in [catalog::sd_geo(3), catalog::sd_geo(4), catalog::segre()] {
            assert!(class_sum_centrality(&q).holds);
            assert!(invariant_subring(&q).matches);
        }
        let q = catalog::sd_geo(3);
        let (a, b) = (perm_elem(&q, "(1,2)"), perm_elem(&q, "(2,3)"));
        // ab replaced by ba, the other 3-cycle
        let broken = q.with_prod_entry(a, b, q.prod(b, a));
        let v = class_sum_centrality(&broken);
        assert!(!v.holds && v.witness.is_some());
    }

    #[test]
    fn pbw_counts() {
        for (d, n) in [(2, 2), (3, 6), (4, 24)] {
            let c = pbw_check_sdgeo(d).unwrap();
            assert_eq!(c.monomials, n);
            assert!(c.passed());
        }
    }

    #[test]
    fn grading() {
        assert!(grading_is_additive(&catalog::sd_geo(4)).unwrap());
        assert!(grading_is_additive(&catalog::transposition_quandle(3)).unwrap());
    }
}
