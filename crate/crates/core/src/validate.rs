//! Exhaustive axiom checking.

use serde::Serialize;

use crate::pmq::{Elem, FinitePmq};

/// One axiom of a PMQ (or of its norm).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    /// `(-)^b` is a bijection for every `b`.
    ConjBijective,
    /// `1^a = 1` and `a^1 = a`.
    ConjUnit,
    /// `a^a = a`.
    ConjIdempotent,
    /// `(a^b)^c = (a^c)^(b^c)`.
    ConjSelfDistributive,
    /// `1a` and `a1` are defined and equal `a`.
    ProdUnit,
    /// `ab` and `(ab)c` defined iff `bc` and `a(bc)` defined, and then equal.
    ProdAssociative,
    /// `ab` defined iff `b(a^b)` defined, and then equal.
    ProdSwap,
    /// `a^(bc) = (a^b)^c` whenever `bc` is defined.
    ConjByProduct,
    /// `ab` defined iff `a^c b^c` defined, and `(ab)^c = a^c b^c`.
    ProdEquivariant,
    /// `N(a) = 0` iff `a = 1`.
    NormKernel,
    /// `N(ab) = N(a) + N(b)` whenever `ab` is defined.
    NormAdditive,
    /// `N(a^b) = N(a)`.
    NormConjInvariant,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::ConjBijective => "conj-bijective",
            Axiom::ConjUnit => "conj-unit",
            Axiom::ConjIdempotent => "conj-idempotent",
            Axiom::ConjSelfDistributive => "conj-self-distributive",
            Axiom::ProdUnit => "prod-unit",
            Axiom::ProdAssociative => "prod-associative",
            Axiom::ProdSwap => "prod-swap",
            Axiom::ConjByProduct => "conj-by-product",
            Axiom::ProdEquivariant => "prod-equivariant",
            Axiom::NormKernel => "norm-kernel",
            Axiom::NormAdditive => "norm-additive",
            Axiom::NormConjInvariant => "norm-conj-invariant",
        }
    }
}

/// A violated axiom with the first witness tuple in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<Elem>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    /// Human-readable one-line summary using element labels.
    pub fn describe(&self, q: &FinitePmq) -> String {
        self.violations
            .iter()
            .map(|v| format!("{} at ({})", v.axiom.name(), q.labels_of(&v.witness).join(", ")))
            .collect::<Vec<_>>()
            .join("; ")
    }

    pub fn to_json(&self, q: &FinitePmq) -> serde_json::Value {
        let list: Vec<_> = self
            .violations
            .iter()
            .map(|v| serde_json::json!({"axiom": v.axiom.name(), "witness": q.labels_of(&v.witness)}))
            .collect();
        serde_json::json!({"valid": self.is_valid(), "violations": list})
    }
}

/// Checks every PMQ axiom, plus the norm axioms when a norm is present.
pub fn validate(q: &FinitePmq) -> ValidationReport {
    check(q, true)
}

/// As [`validate`] but without `a^a = a` (partially multiplicative racks).
pub fn validate_rack(q: &FinitePmq) -> ValidationReport {
    check(q, false)
}

fn check(q: &FinitePmq, idempotent: bool) -> ValidationReport {
    let mut out = Vec::new();
    let mut push = |axiom, witness: Option<Vec<Elem>>| {
        if let Some(witness) = witness {
            out.push(Violation { axiom, witness });
        }
    };
    let els: Vec<Elem> = q.elements().collect();
    let u = q.unit();

    push(Axiom::ConjBijective, first2(&els, |a, b| {
        // a collides with an earlier element under (-)^b
        els.iter().take_while(|&&c| c < a).any(|&c| q.conj(c, b) == q.conj(a, b))
    }));
    push(Axiom::ConjUnit, els.iter().find(|&&a| q.conj(u, a) != u || q.conj(a, u) != a).map(|&a| vec![a]));
    if idempotent {
        push(Axiom::ConjIdempotent, els.iter().find(|&&a| q.conj(a, a) != a).map(|&a| vec![a]));
    }
    push(Axiom::ConjSelfDistributive, first3(&els, |a, b, c| {
        q.conj(q.conj(a, b), c) != q.conj(q.conj(a, c), q.conj(b, c))
    }));
    push(Axiom::ProdUnit, els.iter().find(|&&a| q.prod(u, a) != Some(a) || q.prod(a, u) != Some(a)).map(|&a| vec![a]));
    push(Axiom::ProdAssociative, first3(&els, |a, b, c| {
        let left = q.prod(a, b).and_then(|ab| q.prod(ab, c));
        let right = q.prod(b, c).and_then(|bc| q.prod(a, bc));
        left != right
    }));
    push(Axiom::ProdSwap, first2(&els, |a, b| q.prod(a, b) != q.prod(b, q.conj(a, b))));
    push(Axiom::ConjByProduct, first3(&els, |a, b, c| match q.prod(b, c) {
        Some(bc) => q.conj(a, bc) != q.conj(q.conj(a, b), c),
        None => false,
    }));
    push(Axiom::ProdEquivariant, first3(&els, |a, b, c| {
        q.prod(a, b).map(|ab| q.conj(ab, c)) != q.prod(q.conj(a, c), q.conj(b, c))
    }));

    if let Some(n) = q.norms() {
        let nm = |a: Elem| n[a.index()];
        push(Axiom::NormKernel, els.iter().find(|&&a| (nm(a) == 0) != (a == u)).map(|&a| vec![a]));
        push(Axiom::NormAdditive, first2(&els, |a, b| match q.prod(a, b) {
            Some(ab) => nm(ab) != nm(a) + nm(b),
            None => false,
        }));
        push(Axiom::NormConjInvariant, first2(&els, |a, b| nm(q.conj(a, b)) != nm(a)));
    }
    ValidationReport { violations: out }
}

fn first2(els: &[Elem], bad: impl Fn(Elem, Elem) -> bool) -> Option<Vec<Elem>> {
    for &a in els {
        for &b in els {
            if bad(a, b) {
                return Some(vec![a, b]);
            }
        }
    }
    None
}

fn first3(els: &[Elem], bad: impl Fn(Elem, Elem, Elem) -> bool) -> Option<Vec<Elem>> {
    for &a in els {
        for &b in els {
            for &c in els {
                if bad(a, b, c) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}
