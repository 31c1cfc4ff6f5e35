//! Tabulated finite partially multiplicative quandles.

use std::collections::HashMap;
use std::fmt;

use crate::error::{precondition, structural, Result};

/// Index of an element in the declaration order of its structure.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Elem(pub u32);

impl Elem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for Elem {
    fn from(i: usize) -> Self {
        Elem(i as u32)
    }
}

/// A finite set with unit, total conjugation `a^b` and partial product `ab`.
///
/// Construction only checks that the tables are well formed; the axioms are
/// checked by [`crate::validate::validate`]. Operations elsewhere in the crate
/// assume a validated structure.
#[derive(Clone, PartialEq, Eq)]
pub struct FinitePmq {
    labels: Vec<String>,
    lookup: HashMap<String, Elem>,
    unit: Elem,
    conj: Vec<Elem>,
    conj_inv: Option<Vec<Elem>>,
    prod: Vec<Option<Elem>>,
    norm: Option<Vec<u32>>,
}

impl fmt::Debug for FinitePmq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinitePmq")
            .field("elements", &self.labels)
            .field("unit", &self.label(self.unit))
            .finish_non_exhaustive()
    }
}

impl FinitePmq {
    /// Builds a structure from closures over element indices.
    pub fn from_fn(
        labels: Vec<String>,
        unit: usize,
        conj: impl Fn(usize, usize) -> usize,
        prod: impl Fn(usize, usize) -> Option<usize>,
        norm: Option<Vec<u32>>,
    ) -> Result<Self> {
        let n = labels.len();
        let mut conj_table = Vec::with_capacity(n * n);
        let mut prod_table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let c = conj(a, b);
                if c >= n {
                    return Err(structural(format!("conjugation entry ({a},{b}) out of range")));
                }
                conj_table.push(Elem::from(c));
                let p = prod(a, b);
                if let Some(p) = p {
                    if p >= n {
                        return Err(structural(format!("product entry ({a},{b}) out of range")));
                    }
                }
                prod_table.push(p.map(Elem::from));
            }
        }
        Self::from_tables(labels, unit, conj_table, prod_table, norm)
    }

    /// Builds a structure from row-major tables (`conj[a*n+b] = a^b`).
    pub fn from_tables(
        labels: Vec<String>,
        unit: usize,
        conj: Vec<Elem>,
        prod: Vec<Option<Elem>>,
        norm: Option<Vec<u32>>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(structural("element set is empty"));
        }
        if unit >= n {
            return Err(structural("unit is not an element"));
        }
        let mut lookup = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if lookup.insert(l.clone(), Elem::from(i)).is_some() {
                return Err(structural(format!("duplicate element label {l:?}")));
            }
        }
        if conj.len() != n * n || prod.len() != n * n {
            return Err(structural("table size does not match element count"));
        }
        if conj.iter().chain(prod.iter().flatten()).any(|e| e.index() >= n) {
            return Err(structural("table entry outside the element set"));
        }
        if let Some(nm) = &norm {
            if nm.len() != n {
                return Err(structural("norm must assign a value to every element"));
            }
        }
        let conj_inv = invert_columns(&conj, n);
        Ok(FinitePmq {
            labels,
            lookup,
            unit: Elem::from(unit),
            conj,
            conj_inv,
            prod,
            norm,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Elem> + ExactSizeIterator + Clone {
        (0..self.labels.len() as u32).map(Elem)
    }

    /// Elements other than the unit, in declaration order.
    pub fn nonunits(&self) -> Vec<Elem> {
        self.elements().filter(|&a| a != self.unit).collect()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a.index()]
    }

    pub fn elem(&self, label: &str) -> Option<Elem> {
        self.lookup.get(label).copied()
    }

    pub fn elem_or_err(&self, label: &str) -> Result<Elem> {
        self.elem(label)
            .ok_or_else(|| structural(format!("unknown element label {label:?}")))
    }

    pub fn unit(&self) -> Elem {
        self.unit
    }

    /// `a^b`.
    pub fn conj(&self, a: Elem, b: Elem) -> Elem {
        self.conj[a.index() * self.len() + b.index()]
    }

    /// `a^{b^{-1}}`, the preimage of `a` under `(-)^b`.
    ///
    /// Panics if some conjugation map is not a bijection; validate first.
    pub fn conj_inv(&self, a: Elem, b: Elem) -> Elem {
        let t = self
            .conj_inv
            .as_ref()
            .expect("conjugation maps are not bijective; validate the structure first");
        t[a.index() * self.len() + b.index()]
    }

    pub fn has_bijective_conjugation(&self) -> bool {
        self.conj_inv.is_some()
    }

    /// `ab` when defined.
    pub fn prod(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.prod[a.index() * self.len() + b.index()]
    }

    /// Ordered product of a sequence, `None` when undefined.
    pub fn product_of(&self, seq: &[Elem]) -> Option<Elem> {
        seq.iter()
            .try_fold(self.unit, |acc, &b| self.prod(acc, b))
    }

    pub fn norm(&self, a: Elem) -> Option<u32> {
        self.norm.as_ref().map(|n| n[a.index()])
    }

    pub fn norms(&self) -> Option<&[u32]> {
        self.norm.as_deref()
    }

    /// The norm table, or a precondition error naming `op`.
    pub fn require_norm(&self, op: &str) -> Result<&[u32]> {
        self.norm
            .as_deref()
            .ok_or_else(|| precondition(format!("{op} requires a normed PMQ")))
    }

    pub fn max_norm(&self) -> Option<u32> {
        self.norm.as_ref().map(|n| n.iter().copied().max().unwrap_or(0))
    }

    /// Elements of norm exactly `nu`, in declaration order.
    pub fn of_norm(&self, nu: u32) -> Vec<Elem> {
        match &self.norm {
            Some(n) => self.elements().filter(|a| n[a.index()] == nu).collect(),
            None => Vec::new(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.conj(a, b) == a))
    }

    /// Same tables with the given norm.
    pub fn with_norm(&self, norm: Option<Vec<u32>>) -> Result<Self> {
        Self::from_tables(
            self.labels.clone(),
            self.unit.index(),
            self.conj.clone(),
            self.prod.clone(),
            norm,
        )
    }

    /// Copy with one conjugation entry replaced.
    pub fn with_conj_entry(&self, a: Elem, b: Elem, c: Elem) -> Self {
        let mut conj = self.conj.clone();
        conj[a.index() * self.len() + b.index()] = c;
        Self::from_tables(self.labels.clone(), self.unit.index(), conj, self.prod.clone(), self.norm.clone())
            .expect("entry within the element set")
    }

    /// Copy with one product entry replaced.
    pub fn with_prod_entry(&self, a: Elem, b: Elem, c: Option<Elem>) -> Self {
        let mut prod = self.prod.clone();
        prod[a.index() * self.len() + b.index()] = c;
        Self::from_tables(self.labels.clone(), self.unit.index(), self.conj.clone(), prod, self.norm.clone())
            .expect("entry within the element set")
    }

    /// Restriction of all tables to `keep` (which must contain the unit).
    ///
    /// Conjugation must be closed on `keep`; products leaving `keep` become
    /// undefined.
    pub fn restrict(&self, keep: &[Elem]) -> Result<Self> {
        let mut pos = vec![usize::MAX; self.len()];
        for (i, a) in keep.iter().enumerate() {
            pos[a.index()] = i;
        }
        if pos[self.unit.index()] == usize::MAX {
            return Err(structural("restriction must contain the unit"));
        }
        for &a in keep {
            for &b in keep {
                if pos[self.conj(a, b).index()] == usize::MAX {
                    return Err(structural(format!(
                        "restriction is not closed under conjugation: {}^{}",
                        self.label(a),
                        self.label(b)
                    )));
                }
            }
        }
        let labels = keep.iter().map(|&a| self.labels[a.index()].clone()).collect();
        let norm = self
            .norm
            .as_ref()
            .map(|n| keep.iter().map(|a| n[a.index()]).collect());
        Self::from_fn(
            labels,
            pos[self.unit.index()],
            |i, j| pos[self.conj(keep[i], keep[j]).index()],
            |i, j| {
                self.prod(keep[i], keep[j])
                    .map(|c| pos[c.index()])
                    .filter(|&c| c != usize::MAX)
            },
            norm,
        )
    }

    /// Orbits of the conjugation action, each sorted, ordered by least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Elem>> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for a in self.elements() {
            for b in self.elements() {
                let (x, y) = (find(&mut parent, a.index()), find(&mut parent, self.conj(a, b).index()));
                if x != y {
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
        let mut classes: Vec<Vec<Elem>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for a in 0..n {
            let r = find(&mut parent, a);
            if slot[r] == usize::MAX {
                slot[r] = classes.len();
                classes.push(Vec::new());
            }
            classes[slot[r]].push(Elem::from(a));
        }
        classes
    }

    /// Labels of a sequence of elements.
    pub fn labels_of(&self, seq: &[Elem]) -> Vec<String> {
        seq.iter().map(|&a| self.label(a).to_string()).collect()
    }

    /// Parses a sequence of labels.
    pub fn parse_seq<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<Elem>> {
        labels.iter().map(|l| self.elem_or_err(l.as_ref())).collect()
    }
}

fn invert_columns(conj: &[Elem], n: usize) -> Option<Vec<Elem>> {
    let mut inv = vec![Elem(u32::MAX); n * n];
    for b in 0..n {
        for a in 0..n {
            let c = conj[a * n + b].index();
            if inv[c * n + b].0 != u32::MAX {
                return None;
            }
            inv[c * n + b] = Elem::from(a);
        }
    }
    Some(inv)
}
