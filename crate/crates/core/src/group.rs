//! Finite groups given by multiplication tables.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{axiom, structural, Result};
use crate::perm::Perm;
use crate::pmq::FinitePmq;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    mult: Vec<usize>,
    inv: Vec<usize>,
    unit: usize,
}

impl FiniteGroup {
    /// Builds a group from a multiplication table, checking all group axioms.
    pub fn from_table(labels: Vec<String>, mult: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(structural("group must be nonempty"));
        }
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let c = mult(a, b);
                if c >= n {
                    return Err(structural(format!("group product ({a},{b}) out of range")));
                }
                table.push(c);
            }
        }
        let m = |a: usize, b: usize| table[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(axiom(format!(
                            "group product is not associative at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let unit = (0..n)
            .find(|&e| (0..n).all(|a| m(e, a) == a && m(a, e) == a))
            .ok_or_else(|| axiom("group has no unit"))?;
        let mut inv = vec![0; n];
        for (a, slot) in inv.iter_mut().enumerate() {
            *slot = (0..n)
                .find(|&b| m(a, b) == unit && m(b, a) == unit)
                .ok_or_else(|| axiom(format!("{} has no inverse", labels[a])))?;
        }
        Ok(FiniteGroup { labels, mult: table, inv, unit })
    }

    /// Group on a list of elements of any hashable type, closed under an
    /// associative product; element order and labels follow the list.
    pub fn from_elements<T: Clone + Eq + Hash>(
        elements: Vec<T>,
        label: impl Fn(&T) -> String,
        mul: impl Fn(&T, &T) -> T,
    ) -> Result<Self> {
        let n = elements.len();
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut table = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                let c = index
                    .get(&mul(a, b))
                    .copied()
                    .ok_or_else(|| structural("element list not closed under the product"))?;
                table.push(c);
            }
        }
        Self::from_table(elements.iter().map(label).collect(), |a, b| table[a * n + b])
    }

    /// `S_d` with elements in lexicographic order of one-line images,
    /// labelled in cycle notation.
    pub fn symmetric(d: usize) -> Self {
        Self::from_elements(Perm::all(d), |p| p.cycle_string(), |a, b| a.compose(b))
            .expect("symmetric group tables are valid")
    }

    /// `Z/n` labelled `0..n`.
    pub fn cyclic(n: usize) -> Self {
        Self::from_table((0..n).map(|i| i.to_string()).collect(), |a, b| (a + b) % n)
            .expect("cyclic group tables are valid")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.len() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `b^{-1} a b`.
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Product of a word of elements.
    pub fn product(&self, word: &[usize]) -> usize {
        word.iter().fold(self.unit, |acc, &b| self.mul(acc, b))
    }

    /// The group as a complete PMQ: conjugation `b^{-1}ab`, total product.
    pub fn as_pmq(&self) -> FinitePmq {
        FinitePmq::from_fn(
            self.labels.clone(),
            self.unit,
            |a, b| self.conj(a, b),
            |a, b| Some(self.mul(a, b)),
            None,
        )
        .expect("group tables are well formed")
    }

    /// Subgroup generated by `gens`, as a sorted list of elements.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        seen[self.unit] = true;
        let mut queue = vec![self.unit];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
        (0..self.len()).filter(|&x| seen[x]).collect()
    }

    pub fn is_central(&self, a: usize) -> bool {
        (0..self.len()).all(|b| self.mul(a, b) == self.mul(b, a))
    }
}
