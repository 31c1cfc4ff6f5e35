//! Free groups `F^k` and the free sub-PMQs `FQ^k_l`.
//!
//! `FQ^k_l` is the unit of `F^k` together with all conjugates of the first
//! `l` generators `x_1, ..., x_l`; the product of two elements is defined
//! when the word-length norm is additive on them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::braid::Rack;
use crate::construct::PmqGroupPair;
use crate::error::{precondition, structural, Result};
use crate::pmq::Elem;

/// A word in `x_1^{±1}, ..., x_k^{±1}`: letter `±i` stands for `x_i^{±1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FreeWord(pub Vec<i32>);

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord(Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        FreeWord(vec![i as i32])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != -w[1])
    }

    pub fn inverse(&self) -> Self {
        FreeWord(self.0.iter().rev().map(|&x| -x).collect())
    }

    /// Concatenation followed by free reduction.
    pub fn mul(&self, other: &FreeWord) -> Self {
        let mut out = self.0.clone();
        for &x in &other.0 {
            if out.last() == Some(&-x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        FreeWord(out)
    }

    /// `other^{-1} self other`, reduced.
    pub fn conj(&self, other: &FreeWord) -> Self {
        other.inverse().mul(self).mul(other)
    }

    /// Exponent sums of the generators `x_1..x_k`.
    pub fn abelianization(&self, k: usize) -> Vec<i64> {
        let mut v = vec![0; k];
        for &x in &self.0 {
            v[x.unsigned_abs() as usize - 1] += x.signum() as i64;
        }
        v
    }

    /// Largest generator index used.
    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0)
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&x| if x > 0 { format!("x{x}") } else { format!("x{}^-1", -x) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Free reduction: cancels adjacent inverse letters until none remain.
pub fn free_reduce(w: &FreeWord) -> FreeWord {
    FreeWord::empty().mul(w)
}

/// The free group `F^k` acting on itself by conjugation.
#[derive(Copy, Clone, Debug)]
pub struct FreeGroup {
    pub k: usize,
}

impl Rack for FreeGroup {
    type Elem = FreeWord;

    fn conj(&self, a: &FreeWord, b: &FreeWord) -> FreeWord {
        a.conj(b)
    }

    fn conj_inv(&self, a: &FreeWord, b: &FreeWord) -> FreeWord {
        a.conj(&b.inverse())
    }
}

/// An element `w^{-1} x_ν w` of `FQ^k_l ∖ {1}` in normal form: `w` is
/// reduced and does not start with `x_ν^{±1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub nu: usize,
    pub w: FreeWord,
}

impl Factor {
    pub fn generator(nu: usize) -> Self {
        Factor { nu, w: FreeWord::empty() }
    }

    /// The reduced word `w^{-1} x_ν w`.
    pub fn value(&self) -> FreeWord {
        FreeWord::generator(self.nu).conj(&self.w)
    }
}

/// Membership of a word in `FQ^k_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FqMember {
    Unit,
    Conjugate(Factor),
}

/// Decides whether `g` lies in `FQ^k_l` and returns its normal form.
///
/// The input is reduced first. A nontrivial reduced conjugate
/// `w^{-1} x_ν w` (with `w` in normal form) is exactly a word of odd length
/// whose middle letter is `x_ν` and whose two halves are mutually inverse.
pub fn fq_decompose(g: &FreeWord, k: usize, l: usize) -> Option<FqMember> {
    if g.max_generator() > k || g.0.contains(&0) {
        return None;
    }
    let g = free_reduce(g);
    if g.is_empty() {
        return Some(FqMember::Unit);
    }
    let n = g.len();
    if n % 2 == 0 {
        return None;
    }
    let m = n / 2;
    let mid = g.0[m];
    if mid <= 0 || mid as usize > l {
        return None;
    }
    let w = FreeWord(g.0[m + 1..].to_vec());
    if FreeWord(g.0[..m].to_vec()) != w.inverse() {
        return None;
    }
    Some(FqMember::Conjugate(Factor { nu: mid as usize, w }))
}

/// `ψ(g) = a_ν^{φ(w)}` for `g = w^{-1} x_ν w`, where `φ(x_i) = e(a_i)` for
/// `i ≤ l` and `φ(x_i) = g_i` for `i > l`; the unit maps to the unit.
///
/// `q_targets` holds `a_1..a_l`, `g_targets` holds `g_{l+1}..g_k`.
pub fn evaluate_pair_map(pair: &PmqGroupPair, q_targets: &[Elem], g_targets: &[usize], g: &FreeWord) -> Result<Elem> {
    let l = q_targets.len();
    let k = l + g_targets.len();
    if g_targets.iter().any(|&x| x >= pair.group.len()) || q_targets.iter().any(|a| a.index() >= pair.pmq.len()) {
        return Err(structural("target outside the pair"));
    }
    let factor = match fq_decompose(g, k, l) {
        None => return Err(precondition(format!("{g:?} is not an element of FQ^{k}_{l}"))),
        Some(FqMember::Unit) => return Ok(pair.pmq.unit()),
        Some(FqMember::Conjugate(f)) => f,
    };
    let grp = &pair.group;
    let phi = |i: usize| if i <= l { pair.e(q_targets[i - 1]) } else { g_targets[i - l - 1] };
    let image = factor.w.0.iter().fold(grp.unit(), |acc, &x| {
        let y = phi(x.unsigned_abs() as usize);
        grp.mul(acc, if x > 0 { y } else { grp.inv(y) })
    });
    Ok(pair.act(q_targets[factor.nu - 1], image))
}
