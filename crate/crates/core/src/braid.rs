//! Standard moves (the Hurwitz action of braid generators) on tuples.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{precondition, Result};
use crate::perm::Perm;
use crate::pmq::{Elem, FinitePmq};

/// A structure with a right self-action `a ↦ a^b` that is invertible in `a`.
pub trait Rack {
    type Elem: Clone + PartialEq;

    /// `a^b`.
    fn conj(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// `a^{b^{-1}}`.
    fn conj_inv(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

impl Rack for FinitePmq {
    type Elem = Elem;

    fn conj(&self, a: &Elem, b: &Elem) -> Elem {
        FinitePmq::conj(self, *a, *b)
    }

    fn conj_inv(&self, a: &Elem, b: &Elem) -> Elem {
        FinitePmq::conj_inv(self, *a, *b)
    }
}

/// Permutations under conjugation `s^t = t^{-1} s t`.
#[derive(Copy, Clone, Debug, Default)]
pub struct PermConj;

impl Rack for PermConj {
    type Elem = Perm;

    fn conj(&self, a: &Perm, b: &Perm) -> Perm {
        a.conj(b)
    }

    fn conj_inv(&self, a: &Perm, b: &Perm) -> Perm {
        a.conj(&b.inverse())
    }
}

/// A standard move at 1-based position `i` acting on entries `i, i+1`.
///
/// Serialized as a signed position: `+i` for `(a, b) ↦ (b, a^b)`, `-i` for
/// `(a, b) ↦ (b^{a^{-1}}, a)`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Move(pub i32);

impl Move {
    pub fn positive(i: usize) -> Self {
        Move(i as i32)
    }

    pub fn negative(i: usize) -> Self {
        Move(-(i as i32))
    }

    pub fn position(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn inverse(self) -> Self {
        Move(-self.0)
    }
}

impl fmt::Debug for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.0)
    }
}

/// Applies one standard move in place.
pub fn braid_act<R: Rack>(rack: &R, tuple: &mut [R::Elem], m: Move) -> Result<()> {
    let i = m.position();
    if i == 0 || i >= tuple.len() {
        return Err(precondition(format!(
            "move position {} out of range for a tuple of length {}",
            i,
            tuple.len()
        )));
    }
    let (a, b) = (tuple[i - 1].clone(), tuple[i].clone());
    if m.is_positive() {
        tuple[i] = rack.conj(&a, &b);
        tuple[i - 1] = b;
    } else {
        tuple[i - 1] = rack.conj_inv(&b, &a);
        tuple[i] = a;
    }
    Ok(())
}

/// Applies a move log left to right, returning the resulting tuple.
pub fn apply_log<R: Rack>(rack: &R, tuple: &[R::Elem], log: &[Move]) -> Result<Vec<R::Elem>> {
    let mut t = tuple.to_vec();
    for &m in log {
        braid_act(rack, &mut t, m)?;
    }
    Ok(t)
}

/// The log undoing `log`.
pub fn inverse_log(log: &[Move]) -> Vec<Move> {
    log.iter().rev().map(|m| m.inverse()).collect()
}
