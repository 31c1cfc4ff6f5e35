//! Finitely generated free chain complexes and their homology.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{precondition, Result};
use crate::linalg::{rank_mod_p, smith_invariants, SparseMatrix};

/// `C_n` free of rank `ranks[n]`, with `∂_n : C_n → C_{n-1}` stored as a
/// `rank(C_{n-1}) × rank(C_n)` matrix. Missing degrees are zero.
#[derive(Clone, Debug, Default)]
pub struct ChainComplex {
    ranks: BTreeMap<i64, usize>,
    boundaries: BTreeMap<i64, SparseMatrix>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Integers,
    /// A prime field.
    Mod(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    /// Free rank over ℤ, or dimension over 𝔽_p.
    pub rank: usize,
    /// Torsion coefficients (integer coefficients only), each > 1.
    #[serde(skip_serializing_if = "Vec::is_empty", serialize_with = "as_strings")]
    pub torsion: Vec<BigInt>,
}

fn as_strings<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free_of_rank(&self, r: usize) -> bool {
        self.rank == r && self.torsion.is_empty()
    }
}

impl ChainComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_rank(&mut self, n: i64, rank: usize) {
        self.ranks.insert(n, rank);
    }

    pub fn rank(&self, n: i64) -> usize {
        self.ranks.get(&n).copied().unwrap_or(0)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.ranks.iter().filter(|(_, &r)| r > 0).map(|(&n, _)| n)
    }

    /// Sets `∂_n`; its shape must match the ranks.
    pub fn set_boundary(&mut self, n: i64, m: SparseMatrix) -> Result<()> {
        if m.nrows() != self.rank(n - 1) || m.ncols() != self.rank(n) {
            return Err(precondition(format!(
                "boundary in degree {n} is {}x{}, expected {}x{}",
                m.nrows(),
                m.ncols(),
                self.rank(n - 1),
                self.rank(n)
            )));
        }
        self.boundaries.insert(n, m);
        Ok(())
    }

    pub fn boundary(&self, n: i64) -> SparseMatrix {
        self.boundaries
            .get(&n)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zero(self.rank(n - 1), self.rank(n)))
    }

    /// Degree of the first failure of `∂_{n-1} ∂_n = 0`, if any.
    pub fn square_zero_failure(&self) -> Option<i64> {
        self.boundaries.keys().copied().find(|&n| {
            self.boundaries
                .get(&(n - 1))
                .map_or(false, |lower| !lower.mul(&self.boundaries[&n]).is_zero())
        })
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks.iter().map(|(&n, &r)| if n % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
    }

    /// Homology in every degree where the complex is nonzero; zero groups
    /// are included so callers can see which degrees were computed.
    pub fn homology(&self, coeff: Coefficients) -> Result<BTreeMap<i64, HomologyGroup>> {
        if let Some(n) = self.square_zero_failure() {
            return Err(precondition(format!("∂∂ ≠ 0 at degree {n}")));
        }
        let mut invariants: BTreeMap<i64, Vec<BigInt>> = BTreeMap::new();
        let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
        for (&n, m) in &self.boundaries {
            match coeff {
                Coefficients::Integers => {
                    let inv = smith_invariants(m);
                    ranks.insert(n, inv.len());
                    invariants.insert(n, inv);
                }
                Coefficients::Mod(p) => {
                    ranks.insert(n, rank_mod_p(m, p));
                }
            }
        }
        let mut out = BTreeMap::new();
        for n in self.degrees().collect::<Vec<_>>() {
            let out_rank = ranks.get(&n).copied().unwrap_or(0);
            let in_rank = ranks.get(&(n + 1)).copied().unwrap_or(0);
            let torsion = invariants
                .get(&(n + 1))
                .map(|v| v.iter().filter(|x| !x.is_one()).cloned().collect())
                .unwrap_or_default();
            out.insert(n, HomologyGroup { rank: self.rank(n) - out_rank - in_rank, torsion });
        }
        Ok(out)
    }
}

/// Only the nonzero groups.
pub fn nonzero(h: &BTreeMap<i64, HomologyGroup>) -> BTreeMap<i64, HomologyGroup> {
    h.iter().filter(|(_, g)| !g.is_zero()).map(|(&n, g)| (n, g.clone())).collect()
}
