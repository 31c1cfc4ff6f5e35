//! Arrays of the double bar construction and the relative chain complex of
//! (all arrays, non-admissible arrays).
//!
//! An array of bidegree `(p, q)` has `p + 2` columns of `q + 2` entries.
//! Entries are stored column-major (`i` outer, `j` inner), which is also the
//! order in which they are multiplied to get the total grading.
//!
//! The chain complex in a fixed grading `b` has one generator per
//! admissible (unit border, entries in `Q`) non-degenerate (no inner row or
//! column of units) array with total product `b`, in degree `p + q`. The
//! differential on bidegree `(p, q)` is
//! `Σ_i (-1)^i d^h_i + (-1)^p Σ_j (-1)^j d^v_j`, where a face that leaves
//! the admissible arrays contributes zero. For the outer faces `d_0` and
//! `d_p` this is the augmentation rule: the merged border column must be all
//! units.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::completion::{Completion, HatElem};
use crate::error::{precondition, structural, Result};
use crate::homology::{nonzero, ChainComplex, Coefficients, HomologyGroup};
use crate::linalg::SparseMatrix;
use crate::pmq::{Elem, FinitePmq};
use crate::properties;

/// A `(p+2) × (q+2)` array over `Q̂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BisimplexArray {
    p: usize,
    q: usize,
    entries: Vec<HatElem>,
}

impl BisimplexArray {
    /// `entries` column-major, `(p+2)(q+2)` of them.
    pub fn new(p: usize, q: usize, entries: Vec<HatElem>) -> Result<Self> {
        if entries.len() != (p + 2) * (q + 2) {
            return Err(structural(format!("a ({p},{q}) array has {} entries, not {}", (p + 2) * (q + 2), entries.len())));
        }
        Ok(BisimplexArray { p, q, entries })
    }

    pub fn from_grid(c: &Completion, g: &Grid) -> Self {
        BisimplexArray { p: g.p, q: g.q, entries: g.cells.iter().map(|&a| c.hat(a)).collect() }
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn get(&self, i: usize, j: usize) -> &HatElem {
        &self.entries[i * (self.q + 2) + j]
    }

    pub fn column(&self, i: usize) -> &[HatElem] {
        &self.entries[i * (self.q + 2)..(i + 1) * (self.q + 2)]
    }

    /// Merges columns `i` and `i+1`: entry `j` becomes
    /// `a_{i,j}^{c_j} a_{i+1,j}` with `c_j = a_{i+1,0} ⋯ a_{i+1,j-1}`.
    pub fn h_face(&self, c: &Completion, i: usize) -> Result<Self> {
        if self.p == 0 || i > self.p {
            return Err(structural(format!("no horizontal face {i} in bidegree ({},{})", self.p, self.q)));
        }
        let (left, right) = (self.column(i), self.column(i + 1));
        let mut prefix = c.unit();
        let mut merged = Vec::with_capacity(self.q + 2);
        for j in 0..self.q + 2 {
            merged.push(c.hat_mul(&c.hat_conj(&left[j], &prefix), &right[j]));
            prefix = c.hat_mul(&prefix, &right[j]);
        }
        let mut entries = Vec::with_capacity(self.p * (self.q + 2) + self.q + 2);
        for k in 0..self.p + 2 {
            if k == i {
                entries.extend(merged.iter().cloned());
            } else if k != i + 1 {
                entries.extend_from_slice(self.column(k));
            }
        }
        Ok(BisimplexArray { p: self.p - 1, q: self.q, entries })
    }

    /// Merges rows `j` and `j+1` entrywise.
    pub fn v_face(&self, c: &Completion, j: usize) -> Result<Self> {
        if self.q == 0 || j > self.q {
            return Err(structural(format!("no vertical face {j} in bidegree ({},{})", self.p, self.q)));
        }
        let mut entries = Vec::with_capacity((self.p + 2) * (self.q + 1));
        for i in 0..self.p + 2 {
            let col = self.column(i);
            for k in 0..self.q + 2 {
                if k == j {
                    entries.push(c.hat_mul(&col[j], &col[j + 1]));
                } else if k != j + 1 {
                    entries.push(col[k].clone());
                }
            }
        }
        Ok(BisimplexArray { p: self.p, q: self.q - 1, entries })
    }

    /// Inserts a column of units between columns `i` and `i+1`.
    pub fn h_degen(&self, c: &Completion, i: usize) -> Result<Self> {
        if i > self.p {
            return Err(structural(format!("no horizontal degeneracy {i} in bidegree ({},{})", self.p, self.q)));
        }
        let mut entries = Vec::with_capacity((self.p + 3) * (self.q + 2));
        for k in 0..self.p + 2 {
            entries.extend_from_slice(self.column(k));
            if k == i {
                entries.extend(std::iter::repeat(c.unit()).take(self.q + 2));
            }
        }
        Ok(BisimplexArray { p: self.p + 1, q: self.q, entries })
    }

    /// Inserts a row of units between rows `j` and `j+1`.
    pub fn v_degen(&self, c: &Completion, j: usize) -> Result<Self> {
        if j > self.q {
            return Err(structural(format!("no vertical degeneracy {j} in bidegree ({},{})", self.p, self.q)));
        }
        let mut entries = Vec::with_capacity((self.p + 2) * (self.q + 3));
        for i in 0..self.p + 2 {
            for (k, x) in self.column(i).iter().enumerate() {
                entries.push(x.clone());
                if k == j {
                    entries.push(c.unit());
                }
            }
        }
        Ok(BisimplexArray { p: self.p, q: self.q + 1, entries })
    }

    /// Some inner column or inner row consists of units.
    pub fn is_degenerate(&self) -> bool {
        (1..=self.p).any(|i| self.column(i).iter().all(HatElem::is_unit))
            || (1..=self.q).any(|j| (0..self.p + 2).all(|i| self.get(i, j).is_unit()))
    }

    /// Unit border and every entry in `Q`.
    pub fn is_admissible(&self) -> bool {
        (0..self.p + 2).all(|i| {
            (0..self.q + 2).all(|j| {
                let x = self.get(i, j);
                let border = i == 0 || i == self.p + 1 || j == 0 || j == self.q + 1;
                if border {
                    x.is_unit()
                } else {
                    x.is_unit() || x.as_single().is_some()
                }
            })
        })
    }

    /// Column-major product of all entries.
    pub fn total_grading(&self, c: &Completion) -> HatElem {
        c.product(&self.entries)
    }

    /// The grid of an admissible array.
    pub fn to_grid(&self, c: &Completion) -> Option<Grid> {
        if !self.is_admissible() {
            return None;
        }
        let u = c.pmq().unit();
        Some(Grid { p: self.p, q: self.q, cells: self.entries.iter().map(|x| x.as_single().unwrap_or(u)).collect() })
    }

    /// Columns of entries, each entry as its canonical label sequence.
    pub fn to_labels(&self, c: &Completion) -> Vec<Vec<Vec<String>>> {
        (0..self.p + 2).map(|i| self.column(i).iter().map(|x| c.labels(x)).collect()).collect()
    }
}

/// An array whose entries all lie in `Q`, column-major including the
/// border. Used for the chain complex, where only such arrays occur.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grid {
    pub p: usize,
    pub q: usize,
    pub cells: Vec<Elem>,
}

impl Grid {
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.cells[i * (self.q + 2) + j]
    }

    pub fn degree(&self) -> i64 {
        (self.p + self.q) as i64
    }

    /// Inner entries `(i, j, a)` that are not the unit.
    pub fn nonunits(&self, unit: Elem) -> impl Iterator<Item = (usize, usize, Elem)> + '_ {
        (1..=self.p).flat_map(move |i| (1..=self.q).map(move |j| (i, j, self.get(i, j)))).filter(move |t| t.2 != unit)
    }

    fn border_is_unit(&self, unit: Elem) -> bool {
        (0..self.p + 2).all(|i| {
            (0..self.q + 2).all(|j| !(i == 0 || i == self.p + 1 || j == 0 || j == self.q + 1) || self.get(i, j) == unit)
        })
    }

    fn is_degenerate(&self, unit: Elem) -> bool {
        (1..=self.p).any(|i| (0..self.q + 2).all(|j| self.get(i, j) == unit))
            || (1..=self.q).any(|j| (0..self.p + 2).all(|i| self.get(i, j) == unit))
    }

    /// Horizontal face computed inside `Q`; `None` when some merged entry
    /// leaves `Q`.
    fn h_face(&self, q: &FinitePmq, i: usize) -> Option<Grid> {
        let rows = self.q + 2;
        let mut merged = Vec::with_capacity(rows);
        for j in 0..rows {
            let conj = (0..j).fold(self.get(i, j), |acc, k| q.conj(acc, self.get(i + 1, k)));
            merged.push(q.prod(conj, self.get(i + 1, j))?);
        }
        let mut cells = Vec::with_capacity((self.p + 1) * rows);
        for k in 0..self.p + 2 {
            if k == i {
                cells.extend_from_slice(&merged);
            } else if k != i + 1 {
                cells.extend_from_slice(&self.cells[k * rows..(k + 1) * rows]);
            }
        }
        Some(Grid { p: self.p - 1, q: self.q, cells })
    }

    fn v_face(&self, q: &FinitePmq, j: usize) -> Option<Grid> {
        let mut cells = Vec::with_capacity((self.p + 2) * (self.q + 1));
        for i in 0..self.p + 2 {
            for k in 0..self.q + 2 {
                if k == j {
                    cells.push(q.prod(self.get(i, j), self.get(i, j + 1))?);
                } else if k != j + 1 {
                    cells.push(self.get(i, k));
                }
            }
        }
        Some(Grid { p: self.p, q: self.q - 1, cells })
    }

    /// Rows of labels, top row `j = q+1` first, border omitted.
    pub fn inner_labels(&self, q: &FinitePmq) -> Vec<Vec<String>> {
        (1..=self.q).rev().map(|j| (1..=self.p).map(|i| q.label(self.get(i, j)).to_string()).collect()).collect()
    }
}

/// Admissible non-degenerate arrays of total norm `n`, grouped by total
/// grading. Bidegrees are at most `(n, n)`: each inner row and column
/// holds a nonunit, and nonunits have positive norm.
pub fn arrays_by_grading(c: &Completion, n: u32) -> BTreeMap<HatElem, Vec<Grid>> {
    let q = c.pmq();
    let unit = q.unit();
    let mut out: BTreeMap<HatElem, Vec<Grid>> = BTreeMap::new();
    if n == 0 {
        out.insert(c.unit(), vec![Grid { p: 0, q: 0, cells: vec![unit; 4] }]);
        return out;
    }
    let norms: Vec<u32> = q.elements().map(|a| q.norm(a).unwrap_or(0)).collect();
    let nonunits = q.nonunits();
    let n = n as usize;
    for p in 1..=n {
        for qq in 1..=n {
            if p.max(qq) > n {
                continue;
            }
            let mut g = Grid { p, q: qq, cells: vec![unit; (p + 2) * (qq + 2)] };
            let mut row_hits = vec![0usize; qq + 2];
            fill(c, &norms, &nonunits, &mut g, 1, 1, n as u32, false, &mut row_hits, &mut out);
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn fill(
    c: &Completion,
    norms: &[u32],
    nonunits: &[Elem],
    g: &mut Grid,
    i: usize,
    j: usize,
    rem: u32,
    column_hit: bool,
    row_hits: &mut [usize],
    out: &mut BTreeMap<HatElem, Vec<Grid>>,
) {
    let (p, qq) = (g.p, g.q);
    if i > p {
        if rem == 0 && (1..=qq).all(|r| row_hits[r] > 0) {
            let seq: Vec<Elem> = g.nonunits(c.pmq().unit()).map(|t| t.2).collect();
            out.entry(c.canonical_form(&seq)).or_default().push(g.clone());
        }
        return;
    }
    let columns_left = (p - i + 1) as u32 - u32::from(column_hit);
    let rows_missing = (1..=qq).filter(|&r| row_hits[r] == 0).count() as u32;
    if rem < columns_left.max(rows_missing) {
        return;
    }
    let (ni, nj, last_in_column) = if j == qq { (i + 1, 1, true) } else { (i, j + 1, false) };
    // unit entry
    if !(last_in_column && !column_hit) {
        fill(c, norms, nonunits, g, ni, nj, rem, column_hit && !last_in_column, row_hits, out);
    }
    for &a in nonunits {
        let na = norms[a.index()];
        if na > rem {
            continue;
        }
        let idx = i * (qq + 2) + j;
        g.cells[idx] = a;
        row_hits[j] += 1;
        fill(c, norms, nonunits, g, ni, nj, rem - na, !last_in_column, row_hits, out);
        row_hits[j] -= 1;
        g.cells[idx] = c.pmq().unit();
    }
}

/// All admissible non-degenerate arrays of total grading `b`.
pub fn enumerate_arrays(c: &Completion, b: &HatElem) -> Vec<Grid> {
    arrays_by_grading(c, b.norm()).remove(b).unwrap_or_default()
}

/// The relative chain complex in one grading, with its basis.
#[derive(Clone, Debug)]
pub struct RelativeComplex {
    pub grading: HatElem,
    pub basis: BTreeMap<i64, Vec<Grid>>,
    pub complex: ChainComplex,
}

impl RelativeComplex {
    pub fn rank(&self, n: i64) -> usize {
        self.basis.get(&n).map_or(0, Vec::len)
    }

    pub fn index_of(&self, g: &Grid) -> Option<usize> {
        self.basis.get(&g.degree())?.binary_search(g).ok()
    }

    pub fn homology(&self, coeff: Coefficients) -> Result<BTreeMap<i64, HomologyGroup>> {
        self.complex.homology(coeff)
    }
}

/// Builds the complex in grading `b`.
pub fn build_relative_complex(c: &Completion, b: &HatElem) -> Result<RelativeComplex> {
    complex_from_arrays(c, b, enumerate_arrays(c, b))
}

/// Builds the complex from a precomputed list of arrays of grading `b`.
pub fn complex_from_arrays(c: &Completion, b: &HatElem, arrays: Vec<Grid>) -> Result<RelativeComplex> {
    let q = c.pmq();
    let unit = q.unit();
    let mut basis: BTreeMap<i64, Vec<Grid>> = BTreeMap::new();
    for g in arrays {
        basis.entry(g.degree()).or_default().push(g);
    }
    for v in basis.values_mut() {
        v.sort();
    }
    let mut complex = ChainComplex::new();
    for (&n, v) in &basis {
        complex.set_rank(n, v.len());
    }
    let index: HashMap<&Grid, usize> =
        basis.values().flat_map(|v| v.iter().enumerate().map(|(k, g)| (g, k))).collect();
    for (&n, v) in &basis {
        let lower = basis.get(&(n - 1)).map_or(0, Vec::len);
        let mut d = SparseMatrix::zero(lower, v.len());
        for (col, g) in v.iter().enumerate() {
            let faces = (0..=g.p)
                .filter(|_| g.p > 0)
                .map(|i| (if i % 2 == 0 { 1 } else { -1 }, g.h_face(q, i)))
                .chain((0..=g.q).filter(|_| g.q > 0).map(|j| {
                    let s = if (g.p + j) % 2 == 0 { 1 } else { -1 };
                    (s, g.v_face(q, j))
                }));
            for (sign, face) in faces {
                let Some(f) = face else { continue };
                if !f.border_is_unit(unit) || f.is_degenerate(unit) {
                    continue;
                }
                let row = *index.get(&f).ok_or_else(|| {
                    structural(format!("face of an array of grading {:?} left the grading", c.labels(b)))
                })?;
                d.add(row, col, sign);
            }
        }
        complex.set_boundary(n, d)?;
    }
    if let Some(n) = complex.square_zero_failure() {
        return Err(structural(format!("∂∂ ≠ 0 in degree {n}")));
    }
    Ok(RelativeComplex { grading: b.clone(), basis, complex })
}

/// Restriction along an injective augmented map `ψ: Q → Q'` (given by
/// element images): an array over `Q'` whose entries all come from `Q`
/// goes to its preimage, any other array to zero. `src` is the complex of
/// `Q'` in grading `ψ(b)`, `dst` that of `Q` in grading `b`.
pub fn restriction_map(src: &RelativeComplex, dst: &RelativeComplex, psi: &[Elem]) -> BTreeMap<i64, SparseMatrix> {
    let pre: HashMap<Elem, Elem> = psi.iter().enumerate().map(|(i, &b)| (b, Elem(i as u32))).collect();
    let mut out = BTreeMap::new();
    for (&n, v) in &src.basis {
        let mut m = SparseMatrix::zero(dst.rank(n), v.len());
        for (col, g) in v.iter().enumerate() {
            let cells: Option<Vec<Elem>> = g.cells.iter().map(|x| pre.get(x).copied()).collect();
            if let Some(cells) = cells {
                if let Some(row) = dst.index_of(&Grid { p: g.p, q: g.q, cells }) {
                    m.add(row, col, 1);
                }
            }
        }
        out.insert(n, m);
    }
    out
}

/// `f ∂ = ∂ f` in every degree.
pub fn is_chain_map(src: &RelativeComplex, dst: &RelativeComplex, f: &BTreeMap<i64, SparseMatrix>) -> bool {
    let degrees: Vec<i64> = src.basis.keys().copied().collect();
    degrees.into_iter().all(|n| {
        let zero = |r, c| SparseMatrix::zero(r, c);
        let f_n = f.get(&n).cloned().unwrap_or_else(|| zero(dst.rank(n), src.rank(n)));
        let f_lower = f.get(&(n - 1)).cloned().unwrap_or_else(|| zero(dst.rank(n - 1), src.rank(n - 1)));
        f_lower.mul(&src.complex.boundary(n)).to_dense() == dst.complex.boundary(n).mul(&f_n).to_dense()
    })
}

/// Homology of the complex in one grading given by labels.
pub fn homology_in_grading(q: &FinitePmq, grading: &[impl AsRef<str>], coeff: Coefficients) -> Result<HomologyTable> {
    let c = Completion::new(q)?;
    let b = c.parse(grading)?;
    let rc = build_relative_complex(&c, &b)?;
    HomologyTable::new(&c, &rc, coeff)
}

/// Ranks and homology of one complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyTable {
    pub grading: Vec<String>,
    pub ranks: BTreeMap<i64, usize>,
    pub euler_characteristic: i64,
    #[serde(rename = "H")]
    pub homology: BTreeMap<i64, HomologyGroup>,
}

impl HomologyTable {
    pub fn new(c: &Completion, rc: &RelativeComplex, coeff: Coefficients) -> Result<Self> {
        Ok(HomologyTable {
            grading: c.labels(&rc.grading),
            ranks: rc.basis.iter().map(|(&n, v)| (n, v.len())).collect(),
            euler_characteristic: rc.complex.euler_characteristic(),
            homology: nonzero(&rc.homology(coeff)?),
        })
    }

    /// `degree,rank,torsion` lines, torsion as `;`-separated divisors.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,chain_rank,homology_rank,torsion\n");
        let degrees: std::collections::BTreeSet<i64> = self.ranks.keys().chain(self.homology.keys()).copied().collect();
        for n in degrees {
            let h = self.homology.get(&n);
            let torsion: Vec<String> = h.map(|h| h.torsion.iter().map(|t| t.to_string()).collect()).unwrap_or_default();
            let _ = writeln!(
                out,
                "{n},{},{},{}",
                self.ranks.get(&n).copied().unwrap_or(0),
                h.map_or(0, |h| h.rank),
                torsion.join(";")
            );
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingCheck {
    pub grading: Vec<String>,
    pub norm: u32,
    pub top_degree: Option<i64>,
    pub expected_top_degree: i64,
    /// The top group is `ℤ`.
    pub fundamental_class: bool,
}

/// Necessary conditions for the Poincare property. Passing does not
/// certify that the Hurwitz spaces are manifolds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoincareReport {
    pub maximally_decomposable: bool,
    pub intrinsic_norm_equals_norm: bool,
    pub coconnected: bool,
    pub budget: u32,
    pub gradings: Vec<GradingCheck>,
    pub necessary_conditions_passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

pub fn poincare_report(q: &FinitePmq, budget: u32) -> Result<PoincareReport> {
    let norm = q.require_norm("the Poincare diagnostics")?.to_vec();
    if !properties::is_locally_finite(q).holds {
        return Err(precondition("not locally finite"));
    }
    let c = Completion::new(q)?;
    let maximally_decomposable = properties::is_maximally_decomposable(q)?.holds;
    let intrinsic_norm_equals_norm = matches!(
        properties::intrinsic_pseudonorm(q, q.len() as u32),
        properties::Pseudonorm::Bounded(h) if h == norm
    );
    let coconnected = maximally_decomposable && properties::is_coconnected(q)?.holds;
    let mut witness = None;
    if !maximally_decomposable {
        witness = Some("not maximally decomposable".to_string());
    } else if !intrinsic_norm_equals_norm {
        witness = Some("the intrinsic pseudonorm differs from the norm".to_string());
    } else if !coconnected {
        witness = Some("not coconnected".to_string());
    }
    let mut gradings = Vec::new();
    for n in 0..=budget {
        for (b, arrays) in arrays_by_grading(&c, n) {
            let rc = complex_from_arrays(&c, &b, arrays)?;
            let h = nonzero(&rc.homology(Coefficients::Integers)?);
            let top = h.keys().next_back().copied();
            let expected = 2 * n as i64;
            let fundamental_class = top == Some(expected) && h[&expected].is_free_of_rank(1);
            if !fundamental_class && witness.is_none() {
                let got = match top {
                    None => "zero homology".to_string(),
                    Some(t) => format!("top degree {t} with rank {} and torsion {:?}", h[&t].rank, h[&t].torsion),
                };
                witness = Some(format!("grading {}: {got}, expected ℤ in degree {expected}", c.labels(&b).join(" ")));
            }
            gradings.push(GradingCheck {
                grading: c.labels(&b),
                norm: n,
                top_degree: top,
                expected_top_degree: expected,
                fundamental_class,
            });
        }
    }
    Ok(PoincareReport {
        maximally_decomposable,
        intrinsic_norm_equals_norm,
        coconnected,
        budget,
        necessary_conditions_passed: witness.is_none(),
        gradings,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use proptest::prelude::*;

    fn table(q: &FinitePmq, grading: &[&str]) -> HomologyTable {
        homology_in_grading(q, grading, Coefficients::Integers).unwrap()
    }

    #[test]
    fn unit_grading_has_only_the_border_array() {
        let q = catalog::truncated_naturals(2);
        let c = Completion::new(&q).unwrap();
        let arrays = enumerate_arrays(&c, &c.unit());
        assert_eq!(arrays.len(), 1);
        assert_eq!((arrays[0].p, arrays[0].q), (0, 0));
    }

    #[test]
    fn one_generator_square_zero_is_a_point_pair() {
        let t = table(&catalog::truncated_naturals(1), &["1"]);
        assert_eq!(t.ranks, BTreeMap::from([(2, 1)]));
        assert!(t.homology[&2].is_free_of_rank(1));
    }

    #[test]
    fn truncated_two_in_grading_two() {
        let q = catalog::truncated_naturals(2);
        let c = Completion::new(&q).unwrap();
        let b = c.parse(&["2"]).unwrap();
        let arrays = enumerate_arrays(&c, &b);
        assert_eq!(arrays.len(), 5);
        let t = table(&q, &["2"]);
        assert_eq!(t.ranks, BTreeMap::from([(2, 1), (3, 2), (4, 2)]));
        assert_eq!(t.euler_characteristic, 1);
        assert_eq!(t.homology.len(), 1);
        assert!(t.homology[&4].is_free_of_rank(1));
        assert!(t.to_csv().starts_with("degree,chain_rank,homology_rank,torsion\n2,1,0,\n"));
    }

    #[test]
    fn single_transposition_grading() {
        let q = catalog::sd_geo(3);
        let c = Completion::new(&q).unwrap();
        let b = c.parse(&["(1,2)"]).unwrap();
        assert_eq!(enumerate_arrays(&c, &b).len(), 1);
        let mut total = 0;
        for (_, arrays) in arrays_by_grading(&c, 1) {
            total += arrays.len();
        }
        assert_eq!(total, 3);
    }

    #[test]
    fn hurwitz_three_sheeted_cover() {
        let q = catalog::transposition_quandle(3);
        let t = table(&q, &["(1,2)", "(1,3)"]);
        let ranks: Vec<(i64, usize)> = t.homology.iter().map(|(&n, h)| (n, h.rank)).collect();
        assert_eq!(ranks, vec![(3, 1), (4, 1)]);
    }

    #[test]
    fn segre_is_not_poincare() {
        let q = catalog::segre();
        let t = table(&q, &["c"]);
        assert_eq!(t.homology[&4].rank, 2);
        let r = poincare_report(&q, 2).unwrap();
        assert!(!r.necessary_conditions_passed);
        assert!(!r.coconnected);
    }

    #[test]
    fn poincare_examples_pass() {
        assert!(poincare_report(&catalog::truncated_naturals(2), 2).unwrap().necessary_conditions_passed);
        assert!(poincare_report(&catalog::transposition_quandle(3), 2).unwrap().necessary_conditions_passed);
        assert!(poincare_report(&catalog::sd_geo(3), 2).unwrap().necessary_conditions_passed);
    }

    #[test]
    fn restriction_is_a_chain_map() {
        let small = catalog::truncated_naturals(1);
        let big = catalog::truncated_naturals(2);
        let (cs, cb) = (Completion::new(&small).unwrap(), Completion::new(&big).unwrap());
        let psi: Vec<Elem> = vec![big.elem("0").unwrap(), big.elem("1").unwrap()];
        for n in 1..=3u32 {
            let b_small = cs.parse(&vec!["1"; n as usize]).unwrap();
            let b_big = cb.parse(&vec!["1"; n as usize]).unwrap();
            let dst = build_relative_complex(&cs, &b_small).unwrap();
            let src = build_relative_complex(&cb, &b_big).unwrap();
            let f = restriction_map(&src, &dst, &psi);
            assert!(is_chain_map(&src, &dst, &f), "grading {n}");
        }
    }

    #[test]
    fn outer_faces_leave_admissible_arrays() {
        let q = catalog::truncated_naturals(2);
        let g = Grid { p: 1, q: 1, cells: vec![q.unit(), q.unit(), q.unit(), q.unit(), q.elem("2").unwrap(), q.unit(), q.unit(), q.unit(), q.unit()] };
        let f = g.h_face(&q, 0).unwrap();
        assert!(!f.border_is_unit(q.unit()));
        assert_eq!(g.inner_labels(&q), vec![vec!["2".to_string()]]);
    }

    /// Units except at up to `picks.len()` positions, so the total norm
    /// (and hence the size of move classes) stays small.
    fn random_array(c: &Completion, p: usize, qq: usize, picks: &[(usize, usize)]) -> BisimplexArray {
        let pool: Vec<HatElem> = c
            .pmq()
            .nonunits()
            .into_iter()
            .map(|a| c.hat(a))
            .chain(c.classes_at_norm(2))
            .collect();
        let size = (p + 2) * (qq + 2);
        let mut entries = vec![c.unit(); size];
        for &(pos, x) in picks {
            entries[pos % size] = pool[x % pool.len()].clone();
        }
        BisimplexArray::new(p, qq, entries).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn bisimplicial_identities(p in 2usize..4, qq in 2usize..4, picks in proptest::collection::vec((0usize..64, 0usize..64), 1..4)) {
            let q = catalog::sd_geo(3);
            let c = Completion::new(&q).unwrap();
            let a = random_array(&c, p, qq, &picks);
            let grading = a.total_grading(&c);
            for i in 0..=p {
                let di = a.h_face(&c, i).unwrap();
                prop_assert_eq!(di.total_grading(&c), grading.clone());
                for j in (i + 1)..=p {
                    prop_assert_eq!(a.h_face(&c, j).unwrap().h_face(&c, i).unwrap(), di.h_face(&c, j - 1).unwrap());
                }
                for j in 0..=qq {
                    prop_assert_eq!(di.v_face(&c, j).unwrap(), a.v_face(&c, j).unwrap().h_face(&c, i).unwrap());
                }
                prop_assert_eq!(a.h_degen(&c, i).unwrap().h_face(&c, i).unwrap(), a.clone());
                prop_assert_eq!(a.h_degen(&c, i).unwrap().h_face(&c, i + 1).unwrap(), a.clone());
            }
            for j in 0..=qq {
                let dj = a.v_face(&c, j).unwrap();
                prop_assert_eq!(dj.total_grading(&c), grading.clone());
                for k in (j + 1)..=qq {
                    prop_assert_eq!(a.v_face(&c, k).unwrap().v_face(&c, j).unwrap(), dj.v_face(&c, k - 1).unwrap());
                }
                prop_assert_eq!(a.v_degen(&c, j).unwrap().v_face(&c, j).unwrap(), a.clone());
                prop_assert_eq!(a.v_degen(&c, j).unwrap().v_face(&c, j + 1).unwrap(), a.clone());
            }
        }

        #[test]
        fn faces_of_nondegenerate_arrays_are_nondegenerate(p in 1usize..4, qq in 1usize..4, picks in proptest::collection::vec((0usize..64, 0usize..64), 1..4)) {
            let q = catalog::transposition_quandle(3);
            let c = Completion::new(&q).unwrap();
            let a = random_array(&c, p, qq, &picks);
            prop_assume!(!a.is_degenerate());
            for i in 0..=p {
                prop_assert!(!a.h_face(&c, i).unwrap().is_degenerate());
            }
            for j in 0..=qq {
                prop_assert!(!a.v_face(&c, j).unwrap().is_degenerate());
            }
        }
    }

    #[test]
    fn grid_faces_agree_with_array_faces() {
        let q = catalog::sd_geo(3);
        let c = Completion::new(&q).unwrap();
        for (_, arrays) in arrays_by_grading(&c, 3) {
            for g in arrays {
                let a = BisimplexArray::from_grid(&c, &g);
                for i in 0..=g.p {
                    let hat = a.h_face(&c, i).unwrap();
                    match g.h_face(&q, i) {
                        Some(f) => assert_eq!(hat, BisimplexArray::from_grid(&c, &f)),
                        None => assert!(!hat.is_admissible()),
                    }
                }
                for j in 0..=g.q {
                    let hat = a.v_face(&c, j).unwrap();
                    match g.v_face(&q, j) {
                        Some(f) => assert_eq!(hat, BisimplexArray::from_grid(&c, &f)),
                        None => assert!(!hat.is_admissible()),
                    }
                }
            }
        }
    }
}
