//! Generalized decompositions and the rewriting that returns any
//! decomposition of `x_1 ⋯ x_r` to `(x_1, ..., x_r)` by standard moves.

use std::fmt;

use crate::braid::{apply_log, Move};
use crate::error::{precondition, Result};
use crate::free::{fq_decompose, free_reduce, Factor, FqMember, FreeGroup, FreeWord};

/// A formal expression built from generators by products and conjugation.
///
/// `Conj(x, s)` stands for `x^{x_{|s|}^{sign(s)}}`. Product nodes are kept
/// flat (no product child) with at least two children.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum GenDecomp {
    Leaf(u32),
    Product(Vec<GenDecomp>),
    Conj(Box<GenDecomp>, i32),
}

use GenDecomp::{Conj, Leaf, Product};

impl fmt::Debug for GenDecomp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Leaf(i) => write!(f, "x{i}"),
            Product(ch) => {
                write!(f, "(")?;
                for (t, c) in ch.iter().enumerate() {
                    if t > 0 {
                        write!(f, "·")?;
                    }
                    write!(f, "{c:?}")?;
                }
                write!(f, ")")
            }
            Conj(x, s) => write!(f, "{x:?}^x{}{}", s.abs(), if *s < 0 { "⁻" } else { "" }),
        }
    }
}

impl GenDecomp {
    /// Product of several trees, flattened; a single factor is returned as is.
    pub fn product(items: Vec<GenDecomp>) -> GenDecomp {
        let mut flat = Vec::with_capacity(items.len());
        for x in items {
            match x {
                Product(ch) => flat.extend(ch),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            Product(flat)
        }
    }

    pub fn conj(x: GenDecomp, letter: i32) -> GenDecomp {
        Conj(Box::new(x), letter)
    }

    /// The tree `x_ν` conjugated successively by the letters of `w`.
    pub fn from_factor(f: &Factor) -> GenDecomp {
        f.w.letters().iter().fold(Leaf(f.nu as u32), |acc, &x| GenDecomp::conj(acc, x))
    }

    /// Weight: 1 per leaf, 2 per conjugation.
    pub fn weight(&self) -> usize {
        match self {
            Leaf(_) => 1,
            Product(ch) => ch.iter().map(|c| c.weight()).sum(),
            Conj(x, _) => x.weight() + 2,
        }
    }

    pub fn leaves(&self) -> usize {
        match self {
            Leaf(_) => 1,
            Product(ch) => ch.iter().map(|c| c.leaves()).sum(),
            Conj(x, _) => x.leaves(),
        }
    }

    /// The word obtained without any cancellation; its length is the weight.
    pub fn formal_word(&self) -> FreeWord {
        let mut out = Vec::with_capacity(self.weight());
        self.write_formal(&mut out);
        FreeWord(out)
    }

    fn write_formal(&self, out: &mut Vec<i32>) {
        match self {
            Leaf(i) => out.push(*i as i32),
            Product(ch) => ch.iter().for_each(|c| c.write_formal(out)),
            Conj(x, s) => {
                out.push(-s);
                x.write_formal(out);
                out.push(*s);
            }
        }
    }

    /// Factors of the associated decomposition, one per leaf, left to right:
    /// each leaf conjugated by its enclosing letters, innermost first.
    pub fn factors(&self) -> Vec<Factor> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.collect_factors(&mut stack, &mut out);
        out
    }

    fn collect_factors(&self, stack: &mut Vec<i32>, out: &mut Vec<Factor>) {
        match self {
            Leaf(i) => {
                // stack holds letters outermost first
                let letters: Vec<i32> = stack.iter().rev().copied().collect();
                let value = FreeWord::generator(*i as usize).conj(&FreeWord(letters));
                let w = free_reduce(&FreeWord(value.letters()[value.len() / 2 + 1..].to_vec()));
                out.push(Factor { nu: *i as usize, w });
            }
            Product(ch) => ch.iter().for_each(|c| c.collect_factors(stack, out)),
            Conj(x, s) => {
                stack.push(*s);
                x.collect_factors(stack, out);
                stack.pop();
            }
        }
    }
}

/// Formal word of `x` and whether the computation involves a cancellation.
///
/// A cancellation is a conjugation undoing the one directly inside it,
/// `(y^{x_i^{±1}})^{x_i^{∓1}}`, or a generator conjugated by itself,
/// `x_i^{x_i^{±1}}`. Juxtaposition of blocks such as `x_3 · (…)^{x_3}` is
/// not counted even though the flat word is not reduced.
pub fn gd_evaluate(x: &GenDecomp) -> (FreeWord, bool) {
    (x.formal_word(), has_cancellation(x))
}

fn has_cancellation(x: &GenDecomp) -> bool {
    let mut stack = vec![x];
    while let Some(x) = stack.pop() {
        match x {
            Leaf(_) => {}
            Product(ch) => stack.extend(ch),
            Conj(y, s) => {
                match &**y {
                    Conj(_, t) if *t == -*s => return true,
                    Leaf(i) if *i as i32 == s.abs() => return true,
                    _ => {}
                }
                stack.push(y);
            }
        }
    }
    false
}

/// A decomposition of an element of `F^k` into factors of `FQ^k_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub k: usize,
    pub l: usize,
    pub factors: Vec<Factor>,
}

impl Decomposition {
    /// Builds a decomposition from arbitrary words, rejecting non-members.
    pub fn from_words(k: usize, l: usize, words: &[FreeWord]) -> Result<Self> {
        let factors = words
            .iter()
            .map(|w| match fq_decompose(w, k, l) {
                Some(FqMember::Conjugate(f)) => Ok(f),
                _ => Err(precondition(format!("{w:?} is not a nontrivial element of FQ^{k}_{l}"))),
            })
            .collect::<Result<_>>()?;
        Ok(Decomposition { k, l, factors })
    }

    pub fn words(&self) -> Vec<FreeWord> {
        self.factors.iter().map(|f| f.value()).collect()
    }

    pub fn product(&self) -> FreeWord {
        self.words().iter().fold(FreeWord::empty(), |acc, w| acc.mul(w))
    }

    pub fn to_gd(&self) -> GenDecomp {
        GenDecomp::product(self.factors.iter().map(GenDecomp::from_factor).collect())
    }
}

/// Result of [`normalize_decomposition`].
#[derive(Clone, Debug)]
pub struct Normalized {
    /// `(x_1, ..., x_r)`.
    pub target: Vec<FreeWord>,
    /// Moves carrying the input tuple to the target.
    pub log: Vec<Move>,
    /// Weight of the tree after each rewriting step, starting with the input.
    pub weights: Vec<usize>,
}

/// Rewrites a decomposition of `x_1 ⋯ x_r` (with `r ≤ l`) into
/// `(x_1, ..., x_r)`, recording the standard moves used.
///
/// Each step locates the innermost, leftmost sub-expression of one of the
/// reducible shapes below and replaces it by an expression of smaller
/// weight with the same value; only the two shapes that swap a generator
/// past a block emit moves. The log is verified on the input before it is
/// returned.
pub fn normalize_decomposition(d: &Decomposition) -> Result<Normalized> {
    let r = d.factors.len();
    let expected = FreeWord((1..=r as i32).collect());
    if r > d.l || d.product() != expected {
        return Err(precondition(format!(
            "product {:?} is not x_1⋯x_r for some r ≤ l = {}",
            d.product(),
            d.l
        )));
    }
    for f in &d.factors {
        if f.nu == 0 || f.nu > d.l || fq_decompose(&f.value(), d.k, d.l) != Some(FqMember::Conjugate(f.clone())) {
            return Err(precondition(format!("factor {f:?} is not in normal form")));
        }
    }
    let tree = d.to_gd();
    if tree.weight() > DEEP_WEIGHT {
        // deep conjugation chains recurse once per letter
        return std::thread::scope(|sc| {
            std::thread::Builder::new()
                .stack_size(1 << 30)
                .spawn_scoped(sc, || rewrite_all(d, tree))
                .expect("spawn rewriting thread")
                .join()
                .expect("rewriting thread panicked")
        });
    }
    rewrite_all(d, tree)
}

const DEEP_WEIGHT: usize = 2000;

fn rewrite_all(d: &Decomposition, mut tree: GenDecomp) -> Result<Normalized> {
    let r = d.factors.len();
    let target: Vec<FreeWord> = (1..=r).map(FreeWord::generator).collect();
    let mut log = Vec::new();
    let mut weights = vec![tree.weight()];
    while !is_terminal(&tree) {
        if !rewrite_once(&mut tree, 0, &mut log) {
            return Err(precondition(format!("no reducible sub-expression found in {tree:?}")));
        }
        tree = renormalize(tree);
        let w = tree.weight();
        assert!(w < *weights.last().unwrap(), "rewriting must lower the weight");
        weights.push(w);
    }
    let terminal = GenDecomp::product((1..=r as u32).map(Leaf).collect());
    if r > 0 && tree != terminal {
        return Err(precondition(format!("rewriting ended at {tree:?}")));
    }
    let out = apply_log(&FreeGroup { k: d.k }, &d.words(), &log)?;
    assert_eq!(out, target, "move log does not carry the decomposition to the generators");
    Ok(Normalized { target, log, weights })
}

fn is_terminal(x: &GenDecomp) -> bool {
    match x {
        Leaf(_) => true,
        Product(ch) => ch.iter().all(|c| matches!(c, Leaf(_))),
        Conj(..) => false,
    }
}

fn renormalize(x: GenDecomp) -> GenDecomp {
    match x {
        Leaf(i) => Leaf(i),
        Product(ch) => GenDecomp::product(ch.into_iter().map(renormalize).collect()),
        Conj(x, s) => Conj(Box::new(renormalize(*x)), s),
    }
}

/// Moves that carry `(x_i, y_1, ..., y_m)` to `(y_1', ..., y_m', x_i)` when
/// the `y`s are conjugated by `x_i`, starting at leaf offset `off`.
fn push_right(off: usize, m: usize, log: &mut Vec<Move>) {
    log.extend((1..=m).map(|t| Move::negative(off + t)));
}

/// Moves that carry `(y_1, ..., y_m, x_i)` to `(x_i, y_1', ..., y_m')`.
fn push_left(off: usize, m: usize, log: &mut Vec<Move>) {
    log.extend((1..=m).rev().map(|t| Move::positive(off + t)));
}

fn rewrite_once(x: &mut GenDecomp, off: usize, log: &mut Vec<Move>) -> bool {
    match x {
        Leaf(_) => false,
        Product(ch) => {
            let mut o = off;
            for c in ch.iter_mut() {
                if rewrite_once(c, o, log) {
                    return true;
                }
                o += c.leaves();
            }
            let mut o = off;
            for t in 0..ch.len() - 1 {
                if let Some(rep) = adjacent_rule(&ch[t], &ch[t + 1], o, log) {
                    ch.splice(t..t + 2, rep);
                    return true;
                }
                o += ch[t].leaves();
            }
            false
        }
        Conj(inner, s) => {
            if rewrite_once(inner, off, log) {
                return true;
            }
            match conj_rule(inner, *s, off, log) {
                Some(rep) => {
                    *x = rep;
                    true
                }
                None => false,
            }
        }
    }
}

/// Rules for adjacent factors `a · b` of a product.
fn adjacent_rule(a: &GenDecomp, b: &GenDecomp, off: usize, log: &mut Vec<Move>) -> Option<Vec<GenDecomp>> {
    match (a, b) {
        // y1^g · y2^g = (y1 · y2)^g
        (Conj(y1, s1), Conj(y2, s2)) if s1 == s2 => Some(vec![GenDecomp::conj(
            GenDecomp::product(vec![(**y1).clone(), (**y2).clone()]),
            *s1,
        )]),
        // x_i · y^{x_i} = y · x_i
        (Leaf(i), Conj(y, s)) if *s == *i as i32 => {
            push_right(off, y.leaves(), log);
            Some(vec![(**y).clone(), Leaf(*i)])
        }
        // y^{x_i^{-1}} · x_i = x_i · y
        (Conj(y, s), Leaf(i)) if *s == -(*i as i32) => {
            push_left(off, y.leaves(), log);
            Some(vec![Leaf(*i), (**y).clone()])
        }
        _ => None,
    }
}

/// Rules for a conjugation node `inner^{x_i^{±1}}`.
fn conj_rule(inner: &GenDecomp, s: i32, off: usize, log: &mut Vec<Move>) -> Option<GenDecomp> {
    let i = s.unsigned_abs();
    match inner {
        // (y^{g^{-1}})^g = y
        Conj(y, t) if *t == -s => Some((**y).clone()),
        // x_i^{x_i^{±1}} = x_i
        Leaf(j) if *j == i => Some(Leaf(i)),
        Product(ch) => {
            let n = ch.len();
            let head = || GenDecomp::product(ch[..n - 1].to_vec());
            let tail = || GenDecomp::product(ch[1..].to_vec());
            match (&ch[0], &ch[n - 1]) {
                // (x_i · y)^{x_i} = y · x_i
                (Leaf(j), _) if s > 0 && *j == i => {
                    let rest = tail();
                    push_right(off, rest.leaves(), log);
                    Some(GenDecomp::product(vec![rest, Leaf(i)]))
                }
                // (y · x_i)^{x_i^{-1}} = x_i · y
                (_, Leaf(j)) if s < 0 && *j == i => {
                    let rest = head();
                    push_left(off, rest.leaves(), log);
                    Some(GenDecomp::product(vec![Leaf(i), rest]))
                }
                // (y1 · y2^{x_i^{∓1}})^{x_i^{±1}} = y1^{x_i^{±1}} · y2
                (_, Conj(y2, t)) if *t == -s => {
                    Some(GenDecomp::product(vec![GenDecomp::conj(head(), s), (**y2).clone()]))
                }
                // (y1^{x_i^{∓1}} · y2)^{x_i^{±1}} = y1 · y2^{x_i^{±1}}
                (Conj(y1, t), _) if *t == -s => {
                    Some(GenDecomp::product(vec![(**y1).clone(), GenDecomp::conj(tail(), s)]))
                }
                _ => None,
            }
        }
        _ => None,
    }
}
