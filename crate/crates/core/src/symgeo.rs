//! The geodesic symmetric group `S_d^geo`: norms, monotone decompositions,
//! connecting transposition sequences by standard moves, the closed form
//! of its completion, and its enveloping group.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::braid::{apply_log, inverse_log, Move, PermConj};
use crate::completion::HatElem;
use crate::error::{structural, Result};
use crate::perm::Perm;

pub fn perm_norm(s: &Perm) -> u32 {
    s.norm()
}

/// `N(στ) = N(σ) + N(τ)`.
pub fn is_geodesic(s: &Perm, t: &Perm) -> bool {
    s.compose(t).norm() == s.norm() + t.norm()
}

/// Distance from the identity in the Cayley graph of `S_d` with respect to
/// all transpositions, indexed like [`Perm::all`].
pub fn cayley_distances(d: usize) -> Vec<u32> {
    let all = Perm::all(d);
    let index: HashMap<&Perm, usize> = all.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let ts = Perm::transpositions(d);
    let mut dist = vec![u32::MAX; all.len()];
    dist[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for t in &ts {
            let j = index[&all[i].compose(t)];
            if dist[j] == u32::MAX {
                dist[j] = dist[i] + 1;
                queue.push_back(j);
            }
        }
    }
    dist
}

/// The unique factorization `σ = τ_1 ⋯ τ_{N(σ)}` into transpositions with
/// strictly increasing heights: the last factor is `(h, σ^{-1}(h))` for
/// `h = ht(σ)`, and the rest decomposes `σ τ_{N(σ)}`, which fixes `h`.
pub fn monotone_decomposition(s: &Perm) -> Vec<Perm> {
    let d = s.degree();
    let mut out = Vec::new();
    let mut cur = s.clone();
    while !cur.is_identity() {
        let h = cur.height();
        let t = Perm::transposition(d, h, cur.inverse().apply(h));
        cur = cur.compose(&t);
        out.push(t);
    }
    out.reverse();
    out
}

fn product(seq: &[Perm], d: usize) -> Perm {
    seq.iter().fold(Perm::identity(d), |acc, t| acc.compose(t))
}

/// Orbits of the subgroup generated by `seq` on `{1..d}`, each sorted,
/// ordered by least element.
pub fn orbit_partition(seq: &[Perm], d: usize) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..=d).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for s in seq {
        for x in 1..=d {
            let (a, b) = (find(&mut parent, x), find(&mut parent, s.apply(x)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut pieces: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; d + 1];
    for x in 1..=d {
        let r = find(&mut parent, x);
        if slot[r] == usize::MAX {
            slot[r] = pieces.len();
            pieces.push(Vec::new());
        }
        pieces[slot[r]].push(x);
    }
    pieces
}

/// Norm of the restriction of `s` to a piece it preserves.
fn restricted_norm(s: &Perm, piece: &[usize]) -> u32 {
    let cycles = s.cycles().into_iter().filter(|c| piece.contains(&c[0])).count();
    (piece.len() - cycles) as u32
}

/// An element `(σ; P_1, ..., P_k; r_1, ..., r_k)` of the completion of
/// `S_d^geo`. Pieces are sorted and ordered by least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeoHatElem {
    #[serde(with = "one_line")]
    pub sigma: Perm,
    pub partition: Vec<Vec<usize>>,
    pub weights: Vec<u32>,
}

mod one_line {
    use super::Perm;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(p: &Perm, s: S) -> Result<S::Ok, S::Error> {
        p.images().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Perm, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Perm::from_images(&v).map_err(serde::de::Error::custom)
    }
}

impl GeoHatElem {
    /// Sorts pieces and weights into canonical order.
    pub fn new(sigma: Perm, partition: Vec<Vec<usize>>, weights: Vec<u32>) -> Self {
        let mut pairs: Vec<(Vec<usize>, u32)> = partition
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p
            })
            .zip(weights)
            .collect();
        pairs.sort();
        let (partition, weights) = pairs.into_iter().unzip();
        GeoHatElem { sigma, partition, weights }
    }

    pub fn unit(d: usize) -> Self {
        GeoHatElem { sigma: Perm::identity(d), partition: (1..=d).map(|x| vec![x]).collect(), weights: vec![0; d] }
    }

    pub fn degree(&self) -> usize {
        self.sigma.degree()
    }

    pub fn norm(&self) -> u32 {
        self.weights.iter().sum()
    }
}

/// `(product; orbits of the generated subgroup; per-orbit norm sums)`.
pub fn seq_to_triple(seq: &[Perm], d: usize) -> GeoHatElem {
    let partition = orbit_partition(seq, d);
    let weights = partition
        .iter()
        .map(|p| seq.iter().map(|s| restricted_norm(s, p)).sum())
        .collect();
    GeoHatElem::new(product(seq, d), partition, weights)
}

/// Checks that the triple is an element of the completion: the pieces
/// partition `{1..d}` and are preserved by `σ`, and each weight satisfies
/// `r_j ≥ 2|P_j| − N(σ|P_j) − 2` and `r_j ≡ N(σ|P_j) (mod 2)`. A one-point
/// piece must have weight 0, since no transposition lives on it.
pub fn validate_triple(t: &GeoHatElem) -> Result<()> {
    let d = t.degree();
    if t.partition.len() != t.weights.len() {
        return Err(structural("one weight per piece is required"));
    }
    let mut seen = vec![false; d + 1];
    for p in &t.partition {
        if p.is_empty() {
            return Err(structural("empty piece"));
        }
        for &x in p {
            if x == 0 || x > d || seen[x] {
                return Err(structural(format!("{:?} is not a partition of 1..{d}", t.partition)));
            }
            seen[x] = true;
        }
    }
    if seen[1..].iter().any(|&s| !s) {
        return Err(structural(format!("{:?} does not cover 1..{d}", t.partition)));
    }
    for (p, &r) in t.partition.iter().zip(&t.weights) {
        if p.iter().any(|&x| !p.contains(&t.sigma.apply(x))) {
            return Err(structural(format!("σ = {:?} does not preserve the piece {p:?}", t.sigma)));
        }
        let n = restricted_norm(&t.sigma, p);
        let lower = (2 * p.len() as i64 - n as i64 - 2).max(0);
        if (r as i64) < lower {
            return Err(structural(format!("weight {r} on {p:?} is below 2|P| − N − 2 = {lower}")));
        }
        if r % 2 != n % 2 {
            return Err(structural(format!("weight {r} on {p:?} has the wrong parity (N = {n})")));
        }
        if p.len() == 1 && r != 0 {
            return Err(structural(format!("one-point piece {p:?} must have weight 0")));
        }
    }
    Ok(())
}

/// Product: `σ_x σ_y`, the finest partition coarser than both, and summed
/// weights.
pub fn geo_hat_mul(x: &GeoHatElem, y: &GeoHatElem) -> GeoHatElem {
    let d = x.degree();
    let mut parent: Vec<usize> = (0..=d).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    for piece in x.partition.iter().chain(&y.partition) {
        for &v in &piece[1..] {
            let (a, b) = (find(&mut parent, piece[0]), find(&mut parent, v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut pieces: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; d + 1];
    for v in 1..=d {
        let r = find(&mut parent, v);
        if slot[r] == usize::MAX {
            slot[r] = pieces.len();
            pieces.push(Vec::new());
        }
        pieces[slot[r]].push(v);
    }
    let mut weights = vec![0u32; pieces.len()];
    for t in [x, y] {
        for (p, &w) in t.partition.iter().zip(&t.weights) {
            weights[slot[find(&mut parent, p[0])]] += w;
        }
    }
    GeoHatElem::new(x.sigma.compose(&y.sigma), pieces, weights)
}

/// `x^y = (σ_x^{σ_y}; σ_y^{-1}(P_j); r_j)`.
pub fn geo_hat_conj(x: &GeoHatElem, y: &GeoHatElem) -> GeoHatElem {
    let inv = y.sigma.inverse();
    let pieces = x.partition.iter().map(|p| p.iter().map(|&v| inv.apply(v)).collect()).collect();
    GeoHatElem::new(x.sigma.conj(&y.sigma), pieces, x.weights.clone())
}

/// All set partitions of `{1..d}`, pieces ordered by least element.
pub fn set_partitions(d: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = vec![Vec::new()];
    for x in 1..=d {
        let mut next = Vec::new();
        for p in out {
            for i in 0..p.len() {
                let mut q: Vec<Vec<usize>> = p.clone();
                q[i].push(x);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![x]);
            next.push(q);
        }
        out = next;
    }
    out
}

/// Every valid triple of degree `d` and total norm `n`, sorted.
pub fn triples_of_norm(d: usize, n: u32) -> Vec<GeoHatElem> {
    let perms = Perm::all(d);
    let mut out = Vec::new();
    for partition in set_partitions(d) {
        for s in &perms {
            if partition.iter().any(|p| p.iter().any(|&x| !p.contains(&s.apply(x)))) {
                continue;
            }
            // admissible weights per piece
            let options: Vec<Vec<u32>> = partition
                .iter()
                .map(|p| {
                    if p.len() == 1 {
                        return vec![0];
                    }
                    let m = restricted_norm(s, p);
                    let lower = (2 * p.len() as i64 - m as i64 - 2).max(0) as u32;
                    (lower..=n).filter(|r| r % 2 == m % 2).collect()
                })
                .collect();
            let mut choice = vec![0u32; partition.len()];
            fn go(
                i: usize,
                left: u32,
                options: &[Vec<u32>],
                choice: &mut Vec<u32>,
                emit: &mut dyn FnMut(&[u32]),
            ) {
                if i == options.len() {
                    if left == 0 {
                        emit(choice);
                    }
                    return;
                }
                for &r in &options[i] {
                    if r <= left {
                        choice[i] = r;
                        go(i + 1, left - r, options, choice, emit);
                    }
                }
            }
            go(0, n, &options, &mut choice, &mut |w| {
                out.push(GeoHatElem::new(s.clone(), partition.clone(), w.to_vec()))
            });
        }
    }
    out.sort();
    out
}

/// The triple of an element of the completion of `sd_geo(d)`; elements of
/// `sd_geo(d)` are indexed as in [`Perm::all`].
pub fn triple_of_hat(x: &HatElem, d: usize) -> GeoHatElem {
    let perms = Perm::all(d);
    let seq: Vec<Perm> = x.canonical().iter().map(|a| perms[a.index()].clone()).collect();
    seq_to_triple(&seq, d)
}

/// Outcome of [`clebsch_connect`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Connection {
    /// Standard moves carrying the first sequence to the second, verified.
    Connected { log: Vec<Move>, method: String },
    /// The sequences lie in different orbits; names the first invariant
    /// that differs.
    DifferentInvariants(String),
}

/// Moves carrying a minimal factorization of its product to the monotone
/// one. Works from the top: the transpositions containing the largest
/// point `h` of the current prefix are merged one at a time (a negative
/// move turns `((h,y),(h,x))` into `((x,y),(h,y))`), and the last one is
/// pushed to the end of the prefix. Returns `None` if the sequence is not
/// minimal.
pub fn to_monotone(seq: &[Perm]) -> Option<Vec<Move>> {
    let d = seq.first()?.degree();
    if product(seq, d).norm() as usize != seq.len() {
        return None;
    }
    let mut s = seq.to_vec();
    let mut log = Vec::new();
    fn push_right(s: &mut [Perm], log: &mut Vec<Move>, from: usize, to: usize) {
        for i in from..to {
            log.push(Move::positive(i + 1));
            let t = s[i + 1].clone();
            s[i + 1] = s[i].conj(&t);
            s[i] = t;
        }
    }
    let mut m = s.len();
    while m > 0 {
        let h = s[..m].iter().map(Perm::height).max().unwrap();
        loop {
            let with_h: Vec<usize> = (0..m).filter(|&i| s[i].apply(h) != h).collect();
            match with_h[..] {
                [.., i, j] => {
                    push_right(&mut s, &mut log, i, j - 1);
                    if s[j - 1] == s[j] {
                        return None;
                    }
                    log.push(Move::negative(j));
                    let a = s[j - 1].clone();
                    s[j - 1] = s[j].conj(&a.inverse());
                    s[j] = a;
                }
                [i] => {
                    push_right(&mut s, &mut log, i, m - 1);
                    break;
                }
                [] => unreachable!("h occurs in the prefix"),
            }
        }
        m -= 1;
    }
    debug_assert_eq!(s, monotone_decomposition(&product(seq, d)));
    Some(log)
}

/// Node budget for the breadth-first fallback.
const SEARCH_LIMIT: usize = 4_000_000;

/// Connects two sequences of transpositions by standard moves.
///
/// Minimal factorizations go through the monotone form; anything else is
/// searched bidirectionally over the (finite) move graph. Distinct
/// completion triples mean distinct orbits. The log is verified in all cases.
pub fn clebsch_connect(s1: &[Perm], s2: &[Perm]) -> Result<Connection> {
    if s1.len() != s2.len() {
        return Ok(Connection::DifferentInvariants(format!("lengths {} and {}", s1.len(), s2.len())));
    }
    if s1.is_empty() {
        return Ok(Connection::Connected { log: Vec::new(), method: "trivial".into() });
    }
    let d = s1[0].degree();
    if s1.iter().chain(s2).any(|t| t.degree() != d || t.as_transposition().is_none()) {
        return Err(structural("sequences must consist of transpositions of one degree"));
    }
    let (t1, t2) = (seq_to_triple(s1, d), seq_to_triple(s2, d));
    if t1.sigma != t2.sigma {
        return Ok(Connection::DifferentInvariants(format!("products {:?} and {:?}", t1.sigma, t2.sigma)));
    }
    if t1.partition != t2.partition {
        return Ok(Connection::DifferentInvariants(format!(
            "orbit partitions {:?} and {:?}",
            t1.partition, t2.partition
        )));
    }
    if t1.weights != t2.weights {
        return Ok(Connection::DifferentInvariants(format!("piece weights {:?} and {:?}", t1.weights, t2.weights)));
    }
    let (log, method) = match (to_monotone(s1), to_monotone(s2)) {
        (Some(a), Some(b)) => {
            let mut log = a;
            log.extend(inverse_log(&b));
            (log, "monotone")
        }
        _ => (bidirectional_search(s1, s2)?, "search"),
    };
    let reached = apply_log(&PermConj, s1, &log)?;
    assert_eq!(reached, s2, "connecting log does not verify");
    Ok(Connection::Connected { log, method: method.into() })
}

fn neighbours(s: &[Perm]) -> Vec<(Move, Vec<Perm>)> {
    let mut out = Vec::with_capacity(2 * s.len());
    for i in 0..s.len() - 1 {
        let mut t = s.to_vec();
        t[i] = s[i + 1].clone();
        t[i + 1] = s[i].conj(&s[i + 1]);
        out.push((Move::positive(i + 1), t));
        let mut t = s.to_vec();
        t[i] = s[i + 1].conj(&s[i].inverse());
        t[i + 1] = s[i].clone();
        out.push((Move::negative(i + 1), t));
    }
    out
}

fn bidirectional_search(s1: &[Perm], s2: &[Perm]) -> Result<Vec<Move>> {
    type Parents = HashMap<Vec<Perm>, Option<(Vec<Perm>, Move)>>;
    let path = |parents: &Parents, mut node: Vec<Perm>| {
        let mut log = Vec::new();
        while let Some(Some((prev, m))) = parents.get(&node) {
            log.push(*m);
            node = prev.clone();
        }
        log.reverse();
        log
    };
    let mut fwd: Parents = HashMap::from([(s1.to_vec(), None)]);
    let mut bwd: Parents = HashMap::from([(s2.to_vec(), None)]);
    let mut qf = VecDeque::from([s1.to_vec()]);
    let mut qb = VecDeque::from([s2.to_vec()]);
    if s1 == s2 {
        return Ok(Vec::new());
    }
    while !qf.is_empty() || !qb.is_empty() {
        if fwd.len() + bwd.len() > SEARCH_LIMIT {
            return Err(crate::error::precondition("move graph too large for the search budget"));
        }
        let forward = !qf.is_empty() && (qb.is_empty() || qf.len() <= qb.len());
        let (queue, mine, other) = if forward { (&mut qf, &mut fwd, &bwd) } else { (&mut qb, &mut bwd, &fwd) };
        let Some(x) = queue.pop_front() else { continue };
        for (m, y) in neighbours(&x) {
            if mine.contains_key(&y) {
                continue;
            }
            mine.insert(y.clone(), Some((x.clone(), m)));
            if other.contains_key(&y) {
                let mut log = path(&fwd, y.clone());
                log.extend(inverse_log(&path(&bwd, y)));
                return Ok(log);
            }
            queue.push_back(y);
        }
    }
    Err(structural("orbits differ although the invariants agree"))
}

/// An element of `ℤ × S_d`.
pub type EnvImage = (i64, Perm);

/// Evaluates a word in the generators `[σ]^{±1}` of the enveloping group
/// under `[σ] ↦ (N(σ), σ)`.
pub fn env_word_image(word: &[(Perm, bool)], d: usize) -> EnvImage {
    word.iter().fold((0, Perm::identity(d)), |(n, acc), (s, positive)| {
        if *positive {
            (n + s.norm() as i64, acc.compose(s))
        } else {
            (n - s.norm() as i64, acc.compose(&s.inverse()))
        }
    })
}

/// Equality in the enveloping group of `S_d^geo`, decided through the
/// injective map to `ℤ × S_d`.
pub fn env_words_equal(w1: &[(Perm, bool)], w2: &[(Perm, bool)], d: usize) -> bool {
    env_word_image(w1, d) == env_word_image(w2, d)
}

/// Evidence that the image of the enveloping group is the index-2
/// subgroup `{(n, σ) : n ≡ N(σ) mod 2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageCensus {
    pub d: usize,
    /// All conjugation and product relators hold under the map.
    pub relators_hold: bool,
    /// Every generator image satisfies the parity condition.
    pub parity: bool,
    /// `[τ]^2 = (2, id)` for every transposition `τ`.
    pub square_is_central_generator: bool,
    /// Each `σ` occurs as the second coordinate of a generator image.
    pub surjects_on_sd: bool,
}

impl ImageCensus {
    pub fn passed(&self) -> bool {
        self.relators_hold && self.parity && self.square_is_central_generator && self.surjects_on_sd
    }
}

pub fn env_image_census(d: usize) -> ImageCensus {
    let perms = Perm::all(d);
    let q = crate::catalog::sd_geo(d);
    let g = crate::group::FiniteGroup::symmetric(d);
    let images: Vec<(usize, Vec<i64>)> = perms.iter().enumerate().map(|(i, p)| (i, vec![p.norm() as i64])).collect();
    let relators_hold = crate::envelope::verify_hom(&q, &g, 1, &images).is_ok();
    let parity = perms.iter().all(|p| {
        let (n, s) = env_word_image(&[(p.clone(), true)], d);
        (n - s.norm() as i64) % 2 == 0
    });
    let square_is_central_generator = Perm::transpositions(d)
        .iter()
        .all(|t| env_word_image(&[(t.clone(), true), (t.clone(), true)], d) == (2, Perm::identity(d)));
    let surjects_on_sd = perms.iter().all(|p| env_word_image(&[(p.clone(), true)], d).1 == *p);
    ImageCensus { d, relators_hold, parity, square_is_central_generator, surjects_on_sd }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::sd_geo;
    use crate::completion::Completion;
    use proptest::prelude::*;

    fn t(d: usize, x: usize, y: usize) -> Perm {
        Perm::transposition(d, x, y)
    }

    #[test]
    fn norms_and_geodesics() {
        let c = Perm::parse_cycles(3, "(1,2,3)").unwrap();
        assert_eq!(perm_norm(&c), 2);
        assert_eq!(perm_norm(&Perm::identity(4)), 0);
        assert!(!is_geodesic(&t(3, 1, 2), &t(3, 1, 2)));
        assert!(is_geodesic(&t(3, 1, 2), &t(3, 2, 3)));
    }

    #[test]
    fn norm_matches_cayley_distance() {
        for d in 1..=5 {
            let dist = cayley_distances(d);
            for (p, &n) in Perm::all(d).iter().zip(&dist) {
                assert_eq!(p.norm(), n);
            }
        }
    }

    /// All factorizations of `s` into `N(s)` transpositions with strictly
    /// increasing heights, by brute force.
    fn monotone_oracle(s: &Perm) -> Vec<Vec<Perm>> {
        let d = s.degree();
        let ts = Perm::transpositions(d);
        let n = s.norm() as usize;
        let mut out = Vec::new();
        let mut stack: Vec<Vec<Perm>> = vec![Vec::new()];
        while let Some(seq) = stack.pop() {
            if seq.len() == n {
                if product(&seq, d) == *s {
                    out.push(seq);
                }
                continue;
            }
            let last = seq.last().map_or(0, Perm::height);
            for x in ts.iter().filter(|x| x.height() > last) {
                let mut next = seq.clone();
                next.push(x.clone());
                stack.push(next);
            }
        }
        out
    }

    #[test]
    fn monotone_decompositions() {
        assert!(monotone_decomposition(&Perm::identity(3)).is_empty());
        // 1 -> 2 -> 3 -> 1
        let c = Perm::from_images(&[2, 3, 1]).unwrap();
        assert_eq!(monotone_decomposition(&c), vec![t(3, 1, 2), t(3, 2, 3)]);
        assert_eq!(monotone_decomposition(&t(4, 2, 4)), vec![t(4, 2, 4)]);
        for d in 1..=4 {
            for p in Perm::all(d) {
                let m = monotone_decomposition(&p);
                assert_eq!(product(&m, d), p);
                assert_eq!(m.len() as u32, p.norm());
                assert!(m.windows(2).all(|w| w[0].height() < w[1].height()));
                assert_eq!(monotone_oracle(&p), vec![m]);
            }
        }
    }

    #[test]
    fn connect_examples() {
        let c = Perm::from_images(&[2, 3, 1]).unwrap();
        let geo = [t(3, 2, 3), t(3, 1, 3)];
        assert_eq!(product(&geo, 3), c);
        match clebsch_connect(&geo, &monotone_decomposition(&c)).unwrap() {
            Connection::Connected { method, .. } => assert_eq!(method, "monotone"),
            other => panic!("{other:?}"),
        }
        let r = clebsch_connect(&[t(3, 1, 2), t(3, 1, 2)], &[t(3, 1, 3), t(3, 1, 3)]).unwrap();
        assert!(matches!(r, Connection::DifferentInvariants(ref s) if s.contains("partition")), "{r:?}");
        let r = clebsch_connect(&[t(3, 1, 2), t(3, 2, 3), t(3, 1, 2)], &[t(3, 2, 3), t(3, 1, 2), t(3, 2, 3)]).unwrap();
        assert!(matches!(r, Connection::Connected { .. }));
        // same product and partition, different weights per piece
        let a = [t(4, 1, 2), t(4, 1, 2), t(4, 1, 2), t(4, 1, 2), t(4, 3, 4), t(4, 3, 4)];
        let b = [t(4, 1, 2), t(4, 1, 2), t(4, 3, 4), t(4, 3, 4), t(4, 3, 4), t(4, 3, 4)];
        assert!(matches!(clebsch_connect(&a, &b).unwrap(), Connection::DifferentInvariants(ref s) if s.contains("weights")));
    }

    #[test]
    fn triple_examples() {
        let x = seq_to_triple(&[t(3, 1, 2), t(3, 1, 2)], 3);
        assert_eq!(x, GeoHatElem::new(Perm::identity(3), vec![vec![1, 2], vec![3]], vec![2, 0]));
        assert!(validate_triple(&x).is_ok());
        let bad = GeoHatElem::new(Perm::identity(3), vec![vec![1, 2, 3]], vec![2]);
        assert!(validate_triple(&bad).is_err());
        let single = GeoHatElem::new(Perm::identity(2), vec![vec![1], vec![2]], vec![2, 0]);
        assert!(validate_triple(&single).is_err());
        // conjugation relabels pieces by σ_y^{-1}
        let y = seq_to_triple(&[t(3, 2, 3)], 3);
        let z = geo_hat_conj(&x, &y);
        assert_eq!(z.partition, vec![vec![1, 3], vec![2]]);
        assert_eq!(z.weights, vec![2, 0]);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"sigma":[1,2,3],"partition":[[1,2],[3]],"weights":[2,0]}"#);
        assert_eq!(serde_json::from_str::<GeoHatElem>(&json).unwrap(), x);
    }

    #[test]
    fn triples_biject_with_completion_classes_small() {
        let d = 3;
        let c = Completion::new(&sd_geo(d)).unwrap();
        for n in 0..=4 {
            let mut from_classes: Vec<GeoHatElem> =
                c.classes_at_norm(n).iter().map(|h| triple_of_hat(h, d)).collect();
            from_classes.sort();
            let before = from_classes.len();
            from_classes.dedup();
            assert_eq!(before, from_classes.len(), "distinct classes must give distinct triples");
            assert_eq!(from_classes, triples_of_norm(d, n));
        }
    }

    #[test]
    fn enveloping_group_images() {
        for d in 2..=4 {
            assert!(env_image_census(d).passed());
        }
        let (a, b, c) = (t(3, 1, 2), t(3, 2, 3), t(3, 1, 3));
        assert_eq!(env_word_image(&[(a.clone(), true), (a.clone(), true)], 3), (2, Perm::identity(3)));
        assert_eq!(env_word_image(&[(a.clone(), true), (a.clone(), false)], 3), (0, Perm::identity(3)));
        assert!(env_words_equal(&[(a.clone(), true), (b.clone(), true)], &[(b, true), (c, true)], 3));
    }

    fn transposition_seq(d: usize, len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Perm>> {
        let ts = Perm::transpositions(d);
        proptest::collection::vec(0..ts.len(), len).prop_map(move |v| v.into_iter().map(|i| ts[i].clone()).collect())
    }

    proptest! {
        #[test]
        fn triples_are_move_invariant(seq in transposition_seq(4, 1..6), pos in 0usize..5, sign in any::<bool>()) {
            prop_assume!(seq.len() >= 2);
            let i = 1 + pos % (seq.len() - 1);
            let m = if sign { Move::positive(i) } else { Move::negative(i) };
            let moved = apply_log(&PermConj, &seq, &[m]).unwrap();
            prop_assert_eq!(seq_to_triple(&seq, 4), seq_to_triple(&moved, 4));
            prop_assert!(validate_triple(&seq_to_triple(&seq, 4)).is_ok());
        }

        #[test]
        fn random_scrambles_reconnect(seq in transposition_seq(4, 1..6), moves in proptest::collection::vec((1usize..5, any::<bool>()), 0..8)) {
            let log: Vec<Move> = moves
                .into_iter()
                .filter(|(i, _)| *i < seq.len())
                .map(|(i, s)| if s { Move::positive(i) } else { Move::negative(i) })
                .collect();
            let other = apply_log(&PermConj, &seq, &log).unwrap();
            let r = clebsch_connect(&seq, &other).unwrap();
            let connected = matches!(r, Connection::Connected { .. });
            prop_assert!(connected);
        }

        #[test]
        fn cycles_of_geodesic_factor_lie_in_cycles_of_product(u in 0usize..120, k in 0usize..5) {
            let all = Perm::all(5);
            let factors = monotone_decomposition(&all[u]);
            let k = k.min(factors.len());
            let s = factors[..k].iter().fold(Perm::identity(5), |acc, f| acc.compose(f));
            let t = s.inverse().compose(&all[u]);
            let (s, t) = (&s, &t);
            prop_assert!(is_geodesic(s, t));
            let st = s.compose(t).cycles();
            for c in s.cycles() {
                prop_assert!(st.iter().any(|big| c.iter().all(|x| big.contains(x))));
            }
        }
    }
}
