//! Permutations of `{1, ..., d}`.
//!
//! Composition convention: `(s * t)(x) = s(t(x))`, the right factor acts
//! first. Conjugation is `s^t = t^{-1} s t`.

use std::fmt;

use crate::error::{structural, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    /// 0-based images.
    img: Vec<u8>,
}

impl Perm {
    pub fn identity(d: usize) -> Self {
        Perm { img: (0..d as u8).collect() }
    }

    /// From 1-based one-line images.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        let mut img = Vec::with_capacity(d);
        for &x in images {
            if x == 0 || x > d || seen[x - 1] {
                return Err(structural(format!("{images:?} is not a permutation of 1..{d}")));
            }
            seen[x - 1] = true;
            img.push((x - 1) as u8);
        }
        Ok(Perm { img })
    }

    /// The transposition of the 1-based points `x != y`.
    pub fn transposition(d: usize, x: usize, y: usize) -> Self {
        assert!(x != y && x >= 1 && y >= 1 && x <= d && y <= d, "bad transposition ({x},{y}) in S_{d}");
        let mut p = Self::identity(d);
        p.img.swap(x - 1, y - 1);
        p
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    /// Image of the 1-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.img[x - 1] as usize + 1
    }

    /// 1-based one-line images.
    pub fn images(&self) -> Vec<usize> {
        self.img.iter().map(|&x| x as usize + 1).collect()
    }

    /// `self * other`, i.e. `x -> self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { img: other.img.iter().map(|&x| self.img[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut img = vec![0u8; self.degree()];
        for (i, &x) in self.img.iter().enumerate() {
            img[x as usize] = i as u8;
        }
        Perm { img }
    }

    /// `by^{-1} * self * by`.
    pub fn conj(&self, by: &Perm) -> Perm {
        by.inverse().compose(self).compose(by)
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Cycles (including fixed points) as 1-based points, each starting at
    /// its least element, ordered by least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for s in 0..d {
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.img[x] as usize;
            }
            out.push(cyc);
        }
        out
    }

    /// Transposition word length: `d - #cycles`.
    pub fn norm(&self) -> u32 {
        (self.degree() - self.cycles().len()) as u32
    }

    /// Largest moved point, 0 for the identity.
    pub fn height(&self) -> usize {
        (1..=self.degree()).rev().find(|&x| self.apply(x) != x).unwrap_or(0)
    }

    /// The two swapped points `(x, y)` with `x < y`, if a transposition.
    pub fn as_transposition(&self) -> Option<(usize, usize)> {
        let moved: Vec<usize> = (1..=self.degree()).filter(|&x| self.apply(x) != x).collect();
        (moved.len() == 2).then(|| (moved[0], moved[1]))
    }

    /// All permutations of degree `d` in lexicographic order of images.
    pub fn all(d: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..d as u8).collect();
        loop {
            out.push(Perm { img: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..d).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..d).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// All transpositions of degree `d`, ordered by height then smaller point.
    pub fn transpositions(d: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        for y in 2..=d {
            for x in 1..y {
                out.push(Perm::transposition(d, x, y));
            }
        }
        out
    }

    /// Cycle notation without fixed points, `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let cycles: Vec<String> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        if cycles.is_empty() {
            "()".to_string()
        } else {
            cycles.concat()
        }
    }

    /// Parses cycle notation such as `(1,2)(3,4)` or `()` in degree `d`.
    pub fn parse_cycles(d: usize, s: &str) -> Result<Perm> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut img: Vec<usize> = (1..=d).collect();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let close = rest
                .find(')')
                .filter(|_| rest.starts_with('('))
                .ok_or_else(|| structural(format!("malformed cycle notation {s:?}")))?;
            let body = &rest[1..close];
            rest = &rest[close + 1..];
            if body.is_empty() {
                continue;
            }
            let pts: Vec<usize> = body
                .split(',')
                .map(|t| t.parse::<usize>().map_err(|_| structural(format!("bad point {t:?} in {s:?}"))))
                .collect::<Result<_>>()?;
            if pts.iter().any(|&x| x == 0 || x > d) {
                return Err(structural(format!("point out of range in {s:?}")));
            }
            // the cycle (p1,...,pk) maps p_i to p_{i+1}; later cycles act first
            let mut c: Vec<usize> = (1..=d).collect();
            for w in 0..pts.len() {
                c[pts[w] - 1] = pts[(w + 1) % pts.len()];
            }
            let cyc = Perm::from_images(&c)?;
            img = Perm::from_images(&img)?.compose(&cyc).images();
        }
        Perm::from_images(&img)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}
