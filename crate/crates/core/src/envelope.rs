//! Presentations of enveloping groups, and homomorphisms out of them into
//! groups of the form `G × ℤ^m`.
//!
//! No general word problem is attempted: equality is decided only through
//! explicit target homomorphisms that are known to be injective.

use std::fmt::Write as _;

use serde::Serialize;

use crate::construct::semidirect_pmq;
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::pmq::{Elem, FinitePmq};

/// A relator, as a word of `(generator, ±1)` letters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relator {
    pub kind: RelatorKind,
    pub word: Vec<(usize, i8)>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelatorKind {
    /// `[b]^{-1} [a] [b] [a^b]^{-1}`
    Conjugation,
    /// `[a] [b] [ab]^{-1}`
    Product,
}

/// One generator per element, one conjugation relator per ordered pair
/// and one product relator per defined product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Relator>,
}

pub fn presentation(q: &FinitePmq) -> GroupPresentation {
    let mut relators = Vec::new();
    for a in q.elements() {
        for b in q.elements() {
            relators.push(Relator {
                kind: RelatorKind::Conjugation,
                word: vec![(b.index(), -1), (a.index(), 1), (b.index(), 1), (q.conj(a, b).index(), -1)],
            });
        }
    }
    for a in q.elements() {
        for b in q.elements() {
            if let Some(c) = q.prod(a, b) {
                relators.push(Relator {
                    kind: RelatorKind::Product,
                    word: vec![(a.index(), 1), (b.index(), 1), (c.index(), -1)],
                });
            }
        }
    }
    GroupPresentation { generators: q.labels().iter().map(|l| format!("[{l}]")).collect(), relators }
}

impl GroupPresentation {
    pub fn count(&self, kind: RelatorKind) -> usize {
        self.relators.iter().filter(|r| r.kind == kind).count()
    }

    /// Generators on the first line, then one relator per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("generators: {}\n", self.generators.join(" "));
        for r in &self.relators {
            let letters: Vec<String> = r
                .word
                .iter()
                .map(|&(g, e)| if e > 0 { self.generators[g].clone() } else { format!("{}^-1", self.generators[g]) })
                .collect();
            let _ = writeln!(out, "{}", letters.join(" "));
        }
        out
    }
}

/// An element `(g, v)` of `G × ℤ^m`.
pub type TargetElem = (usize, Vec<i64>);

fn target_mul(g: &FiniteGroup, x: &TargetElem, y: &TargetElem) -> TargetElem {
    (g.mul(x.0, y.0), x.1.iter().zip(&y.1).map(|(a, b)| a + b).collect())
}

fn target_inv(g: &FiniteGroup, x: &TargetElem) -> TargetElem {
    (g.inv(x.0), x.1.iter().map(|a| -a).collect())
}

/// Evaluates a relator under an assignment of generator images.
pub fn evaluate(g: &FiniteGroup, m: usize, images: &[TargetElem], word: &[(usize, i8)]) -> TargetElem {
    word.iter().fold((g.unit(), vec![0; m]), |acc, &(a, e)| {
        let x = if e > 0 { images[a].clone() } else { target_inv(g, &images[a]) };
        target_mul(g, &acc, &x)
    })
}

/// The first relator not sent to the identity, if any.
pub fn first_failing_relator(q: &FinitePmq, g: &FiniteGroup, m: usize, images: &[TargetElem]) -> Option<Relator> {
    let id = (g.unit(), vec![0; m]);
    presentation(q).relators.into_iter().find(|r| evaluate(g, m, images, &r.word) != id)
}

/// Whether `a ↦ images[a]` extends to a homomorphism from the enveloping
/// group of `q` to `G × ℤ^m`; on failure, the offending relator in text.
pub fn verify_hom(q: &FinitePmq, g: &FiniteGroup, m: usize, images: &[TargetElem]) -> std::result::Result<(), String> {
    if images.len() != q.len() || images.iter().any(|(x, v)| *x >= g.len() || v.len() != m) {
        return Err("one image in G × ℤ^m per element is required".into());
    }
    match first_failing_relator(q, g, m, images) {
        None => Ok(()),
        Some(r) => {
            let p = presentation(q);
            let one = GroupPresentation { generators: p.generators, relators: vec![r] };
            Err(one.to_text().lines().nth(1).unwrap_or_default().to_string())
        }
    }
}

/// The enveloping group of `G ⋉ S` modelled as `G × ℤ^{S/G}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemidirectEnvelope {
    /// `S/G`, each orbit as labels.
    pub orbits: Vec<Vec<String>>,
    /// Image of every element of `G ⋉ S` (group element label, orbit vector).
    pub images: Vec<(String, Vec<i64>)>,
    pub relators_checked: usize,
    pub relators_hold: bool,
    /// `[s] = [s·g]` in the model for all `s`, `g`.
    pub collapse_holds: bool,
    /// Every `[s][t]^{-1}` is central in the image.
    pub kernel_central: bool,
}

impl SemidirectEnvelope {
    pub fn passed(&self) -> bool {
        self.relators_hold && self.collapse_holds && self.kernel_central
    }
}

/// `[g] ↦ (g, 0)`, `[s] ↦ (1, e_{orbit(s)})`, with every check performed.
pub fn env_semidirect(g: &FiniteGroup, s_labels: &[String], action: impl Fn(usize, usize) -> usize) -> Result<SemidirectEnvelope> {
    let q = semidirect_pmq(g, s_labels, &action)?;
    let (ng, ns) = (g.len(), s_labels.len());
    let mut orbit_of = vec![usize::MAX; ns];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for s in 0..ns {
        if orbit_of[s] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = {
            let mut m: Vec<usize> = (0..ng).map(|x| action(s, x)).collect();
            m.sort_unstable();
            m.dedup();
            m
        };
        for &t in &members {
            orbit_of[t] = orbits.len();
        }
        orbits.push(members);
    }
    let m = orbits.len();
    let images: Vec<TargetElem> = q
        .elements()
        .map(|a| {
            let i = a.index();
            if i < ng {
                (i, vec![0; m])
            } else {
                let mut v = vec![0; m];
                v[orbit_of[i - ng]] = 1;
                (g.unit(), v)
            }
        })
        .collect();
    let relators_checked = presentation(&q).relators.len();
    let relators_hold = verify_hom(&q, g, m, &images).is_ok();
    let collapse_holds = (0..ns).all(|s| (0..ng).all(|x| images[ng + s] == images[ng + action(s, x)]));
    let gens: Vec<&TargetElem> = images.iter().collect();
    let kernel_central = (0..ns).all(|s| {
        (0..ns).all(|t| {
            let k = target_mul(g, &images[ng + s], &target_inv(g, &images[ng + t]));
            gens.iter().all(|x| target_mul(g, &k, x) == target_mul(g, x, &k))
        })
    });
    Ok(SemidirectEnvelope {
        orbits: orbits.iter().map(|o| o.iter().map(|&s| s_labels[s].clone()).collect()).collect(),
        images: images.iter().map(|(x, v)| (g.label(*x).to_string(), v.clone())).collect(),
        relators_checked,
        relators_hold,
        collapse_holds,
        kernel_central,
    })
}

/// Images of the elements of `q` given as `(group element, vector)`.
pub fn images_by_elem(q: &FinitePmq, f: impl Fn(Elem) -> TargetElem) -> Vec<TargetElem> {
    q.elements().map(f).collect()
}
