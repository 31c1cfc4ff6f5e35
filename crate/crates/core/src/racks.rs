//! Partially multiplicative racks: every PMQ axiom except `a^a = a`, and
//! the quandle-like core `{a : a^a = a}`.

use serde::Serialize;

use crate::error::{axiom, Result};
use crate::pmq::{Elem, FinitePmq};
use crate::validate::{validate, validate_rack, ValidationReport};

/// A validated partially multiplicative rack. The tables are stored as a
/// [`FinitePmq`], which does not enforce the quandle axiom by itself.
#[derive(Clone, Debug)]
pub struct FinitePmr(FinitePmq);

impl FinitePmr {
    pub fn new(tables: FinitePmq) -> Result<Self> {
        let report = validate_rack(&tables);
        if !report.is_valid() {
            return Err(axiom(report.describe(&tables)));
        }
        Ok(FinitePmr(tables))
    }

    pub fn tables(&self) -> &FinitePmq {
        &self.0
    }

    pub fn is_quandle_like(&self, a: Elem) -> bool {
        self.0.conj(a, a) == a
    }
}

/// Both verdicts for one structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RackReport {
    pub valid_pmr: bool,
    pub valid_pmq: bool,
    pub pmr: serde_json::Value,
    pub pmq: serde_json::Value,
}

pub fn validate_pmr(q: &FinitePmq) -> ValidationReport {
    validate_rack(q)
}

pub fn rack_report(q: &FinitePmq) -> RackReport {
    let (r, p) = (validate_rack(q), validate(q));
    RackReport { valid_pmr: r.is_valid(), valid_pmq: p.is_valid(), pmr: r.to_json(q), pmq: p.to_json(q) }
}

/// The sub-PMQ of elements with `a^a = a`, with restricted operations.
/// It is closed under conjugation and under defined products.
pub fn quandle_like_core(r: &FinitePmr) -> Result<FinitePmq> {
    let keep: Vec<Elem> = r.0.elements().filter(|&a| r.is_quandle_like(a)).collect();
    let core = r.0.restrict(&keep)?;
    let report = validate(&core);
    if !report.is_valid() {
        return Err(axiom(format!("core is not a PMQ: {}", report.describe(&core))));
    }
    Ok(core)
}

/// Whether the core is closed under products, checked on the rack
/// (restriction would otherwise silently drop products leaving it).
pub fn core_is_product_closed(r: &FinitePmr) -> bool {
    let q = &r.0;
    q.elements().filter(|&a| r.is_quandle_like(a)).all(|a| {
        q.elements()
            .filter(|&b| r.is_quandle_like(b))
            .all(|b| q.prod(a, b).map_or(true, |c| r.is_quandle_like(c)))
    })
}

/// Whether a map `P → R` (images by element of `P`) lands in the core.
pub fn image_in_core(r: &FinitePmr, images: &[Elem]) -> bool {
    images.iter().all(|&a| r.is_quandle_like(a))
}
