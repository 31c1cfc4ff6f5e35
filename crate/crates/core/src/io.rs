//! JSON interchange format for finite PMQs and racks.
//!
//! ```json
//! {"elements": ["1", "x"], "unit": "1",
//!  "conj": {"1": {"1": "1", "x": "1"}, "x": {"1": "x", "x": "x"}},
//!  "prod": [["1", "1", "1"], ["1", "x", "x"], ["x", "1", "x"]],
//!  "norm": {"1": 0, "x": 1}}
//! ```
//!
//! Absent `prod` triples mean undefined products; `norm` is optional;
//! `"rack": true` marks a structure that need not satisfy `a^a = a`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{structural, Result};
use crate::pmq::{Elem, FinitePmq};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PmqFile {
    pub elements: Vec<String>,
    pub unit: String,
    pub conj: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    pub prod: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm: Option<BTreeMap<String, u32>>,
    /// Optional declared `a^{b^{-1}}`; must agree with the inverse of `conj`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conj_inv: Option<BTreeMap<String, BTreeMap<String, String>>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub rack: bool,
}

/// A parsed structure and whether it was declared as a rack.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub pmq: FinitePmq,
    pub rack: bool,
}

pub fn from_json_str(text: &str) -> Result<Loaded> {
    let file: PmqFile = serde_json::from_str(text).map_err(|e| structural(format!("invalid JSON: {e}")))?;
    from_file(&file)
}

pub fn from_file(file: &PmqFile) -> Result<Loaded> {
    let n = file.elements.len();
    let index: HashMap<&str, usize> = file.elements.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    if index.len() != n {
        return Err(structural("duplicate element labels"));
    }
    let idx = |l: &str| {
        index
            .get(l)
            .copied()
            .ok_or_else(|| structural(format!("unknown element label {l:?}")))
    };
    let unit = idx(&file.unit)?;
    let conj_table = read_square(&file.conj, &file.elements, &idx, "conj")?;
    let mut prod = vec![None; n * n];
    for (a, b, c) in &file.prod {
        let slot = &mut prod[idx(a)? * n + idx(b)?];
        if slot.is_some() {
            return Err(structural(format!("duplicate product entry for ({a}, {b})")));
        }
        *slot = Some(Elem::from(idx(c)?));
    }
    let norm = match &file.norm {
        None => None,
        Some(map) => {
            let mut v = vec![None; n];
            for (l, &x) in map {
                v[idx(l)?] = Some(x);
            }
            Some(
                v.into_iter()
                    .enumerate()
                    .map(|(i, x)| x.ok_or_else(|| structural(format!("norm missing for {:?}", file.elements[i]))))
                    .collect::<Result<Vec<u32>>>()?,
            )
        }
    };
    let pmq = FinitePmq::from_tables(file.elements.clone(), unit, conj_table, prod, norm)?;
    if let Some(declared) = &file.conj_inv {
        let inv = read_square(declared, &file.elements, &idx, "conj_inv")?;
        if !pmq.has_bijective_conjugation() {
            return Err(structural("conj_inv declared but conjugation maps are not bijective"));
        }
        for a in pmq.elements() {
            for b in pmq.elements() {
                if inv[a.index() * n + b.index()] != pmq.conj_inv(a, b) {
                    return Err(structural(format!(
                        "declared conj_inv disagrees with the inverse of conj at ({}, {})",
                        pmq.label(a),
                        pmq.label(b)
                    )));
                }
            }
        }
    }
    Ok(Loaded { pmq, rack: file.rack })
}

fn read_square(
    map: &BTreeMap<String, BTreeMap<String, String>>,
    elements: &[String],
    idx: &impl Fn(&str) -> Result<usize>,
    what: &str,
) -> Result<Vec<Elem>> {
    let n = elements.len();
    let mut table = vec![None; n * n];
    for (a, row) in map {
        let ia = idx(a)?;
        for (b, c) in row {
            table[ia * n + idx(b)?] = Some(Elem::from(idx(c)?));
        }
    }
    table
        .into_iter()
        .enumerate()
        .map(|(k, e)| {
            e.ok_or_else(|| structural(format!("{what} entry missing for ({}, {})", elements[k / n], elements[k % n])))
        })
        .collect()
}

pub fn to_file(q: &FinitePmq, rack: bool) -> PmqFile {
    let conj = q
        .elements()
        .map(|a| {
            let row = q.elements().map(|b| (q.label(b).to_string(), q.label(q.conj(a, b)).to_string())).collect();
            (q.label(a).to_string(), row)
        })
        .collect();
    let mut prod = Vec::new();
    for a in q.elements() {
        for b in q.elements() {
            if let Some(c) = q.prod(a, b) {
                prod.push((q.label(a).to_string(), q.label(b).to_string(), q.label(c).to_string()));
            }
        }
    }
    let norm = q
        .norms()
        .map(|n| q.elements().map(|a| (q.label(a).to_string(), n[a.index()])).collect());
    PmqFile {
        elements: q.labels().to_vec(),
        unit: q.label(q.unit()).to_string(),
        conj,
        prod,
        norm,
        conj_inv: None,
        rack,
    }
}

pub fn to_json_string(q: &FinitePmq, rack: bool) -> String {
    serde_json::to_string_pretty(&to_file(q, rack)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn round_trip_catalog() {
        for q in [catalog::sd_geo(3), catalog::segre(), catalog::naturals_with_extra_one(3)] {
            let text = to_json_string(&q, false);
            let back = from_json_str(&text).unwrap();
            assert_eq!(back.pmq, q);
            assert!(!back.rack);
        }
    }

    #[test]
    fn structural_errors() {
        let ok = r#"{"elements":["1"],"unit":"1","conj":{"1":{"1":"1"}},"prod":[["1","1","1"]]}"#;
        assert!(from_json_str(ok).is_ok());
        let missing = r#"{"elements":["1","x"],"unit":"1","conj":{"1":{"1":"1"}}}"#;
        assert!(matches!(from_json_str(missing), Err(crate::Error::Structural(_))));
        let outside = r#"{"elements":["1"],"unit":"1","conj":{"1":{"1":"y"}}}"#;
        assert!(matches!(from_json_str(outside), Err(crate::Error::Structural(_))));
        let dup = r#"{"elements":["1"],"unit":"1","conj":{"1":{"1":"1"}},"prod":[["1","1","1"],["1","1","1"]]}"#;
        assert!(matches!(from_json_str(dup), Err(crate::Error::Structural(_))));
        let bad_inv = r#"{"elements":["1","x","y"],"unit":"1",
            "conj":{"1":{"1":"1","x":"1","y":"1"},"x":{"1":"x","x":"x","y":"y"},"y":{"1":"y","x":"y","y":"x"}},
            "conj_inv":{"1":{"1":"1","x":"1","y":"1"},"x":{"1":"x","x":"x","y":"x"},"y":{"1":"y","x":"y","y":"y"}}}"#;
        assert!(matches!(from_json_str(bad_inv), Err(crate::Error::Structural(_))));
    }
}
