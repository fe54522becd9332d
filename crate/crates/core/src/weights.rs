//! Weight-side gating: recognition of symmetric self-dual weights,
//! arithmetic-progression (symmetric-power-lift) shapes, the 7-dimensional
//! exceptional shape, Fontaine-Laffaille admissibility, and the theorem
//! applicability report for ingested weight tables.

use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::is_prime_u64;

/// A sorted integer n-tuple of weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightTuple {
    entries: Vec<i64>,
}

impl WeightTuple {
    /// Entries must already be sorted ascending.
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::MalformedInput("weight tuple must be nonempty".into()));
        }
        if entries.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::MalformedInput("not-sorted".into()));
        }
        Ok(WeightTuple { entries })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// True iff the tuple equals its negated reverse with distinct entries;
/// errors with `not-regular` on duplicates.
pub fn is_symmetric_selfdual(w: &WeightTuple) -> Result<bool> {
    if w.entries.windows(2).any(|p| p[0] == p[1]) {
        return Err(Error::NotRegular);
    }
    let n = w.len();
    Ok((0..n).all(|i| w.entries[i] == -w.entries[n - 1 - i]))
}

/// The common difference h when the tuple is exactly
/// {-m h, ..., -h, 0, h, ..., m h}; None otherwise. Requires a symmetric
/// self-dual input.
pub fn arithmetic_progression_gap(w: &WeightTuple) -> Result<Option<i64>> {
    if !is_symmetric_selfdual(w)? {
        return Err(Error::NotSymmetric);
    }
    if w.len() < 2 {
        return Ok(None);
    }
    let h = w.entries[1] - w.entries[0];
    if h > 0 && w.entries.windows(2).all(|p| p[1] - p[0] == h) {
        Ok(Some(h))
    } else {
        Ok(None)
    }
}

/// The 7-dimensional shape {-(h+k), -k, -h, 0, h, k, h+k} with 0 < h < k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct G2Shape {
    pub h: i64,
    pub k: i64,
    /// The degenerate case where the shape is also an arithmetic
    /// progression of gap h.
    pub k_equals_2h: bool,
}

pub fn g2_shape(w: &WeightTuple) -> Option<G2Shape> {
    if w.len() != 7 {
        return None;
    }
    if !is_symmetric_selfdual(w).ok()? {
        return None;
    }
    // sorted strictly increasing symmetric: (-A, -B, -C, 0, C, B, A)
    let c = w.entries[4];
    let b = w.entries[5];
    let a = w.entries[6];
    if c <= 0 || a != b + c {
        return None;
    }
    Some(G2Shape {
        h: c,
        k: b,
        k_equals_2h: b == 2 * c,
    })
}

/// a_n - a_1 <= ell.
pub fn fl_admissible(w: &WeightTuple, ell: u64) -> bool {
    let spread = w.entries[w.len() - 1] - w.entries[0];
    spread >= 0 && (spread as u64) <= ell
}

/// One representation's worth of gating data: the dimension, one weight
/// tuple per embedding, and the automorphic side conditions that cannot be
/// derived from the weights alone.
#[derive(Debug, Clone)]
pub struct RepRecord {
    pub dim: usize,
    pub base_field_is_q: bool,
    pub weights: Vec<WeightTuple>,
    pub square_integrable_place: bool,
    pub g2_satake: bool,
    /// Asserted externally; conclusions depending on it are marked.
    pub not_sym_power_lift: bool,
    pub level_one: bool,
}

impl RepRecord {
    pub fn new(
        dim: usize,
        base_field_is_q: bool,
        weights: Vec<WeightTuple>,
        square_integrable_place: bool,
        g2_satake: bool,
        not_sym_power_lift: bool,
        level_one: bool,
    ) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::MalformedInput("at least one weight tuple required".into()));
        }
        if weights.iter().any(|w| w.len() != dim) {
            return Err(Error::MalformedInput(format!(
                "every weight tuple must have length {dim}"
            )));
        }
        Ok(RepRecord {
            dim,
            base_field_is_q,
            weights,
            square_integrable_place,
            g2_satake,
            not_sym_power_lift,
            level_one,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TheoremId {
    #[serde(rename = "3.2")]
    T3_2,
    #[serde(rename = "3.4")]
    T3_4,
    #[serde(rename = "4.2")]
    T4_2,
    #[serde(rename = "4.4")]
    T4_4,
    #[serde(rename = "5.1")]
    T5_1,
    #[serde(rename = "5.2")]
    T5_2,
    #[serde(rename = "5.3")]
    C5_3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    PositiveDensity,
    DensityOne,
    AlmostAll,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetGroup {
    Omega(usize),
    GTwo,
}

impl Serialize for TargetGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TargetGroup::Omega(p) => s.serialize_str(&format!("Omega_{p}")),
            TargetGroup::GTwo => s.serialize_str("G_2"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremApplication {
    pub id: TheoremId,
    pub conclusion: Conclusion,
    pub group: TargetGroup,
    /// Unverifiable hypotheses this conclusion is conditional on.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub assumes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FailedCondition {
    pub id: TheoremId,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ApplicabilityReport {
    pub dim: usize,
    pub applicable_theorems: Vec<TheoremApplication>,
    pub failed_conditions: Vec<FailedCondition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window_note: Option<String>,
}

const LIFT_ASSUMPTION: &str = "not a symmetric-power lift (asserted input)";

/// Evaluate which theorems apply to a record. Density-one conclusions are
/// only ever emitted alongside their positive-density base case.
pub fn theorem_gate(rec: &RepRecord) -> Result<ApplicabilityReport> {
    let p = rec.dim;
    if p < 3 || p % 2 == 0 || !is_prime_u64(p as u64) {
        return Err(Error::NotInScope(p));
    }
    let mut applicable = Vec::new();
    let mut failed = Vec::new();
    let mut window_note = None;

    // weight-shape facts, one entry per embedding
    let mut all_symmetric = true;
    let mut regular = true;
    for w in &rec.weights {
        match is_symmetric_selfdual(w) {
            Ok(true) => {}
            Ok(false) => all_symmetric = false,
            Err(_) => {
                regular = false;
                all_symmetric = false;
            }
        }
    }
    let some_non_progression = all_symmetric
        && rec
            .weights
            .iter()
            .any(|w| matches!(arithmetic_progression_gap(w), Ok(None)));
    let shapes: Vec<Option<G2Shape>> = rec.weights.iter().map(g2_shape).collect();
    let all_g2_shaped = shapes.iter().all(Option::is_some);
    let some_k_ne_2h = shapes
        .iter()
        .flatten()
        .any(|s| !s.k_equals_2h);

    let in_window = p <= 293;
    if p > 293 && p <= 393 {
        window_note = Some(format!(
            "dimension {p} is outside the p <= 293 classification window used here \
             (some sources quote 393); no orthogonal-target theorem is gated"
        ));
    }

    let base_shape_reason = if !regular {
        Some("weights have repeated entries (not regular)".to_string())
    } else if !all_symmetric {
        Some("weights are not symmetric self-dual".to_string())
    } else {
        None
    };

    // 3.2: positive density orthogonal containment
    let t32_ok;
    if p == 3 || p == 7 {
        failed.push(FailedCondition {
            id: TheoremId::T3_2,
            reason: format!("dimension {p} is excluded (p different from 3 and 7)"),
        });
        t32_ok = false;
    } else if !in_window {
        failed.push(FailedCondition {
            id: TheoremId::T3_2,
            reason: format!("dimension {p} exceeds the 293 window"),
        });
        t32_ok = false;
    } else if let Some(reason) = &base_shape_reason {
        failed.push(FailedCondition {
            id: TheoremId::T3_2,
            reason: reason.clone(),
        });
        t32_ok = false;
    } else if !some_non_progression {
        failed.push(FailedCondition {
            id: TheoremId::T3_2,
            reason: "every embedding has an arithmetic-progression weight".into(),
        });
        t32_ok = false;
    } else {
        applicable.push(TheoremApplication {
            id: TheoremId::T3_2,
            conclusion: Conclusion::PositiveDensity,
            group: TargetGroup::Omega(p),
            assumes: Vec::new(),
        });
        t32_ok = true;
    }

    // 3.4: density one with a square-integrable place
    if t32_ok && rec.square_integrable_place {
        applicable.push(TheoremApplication {
            id: TheoremId::T3_4,
            conclusion: Conclusion::DensityOne,
            group: TargetGroup::Omega(p),
            assumes: Vec::new(),
        });
    } else if t32_ok {
        failed.push(FailedCondition {
            id: TheoremId::T3_4,
            reason: "no square-integrable finite place".into(),
        });
    }

    // 4.2: the 7-dimensional exceptional target
    let t42_ok;
    if p != 7 {
        failed.push(FailedCondition {
            id: TheoremId::T4_2,
            reason: "requires dimension 7".into(),
        });
        t42_ok = false;
    } else if !rec.g2_satake {
        failed.push(FailedCondition {
            id: TheoremId::T4_2,
            reason: "Satake parameters not asserted to land in the 7-dim exceptional image".into(),
        });
        t42_ok = false;
    } else if !all_g2_shaped {
        failed.push(FailedCondition {
            id: TheoremId::T4_2,
            reason: "weights are not of the shape {-(h+k), -k, -h, 0, h, k, h+k}".into(),
        });
        t42_ok = false;
    } else if !some_k_ne_2h {
        failed.push(FailedCondition {
            id: TheoremId::T4_2,
            reason: "every embedding has k = 2h (sixth-symmetric-power shape)".into(),
        });
        t42_ok = false;
    } else {
        applicable.push(TheoremApplication {
            id: TheoremId::T4_2,
            conclusion: Conclusion::PositiveDensity,
            group: TargetGroup::GTwo,
            assumes: Vec::new(),
        });
        t42_ok = true;
    }

    // 4.4: density one variant
    if t42_ok && rec.square_integrable_place {
        applicable.push(TheoremApplication {
            id: TheoremId::T4_4,
            conclusion: Conclusion::DensityOne,
            group: TargetGroup::GTwo,
            assumes: Vec::new(),
        });
    } else if t42_ok {
        failed.push(FailedCondition {
            id: TheoremId::T4_4,
            reason: "no square-integrable finite place".into(),
        });
    }

    // 5.1: rational base field with the lift hypothesis
    if p != 3 && p != 7 && in_window {
        if !rec.base_field_is_q {
            failed.push(FailedCondition {
                id: TheoremId::T5_1,
                reason: "base field is not the rationals".into(),
            });
        } else if let Some(reason) = &base_shape_reason {
            failed.push(FailedCondition {
                id: TheoremId::T5_1,
                reason: reason.clone(),
            });
        } else if !rec.not_sym_power_lift {
            failed.push(FailedCondition {
                id: TheoremId::T5_1,
                reason: "symmetric-power-lift exclusion not asserted".into(),
            });
        } else {
            applicable.push(TheoremApplication {
                id: TheoremId::T5_1,
                conclusion: if rec.square_integrable_place {
                    Conclusion::DensityOne
                } else {
                    Conclusion::PositiveDensity
                },
                group: TargetGroup::Omega(p),
                assumes: vec![LIFT_ASSUMPTION.into()],
            });
        }
    }

    // 5.2: 7-dimensional rational case with the lift hypothesis
    if p == 7 {
        if !rec.base_field_is_q {
            failed.push(FailedCondition {
                id: TheoremId::T5_2,
                reason: "base field is not the rationals".into(),
            });
        } else if !rec.g2_satake {
            failed.push(FailedCondition {
                id: TheoremId::T5_2,
                reason: "Satake parameters not asserted to land in the 7-dim exceptional image"
                    .into(),
            });
        } else if !rec.not_sym_power_lift {
            failed.push(FailedCondition {
                id: TheoremId::T5_2,
                reason: "symmetric-power-lift exclusion not asserted".into(),
            });
        } else {
            applicable.push(TheoremApplication {
                id: TheoremId::T5_2,
                conclusion: if rec.square_integrable_place {
                    Conclusion::DensityOne
                } else {
                    Conclusion::PositiveDensity
                },
                group: TargetGroup::GTwo,
                assumes: vec![LIFT_ASSUMPTION.into()],
            });
        }
    }

    // 5.3: the 5-dimensional rational case holds for almost all primes
    if p == 5 {
        if !rec.base_field_is_q {
            failed.push(FailedCondition {
                id: TheoremId::C5_3,
                reason: "base field is not the rationals".into(),
            });
        } else if !rec.not_sym_power_lift {
            failed.push(FailedCondition {
                id: TheoremId::C5_3,
                reason: "symmetric-power-lift exclusion not asserted".into(),
            });
        } else {
            applicable.push(TheoremApplication {
                id: TheoremId::C5_3,
                conclusion: Conclusion::AlmostAll,
                group: TargetGroup::Omega(5),
                assumes: vec![LIFT_ASSUMPTION.into()],
            });
        }
    }

    Ok(ApplicabilityReport {
        dim: p,
        applicable_theorems: applicable,
        failed_conditions: failed,
        window_note,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RowError {
    pub row: usize,
    pub message: String,
}

#[derive(Debug)]
pub struct IngestOutcome {
    pub records: Vec<RepRecord>,
    pub row_errors: Vec<RowError>,
}

/// Read the CSV weight table: columns dim, base_field, weights (semicolon
/// separated per-embedding blocks of space-separated integers),
/// square_integrable, g2_satake, not_sym_power_lift, and an optional
/// level_one column. Malformed rows become row errors without aborting.
pub fn ingest_weight_table(path: &Path) -> Result<IngestOutcome> {
    let data = std::fs::read_to_string(path).map_err(|e| Error::Io(e.to_string()))?;
    ingest_weight_table_str(&data)
}

pub fn ingest_weight_table_str(data: &str) -> Result<IngestOutcome> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(data.as_bytes());
    let mut records = Vec::new();
    let mut row_errors = Vec::new();
    for (idx, row) in reader.records().enumerate() {
        let row = match row {
            Ok(r) => r,
            Err(e) => {
                row_errors.push(RowError {
                    row: idx,
                    message: format!("unparseable row: {e}"),
                });
                continue;
            }
        };
        if row.iter().all(|f| f.is_empty()) {
            continue;
        }
        // a header line is allowed: skip the first row when its dim field
        // is not an integer
        if idx == 0 && row.get(0).is_some_and(|f| f.parse::<usize>().is_err()) {
            continue;
        }
        match parse_row(&row) {
            Ok(rec) => records.push(rec),
            Err(message) => row_errors.push(RowError { row: idx, message }),
        }
    }
    Ok(IngestOutcome {
        records,
        row_errors,
    })
}

fn parse_flag(field: Option<&str>, name: &str) -> std::result::Result<bool, String> {
    match field.map(str::trim) {
        None | Some("") | Some("0") => Ok(false),
        Some("1") => Ok(true),
        Some(other) => match other.to_ascii_lowercase().as_str() {
            "true" => Ok(true),
            "false" => Ok(false),
            _ => Err(format!("{name}: expected 0/1, got {other:?}")),
        },
    }
}

fn parse_row(row: &csv::StringRecord) -> std::result::Result<RepRecord, String> {
    let dim: usize = row
        .get(0)
        .ok_or("missing dim")?
        .parse()
        .map_err(|_| format!("dim: expected an integer, got {:?}", row.get(0).unwrap()))?;
    let base = row.get(1).unwrap_or("").trim();
    let base_is_q = base.eq_ignore_ascii_case("q");
    let weights_field = row.get(2).ok_or("missing weights column")?;
    if weights_field.trim().is_empty() {
        return Err("weights column is empty".into());
    }
    let mut weights = Vec::new();
    for block in weights_field.split(';') {
        let entries: std::result::Result<Vec<i64>, _> = block
            .split_whitespace()
            .map(|t| t.parse::<i64>())
            .collect();
        let entries = entries.map_err(|_| format!("weights: bad integer in block {block:?}"))?;
        if entries.windows(2).any(|w| w[0] > w[1]) {
            return Err("not-sorted".into());
        }
        let tuple = WeightTuple::new(entries).map_err(|e| e.to_string())?;
        if tuple.len() != dim {
            return Err(format!(
                "weights: block of length {} does not match dim {dim}",
                tuple.len()
            ));
        }
        weights.push(tuple);
    }
    let square_integrable = parse_flag(row.get(3), "square_integrable")?;
    let g2_satake = parse_flag(row.get(4), "g2_satake")?;
    let not_sym_power_lift = parse_flag(row.get(5), "not_sym_power_lift")?;
    let level_one = parse_flag(row.get(6), "level_one")?;
    RepRecord::new(
        dim,
        base_is_q,
        weights,
        square_integrable,
        g2_satake,
        not_sym_power_lift,
        level_one,
    )
    .map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wt(entries: &[i64]) -> WeightTuple {
        WeightTuple::new(entries.to_vec()).unwrap()
    }

    const GL11_GENERIC: [i64; 11] = [-16, -13, -11, -8, -3, 0, 3, 8, 11, 13, 16];
    const GL11_PROGRESSION: [i64; 11] = [-15, -12, -9, -6, -3, 0, 3, 6, 9, 12, 15];
    const GL5_PROGRESSION: [i64; 5] = [-46, -23, 0, 23, 46];

    #[test]
    fn symmetry_detection() {
        assert!(is_symmetric_selfdual(&wt(&GL11_GENERIC)).unwrap());
        assert!(!is_symmetric_selfdual(&wt(&[-2, -1, 0, 1, 3])).unwrap());
        assert!(is_symmetric_selfdual(&wt(&[0])).unwrap());
        assert_eq!(
            is_symmetric_selfdual(&wt(&[-1, 0, 0, 1, 2])),
            Err(Error::NotRegular)
        );
        assert!(WeightTuple::new(vec![3, 1, 2]).is_err());
    }

    #[test]
    fn progression_gaps_match_table_examples() {
        assert_eq!(
            arithmetic_progression_gap(&wt(&GL11_PROGRESSION)).unwrap(),
            Some(3)
        );
        assert_eq!(
            arithmetic_progression_gap(&wt(&GL5_PROGRESSION)).unwrap(),
            Some(23)
        );
        assert_eq!(arithmetic_progression_gap(&wt(&GL11_GENERIC)).unwrap(), None);
        assert_eq!(
            arithmetic_progression_gap(&wt(&[-2, -1, 0, 1, 3])),
            Err(Error::NotSymmetric)
        );
    }

    #[test]
    fn progression_reconstructs_the_shape() {
        let w = wt(&GL11_PROGRESSION);
        let h = arithmetic_progression_gap(&w).unwrap().unwrap();
        let m = (w.len() / 2) as i64;
        let rebuilt: Vec<i64> = (-m..=m).map(|j| j * h).collect();
        assert_eq!(w.entries(), &rebuilt[..]);
    }

    #[test]
    fn g2_shapes() {
        let s = g2_shape(&wt(&[-13, -8, -5, 0, 5, 8, 13])).unwrap();
        assert_eq!((s.h, s.k, s.k_equals_2h), (5, 8, false));
        let s = g2_shape(&wt(&[-12, -8, -4, 0, 4, 8, 12])).unwrap();
        assert_eq!((s.h, s.k, s.k_equals_2h), (4, 8, true));
        let s = g2_shape(&wt(&[-3, -2, -1, 0, 1, 2, 3])).unwrap();
        assert_eq!((s.h, s.k, s.k_equals_2h), (1, 2, true));
        // top entry is not the sum of the middle two
        assert!(g2_shape(&wt(&[-14, -8, -5, 0, 5, 8, 14])).is_none());
        // degenerate (not strictly increasing)
        assert!(g2_shape(&wt(&[-8, -8, -5, 0, 5, 8, 8])).is_none());
        // k = 2h shapes are exactly the arithmetic progressions
        let w = wt(&[-12, -8, -4, 0, 4, 8, 12]);
        assert_eq!(arithmetic_progression_gap(&w).unwrap(), Some(4));
    }

    #[test]
    fn fl_admissibility_boundaries() {
        let w = wt(&GL11_GENERIC);
        assert!(fl_admissible(&w, 37));
        assert!(fl_admissible(&w, 32));
        assert!(!fl_admissible(&w, 31));
        assert!(fl_admissible(&wt(&[0]), 3));
    }

    fn record(dim: usize, weights: &[&[i64]]) -> RepRecord {
        RepRecord::new(
            dim,
            true,
            weights.iter().map(|w| wt(w)).collect(),
            false,
            false,
            false,
            true,
        )
        .unwrap()
    }

    fn applied(report: &ApplicabilityReport, id: TheoremId) -> Option<&TheoremApplication> {
        report.applicable_theorems.iter().find(|t| t.id == id)
    }

    fn failed(report: &ApplicabilityReport, id: TheoremId) -> Option<&FailedCondition> {
        report.failed_conditions.iter().find(|t| t.id == id)
    }

    #[test]
    fn gate_on_generic_gl11_weight() {
        let mut rec = record(11, &[&GL11_GENERIC]);
        let report = theorem_gate(&rec).unwrap();
        let t = applied(&report, TheoremId::T3_2).expect("3.2 applies");
        assert_eq!(t.conclusion, Conclusion::PositiveDensity);
        assert_eq!(t.group, TargetGroup::Omega(11));
        assert!(failed(&report, TheoremId::T3_4).is_some());
        assert!(failed(&report, TheoremId::T5_1).is_some());

        rec.not_sym_power_lift = true;
        rec.square_integrable_place = true;
        let report = theorem_gate(&rec).unwrap();
        assert!(applied(&report, TheoremId::T3_4).is_some());
        let t51 = applied(&report, TheoremId::T5_1).expect("5.1 applies");
        assert_eq!(t51.conclusion, Conclusion::DensityOne);
        assert!(!t51.assumes.is_empty());
    }

    #[test]
    fn gate_excludes_progression_weights() {
        let report = theorem_gate(&record(11, &[&GL11_PROGRESSION])).unwrap();
        assert!(applied(&report, TheoremId::T3_2).is_none());
        assert!(failed(&report, TheoremId::T3_2).is_some());
        let report5 = theorem_gate(&record(5, &[&GL5_PROGRESSION])).unwrap();
        assert!(applied(&report5, TheoremId::T3_2).is_none());
    }

    #[test]
    fn gate_five_dimensional_rational_case() {
        let mut rec = record(5, &[&GL5_PROGRESSION]);
        rec.not_sym_power_lift = true;
        let report = theorem_gate(&rec).unwrap();
        let t = applied(&report, TheoremId::C5_3).expect("5.3 applies");
        assert_eq!(t.conclusion, Conclusion::AlmostAll);
        assert_eq!(t.group, TargetGroup::Omega(5));
        // without the lift assertion it fails
        rec.not_sym_power_lift = false;
        let report = theorem_gate(&rec).unwrap();
        assert!(applied(&report, TheoremId::C5_3).is_none());
    }

    #[test]
    fn gate_seven_dimensional_cases() {
        // (h, k) = (5, 8): both exceptional theorems in play
        let mut rec = record(7, &[&[-13, -8, -5, 0, 5, 8, 13]]);
        rec.g2_satake = true;
        rec.not_sym_power_lift = true;
        let report = theorem_gate(&rec).unwrap();
        assert!(applied(&report, TheoremId::T4_2).is_some());
        assert!(applied(&report, TheoremId::T5_2).is_some());
        // 3.2 must never fire in dimension 7
        assert!(applied(&report, TheoremId::T3_2).is_none());

        // (h, k) = (4, 8): excluded from 4.2, still covered by 5.2
        let mut rec = record(7, &[&[-12, -8, -4, 0, 4, 8, 12]]);
        rec.g2_satake = true;
        rec.not_sym_power_lift = true;
        let report = theorem_gate(&rec).unwrap();
        assert!(applied(&report, TheoremId::T4_2).is_none());
        assert!(failed(&report, TheoremId::T4_2).is_some());
        assert!(applied(&report, TheoremId::T5_2).is_some());
    }

    #[test]
    fn gate_monotonicity_and_permutation_invariance() {
        let w_a: &[i64] = &GL11_GENERIC;
        let w_b: &[i64] = &GL11_PROGRESSION;
        let mut rec = record(11, &[w_a, w_b]);
        rec.square_integrable_place = true;
        let r1 = theorem_gate(&rec).unwrap();
        // density-one implies the positive-density entry is present
        assert!(applied(&r1, TheoremId::T3_4).is_some());
        assert!(applied(&r1, TheoremId::T3_2).is_some());
        let mut swapped = record(11, &[w_b, w_a]);
        swapped.square_integrable_place = true;
        let r2 = theorem_gate(&swapped).unwrap();
        assert_eq!(
            serde_json::to_string(&r1).unwrap(),
            serde_json::to_string(&r2).unwrap()
        );
    }

    #[test]
    fn gate_rejects_out_of_scope_dimensions() {
        // 9 is odd but not prime
        let nine = theorem_gate(&record(9, &[&[-4, -3, -2, -1, 0, 1, 2, 3, 4][..]]));
        assert!(matches!(nine, Err(Error::NotInScope(9))));
        assert!(theorem_gate(&record(4, &[&[-2, -1, 1, 2][..]])).is_err());
    }

    #[test]
    fn ingest_parses_table_rows() {
        let csv = "\
11,Q,-16 -13 -11 -8 -3 0 3 8 11 13 16,,,
11,Q,-15 -12 -9 -6 -3 0 3 6 9 12 15,0,0,1
5,Q,-46 -23 0 23 46,1,,1
7,Q,-13 -8 -5 0 5 8 13,0,1,1
";
        let out = ingest_weight_table_str(csv).unwrap();
        assert_eq!(out.records.len(), 4);
        assert!(out.row_errors.is_empty());
        assert_eq!(out.records[0].dim, 11);
        assert!(out.records[0].base_field_is_q);
        assert!(!out.records[0].not_sym_power_lift);
        assert!(out.records[2].square_integrable_place);
        assert!(out.records[3].g2_satake);
    }

    #[test]
    fn ingest_collects_row_errors() {
        let csv = "\
dim,base_field,weights,square_integrable,g2_satake,not_sym_power_lift
5,Q,1 0 -1 2 -2,,,
5,Q,-2 -1 0 1 2,,,
x,Q,-1 0 1,,,
3,Q,-1 0 1,2,,
";
        let out = ingest_weight_table_str(csv).unwrap();
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.records[0].dim, 5);
        assert_eq!(out.row_errors.len(), 3);
        assert!(out.row_errors.iter().any(|e| e.message == "not-sorted"));
        assert!(out.row_errors.iter().any(|e| e.message.contains("dim")));
        assert!(out
            .row_errors
            .iter()
            .any(|e| e.message.contains("square_integrable")));
    }

    #[test]
    fn ingest_empty_table() {
        let out = ingest_weight_table_str("").unwrap();
        assert!(out.records.is_empty());
        assert!(out.row_errors.is_empty());
    }

    #[test]
    fn ingest_multi_embedding_blocks() {
        let csv = "5,other,-2 -1 0 1 2;-3 -1 0 1 3,,,1\n";
        let out = ingest_weight_table_str(csv).unwrap();
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.records[0].weights.len(), 2);
        assert!(!out.records[0].base_field_is_q);
    }

    #[test]
    fn ingest_io_error() {
        let err = ingest_weight_table(Path::new("/nonexistent/table.csv")).unwrap_err();
        assert!(matches!(err, Error::Io(_)));
    }
}
