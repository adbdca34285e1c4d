//! Independent re-check of a claimed solution.

use bordermin::{compute_bl, idle_positions, CostMethod, DepositionSequence, Instance, Placement};
use serde::Serialize;

use crate::format::SolutionFile;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub claimed: u64,
    /// Border length recomputed from pairwise embedding distances.
    pub hamming: Option<u64>,
    /// Border length recomputed from the derived masks.
    pub masks: Option<u64>,
    pub supersequence: bool,
    /// No deposition step is idle. Only known when the deposition parses.
    pub good: Option<bool>,
    /// 0-based positions of idle deposition steps.
    pub idle_positions: Vec<usize>,
    pub errors: Vec<String>,
    pub warnings: Vec<String>,
}

impl VerifyReport {
    pub fn render(&self) -> String {
        let mut out = format!("{}\n", if self.pass { "PASS" } else { "FAIL" });
        out.push_str(&format!("claimed border length: {}\n", self.claimed));
        let show = |v: Option<u64>| v.map_or("-".to_string(), |x| x.to_string());
        out.push_str(&format!("hamming: {}\nmasks: {}\n", show(self.hamming), show(self.masks)));
        out.push_str(&format!("supersequence: {}\n", self.supersequence));
        if let Some(g) = self.good {
            out.push_str(&format!("good: {g}\n"));
        }
        for e in &self.errors {
            out.push_str(&format!("error: {e}\n"));
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }
}

/// Recomputes the border length of `(placement, deposition)` by the Hamming
/// and mask routes. Passes iff the placement is valid, the deposition is a
/// supersequence of every probe and both recomputations equal the claim.
/// Idle steps only produce a warning: they never change the border length.
pub fn verify(instance: &Instance, solution: &SolutionFile) -> VerifyReport {
    let mut report = VerifyReport {
        pass: false,
        claimed: solution.border_length,
        hamming: None,
        masks: None,
        supersequence: false,
        good: None,
        idle_positions: Vec::new(),
        errors: Vec::new(),
        warnings: Vec::new(),
    };
    let symbols = match instance.alphabet().encode(&solution.deposition) {
        Ok(s) => s,
        Err(e) => {
            report.errors.push(format!("deposition: {e}"));
            return report;
        }
    };
    let deposition = match DepositionSequence::new(instance, symbols) {
        Ok(d) => {
            report.supersequence = true;
            d
        }
        Err(e) => {
            report.errors.push(e.to_string());
            return report;
        }
    };
    if let Ok(idle) = idle_positions(instance, &deposition) {
        report.idle_positions = idle.iter().enumerate().filter(|(_, &i)| i).map(|(k, _)| k).collect();
        report.good = Some(report.idle_positions.is_empty());
        if !report.idle_positions.is_empty() {
            report.warnings.push(format!(
                "deposition is redundant: no probe receives a character at position(s) {:?}",
                report.idle_positions
            ));
        }
    }
    let dims_ok = solution.placement.len() == instance.rows()
        && solution.placement.iter().all(|row| row.len() == instance.cols());
    if !dims_ok {
        report.errors.push(format!("placement is not a {}x{} grid", instance.rows(), instance.cols()));
        return report;
    }
    let placement = match Placement::new(instance, solution.placement.concat()) {
        Ok(p) => p,
        Err(e) => {
            report.errors.push(e.to_string());
            return report;
        }
    };
    for (method, slot) in [(CostMethod::Hamming, &mut report.hamming), (CostMethod::Masks, &mut report.masks)] {
        match compute_bl(instance, &placement, &deposition, method) {
            Ok(bl) => *slot = Some(bl),
            Err(e) => report.errors.push(e.to_string()),
        }
    }
    report.pass = report.errors.is_empty()
        && report.hamming == Some(report.claimed)
        && report.masks == Some(report.claimed);
    if !report.pass && report.errors.is_empty() {
        report.errors.push(format!(
            "claimed border length {} but recomputed {}",
            report.claimed,
            report.hamming.unwrap_or_default()
        ));
    }
    report
}
