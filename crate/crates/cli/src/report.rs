//! Cell-by-cell comparison of computed energies with the published table.

use diracpt_core::oracle::{self, OracleConfig};
use diracpt_core::spectrum::{self, DEFAULT_TOL};
use diracpt_core::{Error, ModelParams, QuantumNumbers};
use serde_json::{json, Map, Value};

use crate::format::{num, opt_num};
use crate::reference::{ReferenceCell, TABLE1_ALPHAS, TABLE1_DIMS, TABLE1_N};

/// What the closed-form solver (and optionally the oracle) says about a cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellRecord {
    pub reference: ReferenceCell,
    pub n_r: u32,
    pub ell: u32,
    pub m_index: u32,
    pub energy: Option<f64>,
    pub existence_margin: f64,
    /// Set when the cell could not be evaluated at all.
    pub error: Option<String>,
    pub oracle_energy: Option<f64>,
    pub oracle_error: Option<String>,
}

impl CellRecord {
    pub fn computed_present(&self) -> bool {
        self.energy.is_some()
    }

    pub fn existence_agrees(&self) -> bool {
        self.computed_present() == self.reference.present()
    }

    /// `(E_computed − E_printed)/E_printed`.
    pub fn relative_deviation(&self) -> Option<f64> {
        let (e, p) = (self.energy?, self.reference.e_paper?);
        Some((e - p) / p)
    }

    pub fn ratio(&self) -> Option<f64> {
        Some(self.energy? / self.reference.e_paper?)
    }

    pub fn oracle_relative_error(&self) -> Option<f64> {
        let (e, o) = (self.energy?, self.oracle_energy?);
        Some((o - e).abs() / e.abs())
    }
}

/// Pair of cells that share the composite index M.
#[derive(Debug, Clone, PartialEq)]
pub struct DegeneratePair {
    pub alpha: f64,
    pub upper: (u32, u32),
    pub lower: (u32, u32),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub params: ModelParams,
    pub oracle: bool,
    pub cells: Vec<CellRecord>,
}

fn unit_params(alpha: f64) -> ModelParams {
    // Table parameters are fixed and valid for every tabulated α.
    ModelParams::unit_table(alpha).expect("table parameters are valid")
}

fn evaluate(reference: &ReferenceCell, with_oracle: bool) -> CellRecord {
    let p = unit_params(reference.alpha);
    let mut rec = CellRecord {
        reference: reference.clone(),
        n_r: 0,
        ell: 0,
        m_index: 0,
        energy: None,
        existence_margin: f64::NAN,
        error: None,
        oracle_energy: None,
        oracle_error: None,
    };
    let q = match QuantumNumbers::from_principal(reference.n, reference.dim) {
        Ok(q) => q,
        Err(e) => {
            rec.error = Some(e.to_string());
            return rec;
        }
    };
    rec.n_r = q.n_r();
    rec.ell = q.ell();
    rec.m_index = q.m_index();
    rec.existence_margin = spectrum::existence(&p, &q).margin;
    match spectrum::solve_level(&p, &q, DEFAULT_TOL) {
        Ok(sp) => rec.energy = Some(sp.energy),
        Err(Error::NoBoundState(_)) => {}
        Err(e) => rec.error = Some(e.to_string()),
    }
    if with_oracle {
        match oracle::self_consistent_energy(&p, &q, &OracleConfig::default()) {
            Ok(level) => rec.oracle_energy = Some(level.energy),
            Err(Error::NoBoundState(_)) => {}
            Err(e) => rec.oracle_error = Some(e.to_string()),
        }
    }
    rec
}

impl ComparisonReport {
    /// Evaluates every reference cell. Per-cell failures are recorded, never
    /// propagated.
    pub fn build(reference: &[ReferenceCell], with_oracle: bool) -> Self {
        Self {
            params: unit_params(TABLE1_ALPHAS[0]),
            oracle: with_oracle,
            cells: reference.iter().map(|c| evaluate(c, with_oracle)).collect(),
        }
    }

    pub fn cell(&self, dim: u32, n: u32, alpha: f64) -> Option<&CellRecord> {
        self.cells
            .iter()
            .find(|c| c.reference.dim == dim && c.reference.n == n && c.reference.alpha == alpha)
    }

    /// All `(D, n+1)` / `(D+2, n)` pairs inside the table.
    pub fn degenerate_pairs() -> Vec<DegeneratePair> {
        let mut out = Vec::new();
        for &alpha in &TABLE1_ALPHAS {
            for &d in &TABLE1_DIMS {
                if !TABLE1_DIMS.contains(&(d + 2)) {
                    continue;
                }
                for &n in &TABLE1_N {
                    if TABLE1_N.contains(&(n + 1)) {
                        out.push(DegeneratePair {
                            alpha,
                            upper: (d, n + 1),
                            lower: (d + 2, n),
                        });
                    }
                }
            }
        }
        out
    }

    /// Cells where the published table prints "---" but a level is computed.
    pub fn absent_in_paper_but_predicted(&self) -> Vec<&CellRecord> {
        self.cells
            .iter()
            .filter(|c| !c.reference.present() && c.computed_present())
            .collect()
    }

    /// Violations of strict increase along D (fixed n, α) and along α
    /// (fixed n, D), over cells where both neighbours exist.
    pub fn monotonicity_violations(
        &self,
        energy: impl Fn(&CellRecord) -> Option<f64>,
    ) -> (usize, usize, usize, usize) {
        let (mut dim_checked, mut dim_bad, mut alpha_checked, mut alpha_bad) = (0, 0, 0, 0);
        for &n in &TABLE1_N {
            for &alpha in &TABLE1_ALPHAS {
                for w in TABLE1_DIMS.windows(2) {
                    let a = self.cell(w[0], n, alpha).and_then(&energy);
                    let b = self.cell(w[1], n, alpha).and_then(&energy);
                    if let (Some(a), Some(b)) = (a, b) {
                        dim_checked += 1;
                        if b <= a {
                            dim_bad += 1;
                        }
                    }
                }
            }
            for &d in &TABLE1_DIMS {
                for w in TABLE1_ALPHAS.windows(2) {
                    let a = self.cell(d, n, w[0]).and_then(&energy);
                    let b = self.cell(d, n, w[1]).and_then(&energy);
                    if let (Some(a), Some(b)) = (a, b) {
                        alpha_checked += 1;
                        if b <= a {
                            alpha_bad += 1;
                        }
                    }
                }
            }
        }
        (dim_checked, dim_bad, alpha_checked, alpha_bad)
    }

    pub fn to_value(&self) -> Value {
        let cells: Vec<Value> = self.cells.iter().map(|c| self.cell_value(c)).collect();
        json!({
            "parameters": {
                "mu": num(self.params.mu),
                "v0": num(self.params.v0),
                "s0": num(self.params.s0),
                "c1": num(self.params.c1),
            },
            "oracle": self.oracle,
            "cells": cells,
            "summary": self.summary_value(),
        })
    }

    fn cell_value(&self, c: &CellRecord) -> Value {
        let r = &c.reference;
        let mut m = Map::new();
        m.insert("dim".into(), json!(r.dim));
        m.insert("n".into(), json!(r.n));
        m.insert("alpha".into(), num(r.alpha));
        m.insert("n_r".into(), json!(c.n_r));
        m.insert("ell".into(), json!(c.ell));
        m.insert("m_index".into(), json!(c.m_index));
        m.insert(
            "status".into(),
            json!(match (&c.error, c.computed_present()) {
                (Some(_), _) => "error",
                (None, true) => "ok",
                (None, false) => "absent",
            }),
        );
        m.insert("energy".into(), opt_num(c.energy));
        m.insert("existence_margin".into(), num(c.existence_margin));
        m.insert("paper_present".into(), json!(r.present()));
        m.insert("e_paper".into(), opt_num(r.e_paper));
        m.insert(
            "e_paper_printed".into(),
            json!(r.printed.as_deref().unwrap_or("---")),
        );
        m.insert("relative_deviation".into(), opt_num(c.relative_deviation()));
        m.insert("ratio_computed_to_paper".into(), opt_num(c.ratio()));
        m.insert("existence_agrees".into(), json!(c.existence_agrees()));
        m.insert(
            "deviation_flagged".into(),
            json!(c.relative_deviation().is_some_and(|d| d.abs() > 1e-2)),
        );
        if self.oracle {
            m.insert("oracle_energy".into(), opt_num(c.oracle_energy));
            m.insert(
                "oracle_relative_error".into(),
                opt_num(c.oracle_relative_error()),
            );
        }
        if let Some(e) = c.error.as_ref().or(c.oracle_error.as_ref()) {
            m.insert("error".into(), json!(e));
        }
        Value::Object(m)
    }

    fn summary_value(&self) -> Value {
        let computed = self.cells.iter().filter(|c| c.computed_present()).count();
        let paper = self.cells.iter().filter(|c| c.reference.present()).count();
        let agree = self.cells.iter().filter(|c| c.existence_agrees()).count();
        let errors = self.cells.iter().filter(|c| c.error.is_some()).count();
        let predicted: Vec<Value> = self
            .absent_in_paper_but_predicted()
            .iter()
            .map(|c| {
                json!({
                    "dim": c.reference.dim,
                    "n": c.reference.n,
                    "alpha": num(c.reference.alpha),
                    "energy": opt_num(c.energy),
                    "existence_margin": num(c.existence_margin),
                })
            })
            .collect();

        let pairs = Self::degenerate_pairs();
        let mut paper_deg = Vec::new();
        let (mut paper_equal, mut paper_within, mut paper_checked) = (0, 0, 0);
        // The pattern singled out in the published text: (D=3, n=2) against (D=5, n=1).
        let (mut lead_checked, mut lead_equal, mut lead_within) = (0, 0, 0);
        let (mut comp_identical, mut comp_checked) = (0, 0);
        let (mut oracle_checked, mut oracle_worst) = (0, 0.0f64);
        for pair in &pairs {
            let a = self.cell(pair.upper.0, pair.upper.1, pair.alpha);
            let b = self.cell(pair.lower.0, pair.lower.1, pair.alpha);
            let (Some(a), Some(b)) = (a, b) else { continue };
            if let (Some(x), Some(y)) = (a.energy, b.energy) {
                comp_checked += 1;
                if x.to_bits() == y.to_bits() {
                    comp_identical += 1;
                }
            }
            if let (Some(x), Some(y)) = (a.oracle_energy, b.oracle_energy) {
                oracle_checked += 1;
                oracle_worst = oracle_worst.max((x - y).abs() / x.abs());
            }
            if let (Some(x), Some(y)) = (a.reference.e_paper, b.reference.e_paper) {
                paper_checked += 1;
                let exact = x == y;
                let within = a
                    .reference
                    .within_one_printed_unit(&b.reference)
                    .unwrap_or(false);
                paper_equal += usize::from(exact);
                paper_within += usize::from(within);
                if pair.upper == (3, 2) && pair.lower == (5, 1) {
                    lead_checked += 1;
                    lead_equal += usize::from(exact);
                    lead_within += usize::from(within);
                }
                paper_deg.push(json!({
                    "alpha": num(pair.alpha),
                    "dim_a": pair.upper.0,
                    "n_a": pair.upper.1,
                    "dim_b": pair.lower.0,
                    "n_b": pair.lower.1,
                    "e_paper_a": num(x),
                    "e_paper_b": num(y),
                    "exact_equal": exact,
                    "within_one_printed_unit": within,
                }));
            }
        }

        let (dc, db, ac, ab) = self.monotonicity_violations(|c| c.energy);
        let (pdc, pdb, pac, pab) = self.monotonicity_violations(|c| c.reference.e_paper);

        let mut by_alpha = Vec::new();
        for &alpha in &TABLE1_ALPHAS {
            let ratios: Vec<f64> = self
                .cells
                .iter()
                .filter(|c| c.reference.alpha == alpha)
                .filter_map(CellRecord::ratio)
                .collect();
            by_alpha.push(json!({
                "alpha": num(alpha),
                "compared": ratios.len(),
                "min_ratio": opt_num(ratios.iter().copied().reduce(f64::min)),
                "max_ratio": opt_num(ratios.iter().copied().reduce(f64::max)),
            }));
        }
        let devs: Vec<f64> = self
            .cells
            .iter()
            .filter_map(CellRecord::relative_deviation)
            .collect();
        let ratios: Vec<f64> = self.cells.iter().filter_map(CellRecord::ratio).collect();
        let flagged = devs.iter().filter(|d| d.abs() > 1e-2).count();
        let mean_log10 = if ratios.is_empty() {
            None
        } else {
            Some(ratios.iter().map(|r| r.log10()).sum::<f64>() / ratios.len() as f64)
        };
        let all_above = !ratios.is_empty() && ratios.iter().all(|&r| r > 1.0);

        let mut summary = json!({
            "cells": self.cells.len(),
            "computed_present": computed,
            "paper_present": paper,
            "cell_errors": errors,
            "existence_agreements": agree,
            "existence_disagreements": self.cells.len() - agree,
            "paper_absent_predicted_present": predicted,
            "paper_degeneracy": {
                "pairs": paper_checked,
                "exact_equal": paper_equal,
                "within_one_printed_unit": paper_within,
                "d3_n2_vs_d5_n1": {
                    "pairs": lead_checked,
                    "exact_equal": lead_equal,
                    "within_one_printed_unit": lead_within,
                },
                "records": paper_deg,
            },
            "computed_degeneracy": {
                "pairs": comp_checked,
                "bit_identical": comp_identical,
            },
            "monotonicity": {
                "computed_dim_checked": dc,
                "computed_dim_violations": db,
                "computed_alpha_checked": ac,
                "computed_alpha_violations": ab,
                "paper_dim_checked": pdc,
                "paper_dim_violations": pdb,
                "paper_alpha_checked": pac,
                "paper_alpha_violations": pab,
            },
            "deviation": {
                "compared": devs.len(),
                "flagged_above_1_percent": flagged,
                "min_relative_deviation": opt_num(devs.iter().copied().reduce(f64::min)),
                "max_relative_deviation": opt_num(devs.iter().copied().reduce(f64::max)),
                "mean_log10_ratio": opt_num(mean_log10),
                "computed_above_paper_everywhere": all_above,
                "by_alpha": by_alpha,
            },
        });
        if self.oracle {
            let errs: Vec<f64> = self
                .cells
                .iter()
                .filter_map(CellRecord::oracle_relative_error)
                .collect();
            let oracle_absent = self
                .cells
                .iter()
                .filter(|c| c.computed_present() && c.oracle_energy.is_none())
                .count();
            summary["oracle"] = json!({
                "compared": errs.len(),
                "max_relative_error": opt_num(errs.iter().copied().reduce(f64::max)),
                "existence_disagreements": oracle_absent,
                "degenerate_pairs": oracle_checked,
                "degenerate_pairs_max_relative_difference": num(oracle_worst),
            });
        }
        summary
    }
}
