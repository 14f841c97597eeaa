//! Per-k comparison of known and proposed bounds on `c_k`.
//!
//! Lower-bound columns are exact rationals printed truncated to four digits;
//! upper-bound columns are printed rounded to nearest. Both renderings are kept.

use num_rational::BigRational;
use serde::Serialize;

use crate::construction::{alon_upper_bound, lai_chang_lower_bound, paper_lower_bound};
use crate::error::{Error, Result};
use crate::rational::{fixed_bare, from_f64, serde_text, Rounding};
use crate::weights::{check_printed_scheme, optimize_scheme, WeightScheme, TABLE2_DECIMALS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum UpperBoundSource {
    /// The published weight row, checked exactly.
    Published,
    /// An exact LP optimum at `C = 100`.
    Optimized,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub truncated: String,
    pub rounded: String,
}

impl Cell {
    fn of(v: &BigRational) -> Self {
        Self {
            truncated: fixed_bare(v, 4, Rounding::Truncate),
            rounded: fixed_bare(v, 4, Rounding::Nearest),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsRow {
    pub k: usize,
    #[serde(with = "serde_text")]
    pub known_lb: BigRational,
    #[serde(with = "serde_text")]
    pub proposed_lb: BigRational,
    #[serde(with = "serde_text")]
    pub proposed_ub: BigRational,
    pub ub_source: UpperBoundSource,
    pub known_ub: f64,
    pub lb_improved: bool,
    pub ub_improved: bool,
    pub known_lb_cell: Cell,
    pub proposed_lb_cell: Cell,
    pub proposed_ub_cell: Cell,
    pub known_ub_cell: Cell,
}

impl BoundsRow {
    /// The four numeric cells as printed: LB columns truncated, UB columns rounded.
    pub fn printed_cells(&self) -> [&str; 4] {
        [
            &self.known_lb_cell.truncated,
            &self.proposed_lb_cell.truncated,
            &self.proposed_ub_cell.rounded,
            &self.known_ub_cell.rounded,
        ]
    }
}

pub fn bounds_row(k: usize) -> Result<BoundsRow> {
    if k < 2 {
        return Err(Error::UniformityOutOfDomain { k, min: 2 });
    }
    let known_lb = lai_chang_lower_bound(k)?;
    let proposed_lb = paper_lower_bound(k);
    let known_ub = alon_upper_bound(k)?;
    let (proposed_ub, ub_source) = match WeightScheme::table2(k) {
        Some(s) if check_printed_scheme(k, &s, TABLE2_DECIMALS)?.verdict => {
            (s.implied_bound(), UpperBoundSource::Published)
        }
        _ => {
            let c = BigRational::from_integer(100.into());
            (optimize_scheme(k, &c)?.bound().clone(), UpperBoundSource::Optimized)
        }
    };
    let known_ub_exact = from_f64(known_ub);
    Ok(BoundsRow {
        k,
        lb_improved: proposed_lb > known_lb,
        ub_improved: proposed_ub < known_ub_exact,
        known_lb_cell: Cell::of(&known_lb),
        proposed_lb_cell: Cell::of(&proposed_lb),
        proposed_ub_cell: Cell::of(&proposed_ub),
        known_ub_cell: Cell::of(&known_ub_exact),
        known_lb,
        proposed_lb,
        proposed_ub,
        ub_source,
        known_ub,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport {
    pub rows: Vec<BoundsRow>,
}

impl BoundsReport {
    pub fn build(ks: impl IntoIterator<Item = usize>) -> Result<Self> {
        Ok(Self { rows: ks.into_iter().map(bounds_row).collect::<Result<_>>()? })
    }

    /// Improvements are marked with `*`.
    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| k | known LB | proposed LB | proposed UB | known UB |\n");
        out.push_str("|---|---|---|---|---|\n");
        for r in &self.rows {
            let [klb, plb, pub_, kub] = r.printed_cells();
            out.push_str(&format!(
                "| {} | {} | {}{} | {}{} | {} |\n",
                r.k,
                klb,
                plb,
                if r.lb_improved { "*" } else { "" },
                pub_,
                if r.ub_improved { "*" } else { "" },
                kub
            ));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "k,known_lb,proposed_lb,proposed_ub,known_ub,lb_improved,ub_improved,\
             known_lb_exact,proposed_lb_exact,proposed_ub_exact,known_ub_float,ub_source\n",
        );
        for r in &self.rows {
            let [klb, plb, pub_, kub] = r.printed_cells();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                r.k,
                klb,
                plb,
                pub_,
                kub,
                r.lb_improved,
                r.ub_improved,
                crate::rational::to_text(&r.known_lb),
                crate::rational::to_text(&r.proposed_lb),
                crate::rational::to_text(&r.proposed_ub),
                r.known_ub,
                match r.ub_source {
                    UpperBoundSource::Published => "published",
                    UpperBoundSource::Optimized => "optimized",
                }
            ));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{:>3}  {:>9}  {:>12}  {:>12}  {:>9}\n",
            "k", "known LB", "proposed LB", "proposed UB", "known UB"
        );
        for r in &self.rows {
            let [klb, plb, pub_, kub] = r.printed_cells();
            let mark = |b: bool| if b { "*" } else { " " };
            out.push_str(&format!(
                "{:>3}  {:>9}  {:>11}{}  {:>11}{}  {:>9}\n",
                r.k,
                klb,
                plb,
                mark(r.lb_improved),
                pub_,
                mark(r.ub_improved),
                kub
            ));
        }
        out.push_str("(* improves on the known bound; LB truncated, UB rounded to 4 digits)\n");
        out
    }
}
