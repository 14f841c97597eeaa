//! Weight schemes and the discharging constraint system behind `C * tau(H) <= w(H)`.
//!
//! A scheme assigns `w1, w2, w3` to vertices of degree 1, 2, 3, `w4` to vertices of
//! degree at least 4 and `wm` to every edge. The inductive argument removes one or
//! two vertices (with their closed neighbourhood of edges) in each of a fixed list
//! of situations; each situation becomes one linear inequality on the weights, with
//! coefficients depending on `k`. A scheme satisfying all of them certifies
//! `c_k <= max(w) / C`.
//!
//! What is checked here is the arithmetic of that argument, not its completeness.
//! [`fuzz_lemma`] probes the conclusion on random instances.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construction::{random_uniform_with, RandomSpec};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, HypergraphDocument};
use crate::lp::{self, LinearForm, LinearProgram, LpOutcome, Relation};
use crate::rational::{self, int, serde_text, serde_text_opt, to_text};
use crate::transversal::tau_exact;

pub const WEIGHT_NAMES: [&str; 5] = ["w1", "w2", "w3", "w4", "wm"];

/// Text attached to every certificate report.
pub const CAVEAT: &str = "These checks cover the arithmetic of each case of the inductive argument \
as transcribed; they do not establish that the case analysis is exhaustive.";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightScheme {
    pub k: usize,
    #[serde(with = "serde_text")]
    pub w1: BigRational,
    #[serde(with = "serde_text")]
    pub w2: BigRational,
    #[serde(with = "serde_text")]
    pub w3: BigRational,
    #[serde(with = "serde_text")]
    pub w4: BigRational,
    #[serde(with = "serde_text")]
    pub wm: BigRational,
    /// Normalisation constant on the transversal side.
    #[serde(with = "serde_text")]
    pub c: BigRational,
}

/// Integer weights for `k = 7` normalised by `C = 96050`.
const LEMMA7: [i64; 6] = [11093, 17131, 18250, 18400, 18400, 96050];

/// Published four-digit weights normalised by `C = 100`, for `k = 7, 8` and `k >= 9`.
const TABLE2_K7: [&str; 5] = ["11.5493", "17.8354", "19.0006", "19.1555", "19.1555"];
const TABLE2_K8: [&str; 5] = ["10.2854", "16.0254", "17.3256", "17.7171", "17.7171"];
const TABLE2_K9: [&str; 5] = ["9.5976", "14.8298", "16.1586", "16.6667", "16.6667"];

/// Published bound column, four digits.
pub const TABLE2_BOUNDS: [(usize, &str); 11] = [
    (7, "0.1916"),
    (8, "0.1772"),
    (9, "0.1667"),
    (10, "0.1667"),
    (11, "0.1667"),
    (12, "0.1667"),
    (13, "0.1667"),
    (14, "0.1667"),
    (15, "0.1667"),
    (16, "0.1667"),
    (17, "0.1667"),
];

/// Decimal places of the published table rows.
pub const TABLE2_DECIMALS: u32 = 4;

impl WeightScheme {
    /// Builds a scheme, rejecting any that breaks the ordering, concavity or `C > 0` invariants.
    pub fn new(k: usize, weights: [BigRational; 5], c: BigRational) -> Result<Self> {
        let [w1, w2, w3, w4, wm] = weights;
        let s = Self { k, w1, w2, w3, w4, wm, c };
        s.invariant_violation().map_or(Ok(s), |v| Err(Error::InvalidScheme(v)))
    }

    fn invariant_violation(&self) -> Option<String> {
        if !self.c.is_positive() {
            return Some("C > 0".into());
        }
        if self.w1.is_negative() {
            return Some("0 <= w1".into());
        }
        if self.w1 > self.w2 {
            return Some("w1 <= w2".into());
        }
        if self.w2 > self.w3 {
            return Some("w2 <= w3".into());
        }
        if self.w3 > self.w4 {
            return Some("w3 <= w4".into());
        }
        if &self.w4 - &self.w3 > &self.w3 - &self.w2 {
            return Some("w4 - w3 <= w3 - w2".into());
        }
        if &self.w3 - &self.w2 > &self.w2 - &self.w1 {
            return Some("w3 - w2 <= w2 - w1".into());
        }
        None
    }

    pub fn lemma7() -> Self {
        let [w1, w2, w3, w4, wm, c] = LEMMA7.map(int);
        Self { k: 7, w1, w2, w3, w4, wm, c }
    }

    /// The published four-digit row for `k` (rows from 9 on are identical), `C = 100`.
    pub fn table2(k: usize) -> Option<Self> {
        let row = match k {
            7 => TABLE2_K7,
            8 => TABLE2_K8,
            9..=17 => TABLE2_K9,
            _ => return None,
        };
        let [w1, w2, w3, w4, wm] = row.map(|s| rational::parse(s).expect("literal"));
        Some(Self { k, w1, w2, w3, w4, wm, c: int(100) })
    }

    /// `lemma7` or `table2:<k>`.
    pub fn builtin(name: &str) -> Result<Self> {
        if name == "lemma7" {
            return Ok(Self::lemma7());
        }
        if let Some(k) = name.strip_prefix("table2:") {
            let k: usize = k
                .parse()
                .map_err(|_| Error::InvalidScheme(format!("bad table row {k:?}")))?;
            return Self::table2(k).ok_or_else(|| Error::InvalidScheme(format!("no published row for k = {k}")));
        }
        Err(Error::InvalidScheme(format!("unknown scheme {name:?}")))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: Self = serde_json::from_str(text)?;
        Self::new(s.k, [s.w1, s.w2, s.w3, s.w4, s.wm], s.c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn weights(&self) -> [&BigRational; 5] {
        [&self.w1, &self.w2, &self.w3, &self.w4, &self.wm]
    }

    pub fn max_weight(&self) -> BigRational {
        self.weights().into_iter().max().expect("five weights").clone()
    }

    /// `max(w) / C`: since `w(H) <= max(w) (n + m)`, this bounds `c_k`.
    pub fn implied_bound(&self) -> BigRational {
        self.max_weight() / &self.c
    }

    pub fn with_k(&self, k: usize) -> Self {
        Self { k, ..self.clone() }
    }

    /// All five weights and `C` multiplied by `alpha`.
    pub fn scaled(&self, alpha: &BigRational) -> Self {
        Self {
            k: self.k,
            w1: &self.w1 * alpha,
            w2: &self.w2 * alpha,
            w3: &self.w3 * alpha,
            w4: &self.w4 * alpha,
            wm: &self.wm * alpha,
            c: &self.c * alpha,
        }
    }
}

/// `w(H) = w1 n1 + w2 n2 + w3 n3 + w4 n_{>=4} + wm m`.
pub fn weight_of(h: &Hypergraph, s: &WeightScheme) -> Result<BigRational> {
    let uniform = match h.k() {
        Some(k) => k == s.k,
        None => h.edges().iter().all(|e| e.len() == s.k),
    };
    if !uniform {
        return Err(Error::UniformityMismatch {
            expected: s.k,
            found: match h.uniformity() {
                Some(k) => format!("{k}-uniform"),
                None => "not uniform".into(),
            },
        });
    }
    let p = h.degree_profile();
    let count = |x: usize| BigRational::from_integer(BigInt::from(x));
    Ok(&s.w1 * count(p.count(1))
        + &s.w2 * count(p.count(2))
        + &s.w3 * count(p.count(3))
        + &s.w4 * count(p.count_at_least(4))
        + &s.wm * count(h.m()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseLabel {
    Ordering,
    Concavity,
    CaseI,
    CaseIiSingle,
    CaseIiRegular,
    CaseIiiSingle,
    CaseIiiRegular,
    CaseIvTwoEdges,
    CaseIvOverlap,
    CaseIvLinear,
    BaseSingleEdge,
}

impl CaseLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::Ordering => "ordering",
            CaseLabel::Concavity => "concavity",
            CaseLabel::CaseI => "case-i",
            CaseLabel::CaseIiSingle => "case-ii-single",
            CaseLabel::CaseIiRegular => "case-ii-regular",
            CaseLabel::CaseIiiSingle => "case-iii-single",
            CaseLabel::CaseIiiRegular => "case-iii-regular",
            CaseLabel::CaseIvTwoEdges => "case-iv-two-edges",
            CaseLabel::CaseIvOverlap => "case-iv-overlap",
            CaseLabel::CaseIvLinear => "case-iv-linear",
            CaseLabel::BaseSingleEdge => "base-single-edge",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `coefficients . (w1, w2, w3, w4, wm) >= rhs_multiple * C`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseConstraint {
    pub label: CaseLabel,
    pub detail: String,
    #[serde(with = "rational::serde_text_vec")]
    pub coefficients: Vec<BigRational>,
    pub relation: Relation,
    #[serde(with = "serde_text")]
    pub rhs_multiple: BigRational,
    #[serde(with = "serde_text")]
    pub rhs: BigRational,
}

impl CaseConstraint {
    pub fn lhs(&self, s: &WeightScheme) -> BigRational {
        self.coefficients
            .iter()
            .zip(s.weights())
            .fold(BigRational::zero(), |acc, (a, w)| acc + a * w)
    }
}

/// The inequalities a scheme must satisfy for uniformity `k`, in a fixed order:
/// the nine case and base constraints, then ordering and concavity.
pub fn generate_constraints(k: usize, c: &BigRational) -> Result<Vec<CaseConstraint>> {
    if k < 2 {
        return Err(Error::UniformityOutOfDomain { k, min: 2 });
    }
    let k = k as i64;
    // Removing v of degree d from a linear/overlapping neighbourhood:
    // d edges, (d(k-1) - 1) neighbours drop one degree class, one drops two.
    let single = |d: i64| d * (k - 1) - 1;
    let mk = |label, detail: &str, [a1, a2, a3, a4, am]: [i64; 5], mult: i64| CaseConstraint {
        label,
        detail: detail.to_string(),
        coefficients: [a1, a2, a3, a4, am].map(int).to_vec(),
        relation: Relation::Ge,
        rhs_multiple: int(mult),
        rhs: int(mult) * c,
    };
    use CaseLabel::*;
    let a = single(4);
    let b = single(8);
    let a3 = single(3);
    let b3 = single(6);
    Ok(vec![
        mk(CaseI, "w4 + 5wm >= C", [0, 0, 0, 1, 5], 1),
        mk(
            CaseIiSingle,
            "w4 + 4wm + (4(k-1)-1)(w4-w3) + (w3-w2) >= C",
            [0, -1, 1 - a, 1 + a, 4],
            1,
        ),
        mk(
            CaseIiRegular,
            "2w4 + 8wm + (8(k-1)-1)(w4-w3) + (w3-w2) >= 2C",
            [0, -1, 1 - b, 2 + b, 8],
            2,
        ),
        mk(
            CaseIiiSingle,
            "w3 + 3wm + (3(k-1)-1)(w3-w2) + (w2-w1) >= C",
            [-1, 1 - a3, 1 + a3, 0, 3],
            1,
        ),
        mk(
            CaseIiiRegular,
            "2w3 + 6wm + (6(k-1)-1)(w3-w2) + (w2-w1) >= 2C",
            [-1, 1 - b3, 2 + b3, 0, 6],
            2,
        ),
        mk(CaseIvTwoEdges, "(2k-2)w1 + w2 + 2wm >= C", [2 * k - 2, 1, 0, 0, 2], 1),
        mk(
            CaseIvOverlap,
            "2w2 + 2wm + 2(k-2)(w2-w1) >= C",
            [-2 * (k - 2), 2 + 2 * (k - 2), 0, 0, 2],
            1,
        ),
        mk(
            CaseIvLinear,
            "2w2 + 3wm + (3k-4)(w2-w1) >= 2C",
            [-(3 * k - 4), 2 + (3 * k - 4), 0, 0, 3],
            2,
        ),
        mk(BaseSingleEdge, "k w1 + wm >= C", [k, 0, 0, 0, 1], 1),
        mk(Ordering, "w1 >= 0", [1, 0, 0, 0, 0], 0),
        mk(Ordering, "w2 - w1 >= 0", [-1, 1, 0, 0, 0], 0),
        mk(Ordering, "w3 - w2 >= 0", [0, -1, 1, 0, 0], 0),
        mk(Ordering, "w4 - w3 >= 0", [0, 0, -1, 1, 0], 0),
        mk(Concavity, "(w3-w2) - (w4-w3) >= 0", [0, -1, 2, -1, 0], 0),
        mk(Concavity, "(w2-w1) - (w3-w2) >= 0", [-1, 2, -1, 0, 0], 0),
    ])
}

/// Decrements printed in the case analysis for `k = 7` and the integer scheme.
pub const PRINTED_K7: [(CaseLabel, i64); 6] = [
    (CaseLabel::CaseIiSingle, 96569),
    (CaseLabel::CaseIiRegular, 192169),
    (CaseLabel::CaseIiiSingle, 96511),
    (CaseLabel::CaseIiiRegular, 192103),
    (CaseLabel::CaseIvOverlap, 131442),
    (CaseLabel::CaseIvLinear, 192108),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstraintCheck {
    pub label: CaseLabel,
    pub detail: String,
    #[serde(with = "serde_text")]
    pub lhs: BigRational,
    #[serde(with = "serde_text")]
    pub rhs: BigRational,
    #[serde(with = "serde_text")]
    pub slack: BigRational,
    pub satisfied: bool,
    pub binding: bool,
    /// Most the left side could grow if each weight were up to one unit in the last
    /// printed decimal larger; only set for published decimal rows.
    #[serde(with = "serde_text_opt", skip_serializing_if = "Option::is_none")]
    pub printing_tolerance: Option<BigRational>,
}

impl ConstraintCheck {
    /// A violation no larger than what truncating the weights could explain.
    pub fn within_printing_precision(&self) -> bool {
        !self.satisfied && self.printing_tolerance.as_ref().is_some_and(|t| -&self.slack <= *t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub label: CaseLabel,
    pub printed: i64,
    #[serde(with = "serde_text")]
    pub computed: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub k: usize,
    pub scheme: WeightScheme,
    pub checks: Vec<ConstraintCheck>,
    pub verdict: bool,
    #[serde(with = "serde_text")]
    pub implied_bound: BigRational,
    pub binding: Vec<CaseLabel>,
    /// Printed values that disagree with the transcribed formulas.
    pub discrepancies: Vec<Discrepancy>,
    pub caveat: &'static str,
}

/// Evaluates every constraint for `k` at `s` exactly.
pub fn check_scheme(k: usize, s: &WeightScheme) -> Result<CertificateReport> {
    check_with_tolerance(k, s, None)
}

/// As [`check_scheme`], also recording how much each constraint could move if the
/// weights are truncations to `decimals` places.
pub fn check_printed_scheme(k: usize, s: &WeightScheme, decimals: u32) -> Result<CertificateReport> {
    let unit = BigRational::new(1.into(), num_traits::pow(BigInt::from(10), decimals as usize));
    check_with_tolerance(k, s, Some(unit))
}

fn check_with_tolerance(k: usize, s: &WeightScheme, unit: Option<BigRational>) -> Result<CertificateReport> {
    let constraints = generate_constraints(k, &s.c)?;
    let checks: Vec<ConstraintCheck> = constraints
        .iter()
        .map(|cc| {
            let lhs = cc.lhs(s);
            let slack = &lhs - &cc.rhs;
            let printing_tolerance = unit.as_ref().map(|u| {
                cc.coefficients
                    .iter()
                    .filter(|a| a.is_positive())
                    .fold(BigRational::zero(), |acc, a| acc + a * u)
            });
            ConstraintCheck {
                label: cc.label,
                detail: cc.detail.clone(),
                satisfied: !slack.is_negative(),
                binding: slack.is_zero(),
                lhs,
                rhs: cc.rhs.clone(),
                slack,
                printing_tolerance,
            }
        })
        .collect();
    let mut discrepancies = Vec::new();
    if k == 7 && s.with_k(7) == WeightScheme::lemma7() {
        for (label, printed) in PRINTED_K7 {
            let check = checks.iter().find(|c| c.label == label).expect("label present");
            if check.lhs != int(printed) {
                discrepancies.push(Discrepancy { label, printed, computed: check.lhs.clone() });
            }
        }
    }
    let mut binding: Vec<CaseLabel> = checks.iter().filter(|c| c.binding).map(|c| c.label).collect();
    binding.dedup();
    Ok(CertificateReport {
        k,
        verdict: checks.iter().all(|c| c.satisfied),
        implied_bound: s.implied_bound(),
        scheme: s.clone(),
        checks,
        binding,
        discrepancies,
        caveat: CAVEAT,
    })
}

/// Integers as-is, short exact decimals as decimals, everything else as `p/q (~x)`.
pub fn display_value(v: &BigRational) -> String {
    if v.is_integer() {
        return v.numer().to_string();
    }
    let scaled = v * BigRational::from_integer(BigInt::from(1_000_000));
    if scaled.is_integer() {
        let s = rational::fixed(v, 6, rational::Rounding::Truncate);
        return s.trim_end_matches('0').to_string();
    }
    format!("{} (~{})", to_text(v), rational::fixed(v, 6, rational::Rounding::Nearest))
}

impl CertificateReport {
    pub fn violations(&self) -> Vec<&ConstraintCheck> {
        self.checks.iter().filter(|c| !c.satisfied).collect()
    }

    pub fn min_slack(&self) -> Option<&ConstraintCheck> {
        self.checks
            .iter()
            .filter(|c| !c.rhs_multiple_is_zero())
            .min_by(|a, b| a.slack.cmp(&b.slack))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("| constraint | detail | LHS | RHS | slack | binding |\n");
        out.push_str("|---|---|---|---|---|---|\n");
        for c in &self.checks {
            out.push_str(&format!(
                "| {} | `{}` | {} | {} | {} | {} |\n",
                c.label,
                c.detail,
                display_value(&c.lhs),
                display_value(&c.rhs),
                display_value(&c.slack),
                if c.binding { "yes" } else if c.satisfied { "" } else { "VIOLATED" }
            ));
        }
        out.push('\n');
        out.push_str(&self.summary());
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "k = {}, C = {}, weights (w1, w2, w3, w4, wm) = ({})\n",
            self.k,
            display_value(&self.scheme.c),
            self.scheme.weights().map(display_value).join(", ")
        );
        let width = self.checks.iter().map(|c| c.detail.len()).max().unwrap_or(0);
        for c in &self.checks {
            let status = if c.binding {
                "binding"
            } else if c.satisfied {
                "ok"
            } else if c.within_printing_precision() {
                "VIOLATED (within printing precision)"
            } else {
                "VIOLATED"
            };
            out.push_str(&format!(
                "  {:<18} {:<width$}  lhs {:>14}  rhs {:>8}  slack {:>14}  {}\n",
                c.label.as_str(),
                c.detail,
                display_value(&c.lhs),
                display_value(&c.rhs),
                display_value(&c.slack),
                status,
            ));
        }
        out.push_str(&self.summary());
        out
    }

    fn summary(&self) -> String {
        let mut out = String::new();
        let verdict = if self.verdict {
            "all constraints satisfied".to_string()
        } else {
            let labels: Vec<String> = self.violations().iter().map(|c| c.label.to_string()).collect();
            format!("violated: {}", labels.join(", "))
        };
        out.push_str(&format!("verdict: {verdict}\n"));
        out.push_str(&format!(
            "implied bound on c_{}: max weight / C = {} = {}\n",
            self.k,
            to_text(&self.implied_bound),
            rational::fixed(&self.implied_bound, 6, rational::Rounding::Nearest)
        ));
        if !self.binding.is_empty() {
            let labels: Vec<&str> = self.binding.iter().map(|l| l.as_str()).collect();
            out.push_str(&format!("binding: {}\n", labels.join(", ")));
        }
        for d in &self.discrepancies {
            out.push_str(&format!(
                "discrepancy: {} is printed as {} but the formula gives {}\n",
                d.label,
                d.printed,
                display_value(&d.computed)
            ));
        }
        out.push_str(&format!("note: {}\n", self.caveat));
        out
    }
}

impl ConstraintCheck {
    fn rhs_multiple_is_zero(&self) -> bool {
        matches!(self.label, CaseLabel::Ordering | CaseLabel::Concavity)
    }
}

#[derive(Debug, Clone)]
pub struct OptimizedScheme {
    pub scheme: WeightScheme,
    pub program: LinearProgram,
    pub outcome: LpOutcome,
    pub report: CertificateReport,
    /// Labels of LP rows with zero slack (case constraints and `max:*` rows).
    pub binding: Vec<String>,
}

impl OptimizedScheme {
    pub fn bound(&self) -> &BigRational {
        &self.report.implied_bound
    }
}

/// The LP: minimise `t` subject to the case constraints and `w <= t` for all five weights.
pub fn scheme_program(k: usize, c: &BigRational) -> Result<LinearProgram> {
    let mut program = LinearProgram::new();
    for name in WEIGHT_NAMES {
        program.free_var(name);
    }
    program.free_var("t");
    program.minimize(LinearForm::new().term("t", int(1)));
    for cc in generate_constraints(k, c)? {
        let form = LinearForm::from_terms(WEIGHT_NAMES.iter().copied().zip(cc.coefficients.iter().cloned()));
        program.constrain(cc.label.as_str(), form, cc.relation, cc.rhs.clone());
    }
    for name in WEIGHT_NAMES {
        program.constrain(
            &format!("max:{name}"),
            LinearForm::new().term("t", int(1)).term(name, int(-1)),
            Relation::Ge,
            int(0),
        );
    }
    Ok(program)
}

/// Finds the scheme minimising `max(w) / C` exactly.
pub fn optimize_scheme(k: usize, c: &BigRational) -> Result<OptimizedScheme> {
    let program = scheme_program(k, c)?;
    let outcome = lp::solve(&program)?;
    if outcome.status != lp::Status::Optimal {
        return Err(Error::MalformedProgram(format!("weight program is {:?}", outcome.status)));
    }
    let w = |name: &str| outcome.value(name).expect("declared").clone();
    let scheme = WeightScheme::new(k, WEIGHT_NAMES.map(w), c.clone())?;
    let report = check_scheme(k, &scheme)?;
    let binding = outcome.binding.iter().map(|&i| program.constraints[i].label.clone()).collect();
    Ok(OptimizedScheme { scheme, program, outcome, report, binding })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FuzzConfig {
    pub trials: usize,
    pub seed: u64,
    pub max_n: usize,
    pub max_m: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub instance: HypergraphDocument,
    pub tau: usize,
    #[serde(with = "serde_text")]
    pub weight: BigRational,
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzReport {
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    pub counterexamples: Vec<Counterexample>,
    /// Smallest `w(H) - C tau(H)` seen and the trial where it occurred.
    #[serde(with = "serde_text_opt")]
    pub min_slack: Option<BigRational>,
    pub tightest_trial: Option<usize>,
    /// `tau_histogram[t]` = trials whose instance had transversal number `t`.
    pub tau_histogram: Vec<usize>,
}

impl FuzzReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "k = {}, trials = {}, seed = {}\ncounterexamples: {}\n",
            self.k,
            self.trials,
            self.seed,
            self.counterexamples.len()
        );
        if let (Some(s), Some(t)) = (&self.min_slack, self.tightest_trial) {
            out.push_str(&format!("min slack w(H) - C tau(H): {} (trial {t})\n", display_value(s)));
        }
        let hist: Vec<String> = self
            .tau_histogram
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(t, c)| format!("tau={t}: {c}"))
            .collect();
        out.push_str(&format!("tau distribution: {}\n", hist.join(", ")));
        for c in &self.counterexamples {
            out.push_str(&format!(
                "COUNTEREXAMPLE trial {}: tau = {}, w(H) = {}\n{}",
                c.trial,
                c.tau,
                display_value(&c.weight),
                c.instance.to_json()
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// The instance used by fuzz trial `trial`: `n` uniform in `k..=max_n`, `m` uniform in
/// `1..=min(max_m, C(n, k))`, distinct edges. Each trial owns its own ChaCha stream.
pub fn fuzz_instance(k: usize, config: &FuzzConfig, trial: usize) -> Result<Hypergraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(trial as u64);
    let n = rng.gen_range(k..=config.max_n.max(k));
    let cap = num_integer::binomial(num_bigint::BigUint::from(n), num_bigint::BigUint::from(k));
    let max_m = if cap < num_bigint::BigUint::from(config.max_m) {
        usize::try_from(cap).expect("small")
    } else {
        config.max_m
    };
    let m = rng.gen_range(1..=max_m.max(1));
    random_uniform_with(
        &mut rng,
        RandomSpec { k, n, m, seed: config.seed, require_connected: false, require_distinct_edges: true },
    )
}

/// Checks `C tau(H) <= w(H)` on random k-uniform instances, in parallel.
/// Counterexamples are reported, not raised.
pub fn fuzz_lemma(k: usize, s: &WeightScheme, config: FuzzConfig) -> Result<FuzzReport> {
    if k < 2 {
        return Err(Error::UniformityOutOfDomain { k, min: 2 });
    }
    let s = s.with_k(k);
    let results: Vec<(usize, Hypergraph, usize, BigRational)> = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            let h = fuzz_instance(k, &config, trial)?;
            let tau = tau_exact(&h).tau;
            let w = weight_of(&h, &s)?;
            Ok((trial, h, tau, w))
        })
        .collect::<Result<_>>()?;

    let mut report = FuzzReport {
        k,
        trials: config.trials,
        seed: config.seed,
        counterexamples: Vec::new(),
        min_slack: None,
        tightest_trial: None,
        tau_histogram: Vec::new(),
    };
    for (trial, h, tau, w) in results {
        let slack = &w - &s.c * int(tau as i64);
        if report.tau_histogram.len() <= tau {
            report.tau_histogram.resize(tau + 1, 0);
        }
        report.tau_histogram[tau] += 1;
        if slack.is_negative() {
            report.counterexamples.push(Counterexample { trial, instance: h.to_document(), tau, weight: w });
        }
        if report.min_slack.as_ref().is_none_or(|m| slack < *m) {
            report.min_slack = Some(slack);
            report.tightest_trial = Some(trial);
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct MonotoneStep {
    pub k: usize,
    pub verdict: bool,
    pub violated: Vec<CaseLabel>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MonotoneReport {
    pub k_from: usize,
    pub k_to: usize,
    pub steps: Vec<MonotoneStep>,
    /// `(k, constraint)` pairs where a left side decreased from `k` to `k + 1`.
    pub decreases: Vec<(usize, CaseLabel)>,
    pub feasible_everywhere: bool,
}

impl MonotoneReport {
    pub fn lhs_nondecreasing(&self) -> bool {
        self.decreases.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            let status = if s.verdict {
                "feasible".to_string()
            } else {
                let v: Vec<&str> = s.violated.iter().map(|l| l.as_str()).collect();
                format!("violated: {}", v.join(", "))
            };
            out.push_str(&format!("k = {:>3}: {status}\n", s.k));
        }
        out.push_str(&format!(
            "constraint left sides nondecreasing in k: {}\nfeasible for every k in {}..={}: {}\n",
            if self.lhs_nondecreasing() { "yes" } else { "no" },
            self.k_from,
            self.k_to,
            if self.feasible_everywhere { "yes" } else { "no" }
        ));
        out
    }
}

/// Instantiates the constraints at every `k` in `k_from..=k_to` for a fixed scheme.
pub fn scheme_monotone_in_k(s: &WeightScheme, k_from: usize, k_to: usize) -> Result<MonotoneReport> {
    let mut steps = Vec::new();
    let mut decreases = Vec::new();
    let mut previous: Option<Vec<BigRational>> = None;
    for k in k_from..=k_to {
        let report = check_scheme(k, &s.with_k(k))?;
        let lhs: Vec<BigRational> = report.checks.iter().map(|c| c.lhs.clone()).collect();
        if let Some(prev) = &previous {
            for (i, (a, b)) in prev.iter().zip(&lhs).enumerate() {
                if b < a {
                    decreases.push((k - 1, report.checks[i].label));
                }
            }
        }
        previous = Some(lhs);
        steps.push(MonotoneStep {
            k,
            verdict: report.verdict,
            violated: report.violations().iter().map(|c| c.label).collect(),
        });
    }
    let feasible_everywhere = steps.iter().all(|s| s.verdict);
    Ok(MonotoneReport { k_from, k_to, steps, decreases, feasible_everywhere })
}
