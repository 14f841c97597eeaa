//! Exact linear programming over [`BigRational`].
//!
//! [`solve`] runs a two-phase tableau simplex with Bland's rule. Every outcome
//! carries a certificate that [`verify_certificate`] checks from the program
//! data alone:
//!
//! * optimal: dual multipliers whose objective equals the primal optimum,
//! * infeasible: Farkas multipliers,
//! * unbounded: a feasible point and an improving recession direction.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{serde_text, serde_text_opt, serde_text_vec, to_text};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub var: String,
    #[serde(with = "serde_text")]
    pub coef: BigRational,
}

/// A linear form `sum coef * var`; repeated variables are summed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearForm(pub Vec<Term>);

impl LinearForm {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(mut self, var: &str, coef: BigRational) -> Self {
        self.0.push(Term { var: var.to_string(), coef });
        self
    }

    pub fn from_terms<'a>(terms: impl IntoIterator<Item = (&'a str, BigRational)>) -> Self {
        Self(terms.into_iter().map(|(v, c)| Term { var: v.to_string(), coef: c }).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    /// `None` means the variable is free.
    #[serde(with = "serde_text_opt", default)]
    pub lower: Option<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub label: String,
    pub form: LinearForm,
    pub relation: Relation,
    #[serde(with = "serde_text")]
    pub rhs: BigRational,
}

/// Minimise `objective` subject to `constraints` and variable lower bounds.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearProgram {
    pub variables: Vec<Variable>,
    pub objective: LinearForm,
    pub constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn free_var(&mut self, name: &str) -> &mut Self {
        self.variables.push(Variable { name: name.to_string(), lower: None });
        self
    }

    pub fn bounded_var(&mut self, name: &str, lower: BigRational) -> &mut Self {
        self.variables.push(Variable { name: name.to_string(), lower: Some(lower) });
        self
    }

    pub fn minimize(&mut self, objective: LinearForm) -> &mut Self {
        self.objective = objective;
        self
    }

    pub fn constrain(&mut self, label: &str, form: LinearForm, relation: Relation, rhs: BigRational) -> &mut Self {
        self.constraints.push(Constraint { label: label.to_string(), form, relation, rhs });
        self
    }

    fn index_of(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    /// Dense coefficient vector of a form; errors on undeclared variables.
    fn dense(&self, form: &LinearForm) -> Result<Vec<BigRational>> {
        let mut out = vec![BigRational::zero(); self.variables.len()];
        for t in &form.0 {
            let j = self
                .index_of(&t.var)
                .ok_or_else(|| Error::MalformedProgram(format!("undeclared variable {:?}", t.var)))?;
            out[j] += &t.coef;
        }
        Ok(out)
    }

    /// Checks the program is well-formed and returns its dense data.
    pub fn dense_data(&self) -> Result<DenseProgram> {
        if self.objective.0.is_empty() {
            return Err(Error::MalformedProgram("empty objective".into()));
        }
        for (i, v) in self.variables.iter().enumerate() {
            if self.variables[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::MalformedProgram(format!("variable {:?} declared twice", v.name)));
            }
        }
        let cost = self.dense(&self.objective)?;
        let rows = self
            .constraints
            .iter()
            .map(|c| self.dense(&c.form))
            .collect::<Result<Vec<_>>>()?;
        Ok(DenseProgram { cost, rows })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Objective and constraint rows as dense vectors over the declared variables.
#[derive(Debug, Clone)]
pub struct DenseProgram {
    pub cost: Vec<BigRational>,
    pub rows: Vec<Vec<BigRational>>,
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Certificate {
    /// `y` per constraint and `z` per variable with `c = A^T y + z`,
    /// sign-feasible, and `b.y + l.z` equal to the optimum.
    Dual {
        #[serde(with = "serde_text_vec")]
        constraint_multipliers: Vec<BigRational>,
        #[serde(with = "serde_text_vec")]
        bound_multipliers: Vec<BigRational>,
    },
    /// Sign-feasible `y` with `g = A^T y` vanishing on free variables,
    /// nonpositive on bounded ones, and `g.l < b.y`.
    Farkas {
        #[serde(with = "serde_text_vec")]
        constraint_multipliers: Vec<BigRational>,
    },
    /// A direction `d` that keeps every constraint and bound satisfied
    /// from the reported point and strictly decreases the objective.
    Ray {
        #[serde(with = "serde_text_vec")]
        direction: Vec<BigRational>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpOutcome {
    pub status: Status,
    #[serde(with = "serde_text_opt")]
    pub objective: Option<BigRational>,
    /// Values in declaration order; for `Unbounded` this is the feasible base point of the ray.
    #[serde(with = "serde_text_vec")]
    pub solution: Vec<BigRational>,
    pub variable_names: Vec<String>,
    /// Constraint indices with zero slack at `solution`.
    pub binding: Vec<usize>,
    pub certificate: Certificate,
    pub pivots: usize,
}

impl LpOutcome {
    pub fn value(&self, name: &str) -> Option<&BigRational> {
        let j = self.variable_names.iter().position(|v| v == name)?;
        self.solution.get(j)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlackEntry {
    pub label: String,
    #[serde(with = "serde_text")]
    pub lhs: BigRational,
    pub relation: Relation,
    #[serde(with = "serde_text")]
    pub rhs: BigRational,
    /// Nonnegative exactly when satisfied; zero when binding. For equalities
    /// this is `-|lhs - rhs|`.
    #[serde(with = "serde_text")]
    pub slack: BigRational,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlackReport {
    pub constraints: Vec<SlackEntry>,
    /// Variable lower bounds, labelled `bound:<name>`.
    pub bounds: Vec<SlackEntry>,
}

impl SlackReport {
    pub fn feasible(&self) -> bool {
        self.constraints.iter().chain(&self.bounds).all(|e| e.satisfied)
    }

    pub fn binding(&self) -> Vec<usize> {
        self.constraints
            .iter()
            .enumerate()
            .filter(|(_, e)| e.slack.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn violations(&self) -> Vec<&SlackEntry> {
        self.constraints.iter().chain(&self.bounds).filter(|e| !e.satisfied).collect()
    }
}

fn slack_of(lhs: &BigRational, relation: Relation, rhs: &BigRational) -> BigRational {
    match relation {
        Relation::Le => rhs - lhs,
        Relation::Ge => lhs - rhs,
        Relation::Eq => -(lhs - rhs).abs(),
    }
}

/// Exact slack of every constraint and bound at `solution` (declaration order).
pub fn check_solution(lp: &LinearProgram, solution: &[BigRational]) -> Result<SlackReport> {
    if solution.len() != lp.variables.len() {
        return Err(Error::MalformedProgram(format!(
            "solution has {} values for {} variables",
            solution.len(),
            lp.variables.len()
        )));
    }
    let mut constraints = Vec::with_capacity(lp.constraints.len());
    for c in &lp.constraints {
        let lhs = dot(&lp.dense(&c.form)?, solution);
        let slack = slack_of(&lhs, c.relation, &c.rhs);
        constraints.push(SlackEntry {
            label: c.label.clone(),
            satisfied: !slack.is_negative(),
            lhs,
            relation: c.relation,
            rhs: c.rhs.clone(),
            slack,
        });
    }
    let bounds = lp
        .variables
        .iter()
        .zip(solution)
        .filter_map(|(v, x)| {
            let l = v.lower.as_ref()?;
            let slack = x - l;
            Some(SlackEntry {
                label: format!("bound:{}", v.name),
                lhs: x.clone(),
                relation: Relation::Ge,
                rhs: l.clone(),
                satisfied: !slack.is_negative(),
                slack,
            })
        })
        .collect();
    Ok(SlackReport { constraints, bounds })
}

/// How a user variable maps onto nonnegative tableau columns.
#[derive(Debug, Clone)]
enum ColumnMap {
    /// `x = lower + col`.
    Shifted { col: usize, lower: BigRational },
    /// `x = plus - minus`.
    Split { plus: usize, minus: usize },
}

struct Tableau {
    /// `rows x (width + 1)`; the last entry of each row is the right-hand side.
    a: Vec<Vec<BigRational>>,
    /// Reduced costs, last entry is minus the objective value.
    obj: Vec<BigRational>,
    basis: Vec<usize>,
    width: usize,
    pivots: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &BigRational {
        &self.a[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.a[r][c].clone();
        for x in self.a[r].iter_mut() {
            *x /= &p;
        }
        let pivot_row = self.a[r].clone();
        for (i, row) in self.a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (x, p) in self.obj.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Resets the objective row to the reduced costs of `cost` under the current basis.
    fn price(&mut self, cost: &[BigRational]) {
        let mut obj: Vec<BigRational> = cost.to_vec();
        obj.push(BigRational::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (x, a) in obj.iter_mut().zip(&self.a[i]) {
                *x -= cb * a;
            }
        }
        self.obj = obj;
    }

    /// Bland's rule iterations. `Err(col)` reports an unbounded entering column.
    fn optimize(&mut self, may_enter: impl Fn(usize) -> bool) -> std::result::Result<(), usize> {
        loop {
            let Some(c) = (0..self.width).find(|&j| may_enter(j) && self.obj[j].is_negative()) else {
                return Ok(());
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..self.a.len() {
                let aic = &self.a[i][c];
                if !aic.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / aic;
                let better = match &leave {
                    None => true,
                    Some((r, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return Err(c),
            }
        }
    }

    /// Value of every tableau column at the current basic solution.
    fn column_values(&self) -> Vec<BigRational> {
        let mut x = vec![BigRational::zero(); self.width];
        for (i, &b) in self.basis.iter().enumerate() {
            x[b] = self.rhs(i).clone();
        }
        x
    }
}

/// Solves `lp` exactly.
pub fn solve(lp: &LinearProgram) -> Result<LpOutcome> {
    let dense = lp.dense_data()?;
    let nvars = lp.variables.len();
    let nrows = lp.constraints.len();

    let mut maps = Vec::with_capacity(nvars);
    let mut ncols = 0;
    for v in &lp.variables {
        match &v.lower {
            Some(l) => {
                maps.push(ColumnMap::Shifted { col: ncols, lower: l.clone() });
                ncols += 1;
            }
            None => {
                maps.push(ColumnMap::Split { plus: ncols, minus: ncols + 1 });
                ncols += 2;
            }
        }
    }
    let slack_col: Vec<Option<usize>> = lp
        .constraints
        .iter()
        .map(|c| {
            (c.relation != Relation::Eq).then(|| {
                ncols += 1;
                ncols - 1
            })
        })
        .collect();
    let first_artificial = ncols;
    let width = ncols + nrows;

    let shift: Vec<BigRational> = maps
        .iter()
        .map(|m| match m {
            ColumnMap::Shifted { lower, .. } => lower.clone(),
            ColumnMap::Split { .. } => BigRational::zero(),
        })
        .collect();

    let mut sign = Vec::with_capacity(nrows);
    let mut a = Vec::with_capacity(nrows);
    for (i, c) in lp.constraints.iter().enumerate() {
        let row = &dense.rows[i];
        let mut t = vec![BigRational::zero(); width + 1];
        for (j, m) in maps.iter().enumerate() {
            match m {
                ColumnMap::Shifted { col, .. } => t[*col] = row[j].clone(),
                ColumnMap::Split { plus, minus } => {
                    t[*plus] = row[j].clone();
                    t[*minus] = -row[j].clone();
                }
            }
        }
        if let Some(s) = slack_col[i] {
            t[s] = if c.relation == Relation::Le { BigRational::one() } else { -BigRational::one() };
        }
        let mut rhs = &c.rhs - dot(row, &shift);
        let s = if rhs.is_negative() { -1 } else { 1 };
        if s < 0 {
            for x in t.iter_mut() {
                *x = -x.clone();
            }
            rhs = -rhs;
        }
        t[first_artificial + i] = BigRational::one();
        t[width] = rhs;
        sign.push(BigRational::from_integer(s.into()));
        a.push(t);
    }

    let mut tab = Tableau {
        a,
        obj: Vec::new(),
        basis: (first_artificial..width).collect(),
        width,
        pivots: 0,
    };

    // Phase 1: minimise the sum of artificials.
    let mut phase1_cost = vec![BigRational::zero(); width];
    for c in phase1_cost.iter_mut().skip(first_artificial) {
        *c = BigRational::one();
    }
    tab.price(&phase1_cost);
    tab.optimize(|_| true).expect("phase 1 is bounded below by zero");
    let infeasibility = -tab.obj[width].clone();
    if infeasibility.is_positive() {
        // Phase-1 duals: y_i = 1 - reduced cost of artificial i.
        let y: Vec<BigRational> = (0..nrows)
            .map(|i| (BigRational::one() - &tab.obj[first_artificial + i]) * &sign[i])
            .collect();
        return Ok(LpOutcome {
            status: Status::Infeasible,
            objective: None,
            solution: Vec::new(),
            variable_names: lp.variables.iter().map(|v| v.name.clone()).collect(),
            binding: Vec::new(),
            certificate: Certificate::Farkas { constraint_multipliers: y },
            pivots: tab.pivots,
        });
    }

    // Drive zero-level artificials out of the basis where possible.
    for r in 0..nrows {
        if tab.basis[r] >= first_artificial {
            if let Some(c) = (0..first_artificial).find(|&j| !tab.a[r][j].is_zero()) {
                tab.pivot(r, c);
            }
        }
    }

    // Phase 2.
    let mut cost = vec![BigRational::zero(); width];
    for (j, m) in maps.iter().enumerate() {
        match m {
            ColumnMap::Shifted { col, .. } => cost[*col] = dense.cost[j].clone(),
            ColumnMap::Split { plus, minus } => {
                cost[*plus] = dense.cost[j].clone();
                cost[*minus] = -dense.cost[j].clone();
            }
        }
    }
    tab.price(&cost);
    let phase2 = tab.optimize(|j| j < first_artificial);

    let to_user = |cols: &[BigRational], with_shift: bool| -> Vec<BigRational> {
        maps.iter()
            .map(|m| match m {
                ColumnMap::Shifted { col, lower } => {
                    if with_shift {
                        lower + &cols[*col]
                    } else {
                        cols[*col].clone()
                    }
                }
                ColumnMap::Split { plus, minus } => &cols[*plus] - &cols[*minus],
            })
            .collect()
    };
    let point = to_user(&tab.column_values(), true);
    let names: Vec<String> = lp.variables.iter().map(|v| v.name.clone()).collect();
    let report = check_solution(lp, &point)?;
    debug_assert!(report.feasible());

    match phase2 {
        Err(entering) => {
            let mut d = vec![BigRational::zero(); width];
            d[entering] = BigRational::one();
            for (i, &b) in tab.basis.iter().enumerate() {
                d[b] = -tab.a[i][entering].clone();
            }
            Ok(LpOutcome {
                status: Status::Unbounded,
                objective: None,
                binding: report.binding(),
                solution: point,
                variable_names: names,
                certificate: Certificate::Ray { direction: to_user(&d, false) },
                pivots: tab.pivots,
            })
        }
        Ok(()) => {
            // Phase-2 duals: y_i = -(reduced cost of artificial i), then undo row signs.
            let y: Vec<BigRational> = (0..nrows)
                .map(|i| -tab.obj[first_artificial + i].clone() * &sign[i])
                .collect();
            let z: Vec<BigRational> = (0..nvars)
                .map(|j| {
                    let col: Vec<BigRational> = dense.rows.iter().map(|r| r[j].clone()).collect();
                    &dense.cost[j] - dot(&col, &y)
                })
                .collect();
            Ok(LpOutcome {
                status: Status::Optimal,
                objective: Some(dot(&dense.cost, &point)),
                binding: report.binding(),
                solution: point,
                variable_names: names,
                certificate: Certificate::Dual { constraint_multipliers: y, bound_multipliers: z },
                pivots: tab.pivots,
            })
        }
    }
}

/// Checks an outcome's certificate against the program using exact arithmetic only.
pub fn verify_certificate(lp: &LinearProgram, outcome: &LpOutcome) -> std::result::Result<(), String> {
    let dense = lp.dense_data().map_err(|e| e.to_string())?;
    let nvars = lp.variables.len();
    let sign_ok = |rel: Relation, y: &BigRational| match rel {
        Relation::Ge => !y.is_negative(),
        Relation::Le => !y.is_positive(),
        Relation::Eq => true,
    };
    let column_sum = |y: &[BigRational]| -> Vec<BigRational> {
        (0..nvars)
            .map(|j| dense.rows.iter().zip(y).fold(BigRational::zero(), |acc, (r, y)| acc + &r[j] * y))
            .collect()
    };
    let lower = |j: usize| lp.variables[j].lower.clone();

    match (&outcome.status, &outcome.certificate) {
        (Status::Optimal, Certificate::Dual { constraint_multipliers: y, bound_multipliers: z }) => {
            let report = check_solution(lp, &outcome.solution).map_err(|e| e.to_string())?;
            if !report.feasible() {
                return Err("primal solution violates a constraint".into());
            }
            let primal = dot(&dense.cost, &outcome.solution);
            if outcome.objective.as_ref() != Some(&primal) {
                return Err("reported objective differs from c.x".into());
            }
            if y.len() != lp.constraints.len() || z.len() != nvars {
                return Err("certificate has wrong dimensions".into());
            }
            for (c, yi) in lp.constraints.iter().zip(y) {
                if !sign_ok(c.relation, yi) {
                    return Err(format!("dual multiplier of {:?} has the wrong sign", c.label));
                }
            }
            let aty = column_sum(y);
            let mut dual = dot(&lp.constraints.iter().map(|c| c.rhs.clone()).collect::<Vec<_>>(), y);
            for j in 0..nvars {
                if aty[j].clone() + &z[j] != dense.cost[j] {
                    return Err(format!("stationarity fails for {}", lp.variables[j].name));
                }
                match lower(j) {
                    None if !z[j].is_zero() => return Err(format!("free variable {} has nonzero z", lp.variables[j].name)),
                    None => {}
                    Some(l) => {
                        if z[j].is_negative() {
                            return Err(format!("bound multiplier of {} is negative", lp.variables[j].name));
                        }
                        dual += l * &z[j];
                    }
                }
            }
            if dual != primal {
                return Err(format!("duality gap: primal {} dual {}", to_text(&primal), to_text(&dual)));
            }
            Ok(())
        }
        (Status::Infeasible, Certificate::Farkas { constraint_multipliers: y }) => {
            if y.len() != lp.constraints.len() {
                return Err("certificate has wrong dimensions".into());
            }
            for (c, yi) in lp.constraints.iter().zip(y) {
                if !sign_ok(c.relation, yi) {
                    return Err(format!("Farkas multiplier of {:?} has the wrong sign", c.label));
                }
            }
            let g = column_sum(y);
            let mut upper = BigRational::zero();
            for j in 0..nvars {
                match lower(j) {
                    None if !g[j].is_zero() => return Err("combination is nonzero on a free variable".into()),
                    None => {}
                    Some(l) => {
                        if g[j].is_positive() {
                            return Err("combination is positive on a bounded variable".into());
                        }
                        upper += &g[j] * l;
                    }
                }
            }
            let by = dot(&lp.constraints.iter().map(|c| c.rhs.clone()).collect::<Vec<_>>(), y);
            if upper < by {
                Ok(())
            } else {
                Err("Farkas combination does not separate".into())
            }
        }
        (Status::Unbounded, Certificate::Ray { direction: d }) => {
            let report = check_solution(lp, &outcome.solution).map_err(|e| e.to_string())?;
            if !report.feasible() {
                return Err("base point is infeasible".into());
            }
            if d.len() != nvars {
                return Err("ray has wrong dimension".into());
            }
            for (c, row) in lp.constraints.iter().zip(&dense.rows) {
                let ad = dot(row, d);
                let ok = match c.relation {
                    Relation::Le => !ad.is_positive(),
                    Relation::Ge => !ad.is_negative(),
                    Relation::Eq => ad.is_zero(),
                };
                if !ok {
                    return Err(format!("ray leaves constraint {:?}", c.label));
                }
            }
            for j in 0..nvars {
                if lower(j).is_some() && d[j].is_negative() {
                    return Err(format!("ray decreases bounded variable {}", lp.variables[j].name));
                }
            }
            if dot(&dense.cost, d).is_negative() {
                Ok(())
            } else {
                Err("ray does not improve the objective".into())
            }
        }
        _ => Err("certificate kind does not match status".into()),
    }
}
