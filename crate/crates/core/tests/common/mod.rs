//! A fixed battery of small linear programs with hand-computed answers.

#![allow(dead_code)]

use tuza_core::lp::{LinearForm, LinearProgram, Relation, Status};
use tuza_core::rational::{int, ratio};
use tuza_core::BigRational;

pub struct Case {
    pub name: &'static str,
    pub program: LinearProgram,
    pub status: Status,
    pub objective: Option<BigRational>,
    /// Expected optimal point, when it is unique.
    pub solution: Option<Vec<BigRational>>,
}

fn form(terms: &[(&str, BigRational)]) -> LinearForm {
    LinearForm::from_terms(terms.iter().map(|(v, c)| (*v, c.clone())))
}

fn f(terms: &[(&str, i64)]) -> LinearForm {
    LinearForm::from_terms(terms.iter().map(|&(v, c)| (v, int(c))))
}

fn case(
    name: &'static str,
    program: LinearProgram,
    status: Status,
    objective: Option<BigRational>,
    solution: Option<Vec<BigRational>>,
) -> Case {
    Case { name, program, status, objective, solution }
}

pub fn battery() -> Vec<Case> {
    let zero = int(0);
    let mut out = Vec::new();

    let mut lp = LinearProgram::new();
    lp.free_var("t").minimize(f(&[("t", 1)])).constrain("floor", f(&[("t", 1)]), Relation::Ge, int(3));
    out.push(case("single lower bound", lp, Status::Optimal, Some(int(3)), Some(vec![int(3)])));

    let mut lp = LinearProgram::new();
    lp.free_var("x")
        .free_var("y")
        .minimize(f(&[("x", 1), ("y", 1)]))
        .constrain("x>=1", f(&[("x", 1)]), Relation::Ge, int(1))
        .constrain("y>=1", f(&[("y", 1)]), Relation::Ge, int(1))
        .constrain("sum<=1", f(&[("x", 1), ("y", 1)]), Relation::Le, int(1));
    out.push(case("contradictory bounds", lp, Status::Infeasible, None, None));

    let mut lp = LinearProgram::new();
    lp.free_var("t")
        .free_var("w")
        .minimize(f(&[("t", 1)]))
        .constrain("t>=w", f(&[("t", 1), ("w", -1)]), Relation::Ge, zero.clone())
        .constrain("w>=100/6", f(&[("w", 1)]), Relation::Ge, ratio(100, 6));
    out.push(case("chained bound", lp, Status::Optimal, Some(ratio(50, 3)), Some(vec![ratio(50, 3), ratio(50, 3)])));

    // Three constraints meet at (1, 1).
    let mut lp = LinearProgram::new();
    lp.bounded_var("x", zero.clone())
        .bounded_var("y", zero.clone())
        .minimize(f(&[("x", -1), ("y", -1)]))
        .constrain("sum", f(&[("x", 1), ("y", 1)]), Relation::Le, int(2))
        .constrain("x<=1", f(&[("x", 1)]), Relation::Le, int(1))
        .constrain("y<=1", f(&[("y", 1)]), Relation::Le, int(1))
        .constrain("x<=y", f(&[("x", 1), ("y", -1)]), Relation::Le, zero.clone());
    out.push(case("degenerate vertex", lp, Status::Optimal, Some(int(-2)), Some(vec![int(1), int(1)])));

    // Beale's example, which cycles under the textbook pivot rule.
    let mut lp = LinearProgram::new();
    for v in ["x4", "x5", "x6", "x7"] {
        lp.bounded_var(v, zero.clone());
    }
    lp.minimize(form(&[("x4", ratio(-3, 4)), ("x5", int(20)), ("x6", ratio(-1, 2)), ("x7", int(6))]))
        .constrain(
            "r1",
            form(&[("x4", ratio(1, 4)), ("x5", int(-8)), ("x6", int(-1)), ("x7", int(9))]),
            Relation::Le,
            zero.clone(),
        )
        .constrain(
            "r2",
            form(&[("x4", ratio(1, 2)), ("x5", int(-12)), ("x6", ratio(-1, 2)), ("x7", int(3))]),
            Relation::Le,
            zero.clone(),
        )
        .constrain("r3", f(&[("x6", 1)]), Relation::Le, int(1));
    out.push(case(
        "cycling example",
        lp,
        Status::Optimal,
        Some(ratio(-5, 4)),
        Some(vec![int(1), int(0), int(1), int(0)]),
    ));

    let mut lp = LinearProgram::new();
    lp.bounded_var("x", zero.clone())
        .minimize(f(&[("x", -1)]))
        .constrain("x>=1", f(&[("x", 1)]), Relation::Ge, int(1));
    out.push(case("unbounded ray", lp, Status::Unbounded, None, None));

    let mut lp = LinearProgram::new();
    lp.free_var("x")
        .free_var("y")
        .minimize(f(&[("y", 1)]))
        .constrain("cover", f(&[("x", 1), ("y", 1)]), Relation::Ge, int(1));
    out.push(case("unbounded free variables", lp, Status::Unbounded, None, None));

    // The second equality is twice the first.
    let mut lp = LinearProgram::new();
    for v in ["x", "y", "z"] {
        lp.bounded_var(v, zero.clone());
    }
    lp.minimize(f(&[("x", 1), ("y", 1), ("z", 1)]))
        .constrain("x+y=2", f(&[("x", 1), ("y", 1)]), Relation::Eq, int(2))
        .constrain("2x+2y=4", f(&[("x", 2), ("y", 2)]), Relation::Eq, int(4))
        .constrain("y+z=3", f(&[("y", 1), ("z", 1)]), Relation::Eq, int(3));
    out.push(case("redundant equality", lp, Status::Optimal, Some(int(3)), Some(vec![int(0), int(2), int(1)])));

    let mut lp = LinearProgram::new();
    lp.bounded_var("x", zero.clone())
        .bounded_var("y", zero.clone())
        .minimize(f(&[("x", 1)]))
        .constrain("a", f(&[("x", 1), ("y", 1)]), Relation::Eq, int(1))
        .constrain("b", f(&[("x", 1), ("y", 1)]), Relation::Eq, int(2));
    out.push(case("inconsistent equalities", lp, Status::Infeasible, None, None));

    let mut lp = LinearProgram::new();
    lp.bounded_var("x", zero.clone())
        .bounded_var("y", zero.clone())
        .minimize(f(&[("x", 2), ("y", 3)]))
        .constrain("a", f(&[("x", 1), ("y", 1)]), Relation::Ge, int(4))
        .constrain("b", f(&[("x", 1), ("y", 3)]), Relation::Ge, int(6));
    out.push(case("covering", lp, Status::Optimal, Some(int(9)), Some(vec![int(3), int(1)])));

    out
}

/// Extra programs exercised by the LP tests only.
pub fn extras() -> Vec<Case> {
    let zero = int(0);
    let mut out = Vec::new();

    let mut lp = LinearProgram::new();
    lp.bounded_var("x", zero.clone())
        .bounded_var("y", zero.clone())
        .minimize(f(&[("x", -3), ("y", -5)]))
        .constrain("x<=4", f(&[("x", 1)]), Relation::Le, int(4))
        .constrain("2y<=12", f(&[("y", 2)]), Relation::Le, int(12))
        .constrain("3x+2y<=18", f(&[("x", 3), ("y", 2)]), Relation::Le, int(18));
    out.push(case("production", lp, Status::Optimal, Some(int(-36)), Some(vec![int(2), int(6)])));

    let mut lp = LinearProgram::new();
    lp.bounded_var("x", ratio(7, 3)).minimize(f(&[("x", 1)]));
    out.push(case("shifted lower bound", lp, Status::Optimal, Some(ratio(7, 3)), Some(vec![ratio(7, 3)])));

    let mut lp = LinearProgram::new();
    lp.free_var("x").minimize(f(&[("x", 1)])).constrain("x>=-5/2", f(&[("x", 2)]), Relation::Ge, int(-5));
    out.push(case("negative optimum", lp, Status::Optimal, Some(ratio(-5, 2)), Some(vec![ratio(-5, 2)])));

    let mut lp = LinearProgram::new();
    lp.bounded_var("x", int(2))
        .free_var("y")
        .minimize(f(&[("y", 1)]))
        .constrain("y>=x", f(&[("y", 1), ("x", -1)]), Relation::Ge, zero.clone())
        .constrain("x<=1", f(&[("x", 1)]), Relation::Le, int(1));
    out.push(case("bound conflicts with constraint", lp, Status::Infeasible, None, None));

    out
}
