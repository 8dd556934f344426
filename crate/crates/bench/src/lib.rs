//! Fixtures shared by the benchmarks.

use psiset_core::{IntervalBox, Problem, VectorFunction};

/// Name, components, adjustment box and performance box.
pub type Fixture = (&'static str, [&'static str; 2], [(f64, f64); 2], [(f64, f64); 2]);

pub const PROBLEMS: [Fixture; 4] = [
    ("f1", ["x^2 + y^2", "x + y"], [(-1.0, 2.0), (-1.0, 2.0)], [(1.0, 2.0), (1.0, 4.0)]),
    ("f2", ["x^2 - y^2", "x*y"], [(-3.0, 3.0), (-3.0, 3.0)], [(0.0, 4.0), (-2.0, 2.0)]),
    ("f3", ["x^2 - y^2", "y/(1 + x)"], [(0.0, 6.0), (0.0, 10.0)], [(0.0, 5.0), (-4.0, 4.0)]),
    (
        "f4",
        ["x^2 - y^2*exp(x) + x*exp(y)", "x*(x + y) - y^2"],
        [(-5.0, 5.0), (-5.0, 5.0)],
        [(-5.0, 5.0), (-5.0, 5.0)],
    ),
];

pub fn problem(index: usize) -> Problem {
    let (_, f, r, p) = PROBLEMS[index];
    Problem::new(
        VectorFunction::parse(&["x", "y"], &f).expect("valid function"),
        IntervalBox::from_bounds(&r).expect("valid box"),
        IntervalBox::from_bounds(&p).expect("valid box"),
    )
    .expect("consistent dimensions")
}
