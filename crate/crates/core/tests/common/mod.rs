#![allow(dead_code)]

use psiset_core::{Interval, IntervalBox, Problem, VectorFunction};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn iv(lo: f64, hi: f64) -> Interval {
    Interval::new(lo, hi).unwrap()
}

pub fn bx(bounds: &[(f64, f64)]) -> IntervalBox {
    IntervalBox::from_bounds(bounds).unwrap()
}

/// Uniform random proper interval with bounds in `[lo, hi]`.
pub fn random_interval(rng: &mut impl Rng, lo: f64, hi: f64) -> Interval {
    let a = rng.gen_range(lo..=hi);
    let b = rng.gen_range(lo..=hi);
    iv(a.min(b), a.max(b))
}

/// Random interval with dyadic bounds `k/8`, `|k| <= 8 * range`, so that
/// sums and products of a few of them are exact in f64.
pub fn dyadic_interval(rng: &mut impl Rng, range: i32) -> Interval {
    let a = rng.gen_range(-8 * range..=8 * range) as f64 / 8.0;
    let b = rng.gen_range(-8 * range..=8 * range) as f64 / 8.0;
    iv(a.min(b), a.max(b))
}

pub fn random_subinterval(rng: &mut impl Rng, x: &Interval) -> Interval {
    random_interval(rng, x.lo(), x.hi())
}

pub fn random_subbox(rng: &mut impl Rng, b: &IntervalBox) -> IntervalBox {
    IntervalBox::new(b.components().iter().map(|c| random_subinterval(rng, c)).collect()).unwrap()
}

pub fn random_point(rng: &mut impl Rng, b: &IntervalBox) -> Vec<f64> {
    b.components()
        .iter()
        .map(|c| if c.width() > 0.0 { rng.gen_range(c.lo()..=c.hi()) } else { c.lo() })
        .collect()
}

pub struct ReferenceProblem {
    pub name: &'static str,
    pub f: [&'static str; 2],
    pub r: [(f64, f64); 2],
    pub p: [(f64, f64); 2],
}

pub const REFERENCE: [ReferenceProblem; 4] = [
    ReferenceProblem {
        name: "f1",
        f: ["x^2 + y^2", "x + y"],
        r: [(-1.0, 2.0), (-1.0, 2.0)],
        p: [(1.0, 2.0), (1.0, 4.0)],
    },
    ReferenceProblem {
        name: "f2",
        f: ["x^2 - y^2", "x*y"],
        r: [(-3.0, 3.0), (-3.0, 3.0)],
        p: [(0.0, 4.0), (-2.0, 2.0)],
    },
    ReferenceProblem {
        name: "f3",
        f: ["x^2 - y^2", "y/(1 + x)"],
        r: [(0.0, 6.0), (0.0, 10.0)],
        p: [(0.0, 5.0), (-4.0, 4.0)],
    },
    ReferenceProblem {
        name: "f4",
        f: ["x^2 - y^2*exp(x) + x*exp(y)", "x*(x + y) - y^2"],
        r: [(-5.0, 5.0), (-5.0, 5.0)],
        p: [(-5.0, 5.0), (-5.0, 5.0)],
    },
];

impl ReferenceProblem {
    pub fn function(&self) -> VectorFunction {
        VectorFunction::parse(&["x", "y"], &self.f).unwrap()
    }

    pub fn problem(&self) -> Problem {
        Problem::new(self.function(), bx(&self.r), bx(&self.p)).unwrap()
    }
}
