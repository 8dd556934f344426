//! Probabilistic set inversion.
//!
//! Given `f: R^n -> R^p`, an adjustment box `R` and a performance box `P`, the
//! solver pavs `R` by breadth-first bisection. Each candidate box `X` is scored
//! by
//!
//! ```text
//! p(X) = mes([f](X) ∩ P) / mes([f](X))
//! ```
//!
//! and accepted when `p = 1`, rejected when `p = 0`, and bisected otherwise
//! until it falls below the resolution. Boxes still undecided at the
//! resolution are reported in a separate boundary class with their score.
//!
//! One generation of the worklist is one iteration: generation `N` holds the
//! boxes obtained after `N` bisections, so it never has more than `2^N`
//! members.

use rayon::prelude::*;

use crate::expr::VectorFunction;
use crate::interval::IntervalBox;

/// Score recorded for boxes whose enclosure could not be evaluated.
pub const UNKNOWN_PROBABILITY: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PsiError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{what}: expected dimension {expected}, got {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("no iteration statistics recorded")]
    EmptyStats,
    #[error("could not start worker pool: {0}")]
    Workers(String),
}

/// An inversion problem: find `f^-1(P) ∩ R`.
#[derive(Debug, Clone)]
pub struct Problem {
    function: VectorFunction,
    adjustments: IntervalBox,
    performance: IntervalBox,
}

impl Problem {
    pub fn new(
        function: VectorFunction,
        adjustments: IntervalBox,
        performance: IntervalBox,
    ) -> Result<Self, PsiError> {
        if adjustments.dim() != function.arity() {
            return Err(PsiError::DimensionMismatch {
                what: "adjustment box",
                expected: function.arity(),
                found: adjustments.dim(),
            });
        }
        if performance.dim() != function.output_dim() {
            return Err(PsiError::DimensionMismatch {
                what: "performance box",
                expected: function.output_dim(),
                found: performance.dim(),
            });
        }
        Ok(Self {
            function,
            adjustments,
            performance,
        })
    }

    pub fn function(&self) -> &VectorFunction {
        &self.function
    }

    pub fn adjustments(&self) -> &IntervalBox {
        &self.adjustments
    }

    pub fn performance(&self) -> &IntervalBox {
        &self.performance
    }

    /// Whether `f(x) ∈ P`; `None` when `f(x)` is undefined or not finite.
    pub fn is_solution(&self, x: &[f64]) -> Option<bool> {
        let y = self.function.eval_point(x).ok()?;
        if y.iter().any(|v| !v.is_finite()) {
            return None;
        }
        Some(self.performance.contains_point(&y))
    }
}

/// How the resolution `epsilon` is compared against a box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Resolution {
    /// Stop when the box measure drops below `epsilon`.
    #[default]
    Measure,
    /// Stop when the widest edge drops below `epsilon`.
    MaxWidth,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PsiConfig {
    pub epsilon: f64,
    pub mode: Resolution,
    /// Bisection depth at which undecided boxes stop regardless of size.
    pub max_depth: u32,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
}

impl PsiConfig {
    pub const DEFAULT_MAX_DEPTH: u32 = 64;

    pub fn new(epsilon: f64, mode: Resolution) -> Self {
        Self {
            epsilon,
            mode,
            max_depth: Self::DEFAULT_MAX_DEPTH,
            workers: None,
        }
    }

    pub fn validate(&self) -> Result<(), PsiError> {
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(PsiError::Config(format!(
                "resolution must be a positive finite number, got {}",
                self.epsilon
            )));
        }
        if self.max_depth < 1 {
            return Err(PsiError::Config("max_depth must be at least 1".into()));
        }
        if self.workers == Some(0) {
            return Err(PsiError::Config("worker count must be at least 1".into()));
        }
        Ok(())
    }

    fn below_resolution(&self, b: &IntervalBox, depth: u32) -> bool {
        let size = match self.mode {
            Resolution::Measure => b.measure(),
            Resolution::MaxWidth => b.max_width(),
        };
        size < self.epsilon || depth >= self.max_depth
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Accepted,
    Rejected,
    Boundary,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Accepted => "accepted",
            Status::Rejected => "rejected",
            Status::Boundary => "boundary",
        }
    }

    pub fn parse(s: &str) -> Option<Status> {
        match s {
            "accepted" => Some(Status::Accepted),
            "rejected" => Some(Status::Rejected),
            "boundary" => Some(Status::Boundary),
            _ => None,
        }
    }
}

/// Raw per-generation counters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationRecord {
    pub iteration: u32,
    pub candidates: usize,
    pub accepted: usize,
    pub candidate_measure: f64,
    pub accepted_measure: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Paving {
    pub accepted: Vec<IntervalBox>,
    pub rejected: Vec<IntervalBox>,
    pub boundary: Vec<(IntervalBox, f64)>,
    pub stats: Vec<IterationRecord>,
}

impl Paving {
    pub fn accepted_measure(&self) -> f64 {
        self.accepted.iter().map(IntervalBox::measure).sum()
    }

    pub fn rejected_measure(&self) -> f64 {
        self.rejected.iter().map(IntervalBox::measure).sum()
    }

    pub fn boundary_measure(&self) -> f64 {
        self.boundary.iter().map(|(b, _)| b.measure()).sum()
    }

    pub fn total_measure(&self) -> f64 {
        self.accepted_measure() + self.rejected_measure() + self.boundary_measure()
    }

    pub fn len(&self) -> usize {
        self.accepted.len() + self.rejected.len() + self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All boxes with their class and score, in canonical box order.
    pub fn entries(&self) -> Vec<(Status, &IntervalBox, f64)> {
        let mut out: Vec<_> = self
            .accepted
            .iter()
            .map(|b| (Status::Accepted, b, 1.0))
            .chain(self.rejected.iter().map(|b| (Status::Rejected, b, 0.0)))
            .chain(self.boundary.iter().map(|(b, p)| (Status::Boundary, b, *p)))
            .collect();
        out.sort_by(|a, b| a.1.canonical_cmp(b.1).then(a.0.cmp(&b.0)));
        out
    }

    /// Sorts every class by canonical box order.
    pub fn sort_canonical(&mut self) {
        self.accepted.sort_by(IntervalBox::canonical_cmp);
        self.rejected.sort_by(IntervalBox::canonical_cmp);
        self.boundary
            .sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    }
}

/// `mes(Y ∩ P) / mes(Y)`, clamped to `[0, 1]`.
///
/// Dimensions where `Y` is a single point are left out of both measures when
/// the point lies in `P`, and force a score of 0 otherwise. If every dimension
/// is a point the score is 1 or 0 by membership.
pub fn probability(y: &IntervalBox, p: &IntervalBox) -> Result<f64, PsiError> {
    if y.dim() != p.dim() {
        return Err(PsiError::DimensionMismatch {
            what: "performance box",
            expected: p.dim(),
            found: y.dim(),
        });
    }
    let mut inter = 1.0;
    let mut image = 1.0;
    for (yi, pi) in y.components().iter().zip(p.components()) {
        if yi.is_degenerate() {
            if !pi.contains(yi.lo()) {
                return Ok(0.0);
            }
            continue;
        }
        match yi.intersection(pi) {
            None => return Ok(0.0),
            Some(c) => {
                inter *= c.width();
                image *= yi.width();
            }
        }
    }
    Ok((inter / image).clamp(0.0, 1.0))
}

enum Outcome {
    Accept(IntervalBox),
    Reject(IntervalBox),
    Boundary(IntervalBox, f64),
    Split(IntervalBox, IntervalBox),
}

fn classify(problem: &Problem, config: &PsiConfig, b: IntervalBox, depth: u32) -> (Outcome, f64) {
    let measure = b.measure();
    let p = match problem.function.eval_box(&b) {
        Ok(y) => probability(&y, &problem.performance).unwrap_or(UNKNOWN_PROBABILITY),
        Err(_) => UNKNOWN_PROBABILITY,
    };
    let outcome = if p == 1.0 {
        Outcome::Accept(b)
    } else if p == 0.0 {
        Outcome::Reject(b)
    } else if config.below_resolution(&b, depth) {
        Outcome::Boundary(b, p)
    } else {
        match b.bisect() {
            Ok((l, r)) => Outcome::Split(l, r),
            Err(_) => Outcome::Boundary(b, p),
        }
    };
    (outcome, measure)
}

fn run(problem: &Problem, config: &PsiConfig, parallel: bool) -> Paving {
    let mut paving = Paving::default();
    let mut generation = vec![problem.adjustments.clone()];
    let mut depth = 0u32;
    while !generation.is_empty() {
        let outcomes: Vec<(Outcome, f64)> = if parallel {
            generation
                .into_par_iter()
                .map(|b| classify(problem, config, b, depth))
                .collect()
        } else {
            generation
                .into_iter()
                .map(|b| classify(problem, config, b, depth))
                .collect()
        };

        let mut record = IterationRecord {
            iteration: depth,
            candidates: outcomes.len(),
            accepted: 0,
            candidate_measure: 0.0,
            accepted_measure: 0.0,
        };
        let mut next = Vec::new();
        for (outcome, measure) in outcomes {
            record.candidate_measure += measure;
            match outcome {
                Outcome::Accept(b) => {
                    record.accepted += 1;
                    record.accepted_measure += measure;
                    paving.accepted.push(b);
                }
                Outcome::Reject(b) => paving.rejected.push(b),
                Outcome::Boundary(b, p) => paving.boundary.push((b, p)),
                Outcome::Split(l, r) => {
                    next.push(l);
                    next.push(r);
                }
            }
        }
        paving.stats.push(record);
        generation = next;
        depth += 1;
    }
    paving.sort_canonical();
    paving
}

/// Runs the inversion. The result does not depend on the worker count.
pub fn psi_invert(problem: &Problem, config: &PsiConfig) -> Result<Paving, PsiError> {
    config.validate()?;
    match config.workers {
        Some(1) => Ok(run(problem, config, false)),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| PsiError::Workers(e.to_string()))?;
            Ok(pool.install(|| run(problem, config, true)))
        }
        None => Ok(run(problem, config, true)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatsRow {
    pub iteration: u32,
    pub candidates: usize,
    pub accepted: usize,
    pub candidate_measure: f64,
    pub accepted_measure: f64,
    /// Accepted boxes over candidate boxes, cumulated up to this iteration.
    pub ratio_count: f64,
    /// Accepted measure over candidate measure, cumulated up to this iteration.
    pub ratio_measure: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StatsSeries {
    pub rows: Vec<StatsRow>,
    /// Pearson correlation between the two ratio series; `None` when either
    /// series is constant or has fewer than two points.
    pub correlation: Option<f64>,
}

fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        (num / den).clamp(0.0, 1.0)
    } else {
        0.0
    }
}

pub fn paving_stats(paving: &Paving) -> Result<StatsSeries, PsiError> {
    stats_from_records(&paving.stats)
}

pub fn stats_from_records(records: &[IterationRecord]) -> Result<StatsSeries, PsiError> {
    if records.is_empty() {
        return Err(PsiError::EmptyStats);
    }
    let mut cum = (0usize, 0usize, 0.0f64, 0.0f64);
    let rows: Vec<StatsRow> = records
        .iter()
        .map(|r| {
            cum.0 += r.candidates;
            cum.1 += r.accepted;
            cum.2 += r.candidate_measure;
            cum.3 += r.accepted_measure;
            StatsRow {
                iteration: r.iteration,
                candidates: r.candidates,
                accepted: r.accepted,
                candidate_measure: r.candidate_measure,
                accepted_measure: r.accepted_measure,
                ratio_count: ratio(cum.1 as f64, cum.0 as f64),
                ratio_measure: ratio(cum.3, cum.2),
            }
        })
        .collect();
    let xs: Vec<f64> = rows.iter().map(|r| r.ratio_count).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.ratio_measure).collect();
    Ok(StatsSeries {
        correlation: pearson(&xs, &ys),
        rows,
    })
}

/// Sample Pearson correlation coefficient.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx.sqrt() * syy.sqrt()))
}

/// Convenience for tests and tools: the class of the paving box that contains
/// `x`, preferring decided classes on shared faces.
pub fn locate(paving: &Paving, x: &[f64]) -> Option<Status> {
    if paving.accepted.iter().any(|b| b.contains_point(x)) {
        return Some(Status::Accepted);
    }
    if paving.rejected.iter().any(|b| b.contains_point(x)) {
        return Some(Status::Rejected);
    }
    paving
        .boundary
        .iter()
        .any(|(b, _)| b.contains_point(x))
        .then_some(Status::Boundary)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bx(b: &[(f64, f64)]) -> IntervalBox {
        IntervalBox::from_bounds(b).unwrap()
    }

    fn problem(vars: &[&str], f: &[&str], r: &[(f64, f64)], p: &[(f64, f64)]) -> Problem {
        Problem::new(VectorFunction::parse(vars, f).unwrap(), bx(r), bx(p)).unwrap()
    }

    #[test]
    fn probability_examples() {
        let p = probability(&bx(&[(0.0, 2.0), (0.0, 2.0)]), &bx(&[(1.0, 3.0), (1.0, 3.0)])).unwrap();
        assert_eq!(p, 0.25);
        let big = bx(&[(0.0, 10.0), (0.0, 10.0)]);
        assert_eq!(probability(&bx(&[(1.0, 2.0), (1.0, 2.0)]), &big).unwrap(), 1.0);
        assert_eq!(probability(&bx(&[(11.0, 12.0), (1.0, 2.0)]), &big).unwrap(), 0.0);
        let root = probability(&bx(&[(-8.0, 10.0), (-2.0, 4.0)]), &bx(&[(1.0, 2.0), (1.0, 4.0)])).unwrap();
        assert!((root - 1.0 / 36.0).abs() < 1e-15);
        assert!(matches!(
            probability(&bx(&[(0.0, 1.0)]), &big),
            Err(PsiError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn probability_degenerate_dimensions() {
        let p = bx(&[(0.0, 1.0), (0.0, 4.0)]);
        assert_eq!(probability(&bx(&[(0.5, 0.5), (0.0, 8.0)]), &p).unwrap(), 0.5);
        assert_eq!(probability(&bx(&[(2.0, 2.0), (0.0, 8.0)]), &p).unwrap(), 0.0);
        assert_eq!(probability(&bx(&[(0.5, 0.5), (1.0, 1.0)]), &p).unwrap(), 1.0);
        assert_eq!(probability(&bx(&[(0.5, 0.5), (5.0, 5.0)]), &p).unwrap(), 0.0);
    }

    #[test]
    fn identity_inversion() {
        let prob = problem(&["x"], &["x"], &[(0.0, 4.0)], &[(1.0, 2.0)]);
        let eps = 2f64.powi(-10);
        let paving = psi_invert(&prob, &PsiConfig::new(eps, Resolution::MaxWidth)).unwrap();
        let target = bx(&[(1.0, 2.0)]);
        assert!(paving.accepted.iter().all(|b| b.is_subset(&target)));
        let acc = paving.accepted_measure();
        assert!(acc <= 1.0 && acc >= 1.0 - 4.0 * eps, "{acc}");
        assert!(paving.boundary_measure() <= 4.0 * eps);
        assert_eq!(paving.total_measure(), 4.0);
    }

    #[test]
    fn disjoint_target_rejects_root() {
        let prob = problem(&["x", "y"], &["x + y"], &[(0.0, 1.0), (0.0, 1.0)], &[(5.0, 6.0)]);
        let paving = psi_invert(&prob, &PsiConfig::new(1e-3, Resolution::Measure)).unwrap();
        assert_eq!(paving.rejected, vec![prob.adjustments().clone()]);
        assert!(paving.accepted.is_empty() && paving.boundary.is_empty());
        assert_eq!(paving.stats.len(), 1);
        assert_eq!(paving.stats[0].candidates, 1);
    }

    #[test]
    fn root_acceptance_stats() {
        let prob = problem(&["x"], &["x"], &[(0.0, 1.0)], &[(-1.0, 2.0)]);
        let paving = psi_invert(&prob, &PsiConfig::new(1e-3, Resolution::Measure)).unwrap();
        let s = paving_stats(&paving).unwrap();
        assert_eq!(s.rows.len(), 1);
        assert_eq!((s.rows[0].ratio_count, s.rows[0].ratio_measure), (1.0, 1.0));
        assert_eq!(s.correlation, None);
    }

    #[test]
    fn division_errors_become_boundary() {
        // 1/x is undefined on any box touching 0
        let prob = problem(&["x"], &["1/x"], &[(-1.0, 1.0)], &[(-100.0, 100.0)]);
        let cfg = PsiConfig::new(0.25, Resolution::MaxWidth);
        let paving = psi_invert(&prob, &cfg).unwrap();
        assert!(paving
            .boundary
            .iter()
            .any(|(b, p)| b.get(0).contains_zero() && *p == UNKNOWN_PROBABILITY));
        assert_eq!(paving.total_measure(), 2.0);
    }

    #[test]
    fn config_validation() {
        let prob = problem(&["x"], &["x"], &[(0.0, 1.0)], &[(0.0, 1.0)]);
        for cfg in [
            PsiConfig::new(0.0, Resolution::Measure),
            PsiConfig::new(f64::NAN, Resolution::Measure),
            PsiConfig { max_depth: 0, ..PsiConfig::new(0.1, Resolution::Measure) },
            PsiConfig { workers: Some(0), ..PsiConfig::new(0.1, Resolution::Measure) },
        ] {
            assert!(matches!(psi_invert(&prob, &cfg), Err(PsiError::Config(_))));
        }
    }

    #[test]
    fn max_depth_caps_bisection() {
        let prob = problem(&["x"], &["x"], &[(0.0, 4.0)], &[(1.0, 2.3)]);
        let cfg = PsiConfig { max_depth: 3, ..PsiConfig::new(1e-12, Resolution::MaxWidth) };
        let paving = psi_invert(&prob, &cfg).unwrap();
        assert_eq!(paving.stats.len(), 4);
        assert!(paving.boundary.iter().all(|(_, p)| *p > 0.0 && *p < 1.0));
    }

    #[test]
    fn problem_dimension_checks() {
        let f = VectorFunction::parse(&["x", "y"], &["x", "y"]).unwrap();
        assert!(Problem::new(f.clone(), bx(&[(0.0, 1.0)]), bx(&[(0.0, 1.0), (0.0, 1.0)])).is_err());
        assert!(Problem::new(f, bx(&[(0.0, 1.0), (0.0, 1.0)]), bx(&[(0.0, 1.0)])).is_err());
    }

    #[test]
    fn empty_stats() {
        assert_eq!(paving_stats(&Paving::default()), Err(PsiError::EmptyStats));
    }

    #[test]
    fn pearson_basics() {
        assert!((pearson(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]).unwrap() - 1.0).abs() < 1e-15);
        assert!((pearson(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap() + 1.0).abs() < 1e-15);
        assert_eq!(pearson(&[1.0, 1.0], &[1.0, 2.0]), None);
        assert_eq!(pearson(&[1.0], &[1.0]), None);
    }
}
