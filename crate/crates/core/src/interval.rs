//! Closed real intervals, Minkowski arithmetic and axis-aligned boxes.
//!
//! All arithmetic is plain `f64` with round-to-nearest; no outward rounding
//! is performed, so enclosures are exact only up to floating-point error.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntervalError {
    #[error("invalid interval bounds [{lo}, {hi}]")]
    InvalidBounds { lo: f64, hi: f64 },
    #[error("division by an interval containing zero")]
    DivisionByZeroInterval,
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("cannot bisect a box whose components all have zero width")]
    DegenerateBox,
    #[error("exponent must be at least 1, got {0}")]
    InvalidExponent(i32),
    #[error("interval is not invertible (zero lies in its span)")]
    NotInvertible,
    #[error("result bound overflowed")]
    Overflow,
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// A closed, bounded, non-empty interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

/// Binary Minkowski operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinkOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Interval {
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };
    /// `[-1, -1]`, the basis vector `e4`.
    pub const MINUS_ONE: Interval = Interval { lo: -1.0, hi: -1.0 };

    /// Builds `[lo, hi]`, rejecting reversed or non-finite bounds.
    pub fn new(lo: f64, hi: f64) -> Result<Self, IntervalError> {
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(IntervalError::InvalidBounds { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    /// The degenerate interval `[x, x]`.
    pub fn point(x: f64) -> Result<Self, IntervalError> {
        Self::new(x, x)
    }

    /// Builds from bounds already known to be ordered; infinite results map to
    /// `Overflow`.
    pub(crate) fn checked(lo: f64, hi: f64) -> Result<Self, IntervalError> {
        if lo.is_nan() || hi.is_nan() || lo.is_infinite() || hi.is_infinite() {
            return Err(IntervalError::Overflow);
        }
        debug_assert!(lo <= hi, "[{lo}, {hi}]");
        Ok(Self { lo, hi })
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    #[inline]
    pub fn center(&self) -> f64 {
        (self.lo + self.hi) / 2.0
    }

    #[inline]
    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    #[inline]
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    #[inline]
    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    /// `self ⊆ other`.
    #[inline]
    pub fn is_subset(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersection(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn add(&self, rhs: &Interval) -> Interval {
        Interval {
            lo: self.lo + rhs.lo,
            hi: self.hi + rhs.hi,
        }
    }

    pub fn sub(&self, rhs: &Interval) -> Interval {
        Interval {
            lo: self.lo - rhs.hi,
            hi: self.hi - rhs.lo,
        }
    }

    pub fn mul(&self, rhs: &Interval) -> Interval {
        let p = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        Interval {
            lo: p.iter().copied().fold(f64::INFINITY, f64::min),
            hi: p.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }

    pub fn div(&self, rhs: &Interval) -> Result<Interval, IntervalError> {
        Ok(self.mul(&rhs.recip()?))
    }

    /// Monotone-decreasing endpoint reciprocal `[1/hi, 1/lo]`.
    pub fn recip(&self) -> Result<Interval, IntervalError> {
        if self.contains_zero() {
            return Err(IntervalError::DivisionByZeroInterval);
        }
        Interval::checked(1.0 / self.hi, 1.0 / self.lo)
    }

    /// Minkowski operation dispatch.
    pub fn mink(op: MinkOp, x: &Interval, y: &Interval) -> Result<Interval, IntervalError> {
        match op {
            MinkOp::Add => Ok(x.add(y)),
            MinkOp::Sub => Ok(x.sub(y)),
            MinkOp::Mul => Ok(x.mul(y)),
            MinkOp::Div => x.div(y),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Increasing unary functions with an endpoint transfer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonotoneFn {
    Exp,
}

impl MonotoneFn {
    pub const REGISTRY: &'static [(&'static str, MonotoneFn)] = &[("exp", MonotoneFn::Exp)];

    pub fn lookup(name: &str) -> Result<Self, IntervalError> {
        Self::REGISTRY
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, f)| *f)
            .ok_or_else(|| IntervalError::UnknownFunction(name.to_string()))
    }

    pub fn name(self) -> &'static str {
        match self {
            MonotoneFn::Exp => "exp",
        }
    }

    #[inline]
    pub fn eval(self, x: f64) -> f64 {
        match self {
            MonotoneFn::Exp => x.exp(),
        }
    }

    /// `[f(lo), f(hi)]`.
    pub fn apply(self, x: &Interval) -> Result<Interval, IntervalError> {
        Interval::checked(self.eval(x.lo), self.eval(x.hi))
    }
}

/// Applies a registered increasing function by name.
pub fn monotone_apply(name: &str, x: &Interval) -> Result<Interval, IntervalError> {
    MonotoneFn::lookup(name)?.apply(x)
}

/// A compact axis-aligned box in `R^n`, `n >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalBox {
    components: Vec<Interval>,
}

impl IntervalBox {
    pub fn new(components: Vec<Interval>) -> Result<Self, IntervalError> {
        if components.is_empty() {
            return Err(IntervalError::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        Ok(Self { components })
    }

    pub fn from_bounds(bounds: &[(f64, f64)]) -> Result<Self, IntervalError> {
        let comps = bounds
            .iter()
            .map(|&(lo, hi)| Interval::new(lo, hi))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(comps)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.components.len()
    }

    #[inline]
    pub fn components(&self) -> &[Interval] {
        &self.components
    }

    #[inline]
    pub fn get(&self, i: usize) -> &Interval {
        &self.components[i]
    }

    /// Lebesgue measure: product of component widths.
    pub fn measure(&self) -> f64 {
        self.components.iter().map(Interval::width).product()
    }

    pub fn max_width(&self) -> f64 {
        self.components
            .iter()
            .map(Interval::width)
            .fold(0.0, f64::max)
    }

    pub fn contains_point(&self, x: &[f64]) -> bool {
        x.len() == self.dim() && self.components.iter().zip(x).all(|(c, &v)| c.contains(v))
    }

    pub fn is_subset(&self, other: &IntervalBox) -> bool {
        self.dim() == other.dim()
            && self
                .components
                .iter()
                .zip(&other.components)
                .all(|(a, b)| a.is_subset(b))
    }

    pub fn intersection(&self, other: &IntervalBox) -> Option<IntervalBox> {
        if self.dim() != other.dim() {
            return None;
        }
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.intersection(b))
            .collect::<Option<Vec<_>>>()
            .map(|components| IntervalBox { components })
    }

    /// Splits the widest component at its midpoint; ties go to the lowest index.
    pub fn bisect(&self) -> Result<(IntervalBox, IntervalBox), IntervalError> {
        let mut axis = 0;
        let mut best = self.components[0].width();
        for (i, c) in self.components.iter().enumerate().skip(1) {
            if c.width() > best {
                best = c.width();
                axis = i;
            }
        }
        if best <= 0.0 {
            return Err(IntervalError::DegenerateBox);
        }
        let c = self.components[axis];
        let mid = c.lo + (c.hi - c.lo) / 2.0;
        let mut left = self.clone();
        let mut right = self.clone();
        left.components[axis] = Interval { lo: c.lo, hi: mid };
        right.components[axis] = Interval { lo: mid, hi: c.hi };
        Ok((left, right))
    }

    /// Canonical order: lexicographic on lower bounds, then on upper bounds.
    pub fn canonical_cmp(&self, other: &IntervalBox) -> Ordering {
        let lows = self
            .components
            .iter()
            .map(|c| c.lo)
            .zip(other.components.iter().map(|c| c.lo));
        for (a, b) in lows {
            match a.total_cmp(&b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        let highs = self
            .components
            .iter()
            .map(|c| c.hi)
            .zip(other.components.iter().map(|c| c.hi));
        for (a, b) in highs {
            match a.total_cmp(&b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.dim().cmp(&other.dim())
    }
}

impl fmt::Display for IntervalBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
