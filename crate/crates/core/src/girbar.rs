//! Linear structure of the completed interval space.
//!
//! Every class is stored as a [`GInterval`] pair, so addition, negation and
//! scaling are componentwise and equality of classes is equality of pairs.

use std::cmp::Ordering;

use crate::a4::GInterval;
use crate::interval::{Interval, IntervalError};

/// Linear operations on generalized intervals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LinearOp {
    Add(GInterval, GInterval),
    Neg(GInterval),
    Scale(f64, GInterval),
}

impl LinearOp {
    pub fn apply(self) -> GInterval {
        match self {
            LinearOp::Add(x, y) => g_add(&x, &y),
            LinearOp::Neg(x) => g_neg(&x),
            LinearOp::Scale(k, x) => g_scale(k, &x),
        }
    }
}

#[inline]
pub fn g_add(x: &GInterval, y: &GInterval) -> GInterval {
    GInterval::new(x.a + y.a, x.b + y.b)
}

#[inline]
pub fn g_neg(x: &GInterval) -> GInterval {
    GInterval::new(-x.a, -x.b)
}

#[inline]
pub fn g_sub(x: &GInterval, y: &GInterval) -> GInterval {
    GInterval::new(x.a - y.a, x.b - y.b)
}

/// External multiplication. For `k < 0` a proper interval maps to an
/// improper pair, i.e. to the class `(0, |k| X)`.
#[inline]
pub fn g_scale(k: f64, x: &GInterval) -> GInterval {
    GInterval::new(k * x.a, k * x.b)
}

/// Width plus absolute center: `|b - a| + |a + b| / 2`.
pub fn g_norm(x: &GInterval) -> f64 {
    (x.b - x.a).abs() + (x.a + x.b).abs() / 2.0
}

/// The two-clause order on proper intervals: nested intervals compare by
/// length (`X ⊂ Y` and `l(X) < l(Y)`), intervals that are not nested compare
/// by center (`c(X) < c(Y)`).
///
/// "Not nested" means neither contains the other. Reading the first clause as
/// just `X ⊄ Y` would make `[2,3] < [0,4]` and `[0,4] < [2,3]` both hold.
pub fn lt_order(x: &Interval, y: &Interval) -> bool {
    if x.is_subset(y) {
        x.width() < y.width()
    } else if y.is_subset(x) {
        false
    } else {
        x.center() < y.center()
    }
}

/// Total order for deterministic sorting: center first, then width.
pub fn canonical_cmp(x: &Interval, y: &Interval) -> Ordering {
    x.center()
        .total_cmp(&y.center())
        .then_with(|| x.width().total_cmp(&y.width()))
        .then_with(|| x.lo().total_cmp(&y.lo()))
}

/// `(exp a, exp b)`.
pub fn exp_transfer(x: &GInterval) -> Result<GInterval, IntervalError> {
    let out = GInterval::new(x.a.exp(), x.b.exp());
    if out.is_finite() {
        Ok(out)
    } else {
        Err(IntervalError::Overflow)
    }
}
