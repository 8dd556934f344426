//! Interval arithmetic embedded in a four-dimensional associative algebra,
//! inclusion functions built on it, and probabilistic set inversion.
//!
//! * [`interval`]: closed intervals, Minkowski operations, boxes.
//! * [`a4`]: the algebra `A4`, sector embedding, quotient, algebraic product
//!   and inverse.
//! * [`girbar`]: the completed vector space of generalized intervals.
//! * [`expr`]: formula parsing and inclusion-function evaluation.
//! * [`psi`]: set inversion by conditional-probability classification.

pub mod a4;
pub mod expr;
pub mod girbar;
pub mod interval;
pub mod psi;

pub use a4::{A4Vector, GInterval, QuotientCoords, Sector};
pub use expr::{parse, Expr, Space, VectorFunction};
pub use interval::{Interval, IntervalBox, IntervalError};
pub use psi::{psi_invert, Paving, Problem, PsiConfig, Resolution, Status};
