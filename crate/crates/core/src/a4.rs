//! The four-dimensional associative algebra `A4` and the interval product it
//! induces.
//!
//! The basis vectors are the intervals `e1 = [1,1]`, `e2 = [0,1]`,
//! `e3 = [-1,0]` and `e4 = [-1,-1]`; their products are the Minkowski products
//! of those intervals. A proper interval `[a, b]` embeds as a non-negative
//! combination of two basis vectors, chosen by sector:
//!
//! | sector | condition      | embedding                  |
//! |--------|----------------|----------------------------|
//! | `P11`  | `a >= 0`       | `a e1 + (b - a) e2`        |
//! | `P12`  | `a < 0 <= b`   | `-a e3 + b e2`             |
//! | `P13`  | `b < 0`        | `-b e4 + (b - a) e3`       |
//!
//! Reducing modulo `F = span{e1 - e2 + e3, e1 + e4}` identifies `e3 ≡ e2 - e1`
//! and `e4 ≡ -e1`, which maps `A4` onto the plane of generalized intervals.
//! `F` is not an ideal, so the product is defined on the canonical sector
//! representatives, not on arbitrary members of a class.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::interval::{Interval, IntervalError};

/// `TABLE[i][j]` is the (0-based) index of `e_{i+1} · e_{j+1}`.
const TABLE: [[usize; 4]; 4] = [
    [0, 1, 2, 3], //
    [1, 1, 2, 2],
    [2, 2, 1, 1],
    [3, 2, 1, 0],
];

/// Product of basis vectors, 1-based: `basis_mul(2, 3) == 3` means `e2·e3 = e3`.
///
/// Panics when an index is outside `1..=4`.
pub fn basis_mul(i: usize, j: usize) -> usize {
    assert!((1..=4).contains(&i) && (1..=4).contains(&j), "basis index out of range");
    TABLE[i - 1][j - 1] + 1
}

/// The basis vectors as intervals, `e1..e4`.
pub fn basis_interval(i: usize) -> Interval {
    let (lo, hi) = match i {
        1 => (1.0, 1.0),
        2 => (0.0, 1.0),
        3 => (-1.0, 0.0),
        4 => (-1.0, -1.0),
        _ => panic!("basis index out of range"),
    };
    Interval::new(lo, hi).expect("basis bounds are ordered")
}

/// Coefficients on `(e1, e2, e3, e4)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct A4Vector(pub [f64; 4]);

impl A4Vector {
    pub const ZERO: A4Vector = A4Vector([0.0; 4]);
    pub const ONE: A4Vector = A4Vector([1.0, 0.0, 0.0, 0.0]);

    pub fn new(e1: f64, e2: f64, e3: f64, e4: f64) -> Self {
        A4Vector([e1, e2, e3, e4])
    }

    pub fn basis(i: usize) -> Self {
        let mut v = [0.0; 4];
        v[i - 1] = 1.0;
        A4Vector(v)
    }

    pub fn scale(self, k: f64) -> Self {
        A4Vector(self.0.map(|c| c * k))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    /// Projection onto `A4/F`.
    pub fn reduce(&self) -> QuotientCoords {
        let [a1, a2, a3, a4] = self.0;
        QuotientCoords {
            beta1: a1 - a3 - a4,
            beta2: a2 + a3,
        }
    }

    pub fn to_ginterval(&self) -> GInterval {
        self.reduce().to_ginterval()
    }

    /// Matrix of `v ↦ self · v`; entry `[i][j]` is the `e_{i+1}` coefficient of
    /// `self · e_{j+1}`.
    fn left_mul_matrix(&self) -> [[f64; 4]; 4] {
        let mut m = [[0.0; 4]; 4];
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            for j in 0..4 {
                m[TABLE[i][j]][j] += c;
            }
        }
        m
    }

    /// Solves `self · y = e1` in `A4`.
    pub fn inverse(&self) -> Result<A4Vector, IntervalError> {
        let mut m = self.left_mul_matrix();
        let mut rhs = [1.0, 0.0, 0.0, 0.0];
        let scale = m
            .iter()
            .flat_map(|r| r.iter())
            .fold(0.0f64, |acc, v| acc.max(v.abs()));
        if scale == 0.0 || !scale.is_finite() {
            return Err(IntervalError::NotInvertible);
        }
        let tol = scale * 1e-13;
        for col in 0..4 {
            let pivot = (col..4)
                .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
                .unwrap();
            if m[pivot][col].abs() <= tol {
                return Err(IntervalError::NotInvertible);
            }
            m.swap(col, pivot);
            rhs.swap(col, pivot);
            for row in col + 1..4 {
                let f = m[row][col] / m[col][col];
                if f != 0.0 {
                    let pivot_row = m[col];
                    for (dst, src) in m[row][col..].iter_mut().zip(&pivot_row[col..]) {
                        *dst -= f * src;
                    }
                    rhs[row] -= f * rhs[col];
                }
            }
        }
        let mut y = [0.0; 4];
        for row in (0..4).rev() {
            let s: f64 = (row + 1..4).map(|k| m[row][k] * y[k]).sum();
            y[row] = (rhs[row] - s) / m[row][row];
        }
        let y = A4Vector(y);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(IntervalError::NotInvertible)
        }
    }

    /// `self^n` for `n >= 0` by repeated multiplication.
    pub fn powi(self, n: u32) -> A4Vector {
        (0..n).fold(A4Vector::ONE, |acc, _| acc * self)
    }
}

impl Add for A4Vector {
    type Output = A4Vector;
    fn add(self, rhs: A4Vector) -> A4Vector {
        A4Vector(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for A4Vector {
    type Output = A4Vector;
    fn sub(self, rhs: A4Vector) -> A4Vector {
        A4Vector(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for A4Vector {
    type Output = A4Vector;
    fn neg(self) -> A4Vector {
        A4Vector(self.0.map(|c| -c))
    }
}

/// Bilinear extension of the basis product table.
impl Mul for A4Vector {
    type Output = A4Vector;
    fn mul(self, rhs: A4Vector) -> A4Vector {
        let mut out = [0.0; 4];
        for (i, &u) in self.0.iter().enumerate() {
            if u == 0.0 {
                continue;
            }
            for (j, &v) in rhs.0.iter().enumerate() {
                out[TABLE[i][j]] += u * v;
            }
        }
        A4Vector(out)
    }
}

impl fmt::Display for A4Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "{a} e1 + {b} e2 + {c} e3 + {d} e4")
    }
}

/// Coordinates on the classes of `e1` and `e2` in `A4/F`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuotientCoords {
    pub beta1: f64,
    pub beta2: f64,
}

impl QuotientCoords {
    /// Whether the class lies in the convex part corresponding to proper intervals.
    pub fn is_proper(&self) -> bool {
        self.beta2 >= 0.0
    }

    pub fn to_ginterval(&self) -> GInterval {
        GInterval::new(self.beta1, self.beta1 + self.beta2)
    }
}

/// A generalized interval: an ordered pair with no order constraint.
///
/// Pairs with `a <= b` are proper intervals. The structure is the plane `R^2`
/// with componentwise addition and scaling, so the improper pair `(a, b)` with
/// `a > b` is the additive inverse of the proper interval `[-a, -b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GInterval {
    pub a: f64,
    pub b: f64,
}

impl GInterval {
    pub const ZERO: GInterval = GInterval { a: 0.0, b: 0.0 };
    pub const ONE: GInterval = GInterval { a: 1.0, b: 1.0 };
    /// `e4 = [-1, -1]`.
    pub const E4: GInterval = GInterval { a: -1.0, b: -1.0 };

    pub const fn new(a: f64, b: f64) -> Self {
        GInterval { a, b }
    }

    #[inline]
    pub fn is_proper(&self) -> bool {
        self.a <= self.b
    }

    /// The proper interval with the same endpoints, `[min, max]`.
    pub fn span(&self) -> Result<Interval, IntervalError> {
        Interval::checked(self.a.min(self.b), self.a.max(self.b))
    }

    /// The interval itself when proper.
    pub fn to_interval(&self) -> Result<Interval, IntervalError> {
        if self.is_proper() {
            Interval::checked(self.a, self.b)
        } else {
            Err(IntervalError::InvalidBounds {
                lo: self.a,
                hi: self.b,
            })
        }
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite()
    }
}

impl From<Interval> for GInterval {
    fn from(x: Interval) -> Self {
        GInterval::new(x.lo(), x.hi())
    }
}

impl fmt::Display for GInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    P11,
    P12,
    P13,
}

/// Sector of a pair by the signs of its endpoints: `P11` when both are
/// non-negative, `P13` when both are negative, `P12` otherwise. For proper
/// intervals this is the usual `a >= 0`, `a < 0 <= b`, `b < 0` split.
pub fn sector_of(a: f64, b: f64) -> Sector {
    if a.min(b) >= 0.0 {
        Sector::P11
    } else if a.max(b) < 0.0 {
        Sector::P13
    } else {
        Sector::P12
    }
}

fn sector_formula(sector: Sector, a: f64, b: f64) -> A4Vector {
    match sector {
        Sector::P11 => A4Vector::new(a, b - a, 0.0, 0.0),
        Sector::P12 => A4Vector::new(0.0, b, -a, 0.0),
        Sector::P13 => A4Vector::new(0.0, 0.0, b - a, -b),
    }
}

/// Canonical non-negative embedding of a proper interval.
pub fn embed_sector(x: &Interval) -> A4Vector {
    sector_formula(sector_of(x.lo(), x.hi()), x.lo(), x.hi())
}

/// Embedding of a generalized interval. Proper pairs use [`embed_sector`];
/// improper pairs use the formula of the sector their endpoints fall in, which
/// keeps `g_embed(x).reduce()` equal to `x` and makes inverses exact.
pub fn g_embed(x: &GInterval) -> A4Vector {
    sector_formula(sector_of(x.a, x.b), x.a, x.b)
}

/// Algebraic product of two generalized intervals.
///
/// Proper operands take the closed form of the sector products, which rounds
/// each endpoint once and so contains the Minkowski product in floating
/// point as well. Other pairs go through [`alg_mul_embedded`].
pub fn alg_mul(x: &GInterval, y: &GInterval) -> GInterval {
    if x.is_proper() && y.is_proper() {
        let (lo, hi) = proper_product(x.a, x.b, y.a, y.b);
        GInterval::new(lo, hi)
    } else {
        alg_mul_embedded(x, y)
    }
}

/// `reduce(g_embed(x) * g_embed(y))` computed in `A4`.
pub fn alg_mul_embedded(x: &GInterval, y: &GInterval) -> GInterval {
    (g_embed(x) * g_embed(y)).to_ginterval()
}

fn proper_product(a: f64, b: f64, c: f64, d: f64) -> (f64, f64) {
    if sector_of(a, b) == Sector::P12 && sector_of(c, d) == Sector::P12 {
        (a * d + b * c, a * c + b * d)
    } else {
        let p = [a * c, a * d, b * c, b * d];
        (
            p.iter().copied().fold(f64::INFINITY, f64::min),
            p.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        )
    }
}

/// Algebraic product restricted to proper intervals; the result is proper.
pub fn alg_mul_interval(x: &Interval, y: &Interval) -> Result<Interval, IntervalError> {
    let (lo, hi) = proper_product(x.lo(), x.hi(), y.lo(), y.hi());
    Interval::checked(lo, hi)
}

/// Left fold of [`alg_mul`], `n >= 1`.
pub fn alg_pow(x: &GInterval, n: i32) -> Result<GInterval, IntervalError> {
    if n < 1 {
        return Err(IntervalError::InvalidExponent(n));
    }
    let mut acc = *x;
    for _ in 1..n {
        acc = alg_mul(&acc, x);
    }
    Ok(acc)
}

/// Proper-interval power by repeated [`alg_mul_interval`], `n >= 1`.
pub fn alg_pow_interval(x: &Interval, n: i32) -> Result<Interval, IntervalError> {
    if n < 1 {
        return Err(IntervalError::InvalidExponent(n));
    }
    let mut acc = *x;
    for _ in 1..n {
        acc = alg_mul_interval(&acc, x)?;
    }
    Ok(acc)
}

/// Multiplicative inverse: solves `g_embed(x) · y = e1` in `A4` and returns
/// the class of `y`. Sign-definite inputs yield `(1/a, 1/b)`.
pub fn alg_inverse(x: &GInterval) -> Result<GInterval, IntervalError> {
    if x.a.min(x.b) <= 0.0 && 0.0 <= x.a.max(x.b) {
        return Err(IntervalError::NotInvertible);
    }
    Ok(g_embed(x).inverse()?.to_ginterval())
}

/// Reciprocal within the semigroup of proper intervals: `[1/hi, 1/lo]`.
pub fn semantic_reciprocal(x: &Interval) -> Result<Interval, IntervalError> {
    x.recip()
}
