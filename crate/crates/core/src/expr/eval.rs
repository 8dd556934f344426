//! Evaluation of expression trees.
//!
//! Two interval semantics are provided:
//!
//! * [`Space::Semigroup`] stays among proper intervals and always returns an
//!   enclosure of the real range. Subtraction is `l + e4·r`, negation is
//!   `e4·e`, products use the algebraic product, and division multiplies by
//!   the endpoint reciprocal `[1/hi, 1/lo]`.
//! * [`Space::Algebra`] computes the whole tree inside `A4` starting from the
//!   canonical embedding of each variable, with vector-space subtraction, and
//!   reduces once at the end. Algebraically equal formulas give equal results,
//!   but the result is not an enclosure in general.

use std::collections::HashMap;

use crate::a4::{alg_mul_interval, alg_pow_interval, embed_sector, g_embed, A4Vector, GInterval};
use crate::girbar::exp_transfer;
use crate::interval::{Interval, IntervalError, MonotoneFn};

use super::Expr;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Space {
    #[default]
    Semigroup,
    Algebra,
}

/// Variable bindings for interval evaluation.
#[derive(Debug, Clone, Copy)]
pub struct Env<'a> {
    names: &'a [String],
    values: &'a [Interval],
}

impl<'a> Env<'a> {
    pub fn new(names: &'a [String], values: &'a [Interval]) -> Self {
        debug_assert_eq!(names.len(), values.len());
        Env { names, values }
    }

    pub fn get(&self, name: &str) -> Result<Interval, EvalError> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.values[i])
            .ok_or_else(|| EvalError::UnboundVariable(name.to_string()))
    }
}

/// Owned bindings, convenient for one-off evaluations.
pub fn env_from_map(map: &HashMap<String, Interval>) -> (Vec<String>, Vec<Interval>) {
    let mut pairs: Vec<_> = map.iter().map(|(k, v)| (k.clone(), *v)).collect();
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    pairs.into_iter().unzip()
}

const E4: Interval = Interval::MINUS_ONE;

/// Semigroup inclusion function. The result is always a proper interval.
pub fn eval_inclusion(e: &Expr, env: &Env<'_>) -> Result<Interval, EvalError> {
    Ok(match e {
        Expr::Var(name) => env.get(name)?,
        Expr::Const(c) => Interval::point(*c)?,
        Expr::Add(l, r) => {
            let s = eval_inclusion(l, env)?.add(&eval_inclusion(r, env)?);
            Interval::checked(s.lo(), s.hi())?
        }
        Expr::Sub(l, r) => {
            let neg = alg_mul_interval(&E4, &eval_inclusion(r, env)?)?;
            let s = eval_inclusion(l, env)?.add(&neg);
            Interval::checked(s.lo(), s.hi())?
        }
        Expr::Neg(x) => alg_mul_interval(&E4, &eval_inclusion(x, env)?)?,
        Expr::Mul(l, r) => alg_mul_interval(&eval_inclusion(l, env)?, &eval_inclusion(r, env)?)?,
        Expr::Div(l, r) => {
            let num = eval_inclusion(l, env)?;
            let rec = eval_inclusion(r, env)?.recip()?;
            alg_mul_interval(&num, &rec)?
        }
        Expr::Pow(x, n) => {
            let base = eval_inclusion(x, env)?;
            match *n {
                0 => Interval::point(1.0)?,
                n if n > 0 => alg_pow_interval(&base, n)?,
                n => alg_pow_interval(&base, n.checked_neg().unwrap_or(i32::MAX))?.recip()?,
            }
        }
        Expr::Call(name, x) => MonotoneFn::lookup(name)?.apply(&eval_inclusion(x, env)?)?,
    })
}

fn algebra_vector(e: &Expr, env: &Env<'_>) -> Result<A4Vector, EvalError> {
    let v = match e {
        Expr::Var(name) => embed_sector(&env.get(name)?),
        Expr::Const(c) => A4Vector::ONE.scale(*c),
        Expr::Add(l, r) => algebra_vector(l, env)? + algebra_vector(r, env)?,
        Expr::Sub(l, r) => algebra_vector(l, env)? - algebra_vector(r, env)?,
        Expr::Neg(x) => -algebra_vector(x, env)?,
        Expr::Mul(l, r) => algebra_vector(l, env)? * algebra_vector(r, env)?,
        Expr::Div(l, r) => {
            let num = algebra_vector(l, env)?;
            num * algebra_vector(r, env)?.inverse().map_err(zero_denominator)?
        }
        Expr::Pow(x, n) => {
            let base = algebra_vector(x, env)?;
            let p = base.powi(n.unsigned_abs());
            if *n < 0 {
                p.inverse().map_err(zero_denominator)?
            } else {
                p
            }
        }
        Expr::Call(name, x) => {
            let f = MonotoneFn::lookup(name)?;
            let arg = algebra_vector(x, env)?.to_ginterval();
            match f {
                MonotoneFn::Exp => g_embed(&exp_transfer(&arg)?),
            }
        }
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(IntervalError::Overflow.into())
    }
}

fn zero_denominator(err: IntervalError) -> IntervalError {
    match err {
        IntervalError::NotInvertible => IntervalError::DivisionByZeroInterval,
        other => other,
    }
}

/// Evaluation inside `A4`, reduced to a generalized interval at the end.
pub fn eval_algebraic(e: &Expr, env: &Env<'_>) -> Result<GInterval, EvalError> {
    Ok(algebra_vector(e, env)?.to_ginterval())
}

/// Real-valued evaluation.
pub fn eval_real(e: &Expr, lookup: &dyn Fn(&str) -> Option<f64>) -> Result<f64, EvalError> {
    Ok(match e {
        Expr::Var(name) => lookup(name).ok_or_else(|| EvalError::UnboundVariable(name.clone()))?,
        Expr::Const(c) => *c,
        Expr::Add(l, r) => eval_real(l, lookup)? + eval_real(r, lookup)?,
        Expr::Sub(l, r) => eval_real(l, lookup)? - eval_real(r, lookup)?,
        Expr::Mul(l, r) => eval_real(l, lookup)? * eval_real(r, lookup)?,
        Expr::Div(l, r) => eval_real(l, lookup)? / eval_real(r, lookup)?,
        Expr::Neg(x) => -eval_real(x, lookup)?,
        Expr::Pow(x, n) => eval_real(x, lookup)?.powi(*n),
        Expr::Call(name, x) => MonotoneFn::lookup(name)?.eval(eval_real(x, lookup)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(a, b).unwrap()
    }

    fn semigroup(src: &str, vars: &[(&str, Interval)]) -> Result<Interval, EvalError> {
        let names: Vec<String> = vars.iter().map(|(n, _)| n.to_string()).collect();
        let values: Vec<Interval> = vars.iter().map(|(_, v)| *v).collect();
        eval_inclusion(&parse(src).unwrap(), &Env::new(&names, &values))
    }

    fn algebra(src: &str, vars: &[(&str, Interval)]) -> Result<GInterval, EvalError> {
        let names: Vec<String> = vars.iter().map(|(n, _)| n.to_string()).collect();
        let values: Vec<Interval> = vars.iter().map(|(_, v)| *v).collect();
        eval_algebraic(&parse(src).unwrap(), &Env::new(&names, &values))
    }

    #[test]
    fn dependency_free_forms_in_algebra() {
        let x = [("x", iv(3.0, 4.0))];
        for src in ["x^2 - 2*x + 1", "(x-1)^2", "x*(x-2)+1"] {
            assert_eq!(algebra(src, &x).unwrap(), GInterval::new(4.0, 9.0), "{src}");
        }
    }

    #[test]
    fn semigroup_forms() {
        let x = [("x", iv(3.0, 4.0))];
        assert_eq!(semigroup("(x-1)^2", &x).unwrap(), iv(4.0, 9.0));
        assert_eq!(semigroup("x*(x-2)+1", &x).unwrap(), iv(4.0, 9.0));
        // e4 subtraction is Minkowski subtraction: [9,16] - [6,8] + 1
        assert_eq!(semigroup("x^2 - 2*x + 1", &x).unwrap(), iv(2.0, 11.0));
    }

    #[test]
    fn exp_and_division() {
        let e = semigroup("exp(x)", &[("x", iv(0.0, 1.0))]).unwrap();
        assert_eq!(e, iv(1.0, std::f64::consts::E));
        let q = semigroup("y/(1+x)", &[("x", iv(0.0, 6.0)), ("y", iv(0.0, 10.0))]).unwrap();
        assert_eq!(q.lo(), 0.0);
        assert!((q.hi() - 10.0).abs() <= 10.0 * 1e-12, "{q}");
        assert_eq!(
            semigroup("1/x", &[("x", iv(-1.0, 1.0))]),
            Err(EvalError::Interval(IntervalError::DivisionByZeroInterval))
        );
        assert_eq!(
            algebra("1/x", &[("x", iv(-1.0, 1.0))]),
            Err(EvalError::Interval(IntervalError::DivisionByZeroInterval))
        );
        assert_eq!(algebra("1/x", &[("x", iv(1.0, 2.0))]).unwrap(), GInterval::new(1.0, 0.5));
        assert_eq!(algebra("x/x", &[("x", iv(1.0, 2.0))]).unwrap(), GInterval::ONE);
    }

    #[test]
    fn powers_and_negation() {
        let x = [("x", iv(-1.0, 2.0))];
        assert_eq!(semigroup("x^2", &x).unwrap(), iv(-4.0, 5.0));
        assert_eq!(semigroup("x^0", &x).unwrap(), iv(1.0, 1.0));
        assert_eq!(semigroup("-x", &x).unwrap(), iv(-2.0, 1.0));
        assert_eq!(semigroup("x^-1", &[("x", iv(2.0, 4.0))]).unwrap(), iv(0.25, 0.5));
        assert_eq!(semigroup("x^-2", &[("x", iv(1.0, 2.0))]).unwrap(), iv(0.25, 1.0));
    }

    #[test]
    fn missing_bindings_and_functions() {
        assert_eq!(
            semigroup("x + z", &[("x", iv(0.0, 1.0))]),
            Err(EvalError::UnboundVariable("z".into()))
        );
        assert_eq!(
            semigroup("sin(x)", &[("x", iv(0.0, 1.0))]),
            Err(EvalError::Interval(IntervalError::UnknownFunction("sin".into())))
        );
        assert_eq!(
            semigroup("exp(x)", &[("x", iv(0.0, 1000.0))]),
            Err(EvalError::Interval(IntervalError::Overflow))
        );
    }

    #[test]
    fn real_evaluation() {
        let e = parse("x^2 - y/(1+x) + exp(0)").unwrap();
        let v = eval_real(&e, &|n| match n {
            "x" => Some(2.0),
            "y" => Some(3.0),
            _ => None,
        })
        .unwrap();
        assert_eq!(v, 4.0);
    }

    #[test]
    fn map_env() {
        let mut m = HashMap::new();
        m.insert("y".to_string(), iv(1.0, 2.0));
        m.insert("x".to_string(), iv(3.0, 4.0));
        let (names, values) = env_from_map(&m);
        let env = Env::new(&names, &values);
        assert_eq!(env.get("x").unwrap(), iv(3.0, 4.0));
        assert_eq!(eval_inclusion(&parse("x+y").unwrap(), &env).unwrap(), iv(4.0, 6.0));
    }
}
