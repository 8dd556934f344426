//! Function expressions: parsing, printing and inclusion-function evaluation.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr     = term { ("+" | "-") term } ;
//! term     = unary { ("*" | "/") unary } ;
//! unary    = "-" unary | power ;
//! power    = primary [ "^" exponent ] ;
//! exponent = [ "-" ] integer | "(" [ "-" ] integer ")" ;
//! primary  = number | ident | ident "(" expr ")" | "(" expr ")" ;
//! number   = digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ] ;
//! integer  = digits ;
//! ident    = ( letter | "_" ) { letter | digit | "_" } ;
//! ```
//!
//! `^` binds tighter than unary minus, so `-x^2` is `-(x^2)`.

mod eval;
mod parser;

use std::collections::BTreeSet;
use std::fmt;

use crate::interval::{IntervalBox, IntervalError, MonotoneFn};

pub use eval::{env_from_map, eval_algebraic, eval_inclusion, eval_real, Env, EvalError, Space};
pub use parser::{parse, ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Var(String),
    Const(f64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i32),
    Call(String, Box<Expr>),
}

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    /// Free variable names, sorted.
    pub fn variables(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.visit(&mut |e| {
            if let Expr::Var(v) = e {
                out.insert(v.as_str());
            }
        });
        out
    }

    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        match self {
            Expr::Var(_) | Expr::Const(_) => {}
            Expr::Add(l, r) | Expr::Sub(l, r) | Expr::Mul(l, r) | Expr::Div(l, r) => {
                l.visit(f);
                r.visit(f);
            }
            Expr::Neg(e) | Expr::Pow(e, _) | Expr::Call(_, e) => e.visit(f),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Var(_) | Expr::Const(_) | Expr::Call(..) => 5,
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, min_prec: u8) -> fmt::Result {
    if e.precedence() < min_prec {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

/// Prints with the minimal parentheses needed to re-parse to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, op, r, p) = match self {
            Expr::Var(v) => return f.write_str(v),
            Expr::Const(c) => return write!(f, "{c}"),
            Expr::Call(name, arg) => return write!(f, "{name}({arg})"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                return write_child(f, e, 3);
            }
            Expr::Pow(e, n) => {
                write_child(f, e, 5)?;
                return write!(f, "^{n}");
            }
            Expr::Add(l, r) => (l, " + ", r, 1),
            Expr::Sub(l, r) => (l, " - ", r, 1),
            Expr::Mul(l, r) => (l, "*", r, 2),
            Expr::Div(l, r) => (l, "/", r, 2),
        };
        write_child(f, l, p)?;
        f.write_str(op)?;
        write_child(f, r, p + 1)
    }
}

/// `f: R^n -> R^p`, one expression per output component.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFunction {
    variables: Vec<String>,
    components: Vec<Expr>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FunctionError {
    #[error("component {index}: {source}")]
    Parse { index: usize, source: ParseError },
    #[error("component {index} uses undeclared variable `{name}`")]
    UndeclaredVariable { index: usize, name: String },
    #[error("variable `{0}` is declared twice")]
    DuplicateVariable(String),
    #[error("function needs at least one variable and one component")]
    Empty,
    #[error("component {index}: {source}")]
    Function { index: usize, source: IntervalError },
}

impl VectorFunction {
    pub fn new(variables: Vec<String>, components: Vec<Expr>) -> Result<Self, FunctionError> {
        if variables.is_empty() || components.is_empty() {
            return Err(FunctionError::Empty);
        }
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].contains(v) {
                return Err(FunctionError::DuplicateVariable(v.clone()));
            }
        }
        for (index, c) in components.iter().enumerate() {
            if let Some(name) = c.variables().into_iter().find(|v| !variables.iter().any(|d| d == v)) {
                return Err(FunctionError::UndeclaredVariable {
                    index,
                    name: name.to_string(),
                });
            }
            let mut unknown = None;
            c.visit(&mut |e| {
                if let Expr::Call(name, _) = e {
                    if let Err(err) = MonotoneFn::lookup(name) {
                        unknown.get_or_insert(err);
                    }
                }
            });
            if let Some(source) = unknown {
                return Err(FunctionError::Function { index, source });
            }
        }
        Ok(Self {
            variables,
            components,
        })
    }

    /// Parses each component source.
    pub fn parse<S: AsRef<str>>(variables: &[&str], sources: &[S]) -> Result<Self, FunctionError> {
        let components = sources
            .iter()
            .enumerate()
            .map(|(index, s)| parse(s.as_ref()).map_err(|source| FunctionError::Parse { index, source }))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(variables.iter().map(|s| s.to_string()).collect(), components)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn components(&self) -> &[Expr] {
        &self.components
    }

    /// Input dimension `n`.
    pub fn arity(&self) -> usize {
        self.variables.len()
    }

    /// Output dimension `p`.
    pub fn output_dim(&self) -> usize {
        self.components.len()
    }

    /// Componentwise semigroup inclusion function.
    pub fn eval_box(&self, b: &IntervalBox) -> Result<IntervalBox, EvalError> {
        if b.dim() != self.arity() {
            return Err(IntervalError::DimensionMismatch {
                expected: self.arity(),
                found: b.dim(),
            }
            .into());
        }
        let env = Env::new(&self.variables, b.components());
        let out = self
            .components
            .iter()
            .map(|c| eval_inclusion(c, &env))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntervalBox::new(out)?)
    }

    /// Real-valued evaluation at a point.
    pub fn eval_point(&self, x: &[f64]) -> Result<Vec<f64>, EvalError> {
        if x.len() != self.arity() {
            return Err(IntervalError::DimensionMismatch {
                expected: self.arity(),
                found: x.len(),
            }
            .into());
        }
        self.components
            .iter()
            .map(|c| eval_real(c, &|name| self.variables.iter().position(|v| v == name).map(|i| x[i])))
            .collect()
    }
}
