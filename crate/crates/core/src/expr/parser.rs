use std::fmt;

use super::Expr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    NonIntegerExponent,
}

/// A parse failure at a 1-based character position.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error at position {}: {msg}", self.position),
            ParseErrorKind::NonIntegerExponent => write!(
                f,
                "syntax error at position {}: exponent must be an integer literal",
                self.position
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num { value: f64, integer: bool },
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num { value, .. } => format!("number {value}"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn syntax(position: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        position,
        kind: ParseErrorKind::Syntax(msg.into()),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            toks.push((t, pos));
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            let mut integer = true;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                integer = false;
                i += 1;
                let frac = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if frac == i && frac - 1 == start {
                    return Err(syntax(pos, "malformed number"));
                }
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                let digits = j;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j == digits {
                    return Err(syntax(i + 1, "malformed exponent in number"));
                }
                integer = false;
                i = j;
            }
            let text: String = chars[start..i].iter().collect();
            let value: f64 = text.parse().map_err(|_| syntax(pos, "malformed number"))?;
            if !value.is_finite() {
                return Err(syntax(pos, "number out of range"));
            }
            toks.push((Tok::Num { value, integer }, pos));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        } else {
            return Err(syntax(pos, format!("unexpected character `{c}`")));
        }
    }
    toks.push((Tok::End, chars.len() + 1));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(
                self.pos(),
                format!("expected {}, found {}", want.describe(), self.peek().describe()),
            ))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let n = self.exponent()?;
        if *self.peek() == Tok::Caret {
            // right associativity would make the exponent a power expression
            return Err(ParseError {
                position: self.pos(),
                kind: ParseErrorKind::NonIntegerExponent,
            });
        }
        Ok(Expr::Pow(Box::new(base), n))
    }

    fn exponent(&mut self) -> Result<i32, ParseError> {
        let start = self.pos();
        let paren = *self.peek() == Tok::LParen;
        if paren {
            self.bump();
        }
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        let not_integer = ParseError {
            position: start,
            kind: ParseErrorKind::NonIntegerExponent,
        };
        let value = match self.peek() {
            Tok::Num { value, integer: true } => *value,
            Tok::End => return Err(syntax(self.pos(), "expected exponent, found end of input")),
            _ => return Err(not_integer),
        };
        self.bump();
        if paren {
            if *self.peek() != Tok::RParen {
                return Err(not_integer);
            }
            self.bump();
        }
        let signed = if negative { -value } else { value };
        if signed.abs() > i32::MAX as f64 {
            return Err(syntax(start, "exponent out of range"));
        }
        Ok(signed as i32)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num { value, .. } => Ok(Expr::Const(value)),
            Tok::Ident(name) => {
                if *self.peek() == Tok::LParen {
                    self.bump();
                    let arg = self.expr()?;
                    self.expect(Tok::RParen)?;
                    Ok(Expr::Call(name, Box::new(arg)))
                } else {
                    Ok(Expr::Var(name))
                }
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            other => Err(syntax(pos, format!("expected an operand, found {}", other.describe()))),
        }
    }
}

/// Parses a formula into an expression tree.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.pos(), format!("unexpected {}", p.peek().describe())));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Box<Expr> {
        Box::new(Expr::var(n))
    }

    #[test]
    fn equivalent_forms() {
        assert_eq!(
            parse("x^2 + y^2").unwrap(),
            Expr::Add(Box::new(Expr::Pow(v("x"), 2)), Box::new(Expr::Pow(v("y"), 2)))
        );
        assert_eq!(
            parse("x*(x+y)-y^2").unwrap(),
            Expr::Sub(
                Box::new(Expr::Mul(v("x"), Box::new(Expr::Add(v("x"), v("y"))))),
                Box::new(Expr::Pow(v("y"), 2))
            )
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(parse("-x^2").unwrap(), Expr::Neg(Box::new(Expr::Pow(v("x"), 2))));
        assert_eq!(
            parse("a-b-c").unwrap(),
            Expr::Sub(Box::new(Expr::Sub(v("a"), v("b"))), v("c"))
        );
        assert_eq!(
            parse("a/b*c").unwrap(),
            Expr::Mul(Box::new(Expr::Div(v("a"), v("b"))), v("c"))
        );
        assert_eq!(
            parse("-a*b").unwrap(),
            Expr::Mul(Box::new(Expr::Neg(v("a"))), v("b"))
        );
        assert_eq!(parse("x^-2").unwrap(), Expr::Pow(v("x"), -2));
        assert_eq!(parse("x^(-1)").unwrap(), Expr::Pow(v("x"), -1));
        assert_eq!(
            parse("exp(x)").unwrap(),
            Expr::Call("exp".into(), v("x"))
        );
        assert_eq!(parse("2.5e1").unwrap(), Expr::Const(25.0));
    }

    #[test]
    fn syntax_errors() {
        let err = parse("x +").unwrap_err();
        assert_eq!(err.position, 4);
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));

        assert_eq!(parse("(x").unwrap_err().position, 3);
        assert_eq!(parse("x $ y").unwrap_err().position, 3);
        assert_eq!(parse("x y").unwrap_err().position, 3);
        assert!(parse("").is_err());
        assert!(parse("1e").is_err());
        assert!(parse(".").is_err());
        assert!(parse("x^").is_err());
    }

    #[test]
    fn non_integer_exponents() {
        for src in ["x^y", "x^2.5", "x^(1+1)", "x^2^3", "x^1e2"] {
            let err = parse(src).unwrap_err();
            assert_eq!(err.kind, ParseErrorKind::NonIntegerExponent, "{src}");
        }
        assert_eq!(parse("x^y").unwrap_err().position, 3);
    }
}
